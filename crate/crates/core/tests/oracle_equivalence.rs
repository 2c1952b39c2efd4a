mod common;

use std::sync::Arc;

use sodhh::catalog;
use sodhh::field::F32003;
use sodhh::hochschild::{hh_cohomology, hh_homology, homology_via_serre_dual};
use sodhh::{Algebra, Q};

fn small_catalog() -> Vec<Arc<Algebra<Q>>> {
    catalog::NAMES
        .iter()
        .map(|n| Arc::new(catalog::algebra::<Q>(n).unwrap()))
        .filter(|a| a.dim() <= 6)
        .collect()
}

#[test]
fn relative_bar_matches_absolute_bar() {
    let algebras = small_catalog();
    assert_eq!(algebras.len(), 9);
    for a in &algebras {
        let abs_co = common::absolute_hh_cohomology(a.as_ref(), 3);
        let abs_ho = common::absolute_hh_homology(a.as_ref(), 3);
        assert_eq!(hh_cohomology(a, 3).dims, abs_co, "{}", a.name());
        assert_eq!(hh_homology(a, 3).dims, abs_ho, "{}", a.name());
    }
}

#[test]
fn absolute_oracle_known_values() {
    let k3 = catalog::algebra::<Q>("kronecker3").unwrap();
    assert_eq!(common::absolute_hh_cohomology(&k3, 3), vec![1, 8, 0, 0]);
    assert_eq!(common::absolute_hh_homology(&k3, 3), vec![2, 0, 0, 0]);
    let k2 = catalog::algebra::<Q>("kronecker2").unwrap();
    assert_eq!(common::absolute_hh_cohomology(&k2, 3), vec![1, 3, 0, 0]);
    // k[x]/x² over a field of characteristic 0
    let l = catalog::algebra::<Q>("loop-x2").unwrap();
    assert_eq!(common::absolute_hh_homology(&l, 4), vec![2, 1, 1, 1, 1]);
    assert_eq!(common::absolute_hh_cohomology(&l, 3), vec![2, 1, 1, 1]);
}

#[test]
fn loop_algebra_homology_in_higher_degrees() {
    let l = Arc::new(catalog::algebra::<Q>("loop-x2").unwrap());
    assert_eq!(
        hh_homology(&l, 4).dims,
        common::absolute_hh_homology(l.as_ref(), 4)
    );
}

#[test]
fn prime_field_agrees_with_rationals() {
    for name in catalog::NAMES {
        let q = Arc::new(catalog::algebra::<Q>(name).unwrap());
        let p = Arc::new(catalog::algebra::<F32003>(name).unwrap());
        assert_eq!(q.dim(), p.dim(), "{name}");
        assert_eq!(
            hh_cohomology(&q, 4).dims,
            hh_cohomology(&p, 4).dims,
            "{name}"
        );
        assert_eq!(hh_homology(&q, 4).dims, hh_homology(&p, 4).dims, "{name}");
        assert_eq!(
            homology_via_serre_dual(&q, 4).dims,
            homology_via_serre_dual(&p, 4).dims,
            "{name}"
        );
    }
}
