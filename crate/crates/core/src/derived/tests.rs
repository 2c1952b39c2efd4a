use std::sync::Arc;

use super::*;
use crate::algebra::Algebra;
use crate::catalog;
use crate::complexes::minimal_resolution;
use crate::field::Q;
use crate::hochschild::hh_cohomology;
use crate::module::Module;

fn arc(name: &str) -> Arc<Algebra<Q>> {
    Arc::new(catalog::algebra(name).unwrap())
}

fn graded(pairs: &[(i64, usize)]) -> Graded {
    pairs.iter().copied().collect()
}

fn resolved_simple(a: &Arc<Algebra<Q>>, v: usize) -> ProjComplex<Q> {
    let res = minimal_resolution(&Module::simple(a.clone(), v), 6);
    assert!(res.complete);
    res.complex
}

#[test]
fn projectives_of_kronecker() {
    let a = arc("kronecker3");
    let coll = ExceptionalCollection::projectives(&a).unwrap();
    assert_eq!(coll.len(), 2);
    assert_eq!(*coll.ext(1, 2), graded(&[(0, 3)]));
    assert!(coll.ext(2, 1).is_empty());

    let wrong = [
        ProjComplex::projective(a.clone(), 0),
        ProjComplex::projective(a.clone(), 1),
    ];
    let check = is_exceptional_collection(&wrong).unwrap();
    assert_eq!(
        check.violations,
        vec![Violation::Backward {
            j: 2,
            i: 1,
            ext: graded(&[(0, 3)])
        }]
    );
    assert!(ExceptionalCollection::new(wrong.to_vec()).is_err());
}

#[test]
fn loop_simple_is_not_exceptional() {
    let a = arc("loop-x2");
    let s = resolved_or_truncated(&a);
    let check = is_exceptional_collection(&[s]).unwrap();
    assert!(!check.ok());
}

// the simple over k[x]/x² has infinite resolution; a truncation already has
// self-extensions in degree 1
fn resolved_or_truncated(a: &Arc<Algebra<Q>>) -> ProjComplex<Q> {
    minimal_resolution(&Module::simple(a.clone(), 0), 3).complex
}

#[test]
fn left_mutation_of_beilinson() {
    let a = arc("beilinson-p2");
    let coll = ExceptionalCollection::projectives(&a).unwrap();
    let mutated = coll.mutate(1, Direction::Left).unwrap();
    let l = mutated.object(1);
    assert_eq!(l.cohomology(), graded(&[(0, 1)]));
    let s1 = resolved_simple(&a, 1);
    assert_eq!(l.k0_class(), s1.k0_class());
    assert_eq!(l.multiplicities(), s1.multiplicities());
    assert_eq!(mutated.object(2).k0_class(), coll.object(1).k0_class());
    assert_eq!(*mutated.ext(1, 1), unit_graded());
}

#[test]
fn mutations_are_inverse() {
    for name in ["kronecker2", "beilinson-p2"] {
        let a = arc(name);
        let coll = ExceptionalCollection::projectives(&a).unwrap();
        for i in 1..coll.len() {
            let back = coll
                .mutate(i, Direction::Left)
                .unwrap()
                .mutate(i + 1, Direction::Right)
                .unwrap();
            let back2 = coll
                .mutate(i + 1, Direction::Right)
                .unwrap()
                .mutate(i, Direction::Left)
                .unwrap();
            for k in 1..=coll.len() {
                assert_eq!(
                    back.object(k).multiplicities(),
                    coll.object(k).multiplicities(),
                    "{name} {i} {k}"
                );
                assert_eq!(
                    back2.object(k).multiplicities(),
                    coll.object(k).multiplicities(),
                    "{name} {i} {k}"
                );
            }
        }
    }
}

#[test]
fn braid_relation() {
    let a = arc("beilinson-p2");
    let coll = ExceptionalCollection::projectives(&a).unwrap();
    let r = Direction::Right;
    let x = coll
        .mutate(2, r)
        .unwrap()
        .mutate(3, r)
        .unwrap()
        .mutate(2, r)
        .unwrap();
    let y = coll
        .mutate(3, r)
        .unwrap()
        .mutate(2, r)
        .unwrap()
        .mutate(3, r)
        .unwrap();
    for k in 1..=3 {
        assert_eq!(
            x.object(k).multiplicities(),
            y.object(k).multiplicities(),
            "{k}"
        );
        assert_eq!(x.object(k).cohomology(), y.object(k).cohomology(), "{k}");
    }
}

#[test]
fn short_collection_cannot_mutate() {
    let a = arc("point");
    let coll = ExceptionalCollection::projectives(&a).unwrap();
    assert!(matches!(
        coll.mutate(1, Direction::Left),
        Err(Error::InvalidIndex { .. })
    ));
    assert!(matches!(
        coll.mutate(1, Direction::Right),
        Err(Error::InvalidIndex { .. })
    ));
    let k = ExceptionalCollection::projectives(&arc("kronecker2")).unwrap();
    assert!(k.mutate(2, Direction::Left).is_err());
    assert!(k.mutate(0, Direction::Left).is_err());
    assert!(k.mutate(3, Direction::Right).is_err());
}

#[test]
fn dual_collection_is_dual() {
    for name in [
        "kronecker1",
        "kronecker3",
        "beilinson-p2",
        "a2-quiver",
        "kronecker3-gluing",
    ] {
        let a = arc(name);
        let coll = ExceptionalCollection::projectives(&a).unwrap();
        let dual = dual_collection(&coll).unwrap();
        assert!(dual.delta_table_holds(), "{name}");
        assert!(dual.reversed().is_ok(), "{name}");
        for i in 1..=coll.len() {
            assert!(bdi_check(&coll, i).unwrap(), "{name} {i}");
        }
        assert!(bdi_check(&coll, 0).is_err());
    }
}

#[test]
fn reversed_dual_is_full() {
    let a = arc("beilinson-p2");
    let coll = ExceptionalCollection::projectives(&a).unwrap();
    let dual = dual_collection(&coll).unwrap().reversed().unwrap();
    for v in 0..3 {
        let p = ProjComplex::projective(a.clone(), v);
        let t = sod_project(&p, &dual).unwrap();
        assert!(t.k0_sum_holds(), "{v}");
        assert!(t.membership_holds(&dual).unwrap(), "{v}");
    }
}

#[test]
fn projection_tower() {
    let a = arc("kronecker2");
    let coll = ExceptionalCollection::projectives(&a).unwrap();
    let s1 = resolved_simple(&a, 0);
    let tower = sod_project(&s1, &coll).unwrap();
    assert!(tower.k0_sum_holds());
    assert!(tower.membership_holds(&coll).unwrap());
    assert_eq!(tower.factor(2).k0_class(), vec![1, 0]);
    assert_eq!(tower.factor(1).k0_class(), vec![0, -2]);
    assert!(tower.residues[0].is_zero());

    for k in 1..=2 {
        let e = coll.object(k).clone();
        let t = sod_project(&e, &coll).unwrap();
        for j in 1..=2 {
            let expect = if j == k { e.k0_class() } else { vec![0, 0] };
            assert_eq!(t.factor(j).k0_class(), expect);
        }
    }

    let b = arc("beilinson-p2");
    let coll = ExceptionalCollection::projectives(&b).unwrap();
    for v in 0..3 {
        let t = sod_project(&resolved_simple(&b, v), &coll).unwrap();
        assert!(t.k0_sum_holds());
        assert!(t.membership_holds(&coll).unwrap());
    }
}

#[test]
fn projection_detects_non_full() {
    let a = arc("kronecker2");
    let coll = ExceptionalCollection::projectives(&a)
        .unwrap()
        .subcollection(&[2])
        .unwrap();
    let s1 = resolved_simple(&a, 1);
    assert_eq!(
        sod_project(&s1, &coll).unwrap_err(),
        Error::NotFull { steps: 1 }
    );
}

#[test]
fn endomorphism_algebras() {
    for (name, dim) in [
        ("kronecker3", 5),
        ("beilinson-p2", 15),
        ("a2-quiver", 3),
        ("kxk", 2),
    ] {
        let a = arc(name);
        let coll = ExceptionalCollection::projectives(&a).unwrap();
        let end = endomorphism_algebra(&coll).unwrap();
        assert_eq!(end.dim(), dim, "{name}");
        assert_eq!(end.num_vertices(), a.num_vertices(), "{name}");
        assert!(end.check_axioms(), "{name}");
        let e = Arc::new(end);
        assert_eq!(
            hh_cohomology(&e, 3).dims,
            hh_cohomology(&a, 3).dims,
            "{name}"
        );
    }
}

#[test]
fn endomorphism_of_mutated_beilinson() {
    let a = arc("beilinson-p2");
    let coll = ExceptionalCollection::projectives(&a).unwrap();
    let mutated = coll.mutate(1, Direction::Left).unwrap();
    let (strong, shifts) = strongify(&mutated).unwrap();
    assert_eq!(shifts.len(), 3);
    let end = Arc::new(endomorphism_algebra(&strong).unwrap());
    assert_eq!(end.num_vertices(), 3);
    assert_eq!(hh_cohomology(&end, 4).dims, vec![1, 8, 10, 0, 0]);
}

#[test]
fn endomorphism_needs_strong() {
    let a = arc("kronecker2");
    let coll = ExceptionalCollection::projectives(&a).unwrap();
    let shifted =
        ExceptionalCollection::new(vec![coll.object(1).clone(), coll.object(2).shift(1)]).unwrap();
    assert!(matches!(
        endomorphism_algebra(&shifted),
        Err(Error::NotStrong { i: 1, j: 2, .. })
    ));
    let (fixed, shifts) = strongify(&shifted).unwrap();
    assert_eq!(shifts, vec![0, -1]);
    assert_eq!(endomorphism_algebra(&fixed).unwrap().dim(), 4);
}
