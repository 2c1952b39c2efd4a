use std::sync::Arc;

use super::*;
use crate::catalog;
use crate::field::Q;
use crate::gluing::Gluing;
use crate::hochschild::homology_via_serre_dual;
use crate::module::Module;

fn arc(name: &str) -> Arc<Algebra<Q>> {
    Arc::new(catalog::algebra(name).unwrap())
}

fn graded(pairs: &[(i64, usize)]) -> Graded {
    pairs.iter().copied().collect()
}

fn simple(a: &Arc<Algebra<Q>>, v: usize) -> ProjComplex<Q> {
    let r = minimal_resolution(&Module::simple(a.clone(), v), 8);
    assert!(r.complete);
    r.complex
}

fn setup(name: &str) -> (Kernels<Q>, ExceptionalCollection<Q>) {
    let a = arc(name);
    (
        Kernels::new(a.clone()),
        ExceptionalCollection::projectives(&a).unwrap(),
    )
}

#[test]
fn serre_kernel_of_point() {
    let calc = Kernels::new(arc("point"));
    let s = calc.serre_kernel();
    let d = calc.resolve(&s).unwrap();
    assert_eq!(d.k0_class(), vec![1]);
    let p = ProjComplex::projective(calc.algebra().clone(), 0);
    assert_eq!(
        calc.apply(&s, &p).unwrap().multiplicities(),
        p.multiplicities()
    );
    let ds = calc.convolve(&Kernel::Diagonal, &s).unwrap();
    assert_eq!(
        calc.minimal_data(&ds).unwrap(),
        calc.minimal_data(&s).unwrap()
    );
}

#[test]
fn serre_duality_on_kronecker() {
    let a = arc("kronecker2");
    let calc = Kernels::new(a.clone());
    let (p1, p2) = (
        ProjComplex::projective(a.clone(), 0),
        ProjComplex::projective(a.clone(), 1),
    );
    let total = |g: Graded| g.values().sum::<usize>();
    let lhs = ext_proj(&p1, &calc.serre(&p2).unwrap()).unwrap();
    let rhs = ext_proj(&p2, &p1).unwrap();
    assert_eq!(total(lhs), 2);
    assert_eq!(total(rhs), 2);
    for x in [&p1, &p2] {
        for y in [&p1, &p2] {
            let l = ext_proj(x, &calc.serre(y).unwrap()).unwrap();
            let r = ext_proj(y, x).unwrap();
            let negated: Graded = r.iter().map(|(&n, &d)| (-n, d)).collect();
            assert_eq!(l, negated);
        }
    }
}

#[test]
fn inverse_serre_inverts() {
    for name in [
        "kronecker2",
        "beilinson-p2",
        "a2-quiver",
        "kronecker3-gluing",
    ] {
        let a = arc(name);
        let calc = Kernels::new(a.clone());
        for v in 0..a.num_vertices() {
            let p = ProjComplex::projective(a.clone(), v);
            let back = calc.inverse_serre(&calc.serre(&p).unwrap()).unwrap();
            assert_eq!(back.multiplicities(), p.multiplicities(), "{name} {v}");
            let back2 = calc.serre(&calc.inverse_serre(&p).unwrap()).unwrap();
            assert_eq!(back2.multiplicities(), p.multiplicities(), "{name} {v}");
        }
    }
}

#[test]
fn unit_laws() {
    for name in ["kronecker2", "a2-quiver", "beilinson-p2"] {
        let (calc, coll) = setup(name);
        let kernels = projection_kernels(&calc, &coll, true).unwrap();
        let mut all = kernels.clone();
        all.push(calc.serre_kernel());
        all.push(Kernel::General(calc.resolve(&kernels[0]).unwrap()));
        for k in &all {
            let want = calc.minimal_data(k).unwrap();
            let l = calc.convolve(&Kernel::Diagonal, k).unwrap();
            let r = calc.convolve(k, &Kernel::Diagonal).unwrap();
            assert_eq!(calc.minimal_data(&l).unwrap(), want, "{name}");
            assert_eq!(calc.minimal_data(&r).unwrap(), want, "{name}");
            // the bar resolution as an explicit kernel is a unit too
            let bar = Kernel::General(calc.resolve(&Kernel::Diagonal).unwrap());
            let lb = calc.convolve(&bar, k).unwrap();
            assert_eq!(calc.minimal_data(&lb).unwrap(), want, "{name}");
        }
    }
}

#[test]
fn decomposable_convolution_dimensions() {
    let (calc, coll) = setup("kronecker2");
    let (e1, e2) = (coll.object(1).clone(), coll.object(2).clone());
    let k = calc.decomposable(e1.clone(), e2.clone()).unwrap();
    let l = calc.decomposable(e2.clone(), e1.clone()).unwrap();
    // (E1 ⊗ E2^∨) ∘ (E2 ⊗ E1^∨): the middle is Hom(E2, E2) = k
    let c = calc.convolve(&k, &l).unwrap();
    assert_eq!(
        calc.minimal_data(&c).unwrap(),
        calc.minimal_data(&calc.decomposable(e1.clone(), e1.clone()).unwrap())
            .unwrap()
    );
    // (E2 ⊗ E1^∨) ∘ (E1 ⊗ E2^∨): the middle is Hom(E1, E1) = k
    let c2 = calc.convolve(&l, &k).unwrap();
    let Kernel::Decomposable { left, .. } = &c2 else {
        panic!()
    };
    assert_eq!(left.rank(), e2.rank());
    // (E2 ⊗ E2^∨) ∘ (E1 ⊗ E1^∨): Hom(E2, E1) = 0
    let k11 = calc.decomposable(e1.clone(), e1.clone()).unwrap();
    let k22 = calc.decomposable(e2.clone(), e2.clone()).unwrap();
    assert!(calc
        .resolve(&calc.convolve(&k22, &k11).unwrap())
        .unwrap()
        .is_zero());
    // (E1 ⊗ E1^∨) ∘ (E2 ⊗ E2^∨): Hom(E1, E2) = k²
    let c3 = calc.convolve(&k11, &k22).unwrap();
    let Kernel::Decomposable { left, .. } = &c3 else {
        panic!()
    };
    assert_eq!(left.rank(), 2 * e1.rank());
    // the contraction agrees with the general tensor product
    let general = calc
        .convolve(
            &Kernel::General(calc.resolve(&k11).unwrap()),
            &Kernel::General(calc.resolve(&k22).unwrap()),
        )
        .unwrap();
    assert_eq!(
        calc.minimal_data(&general).unwrap(),
        calc.minimal_data(&c3).unwrap()
    );
}

#[test]
fn associativity() {
    let (calc, coll) = setup("beilinson-p2");
    let ps = projection_kernels(&calc, &coll, true).unwrap();
    let s = calc.serre_kernel();
    let g: Vec<Kernel<Q>> = ps
        .iter()
        .map(|k| Kernel::General(calc.resolve(k).unwrap()))
        .collect();
    for (l, m, k) in [
        (&g[0], &s, &g[1]),
        (&ps[2], &ps[1], &s),
        (&g[2], &g[0], &ps[0]),
    ] {
        let a = calc.convolve(&calc.convolve(l, m).unwrap(), k).unwrap();
        let b = calc.convolve(l, &calc.convolve(m, k).unwrap()).unwrap();
        assert_eq!(
            calc.minimal_data(&a).unwrap(),
            calc.minimal_data(&b).unwrap()
        );
    }
}

#[test]
fn kernel_action_matches_general_form() {
    let (calc, coll) = setup("beilinson-p2");
    let ps = projection_kernels(&calc, &coll, true).unwrap();
    for k in &ps {
        let g = Kernel::General(calc.resolve(k).unwrap());
        for v in 0..3 {
            let y = simple(calc.algebra(), v);
            assert_eq!(
                calc.apply(k, &y).unwrap().multiplicities(),
                calc.apply(&g, &y).unwrap().multiplicities()
            );
        }
    }
}

#[test]
fn projection_kernels_project() {
    for name in ["kronecker2", "kronecker3", "beilinson-p2"] {
        let (calc, coll) = setup(name);
        let ps = projection_kernels(&calc, &coll, true).unwrap();
        for (i, p) in ps.iter().enumerate() {
            assert_eq!(calc.ext(p, p).unwrap(), graded(&[(0, 1)]), "{name} {i}");
            for j in 1..=coll.len() {
                let image = calc.apply(p, coll.object(j)).unwrap();
                if j == i + 1 {
                    assert_eq!(image.multiplicities(), coll.object(j).multiplicities());
                } else {
                    assert!(image.is_zero());
                }
            }
        }
        let sum = ps
            .iter()
            .map(|p| calc.k0_class(p).unwrap())
            .fold(vec![0; calc.env.nv().pow(2)], |acc, c| {
                acc.iter().zip(c).map(|(a, b)| a + b).collect()
            });
        assert_eq!(sum, calc.k0_class(&Kernel::Diagonal).unwrap(), "{name}");
    }
}

#[test]
fn projection_kernels_of_subcollection_fail() {
    let (calc, coll) = setup("beilinson-p2");
    let sub = coll.subcollection(&[1, 2]).unwrap();
    assert!(projection_kernels(&calc, &sub, false).is_ok());
    assert_eq!(
        projection_kernels(&calc, &sub, true).unwrap_err(),
        Error::NormalizationFailed(2)
    );
}

#[test]
fn adjoints() {
    let (calc, coll) = setup("kronecker2");
    assert!(calc
        .adjoint(&Kernel::Diagonal, Adjoint::Left)
        .unwrap()
        .is_diagonal());
    assert!(calc
        .adjoint(&Kernel::Diagonal, Adjoint::Right)
        .unwrap()
        .is_diagonal());
    assert!(matches!(
        calc.adjoint(&calc.serre_kernel(), Adjoint::Right),
        Err(Error::UnsupportedKernelShape(_))
    ));
    let ps = projection_kernels(&calc, &coll, true).unwrap();
    let a = calc.algebra().clone();
    let simples: Vec<_> = (0..2).map(|v| simple(&a, v)).collect();
    for p in &ps {
        let right = calc.adjoint(p, Adjoint::Right).unwrap();
        let left = calc.adjoint(p, Adjoint::Left).unwrap();
        for x in &simples {
            for y in &simples {
                let hom_l = ext_proj(&calc.apply(p, x).unwrap(), y).unwrap();
                let hom_r = ext_proj(x, &calc.apply(&right, y).unwrap()).unwrap();
                assert_eq!(hom_l, hom_r);
                let hom_l = ext_proj(&calc.apply(&left, x).unwrap(), y).unwrap();
                let hom_r = ext_proj(x, &calc.apply(p, y).unwrap()).unwrap();
                assert_eq!(hom_l, hom_r);
            }
        }
        let twice = calc.adjoint(&right, Adjoint::Left).unwrap();
        assert_eq!(
            calc.minimal_data(&twice).unwrap(),
            calc.minimal_data(p).unwrap()
        );
        let twice = calc.adjoint(&left, Adjoint::Right).unwrap();
        assert_eq!(
            calc.minimal_data(&twice).unwrap(),
            calc.minimal_data(p).unwrap()
        );
    }
}

#[test]
fn orthogonality() {
    for name in ["kronecker2", "beilinson-p2", "point", "kronecker3-gluing"] {
        let (calc, coll) = setup(name);
        let ps = projection_kernels(&calc, &coll, true).unwrap();
        let r = orthogonality_report(&calc, &ps).unwrap();
        assert!(r.diagonal_ok(), "{name}");
        assert!(r.off_diagonal_ok(), "{name}");
        assert!(r.ok(), "{name} {:?}", r.adjoint_products);
    }
}

#[test]
fn additivity() {
    for (name, total) in [
        ("kronecker2", 2),
        ("kronecker3", 2),
        ("beilinson-p2", 3),
        ("point", 1),
    ] {
        let (calc, coll) = setup(name);
        let r = additivity_check(&calc, &coll, 4).unwrap();
        assert!(r.holds(), "{name}");
        assert!(r.each_unit(), "{name}");
        assert_eq!(r.homology.total(), total);
        let via_serre = homology_via_serre_dual(calc.algebra(), 4);
        assert_eq!(r.sum(), via_serre.dims);
    }
}

#[test]
fn long_exact_sequence() {
    let p = arc("point");
    let g = Gluing::vector_space(p.clone(), 3).unwrap();
    let r = les_check(&g, 4).unwrap();
    assert_eq!(r.euler, 0);
    assert_eq!(r.chase, Some(vec![1, 2, 9, 8, 0]));
    assert_eq!(r.chase_exact, Some(true));
    let r = les_check(&Gluing::vector_space(p.clone(), 1).unwrap(), 4).unwrap();
    assert_eq!(r.chase, Some(vec![1, 2, 1, 0, 0]));
    assert!(r.holds());
    let r = les_check(&Gluing::vector_space(p.clone(), 0).unwrap(), 4).unwrap();
    assert_eq!(r.glued.dims, vec![2, 0, 0, 0, 0]);
    assert_eq!(r.chase, Some(vec![2, 2, 0, 0, 0]));
    assert!(r.holds());
}

fn glue_along_simple(b: &Arc<Algebra<Q>>, c: &Arc<Algebra<Q>>, v: usize) -> Gluing<Q> {
    let bc = Arc::new(Algebra::tensor(b, &c.opposite()));
    Gluing::new(b.clone(), c.clone(), Module::simple(bc, v)).unwrap()
}

#[test]
fn long_exact_sequence_for_other_gluings() {
    for name in ["kronecker3-gluing", "a2-quiver", "kxk"] {
        let g: Gluing<Q> = catalog::gluing(name).unwrap();
        assert!(les_check(&g, 5).unwrap().holds(), "{name}");
    }
    let (pt, k2) = (arc("point"), arc("kronecker2"));
    for v in 0..2 {
        let r = les_check(&glue_along_simple(&pt, &k2, v), 5).unwrap();
        assert_eq!(r.euler, 0, "{v}");
        assert_eq!(r.chase, None);
        let r = les_check(&glue_along_simple(&k2, &pt, v), 5).unwrap();
        assert_eq!(r.euler, 0, "{v}");
    }
}

#[test]
fn range_not_certified() {
    let (lp, pt) = (arc("loop-x2"), arc("point"));
    let calc = Kernels::new(lp.clone());
    assert!(matches!(calc.serre_kernel(), Kernel::Bimodule(_)));
    assert!(matches!(
        calc.adjoint(&calc.serre_kernel(), Adjoint::Left),
        Err(Error::UnsupportedKernelShape(_))
    ));
    let g = glue_along_simple(&lp, &pt, 0);
    assert!(matches!(les_check(&g, 3), Err(Error::RangeNotCertified(_))));
}

#[test]
fn fullness() {
    let (_, coll) = setup("beilinson-p2");
    assert_eq!(
        fullness_certificate(&coll, 4).unwrap().verdict,
        Verdict::FullModuloConjecture
    );
    for sub in [
        vec![1, 2],
        vec![1, 3],
        vec![2, 3],
        vec![1],
        vec![2],
        vec![3],
    ] {
        let s = coll.subcollection(&sub).unwrap();
        assert_eq!(
            fullness_certificate(&s, 4).unwrap().verdict,
            Verdict::NotFull
        );
    }
    let (_, pt) = setup("point");
    assert_eq!(
        fullness_certificate(&pt, 2).unwrap().verdict,
        Verdict::FullModuloConjecture
    );
    assert_eq!(
        Verdict::FullModuloConjecture.to_string(),
        "full modulo Nonvanishing Conjecture"
    );
}
