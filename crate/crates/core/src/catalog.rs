//! Built-in algebras.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::complexes::ProjComplex;
use crate::field::Field;
use crate::gluing::Gluing;
use crate::quiver::{build_path_algebra, Quiver, Relation};

pub const NAMES: &[&str] = &[
    "point",
    "kronecker1",
    "kronecker2",
    "kronecker3",
    "beilinson-p1",
    "beilinson-p2",
    "loop-x2",
    "a2-quiver",
    "kronecker3-gluing",
    "kxk",
];

/// One-line description of a catalog entry.
pub fn describe(name: &str) -> Option<&'static str> {
    Some(match name {
        "point" => "the ground field k",
        "kronecker1" => "two vertices, one arrow",
        "kronecker2" => "two vertices, two parallel arrows (Beilinson algebra of P^1)",
        "kronecker3" => "two vertices, three parallel arrows",
        "beilinson-p1" => "alias of kronecker2",
        "beilinson-p2" => {
            "Beilinson algebra of P^2: three vertices, 3+3 arrows, commutativity relations"
        }
        "loop-x2" => "k[x]/x^2",
        "a2-quiver" => "A2 quiver 1 -> 2",
        "kronecker3-gluing" => "triangular gluing of k and k along k^3",
        "kxk" => "k x k, triangular gluing of k and k along 0",
        _ => return None,
    })
}

pub fn point<F: Field>() -> Algebra<F> {
    let q = Quiver::from_strs(&["0"], &[]).expect("point quiver");
    build_path_algebra(&q, &[], None)
        .expect("point")
        .with_name("point")
}

/// Vertices `1`, `2` and `n` arrows `a1..an: 1 → 2`.
pub fn kronecker<F: Field>(n: usize) -> Algebra<F> {
    let arrows = (1..=n)
        .map(|i| (format!("a{i}"), "1".to_string(), "2".to_string()))
        .collect();
    let q = Quiver::new(vec!["1".into(), "2".into()], arrows).expect("kronecker quiver");
    build_path_algebra(&q, &[], None)
        .expect("kronecker")
        .with_name(format!("kronecker{n}"))
}

/// Vertices `0, 1, 2`, arrows `x0..x2: 0 → 1`, `y0..y2: 1 → 2` and
/// relations `y_j x_i = y_i x_j`.
pub fn beilinson_p2<F: Field>() -> Algebra<F> {
    let mut arrows = Vec::new();
    for i in 0..3 {
        arrows.push((format!("x{i}"), "0".to_string(), "1".to_string()));
    }
    for i in 0..3 {
        arrows.push((format!("y{i}"), "1".to_string(), "2".to_string()));
    }
    let q =
        Quiver::new(vec!["0".into(), "1".into(), "2".into()], arrows).expect("beilinson quiver");
    let mut rels = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            let (xi, xj, yi, yj) = (
                format!("x{i}"),
                format!("x{j}"),
                format!("y{i}"),
                format!("y{j}"),
            );
            rels.push(
                Relation::from_names(
                    &q,
                    &[
                        (1, &[xi.as_str(), yj.as_str()]),
                        (-1, &[xj.as_str(), yi.as_str()]),
                    ],
                )
                .expect("relation"),
            );
        }
    }
    build_path_algebra(&q, &rels, None)
        .expect("beilinson")
        .with_name("beilinson-p2")
}

pub fn loop_x2<F: Field>() -> Algebra<F> {
    let q = Quiver::from_strs(&["0"], &[("x", "0", "0")]).expect("loop quiver");
    let r = Relation::from_names(&q, &[(1, &["x", "x"])]).expect("relation");
    build_path_algebra(&q, &[r], None)
        .expect("loop")
        .with_name("loop-x2")
}

/// Gluing data behind the gluing entries of the catalog.
pub fn gluing<F: Field>(name: &str) -> Option<Gluing<F>> {
    let d = match name {
        "kronecker3-gluing" => 3,
        "a2-quiver" => 1,
        "kxk" => 0,
        _ => return None,
    };
    Some(Gluing::vector_space(Arc::new(point()), d).expect("gluing data"))
}

pub fn algebra<F: Field>(name: &str) -> Option<Algebra<F>> {
    let a = match name {
        "point" => point(),
        "kronecker1" => kronecker(1),
        "kronecker2" => kronecker(2),
        "kronecker3" => kronecker(3),
        "beilinson-p1" => kronecker(2).with_name("beilinson-p1"),
        "beilinson-p2" => beilinson_p2(),
        "loop-x2" => loop_x2(),
        "a2-quiver" => kronecker(1).with_name("a2-quiver"),
        "kronecker3-gluing" | "kxk" => gluing::<F>(name)?.glue().expect("gluing").with_name(name),
        _ => return None,
    };
    Some(a)
}

/// The projectives `(Ae_{n-1}, …, Ae_0)`; an exceptional collection when
/// the algebra is directed.
pub fn projective_collection<F: Field>(a: &Arc<Algebra<F>>) -> Vec<ProjComplex<F>> {
    (0..a.num_vertices())
        .rev()
        .map(|v| ProjComplex::projective(a.clone(), v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    #[test]
    fn dimensions() {
        let dims: Vec<usize> = NAMES
            .iter()
            .map(|n| algebra::<Q>(n).unwrap().dim())
            .collect();
        assert_eq!(dims, vec![1, 3, 4, 5, 4, 15, 2, 3, 5, 2]);
    }

    #[test]
    fn stable_fingerprints() {
        for n in NAMES {
            let a = algebra::<Q>(n).unwrap();
            let b = algebra::<Q>(n).unwrap();
            assert_eq!(a.fingerprint(), b.fingerprint());
            assert!(a.check_axioms());
            assert!(describe(n).is_some());
        }
        assert!(algebra::<Q>("nope").is_none());
    }

    #[test]
    fn beilinson_relation_holds() {
        let a: Algebra<Q> = beilinson_p2();
        let x0 = a.element_by_label("x0").unwrap();
        let x1 = a.element_by_label("x1").unwrap();
        let y0 = a.element_by_label("y0").unwrap();
        let y1 = a.element_by_label("y1").unwrap();
        assert_eq!(a.mul_basis(y0, x1), a.mul_basis(y1, x0));
        assert!(!a.mul_basis(y0, x1).is_zero());
        assert_eq!(a.center_dim(), 1);
    }

    #[test]
    fn glued_kronecker_matches() {
        let g: Algebra<Q> = algebra("kronecker3-gluing").unwrap();
        let k: Algebra<Q> = kronecker(3);
        assert_eq!(g.dim(), k.dim());
        assert_eq!(g.center_dim(), 1);
        assert_eq!(g.cocenter_dim(), 2);
    }
}
