//! Upper-triangular gluing of two algebras along a bimodule.

use std::sync::Arc;

use crate::algebra::{Algebra, BasisElement};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, SparseVec};
use crate::module::{Action, Module};

/// Gluing data: algebras `b`, `c` and a `(b, c)`-bimodule `m`, given as a
/// left module over `b ⊗ c^op` (`Algebra::tensor(b, &c.opposite())`).
#[derive(Clone, Debug)]
pub struct Gluing<F> {
    pub b: Arc<Algebra<F>>,
    pub c: Arc<Algebra<F>>,
    pub m: Module<F>,
}

impl<F: Field> Gluing<F> {
    pub fn new(b: Arc<Algebra<F>>, c: Arc<Algebra<F>>, m: Module<F>) -> Result<Self> {
        let bc = Algebra::tensor(&b, &c.opposite());
        if m.algebra().fingerprint() != bc.fingerprint() {
            return Err(Error::DimensionMismatch(format!(
                "bimodule is over an algebra of dimension {}, expected {}",
                m.algebra().dim(),
                bc.dim()
            )));
        }
        Ok(Gluing { b, c, m })
    }

    /// `b ⊗ c^op` as an algebra.
    pub fn bimodule_algebra(&self) -> Arc<Algebra<F>> {
        self.m.algebra().clone()
    }

    /// `m = k^d` over `b = c = k`.
    pub fn vector_space(point: Arc<Algebra<F>>, d: usize) -> Result<Self> {
        if point.dim() != 1 {
            return Err(Error::DimensionMismatch(
                "expected the one-dimensional algebra".into(),
            ));
        }
        let bc = Arc::new(Algebra::tensor(&point, &point.opposite()));
        let m = Module::new(bc, vec![0; d], Action::Matrices(vec![Matrix::identity(d)]))?;
        Gluing::new(point.clone(), point, m)
    }

    /// The glued algebra `[[b, m], [0, c]]`, re-presented by a quiver with
    /// relations. Vertices of `c` come first, then those of `b`.
    pub fn glue(&self) -> Result<Algebra<F>> {
        triangular_gluing(&self.b, &self.c, &self.m)
    }
}

/// Left action of `x ⊗ 1` and right action of `1 ⊗ y^op` on `m`.
fn side_actions<F: Field>(
    b: &Algebra<F>,
    c: &Algebra<F>,
    m: &Module<F>,
) -> (Vec<Vec<SparseVec<F>>>, Vec<Vec<SparseVec<F>>>) {
    let dc = c.dim();
    let one_c = c.one();
    let one_b = b.one();
    let left = (0..b.dim())
        .map(|i| {
            let el =
                SparseVec::from_pairs(one_c.iter().map(|(j, v)| (i * dc + j, v.clone())).collect());
            (0..m.dim())
                .map(|k| m.act(&el, &SparseVec::unit(k)))
                .collect()
        })
        .collect();
    let right = (0..dc)
        .map(|j| {
            let el =
                SparseVec::from_pairs(one_b.iter().map(|(i, v)| (i * dc + j, v.clone())).collect());
            (0..m.dim())
                .map(|k| m.act(&el, &SparseVec::unit(k)))
                .collect()
        })
        .collect();
    (left, right)
}

/// Builds the triangular algebra with underlying space `b ⊕ m ⊕ c` and
/// product `(b₁,m₁,c₁)(b₂,m₂,c₂) = (b₁b₂, b₁m₂ + m₁c₂, c₁c₂)`, then
/// re-presents it by a quiver with relations.
pub fn triangular_gluing<F: Field>(
    b: &Algebra<F>,
    c: &Algebra<F>,
    m: &Module<F>,
) -> Result<Algebra<F>> {
    let bc = Algebra::tensor(b, &c.opposite());
    if m.algebra().fingerprint() != bc.fingerprint() {
        return Err(Error::DimensionMismatch(format!(
            "bimodule is over an algebra of dimension {}, expected {}",
            m.algebra().dim(),
            bc.dim()
        )));
    }
    if !m.check_axioms() {
        return Err(Error::InvalidModule("bimodule action axioms fail".into()));
    }
    let (db, dc, dm) = (b.dim(), c.dim(), m.dim());
    let nc = c.num_vertices();
    let clash = b
        .vertex_names()
        .iter()
        .any(|v| c.vertex_names().contains(v));
    let mut names: Vec<String> = Vec::new();
    for v in c.vertex_names() {
        names.push(if clash { format!("c{v}") } else { v.clone() });
    }
    for v in b.vertex_names() {
        names.push(if clash { format!("b{v}") } else { v.clone() });
    }
    // basis: c, then b, then m
    let mut basis = Vec::with_capacity(db + dc + dm);
    for e in c.basis() {
        basis.push(e.clone());
    }
    for e in b.basis() {
        basis.push(BasisElement {
            label: e.label.clone(),
            source: e.source + nc,
            target: e.target + nc,
            idempotent: e.idempotent,
        });
    }
    for k in 0..dm {
        let v = m.vertex_of()[k];
        basis.push(BasisElement {
            label: format!("m{k}"),
            source: v % nc,
            target: nc + v / nc,
            idempotent: false,
        });
    }
    let d = basis.len();
    let (ob, om) = (dc, dc + db);
    let (left, right) = side_actions(b, c, m);
    let mut table = vec![SparseVec::new(); d * d];
    for i in 0..dc {
        for j in 0..dc {
            table[i * d + j] = c.mul_basis(i, j).clone();
        }
    }
    for i in 0..db {
        for j in 0..db {
            table[(ob + i) * d + ob + j] = b.mul_basis(i, j).shifted(ob);
        }
        for k in 0..dm {
            table[(ob + i) * d + om + k] = left[i][k].shifted(om);
        }
    }
    for k in 0..dm {
        for j in 0..dc {
            table[(om + k) * d + j] = right[j][k].shifted(om);
        }
    }
    let name = format!("glue({},{})", b.name(), c.name());
    let raw = Algebra::from_structure(name.clone(), names, basis, table, None)?;
    if !raw.check_axioms() {
        return Err(Error::InvalidModule(
            "glued product is not associative".into(),
        ));
    }
    let (_, presented) = raw.present()?;
    Ok(presented.with_name(name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::field::Q;

    #[test]
    fn glue_vector_space_gives_kronecker() {
        let point: Arc<Algebra<Q>> = Arc::new(catalog::point());
        for d in 0..4 {
            let g = Gluing::vector_space(point.clone(), d).unwrap();
            let a = g.glue().unwrap();
            assert_eq!(a.dim(), 2 + d);
            assert_eq!(a.center_dim(), if d == 0 { 2 } else { 1 });
        }
    }

    #[test]
    fn glue_point_with_projective() {
        // b = k, c = Kronecker-2, m = e_2 c, the projective right c-module of dim 3
        let point: Arc<Algebra<Q>> = Arc::new(catalog::point());
        let c: Arc<Algebra<Q>> = Arc::new(catalog::kronecker(2));
        let bc = Arc::new(Algebra::tensor(&point, &c.opposite()));
        let idx: Vec<usize> = (0..c.dim()).filter(|&x| c.basis()[x].target == 1).collect();
        let vertex_of = idx.iter().map(|&x| c.basis()[x].source).collect();
        let ms = (0..c.dim())
            .map(|j| {
                let cols = idx
                    .iter()
                    .map(|&x| {
                        let p = c.mul_basis(x, j);
                        SparseVec::from_pairs(
                            p.iter()
                                .map(|(z, v)| {
                                    (idx.iter().position(|&w| w == z).unwrap(), v.clone())
                                })
                                .collect(),
                        )
                    })
                    .collect();
                Matrix::from_columns(idx.len(), cols)
            })
            .collect();
        let m = Module::new(bc, vertex_of, Action::Matrices(ms)).unwrap();
        assert_eq!(m.dim(), 3);
        let a = triangular_gluing(&point, &c, &m).unwrap();
        assert_eq!(a.num_vertices(), 3);
        assert_eq!(a.dim(), 1 + 4 + 3);
        assert!(a.directed_order());
        assert!(a.check_axioms());
    }
}
