//! Finite-dimensional left modules over an [`Algebra`].
//!
//! Every module carries a basis adapted to the vertex idempotents: basis
//! vector `k` lies in `e_{vertex_of[k]} M`. Bimodules over `(A, B)` are left
//! modules over `A ⊗ B^op`; their vertex `(x, y)` has index `x * nv(B) + y`.

use std::sync::Arc;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Accumulator, Matrix, SparseVec};

#[derive(Clone, Debug)]
pub enum Action<F> {
    /// `⊕_k Λ e_{summands[k]}`, basis the concatenated local bases.
    Projective {
        summands: Vec<usize>,
        offsets: Vec<usize>,
    },
    /// One matrix per basis element of the algebra.
    Matrices(Vec<Matrix<F>>),
    /// Module over `Λ1 ⊗ Λ2` given by two commuting actions; basis element
    /// `i * dim(Λ2) + j` acts as `first[i] · second[j]`.
    Commuting {
        first: Vec<Matrix<F>>,
        second: Vec<Matrix<F>>,
    },
}

#[derive(Clone, Debug)]
pub struct Module<F> {
    algebra: Arc<Algebra<F>>,
    dim: usize,
    vertex_of: Vec<usize>,
    action: Action<F>,
}

impl<F: Field> Module<F> {
    pub fn new(algebra: Arc<Algebra<F>>, vertex_of: Vec<usize>, action: Action<F>) -> Result<Self> {
        let dim = vertex_of.len();
        match &action {
            Action::Matrices(ms) => {
                if ms.len() != algebra.dim()
                    || ms.iter().any(|m| m.rows() != dim || m.cols() != dim)
                {
                    return Err(Error::DimensionMismatch(
                        "action matrices have the wrong shape".into(),
                    ));
                }
            }
            Action::Commuting { first, second } => {
                if first.len() * second.len() != algebra.dim()
                    || first
                        .iter()
                        .chain(second.iter())
                        .any(|m| m.rows() != dim || m.cols() != dim)
                {
                    return Err(Error::DimensionMismatch(
                        "bimodule actions have the wrong shape".into(),
                    ));
                }
            }
            Action::Projective { .. } => {}
        }
        if vertex_of.iter().any(|&v| v >= algebra.num_vertices()) {
            return Err(Error::InvalidModule(
                "basis vector at an unknown vertex".into(),
            ));
        }
        Ok(Module {
            algebra,
            dim,
            vertex_of,
            action,
        })
    }

    /// `⊕_k Λ e_{v_k}`.
    pub fn projective(algebra: Arc<Algebra<F>>, summands: &[usize]) -> Self {
        let mut offsets = Vec::with_capacity(summands.len());
        let mut vertex_of = Vec::new();
        for &v in summands {
            offsets.push(vertex_of.len());
            vertex_of.extend(
                algebra
                    .local_basis(v)
                    .iter()
                    .map(|&b| algebra.basis()[b].target),
            );
        }
        Module {
            dim: vertex_of.len(),
            vertex_of,
            action: Action::Projective {
                summands: summands.to_vec(),
                offsets,
            },
            algebra,
        }
    }

    /// The simple module at vertex `v`.
    pub fn simple(algebra: Arc<Algebra<F>>, v: usize) -> Self {
        let ev = algebra.idempotent(v);
        let ms = (0..algebra.dim())
            .map(|b| {
                if b == ev {
                    Matrix::identity(1)
                } else {
                    Matrix::zeros(1, 1)
                }
            })
            .collect();
        Module {
            dim: 1,
            vertex_of: vec![v],
            action: Action::Matrices(ms),
            algebra,
        }
    }

    /// Zero module.
    pub fn zero(algebra: Arc<Algebra<F>>) -> Self {
        Module::projective(algebra, &[])
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_of(&self) -> &[usize] {
        &self.vertex_of
    }

    pub fn action(&self) -> &Action<F> {
        &self.action
    }

    /// Basis indices lying in `e_v M`.
    pub fn slice(&self, v: usize) -> Vec<usize> {
        (0..self.dim).filter(|&k| self.vertex_of[k] == v).collect()
    }

    /// Dimension vector indexed by vertex.
    pub fn dim_vector(&self) -> Vec<usize> {
        let mut out = vec![0; self.algebra.num_vertices()];
        for &v in &self.vertex_of {
            out[v] += 1;
        }
        out
    }

    /// Action of the basis element `b` on a vector.
    pub fn act_basis(&self, b: usize, x: &SparseVec<F>) -> SparseVec<F> {
        match &self.action {
            Action::Matrices(ms) => ms[b].apply(x),
            Action::Commuting { first, second } => {
                let d2 = second.len();
                first[b / d2].apply(&second[b % d2].apply(x))
            }
            Action::Projective { summands, offsets } => {
                let mut acc = Accumulator::new();
                for (k, c) in x.iter() {
                    let s = offsets.partition_point(|&o| o <= k) - 1;
                    let v = summands[s];
                    let y = self.algebra.local_basis(v)[k - offsets[s]];
                    let p = self.algebra.mul_basis(b, y);
                    for (z, d) in p.iter() {
                        acc.push(offsets[s] + self.algebra.local_position(z), d.mul(c));
                    }
                }
                acc.finish()
            }
        }
    }

    pub fn act(&self, a: &Element<F>, x: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = Accumulator::new();
        for (b, c) in a.iter() {
            acc.push_scaled(&self.act_basis(b, x), c, 0);
        }
        acc.finish()
    }

    /// Matrix of the action of basis element `b`.
    pub fn action_matrix(&self, b: usize) -> Matrix<F> {
        Matrix::from_columns(
            self.dim,
            (0..self.dim)
                .map(|k| self.act_basis(b, &SparseVec::unit(k)))
                .collect(),
        )
    }

    /// Converts to explicit per-basis-element matrices.
    pub fn to_matrices(&self) -> Module<F> {
        let ms = (0..self.algebra.dim())
            .map(|b| self.action_matrix(b))
            .collect();
        Module {
            algebra: self.algebra.clone(),
            dim: self.dim,
            vertex_of: self.vertex_of.clone(),
            action: Action::Matrices(ms),
        }
    }

    /// Checks associativity, the unit, and that the basis is vertex-adapted.
    pub fn check_axioms(&self) -> bool {
        let a = &self.algebra;
        let d = a.dim();
        for k in 0..self.dim {
            let x = SparseVec::unit(k);
            if self.act(&a.one(), &x) != x {
                return false;
            }
            if self.act_basis(a.idempotent(self.vertex_of[k]), &x) != x {
                return false;
            }
            for i in 0..d {
                let ix = self.act_basis(i, &x);
                for j in 0..d {
                    if self.act_basis(j, &ix) != self.act(a.mul_basis(j, i), &x) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Direct sum of modules over the same algebra.
    pub fn direct_sum(parts: &[Module<F>]) -> Result<Module<F>> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidModule("empty direct sum".into()));
        };
        let alg = first.algebra.clone();
        if parts
            .iter()
            .any(|p| p.algebra.fingerprint() != alg.fingerprint())
        {
            return Err(Error::SideMismatch(
                "direct sum over different algebras".into(),
            ));
        }
        let nonzero: Vec<Module<F>> = parts.iter().filter(|p| p.dim > 0).cloned().collect();
        if nonzero.is_empty() {
            return Ok(Module::zero(alg));
        }
        let parts = &nonzero[..];
        let first = &parts[0];
        if let Some(summands) = projective_summands(parts) {
            return Ok(Module::projective(alg, &summands));
        }
        let dim: usize = parts.iter().map(|p| p.dim).sum();
        let vertex_of = parts
            .iter()
            .flat_map(|p| p.vertex_of.iter().copied())
            .collect();
        let block = |mats: Vec<Matrix<F>>| -> Matrix<F> {
            let mut cols = Vec::with_capacity(dim);
            let mut off = 0;
            for m in mats {
                for c in m.columns() {
                    cols.push(c.shifted(off));
                }
                off += m.rows();
            }
            Matrix::from_columns(dim, cols)
        };
        let all_commuting = parts
            .iter()
            .all(|p| matches!(p.action, Action::Commuting { .. }));
        let action = if all_commuting {
            let (n1, n2) = match &first.action {
                Action::Commuting { first, second } => (first.len(), second.len()),
                _ => unreachable!(),
            };
            let pick = |which: usize, i: usize| -> Vec<Matrix<F>> {
                parts
                    .iter()
                    .map(|p| match &p.action {
                        Action::Commuting { first, second } => {
                            if which == 0 {
                                first[i].clone()
                            } else {
                                second[i].clone()
                            }
                        }
                        _ => unreachable!(),
                    })
                    .collect()
            };
            Action::Commuting {
                first: (0..n1).map(|i| block(pick(0, i))).collect(),
                second: (0..n2).map(|j| block(pick(1, j))).collect(),
            }
        } else {
            Action::Matrices(
                (0..alg.dim())
                    .map(|b| block(parts.iter().map(|p| p.action_matrix(b)).collect()))
                    .collect(),
            )
        };
        Module::new(alg, vertex_of, action)
    }

    /// Restriction of a bimodule (module over `Λ1 ⊗ Λ2` with commuting
    /// actions) to the first factor on the subspace where the second factor's
    /// vertex is `w`. Returns the module over `Λ1` and the basis indices used.
    pub fn first_slice(
        &self,
        first_alg: Arc<Algebra<F>>,
        w: usize,
    ) -> Result<(Module<F>, Vec<usize>)> {
        let Action::Commuting { first, .. } = &self.action else {
            return Err(Error::SideMismatch("not a bimodule".into()));
        };
        let n2 = self.algebra.num_vertices() / first_alg.num_vertices();
        let idx: Vec<usize> = (0..self.dim)
            .filter(|&k| self.vertex_of[k] % n2 == w)
            .collect();
        let vertex_of = idx.iter().map(|&k| self.vertex_of[k] / n2).collect();
        let ms = first.iter().map(|m| m.submatrix(&idx, &idx)).collect();
        Ok((
            Module::new(first_alg, vertex_of, Action::Matrices(ms))?,
            idx,
        ))
    }

    /// Restriction to the second factor on the subspace where the first
    /// factor's vertex is `v`.
    pub fn second_slice(
        &self,
        second_alg: Arc<Algebra<F>>,
        v: usize,
    ) -> Result<(Module<F>, Vec<usize>)> {
        let Action::Commuting { second, .. } = &self.action else {
            return Err(Error::SideMismatch("not a bimodule".into()));
        };
        let n2 = second_alg.num_vertices();
        let idx: Vec<usize> = (0..self.dim)
            .filter(|&k| self.vertex_of[k] / n2 == v)
            .collect();
        let vertex_of = idx.iter().map(|&k| self.vertex_of[k] % n2).collect();
        let ms = second.iter().map(|m| m.submatrix(&idx, &idx)).collect();
        Ok((
            Module::new(second_alg, vertex_of, Action::Matrices(ms))?,
            idx,
        ))
    }

    /// The commuting actions of a bimodule.
    pub fn commuting_parts(&self) -> Option<(&[Matrix<F>], &[Matrix<F>])> {
        match &self.action {
            Action::Commuting { first, second } => Some((first, second)),
            _ => None,
        }
    }
}

fn projective_summands<F: Field>(parts: &[Module<F>]) -> Option<Vec<usize>> {
    let mut out = Vec::new();
    for p in parts {
        match &p.action {
            Action::Projective { summands, .. } => out.extend_from_slice(summands),
            _ => return None,
        }
    }
    Some(out)
}

/// Left action of each basis element of `a` on `a` itself.
pub fn left_regular<F: Field>(a: &Algebra<F>) -> Vec<Matrix<F>> {
    (0..a.dim())
        .map(|i| {
            Matrix::from_columns(
                a.dim(),
                (0..a.dim()).map(|x| a.mul_basis(i, x).clone()).collect(),
            )
        })
        .collect()
}

/// Right action `x ↦ x · b_j` of each basis element.
pub fn right_regular<F: Field>(a: &Algebra<F>) -> Vec<Matrix<F>> {
    (0..a.dim())
        .map(|j| {
            Matrix::from_columns(
                a.dim(),
                (0..a.dim()).map(|x| a.mul_basis(x, j).clone()).collect(),
            )
        })
        .collect()
}

/// An algebra together with its opposite and enveloping algebra
/// `A^e = A ⊗ A^op`.
#[derive(Clone, Debug)]
pub struct Enveloping<F> {
    pub base: Arc<Algebra<F>>,
    pub op: Arc<Algebra<F>>,
    pub env: Arc<Algebra<F>>,
}

impl<F: Field> Enveloping<F> {
    pub fn new(base: Arc<Algebra<F>>) -> Self {
        let op = Arc::new(base.opposite());
        let env = Arc::new(Algebra::tensor(&base, &op));
        Enveloping { base, op, env }
    }

    pub fn nv(&self) -> usize {
        self.base.num_vertices()
    }

    /// `A^e` vertex for the pair `(left, right)`.
    pub fn vertex(&self, left: usize, right: usize) -> usize {
        left * self.nv() + right
    }

    /// The element `a ⊗ b^op`.
    pub fn pure(&self, a: &Element<F>, b: &Element<F>) -> Element<F> {
        let d = self.base.dim();
        let mut pairs = Vec::with_capacity(a.nnz() * b.nnz());
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                pairs.push((i * d + j, x.mul(y)));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// `A` as an `A`-bimodule.
    pub fn diagonal(&self) -> Module<F> {
        let a = &self.base;
        let nv = self.nv();
        let vertex_of = a.basis().iter().map(|b| b.target * nv + b.source).collect();
        Module::new(
            self.env.clone(),
            vertex_of,
            Action::Commuting {
                first: left_regular(a),
                second: right_regular(a),
            },
        )
        .expect("diagonal bimodule")
    }

    /// `DA = Hom_k(A, k)` with `(a·f·c)(x) = f(c x a)`. The dual basis vector
    /// `f_b` sits at vertex `(source(b), target(b))`.
    pub fn dual(&self) -> Module<F> {
        let a = &self.base;
        let d = a.dim();
        let nv = self.nv();
        let vertex_of = a.basis().iter().map(|b| b.source * nv + b.target).collect();
        // coefficient of f_{b'} in a_i · f_b is coef_b(b' a_i)
        let left = (0..d)
            .map(|i| {
                let mut cols = vec![Vec::new(); d];
                for bp in 0..d {
                    for (b, c) in a.mul_basis(bp, i).iter() {
                        cols[b].push((bp, c.clone()));
                    }
                }
                Matrix::from_columns(d, cols.into_iter().map(SparseVec::from_pairs).collect())
            })
            .collect();
        // coefficient of f_{b'} in f_b · a_j is coef_b(a_j b')
        let right = (0..d)
            .map(|j| {
                let mut cols = vec![Vec::new(); d];
                for bp in 0..d {
                    for (b, c) in a.mul_basis(j, bp).iter() {
                        cols[b].push((bp, c.clone()));
                    }
                }
                Matrix::from_columns(d, cols.into_iter().map(SparseVec::from_pairs).collect())
            })
            .collect();
        Module::new(
            self.env.clone(),
            vertex_of,
            Action::Commuting {
                first: left,
                second: right,
            },
        )
        .expect("dual bimodule")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::quiver::{build_path_algebra, Quiver};

    fn kron2() -> Arc<Algebra<Q>> {
        let q = Quiver::from_strs(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
        Arc::new(build_path_algebra(&q, &[], None).unwrap())
    }

    #[test]
    fn projective_and_simple_axioms() {
        let a = kron2();
        assert!(Module::projective(a.clone(), &[0, 1, 0]).check_axioms());
        assert!(Module::simple(a.clone(), 1).check_axioms());
    }

    #[test]
    fn dual_bimodule_slices() {
        let env = Enveloping::new(kron2());
        let da = env.dual();
        assert!(da.check_axioms());
        assert!(env.diagonal().check_axioms());
        assert_eq!(da.dim(), 4);
        // e_2 · DA · e_1 and e_1 · DA · e_2
        assert_eq!(da.slice(env.vertex(1, 0)).len(), 0);
        assert_eq!(da.slice(env.vertex(0, 1)).len(), 2);
    }

    #[test]
    fn composition_convention() {
        let a = kron2();
        let arrow = a.element_by_label("a").unwrap();
        let e1 = a.idempotent(0);
        assert_eq!(a.mul_basis(arrow, e1), &SparseVec::unit(arrow));
        assert!(a.mul_basis(e1, arrow).is_zero());
    }
}
