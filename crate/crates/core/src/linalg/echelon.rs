//! Column-echelon reduction. Rank, kernel, image and linear solves all go
//! through [`Echelon`].

use std::collections::HashMap;

use super::matrix::Matrix;
use super::sparse::SparseVec;
use crate::field::Field;

/// Incrementally maintained echelon basis of a subspace of `F^n`.
///
/// Every stored vector has a distinct pivot (its largest nonzero index) with
/// coefficient one. When `track` is set, each basis vector also remembers the
/// combination of inserted vectors that produced it.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    basis: Vec<SparseVec<F>>,
    combos: Vec<SparseVec<F>>,
    pivot_of: HashMap<usize, usize>,
    source: Vec<usize>,
    inserted: usize,
    track: bool,
}

/// Outcome of reducing a vector against an [`Echelon`].
pub struct Reduction<F> {
    pub residual: SparseVec<F>,
    /// Coefficients `c` such that `v = residual + sum c_k basis_k`.
    pub coefficients: SparseVec<F>,
}

impl<F: Field> Echelon<F> {
    pub fn new(track: bool) -> Self {
        Echelon {
            basis: Vec::new(),
            combos: Vec::new(),
            pivot_of: HashMap::new(),
            source: Vec::new(),
            inserted: 0,
            track,
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec<F>] {
        &self.basis
    }

    /// Index (in insertion order) of the vector that introduced each basis element.
    pub fn sources(&self) -> &[usize] {
        &self.source
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_of.keys().copied()
    }

    pub fn reduce(&self, v: &SparseVec<F>) -> Reduction<F> {
        let mut v = v.clone();
        let mut coeff: Vec<(usize, F)> = Vec::new();
        // Only the pivot position is eliminated each round, so the scan walks
        // down from the top index; entries whose row has no pivot are skipped.
        let mut bound = usize::MAX;
        loop {
            let next = v
                .iter()
                .rev()
                .find(|(i, _)| *i < bound && self.pivot_of.contains_key(i))
                .map(|(i, c)| (i, c.clone()));
            match next {
                None => break,
                Some((r, c)) => {
                    let k = self.pivot_of[&r];
                    v = v.add_scaled(&self.basis[k], &c.neg());
                    coeff.push((k, c));
                    bound = r;
                }
            }
        }
        Reduction {
            residual: v,
            coefficients: SparseVec::from_pairs(coeff),
        }
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).residual.is_zero()
    }

    /// Inserts `v`. Returns `None` if it became a new basis vector, otherwise
    /// the dependency: a combination of inserted vectors (only when tracking)
    /// that vanishes.
    pub fn insert(&mut self, v: &SparseVec<F>) -> Option<SparseVec<F>> {
        let id = self.inserted;
        self.inserted += 1;
        let red = self.reduce(v);
        let mut combo = SparseVec::new();
        if self.track {
            combo = SparseVec::unit(id);
            for (k, c) in red.coefficients.iter() {
                combo = combo.add_scaled(&self.combos[k], &c.neg());
            }
        }
        let residual = red.residual;
        match residual.last().map(|(i, c)| (i, c.clone())) {
            None => Some(combo),
            Some((piv, lead)) => {
                let inv = lead.inv();
                self.pivot_of.insert(piv, self.basis.len());
                self.basis.push(residual.scale(&inv));
                if self.track {
                    self.combos.push(combo.scale(&inv));
                }
                self.source.push(id);
                None
            }
        }
    }

    /// Combination of inserted vectors giving basis vector `k` (tracking only).
    pub fn combo(&self, k: usize) -> &SparseVec<F> {
        &self.combos[k]
    }
}

/// Rank, kernel basis and image basis of a matrix.
pub struct RankKernelImage<F> {
    pub rank: usize,
    /// Columns form a basis of `{x : m x = 0}`.
    pub kernel: Matrix<F>,
    /// A subset of the original columns spanning the column space.
    pub image: Matrix<F>,
    pub pivot_columns: Vec<usize>,
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut e = Echelon::new(false);
    for c in m.columns() {
        e.insert(c);
    }
    e.rank()
}

pub fn rank_kernel_image<F: Field>(m: &Matrix<F>) -> RankKernelImage<F> {
    let mut e = Echelon::new(true);
    let mut kernel = Vec::new();
    for c in m.columns() {
        if let Some(dep) = e.insert(c) {
            kernel.push(dep);
        }
    }
    let pivot_columns: Vec<usize> = e.sources().to_vec();
    let image = Matrix::from_columns(
        m.rows(),
        pivot_columns.iter().map(|&j| m.column(j).clone()).collect(),
    );
    RankKernelImage {
        rank: e.rank(),
        kernel: Matrix::from_columns(m.cols(), kernel),
        image,
        pivot_columns,
    }
}

pub fn kernel<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    rank_kernel_image(m).kernel
}

/// Solves `m x = rhs` column by column; `None` if any column is inconsistent.
pub fn solve<F: Field>(m: &Matrix<F>, rhs: &Matrix<F>) -> Option<Matrix<F>> {
    assert_eq!(m.rows(), rhs.rows(), "row mismatch in solve");
    let mut e = Echelon::new(true);
    for c in m.columns() {
        e.insert(c);
    }
    let mut cols = Vec::with_capacity(rhs.cols());
    for b in rhs.columns() {
        let red = e.reduce(b);
        if !red.residual.is_zero() {
            return None;
        }
        let mut x = SparseVec::new();
        for (k, c) in red.coefficients.iter() {
            x = x.add_scaled(e.combo(k), c);
        }
        cols.push(x);
    }
    Some(Matrix::from_columns(m.cols(), cols))
}

/// Picks, among `candidates`, a maximal family independent modulo `span`.
/// Returns indices into `candidates`.
pub fn complement_indices<F: Field>(
    span: &[SparseVec<F>],
    candidates: &[SparseVec<F>],
) -> Vec<usize> {
    let mut e = Echelon::new(false);
    for v in span {
        e.insert(v);
    }
    let mut chosen = Vec::new();
    for (k, v) in candidates.iter().enumerate() {
        let before = e.rank();
        e.insert(v);
        if e.rank() > before {
            chosen.push(k);
        }
    }
    chosen
}
