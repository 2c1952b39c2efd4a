use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Echelon, Matrix, SparseVec};

/// Graded dimensions with zero entries omitted.
pub type Graded = BTreeMap<i64, usize>;

/// Bounded cochain complex of finite-dimensional vector spaces. `diffs[k]`
/// maps degree `lo + k` to `lo + k + 1`.
#[derive(Clone, Debug)]
pub struct VectorComplex<F> {
    lo: i64,
    dims: Vec<usize>,
    diffs: Vec<Matrix<F>>,
}

impl<F: Field> VectorComplex<F> {
    pub fn new(lo: i64, dims: Vec<usize>, diffs: Vec<Matrix<F>>) -> Result<Self> {
        if diffs.len() + 1 != dims.len().max(1) {
            return Err(Error::InvalidComplex(
                "wrong number of differentials".into(),
            ));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.cols() != dims[k] || d.rows() != dims[k + 1] {
                return Err(Error::InvalidComplex(format!(
                    "differential at degree {} has the wrong shape",
                    lo + k as i64
                )));
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k].mul(&diffs[k - 1]).is_zero() {
                return Err(Error::InvalidComplex(format!(
                    "d² ≠ 0 at degree {}",
                    lo + k as i64 - 1
                )));
            }
        }
        Ok(VectorComplex { lo, dims, diffs })
    }

    pub fn zero() -> Self {
        VectorComplex {
            lo: 0,
            dims: Vec::new(),
            diffs: Vec::new(),
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn dim(&self, p: i64) -> usize {
        self.index(p).map_or(0, |k| self.dims[k])
    }

    fn index(&self, p: i64) -> Option<usize> {
        let k = p - self.lo;
        (k >= 0 && (k as usize) < self.dims.len()).then_some(k as usize)
    }

    /// Differential leaving degree `p` (zero matrix outside the support).
    pub fn diff(&self, p: i64) -> Matrix<F> {
        match self.index(p) {
            Some(k) if k < self.diffs.len() => self.diffs[k].clone(),
            _ => Matrix::zeros(self.dim(p + 1), self.dim(p)),
        }
    }

    fn diff_rank(&self, p: i64) -> usize {
        match self.index(p) {
            Some(k) if k < self.diffs.len() => linalg::rank(&self.diffs[k]),
            _ => 0,
        }
    }

    pub fn cohomology_at(&self, p: i64) -> usize {
        let d = self.dim(p);
        if d == 0 {
            return 0;
        }
        d - self.diff_rank(p) - self.diff_rank(p - 1)
    }

    /// All nonzero cohomology dimensions.
    pub fn cohomology(&self) -> Graded {
        let ranks: Vec<usize> = self.diffs.iter().map(linalg::rank).collect();
        let mut out = Graded::new();
        for (k, &d) in self.dims.iter().enumerate() {
            let out_rank = ranks.get(k).copied().unwrap_or(0);
            let in_rank = if k > 0 { ranks[k - 1] } else { 0 };
            let h = d - out_rank - in_rank;
            if h > 0 {
                out.insert(self.lo + k as i64, h);
            }
        }
        out
    }

    /// Euler characteristic of the terms.
    pub fn euler(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &d)| {
                if (self.lo + k as i64).rem_euclid(2) == 0 {
                    d as i64
                } else {
                    -(d as i64)
                }
            })
            .sum()
    }

    /// Cocycle representatives of a basis of `H^p` together with a reducer
    /// that expresses any cocycle in that basis.
    pub fn cohomology_basis(&self, p: i64) -> CohomologyBasis<F> {
        let d = self.dim(p);
        let z = linalg::kernel(&self.diff(p));
        let b = self.diff(p - 1);
        let mut ech = Echelon::new(true);
        for c in b.columns() {
            ech.insert(c);
        }
        let first_rep_id = b.cols();
        let mut reps = Vec::new();
        let mut ids = Vec::new();
        for (k, c) in z.columns().iter().enumerate() {
            let before = ech.rank();
            ech.insert(c);
            if ech.rank() > before {
                reps.push(c.clone());
                ids.push(first_rep_id + k);
            }
        }
        CohomologyBasis {
            dim: d,
            reps,
            ids,
            ech,
            first_rep_id,
        }
    }
}

pub struct CohomologyBasis<F> {
    pub dim: usize,
    pub reps: Vec<SparseVec<F>>,
    ids: Vec<usize>,
    ech: Echelon<F>,
    first_rep_id: usize,
}

impl<F: Field> CohomologyBasis<F> {
    /// Coordinates of the class of the cocycle `z` in the representative
    /// basis, or `None` if `z` is not in the span of cocycles seen.
    pub fn class_of(&self, z: &SparseVec<F>) -> Option<SparseVec<F>> {
        let red = self.ech.reduce(z);
        if !red.residual.is_zero() {
            return None;
        }
        let mut combo = SparseVec::new();
        for (k, c) in red.coefficients.iter() {
            combo = combo.add_scaled(self.ech.combo(k), c);
        }
        // combo is in terms of inserted ids: boundaries first, then kernel columns
        let pos: std::collections::HashMap<usize, usize> =
            self.ids.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut out = Vec::new();
        for (i, c) in combo.iter() {
            if i >= self.first_rep_id {
                match pos.get(&i) {
                    Some(&k) => out.push((k, c.clone())),
                    None => return None,
                }
            }
        }
        Some(SparseVec::from_pairs(out))
    }
}
