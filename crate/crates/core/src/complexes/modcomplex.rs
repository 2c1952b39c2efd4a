use std::sync::Arc;

use super::vector::{Graded, VectorComplex};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, SparseVec};
use crate::module::Module;

/// Bounded complex of modules with linear differentials (`diffs[k]` maps
/// the term in degree `lo + k` to the next one, column convention).
#[derive(Clone, Debug)]
pub struct ModuleComplex<F> {
    algebra: Arc<Algebra<F>>,
    lo: i64,
    modules: Vec<Module<F>>,
    diffs: Vec<Matrix<F>>,
}

impl<F: Field> ModuleComplex<F> {
    pub fn new(
        algebra: Arc<Algebra<F>>,
        lo: i64,
        modules: Vec<Module<F>>,
        diffs: Vec<Matrix<F>>,
    ) -> Result<Self> {
        if diffs.len() + 1 != modules.len().max(1) {
            return Err(Error::InvalidComplex(
                "wrong number of differentials".into(),
            ));
        }
        if modules
            .iter()
            .any(|m| m.algebra().fingerprint() != algebra.fingerprint())
        {
            return Err(Error::SideMismatch(
                "module over a different algebra".into(),
            ));
        }
        let c = ModuleComplex::new_unchecked(algebra, lo, modules, diffs);
        c.underlying_checked()?;
        Ok(c)
    }

    pub(crate) fn new_unchecked(
        algebra: Arc<Algebra<F>>,
        lo: i64,
        modules: Vec<Module<F>>,
        diffs: Vec<Matrix<F>>,
    ) -> Self {
        ModuleComplex {
            algebra,
            lo,
            modules,
            diffs,
        }
    }

    pub fn zero(algebra: Arc<Algebra<F>>) -> Self {
        ModuleComplex {
            algebra,
            lo: 0,
            modules: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// A single module in degree `degree`.
    pub fn concentrated(module: Module<F>, degree: i64) -> Self {
        ModuleComplex {
            algebra: module.algebra().clone(),
            lo: degree,
            modules: vec![module],
            diffs: Vec::new(),
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.modules.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.modules.iter().all(|m| m.dim() == 0)
    }

    pub fn module(&self, p: i64) -> Option<&Module<F>> {
        let k = p - self.lo;
        if k >= 0 && (k as usize) < self.modules.len() {
            Some(&self.modules[k as usize])
        } else {
            None
        }
    }

    pub fn dim(&self, p: i64) -> usize {
        self.module(p).map_or(0, |m| m.dim())
    }

    /// Differential leaving degree `p`.
    pub fn diff(&self, p: i64) -> Matrix<F> {
        let k = p - self.lo;
        if k >= 0 && (k as usize) < self.diffs.len() {
            self.diffs[k as usize].clone()
        } else {
            Matrix::zeros(self.dim(p + 1), self.dim(p))
        }
    }

    pub fn diff_ref(&self, p: i64) -> Option<&Matrix<F>> {
        let k = p - self.lo;
        (k >= 0).then(|| self.diffs.get(k as usize)).flatten()
    }

    fn underlying_checked(&self) -> Result<VectorComplex<F>> {
        if self.modules.is_empty() {
            return Ok(VectorComplex::zero());
        }
        VectorComplex::new(
            self.lo,
            self.modules.iter().map(|m| m.dim()).collect(),
            self.diffs.clone(),
        )
    }

    pub fn underlying(&self) -> VectorComplex<F> {
        self.underlying_checked()
            .expect("module complex with d² = 0")
    }

    pub fn cohomology(&self) -> Graded {
        self.underlying().cohomology()
    }

    /// `X[n]`.
    pub fn shift(&self, n: i64) -> ModuleComplex<F> {
        let s = if n.rem_euclid(2) == 0 {
            F::one()
        } else {
            F::one().neg()
        };
        ModuleComplex {
            algebra: self.algebra.clone(),
            lo: self.lo - n,
            modules: self.modules.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(&s)).collect(),
        }
    }

    /// Checks that each differential commutes with the action of every
    /// algebra basis element.
    pub fn check_linear(&self) -> bool {
        for (k, d) in self.diffs.iter().enumerate() {
            let (m0, m1) = (&self.modules[k], &self.modules[k + 1]);
            for b in 0..self.algebra.dim() {
                for x in 0..m0.dim() {
                    let e = SparseVec::unit(x);
                    if d.apply(&m0.act_basis(b, &e)) != m1.act_basis(b, &d.apply(&e)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn direct_sum(parts: &[ModuleComplex<F>]) -> Result<ModuleComplex<F>> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidComplex("empty direct sum".into()));
        };
        let alg = first.algebra.clone();
        let nonzero: Vec<&ModuleComplex<F>> =
            parts.iter().filter(|p| !p.modules.is_empty()).collect();
        if nonzero.is_empty() {
            return Ok(ModuleComplex::zero(alg));
        }
        let lo = nonzero.iter().map(|p| p.lo).min().unwrap();
        let hi = nonzero.iter().map(|p| p.hi()).max().unwrap();
        let mut modules = Vec::new();
        let mut diffs = Vec::new();
        for p in lo..=hi {
            let ms: Vec<Module<F>> = nonzero
                .iter()
                .map(|x| {
                    x.module(p)
                        .cloned()
                        .unwrap_or_else(|| Module::zero(alg.clone()))
                })
                .collect();
            modules.push(Module::direct_sum(&ms)?);
            if p < hi {
                let rows: usize = nonzero.iter().map(|x| x.dim(p + 1)).sum();
                let mut cols = Vec::new();
                let mut r0 = 0;
                for x in &nonzero {
                    for c in x.diff(p).columns() {
                        cols.push(c.shifted(r0));
                    }
                    r0 += x.dim(p + 1);
                }
                diffs.push(Matrix::from_columns(rows, cols));
            }
        }
        ModuleComplex::new(alg, lo, modules, diffs)
    }
}
