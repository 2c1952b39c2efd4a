//! Hochschild cohomology and homology through the bar resolution relative
//! to the vertex idempotents.

use std::fmt;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::complexes::{
    bar_resolution, cyclic_chain_complex, ext, global_dimension, kernel_tensor,
    tensor_right_module, Graded, ModuleComplex, ProjComplex,
};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::module::{Enveloping, Module};

/// Dimensions in degrees `0..=certified_to`. `vanishes_beyond` is set when
/// the global dimension `d` of the algebra is known and at most the bound,
/// in which case every degree above `d` is zero by theory, not computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HHProfile {
    pub dims: Vec<usize>,
    pub field: FieldSpec,
    pub certified_to: usize,
    pub vanishes_beyond: Option<usize>,
}

impl HHProfile {
    pub fn from_graded(g: &Graded, n_max: usize, field: FieldSpec) -> Self {
        let dims = (0..=n_max as i64)
            .map(|n| g.get(&n).copied().unwrap_or(0))
            .collect();
        HHProfile {
            dims,
            field,
            certified_to: n_max,
            vanishes_beyond: None,
        }
    }

    pub fn get(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `(1)`, `(1, 0, …)` and `(1, 0, 0)` all compare equal.
    pub fn same_dims(&self, other: &HHProfile) -> bool {
        let n = self.dims.len().max(other.dims.len());
        (0..n).all(|k| self.get(k) == other.get(k))
    }

    pub fn with_vanishing(mut self, d: Option<usize>) -> Self {
        self.vanishes_beyond = d.filter(|&d| d <= self.certified_to);
        self
    }
}

impl fmt::Display for HHProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn gl_dim<F: Field>(a: &Arc<Algebra<F>>, n_max: usize) -> Option<usize> {
    global_dimension(a, n_max)
}

/// `Ext^n_{A^e}(A, M)` for `n ≤ n_max`.
pub fn hh_with_coefficients<F: Field>(
    env: &Enveloping<F>,
    m: &Module<F>,
    n_max: usize,
) -> Result<HHProfile> {
    if m.algebra().fingerprint() != env.env.fingerprint() {
        return Err(Error::SideMismatch(
            "coefficients must be a bimodule".into(),
        ));
    }
    let bar = bar_resolution(env, n_max + 1);
    let g = ext(&bar, &ModuleComplex::concentrated(m.clone(), 0))?;
    Ok(HHProfile::from_graded(&g, n_max, F::spec()))
}

/// `HH^n(A) = Ext^n_{A^e}(A, A)`.
pub fn hh_cohomology<F: Field>(a: &Arc<Algebra<F>>, n_max: usize) -> HHProfile {
    let env = Enveloping::new(a.clone());
    hh_with_coefficients(&env, &env.diagonal(), n_max)
        .expect("diagonal is a bimodule")
        .with_vanishing(gl_dim(a, n_max))
}

/// `HH_n(A)` from the relative Hochschild chain complex.
pub fn hh_homology<F: Field>(a: &Arc<Algebra<F>>, n_max: usize) -> HHProfile {
    let c = cyclic_chain_complex(a, n_max + 1);
    let g: Graded = c
        .cohomology()
        .into_iter()
        .filter(|&(d, _)| d <= 0)
        .map(|(d, k)| (-d, k))
        .collect();
    HHProfile::from_graded(&g, n_max, F::spec()).with_vanishing(gl_dim(a, n_max))
}

/// `Ext^n_{A^e}(A, DA)`, which has the dimensions of `HH_n(A)`.
pub fn homology_via_serre_dual<F: Field>(a: &Arc<Algebra<F>>, n_max: usize) -> HHProfile {
    let env = Enveloping::new(a.clone());
    hh_with_coefficients(&env, &env.dual(), n_max)
        .expect("dual is a bimodule")
        .with_vanishing(gl_dim(a, n_max))
}

/// Support kernel `T` for generalized Hochschild cohomology.
#[derive(Clone, Debug)]
pub enum Support<F> {
    Diagonal,
    Serre,
    Kernel(ProjComplex<F>),
}

/// `Ext^n_{A^e}(E, E ⊗_A T)` for `n ≤ n_max`. `e = None` stands for the
/// diagonal, replaced by its bar resolution.
pub fn generalized_hoh<F: Field>(
    env: &Enveloping<F>,
    e: Option<&ProjComplex<F>>,
    t: &Support<F>,
    n_max: usize,
) -> Result<HHProfile> {
    if let Some(e) = e {
        if e.algebra().fingerprint() != env.env.fingerprint() {
            return Err(Error::SideMismatch(
                "coefficient kernel is not a bimodule complex".into(),
            ));
        }
    }
    if let Support::Kernel(k) = t {
        if k.algebra().fingerprint() != env.env.fingerprint() {
            return Err(Error::SideMismatch(
                "support kernel is not a bimodule complex".into(),
            ));
        }
    }
    let g = match e {
        // the diagonal is the unit: E ⊗_A T = T
        None => {
            let target = match t {
                Support::Diagonal => ModuleComplex::concentrated(env.diagonal(), 0),
                Support::Serre => ModuleComplex::concentrated(env.dual(), 0),
                Support::Kernel(k) => k.to_module_complex(),
            };
            let depth =
                n_max as i64 + 1 + (-target.lo()).max(0) + (target.hi() - target.lo()).max(0);
            let bar = bar_resolution(env, depth as usize);
            ext(&bar, &target)?
        }
        Some(e) => {
            let target = match t {
                Support::Diagonal => e.to_module_complex(),
                Support::Serre => tensor_right_module(env, e, &env.dual())?,
                Support::Kernel(k) => kernel_tensor(env, e, k)?.to_module_complex(),
            };
            ext(e, &target)?
        }
    };
    Ok(HHProfile::from_graded(&g, n_max, F::spec()))
}
