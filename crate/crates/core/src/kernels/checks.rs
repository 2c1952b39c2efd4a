use std::fmt;
use std::sync::Arc;

use crate::complexes::{ext, minimal_resolution, Graded, ModuleComplex};
use crate::derived::{unit_graded, ExceptionalCollection};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::gluing::Gluing;
use crate::hochschild::{hh_cohomology, hh_homology, HHProfile};

use super::{projection_kernels, Adjoint, Kernel, Kernels};

/// `ext[i][j] = Ext(P_i, P_j ∘ S)` and, for `i < j`, whether
/// `P_i ∘ P_j^*` vanishes (`None` when the adjoint is not available).
#[derive(Clone, Debug)]
pub struct OrthogonalityReport {
    pub ext: Vec<Vec<Graded>>,
    pub adjoint_products: Vec<Vec<Option<bool>>>,
}

impl OrthogonalityReport {
    pub fn diagonal_ok(&self) -> bool {
        (0..self.ext.len()).all(|i| self.ext[i][i] == unit_graded())
    }

    pub fn off_diagonal_ok(&self) -> bool {
        let m = self.ext.len();
        (0..m).all(|i| (0..m).all(|j| i == j || self.ext[i][j].is_empty()))
    }

    pub fn ok(&self) -> bool {
        self.diagonal_ok()
            && self.off_diagonal_ok()
            && self
                .adjoint_products
                .iter()
                .flatten()
                .all(|x| x.unwrap_or(true))
    }
}

pub fn orthogonality_report<F: Field>(
    calc: &Kernels<F>,
    kernels: &[Kernel<F>],
) -> Result<OrthogonalityReport> {
    let m = kernels.len();
    let mut table = vec![vec![Graded::new(); m]; m];
    for i in 0..m {
        for j in 0..m {
            table[i][j] = calc.ext_with_serre(&kernels[i], &kernels[j])?;
        }
    }
    let mut products = vec![vec![None; m]; m];
    for j in 0..m {
        let Ok(adj) = calc.adjoint(&kernels[j], Adjoint::Left) else {
            continue;
        };
        for i in 0..j {
            let c = calc.convolve(&kernels[i], &adj)?;
            products[i][j] = Some(calc.resolve(&c)?.minimalize().is_zero());
        }
    }
    Ok(OrthogonalityReport {
        ext: table,
        adjoint_products: products,
    })
}

/// `HH_•(A)` against the sum of `Ext(P_i, P_i ∘ S)` over the projection
/// kernels, degree by degree.
#[derive(Clone, Debug)]
pub struct AdditivityReport {
    pub homology: HHProfile,
    pub summands: Vec<Graded>,
}

impl AdditivityReport {
    pub fn sum(&self) -> Vec<usize> {
        (0..=self.homology.certified_to as i64)
            .map(|n| {
                self.summands
                    .iter()
                    .map(|g| g.get(&n).copied().unwrap_or(0))
                    .sum()
            })
            .collect()
    }

    pub fn each_unit(&self) -> bool {
        self.summands.iter().all(|g| *g == unit_graded())
    }

    pub fn holds(&self) -> bool {
        let negative = self.summands.iter().any(|g| g.keys().any(|&n| n < 0));
        !negative && self.sum() == self.homology.dims
    }
}

pub fn additivity_check<F: Field>(
    calc: &Kernels<F>,
    coll: &ExceptionalCollection<F>,
    n_max: usize,
) -> Result<AdditivityReport> {
    let kernels = projection_kernels(calc, coll, true)?;
    let summands = kernels
        .iter()
        .map(|k| calc.ext_with_serre(k, k))
        .collect::<Result<_>>()?;
    Ok(AdditivityReport {
        homology: hh_homology(calc.algebra(), n_max),
        summands,
    })
}

/// Dimension data for the sequence
/// `… → HH^t(A) → HH^t(B) ⊕ HH^t(C) → Ext^t_{B⊗C^op}(M, M) → HH^{t+1}(A) → …`.
#[derive(Clone, Debug)]
pub struct LesReport {
    pub glued: HHProfile,
    pub b: HHProfile,
    pub c: HHProfile,
    pub ext_m: Vec<usize>,
    pub euler: i64,
    /// `(hh⁰(A), hh⁰(B) + hh⁰(C), ext⁰(M, M), hh¹(A), hh¹(B) + hh¹(C))`
    /// when `B` and `C` are semisimple.
    pub chase: Option<Vec<usize>>,
    pub chase_exact: Option<bool>,
}

impl LesReport {
    pub fn holds(&self) -> bool {
        self.euler == 0 && self.chase_exact.unwrap_or(true)
    }
}

pub fn les_check<F: Field>(g: &Gluing<F>, n_max: usize) -> Result<LesReport> {
    let a = Arc::new(g.glue()?);
    let glued = hh_cohomology(&a, n_max);
    let hb = hh_cohomology(&g.b, n_max);
    let hc = hh_cohomology(&g.c, n_max);
    let res = minimal_resolution(&g.m, n_max + 1);
    let e = ext(&res.complex, &ModuleComplex::concentrated(g.m.clone(), 0))?;
    let ext_m: Vec<usize> = (0..=n_max as i64)
        .map(|n| e.get(&n).copied().unwrap_or(0))
        .collect();
    for (name, top) in [
        ("glued", glued.get(n_max)),
        ("B", hb.get(n_max)),
        ("C", hc.get(n_max)),
        ("M", ext_m[n_max]),
    ] {
        if top != 0 {
            return Err(Error::RangeNotCertified(format!(
                "{name} is nonzero in degree {n_max}"
            )));
        }
    }
    let euler = (0..=n_max)
        .map(|t| {
            let s = glued.get(t) as i64 - hb.get(t) as i64 - hc.get(t) as i64 + ext_m[t] as i64;
            if t % 2 == 0 {
                s
            } else {
                -s
            }
        })
        .sum();
    let semisimple = |x: &crate::algebra::Algebra<F>| x.dim() == x.num_vertices();
    let (chase, chase_exact) = if semisimple(&g.b) && semisimple(&g.c) {
        let seq = vec![
            glued.get(0),
            hb.get(0) + hc.get(0),
            ext_m[0],
            glued.get(1),
            hb.get(1) + hc.get(1),
        ];
        // ranks of consecutive maps in 0 → s0 → s1 → s2 → s3 → s4
        let r1 = seq[0] as i64;
        let r2 = seq[1] as i64 - r1;
        let r3 = seq[2] as i64 - r2;
        let r4 = seq[3] as i64 - r3;
        let tail_zero =
            (2..=n_max).all(|t| glued.get(t) == 0) && ext_m.iter().skip(1).all(|&x| x == 0);
        let exact = r2 >= 0 && r3 >= 0 && r4 == 0 && seq[4] == 0 && tail_zero;
        (Some(seq), Some(exact))
    } else {
        (None, None)
    };
    Ok(LesReport {
        glued,
        b: hb,
        c: hc,
        ext_m,
        euler,
        chase,
        chase_exact,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    FullModuloConjecture,
    NotFull,
    Inconsistent,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::FullModuloConjecture => "full modulo Nonvanishing Conjecture",
            Verdict::NotFull => "not full",
            Verdict::Inconsistent => "inconsistent",
        })
    }
}

#[derive(Clone, Debug)]
pub struct FullnessReport {
    pub length: usize,
    pub hh_total: usize,
    pub verdict: Verdict,
}

/// Each exceptional object contributes `k` to `HH_•`, so a collection whose
/// length equals `dim HH_•(A)` leaves a complement with vanishing Hochschild
/// homology.
pub fn fullness_certificate<F: Field>(
    coll: &ExceptionalCollection<F>,
    n_max: usize,
) -> Result<FullnessReport> {
    let h = hh_homology(coll.algebra(), n_max);
    if h.vanishes_beyond.is_none() {
        return Err(Error::RangeNotCertified(
            "Hochschild homology not known to vanish above the bound".into(),
        ));
    }
    let length = coll.len();
    let hh_total = h.total();
    let verdict = match length.cmp(&hh_total) {
        std::cmp::Ordering::Equal => Verdict::FullModuloConjecture,
        std::cmp::Ordering::Less => Verdict::NotFull,
        std::cmp::Ordering::Greater => Verdict::Inconsistent,
    };
    Ok(FullnessReport {
        length,
        hh_total,
        verdict,
    })
}
