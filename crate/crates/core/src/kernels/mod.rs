//! Bimodule kernels. A kernel `K` acts on complexes of projective left
//! modules by `Y ↦ K ⊗_A Y`; convolution is `L ∘ K = L ⊗_A K`, so that
//! `Φ_{L∘K} = Φ_L ∘ Φ_K`.

mod checks;

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::complexes::{
    bar_resolution, ext, ext_proj, kernel_apply, kernel_tensor, minimal_resolution,
    tensor_left_module, tensor_right_module, Graded, ModuleComplex, ProjComplex,
};
use crate::derived::{dual_collection, ExceptionalCollection};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::module::Enveloping;

pub use checks::{
    additivity_check, fullness_certificate, les_check, orthogonality_report, AdditivityReport,
    FullnessReport, LesReport, OrthogonalityReport, Verdict,
};

#[derive(Clone, Debug)]
pub enum Kernel<F> {
    /// `A` itself; resolved by the bar construction on demand.
    Diagonal,
    /// `E ⊗_k F^∨` with `E`, `F` complexes of projective left modules, acting
    /// by `Y ↦ E ⊗ RHom(F, Y)`.
    Decomposable {
        left: ProjComplex<F>,
        right: ProjComplex<F>,
    },
    /// A complex of projective bimodules (left modules over `A^e`).
    General(ProjComplex<F>),
    /// A bimodule complex with arbitrary terms, such as `DA`.
    Bimodule(ModuleComplex<F>),
}

impl<F: Field> Kernel<F> {
    pub fn is_diagonal(&self) -> bool {
        matches!(self, Kernel::Diagonal)
    }

    pub fn shape(&self) -> &'static str {
        match self {
            Kernel::Diagonal => "diagonal",
            Kernel::Decomposable { .. } => "decomposable",
            Kernel::General(_) => "general",
            Kernel::Bimodule(_) => "bimodule",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adjoint {
    Left,
    Right,
}

/// Kernel calculus over a fixed algebra, with the resolutions of `A` and
/// `DA` and the inverse dualizing complex computed once.
#[derive(Clone, Debug)]
pub struct Kernels<F> {
    pub env: Enveloping<F>,
    diagonal: Option<ProjComplex<F>>,
    serre: Option<ProjComplex<F>>,
    inverse_serre: Option<ProjComplex<F>>,
}

/// `a ⊗ b^op ↦ b ⊗ a^op`, an anti-automorphism of `A^e`.
fn swap(k: usize, d: usize) -> usize {
    (k % d) * d + k / d
}

impl<F: Field> Kernels<F> {
    pub fn new(a: Arc<Algebra<F>>) -> Self {
        let env = Enveloping::new(a.clone());
        let nv = a.num_vertices();
        let depth = 2 * nv + 1;
        let bar = bar_resolution(&env, depth);
        let diagonal = (bar.lo() > -(depth as i64)).then_some(bar);
        let res = minimal_resolution(&env.dual(), depth);
        let serre = res.complete.then_some(res.complex);
        // RHom_{A^e}(A, A^e), the inverse dualizing complex
        let inverse_serre = diagonal.as_ref().filter(|_| serre.is_some()).map(|r| {
            let op = Arc::new(env.env.opposite());
            let d = a.dim();
            r.dual(op)
                .and_then(|t| {
                    t.relabel(env.env.clone(), |k| swap(k, d), |v| (v % nv) * nv + v / nv)
                })
                .expect("dual of the bar resolution")
        });
        Kernels {
            env,
            diagonal,
            serre,
            inverse_serre,
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.env.base
    }

    /// `DA`, as a complex of projective bimodules when its resolution is
    /// finite and as the bare bimodule otherwise.
    pub fn serre_kernel(&self) -> Kernel<F> {
        match &self.serre {
            Some(r) => Kernel::General(r.clone()),
            None => Kernel::Bimodule(ModuleComplex::concentrated(self.env.dual(), 0)),
        }
    }

    pub fn decomposable(&self, left: ProjComplex<F>, right: ProjComplex<F>) -> Result<Kernel<F>> {
        let fp = self.algebra().fingerprint();
        if left.algebra().fingerprint() != fp || right.algebra().fingerprint() != fp {
            return Err(Error::SideMismatch(
                "decomposable kernel factors must be left modules over A".into(),
            ));
        }
        Ok(Kernel::Decomposable { left, right })
    }

    pub fn general(&self, k: ProjComplex<F>) -> Result<Kernel<F>> {
        if k.algebra().fingerprint() != self.env.env.fingerprint() {
            return Err(Error::SideMismatch(
                "kernel is not a bimodule complex".into(),
            ));
        }
        Ok(Kernel::General(k))
    }

    /// A complex of projective bimodules representing the kernel.
    pub fn resolve(&self, k: &Kernel<F>) -> Result<ProjComplex<F>> {
        match k {
            Kernel::Diagonal => self.diagonal.clone().ok_or_else(|| {
                Error::UnsupportedKernelShape("the diagonal has no finite resolution".into())
            }),
            Kernel::Decomposable { left, right } => ProjComplex::external_tensor(
                left,
                &right.dual(self.env.op.clone())?,
                self.env.env.clone(),
            ),
            Kernel::General(p) => Ok(p.clone()),
            Kernel::Bimodule(m) => {
                if m.lo() != m.hi() {
                    return Err(Error::UnsupportedKernelShape(
                        "bimodule kernels must sit in one degree".into(),
                    ));
                }
                let Some(n) = m.module(m.lo()) else {
                    return Ok(ProjComplex::zero(self.env.env.clone()));
                };
                let res = minimal_resolution(n, 2 * self.env.nv() + 1);
                if !res.complete {
                    return Err(Error::UnsupportedKernelShape(
                        "bimodule has no finite resolution".into(),
                    ));
                }
                Ok(res.complex.shift(-m.lo()))
            }
        }
    }

    /// The kernel as a complex of bimodules, without resolving.
    pub fn as_bimodules(&self, k: &Kernel<F>) -> Result<ModuleComplex<F>> {
        match k {
            Kernel::Diagonal => Ok(ModuleComplex::concentrated(self.env.diagonal(), 0)),
            Kernel::Bimodule(m) => Ok(m.clone()),
            _ => Ok(self.resolve(k)?.to_module_complex()),
        }
    }

    /// Class in `K₀(A^e)`, indexed by vertex pairs `(v, w) ↦ v·n + w`.
    pub fn k0_class(&self, k: &Kernel<F>) -> Result<Vec<i64>> {
        Ok(self.resolve(k)?.k0_class())
    }

    /// Multiplicities of the minimal projective bimodule complex.
    pub fn minimal_data(&self, k: &Kernel<F>) -> Result<crate::complexes::Multiplicities> {
        Ok(self.resolve(k)?.minimalize().multiplicities())
    }

    pub fn convolve(&self, l: &Kernel<F>, k: &Kernel<F>) -> Result<Kernel<F>> {
        match (l, k) {
            (Kernel::Diagonal, _) => Ok(k.clone()),
            (_, Kernel::Diagonal) => Ok(l.clone()),
            (
                Kernel::Decomposable { left: e, right: f },
                Kernel::Decomposable { left: g, right: h },
            ) => {
                // E ⊗ RHom(F, G) ⊗ H^∨, and RHom(F, G) is formal over a field
                let v = ext_proj(f, g)?;
                Ok(Kernel::Decomposable {
                    left: e.tensor_graded(&v)?,
                    right: h.clone(),
                })
            }
            (Kernel::Bimodule(n), _) => {
                let p = self.resolve(k)?;
                let (d, n) = single(n)?;
                Ok(Kernel::Bimodule(
                    tensor_left_module(&self.env, &n, &p)?.shift(-d),
                ))
            }
            (_, Kernel::Bimodule(n)) => {
                let p = self.resolve(l)?;
                let (d, n) = single(n)?;
                Ok(Kernel::Bimodule(
                    tensor_right_module(&self.env, &p, &n)?.shift(-d),
                ))
            }
            _ => {
                let (x, y) = (self.resolve(l)?, self.resolve(k)?);
                Ok(Kernel::General(
                    kernel_tensor(&self.env, &x, &y)?.minimalize(),
                ))
            }
        }
    }

    /// `Φ_K(Y) = K ⊗_A Y`.
    pub fn apply(&self, k: &Kernel<F>, y: &ProjComplex<F>) -> Result<ProjComplex<F>> {
        if y.algebra().fingerprint() != self.algebra().fingerprint() {
            return Err(Error::SideMismatch(
                "kernels act on left modules over A".into(),
            ));
        }
        match k {
            Kernel::Diagonal => Ok(y.clone()),
            Kernel::Decomposable { left, right } => left.tensor_graded(&ext_proj(right, y)?),
            _ => Ok(kernel_apply(&self.env, &self.resolve(k)?, y)?.minimalize()),
        }
    }

    /// The Serre functor `DA ⊗_A −` on perfect complexes.
    pub fn serre(&self, y: &ProjComplex<F>) -> Result<ProjComplex<F>> {
        let r = self
            .serre
            .as_ref()
            .ok_or_else(|| Error::UnsupportedKernelShape("DA is not perfect".into()))?;
        Ok(kernel_apply(&self.env, r, y)?.minimalize())
    }

    /// `RHom_{A^e}(A, A^e) ⊗_A −`, inverse to [`Kernels::serre`].
    pub fn inverse_serre(&self, y: &ProjComplex<F>) -> Result<ProjComplex<F>> {
        let t = self
            .inverse_serre
            .as_ref()
            .ok_or_else(|| Error::UnsupportedKernelShape("DA is not perfect".into()))?;
        Ok(kernel_apply(&self.env, t, y)?.minimalize())
    }

    /// Adjoint kernels. For `E ⊗ F^∨` the right adjoint is `SF ⊗ E^∨` and the
    /// left adjoint is `F ⊗ (S⁻¹E)^∨`.
    pub fn adjoint(&self, k: &Kernel<F>, side: Adjoint) -> Result<Kernel<F>> {
        match k {
            Kernel::Diagonal => Ok(Kernel::Diagonal),
            Kernel::Decomposable { left, right } => Ok(match side {
                Adjoint::Right => Kernel::Decomposable {
                    left: self.serre(right)?,
                    right: left.clone(),
                },
                Adjoint::Left => Kernel::Decomposable {
                    left: right.clone(),
                    right: self.inverse_serre(left)?,
                },
            }),
            _ => Err(Error::UnsupportedKernelShape(format!(
                "adjoint of a {} kernel",
                k.shape()
            ))),
        }
    }

    /// `Ext_{A^e}(K, L)`.
    pub fn ext(&self, k: &Kernel<F>, l: &Kernel<F>) -> Result<Graded> {
        ext(&self.resolve(k)?, &self.as_bimodules(l)?)
    }

    /// `Ext_{A^e}(K, L ∘ S)` with `L ∘ S = L ⊗_A DA`.
    pub fn ext_with_serre(&self, k: &Kernel<F>, l: &Kernel<F>) -> Result<Graded> {
        let target = match l {
            Kernel::Diagonal => ModuleComplex::concentrated(self.env.dual(), 0),
            _ => tensor_right_module(&self.env, &self.resolve(l)?, &self.env.dual())?,
        };
        ext(&self.resolve(k)?, &target)
    }
}

fn single<F: Field>(m: &ModuleComplex<F>) -> Result<(i64, crate::module::Module<F>)> {
    match (m.lo() == m.hi(), m.module(m.lo())) {
        (true, Some(n)) => Ok((m.lo(), n.clone())),
        (true, None) => Ok((0, crate::module::Module::zero(m.algebra().clone()))),
        _ => Err(Error::UnsupportedKernelShape(
            "bimodule kernels must sit in one degree".into(),
        )),
    }
}

/// Projection kernels `P_i = E_i ⊗ F_i^∨` onto the pieces `⟨E_i⟩`, with
/// `F_i` from the dual collection shifted so that `Ext(F_i, E_i) = k` in
/// degree 0. With `certified_full` the classes must add up to the class of
/// the diagonal; parities of the `F_i` are flipped if needed.
pub fn projection_kernels<F: Field>(
    calc: &Kernels<F>,
    coll: &ExceptionalCollection<F>,
    certified_full: bool,
) -> Result<Vec<Kernel<F>>> {
    if coll.algebra().fingerprint() != calc.algebra().fingerprint() {
        return Err(Error::SideMismatch(
            "collection over a different algebra".into(),
        ));
    }
    let dual = dual_collection(coll)?;
    let m = coll.len();
    let mut kernels: Vec<Kernel<F>> = (1..=m)
        .map(|i| calc.decomposable(coll.object(i).clone(), dual.normalized(i)))
        .collect::<Result<_>>()?;
    if !certified_full {
        return Ok(kernels);
    }
    let target = calc.k0_class(&Kernel::Diagonal)?;
    let classes: Vec<Vec<i64>> = kernels
        .iter()
        .map(|k| calc.k0_class(k))
        .collect::<Result<_>>()?;
    let mut masks: Vec<u32> = (0..1u32 << m).collect();
    masks.sort_by_key(|x| x.count_ones());
    let found = masks.into_iter().find(|&mask| {
        (0..target.len()).all(|c| {
            let s: i64 = (0..m)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        -classes[i][c]
                    } else {
                        classes[i][c]
                    }
                })
                .sum();
            s == target[c]
        })
    });
    let Some(mask) = found else {
        return Err(Error::NormalizationFailed(m));
    };
    for (i, k) in kernels.iter_mut().enumerate() {
        if mask >> i & 1 == 1 {
            if let Kernel::Decomposable { right, .. } = k {
                *right = right.shift(1);
            }
        }
    }
    Ok(kernels)
}

#[cfg(test)]
mod tests;
