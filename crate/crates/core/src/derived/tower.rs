use crate::complexes::{ext_basis_maps, ext_proj, ChainMap, ProjComplex};
use crate::error::{Error, Result};
use crate::field::Field;

use super::ExceptionalCollection;

/// Filtration of an object by a full exceptional collection.
/// `residues[k]` is the part of the object left after splitting off the
/// factors `A_m, …, A_{k+1}`, so `residues[m]` is the object itself and
/// `residues[0] = 0`. `factors[k-1] = A_k = Ext(E_k, R_k) ⊗ E_k` and
/// `maps[k-1]` is the evaluation `A_k → R_k` whose cone is `R_{k−1}`.
#[derive(Clone, Debug)]
pub struct SodTower<F> {
    pub object: ProjComplex<F>,
    pub residues: Vec<ProjComplex<F>>,
    pub factors: Vec<ProjComplex<F>>,
    pub maps: Vec<ChainMap<F>>,
}

impl<F: Field> SodTower<F> {
    /// `A_k`, 1-based.
    pub fn factor(&self, k: usize) -> &ProjComplex<F> {
        &self.factors[k - 1]
    }

    /// `[x] = Σ_k [A_k]` in the Grothendieck group.
    pub fn k0_sum_holds(&self) -> bool {
        let mut sum = vec![0i64; self.object.algebra().num_vertices()];
        for f in &self.factors {
            for (s, c) in sum.iter_mut().zip(f.k0_class()) {
                *s += c;
            }
        }
        sum == self.object.k0_class()
    }

    /// Each `A_k` lies in `⟨E_k⟩` as seen from the rest of the collection:
    /// `Ext(E_j, A_k) = 0` for `j > k` and `Ext(A_k, E_i) = 0` for `i < k`;
    /// and `R_{k−1}` is right orthogonal to `E_k, …, E_m`.
    pub fn membership_holds(&self, coll: &ExceptionalCollection<F>) -> Result<bool> {
        let m = coll.len();
        for k in 1..=m {
            let a = self.factor(k);
            for j in k + 1..=m {
                if !ext_proj(coll.object(j), a)?.is_empty() {
                    return Ok(false);
                }
            }
            for i in 1..k {
                if !ext_proj(a, coll.object(i))?.is_empty() {
                    return Ok(false);
                }
            }
            for j in k..=m {
                if !ext_proj(coll.object(j), &self.residues[k - 1])?.is_empty() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Splits `x` along the collection, starting from `E_m`:
/// `A_k = Ext(E_k, R_k) ⊗ E_k` and `R_{k−1} = cone(A_k → R_k)`.
pub fn sod_project<F: Field>(
    x: &ProjComplex<F>,
    coll: &ExceptionalCollection<F>,
) -> Result<SodTower<F>> {
    let m = coll.len();
    let mut residues = vec![x.clone(); m + 1];
    let mut factors = vec![ProjComplex::zero(x.algebra().clone()); m];
    let mut maps = Vec::with_capacity(m);
    let mut r = x.clone();
    for k in (1..=m).rev() {
        let e = coll.object(k);
        let pieces = ext_basis_maps(e, &r)?
            .into_iter()
            .map(|(n, phi)| phi.unshift(n, &r))
            .collect::<Result<Vec<_>>>()?;
        let ev = ChainMap::from_sum(&r, &pieces)?;
        factors[k - 1] = ev.source.clone();
        r = ProjComplex::cone(&ev).minimalize();
        residues[k - 1] = r.clone();
        maps.push(ev);
    }
    maps.reverse();
    if !residues[0].is_zero() {
        return Err(Error::NotFull { steps: m });
    }
    Ok(SodTower {
        object: x.clone(),
        residues,
        factors,
        maps,
    })
}
