use crate::complexes::{ext_basis_maps, ext_proj, ChainMap, Graded, ProjComplex};
use crate::error::{Error, Result};
use crate::field::Field;

use super::{unit_graded, ExceptionalCollection};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

/// `L_E F = cone(⊕_n Ext^n(E, F) ⊗ E[−n] → F)`, minimalized.
pub fn left_mutation<F: Field>(e: &ProjComplex<F>, f: &ProjComplex<F>) -> Result<ProjComplex<F>> {
    let maps = ext_basis_maps(e, f)?
        .into_iter()
        .map(|(n, phi)| phi.unshift(n, f))
        .collect::<Result<Vec<_>>>()?;
    let ev = ChainMap::from_sum(f, &maps)?;
    Ok(ProjComplex::cone(&ev).minimalize())
}

/// `R_E F = cone(F → ⊕_n Ext^n(F, E)^* ⊗ E[n])[−1]`, minimalized.
pub fn right_mutation<F: Field>(e: &ProjComplex<F>, f: &ProjComplex<F>) -> Result<ProjComplex<F>> {
    let maps: Vec<ChainMap<F>> = ext_basis_maps(f, e)?
        .into_iter()
        .map(|(_, phi)| phi)
        .collect();
    let coev = ChainMap::into_sum(f, &maps)?;
    Ok(ProjComplex::cone(&coev).shift(-1).minimalize())
}

/// The dual objects `F_i = R_{E_m} ⋯ R_{E_{i+1}} E_i` with the degree
/// `shifts[i]` in which `Ext(F_i, E_i) = k` sits, and the table
/// `table[j][i] = Ext(F_j, E_i)` (0-based).
#[derive(Clone, Debug)]
pub struct DualCollection<F> {
    pub objects: Vec<ProjComplex<F>>,
    pub shifts: Vec<i64>,
    pub table: Vec<Vec<Graded>>,
}

impl<F: Field> DualCollection<F> {
    /// `F_i` shifted so that `Ext(F_i, E_i)` sits in degree 0 (1-based).
    pub fn normalized(&self, i: usize) -> ProjComplex<F> {
        self.objects[i - 1].shift(-self.shifts[i - 1])
    }

    /// Whether `Ext(F_j, E_i)` is `k` for `i = j` (in a single degree) and
    /// zero otherwise.
    pub fn delta_table_holds(&self) -> bool {
        let m = self.objects.len();
        (0..m).all(|j| {
            (0..m).all(|i| {
                let g = &self.table[j][i];
                if i == j {
                    g.len() == 1 && g.values().all(|&d| d == 1)
                } else {
                    g.is_empty()
                }
            })
        })
    }

    /// The dual objects in reverse order `(F_m, …, F_1)`.
    pub fn reversed(&self) -> Result<ExceptionalCollection<F>> {
        ExceptionalCollection::new(self.objects.iter().rev().cloned().collect())
    }
}

fn shift_of(g: &Graded) -> Option<i64> {
    match (g.len(), g.iter().next()) {
        (1, Some((&d, &1))) => Some(d),
        _ => None,
    }
}

/// `BD_i(E_i) = R_{E_m} ⋯ R_{E_{i+1}} E_i` (1-based).
pub fn bd<F: Field>(coll: &ExceptionalCollection<F>, i: usize) -> Result<ProjComplex<F>> {
    let mut x = coll.object(i).clone();
    for k in i + 1..=coll.len() {
        x = right_mutation(coll.object(k), &x)?;
    }
    Ok(x)
}

pub fn dual_collection<F: Field>(coll: &ExceptionalCollection<F>) -> Result<DualCollection<F>> {
    let m = coll.len();
    let mut objects = Vec::with_capacity(m);
    for i in 1..=m {
        objects.push(bd(coll, i)?);
    }
    let mut table = vec![vec![Graded::new(); m]; m];
    for j in 0..m {
        for i in 0..m {
            table[j][i] = ext_proj(&objects[j], coll.object(i + 1))?;
        }
    }
    let mut shifts = Vec::with_capacity(m);
    for i in 0..m {
        shifts.push(
            shift_of(&table[i][i]).ok_or_else(|| {
                Error::MutationFailed(format!("Ext(F_{0}, E_{0}) is not k", i + 1))
            })?,
        );
    }
    Ok(DualCollection {
        objects,
        shifts,
        table,
    })
}

/// `Ext(BD_i(E_i), E_i)` has the graded dimensions of `Ext(E_i, E_i)` once
/// the shift of `BD_i(E_i)` is taken into account (1-based `i`).
pub fn bdi_check<F: Field>(coll: &ExceptionalCollection<F>, i: usize) -> Result<bool> {
    if i == 0 || i > coll.len() {
        return Err(Error::InvalidIndex {
            index: i,
            len: coll.len(),
        });
    }
    let f = bd(coll, i)?;
    let g = ext_proj(&f, coll.object(i))?;
    let Some(s) = shift_of(&g) else {
        return Ok(false);
    };
    let normalized = ext_proj(&f.shift(-s), coll.object(i))?;
    Ok(normalized == *coll.ext(i, i) && normalized == unit_graded())
}
