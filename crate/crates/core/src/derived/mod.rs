//! Exceptional collections in the derived category of an algebra.

mod mutation;
mod tilting;
mod tower;

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::complexes::{ext_proj, Graded, ProjComplex};
use crate::error::{Error, Result};
use crate::field::Field;

pub use mutation::{
    bdi_check, dual_collection, left_mutation, right_mutation, Direction, DualCollection,
};
pub use tilting::{endomorphism_algebra, strongify};
pub use tower::{sod_project, SodTower};

/// A failed exceptionality condition; indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `Ext(E_i, E_i)` is not `k` in degree 0.
    NotExceptional { i: usize, ext: Graded },
    /// `Ext(E_j, E_i) ≠ 0` for `i < j`.
    Backward { j: usize, i: usize, ext: Graded },
}

#[derive(Clone, Debug)]
pub struct CollectionCheck {
    pub violations: Vec<Violation>,
    /// `table[i][j] = Ext(E_i, E_j)` (0-based).
    pub table: Vec<Vec<Graded>>,
}

impl CollectionCheck {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The point: `k` in degree 0.
pub fn unit_graded() -> Graded {
    [(0, 1)].into_iter().collect()
}

/// Checks `Ext(E_i, E_i) = k` and `Ext(E_j, E_i) = 0` for `i < j`.
pub fn is_exceptional_collection<F: Field>(objs: &[ProjComplex<F>]) -> Result<CollectionCheck> {
    let m = objs.len();
    let mut table = vec![vec![Graded::new(); m]; m];
    for i in 0..m {
        for j in 0..m {
            table[i][j] = ext_proj(&objs[i], &objs[j])?;
        }
    }
    let mut violations = Vec::new();
    for i in 0..m {
        if table[i][i] != unit_graded() {
            violations.push(Violation::NotExceptional {
                i: i + 1,
                ext: table[i][i].clone(),
            });
        }
        for j in i + 1..m {
            if !table[j][i].is_empty() {
                violations.push(Violation::Backward {
                    j: j + 1,
                    i: i + 1,
                    ext: table[j][i].clone(),
                });
            }
        }
    }
    Ok(CollectionCheck { violations, table })
}

/// An exceptional collection `E_1, …, E_m` of complexes of projective left
/// modules, with `Ext(E_j, E_i) = 0` for `i < j`.
#[derive(Clone, Debug)]
pub struct ExceptionalCollection<F> {
    algebra: Arc<Algebra<F>>,
    objects: Vec<ProjComplex<F>>,
    table: Vec<Vec<Graded>>,
}

impl<F: Field> ExceptionalCollection<F> {
    pub fn new(objects: Vec<ProjComplex<F>>) -> Result<Self> {
        let algebra = objects
            .first()
            .map(|o| o.algebra().clone())
            .ok_or_else(|| Error::NotExceptional("empty collection".into()))?;
        if objects
            .iter()
            .any(|o| o.algebra().fingerprint() != algebra.fingerprint())
        {
            return Err(Error::SideMismatch(
                "objects over different algebras".into(),
            ));
        }
        let check = is_exceptional_collection(&objects)?;
        if let Some(v) = check.violations.first() {
            return Err(Error::NotExceptional(format!("{v:?}")));
        }
        Ok(ExceptionalCollection {
            algebra,
            objects,
            table: check.table,
        })
    }

    /// The projectives `(Ae_{n-1}, …, Ae_0)` of a directed algebra.
    pub fn projectives(a: &Arc<Algebra<F>>) -> Result<Self> {
        ExceptionalCollection::new(
            (0..a.num_vertices())
                .rev()
                .map(|v| ProjComplex::projective(a.clone(), v))
                .collect(),
        )
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[ProjComplex<F>] {
        &self.objects
    }

    /// `E_i`, 1-based.
    pub fn object(&self, i: usize) -> &ProjComplex<F> {
        &self.objects[i - 1]
    }

    /// `Ext(E_i, E_j)`, 1-based.
    pub fn ext(&self, i: usize, j: usize) -> &Graded {
        &self.table[i - 1][j - 1]
    }

    /// Sub-collection of the given 1-based indices, in order.
    pub fn subcollection(&self, indices: &[usize]) -> Result<Self> {
        let mut objs = Vec::new();
        for &i in indices {
            if i == 0 || i > self.len() {
                return Err(Error::InvalidIndex {
                    index: i,
                    len: self.len(),
                });
            }
            objs.push(self.objects[i - 1].clone());
        }
        ExceptionalCollection::new(objs)
    }

    /// Mutation at the 1-based index `i`. Left acts on `(E_i, E_{i+1})`
    /// giving `(L_{E_i} E_{i+1}, E_i)`; right acts on `(E_{i−1}, E_i)`
    /// giving `(E_i, R_{E_i} E_{i−1})`.
    pub fn mutate(&self, i: usize, dir: Direction) -> Result<Self> {
        let m = self.len();
        let mut objs = self.objects.clone();
        match dir {
            Direction::Left => {
                if i == 0 || i + 1 > m {
                    return Err(Error::InvalidIndex { index: i, len: m });
                }
                let l = left_mutation(&objs[i - 1], &objs[i])?;
                objs[i] = objs[i - 1].clone();
                objs[i - 1] = l;
            }
            Direction::Right => {
                if i < 2 || i > m {
                    return Err(Error::InvalidIndex { index: i, len: m });
                }
                let r = right_mutation(&objs[i - 1], &objs[i - 2])?;
                objs[i - 2] = objs[i - 1].clone();
                objs[i - 1] = r;
            }
        }
        ExceptionalCollection::new(objs).map_err(|e| Error::MutationFailed(e.to_string()))
    }
}

#[cfg(test)]
mod tests;
