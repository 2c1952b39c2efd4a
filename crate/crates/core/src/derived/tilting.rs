use std::collections::BTreeMap;

use crate::algebra::{Algebra, BasisElement};
use crate::complexes::{ChainMap, HomComplex, ProjComplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Matrix, SparseVec};

use super::ExceptionalCollection;

/// Shifts `E_i ↦ E_i[s_i]` so that every `Ext(E_i, E_j)` sits in degree 0.
/// Fails with `NotStrong` when some Ext is spread over several degrees or
/// the required shifts are inconsistent.
pub fn strongify<F: Field>(
    coll: &ExceptionalCollection<F>,
) -> Result<(ExceptionalCollection<F>, Vec<i64>)> {
    let m = coll.len();
    let mut shift: Vec<Option<i64>> = vec![None; m + 1];
    for start in 1..=m {
        if shift[start].is_some() {
            continue;
        }
        shift[start] = Some(0);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let si = shift[i].unwrap();
            for j in 1..=m {
                if i == j {
                    continue;
                }
                // s_j − s_i = d_ij for Ext(E_i, E_j) in degree d_ij
                let (g, sign) = if i < j {
                    (coll.ext(i, j), 1)
                } else {
                    (coll.ext(j, i), -1)
                };
                if g.is_empty() {
                    continue;
                }
                let (lo, hi) = (i.min(j), i.max(j));
                if g.len() > 1 {
                    let (&degree, &dim) = g.iter().nth(1).unwrap();
                    return Err(Error::NotStrong {
                        i: lo,
                        j: hi,
                        degree,
                        dim,
                    });
                }
                let (&d, &dim) = g.iter().next().unwrap();
                let want = si + sign * d;
                match shift[j] {
                    None => {
                        shift[j] = Some(want);
                        stack.push(j);
                    }
                    Some(sj) if sj != want => {
                        return Err(Error::NotStrong {
                            i: lo,
                            j: hi,
                            degree: d,
                            dim,
                        });
                    }
                    _ => {}
                }
            }
        }
    }
    let shifts: Vec<i64> = (1..=m).map(|i| shift[i].unwrap()).collect();
    let objs = (1..=m)
        .map(|i| coll.object(i).shift(shifts[i - 1]))
        .collect();
    Ok((ExceptionalCollection::new(objs)?, shifts))
}

/// Hom spaces between members, with chosen degree-0 chain maps as bases.
struct HomData<F> {
    hom: HomComplex<F>,
    basis: crate::complexes::CohomologyBasis<F>,
    maps: Vec<ChainMap<F>>,
    /// columns: classes of `maps` in the representative basis
    change: Matrix<F>,
}

impl<F: Field> HomData<F> {
    fn new(x: &ProjComplex<F>, y: &ProjComplex<F>, identity: bool) -> Result<Self> {
        let hom = HomComplex::new(x, &y.to_module_complex())?;
        let basis = hom.complex.cohomology_basis(0);
        let maps: Vec<ChainMap<F>> = if identity {
            vec![ChainMap::identity(x)]
        } else {
            basis
                .reps
                .iter()
                .map(|z| hom.to_chain_map(0, z, x, y))
                .collect()
        };
        let cols = maps
            .iter()
            .map(|f| {
                basis
                    .class_of(&hom.cocycle_of(0, f))
                    .expect("chain map is a cocycle")
            })
            .collect();
        let change = Matrix::from_columns(basis.reps.len(), cols);
        Ok(HomData {
            hom,
            basis,
            maps,
            change,
        })
    }

    /// Coordinates of a degree-0 chain map in terms of `maps`.
    fn coordinates(&self, f: &ChainMap<F>) -> SparseVec<F> {
        let class = self
            .basis
            .class_of(&self.hom.cocycle_of(0, f))
            .expect("composite is a cocycle");
        let rhs = Matrix::from_columns(self.change.rows(), vec![class]);
        let x = linalg::solve(&self.change, &rhs).expect("maps span the Hom space");
        x.column(0).clone()
    }
}

/// `End(⊕ E_i)` for a strong collection, as a basic algebra presented by a
/// quiver with relations. Vertex `i` corresponds to `E_i`; a map
/// `E_i → E_j` has source `i` and target `j`, and `g·f` is "`f` then `g`".
pub fn endomorphism_algebra<F: Field>(coll: &ExceptionalCollection<F>) -> Result<Algebra<F>> {
    let m = coll.len();
    for i in 1..=m {
        for j in 1..=m {
            if let Some((&degree, &dim)) = coll.ext(i, j).iter().find(|(&d, _)| d != 0) {
                return Err(Error::NotStrong { i, j, degree, dim });
            }
        }
    }
    let mut data: BTreeMap<(usize, usize), HomData<F>> = BTreeMap::new();
    let mut basis = Vec::new();
    let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for i in 0..m {
        for j in 0..m {
            if coll.ext(i + 1, j + 1).is_empty() {
                continue;
            }
            let h = HomData::new(coll.object(i + 1), coll.object(j + 1), i == j)?;
            index.insert((i, j), basis.len());
            for k in 0..h.maps.len() {
                let label = if i == j {
                    format!("e_{}", i + 1)
                } else {
                    format!("f{}_{}.{}", i + 1, j + 1, k)
                };
                basis.push(BasisElement {
                    label,
                    source: i,
                    target: j,
                    idempotent: i == j,
                });
            }
            data.insert((i, j), h);
        }
    }
    let d = basis.len();
    let mut table = vec![SparseVec::new(); d * d];
    for (&(i, j), f_data) in &data {
        for (&(j2, k), g_data) in &data {
            if j2 != j {
                continue;
            }
            let Some(target) = data.get(&(i, k)) else {
                continue;
            };
            for (fi, f) in f_data.maps.iter().enumerate() {
                for (gi, g) in g_data.maps.iter().enumerate() {
                    let coords = target.coordinates(&f.then(g));
                    let x = index[&(j, k)] + gi;
                    let y = index[&(i, j)] + fi;
                    table[x * d + y] = coords.shifted(index[&(i, k)]);
                }
            }
        }
    }
    let names = (1..=m).map(|i| i.to_string()).collect();
    let raw = Algebra::from_structure(
        format!("End({})", coll.algebra().name()),
        names,
        basis,
        table,
        None,
    )?;
    if !raw.check_axioms() {
        return Err(Error::InvalidModule(
            "composition table is not associative".into(),
        ));
    }
    let (_, presented) = raw.present()?;
    Ok(presented)
}
