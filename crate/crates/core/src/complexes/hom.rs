use std::collections::BTreeMap;

use super::algmatrix::AlgMatrix;
use super::modcomplex::ModuleComplex;
use super::proj::{ChainMap, ProjComplex};
use super::vector::{Graded, VectorComplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, SparseVec};

/// A block of `Hom^n`: the maps `Λe_{v_r} → N^{p+n}` for summand `r` of
/// `P^p`, identified with `e_{v_r} N^{p+n}`.
#[derive(Clone, Debug)]
struct Block {
    p: i64,
    r: usize,
    offset: usize,
    positions: Vec<usize>,
}

/// The total Hom complex `Hom_Λ(P, N)` for a projective complex `P`.
#[derive(Clone, Debug)]
pub struct HomComplex<F> {
    pub complex: VectorComplex<F>,
    blocks: BTreeMap<i64, Vec<Block>>,
}

fn sign<F: Field>(n: i64) -> F {
    if n.rem_euclid(2) == 0 {
        F::one()
    } else {
        F::one().neg()
    }
}

impl<F: Field> HomComplex<F> {
    /// `Hom^n = Π_p Hom(P^p, N^{p+n})`, `D(Φ) = d_N Φ − (−1)^n Φ d_P`.
    pub fn new(p: &ProjComplex<F>, n: &ModuleComplex<F>) -> Result<Self> {
        if p.algebra().fingerprint() != n.algebra().fingerprint() {
            return Err(Error::SideMismatch(
                "Hom between complexes over different algebras".into(),
            ));
        }
        if p.is_zero() || n.is_zero() {
            return Ok(HomComplex {
                complex: VectorComplex::zero(),
                blocks: BTreeMap::new(),
            });
        }
        let lo = n.lo() - p.hi();
        let hi = n.hi() - p.lo();
        let mut blocks = BTreeMap::new();
        let mut dims = Vec::new();
        for deg in lo..=hi {
            let mut list = Vec::new();
            let mut off = 0;
            for q in p.degrees() {
                let Some(m) = n.module(q + deg) else { continue };
                for (r, &v) in p.term(q).iter().enumerate() {
                    let positions = m.slice(v);
                    if positions.is_empty() {
                        continue;
                    }
                    let len = positions.len();
                    list.push(Block {
                        p: q,
                        r,
                        offset: off,
                        positions,
                    });
                    off += len;
                }
            }
            dims.push(off);
            blocks.insert(deg, list);
        }
        let mut diffs = Vec::new();
        for deg in lo..hi {
            diffs.push(Self::differential(
                p,
                n,
                deg,
                &blocks[&deg],
                &blocks[&(deg + 1)],
                dims[(deg + 1 - lo) as usize],
            ));
        }
        let complex = VectorComplex::new(lo, dims, diffs)?;
        Ok(HomComplex { complex, blocks })
    }

    fn differential(
        p: &ProjComplex<F>,
        n: &ModuleComplex<F>,
        deg: i64,
        src: &[Block],
        tgt: &[Block],
        rows: usize,
    ) -> Matrix<F> {
        let find = |q: i64, r: usize| tgt.iter().find(|b| b.p == q && b.r == r);
        let s: F = sign::<F>(deg).neg();
        let mut cols = Vec::new();
        for blk in src {
            let module = n.module(blk.p + deg).expect("block module");
            let dn = n.diff_ref(blk.p + deg);
            let same = find(blk.p, blk.r);
            // summands of P^{p-1} mapping into summand r
            let dp = p.diff_ref(blk.p - 1);
            for &j in &blk.positions {
                let e = SparseVec::unit(j);
                let mut pairs = Vec::new();
                if let (Some(dn), Some(t)) = (dn, same) {
                    for (k, c) in dn.apply(&e).iter() {
                        let pos = t
                            .positions
                            .binary_search(&k)
                            .expect("differential preserves vertex slices");
                        pairs.push((t.offset + pos, c.clone()));
                    }
                }
                if let Some(dp) = dp {
                    for r2 in 0..dp.rows() {
                        let m = dp.get(r2, blk.r);
                        if m.is_zero() {
                            continue;
                        }
                        let Some(t) = find(blk.p - 1, r2) else {
                            continue;
                        };
                        for (k, c) in module.act(m, &e).iter() {
                            let pos = t
                                .positions
                                .binary_search(&k)
                                .expect("action lands in the right slice");
                            pairs.push((t.offset + pos, c.mul(&s)));
                        }
                    }
                }
                cols.push(SparseVec::from_pairs(pairs));
            }
        }
        Matrix::from_columns(rows, cols)
    }

    pub fn cohomology(&self) -> Graded {
        self.complex.cohomology()
    }

    /// Converts a cocycle of degree `deg` into a chain map `P → Q[deg]`,
    /// where `Q` is the projective complex whose module complex was used.
    pub fn to_chain_map(
        &self,
        deg: i64,
        x: &SparseVec<F>,
        source: &ProjComplex<F>,
        target: &ProjComplex<F>,
    ) -> ChainMap<F> {
        let a = target.algebra();
        let shifted = target.shift(deg);
        let mut maps: BTreeMap<i64, AlgMatrix<F>> = BTreeMap::new();
        let empty = Vec::new();
        for blk in self.blocks.get(&deg).unwrap_or(&empty) {
            let tterm = target.term(blk.p + deg);
            let mut offs = Vec::with_capacity(tterm.len());
            let mut o = 0;
            for &w in tterm {
                offs.push(o);
                o += a.local_basis(w).len();
            }
            let m = maps
                .entry(blk.p)
                .or_insert_with(|| AlgMatrix::zeros(source.term(blk.p).len(), tterm.len()));
            for (k, &j) in blk.positions.iter().enumerate() {
                let c = x.get(blk.offset + k);
                if c.is_zero() {
                    continue;
                }
                let s = offs.partition_point(|&o| o <= j) - 1;
                let b = a.local_basis(tterm[s])[j - offs[s]];
                m.add_to(blk.r, s, &SparseVec::single(b, c));
            }
        }
        ChainMap::new_unchecked(source.clone(), shifted, maps)
    }

    /// Inverse of `to_chain_map`: the coordinates of a chain map `P → Q[deg]`
    /// in `Hom^deg`.
    pub fn cocycle_of(&self, deg: i64, f: &ChainMap<F>) -> SparseVec<F> {
        let a = f.target.algebra();
        let mut pairs = Vec::new();
        let empty = Vec::new();
        for blk in self.blocks.get(&deg).unwrap_or(&empty) {
            let tterm = f.target.term(blk.p);
            let m = f.at(blk.p);
            let mut o = 0;
            for (c, &w) in tterm.iter().enumerate() {
                for (b, coef) in m.get(blk.r, c).iter() {
                    let j = o + a.local_position(b);
                    let pos = blk
                        .positions
                        .binary_search(&j)
                        .expect("chain map entry in the right slice");
                    pairs.push((blk.offset + pos, coef.clone()));
                }
                o += a.local_basis(w).len();
            }
        }
        SparseVec::from_pairs(pairs)
    }
}

/// Graded dimensions of `Ext(P, N)`.
pub fn ext<F: Field>(p: &ProjComplex<F>, n: &ModuleComplex<F>) -> Result<Graded> {
    Ok(HomComplex::new(p, n)?.cohomology())
}

/// `Ext(X, Y)` for projective complexes.
pub fn ext_proj<F: Field>(x: &ProjComplex<F>, y: &ProjComplex<F>) -> Result<Graded> {
    ext(x, &y.to_module_complex())
}

/// Cocycle representatives of `H^n Hom(X, Y)` as chain maps `X → Y[n]`.
pub fn ext_basis_maps<F: Field>(
    x: &ProjComplex<F>,
    y: &ProjComplex<F>,
) -> Result<Vec<(i64, ChainMap<F>)>> {
    let h = HomComplex::new(x, &y.to_module_complex())?;
    let mut out = Vec::new();
    for deg in h.complex.lo()..=h.complex.hi() {
        if h.complex.dim(deg) == 0 {
            continue;
        }
        let basis = h.complex.cohomology_basis(deg);
        for z in &basis.reps {
            out.push((deg, h.to_chain_map(deg, z, x, y)));
        }
    }
    Ok(out)
}
