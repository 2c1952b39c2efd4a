use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::algmatrix::AlgMatrix;
use super::modcomplex::ModuleComplex;
use super::vector::{Graded, VectorComplex};
use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, SparseVec};
use crate::module::Module;

/// Bounded complex of finitely generated projective left modules. The term
/// in degree `p` is `⊕_r Λ e_{terms[p][r]}`; `diffs[k]` leaves degree `lo + k`.
#[derive(Clone, Debug)]
pub struct ProjComplex<F> {
    algebra: Arc<Algebra<F>>,
    lo: i64,
    terms: Vec<Vec<usize>>,
    diffs: Vec<AlgMatrix<F>>,
}

/// Projective multiplicities: degree → count of `Λe_v` per vertex.
pub type Multiplicities = BTreeMap<i64, Vec<usize>>;

fn sign<F: Field>(n: i64) -> F {
    if n.rem_euclid(2) == 0 {
        F::one()
    } else {
        F::one().neg()
    }
}

/// The linear map underlying right multiplication by `m` from
/// `⊕ Λe_{src}` to `⊕ Λe_{tgt}` in local-basis coordinates.
pub fn linear_map<F: Field>(
    alg: &Algebra<F>,
    src: &[usize],
    tgt: &[usize],
    m: &AlgMatrix<F>,
) -> Matrix<F> {
    let mut tgt_off = Vec::with_capacity(tgt.len());
    let mut rows = 0;
    for &w in tgt {
        tgt_off.push(rows);
        rows += alg.local_basis(w).len();
    }
    let mut cols = Vec::new();
    for (r, &v) in src.iter().enumerate() {
        for &b in alg.local_basis(v) {
            let mut pairs = Vec::new();
            for (c, off) in tgt_off.iter().enumerate() {
                let e = m.get(r, c);
                if e.is_zero() {
                    continue;
                }
                for (z, x) in alg.multiply(&SparseVec::unit(b), e).iter() {
                    pairs.push((off + alg.local_position(z), x.clone()));
                }
            }
            cols.push(SparseVec::from_pairs(pairs));
        }
    }
    Matrix::from_columns(rows, cols)
}

impl<F: Field> ProjComplex<F> {
    pub fn new(
        algebra: Arc<Algebra<F>>,
        lo: i64,
        terms: Vec<Vec<usize>>,
        diffs: Vec<AlgMatrix<F>>,
    ) -> Result<Self> {
        let c = Self::new_unchecked(algebra, lo, terms, diffs);
        c.validate()?;
        Ok(c)
    }

    fn new_unchecked(
        algebra: Arc<Algebra<F>>,
        lo: i64,
        terms: Vec<Vec<usize>>,
        diffs: Vec<AlgMatrix<F>>,
    ) -> Self {
        let mut c = ProjComplex {
            algebra,
            lo,
            terms,
            diffs,
        };
        c.trim();
        c
    }

    fn validate(&self) -> Result<()> {
        let a = &self.algebra;
        if self.diffs.len() + 1 != self.terms.len().max(1) {
            return Err(Error::InvalidComplex(
                "wrong number of differentials".into(),
            ));
        }
        for (k, d) in self.diffs.iter().enumerate() {
            let (src, tgt) = (&self.terms[k], &self.terms[k + 1]);
            if d.rows() != src.len() || d.cols() != tgt.len() {
                return Err(Error::InvalidComplex(format!(
                    "differential at degree {} has the wrong shape",
                    self.lo + k as i64
                )));
            }
            for (r, &v) in src.iter().enumerate() {
                for (c, &w) in tgt.iter().enumerate() {
                    for (b, _) in d.get(r, c).iter() {
                        let e = &a.basis()[b];
                        if e.target != v || e.source != w {
                            return Err(Error::InvalidComplex(format!(
                                "entry ({r},{c}) in degree {} leaves e_v A e_w",
                                self.lo + k as i64
                            )));
                        }
                    }
                }
            }
        }
        for k in 1..self.diffs.len() {
            if !self.diffs[k - 1].mul(a, &self.diffs[k]).is_zero() {
                return Err(Error::InvalidComplex(format!(
                    "d² ≠ 0 at degree {}",
                    self.lo + k as i64 - 1
                )));
            }
        }
        Ok(())
    }

    /// Drops empty terms at both ends.
    fn trim(&mut self) {
        while self.terms.first().is_some_and(|t| t.is_empty()) {
            self.terms.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        while self.terms.last().is_some_and(|t| t.is_empty()) {
            self.terms.pop();
            self.diffs.pop();
        }
        if self.terms.is_empty() {
            self.lo = 0;
            self.diffs.clear();
        }
    }

    pub fn zero(algebra: Arc<Algebra<F>>) -> Self {
        ProjComplex {
            algebra,
            lo: 0,
            terms: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// `⊕ Λe_v` placed in a single degree.
    pub fn concentrated(algebra: Arc<Algebra<F>>, degree: i64, vertices: Vec<usize>) -> Self {
        Self::new_unchecked(algebra, degree, vec![vertices], Vec::new())
    }

    /// The indecomposable projective `Λe_v` in degree 0.
    pub fn projective(algebra: Arc<Algebra<F>>, v: usize) -> Self {
        Self::concentrated(algebra, 0, vec![v])
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi()
    }

    fn index(&self, p: i64) -> Option<usize> {
        let k = p - self.lo;
        (k >= 0 && (k as usize) < self.terms.len()).then_some(k as usize)
    }

    pub fn term(&self, p: i64) -> &[usize] {
        match self.index(p) {
            Some(k) => &self.terms[k],
            None => &[],
        }
    }

    /// Differential leaving degree `p`.
    pub fn diff(&self, p: i64) -> AlgMatrix<F> {
        match self.index(p) {
            Some(k) if k < self.diffs.len() => self.diffs[k].clone(),
            _ => AlgMatrix::zeros(self.term(p).len(), self.term(p + 1).len()),
        }
    }

    pub fn diff_ref(&self, p: i64) -> Option<&AlgMatrix<F>> {
        self.index(p).and_then(|k| self.diffs.get(k))
    }

    /// `X[n]`: term in degree `p` is `X^{p+n}`, differential times `(−1)^n`.
    pub fn shift(&self, n: i64) -> ProjComplex<F> {
        if self.is_zero() {
            return self.clone();
        }
        let s: F = sign(n);
        ProjComplex {
            algebra: self.algebra.clone(),
            lo: self.lo - n,
            terms: self.terms.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(&s)).collect(),
        }
    }

    pub fn direct_sum(parts: &[ProjComplex<F>]) -> Result<ProjComplex<F>> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidComplex("empty direct sum".into()));
        };
        let alg = first.algebra.clone();
        if parts
            .iter()
            .any(|p| p.algebra.fingerprint() != alg.fingerprint())
        {
            return Err(Error::SideMismatch(
                "direct sum over different algebras".into(),
            ));
        }
        let nonzero: Vec<&ProjComplex<F>> = parts.iter().filter(|p| !p.is_zero()).collect();
        if nonzero.is_empty() {
            return Ok(ProjComplex::zero(alg));
        }
        let lo = nonzero.iter().map(|p| p.lo).min().unwrap();
        let hi = nonzero.iter().map(|p| p.hi()).max().unwrap();
        let mut terms = Vec::new();
        let mut diffs = Vec::new();
        for p in lo..=hi {
            terms.push(
                nonzero
                    .iter()
                    .flat_map(|x| x.term(p).iter().copied())
                    .collect::<Vec<_>>(),
            );
            if p < hi {
                let rows: usize = nonzero.iter().map(|x| x.term(p).len()).sum();
                let cols: usize = nonzero.iter().map(|x| x.term(p + 1).len()).sum();
                let mut d = AlgMatrix::zeros(rows, cols);
                let (mut r0, mut c0) = (0, 0);
                for x in &nonzero {
                    d.put_block(r0, c0, &x.diff(p));
                    r0 += x.term(p).len();
                    c0 += x.term(p + 1).len();
                }
                diffs.push(d);
            }
        }
        Ok(ProjComplex::new_unchecked(alg, lo, terms, diffs))
    }

    /// Number of indecomposable summands per degree and vertex.
    pub fn multiplicities(&self) -> Multiplicities {
        let nv = self.algebra.num_vertices();
        let mut out = Multiplicities::new();
        for p in self.degrees() {
            let mut v = vec![0; nv];
            for &x in self.term(p) {
                v[x] += 1;
            }
            if v.iter().any(|&c| c > 0) {
                out.insert(p, v);
            }
        }
        out
    }

    /// Class in `K_0`, in the basis of indecomposable projectives.
    pub fn k0_class(&self) -> Vec<i64> {
        let mut out = vec![0i64; self.algebra.num_vertices()];
        for p in self.degrees() {
            let s = if p.rem_euclid(2) == 0 { 1 } else { -1 };
            for &x in self.term(p) {
                out[x] += s;
            }
        }
        out
    }

    /// Total number of indecomposable summands.
    pub fn rank(&self) -> usize {
        self.terms.iter().map(|t| t.len()).sum()
    }

    /// The underlying complex of vector spaces.
    pub fn underlying(&self) -> VectorComplex<F> {
        if self.is_zero() {
            return VectorComplex::zero();
        }
        let a = &self.algebra;
        let dims = self
            .terms
            .iter()
            .map(|t| t.iter().map(|&v| a.local_basis(v).len()).sum())
            .collect();
        let diffs = (0..self.diffs.len())
            .map(|k| linear_map(a, &self.terms[k], &self.terms[k + 1], &self.diffs[k]))
            .collect();
        VectorComplex::new(self.lo, dims, diffs).expect("underlying complex of a valid complex")
    }

    /// Cohomology of the underlying complex of vector spaces.
    pub fn cohomology(&self) -> Graded {
        self.underlying().cohomology()
    }

    pub fn to_module_complex(&self) -> ModuleComplex<F> {
        if self.is_zero() {
            return ModuleComplex::zero(self.algebra.clone());
        }
        let v = self.underlying();
        let modules = self
            .terms
            .iter()
            .map(|t| Module::projective(self.algebra.clone(), t))
            .collect();
        let diffs = (0..self.diffs.len())
            .map(|k| v.diff(self.lo + k as i64))
            .collect();
        ModuleComplex::new_unchecked(self.algebra.clone(), self.lo, modules, diffs)
    }

    /// Mapping cone of `f: X → Y`, with `Cone^p = Y^p ⊕ X^{p+1}`.
    pub fn cone(f: &ChainMap<F>) -> ProjComplex<F> {
        let (x, y) = (&f.source, &f.target);
        let alg = y.algebra.clone();
        if x.is_zero() && y.is_zero() {
            return ProjComplex::zero(alg);
        }
        let lo = match (x.is_zero(), y.is_zero()) {
            (true, _) => y.lo,
            (_, true) => x.lo - 1,
            _ => y.lo.min(x.lo - 1),
        };
        let hi = match (x.is_zero(), y.is_zero()) {
            (true, _) => y.hi(),
            (_, true) => x.hi() - 1,
            _ => y.hi().max(x.hi() - 1),
        };
        let minus: F = F::one().neg();
        let mut terms = Vec::new();
        let mut diffs = Vec::new();
        for p in lo..=hi {
            let mut t = y.term(p).to_vec();
            t.extend_from_slice(x.term(p + 1));
            terms.push(t);
            if p < hi {
                let (ny, nx) = (y.term(p).len(), x.term(p + 1).len());
                let (ny1, nx1) = (y.term(p + 1).len(), x.term(p + 2).len());
                let mut d = AlgMatrix::zeros(ny + nx, ny1 + nx1);
                d.put_block(0, 0, &y.diff(p));
                d.put_block(ny, 0, &f.at(p + 1));
                d.put_block(ny, ny1, &x.diff(p + 1).scale(&minus));
                diffs.push(d);
            }
        }
        let c = ProjComplex::new_unchecked(alg, lo, terms, diffs);
        debug_assert!(c.validate().is_ok(), "cone of a chain map is a complex");
        c
    }

    /// Removes contractible summands `Λe_v --unit--> Λe_v` until every
    /// differential entry lies in the radical.
    pub fn minimalize(&self) -> ProjComplex<F> {
        let a = self.algebra.clone();
        let nk = self.diffs.len();
        let terms = &self.terms;
        // sparse rows and column supports of every differential
        let mut rows: Vec<Vec<BTreeMap<usize, Element<F>>>> = Vec::with_capacity(nk);
        let mut cols: Vec<Vec<BTreeSet<usize>>> = Vec::with_capacity(nk);
        let mut work = Vec::new();
        let is_unit = |k: usize, r: usize, c: usize, e: &Element<F>| {
            let v = terms[k][r];
            v == terms[k + 1][c] && !e.get(a.idempotent(v)).is_zero()
        };
        for (k, d) in self.diffs.iter().enumerate() {
            let mut rk = vec![BTreeMap::new(); d.rows()];
            let mut ck = vec![BTreeSet::new(); d.cols()];
            for r in 0..d.rows() {
                for c in 0..d.cols() {
                    let e = d.get(r, c);
                    if !e.is_zero() {
                        if is_unit(k, r, c, e) {
                            work.push((k, r, c));
                        }
                        rk[r].insert(c, e.clone());
                        ck[c].insert(r);
                    }
                }
            }
            rows.push(rk);
            cols.push(ck);
        }
        let mut alive: Vec<Vec<bool>> = terms.iter().map(|t| vec![true; t.len()]).collect();
        while let Some((k, i, j)) = work.pop() {
            if !alive[k][i] || !alive[k + 1][j] {
                continue;
            }
            let Some(u) = rows[k][i].get(&j) else {
                continue;
            };
            if !is_unit(k, i, j, u) {
                continue;
            }
            let u_inv = a.local_inverse(u, terms[k][i]);
            let row_i: Vec<(usize, Element<F>)> = rows[k][i]
                .iter()
                .filter(|&(&c, _)| c != j)
                .map(|(&c, e)| (c, e.clone()))
                .collect();
            let col_j: Vec<usize> = cols[k][j].iter().copied().filter(|&r| r != i).collect();
            for r in col_j {
                let left = a.multiply(&rows[k][r][&j], &u_inv);
                if left.is_zero() {
                    continue;
                }
                for (c, x) in &row_i {
                    let prod = a.multiply(&left, x);
                    if prod.is_zero() {
                        continue;
                    }
                    let new = rows[k][r]
                        .get(c)
                        .map_or_else(|| prod.neg(), |e| e.sub(&prod));
                    if new.is_zero() {
                        rows[k][r].remove(c);
                        cols[k][*c].remove(&r);
                    } else {
                        if is_unit(k, r, *c, &new) {
                            work.push((k, r, *c));
                        }
                        rows[k][r].insert(*c, new);
                        cols[k][*c].insert(r);
                    }
                }
            }
            for c in std::mem::take(&mut rows[k][i]).into_keys() {
                cols[k][c].remove(&i);
            }
            for r in std::mem::take(&mut cols[k][j]) {
                rows[k][r].remove(&j);
            }
            alive[k][i] = false;
            alive[k + 1][j] = false;
            if k > 0 {
                for r in std::mem::take(&mut cols[k - 1][i]) {
                    rows[k - 1][r].remove(&i);
                }
            }
            if k + 1 < nk {
                for c in std::mem::take(&mut rows[k + 1][j]).into_keys() {
                    cols[k + 1][c].remove(&j);
                }
            }
        }
        // compact the surviving summands
        let index: Vec<Vec<Option<usize>>> = alive
            .iter()
            .map(|al| {
                let mut n = 0;
                al.iter()
                    .map(|&x| {
                        x.then(|| {
                            n += 1;
                            n - 1
                        })
                    })
                    .collect()
            })
            .collect();
        let new_terms: Vec<Vec<usize>> = terms
            .iter()
            .zip(&alive)
            .map(|(t, al)| {
                t.iter()
                    .zip(al)
                    .filter(|(_, &x)| x)
                    .map(|(&v, _)| v)
                    .collect()
            })
            .collect();
        let mut new_diffs = Vec::with_capacity(nk);
        for k in 0..nk {
            let mut d = AlgMatrix::zeros(new_terms[k].len(), new_terms[k + 1].len());
            for (r, row) in rows[k].iter_mut().enumerate() {
                let Some(nr) = index[k][r] else { continue };
                for (c, e) in std::mem::take(row) {
                    if let Some(nc) = index[k + 1][c] {
                        d.set(nr, nc, e);
                    }
                }
            }
            new_diffs.push(d);
        }
        ProjComplex::new_unchecked(a.clone(), self.lo, new_terms, new_diffs)
    }

    /// Whether every differential entry lies in the radical.
    pub fn is_minimal(&self) -> bool {
        let a = &self.algebra;
        self.diffs.iter().enumerate().all(|(k, d)| {
            self.terms[k].iter().enumerate().all(|(i, &v)| {
                self.terms[k + 1]
                    .iter()
                    .enumerate()
                    .all(|(j, &w)| v != w || d.get(i, j).get(a.idempotent(v)).is_zero())
            })
        })
    }

    /// `V ⊗_k X` for graded multiplicities `V`: `⊕_n X[−n]^{V_n}`.
    pub fn tensor_graded(&self, v: &Graded) -> Result<ProjComplex<F>> {
        let mut parts = vec![ProjComplex::zero(self.algebra.clone())];
        for (&n, &count) in v {
            for _ in 0..count {
                parts.push(self.shift(-n));
            }
        }
        ProjComplex::direct_sum(&parts)
    }

    /// `Hom_Λ(X, Λ)`, a complex of projectives over `Λ^op` in degrees
    /// `−hi..−lo`.
    pub fn dual(&self, op: Arc<Algebra<F>>) -> Result<ProjComplex<F>> {
        if op.dim() != self.algebra.dim() || op.num_vertices() != self.algebra.num_vertices() {
            return Err(Error::SideMismatch(
                "dual requires the opposite algebra".into(),
            ));
        }
        if self.is_zero() {
            return Ok(ProjComplex::zero(op));
        }
        let n = self.terms.len();
        let terms: Vec<Vec<usize>> = (0..n).rev().map(|k| self.terms[k].clone()).collect();
        let diffs: Vec<AlgMatrix<F>> = (0..self.diffs.len())
            .rev()
            .map(|k| self.diffs[k].transpose())
            .collect();
        ProjComplex::new(op, -self.hi(), terms, diffs)
    }

    /// External tensor `X ⊠ Y` over `Λ1 ⊗ Λ2`, with summand `(r, s)` at
    /// vertex `v_r * nv(Λ2) + w_s`.
    pub fn external_tensor(
        x: &ProjComplex<F>,
        y: &ProjComplex<F>,
        target: Arc<Algebra<F>>,
    ) -> Result<ProjComplex<F>> {
        let (a1, a2) = (&x.algebra, &y.algebra);
        if target.dim() != a1.dim() * a2.dim()
            || target.num_vertices() != a1.num_vertices() * a2.num_vertices()
        {
            return Err(Error::SideMismatch(
                "target is not the tensor algebra".into(),
            ));
        }
        if x.is_zero() || y.is_zero() {
            return Ok(ProjComplex::zero(target));
        }
        let nv2 = a2.num_vertices();
        let d2 = a2.dim();
        let kron = |p: &Element<F>, q: &Element<F>| -> Element<F> {
            let mut pairs = Vec::with_capacity(p.nnz() * q.nnz());
            for (i, c) in p.iter() {
                for (j, e) in q.iter() {
                    pairs.push((i * d2 + j, c.mul(e)));
                }
            }
            SparseVec::from_pairs(pairs)
        };
        let lo = x.lo + y.lo;
        let hi = x.hi() + y.hi();
        // layout per total degree: blocks (a, b) with a + b = p
        let layout = |p: i64| -> Vec<(i64, i64, usize)> {
            let mut out = Vec::new();
            let mut off = 0;
            for a in x.degrees() {
                let b = p - a;
                if b < y.lo || b > y.hi() {
                    continue;
                }
                out.push((a, b, off));
                off += x.term(a).len() * y.term(b).len();
            }
            out
        };
        let mut terms = Vec::new();
        let mut diffs = Vec::new();
        for p in lo..=hi {
            let blocks = layout(p);
            let mut t = Vec::new();
            for &(a, b, _) in &blocks {
                for &v in x.term(a) {
                    for &w in y.term(b) {
                        t.push(v * nv2 + w);
                    }
                }
            }
            terms.push(t);
            if p == hi {
                break;
            }
            let next = layout(p + 1);
            let rows: usize = blocks
                .iter()
                .map(|&(a, b, _)| x.term(a).len() * y.term(b).len())
                .sum();
            let cols: usize = next
                .iter()
                .map(|&(a, b, _)| x.term(a).len() * y.term(b).len())
                .sum();
            let mut d = AlgMatrix::zeros(rows, cols);
            let find = |a: i64, b: i64| {
                next.iter()
                    .find(|&&(a2, b2, _)| a2 == a && b2 == b)
                    .map(|&(_, _, o)| o)
            };
            for &(a, b, off) in &blocks {
                let (nx, ny) = (x.term(a).len(), y.term(b).len());
                if let (Some(dx), Some(to)) = (x.diff_ref(a), find(a + 1, b)) {
                    for r in 0..nx {
                        for r2 in 0..x.term(a + 1).len() {
                            let e = dx.get(r, r2);
                            if e.is_zero() {
                                continue;
                            }
                            for s in 0..ny {
                                let id = SparseVec::unit(a2.idempotent(y.term(b)[s]));
                                d.set(off + r * ny + s, to + r2 * ny + s, kron(e, &id));
                            }
                        }
                    }
                }
                if let (Some(dy), Some(to)) = (y.diff_ref(b), find(a, b + 1)) {
                    let sg: F = sign(a);
                    let ny2 = y.term(b + 1).len();
                    for s in 0..ny {
                        for s2 in 0..ny2 {
                            let e = dy.get(s, s2);
                            if e.is_zero() {
                                continue;
                            }
                            for r in 0..nx {
                                let id = SparseVec::unit(a1.idempotent(x.term(a)[r]));
                                d.set(off + r * ny + s, to + r * ny2 + s2, kron(&id, e).scale(&sg));
                            }
                        }
                    }
                }
            }
            diffs.push(d);
        }
        ProjComplex::new(target, lo, terms, diffs)
    }

    /// Replaces the algebra by an identical one (same structure constants).
    pub fn with_algebra(&self, algebra: Arc<Algebra<F>>) -> Result<ProjComplex<F>> {
        if algebra.fingerprint() != self.algebra.fingerprint() {
            return Err(Error::SideMismatch("different algebra".into()));
        }
        Ok(ProjComplex {
            algebra,
            ..self.clone()
        })
    }

    /// Transports the complex along an algebra isomorphism given on basis
    /// indices and vertices.
    pub fn relabel(
        &self,
        algebra: Arc<Algebra<F>>,
        basis: impl Fn(usize) -> usize,
        vertex: impl Fn(usize) -> usize,
    ) -> Result<ProjComplex<F>> {
        if algebra.dim() != self.algebra.dim()
            || algebra.num_vertices() != self.algebra.num_vertices()
        {
            return Err(Error::SideMismatch(
                "relabel requires an isomorphic algebra".into(),
            ));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| t.iter().map(|&v| vertex(v)).collect())
            .collect();
        let diffs = self
            .diffs
            .iter()
            .map(|d| d.map_entries(|x| x.remap(|i| Some(basis(i)))))
            .collect();
        ProjComplex::new(algebra, self.lo, terms, diffs)
    }

    /// Raw parts, for serialization and tests.
    pub fn parts(&self) -> (i64, &[Vec<usize>], &[AlgMatrix<F>]) {
        (self.lo, &self.terms, &self.diffs)
    }
}

/// Degree-0 chain map between projective complexes; `maps[p]` sends
/// `X^p → Y^p` in the right-multiplication convention.
#[derive(Clone, Debug)]
pub struct ChainMap<F> {
    pub source: ProjComplex<F>,
    pub target: ProjComplex<F>,
    maps: BTreeMap<i64, AlgMatrix<F>>,
}

impl<F: Field> ChainMap<F> {
    pub fn new(
        source: ProjComplex<F>,
        target: ProjComplex<F>,
        maps: BTreeMap<i64, AlgMatrix<F>>,
    ) -> Result<Self> {
        let f = ChainMap {
            source,
            target,
            maps,
        };
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        source: ProjComplex<F>,
        target: ProjComplex<F>,
        maps: BTreeMap<i64, AlgMatrix<F>>,
    ) -> Self {
        ChainMap {
            source,
            target,
            maps,
        }
    }

    pub fn zero(source: ProjComplex<F>, target: ProjComplex<F>) -> Self {
        ChainMap {
            source,
            target,
            maps: BTreeMap::new(),
        }
    }

    pub fn identity(x: &ProjComplex<F>) -> Self {
        let a = &x.algebra;
        let maps = x
            .degrees()
            .map(|p| {
                let t = x.term(p);
                let mut m = AlgMatrix::zeros(t.len(), t.len());
                for (r, &v) in t.iter().enumerate() {
                    m.set(r, r, SparseVec::unit(a.idempotent(v)));
                }
                (p, m)
            })
            .collect();
        ChainMap {
            source: x.clone(),
            target: x.clone(),
            maps,
        }
    }

    /// The component in degree `p` (zero if absent).
    pub fn at(&self, p: i64) -> AlgMatrix<F> {
        self.maps.get(&p).cloned().unwrap_or_else(|| {
            AlgMatrix::zeros(self.source.term(p).len(), self.target.term(p).len())
        })
    }

    pub fn validate(&self) -> Result<()> {
        let a = &self.target.algebra;
        if a.fingerprint() != self.source.algebra.fingerprint() {
            return Err(Error::SideMismatch(
                "chain map between different algebras".into(),
            ));
        }
        let lo = self.source.lo.min(self.target.lo) - 1;
        let hi = self.source.hi().max(self.target.hi()) + 1;
        for p in lo..=hi {
            let m = self.at(p);
            if m.rows() != self.source.term(p).len() || m.cols() != self.target.term(p).len() {
                return Err(Error::InvalidComplex(format!(
                    "chain map has the wrong shape in degree {p}"
                )));
            }
            let left = self.source.diff(p).mul(a, &self.at(p + 1));
            let right = m.mul(a, &self.target.diff(p));
            if left != right {
                return Err(Error::InvalidComplex(format!(
                    "chain map does not commute in degree {p}"
                )));
            }
        }
        Ok(())
    }

    /// `(f_k): X → ⊕_k Y_k`.
    pub fn into_sum(source: &ProjComplex<F>, maps: &[ChainMap<F>]) -> Result<ChainMap<F>> {
        let targets: Vec<ProjComplex<F>> = maps.iter().map(|f| f.target.clone()).collect();
        let mut all = targets.clone();
        all.push(ProjComplex::zero(source.algebra.clone()));
        let target = ProjComplex::direct_sum(&all)?;
        let mut out = BTreeMap::new();
        for p in source.degrees() {
            let mut m = AlgMatrix::zeros(source.term(p).len(), target.term(p).len());
            let mut c0 = 0;
            for f in maps {
                m.put_block(0, c0, &f.at(p));
                c0 += f.target.term(p).len();
            }
            out.insert(p, m);
        }
        Ok(ChainMap {
            source: source.clone(),
            target,
            maps: out,
        })
    }

    /// `(f_k): ⊕_k X_k → Y`.
    pub fn from_sum(target: &ProjComplex<F>, maps: &[ChainMap<F>]) -> Result<ChainMap<F>> {
        let mut all: Vec<ProjComplex<F>> = maps.iter().map(|f| f.source.clone()).collect();
        all.push(ProjComplex::zero(target.algebra.clone()));
        let source = ProjComplex::direct_sum(&all)?;
        let mut out = BTreeMap::new();
        for p in source.degrees() {
            let mut m = AlgMatrix::zeros(source.term(p).len(), target.term(p).len());
            let mut r0 = 0;
            for f in maps {
                m.put_block(r0, 0, &f.at(p));
                r0 += f.source.term(p).len();
            }
            out.insert(p, m);
        }
        Ok(ChainMap {
            source,
            target: target.clone(),
            maps: out,
        })
    }

    /// Reads a map `X → Y[n]` as the map `X[−n] → Y`; `y` is `Y`.
    pub fn unshift(&self, n: i64, y: &ProjComplex<F>) -> Result<ChainMap<F>> {
        let maps = self.maps.iter().map(|(&p, m)| (p + n, m.clone())).collect();
        ChainMap::new(self.source.shift(-n), y.clone(), maps)
    }

    /// Composition "self then g".
    pub fn then(&self, g: &ChainMap<F>) -> ChainMap<F> {
        let a = &self.target.algebra;
        let maps = self
            .source
            .degrees()
            .map(|p| (p, self.at(p).mul(a, &g.at(p))))
            .collect();
        ChainMap {
            source: self.source.clone(),
            target: g.target.clone(),
            maps,
        }
    }
}
