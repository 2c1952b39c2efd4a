//! Finite-dimensional basic algebras given by structure constants.
//!
//! Every basis element `b` lies in some `e_t A e_s`; we record `s` as its
//! source and `t` as its target. The product `x·y` means "`y` then `x`".

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Echelon, Matrix, SparseVec};
use crate::quiver::{build_path_algebra, Presentation, Quiver, Relation};

pub type Element<F> = SparseVec<F>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub label: String,
    pub source: usize,
    pub target: usize,
    pub idempotent: bool,
}

#[derive(Clone, Debug)]
pub struct Algebra<F> {
    name: String,
    vertex_names: Vec<String>,
    basis: Vec<BasisElement>,
    idempotents: Vec<usize>,
    table: Vec<SparseVec<F>>,
    local: Vec<Vec<usize>>,
    local_pos: Vec<usize>,
    presentation: Option<Presentation<F>>,
    fingerprint: String,
}

impl<F: Field> PartialEq for Algebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint
    }
}

impl<F: Field> Algebra<F> {
    /// Validates and assembles an algebra from a multiplication table
    /// (`table[i * dim + j] = b_i · b_j`).
    pub fn from_structure(
        name: String,
        vertex_names: Vec<String>,
        basis: Vec<BasisElement>,
        table: Vec<SparseVec<F>>,
        presentation: Option<Presentation<F>>,
    ) -> Result<Self> {
        let dim = basis.len();
        let nv = vertex_names.len();
        if table.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "table has {} entries, expected {}",
                table.len(),
                dim * dim
            )));
        }
        let mut idempotents = vec![usize::MAX; nv];
        for (i, b) in basis.iter().enumerate() {
            if b.source >= nv || b.target >= nv {
                return Err(Error::InvalidQuiver(format!(
                    "basis element {} has an unknown vertex",
                    b.label
                )));
            }
            if b.idempotent {
                if b.source != b.target || idempotents[b.source] != usize::MAX {
                    return Err(Error::InvalidQuiver(format!("bad idempotent {}", b.label)));
                }
                idempotents[b.source] = i;
            }
        }
        if idempotents.contains(&usize::MAX) {
            return Err(Error::InvalidQuiver("missing vertex idempotent".into()));
        }
        for i in 0..dim {
            for j in 0..dim {
                let p = &table[i * dim + j];
                if p.is_zero() {
                    continue;
                }
                if basis[i].source != basis[j].target {
                    return Err(Error::DimensionMismatch(format!(
                        "{}·{} is nonzero but not composable",
                        basis[i].label, basis[j].label
                    )));
                }
                for (k, _) in p.iter() {
                    if k >= dim
                        || basis[k].source != basis[j].source
                        || basis[k].target != basis[i].target
                    {
                        return Err(Error::DimensionMismatch(format!(
                            "{}·{} leaves its vertex slice",
                            basis[i].label, basis[j].label
                        )));
                    }
                }
            }
        }
        let mut local = vec![Vec::new(); nv];
        let mut local_pos = vec![0; dim];
        for (i, b) in basis.iter().enumerate() {
            local_pos[i] = local[b.source].len();
            local[b.source].push(i);
        }
        let mut alg = Algebra {
            name,
            vertex_names,
            basis,
            idempotents,
            table,
            local,
            local_pos,
            presentation,
            fingerprint: String::new(),
        };
        alg.fingerprint = alg.compute_fingerprint();
        Ok(alg)
    }

    fn compute_fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!(
            "{}|{}|{}\n",
            self.spec_string(),
            self.num_vertices(),
            self.dim()
        ));
        for b in &self.basis {
            h.update(format!("{} {} {}\n", b.source, b.target, b.idempotent));
        }
        for (k, p) in self.table.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            h.update(format!("{k}:"));
            for (i, c) in p.iter() {
                h.update(format!("{i}={c},"));
            }
            h.update("\n");
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    fn spec_string(&self) -> String {
        F::spec().to_string()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Stable content hash of the structure constants.
    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn presentation(&self) -> Option<&Presentation<F>> {
        self.presentation.as_ref()
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    /// Basis of `A e_v`: the elements with source `v`.
    pub fn local_basis(&self, v: usize) -> &[usize] {
        &self.local[v]
    }

    /// Position of basis element `b` inside `local_basis(source(b))`.
    pub fn local_position(&self, b: usize) -> usize {
        self.local_pos[b]
    }

    /// Basis of `e_t A e_s`.
    pub fn slice(&self, source: usize, target: usize) -> Vec<usize> {
        self.local[source]
            .iter()
            .copied()
            .filter(|&b| self.basis[b].target == target)
            .collect()
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec<F> {
        &self.table[i * self.dim() + j]
    }

    pub fn multiply(&self, x: &Element<F>, y: &Element<F>) -> Element<F> {
        let mut acc = crate::linalg::Accumulator::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let p = self.mul_basis(i, j);
                if !p.is_zero() {
                    acc.push_scaled(p, &a.mul(b), 0);
                }
            }
        }
        acc.finish()
    }

    pub fn one(&self) -> Element<F> {
        SparseVec::from_pairs(self.idempotents.iter().map(|&i| (i, F::one())).collect())
    }

    pub fn is_radical(&self, b: usize) -> bool {
        !self.basis[b].idempotent
    }

    /// Checks associativity and the unit axioms on basis elements.
    pub fn check_axioms(&self) -> bool {
        let d = self.dim();
        let one = self.one();
        for i in 0..d {
            let e = SparseVec::unit(i);
            if self.multiply(&one, &e) != e || self.multiply(&e, &one) != e {
                return false;
            }
            for j in 0..d {
                let ij = self.mul_basis(i, j).clone();
                for k in 0..d {
                    let left = self.multiply(&ij, &SparseVec::unit(k));
                    let right = self.multiply(&SparseVec::unit(i), self.mul_basis(j, k));
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Structure-constant opposite algebra.
    pub fn opposite(&self) -> Algebra<F> {
        let d = self.dim();
        let basis = self
            .basis
            .iter()
            .map(|b| BasisElement {
                label: if b.idempotent {
                    b.label.clone()
                } else {
                    format!("{}^op", b.label)
                },
                source: b.target,
                target: b.source,
                idempotent: b.idempotent,
            })
            .collect();
        let mut table = vec![SparseVec::new(); d * d];
        for i in 0..d {
            for j in 0..d {
                table[i * d + j] = self.table[j * d + i].clone();
            }
        }
        Algebra::from_structure(
            format!("{}^op", self.name),
            self.vertex_names.clone(),
            basis,
            table,
            None,
        )
        .expect("opposite of a valid algebra")
    }

    /// `a ⊗ b`, basis index `i * dim(b) + j`, vertex index `v * nv(b) + w`.
    pub fn tensor(a: &Algebra<F>, b: &Algebra<F>) -> Algebra<F> {
        let (da, db) = (a.dim(), b.dim());
        let nvb = b.num_vertices();
        let mut vertex_names = Vec::new();
        for v in &a.vertex_names {
            for w in &b.vertex_names {
                vertex_names.push(format!("({v},{w})"));
            }
        }
        let mut basis = Vec::with_capacity(da * db);
        for x in &a.basis {
            for y in &b.basis {
                basis.push(BasisElement {
                    label: format!("{}⊗{}", x.label, y.label),
                    source: x.source * nvb + y.source,
                    target: x.target * nvb + y.target,
                    idempotent: x.idempotent && y.idempotent,
                });
            }
        }
        let d = da * db;
        let mut table = vec![SparseVec::new(); d * d];
        for i in 0..da {
            for k in 0..da {
                let p = a.mul_basis(i, k);
                if p.is_zero() {
                    continue;
                }
                for j in 0..db {
                    for l in 0..db {
                        let q = b.mul_basis(j, l);
                        if q.is_zero() {
                            continue;
                        }
                        let mut pairs = Vec::with_capacity(p.nnz() * q.nnz());
                        for (x, c) in p.iter() {
                            for (y, e) in q.iter() {
                                pairs.push((x * db + y, c.mul(e)));
                            }
                        }
                        table[(i * db + j) * d + k * db + l] = SparseVec::from_pairs(pairs);
                    }
                }
            }
        }
        Algebra::from_structure(
            format!("{}⊗{}", a.name, b.name),
            vertex_names,
            basis,
            table,
            None,
        )
        .expect("tensor of valid algebras")
    }

    /// The enveloping algebra `A ⊗ A^op`.
    pub fn enveloping(&self) -> Algebra<F> {
        Algebra::tensor(self, &self.opposite())
    }

    /// The corner algebra `e A e` for `e` the sum of the given vertices.
    pub fn corner(&self, vertices: &[usize]) -> Algebra<F> {
        let mut vmap = vec![None; self.num_vertices()];
        for (k, &v) in vertices.iter().enumerate() {
            vmap[v] = Some(k);
        }
        let keep: Vec<usize> = (0..self.dim())
            .filter(|&b| {
                vmap[self.basis[b].source].is_some() && vmap[self.basis[b].target].is_some()
            })
            .collect();
        let mut pos = vec![None; self.dim()];
        for (k, &b) in keep.iter().enumerate() {
            pos[b] = Some(k);
        }
        let basis = keep
            .iter()
            .map(|&b| {
                let e = &self.basis[b];
                BasisElement {
                    label: e.label.clone(),
                    source: vmap[e.source].unwrap(),
                    target: vmap[e.target].unwrap(),
                    idempotent: e.idempotent,
                }
            })
            .collect();
        let d = keep.len();
        let mut table = vec![SparseVec::new(); d * d];
        for (x, &i) in keep.iter().enumerate() {
            for (y, &j) in keep.iter().enumerate() {
                table[x * d + y] = self.mul_basis(i, j).remap(|k| pos[k]);
            }
        }
        let names = vertices
            .iter()
            .map(|&v| self.vertex_names[v].clone())
            .collect();
        Algebra::from_structure(
            format!("corner of {}", self.name),
            names,
            basis,
            table,
            None,
        )
        .expect("corner of a valid algebra")
    }

    /// Dimension of the centre.
    pub fn center_dim(&self) -> usize {
        let d = self.dim();
        let mut cols = Vec::with_capacity(d);
        for i in 0..d {
            let mut acc = Vec::new();
            for x in 0..d {
                let diff = self.mul_basis(i, x).sub(self.mul_basis(x, i));
                for (k, c) in diff.iter() {
                    acc.push((x * d + k, c.clone()));
                }
            }
            cols.push(SparseVec::from_pairs(acc));
        }
        d - linalg::rank(&Matrix::from_columns(d * d, cols))
    }

    /// Dimension of `A / [A, A]`.
    pub fn cocenter_dim(&self) -> usize {
        let d = self.dim();
        let mut e = Echelon::new(false);
        for i in 0..d {
            for j in (i + 1)..d {
                let c = self.mul_basis(i, j).sub(self.mul_basis(j, i));
                if !c.is_zero() {
                    e.insert(&c);
                }
            }
        }
        d - e.rank()
    }

    /// Basis (as elements) of `rad^k`.
    pub fn radical_power(&self, k: usize) -> Vec<Element<F>> {
        let rad: Vec<Element<F>> = (0..self.dim())
            .filter(|&b| self.is_radical(b))
            .map(SparseVec::unit)
            .collect();
        if k == 0 {
            return (0..self.dim()).map(SparseVec::unit).collect();
        }
        let mut cur = rad.clone();
        for _ in 1..k {
            let mut e = Echelon::new(false);
            for x in &cur {
                for r in &rad {
                    let p = self.multiply(x, r);
                    if !p.is_zero() {
                        e.insert(&p);
                    }
                }
            }
            cur = e.basis().to_vec();
            if cur.is_empty() {
                break;
            }
        }
        cur
    }

    /// Least `n` with `rad^n = 0`.
    pub fn nilpotency_index(&self) -> usize {
        let mut n = 1;
        while !self.radical_power(n).is_empty() {
            n += 1;
        }
        n
    }

    /// Inverse of `u ∈ e_v A e_v` whose idempotent coefficient is nonzero.
    pub fn local_inverse(&self, u: &Element<F>, v: usize) -> Element<F> {
        let ev = self.idempotent(v);
        let lambda = u.get(ev);
        assert!(!lambda.is_zero(), "unit needs an idempotent coefficient");
        let lambda_inv = lambda.inv();
        // u = λ(e_v − n), u⁻¹ = λ⁻¹ Σ n^k
        let n = SparseVec::unit(ev).sub(&u.scale(&lambda_inv));
        let mut power = SparseVec::unit(ev);
        let mut sum = SparseVec::unit(ev);
        for _ in 0..=self.dim() {
            power = self.multiply(&power, &n);
            if power.is_zero() {
                break;
            }
            sum = sum.add(&power);
        }
        sum.scale(&lambda_inv)
    }

    /// Recovers a quiver with admissible relations and rebuilds the algebra
    /// from it. Arrows span a complement of `rad²` in `rad`.
    pub fn present(&self) -> Result<(Presentation<F>, Algebra<F>)> {
        let nv = self.num_vertices();
        let rad2 = self.radical_power(2);
        let mut rad2_ech = Echelon::new(false);
        for x in &rad2 {
            rad2_ech.insert(x);
        }
        // arrows per vertex pair
        let mut arrows: Vec<(usize, usize, Element<F>)> = Vec::new();
        for s in 0..nv {
            for t in 0..nv {
                let mut ech = rad2_ech.clone();
                for b in self.slice(s, t) {
                    if !self.is_radical(b) {
                        continue;
                    }
                    let e = SparseVec::unit(b);
                    if ech.insert(&e).is_none() {
                        arrows.push((s, t, e));
                    }
                }
            }
        }
        let arrow_spec: Vec<(String, String, String)> = arrows
            .iter()
            .enumerate()
            .map(|(k, (s, t, _))| {
                (
                    format!("a{k}"),
                    self.vertex_names[*s].clone(),
                    self.vertex_names[*t].clone(),
                )
            })
            .collect();
        let quiver = Quiver::new(self.vertex_names.clone(), arrow_spec)?;
        let cap = self.nilpotency_index().max(2);

        // paths of length 2..=cap, grouped by endpoints, with their values
        let mut frontier: Vec<(Vec<usize>, usize, usize, Element<F>)> = arrows
            .iter()
            .enumerate()
            .map(|(k, (s, t, e))| (vec![k], *s, *t, e.clone()))
            .collect();
        let mut long: Vec<(Vec<usize>, usize, usize, Element<F>)> = Vec::new();
        for _ in 1..cap {
            let mut next = Vec::new();
            for (p, s, t, val) in &frontier {
                for (k, (s2, t2, e)) in arrows.iter().enumerate() {
                    if s2 == t {
                        let mut q = p.clone();
                        q.push(k);
                        next.push((q, *s, *t2, self.multiply(e, val)));
                    }
                }
            }
            long.extend(next.iter().cloned());
            frontier = next;
        }
        let mut relations = Vec::new();
        for s in 0..nv {
            for t in 0..nv {
                let group: Vec<&(Vec<usize>, usize, usize, Element<F>)> = long
                    .iter()
                    .filter(|(_, a, b, _)| *a == s && *b == t)
                    .collect();
                if group.is_empty() {
                    continue;
                }
                let m =
                    Matrix::from_columns(self.dim(), group.iter().map(|g| g.3.clone()).collect());
                for kv in linalg::kernel(&m).columns() {
                    let terms = kv
                        .iter()
                        .map(|(i, c)| (c.clone(), group[i].0.clone()))
                        .collect();
                    relations.push(Relation::new(terms));
                }
            }
        }
        let rebuilt = build_path_algebra(&quiver, &relations, Some(cap))?;
        if rebuilt.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "presentation rebuilds dimension {} instead of {}",
                rebuilt.dim(),
                self.dim()
            )));
        }
        Ok((
            Presentation { quiver, relations },
            rebuilt.with_name(self.name.clone()),
        ))
    }

    /// Element from a basis label.
    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    /// Checks that `A` is triangular with respect to the vertex order.
    pub fn directed_order(&self) -> bool {
        self.basis
            .iter()
            .all(|b| b.idempotent || b.source < b.target)
    }
}
