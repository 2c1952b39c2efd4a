//! Independent oracles for integration tests.
//!
//! The absolute bar complexes below are built directly from the structure
//! constants, without the vertex-relative machinery of the library. They are
//! normalized (tensor factors taken in `A / k·1`), which keeps them small
//! enough for algebras of dimension at most six.

#![allow(dead_code)]

use sodhh::linalg::{rank, Matrix, SparseVec};
use sodhh::{Algebra, Field};

/// `A / k·1` with a chosen basis: every basis element except the idempotent
/// of vertex 0.
struct Normalized<'a, F> {
    a: &'a Algebra<F>,
    omitted: usize,
    lift: Vec<usize>,
    index: Vec<Option<usize>>,
}

impl<'a, F: Field> Normalized<'a, F> {
    fn new(a: &'a Algebra<F>) -> Self {
        let omitted = a.idempotent(0);
        let lift: Vec<usize> = (0..a.dim()).filter(|&b| b != omitted).collect();
        let mut index = vec![None; a.dim()];
        for (k, &b) in lift.iter().enumerate() {
            index[b] = Some(k);
        }
        Normalized {
            a,
            omitted,
            lift,
            index,
        }
    }

    fn dim(&self) -> usize {
        self.lift.len()
    }

    /// Coordinates of the class of `x` in `A / k·1`.
    fn project(&self, x: &SparseVec<F>) -> Vec<(usize, F)> {
        let c = x.get(self.omitted);
        let mut out: Vec<(usize, F)> = Vec::new();
        for (b, v) in x.iter() {
            if let Some(k) = self.index[b] {
                out.push((k, v.clone()));
            }
        }
        if !c.is_zero() {
            // e_0 = 1 - Σ_{v>0} e_v
            for v in 1..self.a.num_vertices() {
                let k = self.index[self.a.idempotent(v)].unwrap();
                out.push((k, c.neg()));
            }
        }
        SparseVec::from_pairs(out)
            .iter()
            .map(|(k, v)| (k, v.clone()))
            .collect()
    }

    fn product(&self, x: usize, y: usize) -> &SparseVec<F> {
        self.a.mul_basis(self.lift[x], self.lift[y])
    }
}

fn encode(t: &[usize], m: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * m + x)
}

fn decode(mut code: usize, n: usize, m: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    for slot in t.iter_mut().rev() {
        *slot = code % m;
        code /= m;
    }
    t
}

fn sign<F: Field>(i: usize) -> F {
    if i.is_multiple_of(2) {
        F::one()
    } else {
        F::one().neg()
    }
}

/// Coboundary `C^n → C^{n+1}` with `C^n = Hom(Ā^{⊗n}, A)`; a cochain
/// coordinate `(t, k)` is stored at `encode(t) * dim A + k`.
fn coboundary<F: Field>(bar: &Normalized<F>, n: usize) -> Matrix<F> {
    let a = bar.a;
    let d = a.dim();
    let m = bar.dim();
    let rows = m.pow(n as u32 + 1) * d;
    let mut cols = Vec::with_capacity(m.pow(n as u32) * d);
    for code in 0..m.pow(n as u32) {
        let t = decode(code, n, m);
        for k in 0..d {
            let mut out: Vec<(usize, F)> = Vec::new();
            let mut put = |s: &[usize], v: &SparseVec<F>, c: F| {
                let base = encode(s, m) * d;
                for (j, x) in v.iter() {
                    out.push((base + j, x.mul(&c)));
                }
            };
            for x in 0..m {
                let mut s = vec![x];
                s.extend_from_slice(&t);
                put(&s, a.mul_basis(bar.lift[x], k), F::one());
                let mut s = t.clone();
                s.push(x);
                put(&s, a.mul_basis(k, bar.lift[x]), sign(n + 1));
            }
            for i in 0..n {
                for x in 0..m {
                    for y in 0..m {
                        for (j, c) in bar.project(bar.product(x, y)) {
                            if j != t[i] {
                                continue;
                            }
                            let mut s = t[..i].to_vec();
                            s.push(x);
                            s.push(y);
                            s.extend_from_slice(&t[i + 1..]);
                            put(&s, &SparseVec::unit(k), c.mul(&sign(i + 1)));
                        }
                    }
                }
            }
            cols.push(SparseVec::from_pairs(out));
        }
    }
    Matrix::from_columns(rows, cols)
}

/// Boundary `C_n → C_{n−1}` with `C_n = A ⊗ Ā^{⊗n}`; a chain `(k, t)` is
/// stored at `k * m^n + encode(t)`.
fn boundary<F: Field>(bar: &Normalized<F>, n: usize) -> Matrix<F> {
    let a = bar.a;
    let d = a.dim();
    let m = bar.dim();
    let low = m.pow(n as u32 - 1);
    let rows = d * low;
    let mut cols = Vec::with_capacity(d * m.pow(n as u32));
    for k in 0..d {
        for code in 0..m.pow(n as u32) {
            let t = decode(code, n, m);
            let mut out: Vec<(usize, F)> = Vec::new();
            // a0 a1 ⊗ a2 … an
            let tail = encode(&t[1..], m);
            for (j, c) in a.mul_basis(k, bar.lift[t[0]]).iter() {
                out.push((j * low + tail, c.clone()));
            }
            for i in 1..n {
                for (j, c) in bar.project(bar.product(t[i - 1], t[i])) {
                    let mut s = t[..i - 1].to_vec();
                    s.push(j);
                    s.extend_from_slice(&t[i + 1..]);
                    out.push((k * low + encode(&s, m), c.mul(&sign(i))));
                }
            }
            // an a0 ⊗ a1 … a_{n−1}
            let head = encode(&t[..n - 1], m);
            for (j, c) in a.mul_basis(bar.lift[t[n - 1]], k).iter() {
                out.push((j * low + head, c.mul(&sign(n))));
            }
            cols.push(SparseVec::from_pairs(out));
        }
    }
    Matrix::from_columns(rows, cols)
}

/// `dim HH^n(A)` for `n ≤ n_max` from the normalized absolute bar complex.
pub fn absolute_hh_cohomology<F: Field>(a: &Algebra<F>, n_max: usize) -> Vec<usize> {
    let bar = Normalized::new(a);
    let ranks: Vec<usize> = (0..=n_max).map(|n| rank(&coboundary(&bar, n))).collect();
    (0..=n_max)
        .map(|n| {
            let cochains = bar.dim().pow(n as u32) * a.dim();
            let before = if n == 0 { 0 } else { ranks[n - 1] };
            cochains - ranks[n] - before
        })
        .collect()
}

/// `dim HH_n(A)` for `n ≤ n_max` from the normalized absolute Hochschild
/// chain complex.
pub fn absolute_hh_homology<F: Field>(a: &Algebra<F>, n_max: usize) -> Vec<usize> {
    let bar = Normalized::new(a);
    // ranks[n] = rank of C_n → C_{n−1}
    let mut ranks = vec![0usize; n_max + 2];
    for (n, r) in ranks.iter_mut().enumerate().skip(1) {
        *r = rank(&boundary(&bar, n));
    }
    (0..=n_max)
        .map(|n| a.dim() * bar.dim().pow(n as u32) - ranks[n] - ranks[n + 1])
        .collect()
}

/// Rank over `F_p` by plain dense row reduction on residues.
pub fn naive_rank_mod(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x % p).collect())
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let inv = |x: u64| (1..p).find(|y| x * y % p == 1).unwrap();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let s = inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = *x * s % p;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + p * p - f * m[r][j] % p) % p;
                }
            }
        }
        r += 1;
    }
    r
}
