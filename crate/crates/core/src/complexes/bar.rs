use std::collections::HashMap;

use super::algmatrix::AlgMatrix;
use super::proj::ProjComplex;
use super::vector::VectorComplex;
use crate::algebra::Algebra;
use crate::field::Field;
use crate::linalg::{Matrix, SparseVec};
use crate::module::Enveloping;

/// Composable chains `(a_1, …, a_n)` of radical basis elements with
/// `source(a_i) = target(a_{i+1})`, for `n = 0..=max`. Length-0 chains are
/// represented per vertex.
fn chains<F: Field>(a: &Algebra<F>, max: usize) -> Vec<Vec<Vec<usize>>> {
    let rad: Vec<usize> = (0..a.dim()).filter(|&b| a.is_radical(b)).collect();
    let mut out = vec![Vec::new(); max + 1];
    if max >= 1 {
        out[1] = rad.iter().map(|&b| vec![b]).collect();
    }
    for n in 2..=max {
        let mut next = Vec::new();
        for c in &out[n - 1] {
            let s = a.basis()[*c.last().unwrap()].source;
            for &b in &rad {
                if a.basis()[b].target == s {
                    let mut c2 = c.clone();
                    c2.push(b);
                    next.push(c2);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        out[n] = next;
    }
    out
}

/// Left and right vertex of a chain.
fn ends<F: Field>(a: &Algebra<F>, c: &[usize]) -> (usize, usize) {
    (a.basis()[c[0]].target, a.basis()[*c.last().unwrap()].source)
}

/// The bar resolution of `A` relative to the vertex idempotents, as a
/// complex of projective `A^e`-modules in degrees `−n_max..0`. The summand
/// for a chain `(a_1..a_n)` is `A e_{t(a_1)} ⊗ e_{s(a_n)} A`.
pub fn bar_resolution<F: Field>(env: &Enveloping<F>, n_max: usize) -> ProjComplex<F> {
    let a = &env.base;
    let nv = a.num_vertices();
    let ch = chains(a, n_max);
    let top = (1..=n_max).rev().find(|&n| !ch[n].is_empty()).unwrap_or(0);
    let index: Vec<HashMap<Vec<usize>, usize>> = ch
        .iter()
        .map(|l| l.iter().enumerate().map(|(k, c)| (c.clone(), k)).collect())
        .collect();
    let e = |v: usize| SparseVec::unit(a.idempotent(v));
    let mut terms: Vec<Vec<usize>> = Vec::new();
    let mut diffs = Vec::new();
    for n in (0..=top).rev() {
        if n == 0 {
            terms.push((0..nv).map(|v| env.vertex(v, v)).collect());
            break;
        }
        terms.push(
            ch[n]
                .iter()
                .map(|c| {
                    let (l, r) = ends(a, c);
                    env.vertex(l, r)
                })
                .collect(),
        );
        let cols = if n == 1 { nv } else { ch[n - 1].len() };
        let mut d = AlgMatrix::zeros(ch[n].len(), cols);
        let minus = F::one().neg();
        for (row, c) in ch[n].iter().enumerate() {
            let (l, r) = ends(a, c);
            let sgn_n = if n % 2 == 0 { F::one() } else { minus.clone() };
            // i = 0: a_1 ⊗ e
            let first = env.pure(&SparseVec::unit(c[0]), &e(r));
            let col0 = if n == 1 {
                a.basis()[c[0]].source
            } else {
                index[n - 1][&c[1..].to_vec()]
            };
            d.add_to(row, col0, &first);
            // i = n: (−1)^n e ⊗ a_n
            let last = env.pure(&e(l), &SparseVec::unit(c[n - 1])).scale(&sgn_n);
            let coln = if n == 1 {
                a.basis()[c[0]].target
            } else {
                index[n - 1][&c[..n - 1].to_vec()]
            };
            d.add_to(row, coln, &last);
            // inner contractions
            for i in 1..n {
                let sg = if i % 2 == 0 { F::one() } else { minus.clone() };
                for (z, coef) in a.mul_basis(c[i - 1], c[i]).iter() {
                    let mut c2 = c[..i - 1].to_vec();
                    c2.push(z);
                    c2.extend_from_slice(&c[i + 1..]);
                    let col = index[n - 1][&c2];
                    d.add_to(row, col, &env.pure(&e(l), &e(r)).scale(&coef.mul(&sg)));
                }
            }
        }
        diffs.push(d);
    }
    ProjComplex::new(env.env.clone(), -(top as i64), terms, diffs)
        .expect("bar resolution is a complex")
}

/// The relative Hochschild chain complex in degrees `−n_max..0`:
/// `C_n` has basis `(a_0, a_1, …, a_n)` with `a_0 ∈ e_{s(a_n)} A e_{t(a_1)}`.
pub fn cyclic_chain_complex<F: Field>(a: &Algebra<F>, n_max: usize) -> VectorComplex<F> {
    let nv = a.num_vertices();
    let ch = chains(a, n_max);
    // basis of C_n: (a_0, chain index)
    let mut bases: Vec<Vec<(usize, usize)>> = Vec::new();
    for n in 0..=n_max {
        let mut b = Vec::new();
        if n == 0 {
            for v in 0..nv {
                for a0 in a.slice(v, v) {
                    b.push((a0, v));
                }
            }
        } else {
            for (k, c) in ch[n].iter().enumerate() {
                let (l, r) = ends(a, c);
                for a0 in a.slice(l, r) {
                    b.push((a0, k));
                }
            }
        }
        bases.push(b);
    }
    let index: Vec<HashMap<(usize, usize), usize>> = bases
        .iter()
        .map(|l| l.iter().enumerate().map(|(k, x)| (*x, k)).collect())
        .collect();
    let chain_index: Vec<HashMap<Vec<usize>, usize>> = ch
        .iter()
        .map(|l| l.iter().enumerate().map(|(k, c)| (c.clone(), k)).collect())
        .collect();
    let minus = F::one().neg();
    let mut diffs = Vec::new();
    for n in (1..=n_max).rev() {
        let mut cols = Vec::with_capacity(bases[n].len());
        for &(a0, k) in &bases[n] {
            let c = &ch[n][k];
            let mut pairs: Vec<(usize, F)> = Vec::new();
            let key = |x: usize, rest: &[usize]| -> (usize, usize) {
                if rest.is_empty() {
                    (x, a.basis()[x].source)
                } else {
                    (x, chain_index[rest.len()][rest])
                }
            };
            // i = 0: a_0 a_1 ⊗ a_2 …
            for (z, coef) in a.mul_basis(a0, c[0]).iter() {
                pairs.push((index[n - 1][&key(z, &c[1..])], coef.clone()));
            }
            for i in 1..n {
                let sg = if i % 2 == 0 { F::one() } else { minus.clone() };
                for (z, coef) in a.mul_basis(c[i - 1], c[i]).iter() {
                    let mut c2 = c[..i - 1].to_vec();
                    c2.push(z);
                    c2.extend_from_slice(&c[i + 1..]);
                    pairs.push((index[n - 1][&key(a0, &c2)], coef.mul(&sg)));
                }
            }
            let sg = if n % 2 == 0 { F::one() } else { minus.clone() };
            for (z, coef) in a.mul_basis(c[n - 1], a0).iter() {
                pairs.push((index[n - 1][&key(z, &c[..n - 1])], coef.mul(&sg)));
            }
            cols.push(SparseVec::from_pairs(pairs));
        }
        diffs.push(Matrix::from_columns(bases[n - 1].len(), cols));
    }
    let dims = (0..=n_max).rev().map(|n| bases[n].len()).collect();
    VectorComplex::new(-(n_max as i64), dims, diffs).expect("Hochschild chain complex")
}
