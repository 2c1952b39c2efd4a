//! Tensor products over `A` involving bimodules and bimodule complexes.
//! `A^e`-vertices are pairs `(left, right)` with index `left * nv + right`.

use std::collections::HashMap;
use std::sync::Arc;

use super::algmatrix::AlgMatrix;
use super::modcomplex::ModuleComplex;
use super::proj::ProjComplex;
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, SparseVec};
use crate::module::{left_regular, right_regular, Action, Enveloping, Module};

fn check_env<F: Field>(env: &Enveloping<F>, alg: &Algebra<F>, what: &str) -> Result<()> {
    if alg.fingerprint() != env.env.fingerprint() {
        return Err(Error::SideMismatch(format!(
            "{what} is not over the enveloping algebra"
        )));
    }
    Ok(())
}

fn sign<F: Field>(n: i64) -> F {
    if n.rem_euclid(2) == 0 {
        F::one()
    } else {
        F::one().neg()
    }
}

/// Splits an `A^e` element into its pure terms `(coef, a_i, a_j)` meaning
/// `coef · a_i ⊗ a_j^op`.
fn pure_terms<F: Field>(env: &Enveloping<F>, m: &SparseVec<F>) -> Vec<(F, usize, usize)> {
    let d = env.base.dim();
    m.iter().map(|(k, c)| (c.clone(), k / d, k % d)).collect()
}

/// `P ⊗_A N` for a complex of projective bimodules `P` and a bimodule `N`:
/// the summand `Ae_v ⊗ e_wA` becomes `Ae_v ⊗ e_w N`.
pub fn tensor_right_module<F: Field>(
    env: &Enveloping<F>,
    p: &ProjComplex<F>,
    n: &Module<F>,
) -> Result<ModuleComplex<F>> {
    check_env(env, p.algebra(), "kernel")?;
    check_env(env, n.algebra(), "bimodule")?;
    let (nl, nr) = n
        .commuting_parts()
        .ok_or_else(|| Error::SideMismatch("coefficient is not a bimodule".into()))?;
    let a = &env.base;
    let nv = env.nv();
    if p.is_zero() {
        return Ok(ModuleComplex::zero(env.env.clone()));
    }
    let lr = left_regular(a);
    // per degree: list of (x, n) pairs
    let layout = |q: i64| -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (r, &vw) in p.term(q).iter().enumerate() {
            let (v, w) = (vw / nv, vw % nv);
            for &x in a.local_basis(v) {
                for y in 0..n.dim() {
                    if n.vertex_of()[y] / nv == w {
                        out.push((r, x, y));
                    }
                }
            }
        }
        out
    };
    let summand_ranges = |q: i64| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut o = 0;
        for &vw in p.term(q) {
            let (v, w) = (vw / nv, vw % nv);
            let len =
                a.local_basis(v).len() * n.vertex_of().iter().filter(|&&t| t / nv == w).count();
            out.push((o, len));
            o += len;
        }
        out
    };
    let mut modules = Vec::new();
    let mut diffs = Vec::new();
    for q in p.degrees() {
        let lay = layout(q);
        let pos: HashMap<(usize, usize, usize), usize> =
            lay.iter().enumerate().map(|(k, &rxy)| (rxy, k)).collect();
        let dim = lay.len();
        let vertex_of: Vec<usize> = lay
            .iter()
            .map(|&(_, x, y)| a.basis()[x].target * nv + n.vertex_of()[y] % nv)
            .collect();
        let first: Vec<Matrix<F>> = (0..a.dim())
            .map(|i| {
                let cols = lay
                    .iter()
                    .map(|&(r, x, y)| {
                        SparseVec::from_pairs(
                            lr[i]
                                .column(x)
                                .iter()
                                .filter_map(|(z, c)| pos.get(&(r, z, y)).map(|&k| (k, c.clone())))
                                .collect(),
                        )
                    })
                    .collect();
                Matrix::from_columns(dim, cols)
            })
            .collect();
        let second: Vec<Matrix<F>> = (0..a.dim())
            .map(|j| {
                let cols = lay
                    .iter()
                    .map(|&(r, x, y)| {
                        SparseVec::from_pairs(
                            nr[j]
                                .column(y)
                                .iter()
                                .filter_map(|(z, c)| pos.get(&(r, x, z)).map(|&k| (k, c.clone())))
                                .collect(),
                        )
                    })
                    .collect();
                Matrix::from_columns(dim, cols)
            })
            .collect();
        modules.push(Module::new(
            env.env.clone(),
            vertex_of,
            Action::Commuting { first, second },
        )?);
        if q < p.hi() {
            let d = p.diff(q);
            let next = layout(q + 1);
            let npos: HashMap<(usize, usize, usize), usize> =
                next.iter().enumerate().map(|(k, &rxy)| (rxy, k)).collect();
            let src_ranges = summand_ranges(q);
            let mut cols = vec![SparseVec::new(); dim];
            for (r, &(o, len)) in src_ranges.iter().enumerate() {
                for c in 0..d.cols() {
                    let m = d.get(r, c);
                    for (coef, ai, bj) in pure_terms(env, m) {
                        for k in o..o + len {
                            let (_, x, y) = lay[k];
                            let xa = a.mul_basis(x, ai);
                            if xa.is_zero() {
                                continue;
                            }
                            let by = nl[bj].column(y);
                            let mut pairs = Vec::new();
                            for (z, c1) in xa.iter() {
                                for (t, c2) in by.iter() {
                                    if let Some(&kk) = npos.get(&(c, z, t)) {
                                        pairs.push((kk, c1.mul(c2).mul(&coef)));
                                    }
                                }
                            }
                            cols[k] = cols[k].add(&SparseVec::from_pairs(pairs));
                        }
                    }
                }
            }
            diffs.push(Matrix::from_columns(next.len(), cols));
        }
    }
    ModuleComplex::new(env.env.clone(), p.lo(), modules, diffs)
}

/// `N ⊗_A P`: the summand `Ae_v ⊗ e_wA` becomes `N e_v ⊗ e_w A`.
pub fn tensor_left_module<F: Field>(
    env: &Enveloping<F>,
    n: &Module<F>,
    p: &ProjComplex<F>,
) -> Result<ModuleComplex<F>> {
    check_env(env, p.algebra(), "kernel")?;
    check_env(env, n.algebra(), "bimodule")?;
    let (nl_all, nr_all) = n
        .commuting_parts()
        .ok_or_else(|| Error::SideMismatch("coefficient is not a bimodule".into()))?;
    let a = &env.base;
    let nv = env.nv();
    if p.is_zero() {
        return Ok(ModuleComplex::zero(env.env.clone()));
    }
    let rr = right_regular(a);
    // e_w A: elements with target w
    let right_local =
        |w: usize| -> Vec<usize> { (0..a.dim()).filter(|&b| a.basis()[b].target == w).collect() };
    let layout = |q: i64| -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (r, &vw) in p.term(q).iter().enumerate() {
            let (v, w) = (vw / nv, vw % nv);
            for y in 0..n.dim() {
                if n.vertex_of()[y] % nv == v {
                    for &x in &right_local(w) {
                        out.push((r, y, x));
                    }
                }
            }
        }
        out
    };
    let summand_ranges = |q: i64| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut o = 0;
        for &vw in p.term(q) {
            let (v, w) = (vw / nv, vw % nv);
            let len = right_local(w).len() * n.vertex_of().iter().filter(|&&t| t % nv == v).count();
            out.push((o, len));
            o += len;
        }
        out
    };
    let mut modules = Vec::new();
    let mut diffs = Vec::new();
    for q in p.degrees() {
        let lay = layout(q);
        let pos: HashMap<(usize, usize, usize), usize> =
            lay.iter().enumerate().map(|(k, &ryx)| (ryx, k)).collect();
        let dim = lay.len();
        let vertex_of: Vec<usize> = lay
            .iter()
            .map(|&(_, y, x)| (n.vertex_of()[y] / nv) * nv + a.basis()[x].source)
            .collect();
        let first: Vec<Matrix<F>> = (0..a.dim())
            .map(|i| {
                let cols = lay
                    .iter()
                    .map(|&(r, y, x)| {
                        SparseVec::from_pairs(
                            nl_all[i]
                                .column(y)
                                .iter()
                                .filter_map(|(z, c)| pos.get(&(r, z, x)).map(|&k| (k, c.clone())))
                                .collect(),
                        )
                    })
                    .collect();
                Matrix::from_columns(dim, cols)
            })
            .collect();
        let second: Vec<Matrix<F>> = (0..a.dim())
            .map(|j| {
                let cols = lay
                    .iter()
                    .map(|&(r, y, x)| {
                        SparseVec::from_pairs(
                            rr[j]
                                .column(x)
                                .iter()
                                .filter_map(|(z, c)| pos.get(&(r, y, z)).map(|&k| (k, c.clone())))
                                .collect(),
                        )
                    })
                    .collect();
                Matrix::from_columns(dim, cols)
            })
            .collect();
        modules.push(Module::new(
            env.env.clone(),
            vertex_of,
            Action::Commuting { first, second },
        )?);
        if q < p.hi() {
            let d = p.diff(q);
            let next = layout(q + 1);
            let npos: HashMap<(usize, usize, usize), usize> =
                next.iter().enumerate().map(|(k, &ryx)| (ryx, k)).collect();
            let src_ranges = summand_ranges(q);
            let mut cols = vec![SparseVec::new(); dim];
            for (r, &(o, len)) in src_ranges.iter().enumerate() {
                for c in 0..d.cols() {
                    for (coef, ai, bj) in pure_terms(env, d.get(r, c)) {
                        for k in o..o + len {
                            let (_, y, x) = lay[k];
                            // n ↦ n·a_i, β ↦ b_j β
                            let ya = nr_all[ai].column(y);
                            let bx = a.mul_basis(bj, x);
                            let mut pairs = Vec::new();
                            for (t, c1) in ya.iter() {
                                for (z, c2) in bx.iter() {
                                    if let Some(&kk) = npos.get(&(c, t, z)) {
                                        pairs.push((kk, c1.mul(c2).mul(&coef)));
                                    }
                                }
                            }
                            cols[k] = cols[k].add(&SparseVec::from_pairs(pairs));
                        }
                    }
                }
            }
            diffs.push(Matrix::from_columns(next.len(), cols));
        }
    }
    ModuleComplex::new(env.env.clone(), p.lo(), modules, diffs)
}

/// `N ⊗_A X` for a bimodule `N` and a complex `X` of projective left
/// modules: `N ⊗_A Ae_v = N e_v`.
pub fn bimodule_tensor_left<F: Field>(
    env: &Enveloping<F>,
    n: &Module<F>,
    x: &ProjComplex<F>,
) -> Result<ModuleComplex<F>> {
    check_env(env, n.algebra(), "bimodule")?;
    if x.algebra().fingerprint() != env.base.fingerprint() {
        return Err(Error::SideMismatch(
            "object is not over the base algebra".into(),
        ));
    }
    let (nl, nr) = n
        .commuting_parts()
        .ok_or_else(|| Error::SideMismatch("coefficient is not a bimodule".into()))?;
    let a = &env.base;
    let nv = env.nv();
    if x.is_zero() {
        return Ok(ModuleComplex::zero(a.clone()));
    }
    let layout = |q: i64| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (s, &v) in x.term(q).iter().enumerate() {
            for y in 0..n.dim() {
                if n.vertex_of()[y] % nv == v {
                    out.push((s, y));
                }
            }
        }
        out
    };
    let mut modules = Vec::new();
    let mut diffs = Vec::new();
    for q in x.degrees() {
        let lay = layout(q);
        let pos: HashMap<(usize, usize), usize> =
            lay.iter().enumerate().map(|(k, &sy)| (sy, k)).collect();
        let dim = lay.len();
        let vertex_of = lay.iter().map(|&(_, y)| n.vertex_of()[y] / nv).collect();
        let ms = (0..a.dim())
            .map(|i| {
                let cols = lay
                    .iter()
                    .map(|&(s, y)| {
                        SparseVec::from_pairs(
                            nl[i]
                                .column(y)
                                .iter()
                                .filter_map(|(z, c)| pos.get(&(s, z)).map(|&k| (k, c.clone())))
                                .collect(),
                        )
                    })
                    .collect();
                Matrix::from_columns(dim, cols)
            })
            .collect();
        modules.push(Module::new(a.clone(), vertex_of, Action::Matrices(ms))?);
        if q < x.hi() {
            let d = x.diff(q);
            let next = layout(q + 1);
            let npos: HashMap<(usize, usize), usize> =
                next.iter().enumerate().map(|(k, &sy)| (sy, k)).collect();
            let cols = lay
                .iter()
                .map(|&(s, y)| {
                    let mut pairs = Vec::new();
                    for c in 0..d.cols() {
                        for (b, coef) in d.get(s, c).iter() {
                            for (z, c2) in nr[b].column(y).iter() {
                                if let Some(&k) = npos.get(&(c, z)) {
                                    pairs.push((k, c2.mul(coef)));
                                }
                            }
                        }
                    }
                    SparseVec::from_pairs(pairs)
                })
                .collect();
            diffs.push(Matrix::from_columns(next.len(), cols));
        }
    }
    ModuleComplex::new(a.clone(), x.lo(), modules, diffs)
}

/// Layout of a tensor over `A` of two complexes of projectives whose
/// contracted vertices are `w` (left factor) and `x` (right factor): a
/// summand for every pair of summands and every basis element of `e_w A e_x`.
struct Layout {
    entries: Vec<(i64, usize, i64, usize, usize)>,
    index: HashMap<(i64, usize, i64, usize, usize), usize>,
}

impl Layout {
    fn new(entries: Vec<(i64, usize, i64, usize, usize)>) -> Self {
        let index = entries.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        Layout { entries, index }
    }

    fn find(&self, p: i64, r: usize, q: i64, s: usize, c: usize) -> Option<usize> {
        self.index.get(&(p, r, q, s, c)).copied()
    }
}

/// `X ⊗_A Y` for complexes of projective bimodules: the summand
/// `(Ae_v ⊗ e_wA) ⊗_A (Ae_x ⊗ e_yA)` splits as copies of `A^e e_{(v,y)}`
/// indexed by a basis of `e_w A e_x`.
pub fn kernel_tensor<F: Field>(
    env: &Enveloping<F>,
    x: &ProjComplex<F>,
    y: &ProjComplex<F>,
) -> Result<ProjComplex<F>> {
    check_env(env, x.algebra(), "left kernel")?;
    check_env(env, y.algebra(), "right kernel")?;
    let nv = env.nv();
    let a = env.base.clone();
    let right_vertex = |vw: usize| vw % nv;
    let left_vertex = |vw: usize| vw / nv;
    tensor_generic(
        env.env.clone(),
        &a,
        x,
        y,
        right_vertex,
        left_vertex,
        |v_r, y_s| v_r / nv * nv + y_s % nv,
        |coef_elem_a: usize, ys: usize| {
            env.pure(
                &SparseVec::unit(coef_elem_a),
                &SparseVec::unit(a.idempotent(ys % nv)),
            )
        },
        |vr: usize, b_op: usize| {
            env.pure(
                &SparseVec::unit(a.idempotent(vr / nv)),
                &SparseVec::unit(b_op),
            )
        },
        |m| pure_terms(env, m),
        |m| pure_terms(env, m),
    )
}

/// `K ⊗_A Y` for a complex of projective bimodules `K` and a complex of
/// projective left modules `Y`.
pub fn kernel_apply<F: Field>(
    env: &Enveloping<F>,
    k: &ProjComplex<F>,
    y: &ProjComplex<F>,
) -> Result<ProjComplex<F>> {
    check_env(env, k.algebra(), "kernel")?;
    if y.algebra().fingerprint() != env.base.fingerprint() {
        return Err(Error::SideMismatch(
            "object is not over the base algebra".into(),
        ));
    }
    let nv = env.nv();
    let a = env.base.clone();
    tensor_generic(
        a.clone(),
        &a,
        k,
        y,
        |vw| vw % nv,
        |x| x,
        |vw, _| vw / nv,
        |ai: usize, _| SparseVec::unit(ai),
        |vw: usize, _| SparseVec::unit(a.idempotent(vw / nv)),
        |m| pure_terms(env, m),
        |m| m.iter().map(|(b, c)| (c.clone(), b, 0)).collect(),
    )
}

#[allow(clippy::too_many_arguments)]
fn tensor_generic<F: Field>(
    target: Arc<Algebra<F>>,
    a: &Algebra<F>,
    x: &ProjComplex<F>,
    y: &ProjComplex<F>,
    x_contracted: impl Fn(usize) -> usize,
    y_contracted: impl Fn(usize) -> usize,
    out_vertex: impl Fn(usize, usize) -> usize,
    x_entry: impl Fn(usize, usize) -> SparseVec<F>,
    y_entry: impl Fn(usize, usize) -> SparseVec<F>,
    x_terms: impl Fn(&SparseVec<F>) -> Vec<(F, usize, usize)>,
    y_terms: impl Fn(&SparseVec<F>) -> Vec<(F, usize, usize)>,
) -> Result<ProjComplex<F>> {
    if x.is_zero() || y.is_zero() {
        return Ok(ProjComplex::zero(target));
    }
    let lo = x.lo() + y.lo();
    let hi = x.hi() + y.hi();
    let layout = |t: i64| -> Layout {
        let mut entries = Vec::new();
        for p in x.degrees() {
            let q = t - p;
            if q < y.lo() || q > y.hi() {
                continue;
            }
            for (r, &vr) in x.term(p).iter().enumerate() {
                for (s, &ys) in y.term(q).iter().enumerate() {
                    for c in a.slice(y_contracted(ys), x_contracted(vr)) {
                        entries.push((p, r, q, s, c));
                    }
                }
            }
        }
        Layout::new(entries)
    };
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    let mut cur = layout(lo);
    for t in lo..=hi {
        terms.push(
            cur.entries
                .iter()
                .map(|&(p, r, q, s, _)| out_vertex(x.term(p)[r], y.term(q)[s]))
                .collect::<Vec<_>>(),
        );
        if t == hi {
            break;
        }
        let next = layout(t + 1);
        let mut d = AlgMatrix::zeros(cur.entries.len(), next.entries.len());
        for (row, &(p, r, q, s, c)) in cur.entries.iter().enumerate() {
            let ys = y.term(q)[s];
            let vr = x.term(p)[r];
            if let Some(dx) = x.diff_ref(p) {
                for r2 in 0..dx.cols() {
                    for (coef, ai, bj) in x_terms(dx.get(r, r2)) {
                        // (e ⊗ c) · (a ⊗ b^op) = a ⊗ b c
                        for (c2, k) in a.mul_basis(bj, c).iter() {
                            if let Some(col) = next.find(p + 1, r2, q, s, c2) {
                                d.add_to(row, col, &x_entry(ai, ys).scale(&coef.mul(k)));
                            }
                        }
                    }
                }
            }
            if let Some(dy) = y.diff_ref(q) {
                let sg: F = sign(p);
                for s2 in 0..dy.cols() {
                    for (coef, ai, bj) in y_terms(dy.get(s, s2)) {
                        // c ⊗ (a ⊗ b^op) = c a ⊗ b
                        for (c2, k) in a.mul_basis(c, ai).iter() {
                            if let Some(col) = next.find(p, r, q + 1, s2, c2) {
                                d.add_to(row, col, &y_entry(vr, bj).scale(&coef.mul(k).mul(&sg)));
                            }
                        }
                    }
                }
            }
        }
        diffs.push(d);
        cur = next;
    }
    ProjComplex::new(target, lo, terms, diffs)
}
