use std::sync::Arc;

use super::algmatrix::AlgMatrix;
use super::proj::ProjComplex;
use crate::algebra::Algebra;
use crate::field::Field;
use crate::linalg::{self, Echelon, Matrix, SparseVec};
use crate::module::Module;

/// A minimal projective resolution `P_n → … → P_0` placed in degrees
/// `−n..0`. `complete` is set when the last kernel vanished.
#[derive(Clone, Debug)]
pub struct Resolution<F> {
    pub complex: ProjComplex<F>,
    pub complete: bool,
}

/// Generators of the top of a submodule: vertex-homogeneous vectors
/// independent modulo the radical times the submodule.
fn top_generators<F: Field>(
    alg: &Algebra<F>,
    vectors: &[(usize, SparseVec<F>)],
    act: &dyn Fn(usize, &SparseVec<F>) -> SparseVec<F>,
) -> Vec<(usize, SparseVec<F>)> {
    let mut rad = Echelon::new(false);
    for (_, x) in vectors {
        for b in 0..alg.dim() {
            if alg.is_radical(b) {
                let y = act(b, x);
                if !y.is_zero() {
                    rad.insert(&y);
                }
            }
        }
    }
    let mut out = Vec::new();
    for (v, x) in vectors {
        if rad.insert(x).is_none() {
            out.push((*v, x.clone()));
        }
    }
    out
}

/// Kernel of `⊕_g Λe_{u_g} → M`, `λ e_{u_g} ↦ λ·gen_g`, computed per vertex
/// slice so that kernel vectors are vertex-homogeneous.
fn cover_kernel<F: Field>(
    alg: &Algebra<F>,
    gens: &[(usize, SparseVec<F>)],
    target_dim: usize,
    act: &dyn Fn(usize, &SparseVec<F>) -> SparseVec<F>,
) -> Vec<(usize, SparseVec<F>)> {
    let mut offs = Vec::with_capacity(gens.len());
    let mut o = 0;
    for (u, _) in gens {
        offs.push(o);
        o += alg.local_basis(*u).len();
    }
    let mut out = Vec::new();
    for t in 0..alg.num_vertices() {
        let mut idx = Vec::new();
        let mut cols = Vec::new();
        for (g, (u, x)) in gens.iter().enumerate() {
            for (k, &b) in alg.local_basis(*u).iter().enumerate() {
                if alg.basis()[b].target == t {
                    idx.push(offs[g] + k);
                    cols.push(act(b, x));
                }
            }
        }
        if idx.is_empty() {
            continue;
        }
        let m = Matrix::from_columns(target_dim, cols);
        for kv in linalg::kernel(&m).columns() {
            out.push((t, kv.remap(|i| Some(idx[i]))));
        }
    }
    out
}

/// Minimal projective resolution of `m` with at most `max_len + 1` terms.
pub fn minimal_resolution<F: Field>(m: &Module<F>, max_len: usize) -> Resolution<F> {
    let alg: Arc<Algebra<F>> = m.algebra().clone();
    let basis: Vec<(usize, SparseVec<F>)> = (0..m.dim())
        .map(|k| (m.vertex_of()[k], SparseVec::unit(k)))
        .collect();
    let act_m = |b: usize, x: &SparseVec<F>| m.act_basis(b, x);
    let mut gens = top_generators(&alg, &basis, &act_m);
    let mut kernel = cover_kernel(&alg, &gens, m.dim(), &act_m);
    let mut terms: Vec<Vec<usize>> = vec![gens.iter().map(|(u, _)| *u).collect()];
    let mut diffs: Vec<AlgMatrix<F>> = Vec::new();
    let mut complete = kernel.is_empty();
    for _ in 0..max_len {
        if kernel.is_empty() {
            complete = true;
            break;
        }
        let prev = Module::projective(alg.clone(), terms.last().unwrap());
        let prev_terms = terms.last().unwrap().clone();
        let act_p = |b: usize, x: &SparseVec<F>| prev.act_basis(b, x);
        let new_gens = top_generators(&alg, &kernel, &act_p);
        // differential rows: components of each generator in the summands of prev
        let mut offs = Vec::with_capacity(prev_terms.len());
        let mut o = 0;
        for &v in &prev_terms {
            offs.push(o);
            o += alg.local_basis(v).len();
        }
        let mut d = AlgMatrix::zeros(new_gens.len(), prev_terms.len());
        for (g, (_, x)) in new_gens.iter().enumerate() {
            for (k, c) in x.iter() {
                let s = offs.partition_point(|&o| o <= k) - 1;
                let b = alg.local_basis(prev_terms[s])[k - offs[s]];
                d.add_to(g, s, &SparseVec::single(b, c.clone()));
            }
        }
        kernel = cover_kernel(&alg, &new_gens, prev.dim(), &act_p);
        gens = new_gens;
        terms.push(gens.iter().map(|(u, _)| *u).collect());
        diffs.push(d);
        complete = kernel.is_empty();
    }
    let n = terms.len();
    terms.reverse();
    diffs.reverse();
    let complex =
        ProjComplex::new(alg, -(n as i64 - 1), terms, diffs).expect("resolution is a complex");
    Resolution { complex, complete }
}

/// Global dimension as the maximum projective dimension of the simples, or
/// `None` if some simple needs more than `bound` steps.
pub fn global_dimension<F: Field>(alg: &Arc<Algebra<F>>, bound: usize) -> Option<usize> {
    let mut best = 0;
    for v in 0..alg.num_vertices() {
        let r = minimal_resolution(&Module::simple(alg.clone(), v), bound + 1);
        if !r.complete {
            return None;
        }
        let pd = (-r.complex.lo()) as usize;
        if pd > bound {
            return None;
        }
        best = best.max(pd);
    }
    Some(best)
}
