//! Quivers, admissible relations and construction of `kQ/I`.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{Algebra, BasisElement};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Echelon, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex {v:?}")));
            }
        }
        let mut names = HashMap::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (name, s, t) in arrows {
            let source = *index.get(&s).ok_or_else(|| {
                Error::InvalidQuiver(format!("arrow {name:?}: unknown source vertex {s:?}"))
            })?;
            let target = *index.get(&t).ok_or_else(|| {
                Error::InvalidQuiver(format!("arrow {name:?}: unknown target vertex {t:?}"))
            })?;
            if names.insert(name.clone(), out.len()).is_some() || index.contains_key(&name) {
                return Err(Error::InvalidQuiver(format!("duplicate name {name:?}")));
            }
            out.push(Arrow {
                name,
                source,
                target,
            });
        }
        Ok(Quiver {
            vertices,
            arrows: out,
        })
    }

    /// Convenience constructor with `&str` arguments.
    pub fn from_strs(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        Self::new(
            vertices.iter().map(|s| s.to_string()).collect(),
            arrows
                .iter()
                .map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string()))
                .collect(),
        )
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }
}

/// A linear combination of parallel paths. Paths are arrow indices in
/// traversal order (first arrow first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation<F> {
    pub terms: Vec<(F, Vec<usize>)>,
}

impl<F: Field> Relation<F> {
    pub fn new(terms: Vec<(F, Vec<usize>)>) -> Self {
        Relation { terms }
    }

    /// Builds from arrow names, e.g. `[(1, ["x0", "y1"]), (-1, ["x1", "y0"])]`.
    pub fn from_names(q: &Quiver, terms: &[(i64, &[&str])]) -> Result<Self> {
        let mut out = Vec::new();
        for (c, path) in terms {
            let idx = path
                .iter()
                .map(|n| {
                    q.arrow_index(n)
                        .ok_or_else(|| Error::InvalidQuiver(format!("unknown arrow {n:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            out.push((F::from_i64(*c), idx));
        }
        Ok(Relation { terms: out })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation<F> {
    pub quiver: Quiver,
    pub relations: Vec<Relation<F>>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Path {
    len: usize,
    arrows: Vec<usize>,
    source: usize,
    target: usize,
}

impl Path {
    fn trivial(v: usize) -> Self {
        Path {
            len: 0,
            arrows: Vec::new(),
            source: v,
            target: v,
        }
    }

    /// `self` followed by `next`, when composable.
    fn then(&self, next: &Path) -> Option<Path> {
        if self.target != next.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Some(Path {
            len: arrows.len(),
            arrows,
            source: self.source,
            target: next.target,
        })
    }
}

fn validate_relation<F: Field>(
    q: &Quiver,
    k: usize,
    r: &Relation<F>,
) -> Result<Option<(usize, usize)>> {
    let mut ends: Option<(usize, usize)> = None;
    for (t, (_, path)) in r.terms.iter().enumerate() {
        if path.len() < 2 {
            return Err(Error::NonAdmissible {
                relation: k,
                term: t,
                length: path.len(),
            });
        }
        for &a in path {
            if a >= q.arrows.len() {
                return Err(Error::InvalidRelation {
                    relation: k,
                    reason: format!("unknown arrow index {a}"),
                });
            }
        }
        for w in path.windows(2) {
            if q.arrows[w[0]].target != q.arrows[w[1]].source {
                return Err(Error::InvalidRelation {
                    relation: k,
                    reason: format!(
                        "arrows {} and {} are not composable",
                        q.arrows[w[0]].name, q.arrows[w[1]].name
                    ),
                });
            }
        }
        let st = (
            q.arrows[path[0]].source,
            q.arrows[*path.last().unwrap()].target,
        );
        match ends {
            None => ends = Some(st),
            Some(e) if e != st => {
                return Err(Error::InvalidRelation {
                    relation: k,
                    reason: "paths are not parallel".into(),
                })
            }
            _ => {}
        }
    }
    Ok(ends)
}

/// Default length cap for basis closure.
pub fn default_length_cap(q: &Quiver) -> usize {
    2 * q.arrows().len() + 2
}

const MAX_PATHS: usize = 200_000;

/// Builds `kQ/I`. Normal forms are computed by linear algebra on the span
/// of all paths of length at most `cap`, ordered so that longer paths are
/// eliminated first; every path of length `cap` must lie in the ideal.
pub fn build_path_algebra<F: Field>(
    q: &Quiver,
    relations: &[Relation<F>],
    cap: Option<usize>,
) -> Result<Algebra<F>> {
    let cap = cap.unwrap_or_else(|| default_length_cap(q));
    let mut ends = Vec::with_capacity(relations.len());
    for (k, r) in relations.iter().enumerate() {
        ends.push(validate_relation(q, k, r)?);
    }

    // enumerate paths of length <= cap
    let nv = q.vertices.len();
    let mut paths: Vec<Path> = (0..nv).map(Path::trivial).collect();
    let mut frontier: Vec<Path> = paths.clone();
    for _ in 0..cap {
        let mut next = Vec::new();
        for p in &frontier {
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.source == p.target {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path {
                        len: arrows.len(),
                        arrows,
                        source: p.source,
                        target: a.target,
                    });
                }
            }
        }
        if next.is_empty() {
            break;
        }
        paths.extend(next.iter().cloned());
        if paths.len() > MAX_PATHS {
            return Err(Error::NotFiniteDimensional { cap });
        }
        frontier = next;
    }
    paths.sort();
    let index: HashMap<Path, usize> = paths
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let mut by_target: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut by_source: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, p) in paths.iter().enumerate() {
        by_target.entry(p.target).or_default().push(i);
        by_source.entry(p.source).or_default().push(i);
    }

    // ideal generated by the relations, truncated above cap
    let mut ideal = Echelon::<F>::new(false);
    for (r, e) in relations.iter().zip(&ends) {
        let Some((u, v)) = *e else { continue };
        let rel_paths: Vec<(F, Path)> = r
            .terms
            .iter()
            .map(|(c, arrows)| {
                (
                    c.clone(),
                    Path {
                        len: arrows.len(),
                        arrows: arrows.clone(),
                        source: u,
                        target: v,
                    },
                )
            })
            .collect();
        let before = by_target.get(&u).cloned().unwrap_or_default();
        let after = by_source.get(&v).cloned().unwrap_or_default();
        for &bi in &before {
            for &ai in &after {
                let mut pairs = Vec::new();
                for (c, rp) in &rel_paths {
                    let full = paths[bi].then(rp).and_then(|p| p.then(&paths[ai]));
                    if let Some(full) = full {
                        if full.len <= cap {
                            pairs.push((index[&full], c.clone()));
                        }
                    }
                }
                let vec = SparseVec::from_pairs(pairs);
                if !vec.is_zero() {
                    ideal.insert(&vec);
                }
            }
        }
    }

    for (i, p) in paths.iter().enumerate() {
        if p.len == cap && !ideal.contains(&SparseVec::unit(i)) {
            return Err(Error::NotFiniteDimensional { cap });
        }
    }

    let pivots: std::collections::HashSet<usize> = ideal.pivots().collect();
    let basis_paths: Vec<usize> = (0..paths.len())
        .filter(|i| !pivots.contains(i) && paths[*i].len < cap.max(1))
        .collect();
    let basis_pos: HashMap<usize, usize> = basis_paths
        .iter()
        .enumerate()
        .map(|(k, &i)| (i, k))
        .collect();

    let label = |p: &Path| -> String {
        if p.len == 0 {
            format!("e_{}", q.vertices[p.source])
        } else {
            p.arrows
                .iter()
                .map(|&a| q.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join(".")
        }
    };
    let basis: Vec<BasisElement> = basis_paths
        .iter()
        .map(|&i| {
            let p = &paths[i];
            BasisElement {
                label: label(p),
                source: p.source,
                target: p.target,
                idempotent: p.len == 0,
            }
        })
        .collect();

    let dim = basis.len();
    let mut table = vec![SparseVec::new(); dim * dim];
    for (x, &pi) in basis_paths.iter().enumerate() {
        for (y, &pj) in basis_paths.iter().enumerate() {
            // x·y is "y then x"
            let Some(prod) = paths[pj].then(&paths[pi]) else {
                continue;
            };
            if prod.len > cap {
                continue;
            }
            let Some(&idx) = index.get(&prod) else {
                continue;
            };
            let red = ideal.reduce(&SparseVec::unit(idx)).residual;
            table[x * dim + y] = red.remap(|k| basis_pos.get(&k).copied());
            debug_assert_eq!(
                table[x * dim + y].nnz(),
                red.nnz(),
                "normal form left the basis"
            );
        }
    }

    Algebra::from_structure(
        "kQ/I".to_string(),
        q.vertices.clone(),
        basis,
        table,
        Some(Presentation {
            quiver: q.clone(),
            relations: relations.to_vec(),
        }),
    )
}
