//! On-disk quiver and bimodule descriptions.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sodhh::linalg::{Matrix, SparseVec};
use sodhh::module::{Action, Enveloping, Module};
use sodhh::{build_path_algebra, Algebra, Field, FieldSpec, Quiver, Relation};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum FieldDoc {
    #[serde(rename = "q")]
    Rationals,
    #[serde(rename = "fp")]
    Prime { p: u64 },
}

impl FieldDoc {
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldDoc::Rationals => FieldSpec::Rationals,
            FieldDoc::Prime { p } => FieldSpec::Prime(*p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// Coefficients are written as strings (`"-1"`, `"3/2"`); bare integers are
/// accepted as well.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Text(String),
    Integer(i64),
}

impl Coeff {
    fn parse<F: Field>(&self) -> Option<F> {
        match self {
            Coeff::Text(s) => F::parse(s),
            Coeff::Integer(n) => Some(F::from_i64(*n)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coeff: Coeff,
    /// Arrow names in traversal order.
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub field: FieldDoc,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
    pub relations: Vec<Vec<TermDoc>>,
}

fn schema(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}

pub fn parse_quiver_str(text: &str) -> Result<QuiverDocument, CliError> {
    let doc: QuiverDocument = serde_json::from_str(text).map_err(|e| schema(e.to_string()))?;
    doc.validate()?;
    Ok(doc)
}

pub fn parse_quiver_file(path: &Path) -> Result<QuiverDocument, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_quiver_str(&text).map_err(|e| match e {
        CliError::Schema(m) => CliError::Schema(format!("{}: {m}", path.display())),
        other => other,
    })
}

impl QuiverDocument {
    /// Structural checks that do not depend on the coefficient field.
    pub fn validate(&self) -> Result<(), CliError> {
        if let FieldDoc::Prime { p } = self.field {
            if !sodhh::field::is_prime(p) {
                return Err(schema(format!("field.p: {p} is not prime")));
            }
        }
        if self.vertices.is_empty() {
            return Err(schema("vertices: at least one vertex is required"));
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if self.vertices[..i].contains(v) {
                return Err(schema(format!("vertices[{i}]: duplicate vertex {v:?}")));
            }
        }
        for (i, a) in self.arrows.iter().enumerate() {
            for (key, v) in [("source", &a.source), ("target", &a.target)] {
                if !self.vertices.contains(v) {
                    return Err(schema(format!("arrows[{i}].{key}: unknown vertex {v:?}")));
                }
            }
            if self.arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(schema(format!(
                    "arrows[{i}].name: duplicate arrow {:?}",
                    a.name
                )));
            }
        }
        for (r, rel) in self.relations.iter().enumerate() {
            if rel.is_empty() {
                return Err(schema(format!("relations[{r}]: empty relation")));
            }
            for (t, term) in rel.iter().enumerate() {
                if term.path.len() < 2 {
                    return Err(schema(format!(
                        "relations[{r}][{t}].path: relation {r} has a path of length {} (< 2)",
                        term.path.len()
                    )));
                }
                for (k, name) in term.path.iter().enumerate() {
                    if !self.arrows.iter().any(|a| &a.name == name) {
                        return Err(schema(format!(
                            "relations[{r}][{t}].path[{k}]: unknown arrow {name:?}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn quiver(&self) -> Result<Quiver, CliError> {
        let arrows = self
            .arrows
            .iter()
            .map(|a| (a.name.clone(), a.source.clone(), a.target.clone()))
            .collect();
        Quiver::new(self.vertices.clone(), arrows).map_err(|e| schema(e.to_string()))
    }

    pub fn build<F: Field>(&self) -> Result<Algebra<F>, CliError> {
        let q = self.quiver()?;
        let mut rels = Vec::with_capacity(self.relations.len());
        for (r, rel) in self.relations.iter().enumerate() {
            let mut terms = Vec::with_capacity(rel.len());
            for (t, term) in rel.iter().enumerate() {
                let c = term.coeff.parse::<F>().ok_or_else(|| {
                    schema(format!(
                        "relations[{r}][{t}].coeff: {:?} is not a number in {}",
                        term.coeff,
                        F::spec()
                    ))
                })?;
                let path = term
                    .path
                    .iter()
                    .map(|n| q.arrow_index(n).expect("validated"))
                    .collect();
                terms.push((c, path));
            }
            rels.push(Relation::new(terms));
        }
        let a = build_path_algebra(&q, &rels, None).map_err(|e| schema(e.to_string()))?;
        Ok(a.with_name(self.name.clone().unwrap_or_else(|| "input".into())))
    }

    /// The document describing a presented algebra.
    pub fn from_algebra<F: Field>(a: &Algebra<F>) -> Result<Self, CliError> {
        let presented;
        let p = match a.presentation() {
            Some(p) => p,
            None => {
                presented = a.present().map_err(|e| CliError::Input(e.to_string()))?;
                &presented.0
            }
        };
        let q = &p.quiver;
        let name_of = |i: usize| q.arrows()[i].name.clone();
        let field = match F::spec() {
            FieldSpec::Rationals => FieldDoc::Rationals,
            FieldSpec::Prime(p) => FieldDoc::Prime { p },
        };
        Ok(QuiverDocument {
            name: Some(a.name().to_string()),
            field,
            vertices: q.vertices().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|x| ArrowDoc {
                    name: x.name.clone(),
                    source: q.vertices()[x.source].clone(),
                    target: q.vertices()[x.target].clone(),
                })
                .collect(),
            relations: p
                .relations
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|(c, path)| TermDoc {
                            coeff: Coeff::Text(c.to_string()),
                            path: path.iter().map(|&i| name_of(i)).collect(),
                        })
                        .collect()
                })
                .collect(),
        })
    }
}

/// A bimodule over a presented algebra: a basis placed at vertex pairs and
/// the actions of the arrows on both sides. `left[a]` is `x ↦ a·x` and
/// `right[a]` is `x ↦ x·a`, each as a list of rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleDocument {
    /// `[left vertex, right vertex]` for every basis vector.
    pub basis: Vec<[String; 2]>,
    #[serde(default)]
    pub left: BTreeMap<String, Vec<Vec<Coeff>>>,
    #[serde(default)]
    pub right: BTreeMap<String, Vec<Vec<Coeff>>>,
}

pub fn parse_bimodule_file(path: &Path) -> Result<BimoduleDocument, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| schema(format!("{}: {e}", path.display())))
}

fn matrix<F: Field>(rows: &[Vec<Coeff>], n: usize, at: &str) -> Result<Matrix<F>, CliError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(schema(format!("{at}: expected a {n}×{n} matrix")));
    }
    let mut out = Vec::with_capacity(n);
    for (i, r) in rows.iter().enumerate() {
        let mut row = Vec::with_capacity(n);
        for (j, c) in r.iter().enumerate() {
            row.push(
                c.parse::<F>()
                    .ok_or_else(|| schema(format!("{at}[{i}][{j}]: not a number")))?,
            );
        }
        out.push(row);
    }
    Ok(Matrix::from_rows(&out))
}

/// Extends arrow actions to every basis element of `a`: paths act by the
/// corresponding products, and each basis element is a combination of
/// path values.
fn extend_actions<F: Field>(
    a: &Algebra<F>,
    arrows: &[(usize, Matrix<F>)],
    idempotents: &[Matrix<F>],
    left: bool,
) -> Result<Vec<Matrix<F>>, CliError> {
    let one = |v: usize| SparseVec::unit(a.idempotent(v));
    let mut values: Vec<SparseVec<F>> = (0..a.num_vertices()).map(one).collect();
    let mut actions: Vec<Matrix<F>> = idempotents.to_vec();
    let mut frontier: Vec<(SparseVec<F>, Matrix<F>)> = arrows
        .iter()
        .map(|(b, m)| (SparseVec::unit(*b), m.clone()))
        .collect();
    for _ in 0..a.nilpotency_index() {
        let mut next = Vec::new();
        for (val, act) in &frontier {
            if val.is_zero() {
                continue;
            }
            values.push(val.clone());
            actions.push(act.clone());
            for (b, m) in arrows {
                // the path followed by the arrow b
                let v = a.multiply(&SparseVec::unit(*b), val);
                let act = if left { m.mul(act) } else { act.mul(m) };
                next.push((v, act));
            }
        }
        frontier = next;
    }
    let span = Matrix::from_columns(a.dim(), values);
    let targets = Matrix::identity(a.dim());
    let coeffs = sodhh::linalg::solve(&span, &targets)
        .ok_or_else(|| schema("arrows do not generate the algebra".to_string()))?;
    Ok((0..a.dim())
        .map(|b| {
            let n = actions[0].rows();
            let mut acc = Matrix::zeros(n, n);
            for (k, c) in coeffs.column(b).iter() {
                acc = acc.add(&actions[k].scale(c));
            }
            acc
        })
        .collect())
}

impl BimoduleDocument {
    pub fn build<F: Field>(&self, env: &Enveloping<F>) -> Result<Module<F>, CliError> {
        let a = &env.base;
        let n = self.basis.len();
        let vertex = |name: &str, at: String| {
            a.vertex_names()
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| schema(format!("{at}: unknown vertex {name:?}")))
        };
        let mut sides = Vec::with_capacity(n);
        for (k, [l, r]) in self.basis.iter().enumerate() {
            sides.push((
                vertex(l, format!("basis[{k}][0]"))?,
                vertex(r, format!("basis[{k}][1]"))?,
            ));
        }
        let projector = |pick: &dyn Fn(&(usize, usize)) -> usize, v: usize| {
            let diag: Vec<Vec<F>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j && pick(&sides[i]) == v {
                                F::one()
                            } else {
                                F::zero()
                            }
                        })
                        .collect()
                })
                .collect();
            Matrix::from_rows(&diag)
        };
        let mut arrow_mats = [Vec::new(), Vec::new()];
        for (side, table) in [&self.left, &self.right].into_iter().enumerate() {
            let key = if side == 0 { "left" } else { "right" };
            for (name, rows) in table {
                let b = a
                    .element_by_label(name)
                    .filter(|&b| a.is_radical(b))
                    .ok_or_else(|| schema(format!("{key}.{name}: not an arrow of the algebra")))?;
                arrow_mats[side].push((b, matrix::<F>(rows, n, &format!("{key}.{name}"))?));
            }
        }
        let nv = a.num_vertices();
        let first_id: Vec<Matrix<F>> = (0..nv).map(|v| projector(&|s| s.0, v)).collect();
        let second_id: Vec<Matrix<F>> = (0..nv).map(|v| projector(&|s| s.1, v)).collect();
        let first = extend_actions(a, &arrow_mats[0], &first_id, true)?;
        let second = extend_actions(a, &arrow_mats[1], &second_id, false)?;
        let vertex_of = sides.iter().map(|&(l, r)| env.vertex(l, r)).collect();
        let m = Module::new(
            env.env.clone(),
            vertex_of,
            Action::Commuting { first, second },
        )
        .map_err(|e| schema(e.to_string()))?;
        if !m.check_axioms() {
            return Err(schema("bimodule actions violate the module axioms"));
        }
        Ok(m)
    }
}
