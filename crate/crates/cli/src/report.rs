//! Command reports and their JSON and table renderings.

use serde_json::{json, Map, Value};

/// A graded dimension vector with its certification data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    pub dims: Vec<usize>,
    pub certified_to: usize,
    /// Degrees above this are zero by the global dimension bound rather
    /// than by computation.
    pub zero_beyond: Option<usize>,
}

impl Profile {
    pub fn annotation(&self) -> String {
        match self.zero_beyond {
            Some(d) => format!(
                "computed through degree {}; provably zero beyond degree {d} (global dimension)",
                self.certified_to
            ),
            None => format!("computed through degree {}", self.certified_to),
        }
    }
}

impl From<&sodhh::hochschild::HHProfile> for Profile {
    fn from(p: &sodhh::hochschild::HHProfile) -> Self {
        Profile {
            dims: p.dims.clone(),
            certified_to: p.certified_to,
            zero_beyond: p.vanishes_beyond,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Grid {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Grid {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row<S: ToString>(&mut self, cells: impl IntoIterator<Item = S>) {
        self.rows
            .push(cells.into_iter().map(|c| c.to_string()).collect());
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Entry {
    Value(Value),
    Profile(Profile),
    Grid(Grid),
    Section(Vec<(String, Entry)>),
}

impl Entry {
    pub fn text(s: impl Into<String>) -> Self {
        Entry::Value(Value::String(s.into()))
    }

    fn to_json(&self) -> Value {
        match self {
            Entry::Value(v) => v.clone(),
            Entry::Profile(p) => json!({
                "dims": p.dims,
                "certified_to": p.certified_to,
                "provably_zero_beyond": p.zero_beyond,
                "annotation": p.annotation(),
            }),
            Entry::Grid(g) => json!({ "columns": g.columns, "rows": g.rows }),
            Entry::Section(items) => section_json(items),
        }
    }
}

impl From<bool> for Entry {
    fn from(b: bool) -> Self {
        Entry::Value(Value::Bool(b))
    }
}

impl From<usize> for Entry {
    fn from(n: usize) -> Self {
        Entry::Value(json!(n))
    }
}

impl From<i64> for Entry {
    fn from(n: i64) -> Self {
        Entry::Value(json!(n))
    }
}

impl From<Profile> for Entry {
    fn from(p: Profile) -> Self {
        Entry::Profile(p)
    }
}

impl From<Grid> for Entry {
    fn from(g: Grid) -> Self {
        Entry::Grid(g)
    }
}

fn section_json(items: &[(String, Entry)]) -> Value {
    let mut m = Map::new();
    for (k, e) in items {
        m.insert(k.clone(), e.to_json());
    }
    Value::Object(m)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub items: Vec<(String, Entry)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Table,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            items: Vec::new(),
        }
    }

    pub fn push(&mut self, key: impl Into<String>, e: impl Into<Entry>) {
        self.items.push((key.into(), e.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.items.iter().find(|(k, _)| k == key).map(|(_, e)| e)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), Value::String(self.command.clone()));
        for (k, e) in &self.items {
            m.insert(k.clone(), e.to_json());
        }
        Value::Object(m)
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Table => {
                let mut out = format!("command: {}\n", self.command);
                render(&self.items, 0, &mut out);
                out
            }
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn aligned(rows: &[Vec<String>], indent: usize, out: &mut String) {
    let width = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut w = vec![0; width];
    for r in rows {
        for (k, c) in r.iter().enumerate() {
            w[k] = w[k].max(c.chars().count());
        }
    }
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if k == 0 {
                    format!("{c:<width$}", width = w[k])
                } else {
                    format!("{c:>width$}", width = w[k])
                }
            })
            .collect();
        out.push_str(&" ".repeat(indent));
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
}

fn render(items: &[(String, Entry)], indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    for (k, e) in items {
        match e {
            Entry::Value(v) => out.push_str(&format!("{pad}{k}: {}\n", scalar(v))),
            Entry::Profile(p) => {
                out.push_str(&format!("{pad}{k}  ({})\n", p.annotation()));
                let mut deg = vec!["degree".to_string()];
                let mut dim = vec!["dim".to_string()];
                for (n, d) in p.dims.iter().enumerate() {
                    deg.push(n.to_string());
                    dim.push(d.to_string());
                }
                aligned(&[deg, dim], indent + 2, out);
            }
            Entry::Grid(g) => {
                out.push_str(&format!("{pad}{k}:\n"));
                let mut rows = vec![g.columns.clone()];
                rows.extend(g.rows.iter().cloned());
                aligned(&rows, indent + 2, out);
            }
            Entry::Section(inner) => {
                out.push_str(&format!("{pad}{k}:\n"));
                render(inner, indent + 2, out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("cohomology");
        r.push(
            "algebra",
            Entry::Section(vec![
                ("name".into(), Entry::text("kronecker3")),
                ("dim".into(), 5usize.into()),
            ]),
        );
        r.push(
            "HH^*",
            Profile {
                dims: vec![1, 8, 0],
                certified_to: 2,
                zero_beyond: Some(1),
            },
        );
        let mut g = Grid::new(["i", "class"]);
        g.row(["1", "[1, 0]"]);
        r.push("objects", g);
        r
    }

    #[test]
    fn json_round_trips() {
        let r = sample();
        let text = r.emit(Format::Json);
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r.to_json());
        assert_eq!(text, sample().emit(Format::Json));
        let keys: Vec<&String> = back.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["command", "algebra", "HH^*", "objects"]);
    }

    #[test]
    fn profile_table_has_degree_columns() {
        let text = sample().emit(Format::Table);
        assert!(
            text.contains("\n  degree  0  1  2\n  dim     1  8  0\n"),
            "{text}"
        );
        assert!(text.contains("provably zero beyond degree 1"));
        assert!(text.contains("\n  i   class\n  1  [1, 0]\n"), "{text}");
    }
}
