use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::Value;
use sodhh::{catalog, Q};
use sodhh_cli::{
    parse_quiver_file, parse_quiver_str, run_command, CliError, Outcome, QuiverDocument,
};

fn run(args: &[&str]) -> Outcome {
    run_command(std::iter::once("sodhh").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut v: Vec<&str> = args.to_vec();
    v.extend(["--format", "json"]);
    let out = run(&v);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn temp_json(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn dims(v: &Value) -> Vec<u64> {
    v["dims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect()
}

const KRONECKER3: &str = r#"{
  "field": {"kind": "q"},
  "vertices": ["u", "v"],
  "arrows": [
    {"name": "a", "source": "u", "target": "v"},
    {"name": "b", "source": "u", "target": "v"},
    {"name": "c", "source": "u", "target": "v"}
  ],
  "relations": []
}"#;

#[test]
fn kronecker3_cohomology_profile() {
    let out = run(&["cohomology", "--catalog", "kronecker3", "--max-degree", "4"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(
        out.stdout
            .contains("  degree  0  1  2  3  4\n  dim     1  8  0  0  0\n"),
        "{}",
        out.stdout
    );
    let v = json(&["cohomology", "--catalog", "kronecker3", "--max-degree", "4"]);
    assert_eq!(dims(&v["HH^*"]), [1, 8, 0, 0, 0]);
}

#[test]
fn kronecker3_cohomology_matches_golden_file() {
    let out = run(&[
        "cohomology",
        "--catalog",
        "kronecker3",
        "--max-degree",
        "4",
        "--format",
        "json",
    ]);
    let golden = std::fs::read_to_string(data("kronecker3_cohomology.json")).unwrap();
    assert_eq!(out.stdout, golden);
}

#[test]
fn les_check_on_gluing() {
    let out = run(&["les-check", "--catalog", "kronecker3-gluing"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("Euler sum: 0\n"));
    assert!(out.stdout.contains("chase:\n"));
    let v = json(&["les-check", "--catalog", "kronecker3-gluing"]);
    assert_eq!(v["Euler sum"], 0);
    assert_eq!(v["chase exact"], true);
    let rows = v["chase"]["rows"].as_array().unwrap();
    let chase: Vec<u64> = rows
        .iter()
        .map(|r| r[1].as_str().unwrap().parse().unwrap())
        .collect();
    assert_eq!(chase, [1, 2, 9, 8, 0]);
}

#[test]
fn les_check_needs_a_gluing() {
    assert_eq!(run(&["les-check", "--catalog", "kronecker3"]).code, 2);
}

#[test]
fn malformed_file_is_a_schema_error() {
    let f = temp_json("{ \"vertices\": [\"1\"], ");
    let out = run(&["cohomology", "--file", f.path().to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("schema error"), "{}", out.stderr);
    assert!(out.stdout.is_empty());
}

#[test]
fn missing_field_is_a_schema_error() {
    let f = temp_json(r#"{"vertices": ["1"], "arrows": [], "relations": []}"#);
    let out = run(&["cohomology", "--file", f.path().to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("field"), "{}", out.stderr);
}

#[test]
fn missing_file_is_an_io_error() {
    let out = run(&["cohomology", "--file", "/nonexistent/quiver.json"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("i/o error"), "{}", out.stderr);
}

#[test]
fn short_relation_path_names_the_relation() {
    let text = r#"{
      "field": {"kind": "q"},
      "vertices": ["1", "2", "3"],
      "arrows": [
        {"name": "a", "source": "1", "target": "2"},
        {"name": "b", "source": "2", "target": "3"}
      ],
      "relations": [
        [{"coeff": 1, "path": ["a", "b"]}],
        [{"coeff": 1, "path": ["a"]}]
      ]
    }"#;
    match parse_quiver_str(text) {
        Err(CliError::Schema(m)) => assert!(
            m.contains("relations[1]") && m.contains("relation 1"),
            "{m}"
        ),
        other => panic!("{other:?}"),
    }
}

#[test]
fn undeclared_vertex_is_rejected() {
    let text = r#"{
      "field": {"kind": "q"},
      "vertices": ["1"],
      "arrows": [{"name": "a", "source": "1", "target": "7"}],
      "relations": []
    }"#;
    match parse_quiver_str(text) {
        Err(CliError::Schema(m)) => {
            assert!(m.contains("arrows[0].target") && m.contains("\"7\""), "{m}")
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn unknown_arrow_and_duplicates_are_rejected() {
    let base = |arrows: &str, rels: &str| {
        format!(
            r#"{{"field": {{"kind": "q"}}, "vertices": ["1", "2"], "arrows": [{arrows}], "relations": [{rels}]}}"#
        )
    };
    let a = r#"{"name": "a", "source": "1", "target": "2"}"#;
    let cases = [
        base(a, r#"[{"coeff": 1, "path": ["a", "z"]}]"#),
        base(&format!("{a}, {a}"), ""),
        r#"{"field": {"kind": "q"}, "vertices": ["1", "1"], "arrows": [], "relations": []}"#
            .to_string(),
        r#"{"field": {"kind": "fp", "p": 9}, "vertices": ["1"], "arrows": [], "relations": []}"#
            .to_string(),
        r#"{"field": {"kind": "q"}, "vertices": ["1"], "arrows": [], "relations": [], "extra": 1}"#
            .to_string(),
    ];
    for c in &cases {
        assert!(
            matches!(parse_quiver_str(c), Err(CliError::Schema(_))),
            "{c}"
        );
    }
}

#[test]
fn valid_kronecker3_file() {
    let doc = parse_quiver_file(&data("kronecker3.json")).unwrap();
    assert_eq!(doc.vertices.len(), 2);
    assert_eq!(doc.arrows.len(), 3);
    assert_eq!(doc, parse_quiver_str(KRONECKER3).unwrap());
    let a = doc.build::<Q>().unwrap();
    assert_eq!(a.fingerprint(), catalog::kronecker::<Q>(3).fingerprint());
    let v = json(&[
        "cohomology",
        "--file",
        data("kronecker3.json").to_str().unwrap(),
        "--max-degree",
        "3",
    ]);
    assert_eq!(dims(&v["HH^*"]), [1, 8, 0, 0]);
}

#[test]
fn relations_are_read_in_traversal_order() {
    let path = data("square.json");
    let v = json(&["info", "--file", path.to_str().unwrap()]);
    assert_eq!(v["algebra"]["dim"], 9);
    assert_eq!(v["algebra"]["global dimension"], 2);
    let v = json(&[
        "cohomology",
        "--file",
        path.to_str().unwrap(),
        "--max-degree",
        "3",
    ]);
    assert_eq!(dims(&v["HH^*"]), [1, 0, 0, 0]);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &[
            "cohomology",
            "--catalog",
            "beilinson-p2",
            "--max-degree",
            "3",
        ][..],
        &[
            "les-check",
            "--catalog",
            "kronecker3-gluing",
            "--format",
            "json",
        ],
        &["collection", "dual", "--catalog", "kronecker2"],
        &[
            "kernels",
            "orthogonality",
            "--catalog",
            "a2-quiver",
            "--format",
            "json",
        ],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a, b, "{args:?}");
        assert_eq!(a.code, 0, "{args:?}: {}", a.stderr);
    }
}

#[test]
fn json_output_reparses_to_the_same_structure() {
    let out = run(&[
        "homology",
        "--catalog",
        "loop-x2",
        "--max-degree",
        "3",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(
        format!("{}\n", serde_json::to_string_pretty(&v).unwrap()),
        out.stdout
    );
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys[0], "command");
    assert_eq!(dims(&v["HH_*"]), [2, 1, 1, 1]);
}

#[test]
fn catalog_show_round_trips_through_a_file() {
    for name in catalog::NAMES {
        let v = json(&["catalog", "show", name]);
        let doc: QuiverDocument = serde_json::from_value(v["document"].clone()).unwrap();
        let f = temp_json(&serde_json::to_string(&doc).unwrap());
        let rebuilt = json(&["info", "--file", f.path().to_str().unwrap()]);
        assert_eq!(rebuilt["algebra"]["dim"], v["dim"], "{name}");
        assert_eq!(rebuilt["fingerprint"], v["fingerprint"], "{name}");
    }
}

#[test]
fn catalog_list_names_every_entry() {
    let v = json(&["catalog", "list"]);
    let names: Vec<&str> = v["algebras"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r[0].as_str().unwrap())
        .collect();
    assert_eq!(names, catalog::NAMES);
    assert_eq!(run(&["catalog", "show", "nope"]).code, 2);
}

#[test]
fn prime_field_agrees_with_rationals() {
    for name in ["kronecker2", "beilinson-p2", "loop-x2"] {
        for cmd in ["cohomology", "homology"] {
            let q = json(&[cmd, "--catalog", name, "--max-degree", "3"]);
            let p = json(&[
                cmd,
                "--catalog",
                name,
                "--max-degree",
                "3",
                "--field",
                "fp:32003",
            ]);
            let key = if cmd == "cohomology" { "HH^*" } else { "HH_*" };
            assert_eq!(dims(&q[key]), dims(&p[key]), "{name} {cmd}");
            assert_eq!(p["algebra"]["field"], "F_32003");
        }
    }
}

#[test]
fn file_field_is_the_default() {
    let text = KRONECKER3.replace(r#"{"kind": "q"}"#, r#"{"kind": "fp", "p": 3}"#);
    let f = temp_json(&text);
    let v = json(&["info", "--file", f.path().to_str().unwrap()]);
    assert_eq!(v["algebra"]["field"], "F_3");
    let v = json(&["info", "--file", f.path().to_str().unwrap(), "--field", "q"]);
    assert_eq!(v["algebra"]["field"], "Q");
}

#[test]
fn unsupported_fields_are_input_errors() {
    for f in ["fp:11", "fp:12", "r", "fp:"] {
        let out = run(&["cohomology", "--catalog", "kronecker2", "--field", f]);
        assert_eq!(out.code, 2, "{f}");
    }
}

#[test]
fn usage_errors_exit_2_and_help_exits_0() {
    assert_eq!(run(&[]).code, 2);
    assert_eq!(run(&["cohomology"]).code, 2);
    assert_eq!(run(&["bogus"]).code, 2);
    assert_eq!(
        run(&["cohomology", "--catalog", "kronecker2", "--file", "x.json"]).code,
        2
    );
    let help = run(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("les-check"));
}

#[test]
fn failed_verification_exits_1() {
    let out = run(&["collection", "check", "--catalog", "loop-x2"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("exceptional: false"));
    let out = run(&["collection", "check", "--catalog", "beilinson-p2"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("exceptional: true"));
}

#[test]
fn mutation_and_dual_commands() {
    let out = run(&[
        "collection",
        "mutate",
        "--catalog",
        "beilinson-p2",
        "--index",
        "1",
        "--dir",
        "left",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let out = run(&[
        "collection",
        "mutate",
        "--catalog",
        "beilinson-p2",
        "--index",
        "1",
        "--dir",
        "right",
    ]);
    assert_eq!(
        out.code, 2,
        "right mutation at the first position is out of range"
    );
    let out = run(&[
        "collection",
        "mutate",
        "--catalog",
        "beilinson-p2",
        "--index",
        "9",
        "--dir",
        "left",
    ]);
    assert_eq!(out.code, 2);
    let out = run(&["collection", "dual", "--catalog", "kronecker3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
}

#[test]
fn projection_of_objects() {
    for obj in ["projective:0", "simple:1"] {
        let out = run(&[
            "collection",
            "project",
            "--catalog",
            "beilinson-p2",
            "--object",
            obj,
        ]);
        assert_eq!(out.code, 0, "{obj}: {}", out.stderr);
    }
    assert_eq!(
        run(&[
            "collection",
            "project",
            "--catalog",
            "beilinson-p2",
            "--object",
            "simple:9"
        ])
        .code,
        2
    );
    assert_eq!(
        run(&[
            "collection",
            "project",
            "--catalog",
            "beilinson-p2",
            "--object",
            "cube:1"
        ])
        .code,
        2
    );
}

#[test]
fn kernel_commands() {
    for action in ["build", "orthogonality", "additivity"] {
        let out = run(&[
            "kernels",
            action,
            "--catalog",
            "beilinson-p2",
            "--max-degree",
            "3",
        ]);
        assert_eq!(out.code, 0, "{action}: {}", out.stderr);
    }
}

#[test]
fn serre_check_and_coefficients() {
    let out = run(&["serre-check", "--catalog", "loop-x2", "--max-degree", "3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let diag = json(&[
        "coeffs",
        "--catalog",
        "kronecker3",
        "--bimodule",
        "diagonal",
        "--max-degree",
        "3",
    ]);
    let plain = json(&["cohomology", "--catalog", "kronecker3", "--max-degree", "3"]);
    let key = diag
        .as_object()
        .unwrap()
        .keys()
        .find(|k| k.starts_with("HH^*"))
        .unwrap()
        .clone();
    assert_eq!(dims(&diag[&key]), dims(&plain["HH^*"]));
    assert_eq!(
        run(&[
            "coeffs",
            "--catalog",
            "kronecker3",
            "--bimodule",
            "dual",
            "--max-degree",
            "3"
        ])
        .code,
        0
    );
    assert_eq!(
        run(&[
            "coeffs",
            "--catalog",
            "kronecker3",
            "--bimodule",
            "/nonexistent.json"
        ])
        .code,
        2
    );
}

#[test]
fn generalized_with_kernels() {
    for (support, coeff) in [
        ("diagonal", "diagonal"),
        ("serre", "diagonal"),
        ("diagonal", "projection:1"),
        ("diagonal", "decomposable:1,2"),
    ] {
        let out = run(&[
            "generalized",
            "--catalog",
            "kronecker2",
            "--support",
            support,
            "--coeff",
            coeff,
            "--max-degree",
            "3",
        ]);
        assert_eq!(out.code, 0, "{support} {coeff}: {}", out.stderr);
    }
    let out = run(&[
        "generalized",
        "--catalog",
        "kronecker2",
        "--support",
        "diagonal",
        "--coeff",
        "projection:7",
    ]);
    assert_eq!(out.code, 2);
}

#[test]
fn fullness_verdicts() {
    let out = run(&["fullness", "--catalog", "beilinson-p2"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let out = run(&["fullness", "--catalog", "beilinson-p2", "--subset", "1,3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
}

#[test]
fn catalog_fingerprints_are_pinned() {
    let pinned = std::fs::read_to_string(data("catalog_fingerprints.txt")).unwrap();
    let mut lines = pinned.lines();
    for name in catalog::NAMES {
        let a = catalog::algebra::<Q>(name).unwrap();
        assert_eq!(
            lines.next().unwrap(),
            format!("{name} {} {}", a.dim(), a.fingerprint())
        );
    }
    assert!(lines.next().is_none());
}

#[test]
fn bimodule_file_matches_the_diagonal() {
    let path = data("kronecker1_diagonal.json");
    let from_file = json(&[
        "coeffs",
        "--catalog",
        "kronecker1",
        "--bimodule",
        path.to_str().unwrap(),
        "--max-degree",
        "3",
    ]);
    let builtin = json(&[
        "coeffs",
        "--catalog",
        "kronecker1",
        "--bimodule",
        "diagonal",
        "--max-degree",
        "3",
    ]);
    assert_eq!(from_file["HH^*(A, M)"], builtin["HH^*(A, M)"]);
    assert_eq!(dims(&from_file["HH^*(A, M)"]), [1, 0, 0, 0]);
    let dual = json(&[
        "coeffs",
        "--catalog",
        "kronecker1",
        "--bimodule",
        "dual",
        "--max-degree",
        "3",
    ]);
    assert_eq!(dims(&dual["HH^*(A, M)"]), [2, 0, 0, 0]);

    let swapped = r#"{
      "basis": [["1", "1"], ["2", "2"], ["2", "1"]],
      "left": {"a1": [[0, 0, 0], [0, 0, 0], [0, 1, 0]]},
      "right": {"a1": [[0, 0, 0], [0, 0, 0], [1, 0, 0]]}
    }"#;
    let f = temp_json(swapped);
    let out = run(&[
        "coeffs",
        "--catalog",
        "kronecker1",
        "--bimodule",
        f.path().to_str().unwrap(),
    ]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("module axioms"), "{}", out.stderr);
}
