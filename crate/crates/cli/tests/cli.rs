//! End-to-end CLI tests: golden outputs against direct library values, exit
//! codes, and the JSON round-trip guarantee.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name]
        .iter()
        .collect();
    path.to_string_lossy().into_owned()
}

fn cvn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cvn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = cvn(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn translen_matches_library_values() {
    assert_eq!(
        stdout_of(&["translen", &fixture("rose12.json"), "ab"]),
        "3\n"
    );
    assert_eq!(
        stdout_of(&["translen", &fixture("rose12.json"), "baB"]),
        "1\n"
    );
    assert_eq!(
        stdout_of(&["translen", &fixture("barbell.json"), "ab"]),
        "9\n"
    );
    assert_eq!(
        stdout_of(&["translen", &fixture("special1.json"), "CabABca"]),
        "6/5\n"
    );
    assert_eq!(
        stdout_of(&[
            "--decimal",
            "translen",
            &fixture("special1.json"),
            "CabABca"
        ]),
        "1.2\n"
    );
}

#[test]
fn stretch_between_roses() {
    let out = stdout_of(&["stretch", &fixture("rose11.json"), &fixture("rose21.json")]);
    assert!(out.contains("lambda = 2"), "{out}");
    assert!(out.contains("witness: a"), "{out}");
    assert!(out.contains("3/2"), "{out}");
}

#[test]
fn stretch_from_boundary_tree_is_a_bounded_search() {
    // Lower bounds are flagged by exit code 2.
    let out = cvn(&[
        "stretch",
        &fixture("special1.json"),
        &fixture("base_hnn3.json"),
        "--brute",
        "9",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("lambda >= 5/3"), "{stdout}");

    // Without --brute the request is rejected as a usage error.
    let out = cvn(&[
        "stretch",
        &fixture("special1.json"),
        &fixture("base_hnn3.json"),
    ]);
    assert_eq!(out.status.code(), Some(1));

    // On marked graphs --brute runs the word-enumeration oracle; it reaches
    // the exact value once the bound covers the candidates.
    let out = cvn(&[
        "stretch",
        &fixture("rose11.json"),
        &fixture("rose21.json"),
        "--brute",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("lambda >= 2"), "{stdout}");
}

#[test]
fn stretch_from_marked_graph_into_boundary_tree_is_exact() {
    // A marked-graph source is simplicial, so candidates give the exact value
    // whatever the target is.
    let rose3 = r#"{
        "type": "marked_graph", "rank": 3,
        "vertices": ["v0"],
        "edges": [
            {"id": "e0", "from": "v0", "to": "v0", "length": "1"},
            {"id": "e1", "from": "v0", "to": "v0", "length": "1"},
            {"id": "e2", "from": "v0", "to": "v0", "length": "1"}
        ],
        "spanning_tree": [],
        "marking": {"base": "v0", "paths": [["e0"], ["e1"], ["e2"]]}
    }"#;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rose3.json");
    std::fs::write(&path, rose3).unwrap();
    let out = cvn(&[
        "stretch",
        path.to_str().unwrap(),
        &fixture("base_hnn3.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    // ||c||/||c|| = 1 is the maximum: a and b are elliptic in the target.
    assert!(stdout.contains("lambda = 1"), "{stdout}");
}

#[test]
fn distance_requires_marked_graphs() {
    // Covolume-1 representatives are rose(1/2, 1/2) and rose(2/3, 1/3).
    let out = stdout_of(&["distance", &fixture("rose11.json"), &fixture("rose21.json")]);
    assert!(out.contains("lambda = 4/3"), "{out}");
    assert!(out.contains("0.287682072"), "{out}");
    let out = cvn(&[
        "distance",
        &fixture("special1.json"),
        &fixture("rose21.json"),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn candidates_tables() {
    let out = stdout_of(&["candidates", &fixture("barbell.json")]);
    for needle in ["a", "b", "ab", "aB", "barbell", "circle"] {
        assert!(out.contains(needle), "missing {needle} in {out}");
    }
    let out = stdout_of(&["candidates", &fixture("special1.json")]);
    assert_eq!(out, "vertex\ncircle\n");
    let out = stdout_of(&["candidates", &fixture("amalgam.json")]);
    assert_eq!(out, "vertex\ndoubly_degenerate_barbell\n");
}

#[test]
fn whitehead_verdicts() {
    let out = stdout_of(&["whitehead", "primitive", "bcaC", "--rank", "3"]);
    assert!(out.contains("primitive: true"), "{out}");
    assert!(out.contains("final word:"), "{out}");
    let out = stdout_of(&["whitehead", "primitive", "abAB", "--rank", "2"]);
    assert!(out.contains("primitive: false"), "{out}");
    let out = stdout_of(&["whitehead", "simple", "abAB", "--rank", "2"]);
    assert!(out.contains("simple: false"), "{out}");
    let out = stdout_of(&["whitehead", "simple", "abAB", "--rank", "3"]);
    assert!(out.contains("simple: true"), "{out}");

    // Letters beyond the rank are a parse error.
    let out = cvn(&["whitehead", "primitive", "abc", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn pull_equiv_reports_both_relations() {
    let out = stdout_of(&[
        "pull-equiv",
        &fixture("special1.json"),
        &fixture("special2.json"),
        "--max-len",
        "6",
        "--class",
        "primitive",
    ]);
    assert!(out.contains("special_pull_equivalent: true"), "{out}");
    assert!(out.contains("spectrum(primitive, L = 6): equal"), "{out}");

    let out = stdout_of(&[
        "pull-equiv",
        &fixture("nonspecial.json"),
        &fixture("base_hnn3.json"),
        "--max-len",
        "6",
        "--class",
        "primitive",
    ]);
    assert!(out.contains("special_pull_equivalent: false"), "{out}");
    assert!(out.contains("different"), "{out}");
    assert!(out.contains("witness: aCbc (6/5 vs 2)"), "{out}");

    let out = cvn(&[
        "pull-equiv",
        &fixture("rose11.json"),
        &fixture("base_hnn3.json"),
        "--max-len",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn spectrum_table() {
    let out = stdout_of(&[
        "spectrum",
        &fixture("rose12.json"),
        "--max-len",
        "2",
        "--primitive-only",
    ]);
    let lines: Vec<&str> = out.lines().collect();
    // Header, rule, then the 8 primitive classes of length <= 2.
    assert_eq!(lines.len(), 2 + 8, "{out}");
    assert!(
        lines.iter().any(|l| l.starts_with("ab") && l.contains('3')),
        "{out}"
    );
}

#[test]
fn validation_errors_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let doc = std::fs::read_to_string(fixture("rose12.json"))
        .unwrap()
        .replace("\"2\"", "\"0\"");
    std::fs::write(&path, doc).unwrap();
    let out = cvn(&["translen", path.to_str().unwrap(), "a"]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("edges[1].length"), "{stderr}");
}

#[test]
fn json_output_round_trips_byte_identically() {
    let own = |args: &[&str]| -> Vec<String> { args.iter().map(|s| s.to_string()).collect() };
    let cases: Vec<Vec<String>> = vec![
        own(&["--json", "translen", &fixture("rose12.json"), "ab"]),
        own(&[
            "--json",
            "stretch",
            &fixture("rose11.json"),
            &fixture("rose21.json"),
        ]),
        own(&[
            "--json",
            "distance",
            &fixture("rose11.json"),
            &fixture("rose21.json"),
        ]),
        own(&["--json", "candidates", &fixture("barbell.json")]),
        own(&["--json", "candidates", &fixture("special1.json")]),
        own(&["--json", "whitehead", "primitive", "bcaC", "--rank", "3"]),
        own(&[
            "--json",
            "pull-equiv",
            &fixture("special1.json"),
            &fixture("special2.json"),
            "--max-len",
            "4",
        ]),
        own(&[
            "--json",
            "spectrum",
            &fixture("rose12.json"),
            "--max-len",
            "2",
        ]),
    ];
    for args in cases {
        let arg_refs: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
        let out = cvn(&arg_refs);
        let stdout = String::from_utf8(out.stdout).unwrap();
        let value: serde_json::Value =
            serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{stdout}"));
        let rendered = format!("{}\n", serde_json::to_string_pretty(&value).unwrap());
        assert_eq!(rendered, stdout, "round trip failed for {args:?}");
    }
}

#[test]
fn json_stretch_structure() {
    let out = stdout_of(&[
        "--json",
        "stretch",
        &fixture("rose11.json"),
        &fixture("rose21.json"),
    ]);
    let value: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(value["lambda"], "2");
    assert_eq!(value["witness"], "a");
    assert_eq!(value["lower_bound"], false);
    let table = value["table"].as_array().unwrap();
    assert_eq!(table.len(), 4);
    assert!(table
        .iter()
        .any(|row| row["word"] == "ab" && row["ratio"] == "3/2"));
}
