use std::process::{Command, Stdio};
use std::io::Write;

use serde_json::Value;

use tuplex::homology::all_reduced_homology;
use tuplex::io::parse_complex;
use tuplex::{r_tuple, Limits, SimplicialComplex};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_with(args: &[&str], stdin: &str) -> Run {
    let mut input = stdin.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("tuplex").chain(args.iter().copied());
    let code = tuplex_cli::run(argv, &mut input, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    run_with(args, "")
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|e| panic!("not JSON ({e}): {s}"))
}

fn error_code(r: &Run) -> String {
    json(&r.stderr)["error"]["code"].as_str().unwrap().to_string()
}

#[test]
fn pipeline_matches_library_composition() {
    let simplex = run(&["gen", "simplex", "--n", "3"]);
    assert_eq!(simplex.code, 0);
    let tupled = run_with(&["op", "tuple", "--r", "2"], &simplex.stdout);
    assert_eq!(tupled.code, 0);
    let homology = run_with(&["homology"], &tupled.stdout);
    assert_eq!(homology.code, 0, "{}", homology.stderr);

    let l = Limits::default();
    let t = r_tuple(&SimplicialComplex::simplex(3), 2, &l).unwrap();
    let groups = all_reduced_homology(&t.complex, &l).unwrap();
    assert_eq!(json(&homology.stdout), serde_json::to_value(&groups).unwrap());
    // three disjoint edges: H~_0 = Z^2
    assert_eq!(json(&homology.stdout)[0]["free_rank"], 2);
    assert_eq!(parse_complex(&tupled.stdout, &l).unwrap(), t.complex);
}

#[test]
fn binary_pipeline_through_real_pipes() {
    let exe = env!("CARGO_BIN_EXE_tuplex");
    let step = |args: &[&str], input: &[u8]| {
        let mut child = Command::new(exe)
            .args(args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()
            .unwrap();
        child.stdin.take().unwrap().write_all(input).unwrap();
        let out = child.wait_with_output().unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let a = step(&["gen", "simplex", "--n", "3"], b"");
    let b = step(&["op", "tuple", "--r", "2"], &a);
    let c = step(&["homology"], &b);
    let inproc = run_with(&["homology"], &run_with(&["op", "tuple", "--r", "2"], &run(&["gen", "simplex", "--n", "3"]).stdout).stdout);
    assert_eq!(String::from_utf8(c).unwrap(), inproc.stdout);
}

#[test]
fn output_is_deterministic_across_runs_and_jobs() {
    let cases: &[&[&str]] = &[
        &["verify", "theorem22", "--n", "5", "--r", "2"],
        &["verify", "prop44", "--n", "3", "--r", "2"],
        &["verify", "iso", "--n", "5", "--r", "2"],
        &["gen", "hypergraph-matching", "--n", "7", "--r", "2"],
    ];
    for args in cases {
        let one = run(&[&["--jobs", "1"], *args].concat());
        let again = run(&[&["--jobs", "1"], *args].concat());
        let four = run(&[&["--jobs", "4"], *args].concat());
        assert_eq!(one.stdout, again.stdout, "{args:?}");
        assert_eq!(one.stdout, four.stdout, "{args:?} with 4 jobs");
        assert_eq!(one.code, 0, "{args:?}: {}", one.stderr);
    }
    let sphere = run(&["gen", "boundary", "--n", "4"]).stdout;
    let a = run_with(&["--jobs", "1", "wcm", "--dim", "3"], &sphere);
    let b = run_with(&["--jobs", "4", "wcm", "--dim", "3"], &sphere);
    assert_eq!(a.stdout, b.stdout);
}

fn validator() -> jsonschema::JSONSchema {
    let text = include_str!("../schema/verify-report.schema.json");
    jsonschema::JSONSchema::compile(&json(text)).expect("schema compiles")
}

fn assert_valid(schema: &jsonschema::JSONSchema, doc: &Value) {
    if let Err(errors) = schema.validate(doc) {
        let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("schema violations: {msgs:?}\n{doc}");
    }
}

#[test]
fn every_verify_report_matches_schema() {
    let schema = validator();
    let sphere = run(&["gen", "boundary", "--n", "3"]).stdout;
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["verify", "theorem1", "--n", "2", "--r", "2"], sphere.as_str()),
        (vec!["verify", "theorem22", "--n", "5", "--r", "2"], ""),
        (vec!["verify", "lemma31", "--n", "2", "--m", "2"], sphere.as_str()),
        (vec!["verify", "link-lemma", "--r", "2"], sphere.as_str()),
        (vec!["verify", "iso", "--n", "5", "--r", "2"], ""),
        (vec!["verify", "prop44", "--n", "3", "--r", "2"], ""),
        (vec!["verify", "prop45", "--n", "3", "--r", "2"], ""),
        (vec!["wcm", "--dim", "2"], sphere.as_str()),
        (vec!["--timing", "verify", "iso", "--n", "4", "--r", "2"], ""),
    ];
    for (args, input) in cases {
        let r = run_with(&args, input);
        let doc = json(&r.stdout);
        assert_valid(&schema, &doc);
        let verdict = doc["verdict"].as_str().unwrap();
        let expected = match verdict {
            "pass-certified" | "pass-homological" => 0,
            "fail" => 1,
            _ => 2,
        };
        assert_eq!(r.code, expected, "{args:?}");
        assert_eq!(doc["report"]["verdict"], doc["verdict"], "{args:?}");
    }
}

#[test]
fn budget_exhaustion_is_reported_not_crashed() {
    let schema = validator();
    let r = run(&["--budget-simplices", "50", "verify", "theorem22", "--n", "7", "--r", "2"]);
    assert_eq!(r.code, 2, "{}", r.stdout);
    let doc = json(&r.stdout);
    assert_valid(&schema, &doc);
    assert_eq!(doc["verdict"], "budget-exceeded");
    assert_eq!(doc["error"]["code"], "budget-exceeded");
    assert_eq!(doc["limits"]["simplices"], 50);

    // outside a verification the budget error goes to stderr
    let r = run(&["--budget-simplices", "10", "gen", "hypergraph-matching", "--n", "8", "--r", "2"]);
    assert_eq!(r.code, 2);
    assert_eq!(error_code(&r), "budget-exceeded");
    assert!(r.stdout.is_empty());
}

#[test]
fn failing_wcm_exits_one() {
    // two disjoint points are not 0-connected
    let r = run_with(&["wcm", "--dim", "1"], r#"{"vertices":2,"facets":[[0],[1]]}"#);
    assert_eq!(r.code, 1);
    assert_eq!(json(&r.stdout)["verdict"], "fail");
}

#[test]
fn negative_wcm_dimension_is_accepted() {
    let r = run_with(&["wcm", "--dim", "-1"], r#"{"vertices":1,"facets":[[0]]}"#);
    assert_eq!(r.code, 0, "{}", r.stderr);
}

#[test]
fn homology_degree_beyond_dimension_is_zero() {
    let tri = run(&["gen", "simplex", "--n", "2"]).stdout;
    let r = run_with(&["homology", "--degree", "5"], &tri);
    assert_eq!(r.code, 0);
    assert_eq!(json(&r.stdout), json(r#"{"degree":5,"free_rank":0,"torsion":[]}"#));
}

#[test]
fn homology_modes() {
    let circle = run(&["gen", "boundary", "--n", "2"]).stdout;
    let r = run_with(&["homology", "--degree", "1"], &circle);
    assert_eq!(json(&r.stdout)["free_rank"], 1);
    let r = run_with(&["homology", "--mod", "3"], &circle);
    let betti: Vec<u64> = json(&r.stdout).as_array().unwrap().iter().map(|v| v["betti"].as_u64().unwrap()).collect();
    assert_eq!(betti, [0, 1]);
    let r = run_with(&["homology", "--mod", "4"], &circle);
    assert_eq!(r.code, 1);
    assert_eq!(error_code(&r), "invalid-input");
    let r = run_with(&["homology", "--connectivity"], &circle);
    assert_eq!(json(&r.stdout)["homological_connectivity"], 0);
}

#[test]
fn error_codes_and_exit_statuses() {
    let r = run(&["frobnicate"]);
    assert_eq!((r.code, error_code(&r).as_str()), (1, "usage"));

    let r = run_with(&["homology"], "{not json");
    assert_eq!((r.code, error_code(&r).as_str()), (1, "malformed-json"));

    let r = run_with(&["homology"], r#"{"vertices":2,"facets":[[0,2]]}"#);
    assert_eq!((r.code, error_code(&r).as_str()), (1, "undeclared-vertex"));

    let r = run_with(&["op", "link", "--simplex", "0,3"], r#"{"vertices":4,"facets":[[0,1,2]]}"#);
    assert_eq!((r.code, error_code(&r).as_str()), (1, "not-a-simplex"));

    let r = run(&["op", "info", "/nonexistent/complex.json"]);
    assert_eq!((r.code, error_code(&r).as_str()), (1, "invalid-input"));

    let r = run(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("Usage"));
}

#[test]
fn table_out_writes_labels() {
    let dir = std::env::temp_dir().join(format!("tuplex-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.json");
    let simplex = run(&["gen", "simplex", "--n", "3"]).stdout;
    let r = run_with(&["op", "tuple", "--r", "2", "--table-out", path.to_str().unwrap()], &simplex);
    assert_eq!(r.code, 0);
    let table = json(&std::fs::read_to_string(&path).unwrap());
    // one label per edge of the tetrahedron, keyed by vertex id
    assert_eq!(table["labels"].as_object().unwrap().len(), 6);
    assert_eq!(table["labels"]["0"], json("[0,1]"));
    assert_eq!(table["labels"]["5"], json("[2,3]"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn graph_matching_equals_hypergraph_matching() {
    let k6 = run(&["gen", "complete-graph", "--n", "6"]).stdout;
    let a = run_with(&["op", "matching"], &k6);
    let b = run(&["gen", "hypergraph-matching", "--n", "6", "--r", "2"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn human_output_renders() {
    let r = run(&["--human", "verify", "iso", "--n", "4", "--r", "2"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("verify iso: pass-certified"), "{}", r.stdout);
    let circle = run(&["gen", "boundary", "--n", "2"]).stdout;
    let r = run_with(&["--format", "human", "homology"], &circle);
    assert_eq!(r.stdout, "H~_0 = 0\nH~_1 = Z\n");
}

#[test]
fn injective_words_homology_is_concentrated_in_top_degree() {
    let r = run(&["destab", "injective-words", "--n", "3", "--homology"]);
    let groups = json(&r.stdout);
    let ranks: Vec<u64> = groups.as_array().unwrap().iter().map(|g| g["free_rank"].as_u64().unwrap()).collect();
    // derangements of 3 letters: 2
    assert_eq!(ranks, [0, 0, 2]);
}
