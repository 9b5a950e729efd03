mod common;

use std::process::{Command, Output};

use prn_core::netio::{matrix_from_csv, parse_network};
use prn_core::transition_matrix;

use common::{fixture, fixture_dir};

fn prn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prn"))
        .args(args)
        .current_dir(fixture_dir())
        .env_remove("PRN_ENUM_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn matrix_csv_matches_library() {
    let o = prn(&["matrix", "xbar.prn"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    assert_eq!(
        csv,
        "\"(0,0)\",\"(0,1)\",\"(1,0)\",\"(1,1)\"\n\
         0.67,0,0.33,0\n\
         0.21,0.46,0.11,0.22\n\
         0,0,1,0\n\
         0,0,0.32,0.68\n"
    );
    let t = matrix_from_csv(&csv).unwrap();
    assert_eq!(
        t,
        transition_matrix(&parse_network(&fixture("xbar.prn")).unwrap())
    );
}

#[test]
fn matrix_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let o = prn(&["matrix", "x1.prn", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let t = matrix_from_csv(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(t.get(1, 0), 0.28);
}

#[test]
fn hom_check_reports_epsilon() {
    let o = prn(&[
        "hom",
        "check",
        "x1.prn",
        "xbar.prn",
        "--map",
        "identity.map.json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.starts_with("homomorphism: yes, epsilon = 0.11\n"),
        "{text}"
    );
    assert!(text.contains("isomorphism: no"));
    assert!(text.contains("correspondence: f1->f1 f2->f2 f3->f3"));
}

#[test]
fn hom_check_negative_has_counterexample() {
    // xbar has a function x1 lacks, so the reverse map fails condition 1
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("rev.map.json");
    std::fs::write(
        &map,
        r#"{"map": {"(0,0)": "(0,0)", "(0,1)": "(0,1)", "(1,0)": "(1,0)", "(1,1)": "(1,1)"}}"#,
    )
    .unwrap();
    let o = prn(&[
        "hom",
        "check",
        "xbar.prn",
        "x1.prn",
        "--map",
        map.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.starts_with("homomorphism: no"), "{text}");
    assert!(text.contains("counterexample: "), "{text}");
}

#[test]
fn isomorphism_detected() {
    let o = prn(&[
        "hom",
        "check",
        "fds-x.prn",
        "fds-y.prn",
        "--map",
        "fds-iso.map.json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("isomorphism: yes"));
}

#[test]
fn validate_accepts_and_rejects() {
    let o = prn(&["validate", "xbar.prn"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "ok: xbar (4 states, 4 functions)\n");

    let o = prn(&["validate", "bad.prn"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("probabilities sum to 0.9"));
}

#[test]
fn missing_file_is_a_usage_error() {
    let o = prn(&["validate", "no-such-file.prn"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: "));
}

#[test]
fn parse_error_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.prn");
    std::fs::write(
        &path,
        "network b\nstates a b\nfunction f prob 1\na -> c\nend\n",
    )
    .unwrap();
    let o = prn(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
}

#[test]
fn enumeration_lists_maps_and_total() {
    let o = prn(&["hom", "enum", "a1a2.prn", "a1a3.prn"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines.last().unwrap(),
        &format!("total: {}", lines.len() - 1)
    );
    assert!(lines[0].starts_with("(0,0)->(0,0) (0,1)->(0,0) (1,0)->(0,0) (1,1)->(0,0)"));

    let o = prn(&["hom", "enum", "a1a2.prn", "a1a3.prn", "--bijective"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "total: 0\n");
}

#[test]
fn enumeration_cap_from_flag_and_environment() {
    let o = prn(&["hom", "enum", "a1a2.prn", "a1a3.prn", "--cap", "10"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("capacity exceeded"));

    let o = Command::new(env!("CARGO_BIN_EXE_prn"))
        .args(["hom", "enum", "a1a2.prn", "a1a3.prn"])
        .current_dir(fixture_dir())
        .env("PRN_ENUM_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));

    // the flag wins over the environment
    let o = Command::new(env!("CARGO_BIN_EXE_prn"))
        .args(["hom", "enum", "a1a2.prn", "a1a3.prn", "--cap", "1000"])
        .current_dir(fixture_dir())
        .env("PRN_ENUM_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn steady_state_lines() {
    let o = prn(&["steady", "chain4.prn"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let w: Vec<f64> = text
        .lines()
        .map(|l| l.split_whitespace().nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(w[0], 0.0);
    assert!((w[1] - 0.013 / 0.675).abs() < 1e-9);
    assert!((w[3] - 0.662 / 0.675).abs() < 1e-9);

    let o = prn(&["steady", "three-gene.prn"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("2 recurrent classes"));
}

#[test]
fn compare_reports_both_verdicts() {
    let o = prn(&[
        "compare",
        "chain4.prn",
        "chain8-top.prn",
        "--map",
        "top.map.json",
        "--epsilon",
        ".005",
        "--max-power",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("[power bound]"));
    assert!(text.contains("[chain similarity]"));
    assert_eq!(text.matches("verdict: yes").count(), 2, "{text}");

    let o = prn(&[
        "compare",
        "chain4.prn",
        "chain8-top.prn",
        "--map",
        "top.map.json",
        "--epsilon",
        ".001",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn subnets_listing() {
    let o = prn(&["subnets", "three-gene.prn", "--irreducible"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{(0,0,0)}\n{(1,1,1)}\n");
    assert!(stderr(&o).contains("lattice closed: yes"));
}

#[test]
fn dot_export() {
    let o = prn(&["dot", "l1l2.prn"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "digraph \"L1L2\" {\n  \"0\";\n  \"1\";\n  \"0\" -> \"0\" [label=\".6\"];\n  \
         \"0\" -> \"1\" [label=\".4\"];\n  \"1\" -> \"1\" [label=\"1\"];\n}\n"
    );
}

#[test]
fn expand_and_capacity() {
    let o = prn(&["expand", "two-gene.pbn.json"]);
    assert_eq!(o.status.code(), Some(0));
    let net = parse_network(&stdout(&o)).unwrap();
    assert_eq!(net.function_count(), 4);
    assert!((net.probs()[0] - 0.3).abs() < 1e-15);

    let o = prn(&["expand", "two-gene.pbn.json", "--cap", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn algebra_commands_produce_valid_networks() {
    let o = prn(&["sum", "l1l2.prn", "l1l3.prn"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(parse_network(&stdout(&o)).unwrap().len(), 4);

    let o = prn(&["product", "l1l2.prn", "l1l3.prn"]);
    assert_eq!(o.status.code(), Some(0));
    let p = parse_network(&stdout(&o)).unwrap();
    assert_eq!(transition_matrix(&p).get(1, 1), 0.6 * 0.7);

    let o = prn(&["product", "l1l2.prn", "l1l3.prn", "--combine", "average"]);
    assert_eq!(o.status.code(), Some(0));
    parse_network(&stdout(&o)).unwrap();

    let o = prn(&[
        "superpose",
        "fds-x.prn",
        "fds-y.prn",
        "--probs",
        ".6,.4",
        "--name",
        "d",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let d = parse_network(&stdout(&o)).unwrap();
    assert_eq!(d.name(), "d");
    assert_eq!(d.function_count(), 2);
}
