// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::path::{Path, PathBuf};
use std::process::Command;

use edgecolour::colouring::validate_colouring;
use edgecolour::format::{parse_colouring, parse_graph, parse_reduction_report};
use edgecolour::{named, Error};
use edgecolour_cli::{run_command, CliError, EXIT_BUDGET, EXIT_INPUT, EXIT_INTERNAL};
use tempfile::TempDir;

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn graph_file(dir: &TempDir, name: &str, g: &edgecolour::Graph) -> PathBuf {
    write(dir, name, &edgecolour::format::write_graph(g))
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_edgecolour"))
        .args(args)
        .output()
        .unwrap();
    (
        output.status.code().unwrap(),
        String::from_utf8(output.stdout).unwrap(),
        String::from_utf8(output.stderr).unwrap(),
    )
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn field<'a>(report: &'a str, key: &str) -> &'a str {
    let prefix = format!("{key}: ");
    report
        .lines()
        .find_map(|l| l.strip_prefix(prefix.as_str()))
        .unwrap_or_else(|| panic!("no {key} in\n{report}"))
}

#[test]
fn decide_complete_graphs() {
    let dir = TempDir::new().unwrap();
    let k5 = graph_file(&dir, "k5.txt", &named::complete(5));
    let (code, out, _) = cli(&["decide", p(&k5), "--k", "4"]);
    assert_eq!(code, 0);
    assert_eq!(field(&out, "verdict"), "No");
    assert_eq!(field(&out, "exhaustive"), "true");

    let cert = dir.path().join("c.txt");
    let (code, out, _) = cli(&["decide", p(&k5), "--k", "5", "--out", p(&cert)]);
    assert_eq!(code, 0);
    assert_eq!(field(&out, "verdict"), "Yes");
    let (code, out, _) = cli(&["verify", p(&k5), "--colouring", p(&cert), "--k", "5"]);
    assert_eq!((code, field(&out, "verdict")), (0, "Proper"));
}

#[test]
fn chromatic_index_certificate_revalidates() {
    let report = run_command(["edgecolour", "chromatic-index", "/nonexistent"]).unwrap_err();
    assert_eq!(report.code, EXIT_INPUT);
    let dir = TempDir::new().unwrap();
    let g = named::petersen();
    let path = graph_file(&dir, "petersen.txt", &g);
    let report = run_command(["edgecolour", "chromatic-index", p(&path)]).unwrap();
    assert_eq!(report.verdict, "class two");
    assert_eq!(report.details["chromatic_index"], "4");
    let c = parse_colouring(report.certificate.as_deref().unwrap(), 4).unwrap();
    assert!(validate_colouring(&g, &c).unwrap().is_proper());
}

#[test]
fn classify_forbidden_graphs() {
    let dir = TempDir::new().unwrap();
    let claw = graph_file(&dir, "claw.txt", &named::star(3));
    let (code, out, _) = cli(&["classify-h", p(&claw)]);
    assert_eq!(code, 0);
    assert_eq!(field(&out, "verdict"), "ForestWithDegree3Vertex");
    assert!(field(&out, "complexity").starts_with("NP-complete"));

    let forest = graph_file(&dir, "2p2.txt", &named::linear_forest(&[2, 2]));
    let (_, out, _) = cli(&["classify-h", p(&forest)]);
    assert_eq!(field(&out, "verdict"), "LinearForest");
    assert_eq!(field(&out, "path_bound"), "6");
    assert!(field(&out, "complexity").starts_with("polynomial-time"));

    let triangle = graph_file(&dir, "c3.txt", &named::cycle(3));
    let (_, out, _) = cli(&["classify-h", p(&triangle)]);
    assert_eq!(field(&out, "verdict"), "ContainsCycle");
}

#[test]
fn kneven_dump() {
    let report = run_command(["edgecolour", "kneven", "--k", "4"]).unwrap();
    assert_eq!(report.details["colour_classes"], "4");
    let c = parse_colouring(report.certificate.as_deref().unwrap(), 4).unwrap();
    assert!(validate_colouring(&named::complete(4), &c)
        .unwrap()
        .is_proper());
    assert_eq!(
        run_command(["edgecolour", "kneven", "--k", "5"])
            .unwrap_err()
            .code,
        EXIT_INPUT
    );
}

#[test]
fn reduce_lift_extract_pipeline() {
    let dir = TempDir::new().unwrap();
    let source = dir.path().join("g.txt");
    let (code, _, _) = cli(&[
        "gen-regular",
        "--n",
        "6",
        "--k",
        "4",
        "--seed",
        "0",
        "--out",
        p(&source),
    ]);
    assert_eq!(code, 0);
    let colouring = dir.path().join("c.txt");
    let (code, out, _) = cli(&["decide", p(&source), "--k", "4", "--out", p(&colouring)]);
    assert_eq!((code, field(&out, "verdict")), (0, "Yes"));

    let report = dir.path().join("r.txt");
    let (code, out, _) = cli(&["reduce", p(&source), "--k", "4", "--out", p(&report)]);
    assert_eq!(code, 0);
    assert_eq!(field(&out, "result_n"), "54");
    assert_eq!(field(&out, "result_m"), "108");
    let r = parse_reduction_report(&std::fs::read_to_string(&report).unwrap()).unwrap();

    let lifted = dir.path().join("lifted.txt");
    let (code, _, err) = cli(&[
        "lift",
        p(&report),
        "--colouring",
        p(&colouring),
        "--out",
        p(&lifted),
    ]);
    assert_eq!(code, 0, "{err}");
    let c = parse_colouring(&std::fs::read_to_string(&lifted).unwrap(), 4).unwrap();
    assert!(validate_colouring(&r.result, &c).unwrap().is_proper());

    let back = dir.path().join("back.txt");
    let (code, _, _) = cli(&[
        "extract",
        p(&report),
        "--colouring",
        p(&lifted),
        "--out",
        p(&back),
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        parse_colouring(&std::fs::read_to_string(&back).unwrap(), 4).unwrap(),
        parse_colouring(&std::fs::read_to_string(&colouring).unwrap(), 4).unwrap()
    );

    let (code, _, err) = cli(&["lift", p(&report), "--colouring", p(&lifted)]);
    assert_eq!(code, EXIT_INPUT, "{err}");
}

#[test]
fn hfree_reports_a_witness() {
    let dir = TempDir::new().unwrap();
    let g = graph_file(&dir, "p5.txt", &named::path(5));
    let h = graph_file(&dir, "p3.txt", &named::path(3));
    let report = run_command(["edgecolour", "hfree", p(&g), "--h", p(&h)]).unwrap();
    assert_eq!(report.verdict, "Contains");
    let map: Vec<usize> = report
        .certificate
        .unwrap()
        .lines()
        .map(|l| l.split(" -> ").nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(edgecolour::recognition::is_induced_embedding(
        &named::path(5),
        &named::path(3),
        &map
    ));
    let claw = graph_file(&dir, "claw.txt", &named::star(3));
    let report = run_command(["edgecolour", "hfree", p(&g), "--h", p(&claw)]).unwrap();
    assert_eq!(report.verdict, "Free");
}

#[test]
fn decide_ptfree_verdicts() {
    let dir = TempDir::new().unwrap();
    let k4 = graph_file(&dir, "k4.txt", &named::complete(4));
    let report = run_command([
        "edgecolour",
        "decide-ptfree",
        p(&k4),
        "--k",
        "3",
        "--t",
        "4",
    ])
    .unwrap();
    assert_eq!(report.verdict, "Yes");
    let k5 = graph_file(&dir, "k5.txt", &named::complete(5));
    let report = run_command([
        "edgecolour",
        "decide-ptfree",
        p(&k5),
        "--k",
        "4",
        "--t",
        "4",
    ])
    .unwrap();
    assert_eq!(report.verdict, "No");
    assert!(report.details["reason"].contains("refuted"));
    let path = graph_file(&dir, "p6.txt", &named::path(6));
    let err = run_command([
        "edgecolour",
        "decide-ptfree",
        p(&path),
        "--k",
        "3",
        "--t",
        "5",
    ])
    .unwrap_err();
    assert_eq!(err.code, EXIT_INPUT);
}

#[test]
fn generation_is_reproducible() {
    let (code, out, _) = cli(&["gen-regular", "--n", "5", "--k", "4"]);
    assert_eq!(code, 0);
    let text = out.split("certificate:\n").nth(1).unwrap();
    assert_eq!(parse_graph(text).unwrap(), named::complete(5));
    let strip = |s: String| -> String { s.lines().filter(|l| !l.starts_with("time_ms")).collect() };
    let a = cli(&["gen-regular", "--n", "12", "--k", "5", "--seed", "9"]).1;
    let b = cli(&[
        "gen-regular",
        "--n",
        "12",
        "--k",
        "5",
        "--seed",
        "9",
        "--threads",
        "4",
    ])
    .1;
    assert_eq!(strip(a), strip(b));
    let (code, _, err) = cli(&["gen-regular", "--n", "5", "--k", "3"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("infeasible degree sequence"), "{err}");
}

#[test]
fn json_mirror() {
    let (code, out, _) = cli(&["kneven", "--k", "6", "--json"]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(value["command"], "kneven");
    assert_eq!(value["details"]["k"], "6");
    assert_eq!(value["seed"], 0);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    assert_eq!(cli(&["colour-everything"]).0, EXIT_INPUT);
    assert_eq!(cli(&["--help"]).0, 0);
    let bad = write(&dir, "bad.txt", "2 1\n0 0\n");
    let (code, _, err) = cli(&["decide", p(&bad), "--k", "3"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("line 2") && err.contains("loop"), "{err}");
    let petersen = graph_file(&dir, "petersen.txt", &named::petersen());
    let (code, _, _) = cli(&["decide", p(&petersen), "--k", "3", "--budget", "3"]);
    assert_eq!(code, EXIT_BUDGET);
    let (code, _, _) = cli(&["chromatic-index", p(&petersen), "--budget", "3"]);
    assert_eq!(code, EXIT_BUDGET);
    assert_eq!(
        CliError::from(Error::Invariant("x".into())).code,
        EXIT_INTERNAL
    );
    assert_eq!(cli(&["kneven", "--k", "4", "--threads", "0"]).0, EXIT_INPUT);
}

#[test]
fn verify_reports_conflicts() {
    let dir = TempDir::new().unwrap();
    let g = graph_file(&dir, "p3.txt", &named::path(3));
    let c = write(&dir, "c.txt", "0 1 1\n1 2 1\n");
    let (code, out, _) = cli(&["verify", p(&g), "--colouring", p(&c), "--k", "2"]);
    assert_eq!((code, field(&out, "verdict")), (0, "Conflict"));
    let partial = write(&dir, "partial.txt", "0 1 1\n");
    assert_eq!(
        cli(&["verify", p(&g), "--colouring", p(&partial), "--k", "2"]).0,
        EXIT_INPUT
    );
}
