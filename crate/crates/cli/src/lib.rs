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

//! Command-line front end: argument parsing, report rendering and exit
//! codes. The binary is a thin wrapper around [`run`].

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use edgecolour::colouring::{
    chromatic_index, exact_k_edge_colourable, validate_colouring, EdgeColouring, ExactOutcome,
    Validation, DEFAULT_BUDGET,
};
use edgecolour::format::{
    parse_colouring, parse_graph, parse_reduction_report, write_colouring, write_graph,
    write_reduction_report,
};
use edgecolour::generate::gen_k_regular;
use edgecolour::hardness::{
    build_claw_free_instance, extract_colouring, kneven_colouring, lift_colouring,
};
use edgecolour::recognition::{
    classify_h, is_h_free, is_induced_embedding, Freeness, HClassification,
};
use edgecolour::tractable::{decide_pt_free, NoReason, PtFreeVerdict};
use edgecolour::{Error, Graph};
use serde::Serialize;

pub const EXIT_VERDICT: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "edgecolour",
    version,
    about = "Edge colouring of H-free graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Search node budget for exact decisions.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Seed for randomised commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the certificate (graph, colouring or report) to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print the run report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads. Results do not depend on this value.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Chromatic index with a certificate colouring.
    ChromaticIndex { graph: PathBuf },
    /// Exact k-edge-colourability.
    Decide {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Classify a forbidden graph H.
    ClassifyH { graph: PathBuf },
    /// Test whether a graph is H-free.
    Hfree {
        graph: PathBuf,
        #[arg(long)]
        h: PathBuf,
    },
    /// Build the claw-free instance of a k-regular graph.
    Reduce {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Carry a source colouring onto the reduced graph.
    Lift {
        report: PathBuf,
        #[arg(long)]
        colouring: PathBuf,
    },
    /// Restrict a colouring of the reduced graph to the source.
    Extract {
        report: PathBuf,
        #[arg(long)]
        colouring: PathBuf,
    },
    /// Structured k-edge-colouring of K_k for even k.
    Kneven {
        #[arg(long)]
        k: usize,
    },
    /// Decide k-edge-colourability of a P_t-free graph.
    DecidePtfree {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
    },
    /// Random k-regular graph on n vertices.
    GenRegular {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Check a colouring file against a graph.
    Verify {
        graph: PathBuf,
        #[arg(long)]
        colouring: PathBuf,
        #[arg(long)]
        k: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::ChromaticIndex { .. } => "chromatic-index",
            Command::Decide { .. } => "decide",
            Command::ClassifyH { .. } => "classify-h",
            Command::Hfree { .. } => "hfree",
            Command::Reduce { .. } => "reduce",
            Command::Lift { .. } => "lift",
            Command::Extract { .. } => "extract",
            Command::Kneven { .. } => "kneven",
            Command::DecidePtfree { .. } => "decide-ptfree",
            Command::GenRegular { .. } => "gen-regular",
            Command::Verify { .. } => "verify",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputSummary {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub min_degree: usize,
    pub regular: bool,
}

impl InputSummary {
    pub fn of(g: &Graph) -> InputSummary {
        let profile = g.degree_profile();
        InputSummary {
            n: g.vertex_count(),
            m: g.edge_count(),
            max_degree: profile.max_degree,
            min_degree: profile.min_degree,
            regular: profile.is_regular,
        }
    }
}

/// Everything a run produced. Apart from `time_ms` it is a function of the
/// arguments and input files.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub input: Option<InputSummary>,
    pub verdict: String,
    pub details: BTreeMap<String, String>,
    /// Certificate text, or `None` when there is none or it went to `--out`.
    pub certificate: Option<String>,
    pub certificate_file: Option<PathBuf>,
    pub seed: u64,
    pub time_ms: f64,
}

impl RunReport {
    fn new(command: &str, seed: u64) -> RunReport {
        RunReport {
            command: command.to_string(),
            input: None,
            verdict: String::new(),
            details: BTreeMap::new(),
            certificate: None,
            certificate_file: None,
            seed,
            time_ms: 0.0,
        }
    }

    fn detail(&mut self, key: &str, value: impl ToString) {
        self.details.insert(key.to_string(), value.to_string());
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        if let Some(s) = &self.input {
            let _ = writeln!(
                out,
                "input: n={} m={} max_degree={} min_degree={} regular={}",
                s.n, s.m, s.max_degree, s.min_degree, s.regular
            );
        }
        let _ = writeln!(out, "verdict: {}", self.verdict);
        for (key, value) in &self.details {
            let _ = writeln!(out, "{key}: {value}");
        }
        let _ = writeln!(out, "seed: {}", self.seed);
        let _ = writeln!(out, "time_ms: {:.3}", self.time_ms);
        if let Some(path) = &self.certificate_file {
            let _ = writeln!(out, "certificate: written to {}", path.display());
        } else if let Some(text) = &self.certificate {
            out.push_str("certificate:\n");
            out.push_str(text);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises") + "\n"
    }
}

/// A failed run: the message and the process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl CliError {
    fn input(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn budget(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_BUDGET,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = if e.is_budget() {
            EXIT_BUDGET
        } else if e.is_internal() {
            EXIT_INTERNAL
        } else {
            EXIT_INPUT
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    parse_graph(&read_file(path)?).map_err(|e| {
        let mut err = CliError::from(e);
        err.message = format!("{}: {}", path.display(), err.message);
        err
    })
}

fn load_colouring(path: &Path, k: usize) -> Result<EdgeColouring, CliError> {
    parse_colouring(&read_file(path)?, k).map_err(|e| {
        let mut err = CliError::from(e);
        err.message = format!("{}: {}", path.display(), err.message);
        err
    })
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses `argv` (including the program name) and executes the command.
/// Usage errors are returned with their rendered clap message.
pub fn run_command<I, T>(argv: I) -> Result<RunReport, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError {
        code: e.exit_code(),
        message: e.render().to_string(),
    })?;
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let mut report = RunReport::new(cli.command.name(), cli.seed);
    let certificate = dispatch(cli, &mut report)?;
    match (&cli.out, certificate) {
        (Some(path), Some(text)) => {
            std::fs::write(path, text)
                .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            report.certificate_file = Some(path.clone());
        }
        (_, certificate) => report.certificate = certificate,
    }
    report.time_ms = (start.elapsed().as_secs_f64() * 1e6).round() / 1000.0;
    Ok(report)
}

/// Runs the command, fills `report` and returns the certificate text.
fn dispatch(cli: &Cli, report: &mut RunReport) -> Result<Option<String>, CliError> {
    match &cli.command {
        Command::ChromaticIndex { graph } => {
            let g = load_graph(graph)?;
            report.input = Some(InputSummary::of(&g));
            let ci = chromatic_index(&g, cli.budget)?;
            report.verdict = if ci.is_class_one() {
                "class one"
            } else {
                "class two"
            }
            .into();
            report.detail("chromatic_index", ci.value);
            report.detail("nodes", ci.nodes);
            Ok(Some(write_colouring(&ci.colouring)))
        }
        Command::Decide { graph, k } => {
            let g = load_graph(graph)?;
            report.input = Some(InputSummary::of(&g));
            report.detail("k", k);
            match exact_k_edge_colourable(&g, *k, cli.budget)? {
                ExactOutcome::Colourable { colouring, nodes } => {
                    report.verdict = "Yes".into();
                    report.detail("nodes", nodes);
                    Ok(Some(write_colouring(&colouring)))
                }
                ExactOutcome::NotColourable { nodes } => {
                    report.verdict = "No".into();
                    report.detail("exhaustive", true);
                    report.detail("nodes", nodes);
                    Ok(None)
                }
                ExactOutcome::BudgetExceeded { nodes } => Err(CliError::budget(format!(
                    "budget exceeded: undecided after {nodes} nodes"
                ))),
            }
        }
        Command::ClassifyH { graph } => {
            let h = load_graph(graph)?;
            report.input = Some(InputSummary::of(&h));
            let class = classify_h(&h)?;
            report.verdict = class.case_name().into();
            report.detail("complexity", class.complexity_statement());
            match &class {
                HClassification::ContainsCycle { cycle } => report.detail("cycle", join(cycle)),
                HClassification::ForestWithDegree3Vertex { centre, neighbours } => {
                    report.detail("centre", centre);
                    report.detail("neighbours", join(neighbours));
                }
                HClassification::LinearForest {
                    paths, path_bound, ..
                } => {
                    let listed: Vec<String> = paths.iter().map(|p| join(p)).collect();
                    report.detail("paths", listed.join(" | "));
                    report.detail("path_bound", path_bound);
                }
            }
            Ok(None)
        }
        Command::Hfree { graph, h } => {
            let g = load_graph(graph)?;
            let h = load_graph(h)?;
            report.input = Some(InputSummary::of(&g));
            match is_h_free(&g, &h) {
                Freeness::Free => {
                    report.verdict = "Free".into();
                    Ok(None)
                }
                Freeness::Contains(map) => {
                    if !is_induced_embedding(&g, &h, &map) {
                        return Err(
                            Error::Invariant("witness is not an induced copy".into()).into()
                        );
                    }
                    report.verdict = "Contains".into();
                    let mut text = String::new();
                    for (x, y) in map.iter().enumerate() {
                        let _ = writeln!(text, "{x} -> {y}");
                    }
                    Ok(Some(text))
                }
            }
        }
        Command::Reduce { graph, k } => {
            let g = load_graph(graph)?;
            report.input = Some(InputSummary::of(&g));
            let r = build_claw_free_instance(&g, *k)?;
            r.check()?;
            report.verdict = "built".into();
            report.detail("k", k);
            report.detail("result_n", r.result.vertex_count());
            report.detail("result_m", r.result.edge_count());
            Ok(Some(write_reduction_report(&r)))
        }
        Command::Lift {
            report: path,
            colouring,
        }
        | Command::Extract {
            report: path,
            colouring,
        } => {
            let r = parse_reduction_report(&read_file(path)?)?;
            let c = load_colouring(colouring, r.k)?;
            let lifting = matches!(cli.command, Command::Lift { .. });
            let (from, to, moved) = if lifting {
                (&r.source, &r.result, lift_colouring(&r, &c)?)
            } else {
                (&r.result, &r.source, extract_colouring(&r, &c)?)
            };
            report.input = Some(InputSummary::of(from));
            report.verdict = if lifting { "lifted" } else { "extracted" }.into();
            report.detail("k", r.k);
            report.detail("target_n", to.vertex_count());
            report.detail("target_m", to.edge_count());
            Ok(Some(write_colouring(&moved)))
        }
        Command::Kneven { k } => {
            let s = kneven_colouring(*k)?;
            s.check()?;
            report.verdict = "structured".into();
            report.detail("k", k);
            let pairs: Vec<String> = s.pairs.iter().map(|(a, b)| format!("{a}-{b}")).collect();
            report.detail("pairs", pairs.join(" "));
            report.detail("pair_missed", join(&s.pair_missed));
            report.detail("colour_classes", s.colouring.colours_used().len());
            Ok(Some(write_colouring(&s.colouring)))
        }
        Command::DecidePtfree { graph, k, t } => {
            let g = load_graph(graph)?;
            report.input = Some(InputSummary::of(&g));
            report.detail("k", k);
            report.detail("t", t);
            match decide_pt_free(&g, *k, *t, cli.budget)? {
                PtFreeVerdict::Yes(colouring) => {
                    report.verdict = "Yes".into();
                    Ok(Some(write_colouring(&colouring)))
                }
                PtFreeVerdict::No(reason) => {
                    report.verdict = "No".into();
                    match reason {
                        NoReason::DegreeExceedsK { vertex, degree } => {
                            report.detail("reason", format!("vertex {vertex} has degree {degree}"))
                        }
                        NoReason::Refuted { component } => report.detail(
                            "reason",
                            format!("component {{{}}} refuted exhaustively", join(&component)),
                        ),
                    }
                    Ok(None)
                }
                PtFreeVerdict::InputNotPtFree { witness } => Err(CliError::input(format!(
                    "input is not P_{t}-free: induced path {}",
                    join(&witness)
                ))),
            }
        }
        Command::GenRegular { n, k } => {
            let g = gen_k_regular(*n, *k, cli.seed)?;
            report.input = Some(InputSummary::of(&g));
            report.verdict = "generated".into();
            Ok(Some(write_graph(&g)))
        }
        Command::Verify {
            graph,
            colouring,
            k,
        } => {
            let g = load_graph(graph)?;
            report.input = Some(InputSummary::of(&g));
            report.detail("k", k);
            let c = load_colouring(colouring, *k)?;
            match validate_colouring(&g, &c)? {
                Validation::Proper => report.verdict = "Proper".into(),
                Validation::Conflict(conflict) => {
                    report.verdict = "Conflict".into();
                    report.detail(
                        "conflict",
                        format!(
                            "edges {} and {} share colour {} at vertex {}",
                            conflict.first, conflict.second, conflict.colour, conflict.vertex
                        ),
                    );
                }
            }
            Ok(None)
        }
    }
}

/// Runs the CLI against the given streams and returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let stream: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(stream, "{}", e.render());
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let text = if cli.json {
                report.to_json()
            } else {
                report.to_text()
            };
            let _ = stdout.write_all(text.as_bytes());
            EXIT_VERDICT
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}
