use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use cgl_core::catalog;
use cgl_core::group::DEFAULT_CAP;
use cgl_core::report::{
    analyze_with_cap, render_json, render_markdown, target_graph, AnalysisRecord, AnalyzeError,
    GraphKind, Target, CSV_HEADER,
};
use cgl_core::verify::{case_names, verify_published, DEFAULT_TOLERANCE};

const CACHE_ENV: &str = "CGL_CACHE_DIR";

#[derive(Parser)]
#[command(name = "cgl", version, about = "Commuting graphs of small finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    C,
    Nc,
    Raw,
}

impl From<Kind> for GraphKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::C => GraphKind::Commuting,
            Kind::Nc => GraphKind::NonCommuting,
            Kind::Raw => GraphKind::Raw,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Analyze catalog groups or shape expressions.
    Analyze {
        /// Group names (e.g. "GL(2,3)") or shape expressions (e.g. "K8 + 5*K2").
        #[arg(required = true)]
        targets: Vec<String>,
        #[arg(long, value_enum, default_value = "c")]
        graph: Kind,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Group closure cap.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Worker threads for parallel analyses.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Check the built-in table of published values.
    Verify {
        /// Case name, tag or group name; all cases when omitted.
        case: Option<String>,
        /// Relative tolerance for rounded decimals.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print case names and exit.
        #[arg(long)]
        list: bool,
    },
    /// Write a graph in Graphviz DOT.
    ExportDot {
        target: String,
        #[arg(long, value_enum, default_value = "c")]
        graph: Kind,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// List the group catalog as JSON.
    Catalog {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<&Path>, text: &str) -> io::Result<()> {
    match out {
        Some(p) => fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn warm_cache(targets: &[String], cap: usize) -> Result<(), AnalyzeError> {
    let Some(dir) = std::env::var_os(CACHE_ENV) else { return Ok(()) };
    for t in targets {
        if catalog::is_known(t) {
            catalog::build_cached(t, cap, Some(Path::new(&dir)))?;
        }
    }
    Ok(())
}

fn render(records: &[AnalysisRecord], format: Format) -> String {
    match format {
        Format::Json => render_json(records),
        Format::Md => render_markdown(records),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER).expect("in-memory csv");
            for r in records {
                w.write_record(r.csv_row()).expect("in-memory csv");
            }
            String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
        }
    }
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Analyze { targets, graph, format, out, cap, jobs } => {
            if let Err(e) = warm_cache(&targets, cap) {
                return usage(e);
            }
            let kind = GraphKind::from(graph);
            let work = || -> Vec<Result<AnalysisRecord, AnalyzeError>> {
                targets.par_iter().map(|t| analyze_with_cap(t, kind, cap)).collect()
            };
            let results = match jobs {
                Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                    Ok(pool) => pool.install(work),
                    Err(e) => return usage(e),
                },
                None => work(),
            };
            let mut records = Vec::with_capacity(results.len());
            for (t, r) in targets.iter().zip(results) {
                match r {
                    Ok(rec) => records.push(rec),
                    Err(e) => return usage(format!("{t}: {e}")),
                }
            }
            match emit(out.as_deref(), &render(&records, format)) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => usage(e),
            }
        }
        Command::Verify { case, tolerance, format, out, list } => {
            if list {
                let text: String = case_names().into_iter().map(|c| c + "\n").collect();
                return match emit(out.as_deref(), &text) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => usage(e),
                };
            }
            if !(tolerance.is_finite() && tolerance >= 0.0) {
                return usage("--tolerance must be a non-negative number");
            }
            let report = verify_published(case.as_deref(), tolerance);
            if report.rows.is_empty() {
                return usage(format!(
                    "no verification case matches `{}`",
                    case.unwrap_or_default()
                ));
            }
            let text = match format {
                Some(Format::Json) => {
                    serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
                }
                Some(Format::Csv) => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["case", "item", "status", "expected", "computed", "corrected", "note"])
                        .expect("in-memory csv");
                    for r in &report.rows {
                        w.write_record([
                            r.case.as_str(),
                            &r.item,
                            &r.status.to_string(),
                            &r.expected,
                            &r.computed,
                            r.corrected.as_deref().unwrap_or(""),
                            r.note.as_deref().unwrap_or(""),
                        ])
                        .expect("in-memory csv");
                    }
                    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
                }
                _ => report.to_string(),
            };
            if let Err(e) = emit(out.as_deref(), &text) {
                return usage(e);
            }
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::ExportDot { target, graph, out, cap } => {
            if let Err(e) = warm_cache(std::slice::from_ref(&target), cap) {
                return usage(e);
            }
            let g = Target::resolve(&target).and_then(|t| target_graph(&t, graph.into(), cap));
            match g {
                Ok(g) => match emit(out.as_deref(), &g.to_dot(&target)) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => usage(e),
                },
                Err(e) => usage(e),
            }
        }
        Command::Catalog { out } => {
            let text = serde_json::to_string_pretty(&catalog::listing()).expect("listing serializes");
            match emit(out.as_deref(), &(text + "\n")) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => usage(e),
            }
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse())
}
