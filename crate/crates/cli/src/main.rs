use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use panoplan::planner::{
    export_report, load_floorplan, parse_json, read_file, verify_placements, PlacementsDoc, SolutionDoc,
};
use panoplan::{plan, PlanRequest, SolveStatus};
use panoplan_cli::options::{SamplingArgs, SolverArg};

#[derive(Parser)]
#[command(name = "panoplan", version, about = "Minimal 360-degree camera placement for floorplans")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a camera placement covering every coverable wall point.
    Plan {
        floorplan: PathBuf,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long, value_enum, default_value_t = SolverArg::Exact)]
        solver: SolverArg,
        /// Exact solver time budget, in seconds.
        #[arg(long, default_value_t = 60.0)]
        time_budget: f64,
        /// Solution document path; printed to stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Report which wall points a given set of camera positions misses.
    Verify {
        floorplan: PathBuf,
        /// JSON list of [x, y] points, or a solution document.
        placements: PathBuf,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Serve the HTTP API (and optionally the web client).
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        bind: String,
        #[arg(long)]
        static_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Plan {
            floorplan,
            sampling,
            solver,
            time_budget,
            out,
            svg,
        } => {
            let (f, warnings) = load_floorplan(&floorplan)?;
            for w in &warnings {
                eprintln!("warning: {w}");
            }
            let req = PlanRequest {
                floorplan: f,
                sampling: sampling.sampling(),
                constraints: sampling.constraints(),
                solver: solver.into(),
                time_budget,
            };
            let report = plan(&req).with_context(|| format!("planning {}", floorplan.display()))?;
            export_report(&report, &req.floorplan, out.as_deref(), svg.as_deref())?;
            if out.is_none() {
                println!("{}", serde_json::to_string_pretty(&SolutionDoc::from(&report))?);
            }
            let s = &report.stats;
            eprintln!(
                "{} cameras ({:?}), {} boundary points, {} candidates, {} pairs, {} uncoverable; \
                 matrix {:.2}s, solve {:.2}s",
                report.solution.objective,
                report.solution.status,
                s.n_boundary,
                s.n_candidates,
                s.pair_count,
                report.missed_boundary.len(),
                s.matrix_build_time_s,
                s.solve_time_s,
            );
            if report.solution.status == SolveStatus::FeasibleBoundGap && solver == SolverArg::Exact {
                eprintln!(
                    "time budget reached: best known {}, lower bound {}",
                    report.solution.objective, report.solution.diagnostics.lower_bound
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            floorplan,
            placements,
            sampling,
        } => {
            let (f, _) = load_floorplan(&floorplan)?;
            let doc: PlacementsDoc = parse_json(&read_file(&placements)?)
                .with_context(|| format!("reading {}", placements.display()))?;
            let report = verify_placements(&f, doc.points(), &sampling.sampling(), &sampling.constraints())?;
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::json!({
                    "n_cameras": doc.points().len(),
                    "n_boundary": report.boundary.len(),
                    "covered": report.covered,
                    "missed": report.missed,
                }))?
            );
            eprintln!(
                "{} cameras cover {}/{} boundary points",
                doc.points().len(),
                report.covered.len(),
                report.boundary.len()
            );
            Ok(if report.missed.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Serve { bind, static_dir } => {
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(panoplan_cli::server::serve(&bind, static_dir))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
