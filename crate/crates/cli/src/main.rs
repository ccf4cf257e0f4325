//! `damstep`: solve, sample, sweep and verify dam breaks over a bed step.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 bad input, 3 domain error.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod output;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use damstep::verify::{check_solution, ResidualReport};
use damstep::{solve_dam, DamOutcome, SolutionField};

use config::{parse_grid, Grid, Key, ProblemConfig};
use output::{branch_name, fmt12, SolutionSummary, VerifyOut};

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Domain(String),
    Verify(Vec<String>),
    Io(io::Error),
}

impl From<damstep::Error> for CliError {
    fn from(e: damstep::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(io::Error::other(e))
    }
}

#[derive(Parser)]
#[command(name = "damstep", version, about = "Dam break over a bed step with a shadow-wave connection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArg {
    /// JSON problem file with keys h_l, u_l, b0, b1 and optionally g, sample, epsilon.
    #[arg(long)]
    config: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Print the solution summary as JSON.
    Solve(ConfigArg),
    /// Print `x,h,u,b,eta,interface` rows at one time.
    Sample {
        #[command(flatten)]
        cfg: ConfigArg,
        /// Sampling time; overrides `sample.t`.
        #[arg(long, allow_negative_numbers = true)]
        t: Option<f64>,
        /// `xmin:xmax:n`; overrides the `sample` grid.
        #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
        grid: Option<Grid>,
        /// Draw the strip of width `epsilon * t` around the step.
        #[arg(long, allow_negative_numbers = true)]
        epsilon: Option<f64>,
    },
    /// Solve over a range of one parameter and print one CSV row per value.
    Sweep {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long, value_enum)]
        vary: Key,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
    },
    /// Check the jump relations of the solution; exit 1 on any failure.
    Verify {
        #[command(flatten)]
        cfg: ConfigArg,
        /// Shift the strip depth before checking.
        #[arg(long, hide = true, allow_negative_numbers = true)]
        perturb_chi: Option<f64>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let code = match &e {
                CliError::Verify(fields) => {
                    eprintln!("verification failed: {}", fields.join(", "));
                    1
                }
                CliError::Parse(m) => {
                    eprintln!("error: {m}");
                    2
                }
                CliError::Domain(m) => {
                    eprintln!("error: {m}");
                    3
                }
                CliError::Io(err) if err.kind() == io::ErrorKind::BrokenPipe => 0,
                CliError::Io(err) => {
                    eprintln!("error: {err}");
                    2
                }
            };
            ExitCode::from(code)
        }
    }
}

fn run(cmd: Command) -> Result<(), CliError> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cmd {
        Command::Solve(a) => solve(&ProblemConfig::load(&a.config)?, &mut out),
        Command::Sample { cfg, t, grid, epsilon } => {
            sample(&ProblemConfig::load(&cfg.config)?, t, grid, epsilon, &mut out)
        }
        Command::Sweep { cfg, vary, from, to, steps } => {
            sweep(&ProblemConfig::load(&cfg.config)?, vary, from, to, steps, &mut out)
        }
        Command::Verify { cfg, perturb_chi } => verify(&ProblemConfig::load(&cfg.config)?, perturb_chi, &mut out),
    }
}

fn write_json<T: serde::Serialize>(value: &T, out: &mut impl Write) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(io::Error::other)?;
    writeln!(out)?;
    Ok(())
}

fn solve(cfg: &ProblemConfig, out: &mut impl Write) -> Result<(), CliError> {
    let outcome = solve_dam(&cfg.problem()?)?;
    write_json(&SolutionSummary::from_outcome(&outcome), out)
}

fn sample(
    cfg: &ProblemConfig,
    t: Option<f64>,
    grid: Option<Grid>,
    epsilon: Option<f64>,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let from_cfg = cfg.sample.map(|s| (s.t, Grid { x_min: s.x_min, x_max: s.x_max, n: s.n }));
    let t = t
        .or(from_cfg.map(|(t, _)| t))
        .ok_or_else(|| CliError::Parse("no sampling time: pass --t or set sample.t".into()))?;
    let grid = grid
        .or(from_cfg.map(|(_, g)| g))
        .ok_or_else(|| CliError::Parse("no sampling grid: pass --grid or set sample".into()))?;
    if !(t > 0.0) || !t.is_finite() {
        return Err(CliError::Domain(format!("sampling time must be positive, got {t}")));
    }
    let epsilon = epsilon.or(cfg.epsilon);
    if let Some(eps) = epsilon {
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(CliError::Domain(format!("epsilon must be positive, got {eps}")));
        }
    }

    let outcome = solve_dam(&cfg.problem()?)?;
    if let DamOutcome::NoFlow(nf) = &outcome {
        eprintln!(
            "note: no flow over the step ({}); sampling the {} field",
            output::reason_name(nf.reason),
            if nf.rest.is_some() { "still-water" } else { "initial" }
        );
    }
    let field = SolutionField::from_outcome(&outcome)?;
    let g = field.gravity();

    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "h", "u", "b", "eta", "interface"])?;
    for x in grid.points() {
        let s = match epsilon {
            Some(eps) => field.shadow_sample(x, t, eps)?,
            None => field.sample(x, t)?,
        };
        w.write_record([
            fmt12(x),
            fmt12(s.h),
            fmt12(s.u),
            fmt12(s.b),
            fmt12(s.energy(g)),
            u8::from(s.interface).to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn sweep(
    cfg: &ProblemConfig,
    key: Key,
    from: f64,
    to: f64,
    steps: usize,
    out: &mut impl Write,
) -> Result<(), CliError> {
    if steps == 0 || !from.is_finite() || !to.is_finite() || from > to || (steps > 1 && from == to) {
        return Err(CliError::Parse(format!(
            "invalid sweep range: from {from} to {to} in {steps} steps"
        )));
    }
    let values: Vec<f64> = Grid { x_min: from, x_max: to, n: steps }.points();
    let rows: Vec<[String; 5]> = values
        .par_iter()
        .map(|&v| {
            let mut c = *cfg;
            c.set(key, v);
            let head = fmt12(v);
            let outcome = c.validate().and_then(|_| c.problem()).and_then(|p| Ok(solve_dam(&p)?));
            match outcome {
                Ok(DamOutcome::Flow(s)) => {
                    [head, "flow".into(), fmt12(s.upstream.h()), fmt12(s.energy), branch_name(s.branch).into()]
                }
                Ok(DamOutcome::NoFlow(nf)) => {
                    let h0 = nf.rest.map(|(s, _)| fmt12(s.h())).unwrap_or_default();
                    [head, "no_flow".into(), h0, String::new(), String::new()]
                }
                Err(_) => [head, "error".into(), String::new(), String::new(), String::new()],
            }
        })
        .collect();

    let mut w = csv::Writer::from_writer(out);
    w.write_record([key.name(), "status", "h0", "E", "branch"])?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

fn verify(cfg: &ProblemConfig, perturb_chi: Option<f64>, out: &mut impl Write) -> Result<(), CliError> {
    let outcome = solve_dam(&cfg.problem()?)?;
    let (status, report) = match outcome {
        DamOutcome::Flow(mut s) => {
            if let Some(d) = perturb_chi {
                s.connection.chi += d;
            }
            ("flow", check_solution(&s))
        }
        DamOutcome::NoFlow(_) => ("no_flow", ResidualReport::trivial()),
    };
    write_json(&VerifyOut::new(status, &report), out)?;
    if report.passed {
        Ok(())
    } else {
        Err(CliError::Verify(report.failures))
    }
}
