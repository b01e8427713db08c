mod dist;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use yao_core::equalizer::{full_support_equalizer_f, full_support_equalizer_g, support_search};
use yao_core::problems::{self, Problem, SkiRentalSpec};
use yao_core::verify::{self, CertificateKind};
use yao_core::{solve, Method, RatioMatrix, SolverConfig};

use crate::dist::parse_distribution;
use crate::report::{
    digest, weights, BoundSummary, CertificateSummary, EqualizerOutcome, EqualizerReport, ProblemSummary, Report,
    Settings, SolveSummary, SweepRow,
};

/// Solve and certify zero-sum games between randomized online algorithms and adversarial inputs.
#[derive(Debug, Parser)]
#[command(name = "yao", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Certification tolerance.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,
    /// Solver feasibility/optimality tolerance.
    #[arg(long = "solver-tol", global = true, default_value_t = 1e-9)]
    solver_tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = MethodArg::Simplex)]
    method: MethodArg,
    /// Fictitious-play rounds.
    #[arg(long = "fp-iters", global = true, default_value_t = 100_000)]
    fp_iters: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Exit with status 1 when a certificate or equalizer fails.
    #[arg(long = "require-pass", global = true)]
    require_pass: bool,
    /// Zero the timing field so reports are byte-identical across runs.
    #[arg(long, global = true)]
    deterministic: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Report)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Simplex,
    Fp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Report,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Lemma {
    Sufficient,
    Necessary,
    Saddle,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SupportMode {
    Full,
    Search,
}

#[derive(Debug, Args)]
#[group(skip)]
struct ProblemSource {
    /// Problem file (JSON).
    #[arg(long, conflicts_with = "skirental", required_unless_present = "skirental")]
    file: Option<PathBuf>,
    /// Built-in ski rental instance with this buy cost.
    #[arg(long)]
    skirental: Option<u64>,
    /// Ski rental horizon (default: twice the buy cost).
    #[arg(long, requires = "skirental")]
    horizon: Option<u64>,
}

impl ProblemSource {
    fn load(&self) -> Result<Problem> {
        if let Some(path) = &self.file {
            return problems::from_file(path).with_context(|| format!("loading {}", path.display()));
        }
        let b = self.skirental.expect("clap enforces a source");
        let spec = SkiRentalSpec::new(b, self.horizon.unwrap_or(2 * b))?;
        Ok(Problem::Costs {
            model: problems::ski_rental(&spec)?,
            raw_game: false,
        })
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimal mixed strategies and the game value.
    Solve {
        #[command(flatten)]
        source: ProblemSource,
    },
    /// Lower bound on every randomized algorithm's ratio from an input distribution.
    Bound {
        #[command(flatten)]
        source: ProblemSource,
        /// `uniform`, `point:<label>`, or a distribution file.
        #[arg(long, default_value = "uniform")]
        g: String,
    },
    /// Check optimality certificates for a given (f, g) pair.
    Verify {
        #[command(flatten)]
        source: ProblemSource,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, value_enum, default_value_t = Lemma::All)]
        lemma: Lemma,
    },
    /// Equalizing strategies, on full support or by support enumeration.
    Equalize {
        #[command(flatten)]
        source: ProblemSource,
        #[arg(long, value_enum, default_value_t = SupportMode::Full)]
        support: SupportMode,
        /// Largest support size to enumerate (default: min(rows, cols)).
        #[arg(long = "max-support")]
        max_support: Option<usize>,
    },
    /// Solve ski rental for a range of buy costs.
    SkirentalSweep {
        #[arg(long = "b-min")]
        b_min: u64,
        #[arg(long = "b-max")]
        b_max: u64,
        /// Double the buy cost at each step instead of incrementing it.
        #[arg(long)]
        doubling: bool,
        /// Horizon as a multiple of the buy cost.
        #[arg(long = "horizon-factor", default_value_t = 2)]
        horizon_factor: u64,
    },
    /// Solve a seeded random instance with entries uniform on [lo, hi].
    Random {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, default_value_t = 1.0)]
        lo: f64,
        #[arg(long, default_value_t = 10.0)]
        hi: f64,
        /// Also write the generated problem file here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

/// Everything went through, but a required certificate failed.
struct CertificationFailed;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Vec::new();
    match run(&cli, &mut out) {
        Ok(passed) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(&out).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            match passed {
                Ok(()) => ExitCode::SUCCESS,
                Err(CertificationFailed) => {
                    eprintln!("yao: certification failed");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("yao: error: {e:#}");
            ExitCode::from(2)
        }
    }
}

impl GlobalOpts {
    fn solver_config(&self) -> Result<SolverConfig> {
        let config = SolverConfig {
            tolerance: self.solver_tol,
            method: match self.method {
                MethodArg::Simplex => Method::SimplexLp,
                MethodArg::Fp => Method::FictitiousPlay,
            },
            fp_iterations: self.fp_iters,
            seed: self.seed,
            ..SolverConfig::default()
        };
        config.validate()?;
        if !(self.tol > 0.0) {
            bail!("--tol must be positive");
        }
        Ok(config)
    }

    fn settings(&self, config: &SolverConfig) -> Settings {
        Settings {
            tol: self.tol,
            solver_tol: config.tolerance,
            method: config.method.name(),
            fp_iters: config.fp_iterations,
            seed: config.seed,
        }
    }
}

type Outcome = std::result::Result<(), CertificationFailed>;

fn run(cli: &Cli, out: &mut Vec<u8>) -> Result<Outcome> {
    let g = &cli.global;
    let config = g.solver_config()?;
    let start = Instant::now();
    let csv_ok = matches!(cli.command, Command::Solve { .. } | Command::SkirentalSweep { .. } | Command::Random { .. });
    if g.format == Format::Csv && !csv_ok {
        bail!("--format csv is only available for solve, random and skirental-sweep");
    }

    let (mut report, passed) = match &cli.command {
        Command::Solve { source } => {
            let problem = source.load()?;
            solve_report("solve", &problem, g, &config)?
        }
        Command::Random { rows, cols, lo, hi, emit } => {
            let matrix = problems::random_instance(*rows, *cols, *lo, *hi, g.seed)?;
            let problem = Problem::Ratio { matrix, raw_game: false };
            if let Some(path) = emit {
                problems::to_file(&problem, path).with_context(|| format!("writing {}", path.display()))?;
            }
            solve_report("random", &problem, g, &config)?
        }
        Command::Bound { source, g: g_spec } => {
            let problem = source.load()?;
            let r = problem.ratio_matrix()?;
            let dist = parse_distribution(g_spec, r.col_labels())?;
            let (best, _) = yao_core::best_response_row(&r, &dist)?;
            let mut report = base_report("bound", &problem, &r, g, &config);
            report.bound = Some(BoundSummary {
                lower_bound: verify::yao_lower_bound(&r, &dist)?,
                best_response: best,
                g: weights(&dist),
            });
            (report, Ok(()))
        }
        Command::Verify { source, f, g: g_spec, lemma } => {
            let problem = source.load()?;
            let r = problem.ratio_matrix()?;
            let f = parse_distribution(f, r.row_labels())?;
            let gd = parse_distribution(g_spec, r.col_labels())?;
            let kinds: &[CertificateKind] = match lemma {
                Lemma::Sufficient => &[CertificateKind::Sufficient],
                Lemma::Necessary => &[CertificateKind::Necessary],
                Lemma::Saddle => &[CertificateKind::Saddle],
                Lemma::All => &[
                    CertificateKind::YaoBound,
                    CertificateKind::Sufficient,
                    CertificateKind::Necessary,
                    CertificateKind::Saddle,
                ],
            };
            let mut report = base_report("verify", &problem, &r, g, &config);
            let mut all_passed = true;
            for &kind in kinds {
                let cert = verify::certify(kind, &r, &f, &gd, g.tol)?;
                all_passed &= cert.passed;
                report.certificates.push(CertificateSummary::of(&cert));
            }
            (report, if all_passed { Ok(()) } else { Err(CertificationFailed) })
        }
        Command::Equalize { source, support, max_support } => {
            let problem = source.load()?;
            let r = problem.ratio_matrix()?;
            let mut report = base_report("equalize", &problem, &r, g, &config);
            let eq = match support {
                SupportMode::Full => EqualizerReport {
                    mode: "full",
                    f: EqualizerOutcome::of(&full_support_equalizer_f(&r)),
                    g: EqualizerOutcome::of(&full_support_equalizer_g(&r)),
                    candidates_tried: None,
                    alternates: Vec::new(),
                },
                SupportMode::Search => {
                    let k = max_support.unwrap_or(r.rows().min(r.cols()));
                    EqualizerReport::from_search(&r, &support_search(&r, k))
                }
            };
            let ok = eq.all_ok();
            report.equalizers = Some(eq);
            (report, if ok { Ok(()) } else { Err(CertificationFailed) })
        }
        Command::SkirentalSweep { b_min, b_max, doubling, horizon_factor } => {
            let rows = sweep(*b_min, *b_max, *doubling, *horizon_factor, &config)?;
            let description = format!(
                "skirental-sweep b_min={b_min} b_max={b_max} doubling={doubling} horizon_factor={horizon_factor}"
            );
            if g.format == Format::Csv {
                write_sweep_csv(&rows, out)?;
                return Ok(Ok(()));
            }
            let mut report = Report::new("skirental-sweep", digest(&description), g.settings(&config));
            report.sweep = Some(rows);
            (report, Ok(()))
        }
    };

    if g.format == Format::Csv {
        let solve = report.solve.as_ref().expect("csv is limited to solve reports");
        write_solve_csv(solve, out)?;
    } else {
        report.timing_ms = if g.deterministic { 0.0 } else { start.elapsed().as_secs_f64() * 1e3 };
        out.extend_from_slice(report.to_json()?.as_bytes());
    }
    Ok(if g.require_pass { passed } else { Ok(()) })
}

fn base_report(command: &'static str, problem: &Problem, r: &RatioMatrix, g: &GlobalOpts, config: &SolverConfig) -> Report {
    let mut report = Report::new(command, digest(&problem.to_json()), g.settings(config));
    report.problem = Some(ProblemSummary::of(r));
    report
}

fn solve_report(command: &'static str, problem: &Problem, g: &GlobalOpts, config: &SolverConfig) -> Result<(Report, Outcome)> {
    let r = problem.ratio_matrix()?;
    let res = solve(&r, config)?;
    let cert = verify::certify_saddle(&r, &res.f_star, &res.g_star, g.tol)?;
    let mut report = base_report(command, problem, &r, g, config);
    report.solve = Some(SolveSummary::of(&res));
    report.certificates.push(CertificateSummary::of(&cert));
    Ok((report, if cert.passed { Ok(()) } else { Err(CertificationFailed) }))
}

fn sweep(b_min: u64, b_max: u64, doubling: bool, horizon_factor: u64, config: &SolverConfig) -> Result<Vec<SweepRow>> {
    if b_min < 1 || b_max < b_min {
        bail!("need 1 <= --b-min <= --b-max");
    }
    if horizon_factor < 1 {
        bail!("--horizon-factor must be at least 1");
    }
    let mut buy_costs = Vec::new();
    let mut b = b_min;
    while b <= b_max {
        buy_costs.push(b);
        b = if doubling { b.saturating_mul(2) } else { b + 1 };
    }
    buy_costs
        .par_iter()
        .map(|&b| {
            let spec = SkiRentalSpec::new(b, b * horizon_factor)?;
            let r = yao_core::ratio_from_costs(&problems::ski_rental(&spec)?, false)?;
            let res = solve(&r, config)?;
            let closed_form = problems::ski_rental_closed_form(b);
            Ok(SweepRow {
                buy_cost: b,
                horizon: spec.horizon,
                value: res.value,
                closed_form,
                abs_error: (res.value - closed_form).abs(),
                gap: res.gap,
                iterations: res.iterations,
            })
        })
        .collect()
}

fn write_sweep_csv(rows: &[SweepRow], out: &mut Vec<u8>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

fn write_solve_csv(solve: &SolveSummary, out: &mut Vec<u8>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["player", "label", "weight"])?;
    for (player, side) in [("f", &solve.f_star), ("g", &solve.g_star)] {
        for entry in side {
            w.write_record([player, entry.label.as_str(), &entry.weight.to_string()])?;
        }
    }
    w.write_record(["value", "", &solve.value.to_string()])?;
    w.flush()?;
    Ok(())
}
