//! Command line driver.
//!
//! Exit codes: 0 on success, 1 when a computation fails or an expected
//! value is missed, 2 for usage and input-file problems.

mod report;
mod verify;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use torustop_core::alexander::{
    homology, novikov_betti, novikov_vanishing_certificate, torsion_profile,
};
use torustop_core::arrangements::{
    generic_hyperplanes, generic_lines, intersection_poset, Arrangement,
};
use torustop_core::complexes::{
    circle, fox_complex, torus_skeleton, CWPresentation, TwistedComplex,
};
use torustop_core::critical::{
    count_critical, critical_system, CriticalReport, MasterProblem, SolveConfig,
};
use torustop_core::localsys::{
    generic_vanishing_scan, milnor_dims, twisted_dims, LocalSystemSpec, ScanConfig,
};
use torustop_core::mpoly::MPoly;
use torustop_core::{format_rat, parse_rat};

use report::Envelope;

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Parser)]
#[command(
    name = "torustop",
    version,
    about = "Twisted homology, Novikov numbers, and critical point counts \
             for torus skeletons, group presentations, and hyperplane arrangements"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write output to this file instead of stdout.
    #[arg(short = 'o', long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Override a solver tolerance, e.g. --tol residual_tol=1e-12.
    /// Repeatable; keys are the fields of the embedded tolerance table
    /// plus max_steps, corrector_iters, polish_iters, and max_paths.
    #[arg(long = "tol", global = true, value_name = "KEY=VALUE")]
    tol: Vec<String>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a model complex or arrangement and emit its JSON.
    #[command(subcommand)]
    Model(ModelCmd),

    /// Ranks and invariant factors of the homology over the deck ring.
    Alexander {
        #[arg(long, value_name = "PATH")]
        complex: PathBuf,
        /// Force JSON output.
        #[arg(long)]
        json: bool,
    },

    /// Novikov numbers and the vanishing certificate around a middle degree.
    Novikov {
        #[arg(long, value_name = "PATH")]
        complex: PathBuf,
        #[arg(long)]
        middle: usize,
    },

    /// Homology dimensions at the rational specialization t = s.
    Twisted {
        #[arg(long, value_name = "PATH")]
        complex: PathBuf,
        /// Specialization point, written p/q or p.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },

    /// Seeded scan comparing twisted dimensions against the module-rank
    /// prediction, with generic vanishing checks.
    Scan {
        #[arg(long, value_name = "PATH")]
        complex: PathBuf,
        #[arg(long)]
        middle: usize,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },

    /// Intersection poset, characteristic polynomial, and region counts.
    Euler {
        #[arg(long, value_name = "PATH")]
        arrangement: PathBuf,
    },

    /// Count critical points of a master function by homotopy continuation.
    Critical {
        /// Arrangement JSON input.
        #[arg(long, value_name = "PATH")]
        arrangement: Option<PathBuf>,
        /// Complete intersection in the torus, as an equation file.
        #[arg(long, value_name = "PATH")]
        torus_ci: Option<PathBuf>,
        /// Weights overriding the ones in the input file.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        u: Option<Vec<i64>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Weight resamplings for the genericity check.
        #[arg(long, default_value_t = 3)]
        trials: usize,
        /// Expected count, overriding the combinatorial prediction.
        #[arg(long, allow_hyphen_values = true)]
        expected: Option<i64>,
    },

    /// Run the full acceptance suite.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum ModelCmd {
    /// n-skeleton of a k-torus twisted by integer weights u.
    TorusSkeleton {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: usize,
        #[arg(short, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        u: Vec<i64>,
    },
    /// Circle with deck weight w.
    Circle {
        #[arg(short, allow_hyphen_values = true)]
        w: i64,
    },
    /// Two-complex of a group presentation via free differential calculus.
    Fox {
        /// Presentation JSON with generators, relators, and weights.
        #[arg(long, value_name = "PATH")]
        presentation: PathBuf,
        #[arg(long, default_value = "fox")]
        label: String,
    },
    /// k pairwise-generic lines in the plane.
    GenericLines {
        #[arg(short)]
        k: usize,
    },
    /// k generic hyperplanes in n variables.
    GenericHyperplanes {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: usize,
    },
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }
}

impl From<torustop_core::Error> for CliError {
    fn from(e: torustop_core::Error) -> Self {
        use torustop_core::Error as E;
        let code = match &e {
            E::InvalidInput(_)
            | E::BadEvaluation(_)
            | E::BadComplex(_)
            | E::BadArrangement(_)
            | E::Io(_)
            | E::Serde(_) => 2,
            _ => 1,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError { code: 2, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(raw) = std::env::var("TORUSTOP_THREADS") {
        match raw.trim().parse::<usize>() {
            Ok(n) if n >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: TORUSTOP_THREADS must be a positive integer, got {raw:?}");
                return ExitCode::from(2);
            }
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn solve_config(overrides: &[String]) -> Result<SolveConfig, CliError> {
    let mut cfg = SolveConfig::default();
    for entry in overrides {
        let (key, value) = entry
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("--tol expects KEY=VALUE, got {entry:?}")))?;
        let as_f64 = || {
            value
                .parse::<f64>()
                .map_err(|_| CliError::usage(format!("--tol {key}: {value:?} is not a number")))
        };
        let as_usize = || {
            value
                .parse::<usize>()
                .map_err(|_| CliError::usage(format!("--tol {key}: {value:?} is not an integer")))
        };
        match key {
            "residual_tol" => cfg.residual_tol = as_f64()?,
            "dedup_radius" => cfg.dedup_radius = as_f64()?,
            "cond_threshold" => cfg.cond_threshold = as_f64()?,
            "membership_margin" => cfg.membership_margin = as_f64()?,
            "step_min" => cfg.step_min = as_f64()?,
            "step_max" => cfg.step_max = as_f64()?,
            "diverge_norm" => cfg.diverge_norm = as_f64()?,
            "max_steps" => cfg.max_steps = as_usize()?,
            "corrector_iters" => cfg.corrector_iters = as_usize()?,
            "polish_iters" => cfg.polish_iters = as_usize()?,
            "max_paths" => cfg.max_paths = as_usize()?,
            _ => return Err(CliError::usage(format!("unknown tolerance {key:?}"))),
        }
    }
    Ok(cfg)
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => std::io::stdout().write_all(content.as_bytes())?,
    }
    Ok(())
}

fn load_complex(env: &mut Envelope, path: &Path) -> Result<TwistedComplex, CliError> {
    env.record_input(path)?;
    Ok(TwistedComplex::load(path)?)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let cfg = solve_config(&cli.tol)?;
    let tol = report::tolerances(&cfg);
    match cli.command {
        Cmd::Model(model) => run_model(model, &cli.out),
        Cmd::Alexander { complex, json } => {
            let format = if json { Format::Json } else { cli.format };
            run_alexander(&complex, &tol, format, &cli.out)
        }
        Cmd::Novikov { complex, middle } => {
            run_novikov(&complex, middle, &tol, cli.format, &cli.out)
        }
        Cmd::Twisted { complex, s } => run_twisted(&complex, &s, &tol, cli.format, &cli.out),
        Cmd::Scan { complex, middle, samples, seed } => {
            run_scan(&complex, middle, samples, seed, &tol, cli.format, &cli.out)
        }
        Cmd::Euler { arrangement } => run_euler(&arrangement, &tol, cli.format, &cli.out),
        Cmd::Critical { arrangement, torus_ci, u, seed, trials, expected } => {
            run_critical(arrangement, torus_ci, u, seed, trials, expected, &cfg, cli.format, &cli.out)
        }
        Cmd::Verify { seed } => {
            if !cli.tol.is_empty() {
                return Err(CliError::usage(
                    "verify runs with the pinned tolerance table; --tol is not allowed",
                ));
            }
            run_verify(seed, cli.format, &cli.out)
        }
    }
}

fn run_model(model: ModelCmd, out: &Option<PathBuf>) -> Result<ExitCode, CliError> {
    let mut content = match model {
        ModelCmd::TorusSkeleton { k, n, u } => torus_skeleton(k, n, &u)?.to_json()?,
        ModelCmd::Circle { w } => circle(w)?.to_json()?,
        ModelCmd::Fox { presentation, label } => {
            let text = std::fs::read_to_string(&presentation)?;
            let p = CWPresentation::from_json(&text)?;
            fox_complex(&p, label)?.to_json()?
        }
        ModelCmd::GenericLines { k } => generic_lines(k)?.to_json()?,
        ModelCmd::GenericHyperplanes { k, n } => generic_hyperplanes(k, n)?.to_json()?,
    };
    if !content.ends_with('\n') {
        content.push('\n');
    }
    emit(out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn run_alexander(
    path: &Path,
    tol: &serde_json::Value,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<ExitCode, CliError> {
    let mut env = Envelope::new("alexander");
    env.tolerances = tol.clone();
    let c = load_complex(&mut env, path)?;
    let data = homology(&c)?;
    let profile = torsion_profile(&data);
    env.report = serde_json::json!({
        "alexander": report::alexander_value(&data),
        "torsion": report::torsion_profile_value(&profile),
    });
    let content = match format {
        Format::Json => env.to_json(),
        Format::Table => {
            let mut t = String::new();
            let _ = writeln!(t, "{}  (euler {})", data.label, data.euler);
            for row in &profile {
                let factors: Vec<String> = row.factors.iter().map(|f| f.to_string()).collect();
                let _ = writeln!(
                    t,
                    "H_{}: rank {}, torsion [{}]{}",
                    row.degree,
                    row.rank,
                    factors.join(", "),
                    if row.factors.is_empty() {
                        String::new()
                    } else if row.all_cyclotomic {
                        ", all cyclotomic".into()
                    } else {
                        ", non-cyclotomic factor present".into()
                    }
                );
            }
            t
        }
    };
    emit(out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn run_novikov(
    path: &Path,
    middle: usize,
    tol: &serde_json::Value,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<ExitCode, CliError> {
    let mut env = Envelope::new("novikov");
    env.tolerances = tol.clone();
    let c = load_complex(&mut env, path)?;
    let data = homology(&c)?;
    let betti = novikov_betti(&data);
    let cert = novikov_vanishing_certificate(&data, middle);
    env.report = report::certificate_value(&betti, &cert);
    let content = match format {
        Format::Json => env.to_json(),
        Format::Table => {
            let mut t = String::new();
            let _ = writeln!(t, "{}  (euler {})", data.label, data.euler);
            let _ = writeln!(t, "novikov numbers: {betti:?}");
            let _ = writeln!(
                t,
                "vanishing away from degree {middle}: {}",
                if cert.certified { "certified" } else { "not certified" }
            );
            for d in cert.degrees.iter().filter(|d| !d.obstructions.is_empty()) {
                let _ = writeln!(t, "  degree {}: {}", d.degree, d.obstructions.join("; "));
            }
            t
        }
    };
    emit(out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn run_twisted(
    path: &Path,
    s_raw: &str,
    tol: &serde_json::Value,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<ExitCode, CliError> {
    let mut env = Envelope::new("twisted");
    env.tolerances = tol.clone();
    let c = load_complex(&mut env, path)?;
    let s = parse_rat(s_raw)?;
    let dims = twisted_dims(&c, &LocalSystemSpec::Rational(s.clone()))?;
    let data = homology(&c)?;
    let milnor = milnor_dims(&data, &s)?;
    let matches = dims == milnor;
    env.report = serde_json::json!({
        "label": c.label,
        "s": format_rat(&s),
        "dims": dims,
        "milnor": milnor,
        "milnor_match": matches,
    });
    let content = match format {
        Format::Json => env.to_json(),
        Format::Table => {
            let mut t = String::new();
            let _ = writeln!(t, "{} at s = {}", c.label, format_rat(&s));
            let _ = writeln!(t, "twisted dims: {dims:?}");
            let _ = writeln!(t, "module ranks: {milnor:?}  ({})", if matches { "match" } else { "MISMATCH" });
            t
        }
    };
    emit(out, &content)?;
    Ok(if matches { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn run_scan(
    path: &Path,
    middle: usize,
    samples: usize,
    seed: u64,
    tol: &serde_json::Value,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<ExitCode, CliError> {
    let mut env = Envelope::new("scan");
    env.tolerances = tol.clone();
    env.seed = Some(seed);
    let c = load_complex(&mut env, path)?;
    let cfg = ScanConfig { samples, seed, include_torsion_roots: true, extras: Vec::new() };
    let scan = generic_vanishing_scan(&c, middle, &cfg)?;
    env.report = report::scan_value(&scan);
    let milnor_ok = scan.milnor_ok;
    let content = match format {
        Format::Json => env.to_json(),
        Format::Table => {
            let mut t = String::new();
            let _ = writeln!(
                t,
                "{}: {} samples, middle degree {} (expected dim {})",
                scan.label,
                scan.samples.len(),
                scan.middle,
                scan.expected_middle
            );
            let _ = writeln!(t, "generic vanishing: {}", if scan.generic_ok { "ok" } else { "FAILED" });
            let _ = writeln!(t, "module-rank match: {}", if scan.milnor_ok { "ok" } else { "FAILED" });
            for s in scan.samples.iter().filter(|s| s.exceptional) {
                let _ = writeln!(t, "  torsion root s = {}: dims {:?}", format_rat(&s.s), s.dims);
            }
            t
        }
    };
    emit(out, &content)?;
    Ok(if milnor_ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn run_euler(
    path: &Path,
    tol: &serde_json::Value,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<ExitCode, CliError> {
    let mut env = Envelope::new("euler");
    env.tolerances = tol.clone();
    env.record_input(path)?;
    let a = Arrangement::load(path)?;
    let poset = intersection_poset(&a)?;
    env.report = report::euler_value(&a, &poset);
    let content = match format {
        Format::Json => env.to_json(),
        Format::Table => {
            let mut t = String::new();
            let _ = writeln!(t, "{} forms in dimension {}", a.forms.len(), a.dim);
            let _ = writeln!(t, "flats: {}  (essential: {})", poset.flats.len(), poset.is_essential());
            let _ = writeln!(t, "characteristic polynomial: {:?}", poset.characteristic_polynomial());
            let _ = writeln!(t, "complement euler: {}", poset.complement_euler());
            match poset.bounded_regions() {
                Ok(b) => {
                    let _ = writeln!(t, "bounded regions: {b}");
                }
                Err(_) => {
                    let _ = writeln!(t, "bounded regions: undefined (arrangement not essential)");
                }
            }
            t
        }
    };
    emit(out, &content)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Deserialize)]
struct TorusCiFile {
    nvars: usize,
    weights: Vec<i64>,
    /// Each equation is a list of `[coefficient, exponent vector]` pairs;
    /// coefficients are rational strings like "1", "-2", or "3/4".
    equations: Vec<Vec<(String, Vec<u32>)>>,
}

fn load_torus_ci(env: &mut Envelope, path: &Path) -> Result<MasterProblem, CliError> {
    env.record_input(path)?;
    let text = std::fs::read_to_string(path)?;
    let raw: TorusCiFile =
        serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    let mut equations = Vec::new();
    for eq in &raw.equations {
        let terms = eq
            .iter()
            .map(|(c, exps)| Ok((exps.clone(), parse_rat(c)?)))
            .collect::<Result<Vec<_>, torustop_core::Error>>()?;
        equations.push(MPoly::from_terms(raw.nvars, terms)?);
    }
    Ok(MasterProblem::TorusIntersection {
        nvars: raw.nvars,
        equations,
        weights: raw.weights,
    })
}

#[allow(clippy::too_many_arguments)]
fn run_critical(
    arrangement: Option<PathBuf>,
    torus_ci: Option<PathBuf>,
    u: Option<Vec<i64>>,
    seed: u64,
    trials: usize,
    expected: Option<i64>,
    cfg: &SolveConfig,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<ExitCode, CliError> {
    let mut env = Envelope::new("critical");
    env.tolerances = report::tolerances(cfg);
    env.seed = Some(seed);
    let problem = match (arrangement, torus_ci) {
        (Some(path), None) => {
            env.record_input(&path)?;
            let mut a = Arrangement::load(&path)?;
            if let Some(w) = u {
                a.weights = w;
                a.validate()?;
            }
            MasterProblem::Arrangement(a)
        }
        (None, Some(path)) => {
            let mut p = load_torus_ci(&mut env, &path)?;
            if let Some(w) = u {
                p = p.with_weights(w);
            }
            p
        }
        _ => {
            return Err(CliError::usage(
                "exactly one of --arrangement and --torus-ci is required",
            ))
        }
    };
    let system = critical_system(&problem)?;
    let report: CriticalReport = count_critical(&problem, expected, seed, trials, cfg)?;
    env.report = report::critical_value(&report, &system.var_names);
    let ok = report.matches_expected != Some(false);
    let content = match format {
        Format::Json => env.to_json(),
        Format::Table => {
            let mut t = String::new();
            let _ = writeln!(
                t,
                "{} nonsingular critical points from {} paths (seed {seed}, weights {:?})",
                report.solutions.nonsingular_count, report.solutions.path_count, report.weights
            );
            if let Some(e) = report.expected {
                let _ = writeln!(
                    t,
                    "expected {e}: {}",
                    if ok { "matched" } else { "MISMATCH" }
                );
            }
            let _ = writeln!(
                t,
                "paths: {} diverged, {} filtered on excluded divisors, {} failed",
                report.solutions.diverged,
                report.solutions.filtered,
                report.solutions.failures.len()
            );
            for p in &report.solutions.points {
                let coords: Vec<String> = p.coords[..report.point_vars]
                    .iter()
                    .map(|z| format!("{:+.6}{:+.6}i", z.re, z.im))
                    .collect();
                let _ = writeln!(
                    t,
                    "  ({}) residual {:.2e}{}",
                    coords.join(", "),
                    p.residual,
                    if p.singular { ", singular" } else { "" }
                );
            }
            t
        }
    };
    emit(out, &content)?;
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn run_verify(seed: u64, format: Format, out: &Option<PathBuf>) -> Result<ExitCode, CliError> {
    let outcome = verify::run_all(seed);
    for r in &outcome.results {
        let budget = match r.budget {
            Some(b) => format!(", budget {b:.0} s"),
            None => String::new(),
        };
        eprintln!(
            "criterion {} ({}): {} ({:.2} s{})",
            r.index,
            r.name,
            if r.passed { "pass" } else { "FAIL" },
            r.elapsed,
            budget
        );
        if !r.passed {
            for d in &r.details {
                eprintln!("    {d}");
            }
        }
    }
    let mut env = Envelope::new("verify");
    env.seed = Some(seed);
    env.report = outcome.to_value();
    let content = match format {
        Format::Json => env.to_json(),
        Format::Table => {
            let mut t = String::new();
            for r in &outcome.results {
                let _ = writeln!(
                    t,
                    "criterion {} ({}): {}",
                    r.index,
                    r.name,
                    if r.passed { "pass" } else { "FAIL" }
                );
                for d in &r.details {
                    let _ = writeln!(t, "    {d}");
                }
            }
            let _ = writeln!(t, "overall: {}", if outcome.passed { "pass" } else { "FAIL" });
            t
        }
    };
    emit(out, &content)?;
    Ok(if outcome.passed { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
