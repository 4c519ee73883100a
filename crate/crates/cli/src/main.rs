//! `sechbloch`: final inversion of a two-state atom driven by a resonant
//! sech pulse with dephasing, exact and by direct integration.
//!
//! Exit status: 0 success, 1 a verification check failed, 2 usage error,
//! 3 numerical failure.

mod config;
mod output;

use std::fmt;
use std::io::{self, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use sechbloch::analytic::{w_large_area, w_strong_dephasing, w_weak_dephasing};
use sechbloch::sweep::figures::{figure_data, Figure};
use sechbloch::verify::{self, exact_model, VerifyLevel};
use sechbloch::{integrate, w_infinity, DimensionlessParams64, IntegratorConfig64, SechPulseModel64};

use config::{CliConfig, Format};
use output::{emit, Cell, Table};

/// Bad input: reported with exit status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Parser)]
#[command(
    name = "sechbloch",
    version,
    about = "Sech-pulse excitation with dephasing: exact inversion, ODE check, figure data"
)]
struct Cli {
    /// Output format: csv or json
    #[arg(long, global = true)]
    format: Option<String>,

    /// Write to this file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Significant digits for numbers, 6 to 17 (17 round-trips exactly)
    #[arg(long, global = true)]
    precision: Option<usize>,

    /// key = value settings file; flags override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct IntegratorFlags {
    /// Relative error tolerance per step
    #[arg(long = "rel-tol")]
    rel_tol: Option<f64>,

    /// Absolute error tolerance per step
    #[arg(long = "abs-tol")]
    abs_tol: Option<f64>,

    /// Integrate over t/T in [-L, L]
    #[arg(long = "window-L")]
    window_l: Option<f64>,

    /// Number of output samples
    #[arg(long)]
    points: Option<usize>,

    /// Give up after this many accepted or rejected steps
    #[arg(long = "max-steps")]
    max_steps: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Exact final inversion w(∞) and its asymptotic estimates
    Winf {
        /// Dimensionless amplitude α = Ω0·T (area A = πα)
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        /// Dephasing rate times pulse width, ΓT (internally γ = ΓT/2)
        #[arg(long = "gammaT", allow_negative_numbers = true)]
        gamma_t: f64,
    },
    /// Integrate the Bloch equation and compare with the exact final value
    Integrate {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        /// ΓT (internally γ = ΓT/2)
        #[arg(long = "gammaT", allow_negative_numbers = true)]
        gamma_t: f64,
        #[command(flatten)]
        integrator: IntegratorFlags,
    },
    /// Data behind the standard plots: fig1 (w against ΓT) or fig2 (w against A/π)
    Figure {
        which: String,
        /// Grid points along the horizontal axis
        #[arg(long)]
        points: Option<usize>,
    },
    /// Run the self-check suite; exits 1 if any check fails
    Verify {
        #[arg(value_enum, default_value_t = Level::Fast)]
        level: Level,
        /// Run the suite against a sign-flipped inversion (suite sensitivity test)
        #[arg(long, hide = true)]
        mutate_sign: bool,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum Level {
    Fast,
    Full,
}

fn merged_config(cli: &Cli) -> Result<CliConfig, UsageError> {
    let mut cfg = match &cli.config {
        Some(p) => config::load(p)?,
        None => CliConfig::default(),
    };
    if let Some(f) = &cli.format {
        cfg.format = Format::parse(f)?;
    }
    if let Some(o) = &cli.output {
        cfg.output = Some(o.clone());
    }
    if let Some(p) = cli.precision {
        cfg.precision = p;
    }
    cfg.check()?;
    Ok(cfg)
}

fn params(alpha: f64, gamma_t: f64) -> anyhow::Result<DimensionlessParams64> {
    Ok(DimensionlessParams64::from_gamma_t(alpha, gamma_t)?)
}

fn cmd_winf(cfg: &CliConfig, alpha: f64, gamma_t: f64) -> anyhow::Result<ExitCode> {
    let p = params(alpha, gamma_t)?;
    let weak = w_weak_dephasing(p);
    let strong = w_strong_dephasing(p);
    let large = w_large_area(p);
    let mut t = Table::new([
        "alpha",
        "GammaT",
        "gamma",
        "w_exact",
        "w_weak_dephasing",
        "weak_dephasing_hint",
        "w_strong_dephasing",
        "strong_dephasing_hint",
        "w_large_area",
        "large_area_hint",
    ]);
    t.single = true;
    t.push(vec![
        alpha.into(),
        gamma_t.into(),
        p.gamma().into(),
        w_infinity(p).into(),
        weak.value.into(),
        weak.validity_hint.into(),
        strong.value.into(),
        strong.validity_hint.into(),
        large.value.into(),
        large.validity_hint.into(),
    ]);
    emit(&t, cfg.format, cfg.precision, cfg.output.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn integrator_config(cfg: &CliConfig, flags: &IntegratorFlags) -> IntegratorConfig64 {
    let mut ic = IntegratorConfig64::default();
    if let Some(x) = flags.rel_tol.or(cfg.rel_tol) {
        ic.rel_tol = x;
    }
    if let Some(x) = flags.abs_tol.or(cfg.abs_tol) {
        ic.abs_tol = x;
    }
    if let Some(x) = flags.window_l.or(cfg.window_l) {
        ic.window_halfwidth = x;
    }
    if let Some(x) = flags.points.or(cfg.points) {
        ic.sample_count = x;
    }
    if let Some(x) = flags.max_steps.or(cfg.max_steps) {
        ic.max_steps = x;
    }
    ic
}

fn cmd_integrate(cfg: &CliConfig, alpha: f64, gamma_t: f64, flags: &IntegratorFlags) -> anyhow::Result<ExitCode> {
    let p = params(alpha, gamma_t)?;
    let ic = integrator_config(cfg, flags);
    ic.validate()?;
    let traj = integrate(&SechPulseModel64::from_dimensionless(p), &ic).map_err(|e| {
        let context = match e.last_good_time() {
            Some(t) => format!("integration failed; last good t/T = {}", t),
            None => "integration failed".to_string(),
        };
        anyhow::Error::new(e).context(context)
    })?;
    let exact = w_infinity(p);
    let mut t = Table::new(["row", "t_over_T", "u", "v", "w", "w_exact", "abs_diff"]);
    for s in traj.iter() {
        t.push(vec![
            "sample".into(),
            s.t.into(),
            s.state.u.into(),
            s.state.v.into(),
            s.state.w.into(),
            Cell::Empty,
            Cell::Empty,
        ]);
    }
    let last = traj.last().context("empty trajectory")?;
    t.push(vec![
        "summary".into(),
        last.t.into(),
        last.state.u.into(),
        last.state.v.into(),
        last.state.w.into(),
        exact.into(),
        (last.state.w - exact).abs().into(),
    ]);
    emit(&t, cfg.format, cfg.precision, cfg.output.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_figure(cfg: &CliConfig, which: &str, points: Option<usize>) -> anyhow::Result<ExitCode> {
    let fig = Figure::parse(which)
        .ok_or_else(|| UsageError(format!("unknown figure '{}' (expected fig1 or fig2)", which)))?;
    let n = points.or(cfg.points).unwrap_or_else(|| fig.default_points());
    let data = figure_data(fig, n)?;
    let mut t = Table::new(std::iter::once(data.x_name.to_string()).chain(data.curve_names.iter().cloned()));
    for (i, &x) in data.x.iter().enumerate() {
        let mut row = vec![Cell::Num(x)];
        row.extend(data.columns.iter().map(|c| Cell::Num(c[i])));
        t.push(row);
    }
    emit(&t, cfg.format, cfg.precision, cfg.output.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn use_color() -> bool {
    let disabled = std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty());
    !disabled && io::stderr().is_terminal()
}

fn cmd_verify(cfg: &CliConfig, level: Level, mutate_sign: bool) -> anyhow::Result<ExitCode> {
    let level = match level {
        Level::Fast => VerifyLevel::Fast,
        Level::Full => VerifyLevel::Full,
    };
    let mutant = |a: f64, g: f64| -exact_model(a, g);
    let report = if mutate_sign {
        verify::run_with_model(level, &mutant)
    } else {
        verify::run(level)
    };
    let mut t = Table::new(["check", "measured", "limit", "passed"]);
    for c in &report.checks {
        t.push(vec![
            c.name.into(),
            c.measured.into(),
            c.limit.clone().into(),
            c.passed.into(),
        ]);
    }
    emit(&t, cfg.format, cfg.precision, cfg.output.as_deref())?;

    let color = use_color();
    let mut err = io::stderr().lock();
    for c in report.failures() {
        let tag = if color { "\x1b[31mFAIL\x1b[0m" } else { "FAIL" };
        writeln!(err, "{} {}: measured {:e}, limit {}", tag, c.name, c.measured, c.limit)?;
    }
    let passed = report.checks.iter().filter(|c| c.passed).count();
    let tag = match (report.passed(), color) {
        (true, true) => "\x1b[32mok\x1b[0m",
        (true, false) => "ok",
        (false, true) => "\x1b[31mFAILED\x1b[0m",
        (false, false) => "FAILED",
    };
    writeln!(
        err,
        "verify: {} ({}/{} checks passed in {:.2} s)",
        tag,
        passed,
        report.checks.len(),
        report.elapsed.as_secs_f64()
    )?;
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let cfg = merged_config(&cli)?;
    match &cli.command {
        Command::Winf { alpha, gamma_t } => cmd_winf(&cfg, *alpha, *gamma_t),
        Command::Integrate {
            alpha,
            gamma_t,
            integrator,
        } => cmd_integrate(&cfg, *alpha, *gamma_t, integrator),
        Command::Figure { which, points } => cmd_figure(&cfg, which, *points),
        Command::Verify { level, mutate_sign } => cmd_verify(&cfg, *level, *mutate_sign),
    }
}

fn exit_code_for(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match e.downcast_ref::<sechbloch::Error>() {
        Some(inner) if inner.is_numeric_failure() => 3,
        Some(_) => 2,
        // I/O on the output path
        None => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(exit_code_for(&e))
        }
    }
}
