//! `osc`: evaluate oscillatory transforms, certify positivity, validate
//! closed forms, enumerate kernel zeros and run Sturm checks.

mod table;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use osc_core::catalog::FunctionCatalogEntry;
use osc_core::positivity::{certify, Ingredients, TheoremId, Verdict};
use osc_core::sturm::{check_arch_convexity, classify_oscillation, solve_normal_form, ConvexityMode};
use osc_core::transforms::{transform_eval, KernelSpec, ProfileFunction};
use osc_core::validation::{run_validation, worst_case};
use osc_core::zeros::{enumerate_zeros, mcmahon_estimate};
use osc_core::Error;

use table::{Cell, Table};

const TOL_MIN: f64 = 1e-13;
const TOL_MAX: f64 = 1e-3;
const MAX_GRID: usize = 1_000_000;

#[derive(Parser)]
#[command(
    name = "osc",
    version,
    about = "Oscillatory integral transforms and their positivity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a transform over an x-grid: x,value,tail_bound,n_arches.
    Eval(EvalArgs),
    /// Check a theorem's hypotheses and certify the sign on an x-grid (JSON).
    Certify(CertifyArgs),
    /// Run the closed-form validation matrix.
    Validate(OutputArgs),
    /// Enumerate kernel zeros: k,zero,spacing,mcmahon,residual.
    Zeros(ZerosArgs),
    /// Classify the kernel's coefficient and check arch convexity.
    Sturm(SturmArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelKind {
    Sine,
    Cosine,
    Hankel,
    Scaled,
    Neumann,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Strict,
    NonStrict,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct KernelArgs {
    #[arg(long, value_enum)]
    kernel: Option<KernelKind>,
    /// Bessel order ν.
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<f64>,
    /// Exponent α of the scaled kernel √t J_ν(t^α).
    #[arg(long)]
    alpha: Option<f64>,
}

#[derive(Args)]
struct ProfileArgs {
    /// Profile family: exp_decay, power, rational, shifted_power,
    /// power_shifted, abs_sin_exp, indicator, zero.
    #[arg(long)]
    function: String,
    /// Family parameters, e.g. "b=1,beta=0.5".
    #[arg(long, default_value = "")]
    params: String,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, default_value_t = 1.0)]
    x_start: f64,
    /// Defaults to x-start.
    #[arg(long)]
    x_stop: Option<f64>,
    #[arg(long, default_value_t = 1)]
    x_count: usize,
    /// Space the grid geometrically.
    #[arg(long)]
    x_log: bool,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    kernel: KernelArgs,
    #[command(flatten)]
    profile: ProfileArgs,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CertifyArgs {
    /// M1, M3, T, CT, H1, H2, F or Y.
    #[arg(long)]
    theorem: String,
    #[command(flatten)]
    kernel: KernelArgs,
    #[command(flatten)]
    profile: ProfileArgs,
    #[command(flatten)]
    grid: GridArgs,
    /// Where to write the certificate JSON instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ZerosArgs {
    #[command(flatten)]
    kernel: KernelArgs,
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SturmArgs {
    #[command(flatten)]
    kernel: KernelArgs,
    #[arg(long, value_enum, default_value = "strict")]
    mode: Mode,
    /// Reversed inequalities, for decreasing coefficients.
    #[arg(long)]
    reversed: bool,
    /// End of the integration span.
    #[arg(long, default_value_t = 60.0)]
    t_stop: f64,
    #[command(flatten)]
    output: OutputArgs,
}

/// Failure of a command, mapped onto the exit-code contract.
enum Failure {
    Config(String),
    Core(Error),
    /// Completed run whose outcome is a failure; the output is still written.
    Verdict(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Config(m) | Failure::Verdict(m) => f.write_str(m),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => 2,
            Failure::Core(e) if e.is_convergence_failure() => 3,
            Failure::Core(_) => 2,
            Failure::Verdict(_) => 1,
        }
    }
}

type CmdResult = Result<(), Failure>;

fn config<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Config(msg.into()))
}

fn check_tol(tol: f64) -> CmdResult {
    if !(TOL_MIN..=TOL_MAX).contains(&tol) {
        return config(format!("--tol must lie in [{TOL_MIN:e}, {TOL_MAX:e}], got {tol}"));
    }
    Ok(())
}

impl GridArgs {
    fn points(&self) -> Result<Vec<f64>, Failure> {
        check_tol(self.tol)?;
        let (a, b, n) = (self.x_start, self.x_stop.unwrap_or(self.x_start), self.x_count);
        if n == 0 || n > MAX_GRID {
            return config(format!("--x-count must lie in [1, {MAX_GRID}], got {n}"));
        }
        if !(a.is_finite() && b.is_finite() && a > 0.0 && b >= a) {
            return config(format!("grid needs 0 < x-start <= x-stop, got [{a}, {b}]"));
        }
        if n == 1 {
            return Ok(vec![a]);
        }
        let step = |i: usize| i as f64 / (n - 1) as f64;
        Ok(if self.x_log {
            let (la, lb) = (a.ln(), b.ln());
            (0..n)
                .map(|i| {
                    if i == n - 1 {
                        b
                    } else {
                        (la + (lb - la) * step(i)).exp()
                    }
                })
                .collect()
        } else {
            (0..n)
                .map(|i| if i == n - 1 { b } else { a + (b - a) * step(i) })
                .collect()
        })
    }
}

impl KernelArgs {
    fn nu(&self, what: &str) -> Result<f64, Failure> {
        self.nu.ok_or_else(|| Failure::Config(format!("{what} needs --nu")))
    }

    fn build(&self) -> Result<KernelSpec, Failure> {
        let kind = self
            .kernel
            .ok_or_else(|| Failure::Config("--kernel is required".into()))?;
        Ok(match kind {
            KernelKind::Sine => KernelSpec::Sine,
            KernelKind::Cosine => KernelSpec::Cosine,
            KernelKind::Hankel => KernelSpec::bessel_sqrt(self.nu("hankel kernel")?)?,
            KernelKind::Scaled => {
                let alpha = self
                    .alpha
                    .ok_or_else(|| Failure::Config("scaled kernel needs --alpha".into()))?;
                KernelSpec::scaled_bessel(self.nu("scaled kernel")?, alpha)?
            }
            KernelKind::Neumann => KernelSpec::neumann_sqrt(self.nu("neumann kernel")?)?,
        })
    }
}

impl ProfileArgs {
    fn build(&self) -> Result<ProfileFunction, Failure> {
        Ok(FunctionCatalogEntry::parse(&self.function, &self.params)?.profile())
    }
}

/// Renders `table` and writes it only once everything has succeeded.
fn emit(text: &str, out: &Option<PathBuf>) -> CmdResult {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::Config(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(table: &Table, format: Format) -> Result<String, Failure> {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    }
    .map_err(|e| Failure::Config(format!("cannot serialise output: {e}")))
}

fn cmd_eval(a: &EvalArgs) -> CmdResult {
    let grid = a.grid.points()?;
    let kernel = a.kernel.build()?;
    let f = a.profile.build()?;
    let tol = a.grid.tol;
    let rows: Vec<_> = grid
        .par_iter()
        .map(|&x| transform_eval(&kernel, &f, x, tol))
        .collect::<Result<_, _>>()?;
    let mut t = Table::new(&["x", "value", "tail_bound", "n_arches"]);
    for r in rows {
        t.push(vec![
            Cell::Num(r.x),
            Cell::Num(r.value),
            Cell::Num(r.tail_bound),
            Cell::Int(r.n_arches() as i64),
        ]);
    }
    emit(&render(&t, a.output.format)?, &a.output.out)
}

fn ingredients(theorem: TheoremId, k: &KernelArgs) -> Result<Ingredients, Failure> {
    let explicit_kernel = matches!(theorem, TheoremId::M1 | TheoremId::M3) && k.kernel.is_some();
    Ok(match (explicit_kernel, k.nu, k.alpha) {
        (true, _, _) => Ingredients::kernel(k.build()?),
        (false, Some(nu), Some(alpha)) => Ingredients::scaled(nu, alpha),
        (false, Some(nu), None) => Ingredients::order(nu),
        (false, None, Some(_)) => return config("--alpha given without --nu"),
        (false, None, None) => Ingredients::none(),
    })
}

fn cmd_certify(a: &CertifyArgs) -> CmdResult {
    let theorem: TheoremId = a.theorem.parse()?;
    let grid = a.grid.points()?;
    let f = a.profile.build()?;
    let ing = ingredients(theorem, &a.kernel)?;
    let cert = certify(theorem, &ing, &f, &grid, a.grid.tol)?;
    let json = serde_json::to_string_pretty(&cert).map_err(|e| Failure::Config(e.to_string()))? + "\n";
    emit(&json, &a.out)?;
    eprintln!("{theorem}: {}", cert.verdict);
    if cert.verdict == Verdict::HypothesisHoldsButNumericViolation {
        return Err(Failure::Verdict(format!(
            "hypotheses hold but the transform has the wrong sign: {}",
            cert.cause.unwrap_or_default()
        )));
    }
    Ok(())
}

fn cmd_validate(a: &OutputArgs) -> CmdResult {
    let cases = run_validation()?;
    let mut t = Table::new(&["case", "reference", "computed", "rel_error", "tolerance", "pass"]);
    for c in &cases {
        t.push(vec![
            Cell::Text(c.case.clone()),
            Cell::Num(c.reference),
            Cell::Num(c.computed),
            Cell::Num(c.rel_error),
            Cell::Num(c.tolerance),
            Cell::Bool(c.pass),
        ]);
    }
    emit(&render(&t, a.format)?, &a.out)?;
    match worst_case(&cases) {
        Some(w) => Err(Failure::Verdict(format!(
            "{} of {} cases failed; worst {}: computed {:e}, reference {:e}, rel_error {:e} > {:e}",
            cases.iter().filter(|c| !c.pass).count(),
            cases.len(),
            w.case,
            w.computed,
            w.reference,
            w.rel_error,
            w.tolerance
        ))),
        None => {
            eprintln!("all {} cases pass", cases.len());
            Ok(())
        }
    }
}

/// Asymptotic estimate of the k-th zero where one is available.
fn zero_estimate(kernel: &KernelSpec, k: usize) -> Option<f64> {
    use std::f64::consts::PI;
    match *kernel {
        KernelSpec::Sine => Some(k as f64 * PI),
        KernelSpec::Cosine => Some((k as f64 - 0.5) * PI),
        KernelSpec::BesselSqrt { nu } => Some(mcmahon_estimate(nu, k)),
        KernelSpec::ScaledBessel { nu, alpha } => Some(mcmahon_estimate(nu, k).powf(1.0 / alpha)),
        _ => None,
    }
}

fn cmd_zeros(a: &ZerosArgs) -> CmdResult {
    check_tol(a.tol)?;
    if a.n == 0 || a.n > MAX_GRID {
        return config(format!("--n must lie in [1, {MAX_GRID}], got {}", a.n));
    }
    let kernel = a.kernel.build()?;
    let seq = enumerate_zeros(&kernel, a.n, a.tol)?;
    let mut t = Table::new(&["k", "zero", "spacing", "mcmahon", "residual"]);
    for (i, &z) in seq.zeros.iter().enumerate() {
        let spacing = if i == 0 {
            Cell::Empty
        } else {
            Cell::Num(z - seq.zeros[i - 1])
        };
        let estimate = zero_estimate(&kernel, i + 1).map_or(Cell::Empty, Cell::Num);
        t.push(vec![
            Cell::Int(i as i64 + 1),
            Cell::Num(z),
            spacing,
            estimate,
            Cell::Num(kernel.eval(z).abs()),
        ]);
    }
    emit(&render(&t, a.output.format)?, &a.output.out)
}

#[derive(Serialize)]
struct SturmReport {
    kernel: String,
    phi: String,
    classification: osc_core::sturm::OscillationClassification,
    convexity: osc_core::sturm::ConvexityReport,
}

fn cmd_sturm(a: &SturmArgs) -> CmdResult {
    let kernel = a.kernel.build()?;
    let phi = kernel.phi();
    let classification = classify_oscillation(&phi);
    // Start at the first positive zero so the coefficient is finite there.
    let z1 = enumerate_zeros(&kernel, 1, 1e-13)?.zeros[0];
    if a.t_stop <= z1 || a.t_stop.is_nan() {
        return config(format!("--t-stop must exceed the first zero {z1}"));
    }
    let traj = solve_normal_form(&phi, (z1, 0.0, 1.0), a.t_stop)?;
    let mode = match a.mode {
        Mode::Strict => ConvexityMode::Strict,
        Mode::NonStrict => ConvexityMode::NonStrict,
    };
    let convexity = check_arch_convexity(&traj, mode, a.reversed)?;
    let pass = convexity.pass;
    let text = match a.output.format {
        Format::Json => {
            let report = SturmReport {
                kernel: kernel.label(),
                phi: phi.label.clone(),
                classification,
                convexity,
            };
            serde_json::to_string_pretty(&report).map_err(|e| Failure::Config(e.to_string()))? + "\n"
        }
        Format::Csv => {
            let c = &classification;
            let mut head = Table::new(&["a1", "a2", "a3", "b1", "b2", "from_declared_asymptotics"]);
            head.push(
                [c.a1, c.a2, c.a3, c.b1, c.b2]
                    .iter()
                    .map(|v| Cell::Text(table::snake(v)))
                    .chain([Cell::Bool(c.from_declared_asymptotics)])
                    .collect(),
            );
            let mut rows = Table::new(&[
                "index",
                "root",
                "spacing_before",
                "spacing_after",
                "spacing_margin",
                "worst_amplitude_margin",
                "pass",
            ]);
            for r in &convexity.roots {
                rows.push(vec![
                    Cell::Int(r.index as i64),
                    Cell::Num(r.root),
                    Cell::Num(r.spacing_before),
                    Cell::Num(r.spacing_after),
                    Cell::Num(r.spacing_margin),
                    Cell::Num(r.worst_amplitude_margin),
                    Cell::Bool(r.pass),
                ]);
            }
            render(&head, Format::Csv)? + "\n" + &render(&rows, Format::Csv)?
        }
    };
    emit(&text, &a.output.out)?;
    eprintln!("arch convexity: {}", if pass { "pass" } else { "fail" });
    Ok(())
}

fn configure_threads() -> CmdResult {
    let Ok(v) = std::env::var("OSC_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Config(format!("OSC_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Config(e.to_string()))
}

fn run(cli: &Cli) -> CmdResult {
    configure_threads()?;
    match &cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Certify(a) => cmd_certify(a),
        Command::Validate(a) => cmd_validate(a),
        Command::Zeros(a) => cmd_zeros(a),
        Command::Sturm(a) => cmd_sturm(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("osc: {f}");
            ExitCode::from(f.code())
        }
    }
}
