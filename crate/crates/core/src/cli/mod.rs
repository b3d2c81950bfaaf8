//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when a computation or a `verify` check
//! fails, 2 on usage errors, 3 when a finite-field enumeration exceeds its
//! feasibility guard.

mod verify;

pub use verify::{run_suite, suite_names, CheckOutcome};

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use crate::dtinv::{
    affine_grading, euler_limit, gv_extract, hilbert_series_zy, mckay_series, omega_extract,
    pt_euler_symbolic, universal_series, DtError, OmegaTable, SQSeries,
};
use crate::quiver::{DimVector, Quiver, QuiverError};
use crate::repcount::{
    count_potential_fiber, count_preprojective, interpolate_kac, kac_bruteforce, KacTable,
    RepCountError,
};
use crate::roots::{AffineRootSystem, RootsError, StabilityMode};
use crate::series::{series_to_json, Grading, MSeries, SeriesError};

#[derive(Parser, Debug)]
#[command(
    name = "motivic-dt",
    version,
    about = "Exact motivic DT/PT/NCDT series and finite-field oracles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Kac polynomials by brute force over F_q and interpolation.
    Kac(KacArgs),
    /// The universal series A_U and its DT invariants.
    Universal(UniversalArgs),
    /// Z_PT, Z_DT or Z_NCDT of a McKay quiver.
    Series(SeriesArgs),
    /// Euler specialization L^½ ↦ 1 of a McKay series.
    Euler(SeriesArgs),
    /// Gopakumar–Vafa invariants from the Euler-specialized PT series.
    Gv(GvArgs),
    /// The Hilbert-scheme series Z_Y.
    Hilb(HilbArgs),
    /// Raw finite-field point counts.
    Repcount(RepcountArgs),
    /// Run the identity suite and report pass/fail per check.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, Default, ValueEnum, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum Mode {
    Pt,
    Dt,
    Ncdt,
}

impl From<Mode> for StabilityMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Pt => StabilityMode::Pt,
            Mode::Dt => StabilityMode::Dt,
            Mode::Ncdt => StabilityMode::Ncdt,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum CountKind {
    Preprojective,
    Fiber0,
    Fiber1,
    Kac,
}

/// Exactly one of `--quiver`, `--type`, `--group`.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Target {
    /// Built-in name (`jordan`, `kronecker`, `affine:<TYPE>`) or a JSON file.
    #[arg(long)]
    pub quiver: Option<String>,
    /// Affine ADE type such as `A1~`, `D4~`, `E6~`.
    #[arg(long = "type")]
    pub ty: Option<String>,
    /// Finite subgroup of SL₂: `cyclic:n`, `bindihedral:n`, `bintet`, `binoct`, `binico`.
    #[arg(long)]
    pub group: Option<String>,
}

/// `--type` or `--group`.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct RootTarget {
    #[arg(long = "type")]
    pub ty: Option<String>,
    #[arg(long)]
    pub group: Option<String>,
}

#[derive(Args, Debug)]
pub struct KacArgs {
    #[arg(long)]
    pub quiver: String,
    /// Dimension vector, comma separated.
    #[arg(long, value_parser = parse_dim)]
    pub dim: DimVector,
    #[arg(long, value_delimiter = ',', default_values_t = vec![2u64, 3, 4])]
    pub q: Vec<u64>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct UniversalArgs {
    #[command(flatten)]
    pub target: Target,
    #[arg(long, default_value_t = 2)]
    pub order: u32,
    /// Sample fields for oracle Kac polynomials (quivers without a closed form).
    #[arg(long, value_delimiter = ',', default_values_t = vec![2u64, 3, 4, 5])]
    pub q: Vec<u64>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub target: RootTarget,
    #[arg(long, value_enum, default_value = "pt")]
    pub mode: Mode,
    #[arg(long, default_value_t = 2)]
    pub order: u32,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct GvArgs {
    #[command(flatten)]
    pub target: RootTarget,
    /// Truncation in the total Q-degree [default: height of the highest root].
    #[arg(long)]
    pub order: Option<u32>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct HilbArgs {
    #[command(flatten)]
    pub target: RootTarget,
    #[arg(long, default_value_t = 3)]
    pub order: u32,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct RepcountArgs {
    #[arg(long)]
    pub quiver: String,
    #[arg(long, value_parser = parse_dim)]
    pub dim: DimVector,
    #[arg(long)]
    pub q: u64,
    #[arg(long, value_enum)]
    pub what: CountKind,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// `all`, a check name, or a group prefix such as `dtpt` or `u-motive`.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Restrict finite-field checks to these `q`.
    #[arg(long, value_delimiter = ',')]
    pub q: Option<Vec<u64>>,
    /// Override the truncation order of series checks.
    #[arg(long)]
    pub order: Option<u32>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

fn parse_dim(s: &str) -> Result<DimVector, String> {
    DimVector::parse(s).map_err(|e| format!("bad dimension vector {s:?}: {e}"))
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Count(#[from] RepCountError),
    #[error(transparent)]
    Dt(#[from] DtError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("verification failed: {0}")]
    Verify(String),
}

impl From<RootsError> for CliError {
    fn from(e: RootsError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<QuiverError> for CliError {
    fn from(e: QuiverError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Count(RepCountError::TooLarge { .. }) => 3,
            CliError::Count(
                RepCountError::NotPrimePower(_)
                | RepCountError::UnsupportedFieldSize(_)
                | RepCountError::InvalidFieldElement { .. }
                | RepCountError::Quiver(_),
            ) => 2,
            _ => 1,
        }
    }
}

fn load_quiver(name: &str) -> Result<Quiver, CliError> {
    if let Ok(q) = Quiver::from_name(name) {
        return Ok(q);
    }
    let text = std::fs::read_to_string(name).map_err(|e| {
        CliError::Usage(format!(
            "{name:?} is neither a built-in quiver nor a readable file: {e}"
        ))
    })?;
    let v: Value =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{name}: {e}")))?;
    Ok(Quiver::from_json(&v)?)
}

fn load_roots(ty: Option<&str>, group: Option<&str>) -> Result<AffineRootSystem, CliError> {
    match (ty, group) {
        (Some(t), None) => Ok(AffineRootSystem::from_type(t)?),
        (None, Some(g)) => Ok(AffineRootSystem::from_mckay_group(g)?),
        _ => Err(CliError::Usage(
            "give exactly one of --type, --group".into(),
        )),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn sq_text(z: &SQSeries) -> String {
    let mut out = String::new();
    let names: Vec<String> = (1..z.delta().len()).map(|i| format!("Q{i}")).collect();
    for (n, qexp, c) in z.sq_terms() {
        let mut mono = format!("s^{n}");
        for (name, e) in names.iter().zip(&qexp) {
            if *e != 0 {
                let _ = write!(mono, " {name}^{e}");
            }
        }
        let _ = writeln!(out, "{mono:<24} {}", c.display_l());
    }
    out
}

fn series_text(s: &MSeries) -> String {
    let vars = s.grading().vars();
    let mut out = String::new();
    for (e, c) in s.terms() {
        let mono: Vec<String> = vars
            .iter()
            .zip(e)
            .filter(|(_, &k)| k > 0)
            .map(|(v, k)| format!("{v}^{k}"))
            .collect();
        let mono = if mono.is_empty() {
            "1".to_string()
        } else {
            mono.join(" ")
        };
        let _ = writeln!(out, "{mono:<24} {}", c.display_l());
    }
    out
}

fn omega_text(t: &OmegaTable) -> String {
    let mut out = String::new();
    for (a, c) in t.iter() {
        let _ = writeln!(out, "{:<24} {}", a.to_string(), c.display_l());
    }
    out
}

fn run_kac(a: &KacArgs) -> Result<String, CliError> {
    let quiver = load_quiver(&a.quiver)?;
    quiver.check_dim(&a.dim)?;
    let samples =
        a.q.iter()
            .map(|&q| Ok((q, BigInt::from(kac_bruteforce(&quiver, &a.dim, q)?))))
            .collect::<Result<Vec<_>, CliError>>()?;
    let chi = quiver.euler_form(&a.dim, &a.dim)?;
    let degree = (1 - chi).max(0) as usize;
    let poly = interpolate_kac(&samples, degree)?;
    Ok(match a.format {
        Format::Json => pretty(&json!({
            "quiver": a.quiver,
            "dim": a.dim.entries(),
            "samples": samples.iter().map(|(q, c)| json!({"q": q, "count": c.to_string()})).collect::<Vec<_>>(),
            "polynomial": crate::coeff::poly_to_json(&poly),
            "text": poly.display_in("q"),
        })),
        Format::Text => {
            let mut out = String::new();
            for (q, c) in &samples {
                let _ = writeln!(out, "q = {q:<4} a = {c}");
            }
            let _ = writeln!(out, "a_{}(q) = {}", a.dim, poly.display_in("q"));
            out
        }
    })
}

fn run_universal(a: &UniversalArgs) -> Result<String, CliError> {
    let t = &a.target;
    let (grading, kac, name) = match (&t.quiver, &t.ty, &t.group) {
        (Some(name), None, None) if name == "jordan" => {
            let g = Grading::indexed(1, a.order);
            (g.clone(), KacTable::jordan(&g), name.clone())
        }
        (Some(name), None, None) if name.starts_with("affine:") => {
            let sys = AffineRootSystem::from_type(&name["affine:".len()..])?;
            let g = affine_grading(&sys, a.order);
            (g.clone(), KacTable::affine(&sys, &g), sys.tag())
        }
        (Some(name), None, None) => {
            let quiver = load_quiver(name)?;
            let g = Grading::indexed(quiver.vertex_count(), a.order);
            let alphas: Vec<DimVector> = g
                .admitted_exponents()
                .into_iter()
                .filter(|e| e.iter().any(|&x| x > 0))
                .map(DimVector)
                .collect();
            (
                g,
                KacTable::from_oracle(&quiver, &alphas, &a.q)?,
                name.clone(),
            )
        }
        (None, ty, group) => {
            let sys = load_roots(ty.as_deref(), group.as_deref())?;
            let g = affine_grading(&sys, a.order);
            (g.clone(), KacTable::affine(&sys, &g), sys.tag())
        }
        _ => return Err(CliError::Usage("give exactly one target".into())),
    };
    let au = universal_series(&kac, &grading)?;
    let omega = omega_extract(&au)?;
    Ok(match a.format {
        Format::Json => pretty(&json!({
            "target": name,
            "kac_source": kac.source().tag(),
            "universal": series_to_json(&au),
            "omega": omega.to_json(),
        })),
        Format::Text => format!(
            "A_U ({name}, order {})\n{}\nOmega\n{}",
            a.order,
            series_text(&au),
            omega_text(&omega)
        ),
    })
}

fn sq_output(z: &SQSeries, format: Format, title: &str) -> String {
    match format {
        Format::Json => pretty(&z.to_json()),
        Format::Text => format!("{title} [{}]\n{}", z.convention().tag(), sq_text(z)),
    }
}

fn run_series(a: &SeriesArgs, euler: bool) -> Result<String, CliError> {
    let sys = load_roots(a.target.ty.as_deref(), a.target.group.as_deref())?;
    let mode = StabilityMode::from(a.mode);
    let z = mckay_series(&sys, mode, a.order)?;
    let title = format!(
        "Z_{} {} s-order {}",
        mode.to_string().to_uppercase(),
        sys.tag(),
        a.order
    );
    if euler {
        let e = euler_limit(&z)?;
        return Ok(sq_output(&e, a.format, &format!("Euler limit of {title}")));
    }
    Ok(sq_output(&z, a.format, &title))
}

fn run_gv(a: &GvArgs) -> Result<String, CliError> {
    let sys = load_roots(a.target.ty.as_deref(), a.target.group.as_deref())?;
    let order = a.order.unwrap_or_else(|| verify::max_height(&sys));
    let table = gv_extract(&pt_euler_symbolic(&sys, order)?)?;
    Ok(match a.format {
        Format::Json => {
            pretty(&json!({"roots_type": sys.tag(), "order": order, "gv": table.to_json()}))
        }
        Format::Text => {
            let mut out = format!("GV invariants {} (Q-degree <= {})\n", sys.tag(), order);
            for (beta, ns) in table.iter() {
                for (g, n) in ns.iter().enumerate() {
                    if n.sign() != num_bigint::Sign::NoSign {
                        let _ = writeln!(out, "g = {g}  beta = {beta:?}  n = {n}");
                    }
                }
            }
            out
        }
    })
}

fn run_hilb(a: &HilbArgs) -> Result<String, CliError> {
    let sys = load_roots(a.target.ty.as_deref(), a.target.group.as_deref())?;
    let z = hilbert_series_zy(sys.rank(), a.order)?;
    Ok(sq_output(
        &z,
        a.format,
        &format!("Z_Y l = {} s-order {}", sys.rank(), a.order),
    ))
}

fn run_repcount(a: &RepcountArgs) -> Result<String, CliError> {
    let quiver = load_quiver(&a.quiver)?;
    quiver.check_dim(&a.dim)?;
    let v = match a.what {
        CountKind::Preprojective => {
            let mut r = count_preprojective(&quiver, &a.dim, a.q)?;
            r.quiver = a.quiver.clone();
            r.to_json()
        }
        CountKind::Fiber0 | CountKind::Fiber1 => {
            let c = if a.what == CountKind::Fiber0 { 0 } else { 1 };
            let mut r = count_potential_fiber(&quiver.loop_double(), &a.dim, a.q, c)?;
            r.quiver = format!("loop-double:{}", a.quiver);
            let mut v = r.to_json();
            v["value"] = json!(c);
            v
        }
        CountKind::Kac => json!({
            "quiver": a.quiver,
            "dim": a.dim.entries(),
            "q": a.q,
            "count": kac_bruteforce(&quiver, &a.dim, a.q)?,
            "method": "orbit-enumeration",
        }),
    };
    Ok(pretty(&v))
}

fn run_verify(a: &VerifyArgs) -> Result<String, CliError> {
    let outcomes = run_suite(&a.suite, a.q.as_deref(), a.order).map_err(CliError::Usage)?;
    let text = match a.format {
        Format::Json => pretty(&json!(outcomes
            .iter()
            .map(CheckOutcome::to_json)
            .collect::<Vec<_>>())),
        Format::Text => {
            let mut out = String::new();
            for o in &outcomes {
                let _ = writeln!(out, "{}", o.line());
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            let _ = writeln!(out, "{} checks, {} failed", outcomes.len(), failed);
            out
        }
    };
    emit(&text);
    match outcomes.iter().find(|o| !o.passed) {
        Some(o) => Err(CliError::Verify(format!("{} ({})", o.name, o.detail))),
        None => Ok(String::new()),
    }
}

/// Runs a parsed command, returning its output.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Kac(a) => run_kac(a),
        Command::Universal(a) => run_universal(a),
        Command::Series(a) => run_series(a, false),
        Command::Euler(a) => run_series(a, true),
        Command::Gv(a) => run_gv(a),
        Command::Hilb(a) => run_hilb(a),
        Command::Repcount(a) => run_repcount(a),
        Command::Verify(a) => run_verify(a),
    }
}

// A closed pipe (`| head`) is not an error worth reporting.
fn emit(text: &str) {
    use std::io::Write as _;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

/// Entry point of the binary.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(mut out) => {
            if !out.is_empty() && !out.ends_with('\n') {
                out.push('\n');
            }
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
