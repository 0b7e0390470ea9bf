//! Command-line driver.

use std::f64::consts::PI;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::coin::{ModelParams, PolarState, QubitState};
use crate::error::{Error, Result};
use crate::evolution::{evolve, time_average, Measure};
use crate::gf::{self, GfKernel};
use crate::io::{self, Format};
use crate::sgf;
use crate::verify::{self, SuiteOptions};
use crate::{C64, DEFAULT_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Initial states closer than this to unit norm are accepted as given.
const ACCEPT_NORM: f64 = 1e-9;
/// Initial states closer than this are renormalized with a warning.
const RENORMALIZE_NORM: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(
    name = "qwalk",
    version,
    about = "Two-phase quantum walk with a defect at the origin"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distribution at time T
    Evolve(RunArgs),
    /// Time-averaged distribution over t < T
    TimeAverage(RunArgs),
    /// Stationary measure of eigenpair j with scale c
    Stationary(RunArgs),
    /// Time-averaged limit measure
    Limit(RunArgs),
    /// Unit-circle singular points and residue norms
    Singular(RunArgs),
    /// Run the verification suite
    Verify(VerifyArgs),
    /// Simulation, limit measure and scaled stationary measures side by side
    Compare(RunArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// σ₊ as radians or a multiple of pi ("1.5pi")
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub sigma_plus: String,
    /// σ₋ as radians or a multiple of pi
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub sigma_minus: String,
    /// Initial state "α,β", e.g. "1,0" or "0.5i,0.5+0.5i"
    #[arg(long, allow_hyphen_values = true, conflicts_with = "init_polar")]
    pub init: Option<String>,
    /// Initial state in polar form "a,φ₁,b,φ₂"
    #[arg(long, allow_hyphen_values = true)]
    pub init_polar: Option<String>,
    /// Horizon
    #[arg(long = "T", default_value_t = 100)]
    pub horizon: usize,
    /// Window radius
    #[arg(long = "L", default_value_t = 0)]
    pub radius: usize,
    /// Eigenpair index
    #[arg(long, default_value_t = 1)]
    pub j: u8,
    /// Eigenvector scale
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub c: String,
    /// Output file; stdout when omitted
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Tolerance for the periodicity predicate in `compare`
    #[arg(long, env = "QW_TOL")]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Shorter runs and coarser scans
    #[arg(long)]
    pub quick: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, env = "QW_TOL")]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = SuiteOptions::default().seed)]
    pub seed: u64,
}

/// Parse "1.5pi", "-pi" or plain radians.
pub fn parse_angle(s: &str) -> Result<f64> {
    let t = s.trim();
    let bad = || Error::InvalidArgument(format!("invalid angle `{s}`"));
    let v = match t.strip_suffix("pi") {
        Some(k) => {
            let k = match k {
                "" | "+" => 1.0,
                "-" => -1.0,
                k => k.parse::<f64>().map_err(|_| bad())?,
            };
            k * PI
        }
        None => t.parse::<f64>().map_err(|_| bad())?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFiniteAngle(v))
    }
}

/// Parse "a", "bi", "a+bi", "a-bi", "i", "-i".
pub fn parse_complex(s: &str) -> Result<C64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::InvalidArgument(format!("invalid complex number `{s}`"));
    let num = |p: &str| -> Result<f64> {
        match p {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            p => p.parse::<f64>().map_err(|_| bad()),
        }
    };
    let Some(body) = t.strip_suffix('i') else {
        return Ok(C64::new(t.parse::<f64>().map_err(|_| bad())?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let z = match split {
        Some(k) => C64::new(
            body[..k].parse::<f64>().map_err(|_| bad())?,
            num(&body[k..])?,
        ),
        None => C64::new(0.0, num(body)?),
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(bad())
    }
}

fn parse_init(args: &RunArgs) -> Result<(QubitState, Option<String>)> {
    let state = if let Some(p) = &args.init_polar {
        let parts: Vec<&str> = p.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::InvalidArgument(format!(
                "--init-polar expects a,φ₁,b,φ₂, got `{p}`"
            )));
        }
        let modulus = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("invalid modulus `{s}`")))
        };
        QubitState::from_polar(PolarState {
            a: modulus(parts[0])?,
            phi1: parse_angle(parts[1])?,
            b: modulus(parts[2])?,
            phi2: parse_angle(parts[3])?,
        })
    } else {
        let text = args.init.as_deref().unwrap_or("1,0");
        let (a, b) = text
            .split_once(',')
            .ok_or_else(|| Error::InvalidArgument(format!("--init expects α,β, got `{text}`")))?;
        QubitState::new(parse_complex(a)?, parse_complex(b)?)
    };
    normalize_init(state)
}

/// Accept, renormalize with a warning, or reject, by distance from unit norm.
pub fn normalize_init(state: QubitState) -> Result<(QubitState, Option<String>)> {
    let n = state.norm_sqr();
    let dev = (n - 1.0).abs();
    if dev.is_nan() || dev > RENORMALIZE_NORM {
        return Err(Error::NotNormalized { norm_sqr: n });
    }
    let scaled = state.scale(C64::new(1.0 / n.sqrt(), 0.0));
    let warning = (dev > ACCEPT_NORM)
        .then(|| format!("warning: initial state had |α|²+|β|² = {n}; renormalized"));
    Ok((scaled, warning))
}

struct Run {
    params: ModelParams,
    phi0: QubitState,
    c: C64,
    lo: i64,
    hi: i64,
    meta: Value,
}

impl Run {
    fn new(args: &RunArgs) -> Result<(Self, Option<String>)> {
        let params = ModelParams::new(
            parse_angle(&args.sigma_plus)?,
            parse_angle(&args.sigma_minus)?,
        )?;
        let (phi0, warning) = parse_init(args)?;
        let c = parse_complex(&args.c)?;
        if !(1..=4).contains(&args.j) {
            return Err(Error::InvalidArgument(format!(
                "--j must be 1..=4, got {}",
                args.j
            )));
        }
        let r = args.horizon.max(args.radius) as i64;
        let meta = json!({
            "sigma_plus": params.sigma_plus(),
            "sigma_minus": params.sigma_minus(),
            "sigma": params.sigma(),
            "sin_sigma": params.sin_sigma(),
            "init": [[phi0.left.re, phi0.left.im], [phi0.right.re, phi0.right.im]],
            "T": args.horizon,
            "L": args.radius,
            "j": args.j,
            "c": [c.re, c.im],
        });
        Ok((
            Self {
                params,
                phi0,
                c,
                lo: -r,
                hi: r,
                meta,
            },
            warning,
        ))
    }
}

fn write_out(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(path) => io::write_file(path, text),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| Error::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn emit(args: &RunArgs, run: &Run, command: &str, m: &Measure) -> Result<()> {
    let m = m.with_range(run.lo, run.hi);
    write_out(
        &args.output,
        &io::render_measure(&m, args.format, command, &run.meta),
    )
}

#[derive(Serialize)]
struct SingularRow {
    branch: gf::Branch,
    sign: i8,
    re: f64,
    im: f64,
    theta: f64,
    abs_big_lambda0: f64,
    residue_norm_sq: f64,
}

#[derive(Serialize)]
struct CompareRow {
    x: i64,
    simulated: f64,
    thm2: f64,
    nu_plus: f64,
    stationary_j1_scaled: f64,
    nu_minus: f64,
    stationary_j3_scaled: f64,
}

fn table_csv<const N: usize>(header: [&str; N], rows: impl Iterator<Item = [String; N]>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&r.join(","));
        out.push('\n');
    }
    out
}

fn run_singular(args: &RunArgs, run: &Run) -> Result<()> {
    let k = GfKernel::new(run.params);
    let rows = gf::singular_points(&run.params)
        .points()
        .into_iter()
        .map(|p| -> Result<SingularRow> {
            Ok(SingularRow {
                branch: p.branch,
                sign: p.sign,
                re: p.re,
                im: p.im,
                theta: p.theta(),
                abs_big_lambda0: k.big_lambda0(p.theta())?.norm(),
                residue_norm_sq: gf::residue_norm_sq(&run.params, p.branch)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let text = match args.format {
        Format::Csv => table_csv(
            [
                "branch",
                "sign",
                "re",
                "im",
                "theta",
                "abs_big_lambda0",
                "residue_norm_sq",
            ],
            rows.iter().map(|r| {
                [
                    format!("{:?}", r.branch).to_lowercase(),
                    r.sign.to_string(),
                    r.re.to_string(),
                    r.im.to_string(),
                    r.theta.to_string(),
                    r.abs_big_lambda0.to_string(),
                    r.residue_norm_sq.to_string(),
                ]
            }),
        ),
        Format::Json => pretty(&json!({"params": run.meta, "command": "singular", "rows": rows})),
    };
    write_out(&args.output, &text)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}

fn run_compare(args: &RunArgs, run: &Run) -> Result<()> {
    let simulated = time_average(&run.params, run.phi0, args.horizon.max(1))?;
    let table = verify::correspondence_table(&run.params, run.phi0, run.lo, run.hi)?;
    let rows: Vec<CompareRow> = table
        .iter()
        .map(|r| CompareRow {
            x: r.x,
            simulated: simulated.get(r.x),
            thm2: r.nu_plus + r.nu_minus,
            nu_plus: r.nu_plus,
            stationary_j1_scaled: r.stationary_j1_scaled,
            nu_minus: r.nu_minus,
            stationary_j3_scaled: r.stationary_j3_scaled,
        })
        .collect();
    let origin_gap = rows
        .iter()
        .find(|r| r.x == 0)
        .map_or(0.0, |r| (r.simulated - r.thm2).abs());
    let max_gap = rows
        .iter()
        .map(|r| (r.simulated - r.thm2).abs())
        .fold(0.0, f64::max);
    let summary = json!({
        "simulated_vs_thm2_origin_gap": origin_gap,
        "simulated_vs_thm2_max_gap": max_gap,
        "stationary_vs_thm2_max_gap": verify::correspondence_gap(&table),
        "periodicity_condition": sgf::periodicity_condition(&run.params, args.tol.unwrap_or(1e-9)),
    });
    let text = match args.format {
        Format::Csv => {
            eprintln!("{summary}");
            table_csv(
                [
                    "x",
                    "simulated",
                    "thm2",
                    "nu_plus",
                    "stationary_j1_scaled",
                    "nu_minus",
                    "stationary_j3_scaled",
                ],
                rows.iter().map(|r| {
                    [
                        r.x.to_string(),
                        r.simulated.to_string(),
                        r.thm2.to_string(),
                        r.nu_plus.to_string(),
                        r.stationary_j1_scaled.to_string(),
                        r.nu_minus.to_string(),
                        r.stationary_j3_scaled.to_string(),
                    ]
                }),
            )
        }
        Format::Json => pretty(&json!({
            "params": run.meta,
            "command": "compare",
            "summary": summary,
            "rows": rows,
        })),
    };
    write_out(&args.output, &text)
}

fn run_verify(args: &VerifyArgs) -> Result<bool> {
    let opts = SuiteOptions {
        quick: args.quick,
        tol: args.tol.unwrap_or(DEFAULT_TOL),
        seed: args.seed,
    };
    let results = verify::run_all(&opts);
    let passed = results.iter().all(|r| r.passed);
    let text = match args.format {
        Format::Csv => {
            let mut s: String = results.iter().map(|r| r.line() + "\n").collect();
            s.push_str(if passed {
                "ALL PASS\n"
            } else {
                "SOME FAILED\n"
            });
            s
        }
        Format::Json => pretty(&json!({"command": "verify", "passed": passed, "checks": results})),
    };
    write_out(&args.output, &text)?;
    Ok(passed)
}

fn dispatch(command: &Command) -> Result<i32> {
    let (name, args) = match command {
        Command::Verify(v) => {
            return Ok(if run_verify(v)? { EXIT_OK } else { EXIT_VERIFY });
        }
        Command::Evolve(a) => ("evolve", a),
        Command::TimeAverage(a) => ("time-average", a),
        Command::Stationary(a) => ("stationary", a),
        Command::Limit(a) => ("limit", a),
        Command::Singular(a) => ("singular", a),
        Command::Compare(a) => ("compare", a),
    };
    let (run, warning) = Run::new(args)?;
    if let Some(w) = warning {
        eprintln!("{w}");
    }
    match command {
        Command::Evolve(_) => {
            let m = evolve(&run.params, run.phi0, args.horizon)?.distribution();
            emit(args, &run, name, &m)?;
        }
        Command::TimeAverage(_) => {
            let m = time_average(&run.params, run.phi0, args.horizon)?;
            emit(args, &run, name, &m)?;
        }
        Command::Stationary(_) => {
            let pair = sgf::eigenpair(&run.params, args.j)?.with_scale(run.c);
            let m = sgf::stationary_measure_on(&pair, &run.params, run.lo, run.hi);
            emit(args, &run, name, &m)?;
        }
        Command::Limit(_) => {
            let m = gf::limit_measure_on(&run.params, run.phi0, run.lo, run.hi)?;
            emit(args, &run, name, &m)?;
        }
        Command::Singular(_) => run_singular(args, &run)?,
        Command::Compare(_) => run_compare(args, &run)?,
        Command::Verify(_) => unreachable!(),
    }
    Ok(EXIT_OK)
}

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io { .. } => EXIT_IO,
        _ => EXIT_CONFIG,
    }
}

/// Parse `argv`, run, and return the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match dispatch(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles() {
        assert_eq!(parse_angle("1.5pi").unwrap(), 1.5 * PI);
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("-pi").unwrap(), -PI);
        assert_eq!(parse_angle("0.25").unwrap(), 0.25);
        assert!(parse_angle("abc").is_err());
        assert!(parse_angle("inf").is_err());
    }

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("1").unwrap(), C64::new(1.0, 0.0));
        assert_eq!(parse_complex("i").unwrap(), C64::new(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), C64::new(0.0, -1.0));
        assert_eq!(parse_complex("0.5i").unwrap(), C64::new(0.0, 0.5));
        assert_eq!(parse_complex("0.5-0.25i").unwrap(), C64::new(0.5, -0.25));
        assert_eq!(parse_complex("-1e-3+2i").unwrap(), C64::new(-1e-3, 2.0));
        assert_eq!(parse_complex("1e-3i").unwrap(), C64::new(0.0, 1e-3));
        assert!(parse_complex("1+").is_err());
        assert!(parse_complex("x").is_err());
    }

    #[test]
    fn normalization_policy() {
        let s = |a: f64| QubitState::new(C64::new(a, 0.0), C64::new(0.0, 0.0));
        let (ok, w) = normalize_init(s(1.0 + 1e-10)).unwrap();
        assert!(w.is_none() && (ok.norm_sqr() - 1.0).abs() < 1e-15);
        let (_, w) = normalize_init(s(1.0 + 1e-7)).unwrap();
        assert!(w.is_some());
        assert!(normalize_init(s(1.1)).is_err());
        assert!(normalize_init(s(f64::NAN)).is_err());
    }
}
