//! Invariant checks for the whole pipeline, each reported as a [`CheckResult`].

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::num::NonZeroUsize;
use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coin::{ModelParams, QubitState};
use crate::error::Result;
use crate::evolution::{time_averages, WaveWindow};
use crate::gf::{self, GfKernel, Side};
use crate::sgf;
use crate::{C64, DEFAULT_TOL};

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Worst observed value of the checked quantity.
    pub value: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, passed: bool, value: f64, tolerance: f64, detail: String) -> Self {
        Self {
            name: name.to_string(),
            passed,
            value,
            tolerance,
            detail,
        }
    }

    fn below(name: &str, value: f64, tolerance: f64, detail: String) -> Self {
        Self::new(name, value < tolerance, value, tolerance, detail)
    }

    /// One line: `PASS name value=… tol=… detail`.
    pub fn line(&self) -> String {
        format!(
            "{} {} value={:e} tol={:e} {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.value,
            self.tolerance,
            self.detail
        )
    }
}

/// Knobs for [`run_all`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    /// Shorter runs and coarser scans.
    pub quick: bool,
    /// Threshold for the checks that default to `1e-12`.
    pub tol: f64,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            quick: false,
            tol: DEFAULT_TOL,
            seed: 20_240_611,
        }
    }
}

pub fn hadamard() -> ModelParams {
    ModelParams::new(0.0, 0.0).expect("finite")
}

pub fn quarter_phase() -> ModelParams {
    ModelParams::new(1.5 * PI, PI).expect("finite")
}

pub fn state_left() -> QubitState {
    QubitState::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0))
}

pub fn state_mixed() -> QubitState {
    QubitState::new(C64::new(0.0, FRAC_1_SQRT_2), C64::new(FRAC_1_SQRT_2, 0.0))
}

/// A small set of normalized states with distinct phases.
pub fn sample_states() -> [QubitState; 5] {
    let polar = |a: f64, p1: f64, p2: f64| {
        QubitState::new(
            C64::from_polar(a, p1),
            C64::from_polar((1.0 - a * a).sqrt(), p2),
        )
    };
    [
        state_left(),
        QubitState::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0)),
        state_mixed(),
        polar(0.6, 0.3, -1.1),
        polar(0.35, 2.4, 0.9),
    ]
}

fn random_params(rng: &mut ChaCha8Rng) -> ModelParams {
    ModelParams::new(
        rng.gen_range(-2.0 * PI..2.0 * PI),
        rng.gen_range(-2.0 * PI..2.0 * PI),
    )
    .expect("finite")
}

/// `f` applied to every item, spread over the available cores, results in input order.
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let workers = thread::available_parallelism()
        .map(NonZeroUsize::get)
        .unwrap_or(1)
        .min(items.len().max(1));
    let chunk = items.len().div_ceil(workers).max(1);
    thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| s.spawn(|| part.iter().map(&f).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

/// Largest `|‖Ψ_t‖² − 1|` over `t ≤ steps`.
pub fn max_norm_drift(params: &ModelParams, phi0: QubitState, steps: usize) -> Result<f64> {
    let mut w = WaveWindow::initial(phi0)?;
    let mut worst = (w.norm_sqr() - 1.0).abs();
    for _ in 0..steps {
        w = w.step(params);
        worst = worst.max((w.norm_sqr() - 1.0).abs());
    }
    Ok(worst)
}

pub fn check_norm_conservation(opts: &SuiteOptions) -> Result<CheckResult> {
    let steps = if opts.quick { 1_000 } else { 10_000 };
    let angles: Vec<f64> = (0..5).map(|k| k as f64 * PI / 2.0).collect();
    let states = [state_left(), sample_states()[1], state_mixed()];
    let mut cases = Vec::new();
    for &sp in &angles {
        for &sm in &angles {
            for &phi in &states {
                cases.push((ModelParams::new(sp, sm)?, phi));
            }
        }
    }
    let drifts = par_map(&cases, |(p, phi)| max_norm_drift(p, *phi, steps));
    let worst = drifts
        .into_iter()
        .try_fold(0.0f64, |m, d| d.map(|d| m.max(d)))?;
    Ok(CheckResult::below(
        "norm-conservation",
        worst,
        1e-10,
        format!("{} runs of {steps} steps", cases.len()),
    ))
}

pub fn check_eigen_residual(opts: &SuiteOptions) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut worst = 0.0f64;
    let mut relative_cases = 0;
    for _ in 0..20 {
        let p = random_params(&mut rng);
        for pair in sgf::eigenvalues(&p) {
            let r = if pair.is_normalizable(&p) {
                sgf::eigen_residual(&pair, &p, 30)?
            } else {
                relative_cases += 1;
                sgf::eigen_residual_relative(&pair, &p, 30)?
            };
            worst = worst.max(r);
        }
    }
    Ok(CheckResult::below(
        "eigen-residual",
        worst,
        opts.tol,
        format!("80 eigenpairs at L=30, {relative_cases} growing ones measured relative to peak"),
    ))
}

fn rel_err(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        ((a - b) / b).abs()
    }
}

pub fn check_stationary_law(opts: &SuiteOptions) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5eed);
    let mut ratio_err = 0.0f64;
    for _ in 0..20 {
        let p = random_params(&mut rng);
        for pair in sgf::eigenvalues(&p) {
            let rate = pair.decay_rate(&p);
            let mu = |x: i64| sgf::eigenvector_at(&pair, &p, x).norm_sqr();
            for x in 1..10 {
                ratio_err = ratio_err.max((mu(x + 1) / mu(x) - rate).abs());
                ratio_err = ratio_err.max((mu(-x - 1) / mu(-x) - rate).abs());
            }
        }
    }
    let mut form_err = 0.0f64;
    let c = C64::new(0.6, -0.3);
    let c2 = c.norm_sqr();
    let fixtures: [(ModelParams, u8, f64, f64); 3] = [
        (hadamard(), 1, 2.0, 1.0 / 3.0),
        (quarter_phase(), 1, 3.0, 1.0 / 5.0),
        (quarter_phase(), 3, 1.0, 1.0),
    ];
    for (p, j, pre, rate) in fixtures {
        let pair = sgf::eigenpair(&p, j)?.with_scale(c);
        for x in -12i64..=12 {
            let expect = if x == 0 {
                c2
            } else {
                pre * c2 * rate.powi(x.unsigned_abs() as i32)
            };
            form_err = form_err.max(rel_err(sgf::stationary_measure(&pair, &p, x), expect));
            let measured = sgf::eigenvector_at(&pair, &p, x).norm_sqr();
            form_err = form_err.max(rel_err(measured, expect));
        }
    }
    // exact up to the rounding of sin(π/4)
    let form_tol = 1e-14;
    let passed = ratio_err < opts.tol && form_err < form_tol;
    Ok(CheckResult::new(
        "stationary-law",
        passed,
        ratio_err,
        opts.tol,
        format!("decay ratios over 80 eigenpairs; worst relative error in fixture forms {form_err:e} (tol {form_tol:e})"),
    ))
}

/// A root of `cos(θ + σ + φ̃(θ))` on the localization arcs, i.e. a zero of `Λ̃₀`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRoot {
    pub theta: f64,
    pub residual: f64,
}

/// Outcome of [`scan_zeros`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub roots: Vec<ScanRoot>,
    /// Smallest `|Λ̃₀|` over grid points at least `exclusion` away from every
    /// closed-form singular point.
    pub min_away: f64,
}

fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// Brute-force search for zeros of `Λ̃₀(e^{iθ})` on `n` grid points split
/// over the two arcs, refined by bisection (sign changes) or golden-section
/// search (touching minima).
pub fn scan_zeros(params: &ModelParams, n: usize, exclusion: f64) -> Result<ScanReport> {
    let sigma = params.sigma();
    let g = |t: f64| -> Result<f64> { Ok((t + sigma + gf::tilde_phi(t)?).cos()) };
    let closed: Vec<f64> = gf::singular_points(params)
        .points()
        .iter()
        .map(|p| p.theta())
        .collect();
    let per_arc = (n / 2).max(2);
    let mut roots = Vec::new();
    let mut min_away = f64::INFINITY;
    for start in [PI / 4.0, 5.0 * PI / 4.0] {
        let at = |i: usize| start + PI / 2.0 * i as f64 / (per_arc - 1) as f64;
        let vals: Vec<f64> = (0..per_arc).map(|i| g(at(i))).collect::<Result<_>>()?;
        for (i, &v) in vals.iter().enumerate() {
            let t = at(i);
            if closed.iter().all(|&c| circular_distance(t, c) >= exclusion) {
                min_away = min_away.min(2.0 * v.abs());
            }
            if v == 0.0 {
                roots.push(ScanRoot {
                    theta: t,
                    residual: 0.0,
                });
            }
        }
        for i in 0..per_arc - 1 {
            let (a, b) = (vals[i], vals[i + 1]);
            if a * b < 0.0 {
                let t = bisect(&g, at(i), at(i + 1), a)?;
                roots.push(ScanRoot {
                    theta: t,
                    residual: 2.0 * g(t)?.abs(),
                });
            }
            if i > 0 {
                let m = vals[i].abs();
                let touching = m <= vals[i - 1].abs() && m <= vals[i + 1].abs();
                if touching && vals[i - 1] * vals[i + 1] > 0.0 && a * b > 0.0 && m < 1e-6 {
                    let (t, r) = golden_min(|t| g(t).map(f64::abs), at(i - 1), at(i + 1))?;
                    if r < 1e-10 {
                        roots.push(ScanRoot {
                            theta: t,
                            residual: 2.0 * r,
                        });
                    }
                }
            }
        }
    }
    Ok(ScanReport { roots, min_away })
}

fn bisect(g: &impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64, mut g_lo: f64) -> Result<f64> {
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let gm = g(mid)?;
        if gm == 0.0 {
            return Ok(mid);
        }
        if gm * g_lo < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            g_lo = gm;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn golden_min(f: impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    for _ in 0..100 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d)?;
        }
    }
    let t = 0.5 * (a + b);
    Ok((t, f(t)?))
}

pub fn check_singular_points(opts: &SuiteOptions) -> Result<CheckResult> {
    let (count, grid) = if opts.quick {
        (10, 100_000)
    } else {
        (50, 1_000_000)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xfeed);
    let params: Vec<ModelParams> = (0..count).map(|_| random_params(&mut rng)).collect();
    let outcomes = par_map(&params, |p| -> Result<(f64, bool, f64)> {
        let k = GfKernel::new(*p);
        let closed: Vec<f64> = gf::singular_points(p)
            .points()
            .iter()
            .map(|q| q.theta())
            .collect();
        let mut zero = 0.0f64;
        for &t in &closed {
            zero = zero.max(k.big_lambda0(t)?.norm());
        }
        let scan = scan_zeros(p, grid, 1e-3)?;
        let found_all = closed.iter().all(|&c| {
            scan.roots
                .iter()
                .any(|r| circular_distance(r.theta, c) < 1e-6)
        });
        let nothing_extra = scan
            .roots
            .iter()
            .all(|r| closed.iter().any(|&c| circular_distance(r.theta, c) < 1e-6));
        Ok((zero, found_all && nothing_extra, scan.min_away))
    });
    let mut worst_zero = 0.0f64;
    let mut mismatches = 0;
    let mut min_away = f64::INFINITY;
    for o in outcomes {
        let (z, ok, away) = o?;
        worst_zero = worst_zero.max(z);
        mismatches += usize::from(!ok);
        min_away = min_away.min(away);
    }
    let passed = worst_zero < opts.tol && mismatches == 0 && min_away > 1e-6;
    Ok(CheckResult::new(
        "singular-points",
        passed,
        worst_zero,
        opts.tol,
        format!(
            "{count} random σ, {grid}-point scan: {mismatches} root-set mismatches, min |Λ̃₀| away from poles {min_away:e}"
        ),
    ))
}

/// `1/(4(1 + ∂φ̃/∂θ)²)` with a central-difference derivative.
pub fn residue_norm_sq_fd(kernel: &GfKernel, theta: f64, h: f64) -> Result<f64> {
    let d = kernel.tilde_phi_derivative_fd(theta, h)?;
    Ok(1.0 / (4.0 * (1.0 + d).powi(2)))
}

pub fn check_residues(opts: &SuiteOptions) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xbeef);
    let mut worst = 0.0f64;
    let mut params = vec![hadamard()];
    params.extend((0..50).map(|_| random_params(&mut rng)));
    for p in &params {
        let k = GfKernel::new(*p);
        for pt in gf::singular_points(p).points() {
            let closed = gf::residue_norm_sq(p, pt.branch)?;
            let route = residue_norm_sq_fd(&k, pt.theta(), 1e-6)?;
            worst = worst.max((closed - route).abs());
        }
    }
    let p0 = hadamard();
    let k0 = GfKernel::new(p0);
    let mut origin_err = 0.0f64;
    for pt in gf::singular_points(&p0).points() {
        origin_err = origin_err.max((gf::residue_norm_sq(&p0, pt.branch)? - 1.0 / 36.0).abs());
        origin_err =
            origin_err.max((residue_norm_sq_fd(&k0, pt.theta(), 1e-6)? - 1.0 / 36.0).abs());
    }
    let tol = 1e-8;
    Ok(CheckResult::new(
        "residues",
        worst < tol && origin_err < tol,
        worst,
        tol,
        format!("closed form vs finite-difference route at 51 σ; |value − 1/36| at σ=0 is {origin_err:e}"),
    ))
}

pub fn check_limit_fixtures(_opts: &SuiteOptions) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for phi in sample_states() {
        worst = worst.max((gf::limit_measure(&hadamard(), phi, 0)? - 2.0 / 9.0).abs());
    }
    worst = worst.max((gf::limit_measure(&quarter_phase(), state_left(), 0)? - 4.0 / 25.0).abs());
    let quarter = ModelParams::new(PI / 2.0, 0.0)?;
    for phi in sample_states() {
        for x in -20..=20 {
            worst = worst.max(gf::nu(&quarter, phi, x, Side::Minus).abs());
        }
    }
    // a few ulps of 2/9
    let tol = 1e-15;
    Ok(CheckResult::below(
        "limit-fixtures",
        worst,
        tol,
        "σ=0 origin mass over 5 states, σ=π/4 origin mass, ν⁻ at σ=π/4 on [−20, 20]".into(),
    ))
}

/// `(2π/7) k` for `k = 0..7`, avoiding `sin σ ∈ {±1/√2, ±1}` exactly.
pub fn seven_grid() -> Vec<ModelParams> {
    let mut out = Vec::new();
    for i in 0..7 {
        for j in 0..7 {
            let a = 2.0 * PI * i as f64 / 7.0;
            let b = 2.0 * PI * j as f64 / 7.0;
            out.push(ModelParams::new(a, b).expect("finite"));
        }
    }
    out
}

pub fn check_pipeline(opts: &SuiteOptions) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for p in seven_grid() {
        for phi in sample_states() {
            for x in -10..=10 {
                let a = gf::limit_measure(&p, phi, x)?;
                let b = gf::limit_measure_from_residues(&p, phi, x)?;
                worst = worst.max((a - b).abs());
            }
        }
    }
    Ok(CheckResult::below(
        "residue-pipeline",
        worst,
        opts.tol,
        "49 parameter pairs × 5 states × x ∈ [−10, 10]".into(),
    ))
}

/// `|time_average(T)(0) − μ̄_∞(0)|` for each horizon.
pub fn convergence_errors(
    params: &ModelParams,
    phi0: QubitState,
    horizons: &[usize],
) -> Result<Vec<f64>> {
    let target = gf::limit_measure(params, phi0, 0)?;
    Ok(time_averages(params, phi0, horizons)?
        .iter()
        .map(|m| (m.get(0) - target).abs())
        .collect())
}

pub fn check_convergence(_opts: &SuiteOptions) -> Result<CheckResult> {
    let horizons = [100, 1_000, 10_000];
    let cases = [
        (hadamard(), state_left()),
        (hadamard(), state_mixed()),
        (quarter_phase(), state_left()),
        (quarter_phase(), state_mixed()),
    ];
    let runs = par_map(&cases, |(p, phi)| convergence_errors(p, *phi, &horizons));
    let mut worst_final = 0.0f64;
    let mut monotone = true;
    let mut detail = Vec::new();
    for errs in runs {
        let errs = errs?;
        monotone &= errs.windows(2).all(|w| w[1] < w[0]);
        worst_final = worst_final.max(errs[2]);
        detail.push(format!("[{:.3e} {:.3e} {:.3e}]", errs[0], errs[1], errs[2]));
    }
    let tol = 0.02;
    Ok(CheckResult::new(
        "convergence",
        monotone && worst_final < tol,
        worst_final,
        tol,
        format!(
            "errors at T=1e2,1e3,1e4: {} decreasing={monotone}",
            detail.join(" ")
        ),
    ))
}

pub fn check_symmetry(opts: &SuiteOptions) -> Result<CheckResult> {
    let mut even = true;
    for p in seven_grid()
        .into_iter()
        .chain([hadamard(), quarter_phase()])
    {
        for phi in sample_states() {
            for x in 1..=50 {
                even &= gf::limit_measure(&p, phi, x)? == gf::limit_measure(&p, phi, -x)?;
            }
        }
    }
    let w = crate::evolution::evolve(&quarter_phase(), state_left(), 10_000)?;
    let gap = w.distribution().asymmetry_gap();
    let threshold = 10.0 * opts.tol;
    Ok(CheckResult::new(
        "symmetry",
        even && gap > threshold,
        gap,
        threshold,
        format!("limit measure exactly even: {even}; simulated gap at t=1e4 must exceed tol"),
    ))
}

/// One row of the stationary-vs-limit comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrespondenceRow {
    pub x: i64,
    pub nu_plus: f64,
    pub stationary_j1_scaled: f64,
    pub nu_minus: f64,
    pub stationary_j3_scaled: f64,
}

/// Stationary measures of `j = 1` and `j = 3` with `|c|²` set to the gated
/// origin masses `ν⁺(0)` and `ν⁻(0)`, next to the gated `ν^(±)`.
pub fn correspondence_table(
    params: &ModelParams,
    phi0: QubitState,
    lo: i64,
    hi: i64,
) -> Result<Vec<CorrespondenceRow>> {
    phi0.check_normalized(DEFAULT_TOL)?;
    let scaled = |j: u8, side: Side| -> Result<sgf::Eigenpair> {
        let c2 = gf::gated_nu(params, phi0, 0, side);
        Ok(sgf::eigenpair(params, j)?.with_scale(C64::new(c2.sqrt(), 0.0)))
    };
    let e1 = scaled(1, Side::Plus)?;
    let e3 = scaled(3, Side::Minus)?;
    Ok((lo..=hi)
        .map(|x| CorrespondenceRow {
            x,
            nu_plus: gf::gated_nu(params, phi0, x, Side::Plus),
            stationary_j1_scaled: sgf::stationary_measure(&e1, params, x),
            nu_minus: gf::gated_nu(params, phi0, x, Side::Minus),
            stationary_j3_scaled: sgf::stationary_measure(&e3, params, x),
        })
        .collect())
}

pub fn correspondence_gap(rows: &[CorrespondenceRow]) -> f64 {
    rows.iter()
        .map(|r| {
            (r.nu_plus - r.stationary_j1_scaled)
                .abs()
                .max((r.nu_minus - r.stationary_j3_scaled).abs())
        })
        .fold(0.0, f64::max)
}

pub fn check_correspondence(opts: &SuiteOptions) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for p in [hadamard(), quarter_phase()] {
        for phi in sample_states() {
            worst = worst.max(correspondence_gap(&correspondence_table(&p, phi, -30, 30)?));
        }
    }
    Ok(CheckResult::below(
        "correspondence",
        worst,
        opts.tol,
        "scaled stationary measures vs ν^(±) for σ=0 and σ=π/4, 5 states".into(),
    ))
}

/// Every criterion in order. A check that errors is reported as failed.
pub fn run_all(opts: &SuiteOptions) -> Vec<CheckResult> {
    type Check = fn(&SuiteOptions) -> Result<CheckResult>;
    let checks: [(&str, Check); 10] = [
        ("norm-conservation", check_norm_conservation),
        ("eigen-residual", check_eigen_residual),
        ("stationary-law", check_stationary_law),
        ("singular-points", check_singular_points),
        ("residues", check_residues),
        ("limit-fixtures", check_limit_fixtures),
        ("residue-pipeline", check_pipeline),
        ("convergence", check_convergence),
        ("symmetry", check_symmetry),
        ("correspondence", check_correspondence),
    ];
    checks
        .iter()
        .map(|(name, f)| {
            f(opts).unwrap_or_else(|e| {
                CheckResult::new(name, false, f64::NAN, opts.tol, format!("error: {e}"))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_finds_hadamard_poles() {
        let p = hadamard();
        let scan = scan_zeros(&p, 20_000, 1e-3).unwrap();
        assert_eq!(scan.roots.len(), 4);
        assert!(scan.min_away > 1e-6);
    }

    #[test]
    fn par_map_keeps_order() {
        let v: Vec<i32> = (0..37).collect();
        assert_eq!(
            par_map(&v, |x| x * 2),
            v.iter().map(|x| x * 2).collect::<Vec<_>>()
        );
    }

    #[test]
    fn correspondence_rows_cover_range() {
        let rows = correspondence_table(&quarter_phase(), state_left(), -3, 3).unwrap();
        assert_eq!(rows.len(), 7);
        assert!(rows
            .iter()
            .all(|r| r.nu_minus == 0.0 && r.stationary_j3_scaled == 0.0));
    }

    #[test]
    fn fast_checks_pass() {
        let opts = SuiteOptions::default();
        for c in [
            check_eigen_residual(&opts),
            check_stationary_law(&opts),
            check_residues(&opts),
            check_limit_fixtures(&opts),
            check_pipeline(&opts),
            check_correspondence(&opts),
        ] {
            let c = c.unwrap();
            assert!(c.passed, "{}", c.line());
        }
    }
}
