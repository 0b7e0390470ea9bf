//! Generating-function route to the time-averaged limit measure.
//!
//! On the unit circle `z = e^{iθ}` with `|sin θ| ≥ 1/√2` the kernels are
//! unimodular phases:
//!
//! * `f̃₀^(±)(e^{iθ}) = e^{i(θ ± σ_± + φ̃(θ))}` with `cos φ̃ = √2 cos θ` and
//!   `sin φ̃ = sgn(sin θ) √(2 sin²θ − 1)`,
//! * `λ̃^(+)(z) = z / (e^{−iσ₊} f̃₀^(+) − √2)` and `λ̃^(−)(z) = z / (√2 − e^{iσ₋} f̃₀^(−))`,
//! * `Λ̃₀(z) = 1 + f̃₀^(+) f̃₀^(−)`, whose zeros are the poles of `Ξ̃ₓ`.
//!
//! Strictly inside the disk `f̃₀^(±)` is the smaller-modulus root of its
//! quadratic; its radial limit is the phase above.
//!
//! The limit measure is the sum over poles of the squared residue norms of
//! `Ξ̃ₓ(z) φ₀`. [`limit_measure`] is the closed form; [`limit_measure_from_residues`]
//! assembles the same sum pole by pole.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use serde::Serialize;

use crate::coin::{Matrix2, ModelParams, QubitState};
use crate::error::{Error, Result};
use crate::evolution::Measure;
use crate::{C64, DEFAULT_TOL};

const I: C64 = C64::new(0.0, 1.0);

/// Slack used when testing closed interval endpoints such as `sin σ ≤ 1/√2`.
pub const BRANCH_SLACK: f64 = 1e-12;

/// Which half-line kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Plus,
    Minus,
}

/// The two families of singular points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    Theta1,
    Theta2,
}

/// Kernel values at one point `z`.
#[derive(Debug, Clone, Copy)]
struct KernelValues {
    z: C64,
    f_plus: C64,
    f_minus: C64,
    lt_plus: C64,
    lt_minus: C64,
}

impl KernelValues {
    fn big_lambda0(&self) -> C64 {
        1.0 + self.f_plus * self.f_minus
    }

    fn xi(&self, x: i64) -> Matrix2 {
        let lam = self.big_lambda0();
        let inv = lam.inv();
        match x.signum() {
            0 => Matrix2::new(inv, -self.f_plus * inv, self.f_minus * inv, inv),
            1 => {
                let g = self.lt_plus.powi((x - 1) as i32);
                let col = [g * self.lt_plus * self.f_plus, g * self.z];
                // [0, −1] Ξ̃₀ = −(second row)
                let row = [-self.f_minus * inv, -inv];
                outer(col, row)
            }
            _ => {
                let g = self.lt_minus.powi((-x - 1) as i32);
                let col = [g * self.z, g * self.lt_minus * self.f_minus];
                // [1, 0] Ξ̃₀ = first row
                let row = [inv, -self.f_plus * inv];
                outer(col, row)
            }
        }
    }
}

fn outer(col: [C64; 2], row: [C64; 2]) -> Matrix2 {
    Matrix2::new(
        col[0] * row[0],
        col[0] * row[1],
        col[1] * row[0],
        col[1] * row[1],
    )
}

/// Generating-function kernels for fixed model parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GfKernel {
    params: ModelParams,
}

impl GfKernel {
    pub fn new(params: ModelParams) -> Self {
        Self { params }
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    /// `φ̃(θ)`, defined on the arcs `|sin θ| ≥ 1/√2`.
    pub fn tilde_phi(&self, theta: f64) -> Result<f64> {
        tilde_phi(theta)
    }

    /// `∂φ̃/∂θ = √2 |sin θ| / √(2 sin²θ − 1)`; infinite at the arc endpoints.
    pub fn tilde_phi_derivative(&self, theta: f64) -> Result<f64> {
        let v = branch_radicand(theta)?;
        Ok(SQRT_2 * theta.sin().abs() / v.sqrt())
    }

    /// Central difference of `φ̃` with step `h`, unwrapping the `±π` jump.
    pub fn tilde_phi_derivative_fd(&self, theta: f64, h: f64) -> Result<f64> {
        let d = tilde_phi(theta + h)? - tilde_phi(theta - h)?;
        let d = (d + PI).rem_euclid(2.0 * PI) - PI;
        Ok(d / (2.0 * h))
    }

    fn phase(&self, side: Side) -> f64 {
        match side {
            Side::Plus => self.params.sigma_plus(),
            Side::Minus => -self.params.sigma_minus(),
        }
    }

    /// `f̃₀^(±)(e^{iθ})`.
    pub fn f0(&self, theta: f64, side: Side) -> Result<C64> {
        let phi = tilde_phi(theta)?;
        Ok(C64::from_polar(1.0, theta + self.phase(side) + phi))
    }

    /// `f̃₀^(±)(z)` for `|z| < 1`: the root of
    /// `f² − √2 e^{iψ}(1 + z²) f + e^{2iψ} z² = 0` of smaller modulus,
    /// with `ψ = σ₊` (plus) or `ψ = −σ₋` (minus).
    pub fn f0_inside(&self, z: C64, side: Side) -> C64 {
        let rot = C64::from_polar(1.0, self.phase(side));
        let b = -SQRT_2 * rot * (1.0 + z * z);
        let c = rot * rot * z * z;
        let d = (b * b - 4.0 * c).sqrt();
        let q = if (b + d).norm() >= (b - d).norm() {
            -(b + d) / 2.0
        } else {
            -(b - d) / 2.0
        };
        // q is the large root; the small one follows from the product c.
        if q.norm() == 0.0 {
            return q;
        }
        c / q
    }

    fn lambda_tilde_from(&self, z: C64, f: C64, side: Side) -> C64 {
        match side {
            Side::Plus => z / (C64::from_polar(1.0, -self.params.sigma_plus()) * f - SQRT_2),
            Side::Minus => z / (SQRT_2 - C64::from_polar(1.0, self.params.sigma_minus()) * f),
        }
    }

    /// `λ̃^(±)(e^{iθ})`.
    pub fn lambda_tilde(&self, theta: f64, side: Side) -> Result<C64> {
        let f = self.f0(theta, side)?;
        Ok(self.lambda_tilde_from(C64::from_polar(1.0, theta), f, side))
    }

    /// `λ̃^(±)(z)` for `|z| < 1`.
    pub fn lambda_tilde_inside(&self, z: C64, side: Side) -> C64 {
        self.lambda_tilde_from(z, self.f0_inside(z, side), side)
    }

    /// `Λ̃₀(e^{iθ}) = 1 + f̃₀^(+) f̃₀^(−)`.
    pub fn big_lambda0(&self, theta: f64) -> Result<C64> {
        Ok(self.values_on_circle(theta)?.big_lambda0())
    }

    /// `Λ̃₀(z)` for `|z| < 1`.
    pub fn big_lambda0_inside(&self, z: C64) -> C64 {
        self.values_inside(z).big_lambda0()
    }

    fn values_on_circle(&self, theta: f64) -> Result<KernelValues> {
        let z = C64::from_polar(1.0, theta);
        let f_plus = self.f0(theta, Side::Plus)?;
        let f_minus = self.f0(theta, Side::Minus)?;
        Ok(KernelValues {
            z,
            f_plus,
            f_minus,
            lt_plus: self.lambda_tilde_from(z, f_plus, Side::Plus),
            lt_minus: self.lambda_tilde_from(z, f_minus, Side::Minus),
        })
    }

    fn values_inside(&self, z: C64) -> KernelValues {
        let f_plus = self.f0_inside(z, Side::Plus);
        let f_minus = self.f0_inside(z, Side::Minus);
        KernelValues {
            z,
            f_plus,
            f_minus,
            lt_plus: self.lambda_tilde_from(z, f_plus, Side::Plus),
            lt_minus: self.lambda_tilde_from(z, f_minus, Side::Minus),
        }
    }

    /// `Ξ̃ₓ(e^{iθ})`. Fails at the poles and off the localization arcs.
    pub fn xi_tilde_matrix(&self, theta: f64, x: i64) -> Result<Matrix2> {
        let v = self.values_on_circle(theta)?;
        if v.big_lambda0().norm() < 1e-10 {
            return Err(Error::Pole(v.z));
        }
        Ok(v.xi(x))
    }

    /// `Ξ̃ₓ(z)` for `|z| < 1`.
    pub fn xi_tilde_inside(&self, z: C64, x: i64) -> Matrix2 {
        self.values_inside(z).xi(x)
    }

    /// Residue of `Ξ̃ₓ(z) φ₀` at the unit-circle pole `z0`, from the radial
    /// limit `(z − z0) Ξ̃ₓ(z) φ₀` with `z = (1 − ε) z0`,
    /// `ε ∈ {1e-3, 1e-4, 1e-5}`, Richardson-extrapolated to `ε = 0`.
    pub fn numeric_residue(&self, z0: C64, x: i64, phi0: QubitState) -> QubitState {
        let sample = |eps: f64| {
            let z = z0 * (1.0 - eps);
            self.xi_tilde_inside(z, x).apply(phi0).scale(z - z0)
        };
        let g = [sample(1e-3), sample(1e-4), sample(1e-5)];
        let lin = |fine: QubitState, coarse: QubitState, k: f64| {
            QubitState::new(
                (k * fine.left - coarse.left) / (k - 1.0),
                (k * fine.right - coarse.right) / (k - 1.0),
            )
        };
        let r1 = lin(g[1], g[0], 10.0);
        let r2 = lin(g[2], g[1], 10.0);
        lin(r2, r1, 100.0)
    }
}

fn branch_radicand(theta: f64) -> Result<f64> {
    let s = theta.sin();
    let v = 2.0 * s * s - 1.0;
    if v < -BRANCH_SLACK || !v.is_finite() {
        return Err(Error::OutOfBranch { theta });
    }
    Ok(v.max(0.0))
}

/// `φ̃(θ) ∈ (−π, π]` with `sin φ̃ = sgn(sin θ)√(2 sin²θ − 1)`, `cos φ̃ = √2 cos θ`.
pub fn tilde_phi(theta: f64) -> Result<f64> {
    let v = branch_radicand(theta)?;
    let sin_phi = theta.sin().signum() * v.sqrt();
    let cos_phi = SQRT_2 * theta.cos();
    Ok(sin_phi.atan2(cos_phi))
}

/// A pole of `Ξ̃ₓ` on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingularPoint {
    pub branch: Branch,
    /// `+1` for `θ^(+)`, `−1` for `θ^(−)`.
    pub sign: i8,
    pub re: f64,
    pub im: f64,
}

impl SingularPoint {
    pub fn z(&self) -> C64 {
        C64::new(self.re, self.im)
    }

    /// Argument in `[0, 2π)`.
    pub fn theta(&self) -> f64 {
        self.z().arg().rem_euclid(2.0 * PI)
    }
}

/// The unit-circle poles, grouped by family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularSet {
    pub sin_sigma: f64,
    pub theta1: Option<[C64; 2]>,
    pub theta2: Option<[C64; 2]>,
}

impl SingularSet {
    pub fn points(&self) -> Vec<SingularPoint> {
        let mut out = Vec::with_capacity(4);
        for (branch, pair) in [(Branch::Theta1, self.theta1), (Branch::Theta2, self.theta2)] {
            if let Some([p, m]) = pair {
                for (sign, z) in [(1, p), (-1, m)] {
                    out.push(SingularPoint {
                        branch,
                        sign,
                        re: z.re,
                        im: z.im,
                    });
                }
            }
        }
        out
    }

    pub fn contains(&self, branch: Branch) -> bool {
        match branch {
            Branch::Theta1 => self.theta1.is_some(),
            Branch::Theta2 => self.theta2.is_some(),
        }
    }
}

/// `θ₁` points present iff `sin σ ≤ 1/√2`.
pub fn theta1_present(sin_sigma: f64) -> bool {
    sin_sigma <= FRAC_1_SQRT_2 + BRANCH_SLACK
}

/// `θ₂` points present iff `sin σ ≥ −1/√2`.
pub fn theta2_present(sin_sigma: f64) -> bool {
    sin_sigma >= -FRAC_1_SQRT_2 - BRANCH_SLACK
}

/// Closed-form singular points on the unit circle.
pub fn singular_points(params: &ModelParams) -> SingularSet {
    let (s, c) = params.sigma().sin_cos();
    let theta1 = theta1_present(s).then(|| {
        let z = C64::new(c, SQRT_2 - s) / (3.0 - 2.0 * SQRT_2 * s).sqrt();
        [z, -z]
    });
    let theta2 = theta2_present(s).then(|| {
        let z = C64::new(c, -(SQRT_2 + s)) / (3.0 + 2.0 * SQRT_2 * s).sqrt();
        [z, -z]
    });
    SingularSet {
        sin_sigma: s,
        theta1,
        theta2,
    }
}

/// Closed-form `|Res(1/Λ̃₀; e^{iθ_j^(±)})|²` for the given family.
pub fn residue_norm_sq(params: &ModelParams, which: Branch) -> Result<f64> {
    let s = params.sin_sigma();
    let t = SQRT_2 * s;
    match which {
        Branch::Theta1 if theta1_present(s) => Ok(0.25 * ((t - 1.0) / (2.0 * t - 3.0)).powi(2)),
        Branch::Theta2 if theta2_present(s) => Ok(0.25 * ((t + 1.0) / (2.0 * t + 3.0)).powi(2)),
        _ => Err(Error::AbsentBranch(which, s)),
    }
}

/// `1/|Λ̃₀′(e^{iθ})|² = 1/(4|1 + ∂φ̃/∂θ|²)` using the closed-form derivative.
pub fn residue_norm_sq_at(kernel: &GfKernel, theta: f64) -> Result<f64> {
    let d = kernel.tilde_phi_derivative(theta)?;
    Ok(1.0 / (4.0 * (1.0 + d).powi(2)))
}

/// `Re(i e^{−iσ̃} α β̄)`.
fn cross_term(params: &ModelParams, phi0: QubitState) -> f64 {
    (I * C64::from_polar(1.0, -params.sigma_tilde()) * phi0.left * phi0.right.conj()).re
}

/// Branch contribution `ν^(±)(x; σ)` without its indicator.
pub fn nu(params: &ModelParams, phi0: QubitState, x: i64, side: Side) -> f64 {
    let k = match side {
        Side::Plus => 1.0,
        Side::Minus => -1.0,
    };
    let t = k * SQRT_2 * params.sin_sigma();
    let prefactor = ((1.0 + t) / (3.0 + 2.0 * t)).powi(2);
    let bracket = 1.0 - 2.0 * k * cross_term(params, phi0);
    let spatial = if x == 0 {
        1.0
    } else {
        (2.0 + t) * (3.0 + 2.0 * t).recip().powi(x.unsigned_abs() as i32)
    };
    prefactor * bracket * spatial
}

/// Whether the indicator of `ν^(±)` is on: plus needs `sin σ ≥ −1/√2`,
/// minus needs `sin σ ≤ 1/√2`.
pub fn branch_active(params: &ModelParams, side: Side) -> bool {
    let s = params.sin_sigma();
    match side {
        Side::Plus => theta2_present(s),
        Side::Minus => theta1_present(s),
    }
}

/// [`nu`] multiplied by its indicator.
pub fn gated_nu(params: &ModelParams, phi0: QubitState, x: i64, side: Side) -> f64 {
    if branch_active(params, side) {
        nu(params, phi0, x, side)
    } else {
        0.0
    }
}

/// Time-averaged limit measure `μ̄_∞(x)` in closed form.
pub fn limit_measure(params: &ModelParams, phi0: QubitState, x: i64) -> Result<f64> {
    phi0.check_normalized(DEFAULT_TOL)?;
    Ok(gated_nu(params, phi0, x, Side::Plus) + gated_nu(params, phi0, x, Side::Minus))
}

/// [`limit_measure`] sampled on `[lo, hi]`.
pub fn limit_measure_on(
    params: &ModelParams,
    phi0: QubitState,
    lo: i64,
    hi: i64,
) -> Result<Measure> {
    phi0.check_normalized(DEFAULT_TOL)?;
    Ok(Measure::from_fn(lo, hi, |x| {
        gated_nu(params, phi0, x, Side::Plus) + gated_nu(params, phi0, x, Side::Minus)
    }))
}

/// `Σ_x μ̄_∞(x)` summed in closed form over the geometric tails.
pub fn limit_total_mass(params: &ModelParams, phi0: QubitState) -> Result<f64> {
    phi0.check_normalized(DEFAULT_TOL)?;
    let q = cross_term(params, phi0);
    let mut total = 0.0;
    for (side, k) in [(Side::Plus, 1.0), (Side::Minus, -1.0)] {
        if branch_active(params, side) {
            let t = k * SQRT_2 * params.sin_sigma();
            // ν(0) · (1 + 2(2+t) r/(1−r)) with r = 1/(3+2t) collapses to this
            total += (1.0 - 2.0 * k * q) * (1.0 + t) / (3.0 + 2.0 * t);
        }
    }
    Ok(total)
}

/// `μ̄_∞(x)` assembled pole by pole: residue norm `1/(4|1+φ̃′|²)`, the
/// `|λ̃|^{2(|x|−1)}(1 + |λ̃|²)` geometric factor and the cross terms
/// `Re(αβ̄ f̃₀^(−))`, `Re(ᾱβ f̃₀^(+))`, all evaluated at each singular point.
pub fn limit_measure_from_residues(params: &ModelParams, phi0: QubitState, x: i64) -> Result<f64> {
    phi0.check_normalized(DEFAULT_TOL)?;
    let kernel = GfKernel::new(*params);
    let (alpha, beta) = (phi0.left, phi0.right);
    let mut total = 0.0;
    for p in singular_points(params).points() {
        let theta = p.theta();
        let res = residue_norm_sq_at(&kernel, theta)?;
        let f_plus = kernel.f0(theta, Side::Plus)?;
        let f_minus = kernel.f0(theta, Side::Minus)?;
        let re_plus = (alpha.conj() * beta * f_plus).re;
        let re_minus = (alpha * beta.conj() * f_minus).re;
        let n = x.unsigned_abs() as i32;
        total += match x.signum() {
            0 => 2.0 * res * (1.0 - re_plus + re_minus),
            1 => {
                let l2 = kernel.lambda_tilde(theta, Side::Plus)?.norm_sqr();
                res * l2.powi(n - 1) * (1.0 + l2) * (1.0 + 2.0 * re_minus)
            }
            _ => {
                let l2 = kernel.lambda_tilde(theta, Side::Minus)?.norm_sqr();
                res * l2.powi(n - 1) * (1.0 + l2) * (1.0 - 2.0 * re_plus)
            }
        };
    }
    Ok(total)
}
