//! Closed-form eigenpairs of the one-step evolution operator and the
//! stationary measures they induce.
//!
//! For each `j ∈ {1, 2, 3, 4}` the eigenvector is geometric on both half-lines
//! with ratio `±i/√(3 ± 2√2 sin σ)`. On `x ≤ −1` the left amplitude carries the
//! factor `1 ± (i/√2) e^{−iσ}`, which is what `√2 α − e^{iσ₋} β` evaluates to
//! for the origin state `α = c/√2`, `β = ∓i e^{−iσ̃} c/√2`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use crate::coin::{ModelParams, QubitState};
use crate::error::{Error, Result};
use crate::evolution::{Measure, WaveWindow};
use crate::C64;

const I: C64 = C64::new(0.0, 1.0);

/// One of the four closed-form solutions of `U⁽ˢ⁾Ψ = λΨ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenpair {
    index: u8,
    lambda: C64,
    /// `Ψ(0)` for `c = 1`.
    origin_state: QubitState,
    scale: C64,
}

impl Eigenpair {
    pub fn index(&self) -> u8 {
        self.index
    }

    pub fn lambda(&self) -> C64 {
        self.lambda
    }

    /// `Ψ(0) = c · origin_state`.
    pub fn origin(&self) -> QubitState {
        self.origin_state.scale(self.scale)
    }

    /// `Ψ(0)` with `c = 1`.
    pub fn unit_origin(&self) -> QubitState {
        self.origin_state
    }

    pub fn scale(&self) -> C64 {
        self.scale
    }

    pub fn with_scale(mut self, c: C64) -> Self {
        self.scale = c;
        self
    }

    /// `+1` for `j ∈ {1, 2}`, `−1` for `j ∈ {3, 4}`.
    pub fn family_sign(&self) -> f64 {
        if self.index <= 2 {
            1.0
        } else {
            -1.0
        }
    }

    /// Per-site ratio of the eigenvector on `x ≥ 1`: `±i/√(3 ± 2√2 sin σ)`.
    pub fn ratio(&self, params: &ModelParams) -> C64 {
        let r = I / denominator(self.family_sign(), params);
        if self.index % 2 == 1 {
            r
        } else {
            -r
        }
    }

    /// `1/(3 ± 2√2 sin σ)`, the ratio `μ(x+1)/μ(x)` on `x ≥ 1`.
    pub fn decay_rate(&self, params: &ModelParams) -> f64 {
        1.0 / (3.0 + 2.0 * SQRT_2 * self.family_sign() * params.sin_sigma())
    }

    /// True when the eigenvector is square-summable (`1 ± √2 sin σ > 0`).
    pub fn is_normalizable(&self, params: &ModelParams) -> bool {
        1.0 + SQRT_2 * self.family_sign() * params.sin_sigma() > 0.0
    }

    /// The `|c|` for which `Σ_x μ(x) = 1`, when the sum converges.
    pub fn normalizing_scale(&self, params: &ModelParams) -> Option<f64> {
        let k = SQRT_2 * self.family_sign() * params.sin_sigma();
        (1.0 + k > 0.0).then(|| ((1.0 + k) / (3.0 + 2.0 * k)).sqrt())
    }

    /// `Σ_x μ(x)` in closed form, `None` when it diverges.
    pub fn total_mass(&self, params: &ModelParams) -> Option<f64> {
        let k = SQRT_2 * self.family_sign() * params.sin_sigma();
        (1.0 + k > 0.0).then(|| self.scale.norm_sqr() * (3.0 + 2.0 * k) / (1.0 + k))
    }
}

fn denominator(family: f64, params: &ModelParams) -> f64 {
    (3.0 + 2.0 * SQRT_2 * family * params.sin_sigma()).sqrt()
}

/// The four eigenpairs, each with `c = 1`.
pub fn eigenvalues(params: &ModelParams) -> [Eigenpair; 4] {
    let (s, c) = params.sigma().sin_cos();
    let l1 = C64::new(c, s + SQRT_2) / denominator(1.0, params);
    let l3 = -C64::new(c, s - SQRT_2) / denominator(-1.0, params);
    let tilt = C64::from_polar(1.0, -params.sigma_tilde());
    let psi0 = |sign: f64| {
        QubitState::new(
            C64::new(FRAC_1_SQRT_2, 0.0),
            -sign * I * tilt * FRAC_1_SQRT_2,
        )
    };
    let one = C64::new(1.0, 0.0);
    [
        (1, l1, psi0(1.0)),
        (2, -l1, psi0(1.0)),
        (3, l3, psi0(-1.0)),
        (4, -l3, psi0(-1.0)),
    ]
    .map(|(index, lambda, origin_state)| Eigenpair {
        index,
        lambda,
        origin_state,
        scale: one,
    })
}

/// Single eigenpair by index `j ∈ {1, 2, 3, 4}`.
pub fn eigenpair(params: &ModelParams, j: u8) -> Result<Eigenpair> {
    if !(1..=4).contains(&j) {
        return Err(Error::InvalidArgument(format!(
            "eigen index must be 1..=4, got {j}"
        )));
    }
    Ok(eigenvalues(params)[usize::from(j - 1)])
}

/// Eigenvector amplitude at `x`.
pub fn eigenvector_at(pair: &Eigenpair, params: &ModelParams, x: i64) -> QubitState {
    let c = pair.scale;
    let k = pair.family_sign();
    let tilt = C64::from_polar(1.0, -params.sigma_tilde());
    let r = pair.ratio(params);
    let beta0 = -k * I * tilt * FRAC_1_SQRT_2;
    match x.signum() {
        0 => pair.origin(),
        1 => {
            let g = c * powi(r, x);
            let right = C64::from_polar(FRAC_1_SQRT_2, -params.sigma_plus()) - k * I * tilt;
            QubitState::new(g * FRAC_1_SQRT_2, right * g)
        }
        _ => {
            let g = c * powi(-r, -x);
            let left = C64::new(1.0, 0.0) + k * I * C64::from_polar(FRAC_1_SQRT_2, -params.sigma());
            QubitState::new(left * g, beta0 * g)
        }
    }
}

fn powi(z: C64, n: i64) -> C64 {
    z.powi(i32::try_from(n).expect("position fits in i32"))
}

/// Eigenvector on `[x_min, x_max]`.
pub fn eigenvector(
    pair: &Eigenpair,
    params: &ModelParams,
    x_min: i64,
    x_max: i64,
) -> Result<WaveWindow> {
    if !(x_min <= 0 && 0 <= x_max) {
        return Err(Error::InvalidArgument(format!(
            "window [{x_min}, {x_max}] must contain the origin"
        )));
    }
    let amps = (x_min..=x_max)
        .map(|x| eigenvector_at(pair, params, x))
        .collect();
    Ok(WaveWindow::from_amplitudes(0, x_min, amps))
}

/// Stationary measure `μ(x) = |Ψᴸ(x)|² + |Ψᴿ(x)|²` in closed form.
pub fn stationary_measure(pair: &Eigenpair, params: &ModelParams, x: i64) -> f64 {
    let c2 = pair.scale.norm_sqr();
    if x == 0 {
        return c2;
    }
    let prefactor = 2.0 + SQRT_2 * pair.family_sign() * params.sin_sigma();
    prefactor * c2 * pair.decay_rate(params).powi(x.unsigned_abs() as i32)
}

/// [`stationary_measure`] sampled on `[lo, hi]`.
pub fn stationary_measure_on(pair: &Eigenpair, params: &ModelParams, lo: i64, hi: i64) -> Measure {
    Measure::from_fn(lo, hi, |x| stationary_measure(pair, params, x))
}

/// Roots of `z² − √2(1/λ − λ)z − 1 = 0`, ordered by modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootPair {
    pub theta_s: C64,
    pub theta_l: C64,
    /// Both roots on the unit circle: the eigenvector does not decay.
    pub degenerate: bool,
}

pub fn theta_roots(lambda: C64) -> Result<RootPair> {
    let m = lambda.norm();
    if (m - 1.0).abs() > 1e-12 {
        return Err(Error::NotUnitModulus(m));
    }
    let b = -SQRT_2 * (lambda.inv() - lambda);
    let d = (b * b + 4.0).sqrt();
    // larger-magnitude root first; the other from the product −1
    let q = if (b + d).norm() >= (b - d).norm() {
        -(b + d) / 2.0
    } else {
        -(b - d) / 2.0
    };
    let other = -q.inv();
    let (theta_s, theta_l) = if q.norm() <= other.norm() {
        (q, other)
    } else {
        (other, q)
    };
    Ok(RootPair {
        theta_s,
        theta_l,
        // a double root is only resolved to about √ε
        degenerate: theta_s.norm() >= 1.0 - 1e-7,
    })
}

/// Max-norm of `U⁽ˢ⁾Ψ − λΨ` over `[−L+1, L−1]`, with `Ψ` built on `[−L−1, L+1]`.
pub fn eigen_residual(pair: &Eigenpair, params: &ModelParams, radius: i64) -> Result<f64> {
    Ok(residual_parts(pair, params, radius)?.0)
}

/// [`eigen_residual`] divided by the peak amplitude on the same positions.
pub fn eigen_residual_relative(pair: &Eigenpair, params: &ModelParams, radius: i64) -> Result<f64> {
    let (res, peak) = residual_parts(pair, params, radius)?;
    Ok(if peak > 0.0 { res / peak } else { res })
}

fn residual_parts(pair: &Eigenpair, params: &ModelParams, radius: i64) -> Result<(f64, f64)> {
    if radius < 2 {
        return Err(Error::InvalidArgument(format!(
            "residual window radius must be at least 2, got {radius}"
        )));
    }
    let psi = eigenvector(pair, params, -radius - 1, radius + 1)?;
    let image = psi.step(params);
    let mut res = 0.0f64;
    let mut peak = 0.0f64;
    for x in -radius + 1..=radius - 1 {
        let v = psi.at(x);
        let expect = v.scale(pair.lambda);
        res = res.max(image.at(x).max_abs_diff(&expect));
        peak = peak.max(v.left.norm()).max(v.right.norm());
    }
    Ok((res, peak))
}

/// True when `σ₋ ∈ πℤ` or `σ₊ + σ₋ ∈ π(2ℤ + 1)` (within `tol`).
pub fn periodicity_condition(params: &ModelParams, tol: f64) -> bool {
    let near_multiple = |v: f64, offset: f64| {
        let k = ((v - offset) / (2.0 * PI)).round();
        (v - offset - 2.0 * PI * k).abs() <= tol
    };
    let sm = params.sigma_minus();
    near_multiple(sm, 0.0) || near_multiple(sm, PI) || near_multiple(params.sigma_plus() + sm, PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(sp: f64, sm: f64) -> ModelParams {
        ModelParams::new(sp, sm).unwrap()
    }

    #[test]
    fn hadamard_eigenvalues() {
        let p = params(0.0, 0.0);
        let pairs = eigenvalues(&p);
        let l1 = C64::new(1.0, SQRT_2) / 3f64.sqrt();
        assert!((pairs[0].lambda() - l1).norm() < 1e-15);
        assert_eq!(pairs[1].lambda(), -pairs[0].lambda());
        assert_eq!(pairs[3].lambda(), -pairs[2].lambda());
        let psi0 = pairs[0].origin();
        assert!((psi0.left - FRAC_1_SQRT_2).norm() < 1e-15);
        assert!((psi0.right - C64::new(0.0, -FRAC_1_SQRT_2)).norm() < 1e-15);
    }

    #[test]
    fn quarter_phase_eigenvalues() {
        let p = params(1.5 * PI, PI);
        let pairs = eigenvalues(&p);
        let l1 = C64::new(1.0, 3.0) / 10f64.sqrt();
        let l3 = C64::new(-FRAC_1_SQRT_2, FRAC_1_SQRT_2);
        assert!((pairs[0].lambda() - l1).norm() < 1e-14);
        assert!((pairs[2].lambda() - l3).norm() < 1e-14);
        // Ψ(0) = (c/√2)ᵀ[1, (1+i)/√2] for j = 1, the negative for j = 3
        let b1 = pairs[0].origin().right * SQRT_2;
        assert!((b1 - C64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2)).norm() < 1e-14);
        let b3 = pairs[2].origin().right * SQRT_2;
        assert!((b3 + C64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2)).norm() < 1e-14);
    }

    #[test]
    fn eigenvector_at_origin_and_two() {
        let p = params(0.0, 0.0);
        let c = C64::new(0.3, -1.2);
        let pair = eigenvalues(&p)[0].with_scale(c);
        let v0 = eigenvector_at(&pair, &p, 0);
        assert!((v0.left - c * FRAC_1_SQRT_2).norm() < 1e-15);
        assert!((v0.right + I * c * FRAC_1_SQRT_2).norm() < 1e-15);
        // (c/√2)(i/√3)² = −(c/√2)/3
        let v2 = eigenvector_at(&pair, &p, 2);
        assert!((v2.left + c * FRAC_1_SQRT_2 / 3.0).norm() < 1e-15);
    }

    #[test]
    fn geometric_ratio_on_positive_side() {
        let p = params(0.4, -1.3);
        let pair = eigenvalues(&p)[0];
        let expect = I / (3.0 + 2.0 * SQRT_2 * p.sin_sigma()).sqrt();
        for x in 1..20 {
            let q = eigenvector_at(&pair, &p, x + 1).left / eigenvector_at(&pair, &p, x).left;
            assert!((q - expect).norm() < 1e-13);
        }
    }

    #[test]
    fn stationary_measure_examples() {
        let p1 = params(0.0, 0.0);
        let c = C64::new(0.0, 2.0);
        let pair = eigenvalues(&p1)[0].with_scale(c);
        for x in [-2, 2] {
            assert!((stationary_measure(&pair, &p1, x) - 2.0 * 4.0 / 9.0).abs() < 1e-14);
        }
        let p2 = params(1.5 * PI, PI);
        let pair = eigenvalues(&p2)[0];
        assert!((stationary_measure(&pair, &p2, 1) - 3.0 / 5.0).abs() < 1e-14);
        let pair3 = eigenvalues(&p2)[2];
        for x in -5..=5 {
            assert!((stationary_measure(&pair3, &p2, x) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn theta_roots_hadamard() {
        let p = params(0.0, 0.0);
        let roots = theta_roots(eigenvalues(&p)[0].lambda()).unwrap();
        assert!((roots.theta_s.norm() - 1.0 / 3f64.sqrt()).abs() < 1e-14);
        assert!((roots.theta_s * roots.theta_l + 1.0).norm() < 1e-14);
        assert!(!roots.degenerate);
    }

    #[test]
    fn theta_roots_of_i_match_quadratic_formula() {
        // z² − √2(−2i)z − 1 = 0  ⇒  z = −√2 i ± i
        let roots = theta_roots(I).unwrap();
        let small = C64::new(0.0, 1.0 - SQRT_2);
        let large = C64::new(0.0, -1.0 - SQRT_2);
        assert!((roots.theta_s - small).norm() < 1e-14);
        assert!((roots.theta_l - large).norm() < 1e-14);
    }

    #[test]
    fn theta_roots_flag_the_delocalization_boundary() {
        let p = params(-PI / 2.0, 0.0); // sin σ = −1/√2
        let roots = theta_roots(eigenvalues(&p)[0].lambda()).unwrap();
        assert!(roots.degenerate);
        assert!(theta_roots(C64::new(2.0, 0.0)).is_err());
    }

    #[test]
    fn residual_is_tiny_for_hadamard() {
        let p = params(0.0, 0.0);
        for pair in eigenvalues(&p) {
            assert!(eigen_residual(&pair, &p, 30).unwrap() < 1e-12);
        }
        assert!(eigen_residual(&eigenvalues(&p)[0], &p, 1).is_err());
    }

    #[test]
    fn residual_scales_with_c() {
        let p = params(0.9, 2.2);
        let pair = eigenvalues(&p)[2];
        let base = eigen_residual_relative(&pair, &p, 30).unwrap();
        let scaled = eigen_residual_relative(&pair.with_scale(C64::new(0.0, 1e3)), &p, 30).unwrap();
        assert!(base < 1e-13 && scaled < 1e-13);
        let abs1 = eigen_residual(&pair, &p, 30).unwrap();
        let abs2 = eigen_residual(&pair.with_scale(C64::new(1e3, 0.0)), &p, 30).unwrap();
        assert!(abs2 <= 1e3 * abs1.max(1e-16) * 8.0);
    }

    #[test]
    fn eigenvector_window_must_contain_origin() {
        let p = params(0.0, 0.0);
        assert!(eigenvector(&eigenvalues(&p)[0], &p, 1, 4).is_err());
        assert!(eigenpair(&p, 5).is_err());
        assert_eq!(eigenpair(&p, 3).unwrap().index(), 3);
    }

    #[test]
    fn normalizing_scale_gives_unit_mass() {
        let p = params(0.4, -0.9);
        for pair in eigenvalues(&p) {
            if let Some(c) = pair.normalizing_scale(&p) {
                let pair = pair.with_scale(C64::new(c, 0.0));
                let direct: f64 = (-400..=400).map(|x| stationary_measure(&pair, &p, x)).sum();
                assert!((direct - 1.0).abs() < 1e-12);
                assert!((pair.total_mass(&p).unwrap() - 1.0).abs() < 1e-12);
            }
        }
        let outside = params(-PI / 2.0 - 0.5, 0.0); // sin σ < −1/√2
        assert!(eigenvalues(&outside)[0]
            .normalizing_scale(&outside)
            .is_none());
    }

    #[test]
    fn periodicity_predicate() {
        assert!(periodicity_condition(&params(0.3, PI), 1e-12));
        assert!(periodicity_condition(&params(0.3, -4.0 * PI), 1e-12));
        assert!(periodicity_condition(&params(PI - 0.7, 0.7), 1e-12));
        assert!(!periodicity_condition(&params(0.3, 0.7), 1e-12));
    }
}
