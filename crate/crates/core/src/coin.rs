//! Model parameters and the position-dependent coins.

use std::f64::consts::FRAC_1_SQRT_2;
use std::ops::{Add, Mul};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::C64;

/// The angle pair `(σ₊, σ₋)` defining the walk.
///
/// `σ = (σ₊ − σ₋)/2` and `σ̃ = (σ₊ + σ₋)/2` are always derived on demand.
/// Angles are kept as given; no reduction modulo 2π is applied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    sigma_plus: f64,
    sigma_minus: f64,
}

impl ModelParams {
    pub fn new(sigma_plus: f64, sigma_minus: f64) -> Result<Self> {
        for s in [sigma_plus, sigma_minus] {
            if !s.is_finite() {
                return Err(Error::NonFiniteAngle(s));
            }
        }
        Ok(Self {
            sigma_plus,
            sigma_minus,
        })
    }

    pub fn sigma_plus(&self) -> f64 {
        self.sigma_plus
    }

    pub fn sigma_minus(&self) -> f64 {
        self.sigma_minus
    }

    /// `σ = (σ₊ − σ₋)/2`.
    pub fn sigma(&self) -> f64 {
        (self.sigma_plus - self.sigma_minus) / 2.0
    }

    /// `σ̃ = (σ₊ + σ₋)/2`.
    pub fn sigma_tilde(&self) -> f64 {
        (self.sigma_plus + self.sigma_minus) / 2.0
    }

    pub fn sin_sigma(&self) -> f64 {
        self.sigma().sin()
    }

    /// The coin acting at site `x`.
    pub fn coin_at(&self, x: i64) -> CoinOperator {
        match x.signum() {
            0 => CoinOperator::defect(),
            1 => CoinOperator::phase_hadamard(self.sigma_plus),
            _ => CoinOperator::phase_hadamard(self.sigma_minus),
        }
    }
}

/// A 2×2 complex matrix stored row-major as `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2 {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl Matrix2 {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Self { a, b, c, d }
    }

    pub const fn zero() -> Self {
        let z = C64::new(0.0, 0.0);
        Self::new(z, z, z, z)
    }

    /// `U₀ = diag(1, −1)`.
    pub const fn defect() -> Self {
        let z = C64::new(0.0, 0.0);
        Self::new(C64::new(1.0, 0.0), z, z, C64::new(-1.0, 0.0))
    }

    /// `(1/√2) [[1, e^{iσ}], [e^{−iσ}, −1]]`.
    pub fn phase_hadamard(sigma: f64) -> Self {
        let s = C64::from_polar(FRAC_1_SQRT_2, sigma);
        Self::new(
            C64::new(FRAC_1_SQRT_2, 0.0),
            s,
            s.conj(),
            C64::new(-FRAC_1_SQRT_2, 0.0),
        )
    }

    /// Splits `U = P + Q` into the left-moving part `P` (top row) and the
    /// right-moving part `Q` (bottom row).
    pub fn split(&self) -> (Matrix2, Matrix2) {
        let z = C64::new(0.0, 0.0);
        (
            Self::new(self.a, self.b, z, z),
            Self::new(z, z, self.c, self.d),
        )
    }

    pub fn det(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }

    pub fn adjoint(&self) -> Self {
        Self::new(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            self.a - other.a,
            self.b - other.b,
            self.c - other.c,
            self.d - other.d,
        ]
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
    }

    /// True iff `U†U` differs from the identity by less than `tol` in max-norm.
    pub fn is_unitary(&self, tol: f64) -> bool {
        let gram = self.adjoint() * *self;
        gram.max_abs_diff(&Self::identity()) < tol
    }

    pub const fn identity() -> Self {
        let z = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        Self::new(one, z, z, one)
    }

    pub fn apply(&self, v: QubitState) -> QubitState {
        QubitState::new(
            self.a * v.left + self.b * v.right,
            self.c * v.left + self.d * v.right,
        )
    }

    /// Rows `[a, b]` and `[c, d]` as a nested array.
    pub fn rows(&self) -> [[C64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }
}

impl Add for Matrix2 {
    type Output = Matrix2;

    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;

    fn mul(self, o: Self) -> Self {
        Self::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

/// Coins are plain 2×2 matrices; `P` and `Q` share the type.
pub type CoinOperator = Matrix2;

/// Convenience wrapper for [`ModelParams::coin_at`].
pub fn coin_at(params: &ModelParams, x: i64) -> CoinOperator {
    params.coin_at(x)
}

/// Convenience wrapper for [`CoinOperator::is_unitary`].
pub fn check_unitary(u: &CoinOperator, tol: f64) -> bool {
    u.is_unitary(tol)
}

/// Chirality amplitudes `ᵀ[Ψᴸ, Ψᴿ]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QubitState {
    pub left: C64,
    pub right: C64,
}

/// Polar form `α = a e^{iφ₁}`, `β = b e^{iφ₂}` of a qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarState {
    pub a: f64,
    pub phi1: f64,
    pub b: f64,
    pub phi2: f64,
}

impl PolarState {
    /// `φ̃₁₂ = φ₁ − φ₂`.
    pub fn phase_difference(&self) -> f64 {
        self.phi1 - self.phi2
    }
}

impl QubitState {
    pub const fn new(left: C64, right: C64) -> Self {
        Self { left, right }
    }

    pub fn from_polar(p: PolarState) -> Self {
        Self::new(C64::from_polar(p.a, p.phi1), C64::from_polar(p.b, p.phi2))
    }

    pub fn polar(&self) -> PolarState {
        let (a, phi1) = self.left.to_polar();
        let (b, phi2) = self.right.to_polar();
        PolarState { a, phi1, b, phi2 }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.left.norm_sqr() + self.right.norm_sqr()
    }

    pub fn scale(&self, k: C64) -> Self {
        Self::new(self.left * k, self.right * k)
    }

    /// Fails unless `|α|² + |β|² = 1` within `tol`.
    pub fn check_normalized(&self, tol: f64) -> Result<()> {
        let n = self.norm_sqr();
        if (n - 1.0).abs() <= tol {
            Ok(())
        } else {
            Err(Error::NotNormalized { norm_sqr: n })
        }
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        (self.left - o.left)
            .norm()
            .max((self.right - o.right).norm())
    }
}

impl Add for QubitState {
    type Output = QubitState;

    fn add(self, o: Self) -> Self {
        Self::new(self.left + o.left, self.right + o.right)
    }
}
