//! Exact light-cone evolution of the walk.
//!
//! One step maps `Ψ_{t−1}` to `Ψ_t(x) = Q_{x−1} Ψ_{t−1}(x−1) + P_{x+1} Ψ_{t−1}(x+1)`.
//! The window grows by one slot per side per step, so no boundary is ever
//! introduced and every amplitude is exact up to rounding.

use serde::Serialize;

use crate::coin::{CoinOperator, ModelParams, QubitState};
use crate::error::Result;
use crate::{C64, DEFAULT_TOL};

/// Wavefunction on the contiguous window `[origin_offset, origin_offset + len)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveWindow {
    time: usize,
    origin_offset: i64,
    amps: Vec<QubitState>,
}

impl WaveWindow {
    /// The `t = 0` window holding `phi0` at the origin.
    pub fn initial(phi0: QubitState) -> Result<Self> {
        phi0.check_normalized(DEFAULT_TOL)?;
        Ok(Self {
            time: 0,
            origin_offset: 0,
            amps: vec![phi0],
        })
    }

    /// Builds a window from raw amplitudes without any normalization check.
    pub fn from_amplitudes(time: usize, origin_offset: i64, amps: Vec<QubitState>) -> Self {
        Self {
            time,
            origin_offset,
            amps,
        }
    }

    pub fn time(&self) -> usize {
        self.time
    }

    pub fn origin_offset(&self) -> i64 {
        self.origin_offset
    }

    pub fn amplitudes(&self) -> &[QubitState] {
        &self.amps
    }

    /// Inclusive position range covered by the window.
    pub fn range(&self) -> (i64, i64) {
        (
            self.origin_offset,
            self.origin_offset + self.amps.len() as i64 - 1,
        )
    }

    /// Amplitude at `x`; zero outside the window.
    pub fn at(&self, x: i64) -> QubitState {
        usize::try_from(x - self.origin_offset)
            .ok()
            .and_then(|i| self.amps.get(i).copied())
            .unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(QubitState::norm_sqr).sum()
    }

    /// One application of the evolution operator. The input is left untouched.
    pub fn step(&self, params: &ModelParams) -> WaveWindow {
        let coins = CoinTable::new(params);
        let old = &self.amps;
        let n_old = old.len() as i64;
        let new_off = self.origin_offset - 1;
        let mut amps = Vec::with_capacity(old.len() + 2);
        for i in 0..n_old + 2 {
            let x = new_off + i;
            // old index of x is i - 1
            let mut left = C64::new(0.0, 0.0);
            let mut right = C64::new(0.0, 0.0);
            let j_plus = i; // x + 1
            if j_plus < n_old {
                let u = coins.at(x + 1);
                let v = old[j_plus as usize];
                left = u.a * v.left + u.b * v.right;
            }
            let j_minus = i - 2; // x - 1
            if j_minus >= 0 {
                let u = coins.at(x - 1);
                let v = old[j_minus as usize];
                right = u.c * v.left + u.d * v.right;
            }
            amps.push(QubitState::new(left, right));
        }
        WaveWindow {
            time: self.time + 1,
            origin_offset: new_off,
            amps,
        }
    }

    /// `μ(x) = |Ψᴸ(x)|² + |Ψᴿ(x)|²` over the window.
    pub fn distribution(&self) -> Measure {
        Measure::new(
            self.origin_offset,
            self.amps.iter().map(QubitState::norm_sqr).collect(),
        )
    }

    /// Amplitudes restricted to `[lo, hi]`, padded with zeros.
    pub fn restrict(&self, lo: i64, hi: i64) -> WaveWindow {
        let amps = (lo..=hi).map(|x| self.at(x)).collect();
        WaveWindow::from_amplitudes(self.time, lo, amps)
    }
}

/// The three distinct coins of the model.
#[derive(Debug, Clone, Copy)]
struct CoinTable {
    minus: CoinOperator,
    zero: CoinOperator,
    plus: CoinOperator,
}

impl CoinTable {
    fn new(params: &ModelParams) -> Self {
        Self {
            minus: params.coin_at(-1),
            zero: params.coin_at(0),
            plus: params.coin_at(1),
        }
    }

    #[inline]
    fn at(&self, x: i64) -> &CoinOperator {
        match x.signum() {
            0 => &self.zero,
            1 => &self.plus,
            _ => &self.minus,
        }
    }
}

/// Real-valued mass on a contiguous range of positions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Measure {
    origin_offset: i64,
    mass: Vec<f64>,
}

impl Measure {
    pub fn new(origin_offset: i64, mass: Vec<f64>) -> Self {
        Self {
            origin_offset,
            mass,
        }
    }

    /// Samples `f` at every `x` in `[lo, hi]`.
    pub fn from_fn(lo: i64, hi: i64, f: impl FnMut(i64) -> f64) -> Self {
        Self::new(lo, (lo..=hi).map(f).collect())
    }

    /// Point mass at the origin.
    pub fn delta0() -> Self {
        Self::new(0, vec![1.0])
    }

    pub fn origin_offset(&self) -> i64 {
        self.origin_offset
    }

    pub fn values(&self) -> &[f64] {
        &self.mass
    }

    pub fn range(&self) -> (i64, i64) {
        (
            self.origin_offset,
            self.origin_offset + self.mass.len() as i64 - 1,
        )
    }

    /// Mass at `x`; zero outside the stored range.
    pub fn get(&self, x: i64) -> f64 {
        usize::try_from(x - self.origin_offset)
            .ok()
            .and_then(|i| self.mass.get(i).copied())
            .unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.mass.iter().sum()
    }

    /// `(x, value)` pairs in ascending position order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.mass
            .iter()
            .enumerate()
            .map(move |(i, &m)| (self.origin_offset + i as i64, m))
    }

    /// The same measure over `[lo, hi]` with explicit zeros.
    pub fn with_range(&self, lo: i64, hi: i64) -> Measure {
        Measure::from_fn(lo, hi, |x| self.get(x))
    }

    /// `max_x |m(x) − m(−x)|`.
    pub fn asymmetry_gap(&self) -> f64 {
        let (lo, hi) = self.range();
        let r = lo.abs().max(hi.abs());
        (0..=r)
            .map(|x| (self.get(x) - self.get(-x)).abs())
            .fold(0.0, f64::max)
    }
}

/// Convenience wrapper for [`Measure::asymmetry_gap`].
pub fn asymmetry_gap(m: &Measure) -> f64 {
    m.asymmetry_gap()
}

/// Evolves `phi0` for `steps` steps and returns the final window.
pub fn evolve(params: &ModelParams, phi0: QubitState, steps: usize) -> Result<WaveWindow> {
    let mut w = WaveWindow::initial(phi0)?;
    for _ in 0..steps {
        w = w.step(params);
    }
    Ok(w)
}

/// Finite-horizon time average `(1/T) Σ_{t=0}^{T−1} P(X_t = x)`.
///
/// The result covers `[−(T−1), T−1]`.
pub fn time_average(params: &ModelParams, phi0: QubitState, horizon: usize) -> Result<Measure> {
    let mut out = time_averages(params, phi0, &[horizon])?;
    Ok(out.pop().expect("one horizon requested"))
}

/// Time averages for several horizons from a single run.
///
/// Horizons must be positive; results are returned in the order requested.
pub fn time_averages(
    params: &ModelParams,
    phi0: QubitState,
    horizons: &[usize],
) -> Result<Vec<Measure>> {
    if horizons.contains(&0) {
        return Err(crate::Error::InvalidArgument(
            "time-average horizon must be at least 1".into(),
        ));
    }
    let t_max = horizons.iter().copied().max().unwrap_or(1);
    let radius = t_max as i64 - 1;
    let mut acc = vec![0.0f64; 2 * t_max - 1];
    let mut snapshots = vec![None; horizons.len()];
    let mut w = WaveWindow::initial(phi0)?;
    for t in 0..t_max {
        let base = (w.origin_offset + radius) as usize;
        for (slot, amp) in acc[base..].iter_mut().zip(&w.amps) {
            *slot += amp.norm_sqr();
        }
        for (k, &h) in horizons.iter().enumerate() {
            if h == t + 1 {
                let r = h as i64 - 1;
                let lo = (radius - r) as usize;
                let hi = (radius + r) as usize;
                let mass = acc[lo..=hi].iter().map(|m| m / h as f64).collect();
                snapshots[k] = Some(Measure::new(-r, mass));
            }
        }
        if t + 1 < t_max {
            w = w.step(params);
        }
    }
    Ok(snapshots
        .into_iter()
        .map(|m| m.expect("every horizon reached"))
        .collect())
}
