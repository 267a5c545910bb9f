//! Scenario description, terminal geometry, and the line-of-sight rate model.
//!
//! The UAV at horizontal position `x` and altitude `H` sees terminal `k` at
//! `x_k` through a free-space channel, giving the rate
//!
//! ```text
//! r_k(x) = log2(1 + Pγ₀ / ((x - x_k)² + H²))      [bps/Hz]
//! ```
//!
//! Its antiderivative is available in closed form, so segment throughputs
//! never need numerical integration.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Complete input description of one deployment.
///
/// Built through [`ScenarioBuilder`], which validates every field; a
/// `Scenario` value is therefore always usable by the rest of the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    num_terminals: usize,
    span: f64,
    altitude: f64,
    power_dbm: f64,
    ref_snr_db: f64,
    speed: f64,
    traj_length: f64,
}

impl Scenario {
    /// The ten-terminal setup used throughout the numerical study:
    /// K = 10, Δ = 1000 m, H = 100 m, P = 10 dBm, γ₀ = 80 dB, V = 30 m/s,
    /// with a zero-length (hovering) trajectory.
    pub fn reference() -> Self {
        Scenario {
            num_terminals: 10,
            span: 1000.0,
            altitude: 100.0,
            power_dbm: 10.0,
            ref_snr_db: 80.0,
            speed: 30.0,
            traj_length: 0.0,
        }
    }

    /// Starts a builder pre-filled with [`Scenario::reference`].
    pub fn builder() -> ScenarioBuilder {
        ScenarioBuilder {
            inner: Self::reference(),
        }
    }

    pub fn num_terminals(&self) -> usize {
        self.num_terminals
    }

    /// Terminal location range Δ in meters.
    pub fn span(&self) -> f64 {
        self.span
    }

    pub fn altitude(&self) -> f64 {
        self.altitude
    }

    pub fn power_dbm(&self) -> f64 {
        self.power_dbm
    }

    pub fn ref_snr_db(&self) -> f64 {
        self.ref_snr_db
    }

    pub fn speed(&self) -> f64 {
        self.speed
    }

    /// One-way trajectory length D in meters.
    pub fn traj_length(&self) -> f64 {
        self.traj_length
    }

    pub fn with_traj_length(&self, traj_length: f64) -> Result<Self> {
        ScenarioBuilder { inner: *self }
            .traj_length(traj_length)
            .build()
    }

    pub fn with_speed(&self, speed: f64) -> Result<Self> {
        ScenarioBuilder { inner: *self }.speed(speed).build()
    }

    pub fn linear(&self) -> LinearParams {
        to_linear(self)
    }

    pub fn layout(&self) -> TerminalLayout {
        // Validated at construction, so placement cannot fail.
        place_terminals(self.num_terminals, self.span).expect("scenario was validated")
    }
}

#[derive(Debug, Clone)]
pub struct ScenarioBuilder {
    inner: Scenario,
}

impl ScenarioBuilder {
    pub fn num_terminals(mut self, k: usize) -> Self {
        self.inner.num_terminals = k;
        self
    }

    pub fn span(mut self, meters: f64) -> Self {
        self.inner.span = meters;
        self
    }

    pub fn altitude(mut self, meters: f64) -> Self {
        self.inner.altitude = meters;
        self
    }

    pub fn power_dbm(mut self, dbm: f64) -> Self {
        self.inner.power_dbm = dbm;
        self
    }

    pub fn ref_snr_db(mut self, db: f64) -> Self {
        self.inner.ref_snr_db = db;
        self
    }

    pub fn speed(mut self, mps: f64) -> Self {
        self.inner.speed = mps;
        self
    }

    pub fn traj_length(mut self, meters: f64) -> Self {
        self.inner.traj_length = meters;
        self
    }

    pub fn build(self) -> Result<Scenario> {
        let s = self.inner;
        let bad = |msg: String| Err(Error::InvalidScenario(msg));
        if s.num_terminals == 0 {
            return bad("num_terminals must be at least 1".into());
        }
        if !s.span.is_finite() || (s.num_terminals >= 2 && s.span <= 0.0) || s.span < 0.0 {
            return bad(format!("span must be positive, got {}", s.span));
        }
        if !(s.altitude.is_finite() && s.altitude > 0.0) {
            return bad(format!("altitude must be positive, got {}", s.altitude));
        }
        if !s.power_dbm.is_finite() {
            return bad(format!("power_dbm must be finite, got {}", s.power_dbm));
        }
        if !s.ref_snr_db.is_finite() {
            return bad(format!("ref_snr_db must be finite, got {}", s.ref_snr_db));
        }
        if !(s.speed.is_finite() && s.speed > 0.0) {
            return bad(format!("speed must be positive, got {}", s.speed));
        }
        if !(s.traj_length.is_finite() && s.traj_length >= 0.0) {
            return bad(format!(
                "traj_length must be non-negative, got {}",
                s.traj_length
            ));
        }
        let snr = to_linear(&s).snr_product;
        if !(snr.is_finite() && snr > 0.0) {
            return bad(format!("power/SNR combination underflows to {snr}"));
        }
        Ok(s)
    }
}

/// Link constants in linear units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearParams {
    /// P·γ₀ with P in watts (m²-scaled SNR numerator).
    pub snr_product: f64,
    /// UAV altitude H in meters.
    pub altitude: f64,
}

impl LinearParams {
    pub fn new(snr_product: f64, altitude: f64) -> Result<Self> {
        if !(snr_product.is_finite() && snr_product > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "snr_product must be positive, got {snr_product}"
            )));
        }
        if !(altitude.is_finite() && altitude > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "altitude must be positive, got {altitude}"
            )));
        }
        Ok(LinearParams {
            snr_product,
            altitude,
        })
    }
}

/// Converts transmit power (dBm) and reference SNR (dB) into `P·γ₀` with P in watts.
pub fn to_linear(scenario: &Scenario) -> LinearParams {
    let watts = 10f64.powf((scenario.power_dbm - 30.0) / 10.0);
    let gamma = 10f64.powf(scenario.ref_snr_db / 10.0);
    LinearParams {
        snr_product: watts * gamma,
        altitude: scenario.altitude,
    }
}

/// Ground positions of the terminals, ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TerminalLayout {
    positions: Vec<f64>,
}

impl TerminalLayout {
    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// Places `k` terminals equally spaced over `[-span/2, span/2]`.
///
/// The right half is the exact negation of the left half (and the middle
/// terminal of an odd layout sits at exactly 0) so mirror-symmetric
/// computations stay bitwise symmetric.
pub fn place_terminals(k: usize, span: f64) -> Result<TerminalLayout> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "at least one terminal required".into(),
        ));
    }
    if k == 1 {
        return Ok(TerminalLayout {
            positions: vec![0.0],
        });
    }
    if !(span.is_finite() && span > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "span must be positive for {k} terminals, got {span}"
        )));
    }
    let step = span / (k - 1) as f64;
    let mut positions = vec![0.0; k];
    for i in 0..k / 2 {
        let x = -span / 2.0 + i as f64 * step;
        positions[i] = x;
        positions[k - 1 - i] = -x;
    }
    Ok(TerminalLayout { positions })
}

/// Achievable rate (bps/Hz) of the terminal at `xk` when the UAV is at `x`.
pub fn rate(x: f64, xk: f64, params: &LinearParams) -> f64 {
    let u = x - xk;
    let h = params.altitude;
    (params.snr_product / (u * u + h * h)).ln_1p() / LN_2
}

/// Closed-form antiderivative of [`rate`] in `x`, normalized so that it
/// vanishes at `x = xk`. Units: bps·m/Hz.
pub fn rate_antiderivative(x: f64, xk: f64, params: &LinearParams) -> f64 {
    let u = x - xk;
    let h = params.altitude;
    let s = params.snr_product;
    let a = (h * h + s).sqrt();
    let log_term = u * (s / (u * u + h * h)).ln_1p() / LN_2;
    let atan_term = h * (-u / h).atan() - a * (-u / a).atan();
    log_term + 2.0 * atan_term / LN_2
}

/// Average throughput (bps/Hz) of the terminal at `xk` when it owns the
/// trajectory segment `[b_lo, b_hi]` of a one-way trajectory of length `d`.
pub fn segment_throughput(
    b_lo: f64,
    b_hi: f64,
    xk: f64,
    d: f64,
    params: &LinearParams,
) -> Result<f64> {
    if !(d > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "trajectory length must be positive, got {d}"
        )));
    }
    if !(b_lo <= b_hi) {
        return Err(Error::InvalidArgument(format!(
            "segment bounds out of order: [{b_lo}, {b_hi}]"
        )));
    }
    Ok(segment_throughput_unchecked(b_lo, b_hi, xk, d, params))
}

#[inline]
pub(crate) fn segment_throughput_unchecked(
    b_lo: f64,
    b_hi: f64,
    xk: f64,
    d: f64,
    params: &LinearParams,
) -> f64 {
    (rate_antiderivative(b_hi, xk, params) - rate_antiderivative(b_lo, xk, params)) / d
}
