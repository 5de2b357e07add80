//! Discount and survival curves.
//!
//! [`DiscountCurve`] holds the riskless leg: zero rates at pillar tenors,
//! log-linear interpolation of discount factors between pillars, flat zero
//! rate extrapolation beyond the last pillar.
//!
//! [`SurvivalCurve`] is the fitted credit object: a three-factor exponential
//! mixture `Q(t) = sum_k beta_k e^{-k alpha t}` with `sum beta_k = 1`.
//! Construction validates the shape constraints (decreasing, positive out to
//! the certified horizon) over the whole interval, not just on a grid: the
//! sign of `dQ/dt` is the sign of a quadratic in `u = e^{-alpha t}`, so its
//! interior minimum is available in closed form.

use crate::error::{Error, Result};
use crate::splines::NUM_NO_KNOT_FACTORS;

/// Tolerance on `sum(beta) = 1` accepted at construction.
const COEFFICIENT_SUM_TOL: f64 = 1e-12;

// ---------------------------------------------------------------------------
// Discount curve
// ---------------------------------------------------------------------------

/// Riskless discount curve with continuously compounded zero rates.
#[derive(Debug, Clone)]
pub struct DiscountCurve {
    tenors: Vec<f64>,
    log_dfs: Vec<f64>,
    last_zero: f64,
}

impl DiscountCurve {
    /// Builds a curve from `(tenor_years, zero_rate)` pillars.
    ///
    /// Tenors must be finite, strictly increasing and positive; rates must be
    /// finite (negative rates are allowed).
    pub fn new(pillars: &[(f64, f64)]) -> Result<Self> {
        if pillars.is_empty() {
            return Err(Error::InvalidInput("discount curve needs at least one pillar".into()));
        }
        let mut tenors = Vec::with_capacity(pillars.len());
        let mut log_dfs = Vec::with_capacity(pillars.len());
        let mut prev = 0.0;
        for &(t, y) in pillars {
            if !t.is_finite() || t <= prev {
                return Err(Error::InvalidInput(format!(
                    "pillar tenors must be positive and strictly increasing, got {t}"
                )));
            }
            if !y.is_finite() {
                return Err(Error::InvalidInput(format!("non-finite zero rate at tenor {t}")));
            }
            tenors.push(t);
            log_dfs.push(-y * t);
            prev = t;
        }
        let last_zero = pillars[pillars.len() - 1].1;
        Ok(Self { tenors, log_dfs, last_zero })
    }

    /// Flat curve: `Z(t) = e^{-rate t}` for every tenor.
    pub fn flat(rate: f64) -> Self {
        Self { tenors: vec![1.0], log_dfs: vec![-rate], last_zero: rate }
    }

    /// Discount factor for time `t` in years.
    ///
    /// Log-linear between pillars (and between 0 and the first pillar),
    /// flat-zero-rate beyond the last pillar. `discount(0) == 1`.
    ///
    /// # Panics
    /// Panics if `t` is negative or non-finite; all schedule times are
    /// non-negative by construction and the CLI validates its inputs.
    pub fn discount(&self, t: f64) -> f64 {
        assert!(t.is_finite() && t >= 0.0, "discount called with invalid time {t}");
        if t == 0.0 {
            return 1.0;
        }
        let n = self.tenors.len();
        if t >= self.tenors[n - 1] {
            return (-self.last_zero * t).exp();
        }
        // first segment interpolates against (0, log Z = 0)
        let idx = self.tenors.partition_point(|&p| p < t);
        let (t0, l0) = if idx == 0 { (0.0, 0.0) } else { (self.tenors[idx - 1], self.log_dfs[idx - 1]) };
        let (t1, l1) = (self.tenors[idx], self.log_dfs[idx]);
        let w = (t - t0) / (t1 - t0);
        (l0 + w * (l1 - l0)).exp()
    }

    /// Continuously compounded zero rate at `t > 0`.
    pub fn zero_rate(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::InvalidInput(format!("zero rate needs a positive tenor, got {t}")));
        }
        Ok(-self.discount(t).ln() / t)
    }
}

// ---------------------------------------------------------------------------
// Survival curve
// ---------------------------------------------------------------------------

/// Fitted survival probability term structure.
#[derive(Debug, Clone, PartialEq)]
pub struct SurvivalCurve {
    alpha: f64,
    betas: [f64; NUM_NO_KNOT_FACTORS],
    t_max: f64,
}

/// Minimum over `u in [u_min, 1]` of the quadratic
/// `q(u) = b1 + 2 b2 u + 3 b3 u^2`, which carries the sign of `-dQ/dt` at
/// `u = e^{-alpha t}`. Returns `(min value, argmin u)`.
pub(crate) fn decay_slope_min(betas: &[f64; 3], u_min: f64) -> (f64, f64) {
    let q = |u: f64| betas[0] + 2.0 * betas[1] * u + 3.0 * betas[2] * u * u;
    let mut best = (q(u_min), u_min);
    let at_one = (q(1.0), 1.0);
    if at_one.0 < best.0 {
        best = at_one;
    }
    if betas[2] > 0.0 {
        let vertex = -betas[1] / (3.0 * betas[2]);
        if vertex > u_min && vertex < 1.0 {
            let cand = (q(vertex), vertex);
            if cand.0 < best.0 {
                best = cand;
            }
        }
    }
    best
}

impl SurvivalCurve {
    /// Builds and validates a survival curve.
    ///
    /// Requirements: `alpha >= 0`, `t_max > 0`, coefficients sum to one within
    /// 1e-12, `Q` strictly decreasing on all of `[0, t_max]` (constant is
    /// accepted only in the degenerate riskless case `alpha = 0`), and
    /// `Q(t_max) > 0`.
    pub fn new(alpha: f64, betas: [f64; 3], t_max: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::InvalidInput(format!("decay rate {alpha} must be non-negative")));
        }
        if !(t_max > 0.0) || !t_max.is_finite() {
            return Err(Error::InvalidInput(format!("horizon {t_max} must be positive")));
        }
        if betas.iter().any(|b| !b.is_finite()) {
            return Err(Error::InvalidInput("non-finite survival coefficient".into()));
        }
        let sum: f64 = betas.iter().sum();
        if (sum - 1.0).abs() > COEFFICIENT_SUM_TOL {
            return Err(Error::InvalidInput(format!(
                "survival coefficients sum to {sum}, expected 1"
            )));
        }
        let curve = Self { alpha, betas, t_max };
        let (slope_min, _) = decay_slope_min(&betas, (-alpha * t_max).exp());
        if slope_min <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "survival curve is not strictly decreasing on [0, {t_max}] (worst slope factor {slope_min})"
            )));
        }
        let q_end = curve.survival(t_max);
        if q_end <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "survival probability {q_end} at horizon {t_max} is not positive"
            )));
        }
        Ok(curve)
    }

    /// Single-factor curve `Q(t) = e^{-h t}` for a flat hazard rate `h >= 0`.
    pub fn from_flat_hazard(hazard: f64, t_max: f64) -> Result<Self> {
        Self::new(hazard, [1.0, 0.0, 0.0], t_max)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn betas(&self) -> [f64; 3] {
        self.betas
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    /// Survival probability `Q(t)`.
    ///
    /// # Panics
    /// Panics if `t` is negative or non-finite.
    pub fn survival(&self, t: f64) -> f64 {
        assert!(t.is_finite() && t >= 0.0, "survival called with invalid time {t}");
        let u = (-self.alpha * t).exp();
        ((self.betas[2] * u + self.betas[1]) * u + self.betas[0]) * u
    }

    /// Probability of default inside `(t1, t2]`, i.e. `Q(t1) - Q(t2)`.
    pub fn default_prob(&self, t1: f64, t2: f64) -> Result<f64> {
        if !(t1 >= 0.0) || !(t2 >= t1) {
            return Err(Error::InvalidInput(format!(
                "default probability needs 0 <= t1 <= t2, got ({t1}, {t2})"
            )));
        }
        Ok(self.survival(t1) - self.survival(t2))
    }

    /// Instantaneous hazard rate `h(t) = -d ln Q / dt`.
    ///
    /// Signals an error when `Q(t)` is not positive, which can only happen
    /// past the curve's certified horizon.
    pub fn hazard(&self, t: f64) -> Result<f64> {
        let q = self.survival(t);
        if q <= 0.0 {
            return Err(Error::Numerical(format!(
                "survival probability {q} at t={t} is not positive (horizon {})",
                self.t_max
            )));
        }
        let u = (-self.alpha * t).exp();
        let num = self.alpha
            * (((3.0 * self.betas[2] * u + 2.0 * self.betas[1]) * u + self.betas[0]) * u);
        Ok(num / q)
    }

    /// Zero yield of the risky zero-coupon bond: `-ln(Q(t) Z(t)) / t`.
    pub fn zz_yield(&self, disc: &DiscountCurve, t: f64) -> Result<f64> {
        Ok(self.zz_spread(t)? + disc.zero_rate(t)?)
    }

    /// Spread of the risky zero over the riskless zero: `-ln(Q(t)) / t`.
    pub fn zz_spread(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::InvalidInput(format!("spread needs a positive tenor, got {t}")));
        }
        let q = self.survival(t);
        if q <= 0.0 {
            return Err(Error::Numerical(format!(
                "survival probability {q} at t={t} is not positive"
            )));
        }
        Ok(-q.ln() / t)
    }
}
