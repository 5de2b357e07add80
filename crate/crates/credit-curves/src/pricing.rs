//! Present-value engines and the scalar spread solvers built on them.
//!
//! Two pricers coexist. The survival-based pricer values coupons and
//! principal contingent on survival and pays a fraction of par at the first
//! coupon date after default. The strippable pricer is the conventional one:
//! every contractual cash flow discounted at base rates plus a constant
//! continuously compounded spread. The Z-spread and OAS-to-fit solvers invert
//! those pricers for a quoted dirty price.

use crate::cashflows::{build_schedule, BondQuote, Frequency, Schedule};
use crate::curves::{DiscountCurve, SurvivalCurve};
use crate::error::{Error, Result};

/// Fraction of face value paid out on default.
///
/// Recovery lands on the first coupon date after the default; accrued coupon
/// interest recovers nothing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecoveryAssumption {
    of_par: f64,
}

impl RecoveryAssumption {
    pub fn new(of_par: f64) -> Result<Self> {
        if !of_par.is_finite() || !(0.0..1.0).contains(&of_par) {
            return Err(Error::InvalidInput(format!(
                "recovery fraction {of_par} must lie in [0, 1)"
            )));
        }
        Ok(Self { of_par })
    }

    pub fn of_par(self) -> f64 {
        self.of_par
    }

    /// Recovery on accrued coupon interest. Fixed at zero.
    pub fn of_coupon(self) -> f64 {
        0.0
    }
}

impl Default for RecoveryAssumption {
    /// 40% of par, close to the long-term historical average for senior debt.
    fn default() -> Self {
        Self { of_par: 0.40 }
    }
}

/// Dirty present value per unit face under survival-based pricing.
///
/// Coupons and principal pay only if the issuer survives to the payment
/// date; default inside a coupon period pays `of_par` at that period's end:
///
/// `PV = Z(t_N) Q(t_N) + (C/f) sum_i Z(t_i) Q(t_i)
///       + R sum_i Z(t_i) (Q(t_{i-1}) - Q(t_i))`, with `t_0 = 0`.
pub fn pv_survival(
    sched: &Schedule,
    disc: &DiscountCurve,
    surv: &SurvivalCurve,
    rec: RecoveryAssumption,
) -> f64 {
    pv_survival_shifted(sched, disc, surv, rec, 0.0)
}

/// Same value as [`pv_survival`], with every term additionally discounted by
/// `e^{-shift t_i}` (the recovery leg included).
pub(crate) fn pv_survival_shifted(
    sched: &Schedule,
    disc: &DiscountCurve,
    surv: &SurvivalCurve,
    rec: RecoveryAssumption,
    shift: f64,
) -> f64 {
    let c = sched.coupon_amount();
    let r = rec.of_par();
    let mut pv = 0.0;
    let mut q_prev = 1.0;
    let mut last_zq = 0.0;
    for &t in sched.times() {
        let z = disc.discount(t) * (-shift * t).exp();
        let q = surv.survival(t);
        pv += c * z * q + r * z * (q_prev - q);
        q_prev = q;
        last_zq = z * q;
    }
    pv + last_zq
}

/// [`pv_survival`] with the recovery sum telescoped so each survival
/// probability appears once:
///
/// `PV = sum_{i<N} Q(t_i) [(C/f) Z(t_i) - R (Z(t_i) - Z(t_{i+1}))]
///       + Q(t_N) Z(t_N) (C/f + 1 - R) + R Z(t_1)`
///
/// Algebraically identical to the direct form; this grouping is what the
/// regression regressors are built from.
pub fn pv_survival_factored(
    sched: &Schedule,
    disc: &DiscountCurve,
    surv: &SurvivalCurve,
    rec: RecoveryAssumption,
) -> f64 {
    let times = sched.times();
    let c = sched.coupon_amount();
    let r = rec.of_par();
    let n = times.len();
    let mut pv = r * disc.discount(times[0]);
    let mut z_i = disc.discount(times[0]);
    for i in 0..n - 1 {
        let z_next = disc.discount(times[i + 1]);
        pv += surv.survival(times[i]) * (c * z_i - r * (z_i - z_next));
        z_i = z_next;
    }
    pv + surv.survival(times[n - 1]) * z_i * (c + 1.0 - r)
}

/// Clean model price per 100 face: survival-based dirty value less accrued.
pub fn fitted_clean_price(
    bond: &BondQuote,
    disc: &DiscountCurve,
    surv: &SurvivalCurve,
    rec: RecoveryAssumption,
) -> Result<f64> {
    let sched = build_schedule(bond)?;
    Ok((pv_survival(&sched, disc, surv, rec) - sched.accrued_interest()) * 100.0)
}

/// Rejects tenors that are not a whole number of coupon periods.
pub(crate) fn check_integer_periods(tenor: f64, frequency: Frequency) -> Result<()> {
    let periods = tenor * frequency.per_year() as f64;
    if !tenor.is_finite() || periods < 0.5 || (periods - periods.round()).abs() > 1e-9 {
        return Err(Error::NonIntegerPeriods { tenor, periods_per_year: frequency.per_year() });
    }
    Ok(())
}

/// Price per 100 face of a freshly issued bond with coupon `coupon` and an
/// integer number of periods to `tenor`. The constant-coupon price sampled
/// over tenors gives a term structure that, unlike yield spreads, stays
/// comparable across price-discount regimes.
pub fn ccp(
    tenor: f64,
    coupon: f64,
    frequency: Frequency,
    disc: &DiscountCurve,
    surv: &SurvivalCurve,
    rec: RecoveryAssumption,
) -> Result<f64> {
    check_integer_periods(tenor, frequency)?;
    let sched = Schedule::from_terms(coupon, frequency, tenor)?;
    Ok(pv_survival(&sched, disc, surv, rec) * 100.0)
}

/// Dirty present value per unit face of the contractual cash flows,
/// discounted at base rates plus a constant continuous spread.
pub fn pv_strippable(sched: &Schedule, disc: &DiscountCurve, z_spread: f64) -> f64 {
    let c = sched.coupon_amount();
    let mut pv = 0.0;
    let mut last_z = 0.0;
    for &t in sched.times() {
        let z = disc.discount(t) * (-z_spread * t).exp();
        pv += c * z;
        last_z = z;
    }
    pv + last_z
}

/// Constant continuous spread over base rates that reprices the bond's
/// quoted dirty price under strippable discounting.
pub fn solve_zspread(bond: &BondQuote, disc: &DiscountCurve) -> Result<f64> {
    let sched = build_schedule(bond)?;
    let target = sched.dirty_unit(bond.clean_price);
    solve_decreasing_root(
        |s| pv_strippable(&sched, disc, s),
        target,
        (-0.5, 3.0),
        (-0.9, 10.0),
    )
}

/// Constant spread applied on top of the survival-based pricer (all legs)
/// that reconciles the model value with the quoted dirty price. Positive
/// when the market price is below the fitted price.
pub fn solve_oasf(
    bond: &BondQuote,
    disc: &DiscountCurve,
    surv: &SurvivalCurve,
    rec: RecoveryAssumption,
) -> Result<f64> {
    let sched = build_schedule(bond)?;
    let target = sched.dirty_unit(bond.clean_price);
    solve_decreasing_root(
        |s| pv_survival_shifted(&sched, disc, surv, rec, s),
        target,
        (-0.5, 3.0),
        (-0.9, 10.0),
    )
}

/// Root of `pv(s) = target` for a `pv` that is strictly decreasing in `s`.
///
/// Starts from `bracket`, widens once to `max_bracket` if the root is not
/// inside, then alternates secant and bisection steps on the sign-changing
/// interval. Iteration is capped; the interval halves at least every other
/// step, so the cap is never the binding limit in practice.
pub(crate) fn solve_decreasing_root(
    pv: impl Fn(f64) -> f64,
    target: f64,
    bracket: (f64, f64),
    max_bracket: (f64, f64),
) -> Result<f64> {
    const PRICE_TOL: f64 = 1e-13;
    const X_TOL: f64 = 1e-12;
    let g = |s: f64| pv(s) - target;
    let (mut lo, mut hi) = bracket;
    let (mut glo, mut ghi) = (g(lo), g(hi));
    if glo < 0.0 || ghi > 0.0 {
        (lo, hi) = max_bracket;
        (glo, ghi) = (g(lo), g(hi));
        if glo < 0.0 || ghi > 0.0 {
            return Err(Error::UnattainablePrice { target, low: pv(hi), high: pv(lo) });
        }
    }
    if glo.abs() <= PRICE_TOL {
        return Ok(lo);
    }
    if ghi.abs() <= PRICE_TOL {
        return Ok(hi);
    }
    for iter in 0..200 {
        if hi - lo <= X_TOL {
            break;
        }
        let mut x = 0.5 * (lo + hi);
        if iter % 2 == 0 && ghi != glo {
            let secant = lo - glo * (hi - lo) / (ghi - glo);
            if secant > lo + 0.01 * X_TOL && secant < hi - 0.01 * X_TOL {
                x = secant;
            }
        }
        let gx = g(x);
        if gx.abs() <= PRICE_TOL {
            return Ok(x);
        }
        if gx > 0.0 {
            (lo, glo) = (x, gx);
        } else {
            (hi, ghi) = (x, gx);
        }
    }
    Ok(0.5 * (lo + hi))
}
