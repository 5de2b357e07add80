//! Term-structure measures derived from a fitted survival curve, and the
//! bond-specific rich/cheap measures.
//!
//! Everything here reuses one survival curve, so the different views (hazard
//! rate, par coupon spread, bond-implied CDS, constant coupon price) are
//! mutually consistent by construction. Par-type measures work on freshly
//! issued schedules; their bond-specific variants adjust for accrued
//! interest so that seasoned bonds can be compared on the same scale.

use crate::cashflows::{build_schedule, BondQuote, Frequency, Schedule};
use crate::curves::{DiscountCurve, SurvivalCurve};
use crate::error::{Error, Result};
use crate::pricing::{check_integer_periods, solve_oasf, RecoveryAssumption};

/// Which term structure a [`MeasureCurve`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureKind {
    Hazard,
    ZzSpread,
    ParCoupon,
    ParYield,
    PSpread,
    Bcds,
    Ccp,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 7] = [
        MeasureKind::Hazard,
        MeasureKind::ZzSpread,
        MeasureKind::ParCoupon,
        MeasureKind::ParYield,
        MeasureKind::PSpread,
        MeasureKind::Bcds,
        MeasureKind::Ccp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MeasureKind::Hazard => "hazard",
            MeasureKind::ZzSpread => "zz_spread",
            MeasureKind::ParCoupon => "par_coupon",
            MeasureKind::ParYield => "par_yield",
            MeasureKind::PSpread => "p_spread",
            MeasureKind::Bcds => "bcds",
            MeasureKind::Ccp => "ccp",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown measure kind '{name}'")))
    }
}

/// A named term structure sampled on a tenor grid.
#[derive(Debug, Clone)]
pub struct MeasureCurve {
    pub kind: MeasureKind,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    /// Coupon level, set for constant-coupon price curves.
    pub coupon: Option<f64>,
    pub frequency: Frequency,
    pub recovery: f64,
}

/// Default sampling grid: semiannual out to 10 years, yearly to 30.
pub fn default_measure_grid() -> Vec<f64> {
    let mut grid: Vec<f64> = (1..=20).map(|i| i as f64 / 2.0).collect();
    grid.extend((11..=30).map(f64::from));
    grid
}

/// Sums over a fresh schedule used by all par-type measures:
/// survival-discounted annuity, discount-only annuity, terminal value and
/// the discounted default leg.
struct ScheduleSums {
    q_z: f64,
    z: f64,
    q_n_z_n: f64,
    z_n: f64,
    default_leg: f64,
}

fn schedule_sums(sched: &Schedule, disc: &DiscountCurve, surv: &SurvivalCurve) -> ScheduleSums {
    let mut s = ScheduleSums { q_z: 0.0, z: 0.0, q_n_z_n: 0.0, z_n: 0.0, default_leg: 0.0 };
    let mut q_prev = 1.0;
    for &t in sched.times() {
        let z = disc.discount(t);
        let q = surv.survival(t);
        s.q_z += q * z;
        s.z += z;
        s.default_leg += (q_prev - q) * z;
        q_prev = q;
        s.q_n_z_n = q * z;
        s.z_n = z;
    }
    s
}

/// Coupon making a freshly issued bond price exactly at par under
/// survival-based pricing. `tenor` must be a whole number of periods.
pub fn par_coupon(
    tenor: f64,
    frequency: Frequency,
    disc: &DiscountCurve,
    surv: &SurvivalCurve,
    rec: RecoveryAssumption,
) -> Result<f64> {
    check_integer_periods(tenor, frequency)?;
    let sched = Schedule::from_terms(0.0, frequency, tenor)?;
    let s = schedule_sums(&sched, disc, surv);
    let f = frequency.per_year() as f64;
    Ok(f * (1.0 - s.q_n_z_n - rec.of_par() * s.default_leg) / s.q_z)
}

/// Coupon making a freshly issued riskless bond price at par.
pub fn par_yield(tenor: f64, frequency: Frequency, disc: &DiscountCurve) -> Result<f64> {
    check_integer_periods(tenor, frequency)?;
    let sched = Schedule::from_terms(0.0, frequency, tenor)?;
    let mut z_sum = 0.0;
    let mut z_n = 0.0;
    for &t in sched.times() {
        z_n = disc.discount(t);
        z_sum += z_n;
    }
    let f = frequency.per_year() as f64;
    Ok(f * (1.0 - z_n) / z_sum)
}

/// Excess of the risky par coupon over the riskless par yield.
pub fn p_spread(
    tenor: f64,
    frequency: Frequency,
    disc: &DiscountCurve,
    surv: &SurvivalCurve,
    rec: RecoveryAssumption,
) -> Result<f64> {
    Ok(par_coupon(tenor, frequency, disc, surv, rec)? - par_yield(tenor, frequency, disc)?)
}

/// Bond-implied CDS par spread on the standard quarterly premium grid.
pub fn bcds(
    tenor: f64,
    disc: &DiscountCurve,
    surv: &SurvivalCurve,
    rec: RecoveryAssumption,
) -> Result<f64> {
    let sched = Schedule::from_terms(0.0, Frequency::Quarterly, tenor)?;
    let s = schedule_sums(&sched, disc, surv);
    Ok(4.0 * (1.0 - rec.of_par()) * s.default_leg / s.q_z)
}

/// Constant coupon price term structure: the fitted price of a fresh bond
/// with coupon `coupon` at every tenor of `grid`.
pub fn ccp_curve(
    coupon: f64,
    frequency: Frequency,
    grid: &[f64],
    disc: &DiscountCurve,
    surv: &SurvivalCurve,
    rec: RecoveryAssumption,
) -> Result<MeasureCurve> {
    let values = grid
        .iter()
        .map(|&t| crate::pricing::ccp(t, coupon, frequency, disc, surv, rec))
        .collect::<Result<Vec<f64>>>()?;
    Ok(MeasureCurve {
        kind: MeasureKind::Ccp,
        grid: grid.to_vec(),
        values,
        coupon: Some(coupon),
        frequency,
        recovery: rec.of_par(),
    })
}

/// Coupon for which this bond's schedule would carry a clean price of
/// exactly par, accounting for the accrued period.
pub fn fitted_par_coupon(
    bond: &BondQuote,
    disc: &DiscountCurve,
    surv: &SurvivalCurve,
    rec: RecoveryAssumption,
) -> Result<f64> {
    let sched = build_schedule(bond)?;
    let s = schedule_sums(&sched, disc, surv);
    let f = sched.frequency().per_year() as f64;
    let annuity = s.q_z / f - sched.t_accrued();
    if annuity <= 0.0 {
        return Err(Error::Numerical(format!(
            "bond {}: accrual-adjusted risky annuity {annuity} is not positive",
            bond.id
        )));
    }
    Ok((1.0 - s.q_n_z_n - rec.of_par() * s.default_leg) / annuity)
}

/// Riskless counterpart of [`fitted_par_coupon`] on the same schedule.
fn fitted_par_yield(bond: &BondQuote, disc: &DiscountCurve) -> Result<f64> {
    let sched = build_schedule(bond)?;
    let mut z_sum = 0.0;
    let mut z_n = 0.0;
    for &t in sched.times() {
        z_n = disc.discount(t);
        z_sum += z_n;
    }
    let f = sched.frequency().per_year() as f64;
    let annuity = z_sum / f - sched.t_accrued();
    if annuity <= 0.0 {
        return Err(Error::Numerical(format!(
            "bond {}: accrual-adjusted riskless annuity {annuity} is not positive",
            bond.id
        )));
    }
    Ok((1.0 - z_n) / annuity)
}

/// A bond's par-coupon spread, in fair (on-curve) and market versions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BondPSpread {
    /// Spread of the bond's fitted par coupon over the riskless par coupon.
    pub fair: f64,
    /// Fair spread plus the bond's spread-to-fit; reflects the actual price.
    pub market: f64,
}

/// Fair and market par-coupon spreads for one bond. The market version adds
/// the spread that reconciles model and market price, so a cheap bond shows
/// a market spread above its fair spread.
pub fn market_p_spread(
    bond: &BondQuote,
    disc: &DiscountCurve,
    surv: &SurvivalCurve,
    rec: RecoveryAssumption,
) -> Result<BondPSpread> {
    let fair = fitted_par_coupon(bond, disc, surv, rec)? - fitted_par_yield(bond, disc)?;
    let oasf = solve_oasf(bond, disc, surv, rec)?;
    Ok(BondPSpread { fair, market: fair + oasf })
}

/// Samples one measure kind across a tenor grid. `coupon` is required for
/// constant-coupon price curves and ignored otherwise.
pub fn sample_measure(
    kind: MeasureKind,
    grid: &[f64],
    coupon: Option<f64>,
    frequency: Frequency,
    disc: &DiscountCurve,
    surv: &SurvivalCurve,
    rec: RecoveryAssumption,
) -> Result<MeasureCurve> {
    if grid.is_empty() {
        return Err(Error::InvalidInput("empty tenor grid".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) || grid[0] <= 0.0 {
        return Err(Error::InvalidInput("tenor grid must be positive and strictly increasing".into()));
    }
    if kind == MeasureKind::Ccp {
        let c = coupon.ok_or_else(|| {
            Error::InvalidInput("constant-coupon price curves need a coupon level".into())
        })?;
        return ccp_curve(c, frequency, grid, disc, surv, rec);
    }
    let values = grid
        .iter()
        .map(|&t| match kind {
            MeasureKind::Hazard => surv.hazard(t),
            MeasureKind::ZzSpread => surv.zz_spread(t),
            MeasureKind::ParCoupon => par_coupon(t, frequency, disc, surv, rec),
            MeasureKind::ParYield => par_yield(t, frequency, disc),
            MeasureKind::PSpread => p_spread(t, frequency, disc, surv, rec),
            MeasureKind::Bcds => bcds(t, disc, surv, rec),
            MeasureKind::Ccp => unreachable!(),
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(MeasureCurve {
        kind,
        grid: grid.to_vec(),
        values,
        coupon: None,
        frequency,
        recovery: rec.of_par(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pricing::{ccp, fitted_clean_price, pv_survival_shifted};

    fn riskless() -> SurvivalCurve {
        SurvivalCurve::new(0.0, [1.0, 0.0, 0.0], 40.0).unwrap()
    }

    fn mixed() -> SurvivalCurve {
        SurvivalCurve::new(0.05, [0.5, 0.3, 0.2], 40.0).unwrap()
    }

    #[test]
    fn par_yield_is_pinned() {
        let disc = DiscountCurve::flat(0.04);
        let y = par_yield(5.0, Frequency::SemiAnnual, &disc).unwrap();
        assert!((y - 0.04040268005351162).abs() < 1e-14, "got {y}");
        assert_eq!(par_yield(5.0, Frequency::SemiAnnual, &DiscountCurve::flat(0.0)).unwrap(), 0.0);
    }

    #[test]
    fn par_yield_single_period_closed_form() {
        let disc = DiscountCurve::flat(0.03);
        let z = disc.discount(0.5);
        let y = par_yield(0.5, Frequency::SemiAnnual, &disc).unwrap();
        assert!((y - 2.0 * (1.0 - z) / z).abs() < 1e-15);
    }

    #[test]
    fn par_coupon_riskless_limit_is_par_yield() {
        let disc = DiscountCurve::new(&[(1.0, 0.02), (5.0, 0.035), (10.0, 0.04)]).unwrap();
        let rec = RecoveryAssumption::default();
        for t in [1.0, 4.5, 10.0] {
            let c = par_coupon(t, Frequency::SemiAnnual, &disc, &riskless(), rec).unwrap();
            let y = par_yield(t, Frequency::SemiAnnual, &disc).unwrap();
            assert!((c - y).abs() < 1e-14, "t={t}: {c} vs {y}");
        }
    }

    #[test]
    fn par_coupon_is_pinned() {
        let disc = DiscountCurve::flat(0.04);
        let surv = SurvivalCurve::from_flat_hazard(0.03, 30.0).unwrap();
        let c = par_coupon(5.0, Frequency::SemiAnnual, &disc, &surv, RecoveryAssumption::default())
            .unwrap();
        assert!((c - 0.059148965906671337).abs() < 1e-14, "got {c}");
    }

    #[test]
    fn par_coupon_round_trips_to_par_price() {
        let disc = DiscountCurve::flat(0.04);
        let surv = mixed();
        let rec = RecoveryAssumption::default();
        for t in [0.5, 2.0, 7.5, 15.0, 30.0] {
            let c = par_coupon(t, Frequency::SemiAnnual, &disc, &surv, rec).unwrap();
            let p = ccp(t, c, Frequency::SemiAnnual, &disc, &surv, rec).unwrap();
            assert!((p - 100.0).abs() < 1e-8, "t={t}: price {p}");
        }
    }

    #[test]
    fn par_measures_reject_broken_period_counts() {
        let disc = DiscountCurve::flat(0.04);
        let rec = RecoveryAssumption::default();
        assert!(matches!(
            par_coupon(5.3, Frequency::SemiAnnual, &disc, &mixed(), rec),
            Err(Error::NonIntegerPeriods { .. })
        ));
        assert!(matches!(
            par_yield(0.7, Frequency::SemiAnnual, &disc),
            Err(Error::NonIntegerPeriods { .. })
        ));
    }

    #[test]
    fn p_spread_vanishes_without_default_risk() {
        let disc = DiscountCurve::new(&[(1.0, 0.02), (10.0, 0.04)]).unwrap();
        let rec = RecoveryAssumption::default();
        for t in [1.0, 5.0, 10.0] {
            let p = p_spread(t, Frequency::SemiAnnual, &disc, &riskless(), rec).unwrap();
            assert!(p.abs() < 1e-14);
        }
    }

    #[test]
    fn p_spread_single_period_closed_form() {
        let disc = DiscountCurve::flat(0.04);
        let surv = SurvivalCurve::from_flat_hazard(0.02, 30.0).unwrap();
        let rec = RecoveryAssumption::default();
        let p = p_spread(0.5, Frequency::SemiAnnual, &disc, &surv, rec).unwrap();
        let q = surv.survival(0.5);
        let z = disc.discount(0.5);
        let expect = 2.0 * (1.0 - q * z - 0.4 * (1.0 - q) * z) / (q * z) - 2.0 * (1.0 - z) / z;
        assert!((p - expect).abs() < 1e-14, "{p} vs {expect}");
        // short-tenor limit: about hazard times loss fraction
        assert!((p - 0.02 * 0.6).abs() < 0.001);
    }

    #[test]
    fn p_spread_tracks_bcds_at_short_tenor() {
        let disc = DiscountCurve::flat(0.04);
        let surv = SurvivalCurve::from_flat_hazard(0.02, 30.0).unwrap();
        let rec = RecoveryAssumption::default();
        let p = p_spread(1.0, Frequency::SemiAnnual, &disc, &surv, rec).unwrap();
        let s = bcds(1.0, &disc, &surv, rec).unwrap();
        assert!((p - s).abs() < 0.0010, "p={p} bcds={s}");
    }

    #[test]
    fn bcds_is_zero_without_default_risk() {
        let disc = DiscountCurve::flat(0.04);
        assert!(bcds(5.0, &disc, &riskless(), RecoveryAssumption::default()).unwrap().abs() < 1e-15);
    }

    #[test]
    fn bcds_matches_flat_hazard_closed_form() {
        // with flat hazard and flat rates the quarterly premium/protection
        // ratio telescopes to f (1-R) (e^{h/f} - 1), independent of tenor
        let disc = DiscountCurve::flat(0.04);
        let rec = RecoveryAssumption::default();
        for h in [0.01, 0.03, 0.05] {
            let surv = SurvivalCurve::from_flat_hazard(h, 30.0).unwrap();
            let closed = 4.0 * 0.6 * ((h / 4.0).exp() - 1.0);
            for t in [1.0, 5.0, 10.0] {
                let s = bcds(t, &disc, &surv, rec).unwrap();
                assert!((s - closed).abs() < 1e-14, "h={h} t={t}: {s} vs {closed}");
            }
        }
        let surv = SurvivalCurve::from_flat_hazard(0.01, 30.0).unwrap();
        let s = bcds(5.0, &disc, &surv, rec).unwrap();
        assert!((s - 0.0060075062539082039).abs() < 1e-15, "got {s}");
    }

    #[test]
    fn bcds_credit_triangle_bias_is_small_and_positive() {
        let disc = DiscountCurve::flat(0.04);
        let rec = RecoveryAssumption::default();
        for h in [0.01, 0.03, 0.05] {
            let surv = SurvivalCurve::from_flat_hazard(h, 30.0).unwrap();
            let s = bcds(5.0, &disc, &surv, rec).unwrap();
            let triangle = h * 0.6;
            assert!(s > triangle, "discrete premium bias should be positive");
            assert!(s - triangle < 0.0010, "h={h}: bias {}", s - triangle);
        }
    }

    #[test]
    fn ccp_curves_do_not_cross_in_coupon() {
        let disc = DiscountCurve::flat(0.04);
        let surv = mixed();
        let rec = RecoveryAssumption::default();
        let grid: Vec<f64> = (1..=30).map(f64::from).collect();
        let c6 = ccp_curve(0.06, Frequency::SemiAnnual, &grid, &disc, &surv, rec).unwrap();
        let c8 = ccp_curve(0.08, Frequency::SemiAnnual, &grid, &disc, &surv, rec).unwrap();
        let c10 = ccp_curve(0.10, Frequency::SemiAnnual, &grid, &disc, &surv, rec).unwrap();
        for i in 0..grid.len() {
            assert!(c6.values[i] < c8.values[i]);
            assert!(c8.values[i] < c10.values[i]);
        }
        assert_eq!(c6.coupon, Some(0.06));
    }

    #[test]
    fn ccp_flattens_for_high_hazard() {
        let disc = DiscountCurve::flat(0.04);
        let surv = SurvivalCurve::from_flat_hazard(0.10, 30.0).unwrap();
        let rec = RecoveryAssumption::default();
        let grid: Vec<f64> = (10..=30).map(f64::from).collect();
        let curve = ccp_curve(0.10, Frequency::SemiAnnual, &grid, &disc, &surv, rec).unwrap();
        let max = curve.values.iter().fold(f64::MIN, |a, &b| a.max(b));
        let min = curve.values.iter().fold(f64::MAX, |a, &b| a.min(b));
        assert!(max - min < 2.0, "long-end range {} too wide", max - min);
    }

    #[test]
    fn ccp_zero_coupon_zero_recovery_is_discounted_survival() {
        let disc = DiscountCurve::flat(0.04);
        let surv = mixed();
        let rec = RecoveryAssumption::new(0.0).unwrap();
        let grid = [2.0, 6.0, 11.0];
        let curve = ccp_curve(0.0, Frequency::Annual, &grid, &disc, &surv, rec).unwrap();
        for (t, v) in grid.iter().zip(&curve.values) {
            let want = surv.survival(*t) * disc.discount(*t) * 100.0;
            assert!((v - want).abs() < 1e-12);
        }
    }

    #[test]
    fn fitted_par_coupon_reduces_to_par_coupon_without_accrual() {
        let disc = DiscountCurve::flat(0.04);
        let surv = mixed();
        let rec = RecoveryAssumption::default();
        let b = BondQuote {
            id: "b".into(),
            coupon: 0.05,
            frequency: Frequency::SemiAnnual,
            maturity: 7.0,
            clean_price: 95.0,
        };
        let fitted = fitted_par_coupon(&b, &disc, &surv, rec).unwrap();
        let fresh = par_coupon(7.0, Frequency::SemiAnnual, &disc, &surv, rec).unwrap();
        assert!((fitted - fresh).abs() < 1e-14);
        let y = fitted_par_yield(&b, &disc).unwrap();
        assert!((y - par_yield(7.0, Frequency::SemiAnnual, &disc).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn fitted_par_coupon_round_trips_stub_bond_to_par() {
        let disc = DiscountCurve::flat(0.04);
        let surv = SurvivalCurve::from_flat_hazard(0.02, 30.0).unwrap();
        let rec = RecoveryAssumption::default();
        let mut b = BondQuote {
            id: "stub".into(),
            coupon: 0.05,
            frequency: Frequency::SemiAnnual,
            maturity: 1.75,
            clean_price: 99.0,
        };
        b.coupon = fitted_par_coupon(&b, &disc, &surv, rec).unwrap();
        let clean = fitted_clean_price(&b, &disc, &surv, rec).unwrap();
        assert!((clean - 100.0).abs() < 1e-6, "got {clean}");
    }

    #[test]
    fn market_p_spread_equals_fair_on_curve() {
        let disc = DiscountCurve::flat(0.04);
        let surv = mixed();
        let rec = RecoveryAssumption::default();
        let mut b = BondQuote {
            id: "b".into(),
            coupon: 0.06,
            frequency: Frequency::SemiAnnual,
            maturity: 6.0,
            clean_price: 100.0,
        };
        b.clean_price = fitted_clean_price(&b, &disc, &surv, rec).unwrap();
        let s = market_p_spread(&b, &disc, &surv, rec).unwrap();
        assert!((s.market - s.fair).abs() < 1e-12);
    }

    #[test]
    fn market_p_spread_recovers_injected_shift() {
        let disc = DiscountCurve::flat(0.04);
        let surv = mixed();
        let rec = RecoveryAssumption::default();
        let mut b = BondQuote {
            id: "b".into(),
            coupon: 0.06,
            frequency: Frequency::SemiAnnual,
            maturity: 6.25,
            clean_price: 100.0,
        };
        let sched = build_schedule(&b).unwrap();
        let dirty = pv_survival_shifted(&sched, &disc, &surv, rec, 0.0050);
        b.clean_price = (dirty - sched.accrued_interest()) * 100.0;
        let s = market_p_spread(&b, &disc, &surv, rec).unwrap();
        assert!((s.market - s.fair - 0.0050).abs() < 1e-5, "{:?}", s);
        // richer price means lower market spread
        b.clean_price += 1.0;
        let richer = market_p_spread(&b, &disc, &surv, rec).unwrap();
        assert!(richer.market < s.market);
    }

    #[test]
    fn survival_recovered_from_par_coupons_by_back_substitution() {
        let disc = DiscountCurve::new(&[(1.0, 0.025), (5.0, 0.035), (10.0, 0.042)]).unwrap();
        let surv = mixed();
        let rec = RecoveryAssumption::default();
        let f = 2.0;
        let r = rec.of_par();
        let n = 20;
        let mut q = vec![1.0_f64];
        let mut sum_qz = 0.0;
        let mut sum_default = 0.0;
        for j in 1..=n {
            let t = j as f64 / f;
            let c = par_coupon(t, Frequency::SemiAnnual, &disc, &surv, rec).unwrap();
            let z = disc.discount(t);
            // unit price: 1 = (C/f)(sum_{i<j} QZ + Q_j Z_j) + Q_j Z_j
            //              + R (sum_{i<j} D_i Z_i + (Q_{j-1} - Q_j) Z_j)
            let known = (c / f) * sum_qz + r * (sum_default + q[j - 1] * z);
            let q_j = (1.0 - known) / (z * (1.0 + c / f - r));
            sum_qz += q_j * z;
            sum_default += (q[j - 1] - q_j) * z;
            q.push(q_j);
        }
        for j in 1..=n {
            let t = j as f64 / f;
            assert!((q[j] - surv.survival(t)).abs() < 1e-8, "t={t}");
        }
    }

    #[test]
    fn measure_kind_names_round_trip() {
        for kind in MeasureKind::ALL {
            assert_eq!(MeasureKind::parse(kind.name()).unwrap(), kind);
        }
        assert!(MeasureKind::parse("yield_to_worst").is_err());
    }

    #[test]
    fn default_grid_shape() {
        let grid = default_measure_grid();
        assert_eq!(grid.len(), 40);
        assert_eq!(grid[0], 0.5);
        assert_eq!(*grid.last().unwrap(), 30.0);
        assert!(grid.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn sample_measure_covers_all_kinds() {
        let disc = DiscountCurve::flat(0.04);
        let surv = mixed();
        let rec = RecoveryAssumption::default();
        let grid = default_measure_grid();
        for kind in MeasureKind::ALL {
            let coupon = (kind == MeasureKind::Ccp).then_some(0.06);
            let curve =
                sample_measure(kind, &grid, coupon, Frequency::SemiAnnual, &disc, &surv, rec)
                    .unwrap();
            assert_eq!(curve.values.len(), grid.len());
            assert!(curve.values.iter().all(|v| v.is_finite()));
        }
        // flat-hazard sanity: hazard curve is constant
        let flat = SurvivalCurve::from_flat_hazard(0.03, 30.0).unwrap();
        let hz = sample_measure(
            MeasureKind::Hazard,
            &grid,
            None,
            Frequency::SemiAnnual,
            &disc,
            &flat,
            rec,
        )
        .unwrap();
        assert!(hz.values.iter().all(|v| (v - 0.03).abs() < 1e-12));
        assert!(matches!(
            sample_measure(MeasureKind::Ccp, &grid, None, Frequency::SemiAnnual, &disc, &surv, rec),
            Err(Error::InvalidInput(_))
        ));
    }
}
