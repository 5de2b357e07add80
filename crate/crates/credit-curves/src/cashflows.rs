//! Bond descriptions and coupon schedules.
//!
//! Schedules are rolled backward from maturity in exact `1/f` steps, so the
//! final flow always lands on the maturity itself and any odd period becomes
//! a short first stub. Accrued interest covers the elapsed part of the
//! current period, which for the stub case is the tail of a notional full
//! period ending at the first coupon. All times are year fractions; there is
//! no calendar arithmetic.

use crate::error::{Error, Result};

/// Coupon payment frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frequency {
    Annual,
    SemiAnnual,
    Quarterly,
}

impl Frequency {
    pub fn per_year(self) -> u32 {
        match self {
            Frequency::Annual => 1,
            Frequency::SemiAnnual => 2,
            Frequency::Quarterly => 4,
        }
    }

    pub fn from_per_year(n: u32) -> Result<Self> {
        match n {
            1 => Ok(Frequency::Annual),
            2 => Ok(Frequency::SemiAnnual),
            4 => Ok(Frequency::Quarterly),
            other => Err(Error::InvalidInput(format!(
                "unsupported coupon frequency {other} (expected 1, 2 or 4 per year)"
            ))),
        }
    }

    /// Length of one coupon period in years.
    pub fn period(self) -> f64 {
        1.0 / self.per_year() as f64
    }
}

/// One quoted bond: identifier, annual coupon rate (decimal), payment
/// frequency, remaining maturity in years and clean price per 100 face.
/// Face is normalized to 1 internally.
#[derive(Debug, Clone, PartialEq)]
pub struct BondQuote {
    pub id: String,
    pub coupon: f64,
    pub frequency: Frequency,
    pub maturity: f64,
    pub clean_price: f64,
}

impl BondQuote {
    /// Checks the quote is economically sane before it enters a fit.
    pub fn validate(&self) -> Result<()> {
        if !self.maturity.is_finite() || self.maturity <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "bond {}: maturity {} must be positive",
                self.id, self.maturity
            )));
        }
        if !self.coupon.is_finite() || self.coupon < 0.0 {
            return Err(Error::InvalidInput(format!(
                "bond {}: coupon {} must be non-negative",
                self.id, self.coupon
            )));
        }
        if !self.clean_price.is_finite() || self.clean_price <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "bond {}: clean price {} must be positive",
                self.id, self.clean_price
            )));
        }
        Ok(())
    }
}

/// Remaining payments of a bond: coupon dates in years from the valuation
/// date, the per-period coupon amount, and the accrual state of the current
/// period. Face value 1 is paid with the final coupon.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    times: Vec<f64>,
    coupon_amount: f64,
    t_accrued: f64,
    frequency: Frequency,
}

/// Schedule for a quoted bond. See [`Schedule::from_terms`].
pub fn build_schedule(bond: &BondQuote) -> Result<Schedule> {
    bond.validate()?;
    Schedule::from_terms(bond.coupon, bond.frequency, bond.maturity)
}

impl Schedule {
    /// Rolls coupon dates backward from `maturity` in steps of `1/f`.
    ///
    /// The payment count is rounded so that a maturity within 1e-9 periods of
    /// a whole number of periods is treated as regular rather than producing
    /// a vanishing stub. A first period shorter than `1/f` means the bond is
    /// mid-period: the accrued time is the missing front part of that period.
    pub fn from_terms(coupon: f64, frequency: Frequency, maturity: f64) -> Result<Self> {
        if !maturity.is_finite() || maturity <= 0.0 {
            return Err(Error::InvalidInput(format!("maturity {maturity} must be positive")));
        }
        if !coupon.is_finite() || coupon < 0.0 {
            return Err(Error::InvalidInput(format!("coupon {coupon} must be non-negative")));
        }
        let f = frequency.per_year() as f64;
        let n = (maturity * f - 1e-9).ceil().max(1.0) as usize;
        let times: Vec<f64> = (1..=n).map(|i| maturity - (n - i) as f64 / f).collect();
        let period = frequency.period();
        let first = times[0];
        let t_accrued = if first < period { period - first } else { 0.0 };
        Ok(Schedule { times, coupon_amount: coupon / f, t_accrued, frequency })
    }

    /// Payment times in years, strictly increasing; the last is maturity.
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// Coupon paid at each payment time, per unit face.
    pub fn coupon_amount(&self) -> f64 {
        self.coupon_amount
    }

    /// Annual coupon rate.
    pub fn annual_coupon(&self) -> f64 {
        self.coupon_amount * self.frequency.per_year() as f64
    }

    /// Time already accrued in the current coupon period, in years.
    pub fn t_accrued(&self) -> f64 {
        self.t_accrued
    }

    pub fn frequency(&self) -> Frequency {
        self.frequency
    }

    /// Accrued interest per unit face.
    pub fn accrued_interest(&self) -> f64 {
        self.annual_coupon() * self.t_accrued
    }

    /// Dirty price per unit face from a clean price per 100 face.
    pub fn dirty_unit(&self, clean_per_100: f64) -> f64 {
        clean_per_100 / 100.0 + self.accrued_interest()
    }
}
