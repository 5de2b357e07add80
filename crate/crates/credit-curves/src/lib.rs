//! Survival-based credit curve fitting and bond analytics.
//!
//! This crate estimates a survival probability term structure `Q(t)` for a
//! single credit from a cross-section of its coupon bond prices, then derives
//! internally consistent spread and risk measures from the fitted curve.
//!
//! # Model
//!
//! The survival probability is a mixture of exponential decay factors
//!
//! ```text
//! Q(t) = beta_1 e^{-alpha t} + beta_2 e^{-2 alpha t} + beta_3 e^{-3 alpha t}
//! ```
//!
//! with `beta_1 + beta_2 + beta_3 = 1` so that `Q(0) = 1`. Bonds are priced
//! under fractional recovery of par: a defaulted bond pays a fixed fraction of
//! face at the first coupon date on or after default, and nothing thereafter.
//! Under that model the present value of a bond is linear in the `beta`
//! coefficients, so for a fixed `alpha` the coefficients solve a small
//! constrained weighted least-squares problem against observed dirty prices.
//! Linear inequality constraints keep `Q` strictly decreasing and positive out
//! to a configurable horizon. `alpha` itself is chosen by grid search, and a
//! robust reweighting pass protects the fit against mispriced outliers.
//!
//! # Modules
//!
//! - [`splines`]: exponential basis factors
//! - [`curves`]: discount and survival curve types and curve-level measures
//! - [`cashflows`]: bond quotes and payment schedules
//! - [`pricing`]: survival and spread pricing, Z-spread and OAS-to-fit solvers
//! - [`fitting`]: regression assembly, constrained solver, alpha search
//! - [`measures`]: hazard, spread, par, CDS-equivalent and price curves
//! - [`io`]: CSV and JSON formats shared with the command line tool
//! - [`cli`]: command line entry points

pub mod cashflows;
pub mod cli;
pub mod curves;
mod error;
pub mod fitting;
pub mod io;
pub mod measures;
pub mod pricing;
pub mod splines;

pub use cashflows::{build_schedule, BondQuote, Frequency, Schedule};
pub use curves::{DiscountCurve, SurvivalCurve};
pub use error::{Error, Result};
pub use fitting::{fit_survival, FitConfig, FitResult};
pub use pricing::RecoveryAssumption;
