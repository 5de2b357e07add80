//! Cross-sectional estimation of the survival curve from bond prices.
//!
//! Because survival probabilities enter the pricing formula linearly, the
//! curve coefficients solve a weighted least squares problem: each bond
//! contributes one row relating its dirty price to the three exponential
//! factors evaluated on its schedule. The equality `sum(beta) = 1` is
//! eliminated by substitution, leaving a two-variable quadratic program with
//! linear inequality rows (survival must keep decreasing on a tenor grid and
//! stay positive at the horizon). The QP is solved exactly by enumerating the
//! unconstrained optimum, every single-constraint projection and every
//! constraint pair.
//!
//! A grid of tenors cannot by itself guarantee monotonicity between grid
//! points, so after each solve the continuum minimum of the decay slope is
//! located in closed form (it is a quadratic in `e^{-alpha t}`); if it dips
//! below margin a fresh inequality row is added at the offending tenor and
//! the QP is re-solved. Two or three refinements settle it.
//!
//! Weights are two-tier: a static `1/duration^2` scale so that long bonds do
//! not dominate on price error, and Tukey bisquare outlier weights iterated
//! to convergence. The exponential decay rate itself is chosen by grid
//! search on the final weighted objective.

use crate::cashflows::{build_schedule, BondQuote};
use crate::curves::{decay_slope_min, DiscountCurve, SurvivalCurve};
use crate::error::{Error, Result};
use crate::pricing::{solve_zspread, RecoveryAssumption};
use rayon::prelude::*;

/// Inequality rows are enforced as `row . beta >= CONSTRAINT_MARGIN` so the
/// feasible set is closed.
const CONSTRAINT_MARGIN: f64 = 1e-8;
/// Absolute slack allowed when classifying a candidate as feasible.
const FEAS_TOL: f64 = 1e-11;
/// Slack below which an inequality row is reported as active.
const ACTIVE_TOL: f64 = 1e-9;
/// Reweighting stops when no coefficient moves more than this.
const BETA_CONV_TOL: f64 = 1e-8;
/// Cap on continuum monotonicity refinement rounds per solve.
const MAX_REFINEMENTS: usize = 16;
/// Floor for Tukey bisquare weights of far outliers.
const OUTLIER_WEIGHT_FLOOR: f64 = 1e-6;
/// Consistency scale turning a median absolute deviation into a sigma.
const MAD_SCALE: f64 = 1.4826;

/// Decay rates tried by [`fit_survival`]: 0.01 to 0.30 per year.
pub fn default_alpha_grid() -> Vec<f64> {
    (1..=30).map(|i| i as f64 / 100.0).collect()
}

/// Tenors where the decreasing-survival constraint is imposed.
pub fn default_constraint_tenors() -> Vec<f64> {
    (1..=10).map(f64::from).chain([15.0, 20.0, 25.0, 30.0]).collect()
}

/// Settings for [`fit_survival`].
#[derive(Debug, Clone)]
pub struct FitConfig {
    pub recovery: RecoveryAssumption,
    pub alpha_grid: Vec<f64>,
    pub constraint_tenors: Vec<f64>,
    /// Outlier reweighting rounds; 0 disables robust reweighting.
    pub max_reweight_passes: usize,
    /// Tukey bisquare cutoff in units of the robust residual sigma.
    pub outlier_constant: f64,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            recovery: RecoveryAssumption::default(),
            alpha_grid: default_alpha_grid(),
            constraint_tenors: default_constraint_tenors(),
            max_reweight_passes: 10,
            outlier_constant: 4.685,
        }
    }
}

/// Parses a grid given either as a comma list (`0.02,0.05,0.1`) or as an
/// inclusive range `lo:hi:step`.
pub fn parse_grid_spec(spec: &str) -> Result<Vec<f64>> {
    let bad = |what: &str| Error::InvalidInput(format!("grid '{spec}': {what}"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad(&format!("bad number '{}'", s.trim())));
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(bad("range form is lo:hi:step"));
        }
        let (lo, hi, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if !(step > 0.0 && hi >= lo) || !lo.is_finite() || !hi.is_finite() {
            return Err(bad("need hi >= lo and step > 0"));
        }
        let count = ((hi - lo) / step + 1e-9).floor() as usize;
        return Ok((0..=count).map(|i| lo + i as f64 * step).collect());
    }
    let values = spec.split(',').map(num).collect::<Result<Vec<f64>>>()?;
    if values.is_empty() {
        return Err(bad("empty"));
    }
    Ok(values)
}

impl FitConfig {
    /// Parses `key = value` configuration text. Unset keys keep their
    /// defaults; `#` starts a comment. Keys: `recovery`, `alpha_grid`,
    /// `constraint_tenors`, `max_reweight_passes`, `outlier_constant`.
    pub fn from_config_text(text: &str) -> Result<FitConfig> {
        let mut cfg = FitConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = |what: String| Error::InvalidInput(format!("config line {}: {what}", idx + 1));
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| at(format!("expected key = value, found '{line}'")))?;
            let (key, value) = (key.trim(), value.trim());
            let parse_f64 =
                || value.parse::<f64>().map_err(|_| at(format!("bad number '{value}'")));
            match key {
                "recovery" => cfg.recovery = RecoveryAssumption::new(parse_f64()?)?,
                "alpha_grid" => cfg.alpha_grid = parse_grid_spec(value)?,
                "constraint_tenors" => cfg.constraint_tenors = parse_grid_spec(value)?,
                "max_reweight_passes" => {
                    cfg.max_reweight_passes =
                        value.parse().map_err(|_| at(format!("bad count '{value}'")))?
                }
                "outlier_constant" => {
                    let c = parse_f64()?;
                    if !(c > 0.0) {
                        return Err(at(format!("outlier_constant must be positive, got {c}")));
                    }
                    cfg.outlier_constant = c;
                }
                other => return Err(at(format!("unknown key '{other}'"))),
            }
        }
        Ok(cfg)
    }
}

/// An inequality row of the fit, for diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConstraintKind {
    /// Survival must be decreasing at this tenor.
    Monotonic { tenor: f64 },
    /// Survival must stay positive at the horizon.
    Positive { tenor: f64 },
}

impl std::fmt::Display for ConstraintKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConstraintKind::Monotonic { tenor } => write!(f, "decreasing@{tenor}y"),
            ConstraintKind::Positive { tenor } => write!(f, "positive@{tenor}y"),
        }
    }
}

/// The weighted least squares problem for one candidate decay rate.
#[derive(Debug, Clone)]
pub struct RegressionProblem {
    alpha: f64,
    u: Vec<[f64; 3]>,
    v: Vec<f64>,
    base_weights: Vec<f64>,
    outlier_weights: Vec<f64>,
    constraints: Vec<(ConstraintKind, [f64; 3])>,
    t_max: f64,
}

/// Fit output: the curve plus per-bond and solver diagnostics.
#[derive(Debug, Clone)]
pub struct FitResult {
    pub curve: SurvivalCurve,
    /// Market clean minus fitted clean, per 100 face, in input order.
    pub residuals: Vec<f64>,
    /// Final combined weights (duration tier times outlier tier).
    pub weights: Vec<f64>,
    /// Final Tukey bisquare weights alone.
    pub outlier_weights: Vec<f64>,
    /// Square root of the weight-normalized sum of squared residuals.
    pub wape: f64,
    pub active_constraints: Vec<ConstraintKind>,
    /// Reweighting passes run at the chosen decay rate.
    pub iterations: usize,
    /// (decay rate, final wape) for every grid candidate that solved.
    pub alpha_objectives: Vec<(f64, f64)>,
}

fn horizon(universe: &[BondQuote]) -> f64 {
    universe.iter().fold(30.0_f64, |m, b| m.max(b.maturity))
}

fn monotonic_row(alpha: f64, t: f64) -> [f64; 3] {
    let u = (-alpha * t).exp();
    [u, 2.0 * u * u, 3.0 * u * u * u]
}

fn positive_row(alpha: f64, t: f64) -> [f64; 3] {
    let u = (-alpha * t).exp();
    [u, u * u, u * u * u]
}

impl RegressionProblem {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn num_bonds(&self) -> usize {
        self.v.len()
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn regressors(&self) -> &[[f64; 3]] {
        &self.u
    }

    pub fn targets(&self) -> &[f64] {
        &self.v
    }

    /// Price residuals per 100 face implied by coefficients `betas`.
    pub fn residuals(&self, betas: &[f64; 3]) -> Vec<f64> {
        self.u
            .iter()
            .zip(&self.v)
            .map(|(u, v)| 100.0 * (v - u[0] * betas[0] - u[1] * betas[1] - u[2] * betas[2]))
            .collect()
    }

    pub fn set_base_weights(&mut self, weights: Vec<f64>) -> Result<()> {
        if weights.len() != self.v.len() {
            return Err(Error::InvalidInput(format!(
                "{} base weights for {} bonds",
                weights.len(),
                self.v.len()
            )));
        }
        if weights.iter().any(|w| !w.is_finite() || *w <= 0.0) {
            return Err(Error::InvalidInput("base weights must be positive".into()));
        }
        self.base_weights = weights;
        Ok(())
    }

    pub fn set_outlier_weights(&mut self, weights: Vec<f64>) -> Result<()> {
        if weights.len() != self.v.len() {
            return Err(Error::InvalidInput(format!(
                "{} outlier weights for {} bonds",
                weights.len(),
                self.v.len()
            )));
        }
        if weights.iter().any(|w| !w.is_finite() || *w <= 0.0 || *w > 1.0) {
            return Err(Error::InvalidInput("outlier weights must lie in (0, 1]".into()));
        }
        self.outlier_weights = weights;
        Ok(())
    }

    /// Replaces the decreasing-survival rows with rows at `tenors` (the
    /// positivity row at the horizon is always kept).
    pub fn set_constraint_tenors(&mut self, tenors: &[f64]) {
        self.constraints.clear();
        for &t in tenors {
            if t > 0.0 && t <= self.t_max + 1e-9 {
                self.constraints
                    .push((ConstraintKind::Monotonic { tenor: t }, monotonic_row(self.alpha, t)));
            }
        }
        self.constraints
            .push((ConstraintKind::Positive { tenor: self.t_max }, positive_row(self.alpha, self.t_max)));
    }

    fn combined_weights(&self) -> Vec<f64> {
        self.base_weights
            .iter()
            .zip(&self.outlier_weights)
            .map(|(b, o)| b * o)
            .collect()
    }
}

/// Assembles the regression rows for decay rate `alpha`.
///
/// For a bond with payment times `t_1..t_N`, per-period coupon `c` and
/// recovery fraction `R`, factor `k` contributes
///
/// `U_k = sum_{i<N} S_k(t_i) [c Z(t_i) - R (Z(t_i) - Z(t_{i+1}))]
///        + S_k(t_N) (c + 1 - R) Z(t_N)`
///
/// with `S_k(t) = e^{-k alpha t}`, and the target is the dirty price net of
/// the first-period recovery floor: `V = dirty - R Z(t_1)`.
pub fn build_regressors(
    universe: &[BondQuote],
    disc: &DiscountCurve,
    alpha: f64,
    rec: RecoveryAssumption,
) -> Result<RegressionProblem> {
    if universe.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "need at least 3 bonds to identify the curve, got {}",
            universe.len()
        )));
    }
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::InvalidInput(format!("decay rate {alpha} must be positive")));
    }
    let r = rec.of_par();
    let mut u_rows = Vec::with_capacity(universe.len());
    let mut v = Vec::with_capacity(universe.len());
    for bond in universe {
        let sched = build_schedule(bond)?;
        let times = sched.times();
        let c = sched.coupon_amount();
        let z: Vec<f64> = times.iter().map(|&t| disc.discount(t)).collect();
        let n = times.len();
        let mut row = [0.0_f64; 3];
        for i in 0..n - 1 {
            let cash = c * z[i] - r * (z[i] - z[i + 1]);
            let s1 = (-alpha * times[i]).exp();
            row[0] += s1 * cash;
            row[1] += s1 * s1 * cash;
            row[2] += s1 * s1 * s1 * cash;
        }
        let s1 = (-alpha * times[n - 1]).exp();
        let last = (c + 1.0 - r) * z[n - 1];
        row[0] += s1 * last;
        row[1] += s1 * s1 * last;
        row[2] += s1 * s1 * s1 * last;
        u_rows.push(row);
        v.push(sched.dirty_unit(bond.clean_price) - r * z[0]);
    }
    let n = universe.len();
    let mut problem = RegressionProblem {
        alpha,
        u: u_rows,
        v,
        base_weights: vec![1.0; n],
        outlier_weights: vec![1.0; n],
        constraints: Vec::new(),
        t_max: horizon(universe),
    };
    problem.set_constraint_tenors(&default_constraint_tenors());
    Ok(problem)
}

/// Duration-tier weights: `1 / duration^2`, where duration is the
/// discounted-time average of the bond's cash flows at its own Z-spread
/// (at spread zero when the bond admits no Z-spread).
pub fn base_weights(universe: &[BondQuote], disc: &DiscountCurve) -> Result<Vec<f64>> {
    universe
        .iter()
        .map(|bond| {
            let sched = build_schedule(bond)?;
            let spread = solve_zspread(bond, disc).unwrap_or(0.0);
            let c = sched.coupon_amount();
            let mut pv = 0.0;
            let mut tpv = 0.0;
            let times = sched.times();
            for (i, &t) in times.iter().enumerate() {
                let mut cf = c;
                if i == times.len() - 1 {
                    cf += 1.0;
                }
                let x = cf * disc.discount(t) * (-spread * t).exp();
                pv += x;
                tpv += t * x;
            }
            let duration = tpv / pv;
            Ok(1.0 / (duration * duration))
        })
        .collect()
}

/// Tukey bisquare weights from price residuals.
///
/// The scale is the median absolute deviation from the median, converted to
/// a sigma. Residuals beyond `tuning_constant` sigmas get the floor weight;
/// zero dispersion (all residuals equal) leaves every weight at 1.
pub fn reweight_outliers(residuals: &[f64], tuning_constant: f64) -> Result<Vec<f64>> {
    if residuals.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "need at least 3 residuals to estimate dispersion, got {}",
            residuals.len()
        )));
    }
    if !tuning_constant.is_finite() || tuning_constant <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "outlier tuning constant {tuning_constant} must be positive"
        )));
    }
    let med = median(residuals);
    let deviations: Vec<f64> = residuals.iter().map(|r| (r - med).abs()).collect();
    let sigma = MAD_SCALE * median(&deviations);
    if sigma == 0.0 {
        return Ok(vec![1.0; residuals.len()]);
    }
    Ok(residuals
        .iter()
        .map(|r| {
            let s = r / (tuning_constant * sigma);
            if s.abs() < 1.0 {
                let d = 1.0 - s * s;
                d * d
            } else {
                OUTLIER_WEIGHT_FLOOR
            }
        })
        .collect())
}

fn median(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

struct WlsSolution {
    betas: [f64; 3],
    active: Vec<ConstraintKind>,
}

/// Minimizes the weighted squared price error subject to the coefficient sum
/// and shape constraints. Returns the coefficients.
pub fn solve_constrained_wls(problem: &RegressionProblem) -> Result<[f64; 3]> {
    solve_with_diagnostics(problem).map(|s| s.betas)
}

/// Full constrained solve: exact QP by candidate enumeration, then continuum
/// monotonicity refinement with rows added at closed-form violation tenors.
fn solve_with_diagnostics(problem: &RegressionProblem) -> Result<WlsSolution> {
    // reduce to x = (beta_1, beta_2) with beta_3 = 1 - x_1 - x_2
    let w = problem.combined_weights();
    let mut h = [0.0_f64; 3]; // h[0]=H11, h[1]=H12, h[2]=H22
    let mut g = [0.0_f64; 2];
    for (q, u) in problem.u.iter().enumerate() {
        let a = [u[0] - u[2], u[1] - u[2]];
        let b = problem.v[q] - u[2];
        h[0] += w[q] * a[0] * a[0];
        h[1] += w[q] * a[0] * a[1];
        h[2] += w[q] * a[1] * a[1];
        g[0] += w[q] * a[0] * b;
        g[1] += w[q] * a[1] * b;
    }
    let det = h[0] * h[2] - h[1] * h[1];
    let scale = h[0].abs().max(h[2].abs()).max(h[1].abs());
    if !(det.abs() > 1e-12 * scale * scale) {
        return Err(Error::InfeasibleFit(
            "bond universe does not identify the curve (degenerate regression)".into(),
        ));
    }

    let mut extra: Vec<(ConstraintKind, [f64; 3])> = Vec::new();
    let u_min = (-problem.alpha * problem.t_max).exp();
    for _ in 0..=MAX_REFINEMENTS {
        let rows: Vec<&(ConstraintKind, [f64; 3])> =
            problem.constraints.iter().chain(extra.iter()).collect();
        let x = solve_reduced_qp(h, det, g, &rows)?;
        let betas = [x[0], x[1], 1.0 - x[0] - x[1]];
        let (slope_min, u_star) = decay_slope_min(&betas, u_min);
        if slope_min >= 1e-10 || (extra.len() >= MAX_REFINEMENTS && slope_min > 0.0) {
            let active = rows
                .iter()
                .filter(|(_, r)| {
                    let lhs = r[0] * betas[0] + r[1] * betas[1] + r[2] * betas[2];
                    lhs - CONSTRAINT_MARGIN <= ACTIVE_TOL
                })
                .map(|(kind, _)| *kind)
                .collect();
            return Ok(WlsSolution { betas, active });
        }
        if extra.len() >= MAX_REFINEMENTS {
            break;
        }
        let t_star = if u_star >= 1.0 { 0.0 } else { -u_star.ln() / problem.alpha };
        extra.push((ConstraintKind::Monotonic { tenor: t_star }, monotonic_row(problem.alpha, t_star)));
    }
    Err(Error::InfeasibleFit(
        "could not reach a strictly decreasing survival curve".into(),
    ))
}

/// Exact solution of the reduced 2-variable QP `min x'Hx - 2g'x` subject to
/// `ahat . x >= bhat` rows: tries the unconstrained optimum, then every
/// single-row equality projection, then every row pair; the feasible
/// candidate with the lowest objective wins.
fn solve_reduced_qp(
    h: [f64; 3],
    det: f64,
    g: [f64; 2],
    rows: &[&(ConstraintKind, [f64; 3])],
) -> Result<[f64; 2]> {
    let reduced: Vec<([f64; 2], f64)> = rows
        .iter()
        .map(|(_, r)| ([r[0] - r[2], r[1] - r[2]], CONSTRAINT_MARGIN - r[2]))
        .collect();
    let feasible = |x: &[f64; 2]| {
        x[0].is_finite()
            && x[1].is_finite()
            && reduced
                .iter()
                .all(|(a, b)| a[0] * x[0] + a[1] * x[1] >= b - FEAS_TOL)
    };
    let objective =
        |x: &[f64; 2]| x[0] * x[0] * h[0] + 2.0 * x[0] * x[1] * h[1] + x[1] * x[1] * h[2]
            - 2.0 * (g[0] * x[0] + g[1] * x[1]);
    let h_inv = |y: &[f64; 2]| [(h[2] * y[0] - h[1] * y[1]) / det, (h[0] * y[1] - h[1] * y[0]) / det];

    let x_u = h_inv(&g);
    if feasible(&x_u) {
        return Ok(x_u);
    }

    let mut best: Option<([f64; 2], f64)> = None;
    let mut consider = |x: [f64; 2]| {
        if feasible(&x) {
            let f = objective(&x);
            if best.map_or(true, |(_, fb)| f < fb) {
                best = Some((x, f));
            }
        }
    };

    for (a, b) in &reduced {
        let d = h_inv(a);
        let denom = a[0] * d[0] + a[1] * d[1];
        if denom.abs() > 0.0 {
            let lambda = (b - (a[0] * x_u[0] + a[1] * x_u[1])) / denom;
            consider([x_u[0] + lambda * d[0], x_u[1] + lambda * d[1]]);
        }
    }
    for j in 0..reduced.len() {
        for k in j + 1..reduced.len() {
            let (aj, bj) = &reduced[j];
            let (ak, bk) = &reduced[k];
            let det2 = aj[0] * ak[1] - aj[1] * ak[0];
            let scale2 = aj[0].abs().max(aj[1].abs()) * ak[0].abs().max(ak[1].abs());
            if det2.abs() > 1e-14 * scale2.max(f64::MIN_POSITIVE) {
                consider([(bj * ak[1] - bk * aj[1]) / det2, (aj[0] * bk - ak[0] * bj) / det2]);
            }
        }
    }
    best.map(|(x, _)| x).ok_or_else(|| {
        Error::InfeasibleFit("shape constraints admit no survival curve for this data".into())
    })
}

struct AlphaFit {
    alpha: f64,
    betas: [f64; 3],
    active: Vec<ConstraintKind>,
    residuals: Vec<f64>,
    weights: Vec<f64>,
    outlier_weights: Vec<f64>,
    wape: f64,
    passes: usize,
}

fn weighted_ape(residuals: &[f64], weights: &[f64]) -> f64 {
    let total: f64 = weights.iter().sum();
    residuals
        .iter()
        .zip(weights)
        .map(|(r, w)| w / total * r * r)
        .sum::<f64>()
        .sqrt()
}

fn fit_one_alpha(problem: &mut RegressionProblem, config: &FitConfig) -> Result<AlphaFit> {
    let mut sol = solve_with_diagnostics(problem)?;
    let mut passes = 0;
    for _ in 0..config.max_reweight_passes {
        let residuals = problem.residuals(&sol.betas);
        problem.set_outlier_weights(reweight_outliers(&residuals, config.outlier_constant)?)?;
        let next = solve_with_diagnostics(problem)?;
        passes += 1;
        let delta = sol
            .betas
            .iter()
            .zip(&next.betas)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0_f64, f64::max);
        sol = next;
        if delta < BETA_CONV_TOL {
            break;
        }
    }
    let residuals = problem.residuals(&sol.betas);
    let weights = problem.combined_weights();
    Ok(AlphaFit {
        alpha: problem.alpha,
        betas: sol.betas,
        active: sol.active,
        wape: weighted_ape(&residuals, &weights),
        residuals,
        weights,
        outlier_weights: problem.outlier_weights.clone(),
        passes,
    })
}

/// Fits the survival curve: for every decay rate on the grid, solves the
/// reweighted constrained regression, then keeps the rate with the smallest
/// final weighted pricing error (ties go to the smaller rate).
pub fn fit_survival(
    universe: &[BondQuote],
    disc: &DiscountCurve,
    config: &FitConfig,
) -> Result<FitResult> {
    if universe.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "need at least 3 bonds to identify the curve, got {}",
            universe.len()
        )));
    }
    for bond in universe {
        bond.validate()?;
    }
    if config.alpha_grid.is_empty() {
        return Err(Error::InvalidInput("decay rate grid is empty".into()));
    }
    if config.alpha_grid.iter().any(|a| !a.is_finite() || *a <= 0.0) {
        return Err(Error::InvalidInput("decay rates must be positive".into()));
    }
    let base = base_weights(universe, disc)?;
    let outcomes: Vec<Result<AlphaFit>> = config
        .alpha_grid
        .par_iter()
        .map(|&alpha| {
            let mut problem = build_regressors(universe, disc, alpha, config.recovery)?;
            problem.set_constraint_tenors(&config.constraint_tenors);
            problem.set_base_weights(base.clone())?;
            fit_one_alpha(&mut problem, config)
        })
        .collect();

    let mut best: Option<AlphaFit> = None;
    let mut first_err: Option<Error> = None;
    let mut alpha_objectives = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(fit) => {
                alpha_objectives.push((fit.alpha, fit.wape));
                if best.as_ref().map_or(true, |b| fit.wape < b.wape) {
                    best = Some(fit);
                }
            }
            Err(e) => {
                if first_err.is_none() {
                    first_err = Some(e);
                }
            }
        }
    }
    let chosen = match best {
        Some(fit) => fit,
        None => {
            return Err(first_err
                .unwrap_or_else(|| Error::InfeasibleFit("no decay rate admits a fit".into())))
        }
    };
    let curve = SurvivalCurve::new(chosen.alpha, chosen.betas, horizon(universe))?;
    Ok(FitResult {
        curve,
        residuals: chosen.residuals,
        weights: chosen.weights,
        outlier_weights: chosen.outlier_weights,
        wape: chosen.wape,
        active_constraints: chosen.active,
        iterations: chosen.passes,
        alpha_objectives,
    })
}
