//! Exponential spline basis factors.
//!
//! The survival curve is expanded in decaying exponentials. The first three
//! factors are `e^{-k alpha t}` for `k = 1..3` and carry the whole term
//! structure in the default configuration. Optional knot factors extend the
//! basis for very long maturity ranges: each knot factor is identically zero
//! up to its knot tenor and rises smoothly toward `1/3` past it, with a
//! continuous first derivative at the knot.

use crate::error::{Error, Result};

/// Number of knotless exponential factors in every basis.
pub const NUM_NO_KNOT_FACTORS: usize = 3;

/// Evaluates the k-th knotless factor `e^{-k alpha t}`.
///
/// `k` must be in `1..=3` and `t` non-negative.
pub fn eval_no_knot(k: usize, t: f64, alpha: f64) -> Result<f64> {
    if !(1..=NUM_NO_KNOT_FACTORS).contains(&k) {
        return Err(Error::InvalidInput(format!(
            "factor index {k} outside 1..={NUM_NO_KNOT_FACTORS}"
        )));
    }
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidInput(format!("negative or non-finite time {t}")));
    }
    Ok((-(k as f64) * alpha * t).exp())
}

/// Evaluates a knot factor with knot tenor `t_knot`.
///
/// Zero for `t <= t_knot`; for `t > t_knot` equals
/// `1/3 + e^{-2 alpha d} - e^{-alpha d} - (1/3) e^{-3 alpha d}` with
/// `d = t - t_knot`, which factors exactly into `(1 - e^{-alpha d})^3 / 3`.
/// The cube form is used because the four-term sum cancels badly near the
/// knot. The factor starts at zero with zero slope and tends to `1/3`.
pub fn eval_knot(t: f64, alpha: f64, t_knot: f64) -> Result<f64> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidInput(format!("negative or non-finite time {t}")));
    }
    if !(t_knot > 0.0) {
        return Err(Error::InvalidInput(format!("knot tenor {t_knot} must be positive")));
    }
    if t <= t_knot {
        return Ok(0.0);
    }
    let d = t - t_knot;
    let one_minus = -(-alpha * d).exp_m1(); // 1 - e^{-alpha d}, stable for small d
    Ok(one_minus * one_minus * one_minus / 3.0)
}

/// A fixed set of exponential factors sharing one decay rate.
#[derive(Debug, Clone)]
pub struct SplineBasis {
    alpha: f64,
    knots: Vec<f64>,
}

impl SplineBasis {
    /// Builds a basis with decay rate `alpha > 0` and optional knot tenors,
    /// which must be positive and strictly increasing.
    pub fn new(alpha: f64, knots: Vec<f64>) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidInput(format!("decay rate {alpha} must be positive")));
        }
        for pair in knots.windows(2) {
            if pair[1] <= pair[0] {
                return Err(Error::InvalidInput(
                    "knot tenors must be strictly increasing".into(),
                ));
            }
        }
        if let Some(first) = knots.first() {
            if !(*first > 0.0) {
                return Err(Error::InvalidInput("knot tenors must be positive".into()));
            }
        }
        Ok(Self { alpha, knots })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    /// Total number of factors: three knotless plus one per knot.
    pub fn len(&self) -> usize {
        NUM_NO_KNOT_FACTORS + self.knots.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All factors evaluated at `t`, knotless factors first.
    ///
    /// # Panics
    /// Panics if `t` is negative; payment schedules never produce one.
    pub fn basis_row(&self, t: f64) -> Vec<f64> {
        assert!(t >= 0.0, "basis_row called with negative time {t}");
        let mut row = Vec::with_capacity(self.len());
        for k in 1..=NUM_NO_KNOT_FACTORS {
            row.push((-(k as f64) * self.alpha * t).exp());
        }
        for &t_knot in &self.knots {
            // eval_knot's input checks already hold here
            let v = if t <= t_knot {
                0.0
            } else {
                let one_minus = -(-self.alpha * (t - t_knot)).exp_m1();
                one_minus * one_minus * one_minus / 3.0
            };
            row.push(v);
        }
        row
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn expanded_knot(t: f64, alpha: f64, t_knot: f64) -> f64 {
        if t <= t_knot {
            return 0.0;
        }
        let d = t - t_knot;
        1.0 / 3.0 + (-2.0 * alpha * d).exp() - (-alpha * d).exp() - (-3.0 * alpha * d).exp() / 3.0
    }

    #[test]
    fn no_knot_matches_plain_exponentials() {
        assert!((eval_no_knot(1, 1.0, 1.0).unwrap() - 0.36787944117144233).abs() < 1e-15);
        assert!((eval_no_knot(3, 1.0, 1.0).unwrap() - 0.049787068367863944).abs() < 1e-15);
        assert_eq!(eval_no_knot(2, 0.0, 0.17).unwrap(), 1.0);
    }

    #[test]
    fn no_knot_rejects_bad_index_and_negative_time() {
        assert!(eval_no_knot(0, 1.0, 0.1).is_err());
        assert!(eval_no_knot(4, 1.0, 0.1).is_err());
        assert!(eval_no_knot(2, -0.5, 0.1).is_err());
    }

    #[test]
    fn knot_factor_is_zero_at_and_before_knot() {
        assert_eq!(eval_knot(2.0, 0.1, 5.0).unwrap(), 0.0);
        assert_eq!(eval_knot(5.0, 0.1, 5.0).unwrap(), 0.0);
    }

    #[test]
    fn knot_factor_tends_to_one_third() {
        let v = eval_knot(5.0 + 2000.0, 0.1, 5.0).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-12, "far-field value {v}");
    }

    #[test]
    fn knot_factor_matches_four_term_expansion() {
        for &(t, alpha, t_knot) in &[
            (5.001, 0.05, 5.0),
            (5.5, 0.10, 5.0),
            (12.0, 0.30, 5.0),
            (40.0, 0.01, 10.0),
        ] {
            let compact = eval_knot(t, alpha, t_knot).unwrap();
            let long = expanded_knot(t, alpha, t_knot);
            assert!(
                (compact - long).abs() < 1e-15,
                "mismatch at t={t}: {compact} vs {long}"
            );
        }
    }

    #[test]
    fn knot_factor_first_derivative_continuous_at_knot() {
        // central difference straddling the knot must vanish like the left side
        let alpha = 0.2;
        let t_knot = 5.0;
        let h = 1e-6;
        let fd = (eval_knot(t_knot + h, alpha, t_knot).unwrap()
            - eval_knot(t_knot - h, alpha, t_knot).unwrap())
            / (2.0 * h);
        assert!(fd.abs() < 1e-9, "slope at knot {fd}");
    }

    #[test]
    fn basis_row_at_zero_is_ones_then_zeros() {
        let basis = SplineBasis::new(0.05, vec![5.0, 10.0]).unwrap();
        let row = basis.basis_row(0.0);
        assert_eq!(row.len(), 5);
        assert_eq!(&row[..3], &[1.0, 1.0, 1.0]);
        assert_eq!(&row[3..], &[0.0, 0.0]);
    }

    #[test]
    fn basis_row_agrees_with_scalar_evaluators() {
        let basis = SplineBasis::new(0.07, vec![4.0]).unwrap();
        let t = 6.5;
        let row = basis.basis_row(t);
        for k in 1..=3 {
            assert_eq!(row[k - 1], eval_no_knot(k, t, 0.07).unwrap());
        }
        assert_eq!(row[3], eval_knot(t, 0.07, 4.0).unwrap());
    }

    #[test]
    fn basis_rejects_bad_alpha_and_unordered_knots() {
        assert!(SplineBasis::new(0.0, vec![]).is_err());
        assert!(SplineBasis::new(-0.1, vec![]).is_err());
        assert!(SplineBasis::new(0.1, vec![5.0, 5.0]).is_err());
        assert!(SplineBasis::new(0.1, vec![-1.0]).is_err());
    }

    proptest! {
        #[test]
        fn no_knot_factors_strictly_decrease(
            k in 1usize..=3,
            alpha in 0.01f64..0.5,
            t in 0.0f64..40.0,
            dt in 0.01f64..5.0,
        ) {
            let a = eval_no_knot(k, t, alpha).unwrap();
            let b = eval_no_knot(k, t + dt, alpha).unwrap();
            prop_assert!(b < a);
        }

        #[test]
        fn knot_factor_stays_in_range(
            alpha in 0.01f64..0.5,
            t_knot in 0.5f64..20.0,
            t in 0.0f64..60.0,
        ) {
            let v = eval_knot(t, alpha, t_knot).unwrap();
            prop_assert!((0.0..1.0 / 3.0).contains(&v) || v == 0.0);
        }

        #[test]
        fn knot_factor_matches_expansion_everywhere(
            alpha in 0.01f64..0.5,
            t_knot in 0.5f64..20.0,
            t in 0.0f64..60.0,
        ) {
            let compact = eval_knot(t, alpha, t_knot).unwrap();
            let long = expanded_knot(t, alpha, t_knot);
            prop_assert!((compact - long).abs() < 1e-14);
        }
    }
}
