//! File formats: bond universe and discount curve CSV input, fitted-curve
//! JSON persistence, residual and measure CSV output.
//!
//! Conventions: rates, spreads and coupons are decimals everywhere except
//! the bond file's `coupon_pct` column (percent, matching market quote
//! sheets); prices are per 100 face. Floats are written with the shortest
//! representation that parses back to the same value, so identical inputs
//! produce byte-identical files.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cashflows::{BondQuote, Frequency};
use crate::curves::{DiscountCurve, SurvivalCurve};
use crate::error::{Error, Result};
use crate::measures::MeasureCurve;
use crate::pricing::RecoveryAssumption;

pub const BONDS_HEADER: [&str; 5] =
    ["id", "coupon_pct", "frequency", "maturity_years", "clean_price"];
pub const DISCOUNT_HEADER: [&str; 2] = ["tenor_years", "zero_rate"];
pub const RESIDUALS_HEADER: [&str; 7] =
    ["id", "market", "fitted", "residual", "oasf", "zspread", "market_p_spread"];
pub const MEASURE_HEADER: [&str; 5] = ["tenor_years", "value", "kind", "coupon", "recovery"];

fn check_header(got: &csv::StringRecord, want: &[&str], what: &str) -> Result<()> {
    if got.len() != want.len() || got.iter().zip(want).any(|(g, w)| g.trim() != *w) {
        return Err(Error::InvalidInput(format!(
            "{what}: expected header '{}', found '{}'",
            want.join(","),
            got.iter().collect::<Vec<_>>().join(",")
        )));
    }
    Ok(())
}

fn parse_field<T: std::str::FromStr>(record: &csv::StringRecord, idx: usize, what: &str) -> Result<T> {
    let raw = record
        .get(idx)
        .ok_or_else(|| Error::InvalidInput(format!("{what}: missing column {idx}")))?
        .trim();
    raw.parse()
        .map_err(|_| Error::InvalidInput(format!("{what}: cannot parse '{raw}'")))
}

/// Reads a bond universe. Header `id,coupon_pct,frequency,maturity_years,
/// clean_price`; coupons in percent, frequency as payments per year.
pub fn read_bonds_csv(path: &Path) -> Result<Vec<BondQuote>> {
    let mut rdr = csv::Reader::from_path(path)?;
    check_header(rdr.headers()?, &BONDS_HEADER, &format!("{}", path.display()))?;
    let mut bonds = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row?;
        let what = format!("{} row {}", path.display(), i + 2);
        let per_year: u32 = parse_field(&row, 2, &what)?;
        let bond = BondQuote {
            id: row.get(0).unwrap_or("").trim().to_string(),
            coupon: parse_field::<f64>(&row, 1, &what)? / 100.0,
            frequency: Frequency::from_per_year(per_year)?,
            maturity: parse_field(&row, 3, &what)?,
            clean_price: parse_field(&row, 4, &what)?,
        };
        bond.validate()?;
        bonds.push(bond);
    }
    Ok(bonds)
}

pub fn write_bonds_csv(path: &Path, bonds: &[BondQuote]) -> Result<()> {
    let mut wtr = csv::Writer::from_path(path)?;
    wtr.write_record(BONDS_HEADER)?;
    for b in bonds {
        wtr.write_record([
            b.id.as_str(),
            &format!("{}", b.coupon * 100.0),
            &format!("{}", b.frequency.per_year()),
            &format!("{}", b.maturity),
            &format!("{}", b.clean_price),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

/// Reads discount pillars. Header `tenor_years,zero_rate`, rates as
/// decimals with continuous compounding.
pub fn read_discount_csv(path: &Path) -> Result<DiscountCurve> {
    let mut rdr = csv::Reader::from_path(path)?;
    check_header(rdr.headers()?, &DISCOUNT_HEADER, &format!("{}", path.display()))?;
    let mut pillars = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row?;
        let what = format!("{} row {}", path.display(), i + 2);
        pillars.push((parse_field(&row, 0, &what)?, parse_field(&row, 1, &what)?));
    }
    DiscountCurve::new(&pillars)
}

/// Flat persisted form of a fitted survival curve.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveRecord {
    pub alpha: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub beta3: f64,
    pub t_max: f64,
    pub recovery: f64,
    pub wape: f64,
}

impl CurveRecord {
    pub fn new(curve: &SurvivalCurve, recovery: f64, wape: f64) -> Self {
        let b = curve.betas();
        CurveRecord {
            alpha: curve.alpha(),
            beta1: b[0],
            beta2: b[1],
            beta3: b[2],
            t_max: curve.t_max(),
            recovery,
            wape,
        }
    }

    /// Rebuilds the curve, re-validating all invariants.
    pub fn survival(&self) -> Result<SurvivalCurve> {
        SurvivalCurve::new(self.alpha, [self.beta1, self.beta2, self.beta3], self.t_max)
    }

    pub fn recovery(&self) -> Result<RecoveryAssumption> {
        RecoveryAssumption::new(self.recovery)
    }
}

pub fn write_curve_json(path: &Path, record: &CurveRecord) -> Result<()> {
    let mut text = serde_json::to_string_pretty(record)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn read_curve_json(path: &Path) -> Result<CurveRecord> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

/// One output row per fitted bond.
#[derive(Debug, Clone)]
pub struct ResidualRow {
    pub id: String,
    pub market: f64,
    pub fitted: f64,
    pub residual: f64,
    pub oasf: f64,
    pub zspread: f64,
    pub market_p_spread: f64,
}

pub fn write_residuals_csv(path: &Path, rows: &[ResidualRow]) -> Result<()> {
    let mut wtr = csv::Writer::from_path(path)?;
    wtr.write_record(RESIDUALS_HEADER)?;
    for r in rows {
        wtr.write_record([
            r.id.as_str(),
            &format!("{}", r.market),
            &format!("{}", r.fitted),
            &format!("{}", r.residual),
            &format!("{}", r.oasf),
            &format!("{}", r.zspread),
            &format!("{}", r.market_p_spread),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

/// Appends each curve as `tenor_years,value,kind,coupon,recovery` rows;
/// the coupon column is empty for kinds without a coupon level.
pub fn write_measures_csv(path: &Path, curves: &[&MeasureCurve]) -> Result<()> {
    let mut wtr = csv::Writer::from_path(path)?;
    wtr.write_record(MEASURE_HEADER)?;
    for curve in curves {
        let coupon = curve.coupon.map_or(String::new(), |c| format!("{c}"));
        for (t, v) in curve.grid.iter().zip(&curve.values) {
            wtr.write_record([
                &format!("{t}"),
                &format!("{v}"),
                curve.kind.name(),
                &coupon,
                &format!("{}", curve.recovery),
            ])?;
        }
    }
    wtr.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{sample_measure, MeasureKind};

    fn sample_bonds() -> Vec<BondQuote> {
        vec![
            BondQuote {
                id: "b1".into(),
                coupon: 0.0525,
                frequency: Frequency::SemiAnnual,
                maturity: 5.0,
                clean_price: 98.75,
            },
            BondQuote {
                id: "b2".into(),
                coupon: 0.0,
                frequency: Frequency::Annual,
                maturity: 10.0,
                clean_price: 61.25,
            },
        ]
    }

    #[test]
    fn bonds_csv_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bonds.csv");
        let bonds = sample_bonds();
        write_bonds_csv(&path, &bonds).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("id,coupon_pct,frequency,maturity_years,clean_price\n"));
        assert!(text.contains("b1,5.25,2,5,98.75"));
        let back = read_bonds_csv(&path).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[0].id, "b1");
        assert_eq!(back[0].coupon, 0.0525);
        assert_eq!(back[0].frequency, Frequency::SemiAnnual);
        assert_eq!(back[1].clean_price, 61.25);
    }

    #[test]
    fn bonds_csv_rejects_bad_input() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bonds.csv");

        fs::write(&path, "id,coupon,frequency,maturity_years,clean_price\nb1,5,2,5,98\n").unwrap();
        assert!(matches!(read_bonds_csv(&path), Err(Error::InvalidInput(_))));

        fs::write(&path, "id,coupon_pct,frequency,maturity_years,clean_price\nb1,5,3,5,98\n")
            .unwrap();
        assert!(read_bonds_csv(&path).is_err(), "frequency 3 must be rejected");

        fs::write(&path, "id,coupon_pct,frequency,maturity_years,clean_price\nb1,5,2,abc,98\n")
            .unwrap();
        let err = read_bonds_csv(&path).unwrap_err();
        assert!(err.to_string().contains("row 2"), "{err}");

        fs::write(&path, "id,coupon_pct,frequency,maturity_years,clean_price\nb1,5,2,5,-3\n")
            .unwrap();
        assert!(read_bonds_csv(&path).is_err(), "negative price must be rejected");
    }

    #[test]
    fn discount_csv_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("disc.csv");
        fs::write(&path, "tenor_years,zero_rate\n1,0.03\n5,0.04\n10,0.045\n").unwrap();
        let disc = read_discount_csv(&path).unwrap();
        assert!((disc.discount(5.0) - (-0.04_f64 * 5.0).exp()).abs() < 1e-15);

        fs::write(&path, "tenor,zero_rate\n1,0.03\n").unwrap();
        assert!(matches!(read_discount_csv(&path), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn curve_json_round_trips_with_fixed_field_names() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("curve.json");
        let curve = SurvivalCurve::new(0.05, [0.5, 0.3, 0.2], 30.0).unwrap();
        let rec = CurveRecord::new(&curve, 0.4, 1.25e-9);
        write_curve_json(&path, &rec).unwrap();

        let text = fs::read_to_string(&path).unwrap();
        for field in ["alpha", "beta1", "beta2", "beta3", "t_max", "recovery", "wape"] {
            assert!(text.contains(&format!("\"{field}\"")), "missing field {field}");
        }

        let back = read_curve_json(&path).unwrap();
        let rebuilt = back.survival().unwrap();
        assert_eq!(rebuilt.alpha(), 0.05);
        assert_eq!(rebuilt.betas(), [0.5, 0.3, 0.2]);
        assert_eq!(back.recovery().unwrap().of_par(), 0.4);
        assert_eq!(back.wape, 1.25e-9);
    }

    #[test]
    fn curve_json_reload_revalidates() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("curve.json");
        fs::write(
            &path,
            "{\"alpha\":0.05,\"beta1\":2.0,\"beta2\":-0.5,\"beta3\":-0.5,\"t_max\":30.0,\"recovery\":0.4,\"wape\":0.0}\n",
        )
        .unwrap();
        let rec = read_curve_json(&path).unwrap();
        assert!(rec.survival().is_err(), "non-monotone coefficients must fail validation");
    }

    #[test]
    fn residuals_csv_has_exact_header() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("residuals.csv");
        let rows = vec![ResidualRow {
            id: "b1".into(),
            market: 98.5,
            fitted: 98.25,
            residual: 0.25,
            oasf: -0.0012,
            zspread: 0.0219,
            market_p_spread: 0.0234,
        }];
        write_residuals_csv(&path, &rows).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "id,market,fitted,residual,oasf,zspread,market_p_spread"
        );
        assert_eq!(lines.next().unwrap(), "b1,98.5,98.25,0.25,-0.0012,0.0219,0.0234");
    }

    #[test]
    fn measures_csv_blank_coupon_for_plain_kinds() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("measures.csv");
        let disc = DiscountCurve::flat(0.04);
        let surv = SurvivalCurve::new(0.05, [0.5, 0.3, 0.2], 40.0).unwrap();
        let rec = RecoveryAssumption::default();
        let grid = [1.0, 2.0];
        let hz = sample_measure(MeasureKind::Hazard, &grid, None, Frequency::SemiAnnual, &disc, &surv, rec)
            .unwrap();
        let ccp = sample_measure(
            MeasureKind::Ccp,
            &grid,
            Some(0.06),
            Frequency::SemiAnnual,
            &disc,
            &surv,
            rec,
        )
        .unwrap();
        write_measures_csv(&path, &[&hz, &ccp]).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "tenor_years,value,kind,coupon,recovery");
        assert_eq!(lines.len(), 5);
        assert!(lines[1].contains(",hazard,,0.4"), "{}", lines[1]);
        assert!(lines[3].contains(",ccp,0.06,0.4"), "{}", lines[3]);
        let v: f64 = lines[1].split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(v, surv.hazard(1.0).unwrap());
    }
}
