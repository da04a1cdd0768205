//! Least-squares fitting used by the measurement side of the crate:
//! straight-line fits (decay rates), log-log order estimation and the
//! through-origin envelope fit for defect bounds of the form C·t.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FitError {
    #[error("all values are below the zero floor; quantity is identically satisfied")]
    AllZero,
    #[error("need at least {needed} usable points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// Ordinary least squares y = slope·x + intercept with centered R².
pub fn line_fit(xs: &[f64], ys: &[f64]) -> Result<LineFit, FitError> {
    let n = xs.len();
    if n < 2 {
        return Err(FitError::TooFewPoints { needed: 2, got: n });
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| {
            let e = y - (slope * x + intercept);
            e * e
        })
        .sum();
    let r2 = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };
    Ok(LineFit { slope, intercept, r2 })
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct OrderFit {
    /// Exponent in value ≈ const · eps^slope.
    pub slope: f64,
    /// The constant, exp of the log-log intercept.
    pub constant: f64,
    pub r2: f64,
    /// Number of pairs dropped because the value was below the zero floor.
    pub excluded: usize,
}

pub const ZERO_FLOOR: f64 = 1e-13;

/// Log-log order fit over (eps, value) pairs. Values at or below the zero
/// floor are excluded; if everything is excluded the quantity is reported
/// as identically satisfied via `FitError::AllZero`.
pub fn fit_order(pairs: &[(f64, f64)]) -> Result<OrderFit, FitError> {
    let usable: Vec<(f64, f64)> = pairs
        .iter()
        .copied()
        .filter(|&(_, v)| v > ZERO_FLOOR)
        .collect();
    let excluded = pairs.len() - usable.len();
    if usable.is_empty() {
        return Err(FitError::AllZero);
    }
    if usable.len() < 3 {
        return Err(FitError::TooFewPoints { needed: 3, got: usable.len() });
    }
    let xs: Vec<f64> = usable.iter().map(|&(e, _)| e.ln()).collect();
    let ys: Vec<f64> = usable.iter().map(|&(_, v)| v.ln()).collect();
    let lf = line_fit(&xs, &ys)?;
    Ok(OrderFit {
        slope: lf.slope,
        constant: lf.intercept.exp(),
        r2: lf.r2,
        excluded,
    })
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct EnvelopeFit {
    /// Slope of the through-origin regression d ≈ c·t.
    pub c: f64,
    /// Uncentered R² = 1 - Σ(d-ct)²/Σd².
    pub r2: f64,
    /// max d_i / (c·t_i); > 3 flags an outlier against the fitted envelope.
    pub max_ratio: f64,
}

/// Through-origin fit of defects d_i against envelopes t_i (both >= 0).
pub fn envelope_fit(defects: &[f64], envelopes: &[f64]) -> Result<EnvelopeFit, FitError> {
    assert_eq!(defects.len(), envelopes.len());
    if defects.iter().all(|&d| d <= ZERO_FLOOR) {
        return Err(FitError::AllZero);
    }
    if defects.len() < 3 {
        return Err(FitError::TooFewPoints { needed: 3, got: defects.len() });
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for (&d, &t) in defects.iter().zip(envelopes) {
        num += d * t;
        den += t * t;
    }
    let c = num / den;
    let mut ss_res = 0.0;
    let mut ss_tot = 0.0;
    let mut max_ratio: f64 = 0.0;
    for (&d, &t) in defects.iter().zip(envelopes) {
        let e = d - c * t;
        ss_res += e * e;
        ss_tot += d * d;
        if c * t > 0.0 {
            max_ratio = max_ratio.max(d / (c * t));
        }
    }
    Ok(EnvelopeFit { c, r2: 1.0 - ss_res / ss_tot, max_ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn exact_quadratic_data() {
        let f = fit_order(&[(0.1, 1e-2), (0.05, 2.5e-3), (0.025, 6.25e-4)]).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-9);
        assert!((f.constant - 1.0).abs() < 1e-9);
        assert!(f.r2 > 1.0 - 1e-12);
    }

    #[test]
    fn exact_linear_data() {
        // only two usable points: slope would be exact but the fit demands 3
        let err = fit_order(&[(0.1, 1e-3), (0.05, 5e-4)]).unwrap_err();
        assert!(matches!(err, FitError::TooFewPoints { .. }));
        let f = fit_order(&[(0.1, 1e-3), (0.05, 5e-4), (0.025, 2.5e-4)]).unwrap();
        assert!((f.slope - 1.0).abs() < 1e-9);
    }

    #[test]
    fn all_zero_is_flagged() {
        let err = fit_order(&[(0.1, 0.0), (0.05, 1e-14), (0.025, 0.0)]).unwrap_err();
        assert!(matches!(err, FitError::AllZero));
    }

    #[test]
    fn envelope_recovers_constant() {
        let t = [1.0, 2.0, 3.0, 4.0];
        let d: Vec<f64> = t.iter().map(|&x| 0.7 * x).collect();
        let f = envelope_fit(&d, &t).unwrap();
        assert!((f.c - 0.7).abs() < 1e-12);
        assert!((f.max_ratio - 1.0).abs() < 1e-12);
        assert!(f.r2 > 1.0 - 1e-12);
    }

    proptest! {
        #[test]
        fn order_fit_recovers_power_law(c in 0.1f64..10.0, q in 0.5f64..3.0) {
            let pairs: Vec<(f64, f64)> =
                [0.1, 0.05, 0.025, 0.0125].iter().map(|&e: &f64| (e, c * e.powf(q))).collect();
            let f = fit_order(&pairs).unwrap();
            prop_assert!((f.slope - q).abs() < 1e-6);
            prop_assert!((f.constant - c).abs() / c < 1e-6);
        }
    }
}
