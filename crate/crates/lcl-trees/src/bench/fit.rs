//! Log-log least squares for scaling exponents, and the closed-form
//! exponent predictions to compare against.

use crate::gen::{alpha_logstar, alpha_poly, iterated_log, x_factor, x_prime, ParamsError, Regime};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FitError {
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("all x and y values must be positive")]
    NonPositive,
}

/// How to read the x column before taking logs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XTransform {
    N,
    /// x -> log* x; only meaningful as a coarse check, see the module docs
    /// on the log* regime
    LogstarN,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    pub points_used: usize,
    /// true when the smallest-x point was dropped to get past finite-size
    /// transients; never done silently
    pub dropped_smallest: bool,
}

/// Ordinary least squares of ln y against ln x. When the first fit has
/// r2 < 0.98 and at least 4 points, the smallest-x point is dropped once
/// and the fit repeated; the drop is reported in the result.
pub fn fit_exponent(points: &[(f64, f64)], xt: XTransform) -> Result<FitResult, FitError> {
    if points.len() < 3 {
        return Err(FitError::TooFewPoints(points.len()));
    }
    if points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return Err(FitError::NonPositive);
    }
    let mut pts: Vec<(f64, f64)> = points
        .iter()
        .map(|&(x, y)| {
            let xv = match xt {
                XTransform::N => x,
                XTransform::LogstarN => iterated_log(x as u64) as f64,
            };
            (xv, y)
        })
        .collect();
    if pts.iter().any(|&(x, _)| x <= 0.0) {
        return Err(FitError::NonPositive);
    }
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let first = ols_loglog(&pts, false);
    if first.r2 >= 0.98 || pts.len() < 4 {
        return Ok(first);
    }
    Ok(ols_loglog(&pts[1..], true))
}

fn ols_loglog(pts: &[(f64, f64)], dropped: bool) -> FitResult {
    let n = pts.len() as f64;
    let lx: Vec<f64> = pts.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = pts.iter().map(|p| p.1.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    let intercept = my - slope * mx;
    let ss_tot: f64 = ly.iter().map(|y| (y - my) * (y - my)).sum();
    let ss_res: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| {
            let e = y - (intercept + slope * x);
            e * e
        })
        .sum();
    // constant y fits perfectly with slope 0
    let r2 = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    FitResult { slope, intercept, r2, points_used: pts.len(), dropped_smallest: dropped }
}

#[derive(Debug, Clone, Serialize)]
pub struct Prediction {
    /// predicted node-averaged exponent alpha_1
    pub alpha: f64,
    /// efficiency factor x = log(delta-d-1)/log(delta-1)
    pub x: f64,
    /// lower-regime factor x' = log(delta-d+1)/log(delta-1)
    pub x_prime: f64,
}

/// Closed-form exponent prediction for the weighted problem with the given
/// parameters.
pub fn predict(delta: usize, d: usize, k: u32, regime: Regime) -> Result<Prediction, ParamsError> {
    let x = x_factor(delta, d)?;
    let xp = x_prime(delta, d)?;
    let alpha = match regime {
        Regime::Poly => alpha_poly(x, k)?,
        Regime::Logstar => alpha_logstar(x, k)?,
    };
    Ok(Prediction { alpha, x, x_prime: xp })
}
