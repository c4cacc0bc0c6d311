//! Closed-form parameter and exponent arithmetic for the instance families.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParamsError {
    #[error("delta must be at least d+3 (delta={delta}, d={d})")]
    DeltaTooSmall { delta: usize, d: usize },
    #[error("exponents must sum to less than 1 (sum={0})")]
    ExponentSum(f64),
    #[error("length {0} rounded below 1")]
    LengthTooSmall(usize),
    #[error("x must lie in [0,1], got {0}")]
    BadX(f64),
}

/// Efficiency factor x = log(delta-d-1)/log(delta-1).
///
/// Defined (with x in [0,1]) for d up to delta-2; the weighted problems
/// additionally demand delta >= d+3, checked by their own constructors.
pub fn x_factor(delta: usize, d: usize) -> Result<f64, ParamsError> {
    if delta < 3 || d + 2 > delta {
        return Err(ParamsError::DeltaTooSmall { delta, d });
    }
    Ok(((delta - d - 1) as f64).ln() / ((delta - 1) as f64).ln())
}

/// The lower-regime analogue x' = log(delta-d+1)/log(delta-1).
pub fn x_prime(delta: usize, d: usize) -> Result<f64, ParamsError> {
    if delta < 3 || d + 2 > delta {
        return Err(ParamsError::DeltaTooSmall { delta, d });
    }
    Ok(((delta - d + 1) as f64).ln() / ((delta - 1) as f64).ln())
}

/// Parameters realizing the exact efficiency factor p/q:
/// delta = 2^q + 1, d = 2^q - 2^p.
pub fn params_from_rational(p: u32, q: u32) -> (usize, usize) {
    assert!(0 < p && p < q, "need 0 < p < q");
    let delta = (1usize << q) + 1;
    let d = (1usize << q) - (1usize << p);
    (delta, d)
}

fn geometric_sum(base: f64, terms: u32) -> f64 {
    (0..terms).map(|j| base.powi(j as i32)).sum()
}

/// First exponent of the poly-regime schedule: 1 / sum_{j=0}^{k-1} (2-x)^j.
pub fn alpha_poly(x: f64, k: u32) -> Result<f64, ParamsError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(ParamsError::BadX(x));
    }
    assert!(k >= 1);
    Ok(1.0 / geometric_sum(2.0 - x, k))
}

/// The exponents alpha_1..alpha_{k-1}, where alpha_{i+1} = (2-x) alpha_i.
pub fn alpha_seq_poly(x: f64, k: u32) -> Result<Vec<f64>, ParamsError> {
    let a1 = alpha_poly(x, k)?;
    let mut seq = Vec::with_capacity(k.saturating_sub(1) as usize);
    let mut a = a1;
    for _ in 1..k {
        seq.push(a);
        a *= 2.0 - x;
    }
    Ok(seq)
}

/// First exponent of the log*-regime schedule:
/// 1 / (1 + (1-x) sum_{j=0}^{k-2} (2-x)^j).
pub fn alpha_logstar(x: f64, k: u32) -> Result<f64, ParamsError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(ParamsError::BadX(x));
    }
    assert!(k >= 1);
    Ok(1.0 / (1.0 + (1.0 - x) * geometric_sum(2.0 - x, k - 1)))
}

/// Round half away from zero for non-negative inputs.
pub fn round_half_up(v: f64) -> u64 {
    (v + 0.5).floor() as u64
}

/// Iterations of log2 until the value drops to at most 1.
pub fn iterated_log(n: u64) -> u32 {
    let mut v = n as f64;
    let mut count = 0;
    while v > 1.0 {
        v = v.log2();
        count += 1;
    }
    count
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Poly,
    Logstar,
}

/// Turns a target size and the exponents alpha_1..alpha_{k-1} into integer
/// path lengths l_1..l_k. The last length absorbs all rounding error so the
/// product stays close to n.
pub fn lengths_from_exponents(
    n: u64,
    alphas: &[f64],
    regime: Regime,
) -> Result<Vec<u64>, ParamsError> {
    let sum: f64 = alphas.iter().sum();
    if regime == Regime::Poly && sum >= 1.0 {
        return Err(ParamsError::ExponentSum(sum));
    }
    let base = match regime {
        Regime::Poly => n as f64,
        Regime::Logstar => iterated_log(n) as f64,
    };
    let mut lengths: Vec<u64> = Vec::with_capacity(alphas.len() + 1);
    for (i, &a) in alphas.iter().enumerate() {
        let l = round_half_up(base.powf(a));
        if l < 1 {
            return Err(ParamsError::LengthTooSmall(i + 1));
        }
        lengths.push(l);
    }
    let prod: u64 = lengths.iter().product();
    let lk = round_half_up(n as f64 / prod as f64).max(1);
    lengths.push(lk);
    Ok(lengths)
}
