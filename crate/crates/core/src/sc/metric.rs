//! LLR combining rules, path-metric increments and scores.

use crate::code::ReliabilityProfile;
use std::fmt;
use std::str::FromStr;

/// Arithmetic used for LLR combining and path-metric increments.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum MetricMode {
    /// Exact box-plus and `ln(1 + e^{-x})` penalties.
    #[default]
    Exact,
    /// Min-sum combining and `max(0, -x)` penalties.
    Hardened,
}

impl FromStr for MetricMode {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Self::Exact),
            "hardened" => Ok(Self::Hardened),
            _ => Err(crate::Error::Config(format!("unknown metric mode {s:?}"))),
        }
    }
}

impl fmt::Display for MetricMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Exact => "exact",
            Self::Hardened => "hardened",
        })
    }
}

/// `ln(1 + e^x)` without overflow.
#[inline]
pub fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// Check-node combination `2 atanh(tanh(a/2) tanh(b/2))` or its min-sum form.
#[inline]
pub fn f_combine(a: f64, b: f64, mode: MetricMode) -> f64 {
    let m = a.abs().min(b.abs());
    let hard = if (a < 0.0) != (b < 0.0) { -m } else { m };
    match mode {
        MetricMode::Hardened => hard,
        MetricMode::Exact => {
            hard + (-(a + b).abs()).exp().ln_1p() - (-(a - b).abs()).exp().ln_1p()
        }
    }
}

/// Variable-node combination `b + (1 - 2u) a`.
#[inline]
pub fn g_combine(a: f64, b: f64, u: u8) -> f64 {
    if u == 0 {
        b + a
    } else {
        b - a
    }
}

/// Penalty for deciding `u` against LLR `ell`.
#[inline]
pub fn pm_increment(ell: f64, u: u8, mode: MetricMode) -> f64 {
    let x = if u == 0 { -ell } else { ell };
    match mode {
        MetricMode::Exact => softplus(x),
        MetricMode::Hardened => x.max(0.0),
    }
}

/// `M + penalty(ell, u)`.
#[inline]
pub fn pm_update(m: f64, ell: f64, u: u8, mode: MetricMode) -> f64 {
    m + pm_increment(ell, u, mode)
}

/// Hard decision: `0` iff `ell >= 0`.
#[inline]
pub fn hard_decision(ell: f64) -> u8 {
    u8::from(ell < 0.0)
}

/// `S = M + Σ_{j <= phase} ln(1 - p_j)`.
pub fn score_of(m: f64, phase: usize, profile: &ReliabilityProfile) -> f64 {
    m + profile.log_complements()[..phase].iter().sum::<f64>()
}
