//! Outcome of one identity check, shared by the exact and numeric engines.

use serde::{Deserialize, Serialize};

use crate::series::{quarter_to_rat, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Exact,
    Numeric,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Kind::Exact => "exact",
            Kind::Numeric => "numeric",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    WindowTooSmall,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::WindowTooSmall => "window-too-small",
        })
    }
}

/// What a check covered: an exponent range for exact checks, a precision and
/// sample count for numeric ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Window {
    Exact {
        /// Lowest compared exponent, as a reduced rational string.
        lo: String,
        /// Highest exponent known exactly on both sides.
        hi: String,
    },
    Numeric {
        precision: u32,
        samples: usize,
    },
}

impl Window {
    /// Window over quarter exponents `lo..=hi`.
    pub fn quarters(lo: i64, hi: i64) -> Self {
        Window::Exact { lo: exponent_string(lo), hi: exponent_string(hi) }
    }
}

/// The first point where the two sides disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    /// Exponent (exact) or sample description (numeric).
    pub at: String,
    pub lhs: String,
    pub rhs: String,
    /// Which equation of a multi-equation identity failed.
    pub equation: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub kind: Kind,
    pub window: Window,
    pub status: Status,
    pub first_failure: Option<Failure>,
    /// Largest residual over all samples, in scientific notation (numeric checks only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_residual: Option<String>,
    pub elapsed_ms: u64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Reduced rational string of a quarter exponent: `"3"`, `"1/2"`, `"-5/4"`.
pub fn exponent_string(k: i64) -> String {
    rat_string(&quarter_to_rat(k))
}

/// `"p/q"` in lowest terms, or `"p"` for integers.
pub fn rat_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `10^x` rendered as `"d.dde-N"`; exact zero (`x = -inf`) becomes `"0"`.
pub fn scientific_from_log10(x: f64) -> String {
    if x == f64::NEG_INFINITY {
        return "0".to_string();
    }
    let exp = x.floor();
    let mant = 10f64.powf(x - exp);
    format!("{mant:.2}e{}", exp as i64)
}
