//! Serializable documents printed by the subcommands.

use std::io::{self, Write};

use serde::Serialize;

use qlambert::registry::{CheckConfig, IdentityInfo};
use qlambert::report::{exponent_string, rat_string, Window};
use qlambert::{CheckReport, PrefSeries};

#[derive(Debug, Serialize)]
pub struct ListDocument {
    pub version: &'static str,
    pub identities: Vec<IdentityInfo>,
}

#[derive(Debug, Serialize)]
pub struct Params {
    pub terms: i64,
    pub precision: u32,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
}

/// Result of a `verify` run. Summary counts always match the report list.
#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub version: &'static str,
    pub params: Params,
    pub reports: Vec<CheckReport>,
    pub summary: Summary,
}

impl ReportDocument {
    pub fn new(config: &CheckConfig, reports: Vec<CheckReport>) -> Self {
        let pass = reports.iter().filter(|r| r.passed()).count();
        ReportDocument {
            version: env!("CARGO_PKG_VERSION"),
            params: Params { terms: config.terms, precision: config.precision },
            summary: Summary { pass, fail: reports.len() - pass },
            reports,
        }
    }

    pub fn write_text(&self, out: &mut impl Write) -> io::Result<()> {
        for r in &self.reports {
            let window = match &r.window {
                Window::Exact { lo, hi } => format!("q^{lo}..q^{hi}"),
                Window::Numeric { precision, samples } => format!("{samples} samples at {precision} digits"),
            };
            let status = r.status.to_string().to_uppercase();
            write!(out, "{status:<16} {:<24} {:<8} {window}", r.id, r.kind)?;
            if let Some(res) = &r.max_residual {
                write!(out, ", max residual {res}")?;
            }
            writeln!(out, " ({} ms)", r.elapsed_ms)?;
            if let Some(f) = &r.first_failure {
                writeln!(out, "    first failure at {} [{}]: lhs {} rhs {}", f.at, f.equation, f.lhs, f.rhs)?;
            }
        }
        writeln!(out, "{} passed, {} failed", self.summary.pass, self.summary.fail)
    }
}

#[derive(Debug, Serialize)]
pub struct Term {
    pub exponent: String,
    pub coefficient: String,
}

/// Nonzero coefficients of a series up to `q^terms`.
#[derive(Debug, Serialize)]
pub struct SeriesDocument {
    pub expr: String,
    pub terms: Vec<Term>,
    /// Highest exponent whose coefficient is exact.
    pub known_through: String,
}

impl SeriesDocument {
    pub fn new(expr: &str, series: &PrefSeries, terms: i64) -> Self {
        let hi = series.end().min(4 * terms);
        let shown = series.truncate(hi);
        SeriesDocument {
            expr: expr.to_string(),
            terms: shown
                .terms()
                .map(|(k, c)| Term { exponent: exponent_string(k), coefficient: rat_string(c) })
                .collect(),
            known_through: exponent_string(hi),
        }
    }
}
