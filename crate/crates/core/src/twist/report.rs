use std::fmt::Display;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::scalar::{format_rational, Rational};

/// Outcome of one identity check at one parameter value.
///
/// For symbolic identities `residual` renders the expected-zero difference
/// element and `pass` holds exactly when it is `"0"`. For floating-point checks
/// it is the maximum deviation, compared against the tolerance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub u: String,
    pub order: usize,
    pub pass: bool,
    pub residual: String,
    pub ms: f64,
}

impl VerificationReport {
    /// Report for an exact identity given its named residual parts.
    pub fn exact<R: Display>(
        identity: &str,
        u: &Rational,
        order: usize,
        residuals: &[(&str, R, bool)],
        started: Instant,
    ) -> Self {
        let pass = residuals.iter().all(|(_, _, zero)| *zero);
        let residual = if pass {
            "0".to_string()
        } else {
            residuals
                .iter()
                .filter(|(_, _, zero)| !zero)
                .map(|(name, r, _)| format!("{name}: {r}"))
                .collect::<Vec<_>>()
                .join("; ")
        };
        VerificationReport {
            identity: identity.to_string(),
            u: format_rational(u),
            order,
            pass,
            residual,
            ms: elapsed_ms(started),
        }
    }

    /// Report for a floating-point check with maximum deviation `max_dev`.
    pub fn numeric(identity: &str, u: &Rational, order: usize, max_dev: f64, tol: f64, started: Instant) -> Self {
        VerificationReport {
            identity: identity.to_string(),
            u: format_rational(u),
            order,
            pass: max_dev.is_finite() && max_dev <= tol,
            residual: format!("{max_dev:e}"),
            ms: elapsed_ms(started),
        }
    }

    pub fn failed(identity: &str, u: &Rational, order: usize, reason: String, started: Instant) -> Self {
        VerificationReport {
            identity: identity.to_string(),
            u: format_rational(u),
            order,
            pass: false,
            residual: reason,
            ms: elapsed_ms(started),
        }
    }
}

pub(crate) fn elapsed_ms(started: Instant) -> f64 {
    started.elapsed().as_secs_f64() * 1e3
}

/// Named residual parts, rendered eagerly; the report passes when every part is zero.
#[derive(Default)]
pub(crate) struct Residuals {
    items: Vec<(String, String, bool)>,
}

impl Residuals {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn push<T: Display>(&mut self, name: &str, diff: &T, zero: bool) {
        self.items.push((name.to_string(), diff.to_string(), zero));
    }

    pub(crate) fn finish(self, identity: &str, u: &Rational, order: usize, started: Instant) -> VerificationReport {
        let parts: Vec<(&str, &String, bool)> = self.items.iter().map(|(n, r, z)| (n.as_str(), r, *z)).collect();
        VerificationReport::exact(identity, u, order, &parts, started)
    }
}
