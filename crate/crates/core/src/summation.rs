//! Compensated accumulation and the truncation policy shared by all series.

use serde::Serialize;

/// Kahan–Babuška (Neumaier) running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct Compensated {
    sum: f64,
    c: f64,
}

impl Compensated {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.c
    }

    pub(crate) fn scale(&mut self, f: f64) {
        self.sum *= f;
        self.c *= f;
    }
}

/// Stopping rule for infinite series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Truncation {
    pub tol: f64,
    pub max_terms: usize,
    /// Keep every term in [`PartialSum::terms`].
    #[serde(skip)]
    pub trace: bool,
}

impl Default for Truncation {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_terms: 2000,
            trace: false,
        }
    }
}

impl Truncation {
    pub fn new(tol: f64, max_terms: usize) -> Self {
        Self {
            tol,
            max_terms,
            trace: false,
        }
    }

    pub fn with_trace(mut self) -> Self {
        self.trace = true;
        self
    }
}

/// Result of summing a series up to the truncation rule.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartialSum {
    pub value: f64,
    pub terms_used: usize,
    pub last_term_magnitude: f64,
    pub converged: bool,
    #[serde(skip)]
    pub terms: Vec<f64>,
}

/// Runs a term generator under a truncation rule.
///
/// Terms are requested in index order; the sum stops once three consecutive
/// terms fall below `tol·|partial|`, or when `finite` terms have been taken.
pub(crate) struct SeriesRunner {
    tr: Truncation,
    acc: Compensated,
    small: usize,
    count: usize,
    last: f64,
    keep_terms: bool,
    terms: Vec<f64>,
}

impl SeriesRunner {
    pub fn new(tr: Truncation) -> Self {
        Self {
            tr,
            acc: Compensated::new(),
            small: 0,
            count: 0,
            last: 0.0,
            keep_terms: tr.trace,
            terms: Vec::new(),
        }
    }

    /// Adds a term; returns true once the stopping rule is met.
    pub fn push(&mut self, t: f64) -> bool {
        self.acc.add(t);
        self.count += 1;
        self.last = t.abs();
        if self.keep_terms {
            self.terms.push(t);
        }
        let p = self.acc.value().abs();
        if t.abs() <= self.tr.tol * p {
            self.small += 1;
        } else {
            self.small = 0;
        }
        self.small >= 3
    }

    pub fn exhausted(&self) -> bool {
        self.count >= self.tr.max_terms
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn finish(self, converged: bool) -> PartialSum {
        PartialSum {
            value: self.acc.value(),
            terms_used: self.count,
            last_term_magnitude: self.last,
            converged,
            terms: self.terms,
        }
    }
}
