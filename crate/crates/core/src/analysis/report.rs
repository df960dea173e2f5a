//! Check reports: exact pass/fail tallies with counterexample payloads.
//!
//! A failed identity is data, not an error. Each counterexample carries the
//! textual inputs that produced it, both sides of the identity, and the
//! first power of z at which they differ (well-defined thanks to exact
//! arithmetic).

use crate::poly::Poly;

/// One failed identity instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// Textual echoes of the inputs that were checked.
    pub inputs: Vec<String>,
    pub lhs: Poly,
    pub rhs: Poly,
    /// First power of z whose coefficients differ.
    pub first_diff_power: usize,
}

impl Counterexample {
    /// Builds a counterexample from two polynomials known to differ.
    pub fn new(inputs: Vec<String>, lhs: Poly, rhs: Poly) -> Self {
        let first_diff_power = first_diff_power(&lhs, &rhs).expect("sides differ");
        Self {
            inputs,
            lhs,
            rhs,
            first_diff_power,
        }
    }
}

/// Smallest k whose z^k coefficients differ, or `None` when equal.
pub fn first_diff_power(lhs: &Poly, rhs: &Poly) -> Option<usize> {
    let n = lhs.coeffs().len().max(rhs.coeffs().len());
    (0..n).find(|&k| lhs.coeff(k) != rhs.coeff(k))
}

/// Tally of an exact check batch. `passed + counterexamples.len() = total`;
/// instances whose preconditions could not be met are counted in `skipped`
/// and excluded from `total`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub total: usize,
    pub passed: usize,
    pub skipped: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Compares both sides, recording a pass or a counterexample.
    pub fn record(&mut self, inputs: Vec<String>, lhs: Poly, rhs: Poly) {
        self.total += 1;
        if lhs == rhs {
            self.passed += 1;
        } else {
            self.counterexamples
                .push(Counterexample::new(inputs, lhs, rhs));
        }
    }

    pub fn record_skip(&mut self) {
        self.skipped += 1;
    }

    pub fn passes(&self) -> bool {
        self.counterexamples.is_empty()
    }

    /// Folds another report into this one.
    pub fn merge(&mut self, other: CheckReport) {
        self.total += other.total;
        self.passed += other.passed;
        self.skipped += other.skipped;
        self.counterexamples.extend(other.counterexamples);
    }
}
