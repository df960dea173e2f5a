//! Exact Leibniz-rule checks, the linear-action table T(az+b), and the
//! recurrence identities that the table's rows must satisfy for any
//! compliant operator.

use rand_chacha::ChaCha8Rng;

use crate::analysis::generate::GenConfig;
use crate::analysis::report::CheckReport;
use crate::error::Result;
use crate::operator::{apply_real, OperatorSpec};
use crate::poly::{FactoredPoly, Poly, RealFactoredPoly};
use crate::scalar::ScalarElem;

/// Exact check of T(pq) = T(p)q + pT(q) for one dense pair.
pub fn leibniz_check(op: &OperatorSpec, p: &Poly, q: &Poly) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    let lhs = op.apply_expanded(&(p * q))?;
    let rhs = &(&op.apply_expanded(p)? * q) + &(p * &op.apply_expanded(q)?);
    report.record(vec![p.to_string(), q.to_string()], lhs, rhs);
    Ok(report)
}

/// The factored-pair variant: the product is formed on factored data
/// (leads multiply, root multisets concatenate), never by refactoring.
pub fn leibniz_check_factored(
    op: &OperatorSpec,
    p: &FactoredPoly,
    q: &FactoredPoly,
) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    let lhs = op.apply(&p.product(q))?;
    let rhs = &(&op.apply(p)? * &q.expand()) + &(&p.expand() * &op.apply(q)?);
    report.record(vec![p.to_string(), q.to_string()], lhs, rhs);
    Ok(report)
}

/// The real-split variant, for the real root-power operator.
pub fn leibniz_check_real(
    op: &OperatorSpec,
    p: &RealFactoredPoly,
    q: &RealFactoredPoly,
) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    let mut linear = p.linear_roots.clone();
    linear.extend(q.linear_roots.iter().cloned());
    let mut quads = p.quadratics.clone();
    quads.extend(q.quadratics.iter().cloned());
    let pq = RealFactoredPoly::new(&p.lead * &q.lead, linear, quads)?;
    let lhs = apply_real(op, &pq)?;
    let rhs = &(&apply_real(op, p)? * &q.expand()) + &(&p.expand() * &apply_real(op, q)?);
    report.record(
        vec![p.expand().to_string(), q.expand().to_string()],
        lhs,
        rhs,
    );
    Ok(report)
}

/// Batch Leibniz check over `n` seeded random factored pairs.
pub fn leibniz_fuzz(
    op: &OperatorSpec,
    config: &GenConfig,
    n: usize,
    seed: u64,
) -> Result<CheckReport> {
    let mut rng: ChaCha8Rng = GenConfig::rng(seed);
    let mut report = CheckReport::new();
    for _ in 0..n {
        let p = config.sample_factored(&mut rng);
        let q = config.sample_factored(&mut rng);
        report.merge(leibniz_check_factored(op, &p, &q)?);
    }
    Ok(report)
}

/// Rows of T(az+b): the coefficient sequences φ_k(a, b).
#[derive(Debug, Clone, Default)]
pub struct LinearActionTable {
    entries: Vec<((ScalarElem, ScalarElem), Poly)>,
}

impl LinearActionTable {
    pub fn row(&self, a: &ScalarElem, b: &ScalarElem) -> Option<&Poly> {
        self.entries
            .iter()
            .find(|((ra, rb), _)| ra == a && rb == b)
            .map(|(_, p)| p)
    }

    pub fn entries(&self) -> &[((ScalarElem, ScalarElem), Poly)] {
        &self.entries
    }

    /// Largest power with a nonzero coefficient in any row.
    pub fn max_power(&self) -> usize {
        self.entries
            .iter()
            .filter_map(|(_, p)| p.deg_opt())
            .max()
            .unwrap_or(0)
    }
}

/// Applies T to az+b without factorization: the root is −b/a, and a = 0
/// rows are the constant polynomial b.
fn apply_linear(op: &OperatorSpec, a: &ScalarElem, b: &ScalarElem) -> Result<Poly> {
    if a.is_zero() {
        if b.is_zero() {
            return Ok(Poly::zero()); // T(0) = 0
        }
        return op.apply(&FactoredPoly::constant(b.clone())?);
    }
    let root = -&b.div(a)?;
    op.apply(&FactoredPoly::new(a.clone(), vec![root])?)
}

/// Tabulates T(az+b) over the sample points, exactly.
pub fn linear_action(
    op: &OperatorSpec,
    samples: &[(ScalarElem, ScalarElem)],
) -> Result<LinearActionTable> {
    let mut table = LinearActionTable::default();
    for (a, b) in samples {
        if table.row(a, b).is_some() {
            continue;
        }
        let row = apply_linear(op, a, b)?;
        table.entries.push(((a.clone(), b.clone()), row));
    }
    Ok(table)
}

/// A grid of (a, b) rows closed (one pass) under the points the recurrence
/// identities consume: (a, 0) and (1, b/a) rows, plus constant rows (0, x)
/// for the bases, the quotients, and pairwise products of the b-pool.
pub fn product_closed_grid(
    a_pool: &[ScalarElem],
    b_pool: &[ScalarElem],
) -> Vec<(ScalarElem, ScalarElem)> {
    let mut rows: Vec<(ScalarElem, ScalarElem)> = Vec::new();
    let mut push = |a: ScalarElem, b: ScalarElem| {
        if !rows.iter().any(|(ra, rb)| *ra == a && *rb == b) {
            rows.push((a, b));
        }
    };
    let one = ScalarElem::one();
    let zero = ScalarElem::zero();
    push(one.clone(), zero.clone());
    for a in a_pool {
        for b in b_pool {
            push(a.clone(), b.clone());
            push(one.clone(), b.div(a).expect("a pool is nonzero"));
            push(zero.clone(), b.div(a).expect("a pool is nonzero"));
        }
        push(a.clone(), zero.clone());
        push(zero.clone(), a.clone());
    }
    for b in b_pool {
        push(zero.clone(), b.clone());
        for c in b_pool {
            push(zero.clone(), b * c);
        }
    }
    rows
}

/// Checks the four families of φ_k identities that the Leibniz rule forces
/// on the rows of the table. Instances whose auxiliary rows are absent are
/// skipped, not failed.
///
/// 1. constants multiply: φ_k(0, bc) = φ_k(0, b)·c + φ_k(0, c)·b;
/// 2. zero intercept, k = 0: φ₀(a, 0) = φ₀(1, 0)·a;
/// 3. zero intercept, k ≥ 1: φ_k(a, 0) = φ_k(1, 0)·a + φ_{k−1}(0, a);
/// 4. general row, a ≠ 0: T(az+b) = a·T(z + b/a) + (z + b/a)·T(a).
pub fn recurrence_check(table: &LinearActionTable) -> CheckReport {
    let mut report = CheckReport::new();
    let zero = ScalarElem::zero();
    let one = ScalarElem::one();
    let z = Poly::z();

    // family 1: over pairs of constant rows
    let consts: Vec<ScalarElem> = table
        .entries
        .iter()
        .filter(|((a, _), _)| a.is_zero())
        .map(|((_, b), _)| b.clone())
        .collect();
    for (i, b) in consts.iter().enumerate() {
        for c in consts.iter().skip(i) {
            let Some(product_row) = table.row(&zero, &(b * c)) else {
                report.record_skip();
                continue;
            };
            let rb = table.row(&zero, b).expect("row exists");
            let rc = table.row(&zero, c).expect("row exists");
            let rhs = &rb.scale(c) + &rc.scale(b);
            report.record(
                vec!["constants-product".into(), b.to_string(), c.to_string()],
                product_row.clone(),
                rhs,
            );
        }
    }

    for ((a, b), row) in &table.entries {
        if a.is_zero() {
            continue;
        }
        if b.is_zero() {
            // families 2 and 3 need T(z) and T(a)
            let (Some(unit_row), Some(const_row)) = (table.row(&one, &zero), table.row(&zero, a))
            else {
                report.record_skip();
                report.record_skip();
                continue;
            };
            let scaled = unit_row.scale(a);
            // k = 0
            report.record(
                vec!["zero-intercept-k0".into(), a.to_string()],
                Poly::constant(row.coeff(0)),
                Poly::constant(scaled.coeff(0)),
            );
            // k ≥ 1, all at once: row − φ₀ = (scaled − φ₀ part) + z·T(a)
            let high = |p: &Poly| -> Poly { p - &Poly::constant(p.coeff(0)) };
            let rhs = &high(&scaled) + &(&z * const_row);
            report.record(
                vec!["zero-intercept-higher".into(), a.to_string()],
                high(row),
                rhs,
            );
        } else {
            // family 4
            let quotient = b.div(a).expect("a nonzero");
            let (Some(unit_row), Some(const_row)) =
                (table.row(&one, &quotient), table.row(&zero, a))
            else {
                report.record_skip();
                continue;
            };
            let shift = Poly::linear(ScalarElem::one(), quotient.clone());
            let rhs = &unit_row.scale(a) + &(&shift * const_row);
            report.record(
                vec!["general-scaling".into(), a.to_string(), b.to_string()],
                row.clone(),
                rhs,
            );
        }
    }
    report
}
