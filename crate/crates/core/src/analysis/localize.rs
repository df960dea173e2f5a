//! Localization probing: is T(p)(z₀) a function of p(z₀) alone?
//!
//! For a pointwise operator there is some h with T(p)(z₀) = h(p(z₀), z₀)
//! for all p. The probe searches for witnesses against this: triples
//! (p, q, z₀) with p(z₀) = q(z₀) but T(p)(z₀) ≠ T(q)(z₀). Candidates are
//! constructed so the hypothesis p(z₀) = q(z₀) holds exactly — fixed seed
//! pairs first, then a generated family q = p·(z − z₀ + 1) whose extra
//! factor is 1 at z₀.

use crate::analysis::generate::GenConfig;
use crate::error::Result;
use crate::operator::OperatorSpec;
use crate::poly::FactoredPoly;
use crate::scalar::ScalarElem;

/// A witness that T is not pointwise: equal inputs at z₀, different images.
#[derive(Debug, Clone)]
pub struct ProbeCounterexample {
    pub p: FactoredPoly,
    pub q: FactoredPoly,
    pub z0: ScalarElem,
    /// The shared value p(z₀) = q(z₀).
    pub shared_value: ScalarElem,
    pub tp_value: ScalarElem,
    pub tq_value: ScalarElem,
}

/// Probe outcome: how many hypothesis-satisfying triples were tested, and
/// the first witness found (if any).
#[derive(Debug, Clone)]
pub struct ProbeResult {
    pub tested: usize,
    pub counterexample: Option<ProbeCounterexample>,
}

/// The fixed openers: (z, 2z, 0) and (z+1, z²+1, 1).
fn seed_candidates() -> Vec<(FactoredPoly, FactoredPoly, ScalarElem)> {
    let int = ScalarElem::from_int;
    vec![
        (
            FactoredPoly::new(int(1), vec![int(0)]).expect("nonzero lead"),
            FactoredPoly::new(int(2), vec![int(0)]).expect("nonzero lead"),
            int(0),
        ),
        (
            FactoredPoly::new(int(1), vec![int(-1)]).expect("nonzero lead"),
            FactoredPoly::new(int(1), vec![ScalarElem::i(), -ScalarElem::i()])
                .expect("nonzero lead"),
            int(1),
        ),
    ]
}

/// Tests up to `budget` candidate triples against the pointwise hypothesis
/// and returns the first counterexample, if one exists in the family.
pub fn localization_probe(op: &OperatorSpec, seed: u64, budget: usize) -> Result<ProbeResult> {
    let mut tested = 0usize;
    let check = |p: &FactoredPoly,
                 q: &FactoredPoly,
                 z0: &ScalarElem|
     -> Result<Option<ProbeCounterexample>> {
        let shared_value = p.expand().eval(z0);
        debug_assert_eq!(shared_value, q.expand().eval(z0));
        let tp_value = op.apply(p)?.eval(z0);
        let tq_value = op.apply(q)?.eval(z0);
        if tp_value == tq_value {
            return Ok(None);
        }
        Ok(Some(ProbeCounterexample {
            p: p.clone(),
            q: q.clone(),
            z0: z0.clone(),
            shared_value,
            tp_value,
            tq_value,
        }))
    };

    for (p, q, z0) in seed_candidates() {
        if tested >= budget {
            return Ok(ProbeResult {
                tested,
                counterexample: None,
            });
        }
        tested += 1;
        if let Some(cex) = check(&p, &q, &z0)? {
            return Ok(ProbeResult {
                tested,
                counterexample: Some(cex),
            });
        }
    }

    // generated family: q = p·(z − (z₀ − 1)), so q(z₀) = p(z₀) exactly
    let cfg = GenConfig::default();
    let mut rng = GenConfig::rng(seed);
    let z0_pool: Vec<ScalarElem> = [0, 1, -1, 2]
        .into_iter()
        .map(ScalarElem::from_int)
        .chain([ScalarElem::i(), -ScalarElem::i()])
        .collect();
    while tested < budget {
        let p = cfg.sample_factored(&mut rng);
        for z0 in &z0_pool {
            if tested >= budget {
                break;
            }
            let mut roots = p.roots.clone();
            roots.push(z0 - &ScalarElem::one());
            let q = FactoredPoly::new(p.lead.clone(), roots).expect("nonzero lead");
            tested += 1;
            if let Some(cex) = check(&p, &q, z0)? {
                return Ok(ProbeResult {
                    tested,
                    counterexample: Some(cex),
                });
            }
        }
    }
    Ok(ProbeResult {
        tested,
        counterexample: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> ScalarElem {
        ScalarElem::from_int(n)
    }

    #[test]
    fn derivative_fails_on_the_first_seed() {
        let r = localization_probe(&OperatorSpec::derivative(), 1, 100).unwrap();
        assert_eq!(r.tested, 1);
        let cex = r.counterexample.expect("witness");
        // T(z)(0) = 1 vs T(2z)(0) = 2, sharing p(0) = q(0) = 0
        assert_eq!(cex.z0, int(0));
        assert_eq!(cex.shared_value, int(0));
        assert_eq!(cex.tp_value, int(1));
        assert_eq!(cex.tq_value, int(2));
    }

    #[test]
    fn degree_scale_fails_on_the_second_seed() {
        let r = localization_probe(&OperatorSpec::DegreeScale, 1, 100).unwrap();
        assert_eq!(r.tested, 2);
        let cex = r.counterexample.expect("witness");
        // deg·value: 1·(z+1)(1) = 2 vs 2·(z²+1)(1) = 4
        assert_eq!(cex.z0, int(1));
        assert_eq!(cex.shared_value, int(2));
        assert_eq!(cex.tp_value, int(2));
        assert_eq!(cex.tq_value, int(4));
    }

    #[test]
    fn order_zero_fails_within_the_generated_family() {
        let op = OperatorSpec::OrderZero { x0: int(0) };
        let r = localization_probe(&op, 1, 500).unwrap();
        let cex = r.counterexample.expect("witness");
        // the hypothesis held but the images differed
        assert_eq!(cex.p.expand().eval(&cex.z0), cex.q.expand().eval(&cex.z0));
        assert_ne!(cex.tp_value, cex.tq_value);
    }

    #[test]
    fn the_zero_operator_is_pointwise() {
        let op = OperatorSpec::LinComb { terms: vec![] };
        let r = localization_probe(&op, 1, 40).unwrap();
        assert_eq!(r.tested, 40);
        assert!(r.counterexample.is_none());
    }

    #[test]
    fn budget_is_respected() {
        let r = localization_probe(&OperatorSpec::DegreeScale, 1, 1).unwrap();
        // only the first seed fits in the budget, and it passes for deg
        assert_eq!(r.tested, 1);
        assert!(r.counterexample.is_none());
    }
}
