//! Degree behaviour classification and corollary-form constants.
//!
//! A multiplicative-to-additive operator never raises degree when its ψ
//! table is constant in k (the cofactor sum has degree N−1), and raises it
//! by at most kmax otherwise.  `classify_degree` sorts a given operator
//! into strictly-degree-decreasing, non-increasing, or mixed, with
//! witnesses.  `monomial_constants` fits the two-parameter normal form
//! T(z^N) = c·N·z^{N−1} + d·z^N and reports the residual when no such fit
//! exists.

use crate::analysis::generate::GenConfig;
use crate::error::{Error, Result};
use crate::operator::OperatorSpec;
use crate::poly::{FactoredPoly, Poly};
use crate::scalar::ScalarElem;

/// How an operator moves degrees on a sampled family.
#[derive(Debug, Clone)]
pub enum DegreeBehavior {
    /// deg T(p) < deg p on every sample; zero images count as decreases at
    /// any degree, constants included.
    Decreasing,
    /// deg T(p) ≤ deg p everywhere, with equality somewhere.
    NonIncreasing { witness: (String, Poly) },
    /// deg T(p) > deg p somewhere.
    Mixed { witness: (String, Poly) },
}

impl DegreeBehavior {
    pub fn label(&self) -> &'static str {
        match self {
            DegreeBehavior::Decreasing => "decreasing",
            DegreeBehavior::NonIncreasing { .. } => "non_increasing",
            DegreeBehavior::Mixed { .. } => "mixed",
        }
    }

    pub fn witness(&self) -> Option<&(String, Poly)> {
        match self {
            DegreeBehavior::Decreasing => None,
            DegreeBehavior::NonIncreasing { witness } | DegreeBehavior::Mixed { witness } => {
                Some(witness)
            }
        }
    }
}

/// Applies the operator to `count` seeded factored samples and classifies
/// the observed degree movement.
pub fn classify_degree(op: &OperatorSpec, seed: u64, count: usize) -> Result<DegreeBehavior> {
    let cfg = GenConfig::default();
    let mut rng = GenConfig::rng(seed);
    let mut equality: Option<(String, Poly)> = None;
    for _ in 0..count {
        let p = cfg.sample_factored(&mut rng);
        let image = op.apply(&p)?;
        let din = p.degree();
        let dout = match image.deg_opt() {
            None => continue, // zero image: strict decrease at every degree
            Some(d) => d,
        };
        if dout > din {
            return Ok(DegreeBehavior::Mixed {
                witness: (p.to_string(), image),
            });
        }
        if dout == din && equality.is_none() {
            equality = Some((p.to_string(), image));
        }
    }
    Ok(match equality {
        Some(witness) => DegreeBehavior::NonIncreasing { witness },
        None => DegreeBehavior::Decreasing,
    })
}

/// The per-power constants of the normal form T(z^N) = c·N·z^{N−1} + d·z^N.
#[derive(Debug, Clone)]
pub struct MonomialConstants {
    /// (N, c, d) for N = 1..=max_n.
    pub rows: Vec<(usize, ScalarElem, ScalarElem)>,
}

impl MonomialConstants {
    /// True when every row shares one (c, d) pair.
    pub fn uniform(&self) -> Option<(ScalarElem, ScalarElem)> {
        let (_, c0, d0) = self.rows.first()?;
        self.rows
            .iter()
            .all(|(_, c, d)| c == c0 && d == d0)
            .then(|| (c0.clone(), d0.clone()))
    }
}

/// Solves T(z^N) = c·N·z^{N−1} + d·z^N for each N.  Any residual outside
/// the two fitted coefficients is an error carrying the offending power.
pub fn monomial_constants(op: &OperatorSpec, max_n: usize) -> Result<MonomialConstants> {
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let zn = FactoredPoly::new(ScalarElem::one(), vec![ScalarElem::from_int(0); n])?;
        let image = op.apply(&zn)?;
        let d = image.coeff(n);
        let c = image.coeff(n - 1).div(&ScalarElem::from_int(n as i64))?;
        let fitted = &Poly::monomial(d.clone(), n)
            + &Poly::monomial(&c * &ScalarElem::from_int(n as i64), n - 1);
        let residual = &image - &fitted;
        if let Some(power) = residual.deg_opt() {
            return Err(Error::NotOfCorollaryForm { n, power });
        }
        rows.push((n, c, d));
    }
    Ok(MonomialConstants { rows })
}
