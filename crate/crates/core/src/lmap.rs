//! Leibniz mappings on the scalar field: maps φ with
//!
//! ```text
//! φ(a·b) = a·φ(b) + b·φ(a)
//! ```
//!
//! Derivations (which are additionally additive) are one family; the
//! prime-logarithmic maps are Leibniz but *not* additive, which is exactly
//! what makes the representation theorem's φ̃ blocks strictly more general
//! than derivations.
//!
//! Forced values hold for every member: φ(0) = φ(1) = 0, and φ(−1) = 0
//! (from 2·(−1)·φ(−1) = φ(1)), hence φ(u) = 0 for every root of unity in
//! the field; a derivation vanishes on all of ℚ(i).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::analysis::report::CheckReport;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::gaussian::Rational;
use crate::scalar::gaussint::GaussianInteger;
use crate::scalar::mvpoly::{MvPoly, MAX_VARS};
use crate::scalar::{ScalarElem, DEFAULT_NORM_BOUND};

/// A constructive Leibniz mapping φ̃ on the scalar field.
#[derive(Debug, Clone, PartialEq)]
pub enum LeibnizMap {
    /// φ ≡ 0.
    Zero,
    /// The prime-logarithmic map `φ(x) = x·Σ_p e_p(x)·w(p)` where `e_p(x)`
    /// is the exponent of the canonical Gaussian prime p in x. Leibniz but
    /// not additive (unless all weights vanish). Defined on ℚ(i) only.
    PrimeLog {
        weights: Vec<(GaussianInteger, ScalarElem)>,
    },
    /// The derivation with d(t_j) = u_j, d|ℚ(i) = 0, extended to fractions
    /// by the quotient rule. Additive.
    Derivation { u: Vec<ScalarElem> },
    /// Scalar linear combination; the defining equation is linear in φ, so
    /// this is again a Leibniz map.
    LinComb {
        terms: Vec<(ScalarElem, LeibnizMap)>,
    },
}

impl LeibnizMap {
    /// Builds a prime-log map, rejecting weight keys that are not canonical
    /// Gaussian primes (in particular units, whose weight is forced to 0).
    pub fn prime_log(weights: Vec<(GaussianInteger, ScalarElem)>) -> Result<Self> {
        for (key, _) in &weights {
            let canonical = !key.is_zero()
                && key.is_prime()
                && key.canonical_associate()?.0 == GaussianInteger::one();
            if !canonical {
                return Err(Error::InvalidPrimeLogKey {
                    key: key.to_string(),
                });
            }
        }
        Ok(Self::PrimeLog { weights })
    }

    /// Builds a derivation from its values on the transcendentals.
    pub fn derivation(u: Vec<ScalarElem>) -> Result<Self> {
        if u.len() > MAX_VARS {
            return Err(Error::TooManyTranscendentals {
                got: u.len(),
                max: MAX_VARS,
            });
        }
        Ok(Self::Derivation { u })
    }

    /// Evaluates φ(x).
    pub fn eval(&self, x: &ScalarElem) -> Result<ScalarElem> {
        match self {
            Self::Zero => Ok(ScalarElem::zero()),
            Self::PrimeLog { weights } => prime_log_eval(weights, x),
            Self::Derivation { u } => Ok(derivation_eval(u, x)),
            Self::LinComb { terms } => {
                let mut acc = ScalarElem::zero();
                for (c, map) in terms {
                    acc = &acc + &(c * &map.eval(x)?);
                }
                Ok(acc)
            }
        }
    }

    /// True when the map is additive by construction.
    pub fn is_derivation_form(&self) -> bool {
        match self {
            Self::Zero | Self::Derivation { .. } => true,
            Self::PrimeLog { weights } => weights.iter().all(|(_, w)| w.is_zero()),
            Self::LinComb { terms } => terms.iter().all(|(_, m)| m.is_derivation_form()),
        }
    }
}

/// Exponent of the canonical prime `p` in the factorization `factors`.
fn exponent_of(factors: &[(GaussianInteger, u32)], p: &GaussianInteger) -> i64 {
    factors
        .iter()
        .find(|(q, _)| q == p)
        .map_or(0, |(_, e)| *e as i64)
}

/// `φ(x) = x · Σ_p e_p(x)·w(p)`, with exponents read off the Gaussian
/// factorization of numerator and denominator (denominator negated).
fn prime_log_eval(weights: &[(GaussianInteger, ScalarElem)], x: &ScalarElem) -> Result<ScalarElem> {
    let g = x
        .as_gaussian_rational()
        .ok_or_else(|| Error::UnsupportedScalar(x.to_string()))?;
    if g.is_zero() {
        return Ok(ScalarElem::zero());
    }
    // x = num / den with num ∈ ℤ[i] and den a positive rational integer.
    let den: BigInt = g.re.denom().lcm(g.im.denom());
    let scale = Rational::from_integer(den.clone());
    let num = GaussianInteger {
        re: (&g.re * &scale).to_integer(),
        im: (&g.im * &scale).to_integer(),
    };
    let (_, num_factors) = num.factorize(DEFAULT_NORM_BOUND)?;
    let den_factors = if den.is_one() {
        Vec::new()
    } else {
        GaussianInteger {
            re: den,
            im: BigInt::from(0),
        }
        .factorize(DEFAULT_NORM_BOUND)?
        .1
    };
    let mut log_sum = ScalarElem::zero();
    for (p, w) in weights {
        let e = exponent_of(&num_factors, p) - exponent_of(&den_factors, p);
        if e != 0 {
            log_sum = &log_sum + &(&ScalarElem::from_int(e) * w);
        }
    }
    Ok(&ScalarElem::from_gaussian(g) * &log_sum)
}

/// `d = Σ_j u_j·∂/∂t_j` on polynomials, extended by the quotient rule.
fn derivation_eval(u: &[ScalarElem], x: &ScalarElem) -> ScalarElem {
    let d = |m: &MvPoly| -> ScalarElem {
        let mut acc = ScalarElem::zero();
        for (j, uj) in u.iter().enumerate() {
            if uj.is_zero() {
                continue;
            }
            acc = &acc + &(uj * &ScalarElem::from_mvpoly(m.partial(j)));
        }
        acc
    };
    let num = ScalarElem::from_mvpoly(x.num().clone());
    let den = ScalarElem::from_mvpoly(x.den().clone());
    let derived = &(&d(x.num()) * &den) - &(&num * &d(x.den()));
    derived.div(&den.pow(2)).expect("denominator nonzero")
}

/// Pairs of scalars fed to the map checks.
#[derive(Debug, Clone, Default)]
pub struct MapCheckSample {
    pub pairs: Vec<(ScalarElem, ScalarElem)>,
}

impl MapCheckSample {
    pub fn new(pairs: Vec<(ScalarElem, ScalarElem)>) -> Self {
        Self { pairs }
    }
}

fn as_constant_poly(x: &ScalarElem) -> Poly {
    Poly::constant(x.clone())
}

/// Exact check of φ(ab) = a·φ(b) + b·φ(a) over the sample.
pub fn check_leibniz(map: &LeibnizMap, sample: &MapCheckSample) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    for (a, b) in &sample.pairs {
        let lhs = map.eval(&(a * b))?;
        let rhs = &(a * &map.eval(b)?) + &(b * &map.eval(a)?);
        report.record(
            vec![a.to_string(), b.to_string()],
            as_constant_poly(&lhs),
            as_constant_poly(&rhs),
        );
    }
    Ok(report)
}

/// Exact check of φ(a+b) = φ(a) + φ(b) over the sample; failures witness
/// non-additivity (they are expected for prime-log maps).
pub fn check_additive(map: &LeibnizMap, sample: &MapCheckSample) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    for (a, b) in &sample.pairs {
        let lhs = map.eval(&(a + b))?;
        let rhs = &map.eval(a)? + &map.eval(b)?;
        report.record(
            vec![a.to_string(), b.to_string()],
            as_constant_poly(&lhs),
            as_constant_poly(&rhs),
        );
    }
    Ok(report)
}

/// Applies φ to every coefficient: `p^φ(z) = Σ φ(a_k)·z^k`. The degree may
/// drop when the leading coefficient maps to zero.
pub fn coeff_lift(map: &LeibnizMap, p: &Poly) -> Result<Poly> {
    let coeffs = p
        .coeffs()
        .iter()
        .map(|c| map.eval(c))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(coeffs))
}

/// Fixed probe pairs that witness non-additivity for every nonzero
/// prime-log map over the small primes.
pub fn additivity_probe() -> MapCheckSample {
    let int = ScalarElem::from_int;
    MapCheckSample::new(vec![
        (int(2), int(3)),
        (int(3), int(5)),
        (int(5), int(7)),
        (int(2), int(5)),
        (ScalarElem::i(), int(1)),
        (int(1).div(&int(2)).unwrap(), int(1).div(&int(3)).unwrap()),
    ])
}

/// Chain rule for derivations: φ(p(a)) = p^φ(a) + φ(a)·p′(a), exactly.
/// Errors with the witnessing pair when the map is not additive.
pub fn chain_rule_check(map: &LeibnizMap, p: &Poly, a: &ScalarElem) -> Result<CheckReport> {
    let probe = additivity_probe();
    let additive = check_additive(map, &probe)?;
    if let Some(cex) = additive.counterexamples.first() {
        return Err(Error::NotADerivation {
            a: cex.inputs[0].clone(),
            b: cex.inputs[1].clone(),
        });
    }
    let mut report = CheckReport::new();
    let lhs = map.eval(&p.eval(a))?;
    let rhs = &coeff_lift(map, p)?.eval(a) + &(&map.eval(a)? * &p.derivative().eval(a));
    report.record(
        vec![p.to_string(), a.to_string()],
        as_constant_poly(&lhs),
        as_constant_poly(&rhs),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> ScalarElem {
        ScalarElem::from_int(n)
    }

    fn t1() -> ScalarElem {
        ScalarElem::var(0).unwrap()
    }

    fn plog_half() -> LeibnizMap {
        // weight 1 on the canonical prime 1+i
        LeibnizMap::prime_log(vec![(GaussianInteger::new(1, 1), int(1))]).unwrap()
    }

    fn ddt1() -> LeibnizMap {
        LeibnizMap::derivation(vec![int(1)]).unwrap()
    }

    #[test]
    fn prime_log_of_two_is_four() {
        let map = plog_half();
        assert_eq!(map.eval(&int(2)).unwrap(), int(4));
        // Leibniz cross-check on 2·2: 2·φ(2) + 2·φ(2) = 16 = φ(4) directly
        assert_eq!(map.eval(&int(4)).unwrap(), int(16));
    }

    #[test]
    fn prime_log_denominators_negate() {
        let map = plog_half();
        // 1/2 has e_{1+i} = −2, so φ(1/2) = (1/2)·(−2) = −1
        let half = int(1).div(&int(2)).unwrap();
        assert_eq!(map.eval(&half).unwrap(), int(-1));
    }

    #[test]
    fn forced_values_vanish() {
        for map in [LeibnizMap::Zero, plog_half(), ddt1()] {
            assert!(map.eval(&ScalarElem::zero()).unwrap().is_zero());
            assert!(map.eval(&int(1)).unwrap().is_zero());
            assert!(map.eval(&int(-1)).unwrap().is_zero());
        }
        // units of Z[i] too
        assert!(plog_half().eval(&ScalarElem::i()).unwrap().is_zero());
    }

    #[test]
    fn prime_log_rejects_bad_keys() {
        // a unit
        assert!(matches!(
            LeibnizMap::prime_log(vec![(GaussianInteger::i(), int(1))]),
            Err(Error::InvalidPrimeLogKey { .. })
        ));
        // prime but not the canonical associate
        assert!(matches!(
            LeibnizMap::prime_log(vec![(GaussianInteger::new(-1, -1), int(1))]),
            Err(Error::InvalidPrimeLogKey { .. })
        ));
        // not prime
        assert!(matches!(
            LeibnizMap::prime_log(vec![(GaussianInteger::new(5, 0), int(1))]),
            Err(Error::InvalidPrimeLogKey { .. })
        ));
    }

    #[test]
    fn prime_log_needs_gaussian_rationals() {
        assert!(matches!(
            plog_half().eval(&t1()),
            Err(Error::UnsupportedScalar(_))
        ));
    }

    #[test]
    fn derivation_differentiates() {
        let map = ddt1();
        assert_eq!(map.eval(&t1().pow(2)).unwrap(), &int(2) * &t1());
        // quotient rule: d(1/t1) = −1/t1²
        let inv = t1().inv().unwrap();
        assert_eq!(map.eval(&inv).unwrap(), -t1().pow(2).inv().unwrap());
        // vanishes on Q(i)
        assert!(map.eval(&ScalarElem::i()).unwrap().is_zero());
    }

    #[test]
    fn leibniz_identity_holds_on_samples() {
        let sample = MapCheckSample::new(vec![
            (int(2), int(3)),
            (int(6), int(1).div(&int(2)).unwrap()),
            (ScalarElem::i(), int(5)),
            (int(-4), int(9)),
        ]);
        for map in [LeibnizMap::Zero, plog_half()] {
            let r = check_leibniz(&map, &sample).unwrap();
            assert!(r.passes(), "{map:?}: {:?}", r.counterexamples);
        }
        let t_sample = MapCheckSample::new(vec![
            (t1(), &t1() + &int(1)),
            (t1().inv().unwrap(), t1().pow(3)),
        ]);
        let r = check_leibniz(&ddt1(), &t_sample).unwrap();
        assert!(r.passes());
    }

    #[test]
    fn prime_log_additivity_witness() {
        let r = check_additive(&plog_half(), &MapCheckSample::new(vec![(int(2), int(3))])).unwrap();
        assert_eq!(r.counterexamples.len(), 1);
        let cex = &r.counterexamples[0];
        // φ(5) = 0 but φ(2) + φ(3) = 4
        assert_eq!(cex.lhs, Poly::zero());
        assert_eq!(cex.rhs, Poly::constant(int(4)));
    }

    #[test]
    fn derivation_is_additive() {
        let sample = MapCheckSample::new(vec![(t1(), t1().pow(2)), (t1().inv().unwrap(), int(3))]);
        assert!(check_additive(&ddt1(), &sample).unwrap().passes());
    }

    #[test]
    fn coeff_lift_examples() {
        // t1·z² + t1² lifts to z² + 2t1 under d/dt1
        let p = Poly::new(vec![t1().pow(2), ScalarElem::zero(), t1()]);
        let lifted = coeff_lift(&ddt1(), &p).unwrap();
        assert_eq!(
            lifted,
            Poly::new(vec![&int(2) * &t1(), ScalarElem::zero(), int(1)])
        );
        // rational coefficients all map to 0
        let q = Poly::new(vec![int(1), ScalarElem::zero(), int(1)]);
        assert!(coeff_lift(&ddt1(), &q).unwrap().is_zero());
        assert!(coeff_lift(&LeibnizMap::Zero, &p).unwrap().is_zero());
    }

    #[test]
    fn chain_rule_on_derivations() {
        // p = t1·z², a = t1: d(t1³) = 3t1² = lift t1² + 1·2t1²
        let p = Poly::monomial(t1(), 2);
        let r = chain_rule_check(&ddt1(), &p, &t1()).unwrap();
        assert!(r.passes());
        // p = z², a = t1
        let r = chain_rule_check(&ddt1(), &Poly::monomial(int(1), 2), &t1()).unwrap();
        assert!(r.passes());
        // zero derivation
        let zero_d = LeibnizMap::derivation(vec![int(0)]).unwrap();
        let r = chain_rule_check(&zero_d, &p, &int(7)).unwrap();
        assert!(r.passes());
    }

    #[test]
    fn chain_rule_rejects_prime_log() {
        let err = chain_rule_check(&plog_half(), &Poly::z(), &int(2));
        assert!(matches!(err, Err(Error::NotADerivation { .. })));
    }

    #[test]
    fn lincomb_is_leibniz() {
        let map = LeibnizMap::LinComb {
            terms: vec![(int(3), plog_half()), (&int(2) * &ScalarElem::i(), ddt1())],
        };
        // mixed map needs Q(i) inputs for the prime-log part
        let sample = MapCheckSample::new(vec![(int(2), int(6)), (int(10), int(-3))]);
        assert!(check_leibniz(&map, &sample).unwrap().passes());
        assert!(!map.is_derivation_form());
        assert!(LeibnizMap::LinComb {
            terms: vec![(int(5), ddt1()), (int(1), LeibnizMap::Zero)]
        }
        .is_derivation_form());
    }
}
