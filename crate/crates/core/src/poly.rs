//! Univariate polynomials over the scalar field, in the indeterminate z.
//!
//! Two representations coexist: dense coefficient vectors ([`Poly`]) and
//! root-indexed factored form ([`FactoredPoly`], `p = a·∏(z−z_j)`), which
//! is the native shape for root-dependent operators. [`RealFactoredPoly`]
//! adds the real split `a·∏(z−r_j)·∏(z²+α_j z+β_j)` with irreducible
//! quadratics.
//!
//! All arithmetic is exact. The zero polynomial is the empty coefficient
//! sequence; its degree and order of zero are errors, not sentinels.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::scalar::gaussian::{GaussianRational, Rational};
use crate::scalar::gaussint::GaussianInteger;
use crate::scalar::ScalarElem;

/// Order of a zero, `n_{x0}(p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct NatOrder(pub usize);

/// Dense polynomial; `coeffs[k]` multiplies `z^k`, the last entry is
/// nonzero, and the empty vector encodes zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<ScalarElem>,
}

impl Poly {
    /// Builds a polynomial, trimming trailing zeros to restore the
    /// leading-coefficient invariant.
    pub fn new(mut coeffs: Vec<ScalarElem>) -> Self {
        while coeffs.last().is_some_and(ScalarElem::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(ScalarElem::one())
    }

    pub fn constant(c: ScalarElem) -> Self {
        Self::new(vec![c])
    }

    /// The monomial z.
    pub fn z() -> Self {
        Self::monomial(ScalarElem::one(), 1)
    }

    /// `c·z^k`.
    pub fn monomial(c: ScalarElem, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![ScalarElem::zero(); k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    /// `a·z + b`.
    pub fn linear(a: ScalarElem, b: ScalarElem) -> Self {
        Self::new(vec![b, a])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[ScalarElem] {
        &self.coeffs
    }

    /// Coefficient of `z^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> ScalarElem {
        self.coeffs.get(k).cloned().unwrap_or_else(ScalarElem::zero)
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Result<usize> {
        self.deg_opt().ok_or(Error::ZeroPolynomial)
    }

    pub fn deg_opt(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&ScalarElem> {
        self.coeffs.last()
    }

    /// The value as a scalar, when the degree is at most 0.
    pub fn as_constant(&self) -> Option<ScalarElem> {
        match self.coeffs.len() {
            0 => Some(ScalarElem::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &ScalarElem) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Formal derivative; coefficients are held fixed (t's are constants).
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &ScalarElem::from_int(k as i64))
            .collect();
        Self::new(coeffs)
    }

    /// Horner evaluation at `z0`.
    pub fn eval(&self, z0: &ScalarElem) -> ScalarElem {
        let mut acc = ScalarElem::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z0) + c;
        }
        acc
    }

    /// Quotient and remainder with `deg r < deg d`; errors only on zero `d`.
    pub fn divmod(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.deg_opt().ok_or(Error::DivisionByZeroPoly)?;
        let dlead = d.leading().expect("nonzero divisor");
        let mut r = self.clone();
        let mut q = vec![ScalarElem::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = r.deg_opt() {
            if rd < dd {
                break;
            }
            let factor = r.leading().expect("nonzero").div(dlead)?;
            let shift = rd - dd;
            q[shift] = factor.clone();
            // r -= factor * z^shift * d, cancelling the leading term exactly
            let mut coeffs = r.coeffs;
            for (k, dc) in d.coeffs.iter().enumerate() {
                let sub = &factor * dc;
                coeffs[shift + k] = &coeffs[shift + k] - &sub;
            }
            r = Poly::new(coeffs);
        }
        Ok((Poly::new(q), r))
    }

    /// Exact quotient; errors when the remainder is nonzero.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible)
        }
    }

    /// Largest k with `(z−x0)^k` dividing `self`; the cofactor does not
    /// vanish at `x0`. Errors on the zero polynomial.
    pub fn order_of_zero(&self, x0: &ScalarElem) -> Result<NatOrder> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let factor = Poly::linear(ScalarElem::one(), -x0);
        let mut k = 0;
        let mut p = self.clone();
        while p.eval(x0).is_zero() {
            p = p.exact_div(&factor).expect("root divides");
            k += 1;
        }
        Ok(NatOrder(k))
    }

    /// Full factorization over ℚ(i) by candidate roots from Gaussian-integer
    /// divisors of the (scaled) trailing and leading coefficients, each
    /// confirmed by exact division. See [`Poly::try_factor_with_bound`].
    pub fn try_factor(&self) -> Result<FactoredPoly> {
        self.try_factor_with_bound(crate::scalar::DEFAULT_NORM_BOUND)
    }

    pub fn try_factor_with_bound(&self, bound: u64) -> Result<FactoredPoly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let coeffs: Vec<GaussianRational> = self
            .coeffs
            .iter()
            .map(|c| {
                c.as_gaussian_rational()
                    .ok_or_else(|| Error::UnsupportedCoefficients(c.to_string()))
            })
            .collect::<Result<_>>()?;

        let lead = self.leading().expect("nonzero").clone();
        let mut roots = Vec::new();

        // Roots at 0 come off first; the rest has a nonzero trailing coeff.
        let low = coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero polynomial");
        roots.extend(std::iter::repeat_n(ScalarElem::zero(), low));
        let mut p = Poly::new(
            coeffs[low..]
                .iter()
                .map(|c| ScalarElem::from_gaussian(c.clone()))
                .collect(),
        );

        if p.deg_opt() == Some(0) {
            return FactoredPoly::new(lead, roots);
        }

        // Scale to Gaussian-integer coefficients: common denominator of all
        // rational components.
        let mut den = BigInt::one();
        for c in &coeffs[low..] {
            den = den.lcm(c.re.denom()).lcm(c.im.denom());
        }
        let to_int = |c: &GaussianRational| -> GaussianInteger {
            let re = (&c.re * Rational::from_integer(den.clone())).to_integer();
            let im = (&c.im * Rational::from_integer(den.clone())).to_integer();
            GaussianInteger { re, im }
        };
        let trailing = to_int(&coeffs[low]);
        let leading = to_int(coeffs.last().expect("nonzero"));

        // Rational-root candidates: unit · (divisor of trailing)/(divisor of leading).
        let mut candidates = Vec::new();
        for dt in trailing.divisors(bound)? {
            for dl in leading.divisors(bound)? {
                let ratio = dt
                    .to_gaussian_rational()
                    .div(&dl.to_gaussian_rational())
                    .expect("divisors are nonzero");
                for u in GaussianInteger::units() {
                    candidates.push(&u.to_gaussian_rational() * &ratio);
                }
            }
        }

        for cand in candidates {
            let r = ScalarElem::from_gaussian(cand);
            let factor = Poly::linear(ScalarElem::one(), -&r);
            while p.deg_opt() > Some(0) && p.eval(&r).is_zero() {
                p = p.exact_div(&factor).expect("root divides");
                roots.push(r.clone());
            }
            if p.deg_opt() == Some(0) {
                break;
            }
        }

        if p.deg_opt() > Some(0) {
            return Err(Error::IncompleteFactorization {
                remainder: p.to_string(),
            });
        }
        FactoredPoly::new(lead, roots)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: Self) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect();
        Poly::new(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: Self) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect();
        Poly::new(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: Self) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![ScalarElem::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::new(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

crate::forward_owned_binop!(Poly, Add, add);
crate::forward_owned_binop!(Poly, Sub, sub);
crate::forward_owned_binop!(Poly, Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// True when the rendering of `s` re-parses as a single factor; otherwise
/// it needs parentheses before `*z^k`.
fn needs_parens(s: &str) -> bool {
    s[1..].contains(['+', '-'])
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let term = render_poly_term(c, k);
            if first {
                write!(f, "{term}")?;
                first = false;
            } else if let Some(body) = term.strip_prefix('-') {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {term}")?;
            }
        }
        Ok(())
    }
}

fn render_poly_term(c: &ScalarElem, k: usize) -> String {
    let power = match k {
        0 => String::new(),
        1 => "z".to_string(),
        _ => format!("z^{k}"),
    };
    if power.is_empty() {
        // Constant terms join the sum bare: +/- associativity keeps the
        // re-parsed value identical even for two-component constants.
        return c.to_string();
    }
    if c.is_one() {
        return power;
    }
    if (-c).is_one() {
        return format!("-{power}");
    }
    let s = c.to_string();
    if needs_parens(&s) {
        format!("({s})*{power}")
    } else {
        format!("{s}*{power}")
    }
}

/// Factored form `lead·∏(z − root)`; the lead is nonzero and the roots are
/// an unordered multiset (kept as a sorted-on-construction vector only for
/// deterministic display).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredPoly {
    pub lead: ScalarElem,
    pub roots: Vec<ScalarElem>,
}

impl FactoredPoly {
    pub fn new(lead: ScalarElem, mut roots: Vec<ScalarElem>) -> Result<Self> {
        if lead.is_zero() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        roots.sort_by_key(|r| r.to_string());
        Ok(Self { lead, roots })
    }

    pub fn constant(lead: ScalarElem) -> Result<Self> {
        Self::new(lead, Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    /// Exact dense expansion `lead·∏(z − root)`.
    pub fn expand(&self) -> Poly {
        let mut p = Poly::constant(self.lead.clone());
        for r in &self.roots {
            p = &p * &Poly::linear(ScalarElem::one(), -r);
        }
        p
    }

    /// The product, formed directly on factored data.
    pub fn product(&self, rhs: &Self) -> Self {
        let mut roots = self.roots.clone();
        roots.extend(rhs.roots.iter().cloned());
        Self::new(&self.lead * &rhs.lead, roots).expect("leads nonzero")
    }
}

impl fmt::Display for FactoredPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.roots.is_empty() {
            return write!(f, "{}", self.lead);
        }
        if !self.lead.is_one() {
            let s = self.lead.to_string();
            if needs_parens(&s) {
                write!(f, "({s})*")?;
            } else {
                write!(f, "{s}*")?;
            }
        }
        let factors: Vec<String> = self.roots.iter().map(factor_str).collect();
        write!(f, "{}", factors.join("*"))
    }
}

fn factor_str(root: &ScalarElem) -> String {
    if root.is_zero() {
        return "z".to_string();
    }
    let s = root.to_string();
    if let Some(body) = s.strip_prefix('-') {
        if !needs_parens(&s) {
            return format!("(z + {body})");
        }
    } else if !needs_parens(&s) {
        return format!("(z - {s})");
    }
    format!("(z - ({s}))")
}

/// Real split `lead·∏(z − r_j)·∏(z² + α_j z + β_j)` with each quadratic
/// irreducible over ℝ (negative discriminant, checked over ℚ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealFactoredPoly {
    pub lead: ScalarElem,
    pub linear_roots: Vec<ScalarElem>,
    pub quadratics: Vec<(ScalarElem, ScalarElem)>,
}

impl RealFactoredPoly {
    pub fn new(
        lead: ScalarElem,
        linear_roots: Vec<ScalarElem>,
        quadratics: Vec<(ScalarElem, ScalarElem)>,
    ) -> Result<Self> {
        if lead.is_zero() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        if !lead.is_real() {
            return Err(Error::NotReal(lead.to_string()));
        }
        for r in &linear_roots {
            if !r.is_real() {
                return Err(Error::NotReal(r.to_string()));
            }
        }
        for (alpha, beta) in &quadratics {
            let a = alpha
                .as_rational()
                .ok_or_else(|| Error::UnsupportedScalar(alpha.to_string()))?;
            let b = beta
                .as_rational()
                .ok_or_else(|| Error::UnsupportedScalar(beta.to_string()))?;
            // z² + αz + β is irreducible over ℝ iff α² − 4β < 0
            if (&a * &a - Rational::from_integer(4.into()) * &b).is_negative() {
                continue;
            }
            return Err(Error::ReducibleQuadratic {
                alpha: alpha.to_string(),
                beta: beta.to_string(),
            });
        }
        Ok(Self {
            lead,
            linear_roots,
            quadratics,
        })
    }

    pub fn degree(&self) -> usize {
        self.linear_roots.len() + 2 * self.quadratics.len()
    }

    pub fn expand(&self) -> Poly {
        let mut p = Poly::constant(self.lead.clone());
        for r in &self.linear_roots {
            p = &p * &Poly::linear(ScalarElem::one(), -r);
        }
        for (alpha, beta) in &self.quadratics {
            let quad = Poly::new(vec![beta.clone(), alpha.clone(), ScalarElem::one()]);
            p = &p * &quad;
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> ScalarElem {
        ScalarElem::from_int(n)
    }

    /// Parses nothing: builds polys structurally for the tests below.
    fn poly(coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn arith_identities() {
        // (z+1)(z−1) = z²−1
        let p = &poly(&[1, 1]) * &poly(&[-1, 1]);
        assert_eq!(p, poly(&[-1, 0, 1]));
        // z² + 0 = z²
        assert_eq!(&poly(&[0, 0, 1]) + &Poly::zero(), poly(&[0, 0, 1]));
        // z³ − z³ = 0 (empty)
        let d = &poly(&[0, 0, 0, 1]) - &poly(&[0, 0, 0, 1]);
        assert!(d.is_zero());
        assert!(d.coeffs().is_empty());
    }

    #[test]
    fn expand_examples() {
        let f = FactoredPoly::new(int(1), vec![int(0), int(0), int(1)]).unwrap();
        assert_eq!(f.expand(), poly(&[0, 0, -1, 1]));
        let c = FactoredPoly::constant(int(3)).unwrap();
        assert_eq!(c.expand(), poly(&[3]));
        let conj = FactoredPoly::new(int(1), vec![ScalarElem::i(), -ScalarElem::i()]).unwrap();
        assert_eq!(conj.expand(), poly(&[1, 0, 1]));
    }

    #[test]
    fn zero_lead_rejected() {
        assert_eq!(
            FactoredPoly::new(int(0), vec![]),
            Err(Error::ZeroLeadingCoefficient)
        );
    }

    #[test]
    fn exact_div_examples() {
        let q = poly(&[-1, 0, 1]).exact_div(&poly(&[-1, 1])).unwrap();
        assert_eq!(q, poly(&[1, 1]));
        assert_eq!(
            poly(&[1, 0, 1]).exact_div(&poly(&[-1, 1])),
            Err(Error::NotDivisible)
        );
        assert_eq!(Poly::zero().exact_div(&poly(&[0, 1])), Ok(Poly::zero()));
        assert_eq!(
            poly(&[1]).exact_div(&Poly::zero()),
            Err(Error::DivisionByZeroPoly)
        );
    }

    #[test]
    fn order_of_zero_examples() {
        // (z−1)²(z+2) = z³ − 3z + 2
        let p = poly(&[2, -3, 0, 1]);
        assert_eq!(p.order_of_zero(&int(1)).unwrap(), NatOrder(2));
        // independent oracle: first non-vanishing derivative index
        let mut d = p.clone();
        let mut k = 0;
        while d.eval(&int(1)).is_zero() {
            d = d.derivative();
            k += 1;
        }
        assert_eq!(k, 2);

        assert_eq!(
            poly(&[0, 0, 0, 1]).order_of_zero(&int(0)).unwrap(),
            NatOrder(3)
        );
        assert_eq!(poly(&[5]).order_of_zero(&int(7)).unwrap(), NatOrder(0));
        assert_eq!(
            Poly::zero().order_of_zero(&int(0)),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn degree_examples() {
        assert_eq!(poly(&[2, -3, 0, 1]).degree(), Ok(3));
        assert_eq!(poly(&[7]).degree(), Ok(0));
        assert_eq!(Poly::zero().degree(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(poly(&[0, 0, 0, 1]).derivative(), poly(&[0, 0, 3]));
        assert_eq!(poly(&[5]).derivative(), Poly::zero());
        // t1·z² → 2t1·z with the coefficient held fixed
        let t1 = ScalarElem::var(0).unwrap();
        let p = Poly::monomial(t1.clone(), 2);
        assert_eq!(p.derivative(), Poly::monomial(&int(2) * &t1, 1));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(poly(&[1, 0, 1]).eval(&ScalarElem::i()), int(0));
        assert_eq!(poly(&[2, -3, 0, 1]).eval(&int(1)), int(0));
        assert_eq!(poly(&[42]).eval(&int(-17)), int(42));
    }

    #[test]
    fn try_factor_conjugate_pair() {
        let f = poly(&[1, 0, 1]).try_factor().unwrap();
        assert_eq!(f.lead, int(1));
        assert_eq!(f.roots.len(), 2);
        assert!(f.roots.contains(&ScalarElem::i()));
        assert!(f.roots.contains(&-ScalarElem::i()));
        // expand-back oracle
        assert_eq!(f.expand(), poly(&[1, 0, 1]));
    }

    #[test]
    fn try_factor_with_zero_roots() {
        let f = poly(&[0, 0, -1, 1]).try_factor().unwrap();
        assert_eq!(f.lead, int(1));
        assert_eq!(f.roots, vec![int(0), int(0), int(1)]);
        assert_eq!(f.expand(), poly(&[0, 0, -1, 1]));
    }

    #[test]
    fn try_factor_rational_roots_and_lead() {
        // 2(z − 1/2)(z + 3) = 2z² + 5z − 3
        let p = poly(&[-3, 5, 2]);
        let f = p.try_factor().unwrap();
        assert_eq!(f.lead, int(2));
        assert_eq!(f.expand(), p);
    }

    #[test]
    fn try_factor_irrational_is_incomplete() {
        assert!(matches!(
            poly(&[-2, 0, 1]).try_factor(),
            Err(Error::IncompleteFactorization { .. })
        ));
    }

    #[test]
    fn try_factor_rejects_transcendentals_and_zero() {
        let t1 = ScalarElem::var(0).unwrap();
        let p = Poly::linear(t1, ScalarElem::zero());
        assert!(matches!(
            p.try_factor(),
            Err(Error::UnsupportedCoefficients(_))
        ));
        assert_eq!(Poly::zero().try_factor(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn display_examples() {
        assert_eq!(poly(&[2, -3, 0, 1]).to_string(), "z^3 - 3*z + 2");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::monomial(ScalarElem::i(), 2).to_string(), "i*z^2");
        let mixed = Poly::monomial(
            ScalarElem::from_gaussian(GaussianRational::new(
                crate::scalar::rat(1, 1),
                crate::scalar::rat(-2, 1),
            )),
            1,
        );
        assert_eq!(mixed.to_string(), "(1-2*i)*z");
    }

    #[test]
    fn real_factored_validation() {
        let ok = RealFactoredPoly::new(int(1), vec![int(0)], vec![(int(0), int(1))]);
        assert!(ok.is_ok());
        assert_eq!(ok.unwrap().expand(), poly(&[0, 1, 0, 1]));

        assert!(matches!(
            RealFactoredPoly::new(int(1), vec![], vec![(int(0), int(-1))]),
            Err(Error::ReducibleQuadratic { .. })
        ));
        assert!(matches!(
            RealFactoredPoly::new(ScalarElem::i(), vec![], vec![]),
            Err(Error::NotReal(_))
        ));
        assert!(matches!(
            RealFactoredPoly::new(int(1), vec![ScalarElem::i()], vec![]),
            Err(Error::NotReal(_))
        ));
    }
}
