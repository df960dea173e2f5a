//! Elements of the scalar field ℚ(i)(t1, t2, t3): fractions of
//! polynomials in the transcendentals with Gaussian-rational coefficients.
//!
//! Fractions are kept lightly normalized — constant denominators are folded
//! into the numerator and denominators are made monic — but no multivariate
//! gcd is attempted. Equality therefore cross-multiplies: `a/b = c/d` iff
//! `a·d = c·b`, which is decidable because [`MvPoly`] is a canonical form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::gaussian::{GaussianRational, Rational};
use crate::scalar::mvpoly::MvPoly;

/// A scalar: `num / den` with `den ≠ 0`.
#[derive(Debug, Clone)]
pub struct ScalarElem {
    num: MvPoly,
    den: MvPoly,
}

impl ScalarElem {
    /// Builds `num / den`; errors when `den` is zero.
    pub fn new(num: MvPoly, den: MvPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut e = Self { num, den };
        e.normalize();
        Ok(e)
    }

    pub fn from_mvpoly(num: MvPoly) -> Self {
        Self {
            num,
            den: MvPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_mvpoly(MvPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_mvpoly(MvPoly::one())
    }

    pub fn from_gaussian(c: GaussianRational) -> Self {
        Self::from_mvpoly(MvPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_gaussian(GaussianRational::from_int(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_gaussian(GaussianRational::from_rational(r))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::from_gaussian(GaussianRational::i())
    }

    /// The transcendental `t{idx+1}`.
    pub fn var(idx: usize) -> Result<Self> {
        Ok(Self::from_mvpoly(MvPoly::var(idx)?))
    }

    pub fn num(&self) -> &MvPoly {
        &self.num
    }

    pub fn den(&self) -> &MvPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// Folds constant denominators into the numerator and scales the
    /// denominator monic, so displays and comparisons stay tame.
    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = MvPoly::one();
            return;
        }
        if let Some(c) = self.den.as_constant() {
            let inv = c.inv().expect("denominator nonzero");
            self.num = self.num.scale(&inv);
            self.den = MvPoly::one();
            return;
        }
        let lead = self.den.lead_coeff();
        if !lead.is_one() {
            let inv = lead.inv().expect("lead of nonzero poly");
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    /// The value as an element of ℚ(i), when it has no transcendentals.
    pub fn as_gaussian_rational(&self) -> Option<GaussianRational> {
        if self.den.as_constant().map(|c| c.is_one()) == Some(true) {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// The value as an element of ℚ, when real and transcendental-free.
    pub fn as_rational(&self) -> Option<Rational> {
        let g = self.as_gaussian_rational()?;
        g.is_real().then_some(g.re)
    }

    /// True when all coefficients of numerator and denominator are real,
    /// treating the transcendentals as real quantities.
    pub fn is_real(&self) -> bool {
        self.num.has_real_coeffs() && self.den.has_real_coeffs()
    }

    /// Componentwise complex conjugation (fixes the transcendentals).
    pub fn conj(&self) -> Self {
        Self {
            num: self.num.conj_coeffs(),
            den: self.den.conj_coeffs(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Lossy conversion to a complex double; `None` when transcendentals
    /// are present.
    pub fn to_complex64(&self) -> Option<Complex64> {
        self.as_gaussian_rational().map(|g| g.to_complex64())
    }
}

impl PartialEq for ScalarElem {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for ScalarElem {}

impl Zero for ScalarElem {
    fn zero() -> Self {
        ScalarElem::zero()
    }
    fn is_zero(&self) -> bool {
        ScalarElem::is_zero(self)
    }
}

impl One for ScalarElem {
    fn one() -> Self {
        ScalarElem::one()
    }
}

impl Add for &ScalarElem {
    type Output = ScalarElem;
    fn add(self, rhs: Self) -> ScalarElem {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        ScalarElem::new(num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Sub for &ScalarElem {
    type Output = ScalarElem;
    fn sub(self, rhs: Self) -> ScalarElem {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        ScalarElem::new(num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Mul for &ScalarElem {
    type Output = ScalarElem;
    fn mul(self, rhs: Self) -> ScalarElem {
        ScalarElem::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Neg for &ScalarElem {
    type Output = ScalarElem;
    fn neg(self) -> ScalarElem {
        ScalarElem {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

crate::forward_owned_binop!(ScalarElem, Add, add);
crate::forward_owned_binop!(ScalarElem, Sub, sub);
crate::forward_owned_binop!(ScalarElem, Mul, mul);

impl Neg for ScalarElem {
    type Output = ScalarElem;
    fn neg(self) -> ScalarElem {
        -&self
    }
}

impl fmt::Display for ScalarElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().map(|c| c.is_one()) == Some(true) {
            return write!(f, "{}", self.num);
        }
        let num = self.num.to_string();
        // Multi-term numerators need grouping before the division.
        if num.contains(" + ") || num.contains(" - ") {
            write!(f, "({num})/({})", self.den)
        } else {
            write!(f, "{num}/({})", self.den)
        }
    }
}
