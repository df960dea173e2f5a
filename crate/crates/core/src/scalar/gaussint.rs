//! Gaussian integers Z[i] with unique factorization up to units.
//!
//! Every nonzero Gaussian integer g decomposes as `g = u * prod(pi_k^e_k)`
//! with a unit `u` in {1, -1, i, -i} and Gaussian primes `pi_k`. To make
//! the decomposition a function, each prime is reported as its canonical
//! associate: the one with `re > 0` and `im >= 0`.
//!
//! Factorization is desk-scale by design: the norm of the input must stay
//! below a configurable bound (default 10^9) and everything is found by
//! trial division, walking rational primes of the norm in increasing
//! order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::gaussian::{GaussianRational, Rational};

/// Default bound on the norm of inputs to [`GaussianInteger::factorize`].
pub const DEFAULT_NORM_BOUND: u64 = 1_000_000_000;

/// An element of Z[i].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianInteger {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInteger {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        Self {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn i() -> Self {
        Self::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// `re^2 + im^2`; the norm is zero only for zero.
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// The four units of Z[i] in a fixed order.
    pub fn units() -> [Self; 4] {
        [Self::one(), Self::new(-1, 0), Self::i(), Self::new(0, -1)]
    }

    pub fn to_gaussian_rational(&self) -> GaussianRational {
        GaussianRational::new(
            Rational::from_integer(self.re.clone()),
            Rational::from_integer(self.im.clone()),
        )
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn checked_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        // self / d = self * conj(d) / norm(d); exact iff both components divide.
        let n = d.norm();
        let num = self * &d.conj();
        if (&num.re % &n).is_zero() && (&num.im % &n).is_zero() {
            Some(Self::new(num.re / &n, num.im / n))
        } else {
            None
        }
    }

    /// Decomposes `self` as `unit * canon` where `canon` has `re > 0`,
    /// `im >= 0`. Exactly one of the four associates qualifies.
    pub fn canonical_associate(&self) -> Result<(Self, Self)> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        for unit in Self::units() {
            // canon = unit^{-1} * self = conj(unit) * self  (units have norm 1)
            let canon = &unit.conj() * self;
            if canon.re.is_positive() && !canon.im.is_negative() {
                return Ok((unit, canon));
            }
        }
        unreachable!("one associate of a nonzero Gaussian integer is canonical");
    }

    /// Gaussian primality test. A nonzero non-unit is prime iff its norm is
    /// a rational prime, or it is an associate of a rational prime q = 3 mod 4.
    pub fn is_prime(&self) -> bool {
        let n = match self.norm().to_u64() {
            Some(n) => n,
            None => return false, // out of desk-scale range; treat as unknown
        };
        if n <= 1 {
            return false;
        }
        if is_prime_u64(n) {
            return true;
        }
        if self.re.is_zero() || self.im.is_zero() {
            let q = (self.re.abs() + self.im.abs()).to_u64();
            if let Some(q) = q {
                return q % 4 == 3 && is_prime_u64(q);
            }
        }
        false
    }

    /// Unique factorization `self = unit * prod(prime^exp)` with canonical
    /// primes sorted by (norm, im). Errors on zero and on norms above `bound`.
    pub fn factorize(&self, bound: u64) -> Result<(Self, Vec<(Self, u32)>)> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let norm = self.norm();
        let norm_u64 =
            norm.to_u64()
                .filter(|&n| n <= bound)
                .ok_or_else(|| Error::NormBoundExceeded {
                    norm: norm.to_string(),
                    bound,
                })?;

        let mut rest = self.clone();
        let mut factors: Vec<(Self, u32)> = Vec::new();
        for (p, _) in factor_u64(norm_u64) {
            for prime in gaussian_primes_above(p) {
                let mut exp = 0u32;
                while let Some(q) = rest.checked_div(&prime) {
                    rest = q;
                    exp += 1;
                }
                if exp > 0 {
                    factors.push((prime, exp));
                }
            }
        }
        debug_assert!(rest.is_unit());
        factors.sort_by_key(|(p, _)| (p.norm(), p.im.clone()));
        Ok((rest, factors))
    }

    /// All divisors of `self` up to units, canonical-associate form,
    /// deterministic order. Includes 1 and the canonical associate of `self`.
    pub fn divisors(&self, bound: u64) -> Result<Vec<Self>> {
        let (_, factors) = self.factorize(bound)?;
        let mut divs = vec![Self::one()];
        for (prime, exp) in &factors {
            let mut extended = Vec::with_capacity(divs.len() * (*exp as usize + 1));
            for d in &divs {
                let mut power = d.clone();
                extended.push(power.clone());
                for _ in 0..*exp {
                    power = &power * prime;
                    extended.push(power.clone());
                }
            }
            divs = extended;
        }
        Ok(divs)
    }
}

impl Add for &GaussianInteger {
    type Output = GaussianInteger;
    fn add(self, rhs: Self) -> GaussianInteger {
        GaussianInteger::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianInteger {
    type Output = GaussianInteger;
    fn sub(self, rhs: Self) -> GaussianInteger {
        GaussianInteger::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianInteger {
    type Output = GaussianInteger;
    fn mul(self, rhs: Self) -> GaussianInteger {
        GaussianInteger::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianInteger {
    type Output = GaussianInteger;
    fn neg(self) -> GaussianInteger {
        GaussianInteger::new(-self.re.clone(), -self.im.clone())
    }
}

impl fmt::Display for GaussianInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_gaussian_rational().fmt(f)
    }
}

/// The canonical Gaussian primes above a rational prime p:
/// (1+i) for p = 2; the split pair for p = 1 mod 4; p itself when inert.
fn gaussian_primes_above(p: u64) -> Vec<GaussianInteger> {
    if p == 2 {
        return vec![GaussianInteger::new(1, 1)];
    }
    if p % 4 == 3 {
        return vec![GaussianInteger::new(p, 0u32)];
    }
    // p = 1 mod 4 splits: find x with x^2 = -1 mod p, then pi = gcd(p, x+i).
    let x = sqrt_of_minus_one(p);
    let pi = gaussian_gcd(
        &GaussianInteger::new(p, 0u32),
        &GaussianInteger::new(x, 1u32),
    );
    let (_, pi) = pi.canonical_associate().expect("gcd of nonzero inputs");
    let (_, pi_bar) = pi.conj().canonical_associate().expect("nonzero");
    let mut pair = vec![pi, pi_bar];
    pair.sort_by_key(|g| g.im.clone());
    pair
}

/// Euclidean gcd in Z[i] using rounded division.
fn gaussian_gcd(a: &GaussianInteger, b: &GaussianInteger) -> GaussianInteger {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let n = b.norm();
        let prod = &a * &b.conj();
        let q = GaussianInteger::new(div_round(&prod.re, &n), div_round(&prod.im, &n));
        let r = &a - &(&q * &b);
        a = b;
        b = r;
    }
    a
}

/// Integer division rounded to the nearest integer (ties toward +inf).
/// Requires `d > 0`, which holds for the norms used above.
fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    use num_integer::Integer;
    let two = BigInt::from(2);
    (n * &two + d).div_floor(&(d * two))
}

/// Finds x with x^2 = -1 mod p for a prime p = 1 mod 4, via Euler's
/// criterion on successive candidates.
fn sqrt_of_minus_one(p: u64) -> u64 {
    let bp = BigInt::from(p);
    let exp = BigInt::from((p - 1) / 4);
    let legendre_exp = BigInt::from((p - 1) / 2);
    for a in 2..p {
        let ba = BigInt::from(a);
        if ba.modpow(&legendre_exp, &bp) != BigInt::one() {
            let x = ba.modpow(&exp, &bp);
            return x.to_u64().expect("residue fits");
        }
    }
    unreachable!("a quadratic non-residue exists below any odd prime");
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Trial-division factorization of a u64, factors in increasing order.
fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut push = |p: u64, e: u32| {
        if e > 0 {
            out.push((p, e));
        }
    };
    let mut e = 0;
    while n % 2 == 0 {
        n /= 2;
        e += 1;
    }
    push(2, e);
    let mut d = 3u64;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        push(d, e);
        d += 2;
    }
    if n > 1 {
        push(n, 1);
    }
    out
}
