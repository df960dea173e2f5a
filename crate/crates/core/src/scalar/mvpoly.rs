//! Polynomials in the transcendentals t1, t2, t3 over ℚ(i).
//!
//! These are the numerators/denominators of field elements in
//! ℚ(i)(t1, t2, t3). The variable count is fixed at three slots; a session
//! that uses fewer simply never mentions the others. Terms live in a
//! `BTreeMap` keyed by exponent triple, so arithmetic is canonical and
//! equality is structural.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::gaussian::GaussianRational;

/// Number of transcendental slots.
pub const MAX_VARS: usize = 3;

/// Exponent triple for t1, t2, t3.
pub type Exps = [u32; MAX_VARS];

/// A polynomial in t1..t3 with ℚ(i) coefficients; zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MvPoly {
    terms: BTreeMap<Exps, GaussianRational>,
}

impl MvPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0; MAX_VARS], c);
        }
        Self { terms }
    }

    /// The variable `t{idx+1}`; `idx` must be below [`MAX_VARS`].
    pub fn var(idx: usize) -> Result<Self> {
        if idx >= MAX_VARS {
            return Err(Error::TooManyTranscendentals {
                got: idx + 1,
                max: MAX_VARS,
            });
        }
        let mut exps = [0; MAX_VARS];
        exps[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, GaussianRational::one());
        Ok(Self { terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e == &[0; MAX_VARS])
    }

    /// The value as a ℚ(i) constant, if it is one.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.is_zero() {
            return Some(GaussianRational::zero());
        }
        if self.is_constant() {
            return self.terms.get(&[0; MAX_VARS]).cloned();
        }
        None
    }

    pub fn coeff(&self, exps: &Exps) -> GaussianRational {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    /// Coefficient of the largest monomial in exponent order; zero for the
    /// zero polynomial. Used to scale denominators to a monic form.
    pub fn lead_coeff(&self) -> GaussianRational {
        self.terms
            .values()
            .next_back()
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(e, v)| (*e, v * c)).collect();
        Self { terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to `t{var+1}`.
    pub fn partial(&self, var: usize) -> Self {
        let mut terms = BTreeMap::new();
        for (exps, c) in &self.terms {
            let e = exps[var];
            if e == 0 {
                continue;
            }
            let mut lowered = *exps;
            lowered[var] = e - 1;
            let scaled = c * &GaussianRational::from_int(e as i64);
            if !scaled.is_zero() {
                terms.insert(lowered, scaled);
            }
        }
        Self { terms }
    }

    /// Componentwise complex conjugation of the coefficients.
    pub fn conj_coeffs(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (*e, c.conj())).collect();
        Self { terms }
    }

    /// True when every coefficient is real.
    pub fn has_real_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    fn insert_term(terms: &mut BTreeMap<Exps, GaussianRational>, exps: Exps, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }
}

impl Add for &MvPoly {
    type Output = MvPoly;
    fn add(self, rhs: Self) -> MvPoly {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            MvPoly::insert_term(&mut terms, *e, c.clone());
        }
        MvPoly { terms }
    }
}

impl Sub for &MvPoly {
    type Output = MvPoly;
    fn sub(self, rhs: Self) -> MvPoly {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            MvPoly::insert_term(&mut terms, *e, -c);
        }
        MvPoly { terms }
    }
}

impl Mul for &MvPoly {
    type Output = MvPoly;
    fn mul(self, rhs: Self) -> MvPoly {
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                MvPoly::insert_term(&mut terms, exps, ca * cb);
            }
        }
        MvPoly { terms }
    }
}

impl Neg for &MvPoly {
    type Output = MvPoly;
    fn neg(self) -> MvPoly {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c)).collect();
        MvPoly { terms }
    }
}

crate::forward_owned_binop!(MvPoly, Add, add);
crate::forward_owned_binop!(MvPoly, Sub, sub);
crate::forward_owned_binop!(MvPoly, Mul, mul);

impl Neg for MvPoly {
    type Output = MvPoly;
    fn neg(self) -> MvPoly {
        -&self
    }
}

impl fmt::Display for MvPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Descending exponent order reads naturally and stays deterministic.
        for (exps, c) in self.terms.iter().rev() {
            let term = render_term(exps, c);
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

/// Renders one term so that the result re-parses to the same value:
/// coefficients with both components nonzero get parenthesized.
fn render_term(exps: &Exps, c: &GaussianRational) -> String {
    let monomial = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("t{}", i + 1)
            } else {
                format!("t{}^{}", i + 1, e)
            }
        })
        .collect::<Vec<_>>()
        .join("*");
    if monomial.is_empty() {
        return c.to_string();
    }
    if c.is_one() {
        return monomial;
    }
    if (-c).is_one() {
        return format!("-{monomial}");
    }
    if !c.re.is_zero() && !c.im.is_zero() {
        format!("({c})*{monomial}")
    } else {
        format!("{c}*{monomial}")
    }
}
