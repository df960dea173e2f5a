//! The operator zoo: maps T on polynomials that satisfy (or deliberately
//! violate) the Leibniz rule T(pq) = T(p)q + pT(q).
//!
//! Compliant members:
//!
//! - `OrderZero(x0)`: T(p) = n_{x0}(p)·p — order of the zero at x0 times p.
//! - `DegreeScale`: T(p) = deg(p)·p.
//! - `ScaledDerivative(p0)`: T(p) = p′·p0 (p0 = 1 is the derivative; higher
//!   degree p0 makes T *increase* degrees).
//! - `CoeffDerivation(d)`: T(p) = p^d, the coefficientwise lift of a scalar
//!   map d (compliant when d is additive, i.e. a derivation).
//! - `RootPower(q0, f)`: T(a·∏(z−z_k)) = a·Σ_k q0^{f(z_k)}·∏_{j≠k}(z−z_j).
//! - `RootPowerReal(q0, f)`: the real variant, acting on the split form
//!   a·∏(z−r_k)·∏(z²+α_j z+β_j) with q0 powers attached to linear factors.
//! - `Representation(blocks)`: the canonical form — for p = a·∏(z−z_j),
//!
//!   ```text
//!   T(p)(z) = a·Σ_j (∏_{i≠j}(z−z_i))·Σ_k [ψ_k(−z_j) + φ̃_k(−z_j)]·z^k
//!           + (Σ_k φ̃_k(a)·z^k)·∏_j(z−z_j)
//!   ```
//!
//!   where every φ̃_k is a Leibniz map. Every compliant operator agrees
//!   with such a form, and every such form is compliant.
//! - `LinComb`: scalar combinations of compliant operators stay compliant.
//!
//! Non-members of the polynomial contract: `PointwiseLog` (p ↦ p·ln|p|,
//! valued in functions, evaluated pointwise in doubles) and
//! `IdentityNonCompliant` (T = id, a guaranteed-failing control).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lmap::{coeff_lift, LeibnizMap};
use crate::poly::{FactoredPoly, Poly, RealFactoredPoly};
use crate::scalar::ScalarElem;

/// A representable scalar function c ↦ ψ(c): the sub-algebra of functions
/// the canonical form can carry (everything the example operators need).
#[derive(Debug, Clone, PartialEq)]
pub enum FnSpec {
    Constant(ScalarElem),
    /// Polynomial in the argument, evaluated exactly.
    PolyInC(Poly),
    /// Finite overrides backed by a default; lookups use value equality.
    Table {
        overrides: Vec<(ScalarElem, ScalarElem)>,
        default: Box<FnSpec>,
    },
    /// Defined nowhere: makes a table's misses loud.
    Undefined,
}

impl FnSpec {
    pub fn eval(&self, c: &ScalarElem) -> Result<ScalarElem> {
        match self {
            Self::Constant(v) => Ok(v.clone()),
            Self::PolyInC(p) => Ok(p.eval(c)),
            Self::Table { overrides, default } => overrides
                .iter()
                .find(|(key, _)| key == c)
                .map(|(_, v)| Ok(v.clone()))
                .unwrap_or_else(|| default.eval(c)),
            Self::Undefined => Err(Error::DomainGap {
                point: c.to_string(),
            }),
        }
    }
}

/// A function into ℕ with finite overrides (the root-power exponent f).
#[derive(Debug, Clone, PartialEq)]
pub struct NatFnSpec {
    pub overrides: Vec<(ScalarElem, usize)>,
    pub default: usize,
}

impl NatFnSpec {
    pub fn constant(default: usize) -> Self {
        Self {
            overrides: Vec::new(),
            default,
        }
    }

    pub fn eval(&self, c: &ScalarElem) -> usize {
        self.overrides
            .iter()
            .find(|(key, _)| key == c)
            .map_or(self.default, |(_, v)| *v)
    }
}

/// One φ̃ block of the canonical form: either a constructive Leibniz map or
/// a sampled table (what a fingerprint rebuild carries).
#[derive(Debug, Clone, PartialEq)]
pub enum PhiBlock {
    Map(LeibnizMap),
    /// Partial: evaluation outside the sampled pool is a [`Error::PoolGap`].
    Samples(Vec<(ScalarElem, ScalarElem)>),
}

impl PhiBlock {
    pub fn eval(&self, b: &ScalarElem) -> Result<ScalarElem> {
        match self {
            Self::Map(m) => m.eval(b),
            Self::Samples(samples) => samples
                .iter()
                .find(|(key, _)| key == b)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| Error::PoolGap {
                    point: b.to_string(),
                }),
        }
    }
}

/// The data of a canonical-form operator: ψ_0..ψ_kmax and φ̃_0..φ̃_kmax.
#[derive(Debug, Clone, PartialEq)]
pub struct RepBlocks {
    pub kmax: usize,
    pub psi: Vec<FnSpec>,
    pub phi: Vec<PhiBlock>,
}

impl RepBlocks {
    /// Both sequences must have length kmax + 1.
    pub fn new(psi: Vec<FnSpec>, phi: Vec<PhiBlock>) -> Self {
        assert_eq!(psi.len(), phi.len(), "psi/phi block count mismatch");
        assert!(!psi.is_empty(), "at least the k = 0 block is required");
        Self {
            kmax: psi.len() - 1,
            psi,
            phi,
        }
    }
}

/// An operator on polynomials.
#[derive(Debug, Clone, PartialEq)]
pub enum OperatorSpec {
    OrderZero {
        x0: ScalarElem,
    },
    DegreeScale,
    ScaledDerivative {
        p0: Poly,
    },
    CoeffDerivation {
        d: LeibnizMap,
    },
    RootPower {
        q0: Poly,
        f: NatFnSpec,
    },
    RootPowerReal {
        q0: Poly,
        f: NatFnSpec,
    },
    Representation {
        blocks: RepBlocks,
    },
    LinComb {
        terms: Vec<(ScalarElem, OperatorSpec)>,
    },
    PointwiseLog,
    IdentityNonCompliant,
}

impl OperatorSpec {
    /// The derivative operator, T(p) = p′.
    pub fn derivative() -> Self {
        Self::ScaledDerivative { p0: Poly::one() }
    }

    /// Stable lowercase tag for reports and configs.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::OrderZero { .. } => "order_zero",
            Self::DegreeScale => "degree_scale",
            Self::ScaledDerivative { .. } => "scaled_derivative",
            Self::CoeffDerivation { .. } => "coeff_derivation",
            Self::RootPower { .. } => "root_power",
            Self::RootPowerReal { .. } => "root_power_real",
            Self::Representation { .. } => "representation",
            Self::LinComb { .. } => "lincomb",
            Self::PointwiseLog => "pointwise_log",
            Self::IdentityNonCompliant => "identity_noncompliant",
        }
    }

    /// True when the variant needs roots (and therefore factored input or
    /// a successful factorization).
    pub fn needs_roots(&self) -> bool {
        match self {
            Self::RootPower { .. } | Self::Representation { .. } => true,
            Self::LinComb { terms } => terms.iter().any(|(_, op)| op.needs_roots()),
            _ => false,
        }
    }

    /// Applies T to a factored polynomial.
    pub fn apply(&self, p: &FactoredPoly) -> Result<Poly> {
        match self {
            Self::OrderZero { x0 } => {
                let n = p.roots.iter().filter(|r| *r == x0).count();
                Ok(p.expand().scale(&ScalarElem::from_int(n as i64)))
            }
            Self::DegreeScale => {
                let n = p.degree();
                Ok(p.expand().scale(&ScalarElem::from_int(n as i64)))
            }
            Self::ScaledDerivative { p0 } => Ok(&p.expand().derivative() * p0),
            Self::CoeffDerivation { d } => coeff_lift(d, &p.expand()),
            Self::RootPower { q0, f } => apply_root_power(q0, f, p),
            Self::RootPowerReal { .. } => Err(Error::RealFormRequired),
            Self::Representation { blocks } => apply_representation(blocks, p),
            Self::LinComb { terms } => {
                let mut acc = Poly::zero();
                for (c, op) in terms {
                    acc = &acc + &op.apply(p)?.scale(c);
                }
                Ok(acc)
            }
            Self::PointwiseLog => Err(Error::PointwiseOnly),
            Self::IdentityNonCompliant => Ok(p.expand()),
        }
    }

    /// Applies T to a dense polynomial. Direct for coefficient/degree-based
    /// variants; routes through [`Poly::try_factor`] where roots are needed.
    /// T(0) = 0 for every variant (forced by the rule).
    pub fn apply_expanded(&self, p: &Poly) -> Result<Poly> {
        if p.is_zero() {
            return Ok(Poly::zero());
        }
        match self {
            Self::OrderZero { x0 } => {
                let n = p.order_of_zero(x0)?.0;
                Ok(p.scale(&ScalarElem::from_int(n as i64)))
            }
            Self::DegreeScale => {
                let n = p.degree()?;
                Ok(p.scale(&ScalarElem::from_int(n as i64)))
            }
            Self::ScaledDerivative { p0 } => Ok(&p.derivative() * p0),
            Self::CoeffDerivation { d } => coeff_lift(d, p),
            Self::RootPower { .. } | Self::Representation { .. } => self.apply(&p.try_factor()?),
            Self::RootPowerReal { .. } => Err(Error::RealFormRequired),
            Self::LinComb { terms } => {
                let mut acc = Poly::zero();
                for (c, op) in terms {
                    acc = &acc + &op.apply_expanded(p)?.scale(c);
                }
                Ok(acc)
            }
            Self::PointwiseLog => Err(Error::PointwiseOnly),
            Self::IdentityNonCompliant => Ok(p.clone()),
        }
    }
}

/// `T(p) = a·Σ_k q0^{f(z_k)}·∏_{j≠k}(z−z_j)`; constants map to 0.
fn apply_root_power(q0: &Poly, f: &NatFnSpec, p: &FactoredPoly) -> Result<Poly> {
    let mut acc = Poly::zero();
    for (k, root) in p.roots.iter().enumerate() {
        let cofactor = cofactor_product(&p.roots, k);
        let power = f.eval(root);
        acc = &acc + &(&q0.pow(power as u32) * &cofactor);
    }
    Ok(acc.scale(&p.lead))
}

/// `∏_{i≠j}(z−z_i)` over the root multiset.
fn cofactor_product(roots: &[ScalarElem], j: usize) -> Poly {
    let mut acc = Poly::one();
    for (i, r) in roots.iter().enumerate() {
        if i != j {
            acc = &acc * &Poly::linear(ScalarElem::one(), -r);
        }
    }
    acc
}

/// The canonical form: root-indexed ψ/φ̃ sum plus the lead-indexed
/// trailing block.
fn apply_representation(blocks: &RepBlocks, p: &FactoredPoly) -> Result<Poly> {
    // trailing term (Σ_k φ̃_k(a)·z^k)·∏(z−z_j)
    let tail_coeffs = blocks
        .phi
        .iter()
        .map(|phi| phi.eval(&p.lead))
        .collect::<Result<Vec<_>>>()?;
    let monic = FactoredPoly::new(ScalarElem::one(), p.roots.clone())
        .expect("one is nonzero")
        .expand();
    let mut acc = &Poly::new(tail_coeffs) * &monic;

    // a · Σ_j ∏_{i≠j}(z−z_i) · Σ_k [ψ_k(−z_j) + φ̃_k(−z_j)]·z^k
    let mut root_sum = Poly::zero();
    for (j, root) in p.roots.iter().enumerate() {
        let m = -root;
        let inner = Poly::new(
            blocks
                .psi
                .iter()
                .zip(&blocks.phi)
                .map(|(psi, phi)| Ok(&psi.eval(&m)? + &phi.eval(&m)?))
                .collect::<Result<Vec<_>>>()?,
        );
        root_sum = &root_sum + &(&cofactor_product(&p.roots, j) * &inner);
    }
    acc = &acc + &root_sum.scale(&p.lead);
    Ok(acc)
}

/// The induction form `T(p₁⋯p_n) = Σ_j (∏_{i≠j} p_i)·T(p_j)`, evaluated
/// literally; for compliant operators it equals T of the full product.
pub fn product_action(op: &OperatorSpec, parts: &[Poly]) -> Result<Poly> {
    let mut acc = Poly::zero();
    for j in 0..parts.len() {
        let mut cofactor = Poly::one();
        for (i, q) in parts.iter().enumerate() {
            if i != j {
                cofactor = &cofactor * q;
            }
        }
        acc = &acc + &(&cofactor * &op.apply_expanded(&parts[j])?);
    }
    Ok(acc)
}

/// A sampled value of the pointwise operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointValue {
    pub z: Complex64,
    pub value: Complex64,
}

/// `E(p)(z) = p(z)·ln|p(z)|` in double precision, with the convention
/// `0·ln 0 = 0` applied exactly when the evaluated value is zero.
pub fn pointwise_log_eval(p: &Poly, z: Complex64) -> Result<PointValue> {
    let coeffs = p
        .coeffs()
        .iter()
        .map(|c| {
            c.to_complex64()
                .ok_or_else(|| Error::UnsupportedCoefficients(c.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut v = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        v = v * z + c;
    }
    let value = if v.norm() == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        v * v.norm().ln()
    };
    Ok(PointValue { z, value })
}

/// The real-variant root-power action on a real split form:
/// `T(p) = a·(Σ_k q0^{f(r_k)}·∏_{j≠k}(z−r_j))·∏(z²+α_j z+β_j)`.
/// Inputs without real-linear factors (constants included) map to 0.
pub fn apply_real(op: &OperatorSpec, p: &RealFactoredPoly) -> Result<Poly> {
    let OperatorSpec::RootPowerReal { q0, f } = op else {
        return Err(Error::RealFormRequired);
    };
    let mut acc = Poly::zero();
    for (k, root) in p.linear_roots.iter().enumerate() {
        let cofactor = cofactor_product(&p.linear_roots, k);
        acc = &acc + &(&q0.pow(f.eval(root) as u32) * &cofactor);
    }
    for (alpha, beta) in &p.quadratics {
        let quad = Poly::new(vec![beta.clone(), alpha.clone(), ScalarElem::one()]);
        acc = &acc * &quad;
    }
    Ok(acc.scale(&p.lead))
}
