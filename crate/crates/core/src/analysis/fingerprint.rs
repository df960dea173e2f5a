//! Fingerprinting: sampling the ψ_k and φ̃_k data of an operator from its
//! action on constants and monic linear polynomials, and rebuilding a
//! canonical-form operator from those samples.
//!
//! The extraction mirrors the defining relations: with
//! T(az+b) = Σ_k φ_k(a, b)·z^k,
//!
//! - φ̃_k(b) = φ_k(0, b) = coefficient k of T(constant b),
//! - ψ_k(c) = φ_k(1, c) − φ_k(0, c) = coefficient k of T(z + c) minus
//!   φ̃_k(c).
//!
//! Tables are partial: the rebuild refuses to extrapolate outside the
//! sampled pool and reports a pool gap instead.

use crate::analysis::report::CheckReport;
use crate::error::{Error, Result};
use crate::operator::{FnSpec, OperatorSpec, PhiBlock, RepBlocks};
use crate::poly::{FactoredPoly, Poly};
use crate::scalar::ScalarElem;

/// Sampled ψ/φ̃ data of one operator over one point pool.
#[derive(Debug, Clone, Default)]
pub struct Fingerprint {
    /// Highest power of z observed in any sampled image.
    pub kmax: usize,
    /// (k, c) → ψ_k(c).
    pub psi_samples: Vec<((usize, ScalarElem), ScalarElem)>,
    /// (k, b) → φ̃_k(b).
    pub phi_samples: Vec<((usize, ScalarElem), ScalarElem)>,
}

impl Fingerprint {
    pub fn psi(&self, k: usize, c: &ScalarElem) -> Option<&ScalarElem> {
        self.psi_samples
            .iter()
            .find(|((kk, cc), _)| *kk == k && cc == c)
            .map(|(_, v)| v)
    }

    pub fn phi(&self, k: usize, b: &ScalarElem) -> Option<&ScalarElem> {
        self.phi_samples
            .iter()
            .find(|((kk, bb), _)| *kk == k && bb == b)
            .map(|(_, v)| v)
    }
}

/// Samples T on `constant c` and `z + c` for every pool point, splitting
/// the images into the φ̃ and ψ tables.
pub fn fingerprint(op: &OperatorSpec, points: &[ScalarElem]) -> Result<Fingerprint> {
    struct Row {
        point: ScalarElem,
        constant_image: Poly,
        linear_image: Poly,
    }
    let mut rows = Vec::new();
    let mut kmax = 0usize;
    for c in points {
        let constant_image = if c.is_zero() {
            Poly::zero() // T(0) = 0
        } else {
            op.apply(&FactoredPoly::constant(c.clone())?)?
        };
        let linear_image = op.apply(&FactoredPoly::new(ScalarElem::one(), vec![-c])?)?;
        kmax = kmax
            .max(constant_image.deg_opt().unwrap_or(0))
            .max(linear_image.deg_opt().unwrap_or(0));
        rows.push(Row {
            point: c.clone(),
            constant_image,
            linear_image,
        });
    }
    let mut fp = Fingerprint {
        kmax,
        ..Fingerprint::default()
    };
    for row in rows {
        for k in 0..=kmax {
            let phi = row.constant_image.coeff(k);
            let psi = &row.linear_image.coeff(k) - &phi;
            fp.phi_samples.push(((k, row.point.clone()), phi));
            fp.psi_samples.push(((k, row.point.clone()), psi));
        }
    }
    Ok(fp)
}

/// Builds the canonical-form operator carried by a fingerprint: sampled
/// tables with no defaults, so unsampled points fail loudly.
pub fn rebuild(fp: &Fingerprint) -> OperatorSpec {
    let mut psi = Vec::with_capacity(fp.kmax + 1);
    let mut phi = Vec::with_capacity(fp.kmax + 1);
    for k in 0..=fp.kmax {
        let psi_overrides: Vec<(ScalarElem, ScalarElem)> = fp
            .psi_samples
            .iter()
            .filter(|((kk, _), _)| *kk == k)
            .map(|((_, c), v)| (c.clone(), v.clone()))
            .collect();
        let phi_overrides: Vec<(ScalarElem, ScalarElem)> = fp
            .phi_samples
            .iter()
            .filter(|((kk, _), _)| *kk == k)
            .map(|((_, b), v)| (b.clone(), v.clone()))
            .collect();
        psi.push(FnSpec::Table {
            overrides: psi_overrides,
            default: Box::new(FnSpec::Undefined),
        });
        phi.push(PhiBlock::Samples(phi_overrides));
    }
    OperatorSpec::Representation {
        blocks: RepBlocks::new(psi, phi),
    }
}

/// Compares the rebuilt operator against the original on factored samples.
/// Samples reaching outside the pool surface as [`Error::PoolGap`].
pub fn roundtrip_check(
    op: &OperatorSpec,
    fp: &Fingerprint,
    samples: &[FactoredPoly],
) -> Result<CheckReport> {
    let rebuilt = rebuild(fp);
    let mut report = CheckReport::new();
    for p in samples {
        let lhs = op.apply(p)?;
        let rhs = rebuilt.apply(p).map_err(|e| match e {
            // the rebuilt ψ tables have no default: a miss is a pool gap
            Error::DomainGap { point } => Error::PoolGap { point },
            other => other,
        })?;
        report.record(vec![p.to_string()], lhs, rhs);
    }
    Ok(report)
}
