//! Session settings and the JSON operator dictionaries.
//!
//! An operator file is one JSON object tagged by `"kind"`, mirroring the
//! library's operator variants. Scalars and polynomials inside a file are
//! expression strings in the same grammar as `--poly`; inside a `poly_in_c`
//! function spec the letter `z` stands for the function argument. Loading
//! never applies anything, so every failure here is a usage error — kept
//! apart from operation errors so the exit codes can tell them apart.

use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use leibniz_core::error::Error as CoreError;
use leibniz_core::lmap::LeibnizMap;
use leibniz_core::operator::{FnSpec, NatFnSpec, OperatorSpec, PhiBlock, RepBlocks};
use leibniz_core::poly::Poly;
use leibniz_core::scalar::{GaussianInteger, ScalarElem, DEFAULT_NORM_BOUND, MAX_VARS};

use crate::parse::{parse_poly, parse_scalar, ParseError};

/// A front-end failure. `Usage` covers flags, expression grammar and
/// config files (exit 2); `Operation` is a library failure during the
/// actual work (exit 3).
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Operation(#[from] CoreError),
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        Self::Usage(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct SessionConfig {
    /// How many transcendentals `t1..t3` expressions may mention.
    pub m: usize,
    /// Hard cap on the degree of any parsed polynomial.
    pub degree_cap: usize,
    /// Norm bound for Gaussian-integer factorization.
    pub norm_bound: u64,
}

impl Default for SessionConfig {
    fn default() -> Self {
        Self {
            m: 1,
            degree_cap: 64,
            norm_bound: DEFAULT_NORM_BOUND,
        }
    }
}

impl SessionConfig {
    pub fn validate(&self) -> CliResult<()> {
        if self.m > MAX_VARS {
            return Err(usage(format!(
                "--m must be at most {MAX_VARS}, got {}",
                self.m
            )));
        }
        if self.degree_cap == 0 {
            return Err(usage("--degree-cap must be positive"));
        }
        Ok(())
    }

    pub fn poly(&self, text: &str) -> CliResult<Poly> {
        Ok(parse_poly(text, self.m, self.degree_cap)?)
    }

    pub fn scalar(&self, text: &str) -> CliResult<ScalarElem> {
        Ok(parse_scalar(text, self.m, self.degree_cap)?)
    }

    fn gaussian_integer(&self, text: &str) -> CliResult<GaussianInteger> {
        self.scalar(text)?
            .as_gaussian_rational()
            .filter(|g| g.re.is_integer() && g.im.is_integer())
            .map(|g| GaussianInteger::new(g.re.to_integer(), g.im.to_integer()))
            .ok_or_else(|| usage(format!("'{text}' is not a Gaussian integer")))
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum OpDoc {
    OrderZero {
        x0: String,
    },
    DegreeScale,
    ScaledDerivative {
        p0: String,
    },
    CoeffDerivation {
        d: MapDoc,
    },
    RootPower {
        q0: String,
        f: NatFnDoc,
    },
    RootPowerReal {
        q0: String,
        f: NatFnDoc,
    },
    Representation {
        psi: Vec<FnDoc>,
        phi: Vec<serde_json::Value>,
    },
    Lincomb {
        terms: Vec<(String, OpDoc)>,
    },
    PointwiseLog,
    IdentityNoncompliant,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum MapDoc {
    Zero,
    PrimeLog { weights: Vec<(String, String)> },
    Derivation { u: Vec<String> },
    Lincomb { terms: Vec<(String, MapDoc)> },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum FnDoc {
    Constant {
        value: String,
    },
    PolyInC {
        p: String,
    },
    Table {
        overrides: Vec<(String, String)>,
        default: Box<FnDoc>,
    },
    Undefined,
}

/// A φ̃ block that is a sampled table instead of a constructive map.
#[derive(Debug, Deserialize)]
struct SamplesDoc {
    samples: Vec<(String, String)>,
}

#[derive(Debug, Deserialize)]
struct NatFnDoc {
    #[serde(default)]
    overrides: Vec<(String, usize)>,
    default: usize,
}

fn op_from_doc(doc: &OpDoc, cfg: &SessionConfig) -> CliResult<OperatorSpec> {
    Ok(match doc {
        OpDoc::OrderZero { x0 } => OperatorSpec::OrderZero {
            x0: cfg.scalar(x0)?,
        },
        OpDoc::DegreeScale => OperatorSpec::DegreeScale,
        OpDoc::ScaledDerivative { p0 } => OperatorSpec::ScaledDerivative { p0: cfg.poly(p0)? },
        OpDoc::CoeffDerivation { d } => OperatorSpec::CoeffDerivation {
            d: map_from_doc(d, cfg)?,
        },
        OpDoc::RootPower { q0, f } => OperatorSpec::RootPower {
            q0: cfg.poly(q0)?,
            f: natfn_from_doc(f, cfg)?,
        },
        OpDoc::RootPowerReal { q0, f } => OperatorSpec::RootPowerReal {
            q0: cfg.poly(q0)?,
            f: natfn_from_doc(f, cfg)?,
        },
        OpDoc::Representation { psi, phi } => {
            if psi.is_empty() || psi.len() != phi.len() {
                return Err(usage(format!(
                    "representation needs equal nonempty psi/phi lists, got {} and {}",
                    psi.len(),
                    phi.len()
                )));
            }
            let psi = psi
                .iter()
                .map(|d| fnspec_from_doc(d, cfg))
                .collect::<CliResult<Vec<_>>>()?;
            let phi = phi
                .iter()
                .map(|v| phi_from_value(v, cfg))
                .collect::<CliResult<Vec<_>>>()?;
            OperatorSpec::Representation {
                blocks: RepBlocks::new(psi, phi),
            }
        }
        OpDoc::Lincomb { terms } => OperatorSpec::LinComb {
            terms: terms
                .iter()
                .map(|(c, t)| Ok((cfg.scalar(c)?, op_from_doc(t, cfg)?)))
                .collect::<CliResult<Vec<_>>>()?,
        },
        OpDoc::PointwiseLog => OperatorSpec::PointwiseLog,
        OpDoc::IdentityNoncompliant => OperatorSpec::IdentityNonCompliant,
    })
}

fn map_from_doc(doc: &MapDoc, cfg: &SessionConfig) -> CliResult<LeibnizMap> {
    Ok(match doc {
        MapDoc::Zero => LeibnizMap::Zero,
        MapDoc::PrimeLog { weights } => {
            let pairs = weights
                .iter()
                .map(|(key, w)| Ok((cfg.gaussian_integer(key)?, cfg.scalar(w)?)))
                .collect::<CliResult<Vec<_>>>()?;
            LeibnizMap::prime_log(pairs).map_err(|e| usage(e.to_string()))?
        }
        MapDoc::Derivation { u } => {
            let u = u
                .iter()
                .map(|s| cfg.scalar(s))
                .collect::<CliResult<Vec<_>>>()?;
            LeibnizMap::derivation(u).map_err(|e| usage(e.to_string()))?
        }
        MapDoc::Lincomb { terms } => LeibnizMap::LinComb {
            terms: terms
                .iter()
                .map(|(c, m)| Ok((cfg.scalar(c)?, map_from_doc(m, cfg)?)))
                .collect::<CliResult<Vec<_>>>()?,
        },
    })
}

fn fnspec_from_doc(doc: &FnDoc, cfg: &SessionConfig) -> CliResult<FnSpec> {
    Ok(match doc {
        FnDoc::Constant { value } => FnSpec::Constant(cfg.scalar(value)?),
        FnDoc::PolyInC { p } => FnSpec::PolyInC(cfg.poly(p)?),
        FnDoc::Table { overrides, default } => FnSpec::Table {
            overrides: overrides
                .iter()
                .map(|(k, v)| Ok((cfg.scalar(k)?, cfg.scalar(v)?)))
                .collect::<CliResult<Vec<_>>>()?,
            default: Box::new(fnspec_from_doc(default, cfg)?),
        },
        FnDoc::Undefined => FnSpec::Undefined,
    })
}

/// A φ̃ block is either `{"kind": "samples", ...}` or any map document.
fn phi_from_value(value: &serde_json::Value, cfg: &SessionConfig) -> CliResult<PhiBlock> {
    if value.get("kind").and_then(|k| k.as_str()) == Some("samples") {
        let doc: SamplesDoc = serde_json::from_value(value.clone())
            .map_err(|e| usage(format!("bad samples block: {e}")))?;
        let samples = doc
            .samples
            .iter()
            .map(|(b, v)| Ok((cfg.scalar(b)?, cfg.scalar(v)?)))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(PhiBlock::Samples(samples))
    } else {
        let doc: MapDoc = serde_json::from_value(value.clone())
            .map_err(|e| usage(format!("bad phi block: {e}")))?;
        Ok(PhiBlock::Map(map_from_doc(&doc, cfg)?))
    }
}

fn natfn_from_doc(doc: &NatFnDoc, cfg: &SessionConfig) -> CliResult<NatFnSpec> {
    Ok(NatFnSpec {
        overrides: doc
            .overrides
            .iter()
            .map(|(k, v)| Ok((cfg.scalar(k)?, *v)))
            .collect::<CliResult<Vec<_>>>()?,
        default: doc.default,
    })
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

/// Loads an operator file.
pub fn load_operator(path: &Path, cfg: &SessionConfig) -> CliResult<OperatorSpec> {
    let doc: OpDoc = serde_json::from_str(&read(path)?)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    op_from_doc(&doc, cfg)
}

/// Loads a scalar-map file (the `check-map` input).
pub fn load_map(path: &Path, cfg: &SessionConfig) -> CliResult<LeibnizMap> {
    let doc: MapDoc = serde_json::from_str(&read(path)?)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    map_from_doc(&doc, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(json: &str) -> CliResult<OperatorSpec> {
        let doc: OpDoc = serde_json::from_str(json).expect("test doc parses");
        op_from_doc(&doc, &SessionConfig::default())
    }

    #[test]
    fn builds_simple_operators() {
        assert_eq!(
            op(r#"{"kind": "order_zero", "x0": "1+i"}"#).unwrap().kind(),
            "order_zero"
        );
        assert_eq!(
            op(r#"{"kind": "scaled_derivative", "p0": "z^2"}"#).unwrap(),
            OperatorSpec::ScaledDerivative {
                p0: Poly::monomial(ScalarElem::one(), 2)
            }
        );
        assert_eq!(
            op(r#"{"kind": "degree_scale"}"#).unwrap(),
            OperatorSpec::DegreeScale
        );
    }

    #[test]
    fn builds_nested_lincombs() {
        let spec = op(r#"{"kind": "lincomb", "terms": [
            ["2", {"kind": "degree_scale"}],
            ["-i", {"kind": "scaled_derivative", "p0": "1"}]
        ]}"#)
        .unwrap();
        let OperatorSpec::LinComb { terms } = spec else {
            panic!("expected a lincomb");
        };
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[1].0, -ScalarElem::i());
    }

    #[test]
    fn builds_representations_with_sampled_phi() {
        let spec = op(r#"{"kind": "representation",
            "psi": [{"kind": "constant", "value": "1"},
                    {"kind": "table", "overrides": [["0", "2"]],
                     "default": {"kind": "undefined"}}],
            "phi": [{"kind": "zero"},
                    {"kind": "samples", "samples": [["1", "0"], ["2", "1/2"]]}]
        }"#)
        .unwrap();
        let OperatorSpec::Representation { blocks } = spec else {
            panic!("expected a representation");
        };
        assert_eq!(blocks.kmax, 1);
        assert!(matches!(blocks.phi[1], PhiBlock::Samples(ref s) if s.len() == 2));
    }

    #[test]
    fn prime_log_keys_must_be_gaussian_primes() {
        let doc = r#"{"kind": "coeff_derivation",
            "d": {"kind": "prime_log", "weights": [["4", "1"]]}}"#;
        assert!(matches!(op(doc), Err(CliError::Usage(_))));
        let half = r#"{"kind": "coeff_derivation",
            "d": {"kind": "prime_log", "weights": [["1/2", "1"]]}}"#;
        assert!(matches!(op(half), Err(CliError::Usage(_))));
    }

    #[test]
    fn representation_lists_must_align() {
        let doc = r#"{"kind": "representation",
            "psi": [{"kind": "constant", "value": "1"}], "phi": []}"#;
        assert!(matches!(op(doc), Err(CliError::Usage(_))));
    }

    #[test]
    fn expressions_in_files_respect_the_session() {
        let cfg = SessionConfig::default(); // m = 1
        let doc: OpDoc = serde_json::from_str(r#"{"kind": "order_zero", "x0": "t2"}"#).unwrap();
        assert!(matches!(op_from_doc(&doc, &cfg), Err(CliError::Usage(_))));
    }
}
