//! Expression parsing for polynomials and scalars.
//!
//! Grammar (one-token lookahead, no implicit multiplication):
//!
//! ```text
//! expr   := ["-"] term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := base ("^" uint)?
//! base   := "(" expr ")" | "z" | int | "i" | "t1" | "t2" | "t3"
//! ```
//!
//! "/" is a general binary operator whose right side must be constant in z
//! (this covers the `int "/" int` fraction form and printed coefficients
//! like `t1/(t1 + 1)`). Scalars use the same grammar with "z" forbidden.
//! All arithmetic is exact; the degree cap is enforced as terms are built.

use num_bigint::BigInt;

use leibniz_core::poly::Poly;
use leibniz_core::scalar::{Rational, ScalarElem};

/// A parse failure, with the byte offset it was detected at.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at offset {pos}: expected {expected}, found {found}")]
    Syntax {
        pos: usize,
        expected: String,
        found: String,
    },
    #[error("negative exponent at offset {pos}: exponents must be nonnegative integers")]
    NegativeExponent { pos: usize },
    #[error("degree cap exceeded at offset {pos}: degree {got} > cap {cap}")]
    DegreeCapExceeded { pos: usize, got: usize, cap: usize },
    #[error("division by zero at offset {pos}")]
    DivisionByZero { pos: usize },
}

impl ParseError {
    /// Byte offset the failure was detected at.
    #[cfg(test)]
    pub fn position(&self) -> usize {
        match self {
            Self::Syntax { pos, .. }
            | Self::NegativeExponent { pos }
            | Self::DegreeCapExceeded { pos, .. }
            | Self::DivisionByZero { pos } => *pos,
        }
    }
}

type PResult<T> = Result<T, ParseError>;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(s) => format!("integer {s}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
        }
    }
}

fn tokenize(text: &str) -> PResult<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            '/' => {
                toks.push((Tok::Slash, i));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((Tok::Int(text[start..i].to_string()), start));
            }
            'a'..='z' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_lowercase() || bytes[i].is_ascii_digit())
                {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
            }
            _ => {
                return Err(ParseError::Syntax {
                    pos: i,
                    expected: "a token".into(),
                    found: format!("'{c}'"),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    idx: usize,
    end: usize,
    allow_z: bool,
    m: usize,
    degree_cap: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(t, _)| t.clone());
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn syntax(&self, expected: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos(),
            expected: expected.into(),
            found: self.peek().map_or("end of input".into(), |t| t.describe()),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> PResult<()> {
        if self.peek() == Some(&tok) {
            self.idx += 1;
            Ok(())
        } else {
            Err(self.syntax(expected))
        }
    }

    fn check_cap(&self, p: &Poly, pos: usize) -> PResult<()> {
        match p.deg_opt() {
            Some(got) if got > self.degree_cap => Err(ParseError::DegreeCapExceeded {
                pos,
                got,
                cap: self.degree_cap,
            }),
            _ => Ok(()),
        }
    }

    fn expr(&mut self) -> PResult<Poly> {
        let mut acc = if self.peek() == Some(&Tok::Minus) {
            self.idx += 1;
            -&self.term()?
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.idx += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.idx += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> PResult<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    let pos = self.pos();
                    self.idx += 1;
                    acc = &acc * &self.factor()?;
                    self.check_cap(&acc, pos)?;
                }
                Some(Tok::Slash) => {
                    let pos = self.pos();
                    self.idx += 1;
                    let divisor = self.factor()?;
                    let Some(c) = divisor.as_constant() else {
                        return Err(ParseError::Syntax {
                            pos,
                            expected: "a divisor constant in z".into(),
                            found: format!("polynomial of degree {}", divisor.degree().unwrap()),
                        });
                    };
                    if c.is_zero() {
                        return Err(ParseError::DivisionByZero { pos });
                    }
                    acc = acc.scale(&c.inv().expect("divisor nonzero"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> PResult<Poly> {
        let (base, n) = self.factor_split()?;
        Ok(base.pow(n))
    }

    /// A factor as (base, exponent), leaving the power unexpanded.
    fn factor_split(&mut self) -> PResult<(Poly, u32)> {
        let base = self.base()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok((base, 1));
        }
        let caret_pos = self.pos();
        self.idx += 1;
        if self.peek() == Some(&Tok::Minus) {
            return Err(ParseError::NegativeExponent { pos: self.pos() });
        }
        let Some(Tok::Int(digits)) = self.peek().cloned() else {
            return Err(self.syntax("an exponent"));
        };
        self.idx += 1;
        let n: u32 = digits.parse().map_err(|_| ParseError::DegreeCapExceeded {
            pos: caret_pos,
            got: usize::MAX,
            cap: self.degree_cap,
        })?;
        if let Some(d) = base.deg_opt() {
            if d.saturating_mul(n as usize) > self.degree_cap {
                return Err(ParseError::DegreeCapExceeded {
                    pos: caret_pos,
                    got: d * n as usize,
                    cap: self.degree_cap,
                });
            }
        }
        Ok((base, n))
    }

    fn base(&mut self) -> PResult<Poly> {
        match self.bump() {
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(Tok::Int(digits)) => {
                let n: BigInt = digits.parse().expect("digits");
                Ok(Poly::constant(ScalarElem::from_rational(
                    Rational::from_integer(n),
                )))
            }
            Some(Tok::Ident(name)) => {
                self.idx -= 1; // re-read for position reporting
                let pos = self.pos();
                self.idx += 1;
                match name.as_str() {
                    "z" if self.allow_z => Ok(Poly::z()),
                    "z" => Err(ParseError::Syntax {
                        pos,
                        expected: "a scalar (z is not allowed here)".into(),
                        found: "'z'".into(),
                    }),
                    "i" => Ok(Poly::constant(ScalarElem::i())),
                    "t1" | "t2" | "t3" => {
                        let idx = name[1..].parse::<usize>().unwrap() - 1;
                        if idx >= self.m {
                            return Err(ParseError::Syntax {
                                pos,
                                expected: format!(
                                    "a transcendental within the session count m = {}",
                                    self.m
                                ),
                                found: format!("'{name}'"),
                            });
                        }
                        Ok(Poly::constant(
                            ScalarElem::var(idx).expect("idx below the cap"),
                        ))
                    }
                    _ => Err(ParseError::Syntax {
                        pos,
                        expected: "'z', 'i', 't1', 't2' or 't3'".into(),
                        found: format!("'{name}'"),
                    }),
                }
            }
            _ => {
                self.idx = self.idx.saturating_sub(1);
                Err(self.syntax("'(', an integer, 'z', 'i' or a transcendental"))
            }
        }
    }

    fn finish(&self) -> PResult<()> {
        if self.idx == self.toks.len() {
            Ok(())
        } else {
            Err(self.syntax("end of input"))
        }
    }
}

fn parser(text: &str, allow_z: bool, m: usize, degree_cap: usize) -> PResult<Parser> {
    Ok(Parser {
        toks: tokenize(text)?,
        idx: 0,
        end: text.len(),
        allow_z,
        m,
        degree_cap,
    })
}

/// Parses a polynomial in z with scalar coefficients.
pub fn parse_poly(text: &str, m: usize, degree_cap: usize) -> PResult<Poly> {
    let mut p = parser(text, true, m, degree_cap)?;
    let poly = p.expr()?;
    p.finish()?;
    Ok(poly)
}

/// Parses a scalar (the same grammar with z forbidden).
pub fn parse_scalar(text: &str, m: usize, degree_cap: usize) -> PResult<ScalarElem> {
    let mut p = parser(text, false, m, degree_cap)?;
    let poly = p.expr()?;
    p.finish()?;
    Ok(poly.as_constant().expect("z is forbidden"))
}

/// Parses an expression as a product of factors, kept split: the result is
/// the list of (factor, multiplicity) pairs of one term. Used by the real
/// entry point, which needs linear and quadratic factors individually.
pub fn parse_product(text: &str, m: usize, degree_cap: usize) -> PResult<Vec<(Poly, u32)>> {
    let mut p = parser(text, true, m, degree_cap)?;
    let mut factors: Vec<(Poly, u32)> = Vec::new();
    if p.peek() == Some(&Tok::Minus) {
        p.idx += 1;
        factors.push((Poly::constant(ScalarElem::from_int(-1)), 1));
    }
    loop {
        factors.push(p.factor_split()?);
        match p.peek() {
            Some(Tok::Star) => {
                p.idx += 1;
            }
            None => break,
            _ => return Err(p.syntax("'*' or end of input")),
        }
    }
    p.finish()?;
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use leibniz_core::scalar::{rat, GaussianRational};
    use proptest::prelude::*;

    fn poly(text: &str) -> Poly {
        parse_poly(text, 3, 64).unwrap()
    }

    fn int(n: i64) -> ScalarElem {
        ScalarElem::from_int(n)
    }

    #[test]
    fn expands_products_of_binomials() {
        // (z−1)²(z+2) = z³ − 3z + 2
        let p = poly("(z-1)^2*(z+2)");
        assert_eq!(p, Poly::new(vec![int(2), int(-3), int(0), int(1)]));
    }

    #[test]
    fn scalar_coefficients() {
        assert_eq!(poly("i*z^2"), Poly::monomial(ScalarElem::i(), 2));
        assert_eq!(
            poly("3/4*z - 1/2"),
            Poly::new(vec![
                ScalarElem::from_rational(rat(-1, 2)),
                ScalarElem::from_rational(rat(3, 4)),
            ])
        );
    }

    #[test]
    fn unary_minus_binds_the_term() {
        assert_eq!(poly("-z^2 + 1"), Poly::new(vec![int(1), int(0), int(-1)]));
        assert_eq!(poly("-2*z"), Poly::monomial(int(-2), 1));
    }

    #[test]
    fn negative_exponents_are_rejected() {
        assert_eq!(
            parse_poly("z^-1", 1, 64),
            Err(ParseError::NegativeExponent { pos: 2 })
        );
    }

    #[test]
    fn degree_cap_is_enforced() {
        assert!(matches!(
            parse_poly("z^65", 1, 64),
            Err(ParseError::DegreeCapExceeded {
                got: 65,
                cap: 64,
                ..
            })
        ));
        assert!(matches!(
            parse_poly("z^40*z^40", 1, 64),
            Err(ParseError::DegreeCapExceeded { .. })
        ));
        assert!(parse_poly("z^64", 1, 64).is_ok());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_poly("z + * 2", 1, 64).unwrap_err();
        assert_eq!(err.position(), 4);
        let err = parse_poly("2*(z+1", 1, 64).unwrap_err();
        assert_eq!(err.position(), 6);
        let err = parse_poly("2 q", 1, 64).unwrap_err();
        assert_eq!(err.position(), 2);
    }

    #[test]
    fn no_implicit_multiplication() {
        assert!(parse_poly("2i", 1, 64).is_err());
        assert!(parse_poly("2*i", 1, 64).is_ok());
        assert!(parse_poly("2z", 1, 64).is_err());
    }

    #[test]
    fn division_requires_constant_divisors() {
        assert_eq!(
            parse_scalar("t1/(t1+1)", 1, 64).unwrap(),
            ScalarElem::var(0)
                .unwrap()
                .div(&(&ScalarElem::var(0).unwrap() + &int(1)))
                .unwrap()
        );
        assert_eq!(
            parse_poly("1/0", 1, 64),
            Err(ParseError::DivisionByZero { pos: 1 })
        );
        assert!(matches!(
            parse_poly("1/z", 1, 64),
            Err(ParseError::Syntax { pos: 1, .. })
        ));
    }

    #[test]
    fn scalar_mode_rejects_z() {
        assert!(matches!(
            parse_scalar("z + 1", 1, 64),
            Err(ParseError::Syntax { pos: 0, .. })
        ));
        assert_eq!(
            parse_scalar("2*i", 1, 64).unwrap(),
            &int(2) * &ScalarElem::i()
        );
    }

    #[test]
    fn transcendental_count_is_gated() {
        assert!(parse_scalar("t2", 1, 64).is_err());
        assert!(parse_scalar("t2", 2, 64).is_ok());
        assert!(parse_scalar("t3", 3, 64).is_ok());
    }

    #[test]
    fn product_splitting_keeps_factors() {
        let factors = parse_product("2*(z-1)*(z^2+1)", 3, 64).unwrap();
        assert_eq!(factors.len(), 3);
        assert_eq!(factors[0].0, Poly::constant(int(2)));
        assert_eq!(factors[1].0, Poly::new(vec![int(-1), int(1)]));
        assert_eq!(factors[2].0, Poly::new(vec![int(1), int(0), int(1)]));
        // sums at the top level are not product forms
        assert!(parse_product("z + 1", 3, 64).is_err());
    }

    fn coeff_strategy() -> impl Strategy<Value = ScalarElem> {
        let rational = (-9i64..=9, 1i64..=4, -9i64..=9, 1i64..=4).prop_map(|(rn, rd, im, id)| {
            ScalarElem::from_gaussian(GaussianRational::new(rat(rn, rd), rat(im, id)))
        });
        let t_fraction = (-3i64..=3, -3i64..=3, 1i64..=3).prop_map(|(a, b, d)| {
            let t = ScalarElem::var(0).unwrap();
            let affine = &(&t * &int(a)) + &int(b);
            affine.div(&int(d)).unwrap()
        });
        prop_oneof![3 => rational, 1 => t_fraction]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        /// The canonical printer emits text the grammar maps back to the
        /// identical dense polynomial, coefficient for coefficient.
        #[test]
        fn printing_then_parsing_is_the_identity(
            coeffs in prop::collection::vec(coeff_strategy(), 1..7)
        ) {
            let p = Poly::new(coeffs);
            let text = p.to_string();
            let back = parse_poly(&text, 3, 64).expect("canonical output re-parses");
            prop_assert_eq!(back, p);
        }
    }
}
