//! Polynomial expression parser.
//!
//! Grammar: integer and rational literals (`-3/4`), variable identifiers,
//! `+ - * ^`, parentheses. Juxtaposition is not multiplication (`2x` is
//! rejected; write `2*x`). Exponents are nonnegative integer literals.
//! Whitespace is insignificant.
//!
//! The parser is exposed to untrusted input (CLI files, fuzzing), so it
//! never panics: exponents are capped, expansion is capped by term count,
//! and recursion is depth-limited. All failures are typed errors.

use crate::poly::Poly;
use crate::rational::Q;
use crate::ring::PolyRing;
use num_bigint::BigInt;
use thiserror::Error;

/// Largest literal exponent the parser accepts.
pub const MAX_EXPONENT: u32 = 512;
/// Largest number of terms an expression may expand to.
pub const TERM_CAP: usize = 100_000;
/// Maximum expression nesting depth.
pub const DEPTH_CAP: usize = 64;
/// Total multiplication work (term-pair visits) allowed while expanding one
/// expression. Keeps short adversarial inputs — nested powers of dense
/// polynomials — from taking unbounded time even when every intermediate
/// stays under the term cap. Coefficients of repeated powers grow to
/// hundreds of digits, so each pair visit can cost tens of microseconds;
/// the budget is sized to bound worst-case parse time at a few seconds.
pub const WORK_BUDGET: u64 = 250_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {ch:?} at byte {at}")]
    UnexpectedChar { ch: char, at: usize },
    #[error("unknown variable {name:?} at byte {at}")]
    UnknownVariable { name: String, at: usize },
    #[error("unexpected end of expression")]
    UnexpectedEnd,
    #[error("expected {expected} at byte {at}")]
    Expected { expected: &'static str, at: usize },
    #[error("exponent at byte {at} exceeds the maximum of {max}")]
    ExponentTooLarge { at: usize, max: u32 },
    #[error("zero denominator at byte {at}")]
    ZeroDenominator { at: usize },
    #[error("expression nesting exceeds the depth limit of {limit}")]
    TooDeep { limit: usize },
    #[error("expression expands past the term limit of {limit}")]
    TooManyTerms { limit: usize },
    #[error("expression exceeds the expansion work budget")]
    TooMuchWork,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            b'^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            b'/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            b'(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((start, Tok::Num(src[start..i].to_string())));
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Ident(src[start..i].to_string())));
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(ParseError::UnexpectedChar { ch, at: i });
            }
        }
    }
    Ok(toks)
}

struct Parser<'r> {
    ring: &'r PolyRing,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    budget: crate::poly::ExpandBudget,
}

fn overflow(e: crate::poly::PolyOverflow) -> ParseError {
    match e {
        crate::poly::PolyOverflow::Terms => ParseError::TooManyTerms { limit: TERM_CAP },
        crate::poly::PolyOverflow::Work => ParseError::TooMuchWork,
    }
}

impl<'r> Parser<'r> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(a, _)| *a)
            .unwrap_or(usize::MAX)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn check_terms(&mut self, p: Poly) -> Result<Poly, ParseError> {
        if p.num_terms() > TERM_CAP {
            return Err(ParseError::TooManyTerms { limit: TERM_CAP });
        }
        // Charge additions against the same budget as multiplications so a
        // long chain of large sums stays bounded too.
        let cost = p.num_terms() as u64;
        if cost > self.budget.work {
            return Err(ParseError::TooMuchWork);
        }
        self.budget.work -= cost;
        Ok(p)
    }

    fn expr(&mut self, depth: usize) -> Result<Poly, ParseError> {
        if depth > DEPTH_CAP {
            return Err(ParseError::TooDeep { limit: DEPTH_CAP });
        }
        let mut acc = self.term(depth)?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let rhs = self.term(depth)?;
                    acc = self.check_terms(acc.add(&rhs))?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let rhs = self.term(depth)?;
                    acc = self.check_terms(acc.sub(&rhs))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self, depth: usize) -> Result<Poly, ParseError> {
        let mut acc = self.factor(depth)?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            let rhs = self.factor(depth)?;
            acc = acc.mul_budgeted(&rhs, &mut self.budget).map_err(overflow)?;
        }
        Ok(acc)
    }

    fn factor(&mut self, depth: usize) -> Result<Poly, ParseError> {
        if depth > DEPTH_CAP {
            return Err(ParseError::TooDeep { limit: DEPTH_CAP });
        }
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(self.factor(depth + 1)?.neg())
            }
            Some(Tok::Plus) => {
                self.bump();
                self.factor(depth + 1)
            }
            _ => {
                let base = self.atom(depth)?;
                if let Some(Tok::Caret) = self.peek() {
                    self.bump();
                    let e = self.exponent()?;
                    base.pow_budgeted(e, &mut self.budget).map_err(overflow)
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let at = self.at();
        match self.bump() {
            Some(Tok::Num(d)) => {
                let e: u32 = d.parse().map_err(|_| ParseError::ExponentTooLarge {
                    at,
                    max: MAX_EXPONENT,
                })?;
                if e > MAX_EXPONENT {
                    return Err(ParseError::ExponentTooLarge {
                        at,
                        max: MAX_EXPONENT,
                    });
                }
                Ok(e)
            }
            Some(_) => Err(ParseError::Expected {
                expected: "integer exponent",
                at,
            }),
            None => Err(ParseError::UnexpectedEnd),
        }
    }

    fn atom(&mut self, depth: usize) -> Result<Poly, ParseError> {
        let at = self.at();
        match self.bump() {
            Some(Tok::Num(num)) => {
                let num: BigInt = num.parse().expect("digit string");
                // A slash directly after a number forms a rational literal;
                // there is no general division operator.
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    let dat = self.at();
                    match self.bump() {
                        Some(Tok::Num(den)) => {
                            let den: BigInt = den.parse().expect("digit string");
                            if den == BigInt::from(0) {
                                return Err(ParseError::ZeroDenominator { at: dat });
                            }
                            Ok(Poly::constant(self.ring, Q::new(num, den)))
                        }
                        Some(_) => Err(ParseError::Expected {
                            expected: "denominator",
                            at: dat,
                        }),
                        None => Err(ParseError::UnexpectedEnd),
                    }
                } else {
                    Ok(Poly::constant(self.ring, Q::from_integer(num)))
                }
            }
            Some(Tok::Ident(name)) => match self.ring.var_index(&name) {
                Some(i) => Ok(Poly::var(self.ring, i)),
                None => Err(ParseError::UnknownVariable { name, at }),
            },
            Some(Tok::LParen) => {
                let inner = self.expr(depth + 1)?;
                let cat = self.at();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    Some(_) => Err(ParseError::Expected {
                        expected: "')'",
                        at: cat,
                    }),
                    None => Err(ParseError::UnexpectedEnd),
                }
            }
            Some(_) => Err(ParseError::Expected {
                expected: "literal, variable, or '('",
                at,
            }),
            None => Err(ParseError::UnexpectedEnd),
        }
    }
}

pub fn parse_poly(ring: &PolyRing, src: &str) -> Result<Poly, ParseError> {
    let toks = lex(src)?;
    let mut parser = Parser {
        ring,
        toks,
        pos: 0,
        budget: crate::poly::ExpandBudget {
            term_cap: TERM_CAP,
            work: WORK_BUDGET,
        },
    };
    let p = parser.expr(0)?;
    if parser.pos != parser.toks.len() {
        return Err(ParseError::Expected {
            expected: "operator or end of expression",
            at: parser.at(),
        });
    }
    Ok(p)
}

/// Parse a standalone rational literal (optionally signed).
pub fn parse_rational(src: &str) -> Result<Q, ParseError> {
    let scratch = PolyRing::new(Vec::<String>::new(), crate::order::MonomialOrder::GrevLex);
    let p = parse_poly(&scratch, src)?;
    Ok(p.constant_part())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::MonomialOrder;
    use crate::rational::{q, qi};

    fn ring() -> PolyRing {
        PolyRing::new(vec!["x", "y", "z"], MonomialOrder::GrevLex)
    }

    #[test]
    fn literals_and_signs() {
        let r = ring();
        assert_eq!(parse_poly(&r, "-3/4").unwrap(), Poly::constant(&r, q(-3, 4)));
        assert_eq!(parse_poly(&r, "+7").unwrap(), Poly::constant(&r, qi(7)));
        assert_eq!(parse_poly(&r, "--2").unwrap(), Poly::constant(&r, qi(2)));
        assert_eq!(parse_rational("22/7").unwrap(), q(22, 7));
    }

    #[test]
    fn precedence() {
        let r = ring();
        let f = parse_poly(&r, "x + 2*y^3 - z*(x - 1)").unwrap();
        let g = parse_poly(&r, "2*y^3 - x*z + x + z").unwrap();
        assert_eq!(f, g);
        // Unary minus binds the whole power: -x^2 == -(x^2).
        assert_eq!(
            parse_poly(&r, "-x^2").unwrap(),
            parse_poly(&r, "0 - x^2").unwrap()
        );
    }

    #[test]
    fn juxtaposition_rejected() {
        let r = ring();
        assert!(parse_poly(&r, "2x").is_err());
        assert!(parse_poly(&r, "x y").is_err());
        assert!(parse_poly(&r, "(x)(y)").is_err());
    }

    #[test]
    fn malformed_input_is_typed_error() {
        let r = ring();
        assert!(matches!(
            parse_poly(&r, "x + w"),
            Err(ParseError::UnknownVariable { .. })
        ));
        assert!(matches!(
            parse_poly(&r, "1/0"),
            Err(ParseError::ZeroDenominator { .. })
        ));
        assert!(matches!(
            parse_poly(&r, "x^"),
            Err(ParseError::UnexpectedEnd)
        ));
        assert!(matches!(
            parse_poly(&r, "x^y"),
            Err(ParseError::Expected { .. })
        ));
        assert!(matches!(
            parse_poly(&r, "x $ y"),
            Err(ParseError::UnexpectedChar { .. })
        ));
        assert!(parse_poly(&r, "").is_err());
        assert!(parse_poly(&r, "x/2").is_err());
    }

    /// `(v^(2^(k-1))+1)*...*(v^2+1)*(v+1)`: a dense polynomial with 2^k
    /// terms, all coefficients 1, built with only ~2^(k+1) work.
    fn dense(v: &str, k: u32) -> String {
        (0..k)
            .rev()
            .map(|j| format!("({v}^{}+1)", 1u32 << j))
            .collect::<Vec<_>>()
            .join("*")
    }

    #[test]
    fn caps_enforced() {
        let r = ring();
        assert!(matches!(
            parse_poly(&r, "x^99999"),
            Err(ParseError::ExponentTooLarge { .. })
        ));
        let deep = format!("{}x{}", "(".repeat(100), ")".repeat(100));
        assert!(matches!(
            parse_poly(&r, &deep),
            Err(ParseError::TooDeep { .. })
        ));
        // 512-term times 256-term product: cheap coefficients, one mul with
        // 131072 distinct results — the term cap fires.
        let input = format!("{} * ({})", dense("x", 9), dense("y", 8));
        assert!(matches!(
            parse_poly(&r, &input),
            Err(ParseError::TooManyTerms { .. })
        ));
        // Squaring a 512-term polynomial needs 262144 pair visits, over the
        // work budget in one step — rejected up front, before any work.
        let input = format!("({})^2", dense("x", 9));
        assert!(matches!(
            parse_poly(&r, &input),
            Err(ParseError::TooMuchWork)
        ));
        // Classic blowup input lands on one of the two expansion caps.
        let err = parse_poly(&r, "(x + y + z + 1)^512").unwrap_err();
        assert!(matches!(
            err,
            ParseError::TooMuchWork | ParseError::TooManyTerms { .. }
        ));
    }

    #[test]
    fn whitespace_insignificant() {
        let r = ring();
        assert_eq!(
            parse_poly(&r, " x +\t2 * y ").unwrap(),
            parse_poly(&r, "x+2*y").unwrap()
        );
        assert_eq!(
            parse_poly(&r, "3 / 4").unwrap(),
            parse_poly(&r, "3/4").unwrap()
        );
    }

    #[test]
    fn internal_names_unreachable() {
        // '#'-prefixed ring variables can never be produced by the lexer, so
        // elimination tags cannot collide with user input.
        let r = PolyRing::new(vec!["#0", "x"], MonomialOrder::Elim(1));
        assert!(matches!(
            parse_poly(&r, "#0"),
            Err(ParseError::UnexpectedChar { .. })
        ));
        assert!(parse_poly(&r, "x^2").is_ok());
    }
}
