//! Recursive-descent parser for the polynomial input language.
//!
//! ```text
//! expr    := ['-'] term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := base ('^' natural)?
//! base    := literal | variable | '(' expr ')'
//! literal := integer | integer '/' positive-integer
//! ```
//!
//! Multiplication is always explicit; whitespace is ignored.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::poly::{Polynomial, Ring};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let token = match c {
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::Open,
            ')' => Token::Close,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Token::Int(text[start..i].to_string())));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    position: start,
                    message: alloc::format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((start, token));
        i += 1;
    }
    out.push((text.len(), Token::End));
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    at: usize,
    ring: &'a Arc<Ring>,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.at].1
    }

    fn position(&self) -> usize {
        self.tokens[self.at].0
    }

    fn bump(&mut self) -> (usize, Token) {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, message: &str) -> Result<T> {
        Err(Error::Syntax { position: self.position(), message: message.to_string() })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let negate = if *self.peek() == Token::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Token::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Token::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while *self.peek() == Token::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if *self.peek() != Token::Caret {
            return Ok(base);
        }
        self.bump();
        match self.bump() {
            (pos, Token::Int(digits)) => {
                let exp: u32 = digits
                    .parse()
                    .map_err(|_| Error::InvalidLiteral { position: pos, literal: digits.clone() })?;
                Ok(base.pow(exp))
            }
            (pos, _) => Err(Error::Syntax { position: pos, message: "expected a natural exponent".to_string() }),
        }
    }

    fn base(&mut self) -> Result<Polynomial> {
        match self.bump() {
            (pos, Token::Int(digits)) => {
                let numerator: BigInt = digits.parse().expect("digits");
                if *self.peek() != Token::Slash {
                    return Ok(Polynomial::constant(self.ring, self.ring.field().from_bigint(&numerator)));
                }
                self.bump();
                match self.bump() {
                    (_, Token::Int(den_digits)) => {
                        let denominator: BigInt = den_digits.parse().expect("digits");
                        let literal = alloc::format!("{digits}/{den_digits}");
                        let value = self
                            .ring
                            .field()
                            .from_fraction(&numerator, &denominator)
                            .map_err(|_| Error::InvalidLiteral { position: pos, literal })?;
                        Ok(Polynomial::constant(self.ring, value))
                    }
                    (p, _) => Err(Error::Syntax { position: p, message: "expected a denominator".to_string() }),
                }
            }
            (pos, Token::Ident(name)) => match self.ring.position(&name) {
                Some(i) => Ok(Polynomial::var(self.ring, i)),
                None => Err(Error::UnknownVariable { position: pos, name }),
            },
            (_, Token::Open) => {
                let inner = self.expr()?;
                match self.bump() {
                    (_, Token::Close) => Ok(inner),
                    (p, _) => Err(Error::Syntax { position: p, message: "expected `)`".to_string() }),
                }
            }
            (pos, Token::End) => Err(Error::Syntax { position: pos, message: "unexpected end of input".to_string() }),
            (pos, t) => Err(Error::Syntax { position: pos, message: alloc::format!("unexpected {}", describe(&t)) }),
        }
    }
}

fn describe(t: &Token) -> &'static str {
    match t {
        Token::Int(_) => "number",
        Token::Ident(_) => "identifier",
        Token::Plus => "`+`",
        Token::Minus => "`-`",
        Token::Star => "`*`",
        Token::Slash => "`/`",
        Token::Caret => "`^`",
        Token::Open => "`(`",
        Token::Close => "`)`",
        Token::End => "end of input",
    }
}

/// Parse `text` into a polynomial of `ring`.
pub fn parse_polynomial(text: &str, ring: &Arc<Ring>) -> Result<Polynomial> {
    let mut parser = Parser { tokens: tokenize(text)?, at: 0, ring };
    let p = parser.expr()?;
    match parser.peek() {
        Token::End => Ok(p),
        t => {
            let what = describe(t);
            parser.syntax(&alloc::format!("unexpected {what} after expression"))
        }
    }
}

/// Parse an exponent tuple such as `(1,0,2)`.
pub fn parse_multi_index(text: &str, vars: usize) -> Result<MultiIndex> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Syntax { position: 0, message: "expected `(a1,...,as)`".to_string() })?;
    let mut exps = Vec::new();
    for part in inner.split(',') {
        let part = part.trim();
        exps.push(part.parse::<u32>().map_err(|_| Error::InvalidLiteral { position: 0, literal: part.to_string() })?);
    }
    if exps.len() != vars {
        return Err(Error::DimensionMismatch { expected: vars, found: exps.len() });
    }
    Ok(MultiIndex::new(exps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldSpec;
    use alloc::vec;
    use proptest::prelude::*;

    fn mi(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    #[test]
    fn cusp() {
        let r = Ring::standard(2, FieldSpec::RATIONALS);
        let f = parse_polynomial("x1^3 - x2^2", &r).unwrap();
        let terms: Vec<_> = f.terms().map(|(m, c)| (m.clone(), c.to_string())).collect();
        assert_eq!(terms, vec![(mi(&[3, 0]), "1".to_string()), (mi(&[0, 2]), "-1".to_string())]);
    }

    #[test]
    fn zero_and_suzuki() {
        let r = Ring::standard(4, FieldSpec::RATIONALS);
        assert!(parse_polynomial("0", &r).unwrap().is_zero());
        let f = parse_polynomial("x2^2 - x1*x3", &r).unwrap();
        assert_eq!(f.coefficient(&mi(&[0, 2, 0, 0])).to_string(), "1");
        assert_eq!(f.coefficient(&mi(&[1, 0, 1, 0])).to_string(), "-1");
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn grammar_details() {
        let r = Ring::new(["x", "y_2"], FieldSpec::RATIONALS);
        let a = parse_polynomial(" - (x + 1)^2 * y_2 + 3/6 ", &r).unwrap();
        let b = parse_polynomial("-x^2*y_2 - 2*x*y_2 - y_2 + 1/2", &r).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors_carry_positions() {
        let r = Ring::standard(2, FieldSpec::RATIONALS);
        assert!(matches!(parse_polynomial("x1 x2", &r), Err(Error::Syntax { position: 3, .. })));
        assert!(matches!(
            parse_polynomial("x1 + z", &r),
            Err(Error::UnknownVariable { position: 5, ref name }) if name == "z"
        ));
        assert!(matches!(parse_polynomial("1/0", &r), Err(Error::InvalidLiteral { position: 0, .. })));
        assert!(matches!(parse_polynomial("x1^", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("(x1", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("x1 * -x2", &r), Err(Error::Syntax { position: 5, .. })));
        assert!(matches!(parse_polynomial("2x1", &r), Err(Error::Syntax { position: 1, .. })));
        assert!(matches!(parse_polynomial("x1 $", &r), Err(Error::Syntax { position: 3, .. })));
        let r3 = Ring::standard(2, FieldSpec::new(3).unwrap());
        assert!(matches!(parse_polynomial("x1/3", &r3), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("1/3", &r3), Err(Error::InvalidLiteral { .. })));
        assert_eq!(parse_polynomial("1/2", &r3).unwrap().to_string(), "2");
    }

    #[test]
    fn multi_index_syntax() {
        assert_eq!(parse_multi_index("(1, 0,2)", 3).unwrap(), mi(&[1, 0, 2]));
        assert!(parse_multi_index("(1,0)", 3).is_err());
        assert!(parse_multi_index("1,0", 2).is_err());
    }

    const GOLDEN: &[&str] = &[
        "x1^3 - x2^2",
        "x2^2 - x1*x3",
        "x3^2 - x2*x4",
        "x2*x3 - x1*x4",
        "3*x1^2",
        "-2*x2",
        "-1",
        "0",
        "1/2*x1*x2^3 - 7/3",
        "(x1 - x2)^5 + x3*x4",
    ];

    #[test]
    fn golden_round_trip() {
        for spec in [FieldSpec::RATIONALS, FieldSpec::new(5).unwrap()] {
            let r = Ring::standard(4, spec);
            for text in GOLDEN {
                let p = parse_polynomial(text, &r).unwrap();
                let again = parse_polynomial(&p.to_string(), &r).unwrap();
                assert_eq!(p, again, "{text}");
                assert_eq!(p.to_string(), again.to_string());
            }
        }
    }

    proptest! {
        #[test]
        fn print_parse_fixed_point(
            terms in proptest::collection::vec(((0u32..4, 0u32..4, 0u32..3), -9i64..10, 1i64..5), 0..6)
        ) {
            let r = Ring::standard(3, FieldSpec::RATIONALS);
            let p = Polynomial::from_terms(&r, terms.into_iter().map(|((a, b, c), n, d)| {
                (mi(&[a, b, c]), r.field().from_fraction(&n.into(), &d.into()).unwrap())
            }));
            prop_assert_eq!(parse_polynomial(&p.to_string(), &r).unwrap(), p);
        }
    }
}
