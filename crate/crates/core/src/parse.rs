//! Parser for the polynomial expression grammar.
//!
//! ```text
//! poly   := ['-'] term (('+'|'-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := 'x' INDEX ('^' SIGNED_INT)?
//! coeff  := SIGNED_INT ('/' POSITIVE_INT)?
//! ```
//!
//! Whitespace between tokens is ignored. Variable indices are 1-based.
//! Error offsets are byte offsets into the input. For syntax errors the
//! offset is the position just past the last token that was consumed, i.e.
//! where the parser started looking for the missing piece.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::laurent::{LaurentPolynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at offset {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: expected {0}")]
    Expected(&'static str),
    #[error("variable index {index} out of range 1..={nvars}")]
    IndexOutOfRange { index: String, nvars: usize },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("exponent out of range")]
    ExponentOverflow,
}

impl ParseError {
    pub fn is_syntax(&self) -> bool {
        matches!(self.kind, ParseErrorKind::Expected(_))
    }
}

/// Parse `text` as an element of `S_n`.
pub fn parse_laurent(text: &str, nvars: usize) -> Result<LaurentPolynomial, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        nvars,
    };
    let poly = p.poly()?;
    if p.peek().is_some() {
        return Err(p.expected("'+', '-', '*' or end of input"));
    }
    Ok(poly)
}

/// Parse a rational literal `p` or `p/q`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        nvars: 0,
    };
    let r = p.coeff()?;
    if p.peek().is_some() {
        return Err(p.expected("end of rational"));
    }
    Ok(r)
}

struct Parser<'a> {
    src: &'a [u8],
    /// Just past the last consumed token.
    pos: usize,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&self) -> usize {
        let mut i = self.pos;
        while i < self.src.len() && self.src[i].is_ascii_whitespace() {
            i += 1;
        }
        i
    }

    /// Next non-whitespace byte and its offset, without consuming it.
    fn peek(&self) -> Option<(usize, u8)> {
        let i = self.skip_ws();
        self.src.get(i).map(|&b| (i, b))
    }

    fn eat(&mut self, want: u8) -> bool {
        match self.peek() {
            Some((i, b)) if b == want => {
                self.pos = i + 1;
                true
            }
            _ => false,
        }
    }

    fn expected(&self, what: &'static str) -> ParseError {
        ParseError {
            offset: self.pos,
            kind: ParseErrorKind::Expected(what),
        }
    }

    /// Digit run; returns (start offset, digits).
    fn digits(&mut self, what: &'static str) -> Result<(usize, &'a str), ParseError> {
        let start = match self.peek() {
            Some((i, b)) if b.is_ascii_digit() => i,
            _ => return Err(self.expected(what)),
        };
        let mut end = start;
        while end < self.src.len() && self.src[end].is_ascii_digit() {
            end += 1;
        }
        self.pos = end;
        // ASCII digits only, so this cannot fail.
        let src: &'a [u8] = self.src;
        Ok((start, std::str::from_utf8(&src[start..end]).unwrap()))
    }

    fn signed_int(&mut self, what: &'static str) -> Result<(usize, BigInt), ParseError> {
        let neg = self.eat(b'-');
        let (start, d) = self.digits(what)?;
        let v: BigInt = d.parse().expect("digit run parses");
        Ok((start, if neg { -v } else { v }))
    }

    fn poly(&mut self) -> Result<LaurentPolynomial, ParseError> {
        let mut acc = LaurentPolynomial::zero(self.nvars);
        let mut negate = self.eat(b'-');
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPolynomial, ParseError> {
        let mut coeff = Rational::one();
        let mut exponent = vec![0i64; self.nvars];
        match self.peek() {
            Some((_, b)) if b == b'-' || b.is_ascii_digit() => {
                coeff = self.coeff()?;
                while self.eat(b'*') {
                    self.factor(&mut exponent)?;
                }
            }
            Some((_, b'x')) => {
                self.factor(&mut exponent)?;
                while self.eat(b'*') {
                    self.factor(&mut exponent)?;
                }
            }
            _ => return Err(self.expected("a term")),
        }
        Ok(LaurentPolynomial::monomial(exponent, coeff))
    }

    fn coeff(&mut self) -> Result<Rational, ParseError> {
        let (_, num) = self.signed_int("an integer coefficient")?;
        if self.eat(b'/') {
            let (start, d) = self.digits("a positive denominator")?;
            let den: BigInt = d.parse().expect("digit run parses");
            if den.is_zero() {
                return Err(ParseError {
                    offset: start,
                    kind: ParseErrorKind::ZeroDenominator,
                });
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn factor(&mut self, exponent: &mut [i64]) -> Result<(), ParseError> {
        let start = match self.peek() {
            Some((i, b'x')) => i,
            _ => return Err(self.expected("a variable")),
        };
        self.pos = start + 1;
        let (_, idx) = self.digits("a variable index")?;
        let index = idx
            .parse::<usize>()
            .ok()
            .filter(|&i| i >= 1 && i <= self.nvars)
            .ok_or_else(|| ParseError {
                offset: start,
                kind: ParseErrorKind::IndexOutOfRange {
                    index: idx.to_string(),
                    nvars: self.nvars,
                },
            })?;
        let mut power = 1i64;
        if self.eat(b'^') {
            let (at, v) = self.signed_int("an integer exponent")?;
            power = i64::try_from(v).map_err(|_| ParseError {
                offset: at,
                kind: ParseErrorKind::ExponentOverflow,
            })?;
        }
        let slot = &mut exponent[index - 1];
        *slot = slot.checked_add(power).ok_or(ParseError {
            offset: start,
            kind: ParseErrorKind::ExponentOverflow,
        })?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::rat;

    #[test]
    fn cancellation_gives_zero() {
        assert!(parse_laurent("x1*x2 - x1*x2", 2).unwrap().is_zero());
    }

    #[test]
    fn reads_grammar_directly() {
        let f = parse_laurent("3*x1^2*x2^-1 + 1/2", 2).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.coefficient(&[2, -1]), rat(3, 1));
        assert_eq!(f.coefficient(&[0, 0]), rat(1, 2));
    }

    #[test]
    fn index_out_of_range() {
        let e = parse_laurent("x1 + x7", 2).unwrap_err();
        assert_eq!(e.offset, 5);
        assert!(matches!(e.kind, ParseErrorKind::IndexOutOfRange { .. }));
        assert!(parse_laurent("x0", 2).is_err());
    }

    #[test]
    fn syntax_error_offset() {
        let e = parse_laurent("x1 +* x2", 2).unwrap_err();
        assert!(e.is_syntax());
        assert_eq!(e.offset, 4);
        assert_eq!(parse_laurent("", 1).unwrap_err().offset, 0);
        assert_eq!(parse_laurent("x1 x2", 2).unwrap_err().offset, 2);
        assert!(parse_laurent("x1^", 1).is_err());
        assert!(parse_laurent("x1*3", 1).is_err());
    }

    #[test]
    fn zero_denominator() {
        let e = parse_laurent("x1 + 3/0", 1).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::ZeroDenominator);
        assert_eq!(e.offset, 7);
    }

    #[test]
    fn signs_and_repeats() {
        let f = parse_laurent("-x1 - -2*x1*x1^-1 + x1^0", 1).unwrap();
        assert_eq!(
            f,
            LaurentPolynomial::from_int_terms(1, &[(&[1], -1, 1), (&[0], 3, 1)]).unwrap()
        );
        let g = parse_laurent("  x1 * x2 ^ 2 ", 2).unwrap();
        assert_eq!(g.coefficient(&[1, 2]), rat(1, 1));
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("5").unwrap(), rat(5, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x1").is_err());
    }
}
