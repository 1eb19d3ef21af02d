//! Text grammar for symbols.
//!
//! ```text
//! symbol  := [header] term ( '+' term )*
//! header  := 'vars' '=' integer ';'
//! term    := coeff '*' word | coeff word | word
//! word    := ( 'X' integer )+
//! coeff   := integer | decimal | integer '/' integer
//! ```
//!
//! Whitespace between tokens is ignored. Decimal literals convert exactly to
//! rationals (`0.25` is `1/4`), duplicate monomials are summed, and the arity
//! is the largest letter index unless a `vars=n;` header overrides it.

use num_bigint::BigInt;
use num_traits::Zero;

use super::rat::{decimal_to_rat, Rat};
use super::word::Word;
use super::{Symbol, SymbolError};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Star,
    Slash,
    Eq,
    Semi,
    X,
    Vars,
    Int(String),
    Decimal { int: String, frac: String },
    Eof,
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

fn err(pos: usize, msg: impl Into<String>) -> SymbolError {
    SymbolError::Parse {
        pos,
        msg: msg.into(),
    }
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Next token with its starting byte offset.
    fn next(&mut self) -> Result<(usize, Tok), SymbolError> {
        self.skip_ws();
        let start = self.pos;
        if self.pos >= self.bytes.len() {
            return Ok((start, Tok::Eof));
        }
        let b = self.bytes[self.pos];
        let single = match b {
            b'+' => Some(Tok::Plus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'=' => Some(Tok::Eq),
            b';' => Some(Tok::Semi),
            _ => None,
        };
        if let Some(tok) = single {
            self.pos += 1;
            return Ok((start, tok));
        }
        if b.is_ascii_digit() {
            let int = self.take_digits();
            if self.pos < self.bytes.len() && self.bytes[self.pos] == b'.' {
                self.pos += 1;
                let frac = self.take_digits();
                if frac.is_empty() {
                    return Err(err(self.pos, "expected digits after decimal point"));
                }
                return Ok((start, Tok::Decimal { int, frac }));
            }
            return Ok((start, Tok::Int(int)));
        }
        if b.is_ascii_alphabetic() {
            let mut end = self.pos;
            while end < self.bytes.len() && self.bytes[end].is_ascii_alphabetic() {
                end += 1;
            }
            let ident = std::str::from_utf8(&self.bytes[self.pos..end]).unwrap();
            self.pos = end;
            return match ident {
                "X" => Ok((start, Tok::X)),
                "vars" => Ok((start, Tok::Vars)),
                other => Err(err(start, format!("unknown identifier '{other}'"))),
            };
        }
        if b == b'-' {
            return Err(err(start, "negative coefficients are not allowed"));
        }
        Err(err(start, format!("unexpected character '{}'", b as char)))
    }

    fn take_digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8(self.bytes[start..self.pos].to_vec()).unwrap()
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    look: (usize, Tok),
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Result<Self, SymbolError> {
        let mut lexer = Lexer::new(text);
        let look = lexer.next()?;
        Ok(Parser { lexer, look })
    }

    fn advance(&mut self) -> Result<(usize, Tok), SymbolError> {
        let next = self.lexer.next()?;
        Ok(std::mem::replace(&mut self.look, next))
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<usize, SymbolError> {
        if self.look.1 == want {
            Ok(self.advance()?.0)
        } else {
            Err(err(self.look.0, format!("expected {what}")))
        }
    }

    fn parse_uint(&mut self, what: &str) -> Result<(usize, String), SymbolError> {
        match self.look.1.clone() {
            Tok::Int(s) => {
                let pos = self.advance()?.0;
                Ok((pos, s))
            }
            _ => Err(err(self.look.0, format!("expected {what}"))),
        }
    }

    /// `('X' integer)+`
    fn parse_word(&mut self) -> Result<Word, SymbolError> {
        let mut letters = Vec::new();
        loop {
            self.expect(Tok::X, "'X'")?;
            let (pos, digits) = self.parse_uint("letter index after 'X'")?;
            let letter: u32 = digits
                .parse()
                .map_err(|_| err(pos, "letter index too large"))?;
            if letter == 0 {
                return Err(err(pos, "letter indices start at 1"));
            }
            letters.push(letter);
            if self.look.1 != Tok::X {
                break;
            }
        }
        Ok(Word::from_letters(letters))
    }

    /// One `term`, returning the monomial and its coefficient.
    fn parse_term(&mut self) -> Result<(Word, Rat), SymbolError> {
        let coeff = match self.look.1.clone() {
            Tok::Int(int) => {
                let pos = self.advance()?.0;
                if self.look.1 == Tok::Slash {
                    self.advance()?;
                    let (dpos, den) = self.parse_uint("denominator")?;
                    let num: BigInt = int.parse().unwrap();
                    let den: BigInt = den.parse().unwrap();
                    if den.is_zero() {
                        return Err(err(dpos, "zero denominator"));
                    }
                    Some((pos, Rat::new(num, den)))
                } else {
                    Some((pos, Rat::from_integer(int.parse().unwrap())))
                }
            }
            Tok::Decimal { int, frac } => {
                let pos = self.advance()?.0;
                let r = decimal_to_rat(&int, &frac)
                    .ok_or_else(|| err(pos, "invalid decimal literal"))?;
                Some((pos, r))
            }
            _ => None,
        };
        match coeff {
            Some((_, c)) => {
                if self.look.1 == Tok::Star {
                    self.advance()?;
                }
                if self.look.1 != Tok::X {
                    return Err(err(self.look.0, "expected monomial after coefficient"));
                }
                let word = self.parse_word()?;
                Ok((word, c))
            }
            None => {
                if self.look.1 != Tok::X {
                    return Err(err(self.look.0, "expected a term"));
                }
                let word = self.parse_word()?;
                Ok((word, Rat::from_integer(1.into())))
            }
        }
    }
}

pub(super) fn parse_symbol(text: &str) -> Result<Symbol, SymbolError> {
    let mut parser = Parser::new(text)?;

    let declared = if parser.look.1 == Tok::Vars {
        parser.advance()?;
        parser.expect(Tok::Eq, "'=' after 'vars'")?;
        let (pos, digits) = parser.parse_uint("variable count")?;
        let n: usize = digits
            .parse()
            .map_err(|_| err(pos, "variable count too large"))?;
        if n == 0 {
            return Err(err(pos, "variable count must be at least 1"));
        }
        parser.expect(Tok::Semi, "';' after header")?;
        Some(n)
    } else {
        None
    };

    let mut monomials = Vec::new();
    monomials.push(parser.parse_term()?);
    loop {
        match parser.look.1 {
            Tok::Plus => {
                parser.advance()?;
                monomials.push(parser.parse_term()?);
            }
            Tok::Eof => break,
            _ => return Err(err(parser.look.0, "expected '+' or end of input")),
        }
    }

    let max_letter = monomials
        .iter()
        .map(|(w, _)| w.max_letter())
        .max()
        .unwrap_or(0) as usize;
    let arity = declared.unwrap_or(max_letter);
    Symbol::validate(arity, monomials)
}

#[cfg(test)]
mod tests {
    use super::super::rat::rat;
    use super::super::{Symbol, SymbolError};

    #[test]
    fn canonical_free_shift_symbol() {
        let s = Symbol::parse("X1 + X2").unwrap();
        assert_eq!(s.arity(), 2);
        assert_eq!(s.coeff(&[1]), Some(&rat(1, 1)));
        assert_eq!(s.coeff(&[2]), Some(&rat(1, 1)));
    }

    #[test]
    fn coefficients_with_and_without_star() {
        let s = Symbol::parse("2*X1 + 3X2 + 6*X1X2").unwrap();
        assert_eq!(s.coeff(&[1]), Some(&rat(2, 1)));
        assert_eq!(s.coeff(&[2]), Some(&rat(3, 1)));
        assert_eq!(s.coeff(&[1, 2]), Some(&rat(6, 1)));
    }

    #[test]
    fn missing_degree_one_is_rejected() {
        let e = Symbol::parse("X1 + X1X2").unwrap_err();
        assert!(matches!(e, SymbolError::MissingDegreeOne { letter: 2 }));
    }

    #[test]
    fn header_fixes_arity() {
        let s = Symbol::parse("vars=3; X1+X2+X3+X1X3").unwrap();
        assert_eq!(s.arity(), 3);
        // header smaller than an appearing letter is an error
        let e = Symbol::parse("vars=1; X1+X2").unwrap_err();
        assert!(matches!(e, SymbolError::LetterOutOfRange { letter: 2, .. }));
    }

    #[test]
    fn decimal_and_fraction_coefficients() {
        let s = Symbol::parse("0.25*X1 + 1/4*X2").unwrap();
        assert_eq!(s.coeff(&[1]), Some(&rat(1, 4)));
        assert_eq!(s.coeff(&[2]), Some(&rat(1, 4)));
    }

    #[test]
    fn duplicate_monomials_sum_before_validation() {
        let s = Symbol::parse("X1 + X1 + 1/2*X1 + X2").unwrap();
        assert_eq!(s.coeff(&[1]), Some(&rat(5, 2)));
    }

    #[test]
    fn zero_coefficient_degree_one_fails_validation() {
        let e = Symbol::parse("X1 + 0*X2").unwrap_err();
        assert!(matches!(e, SymbolError::MissingDegreeOne { letter: 2 }));
    }

    #[test]
    fn syntax_errors_report_positions() {
        match Symbol::parse("X1 + + X2").unwrap_err() {
            SymbolError::Parse { pos, .. } => assert_eq!(pos, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
        match Symbol::parse("X1 + -2*X2").unwrap_err() {
            SymbolError::Parse { pos, msg } => {
                assert_eq!(pos, 5);
                assert!(msg.contains("negative"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            Symbol::parse("X0 + X1"),
            Err(SymbolError::Parse { pos: 1, .. })
        ));
        assert!(matches!(
            Symbol::parse("2 + X1"),
            Err(SymbolError::Parse { .. })
        ));
        assert!(matches!(
            Symbol::parse(""),
            Err(SymbolError::Parse { .. })
        ));
        assert!(matches!(
            Symbol::parse("Y1"),
            Err(SymbolError::Parse { .. })
        ));
        assert!(matches!(
            Symbol::parse("1/0*X1"),
            Err(SymbolError::Parse { .. })
        ));
        assert!(matches!(
            Symbol::parse("1.5/2*X1"),
            Err(SymbolError::Parse { .. })
        ));
    }

    #[test]
    fn whitespace_insensitive() {
        let a = Symbol::parse("  2 * X1X2+ X1 +X2 ").unwrap();
        let b = Symbol::parse("2*X1X2+X1+X2").unwrap();
        assert_eq!(a, b);
    }
}
