//! Brace notation for games.
//!
//! ```text
//! game  := term ("+" term)*
//! term  := "-" term | dyadic | "*" | "{" games? "|" games? "}"
//! games := game ("," game)*
//! ```
//!
//! Printing writes canonical numbers as literals and `{0|0}` as `*`, so
//! parsing the printed text rebuilds the identical game.

use std::fmt;

use thiserror::Error;

use crate::dyadic::{Dyadic, DyadicError};
use crate::games::{canonical_number_value, number_to_game, Game};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("at {pos}: expected {expected}, found {found}")]
    Unexpected {
        pos: usize,
        expected: &'static str,
        found: String,
    },
    #[error("at {pos}: denominator of {literal} is not a power of two")]
    NonDyadic { pos: usize, literal: String },
    #[error("at {pos}: bad number {literal}: {source}")]
    Number {
        pos: usize,
        literal: String,
        source: DyadicError,
    },
}

pub fn parse_game(text: &str) -> Result<Game, ParseError> {
    let mut p = Parser { text, pos: 0 };
    let g = p.game()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.unexpected("'+' or end of input"));
    }
    Ok(g)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn unexpected(&mut self, expected: &'static str) -> ParseError {
        let found = match self.peek() {
            Some(c) => format!("'{c}'"),
            None => "end of input".to_string(),
        };
        ParseError::Unexpected {
            pos: self.pos,
            expected,
            found,
        }
    }

    fn game(&mut self) -> Result<Game, ParseError> {
        let mut g = self.term()?;
        while self.eat('+') {
            g = g.add(&self.term()?);
        }
        Ok(g)
    }

    fn term(&mut self) -> Result<Game, ParseError> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(self.term()?.negate())
            }
            Some('*') => {
                self.pos += 1;
                Ok(Game::star())
            }
            Some('{') => {
                self.pos += 1;
                let left = self.options('|')?;
                if !self.eat('|') {
                    return Err(self.unexpected("'|'"));
                }
                let right = self.options('}')?;
                if !self.eat('}') {
                    return Err(self.unexpected("'}'"));
                }
                Ok(Game::new(left, right))
            }
            Some(c) if c.is_ascii_digit() => self.literal(),
            _ => Err(self.unexpected("a number, '*', '{' or '-'")),
        }
    }

    fn options(&mut self, close: char) -> Result<Vec<Game>, ParseError> {
        let mut out = Vec::new();
        if self.peek() == Some(close) {
            return Ok(out);
        }
        loop {
            out.push(self.game()?);
            if !self.eat(',') {
                return Ok(out);
            }
        }
    }

    fn literal(&mut self) -> Result<Game, ParseError> {
        let start = self.pos;
        let bytes = self.text.as_bytes();
        let digits = |mut i: usize| {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            i
        };
        let mut end = digits(start);
        if end < bytes.len() && bytes[end] == b'/' {
            let den_end = digits(end + 1);
            if den_end == end + 1 {
                self.pos = end + 1;
                return Err(self.unexpected("a denominator"));
            }
            end = den_end;
        }
        let literal = &self.text[start..end];
        self.pos = end;
        match literal.parse::<Dyadic<i64>>() {
            Ok(x) => Ok(number_to_game(&x)),
            Err(DyadicError::NonDyadicDenominator(_)) => Err(ParseError::NonDyadic {
                pos: start,
                literal: literal.to_string(),
            }),
            Err(source) => Err(ParseError::Number {
                pos: start,
                literal: literal.to_string(),
                source,
            }),
        }
    }
}

impl fmt::Display for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(x) = canonical_number_value::<i128>(self) {
            return write!(f, "{x}");
        }
        if let ([l], [r]) = (self.left(), self.right()) {
            if l.is_zero_node() && r.is_zero_node() {
                return f.write_str("*");
            }
        }
        f.write_str("{")?;
        write_options(f, self.left())?;
        f.write_str("|")?;
        write_options(f, self.right())?;
        f.write_str("}")
    }
}

fn write_options(f: &mut fmt::Formatter<'_>, options: &[Game]) -> fmt::Result {
    for (i, g) in options.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{g}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{canonicalize, compare, GameOrdering};

    fn n(x: &str) -> Game {
        number_to_game(&x.parse::<Dyadic<i64>>().unwrap())
    }

    #[test]
    fn parses_examples() {
        assert_eq!(
            parse_game("{2|0}").unwrap(),
            Game::new(vec![n("2")], vec![n("0")])
        );
        assert_eq!(parse_game("1/2 + *").unwrap(), n("1/2").add(&Game::star()));
        assert_eq!(parse_game("{|}").unwrap(), Game::zero());
        assert_eq!(parse_game(" { 0 | 0 } ").unwrap(), Game::star());
        assert_eq!(parse_game("-3/4").unwrap(), n("-3/4"));
        assert_eq!(
            parse_game("{3|{2|-1}}").unwrap(),
            Game::new(vec![n("3")], vec![Game::new(vec![n("2")], vec![n("-1")])])
        );
        assert_eq!(
            parse_game("{0,*|}").unwrap(),
            Game::new(vec![Game::zero(), Game::star()], vec![])
        );
        assert_eq!(parse_game("-{2|0}").unwrap(), Game::new(vec![n("0")], vec![n("-2")]));
    }

    #[test]
    fn sums_compare_like_values() {
        let g = parse_game("1/2 + 1/2 + -1").unwrap();
        assert_eq!(compare(&g, &Game::zero()), GameOrdering::Equal);
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(
            parse_game("{1|2"),
            Err(ParseError::Unexpected { pos: 4, .. })
        ));
        assert!(matches!(
            parse_game("{1 2|}"),
            Err(ParseError::Unexpected { pos: 3, .. })
        ));
        assert!(matches!(
            parse_game("  1/3"),
            Err(ParseError::NonDyadic { pos: 2, .. })
        ));
        assert!(matches!(parse_game("1/"), Err(ParseError::Unexpected { pos: 2, .. })));
        assert!(matches!(parse_game(""), Err(ParseError::Unexpected { pos: 0, .. })));
        assert!(matches!(parse_game("{|}x"), Err(ParseError::Unexpected { pos: 3, .. })));
        assert!(matches!(parse_game("1/0"), Err(ParseError::Number { .. })));
        let msg = parse_game("5/6").unwrap_err().to_string();
        assert!(msg.contains("power of two"), "{msg}");
    }

    #[test]
    fn prints_examples() {
        assert_eq!(Game::star().to_string(), "*");
        assert_eq!(n("-7/8").to_string(), "-7/8");
        assert_eq!(Game::new(vec![n("2")], vec![n("0")]).to_string(), "{2|0}");
        assert_eq!(Game::new(vec![n("0")], vec![n("2")]).to_string(), "{0|2}");
        let g = parse_game("{2|0} + *").unwrap();
        // {2|0} + * = {2* | *}
        assert_eq!(canonicalize(&g).to_string(), "{{2|2}|*}");
    }

    #[test]
    fn print_parse_identity() {
        for text in ["{2|0}", "{0,*|1/2}", "{|{|}}", "{{1|*}|-2}", "{-1|1}"] {
            let g = parse_game(text).unwrap();
            assert_eq!(parse_game(&g.to_string()).unwrap(), g, "{text}");
        }
    }
}
