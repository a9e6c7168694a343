//! Text form `[3,(2)^4,1,per(1,2)]`; `inf` ends a finite word.

use std::fmt;
use std::str::FromStr;

use super::{CfError, Digit, FiniteCF, PeriodicCF};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CfWord {
    Finite(FiniteCF),
    Periodic(PeriodicCF),
}

impl fmt::Display for CfWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CfWord::Finite(w) => w.fmt(f),
            CfWord::Periodic(w) => w.fmt(f),
        }
    }
}

impl FromStr for CfWord {
    type Err = CfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_cf(s)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

enum Item {
    Digits(Vec<Digit>),
    Period(Vec<Digit>),
    Inf,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> CfError {
        CfError::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), CfError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u64, CfError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("expected a number"))
    }

    fn item(&mut self) -> Result<Item, CfError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.plain_list(b')')?;
                self.expect(b'^')?;
                let k = self.number()? as usize;
                Ok(Item::Digits(inner.repeat(k)))
            }
            Some(b'p') if self.keyword("per") => {
                self.expect(b'(')?;
                Ok(Item::Period(self.plain_list(b')')?))
            }
            Some(b'i') if self.keyword("inf") => Ok(Item::Inf),
            _ => Ok(Item::Digits(vec![self.number()?])),
        }
    }

    /// Comma list of digits and repetitions up to `close`.
    fn plain_list(&mut self, close: u8) -> Result<Vec<Digit>, CfError> {
        let mut out = Vec::new();
        loop {
            match self.item()? {
                Item::Digits(d) => out.extend(d),
                _ => return Err(self.err("per/inf not allowed here")),
            }
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(c) if c == close => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.err("expected ',' or closing bracket")),
            }
        }
    }
}

/// Parses a word in the bracket syntax.
pub fn parse_cf(text: &str) -> Result<CfWord, CfError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    p.expect(b'[')?;
    let mut digits = Vec::new();
    let mut period = None;
    let mut closed_by_inf = false;
    loop {
        if period.is_some() || closed_by_inf {
            return Err(p.err("per(...) or inf must be the last item"));
        }
        match p.item()? {
            Item::Digits(d) => digits.extend(d),
            Item::Period(d) => period = Some(d),
            Item::Inf => closed_by_inf = true,
        }
        match p.peek() {
            Some(b',') => p.pos += 1,
            Some(b']') => {
                p.pos += 1;
                break;
            }
            _ => return Err(p.err("expected ',' or ']'")),
        }
    }
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    match period {
        Some(per) => Ok(CfWord::Periodic(PeriodicCF::new(digits, per)?)),
        None => Ok(CfWord::Finite(FiniteCF::new(digits)?)),
    }
}
