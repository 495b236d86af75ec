//! Boolean formulas over variables `x1, x2, ...` and their text encoding.
//!
//! Grammar (canonical, fully parenthesised binary connectives):
//!
//! ```text
//! formula ::= "x" <decimal, no leading zero, >= 1>
//!           | "!" formula
//!           | "(" formula "&" formula ")"
//!           | "(" formula "|" formula ")"
//! ```
//!
//! Every formula string therefore starts with `x`, `!` or `(`, so it can
//! never coincide with the reserved candidate name `RoundOne`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

const MAX_DEPTH: usize = 1024;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Var(u32),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("syntax error at byte {offset}: expected {expected}")]
    Syntax { offset: usize, expected: &'static str },
    #[error("variable index 0 at byte {offset}; indices start at 1")]
    ZeroIndex { offset: usize },
    #[error("variable index with leading zero at byte {offset}")]
    LeadingZero { offset: usize },
    #[error("variable index too large at byte {offset}")]
    IndexOverflow { offset: usize },
    #[error("trailing input at byte {offset}")]
    TrailingInput { offset: usize },
    #[error("formula nested deeper than {MAX_DEPTH}")]
    TooDeep,
    #[error("assignment does not cover variable x{0}")]
    Uncovered(u32),
}

/// Truth values for `x1..xn`; position `i - 1` holds `xi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    /// Bit `i` of `mask` (least significant first) gives `x(i+1)`.
    pub fn from_mask(mask: u64, len: usize) -> Self {
        Self((0..len).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn get(&self, var: u32) -> Option<bool> {
        (var as usize).checked_sub(1).and_then(|i| self.0.get(i).copied())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn complement(&self) -> Self {
        Self(self.0.iter().map(|b| !b).collect())
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }
}

impl Formula {
    pub fn var(i: u32) -> Self {
        Formula::Var(i)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn parse(s: &str) -> Result<Formula, FormulaError> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let f = p.formula(0)?;
        if p.pos != p.src.len() {
            return Err(FormulaError::TrailingInput { offset: p.pos });
        }
        Ok(f)
    }

    pub fn render(&self) -> String {
        self.to_string()
    }

    pub fn eval(&self, a: &Assignment) -> Result<bool, FormulaError> {
        Ok(match self {
            Formula::Var(i) => a.get(*i).ok_or(FormulaError::Uncovered(*i))?,
            Formula::Not(f) => !f.eval(a)?,
            Formula::And(l, r) => {
                // evaluate both sides so uncovered variables always surface
                let (l, r) = (l.eval(a)?, r.eval(a)?);
                l && r
            }
            Formula::Or(l, r) => {
                let (l, r) = (l.eval(a)?, r.eval(a)?);
                l || r
            }
        })
    }

    pub fn max_var(&self) -> u32 {
        match self {
            Formula::Var(i) => *i,
            Formula::Not(f) => f.max_var(),
            Formula::And(l, r) | Formula::Or(l, r) => l.max_var().max(r.max_var()),
        }
    }

    pub fn variables(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<u32>) {
        match self {
            Formula::Var(i) => {
                out.insert(*i);
            }
            Formula::Not(f) => f.collect_vars(out),
            Formula::And(l, r) | Formula::Or(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    /// True when the variables are exactly `x1..xk` for `k = max_var()`.
    pub fn has_contiguous_vars(&self) -> bool {
        let vars = self.variables();
        vars.len() as u32 == self.max_var() && vars.iter().next() == Some(&1)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Var(i) => write!(f, "x{i}"),
            Formula::Not(g) => write!(f, "!{g}"),
            Formula::And(l, r) => write!(f, "({l}&{r})"),
            Formula::Or(l, r) => write!(f, "({l}|{r})"),
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Formula::parse(s)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8, expected: &'static str) -> Result<(), FormulaError> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(FormulaError::Syntax {
                offset: self.pos,
                expected,
            })
        }
    }

    fn formula(&mut self, depth: usize) -> Result<Formula, FormulaError> {
        if depth > MAX_DEPTH {
            return Err(FormulaError::TooDeep);
        }
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                self.index().map(Formula::Var)
            }
            Some(b'!') => {
                self.pos += 1;
                Ok(Formula::not(self.formula(depth + 1)?))
            }
            Some(b'(') => {
                self.pos += 1;
                let l = self.formula(depth + 1)?;
                let op = self.peek();
                if !matches!(op, Some(b'&') | Some(b'|')) {
                    return Err(FormulaError::Syntax {
                        offset: self.pos,
                        expected: "'&' or '|'",
                    });
                }
                self.pos += 1;
                let r = self.formula(depth + 1)?;
                self.expect(b')', "')'")?;
                Ok(if op == Some(b'&') {
                    Formula::and(l, r)
                } else {
                    Formula::or(l, r)
                })
            }
            _ => Err(FormulaError::Syntax {
                offset: self.pos,
                expected: "'x', '!' or '('",
            }),
        }
    }

    fn index(&mut self) -> Result<u32, FormulaError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        let digits = &self.src[start..self.pos];
        match digits {
            [] => Err(FormulaError::Syntax {
                offset: start,
                expected: "variable index",
            }),
            [b'0'] => Err(FormulaError::ZeroIndex { offset: start }),
            [b'0', ..] => Err(FormulaError::LeadingZero { offset: start }),
            _ => std::str::from_utf8(digits)
                .ok()
                .and_then(|d| d.parse::<u32>().ok())
                .ok_or(FormulaError::IndexOverflow { offset: start }),
        }
    }
}

pub fn parse_formula(s: &str) -> Result<Formula, FormulaError> {
    Formula::parse(s)
}

pub fn render_formula(f: &Formula) -> String {
    f.render()
}

pub fn eval_formula(f: &Formula, a: &Assignment) -> Result<bool, FormulaError> {
    f.eval(a)
}
