use std::fmt;
use std::str::FromStr;

use super::GrammarError;

/// A ground term `f(t1, .., tn)`.
///
/// Arity consistency is checked against a [`Signature`](super::Signature)
/// when the term is used with a grammar, not at construction time.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    symbol: String,
    children: Vec<Term>,
}

impl Term {
    pub fn new(symbol: impl Into<String>, children: Vec<Term>) -> Self {
        Term {
            symbol: symbol.into(),
            children,
        }
    }

    pub fn constant(symbol: impl Into<String>) -> Self {
        Term::new(symbol, Vec::new())
    }

    /// Builds a unary chain, innermost symbol last: `chain(&["q", "p"], a)`
    /// is `q(p(a))`.
    pub fn chain(symbols: &[&str], leaf: Term) -> Self {
        symbols
            .iter()
            .rev()
            .fold(leaf, |acc, s| Term::new(*s, vec![acc]))
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    pub fn children(&self) -> &[Term] {
        &self.children
    }

    pub fn arity(&self) -> usize {
        self.children.len()
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Term::size).sum::<usize>()
    }

    /// Longest root-to-leaf path counted in nodes; a constant has height 1.
    pub fn height(&self) -> usize {
        1 + self.children.iter().map(Term::height).max().unwrap_or(0)
    }

    /// Symbols in preorder.
    pub fn preorder(&self) -> Preorder<'_> {
        Preorder { stack: vec![self] }
    }
}

pub struct Preorder<'a> {
    stack: Vec<&'a Term>,
}

impl<'a> Iterator for Preorder<'a> {
    type Item = &'a str;

    fn next(&mut self) -> Option<&'a str> {
        let t = self.stack.pop()?;
        self.stack.extend(t.children.iter().rev());
        Some(&t.symbol)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbol)?;
        if !self.children.is_empty() {
            f.write_str("(")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl FromStr for Term {
    type Err = GrammarError;

    /// Parses the `f(a,g(b))` notation produced by `Display`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = TermParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let t = p.term()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input after term"));
        }
        Ok(t)
    }
}

struct TermParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl TermParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> GrammarError {
        GrammarError::Syntax {
            line: 1,
            column: self.pos + 1,
            message: message.to_string(),
        }
    }

    fn term(&mut self) -> Result<Term, GrammarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && super::parse::is_ident_byte(self.src[self.pos], self.pos == start)
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected symbol"));
        }
        let symbol = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
        self.skip_ws();
        let mut children = Vec::new();
        if self.src.get(self.pos) == Some(&b'(') {
            self.pos += 1;
            loop {
                children.push(self.term()?);
                self.skip_ws();
                match self.src.get(self.pos) {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.error("expected ',' or ')'")),
                }
            }
        }
        Ok(Term::new(symbol, children))
    }
}
