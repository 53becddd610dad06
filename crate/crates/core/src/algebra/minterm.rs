use std::cmp::Ordering;
use std::collections::HashMap;

use super::{AlgebraError, WeightAlgebra};
use crate::grammar::{Signature, Symbol, Term};

/// A term used as its own weight, or `∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MinTermWeight {
    Finite { term: Term, size: usize },
    Infinite,
}

impl MinTermWeight {
    pub fn new(term: Term) -> Self {
        let size = term.size();
        MinTermWeight::Finite { term, size }
    }

    pub fn term(&self) -> Option<&Term> {
        match self {
            MinTermWeight::Finite { term, .. } => Some(term),
            MinTermWeight::Infinite => None,
        }
    }
}

/// Weighs every term by itself, ordered by size and then lexicographically
/// on the preorder symbol sequence under a fixed symbol precedence.
///
/// The order is total and well-founded, a term is larger than each of its
/// proper subterms, and it is closed under contexts. The minimal weight of a
/// nonterminal is therefore the least term of its language.
#[derive(Debug, Clone)]
pub struct MinTermAlgebra {
    rank: HashMap<String, usize>,
}

impl MinTermAlgebra {
    /// `precedence` lists symbols from smallest to largest.
    pub fn new<S: Into<String>>(precedence: impl IntoIterator<Item = S>) -> Self {
        let mut rank = HashMap::new();
        for s in precedence {
            let next = rank.len();
            rank.entry(s.into()).or_insert(next);
        }
        MinTermAlgebra { rank }
    }

    /// Precedence follows the signature's first-use order.
    pub fn for_signature(sig: &Signature) -> Self {
        Self::new(sig.iter().map(|s| s.name.clone()))
    }

    fn compare_terms(&self, a: &Term, b: &Term) -> Ordering {
        for (x, y) in a.preorder().zip(b.preorder()) {
            if x == y {
                continue;
            }
            let ord = match (self.rank.get(x), self.rank.get(y)) {
                (Some(i), Some(j)) => i.cmp(j),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => x.cmp(y),
            };
            return ord;
        }
        Ordering::Equal
    }
}

impl WeightAlgebra for MinTermAlgebra {
    type Weight = MinTermWeight;

    fn infinity(&self) -> MinTermWeight {
        MinTermWeight::Infinite
    }

    fn compare(&self, a: &MinTermWeight, b: &MinTermWeight) -> Ordering {
        use MinTermWeight::*;
        match (a, b) {
            (Infinite, Infinite) => Ordering::Equal,
            (Infinite, Finite { .. }) => Ordering::Greater,
            (Finite { .. }, Infinite) => Ordering::Less,
            (Finite { term: s, size: m }, Finite { term: t, size: n }) => {
                m.cmp(n).then_with(|| self.compare_terms(s, t))
            }
        }
    }

    fn apply(&self, symbol: &Symbol, args: &[MinTermWeight]) -> MinTermWeight {
        let mut children = Vec::with_capacity(args.len());
        let mut size = 1;
        for a in args {
            match a {
                MinTermWeight::Finite { term, size: s } => {
                    children.push(term.clone());
                    size += s;
                }
                MinTermWeight::Infinite => return MinTermWeight::Infinite,
            }
        }
        MinTermWeight::Finite {
            term: Term::new(symbol.name.clone(), children),
            size,
        }
    }

    fn render(&self, w: &MinTermWeight) -> String {
        match w {
            MinTermWeight::Finite { term, .. } => term.to_string(),
            MinTermWeight::Infinite => "INF".to_string(),
        }
    }

    fn check_signature(&self, sig: &Signature) -> Result<(), AlgebraError> {
        match sig.iter().find(|s| !self.rank.contains_key(&s.name)) {
            Some(s) => Err(AlgebraError::MissingSymbol(s.name.clone())),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::Grammar;

    fn w(s: &str) -> MinTermWeight {
        MinTermWeight::new(s.parse().unwrap())
    }

    #[test]
    fn apply_constructs() {
        let g = Grammar::parse("S ::= q(S) | a ;").unwrap();
        let alg = MinTermAlgebra::for_signature(g.signature());
        let q = g.signature().by_name("q").unwrap();
        assert_eq!(alg.apply(q, &[w("a")]), w("q(a)"));
        assert_eq!(
            alg.apply(q, &[MinTermWeight::Infinite]),
            MinTermWeight::Infinite
        );
    }

    #[test]
    fn order() {
        let alg = MinTermAlgebra::new(["b", "a", "f"]);
        assert_eq!(alg.compare(&w("a"), &w("f(a)")), Ordering::Less);
        assert_eq!(alg.compare(&w("b"), &w("a")), Ordering::Less);
        assert_eq!(alg.compare(&w("f(a,b)"), &w("f(b,a)")), Ordering::Greater);
        assert_eq!(alg.compare(&w("f(b,a)"), &w("f(b,a)")), Ordering::Equal);
        assert_eq!(
            alg.compare(&w("f(f(f(a)))"), &MinTermWeight::Infinite),
            Ordering::Less
        );
    }

    #[test]
    fn missing_precedence() {
        let g = Grammar::parse("S ::= q(S) | a ;").unwrap();
        let alg = MinTermAlgebra::new(["q"]);
        assert_eq!(
            alg.check_signature(g.signature()),
            Err(AlgebraError::MissingSymbol("a".into()))
        );
    }
}
