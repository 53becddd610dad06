//! Enumeration of the lightest terms of a nonterminal's language.
//!
//! Best-first search over leftmost derivations. A partial derivation is a
//! preorder token sequence of symbols and not-yet-expanded nonterminals
//! (holes). Its key is the weight obtained by filling every hole with that
//! nonterminal's minimal weight, then the size obtained the same way with
//! minimal sizes, then the symbol prefix before the first hole. Weight
//! functions are monotonic and increasing, so expanding a hole never lowers
//! the key and completed terms leave the queue in key order: by weight, then
//! size, then preorder symbol sequence in signature order.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};

use thiserror::Error;

use crate::algebra::{Cost, SizeAlgebra, WeightAlgebra};
use crate::grammar::{Grammar, NtId, SymbolId, Term};
use crate::solver::{Solver, SolverError};

pub const DEFAULT_FRONTIER_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("search frontier exceeded {cap} partial derivations")]
    FrontierExceeded { cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Token {
    Sym(SymbolId),
    Hole(NtId),
}

#[derive(Debug, Clone)]
struct Item<W> {
    tokens: Vec<Token>,
    weight: W,
    size: u64,
    /// Index of the first hole, or `tokens.len()` when complete.
    open: usize,
}

impl<W> Item<W> {
    fn prefix(&self) -> impl Iterator<Item = SymbolId> + '_ {
        self.tokens[..self.open].iter().map(|t| match t {
            Token::Sym(s) => *s,
            Token::Hole(_) => unreachable!("prefix has no holes"),
        })
    }
}

struct Queued<'a, A: WeightAlgebra> {
    alg: &'a A,
    item: Item<A::Weight>,
}

impl<A: WeightAlgebra> Queued<'_, A> {
    fn key_cmp(&self, other: &Self) -> Ordering {
        self.alg
            .compare(&self.item.weight, &other.item.weight)
            .then(self.item.size.cmp(&other.item.size))
            .then_with(|| self.item.prefix().cmp(other.item.prefix()))
    }
}

impl<A: WeightAlgebra> PartialEq for Queued<'_, A> {
    fn eq(&self, other: &Self) -> bool {
        self.key_cmp(other).is_eq()
    }
}

impl<A: WeightAlgebra> Eq for Queued<'_, A> {}

impl<A: WeightAlgebra> PartialOrd for Queued<'_, A> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<A: WeightAlgebra> Ord for Queued<'_, A> {
    // reversed: BinaryHeap is a max-heap
    fn cmp(&self, other: &Self) -> Ordering {
        other.key_cmp(self)
    }
}

/// Best-first enumerator with a bounded search frontier.
#[derive(Debug, Clone, Copy)]
pub struct Enumerator {
    frontier_cap: usize,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator {
            frontier_cap: DEFAULT_FRONTIER_CAP,
        }
    }
}

impl Enumerator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn frontier_cap(mut self, cap: usize) -> Self {
        self.frontier_cap = cap;
        self
    }

    /// Up to `k` distinct terms of `L(n)` in nondecreasing weight order.
    pub fn run<A: WeightAlgebra>(
        &self,
        g: &Grammar,
        alg: &A,
        n: NtId,
        k: usize,
    ) -> Result<Vec<(Term, A::Weight)>, EnumerateError> {
        let weights = Solver::lazy().record_trace(false).solve(g, alg)?.weights;
        let sizes = Solver::lazy()
            .record_trace(false)
            .solve(g, &SizeAlgebra)?
            .weights;
        let mut out = Vec::new();
        if k == 0 || alg.is_infinite(weights.get(n)) {
            return Ok(out);
        }
        let search = Search {
            g,
            alg,
            weights: weights.as_slice(),
            sizes: sizes.as_slice(),
        };
        let mut heap = BinaryHeap::new();
        heap.push(Queued {
            alg,
            item: search.item(vec![Token::Hole(n)], 0),
        });
        // identical token sequences have identical futures; keeping one of
        // them also makes complete terms unique
        let mut pushed: HashSet<Vec<Token>> = HashSet::new();
        while let Some(Queued { item, .. }) = heap.pop() {
            if item.open == item.tokens.len() {
                out.push((search.build(&item.tokens), item.weight));
                if out.len() == k {
                    break;
                }
                continue;
            }
            let Token::Hole(m) = item.tokens[item.open] else {
                unreachable!()
            };
            for alt in g.rule(m) {
                if alt
                    .args
                    .iter()
                    .any(|a| alg.is_infinite(&search.weights[a.0]))
                {
                    continue;
                }
                let mut tokens = Vec::with_capacity(item.tokens.len() + alt.args.len());
                tokens.extend_from_slice(&item.tokens[..item.open]);
                tokens.push(Token::Sym(alt.symbol));
                tokens.extend(alt.args.iter().map(|a| Token::Hole(*a)));
                tokens.extend_from_slice(&item.tokens[item.open + 1..]);
                if pushed.contains(&tokens) {
                    continue;
                }
                let next = search.item(tokens, item.open);
                if alg.is_infinite(&next.weight) {
                    continue;
                }
                pushed.insert(next.tokens.clone());
                heap.push(Queued { alg, item: next });
            }
            if heap.len() > self.frontier_cap {
                return Err(EnumerateError::FrontierExceeded {
                    cap: self.frontier_cap,
                });
            }
        }
        Ok(out)
    }
}

/// [`Enumerator::run`] with the default frontier cap.
pub fn enumerate<A: WeightAlgebra>(
    g: &Grammar,
    alg: &A,
    n: NtId,
    k: usize,
) -> Result<Vec<(Term, A::Weight)>, EnumerateError> {
    Enumerator::default().run(g, alg, n, k)
}

struct Search<'a, A: WeightAlgebra> {
    g: &'a Grammar,
    alg: &'a A,
    weights: &'a [A::Weight],
    sizes: &'a [Cost],
}

impl<A: WeightAlgebra> Search<'_, A> {
    fn item(&self, tokens: Vec<Token>, scan_from: usize) -> Item<A::Weight> {
        let mut pos = 0;
        let weight = self.estimate(&tokens, &mut pos);
        let size = tokens
            .iter()
            .map(|t| match t {
                Token::Sym(_) => 1,
                Token::Hole(n) => self.sizes[n.0].finite().unwrap_or(u64::MAX),
            })
            .fold(0u64, u64::saturating_add);
        let open = tokens[scan_from..]
            .iter()
            .position(|t| matches!(t, Token::Hole(_)))
            .map_or(tokens.len(), |i| i + scan_from);
        Item {
            tokens,
            weight,
            size,
            open,
        }
    }

    fn estimate(&self, tokens: &[Token], pos: &mut usize) -> A::Weight {
        let t = tokens[*pos];
        *pos += 1;
        match t {
            Token::Hole(n) => self.weights[n.0].clone(),
            Token::Sym(s) => {
                let sym = self.g.signature().get(s);
                let args: Vec<A::Weight> =
                    (0..sym.arity).map(|_| self.estimate(tokens, pos)).collect();
                self.alg.apply(sym, &args)
            }
        }
    }

    fn build(&self, tokens: &[Token]) -> Term {
        fn go(g: &Grammar, tokens: &[Token], pos: &mut usize) -> Term {
            let Token::Sym(s) = tokens[*pos] else {
                unreachable!("complete derivation")
            };
            *pos += 1;
            let sym = g.signature().get(s);
            let children = (0..sym.arity).map(|_| go(g, tokens, pos)).collect();
            Term::new(sym.name.clone(), children)
        }
        go(self.g, tokens, &mut 0)
    }
}
