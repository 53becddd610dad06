//! Random inputs and independent oracles shared by the integration tests.
//!
//! Nothing here calls into the solvers; the oracles recompute weights,
//! languages and satisfiability by brute force.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treeweight::algebra::{AffineAlgebra, AffineSpec, Cost};
use treeweight::grammar::{Grammar, RawAlternative, RawGrammar, Term};
use treeweight::partial::{CnfFormula, Literal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Symbol pool; a symbol's arity is fixed by its name.
pub const SYMBOLS: &[(&str, usize)] = &[
    ("a", 0),
    ("b", 0),
    ("c", 0),
    ("f", 1),
    ("g", 1),
    ("h", 2),
    ("k", 2),
    ("m", 3),
];

#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub max_nt: usize,
    pub max_al: usize,
    pub max_ar: usize,
}

/// A random grammar over nonterminals `N0..`. Rules may be empty and
/// nonterminals may be unreachable or unproductive.
pub fn random_grammar(rng: &mut impl Rng, shape: Shape) -> Grammar {
    Grammar::from_raw(&random_raw(rng, shape, false)).expect("generated grammar is valid")
}

/// Like [`random_grammar`] but `Ni` only refers to `Nj` with `j > i`, so
/// every language is finite.
pub fn random_acyclic_grammar(rng: &mut impl Rng, shape: Shape) -> Grammar {
    Grammar::from_raw(&random_raw(rng, shape, true)).expect("generated grammar is valid")
}

/// An acyclic random grammar in which every used constant is marked as a
/// variable with probability 2/3.
pub fn random_variable_grammar(rng: &mut impl Rng, shape: Shape) -> Grammar {
    let mut raw = random_raw(rng, shape, true);
    let used: BTreeSet<String> = raw
        .rules
        .iter()
        .flat_map(|r| &r.alternatives)
        .filter(|a| a.args.is_empty())
        .map(|a| a.symbol.clone())
        .collect();
    for c in used {
        if rng.gen_range(0..3) > 0 {
            raw = raw.variable(c);
        }
    }
    Grammar::from_raw(&raw).expect("generated grammar is valid")
}

pub fn random_raw(rng: &mut impl Rng, shape: Shape, acyclic: bool) -> RawGrammar {
    let nt = rng.gen_range(1..=shape.max_nt);
    let al = rng.gen_range(1..=shape.max_al);
    let constants: Vec<&str> = SYMBOLS.iter().filter(|s| s.1 == 0).map(|s| s.0).collect();
    let functions: Vec<(&str, usize)> = SYMBOLS
        .iter()
        .copied()
        .filter(|s| s.1 > 0 && s.1 <= shape.max_ar)
        .collect();
    let mut rules: Vec<Vec<RawAlternative>> = vec![Vec::new(); nt];
    for _ in 0..al {
        let owner = rng.gen_range(0..nt);
        let lowest = if acyclic { owner + 1 } else { 0 };
        let alt = if functions.is_empty() || lowest >= nt || rng.gen_bool(0.3) {
            RawAlternative::new(*constants.choose(rng).unwrap(), Vec::<String>::new())
        } else {
            let (f, ar) = *functions.choose(rng).unwrap();
            RawAlternative::new(
                f,
                (0..ar).map(|_| format!("N{}", rng.gen_range(lowest..nt))),
            )
        };
        rules[owner].push(alt);
    }
    rules
        .into_iter()
        .enumerate()
        .fold(RawGrammar::new(), |r, (i, alts)| {
            r.rule(format!("N{i}"), alts)
        })
}

/// Random affine weight functions for the symbol pool: coefficients in
/// `1..=3`, constants in `0..=4`.
#[derive(Debug, Clone)]
pub struct RandomAffine {
    pub costs: HashMap<String, (u64, Vec<u64>)>,
}

impl RandomAffine {
    pub fn new(rng: &mut impl Rng) -> Self {
        let costs = SYMBOLS
            .iter()
            .map(|&(name, ar)| {
                let c = rng.gen_range(0..=4);
                let a = (0..ar).map(|_| rng.gen_range(1..=3)).collect();
                (name.to_string(), (c, a))
            })
            .collect();
        RandomAffine { costs }
    }

    pub fn algebra(&self) -> AffineAlgebra {
        let mut entries: Vec<(String, i64, Vec<i64>)> = self
            .costs
            .iter()
            .map(|(n, (c, a))| (n.clone(), *c as i64, a.iter().map(|x| *x as i64).collect()))
            .collect();
        entries.sort();
        AffineAlgebra::new(&AffineSpec { entries }).unwrap()
    }

    /// Direct evaluation with wide integers; no saturation needed at test sizes.
    pub fn weight(&self, t: &Term) -> u128 {
        let (c, a) = &self.costs[t.symbol()];
        *c as u128
            + a.iter()
                .zip(t.children())
                .map(|(k, s)| *k as u128 * self.weight(s))
                .sum::<u128>()
    }
}

pub fn node_count(t: &Term) -> u64 {
    1 + t.children().iter().map(node_count).sum::<u64>()
}

pub fn longest_path(t: &Term) -> u64 {
    1 + t.children().iter().map(longest_path).max().unwrap_or(0)
}

pub fn cost(v: Option<u128>) -> Cost {
    match v {
        Some(x) => Cost::Finite(u64::try_from(x).unwrap()),
        None => Cost::Infinite,
    }
}

/// Per nonterminal, every derivable term of height at most `height`, or
/// `None` once more than `budget` terms in total would be produced.
pub fn terms_up_to_height(g: &Grammar, height: usize, budget: usize) -> Option<Vec<Vec<Term>>> {
    let mut by_nt: Vec<Vec<Term>> = vec![Vec::new(); g.nonterminal_count()];
    for _ in 0..height {
        let mut next: Vec<Vec<Term>> = vec![Vec::new(); g.nonterminal_count()];
        let mut total = 0usize;
        for n in g.nonterminals() {
            let mut seen = HashSet::new();
            for alt in g.rule(n) {
                let sym = &g.symbol(alt).name;
                let mut combos: Vec<Vec<Term>> = vec![Vec::new()];
                for a in &alt.args {
                    let pool = &by_nt[a.0];
                    if combos.len().saturating_mul(pool.len()) > budget {
                        return None;
                    }
                    combos = combos
                        .iter()
                        .flat_map(|c| {
                            pool.iter().map(move |t| {
                                let mut c = c.clone();
                                c.push(t.clone());
                                c
                            })
                        })
                        .collect();
                }
                for children in combos {
                    let t = Term::new(sym.clone(), children);
                    if seen.insert(t.clone()) {
                        next[n.0].push(t);
                    }
                }
            }
            total += next[n.0].len();
            if total > budget {
                return None;
            }
        }
        by_nt = next;
    }
    Some(by_nt)
}

/// Nonterminals with a nonempty language, by the classic productivity
/// iteration.
pub fn productive(g: &Grammar) -> Vec<bool> {
    let mut p = vec![false; g.nonterminal_count()];
    loop {
        let mut changed = false;
        for n in g.nonterminals() {
            if !p[n.0] && g.rule(n).iter().any(|alt| alt.args.iter().all(|a| p[a.0])) {
                p[n.0] = true;
                changed = true;
            }
        }
        if !changed {
            return p;
        }
    }
}

/// Every term of `L(n)` for an acyclic grammar, or `None` past `budget`.
/// Acyclic languages have height at most `nt`, so the height-bounded
/// enumeration is complete.
pub fn finite_language(
    g: &Grammar,
    n: treeweight::grammar::NtId,
    budget: usize,
) -> Option<Vec<Term>> {
    terms_up_to_height(g, g.nonterminal_count(), budget).map(|mut all| all.swap_remove(n.0))
}

/// Variable symbols occurring in `t`.
pub fn variables_of(t: &Term, vars: &HashSet<String>) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for s in t.preorder() {
        if vars.contains(s) {
            out.insert(s.to_string());
        }
    }
    out
}

/// Subset-minimal members by pairwise comparison.
pub fn minimal_sets(family: &[BTreeSet<String>]) -> BTreeSet<BTreeSet<String>> {
    family
        .iter()
        .filter(|s| !family.iter().any(|t| t != *s && t.is_subset(s)))
        .cloned()
        .collect()
}

pub fn random_cnf(
    rng: &mut impl Rng,
    max_vars: usize,
    max_clauses: usize,
    max_len: usize,
) -> CnfFormula {
    let n = rng.gen_range(1..=max_vars);
    let m = rng.gen_range(1..=max_clauses);
    let clauses = (0..m)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            (0..len)
                .map(|_| Literal {
                    var: rng.gen_range(1..=n),
                    positive: rng.gen_bool(0.5),
                })
                .collect()
        })
        .collect();
    CnfFormula::new(n, clauses).unwrap()
}

/// Satisfiability by trying all `2^n` assignments.
pub fn truth_table_sat(c: &CnfFormula) -> bool {
    let n = c.num_vars();
    (0u64..1 << n).any(|bits| {
        c.clauses().iter().all(|clause| {
            clause
                .iter()
                .any(|l| ((bits >> (l.var - 1)) & 1 == 1) == l.positive)
        })
    })
}
