use std::collections::HashSet;

use super::WeightMap;
use crate::algebra::WeightAlgebra;
use crate::grammar::{Grammar, RawGrammar, RawRule};

/// Drops every nonterminal of weight `∞` and every alternative mentioning
/// one. Surviving nonterminals keep their languages; symbols no longer used
/// leave the signature.
pub fn prune_empty<A: WeightAlgebra>(
    g: &Grammar,
    alg: &A,
    weights: &WeightMap<A::Weight>,
) -> Grammar {
    let live = |n: crate::grammar::NtId| !alg.is_infinite(weights.get(n));
    let full = g.to_raw();
    let mut rules = Vec::new();
    let mut used = HashSet::new();
    for (n, rule) in g.nonterminals().zip(full.rules) {
        if !live(n) {
            continue;
        }
        let alternatives: Vec<_> = g
            .rule(n)
            .iter()
            .zip(rule.alternatives)
            .filter(|(alt, _)| alt.args.iter().all(|a| live(*a)))
            .map(|(_, raw)| raw)
            .collect();
        used.extend(alternatives.iter().map(|a| a.symbol.clone()));
        rules.push(RawRule {
            lhs: rule.lhs,
            alternatives,
        });
    }
    let raw = RawGrammar {
        rules,
        variables: full
            .variables
            .into_iter()
            .filter(|v| used.contains(v))
            .collect(),
    };
    Grammar::from_raw(&raw).expect("pruning preserves validity")
}
