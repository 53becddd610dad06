use super::{Solution, SolverError};
use crate::algebra::WeightAlgebra;
use crate::grammar::{Grammar, NtId, Term};

/// A minimal-weight term per nonterminal, `None` for empty languages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessMap {
    terms: Vec<Option<Term>>,
}

impl WitnessMap {
    pub fn get(&self, n: NtId) -> Option<&Term> {
        self.terms[n.0].as_ref()
    }

    pub fn iter(&self) -> impl Iterator<Item = (NtId, Option<&Term>)> {
        self.terms
            .iter()
            .enumerate()
            .map(|(i, t)| (NtId(i), t.as_ref()))
    }
}

/// Builds a witness term for every nonterminal of finite weight.
///
/// Nonterminals are handled in the order they became done. For each one the
/// first alternative, in rule order, whose arguments all became done in an
/// earlier cycle and whose value over the final argument weights equals the
/// nonterminal's weight is expanded with the arguments' witnesses. Done
/// cycles strictly decrease along this recursion, so it terminates, and
/// every subterm is minimal for the nonterminal it stems from.
pub fn extract_witnesses<A: WeightAlgebra>(
    g: &Grammar,
    alg: &A,
    solution: &Solution<A::Weight>,
) -> Result<WitnessMap, SolverError> {
    let done = solution
        .done_cycle
        .as_ref()
        .ok_or(SolverError::MissingDoneOrder)?;
    let weights = solution.weights.as_slice();
    let mut order: Vec<(usize, NtId)> = g
        .nonterminals()
        .filter_map(|n| done[n.0].map(|k| (k, n)))
        .collect();
    order.sort_unstable();

    let mut terms: Vec<Option<Term>> = vec![None; g.nonterminal_count()];
    let mut buf = Vec::new();
    for (k, n) in order {
        let chosen = g.rule(n).iter().find(|alt| {
            if !alt.args.iter().all(|a| done[a.0].is_some_and(|j| j < k)) {
                return false;
            }
            buf.clear();
            buf.extend(alt.args.iter().map(|a| weights[a.0].clone()));
            alg.compare(&alg.apply(g.symbol(alt), &buf), &weights[n.0])
                .is_eq()
        });
        let alt = chosen.ok_or_else(|| SolverError::Inconsistent(g.name(n).to_string()))?;
        let children = alt
            .args
            .iter()
            .map(|a| terms[a.0].clone().expect("argument done earlier"))
            .collect();
        terms[n.0] = Some(Term::new(g.symbol(alt).name.clone(), children));
    }
    for n in g.nonterminals() {
        if terms[n.0].is_none() && !alg.is_infinite(&weights[n.0]) {
            return Err(SolverError::Inconsistent(g.name(n).to_string()));
        }
    }
    Ok(WitnessMap { terms })
}
