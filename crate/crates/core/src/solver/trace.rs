//! Structured export of a solver run.
//!
//! The document is a JSON object:
//!
//! ```text
//! {
//!   "algorithm": "naive" | "liquid" | "lazy",
//!   "nonterminals": [name, ...],
//!   "cycles": [
//!     { "cycle": k,
//!       "changed": [ { "nonterminal": name, "weight": text }, ... ],
//!       "front": [name, ...] | null,       // water front F(k)
//!       "minimals": [name, ...] | null,    // M(k), lazy only
//!       "done": [name, ...] | null,        // D(k), lazy only
//!       "evaluations": n,                  // alternatives evaluated in cycle k
//!       "total_evaluations": n }           // cumulative
//!   ],
//!   "stats": { "cycles": n, "alternative_evaluations": n,
//!              "heap_operations": n, "value_changes": { name: n, ... } },
//!   "weights": [ { "nonterminal": name, "weight": text }, ... ]
//! }
//! ```
//!
//! Weights are rendered by the algebra, with `INF` for `∞`. Nonterminal
//! lists follow grammar order. `cycles` is empty when tracing was off.

use serde::Serialize;
use serde_json::Value;

use super::Solution;
use crate::algebra::WeightAlgebra;
use crate::grammar::{Grammar, NtId};

#[derive(Serialize)]
struct Entry {
    nonterminal: String,
    weight: String,
}

#[derive(Serialize)]
struct Cycle {
    cycle: usize,
    changed: Vec<Entry>,
    front: Option<Vec<String>>,
    minimals: Option<Vec<String>>,
    done: Option<Vec<String>>,
    evaluations: usize,
    total_evaluations: usize,
}

#[derive(Serialize)]
struct Stats {
    cycles: usize,
    alternative_evaluations: usize,
    heap_operations: usize,
    value_changes: serde_json::Map<String, Value>,
}

#[derive(Serialize)]
struct Document {
    algorithm: String,
    nonterminals: Vec<String>,
    cycles: Vec<Cycle>,
    stats: Stats,
    weights: Vec<Entry>,
}

pub fn trace_document<A: WeightAlgebra>(
    g: &Grammar,
    alg: &A,
    solution: &Solution<A::Weight>,
) -> Value {
    let names = |ns: &[NtId]| -> Vec<String> {
        let mut v: Vec<NtId> = ns.to_vec();
        v.sort_unstable();
        v.into_iter().map(|n| g.name(n).to_string()).collect()
    };
    let mut total = 0;
    let mut done: Vec<NtId> = Vec::new();
    let cycles = solution
        .trace
        .iter()
        .flat_map(|t| &t.cycles)
        .map(|c| {
            total += c.evaluations;
            if let Some(m) = &c.minimals {
                done.extend(m);
            }
            Cycle {
                cycle: c.cycle,
                changed: c
                    .changes
                    .iter()
                    .map(|(n, w)| Entry {
                        nonterminal: g.name(*n).to_string(),
                        weight: alg.render(w),
                    })
                    .collect(),
                front: c.front.as_deref().map(names),
                minimals: c.minimals.as_deref().map(names),
                done: c.minimals.as_ref().map(|_| names(&done)),
                evaluations: c.evaluations,
                total_evaluations: total,
            }
        })
        .collect();
    let doc = Document {
        algorithm: solution.algorithm.to_string(),
        nonterminals: g.nonterminals().map(|n| g.name(n).to_string()).collect(),
        cycles,
        stats: Stats {
            cycles: solution.stats.cycles,
            alternative_evaluations: solution.stats.alternative_evaluations,
            heap_operations: solution.stats.heap_operations,
            value_changes: g
                .nonterminals()
                .map(|n| {
                    (
                        g.name(n).to_string(),
                        Value::from(solution.stats.value_changes[n.0]),
                    )
                })
                .collect(),
        },
        weights: solution
            .weights
            .iter()
            .map(|(n, w)| Entry {
                nonterminal: g.name(n).to_string(),
                weight: alg.render(w),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("serializable")
}
