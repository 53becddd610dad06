use super::{evaluate, CycleRecord, Recorder, SolverStats, StopMode};
use crate::algebra::WeightAlgebra;
use crate::grammar::{Grammar, NtId};

/// Synchronous fixpoint iteration: cycle `k+1` reads only cycle-`k` values,
/// and every alternative is evaluated in every cycle.
pub(super) fn run<A: WeightAlgebra>(
    g: &Grammar,
    alg: &A,
    stop: StopMode,
    rec: &mut Recorder<A::Weight>,
) -> (Vec<A::Weight>, SolverStats) {
    let nt = g.nonterminal_count();
    let mut current = vec![alg.infinity(); nt];
    let mut next = Vec::with_capacity(nt);
    let mut buf = Vec::new();
    let mut stats = SolverStats {
        value_changes: vec![0; nt],
        ..SolverStats::default()
    };
    let mut cycle = 0;
    loop {
        if stop == StopMode::FixedCycles && cycle == nt {
            break;
        }
        cycle += 1;
        let mut evaluations = 0;
        next.clear();
        for n in g.nonterminals() {
            // min over the empty set is ∞
            let mut best = alg.infinity();
            for alt in g.rule(n) {
                let v = evaluate(g, alg, alt, &current, &mut buf);
                evaluations += 1;
                if alg.less(&v, &best) {
                    best = v;
                }
            }
            next.push(best);
        }
        let mut changed = Vec::new();
        for (i, (old, new)) in current.iter().zip(&next).enumerate() {
            if alg.compare(old, new).is_ne() {
                stats.value_changes[i] += 1;
                changed.push(NtId(i));
            }
        }
        std::mem::swap(&mut current, &mut next);
        stats.alternative_evaluations += evaluations;
        if rec.enabled() {
            let changes = changed.iter().map(|n| (*n, current[n.0].clone())).collect();
            rec.push(|| CycleRecord {
                cycle,
                changes,
                front: None,
                minimals: None,
                evaluations,
            });
        }
        if stop == StopMode::EarlyStop && changed.is_empty() {
            break;
        }
    }
    stats.cycles = cycle;
    (current, stats)
}
