use super::{evaluate, CycleRecord, Recorder, SolverStats};
use crate::algebra::WeightAlgebra;
use crate::grammar::{Grammar, NtId};

/// Water-front iteration. Cycle 1 evaluates the nullary alternatives; each
/// later cycle evaluates, once, every alternative with an argument in the
/// previous front, found through the occurrence index. Stops after the first
/// cycle that leaves the front empty.
pub(super) fn run<A: WeightAlgebra>(
    g: &Grammar,
    alg: &A,
    rec: &mut Recorder<A::Weight>,
) -> (Vec<A::Weight>, SolverStats) {
    let nt = g.nonterminal_count();
    let index = g.occurrence_index();
    let mut values = vec![alg.infinity(); nt];
    let mut stats = SolverStats {
        value_changes: vec![0; nt],
        ..SolverStats::default()
    };
    let mut stamp = vec![0usize; g.alternative_count()];
    let mut changed_flag = vec![false; nt];
    let mut proposals: Vec<(NtId, A::Weight)> = Vec::new();
    let mut buf = Vec::new();
    let mut front: Vec<NtId> = Vec::new();
    let mut cycle = 0;

    loop {
        cycle += 1;
        proposals.clear();
        if cycle == 1 {
            for (owner, _, alt) in g.alternatives() {
                if alt.args.is_empty() {
                    proposals.push((owner, alg.apply(g.symbol(alt), &[])));
                }
            }
        } else {
            for &n in &front {
                for occ in index.of(n) {
                    let id = g.alternative_id(occ.owner, occ.alternative);
                    if stamp[id] == cycle {
                        continue;
                    }
                    stamp[id] = cycle;
                    let alt = &g.rule(occ.owner)[occ.alternative];
                    proposals.push((occ.owner, evaluate(g, alg, alt, &values, &mut buf)));
                }
            }
        }
        let evaluations = proposals.len();
        stats.alternative_evaluations += evaluations;

        let mut next_front = Vec::new();
        for (owner, v) in proposals.drain(..) {
            if alg.less(&v, &values[owner.0]) {
                values[owner.0] = v;
                if !changed_flag[owner.0] {
                    changed_flag[owner.0] = true;
                    next_front.push(owner);
                }
            }
        }
        next_front.sort_unstable();
        for n in &next_front {
            changed_flag[n.0] = false;
            stats.value_changes[n.0] += 1;
        }
        front = next_front;
        if rec.enabled() {
            let changes = front.iter().map(|n| (*n, values[n.0].clone())).collect();
            let f = front.clone();
            rec.push(|| CycleRecord {
                cycle,
                changes,
                front: Some(f),
                minimals: None,
                evaluations,
            });
        }
        if front.is_empty() {
            break;
        }
    }
    stats.cycles = cycle;
    (values, stats)
}
