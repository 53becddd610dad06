use super::heap::IndexedHeap;
use super::{evaluate, CycleRecord, Recorder, SolverStats};
use crate::algebra::WeightAlgebra;
use crate::grammar::{Grammar, NtId};

/// Lazy propagation with a heap-ordered water front and per-alternative
/// counters of done arguments.
///
/// Cycle 1 evaluates the nullary alternatives. At the end of each cycle `k`
/// the front `F(k)` is the heap content; if it is empty the run stops.
/// Otherwise all heap minima form `M(k)` and join the done set. In cycle
/// `k+1` every occurrence of a member of `M(k)` bumps its alternative's
/// counter, and an alternative whose counter reaches its arity is evaluated,
/// its only evaluation. A nonterminal enters the heap on its first decrease
/// and later decreases only sift it up.
///
/// Returns, besides weights and statistics, the cycle in which each
/// nonterminal became done.
pub(super) fn run<A: WeightAlgebra>(
    g: &Grammar,
    alg: &A,
    rec: &mut Recorder<A::Weight>,
) -> (Vec<A::Weight>, SolverStats, Vec<Option<usize>>) {
    let nt = g.nonterminal_count();
    let index = g.occurrence_index();
    let mut st = State {
        values: vec![alg.infinity(); nt],
        done: vec![None; nt],
        heap: IndexedHeap::new(nt),
        stats: SolverStats {
            value_changes: vec![0; nt],
            ..SolverStats::default()
        },
        changed: Vec::new(),
        changed_flag: vec![false; nt],
    };
    let mut counters = vec![0usize; g.alternative_count()];
    let mut buf = Vec::new();
    let mut cycle = 1;
    let mut evaluations = 0;
    for (owner, _, alt) in g.alternatives() {
        if alt.args.is_empty() {
            let v = alg.apply(g.symbol(alt), &[]);
            evaluations += 1;
            st.relax(alg, owner, v);
        }
    }

    loop {
        st.stats.alternative_evaluations += evaluations;
        let mut changes = std::mem::take(&mut st.changed);
        changes.sort_unstable();
        for n in &changes {
            st.changed_flag[n.0] = false;
        }
        let front = rec.enabled().then(|| {
            let mut f: Vec<NtId> = st.heap.items().iter().map(|&i| NtId(i)).collect();
            f.sort_unstable();
            f
        });

        let mut minimals = Vec::new();
        if let Some(top) = st.heap.peek() {
            let least = st.values[top].clone();
            while let Some(top) = st.heap.peek() {
                if alg.compare(&st.values[top], &least).is_ne() {
                    break;
                }
                let values = &st.values;
                st.heap.pop(|a, b| key_less(alg, values, a, b));
                st.stats.heap_operations += 1;
                st.done[top] = Some(cycle);
                minimals.push(NtId(top));
            }
        }
        minimals.sort_unstable();

        if rec.enabled() {
            let changes = changes
                .iter()
                .map(|n| (*n, st.values[n.0].clone()))
                .collect();
            let m = minimals.clone();
            rec.push(|| CycleRecord {
                cycle,
                changes,
                front,
                minimals: Some(m),
                evaluations,
            });
        }
        if minimals.is_empty() {
            break;
        }

        cycle += 1;
        evaluations = 0;
        for m in &minimals {
            for occ in index.of(*m) {
                let id = g.alternative_id(occ.owner, occ.alternative);
                counters[id] += 1;
                let alt = &g.rule(occ.owner)[occ.alternative];
                if counters[id] == alt.arity() {
                    let v = evaluate(g, alg, alt, &st.values, &mut buf);
                    evaluations += 1;
                    st.relax(alg, occ.owner, v);
                }
            }
        }
    }
    st.stats.cycles = cycle;
    (st.values, st.stats, st.done)
}

fn key_less<A: WeightAlgebra>(alg: &A, values: &[A::Weight], a: usize, b: usize) -> bool {
    alg.compare(&values[a], &values[b]).then(a.cmp(&b)).is_lt()
}

struct State<W> {
    values: Vec<W>,
    done: Vec<Option<usize>>,
    heap: IndexedHeap,
    stats: SolverStats,
    changed: Vec<NtId>,
    changed_flag: Vec<bool>,
}

impl<W: Clone> State<W> {
    fn relax<A: WeightAlgebra<Weight = W>>(&mut self, alg: &A, n: NtId, v: W) {
        // done values are final
        if self.done[n.0].is_some() || !alg.less(&v, &self.values[n.0]) {
            return;
        }
        self.values[n.0] = v;
        let values = &self.values;
        if self.heap.contains(n.0) {
            self.heap.decrease(n.0, |a, b| key_less(alg, values, a, b));
        } else {
            self.heap.push(n.0, |a, b| key_less(alg, values, a, b));
        }
        self.stats.heap_operations += 1;
        if !self.changed_flag[n.0] {
            self.changed_flag[n.0] = true;
            self.changed.push(n);
            self.stats.value_changes[n.0] += 1;
        }
    }
}
