//! Fixpoint solvers computing the minimal weight `WG(N)` of every
//! nonterminal simultaneously.
//!
//! * [`Algorithm::Naive`] recomputes every alternative in every cycle from
//!   the previous cycle's values.
//! * [`Algorithm::LiquidFlow`] re-evaluates only the alternatives that have
//!   an argument whose value dropped in the previous cycle (the water front).
//! * [`Algorithm::Lazy`] propagates a value only once it is known to be
//!   final: the water front lives in a binary min-heap, the heap minima are
//!   moved to the done set, and each alternative keeps a counter of its done
//!   arguments so that it is evaluated exactly once, when the counter reaches
//!   its arity.
//!
//! All three agree on the resulting [`WeightMap`]; a nonterminal has weight
//! `∞` exactly when its language is empty.

mod heap;
mod lazy;
mod liquid;
mod naive;
mod prune;
mod trace;
mod witness;

use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraError, WeightAlgebra};
use crate::grammar::{Grammar, NtId};

pub use prune::prune_empty;
pub use trace::trace_document;
pub use witness::{extract_witnesses, WitnessMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("witness extraction needs the done order recorded by the lazy solver")]
    MissingDoneOrder,
    #[error("no alternative of {0} reproduces its weight from earlier-done arguments")]
    Inconsistent(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StopMode {
    /// Run exactly `nt` cycles.
    FixedCycles,
    /// Stop after the first cycle in which no value changed.
    #[default]
    EarlyStop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Naive(StopMode),
    LiquidFlow,
    Lazy,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Naive(_) => "naive",
            Algorithm::LiquidFlow => "liquid",
            Algorithm::Lazy => "lazy",
        })
    }
}

/// Final weight per nonterminal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMap<W> {
    weights: Vec<W>,
}

impl<W> WeightMap<W> {
    pub fn get(&self, n: NtId) -> &W {
        &self.weights[n.0]
    }

    pub fn as_slice(&self) -> &[W] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (NtId, &W)> {
        self.weights.iter().enumerate().map(|(i, w)| (NtId(i), w))
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// What happened in one computation cycle. Only changed values are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleRecord<W> {
    pub cycle: usize,
    /// New values of the nonterminals whose value changed, in id order.
    pub changes: Vec<(NtId, W)>,
    /// Water front after this cycle; `None` for the naive solver.
    pub front: Option<Vec<NtId>>,
    /// Nonterminals moved to the done set in this cycle (lazy solver only).
    pub minimals: Option<Vec<NtId>>,
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace<W> {
    pub cycles: Vec<CycleRecord<W>>,
}

impl<W: Clone> Trace<W> {
    /// Value of `n` after cycle `k` (cycle 0 is the all-`∞` start).
    pub fn value_at(&self, n: NtId, k: usize, infinity: W) -> W {
        let mut v = infinity;
        for c in self.cycles.iter().take_while(|c| c.cycle <= k) {
            if let Some((_, w)) = c.changes.iter().find(|(m, _)| *m == n) {
                v = w.clone();
            }
        }
        v
    }

    pub fn cycle(&self, k: usize) -> Option<&CycleRecord<W>> {
        self.cycles.iter().find(|c| c.cycle == k)
    }

    /// Done set after cycle `k`, in the order nonterminals entered it.
    pub fn done_at(&self, k: usize) -> Vec<NtId> {
        self.cycles
            .iter()
            .take_while(|c| c.cycle <= k)
            .filter_map(|c| c.minimals.as_ref())
            .flatten()
            .copied()
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SolverStats {
    pub cycles: usize,
    pub alternative_evaluations: usize,
    /// Per nonterminal, how often its value decreased (including the first
    /// drop from `∞`).
    pub value_changes: Vec<usize>,
    pub heap_operations: usize,
}

#[derive(Debug, Clone)]
pub struct Solution<W> {
    pub algorithm: Algorithm,
    pub weights: WeightMap<W>,
    pub trace: Option<Trace<W>>,
    pub stats: SolverStats,
    /// Cycle in which each nonterminal entered the done set; lazy solver only.
    pub done_cycle: Option<Vec<Option<usize>>>,
}

/// Solver configuration. Tracing is on by default.
#[derive(Debug, Clone, Copy)]
pub struct Solver {
    algorithm: Algorithm,
    record_trace: bool,
}

impl Solver {
    pub fn new(algorithm: Algorithm) -> Self {
        Solver {
            algorithm,
            record_trace: true,
        }
    }

    pub fn naive(stop: StopMode) -> Self {
        Self::new(Algorithm::Naive(stop))
    }

    pub fn liquid_flow() -> Self {
        Self::new(Algorithm::LiquidFlow)
    }

    pub fn lazy() -> Self {
        Self::new(Algorithm::Lazy)
    }

    pub fn record_trace(mut self, on: bool) -> Self {
        self.record_trace = on;
        self
    }

    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    pub fn solve<A: WeightAlgebra>(
        &self,
        g: &Grammar,
        alg: &A,
    ) -> Result<Solution<A::Weight>, SolverError> {
        alg.check_signature(g.signature())?;
        let mut rec = Recorder::new(self.record_trace);
        let (weights, stats, done_cycle) = match self.algorithm {
            Algorithm::Naive(stop) => {
                let (w, s) = naive::run(g, alg, stop, &mut rec);
                (w, s, None)
            }
            Algorithm::LiquidFlow => {
                let (w, s) = liquid::run(g, alg, &mut rec);
                (w, s, None)
            }
            Algorithm::Lazy => {
                let (w, s, d) = lazy::run(g, alg, &mut rec);
                (w, s, Some(d))
            }
        };
        Ok(Solution {
            algorithm: self.algorithm,
            weights: WeightMap { weights },
            trace: rec.finish(),
            stats,
            done_cycle,
        })
    }
}

pub fn solve_naive<A: WeightAlgebra>(
    g: &Grammar,
    alg: &A,
    stop: StopMode,
) -> Result<Solution<A::Weight>, SolverError> {
    Solver::naive(stop).solve(g, alg)
}

pub fn solve_liquid_flow<A: WeightAlgebra>(
    g: &Grammar,
    alg: &A,
) -> Result<Solution<A::Weight>, SolverError> {
    Solver::liquid_flow().solve(g, alg)
}

pub fn solve_lazy<A: WeightAlgebra>(
    g: &Grammar,
    alg: &A,
) -> Result<Solution<A::Weight>, SolverError> {
    Solver::lazy().solve(g, alg)
}

/// Collects cycle records when tracing is enabled.
struct Recorder<W> {
    cycles: Option<Vec<CycleRecord<W>>>,
}

impl<W> Recorder<W> {
    fn new(on: bool) -> Self {
        Recorder {
            cycles: on.then(Vec::new),
        }
    }

    fn enabled(&self) -> bool {
        self.cycles.is_some()
    }

    fn push(&mut self, record: impl FnOnce() -> CycleRecord<W>) {
        if let Some(c) = &mut self.cycles {
            c.push(record());
        }
    }

    fn finish(self) -> Option<Trace<W>> {
        self.cycles.map(|cycles| Trace { cycles })
    }
}

/// Evaluates one alternative against current values, reusing `buf`.
fn evaluate<A: WeightAlgebra>(
    g: &Grammar,
    alg: &A,
    alt: &crate::grammar::Alternative,
    values: &[A::Weight],
    buf: &mut Vec<A::Weight>,
) -> A::Weight {
    buf.clear();
    buf.extend(alt.args.iter().map(|a| values[a.0].clone()));
    alg.apply(g.symbol(alt), buf)
}
