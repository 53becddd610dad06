//! All three solvers on growing binary-numbers grammars: identical weights,
//! very different amounts of work.

use treeweight::algebra::AffineAlgebra;
use treeweight::fixtures;
use treeweight::grammar::Grammar;
use treeweight::solver::{Solver, StopMode};

fn main() {
    let costs = AffineAlgebra::parse(fixtures::BINARY_NUMBERS_COSTS).unwrap();
    println!(
        "{:>6} {:>6} {:>12} {:>12} {:>12}",
        "n", "al", "naive", "liquid", "lazy"
    );
    for n in [8, 32, 128, 512] {
        let g = Grammar::parse(&fixtures::binary_numbers_rtg(n)).unwrap();
        let run = |s: Solver| s.record_trace(false).solve(&g, &costs).unwrap();
        let naive = run(Solver::naive(StopMode::EarlyStop));
        let liquid = run(Solver::liquid_flow());
        let lazy = run(Solver::lazy());
        assert_eq!(naive.weights, lazy.weights);
        assert_eq!(liquid.weights, lazy.weights);
        println!(
            "{:>6} {:>6} {:>12} {:>12} {:>12}",
            n,
            g.stats().al,
            naive.stats.alternative_evaluations,
            liquid.stats.alternative_evaluations,
            lazy.stats.alternative_evaluations
        );
    }
}
