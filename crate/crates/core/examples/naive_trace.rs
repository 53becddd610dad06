//! Runs the naive fixpoint iteration on the binary-numbers grammar and
//! prints the value of every nonterminal after every cycle.

use treeweight::algebra::{AffineAlgebra, Cost};
use treeweight::fixtures;
use treeweight::grammar::Grammar;
use treeweight::solver::{Solver, StopMode};

fn main() {
    let g = Grammar::parse(&fixtures::binary_numbers_rtg(3)).unwrap();
    let costs = AffineAlgebra::parse(fixtures::BINARY_NUMBERS_COSTS).unwrap();
    let solution = Solver::naive(StopMode::FixedCycles)
        .solve(&g, &costs)
        .unwrap();
    let trace = solution.trace.as_ref().unwrap();

    print!("{:>5}", "cycle");
    for n in g.nonterminals() {
        print!("{:>5}", g.name(n));
    }
    println!();
    for k in 0..=solution.stats.cycles {
        print!("{k:>5}");
        for n in g.nonterminals() {
            let v = trace.value_at(n, k, Cost::Infinite);
            let changed = trace
                .cycle(k)
                .is_some_and(|c| c.changes.iter().any(|(m, _)| *m == n));
            let cell = if changed {
                format!("{v}*")
            } else {
                v.to_string()
            };
            print!("{cell:>5}");
        }
        println!();
    }
    println!(
        "{} cycles, {} alternative evaluations (* marks a change)",
        solution.stats.cycles, solution.stats.alternative_evaluations
    );
}
