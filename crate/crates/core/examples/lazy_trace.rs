//! Lazy propagation on the binary-numbers grammar: per cycle the changed
//! values, the water front, and the heap minima moved to the done set.

use treeweight::algebra::AffineAlgebra;
use treeweight::fixtures;
use treeweight::grammar::{Grammar, NtId};
use treeweight::solver::solve_lazy;

fn main() {
    let g = Grammar::parse(&fixtures::binary_numbers_rtg(2)).unwrap();
    let costs = AffineAlgebra::parse(fixtures::BINARY_NUMBERS_COSTS).unwrap();
    let solution = solve_lazy(&g, &costs).unwrap();
    let names = |ns: &[NtId]| ns.iter().map(|n| g.name(*n)).collect::<Vec<_>>().join(" ");

    for c in &solution.trace.as_ref().unwrap().cycles {
        let changes: Vec<String> = c
            .changes
            .iter()
            .map(|(n, w)| format!("{}={w}", g.name(*n)))
            .collect();
        println!(
            "cycle {}: changed [{}]  front [{}]  done now [{}]  evaluations {}",
            c.cycle,
            changes.join(" "),
            names(c.front.as_deref().unwrap_or(&[])),
            names(c.minimals.as_deref().unwrap_or(&[])),
            c.evaluations
        );
    }
    println!(
        "al = {}, alternatives evaluated = {}",
        g.stats().al,
        solution.stats.alternative_evaluations
    );
}
