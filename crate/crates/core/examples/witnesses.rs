//! A minimal-weight term for every nonterminal, read off the lazy solver's
//! done order.

use treeweight::algebra::{AffineAlgebra, WeightAlgebra};
use treeweight::fixtures;
use treeweight::grammar::Grammar;
use treeweight::solver::{extract_witnesses, solve_lazy};

fn main() {
    let g = Grammar::parse(&fixtures::binary_numbers_rtg(4)).unwrap();
    let costs = AffineAlgebra::parse(fixtures::BINARY_NUMBERS_COSTS).unwrap();
    let solution = solve_lazy(&g, &costs).unwrap();
    let witnesses = extract_witnesses(&g, &costs, &solution).unwrap();
    for (n, t) in witnesses.iter() {
        let t = t.expect("every language here is nonempty");
        let w = costs.weigh(g.signature(), t).unwrap();
        println!("{:>3} = {}  {}", g.name(n), costs.render(&w), t);
    }
}
