//! Removes nonterminals whose language is empty, together with every
//! alternative that mentions one.

use treeweight::algebra::SizeAlgebra;
use treeweight::grammar::Grammar;
use treeweight::solver::{prune_empty, solve_lazy};

const GRAMMAR: &str = "
S ::= f(E) | g(S, A) | a ;
A ::= b | h(A) ;
E ::= g(E, A) ;      # never bottoms out
U ::= ;              # no alternatives at all
";

fn main() {
    let g = Grammar::parse(GRAMMAR).unwrap();
    let solution = solve_lazy(&g, &SizeAlgebra).unwrap();
    for (n, w) in solution.weights.iter() {
        println!("size of smallest {} term: {w}", g.name(n));
    }
    println!(
        "\npruned:\n{}",
        prune_empty(&g, &SizeAlgebra, &solution.weights)
    );
}
