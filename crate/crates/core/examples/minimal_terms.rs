//! With terms as their own weights, ordered by size and then by symbol
//! precedence, the minimal weight of a nonterminal is its least term.

use treeweight::algebra::{MinTermAlgebra, WeightAlgebra};
use treeweight::grammar::Grammar;
use treeweight::solver::solve_lazy;

const GRAMMAR: &str = "
Expr ::= plus(Expr, Expr) | times(Expr, Expr) | neg(Atom) | x | y ;
Atom ::= paren(Expr) | x | y ;
Pair ::= pair(Expr, Atom) | pair(Atom, Expr) ;
";

fn main() {
    let g = Grammar::parse(GRAMMAR).unwrap();
    // y before x: the least Atom is y
    let alg = MinTermAlgebra::new(["y", "x", "neg", "paren", "times", "plus", "pair"]);
    let solution = solve_lazy(&g, &alg).unwrap();
    for (n, w) in solution.weights.iter() {
        println!("{:>4}: {}", g.name(n), alg.render(w));
    }
}
