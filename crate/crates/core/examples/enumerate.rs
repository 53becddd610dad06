//! The lightest terms of a nonterminal, in nondecreasing weight order.

use treeweight::algebra::{AffineAlgebra, HeightAlgebra};
use treeweight::fixtures;
use treeweight::grammar::Grammar;
use treeweight::kbest::enumerate;

fn main() {
    let g = Grammar::parse(&fixtures::binary_numbers_rtg(3)).unwrap();
    let costs = AffineAlgebra::parse(fixtures::BINARY_NUMBERS_COSTS).unwrap();
    let q3 = g.lookup("Q3").unwrap();
    println!("all of L(Q3) by cost:");
    for (t, w) in enumerate(&g, &costs, q3, 100).unwrap() {
        println!("  {w}\t{t}");
    }

    let lists = Grammar::parse("L ::= nil | cons(E, L) ; E ::= zero | succ(E) ;").unwrap();
    println!("ten lowest terms of L by height:");
    for (t, w) in enumerate(&lists, &HeightAlgebra, lists.lookup("L").unwrap(), 10).unwrap() {
        println!("  {w}\t{t}");
    }
}
