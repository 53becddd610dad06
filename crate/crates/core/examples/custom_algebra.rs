//! Plugging in a user-defined weight algebra and sampling its laws.
//!
//! `Depth` counts nesting of one chosen symbol only. `Lossy` subtracts one
//! at each `f`, which breaks the increasing law, and the checker says so.

use std::cmp::Ordering;

use treeweight::algebra::{check_algebra_laws, Cost, WeightAlgebra};
use treeweight::grammar::{Grammar, Symbol};
use treeweight::solver::{extract_witnesses, solve_lazy};

/// Number of `g` symbols on the worst root-to-leaf path.
struct Depth;

impl WeightAlgebra for Depth {
    type Weight = Cost;

    fn infinity(&self) -> Cost {
        Cost::Infinite
    }

    fn compare(&self, a: &Cost, b: &Cost) -> Ordering {
        a.cmp(b)
    }

    fn apply(&self, symbol: &Symbol, args: &[Cost]) -> Cost {
        let deepest = args.iter().copied().max().unwrap_or(Cost::Finite(0));
        if symbol.name == "g" {
            deepest.saturating_add(Cost::Finite(1))
        } else {
            deepest
        }
    }

    fn render(&self, w: &Cost) -> String {
        w.to_string()
    }
}

struct Lossy;

impl WeightAlgebra for Lossy {
    type Weight = Cost;

    fn infinity(&self) -> Cost {
        Cost::Infinite
    }

    fn compare(&self, a: &Cost, b: &Cost) -> Ordering {
        a.cmp(b)
    }

    fn apply(&self, _: &Symbol, args: &[Cost]) -> Cost {
        match args.first() {
            None => Cost::Finite(5),
            Some(Cost::Finite(x)) => Cost::Finite(x.saturating_sub(1)),
            Some(Cost::Infinite) => Cost::Infinite,
        }
    }

    fn render(&self, w: &Cost) -> String {
        w.to_string()
    }
}

fn main() {
    let g = Grammar::parse("S ::= f(S) | g(T) ; T ::= g(T) | f(U) ; U ::= a ;").unwrap();

    let report = check_algebra_laws(&Depth, g.signature(), 1000, 7);
    println!(
        "Depth: {} samples, {} violations",
        report.samples,
        report.violations.len()
    );
    let solution = solve_lazy(&g, &Depth).unwrap();
    let witnesses = extract_witnesses(&g, &Depth, &solution).unwrap();
    for (n, w) in solution.weights.iter() {
        println!("  {} = {w}  {}", g.name(n), witnesses.get(n).unwrap());
    }

    let report = check_algebra_laws(&Lossy, g.signature(), 1000, 7);
    println!(
        "Lossy: {} samples, {} violations",
        report.samples,
        report.violations.len()
    );
    if let Some(v) = report.violations.first() {
        println!("  first: {v}");
    }
}
