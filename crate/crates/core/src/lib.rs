//! Minimal term weights for regular tree grammars.
//!
//! Given a grammar and a [weight algebra](algebra::WeightAlgebra), the
//! [solvers](solver) compute for every nonterminal the least weight of any
//! term in its language. Three fixpoint algorithms are provided and agree on
//! every input: a naive synchronous iteration, a water-front (liquid-flow)
//! variant, and lazy propagation, which evaluates every alternative at most
//! once and runs in `O(al * (ar + log nt))`.
//!
//! Around the solvers sit witness extraction, empty-language pruning,
//! weight-ordered enumeration ([`kbest`]), and a variable-set weight
//! analysis under the subset order together with its CNF reduction
//! ([`partial`]).
//!
//! ```
//! use treeweight::algebra::AffineAlgebra;
//! use treeweight::grammar::Grammar;
//! use treeweight::solver::{extract_witnesses, solve_lazy};
//! use treeweight::fixtures;
//!
//! let g = Grammar::parse(&fixtures::binary_numbers_rtg(2)).unwrap();
//! let costs = AffineAlgebra::parse(fixtures::BINARY_NUMBERS_COSTS).unwrap();
//! let solution = solve_lazy(&g, &costs).unwrap();
//! let q2 = g.lookup("Q2").unwrap();
//! assert_eq!(solution.weights.get(q2).finite(), Some(0));
//! let witnesses = extract_witnesses(&g, &costs, &solution).unwrap();
//! assert_eq!(witnesses.get(q2).unwrap().to_string(), "q(p(q(p(a))))");
//! ```

pub mod algebra;
pub mod cli;
pub mod fixtures;
pub mod grammar;
pub mod kbest;
pub mod partial;
pub mod solver;
