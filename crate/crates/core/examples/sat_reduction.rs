//! Variable-set weights and the CNF reduction: the start nonterminal's
//! weight family has a member with exactly one variable per propositional
//! variable iff the formula is satisfiable.

use treeweight::partial::{cnf_to_grammar, decide_sat, solve_var_sets, CnfFormula, CNF_START};

fn main() {
    let cnf = CnfFormula::parse_dimacs("p cnf 3 2\n1 -3 0\n-2 3 0\n").unwrap();
    let g = cnf_to_grammar(&cnf);
    println!(
        "reduction grammar ({} rules, {} alternatives):\n{g}",
        g.stats().nt,
        g.stats().al
    );

    let sol = solve_var_sets(&g).unwrap();
    for name in ["D'1", "D'2", CNF_START] {
        println!("{name}:\n{}", sol.render(g.lookup(name).unwrap()));
    }

    for text in ["p cnf 3 2\n1 -3 0\n-2 3 0\n", "p cnf 1 2\n1 0\n-1 0\n"] {
        let cnf = CnfFormula::parse_dimacs(text).unwrap();
        let out = decide_sat(&cnf).unwrap();
        match out.render_assignment() {
            Some(a) => println!(
                "SATISFIABLE with {a} (least member has {} variables)",
                out.min_cardinality
            ),
            None => println!(
                "UNSATISFIABLE (least member has {} variables)",
                out.min_cardinality
            ),
        }
    }
}
