//! Variable-set weights under the subset partial order.
//!
//! The weight of a term is the set of variable symbols occurring in it, and
//! function symbols combine argument weights by union. Since subset is only
//! a partial order, the weight of a language is the family of its
//! subset-minimal term weights, an [`Antichain`]. Computing these families is
//! NP-hard; [`cnf_to_grammar`] and [`decide_sat`] turn a CNF formula into a
//! grammar whose start weight decides satisfiability.

mod cnf;
mod varset;

use thiserror::Error;

use crate::grammar::{Alternative, Grammar, GrammarError, NtId, RawAlternative, RawGrammar};

pub use cnf::{CnfFormula, Literal};
pub use varset::{minimize_antichain, pointwise_union, Antichain, SetFamily, VarNames, VarSet};

/// Largest antichain (and largest unminimized product) a run may build.
pub const DEFAULT_ANTICHAIN_CAP: usize = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartialError {
    #[error("antichain grew beyond {cap} members")]
    AntichainTooLarge { cap: usize },
    #[error("DIMACS line {line}: {message}")]
    Dimacs { line: usize, message: String },
    #[error("invalid CNF: {0}")]
    InvalidCnf(String),
    #[error(transparent)]
    Grammar(#[from] GrammarError),
}

/// Per-nonterminal variable-set weights.
#[derive(Debug, Clone)]
pub struct VarSetSolution {
    pub variables: VarNames,
    pub sets: Vec<Antichain>,
    pub cycles: usize,
}

impl VarSetSolution {
    pub fn get(&self, n: NtId) -> &Antichain {
        &self.sets[n.0]
    }

    pub fn render(&self, n: NtId) -> String {
        self.variables.render(self.get(n))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VarSetSolver {
    cap: usize,
}

impl Default for VarSetSolver {
    fn default() -> Self {
        VarSetSolver {
            cap: DEFAULT_ANTICHAIN_CAP,
        }
    }
}

impl VarSetSolver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn antichain_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    /// Synchronous least fixpoint: cycle `k + 1` reads only cycle `k`.
    pub fn solve(&self, g: &Grammar) -> Result<VarSetSolution, PartialError> {
        let variables = VarNames::new(g.signature().variables().map(|s| s.name.clone()));
        let leaf: Vec<Option<usize>> = g
            .signature()
            .iter()
            .map(|s| {
                if s.variable {
                    variables.index(&s.name)
                } else {
                    None
                }
            })
            .collect();
        let ctx = Ctx {
            g,
            leaf: &leaf,
            cap: self.cap,
        };
        let mut sets = vec![Antichain::empty(); g.nonterminal_count()];
        let mut cycles = 0;
        loop {
            cycles += 1;
            let mut next = sets.clone();
            for n in g.nonterminals() {
                let mut pool: Vec<VarSet> = next[n.0].members().to_vec();
                for alt in g.rule(n) {
                    pool.extend(ctx.contribution(alt, &sets)?.members().iter().cloned());
                }
                next[n.0] = ctx.capped(minimize_antichain(pool))?;
            }
            if next == sets {
                break;
            }
            sets = next;
        }
        Ok(VarSetSolution {
            variables,
            sets,
            cycles,
        })
    }

    /// Weight family of a single alternative given final nonterminal weights.
    pub fn alternative(
        &self,
        g: &Grammar,
        solution: &VarSetSolution,
        alt: &Alternative,
    ) -> Result<Antichain, PartialError> {
        let leaf: Vec<Option<usize>> = g
            .signature()
            .iter()
            .map(|s| {
                if s.variable {
                    solution.variables.index(&s.name)
                } else {
                    None
                }
            })
            .collect();
        Ctx {
            g,
            leaf: &leaf,
            cap: self.cap,
        }
        .contribution(alt, &solution.sets)
    }
}

struct Ctx<'a> {
    g: &'a Grammar,
    leaf: &'a [Option<usize>],
    cap: usize,
}

impl Ctx<'_> {
    fn capped(&self, a: Antichain) -> Result<Antichain, PartialError> {
        if a.len() > self.cap {
            Err(PartialError::AntichainTooLarge { cap: self.cap })
        } else {
            Ok(a)
        }
    }

    fn contribution(
        &self,
        alt: &Alternative,
        sets: &[Antichain],
    ) -> Result<Antichain, PartialError> {
        let sym = self.g.symbol(alt);
        if alt.args.is_empty() {
            return Ok(match self.leaf[sym.id.0] {
                Some(v) => minimize_antichain([VarSet::singleton(v)]),
                None => Antichain::unit(),
            });
        }
        // fold argument by argument, minimizing as we go
        let mut acc = Antichain::unit();
        for a in &alt.args {
            let s = &sets[a.0];
            if s.is_empty() {
                return Ok(Antichain::empty());
            }
            if acc.len().saturating_mul(s.len()) > self.cap {
                return Err(PartialError::AntichainTooLarge { cap: self.cap });
            }
            let product = acc
                .members()
                .iter()
                .flat_map(|x| s.members().iter().map(move |y| x.union(y)));
            acc = self.capped(minimize_antichain(product))?;
        }
        Ok(acc)
    }
}

/// [`VarSetSolver::solve`] with the default antichain cap.
pub fn solve_var_sets(g: &Grammar) -> Result<VarSetSolution, PartialError> {
    VarSetSolver::default().solve(g)
}

/// Name of the start nonterminal of [`cnf_to_grammar`].
pub const CNF_START: &str = "C'";

/// Builds the reduction grammar: `C' ::= c(D'1..D'm)`, one `d` alternative
/// per literal occurrence in `D'i` with the literal's own variable at the
/// `P`/`N` position and `F` elsewhere, `Pj ::= yj`, `Nj ::= zj`,
/// `Fj ::= yj | zj`. The `y` and `z` symbols are variables.
pub fn cnf_to_grammar(c: &CnfFormula) -> Grammar {
    let leaf = |s: String| RawAlternative::new(s, Vec::<String>::new());
    let n = c.num_vars();
    let m = c.clauses().len();
    let mut raw = RawGrammar::new().rule(
        CNF_START,
        vec![RawAlternative::new("c", (1..=m).map(|i| format!("D'{i}")))],
    );
    for (i, clause) in c.clauses().iter().enumerate() {
        let alts = clause
            .iter()
            .map(|lit| {
                let args = (1..=n).map(|j| {
                    if j != lit.var {
                        format!("F{j}")
                    } else if lit.positive {
                        format!("P{j}")
                    } else {
                        format!("N{j}")
                    }
                });
                RawAlternative::new("d", args)
            })
            .collect();
        raw = raw.rule(format!("D'{}", i + 1), alts);
    }
    for j in 1..=n {
        raw = raw.rule(format!("P{j}"), vec![leaf(format!("y{j}"))]);
    }
    for j in 1..=n {
        raw = raw.rule(format!("N{j}"), vec![leaf(format!("z{j}"))]);
    }
    for j in 1..=n {
        raw = raw.rule(
            format!("F{j}"),
            vec![leaf(format!("y{j}")), leaf(format!("z{j}"))],
        );
    }
    for j in 1..=n {
        raw = raw.variable(format!("y{j}")).variable(format!("z{j}"));
    }
    Grammar::from_raw(&raw).expect("reduction grammar is well formed")
}

#[derive(Debug, Clone)]
pub struct SatOutcome {
    pub satisfiable: bool,
    /// `assignment[j - 1]` is the value of `x_j`; present iff satisfiable.
    pub assignment: Option<Vec<bool>>,
    /// Least cardinality of a member of the start weight.
    pub min_cardinality: usize,
    pub start_weight: Antichain,
    pub variables: VarNames,
}

impl SatOutcome {
    pub fn render_assignment(&self) -> Option<String> {
        self.assignment.as_ref().map(|a| {
            a.iter()
                .enumerate()
                .map(|(j, &v)| {
                    if v {
                        format!("{}", j + 1)
                    } else {
                        format!("-{}", j + 1)
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
    }
}

/// Decides satisfiability through the variable-set weight of the reduction
/// grammar: `c` is satisfiable iff a least member of `WG(C')` has exactly
/// `n` elements, and that member names a satisfying assignment.
pub fn decide_sat(c: &CnfFormula) -> Result<SatOutcome, PartialError> {
    decide_sat_with(c, VarSetSolver::default())
}

pub fn decide_sat_with(c: &CnfFormula, solver: VarSetSolver) -> Result<SatOutcome, PartialError> {
    let g = cnf_to_grammar(c);
    let sol = solver.solve(&g)?;
    let start = g.lookup(CNF_START).expect("start rule");
    let start_weight = sol.get(start).clone();
    let v = start_weight
        .smallest()
        .expect("every clause is nonempty, so L(C') is nonempty");
    let min_cardinality = v.len();
    let satisfiable = min_cardinality == c.num_vars();
    let assignment = satisfiable.then(|| {
        (1..=c.num_vars())
            .map(|j| {
                let y = sol.variables.index(&format!("y{j}")).expect("y variable");
                v.contains(y)
            })
            .collect()
    });
    Ok(SatOutcome {
        satisfiable,
        assignment,
        min_cardinality,
        start_weight,
        variables: sol.variables,
    })
}
