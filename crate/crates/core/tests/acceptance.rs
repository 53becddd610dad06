//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test --test acceptance`.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{RandomAffine, Shape};
use treeweight::algebra::{
    check_algebra_laws, AffineAlgebra, Cost, HeightAlgebra, MinTermAlgebra, SizeAlgebra,
    WeightAlgebra,
};
use treeweight::fixtures;
use treeweight::grammar::{Grammar, NtId};
use treeweight::partial::{
    cnf_to_grammar, decide_sat, solve_var_sets, CnfFormula, VarSetSolver, CNF_START,
};
use treeweight::solver::{extract_witnesses, Solution, Solver, StopMode};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {{
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+));
        }
    }};
}

fn binary(n: usize) -> (Grammar, AffineAlgebra) {
    (
        Grammar::parse(&fixtures::binary_numbers_rtg(n)).unwrap(),
        AffineAlgebra::parse(fixtures::BINARY_NUMBERS_COSTS).unwrap(),
    )
}

fn changes(g: &Grammar, list: &[(NtId, Cost)]) -> Vec<String> {
    let mut v: Vec<String> = list
        .iter()
        .map(|(n, w)| format!("{}={w}", g.name(*n)))
        .collect();
    v.sort();
    v
}

fn names(g: &Grammar, list: Option<&[NtId]>) -> Vec<String> {
    let mut v: Vec<String> = list
        .unwrap_or(&[])
        .iter()
        .map(|n| g.name(*n).to_string())
        .collect();
    v.sort();
    v
}

fn strs(v: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    v.sort();
    v
}

fn naive_golden() -> Outcome {
    let start = Instant::now();
    let (g, alg) = binary(3);
    let sol = Solver::naive(StopMode::FixedCycles)
        .solve(&g, &alg)
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let expected: [&[&str]; 7] = [
        &["Q0=0"],
        &["P1=0", "Q1=1"],
        &["Q1=0", "P2=2", "Q2=3"],
        &["P2=0", "Q2=1", "P3=6", "Q3=7"],
        &["Q2=0", "P3=2", "Q3=3"],
        &["P3=0", "Q3=1"],
        &["Q3=0"],
    ];
    let trace = sol.trace.as_ref().unwrap();
    ensure!(
        trace.cycles.len() == 7,
        "ran {} cycles, expected 7",
        trace.cycles.len()
    );
    ensure!(sol.stats.cycles == g.nonterminal_count(), "cycles != nt");
    for (k, want) in expected.iter().enumerate() {
        let got = changes(&g, &trace.cycle(k + 1).unwrap().changes);
        ensure!(
            got == strs(want),
            "cycle {}: got {:?}, expected {:?}",
            k + 1,
            got,
            want
        );
    }
    let q3 = g.lookup("Q3").unwrap();
    let q3_values: Vec<String> = (4..=7)
        .map(|k| trace.value_at(q3, k, Cost::Infinite).to_string())
        .collect();
    ensure!(
        q3_values == ["7", "3", "1", "0"],
        "Q3 cycles 4..7: {q3_values:?}"
    );
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("7 cycles, every cell matches, {elapsed:?}"))
}

fn lazy_golden() -> Outcome {
    let start = Instant::now();
    let (g, alg) = binary(2);
    let sol = Solver::lazy().solve(&g, &alg).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    // (changes, front before popping, moved to done)
    let expected: [(&[&str], &[&str], &[&str]); 6] = [
        (&["Q0=0"], &["Q0"], &["Q0"]),
        (&["P1=0", "Q1=1"], &["P1", "Q1"], &["P1"]),
        (&["Q1=0"], &["Q1"], &["Q1"]),
        (&["P2=0", "Q2=1"], &["P2", "Q2"], &["P2"]),
        (&["Q2=0"], &["Q2"], &["Q2"]),
        (&[], &[], &[]),
    ];
    let trace = sol.trace.as_ref().unwrap();
    ensure!(
        trace.cycles.len() == 6,
        "stopped after {} cycles, expected 6",
        trace.cycles.len()
    );
    for (k, (ch, front, done)) in expected.iter().enumerate() {
        let c = trace.cycle(k + 1).unwrap();
        ensure!(
            changes(&g, &c.changes) == strs(ch),
            "cycle {} changes {:?}",
            k + 1,
            c.changes
        );
        ensure!(
            names(&g, c.front.as_deref()) == strs(front),
            "cycle {} front {:?}",
            k + 1,
            c.front
        );
        ensure!(
            names(&g, c.minimals.as_deref()) == strs(done),
            "cycle {} done {:?}",
            k + 1,
            c.minimals
        );
    }
    let al = g.stats().al;
    ensure!(
        sol.stats.alternative_evaluations == al,
        "{} evaluations for al = {al}",
        sol.stats.alternative_evaluations
    );
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!(
        "6 cycles, F empty at 6, {al} evaluations = al, {elapsed:?}"
    ))
}

const AGREEMENT_CASES: u64 = 300;
const ORACLE_CASES: usize = 150;

fn large_shape() -> Shape {
    Shape {
        max_nt: 12,
        max_al: 40,
        max_ar: 3,
    }
}

fn small_shape() -> Shape {
    Shape {
        max_nt: 4,
        max_al: 8,
        max_ar: 2,
    }
}

fn solve_all<A: WeightAlgebra>(g: &Grammar, alg: &A) -> [Solution<A::Weight>; 3] {
    [
        Solver::naive(StopMode::EarlyStop),
        Solver::liquid_flow(),
        Solver::lazy(),
    ]
    .map(|s| s.record_trace(false).solve(g, alg).unwrap())
}

fn agree<A: WeightAlgebra>(g: &Grammar, alg: &A) -> bool
where
    A::Weight: PartialEq,
{
    let [n, l, z] = solve_all(g, alg);
    n.weights == z.weights && l.weights == z.weights
}

fn cross_agreement() -> Outcome {
    let mut rng = common::rng(3);
    for case in 0..AGREEMENT_CASES {
        let g = common::random_grammar(&mut rng, large_shape());
        let aff = RandomAffine::new(&mut rng).algebra();
        ensure!(
            agree(&g, &SizeAlgebra),
            "case {case}: size disagrees on\n{g}"
        );
        ensure!(
            agree(&g, &HeightAlgebra),
            "case {case}: height disagrees on\n{g}"
        );
        ensure!(agree(&g, &aff), "case {case}: affine disagrees on\n{g}");
    }
    Ok(format!(
        "{AGREEMENT_CASES} grammars x 3 algebras, all identical"
    ))
}

fn oracle_grammars() -> Vec<(Grammar, RandomAffine, Vec<Vec<treeweight::grammar::Term>>)> {
    let mut rng = common::rng(4);
    let mut out = Vec::new();
    while out.len() < ORACLE_CASES {
        let g = common::random_grammar(&mut rng, small_shape());
        let aff = RandomAffine::new(&mut rng);
        if let Some(terms) = common::terms_up_to_height(&g, g.nonterminal_count(), 200_000) {
            out.push((g, aff, terms));
        }
    }
    out
}

fn brute_force() -> Outcome {
    let start = Instant::now();
    let cases = oracle_grammars();
    let (mut finite, mut empty) = (0, 0);
    for (case, (g, aff, terms)) in cases.iter().enumerate() {
        let productive = common::productive(g);
        let alg = aff.algebra();
        let size = solve_all(g, &SizeAlgebra);
        let height = solve_all(g, &HeightAlgebra);
        let affine = solve_all(g, &alg);
        for n in g.nonterminals() {
            let ts = &terms[n.0];
            ensure!(
                ts.is_empty() != productive[n.0],
                "case {case}: height-{} enumeration and productivity disagree on {}",
                g.nonterminal_count(),
                g.name(n)
            );
            let want_size = common::cost(ts.iter().map(|t| common::node_count(t) as u128).min());
            let want_height =
                common::cost(ts.iter().map(|t| common::longest_path(t) as u128).min());
            let want_affine = common::cost(ts.iter().map(|t| aff.weight(t)).min());
            if ts.is_empty() {
                empty += 1;
            } else {
                finite += 1;
            }
            for s in &size {
                ensure!(
                    *s.weights.get(n) == want_size,
                    "case {case}: size of {} in\n{g}",
                    g.name(n)
                );
            }
            for s in &height {
                ensure!(
                    *s.weights.get(n) == want_height,
                    "case {case}: height of {} in\n{g}",
                    g.name(n)
                );
            }
            for s in &affine {
                ensure!(
                    *s.weights.get(n) == want_affine,
                    "case {case}: affine of {} in\n{g}",
                    g.name(n)
                );
            }
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    Ok(format!(
        "{} grammars x 3 algebras x 3 solvers, {finite} nonempty and {empty} empty languages, {elapsed:?}",
        cases.len()
    ))
}

fn height_change_bound() -> Outcome {
    let mut rng = common::rng(3);
    let mut checked = 0;
    for case in 0..AGREEMENT_CASES {
        let g = common::random_grammar(&mut rng, large_shape());
        let _ = RandomAffine::new(&mut rng);
        let sol = Solver::liquid_flow()
            .record_trace(false)
            .solve(&g, &HeightAlgebra)
            .unwrap();
        if let Some((i, c)) = sol
            .stats
            .value_changes
            .iter()
            .enumerate()
            .find(|(_, c)| **c > 1)
        {
            return Err(format!(
                "case {case}: {} changed {c} times",
                g.name(NtId(i))
            ));
        }
        checked += g.nonterminal_count();
    }
    for (g, _, _) in oracle_grammars() {
        let sol = Solver::liquid_flow()
            .record_trace(false)
            .solve(&g, &HeightAlgebra)
            .unwrap();
        ensure!(
            sol.stats.value_changes.iter().all(|c| *c <= 1),
            "oracle grammar violates bound:\n{g}"
        );
        checked += g.nonterminal_count();
    }
    Ok(format!(
        "{checked} nonterminals, none changed more than once"
    ))
}

fn asymptotics() -> Outcome {
    let (_, alg) = binary(0);
    let mut rows = Vec::new();
    for n in [1 << 8, 1 << 10, 1 << 12] {
        let g = Grammar::parse(&fixtures::binary_numbers_rtg(n)).unwrap();
        let al = g.stats().al as f64;
        let lazy = Solver::lazy().record_trace(false).solve(&g, &alg).unwrap();
        let naive = Solver::naive(StopMode::EarlyStop)
            .record_trace(false)
            .solve(&g, &alg)
            .unwrap();
        ensure!(lazy.weights == naive.weights, "solvers disagree at n = {n}");
        rows.push((
            al,
            lazy.stats.alternative_evaluations as f64,
            naive.stats.alternative_evaluations as f64,
        ));
    }
    // least-squares line through the lazy counts
    let k = rows.len() as f64;
    let (sx, sy) = rows.iter().fold((0.0, 0.0), |(a, b), r| (a + r.0, b + r.1));
    let (sxx, sxy) = rows
        .iter()
        .fold((0.0, 0.0), |(a, b), r| (a + r.0 * r.0, b + r.0 * r.1));
    let slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    let icept = (sy - slope * sx) / k;
    for (al, lazy, _) in &rows {
        let fit = slope * al + icept;
        let dev = (lazy - fit).abs() / fit;
        ensure!(
            dev <= 0.05,
            "lazy at al = {al}: {lazy} vs fit {fit:.1} ({:.1}%)",
            dev * 100.0
        );
    }
    let per_al: Vec<f64> = rows.iter().map(|(al, _, naive)| naive / al).collect();
    let ratios: Vec<f64> = per_al.windows(2).map(|w| w[1] / w[0]).collect();
    for r in &ratios {
        ensure!(*r >= 3.5, "naive evaluations/al grew only {r:.2}x");
    }
    Ok(format!(
        "lazy = {slope:.3} al {icept:+.1}; naive evaluations/al ratios {}",
        ratios
            .iter()
            .map(|r| format!("{r:.2}x"))
            .collect::<Vec<_>>()
            .join(", ")
    ))
}

fn check_witnesses<A: WeightAlgebra>(
    g: &Grammar,
    alg: &A,
    measure: impl Fn(&treeweight::grammar::Term) -> A::Weight,
) -> Result<usize, String> {
    let sol = Solver::lazy().record_trace(false).solve(g, alg).unwrap();
    let ws = extract_witnesses(g, alg, &sol).map_err(|e| e.to_string())?;
    let mut count = 0;
    for (n, t) in ws.iter() {
        let w = sol.weights.get(n);
        match t {
            None => ensure!(
                alg.is_infinite(w),
                "{} has weight but no witness",
                g.name(n)
            ),
            Some(t) => {
                ensure!(g.derives(n, t).unwrap(), "{t} not in L({})", g.name(n));
                let folded = alg.weigh(g.signature(), t).unwrap();
                ensure!(
                    alg.compare(&folded, w).is_eq(),
                    "{t} folds to {}",
                    alg.render(&folded)
                );
                ensure!(
                    alg.compare(&measure(t), w).is_eq(),
                    "{t} measures {}",
                    alg.render(&measure(t))
                );
                count += 1;
            }
        }
    }
    Ok(count)
}

fn witness_validity() -> Outcome {
    let mut rng = common::rng(3);
    let mut grammars = Vec::new();
    for _ in 0..AGREEMENT_CASES {
        let g = common::random_grammar(&mut rng, large_shape());
        grammars.push((g, RandomAffine::new(&mut rng)));
    }
    grammars.extend(oracle_grammars().into_iter().map(|(g, a, _)| (g, a)));
    let mut count = 0;
    for (case, (g, aff)) in grammars.iter().enumerate() {
        let alg = aff.algebra();
        let err = |e: String| format!("case {case}: {e}\n{g}");
        count += check_witnesses(g, &SizeAlgebra, |t| Cost::Finite(common::node_count(t)))
            .map_err(err)?;
        count += check_witnesses(g, &HeightAlgebra, |t| Cost::Finite(common::longest_path(t)))
            .map_err(err)?;
        count += check_witnesses(g, &alg, |t| common::cost(Some(aff.weight(t)))).map_err(err)?;
    }
    Ok(format!(
        "{count} witnesses over {} grammars x 3 algebras",
        grammars.len()
    ))
}

fn example_varsets() -> Outcome {
    let start = Instant::now();
    let cnf = CnfFormula::parse_dimacs("p cnf 3 2\n1 -3 0\n-2 3 0\n").map_err(|e| e.to_string())?;
    let g = cnf_to_grammar(&cnf);
    let sol = solve_var_sets(&g).map_err(|e| e.to_string())?;
    let v = &sol.variables;
    let fam = |sets: &[&[&str]]| -> treeweight::partial::SetFamily {
        sets.iter()
            .map(|s| v.set(s.iter().copied()).unwrap())
            .collect()
    };
    let d1 = g.lookup("D'1").unwrap();
    let neg_x3 = VarSetSolver::new()
        .alternative(&g, &sol, &g.rule(d1)[1])
        .map_err(|e| e.to_string())?;
    ensure!(
        neg_x3.to_family()
            == fam(&[
                &["y1", "y2", "z3"],
                &["y1", "z2", "z3"],
                &["z1", "y2", "z3"],
                &["z1", "z2", "z3"]
            ]),
        "sets of the not-x3 alternative = {}",
        v.render(&neg_x3)
    );
    let want_d1 = fam(&[
        &["y1", "y2", "y3"],
        &["y1", "y2", "z3"],
        &["y1", "z2", "y3"],
        &["y1", "z2", "z3"],
        &["z1", "y2", "z3"],
        &["z1", "z2", "z3"],
    ]);
    let want_d2 = fam(&[
        &["y1", "y2", "y3"],
        &["y1", "z2", "y3"],
        &["y1", "z2", "z3"],
        &["z1", "y2", "y3"],
        &["z1", "z2", "y3"],
        &["z1", "z2", "z3"],
    ]);
    ensure!(
        sol.get(d1).to_family() == want_d1,
        "sets of D'1 = {}",
        sol.render(d1)
    );
    let d2 = g.lookup("D'2").unwrap();
    ensure!(
        sol.get(d2).to_family() == want_d2,
        "sets of D'2 = {}",
        sol.render(d2)
    );
    let start_set = sol.get(g.lookup(CNF_START).unwrap());
    for s in fam(&[
        &["y1", "y2", "y3"],
        &["y1", "z2", "y3"],
        &["y1", "z2", "z3"],
        &["z1", "z2", "z3"],
        &["z1", "y2", "y3", "z3"],
    ]) {
        ensure!(start_set.contains(&s), "WG(C') lacks {}", v.display(&s));
    }
    ensure!(
        !start_set.contains(&v.set(["y1", "z1", "y2", "y3"]).unwrap()),
        "WG(C') contains {{y1, z1, y2, y3}}"
    );
    let out = decide_sat(&cnf).map_err(|e| e.to_string())?;
    ensure!(
        out.satisfiable && out.min_cardinality == 3,
        "verdict {out:?}"
    );
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!(
        "all listed families match, SATISFIABLE with |v| = 3, {elapsed:?}"
    ))
}

fn sat_oracle() -> Outcome {
    let mut rng = common::rng(9);
    let cases = 200;
    let (mut sat, mut unsat) = (0, 0);
    for case in 0..cases {
        let cnf = common::random_cnf(&mut rng, 6, 10, 3);
        let want = common::truth_table_sat(&cnf);
        let got = decide_sat(&cnf).map_err(|e| e.to_string())?;
        ensure!(
            got.satisfiable == want,
            "case {case}: verdict {} for\n{}",
            got.satisfiable,
            cnf.to_dimacs()
        );
        if let Some(a) = &got.assignment {
            ensure!(
                cnf.evaluate(a),
                "case {case}: assignment {a:?} falsifies\n{}",
                cnf.to_dimacs()
            );
            sat += 1;
        } else {
            unsat += 1;
        }
    }
    Ok(format!(
        "{cases} CNFs ({sat} sat, {unsat} unsat) agree with the truth table"
    ))
}

fn algebra_laws() -> Outcome {
    let all_symbols = "S ::= a | b | c | f(S) | g(S) | h(S, S) | k(S, S) | m(S, S, S) ;";
    let g = Grammar::parse(all_symbols).unwrap();
    let (bg, costs) = binary(3);
    let aff = RandomAffine::new(&mut common::rng(10)).algebra();
    let samples = 1000;
    let reports = [
        (
            "size",
            check_algebra_laws(&SizeAlgebra, g.signature(), samples, 1),
        ),
        (
            "height",
            check_algebra_laws(&HeightAlgebra, g.signature(), samples, 2),
        ),
        (
            "minterm",
            check_algebra_laws(
                &MinTermAlgebra::for_signature(g.signature()),
                g.signature(),
                samples,
                3,
            ),
        ),
        (
            "affine (binary costs)",
            check_algebra_laws(&costs, bg.signature(), samples, 4),
        ),
        (
            "affine (random)",
            check_algebra_laws(&aff, g.signature(), samples, 5),
        ),
    ];
    for (name, r) in &reports {
        ensure!(r.samples == samples, "{name}: only {} samples", r.samples);
        ensure!(r.is_clean(), "{name}: {}", r.violations[0]);
    }
    Ok(format!(
        "{} algebras x {samples} samples, no violations",
        reports.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "naive trace matches the binary-numbers golden table",
            naive_golden,
        ),
        (
            "lazy trace matches the golden table, one evaluation per alternative",
            lazy_golden,
        ),
        ("three solvers agree on random grammars", cross_agreement),
        (
            "weights equal brute-force minima over bounded-height terms",
            brute_force,
        ),
        (
            "height values change at most once under liquid flow",
            height_change_bound,
        ),
        (
            "lazy work is linear, naive work grows quadratically",
            asymptotics,
        ),
        (
            "every witness is derivable and has the minimal weight",
            witness_validity,
        ),
        ("variable-set weights of the CNF example", example_varsets),
        ("SAT decisions agree with truth tables", sat_oracle),
        ("built-in algebras satisfy the weight laws", algebra_laws),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {title} ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {title}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
