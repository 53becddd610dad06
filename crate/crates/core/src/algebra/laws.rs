use std::cmp::Ordering;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::WeightAlgebra;
use crate::grammar::{Signature, Symbol, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Law {
    Monotonic,
    Increasing,
    Absorbing,
    TotalOrder,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Law::Monotonic => "monotonic",
            Law::Increasing => "increasing",
            Law::Absorbing => "infinity-absorbing",
            Law::TotalOrder => "total order",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawViolation {
    pub law: Law,
    pub symbol: String,
    pub detail: String,
}

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} law broken at `{}`: {}",
            self.law, self.symbol, self.detail
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct LawReport {
    pub samples: usize,
    pub violations: Vec<LawViolation>,
}

impl LawReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, law: Law) -> usize {
        self.violations.iter().filter(|v| v.law == law).count()
    }
}

const MAX_SAMPLE_HEIGHT: usize = 4;

fn random_term(
    rng: &mut ChaCha8Rng,
    constants: &[&Symbol],
    all: &[&Symbol],
    height: usize,
) -> Term {
    if height <= 1 || rng.gen_bool(0.3) {
        let c = constants.choose(rng).expect("signature has constants");
        return Term::constant(c.name.clone());
    }
    let f = all.choose(rng).expect("nonempty signature");
    let children = (0..f.arity)
        .map(|_| random_term(rng, constants, all, height - 1))
        .collect();
    Term::new(f.name.clone(), children)
}

/// Samples the monotonicity, increasingness and `∞`-absorption laws of `alg`
/// over the symbols of `sig`.
///
/// Argument weights are drawn from the weights of random small terms plus
/// `∞`. Each sample picks a symbol of positive arity and two argumentwise
/// ordered tuples `x ≤ y`, then checks `wg(x) ≤ wg(y)`, `x_i ≤ wg(x)`, and
/// that replacing one argument by `∞` yields `∞`. Symmetry of `compare` and
/// maximality of `∞` are checked on every drawn pair.
pub fn check_algebra_laws<A: WeightAlgebra>(
    alg: &A,
    sig: &Signature,
    samples: usize,
    seed: u64,
) -> LawReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<&Symbol> = sig.iter().collect();
    let constants: Vec<&Symbol> = all.iter().copied().filter(|s| s.arity == 0).collect();
    let functions: Vec<&Symbol> = all.iter().copied().filter(|s| s.arity > 0).collect();
    let mut report = LawReport::default();

    let mut pool = vec![alg.infinity()];
    if !constants.is_empty() {
        for _ in 0..64 {
            let t = random_term(&mut rng, &constants, &all, MAX_SAMPLE_HEIGHT);
            pool.push(alg.weigh(sig, &t).expect("term over signature"));
        }
    }
    let render_all = |ws: &[A::Weight]| {
        ws.iter()
            .map(|w| alg.render(w))
            .collect::<Vec<_>>()
            .join(", ")
    };

    for _ in 0..samples {
        report.samples += 1;
        let (a, b) = (
            pool.choose(&mut rng).unwrap(),
            pool.choose(&mut rng).unwrap(),
        );
        if alg.compare(a, b) != alg.compare(b, a).reverse()
            || alg.compare(a, &alg.infinity()) == Ordering::Greater
        {
            report.violations.push(LawViolation {
                law: Law::TotalOrder,
                symbol: String::new(),
                detail: format!("compare({}, {})", alg.render(a), alg.render(b)),
            });
        }

        let Some(f) = functions.choose(&mut rng) else {
            continue;
        };
        let mut x = Vec::with_capacity(f.arity);
        let mut y = Vec::with_capacity(f.arity);
        for _ in 0..f.arity {
            let p = pool.choose(&mut rng).unwrap().clone();
            let q = pool.choose(&mut rng).unwrap().clone();
            if alg.compare(&p, &q) == Ordering::Greater {
                x.push(q);
                y.push(p);
            } else {
                x.push(p);
                y.push(q);
            }
        }
        let fx = alg.apply(f, &x);
        let fy = alg.apply(f, &y);
        if alg.compare(&fx, &fy) == Ordering::Greater {
            report.violations.push(LawViolation {
                law: Law::Monotonic,
                symbol: f.name.clone(),
                detail: format!(
                    "wg({}) = {} > wg({}) = {}",
                    render_all(&x),
                    alg.render(&fx),
                    render_all(&y),
                    alg.render(&fy)
                ),
            });
        }
        if let Some(xi) = x
            .iter()
            .find(|xi| alg.compare(xi, &fx) == Ordering::Greater)
        {
            report.violations.push(LawViolation {
                law: Law::Increasing,
                symbol: f.name.clone(),
                detail: format!(
                    "argument {} exceeds wg({}) = {}",
                    alg.render(xi),
                    render_all(&x),
                    alg.render(&fx)
                ),
            });
        }
        let pos = rng.gen_range(0..f.arity);
        let mut z = x.clone();
        z[pos] = alg.infinity();
        let fz = alg.apply(f, &z);
        if !alg.is_infinite(&fz) {
            report.violations.push(LawViolation {
                law: Law::Absorbing,
                symbol: f.name.clone(),
                detail: format!("wg({}) = {}", render_all(&z), alg.render(&fz)),
            });
        }
    }
    report
}
