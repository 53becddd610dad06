use std::cmp::Ordering;
use std::collections::HashMap;

use super::{AlgebraError, Cost, WeightAlgebra};
use crate::grammar::{Signature, Symbol};

/// Node count: `wg_f(x) = 1 + Σ x_i`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SizeAlgebra;

impl WeightAlgebra for SizeAlgebra {
    type Weight = Cost;

    fn infinity(&self) -> Cost {
        Cost::Infinite
    }

    fn compare(&self, a: &Cost, b: &Cost) -> Ordering {
        a.cmp(b)
    }

    fn apply(&self, _symbol: &Symbol, args: &[Cost]) -> Cost {
        args.iter()
            .fold(Cost::Finite(1), |acc, x| acc.saturating_add(*x))
    }

    fn render(&self, w: &Cost) -> String {
        w.to_string()
    }
}

/// Height: `wg_f(x) = 1 + max x_i`, constants weigh 1.
#[derive(Debug, Clone, Copy, Default)]
pub struct HeightAlgebra;

impl WeightAlgebra for HeightAlgebra {
    type Weight = Cost;

    fn infinity(&self) -> Cost {
        Cost::Infinite
    }

    fn compare(&self, a: &Cost, b: &Cost) -> Ordering {
        a.cmp(b)
    }

    fn apply(&self, _symbol: &Symbol, args: &[Cost]) -> Cost {
        let deepest = args.iter().copied().max().unwrap_or(Cost::Finite(0));
        deepest.saturating_add(Cost::Finite(1))
    }

    fn render(&self, w: &Cost) -> String {
        w.to_string()
    }
}

/// Parsed but unchecked contents of a `.costs` file, in file order.
/// Values are signed so that invalid ones survive until validation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AffineSpec {
    pub entries: Vec<(String, i64, Vec<i64>)>,
}

impl AffineSpec {
    /// Parses lines `f = c` and `f(x1,..,xn) = c + a1*x1 + .. + an*xn`.
    ///
    /// Within a line, terms may come in any order; a parameter that does not
    /// appear gets coefficient 1 and a missing constant is 0. `#` starts a
    /// comment.
    pub fn parse(text: &str) -> Result<Self, AlgebraError> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: &str| AlgebraError::Syntax {
                line: line_no,
                message: message.to_string(),
            };
            let (head, body) = line.split_once('=').ok_or_else(|| err("expected `=`"))?;
            let head = head.trim();
            let (name, params) = match head.split_once('(') {
                Some((name, rest)) => {
                    let inner = rest
                        .trim()
                        .strip_suffix(')')
                        .ok_or_else(|| err("expected `)` after parameters"))?;
                    let params: Vec<&str> = inner.split(',').map(str::trim).collect();
                    if params.iter().any(|p| !is_name(p)) {
                        return Err(err("bad parameter name"));
                    }
                    (name.trim(), params)
                }
                None => (head, Vec::new()),
            };
            if !is_name(name) {
                return Err(err("bad symbol name"));
            }
            let mut constant: Option<i64> = None;
            let mut coefficients: Vec<Option<i64>> = vec![None; params.len()];
            let body = body.trim();
            if body.is_empty() {
                return Err(err("empty right-hand side"));
            }
            for term in body.split('+').map(str::trim) {
                if term.is_empty() {
                    return Err(err("empty summand"));
                }
                let (k, var) = match term.split_once('*') {
                    Some((l, r)) => {
                        let (l, r) = (l.trim(), r.trim());
                        match (l.parse::<i64>(), r.parse::<i64>()) {
                            (Ok(k), _) => (k, Some(r)),
                            (_, Ok(k)) => (k, Some(l)),
                            _ => return Err(err("product needs an integer factor")),
                        }
                    }
                    None => match term.parse::<i64>() {
                        Ok(k) => (k, None),
                        Err(_) => (1, Some(term)),
                    },
                };
                match var {
                    None => *constant.get_or_insert(0) += k,
                    Some(v) => {
                        let pos = params
                            .iter()
                            .position(|p| *p == v)
                            .ok_or_else(|| err(&format!("unknown parameter `{v}`")))?;
                        *coefficients[pos].get_or_insert(0) += k;
                    }
                }
            }
            entries.push((
                name.to_string(),
                constant.unwrap_or(0),
                coefficients.into_iter().map(|c| c.unwrap_or(1)).collect(),
            ));
        }
        Ok(AffineSpec { entries })
    }
}

fn is_name(s: &str) -> bool {
    let mut bytes = s.bytes();
    matches!(bytes.next(), Some(b) if b.is_ascii_alphabetic() || b == b'_')
        && bytes.all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'\'')
}

/// `c + Σ a_i * x_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineCost {
    pub constant: u64,
    pub coefficients: Vec<u64>,
}

impl AffineCost {
    pub fn eval(&self, args: &[Cost]) -> Cost {
        self.coefficients
            .iter()
            .zip(args)
            .fold(Cost::Finite(self.constant), |acc, (a, x)| {
                acc.saturating_add(x.scale(*a))
            })
    }
}

/// Affine weight functions over naturals with `∞`.
#[derive(Debug, Clone, Default)]
pub struct AffineAlgebra {
    costs: HashMap<String, AffineCost>,
}

impl AffineAlgebra {
    /// Builds the algebra, rejecting any coefficient below 1 or negative
    /// constant; with those bounds every function is monotonic and increasing.
    pub fn new(spec: &AffineSpec) -> Result<Self, AlgebraError> {
        let mut costs = HashMap::new();
        for (name, constant, coefficients) in &spec.entries {
            if *constant < 0 {
                return Err(AlgebraError::NegativeConstant {
                    symbol: name.clone(),
                    constant: *constant,
                });
            }
            if let Some((i, &a)) = coefficients.iter().enumerate().find(|(_, a)| **a < 1) {
                return Err(AlgebraError::CoefficientTooSmall {
                    symbol: name.clone(),
                    position: i + 1,
                    coefficient: a,
                });
            }
            let cost = AffineCost {
                constant: *constant as u64,
                coefficients: coefficients.iter().map(|a| *a as u64).collect(),
            };
            if costs.insert(name.clone(), cost).is_some() {
                return Err(AlgebraError::DuplicateSymbol(name.clone()));
            }
        }
        Ok(AffineAlgebra { costs })
    }

    pub fn parse(text: &str) -> Result<Self, AlgebraError> {
        Self::new(&AffineSpec::parse(text)?)
    }

    /// Skips the coefficient check. Only useful for exercising the law checker.
    pub fn new_unchecked(costs: impl IntoIterator<Item = (String, AffineCost)>) -> Self {
        AffineAlgebra {
            costs: costs.into_iter().collect(),
        }
    }

    pub fn cost(&self, symbol: &str) -> Option<&AffineCost> {
        self.costs.get(symbol)
    }

    /// Multiplies every constant by `k`. For `k >= 1` this conjugates the
    /// algebra by `w -> k*w`, so weights scale by `k` (up to saturation) and
    /// comparisons between weights are preserved.
    pub fn scaled(&self, k: u64) -> Self {
        AffineAlgebra {
            costs: self
                .costs
                .iter()
                .map(|(n, c)| {
                    (
                        n.clone(),
                        AffineCost {
                            constant: c.constant.saturating_mul(k),
                            coefficients: c.coefficients.clone(),
                        },
                    )
                })
                .collect(),
        }
    }
}

impl WeightAlgebra for AffineAlgebra {
    type Weight = Cost;

    fn infinity(&self) -> Cost {
        Cost::Infinite
    }

    fn compare(&self, a: &Cost, b: &Cost) -> Ordering {
        a.cmp(b)
    }

    fn apply(&self, symbol: &Symbol, args: &[Cost]) -> Cost {
        match self.costs.get(&symbol.name) {
            Some(c) => c.eval(args),
            None => Cost::Infinite,
        }
    }

    fn render(&self, w: &Cost) -> String {
        w.to_string()
    }

    fn check_signature(&self, sig: &Signature) -> Result<(), AlgebraError> {
        for s in sig.iter() {
            let c = self
                .costs
                .get(&s.name)
                .ok_or_else(|| AlgebraError::MissingSymbol(s.name.clone()))?;
            if c.coefficients.len() != s.arity {
                return Err(AlgebraError::ArityMismatch {
                    symbol: s.name.clone(),
                    expected: c.coefficients.len(),
                    found: s.arity,
                });
            }
        }
        Ok(())
    }
}
