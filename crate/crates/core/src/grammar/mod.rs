//! Regular tree grammars: signature, rules, validation, and the reverse
//! occurrence index used by the propagation solvers.
//!
//! A grammar is built from a [`RawGrammar`], the name-based form produced by
//! the parser. [`validate`] reports every broken invariant of a raw grammar;
//! [`Grammar::from_raw`] refuses to build unless that list is empty, so every
//! `Grammar` value is well-formed and uses dense integer ids internally.

mod parse;
mod term;

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

pub use parse::parse_raw;
pub use term::{Preorder, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NtId(pub usize);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrammarError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid grammar: {}", join_diagnostics(.0))]
    Invalid(Vec<Diagnostic>),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("unknown nonterminal `{0}`")]
    UnknownNonterminal(String),
    #[error("symbol `{symbol}` has arity {expected} but is applied to {found} arguments")]
    TermArity {
        symbol: String,
        expected: usize,
        found: usize,
    },
}

fn join_diagnostics(d: &[Diagnostic]) -> String {
    d.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// One violated grammar invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    DuplicateRule {
        nonterminal: String,
    },
    UndefinedNonterminal {
        name: String,
        rule: String,
    },
    ArityConflict {
        symbol: String,
        first: usize,
        found: usize,
        rule: String,
    },
    NameClash {
        name: String,
        rule: String,
    },
    UnknownVariable {
        name: String,
    },
    VariableArity {
        name: String,
        arity: usize,
    },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::DuplicateRule { nonterminal } => {
                write!(f, "duplicate rule for nonterminal {nonterminal}")
            }
            Diagnostic::UndefinedNonterminal { name, rule } => {
                write!(f, "undefined nonterminal {name} (in rule {rule})")
            }
            Diagnostic::ArityConflict {
                symbol,
                first,
                found,
                rule,
            } => write!(
                f,
                "arity conflict for symbol {symbol}: first used with {first} arguments, \
                 here with {found} (in rule {rule})"
            ),
            Diagnostic::NameClash { name, rule } => write!(
                f,
                "name {name} is used both as nonterminal and as function symbol (in rule {rule})"
            ),
            Diagnostic::UnknownVariable { name } => {
                write!(f, "variable {name} is not a symbol of the grammar")
            }
            Diagnostic::VariableArity { name, arity } => {
                write!(f, "variable {name} must be nullary but has arity {arity}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawAlternative {
    pub symbol: String,
    pub args: Vec<String>,
}

impl RawAlternative {
    pub fn new<S: Into<String>>(
        symbol: impl Into<String>,
        args: impl IntoIterator<Item = S>,
    ) -> Self {
        RawAlternative {
            symbol: symbol.into(),
            args: args.into_iter().map(Into::into).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawRule {
    pub lhs: String,
    pub alternatives: Vec<RawAlternative>,
}

/// Name-based grammar as written in a file, not yet checked.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawGrammar {
    pub rules: Vec<RawRule>,
    /// Nullary symbols to be treated as variables by the variable-set solver.
    pub variables: Vec<String>,
}

impl RawGrammar {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rule(mut self, lhs: impl Into<String>, alternatives: Vec<RawAlternative>) -> Self {
        self.rules.push(RawRule {
            lhs: lhs.into(),
            alternatives,
        });
        self
    }

    pub fn variable(mut self, name: impl Into<String>) -> Self {
        self.variables.push(name.into());
        self
    }
}

/// Lists every violated invariant; empty iff [`Grammar::from_raw`] succeeds.
pub fn validate(raw: &RawGrammar) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut lhs = HashSet::new();
    for rule in &raw.rules {
        if !lhs.insert(rule.lhs.as_str()) {
            out.push(Diagnostic::DuplicateRule {
                nonterminal: rule.lhs.clone(),
            });
        }
    }
    let mut arity: HashMap<&str, usize> = HashMap::new();
    for rule in &raw.rules {
        for alt in &rule.alternatives {
            if lhs.contains(alt.symbol.as_str()) {
                out.push(Diagnostic::NameClash {
                    name: alt.symbol.clone(),
                    rule: rule.lhs.clone(),
                });
            }
            match arity.get(alt.symbol.as_str()) {
                Some(&first) if first != alt.args.len() => out.push(Diagnostic::ArityConflict {
                    symbol: alt.symbol.clone(),
                    first,
                    found: alt.args.len(),
                    rule: rule.lhs.clone(),
                }),
                Some(_) => {}
                None => {
                    arity.insert(&alt.symbol, alt.args.len());
                }
            }
            for a in &alt.args {
                if !lhs.contains(a.as_str()) {
                    out.push(Diagnostic::UndefinedNonterminal {
                        name: a.clone(),
                        rule: rule.lhs.clone(),
                    });
                }
            }
        }
    }
    for v in &raw.variables {
        match arity.get(v.as_str()) {
            None => out.push(Diagnostic::UnknownVariable { name: v.clone() }),
            Some(&n) if n != 0 => out.push(Diagnostic::VariableArity {
                name: v.clone(),
                arity: n,
            }),
            Some(_) => {}
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symbol {
    pub id: SymbolId,
    pub name: String,
    pub arity: usize,
    pub variable: bool,
}

/// Function symbols with their arities, in first-use order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    symbols: Vec<Symbol>,
    by_name: HashMap<String, SymbolId>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a symbol, or returns the existing id when name and arity match.
    pub fn add(&mut self, name: &str, arity: usize) -> Result<SymbolId, GrammarError> {
        if let Some(&id) = self.by_name.get(name) {
            let expected = self.symbols[id.0].arity;
            if expected != arity {
                return Err(GrammarError::TermArity {
                    symbol: name.to_string(),
                    expected,
                    found: arity,
                });
            }
            return Ok(id);
        }
        let id = SymbolId(self.symbols.len());
        self.symbols.push(Symbol {
            id,
            name: name.to_string(),
            arity,
            variable: false,
        });
        self.by_name.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn lookup(&self, name: &str) -> Option<SymbolId> {
        self.by_name.get(name).copied()
    }

    pub fn get(&self, id: SymbolId) -> &Symbol {
        &self.symbols[id.0]
    }

    pub fn by_name(&self, name: &str) -> Option<&Symbol> {
        self.lookup(name).map(|id| self.get(id))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Symbol> {
        self.symbols.iter()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn max_arity(&self) -> usize {
        self.symbols.iter().map(|s| s.arity).max().unwrap_or(0)
    }

    pub fn variables(&self) -> impl Iterator<Item = &Symbol> {
        self.symbols.iter().filter(|s| s.variable)
    }

    fn mark_variable(&mut self, id: SymbolId) {
        self.symbols[id.0].variable = true;
    }

    /// Checks that `t` only uses known symbols at their declared arity.
    pub fn check_term(&self, t: &Term) -> Result<(), GrammarError> {
        let sym = self
            .by_name(t.symbol())
            .ok_or_else(|| GrammarError::UnknownSymbol(t.symbol().to_string()))?;
        if sym.arity != t.arity() {
            return Err(GrammarError::TermArity {
                symbol: sym.name.clone(),
                expected: sym.arity,
                found: t.arity(),
            });
        }
        t.children().iter().try_for_each(|c| self.check_term(c))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alternative {
    pub symbol: SymbolId,
    pub args: Vec<NtId>,
}

impl Alternative {
    pub fn arity(&self) -> usize {
        self.args.len()
    }
}

/// Size measures used in complexity statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrammarStats {
    /// Number of nonterminals.
    pub nt: usize,
    /// Total number of alternatives.
    pub al: usize,
    /// Maximal arity of a symbol occurring in an alternative.
    pub ar: usize,
}

/// A validated regular tree grammar. Rule order and alternative order are
/// kept as written; all solvers iterate in this order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    signature: Signature,
    names: Vec<String>,
    by_name: HashMap<String, NtId>,
    rules: Vec<Vec<Alternative>>,
    offsets: Vec<usize>,
}

impl Grammar {
    pub fn from_raw(raw: &RawGrammar) -> Result<Self, GrammarError> {
        let diagnostics = validate(raw);
        if !diagnostics.is_empty() {
            return Err(GrammarError::Invalid(diagnostics));
        }
        let names: Vec<String> = raw.rules.iter().map(|r| r.lhs.clone()).collect();
        let by_name: HashMap<String, NtId> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), NtId(i)))
            .collect();
        let mut signature = Signature::new();
        let mut rules = Vec::with_capacity(raw.rules.len());
        for rule in &raw.rules {
            let mut alts = Vec::with_capacity(rule.alternatives.len());
            for alt in &rule.alternatives {
                let symbol = signature.add(&alt.symbol, alt.args.len())?;
                let args = alt.args.iter().map(|a| by_name[a.as_str()]).collect();
                alts.push(Alternative { symbol, args });
            }
            rules.push(alts);
        }
        for v in &raw.variables {
            let id = signature.lookup(v).expect("validated variable");
            signature.mark_variable(id);
        }
        let mut offsets = Vec::with_capacity(rules.len() + 1);
        let mut acc = 0;
        for r in &rules {
            offsets.push(acc);
            acc += r.len();
        }
        offsets.push(acc);
        Ok(Grammar {
            signature,
            names,
            by_name,
            rules,
            offsets,
        })
    }

    /// Parses the `.rtg` text format.
    pub fn parse(text: &str) -> Result<Self, GrammarError> {
        Grammar::from_raw(&parse_raw(text)?)
    }

    pub fn to_raw(&self) -> RawGrammar {
        RawGrammar {
            rules: self
                .nonterminals()
                .map(|n| RawRule {
                    lhs: self.name(n).to_string(),
                    alternatives: self
                        .rule(n)
                        .iter()
                        .map(|a| self.raw_alternative(a))
                        .collect(),
                })
                .collect(),
            variables: self.signature.variables().map(|s| s.name.clone()).collect(),
        }
    }

    fn raw_alternative(&self, alt: &Alternative) -> RawAlternative {
        RawAlternative::new(
            self.signature.get(alt.symbol).name.clone(),
            alt.args.iter().map(|a| self.name(*a).to_string()),
        )
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn nonterminal_count(&self) -> usize {
        self.names.len()
    }

    pub fn nonterminals(&self) -> impl Iterator<Item = NtId> + '_ {
        (0..self.names.len()).map(NtId)
    }

    pub fn name(&self, n: NtId) -> &str {
        &self.names[n.0]
    }

    pub fn lookup(&self, name: &str) -> Option<NtId> {
        self.by_name.get(name).copied()
    }

    pub fn nonterminal(&self, name: &str) -> Result<NtId, GrammarError> {
        self.lookup(name)
            .ok_or_else(|| GrammarError::UnknownNonterminal(name.to_string()))
    }

    pub fn rule(&self, n: NtId) -> &[Alternative] {
        &self.rules[n.0]
    }

    pub fn symbol(&self, alt: &Alternative) -> &Symbol {
        self.signature.get(alt.symbol)
    }

    pub fn alternative_count(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    /// Dense index of the `index`-th alternative of `owner` across the grammar.
    pub fn alternative_id(&self, owner: NtId, index: usize) -> usize {
        self.offsets[owner.0] + index
    }

    /// Every alternative with its owner, its index within the rule, and its
    /// dense id, in rule order.
    pub fn alternatives(&self) -> impl Iterator<Item = (NtId, usize, &Alternative)> + '_ {
        self.rules
            .iter()
            .enumerate()
            .flat_map(|(n, alts)| alts.iter().enumerate().map(move |(i, a)| (NtId(n), i, a)))
    }

    pub fn stats(&self) -> GrammarStats {
        GrammarStats {
            nt: self.names.len(),
            al: self.alternative_count(),
            ar: self
                .alternatives()
                .map(|(_, _, a)| a.arity())
                .max()
                .unwrap_or(0),
        }
    }

    pub fn occurrence_index(&self) -> OccurrenceIndex {
        OccurrenceIndex::build(self)
    }

    /// Whether `t` is derivable from `n`, by bottom-up computation of the set
    /// of nonterminals deriving each subterm.
    pub fn derives(&self, n: NtId, t: &Term) -> Result<bool, GrammarError> {
        self.signature.check_term(t)?;
        Ok(self.deriving_set(t)[n.0])
    }

    fn deriving_set(&self, t: &Term) -> Vec<bool> {
        let child_sets: Vec<Vec<bool>> =
            t.children().iter().map(|c| self.deriving_set(c)).collect();
        let sym = self.signature.lookup(t.symbol());
        let mut out = vec![false; self.names.len()];
        for (owner, _, alt) in self.alternatives() {
            if Some(alt.symbol) == sym && alt.args.iter().zip(&child_sets).all(|(a, set)| set[a.0])
            {
                out[owner.0] = true;
            }
        }
        out
    }

    /// Renders an alternative as `f(A,B)`.
    pub fn display_alternative(&self, alt: &Alternative) -> String {
        let sym = &self.symbol(alt).name;
        if alt.args.is_empty() {
            sym.clone()
        } else {
            let args: Vec<&str> = alt.args.iter().map(|a| self.name(*a)).collect();
            format!("{sym}({})", args.join(","))
        }
    }
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<&str> = self
            .signature
            .variables()
            .map(|s| s.name.as_str())
            .collect();
        if !vars.is_empty() {
            writeln!(f, "# variables: {}", vars.join(" "))?;
        }
        for n in self.nonterminals() {
            write!(f, "{} ::=", self.name(n))?;
            for (i, alt) in self.rule(n).iter().enumerate() {
                if i > 0 {
                    f.write_str(" |")?;
                }
                write!(f, " {}", self.display_alternative(alt))?;
            }
            writeln!(f, " ;")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Occurrence {
    pub owner: NtId,
    /// Index of the alternative within the owner's rule.
    pub alternative: usize,
    pub position: usize,
}

/// For each nonterminal, every place it occurs as an argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccurrenceIndex {
    entries: Vec<Vec<Occurrence>>,
}

impl OccurrenceIndex {
    pub fn build(g: &Grammar) -> Self {
        let mut entries = vec![Vec::new(); g.nonterminal_count()];
        for (owner, alternative, alt) in g.alternatives() {
            for (position, a) in alt.args.iter().enumerate() {
                entries[a.0].push(Occurrence {
                    owner,
                    alternative,
                    position,
                });
            }
        }
        OccurrenceIndex { entries }
    }

    pub fn of(&self, n: NtId) -> &[Occurrence] {
        &self.entries[n.0]
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(Vec::len).sum()
    }
}
