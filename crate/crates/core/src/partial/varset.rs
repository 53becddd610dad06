use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

/// A finite set of variable indices, stored as a bit set.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct VarSet {
    // no trailing zero words, so derived equality is set equality
    words: Vec<u64>,
}

impl VarSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(i: usize) -> Self {
        let mut s = Self::new();
        s.insert(i);
        s
    }

    pub fn insert(&mut self, i: usize) {
        let w = i / 64;
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| w & (1 << (i % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn union(&self, other: &VarSet) -> VarSet {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, o) in words.iter_mut().zip(&short.words) {
            *w |= o;
        }
        VarSet { words }
    }

    pub fn is_subset(&self, other: &VarSet) -> bool {
        self.words.len() <= other.words.len()
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    /// Members in increasing order.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64)
                .filter(move |b| w & (1 << b) != 0)
                .map(move |b| wi * 64 + b)
        })
    }
}

impl FromIterator<usize> for VarSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VarSet::new();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

/// Canonical order: by cardinality, then lexicographically on the sorted
/// member indices.
impl Ord for VarSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for VarSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A family of variable sets, duplicates collapsed, in canonical order.
pub type SetFamily = BTreeSet<VarSet>;

/// `{ s1 ∪ .. ∪ sm | s_i ∈ S_i }`. Not minimized. The union over zero
/// families is `{{}}`.
pub fn pointwise_union(families: &[SetFamily]) -> SetFamily {
    let mut acc: SetFamily = BTreeSet::from([VarSet::new()]);
    for f in families {
        acc = acc
            .iter()
            .flat_map(|a| f.iter().map(move |s| a.union(s)))
            .collect();
    }
    acc
}

/// A subset-minimal family of variable sets in canonical order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Antichain {
    sets: Vec<VarSet>,
}

impl Antichain {
    /// The empty family, weight of an empty language.
    pub fn empty() -> Self {
        Self::default()
    }

    /// `{{}}`.
    pub fn unit() -> Self {
        Antichain {
            sets: vec![VarSet::new()],
        }
    }

    pub fn members(&self) -> &[VarSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: &VarSet) -> bool {
        self.sets.binary_search(s).is_ok()
    }

    /// First member of least cardinality.
    pub fn smallest(&self) -> Option<&VarSet> {
        self.sets.first()
    }

    pub fn to_family(&self) -> SetFamily {
        self.sets.iter().cloned().collect()
    }
}

/// Keeps exactly the subset-minimal members.
pub fn minimize_antichain(family: impl IntoIterator<Item = VarSet>) -> Antichain {
    let mut all: Vec<VarSet> = family.into_iter().collect();
    all.sort();
    all.dedup();
    // canonical order puts every proper subset before its supersets
    let mut kept: Vec<VarSet> = Vec::with_capacity(all.len());
    for s in all {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    Antichain { sets: kept }
}

/// Variable names indexed by position; renders sets and antichains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarNames {
    names: Vec<String>,
}

impl VarNames {
    /// Sorts the names, so index order and name order coincide.
    pub fn new(names: impl IntoIterator<Item = String>) -> Self {
        let mut names: Vec<String> = names.into_iter().collect();
        names.sort();
        names.dedup();
        VarNames { names }
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Builds a set from names; unknown names yield `None`.
    pub fn set<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Option<VarSet> {
        names.into_iter().map(|n| self.index(n)).collect()
    }

    pub fn display<'a>(&'a self, s: &'a VarSet) -> impl fmt::Display + 'a {
        DisplaySet {
            names: self,
            set: s,
        }
    }

    /// One set per line, brace-delimited, canonical order.
    pub fn render(&self, a: &Antichain) -> String {
        a.members()
            .iter()
            .map(|s| format!("{}\n", self.display(s)))
            .collect()
    }
}

struct DisplaySet<'a> {
    names: &'a VarNames,
    set: &'a VarSet,
}

impl fmt::Display for DisplaySet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.set.indices().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            f.write_str(self.names.name(i))?;
        }
        f.write_str("}")
    }
}
