//! Indexed families, subfamilies, reindexing and set partitions.
//!
//! Every summation in the crate takes an [`IndexedFamily`] as its argument.
//! Families are finite; labels are opaque strings that are pairwise distinct
//! within a family. Label order is kept for deterministic output but carries
//! no meaning: summation oracles must not depend on it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;
use thiserror::Error;

/// Largest label set for which [`enumerate_partitions`] runs exhaustively.
pub const MAX_EXHAUSTIVE_LABELS: usize = 8;

/// Largest label set accepted by [`sample_partition`].
pub const MAX_SAMPLED_LABELS: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(Label),
    #[error("unknown label `{0}`")]
    UnknownLabel(Label),
    #[error("relabeling is not a bijection on the family's labels: {0}")]
    NotBijective(String),
    #[error("{0} labels exceed the exhaustive partition bound of {MAX_EXHAUSTIVE_LABELS}")]
    TooLarge(usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
}

/// An index label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(String);

impl Label {
    pub fn new(name: impl Into<String>) -> Self {
        Label(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Label for the pair `(outer, inner)` of a product index set.
    ///
    /// The encoding is injective: distinct pairs never share a label.
    pub fn pair(outer: &Label, inner: &Label) -> Label {
        Label(format!("{}:{}|{}", outer.0.len(), outer.0, inner.0))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label(s.to_owned())
    }
}

impl From<String> for Label {
    fn from(s: String) -> Self {
        Label(s)
    }
}

/// A finite family of values indexed by pairwise distinct labels.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexedFamily<T> {
    entries: Vec<(Label, T)>,
}

impl<T> Default for IndexedFamily<T> {
    fn default() -> Self {
        IndexedFamily { entries: Vec::new() }
    }
}

impl<T> IndexedFamily<T> {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new<L: Into<Label>>(entries: impl IntoIterator<Item = (L, T)>) -> Result<Self, FamilyError> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (label, value) in entries {
            let label = label.into();
            if !seen.insert(label.clone()) {
                return Err(FamilyError::DuplicateLabel(label));
            }
            out.push((label, value));
        }
        Ok(IndexedFamily { entries: out })
    }

    /// Labels the values `x0, x1, ...` in order.
    pub fn from_values(values: impl IntoIterator<Item = T>) -> Self {
        IndexedFamily {
            entries: values
                .into_iter()
                .enumerate()
                .map(|(i, v)| (Label(format!("x{i}")), v))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Label, &T)> {
        self.entries.iter().map(|(l, v)| (l, v))
    }

    pub fn labels(&self) -> impl Iterator<Item = &Label> {
        self.entries.iter().map(|(l, _)| l)
    }

    pub fn values(&self) -> impl Iterator<Item = &T> {
        self.entries.iter().map(|(_, v)| v)
    }

    pub fn get(&self, label: &Label) -> Option<&T> {
        self.entries.iter().find(|(l, _)| l == label).map(|(_, v)| v)
    }

    pub fn label_set(&self) -> BTreeSet<Label> {
        self.labels().cloned().collect()
    }

    /// Entries sorted by ascending label.
    pub fn sorted_entries(&self) -> Vec<(&Label, &T)> {
        let mut v: Vec<_> = self.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> IndexedFamily<U> {
        IndexedFamily {
            entries: self.entries.iter().map(|(l, v)| (l.clone(), f(v))).collect(),
        }
    }

    pub fn try_map<U, E>(&self, mut f: impl FnMut(&T) -> Result<U, E>) -> Result<IndexedFamily<U>, E> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for (l, v) in &self.entries {
            entries.push((l.clone(), f(v)?));
        }
        Ok(IndexedFamily { entries })
    }

    /// Copy of the family without the entry at `label`.
    pub fn without(&self, label: &Label) -> Self
    where
        T: Clone,
    {
        IndexedFamily {
            entries: self.entries.iter().filter(|(l, _)| l != label).cloned().collect(),
        }
    }

    pub fn into_entries(self) -> Vec<(Label, T)> {
        self.entries
    }
}

impl<T: Clone> IndexedFamily<T> {
    /// Relabels the family through `bij`, which must be injective and
    /// defined on every label of the family.
    pub fn reindex(&self, bij: &BTreeMap<Label, Label>) -> Result<Self, FamilyError> {
        let mut used = BTreeSet::new();
        let mut entries = Vec::with_capacity(self.entries.len());
        for (l, v) in &self.entries {
            let target = bij
                .get(l)
                .ok_or_else(|| FamilyError::NotBijective(format!("`{l}` has no image")))?;
            if !used.insert(target.clone()) {
                return Err(FamilyError::NotBijective(format!("`{target}` is hit twice")));
            }
            entries.push((target.clone(), v.clone()));
        }
        Ok(IndexedFamily { entries })
    }

    /// Restriction of the family to `keep`.
    pub fn subfamily(&self, keep: &BTreeSet<Label>) -> Result<Self, FamilyError> {
        for l in keep {
            if self.get(l).is_none() {
                return Err(FamilyError::UnknownLabel(l.clone()));
            }
        }
        Ok(IndexedFamily {
            entries: self.entries.iter().filter(|(l, _)| keep.contains(l)).cloned().collect(),
        })
    }

    /// The subfamily selected by one block of a partition.
    pub fn block(&self, block: &[Label]) -> Result<Self, FamilyError> {
        let keep: BTreeSet<Label> = block.iter().cloned().collect();
        self.subfamily(&keep)
    }
}

impl<T: fmt::Display> fmt::Display for IndexedFamily<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (l, v)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}:{v}")?;
        }
        f.write_str("}")
    }
}

/// A partition of a label set into disjoint blocks. Empty blocks are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<Label>>,
}

impl Partition {
    /// Checks that `blocks` are disjoint and cover exactly `labels`.
    pub fn new(blocks: Vec<Vec<Label>>, labels: &BTreeSet<Label>) -> Result<Self, FamilyError> {
        let mut seen = BTreeSet::new();
        for l in blocks.iter().flatten() {
            if !labels.contains(l) {
                return Err(FamilyError::InvalidPartition(format!("`{l}` is not in the label set")));
            }
            if !seen.insert(l.clone()) {
                return Err(FamilyError::InvalidPartition(format!("`{l}` lies in two blocks")));
            }
        }
        if seen.len() != labels.len() {
            return Err(FamilyError::InvalidPartition("blocks do not cover the label set".into()));
        }
        Ok(Partition { blocks })
    }

    pub fn blocks(&self) -> &[Vec<Label>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// The same partition with `count` extra empty blocks appended.
    pub fn with_empty_blocks(mut self, count: usize) -> Self {
        self.blocks.extend(std::iter::repeat_with(Vec::new).take(count));
        self
    }

    /// Label naming block `j` in a family of block sums.
    pub fn block_label(j: usize) -> Label {
        Label(format!("B{j}"))
    }

    fn from_growth_string(labels: &[Label], rgs: &[usize]) -> Self {
        let nblocks = rgs.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); nblocks];
        for (l, &b) in labels.iter().zip(rgs) {
            blocks[b].push(l.clone());
        }
        Partition { blocks }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (k, l) in b.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{l}")?;
            }
            f.write_str("}")?;
        }
        f.write_str("}")
    }
}

/// All set partitions of `labels`, in restricted-growth-string order.
///
/// The first partition is always the single block (or zero blocks for the
/// empty set); the last is all singletons.
pub fn enumerate_partitions(labels: &[Label]) -> Result<Vec<Partition>, FamilyError> {
    let n = labels.len();
    if n > MAX_EXHAUSTIVE_LABELS {
        return Err(FamilyError::TooLarge(n));
    }
    if n == 0 {
        return Ok(vec![Partition { blocks: Vec::new() }]);
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        out.push(Partition::from_growth_string(labels, &rgs));
        // advance to the next restricted growth string
        let mut i = n - 1;
        loop {
            if i == 0 {
                return Ok(out);
            }
            let max_prefix = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= max_prefix {
                rgs[i] += 1;
                for r in &mut rgs[i + 1..] {
                    *r = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

/// Bell number B(n), exact for n ≤ 40.
pub fn bell(n: usize) -> u128 {
    completions(n, 0)
}

// Number of ways to finish a growth string with `remaining` positions left
// when `blocks` blocks are already open.
fn completions(remaining: usize, blocks: usize) -> u128 {
    let mut table = vec![1u128; remaining + blocks + 2];
    for _ in 0..remaining {
        let mut next = vec![0u128; table.len()];
        for k in 0..table.len() - 1 {
            next[k] = k as u128 * table[k] + table[k + 1];
        }
        table = next;
    }
    table[blocks]
}

/// A uniformly distributed random partition of `labels`.
pub fn sample_partition<R: Rng + ?Sized>(labels: &[Label], rng: &mut R) -> Result<Partition, FamilyError> {
    let n = labels.len();
    if n > MAX_SAMPLED_LABELS {
        return Err(FamilyError::TooLarge(n));
    }
    let mut rgs = Vec::with_capacity(n);
    let mut blocks = 0usize;
    for pos in 0..n {
        let remaining = n - pos - 1;
        let join_weight = completions(remaining, blocks);
        let open_weight = completions(remaining, blocks + 1);
        let total = blocks as u128 * join_weight + open_weight;
        let pick = rng.gen_range(0..total);
        if pick < blocks as u128 * join_weight {
            rgs.push((pick / join_weight) as usize);
        } else {
            rgs.push(blocks);
            blocks += 1;
        }
    }
    Ok(Partition::from_growth_string(labels, &rgs))
}
