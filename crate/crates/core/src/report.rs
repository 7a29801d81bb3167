//! Check reports, configuration and the seeded sampling shared by every law checker.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::family::IndexedFamily;
use crate::pcm::Element;
use crate::pcmcat::Object;

/// Bounds, seed and tolerance for the brute-force checkers.
#[derive(Debug, Clone)]
pub struct CheckConfig {
    pub seed: u64,
    /// Absolute componentwise tolerance for complex comparisons.
    pub tolerance: f64,
    /// Largest family size drawn from a sample grid.
    pub family_size: usize,
    /// Number of random trials for sampled checks.
    pub trials: usize,
    /// Per-size cap on enumerated families; above it families are sampled.
    pub family_budget: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { seed: 0x5eed, tolerance: 1e-9, family_size: 4, trials: 200, family_budget: 4000 }
    }
}

impl CheckConfig {
    /// A generator seeded from the config seed and a check name, so that
    /// checks draw independent, reproducible streams.
    pub fn rng(&self, stream: &str) -> ChaCha8Rng {
        // FNV-1a
        let mut h: u64 = 0xcbf29ce484222325;
        for b in stream.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        ChaCha8Rng::seed_from_u64(self.seed ^ h)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

/// Families (and the objects they live between) that make a check fail.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub objects: Vec<Object>,
    pub families: Vec<IndexedFamily<Element>>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, fam) in self.families.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{fam}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub name: String,
    pub verdict: Verdict,
    /// Number of individual cases examined.
    pub checked: u64,
    pub witness: Option<String>,
    pub counterexample: Option<Counterexample>,
}

impl Report {
    pub fn pass(name: impl Into<String>, checked: u64) -> Self {
        Report { name: name.into(), verdict: Verdict::Pass, checked, witness: None, counterexample: None }
    }

    pub fn fail(name: impl Into<String>, checked: u64, witness: impl Into<String>) -> Self {
        Report {
            name: name.into(),
            verdict: Verdict::Fail,
            checked,
            witness: Some(witness.into()),
            counterexample: None,
        }
    }

    pub fn with_counterexample(mut self, cx: Counterexample) -> Self {
        self.counterexample = Some(cx);
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.verdict {
            Verdict::Pass => write!(f, "CHECK {} PASS", self.name),
            Verdict::Fail => {
                write!(f, "CHECK {} FAIL", self.name)?;
                if let Some(w) = &self.witness {
                    write!(f, " witness={w}")?;
                }
                Ok(())
            }
        }
    }
}

/// Accumulates case counts and the first failure for one check.
#[derive(Debug)]
pub(crate) struct Tally {
    name: String,
    checked: u64,
    failure: Option<(String, Option<Counterexample>)>,
}

impl Tally {
    pub(crate) fn new(name: impl Into<String>) -> Self {
        Tally { name: name.into(), checked: 0, failure: None }
    }

    pub(crate) fn failed(&self) -> bool {
        self.failure.is_some()
    }

    pub(crate) fn case(&mut self) {
        self.checked += 1;
    }

    pub(crate) fn fail(&mut self, witness: impl Into<String>, cx: Option<Counterexample>) {
        if self.failure.is_none() {
            self.failure = Some((witness.into(), cx));
        }
    }

    pub(crate) fn finish(self) -> Report {
        match self.failure {
            None => Report::pass(self.name, self.checked),
            Some((w, cx)) => {
                let mut r = Report::fail(self.name, self.checked, w);
                r.counterexample = cx;
                r
            }
        }
    }
}

/// A bounded list of carrier elements to draw families from.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub elements: Vec<Element>,
    /// True when `elements` is the whole carrier.
    pub exhaustive: bool,
}

/// Number of size-`k` multisets over `g` items.
pub fn multiset_count(g: usize, k: usize) -> u128 {
    if k == 0 {
        return 1;
    }
    if g == 0 {
        return 0;
    }
    // C(g + k - 1, k)
    let n = (g + k - 1) as u128;
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Families of size `0..=max_size` over `grid`, as multisets.
///
/// Sizes with at most `budget` multisets are enumerated exhaustively in
/// lexicographic order of grid positions; larger sizes are sampled
/// `budget` times.
pub fn families<T: Clone, R: Rng>(grid: &[T], max_size: usize, budget: usize, rng: &mut R) -> Vec<IndexedFamily<T>> {
    let mut out = Vec::new();
    for k in 0..=max_size {
        if multiset_count(grid.len(), k) <= budget as u128 {
            let mut idx = Vec::with_capacity(k);
            multisets(grid.len(), k, 0, &mut idx, &mut |ix| {
                out.push(IndexedFamily::from_values(ix.iter().map(|&i| grid[i].clone())));
            });
        } else {
            for _ in 0..budget {
                let mut ix: Vec<usize> = (0..k).map(|_| rng.gen_range(0..grid.len())).collect();
                ix.sort_unstable();
                out.push(IndexedFamily::from_values(ix.iter().map(|&i| grid[i].clone())));
            }
        }
    }
    out
}

fn multisets(g: usize, k: usize, start: usize, idx: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if idx.len() == k {
        emit(idx);
        return;
    }
    for i in start..g {
        idx.push(i);
        multisets(g, k, i, idx, emit);
        idx.pop();
    }
}

/// A family of uniformly random size in `0..=max_size` with entries drawn from `grid`.
pub fn random_family<T: Clone, R: Rng>(grid: &[T], max_size: usize, rng: &mut R) -> IndexedFamily<T> {
    if grid.is_empty() {
        return IndexedFamily::empty();
    }
    let k = rng.gen_range(0..=max_size);
    IndexedFamily::from_values((0..k).map(|_| grid[rng.gen_range(0..grid.len())].clone()))
}
