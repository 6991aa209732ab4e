//! The pattern families `T(k, r, m, I)`, their unions over a range of `m`,
//! the punctured sets `M = T \ {φ}` and the symbol complement on patterns.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::perm::{Colour, ColouredPermutation, Element};

/// A subset `I ⊆ {1..r}` of colours. `d = |I|` may be zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColourSet {
    members: Vec<u32>,
    rank: u32,
}

impl ColourSet {
    pub fn new(members: impl IntoIterator<Item = u32>, rank: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidRank(rank));
        }
        let mut members: Vec<u32> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&c| c == 0 || c > rank) {
            return Err(Error::ColourOutOfRange { colour: bad, rank });
        }
        members.sort_unstable();
        members.dedup();
        Ok(ColourSet { members, rank })
    }

    /// `{1, …, d}`.
    pub fn first(d: u32, rank: u32) -> Result<Self> {
        Self::new(1..=d, rank)
    }

    /// Every subset of `{1..rank}`, ordered by size and then lexicographically.
    pub fn all_subsets(rank: u32) -> Vec<ColourSet> {
        let mut out: Vec<ColourSet> = (0u32..(1 << rank))
            .map(|mask| ColourSet {
                members: (1..=rank).filter(|c| mask & (1 << (c - 1)) != 0).collect(),
                rank,
            })
            .collect();
        out.sort_by(|a, b| a.members.len().cmp(&b.members.len()).then(a.members.cmp(&b.members)));
        out
    }

    pub fn d(&self) -> u32 {
        self.members.len() as u32
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn contains(&self, colour: Colour) -> bool {
        self.members.binary_search(&colour.get()).is_ok()
    }

    pub fn colours(&self) -> impl Iterator<Item = Colour> + '_ {
        self.members.iter().map(|&c| Colour::with_rank(c, self.rank).expect("validated"))
    }

    /// Colours of `1..=rank` not in the set.
    pub fn complement_colours(&self) -> impl Iterator<Item = Colour> + '_ {
        Colour::all(self.rank).filter(move |c| !self.contains(*c))
    }
}

impl fmt::Display for ColourSet {
    /// `1|3`, the form used in set spec strings; the empty set prints nothing.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A finite set of coloured patterns of a common rank, kept sorted and free of
/// duplicates so that iteration (and every report built on it) is
/// deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternSet {
    patterns: Vec<ColouredPermutation>,
    rank: u32,
    tag: String,
}

impl PatternSet {
    /// Patterns of mixed lengths are accepted here; the family constructors
    /// only ever produce uniform lengths.
    pub fn new(patterns: Vec<ColouredPermutation>, rank: u32, tag: impl Into<String>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidRank(rank));
        }
        if let Some(p) = patterns.iter().find(|p| p.rank() != rank) {
            return Err(Error::RankMismatch { expected: rank, found: p.rank() });
        }
        let mut patterns = patterns;
        patterns.sort();
        patterns.dedup();
        Ok(PatternSet { patterns, rank, tag: tag.into() })
    }

    pub fn empty(rank: u32) -> Result<Self> {
        Self::new(Vec::new(), rank, "empty")
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn iter(&self) -> core::slice::Iter<'_, ColouredPermutation> {
        self.patterns.iter()
    }

    pub fn patterns(&self) -> &[ColouredPermutation] {
        &self.patterns
    }

    pub fn contains(&self, pattern: &ColouredPermutation) -> bool {
        self.patterns.binary_search(pattern).is_ok()
    }

    /// The common pattern length, if there is one.
    pub fn uniform_length(&self) -> Option<usize> {
        let first = self.patterns.first()?.len();
        self.patterns.iter().all(|p| p.len() == first).then_some(first)
    }

    /// This set with `pattern` removed (a no-op if it is absent).
    pub fn without(&self, pattern: &ColouredPermutation, tag: impl Into<String>) -> PatternSet {
        PatternSet {
            patterns: self.patterns.iter().filter(|p| *p != pattern).cloned().collect(),
            rank: self.rank,
            tag: tag.into(),
        }
    }

    pub fn union(&self, other: &PatternSet, tag: impl Into<String>) -> Result<PatternSet> {
        let mut all = self.patterns.clone();
        all.extend(other.patterns.iter().cloned());
        PatternSet::new(all, self.rank, tag)
    }

    pub fn into_patterns(self) -> Vec<ColouredPermutation> {
        self.patterns
    }
}

impl<'a> IntoIterator for &'a PatternSet {
    type Item = &'a ColouredPermutation;
    type IntoIter = core::slice::Iter<'a, ColouredPermutation>;

    fn into_iter(self) -> Self::IntoIter {
        self.patterns.iter()
    }
}

fn check_family(k: u32, r: u32, colours: &ColourSet) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter(String::from("pattern length k must be at least 1")));
    }
    if r == 0 {
        return Err(Error::InvalidRank(r));
    }
    if let Some(&bad) = colours.members().iter().find(|&&c| c > r) {
        return Err(Error::ColourOutOfRange { colour: bad, rank: r });
    }
    Ok(())
}

/// Advances `v` to the next permutation in lexicographic order.
pub(crate) fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Advances a colouring (each entry in `1..=r`) like an odometer.
pub(crate) fn next_colouring(colours: &mut [u32], r: u32) -> bool {
    for c in colours.iter_mut().rev() {
        if *c < r {
            *c += 1;
            return true;
        }
        *c = 1;
    }
    false
}

/// `T(k, r, m, I)`: all `φ ∈ S_k^(r)` whose first entry is `m` coloured by
/// some colour of `I`.
///
/// Built as a product: a first colour from `I`, an ordering of the other
/// `k - 1` symbols, and a colouring of those positions. The size is
/// `d (k-1)! r^(k-1)`.
pub fn build_t(k: u32, r: u32, m: u32, colours: &ColourSet) -> Result<PatternSet> {
    check_family(k, r, colours)?;
    if m == 0 || m > k {
        return Err(Error::InvalidParameter(format!("m={m} must lie in 1..={k}")));
    }
    let mut patterns = Vec::new();
    for first_colour in colours.members().iter().copied() {
        let first = Element::new(m, Colour::with_rank(first_colour, r)?);
        let mut rest: Vec<u32> = (1..=k).filter(|&s| s != m).collect();
        loop {
            let mut tail_colours = alloc::vec![1u32; rest.len()];
            loop {
                let mut elements = Vec::with_capacity(k as usize);
                elements.push(first);
                elements.extend(
                    rest.iter()
                        .zip(&tail_colours)
                        .map(|(&s, &c)| Element::new(s, Colour::with_rank(c, r).expect("in range"))),
                );
                patterns.push(ColouredPermutation::from_raw(elements, r));
                if !next_colouring(&mut tail_colours, r) {
                    break;
                }
            }
            if !next_permutation(&mut rest) {
                break;
            }
        }
    }
    PatternSet::new(patterns, r, format!("T:k={k},r={r},m={m},I={colours}"))
}

/// `⋃_{m=a..b} T(k, r, m, I)`.
pub fn build_t_union(k: u32, r: u32, a: u32, b: u32, colours: &ColourSet) -> Result<PatternSet> {
    check_family(k, r, colours)?;
    if a == 0 || a > b || b > k {
        return Err(Error::InvalidParameter(format!("need 1 <= a <= b <= k, got a={a}, b={b}, k={k}")));
    }
    let mut all = Vec::new();
    for m in a..=b {
        all.extend(build_t(k, r, m, colours)?.into_patterns());
    }
    PatternSet::new(all, r, format!("U:k={k},r={r},a={a},b={b},I={colours}"))
}

/// `M(φ) = T(k, r, m, I) \ {φ}`; `φ` must belong to `T`.
pub fn build_m(
    k: u32,
    r: u32,
    m: u32,
    colours: &ColourSet,
    pattern: &ColouredPermutation,
) -> Result<PatternSet> {
    let t = build_t(k, r, m, colours)?;
    if !t.contains(pattern) {
        return Err(Error::NotAMember(format!("{pattern} is not in {}", t.tag())));
    }
    Ok(t.without(pattern, format!("M:k={k},r={r},m={m},I={colours},phi={pattern}")))
}

/// Replaces each symbol `s` by `k + 1 - s`, keeping colours.
pub fn complement_pattern(pattern: &ColouredPermutation) -> ColouredPermutation {
    let k = pattern.len() as u32;
    let elements = pattern
        .elements()
        .iter()
        .map(|e| Element::new(k + 1 - e.symbol, e.colour))
        .collect();
    ColouredPermutation::from_raw(elements, pattern.rank())
}
