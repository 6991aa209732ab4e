//! Exhaustive generation of `S_n^(r)` and the backtracking counters built on
//! it.
//!
//! The search fills positions left to right, trying unused symbols in
//! ascending order and, for each, colours in ascending order. After a
//! placement at position `p` only occurrences whose last index is `p` are
//! examined: containment is monotone under appending, so a branch can be cut
//! the moment any forbidden pattern completes there.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::count::{BigCount, Tally};
use crate::error::{Error, Result};
use crate::matching::{count_occurrences_exhaustive, CompiledPattern, Matcher};
use crate::pattern_set::PatternSet;
use crate::perm::{Colour, ColouredPermutation, Element};

/// Cap on the number of search states a single count may generate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnumerationBudget {
    max_states: u64,
    /// Advisory wall-clock hint in seconds; never enforced here.
    pub time_hint_secs: Option<f64>,
}

impl EnumerationBudget {
    pub fn new(max_states: u64) -> Result<Self> {
        if max_states == 0 {
            return Err(Error::InvalidParameter(String::from("max_states must be at least 1")));
        }
        Ok(EnumerationBudget { max_states, time_hint_secs: None })
    }

    pub fn unlimited() -> Self {
        EnumerationBudget { max_states: u64::MAX, time_hint_secs: None }
    }

    pub fn max_states(&self) -> u64 {
        self.max_states
    }
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        Self::unlimited()
    }
}

/// Result of one count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub n: u32,
    pub r: u32,
    pub pattern_set_tag: String,
    pub count: BigCount,
    pub states_visited: BigCount,
}

/// Every element of `S_n^(r)` in lexicographic token order.
#[derive(Clone, Debug)]
pub struct AllPerms {
    r: u32,
    current: Option<Vec<Element>>,
}

/// Streams `S_n^(r)`, `n! r^n` elements, each exactly once. Yields nothing
/// when `r = 0`.
pub fn enumerate_all(n: u32, r: u32) -> AllPerms {
    let current = (r >= 1).then(|| {
        (1..=n).map(|s| Element::new(s, Colour::with_rank(1, r).expect("r >= 1"))).collect()
    });
    AllPerms { r, current }
}

/// Like [`enumerate_all`] but refuses up front when `n! r^n` exceeds the
/// budget.
pub fn enumerate_all_within(n: u32, r: u32, budget: EnumerationBudget) -> Result<AllPerms> {
    if r == 0 {
        return Err(Error::InvalidRank(r));
    }
    if BigCount::group_order(n, r) > BigCount::from(budget.max_states) {
        return Err(Error::BudgetExceeded { limit: budget.max_states });
    }
    Ok(enumerate_all(n, r))
}

impl AllPerms {
    fn advance(cur: &mut [Element], r: u32) -> bool {
        let n = cur.len();
        for p in (0..n).rev() {
            let here = cur[p];
            let next = if here.colour.get() < r {
                Some(Element::new(here.symbol, Colour::with_rank(here.colour.get() + 1, r).expect("< r")))
            } else {
                cur[p + 1..]
                    .iter()
                    .map(|e| e.symbol)
                    .filter(|&s| s > here.symbol)
                    .min()
                    .map(|s| Element::new(s, Colour::with_rank(1, r).expect("r >= 1")))
            };
            if let Some(next) = next {
                let mut rest: Vec<u32> = cur[p..].iter().map(|e| e.symbol).filter(|&s| s != next.symbol).collect();
                rest.sort_unstable();
                cur[p] = next;
                for (slot, s) in cur[p + 1..].iter_mut().zip(rest) {
                    *slot = Element::new(s, Colour::with_rank(1, r).expect("r >= 1"));
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for AllPerms {
    type Item = ColouredPermutation;

    fn next(&mut self) -> Option<ColouredPermutation> {
        let cur = self.current.as_mut()?;
        let out = ColouredPermutation::from_raw(cur.clone(), self.r);
        if !Self::advance(cur, self.r) {
            self.current = None;
        }
        Some(out)
    }
}

/// Count for one subtree of the search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubtreeCount {
    pub count: BigCount,
    pub states: u64,
}

/// A configured backtracking search over `S_n^(r)`: either "avoid every
/// pattern of a set" or "avoid `T \ {φ}` and contain `φ` exactly once".
#[derive(Clone, Debug)]
pub struct Search {
    n: u32,
    r: u32,
    avoid: Vec<CompiledPattern>,
    avoid_patterns: Vec<ColouredPermutation>,
    target: Option<(CompiledPattern, ColouredPermutation)>,
    tag: String,
    budget: EnumerationBudget,
}

impl Search {
    /// Counts `S_n^(r)(T)`.
    pub fn avoiders(n: u32, r: u32, set: &PatternSet) -> Result<Self> {
        if set.rank() != r {
            return Err(Error::RankMismatch { expected: r, found: set.rank() });
        }
        Ok(Search {
            n,
            r,
            avoid: set.iter().map(CompiledPattern::new).collect(),
            avoid_patterns: set.patterns().to_vec(),
            target: None,
            tag: String::from(set.tag()),
            budget: EnumerationBudget::unlimited(),
        })
    }

    /// Counts permutations avoiding `T \ {φ}` that contain `φ` exactly once.
    pub fn exactly_once(n: u32, r: u32, set: &PatternSet, pattern: &ColouredPermutation) -> Result<Self> {
        if set.rank() != r {
            return Err(Error::RankMismatch { expected: r, found: set.rank() });
        }
        if pattern.rank() != r {
            return Err(Error::RankMismatch { expected: r, found: pattern.rank() });
        }
        if !set.contains(pattern) {
            return Err(Error::NotAMember(format!("{pattern} is not in {}", set.tag())));
        }
        let rest: Vec<ColouredPermutation> = set.iter().filter(|p| *p != pattern).cloned().collect();
        Ok(Search {
            n,
            r,
            avoid: rest.iter().map(CompiledPattern::new).collect(),
            avoid_patterns: rest,
            target: Some((CompiledPattern::new(pattern), pattern.clone())),
            tag: format!("{} once {}", set.tag(), pattern),
            budget: EnumerationBudget::unlimited(),
        })
    }

    pub fn with_budget(mut self, budget: EnumerationBudget) -> Self {
        self.budget = budget;
        self
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn budget(&self) -> EnumerationBudget {
        self.budget
    }

    /// The first-level branches `(symbol, colour)`, in search order. Counting
    /// each with [`Search::count_under`] and adding one for the root
    /// reproduces [`Search::count`] exactly.
    pub fn first_moves(&self) -> Vec<Element> {
        let mut out = Vec::new();
        for s in 1..=self.n {
            for c in Colour::all(self.r) {
                out.push(Element::new(s, c));
            }
        }
        out
    }

    pub fn count(&self) -> Result<CountReport> {
        let mut walker = Walker::new(self);
        walker.states = 1;
        walker.check_budget()?;
        if let Some(hits) = walker.root_hits() {
            walker.descend(0, hits, &mut |_, _| {})?;
        }
        Ok(self.report(walker.tally.total(), BigCount::from(walker.states)))
    }

    /// Counts the subtree below a fixed prefix. States counted are the
    /// prefix's own node and everything beneath it.
    pub fn count_under(&self, prefix: &[Element]) -> Result<SubtreeCount> {
        let mut walker = Walker::new(self);
        let Some(mut hits) = walker.root_hits() else {
            return Ok(SubtreeCount { count: BigCount::zero(), states: 0 });
        };
        for (p, e) in prefix.iter().enumerate() {
            if e.symbol == 0 || e.symbol > self.n || walker.used[e.symbol as usize - 1] {
                return Err(Error::InvalidParameter(format!("prefix entry {e} is not placeable")));
            }
            e.colour.check(self.r)?;
            walker.place(*e);
            match walker.admit(p, hits) {
                Some(h) => hits = h,
                None => {
                    return Ok(SubtreeCount { count: BigCount::zero(), states: 1 });
                }
            }
        }
        walker.states = 1;
        walker.check_budget()?;
        walker.descend(prefix.len(), hits, &mut |_, _| {})?;
        Ok(SubtreeCount { count: walker.tally.total(), states: walker.states })
    }

    /// Calls `visit` for every surviving permutation, in lexicographic order.
    pub fn for_each(&self, mut visit: impl FnMut(&ColouredPermutation)) -> Result<CountReport> {
        let r = self.r;
        let mut walker = Walker::new(self);
        walker.states = 1;
        walker.check_budget()?;
        if let Some(hits) = walker.root_hits() {
            walker.descend(0, hits, &mut |syms, cols| {
                let elements = syms
                    .iter()
                    .zip(cols)
                    .map(|(&s, &c)| Element::new(s, Colour::with_rank(c, r).expect("placed colours are valid")))
                    .collect();
                visit(&ColouredPermutation::from_raw(elements, r));
            })?;
        }
        Ok(self.report(walker.tally.total(), BigCount::from(walker.states)))
    }

    pub fn list(&self) -> Result<Vec<ColouredPermutation>> {
        let mut out = Vec::new();
        self.for_each(|p| out.push(p.clone()))?;
        Ok(out)
    }

    /// Reference count: filters every element of `S_n^(r)` through the
    /// subset-by-subset occurrence definition. No pruning; visits exactly
    /// `n! r^n` states.
    pub fn count_naive(&self) -> Result<CountReport> {
        let mut count = Tally::default();
        let mut states = Tally::default();
        for perm in enumerate_all_within(self.n, self.r, self.budget)? {
            states.bump();
            if self.naive_accepts(&perm)? {
                count.bump();
            }
        }
        Ok(self.report(count.total(), states.total()))
    }

    fn naive_accepts(&self, perm: &ColouredPermutation) -> Result<bool> {
        for p in &self.avoid_patterns {
            if !count_occurrences_exhaustive(perm, p)?.is_zero() {
                return Ok(false);
            }
        }
        match &self.target {
            Some((_, phi)) => Ok(count_occurrences_exhaustive(perm, phi)? == BigCount::one()),
            None => Ok(true),
        }
    }

    fn report(&self, count: BigCount, states_visited: BigCount) -> CountReport {
        CountReport { n: self.n, r: self.r, pattern_set_tag: self.tag.clone(), count, states_visited }
    }
}

struct Walker<'s> {
    search: &'s Search,
    symbols: Vec<u32>,
    colours: Vec<u32>,
    used: Vec<bool>,
    scratch: Vec<usize>,
    states: u64,
    tally: Tally,
}

impl<'s> Walker<'s> {
    fn new(search: &'s Search) -> Self {
        let n = search.n as usize;
        Walker {
            search,
            symbols: Vec::with_capacity(n),
            colours: Vec::with_capacity(n),
            used: vec![false; n],
            scratch: Vec::new(),
            states: 0,
            tally: Tally::default(),
        }
    }

    /// Occurrences already present in the empty word: only the empty pattern
    /// has one. `None` when the root itself is excluded.
    fn root_hits(&self) -> Option<u64> {
        if self.search.avoid.iter().any(|p| p.len() == 0) {
            return None;
        }
        Some(match &self.search.target {
            Some((t, _)) if t.len() == 0 => 1,
            _ => 0,
        })
    }

    fn check_budget(&self) -> Result<()> {
        if self.states > self.search.budget.max_states {
            return Err(Error::BudgetExceeded { limit: self.search.budget.max_states });
        }
        Ok(())
    }

    fn place(&mut self, e: Element) {
        self.used[e.symbol as usize - 1] = true;
        self.symbols.push(e.symbol);
        self.colours.push(e.colour.get());
    }

    fn unplace(&mut self) {
        let s = self.symbols.pop().expect("placed");
        self.colours.pop();
        self.used[s as usize - 1] = false;
    }

    /// Checks the occurrences ending at 0-based position `p`; returns the
    /// updated number of target occurrences, or `None` to prune.
    fn admit(&mut self, p: usize, hits: u64) -> Option<u64> {
        for pat in &self.search.avoid {
            if Matcher::count(&self.symbols, &self.colours, pat, Some(p), 1, &mut self.scratch) > 0 {
                return None;
            }
        }
        match &self.search.target {
            None => Some(hits),
            Some((t, _)) => {
                let extra = Matcher::count(&self.symbols, &self.colours, t, Some(p), 2 - hits, &mut self.scratch);
                let total = hits + extra;
                (total <= 1).then_some(total)
            }
        }
    }

    fn descend(&mut self, depth: usize, hits: u64, visit: &mut dyn FnMut(&[u32], &[u32])) -> Result<()> {
        let n = self.search.n as usize;
        if depth == n {
            if self.search.target.is_none() || hits == 1 {
                self.tally.bump();
                visit(&self.symbols, &self.colours);
            }
            return Ok(());
        }
        for s in 1..=self.search.n {
            if self.used[s as usize - 1] {
                continue;
            }
            for c in Colour::all(self.search.r) {
                self.place(Element::new(s, c));
                self.states += 1;
                if let Err(e) = self.check_budget() {
                    self.unplace();
                    return Err(e);
                }
                if let Some(h) = self.admit(depth, hits) {
                    let res = self.descend(depth + 1, h, visit);
                    if res.is_err() {
                        self.unplace();
                        return res;
                    }
                }
                self.unplace();
            }
        }
        Ok(())
    }
}

/// `|S_n^(r)(T)|` by pruned backtracking.
pub fn count_avoiders(n: u32, r: u32, set: &PatternSet) -> Result<CountReport> {
    Search::avoiders(n, r, set)?.count()
}

/// Number of `ψ ∈ S_n^(r)` avoiding `T \ {φ}` with exactly one occurrence of
/// `φ`.
pub fn count_exactly_once(
    n: u32,
    r: u32,
    set: &PatternSet,
    pattern: &ColouredPermutation,
) -> Result<CountReport> {
    Search::exactly_once(n, r, set, pattern)?.count()
}

/// The members of `S_n^(r)(T)` in lexicographic order.
pub fn list_avoiders(n: u32, r: u32, set: &PatternSet) -> Result<Vec<ColouredPermutation>> {
    Search::avoiders(n, r, set)?.list()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::pattern_set::{build_t, ColourSet};
    use crate::perm::parse_perm;

    fn s3(text: &str) -> ColouredPermutation {
        ColouredPermutation::uncoloured(
            &text.bytes().map(|b| u32::from(b - b'0')).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn group_sizes() {
        assert_eq!(enumerate_all(2, 2).count(), 8);
        assert_eq!(enumerate_all(3, 2).count(), 48);
        assert_eq!(enumerate_all(4, 3).count(), 24 * 81);
        let empty: Vec<_> = enumerate_all(0, 5).collect();
        assert_eq!(empty.len(), 1);
        assert!(empty[0].is_empty());
        assert_eq!(enumerate_all(2, 0).count(), 0);
    }

    #[test]
    fn enumeration_is_strictly_increasing() {
        let all: Vec<_> = enumerate_all(4, 2).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all.first().unwrap().to_string(), "1^1,2^1,3^1,4^1");
        assert_eq!(all.last().unwrap().to_string(), "4^2,3^2,2^2,1^2");
    }

    #[test]
    fn budget_refuses_large_enumeration() {
        let b = EnumerationBudget::new(47).unwrap();
        assert!(matches!(enumerate_all_within(3, 2, b), Err(Error::BudgetExceeded { limit: 47 })));
        assert!(enumerate_all_within(3, 2, EnumerationBudget::new(48).unwrap()).is_ok());
        assert!(EnumerationBudget::new(0).is_err());
    }

    #[test]
    fn avoider_examples() {
        let t = build_t(3, 1, 1, &ColourSet::first(1, 1).unwrap()).unwrap();
        assert_eq!(t.patterns(), [s3("123"), s3("132")]);
        let report = count_avoiders(3, 1, &t).unwrap();
        assert_eq!(report.count, BigCount::from(4u32));
        let listed = list_avoiders(3, 1, &t).unwrap();
        assert_eq!(listed, [s3("213"), s3("231"), s3("312"), s3("321")]);

        let t = build_t(2, 2, 1, &ColourSet::first(1, 2).unwrap()).unwrap();
        assert_eq!(count_avoiders(2, 2, &t).unwrap().count, BigCount::from(6u32));
        assert_eq!(list_avoiders(1, 2, &t).unwrap().len(), 2);

        let none = PatternSet::empty(3).unwrap();
        assert_eq!(count_avoiders(4, 3, &none).unwrap().count, BigCount::group_order(4, 3));
    }

    #[test]
    fn exactly_once_examples() {
        let t = PatternSet::new(vec![s3("12")], 1, "12").unwrap();
        assert_eq!(count_exactly_once(3, 1, &t, &s3("12")).unwrap().count, BigCount::from(2u32));

        let t = build_t(2, 2, 1, &ColourSet::first(1, 2).unwrap()).unwrap();
        let phi = parse_perm("1^1,2^1", Some(2)).unwrap();
        assert_eq!(count_exactly_once(4, 2, &t, &phi).unwrap().count, BigCount::from(47u32));
        assert_eq!(count_exactly_once(2, 2, &t, &phi).unwrap().count, BigCount::one());
        assert_eq!(count_exactly_once(1, 2, &t, &phi).unwrap().count, BigCount::zero());

        let outsider = parse_perm("2^1,1^1", Some(2)).unwrap();
        assert!(matches!(count_exactly_once(3, 2, &t, &outsider), Err(Error::NotAMember(_))));
    }

    #[test]
    fn rank_mismatch_rejected() {
        let t = build_t(2, 2, 1, &ColourSet::first(1, 2).unwrap()).unwrap();
        assert!(matches!(count_avoiders(3, 1, &t), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn pruned_matches_naive_and_partition() {
        let colours = ColourSet::first(1, 2).unwrap();
        for m in 1..=3 {
            let t = build_t(3, 2, m, &colours).unwrap();
            let search = Search::avoiders(4, 2, &t).unwrap();
            let pruned = search.count().unwrap();
            let naive = search.count_naive().unwrap();
            assert_eq!(pruned.count, naive.count);
            assert_ne!(pruned.states_visited, naive.states_visited);

            let mut total = BigCount::zero();
            let mut states = 1u64;
            for first in search.first_moves() {
                let sub = search.count_under(&[first]).unwrap();
                total += sub.count;
                states += sub.states;
            }
            assert_eq!(total, pruned.count);
            assert_eq!(BigCount::from(states), pruned.states_visited);
        }
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let t = PatternSet::empty(2).unwrap();
        let search = Search::avoiders(4, 2, &t).unwrap().with_budget(EnumerationBudget::new(100).unwrap());
        assert!(matches!(search.count(), Err(Error::BudgetExceeded { limit: 100 })));
        assert!(matches!(search.count_naive(), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn empty_pattern_excludes_everything() {
        let t = PatternSet::new(vec![ColouredPermutation::empty(1).unwrap()], 1, "e").unwrap();
        assert_eq!(count_avoiders(3, 1, &t).unwrap().count, BigCount::zero());
        assert_eq!(Search::avoiders(3, 1, &t).unwrap().count_naive().unwrap().count, BigCount::zero());
    }

    #[test]
    fn mixed_length_sets() {
        // Avoiding 1^2 (any symbol in colour 2) and 21: only the identity in colour 1 survives.
        let a = parse_perm("1^2", Some(2)).unwrap();
        let b = parse_perm("2^1,1^1", Some(2)).unwrap();
        let t = PatternSet::new(vec![a, b], 2, "mixed").unwrap();
        let search = Search::avoiders(4, 2, &t).unwrap();
        assert_eq!(search.count().unwrap().count, BigCount::one());
        assert_eq!(search.count_naive().unwrap().count, BigCount::one());
    }

    #[test]
    fn report_invariants() {
        let t = build_t(2, 2, 1, &ColourSet::first(2, 2).unwrap()).unwrap();
        for n in 0..=4 {
            let rep = count_avoiders(n, 2, &t).unwrap();
            assert!(rep.count <= BigCount::group_order(n, 2));
            assert!(rep.states_visited >= rep.count);
        }
    }
}
