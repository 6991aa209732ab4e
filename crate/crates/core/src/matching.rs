//! Coloured pattern containment.
//!
//! `ψ` contains `φ` at positions `i_1 < … < i_k` when `(|ψ_{i_1}|, …, |ψ_{i_k}|)`
//! is order-isomorphic to `|φ|` and the colour of `ψ_{i_j}` equals the colour
//! of `φ_j` for every `j`. Colours are compared for equality, never for order.

use alloc::vec;
use alloc::vec::Vec;

use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::pattern_set::PatternSet;
use crate::perm::{ColouredPermutation, Occurrence};

/// Pattern unpacked into flat symbol and colour arrays.
#[derive(Clone, Debug)]
pub(crate) struct CompiledPattern {
    symbols: Vec<u32>,
    colours: Vec<u32>,
}

impl CompiledPattern {
    pub(crate) fn new(pattern: &ColouredPermutation) -> Self {
        CompiledPattern { symbols: pattern.absolute_value(), colours: pattern.colours() }
    }

    pub(crate) fn len(&self) -> usize {
        self.symbols.len()
    }
}

/// Backtracking embedding counter over a host given as flat arrays.
///
/// Partial embeddings are abandoned as soon as a colour or a pairwise order
/// comparison fails.
pub(crate) struct Matcher<'a> {
    host_symbols: &'a [u32],
    host_colours: &'a [u32],
    pattern: &'a CompiledPattern,
    chosen: &'a mut Vec<usize>,
    fixed_last: Option<usize>,
    limit: u64,
    found: u64,
}

impl<'a> Matcher<'a> {
    /// Counts embeddings of `pattern` in the host, stopping once `limit` are
    /// found. With `fixed_last = Some(p)` only embeddings whose last index is
    /// the 0-based position `p` are counted (positions after `p` are ignored).
    pub(crate) fn count(
        host_symbols: &'a [u32],
        host_colours: &'a [u32],
        pattern: &'a CompiledPattern,
        fixed_last: Option<usize>,
        limit: u64,
        scratch: &'a mut Vec<usize>,
    ) -> u64 {
        let k = pattern.len();
        if limit == 0 {
            return 0;
        }
        if k == 0 {
            // The empty pattern has one occurrence and it ends nowhere.
            return u64::from(fixed_last.is_none());
        }
        let (free, bound) = match fixed_last {
            Some(p) => {
                if p >= host_symbols.len() || p + 1 < k || host_colours[p] != pattern.colours[k - 1] {
                    return 0;
                }
                (k - 1, p)
            }
            None => {
                if host_symbols.len() < k {
                    return 0;
                }
                (k, host_symbols.len())
            }
        };
        scratch.clear();
        scratch.resize(k, 0);
        if let Some(p) = fixed_last {
            scratch[k - 1] = p;
        }
        let mut m = Matcher {
            host_symbols,
            host_colours,
            pattern,
            chosen: scratch,
            fixed_last,
            limit,
            found: 0,
        };
        m.extend(0, 0, free, bound);
        m.found
    }

    fn extend(&mut self, j: usize, start: usize, free: usize, bound: usize) {
        if j == free {
            self.found += 1;
            return;
        }
        let last_start = bound - (free - j);
        for i in start..=last_start {
            if self.fits(j, i) {
                self.chosen[j] = i;
                self.extend(j + 1, i + 1, free, bound);
                if self.found >= self.limit {
                    return;
                }
            }
        }
    }

    #[inline]
    fn fits(&self, j: usize, i: usize) -> bool {
        let pat = self.pattern;
        if self.host_colours[i] != pat.colours[j] {
            return false;
        }
        let v = self.host_symbols[i];
        let pv = pat.symbols[j];
        for (jj, &ii) in self.chosen[..j].iter().enumerate() {
            if (self.host_symbols[ii] < v) != (pat.symbols[jj] < pv) {
                return false;
            }
        }
        if let Some(p) = self.fixed_last {
            let k = pat.len();
            if (v < self.host_symbols[p]) != (pv < pat.symbols[k - 1]) {
                return false;
            }
        }
        true
    }
}

fn check_ranks(host: &ColouredPermutation, pattern: &ColouredPermutation) -> Result<()> {
    if host.rank() != pattern.rank() {
        return Err(Error::RankMismatch { expected: host.rank(), found: pattern.rank() });
    }
    Ok(())
}

/// Direct check of both containment conditions at the given positions.
pub fn is_occurrence(
    host: &ColouredPermutation,
    pattern: &ColouredPermutation,
    occ: &Occurrence,
) -> Result<bool> {
    check_ranks(host, pattern)?;
    if occ.len() != pattern.len() {
        return Err(Error::LengthMismatch { expected: pattern.len(), found: occ.len() });
    }
    if let Some(&bad) = occ.indices().iter().find(|&&i| i == 0 || i > host.len()) {
        return Err(Error::IndexOutOfRange { index: bad, len: host.len() });
    }
    Ok(occurrence_holds(host, pattern, occ.indices()))
}

fn occurrence_holds(host: &ColouredPermutation, pattern: &ColouredPermutation, idx: &[usize]) -> bool {
    let h = host.elements();
    let p = pattern.elements();
    let colours_match = idx.iter().zip(p).all(|(&i, pe)| h[i - 1].colour == pe.colour);
    colours_match
        && (0..idx.len()).all(|a| {
            (0..idx.len()).all(|b| {
                (h[idx[a] - 1].symbol < h[idx[b] - 1].symbol) == (p[a].symbol < p[b].symbol)
            })
        })
}

fn embeddings(host: &ColouredPermutation, pattern: &ColouredPermutation, limit: u64) -> u64 {
    let hs = host.absolute_value();
    let hc = host.colours();
    let compiled = CompiledPattern::new(pattern);
    let mut scratch = Vec::new();
    Matcher::count(&hs, &hc, &compiled, None, limit, &mut scratch)
}

/// Number of occurrences of `pattern` in `host`, found by pruned backtracking.
pub fn count_occurrences(host: &ColouredPermutation, pattern: &ColouredPermutation) -> Result<BigCount> {
    check_ranks(host, pattern)?;
    Ok(BigCount::from(embeddings(host, pattern, u64::MAX)))
}

/// Number of occurrences by testing every `k`-subset of positions against
/// the definition. Slow; kept as the reference for the pruned matcher.
pub fn count_occurrences_exhaustive(
    host: &ColouredPermutation,
    pattern: &ColouredPermutation,
) -> Result<BigCount> {
    check_ranks(host, pattern)?;
    let (n, k) = (host.len(), pattern.len());
    if k > n {
        return Ok(BigCount::zero());
    }
    let mut idx: Vec<usize> = (1..=k).collect();
    let mut total = 0u64;
    loop {
        if occurrence_holds(host, pattern, &idx) {
            total += 1;
        }
        // Advance to the next k-subset in lexicographic order.
        let Some(pos) = (0..k).rev().find(|&j| idx[j] < n - (k - 1 - j)) else {
            break;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    Ok(BigCount::from(total))
}

pub fn contains(host: &ColouredPermutation, pattern: &ColouredPermutation) -> Result<bool> {
    check_ranks(host, pattern)?;
    Ok(embeddings(host, pattern, 1) > 0)
}

pub fn avoids(host: &ColouredPermutation, pattern: &ColouredPermutation) -> Result<bool> {
    contains(host, pattern).map(|c| !c)
}

/// True when `host` contains no pattern of `set`.
pub fn avoids_all(host: &ColouredPermutation, set: &PatternSet) -> Result<bool> {
    if host.rank() != set.rank() {
        return Err(Error::RankMismatch { expected: set.rank(), found: host.rank() });
    }
    for p in set.iter() {
        if contains(host, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Occurrence positions, in lexicographic order.
pub fn occurrences(host: &ColouredPermutation, pattern: &ColouredPermutation) -> Result<Vec<Occurrence>> {
    check_ranks(host, pattern)?;
    let (n, k) = (host.len(), pattern.len());
    let mut out = Vec::new();
    if k > n {
        return Ok(out);
    }
    let mut idx: Vec<usize> = (1..=k).collect();
    loop {
        if occurrence_holds(host, pattern, &idx) {
            out.push(Occurrence::new(idx.clone())?);
        }
        let Some(pos) = (0..k).rev().find(|&j| idx[j] < n - (k - 1 - j)) else {
            break;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    Ok(out)
}

/// Uncoloured classical containment on plain permutations (0-based or
/// 1-based alike); used to cross-check the `r = 1` case.
pub fn classical_contains(host: &[u32], pattern: &[u32]) -> bool {
    let colours_h = vec![1; host.len()];
    let colours_p = vec![1; pattern.len()];
    let compiled = CompiledPattern { symbols: pattern.to_vec(), colours: colours_p };
    let mut scratch = Vec::new();
    Matcher::count(host, &colours_h, &compiled, None, 1, &mut scratch) > 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_perm;

    fn p(s: &str) -> ColouredPermutation {
        parse_perm(s, Some(2)).unwrap()
    }

    #[test]
    fn colour_mismatch_is_not_an_occurrence() {
        let host = p("1^1,2^2,3^2");
        let occ = Occurrence::new(vec![1, 2]).unwrap();
        assert!(!is_occurrence(&host, &p("1^1,2^1"), &occ).unwrap());
        assert!(is_occurrence(&host, &p("1^1,2^2"), &occ).unwrap());
    }

    #[test]
    fn identity_embedding() {
        let host = p("2^1,3^2,1^2");
        let occ = Occurrence::new(vec![1, 2, 3]).unwrap();
        assert!(is_occurrence(&host, &host, &occ).unwrap());
        assert!(contains(&host, &host).unwrap());
    }

    #[test]
    fn counting_examples() {
        let host = p("1^1,2^2,3^2");
        assert_eq!(count_occurrences(&host, &p("1^1,2^2")).unwrap(), BigCount::from(2u32));
        assert_eq!(count_occurrences(&host, &p("1^1,2^1")).unwrap(), BigCount::zero());
        assert!(avoids(&host, &p("1^1,2^1")).unwrap());
        let occs = occurrences(&host, &p("1^1,2^2")).unwrap();
        assert_eq!(occs[0].indices(), [1, 2]);
        assert_eq!(occs[1].indices(), [1, 3]);
    }

    #[test]
    fn longer_pattern_never_occurs() {
        let host = p("1^1");
        let pat = p("1^1,2^1");
        assert_eq!(count_occurrences(&host, &pat).unwrap(), BigCount::zero());
        assert!(avoids(&host, &pat).unwrap());
    }

    #[test]
    fn error_paths() {
        let host = p("1^1,2^2,3^2");
        let pat = p("1^1,2^2");
        let r1 = parse_perm("1^1", Some(1)).unwrap();
        assert!(matches!(count_occurrences(&host, &r1), Err(Error::RankMismatch { .. })));
        assert!(matches!(
            is_occurrence(&host, &pat, &Occurrence::new(vec![1]).unwrap()),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            is_occurrence(&host, &pat, &Occurrence::new(vec![1, 4]).unwrap()),
            Err(Error::IndexOutOfRange { index: 4, .. })
        ));
    }

    #[test]
    fn empty_pattern_occurs_once() {
        let host = p("1^1,2^2");
        let empty = ColouredPermutation::empty(2).unwrap();
        assert_eq!(count_occurrences(&host, &empty).unwrap(), BigCount::one());
        assert_eq!(count_occurrences_exhaustive(&host, &empty).unwrap(), BigCount::one());
    }

    #[test]
    fn fixed_last_only_counts_occurrences_ending_there() {
        let host = p("1^1,2^2,3^2");
        let hs = host.absolute_value();
        let hc = host.colours();
        let pat = CompiledPattern::new(&p("1^1,2^2"));
        let mut scratch = Vec::new();
        assert_eq!(Matcher::count(&hs, &hc, &pat, Some(0), 9, &mut scratch), 0);
        assert_eq!(Matcher::count(&hs, &hc, &pat, Some(1), 9, &mut scratch), 1);
        assert_eq!(Matcher::count(&hs, &hc, &pat, Some(2), 9, &mut scratch), 1);
        // Positions past the fixed end are ignored.
        assert_eq!(Matcher::count(&hs[..2], &hc[..2], &pat, None, 9, &mut scratch), 1);
    }
}
