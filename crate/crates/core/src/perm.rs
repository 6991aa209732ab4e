//! Coloured permutations and their `s^c` text encoding.
//!
//! Symbols, positions and colours are all 1-based. A permutation carries its
//! rank `r` (number of available colours) so that cross-rank comparisons can
//! be rejected instead of silently promoted.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// A colour label in `1..=r`. The rank is carried by the surrounding context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Colour(u32);

impl Colour {
    pub fn new(value: u32) -> Result<Self> {
        if value == 0 {
            return Err(Error::ColourOutOfRange { colour: 0, rank: 0 });
        }
        Ok(Colour(value))
    }

    /// Builds a colour and checks it against the rank `r`.
    pub fn with_rank(value: u32, rank: u32) -> Result<Self> {
        if value == 0 || value > rank {
            return Err(Error::ColourOutOfRange { colour: value, rank });
        }
        Ok(Colour(value))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub(crate) fn check(self, rank: u32) -> Result<()> {
        if self.0 > rank {
            Err(Error::ColourOutOfRange { colour: self.0, rank })
        } else {
            Ok(())
        }
    }

    /// All colours `1..=rank`, ascending.
    pub fn all(rank: u32) -> impl Iterator<Item = Colour> {
        (1..=rank).map(Colour)
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One entry `s^(c)` of a coloured permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    pub symbol: u32,
    pub colour: Colour,
}

impl Element {
    pub fn new(symbol: u32, colour: Colour) -> Self {
        Element { symbol, colour }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.symbol, self.colour)
    }
}

/// An element of `S_n^(r)`: each of the symbols `1..=n` once, each coloured
/// by one of `1..=r`.
///
/// Ordering is lexicographic on the `(symbol, colour)` token list, which is
/// also the order in which [`crate::enumerate_all`] produces elements.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColouredPermutation {
    elements: Vec<Element>,
    rank: u32,
}

impl ColouredPermutation {
    /// Validates that the symbols are exactly `1..=n` and all colours are
    /// within `1..=rank`.
    pub fn new(elements: Vec<Element>, rank: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidRank(rank));
        }
        let n = elements.len();
        let mut seen = vec![false; n];
        for e in &elements {
            e.colour.check(rank)?;
            let s = e.symbol as usize;
            if s == 0 || s > n {
                // A symbol outside 1..=n forces some symbol in range to be absent.
                let missing = (1..=n as u32)
                    .find(|m| !elements.iter().any(|x| x.symbol == *m))
                    .unwrap_or(e.symbol);
                return Err(Error::MissingSymbol(missing));
            }
            if seen[s - 1] {
                return Err(Error::DuplicateSymbol(e.symbol));
            }
            seen[s - 1] = true;
        }
        Ok(ColouredPermutation { elements, rank })
    }

    /// Builds from parallel symbol and colour slices.
    pub fn from_parts(symbols: &[u32], colours: &[u32], rank: u32) -> Result<Self> {
        if symbols.len() != colours.len() {
            return Err(Error::LengthMismatch { expected: symbols.len(), found: colours.len() });
        }
        let elements = symbols
            .iter()
            .zip(colours)
            .map(|(&s, &c)| Ok(Element::new(s, Colour::new(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(elements, rank)
    }

    /// An uncoloured permutation viewed as an element of `S_n^(1)`.
    pub fn uncoloured(symbols: &[u32]) -> Result<Self> {
        let colours = vec![1; symbols.len()];
        Self::from_parts(symbols, &colours, 1)
    }

    pub fn empty(rank: u32) -> Result<Self> {
        Self::new(Vec::new(), rank)
    }

    /// Caller guarantees the invariants.
    pub(crate) fn from_raw(elements: Vec<Element>, rank: u32) -> Self {
        debug_assert!(Self::new(elements.clone(), rank).is_ok());
        ColouredPermutation { elements, rank }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    /// Element at 1-based position `i`.
    pub fn at(&self, i: usize) -> Option<Element> {
        i.checked_sub(1).and_then(|i| self.elements.get(i).copied())
    }

    pub fn first(&self) -> Option<Element> {
        self.elements.first().copied()
    }

    /// `|φ|`: the symbol sequence with colours stripped.
    pub fn absolute_value(&self) -> Vec<u32> {
        self.elements.iter().map(|e| e.symbol).collect()
    }

    pub fn colours(&self) -> Vec<u32> {
        self.elements.iter().map(|e| e.colour.get()).collect()
    }

    /// Same elements viewed at a larger or equal rank.
    pub fn with_rank(&self, rank: u32) -> Result<Self> {
        Self::new(self.elements.clone(), rank)
    }

    pub fn into_elements(self) -> Vec<Element> {
        self.elements
    }
}

impl fmt::Display for ColouredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Parses `"1^1,3^2,2^1"`. When `rank` is `None` it is inferred as the largest
/// colour present (1 for the empty permutation).
pub fn parse_perm(text: &str, rank: Option<u32>) -> Result<ColouredPermutation> {
    let text = text.trim();
    let mut elements = Vec::new();
    if !text.is_empty() {
        for token in text.split(',') {
            elements.push(parse_token(token.trim())?);
        }
    }
    let rank = match rank {
        Some(r) => r,
        None => elements.iter().map(|e| e.colour.get()).max().unwrap_or(1),
    };
    ColouredPermutation::new(elements, rank)
}

fn parse_token(token: &str) -> Result<Element> {
    let bad = || Error::MalformedToken(token.to_string());
    let (s, c) = token.split_once('^').ok_or_else(bad)?;
    let s: u32 = parse_positive(s.trim()).ok_or_else(bad)?;
    let c: u32 = parse_positive(c.trim()).ok_or_else(bad)?;
    Ok(Element::new(s, Colour(c)))
}

fn parse_positive(s: &str) -> Option<u32> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok().filter(|v| *v > 0)
}

/// Canonical `s^c` encoding; inverse of [`parse_perm`].
pub fn format_perm(perm: &ColouredPermutation) -> String {
    perm.to_string()
}

impl FromStr for ColouredPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_perm(s, None)
    }
}

/// A strictly increasing sequence of 1-based positions into a host.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Occurrence(Vec<usize>);

impl Occurrence {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.first() == Some(&0) {
            return Err(Error::IndexOutOfRange { index: 0, len: 0 });
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::IndicesNotIncreasing);
        }
        Ok(Occurrence(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Occurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| format!("{i}")).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_colour_example() {
        let p = parse_perm("1^1,3^2,2^1", Some(2)).unwrap();
        assert_eq!(p.absolute_value(), [1, 3, 2]);
        assert_eq!(p.colours(), [1, 2, 1]);
        assert_eq!(p.rank(), 2);
        assert_eq!(format_perm(&p), "1^1,3^2,2^1");
    }

    #[test]
    fn singleton_and_empty() {
        let p = parse_perm("1^1", Some(1)).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(format_perm(&p), "1^1");
        let e = parse_perm("", Some(3)).unwrap();
        assert!(e.is_empty());
        assert_eq!(format_perm(&e), "");
    }

    #[test]
    fn rank_inferred_from_max_colour() {
        let p: ColouredPermutation = "2^3, 1^1".parse().unwrap();
        assert_eq!(p.rank(), 3);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(parse_perm("1^1,1^2", None), Err(Error::DuplicateSymbol(1)));
        assert_eq!(parse_perm("1^1,3^1", None), Err(Error::MissingSymbol(2)));
        assert_eq!(
            parse_perm("1^3", Some(2)),
            Err(Error::ColourOutOfRange { colour: 3, rank: 2 })
        );
        for bad in ["1", "1^", "^1", "a^1", "1^0", "0^1", "1^1,,2^1", "-1^1", "1^+2"] {
            assert!(
                matches!(parse_perm(bad, None), Err(Error::MalformedToken(_))),
                "{bad} should be malformed"
            );
        }
        assert_eq!(parse_perm("1^1", Some(0)), Err(Error::InvalidRank(0)));
    }

    #[test]
    fn occurrence_must_increase() {
        assert!(Occurrence::new(vec![1, 2, 5]).is_ok());
        assert_eq!(Occurrence::new(vec![2, 2]), Err(Error::IndicesNotIncreasing));
        assert!(Occurrence::new(vec![0, 1]).is_err());
    }

    #[test]
    fn ordering_is_token_lexicographic() {
        let a = parse_perm("1^2,2^1", Some(2)).unwrap();
        let b = parse_perm("2^1,1^1", Some(2)).unwrap();
        let c = parse_perm("1^1,2^2", Some(2)).unwrap();
        assert!(c < a && a < b);
    }
}
