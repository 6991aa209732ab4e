//! Insertion, deletion and complement maps on coloured permutations, and the
//! closure properties they satisfy on avoidance classes.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::enumerate::Search;
use crate::error::{Error, Result};
use crate::matching::avoids_all;
use crate::pattern_set::{build_t, ColourSet, PatternSet};
use crate::perm::{Colour, ColouredPermutation, Element};

/// An insertion `(h, c)`: `h` is the inserted symbol value for
/// [`insert_prefix`] and the insertion position for [`insert_symbol_one`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InsertionSpec {
    pub h: u32,
    pub colour: Colour,
}

impl InsertionSpec {
    pub fn new(h: u32, colour: Colour) -> Self {
        InsertionSpec { h, colour }
    }
}

fn check_slot(h: u32, len: usize, what: &str) -> Result<()> {
    if h == 0 || h as usize > len + 1 {
        return Err(Error::InvalidParameter(format!("{what} {h} must lie in 1..={}", len + 1)));
    }
    Ok(())
}

/// Puts `h^(c)` in front and shifts every existing symbol `>= h` up by one,
/// colours unchanged. Maps `S_n^(r)` into `S_{n+1}^(r)`.
pub fn insert_prefix(perm: &ColouredPermutation, h: u32, colour: Colour) -> Result<ColouredPermutation> {
    check_slot(h, perm.len(), "inserted symbol")?;
    colour.check(perm.rank())?;
    let mut elements = Vec::with_capacity(perm.len() + 1);
    elements.push(Element::new(h, colour));
    elements.extend(perm.elements().iter().map(|e| {
        let s = if e.symbol >= h { e.symbol + 1 } else { e.symbol };
        Element::new(s, e.colour)
    }));
    Ok(ColouredPermutation::from_raw(elements, perm.rank()))
}

/// Inserts a new smallest symbol `1^(c)` at 1-based `position`, shifting every
/// existing symbol up by one; colours travel with their symbols.
pub fn insert_symbol_one(
    perm: &ColouredPermutation,
    position: u32,
    colour: Colour,
) -> Result<ColouredPermutation> {
    check_slot(position, perm.len(), "position")?;
    colour.check(perm.rank())?;
    let mut elements: Vec<Element> =
        perm.elements().iter().map(|e| Element::new(e.symbol + 1, e.colour)).collect();
    elements.insert(position as usize - 1, Element::new(1, colour));
    Ok(ColouredPermutation::from_raw(elements, perm.rank()))
}

/// Left inverse of [`insert_symbol_one`]: removes symbol 1, shifts the rest
/// down, and reports where symbol 1 was and what colour it had.
pub fn delete_symbol_one(perm: &ColouredPermutation) -> Result<(ColouredPermutation, u32, Colour)> {
    let position = perm
        .elements()
        .iter()
        .position(|e| e.symbol == 1)
        .ok_or(Error::EmptyPermutation)?;
    let colour = perm.elements()[position].colour;
    let elements = perm
        .elements()
        .iter()
        .filter(|e| e.symbol != 1)
        .map(|e| Element::new(e.symbol - 1, e.colour))
        .collect();
    Ok((ColouredPermutation::from_raw(elements, perm.rank()), position as u32 + 1, colour))
}

/// Replaces each symbol `s` by `n + 1 - s`, keeping colours. An involution.
pub fn complement_perm(perm: &ColouredPermutation) -> ColouredPermutation {
    crate::pattern_set::complement_pattern(perm)
}

/// Every `(h, c)` for which `insert_prefix(perm, h, c)` still avoids `set`,
/// found by trying all of them.
pub fn admissible_prefix_insertions(perm: &ColouredPermutation, set: &PatternSet) -> Result<Vec<InsertionSpec>> {
    let mut out = Vec::new();
    for h in 1..=perm.len() as u32 + 1 {
        for c in Colour::all(perm.rank()) {
            if avoids_all(&insert_prefix(perm, h, c)?, set)? {
                out.push(InsertionSpec::new(h, c));
            }
        }
    }
    Ok(out)
}

/// The insertions that keep an avoider of `T(k, r, m, I)` of length `n >= k`
/// an avoider: any `h` with a colour outside `I`, or a colour in `I` with
/// `h < m` or `h >= n + m - k + 2`. There are `(k-1) d + (r-d)(n+1)` of them.
pub fn predicted_prefix_insertions(n: u32, k: u32, m: u32, colours: &ColourSet) -> Vec<InsertionSpec> {
    let mut out = Vec::new();
    for h in 1..=n + 1 {
        for c in Colour::all(colours.rank()) {
            let keep = !colours.contains(c) || h < m || h + k >= n + m + 2;
            if keep {
                out.push(InsertionSpec::new(h, c));
            }
        }
    }
    out
}

/// The class used for the exactly-once recursion: members of the
/// exactly-once set of `φ ∈ T(k, r, 1, I)` whose first entry is the symbol
/// `n - k + 1` in a colour of `I`.
pub fn first_symbol_class(
    n: u32,
    k: u32,
    colours: &ColourSet,
    pattern: &ColouredPermutation,
) -> Result<Vec<ColouredPermutation>> {
    let t = build_t(k, colours.rank(), 1, colours)?;
    let members = Search::exactly_once(n, colours.rank(), &t, pattern)?.list()?;
    if n < k {
        return Ok(Vec::new());
    }
    let lead = n - k + 1;
    Ok(members
        .into_iter()
        .filter(|p| p.first().is_some_and(|e| e.symbol == lead && colours.contains(e.colour)))
        .collect())
}

/// Outcome of checking the symbol-1 insertion/deletion maps between
/// consecutive first-symbol classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolOneClosure {
    pub n: u32,
    /// `|A_n|`.
    pub class_size: usize,
    /// `|A_{n+1}|`.
    pub next_class_size: usize,
    /// Number of `(β, position, colour)` with the insertion landing in `A_{n+1}`.
    pub admissible_insertions: usize,
    /// Admissible insertions hit every element of `A_{n+1}` exactly once.
    pub insertions_biject: bool,
    /// Deleting symbol 1 maps `A_{n+1}` into `A_n`.
    pub deletion_closed: bool,
    /// Inserting back what was deleted restores the permutation.
    pub round_trip: bool,
}

pub fn symbol_one_closure(
    n: u32,
    k: u32,
    colours: &ColourSet,
    pattern: &ColouredPermutation,
) -> Result<SymbolOneClosure> {
    let class: BTreeSet<ColouredPermutation> = first_symbol_class(n, k, colours, pattern)?.into_iter().collect();
    let next: BTreeSet<ColouredPermutation> =
        first_symbol_class(n + 1, k, colours, pattern)?.into_iter().collect();

    let mut images = Vec::new();
    for beta in &class {
        for position in 1..=n + 1 {
            for c in Colour::all(colours.rank()) {
                let img = insert_symbol_one(beta, position, c)?;
                if next.contains(&img) {
                    images.push(img);
                }
            }
        }
    }
    let admissible_insertions = images.len();
    let distinct: BTreeSet<_> = images.into_iter().collect();
    let insertions_biject = distinct.len() == admissible_insertions && distinct == next;

    let mut deletion_closed = true;
    let mut round_trip = true;
    for beta in &next {
        let (smaller, position, c) = delete_symbol_one(beta)?;
        deletion_closed &= class.contains(&smaller);
        round_trip &= insert_symbol_one(&smaller, position, c)? == *beta;
    }
    Ok(SymbolOneClosure {
        n,
        class_size: class.len(),
        next_class_size: next.len(),
        admissible_insertions,
        insertions_biject,
        deletion_closed,
        round_trip,
    })
}
