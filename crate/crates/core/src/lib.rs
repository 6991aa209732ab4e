#![no_std]

//! Coloured permutations (elements of `S_n ≀ C_r`), coloured pattern
//! containment, the `T(k, r, m, I)` pattern families and exact counting of
//! the permutations that avoid them.
//!
//! Everything here is pure and allocation-only. IO, threads and the CLI live
//! in the `colperm` crate.

extern crate alloc;

pub mod bijections;
pub mod count;
pub mod enumerate;
mod error;
pub mod formulas;
pub mod matching;
pub mod pattern_set;
pub mod perm;

pub use count::BigCount;
pub use enumerate::{
    count_avoiders, count_exactly_once, enumerate_all, list_avoiders, CountReport,
    EnumerationBudget, Search,
};
pub use error::{Error, Result};
pub use formulas::FamilyParams;
pub use matching::{avoids, contains, count_occurrences, is_occurrence};
pub use pattern_set::{build_m, build_t, build_t_union, complement_pattern, ColourSet, PatternSet};
pub use perm::{format_perm, parse_perm, Colour, ColouredPermutation, Element, Occurrence};
