//! The exhaustive bijection checks behind `colperm check bijections`.

use colperm_core::bijections::{
    admissible_prefix_insertions, complement_perm, delete_symbol_one, insert_prefix, insert_symbol_one,
    predicted_prefix_insertions, symbol_one_closure,
};
use colperm_core::enumerate::enumerate_all;
use colperm_core::formulas::factor_h;
use colperm_core::{
    build_t, complement_pattern, count_occurrences, list_avoiders, BigCount, Colour, ColourSet, FamilyParams,
    PatternSet,
};
use serde::Serialize;

use crate::error::CliError;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult { name: name.into(), passed, detail: detail.into() }
}

/// Insert-then-delete of symbol 1 over every position and colour of
/// `S_n^(r)`, for all `n <= max_n`.
pub fn symbol_one_round_trip(max_n: u32, r: u32) -> Result<CheckResult, CliError> {
    let mut tried = 0u64;
    let mut failures = 0u64;
    for n in 0..=max_n {
        for beta in enumerate_all(n, r) {
            for pos in 1..=n + 1 {
                for c in Colour::all(r) {
                    tried += 1;
                    let up = insert_symbol_one(&beta, pos, c)?;
                    if delete_symbol_one(&up)? != (beta.clone(), pos, c) {
                        failures += 1;
                    }
                }
            }
        }
    }
    Ok(check(
        format!("symbol-1 insert/delete round trip, r={r}, n<={max_n}"),
        failures == 0,
        format!("{tried} insertions, {failures} failures"),
    ))
}

/// Dropping the first entry of `insert_prefix(φ, h, c)` and standardizing
/// gives back `φ`.
pub fn prefix_round_trip(max_n: u32, r: u32) -> Result<CheckResult, CliError> {
    let mut tried = 0u64;
    let mut failures = 0u64;
    for n in 0..=max_n {
        for phi in enumerate_all(n, r) {
            for h in 1..=n + 1 {
                for c in Colour::all(r) {
                    tried += 1;
                    let up = insert_prefix(&phi, h, c)?;
                    let first = up.first().expect("nonempty");
                    let back: Vec<_> = up.elements()[1..]
                        .iter()
                        .map(|e| {
                            let s = if e.symbol > h { e.symbol - 1 } else { e.symbol };
                            colperm_core::Element::new(s, e.colour)
                        })
                        .collect();
                    let ok = first.symbol == h
                        && first.colour == c
                        && colperm_core::ColouredPermutation::new(back, r)? == phi;
                    failures += u64::from(!ok);
                }
            }
        }
    }
    Ok(check(
        format!("prefix insertion inverse, r={r}, n<={max_n}"),
        failures == 0,
        format!("{tried} insertions, {failures} failures"),
    ))
}

pub fn complement_involution(n: u32, r: u32) -> CheckResult {
    let total = enumerate_all(n, r).count();
    let bad = enumerate_all(n, r).filter(|p| complement_perm(&complement_perm(p)) != *p).count();
    check(format!("complement involution on S_{n}^({r})"), bad == 0, format!("{total} elements, {bad} failures"))
}

/// `count_occurrences(ψ, φ) = count_occurrences(ψ', φ')` under simultaneous
/// complement, over all hosts in `S_n^(r)` and patterns in `S_k^(r)`.
pub fn complement_transports_occurrences(n: u32, r: u32, k: u32) -> Result<CheckResult, CliError> {
    let patterns: Vec<_> = enumerate_all(k, r).collect();
    let mut pairs = 0u64;
    let mut bad = 0u64;
    for host in enumerate_all(n, r) {
        let ch = complement_perm(&host);
        for p in &patterns {
            pairs += 1;
            if count_occurrences(&host, p)? != count_occurrences(&ch, &complement_pattern(p))? {
                bad += 1;
            }
        }
    }
    Ok(check(
        format!("complement preserves occurrence counts, n={n} r={r} k={k}"),
        bad == 0,
        format!("{pairs} pairs, {bad} failures"),
    ))
}

/// For every avoider of `T(k, r, m, I)` at length `n`, the prefix insertions
/// that keep it an avoider are exactly the predicted ones, and there are
/// `(k-1) d + (r-d)(n+1)` of them.
pub fn prefix_insertion_closure(k: u32, r: u32, d: u32, n: u32) -> Result<Vec<CheckResult>, CliError> {
    let colours = ColourSet::first(d, r)?;
    let expected_count = (k - 1) * d + (r - d) * (n + 1);
    let mut out = Vec::new();
    for m in 1..=k {
        let t = build_t(k, r, m, &colours)?;
        let predicted = predicted_prefix_insertions(n, k, m, &colours);
        let avoiders = list_avoiders(n, r, &t)?;
        let mut bad = 0usize;
        for psi in &avoiders {
            if admissible_prefix_insertions(psi, &t)? != predicted {
                bad += 1;
            }
        }
        let passed = bad == 0 && predicted.len() as u32 == expected_count;
        out.push(check(
            format!("admissible prefix insertions, k={k} r={r} d={d} n={n} m={m}"),
            passed,
            format!(
                "{} avoiders, {} admissible (h,c) each, expected {expected_count}, {bad} mismatching avoiders",
                avoiders.len(),
                predicted.len()
            ),
        ));
    }
    Ok(out)
}

/// `|A_{n+1}| = h_n |A_n|` for the first-symbol classes, with the symbol-1
/// insertions biject onto `A_{n+1}` and deletion landing back in `A_n`.
pub fn symbol_one_class_growth(k: u32, r: u32, d: u32, n: u32) -> Result<Vec<CheckResult>, CliError> {
    let colours = ColourSet::first(d, r)?;
    let params = FamilyParams::for_colours(k, &colours)?;
    let t = build_t(k, r, 1, &colours)?;
    let mut out = Vec::new();
    for phi in t.iter() {
        let cl = symbol_one_closure(n, k, &colours, phi)?;
        let expected = factor_h(n, &params) * BigCount::from(cl.class_size);
        let passed = BigCount::from(cl.next_class_size) == expected
            && cl.insertions_biject
            && cl.deletion_closed
            && cl.round_trip;
        out.push(check(
            format!("symbol-1 class growth, k={k} r={r} d={d} n={n} phi={phi}"),
            passed,
            format!(
                "|A_n|={} |A_n+1|={} expected {} bijective={} closed={}",
                cl.class_size, cl.next_class_size, expected, cl.insertions_biject, cl.deletion_closed
            ),
        ));
    }
    Ok(out)
}

/// Complement maps the avoiders of `T(k, r, 1, I)` onto those of
/// `T(k, r, k, I)`, for every `I`.
pub fn complement_transports_avoiders(k: u32, r: u32, n: u32) -> Result<CheckResult, CliError> {
    let mut bad = 0;
    let mut sets = 0;
    for colours in ColourSet::all_subsets(r) {
        sets += 1;
        let first = build_t(k, r, 1, &colours)?;
        let last = build_t(k, r, k, &colours)?;
        let image = PatternSet::new(list_avoiders(n, r, &first)?.iter().map(complement_perm).collect(), r, "")?;
        if image.patterns() != list_avoiders(n, r, &last)?.as_slice() {
            bad += 1;
        }
    }
    Ok(check(
        format!("complement maps avoiders of T^1 onto T^k, k={k} r={r} n={n}"),
        bad == 0,
        format!("{sets} colour sets, {bad} failures"),
    ))
}

/// Everything `check bijections` runs.
pub fn bijection_suite() -> Result<Vec<CheckResult>, CliError> {
    let mut out = vec![
        symbol_one_round_trip(4, 2)?,
        symbol_one_round_trip(5, 1)?,
        prefix_round_trip(4, 2)?,
        prefix_round_trip(5, 1)?,
        complement_involution(3, 2),
        complement_involution(4, 2),
        complement_transports_occurrences(4, 2, 2)?,
    ];
    out.extend(prefix_insertion_closure(2, 2, 1, 3)?);
    out.extend(prefix_insertion_closure(3, 1, 1, 4)?);
    out.extend(symbol_one_class_growth(2, 2, 1, 3)?);
    out.extend(symbol_one_class_growth(2, 2, 1, 4)?);
    for (k, r, n) in [(2, 2, 4), (3, 1, 5), (3, 2, 4)] {
        out.push(complement_transports_avoiders(k, r, n)?);
    }
    Ok(out)
}
