//! Closed forms against exhaustive counts, plus the symmetric-group and
//! hyperoctahedral specializations.

use colperm_core::enumerate::{enumerate_all, Search};
use colperm_core::formulas::{
    cor_full_union_count, cor_union_count, factor_h, thm1_count, thm2_count, thm2_recurrence_check, thm3_count,
};
use colperm_core::{
    build_t, build_t_union, complement_pattern, count_avoiders, count_exactly_once, list_avoiders, BigCount,
    ColourSet, FamilyParams, PatternSet,
};
use proptest::prelude::*;

fn big(v: u128) -> BigCount {
    BigCount::from_decimal(&v.to_string()).unwrap()
}

fn fact(n: u32) -> u128 {
    (1..=u128::from(n)).product()
}

fn max_n(r: u32) -> u32 {
    match r {
        1 => 5,
        2 => 4,
        _ => 3,
    }
}

#[test]
fn thm1_matches_search_for_every_m_and_colour_set() {
    for k in 1..=3 {
        for r in 1..=3 {
            for colours in ColourSet::all_subsets(r) {
                let p = FamilyParams::for_colours(k, &colours).unwrap();
                for n in 0..=max_n(r) {
                    let formula = thm1_count(n, &p);
                    for m in 1..=k {
                        let t = build_t(k, r, m, &colours).unwrap();
                        let got = count_avoiders(n, r, &t).unwrap().count;
                        assert_eq!(got, formula, "n={n} k={k} r={r} m={m} I={colours}");
                    }
                }
            }
        }
    }
}

#[test]
fn pruned_search_matches_naive_filter() {
    for k in 1..=3 {
        for r in 1..=2 {
            for colours in ColourSet::all_subsets(r) {
                for m in 1..=k {
                    let t = build_t(k, r, m, &colours).unwrap();
                    let s = Search::avoiders(4, r, &t).unwrap();
                    assert_eq!(s.count().unwrap().count, s.count_naive().unwrap().count);
                }
            }
        }
    }
}

#[test]
fn length_one_patterns_forbid_colours() {
    for r in 1..=3 {
        for colours in ColourSet::all_subsets(r) {
            let t = build_t(1, r, 1, &colours).unwrap();
            let p = FamilyParams::for_colours(1, &colours).unwrap();
            for n in 0..=4 {
                let direct = enumerate_all(n, r).filter(|q| q.elements().iter().all(|e| !colours.contains(e.colour))).count();
                assert_eq!(count_avoiders(n, r, &t).unwrap().count, BigCount::from(direct));
                assert_eq!(thm1_count(n, &p), BigCount::from(direct));
            }
        }
    }
}

#[test]
fn symmetric_group_specialization() {
    for k in 1..=5u32 {
        let p = FamilyParams::new(k, 1, 1).unwrap();
        for n in k..=12 {
            let expected = fact(k - 1) * u128::from(k - 1).pow(n - k + 1);
            assert_eq!(thm1_count(n, &p), big(expected));
        }
    }
    // Two-pattern class {123, 132}: 2^(n-1).
    let p = FamilyParams::new(3, 1, 1).unwrap();
    for n in 3..=8 {
        assert_eq!(thm1_count(n, &p), big(1 << (n - 1)));
    }
}

#[test]
fn hyperoctahedral_specialization() {
    for k in 1..=5u32 {
        let p = FamilyParams::new(k, 2, 1).unwrap();
        let odd: u128 = (1..k).map(|i| u128::from(2 * i - 1)).product();
        for n in k..=14 {
            assert_eq!(thm1_count(n, &p), big(fact(n + k - 1) / odd));
        }
    }
}

#[test]
fn two_letter_single_colour_specialization() {
    for r in 1..=5u32 {
        let p = FamilyParams::new(2, r, 1).unwrap();
        for n in 2..=12 {
            let expected: u128 = (0..=u128::from(n)).map(|j| 1 + j * u128::from(r - 1)).product();
            assert_eq!(thm1_count(n, &p), big(expected));
        }
    }
}

#[test]
fn union_matches_search() {
    for k in 2..=3 {
        for r in 1..=2 {
            for d in 1..=r {
                let colours = ColourSet::first(d, r).unwrap();
                let p = FamilyParams::for_colours(k, &colours).unwrap();
                for a in 1..=k {
                    for b in a..=k {
                        let t = build_t_union(k, r, a, b, &colours).unwrap();
                        for n in 0..=max_n(r) {
                            let got = count_avoiders(n, r, &t).unwrap().count;
                            assert_eq!(got, cor_union_count(n, a, b, &p).unwrap(), "n={n} k={k} r={r} d={d} a={a} b={b}");
                        }
                    }
                }
                for n in k..=8 {
                    assert_eq!(cor_full_union_count(n, &p).unwrap(), cor_union_count(n, 1, k, &p).unwrap());
                }
            }
        }
    }
}

#[test]
fn full_union_pair_example_holds_for_two_letter_patterns_only() {
    // T^1 ∪ T^2 at r = 2, d = 1 gives 2^(k-1) n! when k = 2.
    let p = FamilyParams::new(2, 2, 1).unwrap();
    for n in 2..=10 {
        assert_eq!(cor_union_count(n, 1, 2, &p).unwrap(), big(2 * fact(n)));
    }
    let p = FamilyParams::new(3, 2, 1).unwrap();
    assert_ne!(cor_union_count(4, 1, 2, &p).unwrap(), big(4 * fact(4)));
}

#[test]
fn exactly_once_matches_thm2_for_first_and_last_families() {
    for k in 2..=3 {
        for r in 1..=2 {
            for d in 1..=r {
                let colours = ColourSet::first(d, r).unwrap();
                let p = FamilyParams::for_colours(k, &colours).unwrap();
                for m in [1, k] {
                    let t = build_t(k, r, m, &colours).unwrap();
                    for n in 0..=max_n(r) {
                        let formula = thm2_count(n, &p).unwrap();
                        for phi in t.iter() {
                            let got = count_exactly_once(n, r, &t, phi).unwrap().count;
                            assert_eq!(got, formula, "n={n} k={k} r={r} d={d} m={m} phi={phi}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn exactly_once_matches_thm3_for_middle_families() {
    for (k, r, nmax) in [(3, 1, 5), (3, 2, 4), (4, 1, 5)] {
        for d in 1..=r {
            let colours = ColourSet::first(d, r).unwrap();
            for m in 2..k {
                let p = FamilyParams::for_colours(k, &colours).unwrap().with_m(m).unwrap();
                let t = build_t(k, r, m, &colours).unwrap();
                for n in k..=nmax {
                    let formula = thm3_count(n, &p).unwrap();
                    for phi in t.iter() {
                        assert_eq!(count_exactly_once(n, r, &t, phi).unwrap().count, formula, "n={n} k={k} m={m} {phi}");
                    }
                }
            }
        }
    }
}

#[test]
fn thm2_hyperoctahedral_form() {
    // r = 2, d = 1: ∏ h_j = (n+k-1)!/(2k-2)! and the reciprocals run over
    // 2k-1 ..= n+k-1. For k = 2 the prefactor is (n+1)!/(2k-2)!.
    for k in 2..=4u32 {
        let p = FamilyParams::new(k, 2, 1).unwrap();
        for n in k..=12 {
            let terms: Vec<u128> = (2 * k - 1..=n + k - 1).map(u128::from).collect();
            let prod: u128 = terms.iter().product();
            let sum_scaled: u128 = terms.iter().map(|j| prod / j).sum();
            // thm2 = (n+k-1)!/(2k-2)! * sum_scaled / prod
            let value = fact(n + k - 1) / fact(2 * k - 2) * sum_scaled / prod;
            assert_eq!(thm2_count(n, &p).unwrap(), big(value));
            if k == 2 {
                assert_eq!(fact(n + k - 1), fact(n + 1));
            }
        }
    }
}

#[test]
fn thm3_hyperoctahedral_form() {
    for k in 3..=5u32 {
        for m in 2..k {
            let p = FamilyParams::new(k, 2, 1).unwrap().with_m(m).unwrap();
            for n in k..=12 {
                assert_eq!(thm3_count(n, &p).unwrap(), big(fact(n + k - 1) / fact(2 * k - 1)));
            }
        }
    }
}

#[test]
fn colour_subsets_of_equal_size_give_equal_counts() {
    let r = 3;
    for k in 1..=3 {
        for d in 1..=2 {
            let sets: Vec<_> = ColourSet::all_subsets(r).into_iter().filter(|s| s.d() == d).collect();
            for n in 0..=3 {
                let counts: Vec<_> = sets
                    .iter()
                    .map(|s| count_avoiders(n, r, &build_t(k, r, 1, s).unwrap()).unwrap().count)
                    .collect();
                assert!(counts.windows(2).all(|w| w[0] == w[1]));
            }
        }
    }
}

#[test]
fn complement_transports_avoiders() {
    for (k, r, n) in [(2, 2, 4), (3, 1, 5), (3, 2, 4)] {
        for colours in ColourSet::all_subsets(r) {
            let first = build_t(k, r, 1, &colours).unwrap();
            let last = build_t(k, r, k, &colours).unwrap();
            let image = PatternSet::new(
                list_avoiders(n, r, &first).unwrap().iter().map(complement_pattern).collect(),
                r,
                "image",
            )
            .unwrap();
            let target = list_avoiders(n, r, &last).unwrap();
            assert_eq!(image.patterns(), target.as_slice());
        }
    }
}

#[test]
fn exactly_once_bounded_by_punctured_avoiders() {
    let colours = ColourSet::first(1, 2).unwrap();
    let t = build_t(3, 2, 1, &colours).unwrap();
    for phi in t.iter() {
        let rest = t.without(phi, "M");
        for n in 0..=4 {
            assert!(count_exactly_once(n, 2, &t, phi).unwrap().count <= count_avoiders(n, 2, &rest).unwrap().count);
        }
    }
}

proptest! {
    #[test]
    fn thm2_satisfies_recurrence(k in 1u32..6, r in 1u32..5, d_frac in 0u32..100, extra in 1u32..15) {
        let d = 1 + d_frac % r;
        let p = FamilyParams::new(k, r, d).unwrap();
        prop_assert!(thm2_recurrence_check(k + extra, &p).unwrap());
    }

    #[test]
    fn thm1_recurrence(k in 1u32..6, r in 1u32..5, d_raw in 0u32..100, n in 0u32..20) {
        let d = d_raw % (r + 1);
        let p = FamilyParams::new(k, r, d).unwrap();
        let here = thm1_count(n.max(k), &p);
        let next = thm1_count(n.max(k) + 1, &p);
        prop_assert_eq!(next, here * factor_h(n.max(k) + 1, &p));
    }
}
