//! Closed-form counts for the `T(k, r, m, I)` families.
//!
//! Every product below is built from the linear factor
//! `h_j = (r - d) j + (k - 1) d`. All arithmetic is exact. Empty products are
//! 1 and empty sums are 0.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::pattern_set::ColourSet;

/// Family parameters: pattern length `k`, colour count `r`, `d = |I|` and the
/// first symbol `m` (only meaningful to the middle-`m` count).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyParams {
    pub k: u32,
    pub r: u32,
    pub d: u32,
    pub m: u32,
}

impl FamilyParams {
    /// Checks `k >= 1`, `r >= 1`, `d <= r`; `m` defaults to 1.
    pub fn new(k: u32, r: u32, d: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter(String::from("k must be at least 1")));
        }
        if r == 0 {
            return Err(Error::InvalidRank(r));
        }
        if d > r {
            return Err(Error::InvalidParameter(format!("d={d} exceeds r={r}")));
        }
        Ok(FamilyParams { k, r, d, m: 1 })
    }

    pub fn with_m(mut self, m: u32) -> Result<Self> {
        if m == 0 || m > self.k {
            return Err(Error::InvalidParameter(format!("m={m} must lie in 1..={}", self.k)));
        }
        self.m = m;
        Ok(self)
    }

    /// Parameters whose `d` is taken from an actual colour set.
    pub fn for_colours(k: u32, colours: &ColourSet) -> Result<Self> {
        Self::new(k, colours.rank(), colours.d())
    }
}

/// `h_j = (r - d) j + (k - 1) d`.
pub fn factor_h(j: u32, p: &FamilyParams) -> BigCount {
    BigCount::from(u64::from(p.r - p.d) * u64::from(j) + u64::from(p.k - 1) * u64::from(p.d))
}

fn h_product(from: u32, to: u32, p: &FamilyParams) -> BigCount {
    (from..=to).map(|j| factor_h(j, p)).product()
}

/// `(k-1)! r^(k-1)`: the number of ways to fill the last `k - 1` positions.
fn tail_factor(p: &FamilyParams) -> BigCount {
    BigCount::factorial(p.k - 1) * BigCount::pow(p.r, p.k - 1)
}

/// `|S_n^(r)(T(k, r, m, I))|`, independent of `m`.
///
/// For `n >= k` this is `(k-1)! r^(k-1) ∏_{j=k..n} h_j`; for `n < k` no
/// length-`k` pattern fits and the whole group `n! r^n` survives.
pub fn thm1_count(n: u32, p: &FamilyParams) -> BigCount {
    if n < p.k {
        return BigCount::group_order(n, p.r);
    }
    tail_factor(p) * h_product(p.k, n, p)
}

fn check_range(a: u32, b: u32, p: &FamilyParams) -> Result<()> {
    if a == 0 || a > b || b > p.k {
        return Err(Error::InvalidParameter(format!("need 1 <= a <= b <= k, got a={a}, b={b}, k={}", p.k)));
    }
    Ok(())
}

/// `|S_n^(r)(⋃_{m=a..b} T(k, r, m, I))|
///   = (k-1)! r^(k-1) ∏_{j=k..n} (d (k + a - b - 1) + j (r - d))` for `n >= k`,
/// and `n! r^n` below `k`.
pub fn cor_union_count(n: u32, a: u32, b: u32, p: &FamilyParams) -> Result<BigCount> {
    check_range(a, b, p)?;
    if n < p.k {
        return Ok(BigCount::group_order(n, p.r));
    }
    let fixed = u64::from(p.d) * u64::from(p.k + a - b - 1);
    let product = (p.k..=n)
        .map(|j| BigCount::from(fixed + u64::from(j) * u64::from(p.r - p.d)))
        .product::<BigCount>();
    Ok(tail_factor(p) * product)
}

/// Full union over `m = 1..k`: `r^(k-1) (r - d)^(n+1-k) n!`, for `n >= k`.
pub fn cor_full_union_count(n: u32, p: &FamilyParams) -> Result<BigCount> {
    if n < p.k {
        return Err(Error::InvalidParameter(format!("n={n} is below k={}", p.k)));
    }
    Ok(BigCount::pow(p.r, p.k - 1) * BigCount::pow(p.r - p.d, n + 1 - p.k) * BigCount::factorial(n))
}

/// Exactly-once count for `φ ∈ T(k, r, 1, I)` (and, through the complement,
/// for `φ ∈ T(k, r, k, I)`).
///
/// Evaluated as `Σ_{j=k..n} ∏_{i=k..n, i≠j} h_i`, which is the product times
/// the reciprocal sum kept in integers and stays defined when some `h_j = 0`.
/// Below `k` the pattern cannot occur and the count is 0.
pub fn thm2_count(n: u32, p: &FamilyParams) -> Result<BigCount> {
    if p.d == 0 {
        return Err(Error::InvalidParameter(String::from("d must be at least 1 (the family is empty)")));
    }
    if n < p.k {
        return Ok(BigCount::zero());
    }
    let factors: Vec<BigCount> = (p.k..=n).map(|j| factor_h(j, p)).collect();
    // prefix[i] = ∏ factors[..i], suffix[i] = ∏ factors[i..]
    let mut prefix = Vec::with_capacity(factors.len() + 1);
    prefix.push(BigCount::one());
    for f in &factors {
        let next = prefix.last().expect("nonempty").clone() * f;
        prefix.push(next);
    }
    let mut suffix = alloc::vec![BigCount::one(); factors.len() + 1];
    for i in (0..factors.len()).rev() {
        suffix[i] = suffix[i + 1].clone() * &factors[i];
    }
    Ok((0..factors.len()).map(|i| prefix[i].clone() * &suffix[i + 1]).sum())
}

/// Checks `thm2(n) = h_n thm2(n-1) + ∏_{j=k..n-1} h_j`.
pub fn thm2_recurrence_check(n: u32, p: &FamilyParams) -> Result<bool> {
    if n < p.k + 1 {
        return Err(Error::InvalidParameter(format!("recurrence needs n >= k+1, got n={n}, k={}", p.k)));
    }
    let lhs = thm2_count(n, p)?;
    let rhs = factor_h(n, p) * thm2_count(n - 1, p)? + h_product(p.k, n - 1, p);
    Ok(lhs == rhs)
}

/// Exactly-once count for `φ ∈ T(k, r, m, I)` with `2 <= m <= k-1`:
/// `∏_{j=k+1..n} h_j`, which is 1 at `n = k`.
pub fn thm3_count(n: u32, p: &FamilyParams) -> Result<BigCount> {
    if p.k < 3 {
        return Err(Error::InvalidParameter(format!("k={} must be at least 3", p.k)));
    }
    if p.m < 2 || p.m > p.k - 1 {
        return Err(Error::InvalidParameter(format!("m={} must lie in 2..={}", p.m, p.k - 1)));
    }
    if p.d == 0 {
        return Err(Error::InvalidParameter(String::from("d must be at least 1 (the family is empty)")));
    }
    if n < p.k {
        return Err(Error::InvalidParameter(format!("n={n} is below k={}", p.k)));
    }
    Ok(h_product(p.k + 1, n, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(k: u32, r: u32, d: u32) -> FamilyParams {
        FamilyParams::new(k, r, d).unwrap()
    }

    fn big(v: u64) -> BigCount {
        BigCount::from(v)
    }

    #[test]
    fn h_factor() {
        assert_eq!(factor_h(5, &fp(3, 2, 1)), big(7));
        assert_eq!(factor_h(4, &fp(2, 2, 1)), big(5));
        for j in 0..10 {
            assert_eq!(factor_h(j, &fp(4, 3, 3)), big(9));
        }
    }

    #[test]
    fn thm1_values() {
        assert_eq!(thm1_count(2, &fp(2, 2, 1)), big(6));
        assert_eq!(thm1_count(4, &fp(3, 1, 1)), big(8));
        assert_eq!(thm1_count(1, &fp(2, 3, 2)), big(3));
        // |G_k| = (rk - d)(k-1)! r^(k-1)
        for (k, r, d) in [(2, 2, 1), (3, 2, 2), (4, 3, 1)] {
            let p = fp(k, r, d);
            let expected = big(u64::from(r * k - d)) * BigCount::factorial(k - 1) * BigCount::pow(r, k - 1);
            assert_eq!(thm1_count(k, &p), expected);
        }
    }

    #[test]
    fn thm1_with_no_forbidden_colours_is_whole_group() {
        for n in 0..7 {
            assert_eq!(thm1_count(n, &fp(3, 2, 0)), BigCount::group_order(n, 2));
        }
    }

    #[test]
    fn thm1_length_one_patterns() {
        // k = 1 forbids the colours of I outright: (r - d)^n n!.
        for n in 0..6 {
            assert_eq!(thm1_count(n, &fp(1, 3, 1)), BigCount::pow(2, n) * BigCount::factorial(n));
        }
    }

    #[test]
    fn union_values() {
        let p = fp(3, 2, 1);
        assert_eq!(cor_union_count(4, 1, 1, &p).unwrap(), thm1_count(4, &p));
        assert_eq!(cor_union_count(3, 1, 2, &fp(2, 2, 1)).unwrap(), big(12));
        assert_eq!(cor_union_count(4, 1, 2, &fp(2, 1, 1)).unwrap(), big(0));
        assert!(cor_union_count(4, 2, 1, &p).is_err());
        assert!(cor_union_count(4, 1, 4, &p).is_err());
    }

    #[test]
    fn full_union_values() {
        assert_eq!(cor_full_union_count(3, &fp(2, 2, 1)).unwrap(), big(12));
        assert_eq!(cor_full_union_count(4, &fp(3, 3, 3)).unwrap(), big(0));
        assert_eq!(cor_full_union_count(5, &fp(2, 3, 1)).unwrap(), big(5760));
        assert_eq!(cor_union_count(5, 1, 2, &fp(2, 3, 1)).unwrap(), big(5760));
        assert!(cor_full_union_count(1, &fp(2, 3, 1)).is_err());
    }

    #[test]
    fn thm2_values() {
        assert_eq!(thm2_count(3, &fp(2, 1, 1)).unwrap(), big(2));
        assert_eq!(thm2_count(4, &fp(2, 2, 1)).unwrap(), big(47));
        for (k, r, d) in [(2, 1, 1), (3, 2, 1), (4, 3, 2)] {
            assert_eq!(thm2_count(k, &fp(k, r, d)).unwrap(), big(1));
            assert_eq!(thm2_count(k - 1, &fp(k, r, d)).unwrap(), big(0));
        }
        assert!(thm2_count(4, &fp(2, 2, 0)).is_err());
    }

    #[test]
    fn thm2_with_constant_factors() {
        // r = d: h_j = (k-1) d for every j, so the sum has n-k+1 equal terms.
        let p = fp(3, 2, 2);
        assert_eq!(thm2_count(6, &p).unwrap(), big(4 * 4u64.pow(3)));
    }

    #[test]
    fn thm2_recurrence() {
        assert!(thm2_recurrence_check(5, &fp(2, 2, 1)).unwrap());
        assert!(thm2_recurrence_check(4, &fp(3, 1, 1)).unwrap());
        assert!(thm2_recurrence_check(6, &fp(3, 2, 2)).unwrap());
        assert!(thm2_recurrence_check(2, &fp(2, 2, 1)).is_err());
    }

    #[test]
    fn thm3_values() {
        let p = fp(3, 1, 1).with_m(2).unwrap();
        assert_eq!(thm3_count(4, &p).unwrap(), big(2));
        let p = fp(3, 2, 1).with_m(2).unwrap();
        assert_eq!(thm3_count(5, &p).unwrap(), big(42));
        assert_eq!(thm3_count(3, &p).unwrap(), big(1));
        assert!(thm3_count(2, &p).is_err());
        assert!(thm3_count(4, &fp(3, 2, 1)).is_err(), "m = 1 is not a middle value");
        assert!(thm3_count(4, &fp(2, 2, 1)).is_err());
    }

    #[test]
    fn parameter_validation() {
        assert!(FamilyParams::new(0, 1, 1).is_err());
        assert!(FamilyParams::new(2, 0, 0).is_err());
        assert!(FamilyParams::new(2, 2, 3).is_err());
        assert!(fp(3, 2, 1).with_m(4).is_err());
        assert!(fp(3, 2, 1).with_m(0).is_err());
    }
}
