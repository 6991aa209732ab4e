//! Unbounded nonnegative counts.

use alloc::string::String;
use core::fmt;
use core::iter::{Product, Sum};
use core::ops::{Add, AddAssign, Mul, MulAssign};

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Every count in this crate: `n! r^n` leaves `u64` behind at modest `n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn one() -> Self {
        BigCount(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn factorial(n: u32) -> Self {
        (2..=n).map(BigCount::from).product()
    }

    pub fn pow(base: u32, exp: u32) -> Self {
        BigCount(BigUint::from(base).pow(exp))
    }

    /// `n! r^n = |S_n^(r)|`.
    pub fn group_order(n: u32, r: u32) -> Self {
        Self::factorial(n) * Self::pow(r, n)
    }

    pub fn to_u64(&self) -> Option<u64> {
        u64::try_from(&self.0).ok()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn to_decimal(&self) -> String {
        self.0.to_str_radix(10)
    }

    pub fn from_decimal(s: &str) -> Option<Self> {
        BigUint::parse_bytes(s.as_bytes(), 10).map(BigCount)
    }

    /// Exact division; `None` when `divisor` is zero or does not divide `self`.
    pub fn checked_div_exact(&self, divisor: &BigCount) -> Option<BigCount> {
        if divisor.is_zero() {
            return None;
        }
        let q = &self.0 / &divisor.0;
        (&q * &divisor.0 == self.0).then_some(BigCount(q))
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<u32> for BigCount {
    fn from(v: u32) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<usize> for BigCount {
    fn from(v: usize) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl Add for BigCount {
    type Output = BigCount;
    fn add(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a BigCount> for BigCount {
    type Output = BigCount;
    fn add(self, rhs: &'a BigCount) -> BigCount {
        BigCount(self.0 + &rhs.0)
    }
}

impl AddAssign for BigCount {
    fn add_assign(&mut self, rhs: BigCount) {
        self.0 += rhs.0;
    }
}

impl<'a> AddAssign<&'a BigCount> for BigCount {
    fn add_assign(&mut self, rhs: &'a BigCount) {
        self.0 += &rhs.0;
    }
}

impl Mul for BigCount {
    type Output = BigCount;
    fn mul(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a BigCount> for BigCount {
    type Output = BigCount;
    fn mul(self, rhs: &'a BigCount) -> BigCount {
        BigCount(self.0 * &rhs.0)
    }
}

impl MulAssign for BigCount {
    fn mul_assign(&mut self, rhs: BigCount) {
        self.0 *= rhs.0;
    }
}

impl Sum for BigCount {
    fn sum<I: Iterator<Item = BigCount>>(iter: I) -> Self {
        iter.fold(BigCount::zero(), |a, b| a + b)
    }
}

impl Product for BigCount {
    fn product<I: Iterator<Item = BigCount>>(iter: I) -> Self {
        iter.fold(BigCount::one(), |a, b| a * b)
    }
}

/// Leaf counter for hot loops: bumps a machine word and spills into the big
/// integer only when the word would overflow.
#[derive(Clone, Debug, Default)]
pub(crate) struct Tally {
    spilled: BigUint,
    word: u64,
}

impl Tally {
    #[inline]
    pub(crate) fn bump(&mut self) {
        match self.word.checked_add(1) {
            Some(w) => self.word = w,
            None => {
                self.spilled += self.word;
                self.word = 1;
            }
        }
    }

    pub(crate) fn total(&self) -> BigCount {
        BigCount(&self.spilled + self.word)
    }
}
