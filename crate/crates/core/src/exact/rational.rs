use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Exact rational number, always stored in lowest terms with a positive
/// denominator. This is the only scalar type the crate computes with.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rat(BigRational);

// ---- Constructors ----

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    /// Builds `numer / denom`. Panics if `denom == 0`; a zero denominator is a
    /// programming error, not a data condition.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let d = denom.into();
        assert!(!d.is_zero(), "Rat::new with zero denominator");
        Rat(BigRational::new(numer.into(), d))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    // ---- Accessors ----

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// -1, 0, or 1.
    pub fn signum(&self) -> i32 {
        if self.0.is_zero() {
            0
        } else if self.0.is_negative() {
            -1
        } else {
            1
        }
    }

    // ---- Arithmetic helpers ----

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "Rat::recip of zero");
        Rat(self.0.recip())
    }

    /// Integer power, negative exponents allowed for nonzero base.
    pub fn pow(&self, exp: i64) -> Self {
        if exp == 0 {
            return Rat::one();
        }
        if exp < 0 {
            return self.recip().pow(-exp);
        }
        let mut acc = BigRational::one();
        let mut base = self.0.clone();
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Rat(acc)
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Decimal approximation, for display only. Exact values never flow
    /// through this.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

// ---- Conversions ----

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl From<i32> for Rat {
    fn from(n: i32) -> Self {
        Rat::from_int(n as i64)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat::from_int(n)
    }
}

// ---- Operators ----
// Owned and borrowed forms both exist; the borrowed ones avoid clones in the
// hot polynomial loops.

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat((self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |a, b| a + b)
    }
}

impl Product for Rat {
    fn product<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::one(), |a, b| a * b)
    }
}

// ---- Text form ----
// Integers render bare ("5", "-3"), everything else as "p/q" with q > 0.

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rat({self})")
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let numer = BigInt::from_str(num_str)
            .map_err(|_| Error::domain(format!("cannot parse rational from {s:?}")))?;
        let denom = match den_str {
            Some(d) => BigInt::from_str(d)
                .map_err(|_| Error::domain(format!("cannot parse rational from {s:?}")))?,
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(Error::domain(format!("zero denominator in {s:?}")));
        }
        Ok(Rat(BigRational::new(numer, denom)))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(|e: Error| D::Error::custom(e.to_string()))
    }
}

// ---- Combinatorial and root helpers ----

/// Binomial coefficient C(n, k) as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Multinomial coefficient (Σparts)! / Π parts!.
pub fn multinomial(parts: &[u32]) -> BigInt {
    let mut acc = BigInt::one();
    let mut total: u64 = 0;
    for &p in parts {
        for i in 1..=p as u64 {
            total += 1;
            acc = acc * BigInt::from(total) / BigInt::from(i);
        }
    }
    acc
}

/// Largest `t >= 0` with `t^d <= n`, for `n >= 0` and `d >= 1`. Pure integer
/// binary search; no floating point is consulted.
pub fn floor_nth_root(n: &BigInt, d: u32) -> BigInt {
    assert!(d >= 1, "floor_nth_root with d = 0");
    assert!(!n.is_negative(), "floor_nth_root of negative value");
    if n.is_zero() {
        return BigInt::zero();
    }
    let bits = n.bits();
    let mut hi = BigInt::one() << (bits / d as u64 + 1);
    let mut lo = BigInt::zero();
    // Invariant: lo^d <= n < hi^d.
    while &lo + 1u32 < hi {
        let mid: BigInt = (&lo + &hi) >> 1;
        if mid.pow(d) <= *n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Smallest `t >= 0` with `t^d >= n`.
pub fn ceil_nth_root(n: &BigInt, d: u32) -> BigInt {
    if n.is_negative() || n.is_zero() {
        return BigInt::zero();
    }
    let t = floor_nth_root(n, d);
    if t.pow(d) == *n {
        t
    } else {
        t + 1u32
    }
}

/// A rational upper bound for the real d-th root of `x`, tight to within
/// 1/1024: the smallest grid point `k/1024` with `(k/1024)^d >= x`. Returns 0
/// when `x <= 0`.
pub fn nth_root_upper_bound(x: &Rat, d: u32) -> Rat {
    assert!(d >= 1, "nth_root_upper_bound with d = 0");
    if !x.is_positive() {
        return Rat::zero();
    }
    const GRID: u32 = 1024;
    let scaled = x * &Rat::from_int(BigInt::from(GRID).pow(d));
    let k = ceil_nth_root(&scaled.ceil(), d);
    Rat::new(k, GRID)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_reduces_and_hides_unit_denominator() {
        assert_eq!(Rat::new(6, 4).to_string(), "3/2");
        assert_eq!(Rat::new(-6, 3).to_string(), "-2");
        assert_eq!(Rat::new(5, -10).to_string(), "-1/2", "denominator must end up positive");
    }

    #[test]
    fn parse_accepts_integers_and_fractions() {
        assert_eq!("31/362880".parse::<Rat>().unwrap(), Rat::new(31, 362880));
        assert_eq!("-7".parse::<Rat>().unwrap(), Rat::from_int(-7));
        assert_eq!(" 2/ 4 ".parse::<Rat>().unwrap(), Rat::new(1, 2));
        assert!("1/0".parse::<Rat>().is_err(), "zero denominator must be rejected");
        assert!("a/b".parse::<Rat>().is_err());
    }

    #[test]
    fn pow_handles_negative_exponents() {
        assert_eq!(Rat::new(2, 3).pow(-2), Rat::new(9, 4));
        assert_eq!(Rat::new(5, 1).pow(0), Rat::one());
    }

    #[test]
    fn binomial_and_multinomial_agree_on_pairs() {
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(multinomial(&[3, 7]), BigInt::from(120));
        assert_eq!(multinomial(&[2, 2, 2]), BigInt::from(90));
        assert_eq!(binomial(3, 5), BigInt::zero());
    }

    #[test]
    fn integer_roots_bracket_exact_powers() {
        let n = BigInt::from(650924662500u64);
        let r = floor_nth_root(&n, 6);
        assert!(r.pow(6) <= n && (&r + 1u32).pow(6) > n, "floor root bracket failed");
        assert_eq!(floor_nth_root(&BigInt::from(728), 6), BigInt::from(2));
        assert_eq!(ceil_nth_root(&BigInt::from(729), 6), BigInt::from(3));
        assert_eq!(ceil_nth_root(&BigInt::from(730), 6), BigInt::from(4));
    }

    #[test]
    fn root_upper_bound_is_an_upper_bound_on_the_grid() {
        let x = Rat::new(650924662500u64, 60505200000u64);
        let b = nth_root_upper_bound(&x, 6);
        assert!(b.pow(6) >= x, "bound must dominate the true root");
        let step = Rat::new(1, 1024);
        let lower = &b - &step;
        assert!(lower.pow(6) < x, "bound must be the smallest grid point that works");
    }
}
