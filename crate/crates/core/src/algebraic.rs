//! Exact real arithmetic over finite rational combinations of square roots
//! of squarefree positive integers.
//!
//! A [`RadExt`] is stored as a map from squarefree radicand to a nonzero
//! rational coefficient. Square roots of distinct squarefree integers are
//! linearly independent over the rationals, so this representation is
//! canonical: a value is zero exactly when its term map is empty, and two
//! values are equal exactly when their maps are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Largest integer [`squarefree_decompose`] will factor unless overridden.
pub const DEFAULT_TRIAL_DIVISION_BOUND: u64 = 1 << 40;

static TRIAL_DIVISION_BOUND: AtomicU64 = AtomicU64::new(DEFAULT_TRIAL_DIVISION_BOUND);

/// Initial fractional precision for interval sign evaluation.
const SIGN_START_BITS: u64 = 64;

pub fn trial_division_bound() -> u64 {
    TRIAL_DIVISION_BOUND.load(AtomicOrdering::Relaxed)
}

/// Sets the largest integer that trial division will accept. Inputs above
/// it fail with [`Error::FactorizationBound`] instead of running unbounded.
pub fn set_trial_division_bound(bound: u64) {
    TRIAL_DIVISION_BOUND.store(bound.max(1), AtomicOrdering::Relaxed);
}

/// Convenience constructor for `num / den`.
///
/// # Panics
/// If `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parameter(format!("`{s}` is not a rational number"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A squarefree positive integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Radicand(u64);

impl Radicand {
    pub const ONE: Radicand = Radicand(1);

    pub fn new(value: u64) -> Result<Self> {
        match squarefree_decompose(value) {
            Ok((1, d)) => Ok(d),
            Ok(_) => Err(Error::NotSquarefree(value)),
            Err(Error::NonPositiveSqrt(_)) => Err(Error::NotSquarefree(value)),
            Err(e) => Err(e),
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// `sqrt(self) * sqrt(other) = factor * sqrt(radicand)`.
    ///
    /// Both inputs are squarefree, so with `g = gcd` the product is
    /// `g^2 * (self/g) * (other/g)` and the cofactor is again squarefree.
    fn times(self, other: Radicand) -> (u64, Radicand) {
        let g = self.0.gcd(&other.0);
        let rest = (self.0 / g)
            .checked_mul(other.0 / g)
            .expect("radicand product overflows u64");
        (g, Radicand(rest))
    }
}

impl fmt::Display for Radicand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Writes `n = s^2 * d` with `d` squarefree, by trial division.
pub fn squarefree_decompose(n: u64) -> Result<(u64, Radicand)> {
    if n == 0 {
        return Err(Error::NonPositiveSqrt("0".into()));
    }
    let bound = trial_division_bound();
    if n > bound {
        return Err(Error::FactorizationBound {
            n: n.to_string(),
            bound,
        });
    }
    let mut rest = n;
    let mut square_root = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        let mut exp = 0u32;
        while rest % p == 0 {
            rest /= p;
            exp += 1;
        }
        square_root *= p.pow(exp / 2);
        if exp % 2 == 1 {
            free *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // whatever is left is 1 or a prime
    free *= rest;
    Ok((square_root, Radicand(free)))
}

/// An exact real number `sum_d q_d * sqrt(d)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RadExt {
    terms: BTreeMap<Radicand, Rational>,
}

impl RadExt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::term(q, Radicand::ONE)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    /// `num/den` as a rational-valued `RadExt`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(rat(num, den))
    }

    /// The single term `coefficient * sqrt(radicand)`.
    pub fn term(coefficient: Rational, radicand: Radicand) -> Self {
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(radicand, coefficient);
        }
        Self { terms }
    }

    /// Builds a value from `(coefficient, radicand)` pairs, merging like
    /// terms. Radicands must be squarefree.
    pub fn from_terms<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, u64)>,
    {
        let mut out = RadExt::zero();
        for (q, d) in pairs {
            let d = Radicand::new(d)?;
            out.accumulate(d, q);
        }
        Ok(out)
    }

    /// The exact square root of a positive rational.
    pub fn sqrt_rational(q: &Rational) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::NonPositiveSqrt(format_rational(q)));
        }
        // sqrt(p/r) = sqrt(p*r) / r
        let product = q.numer() * q.denom();
        let n = product.to_u64().ok_or_else(|| Error::FactorizationBound {
            n: product.to_string(),
            bound: trial_division_bound(),
        })?;
        let (s, d) = squarefree_decompose(n)?;
        let coefficient = Rational::new(BigInt::from(s), q.denom().clone());
        Ok(Self::term(coefficient, d))
    }

    /// `1 / sqrt(q)` for positive rational `q`.
    pub fn inv_sqrt_rational(q: &Rational) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::NonPositiveSqrt(format_rational(q)));
        }
        Self::sqrt_rational(&q.recip())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|d| *d == Radicand::ONE)
    }

    /// The value as a rational, if it has no irrational part.
    pub fn to_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Radicand::ONE).cloned(),
            _ => None,
        }
    }

    /// Terms in ascending radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (Radicand, &Rational)> + '_ {
        self.terms.iter().map(|(d, q)| (*d, q))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Exact sign: -1, 0 or +1.
    ///
    /// Zero is decided symbolically. A nonzero value is bracketed by
    /// evaluating every square root to a growing number of fractional bits
    /// until the enclosing interval excludes zero.
    pub fn signum(&self) -> i8 {
        match self.terms.len() {
            0 => 0,
            1 => {
                let q = self.terms.values().next().expect("one term");
                if q.is_positive() {
                    1
                } else {
                    -1
                }
            }
            _ => self.interval_signum(),
        }
    }

    fn interval_signum(&self) -> i8 {
        let mut bits = SIGN_START_BITS;
        loop {
            let (lo, hi) = self.enclose(bits);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits *= 2;
        }
    }

    /// An interval `[lo, hi]` containing the value, with each `sqrt(d)`
    /// approximated to `bits` fractional bits.
    fn enclose(&self, bits: u64) -> (Rational, Rational) {
        let scale = BigInt::one() << bits;
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        for (d, q) in &self.terms {
            if *d == Radicand::ONE {
                lo += q;
                hi += q;
                continue;
            }
            let floor = (BigUint::from(d.0) << (2 * bits)).sqrt();
            let below = Rational::new(BigInt::from(floor.clone()), scale.clone());
            let above = Rational::new(BigInt::from(floor + 1u32), scale.clone());
            if q.is_positive() {
                lo += q * &below;
                hi += q * &above;
            } else {
                lo += q * &above;
                hi += q * &below;
            }
        }
        (lo, hi)
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(d, q)| q.to_f64().unwrap_or(f64::NAN) * (d.0 as f64).sqrt())
            .sum()
    }

    fn accumulate(&mut self, d: Radicand, q: Rational) {
        if q.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(q);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += q;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn scale_rational(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return RadExt::zero();
        }
        RadExt {
            terms: self.terms.iter().map(|(d, c)| (*d, c * q)).collect(),
        }
    }
}

impl From<Rational> for RadExt {
    fn from(q: Rational) -> Self {
        RadExt::from_rational(q)
    }
}

impl Neg for &RadExt {
    type Output = RadExt;
    fn neg(self) -> RadExt {
        RadExt {
            terms: self.terms.iter().map(|(d, q)| (*d, -q)).collect(),
        }
    }
}

impl Neg for RadExt {
    type Output = RadExt;
    fn neg(mut self) -> RadExt {
        for q in self.terms.values_mut() {
            *q = -std::mem::take(q);
        }
        self
    }
}

impl AddAssign<&RadExt> for RadExt {
    fn add_assign(&mut self, rhs: &RadExt) {
        for (d, q) in &rhs.terms {
            self.accumulate(*d, q.clone());
        }
    }
}

impl SubAssign<&RadExt> for RadExt {
    fn sub_assign(&mut self, rhs: &RadExt) {
        for (d, q) in &rhs.terms {
            self.accumulate(*d, -q);
        }
    }
}

impl Add<&RadExt> for &RadExt {
    type Output = RadExt;
    fn add(self, rhs: &RadExt) -> RadExt {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&RadExt> for &RadExt {
    type Output = RadExt;
    fn sub(self, rhs: &RadExt) -> RadExt {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&RadExt> for &RadExt {
    type Output = RadExt;
    fn mul(self, rhs: &RadExt) -> RadExt {
        if self.terms.len() == 1 {
            if let Some(q) = self.terms.get(&Radicand::ONE) {
                return rhs.scale_rational(q);
            }
        }
        if rhs.terms.len() == 1 {
            if let Some(q) = rhs.terms.get(&Radicand::ONE) {
                return self.scale_rational(q);
            }
        }
        let mut out = RadExt::zero();
        for (d1, q1) in &self.terms {
            for (d2, q2) in &rhs.terms {
                let (g, d) = d1.times(*d2);
                let mut q = q1 * q2;
                if g != 1 {
                    q *= Rational::from_integer(BigInt::from(g));
                }
                out.accumulate(d, q);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<RadExt> for RadExt {
            type Output = RadExt;
            fn $method(self, rhs: RadExt) -> RadExt {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RadExt> for RadExt {
            type Output = RadExt;
            fn $method(self, rhs: &RadExt) -> RadExt {
                (&self).$method(rhs)
            }
        }
        impl $tr<RadExt> for &RadExt {
            type Output = RadExt;
            fn $method(self, rhs: RadExt) -> RadExt {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Sum for RadExt {
    fn sum<I: Iterator<Item = RadExt>>(iter: I) -> RadExt {
        let mut out = RadExt::zero();
        for x in iter {
            out += &x;
        }
        out
    }
}

impl<'a> Sum<&'a RadExt> for RadExt {
    fn sum<I: Iterator<Item = &'a RadExt>>(iter: I) -> RadExt {
        let mut out = RadExt::zero();
        for x in iter {
            out += x;
        }
        out
    }
}

impl fmt::Display for RadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (d, q)) in self.terms.iter().enumerate() {
            let negative = q.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = q.abs();
            if *d == Radicand::ONE {
                f.write_str(&format_rational(&magnitude))?;
            } else if magnitude.is_one() {
                write!(f, "sqrt({d})")?;
            } else if magnitude.is_integer() {
                write!(f, "{}*sqrt({d})", magnitude.numer())?;
            } else {
                write!(f, "({})*sqrt({d})", format_rational(&magnitude))?;
            }
        }
        Ok(())
    }
}

fn json_integer(n: &BigInt) -> serde_json::Number {
    // arbitrary_precision keeps every digit
    serde_json::Number::from_str(&n.to_string()).expect("integer literal")
}

/// Serialized as `[[numerator, denominator, radicand], ...]` in ascending
/// radicand order.
impl Serialize for RadExt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (d, q) in &self.terms {
            seq.serialize_element(&[
                json_integer(q.numer()),
                json_integer(q.denom()),
                serde_json::Number::from(d.0),
            ])?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for RadExt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<[serde_json::Number; 3]> = Vec::deserialize(deserializer)?;
        let mut out = RadExt::zero();
        let mut last: Option<u64> = None;
        for [num, den, radicand] in raw {
            let num = BigInt::from_str(&num.to_string()).map_err(D::Error::custom)?;
            let den = BigInt::from_str(&den.to_string()).map_err(D::Error::custom)?;
            let d = radicand
                .as_u64()
                .ok_or_else(|| D::Error::custom(format!("radicand {radicand} is not a positive integer")))?;
            if !den.is_positive() {
                return Err(D::Error::custom("denominator must be positive"));
            }
            if num.is_zero() {
                return Err(D::Error::custom("zero coefficient in term list"));
            }
            if num.gcd(&den) != BigInt::one() {
                return Err(D::Error::custom(format!("{num}/{den} is not in lowest terms")));
            }
            if last.is_some_and(|prev| prev >= d) {
                return Err(D::Error::custom("radicands must be strictly ascending"));
            }
            last = Some(d);
            let d = Radicand::new(d).map_err(D::Error::custom)?;
            out.accumulate(d, Rational::new(num, den));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sqrt(d: u64) -> RadExt {
        RadExt::term(Rational::one(), Radicand::new(d).unwrap())
    }

    fn q(n: i64, d: i64) -> RadExt {
        RadExt::ratio(n, d)
    }

    #[test]
    fn sqrt_rational_examples() {
        assert_eq!(RadExt::sqrt_rational(&rat_int(4)).unwrap(), q(2, 1));
        assert_eq!(
            RadExt::sqrt_rational(&rat(1, 2)).unwrap(),
            RadExt::term(rat(1, 2), Radicand(2))
        );
        assert_eq!(
            RadExt::sqrt_rational(&rat_int(12)).unwrap(),
            RadExt::term(rat_int(2), Radicand(3))
        );
        assert!(matches!(
            RadExt::sqrt_rational(&rat_int(0)),
            Err(Error::NonPositiveSqrt(_))
        ));
        assert!(RadExt::sqrt_rational(&rat(-1, 3)).is_err());
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_decompose(1).unwrap(), (1, Radicand(1)));
        assert_eq!(squarefree_decompose(50).unwrap(), (5, Radicand(2)));
        assert_eq!(squarefree_decompose(26).unwrap(), (1, Radicand(26)));
        assert_eq!(squarefree_decompose(4225).unwrap(), (65, Radicand(1)));
        assert!(squarefree_decompose(0).is_err());
        assert_eq!(Radicand::new(12), Err(Error::NotSquarefree(12)));
        assert!(Radicand::new(0).is_err());
    }

    #[test]
    fn factorization_bound_fails_loudly() {
        let too_big = DEFAULT_TRIAL_DIVISION_BOUND + 1;
        assert!(matches!(
            squarefree_decompose(too_big),
            Err(Error::FactorizationBound { .. })
        ));
    }

    #[test]
    fn add_examples() {
        assert!((sqrt(2) + -sqrt(2)).is_zero());
        let x = q(1, 1) + sqrt(2);
        let sum = &x + &sqrt(3);
        assert_eq!(sum.term_count(), 3);
        let thirds = RadExt::term(rat(1, 3), Radicand(2)) + RadExt::term(rat(2, 3), Radicand(2));
        assert_eq!(thirds, sqrt(2));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(sqrt(2) * sqrt(2), q(2, 1));
        assert_eq!(sqrt(2) * sqrt(3), sqrt(6));
        assert_eq!((q(1, 1) + sqrt(2)) * (q(1, 1) - sqrt(2)), q(-1, 1));
        assert_eq!(sqrt(6) * sqrt(10), RadExt::term(rat_int(2), Radicand(15)));
    }

    #[test]
    fn sign_examples() {
        assert_eq!((sqrt(2) - q(1, 1)).signum(), 1);
        assert_eq!((q(1, 1) - sqrt(2)).signum(), -1);
        assert_eq!(((sqrt(2) + sqrt(3)) - (sqrt(3) + sqrt(2))).signum(), 0);
        // 99^2 - 2*70^2 = 1, so 99/70 sits just above sqrt(2)
        assert_eq!((sqrt(2) - q(99, 70)).signum(), -1);
        assert_eq!((q(665857, 470832) - sqrt(2)).signum(), 1);
        // (sqrt2+sqrt3)^2 = 5+2sqrt6 < 10
        assert_eq!((sqrt(2) + sqrt(3) - sqrt(10)).signum(), -1);
    }

    #[test]
    fn json_encoding() {
        let x = RadExt::term(rat(1, 2), Radicand(2)) - q(3, 1);
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(text, "[[-3,1,1],[1,2,2]]");
        let back: RadExt = serde_json::from_str(&text).unwrap();
        assert_eq!(back, x);
        assert_eq!(serde_json::to_string(&RadExt::zero()).unwrap(), "[]");
    }

    #[test]
    fn json_rejects_noncanonical() {
        for bad in ["[[2,4,1]]", "[[1,2,4]]", "[[0,1,1]]", "[[1,-2,1]]", "[[1,1,2],[1,1,2]]", "[[1,1,3],[1,1,2]]"] {
            assert!(serde_json::from_str::<RadExt>(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn json_big_integers_survive() {
        let big = RadExt::from_rational(Rational::new(
            BigInt::from(10u8).pow(40) + 1u8,
            BigInt::from(7u8),
        ));
        let text = serde_json::to_string(&big).unwrap();
        assert_eq!(serde_json::from_str::<RadExt>(&text).unwrap(), big);
    }

    #[test]
    fn display() {
        let x = RadExt::term(rat(1, 2), Radicand(2)) - q(3, 1);
        assert_eq!(x.to_string(), "-3 + (1/2)*sqrt(2)");
        assert_eq!((-sqrt(5)).to_string(), "-sqrt(5)");
    }

    fn small_radext() -> impl Strategy<Value = RadExt> {
        let radicands = prop::sample::select(vec![1u64, 2, 3, 5, 6, 7, 10, 13, 15, 26, 30]);
        prop::collection::vec((-20i64..=20, 1i64..=12, radicands), 0..4).prop_map(|terms| {
            RadExt::from_terms(terms.into_iter().map(|(n, d, r)| (rat(n, d), r))).unwrap()
        })
    }

    fn f64_radext() -> impl Strategy<Value = RadExt> {
        prop::collection::vec((-50i64..=50, 1i64..=20, 1u64..=100), 1..=4).prop_map(|terms| {
            let mut out = RadExt::zero();
            for (n, d, r) in terms {
                let (s, free) = squarefree_decompose(r).unwrap();
                out += &RadExt::term(rat(n * s as i64, d), free);
            }
            out
        })
    }

    proptest! {
        #[test]
        fn addition_is_associative_and_commutative(x in small_radext(), y in small_radext(), z in small_radext()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&x + &y, &y + &x);
        }

        #[test]
        fn multiplication_is_associative_and_commutative(x in small_radext(), y in small_radext(), z in small_radext()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &y, &y * &x);
        }

        #[test]
        fn distributive(x in small_radext(), y in small_radext(), z in small_radext()) {
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        }

        #[test]
        fn identities(x in small_radext()) {
            prop_assert_eq!(&x * &RadExt::one(), x.clone());
            prop_assert_eq!(&x + &RadExt::zero(), x.clone());
            prop_assert!((&x - &x).is_zero());
        }

        #[test]
        fn sqrt_squares_back(n in 1i64..=10_000, d in 1i64..=10_000) {
            let value = rat(n, d);
            let root = RadExt::sqrt_rational(&value).unwrap();
            prop_assert_eq!(root.term_count(), 1);
            prop_assert_eq!(&root * &root, RadExt::from_rational(value));
        }

        #[test]
        fn zero_test_is_symbolic(x in small_radext()) {
            prop_assert_eq!(x.signum() == 0, x.term_count() == 0);
        }

        #[test]
        fn sign_is_multiplicative(x in small_radext(), y in small_radext()) {
            prop_assert_eq!((&x * &y).signum(), x.signum() * y.signum());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn sign_agrees_with_float(x in f64_radext()) {
            let approx = x.to_f64();
            // f64 cancellation error on these magnitudes stays far below 1e-9
            if approx.abs() > 1e-9 {
                prop_assert_eq!(x.signum(), if approx > 0.0 { 1 } else { -1 });
            } else if x.is_zero() {
                prop_assert_eq!(x.signum(), 0);
            }
        }
    }
}
