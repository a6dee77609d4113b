//! Exact angles measured in turns.
//!
//! Every amplitude, eigenvalue and operator entry in this crate is a root of
//! unity `e^{2πi·p}` with `p` rational. [`RationalPhase`] stores `p` reduced
//! into `[0, 1)`, which is all that is needed to describe the complex unit.
//! [`Angle`] keeps the full signed rational, for the few places where a
//! rotation by one whole turn is observable (the `e^{-iSφ}` prefactor of a
//! half-integer spin).

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParsePhaseError;

/// A complex unit `e^{2πi·p}`, stored as the fraction `p` of a full turn.
///
/// The fraction is always in lowest terms with `0 <= p < 1`, so equality of
/// values is equality of the represented complex numbers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPhase(BigRational);

impl RationalPhase {
    pub fn zero() -> Self {
        RationalPhase(BigRational::zero())
    }

    /// `num/den` reduced modulo one turn.
    ///
    /// Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Self::from_ratio(BigRational::new(num.into(), den.into()))
    }

    /// The angle `1/d` of a turn, i.e. the phase of `ω = e^{2πi/d}`.
    pub fn unit(d: u32) -> Self {
        Self::new(1, d)
    }

    pub fn from_ratio(r: BigRational) -> Self {
        RationalPhase(reduce_mod(&r, &BigRational::one()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `k` copies of this angle, modulo one turn. Negative `k` rotates backwards.
    pub fn scale(&self, k: i64) -> Self {
        Self::from_ratio(&self.0 * BigRational::from_integer(BigInt::from(k)))
    }

    /// True iff the angle is an integer multiple of `1/d` of a turn.
    pub fn is_multiple_of_unit(&self, d: u32) -> bool {
        self.units(d).is_some()
    }

    /// The integer `e` in `0..d` with `self = e/d`, if one exists.
    pub fn units(&self, d: u32) -> Option<u32> {
        let scaled = &self.0 * BigRational::from_integer(BigInt::from(d));
        if scaled.is_integer() {
            scaled.to_integer().to_u32()
        } else {
            None
        }
    }

    /// Floating point value of the unit, for numeric cross-checks only.
    ///
    /// Quarter turns are returned exactly.
    pub fn to_complex(&self) -> Complex64 {
        let quarter = &self.0 * BigRational::from_integer(BigInt::from(4));
        if quarter.is_integer() {
            return match quarter.to_integer().to_u8() {
                Some(0) => Complex64::new(1.0, 0.0),
                Some(1) => Complex64::new(0.0, 1.0),
                Some(2) => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            };
        }
        let turns = self.0.to_f64().unwrap_or(0.0);
        Complex64::from_polar(1.0, std::f64::consts::TAU * turns)
    }
}

impl Default for RationalPhase {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &RationalPhase {
    type Output = RationalPhase;
    fn add(self, rhs: &RationalPhase) -> RationalPhase {
        RationalPhase::from_ratio(&self.0 + &rhs.0)
    }
}

impl Add for RationalPhase {
    type Output = RationalPhase;
    fn add(self, rhs: RationalPhase) -> RationalPhase {
        &self + &rhs
    }
}

impl Sub for &RationalPhase {
    type Output = RationalPhase;
    fn sub(self, rhs: &RationalPhase) -> RationalPhase {
        RationalPhase::from_ratio(&self.0 - &rhs.0)
    }
}

impl Sub for RationalPhase {
    type Output = RationalPhase;
    fn sub(self, rhs: RationalPhase) -> RationalPhase {
        &self - &rhs
    }
}

impl Neg for &RationalPhase {
    type Output = RationalPhase;
    fn neg(self) -> RationalPhase {
        RationalPhase::from_ratio(-&self.0)
    }
}

impl Neg for RationalPhase {
    type Output = RationalPhase;
    fn neg(self) -> RationalPhase {
        -&self
    }
}

impl<'a> std::iter::Sum<&'a RationalPhase> for RationalPhase {
    fn sum<I: Iterator<Item = &'a RationalPhase>>(iter: I) -> Self {
        let total = iter.fold(BigRational::zero(), |acc, p| acc + &p.0);
        RationalPhase::from_ratio(total)
    }
}

impl fmt::Display for RationalPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

/// Parses the canonical `"num/den"` form only: lowest terms, `0 <= num < den`.
impl FromStr for RationalPhase {
    type Err = ParsePhaseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (num, den) = parse_fraction(s)?;
        if num.is_negative() || num >= den {
            return Err(ParsePhaseError::OutOfRange(s.to_string()));
        }
        if !num.gcd(&den).is_one() {
            return Err(ParsePhaseError::NotReduced(s.to_string()));
        }
        Ok(RationalPhase(BigRational::new_raw(num, den)))
    }
}

impl Serialize for RationalPhase {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RationalPhase {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A signed angle in turns that is not reduced modulo anything.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(BigRational);

impl Angle {
    pub fn zero() -> Self {
        Angle(BigRational::zero())
    }

    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Angle(BigRational::new(num.into(), den.into()))
    }

    pub fn from_ratio(r: BigRational) -> Self {
        Angle(r)
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    /// The complex unit this angle points at.
    pub fn phase(&self) -> RationalPhase {
        RationalPhase::from_ratio(self.0.clone())
    }

    /// The representative of this angle in `[0, period)`.
    pub fn reduce(&self, period: i64) -> Angle {
        Angle(reduce_mod(&self.0, &BigRational::from_integer(BigInt::from(period))))
    }

    pub fn scale(&self, k: &BigRational) -> Angle {
        Angle(&self.0 * k)
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(0.0)
    }
}

impl From<&RationalPhase> for Angle {
    fn from(p: &RationalPhase) -> Self {
        Angle(p.0.clone())
    }
}

impl From<RationalPhase> for Angle {
    fn from(p: RationalPhase) -> Self {
        Angle(p.0)
    }
}

impl Add for &Angle {
    type Output = Angle;
    fn add(self, rhs: &Angle) -> Angle {
        Angle(&self.0 + &rhs.0)
    }
}

impl Sub for &Angle {
    type Output = Angle;
    fn sub(self, rhs: &Angle) -> Angle {
        Angle(&self.0 - &rhs.0)
    }
}

impl Neg for &Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        Angle(-&self.0)
    }
}

impl<'a> std::iter::Sum<&'a Angle> for Angle {
    fn sum<I: Iterator<Item = &'a Angle>>(iter: I) -> Self {
        Angle(iter.fold(BigRational::zero(), |acc, a| acc + &a.0))
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

/// Accepts any `"p/q"` or integer `"p"`, signed, reduced or not.
impl FromStr for Angle {
    type Err = ParsePhaseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (num, den) = parse_fraction(s)?;
        Ok(Angle(BigRational::new(num, den)))
    }
}

fn parse_fraction(s: &str) -> Result<(BigInt, BigInt), ParsePhaseError> {
    let malformed = || ParsePhaseError::Malformed(s.to_string());
    let (num, den) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| malformed())?;
    let den: BigInt = den.parse().map_err(|_| malformed())?;
    if den.is_zero() {
        return Err(ParsePhaseError::ZeroDenominator(s.to_string()));
    }
    if den.is_negative() {
        return Err(malformed());
    }
    Ok((num, den))
}

fn reduce_mod(r: &BigRational, period: &BigRational) -> BigRational {
    let q = (r / period).floor();
    r - q * period
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> RationalPhase {
        s.parse().unwrap()
    }

    #[test]
    fn addition_wraps() {
        assert_eq!(p("1/3") + p("1/3"), p("2/3"));
        assert_eq!(p("2/3") + p("2/3"), p("1/3"));
        assert_eq!(p("1/2") + p("1/2"), p("0/1"));
    }

    #[test]
    fn scaling() {
        assert_eq!(p("1/9").scale(3), p("1/3"));
        assert_eq!(p("1/9").scale(-1), p("8/9"));
        assert_eq!(p("1/25").scale(5), p("1/5"));
    }

    #[test]
    fn multiples_of_unit() {
        assert!(p("2/3").is_multiple_of_unit(3));
        assert!(!p("1/9").is_multiple_of_unit(3));
        assert!(p("0/1").is_multiple_of_unit(5));
        assert_eq!(p("2/3").units(3), Some(2));
        assert_eq!(p("1/2").units(4), Some(2));
    }

    #[test]
    fn complex_values() {
        assert_eq!(p("0/1").to_complex(), Complex64::new(1.0, 0.0));
        assert_eq!(p("1/2").to_complex(), Complex64::new(-1.0, 0.0));
        assert_eq!(p("1/4").to_complex(), Complex64::new(0.0, 1.0));
        let w = p("1/3").to_complex();
        assert!((w - Complex64::new(-0.5, 3f64.sqrt() / 2.0)).norm() < 1e-15);
    }

    #[test]
    fn parser_rejects_noncanonical_input() {
        assert!(matches!("2/6".parse::<RationalPhase>(), Err(ParsePhaseError::NotReduced(_))));
        assert!(matches!("4/3".parse::<RationalPhase>(), Err(ParsePhaseError::OutOfRange(_))));
        assert!(matches!("-1/3".parse::<RationalPhase>(), Err(ParsePhaseError::OutOfRange(_))));
        assert!(matches!("1/0".parse::<RationalPhase>(), Err(ParsePhaseError::ZeroDenominator(_))));
        assert!(matches!("x/3".parse::<RationalPhase>(), Err(ParsePhaseError::Malformed(_))));
        assert!(matches!("1".parse::<RationalPhase>(), Err(ParsePhaseError::OutOfRange(_))));
        assert_eq!("0".parse::<RationalPhase>().unwrap(), RationalPhase::zero());
        assert_eq!(p("0/1").to_string(), "0/1");
    }

    #[test]
    fn angle_keeps_whole_turns() {
        let a: Angle = "-1/9".parse().unwrap();
        assert_eq!(a.phase(), p("8/9"));
        let full: Angle = "3/2".parse().unwrap();
        assert_eq!(full.reduce(1), "1/2".parse().unwrap());
        assert_eq!(full.reduce(2), full);
        assert_eq!(Angle::new(-1, 2).reduce(2), Angle::new(3, 2));
    }

    fn phase() -> impl Strategy<Value = RationalPhase> {
        (-1000i64..1000, 1i64..200).prop_map(|(n, d)| RationalPhase::new(n, d))
    }

    proptest! {
        #[test]
        fn addition_commutes_with_zero_identity(a in phase(), b in phase()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a + &RationalPhase::zero(), a.clone());
        }

        #[test]
        fn scale_is_repeated_addition(a in phase(), k in 0i64..30) {
            let mut acc = RationalPhase::zero();
            for _ in 0..k {
                acc = &acc + &a;
            }
            prop_assert_eq!(a.scale(k), acc);
        }

        #[test]
        fn normalization_is_idempotent(n in -10_000i64..10_000, d in 1i64..500) {
            let once = RationalPhase::new(n, d);
            let twice = RationalPhase::from_ratio(once.as_ratio().clone());
            prop_assert_eq!(&once, &twice);
            prop_assert!(!once.numer().is_negative() && once.numer() < once.denom());
            let reparsed: RationalPhase = once.to_string().parse().unwrap();
            prop_assert_eq!(reparsed, once);
        }

        #[test]
        fn unit_multiples(d in 2u32..40, k in -200i64..200) {
            prop_assert!(RationalPhase::unit(d).scale(k).is_multiple_of_unit(d));
        }
    }
}
