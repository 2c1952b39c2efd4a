//! Exact scalar fields: arbitrary-precision rationals and prime fields.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Runtime description of a coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// An exact field. Elements are always kept in canonical form.
pub trait Field:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self) -> Self;
    fn from_i64(n: i64) -> Self;
    /// `num / den`, or `None` when `den` vanishes in the field.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self>;
    fn spec() -> FieldSpec;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }

    /// Parses `"3"`, `"-2"` or `"5/7"`.
    fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<BigInt>().ok()?,
                d.trim().parse::<BigInt>().ok()?,
            ),
            None => (s.parse::<BigInt>().ok()?, BigInt::one()),
        };
        Self::from_ratio(&num, &den)
    }
}

/// Rational numbers with arbitrary-precision numerator and denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Q(pub BigRational);

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for Q {
    fn zero() -> Self {
        Q(BigRational::zero())
    }
    fn one() -> Self {
        Q(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        Q(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Q(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Q(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        Q(-&self.0)
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Q(self.0.recip())
    }
    fn from_i64(n: i64) -> Self {
        Q(BigRational::from_integer(BigInt::from(n)))
    }
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        // Ratio::new reduces to lowest terms with positive denominator.
        Some(Q(BigRational::new(num.clone(), den.clone())))
    }
    fn spec() -> FieldSpec {
        FieldSpec::Rationals
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        self.0 += &a.0 * &b.0;
    }
}

impl Q {
    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Q {
        Q(self.0.abs())
    }
}

/// The prime field with `P` elements; representatives live in `[0, P)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(&self) -> u64 {
        self.0
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.0 as u128;
        let mut acc: u128 = 1;
        let p = P as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp(acc as u64)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        Fp(((self.0 as u128 + other.0 as u128) % P as u128) as u64)
    }
    fn sub(&self, other: &Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - other.0 as u128) % P as u128) as u64)
    }
    fn mul(&self, other: &Self) -> Self {
        Fp(((self.0 as u128 * other.0 as u128) % P as u128) as u64)
    }
    fn neg(&self) -> Self {
        if self.0 == 0 {
            *self
        } else {
            Fp(P - self.0)
        }
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(P - 2)
    }
    fn from_i64(n: i64) -> Self {
        let r = n.rem_euclid(P as i64);
        Fp(r as u64)
    }
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        let p = BigInt::from(P);
        let reduce = |x: &BigInt| -> u64 {
            let r = ((x % &p) + &p) % &p;
            u64::try_from(r).expect("reduced residue fits in u64")
        };
        let d = Fp::<P>(reduce(den));
        if d.is_zero() {
            return None;
        }
        Some(Fp::<P>(reduce(num)).div(&d))
    }
    fn spec() -> FieldSpec {
        FieldSpec::Prime(P)
    }
}

/// Deterministic primality test used to validate prime-field requests.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Default prime for the fast mode; larger than every catalog algebra dimension.
pub type F32003 = Fp<32003>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_in_lowest_terms() {
        let a = Q::parse("6/4").unwrap();
        assert_eq!(a, Q::parse("3/2").unwrap());
        let b = a.mul(&Q::from_i64(2));
        assert_eq!(b, Q::from_i64(3));
        assert!(b.is_integer());
        assert_eq!(Q::parse("1/-2").unwrap(), Q::parse("-1/2").unwrap());
        assert!(Q::parse("1/0").is_none());
        assert!(Q::parse("x").is_none());
    }

    #[test]
    fn prime_field_representatives() {
        type F7 = Fp<7>;
        assert_eq!(F7::from_i64(-1).value(), 6);
        assert_eq!(F7::from_i64(3).inv().mul(&F7::from_i64(3)), F7::one());
        assert_eq!(F7::parse("1/2").unwrap(), F7::from_i64(4));
        assert!(F7::parse("1/7").is_none());
        assert_eq!(F7::from_i64(5).neg(), F7::from_i64(2));
    }

    #[test]
    fn primality() {
        assert!(is_prime(32003));
        assert!(!is_prime(32001));
        assert!(!is_prime(1));
        assert!(is_prime(2));
    }
}
