//! Coefficient fields: arbitrary-precision rationals (the default) and a
//! word-sized prime field used as a fast path for large Groebner runs.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact field operations as used by the polynomial and Groebner engines.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn from_int(n: i64) -> Self;

    /// Short name recorded in reports ("q" or "fp:<p>").
    fn field_name(&self) -> String;
}

/// Arbitrary-precision rational coefficient.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn from_frac(num: i64, den: i64) -> Self {
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Field for Rat {
    fn zero() -> Self {
        Rat(BigRational::zero())
    }
    fn one() -> Self {
        Rat(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn add(&self, other: &Self) -> Self {
        Rat(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Rat(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Rat(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        Rat(-self.0.clone())
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Rat(self.0.recip())
    }
    fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }
    fn field_name(&self) -> String {
        "q".into()
    }
}

/// Element of F_p for a word-sized prime p.
///
/// `p == 0` marks the neutral constants produced by `zero`/`one` before they
/// meet a real element; binary operations unify the modulus.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Fp {
    pub v: u64,
    pub p: u64,
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Self {
        assert!(p >= 2, "modulus must be at least 2");
        let m = v.rem_euclid(p as i64) as u64;
        Fp { v: m, p }
    }

    fn modulus(&self, other: &Self) -> u64 {
        match (self.p, other.p) {
            (0, 0) => 0,
            (0, p) | (p, 0) => p,
            (p, q) => {
                assert_eq!(p, q, "mixed prime fields");
                p
            }
        }
    }

    fn red(v: u64, p: u64) -> u64 {
        if p == 0 {
            v
        } else {
            v % p
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Field for Fp {
    fn zero() -> Self {
        Fp { v: 0, p: 0 }
    }
    fn one() -> Self {
        Fp { v: 1, p: 0 }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn is_one(&self) -> bool {
        self.v == 1
    }
    fn add(&self, other: &Self) -> Self {
        let p = self.modulus(other);
        Fp { v: Self::red(self.v + other.v, p), p }
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        let p = self.modulus(other);
        let v = if p == 0 {
            self.v * other.v
        } else {
            ((self.v as u128 * other.v as u128) % p as u128) as u64
        };
        Fp { v, p }
    }
    fn neg(&self) -> Self {
        if self.v == 0 {
            *self
        } else {
            assert!(self.p != 0, "cannot negate a modulus-free nonzero constant");
            Fp { v: self.p - self.v, p: self.p }
        }
    }
    fn inv(&self) -> Self {
        assert!(self.v != 0, "inverse of zero");
        if self.v == 1 {
            return *self;
        }
        let p = self.p;
        assert!(p != 0, "cannot invert a modulus-free constant");
        // extended Euclid on (v, p)
        let (mut r0, mut r1) = (self.v as i128, p as i128);
        let (mut s0, mut s1) = (1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        assert_eq!(r0, 1, "element not invertible: modulus not prime?");
        Fp::new(s0.rem_euclid(p as i128) as i64, p)
    }
    fn from_int(n: i64) -> Self {
        // modulus attaches on first contact with a real element
        if n >= 0 {
            Fp { v: n as u64, p: 0 }
        } else {
            panic!("Fp::from_int of a negative constant needs a modulus; use Fp::new")
        }
    }
    fn field_name(&self) -> String {
        format!("fp:{}", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_display() {
        assert_eq!(Rat::from_frac(3, 2).to_string(), "3/2");
        assert_eq!(Rat::from_int(-4).to_string(), "-4");
    }

    #[test]
    fn fp_inverse() {
        let p = 32003;
        for v in [1i64, 2, 5, 31000] {
            let x = Fp::new(v, p);
            assert!(x.mul(&x.inv()).is_one());
        }
    }

    #[test]
    fn fp_neutral_unification() {
        let x = Fp::new(7, 11);
        assert_eq!(Fp::one().mul(&x), x);
        assert_eq!(Fp::zero().add(&x), x);
        assert_eq!(x.sub(&x), Fp::new(0, 11));
    }
}
