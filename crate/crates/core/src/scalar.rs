//! Exact coefficient fields: the rationals and prime fields `F_p`.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Characteristic of the coefficient field; `0` selects the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FieldSpec {
    characteristic: u64,
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { characteristic: 0 };

    /// Accepts `0` or a prime below `2^63`.
    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic == 0 || (characteristic < (1 << 63) && is_prime(characteristic)) {
            Ok(FieldSpec { characteristic })
        } else {
            Err(Error::NotPrime(characteristic))
        }
    }

    pub fn rationals() -> Self {
        Self::RATIONALS
    }

    pub fn characteristic(self) -> u64 {
        self.characteristic
    }

    pub fn is_rationals(self) -> bool {
        self.characteristic == 0
    }

    pub fn zero(self) -> FieldElement {
        self.from_integer(0)
    }

    pub fn one(self) -> FieldElement {
        self.from_integer(1)
    }

    pub fn from_integer(self, value: i64) -> FieldElement {
        match self.characteristic {
            0 => FieldElement::Rational(BigRational::from_integer(BigInt::from(value))),
            p => {
                let r = (value as i128).rem_euclid(p as i128) as u64;
                FieldElement::Residue { value: r, modulus: p }
            }
        }
    }

    pub fn from_bigint(self, value: &BigInt) -> FieldElement {
        match self.characteristic {
            0 => FieldElement::Rational(BigRational::from_integer(value.clone())),
            p => {
                let m = BigInt::from(p);
                let r = value.mod_floor(&m).to_u64().expect("residue fits in u64");
                FieldElement::Residue { value: r, modulus: p }
            }
        }
    }

    pub fn from_biguint(self, value: &BigUint) -> FieldElement {
        self.from_bigint(&BigInt::from_biguint(Sign::Plus, value.clone()))
    }

    /// `numerator / denominator` mapped into the field.
    pub fn from_fraction(self, numerator: &BigInt, denominator: &BigInt) -> Result<FieldElement> {
        let den = self.from_bigint(denominator);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.from_bigint(numerator).checked_div(&den)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => f.write_str("QQ"),
            p => write!(f, "GF({p})"),
        }
    }
}

/// An element of a [`FieldSpec`] in canonical form: a reduced fraction with
/// positive denominator, or the least nonnegative residue.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl FieldElement {
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldElement::Rational(_) => FieldSpec::RATIONALS,
            FieldElement::Residue { modulus, .. } => FieldSpec { characteristic: *modulus },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_one(),
            FieldElement::Residue { value, .. } => *value == 1,
        }
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_negative(),
            FieldElement::Residue { .. } => false,
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => Ok(FieldElement::Rational(a + b)),
            (
                FieldElement::Residue { value: a, modulus: p },
                FieldElement::Residue { value: b, modulus: q },
            ) if p == q => {
                let s = a + b;
                Ok(FieldElement::Residue { value: if s >= *p { s - p } else { s }, modulus: *p })
            }
            _ => Err(Error::MixedFieldSpec),
        }
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(&-rhs)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => Ok(FieldElement::Rational(a * b)),
            (
                FieldElement::Residue { value: a, modulus: p },
                FieldElement::Residue { value: b, modulus: q },
            ) if p == q => Ok(FieldElement::Residue { value: mul_mod(*a, *b, *p), modulus: *p }),
            _ => Err(Error::MixedFieldSpec),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldElement::Rational(q) => FieldElement::Rational(q.recip()),
            FieldElement::Residue { value, modulus } => FieldElement::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if self.spec() != rhs.spec() {
            return Err(Error::MixedFieldSpec);
        }
        self.checked_mul(&rhs.inverse()?)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.spec().one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElement::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

// Operator forms panic on mixed fields; callers that cannot rule that out use
// the `checked_*` methods.
impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.checked_add(rhs).expect("mixed field elements")
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.checked_sub(rhs).expect("mixed field elements")
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.checked_mul(rhs).expect("mixed field elements")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(q) => FieldElement::Rational(-q),
            FieldElement::Residue { value, modulus } => FieldElement::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> FieldElement {
        FieldSpec::RATIONALS.from_fraction(&BigInt::from(n), &BigInt::from(d)).unwrap()
    }

    #[test]
    fn rational_sum() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
        assert_eq!(q(5, 6).to_string(), "5/6");
        assert_eq!(q(-4, 2).to_string(), "-2");
    }

    #[test]
    fn residue_from_integer() {
        let f5 = FieldSpec::new(5).unwrap();
        assert_eq!(f5.from_integer(6), f5.one());
        assert_eq!(f5.from_integer(-1).to_string(), "4");
    }

    #[test]
    fn binomial_four_two_vanishes_in_char_two() {
        // (x+t)^4 over F_2 expands by repeated squaring to x^4 + t^4, so the
        // t^2 coefficient is zero. Count it by expanding the product directly.
        let mut coeffs = [1i64, 0, 0, 0, 0];
        for _ in 0..4 {
            let mut next = [0i64; 5];
            for (k, c) in coeffs.iter().enumerate() {
                next[k] += c;
                if k + 1 < 5 {
                    next[k + 1] += c;
                }
            }
            coeffs = next;
        }
        let f2 = FieldSpec::new(2).unwrap();
        assert!(f2.from_integer(coeffs[2]).is_zero());
        assert!(f2.from_integer(6).is_zero());
    }

    #[test]
    fn errors() {
        assert_eq!(FieldSpec::new(4), Err(Error::NotPrime(4)));
        assert_eq!(q(1, 1).inverse(), Ok(q(1, 1)));
        assert_eq!(q(0, 1).inverse(), Err(Error::DivisionByZero));
        let f7 = FieldSpec::new(7).unwrap();
        assert_eq!(q(1, 2).checked_add(&f7.one()), Err(Error::MixedFieldSpec));
        assert_eq!(f7.one().checked_div(&f7.zero()), Err(Error::DivisionByZero));
        assert_eq!(
            f7.from_fraction(&BigInt::from(1), &BigInt::from(14)),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn primality() {
        let primes: alloc::vec::Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751));
    }

    fn element(spec: FieldSpec) -> impl Strategy<Value = FieldElement> {
        (-50i64..50, 1i64..20).prop_map(move |(n, d)| {
            let d = if spec.characteristic() != 0 && (d as u64).is_multiple_of(spec.characteristic()) { 1 } else { d };
            spec.from_fraction(&BigInt::from(n), &BigInt::from(d)).unwrap()
        })
    }

    fn any_spec() -> impl Strategy<Value = FieldSpec> {
        prop_oneof![Just(0u64), Just(2), Just(3), Just(5), Just(101)].prop_map(|c| FieldSpec::new(c).unwrap())
    }

    proptest! {
        #[test]
        fn field_axioms(
            (a, b, c) in any_spec().prop_flat_map(|s| (element(s), element(s), element(s)))
        ) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inverse().unwrap()).is_one());
            }
        }

        #[test]
        fn characteristic_kills(p in prop_oneof![Just(2u64), Just(3), Just(5), Just(7)], n in -100i64..100) {
            let spec = FieldSpec::new(p).unwrap();
            let x = spec.from_integer(n);
            prop_assert!((&spec.from_integer(p as i64) * &x).is_zero());
        }

        #[test]
        fn canonical_form_is_unique(n in -40i64..40, d in 1i64..40, k in 1i64..6) {
            prop_assert_eq!(q(n, d), q(n * k, d * k));
            let f7 = FieldSpec::new(7).unwrap();
            prop_assert_eq!(f7.from_integer(n), f7.from_integer(n + 7 * k));
        }
    }
}
