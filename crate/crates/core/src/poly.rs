//! Sparse multivariate polynomials over a [`FieldSpec`].

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::scalar::{FieldElement, FieldSpec};

/// Variable names plus coefficient field. Position `i` is the variable
/// `x_{i+1}` of every formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
    field: FieldSpec,
}

impl Ring {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>, field: FieldSpec) -> Arc<Ring> {
        Arc::new(Ring { names: names.into_iter().map(Into::into).collect(), field })
    }

    /// `x1, ..., xs`.
    pub fn standard(vars: usize, field: FieldSpec) -> Arc<Ring> {
        Ring::new((1..=vars).map(|i| alloc::format!("x{i}")), field)
    }

    pub fn vars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Map key ordering monomials by grevlex, so the last map entry is the
/// leading term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Grevlex(MultiIndex);

impl Ord for Grevlex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp_grevlex(&other.0)
    }
}

impl PartialOrd for Grevlex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of `k[x_1, ..., x_s]`. No zero coefficients are ever stored.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<Grevlex, FieldElement>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Arc<Ring>, c: FieldElement) -> Self {
        Self::monomial(ring, MultiIndex::zero(ring.vars()), c)
    }

    pub fn from_integer(ring: &Arc<Ring>, c: i64) -> Self {
        Self::constant(ring, ring.field().from_integer(c))
    }

    /// The variable at 0-based position `var`.
    pub fn var(ring: &Arc<Ring>, var: usize) -> Self {
        Self::monomial(ring, MultiIndex::unit(ring.vars(), var), ring.field().one())
    }

    pub fn monomial(ring: &Arc<Ring>, exponents: MultiIndex, c: FieldElement) -> Self {
        assert_eq!(exponents.vars(), ring.vars(), "exponent length must match the ring");
        assert_eq!(c.spec(), ring.field(), "coefficient from a different field");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Grevlex(exponents), c);
        }
        Polynomial { ring: ring.clone(), terms }
    }

    /// Sum of terms; repeated monomials are combined.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (MultiIndex, FieldElement)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.vars(), ring.vars(), "exponent length must match the ring");
            p.add_term(m, &c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> FieldSpec {
        self.ring.field()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.0.is_zero())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &FieldElement)> + '_ {
        self.terms.iter().rev().map(|(m, c)| (&m.0, c))
    }

    pub fn coefficient(&self, m: &MultiIndex) -> FieldElement {
        self.terms.get(&Grevlex(m.clone())).cloned().unwrap_or_else(|| self.field().zero())
    }

    /// Leading monomial and coefficient under grevlex.
    pub fn leading_term(&self) -> Option<(&MultiIndex, &FieldElement)> {
        self.terms.iter().next_back().map(|(m, c)| (&m.0, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn same_ring(&self, other: &Polynomial) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::MixedRing)
        }
    }

    /// Add `c * x^m` in place.
    pub fn add_term(&mut self, m: MultiIndex, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        let key = Grevlex(m);
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let sum = &*existing + c;
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.0.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.0.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = Polynomial::zero(&self.ring);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.0.add(&b.0), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c * x^m * self`.
    pub fn mul_term(&self, m: &MultiIndex, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, a)| (Grevlex(k.0.add(m)), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.inverse().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Evaluate at a point of `k^s`.
    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.ring.vars() {
            return Err(Error::DimensionMismatch { expected: self.ring.vars(), found: point.len() });
        }
        if point.iter().any(|p| p.spec() != self.field()) {
            return Err(Error::MixedFieldSpec);
        }
        let mut acc = self.field().zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.0.exponents()) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitute `x_i -> images[i]`; the result lives in the images' ring.
    pub fn compose(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.vars() {
            return Err(Error::DimensionMismatch { expected: self.ring.vars(), found: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => self.ring.clone(),
        };
        if images.iter().any(|p| !Arc::ptr_eq(&p.ring, &target) && *p.ring != *target)
            || target.field() != self.field()
        {
            return Err(Error::MixedRing);
        }
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| alloc::vec![Polynomial::one(&target), p.clone()]).collect();
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.0.exponents().iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t = &t * &powers[i][e];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// `f(x + p)`: move the point `p` to the origin.
    pub fn translate(&self, point: &[FieldElement]) -> Result<Polynomial> {
        if point.len() != self.ring.vars() {
            return Err(Error::DimensionMismatch { expected: self.ring.vars(), found: point.len() });
        }
        let images: Vec<Polynomial> = point
            .iter()
            .enumerate()
            .map(|(i, p)| &Polynomial::var(&self.ring, i) + &Polynomial::constant(&self.ring, p.clone()))
            .collect();
        self.compose(&images)
    }

    /// Drop every term of total degree above `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.0.degree() <= max_degree).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Swap two variables.
    pub fn swap_vars(&self, i: usize, j: usize) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (Grevlex(m.0.swapped(i, j)), c.clone())).collect(),
        }
    }

    /// Multivariate division by a single polynomial under grevlex:
    /// `self = q * divisor + r` with no term of `r` divisible by the leading
    /// monomial of `divisor`. The remainder is canonical because one
    /// polynomial is a Gröbner basis of the ideal it generates.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check_ring(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(Error::DivisionByZero)?;
        let (lm, lc_inv) = (lm.clone(), lc.inverse()?);
        let mut quotient = Polynomial::zero(&self.ring);
        let mut rest = self.clone();
        let mut remainder = Polynomial::zero(&self.ring);
        while let Some((m, c)) = rest.terms.iter().next_back().map(|(m, c)| (m.0.clone(), c.clone())) {
            match m.checked_sub(&lm) {
                Some(shift) => {
                    let factor = &c * &lc_inv;
                    rest = &rest - &divisor.mul_term(&shift, &factor);
                    quotient.add_term(shift, &factor);
                }
                None => {
                    rest.terms.remove(&Grevlex(m.clone()));
                    remainder.terms.insert(Grevlex(m), c);
                }
            }
        }
        Ok((quotient, remainder))
    }

    /// Remainder of division by `modulus`.
    pub fn reduce_mod(&self, modulus: &Polynomial) -> Result<Polynomial> {
        if modulus.is_zero() {
            return Err(Error::ZeroModulus);
        }
        Ok(self.div_rem(modulus)?.1)
    }

    /// `self / divisor` when the division is exact.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Option<Polynomial>> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(if r.is_zero() { Some(q) } else { None })
    }

    /// Render with explicit variable names; parsing the output gives `self`
    /// back.
    pub fn to_string_with(&self, names: &[String]) -> String {
        let mut out = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let magnitude = if negative { -c } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = render_monomial(m, names);
            if mono.is_empty() {
                out.push_str(&magnitude.to_string());
            } else if magnitude.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&magnitude.to_string());
                out.push('*');
                out.push_str(&mono);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn render_monomial(m: &MultiIndex, names: &[String]) -> String {
    let mut out = String::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('*');
        }
        out.push_str(&names[i]);
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(self.ring.names()))
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

macro_rules! ring_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomials from different rings")
            }
        }
        impl $trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

ring_op!(Add, add, checked_add);
ring_op!(Sub, sub, checked_sub);
ring_op!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn ring2() -> Arc<Ring> {
        Ring::standard(2, FieldSpec::RATIONALS)
    }

    #[test]
    fn arithmetic_and_evaluation() {
        let r = ring2();
        let x1 = Polynomial::var(&r, 0);
        let x2 = Polynomial::var(&r, 1);
        assert_eq!(&(&x1 + &x2) * &(&x1 - &x2), parse_polynomial("x1^2 - x2^2", &r).unwrap());
        let cusp = parse_polynomial("x1^3 - x2^2", &r).unwrap();
        let one = r.field().one();
        let zero = r.field().zero();
        assert!(cusp.evaluate(&[one.clone(), one.clone()]).unwrap().is_zero());
        assert!(cusp.evaluate(&[zero.clone(), zero]).unwrap().is_zero());
        assert_eq!(cusp.total_degree(), Some(3));
        assert_eq!(cusp.to_string(), "x1^3 - x2^2");
        assert!(cusp.evaluate(&[one]).is_err());
    }

    #[test]
    fn mixed_rings_are_rejected() {
        let a = Polynomial::var(&ring2(), 0);
        let b = Polynomial::var(&Ring::standard(3, FieldSpec::RATIONALS), 0);
        assert_eq!(a.checked_add(&b), Err(Error::MixedRing));
        let c = Polynomial::var(&Ring::standard(2, FieldSpec::new(5).unwrap()), 0);
        assert_eq!(a.checked_mul(&c), Err(Error::MixedRing));
        // structurally equal rings built separately are the same ring
        assert!(a.checked_add(&Polynomial::var(&ring2(), 1)).is_ok());
    }

    #[test]
    fn division() {
        let r = ring2();
        let f = parse_polynomial("x1^3 - x2^2", &r).unwrap();
        let g = parse_polynomial("27*x1^6", &r).unwrap();
        assert!(!g.reduce_mod(&f).unwrap().is_zero());
        let h = &f * &parse_polynomial("x1*x2 - 4", &r).unwrap();
        assert_eq!(h.exact_div(&f).unwrap(), Some(parse_polynomial("x1*x2 - 4", &r).unwrap()));
        assert_eq!(g.reduce_mod(&Polynomial::zero(&r)), Err(Error::ZeroModulus));
    }

    #[test]
    fn translation() {
        let r = ring2();
        let f = parse_polynomial("x1^3 - x2^2", &r).unwrap();
        let one = r.field().one();
        let t = f.translate(&[one.clone(), one]).unwrap();
        assert_eq!(t, parse_polynomial("x1^3 + 3*x1^2 + 3*x1 - x2^2 - 2*x2", &r).unwrap());
        assert_eq!(t.truncate(1), parse_polynomial("3*x1 - 2*x2", &r).unwrap());
    }

    #[test]
    fn printing() {
        let r = Ring::standard(4, FieldSpec::RATIONALS);
        let f = parse_polynomial("x2^2 - x1*x3", &r).unwrap();
        assert_eq!(f.to_string(), "x2^2 - x1*x3");
        let g = parse_polynomial("-1/2*x1 + 3 - x4^3", &r).unwrap();
        assert_eq!(g.to_string(), "-x4^3 - 1/2*x1 + 3");
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
        let r5 = Ring::standard(2, FieldSpec::new(5).unwrap());
        assert_eq!(parse_polynomial("-2*x2", &r5).unwrap().to_string(), "3*x2");
    }
}
