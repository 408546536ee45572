//! Hasse (divided-power) derivatives.
//!
//! `hasse(f, a)` is the coefficient of `t^a` in `f(x + t)`. Every binomial
//! is formed in the integers and only then mapped into the field, so the
//! same code computes `(1/a!) d^a f / dx^a` in characteristic zero and the
//! Taylor coefficient in characteristic `p`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::binomial;

use crate::index::MultiIndex;
use crate::poly::{Polynomial, Ring};
use crate::scalar::FieldSpec;

/// `prod_i binom(top_i, bottom_i)` mapped into `field`.
pub fn multi_binomial(top: &MultiIndex, bottom: &MultiIndex, field: FieldSpec) -> crate::scalar::FieldElement {
    let mut acc = BigUint::from(1u32);
    for (&t, &b) in top.exponents().iter().zip(bottom.exponents()) {
        if b > t {
            return field.zero();
        }
        acc *= binomial(BigUint::from(t), BigUint::from(b));
    }
    field.from_biguint(&acc)
}

pub fn hasse_derivative(f: &Polynomial, alpha: &MultiIndex) -> Polynomial {
    assert_eq!(alpha.vars(), f.ring().vars(), "multi-index length must match the ring");
    let field = f.field();
    let mut out = Polynomial::zero(f.ring());
    for (gamma, c) in f.terms() {
        if let Some(rest) = gamma.checked_sub(alpha) {
            let b = multi_binomial(gamma, alpha, field);
            out.add_term(rest, &(c * &b));
        }
    }
    out
}

/// Brute-force reference for Hasse derivatives: expand `f(x + t) - f(x)` in
/// `2s` variables and read off the `t^a` coefficients for `1 <= |a| <= n`.
///
/// Zero coefficients are left out of the map.
pub fn taylor_shift_oracle(f: &Polynomial, n: u32) -> BTreeMap<MultiIndex, Polynomial> {
    let s = f.ring().vars();
    let field = f.field();
    let names = f
        .ring()
        .names()
        .iter()
        .cloned()
        .chain((1..=s).map(|i| alloc::format!("__t{i}")));
    let doubled = Ring::new(names, field);
    let x = |i: usize| Polynomial::var(&doubled, i);
    let shifted: Vec<Polynomial> = (0..s).map(|i| &x(i) + &x(s + i)).collect();
    let plain: Vec<Polynomial> = (0..s).map(x).collect();
    let difference = &f.compose(&shifted).expect("same field") - &f.compose(&plain).expect("same field");

    let mut out: BTreeMap<MultiIndex, Polynomial> = BTreeMap::new();
    for (m, c) in difference.terms() {
        let (xs, ts) = m.exponents().split_at(s);
        let t = MultiIndex::new(ts.to_vec());
        if t.degree() == 0 || t.degree() > n {
            continue;
        }
        out.entry(t)
            .or_insert_with(|| Polynomial::zero(f.ring()))
            .add_term(MultiIndex::new(xs.to_vec()), c);
    }
    out.retain(|_, p| !p.is_zero());
    out
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::index::enumerate_indices;
    use crate::parse::parse_polynomial;
    use alloc::sync::Arc;
    use proptest::prelude::*;

    fn mi(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    #[test]
    fn cusp_second_derivative() {
        let r = Ring::standard(2, FieldSpec::RATIONALS);
        let f = parse_polynomial("x1^3 - x2^2", &r).unwrap();
        assert_eq!(hasse_derivative(&f, &mi(&[2, 0])), parse_polynomial("3*x1", &r).unwrap());
        assert_eq!(hasse_derivative(&f, &mi(&[0, 0])), f);
        assert_eq!(hasse_derivative(&f, &mi(&[0, 2])), parse_polynomial("-1", &r).unwrap());
        assert!(hasse_derivative(&f, &mi(&[1, 1])).is_zero());
    }

    #[test]
    fn vanishing_binomial_in_char_two() {
        let r = Ring::standard(1, FieldSpec::new(2).unwrap());
        let f = parse_polynomial("x1^4", &r).unwrap();
        assert!(hasse_derivative(&f, &mi(&[2])).is_zero());
        assert!(!taylor_shift_oracle(&f, 4).contains_key(&mi(&[2])));
        assert_eq!(hasse_derivative(&f, &mi(&[4])), Polynomial::one(&r));
    }

    #[test]
    fn oracle_examples() {
        let r = Ring::standard(2, FieldSpec::RATIONALS);
        let p = |t: &str| parse_polynomial(t, &r).unwrap();
        let cusp = taylor_shift_oracle(&p("x1^3 - x2^2"), 2);
        let expected: BTreeMap<_, _> = [
            (mi(&[1, 0]), p("3*x1^2")),
            (mi(&[0, 1]), p("-2*x2")),
            (mi(&[2, 0]), p("3*x1")),
            (mi(&[0, 2]), p("-1")),
        ]
        .into_iter()
        .collect();
        assert_eq!(cusp, expected);
        assert!(taylor_shift_oracle(&p("7"), 3).is_empty());
        let xy = taylor_shift_oracle(&p("x1*x2"), 2);
        let expected: BTreeMap<_, _> =
            [(mi(&[1, 0]), p("x2")), (mi(&[0, 1]), p("x1")), (mi(&[1, 1]), p("1"))].into_iter().collect();
        assert_eq!(xy, expected);
    }

    pub(crate) fn random_poly(
        vars: usize,
        max_deg: u32,
        spec: FieldSpec,
    ) -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec((proptest::collection::vec(0..=max_deg, vars), -6i64..7), 0..7).prop_map(
            move |terms| {
                let r: Arc<Ring> = Ring::standard(vars, spec);
                Polynomial::from_terms(
                    &r,
                    terms
                        .into_iter()
                        .filter(|(e, _)| e.iter().sum::<u32>() <= max_deg)
                        .map(|(e, c)| (MultiIndex::new(e), spec.from_integer(c))),
                )
            },
        )
    }

    fn spec() -> impl Strategy<Value = FieldSpec> {
        prop_oneof![Just(0u64), Just(2), Just(3), Just(5)].prop_map(|c| FieldSpec::new(c).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn hasse_matches_taylor_oracle(
            (f, n) in (spec(), 1usize..=3).prop_flat_map(|(sp, s)| (random_poly(s, 5, sp), 1u32..=3))
        ) {
            let oracle = taylor_shift_oracle(&f, n);
            for alpha in enumerate_indices(f.ring().vars(), 1, n) {
                let expected = oracle.get(&alpha).cloned().unwrap_or_else(|| Polynomial::zero(f.ring()));
                prop_assert_eq!(hasse_derivative(&f, &alpha), expected);
            }
        }

        #[test]
        fn hasse_leibniz(
            (f, g, alpha) in (spec(), 1usize..=3).prop_flat_map(|(sp, s)| (
                random_poly(s, 4, sp),
                random_poly(s, 4, sp),
                proptest::collection::vec(0u32..=3, s),
            ))
        ) {
            let alpha = MultiIndex::new(alpha);
            let lhs = hasse_derivative(&(&f * &g), &alpha);
            let mut rhs = Polynomial::zero(f.ring());
            for beta in enumerate_indices(alpha.vars(), 0, alpha.degree()) {
                if let Some(gamma) = alpha.checked_sub(&beta) {
                    rhs = &rhs + &(&hasse_derivative(&f, &beta) * &hasse_derivative(&g, &gamma));
                }
            }
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn hasse_composition(
            (f, a, b) in (spec(), 1usize..=3).prop_flat_map(|(sp, s)| (
                random_poly(s, 6, sp),
                proptest::collection::vec(0u32..=2, s),
                proptest::collection::vec(0u32..=2, s),
            ))
        ) {
            let (a, b) = (MultiIndex::new(a), MultiIndex::new(b));
            let sum = a.add(&b);
            let lhs = hasse_derivative(&hasse_derivative(&f, &b), &a);
            let rhs = hasse_derivative(&f, &sum).scale(&multi_binomial(&sum, &a, f.field()));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
