//! The order-`n` Jacobian matrix of an ideal.
//!
//! For a generator `f` and a shift `beta` with `|beta| <= n-1`, the
//! relation `F_beta = (d x)^beta * d(f)` has coefficient
//! `hasse(f, alpha - beta)` at the basis element `(d x)^alpha`, where the
//! coefficient is taken to be zero unless `alpha >= beta` componentwise and
//! `alpha != beta`. Stacking these coefficient vectors for every generator
//! and every shift gives an `rM x (N-1)` matrix.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hasse::hasse_derivative;
use crate::index::{DimensionSet, MultiIndex};
use crate::poly::{Polynomial, Ring};

/// Element of the free module `A^{N-1}` with one coordinate per
/// `(d x)^alpha`, `1 <= |alpha| <= n`. Zero components are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleVector {
    ring: Arc<Ring>,
    order: u32,
    components: BTreeMap<MultiIndex, Polynomial>,
}

impl ModuleVector {
    pub fn zero(ring: &Arc<Ring>, order: u32) -> Self {
        ModuleVector { ring: ring.clone(), order, components: BTreeMap::new() }
    }

    /// Build from `(alpha, coefficient)` pairs; repeated labels are summed.
    pub fn from_components(
        ring: &Arc<Ring>,
        order: u32,
        components: impl IntoIterator<Item = (MultiIndex, Polynomial)>,
    ) -> Result<Self> {
        let mut v = Self::zero(ring, order);
        for (alpha, p) in components {
            if alpha.vars() != ring.vars() {
                return Err(Error::DimensionMismatch { expected: ring.vars(), found: alpha.vars() });
            }
            if alpha.degree() == 0 || alpha.degree() > order {
                return Err(Error::AmbientMismatch);
            }
            if !p.same_ring(&Polynomial::zero(ring)) {
                return Err(Error::MixedRing);
            }
            v.add_component(alpha, &p);
        }
        Ok(v)
    }

    /// `coefficient * e_alpha`.
    pub fn basis(ring: &Arc<Ring>, order: u32, alpha: MultiIndex, coefficient: Polynomial) -> Result<Self> {
        Self::from_components(ring, order, [(alpha, coefficient)])
    }

    fn add_component(&mut self, alpha: MultiIndex, p: &Polynomial) {
        if p.is_zero() {
            return;
        }
        let sum = match self.components.get(&alpha) {
            Some(existing) => existing + p,
            None => p.clone(),
        };
        if sum.is_zero() {
            self.components.remove(&alpha);
        } else {
            self.components.insert(alpha, sum);
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, alpha: &MultiIndex) -> Polynomial {
        self.components.get(alpha).cloned().unwrap_or_else(|| Polynomial::zero(&self.ring))
    }

    /// Nonzero components in column order.
    pub fn components(&self) -> impl Iterator<Item = (&MultiIndex, &Polynomial)> {
        self.components.iter()
    }

    fn check_ambient(&self, other: &ModuleVector) -> Result<()> {
        if self.order != other.order || *self.ring != *other.ring {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &ModuleVector) -> Result<ModuleVector> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (alpha, p) in &other.components {
            out.add_component(alpha.clone(), p);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &ModuleVector) -> Result<ModuleVector> {
        self.checked_add(&other.scale(&Polynomial::from_integer(&self.ring, -1)))
    }

    /// Multiply every component by `h`.
    pub fn scale(&self, h: &Polynomial) -> ModuleVector {
        let mut out = ModuleVector::zero(&self.ring, self.order);
        for (alpha, p) in &self.components {
            out.add_component(alpha.clone(), &(p * h));
        }
        out
    }

    /// Dense coordinates in column order (`DimensionSet::column_labels`).
    pub fn to_dense(&self) -> Vec<Polynomial> {
        DimensionSet::new(self.ring.vars(), self.order, 1)
            .column_labels()
            .iter()
            .map(|alpha| self.component(alpha))
            .collect()
    }

    pub fn from_dense(ring: &Arc<Ring>, order: u32, dense: &[Polynomial]) -> Result<ModuleVector> {
        let labels = DimensionSet::new(ring.vars(), order, 1).column_labels();
        if labels.len() != dense.len() {
            return Err(Error::DimensionMismatch { expected: labels.len(), found: dense.len() });
        }
        Self::from_components(ring, order, labels.into_iter().zip(dense.iter().cloned()))
    }
}

/// Serialized as `[[alpha, "poly"], ...]` in column order.
#[cfg(feature = "serde")]
impl serde::Serialize for ModuleVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.components.len()))?;
        for pair in &self.components {
            seq.serialize_element(&pair)?;
        }
        seq.end()
    }
}

/// `F_beta` for the generator `f`.
pub fn build_f_beta(f: &Polynomial, beta: &MultiIndex, n: u32) -> Result<ModuleVector> {
    if n == 0 {
        return Err(Error::InvalidOrder);
    }
    if beta.vars() != f.ring().vars() {
        return Err(Error::DimensionMismatch { expected: f.ring().vars(), found: beta.vars() });
    }
    if beta.degree() >= n {
        return Err(Error::DegreeRange { shift_degree: beta.degree(), order: n });
    }
    let mut v = ModuleVector::zero(f.ring(), n);
    for alpha in DimensionSet::new(f.ring().vars(), n, 1).column_labels() {
        if let Some(diff) = alpha.checked_sub(beta) {
            if !diff.is_zero() {
                let entry = hasse_derivative(f, &diff);
                v.add_component(alpha, &entry);
            }
        }
    }
    Ok(v)
}

/// Row label: 0-based generator index and the shift `beta`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RowLabel {
    pub generator: usize,
    pub shift: MultiIndex,
}

/// `Jac_n(f_1, ..., f_r)`: rows grouped by generator in input order, shifts
/// inside a group and columns both in column order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobianMatrix {
    dims: DimensionSet,
    generators: Vec<Polynomial>,
    row_labels: Vec<RowLabel>,
    col_labels: Vec<MultiIndex>,
    entries: Vec<Vec<Polynomial>>,
}

impl JacobianMatrix {
    pub fn dims(&self) -> &DimensionSet {
        &self.dims
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.generators[0].ring()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn row_labels(&self) -> &[RowLabel] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[MultiIndex] {
        &self.col_labels
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[row][col]
    }

    pub fn nrows(&self) -> usize {
        self.entries.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn row_vector(&self, row: usize) -> ModuleVector {
        ModuleVector::from_dense(self.ring(), self.dims.n, &self.entries[row]).expect("row has matrix width")
    }

    /// Rows as module vectors `F_beta^i`, in row order.
    pub fn relations(&self) -> Vec<ModuleVector> {
        (0..self.nrows()).map(|i| self.row_vector(i)).collect()
    }

    pub fn col_index(&self, alpha: &MultiIndex) -> Option<usize> {
        self.col_labels.binary_search(alpha).ok()
    }
}

pub fn build_jacobian(generators: &[Polynomial], n: u32) -> Result<JacobianMatrix> {
    let first = generators.first().ok_or(Error::EmptyIdeal)?;
    if n == 0 {
        return Err(Error::InvalidOrder);
    }
    if generators.iter().any(|g| !g.same_ring(first)) {
        return Err(Error::MixedRing);
    }
    let dims = DimensionSet::new(first.ring().vars(), n, generators.len());
    let col_labels = dims.column_labels();
    let shifts = dims.shift_labels();
    let mut row_labels = Vec::with_capacity(dims.rows());
    let mut entries = Vec::with_capacity(dims.rows());
    for (i, f) in generators.iter().enumerate() {
        for beta in &shifts {
            let row = build_f_beta(f, beta, n)?;
            entries.push(col_labels.iter().map(|alpha| row.component(alpha)).collect());
            row_labels.push(RowLabel { generator: i, shift: beta.clone() });
        }
    }
    Ok(JacobianMatrix { dims, generators: generators.to_vec(), row_labels, col_labels, entries })
}

/// Result of [`check_echelon`].
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EchelonReport {
    pub holds: bool,
    pub pivot_var: usize,
    /// `(row, column)` of every verified pivot, in row order.
    pub pivots: Vec<(usize, usize)>,
    /// First `(row, column)` that broke the pattern.
    pub failure: Option<(usize, usize)>,
}

/// Check that row `beta` has the partial `hasse(f, e_var)` at column
/// `beta + e_var` and only zeros before it.
pub fn check_echelon(jac: &JacobianMatrix, pivot_var: usize) -> Result<EchelonReport> {
    if jac.generators.len() != 1 {
        return Err(Error::MultiGenerator(jac.generators.len()));
    }
    let s = jac.dims.s;
    if pivot_var >= s {
        return Err(Error::DimensionMismatch { expected: s, found: pivot_var });
    }
    let f = &jac.generators[0];
    let unit = MultiIndex::unit(s, pivot_var);
    let partial = hasse_derivative(f, &unit);
    let mut report = EchelonReport { holds: true, pivot_var, pivots: Vec::new(), failure: None };
    if partial.is_zero() {
        report.holds = false;
        report.failure = Some((0, jac.col_index(&unit).expect("unit column")));
        return Ok(report);
    }
    for (row, label) in jac.row_labels.iter().enumerate() {
        let pivot_col = jac.col_index(&label.shift.add(&unit)).expect("pivot column exists");
        let before = (0..pivot_col).find(|&c| !jac.entries[row][c].is_zero());
        if let Some(c) = before {
            report.holds = false;
            report.failure = Some((row, c));
            return Ok(report);
        }
        if jac.entries[row][pivot_col] != partial {
            report.holds = false;
            report.failure = Some((row, pivot_col));
            return Ok(report);
        }
        report.pivots.push((row, pivot_col));
    }
    // pivots must move strictly right for a row echelon form
    if report.pivots.windows(2).any(|w| w[0].1 >= w[1].1) {
        report.holds = false;
    }
    Ok(report)
}

/// True when entries depend only on `alpha - beta` within each generator.
pub fn diagonal_invariance(jac: &JacobianMatrix) -> bool {
    let mut seen: BTreeMap<(usize, Vec<i64>), &Polynomial> = BTreeMap::new();
    for (row, label) in jac.row_labels.iter().enumerate() {
        for (col, alpha) in jac.col_labels.iter().enumerate() {
            let diff: Vec<i64> = alpha
                .exponents()
                .iter()
                .zip(label.shift.exponents())
                .map(|(&a, &b)| a as i64 - b as i64)
                .collect();
            let entry = &jac.entries[row][col];
            match seen.get(&(label.generator, diff.clone())) {
                Some(prev) if *prev != entry => return false,
                Some(_) => {}
                None => {
                    seen.insert((label.generator, diff), entry);
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hasse::taylor_shift_oracle;
    use crate::parse::parse_polynomial;
    use crate::scalar::FieldSpec;
    use alloc::vec;
    use proptest::prelude::*;

    fn mi(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    fn cusp(spec: FieldSpec) -> Polynomial {
        parse_polynomial("x1^3 - x2^2", &Ring::standard(2, spec)).unwrap()
    }

    fn vector(f: &Polynomial, n: u32, comps: &[(&[u32], &str)]) -> ModuleVector {
        let r = f.ring();
        ModuleVector::from_components(r, n, comps.iter().map(|(a, p)| (mi(a), parse_polynomial(p, r).unwrap())))
            .unwrap()
    }

    #[test]
    fn cusp_relations() {
        let f = cusp(FieldSpec::RATIONALS);
        assert_eq!(
            build_f_beta(&f, &mi(&[0, 0]), 2).unwrap(),
            vector(&f, 2, &[(&[1, 0], "3*x1^2"), (&[0, 1], "-2*x2"), (&[2, 0], "3*x1"), (&[0, 2], "-1")])
        );
        assert_eq!(
            build_f_beta(&f, &mi(&[1, 0]), 2).unwrap(),
            vector(&f, 2, &[(&[2, 0], "3*x1^2"), (&[1, 1], "-2*x2")])
        );
        assert_eq!(
            build_f_beta(&f, &mi(&[0, 1]), 2).unwrap(),
            vector(&f, 2, &[(&[1, 1], "3*x1^2"), (&[0, 2], "-2*x2")])
        );
        assert_eq!(
            build_f_beta(&f, &mi(&[2, 0]), 2),
            Err(Error::DegreeRange { shift_degree: 2, order: 2 })
        );
    }

    #[test]
    fn cusp_matrices() {
        let f = cusp(FieldSpec::RATIONALS);
        let jac = build_jacobian(std::slice::from_ref(&f), 2).unwrap();
        assert_eq!((jac.nrows(), jac.ncols()), (3, 5));
        let text: Vec<Vec<_>> =
            jac.entries().iter().map(|row| row.iter().map(|p| p.to_string()).collect()).collect();
        assert_eq!(
            text,
            vec![
                vec!["3*x1^2", "-2*x2", "3*x1", "0", "-1"],
                vec!["0", "0", "3*x1^2", "-2*x2", "0"],
                vec!["0", "0", "0", "3*x1^2", "-2*x2"],
            ]
        );
        let jac1 = build_jacobian(&[f], 1).unwrap();
        let text: Vec<_> = jac1.entries()[0].iter().map(|p| p.to_string()).collect();
        assert_eq!(text, ["3*x1^2", "-2*x2"]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(build_jacobian(&[], 2), Err(Error::EmptyIdeal));
        let f = cusp(FieldSpec::RATIONALS);
        let g = cusp(FieldSpec::new(5).unwrap());
        assert_eq!(build_jacobian(&[f.clone(), g], 2), Err(Error::MixedRing));
        assert_eq!(build_jacobian(&[f], 0), Err(Error::InvalidOrder));
    }

    #[test]
    fn echelon_examples() {
        let f = cusp(FieldSpec::RATIONALS);
        let report = check_echelon(&build_jacobian(std::slice::from_ref(&f), 2).unwrap(), 0).unwrap();
        assert!(report.holds);
        assert_eq!(report.pivots, [(0, 0), (1, 2), (2, 3)]);
        let report = check_echelon(&build_jacobian(std::slice::from_ref(&f), 3).unwrap(), 0).unwrap();
        assert!(report.holds);
        assert_eq!(report.pivots.len(), 6);

        let r = f.ring();
        let flat = parse_polynomial("x2^2", r).unwrap();
        assert!(!check_echelon(&build_jacobian(std::slice::from_ref(&flat), 2).unwrap(), 0).unwrap().holds);
        assert_eq!(
            check_echelon(&build_jacobian(&[f.clone(), flat], 2).unwrap(), 0),
            Err(Error::MultiGenerator(2))
        );
    }

    #[test]
    fn diagonal_examples() {
        let f = cusp(FieldSpec::RATIONALS);
        let jac = build_jacobian(std::slice::from_ref(&f), 2).unwrap();
        assert!(diagonal_invariance(&jac));
        assert_eq!(jac.entry(0, 0), jac.entry(1, 2));
        assert!(diagonal_invariance(&build_jacobian(&[f], 3).unwrap()));
    }

    #[test]
    fn module_vector_algebra() {
        let f = cusp(FieldSpec::RATIONALS);
        let r = f.ring();
        let a = vector(&f, 2, &[(&[1, 0], "x1"), (&[0, 2], "x2")]);
        let b = vector(&f, 2, &[(&[1, 0], "x1")]);
        assert_eq!(a.checked_sub(&b).unwrap(), vector(&f, 2, &[(&[0, 2], "x2")]));
        assert!(a.checked_sub(&a).unwrap().is_zero());
        assert_eq!(ModuleVector::from_dense(r, 2, &a.to_dense()).unwrap(), a);
        assert_eq!(a.checked_add(&ModuleVector::zero(r, 3)), Err(Error::AmbientMismatch));
        assert!(ModuleVector::basis(r, 2, mi(&[0, 0]), Polynomial::one(r)).is_err());
    }

    fn generator() -> impl Strategy<Value = Polynomial> {
        (prop_oneof![Just(0u64), Just(2), Just(3), Just(5)], 1usize..=3).prop_flat_map(|(c, s)| {
            let spec = FieldSpec::new(c).unwrap();
            proptest::collection::vec((proptest::collection::vec(0u32..=4, s), -5i64..6), 1..6).prop_map(
                move |terms| {
                    let r = Ring::standard(s, spec);
                    Polynomial::from_terms(
                        &r,
                        terms.into_iter().map(|(e, c)| (MultiIndex::new(e), spec.from_integer(c))),
                    )
                },
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn entries_match_shifted_taylor_expansion(f in generator(), n in 1u32..=3) {
            let jac = build_jacobian(std::slice::from_ref(&f), n).unwrap();
            let oracle = taylor_shift_oracle(&f, n);
            prop_assert_eq!(jac.nrows(), jac.dims().big_m);
            prop_assert_eq!(jac.ncols(), jac.dims().big_n - 1);
            for (row, label) in jac.row_labels().iter().enumerate() {
                for (col, alpha) in jac.col_labels().iter().enumerate() {
                    // coefficient of t^alpha in t^beta * (f(x+t) - f(x)), truncated at degree n
                    let expected = alpha
                        .checked_sub(&label.shift)
                        .and_then(|gamma| oracle.get(&gamma).cloned())
                        .unwrap_or_else(|| Polynomial::zero(f.ring()));
                    prop_assert_eq!(jac.entry(row, col), &expected);
                }
            }
            prop_assert!(diagonal_invariance(&jac));
        }

        #[test]
        fn order_one_is_the_gradient(f in generator()) {
            let jac = build_jacobian(std::slice::from_ref(&f), 1).unwrap();
            let s = f.ring().vars();
            for i in 0..s {
                prop_assert_eq!(jac.entry(0, i), &hasse_derivative(&f, &MultiIndex::unit(s, i)));
            }
        }

        #[test]
        fn echelon_whenever_first_partial_survives(f in generator(), n in 1u32..=3) {
            let s = f.ring().vars();
            let jac = build_jacobian(std::slice::from_ref(&f), n).unwrap();
            let report = check_echelon(&jac, 0).unwrap();
            prop_assert_eq!(report.holds, !hasse_derivative(&f, &MultiIndex::unit(s, 0)).is_zero());
            if report.holds {
                prop_assert_eq!(report.pivots.len(), jac.dims().big_m);
            }
        }
    }
}
