//! Presentation, smoothness, jet dimension, projective-dimension evidence
//! and torsion witnesses for the module of order-`n` differentials of
//! `B = A/J`.
//!
//! Membership in the image of `Jac_n^T` over `B` is always decided in `A`:
//! the rows `F_beta^i` are joined by the lifts `f_j * e_alpha` and the
//! question goes to the Gröbner engine.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, ideal_basis, membership_in, FreeVector, GroebnerBasis, GroebnerOptions};
use crate::hasse::hasse_derivative;
use crate::index::{enumerate_indices, DimensionSet, MultiIndex};
use crate::jacobian::{build_jacobian, check_echelon, EchelonReport, JacobianMatrix, ModuleVector};
use crate::linalg::{
    cofactor_determinant, field_rank, rank_at_point, rank_generic_a, rank_generic_b, submatrix, RankCertificate,
};
use crate::poly::{Polynomial, Ring};
use crate::scalar::FieldElement;

fn check_order(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidOrder)
    } else {
        Ok(())
    }
}

fn check_nonconstant(f: &Polynomial) -> Result<()> {
    if f.is_constant() {
        Err(Error::ConstantPolynomial)
    } else {
        Ok(())
    }
}

fn check_point(f: &Polynomial, point: &[FieldElement]) -> Result<()> {
    if point.len() != f.ring().vars() {
        return Err(Error::DimensionMismatch { expected: f.ring().vars(), found: point.len() });
    }
    if !f.evaluate(point)?.is_zero() {
        return Err(Error::PointOffHypersurface);
    }
    Ok(())
}

/// Where a generator of the lifted image comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "lowercase"))]
pub enum GeneratorLabel {
    /// The row `F_shift` of generator `generator` (0-based; serialized
    /// 1-based like the matrix row labels).
    Relation {
        #[cfg_attr(feature = "serde", serde(serialize_with = "one_based"))]
        generator: usize,
        shift: MultiIndex,
    },
    /// `f_generator * e_alpha`.
    Lift {
        #[cfg_attr(feature = "serde", serde(serialize_with = "one_based"))]
        generator: usize,
        alpha: MultiIndex,
    },
}

#[cfg(feature = "serde")]
fn one_based<S: serde::Serializer>(i: &usize, serializer: S) -> core::result::Result<S::Ok, S::Error> {
    serializer.serialize_u64(*i as u64 + 1)
}

/// Generators in `A^{N-1}` of the preimage of `image(Jac_n^T)` in `B^{N-1}`:
/// all rows of the Jacobian, then `f_j * e_alpha` for every `j` and `alpha`.
#[derive(Debug, Clone)]
pub struct RelationSet {
    pub jac: JacobianMatrix,
    pub labels: Vec<GeneratorLabel>,
    pub vectors: Vec<ModuleVector>,
}

pub fn relation_set(generators: &[Polynomial], n: u32) -> Result<RelationSet> {
    let jac = build_jacobian(generators, n)?;
    let mut labels = Vec::new();
    let mut vectors = jac.relations();
    for label in jac.row_labels() {
        labels.push(GeneratorLabel::Relation { generator: label.generator, shift: label.shift.clone() });
    }
    for (j, f) in generators.iter().enumerate() {
        for alpha in jac.col_labels() {
            labels.push(GeneratorLabel::Lift { generator: j, alpha: alpha.clone() });
            vectors.push(ModuleVector::basis(f.ring(), n, alpha.clone(), f.clone())?);
        }
    }
    Ok(RelationSet { jac, labels, vectors })
}

impl RelationSet {
    pub fn ring(&self) -> &Arc<Ring> {
        self.jac.ring()
    }

    pub fn order(&self) -> u32 {
        self.jac.dims().n
    }

    fn free_vectors(&self) -> Result<Vec<FreeVector>> {
        self.vectors.iter().map(|v| FreeVector::new(self.ring(), v.to_dense())).collect()
    }

    fn check_ambient(&self, v: &ModuleVector) -> Result<()> {
        if v.order() != self.order() || **v.ring() != **self.ring() {
            Err(Error::AmbientMismatch)
        } else {
            Ok(())
        }
    }
}

/// `cofactor * generator` summands of a membership certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CertificateTerm {
    pub index: usize,
    pub label: GeneratorLabel,
    pub cofactor: Polynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ImageCertificate {
    pub terms: Vec<CertificateTerm>,
}

impl ImageCertificate {
    /// Rebuild `sum cofactor * generator` with module-vector arithmetic and
    /// compare with `target`.
    pub fn verify(&self, target: &ModuleVector, set: &RelationSet) -> bool {
        let mut acc = ModuleVector::zero(set.ring(), set.order());
        for t in &self.terms {
            let Some(g) = set.vectors.get(t.index) else { return false };
            if set.labels[t.index] != t.label {
                return false;
            }
            match acc.checked_add(&g.scale(&t.cofactor)) {
                Ok(sum) => acc = sum,
                Err(_) => return false,
            }
        }
        acc == *target
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ImageMembership {
    pub member: bool,
    pub certificate: Option<ImageCertificate>,
}

/// Gröbner basis of the lifted image, ready for repeated membership tests.
#[derive(Debug, Clone)]
pub struct ImageBasis {
    pub set: RelationSet,
    basis: GroebnerBasis,
}

impl ImageBasis {
    pub fn new(generators: &[Polynomial], n: u32, options: GroebnerOptions) -> Result<Self> {
        let set = relation_set(generators, n)?;
        let basis = buchberger(&set.free_vectors()?, options)?;
        Ok(ImageBasis { set, basis })
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.basis
    }

    /// See [`GroebnerBasis::audit`].
    pub fn audit(&self) -> Result<bool> {
        self.basis.audit()
    }

    pub fn normal_form(&self, v: &ModuleVector) -> Result<ModuleVector> {
        self.set.check_ambient(v)?;
        let nf = self.basis.normal_form(&FreeVector::new(self.set.ring(), v.to_dense())?)?;
        ModuleVector::from_dense(self.set.ring(), self.set.order(), nf.components())
    }

    /// Membership of `v` in the image; positive answers carry a re-verified
    /// certificate when the basis tracks cofactors.
    pub fn membership(&self, v: &ModuleVector) -> Result<ImageMembership> {
        self.set.check_ambient(v)?;
        let m = membership_in(&self.basis, &FreeVector::new(self.set.ring(), v.to_dense())?)?;
        let certificate = m.certificate.map(|c| ImageCertificate {
            terms: c
                .cofactors
                .into_iter()
                .map(|(index, cofactor)| CertificateTerm { index, label: self.set.labels[index].clone(), cofactor })
                .collect(),
        });
        if let Some(c) = &certificate {
            assert!(c.verify(v, &self.set), "image certificate failed re-verification");
        }
        Ok(ImageMembership { member: m.member, certificate })
    }
}

// ---- presentation ----------------------------------------------------

#[derive(Debug, Clone)]
pub struct HypersurfacePresentation {
    pub f: Polynomial,
    pub n: u32,
    pub relations: RelationSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PresentationReport {
    pub dims: DimensionSet,
    /// `N - 1`.
    pub free_rank: usize,
    /// `M`, the rows `F_beta`.
    pub relation_rows: usize,
    /// `N - 1` lifts `f * e_alpha`.
    pub quotient_lifts: usize,
    /// Rank of `Jac_n` over `Frac(A)`.
    pub generic_rank: usize,
    /// `L - 1`.
    pub expected_fiber_dim: usize,
}

pub fn presentation(f: &Polynomial, n: u32) -> Result<(HypersurfacePresentation, PresentationReport)> {
    check_order(n)?;
    check_nonconstant(f)?;
    let relations = relation_set(core::slice::from_ref(f), n)?;
    let dims = *relations.jac.dims();
    let generic_rank = rank_generic_a(relations.jac.entries())?.rank;
    let report = PresentationReport {
        free_rank: dims.free_rank(),
        relation_rows: dims.big_m,
        quotient_lifts: dims.free_rank(),
        generic_rank,
        expected_fiber_dim: dims.big_l - 1,
        dims,
    };
    Ok((HypersurfacePresentation { f: f.clone(), n, relations }, report))
}

// ---- smoothness --------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum Smoothness {
    Smooth,
    Singular,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SmoothnessVerdict {
    pub point: Vec<FieldElement>,
    pub n: u32,
    pub on_hypersurface: bool,
    pub rank: usize,
    #[cfg_attr(feature = "serde", serde(rename = "M"))]
    pub big_m: usize,
    pub verdict: Smoothness,
    pub certificate: RankCertificate,
}

/// Order-`n` Jacobian criterion at a rational point of `V(f)`.
pub fn smoothness(f: &Polynomial, n: u32, point: &[FieldElement]) -> Result<SmoothnessVerdict> {
    check_order(n)?;
    check_point(f, point)?;
    let jac = build_jacobian(core::slice::from_ref(f), n)?;
    let certificate = rank_at_point(&jac, point)?;
    let big_m = jac.dims().big_m;
    let verdict = if certificate.rank == big_m { Smoothness::Smooth } else { Smoothness::Singular };
    Ok(SmoothnessVerdict {
        point: point.to_vec(),
        n,
        on_hypersurface: true,
        rank: certificate.rank,
        big_m,
        verdict,
        certificate,
    })
}

// ---- jet dimension -----------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct JetDimensionReport {
    pub point: Vec<FieldElement>,
    pub n: u32,
    pub jet_dim: usize,
    pub threshold: usize,
    pub regular: bool,
    pub warnings: Vec<String>,
}

/// `dim_k m/m^{n+1}` of the local ring of `V(f)` at `point`, by linear
/// algebra on polynomials of degree `<= n` after moving the point to the
/// origin.
pub fn jet_dimension(f: &Polynomial, n: u32, point: &[FieldElement]) -> Result<JetDimensionReport> {
    check_order(n)?;
    check_point(f, point)?;
    let ring = f.ring();
    let s = ring.vars();
    let local = f.translate(point)?;
    let monomials = enumerate_indices(s, 0, n);
    let mut warnings = Vec::new();
    if local.truncate(n).is_zero() {
        warnings.push(alloc::format!(
            "f vanishes to order > {n} at the point; the jet space is the full truncated polynomial ring"
        ));
    }
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    for gamma in &monomials {
        let shifted = (&Polynomial::monomial(ring, gamma.clone(), ring.field().one()) * &local).truncate(n);
        if shifted.is_zero() {
            continue;
        }
        rows.push(monomials.iter().map(|m| shifted.coefficient(m)).collect());
    }
    let rank = if rows.is_empty() { 0 } else { field_rank(&rows).0 };
    let jet_dim = monomials.len() - rank - 1;
    let threshold = DimensionSet::new(s, n, 1).big_l - 1;
    Ok(JetDimensionReport { point: point.to_vec(), n, jet_dim, threshold, regular: jet_dim == threshold, warnings })
}

// ---- projective dimension ---------------------------------------------

/// Evidence that `0 -> B^M -> B^{N-1} -> Omega -> 0` is exact on the left.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PdCertificate {
    /// 0-based variable with a nonzero first Hasse partial.
    pub pivot_var: usize,
    /// Echelon check on `Jac_n` with that variable moved to the front.
    pub echelon: EchelonReport,
    /// Maximal minor of `Jac_n(f)` whose determinant is nonzero in `B`.
    pub minor: RankCertificate,
    #[cfg_attr(feature = "serde", serde(rename = "M"))]
    pub big_m: usize,
    /// Minor recomputed by cofactor expansion, matches, and is not
    /// divisible by `f`.
    pub verified: bool,
}

pub fn pd_certificate(f: &Polynomial, n: u32) -> Result<PdCertificate> {
    check_order(n)?;
    check_nonconstant(f)?;
    let s = f.ring().vars();
    let pivot_var = (0..s)
        .find(|&i| !hasse_derivative(f, &MultiIndex::unit(s, i)).is_zero())
        .ok_or(Error::AllPartialsZero)?;
    let swapped = f.swap_vars(0, pivot_var);
    let echelon = check_echelon(&build_jacobian(core::slice::from_ref(&swapped), n)?, 0)?;
    let jac = build_jacobian(core::slice::from_ref(f), n)?;
    let minor = rank_generic_b(jac.entries(), f)?;
    let big_m = jac.dims().big_m;
    let recomputed = cofactor_determinant(&submatrix(jac.entries(), &minor.witness_rows, &minor.witness_cols))?;
    let verified = echelon.holds
        && minor.rank == big_m
        && recomputed == minor.witness_det
        && !recomputed.reduce_mod(f)?.is_zero();
    Ok(PdCertificate { pivot_var, echelon, minor, big_m, verified })
}

// ---- torsion ------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TorsionChecks {
    pub h_nonzero_in_b: bool,
    pub hm_in_image: bool,
    pub m_in_image: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum TorsionOutcome {
    TorsionWitness,
    AnnihilatorZero,
    ClassIsZero,
    NotAnnihilated,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TorsionVerdict {
    pub witness: ModuleVector,
    pub annihilator: Polynomial,
    pub checks: TorsionChecks,
    pub verdict: TorsionOutcome,
    /// Expresses `h*m` through the relation generators, when it is a member.
    pub hm_certificate: Option<ImageCertificate>,
    /// Expresses `m` itself, when it is a member.
    pub m_certificate: Option<ImageCertificate>,
    /// Size of the reduced Gröbner basis of the lifted image.
    pub basis_size: usize,
}

/// Decide whether `[m]` is a nonzero class of `Omega^(n)` of `A/<f>`
/// killed by the nonzero element `[h]`.
pub fn torsion_check(
    f: &Polynomial,
    n: u32,
    m: &ModuleVector,
    h: &Polynomial,
    options: GroebnerOptions,
) -> Result<TorsionVerdict> {
    torsion_check_ideal(core::slice::from_ref(f), n, m, h, options)
}

/// As [`torsion_check`] for `B = A/<f_1, ..., f_r>`.
pub fn torsion_check_ideal(
    generators: &[Polynomial],
    n: u32,
    m: &ModuleVector,
    h: &Polynomial,
    options: GroebnerOptions,
) -> Result<TorsionVerdict> {
    check_order(n)?;
    let first = generators.first().ok_or(Error::EmptyIdeal)?;
    if !h.same_ring(first) {
        return Err(Error::MixedRing);
    }
    let image = ImageBasis::new(generators, n, options)?;
    image.set.check_ambient(m)?;
    let ideal = ideal_basis(generators, GroebnerOptions { track_cofactors: false, ..options })?;
    let h_nonzero_in_b = !ideal.contains(&FreeVector::scalar(h.clone()))?;
    let hm = image.membership(&m.scale(h))?;
    let mm = image.membership(m)?;
    let checks = TorsionChecks { h_nonzero_in_b, hm_in_image: hm.member, m_in_image: mm.member };
    let verdict = if !h_nonzero_in_b {
        TorsionOutcome::AnnihilatorZero
    } else if mm.member {
        TorsionOutcome::ClassIsZero
    } else if !hm.member {
        TorsionOutcome::NotAnnihilated
    } else {
        TorsionOutcome::TorsionWitness
    };
    Ok(TorsionVerdict {
        witness: m.clone(),
        annihilator: h.clone(),
        checks,
        verdict,
        hm_certificate: hm.certificate,
        m_certificate: mm.certificate,
        basis_size: image.groebner().len(),
    })
}
