#![cfg_attr(not(test), no_std)]

//! Exact computations with higher-order Kähler differentials of
//! hypersurfaces and polynomial ideals.
//!
//! The crate builds the order-`n` Jacobian matrix of an ideal
//! `J = <f_1, ..., f_r>` of `A = k[x_1, ..., x_s]`, whose transpose presents
//! the module of order-`n` differentials of `B = A/J`, and uses it to
//! decide smoothness at rational points, compute local jet dimensions,
//! certify the projective-dimension bound and check torsion witnesses.
//!
//! Everything is exact: coefficients are rationals or residues modulo a
//! prime, and all linear algebra is fraction-free or field-exact.
//! The crate only needs `alloc`.

extern crate alloc;

pub mod diffmod;
pub mod error;
pub mod groebner;
pub mod hasse;
pub mod index;
pub mod jacobian;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod scalar;

pub use diffmod::{
    jet_dimension, pd_certificate, presentation, relation_set, smoothness, torsion_check, torsion_check_ideal,
    GeneratorLabel, HypersurfacePresentation, ImageBasis, ImageCertificate, ImageMembership, JetDimensionReport,
    PdCertificate, PresentationReport, RelationSet, Smoothness, SmoothnessVerdict, TorsionChecks, TorsionOutcome,
    TorsionVerdict,
};
pub use error::{Error, ResourceKind, Result};
pub use groebner::{buchberger, ideal_basis, module_membership, Budget, Certificate, FreeVector, GroebnerBasis, GroebnerOptions, Membership};
pub use hasse::{hasse_derivative, taylor_shift_oracle};
pub use index::{enumerate_indices, DimensionSet, MultiIndex};
pub use jacobian::{build_f_beta, build_jacobian, check_echelon, diagonal_invariance, EchelonReport, JacobianMatrix, ModuleVector, RowLabel};
pub use linalg::{rank_at_point, rank_generic_a, rank_generic_b, EvaluatedMatrix, RankCertificate};
pub use parse::{parse_multi_index, parse_polynomial};
pub use poly::{Polynomial, Ring};
pub use scalar::{FieldElement, FieldSpec};
