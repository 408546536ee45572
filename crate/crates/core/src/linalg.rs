//! Exact rank computations for polynomial matrices.
//!
//! Three regimes are supported: over the coefficient field after evaluating
//! at a point, over the fraction field of `A` (fraction-free Bareiss
//! elimination), and over the fraction field of `A/<f>` (elimination on
//! normal forms modulo `f`). Every rank comes with a witness minor.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::jacobian::JacobianMatrix;
use crate::poly::Polynomial;
use crate::scalar::FieldElement;

/// Largest minor size the brute-force cross-check will enumerate.
pub const MINOR_ENUMERATION_CAP: usize = 6;

/// A Jacobian specialised at a rational point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluatedMatrix {
    pub point: Vec<FieldElement>,
    pub entries: Vec<Vec<FieldElement>>,
}

impl EvaluatedMatrix {
    pub fn new(jac: &JacobianMatrix, point: &[FieldElement]) -> Result<Self> {
        let entries = jac
            .entries()
            .iter()
            .map(|row| row.iter().map(|p| p.evaluate(point)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if point.len() != jac.dims().s {
            return Err(Error::DimensionMismatch { expected: jac.dims().s, found: point.len() });
        }
        Ok(EvaluatedMatrix { point: point.to_vec(), entries })
    }
}

/// Rank together with a nonsingular `rank x rank` submatrix.
///
/// Row and column indices are ascending; `witness_det` is the determinant
/// of that submatrix (`1` for rank zero).
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RankCertificate {
    pub rank: usize,
    pub witness_rows: Vec<usize>,
    pub witness_cols: Vec<usize>,
    pub witness_det: Polynomial,
}

fn shape(mat: &[Vec<Polynomial>]) -> Result<(usize, usize, &Polynomial)> {
    let first = mat.first().and_then(|r| r.first()).ok_or(Error::DimensionMismatch { expected: 1, found: 0 })?;
    let cols = mat[0].len();
    for row in mat {
        if row.len() != cols {
            return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
        }
        if row.iter().any(|p| !p.same_ring(first)) {
            return Err(Error::MixedRing);
        }
    }
    Ok((mat.len(), cols, first))
}

pub fn submatrix<T: Clone>(mat: &[Vec<T>], rows: &[usize], cols: &[usize]) -> Vec<Vec<T>> {
    rows.iter().map(|&r| cols.iter().map(|&c| mat[r][c].clone()).collect()).collect()
}

/// Gaussian elimination over the field. Returns the rank and the original
/// indices of the pivot rows and columns.
pub fn field_rank(mat: &[Vec<FieldElement>]) -> (usize, Vec<usize>, Vec<usize>) {
    let mut a: Vec<Vec<FieldElement>> = mat.to_vec();
    let mut order: Vec<usize> = (0..a.len()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let (mut rank, mut pivot_cols) = (0, Vec::new());
    for col in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        order.swap(rank, p);
        let inv = a[rank][col].inverse().expect("nonzero pivot");
        let (top, below) = a.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in below {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] * &inv;
            for c in col..cols {
                let delta = &factor * &pivot[c];
                row[c] = &row[c] - &delta;
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    let mut pivot_rows = order[..rank].to_vec();
    pivot_rows.sort_unstable();
    (rank, pivot_rows, pivot_cols)
}

/// Determinant of a square matrix over the field.
pub fn field_determinant(mat: &[Vec<FieldElement>], zero: &FieldElement) -> FieldElement {
    let n = mat.len();
    let mut a = mat.to_vec();
    let mut det = zero.spec().one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return zero.clone();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det = &det * &a[col][col];
        let inv = a[col][col].inverse().expect("nonzero pivot");
        let (top, below) = a.split_at_mut(col + 1);
        let pivot = &top[col];
        for row in below {
            let factor = &row[col] * &inv;
            for c in col..n {
                let delta = &factor * &pivot[c];
                row[c] = &row[c] - &delta;
            }
        }
    }
    det
}

pub fn rank_at_point(jac: &JacobianMatrix, point: &[FieldElement]) -> Result<RankCertificate> {
    let evaluated = EvaluatedMatrix::new(jac, point)?;
    let (rank, rows, cols) = field_rank(&evaluated.entries);
    let zero = jac.ring().field().zero();
    let det = field_determinant(&submatrix(&evaluated.entries, &rows, &cols), &zero);
    Ok(RankCertificate {
        rank,
        witness_rows: rows,
        witness_cols: cols,
        witness_det: Polynomial::constant(jac.ring(), det),
    })
}

/// Pick the pivot candidate of lowest total degree, then fewest terms, then
/// lowest row.
fn lightest(candidates: impl Iterator<Item = (usize, usize, usize)>) -> Option<usize> {
    candidates.min_by_key(|&(row, deg, len)| (deg, len, row)).map(|(row, _, _)| row)
}

/// Fraction-free (Bareiss) row echelon form over `A`. Returns the pivot
/// positions as (original row, column) pairs.
fn bareiss_pivots(mat: &[Vec<Polynomial>]) -> Vec<(usize, usize)> {
    let mut a = mat.to_vec();
    let mut order: Vec<usize> = (0..a.len()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let ring = a[0][0].ring().clone();
    let mut prev = Polynomial::one(&ring);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let pick = lightest(
            (rank..a.len())
                .filter(|&r| !a[r][col].is_zero())
                .map(|r| (r, a[r][col].total_degree().unwrap_or(0) as usize, a[r][col].len())),
        );
        let Some(p) = pick else { continue };
        a.swap(rank, p);
        order.swap(rank, p);
        for r in rank + 1..a.len() {
            for c in col + 1..cols {
                let num = &(&a[rank][col] * &a[r][c]) - &(&a[r][col] * &a[rank][c]);
                a[r][c] = num.exact_div(&prev).expect("same ring").expect("Bareiss division is exact");
            }
            a[r][col] = Polynomial::zero(&ring);
        }
        prev = a[rank][col].clone();
        pivots.push((order[rank], col));
        rank += 1;
    }
    pivots
}

/// Determinant by fraction-free elimination.
pub fn bareiss_determinant(mat: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let (n, cols, first) = shape(mat)?;
    if n != cols {
        return Err(Error::DimensionMismatch { expected: n, found: cols });
    }
    let ring = first.ring().clone();
    let mut a = mat.to_vec();
    let mut prev = Polynomial::one(&ring);
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Ok(Polynomial::zero(&ring));
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for r in k + 1..n {
            for c in k + 1..n {
                let num = &(&a[k][k] * &a[r][c]) - &(&a[r][k] * &a[k][c]);
                a[r][c] = num.exact_div(&prev)?.expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    Ok(if negate { -prev } else { prev })
}

/// Laplace expansion along the first row. Exponential; meant for small
/// cross-checks only.
pub fn cofactor_determinant(mat: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let (n, cols, first) = shape(mat)?;
    if n != cols {
        return Err(Error::DimensionMismatch { expected: n, found: cols });
    }
    let ring = first.ring().clone();
    fn expand(mat: &[Vec<Polynomial>], rows: &[usize], cols: &[usize], zero: &Polynomial) -> Polynomial {
        if rows.is_empty() {
            return Polynomial::one(zero.ring());
        }
        let (r, rest_rows) = (rows[0], &rows[1..]);
        let mut acc = zero.clone();
        for (k, &c) in cols.iter().enumerate() {
            if mat[r][c].is_zero() {
                continue;
            }
            let rest_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = &mat[r][c] * &expand(mat, rest_rows, &rest_cols, zero);
            acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }
    let idx: Vec<usize> = (0..n).collect();
    Ok(expand(mat, &idx, &idx, &Polynomial::zero(&ring)))
}

/// Rank over the fraction field of `A`.
pub fn rank_generic_a(mat: &[Vec<Polynomial>]) -> Result<RankCertificate> {
    let (_, _, first) = shape(mat)?;
    let ring = first.ring().clone();
    let pivots = bareiss_pivots(mat);
    let (mut rows, cols): (Vec<usize>, Vec<usize>) = pivots.into_iter().unzip();
    rows.sort_unstable();
    let witness_det =
        if rows.is_empty() { Polynomial::one(&ring) } else { bareiss_determinant(&submatrix(mat, &rows, &cols))? };
    debug_assert!(!witness_det.is_zero());
    Ok(RankCertificate { rank: rows.len(), witness_rows: rows, witness_cols: cols, witness_det })
}

/// Rank over the fraction field of `A/<f>`, for irreducible `f`.
///
/// Entries are kept as remainders modulo `f`; a pivot is valid iff its
/// remainder is nonzero, and among valid pivots the one of lowest degree
/// is chosen. The witness determinant is recomputed from the original
/// entries and must not be divisible by `f`.
pub fn rank_generic_b(mat: &[Vec<Polynomial>], f: &Polynomial) -> Result<RankCertificate> {
    if f.is_zero() {
        return Err(Error::ZeroModulus);
    }
    let (_, cols, first) = shape(mat)?;
    if !first.same_ring(f) {
        return Err(Error::MixedRing);
    }
    let ring = f.ring().clone();
    let mut a: Vec<Vec<Polynomial>> = mat
        .iter()
        .map(|row| row.iter().map(|p| p.reduce_mod(f)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let mut order: Vec<usize> = (0..a.len()).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let pick = lightest(
            (rank..a.len())
                .filter(|&r| !a[r][col].is_zero())
                .map(|r| (r, a[r][col].total_degree().unwrap_or(0) as usize, a[r][col].len())),
        );
        let Some(p) = pick else { continue };
        a.swap(rank, p);
        order.swap(rank, p);
        for r in rank + 1..a.len() {
            if a[r][col].is_zero() {
                continue;
            }
            for c in col + 1..cols {
                let value = &(&a[rank][col] * &a[r][c]) - &(&a[r][col] * &a[rank][c]);
                a[r][c] = value.reduce_mod(f)?;
            }
            a[r][col] = Polynomial::zero(&ring);
        }
        pivots.push((order[rank], col));
        rank += 1;
    }
    let (mut rows, cols): (Vec<usize>, Vec<usize>) = pivots.into_iter().unzip();
    rows.sort_unstable();
    let witness_det =
        if rows.is_empty() { Polynomial::one(&ring) } else { bareiss_determinant(&submatrix(mat, &rows, &cols))? };
    if witness_det.reduce_mod(f)?.is_zero() {
        return Err(Error::NotADomain);
    }
    Ok(RankCertificate { rank: rows.len(), witness_rows: rows, witness_cols: cols, witness_det })
}

/// Rank as the largest size of a nonvanishing minor, by exhaustive
/// enumeration with cofactor determinants. Refuses matrices whose smaller
/// dimension exceeds [`MINOR_ENUMERATION_CAP`].
pub fn rank_by_minors(mat: &[Vec<Polynomial>]) -> Result<usize> {
    let (rows, cols, _) = shape(mat)?;
    let limit = rows.min(cols);
    if limit > MINOR_ENUMERATION_CAP {
        return Err(Error::TooLarge { limit: MINOR_ENUMERATION_CAP, found: limit });
    }
    for t in (1..=limit).rev() {
        for rs in subsets(rows, t) {
            for cs in subsets(cols, t) {
                if !cofactor_determinant(&submatrix(mat, &rs, &cs))?.is_zero() {
                    return Ok(t);
                }
            }
        }
    }
    Ok(0)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            if n - i < k - current.len() {
                break;
            }
            current.push(i);
            go(i + 1, n, k, current, out);
            current.pop();
        }
    }
    go(0, n, k, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobian::build_jacobian;
    use crate::parse::parse_polynomial;
    use crate::poly::Ring;
    use crate::scalar::FieldSpec;
    use alloc::sync::Arc;
    use alloc::vec;
    use proptest::prelude::*;

    fn cusp(spec: FieldSpec) -> Polynomial {
        parse_polynomial("x1^3 - x2^2", &Ring::standard(2, spec)).unwrap()
    }

    fn point(spec: FieldSpec, xs: &[i64]) -> Vec<FieldElement> {
        xs.iter().map(|&x| spec.from_integer(x)).collect()
    }

    #[test]
    fn cusp_at_points() {
        let q = FieldSpec::RATIONALS;
        let jac = build_jacobian(&[cusp(q)], 2).unwrap();
        let origin = rank_at_point(&jac, &point(q, &[0, 0])).unwrap();
        assert_eq!(origin.rank, 1);
        assert_eq!((origin.witness_rows.as_slice(), origin.witness_cols.as_slice()), (&[0][..], &[4][..]));
        assert_eq!(origin.witness_det.to_string(), "-1");
        assert_eq!(rank_at_point(&jac, &point(q, &[1, 1])).unwrap().rank, 3);
        assert!(matches!(rank_at_point(&jac, &point(q, &[1])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn origin_rank_matches_hand_evaluation() {
        // Jac_2 of the cusp at (0,0) is [[0,0,0,0,-1],[0,0,0,0,0],[0,0,0,0,0]]:
        // only the constant entry survives.
        let q = FieldSpec::RATIONALS;
        let jac = build_jacobian(&[cusp(q)], 2).unwrap();
        let ev = EvaluatedMatrix::new(&jac, &point(q, &[0, 0])).unwrap();
        let nonzero: Vec<(usize, usize)> = (0..3)
            .flat_map(|r| (0..5).map(move |c| (r, c)))
            .filter(|&(r, c)| !ev.entries[r][c].is_zero())
            .collect();
        assert_eq!(nonzero, [(0, 4)]);
    }

    #[test]
    fn zero_matrix() {
        let r = Ring::standard(2, FieldSpec::RATIONALS);
        let z = vec![vec![Polynomial::zero(&r); 3]; 2];
        let cert = rank_generic_a(&z).unwrap();
        assert_eq!(cert.rank, 0);
        assert_eq!(cert.witness_det, Polynomial::one(&r));
        assert_eq!(rank_by_minors(&z).unwrap(), 0);
    }

    #[test]
    fn generic_ranks() {
        for c in [0, 2, 3, 5] {
            let spec = FieldSpec::new(c).unwrap();
            let f = cusp(spec);
            let jac2 = build_jacobian(std::slice::from_ref(&f), 2).unwrap();
            assert_eq!(rank_generic_a(jac2.entries()).unwrap().rank, 3, "char {c}");
            assert_eq!(rank_by_minors(jac2.entries()).unwrap(), 3);
            let jac3 = build_jacobian(std::slice::from_ref(&f), 3).unwrap();
            assert_eq!(rank_generic_a(jac3.entries()).unwrap().rank, 6, "char {c}");
            // in characteristic 3 the pivots 3*x1^2 vanish; count minors instead
            assert_eq!(rank_by_minors(jac3.entries()).unwrap(), 6, "char {c}");
        }
    }

    #[test]
    fn cusp_modulo_f() {
        let f = cusp(FieldSpec::RATIONALS);
        let jac = build_jacobian(std::slice::from_ref(&f), 2).unwrap();
        let cert = rank_generic_b(jac.entries(), &f).unwrap();
        assert_eq!(cert.rank, 3);
        assert_eq!(cert.witness_rows, [0, 1, 2]);
        assert_eq!(cert.witness_cols, [0, 2, 3]);
        assert_eq!(cert.witness_det, parse_polynomial("27*x1^6", f.ring()).unwrap());
        assert!(!cert.witness_det.reduce_mod(&f).unwrap().is_zero());

        let one_by_one = vec![vec![f.clone()]];
        assert_eq!(rank_generic_b(&one_by_one, &f).unwrap().rank, 0);
        assert_eq!(rank_generic_b(&one_by_one, &Polynomial::zero(f.ring())), Err(Error::ZeroModulus));

        let r4 = Ring::standard(4, FieldSpec::RATIONALS);
        let g = parse_polynomial("x2^2 - x1*x3", &r4).unwrap();
        let jac = build_jacobian(std::slice::from_ref(&g), 1).unwrap();
        assert_eq!(rank_generic_b(jac.entries(), &g).unwrap().rank, 1);
    }

    #[test]
    fn reducible_modulus_is_reported() {
        let r = Ring::standard(2, FieldSpec::RATIONALS);
        let f = parse_polynomial("x1*x2", &r).unwrap();
        let x1 = Polynomial::var(&r, 0);
        let x2 = Polynomial::var(&r, 1);
        // x1 and x2 are both nonzero mod x1*x2, yet [[x1, 0], [0, x2]] has
        // determinant x1*x2 = 0 in the quotient.
        let mat = vec![vec![x1, Polynomial::zero(&r)], vec![Polynomial::zero(&r), x2]];
        assert_eq!(rank_generic_b(&mat, &f), Err(Error::NotADomain));
    }

    #[test]
    fn determinants_agree() {
        let f = cusp(FieldSpec::RATIONALS);
        let jac = build_jacobian(&[f], 3).unwrap();
        let cols = [0, 2, 3, 5, 6, 7];
        let minor = submatrix(jac.entries(), &[0, 1, 2, 3, 4, 5], &cols);
        assert_eq!(bareiss_determinant(&minor).unwrap(), cofactor_determinant(&minor).unwrap());
        assert!(matches!(rank_by_minors(&vec![vec![minor[0][0].clone(); 7]; 7]), Err(Error::TooLarge { .. })));
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<Polynomial>>> {
        (1usize..=4, 1usize..=4, prop_oneof![Just(0u64), Just(2), Just(3)]).prop_flat_map(|(rows, cols, c)| {
            let spec = FieldSpec::new(c).unwrap();
            let entry = proptest::collection::vec(((0u32..=2, 0u32..=2), -2i64..3), 0..3);
            proptest::collection::vec(proptest::collection::vec(entry, cols), rows).prop_map(move |grid| {
                let r: Arc<Ring> = Ring::standard(2, spec);
                grid.into_iter()
                    .map(|row| {
                        row.into_iter()
                            .map(|terms| {
                                Polynomial::from_terms(
                                    &r,
                                    terms
                                        .into_iter()
                                        .filter(|((a, b), _)| a + b <= 2)
                                        .map(|((a, b), k)| (crate::MultiIndex::new(vec![a, b]), spec.from_integer(k))),
                                )
                            })
                            .collect()
                    })
                    .collect()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(150))]

        #[test]
        fn elimination_matches_minor_enumeration(mat in small_matrix()) {
            let cert = rank_generic_a(&mat).unwrap();
            prop_assert_eq!(cert.rank, rank_by_minors(&mat).unwrap());
            let minor = submatrix(&mat, &cert.witness_rows, &cert.witness_cols);
            if cert.rank > 0 {
                let det = cofactor_determinant(&minor).unwrap();
                prop_assert!(!det.is_zero());
                prop_assert_eq!(det, cert.witness_det);
            }
        }

        #[test]
        fn specialisation_never_raises_rank(mat in small_matrix(), xs in proptest::collection::vec(-3i64..4, 2)) {
            let spec = mat[0][0].field();
            let p: Vec<_> = xs.iter().map(|&x| spec.from_integer(x)).collect();
            let evaluated: Vec<Vec<FieldElement>> =
                mat.iter().map(|row| row.iter().map(|e| e.evaluate(&p).unwrap()).collect()).collect();
            let (rank, rows, cols) = field_rank(&evaluated);
            prop_assert!(rank <= rank_generic_a(&mat).unwrap().rank);
            let zero = spec.zero();
            if rank > 0 {
                prop_assert!(!field_determinant(&submatrix(&evaluated, &rows, &cols), &zero).is_zero());
            }
        }
    }
}
