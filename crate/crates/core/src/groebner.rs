//! Buchberger's algorithm for submodules of a free module `A^m`.
//!
//! Module terms are compared position first: position `0` is the largest,
//! so when positions are the Jacobian's columns in column order the leading
//! position of every row is its echelon pivot. Ties are broken by grevlex
//! on the monomial. Ideals are the case `m = 1`.
//!
//! Optionally the engine tracks, for every basis element, its expression in
//! terms of the input generators, which turns a positive membership test
//! into a checkable certificate.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, ResourceKind, Result};
use crate::index::MultiIndex;
use crate::poly::{Polynomial, Ring};
use crate::scalar::FieldElement;

/// Hard limits on a Gröbner computation. Exceeding either one is an error,
/// never a silently truncated answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Budget {
    /// Largest total degree of an S-pair lcm.
    pub max_degree: u32,
    /// Pairs treated plus elementary reduction steps.
    pub max_steps: u64,
}

impl Budget {
    pub const DEFAULT_MAX_DEGREE: u32 = 40;
    pub const DEFAULT_MAX_STEPS: u64 = 1_000_000;
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_degree: Self::DEFAULT_MAX_DEGREE, max_steps: Self::DEFAULT_MAX_STEPS }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GroebnerOptions {
    pub budget: Budget,
    pub track_cofactors: bool,
}

/// Dense element of `A^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeVector {
    ring: Arc<Ring>,
    components: Vec<Polynomial>,
}

impl FreeVector {
    pub fn new(ring: &Arc<Ring>, components: Vec<Polynomial>) -> Result<Self> {
        if components.iter().any(|p| **p.ring() != **ring) {
            return Err(Error::MixedRing);
        }
        Ok(FreeVector { ring: ring.clone(), components })
    }

    pub fn zero(ring: &Arc<Ring>, rank: usize) -> Self {
        FreeVector { ring: ring.clone(), components: alloc::vec![Polynomial::zero(ring); rank] }
    }

    /// A polynomial viewed as an element of `A^1`.
    pub fn scalar(p: Polynomial) -> Self {
        FreeVector { ring: p.ring().clone(), components: alloc::vec![p] }
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn scale(&self, h: &Polynomial) -> FreeVector {
        FreeVector { ring: self.ring.clone(), components: self.components.iter().map(|p| p * h).collect() }
    }

    pub fn checked_add(&self, other: &FreeVector) -> Result<FreeVector> {
        if self.rank() != other.rank() || *self.ring != *other.ring {
            return Err(Error::AmbientMismatch);
        }
        Ok(FreeVector {
            ring: self.ring.clone(),
            components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect(),
        })
    }
}

// ---- internal sparse representation ----------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
struct Mono {
    deg: u32,
    exps: Vec<u32>,
}

impl Mono {
    fn from_index(m: &MultiIndex) -> Self {
        Mono { deg: m.degree(), exps: m.exponents().to_vec() }
    }

    fn to_index(&self) -> MultiIndex {
        MultiIndex::new(self.exps.clone())
    }

    fn grevlex(&self, other: &Mono) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| {
            for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }

    fn divides(&self, other: &Mono) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    fn quotient(&self, divisor: &Mono) -> Mono {
        Mono { deg: self.deg - divisor.deg, exps: self.exps.iter().zip(&divisor.exps).map(|(a, b)| a - b).collect() }
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono { deg: self.deg + other.deg, exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    fn lcm(&self, other: &Mono) -> Mono {
        let exps: Vec<u32> = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        Mono { deg: exps.iter().sum(), exps }
    }

    fn coprime(&self, other: &Mono) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Term {
    pos: u32,
    mono: Mono,
    coeff: FieldElement,
}

/// Module order on terms: smaller position index is larger.
fn term_cmp(a: &Term, b: &Term) -> Ordering {
    b.pos.cmp(&a.pos).then_with(|| a.mono.grevlex(&b.mono))
}

/// Sparse vector, terms in ascending module order (leading term last).
type Sparse = Vec<Term>;

/// `v - c * x^shift * g`.
fn axpy(v: &[Term], c: &FieldElement, shift: &Mono, g: &[Term]) -> Sparse {
    let mut out = Vec::with_capacity(v.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let scaled = |t: &Term| Term { pos: t.pos, mono: t.mono.mul(shift), coeff: -(&t.coeff * c) };
    while i < v.len() && j < g.len() {
        let gj = scaled(&g[j]);
        match term_cmp(&v[i], &gj) {
            Ordering::Less => {
                out.push(v[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(gj);
                j += 1;
            }
            Ordering::Equal => {
                let sum = &v[i].coeff + &gj.coeff;
                if !sum.is_zero() {
                    out.push(Term { pos: gj.pos, mono: gj.mono, coeff: sum });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&v[i..]);
    out.extend(g[j..].iter().map(scaled));
    out
}

fn scale_sparse(v: &[Term], c: &FieldElement) -> Sparse {
    v.iter().map(|t| Term { pos: t.pos, mono: t.mono.clone(), coeff: &t.coeff * c }).collect()
}

fn to_sparse(v: &FreeVector) -> Sparse {
    let mut out: Sparse = Vec::new();
    for (pos, p) in v.components.iter().enumerate() {
        for (m, c) in p.terms() {
            out.push(Term { pos: pos as u32, mono: Mono::from_index(m), coeff: c.clone() });
        }
    }
    out.sort_by(term_cmp);
    out
}

fn from_sparse(v: &[Term], ring: &Arc<Ring>, rank: usize) -> FreeVector {
    let mut comps = alloc::vec![Polynomial::zero(ring); rank];
    for t in v {
        comps[t.pos as usize].add_term(t.mono.to_index(), &t.coeff);
    }
    FreeVector { ring: ring.clone(), components: comps }
}

/// Cofactors: generator index -> polynomial (stored as a rank-1 sparse
/// vector).
type Cofactors = BTreeMap<usize, Sparse>;

fn cof_axpy(acc: &mut Cofactors, c: &FieldElement, shift: &Mono, other: &Cofactors) {
    for (k, poly) in other {
        let current = acc.remove(k).unwrap_or_default();
        let updated = axpy(&current, c, shift, poly);
        if !updated.is_empty() {
            acc.insert(*k, updated);
        }
    }
}

fn cof_scale(acc: &mut Cofactors, c: &FieldElement) {
    for poly in acc.values_mut() {
        *poly = scale_sparse(poly, c);
    }
}

#[derive(Debug, Clone)]
struct Element {
    vec: Sparse,
    cof: Option<Cofactors>,
}

impl Element {
    fn lead(&self) -> &Term {
        self.vec.last().expect("basis elements are nonzero")
    }

    fn make_monic(&mut self) {
        let inv = self.lead().coeff.inverse().expect("nonzero");
        if !inv.is_one() {
            self.vec = scale_sparse(&self.vec, &inv);
            if let Some(c) = self.cof.as_mut() {
                cof_scale(c, &inv);
            }
        }
    }
}

struct Reducer<'a> {
    basis: &'a [Element],
    by_pos: BTreeMap<u32, Vec<usize>>,
    steps: &'a mut u64,
    budget: Budget,
}

impl<'a> Reducer<'a> {
    fn new(basis: &'a [Element], active: impl Iterator<Item = usize>, steps: &'a mut u64, budget: Budget) -> Self {
        let mut by_pos: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for i in active {
            by_pos.entry(basis[i].lead().pos).or_default().push(i);
        }
        Reducer { basis, by_pos, steps, budget }
    }

    fn divisor(&self, t: &Term) -> Option<usize> {
        self.by_pos.get(&t.pos)?.iter().copied().find(|&i| self.basis[i].lead().mono.divides(&t.mono))
    }

    fn tick(&mut self) -> Result<()> {
        *self.steps += 1;
        if *self.steps > self.budget.max_steps {
            return Err(Error::ResourceLimit(ResourceKind::Steps { limit: self.budget.max_steps }));
        }
        Ok(())
    }

    /// Reduce `v` (with cofactors `cof`). With `full`, every term is
    /// reduced; otherwise only the leading term.
    fn reduce(&mut self, mut v: Sparse, mut cof: Option<Cofactors>, full: bool) -> Result<(Sparse, Option<Cofactors>)> {
        let mut done: Sparse = Vec::new();
        while let Some(lead) = v.last() {
            match self.divisor(lead) {
                Some(i) => {
                    self.tick()?;
                    let g = &self.basis[i];
                    let glead = g.lead();
                    let shift = lead.mono.quotient(&glead.mono);
                    let c = lead.coeff.checked_div(&glead.coeff)?;
                    v = axpy(&v, &c, &shift, &g.vec);
                    if let (Some(acc), Some(gc)) = (cof.as_mut(), g.cof.as_ref()) {
                        cof_axpy(acc, &c, &shift, gc);
                    }
                }
                None if full => done.push(v.pop().expect("nonempty")),
                None => break,
            }
        }
        if full {
            done.reverse();
            Ok((done, cof))
        } else {
            Ok((v, cof))
        }
    }
}

/// A reduced Gröbner basis of a submodule of `A^m`.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    rank: usize,
    elements: Vec<Element>,
    generators: Vec<FreeVector>,
    options: GroebnerOptions,
    steps: u64,
}

/// Expression of a vector as `sum_j cofactors[j] * generator_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Certificate {
    /// `(generator index, cofactor)`, nonzero cofactors only.
    pub cofactors: Vec<(usize, Polynomial)>,
}

impl Certificate {
    /// Recompute `sum_j c_j * g_j` with plain polynomial arithmetic and
    /// compare with `target`.
    pub fn verify(&self, target: &FreeVector, generators: &[FreeVector]) -> bool {
        let mut acc = FreeVector::zero(target.ring(), target.rank());
        for (j, c) in &self.cofactors {
            let Some(g) = generators.get(*j) else { return false };
            match acc.checked_add(&g.scale(c)) {
                Ok(sum) => acc = sum,
                Err(_) => return false,
            }
        }
        acc == *target
    }
}

fn check_ambient(ring: &Arc<Ring>, rank: usize, v: &FreeVector) -> Result<()> {
    if v.rank() != rank || *v.ring != **ring {
        Err(Error::AmbientMismatch)
    } else {
        Ok(())
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    seq: u64,
}

/// Compute the reduced Gröbner basis of the submodule generated by `gens`.
///
/// Pairs are treated by smallest lcm degree, ties by creation order.
pub fn buchberger(gens: &[FreeVector], options: GroebnerOptions) -> Result<GroebnerBasis> {
    let first = gens.first().ok_or(Error::EmptyIdeal)?;
    let (ring, rank) = (first.ring.clone(), first.rank());
    for g in gens {
        check_ambient(&ring, rank, g)?;
    }
    let budget = options.budget;
    let mut steps = 0u64;
    let mut basis: Vec<Element> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut seq = 0u64;

    let add_element = |e: Element,
                       basis: &mut Vec<Element>,
                       pairs: &mut Vec<Pair>,
                       pending: &mut BTreeSet<(usize, usize)>,
                       seq: &mut u64| {
        let j = basis.len();
        let lead = e.lead().clone();
        basis.push(e);
        for (i, other) in basis[..j].iter().enumerate() {
            let ol = other.lead();
            if ol.pos != lead.pos {
                continue;
            }
            // product criterion, sound for ideals only
            if rank == 1 && ol.mono.coprime(&lead.mono) {
                continue;
            }
            pairs.push(Pair { i, j, lcm: ol.mono.lcm(&lead.mono), seq: *seq });
            pending.insert((i, j));
            *seq += 1;
        }
    };

    for (k, g) in gens.iter().enumerate() {
        let v = to_sparse(g);
        if v.is_empty() {
            continue;
        }
        let cof = options.track_cofactors.then(|| {
            let mut c = Cofactors::new();
            c.insert(k, alloc::vec![Term { pos: 0, mono: Mono::from_index(&MultiIndex::zero(ring.vars())), coeff: ring.field().one() }]);
            c
        });
        let mut e = Element { vec: v, cof };
        e.make_monic();
        add_element(e, &mut basis, &mut pairs, &mut pending, &mut seq);
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len()).min_by_key(|&k| (pairs[k].lcm.deg, pairs[k].seq)).expect("nonempty");
        let pair = pairs.swap_remove(best);
        pending.remove(&(pair.i, pair.j));
        steps += 1;
        if steps > budget.max_steps {
            return Err(Error::ResourceLimit(ResourceKind::Steps { limit: budget.max_steps }));
        }
        if pair.lcm.deg > budget.max_degree {
            return Err(Error::ResourceLimit(ResourceKind::Degree { limit: budget.max_degree, reached: pair.lcm.deg }));
        }
        // chain criterion
        let pos = basis[pair.i].lead().pos;
        let chain = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && basis[k].lead().pos == pos
                && basis[k].lead().mono.divides(&pair.lcm)
                && !pending.contains(&(pair.i.min(k), pair.i.max(k)))
                && !pending.contains(&(pair.j.min(k), pair.j.max(k)))
        });
        if chain {
            continue;
        }
        let (gi, gj) = (&basis[pair.i], &basis[pair.j]);
        let si = pair.lcm.quotient(&gi.lead().mono);
        let sj = pair.lcm.quotient(&gj.lead().mono);
        let one = ring.field().one();
        // both are monic: S = x^si * gi - x^sj * gj
        let s_vec = axpy(&axpy(&[], &-&one, &si, &gi.vec), &one, &sj, &gj.vec);
        let s_cof = match (&gi.cof, &gj.cof) {
            (Some(ci), Some(cj)) => {
                let mut acc = Cofactors::new();
                cof_axpy(&mut acc, &-&one, &si, ci);
                cof_axpy(&mut acc, &one, &sj, cj);
                Some(acc)
            }
            _ => None,
        };
        let (reduced, cof) = {
            let mut reducer = Reducer::new(&basis, 0..basis.len(), &mut steps, budget);
            reducer.reduce(s_vec, s_cof, false)?
        };
        if reduced.is_empty() {
            continue;
        }
        let deg = reduced.last().expect("nonempty").mono.deg;
        if deg > budget.max_degree {
            return Err(Error::ResourceLimit(ResourceKind::Degree { limit: budget.max_degree, reached: deg }));
        }
        let mut e = Element { vec: reduced, cof };
        e.make_monic();
        add_element(e, &mut basis, &mut pairs, &mut pending, &mut seq);
    }

    // minimalise: drop elements whose lead is a multiple of another lead
    let keep: Vec<usize> = (0..basis.len())
        .filter(|&i| {
            let li = basis[i].lead();
            !(0..basis.len()).any(|k| {
                let lk = basis[k].lead();
                k != i && lk.pos == li.pos && lk.mono.divides(&li.mono) && (lk.mono != li.mono || k < i)
            })
        })
        .collect();
    let minimal: Vec<Element> = keep.into_iter().map(|i| basis[i].clone()).collect();

    // tail-reduce each element against the others
    let mut reduced_basis = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let mut e = minimal[i].clone();
        let lead = e.vec.pop().expect("nonzero");
        let others = (0..minimal.len()).filter(|&k| k != i);
        let mut reducer = Reducer::new(&minimal, others, &mut steps, budget);
        // starting from the element's own cofactors keeps them valid for
        // `lead + reduced tail`
        let (mut tail, cof) = reducer.reduce(core::mem::take(&mut e.vec), e.cof.take(), true)?;
        tail.push(lead);
        reduced_basis.push(Element { vec: tail, cof });
    }
    reduced_basis.sort_by(|a, b| term_cmp(b.lead(), a.lead()));

    Ok(GroebnerBasis { ring, rank, elements: reduced_basis, generators: gens.to_vec(), options, steps })
}

impl GroebnerBasis {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Work spent building the basis (pairs plus reduction steps).
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn is_tracked(&self) -> bool {
        self.options.track_cofactors
    }

    pub fn generators(&self) -> &[FreeVector] {
        &self.generators
    }

    /// Basis elements, largest leading term first.
    pub fn elements(&self) -> Vec<FreeVector> {
        self.elements.iter().map(|e| from_sparse(&e.vec, &self.ring, self.rank)).collect()
    }

    /// Leading position and monomial of every basis element.
    pub fn leading_terms(&self) -> Vec<(usize, MultiIndex)> {
        self.elements.iter().map(|e| (e.lead().pos as usize, e.lead().mono.to_index())).collect()
    }

    /// Re-check the basis from scratch, without pair criteria: every
    /// S-vector of two basis elements and every input generator reduces to
    /// zero, and with tracking every element is rebuilt from its cofactors.
    pub fn audit(&self) -> Result<bool> {
        let mut steps = 0u64;
        let budget = Budget { max_steps: u64::MAX, ..self.options.budget };
        let mut reducer = Reducer::new(&self.elements, 0..self.elements.len(), &mut steps, budget);
        let one = self.ring.field().one();
        for (i, gi) in self.elements.iter().enumerate() {
            for gj in &self.elements[i + 1..] {
                let (li, lj) = (gi.lead(), gj.lead());
                if li.pos != lj.pos {
                    continue;
                }
                let lcm = li.mono.lcm(&lj.mono);
                let si = lcm.quotient(&li.mono);
                let sj = lcm.quotient(&lj.mono);
                let s_vec = axpy(&axpy(&[], &-&one, &si, &gi.vec), &one, &sj, &gj.vec);
                if !reducer.reduce(s_vec, None, true)?.0.is_empty() {
                    return Ok(false);
                }
            }
        }
        for g in &self.generators {
            if !reducer.reduce(to_sparse(g), None, true)?.0.is_empty() {
                return Ok(false);
            }
        }
        if self.options.track_cofactors {
            for e in &self.elements {
                let cof = e.cof.as_ref().expect("tracked");
                let cert = Certificate {
                    cofactors: cof
                        .iter()
                        .map(|(j, p)| (*j, from_sparse(p, &self.ring, 1).into_components().remove(0)))
                        .collect(),
                };
                if !cert.verify(&from_sparse(&e.vec, &self.ring, self.rank), &self.generators) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn reduce_full(&self, v: &FreeVector, with_cofactors: bool) -> Result<(Sparse, Option<Cofactors>)> {
        check_ambient(&self.ring, self.rank, v)?;
        let mut steps = 0u64;
        let budget = Budget { max_steps: u64::MAX, ..self.options.budget };
        let mut reducer = Reducer::new(&self.elements, 0..self.elements.len(), &mut steps, budget);
        reducer.reduce(to_sparse(v), with_cofactors.then(Cofactors::new), true)
    }

    /// The unique remainder of `v`; zero iff `v` lies in the submodule.
    pub fn normal_form(&self, v: &FreeVector) -> Result<FreeVector> {
        Ok(from_sparse(&self.reduce_full(v, false)?.0, &self.ring, self.rank))
    }

    pub fn contains(&self, v: &FreeVector) -> Result<bool> {
        Ok(self.reduce_full(v, false)?.0.is_empty())
    }

    /// For a member `v`, cofactors with `v = sum c_j * generator_j`; `None`
    /// when `v` is not a member. Needs a basis built with
    /// `track_cofactors`.
    pub fn lift(&self, v: &FreeVector) -> Result<Option<Certificate>> {
        if !self.options.track_cofactors {
            return Err(Error::AmbientMismatch);
        }
        let (rest, cof) = self.reduce_full(v, true)?;
        if !rest.is_empty() {
            return Ok(None);
        }
        // reduce_full computed v - sum(...)·elements, i.e. cof = -(v's expression)
        let cof = cof.expect("tracked");
        let minus_one = -self.ring.field().one();
        let mut cofactors = Vec::new();
        for (j, poly) in cof {
            let p = from_sparse(&scale_sparse(&poly, &minus_one), &self.ring, 1).into_components().remove(0);
            if !p.is_zero() {
                cofactors.push((j, p));
            }
        }
        Ok(Some(Certificate { cofactors }))
    }
}

/// Membership verdict with an optional reconstruction certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Membership {
    pub member: bool,
    pub certificate: Option<Certificate>,
}

/// Decide `v` in `<gens>`. With cofactor tracking on, a positive answer
/// carries a certificate that has already been re-verified.
pub fn module_membership(v: &FreeVector, gens: &[FreeVector], options: GroebnerOptions) -> Result<Membership> {
    let gb = buchberger(gens, options)?;
    membership_in(&gb, v)
}

pub fn membership_in(gb: &GroebnerBasis, v: &FreeVector) -> Result<Membership> {
    if !gb.is_tracked() {
        return Ok(Membership { member: gb.contains(v)?, certificate: None });
    }
    match gb.lift(v)? {
        Some(cert) => {
            assert!(cert.verify(v, gb.generators()), "membership certificate failed re-verification");
            Ok(Membership { member: true, certificate: Some(cert) })
        }
        None => Ok(Membership { member: false, certificate: None }),
    }
}

/// Reduced Gröbner basis of an ideal.
pub fn ideal_basis(gens: &[Polynomial], options: GroebnerOptions) -> Result<GroebnerBasis> {
    let vecs: Vec<FreeVector> = gens.iter().cloned().map(FreeVector::scalar).collect();
    buchberger(&vecs, options)
}
