//! Degree-truncated universal enveloping algebras.
//!
//! A [`LieTable`] fixes an ordered basis of a finite-dimensional Lie algebra together with its
//! structure constants and weights. Elements of `U(L)` are stored in PBW normal form: sparse
//! combinations of non-decreasing factor sequences. Products are straightened with the rewrite
//! `vu → uv + [v,u]`, which never raises the filtration degree, so every product and every
//! Harish-Chandra projection computed here is exact.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use dashmap::DashMap;
use num::integer::binomial;
use thiserror::Error;

use crate::algebra::Target;
use crate::exactla::{Field, SparseAccumulator, SparseVec, Subspace};
use crate::liealg::GradedLie;
use crate::Exec;

/// Default upper limit on the number of monomials an enumeration may produce.
pub const MONOMIAL_GUARD: u128 = 5_000_000;

/// Default number of entries kept in each straightening memo table.
pub const MEMO_LIMIT: usize = 4_000_000;

/// A PBW monomial: a non-decreasing sequence of basis indices.
pub type Monomial = Vec<u16>;

type Terms<F> = Vec<(Monomial, F)>;

/// Errors raised by enveloping-algebra arithmetic.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnvelopeError {
    #[error("product of degree {needed} exceeds the cap {cap}")]
    CapExceeded { needed: usize, cap: usize },
    #[error("element is not of weight zero")]
    NonZeroWeight,
    #[error("{count} monomials exceed the guard of {guard}; lower the degree cap or use prime-field mode")]
    TooManyMonomials { count: u128, guard: u128 },
    #[error("inconsistent Lie table: {0}")]
    BadTable(String),
}

/// Structure constants of a finite-dimensional Lie algebra in an ordered basis split into a
/// negative block, a zero-weight block and a positive block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieTable<F> {
    labels: Vec<String>,
    weights: Vec<Vec<i64>>,
    brackets: Vec<SparseVec<F>>,
    neg_end: usize,
    zero_end: usize,
}

impl<F: Field> LieTable<F> {
    /// Builds a table from `brackets[p·dim + q] = [b_p, b_q]`, checking antisymmetry and weight
    /// additivity. `blocks` gives the ends of the negative and zero-weight blocks.
    pub fn new(
        labels: Vec<String>,
        weights: Vec<Vec<i64>>,
        brackets: Vec<SparseVec<F>>,
        blocks: (usize, usize),
    ) -> Result<Self, EnvelopeError> {
        let dim = labels.len();
        if dim > u16::MAX as usize {
            return Err(EnvelopeError::BadTable(format!("dimension {dim} does not fit the monomial encoding")));
        }
        if weights.len() != dim || brackets.len() != dim * dim {
            return Err(EnvelopeError::BadTable("table sizes do not match the basis".into()));
        }
        if blocks.0 > blocks.1 || blocks.1 > dim {
            return Err(EnvelopeError::BadTable("block boundaries out of range".into()));
        }
        for p in 0..dim {
            for q in 0..dim {
                let b = &brackets[p * dim + q];
                if b.max_index().is_some_and(|m| m >= dim) {
                    return Err(EnvelopeError::BadTable(format!("bracket ({p}, {q}) leaves the basis")));
                }
                if *b != brackets[q * dim + p].scaled(&-F::one()) {
                    return Err(EnvelopeError::BadTable(format!("bracket ({p}, {q}) is not antisymmetric")));
                }
                let w: Vec<i64> = weights[p].iter().zip(&weights[q]).map(|(a, c)| a + c).collect();
                if b.entries().iter().any(|(m, _)| weights[*m as usize] != w) {
                    return Err(EnvelopeError::BadTable(format!("bracket ({p}, {q}) breaks weight additivity")));
                }
            }
        }
        Ok(LieTable { labels, weights, brackets, neg_end: blocks.0, zero_end: blocks.1 })
    }

    /// The full table of `sl_n(A)` in its triangular basis.
    pub fn from_graded(l: &GradedLie<F>, exec: Exec) -> Self {
        let dim = l.dim();
        l.precompute(exec);
        let brackets = (0..dim * dim).map(|i| l.bracket_basis(i / dim, i % dim).clone()).collect();
        let weights = (0..dim).map(|p| l.weight(p).to_vec()).collect();
        LieTable {
            labels: l.labels().to_vec(),
            weights,
            brackets,
            neg_end: l.neg_range().end,
            zero_end: l.zero_range().end,
        }
    }

    /// The table of the zero-weight part `L₀`, reindexed from zero.
    pub fn zero_part(l: &GradedLie<F>, exec: Exec) -> Self {
        let range = l.zero_range();
        let (off, d) = (range.start, range.len());
        let rows: Vec<Vec<SparseVec<F>>> = exec.map_range(d, |p| {
            (0..d).map(|q| l.bracket_basis(off + p, off + q).map_indices(|m| m - off as u32)).collect()
        });
        LieTable {
            labels: l.labels()[range.clone()].to_vec(),
            weights: vec![vec![0; l.n() - 1]; d],
            brackets: rows.into_iter().flatten().collect(),
            neg_end: 0,
            zero_end: d,
        }
    }

    /// Dimension of the Lie algebra.
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Basis labels.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Weight of a basis element.
    pub fn weight(&self, p: usize) -> &[i64] {
        &self.weights[p]
    }

    /// Indices of the negative block.
    pub fn neg_range(&self) -> std::ops::Range<usize> {
        0..self.neg_end
    }

    /// Indices of the zero-weight block.
    pub fn zero_range(&self) -> std::ops::Range<usize> {
        self.neg_end..self.zero_end
    }

    /// Indices of the positive block.
    pub fn pos_range(&self) -> std::ops::Range<usize> {
        self.zero_end..self.dim()
    }

    /// `[b_p, b_q]`.
    pub fn bracket(&self, p: usize, q: usize) -> &SparseVec<F> {
        &self.brackets[p * self.dim() + q]
    }

    /// Bracket of two sparse elements.
    pub fn bracket_vec(&self, x: &SparseVec<F>, y: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = SparseAccumulator::default();
        for (p, a) in x.entries() {
            for (q, b) in y.entries() {
                acc.add_vec(&(a.clone() * b.clone()), self.bracket(*p as usize, *q as usize));
            }
        }
        acc.finish()
    }

    /// Checks the Jacobi identity on every basis triple.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        for p in 0..d {
            for q in p + 1..d {
                for r in q + 1..d {
                    let mut acc = SparseAccumulator::default();
                    for (x, y, z) in [(p, q, r), (q, r, p), (r, p, q)] {
                        for (m, c) in self.bracket(y, z).entries() {
                            acc.add_vec(c, self.bracket(x, *m as usize));
                        }
                    }
                    if !acc.finish().is_zero() {
                        return Some((p, q, r));
                    }
                }
            }
        }
        None
    }

    /// The Lie ideal generated by `gens`.
    pub fn lie_ideal_generated(&self, gens: &[SparseVec<F>]) -> Subspace<F> {
        let mut space = Subspace::zero(self.dim());
        let mut queue: Vec<SparseVec<F>> = Vec::new();
        for g in gens {
            if space.insert(g) {
                queue.push(g.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for p in 0..self.dim() {
                let w = self.bracket_vec(&SparseVec::unit(p, F::one()), &v);
                if space.insert(&w) {
                    queue.push(w);
                }
            }
        }
        space
    }

    /// The quotient by a Lie ideal: the basis is the non-pivot basis vectors in their original
    /// order. Also returns the projection as the image of every old basis vector.
    pub fn quotient(&self, ideal: &Subspace<F>) -> (LieTable<F>, Vec<SparseVec<F>>) {
        let keep = ideal.non_pivots();
        let mut new_index = vec![u32::MAX; self.dim()];
        for (i, p) in keep.iter().enumerate() {
            new_index[*p] = i as u32;
        }
        let project = |v: &SparseVec<F>| ideal.reduce(v).map_indices(|m| new_index[m as usize]);
        let images: Vec<SparseVec<F>> = (0..self.dim()).map(|p| project(&SparseVec::unit(p, F::one()))).collect();
        let brackets = keep
            .iter()
            .flat_map(|p| keep.iter().map(move |q| (*p, *q)))
            .map(|(p, q)| project(self.bracket(p, q)))
            .collect();
        let count_below = |end: usize| keep.iter().filter(|p| **p < end).count();
        let table = LieTable {
            labels: keep.iter().map(|p| self.labels[*p].clone()).collect(),
            weights: keep.iter().map(|p| self.weights[*p].clone()).collect(),
            brackets,
            neg_end: count_below(self.neg_end),
            zero_end: count_below(self.zero_end),
        };
        (table, images)
    }

    /// Weight of a monomial.
    pub fn monomial_weight(&self, m: &[u16]) -> Vec<i64> {
        let mut w = vec![0i64; self.weights.first().map_or(0, Vec::len)];
        for f in m {
            for (a, b) in w.iter_mut().zip(&self.weights[*f as usize]) {
                *a += b;
            }
        }
        w
    }

    /// Human-readable form of a monomial.
    pub fn format_monomial(&self, m: &[u16]) -> String {
        if m.is_empty() {
            return "1".into();
        }
        m.iter().map(|f| self.labels[*f as usize].as_str()).collect::<Vec<_>>().join("·")
    }
}

/// An element of `U(L)` in PBW normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PbwElement<F> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Default for PbwElement<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> PbwElement<F> {
    /// The zero element.
    pub fn zero() -> Self {
        PbwElement { terms: BTreeMap::new() }
    }

    /// A scalar multiple of the unit.
    pub fn scalar(c: F) -> Self {
        Self::monomial(Vec::new(), c)
    }

    /// The unit.
    pub fn one() -> Self {
        Self::scalar(F::one())
    }

    /// `c · m` for a monomial already in PBW order.
    pub fn monomial(m: Monomial, c: F) -> Self {
        debug_assert!(m.windows(2).all(|w| w[0] <= w[1]), "monomials are non-decreasing");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        PbwElement { terms }
    }

    /// The degree-one element given by a Lie algebra element.
    pub fn from_lie(x: &SparseVec<F>) -> Self {
        PbwElement { terms: x.entries().iter().map(|(p, c)| (vec![*p as u16], c.clone())).collect() }
    }

    /// Sums a list of terms whose monomials are in PBW order.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    /// The terms in monomial order.
    pub fn terms(&self) -> &BTreeMap<Monomial, F> {
        &self.terms
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True for the zero element.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when there are no terms; the same as [`PbwElement::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a monomial.
    pub fn coeff(&self, m: &[u16]) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    /// Filtration degree (0 for the zero element).
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Adds `c · m`.
    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        debug_assert!(m.windows(2).all(|w| w[0] <= w[1]), "monomials are non-decreasing");
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, c: &F, other: &Self) {
        for (m, x) in &other.terms {
            self.add_term(m.clone(), c.clone() * x.clone());
        }
    }

    /// `c · self`.
    pub fn scaled(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PbwElement { terms: self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())).collect() }
    }

    /// `self − other`.
    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&-F::one(), other);
        out
    }

    /// `self + other`.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&F::one(), other);
        out
    }

    /// The weight shared by all monomials, if any (the zero element has weight zero).
    pub fn weight(&self, table: &LieTable<F>) -> Option<Vec<i64>> {
        let mut it = self.terms.keys().map(|m| table.monomial_weight(m));
        let first = it.next().unwrap_or_else(|| table.monomial_weight(&[]));
        it.all(|w| w == first).then_some(first)
    }

    /// Drops all terms of degree above `cap`; the flag reports whether anything was dropped.
    pub fn truncated(&self, cap: usize) -> (Self, bool) {
        let terms: BTreeMap<Monomial, F> =
            self.terms.iter().filter(|(m, _)| m.len() <= cap).map(|(m, c)| (m.clone(), c.clone())).collect();
        let lost = terms.len() != self.terms.len();
        (PbwElement { terms }, lost)
    }

    /// The homogeneous component of the given degree.
    pub fn component(&self, degree: usize) -> Self {
        PbwElement {
            terms: self.terms.iter().filter(|(m, _)| m.len() == degree).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Renames factors through an injective, order-preserving index map.
    pub fn reindexed(&self, f: impl Fn(u16) -> u16) -> Self {
        PbwElement { terms: self.terms.iter().map(|(m, c)| (m.iter().map(|x| f(*x)).collect(), c.clone())).collect() }
    }

    /// Evaluates the element in an associative target, given the image of every basis element
    /// of `L`. The result is meaningful when the images satisfy the bracket relations.
    pub fn evaluate<T: Target<F>>(&self, images: &[Vec<F>], target: &T) -> Vec<F> {
        let mut out = vec![F::zero(); target.target_dim()];
        let mut cache: HashMap<&[u16], Vec<F>> = HashMap::new();
        for (m, c) in &self.terms {
            let v = eval_monomial(m, images, target, &mut cache);
            crate::exactla::axpy(&mut out, c, &v);
        }
        out
    }

    /// Human-readable form.
    pub fn format(&self, table: &LieTable<F>) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| format!("({})·{}", c.to_exact_string(), table.format_monomial(m)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn eval_monomial<'a, F: Field, T: Target<F>>(
    m: &'a [u16],
    images: &[Vec<F>],
    target: &T,
    cache: &mut HashMap<&'a [u16], Vec<F>>,
) -> Vec<F> {
    if m.is_empty() {
        return target.target_one();
    }
    if let Some(v) = cache.get(m) {
        return v.clone();
    }
    let prefix = eval_monomial(&m[..m.len() - 1], images, target, cache);
    let v = target.target_mul(&prefix, &images[*m.last().unwrap() as usize]);
    cache.insert(m, v.clone());
    v
}

/// Which part of the basis a monomial enumeration draws factors from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialSpace {
    /// Factors from `L₀`.
    Zero,
    /// Factors from `L₋`.
    Negative,
    /// Factors from all of `L`.
    All,
}

/// An enumerated monomial with its degree and weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaggedMonomial {
    pub monomial: Monomial,
    pub degree: usize,
    pub weight: Vec<i64>,
}

/// Number of monomials of degree at most `max_deg` in `dim` commuting variables.
pub fn monomial_count(dim: usize, max_deg: usize) -> u128 {
    binomial(dim as u128 + max_deg as u128, max_deg as u128)
}

/// All non-decreasing sequences over `factors` of length at most `max_deg`, by degree and then
/// lexicographically.
pub fn monomials_up_to(factors: std::ops::Range<usize>, max_deg: usize) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = vec![Vec::new()];
    let mut layer: Vec<Monomial> = vec![Vec::new()];
    for _ in 0..max_deg {
        let mut next = Vec::new();
        for m in &layer {
            let start = m.last().map_or(factors.start, |x| *x as usize);
            for f in start..factors.end {
                let mut w = m.clone();
                w.push(f as u16);
                next.push(w);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Enumerates PBW monomials of degree at most `max_deg` in the chosen block, optionally keeping
/// only a single weight.
pub fn monomial_enumerate<F: Field>(
    table: &LieTable<F>,
    space: MonomialSpace,
    max_deg: usize,
    weight: Option<&[i64]>,
    guard: u128,
) -> Result<Vec<TaggedMonomial>, EnvelopeError> {
    let range = match space {
        MonomialSpace::Zero => table.zero_range(),
        MonomialSpace::Negative => table.neg_range(),
        MonomialSpace::All => 0..table.dim(),
    };
    let count = monomial_count(range.len(), max_deg);
    if count > guard {
        return Err(EnvelopeError::TooManyMonomials { count, guard });
    }
    Ok(monomials_up_to(range, max_deg)
        .into_iter()
        .map(|m| {
            let w = table.monomial_weight(&m);
            TaggedMonomial { degree: m.len(), weight: w, monomial: m }
        })
        .filter(|t| weight.is_none_or(|w| t.weight == w))
        .collect())
}

/// Arithmetic in `U(L)` for a fixed Lie table, with concurrent memo tables for straightening.
#[derive(Debug)]
pub struct Envelope<F> {
    table: Arc<LieTable<F>>,
    left: DashMap<(u16, Monomial), Arc<Terms<F>>>,
    right: DashMap<(Monomial, u16), Arc<Terms<F>>>,
    pruned: DashMap<(u16, Monomial), Arc<Terms<F>>>,
    memo_limit: usize,
}

impl<F: Field> Envelope<F> {
    /// An envelope with the default memo limit.
    pub fn new(table: LieTable<F>) -> Self {
        Self::with_memo_limit(table, MEMO_LIMIT)
    }

    /// An envelope whose memo tables stop growing at `memo_limit` entries each.
    pub fn with_memo_limit(table: LieTable<F>, memo_limit: usize) -> Self {
        Envelope {
            table: Arc::new(table),
            left: DashMap::new(),
            right: DashMap::new(),
            pruned: DashMap::new(),
            memo_limit,
        }
    }

    /// The underlying Lie table.
    pub fn table(&self) -> &LieTable<F> {
        &self.table
    }

    /// Total number of memoized straightening results.
    pub fn memo_size(&self) -> usize {
        self.left.len() + self.right.len() + self.pruned.len()
    }

    /// Normal form of `b_x · m`. With `prune`, monomials containing a positive-block factor are
    /// dropped; they span the left ideal `U(L)L₊`, so pruning commutes with left multiplication.
    fn left_gen(&self, x: u16, m: &[u16], prune: bool) -> Arc<Terms<F>> {
        let pos = self.table.zero_end as u16;
        if m.first().is_none_or(|y| x <= *y) {
            if prune && (x >= pos || m.last().is_some_and(|z| *z >= pos)) {
                return Arc::new(Vec::new());
            }
            let mut w = Vec::with_capacity(m.len() + 1);
            w.push(x);
            w.extend_from_slice(m);
            return Arc::new(vec![(w, F::one())]);
        }
        let memo = if prune { &self.pruned } else { &self.left };
        let key = (x, m.to_vec());
        if let Some(hit) = memo.get(&key).map(|r| r.value().clone()) {
            return hit;
        }
        let (y, rest) = (m[0], &m[1..]);
        let mut acc: HashMap<Monomial, F> = HashMap::new();
        let inner = self.left_gen(x, rest, prune);
        for (m2, c) in inner.iter() {
            for (m3, c2) in self.left_gen(y, m2, prune).iter() {
                accumulate(&mut acc, m3, c.clone() * c2.clone());
            }
        }
        for (z, c) in self.table.bracket(x as usize, y as usize).entries() {
            for (m3, c2) in self.left_gen(*z as u16, rest, prune).iter() {
                accumulate(&mut acc, m3, c.clone() * c2.clone());
            }
        }
        let out = Arc::new(finish_terms(acc));
        if memo.len() < self.memo_limit {
            memo.insert(key, out.clone());
        }
        out
    }

    /// Normal form of `m · b_x`.
    fn right_gen(&self, m: &[u16], x: u16) -> Arc<Terms<F>> {
        if m.last().is_none_or(|z| *z <= x) {
            let mut w = Vec::with_capacity(m.len() + 1);
            w.extend_from_slice(m);
            w.push(x);
            return Arc::new(vec![(w, F::one())]);
        }
        let key = (m.to_vec(), x);
        if let Some(hit) = self.right.get(&key).map(|r| r.value().clone()) {
            return hit;
        }
        let (prefix, z) = (&m[..m.len() - 1], m[m.len() - 1]);
        let mut acc: HashMap<Monomial, F> = HashMap::new();
        let inner = self.right_gen(prefix, x);
        for (m2, c) in inner.iter() {
            for (m3, c2) in self.right_gen(m2, z).iter() {
                accumulate(&mut acc, m3, c.clone() * c2.clone());
            }
        }
        for (w, c) in self.table.bracket(z as usize, x as usize).entries() {
            for (m3, c2) in self.right_gen(prefix, *w as u16).iter() {
                accumulate(&mut acc, m3, c.clone() * c2.clone());
            }
        }
        let out = Arc::new(finish_terms(acc));
        if self.right.len() < self.memo_limit {
            self.right.insert(key, out.clone());
        }
        out
    }

    /// `b_x · u`.
    pub fn gen_times(&self, x: usize, u: &PbwElement<F>) -> PbwElement<F> {
        self.lie_times(&SparseVec::unit(x, F::one()), u)
    }

    /// `u · b_x`.
    pub fn times_gen(&self, u: &PbwElement<F>, x: usize) -> PbwElement<F> {
        let mut out = PbwElement::zero();
        for (m, c) in &u.terms {
            for (m2, c2) in self.right_gen(m, x as u16).iter() {
                out.add_term(m2.clone(), c.clone() * c2.clone());
            }
        }
        out
    }

    /// `x · u` for a Lie algebra element `x`.
    pub fn lie_times(&self, x: &SparseVec<F>, u: &PbwElement<F>) -> PbwElement<F> {
        self.lie_times_inner(x, u, false)
    }

    /// `x · u` modulo the left ideal `U(L)L₊`: every monomial with a positive-block factor is
    /// dropped. On `U(L₋)U(L₀)` this is the action on `U(L) ⊗_{U(L₊)} k`.
    pub fn lie_times_mod_positive(&self, x: &SparseVec<F>, u: &PbwElement<F>) -> PbwElement<F> {
        self.lie_times_inner(x, u, true)
    }

    fn lie_times_inner(&self, x: &SparseVec<F>, u: &PbwElement<F>, prune: bool) -> PbwElement<F> {
        let mut acc: HashMap<Monomial, F> = HashMap::new();
        for (p, a) in x.entries() {
            for (m, c) in &u.terms {
                let ac = a.clone() * c.clone();
                for (m2, c2) in self.left_gen(*p as u16, m, prune).iter() {
                    accumulate(&mut acc, m2, ac.clone() * c2.clone());
                }
            }
        }
        PbwElement { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Normal form of the product `x₁ ⋯ x_r` of Lie algebra elements.
    pub fn word(&self, word: &[SparseVec<F>]) -> PbwElement<F> {
        let mut v = PbwElement::one();
        for x in word.iter().rev() {
            v = self.lie_times(x, &v);
        }
        v
    }

    /// PBW normal form of `x · y`. Fails when `deg x + deg y` exceeds `cap` unless truncation is
    /// allowed, in which case terms above the cap are dropped and the flag is set.
    pub fn multiply(
        &self,
        x: &PbwElement<F>,
        y: &PbwElement<F>,
        cap: usize,
        allow_truncation: bool,
    ) -> Result<(PbwElement<F>, bool), EnvelopeError> {
        let needed = x.degree() + y.degree();
        if needed > cap && !allow_truncation {
            return Err(EnvelopeError::CapExceeded { needed, cap });
        }
        let mut out = PbwElement::zero();
        for (m, c) in &x.terms {
            let mut v = y.clone();
            for f in m.iter().rev() {
                v = self.gen_times(*f as usize, &v);
            }
            out.add_scaled(c, &v);
        }
        Ok(if needed > cap { out.truncated(cap) } else { (out, false) })
    }

    /// Exact product without a cap.
    pub fn mul(&self, x: &PbwElement<F>, y: &PbwElement<F>) -> PbwElement<F> {
        let cap = x.degree() + y.degree();
        self.multiply(x, y, cap, false).expect("the cap equals the degree sum").0
    }

    /// The Harish-Chandra projection of a weight-zero element onto `U(L₀)`, with factors still
    /// indexed in the full basis.
    pub fn harish_chandra_pi0(&self, x: &PbwElement<F>) -> Result<PbwElement<F>, EnvelopeError> {
        let zero = self.table.zero_range();
        let origin = self.table.monomial_weight(&[]);
        if x.terms.keys().any(|m| self.table.monomial_weight(m) != origin) {
            return Err(EnvelopeError::NonZeroWeight);
        }
        Ok(PbwElement {
            terms: x
                .terms
                .iter()
                .filter(|(m, _)| m.iter().all(|f| zero.contains(&(*f as usize))))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }

    /// `π₀(x₁ ⋯ x_r)` for a weight-zero product of Lie algebra elements, computed from the right
    /// while discarding the left ideal `U(L)L₊` at every step.
    pub fn pi0_word(&self, word: &[SparseVec<F>]) -> Result<PbwElement<F>, EnvelopeError> {
        let mut total = self.table.monomial_weight(&[]);
        for x in word {
            let mut w: Option<Vec<i64>> = None;
            for (p, _) in x.entries() {
                let wp = self.table.weight(*p as usize);
                match &w {
                    None => w = Some(wp.to_vec()),
                    Some(v) if v.as_slice() != wp => return Err(EnvelopeError::NonZeroWeight),
                    _ => {}
                }
            }
            if let Some(w) = w {
                total.iter_mut().zip(&w).for_each(|(a, b)| *a += b);
            }
        }
        if total.iter().any(|c| *c != 0) {
            return Err(EnvelopeError::NonZeroWeight);
        }
        let mut v = PbwElement::one();
        for x in word.iter().rev() {
            v = self.lie_times_inner(x, &v, true);
        }
        self.harish_chandra_pi0(&v)
    }

    /// Image of `u` under the algebra map `U(L') → U(L)` induced by a Lie homomorphism given by
    /// the images of the basis of `L'`.
    pub fn image_of(&self, u: &PbwElement<F>, images: &[SparseVec<F>]) -> PbwElement<F> {
        let mut out = PbwElement::zero();
        for (m, c) in &u.terms {
            let mut v = PbwElement::scalar(c.clone());
            for f in m.iter().rev() {
                v = self.lie_times(&images[*f as usize], &v);
                if v.is_zero() {
                    break;
                }
            }
            out.add_scaled(&F::one(), &v);
        }
        out
    }
}

fn accumulate<F: Field>(acc: &mut HashMap<Monomial, F>, m: &Monomial, c: F) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(m) {
        Some(e) => *e += c,
        None => {
            acc.insert(m.clone(), c);
        }
    }
}

fn finish_terms<F: Field>(acc: HashMap<Monomial, F>) -> Terms<F> {
    let mut out: Terms<F> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::exactla::Q;

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    fn sl2() -> Envelope<Q> {
        let l = GradedLie::sl(&Algebra::<Q>::ground(), 2).unwrap();
        Envelope::new(LieTable::from_graded(&l, Exec::Sequential))
    }

    #[test]
    fn ordered_factors_concatenate() {
        let env = sl2();
        let p = env.mul(&PbwElement::monomial(vec![0], q(1)), &PbwElement::monomial(vec![2], q(1)));
        assert_eq!(p, PbwElement::monomial(vec![0, 2], q(1)));
    }

    #[test]
    fn e_times_f_straightens() {
        let env = sl2();
        let ef = env.mul(&PbwElement::monomial(vec![2], q(1)), &PbwElement::monomial(vec![0], q(1)));
        let expected = PbwElement::from_terms([(vec![0, 2], q(1)), (vec![1], q(1))]);
        assert_eq!(ef, expected);
    }

    #[test]
    fn cap_is_enforced() {
        let env = sl2();
        let x = PbwElement::monomial(vec![2, 2], q(1));
        assert!(matches!(env.multiply(&x, &x, 3, false), Err(EnvelopeError::CapExceeded { .. })));
        let (t, lost) = env.multiply(&x, &PbwElement::monomial(vec![0], q(1)), 2, true).unwrap();
        assert!(lost);
        assert!(t.degree() <= 2);
    }

    #[test]
    fn pi0_of_e_f_is_big_h() {
        let a = Algebra::<Q>::trunc_poly(2).unwrap();
        let l = GradedLie::sl(&a, 2).unwrap();
        let env = Envelope::new(LieTable::from_graded(&l, Exec::Sequential));
        for x in 0..2 {
            for y in 0..2 {
                let e = SparseVec::from_dense(&l.e(1, &a.basis(x)).unwrap());
                let f = SparseVec::from_dense(&l.f(1, &a.basis(y)).unwrap());
                let h = SparseVec::from_dense(&l.big_h(1, &a.basis(x), &a.basis(y)).unwrap());
                assert_eq!(env.pi0_word(&[e, f]).unwrap(), PbwElement::from_lie(&h));
            }
        }
    }

    #[test]
    fn pi0_fixes_zero_weight_monomials() {
        let env = sl2();
        let u = PbwElement::from_terms([(vec![1, 1], q(3)), (vec![], q(2))]);
        assert_eq!(env.harish_chandra_pi0(&u).unwrap(), u);
        assert_eq!(env.harish_chandra_pi0(&PbwElement::monomial(vec![2], q(1))), Err(EnvelopeError::NonZeroWeight));
    }

    #[test]
    fn enumeration_counts() {
        let table = LieTable::<Q>::new(
            vec!["x".into(), "y".into()],
            vec![vec![0], vec![0]],
            vec![SparseVec::zero(); 4],
            (0, 2),
        )
        .unwrap();
        let all = monomial_enumerate(&table, MonomialSpace::All, 2, None, MONOMIAL_GUARD).unwrap();
        assert_eq!(all.len(), 6);
        let by_degree: u128 = (0..=3u128).map(|k| binomial(62 + k, k)).sum();
        assert_eq!(monomial_count(63, 3), by_degree);
        assert_eq!(monomials_up_to(0..63, 3).len() as u128, by_degree);
        assert!(matches!(
            monomial_enumerate(&table, MonomialSpace::All, 30, None, 10),
            Err(EnvelopeError::TooManyMonomials { .. })
        ));
    }

    #[test]
    fn weight_filter_on_negative_part() {
        let a = Algebra::<Q>::trunc_poly(3).unwrap();
        let l = GradedLie::sl(&a, 2).unwrap();
        let table = LieTable::from_graded(&l, Exec::Sequential);
        let ms = monomial_enumerate(&table, MonomialSpace::Negative, 1, Some(&[-1]), MONOMIAL_GUARD).unwrap();
        let expected: Vec<Monomial> = (0..3).map(|b| vec![l.root_basis_index(1, 0, b) as u16]).collect();
        assert_eq!(ms.into_iter().map(|t| t.monomial).collect::<Vec<_>>(), expected);
    }

    #[test]
    fn quotient_by_centre() {
        let a = Algebra::<Q>::matrix(2).unwrap();
        let l = GradedLie::sl(&a, 2).unwrap();
        let t = LieTable::zero_part(&l, Exec::Sequential);
        assert_eq!(t.jacobi_violation(), None);
        let h1 = SparseVec::from_dense(&l.h(1, a.unit()).unwrap());
        let off = l.zero_range().start as u32;
        let ideal = t.lie_ideal_generated(&[h1.map_indices(|m| m - off)]);
        assert_eq!(ideal.dim(), 1);
        let (qt, images) = t.quotient(&ideal);
        assert_eq!(qt.dim(), t.dim() - 1);
        assert_eq!(images.len(), t.dim());
        assert_eq!(qt.jacobi_violation(), None);
    }
}
