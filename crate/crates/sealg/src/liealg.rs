//! Type-A root data and the root-graded Lie algebra `sl_n(A)` over an associative algebra `A`.
//!
//! `sl_n(A) = {x ∈ gl_n(A) : tr(x) ∈ [A,A]}`. The basis used here is
//! negative root vectors `b_a E_ij` (`i > j`), then the zero-weight part
//! `L₀ = [A,A]E_kk ⊕ ⨁_i h_i(A)`, then positive root vectors (`i < j`). Brackets are computed
//! through the matrix realization in `gl_n(A)`.

use std::collections::HashMap;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{format_combination, Algebra, LinearMap};
use crate::exactla::{axpy, is_zero_vec, Coordinatizer, Field, SparseAccumulator, SparseVec, Subspace};
use crate::Exec;

/// Upper limit on `dim sl_n(A)`.
pub const LIE_DIM_GUARD: usize = 5000;

/// Errors raised by the Lie algebra layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("n must be at least 2")]
    RankTooSmall,
    #[error("dimension {0} exceeds the guard of {LIE_DIM_GUARD}")]
    TooLarge(usize),
    #[error("element is not in sl_n(A): trace outside [A,A]")]
    NotInL,
    #[error("element is not of weight zero")]
    NotInL0,
    #[error("invalid weight: {0}")]
    BadWeight(String),
    #[error("structural check failed: {0}")]
    Invariant(String),
}

/// The root datum of type `A_{n−1}` (matrices of size `n`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootDatumA {
    pub n: usize,
}

impl RootDatumA {
    /// Number of simple roots.
    pub fn rank(&self) -> usize {
        self.n - 1
    }

    /// Cartan matrix entry `⟨α_i, α_j^∨⟩` (0-based indices).
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        if i == j {
            2
        } else if i.abs_diff(j) == 1 {
            -1
        } else {
            0
        }
    }

    /// Values `⟨μ, α_i^∨⟩` of a weight given in simple-root coordinates.
    pub fn h_values(&self, alpha: &[i64]) -> Vec<i64> {
        (0..self.rank()).map(|i| (0..self.rank()).map(|j| alpha[j] * self.cartan(j, i)).sum()).collect()
    }

    /// Simple-root coordinates of a weight given in fundamental-weight coordinates, when
    /// they are integers.
    pub fn to_alpha(&self, w: &[i64]) -> Option<Vec<i64>> {
        let n = self.n as i64;
        (0..self.rank())
            .map(|j| {
                let s: i64 = (0..self.rank())
                    .map(|i| {
                        let (a, b) = ((i + 1) as i64, (j + 1) as i64);
                        w[i] * a.min(b) * (n - a.max(b))
                    })
                    .sum();
                (s % n == 0).then_some(s / n)
            })
            .collect()
    }
}

/// An integral weight in fundamental-weight coordinates: `λ = Σ ℓ_i ϖ_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub coords: Vec<i64>,
}

impl Weight {
    /// Builds a weight.
    pub fn new(coords: Vec<i64>) -> Self {
        Weight { coords }
    }

    /// The zero weight of the given rank.
    pub fn zero(rank: usize) -> Self {
        Weight { coords: vec![0; rank] }
    }

    /// `ℓ ϖ_i` (1-based `i`).
    pub fn multiple_of_fundamental(rank: usize, i: usize, ell: i64) -> Self {
        let mut coords = vec![0; rank];
        coords[i - 1] = ell;
        Weight { coords }
    }

    /// Parses a comma-separated coordinate list such as `1,1,0`.
    pub fn parse(s: &str) -> Result<Self, LieError> {
        let coords = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| LieError::BadWeight(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Weight { coords })
    }

    /// Rank of the ambient root system.
    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// `λ(h_i)` (1-based `i`).
    pub fn h_value(&self, i: usize) -> i64 {
        self.coords[i - 1]
    }

    /// True when every coordinate is non-negative.
    pub fn is_dominant(&self) -> bool {
        self.coords.iter().all(|c| *c >= 0)
    }

    /// `max_i ℓ_i`.
    pub fn max_coord(&self) -> i64 {
        self.coords.iter().copied().max().unwrap_or(0)
    }

    /// True when `μ ≤ self`, i.e. `self − μ` is a non-negative integer combination of simple
    /// roots.
    pub fn dominates(&self, mu: &Weight, datum: RootDatumA) -> bool {
        let diff: Vec<i64> = self.coords.iter().zip(&mu.coords).map(|(a, b)| a - b).collect();
        datum.to_alpha(&diff).is_some_and(|x| x.iter().all(|c| *c >= 0))
    }

    /// True when no two adjacent nodes lie in the support.
    pub fn is_totally_disconnected(&self) -> bool {
        self.coords.windows(2).all(|w| w[0] == 0 || w[1] == 0)
    }

    /// The image under the diagram flip: `ϖ_i ↦ ϖ_{n−i}`.
    pub fn flipped(&self) -> Weight {
        Weight { coords: self.coords.iter().rev().copied().collect() }
    }

    /// Comma-separated rendering.
    pub fn to_compact(&self) -> String {
        self.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// A basis element of `sl_n(A)`; matrix indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LieBasis {
    /// `b_a E_ij` with `i ≠ j`.
    Root { i: usize, j: usize, a: usize },
    /// `c_t E_kk` for the `t`-th basis vector of `[A,A]`.
    Comm { t: usize },
    /// `h_i(b_a) = b_a (E_ii − E_{i+1,i+1})`.
    H { i: usize, a: usize },
}

/// A sparse element of `gl_n(A)`: entries `(row, col, coordinates in A)`.
pub type GlSparse<F> = Vec<(usize, usize, Vec<F>)>;

/// The Lie algebra `sl_n(A)` with its triangular decomposition.
#[derive(Debug)]
pub struct GradedLie<F> {
    coeff: Algebra<F>,
    n: usize,
    k: usize,
    comm_basis: Vec<Vec<F>>,
    comm_coord: Coordinatizer<F>,
    basis: Vec<LieBasis>,
    labels: Vec<String>,
    weights: Vec<Vec<i64>>,
    root_index: HashMap<(usize, usize), usize>,
    n_neg: usize,
    n_zero: usize,
    rows: Vec<OnceLock<Vec<SparseVec<F>>>>,
}

impl<F: Field> Clone for GradedLie<F> {
    fn clone(&self) -> Self {
        Self::build(self.coeff.clone(), self.n, self.k).expect("rebuilding a valid algebra")
    }
}

impl<F: Field> GradedLie<F> {
    /// Builds `sl_n(A)` with the `L₀` split at `k = 1`, running the structural checks.
    pub fn sl(a: &Algebra<F>, n: usize) -> Result<Self, LieError> {
        Self::sl_split(a, n, 1)
    }

    /// Builds `sl_n(A)` with the `L₀` split `[A,A]E_kk ⊕ ⨁ h_i(A)` (1-based `k`), running the
    /// structural checks.
    pub fn sl_split(a: &Algebra<F>, n: usize, k: usize) -> Result<Self, LieError> {
        let l = Self::build(a.clone(), n, k)?;
        l.verify(500, 0x00c0_ffee)?;
        Ok(l)
    }

    fn build(coeff: Algebra<F>, n: usize, k: usize) -> Result<Self, LieError> {
        if n < 2 {
            return Err(LieError::RankTooSmall);
        }
        if k == 0 || k > n {
            return Err(LieError::IndexOutOfRange(k));
        }
        if coeff.dim() == 0 || coeff.unit() != coeff.basis(0).as_slice() {
            return Err(LieError::Invariant("the unit of A must be basis element 0".into()));
        }
        let d = coeff.dim();
        let comm_basis = coeff.derived_spaces().commutator.basis_dense();
        let comm_coord = Coordinatizer::new(d, &comm_basis).expect("echelon basis is independent");
        let r = comm_basis.len();
        let total = n * n * d - (d - r);
        if total > LIE_DIM_GUARD {
            return Err(LieError::TooLarge(total));
        }
        let mut basis = Vec::with_capacity(total);
        let mut labels = Vec::with_capacity(total);
        let mut weights = Vec::with_capacity(total);
        let mut root_index = HashMap::new();
        let root_weight = |i: usize, j: usize| -> Vec<i64> {
            let mut w = vec![0i64; n - 1];
            if i < j {
                w[i..j].iter_mut().for_each(|x| *x = 1);
            } else {
                w[j..i].iter_mut().for_each(|x| *x = -1);
            }
            w
        };
        let push_roots = |lower: bool,
                          basis: &mut Vec<LieBasis>,
                          labels: &mut Vec<String>,
                          weights: &mut Vec<Vec<i64>>,
                          root_index: &mut HashMap<(usize, usize), usize>| {
            for i in 0..n {
                for j in 0..n {
                    if (lower && i > j) || (!lower && i < j) {
                        root_index.insert((i, j), basis.len());
                        for a in 0..d {
                            basis.push(LieBasis::Root { i, j, a });
                            labels.push(format!("E{}{}({})", i + 1, j + 1, coeff.labels()[a]));
                            weights.push(root_weight(i, j));
                        }
                    }
                }
            }
        };
        push_roots(true, &mut basis, &mut labels, &mut weights, &mut root_index);
        let n_neg = basis.len();
        for (t, c) in comm_basis.iter().enumerate() {
            basis.push(LieBasis::Comm { t });
            labels.push(format!("[{}]E{k}{k}", format_combination(c, coeff.labels())));
            weights.push(vec![0; n - 1]);
        }
        for i in 0..n - 1 {
            for a in 0..d {
                basis.push(LieBasis::H { i, a });
                labels.push(format!("h{}({})", i + 1, coeff.labels()[a]));
                weights.push(vec![0; n - 1]);
            }
        }
        let n_zero = basis.len() - n_neg;
        push_roots(false, &mut basis, &mut labels, &mut weights, &mut root_index);
        let dim = basis.len();
        debug_assert_eq!(dim, total);
        Ok(GradedLie {
            coeff,
            n,
            k,
            comm_basis,
            comm_coord,
            basis,
            labels,
            weights,
            root_index,
            n_neg,
            n_zero,
            rows: (0..dim).map(|_| OnceLock::new()).collect(),
        })
    }

    /// Checks weight additivity on all basis pairs touched by the sample, the Jacobi identity on
    /// `samples` random basis triples, `L₀ = Σ_i [L_{α_i}, L_{−α_i}]`, and that `[A,A]E_kk` is an
    /// ideal of `L₀`.
    pub fn verify(&self, samples: usize, seed: u64) -> Result<(), LieError> {
        let dim = self.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let (p, q, r) = (rng.gen_range(0..dim), rng.gen_range(0..dim), rng.gen_range(0..dim));
            let mut acc = SparseAccumulator::default();
            for (x, y, z) in [(p, q, r), (q, r, p), (r, p, q)] {
                let yz = self.bracket_basis(y, z);
                for (m, c) in yz.entries() {
                    acc.add_vec(c, self.bracket_basis(x, *m as usize));
                }
            }
            if !acc.finish().is_zero() {
                return Err(LieError::Invariant(format!("Jacobi fails on ({p}, {q}, {r})")));
            }
            let target: Vec<i64> = self.weights[p].iter().zip(&self.weights[q]).map(|(a, b)| a + b).collect();
            for (m, _) in self.bracket_basis(p, q).entries() {
                if self.weights[*m as usize] != target {
                    return Err(LieError::Invariant(format!("weight additivity fails on ({p}, {q})")));
                }
            }
        }
        let l0 = self.zero_range();
        let mut span = Subspace::zero(dim);
        for i in 0..self.n - 1 {
            let pos = self.root_index[&(i, i + 1)];
            let neg = self.root_index[&(i + 1, i)];
            for p in pos..pos + self.coeff.dim() {
                for q in neg..neg + self.coeff.dim() {
                    span.insert(self.bracket_basis(p, q));
                }
            }
        }
        if span.dim() != self.n_zero || span.pivots().iter().any(|c| !l0.contains(c)) {
            return Err(LieError::Invariant("L₀ is not spanned by the H_i(A, A)".into()));
        }
        let comm = self.n_neg..self.n_neg + self.comm_basis.len();
        for p in comm.clone() {
            for q in l0.clone() {
                if self.bracket_basis(p, q).entries().iter().any(|(m, _)| !comm.contains(&(*m as usize))) {
                    return Err(LieError::Invariant("[A,A]E_kk is not an ideal of L₀".into()));
                }
            }
        }
        Ok(())
    }

    /// The coefficient algebra `A`.
    pub fn coeff(&self) -> &Algebra<F> {
        &self.coeff
    }

    /// Matrix size `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The root datum.
    pub fn datum(&self) -> RootDatumA {
        RootDatumA { n: self.n }
    }

    /// The split index `k` (1-based) of the `L₀` coordinates.
    pub fn split(&self) -> usize {
        self.k
    }

    /// Dimension of `L`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of `L₀`.
    pub fn dim_l0(&self) -> usize {
        self.n_zero
    }

    /// The basis of `[A,A]` used for the `c_t E_kk` elements.
    pub fn comm_basis(&self) -> &[Vec<F>] {
        &self.comm_basis
    }

    /// The basis descriptors.
    pub fn basis(&self) -> &[LieBasis] {
        &self.basis
    }

    /// Basis labels.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Weight of a basis element in simple-root coordinates.
    pub fn weight(&self, p: usize) -> &[i64] {
        &self.weights[p]
    }

    /// Indices of `L₋`.
    pub fn neg_range(&self) -> std::ops::Range<usize> {
        0..self.n_neg
    }

    /// Indices of `L₀`.
    pub fn zero_range(&self) -> std::ops::Range<usize> {
        self.n_neg..self.n_neg + self.n_zero
    }

    /// Indices of `L₊`.
    pub fn pos_range(&self) -> std::ops::Range<usize> {
        self.n_neg + self.n_zero..self.dim()
    }

    /// Index of the basis element `b_a E_ij` (0-based matrix indices).
    pub fn root_basis_index(&self, i: usize, j: usize, a: usize) -> usize {
        self.root_index[&(i, j)] + a
    }

    /// Index of `h_i(b_a)` (0-based `i`).
    pub fn h_basis_index(&self, i: usize, a: usize) -> usize {
        self.n_neg + self.comm_basis.len() + i * self.coeff.dim() + a
    }

    /// The sparse `gl_n(A)` matrix of a basis element.
    pub fn basis_gl(&self, p: usize) -> GlSparse<F> {
        match self.basis[p] {
            LieBasis::Root { i, j, a } => vec![(i, j, self.coeff.basis(a))],
            LieBasis::Comm { t } => vec![(self.k - 1, self.k - 1, self.comm_basis[t].clone())],
            LieBasis::H { i, a } => {
                let b = self.coeff.basis(a);
                let nb: Vec<F> = b.iter().map(|x| -x.clone()).collect();
                vec![(i, i, b), (i + 1, i + 1, nb)]
            }
        }
    }

    /// The `gl_n(A)` matrix of an element, as dense `n × n` entries in `A`.
    pub fn to_gl(&self, x: &[F]) -> Vec<Vec<F>> {
        let mut out = vec![self.coeff.zero(); self.n * self.n];
        for (p, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, j, v) in self.basis_gl(p) {
                axpy(&mut out[i * self.n + j], c, &v);
            }
        }
        out
    }

    /// Coordinates of a `gl_n(A)` matrix in `L`; fails when the trace is outside `[A,A]`.
    pub fn from_gl(&self, m: &[Vec<F>]) -> Result<Vec<F>, LieError> {
        let entries: GlSparse<F> = (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .filter(|(i, j)| !is_zero_vec(&m[i * self.n + j]))
            .map(|(i, j)| (i, j, m[i * self.n + j].clone()))
            .collect();
        Ok(self.sparse_from_gl(&entries)?.to_dense(self.dim()))
    }

    fn sparse_from_gl(&self, m: &GlSparse<F>) -> Result<SparseVec<F>, LieError> {
        let mut acc: Vec<(u32, F)> = Vec::new();
        let mut diag = vec![self.coeff.zero(); self.n];
        for (i, j, v) in m {
            if i == j {
                axpy(&mut diag[*i], &F::one(), v);
            } else {
                let base = self.root_index[&(*i, *j)];
                for (a, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        acc.push(((base + a) as u32, c.clone()));
                    }
                }
            }
        }
        let (c, hs) = self.split_diagonal(&diag, self.k)?;
        for (t, x) in c.into_iter().enumerate() {
            if !x.is_zero() {
                acc.push(((self.n_neg + t) as u32, x));
            }
        }
        for (i, a_i) in hs.iter().enumerate() {
            for (a, x) in a_i.iter().enumerate() {
                if !x.is_zero() {
                    acc.push((self.h_basis_index(i, a) as u32, x.clone()));
                }
            }
        }
        Ok(SparseVec::from_unsorted(acc))
    }

    /// Splits a diagonal `x = Σ x_i E_ii` with trace in `[A,A]` as `c E_kk + Σ h_i(a_i)`,
    /// returning the coordinates of `c` in the `[A,A]` basis and the `a_i`.
    fn split_diagonal(&self, diag: &[Vec<F>], k: usize) -> Result<(Vec<F>, Vec<Vec<F>>), LieError> {
        let n = self.n;
        let mut trace = self.coeff.zero();
        for x in diag {
            axpy(&mut trace, &F::one(), x);
        }
        let c = self.comm_coord.coordinates(&trace).ok_or(LieError::NotInL)?;
        let mut hs = vec![self.coeff.zero(); n - 1];
        for (j, h) in hs.iter_mut().enumerate() {
            if j + 1 < k {
                for x in &diag[..=j] {
                    axpy(h, &F::one(), x);
                }
            } else {
                for x in &diag[j + 1..] {
                    axpy(h, &-F::one(), x);
                }
            }
        }
        Ok((c, hs))
    }

    /// `[b_p, b_q]` as a sparse coordinate vector (cached per row).
    pub fn bracket_basis(&self, p: usize, q: usize) -> &SparseVec<F> {
        &self.rows[p].get_or_init(|| (0..self.dim()).map(|q| self.compute_bracket(p, q)).collect())[q]
    }

    /// Fills the bracket cache.
    pub fn precompute(&self, exec: Exec) {
        exec.map_range(self.dim(), |p| {
            self.bracket_basis(p, 0);
        });
    }

    fn compute_bracket(&self, p: usize, q: usize) -> SparseVec<F> {
        let (x, y) = (self.basis_gl(p), self.basis_gl(q));
        let mut prod: GlSparse<F> = Vec::new();
        for (sign, l, r) in [(F::one(), &x, &y), (-F::one(), &y, &x)] {
            for (i, m, u) in l {
                for (m2, j, v) in r {
                    if m == m2 {
                        let mut w = self.coeff.mul(u, v);
                        w.iter_mut().for_each(|c| *c *= sign.clone());
                        prod.push((*i, *j, w));
                    }
                }
            }
        }
        self.sparse_from_gl(&prod).expect("brackets lie in sl_n(A)")
    }

    /// Bracket of two elements.
    pub fn bracket(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = SparseAccumulator::default();
        for (p, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (q, b) in y.iter().enumerate() {
                if !b.is_zero() {
                    out.add_vec(&(a.clone() * b.clone()), self.bracket_basis(p, q));
                }
            }
        }
        out.finish().to_dense(self.dim())
    }

    /// The weight of `x` if it is homogeneous (the zero vector has no weight).
    pub fn weight_of(&self, x: &[F]) -> Option<Vec<i64>> {
        let mut w: Option<&Vec<i64>> = None;
        for (p, c) in x.iter().enumerate() {
            if !c.is_zero() {
                match w {
                    None => w = Some(&self.weights[p]),
                    Some(v) if *v != self.weights[p] => return None,
                    _ => {}
                }
            }
        }
        w.cloned()
    }

    fn check_i(&self, i: usize) -> Result<(), LieError> {
        if i == 0 || i >= self.n {
            return Err(LieError::IndexOutOfRange(i));
        }
        Ok(())
    }

    fn root_element(&self, i: usize, j: usize, a: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim()];
        let base = self.root_index[&(i, j)];
        out[base..base + self.coeff.dim()].clone_from_slice(a);
        out
    }

    /// `E_ij(a) = a E_ij` (1-based, `i ≠ j`).
    pub fn e_ij(&self, i: usize, j: usize, a: &[F]) -> Result<Vec<F>, LieError> {
        if i == 0 || i > self.n {
            return Err(LieError::IndexOutOfRange(i));
        }
        if j == 0 || j > self.n || i == j {
            return Err(LieError::IndexOutOfRange(j));
        }
        Ok(self.root_element(i - 1, j - 1, a))
    }

    /// `e_i(a) = a E_{i,i+1}` (1-based).
    pub fn e(&self, i: usize, a: &[F]) -> Result<Vec<F>, LieError> {
        self.check_i(i)?;
        Ok(self.root_element(i - 1, i, a))
    }

    /// `f_i(a) = a E_{i+1,i}` (1-based).
    pub fn f(&self, i: usize, a: &[F]) -> Result<Vec<F>, LieError> {
        self.check_i(i)?;
        Ok(self.root_element(i, i - 1, a))
    }

    /// `h_i(a) = a(E_ii − E_{i+1,i+1})` (1-based).
    pub fn h(&self, i: usize, a: &[F]) -> Result<Vec<F>, LieError> {
        self.check_i(i)?;
        let mut out = vec![F::zero(); self.dim()];
        let base = self.h_basis_index(i - 1, 0);
        out[base..base + self.coeff.dim()].clone_from_slice(a);
        Ok(out)
    }

    /// `H_i(a, b) = ab E_ii − ba E_{i+1,i+1}` (1-based).
    pub fn big_h(&self, i: usize, a: &[F], b: &[F]) -> Result<Vec<F>, LieError> {
        self.check_i(i)?;
        let mut m = vec![self.coeff.zero(); self.n * self.n];
        m[(i - 1) * self.n + (i - 1)] = self.coeff.mul(a, b);
        m[i * self.n + i] = self.coeff.mul(b, a).into_iter().map(|x| -x).collect();
        self.from_gl(&m)
    }

    /// `a E_jj` for a diagonal position `j` (1-based), when `a ∈ [A,A]`.
    pub fn diag_unit(&self, j: usize, a: &[F]) -> Result<Vec<F>, LieError> {
        if j == 0 || j > self.n {
            return Err(LieError::IndexOutOfRange(j));
        }
        let mut m = vec![self.coeff.zero(); self.n * self.n];
        m[(j - 1) * self.n + (j - 1)] = a.to_vec();
        self.from_gl(&m)
    }

    /// Coordinates of `x ∈ L₀` in the split `x = cE_kk + Σ h_i(a_i)` for any `k` (1-based):
    /// returns `c ∈ [A,A]` (as an element of `A`) and the `a_i`.
    pub fn l0_coordinates(&self, x: &[F], k: usize) -> Result<(Vec<F>, Vec<Vec<F>>), LieError> {
        if k == 0 || k > self.n {
            return Err(LieError::IndexOutOfRange(k));
        }
        if x.iter().enumerate().any(|(p, c)| !c.is_zero() && !self.zero_range().contains(&p)) {
            return Err(LieError::NotInL0);
        }
        let m = self.to_gl(x);
        let diag: Vec<Vec<F>> = (0..self.n).map(|i| m[i * self.n + i].clone()).collect();
        let (coords, hs) = self.split_diagonal(&diag, k)?;
        let mut c = self.coeff.zero();
        for (t, v) in coords.iter().zip(&self.comm_basis) {
            axpy(&mut c, t, v);
        }
        Ok((c, hs))
    }

    /// Reassembles `cE_kk + Σ h_i(a_i)`.
    pub fn l0_assemble(&self, c: &[F], hs: &[Vec<F>], k: usize) -> Result<Vec<F>, LieError> {
        let mut x = self.diag_unit(k, c)?;
        for (i, a) in hs.iter().enumerate() {
            axpy(&mut x, &F::one(), &self.h(i + 1, a)?);
        }
        Ok(x)
    }

    /// The isomorphism `θ : sl_n(A) → sl_n(A^op)`, `x ↦ −d xᵗ d`, with `θ(aE_ij) = −aE_{n+1−j,n+1−i}`.
    pub fn theta(&self) -> Result<(GradedLie<F>, LinearMap<F>), LieError> {
        let op = GradedLie::build(self.coeff.opposite(), self.n, self.n + 1 - self.k)?;
        let map = self.theta_into(&op)?;
        Ok((op, map))
    }

    /// The matrix of `θ` into a given `sl_n(A^op)`.
    pub fn theta_into(&self, op: &GradedLie<F>) -> Result<LinearMap<F>, LieError> {
        let n = self.n;
        let images = (0..self.dim())
            .map(|p| {
                let m: GlSparse<F> = self
                    .basis_gl(p)
                    .into_iter()
                    .map(|(i, j, v)| (n - 1 - j, n - 1 - i, v.into_iter().map(|x| -x).collect()))
                    .collect();
                Ok(op.sparse_from_gl(&m)?.to_dense(op.dim()))
            })
            .collect::<Result<Vec<_>, LieError>>()?;
        Ok(LinearMap::new(self.dim(), op.dim(), images))
    }

    /// The first basis pair on which `map : self → other` fails to preserve brackets.
    pub fn lie_hom_violation(&self, other: &GradedLie<F>, map: &LinearMap<F>) -> Option<(usize, usize)> {
        for p in 0..self.dim() {
            for q in (p + 1)..self.dim() {
                let lhs = map.apply(&self.bracket_basis(p, q).to_dense(self.dim()));
                let rhs = other.bracket(map.image(p), map.image(q));
                if lhs != rhs {
                    return Some((p, q));
                }
            }
        }
        None
    }

    /// A random element with small integer coordinates.
    pub fn random_element(&self, rng: &mut impl Rng, range: std::ops::Range<usize>) -> Vec<F> {
        let mut x = vec![F::zero(); self.dim()];
        for p in range {
            x[p] = F::from_i64(rng.gen_range(-3..=3));
        }
        x
    }
}

/// `{a b c} = abc + cba`.
pub fn jordan_triple<F: Field>(a_alg: &Algebra<F>, a: &[F], b: &[F], c: &[F]) -> Vec<F> {
    let mut out = a_alg.mul(&a_alg.mul(a, b), c);
    axpy(&mut out, &F::one(), &a_alg.mul(&a_alg.mul(c, b), a));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Q;

    fn rnd(a: &Algebra<Q>, rng: &mut ChaCha8Rng) -> Vec<Q> {
        (0..a.dim()).map(|_| Q::from_i64(rng.gen_range(-3..=3))).collect()
    }

    #[test]
    fn dimensions() {
        let k = Algebra::<Q>::ground();
        let l = GradedLie::sl(&k, 3).unwrap();
        assert_eq!(l.dim(), 8);
        let m2 = Algebra::<Q>::matrix(2).unwrap();
        let l = GradedLie::sl(&m2, 2).unwrap();
        assert_eq!((l.dim(), l.dim_l0()), (15, 7));
        let t = Algebra::<Q>::trunc_poly(3).unwrap();
        let l = GradedLie::sl(&t, 4).unwrap();
        assert_eq!(l.dim_l0(), 9);
    }

    #[test]
    fn weights_and_cartan() {
        let d = RootDatumA { n: 4 };
        assert_eq!(d.to_alpha(&[1, 0, 1]), Some(vec![1, 1, 1]));
        assert_eq!(d.to_alpha(&[1, 0, 0]), None);
        let lam = Weight::new(vec![2, 0, 0]);
        assert!(lam.dominates(&Weight::new(vec![0, 1, 0]), d));
        assert!(!lam.dominates(&Weight::new(vec![0, 0, 1]), d));
        assert_eq!(d.h_values(&[1, 0, 0]), vec![2, -1, 0]);
        assert!(Weight::new(vec![1, 0, 1]).is_totally_disconnected());
        assert!(!Weight::new(vec![1, 1, 0]).is_totally_disconnected());
    }

    #[test]
    fn e_f_bracket_is_big_h() {
        let a = Algebra::<Q>::quaternion(Q::from_i64(2), Q::from_i64(3)).unwrap();
        let l = GradedLie::sl(&a, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for i in 1..3 {
            let (x, y) = (rnd(&a, &mut rng), rnd(&a, &mut rng));
            let lhs = l.bracket(&l.e(i, &x).unwrap(), &l.f(i, &y).unwrap());
            assert_eq!(lhs, l.big_h(i, &x, &y).unwrap());
            assert_eq!(l.big_h(i, &x, a.unit()).unwrap(), l.h(i, &x).unwrap());
            assert_eq!(l.big_h(i, a.unit(), &x).unwrap(), l.h(i, &x).unwrap());
        }
    }

    #[test]
    fn cartan_action_on_e() {
        let a = Algebra::<Q>::matrix(2).unwrap();
        let l = GradedLie::sl(&a, 4).unwrap();
        let x: Vec<Q> = vec![Q::from_i64(1), Q::from_i64(2), Q::from_i64(0), Q::from_i64(-1)];
        for i in 1..4 {
            for j in 1..4 {
                let lhs = l.bracket(&l.h(i, a.unit()).unwrap(), &l.e(j, &x).unwrap());
                let c = Q::from_i64(l.datum().cartan(j - 1, i - 1));
                let rhs: Vec<Q> = l.e(j, &x).unwrap().into_iter().map(|v| v * &c).collect();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn commutator_diagonal_and_jordan_rules() {
        let a = Algebra::<Q>::matrix(2).unwrap();
        let l = GradedLie::sl(&a, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..5 {
            let (x, y, z) = (rnd(&a, &mut rng), rnd(&a, &mut rng), rnd(&a, &mut rng));
            for i in 1..3 {
                let lhs = l.diag_unit(i, &a.commutator(&x, &y)).unwrap();
                let mut rhs = l.big_h(i, &x, &y).unwrap();
                axpy(&mut rhs, &-Q::from_i64(1), &l.h(i, &a.mul(&y, &x)).unwrap());
                assert_eq!(lhs, rhs);
                let hz = l.bracket(&l.big_h(i, &x, &y).unwrap(), &l.e(i, &z).unwrap());
                assert_eq!(hz, l.e(i, &jordan_triple(&a, &x, &y, &z)).unwrap());
            }
        }
    }

    #[test]
    fn l0_split_round_trip() {
        let a = Algebra::<Q>::matrix(2).unwrap();
        let l = GradedLie::sl(&a, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for k in 1..=4 {
            for _ in 0..5 {
                let x = l.random_element(&mut rng, l.zero_range());
                let (c, hs) = l.l0_coordinates(&x, k).unwrap();
                assert_eq!(l.l0_assemble(&c, &hs, k).unwrap(), x);
            }
        }
        let (p, q) = (a.basis(1), a.basis(2));
        let (c, hs) = l.l0_coordinates(&l.big_h(1, &p, &q).unwrap(), 1).unwrap();
        assert_eq!(c, a.commutator(&p, &q));
        assert_eq!(hs[0], a.mul(&q, &p));
        assert!(l.l0_coordinates(&l.e(1, &p).unwrap(), 1).is_err());
    }

    #[test]
    fn theta_is_an_isomorphism_and_an_involution() {
        let a = Algebra::<Q>::matrix(2).unwrap();
        let l = GradedLie::sl(&a, 3).unwrap();
        let (op, th) = l.theta().unwrap();
        assert_eq!(l.lie_hom_violation(&op, &th), None);
        let (back, th2) = op.theta().unwrap();
        assert_eq!(back.coeff(), l.coeff());
        assert_eq!(th.then(&th2), LinearMap::identity(l.dim()));
        let x = a.basis(1);
        let img = th.apply(&l.e_ij(1, 2, &x).unwrap());
        let neg: Vec<Q> = x.iter().map(|v| -v.clone()).collect();
        assert_eq!(img, op.e_ij(2, 3, &neg).unwrap());
    }
}
