//! Bounded-depth integrable induction and global Weyl modules.
//!
//! For an `Se^λ`-module `M`, the induced module `Ĩ(M) = U(L) ⊗_{U(L₀ ⊕ L₊)} M` is
//! `U(L₋) ⊗ M` as a vector space, graded by the offset `λ − μ` in simple-root coordinates. The
//! module `I(M)` is the quotient by the submodule `Ñ` generated by the vectors
//! `f_i(1)^{ℓ_i+1} ⊗ m`. [`induce_bounded`] computes `Ñ` inside a depth window by closing the
//! generators under every basis vector of `L`, including the positive part, which maps deeper
//! elements of `Ñ` back into shallower weight spaces. Vectors that leave the window are dropped,
//! so the computed part of `Ñ` is contained in the true one and the reported dimensions are upper
//! bounds. They are reported stable when widening the window by one does not change them.
//!
//! [`ann_vs_j`] compares `J^λ` with the annihilator of the highest weight vector of `W(λ)`, read
//! off from the defining relations of `W(λ)`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::algebra::Algebra;
use crate::envelope::{
    monomial_enumerate, monomials_up_to, Envelope, EnvelopeError, LieTable, Monomial, MonomialSpace, PbwElement,
    MONOMIAL_GUARD,
};
use crate::exactla::{kernel, Field, Matrix, SparseAccumulator, SparseVec, Subspace};
use crate::liealg::{GradedLie, Weight};
use crate::seligman::{
    check_weight, compute_seligman, full_envelope, jlambda_generators_with, raising_pi0, Columns, QuotientResult,
    SeligmanError, SeligmanOptions,
};
use crate::symid::multisets;
use crate::Exec;

/// Errors raised by Weyl module computations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("invalid module: {0}")]
    BadModule(String),
    #[error("the quotient for λ = {0} is not certified")]
    NotCertified(String),
    #[error("depth {depth} exceeds the cap {cap}")]
    DepthCap { depth: usize, cap: usize },
    #[error("{count} basis vectors exceed the guard of {guard}")]
    TooLarge { count: usize, guard: usize },
    #[error("slice did not stabilize within window {0}")]
    Inconclusive(usize),
    #[error(transparent)]
    Seligman(#[from] SeligmanError),
    #[error(transparent)]
    Envelope(#[from] EnvelopeError),
}

/// Options of the induction.
#[derive(Clone, Copy, Debug)]
pub struct WeylOptions {
    /// Extra depth beyond the reported one in which `Ñ` is computed.
    pub slack: usize,
    /// Largest accepted reporting depth.
    pub max_depth: usize,
    /// Upper limit on the dimension of the truncated `Ĩ(M)`.
    pub basis_guard: usize,
    pub exec: Exec,
}

impl Default for WeylOptions {
    fn default() -> Self {
        WeylOptions { slack: 2, max_depth: 16, basis_guard: 200_000, exec: Exec::default() }
    }
}

/// The default reporting depth: the height of `λ` plus two.
pub fn default_depth(lambda: &Weight) -> usize {
    lambda.coords.iter().map(|c| (*c).max(0) as usize).sum::<usize>() + 2
}

/// A module over a finite-dimensional algebra, given by the matrices of its basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeModule<F> {
    dim: usize,
    mats: Vec<Matrix<F>>,
}

impl<F: Field> SeModule<F> {
    /// Checks that `mats[a]` define a unital module structure over `se`.
    pub fn new(se: &Algebra<F>, dim: usize, mats: Vec<Matrix<F>>) -> Result<Self, WeylError> {
        if mats.len() != se.dim() {
            return Err(WeylError::BadModule(format!(
                "{} matrices for an algebra of dimension {}",
                mats.len(),
                se.dim()
            )));
        }
        if mats.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(WeylError::BadModule(format!("every matrix must be {dim} × {dim}")));
        }
        let module = SeModule { dim, mats };
        if module.action(se.unit()) != Matrix::identity(dim) {
            return Err(WeylError::BadModule("the unit does not act as the identity".into()));
        }
        for a in 0..se.dim() {
            for b in 0..se.dim() {
                let lhs = module.mats[a].mul(&module.mats[b]);
                let rhs = module.action(&se.mul_basis(a, b).to_dense(se.dim()));
                if lhs != rhs {
                    return Err(WeylError::BadModule(format!("basis pair ({a}, {b}) violates associativity")));
                }
            }
        }
        Ok(module)
    }

    /// The left-regular module.
    pub fn regular(se: &Algebra<F>) -> Self {
        let mats = (0..se.dim()).map(|a| se.left_mult_matrix(&se.basis(a))).collect();
        SeModule { dim: se.dim(), mats }
    }

    /// Dimension of the module.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The matrix of an algebra element given in coordinates.
    pub fn action(&self, x: &[F]) -> Matrix<F> {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (c, m) in x.iter().zip(&self.mats) {
            if !c.is_zero() {
                out = out.add_scaled(c, m);
            }
        }
        out
    }
}

/// Whether a slice stabilized.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SliceStatus {
    /// The reported dimensions agree for windows `window` and `window + 1`.
    Stable { window: usize },
    /// They differ.
    Inconclusive { window: usize },
}

/// One weight space of the truncated `Ĩ(M)` together with the computed part of `Ñ`.
#[derive(Clone, Debug)]
pub struct WeightSpace<F> {
    /// `λ − μ` in simple-root coordinates.
    pub offset: Vec<i64>,
    pub depth: usize,
    /// `U(L₋)` monomials of this weight; the coordinate of `u ⊗ m_j` is `position · dim M + j`.
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// The computed part of `Ñ` in this weight space.
    pub relations: Subspace<F>,
}

impl<F: Field> WeightSpace<F> {
    /// Dimension of the quotient by the computed relations.
    pub fn quotient_dim(&self) -> usize {
        self.relations.quotient_dim()
    }
}

/// A depth-bounded slice of `I(M)`.
pub struct InducedModuleSlice<F: Field> {
    pub lambda: Weight,
    pub depth: usize,
    pub window: usize,
    pub module_dim: usize,
    pub status: SliceStatus,
    spaces: BTreeMap<Vec<i64>, WeightSpace<F>>,
    env: Envelope<F>,
    /// Matrices of the `L₀` basis on `M`.
    rho: Vec<Matrix<F>>,
}

/// One row of the weight table in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightDim {
    pub offset: Vec<i64>,
    pub depth: usize,
    pub dim: usize,
}

fn depth_of(offset: &[i64]) -> usize {
    offset.iter().sum::<i64>() as usize
}

impl<F: Field> InducedModuleSlice<F> {
    /// All weight spaces up to the reporting depth.
    pub fn weight_spaces(&self) -> impl Iterator<Item = &WeightSpace<F>> {
        self.spaces.values().filter(move |s| s.depth <= self.depth)
    }

    /// Quotient dimension of the weight `λ − offset`, zero when the weight does not occur.
    pub fn weight_dim(&self, offset: &[i64]) -> usize {
        self.spaces.get(offset).filter(|s| s.depth <= self.depth).map_or(0, |s| s.quotient_dim())
    }

    /// Total quotient dimension at each depth `0..=depth`.
    pub fn dims_by_depth(&self) -> Vec<usize> {
        let mut out = vec![0; self.depth + 1];
        for s in self.weight_spaces() {
            out[s.depth] += s.quotient_dim();
        }
        out
    }

    /// The weight table up to the reporting depth.
    pub fn weight_table(&self) -> Vec<WeightDim> {
        self.weight_spaces()
            .map(|s| WeightDim { offset: s.offset.clone(), depth: s.depth, dim: s.quotient_dim() })
            .collect()
    }

    /// The action of the `L` basis vector `x` on a vector of `Ĩ(M)` in the weight space
    /// `offset`. Returns the target offset, or `None` when it lies outside the window.
    fn act_raw(&self, x: usize, offset: &[i64], v: &SparseVec<F>) -> Option<(Vec<i64>, SparseVec<F>)> {
        let table = self.env.table();
        let target: Vec<i64> = offset.iter().zip(table.weight(x)).map(|(a, b)| a - b).collect();
        let source = &self.spaces[offset];
        let Some(dest) = self.spaces.get(&target) else {
            return if target.iter().any(|c| *c < 0) || depth_of(&target) <= self.window {
                Some((target, SparseVec::zero()))
            } else {
                None
            };
        };
        let dm = self.module_dim;
        let n_neg = table.neg_range().end;
        let xv = SparseVec::unit(x, F::one());
        let mut acc = SparseAccumulator::default();
        for (idx, c) in v.entries() {
            let (pos, j) = (*idx as usize / dm, *idx as usize % dm);
            let u = PbwElement::monomial(source.monomials[pos].clone(), F::one());
            for (m, c2) in self.env.lie_times_mod_positive(&xv, &u).terms() {
                let split = m.iter().position(|f| (*f as usize) >= n_neg).unwrap_or(m.len());
                let mut vec_m = vec![F::zero(); dm];
                vec_m[j] = F::one();
                for z in m[split..].iter().rev() {
                    vec_m = self.rho[*z as usize - n_neg].apply(&vec_m);
                }
                let p = dest.index[&m[..split]];
                let cc = c.clone() * c2.clone();
                for (j2, y) in vec_m.into_iter().enumerate() {
                    if !y.is_zero() {
                        acc.add((p * dm + j2) as u32, cc.clone() * y);
                    }
                }
            }
        }
        Some((target, acc.finish()))
    }

    /// The action of the `L` basis vector `x` on quotient coordinates of the weight space
    /// `offset`, in quotient coordinates of the target. `None` when the target lies beyond the
    /// reporting depth.
    pub fn act(&self, x: usize, offset: &[i64], v: &[F]) -> Option<(Vec<i64>, Vec<F>)> {
        let source = self.spaces.get(offset)?;
        let free = source.relations.non_pivots();
        let lifted = SparseVec::from_unsorted(
            free.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(p, c)| (*p as u32, c.clone())).collect(),
        );
        let (target, w) = self.act_raw(x, offset, &lifted)?;
        if depth_of(&target) > self.depth {
            return None;
        }
        let Some(dest) = self.spaces.get(&target) else {
            return Some((target, Vec::new()));
        };
        let reduced = dest.relations.reduce(&w);
        let dest_free = dest.relations.non_pivots();
        let pos: HashMap<usize, usize> = dest_free.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let mut out = vec![F::zero(); dest_free.len()];
        for (p, c) in reduced.entries() {
            out[pos[&(*p as usize)]] = c.clone();
        }
        Some((target, out))
    }

    /// The matrix of `x` from the weight space `offset` to its target, in quotient coordinates.
    pub fn action_matrix(&self, x: usize, offset: &[i64]) -> Option<(Vec<i64>, Matrix<F>)> {
        let src = self.weight_dim(offset);
        let mut cols = Vec::with_capacity(src);
        let mut target = None;
        for k in 0..src {
            let mut e = vec![F::zero(); src];
            e[k] = F::one();
            let (t, w) = self.act(x, offset, &e)?;
            target = Some(t);
            cols.push(w);
        }
        let t = target?;
        let rows = self.weight_dim(&t);
        let cols: Vec<Vec<F>> =
            cols.into_iter().map(|c| if c.is_empty() { vec![F::zero(); rows] } else { c }).collect();
        Some((t, Matrix::from_columns(rows, &cols)))
    }

    /// Checks the defining relations of a highest weight vector on the depth-0 slice:
    /// `L₊` kills it, `h_i(1)` acts by `ℓ_i` and `f_i(1)^{ℓ_i+1}` kills it whenever the target
    /// depth is within range. Returns a description of the first violation.
    pub fn relations_violation(&self, l: &GradedLie<F>) -> Option<String> {
        let origin = vec![0i64; self.lambda.rank()];
        let d0 = self.weight_dim(&origin);
        for k in 0..d0 {
            let mut w = vec![F::zero(); d0];
            w[k] = F::one();
            for x in l.pos_range() {
                if let Some((_, v)) = self.act(x, &origin, &w) {
                    if v.iter().any(|c| !c.is_zero()) {
                        return Some(format!("{} does not kill depth-0 vector {k}", l.labels()[x]));
                    }
                }
            }
            for i in 1..l.n() {
                let ell = self.lambda.coords[i - 1];
                let h = l.h_basis_index(i - 1, 0);
                let (_, v) = self.act(h, &origin, &w)?;
                let expected: Vec<F> = w.iter().map(|c| c.clone() * F::from_i64(ell)).collect();
                if v != expected {
                    return Some(format!("h_{i}(1) does not act by {ell} on depth-0 vector {k}"));
                }
                let f = l.root_basis_index(i, i - 1, 0);
                let (mut off, mut cur) = (origin.clone(), w.clone());
                let mut reached = true;
                for _ in 0..=ell {
                    match self.act(f, &off, &cur) {
                        Some((t, v)) => {
                            off = t;
                            cur = v;
                        }
                        None => {
                            reached = false;
                            break;
                        }
                    }
                }
                if reached && cur.iter().any(|c| !c.is_zero()) {
                    return Some(format!("f_{i}(1)^{} does not kill depth-0 vector {k}", ell + 1));
                }
            }
        }
        None
    }

    /// Rank of `U(L₋)U(L₀)·w` for a depth-0 vector `w`, per weight space up to the reporting
    /// depth, next to the quotient dimension. Equal numbers everywhere mean `w` generates the
    /// slice.
    pub fn cyclic_ranks(&self, w: &[F]) -> Vec<(Vec<i64>, usize, usize)> {
        let origin = vec![0i64; self.lambda.rank()];
        let mut reached: BTreeMap<Vec<i64>, Subspace<F>> = BTreeMap::new();
        let mut frontier: Vec<(Vec<i64>, Vec<F>)> = vec![(origin.clone(), w.to_vec())];
        reached.insert(origin.clone(), Subspace::span_dense(w.len(), &[w.to_vec()]));
        let lowering = 0..self.env.table().zero_range().end;
        while let Some((off, v)) = frontier.pop() {
            for x in lowering.clone() {
                if let Some((t, img)) = self.act(x, &off, &v) {
                    if img.is_empty() {
                        continue;
                    }
                    let dim = img.len();
                    let space = reached.entry(t.clone()).or_insert_with(|| Subspace::zero(dim));
                    if space.insert(&SparseVec::from_dense(&img)) {
                        frontier.push((t, img));
                    }
                }
            }
        }
        self.weight_spaces()
            .map(|s| (s.offset.clone(), reached.get(&s.offset).map_or(0, |r| r.dim()), s.quotient_dim()))
            .collect()
    }
}

/// The `L₀` basis matrices on `M` through `can`.
fn l0_matrices<F: Field>(result: &QuotientResult<F>, module: &SeModule<F>) -> Vec<Matrix<F>> {
    result.can_images.iter().map(|c| module.action(c)).collect()
}

/// Computes `I(M)` up to `depth`, where `M` is a module over the certified quotient `result`.
pub fn induce_bounded<F: Field>(
    l: &GradedLie<F>,
    result: &QuotientResult<F>,
    module: &SeModule<F>,
    depth: usize,
    opts: &WeylOptions,
) -> Result<InducedModuleSlice<F>, WeylError> {
    check_weight(l, &result.lambda)?;
    let se = result.structure.as_ref().ok_or_else(|| WeylError::NotCertified(result.lambda.to_compact()))?;
    if module.mats.len() != se.dim() {
        return Err(WeylError::BadModule("the module is not over this quotient".into()));
    }
    if depth > opts.max_depth {
        return Err(WeylError::DepthCap { depth, cap: opts.max_depth });
    }
    let env = full_envelope(l, opts.exec);
    let rho = l0_matrices(result, module);
    let window = depth + opts.slack;
    let narrow = close_window(l, &result.lambda, env, rho, module.dim(), depth, window, opts)?;
    let wider = close_window(
        l,
        &result.lambda,
        full_envelope(l, opts.exec),
        l0_matrices(result, module),
        module.dim(),
        depth,
        window + 1,
        opts,
    )?;
    let mut slice = narrow;
    slice.status = if slice.weight_table() == wider.weight_table() {
        SliceStatus::Stable { window }
    } else {
        SliceStatus::Inconclusive { window }
    };
    Ok(slice)
}

#[allow(clippy::too_many_arguments)]
fn close_window<F: Field>(
    l: &GradedLie<F>,
    lambda: &Weight,
    env: Envelope<F>,
    rho: Vec<Matrix<F>>,
    module_dim: usize,
    depth: usize,
    window: usize,
    opts: &WeylOptions,
) -> Result<InducedModuleSlice<F>, WeylError> {
    let table = env.table();
    let monos = monomial_enumerate(table, MonomialSpace::Negative, window, None, MONOMIAL_GUARD)?;
    let mut spaces: BTreeMap<Vec<i64>, WeightSpace<F>> = BTreeMap::new();
    let mut count = 0usize;
    for t in monos {
        let offset: Vec<i64> = t.weight.iter().map(|c| -c).collect();
        let d = depth_of(&offset);
        if d > window {
            continue;
        }
        let space = spaces.entry(offset.clone()).or_insert_with(|| WeightSpace {
            offset,
            depth: d,
            monomials: Vec::new(),
            index: HashMap::new(),
            relations: Subspace::zero(0),
        });
        space.index.insert(t.monomial.clone(), space.monomials.len());
        space.monomials.push(t.monomial);
        count += module_dim;
    }
    if count > opts.basis_guard {
        return Err(WeylError::TooLarge { count, guard: opts.basis_guard });
    }
    for s in spaces.values_mut() {
        s.relations = Subspace::zero(s.monomials.len() * module_dim);
    }
    let mut slice = InducedModuleSlice {
        lambda: lambda.clone(),
        depth,
        window,
        module_dim,
        status: SliceStatus::Inconclusive { window },
        spaces,
        env,
        rho,
    };
    let mut queue: VecDeque<(Vec<i64>, SparseVec<F>)> = VecDeque::new();
    let unit = l.coeff().unit().to_vec();
    for i in 1..l.n() {
        let ell = lambda.coords[i - 1] as usize;
        let f = SparseVec::from_dense(&l.f(i, &unit).map_err(SeligmanError::from)?);
        let mut offset = vec![0i64; lambda.rank()];
        offset[i - 1] = ell as i64 + 1;
        let Some(space) = slice.spaces.get_mut(&offset) else { continue };
        let power = slice.env.word(&vec![f; ell + 1]);
        for j in 0..module_dim {
            let v = SparseVec::from_unsorted(
                power.terms().iter().map(|(m, c)| ((space.index[m] * module_dim + j) as u32, c.clone())).collect(),
            );
            let r = space.relations.reduce(&v);
            if !r.is_zero() {
                space.relations.insert(&r);
                queue.push_back((offset.clone(), r));
            }
        }
    }
    let dim_l = slice.env.table().dim();
    while let Some((offset, v)) = queue.pop_front() {
        let images = opts.exec.map_range(dim_l, |x| slice.act_raw(x, &offset, &v));
        for (target, w) in images.into_iter().flatten() {
            if w.is_zero() {
                continue;
            }
            let space = slice.spaces.get_mut(&target).expect("nonzero images land in the window");
            let r = space.relations.reduce(&w);
            if !r.is_zero() {
                space.relations.insert(&r);
                queue.push_back((target, r));
            }
        }
    }
    Ok(slice)
}

/// The slice of the global Weyl module `W(λ) ≅ I(Se^λ)` up to `depth`, with the certified
/// quotient it was induced from.
pub fn weyl_module<F: Field>(
    l: &GradedLie<F>,
    lambda: &Weight,
    depth: usize,
    sel: &SeligmanOptions,
    opts: &WeylOptions,
) -> Result<(InducedModuleSlice<F>, QuotientResult<F>), WeylError> {
    let result = compute_seligman(l, lambda, sel, None)?;
    if !result.status.is_certified() {
        return Err(WeylError::NotCertified(lambda.to_compact()));
    }
    let se = result.structure.as_ref().expect("certified results carry structure constants");
    let module = SeModule::regular(se);
    let slice = induce_bounded(l, &result, &module, depth, opts)?;
    Ok((slice, result))
}

/// Comparison of `J^λ` with the annihilator of the highest weight vector in degrees `≤ N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnnReport {
    pub n: usize,
    /// Degree up to which left multiples of the annihilator generators were formed.
    pub working_degree: usize,
    /// `dim J^λ ∩ U(L₀)_{(N)}`.
    pub j_dim: usize,
    /// Dimension of the computed annihilator in `U(L₀)_{(N)}`.
    pub ann_dim: usize,
    pub j_in_ann: bool,
    pub ann_in_j: bool,
    /// Every generator of `J^λ` of degree `≤ N` lies in the computed annihilator.
    pub generators_in_ann: bool,
    pub witness: Option<String>,
}

impl AnnReport {
    /// Both inclusions hold.
    pub fn equal(&self) -> bool {
        self.j_in_ann && self.ann_in_j
    }
}

/// Extra degrees tried for the annihilator side.
pub const ANN_DEGREE_SLACK: usize = 2;

/// Compares `J^λ ∩ U(L₀)_{(N)}` with `Ann(w_λ) ∩ U(L₀)_{(N)}`.
///
/// The `J` side is the kernel of `can` on `U(L₀)_{(N)}`, exact because the quotient is certified.
/// The annihilator side uses the presentation of `W(λ)`: modulo `U(L)L₊`, the weight-zero part
/// of the left ideal generated by `L₊`, `h_i(1) − ℓ_i` and `f_i(1)^{ℓ_i+1}` is the left ideal of
/// `U(L₀)` generated by `h_i(1) − ℓ_i` and `π₀(e_i(a₁)⋯e_i(a_{ℓ_i+1}) f_i(1)^{ℓ_i+1})`. Its left
/// multiples up to a working degree are intersected with `U(L₀)_{(N)}`; the working degree is
/// raised up to `N + ANN_DEGREE_SLACK` until `J` is covered.
pub fn ann_vs_j<F: Field>(
    l: &GradedLie<F>,
    lambda: &Weight,
    n: usize,
    sel: &SeligmanOptions,
) -> Result<AnnReport, WeylError> {
    let result = compute_seligman(l, lambda, sel, None)?;
    if !result.status.is_certified() {
        return Err(WeylError::NotCertified(lambda.to_compact()));
    }
    let se = result.structure.as_ref().expect("certified results carry structure constants");
    let exec = sel.exec;
    let d0 = l.dim_l0();
    let zero_start = l.neg_range().end;
    let env = full_envelope(l, exec);
    let mut ann_gens: Vec<PbwElement<F>> = Vec::new();
    for i in 1..l.n() {
        let ell = lambda.coords[i - 1];
        let h1 = (l.h_basis_index(i - 1, 0) - zero_start) as u16;
        ann_gens.push(PbwElement::monomial(vec![h1], F::one()).sub(&PbwElement::scalar(F::from_i64(ell))));
        let r = ell as usize + 1;
        for a in multisets(l.coeff().dim(), r) {
            let g = raising_pi0(l, &env, i, &a, &vec![0; r])?;
            if !g.is_zero() {
                ann_gens.push(g);
            }
        }
    }
    let jgens =
        jlambda_generators_with(l, &env, lambda, lambda.max_coord().max(0) as usize + 1, false, exec)?.elements();
    let l0 = Envelope::new(LieTable::zero_part(l, exec));
    let can_monomial = |m: &[u16]| -> Vec<F> {
        let mut v = se.unit().to_vec();
        for f in m.iter().rev() {
            v = se.mul(&result.can_images[*f as usize], &v);
        }
        v
    };
    let mut last = None;
    for working in n..=n + ANN_DEGREE_SLACK {
        let cols = Columns::new(d0, working);
        let low = cols.first_col_up_to(n);
        let jn: Vec<SparseVec<F>> = {
            let monos = monomials_up_to(0..d0, n);
            let images: Vec<Vec<F>> = monos.iter().map(|m| can_monomial(m)).collect();
            kernel(&images, se.dim())
                .into_iter()
                .map(|k| {
                    SparseVec::from_unsorted(
                        monos.iter().zip(k).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (cols.col(m), c)).collect(),
                    )
                })
                .collect()
        };
        let j_space = Subspace::span(cols.total(), jn.iter().cloned());
        let mut tasks = Vec::new();
        for g in &ann_gens {
            let dg = g.degree();
            if dg > working {
                continue;
            }
            for m in monomials_up_to(0..d0, working - dg) {
                tasks.push((m, g));
            }
        }
        let rows = exec.map(&tasks, |(m, g)| cols.to_sparse(&l0.mul(&PbwElement::monomial(m.clone(), F::one()), g)));
        let ann_full = Subspace::span(cols.total(), rows);
        let ann_n: Vec<SparseVec<F>> =
            ann_full.basis().iter().filter(|r| r.leading().is_some_and(|(c, _)| c >= low)).cloned().collect();
        let j_missing = jn.iter().position(|v| !ann_full.contains(v));
        let ann_extra = ann_n.iter().position(|v| !j_space.contains(v));
        let generators_in_ann = jgens.iter().filter(|g| g.degree() <= n).all(|g| ann_full.contains(&cols.to_sparse(g)));
        let witness = match (j_missing, ann_extra) {
            (Some(k), _) => {
                Some(format!("J element {} is not in the annihilator", cols.to_element(&jn[k]).format(l0.table())))
            }
            (None, Some(k)) => {
                Some(format!("annihilator element {} is not in J", cols.to_element(&ann_n[k]).format(l0.table())))
            }
            _ => None,
        };
        let report = AnnReport {
            n,
            working_degree: working,
            j_dim: jn.len(),
            ann_dim: ann_n.len(),
            j_in_ann: j_missing.is_none(),
            ann_in_j: ann_extra.is_none(),
            generators_in_ann,
            witness,
        };
        if report.j_in_ann {
            return Ok(report);
        }
        last = Some(report);
    }
    Ok(last.expect("at least one working degree"))
}
