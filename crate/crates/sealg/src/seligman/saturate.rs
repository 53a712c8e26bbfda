//! Truncated saturation of a two-sided ideal of `U(L₀)` with a self-certifying representation.
//!
//! Linear elements of `J` span a Lie ideal `M₀ ⊆ L₀`, and `U(L₀)/J = U(L₀/M₀)/J̄`, so the
//! computation runs in the smaller envelope `U(L̄₀)`. Layer `N` holds
//! `J_N = span{u·g·v : deg u + deg g + deg v ≤ N}`, built incrementally from the rows of layer
//! `N − 1` multiplied by every basis vector on both sides. Once every degree-`N` monomial is a
//! pivot, the non-pivot monomials `R` span `U(L₀)` modulo `J`. Left multiplication on `R` then
//! defines candidate matrices; when they form a representation that kills every generator and
//! has the coset of `1` as a cyclic vector, `dim U(L₀)/J = |R|` exactly.

use crate::algebra::MatrixTarget;
use crate::envelope::{Envelope, LieTable, Monomial, PbwElement};
use crate::exactla::{Echelon, Field, Matrix, SparseVec, Subspace};
use crate::Exec;

use super::columns::Columns;
use super::SeligmanError;

/// Largest representative set for which the representation check is attempted.
pub const WITNESS_DIM_GUARD: usize = 600;

/// Linear reduction data: the Lie ideal `M₀` and the quotient `L̄₀ = L₀/M₀`.
#[derive(Clone, Debug)]
pub struct Reduction<F> {
    pub m0: Subspace<F>,
    pub table: LieTable<F>,
    /// Images in `L̄₀` of the `L₀` basis.
    pub proj: Vec<SparseVec<F>>,
    /// `L₀` index of every `L̄₀` basis vector.
    pub keep: Vec<usize>,
}

impl<F: Field> Reduction<F> {
    /// Reduces `L₀` by the Lie ideal generated by `linear`.
    pub fn new(l0: &LieTable<F>, linear: &[SparseVec<F>]) -> Self {
        let m0 = l0.lie_ideal_generated(linear);
        let (table, proj) = l0.quotient(&m0);
        let keep = m0.non_pivots();
        Reduction { m0, table, proj, keep }
    }

    /// Lifts an `L̄₀` vector to `L₀` along the kept basis vectors.
    pub fn lift(&self, v: &SparseVec<F>) -> SparseVec<F> {
        v.map_indices(|i| self.keep[i as usize] as u32)
    }

    /// Rewrites a monomial of `U(L̄₀)` in `L₀` indices.
    pub fn lift_element(&self, u: &PbwElement<F>) -> PbwElement<F> {
        u.reindexed(|f| self.keep[f as usize] as u16)
    }
}

/// One saturation layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub n: usize,
    /// `dim U(L̄₀)_{(N)} − dim J_N`.
    pub quotient_dim: usize,
    pub rank: usize,
    /// Every degree-`N` monomial is a pivot.
    pub closure: bool,
}

/// The regular representation on coset representatives.
#[derive(Clone, Debug)]
pub struct RegularRep<F> {
    /// Representatives in `U(L̄₀)`, the unit first.
    pub reps: Vec<Monomial>,
    /// Action matrices of the `L̄₀` basis.
    pub action: Vec<Matrix<F>>,
}

impl<F: Field> RegularRep<F> {
    /// `ρ(u)·v`.
    pub fn act(&self, u: &PbwElement<F>, v: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); v.len()];
        for (m, c) in u.terms() {
            let mut w = v.to_vec();
            for f in m.iter().rev() {
                w = self.action[*f as usize].apply(&w);
            }
            crate::exactla::axpy(&mut out, c, &w);
        }
        out
    }

    /// `ρ(x)` for a Lie element of `L̄₀`.
    pub fn lie_matrix(&self, x: &SparseVec<F>) -> Matrix<F> {
        let size = self.reps.len();
        let mut m = Matrix::zeros(size, size);
        for (p, c) in x.entries() {
            m = m.add_scaled(c, &self.action[*p as usize]);
        }
        m
    }
}

/// How the saturation ended.
#[derive(Clone, Debug)]
pub enum Outcome<F> {
    /// `1 ∈ J_N`.
    Zero { n: usize },
    /// Closure and a verified regular representation at layer `n`.
    Certified { n: usize, rep: RegularRep<F> },
    /// Closure with equal dimensions at the last two layers, no verified representation.
    Stable { n: usize, reason: String },
    /// Neither, at the last layer reached.
    Inconclusive { n: usize, reason: String },
}

/// Result of [`saturate`].
#[derive(Clone, Debug)]
pub struct Saturated<F> {
    pub reduction: Reduction<F>,
    pub trace: Vec<TraceEntry>,
    pub outcome: Outcome<F>,
    pub restarts: usize,
    /// Number of distinct nonzero generator images in `U(L̄₀)`.
    pub mapped_generators: usize,
}

/// Saturation limits.
#[derive(Clone, Copy, Debug)]
pub struct SaturationLimits {
    pub n_max: usize,
    pub monomial_guard: u128,
    pub exec: Exec,
}

enum LayerRun<F> {
    Done(Vec<TraceEntry>, Outcome<F>),
    Restart(Vec<SparseVec<F>>, Vec<PbwElement<F>>),
}

/// Saturates the two-sided ideal generated by `gens ⊆ U(L₀)`.
pub fn saturate<F: Field>(
    l0: &LieTable<F>,
    gens: &[PbwElement<F>],
    limits: SaturationLimits,
) -> Result<Saturated<F>, SeligmanError> {
    let mut linear: Vec<SparseVec<F>> = gens.iter().filter_map(pure_linear).collect();
    let mut extra: Vec<PbwElement<F>> = Vec::new();
    let mut restarts = 0;
    loop {
        let reduction = Reduction::new(l0, &linear);
        let env = Envelope::new(reduction.table.clone());
        let mapped = map_generators(&env, &reduction, gens.iter().chain(extra.iter()), limits.exec);
        let mapped_count = mapped.len();
        match run_layers(&reduction, &env, &mapped, limits)? {
            LayerRun::Done(trace, outcome) => {
                return Ok(Saturated { reduction, trace, outcome, restarts, mapped_generators: mapped_count })
            }
            LayerRun::Restart(more_linear, more_extra) => {
                linear.extend(more_linear);
                extra.extend(more_extra);
                restarts += 1;
            }
        }
    }
}

fn pure_linear<F: Field>(g: &PbwElement<F>) -> Option<SparseVec<F>> {
    if g.is_zero() || g.terms().keys().any(|m| m.len() != 1) {
        return None;
    }
    Some(SparseVec::from_unsorted(g.terms().iter().map(|(m, c)| (m[0] as u32, c.clone())).collect()))
}

fn map_generators<'a, F: Field>(
    env: &Envelope<F>,
    reduction: &Reduction<F>,
    gens: impl Iterator<Item = &'a PbwElement<F>>,
    exec: Exec,
) -> Vec<PbwElement<F>> {
    let list: Vec<&PbwElement<F>> = gens.collect();
    let images = exec.map(&list, |g| env.image_of(g, &reduction.proj));
    let mut seen = std::collections::HashSet::new();
    images.into_iter().filter(|g| !g.is_zero() && seen.insert(format!("{g:?}"))).collect()
}

fn run_layers<F: Field>(
    reduction: &Reduction<F>,
    env: &Envelope<F>,
    mapped: &[PbwElement<F>],
    limits: SaturationLimits,
) -> Result<LayerRun<F>, SeligmanError> {
    let d = reduction.table.dim();
    let mut n_eff = limits.n_max;
    while n_eff > 1 && crate::envelope::monomial_count(d, n_eff) > limits.monomial_guard {
        n_eff -= 1;
    }
    let guard_hit = n_eff < limits.n_max;
    let cols = Columns::new(d, n_eff);
    let one_col = cols.total() - 1;
    let low_block = cols.first_col_up_to(1);
    let mut ech: Echelon<F> = Echelon::new(cols.total());
    let mut pivots_by_degree = vec![0usize; n_eff + 1];
    let mut gen_order: Vec<usize> = (0..mapped.len()).collect();
    gen_order.sort_by_key(|i| mapped[*i].degree());
    let mut gen_used = vec![false; mapped.len()];
    let mut gen_pending: Vec<usize> = Vec::new();
    let mut frontier: std::ops::Range<usize> = 0..0;
    let mut trace: Vec<TraceEntry> = Vec::new();
    let mut last_failure = String::new();
    let mut closure_seen = false;

    for n in 1..=n_eff {
        let layer_start = ech.rank();
        let new_gens: Vec<usize> =
            gen_order.iter().copied().filter(|i| !gen_used[*i] && mapped[*i].degree() <= n).collect();
        let mut inputs: Vec<SparseVec<F>> = Vec::new();
        for i in &new_gens {
            inputs.push(cols.to_sparse(&mapped[*i]));
        }
        let gen_inputs = inputs.len();
        let snapshot = ech.rank();
        let rows: Vec<usize> = frontier.clone().collect();
        let tasks: Vec<(usize, usize, bool)> =
            rows.iter().flat_map(|r| (0..d).flat_map(move |x| [(*r, x, true), (*r, x, false)])).collect();
        let products = {
            let ech_ref = &ech;
            limits.exec.map(&tasks, |(r, x, left)| {
                let u = cols.to_element(&ech_ref.rows()[*r]);
                let p = if *left { env.gen_times(*x, &u) } else { env.times_gen(&u, *x) };
                ech_ref.reduce(&cols.to_sparse(&p))
            })
        };
        let gen_reduced = {
            let ech_ref = &ech;
            limits.exec.map(&inputs, |v| ech_ref.reduce(v))
        };
        for (k, v) in gen_reduced.iter().enumerate() {
            let idx = new_gens[k];
            gen_used[idx] = true;
            if let Some(row) = ech.insert_prereduced(v, snapshot) {
                gen_pending.push(idx);
                let (c, _) = ech.rows()[row].leading().expect("nonzero row");
                pivots_by_degree[cols.degree_of(c)] += 1;
            }
        }
        debug_assert_eq!(gen_inputs, gen_reduced.len());
        for v in &products {
            if v.is_zero() {
                continue;
            }
            if let Some(row) = ech.insert_prereduced(v, snapshot) {
                let (c, _) = ech.rows()[row].leading().expect("nonzero row");
                pivots_by_degree[cols.degree_of(c)] += 1;
            }
        }
        frontier = layer_start..ech.rank();

        if ech.is_pivot(one_col) {
            trace.push(TraceEntry { n, quotient_dim: 0, rank: ech.rank(), closure: true });
            return Ok(LayerRun::Done(trace, Outcome::Zero { n }));
        }
        let low_rows: Vec<SparseVec<F>> = ech.rows()[frontier.clone()]
            .iter()
            .filter(|r| r.leading().is_some_and(|(c, _)| c >= low_block))
            .cloned()
            .collect();
        if !low_rows.is_empty() {
            if let Some(restart) = enlarge_ideal(reduction, &cols, &low_rows) {
                return Ok(LayerRun::Restart(restart.0, restart.1));
            }
        }

        let quotient_dim = cols.count_up_to(n) - ech.rank();
        let closure = pivots_by_degree[n] == cols.count_degree(n);
        if closure_seen {
            let prev = trace.last().expect("closure implies an earlier layer");
            if quotient_dim > prev.quotient_dim {
                return Err(SeligmanError::Internal(format!(
                    "quotient dimension grew after closure: {} → {quotient_dim} at N = {n}",
                    prev.quotient_dim
                )));
            }
        }
        closure_seen |= closure;
        let prev_q = trace.last().map(|t: &TraceEntry| (t.quotient_dim, t.closure));
        trace.push(TraceEntry { n, quotient_dim, rank: ech.rank(), closure });
        if closure {
            let unused: Vec<usize> = (0..mapped.len()).filter(|i| !gen_used[*i]).collect();
            let check_list: Vec<&PbwElement<F>> =
                gen_pending.iter().chain(unused.iter()).map(|i| &mapped[*i]).collect();
            match regular_representation(reduction, env, &cols, &ech, n, &check_list, limits.exec) {
                Ok(rep) => return Ok(LayerRun::Done(trace, Outcome::Certified { n, rep })),
                Err(reason) => last_failure = reason,
            }
            if n == n_eff && prev_q == Some((quotient_dim, true)) {
                return Ok(LayerRun::Done(trace, Outcome::Stable { n, reason: last_failure }));
            }
        }
    }
    let n = trace.last().map_or(0, |t| t.n);
    let last = trace.last().cloned();
    let prev = trace.len().checked_sub(2).map(|i| trace[i].clone());
    let stable =
        matches!((&last, &prev), (Some(a), Some(b)) if a.closure && b.closure && a.quotient_dim == b.quotient_dim);
    let mut reason = if guard_hit {
        format!("monomial guard limited saturation to N = {n_eff}")
    } else {
        format!("no closure with a verified representation up to N = {n_eff}")
    };
    if !last_failure.is_empty() {
        reason = format!("{reason}; last check: {last_failure}");
    }
    Ok(LayerRun::Done(trace, if stable { Outcome::Stable { n, reason } } else { Outcome::Inconclusive { n, reason } }))
}

/// New linear elements (in `L₀/M₀` coordinates) and affine elements of `J`.
type Enlargement<F> = (Vec<SparseVec<F>>, Vec<PbwElement<F>>);

/// Inspects rows supported in degree `≤ 1`. Returns new linear and affine elements of `J` (lifted
/// to `L₀`) when they enlarge `M₀`.
fn enlarge_ideal<F: Field>(reduction: &Reduction<F>, cols: &Columns, rows: &[SparseVec<F>]) -> Option<Enlargement<F>> {
    let table = &reduction.table;
    let mut linear_bar: Vec<SparseVec<F>> = Vec::new();
    let mut affine: Vec<PbwElement<F>> = Vec::new();
    for row in rows {
        let element = cols.to_element(row);
        let lin = SparseVec::from_unsorted(
            element.terms().iter().filter(|(m, _)| m.len() == 1).map(|(m, c)| (m[0] as u32, c.clone())).collect(),
        );
        let constant = element.coeff(&[]);
        if constant.is_zero() {
            linear_bar.push(lin);
        } else {
            for y in 0..table.dim() {
                let b = table.bracket_vec(&SparseVec::unit(y, F::one()), &lin);
                if !b.is_zero() {
                    linear_bar.push(b);
                }
            }
            affine.push(reduction.lift_element(&element));
        }
    }
    let grown = table.lie_ideal_generated(&linear_bar);
    if grown.dim() == 0 {
        return None;
    }
    let lifted: Vec<SparseVec<F>> = linear_bar.iter().map(|v| reduction.lift(v)).collect();
    Some((lifted, affine))
}

/// Builds and verifies the action of `L̄₀` on the non-pivot representatives.
fn regular_representation<F: Field>(
    reduction: &Reduction<F>,
    env: &Envelope<F>,
    cols: &Columns,
    ech: &Echelon<F>,
    n: usize,
    gens: &[&PbwElement<F>],
    exec: Exec,
) -> Result<RegularRep<F>, String> {
    let d = reduction.table.dim();
    let first = cols.first_col_up_to(n - 1);
    let mut rep_cols: Vec<usize> = (first..cols.total()).filter(|c| !ech.is_pivot(*c)).collect();
    rep_cols.reverse();
    let size = rep_cols.len();
    if size > WITNESS_DIM_GUARD {
        return Err(format!("{size} representatives exceed the witness guard {WITNESS_DIM_GUARD}"));
    }
    let index: std::collections::HashMap<usize, usize> = rep_cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let reps: Vec<Monomial> = rep_cols.iter().map(|c| cols.monomial(*c)).collect();
    let columns: Vec<Result<Vec<Vec<F>>, String>> = exec.map_range(d, |x| {
        reps.iter()
            .map(|m| {
                let prod = env.gen_times(x, &PbwElement::monomial(m.clone(), F::one()));
                let r = ech.reduce(&cols.to_sparse(&prod));
                let mut col = vec![F::zero(); size];
                for (c, v) in r.entries() {
                    match index.get(&(*c as usize)) {
                        Some(i) => col[*i] = v.clone(),
                        None => return Err(format!("product leaves the representative span at column {c}")),
                    }
                }
                Ok(col)
            })
            .collect()
    });
    let mut action = Vec::with_capacity(d);
    for c in columns {
        action.push(Matrix::from_columns(size, &c?));
    }
    let rep = RegularRep { reps, action };

    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|x| (x + 1..d).map(move |y| (x, y))).collect();
    let bad_pair = exec.map(&pairs, |(x, y)| {
        let lhs = rep.action[*x].commutator(&rep.action[*y]);
        let rhs = rep.lie_matrix(reduction.table.bracket(*x, *y));
        lhs != rhs
    });
    if let Some(k) = bad_pair.iter().position(|b| *b) {
        return Err(format!("candidate action is not a Lie homomorphism on pair {:?}", pairs[k]));
    }
    let images: Vec<Vec<F>> = rep.action.iter().map(|m| m.flatten()).collect();
    let target = MatrixTarget { size };
    let nonzero = exec.map(gens, |g| g.evaluate(&images, &target).iter().any(|c| !c.is_zero()));
    if let Some(k) = nonzero.iter().position(|b| *b) {
        return Err(format!("generator {k} acts nontrivially on the representatives"));
    }
    let mut e1 = vec![F::zero(); size];
    e1[0] = F::one();
    for (a, m) in rep.reps.iter().enumerate() {
        let v = rep.act(&PbwElement::monomial(m.clone(), F::one()), &e1);
        if v.iter().enumerate().any(|(i, c)| if i == a { !c.is_one() } else { !c.is_zero() }) {
            return Err(format!("representative {a} does not map to its own coordinate vector"));
        }
    }
    Ok(rep)
}
