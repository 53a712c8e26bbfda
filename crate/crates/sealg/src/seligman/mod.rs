//! The ideal `J^λ ⊆ U(L₀)` and the algebra `Se^λ = U(L₀)/J^λ`.
//!
//! [`compute_seligman`] builds the generators, saturates the ideal degree by degree and tries to
//! certify the quotient. A result is certified only when an upper bound (every monomial of the
//! top degree reduces to lower degree modulo the computed part of `J^λ`) meets a lower bound (an
//! explicit representation of `U(L₀)` that kills `J^λ` and has that dimension), or when `1` was
//! found in the ideal. Explicit targets from the structure theory live in [`targets`].

mod columns;
mod generators;
mod report;
mod saturate;
mod targets;

pub use columns::Columns;
pub use generators::{
    check_weight, full_envelope, jlambda_generators, jlambda_generators_with, raising_pi0, Generator, GeneratorKind,
    JLambdaGenerators, RELAXED_WORD_BUDGET,
};
pub use report::{quotient_report, TraceJson};
pub use saturate::{
    saturate, Outcome, Reduction, RegularRep, Saturated, SaturationLimits, TraceEntry, WITNESS_DIM_GUARD,
};
pub use targets::{
    central_trace, central_trace_target, check_iso, lie_hom_violation, quaternion_target, sandwich_certify,
    symmetric_identity_criterion, ts_lambda_target, CriterionReport, IsoFailure, SandwichReport, Witness,
};

use num::BigUint;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};
use crate::envelope::{EnvelopeError, LieTable, PbwElement, MONOMIAL_GUARD};
use crate::exactla::{Field, SparseVec, Subspace};
use crate::liealg::{GradedLie, LieError, Weight};
use crate::symid::SymIdError;
use crate::Exec;

/// Errors raised while computing Seligman algebras.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeligmanError {
    #[error("invalid weight: {0}")]
    BadWeight(String),
    #[error("invalid option: {0}")]
    BadOption(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{context} is not a Lie homomorphism on basis pair {pair:?}")]
    NotLieHom { pair: (usize, usize), context: String },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Envelope(#[from] EnvelopeError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    SymId(#[from] SymIdError),
}

/// Options of [`compute_seligman`].
#[derive(Clone, Copy, Debug)]
pub struct SeligmanOptions {
    /// Largest saturation degree; `None` selects `max(3, ℓ_max + 2)`.
    pub n_max: Option<usize>,
    /// Include the relaxed generator families.
    pub relaxed: bool,
    /// Largest string length of the relaxed families; `None` selects `ℓ_max + 2`.
    pub m_cap: Option<usize>,
    /// Upper limit on the number of monomials per saturation matrix.
    pub monomial_guard: u128,
    pub exec: Exec,
}

impl Default for SeligmanOptions {
    fn default() -> Self {
        SeligmanOptions {
            n_max: None,
            relaxed: true,
            m_cap: None,
            monomial_guard: MONOMIAL_GUARD,
            exec: Exec::default(),
        }
    }
}

impl SeligmanOptions {
    /// The saturation degree used for `λ`.
    pub fn n_max_for(&self, lambda: &Weight) -> usize {
        self.n_max.unwrap_or_else(|| 3.max(lambda.max_coord().max(0) as usize + 2))
    }

    /// The relaxed string length used for `λ`.
    pub fn m_cap_for(&self, lambda: &Weight) -> usize {
        self.m_cap.unwrap_or(lambda.max_coord().max(0) as usize + 2)
    }
}

/// Certification status of a computed quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    /// Upper and lower bounds agree.
    Certified,
    /// `1 ∈ J`, so the quotient is zero.
    CertifiedZero,
    /// Closure held with the same dimension at two consecutive degrees, without a lower bound.
    Stable(usize),
    /// No conclusion at the given degree.
    Inconclusive(usize),
}

impl Status {
    /// True for the two certified states.
    pub fn is_certified(&self) -> bool {
        matches!(self, Status::Certified | Status::CertifiedZero)
    }

    /// Short tag used in reports.
    pub fn tag(&self) -> String {
        match self {
            Status::Certified => "certified".into(),
            Status::CertifiedZero => "certified-zero".into(),
            Status::Stable(n) => format!("stable({n})"),
            Status::Inconclusive(n) => format!("inconclusive({n})"),
        }
    }
}

/// The computed quotient `U(L₀)/J^λ`.
#[derive(Clone, Debug)]
pub struct QuotientResult<F> {
    pub lambda: Weight,
    pub status: Status,
    /// Certified dimension, or the closure upper bound for a stable result.
    pub quotient_dim: Option<usize>,
    /// Saturation degree at which the computation stopped.
    pub n_used: usize,
    pub trace: Vec<TraceEntry>,
    /// Coset representatives as monomials of `U(L₀)`, the unit first.
    pub basis: Vec<PbwElement<F>>,
    pub basis_labels: Vec<String>,
    /// Structure constants in the representative basis, verified associative and unital.
    pub structure: Option<Algebra<F>>,
    /// Coordinates of `can(x)` for every `L₀` basis vector `x`.
    pub can_images: Vec<Vec<F>>,
    pub scalar_mode: String,
    pub witness: Option<(String, SandwichReport)>,
    pub dim_bound: BigUint,
    /// Dimension of the Lie ideal of linear elements found in `J^λ`.
    pub linear_ideal_dim: usize,
    pub restarts: usize,
    pub generator_count: usize,
    pub relaxed_truncated: bool,
    /// Human-readable note on why certification failed, if it did.
    pub note: Option<String>,
}

impl<F: Field> QuotientResult<F> {
    /// Coordinates of `can(x)` for `x ∈ L₀` given in `L₀` coordinates.
    pub fn can(&self, x: &[F]) -> Vec<F> {
        let d = self.can_images.first().map_or(0, |v| v.len());
        let mut out = vec![F::zero(); d];
        for (c, v) in x.iter().zip(&self.can_images) {
            crate::exactla::axpy(&mut out, c, v);
        }
        out
    }
}

/// `(ℓ_max + 1)^{dim L₀ − (n − 1)}`.
pub fn dim_bound<F: Field>(l: &GradedLie<F>, lambda: &Weight) -> BigUint {
    let base = BigUint::from(lambda.max_coord().max(0) as u64 + 1);
    num::pow::pow(base, l.dim_l0() - (l.n() - 1))
}

/// Computes `Se^λ(L)`. With a witness, its admissibility and image dimension are reported and
/// checked against the saturation bound.
pub fn compute_seligman<F: Field>(
    l: &GradedLie<F>,
    lambda: &Weight,
    opts: &SeligmanOptions,
    witness: Option<&Witness<F>>,
) -> Result<QuotientResult<F>, SeligmanError> {
    check_weight(l, lambda)?;
    let exec = opts.exec;
    let env = full_envelope(l, exec);
    let gens = jlambda_generators_with(l, &env, lambda, opts.m_cap_for(lambda), opts.relaxed, exec)?;
    drop(env);
    let elements = gens.elements();
    let l0 = LieTable::zero_part(l, exec);
    let limits = SaturationLimits { n_max: opts.n_max_for(lambda), monomial_guard: opts.monomial_guard, exec };
    let sat = saturate(&l0, &elements, limits)?;
    let sandwich = match witness {
        Some(w) => Some((w.description.clone(), sandwich_certify(l, &elements, w, exec)?)),
        None => None,
    };
    let bound = dim_bound(l, lambda);
    let mut result = QuotientResult {
        lambda: lambda.clone(),
        status: Status::Inconclusive(0),
        quotient_dim: None,
        n_used: sat.trace.last().map_or(0, |t| t.n),
        trace: sat.trace.clone(),
        basis: Vec::new(),
        basis_labels: Vec::new(),
        structure: None,
        can_images: Vec::new(),
        scalar_mode: F::mode_name(),
        witness: sandwich,
        dim_bound: bound.clone(),
        linear_ideal_dim: sat.reduction.m0.dim(),
        restarts: sat.restarts,
        generator_count: elements.len(),
        relaxed_truncated: gens.relaxed_truncated,
        note: None,
    };
    let closure_dim = sat.trace.last().filter(|t| t.closure).map(|t| t.quotient_dim);
    match &sat.outcome {
        Outcome::Zero { .. } => {
            result.status = Status::CertifiedZero;
            result.quotient_dim = Some(0);
            result.structure = Some(Algebra::new(Vec::new(), Vec::new(), Vec::new())?);
            result.can_images = vec![Vec::new(); l.dim_l0()];
        }
        Outcome::Certified { rep, .. } => {
            fill_structure(&mut result, &sat.reduction, rep, &l0)?;
            result.status = Status::Certified;
        }
        Outcome::Stable { n, reason } => {
            result.status = Status::Stable(*n);
            result.quotient_dim = closure_dim;
            result.note = Some(reason.clone());
        }
        Outcome::Inconclusive { n, reason } => {
            result.status = Status::Inconclusive(*n);
            result.note = Some(reason.clone());
        }
    }
    if let (Some((_, s)), Some(upper)) = (&result.witness, result.quotient_dim.or(closure_dim)) {
        if s.is_admissible && s.image_dim > upper {
            return Err(SeligmanError::Internal(format!(
                "admissible witness of dimension {} exceeds the upper bound {upper}",
                s.image_dim
            )));
        }
        if s.is_admissible && s.image_dim == upper && matches!(result.status, Status::Stable(_)) {
            result.status = Status::Certified;
            result.quotient_dim = Some(upper);
        }
    }
    if let Some(dim) = result.quotient_dim {
        if BigUint::from(dim) > bound {
            return Err(SeligmanError::Internal(format!("dimension {dim} exceeds the bound {bound}")));
        }
    }
    Ok(result)
}

fn fill_structure<F: Field>(
    result: &mut QuotientResult<F>,
    reduction: &Reduction<F>,
    rep: &RegularRep<F>,
    l0: &LieTable<F>,
) -> Result<(), SeligmanError> {
    let size = rep.reps.len();
    let lifted: Vec<PbwElement<F>> =
        rep.reps.iter().map(|m| reduction.lift_element(&PbwElement::monomial(m.clone(), F::one()))).collect();
    let labels: Vec<String> = lifted
        .iter()
        .map(|u| match u.terms().keys().next() {
            Some(m) if m.is_empty() => "1".to_string(),
            Some(m) => l0.format_monomial(m),
            None => "0".to_string(),
        })
        .collect();
    let mut table = Vec::with_capacity(size * size);
    for a in 0..size {
        let ra = PbwElement::monomial(rep.reps[a].clone(), F::one());
        for b in 0..size {
            let mut eb = vec![F::zero(); size];
            eb[b] = F::one();
            table.push(SparseVec::from_dense(&rep.act(&ra, &eb)));
        }
    }
    let mut unit = vec![F::zero(); size];
    unit[0] = F::one();
    let structure = Algebra::new(labels.clone(), table, unit.clone())?;
    result.can_images = reduction.proj.iter().map(|x| rep.act(&PbwElement::from_lie(x), &unit)).collect();
    result.quotient_dim = Some(size);
    result.basis = lifted;
    result.basis_labels = labels;
    result.structure = Some(structure);
    Ok(())
}

/// The unital subalgebra `Se^λ_i` generated by `can(H_i(A, A))`.
#[derive(Clone, Debug)]
pub struct SubalgebraReport<F> {
    pub i: usize,
    pub space: Subspace<F>,
    /// Images of `H_i(a, b)` for basis pairs.
    pub generators: Vec<Vec<F>>,
    pub commutative: bool,
}

/// `Se^λ_i` inside a certified quotient.
pub fn subalgebra_se_i<F: Field>(
    l: &GradedLie<F>,
    result: &QuotientResult<F>,
    i: usize,
) -> Result<SubalgebraReport<F>, SeligmanError> {
    let se = result
        .structure
        .as_ref()
        .ok_or_else(|| SeligmanError::Precondition("the quotient has no structure constants".into()))?;
    if i == 0 || i >= l.n() {
        return Err(SeligmanError::Precondition(format!("node {i} outside 1..{}", l.n() - 1)));
    }
    let a = l.coeff();
    let z = l.zero_range();
    let mut generators = Vec::new();
    for x in 0..a.dim() {
        for y in 0..a.dim() {
            let h = l.big_h(i, &a.basis(x), &a.basis(y))?;
            generators.push(result.can(&h[z.clone()]));
        }
    }
    let space = if se.dim() == 0 { Subspace::zero(0) } else { se.subalgebra_generated(&generators) };
    let commutative = generators.iter().all(|g| generators.iter().all(|h| se.is_zero(&se.commutator(g, h))));
    Ok(SubalgebraReport { i, space, generators, commutative })
}

/// True when every element of `Se^λ_i` commutes with every element of `Se^λ_j`.
pub fn subalgebras_commute<F: Field>(se: &Algebra<F>, x: &SubalgebraReport<F>, y: &SubalgebraReport<F>) -> bool {
    x.generators.iter().all(|g| y.generators.iter().all(|h| se.is_zero(&se.commutator(g, h))))
}

/// Rank of the product map `Se^λ_1 ⊗ ⋯ ⊗ Se^λ_{n−1} → Se^λ`, with the product of the factor
/// dimensions.
pub fn product_map_rank<F: Field>(se: &Algebra<F>, parts: &[SubalgebraReport<F>]) -> (usize, usize) {
    let mut products: Vec<Vec<F>> = if se.dim() == 0 { Vec::new() } else { vec![se.unit().to_vec()] };
    let mut expected = 1usize;
    for part in parts {
        let basis = part.space.basis_dense();
        expected *= basis.len();
        let mut next = Vec::with_capacity(products.len() * basis.len());
        for p in &products {
            for b in &basis {
                next.push(se.mul(p, b));
            }
        }
        products = next;
    }
    let rank = if se.dim() == 0 { 0 } else { Subspace::span_dense(se.dim(), &products).dim() };
    (rank, expected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Q;

    fn run(a: &Algebra<Q>, n: usize, lambda: &[i64]) -> QuotientResult<Q> {
        let l = GradedLie::sl(a, n).unwrap();
        let w = Weight::new(lambda.to_vec());
        compute_seligman(&l, &w, &SeligmanOptions::default(), None).unwrap()
    }

    #[test]
    fn zero_weight_gives_ground_field() {
        let r = run(&Algebra::<Q>::trunc_poly(2).unwrap(), 2, &[0]);
        assert_eq!(r.status, Status::Certified);
        assert_eq!(r.quotient_dim, Some(1));
    }

    #[test]
    fn truncated_polynomials_rank_one() {
        let a = Algebra::<Q>::trunc_poly(2).unwrap();
        let l = GradedLie::sl(&a, 2).unwrap();
        let lambda = Weight::new(vec![2]);
        let w = ts_lambda_target(&l, &lambda).unwrap();
        let r = compute_seligman(&l, &lambda, &SeligmanOptions::default(), Some(&w)).unwrap();
        assert_eq!(r.status, Status::Certified);
        assert_eq!(r.quotient_dim, Some(3));
        assert_eq!(check_iso(&r, &w).unwrap(), None);
        let (_, s) = r.witness.as_ref().unwrap();
        assert!(s.is_admissible);
        assert_eq!(s.image_dim, 3);
    }

    #[test]
    fn bound_for_zero_weight_is_one() {
        let l = GradedLie::sl(&Algebra::<Q>::matrix(2).unwrap(), 3).unwrap();
        assert_eq!(dim_bound(&l, &Weight::zero(2)), BigUint::from(1u32));
    }
}
