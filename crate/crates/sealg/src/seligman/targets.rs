//! Explicit target algebras for `Se^λ`, lower-bound certification, isomorphism checks and the
//! symmetric-identity criterion.
//!
//! A target is a unital algebra `B` with a Lie homomorphism `η₀ : L₀ → B⁻`. Its extension
//! `η : U(L₀) → B` kills `J^λ` exactly when it kills the generators; then `η` factors through
//! `Se^λ` and the dimension of its image bounds `dim Se^λ` from below.

use crate::algebra::{Algebra, LinearMap, SymTensorAlgebra, Target};
use crate::envelope::PbwElement;
use crate::exactla::{axpy, is_zero_vec, Coordinatizer, Field, Matrix};
use crate::liealg::{GradedLie, Weight};
use crate::symid::{identity_holds_polarized, multisets};
use crate::Exec;

use super::generators::{full_envelope, raising_pi0};
use super::{QuotientResult, SeligmanError};

/// A target algebra with the images of the `L₀` basis.
#[derive(Clone, Debug)]
pub struct Witness<F> {
    pub description: String,
    pub target: Algebra<F>,
    /// `η₀ : L₀ → B` on the `L₀` basis.
    pub eta0: LinearMap<F>,
}

impl<F: Field> Witness<F> {
    /// `η(u)` for `u ∈ U(L₀)`.
    pub fn eta(&self, u: &PbwElement<F>) -> Vec<F> {
        let images: Vec<Vec<F>> = (0..self.eta0.src_dim()).map(|p| self.eta0.image(p).to_vec()).collect();
        u.evaluate(&images, &self.target)
    }
}

/// Outcome of [`sandwich_certify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SandwichReport {
    pub is_admissible: bool,
    /// Dimension of the unital subalgebra generated by `η₀(L₀)`.
    pub image_dim: usize,
    /// Index of the first generator not killed by `η`.
    pub first_violation: Option<usize>,
}

/// The first pair of `L₀` basis vectors on which `η₀` fails to preserve brackets.
pub fn lie_hom_violation<F: Field>(l: &GradedLie<F>, w: &Witness<F>) -> Option<(usize, usize)> {
    let z = l.zero_range();
    let off = z.start;
    for p in z.clone() {
        for q in (p + 1)..z.end {
            let br = l.bracket_basis(p, q);
            let mut lhs = vec![F::zero(); w.target.dim()];
            for (r, c) in br.entries() {
                axpy(&mut lhs, c, w.eta0.image(*r as usize - off));
            }
            let rhs = w.target.commutator(w.eta0.image(p - off), w.eta0.image(q - off));
            if lhs != rhs {
                return Some((p - off, q - off));
            }
        }
    }
    None
}

/// Tests whether `η` kills every generator and measures the image of `η₀`.
pub fn sandwich_certify<F: Field>(
    l: &GradedLie<F>,
    gens: &[PbwElement<F>],
    w: &Witness<F>,
    exec: Exec,
) -> Result<SandwichReport, SeligmanError> {
    check_witness_shape(l, w)?;
    if let Some(pair) = lie_hom_violation(l, w) {
        return Err(SeligmanError::NotLieHom { pair, context: w.description.clone() });
    }
    let killed = exec.map(gens, |g| is_zero_vec(&w.eta(g)));
    let first_violation = killed.iter().position(|k| !k);
    let images: Vec<Vec<F>> = (0..w.eta0.src_dim()).map(|p| w.eta0.image(p).to_vec()).collect();
    let image_dim = if w.target.dim() == 0 { 0 } else { w.target.subalgebra_generated(&images).dim() };
    Ok(SandwichReport { is_admissible: first_violation.is_none(), image_dim, first_violation })
}

fn check_witness_shape<F: Field>(l: &GradedLie<F>, w: &Witness<F>) -> Result<(), SeligmanError> {
    if w.eta0.src_dim() != l.dim_l0() || w.eta0.dst_dim() != w.target.dim() {
        return Err(SeligmanError::Precondition(format!(
            "η₀ has shape {} → {}, expected {} → {}",
            w.eta0.src_dim(),
            w.eta0.dst_dim(),
            l.dim_l0(),
            w.target.dim()
        )));
    }
    Ok(())
}

/// Builds a witness from the images `ρ_i(a)` of the split coordinates `x = cE_kk + Σ h_i(a_i)`,
/// with `c` sent to zero.
fn witness_from_split<F: Field>(
    l: &GradedLie<F>,
    k: usize,
    target: Algebra<F>,
    rho: &[LinearMap<F>],
    description: String,
) -> Result<Witness<F>, SeligmanError> {
    let z = l.zero_range();
    let mut images = Vec::with_capacity(z.len());
    for p in z {
        let mut x = vec![F::zero(); l.dim()];
        x[p] = F::one();
        let (_, hs) = l.l0_coordinates(&x, k)?;
        let mut v = vec![F::zero(); target.dim()];
        for (r, a) in rho.iter().zip(&hs) {
            axpy(&mut v, &F::one(), &r.apply(a));
        }
        images.push(v);
    }
    let eta0 = LinearMap::new(l.dim_l0(), target.dim(), images);
    Ok(Witness { description, target, eta0 })
}

/// The tensor-product target `⊗_i B_i` with `h_i(a) ↦ 1 ⊗ ⋯ ⊗ sym_{ℓ_i}(a) ⊗ ⋯ ⊗ 1`.
///
/// For commutative `A` every factor is `TS^{ℓ_i}(A)` and any `λ` is allowed. Otherwise `λ` must be
/// totally disconnected with `n ≥ 3`: `B₁ = TS^{ℓ₁}(A)`, the middle factors are `TS^{ℓ_i}(A)`
/// modulo the ideal generated by commutators, and `B_{n−1} = TS^{ℓ_{n−1}}(A^op)`. Factors with
/// `ℓ_i = 0` are the ground field and are left out of the product.
pub fn ts_lambda_target<F: Field>(l: &GradedLie<F>, lambda: &Weight) -> Result<Witness<F>, SeligmanError> {
    super::generators::check_weight(l, lambda)?;
    let a = l.coeff();
    let n = l.n();
    let commutative = a.is_commutative();
    let k = if commutative {
        l.split()
    } else {
        if n < 3 {
            return Err(SeligmanError::Precondition(
                "the tensor-product target for noncommutative A needs n ≥ 3".into(),
            ));
        }
        if !lambda.is_totally_disconnected() {
            return Err(SeligmanError::Precondition(format!(
                "λ = ({}) is not totally disconnected",
                lambda.to_compact()
            )));
        }
        lambda.coords.iter().position(|c| *c == 0).map(|i| i + 1).ok_or_else(|| {
            SeligmanError::Precondition("a totally disconnected λ with n ≥ 3 has a zero coordinate".into())
        })?
    };
    let mut factors: Vec<(usize, Algebra<F>, LinearMap<F>)> = Vec::new();
    let mut names = Vec::new();
    for i in 1..n {
        let ell = lambda.coords[i - 1] as usize;
        if ell == 0 {
            continue;
        }
        let last = i == n - 1 && !commutative;
        let middle = i > 1 && i < n - 1 && !commutative;
        let base = if last { a.opposite() } else { a.clone() };
        let ts = SymTensorAlgebra::build(&base, ell)?;
        let sym = ts.sym_map();
        if middle {
            let ideal = ts.algebra().derived_spaces().commutator_ideal;
            let (q, proj) = ts.algebra().quotient(&ideal)?;
            factors.push((i, q, sym.then(&proj)));
            names.push(format!("TS^{ell}(A)/C"));
        } else {
            factors.push((i, ts.algebra().clone(), sym));
            names.push(if last { format!("TS^{ell}(A^op)") } else { format!("TS^{ell}(A)") });
        }
    }
    let mut target = Algebra::ground();
    for (_, b, _) in &factors {
        target = target.tensor_product(b)?;
    }
    let dims: Vec<usize> = factors.iter().map(|f| f.1.dim()).collect();
    let mut rho = vec![LinearMap::new(a.dim(), target.dim(), vec![vec![F::zero(); target.dim()]; a.dim()]); n - 1];
    for (pos, (i, b, map)) in factors.iter().enumerate() {
        let after: usize = dims[pos + 1..].iter().product();
        let images = (0..a.dim())
            .map(|x| {
                let v = map.image(x);
                let mut out = vec![F::zero(); target.dim()];
                if b.dim() > 0 && target.dim() > 0 {
                    for (j, c) in v.iter().enumerate() {
                        if !c.is_zero() {
                            out[j * after] += c.clone();
                        }
                    }
                }
                out
            })
            .collect();
        rho[i - 1] = LinearMap::new(a.dim(), target.dim(), images);
    }
    let description = if names.is_empty() { "k".to_string() } else { names.join(" ⊗ ") };
    witness_from_split(l, k, target, &rho, description)
}

/// The decomposition `A = k·1 ⊕ [A,A]` and the projection `τ` onto `k·1` along `[A,A]`, as a
/// linear form. Requires `Z(A) = k·1` and `dim [A,A] = dim A − 1`.
pub fn central_trace<F: Field>(a: &Algebra<F>) -> Result<Vec<F>, SeligmanError> {
    let ds = a.derived_spaces();
    if ds.center.dim() != 1 || ds.commutator.dim() + 1 != a.dim() {
        return Err(SeligmanError::Precondition("A must be central with A = k·1 ⊕ [A,A]".into()));
    }
    let mut family = vec![a.unit().to_vec()];
    family.extend(ds.commutator.basis_dense());
    let coord = Coordinatizer::new(a.dim(), &family)
        .filter(|c| c.len() == a.dim())
        .ok_or_else(|| SeligmanError::Precondition("1 ∈ [A,A]".into()))?;
    Ok((0..a.dim()).map(|i| coord.coordinates(&a.basis(i)).expect("spanning family")[0].clone()).collect())
}

/// The target `B = A` for `λ = ϖ₁ + ϖ₂` in `sl₄(A)` with `A = k·1 ⊕ [A,A]`:
/// `diag(a₁, …, a₄) ↦ 2τ(a₁) + a₂`, i.e. `a₁* + a₁ + a₂` for quaternion algebras.
pub fn quaternion_target<F: Field>(l: &GradedLie<F>, lambda: &Weight) -> Result<Witness<F>, SeligmanError> {
    if l.n() != 4 || lambda.coords != [1, 1, 0] {
        return Err(SeligmanError::Precondition("the quaternion target needs n = 4 and λ = ϖ₁ + ϖ₂".into()));
    }
    let a = l.coeff();
    let tau = central_trace(a)?;
    let n = l.n();
    let images = l
        .zero_range()
        .map(|p| {
            let mut x = vec![F::zero(); l.dim()];
            x[p] = F::one();
            let m = l.to_gl(&x);
            let (d1, d2) = (&m[0], &m[n + 1]);
            let t: F = d1.iter().zip(&tau).fold(F::zero(), |s, (u, v)| s + u.clone() * v.clone());
            let mut out = a.scalar(t * F::from_i64(2));
            axpy(&mut out, &F::one(), d2);
            out
        })
        .collect();
    let eta0 = LinearMap::new(l.dim_l0(), a.dim(), images);
    Ok(Witness { description: "A via diag(a₁..a₄) ↦ 2τ(a₁) + a₂".into(), target: a.clone(), eta0 })
}

/// The target `B = k` for `λ = ℓϖ_i` with `1 < i < n − 1` and central `A = k·1 ⊕ [A,A]`:
/// `cE₁₁ + Σ h_j(a_j) ↦ ℓτ(a_i)`. It is admissible exactly when `ℓτ` satisfies the `(ℓ+1)`-st
/// symmetric identity.
pub fn central_trace_target<F: Field>(l: &GradedLie<F>, lambda: &Weight) -> Result<Witness<F>, SeligmanError> {
    super::generators::check_weight(l, lambda)?;
    let n = l.n();
    let support: Vec<usize> = (1..n).filter(|i| lambda.coords[i - 1] != 0).collect();
    let i = match support.as_slice() {
        [i] if *i > 1 && *i < n - 1 => *i,
        _ => return Err(SeligmanError::Precondition("the trace target needs λ = ℓϖ_i with 1 < i < n − 1".into())),
    };
    let ell = lambda.coords[i - 1];
    let a = l.coeff();
    let tau = central_trace(a)?;
    let target = Algebra::<F>::ground();
    let zero = LinearMap::new(a.dim(), 1, vec![vec![F::zero()]; a.dim()]);
    let mut rho = vec![zero; n - 1];
    rho[i - 1] = LinearMap::new(a.dim(), 1, tau.iter().map(|t| vec![t.clone() * F::from_i64(ell)]).collect());
    witness_from_split(l, 1, target, &rho, format!("k via {ell}τ on h{i}"))
}

/// Why an isomorphism check failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoFailure {
    DimensionMismatch { quotient: usize, target: usize },
    NotInvertible,
    NotMultiplicative { pair: (usize, usize) },
    GeneratorMismatch { l0_index: usize },
}

impl std::fmt::Display for IsoFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IsoFailure::DimensionMismatch { quotient, target } => {
                write!(f, "dimension mismatch: quotient {quotient}, target {target}")
            }
            IsoFailure::NotInvertible => write!(f, "the map on representatives is not invertible"),
            IsoFailure::NotMultiplicative { pair } => write!(f, "not multiplicative on basis pair {pair:?}"),
            IsoFailure::GeneratorMismatch { l0_index } => {
                write!(f, "generator image differs on L₀ basis vector {l0_index}")
            }
        }
    }
}

/// Checks that `η` induces an algebra isomorphism `Se^λ → B`: equal dimensions, invertibility on
/// the representatives, multiplicativity on all basis pairs and agreement with `η₀` on `can(L₀)`.
pub fn check_iso<F: Field>(result: &QuotientResult<F>, w: &Witness<F>) -> Result<Option<IsoFailure>, SeligmanError> {
    let se = result
        .structure
        .as_ref()
        .ok_or_else(|| SeligmanError::Precondition("the quotient has no verified structure constants".into()))?;
    if se.dim() != w.target.dim() {
        return Ok(Some(IsoFailure::DimensionMismatch { quotient: se.dim(), target: w.target.dim() }));
    }
    let d = se.dim();
    let images: Vec<Vec<F>> = result.basis.iter().map(|r| w.eta(r)).collect();
    if d > 0 && Matrix::from_columns(d, &images).inverse().is_none() {
        return Ok(Some(IsoFailure::NotInvertible));
    }
    let apply = |x: &[F]| {
        let mut out = vec![F::zero(); d];
        for (c, v) in x.iter().zip(&images) {
            axpy(&mut out, c, v);
        }
        out
    };
    for a in 0..d {
        for b in 0..d {
            let lhs = apply(&se.mul_basis(a, b).to_dense(d));
            if lhs != w.target.mul(&images[a], &images[b]) {
                return Ok(Some(IsoFailure::NotMultiplicative { pair: (a, b) }));
            }
        }
    }
    for (p, can) in result.can_images.iter().enumerate() {
        if apply(can) != w.eta0.image(p) {
            return Ok(Some(IsoFailure::GeneratorMismatch { l0_index: p }));
        }
    }
    Ok(None)
}

/// Both sides of the symmetric-identity criterion for `ρ(a) = η(h_i(a))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    /// `ρ` satisfies the order-`ℓ` symmetric identity.
    pub identity_holds: bool,
    /// `η ∘ π₀` kills `e_i(a₁)⋯e_i(a_ℓ) f_i(b₁)⋯f_i(b_ℓ)` for all basis arguments.
    pub pi0_vanishes: bool,
}

impl CriterionReport {
    /// The two sides agree.
    pub fn agree(&self) -> bool {
        self.identity_holds == self.pi0_vanishes
    }
}

/// Evaluates the order-`ℓ` symmetric identity for `ρ = η ∘ h_i` and the vanishing of
/// `η ∘ π₀` on the strings `e_i^ℓ f_i^ℓ`. Requires `η₀` and `ρ` to be Lie homomorphisms.
pub fn symmetric_identity_criterion<F: Field>(
    l: &GradedLie<F>,
    i: usize,
    w: &Witness<F>,
    ell: usize,
    exec: Exec,
) -> Result<CriterionReport, SeligmanError> {
    check_witness_shape(l, w)?;
    if i == 0 || i >= l.n() {
        return Err(SeligmanError::Precondition(format!("node {i} outside 1..{}", l.n() - 1)));
    }
    if let Some(pair) = lie_hom_violation(l, w) {
        return Err(SeligmanError::NotLieHom { pair, context: "η₀".into() });
    }
    let a = l.coeff();
    let off = l.zero_range().start;
    let rho = LinearMap::from_fn(a.dim(), w.target.dim(), |x| w.eta0.image(l.h_basis_index(i - 1, x) - off).to_vec());
    if let Some(pair) = w.target.lie_hom_violation(a, &rho) {
        return Err(SeligmanError::NotLieHom { pair, context: format!("ρ = η ∘ h_{i}") });
    }
    let identity_holds = identity_holds_polarized(a, &w.target, &rho, ell, exec)?.is_none();
    let env = full_envelope(l, exec);
    let tuples = multisets(a.dim(), ell);
    let pairs: Vec<(usize, usize)> = (0..tuples.len()).flat_map(|x| (0..tuples.len()).map(move |y| (x, y))).collect();
    let vanish =
        exec.map(&pairs, |(x, y)| raising_pi0(l, &env, i, &tuples[*x], &tuples[*y]).map(|u| is_zero_vec(&w.eta(&u))));
    let mut pi0_vanishes = true;
    for v in vanish {
        pi0_vanishes &= v?;
    }
    Ok(CriterionReport { identity_holds, pi0_vanishes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Q;

    #[test]
    fn ts_target_for_sl2_is_a_lie_hom() {
        let a = Algebra::<Q>::trunc_poly(2).unwrap();
        let l = GradedLie::sl(&a, 2).unwrap();
        let w = ts_lambda_target(&l, &Weight::new(vec![2])).unwrap();
        assert_eq!(w.target.dim(), 3);
        assert!(lie_hom_violation(&l, &w).is_none());
    }

    #[test]
    fn quaternion_target_is_a_lie_hom() {
        let a = Algebra::<Q>::quaternion(Q::from_i64(1), Q::from_i64(-1)).unwrap();
        let l = GradedLie::sl(&a, 4).unwrap();
        let w = quaternion_target(&l, &Weight::new(vec![1, 1, 0])).unwrap();
        assert!(lie_hom_violation(&l, &w).is_none());
    }

    #[test]
    fn noncommutative_rank_one_target_is_rejected() {
        let a = Algebra::<Q>::matrix(2).unwrap();
        let l = GradedLie::sl(&a, 2).unwrap();
        assert!(matches!(ts_lambda_target(&l, &Weight::new(vec![1])), Err(SeligmanError::Precondition(_))));
    }

    #[test]
    fn central_trace_of_mat2_is_half_the_trace() {
        let a = Algebra::<Q>::matrix(2).unwrap();
        let tau = central_trace(&a).unwrap();
        let id = a.unit().to_vec();
        let t: Q = id.iter().zip(&tau).fold(Q::from_i64(0), |s, (x, y)| s + x.clone() * y.clone());
        assert_eq!(t, Q::from_i64(1));
    }
}
