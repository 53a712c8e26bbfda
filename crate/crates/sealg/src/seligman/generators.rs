//! Generators of the ideal `J^λ ⊆ U(L₀)`.
//!
//! In type A every admissible raising sequence for the node `i` consists of `ℓ_i + 1` copies of
//! `α_i`, so the generators are `π₀(e_i(a₁)⋯e_i(a_{ℓ_i+1}) f_i(b₁)⋯f_i(b_{ℓ_i+1}))` together with
//! `h_i(1) − ℓ_i`. Root vectors of a fixed simple root commute, so both argument tuples range over
//! multisets of basis indices.

use serde::Serialize;

use crate::envelope::{Envelope, LieTable, PbwElement};
use crate::exactla::{Field, SparseVec};
use crate::liealg::{GradedLie, Weight};
use crate::symid::multisets;
use crate::Exec;

use super::SeligmanError;

/// Upper limit on the number of words evaluated for each relaxed family `(i, r)`.
pub const RELAXED_WORD_BUDGET: usize = 20_000;

/// Which family a generator belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GeneratorKind {
    /// `π₀(e_i(a₁)⋯e_i(a_r) f_i(b₁)⋯f_i(b_r))` with `r = ℓ_i + 1`, or larger `r` when relaxed.
    Raising { i: usize, r: usize },
    /// `h_i(1) − ℓ_i`.
    Shift { i: usize },
}

/// One generator, an element of `U(L₀)` in the `L₀` basis.
#[derive(Clone, Debug)]
pub struct Generator<F> {
    pub kind: GeneratorKind,
    /// Basis indices of `A` used as `e_i` arguments.
    pub a: Vec<usize>,
    /// Basis indices of `A` used as `f_i` arguments.
    pub b: Vec<usize>,
    pub element: PbwElement<F>,
    pub relaxed: bool,
}

/// The generators of `J^λ` for a dominant weight.
#[derive(Clone, Debug)]
pub struct JLambdaGenerators<F> {
    pub lambda: Weight,
    pub relaxed: bool,
    pub m_cap: usize,
    pub generators: Vec<Generator<F>>,
    /// Set when some relaxed family exceeded [`RELAXED_WORD_BUDGET`] and was left out.
    pub relaxed_truncated: bool,
}

impl<F: Field> JLambdaGenerators<F> {
    /// The nonzero generator elements.
    pub fn elements(&self) -> Vec<PbwElement<F>> {
        self.generators.iter().map(|g| g.element.clone()).collect()
    }

    /// Generators not coming from the relaxed family.
    pub fn core(&self) -> impl Iterator<Item = &Generator<F>> {
        self.generators.iter().filter(|g| !g.relaxed)
    }
}

/// Checks that `λ` is a dominant weight of the right rank for `L`.
pub fn check_weight<F: Field>(l: &GradedLie<F>, lambda: &Weight) -> Result<(), SeligmanError> {
    if lambda.rank() != l.n() - 1 {
        return Err(SeligmanError::BadWeight(format!(
            "weight has {} coordinates, expected {}",
            lambda.rank(),
            l.n() - 1
        )));
    }
    if !lambda.is_dominant() {
        return Err(SeligmanError::BadWeight(format!("{} is not dominant", lambda.to_compact())));
    }
    Ok(())
}

/// The full Lie table of `L` and its envelope, used to evaluate `π₀` on words.
pub fn full_envelope<F: Field>(l: &GradedLie<F>, exec: Exec) -> Envelope<F> {
    l.precompute(exec);
    Envelope::new(LieTable::from_graded(l, exec))
}

/// Evaluates `π₀(e_i(a₁)⋯e_i(a_r) f_i(b₁)⋯f_i(b_r))` as an element of `U(L₀)` in the `L₀` basis.
pub fn raising_pi0<F: Field>(
    l: &GradedLie<F>,
    env: &Envelope<F>,
    i: usize,
    a: &[usize],
    b: &[usize],
) -> Result<PbwElement<F>, SeligmanError> {
    let mut word = Vec::with_capacity(a.len() + b.len());
    for x in a {
        word.push(SparseVec::unit(l.root_basis_index(i - 1, i, *x), F::one()));
    }
    for y in b {
        word.push(SparseVec::unit(l.root_basis_index(i, i - 1, *y), F::one()));
    }
    let shift = l.neg_range().end as u16;
    Ok(env.pi0_word(&word)?.reindexed(|f| f - shift))
}

/// The generators of `J^λ`. With `relaxed`, the families `π₀(e_i^r f_i^r)` for
/// `ℓ_i + 1 < r ≤ m_cap` are added as well; they lie in `J^λ` and speed up saturation.
pub fn jlambda_generators<F: Field>(
    l: &GradedLie<F>,
    lambda: &Weight,
    m_cap: usize,
    relaxed: bool,
    exec: Exec,
) -> Result<JLambdaGenerators<F>, SeligmanError> {
    check_weight(l, lambda)?;
    let needed = lambda.max_coord().max(0) as usize + 1;
    if m_cap < needed {
        return Err(SeligmanError::BadOption(format!("m_cap = {m_cap} is below max ℓ_i + 1 = {needed}")));
    }
    let env = full_envelope(l, exec);
    jlambda_generators_with(l, &env, lambda, m_cap, relaxed, exec)
}

/// One raising generator to evaluate: node `i`, power `r`, the e- and f-argument tuples and
/// whether it belongs to a relaxed family.
type Task = (usize, usize, Vec<usize>, Vec<usize>, bool);

/// As [`jlambda_generators`], reusing an existing envelope of the full Lie table.
pub fn jlambda_generators_with<F: Field>(
    l: &GradedLie<F>,
    env: &Envelope<F>,
    lambda: &Weight,
    m_cap: usize,
    relaxed: bool,
    exec: Exec,
) -> Result<JLambdaGenerators<F>, SeligmanError> {
    check_weight(l, lambda)?;
    let d = l.coeff().dim();
    let mut tasks: Vec<Task> = Vec::new();
    let mut relaxed_truncated = false;
    for i in 1..l.n() {
        let ell = lambda.coords[i - 1] as usize;
        let top = if relaxed { m_cap.max(ell + 1) } else { ell + 1 };
        for r in (ell + 1)..=top {
            let extra = r > ell + 1;
            let tuples = multisets(d, r);
            if extra && tuples.len().saturating_mul(tuples.len()) > RELAXED_WORD_BUDGET {
                relaxed_truncated = true;
                continue;
            }
            for a in &tuples {
                for b in &tuples {
                    tasks.push((i, r, a.clone(), b.clone(), extra));
                }
            }
        }
    }
    let evaluated = exec.map(&tasks, |(i, _, a, b, _)| raising_pi0(l, env, *i, a, b));
    let mut generators = Vec::new();
    for (task, value) in tasks.into_iter().zip(evaluated) {
        let element = value?;
        if element.is_zero() {
            continue;
        }
        let (i, r, a, b, extra) = task;
        generators.push(Generator { kind: GeneratorKind::Raising { i, r }, a, b, element, relaxed: extra });
    }
    let zero_start = l.neg_range().end;
    for i in 1..l.n() {
        let ell = lambda.coords[i - 1];
        let h1 = (l.h_basis_index(i - 1, 0) - zero_start) as u16;
        let element = PbwElement::monomial(vec![h1], F::one()).sub(&PbwElement::scalar(F::from_i64(ell)));
        generators.push(Generator { kind: GeneratorKind::Shift { i }, a: vec![0], b: vec![], element, relaxed: false });
    }
    Ok(JLambdaGenerators { lambda: lambda.clone(), relaxed, m_cap, generators, relaxed_truncated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::exactla::Q;
    use num::Zero;

    #[test]
    fn zero_weight_generators_are_big_h() {
        let a = Algebra::<Q>::trunc_poly(2).unwrap();
        let l = GradedLie::sl(&a, 2).unwrap();
        let gens = jlambda_generators(&l, &Weight::new(vec![0]), 1, false, Exec::Sequential).unwrap();
        let z = l.neg_range().end;
        for g in gens.core().filter(|g| matches!(g.kind, GeneratorKind::Raising { .. })) {
            let hv = l.big_h(1, &a.basis(g.a[0]), &a.basis(g.b[0])).unwrap();
            let expected = PbwElement::from_terms(
                hv.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(p, c)| (vec![(p - z) as u16], c.clone())),
            );
            assert_eq!(g.element, expected);
        }
    }

    #[test]
    fn leading_term_is_factorial_times_product() {
        let a = Algebra::<Q>::trunc_poly(2).unwrap();
        let l = GradedLie::sl(&a, 2).unwrap();
        let env = full_envelope(&l, Exec::Sequential);
        let z = l.neg_range().end;
        let hx = (l.h_basis_index(0, 1) - z) as u16;
        let h1 = (l.h_basis_index(0, 0) - z) as u16;
        let g = raising_pi0(&l, &env, 1, &[1, 1], &[0, 0]).unwrap();
        assert_eq!(g.degree(), 2);
        let top = g.component(2);
        assert_eq!(top.coeff(&[h1.min(hx), h1.max(hx)]), Q::from_i64(0));
        assert_eq!(top.coeff(&[hx, hx]), Q::from_i64(2));
        assert_eq!(top.len(), 1);
    }

    #[test]
    fn rejects_non_dominant() {
        let l = GradedLie::sl(&Algebra::<Q>::ground(), 3).unwrap();
        assert!(jlambda_generators(&l, &Weight::new(vec![-1, 0]), 3, false, Exec::Sequential).is_err());
        assert!(jlambda_generators(&l, &Weight::new(vec![2, 0]), 2, false, Exec::Sequential).is_err());
    }
}
