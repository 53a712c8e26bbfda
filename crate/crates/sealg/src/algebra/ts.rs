//! Symmetric tensor algebras `TS^ℓ(A)` and the symmetrization map.

use crate::exactla::{Coordinatizer, Field, SparseVec, Subspace};
use crate::symid;

use super::{Algebra, AlgebraError, LinearMap, Target};

/// `TS^ℓ(A)`: the symmetric tensors inside `A^{⊗ℓ}` with coordinate-wise product, presented in
/// the basis `{1} ∪ {sym(b₁)···sym(b_j) : b₁ ≤ … ≤ b_j, j ≤ ℓ}` with `b_i ≠ 1_A`.
#[derive(Clone, Debug)]
pub struct SymTensorAlgebra<F> {
    base: Algebra<F>,
    ell: usize,
    ambient: Algebra<F>,
    words: Vec<Vec<usize>>,
    tb: Vec<Vec<F>>,
    coord: Coordinatizer<F>,
    algebra: Algebra<F>,
}

/// Result of testing the universal property of `TS^ℓ(A)` against a linear map `ρ : A → B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniversalOutcome<F> {
    /// The unique unital homomorphism `φ` with `φ ∘ sym_ℓ = ρ`, in the `TB` basis.
    Factors(LinearMap<F>),
    /// An element `a` on which the `(ℓ+1)`-st symmetric identity fails.
    IdentityFails { witness: Vec<F> },
    /// The assembled map is not multiplicative on this pair of `TB` basis indices.
    NotMultiplicative { pair: (usize, usize) },
}

impl<F: Field> SymTensorAlgebra<F> {
    /// Builds `TS^ℓ(A)`. The unit of `A` must be basis vector 0; the order on the remaining
    /// basis is lexicographic on labels.
    pub fn build(base: &Algebra<F>, ell: usize) -> Result<Self, AlgebraError> {
        if ell == 0 {
            return Err(AlgebraError::BadParameter("ℓ must be at least 1".into()));
        }
        if base.dim() == 0 || base.unit() != base.basis(0).as_slice() {
            return Err(AlgebraError::Precondition("the unit must be basis element 0".into()));
        }
        let ambient = base.tensor_power(ell)?;
        let mut order: Vec<usize> = (1..base.dim()).collect();
        order.sort_by(|a, b| base.labels()[*a].cmp(&base.labels()[*b]));
        let syms: Vec<Vec<F>> = order.iter().map(|b| sym_in(base, ell, &base.basis(*b))).collect();

        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut tb: Vec<Vec<F>> = vec![ambient.unit().to_vec()];
        let mut layer: Vec<(Vec<usize>, usize, Vec<F>)> = vec![(Vec::new(), 0, ambient.unit().to_vec())];
        for _ in 0..ell {
            let mut next = Vec::new();
            for (w, start, v) in &layer {
                for (pos, s) in syms.iter().enumerate().skip(*start) {
                    let mut w2 = w.clone();
                    w2.push(order[pos]);
                    let v2 = ambient.mul(v, s);
                    words.push(w2.clone());
                    tb.push(v2.clone());
                    next.push((w2, pos, v2));
                }
            }
            layer = next;
        }
        for (w, v) in words.iter().zip(&tb) {
            if !is_symmetric(base.dim(), ell, v) {
                return Err(AlgebraError::Precondition(format!("basis word {w:?} is not symmetric")));
            }
        }
        let coord = Coordinatizer::new(ambient.dim(), &tb)
            .ok_or_else(|| AlgebraError::Precondition("the TB family is linearly dependent".into()))?;
        let m = tb.len();
        let mut table = Vec::with_capacity(m * m);
        for x in &tb {
            for y in &tb {
                let c = coord
                    .coordinates(&ambient.mul(x, y))
                    .ok_or_else(|| AlgebraError::Precondition("TB products leave the TB span".into()))?;
                table.push(SparseVec::from_dense(&c));
            }
        }
        let labels = words
            .iter()
            .map(|w| {
                if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter().map(|b| format!("sym({})", base.labels()[*b])).collect::<Vec<_>>().join("·")
                }
            })
            .collect();
        let mut unit = vec![F::zero(); m];
        unit[0] = F::one();
        let algebra = Algebra::new(labels, table, unit)?;
        Ok(SymTensorAlgebra { base: base.clone(), ell, ambient, words, tb, coord, algebra })
    }

    /// The underlying algebra `A`.
    pub fn base(&self) -> &Algebra<F> {
        &self.base
    }

    /// The tensor degree `ℓ`.
    pub fn ell(&self) -> usize {
        self.ell
    }

    /// The ambient algebra `A^{⊗ℓ}`.
    pub fn ambient(&self) -> &Algebra<F> {
        &self.ambient
    }

    /// `TS^ℓ(A)` as an algebra in the `TB` basis.
    pub fn algebra(&self) -> &Algebra<F> {
        &self.algebra
    }

    /// Dimension of `TS^ℓ(A)`.
    pub fn dim(&self) -> usize {
        self.tb.len()
    }

    /// The basis words: multisets of basis indices of `A` (empty word for the unit).
    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    /// The `TB` basis elements in ambient coordinates.
    pub fn tb_ambient(&self) -> &[Vec<F>] {
        &self.tb
    }

    /// The subspace of `A^{⊗ℓ}` spanned by `TB`.
    pub fn subspace(&self) -> Subspace<F> {
        Subspace::span_dense(self.ambient.dim(), &self.tb)
    }

    /// `sym_ℓ(a)` in ambient coordinates.
    pub fn sym_ambient(&self, a: &[F]) -> Vec<F> {
        sym_in(&self.base, self.ell, a)
    }

    /// `sym_ℓ(a)` in `TB` coordinates.
    pub fn sym(&self, a: &[F]) -> Vec<F> {
        self.from_ambient(&self.sym_ambient(a)).expect("symmetrizations are symmetric")
    }

    /// The symmetrization map `A → TS^ℓ(A)` in `TB` coordinates.
    pub fn sym_map(&self) -> LinearMap<F> {
        LinearMap::from_fn(self.base.dim(), self.dim(), |i| self.sym(&self.base.basis(i)))
    }

    /// `TB` coordinates of an ambient vector, when it is symmetric.
    pub fn from_ambient(&self, v: &[F]) -> Option<Vec<F>> {
        self.coord.coordinates(v)
    }

    /// Ambient coordinates of a `TB` coordinate vector.
    pub fn to_ambient(&self, x: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.ambient.dim()];
        for (c, v) in x.iter().zip(&self.tb) {
            crate::exactla::axpy(&mut out, c, v);
        }
        out
    }

    /// True when the ambient vector is invariant under all permutations of tensor factors.
    pub fn is_symmetric(&self, v: &[F]) -> bool {
        is_symmetric(self.base.dim(), self.ell, v)
    }

    /// Dimension of the centre.
    pub fn center_dim(&self) -> usize {
        self.algebra.derived_spaces().center.dim()
    }

    /// Tests the universal property against `ρ : A → B`. Preconditions: `ρ(1_A) = ℓ·1_B` and
    /// `ρ` preserves commutators.
    pub fn check_universal_property<T: Target<F>>(
        &self,
        target: &T,
        rho: &LinearMap<F>,
    ) -> Result<UniversalOutcome<F>, AlgebraError> {
        let a = &self.base;
        if rho.src_dim() != a.dim() || rho.dst_dim() != target.target_dim() {
            return Err(AlgebraError::Precondition("map dimensions do not match".into()));
        }
        let ell_one: Vec<F> = target.target_one().into_iter().map(|x| x * F::from_i64(self.ell as i64)).collect();
        if rho.apply(a.unit()) != ell_one {
            return Err(AlgebraError::Precondition("ρ(1_A) differs from ℓ·1_B".into()));
        }
        if let Some((i, j)) = target.lie_hom_violation(a, rho) {
            return Err(AlgebraError::Precondition(format!(
                "ρ does not preserve the commutator of {} and {}",
                a.labels()[i],
                a.labels()[j]
            )));
        }
        let report = symid::check_identity(a, target, rho, self.ell + 1, symid::FamilyOptions::default())
            .map_err(|e| AlgebraError::Precondition(e.to_string()))?;
        if let Some(witness) = report.first_failure {
            return Ok(UniversalOutcome::IdentityFails { witness });
        }
        let images: Vec<Vec<F>> = self
            .words
            .iter()
            .map(|w| w.iter().fold(target.target_one(), |acc, b| target.target_mul(&acc, rho.image(*b))))
            .collect();
        let phi = LinearMap::new(self.dim(), target.target_dim(), images);
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let prod = self.algebra.mul_basis(i, j).to_dense(self.dim());
                if phi.apply(&prod) != target.target_mul(phi.image(i), phi.image(j)) {
                    return Ok(UniversalOutcome::NotMultiplicative { pair: (i, j) });
                }
            }
        }
        Ok(UniversalOutcome::Factors(phi))
    }
}

/// `Σ_k 1 ⊗ … ⊗ a ⊗ … ⊗ 1` (a in slot k) in `A^{⊗ℓ}`, assuming `1_A` is basis vector 0.
fn sym_in<F: Field>(base: &Algebra<F>, ell: usize, a: &[F]) -> Vec<F> {
    let d = base.dim();
    let mut out = vec![F::zero(); d.pow(ell as u32)];
    for k in 0..ell {
        let stride = d.pow((ell - 1 - k) as u32);
        for (j, c) in a.iter().enumerate() {
            if !c.is_zero() {
                out[j * stride] += c.clone();
            }
        }
    }
    out
}

fn is_symmetric<F: Field>(d: usize, ell: usize, v: &[F]) -> bool {
    let total = v.len();
    (0..ell.saturating_sub(1)).all(|k| {
        let s_hi = d.pow((ell - 1 - k) as u32);
        let s_lo = d.pow((ell - 2 - k) as u32);
        (0..total).all(|idx| {
            let hi = (idx / s_hi) % d;
            let lo = (idx / s_lo) % d;
            let swapped = idx - hi * s_hi - lo * s_lo + lo * s_hi + hi * s_lo;
            v[idx] == v[swapped]
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Q;
    use num::integer::binomial;

    #[test]
    fn dimensions_follow_the_binomial_formula() {
        for (a, ell) in [
            (Algebra::<Q>::trunc_poly(2).unwrap(), 2),
            (Algebra::<Q>::trunc_poly(2).unwrap(), 3),
            (Algebra::<Q>::matrix(2).unwrap(), 2),
            (Algebra::<Q>::quaternion(Q::from_i64(1), Q::from_i64(-1)).unwrap(), 3),
        ] {
            let t = SymTensorAlgebra::build(&a, ell).unwrap();
            assert_eq!(t.dim(), binomial(a.dim() + ell - 1, ell));
        }
    }

    #[test]
    fn ts1_is_the_algebra_itself() {
        let a = Algebra::<Q>::quaternion(Q::from_i64(1), Q::from_i64(1)).unwrap();
        let t = SymTensorAlgebra::build(&a, 1).unwrap();
        assert_eq!(t.dim(), 4);
        assert_eq!(t.sym_map(), LinearMap::identity(4));
    }

    #[test]
    fn sym_of_unit_is_ell() {
        let a = Algebra::<Q>::matrix(2).unwrap();
        let t = SymTensorAlgebra::build(&a, 3).unwrap();
        let s = t.sym(a.unit());
        assert_eq!(s, t.algebra().scalar(Q::from_i64(3)));
    }

    #[test]
    fn sym_unrolled_for_e12() {
        let a = Algebra::<Q>::matrix(2).unwrap();
        let t = SymTensorAlgebra::build(&a, 2).unwrap();
        let s = t.sym_ambient(&a.basis(1));
        let mut expected = vec![Q::from_i64(0); 16];
        expected[4] = Q::from_i64(1);
        expected[1] = Q::from_i64(1);
        assert_eq!(s, expected);
    }

    #[test]
    fn sym_is_a_lie_hom() {
        let a = Algebra::<Q>::matrix(2).unwrap();
        let t = SymTensorAlgebra::build(&a, 2).unwrap();
        assert_eq!(t.algebra().lie_hom_violation(&a, &t.sym_map()), None);
    }

    #[test]
    fn centre_of_ts2_mat2() {
        let a = Algebra::<Q>::matrix(2).unwrap();
        assert_eq!(SymTensorAlgebra::build(&a, 2).unwrap().center_dim(), 2);
    }

    #[test]
    fn universal_property_of_the_identity() {
        let a = Algebra::<Q>::trunc_poly(2).unwrap();
        let t = SymTensorAlgebra::build(&a, 2).unwrap();
        match t.check_universal_property(t.algebra(), &t.sym_map()).unwrap() {
            UniversalOutcome::Factors(phi) => assert_eq!(phi, LinearMap::identity(t.dim())),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn universal_property_for_a_character() {
        let a = Algebra::<Q>::trunc_poly(2).unwrap();
        let t = SymTensorAlgebra::build(&a, 2).unwrap();
        let k = Algebra::<Q>::ground();
        let rho = LinearMap::new(2, 1, vec![vec![Q::from_i64(2)], vec![Q::from_i64(0)]]);
        assert!(matches!(t.check_universal_property(&k, &rho).unwrap(), UniversalOutcome::Factors(_)));
    }

    #[test]
    fn universal_property_detects_identity_failure() {
        let a = Algebra::<Q>::matrix(2).unwrap();
        let t = SymTensorAlgebra::build(&a, 1).unwrap();
        let k = Algebra::<Q>::ground();
        // The trace sends 1 to 2, so compare with TS² where the precondition holds.
        let t2 = SymTensorAlgebra::build(&a, 2).unwrap();
        let rho = LinearMap::new(
            4,
            1,
            vec![vec![Q::from_i64(2)], vec![Q::from_i64(0)], vec![Q::from_i64(0)], vec![Q::from_i64(0)]],
        );
        assert!(matches!(t2.check_universal_property(&k, &rho).unwrap(), UniversalOutcome::Factors(_)));
        let bad = LinearMap::new(
            4,
            1,
            vec![vec![Q::from_i64(1)], vec![Q::from_i64(0)], vec![Q::from_i64(0)], vec![Q::from_i64(0)]],
        );
        assert!(matches!(t.check_universal_property(&k, &bad).unwrap(), UniversalOutcome::IdentityFails { .. }));
    }
}
