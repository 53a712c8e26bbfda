//! Finite-dimensional unital associative algebras given by structure constants.
//!
//! Constructors always place `1_A` at basis index 0. Elements are dense coordinate vectors.

mod linmap;
mod ts;

pub use linmap::{LinearMap, MatrixTarget, Target};
pub use ts::{SymTensorAlgebra, UniversalOutcome};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{axpy, is_zero_vec, kernel, Coordinatizer, Field, LaError, Matrix, SparseVec, Subspace};

/// Upper limit on the dimension of constructed tensor powers.
pub const TENSOR_POWER_GUARD: usize = 1_000_000;

/// Errors raised while building or manipulating algebras.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("associativity fails on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit law fails for basis element {0}")]
    UnitLaw(usize),
    #[error("malformed algebra data: {0}")]
    Malformed(String),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("tensor power of dimension {0} exceeds the guard of {TENSOR_POWER_GUARD}")]
    TooLarge(usize),
    #[error("linear algebra error: {0}")]
    La(#[from] LaError),
    #[error("json error: {0}")]
    Json(String),
    #[error("{0}")]
    Precondition(String),
}

/// A unital associative algebra with basis `b_0, …, b_{n−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra<F> {
    dim: usize,
    labels: Vec<String>,
    table: Vec<SparseVec<F>>,
    unit: Vec<F>,
}

/// The commutator space, the ideal it generates, and the centre of an algebra.
#[derive(Clone, Debug)]
pub struct DerivedSpaces<F> {
    pub commutator: Subspace<F>,
    pub commutator_ideal: Subspace<F>,
    pub center: Subspace<F>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    dim: usize,
    labels: Vec<String>,
    unit: Vec<serde_json::Value>,
    mul: Vec<(usize, usize, usize, serde_json::Value)>,
}

fn json_scalar<F: Field>(v: &serde_json::Value) -> Result<F, AlgebraError> {
    match v {
        serde_json::Value::String(s) => Ok(F::parse_exact(s)?),
        serde_json::Value::Number(n) => Ok(F::parse_exact(&n.to_string())?),
        other => Err(AlgebraError::Json(format!("expected a scalar, found {other}"))),
    }
}

impl<F: Field> Algebra<F> {
    /// Builds an algebra from its multiplication table (`table[i·dim + j] = b_i b_j`) and unit,
    /// verifying associativity on all basis triples and the unit law on all basis elements.
    pub fn new(labels: Vec<String>, table: Vec<SparseVec<F>>, unit: Vec<F>) -> Result<Self, AlgebraError> {
        let a = Self::new_unchecked(labels, table, unit)?;
        a.verify()?;
        Ok(a)
    }

    fn new_unchecked(labels: Vec<String>, table: Vec<SparseVec<F>>, unit: Vec<F>) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        if table.len() != dim * dim || unit.len() != dim {
            return Err(AlgebraError::Malformed(format!(
                "dimension {dim} with {} table entries and unit of length {}",
                table.len(),
                unit.len()
            )));
        }
        if table.iter().any(|v| v.max_index().is_some_and(|m| m >= dim)) {
            return Err(AlgebraError::Malformed("product coordinate out of range".into()));
        }
        Ok(Algebra { dim, labels, table, unit })
    }

    /// Checks associativity and the unit law.
    pub fn verify(&self) -> Result<(), AlgebraError> {
        let n = self.dim;
        for i in 0..n {
            let e = self.basis(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(AlgebraError::UnitLaw(i));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.table[i * n + j].to_dense(n);
                for k in 0..n {
                    let left = self.mul(&ij, &self.basis(k));
                    let jk = self.table[j * n + k].to_dense(n);
                    let right = self.mul(&self.basis(i), &jk);
                    if left != right {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// Builds an algebra from a faithful matrix realization of its basis. The first matrix must
    /// be the identity.
    pub fn from_matrix_realization(labels: Vec<String>, mats: &[Matrix<F>]) -> Result<Self, AlgebraError> {
        let n = mats.len();
        let flat: Vec<Vec<F>> = mats.iter().map(|m| m.flatten()).collect();
        let size = flat.first().map_or(0, |v| v.len());
        let coord =
            Coordinatizer::new(size, &flat).ok_or_else(|| AlgebraError::Malformed("dependent matrix basis".into()))?;
        let mut table = Vec::with_capacity(n * n);
        for a in mats {
            for b in mats {
                let c = coord
                    .coordinates(&a.mul(b).flatten())
                    .ok_or_else(|| AlgebraError::Malformed("span not closed".into()))?;
                table.push(SparseVec::from_dense(&c));
            }
        }
        let mut unit = vec![F::zero(); n];
        unit[0] = F::one();
        Self::new(labels, table, unit)
    }

    /// The full matrix algebra `Mat_d(k)` with basis `1, E_ij (i ≠ j), H_i = E_ii − E_{i+1,i+1}`.
    pub fn matrix(d: usize) -> Result<Self, AlgebraError> {
        if d == 0 {
            return Err(AlgebraError::BadParameter("matrix size must be at least 1".into()));
        }
        let sep = if d > 9 { "_" } else { "" };
        let mut labels = vec!["1".to_string()];
        let mut mats = vec![Matrix::identity(d)];
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    let mut m = Matrix::zeros(d, d);
                    m.set(i, j, F::one());
                    mats.push(m);
                    labels.push(format!("E{}{sep}{}", i + 1, j + 1));
                }
            }
        }
        for i in 0..d.saturating_sub(1) {
            let mut m = Matrix::zeros(d, d);
            m.set(i, i, F::one());
            m.set(i + 1, i + 1, -F::one());
            mats.push(m);
            labels.push(format!("H{}", i + 1));
        }
        Self::from_matrix_realization(labels, &mats)
    }

    /// The generalized quaternion algebra with basis `1, i, j, k`, `i² = a`, `j² = b`,
    /// `ij = −ji = k`.
    pub fn quaternion(a: F, b: F) -> Result<Self, AlgebraError> {
        if a.is_zero() || b.is_zero() {
            return Err(AlgebraError::BadParameter("quaternion parameters must be nonzero".into()));
        }
        let labels: Vec<String> = ["1", "i", "j", "k"].iter().map(|s| s.to_string()).collect();
        let one = F::one();
        let ab = a.clone() * b.clone();
        // Products of the imaginary units as (left, right, target, coefficient).
        let rules: Vec<(usize, usize, usize, F)> = vec![
            (1, 1, 0, a.clone()),
            (2, 2, 0, b.clone()),
            (3, 3, 0, -ab),
            (1, 2, 3, one.clone()),
            (2, 1, 3, -one.clone()),
            (1, 3, 2, a.clone()),
            (3, 1, 2, -a),
            (2, 3, 1, -b.clone()),
            (3, 2, 1, b),
        ];
        let mut table = vec![SparseVec::zero(); 16];
        for x in 0..4 {
            table[x] = SparseVec::unit(x, one.clone());
            table[x * 4] = SparseVec::unit(x, one.clone());
        }
        for (x, y, z, c) in rules {
            table[x * 4 + y] = SparseVec::unit(z, c);
        }
        let mut unit = vec![F::zero(); 4];
        unit[0] = F::one();
        Self::new(labels, table, unit)
    }

    /// The truncated polynomial algebra `k[x]/(x^m)`.
    pub fn trunc_poly(m: usize) -> Result<Self, AlgebraError> {
        if m == 0 {
            return Err(AlgebraError::BadParameter("truncation degree must be at least 1".into()));
        }
        let labels = (0..m)
            .map(|p| match p {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{p}"),
            })
            .collect();
        let mut table = Vec::with_capacity(m * m);
        for p in 0..m {
            for q in 0..m {
                table.push(if p + q < m { SparseVec::unit(p + q, F::one()) } else { SparseVec::zero() });
            }
        }
        let mut unit = vec![F::zero(); m];
        unit[0] = F::one();
        Self::new(labels, table, unit)
    }

    /// The ground field `k` as a one-dimensional algebra.
    pub fn ground() -> Self {
        Self::trunc_poly(1).expect("ground field")
    }

    /// The opposite algebra: same basis, reversed multiplication.
    pub fn opposite(&self) -> Self {
        let n = self.dim;
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(self.table[j * n + i].clone());
            }
        }
        Algebra { dim: n, labels: self.labels.clone(), table, unit: self.unit.clone() }
    }

    /// The tensor product algebra `self ⊗ other` with basis `b_i ⊗ c_j` at index `i·dim(other)+j`.
    pub fn tensor_product(&self, other: &Self) -> Result<Self, AlgebraError> {
        let (n, m) = (self.dim, other.dim);
        let dim = n * m;
        if dim > TENSOR_POWER_GUARD {
            return Err(AlgebraError::TooLarge(dim));
        }
        let mut labels = Vec::with_capacity(dim);
        for a in &self.labels {
            for b in &other.labels {
                labels.push(format!("{a}⊗{b}"));
            }
        }
        let mut table = Vec::with_capacity(dim * dim);
        for i1 in 0..n {
            for j1 in 0..m {
                for i2 in 0..n {
                    for j2 in 0..m {
                        let x = &self.table[i1 * n + i2];
                        let y = &other.table[j1 * m + j2];
                        let mut e = Vec::with_capacity(x.nnz() * y.nnz());
                        for (p, a) in x.entries() {
                            for (q, b) in y.entries() {
                                e.push((*p * m as u32 + *q, a.clone() * b.clone()));
                            }
                        }
                        table.push(SparseVec::from_unsorted(e));
                    }
                }
            }
        }
        let mut unit = vec![F::zero(); dim];
        for (i, a) in self.unit.iter().enumerate() {
            for (j, b) in other.unit.iter().enumerate() {
                unit[i * m + j] = a.clone() * b.clone();
            }
        }
        Ok(Algebra { dim, labels, table, unit })
    }

    /// The tensor power `A^{⊗ℓ}` with coordinate-wise product.
    pub fn tensor_power(&self, ell: usize) -> Result<Self, AlgebraError> {
        if ell == 0 {
            return Err(AlgebraError::BadParameter("tensor power exponent must be at least 1".into()));
        }
        let total = (self.dim as u128).checked_pow(ell as u32).unwrap_or(u128::MAX);
        if total > TENSOR_POWER_GUARD as u128 {
            return Err(AlgebraError::TooLarge(usize::try_from(total).unwrap_or(usize::MAX)));
        }
        let mut acc = self.clone();
        for _ in 1..ell {
            acc = acc.tensor_product(self)?;
        }
        Ok(acc)
    }

    /// Parses the JSON exchange format
    /// `{"dim": n, "labels": [...], "unit": [...], "mul": [[i, j, k, "num/den"], ...]}`.
    /// If the unit is not the first basis vector the basis is changed so that it is.
    pub fn from_json(s: &str) -> Result<Self, AlgebraError> {
        let raw: AlgebraJson = serde_json::from_str(s).map_err(|e| AlgebraError::Json(e.to_string()))?;
        let n = raw.dim;
        if raw.labels.len() != n || raw.unit.len() != n {
            return Err(AlgebraError::Malformed("labels/unit length differ from dim".into()));
        }
        let unit: Vec<F> = raw.unit.iter().map(json_scalar).collect::<Result<_, _>>()?;
        let mut entries: Vec<Vec<(u32, F)>> = vec![Vec::new(); n * n];
        for (i, j, k, c) in &raw.mul {
            if *i >= n || *j >= n || *k >= n {
                return Err(AlgebraError::Malformed(format!("index out of range in ({i}, {j}, {k})")));
            }
            let c: F = json_scalar(c)?;
            if entries[i * n + j].iter().any(|e| e.0 == *k as u32) {
                return Err(AlgebraError::Malformed(format!("duplicate entry ({i}, {j}, {k})")));
            }
            entries[i * n + j].push((*k as u32, c));
        }
        let table = entries.into_iter().map(SparseVec::from_unsorted).collect();
        let a = Self::new(raw.labels, table, unit)?;
        a.rebased_at_unit()
    }

    /// Serializes to the JSON exchange format (canonical: entries sorted, scalars as strings).
    pub fn to_json(&self) -> String {
        let n = self.dim;
        let mut mul = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.table[i * n + j].entries() {
                    mul.push((i, j, *k as usize, serde_json::Value::String(c.to_exact_string())));
                }
            }
        }
        let raw = AlgebraJson {
            dim: n,
            labels: self.labels.clone(),
            unit: self.unit.iter().map(|c| serde_json::Value::String(c.to_exact_string())).collect(),
            mul,
        };
        serde_json::to_string(&raw).expect("serializable")
    }

    /// Changes basis so that the unit becomes basis vector 0 (identity if it already is).
    pub fn rebased_at_unit(self) -> Result<Self, AlgebraError> {
        Ok(self.rebased_with_map()?.0)
    }

    /// Like [`Algebra::rebased_at_unit`], also returning the coordinate change old → new.
    pub fn rebased_with_map(self) -> Result<(Self, LinearMap<F>), AlgebraError> {
        let n = self.dim;
        if n == 0 || self.unit == self.basis(0) {
            return Ok((self, LinearMap::identity(n)));
        }
        let p = self
            .unit
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| AlgebraError::Malformed("zero unit in a nonzero algebra".into()))?;
        let mut new_basis = vec![self.unit.clone()];
        let mut labels = vec![if self.unit == self.basis(p) { self.labels[p].clone() } else { "1".to_string() }];
        for i in 0..n {
            if i != p {
                new_basis.push(self.basis(i));
                labels.push(self.labels[i].clone());
            }
        }
        let coord = Coordinatizer::new(n, &new_basis).expect("change of basis is invertible");
        let mut table = Vec::with_capacity(n * n);
        for x in &new_basis {
            for y in &new_basis {
                let c = coord.coordinates(&self.mul(x, y)).expect("closed");
                table.push(SparseVec::from_dense(&c));
            }
        }
        let mut unit = vec![F::zero(); n];
        unit[0] = F::one();
        let change = LinearMap::from_fn(n, n, |i| coord.coordinates(&self.basis(i)).expect("basis"));
        Ok((Self::new(labels, table, unit)?, change))
    }

    /// Dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Basis labels.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Coordinates of the unit.
    pub fn unit(&self) -> &[F] {
        &self.unit
    }

    /// The zero element.
    pub fn zero(&self) -> Vec<F> {
        vec![F::zero(); self.dim]
    }

    /// Basis vector `b_i`.
    pub fn basis(&self, i: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim];
        v[i] = F::one();
        v
    }

    /// Product of basis elements `b_i b_j`.
    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec<F> {
        &self.table[i * self.dim + j]
    }

    /// Product of two elements.
    pub fn mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        let n = self.dim;
        let mut out = vec![F::zero(); n];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a.clone() * b.clone();
                for (k, c) in self.table[i * n + j].entries() {
                    out[*k as usize].add_mul(&ab, c);
                }
            }
        }
        out
    }

    /// Commutator `xy − yx`.
    pub fn commutator(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = self.mul(x, y);
        axpy(&mut out, &-F::one(), &self.mul(y, x));
        out
    }

    /// Power `x^k` with `x^0 = 1`.
    pub fn pow(&self, x: &[F], k: usize) -> Vec<F> {
        let mut acc = self.unit.clone();
        for _ in 0..k {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Scalar multiple of the unit.
    pub fn scalar(&self, c: F) -> Vec<F> {
        self.unit.iter().map(|u| u.clone() * c.clone()).collect()
    }

    /// True when all basis elements commute.
    pub fn is_commutative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| self.table[i * n + j] == self.table[j * n + i]))
    }

    /// Matrix of left multiplication by `x`.
    pub fn left_mult_matrix(&self, x: &[F]) -> Matrix<F> {
        let cols: Vec<Vec<F>> = (0..self.dim).map(|j| self.mul(x, &self.basis(j))).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// The commutator space `[A, A]`, the ideal it generates, and the centre `Z(A)`.
    pub fn derived_spaces(&self) -> DerivedSpaces<F> {
        let n = self.dim;
        let mut comm = Subspace::zero(n);
        for i in 0..n {
            for j in (i + 1)..n {
                comm.insert(&SparseVec::from_dense(&self.commutator(&self.basis(i), &self.basis(j))));
            }
        }
        let commutator_ideal = self.ideal_generated(&comm);
        let images: Vec<Vec<F>> = (0..n)
            .map(|i| {
                let x = self.basis(i);
                (0..n).flat_map(|j| self.commutator(&x, &self.basis(j))).collect()
            })
            .collect();
        let center = Subspace::span_dense(n, &kernel(&images, n * n));
        DerivedSpaces { commutator: comm, commutator_ideal, center }
    }

    /// The two-sided ideal generated by a subspace: saturation under left and right
    /// multiplication by basis elements.
    pub fn ideal_generated(&self, gens: &Subspace<F>) -> Subspace<F> {
        let n = self.dim;
        let mut ideal = gens.clone();
        let mut frontier: Vec<Vec<F>> = gens.basis_dense();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for v in &frontier {
                for i in 0..n {
                    let b = self.basis(i);
                    for w in [self.mul(&b, v), self.mul(v, &b)] {
                        if ideal.insert(&SparseVec::from_dense(&w)) {
                            next.push(w);
                        }
                    }
                }
            }
            frontier = next;
        }
        ideal
    }

    /// The unital subalgebra generated by `gens`.
    pub fn subalgebra_generated(&self, gens: &[Vec<F>]) -> Subspace<F> {
        let mut sub = Subspace::zero(self.dim);
        let mut frontier = Vec::new();
        for v in std::iter::once(&self.unit).chain(gens.iter()) {
            if sub.insert(&SparseVec::from_dense(v)) {
                frontier.push(v.clone());
            }
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for v in &frontier {
                for g in gens {
                    let w = self.mul(v, g);
                    if sub.insert(&SparseVec::from_dense(&w)) {
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        sub
    }

    /// The quotient by a two-sided ideal, with basis the images of the non-pivot basis
    /// vectors of the ideal's echelon form (rebased so the unit comes first), together with
    /// the projection map.
    pub fn quotient(&self, ideal: &Subspace<F>) -> Result<(Self, LinearMap<F>), AlgebraError> {
        let n = self.dim;
        let keep = ideal.non_pivots();
        let m = keep.len();
        let project = |v: &[F]| -> Vec<F> {
            let r = ideal.reduce(&SparseVec::from_dense(v));
            keep.iter().map(|c| r.get(*c)).collect()
        };
        let images: Vec<Vec<F>> = (0..n).map(|i| project(&self.basis(i))).collect();
        let proj = LinearMap::new(n, m, images);
        let mut table = Vec::with_capacity(m * m);
        for &a in &keep {
            for &b in &keep {
                table.push(SparseVec::from_dense(&project(&self.table[a * n + b].to_dense(n))));
            }
        }
        let labels = keep.iter().map(|c| self.labels[*c].clone()).collect();
        let unit = project(&self.unit);
        let (q, change) = Self::new(labels, table, unit)?.rebased_with_map()?;
        Ok((q, proj.then(&change)))
    }

    /// Converts the scalars with `f`, keeping the structure.
    pub fn map_scalars<G: Field>(&self, f: impl Fn(&F) -> Result<G, LaError>) -> Result<Algebra<G>, AlgebraError> {
        let table = self
            .table
            .iter()
            .map(|v| {
                Ok(SparseVec::from_unsorted(
                    v.entries().iter().map(|(i, c)| Ok((*i, f(c)?))).collect::<Result<Vec<_>, LaError>>()?,
                ))
            })
            .collect::<Result<Vec<_>, LaError>>()?;
        let unit = self.unit.iter().map(&f).collect::<Result<Vec<_>, _>>()?;
        Algebra::new(self.labels.clone(), table, unit)
    }

    /// True when `x` is zero.
    pub fn is_zero(&self, x: &[F]) -> bool {
        is_zero_vec(x)
    }

    /// Renders an element as a linear combination of labels.
    pub fn format(&self, x: &[F]) -> String {
        format_combination(x, &self.labels)
    }
}

/// Renders `Σ x_i · label_i`, omitting zero terms.
pub fn format_combination<F: Field>(x: &[F], labels: &[String]) -> String {
    let terms: Vec<String> = x
        .iter()
        .zip(labels)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, l)| if c.is_one() { l.clone() } else { format!("({c})·{l}") })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// Parses compact algebra specs: `matrix:d`, `quaternion:a,b`, `truncpoly:m`, `ground`,
/// with an optional `op:` prefix for the opposite algebra.
pub fn parse_algebra_spec<F: Field>(spec: &str) -> Result<Algebra<F>, AlgebraError> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("op:") {
        return Ok(parse_algebra_spec::<F>(rest)?.opposite());
    }
    let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let bad = || AlgebraError::BadParameter(format!("cannot parse algebra spec `{spec}`"));
    match kind {
        "matrix" => Algebra::matrix(arg.parse().map_err(|_| bad())?),
        "truncpoly" => Algebra::trunc_poly(arg.parse().map_err(|_| bad())?),
        "ground" | "k" => Ok(Algebra::ground()),
        "quaternion" => {
            let (a, b) = arg.split_once(',').ok_or_else(bad)?;
            Algebra::quaternion(F::parse_exact(a)?, F::parse_exact(b)?)
        }
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Q;

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    #[test]
    fn matrix_two_has_unit_first() {
        let a = Algebra::<Q>::matrix(2).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.unit(), &[q(1), q(0), q(0), q(0)]);
        assert_eq!(a.labels(), &["1", "E12", "E21", "H1"]);
    }

    #[test]
    fn matrix_products_match_matrix_units() {
        let a = Algebra::<Q>::matrix(2).unwrap();
        // E12·E21 = E11 = (1 + H1)/2
        let p = a.mul(&a.basis(1), &a.basis(2));
        let half = Q::new(1.into(), 2.into());
        assert_eq!(p, vec![half.clone(), q(0), q(0), half]);
    }

    #[test]
    fn quaternion_relations() {
        let (x, y) = (q(2), q(3));
        let h = Algebra::quaternion(x.clone(), y.clone()).unwrap();
        let (i, j, k) = (h.basis(1), h.basis(2), h.basis(3));
        assert_eq!(h.mul(&i, &i), h.scalar(x.clone()));
        assert_eq!(h.mul(&j, &j), h.scalar(y.clone()));
        assert_eq!(h.mul(&k, &k), h.scalar(-(x.clone() * y.clone())));
        assert_eq!(h.mul(&k, &i), h.mul(&j, &h.scalar(-x.clone())));
        assert_eq!(h.mul(&j, &k), h.mul(&i, &h.scalar(-y)));
        assert!(Algebra::<Q>::quaternion(q(0), q(1)).is_err());
    }

    #[test]
    fn opposite_is_an_involution() {
        let h = Algebra::<Q>::quaternion(q(1), q(-1)).unwrap();
        assert_eq!(h.opposite().opposite(), h);
        assert_ne!(h.opposite(), h);
    }

    #[test]
    fn derived_spaces_of_mat2() {
        let d = Algebra::<Q>::matrix(2).unwrap().derived_spaces();
        assert_eq!(d.commutator.dim(), 3);
        assert_eq!(d.center.dim(), 1);
        assert_eq!(d.commutator_ideal.dim(), 4);
    }

    #[test]
    fn commutative_algebra_has_trivial_commutator() {
        let a = Algebra::<Q>::trunc_poly(3).unwrap();
        assert!(a.is_commutative());
        assert_eq!(a.derived_spaces().commutator.dim(), 0);
    }

    #[test]
    fn matd_splits_as_centre_plus_commutator() {
        for d in 1..=3 {
            let a = Algebra::<Q>::matrix(d).unwrap();
            let s = a.derived_spaces();
            assert_eq!(s.center.dim() + s.commutator.dim(), a.dim());
            assert_eq!(s.center.intersection(&s.commutator).unwrap().dim(), 0);
        }
    }

    #[test]
    fn tensor_power_small_cases() {
        let a = Algebra::<Q>::trunc_poly(2).unwrap();
        assert_eq!(a.tensor_power(1).unwrap(), a);
        let t = a.tensor_power(2).unwrap();
        assert_eq!(t.dim(), 4);
        assert!(t.is_commutative());
        let m = Algebra::<Q>::matrix(2).unwrap();
        let mm = m.tensor_power(2).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let left = mm.basis(i * 4);
                let right = mm.basis(j);
                assert_eq!(mm.mul(&left, &right), mm.basis(i * 4 + j));
            }
        }
    }

    #[test]
    fn tensor_power_guard() {
        let a = Algebra::<Q>::matrix(4).unwrap();
        assert!(matches!(a.tensor_power(6), Err(AlgebraError::TooLarge(_))));
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let h = Algebra::<Q>::quaternion(q(2), Q::new(3.into(), 5.into())).unwrap();
        let s = h.to_json();
        let back = Algebra::<Q>::from_json(&s).unwrap();
        assert_eq!(back, h);
        assert_eq!(back.to_json(), s);
    }

    #[test]
    fn json_rejects_nonassociative_data() {
        let s = r#"{"dim":2,"labels":["1","x"],"unit":["1","0"],
            "mul":[[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"],[1,1,0,"1"],[1,1,1,"1"]]}"#;
        assert!(Algebra::<Q>::from_json(s).is_ok());
        let bad = r#"{"dim":3,"labels":["1","x","y"],"unit":["1","0","0"],
            "mul":[[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"],[0,2,2,"1"],[2,0,2,"1"],[1,1,2,"1"],[1,2,1,"1"],[2,1,1,"1"]]}"#;
        assert!(matches!(Algebra::<Q>::from_json(bad), Err(AlgebraError::NotAssociative(..))));
    }

    #[test]
    fn json_rebases_a_non_standard_unit() {
        // k × k with basis e1, e2 and unit e1 + e2.
        let s = r#"{"dim":2,"labels":["e1","e2"],"unit":["1","1"],
            "mul":[[0,0,0,"1"],[1,1,1,"1"]]}"#;
        let a = Algebra::<Q>::from_json(s).unwrap();
        assert_eq!(a.unit(), &[q(1), q(0)]);
        assert_eq!(a.labels()[0], "1");
        assert!(a.is_commutative());
        assert_eq!(a.derived_spaces().center.dim(), 2);
    }

    #[test]
    fn quotient_by_commutator_ideal_of_truncpoly_is_itself() {
        let a = Algebra::<Q>::trunc_poly(3).unwrap();
        let (qa, _) = a.quotient(&Subspace::zero(3)).unwrap();
        assert_eq!(qa, a);
    }

    #[test]
    fn spec_strings_parse() {
        assert_eq!(parse_algebra_spec::<Q>("matrix:2").unwrap().dim(), 4);
        assert_eq!(parse_algebra_spec::<Q>("quaternion:1,-1").unwrap().dim(), 4);
        assert_eq!(parse_algebra_spec::<Q>("truncpoly:3").unwrap().dim(), 3);
        assert!(parse_algebra_spec::<Q>("banana:3").is_err());
    }
}
