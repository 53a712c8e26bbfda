//! Row-reduced subspaces of a fixed coordinate space.

use std::collections::{BTreeMap, HashMap};

use super::{Field, LaError, SparseMatrix, SparseVec};

/// A subspace of `F^ambient` stored by its reduced row echelon basis.
///
/// Rows are sorted by pivot, every pivot coefficient is one and every other row vanishes at
/// each pivot column. The basis is therefore canonical: two equal subspaces have identical rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F> {
    ambient: usize,
    rows: Vec<SparseVec<F>>,
    pivot_row: HashMap<u32, usize>,
}

impl<F: Field> Subspace<F> {
    /// The zero subspace.
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivot_row: HashMap::new() }
    }

    /// The whole space.
    pub fn whole(ambient: usize) -> Self {
        let mut s = Self::zero(ambient);
        for i in 0..ambient {
            s.rows.push(SparseVec::unit(i, F::one()));
            s.pivot_row.insert(i as u32, i);
        }
        s
    }

    /// The span of the given vectors.
    pub fn span<I: IntoIterator<Item = SparseVec<F>>>(ambient: usize, vectors: I) -> Self {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.insert(&v);
        }
        s
    }

    /// The span of dense vectors.
    pub fn span_dense(ambient: usize, vectors: &[Vec<F>]) -> Self {
        Self::span(ambient, vectors.iter().map(|v| SparseVec::from_dense(v)))
    }

    /// Dimension of the ambient space.
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Dimension of the subspace.
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Codimension in the ambient space.
    pub fn quotient_dim(&self) -> usize {
        self.ambient - self.rows.len()
    }

    /// The reduced echelon basis.
    pub fn basis(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    /// Dense copies of the basis vectors.
    pub fn basis_dense(&self) -> Vec<Vec<F>> {
        self.rows.iter().map(|r| r.to_dense(self.ambient)).collect()
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.leading().expect("nonzero row").0).collect()
    }

    /// True when column `c` is a pivot.
    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_row.contains_key(&(c as u32))
    }

    /// Columns that are not pivots, in increasing order; their unit vectors span a complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.is_pivot(*c)).collect()
    }

    /// Reduces `v` modulo the subspace; the result vanishes at every pivot column.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut out = v.clone();
        for (c, x) in v.entries() {
            if let Some(&r) = self.pivot_row.get(c) {
                out = out.add_scaled(&-x.clone(), &self.rows[r]);
            }
        }
        out
    }

    /// Exact membership test.
    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Membership test for a dense vector.
    pub fn contains_dense(&self, v: &[F]) -> bool {
        self.contains(&SparseVec::from_dense(v))
    }

    /// Coefficients of `v` with respect to the echelon basis, when `v` lies in the subspace.
    pub fn coordinates(&self, v: &SparseVec<F>) -> Option<Vec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.rows.iter().map(|r| v.get(r.leading().expect("nonzero row").0)).collect())
    }

    /// Adds a vector to the subspace; returns true when the dimension grew.
    pub fn insert(&mut self, v: &SparseVec<F>) -> bool {
        let r = self.reduce(v);
        let (p, _) = match r.leading() {
            None => return false,
            Some(l) => l,
        };
        let r = r.normalized();
        for row in self.rows.iter_mut() {
            let c = row.get(p);
            if !c.is_zero() {
                *row = row.add_scaled(&-c, &r);
            }
        }
        let pos = self.rows.partition_point(|row| row.leading().expect("nonzero row").0 < p);
        self.rows.insert(pos, r);
        self.pivot_row.clear();
        for (i, row) in self.rows.iter().enumerate() {
            self.pivot_row.insert(row.leading().expect("nonzero row").0 as u32, i);
        }
        true
    }

    fn check_same_ambient(&self, other: &Self) -> Result<(), LaError> {
        if self.ambient != other.ambient {
            return Err(LaError::DimensionMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }

    /// The sum `self + other`.
    pub fn sum(&self, other: &Self) -> Result<Self, LaError> {
        self.check_same_ambient(other)?;
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r);
        }
        Ok(s)
    }

    /// The intersection, computed with the Zassenhaus sum-intersection scheme.
    pub fn intersection(&self, other: &Self) -> Result<Self, LaError> {
        self.check_same_ambient(other)?;
        let n = self.ambient;
        let shift = |v: &SparseVec<F>| v.map_indices(|i| i + n as u32);
        let mut big = Subspace::zero(2 * n);
        for r in &self.rows {
            big.insert(&r.add(&shift(r)));
        }
        for r in &other.rows {
            big.insert(r);
        }
        let right: Vec<SparseVec<F>> = big
            .rows
            .iter()
            .filter(|r| r.leading().expect("nonzero row").0 >= n)
            .map(|r| r.map_indices(|i| i - n as u32))
            .collect();
        Ok(Subspace::span(n, right))
    }

    /// True when `self` is contained in `other`.
    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.rows.iter().all(|r| other.contains(r))
    }
}

/// Reduces the row space of a sparse matrix. Pivots are chosen deterministically: the smallest
/// available pivot column, eliminating with the first row that reaches it.
pub fn row_reduce<F: Field>(m: &SparseMatrix<F>) -> Subspace<F> {
    Subspace::span(m.cols(), m.row_vectors())
}

/// An incrementally grown semi-echelon basis for large sparse problems.
///
/// Rows are never modified after insertion; each row has leading coefficient one at a pivot no
/// other row uses, and only entries to the right of it. Reduction scans columns from left to right.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    ambient: usize,
    rows: Vec<SparseVec<F>>,
    pivot_row: HashMap<u32, u32>,
}

impl<F: Field> Echelon<F> {
    /// An empty basis in `F^ambient`.
    pub fn new(ambient: usize) -> Self {
        Echelon { ambient, rows: Vec::new(), pivot_row: HashMap::new() }
    }

    /// Dimension of the ambient space.
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Current rank.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Stored rows in insertion order.
    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    /// True when column `c` is a pivot.
    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_row.contains_key(&(c as u32))
    }

    /// Fully reduces `v`; the remainder is supported on non-pivot columns.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        self.reduce_from(v, 0)
    }

    /// Reduces `v` using only rows with index at least `first_row`.
    pub fn reduce_from(&self, v: &SparseVec<F>, first_row: usize) -> SparseVec<F> {
        let mut acc: BTreeMap<u32, F> = v.entries().iter().cloned().collect();
        let mut out = Vec::new();
        while let Some((c, x)) = acc.pop_first() {
            match self.pivot_row.get(&c) {
                Some(&r) if r as usize >= first_row => {
                    for (j, y) in &self.rows[r as usize].entries()[1..] {
                        let e = acc.entry(*j).or_insert_with(F::zero);
                        e.sub_mul(&x, y);
                        if e.is_zero() {
                            acc.remove(j);
                        }
                    }
                }
                _ => out.push((c, x)),
            }
        }
        SparseVec::from_sorted(out)
    }

    /// Inserts a vector that is already reduced against rows `0..first_row`, finishing the
    /// reduction against later rows. Returns the index of the new row when the rank grew.
    pub fn insert_prereduced(&mut self, v: &SparseVec<F>, first_row: usize) -> Option<usize> {
        let r = self.reduce_from(v, first_row);
        self.push_reduced(r)
    }

    /// Inserts an arbitrary vector. Returns the index of the new row when the rank grew.
    pub fn insert(&mut self, v: &SparseVec<F>) -> Option<usize> {
        let r = self.reduce(v);
        self.push_reduced(r)
    }

    fn push_reduced(&mut self, r: SparseVec<F>) -> Option<usize> {
        let (p, _) = r.leading()?;
        let r = r.normalized();
        self.pivot_row.insert(p as u32, self.rows.len() as u32);
        self.rows.push(r);
        Some(self.rows.len() - 1)
    }

    /// Converts to the canonical reduced form.
    pub fn to_subspace(&self) -> Subspace<F> {
        Subspace::span(self.ambient, self.rows.iter().cloned())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{Fa, Q};

    fn v(xs: &[i64]) -> SparseVec<Q> {
        SparseVec::from_dense(&xs.iter().map(|x| Q::from_i64(*x)).collect::<Vec<_>>())
    }

    #[test]
    fn identity_has_full_rank() {
        let s = Subspace::span(2, vec![v(&[1, 0]), v(&[0, 1])]);
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn proportional_rows_have_rank_one() {
        let s = Subspace::span(2, vec![v(&[1, 2]), v(&[2, 4])]);
        assert_eq!(s.dim(), 1);
    }

    #[test]
    fn all_ones_matrix_has_rank_one() {
        let m = SparseMatrix::from_dense_rows(3, &vec![vec![Q::from_i64(1); 3]; 3]);
        let s = row_reduce(&m);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis()[0], v(&[1, 1, 1]));
    }

    #[test]
    fn axes_sum_and_intersection() {
        let x = Subspace::span(2, vec![v(&[1, 0])]);
        let y = Subspace::span(2, vec![v(&[0, 1])]);
        assert_eq!(x.sum(&y).unwrap().dim(), 2);
        assert_eq!(x.intersection(&y).unwrap().dim(), 0);
        assert_eq!(x.intersection(&x).unwrap(), x);
    }

    #[test]
    fn planes_meet_in_a_line() {
        let u = Subspace::span(3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let w = Subspace::span(3, vec![v(&[1, 0, -1])]);
        let i = u.intersection(&w).unwrap();
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&v(&[1, 0, -1])));
    }

    #[test]
    fn mismatched_ambients_error() {
        let a = Subspace::<Q>::zero(2);
        let b = Subspace::<Q>::zero(3);
        assert!(a.sum(&b).is_err());
        assert!(a.intersection(&b).is_err());
    }

    #[test]
    fn echelon_matches_subspace_rank() {
        let rows = vec![v(&[0, 1, 2, 3]), v(&[1, 1, 1, 1]), v(&[1, 2, 3, 4]), v(&[2, 0, -2, -4])];
        let mut e = Echelon::new(4);
        for r in &rows {
            e.insert(r);
        }
        let s = Subspace::span(4, rows.clone());
        assert_eq!(e.rank(), s.dim());
        assert_eq!(e.to_subspace(), s);
        for r in &rows {
            assert!(e.reduce(r).is_zero());
        }
    }

    #[test]
    fn prime_field_rank_matches_rational_rank() {
        let rows = [[3i64, 1, 4], [1, 5, 9], [2, 6, 5]];
        let sq = Subspace::span_dense(
            3,
            &rows.iter().map(|r| r.iter().map(|x| Q::from_i64(*x)).collect()).collect::<Vec<_>>(),
        );
        let sp = Subspace::span_dense(
            3,
            &rows.iter().map(|r| r.iter().map(|x| Fa::from_i64(*x)).collect()).collect::<Vec<_>>(),
        );
        assert_eq!(sq.dim(), sp.dim());
    }
}
