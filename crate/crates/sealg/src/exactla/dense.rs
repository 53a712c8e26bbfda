//! Small dense matrices and linear-system helpers built on the sparse kernel.

use super::{Field, SparseVec, Subspace};

/// A dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    /// The zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    /// The identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    /// Sets entry `(i, j)`.
    pub fn set(&mut self, i: usize, j: usize, x: F) {
        self.data[i * self.cols + j] = x;
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Row-major entries.
    pub fn data(&self) -> &[F] {
        &self.data
    }

    /// True when every entry vanishes.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Matrix product.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j].add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        let mut out = vec![F::zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    o.add_mul(self.get(i, j), x);
                }
            }
        }
        out
    }

    /// `self + c · o`.
    pub fn add_scaled(&self, c: &F, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&o.data) {
            a.add_mul(c, b);
        }
        out
    }

    /// `c · self`.
    pub fn scaled(&self, c: &F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    /// Commutator `self·o − o·self`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).add_scaled(&-F::one(), &o.mul(self))
    }

    /// Rank.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<F>> =
            (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect();
        Subspace::span_dense(self.cols, &rows).dim()
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let cols: Vec<Vec<F>> = (0..n).map(|j| self.column(j)).collect();
        let coord = Coordinatizer::new(n, &cols)?;
        if coord.len() != n {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            let mut e = vec![F::zero(); n];
            e[i] = F::one();
            let c = coord.coordinates(&e)?;
            for (j, x) in c.into_iter().enumerate() {
                inv.set(j, i, x);
            }
        }
        Some(inv)
    }

    /// Flattens into a vector of length rows·cols.
    pub fn flatten(&self) -> Vec<F> {
        self.data.clone()
    }
}

/// Expresses vectors in terms of a fixed linearly independent family.
#[derive(Clone, Debug)]
pub struct Coordinatizer<F> {
    dim: usize,
    count: usize,
    augmented: Subspace<F>,
}

impl<F: Field> Coordinatizer<F> {
    /// Prepares coordinates for `family`; returns `None` when the family is dependent.
    pub fn new(dim: usize, family: &[Vec<F>]) -> Option<Self> {
        let count = family.len();
        let rows = family.iter().enumerate().map(|(i, v)| {
            let mut e: Vec<(u32, F)> =
                v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j as u32, x.clone())).collect();
            e.push(((dim + i) as u32, F::one()));
            SparseVec::from_sorted(e)
        });
        let augmented = Subspace::span(dim + count, rows);
        let independent = augmented.basis().iter().all(|r| (r.leading().expect("nonzero row").0) < dim);
        if !independent {
            return None;
        }
        Some(Coordinatizer { dim, count, augmented })
    }

    /// Size of the family.
    pub fn len(&self) -> usize {
        self.count
    }

    /// True for the empty family.
    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Coordinates of `v` in the family, or `None` when `v` is outside its span.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let r = self.augmented.reduce(&SparseVec::from_dense(v));
        if r.leading().is_some_and(|(c, _)| c < self.dim) {
            return None;
        }
        let mut out = vec![F::zero(); self.count];
        for (i, x) in r.entries() {
            out[*i as usize - self.dim] = -x.clone();
        }
        Some(out)
    }
}

/// Basis of the kernel of the linear map sending basis vector `i` to `images[i]`.
pub fn kernel<F: Field>(images: &[Vec<F>], target_dim: usize) -> Vec<Vec<F>> {
    let n = images.len();
    let rows = images.iter().enumerate().map(|(i, v)| {
        let mut e: Vec<(u32, F)> =
            v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j as u32, x.clone())).collect();
        e.push(((target_dim + i) as u32, F::one()));
        SparseVec::from_sorted(e)
    });
    let s = Subspace::span(target_dim + n, rows);
    s.basis()
        .iter()
        .filter(|r| r.leading().expect("nonzero row").0 >= target_dim)
        .map(|r| {
            let mut out = vec![F::zero(); n];
            for (i, x) in r.entries() {
                out[*i as usize - target_dim] = x.clone();
            }
            out
        })
        .collect()
}

/// Adds `c · w` into the dense vector `v`.
pub fn axpy<F: Field>(v: &mut [F], c: &F, w: &[F]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in v.iter_mut().zip(w) {
        if !b.is_zero() {
            a.add_mul(c, b);
        }
    }
}

/// True when every coordinate vanishes.
pub fn is_zero_vec<F: Field>(v: &[F]) -> bool {
    v.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Q;

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    #[test]
    fn inverse_of_two_by_two() {
        let m = Matrix::from_columns(2, &[vec![q(1), q(3)], vec![q(2), q(4)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        let s = Matrix::from_columns(2, &[vec![q(1), q(2)], vec![q(2), q(4)]]);
        assert!(s.inverse().is_none());
    }

    #[test]
    fn coordinates_in_family() {
        let fam = vec![vec![q(1), q(1), q(0)], vec![q(0), q(1), q(1)]];
        let c = Coordinatizer::new(3, &fam).unwrap();
        assert_eq!(c.coordinates(&[q(2), q(5), q(3)]), Some(vec![q(2), q(3)]));
        assert_eq!(c.coordinates(&[q(1), q(0), q(0)]), None);
        assert!(Coordinatizer::new(3, &[fam[0].clone(), fam[0].clone()]).is_none());
    }

    #[test]
    fn kernel_of_projection() {
        let images = vec![vec![q(1), q(0)], vec![q(0), q(1)], vec![q(1), q(1)]];
        let k = kernel(&images, 2);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![q(1), q(1), q(-1)]);
    }
}
