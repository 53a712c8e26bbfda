//! Linear maps between coordinate spaces, and associative multiplication targets.

use crate::exactla::{axpy, Field, Matrix};

use super::Algebra;

/// A linear map `k^src → k^dst` stored by the images of the source basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap<F> {
    src: usize,
    dst: usize,
    images: Vec<Vec<F>>,
}

impl<F: Field> LinearMap<F> {
    /// Builds a map from the images of the basis vectors.
    pub fn new(src: usize, dst: usize, images: Vec<Vec<F>>) -> Self {
        assert_eq!(images.len(), src, "one image per source basis vector");
        assert!(images.iter().all(|v| v.len() == dst), "image length mismatch");
        LinearMap { src, dst, images }
    }

    /// Builds a map by evaluating `f` on each basis vector.
    pub fn from_fn(src: usize, dst: usize, f: impl Fn(usize) -> Vec<F>) -> Self {
        Self::new(src, dst, (0..src).map(f).collect())
    }

    /// The identity map.
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i| {
            let mut v = vec![F::zero(); n];
            v[i] = F::one();
            v
        })
    }

    /// Source dimension.
    pub fn src_dim(&self) -> usize {
        self.src
    }

    /// Target dimension.
    pub fn dst_dim(&self) -> usize {
        self.dst
    }

    /// Image of basis vector `i`.
    pub fn image(&self, i: usize) -> &[F] {
        &self.images[i]
    }

    /// Applies the map.
    pub fn apply(&self, x: &[F]) -> Vec<F> {
        assert_eq!(x.len(), self.src, "argument length mismatch");
        let mut out = vec![F::zero(); self.dst];
        for (c, img) in x.iter().zip(&self.images) {
            axpy(&mut out, c, img);
        }
        out
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &LinearMap<F>) -> LinearMap<F> {
        assert_eq!(self.dst, other.src, "composition shape mismatch");
        LinearMap::new(self.src, other.dst, self.images.iter().map(|v| other.apply(v)).collect())
    }

    /// `c · self`.
    pub fn scaled(&self, c: &F) -> LinearMap<F> {
        LinearMap::new(
            self.src,
            self.dst,
            self.images.iter().map(|v| v.iter().map(|x| x.clone() * c.clone()).collect()).collect(),
        )
    }

    /// The matrix whose columns are the basis images.
    pub fn matrix(&self) -> Matrix<F> {
        Matrix::from_columns(self.dst, &self.images)
    }

    /// Rank of the map.
    pub fn rank(&self) -> usize {
        self.matrix().rank()
    }
}

/// A finite-dimensional unital associative algebra viewed only through its product.
pub trait Target<F: Field>: Send + Sync {
    /// Dimension of the coordinate space.
    fn target_dim(&self) -> usize;
    /// Coordinates of the unit.
    fn target_one(&self) -> Vec<F>;
    /// Product of two elements.
    fn target_mul(&self, x: &[F], y: &[F]) -> Vec<F>;

    /// Commutator `xy − yx`.
    fn target_commutator(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = self.target_mul(x, y);
        axpy(&mut out, &-F::one(), &self.target_mul(y, x));
        out
    }

    /// The first basis pair on which `map` (from `src`) fails to preserve commutators.
    fn lie_hom_violation(&self, src: &Algebra<F>, map: &LinearMap<F>) -> Option<(usize, usize)> {
        let n = src.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                let lhs = map.apply(&src.commutator(&src.basis(i), &src.basis(j)));
                let rhs = self.target_commutator(map.image(i), map.image(j));
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

impl<F: Field> Target<F> for Algebra<F> {
    fn target_dim(&self) -> usize {
        self.dim()
    }

    fn target_one(&self) -> Vec<F> {
        self.unit().to_vec()
    }

    fn target_mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        self.mul(x, y)
    }
}

/// The matrix algebra `End(k^size)` with row-major flattened coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatrixTarget {
    pub size: usize,
}

impl<F: Field> Target<F> for MatrixTarget {
    fn target_dim(&self) -> usize {
        self.size * self.size
    }

    fn target_one(&self) -> Vec<F> {
        Matrix::<F>::identity(self.size).flatten()
    }

    fn target_mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        let s = self.size;
        let mut out = vec![F::zero(); s * s];
        for i in 0..s {
            for k in 0..s {
                let a = &x[i * s + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..s {
                    let b = &y[k * s + j];
                    if !b.is_zero() {
                        out[i * s + j].add_mul(a, b);
                    }
                }
            }
        }
        out
    }
}
