//! Sparse vectors and matrices with canonical entry ordering.

use std::collections::BTreeMap;

use super::{Field, LaError};

/// A sparse vector: strictly increasing column indices, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVec<F> {
    entries: Vec<(u32, F)>,
}

impl<F: Field> Default for SparseVec<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> SparseVec<F> {
    /// The zero vector.
    pub fn zero() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// A unit vector `c · e_i`.
    pub fn unit(i: usize, c: F) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            SparseVec { entries: vec![(i as u32, c)] }
        }
    }

    /// Builds a vector from entries in arbitrary order, summing duplicates and dropping zeros.
    pub fn from_unsorted(mut entries: Vec<(u32, F)>) -> Self {
        entries.sort_by_key(|e| e.0);
        let mut out: Vec<(u32, F)> = Vec::with_capacity(entries.len());
        for (i, c) in entries {
            match out.last_mut() {
                Some((j, acc)) if *j == i => *acc += c,
                _ => out.push((i, c)),
            }
        }
        out.retain(|e| !e.1.is_zero());
        SparseVec { entries: out }
    }

    /// Builds a vector from already sorted, duplicate-free, zero-free entries.
    pub fn from_sorted(entries: Vec<(u32, F)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|e| !e.1.is_zero()));
        SparseVec { entries }
    }

    /// Sparse view of a dense coordinate vector.
    pub fn from_dense(v: &[F]) -> Self {
        SparseVec {
            entries: v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i as u32, c.clone())).collect(),
        }
    }

    /// Dense coordinates of length `len`.
    pub fn to_dense(&self, len: usize) -> Vec<F> {
        let mut v = vec![F::zero(); len];
        for (i, c) in &self.entries {
            v[*i as usize] = c.clone();
        }
        v
    }

    /// The stored entries.
    pub fn entries(&self) -> &[(u32, F)] {
        &self.entries
    }

    /// Consumes the vector returning its entries.
    pub fn into_entries(self) -> Vec<(u32, F)> {
        self.entries
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// True for the zero vector.
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// The first nonzero entry.
    pub fn leading(&self) -> Option<(usize, &F)> {
        self.entries.first().map(|(i, c)| (*i as usize, c))
    }

    /// Largest stored index.
    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0 as usize)
    }

    /// Coefficient at index `i`.
    pub fn get(&self, i: usize) -> F {
        match self.entries.binary_search_by_key(&(i as u32), |e| e.0) {
            Ok(p) => self.entries[p].1.clone(),
            Err(_) => F::zero(),
        }
    }

    /// `c · self`.
    pub fn scaled(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, x.clone() * c.clone())).collect() }
    }

    /// `self + c · other`.
    pub fn add_scaled(&self, c: &F, other: &Self) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut p, mut q) = (0, 0);
        while p < a.len() || q < b.len() {
            if q >= b.len() || (p < a.len() && a[p].0 < b[q].0) {
                out.push(a[p].clone());
                p += 1;
            } else if p >= a.len() || b[q].0 < a[p].0 {
                out.push((b[q].0, b[q].1.clone() * c.clone()));
                q += 1;
            } else {
                let mut s = a[p].1.clone();
                s.add_mul(c, &b[q].1);
                if !s.is_zero() {
                    out.push((a[p].0, s));
                }
                p += 1;
                q += 1;
            }
        }
        SparseVec { entries: out }
    }

    /// `self - other`.
    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(&-F::one(), other)
    }

    /// `self + other`.
    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&F::one(), other)
    }

    /// Reindexes entries through `f`, re-sorting and merging the result.
    pub fn map_indices(&self, f: impl Fn(u32) -> u32) -> Self {
        Self::from_unsorted(self.entries.iter().map(|(i, c)| (f(*i), c.clone())).collect())
    }

    /// Scales so that the leading coefficient is one.
    pub fn normalized(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) => {
                let inv = c.inv();
                self.scaled(&inv)
            }
        }
    }
}

/// Accumulates a sparse linear combination keyed by index.
#[derive(Clone, Debug)]
pub struct SparseAccumulator<F> {
    map: BTreeMap<u32, F>,
}

impl<F: Field> Default for SparseAccumulator<F> {
    fn default() -> Self {
        SparseAccumulator { map: BTreeMap::new() }
    }
}

impl<F: Field> SparseAccumulator<F> {
    /// Adds `c · e_i`.
    pub fn add(&mut self, i: u32, c: F) {
        if c.is_zero() {
            return;
        }
        let e = self.map.entry(i).or_insert_with(F::zero);
        *e += c;
        if e.is_zero() {
            self.map.remove(&i);
        }
    }

    /// Adds `c · v`.
    pub fn add_vec(&mut self, c: &F, v: &SparseVec<F>) {
        for (i, x) in v.entries() {
            self.add(*i, c.clone() * x.clone());
        }
    }

    /// The accumulated vector.
    pub fn finish(self) -> SparseVec<F> {
        SparseVec::from_sorted(self.map.into_iter().collect())
    }
}

/// A sparse matrix stored as canonical row-major `(row, col, value)` triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, F)>,
}

impl<F: Field> SparseMatrix<F> {
    /// Builds a matrix from triples, rejecting out-of-range and duplicate positions.
    pub fn from_triplets(rows: usize, cols: usize, mut entries: Vec<(usize, usize, F)>) -> Result<Self, LaError> {
        for (r, c, _) in &entries {
            if *r >= rows || *c >= cols {
                return Err(LaError::IndexOutOfRange { row: *r, col: *c, rows, cols });
            }
        }
        entries.sort_by_key(|e| (e.0, e.1));
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
                return Err(LaError::DuplicateEntry { row: w[0].0, col: w[0].1 });
            }
        }
        entries.retain(|e| !e.2.is_zero());
        Ok(SparseMatrix { rows, cols, entries })
    }

    /// Builds a matrix from dense rows.
    pub fn from_dense_rows(cols: usize, rows: &[Vec<F>]) -> Self {
        let mut entries = Vec::new();
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row length mismatch");
            for (c, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    entries.push((r, c, x.clone()));
                }
            }
        }
        SparseMatrix { rows: rows.len(), cols, entries }
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Canonical entries.
    pub fn entries(&self) -> &[(usize, usize, F)] {
        &self.entries
    }

    /// The rows as sparse vectors.
    pub fn row_vectors(&self) -> Vec<SparseVec<F>> {
        let mut out: Vec<Vec<(u32, F)>> = vec![Vec::new(); self.rows];
        for (r, c, x) in &self.entries {
            out[*r].push((*c as u32, x.clone()));
        }
        out.into_iter().map(SparseVec::from_sorted).collect()
    }
}
