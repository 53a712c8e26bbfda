//! Column indexing of PBW monomials for the saturation matrices.
//!
//! Monomials of degree at most `max_deg` in `d` variables are ranked by degree and then
//! lexicographically; the column of a monomial is `total − 1 − rank`, so higher degrees get
//! smaller columns and are eliminated first by left-to-right reduction.

use crate::envelope::{Monomial, PbwElement};
use crate::exactla::{Field, SparseVec};

/// Bijection between monomials of bounded degree and matrix columns.
#[derive(Clone, Debug)]
pub struct Columns {
    d: usize,
    max_deg: usize,
    binom: Vec<Vec<u128>>,
    offsets: Vec<u128>,
    total: u128,
}

impl Columns {
    /// Columns for monomials of degree `≤ max_deg` in `d` variables.
    pub fn new(d: usize, max_deg: usize) -> Self {
        let size = d + max_deg + 2;
        let mut binom = vec![vec![0u128; size]; size];
        for n in 0..size {
            binom[n][0] = 1;
            for k in 1..=n {
                binom[n][k] = binom[n - 1][k - 1] + if k < n { binom[n - 1][k] } else { 0 };
            }
        }
        let mut offsets = Vec::with_capacity(max_deg + 2);
        let mut acc = 0u128;
        for k in 0..=max_deg + 1 {
            offsets.push(acc);
            acc += Self::count_with(&binom, d, k);
        }
        let total = offsets[max_deg + 1];
        Columns { d, max_deg, binom, offsets, total }
    }

    fn count_with(binom: &[Vec<u128>], d: usize, k: usize) -> u128 {
        if k == 0 {
            1
        } else if d == 0 {
            0
        } else {
            binom[d + k - 1][k]
        }
    }

    /// Number of variables.
    pub fn vars(&self) -> usize {
        self.d
    }

    /// Largest degree covered.
    pub fn max_deg(&self) -> usize {
        self.max_deg
    }

    /// Number of columns.
    pub fn total(&self) -> usize {
        self.total as usize
    }

    /// Number of monomials of degree exactly `k`.
    pub fn count_degree(&self, k: usize) -> usize {
        Self::count_with(&self.binom, self.d, k) as usize
    }

    /// Number of monomials of degree at most `k`.
    pub fn count_up_to(&self, k: usize) -> usize {
        self.offsets[k.min(self.max_deg) + 1] as usize
    }

    /// Sequences of length `r` over `{v, …, d−1}`.
    fn tail_count(&self, v: usize, r: usize) -> u128 {
        if r == 0 {
            1
        } else {
            self.binom[self.d - v + r - 1][r]
        }
    }

    /// Rank of a monomial in the (degree, lexicographic) order.
    pub fn rank(&self, m: &[u16]) -> u128 {
        let k = m.len();
        let mut rank = self.offsets[k];
        let mut lo = 0usize;
        for (t, f) in m.iter().enumerate() {
            let r = k - t - 1;
            for v in lo..*f as usize {
                rank += self.tail_count(v, r);
            }
            lo = *f as usize;
        }
        rank
    }

    /// Column of a monomial.
    pub fn col(&self, m: &[u16]) -> u32 {
        debug_assert!(m.len() <= self.max_deg);
        (self.total - 1 - self.rank(m)) as u32
    }

    /// Degree of the monomial in a column.
    pub fn degree_of(&self, col: usize) -> usize {
        let rank = self.total - 1 - col as u128;
        (0..=self.max_deg).rfind(|k| self.offsets[*k] <= rank).unwrap_or(0)
    }

    /// The monomial in a column.
    pub fn monomial(&self, col: usize) -> Monomial {
        let rank = self.total - 1 - col as u128;
        let k = self.degree_of(col);
        let mut rest = rank - self.offsets[k];
        let mut out = Vec::with_capacity(k);
        let mut lo = 0usize;
        for t in 0..k {
            let r = k - t - 1;
            let mut v = lo;
            loop {
                let c = self.tail_count(v, r);
                if rest < c {
                    break;
                }
                rest -= c;
                v += 1;
            }
            out.push(v as u16);
            lo = v;
        }
        out
    }

    /// First column of the block of monomials of degree at most `k`.
    pub fn first_col_up_to(&self, k: usize) -> usize {
        self.total() - self.count_up_to(k)
    }

    /// Coordinates of an element whose degree is within range.
    pub fn to_sparse<F: Field>(&self, u: &PbwElement<F>) -> SparseVec<F> {
        SparseVec::from_unsorted(u.terms().iter().map(|(m, c)| (self.col(m), c.clone())).collect())
    }

    /// The element with the given coordinates.
    pub fn to_element<F: Field>(&self, v: &SparseVec<F>) -> PbwElement<F> {
        PbwElement::from_terms(v.entries().iter().map(|(c, x)| (self.monomial(*c as usize), x.clone())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::monomials_up_to;

    #[test]
    fn ranks_follow_enumeration_order() {
        for (d, k) in [(0, 3), (1, 4), (3, 3), (5, 2)] {
            let cols = Columns::new(d, k);
            let all = monomials_up_to(0..d, k);
            assert_eq!(all.len(), cols.total());
            for (i, m) in all.iter().enumerate() {
                assert_eq!(cols.rank(m), i as u128);
                let c = cols.col(m) as usize;
                assert_eq!(&cols.monomial(c), m);
                assert_eq!(cols.degree_of(c), m.len());
            }
        }
    }

    #[test]
    fn degree_blocks() {
        let cols = Columns::new(3, 3);
        assert_eq!(cols.count_degree(2), 6);
        assert_eq!(cols.count_up_to(1), 4);
        assert_eq!(cols.first_col_up_to(1), cols.total() - 4);
        assert_eq!(cols.col(&[]) as usize, cols.total() - 1);
    }
}
