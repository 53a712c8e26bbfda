//! Properties of exact fields, sparse vectors and subspaces.

use num::{One, Zero};
use proptest::prelude::*;

use sealg::exactla::{kernel, parse_rational, rational_string, Fa, Field, Matrix, SparseVec, Subspace, Q};

fn small_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

fn to_field<F: Field>(rows: &[Vec<i64>]) -> Vec<Vec<F>> {
    rows.iter().map(|r| r.iter().map(|x| F::from_i64(*x)).collect()).collect()
}

fn rank<F: Field>(rows: &[Vec<i64>]) -> usize {
    let cols = rows[0].len();
    Subspace::span_dense(cols, &to_field::<F>(rows)).dim()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn prime_field_axioms(a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
        let (x, y, z) = (Fa::from_i64(a), Fa::from_i64(b), Fa::from_i64(c));
        prop_assert_eq!((x * y) * z, x * (y * z));
        prop_assert_eq!(x * (y + z), x * y + x * z);
        prop_assert_eq!(x - x, Fa::zero());
        if !x.is_zero() {
            prop_assert_eq!(x * x.inv(), Fa::one());
        }
    }

    #[test]
    fn prime_field_embedding_is_a_ring_map(a in -1_000_000i64..1_000_000, b in -1_000_000i64..1_000_000) {
        prop_assert_eq!(Fa::from_i64(a) * Fa::from_i64(b), Fa::from_i64(a * b));
        prop_assert_eq!(Fa::from_i64(a) + Fa::from_i64(b), Fa::from_i64(a + b));
    }

    #[test]
    fn rational_strings_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let q = Q::new(n.into(), d.into());
        prop_assert_eq!(parse_rational(&rational_string(&q)).unwrap(), q.clone());
        prop_assert_eq!(Q::parse_exact(&q.to_exact_string()).unwrap(), q);
    }

    #[test]
    fn rereducing_a_basis_is_idempotent(rows in small_matrix(8, 10)) {
        let cols = rows[0].len();
        let s = Subspace::span_dense(cols, &to_field::<Q>(&rows));
        let again = Subspace::span(cols, s.basis().iter().cloned());
        prop_assert_eq!(again.basis(), s.basis());
    }

    #[test]
    fn sum_and_intersection_dimensions(u in small_matrix(6, 12), v in small_matrix(6, 12), pad in 0usize..3) {
        let cols = u[0].len().max(v[0].len()) + pad;
        let extend = |rows: &[Vec<i64>]| -> Vec<Vec<Q>> {
            rows.iter().map(|r| {
                let mut x: Vec<Q> = r.iter().map(|c| Q::from_i64(*c)).collect();
                x.resize(cols, Q::zero());
                x
            }).collect()
        };
        let su = Subspace::span_dense(cols, &extend(&u));
        let sv = Subspace::span_dense(cols, &extend(&v));
        let sum = su.sum(&sv).unwrap();
        let meet = su.intersection(&sv).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), su.dim() + sv.dim());
        prop_assert!(meet.is_subspace_of(&su) && meet.is_subspace_of(&sv));
        prop_assert!(su.is_subspace_of(&sum) && sv.is_subspace_of(&sum));
    }

    #[test]
    fn rational_and_prime_ranks_agree(rows in small_matrix(6, 6)) {
        prop_assert_eq!(rank::<Q>(&rows), rank::<Fa>(&rows));
    }

    #[test]
    fn kernel_vectors_are_annihilated(rows in small_matrix(6, 7)) {
        let target = rows.len();
        let images: Vec<Vec<Q>> = (0..rows[0].len())
            .map(|j| rows.iter().map(|r| Q::from_i64(r[j])).collect())
            .collect();
        let ker = kernel(&images, target);
        prop_assert_eq!(ker.len() + rank::<Q>(&rows), images.len());
        for k in &ker {
            let mut total = vec![Q::zero(); target];
            for (c, img) in k.iter().zip(&images) {
                for (t, x) in total.iter_mut().zip(img) {
                    *t += c.clone() * x.clone();
                }
            }
            prop_assert!(total.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn sparse_dense_round_trip(v in prop::collection::vec(-2i64..=2, 0..20)) {
        let dense: Vec<Q> = v.iter().map(|x| Q::from_i64(*x)).collect();
        let s = SparseVec::from_dense(&dense);
        prop_assert_eq!(s.to_dense(dense.len()), dense);
        prop_assert_eq!(s.nnz(), v.iter().filter(|x| **x != 0).count());
    }

    #[test]
    fn reduction_decides_membership(rows in small_matrix(5, 8), coeffs in prop::collection::vec(-3i64..=3, 5)) {
        let cols = rows[0].len();
        let field_rows = to_field::<Q>(&rows);
        let s = Subspace::span_dense(cols, &field_rows);
        let mut combo = vec![Q::zero(); cols];
        for (r, c) in field_rows.iter().zip(&coeffs) {
            for (t, x) in combo.iter_mut().zip(r) {
                *t += Q::from_i64(*c) * x.clone();
            }
        }
        prop_assert!(s.contains_dense(&combo));
        prop_assert!(s.reduce(&SparseVec::from_dense(&combo)).is_zero());
    }
}

#[test]
fn inverse_of_a_unimodular_matrix() {
    let mut m = Matrix::<Q>::identity(3);
    m.set(0, 1, Q::from_i64(2));
    m.set(1, 2, Q::from_i64(-1));
    let inv = m.inverse().unwrap();
    assert_eq!(m.mul(&inv), Matrix::identity(3));
    assert_eq!(m.rank(), 3);
}
