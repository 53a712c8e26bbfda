//! Properties of the root-graded Lie algebras `sl_n(A)`.

use proptest::prelude::*;

use sealg::algebra::{parse_algebra_spec, Algebra};
use sealg::exactla::{Field, Subspace, Q};
use sealg::liealg::GradedLie;

fn q(v: i64) -> Q {
    Q::from_i64(v)
}

fn lie(spec: &str, n: usize) -> GradedLie<Q> {
    GradedLie::sl(&parse_algebra_spec(spec).unwrap(), n).unwrap()
}

const CASES: [(&str, usize); 5] =
    [("ground", 3), ("truncpoly:2", 3), ("matrix:2", 2), ("quaternion:1,-1", 3), ("matrix:2", 3)];

fn element(l: &GradedLie<Q>, coeffs: &[i64]) -> Vec<Q> {
    (0..l.dim()).map(|p| q(coeffs[p % coeffs.len()] * ((p as i64 % 3) - 1))).collect()
}

/// The commutator of two `gl_n(A)` matrices with entries in `A`.
fn gl_commutator(a: &Algebra<Q>, n: usize, x: &[Vec<Q>], y: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut out = vec![a.zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let xy = a.mul(&x[i * n + k], &y[k * n + j]);
                let yx = a.mul(&y[i * n + k], &x[k * n + j]);
                for (o, (u, v)) in out[i * n + j].iter_mut().zip(xy.into_iter().zip(yx)) {
                    *o += u - v;
                }
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bracket_is_the_matrix_commutator(
        which in 0usize..5,
        x in prop::collection::vec(-2i64..=2, 1..12),
        y in prop::collection::vec(-2i64..=2, 1..12),
    ) {
        let (spec, n) = CASES[which];
        let l = lie(spec, n);
        let (x, y) = (element(&l, &x), element(&l, &y));
        let expected = gl_commutator(l.coeff(), n, &l.to_gl(&x), &l.to_gl(&y));
        prop_assert_eq!(l.to_gl(&l.bracket(&x, &y)), expected.clone());
        prop_assert_eq!(l.from_gl(&expected).unwrap(), l.bracket(&x, &y));
    }

    #[test]
    fn jacobi_identity(
        which in 0usize..5,
        x in prop::collection::vec(-2i64..=2, 1..8),
        y in prop::collection::vec(-2i64..=2, 1..8),
        z in prop::collection::vec(-2i64..=2, 1..8),
    ) {
        let (spec, n) = CASES[which];
        let l = lie(spec, n);
        let (x, y, z) = (element(&l, &x), element(&l, &y), element(&l, &z));
        let mut total = l.bracket(&x, &l.bracket(&y, &z));
        for (t, (u, v)) in total.iter_mut().zip(l.bracket(&y, &l.bracket(&z, &x)).into_iter().zip(l.bracket(&z, &l.bracket(&x, &y)))) {
            *t += u + v;
        }
        prop_assert!(total.iter().all(|c| *c == q(0)));
    }

    #[test]
    fn root_vector_multiplication_rules(which in 0usize..5, ia in 0usize..4, ib in 0usize..4) {
        let (spec, n) = CASES[which];
        if n < 3 {
            return Ok(());
        }
        let l = lie(spec, n);
        let a = l.coeff();
        let (x, y) = (a.basis(ia % a.dim()), a.basis(ib % a.dim()));
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    let lhs = l.bracket(&l.e_ij(i, j, &x).unwrap(), &l.e_ij(j, k, &y).unwrap());
                    prop_assert_eq!(lhs, l.e_ij(i, k, &a.mul(&x, &y)).unwrap());
                    let zero = l.bracket(&l.e_ij(i, j, &x).unwrap(), &l.e_ij(i, k, &y).unwrap());
                    prop_assert!(zero.iter().all(|c| *c == q(0)));
                }
            }
        }
    }

    #[test]
    fn l0_split_round_trips(which in 0usize..5, coeffs in prop::collection::vec(-3i64..=3, 1..10), k_pick in 0usize..3) {
        let (spec, n) = CASES[which];
        let l = lie(spec, n);
        let k = 1 + k_pick % n;
        let mut x = vec![q(0); l.dim()];
        for (t, p) in l.zero_range().enumerate() {
            x[p] = q(coeffs[t % coeffs.len()]);
        }
        let (c, hs) = l.l0_coordinates(&x, k).unwrap();
        prop_assert_eq!(l.l0_assemble(&c, &hs, k).unwrap(), x);
    }
}

#[test]
fn weights_add_under_brackets() {
    for (spec, n) in CASES {
        let l = lie(spec, n);
        for p in 0..l.dim() {
            for r in 0..l.dim() {
                let b = l.bracket_basis(p, r);
                if b.is_zero() {
                    continue;
                }
                let sum: Vec<i64> = l.weight(p).iter().zip(l.weight(r)).map(|(u, v)| u + v).collect();
                for (s, _) in b.entries() {
                    assert_eq!(l.weight(*s as usize), sum.as_slice(), "{spec}, n = {n}: [{p}, {r}]");
                }
            }
        }
    }
}

#[test]
fn l0_is_spanned_by_simple_root_brackets() {
    for (spec, n) in CASES {
        let l = lie(spec, n);
        let a = l.coeff();
        let mut vectors = Vec::new();
        for i in 1..n {
            for x in 0..a.dim() {
                for y in 0..a.dim() {
                    vectors.push(l.bracket(&l.e(i, &a.basis(x)).unwrap(), &l.f(i, &a.basis(y)).unwrap()));
                }
            }
        }
        let span = Subspace::span_dense(l.dim(), &vectors);
        assert_eq!(span.dim(), l.dim_l0(), "{spec}, n = {n}");
        assert_eq!(span.dim(), l.zero_range().len());
    }
}

#[test]
fn commutator_diagonal_is_an_ideal_of_l0() {
    for (spec, n) in CASES {
        let l = lie(spec, n);
        let a = l.coeff();
        let comm = a.derived_spaces().commutator;
        for k in 1..=n {
            let ideal: Vec<Vec<Q>> = comm.basis_dense().iter().map(|c| l.diag_unit(k, c).unwrap()).collect();
            let space = Subspace::span_dense(l.dim(), &ideal);
            for x in &ideal {
                for p in l.zero_range() {
                    let mut y = vec![q(0); l.dim()];
                    y[p] = q(1);
                    assert!(space.contains_dense(&l.bracket(x, &y)), "{spec}, n = {n}, k = {k}");
                }
            }
        }
    }
}

#[test]
fn theta_is_a_lie_isomorphism() {
    for (spec, n) in CASES {
        let l = lie(spec, n);
        let (op, theta) = l.theta().unwrap();
        assert!(l.lie_hom_violation(&op, &theta).is_none(), "{spec}, n = {n}");
        assert_eq!(theta.rank(), l.dim());
    }
}

#[test]
fn structural_self_check_passes() {
    for (spec, n) in CASES {
        lie(spec, n).verify(300, 7).unwrap();
    }
}
