//! Properties of coefficient algebras and symmetric tensor algebras.

use num::Zero;
use proptest::prelude::*;

use sealg::algebra::{parse_algebra_spec, Algebra, SymTensorAlgebra};
use sealg::exactla::{Field, Matrix, Subspace, Q};

fn q(v: i64) -> Q {
    Q::from_i64(v)
}

fn vec_q(v: &[i64]) -> Vec<Q> {
    v.iter().map(|x| q(*x)).collect()
}

fn test_algebras() -> Vec<(&'static str, Algebra<Q>)> {
    ["ground", "truncpoly:3", "matrix:2", "quaternion:1,-1", "quaternion:2,3", "op:matrix:2"]
        .into_iter()
        .map(|s| (s, parse_algebra_spec(s).unwrap()))
        .collect()
}

fn upper_triangular() -> Algebra<Q> {
    let m = |e: [[i64; 2]; 2]| {
        let mut x = Matrix::zeros(2, 2);
        for (i, row) in e.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                x.set(i, j, q(*v));
            }
        }
        x
    };
    Algebra::from_matrix_realization(
        vec!["1".into(), "E11".into(), "E12".into()],
        &[m([[1, 0], [0, 1]]), m([[1, 0], [0, 0]]), m([[0, 1], [0, 0]])],
    )
    .unwrap()
}

/// Coordinates of `Mat₂` in the basis `1, E12, E21, H1` as an explicit matrix.
fn mat2_matrix(x: &[Q]) -> [[Q; 2]; 2] {
    [[x[0].clone() + x[3].clone(), x[1].clone()], [x[2].clone(), x[0].clone() - x[3].clone()]]
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `a ⊗ ⋯ ⊗ a` in the coordinates of `A^{⊗ℓ}`.
fn tensor_power_of(a: &[Q], ell: usize) -> Vec<Q> {
    let mut out = vec![q(1)];
    for _ in 0..ell {
        out = out.iter().flat_map(|x| a.iter().map(move |y| x.clone() * y.clone())).collect();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn products_are_associative(
        which in 0usize..6,
        x in prop::collection::vec(-3i64..=3, 4),
        y in prop::collection::vec(-3i64..=3, 4),
        z in prop::collection::vec(-3i64..=3, 4),
    ) {
        let (_, a) = &test_algebras()[which];
        let d = a.dim();
        let (x, y, z) = (vec_q(&x[..d.min(4)]), vec_q(&y[..d.min(4)]), vec_q(&z[..d.min(4)]));
        let pad = |mut v: Vec<Q>| { v.resize(d, q(0)); v };
        let (x, y, z) = (pad(x), pad(y), pad(z));
        prop_assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
        prop_assert_eq!(a.mul(a.unit(), &x), x.clone());
        prop_assert_eq!(a.mul(&x, a.unit()), x);
    }

    #[test]
    fn mat2_product_matches_matrix_multiplication(
        x in prop::collection::vec(-5i64..=5, 4),
        y in prop::collection::vec(-5i64..=5, 4),
    ) {
        let a = Algebra::<Q>::matrix(2).unwrap();
        let (x, y) = (vec_q(&x), vec_q(&y));
        let (mx, my) = (mat2_matrix(&x), mat2_matrix(&y));
        let mut expected = [[q(0), q(0)], [q(0), q(0)]];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    expected[i][j] += mx[i][k].clone() * my[k][j].clone();
                }
            }
        }
        prop_assert_eq!(mat2_matrix(&a.mul(&x, &y)), expected);
    }

    #[test]
    fn quaternion_norm_is_multiplicative(
        a in prop_oneof![Just(1i64), Just(-1), Just(2), Just(-3)],
        b in prop_oneof![Just(1i64), Just(-1), Just(3), Just(5)],
        x in prop::collection::vec(-3i64..=3, 4),
        y in prop::collection::vec(-3i64..=3, 4),
    ) {
        let h = Algebra::quaternion(q(a), q(b)).unwrap();
        let norm = |v: &[Q]| {
            v[0].clone() * v[0].clone() - q(a) * v[1].clone() * v[1].clone() - q(b) * v[2].clone() * v[2].clone()
                + q(a * b) * v[3].clone() * v[3].clone()
        };
        let (x, y) = (vec_q(&x), vec_q(&y));
        prop_assert_eq!(norm(&h.mul(&x, &y)), norm(&x) * norm(&y));
    }
}

#[test]
fn json_round_trip_preserves_structure() {
    for (name, a) in test_algebras() {
        let back = Algebra::<Q>::from_json(&a.to_json()).unwrap();
        assert_eq!(back, a, "{name}");
    }
}

#[test]
fn opposite_reverses_products() {
    let a = Algebra::<Q>::matrix(2).unwrap();
    let op = a.opposite();
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(op.mul(&a.basis(i), &a.basis(j)), a.mul(&a.basis(j), &a.basis(i)));
        }
    }
}

#[test]
fn ts_dimension_is_a_binomial_coefficient() {
    for (name, a) in test_algebras() {
        for ell in 1..=3 {
            let ts = SymTensorAlgebra::build(&a, ell).unwrap();
            assert_eq!(ts.dim(), binomial(a.dim() + ell - 1, ell), "TS^{ell}({name})");
        }
    }
}

#[test]
fn symmetrization_is_a_lie_homomorphism() {
    for (name, a) in test_algebras() {
        for ell in 1..=3 {
            let ts = SymTensorAlgebra::build(&a, ell).unwrap();
            let b = ts.algebra();
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    let lhs = ts.sym(&a.commutator(&a.basis(i), &a.basis(j)));
                    let rhs = b.commutator(&ts.sym(&a.basis(i)), &ts.sym(&a.basis(j)));
                    assert_eq!(lhs, rhs, "TS^{ell}({name}) on ({i}, {j})");
                }
            }
        }
    }
}

#[test]
fn symmetrization_generates_ts() {
    for (name, a) in test_algebras() {
        for ell in 1..=3 {
            let ts = SymTensorAlgebra::build(&a, ell).unwrap();
            let gens: Vec<Vec<Q>> = (0..a.dim()).map(|i| ts.sym(&a.basis(i))).collect();
            assert_eq!(ts.algebra().subalgebra_generated(&gens).dim(), ts.dim(), "TS^{ell}({name})");
        }
    }
}

#[test]
fn ts_is_spanned_by_pure_tensor_powers() {
    let grid = [-1i64, 0, 1, 2];
    for (name, a) in test_algebras() {
        for ell in 1..=3 {
            let ts = SymTensorAlgebra::build(&a, ell).unwrap();
            let ambient = ts.ambient().dim();
            let mut powers = Vec::new();
            let mut idx = vec![0usize; a.dim()];
            loop {
                let x: Vec<Q> = idx.iter().map(|i| q(grid[*i])).collect();
                powers.push(tensor_power_of(&x, ell));
                let mut k = 0;
                while k < idx.len() {
                    idx[k] += 1;
                    if idx[k] < grid.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == idx.len() {
                    break;
                }
            }
            let span = Subspace::span_dense(ambient, &powers);
            let ts_space = ts.subspace();
            assert!(ts_space.is_subspace_of(&span), "TS^{ell}({name}) ⊆ span of a^⊗ℓ");
            assert!(span.is_subspace_of(&ts_space), "a^⊗ℓ ∈ TS^{ell}({name})");
        }
    }
}

#[test]
fn ts_is_functorial_for_the_abelianization() {
    let a = upper_triangular();
    let ds = a.derived_spaces();
    let (ab, c) = a.quotient(&ds.commutator_ideal).unwrap();
    assert_eq!(ab.dim(), 2);
    for ell in 1..=3 {
        let ts = SymTensorAlgebra::build(&a, ell).unwrap();
        let tq = SymTensorAlgebra::build(&ab, ell).unwrap();
        let phi: Vec<Vec<Q>> = ts
            .words()
            .iter()
            .map(|w| w.iter().fold(tq.algebra().unit().to_vec(), |acc, b| tq.algebra().mul(&acc, &tq.sym(c.image(*b)))))
            .collect();
        let apply = |x: &[Q]| -> Vec<Q> {
            let mut out = vec![q(0); tq.dim()];
            for (coef, img) in x.iter().zip(&phi) {
                if !coef.is_zero() {
                    for (o, v) in out.iter_mut().zip(img) {
                        *o += coef.clone() * v.clone();
                    }
                }
            }
            out
        };
        let b = ts.algebra();
        for i in 0..ts.dim() {
            for j in 0..ts.dim() {
                let lhs = apply(&b.mul(&b.basis(i), &b.basis(j)));
                let rhs = tq.algebra().mul(&phi[i], &phi[j]);
                assert_eq!(lhs, rhs, "TS^{ell}(c) on ({i}, {j})");
            }
        }
        assert_eq!(Subspace::span_dense(tq.dim(), &phi).dim(), tq.dim(), "TS^{ell}(c) is onto");
        for x in 0..a.dim() {
            assert_eq!(apply(&ts.sym(&a.basis(x))), tq.sym(c.image(x)));
        }
    }
}

#[test]
fn matrix_ts_centre_counts_partitions() {
    let a = Algebra::<Q>::matrix(2).unwrap();
    for (ell, parts) in [(1, 1), (2, 2), (3, 2), (4, 3)] {
        assert_eq!(SymTensorAlgebra::build(&a, ell).unwrap().center_dim(), parts, "ℓ = {ell}");
    }
}
