//! Properties of the truncated global Weyl modules `W(λ) ≅ I(Se^λ)`.

use std::collections::BTreeMap;

use num::Zero;

use sealg::algebra::{parse_algebra_spec, Algebra};
use sealg::exactla::{Field, Matrix, SparseVec, Q};
use sealg::liealg::{GradedLie, Weight};
use sealg::seligman::{compute_seligman, QuotientResult, SeligmanOptions};
use sealg::weylmod::{ann_vs_j, induce_bounded, weyl_module, InducedModuleSlice, SeModule, SliceStatus, WeylOptions};

fn q(v: i64) -> Q {
    Q::from_i64(v)
}

fn setup(spec: &str, n: usize, lambda: &[i64]) -> (GradedLie<Q>, Weight) {
    (GradedLie::sl(&parse_algebra_spec(spec).unwrap(), n).unwrap(), Weight::new(lambda.to_vec()))
}

fn slice(
    spec: &str,
    n: usize,
    lambda: &[i64],
    depth: usize,
) -> (GradedLie<Q>, InducedModuleSlice<Q>, QuotientResult<Q>) {
    let (l, w) = setup(spec, n, lambda);
    let (s, r) = weyl_module(&l, &w, depth, &SeligmanOptions::default(), &WeylOptions::default()).unwrap();
    (l, s, r)
}

/// Converts a weight in simple-root coordinates into an offset `λ − μ`, given `λ` in the same
/// coordinates.
fn offset(top: &[i64], mu: &[i64]) -> Vec<i64> {
    top.iter().zip(mu).map(|(a, b)| a - b).collect()
}

#[test]
fn ground_field_adjoint_matches_root_multiplicities() {
    let (l, s, _) = slice("ground", 3, &[1, 1], 4);
    assert!(matches!(s.status, SliceStatus::Stable { .. }));
    let theta = [1i64, 1];
    let mut expected: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for p in 0..l.dim() {
        *expected.entry(offset(&theta, l.weight(p))).or_default() += 1;
    }
    let got: BTreeMap<Vec<i64>, usize> =
        s.weight_table().into_iter().filter(|r| r.dim > 0).map(|r| (r.offset, r.dim)).collect();
    assert_eq!(got, expected);
    assert_eq!(s.dims_by_depth(), vec![1, 2, 2, 2, 1]);
}

#[test]
fn ground_field_sl2_strings() {
    for ell in 0..=4usize {
        let (_, s, _) = slice("ground", 2, &[ell as i64], ell + 2);
        let mut expected = vec![1; ell + 1];
        expected.extend([0, 0]);
        assert_eq!(s.dims_by_depth(), expected, "ℓ = {ell}");
    }
}

#[test]
fn top_weight_space_is_the_quotient() {
    for (spec, n, lambda) in [("truncpoly:2", 2, vec![1]), ("truncpoly:2", 2, vec![2]), ("truncpoly:2", 3, vec![1, 0])]
    {
        let (_, s, r) = slice(spec, n, &lambda, 2);
        assert_eq!(s.weight_dim(&vec![0; n - 1]), r.quotient_dim.unwrap(), "{spec} {lambda:?}");
    }
}

#[test]
fn highest_weight_relations_and_integrability() {
    for (spec, n, lambda) in [("ground", 3, vec![1, 1]), ("truncpoly:2", 2, vec![1]), ("truncpoly:2", 2, vec![2])] {
        let (l, s, _) = slice(spec, n, &lambda, 4);
        assert_eq!(s.relations_violation(&l), None, "{spec} {lambda:?}");
        let origin = vec![0i64; n - 1];
        let a = l.coeff();
        for i in 1..n {
            let ell = lambda[i - 1] as usize;
            for x in 0..a.dim() {
                let e = l.root_basis_index(i - 1, i, x);
                if let Some((_, m)) = s.action_matrix(e, &origin) {
                    assert!(m.is_zero(), "e_{i} kills the top in {spec} {lambda:?}");
                }
            }
            let f1 = l.root_basis_index(i, i - 1, 0);
            let mut cur = origin.clone();
            let mut chain = Matrix::<Q>::identity(s.weight_dim(&origin));
            let mut reached = true;
            for _ in 0..=ell {
                match s.action_matrix(f1, &cur) {
                    Some((t, m)) => {
                        chain = m.mul(&chain);
                        cur = t;
                    }
                    None => {
                        reached = false;
                        break;
                    }
                }
            }
            if reached {
                assert!(chain.is_zero(), "f_{i}(1)^{} kills the top in {spec} {lambda:?}", ell + 1);
            }
        }
    }
}

#[test]
fn slices_are_cyclic() {
    for (spec, n, lambda) in [("truncpoly:2", 2, vec![1]), ("truncpoly:2", 3, vec![1, 0]), ("ground", 3, vec![1, 1])] {
        let (_, s, r) = slice(spec, n, &lambda, 3);
        let mut w = vec![q(0); s.weight_dim(&vec![0; n - 1])];
        w[0] = q(1);
        for (offset, rank, dim) in s.cyclic_ranks(&w) {
            assert_eq!(rank, dim, "{spec} {lambda:?} at {offset:?}");
        }
        assert!(r.status.is_certified());
    }
}

/// The natural map on raw coordinates `u ⊗ m ↦ u ⊗ f(m)` of two slices with the same monomials.
fn induced_map(f: &Matrix<Q>, d1: usize, d2: usize, v: &SparseVec<Q>) -> SparseVec<Q> {
    let mut out = Vec::new();
    for (idx, c) in v.entries() {
        let (pos, j) = (*idx as usize / d1, *idx as usize % d1);
        for k in 0..d2 {
            let y = f.get(k, j);
            if !y.is_zero() {
                out.push(((pos * d2 + k) as u32, c.clone() * y.clone()));
            }
        }
    }
    SparseVec::from_unsorted(out)
}

/// Quotient coordinates of a raw vector.
fn to_quotient(s: &InducedModuleSlice<Q>, offset: &[i64], v: &SparseVec<Q>) -> Vec<Q> {
    let space = s.weight_spaces().find(|w| w.offset == offset).unwrap();
    let r = space.relations.reduce(v);
    space.relations.non_pivots().iter().map(|p| r.get(*p)).collect()
}

#[test]
fn induction_is_natural_for_module_maps() {
    for (spec, n, lambda) in [("truncpoly:2", 2, vec![1]), ("truncpoly:2", 3, vec![1, 0]), ("truncpoly:3", 2, vec![1])]
    {
        let (l, w) = setup(spec, n, &lambda);
        let r = compute_seligman(&l, &w, &SeligmanOptions::default(), None).unwrap();
        let se: &Algebra<Q> = r.structure.as_ref().unwrap();
        let m1 = SeModule::regular(se);
        let augmentation: Vec<Matrix<Q>> = (0..se.dim())
            .map(|a| {
                let mut m = Matrix::zeros(1, 1);
                m.set(0, 0, if a == 0 { q(1) } else { q(0) });
                m
            })
            .collect();
        let m2 = SeModule::new(se, 1, augmentation).expect("the augmentation is a module");
        let mut f = Matrix::zeros(1, se.dim());
        f.set(0, 0, q(1));
        let opts = WeylOptions::default();
        let s1 = induce_bounded(&l, &r, &m1, 3, &opts).unwrap();
        let s2 = induce_bounded(&l, &r, &m2, 3, &opts).unwrap();
        let (d1, d2) = (se.dim(), 1);
        for space in s1.weight_spaces() {
            let other = s2.weight_spaces().find(|x| x.offset == space.offset).unwrap();
            assert_eq!(space.monomials, other.monomials);
            for rel in space.relations.basis() {
                assert!(other.relations.contains(&induced_map(&f, d1, d2, rel)), "{spec}: relations map to relations");
            }
            let free = space.relations.non_pivots();
            for x in 0..l.dim() {
                for (k, p) in free.iter().enumerate() {
                    let mut e = vec![q(0); free.len()];
                    e[k] = q(1);
                    let Some((target, image)) = s1.act(x, &space.offset, &e) else { continue };
                    let pushed = to_quotient(&s2, &space.offset, &induced_map(&f, d1, d2, &SparseVec::unit(*p, q(1))));
                    let Some((target2, image2)) = s2.act(x, &space.offset, &pushed) else { continue };
                    assert_eq!(target, target2);
                    if image.is_empty() || image2.is_empty() {
                        continue;
                    }
                    let dest = s1.weight_spaces().find(|w| w.offset == target).unwrap();
                    let lifted = SparseVec::from_unsorted(
                        dest.relations
                            .non_pivots()
                            .iter()
                            .zip(&image)
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(p, c)| (*p as u32, c.clone()))
                            .collect(),
                    );
                    let lhs = to_quotient(&s2, &target, &induced_map(&f, d1, d2, &lifted));
                    assert_eq!(lhs, image2, "{spec}: x = {x} at {:?}", space.offset);
                }
            }
        }
    }
}

#[test]
fn annihilator_agrees_with_j() {
    for (spec, n, lambda, big_n) in
        [("ground", 2, vec![1], 2), ("truncpoly:2", 2, vec![1], 2), ("truncpoly:2", 2, vec![2], 2)]
    {
        let (l, w) = setup(spec, n, &lambda);
        let report = ann_vs_j(&l, &w, big_n, &SeligmanOptions::default()).unwrap();
        assert!(report.equal(), "{spec} {lambda:?}: {report:?}");
        assert!(report.generators_in_ann);
    }
}
