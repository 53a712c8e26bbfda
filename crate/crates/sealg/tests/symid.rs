//! The symmetric identity: partition data, direct evaluation and the recursion oracle.

use std::sync::OnceLock;

use proptest::prelude::*;

use sealg::algebra::{parse_algebra_spec, Algebra, LinearMap, SymTensorAlgebra, Target};
use sealg::exactla::{Field, Q};
use sealg::seligman::central_trace;
use sealg::symid::{
    check_identity, identity_holds_polarized, partitions, recursion_g, sym_identity_lhs, FamilyOptions,
};
use sealg::Exec;

fn q(v: i64) -> Q {
    Q::from_i64(v)
}

/// All permutations of `0..n` by Heap's algorithm.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(p.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, p, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            p.swap(j, k - 1);
        }
    }
    let mut out = Vec::new();
    heap(n, &mut (0..n).collect(), &mut out);
    out
}

/// Cycle lengths of a permutation.
fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut lens = Vec::new();
    for s in 0..p.len() {
        let (mut x, mut len) = (s, 0);
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len > 0 {
            lens.push(len);
        }
    }
    lens
}

/// `Σ_{σ ∈ S_ℓ} sgn(σ) Π_{cycles c} ρ(a^{|c|})`, summed over the symmetric group directly.
fn brute_force_lhs<T: Target<Q>>(a: &Algebra<Q>, b: &T, rho: &LinearMap<Q>, x: &[Q], ell: usize) -> Vec<Q> {
    let mut out = vec![q(0); b.target_dim()];
    for p in permutations(ell) {
        let lens = cycle_type(&p);
        let sign = if (ell - lens.len()).is_multiple_of(2) { q(1) } else { q(-1) };
        let term = lens.iter().fold(b.target_one(), |acc, len| b.target_mul(&acc, &rho.apply(&a.pow(x, *len))));
        for (o, t) in out.iter_mut().zip(term) {
            *o += sign.clone() * t;
        }
    }
    out
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

struct TestMap {
    name: String,
    a: Algebra<Q>,
    b: Algebra<Q>,
    rho: LinearMap<Q>,
    ell: usize,
}

fn test_maps() -> &'static [TestMap] {
    static MAPS: OnceLock<Vec<TestMap>> = OnceLock::new();
    MAPS.get_or_init(build_test_maps)
}

fn build_test_maps() -> Vec<TestMap> {
    let mut out = Vec::new();
    for spec in ["matrix:2", "quaternion:1,-1", "truncpoly:3"] {
        let a: Algebra<Q> = parse_algebra_spec(spec).unwrap();
        for ell in 1..=3 {
            let ts = SymTensorAlgebra::build(&a, ell).unwrap();
            out.push(TestMap {
                name: format!("sym_{ell} on {spec}"),
                a: a.clone(),
                b: ts.algebra().clone(),
                rho: ts.sym_map(),
                ell,
            });
        }
        if let Ok(tau) = central_trace(&a) {
            for ell in 1..=4 {
                let images = tau.iter().map(|t| vec![t.clone() * q(ell)]).collect();
                out.push(TestMap {
                    name: format!("{ell}τ on {spec}"),
                    a: a.clone(),
                    b: Algebra::ground(),
                    rho: LinearMap::new(a.dim(), 1, images),
                    ell: ell as usize,
                });
            }
        }
    }
    let tp = Algebra::<Q>::trunc_poly(3).unwrap();
    out.push(TestMap {
        name: "id on truncpoly:3".into(),
        a: tp.clone(),
        b: tp.clone(),
        rho: LinearMap::identity(3),
        ell: 1,
    });
    out
}

#[test]
fn class_data_match_the_symmetric_group() {
    for ell in 1..=6 {
        let perms = permutations(ell);
        assert_eq!(perms.len() as i64, factorial(ell));
        for datum in partitions(ell).unwrap() {
            let matching: Vec<&Vec<usize>> = perms
                .iter()
                .filter(|p| {
                    let mut counts = vec![0usize; ell];
                    for len in cycle_type(p) {
                        counts[len - 1] += 1;
                    }
                    counts == datum.p
                })
                .collect();
            assert_eq!(matching.len() as u64, datum.class_size, "ℓ = {ell}, type {:?}", datum.p);
            let parity = (ell - datum.p.iter().sum::<usize>()) % 2;
            assert_eq!(datum.sign, if parity == 0 { 1 } else { -1 });
        }
        assert_eq!(partitions(ell).unwrap().iter().map(|d| d.class_size).sum::<u64>(), perms.len() as u64);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn direct_evaluation_matches_group_sum(which in 0usize..22, x in prop::collection::vec(-3i64..=3, 4), order in 1usize..=4) {
        let maps = test_maps();
        let m = &maps[which % maps.len()];
        let x: Vec<Q> = x[..m.a.dim()].iter().map(|v| q(*v)).collect();
        let direct = sym_identity_lhs(&m.a, &m.b, &m.rho, &x, order).unwrap();
        prop_assert_eq!(direct, brute_force_lhs(&m.a, &m.b, &m.rho, &x, order), "{}", m.name);
    }

    #[test]
    fn recursion_oracle_agrees_on_the_diagonal(which in 0usize..22, x in prop::collection::vec(-2i64..=2, 4), order in 1usize..=5) {
        let maps = test_maps();
        let m = &maps[which % maps.len()];
        let x: Vec<Q> = x[..m.a.dim()].iter().map(|v| q(*v)).collect();
        let lhs = sym_identity_lhs(&m.a, &m.b, &m.rho, &x, order).unwrap();
        let g = recursion_g(&m.a, &m.b, &m.rho, &vec![x.clone(); order]).unwrap();
        let scaled: Vec<Q> = lhs.iter().map(|c| c.clone() * q(factorial(order))).collect();
        prop_assert_eq!(g, scaled, "{} at order {}", m.name, order);
    }
}

#[test]
fn symmetrization_satisfies_the_next_identity() {
    for m in test_maps().iter().filter(|m| m.name.starts_with("sym")) {
        let range = if m.ell < 3 { 2 } else { 1 };
        let opts = FamilyOptions { range, oracle: true, ..FamilyOptions::default() };
        let r = check_identity(&m.a, &m.b, &m.rho, m.ell + 1, opts).unwrap();
        assert_eq!(r.failures, 0, "{}", m.name);
        assert_eq!(r.oracle_mismatches, 0, "{}", m.name);
        assert!(identity_holds_polarized(&m.a, &m.b, &m.rho, m.ell + 1, Exec::default()).unwrap().is_none());
    }
}

#[test]
fn sampled_and_polarized_checks_agree() {
    for m in test_maps() {
        for order in 1..=4 {
            let opts = FamilyOptions { exec: Exec::Sequential, ..FamilyOptions::default() };
            let sampled = check_identity(&m.a, &m.b, &m.rho, order, opts).unwrap();
            let exact = identity_holds_polarized(&m.a, &m.b, &m.rho, order, Exec::Sequential).unwrap();
            if exact.is_none() {
                assert_eq!(sampled.failures, 0, "{} at order {order}", m.name);
            } else {
                assert!(sampled.failures > 0, "{} at order {order}: the grid misses a failure", m.name);
            }
        }
    }
}

#[test]
fn trace_identity_needs_a_multiple_of_the_degree() {
    let a = Algebra::<Q>::matrix(2).unwrap();
    let tau = central_trace(&a).unwrap();
    for ell in 1..=4i64 {
        let rho = LinearMap::new(4, 1, tau.iter().map(|t| vec![t.clone() * q(ell)]).collect());
        let holds = identity_holds_polarized(&a, &Algebra::ground(), &rho, ell as usize + 1, Exec::Sequential)
            .unwrap()
            .is_none();
        assert_eq!(holds, ell % 2 == 0, "ℓ = {ell}");
    }
}
