//! Cycle-type combinatorics of the symmetric group and the symmetric identities.
//!
//! The order-`ℓ` symmetric identity for a linear map `ρ : A → B` is the vanishing of
//! `Σ_p sgn(p)·|C(p)|·ρ(a)^{p₁} ρ(a²)^{p₂} ⋯ ρ(a^ℓ)^{p_ℓ}` for all `a ∈ A`, the sum running over
//! cycle types `p` of `S_ℓ`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{Algebra, LinearMap, Target};
use crate::exactla::{axpy, is_zero_vec, Field};
use crate::Exec;

/// Largest supported order for the partition tables.
pub const MAX_ORDER: usize = 12;

/// Errors raised by the symmetric-identity routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymIdError {
    #[error("order {0} outside the supported range 1..={MAX_ORDER}")]
    OrderOutOfRange(usize),
    #[error("arguments {0} and {1} do not commute")]
    NonCommuting(usize, usize),
    #[error("images of the commuting arguments {0} and {1} do not commute")]
    ImagesDoNotCommute(usize, usize),
    #[error("map dimensions do not match the algebras")]
    Shape,
}

/// A cycle type of `S_ℓ`: `p_i` cycles of length `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionDatum {
    /// Multiplicities `(p₁, …, p_ℓ)` with `Σ i·p_i = ℓ`.
    pub p: Vec<usize>,
    /// Size of the conjugacy class.
    pub class_size: u64,
    /// Sign of the permutations in the class.
    pub sign: i64,
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// All cycle types of `S_ℓ`, in reverse lexicographic order of the multiplicity vector.
pub fn partitions(ell: usize) -> Result<Vec<PartitionDatum>, SymIdError> {
    if ell == 0 || ell > MAX_ORDER {
        return Err(SymIdError::OrderOutOfRange(ell));
    }
    let mut out = Vec::new();
    let mut p = vec![0usize; ell];
    fn rec(ell: usize, part: usize, remaining: usize, p: &mut Vec<usize>, out: &mut Vec<PartitionDatum>) {
        if part == 0 {
            if remaining == 0 {
                let mut denom = 1u64;
                let mut odd = 0usize;
                for (i, &m) in p.iter().enumerate() {
                    denom *= ((i + 1) as u64).pow(m as u32) * factorial(m);
                    odd += i * m;
                }
                out.push(PartitionDatum {
                    p: p.clone(),
                    class_size: factorial(ell) / denom,
                    sign: if odd.is_multiple_of(2) { 1 } else { -1 },
                });
            }
            return;
        }
        for m in (0..=remaining / part).rev() {
            p[part - 1] = m;
            rec(ell, part - 1, remaining - m * part, p, out);
        }
        p[part - 1] = 0;
    }
    rec(ell, ell, ell, &mut p, &mut out);
    out.reverse();
    Ok(out)
}

fn check_shapes<F: Field, T: Target<F>>(a: &Algebra<F>, b: &T, rho: &LinearMap<F>) -> Result<(), SymIdError> {
    if rho.src_dim() != a.dim() || rho.dst_dim() != b.target_dim() {
        return Err(SymIdError::Shape);
    }
    Ok(())
}

/// The left-hand side of the order-`ell` symmetric identity at `x`.
pub fn sym_identity_lhs<F: Field, T: Target<F>>(
    a: &Algebra<F>,
    b: &T,
    rho: &LinearMap<F>,
    x: &[F],
    ell: usize,
) -> Result<Vec<F>, SymIdError> {
    check_shapes(a, b, rho)?;
    let parts = partitions(ell)?;
    let mut powers = Vec::with_capacity(ell);
    let mut acc = x.to_vec();
    for _ in 0..ell {
        powers.push(rho.apply(&acc));
        acc = a.mul(&acc, x);
    }
    let mut out = vec![F::zero(); b.target_dim()];
    for datum in parts {
        let mut term = b.target_one();
        for (i, &m) in datum.p.iter().enumerate() {
            for _ in 0..m {
                term = b.target_mul(&term, &powers[i]);
            }
        }
        let c = F::from_i64(datum.sign * datum.class_size as i64);
        axpy(&mut out, &c, &term);
    }
    Ok(out)
}

/// Evaluates `g_t(args)` by the recursion `g₁ = ρ`,
/// `g_{t+1}(a₁,…,a_{t+1}) = Σ_j ρ(a_j) g_t(…â_j…) − 2 Σ_{j<m} g_t(a_j a_m, …â_j…â_m…)`,
/// which is only asserted for pairwise commuting arguments. On the diagonal
/// `g_t(a,…,a) = t!·lhs_t(a)`.
pub fn recursion_g<F: Field, T: Target<F>>(
    a: &Algebra<F>,
    b: &T,
    rho: &LinearMap<F>,
    args: &[Vec<F>],
) -> Result<Vec<F>, SymIdError> {
    check_shapes(a, b, rho)?;
    if args.is_empty() || args.len() > MAX_ORDER {
        return Err(SymIdError::OrderOutOfRange(args.len()));
    }
    for i in 0..args.len() {
        for j in (i + 1)..args.len() {
            if !is_zero_vec(&a.commutator(&args[i], &args[j])) {
                return Err(SymIdError::NonCommuting(i, j));
            }
            let (ri, rj) = (rho.apply(&args[i]), rho.apply(&args[j]));
            if !is_zero_vec(&b.target_commutator(&ri, &rj)) {
                return Err(SymIdError::ImagesDoNotCommute(i, j));
            }
        }
    }
    Ok(recursion_unchecked(a, b, rho, args))
}

fn recursion_unchecked<F: Field, T: Target<F>>(a: &Algebra<F>, b: &T, rho: &LinearMap<F>, args: &[Vec<F>]) -> Vec<F> {
    let n = args.len();
    if n == 1 {
        return rho.apply(&args[0]);
    }
    let mut out = vec![F::zero(); b.target_dim()];
    for j in 0..n {
        let rest: Vec<Vec<F>> = args.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect();
        let g = recursion_unchecked(a, b, rho, &rest);
        axpy(&mut out, &F::one(), &b.target_mul(&rho.apply(&args[j]), &g));
    }
    let minus_two = F::from_i64(-2);
    for j in 0..n {
        for m in (j + 1)..n {
            let mut rest = vec![a.mul(&args[j], &args[m])];
            rest.extend(args.iter().enumerate().filter(|(k, _)| *k != j && *k != m).map(|(_, v)| v.clone()));
            axpy(&mut out, &minus_two, &recursion_unchecked(a, b, rho, &rest));
        }
    }
    out
}

/// Options controlling the sample family `{Σ c_i b_i : c_i ∈ {−r..r}}` plus random vectors.
#[derive(Clone, Copy, Debug)]
pub struct FamilyOptions {
    /// Coefficient range `r`.
    pub range: i64,
    /// Maximal number of grid samples.
    pub cap: usize,
    /// Number of additional random integer vectors.
    pub random: usize,
    /// Seed of the random vectors.
    pub seed: u64,
    /// Also compare with the recursion oracle on every sample.
    pub oracle: bool,
    /// Execution strategy.
    pub exec: Exec,
}

impl Default for FamilyOptions {
    fn default() -> Self {
        FamilyOptions { range: 2, cap: 5000, random: 100, seed: 0x5e11_9a4a, oracle: false, exec: Exec::default() }
    }
}

/// Outcome of testing a symmetric identity on a sample family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport<F> {
    /// Number of samples evaluated.
    pub samples: usize,
    /// Number of samples on which the identity fails.
    pub failures: usize,
    /// The first failing sample, if any.
    pub first_failure: Option<Vec<F>>,
    /// Whether the full coefficient grid was covered.
    pub exhaustive_grid: bool,
    /// True when vanishing on the family proves the identity: the grid is complete and has more
    /// points per coordinate than the degree.
    pub proves_identity: bool,
    /// Whether the recursion oracle was evaluated.
    pub oracle_checked: bool,
    /// Number of samples on which the recursion disagrees with `t!·lhs`.
    pub oracle_mismatches: usize,
}

/// The sample family in dimension `dim`.
pub fn sample_family<F: Field>(dim: usize, opts: &FamilyOptions) -> (Vec<Vec<F>>, bool) {
    let width = (2 * opts.range + 1) as usize;
    let full = (width as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    let exhaustive = full <= opts.cap as u128;
    let count = full.min(opts.cap as u128) as usize;
    let mut out = Vec::with_capacity(count + opts.random);
    let mut digits = vec![0usize; dim];
    for _ in 0..count {
        out.push(digits.iter().map(|d| F::from_i64(*d as i64 - opts.range)).collect());
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < width {
                break;
            }
            *d = 0;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.random {
        out.push((0..dim).map(|_| F::from_i64(rng.gen_range(-10..=10))).collect());
    }
    (out, exhaustive)
}

/// Tests the order-`ell` identity for `ρ` on the sample family.
pub fn check_identity<F: Field, T: Target<F>>(
    a: &Algebra<F>,
    b: &T,
    rho: &LinearMap<F>,
    ell: usize,
    opts: FamilyOptions,
) -> Result<FamilyReport<F>, SymIdError> {
    check_shapes(a, b, rho)?;
    partitions(ell)?;
    let (family, exhaustive) = sample_family::<F>(a.dim(), &opts);
    let fact = F::from_i64(factorial(ell) as i64);
    let results = opts.exec.map(&family, |x| {
        let lhs = sym_identity_lhs(a, b, rho, x, ell).expect("shapes checked");
        let mismatch = opts.oracle && {
            let g = recursion_g(a, b, rho, &vec![x.to_vec(); ell]).expect("powers commute");
            g != lhs.iter().map(|c| c.clone() * fact.clone()).collect::<Vec<_>>()
        };
        (is_zero_vec(&lhs), mismatch)
    });
    let failures = results.iter().filter(|r| !r.0).count();
    let first_failure = results.iter().position(|r| !r.0).map(|i| family[i].clone());
    Ok(FamilyReport {
        samples: family.len(),
        failures,
        first_failure,
        exhaustive_grid: exhaustive,
        proves_identity: exhaustive && (ell as i64) < 2 * opts.range + 1 && failures == 0,
        oracle_checked: opts.oracle,
        oracle_mismatches: results.iter().filter(|r| r.1).count(),
    })
}

/// Decides the identity exactly through its full polarization: returns `None` when it holds for
/// all `a ∈ A`, else a multiset of basis indices on which the multilinear form is nonzero.
/// Valid in characteristic 0 or above `ell`.
pub fn identity_holds_polarized<F: Field, T: Target<F>>(
    a: &Algebra<F>,
    b: &T,
    rho: &LinearMap<F>,
    ell: usize,
    exec: Exec,
) -> Result<Option<Vec<usize>>, SymIdError> {
    check_shapes(a, b, rho)?;
    partitions(ell)?;
    let tuples = multisets(a.dim(), ell);
    let results = exec.map(&tuples, |tuple| {
        let mut total = vec![F::zero(); b.target_dim()];
        for mask in 1u32..(1 << ell) {
            let mut x = a.zero();
            for (k, idx) in tuple.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    x[*idx] += F::one();
                }
            }
            let sign = if (ell as u32 - mask.count_ones()).is_multiple_of(2) { F::one() } else { -F::one() };
            axpy(&mut total, &sign, &sym_identity_lhs(a, b, rho, &x, ell).expect("checked"));
        }
        is_zero_vec(&total)
    });
    Ok(results.iter().position(|ok| !ok).map(|i| tuples[i].clone()))
}

/// All non-decreasing index tuples of length `len` over `0..n`.
pub fn multisets(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(n: usize, len: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, len, i, cur, out);
            cur.pop();
        }
    }
    rec(n, len, 0, &mut cur, &mut out);
    out
}
