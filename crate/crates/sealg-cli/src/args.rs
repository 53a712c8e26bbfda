//! Command-line argument definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact computations with root-graded Lie algebras `sl_n(A)` and their Seligman quotients.
#[derive(Debug, Parser)]
#[command(name = "sealg", version, about)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand.
#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Print the machine-readable JSON report instead of the human summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Scalar field: exact rationals or a prime field.
    #[arg(long, value_enum, default_value_t = Scalar::Q, global = true)]
    pub scalar: Scalar,
    /// Modulus for `--scalar fp`; one of the built-in primes.
    #[arg(long, global = true)]
    pub prime: Option<u64>,
    /// Run every loop on the calling thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Print additional detail in the human summary.
    #[arg(short, long, global = true)]
    pub verbose: bool,
}

/// Scalar field selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scalar {
    /// Rational numbers.
    Q,
    /// Integers modulo a large prime.
    Fp,
}

/// The subcommands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the symmetric tensor algebra `TS^ℓ(A)`.
    Tsa(TsaArgs),
    /// Check the symmetric identity for a named linear map out of `A`.
    Symcheck(SymcheckArgs),
    /// Compute the quotient `Se^λ = U(L₀)/J^λ` for `sl_n(A)`.
    Seligman(SeligmanArgs),
    /// Weight spaces of the global Weyl module and the annihilator comparison.
    Weyl(WeylArgs),
    /// Run the full verification suite.
    VerifyAll(VerifyArgs),
}

/// Arguments of `tsa`.
#[derive(Debug, Args)]
pub struct TsaArgs {
    /// Algebra: `matrix:d`, `truncpoly:m`, `quaternion:a,b`, `ground`, `op:<spec>` or a JSON file.
    #[arg(long)]
    pub algebra: String,
    /// Tensor degree `ℓ ≥ 1`.
    #[arg(long)]
    pub ell: usize,
}

/// The maps available to `symcheck`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MapKind {
    /// `sym_ℓ : A → TS^ℓ(A)`.
    Sym,
    /// `ℓτ : A → k` for central `A = k·1 ⊕ [A,A]`.
    Trace,
    /// `id : A → A`.
    Identity,
}

/// Arguments of `symcheck`.
#[derive(Debug, Args)]
pub struct SymcheckArgs {
    /// Algebra: `matrix:d`, `truncpoly:m`, `quaternion:a,b`, `ground`, `op:<spec>` or a JSON file.
    #[arg(long)]
    pub algebra: String,
    /// The map to test.
    #[arg(long, value_enum)]
    pub map: MapKind,
    /// The scale `ℓ` of the map, with `ρ(1) = ℓ·1`. Ignored for `identity`.
    #[arg(long, default_value_t = 1)]
    pub ell: usize,
    /// Order of the identity; defaults to `ℓ + 1`.
    #[arg(long)]
    pub order: Option<usize>,
    /// Coefficient range of the sample grid.
    #[arg(long, default_value_t = 2)]
    pub range: i64,
    /// Number of random samples added to the grid.
    #[arg(long, default_value_t = 100)]
    pub random: usize,
}

/// Explicit targets for the lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TargetChoice {
    /// The first applicable target of `ts`, `quaternion`, `central-trace`.
    Auto,
    /// No target; only the upper bound is computed.
    None,
    /// Tensor products of symmetric tensor algebras.
    Ts,
    /// `A` itself for `λ = ϖ₁ + ϖ₂` in `sl₄(A)`.
    Quaternion,
    /// The ground field through `ℓτ`.
    CentralTrace,
}

/// Arguments of `seligman`.
#[derive(Debug, Args)]
pub struct SeligmanArgs {
    /// Algebra: `matrix:d`, `truncpoly:m`, `quaternion:a,b`, `ground`, `op:<spec>` or a JSON file.
    #[arg(long)]
    pub algebra: String,
    /// Matrix size `n ≥ 2`.
    #[arg(long)]
    pub n: usize,
    /// Dominant weight in fundamental-weight coordinates, e.g. `1,1,0`.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    /// Largest saturation degree.
    #[arg(long)]
    pub nmax: Option<usize>,
    /// Split point of the diagonal coordinates of `L₀`.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Explicit algebra used to certify the lower bound.
    #[arg(long, value_enum, default_value_t = TargetChoice::Auto)]
    pub target: TargetChoice,
    /// Largest string length of the relaxed generator families.
    #[arg(long)]
    pub m_cap: Option<usize>,
    /// Use only the defining generators.
    #[arg(long)]
    pub no_relaxed: bool,
    /// Upper limit on monomials per saturation matrix.
    #[arg(long)]
    pub monomial_guard: Option<u128>,
}

/// Arguments of `weyl`.
#[derive(Debug, Args)]
pub struct WeylArgs {
    /// Algebra: `matrix:d`, `truncpoly:m`, `quaternion:a,b`, `ground`, `op:<spec>` or a JSON file.
    #[arg(long)]
    pub algebra: String,
    /// Matrix size `n ≥ 2`.
    #[arg(long)]
    pub n: usize,
    /// Dominant weight in fundamental-weight coordinates, e.g. `1,1,0`.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    /// Reporting depth; defaults to the height of `λ` plus two.
    #[arg(long)]
    pub depth: Option<usize>,
    /// Degree bound of the annihilator comparison; `0` skips it.
    #[arg(long, default_value_t = 2)]
    pub ann_n: usize,
    /// Largest saturation degree of the quotient computation.
    #[arg(long)]
    pub nmax: Option<usize>,
    /// Extra depth used to close the relation space.
    #[arg(long, default_value_t = 2)]
    pub slack: usize,
    /// Upper limit on the dimension of the truncated induced module.
    #[arg(long, default_value_t = 200_000)]
    pub basis_guard: usize,
}

/// Arguments of `verify-all`.
#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Restrict to `ℓ ≤ 2` and `dim A ≤ 4`.
    #[arg(long)]
    pub quick: bool,
}
