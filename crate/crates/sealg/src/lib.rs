//! Exact computation of Seligman algebras `Se^λ = U(L₀)/J^λ` for the root-graded Lie algebras
//! `sl_n(A)` over finite-dimensional associative algebras `A`.
//!
//! The crate is layered bottom-up:
//!
//! * [`exactla`]: exact fields (ℚ and 𝔽_p) and sparse linear algebra.
//! * [`algebra`]: associative algebras by structure constants, tensor powers and the
//!   symmetric tensor algebras `TS^ℓ(A)`.
//! * [`symid`]: partitions of `ℓ` and the `ℓ`-th symmetric identity.
//! * [`liealg`]: type-A root data and `sl_n(A)` with its distinguished elements.
//! * [`envelope`]: PBW normal forms in universal enveloping algebras and the projection `π₀`.
//! * [`seligman`]: the ideal `J^λ`, truncated saturation with certification, and explicit targets.
//! * [`weylmod`]: bounded-depth global Weyl modules and annihilator comparison.
//! * [`verify`]: the reproducible verification suite shared by the CLI and the tests.

pub mod algebra;
pub mod envelope;
pub mod exactla;
pub mod exec;
pub mod liealg;
pub mod seligman;
pub mod symid;
pub mod verify;
pub mod weylmod;

pub use exec::Exec;
