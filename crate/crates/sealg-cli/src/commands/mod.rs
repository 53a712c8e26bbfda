//! Command implementations and scalar-field dispatch.

pub mod seligman;
pub mod symcheck;
pub mod tsa;
pub mod verify;
pub mod weyl;

use anyhow::{bail, Result};
use serde_json::{json, Value};

use sealg::algebra::Algebra;
use sealg::exactla::{Fa, Fb, Fc, Field, PRIME_A, PRIME_B, PRIME_C, Q, SUPPORTED_PRIMES};

use crate::args::{Command, GlobalArgs, Scalar};
use crate::input::Settings;
use crate::report::Outcome;

/// `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Nonzero structure constants as `[a, b, c, value]` for `e_a e_b = Σ value·e_c`.
pub fn structure_constants<F: Field>(a: &Algebra<F>) -> Vec<Value> {
    let mut out = Vec::new();
    for x in 0..a.dim() {
        for y in 0..a.dim() {
            for (c, v) in a.mul_basis(x, y).entries() {
                out.push(json!([x, y, c, v.to_exact_string()]));
            }
        }
    }
    out
}

fn run_in<F: Field>(command: &Command, settings: &Settings) -> Result<Outcome> {
    match command {
        Command::Tsa(a) => tsa::run::<F>(a, settings),
        Command::Symcheck(a) => symcheck::run::<F>(a, settings),
        Command::Seligman(a) => seligman::run::<F>(a, settings),
        Command::Weyl(a) => weyl::run::<F>(a, settings),
        Command::VerifyAll(_) => unreachable!("verify-all selects its own fields"),
    }
}

/// Runs a command over the scalar field chosen by the global flags.
pub fn dispatch(global: &GlobalArgs, command: &Command, settings: &Settings) -> Result<Outcome> {
    if let Command::VerifyAll(a) = command {
        if let Some(p) = global.prime {
            check_prime(p)?;
        }
        return verify::run(a, global.scalar, global.prime, settings);
    }
    match global.scalar {
        Scalar::Q => {
            if global.prime.is_some() {
                bail!("--prime needs --scalar fp");
            }
            run_in::<Q>(command, settings)
        }
        Scalar::Fp => match global.prime.unwrap_or(PRIME_A) {
            PRIME_A => run_in::<Fa>(command, settings),
            PRIME_B => run_in::<Fb>(command, settings),
            PRIME_C => run_in::<Fc>(command, settings),
            p => Err(check_prime(p).unwrap_err()),
        },
    }
}

fn check_prime(p: u64) -> Result<()> {
    if SUPPORTED_PRIMES.contains(&p) {
        Ok(())
    } else {
        bail!("unsupported prime {p}; choose one of {SUPPORTED_PRIMES:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, 3), 4);
        assert_eq!(binomial(7, 0), 1);
    }

    #[test]
    fn structure_constants_of_ground_field() {
        assert_eq!(structure_constants(&Algebra::<Q>::ground()), vec![json!([0, 0, 0, "1/1"])]);
    }

    #[test]
    fn primes_are_checked() {
        assert!(check_prime(PRIME_B).is_ok());
        assert!(check_prime(101).is_err());
    }
}
