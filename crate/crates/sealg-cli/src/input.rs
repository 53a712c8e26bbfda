//! Algebra ingestion and shared configuration.

use std::path::Path;

use anyhow::{bail, Context, Result};
use sha2::{Digest, Sha256};

use sealg::algebra::{parse_algebra_spec, Algebra};
use sealg::exactla::Field;
use sealg::liealg::Weight;
use sealg::Exec;

/// Loads an algebra from a compact spec or a JSON file path.
pub fn load_algebra<F: Field>(spec: &str) -> Result<Algebra<F>> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
        return Algebra::from_json(&text).with_context(|| format!("parsing algebra JSON in {spec}"));
    }
    if spec.ends_with(".json") {
        bail!("algebra file {spec} does not exist");
    }
    parse_algebra_spec(spec).with_context(|| {
        format!("`{spec}` is neither a file nor a spec like matrix:2, truncpoly:3, quaternion:1,-1, ground")
    })
}

/// SHA-256 of the canonical JSON form of an algebra, in hex.
pub fn algebra_hash<F: Field>(a: &Algebra<F>) -> String {
    let digest = Sha256::digest(a.to_json().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Parses a dominant weight for `sl_n`.
pub fn load_weight(s: &str, n: usize) -> Result<Weight> {
    if n < 2 {
        bail!("n must be at least 2");
    }
    let w = Weight::parse(s).with_context(|| format!("cannot parse weight `{s}`; use comma-separated integers"))?;
    if w.rank() != n - 1 {
        bail!("weight `{s}` has {} coordinates but sl_{n} needs {}", w.rank(), n - 1);
    }
    if w.coords.iter().any(|c| *c < 0) {
        bail!("weight coordinates must be nonnegative");
    }
    Ok(w)
}

/// Settings derived from the global flags.
#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub exec: Exec,
    pub timing: bool,
    pub verbose: bool,
}
