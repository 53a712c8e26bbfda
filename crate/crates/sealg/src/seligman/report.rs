//! JSON rendering of quotient results.

use serde::Serialize;
use serde_json::{json, Value};

use crate::exactla::Field;

use super::QuotientResult;

/// One saturation layer in a report.
#[derive(Clone, Debug, Serialize)]
pub struct TraceJson {
    pub n: usize,
    pub quotient_dim: usize,
    pub rank: usize,
    pub closure: bool,
}

/// The report object of a computed quotient. Structure constants are listed as
/// `[a, b, c, value]` for every nonzero coefficient of `e_a e_b` on `e_c`.
pub fn quotient_report<F: Field>(r: &QuotientResult<F>) -> Value {
    let trace: Vec<TraceJson> = r
        .trace
        .iter()
        .map(|t| TraceJson { n: t.n, quotient_dim: t.quotient_dim, rank: t.rank, closure: t.closure })
        .collect();
    let structure: Option<Vec<Value>> = r.structure.as_ref().map(|se| {
        let d = se.dim();
        let mut out = Vec::new();
        for a in 0..d {
            for b in 0..d {
                for (c, v) in se.mul_basis(a, b).entries() {
                    out.push(json!([a, b, c, v.to_exact_string()]));
                }
            }
        }
        out
    });
    let witness = r.witness.as_ref().map(|(desc, s)| {
        json!({
            "description": desc,
            "admissible": s.is_admissible,
            "image_dim": s.image_dim,
        })
    });
    json!({
        "lambda": r.lambda.coords,
        "status": r.status.tag(),
        "quotient_dim": r.quotient_dim,
        "saturation_degree": r.n_used,
        "trace": trace,
        "basis_labels": r.basis_labels,
        "structure_constants": structure,
        "witness": witness,
        "scalar_mode": r.scalar_mode,
        "dim_bound": r.dim_bound.to_string(),
        "linear_ideal_dim": r.linear_ideal_dim,
        "restarts": r.restarts,
        "generator_count": r.generator_count,
        "relaxed_truncated": r.relaxed_truncated,
        "note": r.note,
    })
}
