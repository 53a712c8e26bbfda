//! `tsa`: the symmetric tensor algebra `TS^ℓ(A)`.

use anyhow::Result;
use serde_json::json;

use sealg::algebra::SymTensorAlgebra;
use sealg::exactla::Field;

use crate::args::TsaArgs;
use crate::input::{algebra_hash, load_algebra, Settings};
use crate::report::{exit, pass_fail, Claim, Outcome, Report};

use super::{binomial, structure_constants};

pub fn run<F: Field>(args: &TsaArgs, settings: &Settings) -> Result<Outcome> {
    let a = load_algebra::<F>(&args.algebra)?;
    let ts = SymTensorAlgebra::build(&a, args.ell)?;
    let labels: Vec<String> = ts
        .words()
        .iter()
        .map(|w| {
            if w.is_empty() {
                "1".to_string()
            } else {
                w.iter().map(|b| format!("sym({})", a.labels()[*b])).collect::<Vec<_>>().join("·")
            }
        })
        .collect();
    let expected = binomial(a.dim() + args.ell - 1, args.ell);
    let center = ts.center_dim();
    let claims = vec![
        Claim::new("ts_dimension", pass_fail(ts.dim() == expected), json!({ "dim": ts.dim(), "expected": expected })),
        Claim::new("ts_basis", "computed", json!({ "labels": labels })),
        Claim::new("ts_center", "computed", json!({ "center_dim": center })),
        Claim::new("ts_structure_constants", "computed", json!({ "entries": structure_constants(ts.algebra()) })),
    ];
    let mut summary = vec![
        format!("TS^{}({}) over {}", args.ell, args.algebra, F::mode_name()),
        format!("  dim = {} (C({}, {}) = {expected})", ts.dim(), a.dim() + args.ell - 1, args.ell),
        format!("  center dim = {center}"),
    ];
    if settings.verbose {
        summary.push(format!("  basis: {}", labels.join(", ")));
    }
    let config = json!({
        "algebra": args.algebra,
        "algebra_sha256": algebra_hash(&a),
        "ell": args.ell,
        "scalar": F::mode_name(),
    });
    let report = Report { command: "tsa".into(), config, claims, timing: None };
    let code = if ts.dim() == expected { exit::OK } else { exit::ERROR };
    Ok(Outcome { report, summary, exit_code: code })
}
