//! `weyl`: weight spaces of the global Weyl module and the annihilator comparison.

use anyhow::Result;
use serde_json::json;

use sealg::exactla::Field;
use sealg::liealg::GradedLie;
use sealg::seligman::{compute_seligman, SeligmanOptions};
use sealg::weylmod::{ann_vs_j, default_depth, induce_bounded, SeModule, SliceStatus, WeylOptions};

use crate::args::WeylArgs;
use crate::input::{algebra_hash, load_algebra, load_weight, Settings};
use crate::report::{exit, pass_fail, Claim, Outcome, Report};

use super::seligman::status_code;

pub fn run<F: Field>(args: &WeylArgs, settings: &Settings) -> Result<Outcome> {
    let a = load_algebra::<F>(&args.algebra)?;
    let lambda = load_weight(&args.lambda, args.n)?;
    let l = GradedLie::sl(&a, args.n)?;
    let depth = args.depth.unwrap_or_else(|| default_depth(&lambda));
    let sel = SeligmanOptions { n_max: args.nmax, exec: settings.exec, ..SeligmanOptions::default() };
    let opts =
        WeylOptions { slack: args.slack, basis_guard: args.basis_guard, exec: settings.exec, ..WeylOptions::default() };
    let config = json!({
        "algebra": args.algebra,
        "algebra_sha256": algebra_hash(&a),
        "n": args.n,
        "lambda": lambda.coords,
        "depth": depth,
        "ann_n": args.ann_n,
        "n_max": sel.n_max_for(&lambda),
        "slack": opts.slack,
        "scalar": F::mode_name(),
    });
    let head = format!("W({}) for sl_{}({}) over {}", lambda.to_compact(), args.n, args.algebra, F::mode_name());
    let result = compute_seligman(&l, &lambda, &sel, None)?;
    let quotient = Claim::new(
        "seligman_quotient",
        result.status.tag(),
        json!({ "quotient_dim": result.quotient_dim, "saturation_degree": result.n_used }),
    );
    let Some(se) = result.structure.as_ref().filter(|_| result.status.is_certified()) else {
        let summary = vec![head, format!("  Se^λ is {}; the module is not induced", result.status.tag())];
        let report = Report { command: "weyl".into(), config, claims: vec![quotient], timing: None };
        return Ok(Outcome { report, summary, exit_code: status_code(&result.status) });
    };
    let slice = induce_bounded(&l, &result, &SeModule::regular(se), depth, &opts)?;
    let table = slice.weight_table();
    let by_depth = slice.dims_by_depth();
    let (slice_tag, mut code) = match slice.status {
        SliceStatus::Stable { window } => (format!("stable({window})"), exit::STABLE),
        SliceStatus::Inconclusive { window } => (format!("inconclusive({window})"), exit::INCONCLUSIVE),
    };
    let violation = slice.relations_violation(&l);
    if violation.is_some() {
        code = exit::ERROR;
    }
    let mut claims = vec![
        quotient,
        Claim::new(
            "weight_table",
            slice_tag.clone(),
            json!({ "table": table, "dims_by_depth": by_depth, "window": slice.window }),
        ),
        Claim::new("module_relations", pass_fail(violation.is_none()), json!({ "violation": violation })),
    ];
    let mut summary = vec![
        head,
        format!("  Se^λ {} of dim {}", result.status.tag(), se.dim()),
        format!("  slice {slice_tag}, dims by depth 0..={depth}: {by_depth:?}"),
    ];
    if settings.verbose {
        for row in &table {
            summary.push(format!("  λ − {:?}: {}", row.offset, row.dim));
        }
    }
    if let Some(v) = &violation {
        summary.push(format!("  relation violated: {v}"));
    }
    if args.ann_n > 0 {
        let ann = ann_vs_j(&l, &lambda, args.ann_n, &sel)?;
        let equal = ann.equal();
        summary.push(format!(
            "  Ann(w_λ) = J^λ in degree ≤ {}: {} (dim J {}, dim Ann {})",
            ann.n,
            if equal { "yes" } else { "no" },
            ann.j_dim,
            ann.ann_dim
        ));
        claims.push(Claim::new("annihilator_equals_j", pass_fail(equal), serde_json::to_value(&ann)?));
        if !equal && code != exit::ERROR {
            code = exit::INCONCLUSIVE;
        }
    }
    let report = Report { command: "weyl".into(), config, claims, timing: None };
    Ok(Outcome { report, summary, exit_code: code })
}
