//! `seligman`: the quotient `Se^λ = U(L₀)/J^λ` with certification.

use anyhow::Result;
use clap::ValueEnum;
use serde_json::json;

use sealg::exactla::Field;
use sealg::liealg::{GradedLie, Weight};
use sealg::seligman::{
    central_trace_target, check_iso, compute_seligman, lie_hom_violation, quaternion_target, quotient_report,
    ts_lambda_target, SeligmanError, SeligmanOptions, Status, Witness,
};

use crate::args::{SeligmanArgs, TargetChoice};
use crate::input::{algebra_hash, load_algebra, load_weight, Settings};
use crate::report::{exit, Claim, Outcome, Report};

/// Exit code for a quotient status.
pub fn status_code(status: &Status) -> u8 {
    match status {
        Status::Certified | Status::CertifiedZero => exit::OK,
        Status::Stable(_) => exit::STABLE,
        Status::Inconclusive(_) => exit::INCONCLUSIVE,
    }
}

fn build_target<F: Field>(
    l: &GradedLie<F>,
    lambda: &Weight,
    choice: TargetChoice,
) -> Result<Option<Witness<F>>, SeligmanError> {
    let candidates: &[TargetChoice] = match choice {
        TargetChoice::None => return Ok(None),
        TargetChoice::Auto => &[TargetChoice::Ts, TargetChoice::Quaternion, TargetChoice::CentralTrace],
        TargetChoice::Ts => &[TargetChoice::Ts],
        TargetChoice::Quaternion => &[TargetChoice::Quaternion],
        TargetChoice::CentralTrace => &[TargetChoice::CentralTrace],
    };
    let mut last = None;
    for c in candidates {
        let built = match c {
            TargetChoice::Ts => ts_lambda_target(l, lambda),
            TargetChoice::Quaternion => quaternion_target(l, lambda),
            _ => central_trace_target(l, lambda),
        };
        match built {
            Ok(w) if lie_hom_violation(l, &w).is_none() => return Ok(Some(w)),
            Ok(w) => last = Some(SeligmanError::Precondition(format!("{} is not a Lie homomorphism", w.description))),
            Err(e) => last = Some(e),
        }
    }
    match (choice, last) {
        (TargetChoice::Auto, _) | (_, None) => Ok(None),
        (_, Some(e)) => Err(e),
    }
}

pub fn run<F: Field>(args: &SeligmanArgs, settings: &Settings) -> Result<Outcome> {
    let a = load_algebra::<F>(&args.algebra)?;
    let lambda = load_weight(&args.lambda, args.n)?;
    let l = GradedLie::sl_split(&a, args.n, args.k)?;
    let defaults = SeligmanOptions::default();
    let opts = SeligmanOptions {
        n_max: args.nmax,
        relaxed: !args.no_relaxed,
        m_cap: args.m_cap,
        monomial_guard: args.monomial_guard.unwrap_or(defaults.monomial_guard),
        exec: settings.exec,
    };
    let witness = build_target(&l, &lambda, args.target)?;
    let result = compute_seligman(&l, &lambda, &opts, witness.as_ref())?;
    let status_tag = result.status.tag();
    let mut claims = vec![Claim::new("quotient", status_tag.clone(), quotient_report(&result))];
    let within = result.quotient_dim.map(|d| num::BigUint::from(d) <= result.dim_bound);
    claims.push(Claim::new(
        "dimension_bound",
        match within {
            Some(true) => "pass",
            Some(false) => "fail",
            None => "unknown",
        },
        json!({ "dim": result.quotient_dim, "bound": result.dim_bound.to_string() }),
    ));
    let mut iso_line = None;
    let mut iso_failed = false;
    if let (Some(w), Status::Certified) = (&witness, &result.status) {
        let (status, detail) = match check_iso(&result, w)? {
            None => ("pass", None),
            Some(f) => ("fail", Some(f.to_string())),
        };
        iso_failed = detail.is_some();
        iso_line = Some(format!("  isomorphic to {}: {status}", w.description));
        claims.push(Claim::new("isomorphism_to_target", status, json!({ "target": w.description, "failure": detail })));
    }
    let dim = result.quotient_dim.map_or_else(|| "unknown".to_string(), |d| d.to_string());
    let mut summary = vec![
        format!("Se^({}) for sl_{}({}) over {}", lambda.to_compact(), args.n, args.algebra, F::mode_name()),
        format!("  status {status_tag}, dim {dim}, saturation degree {}", result.n_used),
        format!("  dimension bound {}", result.dim_bound),
    ];
    summary.extend(iso_line);
    if let Some(note) = &result.note {
        summary.push(format!("  note: {note}"));
    }
    if settings.verbose {
        summary.push(format!("  basis: {}", result.basis_labels.join(", ")));
        for t in &result.trace {
            summary.push(format!(
                "  N = {}: quotient dim {}, rank {}, closure {}",
                t.n, t.quotient_dim, t.rank, t.closure
            ));
        }
    }
    let config = json!({
        "algebra": args.algebra,
        "algebra_sha256": algebra_hash(&a),
        "n": args.n,
        "lambda": lambda.coords,
        "k": args.k,
        "n_max": opts.n_max_for(&lambda),
        "m_cap": opts.m_cap_for(&lambda),
        "relaxed": opts.relaxed,
        "target": args.target.to_possible_value().map(|v| v.get_name().to_string()),
        "scalar": F::mode_name(),
    });
    let report = Report { command: "seligman".into(), config, claims, timing: None };
    let code = if iso_failed { exit::ERROR } else { status_code(&result.status) };
    Ok(Outcome { report, summary, exit_code: code })
}
