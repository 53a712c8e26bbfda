//! `symcheck`: the symmetric identity for a named map, sampled and exact.

use anyhow::{bail, Result};
use serde_json::json;

use sealg::algebra::{Algebra, LinearMap, SymTensorAlgebra};
use sealg::exactla::Field;
use sealg::seligman::central_trace;
use sealg::symid::{check_identity, identity_holds_polarized, FamilyOptions};

use crate::args::{MapKind, SymcheckArgs};
use crate::input::{algebra_hash, load_algebra, Settings};
use crate::report::{exit, pass_fail, Claim, Outcome, Report};

pub fn run<F: Field>(args: &SymcheckArgs, settings: &Settings) -> Result<Outcome> {
    let a = load_algebra::<F>(&args.algebra)?;
    let ell = if args.map == MapKind::Identity { 1 } else { args.ell };
    if ell == 0 {
        bail!("--ell must be at least 1");
    }
    let order = args.order.unwrap_or(ell + 1);
    if order == 0 {
        bail!("--order must be at least 1");
    }
    let (target, rho, name): (Algebra<F>, LinearMap<F>, String) = match args.map {
        MapKind::Sym => {
            let ts = SymTensorAlgebra::build(&a, ell)?;
            (ts.algebra().clone(), ts.sym_map(), format!("sym_{ell}"))
        }
        MapKind::Trace => {
            let tau = central_trace(&a)?;
            let scale = F::from_i64(ell as i64);
            let images = tau.into_iter().map(|t| vec![t * scale.clone()]).collect();
            (Algebra::ground(), LinearMap::new(a.dim(), 1, images), format!("{ell}τ"))
        }
        MapKind::Identity => (a.clone(), LinearMap::identity(a.dim()), "id".to_string()),
    };
    let opts = FamilyOptions {
        range: args.range,
        random: args.random,
        oracle: true,
        exec: settings.exec,
        ..FamilyOptions::default()
    };
    let sampled = check_identity(&a, &target, &rho, order, opts)?;
    let exact = identity_holds_polarized(&a, &target, &rho, order, settings.exec)?;
    let first_failure = sampled.first_failure.as_ref().map(|x| a.format(x));
    let polarized_witness = exact.as_ref().map(|idx| idx.iter().map(|i| a.labels()[*i].clone()).collect::<Vec<_>>());
    let holds = exact.is_none();
    let consistent = !(holds && sampled.failures > 0) && !(!holds && sampled.proves_identity);
    let claims = vec![
        Claim::new(
            "symmetric_identity",
            if holds { "holds" } else { "fails" },
            json!({
                "map": name,
                "order": order,
                "polarized_counterexample": polarized_witness,
            }),
        ),
        Claim::new(
            "sampled_evaluation",
            pass_fail(sampled.failures == 0),
            json!({
                "samples": sampled.samples,
                "failures": sampled.failures,
                "first_failure": first_failure,
                "exhaustive_grid": sampled.exhaustive_grid,
                "proves_identity": sampled.proves_identity,
            }),
        ),
        Claim::new(
            "recursion_oracle",
            pass_fail(sampled.oracle_mismatches == 0),
            json!({ "mismatches": sampled.oracle_mismatches }),
        ),
    ];
    let mut summary = vec![
        format!("{name} on {} at order {order}: {}", args.algebra, if holds { "PASS" } else { "FAIL" }),
        format!(
            "  {} samples, {} failures, {} oracle mismatches",
            sampled.samples, sampled.failures, sampled.oracle_mismatches
        ),
    ];
    if let Some(x) = &first_failure {
        summary.push(format!("  fails at a = {x}"));
    }
    if !consistent {
        summary.push("  sampled and polarized checks disagree".into());
    }
    let config = json!({
        "algebra": args.algebra,
        "algebra_sha256": algebra_hash(&a),
        "map": name,
        "ell": ell,
        "order": order,
        "range": args.range,
        "random": args.random,
        "scalar": F::mode_name(),
    });
    let report = Report { command: "symcheck".into(), config, claims, timing: None };
    let code = if consistent && sampled.oracle_mismatches == 0 { exit::OK } else { exit::ERROR };
    Ok(Outcome { report, summary, exit_code: code })
}
