//! `verify-all`: the full verification suite.

use anyhow::{bail, Result};
use serde_json::json;

use sealg::exactla::{PRIME_A, PRIME_B};
use sealg::verify::{all_passed, run_all, Verdict, VerifyConfig};

use crate::args::{Scalar, VerifyArgs};
use crate::input::Settings;
use crate::report::{exit, Claim, Outcome, Report};

/// Runs every criterion. `--scalar fp --prime P` restricts the prime-field cases to `P`.
pub fn run(args: &VerifyArgs, scalar: Scalar, prime: Option<u64>, settings: &Settings) -> Result<Outcome> {
    let primes = match (scalar, prime) {
        (Scalar::Fp, Some(p)) => vec![p],
        (Scalar::Q, Some(_)) => bail!("--prime needs --scalar fp"),
        _ => vec![PRIME_A, PRIME_B],
    };
    let cfg =
        VerifyConfig { quick: args.quick, exec: settings.exec, mat4_primes: primes.clone(), ..VerifyConfig::default() };
    let outcomes = run_all(&cfg);
    let claims = outcomes
        .iter()
        .map(|o| {
            let status = match o.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
                Verdict::NotReproduced => "not-reproduced",
                Verdict::Skipped => "skipped",
            };
            let mut data =
                json!({ "id": o.id, "title": o.title, "details": o.details, "budget_seconds": o.budget_seconds });
            if settings.timing {
                data["seconds"] = json!(o.seconds);
            }
            Claim::new(&format!("criterion_{}", o.id), status, data)
        })
        .collect();
    let mut summary: Vec<String> = Vec::new();
    for o in &outcomes {
        summary.push(o.line());
        if settings.verbose {
            summary.extend(o.details.iter().map(|d| format!("    {d}")));
        }
    }
    let passed = all_passed(&outcomes);
    summary.push(if passed { "all criteria passed".into() } else { "some criteria failed".into() });
    let config = json!({ "quick": args.quick, "primes": primes });
    let report = Report { command: "verify-all".into(), config, claims, timing: None };
    Ok(Outcome { report, summary, exit_code: if passed { exit::OK } else { exit::ERROR } })
}
