use qvp_core::checks::{run_suite, Suite};
use serde_json::json;

use crate::args::CheckArgs;
use crate::error::{usage, CliError};
use crate::output::Rendered;

pub fn run(a: &CheckArgs) -> Result<Rendered, CliError> {
    let suite: Suite = a
        .suite
        .parse()
        .map_err(|_| usage(format!("unknown suite `{}` (gamma, combinat, vertex, bethe, all)", a.suite)))?;
    let reports = run_suite(suite);
    let failed: Vec<u8> = reports.iter().filter(|r| !r.passed()).map(|r| r.id).collect();
    let text: String = reports.iter().map(|r| format!("{r}\n")).collect();
    let mut rows = vec![["criterion", "title", "passed", "cases", "failures", "elapsed_ms"].map(String::from).to_vec()];
    for r in &reports {
        rows.push(vec![
            r.id.to_string(),
            r.title.to_string(),
            r.passed().to_string(),
            r.cases.to_string(),
            r.failures.len().to_string(),
            r.elapsed_ms.to_string(),
        ]);
    }
    let criteria: Vec<_> = reports
        .iter()
        .map(|r| {
            json!({
                "id": r.id,
                "title": r.title,
                "passed": r.passed(),
                "cases": r.cases,
                "failures": r.failures,
                "elapsed_ms": r.elapsed_ms,
                "budget_ms": r.budget_ms,
            })
        })
        .collect();
    let payload = json!({ "suite": a.suite, "passed": failed.is_empty(), "criteria": criteria });
    let failure = (!failed.is_empty()).then(|| CliError::Invariant(format!("criteria {failed:?} failed")));
    Ok(Rendered { payload, csv: Some(rows), text: Some(text), failure })
}
