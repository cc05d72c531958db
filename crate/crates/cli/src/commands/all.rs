use std::io::Write;

use gmlab_core::suite::run_all;
use serde::Serialize;

use crate::cache;
use crate::config::RunConfig;
use crate::report::Report;
use crate::CliError;

#[derive(Serialize)]
struct Summary<'a> {
    id: u8,
    title: &'a str,
    passed: bool,
    checks: usize,
    failures: Vec<&'a str>,
}

pub fn run(cfg: &RunConfig, log: &mut dyn Write) -> Result<Report, CliError> {
    let dir = cfg.cache_dir();
    let (enumeration, source) = cache::enumeration(None, None, dir.as_deref())?;
    let _ = writeln!(log, "{}", super::vf::describe(&source));
    let params = cfg.suite_params();
    let criteria = run_all(&params, Some(enumeration));
    let mut report = Report::new("all")
        .input("seed", params.seed)
        .input("round_trips", params.round_trips)
        .input("lifts", params.lifts)
        .input("numeric_samples", params.numeric_samples);
    let mut body = String::new();
    let mut summaries = Vec::new();
    for c in &criteria {
        body.push_str(&format!(
            "criterion {:>2}: {} ({}, {} ms)\n",
            c.id,
            if c.passed() { "PASS" } else { "FAIL" },
            c.title,
            c.elapsed.as_millis()
        ));
        for k in &c.checks {
            let mut k = k.clone();
            k.name = format!("[{}] {}", c.id, k.name);
            report.checks.push(k);
        }
        summaries.push(Summary {
            id: c.id,
            title: &c.title,
            passed: c.passed(),
            checks: c.checks.len(),
            failures: c.failures().map(|k| k.name.as_str()).collect(),
        });
    }
    Ok(report.payload(&summaries, body).finish())
}
