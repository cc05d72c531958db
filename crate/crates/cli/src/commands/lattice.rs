use clap::Subcommand;
use gmlab_core::lattice::{gm_lattice, verify_gm_lattice_facts};
use gmlab_core::suite::Tag;

use crate::report::Report;
use crate::CliError;

#[derive(Debug, Subcommand)]
pub enum LatticeCmd {
    /// The rank-22 lattice and the I(2)^2 complement.
    Verify,
}

pub fn run(cmd: &LatticeCmd) -> Result<Report, CliError> {
    match cmd {
        LatticeCmd::Verify => {
            let facts = verify_gm_lattice_facts();
            let mut report = Report::new("lattice verify");
            for c in &facts.checks {
                report.check(&c.name, c.passed, &c.detail, Tag::Derived);
            }
            let l = gm_lattice();
            let payload = serde_json::json!({ "gram": l.to_i64_rows().map_err(CliError::core)?, "checks": facts.checks });
            Ok(report.payload(payload, String::new()).finish())
        }
    }
}
