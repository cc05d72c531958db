use clap::Subcommand;
use gmlab_core::ckmotives::{check_chow_kunneth, Degrees, Variety};
use gmlab_core::suite::Tag;

use crate::report::Report;
use crate::CliError;

#[derive(Debug, Subcommand)]
pub enum CkCmd {
    /// Idempotence, orthogonality and completeness of the projectors.
    Verify {
        /// `gm4` or `gm6`.
        #[arg(long)]
        variety: Variety,
    },
}

pub fn run(cmd: &CkCmd) -> Result<Report, CliError> {
    match cmd {
        CkCmd::Verify { variety } => {
            let r = check_chow_kunneth(&Degrees::standard(*variety));
            let mut report = Report::new("ck verify").input("variety", variety.to_string());
            for c in &r.checks {
                report.check(&c.name, c.passed, "", Tag::Derived);
            }
            let body: String = r.projectors.iter().map(|(i, s)| format!("π^{i} = {s}\n")).collect();
            Ok(report.payload(&r, body).finish())
        }
    }
}
