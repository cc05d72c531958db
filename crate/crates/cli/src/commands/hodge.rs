use clap::Subcommand;
use gmlab_core::ledger::{derive_diamond, Variety};
use gmlab_core::suite::{golden_diamond, golden_dimensions, Tag};

use super::from_criterion;
use crate::report::Report;
use crate::CliError;

#[derive(Debug, Subcommand)]
pub enum HodgeCmd {
    /// Derive a Hodge diamond step by step.
    Diamond {
        /// `Gr`, `Y` or `X`.
        #[arg(long)]
        variety: Variety,
        #[arg(long, default_value_t = 5)]
        p: u64,
    },
    /// Cohomology of the tangent bundles of Y and X.
    Tangent {
        #[arg(long, default_value_t = 5)]
        p: u64,
    },
}

fn expected_euler(v: Variety) -> i128 {
    match v {
        Variety::Gr => 10,
        Variety::Y => -12,
        Variety::X => 32,
    }
}

pub fn run(cmd: &HodgeCmd) -> Result<Report, CliError> {
    match cmd {
        HodgeCmd::Diamond { variety, p } => {
            let d = derive_diamond(*variety, *p).map_err(CliError::core)?;
            let mut report = Report::new("hodge diamond").input("variety", variety.to_string()).input("p", p);
            let dm = &d.diamond;
            report.check("Serre symmetric", dm.is_serre_symmetric(), "", Tag::Derived);
            let e = dm.topological_euler();
            let want = expected_euler(*variety);
            let tag = if *variety == Variety::X { Tag::Derived } else { Tag::Claim };
            report.check(format!("Euler characteristic {want}"), e == want, e.to_string(), tag);
            match variety {
                Variety::Gr => {
                    let ok = (0..=6).all(|i| (0..=6).all(|j| dm.get(i, j) == if i == j { [1, 1, 2, 2, 2, 1, 1][i] } else { 0 }));
                    report.check("h^{i,i} = 1,1,2,2,2,1,1, zero off the diagonal", ok, "", Tag::Claim);
                }
                v => {
                    let g = golden_diamond(*v);
                    let rows: Vec<Vec<u128>> = (0..=2 * dm.dim).map(|k| dm.row(k)).collect();
                    report.check("matches the stated diamond", rows == g.rows, format!("middle row {:?}", dm.row(dm.dim)), Tag::Claim);
                }
            }
            let body = dm.to_markdown();
            Ok(report.payload(&d, body).finish())
        }
        HodgeCmd::Tangent { p } => {
            let (t, trace) = gmlab_core::ledger::tangent_report(*p).map_err(CliError::core)?;
            let report = Report::new("hodge tangent").input("p", p);
            let report = from_criterion(report, &golden_dimensions(*p));
            let body = format!(
                "h*(T_Y) = {:?}\nh*(T_X) = {:?}\nh^0(O_Y(1)) = {}, h^0(O_Y(2)) = {}\naxioms: {}\n",
                t.h_tangent_y,
                t.h_tangent_x,
                t.h0_oy1,
                t.h0_oy2,
                t.axioms.join("; ")
            );
            Ok(report.payload(serde_json::json!({ "report": t, "trace": trace }), body).finish())
        }
    }
}
