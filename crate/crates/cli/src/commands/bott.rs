use clap::{Args, Subcommand};
use gmlab_core::bott::{bundle_cohomology, euler_char, resolve_cohomology, weight_table, BundleKind, BundleSpec, CohomTable};
use gmlab_core::suite::{compare_weight_table, Criterion, Tag};

use crate::report::Report;
use crate::CliError;

#[derive(Debug, Subcommand)]
pub enum BottCmd {
    /// The weight table behind the cohomology of a bundle.
    Table {
        #[command(flatten)]
        bundle: BundleArgs,
        /// Also print a sorting permutation on rows without a dominant w•λ.
        #[arg(long)]
        all_w: bool,
    },
    /// h^j for j = 0..6, trying the Serre dual when needed.
    Cohomology {
        #[command(flatten)]
        bundle: BundleArgs,
    },
}

#[derive(Debug, Args)]
pub struct BundleArgs {
    /// `o`, `tangent` or `omegaI` for 1 <= I <= 6.
    #[arg(long)]
    pub bundle: String,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub twist: i64,
    #[arg(long, default_value_t = 5)]
    pub p: u64,
}

impl BundleArgs {
    fn spec(&self) -> Result<BundleSpec, CliError> {
        let kind: BundleKind = self.bundle.parse().map_err(|e: gmlab_core::bott::BottError| CliError::Usage(e.to_string()))?;
        Ok(BundleSpec {
            kind,
            twist: self.twist,
        })
    }
}

/// Values stated for p = 5 that a cohomology run can be checked against.
fn stated(b: &BundleSpec) -> Option<[u128; 7]> {
    let zero = [0; 7];
    match (b.kind, b.twist) {
        (BundleKind::Tangent, 0) => Some([24, 0, 0, 0, 0, 0, 0]),
        (BundleKind::Tangent, -1 | -2) => Some(zero),
        (BundleKind::Omega(1), -1 | -2) | (BundleKind::Omega(2), -1 | -2) | (BundleKind::Omega(3), -1) => Some(zero),
        (BundleKind::Omega(2), -3) => Some([0, 0, 0, 0, 0, 5, 0]),
        _ => None,
    }
}

fn cohomology_checks(report: &mut Report, t: &CohomTable) {
    let entries: Vec<String> = t.entries.iter().map(ToString::to_string).collect();
    let entries = entries.join(", ");
    report.check("all h^j determined", t.is_exact(), entries.clone(), Tag::Derived);
    if t.is_exact() {
        let alt: i128 = (0..7).map(|j| if j % 2 == 0 { 1 } else { -1 } * t.h(j).expect("exact") as i128).sum();
        let chi = euler_char(&t.bundle);
        report.check("alternating sum equals chi", alt == chi, format!("{alt} vs {chi}"), Tag::Derived);
    }
    if t.p == 5 {
        if let Some(want) = stated(&t.bundle) {
            let ok = (0..7).all(|j| t.h(j) == Some(want[j]));
            report.check(format!("h*({}) as stated", t.bundle), ok, entries, Tag::Claim);
        }
    }
}

fn cohomology_markdown(t: &CohomTable) -> String {
    let cells: Vec<String> = t.entries.iter().map(ToString::to_string).collect();
    format!(
        "| j | 0 | 1 | 2 | 3 | 4 | 5 | 6 |\n|---|---|---|---|---|---|---|---|\n| h^j({}) | {} |\n\nchi = {}, route: {:?}\n",
        t.bundle,
        cells.join(" | "),
        t.chi,
        t.route
    )
}

pub fn run(cmd: &BottCmd) -> Result<Report, CliError> {
    match cmd {
        BottCmd::Table { bundle, all_w } => {
            let b = bundle.spec()?;
            let table = weight_table(&b, bundle.p).map_err(CliError::core)?;
            let coh = bundle_cohomology(&b, bundle.p).map_err(CliError::core)?;
            let mut report = Report::new("bott table")
                .input("bundle", b.to_string())
                .input("p", bundle.p)
                .input("all_w", all_w);
            let mult: u32 = table.rows.iter().map(|r| r.multiplicity).sum();
            report.check("multiplicities sum to the rank", mult as usize == b.rank(), format!("{mult}"), Tag::Derived);
            if bundle.p == 5 && b.kind == BundleKind::Omega(2) && matches!(b.twist, -2 | -3) {
                let mut c = Criterion::new(1, "golden weight table");
                compare_weight_table(&mut c, b.twist);
                report.checks.extend(c.checks);
            }
            cohomology_checks(&mut report, &coh);
            let body = format!("{}\n{}", table.to_markdown(*all_w), cohomology_markdown(&coh));
            let payload = serde_json::json!({ "table": table, "cohomology": coh });
            Ok(report.payload(payload, body).finish())
        }
        BottCmd::Cohomology { bundle } => {
            let b = bundle.spec()?;
            let t = resolve_cohomology(&b, bundle.p).map_err(CliError::core)?;
            let mut report = Report::new("bott cohomology").input("bundle", b.to_string()).input("p", bundle.p);
            cohomology_checks(&mut report, &t);
            let body = cohomology_markdown(&t);
            Ok(report.payload(&t, body).finish())
        }
    }
}
