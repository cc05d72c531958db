pub mod all;
pub mod bott;
pub mod ck;
pub mod gm;
pub mod hodge;
pub mod lattice;
pub mod vf;

use gmlab_core::suite::Criterion;

use crate::report::Report;

/// A report carrying the checks of one suite criterion.
pub(crate) fn from_criterion(mut report: Report, c: &Criterion) -> Report {
    report.extend_from(c);
    report
}
