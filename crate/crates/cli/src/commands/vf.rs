use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::Subcommand;
use gmlab_core::suite::{certificates, nilpotent, rank_lemma, Tag};
use gmlab_core::vfsearch::{
    certify_family_singular, filter_hits, match_known_family, nilpotent_kernels, numeric_recheck, known_families, SUBSET_COUNT,
};
use serde::Serialize;

use super::from_criterion;
use crate::cache::{self, Source};
use crate::config::RunConfig;
use crate::report::Report;
use crate::CliError;

#[derive(Debug, Subcommand)]
pub enum VfCmd {
    /// Enumerate the 5-row subsets of the condition matrix and classify the hits.
    Search {
        /// A prime or an inclusive range such as `5..7` or `11..=200`.
        #[arg(long, value_parser = parse_primes)]
        p: Option<RangeInclusive<u64>>,
        /// Cache file to read or create, instead of the cache directory.
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Always recompute.
        #[arg(long)]
        no_cache: bool,
    },
    /// Singular point certificates for the five families.
    Certify {
        /// Only this family (1..=5).
        #[arg(long)]
        family: Option<u8>,
        /// Random points for the numeric re-check (default from config).
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Rank exactly 4 mod p for every square subset singular mod p.
    Lemma56 {
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long)]
        no_cache: bool,
    },
    /// Kernel dimensions of the 16 nilpotent patterns over Q and F_p.
    Nilpotent {
        #[arg(long, value_delimiter = ',', default_values_t = [5u64, 7, 11])]
        p: Vec<u64>,
    },
}

/// `a`, `a..b` or `a..=b`; both forms of range include `b`.
pub fn parse_primes(s: &str) -> Result<RangeInclusive<u64>, String> {
    let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
    let (lo, hi) = match s.split_once("..") {
        None => {
            let p = num(s)?;
            (p, p)
        }
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
    };
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    if lo < 5 {
        return Err("only primes p >= 5 are searched".into());
    }
    Ok(lo..=hi)
}

/// The classification as stated: four classes at 5, one at 7, none elsewhere.
fn pinned_classes(p: u64) -> usize {
    match p {
        5 => 4,
        7 => 1,
        _ => 0,
    }
}

#[derive(Serialize)]
struct ClassRow {
    p: u64,
    canonical_a: [u64; 5],
    family: Option<u8>,
    monomials: usize,
    members: usize,
}

pub(crate) fn describe(source: &Source) -> String {
    match source {
        Source::Computed => "vf enumeration: computed".into(),
        Source::Hit(p) => format!("vf enumeration: cache hit {}", p.display()),
        Source::Narrowed(p) => format!("vf enumeration: narrowed from {}", p.display()),
    }
}

fn load(
    filter: Option<RangeInclusive<u64>>,
    file: &Option<PathBuf>,
    no_cache: bool,
    cfg: &RunConfig,
    log: &mut dyn Write,
) -> Result<gmlab_core::vfsearch::EnumerationReport, CliError> {
    let dir = if no_cache { None } else { cfg.cache_dir() };
    let file = if no_cache { None } else { file.as_deref() };
    let (rep, source) = cache::enumeration(filter, file, dir.as_deref())?;
    let _ = writeln!(log, "{}", describe(&source));
    Ok(rep)
}

pub fn run(cmd: &VfCmd, cfg: &RunConfig, log: &mut dyn Write) -> Result<Report, CliError> {
    match cmd {
        VfCmd::Search { p, cache, no_cache } => {
            let rep = load(p.clone(), cache, *no_cache, cfg, log)?;
            let classes = filter_hits(&rep.hits);
            let range = p.as_ref().map(|r| format!("{}..={}", r.start(), r.end()));
            let mut report = Report::new("vf search").input("p", range.unwrap_or_else(|| "all".into()));
            report.check("all C(45,5) subsets enumerated", rep.subsets == SUBSET_COUNT, rep.subsets.to_string(), Tag::Exhaustive);
            report.check(
                "rank exactly 4 at every singular prime",
                rep.violations.is_empty(),
                format!("{} violations", rep.violations.len()),
                Tag::Exhaustive,
            );
            let mut primes: Vec<u64> = classes.iter().map(|c| c.p).collect();
            primes.extend([5, 7]);
            primes.sort_unstable();
            primes.dedup();
            for q in primes.into_iter().filter(|q| p.as_ref().is_none_or(|r| r.contains(q))) {
                let n = classes.iter().filter(|c| c.p == q).count();
                let want = pinned_classes(q);
                report.check(format!("{want} classes at p = {q}"), n == want, n.to_string(), Tag::Claim);
            }
            let mut rows = Vec::new();
            for c in &classes {
                let family = match match_known_family(c) {
                    Ok((f, _)) => Some(f.id),
                    Err(e) => {
                        report.check(format!("class {:?} at p = {} is a listed family", c.canonical_a, c.p), false, e.to_string(), Tag::Claim);
                        None
                    }
                };
                rows.push(ClassRow {
                    p: c.p,
                    canonical_a: c.canonical_a,
                    family,
                    monomials: c.m_a.len(),
                    members: c.members.len(),
                });
            }
            let mut body = format!(
                "{} subsets, {} nonsingular, {} raw hits, {} classes\n\n| p | a | family | |M_a| |\n|---|---|---|---|\n",
                rep.subsets,
                rep.nonsingular,
                rep.hits.len(),
                rows.len()
            );
            for r in &rows {
                let fam = r.family.map_or("-".to_string(), |f| f.to_string());
                body.push_str(&format!("| {} | {:?} | {} | {} |\n", r.p, r.canonical_a, fam, r.monomials));
            }
            let payload = serde_json::json!({
                "subsets": rep.subsets,
                "nonsingular": rep.nonsingular,
                "raw_hits": rep.hits.len(),
                "prime_counts": rep.prime_counts,
                "classes": rows,
            });
            Ok(report.payload(payload, body).finish())
        }
        VfCmd::Certify { family, samples } => {
            let samples = samples.unwrap_or(cfg.numeric_samples);
            let report = Report::new("vf certify")
                .input("family", family)
                .input("samples", samples)
                .input("seed", cfg.seed);
            let Some(id) = family else {
                let c = certificates(samples, cfg.seed);
                let certs: Vec<_> = known_families().iter().filter_map(|f| certify_family_singular(f).ok()).collect();
                return Ok(from_criterion(report, &c).payload(&certs, String::new()).finish());
            };
            let fam = known_families()
                .into_iter()
                .find(|f| f.id == *id)
                .ok_or_else(|| CliError::Usage(format!("no family {id}; families are 1..=5")))?;
            let mut report = report;
            let cert = certify_family_singular(&fam).map_err(CliError::core)?;
            for k in &cert.checks {
                report.check(&k.name, k.passed, "", Tag::Derived);
            }
            let r = numeric_recheck(&fam, samples, cfg.seed);
            report.check(
                format!("numeric re-check over {}", r.field),
                r.all_passed() && r.rank_three == r.samples,
                format!("{}/{} passed, rank 3 in {}", r.passed, r.samples, r.rank_three),
                Tag::Property,
            );
            let body = format!("family {} at p = {}: point {:?}\n", fam.id, fam.p, cert.point);
            Ok(report.payload(serde_json::json!({ "certificate": cert, "numeric": r }), body).finish())
        }
        VfCmd::Lemma56 { cache, no_cache } => {
            let rep = load(None, cache, *no_cache, cfg, log)?;
            let report = from_criterion(Report::new("vf lemma56"), &rank_lemma(&rep));
            let payload = serde_json::json!({
                "nonsingular": rep.nonsingular,
                "prime_counts": rep.prime_counts,
                "violations": rep.violations,
            });
            Ok(report.payload(payload, String::new()).finish())
        }
        VfCmd::Nilpotent { p } => {
            let report = from_criterion(Report::new("vf nilpotent").input("p", p), &nilpotent(p));
            let tables = p.iter().map(|&q| nilpotent_kernels(q)).collect::<Result<Vec<_>, _>>().map_err(CliError::core)?;
            let mut body = String::new();
            for t in &tables {
                body.push_str(&format!("p = {}\n| pattern | ker over Q | ker mod p |\n|---|---|---|\n", t.p));
                for r in &t.patterns {
                    body.push_str(&format!("| {} | {} | {} |\n", r.pattern, r.kernel_q, r.kernel_p));
                }
            }
            Ok(report.payload(&tables, body).finish())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::parse_primes;

    #[test]
    fn prime_ranges() {
        assert_eq!(parse_primes("7"), Ok(7..=7));
        assert_eq!(parse_primes("11..200"), Ok(11..=200));
        assert_eq!(parse_primes("5..=7"), Ok(5..=7));
        assert!(parse_primes("9..5").is_err());
        assert!(parse_primes("2..5").is_err());
        assert!(parse_primes("x").is_err());
    }
}
