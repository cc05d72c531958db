use std::fs;
use std::path::{Path, PathBuf};

use clap::{Subcommand, ValueEnum};
use gmlab_core::exact::{GaloisField, Rationals, ZModPk};
use gmlab_core::gmlag::{
    find_opposite_v5, gm_to_lagrangian, lagrangian_to_gm, lift_lagrangian, random_lagrangian, random_smooth_lagrangian, reduce_mod_p,
    scan_decomposables, DataSet, GmDataSet, RingSpec,
};
use gmlab_core::suite::{lift_trials, round_trip_trials, Tag, TrialTally};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::RunConfig;
use crate::report::Report;
use crate::CliError;

#[derive(Debug, Subcommand)]
pub enum GmCmd {
    /// Convert between GM data (`W`, `q`) and Lagrangian data (`A`).
    Convert {
        input: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Random GM data taken to Lagrangian data and back.
    Roundtrip {
        #[arg(long, value_enum, default_value_t = FieldArg::F5)]
        field: FieldArg,
        /// 3, 4 or 5; all three when omitted.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Search for a hyperplane V5' with A ∩ ∧³V5' = 0 over extensions.
    FindV5p {
        input: PathBuf,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Look for decomposable vectors in A.
    Scan {
        input: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Lift Lagrangian data from F_p to Z/p^k.
    Lift {
        /// A data set over F_p; random data when omitted.
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        p: u64,
        #[arg(long, default_value_t = 4)]
        k: u32,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Write a random Lagrangian data set over F_{p^k}.
    Random {
        #[arg(long, default_value_t = 5)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Reject data with a decomposable vector found within the scan budget.
        #[arg(long)]
        smooth: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FieldArg {
    #[value(name = "5")]
    F5,
    #[value(name = "7")]
    F7,
    #[value(name = "9")]
    F9,
    #[value(name = "q")]
    Q,
}

/// Run `$body` with `$r` bound to the ring described by `$spec`.
macro_rules! with_ring {
    ($spec:expr, |$r:ident| $body:expr) => {
        match $spec {
            RingSpec::Gf { p, k } => {
                let $r = GaloisField::new(p, k).map_err(CliError::core)?;
                $body
            }
            RingSpec::Zmodpk { p, k } => {
                let $r = ZModPk::new(p, k).map_err(CliError::core)?;
                $body
            }
            RingSpec::Rationals => {
                let $r = Rationals;
                $body
            }
        }
    };
}

fn read_json(path: &Path) -> Result<serde_json::Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path, v: serde_json::Value) -> Result<T, CliError> {
    serde_json::from_value(v).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn bad_input(path: &Path) -> impl Fn(gmlab_core::gmlag::GmError) -> CliError + '_ {
    move |e| CliError::Usage(format!("{}: {e}", path.display()))
}

fn write_json(path: &Option<PathBuf>, value: &impl Serialize) -> Result<(), CliError> {
    if let Some(path) = path {
        let text = serde_json::to_string_pretty(value).expect("data sets serialize");
        fs::write(path, text + "\n").map_err(|e| CliError::Io(path.clone(), e))?;
    }
    Ok(())
}

/// A Lagrangian data set over a finite field `F_q`.
fn read_finite(path: &Path) -> Result<gmlab_core::gmlag::LagrangianDatum<GaloisField>, CliError> {
    let ds: DataSet = parse(path, read_json(path)?)?;
    let RingSpec::Gf { p, k } = ds.ring else {
        return Err(CliError::Usage(format!("{}: a finite field data set is required", path.display())));
    };
    let f = GaloisField::new(p, k).map_err(CliError::core)?;
    ds.to_datum(&f).map_err(bad_input(path))
}

fn tally_check(report: &mut Report, name: String, t: &TrialTally, trials: usize) {
    report.check(
        name,
        t.failures.is_empty() && t.trials == trials,
        format!("{} trials, {} failures {:?}", t.trials, t.failures.len(), t.failures.iter().take(3).collect::<Vec<_>>()),
        Tag::Property,
    );
}

pub fn run(cmd: &GmCmd, cfg: &RunConfig) -> Result<Report, CliError> {
    match cmd {
        GmCmd::Convert { input, output } => {
            let v = read_json(input)?;
            let report = Report::new("gm convert").input("input", input.display().to_string());
            if v.get("A").is_some() {
                let ds: DataSet = parse(input, v)?;
                let mut report = report.input("direction", "lagrangian -> gm");
                let out = with_ring!(ds.ring, |r| {
                    let d = ds.to_datum(&r).map_err(bad_input(input))?;
                    let gm = lagrangian_to_gm(&d).map_err(CliError::core)?;
                    let back = gm_to_lagrangian(&gm).map_err(CliError::core)?;
                    report.check("converts back to the same A", back.canonical() == d.canonical(), "", Tag::Derived);
                    serde_json::to_value(GmDataSet::from_datum(ds.ring, &gm)).expect("serializes")
                });
                write_json(output, &out)?;
                Ok(report.payload(out, String::new()).finish())
            } else {
                let ds: GmDataSet = parse(input, v)?;
                let mut report = report.input("direction", "gm -> lagrangian");
                let out = with_ring!(ds.ring, |r| {
                    let d = ds.to_datum(&r).map_err(bad_input(input))?;
                    let lag = gm_to_lagrangian(&d).map_err(CliError::core)?;
                    report.check("A is Lagrangian", lag.is_isotropic(), "", Tag::Derived);
                    let back = lagrangian_to_gm(&lag).map_err(CliError::core)?;
                    report.check("converts back to the same (W, q)", back == d.canonical(), "", Tag::Derived);
                    serde_json::to_value(DataSet::from_datum(ds.ring, &lag)).expect("serializes")
                });
                write_json(output, &out)?;
                Ok(report.payload(out, String::new()).finish())
            }
        }
        GmCmd::Roundtrip { field, n, trials } => {
            let trials = trials.unwrap_or(cfg.round_trips);
            let ns: Vec<usize> = match n {
                Some(n) if (3..=5).contains(n) => vec![*n],
                Some(n) => return Err(CliError::Usage(format!("n = {n} is not in 3..=5"))),
                None => vec![3, 4, 5],
            };
            let mut report = Report::new("gm roundtrip")
                .input("field", format!("{field:?}"))
                .input("n", &ns)
                .input("trials", trials)
                .input("seed", cfg.seed);
            let mut tallies = Vec::new();
            for &n in &ns {
                let seed = cfg.seed.wrapping_add(n as u64);
                let t = match field {
                    FieldArg::F5 => round_trip_trials(&GaloisField::new(5, 1).map_err(CliError::core)?, n, trials, seed),
                    FieldArg::F7 => round_trip_trials(&GaloisField::new(7, 1).map_err(CliError::core)?, n, trials, seed),
                    FieldArg::F9 => round_trip_trials(&GaloisField::new(3, 2).map_err(CliError::core)?, n, trials, seed),
                    FieldArg::Q => round_trip_trials(&Rationals, n, trials, seed),
                };
                tally_check(&mut report, format!("n = {n}"), &t, trials);
                tallies.push(t);
            }
            Ok(report.payload(&tallies, String::new()).finish())
        }
        GmCmd::FindV5p { input, max_degree } => {
            let d = read_finite(input)?;
            let max_degree = max_degree.unwrap_or(cfg.max_degree);
            let s = find_opposite_v5(&d, max_degree).map_err(CliError::core)?;
            let mut report = Report::new("gm find-v5p")
                .input("input", input.display().to_string())
                .input("max_degree", max_degree);
            let detail = match &s.found {
                Some(f) => format!("degree {} after {} candidates", f.degree, s.checked),
                None => format!("none among {} candidates up to degree {max_degree}", s.checked),
            };
            report.check("V5' found within the degree cap", s.found.is_some(), detail, Tag::Exhaustive);
            Ok(report.payload(&s, String::new()).finish())
        }
        GmCmd::Scan { input, budget } => {
            let d = read_finite(input)?;
            let budget = budget.unwrap_or(cfg.scan_budget);
            let s = scan_decomposables(&d.ring, &d.a, budget);
            let mut report = Report::new("gm scan").input("input", input.display().to_string()).input("budget", budget);
            report.check(
                "no decomposable vector within the budget (heuristic, not a smoothness proof)",
                !s.is_witness(),
                "",
                Tag::Exhaustive,
            );
            Ok(report.payload(&s, String::new()).finish())
        }
        GmCmd::Lift {
            input,
            p,
            k,
            trials,
            output,
        } => {
            if *k < 1 {
                return Err(CliError::Usage("k must be at least 1".into()));
            }
            match input {
                Some(path) => {
                    let d = read_finite(path)?;
                    let mut report = Report::new("gm lift").input("input", path.display().to_string()).input("k", k);
                    let rep = lift_lagrangian(&d, *k).map_err(CliError::core)?;
                    report.check("isotropic over Z/p^k", rep.datum.is_isotropic(), format!("{:?}", rep.valuations), Tag::Derived);
                    let back = reduce_mod_p(&rep.datum).map_err(CliError::core)?;
                    report.check("reduces to the input", back == d, "", Tag::Derived);
                    let spec = RingSpec::Zmodpk {
                        p: rep.datum.ring.p(),
                        k: *k,
                    };
                    let ds = DataSet::from_datum(spec, &rep.datum);
                    write_json(output, &ds)?;
                    Ok(report
                        .payload(serde_json::json!({ "summary": rep.summary(), "datum": ds }), String::new())
                        .finish())
                }
                None => {
                    let trials = trials.unwrap_or(cfg.lifts);
                    let mut report = Report::new("gm lift")
                        .input("p", p)
                        .input("k", k)
                        .input("trials", trials)
                        .input("seed", cfg.seed);
                    let t = lift_trials(*p, *k, trials, cfg.seed);
                    tally_check(&mut report, format!("F_{p} -> Z/{p}^{k}"), &t, trials);
                    Ok(report.payload(&t, String::new()).finish())
                }
            }
        }
        GmCmd::Random {
            p,
            k,
            n,
            smooth,
            output,
        } => {
            let f = GaloisField::new(*p, *k).map_err(|e| CliError::Usage(e.to_string()))?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let d = if *smooth {
                random_smooth_lagrangian(&f, *n, cfg.scan_budget, &mut rng)
            } else {
                random_lagrangian(&f, *n, 30, &mut rng)
            }
            .map_err(|e| CliError::Usage(e.to_string()))?;
            let ds = DataSet::from_datum(RingSpec::Gf { p: *p, k: *k }, &d);
            write_json(output, &ds)?;
            let report = Report::new("gm random")
                .input("p", p)
                .input("k", k)
                .input("n", n)
                .input("smooth", smooth)
                .input("seed", cfg.seed);
            Ok(report.payload(&ds, String::new()).finish())
        }
    }
}
