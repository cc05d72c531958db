//! The verification suites behind `gmlab all`: one [`Criterion`] per
//! reproduced claim, each a list of named checks.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bott::{bundle_cohomology, resolve_cohomology, weight_table, BundleSpec, CohomEntry};
use crate::ckmotives::{check_chow_kunneth, verify_chow_kunneth, Degrees, Variety as CkVariety};
use crate::exact::{rank, GaloisField, Rationals};
use crate::gmlag::{
    gm_to_lagrangian, lagrangian_to_gm, lift_lagrangian, random_gm, random_lagrangian, reduce_mod_p, Sample,
};
use crate::lattice::verify_gm_lattice_facts;
use crate::ledger::{derive_diamond, tangent_report, HodgeDiamond, Variety};
use crate::vfsearch::{
    certify_family_singular, enumerate_hits, filter_hits, find_relabeling, match_known_family, nilpotent_kernels, numeric_recheck,
    known_families, EnumerationReport, SUBSET_COUNT,
};
use crate::weights::WeylElem;

/// Where the expected value of a check comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tag {
    /// A value stated in the reference text (golden data).
    Claim,
    /// An independent recomputation.
    Derived,
    /// An exhaustive enumeration.
    Exhaustive,
    /// A randomized property check.
    Property,
    /// A check that must fail.
    NegativeControl,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub tag: Tag,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Criterion {
    pub id: u8,
    pub title: String,
    pub checks: Vec<SuiteCheck>,
    /// Wall-clock time; left out of JSON so that reports are reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Criterion {
    pub fn new(id: u8, title: &str) -> Self {
        Criterion {
            id,
            title: title.into(),
            checks: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>, tag: Tag) {
        self.checks.push(SuiteCheck {
            name: name.into(),
            passed,
            detail: detail.into(),
            tag,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SuiteCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn timed(mut self, start: Instant) -> Self {
        self.elapsed = start.elapsed();
        self
    }
}

pub const GOLDEN_OMEGA2_MINUS2: &str = include_str!("../golden/omega2_minus2.json");
pub const GOLDEN_OMEGA2_MINUS3: &str = include_str!("../golden/omega2_minus3.json");
pub const GOLDEN_DIAMOND_Y: &str = include_str!("../golden/diamond_y.json");
pub const GOLDEN_DIAMOND_X: &str = include_str!("../golden/diamond_x.json");

#[derive(Clone, Debug, Deserialize)]
pub struct GoldenRow {
    pub lambda: [i64; 5],
    pub lambda_rho: [i64; 5],
    pub w: Option<String>,
    pub w_lambda_rho: [i64; 5],
    pub w_dot_lambda: [i64; 5],
}

#[derive(Clone, Debug, Deserialize)]
pub struct GoldenTable {
    pub p: u64,
    pub rows: Vec<GoldenRow>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct GoldenDiamond {
    pub dim: usize,
    pub rows: Vec<Vec<u128>>,
}

pub fn golden_table(twist: i64) -> GoldenTable {
    let src = match twist {
        -2 => GOLDEN_OMEGA2_MINUS2,
        -3 => GOLDEN_OMEGA2_MINUS3,
        _ => panic!("no golden table for twist {twist}"),
    };
    serde_json::from_str(src).expect("golden table parses")
}

pub fn golden_diamond(v: Variety) -> GoldenDiamond {
    let src = match v {
        Variety::Y => GOLDEN_DIAMOND_Y,
        Variety::X => GOLDEN_DIAMOND_X,
        Variety::Gr => panic!("the Grassmannian diamond is diagonal; no golden file"),
    };
    serde_json::from_str(src).expect("golden diamond parses")
}

fn diamond_rows(d: &HodgeDiamond) -> Vec<Vec<u128>> {
    (0..=2 * d.dim).map(|k| d.row(k)).collect()
}

fn entries(e: &[CohomEntry; 7]) -> String {
    e.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Compare the engine's weight table of `Omega^2(twist)` at `p = 5` with
/// the golden rows (as a set keyed by `lambda`).
pub fn compare_weight_table(c: &mut Criterion, twist: i64) {
    let golden = golden_table(twist);
    let b = BundleSpec::omega(2, twist).expect("valid bundle");
    let t = match weight_table(&b, golden.p) {
        Ok(t) => t,
        Err(e) => return c.check(format!("Omega^2({twist}) table"), false, e.to_string(), Tag::Claim),
    };
    c.check(
        format!("Omega^2({twist}): 12 distinct weights, multiplicities sum to 15"),
        t.rows.len() == 12 && t.rows.iter().map(|r| r.multiplicity).sum::<u32>() == 15,
        format!("{} rows", t.rows.len()),
        Tag::Claim,
    );
    let mut mismatches = Vec::new();
    for g in &golden.rows {
        match t.rows.iter().find(|r| r.lambda == g.lambda) {
            None => mismatches.push(format!("{:?} missing", g.lambda)),
            Some(r) => {
                if (r.lambda_rho, r.w_lambda_rho, r.w_dot_lambda) != (g.lambda_rho, g.w_lambda_rho, g.w_dot_lambda) {
                    mismatches.push(format!("{:?} columns differ", g.lambda));
                }
                if let Some(ws) = &g.w {
                    match ws.parse::<WeylElem>() {
                        Ok(w) if w.apply(g.lambda_rho) == g.w_lambda_rho => {}
                        _ => mismatches.push(format!("{:?}: printed w = {ws} does not sort λ+ρ", g.lambda)),
                    }
                }
                if let (Some(w), Some(ws)) = (r.w, &g.w) {
                    if r.lambda_rho.iter().enumerate().all(|(i, x)| !r.lambda_rho[..i].contains(x)) && &w.to_string() != ws {
                        mismatches.push(format!("{:?}: w = {w}, printed {ws}", g.lambda));
                    }
                }
            }
        }
    }
    c.check(
        format!("Omega^2({twist}): rows match the golden table"),
        mismatches.is_empty(),
        if mismatches.is_empty() { "12/12 rows".into() } else { mismatches.join("; ") },
        Tag::Claim,
    );
}

/// Criterion 1.
pub fn bott_tables() -> Criterion {
    let start = Instant::now();
    let mut c = Criterion::new(1, "Bott weight tables for Omega^2(-2) and Omega^2(-3) at p = 5");
    compare_weight_table(&mut c, -2);
    compare_weight_table(&mut c, -3);
    match weight_table(&BundleSpec::omega(2, -3).expect("valid"), 5) {
        Ok(t) => {
            let dominant: Vec<usize> = t.rows.iter().enumerate().filter(|(_, r)| r.w.is_some()).map(|(i, _)| i).collect();
            let ok = dominant.len() == 1 && {
                let r = &t.rows[dominant[0]];
                r.lambda == [0, -1, -1, 5, 3] && r.w.is_some_and(|w| w.length() == 5) && r.w_dot_lambda == [2, 1, 1, 1, 1]
            };
            c.check("Omega^2(-3): a single dominant w•λ, of length 5", ok, format!("{} dominant rows", dominant.len()), Tag::Claim);
        }
        Err(e) => c.check("Omega^2(-3) table", false, e.to_string(), Tag::Claim),
    }
    for (twist, want) in [(-2, [0u128; 7]), (-3, [0, 0, 0, 0, 0, 5, 0])] {
        let b = BundleSpec::omega(2, twist).expect("valid");
        match bundle_cohomology(&b, 5) {
            Ok(t) => {
                let ok = (0..7).all(|j| t.h(j) == Some(want[j]));
                c.check(format!("h*(Gr, Omega^2({twist})) at p = 5"), ok, entries(&t.entries), Tag::Claim);
            }
            Err(e) => c.check(format!("h*(Gr, Omega^2({twist}))"), false, e.to_string(), Tag::Claim),
        }
    }
    c.timed(start)
}

fn expect_table(c: &mut Criterion, name: &str, b: BundleSpec, p: u64, want: [u128; 7]) {
    match resolve_cohomology(&b, p) {
        Ok(t) => {
            let ok = (0..7).all(|j| t.h(j) == Some(want[j]));
            c.check(name, ok, entries(&t.entries), Tag::Claim);
        }
        Err(e) => c.check(name, false, e.to_string(), Tag::Claim),
    }
}

/// Criterion 2.
pub fn grassmannian_suite(p: u64) -> Criterion {
    let start = Instant::now();
    let mut c = Criterion::new(2, "cohomology of homogeneous bundles on Gr(2,5)");
    let zero = [0u128; 7];
    expect_table(&mut c, "H*(T_Gr) = (24, 0, ..., 0)", BundleSpec::tangent(0), p, [24, 0, 0, 0, 0, 0, 0]);
    expect_table(&mut c, "H*(T_Gr(-1)) = 0", BundleSpec::tangent(-1), p, zero);
    expect_table(&mut c, "H*(T_Gr(-2)) = 0", BundleSpec::tangent(-2), p, zero);
    let mut bad = Vec::new();
    for m in -12..=12 {
        match resolve_cohomology(&BundleSpec::structure(m), p) {
            Ok(t) if t.is_exact() => {
                for j in 0..7 {
                    let h = t.h(j).expect("exact");
                    if h != 0 && !((j == 0 && m >= 0) || (j == 6 && m <= -5)) {
                        bad.push(format!("h^{j}(O({m})) = {h}"));
                    }
                }
            }
            Ok(t) => bad.push(format!("O({m}) undetermined: {}", entries(&t.entries))),
            Err(e) => bad.push(format!("O({m}): {e}")),
        }
    }
    c.check(
        "H^i(O(m)) != 0 only for i = 0, m >= 0 or i = 6, m <= -5 (m in -12..=12)",
        bad.is_empty(),
        bad.join("; "),
        Tag::Claim,
    );
    let hodge = [1u128, 1, 2, 2, 2, 1, 1];
    let mut off = Vec::new();
    for i in 0..=6u8 {
        let b = if i == 0 { BundleSpec::structure(0) } else { BundleSpec::omega(i, 0).expect("valid") };
        match resolve_cohomology(&b, p) {
            Ok(t) => {
                for j in 0..7 {
                    let want = if j == i as usize { hodge[j] } else { 0 };
                    if t.h(j) != Some(want) {
                        off.push(format!("h^{{{i},{j}}} = {}", t.entries[j]));
                    }
                }
            }
            Err(e) => off.push(format!("Omega^{i}: {e}")),
        }
    }
    c.check("h^{i,i}(Gr) = 1,1,2,2,2,1,1 and h^{i,j} = 0 for i != j", off.is_empty(), off.join("; "), Tag::Claim);
    for (i, m) in [(1u8, -1i64), (1, -2), (2, -1), (2, -2), (3, -1)] {
        expect_table(&mut c, &format!("H*(Omega^{i}({m})) = 0"), BundleSpec::omega(i, m).expect("valid"), p, zero);
    }
    expect_table(&mut c, "H*(Omega^2(-3)) = h^5 = 5", BundleSpec::omega(2, -3).expect("valid"), p, [0, 0, 0, 0, 0, 5, 0]);
    c.timed(start)
}

/// Criterion 3.
pub fn diamonds(primes: &[u64]) -> Criterion {
    let start = Instant::now();
    let mut c = Criterion::new(3, "Hodge diamonds of the GM fivefold Y and sixfold X");
    for &p in primes {
        for v in [Variety::Y, Variety::X] {
            let golden = golden_diamond(v);
            match derive_diamond(v, p) {
                Ok(d) => {
                    let rows = diamond_rows(&d.diamond);
                    c.check(
                        format!("diamond of {v} at p = {p}"),
                        d.diamond.dim == golden.dim && rows == golden.rows,
                        format!("middle row {:?}", d.diamond.row(golden.dim)),
                        Tag::Claim,
                    );
                }
                Err(e) => c.check(format!("diamond of {v} at p = {p}"), false, e.to_string(), Tag::Claim),
            }
        }
        for (v, want) in [(Variety::Gr, 10i128), (Variety::Y, -12)] {
            match derive_diamond(v, p) {
                Ok(d) => {
                    let e = d.diamond.topological_euler();
                    c.check(format!("e({v}) = {want} at p = {p}"), e == want, e.to_string(), Tag::Claim);
                }
                Err(e) => c.check(format!("e({v}) at p = {p}"), false, e.to_string(), Tag::Claim),
            }
        }
    }
    c.timed(start)
}

/// Criterion 4.
pub fn golden_dimensions(p: u64) -> Criterion {
    let start = Instant::now();
    let mut c = Criterion::new(4, "sections of O_Y(1), O_Y(2) and first cohomology of the tangent bundles");
    match tangent_report(p) {
        Ok((r, _)) => {
            c.check("h^0(Y, O(1)) = 10", r.h0_oy1 == 10, r.h0_oy1.to_string(), Tag::Claim);
            c.check("h^0(Y, O(2)) = 49", r.h0_oy2 == 49, r.h0_oy2.to_string(), Tag::Claim);
            let hy = r.h_tangent_y.get(1).copied();
            let hx = r.h_tangent_x.get(1).copied();
            c.check("h^1(T_Y) = 25", hy == Some(25), format!("{:?}", r.h_tangent_y), Tag::Claim);
            c.check("h^1(T_X) = 25", hx == Some(25), format!("{:?}", r.h_tangent_x), Tag::Claim);
        }
        Err(e) => c.check("tangent report", false, e.to_string(), Tag::Claim),
    }
    c.timed(start)
}

/// The four classes at `p = 5` and the one at `p = 7`, as printed (`diag(-a)` with the signs dropped mod `p`).
pub const EXPECTED_A: [(u64, [i64; 5]); 5] = [
    (5, [-2, 0, -3, -4, 0]),
    (5, [-1, -3, -3, -4, -4]),
    (5, [-2, -3, 0, -4, -4]),
    (5, [-2, -3, 0, -2, -4]),
    (7, [0, -1, -4, -1, -6]),
];

/// Criterion 5 on a finished enumeration.
pub fn classification(rep: &EnumerationReport) -> Criterion {
    let start = Instant::now();
    let mut c = Criterion::new(5, "classification of diagonal vector fields on quadric sections");
    c.check(
        "all C(45,5) subsets enumerated",
        rep.subsets == SUBSET_COUNT,
        rep.subsets.to_string(),
        Tag::Exhaustive,
    );
    let classes = filter_hits(&rep.hits);
    let large: Vec<_> = classes.iter().filter(|k| k.p >= 11).collect();
    let primes_seen: Vec<u64> = rep.prime_counts.keys().copied().filter(|&p| p >= 11).collect();
    c.check(
        "no classes at any prime p >= 11",
        large.is_empty(),
        format!("primes >= 11 dividing some determinant: {primes_seen:?}"),
        Tag::Exhaustive,
    );
    for (p, want) in [(5u64, 4usize), (7, 1)] {
        let n = classes.iter().filter(|k| k.p == p).count();
        c.check(format!("{want} classes at p = {p}"), n == want, n.to_string(), Tag::Claim);
    }
    let mut matched = Vec::new();
    for k in &classes {
        match match_known_family(k) {
            Ok((fam, _)) => matched.push((fam.p, fam.id)),
            Err(e) => c.check(format!("class {:?} at p = {}", k.canonical_a, k.p), false, e.to_string(), Tag::Claim),
        }
    }
    let expected: Vec<(u64, [u64; 5])> = EXPECTED_A
        .iter()
        .map(|(p, a)| (*p, a.map(|x| x.rem_euclid(*p as i64) as u64)))
        .collect();
    let fams = known_families();
    let all_found = expected.iter().all(|(p, a)| {
        fams.iter()
            .any(|f| f.p == *p && find_relabeling(a, &f.a, *p).is_some() && matched.contains(&(f.p, f.id)))
    });
    c.check(
        "classes match the printed a-vectors up to relabeling and scaling",
        all_found && matched.len() == expected.len(),
        format!("matched families {matched:?}"),
        Tag::Claim,
    );
    let fam1 = fams.iter().find(|f| f.id == 1);
    let fam1_ok = fam1.is_some_and(|f| {
        f.terms.len() == 11
            && classes
                .iter()
                .find(|k| k.p == f.p && match_known_family(k).is_ok_and(|(g, _)| g.id == 1))
                .is_some_and(|k| k.m_a.len() == 11)
    });
    c.check("family 1 has the 11 printed monomials", fam1_ok, "", Tag::Claim);
    c.timed(start)
}

/// Criterion 6 on a finished enumeration.
pub fn rank_lemma(rep: &EnumerationReport) -> Criterion {
    let start = Instant::now();
    let mut c = Criterion::new(6, "rank mod p of the condition matrices");
    c.check(
        "rank exactly 4 mod every p >= 5 dividing a nonzero determinant",
        rep.violations.is_empty(),
        format!("{} violations over {} nonsingular subsets", rep.violations.len(), rep.nonsingular),
        Tag::Exhaustive,
    );
    c.timed(start)
}

/// Criterion 7.
pub fn certificates(samples: usize, seed: u64) -> Criterion {
    let start = Instant::now();
    let mut c = Criterion::new(7, "singular points of the five families");
    for fam in known_families() {
        match certify_family_singular(&fam) {
            Ok(cert) => {
                let failed: Vec<&str> = cert.checks.iter().filter(|k| !k.passed).map(|k| k.name.as_str()).collect();
                c.check(
                    format!("family {} (p = {}) certificate", fam.id, fam.p),
                    cert.passed(),
                    format!("{} 4x4 minors; failed: {failed:?}", cert.minors4_checked),
                    Tag::Derived,
                );
            }
            Err(e) => c.check(format!("family {} certificate", fam.id), false, e.to_string(), Tag::Derived),
        }
        let r = numeric_recheck(&fam, samples, seed);
        c.check(
            format!("family {} numeric re-check over {}", fam.id, r.field),
            r.all_passed() && r.rank_three == r.samples,
            format!("{}/{} passed, rank 3 in {}, {} draws discarded", r.passed, r.samples, r.rank_three, r.discarded),
            Tag::Property,
        );
    }
    c.timed(start)
}

/// Criterion 8.
pub fn nilpotent(primes: &[u64]) -> Criterion {
    let start = Instant::now();
    let mut c = Criterion::new(8, "nilpotent patterns: kernel dimensions over Q and F_p");
    for &p in primes {
        match nilpotent_kernels(p) {
            Ok(r) => {
                let bad: Vec<String> = r
                    .patterns
                    .iter()
                    .filter(|x| x.kernel_q != x.kernel_p)
                    .map(|x| format!("{}: {} over Q, {} mod {p}", x.pattern, x.kernel_q, x.kernel_p))
                    .collect();
                c.check(format!("16 patterns at p = {p}"), bad.is_empty(), bad.join("; "), Tag::Claim);
            }
            Err(e) => c.check(format!("p = {p}"), false, e.to_string(), Tag::Claim),
        }
    }
    c.timed(start)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialTally {
    pub trials: usize,
    pub failures: Vec<String>,
}

/// The generator for trial `t`: one ChaCha stream per trial, so results
/// do not depend on how trials are spread over threads.
pub fn trial_rng(seed: u64, t: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(t as u64);
    rng
}

fn tally(trials: usize, run: impl Fn(usize) -> Result<(), String> + Sync) -> TrialTally {
    let failures: Vec<String> = (0..trials)
        .into_par_iter()
        .filter_map(|t| run(t).err().map(|why| format!("trial {t}: {why}")))
        .collect();
    TrialTally { trials, failures }
}

/// Random GM data round-tripped through the Lagrangian side.
pub fn round_trip_trials<R: Sample>(ring: &R, n: usize, trials: usize, seed: u64) -> TrialTally {
    tally(trials, |t| {
        let mut rng = trial_rng(seed, t);
        let d = random_gm(ring, n, &mut rng).map_err(|e| e.to_string())?;
        // gm_to_lagrangian compares two choices of v0 and fails on a mismatch
        let lag = gm_to_lagrangian(&d).map_err(|e| e.to_string())?;
        if rank(ring, &lag.a) != 10 || lag.intersection_rank() != 5 - n {
            return Err("rank condition".into());
        }
        let back = lagrangian_to_gm(&lag).map_err(|e| e.to_string())?;
        if back.w.rows() != n + 5 || back != d.canonical() {
            return Err("(W, q) not recovered".into());
        }
        Ok(())
    })
}

/// Criterion 9.
pub fn round_trips(trials: usize, seed: u64) -> Criterion {
    let start = Instant::now();
    let mut c = Criterion::new(9, "GM data <-> Lagrangian data round trips");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let record = |c: &mut Criterion, name: String, t: TrialTally| {
        c.check(
            name,
            t.failures.is_empty() && t.trials == trials,
            format!("{} trials, {} failures {:?}", t.trials, t.failures.len(), t.failures.iter().take(3).collect::<Vec<_>>()),
            Tag::Property,
        );
    };
    for (p, k, label) in [(5u64, 1u32, "F5"), (7, 1, "F7"), (3, 2, "F9")] {
        let f = GaloisField::new(p, k).expect("small field");
        for n in 3..=5 {
            let s = rng.gen();
            record(&mut c, format!("{label}, n = {n}"), round_trip_trials(&f, n, trials, s));
        }
    }
    for n in 3..=5 {
        let s = rng.gen();
        record(&mut c, format!("Q, n = {n}"), round_trip_trials(&Rationals, n, trials, s));
    }
    c.timed(start)
}

/// Random Lagrangian data over `F_p` lifted to `Z/p^k`.
pub fn lift_trials(p: u64, k: u32, trials: usize, seed: u64) -> TrialTally {
    let f = GaloisField::new(p, 1).expect("prime field");
    tally(trials, |t| {
        let mut rng = trial_rng(seed, t);
        let d = random_lagrangian(&f, 3 + t % 3, 30, &mut rng).map_err(|e| e.to_string())?;
        let rep = lift_lagrangian(&d, k).map_err(|e| e.to_string())?;
        let reduced = reduce_mod_p(&rep.datum);
        if !rep.datum.is_isotropic() || reduced.as_ref().ok() != Some(&d) {
            return Err("lift is not exact".into());
        }
        Ok(())
    })
}

/// Criterion 10.
pub fn lifting(trials: usize, seed: u64) -> Criterion {
    let start = Instant::now();
    let mut c = Criterion::new(10, "lifting Lagrangian data from F_p to Z/p^k");
    for (p, k) in [(5u64, 4u32), (7, 3)] {
        let t = lift_trials(p, k, trials, seed ^ p);
        c.check(
            format!("F_{p} -> Z/{p}^{k}"),
            t.failures.is_empty() && t.trials == trials,
            format!("{} trials, {} failures {:?}", t.trials, t.failures.len(), t.failures.iter().take(3).collect::<Vec<_>>()),
            Tag::Property,
        );
    }
    c.timed(start)
}

/// Criterion 11.
pub fn lattices() -> Criterion {
    let start = Instant::now();
    let mut c = Criterion::new(11, "the rank-22 lattice and the I(2)^2 complement");
    for k in verify_gm_lattice_facts().checks {
        c.check(k.name, k.passed, k.detail, Tag::Derived);
    }
    c.timed(start)
}

/// Criterion 12.
pub fn chow_kunneth() -> Criterion {
    let start = Instant::now();
    let mut c = Criterion::new(12, "Chow-Kunneth projectors on GM fourfolds and sixfolds");
    for v in [CkVariety::Gm4, CkVariety::Gm6] {
        match verify_chow_kunneth(v) {
            Ok(r) => c.check(format!("{v}: {} identities", r.checks.len()), true, "", Tag::Derived),
            Err(e) => c.check(format!("{v}"), false, e.to_string(), Tag::Derived),
        }
    }
    let bad = Degrees::standard(CkVariety::Gm6).with(4, 1, crate::exact::Rat::from_integer(5.into()));
    let r = check_chow_kunneth(&bad);
    c.check(
        "deg(H^4 e2) = 5 breaks the projectors",
        !r.passed(),
        r.first_failure().map(|k| k.name.clone()).unwrap_or_default(),
        Tag::NegativeControl,
    );
    c.timed(start)
}

/// Sizes of the randomized parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteParams {
    pub seed: u64,
    pub round_trips: usize,
    pub lifts: usize,
    pub numeric_samples: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            seed: 2024,
            round_trips: 200,
            lifts: 50,
            numeric_samples: 100,
        }
    }
}

/// All twelve criteria; `enumeration` avoids recomputing the vector-field
/// search when a cached run is at hand.
pub fn run_all(params: &SuiteParams, enumeration: Option<EnumerationReport>) -> Vec<Criterion> {
    let enumeration = enumeration.unwrap_or_else(|| enumerate_hits(None));
    vec![
        bott_tables(),
        grassmannian_suite(5),
        diamonds(&[5, 7, 11, 13]),
        golden_dimensions(5),
        classification(&enumeration),
        rank_lemma(&enumeration),
        certificates(params.numeric_samples, params.seed),
        nilpotent(&[5, 7, 11]),
        round_trips(params.round_trips, params.seed),
        lifting(params.lifts, params.seed),
        lattices(),
        chow_kunneth(),
    ]
}
