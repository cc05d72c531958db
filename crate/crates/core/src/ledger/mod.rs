//! Bookkeeping of cohomology dimensions on `Gr(2,5)`, the GM fivefold `Y`
//! (a quadric section of `Gr`) and the GM sixfold `X` (the double cover of
//! `Gr` branched along `Y`).
//!
//! A [`Ledger`] stores one [`Fact`] per `(sheaf, degree)`. Facts enter from
//! the Bott engine, from long exact sequences, from Serre duality, from
//! Raynaud's vanishing theorem, from Euler characteristics and from a
//! short list of named axioms. Every insertion is checked against what is
//! already known; a disagreement aborts with the step that caused it.

mod diamond;
mod euler;
mod pipeline;

pub use diamond::HodgeDiamond;
pub use euler::{
    chi_gr, chi_restricted, chi_x_omega, chi_x_twist, chi_x_twist_i128, chi_y_omega, chi_y_twist,
};
pub use pipeline::{derive_diamond, tangent_report, topological_euler, Derivation, TangentReport};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bott::{resolve_cohomology, BottError, BundleSpec, CohomEntry, Route};
use crate::weights::Weight;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum LedgerError {
    #[error("contradiction in step '{step}': {sheaf} degree {degree} was {old}, now {new}")]
    ContradictionInLedger {
        step: String,
        sheaf: SheafRef,
        degree: usize,
        old: CohomEntry,
        new: CohomEntry,
    },
    #[error("step '{step}' is inconsistent: {detail}")]
    Inconsistent { step: String, detail: String },
    #[error("Bott engine cannot decide weights: {}", .0.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(", "))]
    UndecidableDependency(Vec<Weight>),
    #[error("{sheaf} degree {degree} is still undetermined after the derivation")]
    Undetermined { sheaf: SheafRef, degree: usize },
    #[error("invalid sheaf: {0}")]
    BadSheaf(String),
    #[error("derivations need a prime p >= 5, got {0}")]
    BadPrime(u64),
}

impl From<BottError> for LedgerError {
    fn from(e: BottError) -> Self {
        match e {
            BottError::UndecidableWeights(ws) => LedgerError::UndecidableDependency(ws),
            other => LedgerError::Inconsistent {
                step: "Bott engine".into(),
                detail: other.to_string(),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variety {
    Gr,
    Y,
    X,
}

impl Variety {
    pub fn dim(&self) -> usize {
        match self {
            Variety::Gr | Variety::X => 6,
            Variety::Y => 5,
        }
    }

    /// `omega = O(-c)`.
    pub fn canonical_twist(&self) -> i64 {
        match self {
            Variety::Gr => 5,
            Variety::Y => 3,
            Variety::X => 4,
        }
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variety::Gr => "Gr",
            Variety::Y => "Y",
            Variety::X => "X",
        })
    }
}

impl std::str::FromStr for Variety {
    type Err = LedgerError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "gr" => Ok(Variety::Gr),
            "y" => Ok(Variety::Y),
            "x" => Ok(Variety::X),
            _ => Err(LedgerError::BadSheaf(format!("unknown variety '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "sym", rename_all = "snake_case")]
pub enum Sym {
    O { m: i64 },
    Omega { i: u8, m: i64 },
    Tangent { m: i64 },
    /// `Omega^i_Gr(m)|_Y`.
    RestrictedOmega { i: u8, m: i64 },
    /// `T_Gr(m)|_Y`.
    RestrictedTangent { m: i64 },
}

/// A sheaf on one of the three varieties, kept in canonical form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SheafRef {
    pub variety: Variety,
    pub sym: Sym,
}

impl SheafRef {
    pub fn new(variety: Variety, sym: Sym) -> Result<Self, LedgerError> {
        let d = variety.dim() as u8;
        match sym {
            Sym::Omega { i, .. } if i > d => {
                return Err(LedgerError::BadSheaf(format!("Omega^{i} on {variety}")))
            }
            Sym::RestrictedOmega { i, .. } if variety != Variety::Y || i > 6 => {
                return Err(LedgerError::BadSheaf(format!(
                    "Omega^{i}_Gr restricted to {variety}"
                )))
            }
            Sym::RestrictedTangent { .. } if variety != Variety::Y => {
                return Err(LedgerError::BadSheaf(format!("T_Gr restricted to {variety}")))
            }
            _ => {}
        }
        Ok(SheafRef { variety, sym }.canonical())
    }

    pub fn o(variety: Variety, m: i64) -> Self {
        SheafRef::new(variety, Sym::O { m }).unwrap()
    }

    pub fn omega(variety: Variety, i: u8, m: i64) -> Self {
        SheafRef::new(variety, Sym::Omega { i, m }).unwrap()
    }

    pub fn tangent(variety: Variety, m: i64) -> Self {
        SheafRef::new(variety, Sym::Tangent { m }).unwrap()
    }

    pub fn restricted(i: u8, m: i64) -> Self {
        SheafRef::new(Variety::Y, Sym::RestrictedOmega { i, m }).unwrap()
    }

    pub fn restricted_tangent(m: i64) -> Self {
        SheafRef::new(Variety::Y, Sym::RestrictedTangent { m }).unwrap()
    }

    /// Top forms become twists of the structure sheaf; `Omega^0` is `O`.
    fn canonical(self) -> Self {
        let v = self.variety;
        let sym = match self.sym {
            Sym::Omega { i: 0, m } => Sym::O { m },
            Sym::Omega { i, m } if i as usize == v.dim() => Sym::O {
                m: m - v.canonical_twist(),
            },
            Sym::RestrictedOmega { i: 0, m } => Sym::O { m },
            Sym::RestrictedOmega { i: 6, m } => Sym::O { m: m - 5 },
            s => s,
        };
        SheafRef { variety: v, sym }
    }

    /// The sheaf whose `h^{d-j}` equals this sheaf's `h^j`, for sheaves of
    /// differential forms.
    pub fn serre_partner(&self) -> Option<SheafRef> {
        let v = self.variety;
        let d = v.dim() as u8;
        match self.sym {
            Sym::O { m } => Some(SheafRef::o(v, -m - v.canonical_twist())),
            Sym::Omega { i, m } => Some(SheafRef::omega(v, d - i, -m)),
            _ => None,
        }
    }

    fn bundle_on_gr(&self) -> Option<BundleSpec> {
        if self.variety != Variety::Gr {
            return None;
        }
        Some(match self.sym {
            Sym::O { m } => BundleSpec::structure(m),
            Sym::Omega { i, m } => BundleSpec::omega(i, m).ok()?,
            Sym::Tangent { m } => BundleSpec::tangent(m),
            _ => return None,
        })
    }
}

impl fmt::Display for SheafRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.variety;
        match self.sym {
            Sym::O { m } => write!(f, "O_{v}({m})"),
            Sym::Omega { i, m } => write!(f, "Omega^{i}_{v}({m})"),
            Sym::Tangent { m } => write!(f, "T_{v}({m})"),
            Sym::RestrictedOmega { i, m } => write!(f, "Omega^{i}_Gr({m})|_Y"),
            Sym::RestrictedTangent { m } => write!(f, "T_Gr({m})|_Y"),
        }
    }
}

/// Where a fact came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Justification {
    Bott { route: Route },
    ExactSequence { step: String },
    SerreDuality { partner: SheafRef },
    Raynaud { bound: usize },
    EulerCharacteristic { chi: i128 },
    Axiom { name: String, source: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub sheaf: SheafRef,
    pub degree: usize,
    pub value: CohomEntry,
    pub why: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub step: String,
    pub derived: Vec<Fact>,
}

/// The fact store together with the ordered derivation trace.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Ledger {
    pub p: u64,
    facts: BTreeMap<SheafRef, BTreeMap<usize, Fact>>,
    pub trace: Vec<TraceStep>,
}

fn normalise(v: CohomEntry) -> CohomEntry {
    match v {
        CohomEntry::Exact(0) | CohomEntry::UpperBound(0) => CohomEntry::Zero,
        v => v,
    }
}

/// Upper bound and (when known) exact value of one term of a sequence.
#[derive(Clone, Copy, Debug)]
struct Known {
    exact: Option<u128>,
    upper: Option<u128>,
}

impl Ledger {
    pub fn new(p: u64) -> Result<Self, LedgerError> {
        if p < 5 || !crate::exact::is_prime(p) {
            return Err(LedgerError::BadPrime(p));
        }
        Ok(Ledger {
            p,
            facts: BTreeMap::new(),
            trace: Vec::new(),
        })
    }

    pub fn facts(&self) -> impl Iterator<Item = &Fact> {
        self.facts.values().flat_map(|m| m.values())
    }

    /// Current knowledge of `h^j(sheaf)`; `None` when nothing is known.
    /// Sheaves on `Gr` are fetched from the Bott engine on first use.
    pub fn get(&mut self, sheaf: SheafRef, j: usize) -> Result<Option<CohomEntry>, LedgerError> {
        if j > sheaf.variety.dim() {
            return Ok(Some(CohomEntry::Zero));
        }
        if sheaf.variety == Variety::Gr && !self.facts.contains_key(&sheaf) {
            self.load_gr(sheaf)?;
        }
        Ok(self
            .facts
            .get(&sheaf)
            .and_then(|m| m.get(&j))
            .map(|f| f.value))
    }

    /// `h^j` if known exactly.
    pub fn exact(&mut self, sheaf: SheafRef, j: usize) -> Result<Option<u128>, LedgerError> {
        Ok(self.get(sheaf, j)?.and_then(|v| v.exact()))
    }

    fn load_gr(&mut self, sheaf: SheafRef) -> Result<(), LedgerError> {
        let b = sheaf
            .bundle_on_gr()
            .ok_or_else(|| LedgerError::BadSheaf(sheaf.to_string()))?;
        let t = resolve_cohomology(&b, self.p)?;
        let step = format!("Bott engine on {b} at p = {}", self.p);
        self.begin(&step);
        for (j, e) in t.entries.iter().enumerate() {
            self.record(&step, sheaf, j, *e, Justification::Bott { route: t.route })?;
        }
        Ok(())
    }

    fn begin(&mut self, step: &str) {
        self.trace.push(TraceStep {
            step: step.to_string(),
            derived: Vec::new(),
        });
    }

    /// Insert a fact, tightening what is known. Returns whether anything
    /// changed.
    pub fn record(
        &mut self,
        step: &str,
        sheaf: SheafRef,
        j: usize,
        value: CohomEntry,
        why: Justification,
    ) -> Result<bool, LedgerError> {
        let value = normalise(value);
        let clash = |old: CohomEntry| LedgerError::ContradictionInLedger {
            step: step.to_string(),
            sheaf,
            degree: j,
            old,
            new: value,
        };
        if j > sheaf.variety.dim() {
            return match value {
                CohomEntry::Exact(_) => Err(clash(CohomEntry::Zero)),
                _ => Ok(false),
            };
        }
        let slot = self.facts.entry(sheaf).or_default();
        let replace = match slot.get(&j).map(|f| f.value) {
            None => true,
            Some(old) => {
                let old_exact = old.exact();
                let old_upper = match old {
                    CohomEntry::UpperBound(u) => u,
                    _ => old_exact.unwrap(),
                };
                match (old_exact, value.exact(), value) {
                    (Some(a), Some(b), _) if a != b => return Err(clash(old)),
                    (Some(a), None, CohomEntry::UpperBound(u)) if a > u => return Err(clash(old)),
                    (Some(_), _, _) => false,
                    (None, Some(b), _) if b > old_upper => return Err(clash(old)),
                    (None, Some(_), _) => true,
                    (None, None, CohomEntry::UpperBound(u)) => u < old_upper,
                    (None, None, _) => false,
                }
            }
        };
        if replace {
            let fact = Fact {
                sheaf,
                degree: j,
                value,
                why,
            };
            slot.insert(j, fact.clone());
            if self.trace.is_empty() {
                self.begin(step);
            }
            self.trace.last_mut().unwrap().derived.push(fact);
        }
        Ok(replace)
    }

    fn term(&mut self, sheaves: &[SheafRef], j: usize) -> Result<Known, LedgerError> {
        let mut exact = Some(0u128);
        let mut upper = Some(0u128);
        for s in sheaves {
            let v = self.get(*s, j)?;
            let (e, u) = match v {
                None => (None, None),
                Some(CohomEntry::UpperBound(u)) => (None, Some(u)),
                Some(v) => {
                    let e = v.exact().unwrap();
                    (Some(e), Some(e))
                }
            };
            exact = exact.zip(e).map(|(a, b)| a + b);
            upper = upper.zip(u).map(|(a, b)| a + b);
        }
        Ok(Known { exact, upper })
    }

    /// Propagate the long exact sequence of `0 -> A -> B -> C -> 0`, where
    /// each slot is a direct sum of the listed sheaves (an empty list is the
    /// zero sheaf). Only single-sheaf slots receive new facts.
    pub fn short_exact(
        &mut self,
        step: &str,
        a: &[SheafRef],
        b: &[SheafRef],
        c: &[SheafRef],
    ) -> Result<(), LedgerError> {
        self.begin(step);
        let slots = [a, b, c];
        let len = 3 * 7;
        let why = Justification::ExactSequence {
            step: step.to_string(),
        };
        loop {
            let mut terms = Vec::with_capacity(len);
            for k in 0..len {
                terms.push(self.term(slots[k % 3], k / 3)?);
            }
            let mut changed = false;
            // segments between exact zeros
            let mut start = 0;
            while start < len {
                if terms[start].exact == Some(0) {
                    start += 1;
                    continue;
                }
                let mut end = start;
                while end < len && terms[end].exact != Some(0) {
                    end += 1;
                }
                let seg = start..end;
                let unknown: Vec<usize> = seg.clone().filter(|&k| terms[k].exact.is_none()).collect();
                let alt = |k: usize| if (k - start) % 2 == 0 { 1i128 } else { -1 };
                match unknown.as_slice() {
                    [] => {
                        let s: i128 = seg.clone().map(|k| alt(k) * terms[k].exact.unwrap() as i128).sum();
                        if s != 0 {
                            return Err(LedgerError::Inconsistent {
                                step: step.to_string(),
                                detail: format!("alternating sum {s} over an exact segment"),
                            });
                        }
                    }
                    [u] => {
                        let s: i128 = seg
                            .clone()
                            .filter(|k| k != u)
                            .map(|k| alt(k) * terms[k].exact.unwrap() as i128)
                            .sum();
                        let val = -s * alt(*u);
                        if val < 0 {
                            return Err(LedgerError::Inconsistent {
                                step: step.to_string(),
                                detail: format!("negative dimension {val} forced"),
                            });
                        }
                        if slots[u % 3].len() == 1 {
                            changed |= self.record(
                                step,
                                slots[u % 3][0],
                                u / 3,
                                CohomEntry::Exact(val as u128),
                                why.clone(),
                            )?;
                        }
                    }
                    _ => {}
                }
                start = end;
            }
            // dim H_k <= dim H_{k-1} + dim H_{k+1}
            for k in 0..len {
                if terms[k].exact.is_some() || slots[k % 3].len() != 1 {
                    continue;
                }
                let prev = if k == 0 { Some(0) } else { terms[k - 1].upper };
                let next = if k + 1 == len { Some(0) } else { terms[k + 1].upper };
                if let (Some(x), Some(y)) = (prev, next) {
                    changed |= self.record(
                        step,
                        slots[k % 3][0],
                        k / 3,
                        CohomEntry::UpperBound(x + y),
                        why.clone(),
                    )?;
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    /// Copy facts across Serre duality in both directions.
    pub fn serre(&mut self, sheaf: SheafRef) -> Result<(), LedgerError> {
        let partner = sheaf
            .serre_partner()
            .ok_or_else(|| LedgerError::BadSheaf(format!("no Serre partner for {sheaf}")))?;
        let d = sheaf.variety.dim();
        let step = format!("Serre duality {sheaf} <-> {partner}");
        self.begin(&step);
        for (from, to) in [(partner, sheaf), (sheaf, partner)] {
            for j in 0..=d {
                if let Some(v) = self.get(from, j)? {
                    self.record(&step, to, d - j, v, Justification::SerreDuality { partner: from })?;
                }
            }
        }
        Ok(())
    }

    /// Raynaud's Kodaira-Akizuki-Nakano vanishing for `Omega^i(-1)` on a
    /// variety liftable to `W_2`: `h^j = 0` for `i + j < min(p, dim)`.
    pub fn raynaud(&mut self, variety: Variety, i: u8) -> Result<(), LedgerError> {
        let bound = (self.p as usize).min(variety.dim());
        let sheaf = SheafRef::omega(variety, i, -1);
        let step = format!("Raynaud vanishing for {sheaf} (GM varieties lift to W(k))");
        self.begin(&step);
        for j in 0..bound.saturating_sub(i as usize) {
            self.record(&step, sheaf, j, CohomEntry::Zero, Justification::Raynaud { bound })?;
        }
        Ok(())
    }

    /// Close a sheaf with a single undetermined degree by its Euler
    /// characteristic, or check the characteristic when all are known.
    pub fn pin_by_chi(&mut self, sheaf: SheafRef, chi: i128) -> Result<(), LedgerError> {
        let d = sheaf.variety.dim();
        let step = format!("Euler characteristic chi({sheaf}) = {chi}");
        self.begin(&step);
        let mut open = Vec::new();
        let mut s = 0i128;
        for j in 0..=d {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            match self.exact(sheaf, j)? {
                Some(h) => s += sign * h as i128,
                None => open.push(j),
            }
        }
        match open.as_slice() {
            [] if s != chi => Err(LedgerError::Inconsistent {
                step,
                detail: format!("alternating sum {s}"),
            }),
            [] => Ok(()),
            [j] => {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                let h = (chi - s) * sign;
                if h < 0 {
                    return Err(LedgerError::Inconsistent {
                        step,
                        detail: format!("negative dimension {h}"),
                    });
                }
                self.record(
                    &step,
                    sheaf,
                    *j,
                    CohomEntry::Exact(h as u128),
                    Justification::EulerCharacteristic { chi },
                )?;
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn axiom(
        &mut self,
        name: &str,
        source: &str,
        sheaf: SheafRef,
        j: usize,
        value: CohomEntry,
    ) -> Result<(), LedgerError> {
        let step = format!("axiom: {name}");
        self.begin(&step);
        self.record(
            &step,
            sheaf,
            j,
            value,
            Justification::Axiom {
                name: name.to_string(),
                source: source.to_string(),
            },
        )?;
        Ok(())
    }

    /// All `h^j` for `j = 0..=dim`, failing on the first unknown.
    pub fn column(&mut self, sheaf: SheafRef) -> Result<Vec<u128>, LedgerError> {
        (0..=sheaf.variety.dim())
            .map(|j| {
                self.exact(sheaf, j)?
                    .ok_or(LedgerError::Undetermined { sheaf, degree: j })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(SheafRef::omega(Variety::Y, 5, 0), SheafRef::o(Variety::Y, -3));
        assert_eq!(SheafRef::omega(Variety::X, 6, 1), SheafRef::o(Variety::X, -3));
        assert_eq!(SheafRef::omega(Variety::Gr, 0, 2), SheafRef::o(Variety::Gr, 2));
        assert_eq!(SheafRef::restricted(0, 1), SheafRef::o(Variety::Y, 1));
        assert!(SheafRef::new(Variety::Y, Sym::Omega { i: 6, m: 0 }).is_err());
        assert!(SheafRef::new(Variety::X, Sym::RestrictedOmega { i: 1, m: 0 }).is_err());
    }

    #[test]
    fn serre_partners() {
        assert_eq!(
            SheafRef::o(Variety::Y, -4).serre_partner(),
            Some(SheafRef::o(Variety::Y, 1))
        );
        assert_eq!(
            SheafRef::omega(Variety::X, 2, 0).serre_partner(),
            Some(SheafRef::omega(Variety::X, 4, 0))
        );
    }

    #[test]
    fn sequence_pins_the_single_unknown() {
        let mut l = Ledger::new(5).unwrap();
        // 0 -> O_Gr -> O_Gr(2) -> O_Y(2) -> 0
        l.short_exact(
            "test",
            &[SheafRef::o(Variety::Gr, 0)],
            &[SheafRef::o(Variety::Gr, 2)],
            &[SheafRef::o(Variety::Y, 2)],
        )
        .unwrap();
        assert_eq!(l.column(SheafRef::o(Variety::Y, 2)).unwrap(), vec![49, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn contradictions_are_reported() {
        let mut l = Ledger::new(5).unwrap();
        let s = SheafRef::o(Variety::Y, 0);
        l.record("a", s, 0, CohomEntry::Exact(1), Justification::Raynaud { bound: 5 })
            .unwrap();
        let e = l
            .record("b", s, 0, CohomEntry::Exact(2), Justification::Raynaud { bound: 5 })
            .unwrap_err();
        assert!(matches!(e, LedgerError::ContradictionInLedger { .. }));
        assert!(l
            .record("c", s, 0, CohomEntry::UpperBound(3), Justification::Raynaud { bound: 5 })
            .is_ok());
    }

    #[test]
    fn bounds_from_neighbours() {
        let mut l = Ledger::new(5).unwrap();
        let a = SheafRef::o(Variety::Y, 7);
        let b = SheafRef::o(Variety::Y, 8);
        let c = SheafRef::o(Variety::Y, 9);
        for j in 0..6 {
            let v = if j == 0 { CohomEntry::Exact(3) } else { CohomEntry::Zero };
            l.record("t", a, j, v, Justification::Raynaud { bound: 0 }).unwrap();
            l.record("t", c, j, CohomEntry::Zero, Justification::Raynaud { bound: 0 })
                .unwrap();
        }
        l.short_exact("t", &[a], &[b], &[c]).unwrap();
        assert_eq!(l.column(b).unwrap(), vec![3, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn small_primes_are_refused() {
        assert!(matches!(Ledger::new(3), Err(LedgerError::BadPrime(3))));
    }
}
