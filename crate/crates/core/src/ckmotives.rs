//! Tautological correspondences on GM fourfolds and sixfolds and their
//! Chow–Künneth projectors.
//!
//! A product correspondence `a × b` acts by `x ↦ deg(x·a)·b`, so the
//! composite "first `c × d`, then `a × b`" is `deg(d·a)·(c × b)`. With this
//! convention `π⁰ = pt × X` sends the fundamental class to itself.
//! Classes are formal combinations of `H^a e₂^b`; equalities of classes
//! and of product parts of correspondences are tested numerically
//! (against all monomials of complementary codimension).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{kernel, Matrix, Rat, Rationals};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CkError {
    #[error("expected a class of codimension {expected}, found codimension {found}")]
    WrongCodimension { expected: u32, found: u32 },
    #[error("identity fails: {which}")]
    IdentityViolation { which: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variety {
    Gm4,
    Gm6,
}

impl Variety {
    pub fn dim(self) -> u32 {
        match self {
            Variety::Gm4 => 4,
            Variety::Gm6 => 6,
        }
    }

    /// All tautological monomials of the given codimension.
    pub fn monomials(self, codim: u32) -> Vec<Mono> {
        let max_e2 = if self == Variety::Gm6 { codim / 2 } else { 0 };
        (0..=max_e2).map(|b| Mono { h: codim - 2 * b, e2: b }).collect()
    }

    pub fn all_monomials(self) -> Vec<Mono> {
        (0..=self.dim()).flat_map(|c| self.monomials(c)).collect()
    }
}

impl std::str::FromStr for Variety {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "gm4" => Ok(Variety::Gm4),
            "gm6" => Ok(Variety::Gm6),
            other => Err(format!("unknown variety {other:?} (expected gm4 or gm6)")),
        }
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variety::Gm4 => "gm4",
            Variety::Gm6 => "gm6",
        })
    }
}

/// `H^h · e₂^e2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub h: u32,
    pub e2: u32,
}

impl Mono {
    pub fn codim(self) -> u32 {
        self.h + 2 * self.e2
    }

    fn times(self, o: Mono) -> Mono {
        Mono {
            h: self.h + o.h,
            e2: self.e2 + o.e2,
        }
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pow = |name: &str, k: u32| match k {
            0 => String::new(),
            1 => name.to_string(),
            k => format!("{name}^{k}"),
        };
        match (self.h, self.e2) {
            (0, 0) => f.write_str("1"),
            (_, 0) => f.write_str(&pow("H", self.h)),
            (0, _) => f.write_str(&pow("e2", self.e2)),
            _ => write!(f, "{}·{}", pow("H", self.h), pow("e2", self.e2)),
        }
    }
}

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

fn insert_add<K: Ord>(map: &mut BTreeMap<K, Rat>, k: K, c: Rat) {
    let slot = map.entry(k).or_insert_with(Rat::zero);
    *slot += c;
}

fn prune<K: Ord>(map: &mut BTreeMap<K, Rat>) {
    map.retain(|_, c| !c.is_zero());
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TautClass {
    pub variety: Variety,
    terms: BTreeMap<Mono, Rat>,
}

impl TautClass {
    pub fn zero(variety: Variety) -> Self {
        TautClass {
            variety,
            terms: BTreeMap::new(),
        }
    }

    /// `H^h e₂^e2`; zero when the codimension exceeds the dimension.
    pub fn mono(variety: Variety, h: u32, e2: u32) -> Self {
        assert!(variety == Variety::Gm6 || e2 == 0, "e2 lives on GM sixfolds only");
        let m = Mono { h, e2 };
        let mut c = TautClass::zero(variety);
        if m.codim() <= variety.dim() {
            c.terms.insert(m, Rat::one());
        }
        c
    }

    pub fn one(variety: Variety) -> Self {
        TautClass::mono(variety, 0, 0)
    }

    pub fn h(variety: Variety, k: u32) -> Self {
        TautClass::mono(variety, k, 0)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut terms: BTreeMap<Mono, Rat> = self.terms.iter().map(|(m, x)| (*m, x * c)).collect();
        prune(&mut terms);
        TautClass {
            variety: self.variety,
            terms,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The codimension if the class is homogeneous and nonzero.
    pub fn codim(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.codim());
        let first = it.next()?;
        it.all(|c| c == first).then_some(first)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (sign, abs) = if c < &Rat::zero() { ("-", -c) } else { ("+", c.clone()) };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if abs.is_one() {
                out.push_str(&m.to_string());
            } else if m.codim() == 0 {
                out.push_str(&abs.to_string());
            } else {
                out.push_str(&format!("{abs}·{m}"));
            }
        }
        out
    }
}

impl fmt::Display for TautClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &TautClass {
    type Output = TautClass;
    fn add(self, o: &TautClass) -> TautClass {
        assert_eq!(self.variety, o.variety);
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            insert_add(&mut terms, *m, c.clone());
        }
        prune(&mut terms);
        TautClass {
            variety: self.variety,
            terms,
        }
    }
}

impl Neg for &TautClass {
    type Output = TautClass;
    fn neg(self) -> TautClass {
        self.scale(&-Rat::one())
    }
}

impl Sub for &TautClass {
    type Output = TautClass;
    fn sub(self, o: &TautClass) -> TautClass {
        self + &(-o)
    }
}

impl Mul for &TautClass {
    type Output = TautClass;
    fn mul(self, o: &TautClass) -> TautClass {
        assert_eq!(self.variety, o.variety);
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            for (n, d) in &o.terms {
                let mn = m.times(*n);
                if mn.codim() <= self.variety.dim() {
                    insert_add(&mut terms, mn, c * d);
                }
            }
        }
        prune(&mut terms);
        TautClass {
            variety: self.variety,
            terms,
        }
    }
}

/// Degrees of the top-codimension monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degrees {
    pub variety: Variety,
    values: BTreeMap<Mono, Rat>,
}

impl Degrees {
    /// GM4: `H⁴ = 10`. GM6: `H⁶ = 10`, `H⁴e₂ = 4`, `H²e₂² = 2`, `e₂³ = 2`.
    pub fn standard(variety: Variety) -> Self {
        let table: Vec<(Mono, i64)> = match variety {
            Variety::Gm4 => vec![(Mono { h: 4, e2: 0 }, 10)],
            Variety::Gm6 => vec![
                (Mono { h: 6, e2: 0 }, 10),
                (Mono { h: 4, e2: 1 }, 4),
                (Mono { h: 2, e2: 2 }, 2),
                (Mono { h: 0, e2: 3 }, 2),
            ],
        };
        let values = table
            .into_iter()
        .map(|(m, v)| (m, Rat::from_integer(BigInt::from(v))))
        .collect();
        Degrees { variety, values }
    }

    /// The same table with one value replaced (for negative controls).
    pub fn with(mut self, h: u32, e2: u32, value: Rat) -> Self {
        let m = Mono { h, e2 };
        assert!(self.values.contains_key(&m), "{m} is not a top monomial");
        self.values.insert(m, value);
        self
    }

    pub fn get(&self, h: u32, e2: u32) -> Option<&Rat> {
        self.values.get(&Mono { h, e2 })
    }

    /// `∫_X x` for `x` of top codimension; other components must vanish.
    pub fn degree(&self, x: &TautClass) -> Result<Rat, CkError> {
        let dim = self.variety.dim();
        let mut acc = Rat::zero();
        for (m, c) in &x.terms {
            if m.codim() != dim {
                return Err(CkError::WrongCodimension {
                    expected: dim,
                    found: m.codim(),
                });
            }
            acc += c * &self.values[m];
        }
        Ok(acc)
    }

    /// The top-degree part of `x · y` integrated; lower parts pair to zero.
    pub fn pairing(&self, x: &TautClass, y: &TautClass) -> Rat {
        let dim = self.variety.dim();
        let prod = x * y;
        prod.terms
            .iter()
            .filter(|(m, _)| m.codim() == dim)
            .map(|(m, c)| c * &self.values[m])
            .sum()
    }

    /// `x ≡ y` when they pair equally with every monomial.
    pub fn numerically_equal(&self, x: &TautClass, y: &TautClass) -> bool {
        let d = x - y;
        self.variety
            .all_monomials()
            .iter()
            .all(|m| self.pairing(&d, &TautClass::mono(self.variety, m.h, m.e2)).is_zero())
    }
}

/// `δ·Δ + Σ c·(a × b)` on `X × X`, expanded into monomial pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correspondence {
    pub variety: Variety,
    pub diagonal: Rat,
    terms: BTreeMap<(Mono, Mono), Rat>,
}

impl Correspondence {
    pub fn zero(variety: Variety) -> Self {
        Correspondence {
            variety,
            diagonal: Rat::zero(),
            terms: BTreeMap::new(),
        }
    }

    pub fn diagonal(variety: Variety) -> Self {
        Correspondence {
            diagonal: Rat::one(),
            ..Correspondence::zero(variety)
        }
    }

    /// `a × b`, which must have `codim a + codim b = dim`.
    pub fn product(a: &TautClass, b: &TautClass) -> Self {
        assert_eq!(a.variety, b.variety);
        let v = a.variety;
        let mut terms = BTreeMap::new();
        for (m, c) in &a.terms {
            for (n, d) in &b.terms {
                assert_eq!(m.codim() + n.codim(), v.dim(), "{m} × {n} is not of codimension dim X");
                insert_add(&mut terms, (*m, *n), c * d);
            }
        }
        prune(&mut terms);
        Correspondence {
            variety: v,
            diagonal: Rat::zero(),
            terms,
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut terms: BTreeMap<_, _> = self.terms.iter().map(|(k, x)| (*k, x * c)).collect();
        prune(&mut terms);
        Correspondence {
            variety: self.variety,
            diagonal: &self.diagonal * c,
            terms,
        }
    }

    pub fn transpose(&self) -> Self {
        let mut terms: BTreeMap<_, _> = self.terms.iter().map(|((a, b), c)| ((*b, *a), c.clone())).collect();
        prune(&mut terms);
        Correspondence {
            variety: self.variety,
            diagonal: self.diagonal.clone(),
            terms,
        }
    }

    pub fn product_terms(&self) -> impl Iterator<Item = (&(Mono, Mono), &Rat)> {
        self.terms.iter()
    }

    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        if !self.diagonal.is_zero() {
            parts.push(if self.diagonal.is_one() { "Δ".to_string() } else { format!("{}·Δ", self.diagonal) });
        }
        for ((a, b), c) in &self.terms {
            parts.push(if c.is_one() { format!("{a} × {b}") } else { format!("{c}·({a} × {b})") });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for Correspondence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &Correspondence {
    type Output = Correspondence;
    fn add(self, o: &Correspondence) -> Correspondence {
        assert_eq!(self.variety, o.variety);
        let mut terms = self.terms.clone();
        for (k, c) in &o.terms {
            insert_add(&mut terms, *k, c.clone());
        }
        prune(&mut terms);
        Correspondence {
            variety: self.variety,
            diagonal: &self.diagonal + &o.diagonal,
            terms,
        }
    }
}

impl Sub for &Correspondence {
    type Output = Correspondence;
    fn sub(self, o: &Correspondence) -> Correspondence {
        self + &o.scale(&-Rat::one())
    }
}

/// `g ∘ f`: first `f`, then `g`.
pub fn compose(deg: &Degrees, g: &Correspondence, f: &Correspondence) -> Correspondence {
    assert_eq!(g.variety, f.variety);
    let v = g.variety;
    let mut out = Correspondence {
        variety: v,
        diagonal: &g.diagonal * &f.diagonal,
        terms: BTreeMap::new(),
    };
    for (k, c) in &f.terms {
        insert_add(&mut out.terms, *k, c * &g.diagonal);
    }
    for (k, c) in &g.terms {
        insert_add(&mut out.terms, *k, c * &f.diagonal);
    }
    for ((fc, fd), x) in &f.terms {
        for ((ga, gb), y) in &g.terms {
            let d = deg.pairing(&TautClass::mono(v, fd.h, fd.e2), &TautClass::mono(v, ga.h, ga.e2));
            if !d.is_zero() {
                insert_add(&mut out.terms, (*fc, *gb), x * y * d);
            }
        }
    }
    prune(&mut out.terms);
    out
}

/// The action on classes: `Δ` is the identity and `a × b` sends `x` to `deg(x·a)·b`.
pub fn act_on(deg: &Degrees, c: &Correspondence, x: &TautClass) -> TautClass {
    let v = c.variety;
    let mut out = x.scale(&c.diagonal);
    for ((a, b), k) in &c.terms {
        let d = deg.pairing(x, &TautClass::mono(v, a.h, a.e2));
        if !d.is_zero() {
            out = &out + &TautClass::mono(v, b.h, b.e2).scale(&(k * d));
        }
    }
    out
}

/// Equal diagonal coefficients and numerically equal product parts.
pub fn correspondences_agree(deg: &Degrees, x: &Correspondence, y: &Correspondence) -> bool {
    if x.diagonal != y.diagonal {
        return false;
    }
    let d = x - y;
    let v = x.variety;
    let monos = v.all_monomials();
    monos.iter().all(|m1| {
        monos.iter().all(|m2| {
            let t1 = TautClass::mono(v, m1.h, m1.e2);
            let t2 = TautClass::mono(v, m2.h, m2.e2);
            let s: Rat = d
                .terms
                .iter()
                .map(|((a, b), c)| {
                    c * deg.pairing(&TautClass::mono(v, a.h, a.e2), &t1) * deg.pairing(&TautClass::mono(v, b.h, b.e2), &t2)
                })
                .sum();
            s.is_zero()
        })
    })
}

/// Named classes on a GM sixfold.
pub struct Gm6Classes {
    pub h: TautClass,
    pub e1: TautClass,
    pub e2: TautClass,
    pub f1: TautClass,
    pub f2: TautClass,
    pub pt: TautClass,
}

pub fn gm6_classes() -> Gm6Classes {
    let v = Variety::Gm6;
    let h4 = TautClass::h(v, 4);
    let h2e2 = TautClass::mono(v, 2, 1);
    Gm6Classes {
        h: TautClass::h(v, 1),
        e1: TautClass::h(v, 2),
        e2: TautClass::mono(v, 0, 1),
        f1: &h4.scale(&rat(1, 2)) - &h2e2,
        f2: &h2e2.scale(&rat(5, 2)) - &h4,
        pt: TautClass::h(v, 6).scale(&rat(1, 10)),
    }
}

pub fn point_class(variety: Variety) -> TautClass {
    TautClass::h(variety, variety.dim()).scale(&rat(1, 10))
}

/// `(i, π^i)` for the even indices `i = 0, 2, …, 2·dim`.
pub fn projectors(variety: Variety) -> Vec<(u32, Correspondence)> {
    let v = variety;
    let n = v.dim();
    let one = TautClass::one(v);
    let pt = point_class(v);
    let tenth = rat(1, 10);
    let h = TautClass::h(v, 1);
    let hn1 = TautClass::h(v, n - 1);
    let mut list = vec![
        (0, Correspondence::product(&pt, &one)),
        (2, Correspondence::product(&hn1, &h).scale(&tenth)),
        (2 * n - 2, Correspondence::product(&h, &hn1).scale(&tenth)),
        (2 * n, Correspondence::product(&one, &pt)),
    ];
    if v == Variety::Gm6 {
        let c = gm6_classes();
        let p4 = &Correspondence::product(&c.f1, &c.e1) + &Correspondence::product(&c.f2, &c.e2);
        let p8 = &Correspondence::product(&c.e1, &c.f1) + &Correspondence::product(&c.e2, &c.f2);
        list.push((4, p4));
        list.push((8, p8));
    }
    let rest = list.iter().fold(Correspondence::zero(v), |acc, (_, p)| &acc + p);
    list.push((n, &Correspondence::diagonal(v) - &rest));
    list.sort_by_key(|(i, _)| *i);
    list
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CkCheck {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CkReport {
    pub variety: Variety,
    pub projectors: Vec<(u32, String)>,
    pub checks: Vec<CkCheck>,
}

impl CkReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CkCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Idempotence, orthogonality, completeness and degree selection,
/// evaluated with the given degree table.
pub fn check_chow_kunneth(deg: &Degrees) -> CkReport {
    let v = deg.variety;
    let ps = projectors(v);
    let mut checks = Vec::new();
    let mut push = |name: String, passed: bool| checks.push(CkCheck { name, passed });
    let zero = Correspondence::zero(v);
    for (i, p) in &ps {
        for (j, q) in &ps {
            let comp = compose(deg, p, q);
            if i == j {
                push(format!("π{i}∘π{i} = π{i}"), correspondences_agree(deg, &comp, p));
            } else {
                push(format!("π{i}∘π{j} = 0"), correspondences_agree(deg, &comp, &zero));
            }
        }
    }
    let total = ps.iter().fold(Correspondence::zero(v), |acc, (_, p)| &acc + p);
    push("Σπi = Δ".into(), correspondences_agree(deg, &total, &Correspondence::diagonal(v)));
    for m in v.all_monomials() {
        let x = TautClass::mono(v, m.h, m.e2);
        for (i, p) in &ps {
            let expected = if 2 * m.codim() == *i { x.clone() } else { TautClass::zero(v) };
            let got = act_on(deg, p, &x);
            push(format!("π{i} acts on {m} by degree selection"), deg.numerically_equal(&got, &expected));
        }
    }
    CkReport {
        variety: v,
        projectors: ps.iter().map(|(i, p)| (*i, p.render())).collect(),
        checks,
    }
}

/// [`check_chow_kunneth`] with the standard degrees; the first failed
/// identity becomes the error.
pub fn verify_chow_kunneth(variety: Variety) -> Result<CkReport, CkError> {
    verify_with(&Degrees::standard(variety))
}

pub fn verify_with(deg: &Degrees) -> Result<CkReport, CkError> {
    let rep = check_chow_kunneth(deg);
    match rep.first_failure() {
        Some(c) => Err(CkError::IdentityViolation { which: c.name.clone() }),
        None => Ok(rep),
    }
}

/// Solve `∫ e_i·f_j = δ_ij` for `(deg H⁴e₂, deg H²e₂²)` given `deg H⁶`.
/// `None` unless the solution exists and is unique.
pub fn solve_delta_system(deg_h6: &Rat) -> Option<(Rat, Rat)> {
    // unknowns (b, c) = (deg H⁴e₂, deg H²e₂²); rows are
    // e1·f1: a/2 - b = 1, e1·f2: -a + 5b/2 = 0, e2·f1: b/2 - c = 0, e2·f2: -b + 5c/2 = 1
    let a = deg_h6.clone();
    let z = Rat::zero;
    let rows = vec![
        vec![-Rat::one(), z(), &a / rat(2, 1) - Rat::one()],
        vec![rat(5, 2), z(), -a.clone()],
        vec![rat(1, 2), -Rat::one(), z()],
        vec![-Rat::one(), rat(5, 2), -Rat::one()],
    ];
    let m = Matrix::from_rows_with_cols(rows, 3);
    let ker = kernel(&Rationals, &m)?;
    if ker.len() != 1 || ker[0][2].is_zero() {
        return None;
    }
    let s = &ker[0][2];
    Some((&ker[0][0] / s, &ker[0][1] / s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn std6() -> Degrees {
        Degrees::standard(Variety::Gm6)
    }

    fn find(v: Variety, i: u32) -> Correspondence {
        projectors(v).into_iter().find(|(j, _)| *j == i).unwrap().1
    }

    #[test]
    fn degrees_and_duality() {
        let d = std6();
        let c = gm6_classes();
        assert_eq!(d.degree(&TautClass::h(Variety::Gm6, 6)).unwrap(), rat(10, 1));
        assert_eq!(d.degree(&c.pt).unwrap(), Rat::one());
        let es = [&c.e1, &c.e2];
        let fs = [&c.f1, &c.f2];
        for (i, e) in es.iter().enumerate() {
            for (j, f) in fs.iter().enumerate() {
                let want = if i == j { Rat::one() } else { Rat::zero() };
                assert_eq!(d.degree(&(*e * *f)).unwrap(), want, "e{} f{}", i + 1, j + 1);
            }
        }
        assert_eq!(
            d.degree(&TautClass::h(Variety::Gm6, 5)),
            Err(CkError::WrongCodimension { expected: 6, found: 5 })
        );
    }

    #[test]
    fn delta_system_has_a_unique_solution() {
        assert_eq!(solve_delta_system(&rat(10, 1)), Some((rat(4, 1), rat(2, 1))));
        // any other deg H⁶ makes the four equations inconsistent
        assert_eq!(solve_delta_system(&rat(12, 1)), None);
    }

    #[test]
    fn e2_cubed_from_schubert_calculus() {
        // On Gr(2,5): σ11² = σ22 and σ11·σ22 = σ33 (the point). The
        // Gushel map has degree 2, so ∫ e2³ = 2 ∫ σ11³ = 2.
        let sigma11_cubed_on_grassmannian = 1;
        assert_eq!(std6().get(0, 3), Some(&rat(2 * sigma11_cubed_on_grassmannian, 1)));
    }

    #[test]
    fn printed_projectors() {
        let v = Variety::Gm6;
        let c = gm6_classes();
        assert_eq!(find(v, 0), Correspondence::product(&c.pt, &TautClass::one(v)));
        let p8 = &Correspondence::product(&c.e1, &c.f1) + &Correspondence::product(&c.e2, &c.f2);
        assert_eq!(find(v, 8), p8);
        let p6 = find(v, 6);
        assert_eq!(p6.diagonal, Rat::one());
        let others = projectors(v).into_iter().filter(|(i, _)| *i != 6).fold(Correspondence::zero(v), |a, (_, p)| &a + &p);
        assert_eq!(&p6 + &others, Correspondence::diagonal(v));
        assert_eq!(projectors(Variety::Gm4).len(), 5);
        assert_eq!(projectors(v).len(), 7);
        assert_eq!(find(Variety::Gm4, 4).diagonal, Rat::one());
    }

    #[test]
    fn composition_examples() {
        let d4 = Degrees::standard(Variety::Gm4);
        let p2 = find(Variety::Gm4, 2);
        assert_eq!(compose(&d4, &p2, &p2), p2);
        let delta = Correspondence::diagonal(Variety::Gm4);
        assert_eq!(compose(&d4, &delta, &p2), p2);
        assert_eq!(compose(&d4, &p2, &delta), p2);
        let d6 = std6();
        assert_eq!(compose(&d6, &find(Variety::Gm6, 4), &find(Variety::Gm6, 2)), Correspondence::zero(Variety::Gm6));
    }

    #[test]
    fn action_examples() {
        let v = Variety::Gm6;
        let d = std6();
        let c = gm6_classes();
        assert_eq!(act_on(&d, &find(v, 4), &c.e2), c.e2);
        assert_eq!(act_on(&d, &find(v, 4), &c.e1), c.e1);
        assert_eq!(act_on(&d, &find(v, 2), &c.h), c.h);
        let d4 = Degrees::standard(Variety::Gm4);
        let one = TautClass::one(Variety::Gm4);
        assert_eq!(act_on(&d4, &find(Variety::Gm4, 0), &one), one);
        assert!(act_on(&d4, &find(Variety::Gm4, 0), &TautClass::h(Variety::Gm4, 1)).is_zero());
    }

    #[test]
    fn full_suites_pass() {
        for v in [Variety::Gm4, Variety::Gm6] {
            let rep = verify_chow_kunneth(v).unwrap();
            assert!(rep.passed());
        }
    }

    #[test]
    fn mutated_degree_breaks_the_projectors() {
        let bad = std6().with(4, 1, rat(5, 1));
        let err = verify_with(&bad).unwrap_err();
        assert!(matches!(err, CkError::IdentityViolation { .. }));
        assert!(!check_chow_kunneth(&bad).passed());
    }

    #[test]
    fn transposes_swap_degrees() {
        for v in [Variety::Gm4, Variety::Gm6] {
            let ps = projectors(v);
            for (i, p) in &ps {
                assert_eq!(p.transpose(), find(v, 2 * v.dim() - i), "π{i}");
            }
        }
    }

    #[test]
    fn rendering() {
        let c = gm6_classes();
        assert_eq!(c.f1.render(), "1/2·H^4 - H^2·e2");
        assert_eq!(find(Variety::Gm4, 2).render(), "1/10·(H^3 × H)");
    }

    fn correspondence(v: Variety) -> impl Strategy<Value = Correspondence> {
        let pairs: Vec<(Mono, Mono)> = v
            .all_monomials()
            .into_iter()
            .flat_map(|a| v.monomials(v.dim() - a.codim()).into_iter().map(move |b| (a, b)))
            .collect();
        let n = pairs.len();
        (-2i64..=2, prop::collection::vec((0..n, -3i64..=3, 1i64..=3), 0..5)).prop_map(move |(diag, ts)| {
            let mut c = Correspondence::zero(v).scale(&Rat::zero());
            c.diagonal = rat(diag, 1);
            for (k, num, den) in ts {
                let (a, b) = pairs[k];
                let term = Correspondence::product(&TautClass::mono(v, a.h, a.e2), &TautClass::mono(v, b.h, b.e2));
                c = &c + &term.scale(&rat(num, den));
            }
            c
        })
    }

    proptest! {
        #[test]
        fn composition_is_associative(
            f in correspondence(Variety::Gm6),
            g in correspondence(Variety::Gm6),
            h in correspondence(Variety::Gm6),
        ) {
            let d = std6();
            prop_assert_eq!(compose(&d, &h, &compose(&d, &g, &f)), compose(&d, &compose(&d, &h, &g), &f));
        }

        #[test]
        fn transpose_reverses_composition(f in correspondence(Variety::Gm6), g in correspondence(Variety::Gm6)) {
            let d = std6();
            prop_assert_eq!(compose(&d, &g, &f).transpose(), compose(&d, &f.transpose(), &g.transpose()));
        }

        #[test]
        fn action_is_compatible_with_composition(
            f in correspondence(Variety::Gm6),
            g in correspondence(Variety::Gm6),
            m in 0usize..16,
        ) {
            let d = std6();
            let monos = Variety::Gm6.all_monomials();
            let mm = monos[m % monos.len()];
            let x = TautClass::mono(Variety::Gm6, mm.h, mm.e2);
            prop_assert_eq!(act_on(&d, &compose(&d, &g, &f), &x), act_on(&d, &g, &act_on(&d, &f, &x)));
        }
    }
}
