//! Search for diagonal vector fields `A = diag(-a)` preserving a quadric
//! section of `Gr(2,5)`.
//!
//! Every quadratic monomial `x_ij x_lm` gives the linear condition
//! `a_i + a_j + a_l + a_m = 0` on `a`. The 45 distinct conditions form the
//! matrix [`EMatrix`]. A 5×5 submatrix of full rational rank whose
//! determinant is divisible by `p` determines `a` mod `p` up to scale;
//! [`enumerate_hits`] walks all `C(45,5)` submatrices and [`filter_hits`]
//! applies the two necessary conditions for a smooth section and merges
//! the survivors under relabeling and rescaling.

mod families;
mod nilpotent;

pub use families::{
    certify_family_singular, match_known_family, numeric_recheck, known_families, relabel_monomials,
    CertCheck, Coord, NumericReport, KnownFamily, SingularityCertificate,
};
pub use nilpotent::{nilpotent_kernels, nilpotent_pattern, pattern_bits, verify_nilpotent_lift, NilpotentReport, PatternResult};

use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact::{det_small, is_prime, kernel, rank, Matrix, PrimeField, Ring};
use crate::pluecker::{Monomial55, PlueckerIndex};
use crate::weights::WeylElem;

/// `C(45, 5)`.
pub const SUBSET_COUNT: u64 = 1_221_759;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum VfError {
    #[error("rank lemma violated: rows {rows:?} have rank {rank} mod {p}")]
    LemmaViolation { rows: [u8; 5], p: u64, rank: usize },
    #[error("certificate for family {family} failed: {check}")]
    CertificateFailed { family: u8, check: String },
    #[error("kernel dimension jumps for pattern {pattern} at p = {p}: {over_q} over Q, {over_p} mod p")]
    KernelJump {
        pattern: String,
        p: u64,
        over_q: usize,
        over_p: usize,
    },
    #[error("no listed family matches a = {a:?} at p = {p}")]
    UnknownFamily { p: u64, a: Vec<u64> },
    #[error("bad family id {0}")]
    BadFamily(u8),
    #[error("{0} is not a prime >= 5")]
    BadPrime(u64),
    #[error("determinant {det} has a cofactor {cofactor} outside the trial-division range")]
    Factorization { det: i128, cofactor: i128 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RowType {
    /// `(1,1,0,0,0)`, from a square `x_ij^2` (weight halved).
    Square,
    /// `(2,1,1,0,0)`, from `x_ij x_ik`.
    Mixed,
    /// `(1,1,1,1,0)`, from the three monomials `x_ij x_lm` on four indices.
    Disjoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ERow {
    pub vector: [i64; 5],
    pub kind: RowType,
    pub monomials: Vec<Monomial55>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EMatrix {
    pub rows: Vec<ERow>,
}

impl EMatrix {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn type_counts(&self) -> [usize; 3] {
        let mut c = [0; 3];
        for r in &self.rows {
            c[r.kind as usize] += 1;
        }
        c
    }

    /// Row index carrying a monomial.
    pub fn row_of(&self, m: &Monomial55) -> Option<usize> {
        self.rows.iter().position(|r| r.monomials.contains(m))
    }

    fn submatrix(&self, idx: &[u8; 5]) -> [[i64; 5]; 5] {
        idx.map(|i| self.rows[i as usize].vector)
    }

    /// `M_A`: monomials whose row is orthogonal to `a` mod `p`, in monomial order.
    pub fn m_a(&self, a: &[u64; 5], p: u64) -> Vec<Monomial55> {
        let mut out: Vec<Monomial55> = self
            .rows
            .iter()
            .filter(|r| row_dot_mod(&r.vector, a, p) == 0)
            .flat_map(|r| r.monomials.iter().copied())
            .collect();
        out.sort();
        out
    }
}

fn row_dot_mod(v: &[i64; 5], a: &[u64; 5], p: u64) -> u64 {
    v.iter().zip(a).map(|(&x, &y)| x as u64 * y % p).sum::<u64>() % p
}

/// The 45 rows: squares, then mixed monomials, then the five disjoint
/// classes, each block in monomial order.
pub fn build_e() -> EMatrix {
    let mut squares = Vec::new();
    let mut mixed = Vec::new();
    let mut disjoint: BTreeMap<[i64; 5], Vec<Monomial55>> = BTreeMap::new();
    let mut disjoint_order = Vec::new();
    for m in Monomial55::all() {
        let w = m.weight();
        if m.is_square() {
            squares.push(ERow {
                vector: w.map(|x| x / 2),
                kind: RowType::Square,
                monomials: vec![m],
            });
        } else if m.is_disjoint() {
            if !disjoint.contains_key(&w) {
                disjoint_order.push(w);
            }
            disjoint.entry(w).or_default().push(m);
        } else {
            mixed.push(ERow {
                vector: w,
                kind: RowType::Mixed,
                monomials: vec![m],
            });
        }
    }
    let mut rows = squares;
    rows.extend(mixed);
    rows.extend(disjoint_order.into_iter().map(|w| ERow {
        vector: w,
        kind: RowType::Disjoint,
        monomials: disjoint[&w].clone(),
    }));
    EMatrix { rows }
}

/// One `(N, p)` pair with `rank_Q(N) = 5` and `p | det(N)`, together with
/// the kernel `a` mod `p` normalized to have first nonzero entry 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SearchHit {
    pub p: u64,
    pub a: [u64; 5],
    pub witness: [u8; 5],
}

impl SearchHit {
    pub fn m_a(&self, e: &EMatrix) -> Vec<Monomial55> {
        e.m_a(&self.a, self.p)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub subsets: u64,
    pub nonsingular: u64,
    /// Number of nonsingular `N` whose determinant each prime `p >= 5` divides.
    pub prime_counts: BTreeMap<u64, u64>,
    pub hits: Vec<SearchHit>,
    pub violations: Vec<([u8; 5], u64, usize)>,
}

impl EnumerationReport {
    fn merge(mut self, other: EnumerationReport) -> EnumerationReport {
        self.subsets += other.subsets;
        self.nonsingular += other.nonsingular;
        for (p, c) in other.prime_counts {
            *self.prime_counts.entry(p).or_default() += c;
        }
        self.hits.extend(other.hits);
        self.violations.extend(other.violations);
        self
    }

    /// Distinct `(p, a)` with `a` up to scale.
    pub fn distinct_classes(&self) -> BTreeSet<(u64, [u64; 5])> {
        self.hits.iter().map(|h| (h.p, h.a)).collect()
    }

    /// The rank lemma as a result.
    pub fn rank_lemma(&self) -> Result<(), VfError> {
        match self.violations.first() {
            None => Ok(()),
            Some(&(rows, p, rank)) => Err(VfError::LemmaViolation { rows, p, rank }),
        }
    }
}

/// Primes `>= 5` dividing a nonzero determinant. Determinants of 0/1/2
/// matrices of this size are far below `200^2`, so trial division by
/// primes up to 200 leaves a cofactor that is 1 or prime.
pub fn det_primes(det: i128) -> Result<Vec<u64>, VfError> {
    let mut n = det.unsigned_abs();
    let mut out = Vec::new();
    for d in 2u128..200 {
        if n % d == 0 {
            if d >= 5 {
                out.push(d as u64);
            }
            while n % d == 0 {
                n /= d;
            }
        }
    }
    if n > 1 {
        if n < 200 * 200 && is_prime(n as u64) {
            out.push(n as u64);
        } else {
            return Err(VfError::Factorization { det, cofactor: n as i128 });
        }
    }
    Ok(out)
}

fn normalize(a: &mut [u64; 5], field: &PrimeField) {
    if let Some(lead) = a.iter().find(|x| **x != 0).copied() {
        let inv = field.inv(&lead).expect("nonzero in a field");
        for x in a.iter_mut() {
            *x = field.mul(x, &inv);
        }
    }
}

/// Rank and (when it is 4) the normalized kernel vector of a 5×5 integer
/// matrix reduced mod `p`.
fn kernel_mod(rows: &[[i64; 5]; 5], p: u64) -> (usize, Option<[u64; 5]>) {
    let field = PrimeField::new(p).expect("prime");
    let m = Matrix::from_fn(5, 5, |i, j| field.from_i64(rows[i][j]));
    let r = rank(&field, &m);
    if r != 4 {
        return (r, None);
    }
    let basis = kernel(&field, &m).expect("kernel over a field");
    let mut a = [0u64; 5];
    a.copy_from_slice(&basis[0]);
    normalize(&mut a, &field);
    (r, Some(a))
}

fn scan_prefix(e: &EMatrix, i: u8, j: u8, filter: &Option<RangeInclusive<u64>>) -> EnumerationReport {
    let mut rep = EnumerationReport::default();
    let n = e.len() as u8;
    for k in j + 1..n {
        for l in k + 1..n {
            for m in l + 1..n {
                let idx = [i, j, k, l, m];
                rep.subsets += 1;
                let rows = e.submatrix(&idx);
                let det = det_small(&rows);
                if det == 0 {
                    continue;
                }
                rep.nonsingular += 1;
                let primes = det_primes(det).expect("small determinant");
                for p in primes {
                    *rep.prime_counts.entry(p).or_default() += 1;
                    let (r, a) = kernel_mod(&rows, p);
                    match a {
                        None => rep.violations.push((idx, p, r)),
                        Some(a) => {
                            if filter.as_ref().is_none_or(|f| f.contains(&p)) {
                                rep.hits.push(SearchHit { p, a, witness: idx });
                            }
                        }
                    }
                }
            }
        }
    }
    rep
}

/// All `(N, p)` hits over the full enumeration; the rank lemma is checked
/// on every prime regardless of the filter. Output is sorted.
pub fn enumerate_hits(p_filter: Option<RangeInclusive<u64>>) -> EnumerationReport {
    let e = build_e();
    let n = e.len() as u8;
    let prefixes: Vec<(u8, u8)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut rep = prefixes
        .par_iter()
        .map(|&(i, j)| scan_prefix(&e, i, j, &p_filter))
        .reduce(EnumerationReport::default, EnumerationReport::merge);
    rep.hits.sort();
    rep.violations.sort();
    rep
}

/// Lexicographically minimal `c·σ(a)` over `σ ∈ S5`, `c ∈ F_p^*`.
pub fn canonical_a(a: &[u64; 5], p: u64) -> [u64; 5] {
    let mut best: Option<[u64; 5]> = None;
    let signed = a.map(|x| x as i64);
    for w in WeylElem::all() {
        let s = w.apply(signed);
        for c in 1..p {
            let v = s.map(|x| x as u64 * c % p);
            if best.is_none_or(|b| v < b) {
                best = Some(v);
            }
        }
    }
    best.expect("nonempty group")
}

/// Some `(σ, c)` with `c·σ(from) = to` mod `p`.
pub fn find_relabeling(from: &[u64; 5], to: &[u64; 5], p: u64) -> Option<(WeylElem, u64)> {
    let signed = from.map(|x| x as i64);
    for w in WeylElem::all() {
        let s = w.apply(signed);
        for c in 1..p {
            if s.map(|x| x as u64 * c % p) == *to {
                return Some((w, c));
            }
        }
    }
    None
}

/// Condition 3: every Plücker coordinate `x_ij` either has its square in
/// `M_A` or appears in a mixed monomial `x_ij x_ik` of `M_A`.
pub fn tangent_condition(m_a: &[Monomial55]) -> bool {
    PlueckerIndex::all().iter().all(|u| {
        m_a.iter().any(|m| {
            (m.is_square() && m.u == *u) || (!m.is_square() && !m.is_disjoint() && (m.u == *u || m.v == *u))
        })
    })
}

/// Condition 4: `a` has a repeated entry.
pub fn repeated_eigenvalue(a: &[u64; 5]) -> bool {
    (0..5).any(|i| (i + 1..5).any(|j| a[i] == a[j]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyClass {
    pub p: u64,
    pub canonical_a: [u64; 5],
    /// `M_A` for the canonical `a`.
    pub m_a: Vec<Monomial55>,
    /// The normalized `a` values (before relabeling) in this class.
    pub members: Vec<[u64; 5]>,
    pub witnesses: Vec<SearchHit>,
}

/// Keep the hits satisfying conditions 3 and 4, then merge by canonical
/// `a`. Classes are sorted by `(p, canonical_a)`.
pub fn filter_hits(hits: &[SearchHit]) -> Vec<FamilyClass> {
    let e = build_e();
    let mut verdict: BTreeMap<(u64, [u64; 5]), bool> = BTreeMap::new();
    let mut classes: BTreeMap<(u64, [u64; 5]), FamilyClass> = BTreeMap::new();
    for h in hits {
        let keep = *verdict
            .entry((h.p, h.a))
            .or_insert_with(|| repeated_eigenvalue(&h.a) && tangent_condition(&e.m_a(&h.a, h.p)));
        if !keep {
            continue;
        }
        let can = canonical_a(&h.a, h.p);
        let class = classes.entry((h.p, can)).or_insert_with(|| FamilyClass {
            p: h.p,
            canonical_a: can,
            m_a: e.m_a(&can, h.p),
            members: Vec::new(),
            witnesses: Vec::new(),
        });
        if !class.members.contains(&h.a) {
            class.members.push(h.a);
        }
        class.witnesses.push(h.clone());
    }
    let mut out: Vec<FamilyClass> = classes.into_values().collect();
    for c in &mut out {
        c.members.sort();
        c.witnesses.sort();
    }
    out
}

/// Distinct `(p, canonical a)` among raw hits, before filtering.
pub fn raw_canonical_classes(hits: &[SearchHit]) -> BTreeSet<(u64, [u64; 5])> {
    let scaled: BTreeSet<(u64, [u64; 5])> = hits.iter().map(|h| (h.p, h.a)).collect();
    scaled.into_iter().map(|(p, a)| (p, canonical_a(&a, p))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rank_over, FieldDesc, IntMatrix};
    use crate::pluecker::{act, diag, QuadricForm};
    use proptest::prelude::*;

    #[test]
    fn e_matrix_shape() {
        let e = build_e();
        assert_eq!(e.len(), 45);
        assert_eq!(e.type_counts(), [10, 30, 5]);
        let total: usize = e.rows.iter().map(|r| r.monomials.len()).sum();
        assert_eq!(total, 55);
        let sq = Monomial55::from_key("12.12").unwrap();
        assert_eq!(e.rows[e.row_of(&sq).unwrap()].vector, [1, 1, 0, 0, 0]);
        let mx = Monomial55::from_key("12.13").unwrap();
        assert_eq!(e.rows[e.row_of(&mx).unwrap()].vector, [2, 1, 1, 0, 0]);
        let dj = Monomial55::from_key("12.34").unwrap();
        assert_eq!(e.rows[e.row_of(&dj).unwrap()].vector, [1, 1, 1, 1, 0]);
        assert_eq!(e.rows[40].vector, [1, 1, 1, 1, 0]);
        assert_eq!(e.rows[44].vector, [0, 1, 1, 1, 1]);
        let distinct: BTreeSet<[i64; 5]> = e.rows.iter().map(|r| r.vector).collect();
        assert_eq!(distinct.len(), 45);
        let full = IntMatrix::from_i64_rows(&e.rows.iter().map(|r| r.vector.to_vec()).collect::<Vec<_>>());
        assert_eq!(rank_over(&full, FieldDesc::Rationals), 5);
    }

    #[test]
    fn factoring_small_determinants() {
        assert_eq!(det_primes(-35).unwrap(), vec![5, 7]);
        assert_eq!(det_primes(24).unwrap(), Vec::<u64>::new());
        assert!(det_primes(2 * 211 * 211).is_err());
        assert_eq!(det_primes(211).unwrap(), vec![211]);
    }

    #[test]
    fn kernel_of_a_known_witness() {
        // rows orthogonal to a = (2,0,3,4,0) mod 5: x13^2, x14x24, x25^2, x23x34, x15x35
        let e = build_e();
        let keys = ["13.13", "14.24", "25.25", "23.34", "15.35"];
        let idx: Vec<u8> = keys
            .iter()
            .map(|k| e.row_of(&Monomial55::from_key(k).unwrap()).unwrap() as u8)
            .collect();
        let idx: [u8; 5] = idx.try_into().unwrap();
        let rows = e.submatrix(&idx);
        let det = det_small(&rows);
        assert_ne!(det, 0);
        assert_eq!(det % 5, 0);
        let (r, a) = kernel_mod(&rows, 5);
        assert_eq!(r, 4);
        // (2,0,3,4,0) normalized: times 3 -> (1,0,4,2,0)
        assert_eq!(a.unwrap(), [1, 0, 4, 2, 0]);
    }

    #[test]
    fn conditions_on_listed_vectors() {
        let e = build_e();
        let a = [2, 0, 3, 4, 0];
        let m = e.m_a(&a, 5);
        assert_eq!(m.len(), 11);
        assert!(tangent_condition(&m));
        assert!(repeated_eigenvalue(&a));
        assert!(!repeated_eigenvalue(&[0, 1, 2, 3, 4]));
        // every monomial of M_A is killed by diag(-a)
        let f = PrimeField::new(5).unwrap();
        let d = diag(&f, a.map(|x| -(x as i64)));
        for mono in &m {
            assert!(act(&f, &d, &QuadricForm::monomial(&f, *mono)).is_zero());
        }
    }

    proptest! {
        #[test]
        fn canonical_form_is_an_orbit_invariant(
            a in prop::array::uniform5(0u64..7),
            perm in 0usize..120,
            c in 1u64..7,
        ) {
            let w = &WeylElem::all()[perm];
            let moved = w.apply(a.map(|x| x as i64)).map(|x| x as u64 * c % 7);
            prop_assert_eq!(canonical_a(&a, 7), canonical_a(&moved, 7));
            let (w2, c2) = find_relabeling(&a, &canonical_a(&a, 7), 7).unwrap();
            prop_assert_eq!(w2.apply(a.map(|x| x as i64)).map(|x| x as u64 * c2 % 7), canonical_a(&a, 7));
        }

        #[test]
        fn m_a_is_relabeling_equivariant(a in prop::array::uniform5(0u64..5), perm in 0usize..120) {
            let e = build_e();
            let w = &WeylElem::all()[perm];
            let moved = w.apply(a.map(|x| x as i64)).map(|x| x as u64);
            let mut lhs = relabel_monomials(&e.m_a(&a, 5), w);
            lhs.sort();
            prop_assert_eq!(lhs, e.m_a(&moved, 5));
        }
    }
}
