//! The five surviving families and their singular points.
//!
//! A family is the generic quadric `Q = sum t_m m` over `m ∈ M_A`. The
//! certificate exhibits a point `P` of `Gr ∩ Q` over `F_p[t]` (or a
//! quadratic extension of it) at which the 6×10 Jacobian of the five
//! Plücker quadrics and `Q` has rank 3 instead of 4.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{build_e, find_relabeling, FamilyClass, VfError};
use crate::exact::{det_leibniz, rank, FiniteField, GaloisField, PolyRing, PrimeField, QuadExt, Ring};
use crate::pluecker::{jacobian_rows, pluecker_quadrics, Monomial55, PlueckerIndex, QuadricForm, NCOORD};
use crate::weights::WeylElem;

/// A coordinate of the singular point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coord {
    /// `±t_k` (1-based).
    T { k: usize, neg: bool },
    /// The root `mu` of the family's quadratic.
    Mu,
}

/// A family as printed, in the printed coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnownFamily {
    pub id: u8,
    pub p: u64,
    pub a: [u64; 5],
    /// `t_1, t_2, ...` in order.
    pub terms: Vec<Monomial55>,
    pub point: Vec<(PlueckerIndex, Coord)>,
    /// `mu^2 + (sum of b) mu + (product of c) = 0` with 1-based `t` indices.
    pub quadratic: Option<(Vec<usize>, Vec<usize>)>,
}

fn monos(keys: &[&str]) -> Vec<Monomial55> {
    keys.iter().map(|k| Monomial55::from_key(k).expect("valid key")).collect()
}

fn coord(i: u8, j: u8, c: Coord) -> (PlueckerIndex, Coord) {
    (PlueckerIndex::new(i, j).expect("valid index"), c)
}

fn t(k: usize) -> Coord {
    Coord::T { k, neg: false }
}

fn minus_t(k: usize) -> Coord {
    Coord::T { k, neg: true }
}

/// Families 1–4 at `p = 5` and family 5 at `p = 7`.
///
/// Family 3's point is `(lambda : 1)` in `(x14 : x15)` with
/// `t10 lambda^2 + (t7 + t8) lambda + t11 = 0`; multiplying through by `t10`
/// gives the point `(mu : t10)` with `mu = t10 lambda` a root of the monic
/// `mu^2 + (t7 + t8) mu + t10 t11`.
pub fn known_families() -> Vec<KnownFamily> {
    vec![
        KnownFamily {
            id: 1,
            p: 5,
            a: [2, 0, 3, 4, 0],
            terms: monos(&[
                "14.24", "23.34", "25.25", "15.35", "14.45", "34.35", "12.23", "12.35", "13.25", "15.23", "13.13",
            ]),
            point: vec![coord(2, 4, t(5)), coord(4, 5, minus_t(1))],
            quadratic: None,
        },
        KnownFamily {
            id: 2,
            p: 5,
            a: [1, 3, 3, 4, 4],
            terms: monos(&[
                "14.14", "15.15", "24.45", "25.45", "14.15", "12.23", "34.45", "35.45", "13.23",
            ]),
            point: vec![coord(1, 2, t(9)), coord(1, 3, minus_t(6))],
            quadratic: None,
        },
        KnownFamily {
            id: 3,
            p: 5,
            a: [2, 3, 0, 4, 4],
            terms: monos(&[
                "23.24", "23.25", "24.45", "25.45", "13.23", "13.45", "14.35", "15.34", "12.12", "14.34", "15.35",
            ]),
            point: vec![coord(1, 4, Coord::Mu), coord(1, 5, t(10))],
            quadratic: Some((vec![7, 8], vec![10, 11])),
        },
        KnownFamily {
            id: 4,
            p: 5,
            a: [2, 3, 0, 2, 4],
            terms: monos(&[
                "14.45", "24.24", "23.25", "23.34", "14.15", "12.24", "13.23", "35.45", "12.12", "15.35",
            ]),
            point: vec![coord(1, 3, t(4)), coord(3, 4, minus_t(7))],
            quadratic: None,
        },
        KnownFamily {
            id: 5,
            p: 7,
            a: [0, 1, 4, 1, 6],
            terms: monos(&["24.34", "12.15", "13.35", "25.25", "25.45", "14.15", "45.45", "23.24"]),
            point: vec![coord(1, 2, t(6)), coord(1, 4, minus_t(2))],
            quadratic: None,
        },
    ]
}

/// Apply `x_ij -> x_{σ(i)σ(j)}` to each monomial.
pub fn relabel_monomials(ms: &[Monomial55], w: &WeylElem) -> Vec<Monomial55> {
    let img = |u: PlueckerIndex| {
        let (a, b) = (w.image(u.i as usize) as u8, w.image(u.j as usize) as u8);
        PlueckerIndex::new(a.min(b), a.max(b)).expect("distinct images")
    };
    ms.iter().map(|m| Monomial55::new(img(m.u), img(m.v))).collect()
}

/// The listed family whose `a` is in the same orbit, with the class's
/// `M_A` carried into the family's own coordinates.
pub fn match_known_family(class: &FamilyClass) -> Result<(KnownFamily, Vec<Monomial55>), VfError> {
    for fam in known_families() {
        if fam.p != class.p {
            continue;
        }
        if let Some((w, _)) = find_relabeling(&class.canonical_a, &fam.a, fam.p) {
            let mut m = relabel_monomials(&class.m_a, &w);
            m.sort();
            return Ok((fam, m));
        }
    }
    Err(VfError::UnknownFamily {
        p: class.p,
        a: class.canonical_a.to_vec(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertCheck {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityCertificate {
    pub family: u8,
    pub p: u64,
    pub ring: String,
    pub quadric: String,
    /// Rendered coordinates `x12, ..., x45`.
    pub point: Vec<String>,
    pub checks: Vec<CertCheck>,
    pub minors4_checked: usize,
    /// Rows and columns of a nonzero 3×3 minor.
    pub minor3: ([usize; 3], [usize; 3]),
}

impl SingularityCertificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Evaluation {
    checks: Vec<CertCheck>,
    minors4: usize,
    minor3: Option<([usize; 3], [usize; 3])>,
}

fn subsets<const K: usize>(n: usize) -> Vec<[usize; K]> {
    let mut out = Vec::new();
    let mut cur = [0usize; K];
    fn rec<const K: usize>(n: usize, start: usize, depth: usize, cur: &mut [usize; K], out: &mut Vec<[usize; K]>) {
        if depth == K {
            out.push(*cur);
            return;
        }
        for i in start..n {
            cur[depth] = i;
            rec(n, i + 1, depth + 1, cur, out);
        }
    }
    rec(n, 0, 0, &mut cur, &mut out);
    out
}

fn evaluate<R: Ring>(ring: &R, q: &QuadricForm<R::Elem>, point: &[R::Elem]) -> Evaluation {
    let mut checks = Vec::new();
    let mut check = |name: &str, passed: bool| checks.push(CertCheck { name: name.into(), passed });
    check("point is nonzero", point.iter().any(|x| !ring.is_zero(x)));
    let ideal = pluecker_quadrics(ring);
    check(
        "point lies on the Grassmannian",
        ideal.iter().all(|g| ring.is_zero(&g.eval(ring, point))),
    );
    check("point lies on the quadric", ring.is_zero(&q.eval(ring, point)));
    let mut forms: Vec<QuadricForm<R::Elem>> = ideal.to_vec();
    forms.push(q.clone());
    let jac = jacobian_rows(ring, &forms, point);
    let rows4 = subsets::<4>(6);
    let cols4 = subsets::<4>(NCOORD);
    let mut minors4 = 0;
    let mut all_zero = true;
    'outer: for r in &rows4 {
        for c in &cols4 {
            minors4 += 1;
            if !ring.is_zero(&det_leibniz(ring, &jac.submatrix(r, c))) {
                all_zero = false;
                break 'outer;
            }
        }
    }
    check("all 4x4 minors of the Jacobian vanish", all_zero);
    let mut minor3 = None;
    'find: for r in subsets::<3>(6) {
        for c in subsets::<3>(NCOORD) {
            if !ring.is_zero(&det_leibniz(ring, &jac.submatrix(&r, &c))) {
                minor3 = Some((r, c));
                break 'find;
            }
        }
    }
    check("some 3x3 minor of the Jacobian is nonzero", minor3.is_some());
    Evaluation {
        checks,
        minors4,
        minor3,
    }
}

fn generic_quadric<R: Ring>(ring: &R, terms: &[Monomial55], tvals: &[R::Elem]) -> QuadricForm<R::Elem> {
    QuadricForm::from_terms(ring, terms.iter().copied().zip(tvals.iter().cloned()))
}

fn build_point<R: Ring>(ring: &R, fam: &KnownFamily, tvals: &[R::Elem], mu: Option<&R::Elem>) -> Vec<R::Elem> {
    let mut p = vec![ring.zero(); NCOORD];
    for (idx, c) in &fam.point {
        p[idx.position()] = match c {
            Coord::T { k, neg } => {
                let v = tvals[k - 1].clone();
                if *neg {
                    ring.neg(&v)
                } else {
                    v
                }
            }
            Coord::Mu => mu.expect("family has a quadratic").clone(),
        };
    }
    p
}

fn finish<R: Ring>(
    ring: &R,
    fam: &KnownFamily,
    ring_name: String,
    q: &QuadricForm<R::Elem>,
    point: &[R::Elem],
    m_a_matches: bool,
) -> Result<SingularityCertificate, VfError> {
    let ev = evaluate(ring, q, point);
    let mut checks = vec![CertCheck {
        name: "monomials equal M_A".into(),
        passed: m_a_matches,
    }];
    checks.extend(ev.checks);
    if let Some(bad) = checks.iter().find(|c| !c.passed) {
        return Err(VfError::CertificateFailed {
            family: fam.id,
            check: bad.name.clone(),
        });
    }
    Ok(SingularityCertificate {
        family: fam.id,
        p: fam.p,
        ring: ring_name,
        quadric: q.render(ring),
        point: point.iter().map(|x| ring.render(x)).collect(),
        checks,
        minors4_checked: ev.minors4,
        minor3: ev.minor3.expect("checked above"),
    })
}

/// Exact certificate for a listed family, in its own coordinates.
pub fn certify_family_singular(fam: &KnownFamily) -> Result<SingularityCertificate, VfError> {
    let e = build_e();
    let mut listed = fam.terms.clone();
    listed.sort();
    let m_a_matches = listed == e.m_a(&fam.a, fam.p);
    let fp = PrimeField::new(fam.p).map_err(|_| VfError::BadPrime(fam.p))?;
    let names: Vec<String> = (1..=fam.terms.len()).map(|k| format!("t{k}")).collect();
    let poly = PolyRing::new(fp, names);
    let tvals: Vec<_> = (0..fam.terms.len()).map(|k| poly.var(k)).collect();
    match &fam.quadratic {
        None => {
            let q = generic_quadric(&poly, &fam.terms, &tvals);
            let point = build_point(&poly, fam, &tvals, None);
            finish(&poly, fam, format!("F_{}[t1..t{}]", fam.p, fam.terms.len()), &q, &point, m_a_matches)
        }
        Some((b, c)) => {
            let b_el = poly.sum(b.iter().map(|k| &tvals[k - 1]));
            let c_el = c.iter().fold(poly.one(), |acc, k| poly.mul(&acc, &tvals[k - 1]));
            let name = format!(
                "F_{}[t1..t{}][mu]/(mu^2 + ({})mu + {})",
                fam.p,
                fam.terms.len(),
                poly.render(&b_el),
                poly.render(&c_el)
            );
            let ext = QuadExt::new(poly.clone(), b_el, c_el);
            let tv: Vec<_> = tvals.iter().map(|x| ext.embed(x.clone())).collect();
            let q = generic_quadric(&ext, &fam.terms, &tv);
            let mu = ext.root();
            let point = build_point(&ext, fam, &tv, Some(&mu));
            finish(&ext, fam, name, &q, &point, m_a_matches)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericReport {
    pub family: u8,
    pub field: String,
    pub samples: usize,
    pub passed: usize,
    /// Samples where the Jacobian rank is exactly 3.
    pub rank_three: usize,
    /// Draws discarded because the point degenerated to zero.
    pub discarded: usize,
}

impl NumericReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.samples
    }
}

/// Substitute random `t` values from `F_{p^4}` and check the certificate's
/// identities numerically. For the family with a quadratic, `mu` is drawn
/// at random and `t11` solved for, which samples the same incidence.
pub fn numeric_recheck(fam: &KnownFamily, samples: usize, seed: u64) -> NumericReport {
    let gf = GaloisField::new(fam.p, 4).expect("small field");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ u64::from(fam.id));
    let n = fam.terms.len();
    let (mut passed, mut rank_three, mut discarded, mut done) = (0, 0, 0, 0);
    while done < samples {
        let mut tv: Vec<u32> = (0..n).map(|_| gf.element(rng.gen_range(0..gf.size()))).collect();
        let mut mu = None;
        if let Some((b, c)) = &fam.quadratic {
            // c = [k1, k2]: solve for t_{k2} from mu^2 + b mu + t_{k1} t_{k2} = 0
            let m = gf.element(rng.gen_range(0..gf.size()));
            let lead = tv[c[0] - 1];
            if gf.is_zero(&lead) {
                discarded += 1;
                continue;
            }
            let bsum = gf.sum(b.iter().map(|k| &tv[k - 1]));
            let num = gf.add(&gf.mul(&m, &m), &gf.mul(&bsum, &m));
            tv[c[1] - 1] = gf.neg(&gf.mul(&num, &gf.inv(&lead).expect("nonzero")));
            mu = Some(m);
        }
        let point = build_point(&gf, fam, &tv, mu.as_ref());
        if point.iter().all(|x| gf.is_zero(x)) {
            discarded += 1;
            continue;
        }
        done += 1;
        let q = generic_quadric(&gf, &fam.terms, &tv);
        let ideal = pluecker_quadrics(&gf);
        let on_gr = ideal.iter().all(|g| gf.is_zero(&g.eval(&gf, &point)));
        let on_q = gf.is_zero(&q.eval(&gf, &point));
        let mut forms = ideal.to_vec();
        forms.push(q);
        let r = rank(&gf, &jacobian_rows(&gf, &forms, &point));
        if on_gr && on_q && r <= 3 {
            passed += 1;
        }
        if r == 3 {
            rank_three += 1;
        }
    }
    NumericReport {
        family: fam.id,
        field: format!("F_{}^4", fam.p),
        samples,
        passed,
        rank_three,
        discarded,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Matrix;

    fn jacobian_of<R: Ring>(ring: &R, q: &QuadricForm<R::Elem>, point: &[R::Elem]) -> Matrix<R::Elem> {
        let mut forms = pluecker_quadrics(ring).to_vec();
        forms.push(q.clone());
        jacobian_rows(ring, &forms, point)
    }

    #[test]
    fn listed_terms_are_the_full_m_a() {
        let e = build_e();
        for fam in known_families() {
            let mut listed = fam.terms.clone();
            listed.sort();
            assert_eq!(listed, e.m_a(&fam.a, fam.p), "family {}", fam.id);
        }
    }

    #[test]
    fn every_family_is_certified() {
        for fam in known_families() {
            let cert = certify_family_singular(&fam).unwrap();
            assert!(cert.passed());
            assert_eq!(cert.minors4_checked, 15 * 210);
        }
    }

    #[test]
    fn family_one_point() {
        let fam = &known_families()[0];
        let cert = certify_family_singular(fam).unwrap();
        assert_eq!(cert.point[5], "t5");
        assert_eq!(cert.point[9], "4*t1");
        assert!(cert.point.iter().enumerate().all(|(i, s)| i == 5 || i == 9 || s == "0"));
    }

    #[test]
    fn a_wrong_point_fails() {
        let mut fam = known_families()[1].clone();
        fam.point = vec![coord(1, 2, t(9)), coord(1, 3, t(6))];
        let err = certify_family_singular(&fam).unwrap_err();
        assert!(matches!(err, VfError::CertificateFailed { family: 2, .. }), "{err}");
    }

    #[test]
    fn tangent_equations_of_the_quadratic_family() {
        // Hand computation in F_5(t)[mu]: the q2 row is (-mu) X35 + t10 X34 and
        // the quadric row is (t7 mu + t10 t11) X35 + (t10 mu + t8 t10) X34.
        // Their 2x2 determinant is t10 (mu^2 + (t7+t8) mu + t10 t11) = 0.
        let fam = &known_families()[2];
        let fp = PrimeField::new(5).unwrap();
        let names: Vec<String> = (1..=11).map(|k| format!("t{k}")).collect();
        let poly = PolyRing::new(fp, names);
        let tv: Vec<_> = (0..11).map(|k| poly.var(k)).collect();
        let b = poly.add(&tv[6], &tv[7]);
        let c = poly.mul(&tv[9], &tv[10]);
        let ext = QuadExt::new(poly.clone(), b, c);
        let tv: Vec<_> = tv.into_iter().map(|x| ext.embed(x)).collect();
        let q = generic_quadric(&ext, &fam.terms, &tv);
        let point = build_point(&ext, fam, &tv, Some(&ext.root()));
        let j = jacobian_of(&ext, &q, &point);
        let (x34, x35) = (7, 8);
        let sub = j.submatrix(&[1, 5], &[x34, x35]);
        assert!(ext.is_zero(&det_leibniz(&ext, &sub)));
        assert_eq!(j.get(1, x35), &ext.neg(&ext.root()));
        assert_eq!(j.get(1, x34), &tv[9]);
    }

    #[test]
    fn numeric_rechecks() {
        for fam in known_families() {
            let rep = numeric_recheck(&fam, 20, 7);
            assert!(rep.all_passed(), "{rep:?}");
            assert!(rep.rank_three > 0);
        }
    }
}
