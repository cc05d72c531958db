//! Quadrics on `P(wedge^2 V5)`: Plücker coordinates, the 55 quadratic
//! monomials, the five Plücker relations, the splitting
//! `Sym^2(wedge^2 V5^*) = I(Gr) + ker(mu)`, and the derivation action of
//! `gl5` on quadrics.
//!
//! Coordinates are ordered `x12, x13, x14, x15, x23, x24, x25, x34, x35, x45`.
//! A matrix `A` acts on `V5` by `v -> Av`, on the dual by `-A^T`, and on
//! wedge and symmetric powers as a derivation. With this sign a diagonal
//! `A = diag(-a)` multiplies `x_ij x_lm` by `a_i + a_j + a_l + a_m`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::exact::{Matrix, Ring};

pub const NCOORD: usize = 10;
pub const NMONO: usize = 55;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PlueckerError {
    #[error("scalar {0} is not invertible in the coefficient ring")]
    NonInvertibleScalar(i64),
    #[error("the zero vector is not a point")]
    ZeroPoint,
    #[error("bad Plücker index {0}")]
    BadIndex(String),
    #[error("bad coefficient '{0}'")]
    BadCoefficient(String),
}

/// Coordinate `x_ij`, `1 <= i < j <= 5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PlueckerIndex {
    pub i: u8,
    pub j: u8,
}

impl PlueckerIndex {
    pub fn new(i: u8, j: u8) -> Result<Self, PlueckerError> {
        if 1 <= i && i < j && j <= 5 {
            Ok(PlueckerIndex { i, j })
        } else {
            Err(PlueckerError::BadIndex(format!("{i}{j}")))
        }
    }

    pub fn all() -> [PlueckerIndex; NCOORD] {
        let mut out = [PlueckerIndex { i: 1, j: 2 }; NCOORD];
        let mut k = 0;
        for i in 1..=5 {
            for j in i + 1..=5 {
                out[k] = PlueckerIndex { i, j };
                k += 1;
            }
        }
        out
    }

    /// Position in the lexicographic order.
    pub fn position(&self) -> usize {
        let (i, j) = (self.i as usize, self.j as usize);
        // rows before i contribute (5-1) + ... + (5-(i-1))
        (i - 1) * (10 - i) / 2 + (j - i - 1)
    }

    pub fn from_position(k: usize) -> Self {
        Self::all()[k]
    }

    pub fn contains(&self, a: u8) -> bool {
        self.i == a || self.j == a
    }
}

impl fmt::Display for PlueckerIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}{}", self.i, self.j)
    }
}

/// Index `k` of the dual basis vector with `x_ab = e_a^* ∧ e_b^*`; returns
/// the position and sign of `x_ab` for any ordered pair `a != b`.
fn signed_position(a: usize, b: usize) -> Option<(usize, bool)> {
    if a == b {
        return None;
    }
    let (lo, hi, neg) = if a < b { (a, b, false) } else { (b, a, true) };
    Some((PlueckerIndex { i: lo as u8, j: hi as u8 }.position(), neg))
}

/// The quadratic monomial `x_u x_v` with `u <= v` in the coordinate order.
/// Serialized as its key `"ij.lm"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Monomial55 {
    pub u: PlueckerIndex,
    pub v: PlueckerIndex,
}

impl Monomial55 {
    pub fn new(a: PlueckerIndex, b: PlueckerIndex) -> Self {
        if a <= b {
            Monomial55 { u: a, v: b }
        } else {
            Monomial55 { u: b, v: a }
        }
    }

    pub fn from_positions(a: usize, b: usize) -> Self {
        Self::new(PlueckerIndex::from_position(a), PlueckerIndex::from_position(b))
    }

    /// All 55 monomials in lexicographic order.
    pub fn all() -> Vec<Monomial55> {
        let mut out = Vec::with_capacity(NMONO);
        for a in 0..NCOORD {
            for b in a..NCOORD {
                out.push(Monomial55::from_positions(a, b));
            }
        }
        out
    }

    pub fn index(&self) -> usize {
        let (a, b) = (self.u.position(), self.v.position());
        a * NCOORD - a * a.saturating_sub(1) / 2 + (b - a)
    }

    pub fn is_square(&self) -> bool {
        self.u == self.v
    }

    /// Sum of the indicator vectors of the four indices (unscaled: a square
    /// `x_ij^2` has weight `2(e_i + e_j)`).
    pub fn weight(&self) -> [i64; 5] {
        let mut w = [0i64; 5];
        for p in [self.u, self.v] {
            w[p.i as usize - 1] += 1;
            w[p.j as usize - 1] += 1;
        }
        w
    }

    /// The four indices are pairwise distinct.
    pub fn is_disjoint(&self) -> bool {
        !(self.u.contains(self.v.i) || self.u.contains(self.v.j))
    }

    /// Key `"ij.lm"` used in JSON.
    pub fn key(&self) -> String {
        format!("{}{}.{}{}", self.u.i, self.u.j, self.v.i, self.v.j)
    }

    pub fn from_key(s: &str) -> Result<Self, PlueckerError> {
        let bad = || PlueckerError::BadIndex(s.to_string());
        let (a, b) = s.split_once('.').ok_or_else(bad)?;
        let parse = |t: &str| -> Result<PlueckerIndex, PlueckerError> {
            let d: Vec<u8> = t.bytes().map(|c| c.wrapping_sub(b'0')).collect();
            match d.as_slice() {
                [i, j] => PlueckerIndex::new(*i, *j),
                _ => Err(bad()),
            }
        };
        Ok(Monomial55::new(parse(a)?, parse(b)?))
    }
}

impl TryFrom<String> for Monomial55 {
    type Error = PlueckerError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        Monomial55::from_key(&s)
    }
}

impl From<Monomial55> for String {
    fn from(m: Monomial55) -> String {
        m.key()
    }
}

impl fmt::Display for Monomial55 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_square() {
            write!(f, "{}^2", self.u)
        } else {
            write!(f, "{}{}", self.u, self.v)
        }
    }
}

/// A quadratic form on `wedge^2 V5`, sparse in the monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricForm<E> {
    coeffs: BTreeMap<Monomial55, E>,
}

impl<E: Clone> QuadricForm<E> {
    pub fn zero() -> Self {
        QuadricForm {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms<R: Ring<Elem = E>>(ring: &R, terms: impl IntoIterator<Item = (Monomial55, E)>) -> Self {
        let mut q = QuadricForm::zero();
        for (m, c) in terms {
            q.add_term(ring, m, c);
        }
        q
    }

    pub fn monomial<R: Ring<Elem = E>>(ring: &R, m: Monomial55) -> Self {
        Self::from_terms(ring, [(m, ring.one())])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial55, &E)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, m: &Monomial55) -> Option<&E> {
        self.coeffs.get(m)
    }

    pub fn support(&self) -> Vec<Monomial55> {
        self.coeffs.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term<R: Ring<Elem = E>>(&mut self, ring: &R, m: Monomial55, c: E) {
        let s = match self.coeffs.get(&m) {
            Some(old) => ring.add(old, &c),
            None => c,
        };
        if ring.is_zero(&s) {
            self.coeffs.remove(&m);
        } else {
            self.coeffs.insert(m, s);
        }
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(ring, *m, c.clone());
        }
        out
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        Self::from_terms(ring, self.coeffs.iter().map(|(m, x)| (*m, ring.mul(c, x))))
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        self.add(ring, &other.scale(ring, &ring.from_i64(-1)))
    }

    /// Dense coefficient vector in the order of [`Monomial55::all`].
    pub fn to_vector<R: Ring<Elem = E>>(&self, ring: &R) -> Vec<E> {
        Monomial55::all()
            .iter()
            .map(|m| self.coeffs.get(m).cloned().unwrap_or_else(|| ring.zero()))
            .collect()
    }

    pub fn from_vector<R: Ring<Elem = E>>(ring: &R, v: &[E]) -> Self {
        Self::from_terms(ring, Monomial55::all().into_iter().zip(v.iter().cloned()))
    }

    /// Value at a point.
    pub fn eval<R: Ring<Elem = E>>(&self, ring: &R, p: &[E]) -> E {
        self.coeffs.iter().fold(ring.zero(), |acc, (m, c)| {
            let t = ring.mul(c, &ring.mul(&p[m.u.position()], &p[m.v.position()]));
            ring.add(&acc, &t)
        })
    }

    /// Gradient at a point, one entry per coordinate.
    pub fn gradient<R: Ring<Elem = E>>(&self, ring: &R, p: &[E]) -> Vec<E> {
        let mut g = vec![ring.zero(); NCOORD];
        for (m, c) in &self.coeffs {
            let (a, b) = (m.u.position(), m.v.position());
            if a == b {
                let t = ring.mul(&ring.from_i64(2), &ring.mul(c, &p[a]));
                g[a] = ring.add(&g[a], &t);
            } else {
                g[a] = ring.add(&g[a], &ring.mul(c, &p[b]));
                g[b] = ring.add(&g[b], &ring.mul(c, &p[a]));
            }
        }
        g
    }

    /// JSON form: map from `"ij.lm"` to the rendered coefficient.
    pub fn to_key_map<R: Ring<Elem = E>>(&self, ring: &R) -> BTreeMap<String, String> {
        self.coeffs.iter().map(|(m, c)| (m.key(), ring.render(c))).collect()
    }

    /// Inverse of [`QuadricForm::to_key_map`] for integer-valued strings.
    pub fn from_key_map<R: Ring<Elem = E>>(ring: &R, map: &BTreeMap<String, String>) -> Result<Self, PlueckerError> {
        let mut q = QuadricForm::zero();
        for (k, v) in map {
            let n: BigInt = v.trim().parse().map_err(|_| PlueckerError::BadCoefficient(v.clone()))?;
            q.add_term(ring, Monomial55::from_key(k)?, ring.from_int(&n));
        }
        Ok(q)
    }

    pub fn render<R: Ring<Elem = E>>(&self, ring: &R) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(m, c)| format!("({})*{}", ring.render(c), m))
            .collect();
        parts.join(" + ")
    }
}

/// `q_k`: the Laplace relation on the four indices other than `k`,
/// `x_ab x_cd - x_ac x_bd + x_ad x_bc` with `a < b < c < d`.
pub fn pluecker_quadric<R: Ring>(ring: &R, k: u8) -> QuadricForm<R::Elem> {
    let idx: Vec<u8> = (1..=5).filter(|&i| i != k).collect();
    let (a, b, c, d) = (idx[0], idx[1], idx[2], idx[3]);
    let x = |i, j| PlueckerIndex { i, j };
    QuadricForm::from_terms(
        ring,
        [
            (Monomial55::new(x(a, b), x(c, d)), ring.one()),
            (Monomial55::new(x(a, c), x(b, d)), ring.from_i64(-1)),
            (Monomial55::new(x(a, d), x(b, c)), ring.one()),
        ],
    )
}

pub fn pluecker_quadrics<R: Ring>(ring: &R) -> [QuadricForm<R::Elem>; 5] {
    [1, 2, 3, 4, 5].map(|k| pluecker_quadric(ring, k))
}

/// The image of the coordinate `x_u` under `A`, as a linear form.
fn act_linear<R: Ring>(ring: &R, a: &Matrix<R::Elem>, u: PlueckerIndex) -> Vec<R::Elem> {
    // A·e_i^* = -sum_k A_ik e_k^*, extended to e_i^* ∧ e_j^* as a derivation
    let mut out = vec![ring.zero(); NCOORD];
    let (i, j) = (u.i as usize, u.j as usize);
    for k in 1..=5 {
        // -A_ik e_k^* ∧ e_j^*
        if let Some((pos, neg)) = signed_position(k, j) {
            let c = a.get(i - 1, k - 1);
            let c = if neg { c.clone() } else { ring.neg(c) };
            out[pos] = ring.add(&out[pos], &c);
        }
        // -A_jk e_i^* ∧ e_k^*
        if let Some((pos, neg)) = signed_position(i, k) {
            let c = a.get(j - 1, k - 1);
            let c = if neg { c.clone() } else { ring.neg(c) };
            out[pos] = ring.add(&out[pos], &c);
        }
    }
    out
}

fn mul_linear<R: Ring>(ring: &R, f: &[R::Elem], g: &[R::Elem]) -> QuadricForm<R::Elem> {
    let mut q = QuadricForm::zero();
    for a in 0..NCOORD {
        if ring.is_zero(&f[a]) {
            continue;
        }
        for b in 0..NCOORD {
            if ring.is_zero(&g[b]) {
                continue;
            }
            q.add_term(ring, Monomial55::from_positions(a, b), ring.mul(&f[a], &g[b]));
        }
    }
    q
}

/// `A ∘ Q` for `A` in `gl5`.
pub fn act<R: Ring>(ring: &R, a: &Matrix<R::Elem>, q: &QuadricForm<R::Elem>) -> QuadricForm<R::Elem> {
    let mut out = QuadricForm::zero();
    for (m, c) in q.terms() {
        let mut unit_u = vec![ring.zero(); NCOORD];
        unit_u[m.u.position()] = ring.one();
        let mut unit_v = vec![ring.zero(); NCOORD];
        unit_v[m.v.position()] = ring.one();
        let t = mul_linear(ring, &act_linear(ring, a, m.u), &unit_v)
            .add(ring, &mul_linear(ring, &unit_u, &act_linear(ring, a, m.v)));
        out = out.add(ring, &t.scale(ring, c));
    }
    out
}

/// The 55×55 matrix of `Q -> A ∘ Q` in the basis [`Monomial55::all`]
/// (column `c` is the image of monomial `c`).
pub fn action_matrix<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let monos = Monomial55::all();
    let cols: Vec<Vec<R::Elem>> = monos
        .iter()
        .map(|m| act(ring, a, &QuadricForm::monomial(ring, *m)).to_vector(ring))
        .collect();
    Matrix::from_fn(NMONO, NMONO, |r, c| cols[c][r].clone())
}

/// `mu(Q)` in `wedge^4 V5^*`, as the coefficients on `f_k`, where `f_k`
/// is the wedge of the four dual basis vectors other than `e_k^*` in
/// increasing order. Squares and monomials sharing an index map to 0.
pub fn mu<R: Ring>(ring: &R, q: &QuadricForm<R::Elem>) -> [R::Elem; 5] {
    let mut out: [R::Elem; 5] = std::array::from_fn(|_| ring.zero());
    for (m, c) in q.terms() {
        if !m.is_disjoint() {
            continue;
        }
        let idx = [m.u.i, m.u.j, m.v.i, m.v.j];
        let missing = (1..=5u8).find(|k| !idx.contains(k)).unwrap();
        let mut inversions = 0;
        for s in 0..4 {
            for t in s + 1..4 {
                if idx[s] > idx[t] {
                    inversions += 1;
                }
            }
        }
        let k = missing as usize - 1;
        out[k] = if inversions % 2 == 0 {
            ring.add(&out[k], c)
        } else {
            ring.sub(&out[k], c)
        };
    }
    out
}

/// Split `Q = Q_I + Q_perp` with `Q_I` in the span of the Plücker quadrics
/// and `mu(Q_perp) = 0`, using `mu(q_k) = 3 f_k`.
pub fn mu_split<R: Ring>(
    ring: &R,
    q: &QuadricForm<R::Elem>,
) -> Result<(QuadricForm<R::Elem>, QuadricForm<R::Elem>), PlueckerError> {
    if !ring.is_unit(&ring.from_i64(6)) {
        return Err(PlueckerError::NonInvertibleScalar(6));
    }
    let third = ring.inv(&ring.from_i64(3)).unwrap();
    let coeffs = mu(ring, q);
    let mut qi = QuadricForm::zero();
    for (k, c) in coeffs.iter().enumerate() {
        qi = qi.add(ring, &pluecker_quadric(ring, k as u8 + 1).scale(ring, &ring.mul(c, &third)));
    }
    let qp = q.sub(ring, &qi);
    Ok((qi, qp))
}

/// Whether a nonzero point satisfies all five Plücker relations.
pub fn gr_membership<R: Ring>(ring: &R, p: &[R::Elem]) -> Result<bool, PlueckerError> {
    if p.iter().all(|x| ring.is_zero(x)) {
        return Err(PlueckerError::ZeroPoint);
    }
    Ok(pluecker_quadrics(ring)
        .iter()
        .all(|q| ring.is_zero(&q.eval(ring, p))))
}

/// Jacobian matrix at `p`: row `k` is the gradient of `quadrics[k]`.
pub fn jacobian_rows<R: Ring>(ring: &R, quadrics: &[QuadricForm<R::Elem>], p: &[R::Elem]) -> Matrix<R::Elem> {
    let rows: Vec<Vec<R::Elem>> = quadrics.iter().map(|q| q.gradient(ring, p)).collect();
    Matrix::from_rows_with_cols(rows, NCOORD)
}

/// Diagonal `diag(d_1, ..., d_5)` as a `gl5` element.
pub fn diag<R: Ring>(ring: &R, d: [i64; 5]) -> Matrix<R::Elem> {
    Matrix::from_fn(5, 5, |i, j| if i == j { ring.from_i64(d[i]) } else { ring.zero() })
}

/// Elementary matrix `E_ij` (1-based).
pub fn elementary<R: Ring>(ring: &R, i: usize, j: usize) -> Matrix<R::Elem> {
    Matrix::from_fn(5, 5, |r, c| if r == i - 1 && c == j - 1 { ring.one() } else { ring.zero() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{PrimeField, Rationals, Rat, Integers};
    use proptest::prelude::*;

    fn x(i: u8, j: u8) -> PlueckerIndex {
        PlueckerIndex::new(i, j).unwrap()
    }

    fn m(a: (u8, u8), b: (u8, u8)) -> Monomial55 {
        Monomial55::new(x(a.0, a.1), x(b.0, b.1))
    }

    #[test]
    fn indices_and_positions() {
        for (k, p) in PlueckerIndex::all().iter().enumerate() {
            assert_eq!(p.position(), k);
        }
        assert_eq!(x(4, 5).position(), 9);
        let all = Monomial55::all();
        assert_eq!(all.len(), 55);
        for (k, mm) in all.iter().enumerate() {
            assert_eq!(mm.index(), k, "{mm}");
        }
        assert_eq!(m((1, 2), (1, 2)).weight(), [2, 2, 0, 0, 0]);
        assert_eq!(Monomial55::from_key("13.24").unwrap(), m((1, 3), (2, 4)));
    }

    #[test]
    fn printed_relations() {
        let z = Integers;
        let q5 = pluecker_quadric(&z, 5);
        let want = QuadricForm::from_terms(
            &z,
            [
                (m((1, 2), (3, 4)), BigInt::from(1)),
                (m((1, 3), (2, 4)), BigInt::from(-1)),
                (m((1, 4), (2, 3)), BigInt::from(1)),
            ],
        );
        assert_eq!(q5, want);
        let q1 = pluecker_quadric(&z, 1);
        assert_eq!(q1.coeff(&m((2, 3), (4, 5))), Some(&BigInt::from(1)));
        assert_eq!(q1.coeff(&m((2, 4), (3, 5))), Some(&BigInt::from(-1)));
        assert_eq!(q1.coeff(&m((2, 5), (3, 4))), Some(&BigInt::from(1)));
        for q in pluecker_quadrics(&z) {
            assert_eq!(q.len(), 3);
            assert!(q.support().iter().all(|mm| !mm.is_square()));
        }
    }

    #[test]
    fn diagonal_and_scalar_actions() {
        let f = PrimeField::new(101).unwrap();
        let a = [3i64, 5, 7, 11, 13];
        let d = diag(&f, a.map(|x| -x));
        for mm in Monomial55::all() {
            let got = act(&f, &d, &QuadricForm::monomial(&f, mm));
            let w: i64 = mm.weight().iter().zip(a).map(|(k, x)| k * x).sum();
            assert_eq!(got, QuadricForm::monomial(&f, mm).scale(&f, &f.from_i64(w)));
        }
        let id = diag(&f, [1; 5]);
        let q = pluecker_quadric(&f, 2).add(&f, &QuadricForm::monomial(&f, m((1, 2), (1, 2))));
        assert_eq!(act(&f, &id, &q), q.scale(&f, &f.from_i64(-4)));
    }

    #[test]
    fn elementary_matrix_on_q5() {
        // A e_i^* = -sum_k A_ik e_k^*, so under E21 only e2^* moves, to -e1^*.
        // Then x12 -> 0, x23 -> -x13, x24 -> -x14.
        // q5 = x12x34 - x13x24 + x14x23 -> -x13(-x14) + x14(-x13) = 0.
        let z = Integers;
        let e21 = elementary(&z, 2, 1);
        assert!(act(&z, &e21, &pluecker_quadric(&z, 5)).is_zero());
        // E12 moves e1^* -> -e2^*: x13 -> -x23, x14 -> -x24, x12 -> 0
        // q5 -> -(-x23)x24 + (-x24)x23 = 0 as well; q4 is not fixed
        let e12 = elementary(&z, 1, 2);
        assert!(act(&z, &e12, &pluecker_quadric(&z, 5)).is_zero());
        let img = act(&z, &e12, &pluecker_quadric(&z, 1));
        // q1 has no index 1, so E12 acts trivially on it
        assert!(img.is_zero());
        let img = act(&z, &e21, &pluecker_quadric(&z, 1));
        // q1 = x23x45 - x24x35 + x25x34, e2^* -> -e1^*: x2k -> -x1k
        let want = QuadricForm::from_terms(
            &z,
            [
                (m((1, 3), (4, 5)), BigInt::from(-1)),
                (m((1, 4), (3, 5)), BigInt::from(1)),
                (m((1, 5), (3, 4)), BigInt::from(-1)),
            ],
        );
        assert_eq!(img, want);
        assert_eq!(want, pluecker_quadric(&z, 2).scale(&z, &BigInt::from(-1)));
    }

    #[test]
    fn mu_splitting_examples() {
        let q = Rationals;
        let q5 = pluecker_quadric(&q, 5);
        let (a, b) = mu_split(&q, &q5).unwrap();
        assert_eq!((a, b.is_zero()), (q5.clone(), true));
        let sq = QuadricForm::monomial(&q, m((1, 2), (1, 2)));
        let (a, b) = mu_split(&q, &sq).unwrap();
        assert!(a.is_zero());
        assert_eq!(b, sq);
        let mono = QuadricForm::monomial(&q, m((1, 2), (3, 4)));
        let (a, b) = mu_split(&q, &mono).unwrap();
        let third = Rat::new(1.into(), 3.into());
        assert_eq!(a, q5.scale(&q, &third));
        assert_eq!(b, mono.sub(&q, &q5.scale(&q, &third)));
        for k in 1..=5u8 {
            let mut want: [Rat; 5] = std::array::from_fn(|_| q.zero());
            want[k as usize - 1] = q.from_i64(3);
            assert_eq!(mu(&q, &pluecker_quadric(&q, k)), want);
        }
        assert!(mu_split(&PrimeField::new(3).unwrap(), &q5_f3()).is_err());
    }

    fn q5_f3() -> QuadricForm<u64> {
        pluecker_quadric(&PrimeField::new(3).unwrap(), 5)
    }

    #[test]
    fn points_on_the_grassmannian() {
        let f = PrimeField::new(5).unwrap();
        let mut p12 = vec![0u64; 10];
        p12[0] = 1;
        assert!(gr_membership(&f, &p12).unwrap());
        let mut p = vec![0u64; 10];
        p[2] = 3; // x14 = lambda (any value)
        p[3] = 1; // x15 = 1
        assert!(gr_membership(&f, &p).unwrap());
        let mut bad = vec![0u64; 10];
        bad[0] = 1;
        bad[1] = 1;
        bad[9] = 1;
        // q3 = x12x45 - x14x25 + x15x24 evaluates to 1
        assert!(!gr_membership(&f, &bad).unwrap());
        assert_eq!(gr_membership(&f, &[0; 10]), Err(PlueckerError::ZeroPoint));
        let j = jacobian_rows(&f, &[pluecker_quadric(&f, 5)], &p12);
        let mut want = vec![0u64; 10];
        want[7] = 1;
        assert_eq!(j.row(0), want.as_slice());
    }

    fn arb_matrix() -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(0u64..5, 25)
    }

    fn arb_quadric() -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(0u64..5, 55)
    }

    proptest! {
        #[test]
        fn action_is_a_lie_algebra_action(a in arb_matrix(), b in arb_matrix(), q in arb_quadric()) {
            let f = PrimeField::new(5).unwrap();
            let a = Matrix::from_fn(5, 5, |i, j| a[5 * i + j]);
            let b = Matrix::from_fn(5, 5, |i, j| b[5 * i + j]);
            let q = QuadricForm::from_vector(&f, &q);
            let ab = a.mul_in(&f, &b);
            let ba = b.mul_in(&f, &a);
            let comm = Matrix::from_fn(5, 5, |i, j| f.sub(ab.get(i, j), ba.get(i, j)));
            let lhs = act(&f, &comm, &q);
            let rhs = act(&f, &a, &act(&f, &b, &q)).sub(&f, &act(&f, &b, &act(&f, &a, &q)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn ideal_is_stable(a in arb_matrix(), k in 1u8..=5) {
            let f = PrimeField::new(7).unwrap();
            let a = Matrix::from_fn(5, 5, |i, j| a[5 * i + j]);
            let img = act(&f, &a, &pluecker_quadric(&f, k));
            let (_, perp) = mu_split(&f, &img).unwrap();
            prop_assert!(perp.is_zero());
        }

        #[test]
        fn splitting_is_idempotent(q in arb_quadric()) {
            let f = PrimeField::new(5).unwrap();
            let q = QuadricForm::from_vector(&f, &q);
            let (qi, qp) = mu_split(&f, &q).unwrap();
            prop_assert_eq!(qi.add(&f, &qp), q);
            let (again_i, again_p) = mu_split(&f, &qp).unwrap();
            prop_assert!(again_i.is_zero());
            prop_assert_eq!(again_p, qp);
        }

        #[test]
        fn euler_relation(q in arb_quadric(), p in prop::collection::vec(0u64..7, 10)) {
            let f = PrimeField::new(7).unwrap();
            let q = QuadricForm::from_vector(&f, &q);
            let g = q.gradient(&f, &p);
            prop_assert_eq!(f.dot(&p, &g), f.mul(&2, &q.eval(&f, &p)));
        }
    }
}
