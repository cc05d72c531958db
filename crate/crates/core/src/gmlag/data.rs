//! Random data and the JSON form of data sets.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::wedge::{omega, wedge_vectors};
use super::{rank_defect, GmDatum, GmError, LagrangianDatum};
use crate::exact::{kernel, rank, FiniteField, GaloisField, Matrix, PrimeField, Rat, Rationals, Ring, ZModPk};

/// Rings we can draw random elements from.
pub trait Sample: Ring {
    fn sample<G: Rng + ?Sized>(&self, rng: &mut G) -> Self::Elem;

    fn sample_unit<G: Rng + ?Sized>(&self, rng: &mut G) -> Self::Elem {
        loop {
            let x = self.sample(rng);
            if self.is_unit(&x) {
                return x;
            }
        }
    }
}

impl Sample for PrimeField {
    fn sample<G: Rng + ?Sized>(&self, rng: &mut G) -> u64 {
        rng.gen_range(0..self.p())
    }
}

impl Sample for GaloisField {
    fn sample<G: Rng + ?Sized>(&self, rng: &mut G) -> u32 {
        self.element(rng.gen_range(0..self.size()))
    }
}

impl Sample for ZModPk {
    fn sample<G: Rng + ?Sized>(&self, rng: &mut G) -> u64 {
        rng.gen_range(0..self.modulus())
    }
}

/// Small integers, which keeps rational elimination cheap.
impl Sample for Rationals {
    fn sample<G: Rng + ?Sized>(&self, rng: &mut G) -> Rat {
        self.from_i64(rng.gen_range(-3..=3))
    }
}

fn random_matrix<R: Sample, G: Rng + ?Sized>(ring: &R, rows: usize, cols: usize, rng: &mut G) -> Matrix<R::Elem> {
    Matrix::from_fn(rows, cols, |_, _| ring.sample(rng))
}

fn random_invertible<R: Sample, G: Rng + ?Sized>(ring: &R, n: usize, rng: &mut G) -> Matrix<R::Elem> {
    loop {
        let g = random_matrix(ring, n, n, rng);
        if rank(ring, &g) == n {
            return g;
        }
    }
}

/// `∧³g` on row vectors: row `J` is the wedge of the rows of `g` in `J`.
fn wedge3_rows<R: Ring>(ring: &R, g: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let rows = super::wedge::basis(3)
        .iter()
        .map(|s| wedge_vectors(ring, &[g.row(s[0]).to_vec(), g.row(s[1]).to_vec(), g.row(s[2]).to_vec()]))
        .collect();
    Matrix::from_rows_with_cols(rows, 20)
}

/// A random Lagrangian datum: start from `∧³⟨e1..e5⟩`, fix a random
/// `L ⊂ ∧³⟨e1..e5⟩` of rank `5 - n`, apply symplectic transvections
/// `x ↦ x + c ω(x, v) v` with `v ∈ L^⊥` (these fix `L`), reject until the
/// intersection with `∧³⟨e1..e5⟩` is exactly `L`, then move everything by
/// a random `g ∈ GL6`.
pub fn random_lagrangian<R: Sample, G: Rng + ?Sized>(
    ring: &R,
    n: usize,
    transvections: usize,
    rng: &mut G,
) -> Result<LagrangianDatum<R>, GmError> {
    if !(3..=5).contains(&n) {
        return Err(GmError::Invalid(format!("n = {n} is not in 3..=5")));
    }
    let om = omega(ring);
    let std3 = super::wedge3_of_rows(ring, &Matrix::identity_in(ring, 6).submatrix(&[0, 1, 2, 3, 4], &[0, 1, 2, 3, 4, 5]));
    for _attempt in 0..1000 {
        let l = loop {
            let c = random_matrix(ring, 5 - n, 10, rng);
            let l = c.mul_in(ring, &std3);
            if rank(ring, &l) == 5 - n {
                break l;
            }
        };
        let perp = if l.rows() == 0 {
            Matrix::identity_in(ring, 20).row_vecs()
        } else {
            kernel(ring, &l.mul_in(ring, &om)).ok_or_else(|| rank_defect("L^⊥", 15 + n, 0))?
        };
        let perp = Matrix::from_rows_with_cols(perp, 20);
        let mut a = std3.clone();
        for _ in 0..transvections {
            let coeffs: Vec<R::Elem> = (0..perp.rows()).map(|_| ring.sample(rng)).collect();
            let v = perp.left_apply(ring, &coeffs);
            let c = ring.sample(rng);
            let ov = om.apply(ring, &v);
            a = Matrix::from_fn(10, 20, |i, j| {
                let w = ring.mul(&c, &ring.dot(a.row(i), &ov));
                ring.add(a.get(i, j), &ring.mul(&w, &v[j]))
            });
        }
        let meet = 20 - rank(ring, &a.vstack(&std3));
        if meet != 5 - n {
            continue;
        }
        let g = random_invertible(ring, 6, rng);
        let moved = a.mul_in(ring, &wedge3_rows(ring, &g));
        let v5 = g.submatrix(&[0, 1, 2, 3, 4], &[0, 1, 2, 3, 4, 5]);
        let eps = ring.sample_unit(rng);
        return LagrangianDatum::new(ring.clone(), n, v5, moved, eps);
    }
    Err(GmError::Invalid("no Lagrangian with the requested intersection after 1000 attempts".into()))
}

/// A random GM datum in general coordinates: random `V6 = V5 ⊕ ⟨v0⟩`,
/// random `W ⊂ ∧²V5` of rank `n + 5`, random symmetric `q(v0)`, and `q`
/// on `V5` forced by the compatibility with a random unit `ε`.
pub fn random_gm<R: Sample, G: Rng + ?Sized>(ring: &R, n: usize, rng: &mut G) -> Result<GmDatum<R>, GmError> {
    if !(3..=5).contains(&n) {
        return Err(GmError::Invalid(format!("n = {n} is not in 3..=5")));
    }
    let g = random_invertible(ring, 6, rng);
    let v5 = g.submatrix(&[0, 1, 2, 3, 4], &[0, 1, 2, 3, 4, 5]);
    let w2 = super::wedge2_of_rows(ring, &v5);
    let dim_w = n + 5;
    let w = loop {
        let w = random_matrix(ring, dim_w, 10, rng).mul_in(ring, &w2);
        if rank(ring, &w) == dim_w {
            break w;
        }
    };
    let eps = ring.sample_unit(rng);
    let form = super::EpsForm::new(ring, &wedge_vectors(ring, &v5.row_vecs()), &eps);
    // values of q on the adapted basis b_1..b_5, v0
    let mut adapted = Vec::with_capacity(6);
    for i in 0..5 {
        let b = v5.row(i);
        let bw: Vec<Vec<R::Elem>> = (0..dim_w).map(|s| super::wedge(ring, b, 1, w.row(s), 2)).collect();
        adapted.push(Matrix::from_fn(dim_w, dim_w, |s, t| form.on_wedge(ring, &bw[s], 3, w.row(t), 2)));
    }
    let mut q0 = random_matrix(ring, dim_w, dim_w, rng);
    for s in 0..dim_w {
        for t in 0..s {
            let x = q0.get(s, t).clone();
            q0.set(t, s, x);
        }
    }
    adapted.push(q0);
    // e_k = sum_j h_kj g_j with h = g^{-1}
    let h = crate::exact::solve_right_inverse(ring, &g).expect("invertible");
    let q: Vec<Matrix<R::Elem>> = (0..6)
        .map(|k| super::q_at(ring, &adapted, h.row(k)))
        .collect();
    GmDatum::new(ring.clone(), n, v5, w, q, eps)
}

/// String codecs for ring elements in data sets.
pub trait Codec: Ring {
    fn encode(&self, a: &Self::Elem) -> String;
    fn decode(&self, s: &str) -> Result<Self::Elem, GmError>;
}

fn parse_u64(s: &str) -> Result<u64, GmError> {
    s.trim().parse::<u64>().map_err(|e| GmError::Format(format!("{s:?}: {e}")))
}

impl Codec for PrimeField {
    fn encode(&self, a: &u64) -> String {
        a.to_string()
    }
    fn decode(&self, s: &str) -> Result<u64, GmError> {
        let x = parse_u64(s)?;
        if x >= self.p() {
            return Err(GmError::Format(format!("{x} is not reduced mod {}", self.p())));
        }
        Ok(x)
    }
}

impl Codec for GaloisField {
    fn encode(&self, a: &u32) -> String {
        a.to_string()
    }
    fn decode(&self, s: &str) -> Result<u32, GmError> {
        let x = parse_u64(s)?;
        if x >= self.size() {
            return Err(GmError::Format(format!("code {x} is out of range for F_{}", self.size())));
        }
        Ok(x as u32)
    }
}

impl Codec for ZModPk {
    fn encode(&self, a: &u64) -> String {
        a.to_string()
    }
    fn decode(&self, s: &str) -> Result<u64, GmError> {
        let x = parse_u64(s)?;
        if x >= self.modulus() {
            return Err(GmError::Format(format!("{x} is not reduced mod {}", self.modulus())));
        }
        Ok(x)
    }
}

impl Codec for Rationals {
    fn encode(&self, a: &Rat) -> String {
        a.to_string()
    }
    fn decode(&self, s: &str) -> Result<Rat, GmError> {
        s.trim().parse().map_err(|e| GmError::Format(format!("{s:?}: {e}")))
    }
}

/// The ring of a data set. `gf` with `k = 1` is the prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RingSpec {
    Gf { p: u64, k: u32 },
    Zmodpk { p: u64, k: u32 },
    Rationals,
}

fn encode_matrix<R: Codec>(ring: &R, m: &Matrix<R::Elem>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| ring.encode(x)).collect()).collect()
}

fn decode_matrix<R: Codec>(ring: &R, rows: &[Vec<String>], cols: usize) -> Result<Matrix<R::Elem>, GmError> {
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        if row.len() != cols {
            return Err(GmError::Format(format!("expected {cols} columns, found {}", row.len())));
        }
        out.push(row.iter().map(|s| ring.decode(s)).collect::<Result<Vec<_>, _>>()?);
    }
    Ok(Matrix::from_rows_with_cols(out, cols))
}

/// A Lagrangian datum as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DataSet {
    pub ring: RingSpec,
    pub n: usize,
    #[serde(rename = "V5")]
    pub v5: Vec<Vec<String>>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    pub epsilon: String,
}

impl DataSet {
    pub fn from_datum<R: Codec>(ring: RingSpec, d: &LagrangianDatum<R>) -> Self {
        DataSet {
            ring,
            n: d.n,
            v5: encode_matrix(&d.ring, &d.v5),
            a: encode_matrix(&d.ring, &d.a),
            epsilon: d.ring.encode(&d.epsilon),
        }
    }

    pub fn to_datum<R: Codec>(&self, ring: &R) -> Result<LagrangianDatum<R>, GmError> {
        LagrangianDatum::new(
            ring.clone(),
            self.n,
            decode_matrix(ring, &self.v5, 6)?,
            decode_matrix(ring, &self.a, 20)?,
            ring.decode(&self.epsilon)?,
        )
    }
}

/// A GM datum as stored on disk; `W` rows are in `∧²` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GmDataSet {
    pub ring: RingSpec,
    pub n: usize,
    #[serde(rename = "V5")]
    pub v5: Vec<Vec<String>>,
    #[serde(rename = "W")]
    pub w: Vec<Vec<String>>,
    pub q: Vec<Vec<Vec<String>>>,
    pub epsilon: String,
}

impl GmDataSet {
    pub fn from_datum<R: Codec>(ring: RingSpec, d: &GmDatum<R>) -> Self {
        GmDataSet {
            ring,
            n: d.n,
            v5: encode_matrix(&d.ring, &d.v5),
            w: encode_matrix(&d.ring, &d.w),
            q: d.q.iter().map(|m| encode_matrix(&d.ring, m)).collect(),
            epsilon: d.ring.encode(&d.epsilon),
        }
    }

    pub fn to_datum<R: Codec>(&self, ring: &R) -> Result<GmDatum<R>, GmError> {
        let dim_w = self.n + 5;
        let q = self
            .q
            .iter()
            .map(|m| decode_matrix(ring, m, dim_w))
            .collect::<Result<Vec<_>, _>>()?;
        GmDatum::new(
            ring.clone(),
            self.n,
            decode_matrix(ring, &self.v5, 6)?,
            decode_matrix(ring, &self.w, 15)?,
            q,
            ring.decode(&self.epsilon)?,
        )
    }
}
