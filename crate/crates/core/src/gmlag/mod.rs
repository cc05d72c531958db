//! GM data and Lagrangian data, and the correspondence between them.
//!
//! All subspaces are stored by basis rows in standard coordinates:
//! `V5` in `R^6`, `W` in `∧²R^6` (15 columns) and `A` in `∧³R^6`
//! (20 columns), with exterior bases ordered as in [`wedge::basis`].
//! `ε` is the value of the trivialization on `b_1 ∧ … ∧ b_5`, where
//! `b_i` are the stored rows of `V5`.
//!
//! A quadratic form on `W` is a symmetric matrix `S` in the stored basis
//! of `W`, read as `q(w, w') = w S w'ᵀ`; `q` itself is linear in
//! `v ∈ V6` and stored through its values on `e_1, …, e_6`.
//!
//! Both directions need only unit pivots, so they run over fields and
//! over `Z/p^k` alike (with 2 a unit).

pub mod wedge;
mod data;
mod lift;
mod search;

pub use data::{random_gm, random_lagrangian, Codec, DataSet, GmDataSet, RingSpec, Sample};
pub use lift::{lift_lagrangian, reduce_mod_p, LiftReport, LiftSummary};
pub use search::{
    find_opposite_v5, gaussian_binomial, random_smooth_lagrangian, scan_decomposables, OppositeSearch, OppositeV5,
    ScanOutcome,
};

use crate::exact::{kernel, rank, rref, Matrix, Ring};
use wedge::{basis, contract, omega, unit, wedge, wedge_component, wedge_vectors};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GmError {
    #[error("compatibility q(v)(w,w') = ε(v∧w∧w') fails at b{v}, w{s}, w{t}")]
    CompatibilityViolation { v: usize, s: usize, t: usize },
    #[error("{what}: expected rank {expected}, found {found}")]
    RankDefect { what: String, expected: usize, found: usize },
    #[error("the subspace is not isotropic for the wedge pairing")]
    NotIsotropic,
    #[error("invalid datum: {0}")]
    Invalid(String),
    #[error("result depends on {0}")]
    ChoiceDependence(String),
    #[error("malformed data set: {0}")]
    Format(String),
}

fn rank_defect(what: &str, expected: usize, found: usize) -> GmError {
    GmError::RankDefect {
        what: what.into(),
        expected,
        found,
    }
}

/// A primitive functional with kernel the row span of `v5`.
pub fn hyperplane_functional<R: Ring>(ring: &R, v5: &Matrix<R::Elem>) -> Result<Vec<R::Elem>, GmError> {
    match kernel(ring, v5) {
        Some(k) if k.len() == 1 => Ok(k.into_iter().next().expect("one vector")),
        _ => Err(rank_defect("V5", 5, rank(ring, v5))),
    }
}

/// `∧³` of the row span of a 5×6 basis: the 10 wedges of row triples.
pub fn wedge3_of_rows<R: Ring>(ring: &R, v5: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let rows: Vec<Vec<R::Elem>> = basis(3)
        .iter()
        .filter(|s| s[2] < v5.rows())
        .map(|s| wedge_vectors(ring, &[v5.row(s[0]).to_vec(), v5.row(s[1]).to_vec(), v5.row(s[2]).to_vec()]))
        .collect();
    Matrix::from_rows_with_cols(rows, 20)
}

/// `∧²` of the row span of a 5×6 basis.
pub fn wedge2_of_rows<R: Ring>(ring: &R, v5: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let rows: Vec<Vec<R::Elem>> = basis(2)
        .iter()
        .filter(|s| s[1] < v5.rows())
        .map(|s| wedge_vectors(ring, &[v5.row(s[0]).to_vec(), v5.row(s[1]).to_vec()]))
        .collect();
    Matrix::from_rows_with_cols(rows, 15)
}

/// Nonzero rows of the reduced echelon form: a canonical basis of the
/// row span of a direct summand.
pub fn canonical_rows<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let red = rref(ring, m);
    let r = red.rank();
    red.matrix.submatrix(&(0..r).collect::<Vec<_>>(), &(0..m.cols()).collect::<Vec<_>>())
}

pub fn same_row_space<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> bool {
    canonical_rows(ring, a) == canonical_rows(ring, b)
}

fn linear_combination<R: Ring>(ring: &R, coeffs: &[R::Elem], rows: &Matrix<R::Elem>) -> Vec<R::Elem> {
    rows.left_apply(ring, coeffs)
}

fn symmetric<R: Ring>(m: &Matrix<R::Elem>) -> bool {
    (0..m.rows()).all(|i| (0..i).all(|j| m.get(i, j) == m.get(j, i)))
}

/// Value of `ε` on an element of `∧⁵V5`, given in `∧⁵R^6` coordinates.
#[cfg(test)]
fn eps_of<R: Ring>(ring: &R, top5: &[R::Elem], eps: &R::Elem, x: &[R::Elem]) -> R::Elem {
    let i = top5
        .iter()
        .position(|b| ring.is_unit(b))
        .expect("a direct summand has a unit Plücker coordinate");
    let c = ring.mul(&x[i], &ring.inv(&top5[i]).expect("unit"));
    ring.mul(&c, eps)
}

/// `ε` read off the single `∧⁵` coordinate used by [`eps_of`], so that
/// `ε(a ∧ b)` needs only that coordinate of the wedge.
struct EpsForm<R: Ring> {
    target: &'static [usize],
    scale: R::Elem,
}

impl<R: Ring> EpsForm<R> {
    fn new(ring: &R, top5: &[R::Elem], eps: &R::Elem) -> Self {
        let i = top5
            .iter()
            .position(|b| ring.is_unit(b))
            .expect("a direct summand has a unit Plücker coordinate");
        EpsForm {
            target: &basis(5)[i],
            scale: ring.mul(&ring.inv(&top5[i]).expect("unit"), eps),
        }
    }

    fn on_wedge(&self, ring: &R, a: &[R::Elem], i: usize, b: &[R::Elem], j: usize) -> R::Elem {
        ring.mul(&wedge_component(ring, a, i, b, j, self.target), &self.scale)
    }
}

/// `q(v)` as a matrix, from the values on the standard basis.
fn q_at<R: Ring>(ring: &R, q: &[Matrix<R::Elem>], v: &[R::Elem]) -> Matrix<R::Elem> {
    let d = q[0].rows();
    Matrix::from_fn(d, d, |s, t| {
        let mut acc = ring.zero();
        for (k, vk) in v.iter().enumerate() {
            if !ring.is_zero(vk) {
                acc = ring.add(&acc, &ring.mul(vk, q[k].get(s, t)));
            }
        }
        acc
    })
}

#[derive(Clone, Debug)]
pub struct GmDatum<R: Ring> {
    pub ring: R,
    pub n: usize,
    /// 5×6 basis of `V5`.
    pub v5: Matrix<R::Elem>,
    /// `(n+5)`×15 basis of `W ⊂ ∧²V5`.
    pub w: Matrix<R::Elem>,
    /// `q(e_1), …, q(e_6)` as symmetric `(n+5)`×`(n+5)` matrices.
    pub q: Vec<Matrix<R::Elem>>,
    pub epsilon: R::Elem,
}

/// Equality of the data; the ring descriptors are assumed to agree.
impl<R: Ring> PartialEq for GmDatum<R> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.v5 == other.v5 && self.w == other.w && self.q == other.q && self.epsilon == other.epsilon
    }
}

impl<R: Ring> Eq for GmDatum<R> {}

impl<R: Ring> GmDatum<R> {
    /// Validate ranks, symmetry and the compatibility with `ε`.
    pub fn new(
        ring: R,
        n: usize,
        v5: Matrix<R::Elem>,
        w: Matrix<R::Elem>,
        q: Vec<Matrix<R::Elem>>,
        epsilon: R::Elem,
    ) -> Result<Self, GmError> {
        if !(3..=5).contains(&n) {
            return Err(GmError::Invalid(format!("n = {n} is not in 3..=5")));
        }
        if !ring.is_unit(&epsilon) {
            return Err(GmError::Invalid("ε is not a unit".into()));
        }
        if v5.rows() != 5 || v5.cols() != 6 || w.rows() != n + 5 || w.cols() != 15 || q.len() != 6 {
            return Err(GmError::Invalid("wrong matrix shapes".into()));
        }
        let phi = hyperplane_functional(&ring, &v5)?;
        let rk = rank(&ring, &w);
        if rk != n + 5 {
            return Err(rank_defect("W", n + 5, rk));
        }
        for i in 0..w.rows() {
            if contract(&ring, &phi, w.row(i), 2).iter().any(|x| !ring.is_zero(x)) {
                return Err(GmError::Invalid(format!("row {i} of W is not in ∧²V5")));
            }
        }
        for m in &q {
            if m.rows() != n + 5 || m.cols() != n + 5 || !symmetric::<R>(m) {
                return Err(GmError::Invalid("q(e_k) must be symmetric of size n+5".into()));
            }
        }
        let d = GmDatum {
            ring,
            n,
            v5,
            w,
            q,
            epsilon,
        };
        d.check_compatibility()?;
        Ok(d)
    }

    pub fn q_at(&self, v: &[R::Elem]) -> Matrix<R::Elem> {
        q_at(&self.ring, &self.q, v)
    }

    fn top5(&self) -> Vec<R::Elem> {
        wedge_vectors(&self.ring, &self.v5.row_vecs())
    }

    /// `q(b_i)(w_s, w_t) = ε(b_i ∧ w_s ∧ w_t)` on the stored bases.
    pub fn check_compatibility(&self) -> Result<(), GmError> {
        let r = &self.ring;
        let form = EpsForm::new(r, &self.top5(), &self.epsilon);
        for i in 0..5 {
            let b = self.v5.row(i);
            let qb = self.q_at(b);
            for s in 0..self.w.rows() {
                let bw = wedge(r, b, 1, self.w.row(s), 2);
                for t in 0..self.w.rows() {
                    if &form.on_wedge(r, &bw, 3, self.w.row(t), 2) != qb.get(s, t) {
                        return Err(GmError::CompatibilityViolation { v: i + 1, s: s + 1, t: t + 1 });
                    }
                }
            }
        }
        Ok(())
    }

    /// The same datum with `W` in reduced echelon form and `q` rewritten
    /// in that basis (`S ↦ T S Tᵀ`).
    pub fn canonical(&self) -> Self {
        let r = &self.ring;
        let red = rref(r, &self.w);
        let d = self.w.rows();
        let t = red.transform;
        let tt = t.transpose();
        GmDatum {
            ring: r.clone(),
            n: self.n,
            v5: self.v5.clone(),
            w: red.matrix.submatrix(&(0..d).collect::<Vec<_>>(), &(0..15).collect::<Vec<_>>()),
            q: self.q.iter().map(|m| t.mul_in(r, m).mul_in(r, &tt)).collect(),
            epsilon: self.epsilon.clone(),
        }
    }

    /// A standard basis vector completing `V5` to `V6`.
    pub fn default_v0(&self) -> Vec<R::Elem> {
        default_v0(&self.ring, &self.v5)
    }
}

fn default_v0<R: Ring>(ring: &R, v5: &Matrix<R::Elem>) -> Vec<R::Elem> {
    (0..6)
        .map(|k| unit(ring, k))
        .find(|e| rank(ring, &v5.vstack(&Matrix::from_rows_with_cols(vec![e.clone()], 6))) == 6)
        .expect("V5 is a direct summand")
}

#[derive(Clone, Debug)]
pub struct LagrangianDatum<R: Ring> {
    pub ring: R,
    pub n: usize,
    pub v5: Matrix<R::Elem>,
    /// 10×20 basis of `A ⊂ ∧³V6`.
    pub a: Matrix<R::Elem>,
    pub epsilon: R::Elem,
}

impl<R: Ring> PartialEq for LagrangianDatum<R> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.v5 == other.v5 && self.a == other.a && self.epsilon == other.epsilon
    }
}

impl<R: Ring> Eq for LagrangianDatum<R> {}

impl<R: Ring> LagrangianDatum<R> {
    /// Validate that `A` is a Lagrangian direct summand meeting `∧³V5` in
    /// rank `5 - n` (ranks are taken mod the maximal ideal over `Z/p^k`).
    pub fn new(ring: R, n: usize, v5: Matrix<R::Elem>, a: Matrix<R::Elem>, epsilon: R::Elem) -> Result<Self, GmError> {
        if !(3..=5).contains(&n) {
            return Err(GmError::Invalid(format!("n = {n} is not in 3..=5")));
        }
        if !ring.is_unit(&epsilon) {
            return Err(GmError::Invalid("ε is not a unit".into()));
        }
        if v5.rows() != 5 || v5.cols() != 6 || a.rows() != 10 || a.cols() != 20 {
            return Err(GmError::Invalid("wrong matrix shapes".into()));
        }
        hyperplane_functional(&ring, &v5)?;
        let rk = rank(&ring, &a);
        if rk != 10 {
            return Err(rank_defect("A", 10, rk));
        }
        let d = LagrangianDatum {
            ring,
            n,
            v5,
            a,
            epsilon,
        };
        if !d.is_isotropic() {
            return Err(GmError::NotIsotropic);
        }
        let meet = d.intersection_rank();
        if meet != 5 - n {
            return Err(rank_defect("A ∩ ∧³V5", 5 - n, meet));
        }
        Ok(d)
    }

    pub fn is_isotropic(&self) -> bool {
        let r = &self.ring;
        self.a.mul_in(r, &omega(r)).mul_in(r, &self.a.transpose()).is_zero_in(r)
    }

    /// `rank(A ∩ ∧³V5) = 20 - rank[A; ∧³V5]`.
    pub fn intersection_rank(&self) -> usize {
        20 - rank(&self.ring, &self.a.vstack(&wedge3_of_rows(&self.ring, &self.v5)))
    }

    /// A basis of `A ∩ ∧³V5` (over a field).
    pub fn intersection_basis(&self) -> Matrix<R::Elem> {
        let r = &self.ring;
        let s3 = wedge3_of_rows(r, &self.v5);
        // x A = y S3  <=>  (x, -y) [A; S3] = 0
        let stacked = self.a.vstack(&s3).transpose();
        let ker = kernel(r, &stacked).expect("kernel over a field");
        let rows: Vec<Vec<R::Elem>> = ker.iter().map(|c| linear_combination(r, &c[..10], &self.a)).collect();
        Matrix::from_rows_with_cols(rows, 20)
    }

    pub fn canonical(&self) -> Self {
        LagrangianDatum {
            a: canonical_rows(&self.ring, &self.a),
            ..self.clone()
        }
    }
}

/// `A = ker(∧³V5 ⊕ v0∧W → W^∨)`, `(ξ, v0∧w) ↦ (w' ↦ ε(ξ∧w') + q(v0)(w, w'))`.
pub fn gm_to_lagrangian_with<R: Ring>(d: &GmDatum<R>, v0: &[R::Elem]) -> Result<LagrangianDatum<R>, GmError> {
    let r = &d.ring;
    let full = d.v5.vstack(&Matrix::from_rows_with_cols(vec![v0.to_vec()], 6));
    if rank(r, &full) != 6 {
        return Err(GmError::Invalid("v0 does not complement V5".into()));
    }
    let form = EpsForm::new(r, &d.top5(), &d.epsilon);
    let s3 = wedge3_of_rows(r, &d.v5);
    let dim_w = d.w.rows();
    let vw: Vec<Vec<R::Elem>> = (0..dim_w).map(|s| wedge(r, v0, 1, d.w.row(s), 2)).collect();
    let sources = s3.vstack(&Matrix::from_rows_with_cols(vw, 20));
    let q0 = d.q_at(v0);
    let map = Matrix::from_fn(dim_w, 10 + dim_w, |t, c| {
        if c < 10 {
            form.on_wedge(r, s3.row(c), 3, d.w.row(t), 2)
        } else {
            q0.get(c - 10, t).clone()
        }
    });
    let ker = kernel(r, &map).ok_or_else(|| rank_defect("ker(∧³V5 ⊕ v0∧W → W^∨)", 10, 0))?;
    if ker.len() != 10 {
        return Err(rank_defect("ker(∧³V5 ⊕ v0∧W → W^∨)", 10, ker.len()));
    }
    let rows: Vec<Vec<R::Elem>> = ker.iter().map(|c| linear_combination(r, c, &sources)).collect();
    LagrangianDatum::new(r.clone(), d.n, d.v5.clone(), Matrix::from_rows_with_cols(rows, 20), d.epsilon.clone())
}

/// [`gm_to_lagrangian_with`] at the default `v0`, checked against a
/// second choice `v0 + Σ b_i`.
pub fn gm_to_lagrangian<R: Ring>(d: &GmDatum<R>) -> Result<LagrangianDatum<R>, GmError> {
    let r = &d.ring;
    let v0 = d.default_v0();
    let first = gm_to_lagrangian_with(d, &v0)?;
    let mut shifted = v0.clone();
    for i in 0..5 {
        for (x, b) in shifted.iter_mut().zip(d.v5.row(i)) {
            *x = r.add(x, b);
        }
    }
    let second = gm_to_lagrangian_with(d, &shifted)?;
    if !same_row_space(r, &first.a, &second.a) {
        return Err(GmError::ChoiceDependence("the choice of v0".into()));
    }
    Ok(first.canonical())
}

/// `W = φ⌟A` and `q(v)(φ⌟ξ, φ⌟ξ') = ε(v∧(φ⌟ξ)∧(φ⌟ξ') − φ(v) ξ∧(φ⌟ξ'))`,
/// for the given functional `φ` with kernel `V5`.
pub fn lagrangian_to_gm_with<R: Ring>(d: &LagrangianDatum<R>, phi: &[R::Elem]) -> Result<GmDatum<R>, GmError> {
    let r = &d.ring;
    let image: Vec<Vec<R::Elem>> = (0..10).map(|i| contract(r, phi, d.a.row(i), 3)).collect();
    let red = rref(r, &Matrix::from_rows_with_cols(image, 15));
    let dim_w = red.rank();
    if dim_w != d.n + 5 {
        return Err(rank_defect("W", d.n + 5, dim_w));
    }
    let w = red.matrix.submatrix(&(0..dim_w).collect::<Vec<_>>(), &(0..15).collect::<Vec<_>>());
    let pre: Vec<Vec<R::Elem>> = (0..dim_w).map(|s| linear_combination(r, red.transform.row(s), &d.a)).collect();
    let form = EpsForm::new(r, &wedge_vectors(r, &d.v5.row_vecs()), &d.epsilon);
    // ε(ξ_s ∧ w_t) does not depend on v
    let xw = Matrix::from_fn(dim_w, dim_w, |s, t| form.on_wedge(r, &pre[s], 3, w.row(t), 2));
    let mut q = Vec::with_capacity(6);
    for k in 0..6 {
        let e = unit(r, k);
        let ew: Vec<Vec<R::Elem>> = (0..dim_w).map(|s| wedge(r, &e, 1, w.row(s), 2)).collect();
        let m = Matrix::from_fn(dim_w, dim_w, |s, t| {
            let ww = form.on_wedge(r, &ew[s], 3, w.row(t), 2);
            r.sub(&ww, &r.mul(&phi[k], xw.get(s, t)))
        });
        if !symmetric::<R>(&m) {
            return Err(GmError::Invalid(format!("q(e{}) came out asymmetric", k + 1)));
        }
        q.push(m);
    }
    GmDatum::new(r.clone(), d.n, d.v5.clone(), w, q, d.epsilon.clone())
}

/// [`lagrangian_to_gm_with`] at the primitive `φ`, checked against `2φ`.
pub fn lagrangian_to_gm<R: Ring>(d: &LagrangianDatum<R>) -> Result<GmDatum<R>, GmError> {
    let r = &d.ring;
    let phi = hyperplane_functional(r, &d.v5)?;
    let first = lagrangian_to_gm_with(d, &phi)?;
    let two = r.from_i64(2);
    let scaled: Vec<R::Elem> = phi.iter().map(|x| r.mul(x, &two)).collect();
    if lagrangian_to_gm_with(d, &scaled)? != first {
        return Err(GmError::ChoiceDependence("rescaling φ".into()));
    }
    Ok(first)
}

#[cfg(test)]
mod tests;
