use serde::{Deserialize, Serialize};

use super::ring::Ring;
use super::ExactError;

/// Dense row-major matrix with fixed dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, v: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![v; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self, ExactError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(ExactError::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Like `from_rows` but with an explicit column count, so that an empty
    /// list of rows still has a width.
    pub fn from_rows_with_cols(rows: Vec<Vec<E>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn map<F: Clone>(&self, f: impl Fn(&E) -> F) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn identity_in<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    pub fn zero_in<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, ring.zero())
    }

    pub fn mul_in<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimensions");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = ring.zero();
            for k in 0..self.cols {
                let (a, b) = (self.get(i, k), other.get(k, j));
                if ring.is_zero(a) || ring.is_zero(b) {
                    continue;
                }
                acc = ring.add(&acc, &ring.mul(a, b));
            }
            acc
        })
    }

    pub fn is_zero_in<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.data.iter().all(|x| ring.is_zero(x))
    }

    /// `v^T M` for a row vector `v`.
    pub fn left_apply<R: Ring<Elem = E>>(&self, ring: &R, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| {
                let mut acc = ring.zero();
                for (i, vi) in v.iter().enumerate() {
                    if !ring.is_zero(vi) {
                        acc = ring.add(&acc, &ring.mul(vi, self.get(i, j)));
                    }
                }
                acc
            })
            .collect()
    }

    /// `M v` for a column vector `v`.
    pub fn apply<R: Ring<Elem = E>>(&self, ring: &R, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| ring.dot(self.row(i), v)).collect()
    }
}

/// Reduced row echelon form with unit pivots.
#[derive(Clone, Debug)]
pub struct Rref<E> {
    pub matrix: Matrix<E>,
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
    /// Row operations applied: `transform * input = matrix`.
    pub transform: Matrix<E>,
}

impl<E> Rref<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Row reduction choosing only unit pivots.
///
/// Over a field this is ordinary RREF. Over a local ring such as `Z/p^k`
/// a column whose remaining entries are all non-units is skipped, so the
/// reported rank is the rank of the reduction mod the maximal ideal.
pub fn rref<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Rref<R::Elem> {
    let (matrix, pivots, transform) = eliminate(ring, m, true, true);
    Rref {
        matrix,
        pivots,
        transform: transform.expect("tracked"),
    }
}

/// The elimination behind [`rref`]. `above` also clears entries above the
/// pivots; `track` records the row operations.
fn eliminate<R: Ring>(
    ring: &R,
    m: &Matrix<R::Elem>,
    above: bool,
    track: bool,
) -> (Matrix<R::Elem>, Vec<usize>, Option<Matrix<R::Elem>>) {
    let mut a = m.clone();
    let mut t = track.then(|| Matrix::identity_in(ring, m.rows()));
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        let Some(pr) = (r..a.rows())
            .filter(|&i| ring.is_unit(a.get(i, c)))
            .min_by_key(|&i| ring.pivot_cost(a.get(i, c)))
        else {
            continue;
        };
        a.swap_rows(r, pr);
        let inv = ring.inv(a.get(r, c)).expect("unit pivot");
        // over a local ring, skipped columns can leave non-units left of c
        for j in 0..a.cols() {
            let v = ring.mul(a.get(r, j), &inv);
            a.set(r, j, v);
        }
        if let Some(t) = t.as_mut() {
            t.swap_rows(r, pr);
            for j in 0..t.cols() {
                let v = ring.mul(t.get(r, j), &inv);
                t.set(r, j, v);
            }
        }
        let support: Vec<usize> = (0..a.cols()).filter(|&j| !ring.is_zero(a.get(r, j))).collect();
        let first = if above { 0 } else { r + 1 };
        for i in first..a.rows() {
            if i == r {
                continue;
            }
            let f = a.get(i, c).clone();
            if ring.is_zero(&f) {
                continue;
            }
            for &j in &support {
                let v = ring.sub(a.get(i, j), &ring.mul(&f, a.get(r, j)));
                a.set(i, j, v);
            }
            if let Some(t) = t.as_mut() {
                for j in 0..t.cols() {
                    let v = ring.sub(t.get(i, j), &ring.mul(&f, t.get(r, j)));
                    t.set(i, j, v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots, t)
}

/// Rank over a field (over a local ring: rank of the residue reduction).
pub fn rank<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> usize {
    eliminate(ring, m, false, false).1.len()
}

/// Basis of the right kernel `{x : M x = 0}`, one vector per non-pivot
/// column, in increasing column order.
///
/// Over a local ring the basis is correct when the reduced matrix has no
/// leftover non-unit entries below the pivot rows (e.g. when `M` has full
/// row rank mod p); `None` signals the degenerate case.
pub fn kernel<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Option<Vec<Vec<R::Elem>>> {
    let (reduced, pivots, _) = eliminate(ring, m, true, false);
    for i in pivots.len()..m.rows() {
        if reduced.row(i).iter().any(|x| !ring.is_zero(x)) {
            return None;
        }
    }
    let mut out = Vec::new();
    let mut is_pivot = vec![false; m.cols()];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    for free in 0..m.cols() {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![ring.zero(); m.cols()];
        v[free] = ring.one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = ring.neg(reduced.get(i, free));
        }
        out.push(v);
    }
    Some(out)
}

/// A right inverse `X` with `M X = I` for a matrix of full row rank
/// (mod the maximal ideal, over a local ring).
pub fn solve_right_inverse<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Option<Matrix<R::Elem>> {
    let red = rref(ring, m);
    if red.rank() != m.rows() {
        return None;
    }
    // transform * M = E (rref). Columns at pivots of E form the identity,
    // so X = P * transform, where P places row i at pivot column i.
    let mut x = Matrix::zero_in(ring, m.cols(), m.rows());
    for (i, &pc) in red.pivots.iter().enumerate() {
        for j in 0..m.rows() {
            x.set(pc, j, red.transform.get(i, j).clone());
        }
    }
    Some(x)
}

/// Determinant by the Leibniz expansion; division free, meant for the
/// small (≤ 5×5) polynomial matrices of the singularity certificates.
pub fn det_leibniz<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> R::Elem {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    if n == 0 {
        return ring.one();
    }
    // Laplace expansion along the first row with zero skipping.
    fn rec<R: Ring>(ring: &R, m: &Matrix<R::Elem>, row: usize, cols: &mut Vec<usize>) -> R::Elem {
        if cols.len() == 1 {
            return m.get(row, cols[0]).clone();
        }
        let mut acc = ring.zero();
        for idx in 0..cols.len() {
            let c = cols[idx];
            let a = m.get(row, c).clone();
            if ring.is_zero(&a) {
                continue;
            }
            cols.remove(idx);
            let minor = rec(ring, m, row + 1, cols);
            cols.insert(idx, c);
            if ring.is_zero(&minor) {
                continue;
            }
            let term = ring.mul(&a, &minor);
            acc = if idx % 2 == 0 {
                ring.add(&acc, &term)
            } else {
                ring.sub(&acc, &term)
            };
        }
        acc
    }
    let mut cols: Vec<usize> = (0..n).collect();
    rec(ring, m, 0, &mut cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{PrimeField, Rationals, ZModPk};

    fn fp(p: u64, rows: &[&[i64]]) -> (PrimeField, Matrix<u64>) {
        let f = PrimeField::new(p).unwrap();
        let m = Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| f.from_i64(x)).collect())
                .collect(),
        )
        .unwrap();
        (f, m)
    }

    #[test]
    fn kernel_of_a_row_over_f5() {
        let (f, m) = fp(5, &[&[1, 1, 1, 1, 0]]);
        let k = kernel(&f, &m).unwrap();
        assert_eq!(k.len(), 4);
        for v in &k {
            assert_eq!(m.apply(&f, v), vec![0]);
        }
    }

    #[test]
    fn right_inverse_over_zmodpk() {
        let r = ZModPk::new(5, 3).unwrap();
        let m = Matrix::from_rows(vec![vec![1, 5, 7], vec![10, 3, 2]]).unwrap();
        let x = solve_right_inverse(&r, &m).unwrap();
        assert_eq!(m.mul_in(&r, &x), Matrix::identity_in(&r, 2));
    }

    #[test]
    fn leibniz_matches_elimination() {
        let q = Rationals;
        let m = Matrix::from_fn(4, 4, |i, j| q.from_i64(((i * 7 + j * 3) % 5) as i64 - 2));
        let d = det_leibniz(&q, &m);
        // independent: product of pivots from a plain elimination
        let mut a = m.clone();
        let mut det = q.one();
        for c in 0..4 {
            let pr = (c..4).find(|&i| !q.is_zero(a.get(i, c)));
            let Some(pr) = pr else {
                det = q.zero();
                break;
            };
            if pr != c {
                a.swap_rows(pr, c);
                det = q.neg(&det);
            }
            let piv = a.get(c, c).clone();
            det = q.mul(&det, &piv);
            for i in c + 1..4 {
                let f = q.mul(a.get(i, c), &q.inv(&piv).unwrap());
                for j in 0..4 {
                    let v = q.sub(a.get(i, j), &q.mul(&f, a.get(c, j)));
                    a.set(i, j, v);
                }
            }
        }
        assert_eq!(d, det);
    }
}
