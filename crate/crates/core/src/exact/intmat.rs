use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{kernel, Matrix};
use super::ring::{Integers, Rationals, Ring};
use super::{ExactError, PrimeField, Rat};

/// Dense integer matrix.
pub type IntMatrix = Matrix<BigInt>;

impl IntMatrix {
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Matrix::from_rows_with_cols(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            cols,
        )
    }

    pub fn identity(n: usize) -> Self {
        Matrix::identity_in(&Integers, n)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_in(&Integers, other)
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows(), self.cols());
        bareiss(&Integers, self).1
    }
}

/// Coefficient field for [`rank_over`] / [`kernel_over`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldDesc {
    Rationals,
    Prime(u64),
}

/// Kernel basis over the requested field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelBasis {
    Rationals(Vec<Vec<Rat>>),
    Prime(u64, Vec<Vec<u64>>),
}

impl KernelBasis {
    pub fn len(&self) -> usize {
        match self {
            KernelBasis::Rationals(v) => v.len(),
            KernelBasis::Prime(_, v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Fraction-free (Bareiss) echelon pass. Returns the rank and, for square
/// input, the determinant (zero when singular).
fn bareiss<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> (usize, R::Elem) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut prev = ring.one();
    let mut sign_flip = false;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !ring.is_zero(a.get(i, c))) else {
            continue;
        };
        if pr != r {
            a.swap_rows(pr, r);
            sign_flip = !sign_flip;
        }
        let piv = a.get(r, c).clone();
        for i in r + 1..rows {
            let f = a.get(i, c).clone();
            for j in c + 1..cols {
                let num = ring.sub(&ring.mul(&piv, a.get(i, j)), &ring.mul(&f, a.get(r, j)));
                let v = ring.div_exact(&num, &prev).expect("Bareiss division is exact");
                a.set(i, j, v);
            }
            a.set(i, c, ring.zero());
        }
        prev = piv;
        r += 1;
    }
    let det = if rows == cols && r == rows {
        let d = a.get(rows - 1, cols - 1).clone();
        if sign_flip {
            ring.neg(&d)
        } else {
            d
        }
    } else {
        ring.zero()
    };
    (r, det)
}

/// Rank after reducing coefficients into `f`, by fraction-free elimination.
pub fn rank_over(m: &IntMatrix, f: FieldDesc) -> usize {
    match f {
        FieldDesc::Rationals => bareiss(&Integers, m).0,
        FieldDesc::Prime(p) => {
            let fp = PrimeField::new(p).expect("prime characteristic");
            bareiss(&fp, &m.map(|x| fp.from_int(x))).0
        }
    }
}

/// Echelonized basis of the right null space over `f`.
pub fn kernel_over(m: &IntMatrix, f: FieldDesc) -> KernelBasis {
    match f {
        FieldDesc::Rationals => {
            let q = Rationals;
            KernelBasis::Rationals(kernel(&q, &m.map(|x| q.from_int(x))).expect("field kernel"))
        }
        FieldDesc::Prime(p) => {
            let fp = PrimeField::new(p).expect("prime characteristic");
            KernelBasis::Prime(p, kernel(&fp, &m.map(|x| fp.from_int(x))).expect("field kernel"))
        }
    }
}

/// Determinant of a small integer matrix by Bareiss elimination in i128.
/// Used by the exhaustive search, where entries are tiny.
pub fn det_small<const N: usize>(m: &[[i64; N]; N]) -> i128 {
    let mut a = [[0i128; N]; N];
    for i in 0..N {
        for j in 0..N {
            a[i][j] = m[i][j] as i128;
        }
    }
    let mut prev = 1i128;
    let mut sign = 1i128;
    for k in 0..N {
        if a[k][k] == 0 {
            let Some(pr) = (k + 1..N).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, pr);
            sign = -sign;
        }
        for i in k + 1..N {
            for j in k + 1..N {
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[N - 1][N - 1]
}

/// Row-style Hermite normal form: returns `(H, U)` with `H = U M`, `U`
/// unimodular, pivots positive and the entries above each pivot reduced
/// into `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let rows = h.rows();
    let mut r = 0;
    for c in 0..h.cols() {
        if r == rows {
            break;
        }
        loop {
            // smallest nonzero |entry| in column c, rows r..
            let best = (r..rows)
                .filter(|&i| !h.get(i, c).is_zero())
                .min_by(|&i, &j| h.get(i, c).abs().cmp(&h.get(j, c).abs()).then(i.cmp(&j)));
            let Some(b) = best else { break };
            h.swap_rows(r, b);
            u.swap_rows(r, b);
            let mut done = true;
            for i in r + 1..rows {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = h.get(i, c).div_floor(h.get(r, c));
                row_sub(&mut h, i, r, &q);
                row_sub(&mut u, i, r, &q);
                if !h.get(i, c).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            row_neg(&mut h, r);
            row_neg(&mut u, r);
        }
        for i in 0..r {
            let q = h.get(i, c).div_floor(h.get(r, c));
            if !q.is_zero() {
                row_sub(&mut h, i, r, &q);
                row_sub(&mut u, i, r, &q);
            }
        }
        r += 1;
    }
    (h, u)
}

fn row_sub(m: &mut IntMatrix, target: usize, src: usize, q: &BigInt) {
    for j in 0..m.cols() {
        let v = m.get(target, j) - q * m.get(src, j);
        m.set(target, j, v);
    }
}

fn row_neg(m: &mut IntMatrix, r: usize) {
    for j in 0..m.cols() {
        let v = -m.get(r, j);
        m.set(r, j, v);
    }
}

fn col_sub(m: &mut IntMatrix, target: usize, src: usize, q: &BigInt) {
    for i in 0..m.rows() {
        let v = m.get(i, target) - q * m.get(i, src);
        m.set(i, target, v);
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows() {
        let x = m.get(i, a).clone();
        let y = m.get(i, b).clone();
        m.set(i, a, y);
        m.set(i, b, x);
    }
}

/// Smith normal form `U M V = D`.
#[derive(Clone, Debug)]
pub struct Snf {
    /// Diagonal entries `d_1 | d_2 | ...`, nonnegative, length `min(rows, cols)`.
    pub diagonal: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Invariant factors strictly greater than one.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        self.diagonal
            .iter()
            .filter(|d| **d > BigInt::one())
            .cloned()
            .collect()
    }
}

pub fn snf(m: &IntMatrix) -> Snf {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let n = rows.min(cols);
    for t in 0..n {
        loop {
            // minimal nonzero |entry| in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = d.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            d.swap_rows(t, bi);
            u.swap_rows(t, bi);
            swap_cols(&mut d, t, bj);
            swap_cols(&mut v, t, bj);
            let mut clean = true;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t).div_floor(d.get(t, t));
                row_sub(&mut d, i, t, &q);
                row_sub(&mut u, i, t, &q);
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j).div_floor(d.get(t, t));
                col_sub(&mut d, j, t, &q);
                col_sub(&mut v, j, t, &q);
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let piv = d.get(t, t).clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !(d.get(i, j) % &piv).is_zero()));
            match offender {
                Some(i) => {
                    // add row i to row t and retry
                    for j in 0..cols {
                        let val = d.get(t, j) + d.get(i, j);
                        d.set(t, j, val);
                    }
                    for j in 0..rows {
                        let val = u.get(t, j) + u.get(i, j);
                        u.set(t, j, val);
                    }
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            row_neg(&mut d, t);
            row_neg(&mut u, t);
        }
    }
    let diagonal = (0..n).map(|i| d.get(i, i).clone()).collect();
    Snf { diagonal, u, v }
}

/// Z-basis (as rows) of the saturated kernel lattice `{x in Z^n : M x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hnf(&m.transpose());
    let zero_rows: Vec<Vec<BigInt>> = (0..h.rows())
        .filter(|&i| h.row(i).iter().all(Zero::is_zero))
        .map(|i| u.row(i).to_vec())
        .collect();
    Matrix::from_rows_with_cols(zero_rows, m.cols())
}

/// Express each row of `b` as an integer combination of the rows of `basis`
/// (which must be linearly independent). Returns `None` if some row is not
/// in the integer span.
pub fn integer_coordinates(basis: &IntMatrix, b: &IntMatrix) -> Result<Option<IntMatrix>, ExactError> {
    if basis.cols() != b.cols() {
        return Err(ExactError::Dimension("coordinate solve".into()));
    }
    let q = Rationals;
    let bt = basis.map(|x| q.from_int(x)).transpose();
    let mut out = Vec::new();
    for i in 0..b.rows() {
        // solve bt * c = b_i over Q via rref of [bt | b_i]
        let aug = Matrix::from_fn(bt.rows(), bt.cols() + 1, |r, c| {
            if c < bt.cols() {
                bt.get(r, c).clone()
            } else {
                q.from_int(b.get(i, r))
            }
        });
        let red = super::matrix::rref(&q, &aug);
        if red.pivots.contains(&bt.cols()) {
            return Ok(None);
        }
        let mut coords = vec![BigInt::zero(); bt.cols()];
        for (r, &pc) in red.pivots.iter().enumerate() {
            let val = red.matrix.get(r, bt.cols());
            if !val.is_integer() {
                return Ok(None);
            }
            coords[pc] = val.to_integer();
        }
        out.push(coords);
    }
    Ok(Some(Matrix::from_rows_with_cols(out, basis.rows())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_of_identity_and_diagonal() {
        let id = IntMatrix::identity(5);
        let (h, u) = hnf(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);
        let d = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        let (h, u) = hnf(&d);
        assert_eq!(h, d);
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_of_two_weight_rows() {
        let m = IntMatrix::from_i64_rows(&[vec![1, 1, 0, 0, 0], vec![2, 1, 1, 0, 0]]);
        let (h, u) = hnf(&m);
        assert_eq!(u.mul(&m), h);
        assert_eq!(h.get(0, 0), &BigInt::from(1));
        assert_eq!(h.get(1, 1), &BigInt::from(1));
        assert!(h.get(1, 0).is_zero());
        assert!(u.det().abs().is_one());
    }

    #[test]
    fn ranks_over_fields() {
        let z = IntMatrix::from_i64_rows(&[vec![0, 0], vec![0, 0]]);
        assert_eq!(rank_over(&z, FieldDesc::Rationals), 0);
        let d = IntMatrix::from_i64_rows(&[
            vec![5, 0, 0, 0, 0],
            vec![0, 1, 0, 0, 0],
            vec![0, 0, 1, 0, 0],
            vec![0, 0, 0, 1, 0],
            vec![0, 0, 0, 0, 1],
        ]);
        assert_eq!(rank_over(&d, FieldDesc::Prime(5)), 4);
        let cyc = IntMatrix::from_i64_rows(&[
            vec![1, 1, 0, 0, 0],
            vec![0, 1, 1, 0, 0],
            vec![0, 0, 1, 1, 0],
            vec![0, 0, 0, 1, 1],
            vec![1, 0, 0, 0, 1],
        ]);
        assert_eq!(cyc.det(), BigInt::from(2));
        assert_eq!(rank_over(&cyc, FieldDesc::Rationals), 5);
        assert_eq!(rank_over(&cyc, FieldDesc::Prime(5)), 5);
        assert_eq!(rank_over(&cyc, FieldDesc::Prime(2)), 4);
    }

    #[test]
    fn kernels() {
        assert!(kernel_over(&IntMatrix::identity(3), FieldDesc::Rationals).is_empty());
        let row = IntMatrix::from_i64_rows(&[vec![1, 1, 1, 1, 0]]);
        assert_eq!(kernel_over(&row, FieldDesc::Prime(5)).len(), 4);
    }

    #[test]
    fn small_determinants_agree_with_bigint() {
        let m = [[2i64, 1, 1, 0, 0], [1, 1, 0, 0, 0], [0, 2, 1, 1, 0], [0, 0, 1, 1, 1], [1, 0, 0, 2, 1]];
        let big = IntMatrix::from_i64_rows(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
        assert_eq!(BigInt::from(det_small(&m)), big.det());
    }

    #[test]
    fn smith_form_of_a_small_matrix() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = snf(&m);
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let d = s.u.mul(&m).mul(&s.v);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { s.diagonal[i].clone() } else { BigInt::zero() };
                assert_eq!(d.get(i, j), &want);
            }
        }
    }

    #[test]
    fn saturated_integer_kernel() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 4, 6]]);
        let k = integer_kernel(&m);
        assert_eq!(k.rows(), 2);
        for i in 0..2 {
            let dot: BigInt = (0..3).map(|j| k.get(i, j) * m.get(0, j)).sum();
            assert!(dot.is_zero());
        }
        // saturated: SNF of the kernel basis has unit invariant factors
        assert!(snf(&k).elementary_divisors().is_empty());
    }
}
