//! Exterior powers of `R^6` in coordinates.
//!
//! A grade-`k` element is a vector of length `C(6,k)` indexed by the
//! `k`-subsets of `{0..5}` in lexicographic order.

use std::sync::OnceLock;

use crate::exact::{det_leibniz, Matrix, Ring};

pub const DIM: usize = 6;

fn build_subsets(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..DIM {
            cur.push(i);
            rec(i + 1, k, cur, out);
            cur.pop();
        }
    }
    rec(0, k, &mut cur, &mut out);
    out
}

/// The `k`-subsets of `{0..5}` in lexicographic order.
pub fn basis(k: usize) -> &'static [Vec<usize>] {
    static TABLES: OnceLock<Vec<Vec<Vec<usize>>>> = OnceLock::new();
    &TABLES.get_or_init(|| (0..=DIM).map(build_subsets).collect())[k]
}

fn mask(set: &[usize]) -> u32 {
    set.iter().fold(0, |m, &i| m | 1 << i)
}

/// Position of a sorted subset in [`basis`].
pub fn index_of(set: &[usize]) -> usize {
    static INDEX: OnceLock<Vec<usize>> = OnceLock::new();
    let table = INDEX.get_or_init(|| {
        let mut t = vec![usize::MAX; 1 << DIM];
        for k in 0..=DIM {
            for (i, s) in basis(k).iter().enumerate() {
                t[mask(s) as usize] = i;
            }
        }
        t
    });
    table[mask(set) as usize]
}

/// Sign of `e_I ∧ e_J` relative to `e_{I ∪ J}`, or `None` if they meet.
fn merge_sign(i: &[usize], j: &[usize]) -> Option<bool> {
    if mask(i) & mask(j) != 0 {
        return None;
    }
    let mut inversions = 0;
    for a in i {
        inversions += j.iter().filter(|b| *b < a).count();
    }
    Some(inversions % 2 == 1)
}

pub fn binom6(k: usize) -> usize {
    basis(k).len()
}

/// `e_i` as a grade-1 vector.
pub fn unit<R: Ring>(ring: &R, i: usize) -> Vec<R::Elem> {
    let mut v = vec![ring.zero(); DIM];
    v[i] = ring.one();
    v
}

/// `a ∧ b` for `a` of grade `i` and `b` of grade `j`.
pub fn wedge<R: Ring>(ring: &R, a: &[R::Elem], i: usize, b: &[R::Elem], j: usize) -> Vec<R::Elem> {
    let mut out = vec![ring.zero(); binom6(i + j)];
    if i + j > DIM {
        return out;
    }
    for (x, si) in a.iter().zip(basis(i)) {
        if ring.is_zero(x) {
            continue;
        }
        for (y, sj) in b.iter().zip(basis(j)) {
            if ring.is_zero(y) {
                continue;
            }
            if let Some(neg) = merge_sign(si, sj) {
                let mut u: Vec<usize> = si.iter().chain(sj).copied().collect();
                u.sort_unstable();
                let pos = index_of(&u);
                let t = ring.mul(x, y);
                out[pos] = if neg { ring.sub(&out[pos], &t) } else { ring.add(&out[pos], &t) };
            }
        }
    }
    out
}

/// The coordinate of `a ∧ b` on `e_target`, where `|target| = i + j`.
/// Agrees with `wedge(a, i, b, j)[index_of(target)]` without forming the
/// other coordinates.
pub fn wedge_component<R: Ring>(ring: &R, a: &[R::Elem], i: usize, b: &[R::Elem], j: usize, target: &[usize]) -> R::Elem {
    debug_assert_eq!(target.len(), i + j);
    let mut acc = ring.zero();
    for si in basis(i) {
        if !si.iter().all(|x| target.contains(x)) {
            continue;
        }
        let x = &a[index_of(si)];
        if ring.is_zero(x) {
            continue;
        }
        let sj: Vec<usize> = target.iter().copied().filter(|t| !si.contains(t)).collect();
        let y = &b[index_of(&sj)];
        if ring.is_zero(y) {
            continue;
        }
        let t = ring.mul(x, y);
        acc = if merge_sign(si, &sj) == Some(true) { ring.sub(&acc, &t) } else { ring.add(&acc, &t) };
    }
    acc
}

/// Wedge of several grade-1 vectors.
pub fn wedge_vectors<R: Ring>(ring: &R, vs: &[Vec<R::Elem>]) -> Vec<R::Elem> {
    let mut acc = vec![ring.one()];
    for (k, v) in vs.iter().enumerate() {
        acc = wedge(ring, &acc, k, v, 1);
    }
    acc
}

/// Interior product `phi ⌟ xi` for `phi` in the dual and `xi` of grade `k`:
/// `phi ⌟ (v_1 ∧ ... ∧ v_k) = sum (-1)^(s) phi(v_{s+1}) v_1 ∧ ..^.. ∧ v_k`.
pub fn contract<R: Ring>(ring: &R, phi: &[R::Elem], xi: &[R::Elem], k: usize) -> Vec<R::Elem> {
    let mut out = vec![ring.zero(); binom6(k - 1)];
    for (x, s) in xi.iter().zip(basis(k)) {
        if ring.is_zero(x) {
            continue;
        }
        for (pos, &i) in s.iter().enumerate() {
            if ring.is_zero(&phi[i]) {
                continue;
            }
            let rest: Vec<usize> = s.iter().copied().filter(|&j| j != i).collect();
            let idx = index_of(&rest);
            let t = ring.mul(x, &phi[i]);
            out[idx] = if pos % 2 == 1 { ring.sub(&out[idx], &t) } else { ring.add(&out[idx], &t) };
        }
    }
    out
}

/// Gram matrix of `(x, y) -> coefficient of e_0..5 in x ∧ y` on grade 3.
pub fn omega<R: Ring>(ring: &R) -> Matrix<R::Elem> {
    let b = basis(3);
    Matrix::from_fn(20, 20, |r, c| match merge_sign(&b[r], &b[c]) {
        None => ring.zero(),
        Some(true) => ring.from_i64(-1),
        Some(false) => ring.one(),
    })
}

/// `∧^k g`: column `J` holds the coordinates of `g e_J`, so row `I`,
/// column `J` is the minor of `g` on rows `I` and columns `J`.
pub fn wedge_power<R: Ring>(ring: &R, g: &Matrix<R::Elem>, k: usize) -> Matrix<R::Elem> {
    let b = basis(k);
    Matrix::from_fn(b.len(), b.len(), |r, c| det_leibniz(ring, &g.submatrix(&b[r], &b[c])))
}

/// Pairing `x ∧ y` of two grade-3 vectors as a scalar.
pub fn pair3<R: Ring>(ring: &R, x: &[R::Elem], y: &[R::Elem]) -> R::Elem {
    wedge(ring, x, 3, y, 3)[0].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Integers, PrimeField};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    #[test]
    fn bases_and_indices() {
        assert_eq!(binom6(2), 15);
        assert_eq!(binom6(3), 20);
        assert_eq!(basis(3)[0], vec![0, 1, 2]);
        assert_eq!(basis(3)[19], vec![3, 4, 5]);
        for k in 0..=6 {
            for (i, s) in basis(k).iter().enumerate() {
                assert_eq!(index_of(s), i);
            }
        }
    }

    #[test]
    fn contraction_examples() {
        let z = Integers;
        let phi = unit(&z, 5);
        let e123 = wedge_vectors(&z, &[unit(&z, 0), unit(&z, 1), unit(&z, 2)]);
        assert!(contract(&z, &phi, &e123, 3).iter().all(|x| *x == BigInt::from(0)));
        let e612 = wedge_vectors(&z, &[unit(&z, 5), unit(&z, 0), unit(&z, 1)]);
        let e12 = wedge_vectors(&z, &[unit(&z, 0), unit(&z, 1)]);
        assert_eq!(contract(&z, &phi, &e612, 3), e12);
    }

    #[test]
    fn omega_is_unimodular_and_antisymmetric() {
        let z = Integers;
        let om = omega(&z);
        for i in 0..20 {
            for j in 0..20 {
                assert_eq!(om.get(i, j), &-om.get(j, i).clone());
            }
            assert_eq!(om.row(i).iter().filter(|x| **x != BigInt::from(0)).count(), 1);
        }
        // a signed permutation matrix: determinant (and Pfaffian) is ±1
        let f = PrimeField::new(7).unwrap();
        assert_eq!(crate::exact::rank(&f, &omega(&f)), 20);
    }

    proptest! {
        #[test]
        fn contraction_is_a_graded_derivation(
            phi in prop::collection::vec(0u64..7, 6),
            xi in prop::collection::vec(0u64..7, 20),
            v in prop::collection::vec(0u64..7, 6),
        ) {
            let f = PrimeField::new(7).unwrap();
            let lhs = contract(&f, &phi, &wedge(&f, &xi, 3, &v, 1), 4);
            let a = wedge(&f, &contract(&f, &phi, &xi, 3), 2, &v, 1);
            let b = wedge(&f, &xi, 3, &contract(&f, &phi, &v, 1), 0);
            let rhs: Vec<u64> = a.iter().zip(&b).map(|(x, y)| f.sub(x, y)).collect();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn single_components_match_the_full_wedge(
            a in prop::collection::vec(0u64..7, 20),
            b in prop::collection::vec(0u64..7, 15),
            c in prop::collection::vec(0u64..7, 15),
        ) {
            let f = PrimeField::new(7).unwrap();
            let full = wedge(&f, &a, 3, &b, 2);
            for (k, t) in basis(5).iter().enumerate() {
                prop_assert_eq!(wedge_component(&f, &a, 3, &b, 2, t), full[k]);
            }
            let full = wedge(&f, &b, 2, &c, 2);
            for (k, t) in basis(4).iter().enumerate() {
                prop_assert_eq!(wedge_component(&f, &b, 2, &c, 2, t), full[k]);
            }
        }

        #[test]
        fn wedge_power_is_multiplicative(g in prop::collection::vec(0u64..5, 36), h in prop::collection::vec(0u64..5, 36)) {
            let f = PrimeField::new(5).unwrap();
            let g = Matrix::from_fn(6, 6, |i, j| g[6 * i + j]);
            let h = Matrix::from_fn(6, 6, |i, j| h[6 * i + j]);
            let lhs = wedge_power(&f, &g.mul_in(&f, &h), 3);
            let rhs = wedge_power(&f, &g, 3).mul_in(&f, &wedge_power(&f, &h, 3));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
