//! Integral lattices given by Gram matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{integer_coordinates, integer_kernel, snf, IntMatrix, Matrix, Rat};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("the Gram matrix is degenerate")]
    Degenerate,
    #[error("the Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("the sublattice is not primitive (invariant factors {0:?})")]
    NotPrimitive(Vec<String>),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("entry does not fit in i64")]
    Overflow,
}

/// A nondegenerate symmetric integer Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct GramLattice {
    gram: IntMatrix,
}

impl TryFrom<Vec<Vec<i64>>> for GramLattice {
    type Error = LatticeError;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(LatticeError::Dimension("Gram matrix must be square".into()));
        }
        GramLattice::new(IntMatrix::from_i64_rows(&rows))
    }
}

impl From<GramLattice> for Vec<Vec<i64>> {
    fn from(l: GramLattice) -> Self {
        l.to_i64_rows().expect("Gram entries of constructed lattices are small")
    }
}

impl GramLattice {
    pub fn new(gram: IntMatrix) -> Result<Self, LatticeError> {
        if gram.rows() != gram.cols() {
            return Err(LatticeError::Dimension("Gram matrix must be square".into()));
        }
        if gram != gram.transpose() {
            return Err(LatticeError::NotSymmetric);
        }
        if gram.rows() > 0 && gram.det().is_zero() {
            return Err(LatticeError::Degenerate);
        }
        Ok(GramLattice { gram })
    }

    fn from_i64(rows: &[Vec<i64>]) -> Self {
        GramLattice::new(IntMatrix::from_i64_rows(rows)).expect("valid constructor data")
    }

    /// `E_8(-1)`: the negated Cartan matrix, Bourbaki labeling
    /// (chain 1-3-4-5-6-7-8, node 2 attached to 4).
    pub fn e8_minus1() -> Self {
        let edges = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)];
        let mut g = vec![vec![0i64; 8]; 8];
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = -2;
        }
        for (a, b) in edges {
            g[a - 1][b - 1] = 1;
            g[b - 1][a - 1] = 1;
        }
        GramLattice::from_i64(&g)
    }

    /// The hyperbolic plane.
    pub fn u() -> Self {
        GramLattice::from_i64(&[vec![0, 1], vec![1, 0]])
    }

    /// `I(n) = Z` with `b(1,1) = n`.
    pub fn i(n: i64) -> Self {
        GramLattice::from_i64(&[vec![n]])
    }

    pub fn direct_sum(parts: &[GramLattice]) -> Self {
        let r: usize = parts.iter().map(GramLattice::rank).sum();
        let mut g = Matrix::filled(r, r, BigInt::zero());
        let mut off = 0;
        for part in parts {
            for i in 0..part.rank() {
                for j in 0..part.rank() {
                    g.set(off + i, off + j, part.gram.get(i, j).clone());
                }
            }
            off += part.rank();
        }
        GramLattice { gram: g }
    }

    pub fn power(&self, k: usize) -> Self {
        GramLattice::direct_sum(&vec![self.clone(); k])
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> BigInt {
        self.gram.det()
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram.get(i, i).is_even())
    }

    pub fn to_i64_rows(&self) -> Result<Vec<Vec<i64>>, LatticeError> {
        (0..self.rank())
            .map(|i| self.gram.row(i).iter().map(|x| x.to_i64().ok_or(LatticeError::Overflow)).collect())
            .collect()
    }

    /// `b(x, y)` for integer coordinate vectors.
    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let gy = self.gram.apply(&crate::exact::Integers, y);
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    /// Gram matrix of the vectors given as rows of `basis`.
    pub fn restrict(&self, basis: &IntMatrix) -> IntMatrix {
        basis.mul(&self.gram).mul(&basis.transpose())
    }

    /// `(n₊, n₋)` by congruence diagonalization over `Q`. When every
    /// remaining diagonal entry vanishes, `e_i ↦ e_i + e_j` for a nonzero
    /// `b(e_i, e_j)` creates the pivot `2 b(e_i, e_j)`.
    pub fn signature(&self) -> (usize, usize) {
        let n = self.rank();
        let mut m: Vec<Vec<Rat>> = (0..n)
            .map(|i| self.gram.row(i).iter().map(|x| Rat::from_integer(x.clone())).collect())
            .collect();
        let mut alive: Vec<usize> = (0..n).collect();
        let (mut pos, mut neg) = (0, 0);
        while let Some(&first) = alive.first() {
            let pivot = alive.iter().copied().find(|&i| !m[i][i].is_zero());
            let p = match pivot {
                Some(p) => p,
                None => {
                    let Some((i, j)) = alive
                        .iter()
                        .flat_map(|&i| alive.iter().map(move |&j| (i, j)))
                        .find(|&(i, j)| !m[i][j].is_zero())
                    else {
                        unreachable!("nondegenerate Gram matrix {first}")
                    };
                    // row and column operation e_i += e_j
                    for k in 0..n {
                        let v = m[i][k].clone() + m[j][k].clone();
                        m[i][k] = v;
                    }
                    for k in 0..n {
                        let v = m[k][i].clone() + m[k][j].clone();
                        m[k][i] = v;
                    }
                    i
                }
            };
            let d = m[p][p].clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            alive.retain(|&i| i != p);
            for &i in &alive {
                let f = m[i][p].clone() / d.clone();
                if f.is_zero() {
                    continue;
                }
                for &k in &alive {
                    let v = m[i][k].clone() - f.clone() * m[p][k].clone();
                    m[i][k] = v;
                }
            }
        }
        (pos, neg)
    }

    /// `L^∨/L` from the Smith form `U G V = D`: the dual vectors
    /// `x_i = V e_i / d_i` generate, and `b(x_i, x_j) = v_iᵀ G v_j / (d_i d_j)`.
    pub fn discriminant_group(&self) -> DiscriminantGroup {
        let s = snf(&self.gram);
        let idx: Vec<usize> = (0..self.rank()).filter(|&i| s.diagonal[i] > BigInt::one()).collect();
        let cols: Vec<Vec<BigInt>> = idx.iter().map(|&i| s.v.col(i)).collect();
        let divisors: Vec<BigInt> = idx.iter().map(|&i| s.diagonal[i].clone()).collect();
        let pairing = (0..idx.len())
            .map(|a| {
                (0..idx.len())
                    .map(|b| {
                        let num = self.pair(&cols[a], &cols[b]);
                        frac_part(Rat::new(num, &divisors[a] * &divisors[b]))
                    })
                    .collect()
            })
            .collect();
        let generators = cols
            .iter()
            .zip(&divisors)
            .map(|(c, d)| c.iter().map(|x| Rat::new(x.clone(), d.clone())).collect())
            .collect();
        DiscriminantGroup {
            divisors,
            pairing,
            generators,
        }
    }

    /// Rows of `s` span a primitive sublattice: all invariant factors are 1.
    pub fn check_primitive(&self, s: &IntMatrix) -> Result<(), LatticeError> {
        if s.cols() != self.rank() {
            return Err(LatticeError::Dimension("sublattice vectors have the wrong length".into()));
        }
        let f = snf(s);
        if f.diagonal.iter().all(One::is_one) && f.diagonal.len() == s.rows() {
            Ok(())
        } else {
            Err(LatticeError::NotPrimitive(f.diagonal.iter().map(ToString::to_string).collect()))
        }
    }

    /// `{x ∈ L : b(x, S) = 0}` with a saturated kernel basis (rows).
    pub fn orthogonal_complement(&self, s: &IntMatrix) -> Result<(GramLattice, IntMatrix), LatticeError> {
        self.check_primitive(s)?;
        let basis = integer_kernel(&s.mul(&self.gram));
        let lat = GramLattice::new(self.restrict(&basis))?;
        Ok((lat, basis))
    }
}

fn frac_part(x: Rat) -> Rat {
    let f = x.floor();
    x - f
}

/// `L^∨/L` on generators `x_i` of orders `d_i`, with the `Q/Z` pairing
/// stored by representatives in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantGroup {
    pub divisors: Vec<BigInt>,
    pub pairing: Vec<Vec<Rat>>,
    /// The dual vectors `x_i` in lattice coordinates.
    pub generators: Vec<Vec<Rat>>,
}

impl DiscriminantGroup {
    pub fn order(&self) -> BigInt {
        self.divisors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty()
    }

    /// Killed by `n`: every invariant factor divides `n`.
    pub fn killed_by(&self, n: u64) -> bool {
        self.divisors.iter().all(|d| (BigInt::from(n) % d).is_zero())
    }

    /// `x·y = −x·y` in `Q/Z` for all generator pairs.
    pub fn pairing_equals_its_negative(&self) -> bool {
        self.pairing.iter().flatten().all(|x| frac_part(-x.clone()) == *x)
    }

    pub fn pairing_is_symmetric(&self) -> bool {
        let n = self.pairing.len();
        (0..n).all(|i| (0..n).all(|j| self.pairing[i][j] == self.pairing[j][i]))
    }

    pub fn render(&self) -> String {
        if self.divisors.is_empty() {
            return "0".into();
        }
        self.divisors.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" + ")
    }
}

/// `E_8(-1)^2 + U^2 + I(-2)^2`, rank 22.
pub fn gm_lattice() -> GramLattice {
    let e8 = GramLattice::e8_minus1();
    let u = GramLattice::u();
    let i = GramLattice::i(-2);
    GramLattice::direct_sum(&[e8.clone(), e8, u.clone(), u, i.clone(), i])
}

/// `E_8(-1)^2 + U^4`, rank 24.
pub fn h6_lattice() -> GramLattice {
    let e8 = GramLattice::e8_minus1();
    GramLattice::direct_sum(&[e8.power(2), GramLattice::u().power(4)])
}

fn unit_vec(n: usize, entries: &[(usize, i64)]) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    for &(i, x) in entries {
        v[i] = BigInt::from(x);
    }
    v
}

/// `I(2)^2 ⊂ E_8(-1)^2 + U^4` spanned by `e + f` in the last two copies of `U`.
pub fn i2_squared_embedding() -> IntMatrix {
    Matrix::from_rows_with_cols(vec![unit_vec(24, &[(20, 1), (21, 1)]), unit_vec(24, &[(22, 1), (23, 1)])], 24)
}

/// The expected basis of the complement: the `E_8` and first two `U`
/// coordinates, then `e − f` in each of the last two copies of `U`.
pub fn expected_complement_basis() -> IntMatrix {
    let mut rows: Vec<Vec<BigInt>> = (0..20).map(|i| unit_vec(24, &[(i, 1)])).collect();
    rows.push(unit_vec(24, &[(20, 1), (21, -1)]));
    rows.push(unit_vec(24, &[(22, 1), (23, -1)]));
    Matrix::from_rows_with_cols(rows, 24)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub checks: Vec<LatticeCheck>,
}

impl LatticeReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// The facts about the rank-22 lattice and its 24-dimensional overlattice
/// used for GM sixfolds.
pub fn verify_gm_lattice_facts() -> LatticeReport {
    let mut checks = Vec::new();
    let mut add = |name: &str, passed: bool, detail: String| {
        checks.push(LatticeCheck {
            name: name.into(),
            passed,
            detail,
        })
    };
    let l = gm_lattice();
    let h = h6_lattice();
    add("rank(L) = 22", l.rank() == 22, l.rank().to_string());
    let sig = l.signature();
    let neg = GramLattice {
        gram: l.gram.map(|x| -x),
    };
    add(
        "signature(L) = (20, 2)",
        sig == (20, 2),
        format!("computed {sig:?}; the negated form L(-1) has {:?}", neg.signature()),
    );
    let disc = l.discriminant_group();
    let two = BigInt::from(2);
    add(
        "Discr(L) = (Z/2)^2",
        disc.divisors == vec![two.clone(), two.clone()],
        disc.render(),
    );
    add(
        "|Discr(L)| = |det L|",
        disc.order() == l.det().abs(),
        format!("{} vs {}", disc.order(), l.det()),
    );
    add(
        "Discr(L) pairing equals its negative",
        disc.killed_by(2) && disc.pairing_equals_its_negative(),
        format!("{:?}", disc.pairing.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>()),
    );
    add("rank(E8(-1)^2 + U^4) = 24", h.rank() == 24, h.rank().to_string());
    add(
        "E8(-1)^2 + U^4 is even unimodular",
        h.is_even() && h.det().abs().is_one(),
        format!("det {}, signature {:?}", h.det(), h.signature()),
    );
    let s = i2_squared_embedding();
    let s_gram = h.restrict(&s);
    add(
        "embedded lattice is I(2)^2",
        s_gram == IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 2]]),
        format!("{:?}", s_gram.row_vecs()),
    );
    match h.orthogonal_complement(&s) {
        Err(e) => add("complement of I(2)^2", false, e.to_string()),
        Ok((comp, basis)) => {
            add("complement has rank 22", comp.rank() == 22, comp.rank().to_string());
            let expected = expected_complement_basis();
            let congruent = h.restrict(&expected) == *l.gram();
            let change = integer_coordinates(&basis, &expected).ok().flatten();
            let unimodular = change.as_ref().is_some_and(|c| c.det().abs().is_one());
            add(
                "complement is Gram-congruent to L",
                congruent && unimodular,
                format!("Gram match {congruent}, unimodular change of basis {unimodular}"),
            );
            let cd = comp.discriminant_group();
            add(
                "Discr(complement) = (Z/2)^2",
                cd.divisors == vec![two.clone(), two],
                cd.render(),
            );
        }
    }
    LatticeReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const E8_GOLDEN: &str = include_str!("../golden/e8_minus1.json");

    #[test]
    fn e8_matches_golden_file() {
        let golden: GramLattice = serde_json::from_str(E8_GOLDEN).unwrap();
        let e8 = GramLattice::e8_minus1();
        assert_eq!(golden, e8);
        assert!(e8.is_even());
        assert_eq!(e8.det(), BigInt::one());
        assert_eq!(e8.signature(), (0, 8));
        assert!(e8.discriminant_group().is_trivial());
    }

    #[test]
    fn small_examples() {
        assert!(GramLattice::u().discriminant_group().is_trivial());
        assert_eq!(GramLattice::u().signature(), (1, 1));
        assert_eq!(GramLattice::i(-2).signature(), (0, 1));
        let ii = GramLattice::i(-2).power(2).discriminant_group();
        assert_eq!(ii.divisors, vec![BigInt::from(2), BigInt::from(2)]);
        // dual basis e_i / 2 pairs to -2/4 = -1/2 = 1/2 mod Z
        let half = Rat::new(BigInt::one(), BigInt::from(2));
        let zero = Rat::zero();
        assert_eq!(ii.pairing, vec![vec![half.clone(), zero.clone()], vec![zero, half]]);
        assert!(matches!(
            GramLattice::try_from(vec![vec![1, 1], vec![1, 1]]),
            Err(LatticeError::Degenerate)
        ));
        assert!(matches!(
            GramLattice::try_from(vec![vec![1, 2], vec![0, 1]]),
            Err(LatticeError::NotSymmetric)
        ));
    }

    #[test]
    fn discriminant_of_a_cyclic_group() {
        // A_2(-1): det 3, generator of order 3 with b(x, x) = -2/3
        let a2 = GramLattice::try_from(vec![vec![-2, 1], vec![1, -2]]).unwrap();
        let d = a2.discriminant_group();
        assert_eq!(d.divisors, vec![BigInt::from(3)]);
        assert_eq!(d.pairing[0][0], Rat::new(BigInt::one(), BigInt::from(3)));
        assert!(!d.pairing_equals_its_negative());
    }

    #[test]
    fn complement_of_u_in_u_squared() {
        let uu = GramLattice::u().power(2);
        let s = IntMatrix::from_i64_rows(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let (c, basis) = uu.orthogonal_complement(&s).unwrap();
        assert_eq!(c.rank(), 2);
        assert_eq!(c.det(), BigInt::from(-1));
        assert!(c.is_even());
        assert_eq!(c.signature(), (1, 1));
        assert_eq!(uu.restrict(&basis), *c.gram());
    }

    #[test]
    fn non_primitive_sublattice_is_rejected() {
        let uu = GramLattice::u().power(2);
        let s = IntMatrix::from_i64_rows(&[vec![2, 0, 0, 0]]);
        assert!(matches!(uu.orthogonal_complement(&s), Err(LatticeError::NotPrimitive(_))));
    }

    #[test]
    fn gm_lattice_facts() {
        let rep = verify_gm_lattice_facts();
        assert_eq!(rep.checks.len(), 11);
        for c in rep.checks.iter().filter(|c| c.name != "signature(L) = (20, 2)") {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn signature_of_l_follows_from_its_summands() {
        // (0,8) + (0,8) + (1,1) + (1,1) + (0,1) + (0,1)
        let l = gm_lattice();
        assert_eq!(l.signature(), (2, 20));
        let sig = verify_gm_lattice_facts().checks.into_iter().find(|c| c.name == "signature(L) = (20, 2)").unwrap();
        assert!(!sig.passed);
        assert!(sig.detail.contains("(20, 2)"));
    }

    fn small_lattice() -> impl Strategy<Value = GramLattice> {
        prop_oneof![
            Just(GramLattice::u()),
            Just(GramLattice::e8_minus1()),
            (-4i64..=4).prop_filter("nonzero", |n| *n != 0).prop_map(GramLattice::i),
            Just(GramLattice::try_from(vec![vec![2, 1], vec![1, 2]]).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn signature_and_discriminant_are_additive(a in small_lattice(), b in small_lattice()) {
            let sum = GramLattice::direct_sum(&[a.clone(), b.clone()]);
            let (p1, n1) = a.signature();
            let (p2, n2) = b.signature();
            prop_assert_eq!(sum.signature(), (p1 + p2, n1 + n2));
            prop_assert_eq!(sum.discriminant_group().order(), sum.det().abs());
            prop_assert_eq!(sum.discriminant_group().order(), a.discriminant_group().order() * b.discriminant_group().order());
            prop_assert!(sum.discriminant_group().pairing_is_symmetric());
        }

        #[test]
        fn signature_is_a_congruence_invariant(
            a in small_lattice(),
            ops in prop::collection::vec((0usize..16, 0usize..16, -2i64..=2), 0..12),
        ) {
            // random unimodular change of basis by elementary operations
            let r = a.rank();
            let mut t = IntMatrix::identity(r);
            for (i, j, c) in ops {
                let (i, j) = (i % r, j % r);
                if i == j {
                    continue;
                }
                for k in 0..r {
                    let v = t.get(i, k) + BigInt::from(c) * t.get(j, k);
                    t.set(i, k, v);
                }
            }
            let moved = GramLattice::new(a.restrict(&t)).unwrap();
            prop_assert_eq!(moved.signature(), a.signature());
            prop_assert_eq!(moved.discriminant_group().divisors, a.discriminant_group().divisors);
        }

        #[test]
        fn complement_rank_drops_by_sublattice_rank(k in 1usize..4) {
            // k coordinate hyperbolic vectors e_i + f_i in U^4 (primitive, nondegenerate)
            let l = GramLattice::u().power(4);
            let rows: Vec<Vec<BigInt>> = (0..k).map(|i| unit_vec(8, &[(2 * i, 1), (2 * i + 1, 1)])).collect();
            let s = Matrix::from_rows_with_cols(rows, 8);
            let (c, _) = l.orthogonal_complement(&s).unwrap();
            prop_assert_eq!(c.rank(), 8 - k);
        }
    }
}
