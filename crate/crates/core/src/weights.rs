//! Root datum of SL5: weights modulo the all-ones vector, the symmetric
//! group acting by the shifted ("dot") action, dominance and the Weyl
//! dimension formula.
//!
//! Permutations act on vectors by moving entries: `(w v)_{w(j)} = v_j`.
//! With this convention `(1 2 3 4)` sends `[1,0,0,3,0]` to `[3,1,0,0,0]`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Half-sum of the positive roots.
pub const RHO: [i64; 5] = [2, 1, 0, -1, -2];

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum WeightsError {
    #[error("weight {0} is not dominant")]
    NotDominant(Weight),
    #[error("cannot parse permutation '{0}'")]
    BadPermutation(String),
    #[error("root index ({0},{1}) out of range")]
    BadRoot(usize, usize),
}

/// Character of the maximal torus, stored with minimal entry 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[i64; 5]", from = "[i64; 5]")]
pub struct Weight([i64; 5]);

impl Weight {
    pub const ZERO: Weight = Weight([0; 5]);

    pub fn new(raw: [i64; 5]) -> Self {
        let m = *raw.iter().min().unwrap();
        Weight(raw.map(|a| a - m))
    }

    /// Canonical representative (minimum 0).
    pub fn rep(&self) -> [i64; 5] {
        self.0
    }

    pub fn plus_rho(&self) -> [i64; 5] {
        add(self.0, RHO)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight::new(add(self.0, other.0))
    }

    pub fn neg(&self) -> Weight {
        Weight::new(self.0.map(|a| -a))
    }
}

impl From<[i64; 5]> for Weight {
    fn from(raw: [i64; 5]) -> Self {
        Weight::new(raw)
    }
}

impl From<Weight> for [i64; 5] {
    fn from(w: Weight) -> Self {
        w.0
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_vec(&self.0))
    }
}

pub fn fmt_vec(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("[{}]", parts.join(","))
}

pub fn add(a: [i64; 5], b: [i64; 5]) -> [i64; 5] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3], a[4] + b[4]]
}

pub fn sub(a: [i64; 5], b: [i64; 5]) -> [i64; 5] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3], a[4] - b[4]]
}

/// `<lambda, alpha_{ij}^vee> = a_i - a_j` for the positive root `e_i - e_j`,
/// 1-based with `i < j`.
pub fn pairing(l: &Weight, i: usize, j: usize) -> Result<i64, WeightsError> {
    if !(1 <= i && i < j && j <= 5) {
        return Err(WeightsError::BadRoot(i, j));
    }
    Ok(l.0[i - 1] - l.0[j - 1])
}

/// Pairing with the simple coroot `alpha_k = e_k - e_{k+1}`, `k` in 1..=4.
pub fn simple_pairing(l: &Weight, k: usize) -> i64 {
    l.0[k - 1] - l.0[k]
}

/// Element of the Weyl group `S_5`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElem {
    /// `images[j] = w(j)`, 0-based.
    images: [u8; 5],
    length: u32,
}

impl WeylElem {
    pub fn identity() -> Self {
        WeylElem::from_images0([0, 1, 2, 3, 4])
    }

    fn from_images0(images: [u8; 5]) -> Self {
        let mut length = 0;
        for i in 0..5 {
            for j in i + 1..5 {
                if images[i] > images[j] {
                    length += 1;
                }
            }
        }
        WeylElem { images, length }
    }

    /// From 1-based images `w(1), ..., w(5)`.
    pub fn from_images(images: [u8; 5]) -> Option<Self> {
        let mut seen = [false; 5];
        for &x in &images {
            if !(1..=5).contains(&x) || seen[x as usize - 1] {
                return None;
            }
            seen[x as usize - 1] = true;
        }
        Some(WeylElem::from_images0(images.map(|x| x - 1)))
    }

    /// 1-based image of a 1-based point.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn sign(&self) -> i64 {
        if self.length % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// Move entries: `(w v)_{w(j)} = v_j`.
    pub fn apply(&self, v: [i64; 5]) -> [i64; 5] {
        let mut out = [0; 5];
        for j in 0..5 {
            out[self.images[j] as usize] = v[j];
        }
        out
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &WeylElem) -> WeylElem {
        WeylElem::from_images0(other.images.map(|j| self.images[j as usize]))
    }

    pub fn inverse(&self) -> WeylElem {
        let mut inv = [0u8; 5];
        for j in 0..5 {
            inv[self.images[j] as usize] = j as u8;
        }
        WeylElem::from_images0(inv)
    }

    /// All 120 elements in lexicographic order of their image vectors.
    pub fn all() -> Vec<WeylElem> {
        let mut out = Vec::with_capacity(120);
        let mut perm = [0u8, 1, 2, 3, 4];
        loop {
            out.push(WeylElem::from_images0(perm));
            // next lexicographic permutation
            let Some(i) = (0..4).rev().find(|&i| perm[i] < perm[i + 1]) else {
                break;
            };
            let j = (i + 1..5).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        out
    }

    /// Disjoint cycles (1-based, each starting at its smallest point, fixed
    /// points omitted).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = [false; 5];
        let mut out = Vec::new();
        for start in 0..5 {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Display for WeylElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("id");
        }
        for c in self.cycles() {
            let parts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for WeylElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElem{self}")
    }
}

impl FromStr for WeylElem {
    type Err = WeightsError;

    /// Parses cycle notation such as `(1 2 4)(3 5)`, or `id`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WeightsError::BadPermutation(s.to_string());
        let t = s.trim();
        if t == "id" || t.is_empty() {
            return Ok(WeylElem::identity());
        }
        let mut images = [0u8, 1, 2, 3, 4];
        let mut touched = [false; 5];
        let mut rest = t;
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = open.find(')').ok_or_else(bad)?;
            let pts: Vec<usize> = open[..close]
                .split_whitespace()
                .map(|x| x.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?;
            for &x in &pts {
                if !(1..=5).contains(&x) || touched[x - 1] {
                    return Err(bad());
                }
                touched[x - 1] = true;
            }
            for k in 0..pts.len() {
                images[pts[k] - 1] = (pts[(k + 1) % pts.len()] - 1) as u8;
            }
            rest = open[close + 1..].trim_start();
        }
        Ok(WeylElem::from_images0(images))
    }
}

impl Serialize for WeylElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for WeylElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `w • v = w(v + rho) - rho` on raw vectors (no normalisation), the form
/// in which the printed tables list their columns.
pub fn dot_act_raw(w: &WeylElem, v: [i64; 5]) -> [i64; 5] {
    sub(w.apply(add(v, RHO)), RHO)
}

pub fn dot_act(w: &WeylElem, l: &Weight) -> Weight {
    Weight::new(dot_act_raw(w, l.rep()))
}

/// The shortest `w` with `w(lambda + rho)` weakly decreasing, and that
/// sorted vector. Ties keep their original relative order.
pub fn sorting_word(l: &Weight) -> (WeylElem, [i64; 5]) {
    sorting_word_raw(l.rep())
}

/// Same as [`sorting_word`] for an arbitrary representative; `v` is then
/// the sorted `raw + rho`.
pub fn sorting_word_raw(raw: [i64; 5]) -> (WeylElem, [i64; 5]) {
    let v = add(raw, RHO);
    let mut order = [0usize, 1, 2, 3, 4];
    order.sort_by(|&a, &b| v[b].cmp(&v[a]).then(a.cmp(&b)));
    let mut images = [0u8; 5];
    for (pos, &j) in order.iter().enumerate() {
        images[j] = pos as u8;
    }
    let w = WeylElem::from_images0(images);
    let sorted = w.apply(v);
    (w, sorted)
}

/// Weyl dimension formula `prod_{i<j} (m_i - m_j)/(j - i)`, `m = mu + rho`.
pub fn weyl_dim(mu: &Weight) -> Result<u128, WeightsError> {
    if !mu.is_dominant() {
        return Err(WeightsError::NotDominant(*mu));
    }
    let m = mu.plus_rho();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..5 {
        for j in i + 1..5 {
            num *= (m[i] - m[j]) as u128;
            den *= (j - i) as u128;
        }
    }
    debug_assert_eq!(num % den, 0);
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> WeylElem {
        s.parse().unwrap()
    }

    #[test]
    fn representatives_are_normalised() {
        assert_eq!(Weight::new([1, 1, 1, 0, 0]), Weight::new([0, 0, 0, -1, -1]));
        assert_eq!(Weight::new([-2, 0, 0, 3, 3]).rep(), [0, 2, 2, 5, 5]);
    }

    #[test]
    fn pairings_from_the_vanishing_arguments() {
        let rho = Weight::new(RHO);
        assert_eq!(pairing(&rho, 1, 2).unwrap(), 1);
        assert_eq!(pairing(&Weight::new([-1, -1, -1, 0, 0]), 3, 4).unwrap(), -1);
        assert_eq!(pairing(&Weight::new([-2, -2, -2, 0, 0]), 3, 4).unwrap(), -2);
        assert!(pairing(&rho, 2, 2).is_err());
    }

    #[test]
    fn dot_action_examples() {
        assert_eq!(dot_act(&WeylElem::identity(), &Weight::new([3, 1, 0, 0, 2])), Weight::new([3, 1, 0, 0, 2]));
        assert_eq!(dot_act(&w("(3 4)"), &Weight::new([0, 0, -1, 1, 0])), Weight::ZERO);
        assert_eq!(dot_act(&w("(2 3 4)"), &Weight::new([0, -1, -1, 2, 0])), Weight::ZERO);
        assert_eq!(dot_act(&w("(3 5 4)"), &Weight::new([0, 0, -2, 1, 1])), Weight::ZERO);
    }

    #[test]
    fn permutation_convention_moves_entries() {
        assert_eq!(w("(1 2 3 4)").apply([1, 0, 0, 3, 0]), [3, 1, 0, 0, 0]);
        assert_eq!(w("(1 2 4)(3 5)").apply([2, 0, -1, 4, 1]), [4, 2, 1, 0, -1]);
    }

    #[test]
    fn sorting_words_of_table_rows() {
        let (s, v) = sorting_word(&Weight::new([0, 0, -2, 1, 1]));
        assert_eq!(s, w("(3 5 4)"));
        assert_eq!(v, [2, 1, 0, -1, -2].map(|x| x + 2));
        // lambda + rho = [2,0,-1,4,1]
        let (s, v) = sorting_word_raw([0, -1, -1, 5, 3]);
        assert_eq!(s, w("(1 2 4)(3 5)"));
        assert_eq!(v, [4, 2, 1, 0, -1]);
        let (s, _) = sorting_word(&Weight::new([4, 2, 2, 0, 0]));
        assert!(s.is_identity());
    }

    #[test]
    fn cycle_notation_round_trips() {
        for e in WeylElem::all() {
            let back: WeylElem = e.to_string().parse().unwrap();
            assert_eq!(back, e);
        }
        assert_eq!(WeylElem::all().len(), 120);
        assert_eq!(w("(1 2 3 4 5)").length(), 4);
        assert_eq!(w("(1 5)").length(), 7);
    }

    #[test]
    fn weyl_dimensions() {
        assert_eq!(weyl_dim(&Weight::ZERO).unwrap(), 1);
        assert_eq!(weyl_dim(&Weight::new([1, 0, 0, 0, 0])).unwrap(), 5);
        assert_eq!(weyl_dim(&Weight::new([2, 2, 2, 0, 0])).unwrap(), 50);
        assert_eq!(weyl_dim(&Weight::new([1, 1, 1, 0, 0])).unwrap(), 10);
        assert_eq!(weyl_dim(&Weight::new([1, 0, 0, 0, -1])).unwrap(), 24);
        assert!(weyl_dim(&Weight::new([0, 1, 0, 0, 0])).is_err());
    }
}
