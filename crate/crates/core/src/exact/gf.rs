use std::sync::Arc;

use num_bigint::BigInt;

use super::ring::{FiniteField, Ring};
use super::{is_prime, mod_floor_u64, ExactError};

/// Largest field order for which log/antilog tables are built.
const MAX_ORDER: u64 = 1 << 22;

#[derive(Debug)]
struct Tables {
    /// `exp[i]` = code of `g^i`, `i < q - 1`.
    exp: Vec<u32>,
    /// `log[c]` for nonzero codes `c`.
    log: Vec<u32>,
}

/// The finite field `F_{p^k}`.
///
/// Elements are encoded as integers `c = sum c_i p^i` where `c_i` are the
/// coefficients of the representing polynomial in `F_p[x]/(f)`, `f` the
/// first primitive polynomial of degree `k` in lexicographic order.
/// Multiplication goes through discrete-log tables.
#[derive(Clone, Debug)]
pub struct GaloisField {
    p: u64,
    k: u32,
    q: u64,
    /// Coefficients `f_0..f_{k-1}` of the monic modulus (leading 1 implicit).
    modulus: Vec<u64>,
    tables: Arc<Tables>,
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for GaloisField {}

impl GaloisField {
    pub fn new(p: u64, k: u32) -> Result<Self, ExactError> {
        if !is_prime(p) {
            return Err(ExactError::NotPrime(p));
        }
        let q = p
            .checked_pow(k)
            .filter(|q| *q <= MAX_ORDER && k >= 1)
            .ok_or(ExactError::ModulusTooLarge(p, k))?;
        let kk = k as usize;
        // Search monic degree-k polynomials for one whose root generates F_q^*.
        for code in 0..q {
            let f = digits(code, p, kk);
            if f[0] == 0 {
                continue;
            }
            if let Some(tables) = try_primitive(p, kk, q, &f) {
                return Ok(GaloisField {
                    p,
                    k,
                    q,
                    modulus: f,
                    tables: Arc::new(tables),
                });
            }
        }
        unreachable!("primitive polynomials exist in every degree")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The primitive element `x mod f` (for `k = 1`, a primitive root).
    pub fn generator(&self) -> u32 {
        self.tables.exp[1 % (self.q as usize - 1).max(1)]
    }

    /// Coefficient vector of an element.
    pub fn coeffs(&self, a: u32) -> Vec<u64> {
        digits(a as u64, self.p, self.k as usize)
    }

    pub fn from_coeffs(&self, c: &[u64]) -> u32 {
        let mut code = 0u64;
        for &ci in c.iter().rev() {
            code = code * self.p + ci % self.p;
        }
        code as u32
    }

    /// Embedding of `self` into a larger field `big` of the same
    /// characteristic, sending the polynomial generator to a root of
    /// `self.modulus` in `big`.
    pub fn embedding_into(&self, big: &GaloisField) -> Option<GfEmbedding> {
        if big.p != self.p || big.k % self.k != 0 {
            return None;
        }
        let kk = self.k as usize;
        let eval = |r: u32, coeffs: &[u64]| -> u32 {
            let mut acc = 0u32;
            for &c in coeffs.iter().rev() {
                acc = big.add(&big.mul(&acc, &r), &big.from_i64(c as i64));
            }
            acc
        };
        let mut full = self.modulus.clone();
        full.push(1);
        for r in 0..big.q as u32 {
            if eval(r, &full) == 0 {
                let image = (0..self.q)
                    .map(|code| eval(r, &digits(code, self.p, kk)))
                    .collect();
                return Some(GfEmbedding { image });
            }
        }
        None
    }
}

/// A field embedding `F_q -> F_{q^e}` as a lookup table on codes.
#[derive(Clone, Debug)]
pub struct GfEmbedding {
    image: Vec<u32>,
}

impl GfEmbedding {
    pub fn apply(&self, a: u32) -> u32 {
        self.image[a as usize]
    }
}

fn digits(mut code: u64, p: u64, k: usize) -> Vec<u64> {
    let mut out = vec![0; k];
    for d in out.iter_mut() {
        *d = code % p;
        code /= p;
    }
    out
}

fn try_primitive(p: u64, k: usize, q: u64, f: &[u64]) -> Option<Tables> {
    let n = (q - 1) as usize;
    let mut exp = Vec::with_capacity(n);
    let mut log = vec![u32::MAX; q as usize];
    // current power as coefficient vector
    let mut cur = vec![0u64; k];
    cur[0] = 1;
    for i in 0..n {
        let code = encode(&cur, p);
        if code == 0 || log[code as usize] != u32::MAX {
            return None;
        }
        log[code as usize] = i as u32;
        exp.push(code as u32);
        // multiply by x modulo f, using x^k = -(f_0 + ... + f_{k-1} x^{k-1})
        let top = cur[k - 1];
        let mut next = vec![0u64; k];
        for j in 0..k {
            let shifted = if j > 0 { cur[j - 1] } else { 0 };
            next[j] = (shifted + (p - f[j]) * top) % p;
        }
        cur = next;
    }
    Some(Tables { exp, log })
}

fn encode(c: &[u64], p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

impl Ring for GaloisField {
    type Elem = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn from_int(&self, n: &BigInt) -> u32 {
        mod_floor_u64(n, self.p) as u32
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        if self.k == 1 {
            return ((*a as u64 + *b as u64) % self.p) as u32;
        }
        let (mut x, mut y) = (*a as u64, *b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        out as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        let mut x = *a as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        out as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        let t = &self.tables;
        let n = self.q - 1;
        let e = (t.log[*a as usize] as u64 + t.log[*b as usize] as u64) % n;
        t.exp[e as usize]
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let t = &self.tables;
        let n = self.q - 1;
        let e = (n - t.log[*a as usize] as u64) % n;
        Some(t.exp[e as usize])
    }
    fn is_field(&self) -> bool {
        true
    }
    fn render(&self, a: &u32) -> String {
        a.to_string()
    }
}

impl FiniteField for GaloisField {
    fn size(&self) -> u64 {
        self.q
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn element(&self, index: u64) -> u32 {
        index as u32
    }
    fn index_of(&self, a: &u32) -> u64 {
        *a as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9_is_a_field() {
        let f = GaloisField::new(3, 2).unwrap();
        assert_eq!(f.order(), 9);
        for a in 1..9u32 {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
            assert_eq!(f.add(&a, &f.neg(&a)), 0);
        }
        // Frobenius fixes exactly the prime field
        let fixed: Vec<u32> = (0..9).filter(|a| f.pow(a, 3) == *a).collect();
        assert_eq!(fixed, vec![0, 1, 2]);
    }

    #[test]
    fn prime_degree_one_matches_residues() {
        let f = GaloisField::new(7, 1).unwrap();
        for a in 0..7u32 {
            for b in 0..7u32 {
                assert_eq!(f.mul(&a, &b), a * b % 7);
                assert_eq!(f.add(&a, &b), (a + b) % 7);
            }
        }
    }

    #[test]
    fn distributivity_in_f625() {
        let f = GaloisField::new(5, 4).unwrap();
        for (a, b, c) in [(17u32, 301u32, 599u32), (1, 624, 312), (44, 45, 46)] {
            let lhs = f.mul(&a, &f.add(&b, &c));
            let rhs = f.add(&f.mul(&a, &b), &f.mul(&a, &c));
            assert_eq!(lhs, rhs);
        }
        assert_eq!(f.pow(&123, 625), 123);
    }

    #[test]
    fn embedding_f9_into_f81_is_a_homomorphism() {
        let small = GaloisField::new(3, 2).unwrap();
        let big = GaloisField::new(3, 4).unwrap();
        let emb = small.embedding_into(&big).unwrap();
        for a in 0..9u32 {
            for b in 0..9u32 {
                assert_eq!(emb.apply(small.mul(&a, &b)), big.mul(&emb.apply(a), &emb.apply(b)));
                assert_eq!(emb.apply(small.add(&a, &b)), big.add(&emb.apply(a), &emb.apply(b)));
            }
        }
    }
}
