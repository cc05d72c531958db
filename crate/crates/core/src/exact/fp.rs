use num_bigint::BigInt;

use super::ring::{FiniteField, Ring};
use super::{inv_mod, is_prime, mod_floor_u64, ExactError};

/// The prime field `F_p`, residues stored in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ExactError> {
        if !is_prime(p) {
            return Err(ExactError::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(ExactError::ModulusTooLarge(p, 1));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn signed(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl Ring for PrimeField {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        mod_floor_u64(n, self.p)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        inv_mod(*a, self.p)
    }
    fn is_field(&self) -> bool {
        true
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl FiniteField for PrimeField {
    fn size(&self) -> u64 {
        self.p
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn element(&self, index: u64) -> u64 {
        index
    }
    fn index_of(&self, a: &u64) -> u64 {
        *a
    }
}

/// The truncated p-adic ring `Z/p^k`, a local ring standing in for a
/// discrete valuation ring with residue field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZModPk {
    p: u64,
    k: u32,
    modulus: u64,
}

impl ZModPk {
    pub fn new(p: u64, k: u32) -> Result<Self, ExactError> {
        if !is_prime(p) {
            return Err(ExactError::NotPrime(p));
        }
        let modulus = p
            .checked_pow(k)
            .filter(|m| *m < 1 << 31)
            .ok_or(ExactError::ModulusTooLarge(p, k))?;
        Ok(ZModPk { p, k, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// p-adic valuation of a residue; `k` for zero.
    pub fn valuation(&self, a: u64) -> u32 {
        if a == 0 {
            return self.k;
        }
        let mut v = 0;
        let mut x = a;
        while x % self.p == 0 {
            x /= self.p;
            v += 1;
        }
        v
    }

    /// Reduction to the residue field.
    pub fn reduce(&self, a: u64) -> u64 {
        a % self.p
    }
}

impl Ring for ZModPk {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.modulus
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.modulus as i64) as u64
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        mod_floor_u64(n, self.modulus)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.modulus
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.modulus - a) % self.modulus
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.modulus
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        inv_mod(*a, self.modulus)
    }
    fn div_exact(&self, a: &u64, b: &u64) -> Option<u64> {
        // b = p^v u with u a unit; a must be divisible by p^v.
        if *b == 0 {
            return (*a == 0).then_some(0);
        }
        let v = self.valuation(*b);
        let pv = self.p.pow(v);
        if a % pv != 0 {
            return None;
        }
        let u = inv_mod(b / pv, self.modulus)?;
        Some((a / pv) * u % self.modulus)
    }
    fn is_field(&self) -> bool {
        self.k == 1
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}
