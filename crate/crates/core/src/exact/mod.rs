//! Exact arithmetic substrate.
//!
//! Every engine in the crate computes over one of the rings defined here:
//! big integers and rationals, prime fields, Galois fields, truncated
//! p-adic rings `Z/p^k`, sparse multivariate polynomials and quadratic
//! extensions of them. Rings are *descriptors*: a ring value carries its
//! parameters (the prime, the modulus tables, ...) and elements are plain
//! data manipulated through the descriptor.

mod fp;
mod gf;
mod intmat;
mod matrix;
mod poly;
mod quadext;
mod ring;

pub use fp::{PrimeField, ZModPk};
pub use gf::{GaloisField, GfEmbedding};
pub use intmat::{
    det_small, hnf, integer_coordinates, integer_kernel, kernel_over, rank_over, snf, FieldDesc,
    IntMatrix, KernelBasis, Snf,
};
pub use matrix::{det_leibniz, kernel, rank, rref, solve_right_inverse, Matrix, Rref};
pub use poly::{Monomial, MultiPoly, PolyRing};
pub use quadext::QuadExt;
pub use ring::{FiniteField, Integers, Rationals, Ring};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision integer.
pub type Int = BigInt;
/// Normalized fraction of [`Int`]s.
pub type Rat = num_rational::BigRational;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0}^{1} does not fit the 31-bit residue representation")]
    ModulusTooLarge(u64, u32),
    #[error("scalar {0} is not invertible in the coefficient ring")]
    NonInvertibleScalar(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Deterministic primality test for 64-bit inputs by trial division.
/// Inputs in this crate are small (field characteristics, determinant
/// factors), so nothing cleverer is warranted.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorisation of a nonzero integer, primes ascending with
/// multiplicity collapsed.
pub fn prime_divisors(n: &Int) -> Vec<Int> {
    let mut m = n.abs();
    let mut out = Vec::new();
    let mut d = Int::from(2);
    while &d * &d <= m {
        if (&m % &d).is_zero() {
            out.push(d.clone());
            while (&m % &d).is_zero() {
                m /= &d;
            }
        }
        d += 1;
    }
    if m > Int::one() {
        out.push(m);
    }
    out
}

/// Binomial coefficient `C(n, k)` read as the polynomial
/// `n (n-1) ... (n-k+1) / k!` in `n`, so negative `n` is allowed.
pub fn binomial(n: &Int, k: u32) -> Int {
    let mut num = Int::one();
    let mut den = Int::one();
    for i in 0..k {
        num *= n - Int::from(i);
        den *= Int::from(i + 1);
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    q
}

/// Reduce an integer into `[0, m)`.
pub fn mod_floor_u64(n: &Int, m: u64) -> u64 {
    let r = n.mod_floor(&Int::from(m));
    u64::try_from(r).expect("residue fits")
}

/// Inverse of `a` modulo `m` when `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd(a as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_of_small_numbers() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn binomial_extends_to_negative_arguments() {
        assert_eq!(binomial(&Int::from(10), 10), Int::from(1));
        assert_eq!(binomial(&Int::from(12), 10), Int::from(66));
        assert_eq!(binomial(&Int::from(5), 10), Int::from(0));
        // C(-1, k) = (-1)^k
        assert_eq!(binomial(&Int::from(-1), 10), Int::from(1));
        assert_eq!(binomial(&Int::from(-1), 3), Int::from(-1));
    }

    #[test]
    fn divisors_of_a_determinant() {
        let ds = prime_divisors(&Int::from(-350));
        assert_eq!(ds, vec![Int::from(2), Int::from(5), Int::from(7)]);
        assert!(prime_divisors(&Int::from(1)).is_empty());
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(inv_mod(2, 5), Some(3));
        assert_eq!(inv_mod(5, 25), None);
        assert_eq!(inv_mod(7, 625).map(|x| x * 7 % 625), Some(1));
    }
}
