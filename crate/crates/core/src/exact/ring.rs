use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rat;

/// A commutative ring given by a descriptor value.
///
/// `inv` must return `Some` exactly on units. Linear algebra over local
/// rings (`Z/p^k`) relies on that to pick pivots.
pub trait Ring: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// True when every nonzero element is a unit.
    fn is_field(&self) -> bool;
    fn render(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.inv(a).is_some()
    }

    /// Preference among unit pivots in elimination: lower is better, ties
    /// go to the topmost row. Rings with bounded elements keep the default.
    fn pivot_cost(&self, _a: &Self::Elem) -> u64 {
        0
    }

    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn sum<'a, I>(&self, it: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        it.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    fn dot(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Self::Elem {
        debug_assert_eq!(a.len(), b.len());
        let mut acc = self.zero();
        for (x, y) in a.iter().zip(b) {
            if !self.is_zero(x) && !self.is_zero(y) {
                acc = self.add(&acc, &self.mul(x, y));
            }
        }
        acc
    }

    fn scale(&self, c: &Self::Elem, v: &[Self::Elem]) -> Vec<Self::Elem> {
        v.iter().map(|x| self.mul(c, x)).collect()
    }
}

/// A finite field whose elements can be enumerated by index `0..size`.
/// Index 0 is always zero and index 1 is always one.
pub trait FiniteField: Ring {
    fn size(&self) -> u64;
    fn characteristic(&self) -> u64;
    fn element(&self, index: u64) -> Self::Elem;
    fn index_of(&self, a: &Self::Elem) -> u64;
}

/// The integers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        if a.abs().is_one() {
            Some(a.clone())
        } else {
            None
        }
    }
    fn div_exact(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = num_integer::Integer::div_rem(a, b);
        r.is_zero().then_some(q)
    }
    fn is_field(&self) -> bool {
        false
    }
    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

/// The rationals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

/// Numerator and denominator as i128 when both fit in i64.
fn small(a: &Rat) -> Option<(i128, i128)> {
    Some((a.numer().to_i64()? as i128, a.denom().to_i64()? as i128))
}

/// `n / d` for `d > 0`, reduced.
fn from_i128(n: i128, d: i128) -> Rat {
    let g = n.gcd(&d);
    Rat::new_raw(BigInt::from(n / g), BigInt::from(d / g))
}

impl Ring for Rationals {
    type Elem = Rat;
    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn from_i64(&self, n: i64) -> Rat {
        Rat::from_integer(BigInt::from(n))
    }
    fn from_int(&self, n: &BigInt) -> Rat {
        Rat::from_integer(n.clone())
    }
    // Operands whose parts fit in i64 are combined in i128, where gcd is
    // cheap; this dominates elimination over Q.
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        if let (Some((p, q)), Some((r, s))) = (small(a), small(b)) {
            if let Some(n) = (p * s).checked_add(r * q) {
                return from_i128(n, q * s);
            }
        }
        a + b
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        if let (Some((p, q)), Some((r, s))) = (small(a), small(b)) {
            if let Some(n) = (p * s).checked_sub(r * q) {
                return from_i128(n, q * s);
            }
        }
        a - b
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        if a.is_zero() || b.is_zero() {
            return Rat::zero();
        }
        if let (Some((p, q)), Some((r, s))) = (small(a), small(b)) {
            return from_i128(p * r, q * s);
        }
        a * b
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &Rat) -> Option<Rat> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_field(&self) -> bool {
        true
    }
    fn render(&self, a: &Rat) -> String {
        a.to_string()
    }
    fn pivot_cost(&self, a: &Rat) -> u64 {
        a.numer().bits() + a.denom().bits()
    }
}
