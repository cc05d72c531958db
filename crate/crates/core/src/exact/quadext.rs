use num_bigint::BigInt;

use super::ring::Ring;

/// `R[l]/(l^2 + b l + c)` for a monic quadratic over a base ring `R`.
///
/// Elements are pairs `(a0, a1)` meaning `a0 + a1 l`; every product is
/// reduced immediately so the `l`-degree never exceeds one.
#[derive(Clone, Debug)]
pub struct QuadExt<R: Ring> {
    base: R,
    b: R::Elem,
    c: R::Elem,
}

impl<R: Ring> QuadExt<R> {
    pub fn new(base: R, b: R::Elem, c: R::Elem) -> Self {
        QuadExt { base, b, c }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    /// The adjoined root `l`.
    pub fn root(&self) -> (R::Elem, R::Elem) {
        (self.base.zero(), self.base.one())
    }

    pub fn embed(&self, a: R::Elem) -> (R::Elem, R::Elem) {
        (a, self.base.zero())
    }

    /// Value of the defining quadratic at an element (zero at the root).
    pub fn defining_poly_at(&self, x: &(R::Elem, R::Elem)) -> (R::Elem, R::Elem) {
        let x2 = self.mul(x, x);
        let bx = self.mul(&self.embed(self.b.clone()), x);
        self.add(&self.add(&x2, &bx), &self.embed(self.c.clone()))
    }
}

impl<R: Ring> Ring for QuadExt<R> {
    type Elem = (R::Elem, R::Elem);

    fn zero(&self) -> Self::Elem {
        (self.base.zero(), self.base.zero())
    }
    fn one(&self) -> Self::Elem {
        (self.base.one(), self.base.zero())
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.embed(self.base.from_i64(n))
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.embed(self.base.from_int(n))
    }
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        (self.base.add(&x.0, &y.0), self.base.add(&x.1, &y.1))
    }
    fn neg(&self, x: &Self::Elem) -> Self::Elem {
        (self.base.neg(&x.0), self.base.neg(&x.1))
    }
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        // (a + a' l)(d + d' l) = ad + (ad' + a'd) l + a'd' l^2, l^2 = -b l - c
        let r = &self.base;
        let hi = r.mul(&x.1, &y.1);
        let lo = r.sub(&r.mul(&x.0, &y.0), &r.mul(&hi, &self.c));
        let mid = r.add(&r.mul(&x.0, &y.1), &r.mul(&x.1, &y.0));
        (lo, r.sub(&mid, &r.mul(&hi, &self.b)))
    }
    fn is_zero(&self, x: &Self::Elem) -> bool {
        self.base.is_zero(&x.0) && self.base.is_zero(&x.1)
    }
    fn inv(&self, x: &Self::Elem) -> Option<Self::Elem> {
        if self.base.is_zero(&x.1) {
            return self.base.inv(&x.0).map(|i| self.embed(i));
        }
        // norm N = a^2 - a b a' + c a'^2; inverse = (a - b a' - a' l) / N
        let r = &self.base;
        let (a, a1) = (&x.0, &x.1);
        let norm = r.add(
            &r.sub(&r.mul(a, a), &r.mul(&r.mul(a, &self.b), a1)),
            &r.mul(&self.c, &r.mul(a1, a1)),
        );
        let ni = r.inv(&norm)?;
        let conj = (r.sub(a, &r.mul(&self.b, a1)), r.neg(a1));
        Some((r.mul(&conj.0, &ni), r.mul(&conj.1, &ni)))
    }
    fn is_field(&self) -> bool {
        false
    }
    fn render(&self, x: &Self::Elem) -> String {
        let r = &self.base;
        match (r.is_zero(&x.0), r.is_zero(&x.1)) {
            (_, true) => r.render(&x.0),
            (true, false) => format!("({})*l", r.render(&x.1)),
            (false, false) => format!("{} + ({})*l", r.render(&x.0), r.render(&x.1)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{PolyRing, PrimeField};

    #[test]
    fn root_satisfies_its_quadratic() {
        let base = PolyRing::new(PrimeField::new(5).unwrap(), vec!["s".into(), "t".into()]);
        let q = QuadExt::new(base.clone(), base.var(0), base.var(1));
        let l = q.root();
        assert!(q.is_zero(&q.defining_poly_at(&l)));
        let l3 = q.pow(&l, 3);
        // l^3 = (s^2 - t) l + s t
        let st = base.mul(&base.var(0), &base.var(1));
        let s2mt = base.sub(&base.mul(&base.var(0), &base.var(0)), &base.var(1));
        assert_eq!(l3, (st, s2mt));
    }

    #[test]
    fn inverse_in_a_field_extension() {
        // F_7[l]/(l^2 + 1) = F_49
        let f7 = PrimeField::new(7).unwrap();
        let q = QuadExt::new(f7, 0, 1);
        for a in 0..7u64 {
            for b in 0..7u64 {
                if a == 0 && b == 0 {
                    continue;
                }
                let x = (a, b);
                let xi = q.inv(&x).unwrap();
                assert_eq!(q.mul(&x, &xi), q.one());
            }
        }
    }
}
