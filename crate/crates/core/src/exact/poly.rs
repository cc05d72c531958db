use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use super::ring::Ring;

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial: nonzero coefficients keyed by monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly<E> {
    terms: BTreeMap<Monomial, E>,
}

impl<E> MultiPoly<E> {
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &E)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }
}

/// Polynomial ring `R[t_1, ..., t_n]` with named variables.
#[derive(Clone, Debug)]
pub struct PolyRing<R: Ring> {
    base: R,
    names: Arc<Vec<String>>,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R, names: Vec<String>) -> Self {
        PolyRing {
            base,
            names: Arc::new(names),
        }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var(&self, i: usize) -> MultiPoly<R::Elem> {
        self.monomial(Monomial::var(self.nvars(), i), self.base.one())
    }

    pub fn constant(&self, c: R::Elem) -> MultiPoly<R::Elem> {
        self.monomial(Monomial::one(self.nvars()), c)
    }

    pub fn monomial(&self, m: Monomial, c: R::Elem) -> MultiPoly<R::Elem> {
        let mut terms = BTreeMap::new();
        if !self.base.is_zero(&c) {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    /// Constant term if the polynomial is constant.
    pub fn as_constant(&self, a: &MultiPoly<R::Elem>) -> Option<R::Elem> {
        match a.terms.len() {
            0 => Some(self.base.zero()),
            1 => {
                let (m, c) = a.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Evaluate into another ring through a coefficient map.
    pub fn eval<S: Ring>(
        &self,
        a: &MultiPoly<R::Elem>,
        target: &S,
        coeff: impl Fn(&R::Elem) -> S::Elem,
        values: &[S::Elem],
    ) -> S::Elem {
        assert_eq!(values.len(), self.nvars());
        let mut acc = target.zero();
        for (m, c) in &a.terms {
            let mut t = coeff(c);
            for (v, &e) in values.iter().zip(&m.0) {
                if e > 0 {
                    t = target.mul(&t, &target.pow(v, e as u64));
                }
            }
            acc = target.add(&acc, &t);
        }
        acc
    }

    fn add_term(&self, terms: &mut BTreeMap<Monomial, R::Elem>, m: Monomial, c: R::Elem) {
        use std::collections::btree_map::Entry;
        match terms.entry(m) {
            Entry::Vacant(v) => {
                if !self.base.is_zero(&c) {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = self.base.add(o.get(), &c);
                if self.base.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = MultiPoly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_i64(n))
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.constant(self.base.from_int(n))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            self.add_term(&mut terms, m.clone(), c.clone());
        }
        MultiPoly { terms }
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        MultiPoly {
            terms: a
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.base.neg(c)))
                .collect(),
        }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut terms = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                self.add_term(&mut terms, ma.mul(mb), self.base.mul(ca, cb));
            }
        }
        MultiPoly { terms }
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.terms.is_empty()
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let c = self.as_constant(a)?;
        self.base.inv(&c).map(|ci| self.constant(ci))
    }
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        let c = self.as_constant(b)?;
        let ci = self.base.inv(&c)?;
        Some(MultiPoly {
            terms: a
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), self.base.mul(x, &ci)))
                .collect(),
        })
    }
    fn is_field(&self) -> bool {
        false
    }
    fn render(&self, a: &Self::Elem) -> String {
        if a.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in a.terms.iter().rev() {
            let mut factors = Vec::new();
            for (name, &e) in self.names.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            let cs = self.base.render(c);
            if factors.is_empty() {
                parts.push(cs);
            } else if self.base.is_zero(&self.base.sub(c, &self.base.one())) {
                parts.push(factors.join("*"));
            } else {
                parts.push(format!("{cs}*{}", factors.join("*")));
            }
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::PrimeField;

    fn ring() -> PolyRing<PrimeField> {
        PolyRing::new(
            PrimeField::new(5).unwrap(),
            vec!["a".into(), "b".into(), "c".into()],
        )
    }

    #[test]
    fn graded_lex_order() {
        let x = Monomial(vec![1, 0, 0]);
        let y = Monomial(vec![0, 1, 0]);
        let y2 = Monomial(vec![0, 2, 0]);
        assert!(x > y);
        assert!(y2 > x);
    }

    #[test]
    fn cancellation_removes_terms() {
        let r = ring();
        let a = r.var(0);
        let b = r.var(1);
        let s = r.add(&a, &b);
        let d = r.sub(&s, &b);
        assert_eq!(d, a);
        // (a + b)^5 = a^5 + b^5 in characteristic 5
        let f = r.pow(&s, 5);
        assert_eq!(f, r.add(&r.pow(&a, 5), &r.pow(&b, 5)));
        assert!(r.is_zero(&r.sub(&f, &f)));
    }

    #[test]
    fn evaluation_is_a_homomorphism() {
        let r = ring();
        let f5 = PrimeField::new(5).unwrap();
        let p = r.add(&r.mul(&r.var(0), &r.var(2)), &r.from_i64(3));
        let v = r.eval(&p, &f5, |c| *c, &[2, 4, 3]);
        assert_eq!(v, (2 * 3 + 3) % 5);
    }

    #[test]
    fn rendering_is_deterministic() {
        let r = ring();
        let p = r.add(&r.mul(&r.var(0), &r.var(0)), &r.from_i64(-1));
        assert_eq!(r.render(&p), "a^2 + 4");
    }
}
