//! Sparse polynomials in canonical form.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::field::{FieldSpec, Scalar};
use crate::monomial::Monomial;

/// Terms sorted strictly descending in degrevlex, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(field: &FieldSpec, c: Scalar, nvars: usize) -> Self {
        Self::term(field, Monomial::one(nvars), c)
    }

    pub fn term(_field: &FieldSpec, m: Monomial, c: Scalar) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    pub fn monomial(field: &FieldSpec, m: Monomial) -> Self {
        Self::term(field, m, field.one())
    }

    pub fn var(field: &FieldSpec, nvars: usize, i: usize) -> Self {
        Self::monomial(field, Monomial::var(nvars, i))
    }

    /// Canonicalizes an arbitrary term list: sorts, merges duplicates,
    /// drops zeros.
    pub fn from_terms(field: &FieldSpec, terms: Vec<(Monomial, Scalar)>) -> Self {
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Maximal total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// `(true, Some(d))` when all terms have degree `d`; the zero
    /// polynomial is homogeneous without a degree.
    pub fn is_homogeneous(&self) -> (bool, Option<u32>) {
        match self.terms.first() {
            None => (true, None),
            Some((m, _)) => {
                let d = m.degree();
                if self.terms.iter().all(|(t, _)| t.degree() == d) {
                    (true, Some(d))
                } else {
                    (false, None)
                }
            }
        }
    }

    /// The homogeneous component of degree zero.
    pub fn constant_term(&self) -> Option<&Scalar> {
        self.terms.last().filter(|(m, _)| m.is_one()).map(|(_, c)| c)
    }

    fn check(&self) {
        debug_assert!(self.terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(self.terms.iter().all(|(_, c)| !c.is_zero()));
    }

    /// `self + c * m * other`.
    pub fn add_scaled(&self, field: &FieldSpec, c: &Scalar, m: &Monomial, other: &Polynomial) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|(mm, cc)| (mm.mul(m), field.mul(cc, c)))
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let x = a.next().unwrap();
                        let y = b.next().unwrap();
                        let s = field.add(&x.1, &y.1);
                        if !s.is_zero() {
                            out.push((x.0.clone(), s));
                        }
                    }
                },
            }
        }
        let p = Polynomial { terms: out };
        p.check();
        p
    }

    pub fn add(&self, field: &FieldSpec, other: &Polynomial) -> Polynomial {
        let n = self.nvars().or(other.nvars()).unwrap_or(0);
        self.add_scaled(field, &field.one(), &Monomial::one(n), other)
    }

    pub fn sub(&self, field: &FieldSpec, other: &Polynomial) -> Polynomial {
        let n = self.nvars().or(other.nvars()).unwrap_or(0);
        self.add_scaled(field, &field.from_i64(-1), &Monomial::one(n), other)
    }

    pub fn neg(&self, field: &FieldSpec) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect(),
        }
    }

    pub fn scale(&self, field: &FieldSpec, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), field.mul(c, d))).collect(),
        }
    }

    pub fn mul_term(&self, field: &FieldSpec, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(t, d)| (t.mul(m), field.mul(c, d)))
                .collect(),
        }
    }

    pub fn mul(&self, field: &FieldSpec, other: &Polynomial) -> Polynomial {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Polynomial::zero();
        for (m, c) in &small.terms {
            acc = acc.add_scaled(field, c, m, large);
        }
        acc
    }

    pub fn pow(&self, field: &FieldSpec, e: u32, nvars: usize) -> Polynomial {
        let mut acc = Polynomial::constant(field, field.one(), nvars);
        for _ in 0..e {
            acc = acc.mul(field, self);
        }
        acc
    }

    /// Full normal form modulo a list of polynomials. At each step the
    /// largest reducible term is reduced by the lowest-index divisor.
    pub fn reduce(&self, field: &FieldSpec, basis: &[Polynomial]) -> Polynomial {
        let mut rest = self.clone();
        let mut out: Vec<(Monomial, Scalar)> = Vec::new();
        while let Some((m, c)) = rest.terms.first().cloned() {
            let divisor = basis
                .iter()
                .find(|g| g.lead_monomial().is_some_and(|l| l.divides(&m)));
            match divisor {
                Some(g) => {
                    let (lm, lc) = g.lead().unwrap();
                    let q = lm.quotient_of(&m);
                    let f = field.neg(&field.div(&c, lc));
                    rest = rest.add_scaled(field, &f, &q, g);
                }
                None => {
                    out.push((m, c));
                    rest.terms.remove(0);
                }
            }
        }
        Polynomial { terms: out }
    }

    pub fn make_monic(&self, field: &FieldSpec) -> Polynomial {
        match self.lead() {
            None => Polynomial::zero(),
            Some((_, c)) => self.scale(field, &field.inv(c)),
        }
    }

    pub fn nvars(&self) -> Option<usize> {
        self.terms.first().map(|(m, _)| m.nvars())
    }

    pub fn format_with(&self, names: &[String]) -> String {
        self.format_signed(names, |c| {
            if c.is_negative() {
                (true, c.to_string()[1..].to_string())
            } else {
                (false, c.to_string())
            }
        })
    }

    /// Like `format_with`, printing residues above `p/2` as negatives.
    pub fn format_in(&self, field: &FieldSpec, names: &[String]) -> String {
        match field {
            FieldSpec::Prime(p) => self.format_signed(names, |c| match c {
                Scalar::Residue(r) if *r > p / 2 => (true, (p - r).to_string()),
                _ => (false, c.to_string()),
            }),
            FieldSpec::Rationals => self.format_with(names),
        }
    }

    fn format_signed(&self, names: &[String], sign: impl Fn(&Scalar) -> (bool, String)) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, abs) = sign(c);
            if k > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            if m.is_one() {
                s.push_str(&abs);
            } else if abs == "1" {
                s.push_str(&m.format_with(names));
            } else {
                s.push_str(&format!("{}*{}", abs, m.format_with(names)));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> FieldSpec {
        FieldSpec::Prime(32003)
    }

    fn x(i: usize) -> Polynomial {
        Polynomial::var(&f(), 3, i)
    }

    #[test]
    fn cancellation() {
        let a = x(0).add(&f(), &x(1));
        let b = x(0).sub(&f(), &x(1));
        assert_eq!(a.add(&f(), &b), x(0).scale(&f(), &f().from_i64(2)));
    }

    #[test]
    fn char_two_square() {
        let f2 = FieldSpec::Prime(2);
        let s = Polynomial::var(&f2, 2, 0).add(&f2, &Polynomial::var(&f2, 2, 1));
        let sq = s.mul(&f2, &s);
        let expect = Polynomial::var(&f2, 2, 0)
            .mul(&f2, &Polynomial::var(&f2, 2, 0))
            .add(&f2, &Polynomial::var(&f2, 2, 1).mul(&f2, &Polynomial::var(&f2, 2, 1)));
        assert_eq!(sq, expect);
    }

    #[test]
    fn homogeneity() {
        let g = x(0).mul(&f(), &x(1)).sub(&f(), &x(2).mul(&f(), &x(2)));
        assert_eq!(g.is_homogeneous(), (true, Some(2)));
        let h = x(0).add(&f(), &x(0).mul(&f(), &x(0)));
        assert_eq!(h.is_homogeneous(), (false, None));
        assert_eq!(Polynomial::zero().is_homogeneous(), (true, None));
    }

    #[test]
    fn division_step() {
        // x^2*y reduced by x^2 - y*z gives y^2*z
        let fld = f();
        let g = x(0).mul(&fld, &x(0)).sub(&fld, &x(1).mul(&fld, &x(2)));
        let p = x(0).mul(&fld, &x(0)).mul(&fld, &x(1));
        let r = p.reduce(&fld, &[g.clone()]);
        assert_eq!(r, x(1).mul(&fld, &x(1)).mul(&fld, &x(2)));
        // quotient re-multiplied: p - y*g == r
        assert_eq!(p.sub(&fld, &x(1).mul(&fld, &g)), r);
    }
}
