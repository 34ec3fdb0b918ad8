//! Elements of graded free modules `⊕ S(-d_i)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::field::{FieldSpec, Scalar};
use crate::monomial::Monomial;
use crate::order::ModuleOrder;
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub mon: Monomial,
    pub comp: usize,
    pub coeff: Scalar,
}

/// A free-module element. Terms are sorted strictly descending with
/// respect to the order they were built with; every operation that
/// takes an order expects the same one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    terms: Vec<Term>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn basis(field: &FieldSpec, nvars: usize, comp: usize) -> Self {
        Vector {
            terms: vec![Term {
                mon: Monomial::one(nvars),
                comp,
                coeff: field.one(),
            }],
        }
    }

    pub fn from_terms(field: &FieldSpec, order: &ModuleOrder, terms: Vec<Term>) -> Self {
        let mut acc: BTreeMap<(usize, Monomial), Scalar> = BTreeMap::new();
        for t in terms {
            match acc.get_mut(&(t.comp, t.mon.clone())) {
                Some(v) => *v = field.add(v, &t.coeff),
                None => {
                    acc.insert((t.comp, t.mon), t.coeff);
                }
            }
        }
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((comp, mon), coeff)| Term { mon, comp, coeff })
            .collect();
        terms.sort_by(|a, b| order.cmp((&b.mon, b.comp), (&a.mon, a.comp)));
        Vector { terms }
    }

    /// Builds `Σ p_i e_i` from a component list.
    pub fn from_components(field: &FieldSpec, order: &ModuleOrder, comps: &[Polynomial]) -> Self {
        let terms = comps
            .iter()
            .enumerate()
            .flat_map(|(i, p)| {
                p.terms().iter().map(move |(m, c)| Term {
                    mon: m.clone(),
                    comp: i,
                    coeff: c.clone(),
                })
            })
            .collect();
        Self::from_terms(field, order, terms)
    }

    pub fn components(&self, field: &FieldSpec, rank: usize) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            buckets[t.comp].push((t.mon.clone(), t.coeff.clone()));
        }
        buckets.into_iter().map(|b| Polynomial::from_terms(field, b)).collect()
    }

    pub fn component(&self, field: &FieldSpec, comp: usize) -> Polynomial {
        Polynomial::from_terms(
            field,
            self.terms
                .iter()
                .filter(|t| t.comp == comp)
                .map(|t| (t.mon.clone(), t.coeff.clone()))
                .collect(),
        )
    }

    /// Wraps terms that are already sorted for the intended order.
    pub(crate) fn from_sorted_terms(terms: Vec<Term>) -> Self {
        Vector { terms }
    }

    pub(crate) fn pop_lead(&mut self) -> Option<Term> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree of the lead term (`deg m + d_comp`).
    pub fn degree(&self, degrees: &[i32]) -> Option<i32> {
        self.lead().map(|t| t.mon.degree() as i32 + degrees[t.comp])
    }

    pub fn is_homogeneous(&self, degrees: &[i32]) -> bool {
        match self.degree(degrees) {
            None => true,
            Some(d) => self
                .terms
                .iter()
                .all(|t| t.mon.degree() as i32 + degrees[t.comp] == d),
        }
    }

    /// Re-sort under another order (same underlying element).
    pub fn resorted(&self, order: &ModuleOrder) -> Vector {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp((&b.mon, b.comp), (&a.mon, a.comp)));
        Vector { terms }
    }

    /// `self + c·m·other`.
    pub fn add_scaled(
        &self,
        field: &FieldSpec,
        order: &ModuleOrder,
        c: &Scalar,
        m: &Monomial,
        other: &Vector,
    ) -> Vector {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|t| Term {
                mon: t.mon.mul(m),
                comp: t.comp,
                coeff: field.mul(&t.coeff, c),
            })
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match order.cmp((&x.mon, x.comp), (&y.mon, y.comp)) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let x = a.next().unwrap();
                        let y = b.next().unwrap();
                        let s = field.add(&x.coeff, &y.coeff);
                        if !s.is_zero() {
                            out.push(Term {
                                mon: x.mon.clone(),
                                comp: x.comp,
                                coeff: s,
                            });
                        }
                    }
                },
            }
        }
        Vector { terms: out }
    }

    pub fn add(&self, field: &FieldSpec, order: &ModuleOrder, other: &Vector) -> Vector {
        let n = self.nvars().or(other.nvars()).unwrap_or(0);
        self.add_scaled(field, order, &field.one(), &Monomial::one(n), other)
    }

    pub fn sub(&self, field: &FieldSpec, order: &ModuleOrder, other: &Vector) -> Vector {
        let n = self.nvars().or(other.nvars()).unwrap_or(0);
        self.add_scaled(field, order, &field.from_i64(-1), &Monomial::one(n), other)
    }

    pub fn scale(&self, field: &FieldSpec, c: &Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mon: t.mon.clone(),
                    comp: t.comp,
                    coeff: field.mul(c, &t.coeff),
                })
                .collect(),
        }
    }

    pub fn mul_term(&self, field: &FieldSpec, m: &Monomial, c: &Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mon: t.mon.mul(m),
                    comp: t.comp,
                    coeff: field.mul(c, &t.coeff),
                })
                .collect(),
        }
    }

    pub fn mul_poly(&self, field: &FieldSpec, order: &ModuleOrder, p: &Polynomial) -> Vector {
        let mut acc = Vector::zero();
        for (m, c) in p.terms() {
            acc = acc.add_scaled(field, order, c, m, self);
        }
        acc
    }

    pub fn make_monic(&self, field: &FieldSpec) -> Vector {
        match self.lead() {
            None => Vector::zero(),
            Some(t) => self.scale(field, &field.inv(&t.coeff)),
        }
    }

    pub fn nvars(&self) -> Option<usize> {
        self.terms.first().map(|t| t.mon.nvars())
    }

    /// Keeps only components in `range`, renumbering them from zero.
    pub fn project(&self, order: &ModuleOrder, range: std::ops::Range<usize>) -> Vector {
        let terms = self
            .terms
            .iter()
            .filter(|t| range.contains(&t.comp))
            .map(|t| Term {
                mon: t.mon.clone(),
                comp: t.comp - range.start,
                coeff: t.coeff.clone(),
            })
            .collect::<Vec<_>>();
        let mut v = Vector { terms };
        v.terms.sort_by(|a, b| order.cmp((&b.mon, b.comp), (&a.mon, a.comp)));
        v
    }

    /// Shifts every component index by `offset`.
    pub fn offset_components(&self, offset: usize) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mon: t.mon.clone(),
                    comp: t.comp + offset,
                    coeff: t.coeff.clone(),
                })
                .collect(),
        }
    }

    /// Applies `comp -> map[comp]` and re-sorts.
    pub fn remap_components(&self, field: &FieldSpec, order: &ModuleOrder, map: &[usize]) -> Vector {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                mon: t.mon.clone(),
                comp: map[t.comp],
                coeff: t.coeff.clone(),
            })
            .collect();
        Vector::from_terms(field, order, terms)
    }
}
