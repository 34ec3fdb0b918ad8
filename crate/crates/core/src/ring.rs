//! The ambient graded ring `S = k[x_1..x_n]` or a homogeneous quotient `S/I`.

use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::{FieldSpec, Scalar};
use crate::groebner;
use crate::monomial::{Monomial, MonomialOrder};
use crate::order::ModuleOrder;
use crate::poly::Polynomial;
use crate::vector::Vector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingContext {
    vars: Vec<String>,
    field: FieldSpec,
    order: MonomialOrder,
    /// Reduced Gröbner basis of `I`; empty when the ring is `S` itself.
    quotient: Vec<Polynomial>,
}

pub type Ring = Arc<RingContext>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

impl RingContext {
    pub fn polynomial_ring(vars: &[&str], field: FieldSpec) -> Ring {
        Arc::new(RingContext {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            field,
            order: MonomialOrder::Degrevlex,
            quotient: Vec::new(),
        })
    }

    pub fn with_names(vars: Vec<String>, field: FieldSpec) -> Ring {
        Arc::new(RingContext {
            vars,
            field,
            order: MonomialOrder::Degrevlex,
            quotient: Vec::new(),
        })
    }

    /// `S/I` for homogeneous generators of `I` given in this (ambient) ring.
    pub fn quotient_ring(&self, ideal: &[Polynomial]) -> Result<Ring> {
        let gb = ideal_groebner(&self.field, self.nvars(), ideal)?;
        Ok(Arc::new(RingContext {
            vars: self.vars.clone(),
            field: self.field,
            order: self.order,
            quotient: gb,
        }))
    }

    /// The polynomial ring over which this ring is a quotient.
    pub fn ambient(&self) -> Ring {
        Arc::new(RingContext {
            vars: self.vars.clone(),
            field: self.field,
            order: self.order,
            quotient: Vec::new(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn quotient(&self) -> &[Polynomial] {
        &self.quotient
    }

    pub fn is_quotient(&self) -> bool {
        !self.quotient.is_empty()
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(&self.field, self.nvars(), i)
    }

    pub fn constant(&self, c: i64) -> Polynomial {
        Polynomial::constant(&self.field, self.field.from_i64(c), self.nvars())
    }

    pub fn scalar(&self, c: i64) -> Scalar {
        self.field.from_i64(c)
    }

    pub fn monomial(&self, exps: &[u16]) -> Polynomial {
        Polynomial::monomial(&self.field, Monomial::new(exps))
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        if self.quotient.is_empty() {
            f.clone()
        } else {
            f.reduce(&self.field, &self.quotient)
        }
    }

    fn check(&self, f: &Polynomial) -> Result<()> {
        match f.nvars() {
            Some(n) if n != self.nvars() => Err(AlgebraError::VariableCount {
                expected: self.nvars(),
                found: n,
            }),
            _ => Ok(()),
        }
    }

    /// Ring arithmetic; results are normal forms modulo the quotient.
    pub fn poly_arith(&self, op: PolyOp, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        self.check(g)?;
        let r = match op {
            PolyOp::Add => f.add(&self.field, g),
            PolyOp::Sub => f.sub(&self.field, g),
            PolyOp::Mul => f.mul(&self.field, g),
        };
        Ok(self.normal_form(&r))
    }

    pub fn scale(&self, f: &Polynomial, c: &Scalar) -> Result<Polynomial> {
        self.check(f)?;
        if !self.field.contains(c) {
            return Err(AlgebraError::ContextMismatch);
        }
        Ok(self.normal_form(&f.scale(&self.field, c)))
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.normal_form(&f.add(&self.field, g))
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.normal_form(&f.sub(&self.field, g))
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.normal_form(&f.mul(&self.field, g))
    }

    pub fn format(&self, f: &Polynomial) -> String {
        f.format_in(&self.field, &self.vars)
    }

    /// All monomials of degree `d`.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        Monomial::all_of_degree(self.nvars(), d)
    }
}

/// Reduced Gröbner basis of a homogeneous ideal, as polynomials.
pub fn ideal_groebner(field: &FieldSpec, _nvars: usize, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let order = ModuleOrder::top(vec![0]);
    let vecs: Vec<Vector> = gens
        .iter()
        .map(|g| Vector::from_components(field, &order, std::slice::from_ref(g)))
        .collect();
    let gb = groebner::groebner_basis(field, &[0], &vecs, &[])?;
    Ok(gb
        .elements
        .iter()
        .map(|v| v.component(field, 0))
        .collect())
}
