//! Finitely generated graded modules given by presentations.

use std::sync::OnceLock;

use crate::error::{AlgebraError, Result};
use crate::groebner::{self, GroebnerBasis};
use crate::hilbert::HilbertSeries;
use crate::monomial::Monomial;
use crate::order::ModuleOrder;
use crate::poly::Polynomial;
use crate::ring::{Ring, RingContext};
use crate::vector::Vector;

/// `M = coker(F_1 → F_0)` over `ring`, where `F_0 = ⊕ R(-degrees[c])`
/// and each relation is a column of polynomials of length `rank F_0`.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    ring: Ring,
    degrees: Vec<i32>,
    relations: Vec<Vec<Polynomial>>,
    gb: OnceLock<GroebnerBasis>,
}

impl PartialEq for PresentedModule {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.degrees == other.degrees && self.relations == other.relations
    }
}

fn column_degree(col: &[Polynomial], degrees: &[i32]) -> Result<Option<i32>> {
    let mut deg = None;
    for (c, p) in col.iter().enumerate() {
        let (homog, d) = p.is_homogeneous();
        if !homog {
            return Err(AlgebraError::Inhomogeneous(format!("{p:?}")));
        }
        if let Some(d) = d {
            let total = d as i32 + degrees[c];
            match deg {
                None => deg = Some(total),
                Some(e) if e != total => {
                    return Err(AlgebraError::Inhomogeneous(format!(
                        "relation column mixes degrees {e} and {total}"
                    )))
                }
                _ => {}
            }
        }
    }
    Ok(deg)
}

impl PresentedModule {
    pub fn new(ring: Ring, degrees: Vec<i32>, relations: Vec<Vec<Polynomial>>) -> Result<Self> {
        for col in &relations {
            if col.len() != degrees.len() {
                return Err(AlgebraError::RankMismatch {
                    expected: degrees.len(),
                    found: col.len(),
                });
            }
            for p in col {
                if let Some(n) = p.nvars() {
                    if n != ring.nvars() {
                        return Err(AlgebraError::VariableCount {
                            expected: ring.nvars(),
                            found: n,
                        });
                    }
                }
            }
            column_degree(col, &degrees)?;
        }
        let relations = relations
            .into_iter()
            .map(|col| col.iter().map(|p| ring.normal_form(p)).collect::<Vec<_>>())
            .filter(|col: &Vec<Polynomial>| col.iter().any(|p| !p.is_zero()))
            .collect();
        Ok(PresentedModule {
            ring,
            degrees,
            relations,
            gb: OnceLock::new(),
        })
    }

    pub fn free(ring: Ring, degrees: Vec<i32>) -> Self {
        PresentedModule {
            ring,
            degrees,
            relations: Vec::new(),
            gb: OnceLock::new(),
        }
    }

    /// `R/J` for homogeneous generators of `J`.
    pub fn cyclic(ring: Ring, ideal: &[Polynomial]) -> Result<Self> {
        let rels = ideal.iter().map(|f| vec![f.clone()]).collect();
        Self::new(ring, vec![0], rels)
    }

    /// The residue field `k = R/𝔪`.
    pub fn residue_field(ring: Ring) -> Self {
        let vars: Vec<Polynomial> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        Self::cyclic(ring, &vars).expect("variables are homogeneous")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    /// Generator degrees.
    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    /// Twists of `F_0` in the `S(s)` convention.
    pub fn shifts(&self) -> Vec<i32> {
        self.degrees.iter().map(|d| -d).collect()
    }

    pub fn relations(&self) -> &[Vec<Polynomial>] {
        &self.relations
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn relation_degrees(&self) -> Vec<i32> {
        self.relations
            .iter()
            .map(|c| column_degree(c, &self.degrees).ok().flatten().unwrap_or(0))
            .collect()
    }

    pub fn max_generator_degree(&self) -> i32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn max_relation_degree(&self) -> i32 {
        let mut all = self.relation_degrees();
        if self.ring.is_quotient() {
            for q in self.ring.quotient() {
                let qd = q.degree().unwrap_or(0) as i32;
                all.extend(self.degrees.iter().map(|d| d + qd));
            }
        }
        all.into_iter().max().unwrap_or(0)
    }

    pub fn order(&self) -> ModuleOrder {
        ModuleOrder::top(self.degrees.clone())
    }

    pub fn relation_vectors(&self) -> Vec<Vector> {
        let order = self.order();
        self.relations
            .iter()
            .map(|c| Vector::from_components(self.ring.field(), &order, c))
            .collect()
    }

    /// The same module regarded over the ambient polynomial ring: the
    /// quotient ideal times each generator joins the relations.
    pub fn over_ambient(&self) -> PresentedModule {
        let ambient = self.ring.ambient();
        let mut relations = self.relations.clone();
        for c in 0..self.rank() {
            for q in self.ring.quotient() {
                let mut col = vec![Polynomial::zero(); self.rank()];
                col[c] = q.clone();
                relations.push(col);
            }
        }
        PresentedModule {
            ring: ambient,
            degrees: self.degrees.clone(),
            relations,
            gb: OnceLock::new(),
        }
    }

    /// Regards a module over `S` annihilated by the quotient ideal of
    /// `ring` as a module over `ring`.
    pub fn over_ring(&self, ring: Ring) -> Result<PresentedModule> {
        PresentedModule::new(ring, self.degrees.clone(), self.relations.clone())
    }

    /// Gröbner basis of the relation module (including the quotient
    /// ideal) in `F_0` over `S`.
    pub fn groebner(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| {
            groebner::groebner_basis(
                self.ring.field(),
                &self.degrees,
                &self.relation_vectors(),
                self.ring.quotient(),
            )
            .expect("relations validated at construction")
        })
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        HilbertSeries::of_monomial_module(self.nvars(), &self.degrees, &self.groebner().leads())
    }

    pub fn hilbert_function(&self, lo: i32, hi: i32) -> Vec<(i32, i64)> {
        let h = self.hilbert_series();
        (lo..=hi).map(|d| (d, h.value(d))).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.hilbert_series().is_zero()
    }

    /// Krull dimension; `-1` for the zero module.
    pub fn krull_dim(&self) -> i32 {
        self.hilbert_series().dimension()
    }

    /// Standard monomials `(m, c)` of degree `d`: a basis of `M_d`.
    pub fn standard_monomials(&self, d: i32) -> Vec<(Monomial, usize)> {
        let leads = self.groebner().leads();
        let mut out = Vec::new();
        for (c, &dc) in self.degrees.iter().enumerate() {
            if d < dc {
                continue;
            }
            for m in self.ring.monomials_of_degree((d - dc) as u32) {
                if !leads.iter().any(|(l, k)| *k == c && l.divides(&m)) {
                    out.push((m, c));
                }
            }
        }
        out
    }

    /// `M / 𝔞^t M` for homogeneous generators of `𝔞`.
    pub fn truncation(&self, ideal: &[Polynomial], t: u32) -> Result<PresentedModule> {
        let power = ideal_power(self.ring.field(), self.nvars(), ideal, t);
        let mut relations = self.relations.clone();
        for c in 0..self.rank() {
            for f in &power {
                let mut col = vec![Polynomial::zero(); self.rank()];
                col[c] = f.clone();
                relations.push(col);
            }
        }
        PresentedModule::new(self.ring.clone(), self.degrees.clone(), relations)
    }

    /// Whether every relation entry is a monomial and the module is
    /// cyclic with generator in degree 0.
    pub fn monomial_ideal(&self) -> Option<Vec<Monomial>> {
        if self.degrees != [0] {
            return None;
        }
        let mut gens = Vec::new();
        let quotient = self.ring.quotient().iter().map(|q| vec![q.clone()]);
        for col in self.relations.iter().cloned().chain(quotient) {
            let p = &col[0];
            if !p.is_monomial() {
                return None;
            }
            gens.push(p.lead_monomial()?.clone());
        }
        Some(gens)
    }

    pub fn format_relations(&self) -> Vec<Vec<String>> {
        self.relations
            .iter()
            .map(|c| c.iter().map(|p| self.ring.format(p)).collect())
            .collect()
    }
}

/// Generators of `𝔞^t`: all products of `t` generators, deduplicated.
pub fn ideal_power(
    field: &crate::field::FieldSpec,
    nvars: usize,
    ideal: &[Polynomial],
    t: u32,
) -> Vec<Polynomial> {
    let mut cur = vec![Polynomial::constant(field, field.one(), nvars)];
    for _ in 0..t {
        let mut next: Vec<Polynomial> = Vec::new();
        for g in ideal {
            for f in &cur {
                let p = f.mul(field, g).make_monic(field);
                if !p.is_zero() && !next.contains(&p) {
                    next.push(p);
                }
            }
        }
        cur = next;
    }
    cur
}

/// Convenience: the ring itself as a cyclic module.
pub fn ring_module(ring: &Ring) -> PresentedModule {
    PresentedModule::free(ring.clone(), vec![0])
}

/// Builds `S = k[names]` and the cyclic module `S/(gens)` in one go.
pub fn quotient_module(ring: &Ring, gens: &[Polynomial]) -> Result<PresentedModule> {
    PresentedModule::cyclic(ring.clone(), gens)
}

impl RingContext {
    /// Ring dimension `dim R`.
    pub fn krull_dim(self: &Ring) -> i32 {
        ring_module(self).krull_dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn s(n: usize) -> Ring {
        let names = ["x", "y", "z", "w"];
        RingContext::polynomial_ring(&names[..n], FieldSpec::default())
    }

    #[test]
    fn hilbert_of_xy() {
        let r = s(2);
        let m = PresentedModule::cyclic(r.clone(), &[r.mul(&r.var(0), &r.var(1))]).unwrap();
        let hf: Vec<i64> = m.hilbert_function(0, 4).into_iter().map(|x| x.1).collect();
        assert_eq!(hf, vec![1, 2, 2, 2, 2]);
        assert_eq!(m.krull_dim(), 1);
    }

    #[test]
    fn zero_module() {
        let r = s(2);
        let m = PresentedModule::cyclic(r.clone(), &[r.constant(1)]).unwrap();
        assert!(m.is_zero());
        assert_eq!(m.krull_dim(), -1);
        assert!(m.hilbert_function(-2, 5).iter().all(|x| x.1 == 0));
    }

    #[test]
    fn truncation_by_maximal_ideal() {
        let r = s(2);
        let m = PresentedModule::free(r.clone(), vec![0]);
        let vars = [r.var(0), r.var(1)];
        for t in 1..5 {
            let q = m.truncation(&vars, t).unwrap();
            assert_eq!(q.hilbert_series().length(), Some((t * (t + 1) / 2) as i64));
        }
    }

    #[test]
    fn quotient_ring_module_over_ambient() {
        let r = s(3);
        let f = r.sub(&r.mul(&r.var(0), &r.var(1)), &r.mul(&r.var(2), &r.var(2)));
        let q = r.quotient_ring(&[f]).unwrap();
        let m = ring_module(&q);
        assert_eq!(m.krull_dim(), 2);
        assert_eq!(m.over_ambient().relations().len(), 1);
        assert_eq!(q.krull_dim(), 2);
    }

    #[test]
    fn inhomogeneous_relation_rejected() {
        let r = s(2);
        let bad = r.add(&r.var(0), &r.mul(&r.var(0), &r.var(0)));
        assert!(PresentedModule::cyclic(r, &[bad]).is_err());
    }
}
