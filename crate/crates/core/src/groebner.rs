//! Buchberger's algorithm for submodules of graded free modules.
//!
//! Pairs are processed degree by degree; the product criterion is used
//! for ideals only (it fails for modules) and the chain criterion for
//! every pair. Reducers are tried lowest index first.

use std::collections::{BTreeSet, HashSet};

use crate::error::{AlgebraError, Result};
use crate::field::{FieldSpec, Scalar};
use crate::monomial::Monomial;
use crate::order::ModuleOrder;
use crate::poly::Polynomial;
use crate::vector::{Term, Vector};

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub elements: Vec<Vector>,
    pub order: ModuleOrder,
    pub reduced: bool,
}

/// One quotient term `c·m` recorded against basis element `index`.
#[derive(Clone, Debug)]
pub struct QuotientTerm {
    pub index: usize,
    pub mon: Monomial,
    pub coeff: Scalar,
}

/// Full reduction of `f` by `basis` (all under `order`). Quotient terms
/// are appended to `quotients` when supplied, so that
/// `f = Σ c·m·basis[index] + remainder`.
pub fn reduce(
    field: &FieldSpec,
    order: &ModuleOrder,
    f: &Vector,
    basis: &[Vector],
    mut quotients: Option<&mut Vec<QuotientTerm>>,
) -> Vector {
    let mut rest = f.clone();
    let mut remainder: Vec<Term> = Vec::new();
    while let Some(t) = rest.lead().cloned() {
        let divisor = basis.iter().enumerate().find(|(_, g)| {
            g.lead()
                .is_some_and(|l| l.comp == t.comp && l.mon.divides(&t.mon))
        });
        match divisor {
            Some((idx, g)) => {
                let l = g.lead().unwrap();
                let q = l.mon.quotient_of(&t.mon);
                let c = field.div(&t.coeff, &l.coeff);
                rest = rest.add_scaled(field, order, &field.neg(&c), &q, g);
                if let Some(qs) = quotients.as_deref_mut() {
                    qs.push(QuotientTerm {
                        index: idx,
                        mon: q,
                        coeff: c,
                    });
                }
            }
            None => {
                rest.pop_lead();
                remainder.push(t);
            }
        }
    }
    Vector::from_sorted_terms(remainder)
}

/// The S-vector of two monic elements with leads in the same component.
pub fn s_vector(field: &FieldSpec, order: &ModuleOrder, f: &Vector, g: &Vector) -> Vector {
    let lf = f.lead().unwrap();
    let lg = g.lead().unwrap();
    let l = lf.mon.lcm(&lg.mon);
    let a = lf.mon.quotient_of(&l);
    let b = lg.mon.quotient_of(&l);
    let fa = f.mul_term(field, &a, &field.inv(&lf.coeff));
    fa.add_scaled(field, order, &field.neg(&field.inv(&lg.coeff)), &b, g)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Pair {
    degree: i64,
    i: usize,
    j: usize,
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
pub fn buchberger(field: &FieldSpec, order: &ModuleOrder, gens: &[Vector]) -> GroebnerBasis {
    let degrees = order.degrees().to_vec();
    let mut inputs: Vec<(i64, usize)> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(k, g)| (g.degree(&degrees).unwrap() as i64, k))
        .collect();
    inputs.sort();
    let mut inputs = inputs.into_iter().peekable();

    let mut basis: Vec<Vector> = Vec::new();
    let mut pending: BTreeSet<Pair> = BTreeSet::new();
    let mut pending_set: HashSet<(usize, usize)> = HashSet::new();
    let ideal_case = order.rank() == 1;

    loop {
        let next_pair_deg = pending.iter().next().map(|p| p.degree);
        let next_gen_deg = inputs.peek().map(|(d, _)| *d);
        let candidate = match (next_gen_deg, next_pair_deg) {
            (None, None) => break,
            (Some(dg), Some(dp)) if dg <= dp => {
                let (_, k) = inputs.next().unwrap();
                gens[k].resorted(order)
            }
            (Some(_), None) => {
                let (_, k) = inputs.next().unwrap();
                gens[k].resorted(order)
            }
            _ => {
                let p = *pending.iter().next().unwrap();
                pending.remove(&p);
                pending_set.remove(&(p.i, p.j));
                let li = basis[p.i].lead().unwrap();
                let lj = basis[p.j].lead().unwrap();
                let lcm = li.mon.lcm(&lj.mon);
                if ideal_case && li.mon.is_coprime(&lj.mon) {
                    continue;
                }
                let chain = (0..basis.len()).any(|k| {
                    if k == p.i || k == p.j {
                        return false;
                    }
                    let lk = basis[k].lead().unwrap();
                    lk.comp == li.comp
                        && lk.mon.divides(&lcm)
                        && !pending_set.contains(&(p.i.min(k), p.i.max(k)))
                        && !pending_set.contains(&(p.j.min(k), p.j.max(k)))
                });
                if chain {
                    continue;
                }
                s_vector(field, order, &basis[p.i], &basis[p.j])
            }
        };
        let r = reduce(field, order, &candidate, &basis, None);
        if r.is_zero() {
            continue;
        }
        let r = r.make_monic(field);
        let k = basis.len();
        let lr = r.lead().unwrap().clone();
        for (i, g) in basis.iter().enumerate() {
            let lg = g.lead().unwrap();
            if lg.comp == lr.comp {
                let d = lg.mon.lcm(&lr.mon).degree() as i64 + degrees[lr.comp] as i64;
                pending.insert(Pair { degree: d, i, j: k });
                pending_set.insert((i, k));
            }
        }
        basis.push(r);
    }

    interreduce(field, order, basis)
}

/// Removes redundant leads, tail-reduces and normalizes a Gröbner basis.
pub fn interreduce(field: &FieldSpec, order: &ModuleOrder, basis: Vec<Vector>) -> GroebnerBasis {
    let mut keep: Vec<Vector> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lg = g.lead().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            if i == j {
                return false;
            }
            let lh = h.lead().unwrap();
            lh.comp == lg.comp
                && lh.mon.divides(&lg.mon)
                && (lh.mon != lg.mon || j < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    keep.sort_by(|a, b| {
        let la = a.lead().unwrap();
        let lb = b.lead().unwrap();
        order.cmp((&la.mon, la.comp), (&lb.mon, lb.comp))
    });
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let g = &keep[i];
        let lead = Vector::from_sorted_terms(vec![g.lead().unwrap().clone()]);
        let tail = Vector::from_sorted_terms(g.terms()[1..].to_vec());
        let others: Vec<Vector> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| h.clone())
            .collect();
        let tail = reduce(field, order, &tail, &others, None);
        out.push(lead.add(field, order, &tail).make_monic(field));
    }
    GroebnerBasis {
        elements: out,
        order: order.clone(),
        reduced: true,
    }
}

impl GroebnerBasis {
    pub fn normal_form(&self, field: &FieldSpec, f: &Vector) -> Vector {
        reduce(field, &self.order, &f.resorted(&self.order), &self.elements, None)
    }

    pub fn contains(&self, field: &FieldSpec, f: &Vector) -> bool {
        self.normal_form(field, f).is_zero()
    }

    /// Leading terms `(monomial, component)`.
    pub fn leads(&self) -> Vec<(Monomial, usize)> {
        self.elements
            .iter()
            .map(|g| {
                let l = g.lead().unwrap();
                (l.mon.clone(), l.comp)
            })
            .collect()
    }

    /// Checks that every S-pair reduces to zero.
    pub fn certify(&self, field: &FieldSpec) -> bool {
        let n = self.elements.len();
        for i in 0..n {
            for j in i + 1..n {
                let li = self.elements[i].lead().unwrap();
                let lj = self.elements[j].lead().unwrap();
                if li.comp != lj.comp {
                    continue;
                }
                let s = s_vector(field, &self.order, &self.elements[i], &self.elements[j]);
                if !reduce(field, &self.order, &s, &self.elements, None).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Generators `q·e_c` of `I·F` for a quotient ideal `I`.
pub fn quotient_generators(
    field: &FieldSpec,
    order: &ModuleOrder,
    quotient: &[Polynomial],
    rank: usize,
) -> Vec<Vector> {
    let mut out = Vec::new();
    for c in 0..rank {
        for q in quotient {
            let mut comps = vec![Polynomial::zero(); order.rank()];
            comps[c] = q.clone();
            out.push(Vector::from_components(field, order, &comps));
        }
    }
    out
}

/// Checks that every generator is homogeneous for the given degrees.
pub fn check_homogeneous(gens: &[Vector], degrees: &[i32]) -> Result<()> {
    for g in gens {
        if let Some(t) = g.terms().iter().find(|t| t.comp >= degrees.len()) {
            return Err(AlgebraError::RankMismatch {
                expected: degrees.len(),
                found: t.comp + 1,
            });
        }
        if !g.is_homogeneous(degrees) {
            return Err(AlgebraError::Inhomogeneous(format!("{g:?}")));
        }
    }
    Ok(())
}

/// Gröbner basis of the submodule of `⊕ S(-degrees[i])` generated by
/// `gens` plus `quotient·F` (computation over `S/quotient`).
pub fn groebner_basis(
    field: &FieldSpec,
    degrees: &[i32],
    gens: &[Vector],
    quotient: &[Polynomial],
) -> Result<GroebnerBasis> {
    check_homogeneous(gens, degrees)?;
    let order = ModuleOrder::top(degrees.to_vec());
    let mut all: Vec<Vector> = gens.iter().map(|g| g.resorted(&order)).collect();
    all.extend(quotient_generators(field, &order, quotient, degrees.len()));
    Ok(buchberger(field, &order, &all))
}

/// Kernel generators of the map `⊕ S(-deg g_k) → F`, `e_k ↦ g_k`, over
/// `S/quotient`. Returns syzygy vectors (in the source, TOP order) and
/// the source degrees.
pub fn syzygies(
    field: &FieldSpec,
    nvars: usize,
    target_degrees: &[i32],
    columns: &[Vector],
    source_degrees: &[i32],
    quotient: &[Polynomial],
) -> Result<Vec<Vector>> {
    check_homogeneous(columns, target_degrees)?;
    let m = target_degrees.len();
    let r = columns.len();
    let mut degrees = target_degrees.to_vec();
    degrees.extend_from_slice(source_degrees);
    let order = ModuleOrder::elimination(degrees, m);
    let mut gens = Vec::with_capacity(r);
    for (k, g) in columns.iter().enumerate() {
        let v = g
            .resorted(&order)
            .add(field, &order, &Vector::basis(field, nvars, m + k));
        gens.push(v);
    }
    gens.extend(quotient_generators(field, &order, quotient, m));
    let gb = buchberger(field, &order, &gens);
    let source_order = ModuleOrder::top(source_degrees.to_vec());
    let quotient_gb = if quotient.is_empty() {
        None
    } else {
        Some(buchberger(
            field,
            &source_order,
            &quotient_generators(field, &source_order, quotient, r),
        ))
    };
    let mut out = Vec::new();
    for g in gb.elements {
        if g.lead().unwrap().comp >= m {
            let mut s = g.project(&source_order, m..m + r);
            if let Some(q) = &quotient_gb {
                s = q.normal_form(field, &s);
            }
            if !s.is_zero() {
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// Tests `f ∈ ⟨gens⟩ (+ quotient·F)`; on success returns coefficients
/// `c` with `f = Σ c_k gens_k` modulo the quotient.
pub fn membership(
    field: &FieldSpec,
    nvars: usize,
    degrees: &[i32],
    f: &Vector,
    gens: &[Vector],
    quotient: &[Polynomial],
) -> Result<Option<Vec<Polynomial>>> {
    check_homogeneous(gens, degrees)?;
    check_homogeneous(std::slice::from_ref(f), degrees)?;
    let m = degrees.len();
    let r = gens.len();
    let mut all_degrees = degrees.to_vec();
    for g in gens {
        all_degrees.push(g.degree(degrees).unwrap_or(0));
    }
    let order = ModuleOrder::elimination(all_degrees, m);
    let mut ext = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        ext.push(
            g.resorted(&order)
                .add(field, &order, &Vector::basis(field, nvars, m + k)),
        );
    }
    ext.extend(quotient_generators(field, &order, quotient, m));
    let gb = buchberger(field, &order, &ext);
    let nf = reduce(field, &order, &f.resorted(&order), &gb.elements, None);
    if nf.terms().iter().any(|t| t.comp < m) {
        return Ok(None);
    }
    let cert = nf.project(&order, m..m + r).scale(field, &field.from_i64(-1));
    Ok(Some(cert.components(field, r)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fld() -> FieldSpec {
        FieldSpec::Prime(32003)
    }

    fn ideal_vec(p: &Polynomial) -> Vector {
        Vector::from_components(&fld(), &ModuleOrder::top(vec![0]), std::slice::from_ref(p))
    }

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(&fld(), n, i)
    }

    #[test]
    fn single_generator_is_a_basis() {
        let f = fld();
        let xy = x(2, 0).mul(&f, &x(2, 1));
        let gb = groebner_basis(&f, &[0], &[ideal_vec(&xy)], &[]).unwrap();
        assert_eq!(gb.elements, vec![ideal_vec(&xy)]);
    }

    #[test]
    fn one_buchberger_step() {
        let f = fld();
        let g1 = x(2, 0).mul(&f, &x(2, 0)).add(&f, &x(2, 1).mul(&f, &x(2, 1)));
        let g2 = x(2, 0).mul(&f, &x(2, 1));
        let gb = groebner_basis(&f, &[0], &[ideal_vec(&g1), ideal_vec(&g2)], &[]).unwrap();
        let y3 = x(2, 1).pow(&f, 3, 2);
        let mut got: Vec<Vector> = gb.elements.clone();
        got.sort_by_key(|v| v.len());
        assert_eq!(gb.elements.len(), 3);
        assert!(gb.elements.contains(&ideal_vec(&y3)));
        assert!(gb.elements.contains(&ideal_vec(&g1)));
        assert!(gb.elements.contains(&ideal_vec(&g2)));
        assert!(gb.certify(&f));
    }

    #[test]
    fn inhomogeneous_rejected() {
        let f = fld();
        let g = x(2, 0).add(&f, &x(2, 0).mul(&f, &x(2, 0)));
        assert!(matches!(
            groebner_basis(&f, &[0], &[ideal_vec(&g)], &[]),
            Err(AlgebraError::Inhomogeneous(_))
        ));
    }

    #[test]
    fn syzygy_of_xz_yz() {
        let f = fld();
        let xz = x(3, 0).mul(&f, &x(3, 2));
        let yz = x(3, 1).mul(&f, &x(3, 2));
        let syz = syzygies(&f, 3, &[0], &[ideal_vec(&xz), ideal_vec(&yz)], &[2, 2], &[]).unwrap();
        assert_eq!(syz.len(), 1);
        let comps = syz[0].components(&f, 2);
        // proportional to (y, -x)
        let lead = comps[0].lead().unwrap().1.clone();
        let norm: Vec<Polynomial> = comps.iter().map(|p| p.scale(&f, &f.inv(&lead))).collect();
        assert_eq!(norm, vec![x(3, 1), x(3, 0).neg(&f)]);
    }

    #[test]
    fn membership_certificate() {
        let f = fld();
        let g1 = x(2, 0).mul(&f, &x(2, 0)).add(&f, &x(2, 1).mul(&f, &x(2, 1)));
        let g2 = x(2, 0).mul(&f, &x(2, 1));
        let y3 = x(2, 1).pow(&f, 3, 2);
        let cert = membership(&f, 2, &[0], &ideal_vec(&y3), &[ideal_vec(&g1), ideal_vec(&g2)], &[])
            .unwrap()
            .unwrap();
        let recombined = cert[0].mul(&f, &g1).add(&f, &cert[1].mul(&f, &g2));
        assert_eq!(recombined, y3);
        assert_eq!(cert, vec![x(2, 1), x(2, 0).neg(&f)]);
        let z = x(3, 2);
        let xy = x(3, 0).mul(&f, &x(3, 1));
        assert!(membership(&f, 3, &[0], &ideal_vec(&z), &[ideal_vec(&xy)], &[]).unwrap().is_none());
        let zero = membership(&f, 3, &[0], &Vector::zero(), &[ideal_vec(&xy)], &[]).unwrap().unwrap();
        assert!(zero.iter().all(|p| p.is_zero()));
    }
}
