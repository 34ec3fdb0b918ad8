//! Hom and Ext presentations, depth, projective dimension, Bass numbers,
//! canonical modules and associated primes of monomial quotients.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::groebner;
use crate::koszul;
use crate::module::PresentedModule;
use crate::monomial::Monomial;
use crate::order::ModuleOrder;
use crate::poly::Polynomial;
use crate::resolution::{self, FreeResolution};
use crate::ring::Ring;
use crate::vector::Vector;

/// Generators of `Hom(F_i, N)` are pairs `(k, c)`: basis vector `k` of
/// `F_i` sent to generator `c` of `N`.
struct HomSpace<'a> {
    res: &'a FreeResolution,
    n: &'a PresentedModule,
}

impl HomSpace<'_> {
    fn rank(&self, i: usize) -> usize {
        self.res.rank(i) * self.n.rank()
    }

    fn degrees(&self, i: usize) -> Vec<i32> {
        let mut out = Vec::with_capacity(self.rank(i));
        for a in self.res.degrees.get(i).map(|v| v.as_slice()).unwrap_or(&[]) {
            for g in self.n.degrees() {
                out.push(g - a);
            }
        }
        out
    }

    fn order(&self, i: usize) -> ModuleOrder {
        ModuleOrder::top(self.degrees(i))
    }

    /// Image of generator `(l, c)` of `Hom(F_{i-1}, N)` under `- ∘ d_i`.
    fn dual_map(&self, i: usize) -> Vec<Vector> {
        let field = self.res.ring.field();
        let g = self.n.rank();
        let order = self.order(i);
        let d = &self.res.maps[i - 1];
        let mut out = Vec::new();
        for l in 0..self.res.rank(i - 1) {
            for c in 0..g {
                let mut comps = vec![Polynomial::zero(); self.rank(i)];
                for (k, col) in d.iter().enumerate() {
                    comps[k * g + c] = col[l].clone();
                }
                out.push(Vector::from_components(field, &order, &comps));
            }
        }
        out
    }

    /// Relations of `N` placed in each `F_i^*` slot.
    fn relations(&self, i: usize) -> Vec<Vector> {
        let field = self.res.ring.field();
        let g = self.n.rank();
        let order = self.order(i);
        let mut out = Vec::new();
        for k in 0..self.res.rank(i) {
            for rel in self.n.relations() {
                let mut comps = vec![Polynomial::zero(); self.rank(i)];
                for (c, p) in rel.iter().enumerate() {
                    comps[k * g + c] = p.clone();
                }
                out.push(Vector::from_components(field, &order, &comps));
            }
        }
        out
    }
}

fn vector_degrees(vs: &[Vector], degrees: &[i32]) -> Vec<i32> {
    vs.iter().map(|v| v.degree(degrees).unwrap_or(0)).collect()
}

/// The subquotient `(Z + B)/B` of the free module with the given degrees,
/// as a presented module over `ring`.
pub fn subquotient(ring: &Ring, degrees: &[i32], z: &[Vector], b: &[Vector]) -> Result<PresentedModule> {
    let field = *ring.field();
    let order = ModuleOrder::top(degrees.to_vec());
    let z: Vec<Vector> = z.iter().filter(|v| !v.is_zero()).map(|v| v.resorted(&order)).collect();
    let b: Vec<Vector> = b.iter().filter(|v| !v.is_zero()).map(|v| v.resorted(&order)).collect();
    let z = resolution::minimal_generators(&field, degrees, &z, ring.quotient())?;
    let zdeg = vector_degrees(&z, degrees);
    if z.is_empty() {
        return Ok(PresentedModule::free(ring.clone(), Vec::new()));
    }
    let mut cols = z.clone();
    cols.extend(b.iter().cloned());
    let mut src = zdeg.clone();
    src.extend(vector_degrees(&b, degrees));
    let syz = groebner::syzygies(&field, ring.nvars(), degrees, &cols, &src, ring.quotient())?;
    let zorder = ModuleOrder::top(src.clone());
    let relations: Vec<Vec<Polynomial>> = syz
        .iter()
        .map(|s| s.resorted(&zorder).project(&ModuleOrder::top(zdeg.clone()), 0..z.len()))
        .filter(|s| !s.is_zero())
        .map(|s| s.components(&field, z.len()))
        .collect();
    let m = PresentedModule::new(ring.clone(), zdeg, relations)?;
    resolution::minimal_presentation(&m)
}

fn check_same_ring(m: &PresentedModule, n: &PresentedModule) -> Result<()> {
    if m.ring().vars() != n.ring().vars()
        || m.ring().field() != n.ring().field()
        || m.ring().quotient() != n.ring().quotient()
    {
        return Err(AlgebraError::ContextMismatch);
    }
    Ok(())
}

/// `Ext^i(M, N)` from a given resolution of `M` (needs `F_0..F_{i+1}`
/// unless the resolution ends before `i + 1`).
pub fn ext_from_resolution(res: &FreeResolution, n: &PresentedModule, i: usize) -> Result<PresentedModule> {
    if res.truncated && i + 1 > res.length() {
        return Err(AlgebraError::Truncated(res.length(), i));
    }
    let ring = &res.ring;
    let space = HomSpace { res, n };
    let degrees = space.degrees(i);
    if degrees.is_empty() {
        return Ok(PresentedModule::free(ring.clone(), Vec::new()));
    }
    let field = *ring.field();
    let order = space.order(i);
    // cycles: kernel of Hom(F_i, N) → Hom(F_{i+1}, N)
    let z: Vec<Vector> = if i < res.length() && res.rank(i + 1) > 0 {
        let next_deg = space.degrees(i + 1);
        let mut cols = space.dual_map(i + 1);
        let mut src = degrees.clone();
        let rels = space.relations(i + 1);
        src.extend(vector_degrees(&rels, &next_deg));
        cols.extend(rels);
        let syz = groebner::syzygies(&field, ring.nvars(), &next_deg, &cols, &src, ring.quotient())?;
        let src_order = ModuleOrder::top(src);
        syz.iter()
            .map(|s| s.resorted(&src_order).project(&order, 0..degrees.len()))
            .collect()
    } else {
        (0..degrees.len())
            .map(|k| Vector::basis(&field, ring.nvars(), k))
            .collect()
    };
    let mut b = space.relations(i);
    if i > 0 {
        b.extend(space.dual_map(i));
    }
    subquotient(ring, &degrees, &z, &b)
}

/// `Ext^i(M, N)` over the common ring of `M` and `N`.
pub fn ext_presentation(m: &PresentedModule, n: &PresentedModule, i: usize) -> Result<PresentedModule> {
    check_same_ring(m, n)?;
    let res = resolution::minimal_resolution(m, i + 1)?;
    ext_from_resolution(&res, n, i)
}

/// `Hom(M, N)` as the kernel of `Hom(F_0, N) → Hom(F_1, N)`.
pub fn hom_presentation(m: &PresentedModule, n: &PresentedModule) -> Result<PresentedModule> {
    check_same_ring(m, n)?;
    let res = resolution::minimal_resolution(m, 1)?;
    let res = FreeResolution {
        truncated: false,
        ..res
    };
    ext_from_resolution(&res, n, 0)
}

/// `S(-n)` over the ambient ring of `ring`.
pub fn dualizing_free(ring: &Ring) -> PresentedModule {
    PresentedModule::free(ring.ambient(), vec![ring.nvars() as i32])
}

/// `Ext^i_S(M, S(-n))` for `M` regarded over `S`.
pub fn ext_dual(m: &PresentedModule, i: usize) -> Result<PresentedModule> {
    let amb = m.over_ambient();
    ext_presentation(&amb, &dualizing_free(m.ring()), i)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProjDim {
    Exact(usize),
    AtLeast(usize),
}

impl ProjDim {
    pub fn is_finite(&self) -> bool {
        matches!(self, ProjDim::Exact(_))
    }

    pub fn value(&self) -> usize {
        match self {
            ProjDim::Exact(v) | ProjDim::AtLeast(v) => *v,
        }
    }
}

impl std::fmt::Display for ProjDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProjDim::Exact(v) => write!(f, "{v}"),
            ProjDim::AtLeast(v) => write!(f, ">= {v}"),
        }
    }
}

/// Projective dimension over the module's own ring.
pub fn projdim(m: &PresentedModule, bound: usize) -> Result<ProjDim> {
    let res = resolution::minimal_resolution(m, bound)?;
    if res.truncated {
        Ok(ProjDim::AtLeast(res.length()))
    } else {
        Ok(ProjDim::Exact(res.length()))
    }
}

/// Projective dimension of `M` regarded over `S`.
pub fn projdim_ambient(m: &PresentedModule) -> Result<usize> {
    let res = resolution::minimal_resolution(&m.over_ambient(), m.nvars() + 1)?;
    Ok(res.length())
}

/// `depth M = n - projdim_S M`.
pub fn depth(m: &PresentedModule) -> Result<usize> {
    if m.is_zero() {
        return Err(AlgebraError::ZeroModule);
    }
    Ok(m.nvars() - projdim_ambient(m)?)
}

/// `n - max{i : Tor_i^S(k, M) ≠ 0}` from Koszul homology on a window.
pub fn depth_koszul(m: &PresentedModule, lo: i32, hi: i32) -> Result<usize> {
    let tors = koszul::koszul_betti(m, lo, hi);
    let top = tors.keys().map(|(i, _)| *i).max().ok_or(AlgebraError::ZeroModule)?;
    Ok(m.nvars() - top)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BassNumbers {
    pub values: Vec<u64>,
    pub truncated: bool,
}

/// `μ_i(N) = dim_k Ext^i(k, N)` over `N`'s ring for `i ≤ i_max`.
pub fn bass_numbers(n: &PresentedModule, i_max: usize) -> Result<BassNumbers> {
    let k = PresentedModule::residue_field(n.ring().clone());
    let res = resolution::minimal_resolution(&k, i_max + 1)?;
    let mut values = Vec::new();
    for i in 0..=i_max {
        let e = ext_from_resolution(&res, n, i)?;
        let len = e
            .hilbert_series()
            .length()
            .expect("Ext against the residue field has finite length");
        values.push(len as u64);
    }
    Ok(BassNumbers {
        values,
        truncated: res.truncated,
    })
}

/// `ω_R = Ext^{n-d}_S(R, S(-n))` as a module over `R`.
pub fn canonical_module(ring: &Ring) -> Result<PresentedModule> {
    let r = PresentedModule::free(ring.clone(), vec![0]);
    let d = r.krull_dim();
    if d < 0 {
        return Err(AlgebraError::ZeroModule);
    }
    let e = ext_dual(&r, ring.nvars() - d as usize)?;
    let over = e.over_ring(ring.clone())?;
    resolution::minimal_presentation(&over)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub dim: i32,
    pub depth: usize,
    pub projdim: ProjDim,
    pub is_cm: bool,
}

/// Dimension, depth (over `S`), projective dimension over the module's
/// ring, and the Cohen–Macaulay flag.
pub fn invariant_record(m: &PresentedModule, bound: usize) -> Result<InvariantRecord> {
    let dim = m.krull_dim();
    let depth = depth(m)?;
    let projdim = projdim(m, bound)?;
    Ok(InvariantRecord {
        dim,
        depth,
        projdim,
        is_cm: dim == depth as i32,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociatedPrime {
    /// Indices of the variables generating the prime.
    pub variables: Vec<usize>,
    /// Exponents of `m` with `(I : m)` equal to the prime.
    pub witness: Vec<u16>,
    pub dim: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeList {
    pub primes: Vec<AssociatedPrime>,
}

fn minimize_monomials(gens: &[Monomial]) -> Vec<Monomial> {
    let mut sorted = gens.to_vec();
    sorted.sort_by_key(|m| m.degree());
    sorted.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in sorted {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// `(I : m)` for a monomial ideal, minimally generated.
pub fn monomial_colon(gens: &[Monomial], m: &Monomial) -> Vec<Monomial> {
    let q: Vec<Monomial> = gens.iter().map(|g| g.gcd(m).quotient_of(g)).collect();
    minimize_monomials(&q)
}

/// Associated primes of `S/I` for a monomial ideal `I`, each with a
/// witness monomial. Witnesses are searched over all standard monomials
/// whose exponents are bounded by the maximal exponents of the
/// generators; colons do not change beyond that box.
pub fn associated_primes_monomial(m: &PresentedModule) -> Result<PrimeList> {
    let gens = m
        .monomial_ideal()
        .ok_or_else(|| AlgebraError::Unsupported("associated primes need a monomial ideal".into()))?;
    let n = m.nvars();
    let gens = minimize_monomials(&gens);
    if gens.iter().any(|g| g.is_one()) {
        return Ok(PrimeList::default());
    }
    let caps: Vec<u16> = (0..n)
        .map(|k| gens.iter().map(|g| g.exponent(k)).max().unwrap_or(0))
        .collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut primes = Vec::new();
    let mut exps = vec![0u16; n];
    loop {
        let mon = Monomial::new(&exps);
        if !gens.iter().any(|g| g.divides(&mon)) {
            let colon = monomial_colon(&gens, &mon);
            if colon.iter().all(|c| c.degree() == 1) {
                let vars: Vec<usize> = colon.iter().map(|c| c.support()[0]).collect();
                let mut vars = vars;
                vars.sort();
                if seen.insert(vars.clone()) {
                    primes.push(AssociatedPrime {
                        dim: n - vars.len(),
                        variables: vars,
                        witness: exps.clone(),
                    });
                }
            }
        }
        // odometer over the box
        let mut k = 0;
        while k < n {
            if exps[k] < caps[k] {
                exps[k] += 1;
                break;
            }
            exps[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    primes.sort_by(|a, b| a.variables.len().cmp(&b.variables.len()).then(a.variables.cmp(&b.variables)));
    Ok(PrimeList { primes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::ring::RingContext;

    fn ring(n: usize) -> Ring {
        RingContext::polynomial_ring(&["x", "y", "z", "w"][..n], FieldSpec::default())
    }

    fn hf(m: &PresentedModule, lo: i32, hi: i32) -> Vec<i64> {
        m.hilbert_function(lo, hi).into_iter().map(|x| x.1).collect()
    }

    #[test]
    fn hom_from_free_is_identity() {
        let r = ring(2);
        let m = PresentedModule::cyclic(r.clone(), &[r.monomial(&[1, 1])]).unwrap();
        let h = hom_presentation(&PresentedModule::free(r, vec![0]), &m).unwrap();
        assert_eq!(hf(&h, -1, 6), hf(&m, -1, 6));
    }

    #[test]
    fn hom_torsion_into_domain_vanishes() {
        let r = ring(2);
        let m = PresentedModule::cyclic(r.clone(), &[r.monomial(&[1, 1])]).unwrap();
        let h = hom_presentation(&m, &PresentedModule::free(r, vec![0])).unwrap();
        assert!(h.is_zero());
        let e = hom_presentation(&m, &m).unwrap();
        assert_eq!(hf(&e, -1, 6), hf(&m, -1, 6));
    }

    #[test]
    fn ext_one_of_xy() {
        let r = ring(2);
        let m = PresentedModule::cyclic(r.clone(), &[r.monomial(&[1, 1])]).unwrap();
        let e = ext_presentation(&m, &PresentedModule::free(r, vec![0]), 1).unwrap();
        assert_eq!(e.rank(), 1);
        assert_eq!(hf(&e, -3, 1), vec![0, 1, 2, 2, 2]);
    }

    #[test]
    fn ext_two_of_residue_field() {
        let r = ring(2);
        let k = PresentedModule::residue_field(r.clone());
        let e = ext_presentation(&k, &PresentedModule::free(r, vec![0]), 2).unwrap();
        assert_eq!(hf(&e, -4, 1), vec![0, 0, 1, 0, 0, 0]);
    }

    #[test]
    fn depth_examples() {
        let r = ring(3);
        let m = PresentedModule::cyclic(r.clone(), &[r.monomial(&[1, 0, 1]), r.monomial(&[0, 1, 1])]).unwrap();
        assert_eq!(depth(&m).unwrap(), 1);
        assert_eq!(depth_koszul(&m, 0, 10).unwrap(), 1);
        assert_eq!(depth(&PresentedModule::free(ring(2), vec![0])).unwrap(), 2);
        let zero = PresentedModule::cyclic(r.clone(), &[r.constant(1)]).unwrap();
        assert_eq!(depth(&zero), Err(AlgebraError::ZeroModule));
    }

    #[test]
    fn projdim_of_residue_field_over_xy() {
        let s = ring(2);
        let r = s.quotient_ring(&[s.monomial(&[1, 1])]).unwrap();
        let k = PresentedModule::residue_field(r);
        assert_eq!(projdim(&k, 5).unwrap(), ProjDim::AtLeast(5));
    }

    #[test]
    fn bass_numbers_of_polynomial_ring() {
        let r = ring(2);
        let b = bass_numbers(&PresentedModule::free(r.clone(), vec![0]), 2).unwrap();
        assert_eq!(b.values, vec![0, 0, 1]);
        let m = PresentedModule::cyclic(r.clone(), &[r.monomial(&[1, 1])]).unwrap();
        assert_eq!(bass_numbers(&m, 1).unwrap().values, vec![0, 1]);
        let k = PresentedModule::residue_field(r);
        assert_eq!(bass_numbers(&k, 0).unwrap().values, vec![1]);
    }

    #[test]
    fn canonical_modules() {
        let s = ring(3);
        let f = s.sub(&s.monomial(&[1, 1, 0]), &s.monomial(&[0, 0, 2]));
        let r = s.quotient_ring(&[f]).unwrap();
        let w = canonical_module(&r).unwrap();
        assert_eq!(w.rank(), 1);
        assert!(w.relations().is_empty());
        assert_eq!(w.degrees(), &[1]);
        // free ring: S(-n)
        let w = canonical_module(&ring(2)).unwrap();
        assert_eq!(w.degrees(), &[2]);
        // k[x,y]/(xy) is a hypersurface, so its canonical module is cyclic
        let s2 = ring(2);
        let r2 = s2.quotient_ring(&[s2.monomial(&[1, 1])]).unwrap();
        assert_eq!(canonical_module(&r2).unwrap().rank(), 1);
    }

    #[test]
    fn associated_primes() {
        let r = ring(3);
        let m = PresentedModule::cyclic(r.clone(), &[r.monomial(&[1, 0, 1]), r.monomial(&[0, 1, 1])]).unwrap();
        let p = associated_primes_monomial(&m).unwrap();
        let vars: Vec<Vec<usize>> = p.primes.iter().map(|q| q.variables.clone()).collect();
        assert_eq!(vars, vec![vec![2], vec![0, 1]]);
        assert_eq!(p.primes[0].dim, 2);
        let r2 = ring(2);
        let m2 = PresentedModule::cyclic(r2.clone(), &[r2.monomial(&[1, 1])]).unwrap();
        let p2 = associated_primes_monomial(&m2).unwrap();
        assert_eq!(p2.primes.len(), 2);
        for q in &p2.primes {
            let w = Monomial::new(&q.witness);
            assert_eq!(monomial_colon(&[Monomial::new(&[1, 1])], &w).len(), 1);
        }
    }
}
