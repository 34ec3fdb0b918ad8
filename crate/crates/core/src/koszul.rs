//! Degreewise linear-algebra model of a presented module, and Koszul
//! homology `Tor_i^S(k, M)` computed from it.
//!
//! Nothing here goes through Gröbner bases: `M_d` is `F_{0,d}` modulo the
//! span of all monomial multiples of relations, found by row reduction.

use std::collections::{BTreeMap, HashMap};

use crate::field::{FieldSpec, Scalar};
use crate::linalg::{self, Echelon};
use crate::module::PresentedModule;
use crate::monomial::Monomial;
use crate::poly::Polynomial;

struct Piece {
    keys: Vec<(Monomial, usize)>,
    index: HashMap<(Monomial, usize), usize>,
    echelon: Echelon,
    /// Free columns: these keys form a basis of `M_d`.
    basis: Vec<usize>,
}

/// `M_d` for every degree up to some bound, as explicit quotients of
/// `F_{0,d}`. The module is taken over the ambient polynomial ring.
pub struct LinearModel {
    field: FieldSpec,
    nvars: usize,
    degrees: Vec<i32>,
    relations: Vec<(i32, Vec<Polynomial>)>,
    pieces: BTreeMap<i32, Piece>,
}

impl LinearModel {
    pub fn new(m: &PresentedModule) -> Self {
        let amb = m.over_ambient();
        let degrees = amb.degrees().to_vec();
        let rel_degrees = amb.relation_degrees();
        let relations = rel_degrees
            .into_iter()
            .zip(amb.relations().iter().cloned())
            .collect();
        LinearModel {
            field: *m.ring().field(),
            nvars: m.nvars(),
            degrees,
            relations,
            pieces: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    fn keys_of_degree(&self, d: i32) -> Vec<(Monomial, usize)> {
        let mut out = Vec::new();
        for (c, &dc) in self.degrees.iter().enumerate() {
            if d >= dc {
                for m in Monomial::all_of_degree(self.nvars, (d - dc) as u32) {
                    out.push((m, c));
                }
            }
        }
        out
    }

    fn ensure(&mut self, d: i32) {
        if self.pieces.contains_key(&d) {
            return;
        }
        let low = self.degrees.iter().copied().min().unwrap_or(0);
        if d > low && !self.pieces.contains_key(&(d - 1)) {
            self.ensure(d - 1);
        }
        let keys = self.keys_of_degree(d);
        let index: HashMap<(Monomial, usize), usize> =
            keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let f = self.field;
        // x_a times the span in degree d - 1
        if let Some(prev) = self.pieces.get(&(d - 1)) {
            for row in prev.echelon.rows() {
                for a in 0..self.nvars {
                    let mut v = vec![f.zero(); keys.len()];
                    for (k, x) in row.iter().enumerate() {
                        if !x.is_zero() {
                            let (m, c) = &prev.keys[k];
                            let key = (m.mul(&Monomial::var(self.nvars, a)), *c);
                            v[index[&key]] = x.clone();
                        }
                    }
                    rows.push(v);
                }
            }
        }
        for (rd, col) in &self.relations {
            if *rd != d {
                continue;
            }
            let mut v = vec![f.zero(); keys.len()];
            for (c, p) in col.iter().enumerate() {
                for (m, x) in p.terms() {
                    let i = index[&(m.clone(), c)];
                    v[i] = f.add(&v[i], x);
                }
            }
            rows.push(v);
        }
        let echelon = Echelon::new(&f, &rows, keys.len());
        let basis = echelon.free_columns();
        self.pieces.insert(
            d,
            Piece {
                keys,
                index,
                echelon,
                basis,
            },
        );
    }

    /// `dim_k M_d`.
    pub fn dim(&mut self, d: i32) -> usize {
        self.ensure(d);
        self.pieces[&d].basis.len()
    }

    /// Coordinates of `(mon, comp)` in the basis of `M_d`.
    fn coords(&mut self, d: i32, key: &(Monomial, usize)) -> Vec<Scalar> {
        self.ensure(d);
        let p = &self.pieces[&d];
        let mut v = vec![self.field.zero(); p.keys.len()];
        v[p.index[key]] = self.field.one();
        let r = p.echelon.reduce(&v);
        p.basis.iter().map(|&b| r[b].clone()).collect()
    }

    /// Matrix of `m·: M_d → M_{d+e}` (rows indexed by the basis of `M_d`).
    pub fn multiplication(&mut self, mon: &Monomial, d: i32) -> Vec<Vec<Scalar>> {
        self.ensure(d);
        let e = mon.degree() as i32;
        self.ensure(d + e);
        let src: Vec<(Monomial, usize)> = {
            let p = &self.pieces[&d];
            p.basis.iter().map(|&b| p.keys[b].clone()).collect()
        };
        src.iter()
            .map(|(m, c)| self.coords(d + e, &(m.mul(mon), *c)))
            .collect()
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in start..n {
            cur.push(a);
            rec(a + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Rank of the Koszul differential `K_i → K_{i-1}` in internal degree
/// `j`, where `K_i = ⊕_{|A|=i} M(-i)`.
fn koszul_rank(model: &mut LinearModel, i: usize, j: i32) -> usize {
    let n = model.nvars();
    if i == 0 || i > n {
        return 0;
    }
    let d = j - i as i32;
    let src_dim = model.dim(d);
    let dst_dim = model.dim(d + 1);
    if src_dim == 0 || dst_dim == 0 {
        return 0;
    }
    let f = *model.field();
    let tgt = subsets(n, i - 1);
    let tgt_index: HashMap<Vec<usize>, usize> = tgt.iter().cloned().enumerate().map(|(k, s)| (s, k)).collect();
    let mults: Vec<Vec<Vec<Scalar>>> = (0..n)
        .map(|a| model.multiplication(&Monomial::var(n, a), d))
        .collect();
    let mut rows = Vec::new();
    for a_set in subsets(n, i) {
        for u in 0..src_dim {
            let mut row = vec![f.zero(); tgt.len() * dst_dim];
            for (pos, &a) in a_set.iter().enumerate() {
                let mut rest = a_set.clone();
                rest.remove(pos);
                let block = tgt_index[&rest] * dst_dim;
                let sign = pos % 2 == 1;
                for (k, x) in mults[a][u].iter().enumerate() {
                    if !x.is_zero() {
                        row[block + k] = if sign { f.neg(x) } else { x.clone() };
                    }
                }
            }
            rows.push(row);
        }
    }
    linalg::rank(&f, &rows, tgt.len() * dst_dim)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim_k Tor_i^S(k, M)_j` for `j` in `lo..=hi`.
pub fn koszul_tor_with(model: &mut LinearModel, i: usize, lo: i32, hi: i32) -> BTreeMap<i32, u64> {
    let n = model.nvars();
    let mut out = BTreeMap::new();
    for j in lo..=hi {
        let dim_k = binomial(n, i) * model.dim(j - i as i32);
        let h = dim_k - koszul_rank(model, i, j) - koszul_rank(model, i + 1, j);
        out.insert(j, h as u64);
    }
    out
}

/// `dim_k Tor_i^S(k, M)_j` for `j` in `lo..=hi`, over the ambient ring.
pub fn koszul_tor(m: &PresentedModule, i: usize, lo: i32, hi: i32) -> BTreeMap<i32, u64> {
    koszul_tor_with(&mut LinearModel::new(m), i, lo, hi)
}

/// Default oracle window `[0, max generator degree + max relation
/// degree + n + 2]`, widened downward for negative generator degrees.
pub fn default_window(m: &PresentedModule) -> (i32, i32) {
    let lo = m.degrees().iter().copied().min().unwrap_or(0).min(0);
    let hi = m.max_generator_degree() + m.max_relation_degree() + m.nvars() as i32 + 2;
    (lo, hi)
}

/// All Koszul homology dimensions in the window, as `(i, j) -> dim`
/// with zero entries dropped.
pub fn koszul_betti(m: &PresentedModule, lo: i32, hi: i32) -> BTreeMap<(usize, i32), u64> {
    let mut model = LinearModel::new(m);
    let mut out = BTreeMap::new();
    for i in 0..=m.nvars() {
        for (j, v) in koszul_tor_with(&mut model, i, lo, hi) {
            if v != 0 {
                out.insert((i, j), v);
            }
        }
    }
    out
}

/// `dim_k M_d` by linear algebra, for `d` in `lo..=hi`.
pub fn hilbert_function_la(m: &PresentedModule, lo: i32, hi: i32) -> Vec<(i32, i64)> {
    let mut model = LinearModel::new(m);
    (lo..=hi).map(|d| (d, model.dim(d) as i64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Ring, RingContext};

    fn ring(n: usize) -> Ring {
        RingContext::polynomial_ring(&["x", "y", "z", "w"][..n], FieldSpec::default())
    }

    #[test]
    fn free_module_has_no_higher_tor() {
        let r = ring(2);
        let m = PresentedModule::free(r, vec![0, 1]);
        for i in 1..=2 {
            assert!(koszul_tor(&m, i, 0, 6).values().all(|v| *v == 0));
        }
        let t0 = koszul_tor(&m, 0, 0, 3);
        assert_eq!(t0[&0], 1);
        assert_eq!(t0[&1], 1);
    }

    #[test]
    fn xy_tor_one() {
        let r = ring(2);
        let m = PresentedModule::cyclic(r.clone(), &[r.monomial(&[1, 1])]).unwrap();
        let t = koszul_tor(&m, 1, 0, 6);
        assert_eq!(t.iter().filter(|(_, v)| **v != 0).collect::<Vec<_>>(), vec![(&2, &1)]);
    }

    #[test]
    fn residue_field_tor_two() {
        let r = ring(3);
        let k = PresentedModule::residue_field(r);
        let t = koszul_tor(&k, 2, 0, 5);
        assert_eq!(t[&2], 3);
        assert_eq!(t.values().sum::<u64>(), 3);
    }

    #[test]
    fn hilbert_function_matches_series() {
        let r = ring(3);
        let m = PresentedModule::cyclic(
            r.clone(),
            &[r.monomial(&[1, 0, 1]), r.sub(&r.monomial(&[0, 2, 0]), &r.monomial(&[1, 1, 0]))],
        )
        .unwrap();
        assert_eq!(hilbert_function_la(&m, 0, 8), m.hilbert_function(0, 8));
    }
}
