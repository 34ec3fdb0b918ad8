//! Graded free resolutions and Betti tables.
//!
//! Over `S` the resolution is a Schreyer frame: each syzygy module comes
//! with a Gröbner basis for the order induced by the previous step, and
//! elements are sorted by the exponent of the next variable so that the
//! frame stops after at most `n + 1` steps. Over a quotient `R = S/I`
//! each kernel is computed by elimination and trimmed to a minimal
//! generating set degree by degree. Either way the result is made
//! minimal afterwards by Gaussian cancellation of unit entries.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::FieldSpec;
use crate::groebner::{self, QuotientTerm};
use crate::linalg::Echelon;
use crate::module::PresentedModule;
use crate::monomial::Monomial;
use crate::order::ModuleOrder;
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::vector::{Term, Vector};

/// `F_0 ← F_1 ← ... ← F_L`; `maps[i]` is `d_{i+1}` as a list of columns,
/// each column of length `rank F_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeResolution {
    pub ring: Ring,
    pub degrees: Vec<Vec<i32>>,
    pub maps: Vec<Vec<Vec<Polynomial>>>,
    pub minimal: bool,
    pub truncated: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    /// `(i, j) -> β_{i,j}`, nonzero entries only.
    pub entries: BTreeMap<(usize, i32), u64>,
    pub truncated: bool,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: i32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// `β_i = Σ_j β_{i,j}`; indices up to the last nonzero one.
    pub fn totals(&self) -> Vec<u64> {
        let len = self.entries.keys().map(|(i, _)| i + 1).max().unwrap_or(0);
        let mut out = vec![0; len];
        for ((i, _), v) in &self.entries {
            out[*i] += v;
        }
        out
    }

    pub fn total(&self, i: usize) -> u64 {
        self.totals().get(i).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest `i` with `β_i ≠ 0`; `None` for the zero module.
    pub fn length(&self) -> Option<usize> {
        self.entries.keys().map(|(i, _)| *i).max()
    }

    /// `Σ_i (-1)^i Σ_j β_{i,j} t^j`.
    pub fn alternating_numerator(&self) -> BTreeMap<i32, i64> {
        let mut out = BTreeMap::new();
        for ((i, j), v) in &self.entries {
            let s = if i % 2 == 0 { 1 } else { -1 };
            *out.entry(*j).or_insert(0) += s * *v as i64;
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Text diagram: columns `i`, rows `j - i`, dots for zeros, totals
    /// in the last row.
    pub fn render(&self) -> String {
        if self.entries.is_empty() {
            return "0\n".to_string();
        }
        let cols = self.totals().len();
        let rows: Vec<i32> = {
            let lo = self.entries.keys().map(|(i, j)| j - *i as i32).min().unwrap();
            let hi = self.entries.keys().map(|(i, j)| j - *i as i32).max().unwrap();
            (lo..=hi).collect()
        };
        let mut cells: Vec<Vec<String>> = Vec::new();
        let mut header = vec![String::new()];
        header.extend((0..cols).map(|i| i.to_string()));
        cells.push(header);
        for r in &rows {
            let mut line = vec![format!("{r}:")];
            for i in 0..cols {
                let v = self.get(i, r + i as i32);
                line.push(if v == 0 { ".".into() } else { v.to_string() });
            }
            cells.push(line);
        }
        let mut total = vec!["total:".to_string()];
        total.extend(self.totals().iter().map(|v| v.to_string()));
        cells.push(total);
        let width = cells
            .iter()
            .flat_map(|l| l.iter().skip(1))
            .map(|s| s.len())
            .max()
            .unwrap_or(1);
        let label = cells.iter().map(|l| l[0].len()).max().unwrap_or(0);
        let mut out = String::new();
        for l in &cells {
            let _ = write!(out, "{:>label$}", l[0]);
            for c in &l[1..] {
                let _ = write!(out, " {c:>width$}");
            }
            out.push('\n');
        }
        if self.truncated {
            out.push_str("(truncated)\n");
        }
        out
    }
}

fn lead_of(v: &Vector) -> (Monomial, usize) {
    let t = v.lead().unwrap();
    (t.mon.clone(), t.comp)
}

fn sort_for_frame(elems: &mut [Vector], var: usize) {
    let nvars = elems.first().and_then(|v| v.nvars()).unwrap_or(0);
    elems.sort_by(|a, b| {
        let la = a.lead().unwrap();
        let lb = b.lead().unwrap();
        let ea = if var < nvars { la.mon.exponent(var) } else { 0 };
        let eb = if var < nvars { lb.mon.exponent(var) } else { 0 };
        la.comp.cmp(&lb.comp).then(eb.cmp(&ea))
    });
}

/// Minimal S-pair syzygies of a Gröbner basis `g` (sorted for the frame)
/// in the Schreyer order `next`.
fn schreyer_syzygies(field: &FieldSpec, order: &ModuleOrder, next: &ModuleOrder, g: &[Vector]) -> Vec<Vector> {
    let leads: Vec<(Monomial, usize)> = g.iter().map(lead_of).collect();
    let mut out = Vec::new();
    for i in 0..g.len() {
        // candidate leads m_ji e_i for j > i, keep the divisibility-minimal ones
        let mut cands: Vec<(Monomial, usize)> = Vec::new();
        for j in i + 1..g.len() {
            if leads[j].1 != leads[i].1 {
                continue;
            }
            let m = leads[i].0.quotient_of(&leads[i].0.lcm(&leads[j].0));
            cands.push((m, j));
        }
        cands.sort_by_key(|(m, _)| m.degree());
        let mut kept: Vec<(Monomial, usize)> = Vec::new();
        for (m, j) in cands {
            if !kept.iter().any(|(k, _)| k.divides(&m)) {
                kept.push((m, j));
            }
        }
        for (mi, j) in kept {
            let li = g[i].lead().unwrap();
            let lj = g[j].lead().unwrap();
            let mj = lj.mon.quotient_of(&li.mon.mul(&mi));
            let ci = field.inv(&li.coeff);
            let cj = field.neg(&field.inv(&lj.coeff));
            let s = g[i]
                .mul_term(field, &mi, &ci)
                .add_scaled(field, order, &cj, &mj, &g[j]);
            let mut qs: Vec<QuotientTerm> = Vec::new();
            let rem = groebner::reduce(field, order, &s, g, Some(&mut qs));
            debug_assert!(rem.is_zero(), "S-vector of a Gröbner basis must reduce to zero");
            let mut terms = vec![
                Term {
                    mon: mi.clone(),
                    comp: i,
                    coeff: ci,
                },
                Term {
                    mon: mj,
                    comp: j,
                    coeff: cj,
                },
            ];
            for q in qs {
                terms.push(Term {
                    mon: q.mon,
                    comp: q.index,
                    coeff: field.neg(&q.coeff),
                });
            }
            let sigma = Vector::from_terms(field, next, terms);
            debug_assert_eq!(lead_of(&sigma), (mi, i));
            out.push(sigma);
        }
    }
    out
}

fn columns_of(field: &FieldSpec, elems: &[Vector], rank: usize) -> Vec<Vec<Polynomial>> {
    elems.iter().map(|v| v.components(field, rank)).collect()
}

/// Schreyer frame over the polynomial ring (not minimal).
fn schreyer_frame(m: &PresentedModule) -> FreeResolution {
    let field = *m.ring().field();
    let mut degrees = vec![m.degrees().to_vec()];
    let mut maps = Vec::new();
    let mut order = m.order();
    let mut gens: Vec<Vector> = m.groebner().elements.clone();
    let mut level = 0;
    while !gens.is_empty() {
        sort_for_frame(&mut gens, level);
        let rank = order.rank();
        maps.push(columns_of(&field, &gens, rank));
        let next = ModuleOrder::schreyer(&order, gens.iter().map(lead_of).collect());
        degrees.push(next.degrees().to_vec());
        let syz = schreyer_syzygies(&field, &order, &next, &gens);
        order = next;
        gens = syz;
        level += 1;
        assert!(level <= m.nvars() + 1, "Schreyer frame exceeded n + 1 steps");
    }
    FreeResolution {
        ring: m.ring().clone(),
        degrees,
        maps,
        minimal: false,
        truncated: false,
    }
}

/// Keeps a minimal generating subset of homogeneous `gens` in the free
/// module with the given degrees, modulo the quotient ideal.
pub fn minimal_generators(
    field: &FieldSpec,
    degrees: &[i32],
    gens: &[Vector],
    quotient: &[Polynomial],
) -> Result<Vec<Vector>> {
    let order = ModuleOrder::top(degrees.to_vec());
    let mut by_degree: BTreeMap<i32, Vec<Vector>> = BTreeMap::new();
    for g in gens {
        let g = g.resorted(&order);
        if let Some(d) = g.degree(degrees) {
            by_degree.entry(d).or_default().push(g);
        }
    }
    let mut kept: Vec<Vector> = Vec::new();
    for (_, group) in by_degree {
        let gb = groebner::groebner_basis(field, degrees, &kept, quotient)?;
        let reduced: Vec<Vector> = group.iter().map(|g| gb.normal_form(field, g)).collect();
        // linear independence of the normal forms, by coordinates on their terms
        let mut keys: Vec<(Monomial, usize)> = reduced
            .iter()
            .flat_map(|v| v.terms().iter().map(|t| (t.mon.clone(), t.comp)))
            .collect();
        keys.sort();
        keys.dedup();
        let mut rows = Vec::new();
        let mut rank = 0;
        for (g, r) in group.into_iter().zip(&reduced) {
            if r.is_zero() {
                continue;
            }
            let mut row = vec![field.zero(); keys.len()];
            for t in r.terms() {
                let k = keys.binary_search(&(t.mon.clone(), t.comp)).unwrap();
                row[k] = t.coeff.clone();
            }
            rows.push(row);
            let new_rank = crate::linalg::rank(field, &rows, keys.len());
            if new_rank > rank {
                rank = new_rank;
                kept.push(g);
            } else {
                rows.pop();
            }
        }
    }
    Ok(kept)
}

/// Resolution over a quotient ring, minimal at each step, cut at
/// `max_length`.
fn quotient_resolution(m: &PresentedModule, max_length: usize) -> Result<FreeResolution> {
    let ring = m.ring();
    let field = *ring.field();
    let n = ring.nvars();
    let quotient = ring.quotient().to_vec();
    let mut degrees = vec![m.degrees().to_vec()];
    let mut maps: Vec<Vec<Vec<Polynomial>>> = Vec::new();
    let mut current = minimal_generators(&field, m.degrees(), &m.relation_vectors(), &quotient)?;
    let mut truncated = false;
    loop {
        if current.is_empty() {
            break;
        }
        if maps.len() == max_length {
            truncated = true;
            break;
        }
        let target = degrees.last().unwrap().clone();
        let src: Vec<i32> = current.iter().map(|v| v.degree(&target).unwrap()).collect();
        maps.push(columns_of(&field, &current, target.len()));
        degrees.push(src.clone());
        let syz = groebner::syzygies(&field, n, &target, &current, &src, &quotient)?;
        current = minimal_generators(&field, &src, &syz, &quotient)?;
    }
    Ok(FreeResolution {
        ring: ring.clone(),
        degrees,
        maps,
        minimal: false,
        truncated,
    })
}

/// A free resolution of `m` over its ring. Over `S` it is complete; over
/// a quotient it stops after `max_length` maps and sets `truncated` if
/// the kernel there is nonzero.
pub fn free_resolution(m: &PresentedModule, max_length: usize) -> Result<FreeResolution> {
    if m.ring().is_quotient() {
        quotient_resolution(m, max_length)
    } else {
        Ok(schreyer_frame(m))
    }
}

impl FreeResolution {
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn rank(&self, i: usize) -> usize {
        self.degrees.get(i).map_or(0, |d| d.len())
    }

    /// `d_i ∘ d_{i+1} = 0` (modulo the quotient ideal) for every `i`.
    pub fn check_complex(&self) -> bool {
        let field = self.ring.field();
        for i in 1..self.maps.len() {
            let (a, b) = (&self.maps[i - 1], &self.maps[i]);
            for col in b {
                for r in 0..self.rank(i - 1) {
                    let mut acc = Polynomial::zero();
                    for (k, e) in col.iter().enumerate() {
                        if !e.is_zero() && !a[k][r].is_zero() {
                            acc = acc.add(field, &a[k][r].mul(field, e));
                        }
                    }
                    if !self.ring.normal_form(&acc).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every entry lies in the maximal ideal.
    pub fn is_minimal(&self) -> bool {
        self.maps
            .iter()
            .flatten()
            .flatten()
            .all(|p| p.constant_term().is_none())
    }

    pub fn betti_table(&self) -> BettiTable {
        let mut entries = BTreeMap::new();
        for (i, ds) in self.degrees.iter().enumerate() {
            for d in ds {
                *entries.entry((i, *d)).or_insert(0) += 1;
            }
        }
        BettiTable {
            entries,
            truncated: self.truncated,
        }
    }

    /// Highest index whose rank is certified exact.
    pub fn certified_length(&self) -> usize {
        self.maps.len()
    }
}

/// Cancels unit entries until every entry lies in `𝔪`.
pub fn minimalize(res: &FreeResolution) -> FreeResolution {
    let ring = res.ring.clone();
    let field = *ring.field();
    let mut degrees = res.degrees.clone();
    let mut maps = res.maps.clone();
    let mut i = 0;
    while i < maps.len() {
        // find a unit entry (r, c) in d_{i+1}
        let found = maps[i].iter().enumerate().find_map(|(c, col)| {
            col.iter()
                .position(|p| p.constant_term().is_some())
                .map(|r| (r, c))
        });
        let Some((r, c)) = found else {
            i += 1;
            continue;
        };
        let a_inv = field.inv(maps[i][c][r].constant_term().unwrap());
        let pivot_col = maps[i][c].clone();
        let pivot_row: Vec<Polynomial> = maps[i].iter().map(|col| col[r].clone()).collect();
        let mut new_cols = Vec::with_capacity(maps[i].len() - 1);
        for (c2, col) in maps[i].iter().enumerate() {
            if c2 == c {
                continue;
            }
            let factor = pivot_row[c2].scale(&field, &a_inv);
            let mut new_col = Vec::with_capacity(col.len() - 1);
            for (r2, e) in col.iter().enumerate() {
                if r2 == r {
                    continue;
                }
                let v = if factor.is_zero() || pivot_col[r2].is_zero() {
                    e.clone()
                } else {
                    e.sub(&field, &pivot_col[r2].mul(&field, &factor))
                };
                new_col.push(ring.normal_form(&v));
            }
            new_cols.push(new_col);
        }
        maps[i] = new_cols;
        // d_i loses column r, d_{i+2} loses row c
        if i > 0 {
            maps[i - 1].remove(r);
        }
        if i + 1 < maps.len() {
            for col in maps[i + 1].iter_mut() {
                col.remove(c);
            }
        }
        degrees[i].remove(r);
        degrees[i + 1].remove(c);
        // an earlier map may have gained nothing; restart from the previous index
        i = i.saturating_sub(1);
    }
    // trailing zero modules
    while maps.last().is_some_and(|m| m.is_empty()) && degrees.last().is_some_and(|d| d.is_empty()) {
        maps.pop();
        degrees.pop();
    }
    for k in (0..maps.len()).rev() {
        if degrees[k + 1].is_empty() {
            maps.truncate(k);
            degrees.truncate(k + 1);
        }
    }
    FreeResolution {
        ring,
        degrees,
        maps,
        minimal: true,
        truncated: res.truncated,
    }
}

/// Minimal resolution of `m`.
pub fn minimal_resolution(m: &PresentedModule, max_length: usize) -> Result<FreeResolution> {
    Ok(minimalize(&free_resolution(m, max_length)?))
}

/// Graded Betti numbers of `m` from its minimal resolution.
pub fn betti_table(m: &PresentedModule, max_length: usize) -> Result<BettiTable> {
    let res = minimal_resolution(m, max_length)?;
    let mut t = res.betti_table();
    t.entries.retain(|_, v| *v != 0);
    Ok(t)
}

/// A presentation of `m` with minimal generators and minimal relations.
pub fn minimal_presentation(m: &PresentedModule) -> Result<PresentedModule> {
    let ring = m.ring();
    let field = *ring.field();
    let rels = minimal_generators(&field, m.degrees(), &m.relation_vectors(), ring.quotient())?;
    let src: Vec<i32> = rels.iter().map(|v| v.degree(m.degrees()).unwrap()).collect();
    let res = FreeResolution {
        ring: ring.clone(),
        degrees: vec![m.degrees().to_vec(), src],
        maps: vec![columns_of(&field, &rels, m.rank())],
        minimal: false,
        truncated: true,
    };
    let min = minimalize(&res);
    let degrees = min.degrees[0].clone();
    let relations = min.maps.first().cloned().unwrap_or_default();
    PresentedModule::new(ring.clone(), degrees, relations)
}

/// Default length cap over quotient rings.
pub fn default_max_length(m: &PresentedModule) -> usize {
    m.nvars() + 2
}

/// Rank of the constant part of a matrix given by columns. For a
/// presentation this is the number of generators that are redundant.
pub fn unit_rank(field: &FieldSpec, cols: &[Vec<Polynomial>], nrows: usize) -> usize {
    let rows: Vec<Vec<_>> = cols
        .iter()
        .map(|col| {
            (0..nrows)
                .map(|r| col[r].constant_term().cloned().unwrap_or_else(|| field.zero()))
                .collect()
        })
        .collect();
    Echelon::new(field, &rows, nrows).rank()
}
