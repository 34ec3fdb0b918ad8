//! Graded local cohomology `H^i_𝔪(M)`: dimension tables through local
//! duality, two Čech-side oracles, truncation towers `M/𝔞^t M`, and
//! Lyubeznik tables.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field::{FieldSpec, Scalar};
use crate::invariants::{self, dualizing_free};
use crate::linalg;
use crate::module::PresentedModule;
use crate::monomial::Monomial;
use crate::order::ModuleOrder;
use crate::poly::Polynomial;
use crate::resolution::{self, BettiTable};
use crate::vector::{Term, Vector};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTable {
    /// `(i, j) -> dim_k H^i_𝔪(M)_j`, nonzero entries only.
    pub dims: BTreeMap<(usize, i32), u64>,
    pub window: (i32, i32),
}

impl CohomologyTable {
    pub fn get(&self, i: usize, j: i32) -> u64 {
        self.dims.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Total dimension of `H^i` over the window.
    pub fn total(&self, i: usize) -> u64 {
        self.dims.iter().filter(|((k, _), _)| *k == i).map(|(_, v)| v).sum()
    }

    /// Indices `i` with some nonzero entry in the window.
    pub fn nonzero_indices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.dims.keys().map(|(i, _)| *i).collect();
        out.dedup();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Highest degree with a nonzero entry at index `i`.
    pub fn top_degree(&self, i: usize) -> Option<i32> {
        self.dims.keys().filter(|(k, _)| *k == i).map(|(_, j)| *j).max()
    }

    pub fn render(&self, nvars: usize) -> String {
        let mut out = String::new();
        let (lo, hi) = self.window;
        let cells: Vec<Vec<String>> = (0..=nvars)
            .map(|i| (lo..=hi).map(|j| {
                let v = self.get(i, j);
                if v == 0 { ".".to_string() } else { v.to_string() }
            }).collect())
            .collect();
        let width = cells
            .iter()
            .flatten()
            .map(|s| s.len())
            .chain((lo..=hi).map(|j| j.to_string().len()))
            .max()
            .unwrap_or(1);
        out.push_str("  j:");
        for j in lo..=hi {
            out.push_str(&format!(" {j:>width$}"));
        }
        out.push('\n');
        for (i, row) in cells.iter().enumerate() {
            out.push_str(&format!("H^{i}:"));
            for c in row {
                out.push_str(&format!(" {c:>width$}"));
            }
            out.push('\n');
        }
        out
    }
}

/// The duals `Ext^{n-i}_S(M, S(-n))` for `i = 0..=n`, from one resolution.
pub fn duality_modules(m: &PresentedModule) -> Result<Vec<PresentedModule>> {
    let amb = m.over_ambient();
    let n = m.nvars();
    let res = resolution::minimal_resolution(&amb, n + 1)?;
    let omega = dualizing_free(m.ring());
    (0..=n)
        .map(|i| invariants::ext_from_resolution(&res, &omega, n - i))
        .collect()
}

/// `dim_k H^i_𝔪(M)_j = dim_k Ext^{n-i}_S(M, S(-n))_{-j}`.
pub fn local_cohomology_table(m: &PresentedModule, lo: i32, hi: i32) -> Result<CohomologyTable> {
    let duals = duality_modules(m)?;
    Ok(table_from_duals(&duals, lo, hi))
}

pub fn table_from_duals(duals: &[PresentedModule], lo: i32, hi: i32) -> CohomologyTable {
    let mut dims = BTreeMap::new();
    for (i, e) in duals.iter().enumerate() {
        let h = e.hilbert_series();
        for j in lo..=hi {
            let v = h.value(-j);
            if v != 0 {
                dims.insert((i, j), v as u64);
            }
        }
    }
    CohomologyTable { dims, window: (lo, hi) }
}

/// Exact (window-free) facts about `H^i_𝔪(M)` from its dual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologySupport {
    /// `H^i ≠ 0`.
    pub nonzero: Vec<bool>,
    /// `H^i` has finite length (its dual has dimension ≤ 0).
    pub finite: Vec<bool>,
    /// Highest nonzero degree of `H^i`: minus the initial degree of the dual.
    pub top_degree: Vec<Option<i32>>,
}

pub fn cohomology_support(duals: &[PresentedModule]) -> CohomologySupport {
    let mut out = CohomologySupport {
        nonzero: Vec::new(),
        finite: Vec::new(),
        top_degree: Vec::new(),
    };
    for e in duals {
        let h = e.hilbert_series();
        out.nonzero.push(!h.is_zero());
        out.finite.push(h.dimension() <= 0);
        let init = (-64..=64).find(|&d| h.value(d) != 0);
        out.top_degree.push(init.map(|d| -d));
    }
    out
}

/// Default window `[-(n + max generator degree + 2), max(2, reg + 1)]`.
pub fn default_window(m: &PresentedModule) -> Result<(i32, i32)> {
    let n = m.nvars() as i32;
    let lo = -(n + m.max_generator_degree().max(0) + 2);
    let betti = resolution::betti_table(&m.over_ambient(), m.nvars() + 1)?;
    let reg = betti.entries.keys().map(|(i, j)| j - *i as i32).max().unwrap_or(0);
    Ok((lo, (reg + 1).max(2)))
}

// ---------------------------------------------------------------------
// Čech oracle for monomial quotients S/I: every multidegree separately.

fn sign_patterns(n: usize) -> impl Iterator<Item = u32> {
    0..(1u32 << n)
}

/// `x^b ∉ I` where `b_k = max(ρ_k, a_k)` on `g` and `a_k` elsewhere.
fn valid_face(gens: &[Monomial], rho: &[u16], a: &[i32], g: u32) -> bool {
    let n = a.len();
    let mut b = vec![0u16; n];
    for k in 0..n {
        if g & (1 << k) != 0 {
            b[k] = rho[k].max(a[k].max(0) as u16);
        } else {
            if a[k] < 0 {
                return false;
            }
            b[k] = a[k] as u16;
        }
    }
    let mon = Monomial::new(&b);
    !gens.iter().any(|m| m.divides(&mon))
}

/// Cohomology of the Čech complex of `S/I` in multidegree `a`.
fn cech_multidegree(field: &FieldSpec, gens: &[Monomial], rho: &[u16], a: &[i32]) -> Vec<usize> {
    let n = a.len();
    let faces: Vec<Vec<u32>> = (0..=n)
        .map(|p| {
            sign_patterns(n)
                .filter(|g| g.count_ones() as usize == p && valid_face(gens, rho, a, *g))
                .collect()
        })
        .collect();
    let mut ranks = vec![0usize; n + 2];
    for p in 0..n {
        if faces[p].is_empty() || faces[p + 1].is_empty() {
            continue;
        }
        let index: HashMap<u32, usize> = faces[p + 1].iter().enumerate().map(|(i, g)| (*g, i)).collect();
        let rows: Vec<Vec<Scalar>> = faces[p]
            .iter()
            .map(|&g| {
                let mut row = vec![field.zero(); faces[p + 1].len()];
                for k in 0..n {
                    if g & (1 << k) != 0 {
                        continue;
                    }
                    if let Some(&c) = index.get(&(g | (1 << k))) {
                        let below = (g & ((1 << k) - 1)).count_ones();
                        row[c] = field.from_i64(if below % 2 == 0 { 1 } else { -1 });
                    }
                }
                row
            })
            .collect();
        ranks[p + 1] = linalg::rank(field, &rows, faces[p + 1].len());
    }
    (0..=n)
        .map(|p| faces[p].len() - ranks[p + 1] - ranks[p])
        .collect()
}

fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Number of ways to write `s` as a sum of `parts` integers all `≤ -1`.
fn negative_compositions(s: i64, parts: usize) -> u64 {
    if parts == 0 {
        return u64::from(s == 0);
    }
    binomial(-s - 1, parts as i64 - 1)
}

/// Exact Čech computation for `S/I`, `I` monomial. A coordinate with
/// `a_k ≥ ρ_k` (the largest exponent of `x_k` in the generators) makes
/// the complex a cone, so only `a_k < ρ_k` contributes; negative
/// coordinates all behave alike and are counted in closed form.
pub fn cech_table_monomial(m: &PresentedModule, gens: &[Monomial], lo: i32, hi: i32) -> CohomologyTable {
    let n = m.nvars();
    let field = *m.ring().field();
    let rho: Vec<u16> = (0..n)
        .map(|k| gens.iter().map(|g| g.exponent(k)).max().unwrap_or(0))
        .collect();
    let mut dims: BTreeMap<(usize, i32), u64> = BTreeMap::new();
    for neg in sign_patterns(n) {
        let free: Vec<usize> = (0..n).filter(|k| neg & (1 << k) == 0).collect();
        let parts = neg.count_ones() as usize;
        // odometer over nonnegative coordinates below ρ
        let mut pos = vec![0i32; free.len()];
        if free.iter().any(|&k| rho[k] == 0) {
            continue;
        }
        loop {
            let mut a = vec![-1i32; n];
            for (t, &k) in free.iter().enumerate() {
                a[k] = pos[t];
            }
            let h = cech_multidegree(&field, gens, &rho, &a);
            let possum: i64 = pos.iter().map(|&x| x as i64).sum();
            for (i, &hv) in h.iter().enumerate() {
                if hv == 0 {
                    continue;
                }
                for j in lo..=hi {
                    let count = negative_compositions(j as i64 - possum, parts);
                    if count > 0 {
                        *dims.entry((i, j)).or_insert(0) += hv as u64 * count;
                    }
                }
            }
            let mut t = 0;
            while t < free.len() {
                if pos[t] + 1 < rho[free[t]] as i32 {
                    pos[t] += 1;
                    break;
                }
                pos[t] = 0;
                t += 1;
            }
            if t == free.len() {
                break;
            }
        }
    }
    dims.retain(|_, v| *v != 0);
    CohomologyTable { dims, window: (lo, hi) }
}

// ---------------------------------------------------------------------
// Čech oracle for general modules: the colimit of Koszul cohomology on
// powers of the variables, degree by degree.

struct StandardModel<'a> {
    m: &'a PresentedModule,
    order: ModuleOrder,
    bases: HashMap<i32, (Vec<(Monomial, usize)>, HashMap<(Monomial, usize), usize>)>,
}

impl<'a> StandardModel<'a> {
    fn new(m: &'a PresentedModule) -> Self {
        StandardModel {
            m,
            order: m.order(),
            bases: HashMap::new(),
        }
    }

    fn basis(&mut self, d: i32) -> &(Vec<(Monomial, usize)>, HashMap<(Monomial, usize), usize>) {
        let m = self.m;
        self.bases.entry(d).or_insert_with(|| {
            let keys = m.standard_monomials(d);
            let index = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
            (keys, index)
        })
    }

    fn dim(&mut self, d: i32) -> usize {
        self.basis(d).0.len()
    }

    /// Rows: images of the basis of `M_d` under multiplication by `mon`.
    fn multiply(&mut self, mon: &Monomial, d: i32) -> Vec<Vec<Scalar>> {
        let field = *self.m.ring().field();
        let e = d + mon.degree() as i32;
        let src = self.basis(d).0.clone();
        let width = self.dim(e);
        let gb = self.m.groebner();
        let order = self.order.clone();
        let index = self.basis(e).1.clone();
        src.iter()
            .map(|(u, c)| {
                let v = Vector::from_terms(
                    &field,
                    &order,
                    vec![Term {
                        mon: u.mul(mon),
                        comp: *c,
                        coeff: field.one(),
                    }],
                );
                let nf = gb.normal_form(&field, &v);
                let mut row = vec![field.zero(); width];
                for t in nf.terms() {
                    row[index[&(t.mon.clone(), t.comp)]] = t.coeff.clone();
                }
                row
            })
            .collect()
    }
}

fn subsets_of_size(n: usize, p: usize) -> Vec<u32> {
    (0..(1u32 << n)).filter(|g| g.count_ones() as usize == p).collect()
}

fn power_of(n: usize, g: u32, k: u16) -> Monomial {
    let e: Vec<u16> = (0..n).map(|i| if g & (1 << i) != 0 { k } else { 0 }).collect();
    Monomial::new(&e)
}

/// Block layout of `K^p(x^k; M)_j = ⊕_{|G|=p} M_{j + k p}`.
fn koszul_layout(model: &mut StandardModel, n: usize, p: usize, k: u16, j: i32) -> (Vec<u32>, usize) {
    let faces = subsets_of_size(n, p);
    let d = model.dim(j + k as i32 * p as i32);
    (faces, d)
}

/// Rows of the coboundary `K^p(x^k) → K^{p+1}(x^k)` in degree `j`.
fn koszul_coboundary(model: &mut StandardModel, n: usize, p: usize, k: u16, j: i32) -> (Vec<Vec<Scalar>>, usize) {
    let field = *model.m.ring().field();
    let (src, sd) = koszul_layout(model, n, p, k, j);
    let (dst, dd) = koszul_layout(model, n, p + 1, k, j);
    let width = dst.len() * dd;
    let dst_index: HashMap<u32, usize> = dst.iter().enumerate().map(|(i, g)| (*g, i)).collect();
    let deg = j + k as i32 * p as i32;
    let mut rows = vec![vec![field.zero(); width]; src.len() * sd];
    if width == 0 {
        return (rows, 0);
    }
    for a in 0..n {
        let mults = model.multiply(&power_of(n, 1 << a, k), deg);
        for (si, &g) in src.iter().enumerate() {
            if g & (1 << a) != 0 {
                continue;
            }
            let block = dst_index[&(g | (1 << a))] * dd;
            let neg = (g & ((1 << a) - 1)).count_ones() % 2 == 1;
            for (u, row) in mults.iter().enumerate() {
                for (v, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        rows[si * sd + u][block + v] = if neg { field.neg(x) } else { x.clone() };
                    }
                }
            }
        }
    }
    (rows, width)
}

fn mat_vec(field: &FieldSpec, v: &[Scalar], rows: &[Vec<Scalar>], width: usize) -> Vec<Scalar> {
    let mut out = vec![field.zero(); width];
    for (x, row) in v.iter().zip(rows) {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(row) {
            if !y.is_zero() {
                *o = field.add(o, &field.mul(x, y));
            }
        }
    }
    out
}

/// Rank of `H^p(x^k; M)_j → H^p(x^K; M)_j`.
fn transition_rank(model: &mut StandardModel, n: usize, p: usize, k: u16, big: u16, j: i32) -> usize {
    let field = *model.m.ring().field();
    let (src_faces, sd) = koszul_layout(model, n, p, k, j);
    if sd == 0 {
        return 0;
    }
    let (cob, width) = koszul_coboundary(model, n, p, k, j);
    let cycles = if width == 0 {
        (0..src_faces.len() * sd)
            .map(|i| {
                let mut v = vec![field.zero(); src_faces.len() * sd];
                v[i] = field.one();
                v
            })
            .collect()
    } else {
        linalg::kernel(&field, &linalg::transpose(&field, &cob, width), cob.len())
    };
    if cycles.is_empty() {
        return 0;
    }
    // transition: u e_G -> x_G^{K-k} u e_G
    let (dst_faces, dd) = koszul_layout(model, n, p, big, j);
    let tw = dst_faces.len() * dd;
    if tw == 0 {
        return 0;
    }
    let mut trans = vec![vec![field.zero(); tw]; src_faces.len() * sd];
    let deg = j + k as i32 * p as i32;
    for (fi, &g) in src_faces.iter().enumerate() {
        let mult = model.multiply(&power_of(n, g, big - k), deg);
        for (u, row) in mult.iter().enumerate() {
            for (v, x) in row.iter().enumerate() {
                trans[fi * sd + u][fi * dd + v] = x.clone();
            }
        }
    }
    let mut rows: Vec<Vec<Scalar>> = cycles.iter().map(|z| mat_vec(&field, z, &trans, tw)).collect();
    let boundaries = if p == 0 {
        Vec::new()
    } else {
        koszul_coboundary(model, n, p - 1, big, j).0
    };
    let b_rank = linalg::rank(&field, &boundaries, tw);
    rows.extend(boundaries);
    linalg::rank(&field, &rows, tw) - b_rank
}

/// Colimit of `H^i(x^k; M)_j` over `k`. Stops once the transition rank
/// has been constant for three consecutive `k` past `1 - j`; `None` if
/// that does not happen by `k_max`.
pub fn cech_colimit_dim(m: &PresentedModule, i: usize, j: i32, k_max: u16) -> Option<u64> {
    let n = m.nvars();
    let mut model = StandardModel::new(m);
    let start = 1.max(1 - j) as u16;
    let mut history: Vec<usize> = Vec::new();
    for k in 1..=k_max {
        let r = transition_rank(&mut model, n, i, k, 2 * k + 2, j);
        history.push(r);
        let len = history.len();
        if k >= start + 2 && len >= 3 && history[len - 1] == history[len - 2] && history[len - 2] == history[len - 3] {
            return Some(r as u64);
        }
    }
    None
}

/// Čech-side table: exact multidegree computation for monomial
/// quotients, Koszul colimits otherwise (at most three variables).
pub fn cech_table(m: &PresentedModule, lo: i32, hi: i32) -> Result<CohomologyTable> {
    let amb = m.over_ambient();
    if let Some(gens) = amb.monomial_ideal() {
        return Ok(cech_table_monomial(&amb, &gens, lo, hi));
    }
    if amb.nvars() > 3 {
        return Err(AlgebraError::Unsupported(
            "Koszul colimit oracle is limited to three variables".into(),
        ));
    }
    let mut dims = BTreeMap::new();
    let k_max = (hi - lo + 16) as u16;
    for i in 0..=amb.nvars() {
        for j in lo..=hi {
            let v = cech_colimit_dim(&amb, i, j, k_max).ok_or_else(|| {
                AlgebraError::Unsupported(format!("Čech colimit did not settle at H^{i} degree {j}"))
            })?;
            if v != 0 {
                dims.insert((i, j), v);
            }
        }
    }
    Ok(CohomologyTable { dims, window: (lo, hi) })
}

// ---------------------------------------------------------------------
// Formal towers.

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerStage {
    pub t: u32,
    pub table: CohomologyTable,
    pub support: CohomologySupport,
    /// `dim_k M/𝔞^t M` when finite.
    pub length: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalTower {
    pub inner_ideal: Vec<String>,
    pub stages: Vec<TowerStage>,
    /// `(i, j) -> Some(t)` if the stage dimension is constant from `t`
    /// through the last stage (and at least two stages agree), else
    /// `None`.
    pub stabilization: BTreeMap<(usize, i32), Option<u32>>,
    pub window: (i32, i32),
}

impl FormalTower {
    pub fn stage(&self, t: u32) -> Option<&TowerStage> {
        self.stages.iter().find(|s| s.t == t)
    }

    pub fn value(&self, t: u32, i: usize, j: i32) -> u64 {
        self.stage(t).map_or(0, |s| s.table.get(i, j))
    }
}

/// Stage tops grow with `t`: `M/𝔞^t M` has regularity up to about
/// `reg M + t deg 𝔞`, so the upper end scales with `t_max`.
pub fn default_tower_window(m: &PresentedModule, ideal: &[Polynomial], t_max: u32) -> (i32, i32) {
    let n = m.nvars() as i32;
    let maxdeg = ideal.iter().filter_map(|f| f.degree()).max().unwrap_or(1) as i32;
    let lo = -(n + t_max as i32 * maxdeg + m.max_generator_degree().max(0) + 2);
    let hi = t_max as i32 * maxdeg + m.max_relation_degree().max(0) + n;
    (lo, hi.max(2))
}

/// Stage `t` is the local cohomology table of `M/𝔞^t M`.
pub fn formal_tower(
    m: &PresentedModule,
    ideal: &[Polynomial],
    t_max: u32,
    lo: i32,
    hi: i32,
) -> Result<FormalTower> {
    let mut stages = Vec::new();
    for t in 1..=t_max {
        let q = m.truncation(ideal, t)?;
        let duals = duality_modules(&q)?;
        stages.push(TowerStage {
            t,
            table: table_from_duals(&duals, lo, hi),
            support: cohomology_support(&duals),
            length: q.hilbert_series().length(),
        });
    }
    let n = m.nvars();
    let mut stabilization = BTreeMap::new();
    for i in 0..=n {
        for j in lo..=hi {
            let vals: Vec<u64> = stages.iter().map(|s| s.table.get(i, j)).collect();
            let last = *vals.last().unwrap();
            let mut start = vals.len();
            while start > 0 && vals[start - 1] == last {
                start -= 1;
            }
            let run = vals.len() - start;
            let stab = if run >= 2 { Some(start as u32 + 1) } else { None };
            if vals.iter().any(|v| *v != 0) || stab.is_none() {
                stabilization.insert((i, j), stab);
            }
        }
    }
    Ok(FormalTower {
        inner_ideal: ideal.iter().map(|f| m.ring().format(f)).collect(),
        stages,
        stabilization,
        window: (lo, hi),
    })
}

// ---------------------------------------------------------------------
// Lyubeznik tables.

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LyubeznikTable {
    /// `(i, j) -> λ_{i,j}`, nonzero entries only.
    pub values: BTreeMap<(usize, usize), u64>,
    pub i_bound: usize,
    pub truncated: bool,
}

impl LyubeznikTable {
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.values.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn row_sum(&self, i: usize) -> u64 {
        self.values.iter().filter(|((k, _), _)| *k == i).map(|(_, v)| v).sum()
    }
}

/// Betti numbers over `R` of a module over `S` annihilated by `I`.
pub fn betti_over_ring(e: &PresentedModule, ring: &crate::ring::Ring, i_bound: usize) -> Result<BettiTable> {
    let over = e.over_ring(ring.clone())?;
    resolution::betti_table(&over, i_bound)
}

/// `λ_{i,j} = dim_k Ext^i_R(k, H^j_𝔪(R)) = β^R_i(Ext^{n-j}_S(R, S(-n)))`
/// by Matlis duality, for `i ≤ i_bound`.
pub fn lyubeznik_table(ring: &crate::ring::Ring, i_bound: usize) -> Result<LyubeznikTable> {
    let r = PresentedModule::free(ring.clone(), vec![0]);
    let duals = duality_modules(&r)?;
    let mut values = BTreeMap::new();
    let mut truncated = false;
    for (j, e) in duals.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        let b = betti_over_ring(e, ring, i_bound)?;
        truncated |= b.truncated;
        for (i, v) in b.totals().iter().enumerate() {
            if i <= i_bound && *v != 0 {
                values.insert((i, j), *v);
            }
        }
    }
    Ok(LyubeznikTable {
        values,
        i_bound,
        truncated,
    })
}
