//! Claims as executable predicates, their witnesses, and the corpus-wide
//! run.

use std::collections::BTreeMap;
use std::fmt;
use std::panic::{self, AssertUnwindSafe};
use std::sync::OnceLock;

use gradedkernel::cohomology::{self, FormalTower};
use gradedkernel::invariants;
use gradedkernel::module::PresentedModule;
use gradedkernel::resolution;
use gradedkernel::{Polynomial, Ring};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{CaseSummary, ExampleCase};
use crate::printed::{self, Discrepancy, GoldenCheck};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClaimId {
    #[serde(rename = "C1-vanishing-below-depth")]
    C1,
    #[serde(rename = "C2-artinian-proxy")]
    C2,
    #[serde(rename = "C3-betti-bass-duality")]
    C3,
    #[serde(rename = "C4-cm-concentration")]
    C4,
    #[serde(rename = "C5-pd-finite-length")]
    C5,
    #[serde(rename = "C6-lyubeznik-betti-sum")]
    C6,
    #[serde(rename = "C7-depth-min-characterization")]
    C7,
    #[serde(rename = "C8-injdim-projdim-dual")]
    C8,
    #[serde(rename = "C9-vanishing-above-dim")]
    C9,
    #[serde(rename = "C10-ass-rhs")]
    C10,
}

impl ClaimId {
    pub const ALL: [ClaimId; 10] = [
        ClaimId::C1,
        ClaimId::C2,
        ClaimId::C3,
        ClaimId::C4,
        ClaimId::C5,
        ClaimId::C6,
        ClaimId::C7,
        ClaimId::C8,
        ClaimId::C9,
        ClaimId::C10,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::C1 => "C1-vanishing-below-depth",
            ClaimId::C2 => "C2-artinian-proxy",
            ClaimId::C3 => "C3-betti-bass-duality",
            ClaimId::C4 => "C4-cm-concentration",
            ClaimId::C5 => "C5-pd-finite-length",
            ClaimId::C6 => "C6-lyubeznik-betti-sum",
            ClaimId::C7 => "C7-depth-min-characterization",
            ClaimId::C8 => "C8-injdim-projdim-dual",
            ClaimId::C9 => "C9-vanishing-above-dim",
            ClaimId::C10 => "C10-ass-rhs",
        }
    }

    /// Accepts the full id or its short prefix (`C3`), case-insensitively.
    pub fn parse(s: &str) -> Option<ClaimId> {
        let s = s.to_ascii_uppercase();
        ClaimId::ALL.into_iter().find(|c| {
            let full = c.as_str().to_ascii_uppercase();
            full == s || full.split('-').next() == Some(s.as_str())
        })
    }

    /// The statement being tested, in words.
    pub fn statement(self) -> &'static str {
        match self {
            ClaimId::C1 => "formal cohomology vanishes below depth",
            ClaimId::C2 => "formal cohomology modules are Artinian",
            ClaimId::C3 => "Betti numbers of M equal Bass numbers of Hom(M, omega)",
            ClaimId::C4 => "for Cohen-Macaulay M formal cohomology lives only at i = dim",
            ClaimId::C5 => "finite projective dimension iff formal cohomology has finite length",
            ClaimId::C6 => "Betti numbers of omega are row sums of the Lyubeznik table",
            ClaimId::C7 => "depth is the least index of nonvanishing formal cohomology",
            ClaimId::C8 => "top formal cohomology has injective dimension projdim M",
            ClaimId::C9 => "formal cohomology vanishes above dim",
            ClaimId::C10 => "top-dimensional associated primes",
        }
    }

    /// The executable check, in words.
    pub fn formalization(self) -> &'static str {
        match self {
            ClaimId::C1 => "every stage H^i_m(M/a^t M) vanishes for i < depth M",
            ClaimId::C2 => "every stage table has finite total dimension and nothing above its exact top degree",
            ClaimId::C3 => "beta^R_i(R) = mu^R_i(omega_R) for i up to the certified index (M = R)",
            ClaimId::C4 => "every stage vanishes for i != dim M and is nonzero at i = dim M",
            ClaimId::C5 => "projdim_S M finite iff every stage H^i has finite length",
            ClaimId::C6 => "beta^R_i(omega_R) = sum_j lambda_{i,j}(R) for i up to the certified index",
            ClaimId::C7 => "depth M = min{i : some stage H^i is nonzero}",
            ClaimId::C8 => "projdim_S Hom_R(R, omega_R) = projdim_S R (dual form)",
            ClaimId::C9 => "every stage vanishes for i > dim M",
            ClaimId::C10 => "Ass(S/I) restricted to dim S/p = d equals the minimal primes of dimension d",
        }
    }

    fn needs_cm(self) -> bool {
        matches!(self, ClaimId::C3 | ClaimId::C4 | ClaimId::C8)
    }

    fn uses_tower(self) -> bool {
        matches!(
            self,
            ClaimId::C1 | ClaimId::C2 | ClaimId::C4 | ClaimId::C5 | ClaimId::C7 | ClaimId::C9
        )
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How the inner ideal of the formal cohomology tower is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reading {
    /// Both ideals are the maximal ideal.
    Literal,
    /// Inner ideal `(x_1)`, outer ideal `𝔪`.
    TwoIdeal,
}

impl Reading {
    pub const ALL: [Reading; 2] = [Reading::Literal, Reading::TwoIdeal];

    pub fn inner_ideal(self, s: &Ring) -> Vec<Polynomial> {
        match self {
            Reading::Literal => (0..s.nvars()).map(|i| s.var(i)).collect(),
            Reading::TwoIdeal => vec![s.var(0)],
        }
    }
}

impl fmt::Display for Reading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reading::Literal => "literal",
            Reading::TwoIdeal => "two-ideal",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub t_max: u32,
    /// Degree window for stage tables; `None` picks one per module.
    pub window: Option<(i32, i32)>,
    /// Resolution length cap for resolutions over `R`; also the largest
    /// certified index for C3 and C6.
    pub max_length: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            t_max: 6,
            window: None,
            max_length: 3,
        }
    }
}

/// One nonzero cell of a table indexed by `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TableEntry {
    pub i: i64,
    pub j: i64,
    pub dim: u64,
}

impl TableEntry {
    pub fn new(i: impl Into<i64>, j: impl Into<i64>, dim: u64) -> Self {
        TableEntry {
            i: i.into(),
            j: j.into(),
            dim,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageWitness {
    pub t: u32,
    /// Indices with `H^i ≠ 0` (exact, not windowed).
    pub nonzero: Vec<usize>,
    /// Indices where `H^i` has infinite length.
    pub infinite: Vec<usize>,
    /// Exact top degree of each nonzero `H^i`.
    pub top_degrees: Vec<(usize, i32)>,
    /// Window entries.
    pub dims: Vec<TableEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerWitness {
    pub inner_ideal: Vec<String>,
    pub depth: usize,
    pub dim: i32,
    pub projdim: Option<usize>,
    pub window: (i32, i32),
    pub stages: Vec<StageWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    Tower(TowerWitness),
    BettiBass {
        certified: usize,
        dim: usize,
        betti: Vec<u64>,
        /// `μ_i` for `i ≤ certified + dim`.
        bass: Vec<u64>,
    },
    BettiLyubeznik {
        certified: usize,
        betti: Vec<u64>,
        row_sums: Vec<u64>,
        table: Vec<TableEntry>,
    },
    ProjDims {
        dual: usize,
        module: usize,
    },
    Primes {
        dim: usize,
        computed: Vec<Vec<usize>>,
        expected: Vec<Vec<usize>>,
    },
    Insufficient {
        bound: String,
        reason: String,
    },
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

impl Witness {
    /// Re-evaluates the formalization of `claim` on these quantities.
    pub fn evaluate(&self, claim: ClaimId) -> Verdict {
        match (self, claim) {
            (Witness::Tower(w), c) if c.uses_tower() => w.evaluate(c),
            (Witness::BettiBass { certified, betti, bass, .. }, ClaimId::C3) => {
                let b = |i: usize| betti.get(i).copied().unwrap_or(0);
                let m = |i: usize| bass.get(i).copied().unwrap_or(0);
                verdict((0..=*certified).all(|i| b(i) == m(i)))
            }
            (Witness::BettiLyubeznik { certified, betti, row_sums, .. }, ClaimId::C6) => {
                let b = |i: usize| betti.get(i).copied().unwrap_or(0);
                let r = |i: usize| row_sums.get(i).copied().unwrap_or(0);
                verdict((0..=*certified).all(|i| b(i) == r(i)))
            }
            (Witness::ProjDims { dual, module }, ClaimId::C8) => verdict(dual == module),
            (Witness::Primes { computed, expected, .. }, ClaimId::C10) => verdict(computed == expected),
            _ => Verdict::Inconclusive,
        }
    }
}

impl TowerWitness {
    fn evaluate(&self, claim: ClaimId) -> Verdict {
        let all = |f: &dyn Fn(&StageWitness) -> bool| self.stages.iter().all(f);
        match claim {
            ClaimId::C1 => verdict(all(&|s| s.nonzero.iter().all(|&i| i >= self.depth))),
            ClaimId::C2 => {
                let hi = self.window.1;
                if self.stages.iter().any(|s| s.top_degrees.iter().any(|(_, top)| *top > hi)) {
                    return Verdict::Inconclusive;
                }
                verdict(all(&|s| {
                    s.nonzero.iter().all(|i| s.top_degrees.iter().any(|(k, _)| k == i))
                        && s.dims.iter().all(|TableEntry { i, j, .. }| {
                            s.top_degrees.iter().any(|(k, top)| *k as i64 == *i && *j <= *top as i64)
                        })
                }))
            }
            ClaimId::C4 => verdict(all(&|s| s.nonzero == [self.dim as usize])),
            ClaimId::C5 => {
                let finite_length = all(&|s| s.infinite.is_empty());
                verdict(self.projdim.is_some() == finite_length)
            }
            ClaimId::C7 => {
                let least = self.stages.iter().filter_map(|s| s.nonzero.first()).min();
                verdict(least == Some(&self.depth))
            }
            ClaimId::C9 => verdict(all(&|s| s.nonzero.iter().all(|&i| i as i32 <= self.dim))),
            _ => Verdict::Inconclusive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim: ClaimId,
    pub case_id: String,
    pub reading: Reading,
    pub verdict: Verdict,
    pub witness: Witness,
    pub notes: Vec<String>,
}

struct CaseEval<'a> {
    case: &'a ExampleCase,
    bounds: Bounds,
    module: PresentedModule,
    depth: usize,
    dim: i32,
    projdim: usize,
    towers: [OnceLock<Result<TowerWitness, String>>; 2],
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

impl<'a> CaseEval<'a> {
    fn new(case: &'a ExampleCase, bounds: Bounds) -> Result<Self, String> {
        let module = case.module().map_err(err)?;
        let projdim = invariants::projdim_ambient(&module).map_err(err)?;
        let depth = invariants::depth(&module).map_err(err)?;
        let dim = module.krull_dim();
        Ok(CaseEval {
            case,
            bounds,
            module,
            depth,
            dim,
            projdim,
            towers: [OnceLock::new(), OnceLock::new()],
        })
    }

    fn is_cm(&self) -> bool {
        self.dim == self.depth as i32
    }

    fn applies(&self, claim: ClaimId) -> bool {
        !claim.needs_cm() || self.is_cm()
    }

    fn tower(&self, reading: Reading) -> Result<TowerWitness, String> {
        let slot = &self.towers[reading as usize];
        slot.get_or_init(|| {
            let ideal = reading.inner_ideal(&self.case.ring);
            let (lo, hi) = self.bounds.window.unwrap_or_else(|| {
                cohomology::default_tower_window(&self.module, &ideal, self.bounds.t_max)
            });
            let tower = cohomology::formal_tower(&self.module, &ideal, self.bounds.t_max, lo, hi).map_err(err)?;
            Ok(tower_witness(&tower, self))
        })
        .clone()
    }

    fn ring_witness(&self, claim: ClaimId) -> Result<Witness, String> {
        let r = self.case.quotient_ring().map_err(err)?;
        let cert = self.bounds.max_length;
        match claim {
            ClaimId::C3 => {
                let rmod = PresentedModule::free(r.clone(), vec![0]);
                let betti = resolution::betti_table(&rmod, cert + 1).map_err(err)?.totals();
                let omega = invariants::canonical_module(&r).map_err(err)?;
                let d = self.dim.max(0) as usize;
                let bass = invariants::bass_numbers(&omega, cert + d).map_err(err)?;
                Ok(Witness::BettiBass {
                    certified: cert,
                    dim: d,
                    betti,
                    bass: bass.values,
                })
            }
            ClaimId::C6 => {
                let omega = invariants::canonical_module(&r).map_err(err)?;
                let betti = resolution::betti_table(&omega, cert + 1).map_err(err)?;
                let mut betti = betti.totals();
                betti.truncate(cert + 1);
                let table = cohomology::lyubeznik_table(&r, cert).map_err(err)?;
                let row_sums = (0..=cert).map(|i| table.row_sum(i)).collect();
                Ok(Witness::BettiLyubeznik {
                    certified: cert,
                    betti,
                    row_sums,
                    table: table.values.iter().map(|(&(i, j), &v)| TableEntry::new(i as i64, j as i64, v)).collect(),
                })
            }
            ClaimId::C8 => {
                let omega = invariants::canonical_module(&r).map_err(err)?;
                let dual = invariants::projdim_ambient(&omega).map_err(err)?;
                Ok(Witness::ProjDims {
                    dual,
                    module: self.projdim,
                })
            }
            ClaimId::C10 => {
                if !self.case.is_monomial() {
                    return Ok(Witness::Insufficient {
                        bound: "input".into(),
                        reason: "associated primes are computed for monomial ideals only".into(),
                    });
                }
                let d = self.dim.max(0) as usize;
                let primes = invariants::associated_primes_monomial(&self.module).map_err(err)?;
                let computed = primes
                    .primes
                    .iter()
                    .filter(|p| p.dim == d)
                    .map(|p| p.variables.clone())
                    .collect();
                let expected = minimal_primes_of_dim(self.case, d);
                Ok(Witness::Primes {
                    dim: d,
                    computed,
                    expected,
                })
            }
            _ => unreachable!("tower claims are evaluated on towers"),
        }
    }

    fn witness(&self, claim: ClaimId, reading: Reading) -> Result<Witness, String> {
        if claim.uses_tower() {
            self.tower(reading).map(Witness::Tower)
        } else {
            self.ring_witness(claim)
        }
    }

    fn report(&self, claim: ClaimId, reading: Reading, cached: Option<&Result<Witness, String>>) -> ClaimReport {
        let computed;
        let witness = match cached {
            Some(w) => w,
            None => {
                computed = self.witness(claim, reading);
                &computed
            }
        };
        let witness = match witness {
            Ok(w) => w.clone(),
            Err(e) => Witness::Insufficient {
                bound: "computation".into(),
                reason: e.clone(),
            },
        };
        let verdict = witness.evaluate(claim);
        let mut notes = Vec::new();
        if claim.uses_tower() {
            let ideal = reading.inner_ideal(&self.case.ring);
            let names: Vec<String> = ideal.iter().map(|f| self.case.ring.format(f)).collect();
            notes.push(format!("reading {reading}: a = ({}), t <= {}", names.join(", "), self.bounds.t_max));
            if let Witness::Tower(w) = &witness {
                notes.push(format!("window j in [{}, {}]", w.window.0, w.window.1));
            }
        } else {
            notes.push("no inner ideal involved; the verdict is the same under both readings".into());
        }
        if let Witness::BettiBass { certified, dim, betti, bass } = &witness {
            let shifted = (0..=*certified).all(|i| {
                betti.get(i).copied().unwrap_or(0) == bass.get(i + dim).copied().unwrap_or(0)
            });
            notes.push(format!(
                "shifted comparison beta_i = mu_(i+{dim}) {} for i <= {certified}",
                if shifted { "holds" } else { "fails" }
            ));
        }
        if verdict == Verdict::Inconclusive {
            if let Witness::Insufficient { bound, reason } = &witness {
                notes.push(format!("insufficient {bound}: {reason}"));
            } else if claim == ClaimId::C2 {
                notes.push("insufficient window: a top degree lies above the window".into());
            }
        }
        ClaimReport {
            claim,
            case_id: self.case.id.clone(),
            reading,
            verdict,
            witness,
            notes,
        }
    }
}

fn tower_witness(tower: &FormalTower, ctx: &CaseEval) -> TowerWitness {
    let stages = tower
        .stages
        .iter()
        .map(|s| {
            let sup = &s.support;
            let nonzero: Vec<usize> = (0..sup.nonzero.len()).filter(|&i| sup.nonzero[i]).collect();
            StageWitness {
                t: s.t,
                infinite: nonzero.iter().copied().filter(|&i| !sup.finite[i]).collect(),
                top_degrees: nonzero.iter().filter_map(|&i| sup.top_degree[i].map(|d| (i, d))).collect(),
                nonzero,
                dims: s.table.dims.iter().map(|(&(i, j), &v)| TableEntry::new(i as i64, j, v)).collect(),
            }
        })
        .collect();
    TowerWitness {
        inner_ideal: tower.inner_ideal.clone(),
        depth: ctx.depth,
        dim: ctx.dim,
        projdim: Some(ctx.projdim),
        window: tower.window,
        stages,
    }
}

/// Minimal primes of a monomial ideal (minimal vertex covers of the
/// supports of its generators) with `dim S/p = d`.
fn minimal_primes_of_dim(case: &ExampleCase, d: usize) -> Vec<Vec<usize>> {
    let n = case.nvars();
    let supports: Vec<u32> = case
        .ideal
        .iter()
        .map(|f| {
            let m = f.lead_monomial().expect("nonzero generator");
            m.support().iter().fold(0u32, |acc, &k| acc | (1 << k))
        })
        .collect();
    let covers: Vec<u32> = (0u32..(1 << n))
        .filter(|&c| supports.iter().all(|&s| s & c != 0))
        .collect();
    let mut out: Vec<Vec<usize>> = covers
        .iter()
        .filter(|&&c| !covers.iter().any(|&o| o != c && o & c == o))
        .filter(|&&c| n - c.count_ones() as usize == d)
        .map(|&c| (0..n).filter(|k| c & (1 << k) != 0).collect())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

fn inconclusive(case: &ExampleCase, claim: ClaimId, reading: Reading, reason: String) -> ClaimReport {
    ClaimReport {
        claim,
        case_id: case.id.clone(),
        reading,
        verdict: Verdict::Inconclusive,
        witness: Witness::Insufficient {
            bound: "computation".into(),
            reason: reason.clone(),
        },
        notes: vec![format!("insufficient computation: {reason}")],
    }
}

fn guarded<T>(f: impl FnOnce() -> T) -> Result<T, String> {
    panic::catch_unwind(AssertUnwindSafe(f)).map_err(|p| {
        p.downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "internal error".into())
    })
}

/// Evaluates one claim on one case under one reading. `None` when the
/// claim does not apply (a Cohen–Macaulay hypothesis fails).
pub fn run_claim(claim: ClaimId, case: &ExampleCase, reading: Reading, bounds: Bounds) -> Option<ClaimReport> {
    let out = guarded(|| {
        let ctx = CaseEval::new(case, bounds)?;
        Ok::<_, String>(ctx.applies(claim).then(|| ctx.report(claim, reading, None)))
    });
    match out {
        Ok(Ok(r)) => r,
        Ok(Err(e)) | Err(e) => Some(inconclusive(case, claim, reading, e)),
    }
}

fn run_case(case: &ExampleCase, claims: &[ClaimId], bounds: Bounds) -> Vec<ClaimReport> {
    let out = guarded(|| {
        let ctx = match CaseEval::new(case, bounds) {
            Ok(c) => c,
            Err(e) => {
                return claims
                    .iter()
                    .flat_map(|&c| Reading::ALL.map(|r| inconclusive(case, c, r, e.clone())))
                    .collect();
            }
        };
        let mut reports = Vec::new();
        for &claim in claims.iter().filter(|c| ctx.applies(**c)) {
            let shared = (!claim.uses_tower()).then(|| ctx.witness(claim, Reading::Literal));
            for reading in Reading::ALL {
                reports.push(ctx.report(claim, reading, shared.as_ref()));
            }
        }
        reports
    });
    out.unwrap_or_else(|e| {
        claims
            .iter()
            .flat_map(|&c| Reading::ALL.map(|r| inconclusive(case, c, r, e.clone())))
            .collect()
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictCounts {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

impl VerdictCounts {
    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::Inconclusive => self.inconclusive += 1,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: VerdictCounts,
    /// Keyed by `"<claim id>/<reading>"`.
    pub by_claim: BTreeMap<String, VerdictCounts>,
    pub golden_failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub field: String,
    pub bounds: Bounds,
    pub cases: Vec<CaseSummary>,
    pub claims: Vec<ClaimReport>,
    pub summary: Summary,
    pub goldens: Vec<GoldenCheck>,
    pub discrepancies: Vec<Discrepancy>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn find(&self, claim: ClaimId, case_id: &str, reading: Reading) -> Option<&ClaimReport> {
        self.claims
            .iter()
            .find(|r| r.claim == claim && r.case_id == case_id && r.reading == reading)
    }

    pub fn goldens_pass(&self) -> bool {
        self.goldens.iter().all(|g| g.passed)
    }
}

/// Stage count used for printed stage-support comparisons.
const PRINTED_STAGES: u32 = 3;

/// Every applicable (claim, case, reading) triple, plus the golden and
/// discrepancy sections from the worked examples. Results are sorted by
/// claim, case and reading regardless of evaluation order.
pub fn verify_all(cases: &[ExampleCase], claims: &[ClaimId], bounds: Bounds) -> VerificationReport {
    let mut reports: Vec<ClaimReport> = cases
        .par_iter()
        .flat_map_iter(|case| run_case(case, claims, bounds))
        .collect();
    reports.sort_by(|a, b| (a.claim, &a.case_id, a.reading).cmp(&(b.claim, &b.case_id, b.reading)));

    let comparisons: Vec<(String, Result<printed::PrintedComparison, String>)> = cases
        .par_iter()
        .filter(|c| c.printed.is_some())
        .map(|c| {
            let r = guarded(|| printed::compare_case(c, PRINTED_STAGES).map_err(err)).and_then(|r| r);
            (c.id.clone(), r)
        })
        .collect();
    let mut goldens = Vec::new();
    let mut discrepancies = Vec::new();
    let mut notes = vec!["claims quantified over all modules are checked on this corpus only; PASS is evidence, not proof".to_string()];
    for (id, cmp) in comparisons {
        match cmp {
            Ok(c) => {
                goldens.extend(c.goldens);
                discrepancies.extend(c.discrepancies);
            }
            Err(e) => notes.push(format!("{id}: comparison with printed values failed: {e}")),
        }
    }
    goldens.sort();
    discrepancies.sort();

    let mut summary = Summary::default();
    for r in &reports {
        summary.total.add(r.verdict);
        summary
            .by_claim
            .entry(format!("{}/{}", r.claim, r.reading))
            .or_default()
            .add(r.verdict);
    }
    summary.golden_failures = goldens.iter().filter(|g| !g.passed).count();
    let field = cases
        .first()
        .map(|c| c.ring.field().to_string())
        .unwrap_or_default();
    VerificationReport {
        field,
        bounds,
        cases: cases.iter().map(|c| c.summary()).collect(),
        claims: reports,
        summary,
        goldens,
        discrepancies,
        notes,
    }
}
