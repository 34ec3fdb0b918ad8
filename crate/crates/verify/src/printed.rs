//! Values printed alongside the worked examples, kept as annotations and
//! compared against independently computed values. Printed values never
//! act as oracles: agreement makes a golden check, disagreement a
//! discrepancy entry.

use gradedkernel::cohomology;
use gradedkernel::invariants;
use gradedkernel::koszul;
use gradedkernel::module::PresentedModule;
use gradedkernel::resolution;
use gradedkernel::{Polynomial, Result, Ring};
use serde::{Deserialize, Serialize};

use crate::corpus::ExampleCase;

#[derive(Clone, Debug, Default)]
pub struct PrintedRecord {
    pub depth: Option<usize>,
    pub dim: Option<i32>,
    pub betti: Option<Vec<u64>>,
    /// Whether the printed Betti numbers belong to the golden subset.
    pub betti_golden: bool,
    /// Printed differentials `d_1, d_2, ...`, each as a list of columns.
    pub resolution: Vec<Vec<Vec<Polynomial>>>,
    /// Printed Lyubeznik numbers `((i, j), λ_{i,j})`, zeros included.
    pub lyubeznik: Vec<((usize, usize), u64)>,
    /// Printed cohomological indices of `M/(x_1^t, ..., x_n^t)M`.
    pub stage_support: Option<Vec<usize>>,
}

pub(crate) fn xy_record(_s: &Ring) -> PrintedRecord {
    PrintedRecord {
        depth: Some(1),
        dim: Some(1),
        betti: Some(vec![1, 1]),
        betti_golden: true,
        stage_support: Some(vec![1]),
        ..PrintedRecord::default()
    }
}

pub(crate) fn hypersurface_record(s: &Ring) -> PrintedRecord {
    let (x, y, z) = (s.var(0), s.var(1), s.var(2));
    let neg = |f: &Polynomial| s.sub(&Polynomial::zero(), f);
    PrintedRecord {
        depth: Some(2),
        dim: Some(2),
        betti: Some(vec![1, 3, 1]),
        betti_golden: false,
        resolution: vec![
            vec![vec![y.clone()], vec![z.clone()], vec![x.clone()]],
            vec![vec![z, neg(&x), y]],
        ],
        lyubeznik: vec![((0, 2), 1), ((1, 2), 0), ((2, 2), 1)],
        stage_support: None,
    }
}

pub(crate) fn non_cm_record(s: &Ring) -> PrintedRecord {
    let (x, y, z) = (s.var(0), s.var(1), s.var(2));
    let zero = Polynomial::zero();
    let neg = |f: &Polynomial| s.sub(&Polynomial::zero(), f);
    PrintedRecord {
        depth: Some(1),
        dim: Some(2),
        betti: Some(vec![1, 3, 2]),
        betti_golden: false,
        resolution: vec![
            vec![vec![z.clone()], vec![zero.clone()], vec![y.clone()]],
            vec![vec![y, neg(&x), zero.clone()], vec![zero, z, neg(&x)]],
        ],
        lyubeznik: vec![],
        stage_support: None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    Depth,
    Dim,
    BettiTotals,
    ResolutionComposition,
    LyubeznikTable,
    StageSupport,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GoldenCheck {
    pub case_id: String,
    pub quantity: Quantity,
    pub printed: String,
    pub computed: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Discrepancy {
    pub case_id: String,
    pub quantity: Quantity,
    pub printed: String,
    pub computed: String,
    pub note: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrintedComparison {
    pub goldens: Vec<GoldenCheck>,
    pub discrepancies: Vec<Discrepancy>,
}

fn list(v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn trimmed(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Entries of `d_k ∘ d_{k+1}` that are nonzero in `R`, as
/// `(row, column, value)`.
pub fn composition_defects(ring: &Ring, first: &[Vec<Polynomial>], second: &[Vec<Polynomial>]) -> Vec<(usize, usize, Polynomial)> {
    let rows = first.first().map_or(0, |c| c.len());
    let mut out = Vec::new();
    for (b, col) in second.iter().enumerate() {
        for a in 0..rows {
            let mut acc = Polynomial::zero();
            for (k, coeff) in col.iter().enumerate() {
                acc = ring.add(&acc, &ring.mul(&first[k][a], coeff));
            }
            let acc = ring.normal_form(&acc);
            if !acc.is_zero() {
                out.push((a, b, acc));
            }
        }
    }
    out
}

fn record_or_golden(
    out: &mut PrintedComparison,
    case: &ExampleCase,
    quantity: Quantity,
    golden: bool,
    printed: String,
    computed: String,
    note: &str,
) {
    let agrees = printed == computed;
    if golden {
        out.goldens.push(GoldenCheck {
            case_id: case.id.clone(),
            quantity,
            printed,
            computed,
            passed: agrees,
        });
    } else if !agrees {
        out.discrepancies.push(Discrepancy {
            case_id: case.id.clone(),
            quantity,
            printed,
            computed,
            note: note.to_string(),
        });
    }
}

/// Compares every printed value of a case with its computed counterpart.
/// Depth and dimension are always golden.
pub fn compare_case(case: &ExampleCase, t_stages: u32) -> Result<PrintedComparison> {
    let mut out = PrintedComparison::default();
    let Some(rec) = &case.printed else {
        return Ok(out);
    };
    let m = case.module()?;
    if let Some(d) = rec.depth {
        let computed = invariants::depth(&m)?;
        record_or_golden(&mut out, case, Quantity::Depth, true, d.to_string(), computed.to_string(), "");
    }
    if let Some(d) = rec.dim {
        record_or_golden(&mut out, case, Quantity::Dim, true, d.to_string(), m.krull_dim().to_string(), "");
    }
    if let Some(b) = &rec.betti {
        let table = resolution::betti_table(&m, m.nvars() + 1)?;
        let computed = trimmed(table.totals());
        let (lo, hi) = koszul::default_window(&m);
        let mut tor = vec![0u64; m.nvars() + 1];
        for ((i, _), v) in koszul::koszul_betti(&m, lo, hi) {
            tor[i] += v;
        }
        let tor = trimmed(tor);
        let note = if tor == computed {
            "Koszul homology gives the same totals".to_string()
        } else {
            format!("Koszul homology gives {}", list(&tor))
        };
        record_or_golden(
            &mut out,
            case,
            Quantity::BettiTotals,
            rec.betti_golden,
            list(b),
            list(&computed),
            &note,
        );
    }
    let r = case.quotient_ring()?;
    for (k, pair) in rec.resolution.windows(2).enumerate() {
        let defects = composition_defects(&r, &pair[0], &pair[1]);
        if !defects.is_empty() {
            let entries: Vec<String> = defects
                .iter()
                .map(|(a, b, f)| format!("[{a},{b}] = {}", r.format(f)))
                .collect();
            out.discrepancies.push(Discrepancy {
                case_id: case.id.clone(),
                quantity: Quantity::ResolutionComposition,
                printed: format!("d{} * d{} = 0", k + 1, k + 2),
                computed: entries.join("; "),
                note: "the printed complex is not a complex modulo the defining ideal".into(),
            });
        }
    }
    if !rec.lyubeznik.is_empty() {
        let bound = rec.lyubeznik.iter().map(|((i, _), _)| *i).max().unwrap_or(0);
        let table = cohomology::lyubeznik_table(&r, bound)?;
        let mut keys: Vec<(usize, usize)> = rec.lyubeznik.iter().map(|(k, _)| *k).collect();
        keys.extend(table.values.keys().copied());
        keys.sort();
        keys.dedup();
        let fmt = |get: &dyn Fn(usize, usize) -> u64| {
            keys.iter()
                .map(|&(i, j)| format!("l{i},{j} = {}", get(i, j)))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let printed_get = |i: usize, j: usize| {
            rec.lyubeznik
                .iter()
                .find(|(k, _)| *k == (i, j))
                .map_or(0, |(_, v)| *v)
        };
        record_or_golden(
            &mut out,
            case,
            Quantity::LyubeznikTable,
            false,
            fmt(&printed_get),
            fmt(&|i, j| table.get(i, j)),
            "computed as Betti numbers over R of the Matlis duals Ext^{n-j}_S(R, S(-n))",
        );
    }
    if let Some(printed) = &rec.stage_support {
        let vars: Vec<Polynomial> = (0..m.nvars()).map(|i| case.ring.var(i)).collect();
        for t in 1..=t_stages {
            let powers: Vec<Polynomial> = vars.iter().map(|v| v.pow(case.ring.field(), t, m.nvars())).collect();
            let mut ideal = case.ideal.clone();
            ideal.extend(powers);
            let q = PresentedModule::cyclic(case.ring.clone(), &ideal)?;
            let duals = cohomology::duality_modules(&q)?;
            let support = cohomology::cohomology_support(&duals);
            let computed: Vec<usize> = (0..support.nonzero.len()).filter(|&i| support.nonzero[i]).collect();
            let show = |v: &[usize]| format!("t = {t}: H^i nonzero for i in {v:?}");
            record_or_golden(
                &mut out,
                case,
                Quantity::StageSupport,
                false,
                show(printed),
                show(&computed),
                "the stage is Artinian, so only H^0 survives",
            );
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builtin_cases;
    use gradedkernel::FieldSpec;

    #[test]
    fn printed_resolutions_fail_composition() {
        for case in builtin_cases(FieldSpec::default()).iter().filter(|c| c.printed.is_some()) {
            let rec = case.printed.as_ref().unwrap();
            if rec.resolution.is_empty() {
                continue;
            }
            let r = case.quotient_ring().unwrap();
            assert!(!composition_defects(&r, &rec.resolution[0], &rec.resolution[1]).is_empty(), "{}", case.id);
        }
    }
}
