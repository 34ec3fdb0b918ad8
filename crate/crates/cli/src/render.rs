//! Text output. Everything printed here is read back from the report
//! document, so text and JSON carry the same numbers.

use std::collections::BTreeMap;
use std::fmt::Write;

use gkverify::TableEntry;
use gradedkernel::cohomology::CohomologyTable;
use gradedkernel::resolution::BettiTable;

use crate::report::*;

/// Rows indexed by `j - i`, columns by `i`, dots for zeros, totals last.
pub fn render_betti(table: &BettiTable) -> String {
    table.render()
}

pub fn betti_from_entries(entries: &[TableEntry], truncated: bool) -> BettiTable {
    BettiTable {
        entries: entries.iter().map(|e| ((e.i as usize, e.j as i32), e.dim)).collect(),
        truncated,
    }
}

pub fn cohomology_from_entries(entries: &[TableEntry], window: (i32, i32)) -> CohomologyTable {
    CohomologyTable {
        dims: entries.iter().map(|e| ((e.i as usize, e.j as i32), e.dim)).collect(),
        window,
    }
}

fn series(coeffs: &[Coefficient]) -> String {
    if coeffs.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        let mag = c.value.unsigned_abs();
        if k == 0 {
            if c.value < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c.value < 0 { " - " } else { " + " });
        }
        let mono = match c.degree {
            0 => String::new(),
            1 => "t".into(),
            d => format!("t^{d}"),
        };
        match (mag, mono.is_empty()) {
            (_, true) => out.push_str(&mag.to_string()),
            (1, false) => out.push_str(&mono),
            (_, false) => out.push_str(&format!("{mag}{mono}")),
        }
    }
    out
}

fn hilbert(h: &HilbertData) -> String {
    let mut out = format!("  series: ({}) / (1 - t)^{}\n", series(&h.numerator), h.denominator_exponent);
    let _ = writeln!(out, "  dimension: {}", h.dimension);
    let vals: Vec<String> = h.values.iter().map(|c| format!("{}:{}", c.degree, c.value)).collect();
    let _ = writeln!(out, "  values: {}", vals.join(" "));
    out
}

fn module(m: &ModuleData) -> String {
    let degs: Vec<String> = m.generator_degrees.iter().map(|d| d.to_string()).collect();
    let mut out = format!("  generators in degrees [{}]\n", degs.join(", "));
    for col in &m.relations {
        let _ = writeln!(out, "  relation ({})", col.join(", "));
    }
    out + &hilbert(&m.hilbert)
}

fn lyubeznik(table: &[TableEntry]) -> String {
    if table.is_empty() {
        return "0\n".into();
    }
    let map: BTreeMap<(i64, i64), u64> = table.iter().map(|e| ((e.i, e.j), e.dim)).collect();
    let imax = table.iter().map(|e| e.i).max().unwrap();
    let jmax = table.iter().map(|e| e.j).max().unwrap();
    let mut out = String::from("  i\\j");
    for j in 0..=jmax {
        let _ = write!(out, " {j:>3}");
    }
    out.push('\n');
    for i in 0..=imax {
        let _ = write!(out, "{i:>5}");
        for j in 0..=jmax {
            match map.get(&(i, j)) {
                Some(v) => {
                    let _ = write!(out, " {v:>3}");
                }
                None => out.push_str("   ."),
            }
        }
        out.push('\n');
    }
    out
}

pub fn render_output(output: &CommandOutput) -> String {
    match output {
        CommandOutput::Betti { table, truncated, .. } => render_betti(&betti_from_entries(table, *truncated)),
        CommandOutput::Depth { module, value } => format!("depth {module} = {value}\n"),
        CommandOutput::Dim { module, value } => format!("dim {module} = {value}\n"),
        CommandOutput::Hilbert { hilbert: h, .. } => hilbert(h),
        CommandOutput::Localcoh { nvars, window, table, .. } => {
            cohomology_from_entries(table, *window).render(*nvars)
        }
        CommandOutput::Ext { module: m, .. } | CommandOutput::Hom { module: m, .. } | CommandOutput::Canonical { module: m, .. } => {
            module(m)
        }
        CommandOutput::Lyubeznik { table, truncated, .. } => {
            let mut out = lyubeznik(table);
            if *truncated {
                out.push_str("(truncated)\n");
            }
            out
        }
        CommandOutput::Ass { primes, .. } => {
            let mut out = String::new();
            for p in primes {
                let _ = writeln!(out, "  ({}) dim {} witness {}", p.generators.join(", "), p.dim, p.witness);
            }
            if primes.is_empty() {
                out.push_str("  none\n");
            }
            out
        }
        CommandOutput::Formal {
            nvars,
            window,
            stages,
            stabilization,
            ..
        } => {
            let mut out = String::new();
            for s in stages {
                let len = s.length.map_or("infinite".to_string(), |l| l.to_string());
                let _ = writeln!(out, "stage t = {} (length {len})", s.t);
                out.push_str(&cohomology_from_entries(&s.table, *window).render(*nvars));
            }
            let unstable: Vec<String> = stabilization
                .iter()
                .filter(|s| s.from_stage.is_none())
                .map(|s| format!("({}, {})", s.i, s.j))
                .collect();
            if unstable.is_empty() {
                out.push_str("every nonzero entry is constant over the last stages\n");
            } else {
                let _ = writeln!(out, "not stabilized at (i, j): {}", unstable.join(" "));
            }
            out
        }
        CommandOutput::Verify { report } => {
            let mut out = format!("field {}, {} cases, {} claim reports\n", report.field, report.cases.len(), report.claims.len());
            for (key, c) in &report.summary.by_claim {
                let _ = writeln!(out, "  {key}: {} pass, {} fail, {} inconclusive", c.pass, c.fail, c.inconclusive);
            }
            for g in &report.goldens {
                let status = if g.passed { "ok" } else { "FAILED" };
                let _ = writeln!(
                    out,
                    "  golden {} {:?}: printed {}, computed {} {status}",
                    g.case_id, g.quantity, g.printed, g.computed
                );
            }
            for d in &report.discrepancies {
                let _ = writeln!(
                    out,
                    "  discrepancy {} {:?}: printed {}, computed {}",
                    d.case_id, d.quantity, d.printed, d.computed
                );
            }
            for n in &report.notes {
                let _ = writeln!(out, "  note: {n}");
            }
            out
        }
    }
}

pub fn render_report(doc: &ReportDocument) -> String {
    let mut out = String::new();
    for r in &doc.results {
        let _ = writeln!(out, "> {}", r.statement);
        out.push_str(&render_output(&r.output));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_module_renders_as_zero() {
        assert_eq!(render_betti(&BettiTable::default()), "0\n");
    }

    #[test]
    fn series_signs() {
        let c = |degree, value| Coefficient { degree, value };
        assert_eq!(series(&[c(0, 1), c(2, -1)]), "1 - t^2");
        assert_eq!(series(&[c(1, -2), c(3, 1)]), "-2t + t^3");
    }
}
