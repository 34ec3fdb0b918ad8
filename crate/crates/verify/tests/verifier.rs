use std::collections::{BTreeMap, BTreeSet};

use gkverify::claims::Witness;
use gkverify::*;
use gradedkernel::FieldSpec;

fn corpus() -> Vec<ExampleCase> {
    default_corpus(0, FieldSpec::default())
}

fn report(bounds: Bounds) -> VerificationReport {
    verify_all(&corpus(), &ClaimId::ALL, bounds)
}

#[test]
fn every_applicable_triple_gets_a_verdict() {
    let cases = corpus();
    assert_eq!(cases.len(), 25);
    let rep = verify_all(&cases, &ClaimId::ALL, Bounds::default());
    let total = rep.summary.total;
    assert_eq!(total.pass + total.fail + total.inconclusive, rep.claims.len());
    // all claims on all cases except the CM-only ones on non-CM cases
    let per_case = |id: &str| rep.claims.iter().filter(|r| r.case_id == id).count();
    for c in &cases {
        let n = per_case(&c.id);
        assert!(n == 20 || n == 14, "{}: {n}", c.id);
    }
    assert!(rep.goldens_pass());
}

#[test]
fn readings_are_reported_separately() {
    let rep = report(Bounds::default());
    let mut seen: BTreeMap<(ClaimId, String), BTreeSet<Reading>> = BTreeMap::new();
    for r in &rep.claims {
        assert!(seen.entry((r.claim, r.case_id.clone())).or_default().insert(r.reading));
    }
    assert!(seen.values().all(|s| s.len() == 2));
}

#[test]
fn witnesses_reproduce_their_verdicts() {
    let rep = report(Bounds::default());
    for r in &rep.claims {
        let json = serde_json::to_string(&r.witness).unwrap();
        let back: Witness = serde_json::from_str(&json).unwrap();
        assert_eq!(back.evaluate(r.claim), r.verdict, "{} {} {}", r.claim, r.case_id, r.reading);
    }
}

#[test]
fn raising_bounds_never_flips_a_decided_verdict() {
    let low = report(Bounds {
        t_max: 3,
        window: Some((-6, 1)),
        max_length: 2,
    });
    let high = report(Bounds {
        t_max: 5,
        window: None,
        max_length: 3,
    });
    assert_eq!(low.claims.len(), high.claims.len());
    for (a, b) in low.claims.iter().zip(&high.claims) {
        assert_eq!((a.claim, &a.case_id, a.reading), (b.claim, &b.case_id, b.reading));
        if a.verdict != Verdict::Inconclusive {
            assert_eq!(a.verdict, b.verdict, "{} {} {}", a.claim, a.case_id, a.reading);
        }
    }
}

#[test]
fn vanishing_above_dimension_holds_for_xy() {
    let case = &corpus()[0];
    assert_eq!(case.id, "printed-xy");
    for reading in Reading::ALL {
        let r = run_claim(ClaimId::C9, case, reading, Bounds::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
    }
}

fn free_plane() -> ExampleCase {
    corpus().into_iter().find(|c| c.id == "free-plane").unwrap()
}

#[test]
fn literal_reading_breaks_vanishing_below_depth() {
    let r = run_claim(ClaimId::C1, &free_plane(), Reading::Literal, Bounds::default()).unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
    let Witness::Tower(w) = &r.witness else { panic!() };
    assert_eq!(w.depth, 2);
    assert!(w.stages.iter().all(|s| s.nonzero == [0]));
    for s in &w.stages {
        let h0: u64 = s.dims.iter().filter(|e| e.i == 0).map(|e| e.dim).sum();
        // S/m^t has dimension t(t+1)/2
        assert_eq!(h0, (s.t * (s.t + 1) / 2) as u64);
    }
}

#[test]
fn two_ideal_reading_breaks_depth_characterization() {
    let r = run_claim(ClaimId::C7, &free_plane(), Reading::TwoIdeal, Bounds::default()).unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
    let Witness::Tower(w) = &r.witness else { panic!() };
    assert_eq!(w.depth, 2);
    assert!(w.stages.iter().all(|s| s.nonzero == [1]));
}

#[test]
fn cm_only_claims_skip_non_cm_cases() {
    let case = corpus().into_iter().find(|c| c.id == "printed-non-cm").unwrap();
    assert!(run_claim(ClaimId::C3, &case, Reading::Literal, Bounds::default()).is_none());
    assert!(run_claim(ClaimId::C6, &case, Reading::Literal, Bounds::default()).is_some());
}

#[test]
fn non_monomial_associated_primes_are_inconclusive() {
    let case = corpus().into_iter().find(|c| c.id == "printed-hypersurface").unwrap();
    let r = run_claim(ClaimId::C10, &case, Reading::Literal, Bounds::default()).unwrap();
    assert_eq!(r.verdict, Verdict::Inconclusive);
    assert!(r.notes.iter().any(|n| n.contains("monomial")));
}

#[test]
fn discrepancies_name_both_betti_tables() {
    let rep = verify_all(&builtin_cases(FieldSpec::default()), &[], Bounds::default());
    let betti: BTreeSet<(String, String, String)> = rep
        .discrepancies
        .iter()
        .filter(|d| d.quantity == Quantity::BettiTotals)
        .map(|d| (d.case_id.clone(), d.printed.clone(), d.computed.clone()))
        .collect();
    let expected: BTreeSet<(String, String, String)> = [
        ("printed-hypersurface", "(1, 3, 1)", "(1, 1)"),
        ("printed-non-cm", "(1, 3, 2)", "(1, 2, 1)"),
    ]
    .into_iter()
    .map(|(a, b, c)| (a.into(), b.into(), c.into()))
    .collect();
    assert_eq!(betti, expected);
    let compositions: BTreeSet<&str> = rep
        .discrepancies
        .iter()
        .filter(|d| d.quantity == Quantity::ResolutionComposition)
        .map(|d| d.case_id.as_str())
        .collect();
    assert_eq!(compositions, BTreeSet::from(["printed-hypersurface", "printed-non-cm"]));
    assert!(rep.goldens_pass());
    assert!(rep.claims.is_empty());
}

#[test]
fn both_fields_agree_on_the_worked_examples() {
    let a = verify_all(&builtin_cases(FieldSpec::default())[..3], &ClaimId::ALL, Bounds::default());
    let b = verify_all(&builtin_cases(FieldSpec::Rationals)[..3], &ClaimId::ALL, Bounds::default());
    let verdicts = |r: &VerificationReport| r.claims.iter().map(|c| c.verdict).collect::<Vec<_>>();
    assert_eq!(verdicts(&a), verdicts(&b));
    assert_eq!(a.discrepancies.len(), b.discrepancies.len());
}
