mod common;

use std::collections::BTreeMap;
use std::process::Command;

use gkcli::report::CommandOutput;
use gkcli::*;
use gkverify::{default_corpus, ExampleCase, Quantity, TableEntry};
use gradedkernel::module::PresentedModule;
use gradedkernel::{cohomology, koszul, FieldSpec, RingContext};
use proptest::prelude::*;

fn run(src: &str, flags: &Flags) -> ReportDocument {
    execute(&parse_session(src).unwrap(), flags)
}

fn outputs(doc: &ReportDocument) -> BTreeMap<String, &CommandOutput> {
    doc.results.iter().map(|r| (r.statement.clone(), &r.output)).collect()
}

fn as_map(entries: &[TableEntry]) -> BTreeMap<(i64, i64), u64> {
    entries.iter().map(|e| ((e.i, e.j), e.dim)).collect()
}

fn case_script(case: &ExampleCase, commands: &[&str]) -> String {
    let s = case.summary();
    let mut src = format!("ring S = {} [{}];\n", case.ring.field(), s.variables.join(", "));
    if s.ideal.is_empty() {
        src.push_str("module M = coker [[0]];\n");
    } else {
        src.push_str(&format!("ideal I = {};\nmodule M = quotient I;\n", s.ideal.join(", ")));
    }
    for c in commands {
        src.push_str(&format!("{c} M;\n"));
    }
    src
}

#[test]
fn worked_examples_script() {
    let doc = run(common::WORKED, &Flags::default());
    assert!(doc.error.is_none(), "{:?}", doc.error);
    assert_eq!(exit_code(&doc), exit::OK);
    let out = outputs(&doc);
    let scalar = |k: &str| match out[k] {
        CommandOutput::Depth { value, .. } => *value as i64,
        CommandOutput::Dim { value, .. } => *value as i64,
        other => panic!("{other:?}"),
    };
    assert_eq!((scalar("depth M"), scalar("dim M")), (1, 1));
    assert_eq!((scalar("depth R1"), scalar("dim R1")), (2, 2));
    assert_eq!((scalar("depth R2"), scalar("dim R2")), (1, 2));

    let CommandOutput::Betti { table, totals, .. } = out["betti M"] else { panic!() };
    assert_eq!(as_map(table), BTreeMap::from([((0, 0), 1), ((1, 2), 1)]));
    assert_eq!(totals, &[1, 1]);

    // Koszul homology of S/(xz, yz) as the oracle
    let s = RingContext::polynomial_ring(&["x", "y", "z"], FieldSpec::default());
    let m = PresentedModule::cyclic(s.clone(), &[s.monomial(&[1, 0, 1]), s.monomial(&[0, 1, 1])]).unwrap();
    let (lo, hi) = koszul::default_window(&m);
    let tor: BTreeMap<(i64, i64), u64> = koszul::koszul_betti(&m, lo, hi)
        .into_iter()
        .map(|((i, j), v)| ((i as i64, j as i64), v))
        .collect();
    let CommandOutput::Betti { table, totals, .. } = out["betti R2"] else { panic!() };
    assert_eq!(as_map(table), tor);
    assert_eq!(totals, &[1, 2, 1]);

    // no syzygy between the two columns of the coker matrix
    let CommandOutput::Betti { table, .. } = out["betti F"] else { panic!() };
    assert_eq!(as_map(table), BTreeMap::from([((0, 0), 2), ((1, 1), 1), ((1, 2), 1)]));

    let CommandOutput::Canonical { module, .. } = out["canonical H"] else { panic!() };
    assert_eq!(module.generator_degrees, vec![1]);

    let CommandOutput::Verify { report } = out["verify all"] else { panic!() };
    assert!(report.goldens_pass());
    let betti: Vec<&str> = report
        .discrepancies
        .iter()
        .filter(|d| d.quantity == Quantity::BettiTotals)
        .map(|d| d.computed.as_str())
        .collect();
    assert_eq!(betti, ["(1, 1)", "(1, 2, 1)"]);
}

#[test]
fn corpus_reports_round_trip_and_match_oracles() {
    for case in default_corpus(0, FieldSpec::default()) {
        let src = case_script(&case, &["betti", "depth", "dim", "hilbert", "localcoh"]);
        let doc = run(&src, &Flags::default());
        assert!(doc.error.is_none(), "{}: {:?}", case.id, doc.error);
        let back = ReportDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc, "{}", case.id);

        let m = case.module().unwrap();
        let out = outputs(&doc);
        let CommandOutput::Betti { table, .. } = out["betti M"] else { panic!() };
        let (lo, hi) = koszul::default_window(&m);
        let tor: BTreeMap<(i64, i64), u64> = koszul::koszul_betti(&m, lo, hi)
            .into_iter()
            .map(|((i, j), v)| ((i as i64, j as i64), v))
            .collect();
        assert_eq!(as_map(table), tor, "{}", case.id);

        let CommandOutput::Localcoh { table, window, .. } = out["localcoh M"] else { panic!() };
        let cech = cohomology::cech_table(&m, window.0, window.1).unwrap();
        let cech: BTreeMap<(i64, i64), u64> = cech.dims.iter().map(|(&(i, j), &v)| ((i as i64, j as i64), v)).collect();
        assert_eq!(as_map(table), cech, "{}", case.id);
    }
}

#[test]
fn text_and_json_carry_the_same_numbers() {
    let doc = run(common::WORKED, &Flags::default());
    let mut checked = 0;
    for r in &doc.results {
        let text = render::render_output(&r.output);
        match &r.output {
            CommandOutput::Betti { table, .. } => {
                assert_eq!(common::read_betti_text(&text), as_map(table), "{}", r.statement);
                checked += 1;
            }
            CommandOutput::Localcoh { table, .. } => {
                assert_eq!(common::read_cohomology_text(&text), as_map(table), "{}", r.statement);
                checked += 1;
            }
            CommandOutput::Formal { stages, .. } => {
                let chunks: Vec<&str> = text.split("stage t = ").skip(1).collect();
                assert_eq!(chunks.len(), stages.len());
                for (chunk, st) in chunks.iter().zip(stages) {
                    assert_eq!(common::read_cohomology_text(chunk), as_map(&st.table));
                    checked += 1;
                }
            }
            CommandOutput::Depth { value, .. } => {
                assert!(text.ends_with(&format!("= {value}\n")));
                checked += 1;
            }
            CommandOutput::Dim { value, .. } => {
                assert!(text.ends_with(&format!("= {value}\n")));
                checked += 1;
            }
            _ => {}
        }
    }
    assert_eq!(checked, 15);
}

#[test]
fn golden_failures_exit_with_three() {
    let mut doc = run("verify C9;", &Flags::default());
    assert_eq!(exit_code(&doc), exit::OK);
    let CommandOutput::Verify { report } = &mut doc.results[0].output else { panic!() };
    report.goldens[0].passed = false;
    assert_eq!(exit_code(&doc), exit::GOLDEN);
}

#[test]
fn engine_errors_carry_the_statement_location() {
    let doc = run(
        "ring S = QQ [x, y, z];\nideal I = x*y - z^2;\nmodule M = quotient I;\nass M;\ndepth M;",
        &Flags::default(),
    );
    let e = doc.error.as_ref().unwrap();
    assert_eq!(e.location, Location { line: 4, column: 1 });
    assert_eq!(e.statement, "ass M");
    assert!(doc.results.is_empty());
    assert_eq!(exit_code(&doc), exit::ENGINE);

    let doc = run("ring S = QQ [x, y, z];\nmodule F = coker [[x, y], [1, z]];", &Flags::default());
    assert!(doc.error.unwrap().message.contains("homogeneous"));
    let doc = run("ring S = ZZ/15 [x];", &Flags::default());
    assert!(doc.error.is_some());
}

#[test]
fn field_flag_overrides_declarations() {
    // a complete intersection over QQ, but (x^2, xy) modulo 7
    let src = "ring S = QQ [x, y];\nideal I = x^2 - 7y^2, x*y;\nmodule M = quotient I;\nbetti M;";
    let betti = |doc: &ReportDocument| {
        let CommandOutput::Betti { table, .. } = &doc.results[0].output else { panic!() };
        as_map(table)
    };
    let doc = run(src, &Flags::default());
    assert_eq!(doc.metadata.field, None);
    assert_eq!(betti(&doc), BTreeMap::from([((0, 0), 1), ((1, 2), 2), ((2, 4), 1)]));
    let flags = Flags {
        field: Some(FieldSpec::Prime(7)),
        ..Flags::default()
    };
    let doc = run(src, &flags);
    assert_eq!(doc.metadata.field.as_deref(), Some("ZZ/7"));
    assert_eq!(betti(&doc), BTreeMap::from([((0, 0), 1), ((1, 2), 2), ((2, 3), 1)]));
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gradedkernel"))
}

fn run_binary(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> (i32, String, String) {
    use std::io::Write;
    let mut cmd = binary();
    cmd.args(args)
        .env_remove("GRADEDKERNEL_SEED")
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn binary_exit_codes() {
    let ok = "ring S = ZZ/32003 [x, y]; ideal I = x*y; module M = quotient I; depth M; dim M;";
    let (code, out, _) = run_binary(&[], ok, &[]);
    assert_eq!(code, 0);
    assert_eq!(out, "> depth M\ndepth M = 1\n> dim M\ndim M = 1\n");

    let (code, _, err) = run_binary(&[], "ring S = QQ [x];\nbetti M;", &[]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2, column 7"), "{err}");

    let (code, _, err) = run_binary(&[], "ring S = QQ [x, y];\nideal I = x + y^2;", &[]);
    assert_eq!(code, 1);
    assert!(err.contains("line 2, column 1"), "{err}");

    let (code, _, err) = run_binary(&["--timeout", "0"], "verify all;", &[]);
    assert_eq!(code, 1);
    assert!(err.contains("timed out"), "{err}");
}

#[test]
fn seed_comes_from_the_environment() {
    let dir = std::env::temp_dir().join(format!("gk-seed-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    let script = "verify C9;";
    let (code, _, _) = run_binary(&["--json", a.to_str().unwrap()], script, &[("GRADEDKERNEL_SEED", "5")]);
    assert_eq!(code, 0);
    let (code, _, _) = run_binary(&["--json", b.to_str().unwrap(), "--seed", "5"], script, &[("GRADEDKERNEL_SEED", "9")]);
    assert_eq!(code, 0);
    let a = ReportDocument::from_json(&std::fs::read_to_string(a).unwrap()).unwrap();
    let b = ReportDocument::from_json(&std::fs::read_to_string(b).unwrap()).unwrap();
    assert_eq!(a.metadata.seed, 5);
    assert_eq!(a, b);
    let CommandOutput::Verify { report } = &a.results[0].output else { panic!() };
    assert!(report.cases.iter().any(|c| c.id == "gen-5-00"));
    let _ = std::fs::remove_dir_all(dir);
}

#[test]
fn window_flag_accepts_negative_bounds() {
    let script = "ring S = QQ [x, y]; module M = coker [[0]]; localcoh M;";
    let (code, out, _) = run_binary(&["--window", "-3:0"], script, &[]);
    assert_eq!(code, 0);
    let table = common::read_cohomology_text(&out);
    // H^2 of k[x, y] has dimension -j - 1 in degree j <= -2
    assert_eq!(table, BTreeMap::from([((2, -3), 2), ((2, -2), 1)]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn monomial_scripts_match_koszul(exps in proptest::collection::vec(proptest::collection::vec(0u16..3, 3), 1..4)) {
        let s = RingContext::polynomial_ring(&["x", "y", "z"], FieldSpec::default());
        let gens: Vec<_> = exps.iter().filter(|e| e.iter().any(|x| *x > 0)).map(|e| s.monomial(e)).collect();
        prop_assume!(!gens.is_empty());
        let text: Vec<String> = gens.iter().map(|g| s.format(g)).collect();
        let src = format!("ring S = ZZ/32003 [x, y, z]; ideal I = {}; module M = quotient I; betti M;", text.join(", "));
        let doc = run(&src, &Flags::default());
        let CommandOutput::Betti { table, .. } = &doc.results[0].output else { panic!() };
        let m = PresentedModule::cyclic(s.clone(), &gens).unwrap();
        let (lo, hi) = koszul::default_window(&m);
        let tor: BTreeMap<(i64, i64), u64> = koszul::koszul_betti(&m, lo, hi)
            .into_iter()
            .map(|((i, j), v)| ((i as i64, j as i64), v))
            .collect();
        prop_assert_eq!(as_map(table), tor);
        prop_assert_eq!(ReportDocument::from_json(&doc.to_json()).unwrap(), doc);
    }
}
