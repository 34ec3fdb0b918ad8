mod common;

use std::panic::catch_unwind;

use gkcli::parse_bytes;

#[test]
fn parser_is_total_on_random_input() {
    let mut parsed = 0;
    for (k, input) in common::fuzz_inputs(7, 100_000).enumerate() {
        let result = catch_unwind(|| parse_bytes(&input));
        let Ok(result) = result else {
            panic!("parser panicked on input {k}: {:?}", String::from_utf8_lossy(&input));
        };
        match result {
            Ok(script) => {
                parsed += 1;
                assert!(script.statements.len() <= input.iter().filter(|b| **b == b';').count());
            }
            Err(e) => {
                let lines = 1 + input.iter().filter(|b| **b == b'\n').count();
                assert!(e.location.line >= 1 && e.location.line <= lines, "{e}");
                assert!(e.location.column >= 1);
            }
        }
    }
    // mutated scripts still parse now and then
    assert!(parsed > 100, "{parsed}");
}
