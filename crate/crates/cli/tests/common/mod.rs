#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const WORKED: &str = include_str!("../../fixtures/worked_examples.gk");

const VOCAB: &[&str] = &[
    "ring", "ideal", "module", "quotient", "coker", "betti", "depth", "dim", "hilbert", "localcoh", "ext", "hom",
    "canonical", "lyubeznik", "ass", "formal", "verify", "all", "C3", "C10-ass-rhs", "QQ", "ZZ", "S", "T", "I", "J",
    "M", "N", "x", "y", "z", "=", ";", "[", "]", "(", ")", ",", "+", "-", "*", "^", "/", "0", "1", "2", "7", "32003",
    "65536", "99999999999999999999", "#", "\n", " ", "\t", "é", "\u{0}",
];

const SEEDS: &[&str] = &[
    "ring S = ZZ/32003 [x, y]; ideal I = x*y; module M = quotient I; betti M;",
    "ring S = QQ [x, y, z]; ideal I = x*y - z^2, 3x^2 - -y*z; module M = quotient I; depth M; dim M;",
    "ring S = ZZ/7 [a, b]; module F = coker [[a, b^2], [b, a^2]]; ext F F 1; hom F F;",
    "ring S = QQ [x]; ideal A = x; module M = quotient A; formal M A 3; verify C3; verify all;",
];

/// One fuzz input: raw bytes, printable noise, token soup, or a mutated
/// valid script.
pub fn fuzz_input(rng: &mut ChaCha8Rng) -> Vec<u8> {
    match rng.gen_range(0..4) {
        0 => (0..rng.gen_range(0..64)).map(|_| rng.gen()).collect(),
        1 => (0..rng.gen_range(0..96)).map(|_| rng.gen_range(0x20u8..0x7f)).collect(),
        2 => {
            let mut s = String::new();
            for _ in 0..rng.gen_range(0..40) {
                s.push_str(VOCAB[rng.gen_range(0..VOCAB.len())]);
                if rng.gen_bool(0.5) {
                    s.push(' ');
                }
            }
            s.into_bytes()
        }
        _ => {
            let mut b = SEEDS[rng.gen_range(0..SEEDS.len())].as_bytes().to_vec();
            for _ in 0..rng.gen_range(1..5) {
                let at = rng.gen_range(0..=b.len());
                match rng.gen_range(0..3) {
                    0 if at < b.len() => {
                        let end = (at + rng.gen_range(1..6)).min(b.len());
                        b.drain(at..end);
                    }
                    1 => {
                        let tok = VOCAB[rng.gen_range(0..VOCAB.len())].as_bytes();
                        b.splice(at..at, tok.iter().copied());
                    }
                    _ => b.insert(at, rng.gen()),
                }
            }
            b
        }
    }
}

pub fn fuzz_inputs(seed: u64, count: usize) -> impl Iterator<Item = Vec<u8>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(move |_| fuzz_input(&mut rng))
}

/// Entries `(i, j) -> dim` read back from a rendered Betti diagram.
pub fn read_betti_text(text: &str) -> BTreeMap<(i64, i64), u64> {
    let mut out = BTreeMap::new();
    let mut lines = text.lines();
    let header: Vec<i64> = lines.next().unwrap().split_whitespace().map(|s| s.parse().unwrap()).collect();
    for line in lines {
        let mut cells = line.split_whitespace();
        let label = cells.next().unwrap();
        let Some(row) = label.strip_suffix(':').and_then(|r| r.parse::<i64>().ok()) else { continue };
        for (i, c) in header.iter().zip(cells) {
            if c != "." {
                out.insert((*i, row + i), c.parse().unwrap());
            }
        }
    }
    out
}

/// Entries `(i, j) -> dim` read back from a rendered cohomology table.
pub fn read_cohomology_text(text: &str) -> BTreeMap<(i64, i64), u64> {
    let mut out = BTreeMap::new();
    let mut js: Vec<i64> = Vec::new();
    for line in text.lines() {
        let mut cells = line.split_whitespace();
        match cells.next() {
            Some("j:") => js = cells.map(|s| s.parse().unwrap()).collect(),
            Some(h) if h.starts_with("H^") => {
                let i: i64 = h[2..h.len() - 1].parse().unwrap();
                for (j, c) in js.iter().zip(cells) {
                    if c != "." {
                        out.insert((i, *j), c.parse().unwrap());
                    }
                }
            }
            _ => {}
        }
    }
    out
}
