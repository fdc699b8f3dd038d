#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use spatial_milnor::diagram::{parse, EmbeddingCode};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap()
}

pub fn fixture(name: &str) -> EmbeddingCode {
    parse(&fixture_text(name)).unwrap()
}

/// All diagram fixtures, sorted by name.
pub fn diagram_fixtures() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(fixture_path(""))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".sg"))
        .collect();
    names.sort();
    names
}

/// Linking number of two components by signed crossing count, read straight
/// from the code text: half the sum of signs over crossings whose two
/// passages lie on edges of the two colors.
pub fn linking_number_oracle(text: &str, a: u32, b: u32) -> i64 {
    let mut seen: BTreeMap<u32, Vec<(u32, i64)>> = BTreeMap::new();
    for line in text.lines() {
        let toks: Vec<&str> = line.split('#').next().unwrap().split_whitespace().collect();
        if toks.first() != Some(&"edge") {
            continue;
        }
        let color: u32 = toks[3].parse().unwrap();
        let at = toks.iter().position(|t| *t == "passes").unwrap();
        for ev in &toks[at + 1..] {
            let sign = if ev.ends_with('+') { 1 } else { -1 };
            let id: u32 = ev[1..ev.len() - 2].parse().unwrap();
            seen.entry(id).or_default().push((color, sign));
        }
    }
    let mut total = 0;
    for occ in seen.values() {
        let (c1, c2) = (occ[0].0, occ[1].0);
        if (c1, c2) == (a, b) || (c1, c2) == (b, a) {
            total += occ[0].1;
        }
    }
    assert_eq!(total % 2, 0, "odd sign sum between {a} and {b}");
    total / 2
}
