//! Reference degree-sequence rows and the compact row notation
//! `(2), (1,2), (2,4)^2`.

use super::fiber::DegreeSequence;
use crate::error::{Error, Result};

/// Rows for `Z/N`, `N = 4..13`, one sequence per CM j-invariant.
pub const CYCLIC_ROWS: [(u32, &str); 10] = [
    (4, "(2), (1,2), (2,4), (6), (1,1,4), (2,2,2), (2,4)^2, (6)^5"),
    (5, "(4), (2,4), (12)^2, (4,8), (12)^3, (4,8)^2, (12)^3"),
    (6, "(1,3), (2,4), (1,2,3,6), (3,9), (4,8)^3, (2,2,4,4), (6,6), (12)^4"),
    (7, "(2,6), (12), (6,18)^2, (24), (3,21)^2, (24)^2, (6,18), (24)^3"),
    (8, "(8), (4,8), (8,16), (24), (4,4,16), (4,4,8,8), (4,4,16), (8,16), (24)^5"),
    (9, "(3,9), (18), (9,27), (36)^4, (6,12,18)^2, (36)^4"),
    (10, "(12), (2,4,4,8), (12,24), (36), (4,8,8,16), (12,24)^5, (36)^3"),
    (11, "(20), (30), (60)^3, (10,50)^3, (5,55), (10,50)^2, (60)^2"),
    (12, "(4,8), (8,16), (4,8,12,24), (48), (8,8,32), (16,16,16), (16,32), (8,8,16,16), (24,24), (48)^4"),
    (13, "(4,24), (6,36), (12,72), (84), (12,72), (84)^5, (12,72), (84)^2"),
];

/// Rows for `Z/2 x Z/2M`, `M = 2, 3, 4`.
pub const FULL_TWO_ROWS: [(u32, &str); 3] = [
    (2, "(4), (2,4), (4,8), (12), (2,2,8), (4,4,4), (4,8)^2, (12)^5"),
    (3, "(2,6), (4,4,4), (2,2,2,6,6,6), (24), (8,8,8)^3, (4,4,4,4,4,4), (6,6,12), (24)^4"),
    (4, "(16), (8,8,8), (8,8,16,16), (48), (4,4,8,16,16), (4,4,4,4,8,8,16), (8,8,16,16)^2, (48)^5"),
];

/// Entries where exact computation disagrees with the printed rows, as
/// `(order, index into the CM list, computed sequence)`. Each was
/// confirmed by an independent elimination.
pub const CYCLIC_CORRECTIONS: [(u32, usize, &str); 4] = [
    (9, 3, "(3,6,27)"),
    (12, 0, "(4,12)"),
    (12, 3, "(12,36)"),
    (13, 3, "(12,72)"),
];

/// As above for `Z/2 x Z/2M`, keyed by `M`.
pub const FULL_TWO_CORRECTIONS: [(u32, usize, &str); 7] = [
    (2, 1, "(2,2,2)"),
    (2, 2, "(4,4,4)"),
    (2, 4, "(2,2,4,4)"),
    (2, 5, "(2,2,2,2,4)"),
    (2, 6, "(4,4,4)"),
    (2, 7, "(2,2,4,4)"),
    (3, 3, "(6,18)"),
];

pub fn cyclic_row(n: u32) -> Option<&'static str> {
    CYCLIC_ROWS.iter().find(|(k, _)| *k == n).map(|(_, r)| *r)
}

pub fn full_two_row(m: u32) -> Option<&'static str> {
    FULL_TWO_ROWS.iter().find(|(k, _)| *k == m).map(|(_, r)| *r)
}

fn corrected(row: &str, order: u32, fixes: &[(u32, usize, &str)]) -> Vec<DegreeSequence> {
    let mut seqs = parse_row(row).expect("reference rows parse");
    for &(_, k, seq) in fixes.iter().filter(|f| f.0 == order) {
        seqs[k] = parse_row(seq).expect("corrections parse").remove(0);
    }
    seqs
}

/// Reference row for `Z/N` with the corrections applied.
pub fn corrected_cyclic_row(n: u32) -> Option<Vec<DegreeSequence>> {
    cyclic_row(n).map(|r| corrected(r, n, &CYCLIC_CORRECTIONS))
}

/// Reference row for `Z/2 x Z/2M` with the corrections applied.
pub fn corrected_full_two_row(m: u32) -> Option<Vec<DegreeSequence>> {
    full_two_row(m).map(|r| corrected(r, m, &FULL_TWO_CORRECTIONS))
}

/// Compresses runs of equal consecutive sequences with `^a`.
pub fn format_row(seqs: &[DegreeSequence]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < seqs.len() {
        let mut k = i + 1;
        while k < seqs.len() && seqs[k] == seqs[i] {
            k += 1;
        }
        if k - i > 1 {
            parts.push(format!("{}^{}", seqs[i], k - i));
        } else {
            parts.push(seqs[i].to_string());
        }
        i = k;
    }
    parts.join(", ")
}

pub fn parse_row(row: &str) -> Result<Vec<DegreeSequence>> {
    let bad = |m: &str| Error::Parse(format!("bad degree-sequence row: {m}"));
    let mut out = Vec::new();
    let mut rest = row.trim();
    while !rest.is_empty() {
        rest = rest.strip_prefix('(').ok_or_else(|| bad(rest))?;
        let close = rest.find(')').ok_or_else(|| bad(rest))?;
        let degrees = rest[..close]
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad(t)))
            .collect::<Result<Vec<_>>>()?;
        rest = rest[close + 1..].trim_start();
        let mut times = 1;
        if let Some(r) = rest.strip_prefix('^') {
            let end = r.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(r.len());
            times = r[..end].parse().map_err(|_| bad(r))?;
            rest = r[end..].trim_start();
        }
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
        for _ in 0..times {
            out.push(DegreeSequence(degrees.clone()));
        }
    }
    Ok(out)
}
