//! Test-only oracles, independent of the elimination code they check.
#![allow(dead_code)]

use std::path::PathBuf;

use quotient_rank::{ActivationMatrix, ActivationVector};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// Size of the largest XOR-independent row subset, found by enumerating
/// every subset. `xor[s]` is the XOR of subset `s`; a subset is dependent
/// iff it or one of its sub-subsets XORs to zero. Exponential: keep rows
/// at or below ~16.
pub fn brute_force_rank(rows: &[u16]) -> usize {
    let n = rows.len();
    assert!(n <= 20, "oracle is exponential in the row count");
    let size = 1usize << n;
    let mut xor = vec![0u16; size];
    let mut dependent = vec![false; size];
    let mut best = 0;
    for s in 1..size {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        xor[s] = xor[rest] ^ rows[low];
        let mut dep = xor[s] == 0;
        let mut bits = s;
        while !dep && bits != 0 {
            let b = bits & bits.wrapping_neg();
            dep = dependent[s & !b];
            bits &= bits - 1;
        }
        dependent[s] = dep;
        if !dep {
            best = best.max(s.count_ones() as usize);
        }
    }
    best
}

/// Number of column combinations `c` supported on `activated` with
/// `M·c = 0`, counted by enumeration (includes `c = 0`).
pub fn brute_force_kernel_size(rows: &[u16], activated: u16) -> usize {
    let cols: Vec<u16> = (0..14)
        .filter(|i| activated & (1 << i) != 0)
        .map(|i| 1 << i)
        .collect();
    (0..1usize << cols.len())
        .filter(|mask| {
            let c: u16 = cols
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, b)| *b)
                .fold(0, |a, b| a | b);
            rows.iter().all(|r| (r & c).count_ones().is_multiple_of(2))
        })
        .count()
}

pub fn matrix(rows: &[u16]) -> ActivationMatrix {
    ActivationMatrix::from_rows(
        rows.iter()
            .map(|r| ActivationVector::from_bits(*r))
            .collect(),
    )
}
