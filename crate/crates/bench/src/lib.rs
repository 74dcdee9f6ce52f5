//! Inputs shared by the benchmarks.

use chiralfill::{BigInt, IntegerMatrix};

/// Deterministic dense `size × size` matrix with small entries, built from a
/// fixed linear congruential sequence.
pub fn dense_matrix(size: usize, seed: u64) -> IntegerMatrix {
    let mut state = seed;
    let entries = (0..size * size)
        .map(|_| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            BigInt::from(((state >> 33) % 19) as i64 - 9)
        })
        .collect();
    IntegerMatrix::new(size, size, entries).expect("size × size entries")
}
