//! Benchmark fixtures.
use k3mirror_core::linalg::IntMatrix;

/// Deterministic dense integer matrix with entries in `-9..=9`.
pub fn pseudo_random_matrix(rows: usize, cols: usize, seed: u64) -> IntMatrix {
    let mut x = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    ((x >> 33) % 19) as i64 - 9
                })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&data).expect("rectangular")
}
