//! Benchmark inputs shared by the criterion targets.

use apolar_core::random::{derive_seed, generic_form, rng};
use apolar_core::scalar::int;
use apolar_core::{HomogPoly, QMatrix};

/// Seeded generic form, the same on every run.
pub fn form(vars: usize, degree: u32) -> HomogPoly {
    generic_form(&mut rng(derive_seed(0xBE_7C, 0)), vars, degree)
}

/// `n x n` matrix of rank `n - 1` with entries growing along the diagonal.
pub fn deficient_matrix(n: usize) -> QMatrix {
    let mut rows: Vec<Vec<_>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| int(((i * 31 + j * 17) % 23) as i64 - 11 + (i == j) as i64 * 40))
                .collect()
        })
        .collect();
    let last: Vec<_> = rows[0].iter().zip(&rows[1]).map(|(a, b)| a + b).collect();
    rows[n - 1] = last;
    QMatrix::from_rows(rows).expect("rectangular")
}
