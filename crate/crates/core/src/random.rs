//! Seed derivation and random generic data.
//!
//! A single 64-bit seed expands to independent per-trial seeds with the
//! splitmix64 output function: `derive_seed(seed, k)` is the `k`-th output
//! of a splitmix64 generator started at `seed`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{monomials, HomogPoly};
use crate::scalar::{int, Rational};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed.wrapping_add(GOLDEN_GAMMA.wrapping_mul(index.wrapping_add(1))))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Upper end of the coordinate range for generic points.
pub const POINT_RANGE: i64 = 1 << 16;

/// Affine-chart point with coordinates uniform in `[1, 2^16]` and the last
/// coordinate equal to 1.
pub fn generic_point<R: Rng>(rng: &mut R, len: usize) -> Vec<Rational> {
    (0..len)
        .map(|i| {
            if i + 1 == len {
                int(1)
            } else {
                int(rng.gen_range(1..=POINT_RANGE))
            }
        })
        .collect()
}

/// Form with every coefficient uniform in `[-bound, bound]`.
pub fn random_form<R: Rng>(rng: &mut R, num_vars: usize, degree: u32, bound: i64) -> HomogPoly {
    let coeffs: Vec<Rational> = monomials(num_vars, degree)
        .iter()
        .map(|_| int(rng.gen_range(-bound..=bound)))
        .collect();
    HomogPoly::from_coefficients(num_vars, degree, &coeffs).expect("basis length")
}

/// Coefficient range for generic forms.
pub const GENERIC_COEFF_BOUND: i64 = 1000;

/// Form with coefficients uniform in `[-10^3, 10^3]`, resampled if zero.
pub fn generic_form<R: Rng>(rng: &mut R, num_vars: usize, degree: u32) -> HomogPoly {
    loop {
        let f = random_form(rng, num_vars, degree, GENERIC_COEFF_BOUND);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Integer vector with entries uniform in `[-bound, bound]`, not all zero.
pub fn nonzero_vector<R: Rng>(rng: &mut R, len: usize, bound: i64) -> Vec<Rational> {
    loop {
        let v: Vec<i64> = (0..len).map(|_| rng.gen_range(-bound..=bound)).collect();
        if v.iter().any(|&x| x != 0) {
            return v.into_iter().map(int).collect();
        }
    }
}
