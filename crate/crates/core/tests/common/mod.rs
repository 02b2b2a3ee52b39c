//! Seeded instance corpus shared by the integration tests.

#![allow(dead_code)]

use joint_spectra::liepair::{generate_chain, generate_chain_with, generate_y2zero, WeightMode, Y2ZeroParams};
use joint_spectra::LiePair;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MAX_N: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Chain,
    Y2Zero,
    DirectSum,
}

pub struct Instance {
    pub label: String,
    pub family: Family,
    pub pair: LiePair,
}

fn grid_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    // Quarter-grid points keep bases readable in failure messages.
    Complex64::new(
        rng.gen_range(-12..=12) as f64 / 4.0,
        rng.gen_range(-12..=12) as f64 / 4.0,
    )
}

/// Chains whose bases sometimes differ by an integer, so eigenvalues of
/// different chains collide after the `±1` shifts.
pub fn random_chain(seed: u64, max_n: usize) -> LiePair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc4a1);
    let blocks = rng.gen_range(1..=3);
    let mut lengths = Vec::new();
    let mut bases: Vec<Complex64> = Vec::new();
    let mut total = 0;
    for _ in 0..blocks {
        let len = rng.gen_range(1..=4).min(max_n - total);
        if len == 0 {
            break;
        }
        let base = match bases.first() {
            Some(&b0) if rng.gen_bool(0.4) => b0 + rng.gen_range(-2..=2) as f64,
            _ => grid_complex(&mut rng),
        };
        lengths.push(len);
        bases.push(base);
        total += len;
    }
    generate_chain(seed, &lengths, &bases).expect("chain generator")
}

pub fn random_y2zero(seed: u64, max_n: usize) -> LiePair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37);
    let r = rng.gen_range(1..=3.min(max_n / 2));
    let m = rng.gen_range(0..=3.min(max_n - 2 * r));
    generate_y2zero(seed, r, m, &Y2ZeroParams::default()).expect("y2zero generator")
}

pub fn corpus(count: usize, seed: u64) -> Vec<Instance> {
    (0..count as u64)
        .map(|i| {
            let s = seed.wrapping_mul(1_000_003).wrapping_add(i);
            let (family, pair) = match i % 3 {
                0 => (Family::Chain, random_chain(s, MAX_N)),
                1 => (Family::Y2Zero, random_y2zero(s, MAX_N)),
                _ => {
                    let a = random_y2zero(s, 8);
                    let b = random_chain(s + 1, MAX_N - a.n());
                    (Family::DirectSum, a.direct_sum(&b))
                }
            };
            Instance {
                label: format!("{family:?}#{i} (seed {s}, n={})", pair.n()),
                family,
                pair,
            }
        })
        .collect()
}

/// Integer-entry instances with `n ≤ 8`.
pub fn integer_corpus(count: usize, seed: u64) -> Vec<Instance> {
    (0..count as u64)
        .map(|i| {
            let s = seed.wrapping_mul(7919).wrapping_add(i);
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let (family, pair) = if i % 2 == 0 {
                let lengths = [rng.gen_range(1..=4), rng.gen_range(1..=4)];
                let bases = [
                    Complex64::new(rng.gen_range(-3..=3) as f64, rng.gen_range(-2..=2) as f64),
                    Complex64::new(rng.gen_range(-3..=3) as f64, rng.gen_range(-2..=2) as f64),
                ];
                (
                    Family::Chain,
                    generate_chain_with(s, &lengths, &bases, WeightMode::Integer).unwrap(),
                )
            } else {
                let r = rng.gen_range(1..=3);
                let m = rng.gen_range(0..=(8 - 2 * r).min(2));
                let params = Y2ZeroParams {
                    integral: true,
                    ..Default::default()
                };
                (Family::Y2Zero, generate_y2zero(s, r, m, &params).unwrap())
            };
            Instance {
                label: format!("integer {family:?}#{i} (seed {s}, n={})", pair.n()),
                family,
                pair,
            }
        })
        .collect()
}

/// `count` seeded points in the disc `|λ| ≤ radius`.
pub fn lambda_samples(seed: u64, count: usize, radius: f64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            Complex64::from_polar(
                radius * rng.gen::<f64>().sqrt(),
                rng.gen_range(0.0..std::f64::consts::TAU),
            )
        })
        .collect()
}
