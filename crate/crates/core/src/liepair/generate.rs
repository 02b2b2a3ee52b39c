//! Seeded generators of valid pairs.
//!
//! If `xv = μv` then `x(yv) = (μ − 1)·yv`, so `y` lowers `x`-eigenvalues by
//! one. A chain of length `ℓ` puts `x = diag(μ, μ+1, …, μ+ℓ−1)` and lets `y`
//! walk one step down the chain. The `y² = 0` generator instead builds the
//! block form on `R(y) ⊕ M ⊕ Ker(y)^⊥` directly.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::LiePair;
use crate::error::{Error, Result};
use crate::numkit::{CMatrix, Tolerances};

/// How the nonzero entries of a chain's `y` are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightMode {
    /// Modulus in `[0.5, 2]`, uniform phase.
    Random,
    /// Every weight is `1`.
    Unit,
    /// Nonzero Gaussian integers with components in `[-2, 2]`.
    Integer,
}

fn random_weight(rng: &mut ChaCha8Rng, mode: WeightMode) -> Complex64 {
    match mode {
        WeightMode::Unit => Complex64::new(1.0, 0.0),
        WeightMode::Random => {
            let r = rng.gen_range(0.5..2.0);
            let phase = rng.gen_range(0.0..std::f64::consts::TAU);
            Complex64::from_polar(r, phase)
        }
        WeightMode::Integer => gaussian_int_nonzero(rng, 2),
    }
}

fn gaussian_int(rng: &mut ChaCha8Rng, bound: i32) -> Complex64 {
    Complex64::new(
        rng.gen_range(-bound..=bound) as f64,
        rng.gen_range(-bound..=bound) as f64,
    )
}

fn gaussian_int_nonzero(rng: &mut ChaCha8Rng, bound: i32) -> Complex64 {
    loop {
        let z = gaussian_int(rng, bound);
        if z.norm_sqr() > 0.0 {
            return z;
        }
    }
}

fn uniform_complex(rng: &mut ChaCha8Rng, half_width: f64) -> Complex64 {
    Complex64::new(
        rng.gen_range(-half_width..half_width),
        rng.gen_range(-half_width..half_width),
    )
}

/// Chains with random nonzero weights.
pub fn generate_chain(seed: u64, chain_lengths: &[usize], base_eigenvalues: &[Complex64]) -> Result<LiePair> {
    generate_chain_with(seed, chain_lengths, base_eigenvalues, WeightMode::Random)
}

/// Block-diagonal sum of chains; chain `i` has length `chain_lengths[i]` and
/// bottom `x`-eigenvalue `base_eigenvalues[i]`.
pub fn generate_chain_with(
    seed: u64,
    chain_lengths: &[usize],
    base_eigenvalues: &[Complex64],
    weights: WeightMode,
) -> Result<LiePair> {
    if chain_lengths.is_empty() {
        return Err(Error::EmptySpec);
    }
    if chain_lengths.len() != base_eigenvalues.len() {
        return Err(Error::InvalidParameter(format!(
            "{} chain lengths but {} base eigenvalues",
            chain_lengths.len(),
            base_eigenvalues.len()
        )));
    }
    if chain_lengths.contains(&0) {
        return Err(Error::InvalidParameter("chain length must be positive".into()));
    }
    let n: usize = chain_lengths.iter().sum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = CMatrix::zeros(n, n);
    let mut y = CMatrix::zeros(n, n);
    let mut offset = 0;
    for (&len, &mu) in chain_lengths.iter().zip(base_eigenvalues) {
        for j in 0..len {
            x.set(offset + j, offset + j, mu + j as f64);
            if j > 0 {
                y.set(offset + j - 1, offset + j, random_weight(&mut rng, weights));
            }
        }
        offset += len;
    }
    LiePair::validate(x, y, &Tolerances::default())
}

/// Optional explicit blocks for [`generate_y2zero`]; missing blocks are drawn
/// from the seeded generator.
#[derive(Clone, Debug, Default)]
pub struct Y2ZeroParams {
    pub x11: Option<CMatrix>,
    pub x22: Option<CMatrix>,
    pub y_bar: Option<CMatrix>,
    /// Draw every block from Gaussian integers with `ȳ` unimodular, so the
    /// whole pair (including `x₃₃`) has exact integer entries.
    pub integral: bool,
}

/// Pair with `y² = 0` on `ℂ^(2r+m)`, laid out as `R(y) ⊕ M ⊕ Ker(y)^⊥`:
///
/// ```text
///     | 0 0 ȳ |        | x11 x12 x13 |
/// y = | 0 0 0 |    x = |  0  x22 x23 |,   x33 = I + ȳ⁻¹ x11 ȳ
///     | 0 0 0 |        |  0   0  x33 |
/// ```
pub fn generate_y2zero(seed: u64, r: usize, m: usize, params: &Y2ZeroParams) -> Result<LiePair> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be positive".into()));
    }
    let check_shape = |name: &str, b: &Option<CMatrix>, k: usize| -> Result<()> {
        match b {
            Some(b) if b.rows() != k || b.cols() != k => Err(Error::InvalidParameter(format!(
                "{name} must be {k}x{k}, got {}x{}",
                b.rows(),
                b.cols()
            ))),
            _ => Ok(()),
        }
    };
    check_shape("x11", &params.x11, r)?;
    check_shape("x22", &params.x22, m)?;
    check_shape("y_bar", &params.y_bar, r)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 2 * r + m;

    let (x11, x22, y_bar, y_bar_inv, x12, x13, x23) = if params.integral {
        let (d11, d22) = distinct_integer_diagonals(&mut rng, r, m);
        let x11 = params
            .x11
            .clone()
            .unwrap_or_else(|| integer_upper_triangular(&mut rng, &d11));
        let x22 = params
            .x22
            .clone()
            .unwrap_or_else(|| integer_upper_triangular(&mut rng, &d22));
        let (y_bar, y_bar_inv) = match &params.y_bar {
            Some(b) => (b.clone(), invert(b)?),
            None => unimodular(&mut rng, r),
        };
        let x12 = CMatrix::from_fn(r, m, |_, _| gaussian_int(&mut rng, 1));
        let x13 = CMatrix::from_fn(r, r, |_, _| gaussian_int(&mut rng, 1));
        let x23 = CMatrix::from_fn(m, r, |_, _| gaussian_int(&mut rng, 1));
        (x11, x22, y_bar, y_bar_inv, x12, x13, x23)
    } else {
        let x11 = params
            .x11
            .clone()
            .unwrap_or_else(|| CMatrix::from_fn(r, r, |_, _| uniform_complex(&mut rng, 2.0)));
        let x22 = params
            .x22
            .clone()
            .unwrap_or_else(|| CMatrix::from_fn(m, m, |_, _| uniform_complex(&mut rng, 2.0)));
        let y_bar = match &params.y_bar {
            Some(b) => b.clone(),
            None => {
                // Dominant diagonal keeps ȳ well conditioned.
                let mut b = CMatrix::from_fn(r, r, |_, _| uniform_complex(&mut rng, 0.3));
                for i in 0..r {
                    let d = Complex64::from_polar(rng.gen_range(1.0..2.0), rng.gen_range(0.0..std::f64::consts::TAU));
                    b.set(i, i, b.get(i, i) + d);
                }
                b
            }
        };
        let y_bar_inv = invert(&y_bar)?;
        let x12 = CMatrix::from_fn(r, m, |_, _| uniform_complex(&mut rng, 1.0));
        let x13 = CMatrix::from_fn(r, r, |_, _| uniform_complex(&mut rng, 1.0));
        let x23 = CMatrix::from_fn(m, r, |_, _| uniform_complex(&mut rng, 1.0));
        (x11, x22, y_bar, y_bar_inv, x12, x13, x23)
    };

    let x33 = (&(&y_bar_inv * &x11) * &y_bar).shifted(Complex64::new(1.0, 0.0));

    let (o2, o3) = (r, r + m);
    let mut x = CMatrix::zeros(n, n);
    let mut y = CMatrix::zeros(n, n);
    let put = |target: &mut CMatrix, row: usize, col: usize, b: &CMatrix| {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                target.set(row + i, col + j, b.get(i, j));
            }
        }
    };
    put(&mut x, 0, 0, &x11);
    put(&mut x, 0, o2, &x12);
    put(&mut x, 0, o3, &x13);
    put(&mut x, o2, o2, &x22);
    put(&mut x, o2, o3, &x23);
    put(&mut x, o3, o3, &x33);
    put(&mut y, 0, o3, &y_bar);
    LiePair::validate(x, y, &Tolerances::default())
}

fn invert(b: &CMatrix) -> Result<CMatrix> {
    let inv = b
        .inner()
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::InvalidParameter("y_bar must be invertible".into()))?;
    CMatrix::from_inner(inv)
}

/// Diagonals for integral `x11` and `x22` such that the eigenvalues of `x11`,
/// `x11 + 1`, and `x22` are pairwise distinct; keeps `x` diagonalizable.
fn distinct_integer_diagonals(rng: &mut ChaCha8Rng, r: usize, m: usize) -> (Vec<Complex64>, Vec<Complex64>) {
    let mut taken: Vec<Complex64> = Vec::new();
    let mut d11 = Vec::with_capacity(r);
    while d11.len() < r {
        let z = gaussian_int(rng, 3);
        let shifted = z + 1.0;
        if !taken.contains(&z) && !taken.contains(&shifted) {
            taken.push(z);
            taken.push(shifted);
            d11.push(z);
        }
    }
    let mut d22 = Vec::with_capacity(m);
    while d22.len() < m {
        let z = gaussian_int(rng, 3);
        if !taken.contains(&z) {
            taken.push(z);
            d22.push(z);
        }
    }
    (d11, d22)
}

fn integer_upper_triangular(rng: &mut ChaCha8Rng, diag: &[Complex64]) -> CMatrix {
    let k = diag.len();
    let mut t = CMatrix::zeros(k, k);
    for (i, &d) in diag.iter().enumerate() {
        t.set(i, i, d);
        for j in (i + 1)..k {
            t.set(i, j, gaussian_int(rng, 1));
        }
    }
    t
}

/// Unit upper-triangular Gaussian-integer matrix and its exact inverse.
fn unimodular(rng: &mut ChaCha8Rng, r: usize) -> (CMatrix, CMatrix) {
    let mut u = DMatrix::<Complex64>::identity(r, r);
    for i in 0..r {
        for j in (i + 1)..r {
            u[(i, j)] = gaussian_int(rng, 1);
        }
    }
    // Back substitution on a unit triangular matrix stays in Z[i].
    let mut inv = DMatrix::<Complex64>::identity(r, r);
    for col in 0..r {
        for i in (0..r).rev() {
            let mut acc = if i == col {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            for k in (i + 1)..r {
                acc -= u[(i, k)] * inv[(k, col)];
            }
            inv[(i, col)] = acc;
        }
    }
    (
        CMatrix::from_inner(u).expect("finite"),
        CMatrix::from_inner(inv).expect("finite"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::{eigenvalues, kernel_basis, numerical_rank};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn contains(set: &[Complex64], z: Complex64) -> bool {
        set.iter().any(|w| (w - z).norm() < 1e-10)
    }

    #[test]
    fn single_point_chain() {
        let p = generate_chain(1, &[1], &[c(2.0, 1.0)]).unwrap();
        assert_eq!(p.x(), &CMatrix::scalar(c(2.0, 1.0)));
        assert_eq!(p.y(), &CMatrix::zeros(1, 1));
    }

    #[test]
    fn unit_chain_of_length_two() {
        let p = generate_chain_with(9, &[2], &[c(0.0, 0.0)], WeightMode::Unit).unwrap();
        assert_eq!(p.x(), &CMatrix::from_diagonal(&[c(0.0, 0.0), c(1.0, 0.0)]));
        assert_eq!(p.y(), &CMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap());
    }

    #[test]
    fn chain_nilpotency_is_exact() {
        for len in 1..=6 {
            let p = generate_chain(len as u64, &[len, 2], &[c(0.5, -1.0), c(3.0, 0.0)]).unwrap();
            let idx = len.max(2);
            assert_eq!(p.nilpotency_index(), idx);
            assert_eq!(p.y().pow(idx as u32).norm(), 0.0);
            assert!(p.y().pow(idx as u32 - 1).norm() > 0.0);
        }
    }

    #[test]
    fn chain_errors() {
        assert!(matches!(generate_chain(0, &[], &[]), Err(Error::EmptySpec)));
        assert!(matches!(
            generate_chain(0, &[1, 2], &[c(0.0, 0.0)]),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            generate_chain(0, &[0], &[c(0.0, 0.0)]),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn chains_are_seed_deterministic() {
        let a = generate_chain(42, &[3, 2], &[c(0.0, 0.0), c(1.0, 1.0)]).unwrap();
        let b = generate_chain(42, &[3, 2], &[c(0.0, 0.0), c(1.0, 1.0)]).unwrap();
        let d = generate_chain(43, &[3, 2], &[c(0.0, 0.0), c(1.0, 1.0)]).unwrap();
        assert_eq!(a.y(), b.y());
        assert_ne!(a.y(), d.y());
    }

    #[test]
    fn y2zero_small_explicit() {
        let params = Y2ZeroParams {
            x11: Some(CMatrix::scalar(c(0.0, 0.0))),
            y_bar: Some(CMatrix::scalar(c(1.0, 0.0))),
            ..Default::default()
        };
        let p = generate_y2zero(3, 1, 0, &params).unwrap();
        assert_eq!(p.n(), 2);
        assert_eq!(p.x().get(0, 0), c(0.0, 0.0));
        assert_eq!(p.x().get(1, 1), c(1.0, 0.0));
        assert_eq!(p.x().get(1, 0), c(0.0, 0.0));
    }

    #[test]
    fn y2zero_eigenvalues_of_x() {
        let (a, b) = (c(0.7, -0.2), c(-1.5, 2.0));
        let params = Y2ZeroParams {
            x11: Some(CMatrix::scalar(a)),
            x22: Some(CMatrix::scalar(b)),
            ..Default::default()
        };
        let p = generate_y2zero(5, 1, 1, &params).unwrap();
        let e = eigenvalues(p.x()).unwrap();
        for z in [a, b, a + 1.0] {
            assert!(contains(&e, z), "{z} missing from {e:?}");
        }
    }

    #[test]
    fn y2zero_structure() {
        let t = Tolerances::default();
        for (seed, r, m) in [(1, 1, 0), (2, 2, 1), (3, 3, 2), (4, 2, 4)] {
            for integral in [false, true] {
                let params = Y2ZeroParams {
                    integral,
                    ..Default::default()
                };
                let p = generate_y2zero(seed, r, m, &params).unwrap();
                assert_eq!(p.n(), 2 * r + m);
                assert_eq!(p.y().pow(2).norm(), 0.0);
                assert_eq!(p.nilpotency_index(), 2);
                assert_eq!(numerical_rank(p.y(), &t).unwrap(), r);
                assert_eq!(kernel_basis(p.y(), &t).unwrap().dim(), r + m);
                assert!(p.relation_residual() <= 1e-12 * (1.0 + p.x_norm()));
                if integral {
                    assert_eq!(p.relation_residual(), 0.0);
                    assert!(p
                        .x()
                        .to_rows()
                        .iter()
                        .flatten()
                        .all(|z| z.re.fract() == 0.0 && z.im.fract() == 0.0));
                }
            }
        }
    }

    #[test]
    fn y2zero_rejects_bad_shapes() {
        let params = Y2ZeroParams {
            x11: Some(CMatrix::zeros(2, 2)),
            ..Default::default()
        };
        assert!(matches!(
            generate_y2zero(0, 1, 0, &params),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            generate_y2zero(0, 0, 1, &Y2ZeroParams::default()),
            Err(Error::InvalidParameter(_))
        ));
    }
}
