//! Exact arithmetic over the Gaussian rationals `ℚ(i)`.
//!
//! Ranks are computed by fraction-free (Bareiss) elimination over the
//! Gaussian integers after clearing row denominators, so every division in
//! the elimination is exact and no tolerance appears anywhere.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numkit::CMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_integers(re: i64, im: i64) -> Self {
        Self::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    pub fn zero() -> Self {
        Self::from_integers(0, 0)
    }

    pub fn one() -> Self {
        Self::from_integers(1, 0)
    }

    /// Exact value of a finite double-precision complex number.
    pub fn from_complex(z: Complex64) -> Option<Self> {
        Some(Self::new(
            BigRational::from_float(z.re)?,
            BigRational::from_float(z.im)?,
        ))
    }

    /// Rounds each component to the nearest integer if it lies within
    /// `snap_tol` of it; otherwise keeps the exact binary value.
    pub fn from_complex_snapped(z: Complex64, snap_tol: f64) -> Option<Self> {
        let snap = |v: f64| {
            if (v - v.round()).abs() <= snap_tol {
                v.round()
            } else {
                v
            }
        };
        Self::from_complex(Complex64::new(snap(z.re), snap(z.im)))
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn denominator_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}i", self.re, self.im)
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

/// Element of `ℤ[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct GaussianInt {
    re: BigInt,
    im: BigInt,
}

impl GaussianInt {
    fn one() -> Self {
        Self {
            re: BigInt::one(),
            im: BigInt::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, rhs: &Self) -> Self {
        Self {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        Self {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }

    /// `self / d`, which must be exact in `ℤ[i]`.
    fn div_exact(&self, d: &Self) -> Self {
        let norm = &d.re * &d.re + &d.im * &d.im;
        // self · conj(d)
        let re = &self.re * &d.re + &self.im * &d.im;
        let im = &self.im * &d.re - &self.re * &d.im;
        let (qr, rr) = re.div_rem(&norm);
        let (qi, ri) = im.div_rem(&norm);
        assert!(
            rr.is_zero() && ri.is_zero(),
            "fraction-free elimination produced an inexact division"
        );
        Self { re: qr, im: qi }
    }
}

/// Dense matrix over `ℚ(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GaussianRational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Exact image of a floating-point matrix (every double is a dyadic rational).
    pub fn from_cmatrix(m: &CMatrix) -> Result<Self> {
        let mut out = Self::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(
                    i,
                    j,
                    GaussianRational::from_complex(m.get(i, j)).ok_or(Error::InvalidMatrix)?,
                );
            }
        }
        Ok(out)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GaussianRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GaussianRational::is_zero)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(GaussianRational::zero(), |acc, k| {
                &acc + &(self.get(i, k) * rhs.get(k, j))
            })
        })
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - rhs.get(i, j))
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| -self.get(i, j))
    }

    /// `self − λ·I`.
    pub fn shifted(&self, lambda: &GaussianRational) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| {
            if i == j {
                self.get(i, j) - lambda
            } else {
                self.get(i, j).clone()
            }
        })
    }

    pub fn hstack(a: &Self, b: &Self) -> Self {
        assert_eq!(a.rows, b.rows);
        Self::from_fn(a.rows, a.cols + b.cols, |i, j| {
            if j < a.cols {
                a.get(i, j).clone()
            } else {
                b.get(i, j - a.cols).clone()
            }
        })
    }

    pub fn vstack(a: &Self, b: &Self) -> Self {
        assert_eq!(a.cols, b.cols);
        Self::from_fn(a.rows + b.rows, a.cols, |i, j| {
            if i < a.rows {
                a.get(i, j).clone()
            } else {
                b.get(i - a.rows, j).clone()
            }
        })
    }

    /// Rank by fraction-free elimination.
    #[allow(clippy::needless_range_loop)]
    pub fn rank(&self) -> usize {
        // Scale each row by the lcm of its denominators to land in ℤ[i].
        let mut m: Vec<Vec<GaussianInt>> = (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let l = row.iter().fold(BigInt::one(), |acc, z| acc.lcm(&z.denominator_lcm()));
                row.iter()
                    .map(|z| GaussianInt {
                        re: (&z.re * &l).to_integer(),
                        im: (&z.im * &l).to_integer(),
                    })
                    .collect()
            })
            .collect();

        let mut prev = GaussianInt::one();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let pivot = m[rank][col].clone();
            for i in (rank + 1)..self.rows {
                let factor = m[i][col].clone();
                for j in (col + 1)..self.cols {
                    let v = pivot.mul(&m[i][j]).sub(&factor.mul(&m[rank][j]));
                    m[i][j] = v.div_exact(&prev);
                }
                m[i][col] = GaussianInt {
                    re: BigInt::zero(),
                    im: BigInt::zero(),
                };
            }
            prev = pivot;
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

/// Exact homology dimensions `(h0, h1, h2)` of the complex at `λ`.
pub fn exact_homology(x: &ExactMatrix, y: &ExactMatrix, lambda: &GaussianRational) -> (usize, usize, usize) {
    let n = x.rows();
    let d0 = ExactMatrix::hstack(y, &x.shifted(lambda));
    let shift = lambda + &GaussianRational::one();
    let d1 = ExactMatrix::vstack(&x.shifted(&shift).neg(), y);
    let (r0, r1) = (d0.rank(), d1.rank());
    (n - r0, 2 * n - r0 - r1, n - r1)
}

/// Verifies `yx − xy = y` exactly.
pub fn check_exact_relation(x: &ExactMatrix, y: &ExactMatrix) -> Result<()> {
    if x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows() {
        return Err(Error::DimensionMismatch(
            "exact pair must be square and equal-sized".into(),
        ));
    }
    let residual = y.mul(x).sub(&x.mul(y)).sub(y);
    if residual.is_zero() {
        Ok(())
    } else {
        Err(Error::ExactRelationViolated)
    }
}

/// Magnitude-free sanity bound for conversions back to `f64`.
pub fn fits_in_f64(z: &GaussianRational) -> bool {
    let ok = |q: &BigRational| q.to_f64().is_some_and(f64::is_finite) || q.abs() < BigRational::one();
    ok(&z.re) && ok(&z.im)
}
