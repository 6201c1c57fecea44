//! Spin component operators for arbitrary `j` and their projection along a
//! direction.
//!
//! Row and column index `k` of every matrix corresponds to the projection
//! `m = j - k`, so index 0 holds `m = +j` and the last index `m = -j`.
//! All operators are in units of ħ.

use std::fmt;

use ndarray::Array2;
use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{c_real, Scalar};

/// Largest `2j` accepted; keeps matrices small enough for dense routines.
pub const MAX_TWICE_J: u32 = 200;

/// Spin quantum number `j`, stored as the integer `2j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spin {
    twice_j: u32,
}

impl Spin {
    pub fn new(j: f64) -> Result<Self> {
        let twice = 2.0 * j;
        if !twice.is_finite() || twice < 1.0 || twice.fract() != 0.0 || twice > MAX_TWICE_J as f64 {
            return Err(Error::InvalidSpin(j));
        }
        Ok(Self { twice_j: twice as u32 })
    }

    pub fn from_twice(twice_j: u32) -> Result<Self> {
        if twice_j == 0 || twice_j > MAX_TWICE_J {
            return Err(Error::InvalidSpin(twice_j as f64 / 2.0));
        }
        Ok(Self { twice_j })
    }

    pub fn twice_j(self) -> u32 {
        self.twice_j
    }

    pub fn j(self) -> f64 {
        self.twice_j as f64 / 2.0
    }

    /// Number of levels, `2j + 1`.
    pub fn dim(self) -> usize {
        self.twice_j as usize + 1
    }

    /// Projection stored at matrix index `index`.
    pub fn level(self, index: usize) -> Projection {
        assert!(index < self.dim(), "level index {index} out of range for spin {self}");
        Projection { twice_m: self.twice_j as i32 - 2 * index as i32 }
    }

    /// Projections from `+j` down to `-j`, in matrix index order.
    pub fn levels(self) -> impl DoubleEndedIterator<Item = Projection> + ExactSizeIterator {
        (0..self.dim()).map(move |k| self.level(k))
    }

    pub fn index_of(self, m: Projection) -> Result<usize> {
        let tj = self.twice_j as i32;
        if m.twice_m.abs() > tj || (tj - m.twice_m) % 2 != 0 {
            return Err(Error::InvalidProjection { j: self.to_string(), m: m.value() });
        }
        Ok(((tj - m.twice_m) / 2) as usize)
    }

    /// `j(j+1)`.
    pub fn casimir_value<T: Scalar>(self) -> T {
        let tj = self.twice_j as f64;
        T::lit(tj * (tj + 2.0) / 4.0)
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice_j.is_multiple_of(2) {
            write!(f, "{}", self.twice_j / 2)
        } else {
            write!(f, "{}/2", self.twice_j)
        }
    }
}

/// A spin projection quantum number `m`, stored as `2m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Projection {
    twice_m: i32,
}

impl Projection {
    pub fn from_twice(twice_m: i32) -> Self {
        Self { twice_m }
    }

    /// Integer projection value.
    pub fn int(m: i32) -> Self {
        Self { twice_m: 2 * m }
    }

    /// Accepts integers and half-integers only.
    pub fn from_f64(m: f64) -> Option<Self> {
        let twice = 2.0 * m;
        (twice.is_finite() && twice.fract() == 0.0 && twice.abs() <= i32::MAX as f64)
            .then_some(Self { twice_m: twice as i32 })
    }

    pub fn twice_m(self) -> i32 {
        self.twice_m
    }

    pub fn value(self) -> f64 {
        self.twice_m as f64 / 2.0
    }
}

impl fmt::Display for Projection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.twice_m > 0 {
            "+"
        } else if self.twice_m < 0 {
            "-"
        } else {
            ""
        };
        let a = self.twice_m.unsigned_abs();
        if a.is_multiple_of(2) {
            write!(f, "{sign}{}", a / 2)
        } else {
            write!(f, "{sign}{a}/2")
        }
    }
}

impl Serialize for Projection {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.twice_m % 2 == 0 {
            s.serialize_i32(self.twice_m / 2)
        } else {
            s.serialize_f64(self.value())
        }
    }
}

impl<'de> Deserialize<'de> for Projection {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = f64::deserialize(d)?;
        Projection::from_f64(m)
            .ok_or_else(|| serde::de::Error::custom(format!("{m} is not an integer or half-integer")))
    }
}

/// Quantization axis given by polar angles.
///
/// Angles are normalized on construction: `theta` is folded into `[0, π]`
/// (shifting `phi` by π when reflected) and `phi` is reduced into `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Direction<T> {
    theta: T,
    phi: T,
}

impl<T: Scalar> Direction<T> {
    pub fn new(theta: T, phi: T) -> Self {
        let pi = T::PI();
        let two_pi = pi + pi;
        let (mut theta, mut phi) = (theta, phi);
        if theta < T::zero() || theta > pi {
            theta = rem_euclid(theta, two_pi);
            if theta > pi {
                theta = two_pi - theta;
                phi = phi + pi;
            }
        }
        if phi < T::zero() || phi >= two_pi {
            phi = rem_euclid(phi, two_pi);
            // rounding can land exactly on 2π
            if phi >= two_pi {
                phi = T::zero();
            }
        }
        Self { theta, phi }
    }

    pub fn from_degrees(theta: T, phi: T) -> Self {
        Self::new(theta.to_radians(), phi.to_radians())
    }

    pub fn z() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn x() -> Self {
        Self::new(T::FRAC_PI_2(), T::zero())
    }

    pub fn y() -> Self {
        Self::new(T::FRAC_PI_2(), T::FRAC_PI_2())
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn phi(&self) -> T {
        self.phi
    }

    /// True on the ±z axis, where `phi` carries no physical meaning.
    pub fn is_pole(&self) -> bool {
        self.theta == T::zero() || self.theta == T::PI()
    }

    pub fn unit_vector(&self) -> [T; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

fn rem_euclid<T: Scalar>(x: T, modulus: T) -> T {
    let r = x % modulus;
    if r < T::zero() {
        r + modulus
    } else {
        r
    }
}

/// Dense square complex matrix over the `2j+1` spin levels.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinMatrix<T> {
    entries: Array2<Complex<T>>,
}

impl<T: Scalar> SpinMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self { entries: Array2::zeros((dim, dim)) }
    }

    pub fn identity(dim: usize) -> Self {
        Self { entries: Array2::eye(dim) }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        Self { entries: Array2::from_shape_fn((dim, dim), |(r, c)| f(r, c)) }
    }

    pub fn from_diagonal(diag: &[Complex<T>]) -> Self {
        Self::from_fn(diag.len(), |r, c| if r == c { diag[r] } else { Complex::zero() })
    }

    /// Panics if `entries` is not square.
    pub fn from_array(entries: Array2<Complex<T>>) -> Self {
        assert_eq!(entries.nrows(), entries.ncols(), "spin matrices are square");
        Self { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[(row, col)]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex<T>) {
        self.entries[(row, col)] = value;
    }

    pub fn as_array(&self) -> &Array2<Complex<T>> {
        &self.entries
    }

    pub fn column(&self, col: usize) -> Vec<Complex<T>> {
        self.entries.column(col).to_vec()
    }

    pub fn adjoint(&self) -> Self {
        Self { entries: self.entries.t().mapv(|z| z.conj()) }
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        Self { entries: self.entries.mapv(|z| z * factor) }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: other.dim() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self { entries: &self.entries + &other.entries })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self { entries: &self.entries - &other.entries })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self { entries: self.entries.dot(&other.entries) })
    }

    /// Matrix-vector product. Panics on length mismatch.
    pub fn apply(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(v.len(), self.dim());
        self.entries
            .rows()
            .into_iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| *a * *b).fold(Complex::zero(), |acc, x| acc + x))
            .collect()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim(), other.dim());
        self.entries.iter().zip(other.entries.iter()).map(|(a, b)| (*a - *b).norm()).fold(T::zero(), T::max)
    }

    pub fn max_abs(&self) -> T {
        self.entries.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    /// `max |A - A†|`; zero for matrices built Hermitian.
    pub fn hermitian_defect(&self) -> T {
        self.max_abs_diff(&self.adjoint())
    }

    /// `max |U†U - I|`.
    pub fn unitarity_defect(&self) -> T {
        let gram = self.adjoint().try_mul(self).expect("square");
        gram.max_abs_diff(&Self::identity(self.dim()))
    }

    /// Casts every entry to another scalar type.
    pub fn cast<U: Scalar>(&self) -> SpinMatrix<U> {
        SpinMatrix { entries: self.entries.mapv(|z| Complex::new(U::lit(z.re.as_f64()), U::lit(z.im.as_f64()))) }
    }
}

impl<T: Scalar> std::ops::Mul for &SpinMatrix<T> {
    type Output = SpinMatrix<T>;

    /// Panics on dimension mismatch; see [`SpinMatrix::try_mul`].
    fn mul(self, rhs: Self) -> SpinMatrix<T> {
        self.try_mul(rhs).expect("matrix dimensions must agree")
    }
}

/// The Cartesian spin components `(S_x, S_y, S_z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinOperators<T> {
    pub x: SpinMatrix<T>,
    pub y: SpinMatrix<T>,
    pub z: SpinMatrix<T>,
}

/// Half of the ladder element `<m+1|S+|m>` coupling index `k` and `k+1`.
///
/// Computed as `sqrt(2j(2j+2) - 2m(2m+2)) / 4` with integer radicand so that
/// spin-2 entries come out as exact `1` and `√6/2`.
fn half_ladder<T: Scalar>(spin: Spin, k: usize) -> T {
    let tj = spin.twice_j() as i64;
    let tm = spin.level(k + 1).twice_m() as i64;
    let radicand = tj * (tj + 2) - tm * (tm + 2);
    T::lit(radicand as f64).sqrt() / T::lit(4.0)
}

fn diagonal_sz<T: Scalar>(spin: Spin) -> SpinMatrix<T> {
    let diag: Vec<_> = spin.levels().map(|m| c_real(T::lit(m.value()))).collect();
    SpinMatrix::from_diagonal(&diag)
}

/// Standard ladder construction of `S_x`, `S_y`, `S_z` for spin `j`.
pub fn spin_components<T: Scalar>(spin: Spin) -> SpinOperators<T> {
    let dim = spin.dim();
    let mut x = SpinMatrix::zeros(dim);
    let mut y = SpinMatrix::zeros(dim);
    for k in 0..dim - 1 {
        let v = half_ladder::<T>(spin, k);
        x.set(k, k + 1, c_real(v));
        x.set(k + 1, k, c_real(v));
        y.set(k, k + 1, Complex::new(T::zero(), -v));
        y.set(k + 1, k, Complex::new(T::zero(), v));
    }
    SpinOperators { x, y, z: diagonal_sz(spin) }
}

/// `â·S = sinθ cosφ S_x + sinθ sinφ S_y + cosθ S_z`.
///
/// Built entrywise as the tridiagonal matrix with diagonal `m cosθ` and
/// off-diagonal `<m+1|..|m> = ½√(..) sinθ e^{-iφ}`, which keeps it exactly
/// Hermitian.
pub fn projection_operator<T: Scalar>(spin: Spin, dir: &Direction<T>) -> SpinMatrix<T> {
    let dim = spin.dim();
    let (st, ct) = dir.theta().sin_cos();
    let (sp, cp) = dir.phi().sin_cos();
    let mut out = SpinMatrix::zeros(dim);
    for k in 0..dim {
        out.set(k, k, c_real(T::lit(spin.level(k).value()) * ct));
    }
    for k in 0..dim - 1 {
        let v = half_ladder::<T>(spin, k) * st;
        out.set(k, k + 1, Complex::new(v * cp, -v * sp));
        out.set(k + 1, k, Complex::new(v * cp, v * sp));
    }
    out
}

/// `[a, b] = ab - ba`.
pub fn commutator<T: Scalar>(a: &SpinMatrix<T>, b: &SpinMatrix<T>) -> Result<SpinMatrix<T>> {
    a.try_mul(b)?.try_sub(&b.try_mul(a)?)
}

/// `S² = S_x² + S_y² + S_z²`, which should equal `j(j+1)·I`.
pub fn casimir<T: Scalar>(spin: Spin) -> SpinMatrix<T> {
    let ops = spin_components::<T>(spin);
    let sq = |m: &SpinMatrix<T>| m * m;
    sq(&ops.x).try_add(&sq(&ops.y)).and_then(|s| s.try_add(&sq(&ops.z))).expect("same dimension")
}
