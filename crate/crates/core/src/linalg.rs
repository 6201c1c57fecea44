//! Dense Hermitian eigensolver (cyclic complex Jacobi) and the unitary
//! exponential built on it.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{cis, Scalar};
use crate::spin::SpinMatrix;

const MAX_SWEEPS: usize = 64;

/// Eigen-decomposition of a Hermitian matrix.
///
/// Eigenvalues are sorted descending; column `k` of `vectors` belongs to
/// `values[k]`. Column phases are whatever the rotations produce.
#[derive(Clone, Debug)]
pub struct HermitianEigen<T> {
    pub values: Vec<T>,
    pub vectors: SpinMatrix<T>,
}

/// Diagonalizes `h` by cyclic Jacobi sweeps.
///
/// Each pivot first rotates the phase of `h[p][q]` onto the real axis, then
/// applies the real symmetric Jacobi rotation.
pub fn hermitian_eigen<T: Scalar>(h: &SpinMatrix<T>) -> Result<HermitianEigen<T>> {
    let n = h.dim();
    let mut a = h.clone();
    let mut v = SpinMatrix::<T>::identity(n);
    let scale = a.max_abs().max(T::min_positive_value());
    let threshold = T::epsilon() * T::epsilon() * scale * scale;

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        let off: T = (0..n).flat_map(|p| (p + 1..n).map(move |q| (p, q))).map(|(p, q)| a.get(p, q).norm_sqr()).sum();
        if off <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::EigenNoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &k| a.get(k, k).re.partial_cmp(&a.get(i, i).re).expect("finite eigenvalues"));
    let values = order.iter().map(|&k| a.get(k, k).re).collect();
    let vectors = SpinMatrix::from_fn(n, |r, c| v.get(r, order[c]));
    Ok(HermitianEigen { values, vectors })
}

fn rotate<T: Scalar>(a: &mut SpinMatrix<T>, v: &mut SpinMatrix<T>, p: usize, q: usize) {
    let apq = a.get(p, q);
    let magnitude = apq.norm();
    if magnitude == T::zero() {
        return;
    }
    let phase = apq / magnitude;
    let two = T::lit(2.0);
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let theta = (aqq - app) / (two * magnitude);
    let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;

    // W = diag(1, conj(phase)) · [[c, s], [-s, c]] restricted to (p, q)
    let w_pp = Complex::new(c, T::zero());
    let w_pq = Complex::new(s, T::zero());
    let w_qp = -phase.conj() * s;
    let w_qq = phase.conj() * c;

    let n = a.dim();
    for r in 0..n {
        let arp = a.get(r, p);
        let arq = a.get(r, q);
        a.set(r, p, arp * w_pp + arq * w_qp);
        a.set(r, q, arp * w_pq + arq * w_qq);
        let vrp = v.get(r, p);
        let vrq = v.get(r, q);
        v.set(r, p, vrp * w_pp + vrq * w_qp);
        v.set(r, q, vrp * w_pq + vrq * w_qq);
    }
    for col in 0..n {
        let apc = a.get(p, col);
        let aqc = a.get(q, col);
        a.set(p, col, w_pp.conj() * apc + w_qp.conj() * aqc);
        a.set(q, col, w_pq.conj() * apc + w_qq.conj() * aqc);
    }
    a.set(p, q, Complex::zero());
    a.set(q, p, Complex::zero());
    a.set(p, p, Complex::new(a.get(p, p).re, T::zero()));
    a.set(q, q, Complex::new(a.get(q, q).re, T::zero()));
}

/// `exp(-i t H)` for Hermitian `H`, assembled as `V diag(e^{-i t λ}) V†`.
///
/// The result does not depend on the eigenvector phases the solver picks.
pub fn exp_minus_i<T: Scalar>(h: &SpinMatrix<T>, t: T) -> Result<SpinMatrix<T>> {
    let eig = hermitian_eigen(h)?;
    let phases: Vec<_> = eig.values.iter().map(|&l| cis(-t * l)).collect();
    let n = h.dim();
    Ok(SpinMatrix::from_fn(n, |r, c| {
        (0..n).fold(Complex::zero(), |acc, k| acc + eig.vectors.get(r, k) * phases[k] * eig.vectors.get(c, k).conj())
    }))
}
