//! Spin-2 closed-form amplitudes, transcribed term by term, and the harness
//! that checks them against the numeric engine.
//!
//! Standard forms give `ψ(m_i^â; m_f^ẑ)` for `â = (θ, φ)`. General forms give
//! `ψ(m_i^â; m_f^ĉ)` for `â = (θ′, φ′)`, `ĉ = (θ, φ)` as five terms
//! `coefficient(θ′, θ) · e^{ik(φ−φ′)}`, where `k` is the `ẑ` projection of
//! the intermediate state. The formulas are stored exactly as published,
//! including any slips; [`verify_all`] decides which ones hold.

use std::cmp::Ordering;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::amplitude::{eigenbasis, PhaseConvention};
use crate::error::{Error, Result};
use crate::scalar::{cis, Scalar};
use crate::spin::{Direction, Spin, SpinMatrix};

/// Default deviation threshold separating confirmed from suspected forms.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Trigonometric building blocks for one angle.
#[derive(Clone, Copy, Debug)]
pub struct HalfAngle<T> {
    /// sin²(θ/2)
    pub s2: T,
    /// cos²(θ/2)
    pub c2: T,
    /// sin θ
    pub st: T,
    /// cos θ
    pub ct: T,
}

impl<T: Scalar> HalfAngle<T> {
    pub fn new(theta: T) -> Self {
        let (hs, hc) = (theta / T::lit(2.0)).sin_cos();
        let (st, ct) = theta.sin_cos();
        Self { s2: hs * hs, c2: hc * hc, st, ct }
    }

    /// (3sin²(θ/2) − cos²(θ/2))
    fn a(&self) -> T {
        T::lit(3.0) * self.s2 - self.c2
    }

    /// (3cos²(θ/2) − sin²(θ/2))
    fn b(&self) -> T {
        T::lit(3.0) * self.c2 - self.s2
    }

    /// (2cos²θ − sin²θ)
    fn p2(&self) -> T {
        T::lit(2.0) * self.ct * self.ct - self.st * self.st
    }
}

/// Angles of a general form: `src` is `θ′`, `dst` is `θ`.
#[derive(Clone, Copy, Debug)]
pub struct TermArgs<T> {
    pub src: HalfAngle<T>,
    pub dst: HalfAngle<T>,
}

/// One displayed term: `coefficient · e^{i k (φ − φ′)}`.
#[derive(Clone, Copy)]
pub struct Term<T> {
    pub k: i32,
    pub coefficient: fn(&TermArgs<T>) -> T,
}

fn l<T: Scalar>(x: f64) -> T {
    T::lit(x)
}

fn r<T: Scalar>(x: f64) -> T {
    T::lit(x).sqrt()
}

fn index(m: i32) -> usize {
    (2 - m) as usize
}

fn check_range(m_i: i32, m_f: i32) -> Result<()> {
    if !(-2..=2).contains(&m_i) || !(-2..=2).contains(&m_f) {
        return Err(Error::ClosedFormOutOfRange { m_i, m_f });
    }
    Ok(())
}

/// Equation label of the standard form for `(m_i, m_f)`.
pub fn standard_equation_id(m_i: i32, m_f: i32) -> Result<String> {
    check_range(m_i, m_f)?;
    Ok(format!("Eq{}", 10 + 5 * index(m_i) + index(m_f)))
}

/// Equation label of the general form for `(m_i, m_f)`. Numbering skips the
/// vector displays that sit between groups; the last form is numbered apart.
pub fn general_equation_id(m_i: i32, m_f: i32) -> Result<String> {
    check_range(m_i, m_f)?;
    let n = match (index(m_i), index(m_f)) {
        (4, 4) => 69,
        (i, f) => 39 + 6 * i + f,
    };
    Ok(format!("Eq{n}"))
}

/// Real coefficient and `φ` exponent of a standard form, plus its display.
fn standard_parts<T: Scalar>(m_i: i32, m_f: i32, h: &HalfAngle<T>) -> (T, i32, &'static str) {
    let (s2, c2, st, ct) = (h.s2, h.c2, h.st, h.ct);
    match (m_i, m_f) {
        (2, 2) => (c2 * c2, -2, "cos⁴(θ/2)e^{−i2φ}"),
        (2, 1) => (st * c2, -1, "sinθcos²(θ/2)e^{−iφ}"),
        (2, 0) => (r::<T>(6.0) / l(4.0) * st * st, 0, "√6/4 sin²θ"),
        (2, -1) => (st * s2, 1, "sinθsin²(θ/2)e^{iφ}"),
        (2, -2) => (s2 * s2, 2, "sin⁴(θ/2)e^{i2φ}"),
        (1, 2) => (st * c2, -2, "sinθcos²(θ/2)e^{−i2φ}"),
        (1, 1) => (h.a() * c2, -1, "(3sin²(θ/2) − cos²(θ/2))cos²(θ/2)e^{−iφ}"),
        (1, 0) => (-r::<T>(6.0) / l(2.0) * st * ct, 0, "−√6/2 sinθcosθ"),
        (1, -1) => (-h.b() * s2, 1, "−(3cos²(θ/2) − sin²(θ/2))sin²(θ/2)e^{iφ}"),
        (1, -2) => (-st * s2, 2, "−sinθsin²(θ/2)e^{i2φ}"),
        (0, 2) => (r::<T>(6.0) / l(4.0) * st * st, -2, "√6/4 sin²θe^{−i2φ}"),
        (0, 1) => (-r::<T>(6.0) / l(2.0) * st * ct, -1, "−√6/2 sinθcosθe^{−iφ}"),
        (0, 0) => (l::<T>(0.5) * h.p2(), 0, "½(2cos²θ − sin²θ)"),
        (0, -1) => (r::<T>(6.0) / l(2.0) * st * ct, 1, "√6/2 sinθcosθe^{iφ}"),
        (0, -2) => (r::<T>(6.0) / l(4.0) * st * st, 2, "√6/4 sin²θe^{i2φ}"),
        (-1, 2) => (st * s2, -2, "sinθsin²(θ/2)e^{−i2φ}"),
        (-1, 1) => (-h.b() * s2, -1, "−(3cos²(θ/2) − sin²(θ/2))sin²(θ/2)e^{−iφ}"),
        (-1, 0) => (r::<T>(6.0) / l(2.0) * st * ct, 0, "√6/2 sinθcosθ"),
        (-1, -1) => (h.a() * c2, 1, "(3sin²(θ/2) − cos²(θ/2))cos²(θ/2)e^{iφ}"),
        (-1, -2) => (-st * c2, 2, "−sinθcos²(θ/2)e^{i2φ}"),
        (-2, 2) => (s2 * s2, -2, "sin⁴(θ/2)e^{−i2φ}"),
        (-2, 1) => (-st * s2, -1, "−sinθsin²(θ/2)e^{−iφ}"),
        (-2, 0) => (r::<T>(6.0) / l(4.0) * st * st, 0, "√6/4 sin²θ"),
        (-2, -1) => (-st * c2, 1, "−sinθcos²(θ/2)e^{iφ}"),
        (-2, -2) => (c2 * c2, 2, "cos⁴(θ/2)e^{i2φ}"),
        _ => unreachable!("range checked by callers"),
    }
}

/// Standard closed form `ψ(m_i^â; m_f^ẑ)` at `â = (θ, φ)`.
pub fn standard_closed_form<T: Scalar>(m_i: i32, m_f: i32, theta: T, phi: T) -> Result<Complex<T>> {
    check_range(m_i, m_f)?;
    let (coefficient, k, _) = standard_parts(m_i, m_f, &HalfAngle::new(theta));
    Ok(cis(T::lit(k as f64) * phi) * coefficient)
}

/// Display text of a standard form.
pub fn standard_display(m_i: i32, m_f: i32) -> Result<&'static str> {
    check_range(m_i, m_f)?;
    Ok(standard_parts::<f64>(m_i, m_f, &HalfAngle::new(0.0)).2)
}

macro_rules! terms {
    ($( $k:literal => |$t:ident| $body:expr ),+ $(,)?) => {
        vec![$( Term { k: $k, coefficient: |$t: &TermArgs<T>| { $body } } ),+]
    };
}

/// The five displayed terms of the general form for `(m_i, m_f)`, in
/// display order.
pub fn general_terms<T: Scalar>(m_i: i32, m_f: i32) -> Result<Vec<Term<T>>> {
    check_range(m_i, m_f)?;
    // p = source (θ′), q = target (θ)
    Ok(match (m_i, m_f) {
        (2, 2) => terms![
            2 => |t| t.dst.c2 * t.dst.c2 * t.src.c2 * t.src.c2,
            1 => |t| t.src.st * t.dst.st * t.src.c2 * t.dst.c2,
            0 => |t| l::<T>(3.0 / 8.0) * t.src.st * t.src.st * t.dst.st * t.dst.st,
            -1 => |t| t.src.st * t.dst.st * t.src.s2 * t.dst.s2,
            -2 => |t| t.dst.s2 * t.dst.s2 * t.src.s2 * t.src.s2,
        ],
        (2, 1) => terms![
            2 => |t| t.dst.st * t.src.c2 * t.src.c2 * t.dst.c2,
            1 => |t| t.dst.a() * t.src.st * t.src.c2 * t.dst.c2,
            0 => |t| -l::<T>(0.75) * t.src.st * t.src.st * t.dst.st * t.dst.ct,
            -1 => |t| -t.dst.b() * t.src.st * t.src.s2 * t.dst.s2,
            -2 => |t| -t.dst.st * t.src.s2 * t.src.s2 * t.dst.s2,
        ],
        (2, 0) => terms![
            2 => |t| r::<T>(3.0 / 8.0) * t.dst.st * t.dst.st * t.src.c2 * t.src.c2,
            1 => |t| -r::<T>(1.5) * t.dst.st * t.src.st * t.dst.ct * t.src.c2,
            0 => |t| r::<T>(3.0 / 32.0) * t.dst.p2() * t.src.st * t.src.st,
            -1 => |t| r::<T>(1.5) * t.dst.st * t.src.st * t.dst.ct * t.src.s2,
            -2 => |t| r::<T>(3.0 / 8.0) * t.dst.st * t.dst.st * t.src.s2 * t.src.s2,
        ],
        (2, -1) => terms![
            2 => |t| t.dst.st * t.src.c2 * t.src.c2 * t.dst.s2,
            1 => |t| -t.dst.b() * t.src.st * t.src.c2 * t.dst.s2,
            0 => |t| l::<T>(0.75) * t.src.st * t.src.st * t.dst.st * t.dst.ct,
            -1 => |t| t.dst.a() * t.src.st * t.src.s2 * t.dst.c2,
            -2 => |t| -t.dst.st * t.src.s2 * t.src.s2 * t.dst.c2,
        ],
        (2, -2) => terms![
            2 => |t| t.dst.s2 * t.dst.s2 * t.src.c2 * t.src.c2,
            1 => |t| -t.src.st * t.dst.st * t.src.c2 * t.dst.s2,
            0 => |t| l::<T>(3.0 / 8.0) * t.src.st * t.src.st * t.dst.st * t.dst.st,
            -1 => |t| -t.src.st * t.dst.st * t.src.s2 * t.dst.c2,
            -2 => |t| t.dst.c2 * t.dst.c2 * t.src.s2 * t.src.s2,
        ],
        (1, 2) => terms![
            2 => |t| t.src.st * t.src.c2 * t.dst.c2 * t.dst.c2,
            1 => |t| t.src.a() * t.dst.st * t.src.c2 * t.dst.c2,
            0 => |t| -l::<T>(0.75) * t.dst.st * t.dst.st * t.src.st * t.src.ct,
            -1 => |t| t.src.b() * t.dst.st * t.src.s2 * t.dst.s2,
            -2 => |t| -t.src.st * t.src.s2 * t.dst.s2 * t.dst.s2,
        ],
        (1, 1) => terms![
            2 => |t| t.src.st * t.dst.st * t.src.c2 * t.dst.c2,
            1 => |t| t.src.a() * t.dst.a() * t.src.c2 * t.dst.c2,
            0 => |t| l::<T>(1.5) * t.dst.st * t.src.st * t.dst.ct * t.src.ct,
            -1 => |t| t.src.b() * t.dst.b() * t.src.s2 * t.dst.s2,
            -2 => |t| t.src.st * t.dst.st * t.src.s2 * t.dst.s2,
        ],
        (1, 0) => terms![
            2 => |t| r::<T>(3.0 / 8.0) * t.src.st * t.dst.st * t.dst.st * t.src.c2,
            1 => |t| -r::<T>(1.5) * t.src.a() * t.dst.st * t.dst.ct * t.src.c2,
            0 => |t| -r::<T>(3.0 / 8.0) * t.dst.p2() * t.src.st * t.src.ct,
            -1 => |t| -r::<T>(1.5) * t.src.b() * t.dst.st * t.dst.ct * t.src.s2,
            -2 => |t| -r::<T>(3.0 / 8.0) * t.src.st * t.dst.st * t.dst.st * t.src.s2,
        ],
        (1, -1) => terms![
            2 => |t| t.src.st * t.dst.st * t.src.c2 * t.dst.s2,
            1 => |t| -t.src.a() * t.dst.b() * t.src.c2 * t.dst.s2,
            0 => |t| -l::<T>(1.5) * t.dst.st * t.src.st * t.dst.ct * t.src.ct,
            -1 => |t| -t.src.b() * t.dst.a() * t.src.s2 * t.dst.c2,
            -2 => |t| t.src.st * t.dst.st * t.src.s2 * t.dst.c2,
        ],
        (1, -2) => terms![
            2 => |t| t.src.st * t.src.c2 * t.dst.s2 * t.dst.s2,
            1 => |t| -t.src.a() * t.dst.st * t.src.c2 * t.dst.s2,
            0 => |t| -l::<T>(0.75) * t.dst.st * t.dst.st * t.src.st * t.src.ct,
            -2 => |t| -t.src.st * t.src.s2 * t.dst.c2 * t.dst.c2,
            -1 => |t| t.src.b() * t.dst.st * t.src.s2 * t.dst.c2,
        ],
        (0, 2) => terms![
            2 => |t| r::<T>(3.0 / 8.0) * t.src.st * t.src.st * t.dst.c2 * t.dst.c2,
            1 => |t| -r::<T>(1.5) * t.dst.st * t.src.st * t.src.ct * t.dst.c2,
            0 => |t| r::<T>(3.0 / 32.0) * t.src.p2() * t.dst.st * t.dst.st,
            -1 => |t| r::<T>(1.5) * t.dst.st * t.src.st * t.src.ct * t.dst.s2,
            -2 => |t| r::<T>(3.0 / 8.0) * t.src.st * t.src.st * t.dst.s2 * t.dst.s2,
        ],
        (0, 1) => terms![
            2 => |t| r::<T>(3.0 / 8.0) * t.dst.st * t.src.st * t.src.st * t.dst.c2,
            1 => |t| -r::<T>(1.5) * t.dst.a() * t.src.st * t.src.ct * t.dst.c2,
            0 => |t| -r::<T>(3.0 / 8.0) * t.src.p2() * t.dst.st * t.dst.ct,
            -1 => |t| -r::<T>(1.5) * t.dst.b() * t.src.st * t.src.ct * t.dst.s2,
            -2 => |t| -r::<T>(3.0 / 8.0) * t.dst.st * t.src.st * t.src.st * t.dst.s2,
        ],
        // the display has a dangling "+" after the second term; read as a sum
        (0, 0) => terms![
            2 => |t| l::<T>(3.0 / 8.0) * t.dst.st * t.dst.st * t.src.st * t.src.st,
            1 => |t| l::<T>(1.5) * t.src.st * t.src.ct * t.dst.st * t.dst.ct,
            -1 => |t| l::<T>(1.5) * t.src.st * t.src.ct * t.dst.st * t.dst.ct,
            0 => |t| l::<T>(0.25) * t.src.p2() * t.dst.p2(),
            -2 => |t| l::<T>(3.0 / 8.0) * t.dst.st * t.dst.st * t.src.st * t.src.st,
        ],
        (0, -1) => terms![
            2 => |t| r::<T>(3.0 / 8.0) * t.dst.st * t.src.st * t.src.st * t.dst.s2,
            1 => |t| r::<T>(1.5) * t.dst.b() * t.src.st * t.src.ct * t.dst.s2,
            -1 => |t| r::<T>(1.5) * t.dst.a() * t.src.st * t.src.ct * t.dst.c2,
            0 => |t| r::<T>(3.0 / 8.0) * t.src.p2() * t.dst.st * t.dst.ct,
            -2 => |t| -r::<T>(3.0 / 8.0) * t.dst.st * t.src.st * t.src.st * t.dst.c2,
        ],
        (0, -2) => terms![
            2 => |t| r::<T>(3.0 / 8.0) * t.src.st * t.src.st * t.dst.s2 * t.dst.s2,
            1 => |t| r::<T>(1.5) * t.dst.st * t.src.st * t.src.ct * t.dst.s2,
            -2 => |t| r::<T>(3.0 / 8.0) * t.src.st * t.src.st * t.dst.c2 * t.dst.c2,
            0 => |t| r::<T>(3.0 / 32.0) * t.src.p2() * t.dst.st * t.dst.st,
            -1 => |t| r::<T>(1.5) * t.dst.st * t.src.st * t.src.ct * t.dst.c2,
        ],
        (-1, 2) => terms![
            2 => |t| -t.src.st * t.src.s2 * t.dst.c2 * t.dst.c2,
            1 => |t| -t.src.b() * t.dst.st * t.src.s2 * t.dst.c2,
            0 => |t| l::<T>(0.75) * t.dst.st * t.dst.st * t.src.st * t.src.ct,
            -2 => |t| -t.src.st * t.src.c2 * t.dst.s2 * t.dst.s2,
            -1 => |t| t.src.a() * t.dst.st * t.src.c2 * t.dst.s2,
        ],
        (-1, 1) => terms![
            2 => |t| t.src.st * t.dst.st * t.src.s2 * t.dst.c2,
            1 => |t| -t.src.b() * t.dst.a() * t.src.s2 * t.dst.c2,
            -1 => |t| -t.src.a() * t.dst.b() * t.src.c2 * t.dst.s2,
            0 => |t| -l::<T>(1.5) * t.dst.st * t.src.st * t.dst.ct * t.src.ct,
            -2 => |t| t.src.st * t.dst.st * t.src.c2 * t.dst.s2,
        ],
        (-1, 0) => terms![
            2 => |t| r::<T>(3.0 / 8.0) * t.src.st * t.dst.st * t.dst.st * t.src.s2,
            1 => |t| r::<T>(1.5) * t.src.b() * t.dst.st * t.dst.ct * t.src.s2,
            -1 => |t| r::<T>(1.5) * t.src.a() * t.dst.st * t.dst.ct * t.src.c2,
            0 => |t| r::<T>(3.0 / 8.0) * t.dst.p2() * t.src.st * t.src.ct,
            -2 => |t| r::<T>(3.0 / 8.0) * t.src.st * t.dst.st * t.dst.st * t.src.c2,
        ],
        (-1, -1) => terms![
            2 => |t| t.src.st * t.dst.st * t.src.s2 * t.dst.s2,
            1 => |t| t.src.b() * t.dst.b() * t.src.s2 * t.dst.s2,
            -1 => |t| t.src.a() * t.dst.a() * t.src.c2 * t.dst.c2,
            0 => |t| l::<T>(1.5) * t.dst.st * t.src.st * t.dst.ct * t.src.ct,
            -2 => |t| t.src.st * t.dst.st * t.src.c2 * t.dst.c2,
        ],
        (-1, -2) => terms![
            2 => |t| t.src.st * t.src.s2 * t.dst.s2 * t.dst.s2,
            1 => |t| t.src.b() * t.dst.st * t.src.s2 * t.dst.s2,
            0 => |t| l::<T>(0.75) * t.dst.st * t.dst.st * t.src.st * t.src.ct,
            -2 => |t| -t.src.st * t.src.c2 * t.dst.c2 * t.dst.c2,
            -1 => |t| -t.src.a() * t.dst.st * t.src.c2 * t.dst.c2,
        ],
        (-2, 2) => terms![
            2 => |t| t.dst.c2 * t.dst.c2 * t.src.s2 * t.src.s2,
            1 => |t| -t.src.st * t.dst.st * t.src.s2 * t.dst.c2,
            0 => |t| l::<T>(3.0 / 8.0) * t.src.st * t.src.st * t.dst.st * t.dst.st,
            -1 => |t| -t.src.st * t.dst.st * t.src.c2 * t.dst.s2,
            -2 => |t| t.dst.s2 * t.dst.s2 * t.src.c2 * t.src.c2,
        ],
        (-2, 1) => terms![
            2 => |t| t.dst.st * t.src.s2 * t.src.s2 * t.dst.c2,
            1 => |t| -t.dst.a() * t.src.st * t.src.s2 * t.dst.c2,
            0 => |t| -l::<T>(0.75) * t.src.st * t.src.st * t.dst.st * t.dst.ct,
            -2 => |t| -t.dst.st * t.src.c2 * t.src.c2 * t.dst.s2,
            -1 => |t| t.dst.b() * t.src.st * t.src.c2 * t.dst.s2,
        ],
        (-2, 0) => terms![
            2 => |t| r::<T>(3.0 / 8.0) * t.dst.st * t.dst.st * t.src.s2 * t.src.s2,
            1 => |t| r::<T>(1.5) * t.dst.st * t.src.st * t.dst.ct * t.src.s2,
            -2 => |t| r::<T>(3.0 / 8.0) * t.dst.st * t.dst.st * t.src.c2 * t.src.c2,
            0 => |t| r::<T>(3.0 / 32.0) * t.dst.p2() * t.src.st * t.src.st,
            -1 => |t| -r::<T>(1.5) * t.dst.st * t.src.st * t.dst.ct * t.src.c2,
        ],
        (-2, -1) => terms![
            2 => |t| t.dst.st * t.src.s2 * t.src.s2 * t.dst.s2,
            1 => |t| t.dst.b() * t.src.st * t.src.s2 * t.dst.s2,
            0 => |t| l::<T>(0.75) * t.src.st * t.src.st * t.dst.st * t.dst.ct,
            -2 => |t| -t.dst.st * t.src.c2 * t.src.c2 * t.dst.c2,
            -1 => |t| -t.dst.a() * t.src.st * t.src.c2 * t.dst.c2,
        ],
        (-2, -2) => terms![
            2 => |t| t.dst.c2 * t.dst.c2 * t.src.c2 * t.src.c2,
            1 => |t| t.src.st * t.dst.st * t.src.s2 * t.dst.s2,
            0 => |t| l::<T>(3.0 / 8.0) * t.src.st * t.src.st * t.dst.st * t.dst.st,
            -1 => |t| t.src.st * t.dst.st * t.src.c2 * t.dst.c2,
            -2 => |t| t.dst.c2 * t.dst.c2 * t.src.c2 * t.src.c2,
        ],
        _ => unreachable!("range checked above"),
    })
}

/// Source and target angles of a general form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnglePair<T> {
    pub theta_src: T,
    pub phi_src: T,
    pub theta_dst: T,
    pub phi_dst: T,
}

impl<T: Scalar> AnglePair<T> {
    fn args(&self) -> TermArgs<T> {
        TermArgs { src: HalfAngle::new(self.theta_src), dst: HalfAngle::new(self.theta_dst) }
    }

    fn term_value(&self, term: &Term<T>, args: &TermArgs<T>) -> Complex<T> {
        cis(T::lit(term.k as f64) * (self.phi_dst - self.phi_src)) * (term.coefficient)(args)
    }
}

/// General closed form `ψ(m_i^â; m_f^ĉ)`, `â = (θ′, φ′)`, `ĉ = (θ, φ)`.
pub fn general_closed_form<T: Scalar>(
    m_i: i32,
    m_f: i32,
    theta_src: T,
    phi_src: T,
    theta_dst: T,
    phi_dst: T,
) -> Result<Complex<T>> {
    let angles = AnglePair { theta_src, phi_src, theta_dst, phi_dst };
    let args = angles.args();
    Ok(general_terms::<T>(m_i, m_f)?
        .iter()
        .map(|t| angles.term_value(t, &args))
        .fold(Complex::new(T::zero(), T::zero()), |a, b| a + b))
}

/// Which family a closed form belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    /// Final axis `ẑ`, angles `(θ, φ)` of the initial axis only.
    Standard,
    /// Both axes arbitrary.
    General,
}

/// A catalogued closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormAmplitude {
    pub kind: FormKind,
    pub m_i: i32,
    pub m_f: i32,
    pub equation_id: String,
}

impl ClosedFormAmplitude {
    /// Evaluates at `(θ′, φ′, θ, φ)`; standard forms read `(θ′, φ′)` as the
    /// initial axis and ignore the rest.
    pub fn evaluate<T: Scalar>(&self, angles: &AnglePair<T>) -> Complex<T> {
        match self.kind {
            FormKind::Standard => standard_closed_form(self.m_i, self.m_f, angles.theta_src, angles.phi_src),
            FormKind::General => general_closed_form(
                self.m_i,
                self.m_f,
                angles.theta_src,
                angles.phi_src,
                angles.theta_dst,
                angles.phi_dst,
            ),
        }
        .expect("catalogue entries are in range")
    }

    fn number(&self) -> u32 {
        self.equation_id[2..].parse().expect("EqNN label")
    }
}

/// All 50 forms: 25 standard then 25 general, each in `m_i`, `m_f` order
/// from +2 to −2.
pub fn catalogue() -> Vec<ClosedFormAmplitude> {
    let mut out = Vec::with_capacity(50);
    for kind in [FormKind::Standard, FormKind::General] {
        for m_i in (-2..=2).rev() {
            for m_f in (-2..=2).rev() {
                let equation_id = match kind {
                    FormKind::Standard => standard_equation_id(m_i, m_f),
                    FormKind::General => general_equation_id(m_i, m_f),
                }
                .expect("in range");
                out.push(ClosedFormAmplitude { kind, m_i, m_f, equation_id });
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Confirmed,
    SuspectedTypo,
}

/// Outcome of checking one closed form against the engine.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrataRecord {
    pub equation_id: String,
    pub m_i: i32,
    pub m_f: i32,
    pub max_abs_deviation: f64,
    #[serde(skip)]
    pub sample_count: usize,
    pub verdict: Verdict,
    pub suggested_correction: Option<String>,
}

/// Deterministic angle samples: the four pole corners `θ′, θ ∈ {0, π}`
/// followed by `samples` uniform draws, all from ChaCha8 seeded with `seed`.
pub fn sample_angles<T: Scalar>(samples: usize, seed: u64) -> Vec<AnglePair<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pi = std::f64::consts::PI;
    let draw_phi = |rng: &mut ChaCha8Rng| T::lit(rng.gen_range(0.0..2.0 * pi));
    let mut out = Vec::with_capacity(samples + 4);
    for theta_src in [0.0, pi] {
        for theta_dst in [0.0, pi] {
            let phi_src = draw_phi(&mut rng);
            let phi_dst = draw_phi(&mut rng);
            out.push(AnglePair { theta_src: T::lit(theta_src), phi_src, theta_dst: T::lit(theta_dst), phi_dst });
        }
    }
    for _ in 0..samples {
        let theta_src = T::lit(rng.gen_range(0.0..=pi));
        let phi_src = draw_phi(&mut rng);
        let theta_dst = T::lit(rng.gen_range(0.0..=pi));
        let phi_dst = draw_phi(&mut rng);
        out.push(AnglePair { theta_src, phi_src, theta_dst, phi_dst });
    }
    out
}

/// Engine values at one angle sample, tabulated phase convention.
struct EngineSample<T> {
    angles: AnglePair<T>,
    /// eigenbasis of the source axis: standard amplitudes at (θ′, φ′)
    src: SpinMatrix<T>,
    /// eigenbasis of the target axis: standard amplitudes at (θ, φ)
    dst: SpinMatrix<T>,
    /// `dst† · src`
    general: SpinMatrix<T>,
}

impl<T: Scalar> EngineSample<T> {
    fn new(angles: AnglePair<T>) -> Result<Self> {
        let spin = Spin::from_twice(4)?;
        let conv = PhaseConvention::Tabulated;
        let src = eigenbasis(spin, &Direction::new(angles.theta_src, angles.phi_src), conv)?;
        let dst = eigenbasis(spin, &Direction::new(angles.theta_dst, angles.phi_dst), conv)?;
        let general = &dst.adjoint() * &src;
        Ok(Self { angles, src, dst, general })
    }

    fn expected(&self, form: &ClosedFormAmplitude) -> Complex<T> {
        let (f, i) = (index(form.m_f), index(form.m_i));
        match form.kind {
            FormKind::Standard => self.src.get(f, i),
            FormKind::General => self.general.get(f, i),
        }
    }

    /// Intermediate-`ẑ` contribution with projection `k`:
    /// `ψ(m_i^â; k^ẑ) · ψ(m_f^ĉ; k^ẑ)*`.
    fn expected_term(&self, form: &ClosedFormAmplitude, k: i32) -> Complex<T> {
        self.src.get(index(k), index(form.m_i)) * self.dst.get(index(k), index(form.m_f)).conj()
    }
}

fn primed(text: &str) -> String {
    text.replace('θ', "θ′").replace('φ', "φ′")
}

fn phase_label(k: i32) -> String {
    match k {
        0 => "the φ-independent term".to_string(),
        1 => "the e^{i(φ−φ′)} term".to_string(),
        -1 => "the e^{−i(φ−φ′)} term".to_string(),
        k if k > 0 => format!("the e^{{i{k}(φ−φ′)}} term"),
        k => format!("the e^{{−i{}(φ−φ′)}} term", -k),
    }
}

/// Locates the displayed terms of a general form that disagree with the
/// intermediate-`ẑ` expansion and names the product they should equal.
fn diagnose_general<T: Scalar>(
    form: &ClosedFormAmplitude,
    samples: &[EngineSample<T>],
    tolerance: T,
) -> Option<String> {
    let terms = general_terms::<T>(form.m_i, form.m_f).ok()?;
    let mut notes = Vec::new();
    for k in (-2..=2).rev() {
        let shown: Vec<&Term<T>> = terms.iter().filter(|t| t.k == k).collect();
        let deviation = samples
            .iter()
            .map(|s| {
                let args = s.angles.args();
                let value = shown
                    .iter()
                    .map(|t| s.angles.term_value(t, &args))
                    .fold(Complex::new(T::zero(), T::zero()), |a, b| a + b);
                (value - s.expected_term(form, k)).norm()
            })
            .fold(T::zero(), T::max);
        if deviation >= tolerance {
            let src = primed(standard_display(form.m_i, k).ok()?);
            let dst = standard_display(form.m_f, k).ok()?;
            notes.push(format!(
                "{} deviates by up to {:.3e}; it should equal ψ({}^â;{}^ẑ)·ψ({}^ĉ;{}^ẑ)* = [{}]·[{}]*",
                phase_label(k),
                deviation.as_f64(),
                form.m_i,
                k,
                form.m_f,
                k,
                src,
                dst
            ));
        }
    }
    if notes.is_empty() {
        None
    } else {
        Some(notes.join("; "))
    }
}

fn diagnose_standard<T: Scalar>(form: &ClosedFormAmplitude, samples: &[EngineSample<T>]) -> String {
    let worst = samples
        .iter()
        .max_by(|a, b| {
            let da = (form.evaluate(&a.angles) - a.expected(form)).norm();
            let db = (form.evaluate(&b.angles) - b.expected(form)).norm();
            da.partial_cmp(&db).unwrap_or(Ordering::Equal)
        })
        .expect("at least one sample");
    let v = worst.expected(form);
    format!(
        "engine value at θ={:.6}, φ={:.6} is {:.12}{:+.12}i",
        worst.angles.theta_src.as_f64(),
        worst.angles.phi_src.as_f64(),
        v.re.as_f64(),
        v.im.as_f64()
    )
}

/// Checks every catalogued form against the engine at the pole corners plus
/// `samples` random angle tuples. Records are sorted by deviation, largest
/// first (ties by equation number).
pub fn verify_all<T: Scalar>(tolerance: T, samples: usize, seed: u64) -> Result<Vec<ErrataRecord>> {
    if samples == 0 {
        return Err(Error::ZeroSamples("samples"));
    }
    let engine: Vec<EngineSample<T>> =
        sample_angles::<T>(samples, seed).into_iter().map(EngineSample::new).collect::<Result<_>>()?;
    let forms = catalogue();
    let mut records: Vec<(u32, ErrataRecord)> = forms
        .par_iter()
        .map(|form| {
            let deviation = engine
                .iter()
                .map(|s| (form.evaluate(&s.angles) - s.expected(form)).norm())
                .fold(T::zero(), |a, b| if b.is_nan() { T::infinity() } else { a.max(b) });
            let confirmed = deviation < tolerance;
            let suggested_correction = if confirmed {
                None
            } else {
                match form.kind {
                    FormKind::General => diagnose_general(form, &engine, tolerance),
                    FormKind::Standard => Some(diagnose_standard(form, &engine)),
                }
            };
            let record = ErrataRecord {
                equation_id: form.equation_id.clone(),
                m_i: form.m_i,
                m_f: form.m_f,
                max_abs_deviation: deviation.as_f64(),
                sample_count: engine.len(),
                verdict: if confirmed { Verdict::Confirmed } else { Verdict::SuspectedTypo },
                suggested_correction,
            };
            (form.number(), record)
        })
        .collect();
    records.sort_by(|(na, a), (nb, b)| {
        b.max_abs_deviation.partial_cmp(&a.max_abs_deviation).unwrap_or(Ordering::Equal).then(na.cmp(nb))
    });
    Ok(records.into_iter().map(|(_, r)| r).collect())
}
