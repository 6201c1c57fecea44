#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinamp::{Direction64, Spin, SpinMatrix64};
use std::f64::consts::PI;

pub const SEED: u64 = 0xC0FFEE;

pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(stream);
    r
}

/// Uniform on the sphere.
pub fn random_direction(rng: &mut ChaCha8Rng) -> Direction64 {
    let cos_theta: f64 = rng.gen_range(-1.0..=1.0);
    Direction64::new(cos_theta.acos(), rng.gen_range(0.0..2.0 * PI))
}

pub fn spins() -> Vec<Spin> {
    (1..=6).map(|t| Spin::from_twice(t).unwrap()).collect()
}

pub fn spin2() -> Spin {
    Spin::new(2.0).unwrap()
}

fn factorial(n: i64) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Wigner small-d element `d^j_{m′m}(β)` from the explicit sum, arguments as
/// twice-values.
pub fn wigner_small_d(twice_j: i32, twice_mp: i32, twice_m: i32, beta: f64) -> f64 {
    let jpm = ((twice_j + twice_m) / 2) as i64;
    let jmm = ((twice_j - twice_m) / 2) as i64;
    let jpmp = ((twice_j + twice_mp) / 2) as i64;
    let jmmp = ((twice_j - twice_mp) / 2) as i64;
    let mp_minus_m = ((twice_mp - twice_m) / 2) as i64;
    let norm = (factorial(jpmp) * factorial(jmmp) * factorial(jpm) * factorial(jmm)).sqrt();
    let (s, c) = (beta / 2.0).sin_cos();
    let mut sum = 0.0;
    for k in 0..=(2 * twice_j as i64) {
        let d1 = jpm - k;
        let d3 = jmmp - k;
        let d4 = k + mp_minus_m;
        if d1 < 0 || d3 < 0 || d4 < 0 {
            continue;
        }
        let sign = if (k + mp_minus_m) % 2 == 0 { 1.0 } else { -1.0 };
        let cpow = (twice_j as i64 - 2 * k - mp_minus_m) as i32;
        let spow = (2 * k + mp_minus_m) as i32;
        sum += sign * c.powi(cpow) * s.powi(spow) / (factorial(d1) * factorial(k) * factorial(d3) * factorial(d4));
    }
    norm * sum
}

/// `D^j(φ, θ, 0)` from the explicit formula, rows and columns `+j .. -j`.
pub fn wigner_rotation(spin: Spin, theta: f64, phi: f64) -> SpinMatrix64 {
    let tj = spin.twice_j() as i32;
    SpinMatrix64::from_fn(spin.dim(), |r, c| {
        let tmp = tj - 2 * r as i32;
        let tm = tj - 2 * c as i32;
        Complex64::from_polar(1.0, -phi * tmp as f64 / 2.0) * wigner_small_d(tj, tmp, tm, theta)
    })
}

pub fn euclid_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
