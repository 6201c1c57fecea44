//! Amplitude tables between quantization directions.
//!
//! `ψ(m_i along â; m_f along ĉ) = <m_f^ĉ | m_i^â>`. A table stores this value
//! at row `m_f`, column `m_i`, both indexed `+j .. -j`.

use ndarray::Array2;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{exp_minus_i, hermitian_eigen};
use crate::scalar::{cis, Scalar};
use crate::spin::{projection_operator, spin_components, Direction, Projection, Spin, SpinMatrix};

/// How the free phase of each eigenvector is fixed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseConvention {
    /// Columns of `exp(-iφS_z)·exp(-iθS_y)`; `φ` is taken as 0 on the poles.
    #[default]
    Canonical,
    /// Spin 2 only: the tabulated closed-form eigenvectors, i.e. canonical
    /// columns (with the literal `φ`, also on the poles) times
    /// [`TABULATED_COLUMN_SIGNS`].
    Tabulated,
}

/// Per-column signs taking canonical spin-2 eigenvectors (m = 2..-2) to the
/// tabulated ones. The m = ±1 columns are flipped.
pub const TABULATED_COLUMN_SIGNS: [f64; 5] = [1.0, -1.0, 1.0, -1.0, 1.0];

/// `exp(-iθ S_y)` (the small Wigner matrix).
pub fn rotation_about_y<T: Scalar>(spin: Spin, theta: T) -> Result<SpinMatrix<T>> {
    if theta == T::zero() {
        return Ok(SpinMatrix::identity(spin.dim()));
    }
    exp_minus_i(&spin_components::<T>(spin).y, theta)
}

/// `exp(-iφS_z)·exp(-iθS_y)`, the rotation carrying `ẑ` onto `(θ, φ)`.
pub fn rotation<T: Scalar>(spin: Spin, theta: T, phi: T) -> Result<SpinMatrix<T>> {
    let mut d = rotation_about_y(spin, theta)?;
    if phi != T::zero() {
        for r in 0..spin.dim() {
            let phase = cis(-phi * T::lit(spin.level(r).value()));
            for c in 0..spin.dim() {
                d.set(r, c, phase * d.get(r, c));
            }
        }
    }
    Ok(d)
}

/// Orthonormal eigenvectors of `dir·S`, column `k` for `m = j - k`.
pub fn eigenbasis<T: Scalar>(spin: Spin, dir: &Direction<T>, convention: PhaseConvention) -> Result<SpinMatrix<T>> {
    match convention {
        PhaseConvention::Canonical => {
            let phi = if dir.is_pole() { T::zero() } else { dir.phi() };
            rotation(spin, dir.theta(), phi)
        }
        PhaseConvention::Tabulated => {
            if spin.twice_j() != 4 {
                return Err(Error::TabulatedConventionUnavailable(spin.to_string()));
            }
            let mut u = rotation(spin, dir.theta(), dir.phi())?;
            for (c, sign) in TABULATED_COLUMN_SIGNS.iter().enumerate() {
                if *sign < 0.0 {
                    for r in 0..5 {
                        u.set(r, c, -u.get(r, c));
                    }
                }
            }
            Ok(u)
        }
    }
}

/// Eigenvectors of `dir·S` straight from the Hermitian eigensolver, sorted by
/// eigenvalue descending, with solver-chosen phases.
pub fn numeric_eigenbasis<T: Scalar>(spin: Spin, dir: &Direction<T>) -> Result<(Vec<T>, SpinMatrix<T>)> {
    let eig = hermitian_eigen(&projection_operator(spin, dir))?;
    Ok((eig.values, eig.vectors))
}

/// Multiplies each column of `numeric` by the unit phase that makes its
/// largest-modulus entry agree in phase with the same entry of `reference`.
pub fn phase_align<T: Scalar>(numeric: &SpinMatrix<T>, reference: &SpinMatrix<T>) -> SpinMatrix<T> {
    let n = numeric.dim();
    let mut out = numeric.clone();
    for c in 0..n {
        let pivot = (0..n)
            .max_by(|&a, &b| numeric.get(a, c).norm().partial_cmp(&numeric.get(b, c).norm()).expect("finite"))
            .expect("non-empty column");
        let (num, reference) = (numeric.get(pivot, c), reference.get(pivot, c));
        if num.norm() == T::zero() || reference.norm() == T::zero() {
            continue;
        }
        let fix = (reference / reference.norm()) / (num / num.norm());
        for r in 0..n {
            out.set(r, c, numeric.get(r, c) * fix);
        }
    }
    out
}

/// Amplitudes `ψ(m_i^source; m_f^target)`, row `m_f`, column `m_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct AmplitudeTable<T> {
    pub spin: Spin,
    pub source: Direction<T>,
    pub target: Direction<T>,
    pub convention: PhaseConvention,
    pub entries: SpinMatrix<T>,
}

impl<T: Scalar> AmplitudeTable<T> {
    pub fn amplitude(&self, m_i: Projection, m_f: Projection) -> Result<Complex<T>> {
        Ok(self.entries.get(self.spin.index_of(m_f)?, self.spin.index_of(m_i)?))
    }

    /// `max |U†U - I|`.
    pub fn unitarity_defect(&self) -> T {
        self.entries.unitarity_defect()
    }

    /// The table for the reversed measurement, `ĉ → â`.
    pub fn reversed(&self) -> Self {
        Self {
            spin: self.spin,
            source: self.target,
            target: self.source,
            convention: self.convention,
            entries: self.entries.adjoint(),
        }
    }
}

/// Table from `source` to the `ẑ` axis: the components of the eigenvectors of
/// `source·S` in the standard basis.
pub fn standard_table<T: Scalar>(
    spin: Spin,
    source: &Direction<T>,
    convention: PhaseConvention,
) -> Result<AmplitudeTable<T>> {
    Ok(AmplitudeTable {
        spin,
        source: *source,
        target: Direction::z(),
        convention,
        entries: eigenbasis(spin, source, convention)?,
    })
}

/// Direct inner-product route: `eigenbasis(target)† · eigenbasis(source)`.
/// Identical directions give the identity exactly.
pub fn general_table<T: Scalar>(
    spin: Spin,
    source: &Direction<T>,
    target: &Direction<T>,
    convention: PhaseConvention,
) -> Result<AmplitudeTable<T>> {
    let entries = if source == target {
        if convention == PhaseConvention::Tabulated && spin.twice_j() != 4 {
            return Err(Error::TabulatedConventionUnavailable(spin.to_string()));
        }
        SpinMatrix::identity(spin.dim())
    } else {
        let to = eigenbasis(spin, target, convention)?;
        let from = eigenbasis(spin, source, convention)?;
        &to.adjoint() * &from
    };
    Ok(AmplitudeTable { spin, source: *source, target: *target, convention, entries })
}

/// Expansion over the intermediate direction shared by the two tables:
/// `ψ(m_i; m_f) = Σ_m ψ_first(m_i; m) ψ_second(m; m_f)`.
pub fn chain_compose<T: Scalar>(first: &AmplitudeTable<T>, second: &AmplitudeTable<T>) -> Result<AmplitudeTable<T>> {
    if first.spin != second.spin {
        return Err(Error::IncompatibleTables(format!("spin {} vs spin {}", first.spin, second.spin)));
    }
    if first.target != second.source {
        return Err(Error::IncompatibleTables(format!(
            "intermediate direction mismatch: first ends at {:?}, second starts at {:?}",
            first.target, second.source
        )));
    }
    if first.convention != second.convention {
        return Err(Error::IncompatibleTables("phase conventions differ".into()));
    }
    Ok(AmplitudeTable {
        spin: first.spin,
        source: first.source,
        target: second.target,
        convention: first.convention,
        entries: &second.entries * &first.entries,
    })
}

/// Born-rule probabilities `|ψ(m_i; m_f)|²`, row `m_f`, column `m_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityTable<T> {
    pub spin: Spin,
    pub source: Direction<T>,
    pub target: Direction<T>,
    pub entries: Array2<T>,
}

impl<T: Scalar> ProbabilityTable<T> {
    pub fn probability(&self, m_i: Projection, m_f: Projection) -> Result<T> {
        Ok(self.entries[(self.spin.index_of(m_f)?, self.spin.index_of(m_i)?)])
    }

    pub fn column_sums(&self) -> Vec<T> {
        self.entries.columns().into_iter().map(|c| c.iter().copied().sum()).collect()
    }

    pub fn row_sums(&self) -> Vec<T> {
        self.entries.rows().into_iter().map(|r| r.iter().copied().sum()).collect()
    }

    /// Largest deviation of any row or column sum from 1.
    pub fn stochastic_defect(&self) -> T {
        self.column_sums().into_iter().chain(self.row_sums()).map(|s| (s - T::one()).abs()).fold(T::zero(), T::max)
    }
}

pub fn probabilities<T: Scalar>(table: &AmplitudeTable<T>) -> ProbabilityTable<T> {
    ProbabilityTable {
        spin: table.spin,
        source: table.source,
        target: table.target,
        entries: table.entries.as_array().mapv(|z| z.norm_sqr()),
    }
}
