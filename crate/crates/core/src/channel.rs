//! Zero-temperature amplitude damping on a truncated Fock space.
//!
//! The channel is applied through its Kraus operators
//!
//! ```text
//! Y_k = sum_{n>=k} sqrt(C(n,k)) eta^((n-k)/2) (1-eta)^(k/2) |n-k><n|,   eta = exp(-gamma t)
//! ```
//!
//! Each `Y_k` is a weighted shift by `k`, so `Y_k X Y_k^+` is evaluated
//! entrywise without forming the matrices. The map is linear and is applied
//! to non-Hermitian dyads exactly as to density matrices.

use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{require, Result};
use crate::fock::FockState;
use crate::numeric::{CompensatedSum, LnFactorial};

/// A square complex matrix over the truncated Fock basis.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix(DMatrix<Complex64>);

/// Diagnostics for density-matrix validity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityReport {
    pub hermiticity_defect: f64,
    pub trace: Complex64,
    pub min_eigenvalue: f64,
}

impl DensityReport {
    pub fn is_valid(&self) -> bool {
        self.hermiticity_defect <= 1e-10
            && (self.trace.re - 1.0).abs() <= 1e-9
            && self.trace.im.abs() <= 1e-9
            && self.min_eigenvalue >= -1e-9
    }
}

impl OperatorMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    pub fn from_matrix(m: DMatrix<Complex64>) -> Result<Self> {
        require(m.is_square(), || format!("operator must be square, got {}x{}", m.nrows(), m.ncols()))?;
        Ok(Self(m))
    }

    /// `|a><b|`; the smaller state is zero-padded.
    pub fn dyad(a: &FockState, b: &FockState) -> Self {
        let dim = a.dim().max(b.dim());
        Self(DMatrix::from_fn(dim, dim, |i, j| a.amplitude(i) * b.amplitude(j).conj()))
    }

    pub fn pure(state: &FockState) -> Self {
        Self::dyad(state, state)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    /// `<n|X|n>`, zero outside the space.
    pub fn diagonal(&self, n: usize) -> Complex64 {
        if n < self.dim() {
            self.0[(n, n)]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    pub fn trace(&self) -> Complex64 {
        let mut re = CompensatedSum::new();
        let mut im = CompensatedSum::new();
        for n in 0..self.dim() {
            re += self.0[(n, n)].re;
            im += self.0[(n, n)].im;
        }
        Complex64::new(re.value(), im.value())
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &OperatorMatrix) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.0.iter().zip(other.0.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn density_report(&self) -> DensityReport {
        let hermiticity_defect = self.max_abs_diff(&self.adjoint());
        let herm = (&self.0 + self.0.adjoint()) * Complex64::new(0.5, 0.0);
        let min_eigenvalue = herm.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min);
        DensityReport { hermiticity_defect, trace: self.trace(), min_eigenvalue }
    }
}

impl Add for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn add(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        OperatorMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn sub(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        OperatorMatrix(&self.0 - &rhs.0)
    }
}

impl Mul<Complex64> for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn mul(self, rhs: Complex64) -> OperatorMatrix {
        OperatorMatrix(&self.0 * rhs)
    }
}

/// Damping rate and elapsed time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelParams {
    gamma: f64,
    t: f64,
    eta: f64,
}

impl ChannelParams {
    pub fn new(gamma: f64, t: f64) -> Result<Self> {
        require(gamma.is_finite() && gamma >= 0.0, || format!("gamma must be finite and >= 0, got {gamma}"))?;
        require(t.is_finite() && t >= 0.0, || format!("t must be finite and >= 0, got {t}"))?;
        let eta = (-gamma * t).exp();
        check_eta(eta)?;
        Ok(Self { gamma, t, eta })
    }

    /// Unit damping rate, so `t` is the dimensionless time `gamma t`.
    pub fn from_gamma_t(gamma_t: f64) -> Result<Self> {
        Self::new(1.0, gamma_t)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// Survival factor `exp(-gamma t)`.
    pub fn eta(&self) -> f64 {
        self.eta
    }
}

pub(crate) fn check_eta(eta: f64) -> Result<()> {
    require(eta > 0.0 && eta <= 1.0, || format!("eta must lie in (0, 1], got {eta}"))
}

/// `w[k][n] = <n-k|Y_k|n>` for `k <= n < dim`.
struct KrausWeights {
    rows: Vec<Vec<f64>>,
}

impl KrausWeights {
    fn new(eta: f64, dim: usize, k_max: usize) -> Self {
        let lnf = LnFactorial::new(dim);
        let ln_eta = eta.ln();
        let ln_loss = (1.0 - eta).ln();
        let rows = (0..k_max.min(dim))
            .map(|k| {
                let ln_k = if k == 0 { 0.0 } else { k as f64 * ln_loss };
                (0..dim)
                    .map(|n| {
                        if n < k {
                            0.0
                        } else {
                            (0.5 * (lnf.ln_binomial(n, k) + (n - k) as f64 * ln_eta + ln_k)).exp()
                        }
                    })
                    .collect()
            })
            .collect();
        Self { rows }
    }
}

/// The `k`-th Kraus operator as a dense matrix.
pub fn kraus_operator(k: usize, eta: f64, dim: usize) -> Result<OperatorMatrix> {
    check_eta(eta)?;
    require(k < dim, || format!("Kraus index {k} must be below dim {dim}"))?;
    let w = KrausWeights::new(eta, dim, k + 1);
    let mut m = DMatrix::zeros(dim, dim);
    for n in k..dim {
        m[(n - k, n)] = Complex64::new(w.rows[k][n], 0.0);
    }
    Ok(OperatorMatrix(m))
}

/// `sum_{k < k_max} Y_k X Y_k^+`.
pub fn evolve(op: &OperatorMatrix, eta: f64, k_max: usize) -> Result<OperatorMatrix> {
    check_eta(eta)?;
    let dim = op.dim();
    require(k_max <= dim, || format!("k_max {k_max} exceeds dim {dim}"))?;
    let w = KrausWeights::new(eta, dim, k_max);
    let src = &op.0;
    let out = DMatrix::from_fn(dim, dim, |i, j| {
        let mut re = CompensatedSum::new();
        let mut im = CompensatedSum::new();
        for (k, row) in w.rows.iter().enumerate() {
            if i + k >= dim || j + k >= dim {
                break;
            }
            let v = src[(i + k, j + k)] * (row[i + k] * row[j + k]);
            re += v.re;
            im += v.im;
        }
        Complex64::new(re.value(), im.value())
    });
    Ok(OperatorMatrix(out))
}

/// [`evolve`] with every Kraus operator that fits in the space.
pub fn evolve_full(op: &OperatorMatrix, eta: f64) -> Result<OperatorMatrix> {
    evolve(op, eta, op.dim())
}

/// `max |sum_k Y_k^+ Y_k - I|` over the truncated space.
///
/// `Y_k^+ Y_k` is diagonal, so only the diagonal is accumulated.
pub fn completeness_defect(eta: f64, dim: usize) -> Result<f64> {
    check_eta(eta)?;
    require(dim > 0, || "dim must be positive".to_string())?;
    let w = KrausWeights::new(eta, dim, dim);
    let defect = (0..dim)
        .map(|n| {
            let total: CompensatedSum = w.rows.iter().map(|row| row[n] * row[n]).collect();
            (total.value() - 1.0).abs()
        })
        .fold(0.0, f64::max);
    Ok(defect)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::coherent;

    #[test]
    fn kraus_identity_at_eta_one() {
        assert_eq!(kraus_operator(0, 1.0, 6).unwrap(), OperatorMatrix::identity(6));
        for k in 1..6 {
            let m = kraus_operator(k, 1.0, 6).unwrap();
            assert!(m.matrix().iter().all(|c| c.norm() == 0.0));
        }
    }

    #[test]
    fn kraus_entry() {
        let m = kraus_operator(1, 0.5, 4).unwrap();
        assert!((m.entry(0, 1).re - 0.5f64.sqrt()).abs() < 1e-15);
        // <1|Y_1|2> = sqrt(2) 0.5^(1/2) 0.5^(1/2)
        assert!((m.entry(1, 2).re - 2f64.sqrt() * 0.5).abs() < 1e-15);
    }

    #[test]
    fn kraus_shift_structure() {
        let m = kraus_operator(2, 0.3, 8).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                if j != i + 2 {
                    assert_eq!(m.entry(i, j).norm(), 0.0);
                }
            }
        }
    }

    #[test]
    fn kraus_rejects_bad_input() {
        assert!(kraus_operator(4, 0.5, 4).is_err());
        assert!(kraus_operator(0, 0.0, 4).is_err());
        assert!(kraus_operator(0, 1.5, 4).is_err());
    }

    #[test]
    fn evolve_identity_channel() {
        let s = coherent(1.0, 24).unwrap();
        let rho = OperatorMatrix::pure(&s);
        assert_eq!(evolve_full(&rho, 1.0).unwrap(), rho);
    }

    #[test]
    fn evolve_single_photon() {
        let one = FockState::number(1, 5).unwrap();
        let eta = 0.3;
        let out = evolve_full(&OperatorMatrix::pure(&one), eta).unwrap();
        let mut expected = OperatorMatrix::zeros(5);
        expected.0[(1, 1)] = Complex64::new(eta, 0.0);
        expected.0[(0, 0)] = Complex64::new(1.0 - eta, 0.0);
        assert!(out.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn coherent_state_damps_to_coherent_state() {
        let eta = (-1f64).exp();
        let alpha = 2f64.sqrt();
        let rho = OperatorMatrix::pure(&coherent(alpha, 64).unwrap());
        let out = evolve_full(&rho, eta).unwrap();
        let expected = OperatorMatrix::pure(&coherent(eta.sqrt() * alpha, 64).unwrap());
        assert!(out.max_abs_diff(&expected) < 1e-9);
    }

    #[test]
    fn evolve_matches_dense_kraus_sum() {
        let dim = 12;
        let eta = 0.42;
        let a = coherent(0.8, dim).unwrap();
        let b = coherent(-0.5, dim).unwrap();
        let x = OperatorMatrix::dyad(&a, &b);
        let mut dense = DMatrix::<Complex64>::zeros(dim, dim);
        for k in 0..dim {
            let y = kraus_operator(k, eta, dim).unwrap().into_matrix();
            dense += &y * x.matrix() * y.adjoint();
        }
        let fast = evolve_full(&x, eta).unwrap();
        assert!(fast.max_abs_diff(&OperatorMatrix(dense)) < 1e-14);
    }

    #[test]
    fn evolve_rejects_oversized_k_max() {
        let rho = OperatorMatrix::identity(3);
        assert!(evolve(&rho, 0.5, 4).is_err());
        assert!(evolve(&rho, 0.5, 3).is_ok());
    }

    #[test]
    fn completeness() {
        assert_eq!(completeness_defect(1.0, 32).unwrap(), 0.0);
        assert!(completeness_defect(0.5, 64).unwrap() < 1e-12);
        assert!(completeness_defect((-1f64).exp(), 64).unwrap() < 1e-12);
    }

    #[test]
    fn completeness_against_dense_products() {
        let dim = 10;
        let eta = 0.7;
        let mut sum = DMatrix::<Complex64>::zeros(dim, dim);
        for k in 0..dim {
            let y = kraus_operator(k, eta, dim).unwrap().into_matrix();
            sum += y.adjoint() * &y;
        }
        let defect = OperatorMatrix(sum).max_abs_diff(&OperatorMatrix::identity(dim));
        assert!(defect < 1e-14);
    }

    #[test]
    fn channel_params() {
        let p = ChannelParams::new(0.5, 2.0).unwrap();
        assert!((p.eta() - (-1f64).exp()).abs() < 1e-15);
        assert_eq!(ChannelParams::from_gamma_t(0.0).unwrap().eta(), 1.0);
        assert!(ChannelParams::new(-1.0, 1.0).is_err());
        assert!(ChannelParams::new(1.0, f64::NAN).is_err());
        // eta underflows to zero
        assert!(ChannelParams::new(1.0, 1e4).is_err());
    }

    #[test]
    fn density_report_flags() {
        let rho = OperatorMatrix::pure(&coherent(1.0, 20).unwrap());
        assert!(rho.density_report().is_valid());
        let dyad = OperatorMatrix::dyad(&FockState::number(0, 2).unwrap(), &FockState::number(1, 2).unwrap());
        assert!(!dyad.density_report().is_valid());
    }
}
