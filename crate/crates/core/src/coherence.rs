//! Quantum visibility of damped cat states.
//!
//! Two independent routes:
//!
//! * the closed-form series ([`visibility_undeformed`], [`visibility_deformed`]),
//! * brute-force evolution of the cat's dyads through the Kraus map
//!   ([`visibility_numeric`]), which is the reference the series are checked
//!   against.

use num_complex::Complex64;

use crate::channel::{check_eta, evolve_full, OperatorMatrix};
use crate::deformation::{check_converged, deformed_factorials, DeformationSpec, SERIES_CAP};
use crate::error::{require, Error, Result};
use crate::fock::{even_cat, f_coherent, FockState};
use crate::numeric::{CompensatedSum, LnFactorial};

/// Visibility at one photon number and time, with the quantities it is built from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VisibilitySample {
    pub n: usize,
    pub gamma_t: f64,
    pub value: f64,
    /// `P_+(n, t)`
    pub p_plus: f64,
    /// `P_-(n, t)`
    pub p_minus: f64,
    /// `|C(n, t)|`
    pub c_abs: f64,
}

/// `exp(-2 alpha^2 (1 - eta))`, independent of `n`.
pub fn visibility_undeformed(alpha: f64, eta: f64) -> Result<f64> {
    check_eta(eta)?;
    require(alpha.is_finite(), || format!("alpha must be finite, got {alpha}"))?;
    Ok((-2.0 * alpha * alpha * (1.0 - eta)).exp())
}

/// Visibility of the damped f-deformed cat from the series
///
/// ```text
/// V = |S(-x)| / S(x),   S(x) = sum_k (n+k)!/k! x^k / [n+k]_f!,   x = zeta^2 (1 - eta)
/// ```
pub fn visibility_deformed(spec: DeformationSpec, zeta: f64, n: usize, eta: f64) -> Result<f64> {
    spec.validate()?;
    check_eta(eta)?;
    require(zeta.is_finite(), || format!("zeta must be finite, got {zeta}"))?;
    require(n < SERIES_CAP, || format!("n must be below {SERIES_CAP}, got {n}"))?;
    let x = zeta * zeta * (1.0 - eta);
    if x == 0.0 {
        return Ok(1.0);
    }

    let factorials = deformed_factorials(spec, SERIES_CAP)?;
    let lnf = LnFactorial::new(SERIES_CAP);
    let ln_x = x.ln();
    let len = SERIES_CAP - n;
    let mut logs = Vec::with_capacity(len);
    for k in 0..len {
        let fact = factorials[n + k];
        if fact.is_zero() {
            return Err(Error::SingularDeformation { n: n + k });
        }
        logs.push(lnf.get(n + k) - lnf.get(k) + k as f64 * ln_x - fact.log_magnitude);
    }
    let peak = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let terms: Vec<f64> = logs
        .iter()
        .enumerate()
        .map(|(k, l)| factorials[n + k].sign.as_f64() * (l - peak).exp())
        .collect();

    let mut positive = CompensatedSum::new();
    let mut alternating = CompensatedSum::new();
    for (k, t) in terms.iter().enumerate() {
        positive += *t;
        alternating += if k % 2 == 0 { *t } else { -*t };
    }
    let denominator = positive.value();
    if !denominator.is_finite() || denominator <= 0.0 {
        return Err(Error::DegenerateDenominator { n });
    }
    check_converged(&terms, denominator)?;
    Ok(alternating.value().abs() / denominator)
}

/// `<n|X|n>` of the evolved cross dyad `|zeta, f><-zeta, f|`.
pub fn coherence_function(evolved_cross_dyad: &OperatorMatrix, n: usize) -> Complex64 {
    evolved_cross_dyad.diagonal(n)
}

fn components(spec: DeformationSpec, zeta: f64, dim: usize) -> Result<(FockState, FockState)> {
    let plus = f_coherent(spec, zeta, dim)?.embed(dim)?;
    let minus = f_coherent(spec, -zeta, dim)?.embed(dim)?;
    Ok((plus, minus))
}

/// Visibility from explicit Kraus evolution of `|+><+|`, `|-><-|` and `|+><-|`
/// in a space of dimension `dim`.
pub fn visibility_numeric(
    spec: DeformationSpec,
    zeta: f64,
    n: usize,
    eta: f64,
    dim: usize,
) -> Result<VisibilitySample> {
    check_eta(eta)?;
    require(n < dim, || format!("n = {n} is outside dim {dim}"))?;
    let (plus, minus) = components(spec, zeta, dim)?;
    let p_plus = evolve_full(&OperatorMatrix::pure(&plus), eta)?.diagonal(n).re;
    let p_minus = evolve_full(&OperatorMatrix::pure(&minus), eta)?.diagonal(n).re;
    let cross = evolve_full(&OperatorMatrix::dyad(&plus, &minus), eta)?;
    let c_abs = coherence_function(&cross, n).norm();
    let norm = p_plus * p_minus;
    if norm.is_nan() || norm <= 1e-300 {
        return Err(Error::DegenerateDenominator { n });
    }
    Ok(VisibilitySample { n, gamma_t: -eta.ln(), value: c_abs / norm.sqrt(), p_plus, p_minus, c_abs })
}

/// Photon-number distribution of the damped even cat.
pub fn cat_number_distribution(spec: DeformationSpec, zeta: f64, eta: f64, dim: usize) -> Result<Vec<f64>> {
    check_eta(eta)?;
    let (plus, minus) = components(spec, zeta, dim)?;
    let cat = even_cat(&plus, &minus)?;
    let rho = evolve_full(&OperatorMatrix::pure(&cat), eta)?;
    Ok((0..dim).map(|n| rho.diagonal(n).re).collect())
}
