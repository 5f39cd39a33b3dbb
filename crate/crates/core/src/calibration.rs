//! Separation scans over a deformation parameter and calibration of the
//! Laguerre parameter `xi` onto a target separation.

use rayon::prelude::*;

use crate::deformation::DeformationFamily;
use crate::error::{require, Error, Result};
use crate::fock::{separation_with, Truncation};

/// Grid spacing of the coarse bracketing scan in [`calibrate_xi`].
pub const CALIBRATION_STEP: f64 = 1e-3;

/// Hard cap on bisection steps.
pub const MAX_BISECTIONS: usize = 200;

/// Relative tolerance on the separation at the calibrated point.
pub const CALIBRATION_TOLERANCE: f64 = 1e-9;

/// One grid point of a scan: a value, or the error that made it a gap.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanPoint {
    pub param: f64,
    pub value: Result<f64>,
}

impl ScanPoint {
    pub fn value(&self) -> Option<f64> {
        self.value.as_ref().ok().copied()
    }

    pub fn is_gap(&self) -> bool {
        self.value.is_err()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanMeta {
    pub family: DeformationFamily,
    pub zeta: f64,
    pub step: f64,
    /// Separation of the undeformed cat, `2 zeta`.
    pub reference: f64,
}

/// Samples of a quantity over a strictly increasing parameter grid.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanCurve {
    pub samples: Vec<ScanPoint>,
    pub meta: ScanMeta,
}

impl ScanCurve {
    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().filter_map(ScanPoint::value)
    }

    pub fn gaps(&self) -> impl Iterator<Item = &ScanPoint> + '_ {
        self.samples.iter().filter(|p| p.is_gap())
    }

    pub fn max(&self) -> Option<f64> {
        self.values().reduce(f64::max)
    }
}

/// `p_min, p_min + step, ..` up to and including `p_max` (within rounding).
pub fn grid(p_min: f64, p_max: f64, step: f64) -> Result<Vec<f64>> {
    require(p_min.is_finite() && p_max.is_finite(), || "grid bounds must be finite".to_string())?;
    require(step.is_finite() && step > 0.0, || format!("step must be positive, got {step}"))?;
    require(p_min < p_max, || format!("need p_min < p_max, got {p_min} >= {p_max}"))?;
    let count = ((p_max - p_min) / step + 1e-9).floor() as usize;
    Ok((0..=count).map(|i| p_min + i as f64 * step).collect())
}

/// Separation `d` of the cat on `|zeta, f>` across a parameter grid.
///
/// Grid points whose state cannot be built become gaps carrying the error.
pub fn scan_separation_with(
    family: DeformationFamily,
    zeta: f64,
    p_min: f64,
    p_max: f64,
    step: f64,
    truncation: &Truncation,
) -> Result<ScanCurve> {
    require(zeta.is_finite(), || format!("zeta must be finite, got {zeta}"))?;
    let params = grid(p_min, p_max, step)?;
    let samples = params
        .par_iter()
        .map(|&param| ScanPoint {
            param,
            value: family.spec(param).and_then(|spec| separation_with(spec, zeta, truncation)),
        })
        .collect();
    Ok(ScanCurve { samples, meta: ScanMeta { family, zeta, step, reference: 2.0 * zeta } })
}

pub fn scan_separation(family: DeformationFamily, zeta: f64, p_min: f64, p_max: f64, step: f64) -> Result<ScanCurve> {
    scan_separation_with(family, zeta, p_min, p_max, step, &Truncation::default())
}

/// Smallest `xi > 0` at which the Laguerre-deformed cat has separation `d_target`.
///
/// A coarse scan on `xi = k * 1e-3` locates the first sign change of
/// `d(xi) - d_target` between two regular grid points; that bracket is then
/// bisected. Brackets whose bisection runs into a singular point are skipped.
pub fn calibrate_xi_with(zeta: f64, d_target: f64, xi_max: f64, truncation: &Truncation) -> Result<f64> {
    require(zeta.is_finite(), || format!("zeta must be finite, got {zeta}"))?;
    require(d_target.is_finite() && d_target > 0.0, || format!("d_target must be positive, got {d_target}"))?;
    require(xi_max.is_finite() && xi_max > CALIBRATION_STEP, || format!("xi_max must exceed {CALIBRATION_STEP}"))?;

    let d = |xi: f64| DeformationFamily::Laguerre.spec(xi).and_then(|s| separation_with(s, zeta, truncation));
    let count = (xi_max / CALIBRATION_STEP + 1e-9).floor() as usize;
    let coarse: Vec<(f64, Result<f64>)> = (1..=count)
        .into_par_iter()
        .map(|i| {
            let xi = i as f64 * CALIBRATION_STEP;
            (xi, d(xi).map(|v| v - d_target))
        })
        .collect();

    let mut saw_singular = false;
    let mut last_regular: Option<(f64, f64, usize)> = None;
    for (idx, (xi, res)) in coarse.iter().enumerate() {
        let Ok(r) = res else { continue };
        if *r == 0.0 {
            return Ok(*xi);
        }
        if let Some((xa, ra, ia)) = last_regular {
            if ra.signum() != r.signum() {
                if idx != ia + 1 {
                    saw_singular = true;
                } else if let Some(root) = bisect(&d, d_target, xa, ra, *xi) {
                    return Ok(root);
                } else {
                    saw_singular = true;
                }
            }
        }
        last_regular = Some((*xi, *r, idx));
    }
    if saw_singular {
        Err(Error::SingularBracket)
    } else {
        Err(Error::NoCrossing { xi_max })
    }
}

pub fn calibrate_xi(zeta: f64, d_target: f64, xi_max: f64) -> Result<f64> {
    calibrate_xi_with(zeta, d_target, xi_max, &Truncation::default())
}

/// Bisection of `d(xi) - d_target` on `[lo, hi]`, `r_lo` being the residual at `lo`.
/// `None` if a midpoint is singular.
fn bisect(d: &impl Fn(f64) -> Result<f64>, d_target: f64, mut lo: f64, mut r_lo: f64, mut hi: f64) -> Option<f64> {
    let mut best = None;
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let r = d(mid).ok()? - d_target;
        best = Some((mid, r));
        if r == 0.0 {
            break;
        }
        if r.signum() == r_lo.signum() {
            lo = mid;
            r_lo = r;
        } else {
            hi = mid;
        }
    }
    match best {
        Some((mid, r)) if r.abs() < CALIBRATION_TOLERANCE * d_target => Some(mid),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformation::DeformationSpec;
    use crate::fock::separation;
    use std::f64::consts::SQRT_2;

    #[test]
    fn grid_includes_endpoint() {
        let g = grid(0.0, 0.4, 0.01).unwrap();
        assert_eq!(g.len(), 41);
        assert!((g[40] - 0.4).abs() < 1e-12);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(grid(1.0, 0.5, 0.1).is_err());
        assert!(grid(0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn laguerre_scan_first_branch() {
        let curve = scan_separation(DeformationFamily::Laguerre, SQRT_2, 0.0, 0.4, 0.01).unwrap();
        assert_eq!(curve.samples.len(), 41);
        assert!(curve.gaps().next().is_none());
        let d0 = curve.samples[0].value().unwrap();
        assert!((d0 - 2.0 * SQRT_2).abs() < 1e-9);
        assert_eq!(curve.meta.reference, 2.0 * SQRT_2);
    }

    #[test]
    fn q_scan_stays_below_undeformed() {
        let curve = scan_separation(DeformationFamily::Q, SQRT_2, 0.5, 2.0, 0.01).unwrap();
        for p in &curve.samples {
            let d = p.value().unwrap();
            if (p.param - 1.0).abs() > 1e-9 {
                assert!(d < 2.0 * SQRT_2, "q = {}: {d}", p.param);
            } else {
                assert!((d - 2.0 * SQRT_2).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn gaps_carry_the_error() {
        // xi = 1 is a pole of f(1).
        let curve = scan_separation(DeformationFamily::Laguerre, SQRT_2, 0.9, 1.1, 0.05).unwrap();
        let gap = curve.samples.iter().find(|p| (p.param - 1.0).abs() < 1e-12).unwrap();
        assert_eq!(gap.value, Err(Error::SingularDeformation { n: 1 }));
    }

    #[test]
    fn calibration_reproduces_operating_point() {
        let xi = calibrate_xi(SQRT_2, 2.0 * SQRT_2, 1.0).unwrap();
        assert!((xi - 0.45048).abs() < 5e-3);
        // mpmath root of the same separation function
        assert!((xi - 0.450_473_590_858_834_8).abs() < 1e-9);
        let d = separation(DeformationSpec::laguerre(xi).unwrap(), SQRT_2).unwrap();
        assert!((d / (2.0 * SQRT_2) - 1.0).abs() < CALIBRATION_TOLERANCE);
    }

    #[test]
    fn calibration_round_trip() {
        let xi0 = 0.2;
        let target = separation(DeformationSpec::laguerre(xi0).unwrap(), 1.0).unwrap();
        assert!((target - 1.920_758_107_496_424_7).abs() < 1e-10);
        let xi = calibrate_xi(1.0, target, 1.0).unwrap();
        assert!((xi - xi0).abs() < 1e-6, "{xi}");
    }

    #[test]
    fn calibration_without_crossing() {
        // Near zeros of L^1_n the separation spikes (to ~17 below xi = 0.63),
        // so only a target beyond every spike has no crossing.
        assert!(matches!(calibrate_xi(SQRT_2, 100.0, 1.0), Err(Error::NoCrossing { .. })));
        assert!(calibrate_xi(SQRT_2, 10.0, 1.0).is_ok());
    }

    #[test]
    fn calibration_is_deterministic() {
        let a = calibrate_xi(1.1, 2.0 * SQRT_2, 1.2).unwrap();
        let b = calibrate_xi(1.1, 2.0 * SQRT_2, 1.2).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
