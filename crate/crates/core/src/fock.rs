//! Coherent, f-coherent and even-cat states on a truncated Fock basis.

use num_complex::Complex64;

use crate::deformation::{check_converged, deformed_factorials, DeformationSpec, Sign, SERIES_CAP};
use crate::error::{require, Error, Result};
use crate::numeric::{compensated_sum, CompensatedSum};

/// Largest truncated probability a constructor accepts.
pub const TAIL_LIMIT: f64 = 1e-9;

/// How f-coherent states are truncated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Truncation {
    /// Terms of the normalisation series below `floor * sum` are dropped.
    pub floor: f64,
    pub max_dim: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Self { floor: 1e-12, max_dim: 256 }
    }
}

impl Truncation {
    pub fn new(floor: f64, max_dim: usize) -> Result<Self> {
        require(floor.is_finite() && floor > 0.0 && floor < 1.0, || {
            format!("floor must lie in (0, 1), got {floor}")
        })?;
        require(max_dim > 0, || "max_dim must be positive".to_string())?;
        Ok(Self { floor, max_dim })
    }
}

/// A state vector over `|0>, .., |dim-1>`.
#[derive(Clone, Debug, PartialEq)]
pub struct FockState {
    amplitudes: Vec<Complex64>,
    tail_mass: f64,
}

impl FockState {
    pub fn from_amplitudes(amplitudes: Vec<Complex64>, tail_mass: f64) -> Result<Self> {
        require(!amplitudes.is_empty(), || "a Fock state needs dim >= 1".to_string())?;
        require(tail_mass >= 0.0, || format!("tail mass must be >= 0, got {tail_mass}"))?;
        Ok(Self { amplitudes, tail_mass })
    }

    /// The number state `|n>` in a space of dimension `dim`.
    pub fn number(n: usize, dim: usize) -> Result<Self> {
        require(n < dim, || format!("|{n}> does not fit in dim {dim}"))?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[n] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes, tail_mass: 0.0 })
    }

    pub fn vacuum(dim: usize) -> Result<Self> {
        Self::number(0, dim)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, n: usize) -> Complex64 {
        self.amplitudes.get(n).copied().unwrap_or_default()
    }

    /// Estimated probability lost to the truncation.
    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn norm_sqr(&self) -> f64 {
        compensated_sum(self.amplitudes.iter().map(|c| c.norm_sqr()))
    }

    /// Zero-pads the state into a larger space.
    pub fn embed(&self, dim: usize) -> Result<Self> {
        if dim < self.dim() {
            return Err(Error::TruncationTooSmall { required: self.dim(), available: dim });
        }
        let mut amplitudes = self.amplitudes.clone();
        amplitudes.resize(dim, Complex64::new(0.0, 0.0));
        Ok(Self { amplitudes, tail_mass: self.tail_mass })
    }
}

/// Normalisation weights `zeta^(2n) / [n]_f!` over the full series window,
/// scaled so the largest is 1.
struct SeriesWeights {
    weights: Vec<f64>,
    total: f64,
    // suffix[n] = sum of weights[n..]
    suffix: Vec<f64>,
}

impl SeriesWeights {
    fn new(spec: DeformationSpec, zeta2: f64, floor: f64) -> Result<Self> {
        let factorials = deformed_factorials(spec, SERIES_CAP)?;
        let ln_zeta2 = zeta2.ln();
        let mut logs = Vec::with_capacity(SERIES_CAP);
        for (n, fact) in factorials.iter().enumerate() {
            if fact.is_zero() {
                return Err(Error::SingularDeformation { n });
            }
            logs.push(n as f64 * ln_zeta2 - fact.log_magnitude);
        }
        let peak = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut weights: Vec<f64> = logs
            .iter()
            .zip(&factorials)
            .map(|(l, fact)| fact.sign.as_f64() * (l - peak).exp())
            .collect();
        let total = compensated_sum(weights.iter().copied());
        if total.is_nan() || total <= 0.0 {
            return Err(Error::NonNormalizable { value: total });
        }
        check_converged(&weights, total)?;

        // A non-positive factorial is only tolerated where the state has no weight.
        if let Some(first) = factorials.iter().position(|f| f.sign != Sign::Positive) {
            if let Some(n) = (first..weights.len()).find(|&n| weights[n].abs() >= floor * total) {
                return Err(Error::NegativeDeformedFactorial { n });
            }
            weights[first..].iter_mut().for_each(|w| *w = 0.0);
        }
        let total = compensated_sum(weights.iter().copied());
        let mut suffix = vec![0.0; weights.len() + 1];
        let mut acc = CompensatedSum::new();
        for n in (0..weights.len()).rev() {
            acc += weights[n];
            suffix[n] = acc.value();
        }
        Ok(Self { weights, total, suffix })
    }

    /// One past the last weight above `floor * total`.
    fn effective_dim(&self, floor: f64) -> usize {
        let cut = floor * self.total;
        self.weights.iter().rposition(|&w| w > cut).map_or(1, |n| n + 1)
    }

    fn tail_beyond(&self, dim: usize) -> f64 {
        self.suffix[dim.min(self.weights.len())] / self.total
    }

    /// Smallest dimension whose truncated mass is below [`TAIL_LIMIT`].
    fn required_dim(&self) -> usize {
        (1..=self.weights.len()).find(|&d| self.tail_beyond(d) < TAIL_LIMIT).unwrap_or(self.weights.len())
    }

    fn state(&self, zeta: f64, dim: usize) -> FockState {
        let kept = dim.min(self.weights.len());
        let window = compensated_sum(self.weights[..kept].iter().copied());
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        for (n, (a, w)) in amplitudes.iter_mut().zip(&self.weights[..kept]).enumerate() {
            let parity = if zeta < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
            *a = Complex64::new(parity * (w / window).sqrt(), 0.0);
        }
        FockState { amplitudes, tail_mass: self.tail_beyond(kept) }
    }
}

/// Glauber coherent state `|alpha>` in a space of dimension `dim`, renormalised
/// over the window.
pub fn coherent(alpha: f64, dim: usize) -> Result<FockState> {
    require(alpha.is_finite(), || format!("alpha must be finite, got {alpha}"))?;
    require(dim > 0, || "dim must be positive".to_string())?;
    if alpha == 0.0 {
        return FockState::vacuum(dim);
    }
    let weights = SeriesWeights::new(DeformationSpec::Identity, alpha * alpha, 0.0)?;
    if weights.tail_beyond(dim) >= TAIL_LIMIT {
        return Err(Error::TruncationTooSmall { required: weights.required_dim(), available: dim });
    }
    Ok(weights.state(alpha, dim))
}

/// Nonlinear coherent state `|zeta, f>` over `|0>..|max_dim-1>`.
///
/// The series is summed over its full window first; `max_dim` must reach one
/// past the last photon number whose weight exceeds `floor` relative to the
/// full normalisation (and keep the tail mass under [`TAIL_LIMIT`]), otherwise
/// the state is rejected. Amplitudes below the floor inside the window are kept.
pub fn f_coherent_with(spec: DeformationSpec, zeta: f64, truncation: &Truncation) -> Result<FockState> {
    spec.validate()?;
    require(zeta.is_finite(), || format!("zeta must be finite, got {zeta}"))?;
    require(truncation.max_dim > 0, || "max_dim must be positive".to_string())?;
    if zeta == 0.0 {
        return FockState::vacuum(truncation.max_dim);
    }
    let weights = SeriesWeights::new(spec, zeta * zeta, truncation.floor)?;
    let required = required_dim(&weights, truncation.floor);
    if required > truncation.max_dim {
        return Err(Error::TruncationTooSmall { required, available: truncation.max_dim });
    }
    Ok(weights.state(zeta, truncation.max_dim))
}

fn required_dim(weights: &SeriesWeights, floor: f64) -> usize {
    weights.effective_dim(floor).max(weights.required_dim())
}

/// Smallest dimension [`f_coherent_with`] accepts for these parameters.
pub fn f_coherent_required_dim(spec: DeformationSpec, zeta: f64, floor: f64) -> Result<usize> {
    spec.validate()?;
    require(zeta.is_finite(), || format!("zeta must be finite, got {zeta}"))?;
    if zeta == 0.0 {
        return Ok(1);
    }
    Ok(required_dim(&SeriesWeights::new(spec, zeta * zeta, floor)?, floor))
}

pub fn f_coherent(spec: DeformationSpec, zeta: f64, max_dim: usize) -> Result<FockState> {
    f_coherent_with(spec, zeta, &Truncation { max_dim, ..Truncation::default() })
}

/// `<a|b>`; the shorter state is implicitly zero-padded.
pub fn overlap(a: &FockState, b: &FockState) -> Complex64 {
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for (x, y) in a.amplitudes.iter().zip(&b.amplitudes) {
        let p = x.conj() * y;
        re += p.re;
        im += p.im;
    }
    Complex64::new(re.value(), im.value())
}

/// Normalised symmetric superposition of two normalised states.
pub fn even_cat(plus: &FockState, minus: &FockState) -> Result<FockState> {
    let dim = plus.dim().max(minus.dim());
    let (plus, minus) = (plus.embed(dim)?, minus.embed(dim)?);
    let norm_sqr = 2.0 + 2.0 * overlap(&plus, &minus).re;
    if norm_sqr < 1e-12 {
        return Err(Error::DegenerateSuperposition { norm_sqr });
    }
    let scale = norm_sqr.sqrt().recip();
    let amplitudes = plus.amplitudes.iter().zip(&minus.amplitudes).map(|(a, b)| (a + b) * scale).collect();
    Ok(FockState { amplitudes, tail_mass: plus.tail_mass.max(minus.tail_mass) })
}

/// `<psi|(a + a^+)|psi>` for a truncated state.
pub fn quadrature_mean(state: &FockState) -> f64 {
    let c = &state.amplitudes;
    2.0 * compensated_sum((0..c.len().saturating_sub(1)).map(|n| ((n + 1) as f64).sqrt() * (c[n].conj() * c[n + 1]).re))
}

/// Separation `d` of the two components of the cat built on `|zeta, f>`.
pub fn separation_with(spec: DeformationSpec, zeta: f64, truncation: &Truncation) -> Result<f64> {
    Ok(quadrature_mean(&f_coherent_with(spec, zeta, truncation)?))
}

pub fn separation(spec: DeformationSpec, zeta: f64) -> Result<f64> {
    separation_with(spec, zeta, &Truncation::default())
}

/// Photon-number distribution `P(n) = |c_n|^2`.
pub fn number_distribution(state: &FockState) -> Vec<f64> {
    state.amplitudes.iter().map(|c| c.norm_sqr()).collect()
}
