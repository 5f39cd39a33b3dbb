//! Deformation functions `f(n)`, deformed factorials and the deformed
//! exponential.
//!
//! The deformed factorial is
//!
//! ```text
//! [n]_f! = f(0)^2 * prod_{k=1..n} k f(k)^2
//! ```
//!
//! which is the normalisation of the eigenstates of `A = a f(a^+ a)`. For the
//! q-deformation it is the q-factorial `[n]_q!`. It is always carried in
//! signed log form because it overflows long before the series it feeds
//! become negligible.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use crate::error::{require, Error, Result};
use crate::numeric::CompensatedSum;

/// Number of terms every deformed series is summed over.
pub const SERIES_CAP: usize = 512;

/// A series has converged when its last [`TRAILING_TERMS`] terms are all
/// below this fraction of the partial sum.
pub const SERIES_TOLERANCE: f64 = 1e-15;

pub const TRAILING_TERMS: usize = 3;

/// `|L^0_n| < SINGULAR_THRESHOLD * max(1, |L^1_n|)` marks a pole of the
/// Laguerre deformation.
pub const SINGULAR_THRESHOLD: f64 = 1e-12;

/// Which deformation function is in force.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DeformationSpec {
    Identity,
    /// `f(n) = sqrt([n]_q / n)`, `f(0) = 1`.
    QDeform { q: f64 },
    /// `f(n) = L^1_n(xi^2) / ((n + 1) L^0_n(xi^2))`.
    Laguerre { xi: f64 },
}

/// A one-parameter family of deformations, used by parameter scans.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DeformationFamily {
    Identity,
    Q,
    Laguerre,
}

impl DeformationFamily {
    pub fn spec(self, param: f64) -> Result<DeformationSpec> {
        match self {
            DeformationFamily::Identity => Ok(DeformationSpec::Identity),
            DeformationFamily::Q => DeformationSpec::q(param),
            DeformationFamily::Laguerre => DeformationSpec::laguerre(param),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DeformationFamily::Identity => "identity",
            DeformationFamily::Q => "q",
            DeformationFamily::Laguerre => "laguerre",
        }
    }
}

impl DeformationSpec {
    pub fn q(q: f64) -> Result<Self> {
        let spec = DeformationSpec::QDeform { q };
        spec.validate()?;
        Ok(spec)
    }

    pub fn laguerre(xi: f64) -> Result<Self> {
        let spec = DeformationSpec::Laguerre { xi };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            DeformationSpec::Identity => Ok(()),
            DeformationSpec::QDeform { q } => {
                require(q.is_finite() && q > 0.0, || format!("q must be finite and > 0, got {q}"))
            }
            DeformationSpec::Laguerre { xi } => {
                require(xi.is_finite() && xi >= 0.0, || format!("xi must be finite and >= 0, got {xi}"))
            }
        }
    }

    pub fn family(&self) -> DeformationFamily {
        match self {
            DeformationSpec::Identity => DeformationFamily::Identity,
            DeformationSpec::QDeform { .. } => DeformationFamily::Q,
            DeformationSpec::Laguerre { .. } => DeformationFamily::Laguerre,
        }
    }

    pub fn param(&self) -> Option<f64> {
        match *self {
            DeformationSpec::Identity => None,
            DeformationSpec::QDeform { q } => Some(q),
            DeformationSpec::Laguerre { xi } => Some(xi),
        }
    }
}

impl fmt::Display for DeformationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeformationSpec::Identity => write!(f, "identity"),
            DeformationSpec::QDeform { q } => write!(f, "q({q})"),
            DeformationSpec::Laguerre { xi } => write!(f, "laguerre({xi})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: f64) -> Sign {
        match x.partial_cmp(&0.0) {
            Some(Ordering::Greater) => Sign::Positive,
            Some(Ordering::Less) => Sign::Negative,
            _ => Sign::Zero,
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Negative => -1.0,
            Sign::Zero => 0.0,
            Sign::Positive => 1.0,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        match (self, rhs) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

/// A real number stored as `sign * exp(log_magnitude)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SignedLogValue {
    pub sign: Sign,
    /// Natural log of the magnitude; meaningless when `sign` is zero.
    pub log_magnitude: f64,
}

impl SignedLogValue {
    pub const ONE: SignedLogValue = SignedLogValue { sign: Sign::Positive, log_magnitude: 0.0 };
    pub const ZERO: SignedLogValue = SignedLogValue { sign: Sign::Zero, log_magnitude: f64::NEG_INFINITY };

    pub fn new(sign: Sign, log_magnitude: f64) -> Self {
        if sign == Sign::Zero {
            Self::ZERO
        } else {
            Self { sign, log_magnitude }
        }
    }

    pub fn from_f64(x: f64) -> Self {
        Self::new(Sign::of(x), x.abs().ln())
    }

    pub fn to_f64(self) -> f64 {
        match self.sign {
            Sign::Zero => 0.0,
            s => s.as_f64() * self.log_magnitude.exp(),
        }
    }

    pub fn is_zero(self) -> bool {
        self.sign == Sign::Zero
    }
}

impl Mul for SignedLogValue {
    type Output = SignedLogValue;

    fn mul(self, rhs: SignedLogValue) -> SignedLogValue {
        SignedLogValue::new(self.sign * rhs.sign, self.log_magnitude + rhs.log_magnitude)
    }
}

/// Associated Laguerre polynomial `L^m_n(x)` by the three-term recurrence in `n`.
pub fn laguerre(m: u32, n: usize, x: f64) -> f64 {
    let alpha = m as f64;
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `L^m_0(x) .. L^m_{len-1}(x)`.
pub fn laguerre_sequence(m: u32, len: usize, x: f64) -> Vec<f64> {
    let alpha = m as f64;
    let mut out = Vec::with_capacity(len);
    if len == 0 {
        return out;
    }
    out.push(1.0);
    if len == 1 {
        return out;
    }
    out.push(1.0 + alpha - x);
    for k in 1..len - 1 {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * out[k] - (kf + alpha) * out[k - 1]) / (kf + 1.0);
        out.push(next);
    }
    out
}

fn check_laguerre_pole(n: usize, l0: f64, l1: f64) -> Result<()> {
    if l0.abs() < SINGULAR_THRESHOLD * l1.abs().max(1.0) {
        Err(Error::SingularDeformation { n })
    } else {
        Ok(())
    }
}

/// `ln sinh(a)` for `a > 0` without overflow.
fn ln_sinh(a: f64) -> f64 {
    if a > 20.0 {
        a - std::f64::consts::LN_2 + (-(-2.0 * a).exp()).ln_1p()
    } else {
        a.sinh().ln()
    }
}

/// `ln [n]_q` with `[n]_q = (q^n - q^-n) / (q - q^-1)`, for `n >= 1`.
fn ln_q_number(q: f64, n: usize) -> f64 {
    let h = q.ln().abs();
    if h == 0.0 {
        return (n as f64).ln();
    }
    ln_sinh(n as f64 * h) - ln_sinh(h)
}

/// The deformation function `f(n)`.
pub fn f_value(spec: DeformationSpec, n: usize) -> Result<f64> {
    spec.validate()?;
    match spec {
        DeformationSpec::Identity => Ok(1.0),
        DeformationSpec::QDeform { q } => {
            if n == 0 || q == 1.0 {
                Ok(1.0)
            } else {
                Ok((0.5 * (ln_q_number(q, n) - (n as f64).ln())).exp())
            }
        }
        DeformationSpec::Laguerre { xi } => {
            let x = xi * xi;
            let l0 = laguerre(0, n, x);
            let l1 = laguerre(1, n, x);
            check_laguerre_pole(n, l0, l1)?;
            Ok(l1 / ((n as f64 + 1.0) * l0))
        }
    }
}

/// `[0]_f!, [1]_f!, .., [len-1]_f!` in signed log form.
pub fn deformed_factorials(spec: DeformationSpec, len: usize) -> Result<Vec<SignedLogValue>> {
    spec.validate()?;
    let mut out = Vec::with_capacity(len);
    if len == 0 {
        return Ok(out);
    }
    // f(0) = 1 for every shipped deformation; the factor is kept for form.
    let f0 = f_value(spec, 0)?;
    let mut acc = SignedLogValue::from_f64(f0 * f0);
    out.push(acc);

    match spec {
        DeformationSpec::Identity => {
            for k in 1..len {
                acc = acc * SignedLogValue::new(Sign::Positive, (k as f64).ln());
                out.push(acc);
            }
        }
        DeformationSpec::QDeform { q } => {
            for k in 1..len {
                acc = acc * SignedLogValue::new(Sign::Positive, ln_q_number(q, k));
                out.push(acc);
            }
        }
        DeformationSpec::Laguerre { xi } => {
            let x = xi * xi;
            let l0 = laguerre_sequence(0, len, x);
            let l1 = laguerre_sequence(1, len, x);
            for k in 1..len {
                check_laguerre_pole(k, l0[k], l1[k])?;
                let kf = k as f64;
                let factor = if l1[k] == 0.0 {
                    SignedLogValue::ZERO
                } else {
                    let ln_f = l1[k].abs().ln() - (kf + 1.0).ln() - l0[k].abs().ln();
                    SignedLogValue::new(Sign::Positive, kf.ln() + 2.0 * ln_f)
                };
                acc = acc * factor;
                out.push(acc);
            }
        }
    }
    Ok(out)
}

/// The deformed factorial `[n]_f!`.
pub fn deformed_factorial(spec: DeformationSpec, n: usize) -> Result<SignedLogValue> {
    Ok(deformed_factorials(spec, n + 1)?[n])
}

/// Checks that the trailing terms of a series are negligible.
pub(crate) fn check_converged(terms: &[f64], sum: f64) -> Result<()> {
    let tail = &terms[terms.len().saturating_sub(TRAILING_TERMS)..];
    if sum.is_finite() && tail.iter().all(|t| t.abs() <= SERIES_TOLERANCE * sum.abs()) {
        Ok(())
    } else {
        Err(Error::NonConvergent { terms: terms.len() })
    }
}

/// The deformed exponential `exp_f(x) = sum_n x^n / [n]_f!`.
pub fn exp_f(spec: DeformationSpec, x: f64) -> Result<f64> {
    spec.validate()?;
    require(x.is_finite(), || format!("exp_f argument must be finite, got {x}"))?;
    if x == 0.0 {
        return Ok(1.0 / deformed_factorial(spec, 0)?.to_f64());
    }
    let factorials = deformed_factorials(spec, SERIES_CAP)?;
    let ln_x = x.abs().ln();
    let mut terms = Vec::with_capacity(SERIES_CAP);
    for (n, fact) in factorials.iter().enumerate() {
        if fact.is_zero() {
            return Err(Error::SingularDeformation { n });
        }
        let sign = if x < 0.0 && n % 2 == 1 { -fact.sign.as_f64() } else { fact.sign.as_f64() };
        terms.push(sign * (n as f64 * ln_x - fact.log_magnitude).exp());
    }
    let sum = terms.iter().copied().collect::<CompensatedSum>().value();
    check_converged(&terms, sum)?;
    Ok(sum)
}
