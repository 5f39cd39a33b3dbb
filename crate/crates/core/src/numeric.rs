//! Small numerical helpers shared by the series and channel code.

use std::ops::AddAssign;

/// Neumaier's variant of compensated summation.
///
/// Unlike plain Kahan summation it stays exact when an addend is larger in
/// magnitude than the running sum, which is the common case for the
/// alternating series in this crate.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl AddAssign<f64> for CompensatedSum {
    fn add_assign(&mut self, x: f64) {
        self.add(x);
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Compensated sum of an iterator.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}

/// Table of `ln k!` for `k < len`, accumulated with compensation.
#[derive(Clone, Debug)]
pub struct LnFactorial {
    table: Vec<f64>,
}

impl LnFactorial {
    pub fn new(len: usize) -> Self {
        let mut table = Vec::with_capacity(len.max(1));
        let mut acc = CompensatedSum::new();
        table.push(0.0);
        for k in 1..len {
            acc.add((k as f64).ln());
            table.push(acc.value());
        }
        Self { table }
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// `ln n!`
    pub fn get(&self, n: usize) -> f64 {
        self.table[n]
    }

    /// `ln C(n, k)` for `k <= n`.
    pub fn ln_binomial(&self, n: usize, k: usize) -> f64 {
        debug_assert!(k <= n);
        self.table[n] - self.table[k] - self.table[n - k]
    }
}

/// Format with `sig` significant digits, `%g` style: trailing zeros are
/// trimmed and scientific notation is used for very small or large values.
pub fn format_sig(x: f64, sig: usize) -> String {
    if x.is_nan() {
        return "NaN".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sig = sig.max(1);
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent in {:e} output");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= sig as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
