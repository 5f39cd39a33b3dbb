//! Visibility of damped cats: closed-form series against explicit Kraus evolution.

use fcat::{visibility_deformed, visibility_numeric, visibility_undeformed, DeformationSpec};
use std::f64::consts::SQRT_2;

fn main() -> fcat::Result<()> {
    let lag = DeformationSpec::laguerre(0.45048)?;
    println!("{:>5} {:>10} {:>4} {:>12} {:>12} {:>9}", "gt", "undeformed", "n", "series", "kraus", "diff");
    for gamma_t in [0.25f64, 0.5, 1.0, 2.0] {
        let eta = (-gamma_t).exp();
        let v0 = visibility_undeformed(SQRT_2, eta)?;
        for n in 1..=3 {
            let series = visibility_deformed(lag, SQRT_2, n, eta)?;
            let kraus = visibility_numeric(lag, SQRT_2, n, eta, 96)?;
            println!(
                "{gamma_t:>5} {v0:>10.6} {n:>4} {series:>12.9} {:>12.9} {:>9.1e}",
                kraus.value,
                (series - kraus.value).abs()
            );
        }
    }
    Ok(())
}
