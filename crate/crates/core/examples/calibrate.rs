//! Finding the Laguerre parameter that reproduces a given cat separation.

use fcat::{calibrate_xi, scan_separation, separation, DeformationFamily, DeformationSpec};
use std::f64::consts::SQRT_2;

fn main() -> fcat::Result<()> {
    let xi = calibrate_xi(SQRT_2, 2.0 * SQRT_2, 1.0)?;
    let d = separation(DeformationSpec::laguerre(xi)?, SQRT_2)?;
    println!("zeta^2 = 2: xi = {xi:.12}, d = {d:.12} (2 sqrt 2 = {:.12})", 2.0 * SQRT_2);

    // the separation curve the calibration walks along
    let curve = scan_separation(DeformationFamily::Laguerre, SQRT_2, 0.0, 0.7, 0.05)?;
    for p in &curve.samples {
        match &p.value {
            Ok(d) => println!("  xi = {:.2}  d = {d:.6}", p.param),
            Err(e) => println!("  xi = {:.2}  gap ({})", p.param, e.name()),
        }
    }

    println!("target 100: {:?}", calibrate_xi(SQRT_2, 100.0, 1.0));
    Ok(())
}
