//! Amplitude damping on density matrices: Kraus operators and the evolved state.

use fcat::{coherent, completeness_defect, evolve_full, kraus_operator, FockState, OperatorMatrix};

fn main() -> fcat::Result<()> {
    let eta = (-0.5f64).exp();
    let dim = 40;
    println!("eta = {eta:.6}, completeness defect = {:.2e}", completeness_defect(eta, dim)?);

    let a1 = kraus_operator(1, eta, 4)?;
    println!("A_1 (4x4) = {}", a1.matrix().map(|z| z.re));

    // a single photon leaks to the vacuum with probability 1 - eta
    let one = OperatorMatrix::pure(&FockState::number(1, 4)?);
    let out = evolve_full(&one, eta)?;
    println!("|1><1| -> P0 = {:.6}, P1 = {:.6}", out.diagonal(0).re, out.diagonal(1).re);

    // a coherent state stays coherent with amplitude sqrt(eta) alpha
    let rho = evolve_full(&OperatorMatrix::pure(&coherent(2.0, dim)?), eta)?;
    let expected = OperatorMatrix::pure(&coherent(eta.sqrt() * 2.0, dim)?);
    println!("|2> -> |{:.6}>: max deviation {:.2e}", eta.sqrt() * 2.0, rho.max_abs_diff(&expected));

    let report = rho.density_report();
    println!("{report:?} valid = {}", report.is_valid());
    Ok(())
}
