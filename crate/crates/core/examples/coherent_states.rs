//! Fock-basis coherent and f-coherent states, their overlaps and cat superpositions.

use fcat::{coherent, even_cat, f_coherent, fock, number_distribution, overlap, separation, DeformationSpec};
use std::f64::consts::SQRT_2;

fn main() -> fcat::Result<()> {
    let lag = DeformationSpec::laguerre(0.45048)?;
    let needed = fock::f_coherent_required_dim(lag, SQRT_2, 1e-12)?;
    println!("Laguerre(0.45048), zeta = sqrt 2: {needed} Fock levels needed");

    let plus = f_coherent(lag, SQRT_2, 128)?;
    let minus = f_coherent(lag, -SQRT_2, 128)?;
    println!("<zeta|-zeta> = {:.6}", overlap(&plus, &minus).re);

    let p = number_distribution(&plus);
    for (n, pn) in p.iter().enumerate().take(8) {
        println!("  P({n}) = {pn:.6}");
    }

    let cat = even_cat(&plus, &minus)?;
    let odd: f64 = number_distribution(&cat).iter().skip(1).step_by(2).sum();
    println!("even cat: odd-number weight {odd:.2e}");

    let glauber = coherent(SQRT_2, 64)?;
    println!("undeformed tail beyond 64 levels: {:.2e}", glauber.tail_mass());

    for spec in [DeformationSpec::Identity, DeformationSpec::q(1.2)?, lag] {
        println!("d({spec}) = {:.9}", separation(spec, SQRT_2)?);
    }
    Ok(())
}
