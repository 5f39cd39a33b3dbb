//! Deformation functions, deformed factorials and the deformed exponential.

use fcat::{deformed_factorial, exp_f, f_value, DeformationSpec};

fn main() -> fcat::Result<()> {
    let specs = [
        DeformationSpec::Identity,
        DeformationSpec::q(1.2)?,
        DeformationSpec::q(0.8)?,
        DeformationSpec::laguerre(0.45048)?,
    ];
    for spec in specs {
        println!("{spec}");
        print!("  f(n), n = 0..6:");
        for n in 0..6 {
            print!(" {:.6}", f_value(spec, n)?);
        }
        println!();
        // [n]_f! kept as sign and log-magnitude; overflow-free for large n
        for n in [5, 20, 100] {
            let fact = deformed_factorial(spec, n)?;
            println!("  ln|[{n}]_f!| = {:.6}", fact.log_magnitude);
        }
        match exp_f(spec, 2.0) {
            Ok(v) => println!("  exp_f(2) = {v:.12}"),
            Err(e) => println!("  exp_f(2): {e}"),
        }
    }
    // xi = 1 sits on a pole of f(1)
    println!("{:?}", DeformationSpec::laguerre(1.0).and_then(|s| f_value(s, 1)));
    Ok(())
}
