//! Separation against the deformation parameter for both families.
//! Pass a path to write the CSV.

use fcat::figures::{fig1, Fig1Config};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fig = fig1(&Fig1Config::default())?;
    println!("undeformed d = {:.6}", fig.reference);
    println!("q:  max d = {:.6}", fig.q.max().unwrap_or(f64::NAN));
    println!("xi: max d = {:.6}, {} gaps", fig.xi.max().unwrap_or(f64::NAN), fig.xi.gaps().count());
    if let Some(path) = std::env::args().nth(1) {
        fig.to_csv().write_atomic(path.as_ref())?;
        println!("wrote {path}");
    }
    Ok(())
}
