//! Visibility at gamma*t = 1 against zeta^2 with xi calibrated to d = 2 sqrt 2.
//! Pass a path to write the CSV.

use fcat::figures::{fig3, Fig3Config};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fig = fig3(&Fig3Config::default())?;
    for row in &fig.rows {
        match (&row.xi, &row.visibility) {
            (Ok(xi), Ok(v)) => println!("zeta^2 = {:.2}  xi = {xi:.6}  V = {v:.6}", row.zeta2),
            (Err(e), _) | (_, Err(e)) => println!("zeta^2 = {:.2}  {}", row.zeta2, e.name()),
        }
    }
    if let Some(best) = fig.argmax() {
        let v = *best.visibility.as_ref().unwrap();
        println!("max V = {v:.6} at zeta^2 = {:.2}, {:.2}x the undeformed {:.6}", best.zeta2, v / fig.reference, fig.reference);
    }
    if let Some(path) = std::env::args().nth(1) {
        fig.to_csv().write_atomic(path.as_ref())?;
        println!("wrote {path}");
    }
    Ok(())
}
