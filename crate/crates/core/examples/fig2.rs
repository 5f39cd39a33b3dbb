//! Visibility against gamma*t, and where the damped cat's photon number peaks.
//! Pass a path to write the CSV.

use fcat::figures::{fig2, Fig2Config};
use fcat::coherence::cat_number_distribution;
use fcat::DeformationSpec;
use std::f64::consts::SQRT_2;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fig = fig2(&Fig2Config { oracle: true, ..Fig2Config::default() })?;
    let mut worst = 0.0f64;
    let mut ordered_until = None;
    for row in &fig.rows {
        let v: Vec<f64> = row.deformed.iter().map(|v| *v.as_ref().unwrap()).collect();
        for (a, b) in v.iter().zip(row.numeric.as_ref().unwrap()) {
            worst = worst.max((a - b.as_ref().unwrap()).abs());
        }
        let ordered = v[2] > v[1] && v[1] > v[0] && v[0] > row.undeformed;
        if row.gamma_t > 0.0 && ordered_until.is_none() && !ordered {
            ordered_until = Some(row.gamma_t);
        }
    }
    println!("series vs kraus: max diff {worst:.1e}");
    match ordered_until {
        Some(t) => println!("n = 3 > 2 > 1 > undeformed breaks at gamma t = {t}"),
        None => println!("n = 3 > 2 > 1 > undeformed on the whole grid"),
    }

    let lag = DeformationSpec::laguerre(fig.config.xi)?;
    for gamma_t in [0.0f64, 1.0, 3.0] {
        let p = cat_number_distribution(lag, SQRT_2, (-gamma_t).exp(), 96)?;
        let peak = (0..p.len()).max_by(|&a, &b| p[a].total_cmp(&p[b])).unwrap();
        println!("gamma t = {gamma_t}: most probable n = {peak} (P = {:.4})", p[peak]);
    }

    if let Some(path) = std::env::args().nth(1) {
        fig.to_csv().write_atomic(path.as_ref())?;
        println!("wrote {path}");
    }
    Ok(())
}
