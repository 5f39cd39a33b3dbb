//! The three figure tables (separation scans, visibility against time,
//! calibrated visibility against `zeta^2`) and their CSV form.
//!
//! CSV layout: `# key=value` comment lines recording every effective
//! parameter, one header row, then data rows. Numbers carry 12 significant
//! digits; gaps are empty fields with the error name in an `error`/`status`
//! column. Output is byte-identical for identical inputs.

use std::fs;
use std::io;
use std::path::Path;

use rayon::prelude::*;

use crate::calibration::{calibrate_xi_with, grid, scan_separation_with, ScanCurve};
use crate::coherence::{visibility_deformed, visibility_numeric, visibility_undeformed};
use crate::deformation::{DeformationFamily, DeformationSpec};
use crate::error::{require, Result};
use crate::fock::Truncation;
use crate::numeric::format_sig;

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Value of the Laguerre parameter used for the visibility-versus-time figure.
pub const FIG2_XI: f64 = 0.45048;

fn num(x: f64) -> String {
    format_sig(x, SIGNIFICANT_DIGITS)
}

fn cell(x: &Result<f64>) -> String {
    x.as_ref().map(|v| num(*v)).unwrap_or_default()
}

fn error_name(x: &Result<f64>) -> &'static str {
    x.as_ref().err().map_or("", |e| e.name())
}

/// A rendered CSV document.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CsvTable {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), ..Self::default() }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.meta.push((key.to_string(), value.to_string()));
        self
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k}={v}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Writes to a sibling temporary file and renames it into place.
    pub fn write_atomic(&self, path: &Path) -> io::Result<()> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(format!(".tmp{}", std::process::id()));
        let tmp = Path::new(&tmp);
        fs::write(tmp, self.render())?;
        fs::rename(tmp, path).inspect_err(|_| {
            let _ = fs::remove_file(tmp);
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fig1Config {
    pub zeta2: f64,
    pub q_min: f64,
    pub q_max: f64,
    pub q_step: f64,
    pub xi_min: f64,
    pub xi_max: f64,
    pub xi_step: f64,
    pub truncation: Truncation,
}

impl Default for Fig1Config {
    fn default() -> Self {
        Self {
            zeta2: 2.0,
            q_min: 0.5,
            q_max: 2.0,
            q_step: 0.01,
            xi_min: 0.0,
            xi_max: 1.2,
            xi_step: 0.005,
            truncation: Truncation { max_dim: 128, ..Truncation::default() },
        }
    }
}

/// Separation against deformation parameter for both families.
#[derive(Clone, Debug, PartialEq)]
pub struct Fig1 {
    pub config: Fig1Config,
    pub q: ScanCurve,
    pub xi: ScanCurve,
    /// `2 zeta`, the undeformed separation.
    pub reference: f64,
}

pub fn fig1(config: &Fig1Config) -> Result<Fig1> {
    require(config.zeta2.is_finite() && config.zeta2 >= 0.0, || "zeta2 must be >= 0".to_string())?;
    let zeta = config.zeta2.sqrt();
    let q = scan_separation_with(DeformationFamily::Q, zeta, config.q_min, config.q_max, config.q_step, &config.truncation)?;
    let xi = scan_separation_with(
        DeformationFamily::Laguerre,
        zeta,
        config.xi_min,
        config.xi_max,
        config.xi_step,
        &config.truncation,
    )?;
    Ok(Fig1 { config: config.clone(), q, xi, reference: 2.0 * zeta })
}

impl Fig1 {
    pub fn to_csv(&self) -> CsvTable {
        let c = &self.config;
        let mut t = CsvTable::new(&["series", "param", "separation", "error"]);
        t.meta("figure", "fig1")
            .meta("zeta2", num(c.zeta2))
            .meta("q_min", num(c.q_min))
            .meta("q_max", num(c.q_max))
            .meta("q_step", num(c.q_step))
            .meta("xi_min", num(c.xi_min))
            .meta("xi_max", num(c.xi_max))
            .meta("xi_step", num(c.xi_step))
            .meta("dim", c.truncation.max_dim)
            .meta("floor", num(c.truncation.floor));
        for (label, curve) in [("q", &self.q), ("xi", &self.xi)] {
            for p in &curve.samples {
                t.rows.push(vec![label.into(), num(p.param), cell(&p.value), error_name(&p.value).into()]);
            }
        }
        for p in &self.xi.samples {
            t.rows.push(vec!["undeformed".into(), num(p.param), num(self.reference), String::new()]);
        }
        t
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fig2Config {
    pub zeta2: f64,
    pub xi: f64,
    pub gamma_t_max: f64,
    pub step: f64,
    pub ns: Vec<usize>,
    /// Also evaluate the explicit Kraus-evolution route.
    pub oracle: bool,
    pub truncation: Truncation,
}

impl Default for Fig2Config {
    fn default() -> Self {
        Self {
            zeta2: 2.0,
            xi: FIG2_XI,
            gamma_t_max: 3.0,
            step: 0.05,
            ns: vec![1, 2, 3],
            oracle: false,
            truncation: Truncation { max_dim: 128, ..Truncation::default() },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fig2Row {
    pub gamma_t: f64,
    pub undeformed: f64,
    /// One entry per configured `n`.
    pub deformed: Vec<Result<f64>>,
    pub numeric: Option<Vec<Result<f64>>>,
}

/// Visibility against dimensionless time, undeformed and Laguerre-deformed.
#[derive(Clone, Debug, PartialEq)]
pub struct Fig2 {
    pub config: Fig2Config,
    pub rows: Vec<Fig2Row>,
}

pub fn fig2(config: &Fig2Config) -> Result<Fig2> {
    require(config.zeta2.is_finite() && config.zeta2 >= 0.0, || "zeta2 must be >= 0".to_string())?;
    require(!config.ns.is_empty(), || "need at least one n".to_string())?;
    let spec = DeformationSpec::laguerre(config.xi)?;
    let zeta = config.zeta2.sqrt();
    let times = grid(0.0, config.gamma_t_max, config.step)?;
    let rows = times
        .par_iter()
        .map(|&gamma_t| {
            let eta = (-gamma_t).exp();
            let undeformed = visibility_undeformed(zeta, eta)?;
            let deformed = config.ns.iter().map(|&n| visibility_deformed(spec, zeta, n, eta)).collect();
            let numeric = config.oracle.then(|| {
                config
                    .ns
                    .iter()
                    .map(|&n| visibility_numeric(spec, zeta, n, eta, config.truncation.max_dim).map(|s| s.value))
                    .collect()
            });
            Ok(Fig2Row { gamma_t, undeformed, deformed, numeric })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Fig2 { config: config.clone(), rows })
}

impl Fig2 {
    pub fn to_csv(&self) -> CsvTable {
        let c = &self.config;
        let mut columns = vec!["gamma_t".to_string(), "undeformed".to_string()];
        columns.extend(c.ns.iter().map(|n| format!("deformed_n{n}")));
        if c.oracle {
            columns.extend(c.ns.iter().map(|n| format!("numeric_n{n}")));
        }
        columns.push("error".into());
        let ns: Vec<String> = c.ns.iter().map(|n| n.to_string()).collect();
        let mut t = CsvTable { columns, ..CsvTable::default() };
        t.meta("figure", "fig2")
            .meta("zeta2", num(c.zeta2))
            .meta("xi", num(c.xi))
            .meta("gamma_t_max", num(c.gamma_t_max))
            .meta("step", num(c.step))
            .meta("n", ns.join(" "))
            .meta("oracle", c.oracle)
            .meta("dim", c.truncation.max_dim)
            .meta("floor", num(c.truncation.floor));
        for row in &self.rows {
            let mut fields = vec![num(row.gamma_t), num(row.undeformed)];
            fields.extend(row.deformed.iter().map(cell));
            let mut first_error = row.deformed.iter().map(error_name).find(|e| !e.is_empty());
            if let Some(numeric) = &row.numeric {
                fields.extend(numeric.iter().map(cell));
                first_error = first_error.or_else(|| numeric.iter().map(error_name).find(|e| !e.is_empty()));
            }
            fields.push(first_error.unwrap_or("").into());
            t.rows.push(fields);
        }
        t
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fig3Config {
    pub gamma_t: f64,
    pub n: usize,
    pub zeta2_min: f64,
    pub zeta2_max: f64,
    pub step: f64,
    /// Photon number of the undeformed cat; the target separation is `2 alpha`.
    pub alpha2: f64,
    pub xi_max: f64,
    pub oracle: bool,
    pub truncation: Truncation,
}

impl Default for Fig3Config {
    fn default() -> Self {
        Self {
            gamma_t: 1.0,
            n: 2,
            zeta2_min: 0.1,
            zeta2_max: 2.0,
            step: 0.05,
            alpha2: 2.0,
            xi_max: 1.2,
            oracle: false,
            truncation: Truncation { max_dim: 128, ..Truncation::default() },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fig3Row {
    pub zeta2: f64,
    pub xi: Result<f64>,
    pub visibility: Result<f64>,
    pub numeric: Option<Result<f64>>,
}

/// Visibility at fixed time against `zeta^2`, with `xi` calibrated so the
/// deformed cat has the separation of the undeformed one.
#[derive(Clone, Debug, PartialEq)]
pub struct Fig3 {
    pub config: Fig3Config,
    pub rows: Vec<Fig3Row>,
    /// Undeformed visibility `exp(-2 alpha^2 (1 - exp(-gamma t)))`.
    pub reference: f64,
}

impl Fig3 {
    /// Grid row with the largest calibrated visibility.
    pub fn argmax(&self) -> Option<&Fig3Row> {
        self.rows
            .iter()
            .filter(|r| r.visibility.is_ok())
            .max_by(|a, b| a.visibility.as_ref().unwrap().total_cmp(b.visibility.as_ref().unwrap()))
    }

    pub fn to_csv(&self) -> CsvTable {
        let c = &self.config;
        let mut columns = vec!["zeta2", "xi", "visibility"];
        if c.oracle {
            columns.push("numeric");
        }
        columns.extend(["undeformed", "status"]);
        let mut t = CsvTable::new(&columns);
        t.meta("figure", "fig3")
            .meta("gamma_t", num(c.gamma_t))
            .meta("n", c.n)
            .meta("zeta2_min", num(c.zeta2_min))
            .meta("zeta2_max", num(c.zeta2_max))
            .meta("step", num(c.step))
            .meta("alpha2", num(c.alpha2))
            .meta("d_target", num(2.0 * c.alpha2.sqrt()))
            .meta("xi_max", num(c.xi_max))
            .meta("oracle", c.oracle)
            .meta("dim", c.truncation.max_dim)
            .meta("floor", num(c.truncation.floor));
        for row in &self.rows {
            let mut fields = vec![num(row.zeta2), cell(&row.xi), cell(&row.visibility)];
            if let Some(numeric) = &row.numeric {
                fields.push(cell(numeric));
            }
            fields.push(num(self.reference));
            let status = [&row.xi, &row.visibility]
                .into_iter()
                .chain(row.numeric.as_ref())
                .map(error_name)
                .find(|e| !e.is_empty())
                .unwrap_or("ok");
            fields.push(status.into());
            t.rows.push(fields);
        }
        t
    }
}

pub fn fig3(config: &Fig3Config) -> Result<Fig3> {
    require(config.alpha2.is_finite() && config.alpha2 > 0.0, || "alpha2 must be > 0".to_string())?;
    require(config.gamma_t.is_finite() && config.gamma_t >= 0.0, || "gamma_t must be >= 0".to_string())?;
    require(config.zeta2_min > 0.0, || "zeta2 grid must start above 0".to_string())?;
    let eta = (-config.gamma_t).exp();
    let alpha = config.alpha2.sqrt();
    let d_target = 2.0 * alpha;
    let reference = visibility_undeformed(alpha, eta)?;
    let zeta2s = grid(config.zeta2_min, config.zeta2_max, config.step)?;
    let rows = zeta2s
        .par_iter()
        .map(|&zeta2| {
            let zeta = zeta2.sqrt();
            let xi = calibrate_xi_with(zeta, d_target, config.xi_max, &config.truncation);
            let spec = xi.clone().and_then(DeformationSpec::laguerre);
            let visibility = spec.clone().and_then(|s| visibility_deformed(s, zeta, config.n, eta));
            let numeric = config.oracle.then(|| {
                spec.clone()
                    .and_then(|s| visibility_numeric(s, zeta, config.n, eta, config.truncation.max_dim).map(|v| v.value))
            });
            Fig3Row { zeta2, xi, visibility, numeric }
        })
        .collect();
    Ok(Fig3 { config: config.clone(), rows, reference })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut t = CsvTable::new(&["a", "b"]);
        t.meta("dim", 128).meta("floor", num(1e-12));
        t.rows.push(vec![num(0.5), String::new()]);
        assert_eq!(t.render(), "# dim=128\n# floor=1e-12\na,b\n0.5,\n");
    }

    #[test]
    fn atomic_write_leaves_no_temporary() {
        let dir = std::env::temp_dir().join(format!("fcat-fig-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("out.csv");
        let t = CsvTable::new(&["x"]);
        t.write_atomic(&path).unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "x\n");
        assert_eq!(fs::read_dir(&dir).unwrap().count(), 1);
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn fig1_vacuum() {
        let cfg = Fig1Config { zeta2: 0.0, ..Fig1Config::default() };
        let fig = fig1(&cfg).unwrap();
        assert!(fig.q.values().chain(fig.xi.values()).all(|d| d == 0.0));
        assert_eq!(fig.reference, 0.0);
    }

    #[test]
    fn fig2_starts_at_full_visibility() {
        let cfg = Fig2Config { gamma_t_max: 0.2, ..Fig2Config::default() };
        let fig = fig2(&cfg).unwrap();
        let first = &fig.rows[0];
        assert_eq!(first.gamma_t, 0.0);
        assert_eq!(first.undeformed, 1.0);
        assert!(first.deformed.iter().all(|v| *v.as_ref().unwrap() == 1.0));
    }

    #[test]
    fn fig3_marks_failed_calibration() {
        // no crossing of a huge target
        let cfg = Fig3Config { alpha2: 2500.0, zeta2_min: 1.0, zeta2_max: 1.1, xi_max: 0.1, ..Fig3Config::default() };
        let fig = fig3(&cfg).unwrap();
        let csv = fig.to_csv().render();
        assert!(fig.rows.iter().all(|r| r.xi.is_err()));
        assert!(csv.lines().last().unwrap().ends_with(",NoCrossing"), "{csv}");
    }
}
