//! Decoherence of f-deformed Schrodinger cat states.
//!
//! Superpositions of nonlinear (f-deformed) coherent states are damped by a
//! zero-temperature amplitude-damping channel and their quantum visibility is
//! compared with the undeformed cat of the same separation.
//!
//! * [`deformation`]: `f(n)`, deformed factorials, `exp_f`, Laguerre polynomials
//! * [`fock`]: coherent, f-coherent and even-cat states, separation
//! * [`channel`]: Kraus operators and evolution
//! * [`coherence`]: visibility, analytic and by explicit evolution
//! * [`calibration`]: separation scans and calibration of `xi`
//! * [`figures`]: the three figure tables and their CSV form
//! * [`cli`]: the `fcat` command line
#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod calibration;
pub mod channel;
pub mod cli;
pub mod coherence;
pub mod deformation;
pub mod error;
pub mod figures;
pub mod fock;
pub mod numeric;

pub use calibration::{calibrate_xi, scan_separation, ScanCurve, ScanPoint};
pub use channel::{completeness_defect, evolve, evolve_full, kraus_operator, ChannelParams, OperatorMatrix};
pub use coherence::{
    coherence_function, visibility_deformed, visibility_numeric, visibility_undeformed, VisibilitySample,
};
pub use deformation::{
    deformed_factorial, exp_f, f_value, laguerre, DeformationFamily, DeformationSpec, Sign, SignedLogValue,
};
pub use error::{Error, Result};
pub use fock::{coherent, even_cat, f_coherent, number_distribution, overlap, separation, FockState, Truncation};
