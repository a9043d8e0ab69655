//! Exact computations with extended coeffective complexes on finite models:
//! symplectic, conformally symplectic and G2 calibrations over the
//! rationals, built as explicit matrices and checked against the exact
//! sequences relating them to plain and twisted de Rham cohomology.

pub mod builder;
pub mod error;
pub mod exterior;
pub mod homology;
pub mod models;
pub mod par;
pub mod pipeline;
pub mod qlinalg;
pub mod rational;
pub mod report;
pub mod structures;
pub mod sweeps;

pub use error::{Error, Result, ValidationCode, ValidationFailure};
pub use exterior::{Bivector, Blade, Form};
pub use par::Execution;
pub use qlinalg::{Matrix, Subquotient};
pub use rational::Rational;
pub use structures::{Calibration, CalibrationKind};
