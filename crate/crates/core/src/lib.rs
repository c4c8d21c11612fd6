//! Harmonic-polynomial solver for the Dirichlet problem for Laplace's
//! equation on a disk.
//!
//! Boundary data is expanded in a truncated Fourier series computed by the
//! periodic trapezoidal rule, and the series is evaluated through the
//! harmonic polynomials `P_k + iQ_k = (x + iy)^k`, which removes the polar
//! branch cut. Every evaluation can be paired with an a-priori bound.

pub mod boundary_data;
pub mod config;
pub mod corpus;
pub mod error;
pub mod estimates;
pub mod fourier;
pub mod harmonic;
pub mod io;
pub mod oracle;
pub mod study;
pub mod taylor;

pub use boundary_data::{
    pullback, theta_of, BoundaryData, CartesianPoint, DiskGeometry, PolarPoint, Seminorm,
    SeminormSource, Smoothness,
};
pub use error::{Error, Result};
pub use estimates::{BoundKind, BoundReport, JacksonConstants};
pub use fourier::{compute_spectrum, FourierSpectrum};
pub use harmonic::{HarmonicApproximant, MonomialTable};
pub use study::{run_study, StudyConfig, StudyResult};
pub use taylor::{expand, SeriesValue, TaylorExpansion};
