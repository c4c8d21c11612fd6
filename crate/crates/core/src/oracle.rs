//! Reference implementations used only to validate the main pipeline.
//!
//! Nothing in `harmonic`, `estimates` or `taylor` depends on this module.

use std::f64::consts::PI;

use crate::boundary_data::{grid_angle, BoundaryData, CartesianPoint};
use crate::error::{Error, Result};
use crate::fourier::FourierSpectrum;

/// Node count for the Poisson quadrature at relative radius `rho = ‖p‖/R`:
/// `max(8192, ⌈100/(1 − rho)⌉)`.
pub fn default_poisson_nodes(rho: f64) -> usize {
    let near = (100.0 / (1.0 - rho)).ceil();
    if near.is_finite() && near > 8192.0 {
        near as usize
    } else {
        8192
    }
}

/// Poisson integral
/// `u(p) = (R² − ‖p‖²)/(2π) ∫ g(R cos φ, R sin φ) / (R² + ‖p‖² − 2R(x cos φ + y sin φ)) dφ`
/// by the periodic trapezoidal rule.
pub fn poisson_eval(b: &BoundaryData, p: CartesianPoint, nodes: Option<usize>) -> Result<f64> {
    let radius = b.radius();
    let rho = p.norm() / radius;
    if !(rho < 1.0) {
        return Err(Error::OutOfDomain(format!(
            "Poisson quadrature needs a point strictly inside the disk, got {p}"
        )));
    }
    let nodes = nodes.unwrap_or_else(|| default_poisson_nodes(rho));
    let values = b.values_on_grid(nodes);
    let r2 = p.x * p.x + p.y * p.y;
    let numerator = radius * radius - r2;
    let mut sum = 0.0;
    for (j, g) in values.iter().enumerate() {
        let (s, c) = grid_angle(j, nodes).sin_cos();
        let denom = radius * radius + r2 - 2.0 * radius * (p.x * c + p.y * s);
        sum += g / denom;
    }
    Ok(numerator / (2.0 * PI) * sum * (2.0 * PI / nodes as f64))
}

/// `a_0/2 + Σ (r/R)^k (a_k cos kθ + b_k sin kθ)` with library trigonometry.
pub fn polar_partial_sum(s: &FourierSpectrum, r: f64, theta: f64) -> Result<f64> {
    let radius = s.radius();
    if !(r >= 0.0 && r <= radius * (1.0 + 1e-12)) {
        return Err(Error::OutOfDomain(format!(
            "polar radius {r} must lie in [0, {radius}]"
        )));
    }
    let rho = r / radius;
    let mut sum = s.center_value();
    for k in 1..=s.n_max() {
        let kt = k as f64 * theta;
        sum += rho.powi(k as i32) * (s.cos_coef(k) * kt.cos() + s.sin_coef(k) * kt.sin());
    }
    Ok(sum)
}

/// `Σ_{k=1}^{m} a_k b_k` by summation by parts:
/// `a_{m+1} B_m − a_1 B_0 − Σ_{k=1}^{m} (a_{k+1} − a_k) B_k` with `B_k = b_1 + … + b_k`.
///
/// `a` carries one extra trailing element `a_{m+1}`.
pub fn abel_sum(a: &[f64], b: &[f64]) -> Result<f64> {
    if b.is_empty() || a.len() != b.len() + 1 {
        return Err(Error::InvalidArgument(format!(
            "abel_sum needs len(a) = len(b) + 1 >= 2, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    let m = b.len();
    let mut partial = 0.0;
    let mut correction = 0.0;
    for k in 0..m {
        partial += b[k];
        correction += (a[k + 1] - a[k]) * partial;
    }
    Ok(a[m] * partial - correction)
}
