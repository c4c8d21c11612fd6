//! Convergence studies: measured error of `ũ_n` against a high-degree proxy,
//! next to the corresponding a-priori bound.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::boundary_data::{
    holder_seminorm_estimate, BoundaryData, CartesianPoint, Seminorm, DEFAULT_HOLDER_GRID,
};
use crate::error::{Error, Result};
use crate::estimates::{uniform_error_bound, uniform_error_bound_smooth, BoundReport, JacksonConstants};
use crate::fourier::{compute_spectrum, default_nodes};
use crate::harmonic::HarmonicApproximant;
use crate::io::format_f64;

/// Errors below this (relative to the data scale) are treated as rounding
/// noise and left out of the slope fit.
pub const NOISE_FLOOR: f64 = 1e-13;

#[derive(Debug, Clone)]
pub struct StudyConfig {
    pub degrees: Vec<usize>,
    /// Absolute radii `0 <= r <= R`.
    pub radii: Vec<f64>,
    /// Angles per circle on which the sup error is measured.
    pub angular_points: usize,
    pub gammas: JacksonConstants,
    /// Quadrature nodes for the proxy spectrum; `None` picks the default.
    pub nodes: Option<usize>,
    /// Used when the data declares no regularity class (Hölder exponent of the
    /// estimated seminorm).
    pub fallback_alpha: f64,
    pub holder_grid: usize,
}

impl StudyConfig {
    pub fn new(degrees: Vec<usize>, radii: Vec<f64>) -> Self {
        Self {
            degrees,
            radii,
            angular_points: 512,
            gammas: JacksonConstants::default(),
            nodes: None,
            fallback_alpha: 1.0,
            holder_grid: DEFAULT_HOLDER_GRID,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudyRow {
    pub n: usize,
    pub r: f64,
    pub measured_sup_err: f64,
    pub bound_value: f64,
    pub applicable: bool,
    /// Least-squares slope of `ln err` against `ln n` over this radius.
    pub slope_estimate: f64,
}

#[derive(Debug, Clone)]
pub struct StudyResult {
    pub proxy_degree: usize,
    pub nodes: usize,
    pub rows: Vec<StudyRow>,
    pub reports: Vec<BoundReport>,
}

/// Proxy degree `4 · max(n)`.
pub fn proxy_degree(degrees: &[usize]) -> usize {
    4 * degrees.iter().copied().max().unwrap_or(0)
}

/// Sup over `angular_points` equally spaced angles (one point when `r = 0`)
/// of `|ũ_N − ũ_n|`, summed directly from the tail terms.
pub fn measured_sup_error(
    proxy: &HarmonicApproximant,
    n: usize,
    r: f64,
    angular_points: usize,
) -> f64 {
    let count = if r == 0.0 { 1 } else { angular_points };
    (0..count)
        .into_par_iter()
        .map(|j| {
            let t = -PI + 2.0 * PI * j as f64 / count as f64;
            let p = CartesianPoint::new(r * t.cos(), r * t.sin());
            proxy.eval_tail(p, n, proxy.degree()).abs()
        })
        .reduce(|| 0.0, f64::max)
}

/// Least-squares slope of `ln y` against `ln x`; `NaN` with fewer than two points.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    if points.len() < 2 {
        return f64::NAN;
    }
    let m = points.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = points.iter().map(|(x, y)| (x.ln(), y.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / m;
    let my = ly.iter().sum::<f64>() / m;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn bound_for(
    b: &BoundaryData,
    cfg: &StudyConfig,
    n: usize,
    r: f64,
    estimated: &mut Option<f64>,
) -> Result<BoundReport> {
    let p = CartesianPoint::new(r, 0.0);
    let radius = b.radius();
    let declared = b.smoothness();
    let (k, alpha, seminorm) = match declared {
        Some(s) => {
            let seminorm = match s.seminorm {
                Some(v) => Seminorm::declared(v),
                None if s.k == 0 => {
                    let v = match estimated {
                        Some(v) => *v,
                        None => *estimated.insert(holder_seminorm_estimate(b, s.alpha, cfg.holder_grid)?),
                    };
                    Seminorm::estimated(v)
                }
                None => {
                    return Err(Error::InvalidArgument(format!(
                        "a seminorm for f^({}) must be declared",
                        s.k
                    )))
                }
            };
            (s.k, s.alpha, seminorm)
        }
        None => {
            let v = match estimated {
                Some(v) => *v,
                None => *estimated.insert(holder_seminorm_estimate(b, cfg.fallback_alpha, cfg.holder_grid)?),
            };
            (0, cfg.fallback_alpha, Seminorm::estimated(v))
        }
    };
    let report = if k == 0 {
        uniform_error_bound(seminorm, alpha, n, p, radius, cfg.gammas.gamma(0))?
    } else {
        uniform_error_bound_smooth(seminorm, k, alpha, n, p, radius, cfg.gammas.gamma(k))?
    };
    if declared.is_none() || !b.is_periodic() {
        Ok(report.inapplicable())
    } else {
        Ok(report)
    }
}

/// Run the study: for each `(n, r)` the measured sup error of `ũ_n` against
/// `ũ_N` (`N = 4 max n`) on the circle of radius `r`, the uniform bound at
/// that radius, and the per-radius log-log slope.
pub fn run_study(b: &BoundaryData, cfg: &StudyConfig) -> Result<StudyResult> {
    if cfg.degrees.len() < 2 {
        return Err(Error::InvalidArgument("a study needs at least two degrees".into()));
    }
    if cfg.degrees.iter().any(|&n| n < 1) {
        return Err(Error::InvalidArgument("study degrees must be >= 1".into()));
    }
    let radius = b.radius();
    if let Some(r) = cfg.radii.iter().find(|r| !(**r >= 0.0 && **r <= radius)) {
        return Err(Error::OutOfDomain(format!("study radius {r} outside [0, {radius}]")));
    }
    if cfg.angular_points < 1 {
        return Err(Error::InvalidArgument("angular_points must be >= 1".into()));
    }
    let big_n = proxy_degree(&cfg.degrees);
    let nodes = cfg.nodes.unwrap_or_else(|| default_nodes(big_n));
    let proxy = HarmonicApproximant::new(compute_spectrum(b, big_n, nodes)?);
    let scale = proxy.spectrum().coefficient_scale().max(1.0);

    let mut estimated = None;
    let mut rows = Vec::new();
    let mut reports = Vec::new();
    for &r in &cfg.radii {
        let mut block = Vec::new();
        for &n in &cfg.degrees {
            let err = measured_sup_error(&proxy, n, r, cfg.angular_points);
            let report = bound_for(b, cfg, n, r, &mut estimated)?;
            block.push(StudyRow {
                n,
                r,
                measured_sup_err: err,
                bound_value: report.value,
                applicable: report.applicable,
                slope_estimate: f64::NAN,
            });
            reports.push(report);
        }
        let fit: Vec<(f64, f64)> = block
            .iter()
            .filter(|row| row.measured_sup_err > NOISE_FLOOR * scale)
            .map(|row| (row.n as f64, row.measured_sup_err))
            .collect();
        let slope = loglog_slope(&fit);
        for row in &mut block {
            row.slope_estimate = slope;
        }
        rows.extend(block);
    }
    Ok(StudyResult {
        proxy_degree: big_n,
        nodes,
        rows,
        reports,
    })
}

impl StudyResult {
    /// CSV with header `n,r,measured_sup_err,bound_value,applicable,slope_estimate`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "r", "measured_sup_err", "bound_value", "applicable", "slope_estimate"])?;
        for row in &self.rows {
            w.write_record([
                row.n.to_string(),
                format_f64(row.r),
                format_f64(row.measured_sup_err),
                format_f64(row.bound_value),
                row.applicable.to_string(),
                format_f64(row.slope_estimate),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }

    /// All bound reports, in row order, as a JSON array.
    pub fn reports_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.reports)?)
    }
}
