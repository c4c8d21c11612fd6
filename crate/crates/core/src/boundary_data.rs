//! Boundary data on the circle `∂B_R` and the Cartesian/polar plumbing around it.
//!
//! A [`BoundaryData`] value holds the angular pullback `f(θ) = g(R cos θ, R sin θ)`
//! of the Dirichlet data, either as a closed-form function or as uniform
//! angular samples. Everything downstream (quadrature, bounds, the oracle)
//! only ever sees `f`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of angles probed for finiteness when boundary data is constructed.
const PROBE_ANGLES: usize = 1024;

/// Points closer than this to the half-line `{x <= 0, y = 0}` have no angle.
pub const BRANCH_CUT_TOLERANCE: f64 = 1e-12;

/// Default number of grid intervals used by the Hölder seminorm estimators.
pub const DEFAULT_HOLDER_GRID: usize = 2048;

/// The disk `B_R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskGeometry {
    radius: f64,
}

impl DiskGeometry {
    pub fn new(radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "disk radius must be positive and finite, got {radius}"
            )));
        }
        Ok(Self { radius })
    }

    pub fn unit() -> Self {
        Self { radius: 1.0 }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Whether `p` lies in the closed disk, with a relative slack of `1e-12`.
    pub fn contains_closed(&self, p: CartesianPoint) -> bool {
        p.norm() <= self.radius * (1.0 + 1e-12)
    }

    /// Whether `p` lies in the open disk.
    pub fn contains_open(&self, p: CartesianPoint) -> bool {
        p.norm() < self.radius
    }

    /// Point on the boundary circle at angle `theta`.
    pub fn boundary_point(&self, theta: f64) -> CartesianPoint {
        PolarPoint::new(self.radius, theta).to_cartesian()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CartesianPoint {
    pub x: f64,
    pub y: f64,
}

impl CartesianPoint {
    pub const ORIGIN: CartesianPoint = CartesianPoint { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Polar form with `θ ∈ (−π, π]`; the origin maps to `(0, 0)`.
    pub fn to_polar(&self) -> PolarPoint {
        PolarPoint {
            r: self.norm(),
            theta: self.y.atan2(self.x),
        }
    }

    pub fn offset(&self, dx: f64, dy: f64) -> Self {
        Self::new(self.x + dx, self.y + dy)
    }
}

impl fmt::Display for CartesianPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarPoint {
    pub r: f64,
    pub theta: f64,
}

impl PolarPoint {
    pub fn new(r: f64, theta: f64) -> Self {
        Self { r, theta }
    }

    pub fn to_cartesian(&self) -> CartesianPoint {
        let (s, c) = self.theta.sin_cos();
        CartesianPoint::new(self.r * c, self.r * s)
    }
}

/// The polar angle `Θ(x, y)` with its three-branch definition.
///
/// `Θ` is undefined on the half-line `S = {x <= 0, y = 0}`, which includes the
/// origin. Points within [`BRANCH_CUT_TOLERANCE`] of `S` are rejected.
pub fn theta_of(p: CartesianPoint) -> Result<f64> {
    let CartesianPoint { x, y } = p;
    let dist_to_cut = if x <= 0.0 { y.abs() } else { p.norm() };
    if !(dist_to_cut > BRANCH_CUT_TOLERANCE) {
        return Err(Error::BranchCut { x, y });
    }
    let theta = if x > 0.0 {
        (y / x).atan()
    } else if y > 0.0 {
        -(x / y).atan() + PI / 2.0
    } else {
        -(x / y).atan() - PI / 2.0
    };
    Ok(theta)
}

/// Where the pulled-back function came from.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundarySource {
    /// Closed-form expression, identified by a label.
    ClosedForm { label: String },
    /// Values at `θ_j = −π + 2πj/M`, `j = 0..M`.
    Samples(Vec<f64>),
}

/// Where a Hölder seminorm value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeminormSource {
    Declared,
    Estimated,
}

/// A seminorm value together with its provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Seminorm {
    pub value: f64,
    pub source: SeminormSource,
}

impl Seminorm {
    pub fn declared(value: f64) -> Self {
        Self {
            value,
            source: SeminormSource::Declared,
        }
    }

    pub fn estimated(value: f64) -> Self {
        Self {
            value,
            source: SeminormSource::Estimated,
        }
    }
}

/// Declared regularity class `C^{k,α}` of the angular function `f`.
///
/// `seminorm` is `[f^{(k)}]_{C^α}` when the caller knows it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Smoothness {
    pub k: u32,
    pub alpha: f64,
    pub seminorm: Option<f64>,
}

impl Smoothness {
    pub fn new(k: u32, alpha: f64, seminorm: Option<f64>) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "Hölder exponent must lie in (0, 1], got {alpha}"
            )));
        }
        if let Some(s) = seminorm {
            if !(s.is_finite() && s >= 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "seminorm must be finite and nonnegative, got {s}"
                )));
            }
        }
        Ok(Self { k, alpha, seminorm })
    }
}

type AngularFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Dirichlet data pulled back to the angle variable.
///
/// Immutable after construction.
#[derive(Clone)]
pub struct BoundaryData {
    geometry: DiskGeometry,
    f: AngularFn,
    source: BoundarySource,
    smoothness: Option<Smoothness>,
    periodic: bool,
}

impl fmt::Debug for BoundaryData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundaryData")
            .field("geometry", &self.geometry)
            .field("source", &self.label())
            .field("smoothness", &self.smoothness)
            .field("periodic", &self.periodic)
            .finish()
    }
}

/// Pull `g` back to the angle variable: `f(θ) = g(R cos θ, R sin θ)`.
pub fn pullback<G>(g: G, geometry: DiskGeometry) -> Result<BoundaryData>
where
    G: Fn(f64, f64) -> f64 + Send + Sync + 'static,
{
    let radius = geometry.radius();
    BoundaryData::from_angular(
        "pullback",
        move |theta| {
            let (s, c) = theta.sin_cos();
            g(radius * c, radius * s)
        },
        geometry,
    )
}

impl BoundaryData {
    /// Closed-form angular data `f(θ)`.
    pub fn from_angular<F>(label: impl Into<String>, f: F, geometry: DiskGeometry) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let f: AngularFn = Arc::new(f);
        let mut max_abs: f64 = 0.0;
        for j in 0..=PROBE_ANGLES {
            let theta = -PI + 2.0 * PI * j as f64 / PROBE_ANGLES as f64;
            let v = f(theta);
            if !v.is_finite() {
                return Err(Error::InvalidBoundaryData(format!(
                    "non-finite value {v} at θ = {theta}"
                )));
            }
            max_abs = max_abs.max(v.abs());
        }
        let periodic = (f(-PI) - f(PI)).abs() <= 1e-9 * max_abs.max(1.0);
        Ok(Self {
            geometry,
            f,
            source: BoundarySource::ClosedForm {
                label: label.into(),
            },
            smoothness: None,
            periodic,
        })
    }

    /// Uniform angular samples at `θ_j = −π + 2πj/M`; values in between are
    /// obtained by periodic linear interpolation.
    pub fn from_samples(values: Vec<f64>, geometry: DiskGeometry) -> Result<Self> {
        if values.len() < 4 {
            return Err(Error::InvalidBoundaryData(format!(
                "need at least 4 samples, got {}",
                values.len()
            )));
        }
        if let Some((j, v)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidBoundaryData(format!(
                "non-finite sample {v} at index {j}"
            )));
        }
        let samples: Arc<[f64]> = values.clone().into();
        let f: AngularFn = Arc::new(move |theta| interpolate_periodic(&samples, theta));
        Ok(Self {
            geometry,
            f,
            source: BoundarySource::Samples(values),
            smoothness: None,
            periodic: true,
        })
    }

    /// Samples at arbitrary strictly increasing angles in `[−π, π)`,
    /// resampled onto a uniform grid of the same size by periodic linear
    /// interpolation. Already-uniform input is kept as is.
    pub fn from_nonuniform_samples(
        thetas: &[f64],
        values: &[f64],
        geometry: DiskGeometry,
    ) -> Result<Self> {
        if thetas.len() != values.len() {
            return Err(Error::InvalidBoundaryData(format!(
                "{} angles but {} values",
                thetas.len(),
                values.len()
            )));
        }
        let m = thetas.len();
        if m < 4 {
            return Err(Error::InvalidBoundaryData(format!(
                "need at least 4 samples, got {m}"
            )));
        }
        for w in thetas.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::InvalidBoundaryData(
                    "angles must be strictly increasing".into(),
                ));
            }
        }
        if !(thetas[0] >= -PI - 1e-12 && thetas[m - 1] < PI) {
            return Err(Error::InvalidBoundaryData(
                "angles must lie in [-π, π)".into(),
            ));
        }
        let uniform = thetas
            .iter()
            .enumerate()
            .all(|(j, &t)| (t - grid_angle(j, m)).abs() <= 1e-9);
        if uniform {
            return Self::from_samples(values.to_vec(), geometry);
        }
        let resampled = (0..m)
            .map(|j| interpolate_nonuniform(thetas, values, grid_angle(j, m)))
            .collect();
        Self::from_samples(resampled, geometry)
    }

    pub fn with_smoothness(mut self, smoothness: Smoothness) -> Self {
        self.smoothness = Some(smoothness);
        self
    }

    pub fn geometry(&self) -> DiskGeometry {
        self.geometry
    }

    pub fn radius(&self) -> f64 {
        self.geometry.radius()
    }

    pub fn source(&self) -> &BoundarySource {
        &self.source
    }

    pub fn smoothness(&self) -> Option<Smoothness> {
        self.smoothness
    }

    /// `f(−π) = f(π)` (to `1e-9` relative). Sampled data is periodic by construction.
    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    pub fn label(&self) -> String {
        match &self.source {
            BoundarySource::ClosedForm { label } => label.clone(),
            BoundarySource::Samples(v) => format!("samples[{}]", v.len()),
        }
    }

    /// `f(θ)`.
    pub fn eval(&self, theta: f64) -> f64 {
        (self.f)(theta)
    }

    /// `g` at a point of the boundary circle, looked up through its angle.
    pub fn eval_boundary_point(&self, p: CartesianPoint) -> f64 {
        self.eval(p.y.atan2(p.x))
    }

    /// Values of `f` at the uniform nodes `θ_j = −π + 2πj/M`.
    ///
    /// Sampled data whose length divides `M` evenly is returned without
    /// interpolation at the original nodes.
    pub fn values_on_grid(&self, nodes: usize) -> Vec<f64> {
        if let BoundarySource::Samples(samples) = &self.source {
            let len = samples.len();
            if nodes % len == 0 {
                let step = nodes / len;
                return (0..nodes)
                    .map(|j| {
                        if j % step == 0 {
                            samples[j / step]
                        } else {
                            self.eval(grid_angle(j, nodes))
                        }
                    })
                    .collect();
            }
        }
        (0..nodes).map(|j| self.eval(grid_angle(j, nodes))).collect()
    }
}

/// `θ_j = −π + 2πj/M`.
pub fn grid_angle(j: usize, nodes: usize) -> f64 {
    -PI + 2.0 * PI * j as f64 / nodes as f64
}

fn interpolate_periodic(samples: &[f64], theta: f64) -> f64 {
    let m = samples.len();
    let t = (theta + PI).rem_euclid(2.0 * PI) / (2.0 * PI) * m as f64;
    let i = (t.floor() as usize).min(m - 1);
    let w = t - i as f64;
    let next = samples[(i + 1) % m];
    if w == 0.0 {
        samples[i]
    } else {
        (1.0 - w) * samples[i] + w * next
    }
}

fn interpolate_nonuniform(thetas: &[f64], values: &[f64], theta: f64) -> f64 {
    let m = thetas.len();
    // first index with thetas[i] > theta
    let upper = thetas.partition_point(|&t| t <= theta);
    let (t0, v0, t1, v1) = if upper == 0 {
        (thetas[m - 1] - 2.0 * PI, values[m - 1], thetas[0], values[0])
    } else if upper == m {
        (thetas[m - 1], values[m - 1], thetas[0] + 2.0 * PI, values[0])
    } else {
        (thetas[upper - 1], values[upper - 1], thetas[upper], values[upper])
    };
    let w = (theta - t0) / (t1 - t0);
    (1.0 - w) * v0 + w * v1
}

/// Lower estimate of the Hölder seminorm `[f]_{C^α([−π, π])}`.
///
/// Takes the maximum difference quotient `|f(θ_i) − f(θ_j)| / |θ_i − θ_j|^α`
/// over the `grid + 1` uniform points of `[−π, π]`, restricted to pairs whose
/// index separation is a power of two. Doubling `grid` only adds pairs, so the
/// estimate never decreases under refinement.
pub fn holder_seminorm_estimate(b: &BoundaryData, alpha: f64, grid: usize) -> Result<f64> {
    let values = closed_grid_values(b, grid)?;
    let h = 2.0 * PI / grid as f64;
    Ok(max_dyadic_quotient(&values, alpha, |sep| (sep as f64 * h).powf(alpha)))
}

/// Lower estimate of `[g]_{C^α(∂B_R)}` with chordal distance on the circle,
/// probed on the same angle pairs as [`holder_seminorm_estimate`].
pub fn holder_seminorm_estimate_chordal(
    b: &BoundaryData,
    alpha: f64,
    grid: usize,
) -> Result<f64> {
    let values = closed_grid_values(b, grid)?;
    let h = 2.0 * PI / grid as f64;
    let radius = b.radius();
    Ok(max_dyadic_quotient(&values, alpha, |sep| {
        (2.0 * radius * (0.5 * sep as f64 * h).sin().abs()).powf(alpha)
    }))
}

fn closed_grid_values(b: &BoundaryData, grid: usize) -> Result<Vec<f64>> {
    if grid < 1 {
        return Err(Error::InvalidArgument(
            "Hölder estimate needs at least 2 probe angles".into(),
        ));
    }
    let values: Vec<f64> = (0..=grid)
        .map(|j| b.eval(-PI + 2.0 * PI * j as f64 / grid as f64))
        .collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidBoundaryData(
            "non-finite value on the Hölder probe grid".into(),
        ));
    }
    Ok(values)
}

fn max_dyadic_quotient<D>(values: &[f64], alpha: f64, distance: D) -> f64
where
    D: Fn(usize) -> f64,
{
    debug_assert!(alpha > 0.0);
    let n = values.len();
    let mut best: f64 = 0.0;
    let mut sep = 1;
    while sep < n {
        let d = distance(sep);
        if d > 0.0 {
            for i in 0..n - sep {
                let q = (values[i] - values[i + sep]).abs() / d;
                if q > best {
                    best = q;
                }
            }
        }
        sep *= 2;
    }
    best
}
