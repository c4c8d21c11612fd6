//! A-priori bounds for the harmonic approximants, as inspectable reports.
//!
//! Every [`BoundReport`] echoes the quantities that entered its formula, so a
//! report deserialised from JSON can be recomputed with
//! [`BoundReport::recompute`].
//!
//! The Jackson constants `γ_0, γ_k` have no known numeric values; the defaults
//! in [`JacksonConstants`] are placeholders and any level built from them is a
//! diagnostic, not a certificate. The derivative and Taylor bounds contain no
//! free constants.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::boundary_data::{BoundaryData, CartesianPoint, Seminorm, SeminormSource};
use crate::error::{Error, Result};

/// Placeholder value for every Jackson constant. Not normative.
pub const DEFAULT_GAMMA: f64 = 3.0;

/// `γ_0, γ_1, …, γ_K`; orders above `K` reuse `γ_K`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JacksonConstants {
    gamma: Vec<f64>,
}

impl Default for JacksonConstants {
    fn default() -> Self {
        Self {
            gamma: vec![DEFAULT_GAMMA],
        }
    }
}

impl JacksonConstants {
    pub fn new(gamma: Vec<f64>) -> Result<Self> {
        if gamma.is_empty() || gamma.iter().any(|g| !(g.is_finite() && *g > 0.0)) {
            return Err(Error::InvalidArgument(format!(
                "Jackson constants must be a nonempty list of positive numbers, got {gamma:?}"
            )));
        }
        Ok(Self { gamma })
    }

    pub fn gamma(&self, k: u32) -> f64 {
        let k = (k as usize).min(self.gamma.len() - 1);
        self.gamma[k]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.gamma
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    UniformError,
    UniformErrorSmooth,
    Derivative,
    InteriorDerivative,
    TaylorRemainder,
    MaximumPrinciple,
}

/// Everything that entered a bound. Unused fields stay `None`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundInputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seminorm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seminorm_source: Option<SeminormSource>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none", rename = "R")]
    pub radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none", rename = "L")]
    pub inner_radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha1: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha2: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l1_f: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l1_u_circle: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sup_u: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_g: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_g: Option<f64>,
    /// Quadrature resolution behind any integral among the inputs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadrature_nodes: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub inputs: BoundInputs,
    pub value: f64,
    /// `false` when a hypothesis of the underlying estimate fails.
    pub applicable: bool,
}

impl BoundReport {
    /// Mark the report inapplicable (e.g. discontinuous data).
    pub fn inapplicable(mut self) -> Self {
        self.applicable = false;
        self
    }

    /// Rebuild the report from its own inputs.
    pub fn recompute(&self) -> Result<BoundReport> {
        let i = &self.inputs;
        let need = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| Error::InvalidArgument(format!("report input '{name}' missing")))
        };
        let need_u = |v: Option<u32>, name: &str| {
            v.ok_or_else(|| Error::InvalidArgument(format!("report input '{name}' missing")))
        };
        let point = || {
            i.point
                .map(|[x, y]| CartesianPoint::new(x, y))
                .ok_or_else(|| Error::InvalidArgument("report input 'point' missing".into()))
        };
        let seminorm = || -> Result<Seminorm> {
            Ok(Seminorm {
                value: need(i.seminorm, "seminorm")?,
                source: i.seminorm_source.unwrap_or(SeminormSource::Estimated),
            })
        };
        let n = || i.n.ok_or_else(|| Error::InvalidArgument("report input 'n' missing".into()));
        let mut report = match self.kind {
            BoundKind::UniformError => uniform_error_bound(
                seminorm()?,
                need(i.alpha, "alpha")?,
                n()?,
                point()?,
                need(i.radius, "R")?,
                need(i.gamma, "gamma")?,
            )?,
            BoundKind::UniformErrorSmooth => uniform_error_bound_smooth(
                seminorm()?,
                need_u(i.k, "k")?,
                need(i.alpha, "alpha")?,
                n()?,
                point()?,
                need(i.radius, "R")?,
                need(i.gamma, "gamma")?,
            )?,
            BoundKind::Derivative => derivative_bound(
                need(i.l1_f, "l1_f")?,
                need_u(i.alpha1, "alpha1")?,
                need_u(i.alpha2, "alpha2")?,
                need(i.r, "r")?,
                need(i.radius, "R")?,
            )?,
            BoundKind::InteriorDerivative => interior_derivative_bound(
                need(i.l1_u_circle, "l1_u_circle")?,
                need(i.sup_u, "sup_u")?,
                need_u(i.order, "order")?,
                need(i.inner_radius, "L")?,
            )?,
            BoundKind::TaylorRemainder => taylor_remainder_bound(
                need(i.kappa, "kappa")?,
                n()?,
                need(i.inner_radius, "L")?,
                need(i.l1_u_circle, "l1_u_circle")?,
            )?,
            BoundKind::MaximumPrinciple => {
                let (lo, hi) = (need(i.min_g, "min_g")?, need(i.max_g, "max_g")?);
                maximum_principle_report(lo, hi, i.quadrature_nodes)
            }
        };
        report.inputs.quadrature_nodes = i.quadrature_nodes;
        if !self.applicable {
            report.applicable = false;
        }
        Ok(report)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "Hölder exponent must lie in (0, 1], got {alpha}"
        )))
    }
}

fn check_point(p: CartesianPoint, radius: f64) -> Result<f64> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {radius}")));
    }
    let rho = p.norm() / radius;
    if rho > 1.0 + 1e-12 {
        return Err(Error::OutOfDomain(format!(
            "point {p} lies outside the closed disk of radius {radius}"
        )));
    }
    Ok(rho.min(1.0))
}

fn check_seminorm(s: Seminorm) -> Result<()> {
    if s.value.is_finite() && s.value >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("seminorm must be finite and >= 0, got {}", s.value)))
    }
}

/// `2γ_0 (2π)^α [f]_{C^α} (‖p‖/R)^{n+1} n^{−α} ln n`, applicable for `n ≥ e^{1/α}`.
pub fn uniform_error_bound(
    seminorm: Seminorm,
    alpha: f64,
    n: usize,
    p: CartesianPoint,
    radius: f64,
    gamma0: f64,
) -> Result<BoundReport> {
    check_alpha(alpha)?;
    check_seminorm(seminorm)?;
    if n < 1 {
        return Err(Error::InvalidArgument("uniform error bound needs n >= 1".into()));
    }
    let rho = check_point(p, radius)?;
    let nf = n as f64;
    let value = 2.0
        * gamma0
        * (2.0 * PI).powf(alpha)
        * seminorm.value
        * rho.powi(n as i32 + 1)
        * nf.powf(-alpha)
        * nf.ln();
    Ok(BoundReport {
        kind: BoundKind::UniformError,
        inputs: BoundInputs {
            n: Some(n),
            alpha: Some(alpha),
            seminorm: Some(seminorm.value),
            seminorm_source: Some(seminorm.source),
            gamma: Some(gamma0),
            point: Some([p.x, p.y]),
            radius: Some(radius),
            ..Default::default()
        },
        value,
        applicable: nf >= (1.0 / alpha).exp(),
    })
}

/// `2γ_k (2π)^α [f^{(k)}]_{C^α} (‖p‖/R)^{n+1} n^{−(k+α)} ln n`, applicable for `n ≥ e`.
pub fn uniform_error_bound_smooth(
    seminorm_k: Seminorm,
    k: u32,
    alpha: f64,
    n: usize,
    p: CartesianPoint,
    radius: f64,
    gamma_k: f64,
) -> Result<BoundReport> {
    check_alpha(alpha)?;
    check_seminorm(seminorm_k)?;
    if k < 1 {
        return Err(Error::InvalidArgument("smooth bound needs k >= 1".into()));
    }
    if n < 1 {
        return Err(Error::InvalidArgument("uniform error bound needs n >= 1".into()));
    }
    let rho = check_point(p, radius)?;
    let nf = n as f64;
    let value = 2.0
        * gamma_k
        * (2.0 * PI).powf(alpha)
        * seminorm_k.value
        * rho.powi(n as i32 + 1)
        * nf.powf(-(k as f64 + alpha))
        * nf.ln();
    Ok(BoundReport {
        kind: BoundKind::UniformErrorSmooth,
        inputs: BoundInputs {
            n: Some(n),
            k: Some(k),
            alpha: Some(alpha),
            seminorm: Some(seminorm_k.value),
            seminorm_source: Some(seminorm_k.source),
            gamma: Some(gamma_k),
            point: Some([p.x, p.y]),
            radius: Some(radius),
            ..Default::default()
        },
        value,
        applicable: nf >= E,
    })
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, j| acc * j as f64)
}

/// Uniform bound for `|D^{(α₁,α₂)} ũ|` on `B̄_r` in terms of `∫|f| dθ`.
///
/// For `s = α₁ + α₂ ≥ 1` this is `R s! ∫|f| / (π (R − r)^{s+1})`; for `s = 0`
/// the constant-term contribution `∫|f| / (2π)` is added to `R ∫|f| / (π (R − r))`.
pub fn derivative_bound(
    l1_f: f64,
    alpha1: u32,
    alpha2: u32,
    r: f64,
    radius: f64,
) -> Result<BoundReport> {
    if !(l1_f.is_finite() && l1_f >= 0.0) {
        return Err(Error::InvalidArgument(format!("∫|f| must be finite and >= 0, got {l1_f}")));
    }
    if !(radius > 0.0) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {radius}")));
    }
    if !(r >= 0.0 && r < radius) {
        return Err(Error::OutOfDomain(format!(
            "inner radius {r} must satisfy 0 <= r < R = {radius}"
        )));
    }
    let s = alpha1 + alpha2;
    let series = radius * factorial(s) * l1_f / (PI * (radius - r).powi(s as i32 + 1));
    let value = if s == 0 { l1_f / (2.0 * PI) + series } else { series };
    if !value.is_finite() {
        return Err(Error::Overflow(format!("derivative bound of order {s} overflows")));
    }
    Ok(BoundReport {
        kind: BoundKind::Derivative,
        inputs: BoundInputs {
            alpha1: Some(alpha1),
            alpha2: Some(alpha2),
            r: Some(r),
            radius: Some(radius),
            l1_f: Some(l1_f),
            ..Default::default()
        },
        value,
        applicable: true,
    })
}

/// The two interior forms `s!/(π L^{s+1}) ∫_{∂B_L}|u| ds` and `2 s!/L^s sup|u|`.
pub fn interior_derivative_forms(l1_u_circle: f64, sup_u: f64, order: u32, inner_radius: f64) -> (f64, f64) {
    let fact = factorial(order);
    let l1_form = fact / (PI * inner_radius.powi(order as i32 + 1)) * l1_u_circle;
    let sup_form = 2.0 * fact / inner_radius.powi(order as i32) * sup_u;
    (l1_form, sup_form)
}

/// Bound for `|D^{(α₁,α₂)} u(x₀)|`, `α₁ + α₂ = order ≥ 1`, for `u` harmonic on
/// `B_L(x₀)`; the report value is the smaller of the two forms.
pub fn interior_derivative_bound(
    l1_u_circle: f64,
    sup_u: f64,
    order: u32,
    inner_radius: f64,
) -> Result<BoundReport> {
    if order < 1 {
        return Err(Error::InvalidArgument("interior derivative bound needs order >= 1".into()));
    }
    if !(inner_radius.is_finite() && inner_radius > 0.0) {
        return Err(Error::InvalidArgument(format!("L must be positive, got {inner_radius}")));
    }
    if !(l1_u_circle >= 0.0 && sup_u >= 0.0) {
        return Err(Error::InvalidArgument("norms must be nonnegative".into()));
    }
    let (l1_form, sup_form) = interior_derivative_forms(l1_u_circle, sup_u, order, inner_radius);
    Ok(BoundReport {
        kind: BoundKind::InteriorDerivative,
        inputs: BoundInputs {
            order: Some(order),
            inner_radius: Some(inner_radius),
            l1_u_circle: Some(l1_u_circle),
            sup_u: Some(sup_u),
            ..Default::default()
        },
        value: l1_form.min(sup_form),
        applicable: true,
    })
}

/// `(2κ/(1−κ))^n ∫_{∂B_L(x₀)}|ũ| ds / (π L (1−κ))` for `0 <= κ < 1/3`.
pub fn taylor_remainder_bound(
    kappa: f64,
    n: usize,
    inner_radius: f64,
    l1_u_circle: f64,
) -> Result<BoundReport> {
    if !(kappa >= 0.0 && kappa < 1.0 / 3.0) {
        return Err(Error::Region { kappa });
    }
    if n < 1 {
        return Err(Error::InvalidArgument("Taylor remainder needs n >= 1".into()));
    }
    if !(inner_radius.is_finite() && inner_radius > 0.0) {
        return Err(Error::InvalidArgument(format!("L must be positive, got {inner_radius}")));
    }
    if !(l1_u_circle.is_finite() && l1_u_circle >= 0.0) {
        return Err(Error::InvalidArgument("circle L1 norm must be finite and >= 0".into()));
    }
    let ratio = 2.0 * kappa / (1.0 - kappa);
    let value = ratio.powi(n as i32) * l1_u_circle / (PI * inner_radius * (1.0 - kappa));
    Ok(BoundReport {
        kind: BoundKind::TaylorRemainder,
        inputs: BoundInputs {
            n: Some(n),
            kappa: Some(kappa),
            inner_radius: Some(inner_radius),
            l1_u_circle: Some(l1_u_circle),
            ..Default::default()
        },
        value,
        applicable: true,
    })
}

/// Grid minimum and maximum of `f` over the `nodes` quadrature angles.
pub fn maximum_principle_bounds(b: &BoundaryData, nodes: usize) -> (f64, f64) {
    b.values_on_grid(nodes)
        .into_iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// [`maximum_principle_bounds`] packaged as a report; `value` is the
/// oscillation `max g − min g`.
pub fn maximum_principle_report(min_g: f64, max_g: f64, nodes: Option<usize>) -> BoundReport {
    BoundReport {
        kind: BoundKind::MaximumPrinciple,
        inputs: BoundInputs {
            min_g: Some(min_g),
            max_g: Some(max_g),
            quadrature_nodes: nodes,
            ..Default::default()
        },
        value: max_g - min_g,
        applicable: true,
    }
}
