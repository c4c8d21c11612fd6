//! Taylor expansion of the approximant about an interior point, with the
//! certified remainder bound on the region `‖h‖ < (R − ‖x₀‖)/3`.

use rayon::prelude::*;

use crate::boundary_data::CartesianPoint;
use crate::error::{Error, Result};
use crate::estimates::{taylor_remainder_bound, BoundReport};
use crate::harmonic::HarmonicApproximant;

/// Nodes used for `∫_{∂B_L(x₀)} |ũ| ds`.
pub const CIRCLE_NODES: usize = 4096;

pub const DEFAULT_ORDER: usize = 12;

/// `T[α₁][α₂] = D^{(α₁,α₂)}ũ(x₀) / (α₁! α₂!)` for `α₁ + α₂ < order`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorExpansion {
    center: CartesianPoint,
    inner_radius: f64,
    order: usize,
    coeffs: Vec<Vec<f64>>,
    circle_l1: f64,
    circle_nodes: usize,
}

/// Result of [`TaylorExpansion::eval_series`].
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub kappa: f64,
    /// `None` when evaluation was forced outside the certified region.
    pub remainder: Option<BoundReport>,
}

/// Expand `u` about `center`, keeping terms of total degree `< order`.
pub fn expand(u: &HarmonicApproximant, center: CartesianPoint, order: usize) -> Result<TaylorExpansion> {
    let radius = u.radius();
    let inner_radius = radius - center.norm();
    if !(inner_radius > 0.0) {
        return Err(Error::OutOfDomain(format!(
            "expansion center {center} must lie in the open disk of radius {radius}"
        )));
    }
    if order < 1 {
        return Err(Error::InvalidArgument("Taylor order must be >= 1".into()));
    }
    let factorials: Vec<f64> = (0..order)
        .scan(1.0, |acc, j| {
            if j > 0 {
                *acc *= j as f64;
            }
            Some(*acc)
        })
        .collect();
    let coeffs = (0..order)
        .into_par_iter()
        .map(|a1| {
            (0..order - a1)
                .map(|a2| {
                    let d = u.eval_derivative(center, a1 as u32, a2 as u32)?;
                    Ok(d / (factorials[a1] * factorials[a2]))
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TaylorExpansion {
        center,
        inner_radius,
        order,
        coeffs,
        circle_l1: u.circle_l1(center, inner_radius, CIRCLE_NODES),
        circle_nodes: CIRCLE_NODES,
    })
}

impl TaylorExpansion {
    pub fn center(&self) -> CartesianPoint {
        self.center
    }

    /// `L = R − ‖x₀‖`.
    pub fn inner_radius(&self) -> f64 {
        self.inner_radius
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `∫_{∂B_L(x₀)} |ũ| ds` as computed at expansion time.
    pub fn circle_l1(&self) -> f64 {
        self.circle_l1
    }

    pub fn circle_nodes(&self) -> usize {
        self.circle_nodes
    }

    /// `T[α₁][α₂]`, zero outside the triangle.
    pub fn coef(&self, a1: usize, a2: usize) -> f64 {
        self.coeffs
            .get(a1)
            .and_then(|row| row.get(a2))
            .copied()
            .unwrap_or(0.0)
    }

    /// Entries `(α₁, α₂, T)` ordered by `α₁` then `α₂`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(a1, row)| row.iter().enumerate().map(move |(a2, &c)| (a1, a2, c)))
    }

    /// Partial sum at `x₀ + h` with its remainder certificate, `κ = ‖h‖/L`.
    ///
    /// Displacements with `κ >= 1/3` are refused unless `force` is set, in which
    /// case the value is returned without a certificate.
    pub fn eval_series(&self, h: [f64; 2], force: bool) -> Result<SeriesValue> {
        let kappa = h[0].hypot(h[1]) / self.inner_radius;
        let remainder = if kappa < 1.0 / 3.0 {
            Some(taylor_remainder_bound(kappa, self.order, self.inner_radius, self.circle_l1)?)
        } else if force {
            None
        } else {
            return Err(Error::Region { kappa });
        };
        let remainder = remainder.map(|mut r| {
            r.inputs.point = Some([self.center.x, self.center.y]);
            r.inputs.quadrature_nodes = Some(self.circle_nodes);
            r
        });
        Ok(SeriesValue {
            value: self.partial_sum(h),
            kappa,
            remainder,
        })
    }

    fn partial_sum(&self, h: [f64; 2]) -> f64 {
        // Horner in h₁ over Horner-in-h₂ rows
        let mut acc = 0.0;
        for row in self.coeffs.iter().rev() {
            let inner = row.iter().rev().fold(0.0, |s, &c| s * h[1] + c);
            acc = acc * h[0] + inner;
        }
        acc
    }
}
