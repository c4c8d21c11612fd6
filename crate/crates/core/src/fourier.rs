//! Fourier coefficients of the boundary pullback by the periodic trapezoidal rule.
//!
//! Coefficients are stored in the scaled form `a_k = R^k c_k`, `b_k = R^k d_k`,
//! i.e. `a_k = (1/π)∫ f(θ) cos kθ dθ`, which keeps them `O(max |f|)` for any
//! radius. All evaluation downstream uses `(r/R)^k`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boundary_data::{BoundaryData, DiskGeometry};
use crate::error::{Error, Result};

/// Smallest node count that resolves harmonics `0..=n_max` without aliasing.
pub fn min_nodes(n_max: usize) -> usize {
    2 * n_max + 2
}

/// Default quadrature resolution, `max(4096, 8 n_max)`.
pub fn default_nodes(n_max: usize) -> usize {
    (8 * n_max).max(4096)
}

/// Scaled Fourier coefficients of `f`, plus the quadrature resolution used.
///
/// Serialises as `{"R": .., "n_max": .., "M": .., "a": [..], "b": [..]}` with
/// `a` holding `a_0..=a_n` and `b` holding `b_1..=b_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpectrumRecord", into = "SpectrumRecord")]
pub struct FourierSpectrum {
    geometry: DiskGeometry,
    n_max: usize,
    a: Vec<f64>,
    b: Vec<f64>,
    nodes: usize,
}

#[derive(Serialize, Deserialize)]
struct SpectrumRecord {
    #[serde(rename = "R")]
    radius: f64,
    n_max: usize,
    #[serde(rename = "M")]
    nodes: usize,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl TryFrom<SpectrumRecord> for FourierSpectrum {
    type Error = Error;

    fn try_from(r: SpectrumRecord) -> Result<Self> {
        Self::from_parts(DiskGeometry::new(r.radius)?, r.a, r.b, r.nodes)
    }
}

impl From<FourierSpectrum> for SpectrumRecord {
    fn from(s: FourierSpectrum) -> Self {
        SpectrumRecord {
            radius: s.geometry.radius(),
            n_max: s.n_max,
            nodes: s.nodes,
            a: s.a,
            b: s.b,
        }
    }
}

impl FourierSpectrum {
    /// Assemble a spectrum from explicit coefficients (`a.len() = b.len() + 1`).
    pub fn from_parts(geometry: DiskGeometry, a: Vec<f64>, b: Vec<f64>, nodes: usize) -> Result<Self> {
        if a.len() != b.len() + 1 {
            return Err(Error::InvalidArgument(format!(
                "spectrum needs len(a) = len(b) + 1, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        if a.iter().chain(&b).any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("non-finite spectral coefficient".into()));
        }
        Ok(Self {
            geometry,
            n_max: b.len(),
            a,
            b,
            nodes,
        })
    }

    pub fn geometry(&self) -> DiskGeometry {
        self.geometry
    }

    pub fn radius(&self) -> f64 {
        self.geometry.radius()
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Quadrature nodes `M` used to compute the coefficients.
    pub fn nodes(&self) -> usize {
        self.nodes
    }

    /// `a_0..=a_n`.
    pub fn a(&self) -> &[f64] {
        &self.a
    }

    /// `b_1..=b_n` (index 0 holds `b_1`).
    pub fn b(&self) -> &[f64] {
        &self.b
    }

    /// `a_k`, zero beyond `n_max`.
    pub fn cos_coef(&self, k: usize) -> f64 {
        self.a.get(k).copied().unwrap_or(0.0)
    }

    /// `b_k`, zero for `k = 0` and beyond `n_max`.
    pub fn sin_coef(&self, k: usize) -> f64 {
        if k == 0 {
            0.0
        } else {
            self.b.get(k - 1).copied().unwrap_or(0.0)
        }
    }

    /// `a_0 / 2`, the value of every approximant at the center.
    pub fn center_value(&self) -> f64 {
        0.5 * self.a[0]
    }

    /// The first `n` harmonics of this spectrum.
    pub fn truncated(&self, n: usize) -> Result<Self> {
        if n > self.n_max {
            return Err(Error::InvalidArgument(format!(
                "cannot truncate degree {} spectrum to degree {n}",
                self.n_max
            )));
        }
        Ok(Self {
            geometry: self.geometry,
            n_max: n,
            a: self.a[..=n].to_vec(),
            b: self.b[..n].to_vec(),
            nodes: self.nodes,
        })
    }

    /// Largest coefficient magnitude, used to scale tolerances.
    pub fn coefficient_scale(&self) -> f64 {
        self.a.iter().chain(&self.b).fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Compute `a_k, b_k` for `k = 0..=n_max` with the periodic trapezoidal rule on
/// `nodes` uniform angles `θ_j = −π + 2πj/M`:
/// `a_k = (2/M) Σ_j f(θ_j) cos kθ_j`, `b_k = (2/M) Σ_j f(θ_j) sin kθ_j`.
///
/// Refuses `nodes < 2 n_max + 2`. Each coefficient is an independent
/// fixed-order sum, so the result does not depend on the thread count.
pub fn compute_spectrum(b: &BoundaryData, n_max: usize, nodes: usize) -> Result<FourierSpectrum> {
    let required = min_nodes(n_max);
    if nodes < required {
        return Err(Error::Aliasing {
            n_max,
            nodes,
            required,
        });
    }
    let values = b.values_on_grid(nodes);
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidBoundaryData(format!(
            "non-finite value {v} at a quadrature node"
        )));
    }
    // cos/sin(2πm/M); kθ_j = −kπ + 2π(kj mod M)/M
    let (cos_table, sin_table): (Vec<f64>, Vec<f64>) = (0..nodes)
        .map(|m| {
            let (s, c) = (2.0 * PI * m as f64 / nodes as f64).sin_cos();
            (c, s)
        })
        .unzip();
    let weight = 2.0 / nodes as f64;

    let pairs: Vec<(f64, f64)> = (0..=n_max)
        .into_par_iter()
        .map(|k| {
            let mut ca = 0.0;
            let mut sb = 0.0;
            let mut idx = 0usize;
            for v in &values {
                ca += v * cos_table[idx];
                sb += v * sin_table[idx];
                idx += k;
                if idx >= nodes {
                    idx %= nodes;
                }
            }
            let sign = if k % 2 == 0 { weight } else { -weight };
            (sign * ca, sign * sb)
        })
        .collect();

    let a = pairs.iter().map(|p| p.0).collect();
    let b_coefs = pairs[1..].iter().map(|p| p.1).collect();
    Ok(FourierSpectrum {
        geometry: b.geometry(),
        n_max,
        a,
        b: b_coefs,
        nodes,
    })
}

/// `∫_{−π}^{π} |f| dθ` and the equivalent arc-length integral `∫_{∂B_R} |g| ds`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct L1Norm {
    pub angular: f64,
    pub boundary: f64,
    pub nodes: usize,
}

/// Periodic trapezoid estimate of `∫|f| dθ` on `nodes` uniform angles.
pub fn l1_boundary_norm(b: &BoundaryData, nodes: usize) -> Result<L1Norm> {
    if nodes < 4 {
        return Err(Error::InvalidArgument(format!(
            "L1 quadrature needs at least 4 nodes, got {nodes}"
        )));
    }
    let sum: f64 = b.values_on_grid(nodes).iter().map(|v| v.abs()).sum();
    let angular = 2.0 * PI / nodes as f64 * sum;
    Ok(L1Norm {
        angular,
        boundary: b.radius() * angular,
        nodes,
    })
}
