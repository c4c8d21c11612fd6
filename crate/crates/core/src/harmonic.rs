//! The harmonic polynomial approximant `ũ_n` and its exact derivatives.
//!
//! With `(x̂, ŷ) = (x/R, y/R)` and `P_k + iQ_k = (x̂ + iŷ)^k`,
//!
//! ```text
//! ũ_n(x, y) = a_0/2 + Σ_{k=1}^{n} (a_k P_k(x̂, ŷ) + b_k Q_k(x̂, ŷ)).
//! ```
//!
//! `P_k, Q_k` are generated by the complex-product recurrence, so evaluation
//! is a single `O(n)` pass without trigonometric calls. The binomial
//! (monomial) form of the same polynomial is available from
//! [`HarmonicApproximant::monomial_expansion`] for small degrees.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::boundary_data::CartesianPoint;
use crate::error::{Error, Result};
use crate::fourier::FourierSpectrum;

/// Largest degree for which the monomial table is produced.
pub const MAX_MONOMIAL_DEGREE: usize = 60;

/// Values of `P_k, Q_k` at one point in scaled variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PQPair {
    pub p: f64,
    pub q: f64,
}

/// `(P_k, Q_k)` for `k = 0..=n` at `(x̂, ŷ)`.
pub fn pq_sequence(xh: f64, yh: f64, n: usize) -> Vec<PQPair> {
    let mut out = Vec::with_capacity(n + 1);
    let (mut p, mut q) = (1.0, 0.0);
    out.push(PQPair { p, q });
    for _ in 0..n {
        (p, q) = (xh * p - yh * q, xh * q + yh * p);
        out.push(PQPair { p, q });
    }
    out
}

/// `k!/(k−s)!`, or `None` on overflow.
pub fn falling_factorial(k: usize, s: usize) -> Option<f64> {
    if s > k {
        return Some(0.0);
    }
    let v = ((k - s + 1)..=k).fold(1.0f64, |acc, j| acc * j as f64);
    v.is_finite().then_some(v)
}

/// The degree-`n` approximant built from a spectrum. Immutable.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicApproximant {
    spectrum: FourierSpectrum,
}

impl HarmonicApproximant {
    pub fn new(spectrum: FourierSpectrum) -> Self {
        Self { spectrum }
    }

    pub fn spectrum(&self) -> &FourierSpectrum {
        &self.spectrum
    }

    pub fn degree(&self) -> usize {
        self.spectrum.n_max()
    }

    pub fn radius(&self) -> f64 {
        self.spectrum.radius()
    }

    /// The approximant of lower degree `n` sharing these coefficients.
    pub fn truncated(&self, n: usize) -> Result<Self> {
        Ok(Self::new(self.spectrum.truncated(n)?))
    }

    /// `ũ_n(p)`. Valid on all of ℝ².
    pub fn eval(&self, p: CartesianPoint) -> f64 {
        let inv_r = 1.0 / self.radius();
        let (xh, yh) = (p.x * inv_r, p.y * inv_r);
        let a = self.spectrum.a();
        let b = self.spectrum.b();
        let mut sum = 0.5 * a[0];
        let (mut pk, mut qk) = (1.0, 0.0);
        for k in 1..=self.degree() {
            (pk, qk) = (xh * pk - yh * qk, xh * qk + yh * pk);
            sum += a[k] * pk + b[k - 1] * qk;
        }
        sum
    }

    /// `ũ_m(p) − ũ_n(p) = Σ_{k=n+1}^{m} (a_k P_k + b_k Q_k)` summed directly, so
    /// small tails are not lost to cancellation. Requires `n <= m <= degree`.
    pub fn eval_tail(&self, p: CartesianPoint, n: usize, m: usize) -> f64 {
        debug_assert!(n <= m && m <= self.degree());
        let inv_r = 1.0 / self.radius();
        let (xh, yh) = (p.x * inv_r, p.y * inv_r);
        let a = self.spectrum.a();
        let b = self.spectrum.b();
        let mut sum = 0.0;
        let (mut pk, mut qk) = (1.0, 0.0);
        for k in 1..=m {
            (pk, qk) = (xh * pk - yh * qk, xh * qk + yh * pk);
            if k > n {
                sum += a[k] * pk + b[k - 1] * qk;
            }
        }
        sum
    }

    /// Values at many points, computed in parallel; order matches the input.
    pub fn eval_batch(&self, points: &[CartesianPoint]) -> Vec<f64> {
        points.par_iter().map(|&p| self.eval(p)).collect()
    }

    /// Exact `D^{(α₁,α₂)} ũ_n(p) = ∂ₓ^{α₁} ∂_y^{α₂} ũ_n(p)`.
    ///
    /// Uses `∂ₓP_k = kP_{k−1}`, `∂_yP_k = −kQ_{k−1}`, `∂ₓQ_k = kQ_{k−1}`,
    /// `∂_yQ_k = kP_{k−1}`: with `s = α₁ + α₂` and `m = k − s`, the `k`-th term
    /// becomes `±k!/m! (a_k P_m + b_k Q_m)` for even `α₂` and
    /// `±k!/m! (−a_k Q_m + b_k P_m)` for odd `α₂`, times `R^{−s}`.
    pub fn eval_derivative(&self, p: CartesianPoint, alpha1: u32, alpha2: u32) -> Result<f64> {
        let s = (alpha1 + alpha2) as usize;
        if s == 0 {
            return Ok(self.eval(p));
        }
        let n = self.degree();
        if s > n {
            return Ok(0.0);
        }
        let radius = self.radius();
        let (xh, yh) = (p.x / radius, p.y / radius);
        let a = self.spectrum.a();
        let b = self.spectrum.b();
        let odd = alpha2 % 2 == 1;
        let sign = if (alpha2 / 2) % 2 == 0 { 1.0 } else { -1.0 };

        let overflow = || {
            Error::Overflow(format!(
                "derivative of order ({alpha1}, {alpha2}) at degree {n} exceeds f64 range"
            ))
        };
        let mut ff = falling_factorial(s, s).ok_or_else(overflow)?;
        let mut sum = 0.0;
        let (mut pm, mut qm) = (1.0, 0.0);
        for k in s..=n {
            if k > s {
                (pm, qm) = (xh * pm - yh * qm, xh * qm + yh * pm);
                ff = ff * k as f64 / (k - s) as f64;
                if !ff.is_finite() {
                    return Err(overflow());
                }
            }
            let (ak, bk) = (a[k], b[k - 1]);
            let combo = if odd { -ak * qm + bk * pm } else { ak * pm + bk * qm };
            sum += ff * combo;
        }
        let value = sign * sum * radius.powi(-(s as i32));
        if value.is_finite() {
            Ok(value)
        } else {
            Err(overflow())
        }
    }

    /// Dense table `m[i][j]` with `ũ_n(x, y) = Σ m[i][j] x^i y^j`, built from
    /// the binomial sums with `c_k = a_k / R^k`, `d_k = b_k / R^k` folded in.
    pub fn monomial_expansion(&self) -> Result<MonomialTable> {
        let n = self.degree();
        if n > MAX_MONOMIAL_DEGREE {
            return Err(Error::ExpansionUnsupported {
                degree: n,
                max: MAX_MONOMIAL_DEGREE,
            });
        }
        let radius = self.radius();
        let mut coeffs = vec![vec![0.0; n + 1]; n + 1];
        coeffs[0][0] = self.spectrum.center_value();
        let mut row = vec![1u64];
        for k in 1..=n {
            // Pascal row k
            let mut next = vec![1u64; k + 1];
            for j in 1..k {
                next[j] = row[j - 1] + row[j];
            }
            row = next;
            let scale = radius.powi(-(k as i32));
            let ck = self.spectrum.cos_coef(k) * scale;
            let dk = self.spectrum.sin_coef(k) * scale;
            for (j, &binom) in row.iter().enumerate() {
                let sign = if (j / 2) % 2 == 0 { 1.0 } else { -1.0 };
                let coef = if j % 2 == 0 { ck } else { dk };
                coeffs[k - j][j] += sign * binom as f64 * coef;
            }
        }
        Ok(MonomialTable { coeffs })
    }

    /// Trapezoid estimate of `∫_{∂B_L(center)} |ũ_n| ds` on `nodes` points.
    pub fn circle_l1(&self, center: CartesianPoint, radius: f64, nodes: usize) -> f64 {
        let h = 2.0 * PI / nodes as f64;
        let sum: f64 = (0..nodes)
            .map(|j| {
                let (s, c) = (j as f64 * h).sin_cos();
                self.eval(center.offset(radius * c, radius * s)).abs()
            })
            .sum();
        sum * h * radius
    }
}

/// Bivariate monomial coefficients, `coeffs[i][j]` multiplying `x^i y^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialTable {
    coeffs: Vec<Vec<f64>>,
}

impl MonomialTable {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coef(&self, i: usize, j: usize) -> f64 {
        self.coeffs
            .get(i)
            .and_then(|row| row.get(j))
            .copied()
            .unwrap_or(0.0)
    }

    /// Nonzero entries as `(i, j, coef)`, ordered by `i` then `j`.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.coeffs.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| **c != 0.0)
                .map(move |(j, &c)| (i, j, c))
        })
    }

    pub fn eval(&self, p: CartesianPoint) -> f64 {
        // Horner in x over Horner-in-y rows
        let n = self.degree();
        let mut acc = 0.0;
        for i in (0..=n).rev() {
            let row = &self.coeffs[i];
            let mut inner = 0.0;
            for j in (0..=n - i).rev() {
                inner = inner * p.y + row[j];
            }
            acc = acc * p.x + inner;
        }
        acc
    }
}
