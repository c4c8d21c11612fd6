//! Built-in closed-form boundary functions, selectable by name.
//!
//! | name                   | f(θ)                                   | class declared          |
//! |------------------------|----------------------------------------|-------------------------|
//! | `const<c>`             | c                                      | C^{1,1}, seminorm 0     |
//! | `cos<k>`, `sin<k>`     | cos kθ, sin kθ                         | C^{1,1}, seminorm k²    |
//! | `abs_sin_half[:a]`     | \|sin(θ/2)\|^a  (a defaults to 0.5)    | C^{0,a}, seminorm 2^{-a}|
//! | `hat`                  | 1 − \|θ\|/π                            | C^{0,1}, seminorm 1/π   |
//! | `parabola`             | θ(π − \|θ\|)                           | C^{1,1}, seminorm 2     |
//! | `square`               | sign θ                                 | none (discontinuous)    |
//! | `exp_cos`, `exp_sin`   | e^{cos θ}, e^{sin θ}                   | C^{1,1}, seminorm e     |
//! | `geom[:q]`             | (1−q²)/(1 − 2q cos θ + q²)             | C^{1,1}, 2q(1+q)/(1−q)³ |
//!
//! `geom:q` has cosine coefficients exactly `2q^k`.

use std::f64::consts::{E, PI};

use crate::boundary_data::{BoundaryData, DiskGeometry, Smoothness};
use crate::error::{Error, Result};

/// Names accepted by [`builtin`] (parameterised families use a representative).
pub const CORPUS: &[&str] = &[
    "const5",
    "cos1",
    "sin1",
    "cos2",
    "sin2",
    "cos3",
    "sin3",
    "abs_sin_half:0.5",
    "hat",
    "parabola",
    "square",
    "exp_cos",
    "exp_sin",
    "geom:0.5",
    "geom:0.7",
];

/// The smooth members of [`CORPUS`] (trigonometric polynomials and entire or
/// analytic data).
pub const SMOOTH_CORPUS: &[&str] = &[
    "const5", "cos1", "sin1", "cos2", "sin2", "cos3", "sin3", "exp_cos", "exp_sin", "geom:0.5",
    "geom:0.7",
];

fn parse_param<T: std::str::FromStr>(name: &str, text: &str) -> Result<T> {
    text.parse()
        .map_err(|_| Error::InvalidArgument(format!("bad parameter '{text}' in '{name}'")))
}

/// Build the named boundary function on the disk of the given geometry.
pub fn builtin(name: &str, geometry: DiskGeometry) -> Result<BoundaryData> {
    let (head, param) = match name.split_once(':') {
        Some((h, p)) => (h, Some(p)),
        None => (name, None),
    };
    let smooth = |seminorm: f64| Smoothness::new(1, 1.0, Some(seminorm));

    let data = match head {
        "abs_sin_half" => {
            let a: f64 = param.map_or(Ok(0.5), |p| parse_param(name, p))?;
            let class = Smoothness::new(0, a, Some(0.5f64.powf(a)))?;
            BoundaryData::from_angular(name, move |t| (0.5 * t).sin().abs().powf(a), geometry)?
                .with_smoothness(class)
        }
        "hat" => BoundaryData::from_angular(name, |t| 1.0 - t.abs() / PI, geometry)?
            .with_smoothness(Smoothness::new(0, 1.0, Some(1.0 / PI))?),
        "parabola" => BoundaryData::from_angular(name, |t| t * (PI - t.abs()), geometry)?
            .with_smoothness(smooth(2.0)?),
        "square" => BoundaryData::from_angular(
            name,
            |t| if t > 0.0 { 1.0 } else if t < 0.0 { -1.0 } else { 0.0 },
            geometry,
        )?,
        "exp_cos" => BoundaryData::from_angular(name, |t| t.cos().exp(), geometry)?
            .with_smoothness(smooth(E)?),
        "exp_sin" => BoundaryData::from_angular(name, |t| t.sin().exp(), geometry)?
            .with_smoothness(smooth(E)?),
        "geom" => {
            let q: f64 = param.map_or(Ok(0.5), |p| parse_param(name, p))?;
            if !(0.0..1.0).contains(&q) {
                return Err(Error::InvalidArgument(format!("geom needs q in [0, 1), got {q}")));
            }
            let seminorm = 2.0 * q * (1.0 + q) / (1.0 - q).powi(3);
            BoundaryData::from_angular(
                name,
                move |t| (1.0 - q * q) / (1.0 - 2.0 * q * t.cos() + q * q),
                geometry,
            )?
            .with_smoothness(smooth(seminorm)?)
        }
        _ if param.is_none() && head.starts_with("const") => {
            let rest = &head["const".len()..];
            let c: f64 = if rest.is_empty() { 1.0 } else { parse_param(name, rest)? };
            BoundaryData::from_angular(name, move |_| c, geometry)?.with_smoothness(smooth(0.0)?)
        }
        _ if param.is_none() && (head.starts_with("cos") || head.starts_with("sin")) => {
            let k: u32 = parse_param(name, &head[3..])?;
            let kf = k as f64;
            let data = if head.starts_with("cos") {
                BoundaryData::from_angular(name, move |t| (kf * t).cos(), geometry)?
            } else {
                BoundaryData::from_angular(name, move |t| (kf * t).sin(), geometry)?
            };
            data.with_smoothness(smooth(kf * kf)?)
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "unknown boundary expression '{name}'"
            )))
        }
    };
    Ok(data)
}
