//! CSV and JSON file formats shared by the CLI and the bindings.

use std::io::{Read, Write};
use std::path::Path;

use crate::boundary_data::{BoundaryData, CartesianPoint, DiskGeometry};
use crate::error::{Error, Result};
use crate::fourier::FourierSpectrum;
use crate::harmonic::MonomialTable;
use crate::taylor::TaylorExpansion;

/// Shortest round-trip text for `v`, switching to exponent form for very
/// small or very large magnitudes.
pub fn format_f64(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || !v.is_finite() || (1e-5..1e16).contains(&a) {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

fn expect_header<R: Read>(reader: &mut csv::Reader<R>, want: &[&str]) -> Result<()> {
    let header = reader.headers()?;
    let got: Vec<&str> = header.iter().map(str::trim).collect();
    if got != want {
        return Err(Error::Parse(format!(
            "expected CSV header `{}`, got `{}`",
            want.join(","),
            got.join(",")
        )));
    }
    Ok(())
}

fn parse_field(record: &csv::StringRecord, idx: usize, line: u64) -> Result<f64> {
    let raw = record
        .get(idx)
        .ok_or_else(|| Error::Parse(format!("line {line}: missing column {}", idx + 1)))?;
    raw.trim()
        .parse::<f64>()
        .map_err(|e| Error::Parse(format!("line {line}: `{raw}`: {e}")))
}

fn read_pairs<R: Read>(input: R, header: &[&str]) -> Result<Vec<(f64, f64)>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    expect_header(&mut reader, header)?;
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        out.push((parse_field(&record, 0, line)?, parse_field(&record, 1, line)?));
    }
    Ok(out)
}

/// Boundary samples from CSV `theta,value`.
pub fn read_boundary_csv<R: Read>(input: R, geometry: DiskGeometry) -> Result<BoundaryData> {
    let (thetas, values): (Vec<f64>, Vec<f64>) = read_pairs(input, &["theta", "value"])?.into_iter().unzip();
    BoundaryData::from_nonuniform_samples(&thetas, &values, geometry)
}

pub fn read_boundary_file(path: &Path, geometry: DiskGeometry) -> Result<BoundaryData> {
    read_boundary_csv(std::fs::File::open(path)?, geometry)
}

pub fn write_boundary_csv<W: Write>(out: W, thetas: &[f64], values: &[f64]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["theta", "value"])?;
    for (t, v) in thetas.iter().zip(values) {
        w.write_record([format_f64(*t), format_f64(*v)])?;
    }
    w.flush()?;
    Ok(())
}

/// Points from CSV `x,y`.
pub fn read_points_csv<R: Read>(input: R) -> Result<Vec<CartesianPoint>> {
    Ok(read_pairs(input, &["x", "y"])?
        .into_iter()
        .map(|(x, y)| CartesianPoint::new(x, y))
        .collect())
}

pub fn read_points_file(path: &Path) -> Result<Vec<CartesianPoint>> {
    read_points_csv(std::fs::File::open(path)?)
}

/// CSV `x,y,<value_column>`.
pub fn write_values_csv<W: Write>(
    out: W,
    value_column: &str,
    points: &[CartesianPoint],
    values: &[f64],
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "y", value_column])?;
    for (p, v) in points.iter().zip(values) {
        w.write_record([format_f64(p.x), format_f64(p.y), format_f64(*v)])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleComparison {
    pub point: CartesianPoint,
    pub series_value: f64,
    pub poisson_value: f64,
}

impl OracleComparison {
    pub fn abs_diff(&self) -> f64 {
        (self.series_value - self.poisson_value).abs()
    }
}

/// CSV `x,y,series_value,poisson_value,abs_diff`.
pub fn write_comparison_csv<W: Write>(out: W, rows: &[OracleComparison]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "y", "series_value", "poisson_value", "abs_diff"])?;
    for row in rows {
        w.write_record([
            format_f64(row.point.x),
            format_f64(row.point.y),
            format_f64(row.series_value),
            format_f64(row.poisson_value),
            format_f64(row.abs_diff()),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// CSV `i,j,coef` of the nonzero monomial coefficients.
pub fn write_monomial_csv<W: Write>(out: W, table: &MonomialTable) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["i", "j", "coef"])?;
    for (i, j, c) in table.nonzero() {
        w.write_record([i.to_string(), j.to_string(), format_f64(c)])?;
    }
    w.flush()?;
    Ok(())
}

/// CSV `a1,a2,coef` of a Taylor expansion.
pub fn write_taylor_csv<W: Write>(out: W, expansion: &TaylorExpansion) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["a1", "a2", "coef"])?;
    for (a1, a2, c) in expansion.entries() {
        w.write_record([a1.to_string(), a2.to_string(), format_f64(c)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_spectrum_file(path: &Path) -> Result<FourierSpectrum> {
    FourierSpectrum::from_json(&std::fs::read_to_string(path)?)
}

pub fn write_spectrum_file(path: &Path, spectrum: &FourierSpectrum) -> Result<()> {
    let mut text = spectrum.to_json()?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::compute_spectrum;
    use crate::harmonic::HarmonicApproximant;
    use crate::taylor::expand;

    #[test]
    fn boundary_csv_round_trip() {
        let m = 64;
        let thetas: Vec<f64> = (0..m).map(|j| crate::boundary_data::grid_angle(j, m)).collect();
        let values: Vec<f64> = thetas.iter().map(|t| t.cos()).collect();
        let mut buf = Vec::new();
        write_boundary_csv(&mut buf, &thetas, &values).unwrap();
        let b = read_boundary_csv(buf.as_slice(), DiskGeometry::unit()).unwrap();
        let s = compute_spectrum(&b, 4, 64).unwrap();
        assert!((s.cos_coef(1) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_csv() {
        let g = DiskGeometry::unit();
        assert!(matches!(read_boundary_csv("t,v\n0,1\n".as_bytes(), g), Err(Error::Parse(_))));
        assert!(matches!(read_points_csv("x,y\n0.1,abc\n".as_bytes()), Err(Error::Parse(_))));
        assert!(read_boundary_csv("theta,value\n0,1\n-1,2\n1,2\n2,3\n".as_bytes(), g).is_err());
    }

    #[test]
    fn number_format_round_trips() {
        for v in [0.0, -0.0, 5.0, 0.1, 1.4e-17, -3.25e20, 123456.789, f64::MIN_POSITIVE, 1e-5, 9.99e-6] {
            let t = format_f64(v);
            assert_eq!(t.parse::<f64>().unwrap().to_bits(), v.to_bits(), "{t}");
        }
        assert_eq!(format_f64(1.4e-17), "1.4e-17");
        assert_eq!(format_f64(5.0), "5");
        assert_eq!(format_f64(f64::NAN), "NaN");
    }

    #[test]
    fn points_and_values() {
        let pts = read_points_csv("x, y\n0.3, 0.4\n-0.5,0\n".as_bytes()).unwrap();
        assert_eq!(pts, vec![CartesianPoint::new(0.3, 0.4), CartesianPoint::new(-0.5, 0.0)]);
        let mut buf = Vec::new();
        write_values_csv(&mut buf, "value", &pts, &[1.0, f64::NAN]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "x,y,value\n0.3,0.4,1\n-0.5,0,NaN\n");
    }

    #[test]
    fn table_exports() {
        let g = DiskGeometry::unit();
        // x² − y²
        let u = HarmonicApproximant::new(FourierSpectrum::from_parts(g, vec![0.0, 0.0, 1.0], vec![0.0, 0.0], 0).unwrap());
        let mut buf = Vec::new();
        write_monomial_csv(&mut buf, &u.monomial_expansion().unwrap()).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("i,j,coef\n"));
        assert_eq!(text.lines().count(), 3);

        let t = expand(&u, CartesianPoint::new(0.1, 0.0), 2).unwrap();
        let mut buf = Vec::new();
        write_taylor_csv(&mut buf, &t).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("a1,a2,coef\n"));
        assert_eq!(text.lines().count(), 1 + 3);
    }
}
