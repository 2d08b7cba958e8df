//! Pattern CSV files (`x,y` header) with a JSON metadata sidecar.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::sampler::{PointPattern, Provenance};
use super::window::{BoundaryMode, Point, Window};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindowRecord {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub boundary: BoundaryMode,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PatternMetadata {
    pub window: WindowRecord,
    pub generator: String,
    pub seed: Option<u64>,
    pub points: usize,
}

impl PatternMetadata {
    pub fn of<T: Scalar>(pattern: &PointPattern<T>) -> Self {
        let w = &pattern.window;
        Self {
            window: WindowRecord {
                x_min: w.x_min.as_f64(),
                x_max: w.x_max.as_f64(),
                y_min: w.y_min.as_f64(),
                y_max: w.y_max.as_f64(),
                boundary: w.boundary,
            },
            generator: pattern.provenance.generator.clone(),
            seed: pattern.provenance.seed,
            points: pattern.len(),
        }
    }
}

/// Sidecar path for a pattern CSV: `foo.csv` -> `foo.meta.json`.
pub fn metadata_path(csv: &Path) -> PathBuf {
    csv.with_extension("meta.json")
}

pub fn write_pattern_csv<T: Scalar, W: Write>(pattern: &PointPattern<T>, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    writeln!(out, "x,y")?;
    for p in &pattern.points {
        writeln!(out, "{},{}", p.x, p.y)?;
    }
    out.flush()?;
    Ok(())
}

/// Writes `path` and its metadata sidecar.
pub fn save_pattern<T: Scalar>(pattern: &PointPattern<T>, path: &Path) -> Result<()> {
    write_pattern_csv(pattern, fs::File::create(path)?)?;
    let meta = serde_json::to_string_pretty(&PatternMetadata::of(pattern))?;
    fs::write(metadata_path(path), meta + "\n")?;
    Ok(())
}

pub fn read_points_csv<T: Scalar, R: std::io::Read>(input: R) -> Result<Vec<Point<T>>> {
    let mut points = Vec::new();
    for (idx, line) in BufReader::new(input).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if idx == 0 {
            if line != "x,y" {
                return Err(Error::config(1, format!("expected header x,y, found {line:?}")));
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let parse = |s: Option<&str>| -> Result<T> {
            s.and_then(|v| v.trim().parse::<f64>().ok())
                .map(T::lit)
                .ok_or_else(|| Error::config(idx + 1, format!("malformed point {line:?}")))
        };
        let mut fields = line.split(',');
        let x = parse(fields.next())?;
        let y = parse(fields.next())?;
        points.push(Point::new(x, y));
    }
    Ok(points)
}

/// Reads a pattern saved by [`save_pattern`].
pub fn load_pattern<T: Scalar>(path: &Path) -> Result<PointPattern<T>> {
    let meta: PatternMetadata = serde_json::from_str(&fs::read_to_string(metadata_path(path))?)?;
    let w = &meta.window;
    let window = Window::new(
        T::lit(w.x_min),
        T::lit(w.x_max),
        T::lit(w.y_min),
        T::lit(w.y_max),
        w.boundary,
    )?;
    let points = read_points_csv(fs::File::open(path)?)?;
    PointPattern::new(
        points,
        window,
        Provenance {
            generator: meta.generator,
            seed: meta.seed,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point_processes::sample_homogeneous_poisson;

    #[test]
    fn pattern_survives_disk_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.csv");
        let w = Window::sized(5.0, 3.0, BoundaryMode::Torus).unwrap();
        let p = sample_homogeneous_poisson(2.0, &w, 17).unwrap();
        save_pattern(&p, &path).unwrap();
        let q: PointPattern<f64> = load_pattern(&path).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn rejects_bad_header() {
        let err = read_points_csv::<f64, _>("a,b\n1,2\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Config { line: 1, .. }));
    }
}
