//! File formats for polygons, curves and tables.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use centroaffine::billiards::ConvexTable;
use centroaffine::functionals::DiffeoCurve;
use centroaffine::planar::{ConvexPolygon, StarPolygon, SupportBody, Vec2};
use centroaffine::Complex;

use crate::{CliError, CliResult};

/// `{"n": 5, "vertices": [[x, y], ...]}`, the first half of the vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonFile {
    pub n: usize,
    pub vertices: Vec<[f64; 2]>,
}

/// `{"half_period": pi, "harmonics": [[n, re, im], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveFile {
    pub half_period: f64,
    pub harmonics: Vec<(i64, f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TableFile {
    /// Counterclockwise vertices.
    Polygon { vertices: Vec<[f64; 2]> },
    /// Support values on a uniform grid of `[0, 2 pi)`.
    Support { support: Vec<f64> },
}

fn read<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse { path: path.display().to_string(), message: e.to_string() })
}

fn points(v: &[[f64; 2]]) -> Vec<Vec2<f64>> {
    v.iter().map(|&[x, y]| Vec2::new(x, y)).collect()
}

pub fn polygon_from_file(file: &PolygonFile) -> CliResult<StarPolygon<f64>> {
    if file.n != file.vertices.len() {
        return Err(CliError::Config(format!("n = {} but {} vertices are listed", file.n, file.vertices.len())));
    }
    Ok(StarPolygon::new(points(&file.vertices))?)
}

pub fn load_polygon(path: &Path) -> CliResult<StarPolygon<f64>> {
    polygon_from_file(&read(path)?)
}

pub fn curve_from_file(file: &CurveFile, grid: usize) -> CliResult<DiffeoCurve<f64>> {
    if (file.half_period - std::f64::consts::PI).abs() > 1e-12 {
        return Err(CliError::Config(format!("half_period = {} but curves are pi-antiperiodic", file.half_period)));
    }
    let harmonics = file.harmonics.iter().map(|&(n, re, im)| (n, Complex::new(re, im))).collect();
    Ok(DiffeoCurve::new(harmonics, grid)?)
}

pub fn load_curve(path: &Path, grid: usize) -> CliResult<DiffeoCurve<f64>> {
    curve_from_file(&read(path)?, grid)
}

pub fn table_from_file(file: &TableFile) -> CliResult<ConvexTable> {
    Ok(match file {
        TableFile::Polygon { vertices } => ConvexTable::Polygon(ConvexPolygon::new(points(vertices))?),
        TableFile::Support { support } => ConvexTable::Smooth(SupportBody::new(support.clone())?),
    })
}

pub fn load_table(path: &Path) -> CliResult<ConvexTable> {
    table_from_file(&read(path)?)
}

/// Parses `n:re:im,n:re:im`.
pub fn parse_harmonics(text: &str) -> CliResult<Vec<(i64, Complex<f64>)>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let parts: Vec<&str> = item.split(':').map(str::trim).collect();
            let bad = || CliError::Config(format!("harmonic `{item}` is not of the form n:re:im"));
            if parts.len() != 3 {
                return Err(bad());
            }
            let n = parts[0].parse().map_err(|_| bad())?;
            let re = parts[1].parse().map_err(|_| bad())?;
            let im = parts[2].parse().map_err(|_| bad())?;
            Ok((n, Complex::new(re, im)))
        })
        .collect()
}

/// Parses `x,y`.
pub fn parse_point(text: &str) -> CliResult<Vec2<f64>> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Config(format!("point `{text}` is not of the form x,y")))?;
    match parts[..] {
        [x, y] => Ok(Vec2::new(x, y)),
        _ => Err(CliError::Config(format!("point `{text}` is not of the form x,y"))),
    }
}

/// A named table or a table file.
pub fn resolve_table(spec: &str, grid: usize) -> CliResult<ConvexTable> {
    match spec {
        "circle" => Ok(ConvexTable::unit_circle(grid)?),
        "square" => Ok(ConvexTable::square()),
        "triangle" => Ok(ConvexTable::equilateral_triangle()),
        path => load_table(Path::new(path)),
    }
}
