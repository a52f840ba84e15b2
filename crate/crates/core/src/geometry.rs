//! Finite samples of Euclidean geometry as float-backed spaces.

use crate::error::Result;
use crate::scalar::ExtDist;
use crate::space::QMetSpace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Metric {
    #[default]
    Euclidean,
    Manhattan,
    Chebyshev,
}

impl Metric {
    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        let diffs = a.iter().zip(b).map(|(x, y)| (x - y).abs());
        match self {
            Metric::Euclidean => diffs.map(|d| d * d).sum::<f64>().sqrt(),
            Metric::Manhattan => diffs.sum(),
            Metric::Chebyshev => diffs.fold(0.0, f64::max),
        }
    }
}

/// A point cloud with the chosen metric. Coordinates are kept on the space
/// so geometric diagnostics can use them.
pub fn point_cloud(points: Vec<Vec<f64>>, metric: Metric) -> Result<QMetSpace<f64>> {
    let matrix = points
        .iter()
        .map(|a| points.iter().map(|b| ExtDist::Finite(metric.distance(a, b))).collect())
        .collect();
    Ok(QMetSpace::new(matrix)?.with_coords(points))
}

pub fn euclidean_space(points: Vec<Vec<f64>>) -> Result<QMetSpace<f64>> {
    point_cloud(points, Metric::Euclidean)
}

fn on_unit_circle(degrees: f64) -> Vec<f64> {
    let t = degrees.to_radians();
    vec![t.cos(), t.sin()]
}

/// `count` evenly spaced points on the unit circle arc that omits a gap of
/// `gap_degrees` centred at 90°. The endpoints sit at `90 ± gap/2` degrees;
/// the first point is the left endpoint and the last point the right one.
pub fn circle_arc(gap_degrees: f64, count: usize) -> Result<QMetSpace<f64>> {
    assert!(count >= 2, "an arc sample needs both endpoints");
    let start = 90.0 + gap_degrees / 2.0;
    let span = 360.0 - gap_degrees;
    let points = (0..count)
        .map(|i| on_unit_circle(start + span * i as f64 / (count - 1) as f64))
        .collect();
    euclidean_space(points)
}

/// `count` evenly spaced points on the whole unit circle.
pub fn circle(count: usize) -> Result<QMetSpace<f64>> {
    let points = (0..count).map(|i| on_unit_circle(360.0 * i as f64 / count as f64)).collect();
    euclidean_space(points)
}

/// The `rows × cols` integer lattice with the given spacing.
pub fn grid(rows: usize, cols: usize, spacing: f64, metric: Metric) -> Result<QMetSpace<f64>> {
    let points = (0..rows)
        .flat_map(|i| (0..cols).map(move |j| vec![j as f64 * spacing, i as f64 * spacing]))
        .collect();
    point_cloud(points, metric)
}
