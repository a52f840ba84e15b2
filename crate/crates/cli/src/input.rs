//! Text formats for spaces and digraphs, the built-in generators, and the
//! backend-tagged [`Input`] every command runs on.
//!
//! Distance matrices are one row per line, entries separated by commas or
//! whitespace, `inf` for an infinite distance. Edge lists are one `u v` pair
//! per line with an optional `vertices N` line. Point clouds are one point
//! per line. `#` starts a comment everywhere.

use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use rhomotopy::catalog;
use rhomotopy::geometry::{self, Metric};
use rhomotopy::{Backend, Digraph, Error, ExtDist, Interval, QMetSpace, Scalar};

use crate::error::{CliError, Result};

/// A validated space in one of the three backends. Integer spaces built
/// from edge lists keep their digraph.
#[derive(Clone, Debug)]
pub enum Input {
    Integer { space: Arc<QMetSpace<i64>>, graph: Option<Digraph> },
    Rational(Arc<QMetSpace<BigRational>>),
    Float(Arc<QMetSpace<f64>>),
}

impl Input {
    pub fn from_digraph(graph: Digraph) -> Self {
        Input::Integer { space: Arc::new(graph.shortest_path_space()), graph: Some(graph) }
    }

    pub fn backend(&self) -> Backend {
        match self {
            Input::Integer { .. } => Backend::Integer,
            Input::Rational(_) => Backend::Rational,
            Input::Float(_) => Backend::Float,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Input::Integer { space, .. } => space.len(),
            Input::Rational(space) => space.len(),
            Input::Float(space) => space.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn graph(&self) -> Option<&Digraph> {
        match self {
            Input::Integer { graph, .. } => graph.as_ref(),
            _ => None,
        }
    }

    /// Makes an integer space accept the given query literals. Spaces read
    /// from a distance matrix are promoted to exact rationals when a literal
    /// is not an integer; digraphs reject such literals.
    pub fn accommodate(self, literals: &[Literal<'_>]) -> Result<Self> {
        let Input::Integer { space, graph } = self else { return Ok(self) };
        let fractional = literals.iter().any(|lit| !lit.fits::<i64>() && lit.fits::<BigRational>());
        match (fractional, graph) {
            (false, graph) => Ok(Input::Integer { space, graph }),
            (true, Some(_)) => Err(Error::NonIntegerQueryOnDigraph.into()),
            (true, None) => {
                let matrix = space
                    .rows()
                    .map(|row| {
                        row.iter()
                            .map(|d| match d {
                                ExtDist::Finite(v) => ExtDist::Finite(BigRational::from_i64(*v)),
                                ExtDist::Infinite => ExtDist::Infinite,
                            })
                            .collect()
                    })
                    .collect();
                Ok(Input::Rational(Arc::new(QMetSpace::new(matrix)?)))
            }
        }
    }
}

/// A query literal as typed by the user, checked against a backend once
/// the space is known.
#[derive(Clone, Copy, Debug)]
pub enum Literal<'a> {
    Value(&'a str),
    Interval(&'a str),
}

impl Literal<'_> {
    pub fn fits<T: Scalar>(&self) -> bool {
        match self {
            Literal::Value(s) => T::parse_literal(s).is_some(),
            Literal::Interval(s) => Interval::<T>::parse(s).is_ok(),
        }
    }
}

/// Numeric backend requested on the command line.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum BackendChoice {
    #[default]
    Auto,
    Integer,
    Rational,
    Float,
}

impl From<Backend> for BackendChoice {
    fn from(b: Backend) -> Self {
        match b {
            Backend::Integer => BackendChoice::Integer,
            Backend::Rational => BackendChoice::Rational,
            Backend::Float => BackendChoice::Float,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum MetricChoice {
    #[default]
    Euclidean,
    Manhattan,
    Chebyshev,
}

impl From<MetricChoice> for Metric {
    fn from(m: MetricChoice) -> Self {
        match m {
            MetricChoice::Euclidean => Metric::Euclidean,
            MetricChoice::Manhattan => Metric::Manhattan,
            MetricChoice::Chebyshev => Metric::Chebyshev,
        }
    }
}

/// Nonblank lines with comments removed, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.split_once('#').map_or(line, |(head, _)| head)))
        .filter(|(_, line)| !line.trim().is_empty())
}

/// Fields separated by commas and/or whitespace, each with its 1-based
/// column.
fn fields(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        let sep = c == ',' || c.is_whitespace();
        match (sep, start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter().map(|(byte, f)| (line[..byte].chars().count() + 1, f)).collect()
}

fn is_infinite(token: &str) -> bool {
    matches!(token, "inf" | "+inf" | "Inf" | "INF" | "∞")
}

/// Backend named by a `# backend: <name>` line, if any.
fn declared_backend(text: &str) -> Option<BackendChoice> {
    text.lines().find_map(|line| {
        let rest = line.trim().strip_prefix('#')?.trim().strip_prefix("backend:")?;
        match rest.trim() {
            "integer" => Some(BackendChoice::Integer),
            "rational" => Some(BackendChoice::Rational),
            "float" => Some(BackendChoice::Float),
            _ => None,
        }
    })
}

/// Backend implied by the literals: any `p/q` means rational, any decimal
/// point or exponent means float, otherwise integer.
fn detect_backend(text: &str) -> BackendChoice {
    if let Some(b) = declared_backend(text) {
        return b;
    }
    let tokens: Vec<&str> = content_lines(text)
        .flat_map(|(_, line)| fields(line).into_iter().map(|(_, t)| t))
        .filter(|t| !is_infinite(t))
        .collect();
    if tokens.iter().any(|t| t.contains('/')) {
        BackendChoice::Rational
    } else if tokens.iter().any(|t| t.contains(['.', 'e', 'E'])) {
        BackendChoice::Float
    } else {
        BackendChoice::Integer
    }
}

fn matrix_entries<T: Scalar>(text: &str) -> Result<Vec<Vec<ExtDist<T>>>> {
    let mut rows = Vec::new();
    for (line_no, line) in content_lines(text) {
        let row = fields(line)
            .into_iter()
            .map(|(col, token)| {
                if is_infinite(token) {
                    Ok(ExtDist::Infinite)
                } else {
                    T::parse_literal(token).map(ExtDist::Finite).ok_or_else(|| {
                        CliError::parse(line_no, col, format!("{token:?} is not a {} distance", T::BACKEND))
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// Parses and validates a distance matrix in a fixed backend.
pub fn parse_matrix_as<T: Scalar>(text: &str, tau: f64) -> Result<QMetSpace<T>> {
    Ok(QMetSpace::with_tolerance(matrix_entries(text)?, tau)?)
}

/// Parses a distance matrix, picking the backend from the literals when
/// `backend` is [`BackendChoice::Auto`].
pub fn parse_matrix(text: &str, backend: BackendChoice, tau: f64) -> Result<Input> {
    let backend = if backend == BackendChoice::Auto { detect_backend(text) } else { backend };
    Ok(match backend {
        BackendChoice::Integer | BackendChoice::Auto => {
            Input::Integer { space: Arc::new(parse_matrix_as(text, tau)?), graph: None }
        }
        BackendChoice::Rational => Input::Rational(Arc::new(parse_matrix_as(text, tau)?)),
        BackendChoice::Float => Input::Float(Arc::new(parse_matrix_as(text, tau)?)),
    })
}

fn parse_index(line: usize, col: usize, token: &str) -> Result<usize> {
    token.parse().map_err(|_| CliError::parse(line, col, format!("{token:?} is not a vertex index")))
}

/// Parses an edge list. Without a `vertices N` line the vertex count is one
/// more than the largest index.
pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let mut declared = None;
    let mut arrows = Vec::new();
    for (line_no, line) in content_lines(text) {
        let f = fields(line);
        match f.as_slice() {
            [(_, "vertices"), (col, n)] => declared = Some(parse_index(line_no, *col, n)?),
            [(cu, u), (cv, v)] => arrows.push((parse_index(line_no, *cu, u)?, parse_index(line_no, *cv, v)?)),
            _ => return Err(CliError::parse(line_no, 1, "expected `u v` or `vertices N`")),
        }
    }
    let n = declared.unwrap_or_else(|| arrows.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Ok(Digraph::new(n, arrows)?)
}

/// Parses a point cloud; every point needs the same dimension.
pub fn parse_points(text: &str, metric: Metric) -> Result<QMetSpace<f64>> {
    let mut points: Vec<Vec<f64>> = Vec::new();
    for (line_no, line) in content_lines(text) {
        let point = fields(line)
            .into_iter()
            .map(|(col, token)| {
                f64::parse_literal(token)
                    .ok_or_else(|| CliError::parse(line_no, col, format!("{token:?} is not a finite coordinate")))
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = points.first() {
            if first.len() != point.len() {
                return Err(CliError::parse(
                    line_no,
                    1,
                    format!("point has {} coordinates, expected {}", point.len(), first.len()),
                ));
            }
        }
        points.push(point);
    }
    Ok(geometry::point_cloud(points, metric)?)
}

/// Writes a literal that reads back to the same value in the same backend.
pub fn format_scalar<T: Scalar>(v: &T) -> String {
    match T::BACKEND {
        Backend::Float => format!("{:?}", v.to_f64()),
        _ => v.to_string(),
    }
}

/// The matrix format with a backend line, so that [`parse_matrix`] in auto
/// mode returns an equal space.
pub fn print_matrix<T: Scalar>(space: &QMetSpace<T>) -> String {
    let mut out = format!("# backend: {}\n", T::BACKEND);
    for row in space.rows() {
        let entries: Vec<String> = row
            .iter()
            .map(|d| match d {
                ExtDist::Finite(v) => format_scalar(v),
                ExtDist::Infinite => "inf".to_string(),
            })
            .collect();
        out.push_str(&entries.join(","));
        out.push('\n');
    }
    out
}

pub fn print_digraph(graph: &Digraph) -> String {
    let mut out = format!("vertices {}\n", graph.vertex_count());
    for (u, v) in graph.arrows() {
        writeln!(out, "{u} {v}").expect("writing to a string");
    }
    out
}

/// A built-in space, written `name` or `name:arg,arg`.
#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    /// Points on the unit circle leaving out a gap (degrees) around the top.
    CircleArc { gap: f64, count: usize },
    Circle { count: usize },
    Grid { rows: usize, cols: usize, spacing: f64 },
    Cycle(usize),
    DirectedCycle(usize),
    DirectedPath(usize),
    Discontinuity { eps: f64 },
    Lev,
    Diamond,
    PentagonWithApex,
    BidirectedHexagon,
}

impl FromStr for Generator {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| CliError::Usage(format!("generator {s:?}: {msg}"));
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        let args: Vec<&str> = if args.is_empty() { Vec::new() } else { args.split(',').map(str::trim).collect() };
        let count = |i: usize| -> Result<usize> {
            args.get(i).and_then(|a| a.parse().ok()).ok_or_else(|| bad("expected a count"))
        };
        let real = |i: usize| -> Result<f64> {
            args.get(i).and_then(|a| f64::parse_literal(a)).ok_or_else(|| bad("expected a number"))
        };
        let arity = |n: usize| if args.len() == n { Ok(()) } else { Err(bad(&format!("expected {n} argument(s)"))) };
        Ok(match name {
            "circle-arc" => {
                arity(2)?;
                Generator::CircleArc { gap: real(0)?, count: count(1)? }
            }
            "circle" => {
                arity(1)?;
                Generator::Circle { count: count(0)? }
            }
            "grid" => {
                let (rows, cols) = args
                    .first()
                    .and_then(|a| a.split_once('x'))
                    .and_then(|(r, c)| Some((r.parse().ok()?, c.parse().ok()?)))
                    .ok_or_else(|| bad("expected ROWSxCOLS"))?;
                let spacing = if args.len() > 1 { real(1)? } else { 1.0 };
                Generator::Grid { rows, cols, spacing }
            }
            "cycle" => Generator::Cycle(count(0)?),
            "directed-cycle" => Generator::DirectedCycle(count(0)?),
            "directed-path" => Generator::DirectedPath(count(0)?),
            "discontinuity" => Generator::Discontinuity { eps: if args.is_empty() { 0.0 } else { real(0)? } },
            "lev" => Generator::Lev,
            "diamond" => Generator::Diamond,
            "pentagon-apex" => Generator::PentagonWithApex,
            "bidirected-hexagon" => Generator::BidirectedHexagon,
            _ => return Err(bad("unknown name")),
        })
    }
}

impl Generator {
    pub fn build(&self, metric: Metric) -> Result<Input> {
        let float = |space: rhomotopy::Result<QMetSpace<f64>>| -> Result<Input> { Ok(Input::Float(Arc::new(space?))) };
        let small = |n: usize| if n == 0 { Err(CliError::Usage("generators need at least one point".into())) } else { Ok(()) };
        match *self {
            Generator::CircleArc { gap, count } => {
                if count < 2 || !(0.0..360.0).contains(&gap) {
                    return Err(CliError::Usage("circle-arc needs a gap in [0, 360) and at least 2 points".into()));
                }
                float(geometry::circle_arc(gap, count))
            }
            Generator::Circle { count } => {
                small(count)?;
                float(geometry::circle(count))
            }
            Generator::Grid { rows, cols, spacing } => {
                small(rows * cols)?;
                if spacing <= 0.0 {
                    return Err(CliError::Usage("grid spacing must be positive".into()));
                }
                float(geometry::grid(rows, cols, spacing, metric))
            }
            Generator::Discontinuity { eps } => float(geometry::euclidean_space(catalog::discontinuity_points(eps))),
            Generator::Cycle(n) => {
                small(n)?;
                Ok(Input::from_digraph(catalog::cycle(n)))
            }
            Generator::DirectedCycle(n) => {
                small(n)?;
                Ok(Input::from_digraph(catalog::directed_cycle(n)))
            }
            Generator::DirectedPath(n) => {
                small(n)?;
                Ok(Input::from_digraph(catalog::directed_path(n)))
            }
            Generator::Lev => Ok(Input::from_digraph(catalog::lev_digraph())),
            Generator::Diamond => Ok(Input::from_digraph(catalog::diamond())),
            Generator::PentagonWithApex => Ok(Input::from_digraph(catalog::pentagon_with_apex())),
            Generator::BidirectedHexagon => Ok(Input::from_digraph(catalog::bidirected_hexagon())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_columns() {
        assert_eq!(fields("0, 1,\t2"), vec![(1, "0"), (4, "1"), (7, "2")]);
        assert_eq!(fields("  inf 3"), vec![(3, "inf"), (7, "3")]);
    }

    #[test]
    fn two_point_space() {
        let Input::Integer { space, graph } = parse_matrix("0,1\n1,0", BackendChoice::Auto, 1e-9).unwrap() else {
            panic!("integer backend expected")
        };
        assert!(graph.is_none());
        assert_eq!(space.len(), 2);
        assert_eq!(space.d(0, 1), space.d(1, 0));
    }

    #[test]
    fn backend_detection() {
        assert_eq!(detect_backend("0,1/2\n1/2,0"), BackendChoice::Rational);
        assert_eq!(detect_backend("0,0.5\n1e-1,0"), BackendChoice::Float);
        assert_eq!(detect_backend("0,inf\n1,0"), BackendChoice::Integer);
        assert_eq!(detect_backend("# backend: float\n0,1\n1,0"), BackendChoice::Float);
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_matrix("0,1\n1,x", BackendChoice::Auto, 1e-9) {
            Err(CliError::Parse { line: 2, col: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_digraph("0 1\n\n2") {
            Err(CliError::Parse { line: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_points("0 0\n1", Metric::Euclidean), Err(CliError::Parse { line: 2, .. })));
    }

    #[test]
    fn axiom_violations_pass_through() {
        let err = parse_matrix("0,5,1\n1,0,1\n1,1,0", BackendChoice::Auto, 1e-9).unwrap_err();
        assert!(matches!(err, CliError::Core(Error::TriangleViolation { .. })), "{err}");
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn lev_edge_list() {
        let g = parse_digraph("0 1\n0 3\n1 2\n3 2\n2 0").unwrap();
        assert_eq!(g, catalog::lev_digraph());
        let g = parse_digraph("# isolated vertex at the end\nvertices 3\n0 1").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(parse_digraph(&print_digraph(&g)).unwrap(), g);
    }

    #[test]
    fn discontinuity_points_from_csv() {
        let text = "-2,0\n-2,1\n0,0\n0,1\n2,0\n2,1\n";
        let space = parse_points(text, Metric::Euclidean).unwrap();
        assert_eq!(space, catalog::discontinuity_space(0.0));
        assert!(space.coords().is_some());
    }

    #[test]
    fn integer_queries_promote_matrices_only() {
        let matrix = parse_matrix("0,1\n1,0", BackendChoice::Auto, 1e-9).unwrap();
        let promoted = matrix.accommodate(&[Literal::Value("0.5")]).unwrap();
        assert_eq!(promoted.backend(), Backend::Rational);
        let graph = Input::from_digraph(catalog::lev_digraph());
        let err = graph.clone().accommodate(&[Literal::Interval("{1/2}")]).unwrap_err();
        assert!(matches!(err, CliError::Core(Error::NonIntegerQueryOnDigraph)));
        assert_eq!(graph.accommodate(&[Literal::Interval("[1,2]")]).unwrap().backend(), Backend::Integer);
    }

    #[test]
    fn generators() {
        assert_eq!("circle-arc:30,200".parse::<Generator>().unwrap(), Generator::CircleArc { gap: 30.0, count: 200 });
        assert_eq!("grid:2x3".parse::<Generator>().unwrap(), Generator::Grid { rows: 2, cols: 3, spacing: 1.0 });
        assert!("grid:2by3".parse::<Generator>().is_err());
        assert!("circle".parse::<Generator>().is_err());
        assert_eq!(Generator::Cycle(5).build(Metric::Euclidean).unwrap().len(), 5);
        assert!(Generator::Lev.build(Metric::Euclidean).unwrap().graph().is_some());
    }
}
