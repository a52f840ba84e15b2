//! Command dispatch. Every command turns into a list of independent
//! queries that run on the worker pool; records come back in input order.

use std::io::Read as _;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use rhomotopy::lowdim::{sh0_classes, sh1_adjacency, Level};
use rhomotopy::minimal_model::nested_models;
use rhomotopy::scalar::{group_values, ValueGroup};
use rhomotopy::space::verify_homotopy_chain;
use rhomotopy::spectral::{
    achieved_levels, group_interval, levels_in_degree, mpss_page, mpss_page_ce, path_homology, persistent_sh,
    reachability_homology, sb, sb_within_sz, sz,
};
use rhomotopy::{
    jumping_points, minimal_model, Backend, Coefficients, Digraph, Error, ExtDist, Interval, JumpingOptions,
    LeftRay, QMetSpace, SHQuery, SHResult, Scalar, SearchOptions,
};
use serde_json::{json, Value};

use crate::args::{Cli, Command, Format, Formula, GlobalArgs, SourceArgs};
use crate::error::{CliError, Result};
use crate::input::{self, Input, Literal};
use crate::report::{scalar_json, CsvTable, ReportRecord};

/// Records of one run, an optional CSV rendering, and the number of failed
/// checks (only `verify` fails checks).
#[derive(Debug, Default)]
pub struct Output {
    pub records: Vec<ReportRecord>,
    pub table: Option<CsvTable>,
    pub failed: usize,
}

pub struct Context {
    pub coefficients: Option<Coefficients>,
    pub search: SearchOptions,
    pub tau: f64,
    pub timing: bool,
    pool: rayon::ThreadPool,
}

impl Context {
    pub fn new(options: &GlobalArgs) -> Result<Self> {
        if !(options.tau >= 0.0 && options.tau.is_finite()) {
            return Err(CliError::Usage("--tau must be a finite nonnegative number".into()));
        }
        if options.jobs == Some(0) {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs.unwrap_or(0))
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start worker threads: {e}")))?;
        Ok(Self {
            coefficients: options.coefficients()?,
            search: SearchOptions { budget: options.budget, seed: options.seed },
            tau: options.tau,
            timing: !options.no_timing,
            pool,
        })
    }

    fn jumping_options(&self, verify_plateaus: bool) -> JumpingOptions {
        JumpingOptions { search: self.search.clone(), tau: self.tau, verify_plateaus }
    }

    /// Runs `f` on every item in parallel, keeping the input order.
    fn map<I: Sync, R: Send>(&self, items: &[I], f: impl Fn(&I) -> Result<R> + Sync + Send) -> Result<Vec<R>> {
        self.pool.install(|| items.par_iter().map(f).collect())
    }

    /// Runs `f` and stamps the record it produces with the elapsed time.
    fn timed(&self, f: impl FnOnce() -> Result<ReportRecord>) -> Result<ReportRecord> {
        let start = Instant::now();
        let mut record = f()?;
        if self.timing {
            record.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
        }
        Ok(record)
    }
}

fn read_source(path: &Path) -> Result<String> {
    let io = |source| CliError::Io { path: path.to_path_buf(), source };
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(io)?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

/// Reads the one input named on the command line.
pub fn load(source: &SourceArgs, tau: f64) -> Result<Input> {
    let given = [source.matrix.is_some(), source.digraph.is_some(), source.points.is_some(), source.generate.is_some()];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(CliError::Usage("give exactly one of --matrix, --digraph, --points, --generate".into()));
    }
    let metric = source.metric.into();
    if let Some(path) = &source.matrix {
        return input::parse_matrix(&read_source(path)?, source.backend, tau);
    }
    let backend = if source.digraph.is_some() { Backend::Integer } else { Backend::Float };
    let declared = source.backend;
    if declared != input::BackendChoice::Auto && declared != backend.into() {
        return Err(CliError::Usage(format!("this input kind uses the {backend} backend")));
    }
    if let Some(path) = &source.digraph {
        return Ok(Input::from_digraph(input::parse_digraph(&read_source(path)?)?));
    }
    if let Some(path) = &source.points {
        return Ok(Input::Float(Arc::new(input::parse_points(&read_source(path)?, metric)?)));
    }
    let generator = source.generate.as_ref().expect("one source is present");
    let built = generator.build(metric)?;
    if declared != input::BackendChoice::Auto && declared != built.backend().into() {
        return Err(CliError::Usage(format!("this generator uses the {} backend", built.backend())));
    }
    Ok(built)
}

fn literals(command: &Command) -> Vec<Literal<'_>> {
    let mut out = Vec::new();
    match command {
        Command::MinimalModel { r } | Command::Persistence { r, .. } => out.push(Literal::Value(r)),
        Command::Magnitude { l, .. } => out.extend(l.iter().map(|v| Literal::Value(v))),
        Command::Spectral { r, interval, .. } => {
            out.push(Literal::Value(r));
            out.extend(interval.iter().map(|i| Literal::Interval(i)));
        }
        Command::Mpss { max_l: Some(l), .. } => out.push(Literal::Value(l)),
        Command::Verify { r, .. } => out.extend(r.iter().map(|v| Literal::Value(v))),
        _ => {}
    }
    out.retain(|lit| !matches!(lit, Literal::Value("inf")));
    out
}

/// Parses the command line's input and runs its command.
pub fn run(cli: &Cli) -> Result<Output> {
    let ctx = Context::new(&cli.options)?;
    if cli.options.format == Format::Csv && !matches!(cli.command, Command::Persistence { .. } | Command::Mpss { .. }) {
        return Err(CliError::Usage("CSV output is available for persistence and mpss".into()));
    }
    let input = load(&cli.source, ctx.tau)?.accommodate(&literals(&cli.command))?;
    execute(&cli.command, &input, &ctx)
}

pub fn execute(command: &Command, input: &Input, ctx: &Context) -> Result<Output> {
    match (command, input) {
        (Command::PathHomology { n }, _) => {
            let graph = input.graph().ok_or_else(|| CliError::Usage("path-homology needs a digraph input".into()))?;
            path_homology_cmd(graph, n, ctx)
        }
        (Command::Mpss { page, max_n, max_l, formula }, Input::Integer { space, .. }) => {
            mpss_cmd(space, page, *max_n, max_l.as_deref(), *formula, ctx)
        }
        (Command::Mpss { .. }, _) => Err(CliError::Usage("mpss needs an integer-valued input".into())),
        (_, Input::Integer { space, graph }) => run_generic(command, space, graph.as_ref(), ctx),
        (_, Input::Rational(space)) => run_generic(command, space, None, ctx),
        (_, Input::Float(space)) => run_generic(command, space, None, ctx),
    }
}

/// Backend hooks the commands need beyond [`Scalar`].
pub trait CliScalar: Scalar {
    /// For float spaces, the closed band of the achieved degree-`n` level
    /// that the singleton literal `v` denotes. Exact backends never snap.
    fn snap(_space: &QMetSpace<Self>, _literal: &str, _v: &Self, _n: usize, _tau: f64) -> Result<Option<Interval<Self>>> {
        Ok(None)
    }

    fn as_integer_space(_space: &Arc<QMetSpace<Self>>) -> Option<&Arc<QMetSpace<i64>>> {
        None
    }
}

impl CliScalar for i64 {
    fn as_integer_space(space: &Arc<QMetSpace<i64>>) -> Option<&Arc<QMetSpace<i64>>> {
        Some(space)
    }
}

impl CliScalar for BigRational {}

impl CliScalar for f64 {
    fn snap(space: &QMetSpace<f64>, literal: &str, v: &f64, n: usize, tau: f64) -> Result<Option<Interval<f64>>> {
        let window = rounding_window(literal).max(tau);
        let groups = group_values(achieved_levels(space, n, &(v + window + tau)), tau);
        let near = |g: &ValueGroup<f64>, w: f64| g.min - w <= *v && *v <= g.max + w;
        if let Some(g) = groups.iter().find(|g| near(g, tau)) {
            return Ok(Some(group_interval(g)));
        }
        let hits: Vec<&ValueGroup<f64>> = groups.iter().filter(|g| near(g, window)).collect();
        match hits.as_slice() {
            [] => Ok(None),
            [g] => Ok(Some(group_interval(g))),
            _ => Err(CliError::Usage(format!(
                "level {literal} rounds to {} distinct achieved levels; give more digits",
                hits.len()
            ))),
        }
    }
}

/// Half a unit in the last written digit of a decimal literal:
/// `0.5176` covers `±5e-5`.
fn rounding_window(literal: &str) -> f64 {
    let (mantissa, exponent) = match literal.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().unwrap_or(0)),
        None => (literal, 0),
    };
    let decimals = mantissa.split_once('.').map_or(0, |(_, f)| f.len() as i32);
    0.5 * 10f64.powi(exponent - decimals)
}

/// A parsed interval, snapped for float singletons. The second component
/// is true when snapping changed it.
fn resolve_interval<T: CliScalar>(space: &QMetSpace<T>, text: &str, n: usize, tau: f64) -> Result<(Interval<T>, bool)> {
    let interval = Interval::<T>::parse(text)?;
    let singleton = match (interval.right(), interval.left()) {
        (LeftRay::BelowEq(b), LeftRay::Below(a)) if a == b => Some(a.clone()),
        _ => None,
    };
    let Some(v) = singleton else { return Ok((interval, false)) };
    let literal = text.trim().trim_start_matches('{').trim_end_matches('}').trim();
    match T::snap(space, literal, &v, n, tau)? {
        Some(snapped) if snapped != interval => Ok((snapped, true)),
        _ => Ok((interval, false)),
    }
}

fn parse_value<T: Scalar>(text: &str, what: &str) -> Result<T> {
    T::parse_literal(text).ok_or_else(|| CliError::Usage(format!("{what} {text:?} is not a {} value", T::BACKEND)))
}

fn parse_radius<T: Scalar>(text: &str) -> Result<ExtDist<T>> {
    if text.trim() == "inf" {
        Ok(ExtDist::Infinite)
    } else {
        Ok(ExtDist::Finite(parse_value(text, "radius")?))
    }
}

fn ext_json<T: Scalar>(d: &ExtDist<T>) -> Value {
    match d {
        ExtDist::Finite(v) => scalar_json(v),
        ExtDist::Infinite => Value::from("inf"),
    }
}

fn torsion_json(torsion: &[BigInt]) -> Value {
    torsion.iter().map(|t| i64::try_from(t).map_or_else(|_| Value::from(t.to_string()), Value::from)).collect()
}

fn query_json<T: Scalar>(q: &SHQuery<T>, requested: Option<&str>) -> Value {
    let mut v = json!({
        "r": scalar_json(&q.r),
        "n": q.n,
        "interval": q.interval.to_string(),
        "coefficients": q.coefficients.to_string(),
        "degree_bound": q.degree_bound,
    });
    if let Some(text) = requested {
        v["requested_interval"] = Value::from(text);
    }
    v
}

fn sh_record<T: Scalar>(command: &str, result: &SHResult<T>, requested: Option<&str>) -> ReportRecord {
    let torsion = result.torsion.as_deref().map_or(Value::Null, torsion_json);
    ReportRecord::new(command, query_json(&result.query, requested), json!({ "rank": result.rank, "torsion": torsion }))
        .with_provenance(result.provenance)
}

fn one(record: ReportRecord) -> Output {
    Output { records: vec![record], ..Default::default() }
}

fn run_generic<T: CliScalar>(
    command: &Command,
    space: &Arc<QMetSpace<T>>,
    graph: Option<&Digraph>,
    ctx: &Context,
) -> Result<Output> {
    let name = command.name();
    match command {
        Command::Validate => Ok(one(ctx.timed(|| Ok(validate(space, graph, ctx.tau)))?)),
        Command::MinimalModel { r } => {
            let radius = parse_radius::<T>(r)?;
            Ok(one(ctx.timed(|| {
                let m = minimal_model(space, &radius, &ctx.search)?;
                Ok(ReportRecord::new(
                    name,
                    json!({ "r": ext_json(&radius) }),
                    json!({
                        "subset": m.subset,
                        "size": m.len(),
                        "retraction": m.retraction.images(),
                        "certificate_length": m.certificate.len(),
                        "certificate_valid": verify_homotopy_chain(&m.certificate)?,
                    }),
                ))
            })?))
        }
        Command::JumpingPoints { verify_plateaus } => Ok(one(ctx.timed(|| {
            let j = jumping_points(space, &ctx.jumping_options(*verify_plateaus))?;
            let merged: Vec<Value> = j
                .merged_groups
                .iter()
                .map(|g| json!({ "min": scalar_json(&g.min), "max": scalar_json(&g.max), "count": g.count }))
                .collect();
            Ok(ReportRecord::new(
                name,
                json!({ "tau": ctx.tau, "verify_plateaus": verify_plateaus }),
                json!({
                    "points": j.points.iter().map(scalar_json).collect::<Vec<_>>(),
                    "model_sizes": j.model_sizes,
                    "ratios": j.ratios,
                    "merged_groups": merged,
                }),
            ))
        })?)),
        Command::NestedModels => Ok(one(ctx.timed(|| {
            let models = nested_models(space, &ctx.jumping_options(false))?;
            let listed: Vec<Value> = models
                .iter()
                .map(|m| {
                    json!({
                        "r": ext_json(m.certificate.radius()),
                        "subset": m.subset,
                        "size": m.len(),
                        "certificate_length": m.certificate.len(),
                    })
                })
                .collect();
            Ok(ReportRecord::new(name, json!({ "tau": ctx.tau }), json!({ "models": listed })))
        })?)),
        Command::Magnitude { n, l } => {
            let coefficients = ctx.coefficients.unwrap_or(Coefficients::Integers);
            let mut items = Vec::new();
            for &n in n {
                if l.is_empty() {
                    for g in group_values(levels_in_degree(space, n), ctx.tau) {
                        items.push((n, group_interval(&g), None));
                    }
                } else {
                    for v in l {
                        let text = format!("{{{v}}}");
                        let (interval, snapped) = resolve_interval(space, &text, n, ctx.tau)?;
                        items.push((n, interval, snapped.then_some(text)));
                    }
                }
            }
            let records = ctx.map(&items, |(n, interval, requested)| {
                ctx.timed(|| {
                    let q = SHQuery::new(T::zero(), *n, interval.clone()).with_coefficients(coefficients);
                    Ok(sh_record(name, &rhomotopy::sh(space, &q)?, requested.as_deref()))
                })
            })?;
            Ok(Output { records, ..Default::default() })
        }
        Command::Reachability { n, degree_bound } => {
            let records = ctx.map(n, |&n| {
                ctx.timed(|| {
                    let h = reachability_homology(space, n, *degree_bound)?;
                    Ok(ReportRecord::new(
                        name,
                        json!({ "n": n, "degree_bound": degree_bound }),
                        json!({ "rank": h.rank, "torsion": torsion_json(&h.torsion) }),
                    )
                    .with_provenance(rhomotopy::Provenance::PlainHomology))
                })
            })?;
            Ok(Output { records, ..Default::default() })
        }
        Command::Spectral { r, n, interval, degree_bound } => {
            let r: T = parse_value(r, "radius")?;
            let coefficients = ctx.coefficients.unwrap_or_default();
            let mut items = Vec::new();
            for &n in n {
                for text in interval {
                    let (resolved, snapped) = resolve_interval(space, text, n, ctx.tau)?;
                    items.push((n, resolved, snapped.then_some(text.as_str())));
                }
            }
            let records = ctx.map(&items, |(n, interval, requested)| {
                ctx.timed(|| {
                    let mut q = SHQuery::new(r.clone(), *n, interval.clone()).with_coefficients(coefficients);
                    if let Some(bound) = degree_bound {
                        q = q.with_degree_bound(*bound);
                    }
                    Ok(sh_record(name, &rhomotopy::sh(space, &q)?, *requested))
                })
            })?;
            Ok(Output { records, ..Default::default() })
        }
        Command::Persistence { r, n } => {
            let r: T = parse_value(r, "radius")?;
            let coefficients = ctx.coefficients.unwrap_or_default();
            let diagrams = ctx.map(n, |&n| {
                let start = Instant::now();
                Ok((persistent_sh(space, r.clone(), n, coefficients)?, start.elapsed()))
            })?;
            let mut table = CsvTable::new(&["n", "r", "birth", "death"]);
            let mut records = Vec::new();
            for (d, elapsed) in &diagrams {
                let bars: Vec<Value> = d
                    .bars
                    .iter()
                    .map(|b| json!({ "birth": scalar_json(&b.birth), "death": b.death.as_ref().map(scalar_json) }))
                    .collect();
                for b in &d.bars {
                    table.rows.push(vec![
                        d.degree.to_string(),
                        input::format_scalar(&d.radius),
                        input::format_scalar(&b.birth),
                        b.death.as_ref().map_or_else(|| "inf".to_string(), input::format_scalar),
                    ]);
                }
                let mut record = ReportRecord::new(
                    name,
                    json!({ "r": scalar_json(&r), "n": d.degree, "coefficients": coefficients.to_string() }),
                    json!({ "axis": d.axis.iter().map(scalar_json).collect::<Vec<_>>(), "bars": bars }),
                )
                .with_provenance(rhomotopy::Provenance::ImageFormula);
                if ctx.timing {
                    record.wall_time_ms = Some(elapsed.as_secs_f64() * 1e3);
                }
                records.push(record);
            }
            Ok(Output { records, table: Some(table), failed: 0 })
        }
        Command::Verify { r, max_n, max_page } => verify(space, r, *max_n, *max_page, ctx),
        Command::PathHomology { .. } | Command::Mpss { .. } => unreachable!("dispatched before the generic commands"),
    }
}

fn validate<T: Scalar>(space: &QMetSpace<T>, graph: Option<&Digraph>, tau: f64) -> ReportRecord {
    let n = space.len();
    let pairs = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|(x, y)| x != y);
    let finite_pairs = pairs.clone().filter(|&(x, y)| space.d(x, y).is_finite()).count();
    let symmetric = pairs.clone().all(|(x, y)| space.d(x, y) == space.d(y, x));
    let groups = space.distance_values(tau);
    let mut result = json!({
        "points": n,
        "backend": T::BACKEND.to_string(),
        "symmetric": symmetric,
        "finite_pairs": finite_pairs,
        "infinite_pairs": n * n.saturating_sub(1) - finite_pairs,
        "diameter": space.max_finite_distance().as_ref().map(scalar_json),
        "distinct_distances": groups.len(),
        "merged_groups": groups.iter().filter(|g| g.merged()).count(),
    });
    if let Some(g) = graph {
        result["arrows"] = Value::from(g.arrows().len());
    }
    ReportRecord::new("validate", json!({ "tau": tau }), result)
}

fn path_homology_cmd(graph: &Digraph, ns: &[usize], ctx: &Context) -> Result<Output> {
    let records = ctx.map(ns, |&n| {
        ctx.timed(|| {
            Ok(ReportRecord::new("path-homology", json!({ "n": n }), json!({ "rank": path_homology(graph, n)? }))
                .with_provenance(rhomotopy::Provenance::ImageFormula))
        })
    })?;
    Ok(Output { records, ..Default::default() })
}

fn integer_level(text: &str) -> Result<i64> {
    match text.trim().parse::<i64>() {
        Ok(v) => Ok(v),
        Err(_) if Literal::Value(text).fits::<BigRational>() => Err(Error::NonIntegerQueryOnDigraph.into()),
        Err(_) => Err(CliError::Usage(format!("level {text:?} is not an integer"))),
    }
}

fn mpss_cmd(
    space: &Arc<QMetSpace<i64>>,
    pages: &[usize],
    max_n: usize,
    max_l: Option<&str>,
    formula: Formula,
    ctx: &Context,
) -> Result<Output> {
    let max_l = match max_l {
        Some(text) => integer_level(text)?,
        None => space.max_finite_distance().unwrap_or(0) * max_n.max(1) as i64,
    };
    let cells: Vec<(usize, usize, i64)> = pages
        .iter()
        .flat_map(|&s| (0..=max_n).flat_map(move |n| (0..=max_l).map(move |l| (s, n, l))))
        .collect();
    let start = Instant::now();
    let ranks = ctx.map(&cells, |&(s, n, l)| match formula {
        Formula::Image => Ok(mpss_page(space, s, n, l)?),
        Formula::Ce => Ok(mpss_page_ce(space, s, n, l)?),
    })?;
    let provenance = match formula {
        Formula::Image => rhomotopy::Provenance::ImageFormula,
        Formula::Ce => rhomotopy::Provenance::CePageFormula,
    };
    let mut table = CsvTable::new(&["page", "l", "n", "rank"]);
    let mut records = Vec::new();
    for &s in pages {
        let entries: Vec<Value> = cells
            .iter()
            .zip(&ranks)
            .filter(|&(&(page, _, _), &rank)| page == s && rank > 0)
            .map(|(&(_, n, l), &rank)| {
                table.rows.push(vec![s.to_string(), l.to_string(), n.to_string(), rank.to_string()]);
                json!({ "l": l, "n": n, "rank": rank })
            })
            .collect();
        let mut record =
            ReportRecord::new("mpss", json!({ "page": s, "max_n": max_n, "max_l": max_l }), json!({ "entries": entries }))
                .with_provenance(provenance);
        if ctx.timing {
            record.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
        }
        records.push(record);
    }
    Ok(Output { records, table: Some(table), failed: 0 })
}

/// One cross-check of `verify`.
enum Check<T> {
    /// `sh = sz - sb` and `SB ⊆ SZ`.
    Split { r: T, n: usize, interval: Interval<T> },
    /// Degree-zero classes against the chain computation.
    Classes { r: T, interval: Interval<T> },
    /// Degree-one adjacency classes against the chain computation.
    Adjacency { r: T, level: Level<T> },
    /// The same query on the space and on its r-minimal model.
    Model { r: T, n: usize, interval: Interval<T>, model: Arc<QMetSpace<T>> },
    /// Barcode rank against a direct query on the ray.
    Barcode { r: T, n: usize, at: T, expected: usize },
    /// Image formula against the Cartan–Eilenberg formula.
    Page { s: usize, n: usize, l: i64 },
}

struct Outcome {
    suite: &'static str,
    query: Value,
    expected: Value,
    observed: Value,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.expected == self.observed
    }
}

fn evaluate<T: CliScalar>(check: &Check<T>, space: &Arc<QMetSpace<T>>, coefficients: Coefficients) -> Result<Outcome> {
    let query = |r: &T, n: usize, interval: &Interval<T>| {
        SHQuery::new(r.clone(), n, interval.clone()).with_coefficients(coefficients)
    };
    Ok(match check {
        Check::Split { r, n, interval } => {
            let q = query(r, *n, interval);
            let rank = rhomotopy::sh(space, &q)?.rank;
            let (z, b) = (sz(space, &q)?, sb(space, &q)?);
            Outcome {
                suite: "dual-path",
                query: json!({ "check": "sz-minus-sb", "r": scalar_json(r), "n": n, "interval": interval.to_string() }),
                expected: json!({ "rank": rank, "sb_within_sz": true }),
                observed: json!({ "rank": z as i64 - b as i64, "sb_within_sz": sb_within_sz(space, &q)? }),
            }
        }
        Check::Classes { r, interval } => Outcome {
            suite: "oracle",
            query: json!({ "check": "degree-zero-classes", "r": scalar_json(r), "n": 0, "interval": interval.to_string() }),
            expected: json!(rhomotopy::sh(space, &query(r, 0, interval))?.rank),
            observed: json!(sh0_classes(space, r, interval)),
        },
        Check::Adjacency { r, level } => Outcome {
            suite: "oracle",
            query: json!({ "check": "degree-one-adjacency", "r": scalar_json(r), "n": 1, "interval": level.interval().to_string() }),
            expected: json!(rhomotopy::sh(space, &query(r, 1, &level.interval()))?.rank),
            observed: json!(sh1_adjacency(space, level, r)?),
        },
        Check::Model { r, n, interval, model } => Outcome {
            suite: "invariance",
            query: json!({ "check": "minimal-model", "r": scalar_json(r), "n": n, "interval": interval.to_string() }),
            expected: json!(rhomotopy::sh(space, &query(r, *n, interval))?.rank),
            observed: json!(rhomotopy::sh(model, &query(r, *n, interval))?.rank),
        },
        Check::Barcode { r, n, at, expected } => Outcome {
            suite: "dual-path",
            query: json!({ "check": "barcode", "r": scalar_json(r), "n": n, "l": scalar_json(at) }),
            expected: json!(expected),
            observed: json!(rhomotopy::sh(space, &query(r, *n, &Interval::left_closed_ray(at.clone())))?.rank),
        },
        Check::Page { s, n, l } => {
            let space = T::as_integer_space(space).expect("pages are only scheduled for integer spaces");
            Outcome {
                suite: "dual-path",
                query: json!({ "check": "page-formulas", "page": s, "n": n, "l": l }),
                expected: json!(mpss_page(space, *s, *n, *l)?),
                observed: json!(mpss_page_ce(space, *s, *n, *l)?),
            }
        }
    })
}

fn verify<T: CliScalar>(
    space: &Arc<QMetSpace<T>>,
    radii: &[String],
    max_n: usize,
    max_page: usize,
    ctx: &Context,
) -> Result<Output> {
    let coefficients = match ctx.coefficients {
        Some(Coefficients::Prime(p)) => Coefficients::Prime(p),
        _ => Coefficients::Rationals,
    };
    let radii: Vec<T> = if radii.is_empty() {
        let points = jumping_points(space, &ctx.jumping_options(false))?.points;
        if points.is_empty() { vec![T::zero()] } else { points }
    } else {
        radii.iter().map(|r| parse_value(r, "radius")).collect::<Result<_>>()?
    };
    let groups: Vec<Vec<ValueGroup<T>>> =
        (0..=max_n.max(1)).map(|n| group_values(levels_in_degree(space, n), ctx.tau)).collect();

    let mut records = Vec::new();
    let mut failed = 0;
    let mut checks = Vec::new();
    for r in &radii {
        let model = minimal_model(space, &ExtDist::Finite(r.clone()), &ctx.search)?;
        let valid = verify_homotopy_chain(&model.certificate)?;
        failed += usize::from(!valid);
        records.push(ReportRecord::new(
            "verify",
            json!({ "suite": "invariance", "check": "certificate", "r": scalar_json(r) }),
            json!({ "expected": true, "observed": valid, "pass": valid }),
        ));
        let shrinks = model.len() < space.len();
        for (n, levels) in groups.iter().enumerate().take(max_n + 1) {
            for g in levels {
                let interval = group_interval(g);
                checks.push(Check::Split { r: r.clone(), n, interval: interval.clone() });
                if shrinks {
                    checks.push(Check::Model { r: r.clone(), n, interval, model: model.model.clone() });
                }
            }
        }
        checks.push(Check::Classes { r: r.clone(), interval: Interval::singleton(T::zero()) });
        for g in &groups[1] {
            checks.push(Check::Classes { r: r.clone(), interval: Interval::left_closed_ray(g.max.clone()) });
            if max_n >= 1 && g.min.cmp_value(r).is_gt() {
                checks.push(Check::Adjacency { r: r.clone(), level: Level::band(g.min.clone(), g.max.clone()) });
            }
        }
        for n in 0..=max_n {
            let diagram = persistent_sh(space, r.clone(), n, coefficients)?;
            for at in &diagram.axis {
                checks.push(Check::Barcode { r: r.clone(), n, at: at.clone(), expected: diagram.rank_at(at) });
            }
        }
    }
    if let Some(int_space) = T::as_integer_space(space) {
        let max_l = int_space.max_finite_distance().unwrap_or(0) * max_n.max(1) as i64;
        for s in 1..=max_page {
            for n in 0..=max_n {
                for l in 0..=max_l {
                    checks.push(Check::Page { s, n, l });
                }
            }
        }
    }
    let outcomes = ctx.map(&checks, |c| evaluate(c, space, coefficients))?;
    for o in &outcomes {
        let pass = o.passed();
        failed += usize::from(!pass);
        let mut query = o.query.clone();
        query["suite"] = Value::from(o.suite);
        records.push(ReportRecord::new(
            "verify",
            query,
            json!({ "expected": o.expected, "observed": o.observed, "pass": pass }),
        ));
    }
    let total = records.len();
    records.push(ReportRecord::new(
        "verify",
        json!({ "summary": true, "radii": radii.iter().map(scalar_json).collect::<Vec<_>>(), "max_n": max_n }),
        json!({ "checks": total, "failed": failed, "pass": failed == 0 }),
    ));
    Ok(Output { records, table: None, failed })
}
