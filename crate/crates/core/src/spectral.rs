//! Spectral homology `SH^r_{n,I}`, its cycle and boundary parts, and the
//! invariants it specializes to: magnitude, blurred magnitude, reachability
//! and path homology, and the pages of the magnitude-path spectral sequence.
//!
//! `SH^r_{n,I}` is computed as the image of `H_n(C_{I_r}) → H_n(C_{I^r})`.
//! Pages are computed a second time from the Cartan–Eilenberg subquotient
//! description so the two formulas can be compared.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::complex::{enumerate_tuples, inclusion_matrix, TruncatedComplex};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::homology::{homology, image_rank_in, Coefficients, FieldVisitor, HomologyGroup};
use crate::interval::{Interval, LeftRay};
use crate::linalg::{kernel_basis, Field, Insertion, ReducedSpan, SparseVec};
use crate::minimal_model::{jumping_points, JumpingOptions};
use crate::scalar::{Scalar, ValueGroup};
use crate::space::{same_space, QMetSpace, ShortMap};

/// One spectral-homology query.
#[derive(Clone, Debug, PartialEq)]
pub struct SHQuery<T> {
    pub r: T,
    pub n: usize,
    pub interval: Interval<T>,
    pub coefficients: Coefficients,
    /// Highest degree that may be materialized. Needed when the expanded
    /// interval is unbounded above.
    pub degree_bound: Option<usize>,
}

impl<T: Scalar> SHQuery<T> {
    pub fn new(r: T, n: usize, interval: Interval<T>) -> Self {
        Self { r, n, interval, coefficients: Coefficients::Rationals, degree_bound: None }
    }

    pub fn with_coefficients(mut self, coefficients: Coefficients) -> Self {
        self.coefficients = coefficients;
        self
    }

    pub fn with_degree_bound(mut self, bound: usize) -> Self {
        self.degree_bound = Some(bound);
        self
    }

    pub fn lower(&self) -> Interval<T> {
        self.interval.lower_expand(&self.r)
    }

    pub fn upper(&self) -> Interval<T> {
        self.interval.upper_expand(&self.r)
    }

    fn validate(&self) -> Result<()> {
        if self.r.is_negative() {
            return Err(Error::PreconditionViolated(format!("negative radius {}", self.r)));
        }
        let needed = self.n + 1;
        match self.degree_bound {
            Some(bound) if bound < needed => Err(Error::DegreeBoundRequired),
            None if !self.upper().is_bounded_above() => Err(Error::DegreeBoundRequired),
            _ => Ok(()),
        }
    }

    fn is_plain(&self) -> bool {
        self.r.cmp_value(&T::zero()).is_eq()
    }
}

impl<T: Scalar> fmt::Display for SHQuery<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SH^{}_{{{},{}}} over {}", self.r, self.n, self.interval, self.coefficients)
    }
}

/// Which computation produced a number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// `H_n(C_I)` directly (radius zero).
    PlainHomology,
    /// Image of `H_n(C_{I_r}) → H_n(C_{I^r})`.
    ImageFormula,
    /// Cartan–Eilenberg `Z^s / B^s`.
    CePageFormula,
    /// Equivalence classes and adjacent pairs in degrees 0 and 1.
    LowdimOracle,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::PlainHomology => "plain-homology",
            Provenance::ImageFormula => "image-formula",
            Provenance::CePageFormula => "ce-page-formula",
            Provenance::LowdimOracle => "lowdim-oracle",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SHResult<T> {
    pub query: SHQuery<T>,
    pub rank: usize,
    /// Present only when the query is plain homology over the integers.
    pub torsion: Option<Vec<BigInt>>,
    pub provenance: Provenance,
}

struct ImageRankVisitor<'a, T> {
    f: &'a crate::linalg::SparseMatrix,
    from: &'a TruncatedComplex<T>,
    to: &'a TruncatedComplex<T>,
    n: usize,
}

impl<T: Scalar> FieldVisitor for ImageRankVisitor<'_, T> {
    type Output = Result<usize>;
    fn visit<F: Field>(self, field: F) -> Result<usize> {
        image_rank_in(&field, self.f, self.from, self.to, self.n)
    }
}

/// Rank of `H_n(C_I) → H_n(C_J)` for `I ≼ J`. The source is needed up to
/// degree `n`, the target up to `n + 1`.
fn interval_image_rank<T: Scalar>(
    space: &Arc<QMetSpace<T>>,
    from: &Interval<T>,
    to: &Interval<T>,
    n: usize,
    coefficients: Coefficients,
) -> Result<usize> {
    if coefficients == Coefficients::Integers {
        return Err(Error::UnsupportedCoefficients("Z (use radius 0 for integral homology)".into()));
    }
    let lower = TruncatedComplex::new(space, from.clone(), n);
    let upper = TruncatedComplex::new(space, to.clone(), n + 1);
    let f = inclusion_matrix(&lower, &upper, n)?;
    coefficients.with_field(ImageRankVisitor { f: &f, from: &lower, to: &upper, n })?
}

/// `SH^r_{n,I}(X)`.
pub fn sh<T: Scalar>(space: &Arc<QMetSpace<T>>, query: &SHQuery<T>) -> Result<SHResult<T>> {
    query.validate()?;
    if query.is_plain() {
        let c = TruncatedComplex::new(space, query.interval.clone(), query.n + 1);
        let h = homology(&c, query.n, query.coefficients)?;
        let torsion = (query.coefficients == Coefficients::Integers).then_some(h.torsion);
        return Ok(SHResult {
            query: query.clone(),
            rank: h.rank,
            torsion,
            provenance: Provenance::PlainHomology,
        });
    }
    let rank = interval_image_rank(space, &query.lower(), &query.upper(), query.n, query.coefficients)?;
    Ok(SHResult { query: query.clone(), rank, torsion: None, provenance: Provenance::ImageFormula })
}

/// Rank of `SZ^r_{n,I} = Im(H_n(C_{I_r}) → H_n(C_I))`.
pub fn sz<T: Scalar>(space: &Arc<QMetSpace<T>>, query: &SHQuery<T>) -> Result<usize> {
    query.validate()?;
    interval_image_rank(space, &query.lower(), &query.interval, query.n, field_coefficients(query))
}

/// Rank of `SB^r_{n,I} = Ker(H_n(C_I) → H_n(C_{I^r}))`.
pub fn sb<T: Scalar>(space: &Arc<QMetSpace<T>>, query: &SHQuery<T>) -> Result<usize> {
    query.validate()?;
    let coefficients = field_coefficients(query);
    let c = TruncatedComplex::new(space, query.interval.clone(), query.n + 1);
    let betti = homology(&c, query.n, coefficients)?.rank;
    let image = interval_image_rank(space, &query.interval, &query.upper(), query.n, coefficients)?;
    Ok(betti - image)
}

fn field_coefficients<T>(query: &SHQuery<T>) -> Coefficients {
    match query.coefficients {
        Coefficients::Integers => Coefficients::Rationals,
        other => other,
    }
}

struct Inclusion<'a, T> {
    space: &'a Arc<QMetSpace<T>>,
    query: &'a SHQuery<T>,
}

impl<T: Scalar> FieldVisitor for Inclusion<'_, T> {
    type Output = Result<bool>;
    fn visit<F: Field>(self, field: F) -> Result<bool> {
        sb_within_sz_in(&field, self.space, self.query)
    }
}

/// Checks `SB^r_{n,I} ⊆ SZ^r_{n,I}` as subspaces of `H_n(C_I)`.
pub fn sb_within_sz<T: Scalar>(space: &Arc<QMetSpace<T>>, query: &SHQuery<T>) -> Result<bool> {
    query.validate()?;
    field_coefficients(query).with_field(Inclusion { space, query })?
}

fn sb_within_sz_in<F: Field, T: Scalar>(
    field: &F,
    space: &Arc<QMetSpace<T>>,
    query: &SHQuery<T>,
) -> Result<bool> {
    let n = query.n;
    let lower = TruncatedComplex::new(space, query.lower(), n);
    let mid = TruncatedComplex::new(space, query.interval.clone(), n + 1);
    let upper = TruncatedComplex::new(space, query.upper(), n + 1);

    // SZ + B(C_I) inside C_I
    let mut sz_span = ReducedSpan::new(field.clone());
    let mid_boundary = mid.boundary(n + 1)?;
    for j in 0..mid_boundary.ncols() {
        sz_span.insert_ambient(mid_boundary.column_in(field, j));
    }
    let into_mid = inclusion_matrix(&lower, &mid, n)?;
    for z in kernel_basis(field, lower.boundary(n)?) {
        sz_span.insert_ambient(into_mid.apply(field, &z));
    }

    // cycles of C_I that become boundaries in C_{I^r}
    let mid_cycles = kernel_basis(field, mid.boundary(n)?);
    let into_upper = inclusion_matrix(&mid, &upper, n)?;
    let mut killed = ReducedSpan::new(field.clone());
    let upper_boundary = upper.boundary(n + 1)?;
    for j in 0..upper_boundary.ncols() {
        killed.insert_ambient(upper_boundary.column_in(field, j));
    }
    for z in &mid_cycles {
        if let Insertion::Dependent(relation) = killed.insert_generator(into_upper.apply(field, z)) {
            let mut vector: SparseVec<F::Elem> = Vec::new();
            for (g, c) in &relation {
                vector = crate::linalg::reduce::axpy(field, &vector, &field.neg(c), &mid_cycles[*g]);
            }
            if !sz_span.contains(vector) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `MH_{n,ℓ}(X) = H_n(C_{{ℓ}})` over the integers.
pub fn magnitude_homology<T: Scalar>(space: &Arc<QMetSpace<T>>, n: usize, l: T) -> Result<HomologyGroup> {
    let c = TruncatedComplex::new(space, Interval::singleton(l), n + 1);
    homology(&c, n, Coefficients::Integers)
}

/// `H_n(F_ℓ RC(X))`, the blurred magnitude homology at `ℓ`.
pub fn blurred_magnitude_homology<T: Scalar>(
    space: &Arc<QMetSpace<T>>,
    n: usize,
    l: T,
    coefficients: Coefficients,
) -> Result<HomologyGroup> {
    let c = TruncatedComplex::new(space, Interval::left_closed_ray(l), n + 1);
    homology(&c, n, coefficients)
}

/// Homology of the whole reachability complex. Computed with radius zero
/// and cross-checked against the radius-one query, which must agree.
pub fn reachability_homology<T: Scalar>(
    space: &Arc<QMetSpace<T>>,
    n: usize,
    degree_bound: usize,
) -> Result<HomologyGroup> {
    if degree_bound < n + 1 {
        return Err(Error::DegreeBoundRequired);
    }
    let plain = sh(
        space,
        &SHQuery::new(T::zero(), n, Interval::full())
            .with_coefficients(Coefficients::Integers)
            .with_degree_bound(degree_bound),
    )?;
    let blurred = sh(space, &SHQuery::new(T::from_i64(1), n, Interval::full()).with_degree_bound(degree_bound))?;
    if blurred.rank != plain.rank {
        return Err(Error::PreconditionViolated(format!(
            "reachability rank differs between radius 0 ({}) and radius 1 ({})",
            plain.rank, blurred.rank
        )));
    }
    Ok(HomologyGroup { rank: plain.rank, torsion: plain.torsion.unwrap_or_default() })
}

/// A bar `[birth, death)`; `death = None` means it never dies.
#[derive(Clone, Debug, PartialEq)]
pub struct Bar<T> {
    pub birth: T,
    pub death: Option<T>,
}

impl<T: Scalar> Bar<T> {
    pub fn contains(&self, l: &T) -> bool {
        self.birth.cmp_value(l).is_le() && self.death.as_ref().is_none_or(|d| l.cmp_value(d).is_lt())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PersistenceDiagram<T> {
    pub degree: usize,
    pub radius: T,
    /// Values at which the module was evaluated, increasing.
    pub axis: Vec<T>,
    /// `ranks[i][j]` is the rank of the structure map from `axis[i]` to
    /// `axis[j]`, for `i <= j`.
    pub ranks: Vec<Vec<usize>>,
    pub bars: Vec<Bar<T>>,
}

impl<T: Scalar> PersistenceDiagram<T> {
    /// Rank of the module at `ℓ`, read from the bars.
    pub fn rank_at(&self, l: &T) -> usize {
        self.bars.iter().filter(|b| b.contains(l)).count()
    }
}

fn distinct_sorted<T: Scalar>(mut values: Vec<T>) -> Vec<T> {
    values.sort_by(|a, b| a.cmp_value(b));
    values.dedup_by(|a, b| a.cmp_value(b).is_eq());
    values
}

/// Distinct levels of degree-`n` tuples.
pub fn levels_in_degree<T: Scalar>(space: &QMetSpace<T>, n: usize) -> Vec<T> {
    distinct_sorted(enumerate_tuples(space, n, &Interval::full()).into_iter().map(|t| t.level).collect())
}

struct Persistence<'a, T> {
    space: &'a Arc<QMetSpace<T>>,
    r: &'a T,
    n: usize,
}

impl<T: Scalar> FieldVisitor for Persistence<'_, T> {
    type Output = Result<PersistenceDiagram<T>>;
    fn visit<F: Field>(self, field: F) -> Result<PersistenceDiagram<T>> {
        persistence_in(&field, self.space, self.r, self.n)
    }
}

/// `ℓ ↦ SH^r_{n,(-∞,ℓ]}(X)` evaluated on the values where it can change,
/// decomposed into bars.
pub fn persistent_sh<T: Scalar>(
    space: &Arc<QMetSpace<T>>,
    r: T,
    n: usize,
    coefficients: Coefficients,
) -> Result<PersistenceDiagram<T>> {
    if r.is_negative() {
        return Err(Error::PreconditionViolated(format!("negative radius {r}")));
    }
    let coefficients = match coefficients {
        Coefficients::Integers => Coefficients::Rationals,
        other => other,
    };
    coefficients.with_field(Persistence { space, r: &r, n })?
}

fn persistence_in<F: Field, T: Scalar>(
    field: &F,
    space: &Arc<QMetSpace<T>>,
    r: &T,
    n: usize,
) -> Result<PersistenceDiagram<T>> {
    let mut levels = levels_in_degree(space, n);
    levels.extend(levels_in_degree(space, n + 1));
    let levels = distinct_sorted(levels);
    let mut axis: Vec<T> = levels.clone();
    axis.extend(levels.iter().map(|l| l.clone() - r.clone()).filter(|v| !v.is_negative()));
    let mut axis = distinct_sorted(axis);
    let top = axis.last().cloned().unwrap_or_else(T::zero);
    axis.push(top.clone() + T::from_i64(1));
    let k = axis.len();

    let ceiling = axis[k - 1].clone() + r.clone();
    let whole = TruncatedComplex::new(space, Interval::left_closed_ray(ceiling), n + 1);
    let degree_n = whole.basis(n)?;
    let degree_up = whole.basis(n + 1)?;

    // cycles with the level at which they appear
    let mut order: Vec<usize> = (0..degree_n.len()).collect();
    order.sort_by(|&a, &b| degree_n.level(a).cmp_value(degree_n.level(b)));
    let outgoing = whole.boundary(n)?;
    let mut kernel_span = ReducedSpan::new(field.clone());
    let mut cycles: Vec<(T, SparseVec<F::Elem>)> = Vec::new();
    for &j in &order {
        if let Insertion::Dependent(rel) = kernel_span.insert_generator(outgoing.column_in(field, j)) {
            let vector = sorted_sparse(rel.into_iter().map(|(g, c)| (order[g], c)).collect());
            cycles.push((degree_n.level(j).clone(), vector));
        }
    }

    let mut boundary_order: Vec<usize> = (0..degree_up.len()).collect();
    boundary_order.sort_by(|&a, &b| degree_up.level(a).cmp_value(degree_up.level(b)));
    let incoming = whole.boundary(n + 1)?;

    let boundary_rank_upto = |span: &mut ReducedSpan<F>, cursor: &mut usize, bound: &T| {
        while *cursor < boundary_order.len()
            && degree_up.level(boundary_order[*cursor]).cmp_value(bound).is_le()
        {
            span.insert_ambient(incoming.column_in(field, boundary_order[*cursor]));
            *cursor += 1;
        }
    };

    let mut b_ranks = Vec::with_capacity(k);
    {
        let mut span = ReducedSpan::new(field.clone());
        let mut cursor = 0;
        for a in &axis {
            boundary_rank_upto(&mut span, &mut cursor, &(a.clone() + r.clone()));
            b_ranks.push(span.rank());
        }
    }

    let mut ranks = vec![vec![0; k]; k];
    for i in 0..k {
        let mut span = ReducedSpan::new(field.clone());
        for (birth, z) in &cycles {
            if birth.cmp_value(&axis[i]).is_le() {
                span.insert_ambient(z.clone());
            }
        }
        let mut cursor = 0;
        for j in i..k {
            boundary_rank_upto(&mut span, &mut cursor, &(axis[j].clone() + r.clone()));
            ranks[i][j] = span.rank() - b_ranks[j];
        }
    }

    let at = |i: isize, j: usize| -> i64 {
        if i < 0 || j >= k { 0 } else { ranks[i as usize][j] as i64 }
    };
    let mut bars = Vec::new();
    for i in 0..k {
        for j in i..k {
            let ii = i as isize;
            let mult = at(ii, j) - at(ii - 1, j) - at(ii, j + 1) + at(ii - 1, j + 1);
            assert!(mult >= 0, "rank function is not a persistence module");
            let death = (j + 1 < k).then(|| axis[j + 1].clone());
            for _ in 0..mult {
                bars.push(Bar { birth: axis[i].clone(), death: death.clone() });
            }
        }
    }
    Ok(PersistenceDiagram { degree: n, radius: r.clone(), axis, ranks, bars })
}

fn sorted_sparse<E>(mut v: Vec<(usize, E)>) -> Vec<(usize, E)> {
    v.sort_by_key(|(i, _)| *i);
    v
}

/// Ranks of one page of the magnitude-path spectral sequence, keyed by
/// `(ℓ, n)`; zero entries are omitted.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PageTable {
    pub page: usize,
    pub entries: BTreeMap<(i64, usize), usize>,
}

impl PageTable {
    pub fn get(&self, l: i64, n: usize) -> usize {
        self.entries.get(&(l, n)).copied().unwrap_or(0)
    }
}

/// `rank E^s_{ℓ, n-ℓ} = rank SH^{s-1}_{n,{ℓ}}` over `ℚ`.
pub fn mpss_page(space: &Arc<QMetSpace<i64>>, s: usize, n: usize, l: i64) -> Result<usize> {
    if s == 0 {
        return Err(Error::PreconditionViolated("pages start at 1".into()));
    }
    if l < 0 {
        return Ok(0);
    }
    Ok(sh(space, &SHQuery::new(s as i64 - 1, n, Interval::singleton(l)))?.rank)
}

/// The same page rank from `Z^s = Im(H_n(F_ℓ/F_{ℓ-s}) → H_n(F_ℓ/F_{ℓ-1}))`
/// and `B^s = Ker(H_n(F_ℓ/F_{ℓ-1}) → H_n(F_{ℓ+s-1}/F_{ℓ-1}))`.
pub fn mpss_page_ce(space: &Arc<QMetSpace<i64>>, s: usize, n: usize, l: i64) -> Result<usize> {
    if s == 0 {
        return Err(Error::PreconditionViolated("pages start at 1".into()));
    }
    if l < 0 {
        return Ok(0);
    }
    let s = s as i64;
    let graded = Interval::open_closed(l - 1, l)?;
    let z = interval_image_rank(space, &Interval::open_closed(l - s, l)?, &graded, n, Coefficients::Rationals)?;
    let c = TruncatedComplex::new(space, graded.clone(), n + 1);
    let e1 = homology(&c, n, Coefficients::Rationals)?.rank;
    let survives =
        interval_image_rank(space, &graded, &Interval::open_closed(l - 1, l + s - 1)?, n, Coefficients::Rationals)?;
    let b = e1 - survives;
    if b > z {
        return Err(Error::PreconditionViolated(format!("B^{s} exceeds Z^{s} at (ℓ={l}, n={n})")));
    }
    Ok(z - b)
}

/// One page for all `n <= max_n`, `0 <= ℓ <= max_l`.
pub fn mpss_table(space: &Arc<QMetSpace<i64>>, s: usize, max_n: usize, max_l: i64) -> Result<PageTable> {
    let mut table = PageTable { page: s, entries: BTreeMap::new() };
    for n in 0..=max_n {
        for l in 0..=max_l {
            let rank = mpss_page(space, s, n, l)?;
            if rank > 0 {
                table.entries.insert((l, n), rank);
            }
        }
    }
    Ok(table)
}

/// Path homology `PH_n(G)`, the diagonal of the second page.
pub fn path_homology(graph: &Digraph, n: usize) -> Result<usize> {
    mpss_page(&Arc::new(graph.shortest_path_space()), 2, n, n as i64)
}

/// Chosen representatives for a basis of `SH^r_{n,I}` together with the
/// span used to read off coordinates.
struct SpectralBasis<F: Field, T> {
    lower: TruncatedComplex<T>,
    upper: TruncatedComplex<T>,
    reps: Vec<SparseVec<F::Elem>>,
    span: ReducedSpan<F>,
    ids: BTreeMap<usize, usize>,
}

impl<F: Field, T: Scalar> SpectralBasis<F, T> {
    fn new(field: &F, space: &Arc<QMetSpace<T>>, query: &SHQuery<T>) -> Result<Self> {
        query.validate()?;
        let n = query.n;
        let lower = TruncatedComplex::new(space, query.lower(), n);
        let upper = TruncatedComplex::new(space, query.upper(), n + 1);
        let incl = inclusion_matrix(&lower, &upper, n)?;
        let mut span = ReducedSpan::new(field.clone());
        let b = upper.boundary(n + 1)?;
        for j in 0..b.ncols() {
            span.insert_ambient(b.column_in(field, j));
        }
        let mut reps = Vec::new();
        let mut ids = BTreeMap::new();
        for z in kernel_basis(field, lower.boundary(n)?) {
            let id = span.generator_count();
            if span.insert_generator(incl.apply(field, &z)) == Insertion::Independent {
                ids.insert(id, reps.len());
                reps.push(z);
            }
        }
        Ok(Self { lower, upper, reps, span, ids })
    }

    fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of a vector of the upper complex modulo boundaries.
    fn coordinates(&self, field: &F, v: SparseVec<F::Elem>) -> Result<Vec<F::Elem>> {
        let mut out = vec![field.zero(); self.dim()];
        for (g, c) in self.span.coordinates(v)? {
            out[self.ids[&g]] = c;
        }
        Ok(out)
    }
}

/// Pushes a chain of `source` (degree `n`) along a point map into `target`.
fn push_forward<F: Field, T: Scalar>(
    field: &F,
    v: &SparseVec<F::Elem>,
    source: &TruncatedComplex<T>,
    target: &TruncatedComplex<T>,
    n: usize,
    map: impl Fn(usize) -> usize,
) -> Result<SparseVec<F::Elem>> {
    let from = source.basis(n)?;
    let to = target.basis(n)?;
    let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
    let mut image = Vec::with_capacity(n + 1);
    for (i, c) in v {
        image.clear();
        image.extend(from.points(*i).iter().map(|&x| map(x)));
        if image.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        if let Some(row) = to.position(&image) {
            let slot = acc.entry(row).or_insert_with(|| field.zero());
            *slot = field.add(slot, c);
        }
    }
    Ok(acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect())
}

/// Dense matrix, `rows[i][j]` = coefficient of target basis vector `i` in
/// the image of source basis vector `j`.
pub type DenseMatrix<E> = Vec<Vec<E>>;

fn transpose<E: Clone>(columns: Vec<Vec<E>>, rows: usize) -> DenseMatrix<E> {
    (0..rows).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect()
}

/// The matrix of `SH^r_{n,I}(φ)` in the computed bases of source and target.
pub fn sh_induced<F: Field, T: Scalar>(
    field: &F,
    map: &ShortMap<T>,
    query: &SHQuery<T>,
) -> Result<DenseMatrix<F::Elem>> {
    let source = SpectralBasis::new(field, map.source(), query)?;
    let target = if same_space(map.source(), map.target()) {
        None
    } else {
        Some(SpectralBasis::new(field, map.target(), query)?)
    };
    let target_ref = target.as_ref().unwrap_or(&source);
    let mut columns = Vec::with_capacity(source.dim());
    for rep in &source.reps {
        let image = push_forward(field, rep, &source.lower, &target_ref.upper, query.n, |x| map.apply(x))?;
        columns.push(target_ref.coordinates(field, image)?);
    }
    Ok(transpose(columns, target_ref.dim()))
}

/// The structure map `SH^r_{n,I} → SH^r_{n,J}` for `I ≼ J`.
pub fn connecting_matrix<F: Field, T: Scalar>(
    field: &F,
    space: &Arc<QMetSpace<T>>,
    from: &SHQuery<T>,
    to: &Interval<T>,
) -> Result<DenseMatrix<F::Elem>> {
    if !from.interval.precedes(to) {
        return Err(Error::NotComparable);
    }
    let target_query = SHQuery { interval: to.clone(), ..from.clone() };
    let source = SpectralBasis::new(field, space, from)?;
    let target = SpectralBasis::new(field, space, &target_query)?;
    let mut columns = Vec::with_capacity(source.dim());
    for rep in &source.reps {
        let image = push_forward(field, rep, &source.lower, &target.upper, from.n, |x| x)?;
        columns.push(target.coordinates(field, image)?);
    }
    Ok(transpose(columns, target.dim()))
}

/// Multiplies dense matrices over a field.
pub fn dense_product<F: Field>(field: &F, a: &DenseMatrix<F::Elem>, b: &DenseMatrix<F::Elem>) -> DenseMatrix<F::Elem> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(field.zero(), |acc, k| field.add(&acc, &field.mul(&row[k], &b[k][j])))
                })
                .collect()
        })
        .collect()
}

/// Rank of a dense matrix over a field.
pub fn dense_rank<F: Field>(field: &F, m: &DenseMatrix<F::Elem>) -> usize {
    let mut span = ReducedSpan::new(field.clone());
    let cols = m.first().map_or(0, Vec::len);
    let mut grew = 0;
    for j in 0..cols {
        let v: SparseVec<F::Elem> =
            (0..m.len()).filter(|&i| !field.is_zero(&m[i][j])).map(|i| (i, m[i][j].clone())).collect();
        if span.insert_ambient(v) {
            grew += 1;
        }
    }
    grew
}

/// Decomposition bookkeeping for one `(page, n, ℓ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionEntry {
    pub page: usize,
    pub n: usize,
    pub l: i64,
    /// `rank E^s(G)`.
    pub total: usize,
    /// Summand `[k]` for `k = 1..=K`, followed by the stable summand.
    pub summands: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DecompositionReport {
    pub jumping_points: Vec<i64>,
    pub model_sizes: Vec<usize>,
    pub entries: Vec<DecompositionEntry>,
    pub violations: Vec<String>,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Splits page ranks along the nested minimal models
/// `G ⊃ M_{r_1} ⊃ … ⊃ M_{r_K}`: summand `[k]` is
/// `rank E^s(M_{r_{k-1}}) - rank E^s(M_{r_k})`, and the last model carries the
/// stable summand. Checks nonnegativity, vanishing of `[k]` from page
/// `r_k + 1` on, and that the summands add up to `rank E^s(G)`.
pub fn verify_decomposition(
    graph: &Digraph,
    max_page: usize,
    max_n: usize,
    max_l: i64,
    options: &JumpingOptions,
) -> Result<DecompositionReport> {
    let space = Arc::new(graph.shortest_path_space());
    let jumps = jumping_points(&space, options)?;
    let mut chain: Vec<Arc<QMetSpace<i64>>> = vec![space.clone()];
    chain.extend(jumps.models.iter().map(|m| m.model.clone()));
    let mut report = DecompositionReport {
        jumping_points: jumps.points.clone(),
        model_sizes: jumps.model_sizes.clone(),
        ..Default::default()
    };
    for s in 1..=max_page {
        for n in 0..=max_n {
            for l in 0..=max_l {
                let ranks: Vec<i64> = chain
                    .iter()
                    .map(|m| mpss_page(m, s, n, l).map(|r| r as i64))
                    .collect::<Result<_>>()?;
                let mut summands: Vec<i64> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
                summands.push(*ranks.last().unwrap());
                let total = ranks[0];
                for (k, &value) in summands.iter().enumerate() {
                    if value < 0 {
                        report.violations.push(format!("negative summand [{}] at s={s}, n={n}, l={l}", k + 1));
                    }
                    if let Some(&r_k) = jumps.points.get(k) {
                        if s as i64 > r_k && value != 0 {
                            report.violations.push(format!(
                                "summand [{}] is {value} at page {s} >= r_k + 1 = {} (n={n}, l={l})",
                                k + 1,
                                r_k + 1
                            ));
                        }
                    }
                }
                if summands.iter().sum::<i64>() != total {
                    report.violations.push(format!("summands do not add up at s={s}, n={n}, l={l}"));
                }
                report.entries.push(DecompositionEntry { page: s, n, l, total: total as usize, summands });
            }
        }
    }
    Ok(report)
}

/// The closed interval spanned by a group of nearly equal achieved values.
/// For exact backends this is the singleton.
pub fn group_interval<T: Scalar>(group: &ValueGroup<T>) -> Interval<T> {
    Interval::closed(group.min.clone(), group.max.clone()).expect("group bounds are ordered")
}

/// Distinct finite levels `<= cap` over degrees `0..=max_degree`, in order.
pub fn achieved_levels<T: Scalar>(space: &QMetSpace<T>, max_degree: usize, cap: &T) -> Vec<T> {
    let interval = Interval::left_closed_ray(cap.clone());
    let levels = (0..=max_degree).flat_map(|n| enumerate_tuples(space, n, &interval)).map(|t| t.level);
    distinct_sorted(levels.collect())
}

/// `true` when the interval's right ray is bounded, i.e. the truncation is
/// finite in every degree without a degree bound.
pub fn needs_degree_bound<T: Scalar>(interval: &Interval<T>) -> bool {
    matches!(interval.right(), LeftRay::All)
}
