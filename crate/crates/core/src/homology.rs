//! Homology of truncated complexes and ranks of induced maps.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::complex::TruncatedComplex;
use crate::error::{Error, Result};
use crate::linalg::{invariant_factors, kernel_basis, rank, Field, PrimeField, Rationals, ReducedSpan, SparseMatrix};
use crate::scalar::Scalar;

/// Coefficient ring for homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Coefficients {
    Integers,
    #[default]
    Rationals,
    Prime(u64),
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => f.write_str("Z"),
            Coefficients::Rationals => f.write_str("Q"),
            Coefficients::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    /// Accepts `Z`, `Q`, and `F<p>` / `Fp<p>` for a prime `p`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Z" => Ok(Coefficients::Integers),
            "Q" => Ok(Coefficients::Rationals),
            _ => {
                let digits = s.strip_prefix("Fp").or_else(|| s.strip_prefix('F'));
                digits
                    .and_then(|d| d.parse().ok())
                    .filter(|&p| PrimeField::new(p).is_some())
                    .map(Coefficients::Prime)
                    .ok_or_else(|| Error::Syntax(format!("coefficients {s:?}")))
            }
        }
    }
}

impl Coefficients {
    /// Runs `f` with the field matching these coefficients; `Z` maps to `ℚ`.
    pub fn with_field<R>(self, f: impl FieldVisitor<Output = R>) -> Result<R> {
        match self {
            Coefficients::Integers | Coefficients::Rationals => Ok(f.visit(Rationals)),
            Coefficients::Prime(p) => PrimeField::new(p)
                .map(|field| f.visit(field))
                .ok_or_else(|| Error::UnsupportedCoefficients(format!("F{p}"))),
        }
    }
}

/// Generic callback over the supported fields.
pub trait FieldVisitor {
    type Output;
    fn visit<F: Field>(self, field: F) -> Self::Output;
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HomologyGroup {
    pub rank: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".to_string() } else { format!("Z^{}", self.rank) });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

struct Betti<'a> {
    dim: usize,
    incoming: &'a SparseMatrix,
    outgoing: &'a SparseMatrix,
}

impl FieldVisitor for Betti<'_> {
    type Output = usize;
    fn visit<F: Field>(self, field: F) -> usize {
        self.dim - rank(&field, self.outgoing) - rank(&field, self.incoming)
    }
}

/// `H_n(C)` with the chosen coefficients. Needs degree `n + 1`.
pub fn homology<T: Scalar>(
    complex: &TruncatedComplex<T>,
    n: usize,
    coefficients: Coefficients,
) -> Result<HomologyGroup> {
    let incoming = complex.boundary(n + 1)?;
    let outgoing = complex.boundary(n)?;
    let dim = complex.dim(n)?;
    let rank = coefficients.with_field(Betti { dim, incoming, outgoing })?;
    let torsion = match coefficients {
        Coefficients::Integers => {
            invariant_factors(incoming).into_iter().filter(|d| !d.is_one()).collect()
        }
        _ => Vec::new(),
    };
    Ok(HomologyGroup { rank, torsion })
}

/// A chain map given by its matrices in degrees `0..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub degrees: Vec<SparseMatrix>,
}

impl ChainMap {
    /// Checks `∂' f_m = f_{m-1} ∂` in every degree where both sides are
    /// available.
    pub fn check<T: Scalar>(&self, from: &TruncatedComplex<T>, to: &TruncatedComplex<T>) -> Result<()> {
        for m in 1..self.degrees.len() {
            let (Ok(d_from), Ok(d_to)) = (from.boundary(m), to.boundary(m)) else { continue };
            if d_to.mul(&self.degrees[m]) != self.degrees[m - 1].mul(d_from) {
                return Err(Error::NotAChainMap { degree: m });
            }
        }
        Ok(())
    }
}

/// Cycle basis `Z_n(C)` over `field`.
pub fn cycles<F: Field, T: Scalar>(
    field: &F,
    complex: &TruncatedComplex<T>,
    n: usize,
) -> Result<Vec<Vec<(usize, F::Elem)>>> {
    Ok(kernel_basis(field, complex.boundary(n)?))
}

/// `rank[f(Z_n(C)) | B_n(D)] - rank B_n(D)` over `field`.
pub fn image_rank_in<F: Field, T: Scalar>(
    field: &F,
    f: &SparseMatrix,
    from: &TruncatedComplex<T>,
    to: &TruncatedComplex<T>,
    n: usize,
) -> Result<usize> {
    let z = cycles(field, from, n)?;
    let boundaries = to.boundary(n + 1)?;
    let mut span = ReducedSpan::new(field.clone());
    for j in 0..boundaries.ncols() {
        span.insert_ambient(boundaries.column_in(field, j));
    }
    let before = span.rank();
    for v in &z {
        span.insert_ambient(f.apply(field, v));
    }
    Ok(span.rank() - before)
}

struct ImageRank<'a, T> {
    f: &'a SparseMatrix,
    from: &'a TruncatedComplex<T>,
    to: &'a TruncatedComplex<T>,
    n: usize,
}

impl<T: Scalar> FieldVisitor for ImageRank<'_, T> {
    type Output = Result<usize>;
    fn visit<F: Field>(self, field: F) -> Result<usize> {
        image_rank_in(&field, self.f, self.from, self.to, self.n)
    }
}

/// Rank of `H_n(f) : H_n(C) → H_n(D)` over a field.
pub fn induced_image_rank<T: Scalar>(
    f: &ChainMap,
    from: &TruncatedComplex<T>,
    to: &TruncatedComplex<T>,
    n: usize,
    coefficients: Coefficients,
) -> Result<usize> {
    if coefficients == Coefficients::Integers {
        return Err(Error::UnsupportedCoefficients("Z".into()));
    }
    f.check(from, to)?;
    let fn_matrix = f
        .degrees
        .get(n)
        .ok_or(Error::DegreeNotMaterialized { degree: n, max: f.degrees.len().saturating_sub(1) })?;
    coefficients.with_field(ImageRank { f: fn_matrix, from, to, n })?
}
