//! Numeric backends for distances.
//!
//! A space picks exactly one backend at construction time: exact integers
//! (digraph distances), exact rationals, or binary floats (point clouds).
//! All comparisons are exact within the backend. The only place a tolerance
//! enters is [`Scalar::approx_cmp`], which is used when grouping achieved
//! values of float spaces.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Default grouping tolerance for float backends.
pub const DEFAULT_TAU: f64 = 1e-9;

/// Which numeric backend a space uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Integer,
    Rational,
    Float,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Integer => "integer",
            Backend::Rational => "rational",
            Backend::Float => "float",
        })
    }
}

/// A finite real number in one of the supported backends.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
{
    const BACKEND: Backend;

    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;

    /// Parses a finite literal (`"3"`, `"7/4"`, `"0.25"` depending on backend).
    fn parse_literal(s: &str) -> Option<Self>;

    /// A value strictly between `self` and `other`, if the backend has one.
    fn value_between(&self, other: &Self) -> Option<Self>;

    fn is_integral(&self) -> bool;

    /// Rejects values the backend cannot order (NaN, infinities for floats).
    fn is_valid(&self) -> bool {
        true
    }

    fn cmp_value(&self, other: &Self) -> Ordering {
        self.partial_cmp(other)
            .expect("scalar values are totally ordered within a backend")
    }

    /// Comparison in which float values closer than `tau` are equal.
    /// Exact backends ignore `tau`.
    fn approx_cmp(&self, other: &Self, _tau: f64) -> Ordering {
        self.cmp_value(other)
    }

    fn is_negative(&self) -> bool {
        self.cmp_value(&Self::zero()) == Ordering::Less
    }
}

impl Scalar for i64 {
    const BACKEND: Backend = Backend::Integer;

    fn zero() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn to_f64(&self) -> f64 {
        *self as f64
    }
    fn parse_literal(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }
    fn value_between(&self, other: &Self) -> Option<Self> {
        let (lo, hi) = if self <= other { (*self, *other) } else { (*other, *self) };
        (hi - lo >= 2).then(|| lo + (hi - lo) / 2)
    }
    fn is_integral(&self) -> bool {
        true
    }
}

impl Scalar for f64 {
    const BACKEND: Backend = Backend::Float;

    fn zero() -> Self {
        0.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn parse_literal(s: &str) -> Option<Self> {
        s.trim().parse::<f64>().ok().filter(|v| v.is_finite())
    }
    fn value_between(&self, other: &Self) -> Option<Self> {
        let m = (self + other) / 2.0;
        let (lo, hi) = if self <= other { (*self, *other) } else { (*other, *self) };
        (lo < m && m < hi).then_some(m)
    }
    fn is_integral(&self) -> bool {
        self.fract() == 0.0
    }
    fn is_valid(&self) -> bool {
        self.is_finite()
    }
    fn approx_cmp(&self, other: &Self, tau: f64) -> Ordering {
        if (self - other).abs() <= tau {
            Ordering::Equal
        } else {
            self.cmp_value(other)
        }
    }
}

impl Scalar for BigRational {
    const BACKEND: Backend = Backend::Rational;

    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn parse_literal(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: BigInt = num.trim().parse().ok()?;
            let den: BigInt = den.trim().parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(BigRational::new(num, den))
        } else {
            parse_decimal(s)
        }
    }
    fn value_between(&self, other: &Self) -> Option<Self> {
        (self != other).then(|| (self + other) / BigRational::from_i64(2))
    }
    fn is_integral(&self) -> bool {
        self.is_integer()
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// Exact value of a decimal literal such as `-1.25` or `3e-2`.
fn parse_decimal(s: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (whole, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if !frac.chars().all(|c| c.is_ascii_digit()) || (whole.trim_start_matches(['+', '-']).is_empty() && frac.is_empty()) {
        return None;
    }
    let digits: BigInt = format!("{whole}{frac}").parse().ok()?;
    let shift = exponent - i32::try_from(frac.len()).ok()?;
    let scale = BigInt::from(10).pow(shift.unsigned_abs());
    Some(if shift >= 0 {
        BigRational::from_integer(digits * scale)
    } else {
        BigRational::new(digits, scale)
    })
}

/// A distance in `[0, +inf]`. `Infinite` absorbs addition and is larger
/// than every finite value; `inf - inf` is never formed.
#[derive(Clone, Debug)]
pub enum ExtDist<T> {
    Finite(T),
    Infinite,
}

impl<T: Scalar> ExtDist<T> {
    pub fn zero() -> Self {
        ExtDist::Finite(T::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtDist::Finite(_))
    }

    pub fn finite(&self) -> Option<&T> {
        match self {
            ExtDist::Finite(v) => Some(v),
            ExtDist::Infinite => None,
        }
    }

    /// `self <= bound` for a finite bound.
    pub fn le_value(&self, bound: &T) -> bool {
        match self {
            ExtDist::Finite(v) => v.cmp_value(bound) != Ordering::Greater,
            ExtDist::Infinite => false,
        }
    }

    /// `self < bound` for a finite bound.
    pub fn lt_value(&self, bound: &T) -> bool {
        match self {
            ExtDist::Finite(v) => v.cmp_value(bound) == Ordering::Less,
            ExtDist::Infinite => false,
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn approx_cmp(&self, other: &Self, tau: f64) -> Ordering {
        match (self, other) {
            (ExtDist::Finite(a), ExtDist::Finite(b)) => a.approx_cmp(b, tau),
            _ => self.cmp(other),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtDist::Finite(v) => v.to_f64(),
            ExtDist::Infinite => f64::INFINITY,
        }
    }
}

impl<T: Scalar> From<T> for ExtDist<T> {
    fn from(v: T) -> Self {
        ExtDist::Finite(v)
    }
}

impl<T: Scalar> PartialEq for ExtDist<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: Scalar> Eq for ExtDist<T> {}

impl<T: Scalar> PartialOrd for ExtDist<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Scalar> Ord for ExtDist<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtDist::Finite(a), ExtDist::Finite(b)) => a.cmp_value(b),
            (ExtDist::Finite(_), ExtDist::Infinite) => Ordering::Less,
            (ExtDist::Infinite, ExtDist::Finite(_)) => Ordering::Greater,
            (ExtDist::Infinite, ExtDist::Infinite) => Ordering::Equal,
        }
    }
}

impl<T: Scalar> Add for ExtDist<T> {
    type Output = ExtDist<T>;

    fn add(self, rhs: Self) -> Self::Output {
        match (self, rhs) {
            (ExtDist::Finite(a), ExtDist::Finite(b)) => ExtDist::Finite(a + b),
            _ => ExtDist::Infinite,
        }
    }
}

impl<T: Scalar> Add for &ExtDist<T> {
    type Output = ExtDist<T>;

    fn add(self, rhs: Self) -> Self::Output {
        match (self, rhs) {
            (ExtDist::Finite(a), ExtDist::Finite(b)) => ExtDist::Finite(a.clone() + b.clone()),
            _ => ExtDist::Infinite,
        }
    }
}

impl<T: Scalar> fmt::Display for ExtDist<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtDist::Finite(v) => write!(f, "{v}"),
            ExtDist::Infinite => f.write_str("inf"),
        }
    }
}

/// A group of achieved values that agree up to the grouping tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct ValueGroup<T> {
    pub min: T,
    pub max: T,
    pub count: usize,
}

impl<T: Scalar> ValueGroup<T> {
    /// True when more than one distinct value was merged into the group.
    pub fn merged(&self) -> bool {
        self.min != self.max
    }
}

/// Sorts `values` and merges neighbours whose gap is within `tau`
/// (single-linkage along the sorted axis). Exact backends only merge equal
/// values.
pub fn group_values<T: Scalar>(mut values: Vec<T>, tau: f64) -> Vec<ValueGroup<T>> {
    values.sort_by(|a, b| a.cmp_value(b));
    let mut groups: Vec<ValueGroup<T>> = Vec::new();
    for v in values {
        match groups.last_mut() {
            Some(g) if g.max.approx_cmp(&v, tau) == Ordering::Equal => {
                g.max = v;
                g.count += 1;
            }
            _ => groups.push(ValueGroup { min: v.clone(), max: v, count: 1 }),
        }
    }
    groups
}
