//! Real intervals written as differences `R \ L` of left-infinite rays.
//!
//! Text syntax accepted by [`Interval::parse`]:
//!
//! ```text
//! interval := "R" | "{" v "}" | lo "," hi
//! lo       := "[" v | "(" v | "(-inf"
//! hi       := v "]" | v ")" | "inf)"
//! ```
//!
//! where `v` is a literal of the space's backend (`3`, `7/4`, `0.5176`).

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One of the four shapes of left-infinite interval.
#[derive(Clone, Debug, PartialEq)]
pub enum LeftRay<T> {
    Empty,
    /// `(-inf, a)`
    Below(T),
    /// `(-inf, a]`
    BelowEq(T),
    All,
}

impl<T: Scalar> LeftRay<T> {
    pub fn contains(&self, x: &T) -> bool {
        match self {
            LeftRay::Empty => false,
            LeftRay::Below(a) => x.cmp_value(a) == Ordering::Less,
            LeftRay::BelowEq(a) => x.cmp_value(a) != Ordering::Greater,
            LeftRay::All => true,
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        use LeftRay::*;
        match (self, other) {
            (Empty, _) | (_, All) => true,
            (_, Empty) | (All, _) => false,
            (Below(a), Below(b)) | (Below(a), BelowEq(b)) | (BelowEq(a), BelowEq(b)) => {
                a.cmp_value(b) != Ordering::Greater
            }
            (BelowEq(a), Below(b)) => a.cmp_value(b) == Ordering::Less,
        }
    }

    /// The ray translated by `+s`.
    pub fn shift_up(&self, s: &T) -> Self {
        self.map(|a| a.clone() + s.clone())
    }

    /// The ray translated by `-s`.
    pub fn shift_down(&self, s: &T) -> Self {
        self.map(|a| a.clone() - s.clone())
    }

    fn map(&self, f: impl Fn(&T) -> T) -> Self {
        match self {
            LeftRay::Empty => LeftRay::Empty,
            LeftRay::Below(a) => LeftRay::Below(f(a)),
            LeftRay::BelowEq(a) => LeftRay::BelowEq(f(a)),
            LeftRay::All => LeftRay::All,
        }
    }

    /// The finite endpoint, if any.
    pub fn endpoint(&self) -> Option<&T> {
        match self {
            LeftRay::Below(a) | LeftRay::BelowEq(a) => Some(a),
            _ => None,
        }
    }
}

/// A nonempty interval `R \ L` with `L ⊊ R`.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval<T> {
    right: LeftRay<T>,
    left: LeftRay<T>,
}

impl<T: Scalar> Interval<T> {
    pub fn from_rays(right: LeftRay<T>, left: LeftRay<T>) -> Result<Self> {
        if !left.is_subset(&right) || right.is_subset(&left) {
            return Err(Error::EmptyInterval);
        }
        Ok(Self { right, left })
    }

    /// `{l} = (-inf, l] \ (-inf, l)`.
    pub fn singleton(l: T) -> Self {
        Self { right: LeftRay::BelowEq(l.clone()), left: LeftRay::Below(l) }
    }

    /// `[a, b]`.
    pub fn closed(a: T, b: T) -> Result<Self> {
        Self::from_rays(LeftRay::BelowEq(b), LeftRay::Below(a))
    }

    /// `(a, b]`.
    pub fn open_closed(a: T, b: T) -> Result<Self> {
        Self::from_rays(LeftRay::BelowEq(b), LeftRay::BelowEq(a))
    }

    /// `(-inf, l]`.
    pub fn left_closed_ray(l: T) -> Self {
        Self { right: LeftRay::BelowEq(l), left: LeftRay::Empty }
    }

    /// `[a, inf)`.
    pub fn at_least(a: T) -> Self {
        Self { right: LeftRay::All, left: LeftRay::Below(a) }
    }

    /// The whole real line.
    pub fn full() -> Self {
        Self { right: LeftRay::All, left: LeftRay::Empty }
    }

    pub fn right(&self) -> &LeftRay<T> {
        &self.right
    }

    pub fn left(&self) -> &LeftRay<T> {
        &self.left
    }

    pub fn contains(&self, x: &T) -> bool {
        self.right.contains(x) && !self.left.contains(x)
    }

    pub fn is_bounded_above(&self) -> bool {
        !matches!(self.right, LeftRay::All)
    }

    /// The order `I ≼ J`: `R_I ⊆ R_J` and `L_I ⊆ L_J`.
    pub fn precedes(&self, other: &Self) -> bool {
        self.right.is_subset(&other.right) && self.left.is_subset(&other.left)
    }

    /// `I_r = R \ (L - r)`.
    pub fn lower_expand(&self, r: &T) -> Self {
        Self { right: self.right.clone(), left: self.left.shift_down(r) }
    }

    /// `I^r = (R + r) \ L`.
    pub fn upper_expand(&self, r: &T) -> Self {
        Self { right: self.right.shift_up(r), left: self.left.clone() }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Syntax(format!("interval {text:?}"));
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "R" {
            return Ok(Self::full());
        }
        if let Some(inner) = s.strip_prefix('{').and_then(|t| t.strip_suffix('}')) {
            return T::parse_literal(inner).map(Self::singleton).ok_or_else(bad);
        }
        let (lo, hi) = s.split_once(',').ok_or_else(bad)?;
        let left = if lo == "(-inf" {
            LeftRay::Empty
        } else if let Some(v) = lo.strip_prefix('[') {
            LeftRay::Below(T::parse_literal(v).ok_or_else(bad)?)
        } else if let Some(v) = lo.strip_prefix('(') {
            LeftRay::BelowEq(T::parse_literal(v).ok_or_else(bad)?)
        } else {
            return Err(bad());
        };
        let right = if hi == "inf)" || hi == "+inf)" {
            LeftRay::All
        } else if let Some(v) = hi.strip_suffix(']') {
            LeftRay::BelowEq(T::parse_literal(v).ok_or_else(bad)?)
        } else if let Some(v) = hi.strip_suffix(')') {
            LeftRay::Below(T::parse_literal(v).ok_or_else(bad)?)
        } else {
            return Err(bad());
        };
        Self::from_rays(right, left)
    }
}

impl<T: Scalar> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.right, &self.left) {
            (LeftRay::All, LeftRay::Empty) => return f.write_str("R"),
            (LeftRay::BelowEq(b), LeftRay::Below(a)) if a == b => return write!(f, "{{{a}}}"),
            _ => {}
        }
        match &self.left {
            LeftRay::Empty => f.write_str("(-inf,")?,
            LeftRay::Below(a) => write!(f, "[{a},")?,
            LeftRay::BelowEq(a) => write!(f, "({a},")?,
            LeftRay::All => unreachable!("left ray is a proper subset of the right ray"),
        }
        match &self.right {
            LeftRay::All => f.write_str("inf)"),
            LeftRay::BelowEq(b) => write!(f, "{b}]"),
            LeftRay::Below(b) => write!(f, "{b})"),
            LeftRay::Empty => unreachable!("right ray is nonempty"),
        }
    }
}
