use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, ToPrimitive, Zero};

/// Field operations. The field is a value so that `𝔽_p` can carry its
/// modulus; elements are plain data.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn one(&self) -> Self::Elem {
        self.from_i64(1)
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
}

/// A rational number that stays in machine words until an operation would
/// overflow.
#[derive(Clone, Debug)]
pub enum Rational {
    Small(Ratio<i64>),
    Big(BigRational),
}

impl Rational {
    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(r) => {
                BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
            }
            Rational::Big(r) => r.clone(),
        }
    }

    fn shrink(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(Ratio::new_raw(n, d)),
            _ => Rational::Big(r),
        }
    }

    fn combine(
        a: &Self,
        b: &Self,
        small: impl Fn(&Ratio<i64>, &Ratio<i64>) -> Option<Ratio<i64>>,
        big: impl Fn(BigRational, BigRational) -> BigRational,
    ) -> Self {
        if let (Rational::Small(x), Rational::Small(y)) = (a, b) {
            if let Some(z) = small(x, y) {
                return Rational::Small(z);
            }
        }
        Self::shrink(big(a.to_big(), b.to_big()))
    }

    pub fn to_big_rational(&self) -> BigRational {
        self.to_big()
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Rational::Small(a), Rational::Small(b)) => a == b,
            _ => self.to_big() == other.to_big(),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(r) => write!(f, "{r}"),
            Rational::Big(r) => write!(f, "{r}"),
        }
    }
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn name(&self) -> String {
        "Q".into()
    }
    fn zero(&self) -> Rational {
        Rational::Small(Ratio::zero())
    }
    fn from_i64(&self, v: i64) -> Rational {
        Rational::Small(Ratio::from_integer(v))
    }
    fn is_zero(&self, a: &Rational) -> bool {
        match a {
            Rational::Small(r) => r.is_zero(),
            Rational::Big(r) => r.is_zero(),
        }
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        Rational::combine(a, b, |x, y| x.checked_add(y), |x, y| x + y)
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        Rational::combine(a, b, |x, y| x.checked_sub(y), |x, y| x - y)
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        Rational::combine(a, b, |x, y| x.checked_mul(y), |x, y| x * y)
    }
    fn neg(&self, a: &Rational) -> Rational {
        match a {
            Rational::Small(r) if *r.numer() != i64::MIN => Rational::Small(-r),
            _ => Rational::shrink(-a.to_big()),
        }
    }
    fn inv(&self, a: &Rational) -> Rational {
        assert!(!self.is_zero(a), "inverse of zero");
        match a {
            Rational::Small(r) if *r.numer() != i64::MIN => Rational::Small(r.recip()),
            _ => Rational::shrink(a.to_big().recip()),
        }
    }
}

/// The prime field `𝔽_p` for a prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Returns `None` unless `p` is a prime below `2^32`.
    pub fn new(p: u64) -> Option<Self> {
        let is_prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        (is_prime && p < (1 << 32)).then_some(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn name(&self) -> String {
        format!("F{}", self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
}
