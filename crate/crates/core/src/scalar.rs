//! Scalar field abstraction shared by polynomials and group elements.
//!
//! Two scalar kinds exist: exact [`Rational`] values with arbitrary-precision
//! parts, and `f64`. Lattice membership and fundamental-domain reduction are
//! only certified for the exact kind.

use std::fmt::Debug;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// JSON form of a scalar: `"num/den"` strings for exact values, numbers for floats.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Exact(String),
    Float(f64),
}

pub trait Scalar: Num + Neg<Output = Self> + Clone + PartialEq + Debug + Send + Sync + 'static {
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn floor(&self) -> Self;
    fn to_f64(&self) -> f64;
    fn to_repr(&self) -> ScalarRepr;
    fn from_repr(repr: &ScalarRepr) -> Result<Self>;

    /// `self - floor(self)`, in `[0, 1)`.
    fn frac(&self) -> Self {
        self.clone() - self.floor()
    }

    /// Integrality; `None` when the scalar kind cannot decide it.
    fn is_integer(&self) -> Option<bool>;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn floor(&self) -> Self {
        Rational::floor(self)
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn to_repr(&self) -> ScalarRepr {
        ScalarRepr::Exact(format_rational(self))
    }

    fn from_repr(repr: &ScalarRepr) -> Result<Self> {
        match repr {
            ScalarRepr::Exact(s) => parse_rational(s),
            ScalarRepr::Float(v) => Err(Error::Parse(format!(
                "expected an exact \"num/den\" string, found number {v}"
            ))),
        }
    }

    fn is_integer(&self) -> Option<bool> {
        Some(Rational::is_integer(self))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn floor(&self) -> Self {
        f64::floor(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_repr(&self) -> ScalarRepr {
        ScalarRepr::Float(*self)
    }

    fn from_repr(repr: &ScalarRepr) -> Result<Self> {
        match repr {
            ScalarRepr::Float(v) => Ok(*v),
            ScalarRepr::Exact(s) => Err(Error::Parse(format!(
                "expected a JSON number, found string {s:?}"
            ))),
        }
    }

    fn is_integer(&self) -> Option<bool> {
        None
    }
}

pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `"a/b"`, `"a"` or a finite decimal such as `"-1.25"`, exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if s.contains('/') {
            return Err(Error::Parse(format!("cannot mix '.' and '/' in {s:?}")));
        }
        let negative = int_part.starts_with('-');
        let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac_part);
        let num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits })
            .map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        let den = num_traits::pow(BigInt::from(10), frac_part.len());
        let q = Rational::new(num, den);
        return Ok(if negative { -q } else { q });
    }
    let q = Rational::from_str(s).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
    Ok(q)
}

/// Correctly-scaled conversion; avoids overflow for large numerators and denominators.
pub fn rational_to_f64(q: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let shift = q.numer().bits().max(q.denom().bits()) as i64 - 60;
    let n = if shift > 0 { q.numer() >> shift as usize } else { q.numer().clone() };
    let d = if shift > 0 { q.denom() >> shift as usize } else { q.denom().clone() };
    n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
}

/// Euclidean remainder, always in `0..n`.
pub fn mod_floor(x: i64, n: i64) -> i64 {
    x.mod_floor(&n)
}

/// The additive character `e(t) = exp(2 pi i t)`; `t` is reduced mod 1 first.
pub fn e(t: f64) -> Complex64 {
    let r = t - t.floor();
    Complex64::from_polar(1.0, std::f64::consts::TAU * r)
}

/// `e(t)` for a scalar, reducing mod 1 exactly when the scalar is exact.
pub fn e_scalar<S: Scalar>(t: &S) -> Complex64 {
    e(t.frac().to_f64())
}
