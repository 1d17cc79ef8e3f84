//! Degree-bounded polynomials in one variable.
//!
//! A [`Poly`] stores monomial coefficients `c_0..=c_s` of `q(y) = sum c_j y^j`
//! with a fixed degree bound `s >= 1`. A [`BinomialPoly`] stores the
//! coordinates of the same polynomial in the basis `C(y, j)`; a polynomial is
//! integer-valued on the integers exactly when those coordinates are integers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar, ScalarRepr};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
#[serde(into = "Vec<ScalarRepr>", try_from = "Vec<ScalarRepr>")]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BinomialPoly<S> {
    coeffs: Vec<S>,
}

pub type RatPoly = Poly<Rational>;

fn check_bound(len: usize) -> Result<()> {
    if len < 2 {
        return Err(Error::InvalidDegreeBound);
    }
    Ok(())
}

impl<S: Scalar> Poly<S> {
    /// Builds a polynomial with degree bound `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<S>) -> Result<Self> {
        check_bound(coeffs.len())?;
        Ok(Self { coeffs })
    }

    pub fn zero(degree_bound: usize) -> Result<Self> {
        Self::new(vec![S::zero(); degree_bound + 1])
    }

    pub fn constant(c: S, degree_bound: usize) -> Result<Self> {
        let mut p = Self::zero(degree_bound)?;
        p.coeffs[0] = c;
        Ok(p)
    }

    /// `c * y^j`
    pub fn monomial(c: S, j: usize, degree_bound: usize) -> Result<Self> {
        if j > degree_bound {
            return Err(Error::InvalidParameter(format!(
                "monomial degree {j} exceeds bound {degree_bound}"
            )));
        }
        let mut p = Self::zero(degree_bound)?;
        p.coeffs[j] = c;
        Ok(p)
    }

    pub fn degree_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Actual degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Re-embeds under a different degree bound; shrinking fails if it would drop
    /// a nonzero coefficient.
    pub fn with_degree_bound(&self, degree_bound: usize) -> Result<Self> {
        check_bound(degree_bound + 1)?;
        if let Some(d) = self.degree() {
            if d > degree_bound {
                return Err(Error::InvalidParameter(format!(
                    "polynomial of degree {d} does not fit degree bound {degree_bound}"
                )));
            }
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(degree_bound + 1, S::zero());
        Ok(Self { coeffs })
    }

    fn check_same_bound(&self, other: &Self) -> Result<()> {
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::DegreeMismatch {
                left: self.degree_bound(),
                right: other.degree_bound(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_bound(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(Self { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_bound(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Ok(Self { coeffs })
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    /// The shift action `y -> q(y + t)`.
    pub fn shift(&self, t: &S) -> Self {
        if t.is_zero() || self.is_zero() {
            return self.clone();
        }
        // Repeated synthetic division by (y - (-t)) yields the Taylor coefficients at t.
        let mut work = self.coeffs.clone();
        let n = work.len();
        for k in 0..n {
            for j in (k..n - 1).rev() {
                let carry = work[j + 1].clone() * t.clone();
                work[j] = work[j].clone() + carry;
            }
        }
        Self { coeffs: work }
    }

    /// `y -> p(n * y)`: coefficient `c_j` becomes `c_j * n^j`.
    pub fn rescale(&self, n: u64) -> Self {
        let n = S::from_i64(n as i64);
        let mut scale = S::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let out = c.clone() * scale.clone();
                scale = scale.clone() * n.clone();
                out
            })
            .collect();
        Self { coeffs }
    }

    /// Binomial-basis coordinates `b_j = (Delta^j q)(0)` from the values at `0..=s`.
    pub fn to_binomial(&self) -> BinomialPoly<S> {
        let mut diffs: Vec<S> = (0..self.coeffs.len())
            .map(|k| self.eval(&S::from_i64(k as i64)))
            .collect();
        let n = diffs.len();
        let mut coeffs = Vec::with_capacity(n);
        for level in 0..n {
            coeffs.push(diffs[0].clone());
            for k in 0..n - level - 1 {
                diffs[k] = diffs[k + 1].clone() - diffs[k].clone();
            }
        }
        BinomialPoly { coeffs }
    }

    pub fn to_f64(&self) -> Poly<f64> {
        Poly {
            coeffs: self.coeffs.iter().map(Scalar::to_f64).collect(),
        }
    }
}

impl Poly<Rational> {
    /// True iff `q(y)` is an integer for every integer `y`.
    pub fn is_integer_valued(&self) -> bool {
        self.to_binomial().coeffs.iter().all(|b| b.is_integer())
    }
}

impl<S: Scalar> BinomialPoly<S> {
    pub fn new(coeffs: Vec<S>) -> Result<Self> {
        check_bound(coeffs.len())?;
        Ok(Self { coeffs })
    }

    pub fn degree_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Monomial coefficients of `sum b_j C(y, j)`.
    pub fn to_monomial(&self) -> Poly<S> {
        let n = self.coeffs.len();
        let mut out = vec![S::zero(); n];
        // basis holds C(y, j) in the monomial basis
        let mut basis = vec![S::zero(); n];
        basis[0] = S::one();
        for (j, b) in self.coeffs.iter().enumerate() {
            if j > 0 {
                // C(y, j) = C(y, j - 1) * (y - (j - 1)) / j
                let shift = S::from_i64(j as i64 - 1);
                let denom = S::from_i64(j as i64);
                let mut next = vec![S::zero(); n];
                for k in 0..n {
                    if basis[k].is_zero() {
                        continue;
                    }
                    if k + 1 < n {
                        next[k + 1] = next[k + 1].clone() + basis[k].clone() / denom.clone();
                    }
                    next[k] = next[k].clone() - basis[k].clone() * shift.clone() / denom.clone();
                }
                basis = next;
            }
            for k in 0..n {
                out[k] = out[k].clone() + b.clone() * basis[k].clone();
            }
        }
        Poly { coeffs: out }
    }
}

impl<S: Scalar> From<Poly<S>> for Vec<ScalarRepr> {
    fn from(p: Poly<S>) -> Self {
        p.coeffs.iter().map(Scalar::to_repr).collect()
    }
}

impl<S: Scalar> TryFrom<Vec<ScalarRepr>> for Poly<S> {
    type Error = Error;

    fn try_from(reprs: Vec<ScalarRepr>) -> Result<Self> {
        let coeffs = reprs.iter().map(S::from_repr).collect::<Result<Vec<_>>>()?;
        Poly::new(coeffs)
    }
}

/// A polynomial whose scalar kind is only known at runtime, e.g. after parsing JSON.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyPoly {
    Exact(Poly<Rational>),
    Float(Poly<f64>),
}

impl AnyPoly {
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let reprs: Vec<ScalarRepr> = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse(format!("polynomial: {e}")))?;
        if reprs.iter().all(|r| matches!(r, ScalarRepr::Exact(_))) {
            Ok(AnyPoly::Exact(Poly::try_from(reprs)?))
        } else if reprs.iter().all(|r| matches!(r, ScalarRepr::Float(_))) {
            Ok(AnyPoly::Float(Poly::try_from(reprs)?))
        } else {
            Err(Error::Parse(
                "polynomial mixes exact strings and floating numbers".into(),
            ))
        }
    }

    pub fn is_integer_valued(&self) -> Result<bool> {
        match self {
            AnyPoly::Exact(p) => Ok(p.is_integer_valued()),
            AnyPoly::Float(_) => Err(Error::NotExact("integer-valuedness")),
        }
    }
}

/// Parses comma-separated exact coefficients such as `"0,0,1/25"`.
pub fn parse_coeffs(s: &str) -> Result<RatPoly> {
    let coeffs = s
        .split(',')
        .map(crate::scalar::parse_rational)
        .collect::<Result<Vec<_>>>()?;
    Poly::new(coeffs)
}
