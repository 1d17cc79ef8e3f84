use serde::{Deserialize, Serialize};

use super::{Filtered, Group, Lattice};
use crate::error::{Error, Result};
use crate::polyalg::{BinomialPoly, Poly};
use crate::scalar::{Scalar, ScalarRepr};

/// An element `(q, t)` of `poly(R, R) x| R`, where `t` acts by `q -> q(. + t)`.
///
/// Product: `(q, t) * (q', t') = (q + q'(. + t), t + t')`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
#[serde(into = "LiftedRepr", try_from = "LiftedRepr")]
pub struct LiftedPoint<S> {
    pub q: Poly<S>,
    pub t: S,
}

#[derive(Serialize, Deserialize)]
struct LiftedRepr {
    q: Vec<ScalarRepr>,
    t: ScalarRepr,
}

impl<S: Scalar> LiftedPoint<S> {
    pub fn new(q: Poly<S>, t: S) -> Self {
        Self { q, t }
    }

    pub fn identity(degree_bound: usize) -> Result<Self> {
        Ok(Self::new(Poly::zero(degree_bound)?, S::zero()))
    }

    /// `(0, t)`: pure translation.
    pub fn translation(t: S, degree_bound: usize) -> Result<Self> {
        Ok(Self::new(Poly::zero(degree_bound)?, t))
    }

    pub fn degree_bound(&self) -> usize {
        self.q.degree_bound()
    }
}

impl<S: Scalar> Group for LiftedPoint<S> {
    fn mul(&self, rhs: &Self) -> Result<Self> {
        let q = self.q.add(&rhs.q.shift(&self.t))?;
        Ok(Self::new(q, self.t.clone() + rhs.t.clone()))
    }

    /// `(-q(. - t), -t)`
    fn inv(&self) -> Self {
        let back = -self.t.clone();
        Self::new(self.q.shift(&back).neg(), back)
    }

    fn identity_like(&self) -> Self {
        let zero = Poly::zero(self.degree_bound()).expect("degree bound is at least 1");
        Self::new(zero, S::zero())
    }

    fn is_identity(&self) -> bool {
        self.q.is_zero() && self.t.is_zero()
    }
}

impl<S: Scalar> Filtered for LiftedPoint<S> {
    fn steps(&self) -> usize {
        self.degree_bound()
    }

    /// `G_0` is everything, `G_1 = {deg q <= s-1}`, `G_i = {deg q <= s-i, t = 0}`
    /// for `2 <= i <= s`, and `G_{s+1}` is trivial.
    fn in_filtration(&self, i: usize) -> bool {
        let s = self.degree_bound();
        let deg_at_most = |bound: usize| self.q.degree().map_or(true, |d| d <= bound);
        match i {
            0 => true,
            1 => deg_at_most(s - 1),
            i if i <= s => deg_at_most(s - i) && self.t.is_zero(),
            _ => self.is_identity(),
        }
    }
}

impl<S: Scalar> Lattice for LiftedPoint<S> {
    fn in_lattice(&self) -> Result<bool> {
        let int = |v: &S| v.is_integer().ok_or(Error::NotExact("lifted lattice membership"));
        if !int(&self.t)? {
            return Ok(false);
        }
        for b in self.q.to_binomial().coeffs() {
            if !int(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Time first: left-multiply by `(0, -floor(t))`. Then subtract the integer
    /// parts of the binomial coordinates of the polynomial factor.
    fn reduce(&self) -> (Self, Self) {
        let s = self.degree_bound();
        let whole = self.t.floor();
        let q1 = self.q.shift(&-whole.clone());
        let t1 = self.t.clone() - whole.clone();

        let binom = q1.to_binomial();
        let floors: Vec<S> = binom.coeffs().iter().map(Scalar::floor).collect();
        let fracs: Vec<S> = binom.coeffs().iter().map(Scalar::frac).collect();
        let integer_part = BinomialPoly::new(floors)
            .expect("same degree bound")
            .to_monomial();
        let r_q = BinomialPoly::new(fracs).expect("same degree bound").to_monomial();
        debug_assert_eq!(r_q.degree_bound(), s);

        let r = Self::new(r_q, t1);
        let gamma = Self::new(integer_part.neg(), -whole);
        (r, gamma)
    }
}

impl<S: Scalar> From<LiftedPoint<S>> for LiftedRepr {
    fn from(g: LiftedPoint<S>) -> Self {
        LiftedRepr {
            q: g.q.into(),
            t: g.t.to_repr(),
        }
    }
}

impl<S: Scalar> TryFrom<LiftedRepr> for LiftedPoint<S> {
    type Error = Error;

    fn try_from(r: LiftedRepr) -> Result<Self> {
        Ok(Self::new(Poly::try_from(r.q)?, S::from_repr(&r.t)?))
    }
}
