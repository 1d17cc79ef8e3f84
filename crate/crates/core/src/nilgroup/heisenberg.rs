use serde::{Deserialize, Serialize};

use super::{Filtered, Group, Lattice};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, ScalarRepr};

/// The upper unitriangular matrix `[[1, x, z], [0, 1, y], [0, 0, 1]]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
#[serde(into = "[ScalarRepr; 3]", try_from = "[ScalarRepr; 3]")]
pub struct HeisPoint<S> {
    pub x: S,
    pub y: S,
    pub z: S,
}

impl<S: Scalar> HeisPoint<S> {
    pub fn new(x: S, y: S, z: S) -> Self {
        Self { x, y, z }
    }

    pub fn identity() -> Self {
        Self::new(S::zero(), S::zero(), S::zero())
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Self::new(S::from_i64(x), S::from_i64(y), S::from_i64(z))
    }

    pub fn heis_mul(&self, h: &Self) -> Self {
        Self {
            x: self.x.clone() + h.x.clone(),
            y: self.y.clone() + h.y.clone(),
            z: self.z.clone() + h.z.clone() + self.x.clone() * h.y.clone(),
        }
    }

    pub fn heis_inv(&self) -> Self {
        Self {
            x: -self.x.clone(),
            y: -self.y.clone(),
            z: self.x.clone() * self.y.clone() - self.z.clone(),
        }
    }

    pub fn to_f64(&self) -> HeisPoint<f64> {
        HeisPoint::new(self.x.to_f64(), self.y.to_f64(), self.z.to_f64())
    }
}

impl<S: Scalar> Group for HeisPoint<S> {
    fn mul(&self, rhs: &Self) -> Result<Self> {
        Ok(self.heis_mul(rhs))
    }

    fn inv(&self) -> Self {
        self.heis_inv()
    }

    fn identity_like(&self) -> Self {
        Self::identity()
    }

    fn is_identity(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
}

impl<S: Scalar> Filtered for HeisPoint<S> {
    fn steps(&self) -> usize {
        2
    }

    /// `G_0 = G_1 = G`, `G_2` is the center, `G_3` is trivial.
    fn in_filtration(&self, i: usize) -> bool {
        match i {
            0 | 1 => true,
            2 => self.x.is_zero() && self.y.is_zero(),
            _ => self.is_identity(),
        }
    }
}

impl<S: Scalar> Lattice for HeisPoint<S> {
    fn in_lattice(&self) -> Result<bool> {
        let int = |v: &S| v.is_integer().ok_or(Error::NotExact("Heisenberg lattice membership"));
        Ok(int(&self.x)? && int(&self.y)? && int(&self.z)?)
    }

    /// `(x, y, z) -> ({x}, {y}, {z - y floor(x)})`.
    fn reduce(&self) -> (Self, Self) {
        let fx = self.x.floor();
        let fy = self.y.floor();
        let z_shifted = self.z.clone() - self.y.clone() * fx.clone();
        let fz = z_shifted.floor();
        let gamma = Self::new(-fx, -fy, -fz);
        let r = gamma.heis_mul(self);
        (r, gamma)
    }
}

impl<S: Scalar> From<HeisPoint<S>> for [ScalarRepr; 3] {
    fn from(g: HeisPoint<S>) -> Self {
        [g.x.to_repr(), g.y.to_repr(), g.z.to_repr()]
    }
}

impl<S: Scalar> TryFrom<[ScalarRepr; 3]> for HeisPoint<S> {
    type Error = Error;

    fn try_from(r: [ScalarRepr; 3]) -> Result<Self> {
        Ok(Self::new(S::from_repr(&r[0])?, S::from_repr(&r[1])?, S::from_repr(&r[2])?))
    }
}
