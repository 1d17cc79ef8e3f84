use super::{Filtered, Group, Lattice};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The additive group `R` with lattice `Z` and the degree-`s` filtration
/// `G_0 = ... = G_s = R`, `G_{s+1} = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPoint<S> {
    pub value: S,
    pub degree_bound: usize,
}

impl<S: Scalar> RealPoint<S> {
    pub fn new(value: S, degree_bound: usize) -> Self {
        Self { value, degree_bound }
    }
}

impl<S: Scalar> Group for RealPoint<S> {
    fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.degree_bound != rhs.degree_bound {
            return Err(Error::DegreeMismatch {
                left: self.degree_bound,
                right: rhs.degree_bound,
            });
        }
        Ok(Self::new(self.value.clone() + rhs.value.clone(), self.degree_bound))
    }

    fn inv(&self) -> Self {
        Self::new(-self.value.clone(), self.degree_bound)
    }

    fn identity_like(&self) -> Self {
        Self::new(S::zero(), self.degree_bound)
    }

    fn is_identity(&self) -> bool {
        self.value.is_zero()
    }
}

impl<S: Scalar> Filtered for RealPoint<S> {
    fn steps(&self) -> usize {
        self.degree_bound
    }

    fn in_filtration(&self, i: usize) -> bool {
        i <= self.degree_bound || self.is_identity()
    }
}

impl<S: Scalar> Lattice for RealPoint<S> {
    fn in_lattice(&self) -> Result<bool> {
        self.value.is_integer().ok_or(Error::NotExact("integer lattice membership"))
    }

    fn reduce(&self) -> (Self, Self) {
        let whole = self.value.floor();
        (
            Self::new(self.value.clone() - whole.clone(), self.degree_bound),
            Self::new(-whole, self.degree_bound),
        )
    }
}
