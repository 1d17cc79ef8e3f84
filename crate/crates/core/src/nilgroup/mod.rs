//! Concrete nilpotent groups with lattices and filtrations.
//!
//! [`HeisPoint`] is the Heisenberg group with its integer lattice and the
//! 2-step filtration. [`LiftedPoint`] is the semidirect product of
//! degree-`s` real polynomials with the reals acting by shifts, with lattice
//! `integer-valued polynomials x integers`. [`RealPoint`] is the abelian base
//! `(R, Z)` with the degree-`s` filtration.

mod heisenberg;
mod lifted;
mod polymap;
mod real;

pub use heisenberg::HeisPoint;
pub use lifted::LiftedPoint;
pub use polymap::{polynomial_map_check, PolyMapReport, PolyMapViolation, SampleGrid};
pub use real::RealPoint;

use crate::error::Result;

pub trait Group: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn mul(&self, rhs: &Self) -> Result<Self>;
    fn inv(&self) -> Self;
    /// The identity of the group containing `self` (degree bounds carry over).
    fn identity_like(&self) -> Self;
    fn is_identity(&self) -> bool;
}

/// A group with a descending filtration `G_0 >= G_1 >= ... >= G_{steps+1} = {1}`.
pub trait Filtered: Group {
    fn steps(&self) -> usize;
    fn in_filtration(&self, i: usize) -> bool;
}

/// A group with a cocompact lattice and a fundamental domain.
pub trait Lattice: Group {
    /// Fails for non-exact scalars.
    fn in_lattice(&self) -> Result<bool>;

    /// Returns `(r, gamma)` with `gamma` in the lattice, `r = gamma * self`,
    /// and `r` the canonical fundamental-domain representative.
    fn reduce(&self) -> (Self, Self);
}

/// `g h g^-1 h^-1`
pub fn commutator<G: Group>(g: &G, h: &G) -> Result<G> {
    g.mul(h)?.mul(&g.inv())?.mul(&h.inv())
}
