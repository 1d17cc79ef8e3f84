//! Nilsequences: bump windows, the explicit periodic Heisenberg nilsequence,
//! the periodic lift over the abelian base, and periodicity certificates.

mod bump;
mod heis;
mod lift;
mod periodic;

pub use bump::{Bump, StandardBump};
pub use heis::{heis_f, HeisNilsequence};
pub use lift::{lift_f_tilde, AbelianLift};
pub use periodic::{check_n_periodic, periodic_extension, PeriodicityCertificate};
