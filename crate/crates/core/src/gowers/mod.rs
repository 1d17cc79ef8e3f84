//! Gowers uniformity norms on cyclic groups and on integer intervals.

mod func;
mod generators;
mod interval;
mod norm;

pub use func::{CyclicFn, IntervalFn};
pub use generators::{GeneratorFn, GeneratorRegistry};
pub use interval::{
    interval_u_norm, interval_u_norm_with_modulus, lemma_constant, parallelepiped_check,
    window_constant,
};
pub use norm::{correlation, fourier_coefficients, u2_via_fft, u_norm, u_norm_power, MAX_ORDER};
