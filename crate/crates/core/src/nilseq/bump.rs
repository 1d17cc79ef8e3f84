/// A smooth cut-off on `R/Z` with values in `[0, 1]`, supported in `[0, 1/2]`.
pub trait Bump: Send + Sync + std::fmt::Debug {
    /// Evaluates at `u mod 1`.
    fn eval(&self, u: f64) -> f64;
}

/// `exp(16 - 1/(u (1/2 - u)))` on `(0, 1/2)`, zero elsewhere. Peaks at `u = 1/4` with value 1.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StandardBump;

impl Bump for StandardBump {
    fn eval(&self, u: f64) -> f64 {
        let v = u.rem_euclid(1.0);
        if v <= 0.0 || v >= 0.5 {
            return 0.0;
        }
        (16.0 - 1.0 / (v * (0.5 - v))).exp().min(1.0)
    }
}
