//! Stand-ins for the inverse theorem: given a bounded function on an interval,
//! find a polynomial phase that correlates with it.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::gowers::{fourier_coefficients, u_norm, IntervalFn};
use crate::polyalg::{Poly, RatPoly};
use crate::scalar::{e, e_scalar, Rational, Scalar};

/// Default decline threshold for all shipped oracles.
pub const DECLINE_BELOW: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleClaim {
    pub p: RatPoly,
    /// Claimed lower bound for `|E_{x in J} g(x) conj(e(p(x)))|`.
    pub correlation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum OracleOutcome {
    Found(OracleClaim),
    Declined { best: f64 },
}

pub trait InverseOracle: Send + Sync {
    fn kind(&self) -> &str;

    /// Heuristic oracles carry no correlation guarantee.
    fn heuristic(&self) -> bool {
        false
    }

    fn find(&self, g: &IntervalFn, s: usize) -> Result<OracleOutcome>;
}

/// `|E_{x in J} g(x) conj(e(p(x)))|`, with `p(x)` reduced mod 1 exactly.
pub fn window_correlation(g: &IntervalFn, p: &RatPoly) -> f64 {
    let sum: Complex64 = g
        .points()
        .map(|(x, v)| v * e_scalar(&p.eval(&Rational::from_i64(x))).conj())
        .sum();
    (sum / g.len() as f64).norm()
}

/// Largest Fourier coefficient of `g` embedded in `Z/8M`: rigorous for `U^2`.
#[derive(Debug, Clone)]
pub struct FourierOracle {
    pub decline_below: f64,
}

impl Default for FourierOracle {
    fn default() -> Self {
        Self {
            decline_below: DECLINE_BELOW,
        }
    }
}

impl FourierOracle {
    pub fn modulus(len: usize) -> usize {
        8 * len
    }
}

impl InverseOracle for FourierOracle {
    fn kind(&self) -> &str {
        "fourier"
    }

    fn find(&self, g: &IntervalFn, s: usize) -> Result<OracleOutcome> {
        let modulus = Self::modulus(g.len());
        let embedded = g.embed(modulus)?;
        let coeffs = fourier_coefficients(&embedded);
        let (xi, best) = coeffs
            .iter()
            .enumerate()
            .fold((0, 0.0f64), |(bi, bv), (i, c)| if c.norm() > bv { (i, c.norm()) } else { (bi, bv) });
        // normalized over J instead of Z/8M
        let c = best * modulus as f64 / g.len() as f64;

        // |g^(xi*)|^2 >= sum |g^|^4 >= ||g||_{U^2}^4 since |g| <= 1
        let u2 = u_norm(&embedded, 2)?;
        if best + 1e-12 < u2 * u2 {
            return Err(Error::CheckFailed(format!(
                "Fourier inverse bound: max coefficient {best:e} < U2^2 {:e}",
                u2 * u2
            )));
        }
        if c < self.decline_below {
            return Ok(OracleOutcome::Declined { best: c });
        }
        let p = Poly::new(vec![Rational::from_i64(0), Rational::from_ratio(xi as i64, modulus as i64)])?
            .with_degree_bound(s.max(1))?;
        Ok(OracleOutcome::Found(OracleClaim { p, correlation: c }))
    }
}

/// Exhaustive search over `alpha x^2 + beta x` with `alpha` in `(1/K^2) Z`
/// (every `stride`-th value) and `beta` in `(1/K) Z`, `K = 8M`. No guarantee.
#[derive(Debug, Clone)]
pub struct QuadraticGridOracle {
    pub stride: u64,
    pub decline_below: f64,
    pub max_len: usize,
}

impl Default for QuadraticGridOracle {
    fn default() -> Self {
        Self {
            stride: 1,
            decline_below: DECLINE_BELOW,
            max_len: 64,
        }
    }
}

impl QuadraticGridOracle {
    fn best_for_alpha(
        &self,
        g: &IntervalFn,
        modulus: usize,
        alpha_index: u64,
        fft: &Arc<dyn Fft<f64>>,
    ) -> (f64, usize) {
        let k2 = (modulus * modulus) as i128;
        let mut buffer = vec![Complex64::new(0.0, 0.0); modulus];
        for (x, v) in g.points() {
            let phase = (alpha_index as i128 * (x as i128) * (x as i128)).rem_euclid(k2);
            buffer[x.rem_euclid(modulus as i64) as usize] = v * e(phase as f64 / k2 as f64).conj();
        }
        fft.process(&mut buffer);
        buffer
            .iter()
            .enumerate()
            .fold((0.0f64, 0usize), |(bv, bj), (j, c)| if c.norm() > bv { (c.norm(), j) } else { (bv, bj) })
    }
}

impl InverseOracle for QuadraticGridOracle {
    fn kind(&self) -> &str {
        "quadratic-grid"
    }

    fn heuristic(&self) -> bool {
        true
    }

    fn find(&self, g: &IntervalFn, s: usize) -> Result<OracleOutcome> {
        if g.len() > self.max_len {
            return Err(Error::InvalidParameter(format!(
                "quadratic grid search limited to intervals of length <= {}, got {}",
                self.max_len,
                g.len()
            )));
        }
        if self.stride == 0 {
            return Err(Error::InvalidParameter("grid stride must be positive".into()));
        }
        let modulus = FourierOracle::modulus(g.len());
        let fft = FftPlanner::new().plan_fft_forward(modulus);
        let alphas: Vec<u64> = (0..(modulus * modulus) as u64).step_by(self.stride as usize).collect();
        let per_alpha: Vec<(f64, usize)> = alphas
            .par_iter()
            .map(|&a| self.best_for_alpha(g, modulus, a, &fft))
            .collect();
        let mut best = (0.0f64, 0u64, 0usize);
        for (&a, &(v, j)) in alphas.iter().zip(&per_alpha) {
            if v > best.0 {
                best = (v, a, j);
            }
        }
        let c = best.0 / g.len() as f64;
        if c < self.decline_below {
            return Ok(OracleOutcome::Declined { best: c });
        }
        let m = modulus as i64;
        let p = Poly::new(vec![
            Rational::from_i64(0),
            Rational::from_ratio(best.2 as i64, m),
            Rational::from_ratio(best.1 as i64, m * m),
        ])?
        .with_degree_bound(s.max(2))?;
        Ok(OracleOutcome::Found(OracleClaim { p, correlation: c }))
    }
}

/// A caller-supplied phase polynomial, for orders with no shipped oracle.
/// Without an explicit claim the measured window correlation is claimed.
#[derive(Debug, Clone)]
pub struct ExternalOracle {
    pub p: RatPoly,
    pub claimed: Option<f64>,
    pub decline_below: f64,
}

impl InverseOracle for ExternalOracle {
    fn kind(&self) -> &str {
        "external"
    }

    fn find(&self, g: &IntervalFn, s: usize) -> Result<OracleOutcome> {
        let p = self.p.with_degree_bound(s.max(self.p.degree_bound()))?;
        let c = self.claimed.unwrap_or_else(|| window_correlation(g, &p));
        if c < self.decline_below {
            return Ok(OracleOutcome::Declined { best: c });
        }
        Ok(OracleOutcome::Found(OracleClaim { p, correlation: c }))
    }
}

/// Construction parameters shared by the registered oracles.
#[derive(Debug, Clone)]
pub struct OracleParams {
    pub decline_below: f64,
    pub grid_stride: u64,
    pub external: Option<(RatPoly, Option<f64>)>,
}

impl Default for OracleParams {
    fn default() -> Self {
        Self {
            decline_below: DECLINE_BELOW,
            grid_stride: 1,
            external: None,
        }
    }
}

pub type OracleFactory = Box<dyn Fn(&OracleParams) -> Result<Box<dyn InverseOracle>> + Send + Sync>;

/// Oracles addressable by name.
pub struct OracleRegistry {
    factories: BTreeMap<String, OracleFactory>,
}

impl Default for OracleRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl OracleRegistry {
    pub fn empty() -> Self {
        Self {
            factories: BTreeMap::new(),
        }
    }

    /// `fourier`, `quadratic-grid` and `external`.
    pub fn builtin() -> Self {
        let mut reg = Self::empty();
        reg.register(
            "fourier",
            Box::new(|params| {
                Ok(Box::new(FourierOracle {
                    decline_below: params.decline_below,
                }))
            }),
        );
        reg.register(
            "quadratic-grid",
            Box::new(|params| {
                Ok(Box::new(QuadraticGridOracle {
                    stride: params.grid_stride,
                    decline_below: params.decline_below,
                    ..QuadraticGridOracle::default()
                }))
            }),
        );
        reg.register(
            "external",
            Box::new(|params| {
                let (p, claimed) = params.external.clone().ok_or_else(|| {
                    Error::InvalidParameter("the external oracle needs a polynomial".into())
                })?;
                Ok(Box::new(ExternalOracle {
                    p,
                    claimed,
                    decline_below: params.decline_below,
                }))
            }),
        );
        reg
    }

    pub fn register(&mut self, name: &str, factory: OracleFactory) {
        self.factories.insert(name.to_string(), factory);
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.factories.keys().map(String::as_str)
    }

    pub fn create(&self, name: &str, params: &OracleParams) -> Result<Box<dyn InverseOracle>> {
        let factory = self.factories.get(name).ok_or_else(|| Error::UnknownStrategy {
            kind: "oracle",
            name: name.to_string(),
        })?;
        factory(params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn interval(len: usize, f: impl Fn(i64) -> Complex64) -> IntervalFn {
        IntervalFn::new(0, (0..len as i64).map(f).collect()).unwrap()
    }

    fn found(outcome: OracleOutcome) -> OracleClaim {
        match outcome {
            OracleOutcome::Found(claim) => claim,
            other => panic!("expected a claim, got {other:?}"),
        }
    }

    #[test]
    fn fourier_finds_a_pure_frequency() {
        let len = 16;
        let modulus = FourierOracle::modulus(len) as f64;
        let g = interval(len, |x| e(3.0 * x as f64 / modulus));
        let claim = found(FourierOracle::default().find(&g, 1).unwrap());
        assert_eq!(claim.p.coeffs()[1], Rational::from_ratio(3, 128));
        assert!((claim.correlation - 1.0).abs() < 1e-12);
        assert!((window_correlation(&g, &claim.p) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fourier_declines_on_zero() {
        let g = interval(10, |_| Complex64::new(0.0, 0.0));
        assert_eq!(
            FourierOracle::default().find(&g, 1).unwrap(),
            OracleOutcome::Declined { best: 0.0 }
        );
    }

    #[test]
    fn fourier_bound_on_random_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let values: Vec<Complex64> = (0..64).map(|_| e(rng.gen())).collect();
        let g = IntervalFn::new(0, values).unwrap();
        let claim = found(FourierOracle::default().find(&g, 1).unwrap());
        let u2 = u_norm(&g.embed(FourierOracle::modulus(64)).unwrap(), 2).unwrap();
        assert!(claim.correlation + 1e-10 >= u2 * u2);
        assert!(window_correlation(&g, &claim.p) + 1e-10 >= claim.correlation);
    }

    #[test]
    fn grid_recovers_a_planted_quadratic() {
        let len = 8;
        let k = FourierOracle::modulus(len) as f64;
        let g = interval(len, |x| e(2.0 * (x * x) as f64 / (k * k)));
        let claim = found(QuadraticGridOracle::default().find(&g, 2).unwrap());
        assert_eq!(claim.p.coeffs()[2], Rational::from_ratio(2, 64 * 64));
        assert_eq!(claim.p.coeffs()[1], Rational::from_i64(0));
        assert!((claim.correlation - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grid_on_constant_is_trivial() {
        let g = interval(6, |_| Complex64::new(1.0, 0.0));
        let claim = found(QuadraticGridOracle::default().find(&g, 2).unwrap());
        assert!(claim.p.is_zero());
        assert!((claim.correlation - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grid_rejects_long_intervals() {
        let g = interval(65, |_| Complex64::new(1.0, 0.0));
        assert!(QuadraticGridOracle::default().find(&g, 2).is_err());
    }

    #[test]
    fn registry_lookup() {
        let reg = OracleRegistry::builtin();
        assert_eq!(reg.names().collect::<Vec<_>>(), vec!["external", "fourier", "quadratic-grid"]);
        let params = OracleParams::default();
        assert_eq!(reg.create("fourier", &params).unwrap().kind(), "fourier");
        assert!(reg.create("quadratic-grid", &params).unwrap().heuristic());
        assert!(reg.create("external", &params).is_err());
        assert!(matches!(reg.create("gtz", &params), Err(Error::UnknownStrategy { .. })));
    }

    #[test]
    fn external_claims_measured_correlation() {
        let g = interval(12, |x| e(x as f64 / 5.0));
        let p = Poly::new(vec![Rational::from_i64(0), Rational::from_ratio(1, 5)]).unwrap();
        let oracle = ExternalOracle {
            p,
            claimed: None,
            decline_below: DECLINE_BELOW,
        };
        let claim = found(oracle.find(&g, 3).unwrap());
        assert_eq!(claim.p.degree_bound(), 3);
        assert!((claim.correlation - 1.0).abs() < 1e-12);
    }
}
