use num_complex::Complex64;

use super::Bump;
use crate::error::{Error, Result};
use crate::nilgroup::{Lattice, LiftedPoint};
use crate::polyalg::RatPoly;
use crate::scalar::{e, Rational, Scalar};

/// `F~(q, t) = phi({t}) e(q(-floor t))`, computed from the fundamental-domain
/// representative `(r, {t})` as `phi({t}) e(r(0))`. Depends on `phi` only.
pub fn lift_f_tilde<S: Scalar, B: Bump>(g: &LiftedPoint<S>, phi: &B) -> Complex64 {
    let (r, _) = g.reduce();
    let at_zero = r.q.coeffs()[0].to_f64();
    e(at_zero) * phi.eval(r.t.to_f64())
}

/// The periodic lift of the real polynomial phase `x -> p(x)` to the group of
/// degree-`s` polynomials extended by the shift action.
#[derive(Debug, Clone, PartialEq)]
pub struct AbelianLift<B = super::StandardBump> {
    p: RatPoly,
    n: u64,
    phi: B,
    q: RatPoly,
}

impl<B: Bump> AbelianLift<B> {
    pub fn new(p: RatPoly, n: u64, phi: B) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("N must be positive".into()));
        }
        let q = p.rescale(n);
        Ok(Self { p, n, phi, q })
    }

    pub fn p(&self) -> &RatPoly {
        &self.p
    }

    /// `q(y) = p(N y)`
    pub fn q(&self) -> &RatPoly {
        &self.q
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn phi(&self) -> &B {
        &self.phi
    }

    pub fn degree_bound(&self) -> usize {
        self.p.degree_bound()
    }

    /// `x -> (0, x/N) * (q, 0) = (q(. + x/N), x/N)`.
    pub fn p_tilde(&self, x: i64) -> LiftedPoint<Rational> {
        let t = Rational::from_ratio(x, self.n as i64);
        LiftedPoint::new(self.q.shift(&t), t)
    }

    pub fn eval(&self, x: i64) -> Complex64 {
        lift_f_tilde(&self.p_tilde(x), &self.phi)
    }

    /// `p~(x + N) p~(x)^-1`, constant in `x`.
    pub fn witness(&self) -> LiftedPoint<Rational> {
        LiftedPoint::translation(Rational::from_i64(1), self.degree_bound())
            .expect("degree bound is at least 1")
    }

    /// True when the top monomial coefficient of `q` is an integer `c`. Then the
    /// lattice element `(-c y^s, 0)` moves every `p~(x)` into `G~_1`, and for
    /// `s = 2` the result is the Heisenberg construction with integer `a = c`.
    pub fn image_in_g1(&self) -> bool {
        let s = self.degree_bound();
        self.q.coeffs()[s].is_integer()
    }

    /// True when every `p~(x)` lies in the coset space `Gamma~ G~_1`, i.e. the top
    /// binomial coordinate of `q` is an integer. Weaker than [`Self::image_in_g1`].
    pub fn coset_in_g1(&self) -> bool {
        let s = self.degree_bound();
        self.q.to_binomial().coeffs()[s].is_integer()
    }
}
