use num_complex::Complex64;

use super::Bump;
use crate::nilgroup::{HeisPoint, Lattice};
use crate::scalar::{e, Rational, Scalar};

/// `F(x, y, z) = phi({x}) e(z - y floor(x))`, evaluated through the
/// fundamental-domain representative.
pub fn heis_f<S: Scalar, B: Bump>(g: &HeisPoint<S>, phi: &B) -> Complex64 {
    let (r, _) = g.reduce();
    e(r.z.to_f64()) * phi.eval(r.x.to_f64())
}

/// The periodic quadratic nilsequence `t -> F(t/N, 2at/N, a t^2/N^2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeisNilsequence<B = super::StandardBump> {
    pub n: u64,
    pub a: i64,
    pub phi: B,
}

impl<B: Bump> HeisNilsequence<B> {
    pub fn new(n: u64, a: i64, phi: B) -> crate::Result<Self> {
        if n == 0 {
            return Err(crate::Error::InvalidParameter("N must be positive".into()));
        }
        Ok(Self { n, a, phi })
    }

    /// `t -> (t/N, 2at/N, a t^2/N^2)`, exactly.
    pub fn p(&self, t: i64) -> HeisPoint<Rational> {
        let n = self.n as i64;
        let t_over_n = Rational::from_ratio(t, n);
        HeisPoint::new(
            t_over_n.clone(),
            t_over_n.clone() * Rational::from_i64(2 * self.a),
            t_over_n.clone() * t_over_n * Rational::from_i64(self.a),
        )
    }

    pub fn eval(&self, t: i64) -> Complex64 {
        heis_f(&self.p(t), &self.phi)
    }

    /// `p(t + N) p(t)^-1`, the same lattice element for every `t`.
    pub fn witness(&self) -> HeisPoint<Rational> {
        HeisPoint::from_ints(1, 2 * self.a, self.a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilgroup::Group;
    use crate::nilseq::StandardBump;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn map_examples() {
        let seq = HeisNilsequence::new(5, 1, StandardBump).unwrap();
        let r = |n, d| Rational::from_ratio(n, d);
        assert_eq!(seq.p(7), HeisPoint::new(r(7, 5), r(14, 5), r(49, 25)));
        assert!(seq.p(0).is_identity());
        assert_eq!(seq.p(5), HeisPoint::from_ints(1, 2, 1));
    }

    #[test]
    fn f_examples() {
        let phi = StandardBump;
        let g = HeisPoint::new(0.25, 0.7, 0.3);
        assert!(close(heis_f(&g, &phi), e(0.3), 1e-12));
        for (y, z) in [(0.1, 0.2), (-3.5, 7.25)] {
            assert_eq!(heis_f(&HeisPoint::new(0.75, y, z), &phi), Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn f_is_automorphic() {
        let phi = StandardBump;
        let g = HeisPoint::new(Rational::from_ratio(13, 7), Rational::from_ratio(-5, 3), Rational::from_ratio(9, 11));
        let base = heis_f(&g, &phi);
        for (a, b, c) in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-2, 3, 5), (4, -1, -7)] {
            let gamma = HeisPoint::from_ints(a, b, c);
            assert!(close(heis_f(&gamma.heis_mul(&g), &phi), base, 1e-12));
        }
    }

    #[test]
    fn nilsequence_examples() {
        let seq = HeisNilsequence::new(5, 1, StandardBump).unwrap();
        let expected = e(4.0 / 25.0) * (-9.0f64).exp();
        assert!(close(seq.eval(2), expected, 1e-12));
        assert_eq!(seq.eval(0), Complex64::new(0.0, 0.0));
        assert!(close(seq.eval(7), seq.eval(2), 1e-12));
    }
}
