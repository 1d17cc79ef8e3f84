use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use super::CyclicFn;
use crate::error::{Error, Result};

/// Largest supported order `k` of `U^k`.
pub const MAX_ORDER: usize = 5;

const RESIDUE_RATIO: f64 = 1e-9;

/// Neumaier-compensated complex accumulator.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Compensated {
    re: (f64, f64),
    im: (f64, f64),
}

fn neumaier(acc: &mut (f64, f64), v: f64) {
    let (sum, c) = acc;
    let t = *sum + v;
    if sum.abs() >= v.abs() {
        *c += (*sum - t) + v;
    } else {
        *c += (v - t) + *sum;
    }
    *sum = t;
}

impl Compensated {
    pub(crate) fn add(&mut self, v: Complex64) {
        neumaier(&mut self.re, v.re);
        neumaier(&mut self.im, v.im);
    }

    pub(crate) fn total(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

pub(crate) fn compensated_sum(values: impl IntoIterator<Item = Complex64>) -> Complex64 {
    let mut acc = Compensated::default();
    for v in values {
        acc.add(v);
    }
    acc.total()
}

fn check_order(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter("Gowers norm order must be at least 1".into()));
    }
    if k > MAX_ORDER {
        return Err(Error::InvalidParameter(format!(
            "Gowers norm order {k} exceeds the supported maximum {MAX_ORDER}"
        )));
    }
    Ok(())
}

/// `||f||_{U^k}^{2^k}` on the support list `support` (indices where `values` is nonzero).
fn power(values: &[Complex64], support: &[usize], k: usize) -> Complex64 {
    let n = values.len();
    if k == 1 {
        let mean = compensated_sum(support.iter().map(|&x| values[x])) / n as f64;
        return mean * mean.conj();
    }
    let mut deriv = vec![Complex64::new(0.0, 0.0); n];
    let mut next_support = Vec::with_capacity(support.len());
    let mut acc = Compensated::default();
    for h in 0..n {
        derive(values, support, h, &mut deriv, &mut next_support);
        if !next_support.is_empty() {
            acc.add(power(&deriv, &next_support, k - 1));
        }
    }
    acc.total() / n as f64
}

/// Writes `f(x + h) conj(f(x))` into `deriv` over its support, clearing the previous support first.
fn derive(
    values: &[Complex64],
    support: &[usize],
    h: usize,
    deriv: &mut [Complex64],
    next_support: &mut Vec<usize>,
) {
    let n = values.len();
    for &x in next_support.iter() {
        deriv[x] = Complex64::new(0.0, 0.0);
    }
    next_support.clear();
    for &x in support {
        let shifted = values[(x + h) % n];
        if shifted != Complex64::new(0.0, 0.0) {
            deriv[x] = shifted * values[x].conj();
            next_support.push(x);
        }
    }
}

/// `||f||_{U^k}^{2^k}` as a complex number, before the imaginary residue is discarded.
///
/// The outer average over `h` runs in parallel; terms are summed in ascending `h`.
pub fn u_norm_power(f: &CyclicFn, k: usize) -> Result<Complex64> {
    check_order(k)?;
    let values = f.values();
    let n = values.len();
    let support: Vec<usize> = (0..n).filter(|&x| values[x] != Complex64::new(0.0, 0.0)).collect();
    if k == 1 {
        return Ok(power(values, &support, 1));
    }
    let terms: Vec<Complex64> = (0..n)
        .into_par_iter()
        .map(|h| {
            let mut deriv = vec![Complex64::new(0.0, 0.0); n];
            let mut next_support = Vec::with_capacity(support.len());
            derive(values, &support, h, &mut deriv, &mut next_support);
            if next_support.is_empty() {
                Complex64::new(0.0, 0.0)
            } else {
                power(&deriv, &next_support, k - 1)
            }
        })
        .collect();
    Ok(compensated_sum(terms) / n as f64)
}

/// The Gowers `U^k` norm on `Z/NZ`, via the recursion
/// `||f||_{U^k}^{2^k} = E_h ||D_h f||_{U^{k-1}}^{2^{k-1}}` with `||f||_{U^1} = |E f|`.
pub fn u_norm(f: &CyclicFn, k: usize) -> Result<f64> {
    let total = u_norm_power(f, k)?;
    let bound = RESIDUE_RATIO * total.re.abs();
    if total.im.abs() > bound {
        return Err(Error::Residue {
            residue: total.im.abs(),
            bound,
        });
    }
    Ok(total.norm().powf(1.0 / (1u64 << k) as f64))
}

/// Normalized Fourier coefficients `E_x f(x) e(-x xi / N)`.
pub fn fourier_coefficients(f: &CyclicFn) -> Vec<Complex64> {
    let n = f.len();
    let mut buffer = f.values().to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut buffer);
    buffer.iter().map(|c| c / n as f64).collect()
}

/// `U^2` norm from `||f||_{U^2}^4 = sum_xi |f^(xi)|^4`.
pub fn u2_via_fft(f: &CyclicFn) -> f64 {
    let fourth: f64 = fourier_coefficients(f).iter().map(|c| c.norm_sqr().powi(2)).sum();
    fourth.powf(0.25)
}

/// `|E_x f(x) conj(g(x))|`
pub fn correlation(f: &CyclicFn, g: &CyclicFn) -> Result<f64> {
    if f.len() != g.len() {
        return Err(Error::LengthMismatch(f.len(), g.len()));
    }
    let sum = compensated_sum(f.values().iter().zip(g.values()).map(|(a, b)| a * b.conj()));
    Ok((sum / f.len() as f64).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::e;

    fn func(n: usize, f: impl Fn(i64) -> Complex64) -> CyclicFn {
        CyclicFn::from_fn(n, f).unwrap()
    }

    fn one(_: i64) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn constant_has_norm_one() {
        for k in 1..=4 {
            assert!((u_norm(&func(7, one), k).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn linear_character_u2() {
        let n = 11;
        let f = func(n, |x| e(x as f64 / n as f64));
        assert!((u_norm(&f, 2).unwrap() - 1.0).abs() < 1e-12);
        assert!(u_norm(&f, 1).unwrap() < 1e-12);
    }

    #[test]
    fn delta_u2() {
        for n in [5usize, 16, 30] {
            let f = func(n, |x| if x == 0 { one(0) } else { Complex64::new(0.0, 0.0) });
            let expected = (n as f64).powf(-0.75);
            assert!((u_norm(&f, 2).unwrap() - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn quadratic_phase_u3() {
        let f = func(5, |x| e((x * x) as f64 / 5.0));
        assert!((u_norm(&f, 3).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn order_limits() {
        let f = func(4, one);
        assert!(u_norm(&f, 0).is_err());
        assert!(u_norm(&f, MAX_ORDER + 1).is_err());
    }

    #[test]
    fn fft_examples() {
        let n = 32;
        let f = func(n, |x| e(3.0 * x as f64 / n as f64));
        assert!((u2_via_fft(&f) - 1.0).abs() < 1e-12);
        assert_eq!(u2_via_fft(&func(n, |_| Complex64::new(0.0, 0.0))), 0.0);
    }

    #[test]
    fn correlation_examples() {
        let n = 12;
        let c1 = func(n, |x| e(x as f64 / n as f64));
        let c2 = func(n, |x| e(2.0 * x as f64 / n as f64));
        assert!((correlation(&c1, &c1).unwrap() - 1.0).abs() < 1e-12);
        assert!(correlation(&c1, &c2).unwrap() < 1e-12);
        assert_eq!(correlation(&c1, &func(n, |_| Complex64::new(0.0, 0.0))).unwrap(), 0.0);
        assert!(correlation(&c1, &func(5, one)).is_err());
    }
}
