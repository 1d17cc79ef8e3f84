use num_complex::Complex64;

use super::{u_norm, CyclicFn, IntervalFn};
use crate::error::{Error, Result};

/// `U^k` norm on an interval, normalized so the indicator of the interval has norm 1.
///
/// The interval is embedded in `Z/(2^{k+1} M)`.
pub fn interval_u_norm(f: &IntervalFn, k: usize) -> Result<f64> {
    let modulus = (1usize << (k + 1)) * f.len();
    interval_u_norm_with_modulus(f, k, modulus)
}

/// As [`interval_u_norm`] with an explicit embedding modulus. Any modulus with
/// `modulus >= 2M - 1` gives the same value: no 2-face `x - y - z + w` of
/// points in the interval can wrap around.
pub fn interval_u_norm_with_modulus(f: &IntervalFn, k: usize, modulus: usize) -> Result<f64> {
    if modulus + 1 < 2 * f.len() {
        return Err(Error::InvalidParameter(format!(
            "modulus {modulus} is too small for an interval of length {}",
            f.len()
        )));
    }
    let num = u_norm(&f.embed(modulus)?, k)?;
    let den = u_norm(&f.indicator().embed(modulus)?, k)?;
    Ok(num / den)
}

/// The ratio `||f|_J||_{U^k(J)} / ||f||_{U^k(Z/NZ)}` for `J = start..start + len`.
pub fn lemma_constant(f: &CyclicFn, start: i64, len: usize, k: usize) -> Result<f64> {
    let restricted: Vec<Complex64> = (0..len as i64).map(|i| f.at(start + i)).collect();
    let interval = IntervalFn::new(start, restricted)?;
    Ok(interval_u_norm(&interval, k)? / u_norm(f, k)?)
}

/// The same constant computed without any `f`: `1 / ||1_J||_{U^k(Z/NZ)}`.
pub fn window_constant(n: usize, len: usize, k: usize) -> Result<f64> {
    if len == 0 || len > n {
        return Err(Error::InvalidParameter(format!("window length {len} not in 1..={n}")));
    }
    let indicator = CyclicFn::from_fn(n, |x| {
        if (x as usize) < len {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })?;
    Ok(1.0 / u_norm(&indicator, k)?)
}

/// Brute-forces every `(x, y, z, w)` in `{0..j_size-1}^4` with
/// `x - y - z + w = 0 (mod n)` and returns the first one (lexicographically)
/// with `x - y - z + w != 0`. Checking 2-dimensional faces suffices for every
/// order `s >= 1`.
pub fn parallelepiped_check(j_size: usize, n: usize, s: usize) -> Result<Option<[i64; 4]>> {
    if s == 0 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    if j_size > n || n == 0 {
        return Err(Error::InvalidParameter(format!("need 1 <= |J| <= N, got |J| = {j_size}, N = {n}")));
    }
    let (j, n) = (j_size as i64, n as i64);
    for x in 0..j {
        for y in 0..j {
            for z in 0..j {
                for w in 0..j {
                    let d = x - y - z + w;
                    if d != 0 && d % n == 0 {
                        return Ok(Some([x, y, z, w]));
                    }
                }
            }
        }
    }
    Ok(None)
}
