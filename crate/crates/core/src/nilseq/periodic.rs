use num_complex::Complex64;
use serde::Serialize;

use super::Bump;
use crate::error::{Error, Result};
use crate::gowers::CyclicFn;
use crate::nilgroup::Lattice;
use crate::scalar::mod_floor;

/// Outcome of [`check_n_periodic`]; witnesses are the distinct lattice elements
/// `p(x + N) p(x)^-1` in order of first appearance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodicityCertificate<G> {
    pub passed: bool,
    pub witnesses: Vec<G>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<i64>,
}

/// Certifies `p(x + N) p(x)^-1` lies in the lattice for every sampled `x`.
pub fn check_n_periodic<G, P, I>(p: P, n: u64, samples: I) -> Result<PeriodicityCertificate<G>>
where
    G: Lattice,
    P: Fn(i64) -> G,
    I: IntoIterator<Item = i64>,
{
    if n == 0 {
        return Err(Error::InvalidParameter("N must be positive".into()));
    }
    let n = n as i64;
    let mut witnesses: Vec<G> = Vec::new();
    for x in samples {
        let w = p(x + n).mul(&p(x).inv())?;
        if !w.in_lattice()? {
            return Ok(PeriodicityCertificate {
                passed: false,
                witnesses,
                counterexample: Some(x),
            });
        }
        if !witnesses.contains(&w) {
            witnesses.push(w);
        }
    }
    Ok(PeriodicityCertificate {
        passed: true,
        witnesses,
        counterexample: None,
    })
}

/// `x -> phi({x/N}) f(x mod N)` with `x mod N` in `0..N`.
pub fn periodic_extension<'a, B: Bump>(f: &'a CyclicFn, phi: &'a B) -> impl Fn(i64) -> Complex64 + 'a {
    let n = f.len() as i64;
    move |x| {
        let rem = mod_floor(x, n);
        f.values()[rem as usize] * phi.eval(rem as f64 / n as f64)
    }
}
