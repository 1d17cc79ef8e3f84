use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::oracle::{window_correlation, FourierOracle, InverseOracle, OracleOutcome, DECLINE_BELOW};
use super::partition::{windowed_pieces, PartitionOfUnity, WindowBump};
use crate::error::{Error, Result};
use crate::gowers::{
    correlation, fourier_coefficients, interval_u_norm, u_norm, window_constant, CyclicFn,
    IntervalFn, MAX_ORDER,
};
use crate::nilgroup::{polynomial_map_check, LiftedPoint, RealPoint, SampleGrid};
use crate::nilseq::{check_n_periodic, periodic_extension, AbelianLift, Bump};
use crate::polyalg::{Poly, RatPoly};
use crate::scalar::{e_scalar, format_rational, Rational, Scalar};

/// Tolerance for the accounting identity and the final-correlation re-summation.
const ACCOUNTING_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct DeduceConfig {
    pub partition: PartitionOfUnity,
    /// Below this N the windowing is skipped and `f` is handled directly on `Z/N`.
    pub min_windowed_n: u64,
    /// Windows whose norm is within this relative distance of the maximum tie.
    pub tie_tolerance: f64,
    pub decline_below: f64,
}

impl Default for DeduceConfig {
    fn default() -> Self {
        Self {
            partition: PartitionOfUnity::standard(),
            min_windowed_n: 100,
            tie_tolerance: 1e-12,
            decline_below: DECLINE_BELOW,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Success,
    Declined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Windowed,
    SmallN,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<RatPoly>,
    /// The claimed correlation, or the best value seen when declining.
    pub c: f64,
    pub heuristic: bool,
}

/// `p(x + N) p(x)^-1`: an element of the lifted lattice, or an integer (written
/// as a fraction) for a plain phase on `Z/N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LiftWitness {
    Lifted(LiftedPoint<Rational>),
    Integer(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiftReport {
    pub p: RatPoly,
    #[serde(rename = "N")]
    pub n: u64,
    pub witness: LiftWitness,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeductionReport {
    #[serde(rename = "N")]
    pub n: u64,
    pub s: usize,
    pub status: Status,
    pub mode: Mode,
    /// Interval `U^{s+1}` norm of every windowed piece (empty for small N).
    pub norms: Vec<f64>,
    pub chosen_m: usize,
    /// The nilsequence correlates with `x -> f(x - offset)`.
    pub offset: i64,
    pub cyclic_norm: f64,
    /// `max_m norms[m] / cyclic_norm`, when the denominator is nonzero.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pigeonhole_ratio: Option<f64>,
    pub oracle: OracleReport,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lift: Option<LiftReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub window_correlation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub final_correlation: Option<f64>,
    pub passed_checks: Vec<String>,
}

/// A report together with the objects it describes.
#[derive(Debug, Clone)]
pub struct Deduction {
    pub report: DeductionReport,
    /// `x -> f(x - offset)`, the function the final nilsequence correlates with.
    pub shifted: CyclicFn,
    /// The N-periodic lift (windowed mode only).
    pub lift: Option<AbelianLift<WindowBump>>,
}

impl Deduction {
    /// The final nilsequence `psi'` at `x`, in shifted coordinates.
    pub fn psi_prime(&self, x: i64) -> Option<Complex64> {
        if let Some(lift) = &self.lift {
            return Some(lift.eval(x));
        }
        let lift = self.report.lift.as_ref()?;
        Some(e_scalar(&lift.p.eval(&Rational::from_i64(x))))
    }
}

/// Index of the largest norm; norms within `tie_tolerance` (relative) of the
/// maximum tie and the smallest index wins.
pub fn select_window(norms: &[f64], tie_tolerance: f64) -> usize {
    let max = norms.iter().copied().fold(0.0f64, f64::max);
    norms
        .iter()
        .position(|&v| v >= max * (1.0 - tie_tolerance))
        .unwrap_or(0)
}

fn check(passed: &mut Vec<String>, name: &str, ok: bool, detail: impl FnOnce() -> String) -> Result<()> {
    if !ok {
        return Err(Error::CheckFailed(format!("{name}: {}", detail())));
    }
    passed.push(name.to_string());
    Ok(())
}

/// Finds an N-periodic nilsequence correlating with `f` (`|f| <= 1`), using
/// `oracle` on the selected window. Every claim is re-verified; an internal
/// inconsistency is an error, an oracle decline is a `Declined` report.
pub fn deduce(f: &CyclicFn, s: usize, oracle: &dyn InverseOracle, config: &DeduceConfig) -> Result<Deduction> {
    if s == 0 || s + 1 > MAX_ORDER {
        return Err(Error::InvalidParameter(format!("s must lie in 1..={}", MAX_ORDER - 1)));
    }
    let sup = f.sup_norm();
    if sup > 1.0 + 1e-12 {
        return Err(Error::InvalidParameter(format!("input must satisfy |f| <= 1, found {sup}")));
    }
    let mut passed = vec!["sup-norm".to_string()];
    if (f.len() as u64) < config.min_windowed_n {
        small_n(f, s, config, passed)
    } else {
        windowed(f, s, oracle, config, &mut passed)
    }
}

fn windowed(
    f: &CyclicFn,
    s: usize,
    oracle: &dyn InverseOracle,
    config: &DeduceConfig,
    passed: &mut Vec<String>,
) -> Result<Deduction> {
    let n = f.len() as u64;
    let partition = &config.partition;
    let count = partition.len();

    let worst = (0..n)
        .map(|x| (partition.sum(x as f64 / n as f64) - 1.0).abs())
        .fold(0.0f64, f64::max);
    check(passed, "partition", worst <= 1e-12, || format!("sum of pieces deviates by {worst:e}"))?;

    let pieces = windowed_pieces(f, partition)?;
    let norms: Vec<f64> = pieces
        .par_iter()
        .map(|w| interval_u_norm(&w.piece, s + 1))
        .collect::<Result<_>>()?;
    let m = select_window(&norms, config.tie_tolerance);
    let best = norms[m];

    // ||f|| <= sum_m ||phi_m f||_{U(Z/N)} = sum_m norms[m] / C_m <= count * max / C_min,
    // where C_m = 1 / ||1_{J_m}||_{U(Z/N)} converts between the two normalizations.
    let cyclic_norm = u_norm(f, s + 1)?;
    let mut lengths: Vec<usize> = pieces.iter().map(|w| w.piece.len()).collect();
    lengths.sort_unstable();
    lengths.dedup();
    let c_min = lengths
        .iter()
        .map(|&len| window_constant(n as usize, len, s + 1))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    let bound = cyclic_norm * c_min / count as f64;
    check(passed, "pigeonhole", best * (1.0 + 1e-9) + 1e-12 >= bound, || {
        format!("largest window norm {best:e} below {bound:e}")
    })?;
    let pigeonhole_ratio = (cyclic_norm > 0.0).then(|| best / cyclic_norm);

    let shift = partition.window_shift(m, n);
    let shifted = f.rotate(shift);
    let window = &pieces[m].piece;
    let g = IntervalFn::new(window.offset - shift, window.values().to_vec())?;

    let mut report = DeductionReport {
        n,
        s,
        status: Status::Declined,
        mode: Mode::Windowed,
        norms,
        chosen_m: m,
        offset: -shift,
        cyclic_norm,
        pigeonhole_ratio,
        oracle: OracleReport {
            kind: oracle.kind().to_string(),
            p: None,
            c: 0.0,
            heuristic: oracle.heuristic(),
        },
        lift: None,
        window_correlation: None,
        final_correlation: None,
        passed_checks: Vec::new(),
    };

    let claim = match oracle.find(&g, s)? {
        OracleOutcome::Declined { best } => {
            report.oracle.c = best;
            report.passed_checks = passed.clone();
            return Ok(Deduction {
                report,
                shifted,
                lift: None,
            });
        }
        OracleOutcome::Found(claim) => claim,
    };
    let p = claim.p.with_degree_bound(claim.p.degree_bound().max(s))?;
    let c = claim.correlation;
    let measured = window_correlation(&g, &p);
    check(passed, "oracle-correlation", c > 0.0 && measured >= c * (1.0 - 1e-9), || {
        format!("claimed {c:e}, measured {measured:e}")
    })?;

    let lift = AbelianLift::new(p.clone(), n, WindowBump::new(partition.clone(), m, shift, n))?;
    let lift_check = check_lift(&lift)?;
    check(passed, "n-periodic", lift_check.0, || "p~(x + N) p~(x)^-1 left the lattice".into())?;
    check(passed, "polynomial-map", lift_check.1, || "a derivative left its filtration step".into())?;

    let psi_prime = CyclicFn::from_fn(n as usize, |x| lift.eval(x))?;
    let psi = CyclicFn::from_fn(n as usize, |x| e_scalar(&p.eval(&Rational::from_i64(x))))?;
    let plumbing = {
        let extension = periodic_extension(&psi, lift.phi());
        (-(n as i64)..2 * n as i64)
            .map(|x| (extension(x) - lift.eval(x)).norm())
            .fold(0.0f64, f64::max)
    };
    check(passed, "plumbing", plumbing <= 1e-9, || format!("deviation {plumbing:e}"))?;

    let final_correlation = correlation(&shifted, &psi_prime)?;
    let via_window = g.len() as f64 / n as f64 * measured;
    check(
        passed,
        "accounting",
        (final_correlation - via_window).abs() <= ACCOUNTING_TOLERANCE,
        || format!("{final_correlation:e} over Z/N against {via_window:e} via the window"),
    )?;

    if oracle.kind() == "fourier" {
        let modulus = FourierOracle::modulus(g.len());
        let u2 = u_norm(&g.embed(modulus)?, 2)?;
        let chain = modulus as f64 / n as f64 * u2 * u2;
        check(passed, "fourier-chain", final_correlation + 1e-10 >= chain, || {
            format!("{final_correlation:e} < {chain:e}")
        })?;
    }

    report.status = Status::Success;
    report.oracle.p = Some(p.clone());
    report.oracle.c = c;
    report.lift = Some(LiftReport {
        p,
        n,
        witness: LiftWitness::Lifted(lift.witness()),
    });
    report.window_correlation = Some(measured);
    report.final_correlation = Some(final_correlation);
    report.passed_checks = passed.clone();
    Ok(Deduction {
        report,
        shifted,
        lift: Some(lift),
    })
}

/// (periodicity with the expected witness, polynomial-map property)
fn check_lift<B: Bump>(lift: &AbelianLift<B>) -> Result<(bool, bool)> {
    let n = lift.n();
    let span = 2 * n as i64;
    let cert = check_n_periodic(|x| lift.p_tilde(x), n, -span..=span)?;
    let periodic = cert.passed && cert.witnesses == vec![lift.witness()];
    let map = polynomial_map_check(|x| lift.p_tilde(x), &SampleGrid::standard(n))?;
    Ok((periodic, map.passed()))
}

/// For small N the windowing buys nothing: take the largest Fourier
/// coefficient of `f` on `Z/N` directly.
fn small_n(f: &CyclicFn, s: usize, config: &DeduceConfig, mut passed: Vec<String>) -> Result<Deduction> {
    let n = f.len() as u64;
    let cyclic_norm = u_norm(f, s + 1)?;
    let coeffs = fourier_coefficients(f);
    let (xi, c) = coeffs
        .iter()
        .enumerate()
        .fold((0, 0.0f64), |(bi, bv), (i, v)| if v.norm() > bv { (i, v.norm()) } else { (bi, bv) });

    let mut report = DeductionReport {
        n,
        s,
        status: Status::Declined,
        mode: Mode::SmallN,
        norms: Vec::new(),
        chosen_m: 0,
        offset: 0,
        cyclic_norm,
        pigeonhole_ratio: None,
        oracle: OracleReport {
            kind: "cyclic-fourier".into(),
            p: None,
            c,
            heuristic: false,
        },
        lift: None,
        window_correlation: None,
        final_correlation: None,
        passed_checks: Vec::new(),
    };
    if c < config.decline_below {
        report.passed_checks = passed;
        return Ok(Deduction {
            report,
            shifted: f.clone(),
            lift: None,
        });
    }

    let p = Poly::new(vec![Rational::from_i64(0), Rational::from_ratio(xi as i64, n as i64)])?
        .with_degree_bound(s)?;
    let point = |x: i64| RealPoint::new(p.eval(&Rational::from_i64(x)), s);
    let span = 2 * n as i64;
    let cert = check_n_periodic(point, n, -span..=span)?;
    let witness = Rational::from_i64(xi as i64);
    let periodic = cert.passed && cert.witnesses == vec![RealPoint::new(witness.clone(), s)];
    check(&mut passed, "n-periodic", periodic, || "p(x + N) - p(x) is not an integer".into())?;
    let map = polynomial_map_check(point, &SampleGrid::standard(n))?;
    check(&mut passed, "polynomial-map", map.passed(), || "derivative check failed".into())?;

    let psi = CyclicFn::from_fn(n as usize, |x| e_scalar(&p.eval(&Rational::from_i64(x))))?;
    let final_correlation = correlation(f, &psi)?;
    check(
        &mut passed,
        "accounting",
        (final_correlation - c).abs() <= ACCOUNTING_TOLERANCE,
        || format!("{final_correlation:e} against Fourier coefficient {c:e}"),
    )?;

    report.status = Status::Success;
    report.oracle.p = Some(p.clone());
    report.lift = Some(LiftReport {
        p,
        n,
        witness: LiftWitness::Integer(format_rational(&witness)),
    });
    report.window_correlation = Some(c);
    report.final_correlation = Some(final_correlation);
    report.passed_checks = passed;
    Ok(Deduction {
        report,
        shifted: f.clone(),
        lift: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::{ExternalOracle, QuadraticGridOracle};
    use crate::scalar::e;

    fn character(n: usize, k: i64) -> CyclicFn {
        CyclicFn::from_fn(n, |x| e((k * x) as f64 / n as f64)).unwrap()
    }

    #[test]
    fn character_succeeds_with_fourier_oracle() {
        let f = character(200, 3);
        let d = deduce(&f, 1, &FourierOracle::default(), &DeduceConfig::default()).unwrap();
        let r = &d.report;
        assert_eq!(r.status, Status::Success);
        assert_eq!(r.mode, Mode::Windowed);
        assert_eq!(r.norms.len(), 20);
        assert_eq!(r.chosen_m, 0);
        assert_eq!(r.offset, 0);
        for name in ["n-periodic", "polynomial-map", "accounting", "fourier-chain", "plumbing"] {
            assert!(r.passed_checks.iter().any(|c| c == name), "{name}");
        }
        assert!(r.final_correlation.unwrap() > 0.0);
    }

    #[test]
    fn zero_input_declines() {
        let f = CyclicFn::from_fn(120, |_| Complex64::new(0.0, 0.0)).unwrap();
        let d = deduce(&f, 1, &FourierOracle::default(), &DeduceConfig::default()).unwrap();
        assert_eq!(d.report.status, Status::Declined);
        assert!(d.report.norms.iter().all(|&v| v == 0.0));
        assert_eq!(d.report.chosen_m, 0);
        assert!(d.report.final_correlation.is_none());
    }

    #[test]
    fn delta_selects_a_window_containing_it() {
        let n = 200;
        let x0 = n / 8;
        let f = CyclicFn::from_fn(n, |x| {
            Complex64::new(if x == x0 as i64 { 1.0 } else { 0.0 }, 0.0)
        })
        .unwrap();
        let d = deduce(&f, 1, &FourierOracle::default(), &DeduceConfig::default()).unwrap();
        let (lo, hi) = PartitionOfUnity::standard().window_points(d.report.chosen_m, n as u64);
        assert!(lo <= x0 as i64 && x0 as i64 <= hi);
        assert_eq!(d.report.status, Status::Success);
    }

    #[test]
    fn rejects_unbounded_input() {
        let f = CyclicFn::from_fn(120, |_| Complex64::new(2.0, 0.0)).unwrap();
        assert!(deduce(&f, 1, &FourierOracle::default(), &DeduceConfig::default()).is_err());
    }

    #[test]
    fn small_n_fallback() {
        let f = character(50, 0);
        let d = deduce(&f, 1, &FourierOracle::default(), &DeduceConfig::default()).unwrap();
        assert_eq!(d.report.mode, Mode::SmallN);
        assert_eq!(d.report.status, Status::Success);
        assert!((d.report.final_correlation.unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(d.report.lift.unwrap().witness, LiftWitness::Integer("0/1".into()));
    }

    #[test]
    fn grid_oracle_on_a_quadratic() {
        let n = 40;
        let f = CyclicFn::from_fn(n, |x| e((x * x) as f64 / n as f64)).unwrap();
        let config = DeduceConfig {
            min_windowed_n: 40,
            ..DeduceConfig::default()
        };
        let d = deduce(&f, 2, &QuadraticGridOracle::default(), &config).unwrap();
        assert_eq!(d.report.status, Status::Success);
        assert!(d.report.oracle.heuristic);
        assert!(d.report.final_correlation.unwrap() > 0.0);
        assert!(d.report.passed_checks.iter().any(|c| c == "n-periodic"));
    }

    #[test]
    fn overclaiming_oracle_is_caught() {
        let f = character(100, 1);
        let oracle = ExternalOracle {
            p: Poly::new(vec![Rational::from_i64(0), Rational::from_ratio(1, 3)]).unwrap(),
            claimed: Some(0.99),
            decline_below: DECLINE_BELOW,
        };
        let err = deduce(&f, 1, &oracle, &DeduceConfig::default()).unwrap_err();
        assert!(matches!(err, Error::CheckFailed(_)));
    }

    #[test]
    fn report_round_trips_through_json() {
        let f = character(100, 7);
        let d = deduce(&f, 1, &FourierOracle::default(), &DeduceConfig::default()).unwrap();
        let json = serde_json::to_string(&d.report).unwrap();
        let back: DeductionReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d.report);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["N"], 100);
        assert_eq!(value["lift"]["witness"]["t"], "1/1");
    }
}
