//! A self-contained verification suite: every algebraic identity and numeric
//! invariant the library promises, run on seeded random inputs.
//!
//! Each check reports a residue and passes when the residue is within its
//! tolerance. Exact checks count mismatches and must report zero; float
//! checks carry a pinned tolerance which a caller may override. Output is a
//! pure function of the seed and the selection.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gowers::{
    correlation, interval_u_norm, interval_u_norm_with_modulus, parallelepiped_check, u2_via_fft,
    u_norm, u_norm_power, CyclicFn, IntervalFn,
};
use crate::nilgroup::{
    commutator, polynomial_map_check, Filtered, Group, HeisPoint, Lattice, LiftedPoint, SampleGrid,
};
use crate::nilseq::{check_n_periodic, AbelianLift, Bump, HeisNilsequence, StandardBump};
use crate::pipeline::{deduce, DeduceConfig, FourierOracle, PartitionOfUnity, Status};
use crate::polyalg::{Poly, RatPoly};
use crate::scalar::{e, e_scalar, mod_floor, Rational, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tolerance {
    /// The residue counts mismatches and must be zero.
    Exact,
    Float(f64),
}

impl fmt::Display for Tolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tolerance::Exact => write!(f, "exact"),
            Tolerance::Float(t) => write!(f, "{t:.0e}"),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Replaces every float tolerance. Exact checks are unaffected.
    pub tolerance: Option<f64>,
    /// Run only the checks of this group.
    pub only: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub group: &'static str,
    pub name: &'static str,
    pub residue: f64,
    pub tolerance: Tolerance,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}.{}", self.group, self.name)?;
        if let Some(err) = &self.error {
            return write!(f, " error={err}");
        }
        match self.tolerance {
            Tolerance::Exact => write!(f, " mismatches={} tol=exact", self.residue),
            Tolerance::Float(_) => write!(f, " residue={:.3e} tol={}", self.residue, self.tolerance),
        }
    }
}

type CheckFn = fn(&mut ChaCha8Rng) -> Result<f64>;

struct Check {
    group: &'static str,
    name: &'static str,
    tolerance: Tolerance,
    run: CheckFn,
}

const fn exact(group: &'static str, name: &'static str, run: CheckFn) -> Check {
    Check {
        group,
        name,
        tolerance: Tolerance::Exact,
        run,
    }
}

const fn float(group: &'static str, name: &'static str, tol: f64, run: CheckFn) -> Check {
    Check {
        group,
        name,
        tolerance: Tolerance::Float(tol),
        run,
    }
}

const CHECKS: &[Check] = &[
    exact("polyalg", "shift-composition", polyalg_shift),
    exact("polyalg", "binomial-roundtrip", polyalg_binomial),
    exact("polyalg", "integer-valued", polyalg_integer_valued),
    exact("polyalg", "rescale", polyalg_rescale),
    exact("heisenberg", "matrix-law", heis_matrix),
    exact("heisenberg", "reduce", heis_reduce),
    float("heisenberg", "closed-form", 1e-9, heis_closed_form),
    exact("heisenberg", "periodic-witness", heis_witness),
    exact("heisenberg", "polynomial-map", heis_polymap),
    exact("lifted", "group-laws", lifted_laws),
    exact("lifted", "reduce", lifted_reduce),
    exact("lifted", "commutator-chain", lifted_commutators),
    float("lifted", "lift-identity", 1e-9, lifted_identity),
    exact("lifted", "periodic-witness", lifted_witness),
    exact("lifted", "polynomial-map", lifted_polymap),
    float("lifted", "cross-construction", 1e-9, lifted_cross),
    exact("lifted", "image-in-g1", lifted_image),
    float("gowers", "direct-definition", 1e-12, gowers_direct),
    float("gowers", "fft-u2", 1e-10, gowers_fft),
    float("gowers", "monotonicity", 1e-10, gowers_monotone),
    float("gowers", "triangle", 1e-10, gowers_triangle),
    float("gowers", "phase-extremality", 1e-10, gowers_extremal),
    float("gowers", "shift-modulation", 1e-10, gowers_invariance),
    float("gowers", "interval-padding", 1e-9, gowers_padding),
    float("gowers", "lemma-constant", 1e-6, gowers_lemma),
    exact("gowers", "parallelepiped", gowers_parallelepiped),
    exact("gowers", "thread-invariance", gowers_threads),
    float("pipeline", "partition-sum", 1e-12, pipeline_partition_sum),
    exact("pipeline", "partition-support", pipeline_partition_support),
    float("pipeline", "character-accounting", 1e-10, pipeline_character),
    float("pipeline", "translation-invariance", 1e-10, pipeline_translation),
    exact("pipeline", "zero-declines", pipeline_zero),
];

/// Check groups, in run order.
pub fn groups() -> Vec<&'static str> {
    let mut out: Vec<&'static str> = Vec::new();
    for c in CHECKS {
        if !out.contains(&c.group) {
            out.push(c.group);
        }
    }
    out
}

/// Runs the selected checks. Each check draws from its own stream of the
/// seeded generator, so a subset reproduces the residues of a full run.
pub fn run(config: &VerifyConfig) -> Result<Vec<CheckResult>> {
    if let Some(tol) = config.tolerance {
        if !(tol > 0.0) {
            return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
        }
    }
    if let Some(only) = &config.only {
        if !groups().contains(&only.as_str()) {
            return Err(Error::UnknownStrategy {
                kind: "check group",
                name: only.clone(),
            });
        }
    }
    let mut results = Vec::new();
    for (index, check) in CHECKS.iter().enumerate() {
        if config.only.as_deref().is_some_and(|g| g != check.group) {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(index as u64);
        let tolerance = match (check.tolerance, config.tolerance) {
            (Tolerance::Float(_), Some(t)) => Tolerance::Float(t),
            (t, _) => t,
        };
        let result = match (check.run)(&mut rng) {
            Ok(residue) => CheckResult {
                group: check.group,
                name: check.name,
                residue,
                tolerance,
                passed: match tolerance {
                    Tolerance::Exact => residue == 0.0,
                    Tolerance::Float(t) => residue <= t,
                },
                error: None,
            },
            Err(err) => CheckResult {
                group: check.group,
                name: check.name,
                residue: f64::INFINITY,
                tolerance,
                passed: false,
                error: Some(err.to_string()),
            },
        };
        results.push(result);
    }
    Ok(results)
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

fn random_rational(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rational {
    rat(rng.gen_range(-max_num..=max_num), rng.gen_range(1..=max_den))
}

fn random_poly(rng: &mut ChaCha8Rng, s: usize, max_num: i64, max_den: i64) -> RatPoly {
    let coeffs = (0..=s).map(|_| random_rational(rng, max_num, max_den)).collect();
    Poly::new(coeffs).expect("degree bound at least 1")
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> CyclicFn {
    let values = (0..n).map(|_| e(rng.gen::<f64>())).collect();
    CyclicFn::new(values).expect("nonempty")
}

fn random_bounded(rng: &mut ChaCha8Rng, n: usize) -> CyclicFn {
    let values = (0..n).map(|_| e(rng.gen::<f64>()) * rng.gen::<f64>()).collect();
    CyclicFn::new(values).expect("nonempty")
}

fn count(mismatches: impl Iterator<Item = bool>) -> f64 {
    mismatches.filter(|&bad| bad).count() as f64
}

fn polyalg_shift(rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut bad = 0.0;
    for _ in 0..50 {
        let s = rng.gen_range(1..=4);
        let p = random_poly(rng, s, 20, 9);
        let (a, b, t) = (
            random_rational(rng, 20, 7),
            random_rational(rng, 20, 7),
            random_rational(rng, 20, 7),
        );
        let composed = p.shift(&a).shift(&b) != p.shift(&(a.clone() + b));
        let evaluated = p.shift(&a).eval(&t) != p.eval(&(t + a));
        bad += count([composed, evaluated].into_iter());
    }
    Ok(bad)
}

fn polyalg_binomial(rng: &mut ChaCha8Rng) -> Result<f64> {
    let polys: Vec<RatPoly> = (0..50)
        .map(|_| {
            let s = rng.gen_range(1..=5);
            random_poly(rng, s, 30, 12)
        })
        .collect();
    Ok(count(polys.iter().map(|p| &p.to_binomial().to_monomial() != p)))
}

fn polyalg_integer_valued(rng: &mut ChaCha8Rng) -> Result<f64> {
    let dens = [1, 2, 3, 4, 6];
    let mut bad = 0.0;
    for _ in 0..200 {
        let s = rng.gen_range(1..=3);
        let coeffs = (0..=s)
            .map(|_| rat(rng.gen_range(-12..=12), dens[rng.gen_range(0..dens.len())]))
            .collect();
        let p = Poly::new(coeffs)?;
        let brute = (-20..=20).all(|y| p.eval(&Rational::from_i64(y)).is_integer());
        if brute != p.is_integer_valued() {
            bad += 1.0;
        }
    }
    Ok(bad)
}

fn polyalg_rescale(rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut bad = 0.0;
    for _ in 0..50 {
        let s = rng.gen_range(1..=4);
        let p = random_poly(rng, s, 20, 9);
        let n = rng.gen_range(1..=100u64);
        let y = random_rational(rng, 10, 10);
        if p.rescale(n).eval(&y) != p.eval(&(y.clone() * Rational::from_i64(n as i64))) {
            bad += 1.0;
        }
    }
    Ok(bad)
}

type Matrix = [[Rational; 3]; 3];

fn heis_matrix_of(g: &HeisPoint<Rational>) -> Matrix {
    let (zero, one) = (Rational::from_i64(0), Rational::from_i64(1));
    [
        [one.clone(), g.x.clone(), g.z.clone()],
        [zero.clone(), one.clone(), g.y.clone()],
        [zero.clone(), zero, one],
    ]
}

fn matrix_mul(a: &Matrix, b: &Matrix) -> Matrix {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).fold(Rational::from_i64(0), |acc, k| acc + a[i][k].clone() * b[k][j].clone()))
    })
}

fn random_heis(rng: &mut ChaCha8Rng) -> HeisPoint<Rational> {
    HeisPoint::new(
        random_rational(rng, 30, 8),
        random_rational(rng, 30, 8),
        random_rational(rng, 30, 8),
    )
}

fn heis_matrix(rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut bad = 0.0;
    for _ in 0..100 {
        let (g, h, k) = (random_heis(rng), random_heis(rng), random_heis(rng));
        let gh = g.mul(&h)?;
        let law = heis_matrix_of(&gh) != matrix_mul(&heis_matrix_of(&g), &heis_matrix_of(&h));
        let assoc = gh.mul(&k)? != g.mul(&h.mul(&k)?)?;
        let inverse = !g.mul(&g.inv())?.is_identity();
        bad += count([law, assoc, inverse].into_iter());
    }
    Ok(bad)
}

fn in_unit(v: &Rational) -> bool {
    *v >= Rational::from_i64(0) && *v < Rational::from_i64(1)
}

fn heis_reduce(rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut bad = 0.0;
    for _ in 0..100 {
        let g = random_heis(rng);
        let (r, gamma) = g.reduce();
        let ok = gamma.in_lattice()?
            && gamma.mul(&g)? == r
            && in_unit(&r.x)
            && in_unit(&r.y)
            && in_unit(&r.z)
            && r.reduce().0 == r;
        if !ok {
            bad += 1.0;
        }
    }
    Ok(bad)
}

const HEIS_CASES: [(u64, i64); 6] = [(5, 1), (5, 3), (16, 1), (16, 3), (100, 1), (100, 3)];

fn heis_closed_form(_: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0f64;
    for (n, a) in HEIS_CASES {
        let seq = HeisNilsequence::new(n, a, StandardBump)?;
        for t in 0..n as i64 {
            let phase = e_scalar(&(rat(a * t * t, 1) / Rational::from_i64((n * n) as i64)));
            let expected = phase * StandardBump.eval(t as f64 / n as f64);
            worst = worst.max((seq.eval(t) - expected).norm());
        }
    }
    Ok(worst)
}

fn heis_witness(_: &mut ChaCha8Rng) -> Result<f64> {
    let mut bad = 0.0;
    for (n, a) in HEIS_CASES {
        let seq = HeisNilsequence::new(n, a, StandardBump)?;
        let span = 2 * n as i64;
        let cert = check_n_periodic(|t| seq.p(t), n, -span..=span)?;
        if !cert.passed || cert.witnesses != vec![HeisPoint::from_ints(1, 2 * a, a)] {
            bad += 1.0;
        }
    }
    Ok(bad)
}

fn heis_polymap(_: &mut ChaCha8Rng) -> Result<f64> {
    let mut bad = 0.0;
    for (n, a) in HEIS_CASES {
        let seq = HeisNilsequence::new(n, a, StandardBump)?;
        if !polynomial_map_check(|t| seq.p(t), &SampleGrid::standard(n))?.passed() {
            bad += 1.0;
        }
    }
    Ok(bad)
}

fn random_lifted(rng: &mut ChaCha8Rng, s: usize) -> LiftedPoint<Rational> {
    LiftedPoint::new(random_poly(rng, s, 20, 8), random_rational(rng, 20, 8))
}

fn lifted_laws(rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut bad = 0.0;
    for _ in 0..60 {
        let s = rng.gen_range(1..=4);
        let (g, h, k) = (random_lifted(rng, s), random_lifted(rng, s), random_lifted(rng, s));
        let assoc = g.mul(&h)?.mul(&k)? != g.mul(&h.mul(&k)?)?;
        let inverse = !g.mul(&g.inv())?.is_identity() || !g.inv().mul(&g)?.is_identity();
        let unit = g.mul(&g.identity_like())? != g;
        bad += count([assoc, inverse, unit].into_iter());
    }
    Ok(bad)
}

fn lifted_reduce(rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut bad = 0.0;
    for _ in 0..60 {
        let s = rng.gen_range(1..=4);
        let g = random_lifted(rng, s);
        let (r, gamma) = g.reduce();
        let ok = gamma.in_lattice()?
            && gamma.mul(&g)? == r
            && in_unit(&r.t)
            && r.q.to_binomial().coeffs().iter().all(in_unit)
            && r.reduce().0 == r;
        if !ok {
            bad += 1.0;
        }
    }
    Ok(bad)
}

fn lifted_commutators(_: &mut ChaCha8Rng) -> Result<f64> {
    let ints = |c: &[i64]| Poly::new(c.iter().map(|&v| Rational::from_i64(v)).collect());
    let zero = Rational::from_i64(0);
    let a = LiftedPoint::translation(Rational::from_i64(1), 2)?;
    let square = LiftedPoint::new(ints(&[0, 0, 1])?, zero.clone());
    let c1 = commutator(&a, &square)?;
    let c2 = commutator(&a, &c1)?;
    let c3 = commutator(&a, &c2)?;
    let chain = [
        c1 != LiftedPoint::new(ints(&[1, 2, 0])?, zero.clone()),
        c2 != LiftedPoint::new(ints(&[2, 0, 0])?, zero.clone()),
        !c3.is_identity(),
    ];
    // The filtration is 2-step although the group is not: c2 is a nontrivial
    // 2-fold commutator, yet G_3 holds only the identity. (y^2, 0) shows G_0 != G_1.
    let filtration = [
        !c2.in_filtration(2),
        c2.in_filtration(3),
        !a.identity_like().in_filtration(3),
        square.in_filtration(3),
        square.in_filtration(1),
        !square.in_filtration(0),
    ];
    Ok(count(chain.into_iter().chain(filtration)))
}

/// 100 maps: `s = 1 + i % 3`, `N` cycling through 4, 5, 16, 100, denominators up to `N^2`.
fn lift_cases(rng: &mut ChaCha8Rng) -> Vec<RatPoly> {
    (0..100)
        .map(|i| {
            let n = LIFT_MODULI[i % 4] as i64;
            random_poly(rng, 1 + i % 3, n * n, n * n)
        })
        .collect()
}

const LIFT_MODULI: [u64; 4] = [4, 5, 16, 100];

fn lifted_identity(rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0f64;
    for (i, p) in lift_cases(rng).into_iter().enumerate() {
        let n = LIFT_MODULI[i % 4];
        let lift = AbelianLift::new(p.clone(), n, StandardBump)?;
        let ni = n as i64;
        for x in -3 * ni..=3 * ni {
            let r = mod_floor(x, ni);
            let expected = StandardBump.eval(r as f64 / n as f64) * e_scalar(&p.eval(&Rational::from_i64(r)));
            worst = worst.max((lift.eval(x) - expected).norm());
        }
    }
    Ok(worst)
}

fn lifted_witness(rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut bad = 0.0;
    for (i, p) in lift_cases(rng).into_iter().enumerate() {
        let n = LIFT_MODULI[i % 4];
        let s = p.degree_bound();
        let lift = AbelianLift::new(p, n, StandardBump)?;
        let span = 2 * n as i64;
        let cert = check_n_periodic(|x| lift.p_tilde(x), n, -span..=span)?;
        let expected = LiftedPoint::new(Poly::zero(s)?, Rational::from_i64(1));
        if !cert.passed || cert.witnesses != vec![expected] {
            bad += 1.0;
        }
    }
    Ok(bad)
}

fn lifted_polymap(rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut bad = 0.0;
    for (i, p) in lift_cases(rng).into_iter().enumerate() {
        let n = LIFT_MODULI[i % 4];
        let lift = AbelianLift::new(p, n, StandardBump)?;
        if !polynomial_map_check(|x| lift.p_tilde(x), &SampleGrid::standard(n))?.passed() {
            bad += 1.0;
        }
    }
    Ok(bad)
}

fn quadratic_over(a: i64, den: i64) -> Result<RatPoly> {
    Poly::new(vec![Rational::from_i64(0), Rational::from_i64(0), rat(a, den)])
}

fn lifted_cross(_: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0f64;
    for n in [5u64, 16] {
        for a in [1i64, 3] {
            let ni = n as i64;
            let lift = AbelianLift::new(quadratic_over(a, ni * ni)?, n, StandardBump)?;
            let heis = HeisNilsequence::new(n, a, StandardBump)?;
            for x in -2 * ni..=2 * ni {
                worst = worst.max((lift.eval(x) - heis.eval(x)).norm());
            }
        }
    }
    Ok(worst)
}

fn lifted_image(_: &mut ChaCha8Rng) -> Result<f64> {
    let mut bad = 0.0;
    for n in [5u64, 16] {
        let ni = n as i64;
        for a in [1i64, 3] {
            if !AbelianLift::new(quadratic_over(a, ni * ni)?, n, StandardBump)?.image_in_g1() {
                bad += 1.0;
            }
        }
        if AbelianLift::new(quadratic_over(1, 2 * ni * ni)?, n, StandardBump)?.image_in_g1() {
            bad += 1.0;
        }
    }
    Ok(bad)
}

/// `E_{x, h} prod_{omega} C^{|omega|} f(x + omega . h)`, straight from the definition.
fn direct_u_norm(f: &CyclicFn, k: usize) -> f64 {
    let n = f.len();
    let mut total = Complex64::new(0.0, 0.0);
    let mut h = vec![0usize; k];
    for x in 0..n {
        loop {
            let mut prod = Complex64::new(1.0, 0.0);
            for omega in 0..1usize << k {
                let point = (0..k).filter(|&i| omega >> i & 1 == 1).map(|i| h[i]).sum::<usize>() + x;
                let v = f.values()[point % n];
                prod *= if omega.count_ones() % 2 == 1 { v.conj() } else { v };
            }
            total += prod;
            let mut i = 0;
            while i < k {
                h[i] += 1;
                if h[i] < n {
                    break;
                }
                h[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
        }
    }
    let avg = total / (n as f64).powi(k as i32 + 1);
    avg.re.max(0.0).powf(1.0 / (1u64 << k) as f64)
}

fn gowers_direct(rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0f64;
    for n in [3usize, 7, 12] {
        for k in 1..=3 {
            let f = random_bounded(rng, n);
            worst = worst.max((u_norm(&f, k)? - direct_u_norm(&f, k)).abs());
        }
    }
    Ok(worst)
}

fn gowers_fft(rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let f = random_bounded(rng, 64);
        worst = worst.max((u2_via_fft(&f) - u_norm(&f, 2)?).abs());
    }
    Ok(worst)
}

fn gowers_monotone(rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n = rng.gen_range(2..=48);
        let k = rng.gen_range(1..=3);
        let f = random_bounded(rng, n);
        worst = worst.max(u_norm(&f, k)? - u_norm(&f, k + 1)?);
    }
    Ok(worst)
}

fn gowers_triangle(rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n = rng.gen_range(2..=32);
        let k = rng.gen_range(2..=3);
        let (f, g) = (random_bounded(rng, n), random_bounded(rng, n));
        let sum = CyclicFn::from_fn(n, |x| f.at(x) + g.at(x))?;
        worst = worst.max(u_norm(&sum, k)? - u_norm(&f, k)? - u_norm(&g, k)?);
    }
    Ok(worst)
}

fn gowers_extremal(rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0f64;
    for n in 1..=16usize {
        for k in 1..=3 {
            let coeffs = (0..k)
                .map(|_| rat(rng.gen_range(0..n as i64), n as i64))
                .chain(std::iter::once(Rational::from_i64(0)))
                .collect();
            let p = Poly::new(coeffs)?;
            let f = CyclicFn::from_fn(n, |x| e_scalar(&p.eval(&Rational::from_i64(x))))?;
            worst = worst.max((u_norm(&f, k)? - 1.0).abs());
        }
    }
    Ok(worst)
}

fn gowers_invariance(rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..30 {
        let n = rng.gen_range(2..=32);
        let k = rng.gen_range(2..=3);
        let c = rng.gen_range(0..n as i64);
        let f = random_bounded(rng, n);
        let base = u_norm(&f, k)?;
        let modulated = f.map(|x, v| v * e(x as f64 / n as f64));
        worst = worst
            .max((u_norm(&f.rotate(c), k)? - base).abs())
            .max((u_norm(&modulated, k)? - base).abs());
    }
    Ok(worst)
}

fn gowers_padding(rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let len = rng.gen_range(2..=10);
        let k = rng.gen_range(1..=3);
        let offset = rng.gen_range(-5..=5);
        let values = random_bounded(rng, len).values().to_vec();
        let f = IntervalFn::new(offset, values)?;
        let base = interval_u_norm(&f, k)?;
        let m = (1usize << (k + 1)) * len;
        for modulus in [m + 7, 2 * m] {
            let other = interval_u_norm_with_modulus(&f, k, modulus)?;
            worst = worst.max((other - base).abs() / base);
        }
    }
    Ok(worst)
}

/// Relative spread of `||f|_J||_{U(J)} / ||f||_{U(Z/40)}` over random `f` supported on `J`.
fn gowers_lemma(rng: &mut ChaCha8Rng) -> Result<f64> {
    let (n, j) = (40usize, 20usize);
    let mut worst = 0.0f64;
    for s in 1..=2 {
        let mut ratios = Vec::new();
        for _ in 0..20 {
            let values = random_unimodular(rng, j).values().to_vec();
            let f = CyclicFn::from_fn(n, |x| {
                if (x as usize) < j {
                    values[x as usize]
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })?;
            let interval = IntervalFn::new(0, values)?;
            ratios.push(interval_u_norm(&interval, s + 1)? / u_norm(&f, s + 1)?);
        }
        let max = ratios.iter().copied().fold(f64::MIN, f64::max);
        let min = ratios.iter().copied().fold(f64::MAX, f64::min);
        worst = worst.max((max - min) / min);
    }
    Ok(worst)
}

fn gowers_parallelepiped(_: &mut ChaCha8Rng) -> Result<f64> {
    let mut bad = 0.0;
    for n in 1..=24usize {
        for j in 1..=n / 2 {
            if parallelepiped_check(j, n, 2)?.is_some() {
                bad += 1.0;
            }
        }
    }
    if parallelepiped_check(6, 10, 1)? != Some([0, 5, 5, 0]) {
        bad += 1.0;
    }
    Ok(bad)
}

fn gowers_threads(rng: &mut ChaCha8Rng) -> Result<f64> {
    let f = random_bounded(rng, 40);
    let in_pool = |threads: usize| -> Result<Complex64> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|err| Error::InvalidParameter(err.to_string()))?;
        pool.install(|| u_norm_power(&f, 3))
    };
    let one = in_pool(1)?;
    let many = in_pool(4)?;
    Ok(if one == many { 0.0 } else { 1.0 })
}

fn pipeline_partition_sum(_: &mut ChaCha8Rng) -> Result<f64> {
    let p = PartitionOfUnity::standard();
    Ok((0..10_000)
        .map(|i| (p.sum(i as f64 / 10_000.0) - 1.0).abs())
        .fold(0.0f64, f64::max))
}

fn pipeline_partition_support(_: &mut ChaCha8Rng) -> Result<f64> {
    let p = PartitionOfUnity::standard();
    let mut bad = 0.0;
    for i in 0..10_000 {
        let u = i as f64 / 10_000.0;
        for m in 0..p.len() {
            let v = p.rho(m, u);
            let inside = (u - m as f64 / 20.0).rem_euclid(1.0) < 0.1;
            if !(0.0..=1.0).contains(&v) || (v > 0.0 && !inside) {
                bad += 1.0;
            }
        }
    }
    Ok(bad)
}

fn character(n: usize, k: i64) -> Result<CyclicFn> {
    CyclicFn::from_fn(n, |x| e_scalar(&rat(k * x, n as i64)))
}

/// Deduction for `e(3x/200)`: the accounting identity residue, after
/// requiring success and every certification step.
fn pipeline_character(_: &mut ChaCha8Rng) -> Result<f64> {
    let n = 200;
    let d = deduce(&character(n, 3)?, 1, &FourierOracle::default(), &DeduceConfig::default())?;
    let r = &d.report;
    let required = ["n-periodic", "polynomial-map", "accounting", "fourier-chain"];
    if r.status != Status::Success || !required.iter().all(|c| r.passed_checks.iter().any(|p| p == c)) {
        return Err(Error::CheckFailed("deduction did not certify".into()));
    }
    let psi = CyclicFn::from_fn(n, |x| d.psi_prime(x).unwrap_or_default())?;
    let direct = correlation(&d.shifted, &psi)?;
    let window_corr = r.window_correlation.unwrap_or(f64::NAN);
    let len = PartitionOfUnity::standard().window_points(r.chosen_m, n as u64);
    let via_window = (len.1 - len.0 + 1) as f64 / n as f64 * window_corr;
    Ok((direct - via_window).abs())
}

fn pipeline_translation(_: &mut ChaCha8Rng) -> Result<f64> {
    let n = 200;
    let f = character(n, 3)?;
    let config = DeduceConfig::default();
    let base = deduce(&f, 1, &FourierOracle::default(), &config)?.report;
    let mut worst = 0.0f64;
    for c in [10, 37, 125] {
        let rotated = deduce(&f.rotate(c), 1, &FourierOracle::default(), &config)?.report;
        match (base.final_correlation, rotated.final_correlation) {
            (Some(a), Some(b)) => worst = worst.max((a - b).abs()),
            _ => return Err(Error::CheckFailed("deduction declined".into())),
        }
    }
    Ok(worst)
}

fn pipeline_zero(_: &mut ChaCha8Rng) -> Result<f64> {
    let f = CyclicFn::from_fn(200, |_| Complex64::new(0.0, 0.0))?;
    let r = deduce(&f, 1, &FourierOracle::default(), &DeduceConfig::default())?.report;
    let ok = r.status == Status::Declined && r.chosen_m == 0 && r.norms.iter().all(|&v| v == 0.0);
    Ok(if ok { 0.0 } else { 1.0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_filter_and_unknown_group() {
        let config = VerifyConfig {
            only: Some("polyalg".into()),
            ..VerifyConfig::default()
        };
        let results = run(&config).unwrap();
        assert_eq!(results.len(), 4);
        assert!(results.iter().all(|r| r.group == "polyalg" && r.passed));
        let bad = VerifyConfig {
            only: Some("nope".into()),
            ..VerifyConfig::default()
        };
        assert!(run(&bad).is_err());
    }

    #[test]
    fn tolerance_override_touches_float_checks_only() {
        let config = VerifyConfig {
            only: Some("heisenberg".into()),
            tolerance: Some(1e-30),
            ..VerifyConfig::default()
        };
        let results = run(&config).unwrap();
        for r in &results {
            match r.tolerance {
                Tolerance::Exact => assert!(r.passed, "{r}"),
                Tolerance::Float(t) => assert_eq!(t, 1e-30),
            }
        }
    }

    #[test]
    fn line_format() {
        let r = CheckResult {
            group: "g",
            name: "n",
            residue: 1.5e-13,
            tolerance: Tolerance::Float(1e-9),
            passed: true,
            error: None,
        };
        assert_eq!(r.to_string(), "PASS g.n residue=1.500e-13 tol=1e-9");
    }
}
