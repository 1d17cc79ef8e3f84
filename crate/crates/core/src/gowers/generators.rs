use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::CyclicFn;
use crate::error::{Error, Result};
use crate::polyalg::parse_coeffs;
use crate::scalar::{e, e_scalar, parse_rational, Rational, Scalar};

/// Builds a function on `Z/NZ` from the argument after the `:` (if any).
pub type GeneratorFn = Box<dyn Fn(Option<&str>, usize) -> Result<CyclicFn> + Send + Sync>;

struct Entry {
    build: GeneratorFn,
    help: &'static str,
}

/// Named test-function generators, addressed as `name` or `name:arg`.
pub struct GeneratorRegistry {
    entries: BTreeMap<String, Entry>,
}

impl Default for GeneratorRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

fn required<'a>(name: &str, arg: Option<&'a str>) -> Result<&'a str> {
    arg.ok_or_else(|| Error::Parse(format!("generator '{name}' needs an argument, e.g. {name}:1")))
}

impl GeneratorRegistry {
    pub fn empty() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }

    pub fn builtin() -> Self {
        let mut reg = Self::empty();
        reg.register(
            "quadratic",
            "quadratic:a -> e(a x^2 / N^2), a rational",
            Box::new(|arg, n| {
                let a = parse_rational(required("quadratic", arg)?)?;
                let n2 = Rational::from_i64((n * n) as i64);
                CyclicFn::from_fn(n, |x| {
                    let x = Rational::from_i64(x);
                    e_scalar(&(a.clone() * x.clone() * x / n2.clone()))
                })
            }),
        );
        reg.register(
            "character",
            "character:k -> e(k x / N), k integer",
            Box::new(|arg, n| {
                let k: i64 = required("character", arg)?
                    .trim()
                    .parse()
                    .map_err(|e| Error::Parse(format!("character frequency: {e}")))?;
                CyclicFn::from_fn(n, |x| e_scalar(&Rational::from_ratio(k * x, n as i64)))
            }),
        );
        reg.register(
            "random",
            "random:seed -> e(u_x), u_x uniform in [0, 1) from ChaCha8 seeded by seed",
            Box::new(|arg, n| {
                let seed: u64 = required("random", arg)?
                    .trim()
                    .parse()
                    .map_err(|e| Error::Parse(format!("random seed: {e}")))?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                CyclicFn::new((0..n).map(|_| e(rng.gen::<f64>())).collect())
            }),
        );
        reg.register(
            "delta",
            "delta -> indicator of 0",
            Box::new(|_, n| {
                CyclicFn::from_fn(n, |x| {
                    if x == 0 {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
            }),
        );
        reg.register(
            "poly",
            "poly:c0,c1,... -> e(c0 + c1 x + ...), rational coefficients",
            Box::new(|arg, n| {
                let p = parse_coeffs(required("poly", arg)?)?;
                CyclicFn::from_fn(n, |x| e_scalar(&p.eval(&Rational::from_i64(x))))
            }),
        );
        reg
    }

    pub fn register(&mut self, name: &str, help: &'static str, build: GeneratorFn) {
        self.entries.insert(name.to_string(), Entry { build, help });
    }

    pub fn names(&self) -> impl Iterator<Item = (&str, &'static str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.help))
    }

    /// Evaluates a spec such as `"character:3"` on `Z/NZ`.
    pub fn generate(&self, spec: &str, n: usize) -> Result<CyclicFn> {
        let (name, arg) = match spec.split_once(':') {
            Some((name, arg)) => (name, Some(arg)),
            None => (spec, None),
        };
        let entry = self.entries.get(name).ok_or_else(|| Error::UnknownStrategy {
            kind: "generator",
            name: name.to_string(),
        })?;
        (entry.build)(arg, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_evaluate() {
        let reg = GeneratorRegistry::builtin();
        let n = 10;
        let q = reg.generate("quadratic:3", n).unwrap();
        assert!((q.at(4) - e(3.0 * 16.0 / 100.0)).norm() < 1e-14);
        let c = reg.generate("character:2", n).unwrap();
        assert!((c.at(3) - e(0.6)).norm() < 1e-14);
        let d = reg.generate("delta", n).unwrap();
        assert_eq!(d.values().iter().filter(|v| v.norm() > 0.0).count(), 1);
        let p = reg.generate("poly:0,0,1/5", n).unwrap();
        assert!((p.at(7) - e(49.0 / 5.0)).norm() < 1e-12);
    }

    #[test]
    fn random_is_seeded_and_unimodular() {
        let reg = GeneratorRegistry::builtin();
        let a = reg.generate("random:42", 64).unwrap();
        let b = reg.generate("random:42", 64).unwrap();
        let c = reg.generate("random:43", 64).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.values().iter().all(|v| (v.norm() - 1.0).abs() < 1e-12));
    }

    #[test]
    fn bad_specs() {
        let reg = GeneratorRegistry::builtin();
        assert!(matches!(reg.generate("nope:1", 4), Err(Error::UnknownStrategy { .. })));
        assert!(reg.generate("character", 4).is_err());
        assert!(reg.generate("character:x", 4).is_err());
        assert!(reg.generate("random:-1", 4).is_err());
    }

    #[test]
    fn custom_generators_can_be_registered() {
        let mut reg = GeneratorRegistry::empty();
        reg.register("ones", "constant 1", Box::new(|_, n| CyclicFn::from_fn(n, |_| Complex64::new(1.0, 0.0))));
        assert_eq!(reg.generate("ones", 3).unwrap().len(), 3);
        assert_eq!(reg.names().count(), 1);
    }
}
