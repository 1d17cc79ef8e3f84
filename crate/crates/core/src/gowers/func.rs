use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::mod_floor;

/// A function on `Z/NZ`, stored as its values at `0..N`.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicFn {
    values: Vec<Complex64>,
}

impl CyclicFn {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("cyclic function needs N >= 1".into()));
        }
        Ok(Self { values })
    }

    pub fn from_fn(n: usize, f: impl Fn(i64) -> Complex64) -> Result<Self> {
        Self::new((0..n as i64).map(f).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Value at `x mod N`.
    pub fn at(&self, x: i64) -> Complex64 {
        self.values[mod_floor(x, self.len() as i64) as usize]
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `x -> f(x + c)`
    pub fn rotate(&self, c: i64) -> Self {
        let n = self.len();
        let values = (0..n as i64).map(|x| self.at(x + c)).collect();
        Self { values }
    }

    pub fn map(&self, g: impl Fn(i64, Complex64) -> Complex64) -> Self {
        let values = self.values.iter().enumerate().map(|(x, &v)| g(x as i64, v)).collect();
        Self { values }
    }

    pub fn to_pairs(&self) -> Vec<[f64; 2]> {
        self.values.iter().map(|v| [v.re, v.im]).collect()
    }

    /// Parses a JSON array of `[re, im]` pairs.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let pairs: Vec<[f64; 2]> = serde_json::from_str(s).map_err(|e| {
            Error::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
        })?;
        Self::new(pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
    }
}

impl Serialize for CyclicFn {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_pairs().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CyclicFn {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(deserializer)?;
        CyclicFn::new(pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
            .map_err(serde::de::Error::custom)
    }
}

/// A function on the interval `offset..offset + M`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalFn {
    pub offset: i64,
    values: Vec<Complex64>,
}

impl IntervalFn {
    pub fn new(offset: i64, values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("interval function needs M >= 1".into()));
        }
        Ok(Self { offset, values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// `(x, g(x))` over the interval.
    pub fn points(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.values.iter().enumerate().map(move |(i, &v)| (self.offset + i as i64, v))
    }

    /// Zero-padded embedding into `Z/modulus`, placing `x` at `x mod modulus`.
    pub fn embed(&self, modulus: usize) -> Result<CyclicFn> {
        if modulus < self.len() {
            return Err(Error::InvalidParameter(format!(
                "modulus {modulus} shorter than interval {}",
                self.len()
            )));
        }
        let mut values = vec![Complex64::new(0.0, 0.0); modulus];
        for (x, v) in self.points() {
            values[mod_floor(x, modulus as i64) as usize] = v;
        }
        CyclicFn::new(values)
    }

    /// The indicator of the same interval.
    pub fn indicator(&self) -> Self {
        Self {
            offset: self.offset,
            values: vec![Complex64::new(1.0, 0.0); self.len()],
        }
    }
}
