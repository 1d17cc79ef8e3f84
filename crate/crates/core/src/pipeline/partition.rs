use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gowers::{CyclicFn, IntervalFn};
use crate::nilseq::Bump;

/// A smooth partition of unity on `R/Z` by `count` pieces; piece `m` is
/// supported in `I_m = [m/count, m/count + width]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionOfUnity {
    count: usize,
    width_num: u64,
    width_den: u64,
}

impl Default for PartitionOfUnity {
    fn default() -> Self {
        Self::standard()
    }
}

impl PartitionOfUnity {
    /// 20 windows of width 1/10.
    pub fn standard() -> Self {
        Self {
            count: 20,
            width_num: 1,
            width_den: 10,
        }
    }

    /// The window interiors must cover the circle (`width > 1/count`) and each
    /// window must fit in `[0, 1/2]` after translation.
    pub fn with_windows(count: usize, width_num: u64, width_den: u64) -> Result<Self> {
        let covers = width_num * count as u64 > width_den;
        let fits = 2 * width_num <= width_den;
        if count == 0 || width_den == 0 || !covers || !fits {
            return Err(Error::InvalidParameter(format!(
                "{count} windows of width {width_num}/{width_den} do not form an admissible cover"
            )));
        }
        Ok(Self {
            count,
            width_num,
            width_den,
        })
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    fn width(&self) -> f64 {
        self.width_num as f64 / self.width_den as f64
    }

    /// `exp(-1/(v (w - v)))` on `(0, w)`.
    fn raw(&self, v: f64) -> f64 {
        let w = self.width();
        if v <= 0.0 || v >= w {
            return 0.0;
        }
        (-1.0 / (v * (w - v))).exp()
    }

    fn raw_piece(&self, m: usize, u: f64) -> f64 {
        self.raw((u - m as f64 / self.count as f64).rem_euclid(1.0))
    }

    /// `rho_m(u)`
    pub fn rho(&self, m: usize, u: f64) -> f64 {
        let total: f64 = (0..self.count).map(|k| self.raw_piece(k, u)).sum();
        self.raw_piece(m, u) / total
    }

    pub fn sum(&self, u: f64) -> f64 {
        (0..self.count).map(|m| self.rho(m, u)).sum()
    }

    /// Integers `x` with `x/N` in the closed window `I_m`: `(lo, hi)` inclusive, unreduced mod N.
    pub fn window_points(&self, m: usize, n: u64) -> (i64, i64) {
        let c = self.count as u64;
        let lo = (m as u64 * n).div_ceil(c);
        // floor((m N wd + N wn c) / (c wd))
        let hi = (m as u64 * n * self.width_den + n * self.width_num * c) / (c * self.width_den);
        (lo as i64, hi as i64)
    }

    /// `floor(m N / count)`: rotating by this moves window `m` to start within `[0, 1/N)`.
    pub fn window_shift(&self, m: usize, n: u64) -> i64 {
        (m as u64 * n / self.count as u64) as i64
    }
}

/// The piece `phi_m f` restricted to its support interval `J_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    pub m: usize,
    pub piece: IntervalFn,
}

/// `phi_m(x) = rho_m(x / N)` applied to `f` and cut to `J_m`, for every `m`.
pub fn windowed_pieces(f: &CyclicFn, partition: &PartitionOfUnity) -> Result<Vec<Window>> {
    let n = f.len() as u64;
    (0..partition.len())
        .map(|m| {
            let (lo, hi) = partition.window_points(m, n);
            let values: Vec<Complex64> = (lo..=hi)
                .map(|x| f.at(x) * partition.rho(m, x as f64 / n as f64))
                .collect();
            Ok(Window {
                m,
                piece: IntervalFn::new(lo, values)?,
            })
        })
        .collect()
}

/// Piece `m` of a partition re-centred by `shift / N`, so that it is supported
/// in `[0, width + 1/N]`. Usable as the cut-off of a periodic lift.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowBump {
    partition: PartitionOfUnity,
    m: usize,
    offset: f64,
}

impl WindowBump {
    pub fn new(partition: PartitionOfUnity, m: usize, shift: i64, n: u64) -> Self {
        Self {
            partition,
            m,
            offset: shift as f64 / n as f64,
        }
    }
}

impl Bump for WindowBump {
    fn eval(&self, u: f64) -> f64 {
        self.partition.rho(self.m, u + self.offset)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_to_one() {
        let p = PartitionOfUnity::standard();
        assert!((p.sum(0.137) - 1.0).abs() < 1e-12);
        for k in 0..10_000 {
            let u = k as f64 / 10_000.0;
            assert!((p.sum(u) - 1.0).abs() < 1e-12, "u = {u}");
        }
    }

    #[test]
    fn supports() {
        let p = PartitionOfUnity::standard();
        assert_eq!(p.rho(3, 0.30), 0.0);
        let nonzero: Vec<usize> = (0..20).filter(|&m| p.rho(m, 0.17) > 0.0).collect();
        assert_eq!(nonzero, vec![2, 3]);
        assert!((p.rho(2, 0.17) + p.rho(3, 0.17) - 1.0).abs() < 1e-12);
        for m in 0..20 {
            for k in 0..2000 {
                let u = k as f64 / 2000.0;
                let v = p.rho(m, u);
                assert!((0.0..=1.0).contains(&v));
                let rel = (u - m as f64 / 20.0).rem_euclid(1.0);
                if rel > 0.1 + 1e-12 {
                    assert_eq!(v, 0.0);
                }
            }
        }
    }

    #[test]
    fn window_sizes_for_n_200() {
        let p = PartitionOfUnity::standard();
        for m in 0..20 {
            let (lo, hi) = p.window_points(m, 200);
            assert_eq!(lo, 10 * m as i64);
            assert!([20, 21].contains(&(hi - lo + 1)));
        }
    }

    #[test]
    fn pieces_partition_the_constant() {
        let n = 137;
        let p = PartitionOfUnity::standard();
        let ones = CyclicFn::from_fn(n, |_| Complex64::new(1.0, 0.0)).unwrap();
        let pieces = windowed_pieces(&ones, &p).unwrap();
        let mut total = vec![Complex64::new(0.0, 0.0); n];
        for w in &pieces {
            for (x, v) in w.piece.points() {
                total[x.rem_euclid(n as i64) as usize] += v;
            }
            let len = w.piece.len();
            assert!((n / 10..=n / 10 + 2).contains(&len), "len {len}");
        }
        assert!(total.iter().all(|t| (t - 1.0).norm() < 1e-12));
    }

    #[test]
    fn translated_bump_sits_in_the_left_half() {
        let p = PartitionOfUnity::standard();
        let n = 200;
        let bump = WindowBump::new(p.clone(), 7, p.window_shift(7, n), n);
        assert_eq!(p.window_shift(7, n), 70);
        for k in 0..4000 {
            let u = k as f64 / 4000.0;
            if u > 0.5 {
                assert_eq!(bump.eval(u), 0.0);
            }
        }
        for x in 0..n as i64 {
            let expected = p.rho(7, (x + 70) as f64 / n as f64);
            assert!((bump.eval(x as f64 / n as f64) - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_covering_windows() {
        assert!(PartitionOfUnity::with_windows(20, 1, 20).is_err());
        assert!(PartitionOfUnity::with_windows(4, 3, 5).is_err());
        assert!(PartitionOfUnity::with_windows(8, 1, 4).is_ok());
    }
}
