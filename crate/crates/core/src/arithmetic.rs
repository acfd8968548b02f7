//! Sieved divisor counts `d_n`, two-square representation counts `r_n` and the Mobius function.

use std::io::{Read, Write};
use std::path::Path;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special::{dirichlet_l4, zeta, EvalOptions};

/// Default table limit.
pub const DEFAULT_LIMIT: usize = 1_000_000;
/// Largest limit accepted by [`build_tables`].
pub const DEFAULT_BUDGET: usize = 50_000_000;

const CACHE_MAGIC: &[u8; 8] = b"SUMMATAB";
const CACHE_VERSION: u32 = 1;

/// `d`, `r`, `mu` for indices `0..=limit`; `d[0]` and `mu[0]` are unused and zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArithmeticTables {
    pub limit: usize,
    pub d: Vec<u32>,
    pub r: Vec<u32>,
    pub mu: Vec<i8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirichletSeries {
    /// `sum d_n n^{-s} = zeta(s)^2`
    Divisors,
    /// `sum r_n n^{-s} = 4 zeta(s) L(s, chi_4)`
    TwoSquares,
    /// `sum mu_n n^{-s} = 1 / zeta(s)`
    Mobius,
}

pub fn build_tables(limit: usize) -> Result<ArithmeticTables> {
    build_tables_with_budget(limit, DEFAULT_BUDGET)
}

pub fn build_tables_with_budget(limit: usize, budget: usize) -> Result<ArithmeticTables> {
    if limit < 1 {
        return Err(Error::InvalidArgument("table limit must be at least 1".into()));
    }
    if limit > budget {
        return Err(Error::Capacity {
            requested: limit,
            budget,
        });
    }
    Ok(ArithmeticTables {
        limit,
        d: divisor_counts(limit),
        r: two_square_counts(limit),
        mu: mobius(limit),
    })
}

/// Tables up to [`DEFAULT_LIMIT`], built once per process.
pub fn default_tables() -> &'static ArithmeticTables {
    static TABLES: OnceLock<ArithmeticTables> = OnceLock::new();
    TABLES.get_or_init(|| build_tables(DEFAULT_LIMIT).expect("default limit is within budget"))
}

fn divisor_counts(n: usize) -> Vec<u32> {
    let mut d = vec![0u32; n + 1];
    for k in 1..=n {
        for m in (k..=n).step_by(k) {
            d[m] += 1;
        }
    }
    d
}

fn two_square_counts(n: usize) -> Vec<u32> {
    let mut r = vec![0u32; n + 1];
    let mut a = 0usize;
    while a * a <= n {
        let mut b = 0usize;
        while a * a + b * b <= n {
            let signs = if a > 0 { 2 } else { 1 } * if b > 0 { 2 } else { 1 };
            r[a * a + b * b] += signs;
            b += 1;
        }
        a += 1;
    }
    r
}

// linear sieve
fn mobius(n: usize) -> Vec<i8> {
    let mut mu = vec![0i8; n + 1];
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    mu[1] = 1;
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let m = i * p;
            if m > n {
                break;
            }
            composite[m] = true;
            if i % p == 0 {
                mu[m] = 0;
                break;
            }
            mu[m] = -mu[i];
        }
    }
    mu
}

impl ArithmeticTables {
    fn coefficient(&self, series: DirichletSeries, n: usize) -> f64 {
        match series {
            DirichletSeries::Divisors => self.d[n] as f64,
            DirichletSeries::TwoSquares => self.r[n] as f64,
            DirichletSeries::Mobius => self.mu[n] as f64,
        }
    }

    /// Little-endian cache: magic, version, limit, then `d`, `r`, `mu` as 32-bit entries.
    pub fn write_cache(&self, path: &Path) -> Result<()> {
        let mut buf = Vec::with_capacity(20 + 12 * (self.limit + 1));
        buf.extend_from_slice(CACHE_MAGIC);
        buf.extend_from_slice(&CACHE_VERSION.to_le_bytes());
        buf.extend_from_slice(&(self.limit as u64).to_le_bytes());
        for v in &self.d {
            buf.extend_from_slice(&v.to_le_bytes());
        }
        for v in &self.r {
            buf.extend_from_slice(&v.to_le_bytes());
        }
        for v in &self.mu {
            buf.extend_from_slice(&(*v as i32).to_le_bytes());
        }
        std::fs::File::create(path)?.write_all(&buf)?;
        Ok(())
    }

    pub fn read_cache(path: &Path) -> Result<Self> {
        let mut buf = Vec::new();
        std::fs::File::open(path)?.read_to_end(&mut buf)?;
        let bad = |msg: &str| Error::Format {
            line: 0,
            msg: format!("{}: {msg}", path.display()),
        };
        if buf.len() < 20 || &buf[..8] != CACHE_MAGIC {
            return Err(bad("not a table cache"));
        }
        let version = u32::from_le_bytes(buf[8..12].try_into().unwrap());
        if version != CACHE_VERSION {
            return Err(bad(&format!("unsupported cache version {version}")));
        }
        let limit = u64::from_le_bytes(buf[12..20].try_into().unwrap()) as usize;
        let len = limit + 1;
        if buf.len() != 20 + 12 * len {
            return Err(bad("truncated cache"));
        }
        let word = |k: usize| -> [u8; 4] { buf[20 + 4 * k..24 + 4 * k].try_into().unwrap() };
        let d = (0..len).map(|k| u32::from_le_bytes(word(k))).collect();
        let r = (0..len).map(|k| u32::from_le_bytes(word(len + k))).collect();
        let mu = (0..len).map(|k| i32::from_le_bytes(word(2 * len + k)) as i8).collect();
        Ok(Self { limit, d, r, mu })
    }

    /// Reads the cache at `path` if it holds `limit`, else builds and writes it.
    pub fn cached(path: &Path, limit: usize) -> Result<Self> {
        if let Ok(t) = Self::read_cache(path) {
            if t.limit == limit {
                return Ok(t);
            }
        }
        let t = build_tables(limit)?;
        t.write_cache(path)?;
        Ok(t)
    }
}

/// Truncated Dirichlet series over the table and the matching kernel product.
pub fn dirichlet_consistency(
    tables: &ArithmeticTables,
    series: DirichletSeries,
    s: Complex64,
) -> Result<(Complex64, Complex64)> {
    if s.re < 2.0 {
        return Err(Error::InvalidArgument(format!(
            "consistency check needs Re(s) >= 2, got {s}"
        )));
    }
    let mut partial = Complex64::new(0.0, 0.0);
    for n in (1..=tables.limit).rev() {
        let a = tables.coefficient(series, n);
        if a != 0.0 {
            partial += a * (-s * (n as f64).ln()).exp();
        }
    }
    let o = EvalOptions::default();
    let z = zeta(s, &o)?;
    let target = match series {
        DirichletSeries::Divisors => z * z,
        DirichletSeries::TwoSquares => 4.0 * z * dirichlet_l4(s, &o)?,
        DirichletSeries::Mobius => 1.0 / z,
    };
    Ok((partial, target))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let t = build_tables(100).unwrap();
        assert_eq!(t.d[1], 1);
        assert_eq!(t.d[6], 4);
        assert_eq!(t.r[0], 1);
        assert_eq!(t.r[5], 8);
        assert_eq!(t.r[3], 0);
        assert_eq!(t.r[25], 12);
        assert_eq!(t.mu[1], 1);
        assert_eq!(t.mu[12], 0);
        assert_eq!(t.mu[30], -1);
        assert!(t.r[1..].iter().all(|r| r % 4 == 0));
    }

    #[test]
    fn brute_force_agreement() {
        let t = build_tables(300).unwrap();
        for n in 1..=300usize {
            let d = (1..=n).filter(|k| n % k == 0).count() as u32;
            assert_eq!(t.d[n], d);
            let mut r = 0;
            for a in -20i64..=20 {
                for b in -20i64..=20 {
                    if (a * a + b * b) as usize == n {
                        r += 1;
                    }
                }
            }
            assert_eq!(t.r[n], r, "n={n}");
        }
    }

    #[test]
    fn capacity() {
        assert!(matches!(
            build_tables_with_budget(1000, 10),
            Err(Error::Capacity {
                requested: 1000,
                budget: 10
            })
        ));
        assert!(build_tables(0).is_err());
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("summa-tables-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("t.bin");
        let t = build_tables(1000).unwrap();
        t.write_cache(&path).unwrap();
        assert_eq!(ArithmeticTables::read_cache(&path).unwrap(), t);
        assert_eq!(ArithmeticTables::cached(&path, 1000).unwrap(), t);
        std::fs::write(&path, b"garbage").unwrap();
        assert!(ArithmeticTables::read_cache(&path).is_err());
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn mobius_series_at_two() {
        let t = build_tables(100_000).unwrap();
        let (p, q) = dirichlet_consistency(&t, DirichletSeries::Mobius, Complex64::new(2.0, 0.0)).unwrap();
        assert!((p - q).norm() < 1e-6);
        assert!((q.re - 6.0 / (std::f64::consts::PI * std::f64::consts::PI)).abs() < 1e-15);
    }
}
