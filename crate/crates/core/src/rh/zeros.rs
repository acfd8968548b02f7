use std::path::Path;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fixtures::fixture_dir;

/// Nontrivial zero `1/2 + i gamma` with the value of `zeta'` there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaZero {
    pub gamma: f64,
    pub zeta_prime: Complex64,
}

impl ZetaZero {
    pub fn rho(&self) -> Complex64 {
        Complex64::new(0.5, self.gamma)
    }
}

/// Parses `gamma<TAB>re(zeta')<TAB>im(zeta')` lines; a `# ... count=N` header is checked if present.
pub fn parse_zeros(text: &str) -> Result<Vec<ZetaZero>> {
    let mut declared = None;
    let mut out: Vec<ZetaZero> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end();
        let line_no = i + 1;
        if let Some(header) = line.strip_prefix('#') {
            if let Some(c) = header.split_whitespace().find_map(|w| w.strip_prefix("count=")) {
                declared = Some(c.parse::<usize>().map_err(|e| Error::Format {
                    line: line_no,
                    msg: format!("bad count: {e}"),
                })?);
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 3 {
            return Err(Error::Format {
                line: line_no,
                msg: format!("expected 3 columns, found {}", cols.len()),
            });
        }
        let num = |k: usize| -> Result<f64> {
            cols[k].parse::<f64>().map_err(|e| Error::Format {
                line: line_no,
                msg: format!("column {}: {e}", k + 1),
            })
        };
        let z = ZetaZero {
            gamma: num(0)?,
            zeta_prime: Complex64::new(num(1)?, num(2)?),
        };
        if !(z.gamma > 0.0) {
            return Err(Error::Format {
                line: line_no,
                msg: format!("ordinate must be positive, got {}", z.gamma),
            });
        }
        if let Some(prev) = out.last() {
            if z.gamma <= prev.gamma {
                return Err(Error::Format {
                    line: line_no,
                    msg: "ordinates must be strictly increasing".into(),
                });
            }
        }
        out.push(z);
    }
    if let Some(n) = declared {
        if n != out.len() {
            return Err(Error::Format {
                line: 1,
                msg: format!("header declares {n} zeros, found {}", out.len()),
            });
        }
    }
    Ok(out)
}

pub fn load_zeros(path: &Path) -> Result<Vec<ZetaZero>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_zeros(&text)
}

/// Zeros from `zeros.tsv` in the fixture directory, loaded once.
pub fn default_zeros() -> Result<&'static [ZetaZero]> {
    static ZEROS: OnceLock<std::result::Result<Vec<ZetaZero>, Error>> = OnceLock::new();
    ZEROS
        .get_or_init(|| load_zeros(&fixture_dir().join("zeros.tsv")))
        .as_ref()
        .map(|v| v.as_slice())
        .map_err(Clone::clone)
}

/// Height in `[n, n+1]` farthest from every tabulated ordinate.
///
/// Candidates are the endpoints and the midpoints between consecutive ordinates
/// in the interval; the table must extend past `n + 1`.
pub fn zero_avoiding_height(n: usize, zeros: &[ZetaZero]) -> Result<f64> {
    let (lo, hi) = (n as f64, n as f64 + 1.0);
    match zeros.last() {
        Some(z) if z.gamma > hi => {}
        _ => return Err(Error::InvalidArgument(format!("zero table does not reach height {hi}"))),
    }
    let distance = |t: f64| zeros.iter().map(|z| (z.gamma - t).abs()).fold(f64::INFINITY, f64::min);
    let mut candidates = vec![lo, hi];
    candidates.extend(
        zeros
            .windows(2)
            .map(|w| 0.5 * (w[0].gamma + w[1].gamma))
            .filter(|m| (lo..=hi).contains(m)),
    );
    Ok(candidates
        .into_iter()
        .map(|t| (distance(t), t))
        .fold((f64::NEG_INFINITY, lo), |best, c| if c.0 > best.0 { c } else { best })
        .1)
}

/// Distance from `height` to the nearest ordinate, failing below `min_gap`.
pub fn check_zero_gap(height: f64, zeros: &[ZetaZero], min_gap: f64) -> Result<()> {
    if let Some(z) = zeros
        .iter()
        .min_by(|a, b| (a.gamma - height).abs().total_cmp(&(b.gamma - height).abs()))
    {
        let distance = (z.gamma - height).abs();
        if distance < min_gap {
            return Err(Error::ZeroProximity {
                height,
                ordinate: z.gamma,
                distance,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_ordinates() {
        let z = default_zeros().unwrap();
        assert!(z.len() >= 100);
        assert!((z[0].gamma - 14.134725141734694).abs() < 1e-12);
        assert!((z[1].gamma - 21.022039638771555).abs() < 1e-12);
        assert!(z.windows(2).all(|w| w[0].gamma < w[1].gamma));
    }

    #[test]
    fn format_errors() {
        assert!(matches!(parse_zeros("14.1\t1.0\n"), Err(Error::Format { line: 1, .. })));
        assert!(parse_zeros("# count=2\n14.1\t1\t0\n").is_err());
        assert!(parse_zeros("21\t1\t0\n14\t1\t0\n").is_err());
        assert_eq!(parse_zeros("# count=1 v1\n14.1\t1\t0\n").unwrap().len(), 1);
    }

    #[test]
    fn heights_avoid_zeros() {
        let z = default_zeros().unwrap();
        for n in [14, 21, 60, 100] {
            let t = zero_avoiding_height(n, z).unwrap();
            assert!((n as f64..=n as f64 + 1.0).contains(&t));
            assert!(check_zero_gap(t, z, 0.1).is_ok(), "n={n} t={t}");
        }
        assert!(matches!(
            check_zero_gap(14.1352, z, 1e-3),
            Err(Error::ZeroProximity { .. })
        ));
        assert!(zero_avoiding_height(100_000, z).is_err());
    }
}
