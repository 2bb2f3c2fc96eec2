//! Grid specs and CSV signal input.

use anyhow::{bail, Result};
use num_complex::Complex64;

/// A 1D grid "a:b:n" (n points from a to b inclusive; n=1 gives [a], n=0 is
/// empty) or a complex mesh "a:b:n,c:d:m" (real × imaginary, row-major).
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub re: (f64, f64, usize),
    pub im: Option<(f64, f64, usize)>,
}

fn parse_axis(s: &str) -> Result<(f64, f64, usize)> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        bail!("grid axis must be start:stop:count, got `{s}`");
    }
    let a: f64 = parts[0].trim().parse()?;
    let b: f64 = parts[1].trim().parse()?;
    let n: usize = parts[2].trim().parse()?;
    if !a.is_finite() || !b.is_finite() {
        bail!("grid endpoints must be finite");
    }
    Ok((a, b, n))
}

impl GridSpec {
    pub fn parse(s: &str) -> Result<Self> {
        match s.split_once(',') {
            None => Ok(Self {
                re: parse_axis(s)?,
                im: None,
            }),
            Some((r, i)) => Ok(Self {
                re: parse_axis(r)?,
                im: Some(parse_axis(i)?),
            }),
        }
    }

    fn axis_points((a, b, n): (f64, f64, usize)) -> Vec<f64> {
        match n {
            0 => vec![],
            1 => vec![a],
            _ => (0..n)
                .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
                .collect(),
        }
    }

    pub fn real_points(&self) -> Result<Vec<f64>> {
        if self.im.is_some() {
            bail!("this command takes a one-dimensional (real) grid");
        }
        Ok(Self::axis_points(self.re))
    }

    pub fn complex_points(&self) -> Vec<Complex64> {
        let res = Self::axis_points(self.re);
        match self.im {
            None => res.into_iter().map(|r| Complex64::new(r, 0.0)).collect(),
            Some(im) => {
                let ims = Self::axis_points(im);
                let mut out = Vec::with_capacity(res.len() * ims.len());
                for &r in &res {
                    for &i in &ims {
                        out.push(Complex64::new(r, i));
                    }
                }
                out
            }
        }
    }
}

/// Parse a complex scalar "re" or "re,im".
pub fn parse_complex(s: &str) -> Result<Complex64> {
    match s.split_once(',') {
        None => Ok(Complex64::new(s.trim().parse()?, 0.0)),
        Some((r, i)) => Ok(Complex64::new(r.trim().parse()?, i.trim().parse()?)),
    }
}

/// Signal CSV: header `theta,re,im`, one node per line, UTF-8, LF.
pub fn parse_signal_csv(content: &str) -> Result<(Vec<f64>, Vec<Complex64>)> {
    let mut lines = content.lines();
    let header = lines.next().map(|l| l.trim_end_matches('\r'));
    if header != Some("theta,re,im") {
        bail!("expected header `theta,re,im`, got {header:?}");
    }
    let mut thetas = Vec::new();
    let mut values = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 3 {
            bail!("line {}: expected 3 columns, got {}", idx + 2, cols.len());
        }
        let theta: f64 = cols[0]
            .trim()
            .parse()
            .map_err(|e| anyhow::anyhow!("line {}: bad theta `{}`: {e}", idx + 2, cols[0]))?;
        let re: f64 = cols[1]
            .trim()
            .parse()
            .map_err(|e| anyhow::anyhow!("line {}: bad re `{}`: {e}", idx + 2, cols[1]))?;
        let im: f64 = cols[2]
            .trim()
            .parse()
            .map_err(|e| anyhow::anyhow!("line {}: bad im `{}`: {e}", idx + 2, cols[2]))?;
        thetas.push(theta);
        values.push(Complex64::new(re, im));
    }
    Ok((thetas, values))
}
