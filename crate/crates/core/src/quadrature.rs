//! Minimal quadrature kit: Gauss-Legendre nodes/weights (Newton on the
//! Legendre recurrence) and a doubling refinement driver.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Gauss-Legendre nodes and weights on [-1, 1].
///
/// Nodes are found by Newton iteration from the Chebyshev initial guess;
/// deterministic for a given n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2, "Gauss-Legendre rule needs at least 2 nodes");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and its derivative by recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Result of a refined quadrature: the value, the node count of the final
/// rule and the difference between the last two refinements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub nodes_used: usize,
    pub est_error: f64,
}

/// Integrate `f` over [a, b] with Gauss-Legendre rules of doubling size until
/// two refinements agree to `tol` relative to max(|value|, L1 estimate).
pub fn integrate_refining<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    initial_nodes: usize,
    max_refinements: usize,
    tol: f64,
) -> Result<QuadResult> {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut n = initial_nodes.max(2);
    let mut prev: Option<Complex64> = None;
    for _ in 0..=max_refinements {
        let (xs, ws) = gauss_legendre(n);
        let mut total = Complex64::new(0.0, 0.0);
        let mut l1 = 0.0;
        for (x, w) in xs.iter().zip(ws.iter()) {
            let v = f(mid + half * x);
            total += w * v;
            l1 += w * v.norm();
        }
        total *= half;
        l1 *= half;
        if let Some(p) = prev {
            let diff = (total - p).norm();
            let scale = total.norm().max(l1).max(f64::MIN_POSITIVE);
            if diff <= tol * scale {
                return Ok(QuadResult {
                    value: total,
                    nodes_used: n,
                    est_error: diff,
                });
            }
        }
        prev = Some(total);
        n *= 2;
    }
    Err(Error::NoConvergence(format!(
        "no agreement to {tol:e} after refining to {} nodes",
        n / 2
    )))
}
