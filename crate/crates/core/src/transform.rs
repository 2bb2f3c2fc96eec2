//! The q-deformed polyanalytic Bargmann transform B_m^q, its m = 0
//! product-kernel specialization, the classical comparison transforms, and
//! analysis/isometry tooling.

use num_complex::Complex64;
use std::collections::BTreeMap;

use crate::coherent::{bargmann_kernel, coeff_h, in_admissible_disk, level0_product};
use crate::error::{Error, Result};
use crate::measure::{mu_q_integral, mu_q_integral_from, omega, phi_q, quad_iq, QuadratureSpec};
use crate::qcore::{DeformationParameter, TruncationPolicy};
use crate::qpolys::hermite_classical;
use crate::quadrature::{integrate_refining, QuadResult};
use crate::verify::VerificationReport;

/// A signal on I_q: a function of ξ, a built-in basis function φ_j, or
/// sampled values on a θ-grid (θ = arccos(ξ √((1-q)/2)), θ ∈ (0,π)).
pub enum SampledSignal {
    Function(Box<dyn Fn(f64) -> Complex64 + Send + Sync>),
    /// Built-in φ_j^q (resolved with the q of the transform call).
    Phi(usize),
    ThetaGrid {
        thetas: Vec<f64>,
        values: Vec<Complex64>,
    },
}

impl SampledSignal {
    pub fn from_fn<F: Fn(f64) -> Complex64 + Send + Sync + 'static>(f: F) -> Self {
        SampledSignal::Function(Box::new(f))
    }

    pub fn phi(j: usize) -> Self {
        SampledSignal::Phi(j)
    }

    /// θ-grid signal; nodes must be strictly increasing inside (0,π).
    pub fn theta_grid(thetas: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if thetas.len() != values.len() {
            return Err(Error::InvalidInput(format!(
                "theta grid has {} nodes but {} values",
                thetas.len(),
                values.len()
            )));
        }
        if thetas.len() < 2 {
            return Err(Error::InvalidInput(
                "theta grid needs at least 2 nodes".into(),
            ));
        }
        for pair in thetas.windows(2) {
            if pair[1] <= pair[0] {
                return Err(Error::InvalidInput(
                    "theta grid must be strictly increasing".into(),
                ));
            }
        }
        if thetas[0] <= 0.0 || *thetas.last().unwrap() >= std::f64::consts::PI {
            return Err(Error::InvalidInput(
                "theta grid must lie strictly inside (0, pi)".into(),
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(
                "theta grid values must be finite".into(),
            ));
        }
        Ok(SampledSignal::ThetaGrid { thetas, values })
    }
}

/// Expansion coefficients c_j of a signal in the φ_j^q basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector {
    pub coeffs: Vec<Complex64>,
}

impl CoefficientVector {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }
}

// ---------------------------------------------------------------------------
// q-deformed transforms
// ---------------------------------------------------------------------------

/// Integrate kernel(ξ)·f(ξ) over I_q for the given signal representation.
///
/// Kernel failures at a quadrature node (impossible for interior nodes)
/// poison the rule with NaN and surface as NoConvergence.
fn integrate_signal<K: Fn(f64) -> Result<Complex64>>(
    kernel: K,
    f: &SampledSignal,
    q: DeformationParameter,
    spec: &QuadratureSpec,
    policy: &TruncationPolicy,
) -> Result<QuadResult> {
    let half_width = crate::measure::IntervalIq::new(q).half_width();
    match f {
        SampledSignal::Function(fun) => quad_iq(
            |xi| kernel(xi).unwrap_or(Complex64::new(f64::NAN, 0.0)) * fun(xi),
            q,
            spec,
        ),
        SampledSignal::Phi(j) => {
            let j = *j;
            quad_iq(
                |xi| {
                    let k = kernel(xi).unwrap_or(Complex64::new(f64::NAN, 0.0));
                    k * phi_q(j, xi, q, policy).unwrap_or(f64::NAN)
                },
                q,
                spec,
            )
        }
        SampledSignal::ThetaGrid { thetas, values } => {
            // ∫ g(θ) dθ by composite trapezoid on the supplied nodes;
            // the grid is the quadrature, so no refinement is possible.
            let g: Vec<Complex64> = thetas
                .iter()
                .zip(values.iter())
                .map(|(&theta, &v)| {
                    let xi = half_width * theta.cos();
                    kernel(xi).map(|k| k * v * half_width * theta.sin())
                })
                .collect::<Result<_>>()?;
            let mut total = Complex64::new(0.0, 0.0);
            for i in 1..thetas.len() {
                total += 0.5 * (g[i] + g[i - 1]) * (thetas[i] - thetas[i - 1]);
            }
            Ok(QuadResult {
                value: total,
                nodes_used: thetas.len(),
                est_error: f64::NAN,
            })
        }
    }
}

/// The level-m q-deformed Bargmann transform
/// `B_m^q[f](z) = ∫_{I_q} K_m(ξ, z) f(ξ) dξ`,
/// requiring z inside the level-m admissibility disk.
///
/// Defining contract: `B_m^q[φ_j^q](z) = h_j^{m,q}(z)`.
pub fn bargmann_q(
    f: &SampledSignal,
    m: usize,
    q: DeformationParameter,
    z: Complex64,
    spec: &QuadratureSpec,
    policy: &TruncationPolicy,
) -> Result<QuadResult> {
    if !in_admissible_disk(z, m, q) {
        return Err(Error::Domain(format!(
            "z={z} outside the level-{m} admissibility disk"
        )));
    }
    integrate_signal(
        |xi| bargmann_kernel(xi, z, m, q, policy),
        f,
        q,
        spec,
        policy,
    )
}

/// The m = 0 transform through its explicit product kernel
/// Π_k (1 - √2 z ξ (1-q) q^k + z²(1-q) q^{2k})^{-1} · sqrt(√2 ω_q(√2ξ)).
///
/// An independent evaluation route from [`bargmann_q`] at m = 0 (plain
/// product versus q-Pochhammer pair), kept separate for cross-checking.
pub fn bargmann_q_m0(
    f: &SampledSignal,
    q: DeformationParameter,
    z: Complex64,
    spec: &QuadratureSpec,
    policy: &TruncationPolicy,
) -> Result<QuadResult> {
    if !in_admissible_disk(z, 0, q) {
        return Err(Error::Domain(format!(
            "z={z} outside the admissibility disk"
        )));
    }
    integrate_signal(
        |xi| {
            let w = omega(std::f64::consts::SQRT_2 * xi, q, policy)?;
            Ok(level0_product(z, xi, q, policy)? * (std::f64::consts::SQRT_2 * w).sqrt())
        },
        f,
        q,
        spec,
        policy,
    )
}

// ---------------------------------------------------------------------------
// Classical comparison transforms
// ---------------------------------------------------------------------------

/// Half-width of the truncated real line for the classical transforms; the
/// Gaussian tail of the test signals beyond |ξ| = 10 is below 1e-20.
const CLASSICAL_CUTOFF: f64 = 10.0;

/// Classical Bargmann transform
/// `B[f](z) = π^{-1/4} ∫_ℝ exp(-z²/2 - ξ²/2 + √2 ξ z) f(ξ) dξ`.
pub fn classical_bargmann<F: Fn(f64) -> Complex64>(
    f: F,
    z: Complex64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let pref = std::f64::consts::PI.powf(-0.25);
    let r = integrate_refining(
        |xi| (-0.5 * z * z - 0.5 * xi * xi + std::f64::consts::SQRT_2 * xi * z).exp() * f(xi),
        -CLASSICAL_CUTOFF,
        CLASSICAL_CUTOFF,
        spec.node_count,
        spec.max_refinements,
        spec.target_tol,
    )?;
    Ok(pref * r.value)
}

/// Classical level-m (true-polyanalytic) Bargmann transform
/// `B_m[f](z) = (-1)^m (2^m m! √π)^{-1/2}
///             ∫_ℝ exp(-z²/2 - ξ²/2 + √2 ξ z) H_m(ξ - (z+z̄)/√2) f(ξ) dξ`.
///
/// The Hermite shift (z+z̄)/√2 is what makes `B_m[ψ_j] = h_j^m` hold exactly
/// for the Hermite functions ψ_j.
pub fn classical_bm<F: Fn(f64) -> Complex64>(
    f: F,
    m: usize,
    z: Complex64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let mut fact = 1.0;
    for k in 1..=m {
        fact *= k as f64;
    }
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let pref = sign / (2f64.powi(m as i32) * fact * std::f64::consts::PI.sqrt()).sqrt();
    let shift = (z + z.conj()).re / std::f64::consts::SQRT_2;
    let r = integrate_refining(
        |xi| {
            (-0.5 * z * z - 0.5 * xi * xi + std::f64::consts::SQRT_2 * xi * z).exp()
                * hermite_classical(m, xi - shift)
                * f(xi)
        },
        -CLASSICAL_CUTOFF,
        CLASSICAL_CUTOFF,
        spec.node_count,
        spec.max_refinements,
        spec.target_tol,
    )?;
    Ok(pref * r.value)
}

/// Hermite function ψ_j(ξ) = (2^j j! √π)^{-1/2} e^{-ξ²/2} H_j(ξ).
pub fn hermite_function(j: usize, xi: f64) -> f64 {
    let mut fact = 1.0;
    for k in 1..=j {
        fact *= k as f64;
    }
    hermite_classical(j, xi) * (-0.5 * xi * xi).exp()
        / (2f64.powi(j as i32) * fact * std::f64::consts::PI.sqrt()).sqrt()
}

// ---------------------------------------------------------------------------
// Analysis and isometry
// ---------------------------------------------------------------------------

/// Projection coefficients c_j = ∫_{I_q} φ_j^q(ξ) f(ξ) dξ for j = 0..=j_upper.
pub fn analyze(
    f: &SampledSignal,
    q: DeformationParameter,
    j_upper: usize,
    spec: &QuadratureSpec,
    policy: &TruncationPolicy,
) -> Result<CoefficientVector> {
    let mut coeffs = Vec::with_capacity(j_upper + 1);
    for j in 0..=j_upper {
        let r = integrate_signal(
            |xi| phi_q(j, xi, q, policy).map(|v| v.into()),
            f,
            q,
            spec,
            policy,
        )?;
        coeffs.push(r.value);
    }
    Ok(CoefficientVector::new(coeffs))
}

/// Norm in the image space: sqrt(∫ |F(z)|² dμ_q).
pub fn norm_a2<F: Fn(Complex64) -> Complex64>(
    big_f: F,
    q: DeformationParameter,
    j_max: usize,
    angular_nodes: usize,
    policy: &TruncationPolicy,
) -> Result<f64> {
    let r = mu_q_integral(
        |z| Complex64::new(big_f(z).norm_sqr(), 0.0),
        q,
        j_max,
        angular_nodes,
        policy,
    )?;
    Ok(r.value.re.max(0.0).sqrt())
}

/// Isometry check for f = Σ_{j≤J} c_j φ_j^q: compares ‖f‖² = Σ|c_j|² with
/// ‖B_m^q f‖² under dμ_q, where B_m^q f(z) = Σ_j c_j h_j^{m,q}(z).
///
/// Reports the norm ratio, the worst Gram deviation of {h_j^{m,q}}_{j≤J}
/// from the identity under the full measure, and — because the level-m
/// domain excludes the first m circles — the same numbers with those circles
/// dropped. Mandatory at m = 0; exploratory (report-only) for m ≥ 1.
pub fn isometry_check(
    coeffs: &CoefficientVector,
    m: usize,
    q: DeformationParameter,
    j_max: usize,
    angular_nodes: usize,
    policy: &TruncationPolicy,
) -> Result<VerificationReport> {
    let j_upper = coeffs.coeffs.len();
    let norm_f_sq = coeffs.norm_sqr();
    let image = |z: Complex64| -> Complex64 {
        coeffs
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, &c)| c * coeff_h(j, m, z, q))
            .sum()
    };
    let full = mu_q_integral(
        |z| Complex64::new(image(z).norm_sqr(), 0.0),
        q,
        j_max,
        angular_nodes,
        policy,
    )?;
    let restricted = mu_q_integral_from(
        |z| Complex64::new(image(z).norm_sqr(), 0.0),
        m + 1,
        q,
        j_max,
        angular_nodes,
        policy,
    )?;
    // Gram deviation of the h_j under the full measure
    let mut gram_dev = 0.0f64;
    for j in 0..j_upper {
        for k in j..j_upper {
            let g = mu_q_integral(
                |z| coeff_h(j, m, z, q).conj() * coeff_h(k, m, z, q),
                q,
                j_max,
                angular_nodes,
                policy,
            )?;
            let want = if j == k { 1.0 } else { 0.0 };
            gram_dev = gram_dev.max((g.value - want).norm());
        }
    }
    let err = if norm_f_sq > 0.0 {
        (full.value.re.sqrt() - norm_f_sq.sqrt()).abs() / norm_f_sq.sqrt()
    } else {
        full.value.re.sqrt()
    };
    let tolerance = 1e-6;
    let mut params = BTreeMap::new();
    params.insert("m".into(), m.to_string());
    params.insert("q".into(), format!("{}", q.value()));
    params.insert("J".into(), j_upper.to_string());
    params.insert("norm_f".into(), format!("{:.12e}", norm_f_sq.sqrt()));
    params.insert(
        "norm_Bf_full_measure".into(),
        format!("{:.12e}", full.value.re.max(0.0).sqrt()),
    );
    params.insert(
        "norm_Bf_first_circles_dropped".into(),
        format!("{:.12e}", restricted.value.re.max(0.0).sqrt()),
    );
    params.insert(
        "gram_max_dev_full_measure".into(),
        format!("{:.6e}", gram_dev),
    );
    Ok(VerificationReport {
        check_id: format!("isometry_m{m}"),
        params,
        max_abs_error: err,
        tolerance,
        passed: err <= tolerance,
        notes: if m == 0 {
            "norm preservation under the discrete-circle measure".into()
        } else {
            format!(
                "level-{m} norm preservation holds for the full measure; dropping the first {m} \
                 circle(s) (the part of the plane outside the admissibility disk) breaks it — \
                 the full measure is the consistent reading"
            )
        },
    })
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::normalization;
    use crate::measure::circles_for_tail;
    use crate::qcore::qbracket_factorial;
    use crate::qpolys::classical_basis_coeff;

    fn dp(q: f64) -> DeformationParameter {
        DeformationParameter::new(q).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// tiny deterministic xorshift for test randomness
    struct XorShift(u64);
    impl XorShift {
        fn next_f64(&mut self) -> f64 {
            let mut x = self.0;
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            self.0 = x;
            (x >> 11) as f64 / (1u64 << 53) as f64
        }
    }

    #[test]
    fn transform_contract_phi_j_to_coeff_h() {
        let policy = TruncationPolicy::default();
        let spec = QuadratureSpec::default();
        let q = dp(0.5);
        for m in 0..=2 {
            for j in 0..=4 {
                let z = c(0.3, 0.12) * q.powi(m as i32).sqrt();
                let got = bargmann_q(&SampledSignal::phi(j), m, q, z, &spec, &policy)
                    .unwrap()
                    .value;
                let want = coeff_h(j, m, z, q);
                assert!(
                    (got - want).norm() < 1e-6 * want.norm().max(1.0),
                    "m={m} j={j}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn transform_m0_simple_values() {
        let policy = TruncationPolicy::default();
        let spec = QuadratureSpec::default();
        let q = dp(0.5);
        // B[φ_0](z) = 1 for any admissible z
        for z in [c(0.0, 0.0), c(0.4, 0.0), c(-0.3, 0.6)] {
            let v = bargmann_q(&SampledSignal::phi(0), 0, q, z, &spec, &policy)
                .unwrap()
                .value;
            assert!((v - c(1.0, 0.0)).norm() < 1e-8, "z={z}: {v}");
        }
        // B[φ_2](0.4) = z²/sqrt([2]_q!)
        let v = bargmann_q(&SampledSignal::phi(2), 0, q, c(0.4, 0.0), &spec, &policy)
            .unwrap()
            .value;
        let want = 0.16 / qbracket_factorial(2, q).sqrt();
        assert!((v.re - want).abs() < 1e-8 && v.im.abs() < 1e-10);
    }

    #[test]
    fn product_kernel_route_agrees_at_m0() {
        let policy = TruncationPolicy::default();
        let spec = QuadratureSpec::default();
        let q = dp(0.5);
        let mut rng = XorShift(0x9E3779B97F4A7C15);
        for _ in 0..20 {
            // random finite φ-combination and admissible z
            let coeffs: Vec<Complex64> = (0..5)
                .map(|_| c(rng.next_f64() - 0.5, rng.next_f64() - 0.5))
                .collect();
            let z = c(0.8 * (rng.next_f64() - 0.5), 0.8 * (rng.next_f64() - 0.5));
            let cl = coeffs.clone();
            let f = SampledSignal::from_fn(move |xi| {
                let policy = TruncationPolicy::default();
                cl.iter()
                    .enumerate()
                    .map(|(j, &cj)| cj * phi_q(j, xi, dp(0.5), &policy).unwrap())
                    .sum()
            });
            let a = bargmann_q(&f, 0, q, z, &spec, &policy).unwrap().value;
            let b = bargmann_q_m0(&f, q, z, &spec, &policy).unwrap().value;
            assert!((a - b).norm() < 1e-8 * a.norm().max(1.0), "{a} vs {b}");
        }
    }

    #[test]
    fn transform_through_wavefunction_normalization() {
        // B_m[φ_j](z) at m=1 equals the coefficient, which ties the kernel to
        // √N times the closed wavefunction
        let policy = TruncationPolicy::default();
        let spec = QuadratureSpec::default();
        let q = dp(0.5);
        let z = c(0.3, 0.0);
        let v = bargmann_q(&SampledSignal::phi(1), 1, q, z, &spec, &policy)
            .unwrap()
            .value;
        let want = coeff_h(1, 1, z, q);
        assert!((v - want).norm() < 1e-7 * want.norm().max(1.0));
        let n = normalization(1, z.norm_sqr(), q, &policy).unwrap();
        assert!(n > 1.0);
    }

    #[test]
    fn transform_domain_and_zero_signal() {
        let policy = TruncationPolicy::default();
        let spec = QuadratureSpec::default();
        let q = dp(0.5);
        assert!(matches!(
            bargmann_q(&SampledSignal::phi(0), 0, q, c(1.5, 0.0), &spec, &policy),
            Err(Error::Domain(_))
        ));
        let zero = SampledSignal::from_fn(|_| c(0.0, 0.0));
        let v = bargmann_q(&zero, 0, q, c(0.3, 0.2), &spec, &policy)
            .unwrap()
            .value;
        assert_eq!(v, c(0.0, 0.0));
    }

    #[test]
    fn transform_linearity_at_fixed_quadrature() {
        let policy = TruncationPolicy::default();
        let spec = QuadratureSpec {
            node_count: 128,
            max_refinements: 3,
            target_tol: 1e-13,
        };
        let q = dp(0.5);
        let z = c(0.25, 0.3);
        let (alpha, beta) = (c(0.7, -0.2), c(-0.4, 0.5));
        let f = SampledSignal::phi(1);
        let g = SampledSignal::phi(3);
        let combo = SampledSignal::from_fn(move |xi| {
            let policy = TruncationPolicy::default();
            alpha * phi_q(1, xi, dp(0.5), &policy).unwrap()
                + beta * phi_q(3, xi, dp(0.5), &policy).unwrap()
        });
        let va = bargmann_q(&f, 0, q, z, &spec, &policy).unwrap().value;
        let vb = bargmann_q(&g, 0, q, z, &spec, &policy).unwrap().value;
        let vc = bargmann_q(&combo, 0, q, z, &spec, &policy).unwrap().value;
        assert!((vc - (alpha * va + beta * vb)).norm() < 1e-10);
    }

    #[test]
    fn theta_grid_signals() {
        let policy = TruncationPolicy::default();
        let spec = QuadratureSpec::default();
        let q = dp(0.5);
        // φ_0 sampled densely on a θ-grid reproduces B[φ_0] = 1 approximately
        let n = 2000;
        let thetas: Vec<f64> = (1..n)
            .map(|i| std::f64::consts::PI * i as f64 / n as f64)
            .collect();
        let half_width = crate::measure::IntervalIq::new(q).half_width();
        let values: Vec<Complex64> = thetas
            .iter()
            .map(|&t| c(phi_q(0, half_width * t.cos(), q, &policy).unwrap(), 0.0))
            .collect();
        let sig = SampledSignal::theta_grid(thetas, values).unwrap();
        let v = bargmann_q(&sig, 0, q, c(0.2, 0.1), &spec, &policy)
            .unwrap()
            .value;
        assert!((v - c(1.0, 0.0)).norm() < 1e-4, "{v}");
        // malformed grids refused
        assert!(SampledSignal::theta_grid(vec![0.5], vec![c(1.0, 0.0)]).is_err());
        assert!(SampledSignal::theta_grid(vec![0.5, 0.4], vec![c(1.0, 0.0); 2]).is_err());
        assert!(SampledSignal::theta_grid(vec![0.0, 0.4], vec![c(1.0, 0.0); 2]).is_err());
    }

    #[test]
    fn m0_kernel_approaches_classical_kernel_structure() {
        // product kernel times sqrt(√2 ω) at fixed (z, ξ) approaches
        // e^{√2 ξ z - z²/2} π^{-1/4} e^{-ξ²/2}; error shrinks from q = 0.99
        // to q = 0.999 on a fixed grid
        let policy = TruncationPolicy::default();
        let grid = [
            (c(0.3, 0.0), 0.4),
            (c(0.2, 0.25), -1.0),
            (c(-0.35, 0.1), 2.0),
        ];
        let mut last = f64::INFINITY;
        for qv in [0.99, 0.999] {
            let q = dp(qv);
            let mut sup = 0.0f64;
            for &(z, xi) in &grid {
                let w = omega(std::f64::consts::SQRT_2 * xi, q, &policy).unwrap();
                let kernel = crate::coherent::level0_product(z, xi, q, &policy).unwrap()
                    * (std::f64::consts::SQRT_2 * w).sqrt();
                let classical = (std::f64::consts::SQRT_2 * xi * z - 0.5 * z * z).exp()
                    * std::f64::consts::PI.powf(-0.25)
                    * (-0.5 * xi * xi).exp();
                sup = sup.max((kernel - classical).norm());
            }
            assert!(
                sup < last,
                "kernel-structure error not decreasing at q={qv}"
            );
            last = sup;
        }
        assert!(last < 5e-2, "final error {last}");
    }

    #[test]
    fn m0_transform_approaches_classical_transform() {
        // a fixed smooth bump transformed at q = 0.99 and 0.999 approaches
        // the classical transform of the same bump
        let policy = TruncationPolicy::default();
        let spec = QuadratureSpec {
            node_count: 256,
            max_refinements: 4,
            target_tol: 1e-9,
        };
        let bump = |xi: f64| c((-xi * xi).exp(), 0.0);
        let z = c(0.3, 0.1);
        let classical = classical_bargmann(bump, z, &QuadratureSpec::default()).unwrap();
        let mut last = f64::INFINITY;
        for qv in [0.99, 0.999] {
            let q = dp(qv);
            let f = SampledSignal::from_fn(move |xi| bump(xi));
            let v = bargmann_q_m0(&f, q, z, &spec, &policy).unwrap().value;
            let err = (v - classical).norm();
            assert!(err < last, "transform limit error not decreasing at q={qv}");
            last = err;
        }
        assert!(last < 1e-2, "final error {last}");
    }

    #[test]
    fn classical_bargmann_ground_state_is_constant_one() {
        let spec = QuadratureSpec::default();
        for z in [c(0.0, 0.0), c(0.7, 0.4), c(-1.2, 0.9)] {
            let v = classical_bargmann(|xi| c(hermite_function(0, xi), 0.0), z, &spec).unwrap();
            assert!((v - c(1.0, 0.0)).norm() < 1e-10, "z={z}: {v}");
        }
    }

    #[test]
    fn classical_bm_matches_bargmann_at_m0() {
        let spec = QuadratureSpec::default();
        let z = c(0.5, -0.3);
        let f = |xi: f64| c((-0.5 * (xi - 0.3) * (xi - 0.3)).exp(), 0.0);
        let a = classical_bargmann(f, z, &spec).unwrap();
        let b = classical_bm(f, 0, z, &spec).unwrap();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn classical_bm_reproduces_polyanalytic_basis() {
        let spec = QuadratureSpec::default();
        let z = c(0.4, 0.3);
        for m in 0..=3 {
            for j in 0..=3 {
                let got =
                    classical_bm(move |xi| c(hermite_function(j, xi), 0.0), m, z, &spec).unwrap();
                let want = classical_basis_coeff(j, m, z);
                assert!((got - want).norm() < 1e-6, "m={m} j={j}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn analyze_projects_cleanly() {
        let policy = TruncationPolicy::default();
        let spec = QuadratureSpec::default();
        let q = dp(0.5);
        let cv = analyze(&SampledSignal::phi(3), q, 6, &spec, &policy).unwrap();
        for (j, cj) in cv.coeffs.iter().enumerate() {
            let want = if j == 3 { 1.0 } else { 0.0 };
            assert!((cj.re - want).abs() < 1e-8 && cj.im.abs() < 1e-12, "j={j}");
        }
        let zero = analyze(
            &SampledSignal::from_fn(|_| c(0.0, 0.0)),
            q,
            4,
            &spec,
            &policy,
        )
        .unwrap();
        assert!(zero.norm_sqr() == 0.0);
        // Parseval for (φ_0 + φ_1)/√2
        let f = SampledSignal::from_fn(|xi| {
            let policy = TruncationPolicy::default();
            c(
                (phi_q(0, xi, dp(0.5), &policy).unwrap() + phi_q(1, xi, dp(0.5), &policy).unwrap())
                    / 2f64.sqrt(),
                0.0,
            )
        });
        let cv = analyze(&f, q, 8, &spec, &policy).unwrap();
        assert!((cv.norm_sqr() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn norm_a2_values() {
        let policy = TruncationPolicy::default();
        let q = dp(0.5);
        let j_max = circles_for_tail(q, 1e-13);
        let one = norm_a2(|_| c(1.0, 0.0), q, j_max, 64, &policy).unwrap();
        assert!((one - 1.0).abs() < 1e-9);
        // h_2^{0,q}(z) = z²/√([2]_q!) has unit norm
        let n2 = qbracket_factorial(2, q).sqrt();
        let h2 = norm_a2(move |z| z * z / n2, q, j_max, 64, &policy).unwrap();
        assert!((h2 - 1.0).abs() < 1e-8);
        // ‖z + z²‖ = sqrt([1]_q! + [2]_q!) = sqrt(2.5)
        let v = norm_a2(|z| z + z * z, q, j_max, 64, &policy).unwrap();
        assert!((v - 2.5f64.sqrt()).abs() < 1e-8);
    }

    #[test]
    fn isometry_reports() {
        let policy = TruncationPolicy::default();
        let q = dp(0.5);
        let j_max = circles_for_tail(q, 1e-13);
        // m = 0: exact isometry
        let mut rng = XorShift(42);
        for _ in 0..5 {
            let coeffs: Vec<Complex64> = (0..6)
                .map(|_| c(rng.next_f64() - 0.5, rng.next_f64() - 0.5))
                .collect();
            let r =
                isometry_check(&CoefficientVector::new(coeffs), 0, q, j_max, 64, &policy).unwrap();
            assert!(r.passed, "m=0 isometry failed: {r:?}");
        }
        // zero signal: both norms zero
        let r = isometry_check(
            &CoefficientVector::new(vec![c(0.0, 0.0); 4]),
            0,
            q,
            j_max,
            64,
            &policy,
        )
        .unwrap();
        assert!(r.passed && r.max_abs_error == 0.0);
        // m = 1: full measure preserves norms; restriction does not
        let r = isometry_check(
            &CoefficientVector::new(vec![c(1.0, 0.0)]),
            1,
            q,
            j_max,
            64,
            &policy,
        )
        .unwrap();
        assert!(r.passed, "m=1 full-measure isometry failed: {r:?}");
        let restricted: f64 = r.params["norm_Bf_first_circles_dropped"].parse().unwrap();
        assert!(
            (restricted - 1.0).abs() > 0.1,
            "restricted norm unexpectedly 1"
        );
    }
}
