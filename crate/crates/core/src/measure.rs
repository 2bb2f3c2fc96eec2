//! The two measure-side structures: the continuous weight ω_q with its
//! orthonormal functions φ_j^q on the interval I_q (plus quadrature over
//! I_q), and the discrete-circle measure dμ_q on the complex plane.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{
    log_qpoch_infinite_real, qpoch_finite_real, DeformationParameter, TruncationPolicy,
};
use crate::qpolys::cq_hermite;
use crate::quadrature::{integrate_refining, QuadResult};

/// The open interval I_q = (-√2/√(1-q), √2/√(1-q)) carrying the φ_j^q.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalIq {
    q: DeformationParameter,
}

impl IntervalIq {
    pub fn new(q: DeformationParameter) -> Self {
        Self { q }
    }

    /// √2/√(1-q), the right endpoint.
    pub fn half_width(self) -> f64 {
        (2.0 / self.q.one_minus()).sqrt()
    }

    /// Strict interior membership.
    pub fn contains(self, xi: f64) -> bool {
        xi.abs() < self.half_width()
    }
}

/// Node count / refinement policy for the θ-substituted quadrature on I_q.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Nodes of the first rule.
    pub node_count: usize,
    /// Doubling steps allowed beyond the first rule.
    pub max_refinements: usize,
    /// Convergence is declared when two successive refinements agree to this
    /// relative tolerance.
    pub target_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            node_count: 64,
            max_refinements: 7,
            target_tol: 1e-11,
        }
    }
}

// ---------------------------------------------------------------------------
// The weight ω_q and the functions φ_j^q
// ---------------------------------------------------------------------------

/// The weight
/// ω_q(u) = ((q;q)_∞ √(1-q))/(4π √(1-(1-q)u²/4)) · Π_{k≥0}(1 + (2-u²(1-q))q^k + q^{2k}),
/// defined for |u| < 2/√(1-q).
///
/// Computed in log space: near q → 1 the (q;q)_∞ prefactor underflows f64
/// while the product overflows, but their combination stays O(1).
pub fn omega(u: f64, q: DeformationParameter, policy: &TruncationPolicy) -> Result<f64> {
    let one_minus = q.one_minus();
    let bound = 2.0 / one_minus.sqrt();
    if u.abs() >= bound {
        return Err(Error::Domain(format!(
            "omega requires |u| < 2/sqrt(1-q) = {bound}, got {u}"
        )));
    }
    let qv = q.value();
    let c = 2.0 - u * u * one_minus; // in (-2, 2] on the domain
    let mut log_prod = 0.0;
    let mut qk = 1.0;
    let mut converged = false;
    for _ in 0..policy.max_terms {
        let offset = c.abs() * qk + qk * qk;
        if offset < policy.epsilon && offset / (1.0 - qv) < policy.epsilon {
            converged = true;
            break;
        }
        // factor (1 - e^{iφ} q^k)(1 - e^{-iφ} q^k) with 2cos φ = c: positive
        log_prod += (1.0 + c * qk + qk * qk).ln();
        qk *= qv;
    }
    if !converged {
        return Err(Error::MaxTermsExceeded {
            epsilon: policy.epsilon,
            max_terms: policy.max_terms,
        });
    }
    let log_qq_inf = log_qpoch_infinite_real(qv, q, policy)?;
    let log_pref = 0.5 * one_minus.ln()
        - (4.0 * std::f64::consts::PI).ln()
        - 0.5 * (1.0 - one_minus * u * u / 4.0).ln();
    Ok((log_qq_inf + log_pref + log_prod).exp())
}

/// φ_j^q(ξ) = sqrt(√2 ω_q(√2 ξ)/(q;q)_j) H_j(√((1-q)/2) ξ | q) on the open
/// interval I_q.
pub fn phi_q(j: usize, xi: f64, q: DeformationParameter, policy: &TruncationPolicy) -> Result<f64> {
    let iq = IntervalIq::new(q);
    if !iq.contains(xi) {
        return Err(Error::Domain(format!(
            "phi_q requires xi in the open interval (-{h}, {h}), got {xi}",
            h = iq.half_width()
        )));
    }
    let w = omega(std::f64::consts::SQRT_2 * xi, q, policy)?;
    let x = (q.one_minus() / 2.0).sqrt() * xi;
    let norm = qpoch_finite_real(q.value(), q, j);
    Ok((std::f64::consts::SQRT_2 * w / norm).sqrt() * cq_hermite(j, x, q))
}

pub fn phi_q_batch(
    j: usize,
    xis: &[f64],
    q: DeformationParameter,
    policy: &TruncationPolicy,
) -> Result<Vec<f64>> {
    xis.iter().map(|&xi| phi_q(j, xi, q, policy)).collect()
}

// ---------------------------------------------------------------------------
// Quadrature over I_q
// ---------------------------------------------------------------------------

/// ∫_{I_q} f(ξ) dξ through the substitution ξ = √(2/(1-q)) cos θ, θ ∈ (0,π),
/// which removes the inverse-square-root endpoint singularity that ω_q-type
/// integrands carry. Gauss-Legendre in θ with doubling refinement.
pub fn quad_iq<F: Fn(f64) -> Complex64>(
    f: F,
    q: DeformationParameter,
    spec: &QuadratureSpec,
) -> Result<QuadResult> {
    let half_width = IntervalIq::new(q).half_width();
    integrate_refining(
        |theta: f64| {
            let xi = half_width * theta.cos();
            f(xi) * half_width * theta.sin()
        },
        0.0,
        std::f64::consts::PI,
        spec.node_count,
        spec.max_refinements,
        spec.target_tol,
    )
}

/// Convenience: [`quad_iq`] returning only the value.
pub fn quad_iq_value<F: Fn(f64) -> Complex64>(
    f: F,
    q: DeformationParameter,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    quad_iq(f, q, spec).map(|r| r.value)
}

// ---------------------------------------------------------------------------
// The discrete-circle measure dμ_q
// ---------------------------------------------------------------------------

/// The measure dμ_q = Σ_j w_j · (normalized Lebesgue measure on the circle of
/// radius ρ_j), with ρ_j = q^{j/2}(1-q)^{-1/2} and
/// w_j = q^j (q;q)_∞/(q;q)_j.
///
/// Each circle carries total angular mass 1; with that convention the
/// monomial moments come out as `∫|z|^{2n} dμ_q = [n]_q!`.
#[derive(Debug, Clone)]
pub struct CircleMeasure {
    q: DeformationParameter,
    qq_inf: f64,
}

impl CircleMeasure {
    pub fn new(q: DeformationParameter, policy: &TruncationPolicy) -> Result<Self> {
        let qq_inf = log_qpoch_infinite_real(q.value(), q, policy)?.exp();
        Ok(Self { q, qq_inf })
    }

    /// ρ_j = q^{j/2}/√(1-q); strictly decreasing, ρ_j²(1-q) = q^j.
    pub fn radius(&self, j: usize) -> f64 {
        self.q.value().powf(j as f64 / 2.0) / self.q.one_minus().sqrt()
    }

    /// w_j = q^j (q;q)_∞/(q;q)_j. The weights sum to 1 over all circles.
    pub fn weight(&self, j: usize) -> f64 {
        self.q.powi(j as i32) * self.qq_inf / qpoch_finite_real(self.q.value(), self.q, j)
    }

    /// Upper bound on Σ_{j>j_max} w_j (uses w_j ≤ q^j).
    pub fn weight_tail(&self, j_max: usize) -> f64 {
        self.q.powi(j_max as i32 + 1) / self.q.one_minus()
    }
}

/// Value of a dμ_q integral together with the truncation diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuQResult {
    pub value: Complex64,
    /// Bound on the weight mass dropped past the last circle used.
    pub weight_tail: f64,
    /// Number of circles summed.
    pub circles: usize,
}

/// ∫ g dμ_q ≈ Σ_{j≤j_max} w_j (1/2π)∫_0^{2π} g(ρ_j e^{iθ}) dθ, with the
/// angular integral by the periodic trapezoid rule on `angular_nodes`
/// equispaced points (spectrally accurate for smooth integrands).
///
/// Circle contributions are summed in increasing j for determinism.
pub fn mu_q_integral<G: Fn(Complex64) -> Complex64>(
    g: G,
    q: DeformationParameter,
    j_max: usize,
    angular_nodes: usize,
    policy: &TruncationPolicy,
) -> Result<MuQResult> {
    mu_q_integral_from(g, 0, q, j_max, angular_nodes, policy)
}

/// [`mu_q_integral`] restricted to circles with index ≥ `first_circle`.
///
/// `first_circle = m+1` integrates only over the circles strictly inside the
/// admissibility disk of level m (the level-m domain question is probed by
/// comparing this against the full measure).
pub fn mu_q_integral_from<G: Fn(Complex64) -> Complex64>(
    g: G,
    first_circle: usize,
    q: DeformationParameter,
    j_max: usize,
    angular_nodes: usize,
    policy: &TruncationPolicy,
) -> Result<MuQResult> {
    if angular_nodes == 0 {
        return Err(Error::InvalidInput("angular_nodes must be positive".into()));
    }
    let measure = CircleMeasure::new(q, policy)?;
    let mut total = Complex64::new(0.0, 0.0);
    let step = 2.0 * std::f64::consts::PI / angular_nodes as f64;
    for j in first_circle..=j_max {
        let rho = measure.radius(j);
        let mut circle = Complex64::new(0.0, 0.0);
        for i in 0..angular_nodes {
            let theta = step * i as f64;
            circle += g(Complex64::from_polar(rho, theta));
        }
        total += measure.weight(j) * circle / angular_nodes as f64;
    }
    Ok(MuQResult {
        value: total,
        weight_tail: measure.weight_tail(j_max),
        circles: j_max + 1 - first_circle.min(j_max + 1),
    })
}

/// Gram entry of the monomial basis `h_j^{0,q}(z) = z^j/√([j]_q!)` under dμ_q;
/// the contract is δ_{jk}.
pub fn monomial_gram(
    j: usize,
    k: usize,
    q: DeformationParameter,
    j_max: usize,
    angular_nodes: usize,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    let nj = crate::qcore::qbracket_factorial(j, q).sqrt();
    let nk = crate::qcore::qbracket_factorial(k, q).sqrt();
    let res = mu_q_integral(
        |z| (z.powu(j as u32) / nj).conj() * (z.powu(k as u32) / nk),
        q,
        j_max,
        angular_nodes,
        policy,
    )?;
    Ok(res.value)
}

/// Circles needed so the dropped weight mass is below `tol`.
pub fn circles_for_tail(q: DeformationParameter, tol: f64) -> usize {
    // q^{J+1}/(1-q) < tol
    let j = ((tol * q.one_minus()).ln() / q.value().ln()).ceil();
    (j.max(1.0) as usize).max(8)
}

// ---------------------------------------------------------------------------
