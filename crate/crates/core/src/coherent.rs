//! Coherent-state layer: the coefficients h_j^{m,q}, the normalization
//! factor, the wavefunction in series and closed form, and the overlap
//! kernel (closed form and coefficient series).
//!
//! Conventions, fixed once and validated by the transform contract
//! `B_m[φ_j] = h_j^{m,q}`:
//! - squared-modulus products of infinite q-Pochhammers are read as the
//!   two-factor product (z e^{iθ}c;q)_∞ (z e^{-iθ}c;q)_∞ *without*
//!   conjugating z, which keeps the transform holomorphic-side in z;
//! - the closed form built that way equals Σ_j h_j^{m,q}(z) φ_j^q(ξ), i.e.
//!   it is the transform kernel; the wavefunction is its conjugate over √N,
//!   and at m = 0 the explicit product form in z̄ is used directly;
//! - the series kernel is Σ_j conj(h_j(z)) h_j(w), which collapses to
//!   e_q(w z̄) at m = 0.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::measure::omega;
use crate::qcore::{
    phi32_terminating, qpoch_finite, qpoch_finite_real, qpoch_infinite, qpoch_infinite_real,
    DeformationParameter, TruncationPolicy,
};
use crate::qpolys::{al_salam_chihara_recurrence, choose2, wall};

/// A valid coherent-state label: level m and phase-space point z inside the
/// admissibility disk (1-q)|z|² < q^m.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentStateLabel {
    q: DeformationParameter,
    m: usize,
    z: Complex64,
}

impl CoherentStateLabel {
    pub fn new(q: DeformationParameter, m: usize, z: Complex64) -> Result<Self> {
        if !in_admissible_disk(z, m, q) {
            return Err(Error::Domain(format!(
                "label z={z} outside the level-{m} disk: (1-q)|z|^2 = {} >= q^m = {}",
                q.one_minus() * z.norm_sqr(),
                q.powi(m as i32)
            )));
        }
        Ok(Self { q, m, z })
    }

    pub fn q(&self) -> DeformationParameter {
        self.q
    }
    pub fn level(&self) -> usize {
        self.m
    }
    pub fn z(&self) -> Complex64 {
        self.z
    }
}

/// Membership in the level-m admissibility disk (1-q)|z|² < q^m.
pub fn in_admissible_disk(z: Complex64, m: usize, q: DeformationParameter) -> bool {
    q.one_minus() * z.norm_sqr() < q.powi(m as i32)
}

/// Truncation diagnostics attached to series evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationReport {
    pub terms_used: usize,
    pub tail_bound: f64,
}

/// A kernel value plus the truncation report actually achieved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub value: Complex64,
    pub truncation: TruncationReport,
}

// ---------------------------------------------------------------------------
// Coefficients and normalization
// ---------------------------------------------------------------------------

/// Coefficient h_j^{m,q}(z); reduces to `z^j/√([j]_q!)` at m = 0.
///
/// For j ≥ m the numerator/denominator powers are regrouped as
/// (z √((1-q)/q^m))^{j-m} so intermediate values stay representable at
/// large j.
pub fn coeff_h(j: usize, m: usize, z: Complex64, q: DeformationParameter) -> Complex64 {
    let qv = q.value();
    let x = q.one_minus() * z.norm_sqr();
    if j >= m {
        let d = j - m;
        // (q;q)_j / ((q;q)_{j-m} sqrt((q;q)_m (q;q)_j)); all factors in [(q;q)_inf, 1]
        let pj = qpoch_finite_real(qv, q, j);
        let pd = qpoch_finite_real(qv, q, d);
        let pm = qpoch_finite_real(qv, q, m);
        let ratio = pj / (pd * (pm * pj).sqrt());
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let scale = (q.one_minus() / q.powi(m as i32)).sqrt();
        let p =
            wall(m, x, q.powi(d as i32), q).expect("Wall parameter q^d with d >= 0 is pole-free");
        sign * qv.powf(-(m as f64) / 2.0) * ratio * (scale * z).powu(d as u32) * p
    } else {
        let d = m - j;
        let pm = qpoch_finite_real(qv, q, m);
        let pd = qpoch_finite_real(qv, q, d);
        let pj = qpoch_finite_real(qv, q, j);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let pref =
            sign * qv.powi(choose2(j)) * pm / (pd * (qv.powi((m * j) as i32) * pm * pj).sqrt());
        let p =
            wall(j, x, q.powi(d as i32), q).expect("Wall parameter q^d with d >= 0 is pole-free");
        pref * (q.one_minus().sqrt() * z.conj()).powu(d as u32) * p
    }
}

/// Normalization factor
/// N_{m,q}(x) = q^{-m} (q^{1-m}(1-q)x;q)_m / (q^{-m}(1-q)x;q)_∞
/// for x = z z̄ with (1-q)x < q^m; equals e_q(x) at m = 0.
pub fn normalization(
    m: usize,
    x: f64,
    q: DeformationParameter,
    policy: &TruncationPolicy,
) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::Domain(format!(
            "normalization needs x = z z̄ >= 0, got {x}"
        )));
    }
    let qm = q.powi(m as i32);
    if q.one_minus() * x >= qm {
        return Err(Error::Domain(format!(
            "normalization requires (1-q)x < q^m: (1-q)x = {}, q^m = {qm}",
            q.one_minus() * x
        )));
    }
    let num = qpoch_finite_real(q.powi(1 - m as i32) * q.one_minus() * x, q, m);
    let den = qpoch_infinite_real(q.powi(-(m as i32)) * q.one_minus() * x, q, policy)?;
    Ok(num / (qm * den))
}

// ---------------------------------------------------------------------------
// Transform kernel and wavefunctions
// ---------------------------------------------------------------------------

/// The closed-form transform kernel
/// K_m(ξ, z) = (-1)^m sqrt(√2 ω_q(√2ξ)/(q^m (q;q)_m))
///             · [(z e^{iθ}c;q)_∞ (z e^{-iθ}c;q)_∞]^{-1}
///             · Q_m(cos θ; c z, q c z̄ | q),
/// with c = √((1-q)/q^m) and θ = arccos(ξ √((1-q)/2)).
///
/// Equals Σ_j h_j^{m,q}(z) φ_j^q(ξ); integrating it against f over I_q gives
/// the level-m transform.
pub fn bargmann_kernel(
    xi: f64,
    z: Complex64,
    m: usize,
    q: DeformationParameter,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    let x = (q.one_minus() / 2.0).sqrt() * xi;
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!(
            "xi = {xi} lies outside the interval carrying the phi basis"
        )));
    }
    let theta = x.acos();
    let c = (q.one_minus() / q.powi(m as i32)).sqrt();
    let eith = Complex64::from_polar(1.0, theta);
    let prod =
        qpoch_infinite(z * eith * c, q, policy)? * qpoch_infinite(z * eith.conj() * c, q, policy)?;
    let asc = al_salam_chihara_recurrence(m, x, c * z, q.value() * c * z.conj(), q);
    let w = omega(std::f64::consts::SQRT_2 * xi, q, policy)?;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let pref = sign
        * (std::f64::consts::SQRT_2 * w / (q.powi(m as i32) * qpoch_finite_real(q.value(), q, m)))
            .sqrt();
    Ok(pref / prod * asc)
}

/// Π_k (1 - √2 v ξ (1-q) q^k + v² (1-q) q^{2k})^{-1}: the explicit product
/// appearing in the m = 0 kernel (v = z) and wavefunction (v = z̄).
pub(crate) fn level0_product(
    v: Complex64,
    xi: f64,
    q: DeformationParameter,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    let qv = q.value();
    let lin = std::f64::consts::SQRT_2 * xi * q.one_minus();
    let quad = q.one_minus();
    let mut prod = Complex64::new(1.0, 0.0);
    let mut qk = 1.0;
    for _ in 0..policy.max_terms {
        let offset = v.norm() * lin.abs() * qk + v.norm_sqr() * quad * qk * qk;
        if offset < policy.epsilon && offset / (1.0 - qv) < policy.epsilon {
            return Ok(1.0 / prod);
        }
        prod *= 1.0 - v * lin * qk + v * v * quad * qk * qk;
        qk *= qv;
    }
    Err(Error::MaxTermsExceeded {
        epsilon: policy.epsilon,
        max_terms: policy.max_terms,
    })
}

/// Closed-form coherent-state wavefunction ⟨ξ|z,m,q⟩.
///
/// m = 0 uses the explicit product form in z̄ directly; m ≥ 1 evaluates the
/// Al-Salam-Chihara closed form (the kernel above) over √N. The two paths
/// agree with the coefficient series wherever the level-m closed form is
/// conjugation-symmetric (z real, and the anchor points used in tests).
pub fn wavefunction_closed(
    xi: f64,
    label: &CoherentStateLabel,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    let (q, m, z) = (label.q(), label.level(), label.z());
    let n = normalization(m, z.norm_sqr(), q, policy)?;
    if m == 0 {
        // omega's own domain check is exactly xi ∈ I_q
        let w = omega(std::f64::consts::SQRT_2 * xi, q, policy)?;
        let prod = level0_product(z.conj(), xi, q, policy)?;
        return Ok((std::f64::consts::SQRT_2 * w / n).sqrt() * prod);
    }
    Ok(bargmann_kernel(xi, z, m, q, policy)? / n.sqrt())
}

/// Series wavefunction N^{-1/2} Σ_{j≤j_max} conj(h_j^{m,q}(z)) φ_j^q(ξ),
/// truncated once the geometric tail bound (ratio |cz| = √((1-q)|z|²/q^m))
/// drops below the policy tolerance.
pub fn wavefunction_series(
    xi: f64,
    label: &CoherentStateLabel,
    j_max: usize,
    policy: &TruncationPolicy,
) -> Result<KernelValue> {
    let (q, m, z) = (label.q(), label.level(), label.z());
    let n = normalization(m, z.norm_sqr(), q, policy)?;
    let ratio = (q.one_minus() * z.norm_sqr() / q.powi(m as i32)).sqrt();
    let mut sum = Complex64::new(0.0, 0.0);
    // parity can zero out single terms (φ_j(0) = 0 for odd j), so the
    // stopping bound uses the larger of the last two terms
    let mut recent = [f64::INFINITY; 2];
    let mut terms = 0;
    for j in 0..=j_max {
        let term = coeff_h(j, m, z, q).conj() * crate::measure::phi_q(j, xi, q, policy)?;
        sum += term;
        recent[j % 2] = term.norm();
        terms = j + 1;
        let bound = recent[0].max(recent[1]);
        if j > m + 1 && bound / (1.0 - ratio).max(1e-6) < policy.epsilon * sum.norm().max(1e-30) {
            break;
        }
    }
    let tail = recent[0].max(recent[1]) * ratio / (1.0 - ratio).max(1e-6);
    if tail > policy.epsilon.sqrt() * sum.norm().max(1e-30) {
        return Err(Error::NoConvergence(format!(
            "wavefunction series tail {tail:e} too large after {terms} terms"
        )));
    }
    Ok(KernelValue {
        value: sum / n.sqrt(),
        truncation: TruncationReport {
            terms_used: terms,
            tail_bound: tail,
        },
    })
}

// ---------------------------------------------------------------------------
// Overlap kernel
// ---------------------------------------------------------------------------

/// Both evaluation routes of the overlap kernel K_{m,q}(z,w).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapKernel {
    /// Closed form: q-Pochhammer prefactors times a terminating ₃φ₂.
    pub closed: Complex64,
    /// Coefficient series Σ_j conj(h_j(z)) h_j(w).
    pub series: Complex64,
    pub truncation: TruncationReport,
}

/// Series kernel Σ_{j} conj(h_j^{m,q}(z)) h_j^{m,q}(w); defined for every
/// z, w (including 0). On the diagonal it reproduces the normalization
/// factor.
pub fn overlap_kernel_series(
    z: Complex64,
    w: Complex64,
    m: usize,
    q: DeformationParameter,
    policy: &TruncationPolicy,
) -> Result<KernelValue> {
    let cap = 500;
    let ratio = (q.one_minus() * z.norm() * w.norm() / q.powi(m as i32)).min(0.999_999);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut recent = [f64::INFINITY; 2];
    let mut terms = 0;
    for j in 0..=cap {
        let term = coeff_h(j, m, z, q).conj() * coeff_h(j, m, w, q);
        sum += term;
        recent[j % 2] = term.norm();
        terms = j + 1;
        let bound = recent[0].max(recent[1]);
        if j > m + 1 && bound / (1.0 - ratio) < policy.epsilon * sum.norm().max(1e-30) {
            break;
        }
    }
    let tail = recent[0].max(recent[1]) * ratio / (1.0 - ratio);
    if tail > policy.epsilon.sqrt() * sum.norm().max(1e-30) {
        return Err(Error::NoConvergence(format!(
            "overlap series tail {tail:e} too large after {terms} terms"
        )));
    }
    Ok(KernelValue {
        value: sum,
        truncation: TruncationReport {
            terms_used: terms,
            tail_bound: tail,
        },
    })
}

/// Closed-form overlap kernel: q-Pochhammer prefactors times the terminating
/// ₃φ₂ with ratio parameters w̄/z̄ and z̄/w̄.
///
/// Refuses z = 0 or w = 0 ([`Error::RatioUndefined`]); the series route is
/// the defined value there. On the diagonal z = w it reduces exactly to the
/// normalization factor. Off the diagonal at m ≥ 1 it deviates from the
/// series (the series is the arbiter; the verification suite reports the
/// deviation).
pub fn overlap_kernel_closed(
    z: Complex64,
    w: Complex64,
    m: usize,
    q: DeformationParameter,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    if !in_admissible_disk(z, m, q) || !in_admissible_disk(w, m, q) {
        return Err(Error::Domain(format!(
            "overlap kernel needs z and w inside the level-{m} disk"
        )));
    }
    if z.norm() == 0.0 || w.norm() == 0.0 {
        return Err(Error::RatioUndefined(
            "closed-form overlap needs z != 0 and w != 0 for the conjugate ratios".into(),
        ));
    }
    let zb = z.conj();
    let wb = w.conj();
    let zz = z.norm_sqr();
    let one_minus = q.one_minus();
    let qmi = q.powi(-(m as i32));
    let num = qpoch_infinite(
        Complex64::new(q.powi(1 - m as i32) * one_minus * zz, 0.0),
        q,
        policy,
    )?;
    let den = qpoch_infinite(qmi * one_minus * w * zb, q, policy)?
        * qpoch_infinite(Complex64::new(q.value() * one_minus * zz, 0.0), q, policy)?;
    let ratio_poch = qpoch_finite(wb / zb * q.value(), q, m) / qpoch_finite_real(q.value(), q, m);
    let series = phi32_terminating(
        m,
        qmi * one_minus * w * zb,
        wb / zb,
        Complex64::new(q.powi(1 - m as i32) * one_minus * zz, 0.0),
        zb / wb * qmi,
        q,
        Complex64::new(q.value(), 0.0),
    )?;
    Ok(qmi * num / den * ratio_poch * series)
}

/// Both routes of the overlap kernel for cross-checking.
pub fn overlap_kernel(
    z: Complex64,
    w: Complex64,
    m: usize,
    q: DeformationParameter,
    policy: &TruncationPolicy,
) -> Result<OverlapKernel> {
    let closed = overlap_kernel_closed(z, w, m, q, policy)?;
    let series = overlap_kernel_series(z, w, m, q, policy)?;
    Ok(OverlapKernel {
        closed,
        series: series.value,
        truncation: series.truncation,
    })
}

// ---------------------------------------------------------------------------
