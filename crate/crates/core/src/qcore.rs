//! q-arithmetic primitives: q-Pochhammer symbols, q-binomial coefficients,
//! q-factorials, the q-exponential e_q, and basic hypergeometric series
//! (₂φ₁ and terminating ₃φ₂). Everything else in the crate is built on these.
//!
//! Conventions used throughout:
//! - `(a;q)_n = prod_{k=0}^{n-1} (1 - a q^k)`, `(a;q)_0 = 1`;
//! - `(0;q)_k = 1` for every k (each factor is 1);
//! - the reciprocal `1/(q;q)_n` is 0 for negative n.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The deformation base q, restricted to the open interval (0,1).
///
/// A validated newtype so that every downstream function can assume
/// `0 < q < 1` without re-checking.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeformationParameter(f64);

impl DeformationParameter {
    pub fn new(q: f64) -> Result<Self> {
        if q.is_finite() && q > 0.0 && q < 1.0 {
            Ok(Self(q))
        } else {
            Err(Error::Domain(format!(
                "deformation parameter must satisfy 0 < q < 1, got {q}"
            )))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// q^k for signed integer k, exact for exponents of moderate size.
    #[inline]
    pub fn powi(self, k: i32) -> f64 {
        self.0.powi(k)
    }

    /// 1 - q.
    #[inline]
    pub fn one_minus(self) -> f64 {
        1.0 - self.0
    }
}

impl std::fmt::Display for DeformationParameter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Relative-error truncation policy for infinite series and products.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    /// Target relative error of the truncation tail.
    pub epsilon: f64,
    /// Hard cap on the number of terms/factors.
    pub max_terms: usize,
}

impl TruncationPolicy {
    pub fn new(epsilon: f64, max_terms: usize) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "truncation epsilon must be positive, got {epsilon}"
            )));
        }
        if max_terms == 0 {
            return Err(Error::InvalidInput(
                "truncation max_terms must be at least 1".into(),
            ));
        }
        Ok(Self { epsilon, max_terms })
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            epsilon: 1e-12,
            max_terms: 1_000_000,
        }
    }
}

// ---------------------------------------------------------------------------
// q-Pochhammer symbols
// ---------------------------------------------------------------------------

/// Finite q-Pochhammer symbol (a;q)_n = prod_{k=0}^{n-1} (1 - a q^k).
///
/// Returns 1 for n = 0 (empty product).
///
/// ```
/// use num_complex::Complex64;
/// use qbargmann::qcore::{qpoch_finite, DeformationParameter};
///
/// let q = DeformationParameter::new(0.5)?;
/// // (0.5;0.5)_2 = (1 - 0.5)(1 - 0.25)
/// let v = qpoch_finite(Complex64::new(0.5, 0.0), q, 2);
/// assert!((v.re - 0.375).abs() < 1e-15);
/// # Ok::<(), qbargmann::Error>(())
/// ```
pub fn qpoch_finite(a: Complex64, q: DeformationParameter, n: usize) -> Complex64 {
    let mut p = Complex64::new(1.0, 0.0);
    let mut aq = a;
    for _ in 0..n {
        p *= 1.0 - aq;
        aq *= q.value();
    }
    p
}

/// Real-argument variant of [`qpoch_finite`].
pub fn qpoch_finite_real(a: f64, q: DeformationParameter, n: usize) -> f64 {
    let mut p = 1.0;
    let mut aq = a;
    for _ in 0..n {
        p *= 1.0 - aq;
        aq *= q.value();
    }
    p
}

/// Infinite q-Pochhammer symbol (a;q)_∞, truncated once the remaining
/// factors are within the policy's relative tolerance of 1.
///
/// The tail of the log-product after K factors is bounded by
/// `|a| q^K / ((1-q)(1-|a|q^K))`; truncation stops when that bound and the
/// current factor offset `|a| q^K` are both below `policy.epsilon`.
pub fn qpoch_infinite(
    a: Complex64,
    q: DeformationParameter,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    let qv = q.value();
    let mut p = Complex64::new(1.0, 0.0);
    let mut aq = a;
    for _ in 0..policy.max_terms {
        let offset = aq.norm();
        if offset < policy.epsilon {
            let tail = offset / ((1.0 - qv) * (1.0 - offset));
            if tail < policy.epsilon {
                return Ok(p);
            }
        }
        p *= 1.0 - aq;
        aq *= qv;
    }
    Err(Error::MaxTermsExceeded {
        epsilon: policy.epsilon,
        max_terms: policy.max_terms,
    })
}

/// Real-argument variant of [`qpoch_infinite`].
pub fn qpoch_infinite_real(
    a: f64,
    q: DeformationParameter,
    policy: &TruncationPolicy,
) -> Result<f64> {
    qpoch_infinite(Complex64::new(a, 0.0), q, policy).map(|v| v.re)
}

/// log (a;q)_∞ for real a < 1, where every factor 1 - a q^k is positive.
///
/// Needed near q → 1, where (q;q)_∞ underflows f64 while the objects built
/// from it stay O(1).
pub fn log_qpoch_infinite_real(
    a: f64,
    q: DeformationParameter,
    policy: &TruncationPolicy,
) -> Result<f64> {
    if a >= 1.0 {
        return Err(Error::Domain(format!(
            "log (a;q)_inf requires a < 1 for positive factors, got a={a}"
        )));
    }
    let qv = q.value();
    let mut sum = 0.0;
    let mut aq = a;
    for _ in 0..policy.max_terms {
        let offset = aq.abs();
        if offset < policy.epsilon {
            let tail = offset / ((1.0 - qv) * (1.0 - offset));
            if tail < policy.epsilon {
                return Ok(sum);
            }
        }
        sum += (1.0 - aq).ln();
        aq *= qv;
    }
    Err(Error::MaxTermsExceeded {
        epsilon: policy.epsilon,
        max_terms: policy.max_terms,
    })
}

// ---------------------------------------------------------------------------
// q-binomials and q-factorials
// ---------------------------------------------------------------------------

/// Gaussian (q-)binomial coefficient [n k]_q = (q;q)_n / ((q;q)_{n-k} (q;q)_k).
pub fn qbinomial(n: usize, k: usize, q: DeformationParameter) -> Result<f64> {
    if k > n {
        return Err(Error::Domain(format!(
            "q-binomial requires 0 <= k <= n, got n={n}, k={k}"
        )));
    }
    let qv = q.value();
    // (q;q)_n / (q;q)_{n-k} = prod_{i=n-k+1}^{n} (1-q^i), divided by (q;q)_k.
    let mut num = 1.0;
    for i in (n - k + 1)..=n {
        num *= 1.0 - qv.powi(i as i32);
    }
    let mut den = 1.0;
    for i in 1..=k {
        den *= 1.0 - qv.powi(i as i32);
    }
    Ok(num / den)
}

/// The q-bracket `[n]_q` = (1 - q^n)/(1 - q).
pub fn qbracket(n: usize, q: DeformationParameter) -> f64 {
    (1.0 - q.powi(n as i32)) / q.one_minus()
}

/// q-factorial `[n]_q!` = prod_{k=1}^{n} (1 - q^k)/(1 - q), so that
/// `(q;q)_n = [n]_q! (1-q)^n` holds exactly.
pub fn qbracket_factorial(n: usize, q: DeformationParameter) -> f64 {
    let mut p = 1.0;
    for k in 1..=n {
        p *= qbracket(k, q);
    }
    p
}

// ---------------------------------------------------------------------------
// q-exponential
// ---------------------------------------------------------------------------

/// The q-exponential e_q(u) = Σ_{k≥0} u^k / `[k]_q!`, convergent for
/// (1-q)|u| < 1. Equals 1/((1-q)u;q)_∞ on its domain (Euler's identity);
/// that product form is the standard cross-check oracle.
///
/// ```
/// use num_complex::Complex64;
/// use qbargmann::qcore::{eq_exp, DeformationParameter, TruncationPolicy};
///
/// let q = DeformationParameter::new(0.5)?;
/// let v = eq_exp(Complex64::new(1.0, 0.0), q, &TruncationPolicy::default())?;
/// assert!((v.re - 3.46274661945506).abs() < 1e-10);
/// # Ok::<(), qbargmann::Error>(())
/// ```
pub fn eq_exp(
    u: Complex64,
    q: DeformationParameter,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    let t = q.one_minus() * u.norm();
    if t >= 1.0 {
        return Err(Error::Domain(format!(
            "e_q(u) requires (1-q)|u| < 1, got {t}"
        )));
    }
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    for k in 1..=policy.max_terms {
        term *= u / qbracket(k, q);
        sum += term;
        // terms are eventually dominated by the geometric ratio (1-q)|u|
        let ratio_bound = q.one_minus() * u.norm();
        if term.norm() / (1.0 - ratio_bound) < policy.epsilon * sum.norm() {
            return Ok(sum);
        }
    }
    Err(Error::MaxTermsExceeded {
        epsilon: policy.epsilon,
        max_terms: policy.max_terms,
    })
}

// ---------------------------------------------------------------------------
// Basic hypergeometric series
// ---------------------------------------------------------------------------

/// Relative threshold below which a series factor counts as an exact zero
/// (catches terminating parameters such as a = q^{-n} up to rounding).
const FACTOR_ZERO_TOL: f64 = 1e-13;

fn factor_is_zero(f: Complex64, scale: f64) -> bool {
    f.norm() <= FACTOR_ZERO_TOL * (1.0 + scale)
}

/// ₂φ₁(a,b;c;q,t) = Σ_k ((a;q)_k (b;q)_k)/((c;q)_k (q;q)_k) t^k, with the
/// convention (0;q)_k = 1.
///
/// Terminates exactly when a numerator factor vanishes (a or b of the form
/// q^{-n}); otherwise requires |t| < 1.
///
/// Errors: [`Error::DivergentSeries`] when |t| ≥ 1 without termination,
/// [`Error::PoleInDenominator`] when (c;q)_k hits zero while the numerator
/// is still nonzero.
pub fn phi21(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    q: DeformationParameter,
    t: Complex64,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    let qv = q.value();
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut qk = 1.0; // q^k
    for k in 0..policy.max_terms {
        let fa = 1.0 - a * qk;
        let fb = 1.0 - b * qk;
        let fc = 1.0 - c * qk;
        if factor_is_zero(fa, (a * qk).norm()) || factor_is_zero(fb, (b * qk).norm()) {
            return Ok(sum); // numerator vanished: the series terminates here
        }
        if factor_is_zero(fc, (c * qk).norm()) {
            return Err(Error::PoleInDenominator(format!(
                "(c;q)_k vanishes at k={} for c={}",
                k + 1,
                c
            )));
        }
        term *= fa * fb / (fc * (1.0 - qv.powi(k as i32 + 1))) * t;
        sum += term;
        // asymptotic term ratio is t, so bound the tail geometrically
        if t.norm() < 1.0 && term.norm() / (1.0 - t.norm()) < policy.epsilon * sum.norm().max(1.0) {
            return Ok(sum);
        }
        if t.norm() >= 1.0 && k > 64 && term.norm() > 1e6 {
            return Err(Error::DivergentSeries(format!(
                "|t| = {} >= 1 and the series does not terminate",
                t.norm()
            )));
        }
        qk *= qv;
    }
    if t.norm() >= 1.0 {
        Err(Error::DivergentSeries(format!(
            "|t| = {} >= 1 and the series does not terminate",
            t.norm()
        )))
    } else {
        Err(Error::MaxTermsExceeded {
            epsilon: policy.epsilon,
            max_terms: policy.max_terms,
        })
    }
}

/// Terminating ₂φ₁(q^{-n}, b; c; q, t): exactly n+1 terms, the first
/// numerator Pochhammer computed from integer powers so the cut-off is exact.
pub fn phi21_terminating(
    n: usize,
    b: Complex64,
    c: Complex64,
    q: DeformationParameter,
    t: Complex64,
) -> Result<Complex64> {
    let qv = q.value();
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let fa = 1.0 - qv.powi(k as i32 - n as i32); // (q^{-n};q) factor
        let fb = 1.0 - b * qv.powi(k as i32);
        let fc = 1.0 - c * qv.powi(k as i32);
        if factor_is_zero(fc, (c * qv.powi(k as i32)).norm()) {
            if factor_is_zero(fa * fb, 1.0) {
                return Ok(sum);
            }
            return Err(Error::PoleInDenominator(format!(
                "(c;q)_k vanishes at k={} for c={}",
                k + 1,
                c
            )));
        }
        term *= fa * fb / (fc * (1.0 - qv.powi(k as i32 + 1))) * t;
        sum += term;
    }
    Ok(sum)
}

/// Terminating ₃φ₂(q^{-m}, num2, num3; den1, den2; q, t): a finite sum of
/// m+1 terms. A zero *parameter* in the denominator follows (0;q)_k = 1.
pub fn phi32_terminating(
    m: usize,
    num2: Complex64,
    num3: Complex64,
    den1: Complex64,
    den2: Complex64,
    q: DeformationParameter,
    t: Complex64,
) -> Result<Complex64> {
    let qv = q.value();
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    for k in 0..m {
        let f1 = 1.0 - qv.powi(k as i32 - m as i32);
        let f2 = 1.0 - num2 * qv.powi(k as i32);
        let f3 = 1.0 - num3 * qv.powi(k as i32);
        let g1 = 1.0 - den1 * qv.powi(k as i32);
        let g2 = 1.0 - den2 * qv.powi(k as i32);
        for (g, d) in [(g1, den1), (g2, den2)] {
            if factor_is_zero(g, (d * qv.powi(k as i32)).norm())
                && !factor_is_zero(f1 * f2 * f3, 1.0)
            {
                return Err(Error::PoleInDenominator(format!(
                    "denominator Pochhammer vanishes at k={} for parameter {}",
                    k + 1,
                    d
                )));
            }
        }
        term *= f1 * f2 * f3 / (g1 * g2 * (1.0 - qv.powi(k as i32 + 1))) * t;
        sum += term;
    }
    Ok(sum)
}

// ---------------------------------------------------------------------------
