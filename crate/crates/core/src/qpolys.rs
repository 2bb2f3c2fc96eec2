//! Polynomial families: continuous q-Hermite, Wall (little q-Laguerre),
//! Al-Salam-Chihara, 2D q-Hermite with its Wall form, the classical
//! Hermite/Laguerre/2D-complex-Hermite oracles, and Cauchy polynomials.
//!
//! Evaluation is by three-term recurrence or exactly terminating sums; every
//! family also exposes a batch entry point (points in, values out) so
//! quadrature loops stay cheap.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::{phi32_terminating, qpoch_finite_real, DeformationParameter};

/// An ordered index pair (r,s) with the min/max/gap combinators that the
/// two-index families use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyIndexPair {
    pub r: usize,
    pub s: usize,
}

impl PolyIndexPair {
    pub fn new(r: usize, s: usize) -> Self {
        Self { r, s }
    }
    /// min(r,s)
    #[inline]
    pub fn lo(self) -> usize {
        self.r.min(self.s)
    }
    /// max(r,s)
    #[inline]
    pub fn hi(self) -> usize {
        self.r.max(self.s)
    }
    /// |r-s|
    #[inline]
    pub fn gap(self) -> usize {
        self.r.abs_diff(self.s)
    }
}

/// binomial(k,2) = k(k-1)/2 as an i32 exponent.
#[inline]
pub(crate) fn choose2(k: usize) -> i32 {
    (k * k.saturating_sub(1) / 2) as i32
}

// ---------------------------------------------------------------------------
// Continuous q-Hermite
// ---------------------------------------------------------------------------

/// Continuous q-Hermite polynomial H_n(x|q) by the three-term recurrence
/// H_{n+1} = 2x H_n - (1-q^n) H_{n-1}, H_0 = 1, H_1 = 2x.
///
/// ```
/// use qbargmann::qpolys::cq_hermite;
/// use qbargmann::DeformationParameter;
///
/// let q = DeformationParameter::new(0.5)?;
/// // H_2(x|q) = 4x² - (1-q)
/// assert!((cq_hermite(2, 0.3, q) + 0.14).abs() < 1e-15);
/// # Ok::<(), qbargmann::Error>(())
/// ```
pub fn cq_hermite(n: usize, x: f64, q: DeformationParameter) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - (1.0 - q.powi(k as i32)) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

pub fn cq_hermite_batch(n: usize, xs: &[f64], q: DeformationParameter) -> Vec<f64> {
    xs.iter().map(|&x| cq_hermite(n, x, q)).collect()
}

// ---------------------------------------------------------------------------
// Wall polynomials
// ---------------------------------------------------------------------------

/// Wall polynomial P_n(x;a|q) = ₂φ₁(q^{-n}, 0; aq; q; qx).
///
/// Errors with [`Error::PoleInDenominator`] when (aq;q)_k vanishes for some
/// k ≤ n (a of the form q^{-j}, j ≥ 1).
///
/// ```
/// use qbargmann::qpolys::wall;
/// use qbargmann::DeformationParameter;
///
/// let q = DeformationParameter::new(0.5)?;
/// // P_1(x;a|q) = 1 - x/(1-aq)
/// let v = wall(1, 0.2, 0.3, q)?;
/// assert!((v - (1.0 - 0.2 / 0.85)).abs() < 1e-14);
/// # Ok::<(), qbargmann::Error>(())
/// ```
pub fn wall(n: usize, x: f64, a: f64, q: DeformationParameter) -> Result<f64> {
    let qv = q.value();
    let mut sum = 1.0;
    let mut term = 1.0;
    for k in 0..n {
        let fa = 1.0 - qv.powi(k as i32 - n as i32);
        let fc = 1.0 - a * qv.powi(k as i32 + 1);
        if fc.abs() <= 1e-13 * (1.0 + (a * qv.powi(k as i32 + 1)).abs()) {
            return Err(Error::PoleInDenominator(format!(
                "(aq;q)_k vanishes at k={} for a={a}",
                k + 1
            )));
        }
        term *= fa / (fc * (1.0 - qv.powi(k as i32 + 1))) * qv * x;
        sum += term;
    }
    Ok(sum)
}

pub fn wall_batch(n: usize, xs: &[f64], a: f64, q: DeformationParameter) -> Result<Vec<f64>> {
    xs.iter().map(|&x| wall(n, x, a, q)).collect()
}

// ---------------------------------------------------------------------------
// Al-Salam-Chihara
// ---------------------------------------------------------------------------

/// Al-Salam-Chihara polynomial Q_m(x;a,b|q) through its terminating ₃φ₂ form
/// ((ab;q)_m / a^m) ₃φ₂(q^{-m}, a e^{iθ}, a e^{-iθ}; ab, 0; q, q), x = cos θ.
///
/// Requires a ≠ 0 (the a^{-m} prefactor) and |x| ≤ 1. The value is symmetric
/// under a ↔ b up to rounding even though the formula is not.
pub fn al_salam_chihara(
    m: usize,
    x: f64,
    a: Complex64,
    b: Complex64,
    q: DeformationParameter,
) -> Result<Complex64> {
    if a.norm() == 0.0 {
        return Err(Error::Domain(
            "Al-Salam-Chihara 3phi2 form requires a != 0".into(),
        ));
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!(
            "Al-Salam-Chihara requires |x| <= 1, got {x}"
        )));
    }
    let theta = x.acos();
    let eith = Complex64::from_polar(1.0, theta);
    let ab = a * b;
    let series = phi32_terminating(
        m,
        a * eith,
        a * eith.conj(),
        ab,
        Complex64::new(0.0, 0.0),
        q,
        Complex64::new(q.value(), 0.0),
    )?;
    let mut pref = Complex64::new(1.0, 0.0);
    let mut abq = ab;
    for _ in 0..m {
        pref *= 1.0 - abq;
        abq *= q.value();
    }
    Ok(pref / a.powu(m as u32) * series)
}

/// Al-Salam-Chihara by the three-term recurrence
/// Q_{n+1} = (2x - (a+b) q^n) Q_n - (1 - a b q^{n-1})(1 - q^n) Q_{n-1},
/// Q_0 = 1, Q_1 = 2x - a - b.
///
/// Exactly symmetric in (a,b) and valid at a = 0 (where the ₃φ₂ form is not);
/// at a = b = 0 it degenerates to the continuous q-Hermite polynomial.
pub fn al_salam_chihara_recurrence(
    m: usize,
    x: f64,
    a: Complex64,
    b: Complex64,
    q: DeformationParameter,
) -> Complex64 {
    if m == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut prev = Complex64::new(1.0, 0.0);
    let mut cur = 2.0 * x - a - b;
    for n in 1..m {
        let qn = q.powi(n as i32);
        let next = (2.0 * x - (a + b) * qn) * cur
            - (1.0 - a * b * q.powi(n as i32 - 1)) * (1.0 - qn) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

pub fn al_salam_chihara_batch(
    m: usize,
    xs: &[f64],
    a: Complex64,
    b: Complex64,
    q: DeformationParameter,
) -> Vec<Complex64> {
    xs.iter()
        .map(|&x| al_salam_chihara_recurrence(m, x, a, b, q))
        .collect()
}

// ---------------------------------------------------------------------------
// 2D q-Hermite and classical relatives
// ---------------------------------------------------------------------------

/// 2D q-Hermite polynomial
/// H_{r,s}(z,w|q) = Σ_{k=0}^{r∧s} [r k]_q [s k]_q (-1)^k q^{C(k,2)} (q;q)_k z^{r-k} w^{s-k}.
pub fn qhermite2d(
    r: usize,
    s: usize,
    z: Complex64,
    w: Complex64,
    q: DeformationParameter,
) -> Complex64 {
    let pair = PolyIndexPair::new(r, s);
    let qv = q.value();
    let mut sum = Complex64::new(0.0, 0.0);
    // coefficient [r k][s k] (q;q)_k updated incrementally in k
    let mut coeff = 1.0;
    for k in 0..=pair.lo() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let val =
            sign * qv.powi(choose2(k)) * coeff * z.powu((r - k) as u32) * w.powu((s - k) as u32);
        sum += val;
        if k < pair.lo() {
            // [n k+1] = [n k] (1-q^{n-k})/(1-q^{k+1}); times (q;q)_{k+1}/(q;q)_k = (1-q^{k+1})
            let num = (1.0 - qv.powi((r - k) as i32)) * (1.0 - qv.powi((s - k) as i32));
            let den = 1.0 - qv.powi(k as i32 + 1);
            coeff *= num / den;
        }
    }
    sum
}

/// Wall-polynomial form of H_{r,s}(z,z̄|q):
/// (-1)^{r∧s} ((q;q)_{r∨s}/(q;q)_{|r-s|}) q^{C(r∧s,2)} |z|^{|r-s|}
/// e^{i(r-s)·arg z} P_{r∧s}(z z̄; q^{|r-s|} | q).
///
/// The phase is fixed by requiring agreement with [`qhermite2d`] at w = z̄
/// (already at (r,s) = (1,0) the opposite sign would give z̄ instead of z).
pub fn qhermite2d_wall_form(
    r: usize,
    s: usize,
    z: Complex64,
    q: DeformationParameter,
) -> Result<Complex64> {
    let pair = PolyIndexPair::new(r, s);
    let (lo, hi, gap) = (pair.lo(), pair.hi(), pair.gap());
    let sign = if lo % 2 == 0 { 1.0 } else { -1.0 };
    let ratio = qpoch_finite_real(q.value(), q, hi) / qpoch_finite_real(q.value(), q, gap);
    let modulus = z.norm().powi(gap as i32);
    let phase = if z.norm() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::from_polar(1.0, (r as f64 - s as f64) * z.arg())
    };
    let p = wall(lo, z.norm_sqr(), q.powi(gap as i32), q)?;
    Ok(sign * ratio * q.powi(choose2(lo)) * modulus * phase * p)
}

/// Classical 2D complex Hermite polynomial
/// H_{r,s}(z,w) = Σ_{k=0}^{r∧s} (-1)^k k! C(r,k) C(s,k) z^{r-k} w^{s-k}.
pub fn complex_hermite_classical(r: usize, s: usize, z: Complex64, w: Complex64) -> Complex64 {
    let lo = r.min(s);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut coeff = 1.0; // (-1)^k k! C(r,k) C(s,k), tracked without sign
    for k in 0..=lo {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * coeff * z.powu((r - k) as u32) * w.powu((s - k) as u32);
        if k < lo {
            // (k+1)! C(r,k+1) C(s,k+1) = k! C(r,k) C(s,k) (r-k)(s-k)/(k+1)
            coeff *= (r - k) as f64 * (s - k) as f64 / (k as f64 + 1.0);
        }
    }
    sum
}

/// Physicists' Hermite polynomial H_m(x): H_{n+1} = 2x H_n - 2n H_{n-1}.
pub fn hermite_classical(m: usize, x: f64) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * x;
    for k in 1..m {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Generalized Laguerre polynomial L_n^{(α)}(x) by the standard recurrence.
pub fn laguerre_classical(n: usize, alpha: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Classical true-polyanalytic basis coefficient
/// h_j^m(z) = (-1)^{m∧j} (m! j!)^{-1/2} (m∧j)! |z|^{|m-j|} e^{-i(m-j)·arg z}
///            L_{m∧j}^{(|m-j|)}(z z̄).
pub fn classical_basis_coeff(j: usize, m: usize, z: Complex64) -> Complex64 {
    let pair = PolyIndexPair::new(m, j);
    let (lo, gap) = (pair.lo(), pair.gap());
    let sign = if lo % 2 == 0 { 1.0 } else { -1.0 };
    let mut fact = 1.0; // (m∧j)! / sqrt(m! j!)
    for k in 1..=lo {
        fact *= k as f64;
    }
    let mut norm = 1.0;
    for k in 1..=m {
        norm *= k as f64;
    }
    for k in 1..=j {
        norm *= k as f64;
    }
    let phase = if z.norm() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::from_polar(1.0, -(m as f64 - j as f64) * z.arg())
    };
    sign * fact / norm.sqrt()
        * z.norm().powi(gap as i32)
        * phase
        * laguerre_classical(lo, gap as f64, z.norm_sqr())
}

// ---------------------------------------------------------------------------
// Cauchy polynomials
// ---------------------------------------------------------------------------

/// Cauchy polynomial 𝒫_n(a,b) = prod_{k=0}^{n-1} (a - b q^k).
///
/// This product form is validated numerically against the bivariate
/// generating function
/// Σ_{r,k} 𝒫_{r+k}(a,b) t^r s^k /((q;q)_r (q;q)_k)
///   = ((bs;q)_∞/(as;q)_∞) ₂φ₁(b/a, 0; bs; q; at)
/// in the verification suite.
pub fn cauchy_poly(n: usize, a: Complex64, b: Complex64, q: DeformationParameter) -> Complex64 {
    let mut p = Complex64::new(1.0, 0.0);
    let mut bq = b;
    for _ in 0..n {
        p *= a - bq;
        bq *= q.value();
    }
    p
}

// ---------------------------------------------------------------------------
// Wall reflection identity
// ---------------------------------------------------------------------------

/// How the reflection identity was evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReflectionRegime {
    /// N = 0: both sides are literally the same expression.
    Trivial,
    /// 1 ≤ N ≤ n: the raw identity is 0·∞; both sides were multiplied by the
    /// vanishing (q^{1-N};q)_n and reassociated termwise into finite sums.
    Cleared,
    /// N < 0: same clearing applied to the right-hand side's vanishing
    /// numerator against the Wall-polynomial pole.
    ClearedNegative,
}

/// Outcome of [`wall_reflection_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WallReflection {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub regime: ReflectionRegime,
}

/// (q^{1-N};q)_n · P_n(x; q^{-N}|q) reassociated termwise:
/// Σ_{k=0}^{n} (q^{-n};q)_k (q^{1-N+k};q)_{n-k} q^k x^k / (q;q)_k.
/// Finite for every integer N, including where the raw product is 0·∞.
fn wall_cleared(n: usize, cap_n: i64, x: f64, q: DeformationParameter) -> f64 {
    let qv = q.value();
    let mut total = 0.0;
    // (q^{-n};q)_k and q^k x^k / (q;q)_k tracked incrementally
    let mut front = 1.0;
    for k in 0..=n {
        let mut tail = 1.0;
        for i in 0..(n - k) {
            tail *= 1.0 - qv.powi((1 - cap_n + k as i64 + i as i64) as i32);
        }
        total += front * tail;
        if k < n {
            front *= (1.0 - qv.powi(k as i32 - n as i32)) * qv * x / (1.0 - qv.powi(k as i32 + 1));
        }
    }
    total
}

/// Residual of the Wall reflection identity
/// P_n(x;q^{-N}|q) = x^N (-1)^N q^{N(N+1-2n)/2}
///                   ((q^{N+1};q)_{n-N}/(q^{1-N};q)_n) P_{n-N}(x;q^N|q).
///
/// The raw form is singular for every N ≠ 0: for 1 ≤ N ≤ n the denominator
/// (q^{1-N};q)_n vanishes against a pole of P_n(x;q^{-N}|q); for N < 0 the
/// numerator vanishes against a pole of P_{n-N}(x;q^N|q). In both regimes the
/// identity is evaluated in cleared form (both sides multiplied by the
/// vanishing Pochhammer) and the regime is reported. N > n is refused: the
/// right-hand side would need a negative-degree Wall polynomial, and no
/// regularization is assumed.
pub fn wall_reflection_check(
    n: usize,
    cap_n: i64,
    x: f64,
    q: DeformationParameter,
) -> Result<WallReflection> {
    let qv = q.value();
    if cap_n == 0 {
        let v = wall(n, x, 1.0, q)?;
        return Ok(WallReflection {
            lhs: v,
            rhs: v,
            residual: 0.0,
            regime: ReflectionRegime::Trivial,
        });
    }
    if cap_n > n as i64 {
        return Err(Error::SingularParameters(format!(
            "reflection with N={cap_n} > n={n} needs a negative-degree Wall polynomial"
        )));
    }
    if cap_n > 0 {
        let nn = cap_n as usize;
        // cleared left side: (q^{1-N};q)_n P_n(x;q^{-N}|q)
        let lhs = wall_cleared(n, cap_n, x, q);
        // right side is finite as printed once the vanishing factor is moved over
        let sign = if nn % 2 == 0 { 1.0 } else { -1.0 };
        let expo = (cap_n * (cap_n + 1 - 2 * n as i64)) as f64 / 2.0;
        let mut poch = 1.0;
        for i in 0..(n - nn) {
            poch *= 1.0 - qv.powi((nn + 1 + i) as i32);
        }
        let rhs = x.powi(nn as i32)
            * sign
            * qv.powf(expo)
            * poch
            * wall(n - nn, x, q.powi(nn as i32), q)?;
        return Ok(WallReflection {
            lhs,
            rhs,
            residual: (lhs - rhs).abs(),
            regime: ReflectionRegime::Cleared,
        });
    }
    // N < 0: P_n(x;q^M|q) (q^{1+M};q)_n x^M (-1)^M q^{-M(M-1+2n)/2}
    //        = Σ-form of (q^{1-M};q)_{n+M} P_{n+M}(x;q^{-M}|q)
    let m = (-cap_n) as usize;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let expo = -((m as i64 * (m as i64 - 1 + 2 * n as i64)) as f64) / 2.0;
    let mut poch = 1.0;
    for i in 0..n {
        poch *= 1.0 - qv.powi((1 + m + i) as i32);
    }
    let lhs = wall(n, x, q.powi(m as i32), q)? * poch * x.powi(m as i32) * sign * qv.powf(expo);
    let rhs = wall_cleared(n + m, m as i64, x, q);
    Ok(WallReflection {
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
        regime: ReflectionRegime::ClearedNegative,
    })
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{qpoch_infinite, TruncationPolicy};

    fn dp(q: f64) -> DeformationParameter {
        DeformationParameter::new(q).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cq_hermite_low_orders() {
        let q = dp(0.5);
        assert_eq!(cq_hermite(0, 0.77, q), 1.0);
        assert_eq!(cq_hermite(1, 0.3, q), 0.6);
        // H_2 = 4x^2 - (1-q)
        assert!((cq_hermite(2, 0.3, q) - (-0.14)).abs() < 1e-15);
    }

    #[test]
    fn cq_hermite_generating_function() {
        // Σ_j H_j(cosθ|q) t^j/(q;q)_j = 1/((t e^{iθ};q)_∞ (t e^{-iθ};q)_∞)
        let policy = TruncationPolicy::default();
        for qv in [0.3, 0.5, 0.8] {
            let q = dp(qv);
            for (t, theta) in [(0.5, 1.0), (0.3, 0.4), (-0.4, 2.2)] {
                let x = f64::cos(theta);
                let mut sum = 0.0;
                let mut poch = 1.0;
                for j in 0..200 {
                    if j > 0 {
                        poch *= 1.0 - qv.powi(j as i32);
                    }
                    sum += cq_hermite(j, x, q) * f64::powi(t, j as i32) / poch;
                }
                let e = Complex64::from_polar(1.0, theta);
                let prod = (qpoch_infinite(t * e, q, &policy).unwrap()
                    * qpoch_infinite(t * e.conj(), q, &policy).unwrap())
                .re;
                let rhs = 1.0 / prod;
                assert!(
                    ((sum - rhs) / rhs).abs() < 1e-8,
                    "q={qv} t={t} theta={theta}: {sum} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn wall_low_orders() {
        let q = dp(0.5);
        assert_eq!(wall(0, 0.9, 0.3, q).unwrap(), 1.0);
        assert_eq!(wall(7, 0.0, 0.3, q).unwrap(), 1.0);
        let v = wall(1, 0.2, 0.3, q).unwrap();
        assert!((v - 0.7647058823529411).abs() < 1e-14);
    }

    #[test]
    fn wall_pole() {
        // a = q^{-1} puts a zero of (aq;q)_k at k = 1
        let q = dp(0.5);
        assert!(matches!(
            wall(2, 0.3, 2.0, q),
            Err(Error::PoleInDenominator(_))
        ));
    }

    #[test]
    fn asc_low_orders_and_symmetry() {
        let q = dp(0.5);
        assert_eq!(
            al_salam_chihara(0, 0.4, c(0.2, 0.0), c(0.3, 0.0), q).unwrap(),
            c(1.0, 0.0)
        );
        let v = al_salam_chihara(1, 0.1, c(0.2, 0.0), c(0.3, 0.0), q).unwrap();
        assert!((v - c(-0.3, 0.0)).norm() < 1e-14);
        // a <-> b symmetry through the asymmetric 3phi2 form
        let a = c(0.25, 0.1);
        let b = c(-0.3, 0.2);
        for m in [1, 2, 4] {
            let v1 = al_salam_chihara(m, 0.37, a, b, q).unwrap();
            let v2 = al_salam_chihara(m, 0.37, b, a, q).unwrap();
            assert!((v1 - v2).norm() < 1e-10 * (1.0 + v1.norm()), "m={m}");
        }
    }

    #[test]
    fn asc_recurrence_agrees_with_phi32_form() {
        let q = dp(0.3);
        let a = c(0.4, -0.2);
        let b = c(0.1, 0.3);
        for m in 0..6 {
            for x in [-0.9, -0.2, 0.0, 0.55, 1.0] {
                let v1 = al_salam_chihara(m, x, a, b, q).unwrap();
                let v2 = al_salam_chihara_recurrence(m, x, a, b, q);
                // the 3phi2 route loses digits to cancellation as m grows
                assert!((v1 - v2).norm() < 2e-9 * (1.0 + v2.norm()), "m={m} x={x}");
            }
        }
    }

    #[test]
    fn asc_degenerate_cases() {
        let q = dp(0.5);
        // 3phi2 form refuses a = 0, recurrence handles it
        assert!(matches!(
            al_salam_chihara(2, 0.4, c(0.0, 0.0), c(0.3, 0.0), q),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            al_salam_chihara(2, 1.4, c(0.2, 0.0), c(0.3, 0.0), q),
            Err(Error::Domain(_))
        ));
        // Q_m(x;0,0|q) = H_m(x|q)
        for m in 0..7 {
            let v = al_salam_chihara_recurrence(m, 0.3, c(0.0, 0.0), c(0.0, 0.0), q);
            assert!((v.re - cq_hermite(m, 0.3, q)).abs() < 1e-13);
            assert_eq!(v.im, 0.0);
        }
    }

    #[test]
    fn qhermite2d_low_orders() {
        let q = dp(0.5);
        assert_eq!(qhermite2d(0, 0, c(2.0, 1.0), c(0.5, 0.0), q), c(1.0, 0.0));
        let z = c(0.3, 0.7);
        assert_eq!(qhermite2d(1, 0, z, c(9.0, 9.0), q), z);
        // H_{1,1}(z,w|q) = zw - (1-q)
        let v = qhermite2d(1, 1, c(1.0, 0.0), c(1.0, 0.0), q);
        assert!((v - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn qhermite2d_matches_wall_form() {
        for qv in [0.3, 0.5, 0.8] {
            let q = dp(qv);
            for r in 0..=6 {
                for s in 0..=6 {
                    for z in [c(0.8, -0.55), c(-1.4, 0.9), c(0.05, 1.9)] {
                        let direct = qhermite2d(r, s, z, z.conj(), q);
                        let wallf = qhermite2d_wall_form(r, s, z, q).unwrap();
                        let scale = direct.norm().max(wallf.norm()).max(1e-30);
                        assert!(
                            (direct - wallf).norm() / scale < 1e-10,
                            "q={qv} r={r} s={s} z={z}: {direct} vs {wallf}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn complex_hermite_classical_values() {
        assert_eq!(
            complex_hermite_classical(0, 0, c(1.0, 2.0), c(3.0, 4.0)),
            c(1.0, 0.0)
        );
        // H_{1,1}(z,w) = zw - 1
        let v = complex_hermite_classical(1, 1, c(2.0, 0.0), c(3.0, 0.0));
        assert_eq!(v, c(5.0, 0.0));
    }

    #[test]
    fn qhermite2d_classical_limit_trend() {
        // H_{r,s}(√(1-q) z, √(1-q) w | q)/(1-q)^{(r+s)/2} → H_{r,s}(z,w)
        let z = c(0.7, 0.2);
        let w = c(0.4, -0.5);
        for (r, s) in [(1usize, 1usize), (2, 1), (3, 2)] {
            let mut last = f64::INFINITY;
            for qv in [0.99, 0.999] {
                let q = dp(qv);
                let scale = (1.0 - qv).sqrt();
                let got = qhermite2d(r, s, scale * z, scale * w, q)
                    / (1.0 - qv).powf((r + s) as f64 / 2.0);
                let want = complex_hermite_classical(r, s, z, w);
                let err = (got - want).norm();
                // (1,1) is exact at every q, so accept rounding-level ties
                assert!(
                    err < last || err < 1e-12,
                    "error not decreasing at q={qv} for ({r},{s})"
                );
                last = err;
            }
            assert!(last < 1e-2, "final error {last} too large for ({r},{s})");
        }
    }

    #[test]
    fn hermite_laguerre_classical_values() {
        assert_eq!(hermite_classical(0, 0.3), 1.0);
        assert_eq!(hermite_classical(2, 1.0), 2.0);
        assert_eq!(laguerre_classical(0, 1.5, 0.3), 1.0);
        assert!((laguerre_classical(1, 0.0, 0.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn classical_basis_coeff_fock_reduction() {
        // m = 0: h_j^0(z) = z^j/sqrt(j!)
        let z = c(0.6, -0.3);
        let mut fact = 1.0;
        for j in 0..5 {
            if j > 0 {
                fact *= j as f64;
            }
            let got = classical_basis_coeff(j, 0, z);
            let want = z.powu(j as u32) / fact.sqrt();
            assert!((got - want).norm() < 1e-14, "j={j}");
        }
        // h_0^1(z) = z̄
        assert!((classical_basis_coeff(0, 1, z) - z.conj()).norm() < 1e-15);
    }

    #[test]
    fn cauchy_poly_values() {
        let q = dp(0.5);
        assert_eq!(cauchy_poly(0, c(0.4, 0.0), c(0.2, 0.0), q), c(1.0, 0.0));
        assert_eq!(cauchy_poly(2, c(1.0, 0.0), c(1.0, 0.0), q), c(0.0, 0.0));
    }

    #[test]
    fn wall_reflection_regimes() {
        let q = dp(0.5);
        // N = 0: trivial identity
        let r = wall_reflection_check(3, 0, 0.2, q).unwrap();
        assert_eq!(r.regime, ReflectionRegime::Trivial);
        assert_eq!(r.residual, 0.0);
        // 1 <= N <= n: cleared evaluation
        let r = wall_reflection_check(1, 1, 0.2, q).unwrap();
        assert_eq!(r.regime, ReflectionRegime::Cleared);
        assert!(r.residual < 1e-12, "residual {}", r.residual);
        let r = wall_reflection_check(3, 3, 0.1, q).unwrap();
        assert_eq!(r.regime, ReflectionRegime::Cleared);
        assert!(r.residual < 1e-10, "residual {}", r.residual);
        for (n, nn) in [(2usize, 1i64), (4, 2), (5, 3)] {
            let r = wall_reflection_check(n, nn, 0.27, q).unwrap();
            assert!(r.residual < 1e-11 * (1.0 + r.lhs.abs()), "n={n} N={nn}");
        }
        // N < 0 (the regime the finite-sum argument uses)
        for (n, nn) in [(1usize, -1i64), (2, -1), (2, -2), (3, -2)] {
            let r = wall_reflection_check(n, nn, 0.2, q).unwrap();
            assert_eq!(r.regime, ReflectionRegime::ClearedNegative);
            assert!(
                r.residual < 1e-10 * (1.0 + r.lhs.abs()),
                "n={n} N={nn} residual {}",
                r.residual
            );
        }
        // N > n refused
        assert!(matches!(
            wall_reflection_check(2, 3, 0.2, q),
            Err(Error::SingularParameters(_))
        ));
    }

    #[test]
    fn wall_lattice_values_stay_bounded() {
        // on the lattice x = q^k the values stay below the triangle-inequality
        // bound: the terminating sum with all terms in absolute value at x = 1
        let q = dp(0.5);
        let a = 0.3;
        for n in 0..=6usize {
            let mut bound = 1.0;
            let mut term = 1.0;
            for k in 0..n {
                let fa = 1.0 - q.powi(k as i32 - n as i32);
                let fc = 1.0 - a * q.powi(k as i32 + 1);
                term *= (fa / (fc * (1.0 - q.powi(k as i32 + 1))) * q.value()).abs();
                bound += term;
            }
            let at_zero = wall(n, 0.0, a, q).unwrap();
            assert_eq!(at_zero, 1.0);
            for k in 0..=20 {
                let x = q.powi(k);
                let v = wall(n, x, a, q).unwrap();
                assert!(
                    v.abs() <= bound * at_zero,
                    "n={n} k={k}: |{v}| > bound {bound}"
                );
            }
        }
    }

    /// batch and pointwise paths agree to a couple of ulps (the optimizer may
    /// vectorize the batch loop, so bitwise equality is not guaranteed)
    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-14 * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn batch_matches_pointwise() {
        let q = dp(0.4);
        let xs = [-0.8, -0.1, 0.0, 0.33, 0.9];
        let b = cq_hermite_batch(5, &xs, q);
        for (i, &x) in xs.iter().enumerate() {
            assert!(close(b[i], cq_hermite(5, x, q)));
        }
        let wb = wall_batch(3, &xs, 0.25, q).unwrap();
        for (i, &x) in xs.iter().enumerate() {
            assert!(close(wb[i], wall(3, x, 0.25, q).unwrap()));
        }
        let ab = al_salam_chihara_batch(4, &xs, c(0.1, 0.2), c(0.3, 0.0), q);
        for (i, &x) in xs.iter().enumerate() {
            let want = al_salam_chihara_recurrence(4, x, c(0.1, 0.2), c(0.3, 0.0), q);
            assert!(
                (ab[i] - want).norm() <= 1e-14 * want.norm().max(1.0),
                "i={i}"
            );
        }
    }
}
