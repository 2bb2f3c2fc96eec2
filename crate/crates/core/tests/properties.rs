//! Property-based invariants over randomly drawn parameters.

use num_complex::Complex64;
use proptest::prelude::*;
use qbargmann::coherent::{coeff_h, overlap_kernel_series};
use qbargmann::qcore::{
    eq_exp, qbinomial, qbracket_factorial, qpoch_finite, qpoch_infinite_real, DeformationParameter,
    TruncationPolicy,
};
use qbargmann::qpolys::{al_salam_chihara, qhermite2d, qhermite2d_wall_form};

fn dp(q: f64) -> DeformationParameter {
    DeformationParameter::new(q).unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

proptest! {
    /// (a;q)_{n+1} = (a;q)_n (1 - a q^n)
    #[test]
    fn qpoch_recurrence(
        re in -2.0f64..2.0,
        im in -2.0f64..2.0,
        qv in 0.05f64..0.95,
        n in 0usize..30,
    ) {
        let q = dp(qv);
        let a = c(re, im);
        let lhs = qpoch_finite(a, q, n + 1);
        let rhs = qpoch_finite(a, q, n) * (1.0 - a * qv.powi(n as i32));
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()));
    }

    /// Σ_j t^j/(q;q)_j = 1/(t;q)_∞ for 0 < t < 1
    #[test]
    fn euler_series_vs_product(t in 0.01f64..0.9, qv in 0.1f64..0.9) {
        let q = dp(qv);
        let policy = TruncationPolicy::default();
        let mut sum = 0.0;
        let mut poch = 1.0;
        let mut tj = 1.0;
        for j in 0i32..4000 {
            if j > 0 {
                poch *= 1.0 - qv.powi(j);
                tj *= t;
            }
            sum += tj / poch;
            if tj / (poch * (1.0 - t)) < 1e-14 * sum {
                break;
            }
        }
        let product = 1.0 / qpoch_infinite_real(t, q, &policy).unwrap();
        prop_assert!(((sum - product) / product).abs() < 1e-8);
    }

    /// e_q series equals the product form on the convergence disk
    #[test]
    fn eq_exp_euler_identity(frac in 0.0f64..0.9, qv in 0.1f64..0.9, phase in 0.0f64..6.2) {
        let q = dp(qv);
        let policy = TruncationPolicy::default();
        let u = Complex64::from_polar(frac / (1.0 - qv), phase);
        let series = eq_exp(u, q, &policy).unwrap();
        let product = qbargmann::qcore::qpoch_infinite((1.0 - qv) * u, q, &policy).unwrap();
        let rhs = 1.0 / product;
        prop_assert!((series - rhs).norm() <= 1e-9 * rhs.norm().max(1.0));
    }

    /// Gaussian binomial symmetry [n k] = [n n-k]
    #[test]
    fn qbinomial_symmetry(n in 0usize..20, k in 0usize..20, qv in 0.05f64..0.95) {
        prop_assume!(k <= n);
        let q = dp(qv);
        let a = qbinomial(n, k, q).unwrap();
        let b = qbinomial(n, n - k, q).unwrap();
        prop_assert!((a - b).abs() <= 1e-10 * a.abs().max(1.0));
    }

    /// Al-Salam-Chihara is symmetric under a ↔ b through the asymmetric form
    /// (the a^{-m} prefactor amplifies rounding when |a| is small, so the
    /// draw keeps both parameters away from 0)
    #[test]
    fn asc_parameter_symmetry(
        x in -0.99f64..0.99,
        ar in -0.6f64..0.6,
        ai in -0.6f64..0.6,
        br in -0.6f64..0.6,
        qv in 0.3f64..0.8,
        m in 1usize..5,
    ) {
        let a = c(ar, ai);
        let b = c(br, 0.0);
        prop_assume!(a.norm() > 0.15 && b.norm() > 0.15);
        let q = dp(qv);
        let v1 = al_salam_chihara(m, x, a, b, q).unwrap();
        let v2 = al_salam_chihara(m, x, b, a, q).unwrap();
        prop_assert!((v1 - v2).norm() <= 1e-7 * (1.0 + v1.norm()));
    }

    /// double-index sum form vs Wall form at w = conj(z)
    #[test]
    fn qhermite2d_wall_equivalence(
        re in -1.5f64..1.5,
        im in -1.5f64..1.5,
        r in 0usize..5,
        s in 0usize..5,
        qv in 0.2f64..0.9,
    ) {
        let q = dp(qv);
        let z = c(re, im);
        let direct = qhermite2d(r, s, z, z.conj(), q);
        let wallf = qhermite2d_wall_form(r, s, z, q).unwrap();
        let scale = direct.norm().max(wallf.norm()).max(1e-12);
        prop_assert!((direct - wallf).norm() / scale <= 1e-9);
    }

    /// m = 0 coefficients are the scaled monomials
    #[test]
    fn coeff_h_m0_monomials(re in -1.0f64..1.0, im in -1.0f64..1.0, j in 0usize..10, qv in 0.2f64..0.8) {
        let q = dp(qv);
        let z = c(re, im);
        let got = coeff_h(j, 0, z, q);
        let want = z.powu(j as u32) / qbracket_factorial(j, q).sqrt();
        prop_assert!((got - want).norm() <= 1e-10 * want.norm().max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// any 3-point Gram matrix of the series kernel is positive
    /// semidefinite (up to a small numerical slack)
    #[test]
    fn kernel_three_point_psd(
        p in proptest::array::uniform6(-0.45f64..0.45),
        m in 0usize..3,
        qv in 0.3f64..0.8,
    ) {
        let q = dp(qv);
        let scale = (qv.powi(m as i32) / (1.0 - qv)).sqrt();
        let pts = [
            c(p[0], p[1]) * scale,
            c(p[2], p[3]) * scale,
            c(p[4], p[5]) * scale,
        ];
        let policy = TruncationPolicy::default();
        let mut g = [[c(0.0, 0.0); 3]; 3];
        for (i, &zi) in pts.iter().enumerate() {
            for (j, &zj) in pts.iter().enumerate() {
                g[i][j] = overlap_kernel_series(zi, zj, m, q, &policy).unwrap().value;
            }
        }
        let d1 = g[0][0].re;
        let d2 = (g[0][0] * g[1][1] - g[0][1] * g[1][0]).re;
        let d3 = (g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
            - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
            + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]))
            .re;
        prop_assert!(d1 > -1e-8 && d2 > -1e-8 && d3 > -1e-8, "{d1} {d2} {d3}");
    }

    /// series overlap kernel is Hermitian: K(z,w) = conj(K(w,z))
    #[test]
    fn kernel_hermitian_symmetry(
        zr in -0.5f64..0.5, zi in -0.5f64..0.5,
        wr in -0.5f64..0.5, wi in -0.5f64..0.5,
        m in 0usize..3,
        qv in 0.3f64..0.8,
    ) {
        let q = dp(qv);
        let scale = (qv.powi(m as i32) / (1.0 - qv)).sqrt();
        let z = c(zr, zi) * scale;
        let w = c(wr, wi) * scale;
        let policy = TruncationPolicy::default();
        let a = overlap_kernel_series(z, w, m, q, &policy).unwrap().value;
        let b = overlap_kernel_series(w, z, m, q, &policy).unwrap().value;
        prop_assert!((a - b.conj()).norm() <= 1e-10 * a.norm().max(1.0));
    }
}
