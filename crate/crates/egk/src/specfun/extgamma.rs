//! Extended incomplete gamma pair
//! `Гамма(a, x, b, beta) = int_x^inf t^{a-1} exp(-t - b t^{-beta}) dt` and
//! its lower companion over `(0, x)`.
//!
//! The integrand is split at the interior maximum of the exponent,
//! `t = max(x, b^{1/(1+beta)})`, and each piece goes through the adaptive
//! engine; the tail uses the semi-infinite variable change. With `b > 0`
//! the origin is regularized (`exp(-b t^{-beta})` vanishes faster than any
//! power), which is what admits the `alpha <= 0` arguments produced by the
//! LCR series.

use super::quad::{integrate, QuadratureSpec};
use crate::{Error, Result};

fn check_common(alpha: f64, x: f64, b: f64, beta: f64) -> Result<()> {
    if !(beta > 0.0) {
        return Err(Error::Domain(format!(
            "extended gamma requires beta > 0, got {beta}"
        )));
    }
    if !(x >= 0.0) || !(b >= 0.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!(
            "extended gamma arguments out of range (alpha={alpha}, x={x}, b={b})"
        )));
    }
    Ok(())
}

fn integrand(alpha: f64, b: f64, beta: f64) -> impl Fn(f64) -> f64 {
    move |t: f64| {
        if t <= 0.0 {
            return 0.0;
        }
        let mut e = -t + (alpha - 1.0) * t.ln();
        if b > 0.0 {
            e -= b * t.powf(-beta);
        }
        if e < -745.0 {
            0.0
        } else {
            e.exp()
        }
    }
}

fn split_point(x: f64, b: f64, beta: f64) -> f64 {
    if b > 0.0 {
        x.max(b.powf(1.0 / (1.0 + beta)))
    } else {
        x.max(1.0)
    }
}

/// Upper extended incomplete gamma with default tolerances.
pub fn ext_upper_gamma(alpha: f64, x: f64, b: f64, beta: f64) -> Result<f64> {
    ext_upper_gamma_with(alpha, x, b, beta, &QuadratureSpec::default())
}

/// Upper extended incomplete gamma with caller-supplied tolerances.
pub fn ext_upper_gamma_with(
    alpha: f64,
    x: f64,
    b: f64,
    beta: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    check_common(alpha, x, b, beta)?;
    if alpha <= 0.0 && x == 0.0 && b == 0.0 {
        return Err(Error::Divergent(format!(
            "Gamma(alpha, 0, 0, beta) diverges at the origin for alpha = {alpha} <= 0"
        )));
    }
    let f = integrand(alpha, b, beta);
    let s = split_point(x, b, beta);
    if x < s {
        let head = integrate(&f, x, s, spec)?;
        let tail = integrate(&f, s, f64::INFINITY, spec)?;
        Ok(head.value + tail.value)
    } else {
        Ok(integrate(&f, x, f64::INFINITY, spec)?.value)
    }
}

/// Lower extended incomplete gamma with default tolerances.
pub fn ext_lower_gamma(alpha: f64, x: f64, b: f64, beta: f64) -> Result<f64> {
    ext_lower_gamma_with(alpha, x, b, beta, &QuadratureSpec::default())
}

/// Lower extended incomplete gamma with caller-supplied tolerances.
pub fn ext_lower_gamma_with(
    alpha: f64,
    x: f64,
    b: f64,
    beta: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    check_common(alpha, x, b, beta)?;
    if !(x > 0.0) {
        return Err(Error::Domain(format!(
            "lower extended gamma requires x > 0, got {x}"
        )));
    }
    if alpha <= 0.0 && b == 0.0 {
        return Err(Error::Divergent(format!(
            "gamma(alpha, x, 0, beta) diverges at the origin for alpha = {alpha} <= 0"
        )));
    }
    let f = integrand(alpha, b, beta);
    let s = if b > 0.0 {
        b.powf(1.0 / (1.0 + beta))
    } else {
        f64::INFINITY
    };
    if s < x {
        let head = integrate(&f, 0.0, s, spec)?;
        let tail = integrate(&f, s, x, spec)?;
        Ok(head.value + tail.value)
    } else {
        Ok(integrate(&f, 0.0, x, spec)?.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::upper_gamma;
    use rand::{Rng, SeedableRng};

    /// Brute-force Bessel K oracle: K_nu(z) = int_0^inf e^{-z cosh t} cosh(nu t) dt,
    /// fixed-step Simpson; the double-exponential decay makes this converge fast.
    fn bessel_k_oracle(nu: f64, z: f64) -> f64 {
        let upper = 40.0_f64;
        let n = 40_000;
        let h = upper / n as f64;
        let f = |t: f64| (-z * t.cosh()).exp() * (nu * t).cosh();
        let mut s = f(0.0) + f(upper);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(i as f64 * h);
        }
        s * h / 3.0
    }

    #[test]
    fn reduces_to_complete_gamma() {
        assert!((ext_upper_gamma(1.0, 0.0, 0.0, 1.0).unwrap() - 1.0).abs() < 1e-10);
        let half = ext_upper_gamma(0.5, 0.0, 0.0, 1.0).unwrap();
        assert!((half - std::f64::consts::PI.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn bessel_identity() {
        // Gamma(alpha, 0, b, 1) = 2 b^{alpha/2} K_alpha(2 sqrt(b)).
        for &alpha in &[0.5, 1.0, 2.5] {
            for &b in &[0.1, 1.0, 10.0] {
                let lhs = ext_upper_gamma(alpha, 0.0, b, 1.0).unwrap();
                let rhs = 2.0 * b.powf(alpha / 2.0) * bessel_k_oracle(alpha, 2.0 * b.sqrt());
                assert!(
                    ((lhs - rhs) / rhs).abs() < 1e-8,
                    "alpha={alpha} b={b}: {lhs} vs {rhs}"
                );
            }
        }
        // Frozen: Gamma(1,0,1,1) = 2 K_1(2).
        assert!(
            (ext_upper_gamma(1.0, 0.0, 1.0, 1.0).unwrap() - 0.279_731_763_633_043_8).abs() < 1e-9
        );
    }

    #[test]
    fn lower_gamma_exponential_limits() {
        // gamma(1, x) -> 1 as x -> inf (x = 700 proxy).
        let v = ext_lower_gamma(1.0, 700.0, 0.0, 1.0).unwrap();
        assert!((v - 1.0).abs() < 1e-10);
        let v = ext_lower_gamma(1.0, 1.0, 0.0, 1.0).unwrap();
        assert!((v - (1.0 - (-1.0_f64).exp())).abs() < 1e-10);
    }

    #[test]
    fn additivity_on_random_tuples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let alpha = rng.gen_range(-1.5..3.0);
            let x = rng.gen_range(0.05..4.0);
            let b = rng.gen_range(0.05..3.0);
            let beta = rng.gen_range(0.2..2.5);
            let lo = ext_lower_gamma(alpha, x, b, beta).unwrap();
            let hi = ext_upper_gamma(alpha, x, b, beta).unwrap();
            let whole = ext_upper_gamma(alpha, 0.0, b, beta).unwrap();
            assert!(
                ((lo + hi - whole) / whole).abs() < 1e-8,
                "(a={alpha},x={x},b={b},beta={beta}): {lo}+{hi} vs {whole}"
            );
        }
    }

    #[test]
    fn reduction_to_classical_upper_gamma() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let alpha = rng.gen_range(0.1..5.0);
            let x = rng.gen_range(0.0..6.0);
            let beta = rng.gen_range(0.2..2.5);
            let ext = ext_upper_gamma(alpha, x, 0.0, beta).unwrap();
            let classical = upper_gamma(alpha, x).unwrap();
            assert!(
                ((ext - classical) / classical).abs() < 1e-10,
                "(a={alpha},x={x}): {ext} vs {classical}"
            );
        }
    }

    #[test]
    fn monotone_in_x_and_b() {
        let xs = [0.1, 0.5, 1.0, 2.0, 4.0];
        let bs = [0.0, 0.3, 1.0, 2.5];
        for w in xs.windows(2) {
            let a = ext_upper_gamma(1.3, w[0], 0.8, 1.1).unwrap();
            let b = ext_upper_gamma(1.3, w[1], 0.8, 1.1).unwrap();
            assert!(b < a);
        }
        for w in bs.windows(2) {
            let a = ext_upper_gamma(1.3, 0.4, w[0], 1.1).unwrap();
            let b = ext_upper_gamma(1.3, 0.4, w[1], 1.1).unwrap();
            assert!(b < a);
        }
    }

    #[test]
    fn divergent_arguments_rejected() {
        assert!(matches!(
            ext_upper_gamma(-0.5, 0.0, 0.0, 1.0),
            Err(crate::Error::Divergent(_))
        ));
        assert!(matches!(
            ext_lower_gamma(-0.5, 1.0, 0.0, 1.0),
            Err(crate::Error::Divergent(_))
        ));
        assert!(ext_upper_gamma(1.0, 0.0, 1.0, -1.0).is_err());
    }
}
