//! Regime-uniform radial profiles.
//!
//! Geodesics and translation curves switch between hyperbolic and
//! trigonometric functions of `s·sqrt(|κ|)` with `κ = cos 2α`. Writing them as
//! entire functions of `κ` removes the light-like special case: near `κ = 0`
//! the Taylor series in `κ s²` is used.

/// Below this value of `|κ s²|` the series are exact to rounding.
const SERIES_CUTOFF: f64 = 1e-4;

/// `sinh(s√κ)/√κ`, or `sin(s√-κ)/√-κ` for `κ < 0`.
pub(crate) fn sinc_profile(s: f64, kappa: f64) -> f64 {
    let q = kappa * s * s;
    if q.abs() < SERIES_CUTOFF {
        return s * (1.0 + q / 6.0 * (1.0 + q / 20.0 * (1.0 + q / 42.0)));
    }
    if kappa > 0.0 {
        let c = kappa.sqrt();
        (s * c).sinh() / c
    } else {
        let c = (-kappa).sqrt();
        (s * c).sin() / c
    }
}

/// `cosh(s√κ)`, or `cos(s√-κ)` for `κ < 0`; the `s`-derivative of
/// [`sinc_profile`].
pub(crate) fn cos_profile(s: f64, kappa: f64) -> f64 {
    let q = kappa * s * s;
    if q.abs() < SERIES_CUTOFF {
        return 1.0 + q / 2.0 * (1.0 + q / 12.0 * (1.0 + q / 30.0));
    }
    if kappa > 0.0 {
        (s * kappa.sqrt()).cosh()
    } else {
        (s * (-kappa).sqrt()).cos()
    }
}

/// `tanh(s√κ)/√κ`, or `tan(s√-κ)/√-κ` for `κ < 0`.
pub(crate) fn tan_profile(s: f64, kappa: f64) -> f64 {
    let q = kappa * s * s;
    if q.abs() < SERIES_CUTOFF {
        return s * (1.0 - q / 3.0 + 2.0 * q * q / 15.0 - 17.0 * q * q * q / 315.0);
    }
    if kappa > 0.0 {
        let c = kappa.sqrt();
        (s * c).tanh() / c
    } else {
        let c = (-kappa).sqrt();
        (s * c).tan() / c
    }
}

/// Inverse of [`sinc_profile`] on its first increasing branch.
/// Returns `None` when `v` exceeds the maximum `1/√-κ` of the periodic case.
pub(crate) fn inverse_sinc_profile(v: f64, kappa: f64) -> Option<f64> {
    let q = kappa * v * v;
    if q.abs() < SERIES_CUTOFF {
        return Some(v * (1.0 - q / 6.0 + 3.0 * q * q / 40.0 - 5.0 * q * q * q / 112.0));
    }
    if kappa > 0.0 {
        let c = kappa.sqrt();
        Some((v * c).asinh() / c)
    } else {
        let c = (-kappa).sqrt();
        let w = v * c;
        if w > 1.0 {
            None
        } else {
            Some(w.asin() / c)
        }
    }
}

/// Inverse of [`tan_profile`] on `s ≥ 0`. Returns `None` when `κ > 0` and
/// `v ≥ 1/√κ` (no finite preimage).
pub(crate) fn inverse_tan_profile(v: f64, kappa: f64) -> Option<f64> {
    let q = kappa * v * v;
    if q.abs() < SERIES_CUTOFF {
        return Some(v * (1.0 + q / 3.0 + q * q / 5.0 + q * q * q / 7.0));
    }
    if kappa > 0.0 {
        let c = kappa.sqrt();
        let w = v * c;
        if w >= 1.0 {
            None
        } else {
            Some(w.atanh() / c)
        }
    } else {
        let c = (-kappa).sqrt();
        Some((v * c).atan() / c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn series_join_closed_forms() {
        // evaluate just outside the cutoff with the closed form and just
        // inside with the series; both must agree with high accuracy
        for &kappa in &[1e-3f64, -1e-3, 0.4, -0.4] {
            let s_edge = (SERIES_CUTOFF / kappa.abs()).sqrt();
            for s in [s_edge * 0.999, s_edge * 1.001] {
                let c = kappa.abs().sqrt();
                let (sh, th, ch) = if kappa > 0.0 {
                    ((s * c).sinh() / c, (s * c).tanh() / c, (s * c).cosh())
                } else {
                    ((s * c).sin() / c, (s * c).tan() / c, (s * c).cos())
                };
                assert!(rel(sinc_profile(s, kappa), sh) < 1e-14);
                assert!(rel(tan_profile(s, kappa), th) < 1e-14);
                assert!(rel(cos_profile(s, kappa), ch) < 1e-14);
            }
        }
    }

    #[test]
    fn inverses() {
        for &kappa in &[0.0f64, 1e-9, -1e-9, 0.3, -0.3, 1.0, -1.0] {
            for &s in &[1e-3, 0.2, 0.9, 1.4] {
                if kappa < 0.0 && s * (-kappa).sqrt() >= std::f64::consts::FRAC_PI_2 {
                    continue;
                }
                let v = sinc_profile(s, kappa);
                assert!(rel(inverse_sinc_profile(v, kappa).unwrap(), s) < 1e-13);
                let t = tan_profile(s, kappa);
                assert!(rel(inverse_tan_profile(t, kappa).unwrap(), s) < 1e-13);
            }
        }
        assert_eq!(inverse_sinc_profile(1.5, -1.0), None);
        assert_eq!(inverse_tan_profile(1.0, 1.0), None);
    }
}
