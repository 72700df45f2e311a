//! Floating-point winding numbers of the curves attached to a form.
//!
//! These are cross-checks only; the exact index comes from
//! [`index_gamma`](crate::index::index_gamma).
//!
//! Sampling contract: consecutive samples may differ in argument by less
//! than `pi/2`, otherwise the step is bisected (at most [`MAX_DEPTH`]
//! times). The accumulated turning, in revolutions, must lie within
//! [`MAX_RESIDUAL`] of an integer.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{eval_f64_coeffs, BinaryForm};

pub const MAX_DEPTH: u32 = 24;
pub const MAX_RESIDUAL: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveSample {
    pub phi: f64,
    /// `(f_xx, f_xy, f_yy)` at `(cos phi, sin phi)`
    pub gamma: (f64, f64, f64),
    /// `(F, F', F'')` at `phi`
    pub alpha: (f64, f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Winding {
    pub winding: i64,
    /// Accumulated turning in revolutions before rounding.
    pub raw: f64,
    pub residual: f64,
    pub evaluations: usize,
}

/// Float coefficients of the forms needed to sample both curves.
#[derive(Debug, Clone)]
pub struct CurveEvaluator {
    degree: usize,
    fxx: Vec<f64>,
    fxy: Vec<f64>,
    fyy: Vec<f64>,
    f0: Vec<f64>,
    f1: Vec<f64>,
    f2: Vec<f64>,
}

impl CurveEvaluator {
    pub fn new(f: &BinaryForm) -> Result<Self> {
        if f.degree() < 2 {
            return Err(Error::DegreeTooLow {
                op: "curve sampling",
                min: 2,
                got: f.degree(),
            });
        }
        let fx = f.partial_x()?;
        let fy = f.partial_y()?;
        let r1 = f.rotational_derivative()?;
        let r2 = r1.rotational_derivative()?;
        Ok(CurveEvaluator {
            degree: f.degree(),
            fxx: fx.partial_x()?.to_f64_coeffs(),
            fxy: fx.partial_y()?.to_f64_coeffs(),
            fyy: fy.partial_y()?.to_f64_coeffs(),
            f0: f.to_f64_coeffs(),
            f1: r1.to_f64_coeffs(),
            f2: r2.to_f64_coeffs(),
        })
    }

    pub fn sample(&self, phi: f64) -> CurveSample {
        let (s, c) = phi.sin_cos();
        CurveSample {
            phi,
            gamma: (
                eval_f64_coeffs(&self.fxx, c, s),
                eval_f64_coeffs(&self.fxy, c, s),
                eval_f64_coeffs(&self.fyy, c, s),
            ),
            alpha: (
                eval_f64_coeffs(&self.f0, c, s),
                eval_f64_coeffs(&self.f1, c, s),
                eval_f64_coeffs(&self.f2, c, s),
            ),
        }
    }

    /// `(a - c, 2b)`: the position of `gamma` around the degenerate cone.
    fn gamma_plane(&self, phi: f64) -> (f64, f64) {
        let (a, b, c) = self.sample(phi).gamma;
        (a - c, 2.0 * b)
    }

    /// Orthogonal projection of `alpha` onto the plane `2 D u + w = 0`,
    /// in the in-plane basis `((1, 0, -2D)/|.|, (0, 1, 0))`.
    fn alpha_plane(&self, phi: f64) -> Result<(f64, f64)> {
        let (u, v, w) = self.sample(phi).alpha;
        let d = self.degree as f64;
        let cone = d * d * u * u + d * u * w - (d - 1.0) * v * v;
        if cone.is_nan() || cone >= 0.0 {
            return Err(Error::ConeViolation { phi });
        }
        Ok(((u - 2.0 * d * w) / (1.0 + 4.0 * d * d).sqrt(), v))
    }
}

fn wrap(d: f64) -> f64 {
    let mut d = d % TAU;
    if d > PI {
        d -= TAU;
    } else if d <= -PI {
        d += TAU;
    }
    d
}

/// Winding number about the origin of a closed planar curve on `[0, 2 pi]`.
pub fn adaptive_winding<F>(curve: F, base_samples: usize) -> Result<Winding>
where
    F: Fn(f64) -> Result<(f64, f64)>,
{
    let arg = |phi: f64| -> Result<f64> {
        let (x, y) = curve(phi)?;
        if x == 0.0 && y == 0.0 {
            return Err(Error::RefinementExhausted(format!(
                "curve hits the origin at {phi}"
            )));
        }
        Ok(y.atan2(x))
    };
    let n = base_samples.max(8);
    let mut evaluations = 0usize;
    let mut total = 0.0;
    let mut prev_phi = 0.0;
    let mut prev_arg = arg(0.0)?;
    for k in 1..=n {
        let phi = TAU * k as f64 / n as f64;
        let a = arg(phi)?;
        total += segment(&arg, prev_phi, prev_arg, phi, a, 0, &mut evaluations)?;
        evaluations += 1;
        prev_phi = phi;
        prev_arg = a;
    }
    let raw = total / TAU;
    let winding = raw.round();
    let residual = (raw - winding).abs();
    if residual >= MAX_RESIDUAL {
        return Err(Error::RefinementExhausted(format!(
            "winding residual {residual:.3} revolutions"
        )));
    }
    Ok(Winding {
        winding: winding as i64,
        raw,
        residual,
        evaluations,
    })
}

fn segment<A: Fn(f64) -> Result<f64>>(
    arg: &A,
    pa: f64,
    aa: f64,
    pb: f64,
    ab: f64,
    depth: u32,
    evaluations: &mut usize,
) -> Result<f64> {
    let d = wrap(ab - aa);
    if d.abs() < PI / 2.0 {
        return Ok(d);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::RefinementExhausted(format!(
            "argument jump {d:.3} near phi = {pa}"
        )));
    }
    let pm = 0.5 * (pa + pb);
    let am = arg(pm)?;
    *evaluations += 1;
    Ok(segment(arg, pa, aa, pm, am, depth + 1, evaluations)?
        + segment(arg, pm, am, pb, ab, depth + 1, evaluations)?)
}

fn base_samples(degree: usize) -> usize {
    (16 * degree).max(64)
}

/// Revolutions of `(f_xx - f_yy, 2 f_xy)` along the unit circle.
pub fn winding_gamma(f: &BinaryForm) -> Result<Winding> {
    let ev = CurveEvaluator::new(f)?;
    adaptive_winding(|phi| Ok(ev.gamma_plane(phi)), base_samples(f.degree()))
}

/// Revolutions of the projected curve `(F, F', F'')`.
pub fn winding_alpha(f: &BinaryForm) -> Result<Winding> {
    let ev = CurveEvaluator::new(f)?;
    adaptive_winding(|phi| ev.alpha_plane(phi), base_samples(f.degree()))
}

pub fn winding_gamma_numeric(f: &BinaryForm) -> Result<i64> {
    Ok(winding_gamma(f)?.winding)
}

pub fn winding_alpha_numeric(f: &BinaryForm) -> Result<i64> {
    Ok(winding_alpha(f)?.winding)
}

/// Samples both curves on a uniform grid of `n` angles.
pub fn sample_curves(f: &BinaryForm, n: usize) -> Result<Vec<CurveSample>> {
    let ev = CurveEvaluator::new(f)?;
    Ok((0..n)
        .map(|k| ev.sample(TAU * k as f64 / n as f64))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_form;

    fn f(s: &str) -> BinaryForm {
        parse_form(s).unwrap()
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(winding_gamma_numeric(&f("x*y")).unwrap(), 0);
        assert_eq!(winding_gamma_numeric(&f("x^3 - x*y^2")).unwrap(), -1);
        assert_eq!(
            winding_gamma_numeric(&f("(x^2+y^2)*(x^3-3*x*y^2)")).unwrap(),
            -1
        );
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(winding_alpha_numeric(&f("x^3 - x*y^2")).unwrap(), -3);
        assert_eq!(winding_alpha_numeric(&f("x*y")).unwrap(), -2);
        let p9 = f("x*(x^2-y^2)*(x^2-4*y^2)*(x^2-9*y^2)*(x^2-16*y^2)");
        assert_eq!(winding_alpha_numeric(&p9).unwrap(), -9);
    }

    #[test]
    fn alpha_rejects_non_hyperbolic() {
        assert!(matches!(
            winding_alpha(&f("x^2+y^2")),
            Err(Error::ConeViolation { .. })
        ));
    }

    #[test]
    fn unit_circle_winds_once() {
        let w = adaptive_winding(|t| Ok((t.cos(), t.sin())), 8).unwrap();
        assert_eq!(w.winding, 1);
        assert!(w.residual < 1e-12);
        // each base step turns 7pi/8, so every step is bisected once
        let w = adaptive_winding(|t| Ok(((7.0 * t).cos(), -(7.0 * t).sin())), 16).unwrap();
        assert_eq!(w.winding, -7);
        assert_eq!(w.evaluations, 32);
    }

    #[test]
    fn samples_sit_in_hyperbolic_cones() {
        let g = f("x*(x^4+y^4)*(x^2-y^2)*(x^2-4*y^2)");
        let d = g.degree() as f64;
        for s in sample_curves(&g, 97).unwrap() {
            let (a, b, c) = s.gamma;
            assert!(a * c - b * b < 0.0);
            let (u, v, w) = s.alpha;
            assert!(d * d * u * u + d * u * w - (d - 1.0) * v * v < 0.0);
        }
    }
}
