//! Asymptotic directions of hyperbolic forms.
//!
//! At a point `p != 0` the second fundamental form
//! `II_f = f_xx dx^2 + 2 f_xy dx dy + f_yy dy^2` of a hyperbolic `f` has two
//! real null directions. Writing `II_f` along angle `theta` as
//! `(a+c)/2 + R cos(2 theta - psi)` with `psi = atan2(b, (a-c)/2)` and
//! `alpha = acos(-(a+c)/(2R))` in `(0, pi)`, the two fields are
//!
//! * `F1 = (psi - alpha)/2 mod pi`
//! * `F2 = (psi + alpha)/2 mod pi`
//!
//! Both are well defined modulo `pi` and continuous wherever the discriminant
//! is positive, so the labels are global on the punctured plane. Scaling
//! `II_f` by a positive factor keeps the labels; a negative factor swaps
//! them, which happens between `p` and `-p` exactly when `D` is odd.

mod curves;
mod omega;

pub use curves::{
    integrate_curve, integrate_curve_with, render_curves, zero_line_angles, CurveOptions,
    CurvePolyline, CurveSet, RenderOptions, StopReason,
};
pub use omega::{
    check_isotopies, discriminant_omega, t_identity, IsotopyCheck, IsotopyKind, OmegaDiscriminant,
    QuadDiff,
};

use std::f64::consts::PI;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::certify::is_hyperbolic;
use crate::error::{Error, Result};
use crate::forms::{eval_f64_coeffs, BinaryForm};
use crate::rat::{self, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadFormAt {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub at: (f64, f64),
}

impl QuadFormAt {
    /// `b^2 - a c`
    pub fn discriminant(&self) -> f64 {
        self.b * self.b - self.a * self.c
    }

    pub fn eval(&self, u: f64, v: f64) -> f64 {
        self.a * u * u + 2.0 * self.b * u * v + self.c * v * v
    }

    /// `|II(u, v)| / |II|` for a unit vector `(u, v)`.
    pub fn residual(&self, u: f64, v: f64) -> f64 {
        let norm = (self.a * self.a + 4.0 * self.b * self.b + self.c * self.c).sqrt();
        self.eval(u, v).abs() / norm
    }
}

/// Exact partials evaluated exactly at the (exactly representable) point,
/// then rounded.
pub fn second_fundamental_form(f: &BinaryForm, x: f64, y: f64) -> Result<QuadFormAt> {
    if x == 0.0 && y == 0.0 {
        return Err(Error::AtOrigin);
    }
    let (Some(xr), Some(yr)) = (Rat::from_float(x), Rat::from_float(y)) else {
        return Err(Error::InvalidParameters(format!(
            "non-finite point ({x}, {y})"
        )));
    };
    let fx = f.partial_x()?;
    let fy = f.partial_y()?;
    let at = |g: &BinaryForm| rat::to_f64(&g.eval(&xr, &yr));
    Ok(QuadFormAt {
        a: at(&fx.partial_x()?),
        b: at(&fx.partial_y()?),
        c: at(&fy.partial_y()?),
        at: (x, y),
    })
}

/// Float evaluation of the exact second partials, for integration.
#[derive(Debug, Clone)]
pub struct SecondFormEvaluator {
    degree: usize,
    fxx: Vec<f64>,
    fxy: Vec<f64>,
    fyy: Vec<f64>,
}

impl SecondFormEvaluator {
    pub fn new(f: &BinaryForm) -> Result<Self> {
        if f.degree() < 2 {
            return Err(Error::DegreeTooLow {
                op: "second fundamental form",
                min: 2,
                got: f.degree(),
            });
        }
        let fx = f.partial_x()?;
        let fy = f.partial_y()?;
        Ok(SecondFormEvaluator {
            degree: f.degree(),
            fxx: fx.partial_x()?.to_f64_coeffs(),
            fxy: fx.partial_y()?.to_f64_coeffs(),
            fyy: fy.partial_y()?.to_f64_coeffs(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn at(&self, x: f64, y: f64) -> QuadFormAt {
        QuadFormAt {
            a: eval_f64_coeffs(&self.fxx, x, y),
            b: eval_f64_coeffs(&self.fxy, x, y),
            c: eval_f64_coeffs(&self.fyy, x, y),
            at: (x, y),
        }
    }

    pub fn directions(&self, x: f64, y: f64) -> Result<Directions> {
        asymptotic_directions(&self.at(x, y))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Field {
    F1,
    F2,
}

impl Field {
    pub fn other(self) -> Field {
        match self {
            Field::F1 => Field::F2,
            Field::F2 => Field::F1,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::F1 => "F1",
            Field::F2 => "F2",
        })
    }
}

/// The two null directions of a quadratic form, as angles in `[0, pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Directions {
    pub f1: f64,
    pub f2: f64,
}

impl Directions {
    pub fn get(&self, field: Field) -> f64 {
        match field {
            Field::F1 => self.f1,
            Field::F2 => self.f2,
        }
    }

    /// Both angles in increasing order.
    pub fn sorted(&self) -> [f64; 2] {
        if self.f1 <= self.f2 {
            [self.f1, self.f2]
        } else {
            [self.f2, self.f1]
        }
    }
}

fn mod_pi(t: f64) -> f64 {
    let r = t.rem_euclid(PI);
    // rem_euclid can round up to exactly pi
    if r >= PI {
        0.0
    } else {
        r
    }
}

/// Signed difference of two line directions, in `(-pi/2, pi/2]`.
pub fn line_delta(from: f64, to: f64) -> f64 {
    let d = (to - from).rem_euclid(PI);
    if d > PI / 2.0 {
        d - PI
    } else {
        d
    }
}

pub fn asymptotic_directions(q: &QuadFormAt) -> Result<Directions> {
    let disc = q.discriminant();
    if disc.is_nan() || disc <= 0.0 {
        return Err(Error::NonPositiveDiscriminant(disc));
    }
    let h = 0.5 * (q.a - q.c);
    let r = h.hypot(q.b);
    let psi = q.b.atan2(h);
    let alpha = (-(q.a + q.c) / (2.0 * r)).clamp(-1.0, 1.0).acos();
    Ok(Directions {
        f1: mod_pi(0.5 * (psi - alpha)),
        f2: mod_pi(0.5 * (psi + alpha)),
    })
}

/// A value in `(1/2) Z`, stored as twice itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInteger {
    twice: i64,
}

impl HalfInteger {
    pub fn from_twice(twice: i64) -> Self {
        HalfInteger { twice }
    }

    /// `k / 2`
    pub fn halve(k: i64) -> Self {
        Self::from_twice(k)
    }

    pub fn twice(self) -> i64 {
        self.twice
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl Serialize for HalfInteger {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

const MAX_DEPTH: u32 = 24;

/// Total turning of one field's direction along the unit circle.
fn field_turning(ev: &SecondFormEvaluator, field: Field) -> Result<f64> {
    let dir = |phi: f64| -> Result<f64> {
        let (s, c) = phi.sin_cos();
        Ok(ev.directions(c, s)?.get(field))
    };
    fn seg<D: Fn(f64) -> Result<f64>>(
        dir: &D,
        pa: f64,
        ta: f64,
        pb: f64,
        tb: f64,
        depth: u32,
    ) -> Result<f64> {
        let d = line_delta(ta, tb);
        if d.abs() < PI / 4.0 {
            return Ok(d);
        }
        if depth >= MAX_DEPTH {
            return Err(Error::RefinementExhausted(format!(
                "direction jump {d:.3} near phi = {pa}"
            )));
        }
        let pm = 0.5 * (pa + pb);
        let tm = dir(pm)?;
        Ok(seg(dir, pa, ta, pm, tm, depth + 1)? + seg(dir, pm, tm, pb, tb, depth + 1)?)
    }
    let n = (16 * ev.degree()).max(64);
    let mut total = 0.0;
    let mut prev = (0.0, dir(0.0)?);
    for k in 1..=n {
        let phi = 2.0 * PI * k as f64 / n as f64;
        let t = dir(phi)?;
        total += seg(&dir, prev.0, prev.1, phi, t, 0)?;
        prev = (phi, t);
    }
    Ok(total)
}

/// Poincaré index at the origin of the asymptotic line fields: the turning
/// of a field direction once around the origin, in revolutions.
pub fn poincare_index_origin(f: &BinaryForm) -> Result<HalfInteger> {
    if !is_hyperbolic(f)?.is_hyperbolic() {
        return Err(Error::NotHyperbolic);
    }
    let ev = SecondFormEvaluator::new(f)?;
    let mut halves = [0i64; 2];
    for (slot, field) in halves.iter_mut().zip([Field::F1, Field::F2]) {
        let turns = field_turning(&ev, field)? / PI;
        let k = turns.round();
        // the line must come back to itself
        if (turns - k).abs() > 1e-6 {
            return Err(Error::RefinementExhausted(format!(
                "{field} does not close up: {turns} half-turns"
            )));
        }
        *slot = k as i64;
    }
    if halves[0] != halves[1] {
        return Err(Error::Internal(format!(
            "fields disagree on the index: {} vs {}",
            HalfInteger::from_twice(halves[0]),
            HalfInteger::from_twice(halves[1])
        )));
    }
    Ok(HalfInteger::from_twice(halves[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_form;

    fn f(s: &str) -> BinaryForm {
        parse_form(s).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn sff_examples() {
        let q = second_fundamental_form(&f("x*y"), 1.0, 0.0).unwrap();
        assert_eq!((q.a, q.b, q.c), (0.0, 1.0, 0.0));
        let q = second_fundamental_form(&f("x^3 - x*y^2"), 1.0, 0.0).unwrap();
        assert_eq!((q.a, q.b, q.c), (6.0, 0.0, -2.0));
        let q = second_fundamental_form(&f("x^2 + y^2"), 0.3, -0.7).unwrap();
        assert_eq!((q.a, q.b, q.c, q.discriminant()), (2.0, 0.0, 2.0, -4.0));
        assert_eq!(
            second_fundamental_form(&f("x*y"), 0.0, 0.0),
            Err(Error::AtOrigin)
        );
    }

    #[test]
    fn float_evaluator_agrees_with_exact() {
        let g = f("x*(x^6+y^6)*(x^2-y^2)");
        let ev = SecondFormEvaluator::new(&g).unwrap();
        let (x, y) = (0.625, -1.375);
        let exact = second_fundamental_form(&g, x, y).unwrap();
        let fl = ev.at(x, y);
        for (p, q) in [(exact.a, fl.a), (exact.b, fl.b), (exact.c, fl.c)] {
            assert!((p - q).abs() <= 1e-12 * p.abs().max(1.0));
        }
    }

    #[test]
    fn direction_examples() {
        let at = (1.0, 0.0);
        let d = asymptotic_directions(&QuadFormAt {
            a: 0.0,
            b: 1.0,
            c: 0.0,
            at,
        })
        .unwrap();
        let [lo, hi] = d.sorted();
        assert!(close(lo, 0.0) && close(hi, PI / 2.0));
        let d = asymptotic_directions(&QuadFormAt {
            a: 6.0,
            b: 0.0,
            c: -2.0,
            at,
        })
        .unwrap();
        let [lo, hi] = d.sorted();
        assert!(close(lo.tan(), 3f64.sqrt()) && close(hi.tan(), -(3f64.sqrt())));
        assert!(matches!(
            asymptotic_directions(&QuadFormAt {
                a: 2.0,
                b: 0.0,
                c: 2.0,
                at
            }),
            Err(Error::NonPositiveDiscriminant(_))
        ));
    }

    #[test]
    fn directions_are_null_and_scale_stable() {
        let q = QuadFormAt {
            a: 3.0,
            b: -1.25,
            c: -0.5,
            at: (1.0, 1.0),
        };
        let d = asymptotic_directions(&q).unwrap();
        for t in [d.f1, d.f2] {
            assert!(q.residual(t.cos(), t.sin()) < 1e-15);
        }
        let pos = QuadFormAt {
            a: 7.5,
            b: -3.125,
            c: -1.25,
            ..q
        };
        let dp = asymptotic_directions(&pos).unwrap();
        assert!(line_delta(dp.f1, d.f1).abs() < 1e-15 && line_delta(dp.f2, d.f2).abs() < 1e-15);
        let neg = QuadFormAt {
            a: -3.0,
            b: 1.25,
            c: 0.5,
            ..q
        };
        let dn = asymptotic_directions(&neg).unwrap();
        assert!(line_delta(dn.f1, d.f2).abs() < 1e-15 && line_delta(dn.f2, d.f1).abs() < 1e-15);
    }

    #[test]
    fn half_integer_display() {
        assert_eq!(HalfInteger::from_twice(-1).to_string(), "-1/2");
        assert_eq!(HalfInteger::from_twice(-7).to_string(), "-7/2");
        assert_eq!(HalfInteger::from_twice(-4).to_string(), "-2");
        assert_eq!(HalfInteger::from_twice(0).to_string(), "0");
    }

    #[test]
    fn poincare_examples() {
        assert_eq!(
            poincare_index_origin(&f("x^3 - x*y^2")).unwrap(),
            HalfInteger::from_twice(-1)
        );
        assert_eq!(
            poincare_index_origin(&f("(x^2-y^2)*(x^4+y^4)")).unwrap(),
            HalfInteger::from_twice(0)
        );
        let p9 = f("x*(x^2-y^2)*(x^2-4*y^2)*(x^2-9*y^2)*(x^2-16*y^2)");
        assert_eq!(
            poincare_index_origin(&p9).unwrap(),
            HalfInteger::from_twice(-7)
        );
        assert_eq!(
            poincare_index_origin(&f("x^2+y^2")),
            Err(Error::NotHyperbolic)
        );
    }
}
