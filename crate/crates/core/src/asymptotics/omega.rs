//! Quadratic differential forms built from `II_{PQ} = P II_Q + 2 dP dQ + Q II_P`
//! and the isotopies connecting `II_{PQ}` to `II_P`.
//!
//! Here `P` is a product of distinct real lines and `Q = x^{2n} + y^{2n}`.
//! With `omega = 2 dP dQ + Q II_P` the exact discriminant is
//! `-Q^2 Hess P + (P_x Q_y - P_y Q_x)^2 - 2 Q T`, where
//! `T = P_xx P_y Q_y + P_yy P_x Q_x - P_xy (P_x Q_y + P_y Q_x)`.
//! Euler's relation for `P_x`, `P_y` and `Q` gives
//! `T = 2n / (deg P - 1) * Q Hess P` for every homogeneous `P` of degree at
//! least 2.

use num_traits::Zero;
use serde::Serialize;

use crate::certify::{hessian, is_negative_form};
use crate::error::{Error, Result};
use crate::families::q_form;
use crate::forms::BinaryForm;
use crate::index::count_real_linear_factors;
use crate::rat::{self, int, Rat};

/// `a dx^2 + 2 b dx dy + c dy^2` with form coefficients of equal degree.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadDiff {
    pub a: BinaryForm,
    pub b: BinaryForm,
    pub c: BinaryForm,
}

impl QuadDiff {
    pub fn second_fundamental(f: &BinaryForm) -> Result<Self> {
        let fx = f.partial_x()?;
        let fy = f.partial_y()?;
        Ok(QuadDiff {
            a: fx.partial_x()?,
            b: fx.partial_y()?,
            c: fy.partial_y()?,
        })
    }

    /// `dP dQ`, symmetrized.
    pub fn product_of_differentials(p: &BinaryForm, q: &BinaryForm) -> Result<Self> {
        let (px, py, qx, qy) = (
            p.partial_x()?,
            p.partial_y()?,
            q.partial_x()?,
            q.partial_y()?,
        );
        let half = rat::frac(1, 2);
        Ok(QuadDiff {
            a: px.mul(&qx),
            b: px.mul(&qy).add(&py.mul(&qx))?.scale(&half),
            c: py.mul(&qy),
        })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        Ok(QuadDiff {
            a: self.a.add(&o.a)?,
            b: self.b.add(&o.b)?,
            c: self.c.add(&o.c)?,
        })
    }

    pub fn scale(&self, s: &Rat) -> Self {
        QuadDiff {
            a: self.a.scale(s),
            b: self.b.scale(s),
            c: self.c.scale(s),
        }
    }

    pub fn times_form(&self, g: &BinaryForm) -> Self {
        QuadDiff {
            a: g.mul(&self.a),
            b: g.mul(&self.b),
            c: g.mul(&self.c),
        }
    }

    /// `b^2 - a c`
    pub fn discriminant(&self) -> Result<BinaryForm> {
        self.b.mul(&self.b).sub(&self.a.mul(&self.c))
    }
}

/// `(T, 2n/(p-1) Q Hess P)` for any `P` of degree `p >= 2` and `Q` of even
/// degree `2n >= 2`.
pub fn t_identity(p: &BinaryForm, q: &BinaryForm) -> Result<(BinaryForm, BinaryForm)> {
    if p.degree() < 2 {
        return Err(Error::DegreeTooLow {
            op: "t_identity",
            min: 2,
            got: p.degree(),
        });
    }
    if q.degree() < 2 || q.degree() % 2 == 1 {
        return Err(Error::InvalidParameters(format!(
            "Q needs even degree >= 2, got {}",
            q.degree()
        )));
    }
    let (px, py, qx, qy) = (
        p.partial_x()?,
        p.partial_y()?,
        q.partial_x()?,
        q.partial_y()?,
    );
    let (pxx, pxy, pyy) = (px.partial_x()?, px.partial_y()?, py.partial_y()?);
    let t = pxx
        .mul(&py)
        .mul(&qy)
        .add(&pyy.mul(&px).mul(&qx))?
        .sub(&pxy.mul(&px.mul(&qy).add(&py.mul(&qx))?))?;
    let k = rat::frac(q.degree() as i64, p.degree() as i64 - 1);
    let rhs = q.mul(&hessian(p)?).scale(&k);
    Ok((t, rhs))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OmegaDiscriminant {
    /// Exact `b^2 - a c` of `omega`.
    pub delta: BinaryForm,
    pub n: usize,
    pub degree: usize,
    /// The verified constant `2n / (D - 2n - 1)` in the `T` identity.
    pub t_constant: String,
    /// `delta > 0` off the origin, certified exactly.
    pub positive: bool,
}

fn validate(p: &BinaryForm, q: &BinaryForm) -> Result<usize> {
    if q.degree() < 2 || q.degree() % 2 == 1 || *q != q_form(q.degree() / 2) {
        return Err(Error::InvalidParameters(format!(
            "Q must be x^(2n) + y^(2n), got {q}"
        )));
    }
    if p.degree() < 2 {
        return Err(Error::InvalidParameters(format!(
            "P needs degree >= 2 so that D - 2n - 1 >= 1, got {}",
            p.degree()
        )));
    }
    if p.is_zero() || count_real_linear_factors(p)? != p.degree() {
        return Err(Error::InvalidParameters(format!(
            "P must be a product of distinct real lines, got {p}"
        )));
    }
    Ok(q.degree() / 2)
}

fn omega(p: &BinaryForm, q: &BinaryForm) -> Result<QuadDiff> {
    QuadDiff::product_of_differentials(p, q)?
        .scale(&int(2))
        .add(&QuadDiff::second_fundamental(p)?.times_form(q))
}

/// Discriminant of `omega = 2 dP dQ + Q II_P`, cross-checked against the
/// closed form after verifying the `T` identity.
pub fn discriminant_omega(p: &BinaryForm, q: &BinaryForm) -> Result<OmegaDiscriminant> {
    let n = validate(p, q)?;
    let (t, rhs) = t_identity(p, q)?;
    if t != rhs {
        return Err(Error::IdentityFailure(format!(
            "T != 2n/(D-2n-1) Q Hess P for P = {p}"
        )));
    }
    let delta = omega(p, q)?.discriminant()?;
    let (px, py, qx, qy) = (
        p.partial_x()?,
        p.partial_y()?,
        q.partial_x()?,
        q.partial_y()?,
    );
    let cross = px.mul(&qy).sub(&py.mul(&qx))?;
    let closed = q
        .mul(q)
        .mul(&hessian(p)?)
        .neg()
        .add(&cross.mul(&cross))?
        .sub(&q.mul(&t).scale(&int(2)))?;
    if closed != delta {
        return Err(Error::IdentityFailure(
            "discriminant of omega differs from its closed form".into(),
        ));
    }
    let positive = !delta.is_zero() && is_negative_form(&delta.neg())?.is_negative();
    let k = rat::frac(2 * n as i64, p.degree() as i64 - 1);
    Ok(OmegaDiscriminant {
        delta,
        n,
        degree: p.degree() + q.degree(),
        t_constant: rat::to_exact_string(&k),
        positive,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsotopyKind {
    /// `omega + t P II_Q`
    Phi,
    /// `Q II_P + 2 t dP dQ`
    Psi,
    /// `t II_P + (1 - t) Q II_P`
    GammaT,
}

impl IsotopyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            IsotopyKind::Phi => "phi",
            IsotopyKind::Psi => "psi",
            IsotopyKind::GammaT => "gamma_t",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotopyCheck {
    pub kind: IsotopyKind,
    pub t_grid: Vec<String>,
    pub verdict: bool,
}

fn positive_off_origin(disc: &BinaryForm) -> Result<bool> {
    Ok(!disc.is_zero() && is_negative_form(&disc.neg())?.is_negative())
}

/// Certifies every isotopy at every grid value. The first failure is an
/// error naming the family and `t`.
///
/// `Phi_t` and `Psi_t` have homogeneous coefficients, so their discriminants
/// are certified as forms. `Gamma_t = (t + (1 - t) Q) II_P` is not
/// homogeneous; its discriminant `(t + (1 - t) Q)^2 (-Hess P)` is positive
/// off the origin for `t` in `[0, 1]` iff `Q` is positive definite and
/// `Hess P` is negative definite (at `t = 1` only the latter matters).
pub fn check_isotopies(
    p: &BinaryForm,
    q: &BinaryForm,
    t_grid: &[Rat],
) -> Result<Vec<IsotopyCheck>> {
    validate(p, q)?;
    let (zero, one) = (Rat::zero(), int(1));
    if let Some(t) = t_grid.iter().find(|t| **t < zero || **t > one) {
        return Err(Error::InvalidParameters(format!(
            "t = {t} lies outside [0, 1]"
        )));
    }
    let om = omega(p, q)?;
    let ii_p = QuadDiff::second_fundamental(p)?;
    let p_ii_q = QuadDiff::second_fundamental(q)?.times_form(p);
    let q_ii_p = ii_p.times_form(q);
    let two_dpdq = QuadDiff::product_of_differentials(p, q)?.scale(&int(2));
    let hess_negative = is_negative_form(&hessian(p)?)?.is_negative();
    let q_positive = is_negative_form(&q.neg())?.is_negative();

    let fail = |kind: IsotopyKind, t: &Rat| Error::IsotopyFailure {
        kind: kind.as_str().to_string(),
        t: rat::to_exact_string(t),
    };
    let grid: Vec<String> = t_grid.iter().map(rat::to_exact_string).collect();
    let mut out = Vec::new();
    for kind in [IsotopyKind::Phi, IsotopyKind::Psi, IsotopyKind::GammaT] {
        for t in t_grid {
            let ok = match kind {
                IsotopyKind::Phi => {
                    positive_off_origin(&om.add(&p_ii_q.scale(t))?.discriminant()?)?
                }
                IsotopyKind::Psi => {
                    positive_off_origin(&q_ii_p.add(&two_dpdq.scale(t))?.discriminant()?)?
                }
                IsotopyKind::GammaT => hess_negative && (q_positive || *t == one),
            };
            if !ok {
                return Err(fail(kind, t));
            }
        }
        out.push(IsotopyCheck {
            kind,
            t_grid: grid.clone(),
            verdict: true,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_form;
    use crate::rat::frac;

    fn f(s: &str) -> BinaryForm {
        parse_form(s).unwrap()
    }

    fn grid() -> Vec<Rat> {
        vec![int(0), frac(1, 4), frac(1, 2), frac(3, 4), int(1)]
    }

    #[test]
    fn omega_positive_examples() {
        let d = discriminant_omega(&f("x*(x^2-y^2)"), &f("x^2+y^2")).unwrap();
        assert!(d.positive);
        assert_eq!((d.n, d.degree, d.t_constant.as_str()), (1, 5, "1/1"));
        let d = discriminant_omega(&f("x*(x^2-y^2)*(x^2-4*y^2)"), &f("x^4+y^4")).unwrap();
        assert!(d.positive);
        assert_eq!(d.t_constant, "1/1");
        let d = discriminant_omega(&f("x*y"), &f("x^6+y^6")).unwrap();
        assert_eq!(d.t_constant, "6/1");
    }

    #[test]
    fn omega_is_the_pq_form_minus_p_ii_q() {
        let (p, q) = (f("x*(x^2-y^2)"), f("x^4+y^4"));
        let full = QuadDiff::second_fundamental(&p.mul(&q)).unwrap();
        let rebuilt = omega(&p, &q)
            .unwrap()
            .add(&QuadDiff::second_fundamental(&q).unwrap().times_form(&p))
            .unwrap();
        assert_eq!(full, rebuilt);
    }

    #[test]
    fn repeated_factor_is_a_precondition_error() {
        let p = f("x^2*(x^2-y^2)");
        let q = f("x^2+y^2");
        assert!(matches!(
            discriminant_omega(&p, &q),
            Err(Error::InvalidParameters(_))
        ));
        // the T identity itself does not depend on the factor structure
        let (t, rhs) = t_identity(&p, &q).unwrap();
        assert_eq!(t, rhs);
        let (t, rhs) = t_identity(&f("x^3 + 2*x*y^2 - 5*y^3"), &f("3*x^2 + x*y + y^2")).unwrap();
        assert_eq!(t, rhs);
    }

    #[test]
    fn bad_q_rejected() {
        assert!(discriminant_omega(&f("x*(x^2-y^2)"), &f("x^2+2*y^2")).is_err());
        assert!(discriminant_omega(&f("x"), &f("x^2+y^2")).is_err());
    }

    #[test]
    fn isotopies_small_example() {
        let checks = check_isotopies(&f("x*(x^2-y^2)"), &f("x^4+y^4"), &grid()).unwrap();
        assert_eq!(checks.len(), 3);
        assert!(checks.iter().all(|c| c.verdict));
        assert!(check_isotopies(&f("x*(x^2-y^2)"), &f("x^4+y^4"), &[frac(3, 2)]).is_err());
    }

    #[test]
    fn phi_ends_at_the_product_form() {
        // Phi_1 = II_{PQ}; x (x^2 + y^2)(x^2 - y^2) is not hyperbolic
        let (p, q) = (f("x*(x^2-y^2)"), f("x^2+y^2"));
        assert!(check_isotopies(&p, &q, &grid()[..4]).is_ok());
        assert_eq!(
            check_isotopies(&p, &q, &grid()),
            Err(Error::IsotopyFailure {
                kind: "phi".into(),
                t: "1/1".into()
            })
        );
    }

    #[test]
    fn gamma_endpoints() {
        let p = f("x*(x^2-y^2)");
        let q = f("x^2+y^2");
        // t = 0: Q II_P; its discriminant is Q^2 (-Hess P)
        let d0 = QuadDiff::second_fundamental(&p)
            .unwrap()
            .times_form(&q)
            .discriminant()
            .unwrap();
        assert_eq!(d0, q.mul(&q).mul(&hessian(&p).unwrap()).neg());
        assert!(positive_off_origin(&d0).unwrap());
        // t = 1: II_P; positive discriminant iff P is hyperbolic
        let d1 = QuadDiff::second_fundamental(&p)
            .unwrap()
            .discriminant()
            .unwrap();
        assert_eq!(d1, hessian(&p).unwrap().neg());
    }
}
