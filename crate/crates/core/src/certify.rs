//! Exact hyperbolicity certification.
//!
//! Two independent routes decide whether `f` is hyperbolic:
//!
//! * **Hessian**: `Hess f = f_xx f_yy - f_xy^2` is negative off the origin.
//! * **Polar**: along the unit circle, with `F(phi) = f(cos phi, sin phi)`,
//!   `D^2 F^2 + D F F'' - (D-1) F'^2 < 0`. Using the rotational derivative
//!   `R(f) = x f_y - y f_x` this is the degree-`2D` form
//!   `D^2 f^2 + D f R(R(f)) - (D-1) R(f)^2`, negative off the origin.
//!
//! Both reduce to [`is_negative_form`], which needs one Sturm count in the
//! `x = 1` chart plus one evaluation at `(0, 1)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::forms::{BinaryForm, Chart, LinearForm};
use crate::rat::{self, Rat};
use crate::sturm::{Isolated, RootInterval, SturmChain};
use crate::unipoly::UniPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Hyperbolic,
    NotHyperbolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Hessian,
    Polar,
}

/// A point `(x, y)` with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness(pub Rat, pub Rat);

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [rat::to_exact_string(&self.0), rat::to_exact_string(&self.1)].serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub method: Method,
    /// Where the certified form (Hessian or polar) is `>= 0`, when a rational
    /// such point exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub degree: usize,
}

impl Certificate {
    pub fn is_hyperbolic(&self) -> bool {
        self.verdict == Verdict::Hyperbolic
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}

/// Outcome of a negativity test on a form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Negativity {
    Negative,
    /// Not negative definite; carries a rational point where the form is
    /// `>= 0` if one was found.
    NotNegative(Option<Witness>),
}

impl Negativity {
    pub fn is_negative(&self) -> bool {
        matches!(self, Negativity::Negative)
    }
}

/// Decides `h(x, y) < 0` for every `(x, y) != (0, 0)`.
pub fn is_negative_form(h: &BinaryForm) -> Result<Negativity> {
    if h.is_zero() {
        return Err(Error::ZeroForm {
            op: "is_negative_form",
        });
    }
    if h.degree() % 2 == 1 {
        return Err(Error::OddDegree(h.degree()));
    }
    let (zero, one) = (Rat::zero(), Rat::one());
    if !h.eval(&zero, &one).is_negative() {
        return Ok(Negativity::NotNegative(Some(Witness(zero, one))));
    }
    if !h.eval(&one, &zero).is_negative() {
        return Ok(Negativity::NotNegative(Some(Witness(one, zero))));
    }
    // h(1, t) has even degree, negative leading and constant coefficients
    let u = h.restrict(Chart::XEqualsOne);
    let chain = SturmChain::new(&u)?;
    if chain.count(&RootInterval::WholeLine) == 0 {
        return Ok(Negativity::Negative);
    }
    Ok(Negativity::NotNegative(
        nonnegative_point(&u, &chain).map(|t| Witness(Rat::one(), t)),
    ))
}

/// A rational `t` with `u(t) >= 0`, given that `u` has real roots.
fn nonnegative_point(u: &UniPoly, chain: &SturmChain) -> Option<Rat> {
    let roots = chain.isolate_all();
    // sign-changing roots leave a positive gap between isolating intervals
    for pair in roots.windows(2) {
        let t = (&pair[0].hi + &pair[1].lo) / rat::int(2);
        let t = if pair[0].hi == pair[1].lo {
            pair[0].hi.clone()
        } else {
            t
        };
        if !u.eval(&t).is_negative() {
            return Some(t);
        }
    }
    for iv in &roots {
        if let Some(t) = rational_root(u, chain, iv) {
            return Some(t);
        }
        // any sample inside the isolating interval may already work
        if !u.eval(&iv.hi).is_negative() {
            return Some(iv.hi.clone());
        }
    }
    None
}

/// The root inside `iv` if it is rational.
///
/// A rational root `p/q` of the primitive squarefree part has `q` dividing
/// the leading coefficient `L`. Distinct such fractions are at least `1/L^2`
/// apart, so after refining below that width the simplest rational in the
/// interval is the only candidate.
fn rational_root(u: &UniPoly, chain: &SturmChain, iv: &Isolated) -> Option<Rat> {
    if iv.is_exact() {
        return Some(iv.lo.clone());
    }
    let lead = chain.base().leading()?.abs().to_integer();
    let width = Rat::new(BigInt::one(), &lead * &lead + BigInt::one());
    let iv = chain.refine(iv, &width);
    if iv.is_exact() {
        return Some(iv.lo);
    }
    let cand = rat::simplest_between(&iv.lo, &iv.hi);
    u.eval(&cand).is_zero().then_some(cand)
}

/// `f_xx f_yy - f_xy^2`, a form of degree `2D - 4`.
pub fn hessian(f: &BinaryForm) -> Result<BinaryForm> {
    if f.degree() < 2 {
        return Err(Error::DegreeTooLow {
            op: "hessian",
            min: 2,
            got: f.degree(),
        });
    }
    let fx = f.partial_x()?;
    let fy = f.partial_y()?;
    let fxx = fx.partial_x()?;
    let fxy = fx.partial_y()?;
    let fyy = fy.partial_y()?;
    fxx.mul(&fyy).sub(&fxy.mul(&fxy))
}

fn require_certifiable(f: &BinaryForm) -> Result<()> {
    if f.degree() < 2 {
        return Err(Error::DegreeTooLow {
            op: "is_hyperbolic",
            min: 2,
            got: f.degree(),
        });
    }
    if f.is_zero() {
        return Err(Error::ZeroForm {
            op: "is_hyperbolic",
        });
    }
    Ok(())
}

fn certificate(neg: Result<Negativity>, method: Method, degree: usize) -> Result<Certificate> {
    let (verdict, witness) = match neg {
        Ok(Negativity::Negative) => (Verdict::Hyperbolic, None),
        Ok(Negativity::NotNegative(w)) => (Verdict::NotHyperbolic, w),
        // the certified form vanished identically: not negative anywhere
        Err(Error::ZeroForm { .. }) => (
            Verdict::NotHyperbolic,
            Some(Witness(Rat::one(), Rat::zero())),
        ),
        Err(e) => return Err(e),
    };
    Ok(Certificate {
        verdict,
        method,
        witness,
        degree,
    })
}

/// Hessian route.
pub fn is_hyperbolic(f: &BinaryForm) -> Result<Certificate> {
    require_certifiable(f)?;
    let h = hessian(f)?;
    certificate(is_negative_form(&h), Method::Hessian, f.degree())
}

/// `D^2 f^2 + D f R(R(f)) - (D-1) R(f)^2`
pub fn polar_form(f: &BinaryForm) -> Result<BinaryForm> {
    if f.is_zero() {
        return Err(Error::ZeroForm { op: "polar_form" });
    }
    if f.degree() < 1 {
        return Err(Error::DegreeTooLow {
            op: "polar_form",
            min: 1,
            got: 0,
        });
    }
    let d = rat::int(f.degree() as i64);
    let r1 = f.rotational_derivative()?;
    let r2 = r1.rotational_derivative()?;
    let t1 = f.mul(f).scale(&(&d * &d));
    let t2 = f.mul(&r2).scale(&d);
    let t3 = r1.mul(&r1).scale(&(d - Rat::one()));
    t1.add(&t2)?.sub(&t3)
}

/// Polar route; must agree with [`is_hyperbolic`].
pub fn is_hyperbolic_polar(f: &BinaryForm) -> Result<Certificate> {
    require_certifiable(f)?;
    let p = polar_form(f)?;
    certificate(is_negative_form(&p), Method::Polar, f.degree())
}

/// Closed form of `Hess(l f)`:
/// `((D+1)/(D-1)) l^2 Hess f - (a f_y - b f_x)^2` with `D = deg f`.
pub fn hess_linear_product(l: &LinearForm, f: &BinaryForm) -> Result<BinaryForm> {
    let d = f.degree();
    if d < 2 {
        return Err(Error::DegreeTooLow {
            op: "hess_linear_product",
            min: 2,
            got: d,
        });
    }
    let lf = l.to_form();
    let ratio = Rat::new(BigInt::from(d + 1), BigInt::from(d - 1));
    let first = lf.mul(&lf).mul(&hessian(f)?).scale(&ratio);
    let cross = cross_term(l, f)?;
    first.sub(&cross.mul(&cross))
}

/// `a f_y - b f_x` for `l = a x + b y`.
pub fn cross_term(l: &LinearForm, f: &BinaryForm) -> Result<BinaryForm> {
    f.partial_y()?
        .scale(l.a())
        .sub(&f.partial_x()?.scale(l.b()))
}

/// For hyperbolic `f`, whether `l f` is hyperbolic: true iff `l` does not
/// divide `a f_y - b f_x`, i.e. that form is nonzero at `(b, -a)`.
pub fn linear_extension_is_hyperbolic(l: &LinearForm, f: &BinaryForm) -> Result<bool> {
    if !is_hyperbolic(f)?.is_hyperbolic() {
        return Err(Error::NotHyperbolic);
    }
    let c = cross_term(l, f)?;
    Ok(!c.eval(l.b(), &-l.a().clone()).is_zero())
}

/// Decides `p(x) <= 0` (or `< 0` when `strict`) on all of `[0, 1]`.
pub fn is_nonpositive_on_unit_interval(p: &UniPoly, strict: bool) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial {
            op: "is_nonpositive_on_unit_interval",
        });
    }
    let (zero, one) = (Rat::zero(), Rat::one());
    let ok = |v: Rat| {
        if strict {
            v.is_negative()
        } else {
            !v.is_positive()
        }
    };
    if !ok(p.eval(&zero)) || !ok(p.eval(&one)) {
        return Ok(false);
    }
    // p changes sign exactly at its roots of odd multiplicity
    let crossing = p.odd_multiplicity_part();
    let touching = SturmChain::new(p)?;
    if strict && crate::sturm::count_open(&touching, &zero, &one) > 0 {
        return Ok(false);
    }
    let chain = SturmChain::new(&crossing)?;
    if crate::sturm::count_open(&chain, &zero, &one) > 0 {
        return Ok(false);
    }
    // sign on (0, 1) is constant away from the finitely many roots
    let mut k = 2;
    loop {
        let v = p.eval(&rat::frac(1, k));
        if !v.is_zero() {
            return Ok(v.is_negative());
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    fn neg(coeffs: &[i64]) -> Negativity {
        is_negative_form(&BinaryForm::from_ints(coeffs)).unwrap()
    }

    #[test]
    fn negativity_examples() {
        assert!(neg(&[-12, 0, -4]).is_negative());
        assert_eq!(
            neg(&[0, 0, -144, 0, 0]),
            Negativity::NotNegative(Some(Witness(int(0), int(1))))
        );
        assert!(!neg(&[1, 0, 1]).is_negative());
        assert!(neg(&[-1]).is_negative());
        assert!(matches!(
            is_negative_form(&BinaryForm::from_ints(&[1, 0, 0])),
            Ok(Negativity::NotNegative(_))
        ));
        assert_eq!(
            is_negative_form(&BinaryForm::zero(2)),
            Err(Error::ZeroForm {
                op: "is_negative_form"
            })
        );
        assert_eq!(
            is_negative_form(&BinaryForm::from_ints(&[1, 0, 0, 1])),
            Err(Error::OddDegree(3))
        );
    }

    #[test]
    fn witness_at_rational_double_root() {
        // -(x - 2y)^2 (x^2 + y^2): touches zero on the line x = 2y
        let f = BinaryForm::from_ints(&[1, -2])
            .mul(&BinaryForm::from_ints(&[1, -2]))
            .mul(&BinaryForm::from_ints(&[1, 0, 1]))
            .neg();
        match is_negative_form(&f).unwrap() {
            Negativity::NotNegative(Some(Witness(x, y))) => {
                assert!(!f.eval(&x, &y).is_negative());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn irrational_double_root_has_no_witness() {
        // -(x^2 - 2y^2)^2 - 0: zero only on irrational lines
        let q = BinaryForm::from_ints(&[1, 0, -2]);
        let f = q.mul(&q).neg();
        assert_eq!(is_negative_form(&f).unwrap(), Negativity::NotNegative(None));
    }

    #[test]
    fn hessian_examples() {
        assert_eq!(
            hessian(&BinaryForm::from_ints(&[0, 1, 0])).unwrap(),
            BinaryForm::from_ints(&[-1])
        );
        assert_eq!(
            hessian(&BinaryForm::from_ints(&[1, 0, -1, 0])).unwrap(),
            BinaryForm::from_ints(&[-12, 0, -4])
        );
        let g4 = BinaryForm::from_ints(&[1, 0, 0, 0, -1]);
        assert_eq!(
            hessian(&g4).unwrap(),
            BinaryForm::from_ints(&[0, 0, -144, 0, 0])
        );
        assert!(hessian(&BinaryForm::x()).is_err());
    }

    #[test]
    fn hyperbolic_examples() {
        let p3 = BinaryForm::from_ints(&[1, 0, -1, 0]);
        let g4 = BinaryForm::from_ints(&[1, 0, 0, 0, -1]);
        let circle = BinaryForm::from_ints(&[1, 0, 1]);
        let xy = BinaryForm::from_ints(&[0, 1, 0]);
        for (f, expect) in [(&p3, true), (&g4, false), (&circle, false), (&xy, true)] {
            assert_eq!(is_hyperbolic(f).unwrap().is_hyperbolic(), expect, "{f}");
            assert_eq!(
                is_hyperbolic_polar(f).unwrap().is_hyperbolic(),
                expect,
                "{f}"
            );
        }
        let c = is_hyperbolic(&g4).unwrap();
        let Witness(x, y) = c.witness.clone().unwrap();
        assert!(!hessian(&g4).unwrap().eval(&x, &y).is_negative());
        assert_eq!(
            c.to_json(),
            r#"{"verdict":"not_hyperbolic","method":"hessian","witness":["0/1","1/1"],"degree":4}"#
        );
        assert!(matches!(
            is_hyperbolic(&BinaryForm::x()),
            Err(Error::DegreeTooLow { .. })
        ));
        assert!(matches!(
            is_hyperbolic(&BinaryForm::zero(3)),
            Err(Error::ZeroForm { .. })
        ));
    }

    #[test]
    fn polar_examples() {
        let xy = BinaryForm::from_ints(&[0, 1, 0]);
        assert_eq!(
            polar_form(&xy).unwrap(),
            BinaryForm::from_ints(&[-1, 0, -2, 0, -1])
        );
        assert!(polar_form(&BinaryForm::x()).unwrap().is_zero());
        // F constant: 4 F^2 = 4 (x^2 + y^2)^2
        assert_eq!(
            polar_form(&BinaryForm::from_ints(&[1, 0, 1])).unwrap(),
            BinaryForm::from_ints(&[4, 0, 8, 0, 4])
        );
    }

    #[test]
    fn linear_product_examples() {
        let x = LinearForm::from_ints(1, 0).unwrap();
        let y = LinearForm::from_ints(0, 1).unwrap();
        let f = BinaryForm::from_ints(&[1, 0, -1]);
        assert_eq!(
            hess_linear_product(&x, &f).unwrap(),
            BinaryForm::from_ints(&[-12, 0, -4])
        );
        let xy = BinaryForm::from_ints(&[0, 1, 0]);
        // Hess(x y^2) = -4 y^2
        assert_eq!(
            hess_linear_product(&y, &xy).unwrap(),
            BinaryForm::from_ints(&[0, 0, -4])
        );
        assert_eq!(
            hess_linear_product(&y, &xy).unwrap(),
            hessian(&y.to_form().mul(&xy)).unwrap()
        );

        let g6 = BinaryForm::from_ints(&[1, 0, -1, 0, 1, 0, -1]);
        assert!(linear_extension_is_hyperbolic(&x, &g6).unwrap());
        let p3 = BinaryForm::from_ints(&[1, 0, -1, 0]);
        assert!(
            linear_extension_is_hyperbolic(&LinearForm::from_ints(1, -2).unwrap(), &p3).unwrap()
        );
        assert!(!linear_extension_is_hyperbolic(&x, &xy).unwrap());
        assert_eq!(
            linear_extension_is_hyperbolic(&x, &BinaryForm::from_ints(&[1, 0, 1])),
            Err(Error::NotHyperbolic)
        );
    }

    #[test]
    fn unit_interval_examples() {
        assert!(is_nonpositive_on_unit_interval(&UniPoly::from_ints(&[-2, 0, 1]), true).unwrap());
        let p = UniPoly::from_ints(&[-1, 1]);
        assert!(is_nonpositive_on_unit_interval(&p, false).unwrap());
        assert!(!is_nonpositive_on_unit_interval(&p, true).unwrap());
        // -(x - 1/2)^2 touches zero inside
        let touch = UniPoly::new(vec![rat::frac(-1, 4), int(1), int(-1)]);
        assert!(is_nonpositive_on_unit_interval(&touch, false).unwrap());
        assert!(!is_nonpositive_on_unit_interval(&touch, true).unwrap());
        // crosses zero inside
        let cross = UniPoly::new(vec![rat::frac(-1, 2), int(1)]);
        assert!(!is_nonpositive_on_unit_interval(&cross, false).unwrap());
        // -(x-1/3)^2 (x-2/3)^2 touches twice
        let a = UniPoly::new(vec![rat::frac(-1, 3), int(1)]);
        let b = UniPoly::new(vec![rat::frac(-2, 3), int(1)]);
        let two = -&(&a.pow(2) * &b.pow(2));
        assert!(is_nonpositive_on_unit_interval(&two, false).unwrap());
        // positive bump between two touching zeros
        let bump = &(&a * &b) * &UniPoly::from_ints(&[-1]);
        assert!(!is_nonpositive_on_unit_interval(&bump.pow(1), false).unwrap());
        assert!(is_nonpositive_on_unit_interval(&UniPoly::zero(), false).is_err());
    }
}
