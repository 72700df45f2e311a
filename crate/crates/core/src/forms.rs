//! Homogeneous polynomials in `x, y` with exact rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::{self, Rat};
use crate::unipoly::UniPoly;

/// `sum a_i x^(D-i) y^i` for `i = 0..=D`.
///
/// The zero form keeps its nominal degree so that sums and products stay
/// total; calculus and certification reject it explicitly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<Rat>,
}

/// Affine chart used to dehomogenize a form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Chart {
    /// `u(t) = f(t, 1)`
    YEqualsOne,
    /// `u(t) = f(1, t)`
    XEqualsOne,
}

/// `a x + b y`, never identically zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    a: Rat,
    b: Rat,
}

impl LinearForm {
    pub fn new(a: Rat, b: Rat) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroLinearForm);
        }
        Ok(LinearForm { a, b })
    }

    pub fn from_ints(a: i64, b: i64) -> Result<Self> {
        Self::new(rat::int(a), rat::int(b))
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn to_form(&self) -> BinaryForm {
        BinaryForm::new(vec![self.a.clone(), self.b.clone()])
    }
}

fn ri(v: usize) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

impl BinaryForm {
    /// Degree is `coeffs.len() - 1`; an empty vector is treated as the
    /// degree-0 zero form.
    pub fn new(coeffs: Vec<Rat>) -> Self {
        if coeffs.is_empty() {
            return BinaryForm {
                coeffs: vec![Rat::zero()],
            };
        }
        BinaryForm { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat::int(c)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm {
            coeffs: vec![Rat::zero(); degree + 1],
        }
    }

    pub fn constant(c: Rat) -> Self {
        BinaryForm { coeffs: vec![c] }
    }

    pub fn x() -> Self {
        Self::from_ints(&[1, 0])
    }

    pub fn y() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `c x^i y^j`
    pub fn monomial(c: Rat, i: usize, j: usize) -> Self {
        let mut f = Self::zero(i + j);
        f.coeffs[j] = c;
        f
    }

    /// `(x^2 + y^2)^k`
    pub fn circle_power(k: usize) -> Self {
        let q = Self::from_ints(&[1, 0, 1]);
        q.pow(k)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rat {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        // Horner in the ratio, homogenized
        let d = self.degree();
        let mut acc = Rat::zero();
        let mut ypow = Rat::one();
        let mut xpows = Vec::with_capacity(d + 1);
        let mut xp = Rat::one();
        for _ in 0..=d {
            xpows.push(xp.clone());
            xp *= x;
        }
        for (i, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                acc += a * &xpows[d - i] * &ypow;
            }
            ypow *= y;
        }
        acc
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(rat::to_f64).collect()
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        eval_f64_coeffs(&self.to_f64_coeffs(), x, y)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(BinaryForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        BinaryForm {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        BinaryForm {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        BinaryForm { coeffs: out }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::constant(Rat::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn product<'a, I: IntoIterator<Item = &'a BinaryForm>>(factors: I) -> Self {
        factors
            .into_iter()
            .fold(Self::constant(Rat::one()), |acc, f| acc.mul(f))
    }

    fn require_degree(&self, op: &'static str, min: usize) -> Result<()> {
        if self.degree() < min {
            return Err(Error::DegreeTooLow {
                op,
                min,
                got: self.degree(),
            });
        }
        Ok(())
    }

    pub fn partial_x(&self) -> Result<Self> {
        self.require_degree("partial_x", 1)?;
        let d = self.degree();
        Ok(BinaryForm {
            coeffs: (0..d).map(|i| &self.coeffs[i] * ri(d - i)).collect(),
        })
    }

    pub fn partial_y(&self) -> Result<Self> {
        self.require_degree("partial_y", 1)?;
        let d = self.degree();
        Ok(BinaryForm {
            coeffs: (1..=d).map(|i| &self.coeffs[i] * ri(i)).collect(),
        })
    }

    /// `x f_y - y f_x`, whose restriction to the unit circle is the angular
    /// derivative of `phi -> f(cos phi, sin phi)`.
    pub fn rotational_derivative(&self) -> Result<Self> {
        self.require_degree("rotational_derivative", 1)?;
        let fx = self.partial_x()?;
        let fy = self.partial_y()?;
        Self::x().mul(&fy).sub(&Self::y().mul(&fx))
    }

    /// Checks `x f_x + y f_y = D f`.
    pub fn euler_check(&self) -> bool {
        if self.degree() == 0 {
            return true;
        }
        let (Ok(fx), Ok(fy)) = (self.partial_x(), self.partial_y()) else {
            return false;
        };
        let lhs = Self::x().mul(&fx).add(&Self::y().mul(&fy));
        lhs.map(|l| l == self.scale(&ri(self.degree())))
            .unwrap_or(false)
    }

    pub fn restrict(&self, chart: Chart) -> UniPoly {
        match chart {
            Chart::XEqualsOne => UniPoly::new(self.coeffs.clone()),
            Chart::YEqualsOne => UniPoly::new(self.coeffs.iter().rev().cloned().collect()),
        }
    }

    /// Inverse of [`restrict`](Self::restrict) for the `x = 1` chart:
    /// `sum c_i t^i -> sum c_i x^(D-i) y^i`.
    pub fn homogenize(p: &UniPoly, degree: usize) -> Result<Self> {
        if p.degree().is_some_and(|d| d > degree) {
            return Err(Error::DegreeMismatch {
                left: p.degree().unwrap(),
                right: degree,
            });
        }
        Ok(BinaryForm {
            coeffs: (0..=degree).map(|i| p.coeff(i)).collect(),
        })
    }

    /// `f(m00 x + m01 y, m10 x + m11 y)`
    pub fn compose_linear(&self, m: [[Rat; 2]; 2]) -> Self {
        let [[m00, m01], [m10, m11]] = m;
        let xs = BinaryForm::new(vec![m00, m01]);
        let ys = BinaryForm::new(vec![m10, m11]);
        let d = self.degree();
        let mut acc = Self::zero(d);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let term = xs.pow(d - i).mul(&ys.pow(i)).scale(a);
            acc = acc.add(&term).expect("same degree");
        }
        acc
    }

    /// Coefficient vector text `D: a_0, a_1, ..., a_D`.
    pub fn to_coeff_string(&self) -> String {
        let body: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("{}: {}", self.degree(), body.join(", "))
    }
}

pub(crate) fn eval_f64_coeffs(c: &[f64], x: f64, y: f64) -> f64 {
    // pick the numerically safer variable for Horner
    let d = c.len() - 1;
    if x.abs() >= y.abs() {
        let t = y / x;
        let h = c.iter().rev().fold(0.0, |acc, a| acc * t + a);
        h * x.powi(d as i32)
    } else {
        let t = x / y;
        let h = c.iter().fold(0.0, |acc, a| acc * t + a);
        h * y.powi(d as i32)
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        if self.is_zero() {
            return match d {
                0 => write!(f, "0"),
                1 => write!(f, "0*x"),
                _ => write!(f, "0*x^{d}"),
            };
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = (c.is_negative(), c.abs());
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let mut parts = Vec::new();
            if !mag.is_one() || d == 0 {
                parts.push(mag.to_string());
            }
            match d - i {
                0 => {}
                1 => parts.push("x".into()),
                e => parts.push(format!("x^{e}")),
            }
            match i {
                0 => {}
                1 => parts.push("y".into()),
                e => parts.push(format!("y^{e}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryForm[{}]({self})", self.degree())
    }
}

impl Serialize for BinaryForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
