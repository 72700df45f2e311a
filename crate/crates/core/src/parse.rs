//! Polynomial text input.
//!
//! Accepted grammar (whitespace ignored):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' integer]
//! atom   := integer ['/' integer] | 'x' | 'y' | '(' expr ')'
//! ```
//!
//! The coefficient-vector format `D: a_0, a_1, ..., a_D` is also accepted.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forms::BinaryForm;
use crate::rat::{self, Rat};

/// Sparse bivariate polynomial, keyed by `(deg_x, deg_y)`. Entries whose
/// coefficient cancelled to zero are kept so the degree of `0*x^3` survives.
#[derive(Clone, Debug)]
struct Sparse(BTreeMap<(usize, usize), Rat>);

impl Sparse {
    fn constant(c: Rat) -> Self {
        Sparse(BTreeMap::from([((0, 0), c)]))
    }

    fn var(x: bool) -> Self {
        let key = if x { (1, 0) } else { (0, 1) };
        Sparse(BTreeMap::from([(key, Rat::from_integer(1.into()))]))
    }

    fn add(mut self, other: Sparse, sign: bool) -> Self {
        for (k, v) in other.0 {
            let e = self.0.entry(k).or_insert_with(Rat::zero);
            if sign {
                *e += v;
            } else {
                *e -= v;
            }
        }
        self
    }

    fn mul(&self, other: &Sparse) -> Self {
        let mut out = BTreeMap::new();
        for (&(a, b), u) in &self.0 {
            for (&(c, d), v) in &other.0 {
                *out.entry((a + c, b + d)).or_insert_with(Rat::zero) += u * v;
            }
        }
        Sparse(out)
    }

    fn pow(&self, e: usize) -> Self {
        let mut acc = Sparse::constant(Rat::from_integer(1.into()));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn neg(mut self) -> Self {
        for v in self.0.values_mut() {
            *v = -v.clone();
        }
        self
    }

    fn into_form(self) -> Result<BinaryForm> {
        let mut degree: Option<usize> = None;
        for (&(a, b), v) in &self.0 {
            if v.is_zero() {
                continue;
            }
            match degree {
                None => degree = Some(a + b),
                Some(d) if d != a + b => {
                    return Err(Error::MixedDegree {
                        first: d,
                        second: a + b,
                    })
                }
                _ => {}
            }
        }
        let d = match degree {
            Some(d) => d,
            // everything cancelled: use the largest nominal degree seen
            None => self.0.keys().map(|(a, b)| a + b).max().unwrap_or(0),
        };
        let mut f = vec![Rat::zero(); d + 1];
        for ((a, b), v) in self.0 {
            if a + b == d {
                f[b] += v;
            }
        }
        Ok(BinaryForm::new(f))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn expr(&mut self) -> Result<Sparse> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(self.term()?, true);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.add(self.term()?, false);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Sparse> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Sparse> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e: usize = match self.integer()?.parse() {
                Ok(e) => e,
                Err(_) => return self.err("exponent too large"),
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Sparse> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(Sparse::var(true))
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(Sparse::var(false))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let text = if self.eat(b'/') {
                    format!("{n}/{}", self.integer()?)
                } else {
                    n
                };
                match rat::parse_rat(&text) {
                    Some(r) => Ok(Sparse::constant(r)),
                    None => self.err("zero denominator"),
                }
            }
            Some(c) => self.err(format!("unexpected `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses polynomial text (or the `D: a_0, ..., a_D` vector format) into a
/// form. All nonzero monomials must share one total degree.
pub fn parse_form(text: &str) -> Result<BinaryForm> {
    if text.trim().is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some((d, rest)) = text.split_once(':') {
        return parse_coeff_vector(d, rest);
    }
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let poly = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    poly.into_form()
}

fn parse_coeff_vector(d: &str, rest: &str) -> Result<BinaryForm> {
    let bad = |msg: &str| Error::Parse {
        pos: 0,
        msg: msg.to_string(),
    };
    let degree: usize = d.trim().parse().map_err(|_| bad("bad degree"))?;
    let coeffs = rest
        .split(',')
        .map(|c| rat::parse_rat(c).ok_or_else(|| bad("bad coefficient")))
        .collect::<Result<Vec<_>>>()?;
    if coeffs.len() != degree + 1 {
        return Err(bad("coefficient count does not match degree"));
    }
    Ok(BinaryForm::new(coeffs))
}

/// Inverse of [`parse_form`] on polynomial text.
pub fn format_form(f: &BinaryForm) -> String {
    f.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::frac;

    #[test]
    fn documented_examples() {
        assert_eq!(
            parse_form("x^3 - x*y^2").unwrap(),
            BinaryForm::from_ints(&[1, 0, -1, 0])
        );
        assert_eq!(
            parse_form("(x^2 - y^2)*(x^4 + y^4)").unwrap(),
            BinaryForm::from_ints(&[1, 0, -1, 0, 1, 0, -1])
        );
        assert!(matches!(
            parse_form("x + y^2"),
            Err(Error::MixedDegree { .. })
        ));
        assert_eq!(parse_form("   "), Err(Error::EmptyInput));
    }

    #[test]
    fn rationals_and_signs() {
        let f = parse_form("-3/4*x*y + 2 * y ^ 2").unwrap();
        assert_eq!(f.coeffs(), &[frac(0, 1), frac(-3, 4), frac(2, 1)]);
        assert_eq!(parse_form("+x").unwrap(), BinaryForm::x());
        assert_eq!(
            parse_form("(x+y)^2 - 2*x*y").unwrap(),
            BinaryForm::from_ints(&[1, 0, 1])
        );
    }

    #[test]
    fn malformed() {
        for bad in ["x^", "(x+y", "x**y", "x+", "2/0*x", "x y", "z"] {
            assert!(matches!(parse_form(bad), Err(Error::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn coefficient_vector() {
        assert_eq!(
            parse_form("3: 1, 0, -1, 0").unwrap(),
            BinaryForm::from_ints(&[1, 0, -1, 0])
        );
        assert_eq!(parse_form("2: 1/2, 0, 1").unwrap().coeff(0), &frac(1, 2));
        assert!(parse_form("2: 1, 0").is_err());
    }

    #[test]
    fn zero_form_keeps_degree() {
        let z = parse_form("0*x^3").unwrap();
        assert!(z.is_zero());
        assert_eq!(z.degree(), 3);
        assert_eq!(parse_form(&format_form(&z)).unwrap(), z);
        assert_eq!(parse_form("x^2*y - y*x^2").unwrap().degree(), 3);
    }
}
