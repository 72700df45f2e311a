//! Exact index of the hyperbolic curve and component classification.
//!
//! For hyperbolic `f` the curve `phi -> (f_xx, f_xy, f_yy)(cos phi, sin phi)`
//! winds `2 - m` times around the cone of degenerate quadratic forms, where
//! `m` is the number of distinct real lines in `f = 0`. Two hyperbolic forms
//! of equal degree lie in the same connected component exactly when these
//! indexes agree.

use num_traits::Zero;
use serde::Serialize;

use crate::certify::is_hyperbolic;
use crate::error::{Error, Result};
use crate::forms::{BinaryForm, Chart};
use crate::sturm::{RootInterval, SturmChain};

/// Number of distinct lines through the origin contained in `f = 0`.
pub fn count_real_linear_factors(f: &BinaryForm) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroForm {
            op: "count_real_linear_factors",
        });
    }
    let u = f.restrict(Chart::XEqualsOne);
    let affine = SturmChain::new(&u)?.count(&RootInterval::WholeLine);
    // the line x = 0 is invisible in the x = 1 chart
    let vertical = usize::from(f.coeff(f.degree()).is_zero());
    Ok(affine + vertical)
}

fn require_hyperbolic(f: &BinaryForm) -> Result<()> {
    if is_hyperbolic(f)?.is_hyperbolic() {
        Ok(())
    } else {
        Err(Error::NotHyperbolic)
    }
}

/// `2 - m` for certified hyperbolic `f`.
pub fn index_gamma(f: &BinaryForm) -> Result<i64> {
    require_hyperbolic(f)?;
    index_of_certified(f)
}

/// Index without re-certifying; callers must already know `f` is hyperbolic.
pub(crate) fn index_of_certified(f: &BinaryForm) -> Result<i64> {
    Ok(2 - count_real_linear_factors(f)? as i64)
}

fn require_min_degree(op: &'static str, degree: usize) -> Result<()> {
    if degree < 3 {
        return Err(Error::DegreeTooLow {
            op,
            min: 3,
            got: degree,
        });
    }
    Ok(())
}

/// Every index a hyperbolic form of degree `D` can have, largest first:
/// `0, -2, ..., -(D-2)` for even `D`, `-1, -3, ..., -(D-2)` for odd `D`.
pub fn admissible_indices(degree: usize) -> Result<Vec<i64>> {
    require_min_degree("admissible_indices", degree)?;
    let d = degree as i64;
    let top = if d % 2 == 0 { 0 } else { -1 };
    Ok((0..)
        .map(|k| top - 2 * k)
        .take_while(|&i| i >= 2 - d)
        .collect())
}

/// `(D-1)/2` for odd `D`, `D/2` for even `D`.
///
/// Degree 4 returns the formula value 2 even though the space of quartic
/// hyperbolic forms is known to be connected; no degree-4 representative of
/// index 0 exists among the generated families.
pub fn num_components(degree: usize) -> Result<usize> {
    require_min_degree("num_components", degree)?;
    Ok(if degree % 2 == 1 {
        (degree - 1) / 2
    } else {
        degree / 2
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub degree: usize,
    pub index: i64,
    pub component_rank: usize,
    pub factor_count: usize,
}

impl ComponentReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

pub fn classify(f: &BinaryForm) -> Result<ComponentReport> {
    require_hyperbolic(f)?;
    let factor_count = count_real_linear_factors(f)?;
    let index = 2 - factor_count as i64;
    let admissible = admissible_indices(f.degree())?;
    let component_rank = admissible.iter().position(|&i| i == index).ok_or_else(|| {
        Error::Internal(format!(
            "index {index} is not admissible in degree {}",
            f.degree()
        ))
    })?;
    Ok(ComponentReport {
        degree: f.degree(),
        index,
        component_rank,
        factor_count,
    })
}

/// Same connected component of the space of degree-`D` hyperbolic forms.
pub fn same_component(f: &BinaryForm, g: &BinaryForm) -> Result<bool> {
    if f.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            left: f.degree(),
            right: g.degree(),
        });
    }
    Ok(index_gamma(f)? == index_gamma(g)?)
}

/// `(zeros, critical points)` of `F(phi) = f(cos phi, sin phi)` on a full
/// turn; equal for every hyperbolic `f`.
pub fn zeros_vs_critical_points(f: &BinaryForm) -> Result<(usize, usize)> {
    require_hyperbolic(f)?;
    let zeros = 2 * count_real_linear_factors(f)?;
    let r = f.rotational_derivative()?;
    let crit = if r.is_zero() {
        0
    } else {
        2 * count_real_linear_factors(&r)?
    };
    Ok((zeros, crit))
}

/// Classifies every form independently (in parallel).
pub fn classify_corpus(forms: &[BinaryForm]) -> Vec<Result<ComponentReport>> {
    use rayon::prelude::*;
    forms.par_iter().map(classify).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_form;

    fn f(s: &str) -> BinaryForm {
        parse_form(s).unwrap()
    }

    #[test]
    fn factor_counts() {
        assert_eq!(count_real_linear_factors(&f("x^3 - x*y^2")).unwrap(), 3);
        assert_eq!(
            count_real_linear_factors(&f("(x^2-y^2)*(x^4+y^4)")).unwrap(),
            2
        );
        assert_eq!(count_real_linear_factors(&f("(x^2+y^2)^3")).unwrap(), 0);
        assert_eq!(count_real_linear_factors(&f("x^2*y")).unwrap(), 2);
        assert!(count_real_linear_factors(&BinaryForm::zero(2)).is_err());
    }

    #[test]
    fn index_examples() {
        assert_eq!(index_gamma(&f("x^3 - x*y^2")).unwrap(), -1);
        let p9 = f("x*(x^2-y^2)*(x^2-4*y^2)*(x^2-9*y^2)*(x^2-16*y^2)");
        assert_eq!(index_gamma(&p9).unwrap(), -7);
        let t3 = f("x*(x^6+y^6)*(x^2-y^2)");
        assert_eq!(index_gamma(&t3).unwrap(), -1);
        assert_eq!(index_gamma(&f("x^2+y^2")), Err(Error::NotHyperbolic));
    }

    #[test]
    fn admissible_and_counts() {
        assert_eq!(admissible_indices(6).unwrap(), vec![0, -2, -4]);
        assert_eq!(admissible_indices(9).unwrap(), vec![-1, -3, -5, -7]);
        assert_eq!(admissible_indices(3).unwrap(), vec![-1]);
        assert!(admissible_indices(2).is_err());
        assert_eq!(num_components(9).unwrap(), 4);
        assert_eq!(num_components(16).unwrap(), 8);
        assert_eq!(num_components(4).unwrap(), 2);
        for d in 3..30 {
            assert_eq!(
                num_components(d).unwrap(),
                admissible_indices(d).unwrap().len()
            );
        }
    }

    #[test]
    fn components() {
        let t2 = f("x*(x^4+y^4)*(x^2-y^2)*(x^2-4*y^2)");
        let p5q4 = f("(x^2+y^2)^2*(x^5 - 10*x^3*y^2 + 5*x*y^4)");
        assert!(same_component(&t2, &p5q4).unwrap());
        let p9 = f("x*(x^2-y^2)*(x^2-4*y^2)*(x^2-9*y^2)*(x^2-16*y^2)");
        let t3 = f("x*(x^6+y^6)*(x^2-y^2)");
        assert!(!same_component(&p9, &t3).unwrap());
        let p3q2 = f("(x^2+y^2)*(x^3-3*x*y^2)");
        assert!(matches!(
            same_component(&p3q2, &t3),
            Err(Error::DegreeMismatch { .. })
        ));
        assert_eq!(
            same_component(&f("x^2+y^2"), &f("x*y")),
            Err(Error::NotHyperbolic)
        );
    }

    #[test]
    fn report() {
        let r = classify(&f("x*(x^6+y^6)*(x^2-y^2)")).unwrap();
        assert_eq!(
            r,
            ComponentReport {
                degree: 9,
                index: -1,
                component_rank: 0,
                factor_count: 3
            }
        );
        assert_eq!(
            r.to_json(),
            r#"{"degree":9,"index":-1,"component_rank":0,"factor_count":3}"#
        );
    }

    #[test]
    fn zeros_and_critical_points() {
        assert_eq!(zeros_vs_critical_points(&f("x^3 - x*y^2")).unwrap(), (6, 6));
        assert_eq!(zeros_vs_critical_points(&f("x*y")).unwrap(), (4, 4));
        assert_eq!(
            zeros_vs_critical_points(&f("(x^2-y^2)*(x^4+y^4)")).unwrap(),
            (4, 4)
        );
        assert_eq!(
            zeros_vs_critical_points(&f("x^2+y^2")),
            Err(Error::NotHyperbolic)
        );
    }
}
