//! Generators for the known families of hyperbolic forms and one
//! representative per connected component.
//!
//! Notation: `Q_{2n} = x^{2n} + y^{2n}`; `P_{2k+1} = x prod_{i<=k} (x^2 - i^2 y^2)`
//! and `P_{2k+2} = (x - (k+1) y) P_{2k+1}` are products of distinct real
//! lines; the Arnold family uses `Re (x + iy)^m` padded by powers of
//! `x^2 + y^2`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::BinaryForm;
use crate::rat::{int, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTag {
    Arnold,
    PFactorized,
    GEven,
    FOdd,
    FEven,
    Representative,
}

impl FamilyTag {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyTag::Arnold => "arnold",
            FamilyTag::PFactorized => "p_factorized",
            FamilyTag::GEven => "g_even",
            FamilyTag::FOdd => "f_odd",
            FamilyTag::FEven => "f_even",
            FamilyTag::Representative => "representative",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyMember {
    pub form: BinaryForm,
    pub family_tag: FamilyTag,
    /// `(D, m)` for the Arnold family, `(n, k)` or `(k)` otherwise.
    pub params: Vec<usize>,
    pub degree: usize,
    pub expected_index: i64,
    /// Short name such as `P_5 Q_2` or `Q_4 P_5`.
    pub label: String,
}

impl FamilyMember {
    fn new(
        form: BinaryForm,
        family_tag: FamilyTag,
        params: Vec<usize>,
        expected_index: i64,
        label: String,
    ) -> Result<Self> {
        let m = FamilyMember {
            degree: form.degree(),
            form,
            family_tag,
            params,
            expected_index,
            label,
        };
        #[cfg(debug_assertions)]
        m.verify()?;
        Ok(m)
    }

    /// Certifies the form and checks the attached index.
    pub fn verify(&self) -> Result<()> {
        let got = crate::index::index_gamma(&self.form).map_err(|e| {
            Error::Internal(format!("{} {}: {e}", self.family_tag.as_str(), self.label))
        })?;
        if got != self.expected_index {
            return Err(Error::Internal(format!(
                "{} {}: index {got}, expected {}",
                self.family_tag.as_str(),
                self.label,
                self.expected_index
            )));
        }
        Ok(())
    }

    pub fn metadata_json(&self) -> String {
        serde_json::json!({
            "family_tag": self.family_tag,
            "params": self.params,
            "degree": self.degree,
            "expected_index": self.expected_index,
        })
        .to_string()
    }

    fn retagged(mut self, tag: FamilyTag) -> Self {
        self.family_tag = tag;
        self
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

/// `Re (x + iy)^m`, expanded by binomial sums.
pub fn re_power(m: usize) -> BinaryForm {
    let coeffs = (0..=m)
        .map(|j| match j % 4 {
            0 => Rat::from_integer(binomial(m, j)),
            2 => -Rat::from_integer(binomial(m, j)),
            _ => int(0),
        })
        .collect();
    BinaryForm::new(coeffs)
}

/// `x^{2n} + y^{2n}`
pub fn q_form(n: usize) -> BinaryForm {
    let mut c = vec![int(0); 2 * n + 1];
    c[0] = int(1);
    c[2 * n] = int(1);
    BinaryForm::new(c)
}

/// `x - c y`
fn line(c: i64) -> BinaryForm {
    BinaryForm::from_ints(&[1, -c])
}

/// Product of distinct real lines: `x prod_{i<=k} (x^2 - i^2 y^2)`, times
/// `x - (k+1) y` when `even`.
pub fn p_form(k: usize, even: bool) -> BinaryForm {
    let mut factors = vec![BinaryForm::x()];
    for i in 1..=k as i64 {
        factors.push(BinaryForm::from_ints(&[1, 0, -i * i]));
    }
    if even {
        factors.push(line(k as i64 + 1));
    }
    BinaryForm::product(&factors)
}

/// `(x^2 - y^2)(x^{2n} + y^{2n})` for any `n >= 1`, without validation.
pub fn g_form(n: usize) -> BinaryForm {
    BinaryForm::from_ints(&[1, 0, -1]).mul(&q_form(n))
}

fn p_label(degree: usize) -> String {
    format!("P_{degree}")
}

pub fn arnold(degree: usize, m: usize) -> Result<FamilyMember> {
    if m < 3 || degree < m || !(degree - m).is_multiple_of(2) || degree >= m * m {
        return Err(Error::InvalidParameters(format!(
            "arnold needs m >= 3, D - m even and m <= D < m^2; got D = {degree}, m = {m}"
        )));
    }
    let pad = (degree - m) / 2;
    let form = BinaryForm::circle_power(pad).mul(&re_power(m));
    let label = if pad == 0 {
        format!("P_{m}")
    } else {
        format!("P_{m} Q_{}", degree - m)
    };
    FamilyMember::new(
        form,
        FamilyTag::Arnold,
        vec![degree, m],
        2 - m as i64,
        label,
    )
}

pub fn p_factorized(k: usize, even: bool) -> Result<FamilyMember> {
    if k < 1 {
        return Err(Error::InvalidParameters("p_factorized needs k >= 1".into()));
    }
    let d = 2 * k + if even { 2 } else { 1 };
    FamilyMember::new(
        p_form(k, even),
        FamilyTag::PFactorized,
        vec![k],
        2 - d as i64,
        p_label(d),
    )
}

/// `g_{2n+2}`; `n = 1` is excluded because `Hess g_4 = -144 x^2 y^2`
/// vanishes on the axes.
pub fn g_even(n: usize) -> Result<FamilyMember> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!(
            "g_even needs n >= 2, got {n}"
        )));
    }
    FamilyMember::new(
        g_form(n),
        FamilyTag::GEven,
        vec![n],
        0,
        format!("g_{}", 2 * n + 2),
    )
}

/// `Q_{2n} P_{2k+1}` (odd) or `Q_{2n} P_{2k+2}` (even).
///
/// `(n, k) = (1, 1)` in the odd case is excluded: `x (x^2 + y^2)(x^2 - y^2)`
/// has Hessian `-16 y^2 (15 x^4 + y^4)`, which vanishes on `y = 0`.
pub fn f_family(n: usize, k: usize, even: bool) -> Result<FamilyMember> {
    if n < 1 || k < 1 {
        return Err(Error::InvalidParameters(format!(
            "f_family needs n >= 1 and k >= 1; got n = {n}, k = {k}"
        )));
    }
    if (n, k, even) == (1, 1, false) {
        return Err(Error::InvalidParameters(
            "Q_2 P_3 is not hyperbolic (its Hessian vanishes on y = 0)".into(),
        ));
    }
    let p_deg = 2 * k + if even { 2 } else { 1 };
    let form = q_form(n).mul(&p_form(k, even));
    let tag = if even {
        FamilyTag::FEven
    } else {
        FamilyTag::FOdd
    };
    let label = format!("Q_{} P_{p_deg}", 2 * n);
    FamilyMember::new(form, tag, vec![n, k], 2 - p_deg as i64, label)
}

/// One member per connected component of degree-`D` hyperbolic forms, in
/// increasing index order.
///
/// Odd `D`: `P_D`, then `Q_{2j} P_{D-2j}` for `j = 1..=(D-3)/2`.
/// Even `D >= 6`: `P_D`, then `Q_{2j} P_{D-2j}` for `j = 1..=(D-4)/2`, then `g_D`.
/// At `D = 5` the slot of the non-hyperbolic `Q_2 P_3` goes to the Arnold
/// form `P_3 Q_2` of the same index. Degree 4 is refused: the index-0 slot
/// has no member here.
pub fn representatives(degree: usize) -> Result<Vec<FamilyMember>> {
    if degree < 3 || degree == 4 {
        return Err(Error::InvalidParameters(format!(
            "representatives need D = 3 or D >= 5, got {degree}"
        )));
    }
    let mut out = Vec::new();
    let odd = degree % 2 == 1;
    if odd {
        out.push(p_factorized((degree - 1) / 2, false)?);
        for j in 1..=(degree - 3) / 2 {
            let k = (degree - 2 * j - 1) / 2;
            out.push(if (j, k) == (1, 1) {
                arnold(5, 3)?
            } else {
                f_family(j, k, false)?
            });
        }
    } else {
        out.push(p_factorized((degree - 2) / 2, true)?);
        for j in 1..=(degree - 4) / 2 {
            out.push(f_family(j, (degree - 2 * j - 2) / 2, true)?);
        }
        out.push(g_even((degree - 2) / 2)?);
    }
    Ok(out
        .into_iter()
        .map(|m| m.retagged(FamilyTag::Representative))
        .collect())
}

/// Every valid Arnold pair `(D, m)` with `3 <= D <= max_degree`, by degree
/// and then by decreasing `m`.
pub fn arnold_pairs(max_degree: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for d in 3..=max_degree {
        for m in (3..=d).rev() {
            if (d - m) % 2 == 0 && d < m * m {
                out.push((d, m));
            }
        }
    }
    out
}

pub fn table1(max_degree: usize) -> Result<Vec<FamilyMember>> {
    if !(3..=16).contains(&max_degree) {
        return Err(Error::InvalidParameters(format!(
            "table1 covers 3 <= D <= 16, got {max_degree}"
        )));
    }
    arnold_pairs(max_degree)
        .into_iter()
        .map(|(d, m)| arnold(d, m))
        .collect()
}

/// Every member of every family with degree at most `max_degree`.
pub fn all_members(max_degree: usize) -> Result<Vec<FamilyMember>> {
    let mut out = Vec::new();
    for (d, m) in arnold_pairs(max_degree) {
        out.push(arnold(d, m)?);
    }
    for k in 1.. {
        if 2 * k + 1 > max_degree {
            break;
        }
        out.push(p_factorized(k, false)?);
        if 2 * k + 2 <= max_degree {
            out.push(p_factorized(k, true)?);
        }
    }
    for n in 2.. {
        if 2 * n + 2 > max_degree {
            break;
        }
        out.push(g_even(n)?);
    }
    for n in 1..max_degree {
        for k in 1..max_degree {
            if 2 * n + 2 * k < max_degree && (n, k) != (1, 1) {
                out.push(f_family(n, k, false)?);
            }
            if 2 * n + 2 * k + 2 <= max_degree {
                out.push(f_family(n, k, true)?);
            }
        }
    }
    Ok(out)
}
