//! Verification suites and their reports.
//!
//! Each suite turns a checkable claim about hyperbolic forms into a list of
//! cases `{id, expected, got, pass}`. Integer and form comparisons are exact;
//! float comparisons carry their tolerance in the report. Cases run in
//! parallel (capped by `HYPFORMS_THREADS`) and are sorted by id, so a report
//! depends only on its flags apart from `wall_time`.

use std::collections::BTreeSet;
use std::fmt::Display;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotics::{
    check_isotopies, discriminant_omega, poincare_index_origin, render_curves, t_identity,
    HalfInteger, RenderOptions, SecondFormEvaluator,
};
use crate::certify::{
    hess_linear_product, hessian, is_hyperbolic, is_hyperbolic_polar,
    linear_extension_is_hyperbolic,
};
use crate::error::{Error, Result};
use crate::families::{
    all_members, arnold, arnold_pairs, f_family, g_even, g_form, p_factorized, p_form, q_form,
    representatives, FamilyMember,
};
use crate::forms::{BinaryForm, LinearForm};
use crate::index::{admissible_indices, index_gamma, num_components, zeros_vs_critical_points};
use crate::inequalities::{check_hessian_expansion, check_lemma2, check_lemma3, check_s, lemma1};
use crate::rat::{frac, int};
use crate::winding::{winding_alpha, winding_gamma};

/// Suites accepted by [`run_suite`], in the order `all` runs them.
pub const SUITES: &[&str] = &[
    "table1",
    "conjecture",
    "spotlight",
    "g4",
    "equivalence",
    "winding",
    "obs_arnold",
    "bounds",
    "product_lemma",
    "lemmas",
    "hessian_expansion",
    "poincare",
    "isotopies",
    "figures",
];

pub const DEFAULT_SEED: u64 = 20_240_601;

/// `(D, m, index)` for every `P_m Q_{D-m}` listed in the Arnold table,
/// `3 <= D <= 16`.
pub const TABLE1: &[(usize, usize, i64)] = &[
    (3, 3, -1),
    (4, 4, -2),
    (5, 5, -3),
    (5, 3, -1),
    (6, 6, -4),
    (6, 4, -2),
    (7, 7, -5),
    (7, 5, -3),
    (7, 3, -1),
    (8, 8, -6),
    (8, 6, -4),
    (8, 4, -2),
    (9, 9, -7),
    (9, 7, -5),
    (9, 5, -3),
    (10, 10, -8),
    (10, 8, -6),
    (10, 6, -4),
    (10, 4, -2),
    (11, 11, -9),
    (11, 9, -7),
    (11, 7, -5),
    (11, 5, -3),
    (12, 12, -10),
    (12, 10, -8),
    (12, 8, -6),
    (12, 6, -4),
    (12, 4, -2),
    (13, 13, -11),
    (13, 11, -9),
    (13, 9, -7),
    (13, 7, -5),
    (13, 5, -3),
    (14, 14, -12),
    (14, 12, -10),
    (14, 10, -8),
    (14, 8, -6),
    (14, 6, -4),
    (14, 4, -2),
    (15, 15, -13),
    (15, 13, -11),
    (15, 11, -9),
    (15, 9, -7),
    (15, 7, -5),
    (15, 5, -3),
    (16, 16, -14),
    (16, 14, -12),
    (16, 12, -10),
    (16, 10, -8),
    (16, 8, -6),
    (16, 6, -4),
];

/// Winding results are rounded; this bounds the distance to the integer.
pub const WINDING_TOLERANCE: f64 = 0.1;
/// Field turning must close up to a multiple of `pi` within this many
/// half-turns.
pub const POINCARE_TOLERANCE: f64 = 1e-6;
/// Asymptotic residual along rendered curves.
pub const CURVE_RESIDUAL_TOLERANCE: f64 = 1e-9;
/// Distance of a zero-line curve from its line.
pub const LINE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Case {
    pub id: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
    /// `exact` or `tolerance`.
    pub comparison: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl Case {
    pub fn exact(id: impl Into<String>, expected: impl Display, got: impl Display) -> Self {
        let (expected, got) = (expected.to_string(), got.to_string());
        Case {
            id: id.into(),
            pass: expected == got,
            expected,
            got,
            comparison: "exact",
            tolerance: None,
        }
    }

    pub fn within(
        id: impl Into<String>,
        expected: impl Display,
        got: impl Display,
        pass: bool,
        tolerance: f64,
    ) -> Self {
        Case {
            id: id.into(),
            expected: expected.to_string(),
            got: got.to_string(),
            pass,
            comparison: "tolerance",
            tolerance: Some(tolerance),
        }
    }

    fn from_result(id: impl Into<String>, r: Result<Case>) -> Self {
        let id = id.into();
        match r {
            Ok(mut c) => {
                c.id = id;
                c
            }
            Err(e) => Case {
                id,
                expected: "success".into(),
                got: format!("error: {e}"),
                pass: false,
                comparison: "exact",
                tolerance: None,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub passed: usize,
    pub failed: usize,
    pub wall_time: f64,
    pub cases: Vec<Case>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Range flags; `None` selects each suite's own default.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub d_max: Option<usize>,
    pub n_max: Option<usize>,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            d_max: None,
            n_max: None,
            seed: DEFAULT_SEED,
        }
    }
}

fn range(value: Option<usize>, default: usize, lo: usize, hi: usize, flag: &str) -> Result<usize> {
    let v = value.unwrap_or(default);
    if !(lo..=hi).contains(&v) {
        return Err(Error::InvalidParameters(format!(
            "{flag} must lie in {lo}..={hi}, got {v}"
        )));
    }
    Ok(v)
}

/// Runs a suite on a pool sized by `HYPFORMS_THREADS` (all cores if unset).
pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<SuiteReport> {
    if name != "all" && !SUITES.contains(&name) {
        return Err(Error::UnknownSuite(name.to_string()));
    }
    let threads = std::env::var("HYPFORMS_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let start = Instant::now();
    let (cases, seeded) = pool.install(|| -> Result<(Vec<Case>, bool)> {
        if name == "all" {
            let mut out = Vec::new();
            for s in SUITES {
                out.extend(cases_for(s, opts)?.into_iter().map(|mut c| {
                    c.id = format!("{s}/{}", c.id);
                    c
                }));
            }
            Ok((out, true))
        } else {
            Ok((cases_for(name, opts)?, uses_seed(name)))
        }
    })?;
    Ok(assemble(name, seeded.then_some(opts.seed), cases, start))
}

fn assemble(suite: &str, seed: Option<u64>, mut cases: Vec<Case>, start: Instant) -> SuiteReport {
    cases.sort_by(|a, b| a.id.cmp(&b.id));
    let passed = cases.iter().filter(|c| c.pass).count();
    SuiteReport {
        suite: suite.to_string(),
        seed,
        passed,
        failed: cases.len() - passed,
        wall_time: start.elapsed().as_secs_f64(),
        cases,
    }
}

fn uses_seed(name: &str) -> bool {
    matches!(name, "equivalence" | "bounds" | "product_lemma")
}

fn cases_for(name: &str, o: &VerifyOptions) -> Result<Vec<Case>> {
    match name {
        "table1" => table1_cases(range(o.d_max, 16, 3, 16, "--d-max")?),
        "conjecture" => conjecture_cases(range(o.d_max, 20, 3, 40, "--d-max")?),
        "spotlight" => Ok(spotlight_cases()),
        "g4" => Ok(g4_cases(range(o.n_max, 12, 2, 40, "--n-max")?)),
        "equivalence" => equivalence_cases(range(o.d_max, 16, 3, 20, "--d-max")?, o.seed),
        "winding" => winding_cases(range(o.d_max, 12, 3, 20, "--d-max")?),
        "obs_arnold" => obs_arnold_cases(range(o.d_max, 12, 3, 20, "--d-max")?),
        "bounds" => bounds_cases(range(o.d_max, 16, 3, 20, "--d-max")?, o.seed),
        "product_lemma" => Ok(product_lemma_cases(o.seed)),
        "lemmas" => Ok(lemma_cases(range(o.n_max, 40, 11, 80, "--n-max")?)),
        "hessian_expansion" => Ok(expansion_cases(range(o.n_max, 10, 2, 40, "--n-max")?)),
        "poincare" => poincare_cases(range(o.d_max, 12, 3, 20, "--d-max")?),
        "isotopies" => Ok(isotopy_cases(range(o.d_max, 9, 4, 12, "--d-max")?)),
        "figures" => Ok(figure_cases()),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

fn verdict(h: bool) -> &'static str {
    if h {
        "hyperbolic"
    } else {
        "not_hyperbolic"
    }
}

fn fmt_indices(v: &[i64]) -> String {
    format!("{v:?}")
}

fn member_id(m: &FamilyMember) -> String {
    format!("D{:02} {}", m.degree, m.label)
}

fn table1_cases(d_max: usize) -> Result<Vec<Case>> {
    Ok(TABLE1
        .par_iter()
        .filter(|(d, _, _)| *d <= d_max)
        .map(|&(d, m, index)| {
            let id = format!("D{d:02} m{m:02}");
            Case::from_result(
                id,
                (|| {
                    let f = arnold(d, m)?.form;
                    let h = is_hyperbolic(&f)?.is_hyperbolic();
                    let got = if h {
                        index_gamma(&f)?.to_string()
                    } else {
                        verdict(h).into()
                    };
                    Ok(Case::exact("", index, got))
                })(),
            )
        })
        .collect())
}

fn conjecture_cases(d_max: usize) -> Result<Vec<Case>> {
    let degrees: Vec<usize> = (3..=d_max).filter(|&d| d != 4).collect();
    Ok(degrees
        .par_iter()
        .map(|&d| {
            Case::from_result(
                format!("D{d:02}"),
                (|| {
                    let reps = representatives(d)?;
                    let mut got = Vec::new();
                    for r in &reps {
                        if !is_hyperbolic(&r.form)?.is_hyperbolic() {
                            return Ok(Case::exact(
                                "",
                                "all hyperbolic",
                                format!("{} not hyperbolic", r.label),
                            ));
                        }
                        got.push(index_gamma(&r.form)?);
                    }
                    let distinct = got.iter().collect::<BTreeSet<_>>().len() == got.len();
                    got.sort_unstable();
                    let mut want = admissible_indices(d)?;
                    want.sort_unstable();
                    let k = num_components(d)?;
                    Ok(Case::exact(
                        "",
                        format!("indices {} distinct true count {k}", fmt_indices(&want)),
                        format!(
                            "indices {} distinct {distinct} count {}",
                            fmt_indices(&got),
                            got.len()
                        ),
                    ))
                })(),
            )
        })
        .collect())
}

/// `P_9`, `t_1`, `t_2`, `t_3`: one form in each component of degree 9.
pub fn spotlight_forms() -> Result<Vec<(&'static str, BinaryForm, i64)>> {
    Ok(vec![
        ("P_9", p_factorized(4, false)?.form, -7),
        ("t_1", f_family(1, 3, false)?.form, -5),
        ("t_2", f_family(2, 2, false)?.form, -3),
        ("t_3", f_family(3, 1, false)?.form, -1),
    ])
}

fn spotlight_cases() -> Vec<Case> {
    match spotlight_forms() {
        Err(e) => vec![Case::from_result("build", Err(e))],
        Ok(forms) => forms
            .par_iter()
            .map(|(name, f, want)| {
                Case::from_result(*name, index_gamma(f).map(|got| Case::exact("", want, got)))
            })
            .collect(),
    }
}

fn g4_cases(n_max: usize) -> Vec<Case> {
    let g4 = g_form(1);
    let mut out = vec![
        Case::from_result(
            "g4/hessian",
            hessian(&g4).map(|h| Case::exact("", "-144*x^2*y^2", h)),
        ),
        Case::from_result(
            "g4/verdict",
            is_hyperbolic(&g4).and_then(|c| {
                // a valid witness makes the Hessian nonnegative
                let witness_ok = match &c.witness {
                    Some(w) => !crate::rat::sign(&hessian(&g4)?.eval(&w.0, &w.1)).is_negative(),
                    None => false,
                };
                Ok(Case::exact(
                    "",
                    "not_hyperbolic witness_valid true",
                    format!("{} witness_valid {witness_ok}", verdict(c.is_hyperbolic())),
                ))
            }),
        ),
    ];
    out.extend(
        (2..=n_max)
            .into_par_iter()
            .map(|n| {
                Case::from_result(
                    format!("g_even/n{n:02}"),
                    g_even(n).and_then(|m| {
                        let h = is_hyperbolic(&m.form)?.is_hyperbolic();
                        Ok(Case::exact("", "hyperbolic", verdict(h)))
                    }),
                )
            })
            .collect::<Vec<_>>(),
    );
    out
}

fn random_coeff_form<R: Rng>(rng: &mut R, degree: usize) -> BinaryForm {
    loop {
        let c: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-5..=5)).collect();
        if c.iter().any(|&v| v != 0) {
            return BinaryForm::from_ints(&c);
        }
    }
}

/// Product of `degree` lines `a x - b y` with pairwise distinct slopes.
fn random_line_product<R: Rng>(rng: &mut R, degree: usize) -> (BinaryForm, Vec<(i64, i64)>) {
    let mut slopes: Vec<(i64, i64)> = Vec::new();
    let mut seen = BTreeSet::new();
    while slopes.len() < degree {
        let (a, b): (i64, i64) = (rng.gen_range(-4..=4), rng.gen_range(-4..=4));
        if (a, b) == (0, 0) {
            continue;
        }
        // normalize the line through the origin
        let g = num_integer::gcd(a, b);
        let (mut a, mut b) = (a / g, b / g);
        if a < 0 || (a == 0 && b < 0) {
            a = -a;
            b = -b;
        }
        if seen.insert((a, b)) {
            slopes.push((a, b));
        }
    }
    let lines: Vec<BinaryForm> = slopes
        .iter()
        .map(|&(a, b)| BinaryForm::from_ints(&[a, -b]))
        .collect();
    (BinaryForm::product(&lines), slopes)
}

/// `count` seeded forms of degree `2..=max_degree`: random integer
/// coefficients, products of distinct real lines, and such products times
/// `x^2 + y^2`.
pub fn random_forms(seed: u64, count: usize, max_degree: usize) -> Vec<BinaryForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_degree = max_degree.max(2);
    (0..count)
        .map(|i| match i % 4 {
            0 | 1 => {
                let d = rng.gen_range(2..=max_degree);
                random_coeff_form(&mut rng, d)
            }
            2 => {
                let d = rng.gen_range(2..=max_degree);
                random_line_product(&mut rng, d).0
            }
            _ => {
                let d = rng.gen_range(2..=max_degree.max(3)).max(3);
                random_line_product(&mut rng, d - 2).0.mul(&q_form(1))
            }
        })
        .collect()
}

/// `count` seeded pairs `(l, f)` with `2 <= deg f <= 8`. Odd positions use a
/// product of distinct lines for `f` (hyperbolic); a quarter of those reuse
/// one of its lines as `l`.
pub fn random_pairs(seed: u64, count: usize) -> Vec<(LinearForm, BinaryForm)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    (0..count)
        .map(|i| {
            let d = rng.gen_range(2..=8);
            let (f, lines) = if i % 2 == 0 {
                (random_coeff_form(&mut rng, d), Vec::new())
            } else {
                random_line_product(&mut rng, d)
            };
            let l = if !lines.is_empty() && rng.gen_bool(0.25) {
                let &(a, b) = lines.choose(&mut rng).expect("nonempty");
                LinearForm::from_ints(a, -b)
            } else {
                loop {
                    let (a, b) = (rng.gen_range(-4..=4), rng.gen_range(-4..=4));
                    if let Ok(l) = LinearForm::from_ints(a, b) {
                        break Ok(l);
                    }
                }
            }
            .expect("nonzero linear form");
            (l, f)
        })
        .collect()
}

fn equivalence_cases(d_max: usize, seed: u64) -> Result<Vec<Case>> {
    let mut corpus: Vec<(String, BinaryForm)> = all_members(d_max)?
        .into_iter()
        .map(|m| (format!("family/{}", member_id(&m)), m.form))
        .collect();
    corpus.extend(
        random_forms(seed, 200, 8)
            .into_iter()
            .enumerate()
            .map(|(i, f)| (format!("random/{i:03}"), f)),
    );
    corpus.sort_by(|a, b| a.0.cmp(&b.0));
    corpus.dedup_by(|a, b| a.0 == b.0);
    Ok(corpus
        .par_iter()
        .map(|(id, f)| {
            Case::from_result(
                id.clone(),
                (|| {
                    let h = is_hyperbolic(f)?.is_hyperbolic();
                    let p = is_hyperbolic_polar(f)?.is_hyperbolic();
                    Ok(Case::exact("", verdict(h), verdict(p)))
                })(),
            )
        })
        .collect())
}

fn reps_up_to(d_max: usize) -> Result<Vec<FamilyMember>> {
    let mut out = Vec::new();
    for d in (3..=d_max).filter(|&d| d != 4) {
        out.extend(representatives(d)?);
    }
    Ok(out)
}

fn winding_cases(d_max: usize) -> Result<Vec<Case>> {
    Ok(reps_up_to(d_max)?
        .par_iter()
        .map(|m| {
            Case::from_result(
                member_id(m),
                (|| {
                    let idx = index_gamma(&m.form)?;
                    let g = winding_gamma(&m.form)?;
                    let a = winding_alpha(&m.form)?;
                    let res = g.residual.max(a.residual);
                    let pass =
                        g.winding == idx && g.winding == 2 + a.winding && res < WINDING_TOLERANCE;
                    Ok(Case::within(
                        "",
                        format!("gamma {idx} alpha {}", idx - 2),
                        format!("gamma {} alpha {} residual {res:.2e}", g.winding, a.winding),
                        pass,
                        WINDING_TOLERANCE,
                    ))
                })(),
            )
        })
        .collect())
}

/// Admissible indices `2 - m` with `m^2 <= D` (same parity as `D`) are missed
/// by the Arnold family, which needs `D < m^2`. In odd degree this gives `k`
/// missing values once `D >= (2k+1)^2`; in even degree `0` is always missing.
fn arnold_gap(d: usize) -> Vec<i64> {
    (2..=d)
        .filter(|m| (d - m).is_multiple_of(2) && m * m <= d)
        .map(|m| 2 - m as i64)
        .collect()
}

fn obs_arnold_cases(d_max: usize) -> Result<Vec<Case>> {
    let members = all_members(d_max)?;
    let mut out: Vec<Case> = members
        .par_iter()
        .map(|m| {
            Case::from_result(
                format!("zeros/{}", member_id(m)),
                zeros_vs_critical_points(&m.form).map(|(z, c)| Case::exact("", z, c)),
            )
        })
        .collect();
    // the gap is combinatorial in (D, m); the members themselves are certified in table1
    let gap_max = 49.max(d_max);
    let pairs = arnold_pairs(gap_max);
    for d in 3..=gap_max {
        let reached: BTreeSet<i64> = pairs
            .iter()
            .filter(|(pd, _)| *pd == d)
            .map(|(_, m)| 2 - *m as i64)
            .collect();
        let missed: Vec<i64> = admissible_indices(d)?
            .into_iter()
            .filter(|i| !reached.contains(i))
            .collect();
        out.push(Case::exact(
            format!("gap/D{d:02}"),
            fmt_indices(&arnold_gap(d)),
            fmt_indices(&missed),
        ));
    }
    Ok(out)
}

fn bounds_cases(d_max: usize, seed: u64) -> Result<Vec<Case>> {
    let mut corpus: Vec<(String, BinaryForm)> = all_members(d_max)?
        .into_iter()
        .map(|m| (format!("family/{}", member_id(&m)), m.form))
        .collect();
    corpus.extend(
        random_forms(seed, 200, 8)
            .into_iter()
            .enumerate()
            .map(|(i, f)| (format!("random/{i:03}"), f)),
    );
    corpus.sort_by(|a, b| a.0.cmp(&b.0));
    corpus.dedup_by(|a, b| a.0 == b.0);
    Ok(corpus
        .par_iter()
        .filter_map(|(id, f)| {
            let r = (|| -> Result<Option<Case>> {
                if !is_hyperbolic(f)?.is_hyperbolic() {
                    return Ok(None);
                }
                let d = f.degree() as i64;
                let i = index_gamma(f)?;
                let top = if d % 2 == 0 { 0 } else { -1 };
                let ok = 2 - d <= i && i <= top && (i - d).rem_euclid(2) == 0;
                Ok(Some(Case::exact(
                    "",
                    format!("in [{}, {top}] with parity of {d}", 2 - d),
                    if ok {
                        format!("in [{}, {top}] with parity of {d}", 2 - d)
                    } else {
                        format!("index {i}")
                    },
                )))
            })();
            match r {
                Ok(None) => None,
                Ok(Some(c)) => Some(Case::from_result(id.clone(), Ok(c))),
                Err(e) => Some(Case::from_result(id.clone(), Err(e))),
            }
        })
        .collect())
}

fn product_lemma_cases(seed: u64) -> Vec<Case> {
    let pairs = random_pairs(seed, 100);
    pairs
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, (l, f))| {
            let lf = l.to_form().mul(f);
            let mut out = vec![Case::from_result(
                format!("{i:03}/identity"),
                (|| Ok(Case::exact("", hessian(&lf)?, hess_linear_product(l, f)?)))(),
            )];
            let hyperbolic_f = is_hyperbolic(f).map(|c| c.is_hyperbolic()).unwrap_or(false);
            if hyperbolic_f {
                out.push(Case::from_result(
                    format!("{i:03}/extension"),
                    (|| {
                        let direct = is_hyperbolic(&lf)?.is_hyperbolic();
                        Ok(Case::exact(
                            "",
                            verdict(direct),
                            verdict(linear_extension_is_hyperbolic(l, f)?),
                        ))
                    })(),
                ));
            }
            out
        })
        .collect()
}

fn lemma1_case(n: usize) -> Case {
    let square = crate::rat::to_exact_string(&frac(n as i64 - 1, n as i64 + 1));
    Case::from_result(
        format!("lemma1/n{n:02}"),
        lemma1(n).map(|c| {
            Case::exact(
                "",
                format!("1 critical point, x^2 = {square}, max {}", c.closed_form),
                format!(
                    "{} critical point, x^2 = {}, max {}",
                    c.interior_critical_points,
                    if c.critical_square_exact {
                        square.as_str()
                    } else {
                        "other"
                    },
                    c.max_value
                ),
            )
        }),
    )
}

fn lemma_cases(n_max: usize) -> Vec<Case> {
    let mut jobs: Vec<(&'static str, usize)> = Vec::new();
    jobs.extend((2..=11).map(|n| ("s", n)));
    jobs.extend((11..=n_max).flat_map(|n| [("lemma2", n), ("lemma3", n)]));
    jobs.extend((2..=n_max).map(|n| ("lemma1", n)));
    jobs.par_iter()
        .map(|&(kind, n)| {
            if kind == "lemma1" {
                return lemma1_case(n);
            }
            let check = match kind {
                "s" => check_s(n),
                "lemma2" => check_lemma2(n),
                _ => check_lemma3(n),
            };
            let r = check.map(|c| {
                let want = if c.strict {
                    "< 0 on [0,1]"
                } else {
                    "<= 0 on [0,1]"
                };
                Case::exact("", want, if c.holds { want } else { "violated" })
            });
            Case::from_result(format!("{kind}/n{n:02}"), r)
        })
        .collect()
}

/// Lemma 1 on `n_min..=n_max`: one interior critical point of
/// `(1 - x^2)^2 x^{2(n-1)}` at `x^2 = (n-1)/(n+1)`, and its exact maximum.
pub fn run_lemma1(n_min: usize, n_max: usize) -> Result<SuiteReport> {
    if n_min < 2 || n_max < n_min {
        return Err(Error::InvalidParameters(format!(
            "lemma1 needs 2 <= n_min <= n_max, got {n_min}..={n_max}"
        )));
    }
    let start = Instant::now();
    let cases = (n_min..=n_max).into_par_iter().map(lemma1_case).collect();
    Ok(assemble("lemma1", None, cases, start))
}

fn expansion_cases(n_max: usize) -> Vec<Case> {
    (2..=n_max)
        .into_par_iter()
        .map(|n| {
            Case::from_result(
                format!("n{n:02}"),
                check_hessian_expansion(n).map(|c| {
                    Case::exact(
                        "",
                        format!("corrected true, misprint at [{}]", 2 * n + 2),
                        format!(
                            "corrected {}, misprint at {:?}",
                            c.corrected_matches, c.printed_mismatch_exponents
                        ),
                    )
                }),
            )
        })
        .collect()
}

fn poincare_cases(d_max: usize) -> Result<Vec<Case>> {
    let mut jobs: Vec<(String, BinaryForm, HalfInteger)> = Vec::new();
    for m in reps_up_to(d_max)? {
        let idx = index_gamma(&m.form)?;
        jobs.push((
            format!("rep/{}", member_id(&m)),
            m.form,
            HalfInteger::from_twice(idx),
        ));
    }
    // P_{2k+j} and Q_{2n} P_{2k+j}: 1 - k - j/2
    for k in 1..=d_max {
        for j in [1usize, 2] {
            let want = HalfInteger::from_twice(2 - 2 * k as i64 - j as i64);
            if 2 * k + j <= d_max {
                jobs.push((
                    format!("P/D{:02}", 2 * k + j),
                    p_factorized(k, j == 2)?.form,
                    want,
                ));
            }
            for n in 1..=d_max {
                if 2 * n + 2 * k + j <= d_max && (n, k, j) != (1, 1, 1) {
                    let f = f_family(n, k, j == 2)?.form;
                    jobs.push((format!("f/D{:02} n{n} k{k} j{j}", f.degree()), f, want));
                }
            }
        }
    }
    for n in 2.. {
        if 2 * n + 2 > d_max {
            break;
        }
        jobs.push((
            format!("g/D{:02}", 2 * n + 2),
            g_even(n)?.form,
            HalfInteger::from_twice(0),
        ));
    }
    Ok(jobs
        .par_iter()
        .map(|(id, f, want)| {
            Case::from_result(
                id.clone(),
                poincare_index_origin(f)
                    .map(|got| Case::within("", want, got, got == *want, POINCARE_TOLERANCE)),
            )
        })
        .collect())
}

/// `(P_p, Q_{2n})` with `p >= 3` and `p + 2n <= d_max`, as `(p, n)`.
pub fn isotopy_pairs(d_max: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for p in 3..d_max {
        for n in 1..=(d_max - p) / 2 {
            out.push((p, n));
        }
    }
    out
}

fn p_of_degree(p: usize) -> BinaryForm {
    p_form((p - 1) / 2, p.is_multiple_of(2))
}

fn isotopy_cases(d_max: usize) -> Vec<Case> {
    let grid = [int(0), frac(1, 4), frac(1, 2), frac(3, 4), int(1)];
    isotopy_pairs(d_max)
        .par_iter()
        .map(|&(p_deg, n)| {
            let (p, q) = (p_of_degree(p_deg), q_form(n));
            let id = format!("P{p_deg} Q{}", 2 * n);
            let r = (|| {
                let (t, rhs) = t_identity(&p, &q)?;
                let omega = discriminant_omega(&p, &q)?;
                let iso = match check_isotopies(&p, &q, &grid) {
                    Ok(v) => format!("all {} true", v.len()),
                    Err(Error::IsotopyFailure { kind, t }) => format!("{kind} fails at t = {t}"),
                    Err(e) => return Err(e),
                };
                // Q_2 P_3 is not hyperbolic, so Phi_1 = II_{PQ} must fail
                let want_iso = if (p_deg, n) == (3, 1) {
                    "phi fails at t = 1/1"
                } else {
                    "all 3 true"
                };
                Ok(Case::exact(
                    "",
                    format!(
                        "T identity true, constant {}, omega positive true, {want_iso}",
                        omega.t_constant
                    ),
                    format!(
                        "T identity {}, constant {}, omega positive {}, {iso}",
                        t == rhs,
                        omega.t_constant,
                        omega.positive
                    ),
                ))
            })();
            Case::from_result(id, r)
        })
        .collect()
}

/// Forms drawn by the `figures` suite.
pub const FIGURE_FORMS: &[&str] = &["x^3 - x*y^2", "x^3*y - x*y^3"];

fn figure_cases() -> Vec<Case> {
    FIGURE_FORMS
        .par_iter()
        .flat_map_iter(|text| {
            let r = (|| -> Result<Vec<Case>> {
                let f = crate::parse::parse_form(text)?;
                let opts = RenderOptions::default();
                let set = render_curves(&f, &opts)?;
                let again = render_curves(&f, &opts)?;
                let ev = SecondFormEvaluator::new(&f)?;
                let res = set
                    .curves
                    .iter()
                    .map(|c| c.max_residual(&ev))
                    .fold(0.0, f64::max);
                let mut out = vec![
                    Case::exact(
                        "deterministic",
                        true,
                        set.to_svg(opts.stride) == again.to_svg(opts.stride),
                    ),
                    Case::within(
                        "residual",
                        format!("< {CURVE_RESIDUAL_TOLERANCE:e}"),
                        format!("{res:.2e}"),
                        res < CURVE_RESIDUAL_TOLERANCE,
                        CURVE_RESIDUAL_TOLERANCE,
                    ),
                ];
                // the first two curves per zero line are its two rays
                for (i, beta) in set.zero_lines.iter().enumerate() {
                    let (s, c) = beta.sin_cos();
                    let dist = set.curves[2 * i..2 * i + 2]
                        .iter()
                        .flat_map(|cv| cv.points.iter())
                        .map(|&(x, y)| (x * s - y * c).abs())
                        .fold(0.0, f64::max);
                    let len: f64 = set.curves[2 * i..2 * i + 2]
                        .iter()
                        .map(|cv| cv.length())
                        .sum();
                    out.push(Case::within(
                        format!("line{i}"),
                        format!("on line, length >= {}", set.viewport),
                        format!("distance {dist:.2e}, length {len:.3}"),
                        dist < LINE_TOLERANCE && len >= set.viewport,
                        LINE_TOLERANCE,
                    ));
                }
                Ok(out)
            })();
            let prefix = text.replace(' ', "");
            match r {
                Ok(v) => v
                    .into_iter()
                    .map(|mut c| {
                        c.id = format!("{prefix}/{}", c.id);
                        c
                    })
                    .collect(),
                Err(e) => vec![Case::from_result(prefix, Err(e))],
            }
        })
        .collect()
}
