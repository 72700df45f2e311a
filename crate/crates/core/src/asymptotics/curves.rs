//! Integration of asymptotic curves and SVG / CSV emission.
//!
//! Each vertex stores the unit field direction there, oriented along the
//! direction of travel. SVG paths are cubic Béziers whose end tangents are
//! these directions, so the drawn curve is tangent to the field at every
//! vertex.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::{Field, SecondFormEvaluator};
use crate::certify::is_hyperbolic;
use crate::error::{Error, Result};
use crate::forms::{BinaryForm, Chart};
use crate::sturm::SturmChain;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveOptions {
    pub step: f64,
    /// Arc length budget in each direction from the seed.
    pub max_len: f64,
    /// Integration stops once `|x|` or `|y|` exceeds this.
    pub viewport: f64,
    /// Integration stops inside this radius around the singular origin.
    pub standoff: f64,
}

impl Default for CurveOptions {
    fn default() -> Self {
        CurveOptions {
            step: 1e-3,
            max_len: 8.0,
            viewport: 2.0,
            standoff: 1e-3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    MaxLength,
    LeftViewport,
    NearOrigin,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePolyline {
    pub points: Vec<(f64, f64)>,
    /// Unit field direction at each point, oriented along the polyline.
    pub tangents: Vec<(f64, f64)>,
    pub field_choice: Field,
    pub seed: (f64, f64),
    /// Why the backward and forward halves stopped.
    pub stops: [StopReason; 2],
}

impl CurvePolyline {
    /// Largest `|II(t)| / |II|` over the vertices, `t` the vertex tangent.
    pub fn max_residual(&self, ev: &SecondFormEvaluator) -> f64 {
        self.points
            .iter()
            .zip(&self.tangents)
            .map(|(&(x, y), &(u, v))| ev.at(x, y).residual(u, v))
            .fold(0.0, f64::max)
    }

    /// Every pair of consecutive tangents makes an angle below `pi/2`.
    pub fn is_lift_coherent(&self) -> bool {
        self.tangents
            .windows(2)
            .all(|w| w[0].0 * w[1].0 + w[0].1 * w[1].1 > 0.0)
    }

    pub fn length(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| (w[1].0 - w[0].0).hypot(w[1].1 - w[0].1))
            .sum()
    }
}

fn oriented(
    ev: &SecondFormEvaluator,
    field: Field,
    p: (f64, f64),
    reference: (f64, f64),
) -> Result<(f64, f64)> {
    let t = ev.directions(p.0, p.1)?.get(field);
    let (s, c) = t.sin_cos();
    Ok(if c * reference.0 + s * reference.1 < 0.0 {
        (-c, -s)
    } else {
        (c, s)
    })
}

type Half = (Vec<(f64, f64)>, Vec<(f64, f64)>, StopReason);

fn integrate_half(
    ev: &SecondFormEvaluator,
    field: Field,
    seed: (f64, f64),
    start: (f64, f64),
    opts: &CurveOptions,
) -> Result<Half> {
    let mut pts = vec![seed];
    let mut tans = vec![start];
    let mut p = seed;
    let mut dir = start;
    let mut len = 0.0;
    let budget = (opts.max_len / opts.step).ceil() as usize + 10_000;
    for _ in 0..budget {
        let r = p.0.hypot(p.1);
        if r <= opts.standoff {
            return Ok((pts, tans, StopReason::NearOrigin));
        }
        if p.0.abs() > opts.viewport || p.1.abs() > opts.viewport {
            return Ok((pts, tans, StopReason::LeftViewport));
        }
        if len >= opts.max_len {
            return Ok((pts, tans, StopReason::MaxLength));
        }
        // stage points stay at distance >= r/2 from the origin
        let h = opts.step.min(0.5 * r);
        let k1 = oriented(ev, field, p, dir)?;
        let k2 = oriented(ev, field, (p.0 + 0.5 * h * k1.0, p.1 + 0.5 * h * k1.1), k1)?;
        let k3 = oriented(ev, field, (p.0 + 0.5 * h * k2.0, p.1 + 0.5 * h * k2.1), k1)?;
        let k4 = oriented(ev, field, (p.0 + h * k3.0, p.1 + h * k3.1), k1)?;
        let next = (
            p.0 + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
            p.1 + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
        );
        if next.0 == 0.0 && next.1 == 0.0 {
            return Ok((pts, tans, StopReason::NearOrigin));
        }
        len += (next.0 - p.0).hypot(next.1 - p.1);
        dir = oriented(ev, field, next, k1)?;
        p = next;
        pts.push(p);
        tans.push(dir);
    }
    Err(Error::RefinementExhausted(format!(
        "curve from {seed:?} did not terminate"
    )))
}

/// Integrates one field through `seed` in both directions.
pub fn integrate_curve_with(
    ev: &SecondFormEvaluator,
    seed: (f64, f64),
    field: Field,
    opts: &CurveOptions,
) -> Result<CurvePolyline> {
    if seed.0 == 0.0 && seed.1 == 0.0 {
        return Err(Error::AtOrigin);
    }
    if !(opts.step > 0.0 && opts.max_len > 0.0 && opts.viewport > 0.0 && opts.standoff > 0.0) {
        return Err(Error::InvalidParameters(
            "curve options must be positive".into(),
        ));
    }
    let t = ev.directions(seed.0, seed.1)?.get(field);
    let d0 = (t.cos(), t.sin());
    let (bp, bt, bstop) = integrate_half(ev, field, seed, (-d0.0, -d0.1), opts)?;
    let (fp, ft, fstop) = integrate_half(ev, field, seed, d0, opts)?;
    let mut points: Vec<_> = bp.into_iter().skip(1).rev().collect();
    let mut tangents: Vec<_> = bt
        .into_iter()
        .skip(1)
        .rev()
        .map(|(u, v)| (-u, -v))
        .collect();
    points.extend(fp);
    tangents.extend(ft);
    Ok(CurvePolyline {
        points,
        tangents,
        field_choice: field,
        seed,
        stops: [bstop, fstop],
    })
}

/// Certifies `f` and integrates one asymptotic curve with the default
/// viewport and standoff.
pub fn integrate_curve(
    f: &BinaryForm,
    seed: (f64, f64),
    field: Field,
    step: f64,
    max_len: f64,
) -> Result<CurvePolyline> {
    if !is_hyperbolic(f)?.is_hyperbolic() {
        return Err(Error::NotHyperbolic);
    }
    let ev = SecondFormEvaluator::new(f)?;
    integrate_curve_with(
        &ev,
        seed,
        field,
        &CurveOptions {
            step,
            max_len,
            ..Default::default()
        },
    )
}

/// Angles in `[0, pi)` of the real lines in `f = 0`, increasing.
pub fn zero_line_angles(f: &BinaryForm) -> Result<Vec<f64>> {
    if f.is_zero() {
        return Err(Error::ZeroForm {
            op: "zero_line_angles",
        });
    }
    let u = f.restrict(Chart::XEqualsOne);
    let mut out: Vec<f64> = SturmChain::new(&u)?
        .roots_f64()
        .into_iter()
        .map(|t| t.atan().rem_euclid(std::f64::consts::PI))
        .collect();
    if num_traits::Zero::is_zero(f.coeff(f.degree())) {
        out.push(std::f64::consts::FRAC_PI_2);
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RenderOptions {
    pub curve: CurveOptions,
    /// Seeds evenly spaced on the circle of radius `viewport / 2`.
    pub ring_seeds: usize,
    /// Keep every `stride`-th vertex (plus the last) in the output.
    pub stride: usize,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            curve: CurveOptions::default(),
            ring_seeds: 12,
            stride: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveSet {
    pub form: String,
    pub viewport: f64,
    pub zero_lines: Vec<f64>,
    pub curves: Vec<CurvePolyline>,
}

/// The field whose direction at `p` is the line through `p` and the origin.
fn radial_field(ev: &SecondFormEvaluator, p: (f64, f64)) -> Result<Field> {
    let d = ev.directions(p.0, p.1)?;
    let angle = p.1.atan2(p.0);
    let e1 = super::line_delta(angle, d.f1).abs();
    let e2 = super::line_delta(angle, d.f2).abs();
    let (field, err) = if e1 <= e2 {
        (Field::F1, e1)
    } else {
        (Field::F2, e2)
    };
    if err > 1e-6 {
        return Err(Error::Internal(format!(
            "zero line at angle {angle} is not asymptotic"
        )));
    }
    Ok(field)
}

/// Curves of both fields from a ring of seeds, plus both rays of every real
/// line of `f = 0`.
pub fn render_curves(f: &BinaryForm, opts: &RenderOptions) -> Result<CurveSet> {
    if !is_hyperbolic(f)?.is_hyperbolic() {
        return Err(Error::NotHyperbolic);
    }
    if opts.stride == 0 {
        return Err(Error::InvalidParameters("stride must be positive".into()));
    }
    let ev = SecondFormEvaluator::new(f)?;
    let r0 = 0.5 * opts.curve.viewport;
    let zero_lines = zero_line_angles(f)?;
    let mut seeds = Vec::new();
    for &beta in &zero_lines {
        for sign in [1.0, -1.0] {
            let p = (sign * r0 * beta.cos(), sign * r0 * beta.sin());
            seeds.push((p, radial_field(&ev, p)?));
        }
    }
    let n = opts.ring_seeds;
    for k in 0..n {
        // half-step offset keeps ring seeds off the coordinate axes
        let phi = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / n as f64;
        let p = (r0 * phi.cos(), r0 * phi.sin());
        seeds.push((p, Field::F1));
        seeds.push((p, Field::F2));
    }
    let curves = seeds
        .par_iter()
        .map(|&(p, field)| integrate_curve_with(&ev, p, field, &opts.curve))
        .collect::<Result<Vec<_>>>()?;
    Ok(CurveSet {
        form: f.to_string(),
        viewport: opts.curve.viewport,
        zero_lines,
        curves,
    })
}

fn kept_indices(len: usize, stride: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..len).step_by(stride.max(1)).collect();
    if len > 0 && idx.last() != Some(&(len - 1)) {
        idx.push(len - 1);
    }
    idx
}

fn color(field: Field) -> &'static str {
    match field {
        Field::F1 => "#1f5fa8",
        Field::F2 => "#c0392b",
    }
}

impl CurveSet {
    /// Deterministic SVG; y grows upward through a flipping transform so the
    /// path coordinates are the integration coordinates.
    pub fn to_svg(&self, stride: usize) -> String {
        let w = self.viewport;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="800" height="800">"#,
            -w,
            -w,
            2.0 * w,
            2.0 * w
        );
        let _ = writeln!(s, "<title>asymptotic curves of {}</title>", self.form);
        let _ = writeln!(
            s,
            r#"<g transform="scale(1,-1)" fill="none" stroke-width="{}">"#,
            w / 400.0
        );
        for (id, c) in self.curves.iter().enumerate() {
            let idx = kept_indices(c.points.len(), stride);
            let mut d = String::new();
            let p0 = c.points[idx[0]];
            let _ = write!(d, "M {} {}", p0.0, p0.1);
            for w2 in idx.windows(2) {
                let (i, j) = (w2[0], w2[1]);
                let (p, q) = (c.points[i], c.points[j]);
                let (tp, tq) = (c.tangents[i], c.tangents[j]);
                let h = (q.0 - p.0).hypot(q.1 - p.1) / 3.0;
                let _ = write!(
                    d,
                    " C {} {} {} {} {} {}",
                    p.0 + h * tp.0,
                    p.1 + h * tp.1,
                    q.0 - h * tq.0,
                    q.1 - h * tq.1,
                    q.0,
                    q.1
                );
            }
            let _ = writeln!(
                s,
                r#"<path data-curve="{id}" data-field="{}" data-seed="{},{}" stroke="{}" d="{d}"/>"#,
                c.field_choice,
                c.seed.0,
                c.seed.1,
                color(c.field_choice)
            );
        }
        s.push_str("</g>\n</svg>\n");
        s
    }

    /// Rows `curve_id, field, x, y` for the kept vertices.
    pub fn to_csv(&self, stride: usize) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Internal(e.to_string());
        w.write_record(["curve_id", "field", "x", "y"])
            .map_err(io)?;
        for (id, c) in self.curves.iter().enumerate() {
            for i in kept_indices(c.points.len(), stride) {
                let (x, y) = c.points[i];
                w.write_record([
                    id.to_string(),
                    c.field_choice.to_string(),
                    x.to_string(),
                    y.to_string(),
                ])
                .map_err(io)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_form;

    fn f(s: &str) -> BinaryForm {
        parse_form(s).unwrap()
    }

    #[test]
    fn zero_line_on_p3_is_integral() {
        // x = 0 is one of the three lines of x(x^2 - y^2) = 0
        let g = f("x^3 - x*y^2");
        let ev = SecondFormEvaluator::new(&g).unwrap();
        let seed = (0.0, 1.0);
        let field = radial_field(&ev, seed).unwrap();
        let c = integrate_curve(&g, seed, field, 1e-3, 8.0).unwrap();
        assert!(c.points.iter().all(|p| p.0.abs() < 1e-12));
        assert_eq!(c.stops, [StopReason::NearOrigin, StopReason::LeftViewport]);
        assert!(c.max_residual(&ev) < 1e-12);
    }

    #[test]
    fn diagonal_of_xy_times_lines() {
        let g = f("x*y*(x^2-y^2)");
        let ev = SecondFormEvaluator::new(&g).unwrap();
        let seed = (0.5, 0.5);
        let c = integrate_curve_with(
            &ev,
            seed,
            radial_field(&ev, seed).unwrap(),
            &CurveOptions::default(),
        )
        .unwrap();
        assert!(c.points.iter().all(|p| (p.0 - p.1).abs() < 1e-12));
        // II vanishes along (1, 1) on the diagonal, by exact evaluation
        let q = super::super::second_fundamental_form(&g, 0.75, 0.75).unwrap();
        assert_eq!(q.eval(1.0, 1.0), 0.0);
    }

    #[test]
    fn generic_seed_invariants() {
        let g = f("x*(x^4+y^4)*(x^2-y^2)*(x^2-4*y^2)");
        let ev = SecondFormEvaluator::new(&g).unwrap();
        for field in [Field::F1, Field::F2] {
            let c = integrate_curve_with(&ev, (0.7, 0.3), field, &CurveOptions::default()).unwrap();
            assert!(c.is_lift_coherent());
            assert!(c.max_residual(&ev) < 1e-9);
            assert!(c.points.len() > 10);
        }
    }

    #[test]
    fn ray_fields_follow_degree_parity() {
        for (text, same) in [
            ("x*y*(x^2-y^2)", true),
            ("x^3 - x*y^2", false),
            ("x*(x^2-y^2)*(x^2-4*y^2)", false),
        ] {
            let g = f(text);
            let ev = SecondFormEvaluator::new(&g).unwrap();
            for beta in zero_line_angles(&g).unwrap() {
                let p = (beta.cos(), beta.sin());
                let a = radial_field(&ev, p).unwrap();
                let b = radial_field(&ev, (-p.0, -p.1)).unwrap();
                assert_eq!(a == b, same, "{text} at {beta}");
            }
        }
    }

    #[test]
    fn origin_seed_rejected() {
        assert_eq!(
            integrate_curve(&f("x*y"), (0.0, 0.0), Field::F1, 1e-3, 1.0),
            Err(Error::AtOrigin)
        );
        assert_eq!(
            integrate_curve(&f("x^2+y^2"), (1.0, 0.0), Field::F1, 1e-3, 1.0),
            Err(Error::NotHyperbolic)
        );
    }

    #[test]
    fn svg_is_deterministic() {
        let g = f("x^3 - x*y^2");
        let opts = RenderOptions {
            ring_seeds: 4,
            ..Default::default()
        };
        let a = render_curves(&g, &opts).unwrap().to_svg(20);
        let b = render_curves(&g, &opts).unwrap().to_svg(20);
        assert_eq!(a, b);
        assert_eq!(a.matches("<path").count(), 6 + 8);
        let csv = render_curves(&g, &opts).unwrap().to_csv(50).unwrap();
        assert!(csv.starts_with("curve_id,field,x,y\n"));
    }
}
