//! SVG figures over the rationals. Coordinates become `f64` only here; the
//! sampled bisectors, midpoints and centers are computed exactly first.

use std::collections::BTreeSet;
use std::fmt::Write;

use bisector_core::bisect::{bisector_locus, Bisector, BisectorsThrough, LocusConic, LocusDegeneracy, MidpointSolver};
use bisector_core::field::{FieldSpec, Scalar};
use bisector_core::form::line_point;
use bisector_core::pencil::{Conic, Pencil};
use bisector_core::plane::{InfPoint, Line, Point, Vector};
use bisector_core::quad::Quadrilateral;

use crate::config::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum View {
    Locus,
    PencilSample,
    BisectorFieldSample,
}

impl View {
    pub fn parse(s: &str) -> Result<View, CliError> {
        match s {
            "locus" => Ok(View::Locus),
            "pencil-sample" => Ok(View::PencilSample),
            "bisector-field-sample" => Ok(View::BisectorFieldSample),
            _ => Err(CliError::Invalid(format!(
                "ParseError: unknown plot view {s:?} (locus, pencil-sample, bisector-field-sample)"
            ))),
        }
    }
}

type Xy = (f64, f64);

fn xy(p: &Point) -> Xy {
    (p.x.to_f64(), p.y.to_f64())
}

struct Frame {
    xmin: f64,
    xmax: f64,
    ymin: f64,
    ymax: f64,
}

impl Frame {
    /// The bounding box of `pts` with a 10% margin on every side.
    fn around(pts: &[Xy]) -> Frame {
        let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(x, y) in pts {
            xmin = xmin.min(x);
            xmax = xmax.max(x);
            ymin = ymin.min(y);
            ymax = ymax.max(y);
        }
        let (w, h) = ((xmax - xmin).max(1.0), (ymax - ymin).max(1.0));
        let (cx, cy) = ((xmin + xmax) / 2.0, (ymin + ymax) / 2.0);
        let (w, h) = (w * 1.2, h * 1.2);
        Frame { xmin: cx - w / 2.0, xmax: cx + w / 2.0, ymin: cy - h / 2.0, ymax: cy + h / 2.0 }
    }

    fn width(&self) -> f64 {
        self.xmax - self.xmin
    }

    fn height(&self) -> f64 {
        self.ymax - self.ymin
    }

    fn diagonal(&self) -> f64 {
        self.width().hypot(self.height())
    }

    fn contains(&self, (x, y): Xy) -> bool {
        let e = 1e-9 * self.diagonal();
        x >= self.xmin - e && x <= self.xmax + e && y >= self.ymin - e && y <= self.ymax + e
    }

    /// The visible segment of `l`.
    fn clip(&self, l: &Line) -> Option<(Xy, Xy)> {
        let (t, u, v) = (l.t().to_f64(), l.u().to_f64(), l.v().to_f64());
        let mut hits: Vec<Xy> = Vec::new();
        if u != 0.0 {
            // y = (t x + v) / u
            for x in [self.xmin, self.xmax] {
                hits.push((x, (t * x + v) / u));
            }
        }
        if t != 0.0 {
            // x = (u y - v) / t
            for y in [self.ymin, self.ymax] {
                hits.push(((u * y - v) / t, y));
            }
        }
        hits.retain(|&p| self.contains(p));
        let first = *hits.first()?;
        let far = hits
            .iter()
            .copied()
            .max_by(|a, b| dist(*a, first).total_cmp(&dist(*b, first)))?;
        (dist(first, far) > 0.0).then_some((first, far))
    }
}

fn dist(a: Xy, b: Xy) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

/// Points of a nondegenerate conic seen from `base` on it, one per
/// direction, split where the curve leaves the frame or jumps.
fn conic_path(c: &Conic, base: &Point, frame: &Frame) -> String {
    let k: Vec<f64> = c.coeffs().iter().map(Scalar::to_f64).collect();
    let (bx, by) = xy(base);
    let gx = 2.0 * k[0] * bx + k[1] * by + k[3];
    let gy = k[1] * bx + 2.0 * k[2] * by + k[4];
    let steps = 1440;
    let mut d = String::new();
    let mut prev: Option<Xy> = None;
    for i in 0..=steps {
        let theta = std::f64::consts::PI * i as f64 / steps as f64;
        let (dx, dy) = (theta.cos(), theta.sin());
        let lead = k[0] * dx * dx + k[1] * dx * dy + k[2] * dy * dy;
        let p = if lead.abs() < 1e-12 {
            None
        } else {
            let s = -(gx * dx + gy * dy) / lead;
            Some((bx + s * dx, by + s * dy)).filter(|&p| frame.contains(p))
        };
        match (p, prev) {
            (Some(p), Some(q)) if dist(p, q) < frame.diagonal() / 8.0 => {
                let _ = write!(d, " L {:.5} {:.5}", p.0, -p.1);
            }
            (Some(p), _) => {
                let _ = write!(d, " M {:.5} {:.5}", p.0, -p.1);
            }
            (None, _) => {}
        }
        prev = p;
    }
    d.trim_start().to_string()
}

fn lines_path(lines: &[&Line], frame: &Frame) -> String {
    lines
        .iter()
        .filter_map(|l| frame.clip(l))
        .map(|(a, b)| format!("M {:.5} {:.5} L {:.5} {:.5}", a.0, -a.1, b.0, -b.1))
        .collect::<Vec<_>>()
        .join(" ")
}

fn curve_path(c: &Conic, base: &Point, frame: &Frame) -> String {
    match c.factor() {
        Some(pair) => {
            let [a, b] = pair.lines();
            lines_path(&[a, b], frame)
        }
        None => conic_path(c, base, frame),
    }
}

fn ratios(f: FieldSpec, list: &[(i64, i64)]) -> Vec<Scalar> {
    list.iter().map(|&(n, d)| f.ratio(n, d).expect("nonzero denominator")).collect()
}

/// Exact locus points spread around the conic.
fn locus_points(q: &Quadrilateral, locus: &LocusConic) -> Vec<Point> {
    let f = q.field();
    let mut out: Vec<Point> = Vec::new();
    match &locus.degeneracy {
        LocusDegeneracy::Nondegenerate => {
            let anchor = q.diagonal_points().iter().find_map(|p| p.affine().cloned()).expect("affine diagonal point");
            let slopes = ratios(f, &[(-3, 1), (-2, 1), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (2, 1), (3, 1), (1, 3), (-1, 3)]);
            let mut dirs: Vec<Vector> = slopes.into_iter().map(|s| Vector::new(f.one(), s)).collect();
            dirs.push(Vector::new(f.zero(), f.one()));
            out.push(anchor.clone());
            out.extend(dirs.iter().filter_map(|d| locus.conic.second_intersection(&anchor, d)));
        }
        LocusDegeneracy::LinePair(pair) => {
            let c = q.centroid();
            for l in pair.lines() {
                let base = if l.is_vertical() { &c.y } else { &c.x };
                for k in -3..=3 {
                    out.push(line_point(l, &(base + &f.ratio(k, 2).expect("2 != 0"))));
                }
            }
        }
    }
    let mut seen = BTreeSet::new();
    out.retain(|p| seen.insert(p.clone()));
    out
}

/// Bisectors through sampled locus points; the star of lines at a
/// parallelogram's center is sampled along a few directions.
fn sample_bisectors(q: &Quadrilateral, locus: &LocusConic) -> Vec<Bisector> {
    let f = q.field();
    let solver = MidpointSolver::new(q);
    let mut out: Vec<Bisector> = Vec::new();
    for m in locus_points(q, locus) {
        match solver.solve(&m) {
            BisectorsThrough::Unique(b) => out.push(b),
            BisectorsThrough::AllLinesThrough(c) => {
                for s in ratios(f, &[(0, 1), (1, 1), (-1, 1), (2, 1), (-2, 1), (1, 3)]) {
                    let d = InfPoint::new(f.one(), s).expect("x = 1");
                    out.push(Bisector { line: Line::through_with_direction(&c, &d), midpoint: c.clone() });
                }
                out.push(Bisector {
                    line: Line::through_with_direction(&c, &InfPoint::new(f.zero(), f.one()).expect("y = 1")),
                    midpoint: c.clone(),
                });
            }
            BisectorsThrough::Empty => {}
        }
    }
    let mut seen = BTreeSet::new();
    out.retain(|b| seen.insert(b.line.clone()));
    out
}

struct Doc {
    frame: Frame,
    body: String,
    unit: f64,
}

impl Doc {
    fn new(frame: Frame) -> Doc {
        let unit = frame.diagonal() / 500.0;
        Doc { frame, body: String::new(), unit }
    }

    fn line(&mut self, l: &Line, class: &str, color: &str, width: f64) {
        if let Some((a, b)) = self.frame.clip(l) {
            let _ = writeln!(
                self.body,
                r#"<line class="{class}" x1="{:.5}" y1="{:.5}" x2="{:.5}" y2="{:.5}" stroke="{color}" stroke-width="{:.5}"/>"#,
                a.0,
                -a.1,
                b.0,
                -b.1,
                width * self.unit
            );
        }
    }

    fn path(&mut self, d: &str, class: &str, color: &str, width: f64) {
        let _ = writeln!(
            self.body,
            r#"<path class="{class}" d="{d}" fill="none" stroke="{color}" stroke-width="{:.5}"/>"#,
            width * self.unit
        );
    }

    fn dot(&mut self, p: &Point, class: &str, color: &str) {
        let (x, y) = xy(p);
        let _ = writeln!(
            self.body,
            r#"<circle class="{class}" cx="{x:.5}" cy="{:.5}" r="{:.5}" fill="{color}" stroke="black" stroke-width="{:.5}"/>"#,
            -y,
            4.0 * self.unit,
            0.8 * self.unit
        );
    }

    fn finish(self, title: &str) -> String {
        let f = &self.frame;
        format!(
            concat!(
                r#"<?xml version="1.0" encoding="UTF-8"?>"#,
                "\n",
                r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.5} {:.5} {:.5} {:.5}" width="640" height="{:.0}">"#,
                "\n<title>{}</title>\n",
                r#"<rect x="{:.5}" y="{:.5}" width="{:.5}" height="{:.5}" fill="white"/>"#,
                "\n{}</svg>\n"
            ),
            f.xmin,
            -f.ymax,
            f.width(),
            f.height(),
            640.0 * f.height() / f.width(),
            title,
            f.xmin,
            -f.ymax,
            f.width(),
            f.height(),
            self.body
        )
    }
}

fn color(i: usize) -> String {
    format!("hsl({}, 70%, 42%)", (i * 67) % 360)
}

pub fn plot(q: &Quadrilateral, view: View) -> Result<String, CliError> {
    if q.field() != FieldSpec::Rationals {
        return Err(CliError::Invalid(format!(
            "PlotField: plots need --field Q; {} has no embedding in the real plane",
            q.field()
        )));
    }
    let locus = bisector_locus(q);
    let bisectors = sample_bisectors(q, &locus);
    let mut focus: Vec<Xy> = q.vertices().iter().map(xy).collect();
    focus.push(xy(q.centroid()));
    focus.extend(q.diagonal_points().iter().filter_map(|p| p.affine()).map(xy));
    focus.extend(bisectors.iter().map(|b| xy(&b.midpoint)));
    let mut doc = Doc::new(Frame::around(&focus));
    let anchor = q.diagonal_points().iter().find_map(|p| p.affine().cloned()).expect("affine diagonal point");
    let locus_d = match &locus.degeneracy {
        LocusDegeneracy::Nondegenerate => conic_path(&locus.conic, &anchor, &doc.frame),
        LocusDegeneracy::LinePair(pair) => {
            let [a, b] = pair.lines();
            lines_path(&[a, b], &doc.frame)
        }
    };
    let title = match view {
        View::Locus => "bisector locus",
        View::PencilSample => "pencil sample",
        View::BisectorFieldSample => "bisector field sample",
    };
    match view {
        View::Locus => {
            doc.path(&locus_d, "locus", "crimson", 2.0);
        }
        View::BisectorFieldSample => {
            let solver = MidpointSolver::new(q);
            let mut drawn = BTreeSet::new();
            let mut pair_index = 0;
            for b in &bisectors {
                if drawn.contains(&b.line) {
                    continue;
                }
                let partner = solver.partner(b);
                let c = color(pair_index);
                pair_index += 1;
                doc.line(&b.line, "bisector", &c, 1.2);
                if partner != b.line {
                    doc.line(&partner, "bisector", &c, 1.2);
                }
                drawn.insert(b.line.clone());
                drawn.insert(partner);
            }
            doc.path(&locus_d, "locus", "crimson", 2.0);
        }
        View::PencilSample => {
            let pencil = Pencil::of(q);
            let f = q.field();
            let base = &q.vertices()[0];
            let members: Vec<Conic> = [(1, 1), (1, -1), (1, 2), (2, 1), (1, -2), (2, -1), (1, 3), (3, 1)]
                .iter()
                .filter_map(|&(a, b)| pencil.member(&f.from_i64(a), &f.from_i64(b)).ok())
                .collect();
            for (i, m) in members.iter().enumerate() {
                let d = curve_path(m, base, &doc.frame);
                doc.path(&d, "member", &color(i), 1.0);
            }
            doc.path(&locus_d, "locus", "crimson", 2.0);
            for m in &members {
                if let Some(c) = m.center() {
                    if doc.frame.contains(xy(&c)) {
                        doc.dot(&c, "center", "gold");
                    }
                }
            }
        }
    }
    for side in q.sides() {
        doc.line(side, "side", "black", 2.0);
    }
    if view != View::PencilSample {
        let mids: BTreeSet<&Point> = bisectors.iter().map(|b| &b.midpoint).collect();
        for m in mids {
            doc.dot(m, "midpoint", "white");
        }
    }
    doc.dot(q.centroid(), "centroid", "black");
    Ok(doc.finish(title))
}
