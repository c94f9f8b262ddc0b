//! Conics, the pencil of a quadrilateral, and degenerations of conics.
//!
//! A degeneration of a conic `f` is a pair of lines whose product is
//! `f + lambda` up to a nonzero scalar, for some `lambda` in the ground field.

use std::fmt;

use thiserror::Error;

use crate::bisect::LinePair;
use crate::field::{FieldSpec, Scalar};
use crate::form::render_terms;
use crate::linalg::{det3, rank};
use crate::plane::{InfPoint, Line, PlanePoint, Point, Vector};
use crate::quad::Quadrilateral;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PencilError {
    #[error("NotQuadratic: the quadratic part of a conic cannot vanish")]
    NotQuadratic,
    #[error("ZeroMember: alpha and beta cannot both be zero")]
    ZeroMember,
}

/// `aX^2 + bXY + cY^2 + dX + eY + f`, scaled so that the first nonzero
/// coefficient is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Conic {
    c: [Scalar; 6],
}

pub const COEFFICIENT_NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f0"];

impl Conic {
    pub fn new(coeffs: [Scalar; 6]) -> Result<Conic, PencilError> {
        let Some(lead) = coeffs[..3].iter().find(|x| !x.is_zero()) else {
            return Err(PencilError::NotQuadratic);
        };
        let inv = lead.inv().expect("nonzero");
        Ok(Conic { c: coeffs.map(|x| &x * &inv) })
    }

    /// The product of the linear forms `tX - uY + v` of two lines.
    pub fn from_lines(l1: &Line, l2: &Line) -> Conic {
        Conic::new(product(l1, l2)).expect("product of two lines is quadratic")
    }

    pub fn coeffs(&self) -> &[Scalar; 6] {
        &self.c
    }

    pub fn field(&self) -> FieldSpec {
        self.c[0].field()
    }

    pub fn eval(&self, p: &Point) -> Scalar {
        let [a, b, c, d, e, f] = &self.c;
        let (x, y) = (&p.x, &p.y);
        a * x * x + b * x * y + c * y * y + d * x + e * y + f
    }

    /// The quadratic part at a direction.
    pub fn eval_leading(&self, v: &Vector) -> Scalar {
        let [a, b, c, ..] = &self.c;
        a * &v.x * &v.x + b * &v.x * &v.y + c * &v.y * &v.y
    }

    /// Incidence in the projective closure.
    pub fn contains(&self, p: &PlanePoint) -> bool {
        match p {
            PlanePoint::Affine(p) => self.eval(p).is_zero(),
            PlanePoint::AtInfinity(d) => self.eval_leading(&d.to_vector()).is_zero(),
        }
    }

    /// `f + lambda`.
    pub fn shifted(&self, lambda: &Scalar) -> Conic {
        let mut c = self.c.clone();
        c[5] = &c[5] + lambda;
        Conic { c }
    }

    /// `b^2 - 4ac`.
    pub fn leading_discriminant(&self) -> Scalar {
        let [a, b, c, ..] = &self.c;
        let four = self.field().from_i64(4);
        b.square() - four * a * c
    }

    /// Determinant of the symmetric matrix `[[2a, b, d], [b, 2c, e], [d, e, 2f]]`.
    pub fn matrix_det(&self) -> Scalar {
        let [a, b, c, d, e, f] = &self.c;
        let two = |x: &Scalar| x + x;
        det3(&[
            [two(a), b.clone(), d.clone()],
            [b.clone(), two(c), e.clone()],
            [d.clone(), e.clone(), two(f)],
        ])
    }

    /// Solution of the gradient system, when unique.
    pub fn center(&self) -> Option<Point> {
        let [a, b, c, d, e, _] = &self.c;
        // 2aX + bY = -d, bX + 2cY = -e
        let det = -self.leading_discriminant();
        if det.is_zero() {
            return None;
        }
        let two = self.field().from_i64(2);
        let x = (b * e - &two * c * d) / &det;
        let y = (b * d - &two * a * e) / &det;
        Some(Point::new(x, y))
    }

    /// Directions of the points at infinity that are defined over the field.
    pub fn infinite_points(&self) -> Vec<InfPoint> {
        let f = self.field();
        let [a, b, c, ..] = &self.c;
        let mut out = Vec::new();
        if a.is_zero() {
            // Y(bX + cY)
            out.push(InfPoint::new(f.one(), f.zero()).unwrap());
            if !b.is_zero() {
                out.push(InfPoint::new(-c, b.clone()).unwrap());
            }
        } else if let Some(s) = self.leading_discriminant().sqrt() {
            // a x^2 + b x + c = 0 for the direction [x:1]
            let two_a = a + a;
            for r in [&s, &-&s] {
                out.push(InfPoint::new((-b + r) / &two_a, f.one()).unwrap());
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Factors into two lines over the field, when possible.
    pub fn factor(&self) -> Option<LinePair> {
        let disc = self.leading_discriminant();
        if !disc.is_zero() {
            let center = self.center().expect("nonzero discriminant");
            if !self.eval(&center).is_zero() {
                return None;
            }
            return factor_leading_at(self, &disc, &center);
        }
        let cyl = self.as_cylinder()?;
        let (z1, z2) = cyl.roots(&self.c[5])?;
        Some(LinePair::new(cyl.level_line(&z1), cyl.level_line(&z2)))
    }

    pub fn classify(&self) -> ConicClass {
        if let Some(pair) = self.factor() {
            return ConicClass::DegeneratePair(pair);
        }
        if self.matrix_det().is_zero() {
            return ConicClass::DegenerateIrreducibleOverK;
        }
        let disc = self.leading_discriminant();
        if disc.is_zero() {
            ConicClass::Parabola
        } else if disc.is_square() {
            ConicClass::Hyperbola
        } else {
            ConicClass::Ellipse
        }
    }

    /// All `lambda` with `f + lambda` a product of two lines over the field.
    pub fn degenerations(&self) -> Degenerations {
        let disc = self.leading_discriminant();
        if !disc.is_zero() {
            let center = self.center().expect("nonzero discriminant");
            let lambda = -self.eval(&center);
            return match factor_leading_at(self, &disc, &center) {
                Some(pair) => Degenerations::Asymptotes { lambda, pair },
                None => Degenerations::AbsentOverField { discriminant: disc },
            };
        }
        match self.as_cylinder() {
            Some(cyl) => Degenerations::ParallelFamily(ParallelFamily { cyl, constant: self.c[5].clone() }),
            None => Degenerations::None,
        }
    }

    /// Coefficients of the restriction to `l` as a polynomial in the line
    /// parameter (`X`, or `Y` for vertical lines), from degree 2 down.
    pub fn restriction(&self, l: &Line) -> [Scalar; 3] {
        let f = self.field();
        let [a, b, c, d, e, c0] = &self.c;
        // the point at parameter s is (x1 s + x0, y1 s + y0)
        let (x1, x0, y1, y0) = if l.is_vertical() {
            (f.zero(), -l.v(), f.one(), f.zero())
        } else {
            (f.one(), f.zero(), l.t().clone(), l.v().clone())
        };
        let s2 = a * &x1 * &x1 + b * &x1 * &y1 + c * &y1 * &y1;
        let s1 = a * &x1 * &x0 * f.from_i64(2) + b * (&x1 * &y0 + &x0 * &y1) + c * &y1 * &y0 * f.from_i64(2) + d * &x1 + e * &y1;
        let s0 = a * &x0 * &x0 + b * &x0 * &y0 + c * &y0 * &y0 + d * &x0 + e * &y0 + c0;
        [s2, s1, s0]
    }

    /// `l` meets the conic at `p` with multiplicity at least two.
    pub fn meets_doubly(&self, l: &Line, p: &Point) -> bool {
        if !l.contains(p) {
            return false;
        }
        let [s2, s1, s0] = self.restriction(l);
        let s = if l.is_vertical() { &p.y } else { &p.x };
        let value = &s2 * s * s + &s1 * s + s0;
        let slope = &s2 * s * self.field().from_i64(2) + s1;
        value.is_zero() && slope.is_zero()
    }

    /// The other point where the line through `p0` (on the conic) with
    /// direction `dir` meets the conic. Absent when that point is at infinity
    /// or the line lies in the conic.
    pub fn second_intersection(&self, p0: &Point, dir: &Vector) -> Option<Point> {
        let [a, b, c, d, e, _] = &self.c;
        let two = self.field().from_i64(2);
        let gx = &two * a * &p0.x + b * &p0.y + d;
        let gy = b * &p0.x + &two * c * &p0.y + e;
        let lead = self.eval_leading(dir);
        if lead.is_zero() {
            return None;
        }
        let s = -(gx * &dir.x + gy * &dir.y) / lead;
        Some(Point::new(&p0.x + &s * &dir.x, &p0.y + &s * &dir.y))
    }

    pub fn render(&self) -> String {
        let names = ["X^2", "X*Y", "Y^2", "X", "Y", ""];
        let terms: Vec<(Scalar, String)> = self.c.iter().cloned().zip(names.iter().map(|s| s.to_string())).collect();
        render_terms(&terms)
    }
}

impl fmt::Display for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn product(l1: &Line, l2: &Line) -> [Scalar; 6] {
    let [a1, b1, c1] = l1.linear_form();
    let [a2, b2, c2] = l2.linear_form();
    [
        &a1 * &a2,
        &a1 * &b2 + &a2 * &b1,
        &b1 * &b2,
        &a1 * &c2 + &a2 * &c1,
        &b1 * &c2 + &b2 * &c1,
        &c1 * &c2,
    ]
}

/// Factors the quadratic part, translated to `center`, into two lines.
fn factor_leading_at(conic: &Conic, disc: &Scalar, center: &Point) -> Option<LinePair> {
    let s = disc.sqrt()?;
    let [a, b, c, ..] = conic.coeffs();
    let f = conic.field();
    let (h, k) = (&center.x, &center.y);
    if a.is_zero() {
        // Y (bX + cY), b != 0
        let l1 = Line::horizontal(k.clone());
        let l2 = Line::new(b.clone(), -c, -(b * h) - c * k).expect("b != 0");
        return Some(LinePair::new(l1, l2));
    }
    // a (X - r1 Y)(X - r2 Y)
    let two_a = a + a;
    let lines = [s.clone(), -&s].map(|root| {
        let r = (-b + root) / &two_a;
        let v = &r * k - h;
        Line::new(f.one(), r, v).expect("t = 1")
    });
    let [l1, l2] = lines;
    Some(LinePair::new(l1, l2))
}

/// A conic of the form `s L^2 + r L + const` for a linear form `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Cylinder {
    /// `L = lx X + ly Y`, with `(lx, ly)` either `(1, m)` or `(0, 1)`.
    lx: Scalar,
    ly: Scalar,
    s: Scalar,
    r: Scalar,
}

impl Conic {
    fn as_cylinder(&self) -> Option<Cylinder> {
        let f = self.field();
        let [a, b, c, d, e, _] = &self.c;
        if !self.leading_discriminant().is_zero() {
            return None;
        }
        if !a.is_zero() {
            let m = b / (a + a);
            (e == &(d * &m)).then(|| Cylinder { lx: f.one(), ly: m, s: a.clone(), r: d.clone() })
        } else {
            d.is_zero().then(|| Cylinder { lx: f.zero(), ly: f.one(), s: c.clone(), r: e.clone() })
        }
    }
}

impl Cylinder {
    /// Roots of `s z^2 + r z + constant`.
    fn roots(&self, constant: &Scalar) -> Option<(Scalar, Scalar)> {
        let four = self.s.field().from_i64(4);
        let disc = self.r.square() - four * &self.s * constant;
        let root = disc.sqrt()?;
        let two_s = &self.s + &self.s;
        Some(((-&self.r + &root) / &two_s, (-&self.r - root) / two_s))
    }

    /// `L = z`.
    fn level_line(&self, z: &Scalar) -> Line {
        Line::new(self.lx.clone(), -&self.ly, -z).expect("L is nonzero")
    }

    fn middle(&self) -> Scalar {
        -&self.r / (&self.s + &self.s)
    }
}

/// Pairs of parallel lines sharing one midline, `L = z0 + w` and `L = z0 - w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelFamily {
    cyl: Cylinder,
    constant: Scalar,
}

impl ParallelFamily {
    pub fn midline(&self) -> Line {
        self.cyl.level_line(&self.cyl.middle())
    }

    pub fn direction(&self) -> InfPoint {
        self.midline().infinite_point()
    }

    /// The pair at offset `w` from the midline, measured in `L`.
    pub fn pair_at(&self, w: &Scalar) -> LinePair {
        let z0 = self.cyl.middle();
        LinePair::new(self.cyl.level_line(&(&z0 + w)), self.cyl.level_line(&(&z0 - w)))
    }

    /// The `lambda` for which `f + lambda` is the pair at offset `w`.
    pub fn lambda_at(&self, w: &Scalar) -> Scalar {
        let z0 = self.cyl.middle();
        &self.cyl.s * (z0.square() - w.square()) - &self.constant
    }

    /// The pair lies in the family.
    pub fn contains(&self, pair: &LinePair) -> bool {
        let [l1, l2] = pair.lines();
        let mid = self.midline();
        l1.is_parallel(&mid) && l2.is_parallel(&mid) && l1.midline(l2).as_ref() == Some(&mid)
    }

    /// The pairs at offsets `w`, skipping offsets that give the same pair.
    pub fn sample(&self, offsets: &[Scalar]) -> Vec<LinePair> {
        let mut out: Vec<LinePair> = Vec::new();
        for w in offsets {
            let p = self.pair_at(w);
            if !out.contains(&p) {
                out.push(p);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Degenerations {
    /// Ellipses over the closure and parabolas.
    None,
    /// The asymptotes exist only over a quadratic extension.
    AbsentOverField { discriminant: Scalar },
    Asymptotes { lambda: Scalar, pair: LinePair },
    ParallelFamily(ParallelFamily),
}

impl Degenerations {
    /// Degenerations defined over the field; families are sampled at `offsets`.
    pub fn pairs(&self, offsets: &[Scalar]) -> Vec<LinePair> {
        match self {
            Degenerations::None | Degenerations::AbsentOverField { .. } => Vec::new(),
            Degenerations::Asymptotes { pair, .. } => vec![pair.clone()],
            Degenerations::ParallelFamily(fam) => fam.sample(offsets),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConicClass {
    Ellipse,
    Parabola,
    Hyperbola,
    DegeneratePair(LinePair),
    DegenerateIrreducibleOverK,
}

impl fmt::Display for ConicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConicClass::Ellipse => f.write_str("ellipse"),
            ConicClass::Parabola => f.write_str("parabola"),
            ConicClass::Hyperbola => f.write_str("hyperbola"),
            ConicClass::DegeneratePair(p) => write!(f, "line pair {p}"),
            ConicClass::DegenerateIrreducibleOverK => f.write_str("degenerate, irreducible over the field"),
        }
    }
}

/// The conics `alpha f1 + beta f2`, where `f1` vanishes on `A, A'` and
/// `f2` on `B, B'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pencil {
    f1: Conic,
    f2: Conic,
}

impl Pencil {
    pub fn of(q: &Quadrilateral) -> Pencil {
        let f1 = Conic::from_lines(q.a(), q.a_prime());
        let f2 = Conic::from_lines(q.b(), q.b_prime());
        debug_assert!(q.vertices().iter().all(|v| f1.eval(v).is_zero() && f2.eval(v).is_zero()));
        Pencil { f1, f2 }
    }

    pub fn generators(&self) -> [&Conic; 2] {
        [&self.f1, &self.f2]
    }

    pub fn member(&self, alpha: &Scalar, beta: &Scalar) -> Result<Conic, PencilError> {
        if alpha.is_zero() && beta.is_zero() {
            return Err(PencilError::ZeroMember);
        }
        let c: Vec<Scalar> = (0..6).map(|i| alpha * &self.f1.c[i] + beta * &self.f2.c[i]).collect();
        Conic::new(c.try_into().expect("six coefficients"))
    }

    /// The product of the pair's linear forms is `alpha f1 + beta f2 + constant`.
    pub fn is_degeneration_of(&self, pair: &LinePair) -> bool {
        let [l1, l2] = pair.lines();
        let target = product(l1, l2);
        let f = self.f1.field();
        let mut constant = vec![f.zero(); 6];
        constant[5] = f.one();
        let rows = vec![self.f1.c.to_vec(), self.f2.c.to_vec(), constant];
        let mut with_target = rows.clone();
        with_target.push(target.to_vec());
        rank(with_target) == rank(rows)
    }
}
