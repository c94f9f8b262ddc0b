//! Points, directions, canonical lines and affine maps of the plane.
//!
//! A line `tX - uY + v = 0` is stored with `u = 1` when it is not vertical
//! and with `u = 0, t = 1` when it is. Two lines are the same line exactly
//! when their stored coefficients agree.

use std::fmt;

use thiserror::Error;

use crate::field::{FieldError, FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("DegenerateInput: {0}")]
    DegenerateInput(&'static str),
    #[error("IdenticalLines: the two lines coincide")]
    IdenticalLines,
    #[error("SingularMap: linear part has determinant 0")]
    SingularMap,
    #[error("ParseError: cannot read {0:?}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

fn check_fields(values: &[&Scalar]) -> Result<FieldSpec, GeometryError> {
    let field = values[0].field();
    for v in &values[1..] {
        if v.field() != field {
            return Err(FieldError::FieldMismatch(field, v.field()).into());
        }
    }
    Ok(field)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

/// A free vector, e.g. the difference of two points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    pub x: Scalar,
    pub y: Scalar,
}

impl Vector {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Vector { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn scale(&self, s: &Scalar) -> Vector {
        Vector::new(&self.x * s, &self.y * s)
    }
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        assert_eq!(x.field(), y.field(), "point coordinates from different fields");
        Point { x, y }
    }

    pub fn origin(field: FieldSpec) -> Self {
        Point::new(field.zero(), field.zero())
    }

    pub fn field(&self) -> FieldSpec {
        self.x.field()
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn minus(&self, other: &Point) -> Vector {
        Vector::new(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn plus(&self, v: &Vector) -> Point {
        Point::new(&self.x + &v.x, &self.y + &v.y)
    }

    /// The point reflected through `center`.
    pub fn reflect_through(&self, center: &Point) -> Point {
        let two = self.field().from_i64(2);
        Point::new(&(&two * &center.x) - &self.x, &(&two * &center.y) - &self.y)
    }

    /// Reads `x y`, `x,y` or `(x, y)`.
    pub fn parse(field: FieldSpec, input: &str) -> Result<Point, GeometryError> {
        let trimmed = input.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        match parts.as_slice() {
            [x, y] => Ok(Point::new(field.parse_scalar(x)?, field.parse_scalar(y)?)),
            _ => Err(GeometryError::Parse(input.to_string())),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.x, self.y)
    }
}

pub fn midpoint(p: &Point, q: &Point) -> Point {
    Point::new((&p.x + &q.x).half(), (&p.y + &q.y).half())
}

/// A point `[x : y]` of the projective line, normalized so that `x = 1`
/// when `x != 0` and `y = 1` otherwise. Used both for points at infinity
/// of the plane (directions) and for points of a parameterized line.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InfPoint {
    x: Scalar,
    y: Scalar,
}

impl InfPoint {
    pub fn new(x: Scalar, y: Scalar) -> Result<Self, GeometryError> {
        check_fields(&[&x, &y])?;
        if !x.is_zero() {
            let y = &y / &x;
            Ok(InfPoint { x: x.field().one(), y })
        } else if !y.is_zero() {
            Ok(InfPoint { x, y: y.field().one() })
        } else {
            Err(GeometryError::DegenerateInput("[0:0] is not a projective point"))
        }
    }

    pub fn from_vector(v: &Vector) -> Result<Self, GeometryError> {
        InfPoint::new(v.x.clone(), v.y.clone())
    }

    pub fn x(&self) -> &Scalar {
        &self.x
    }

    pub fn y(&self) -> &Scalar {
        &self.y
    }

    pub fn field(&self) -> FieldSpec {
        self.x.field()
    }

    pub fn to_vector(&self) -> Vector {
        Vector::new(self.x.clone(), self.y.clone())
    }
}

impl fmt::Display for InfPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.x, self.y)
    }
}

/// A point of the projective closure of the plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlanePoint {
    Affine(Point),
    AtInfinity(InfPoint),
}

impl PlanePoint {
    pub fn affine(&self) -> Option<&Point> {
        match self {
            PlanePoint::Affine(p) => Some(p),
            PlanePoint::AtInfinity(_) => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, PlanePoint::AtInfinity(_))
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanePoint::Affine(p) => write!(f, "{p}"),
            PlanePoint::AtInfinity(d) => write!(f, "{d}"),
        }
    }
}

/// The line `tX - uY + v = 0` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Line {
    t: Scalar,
    u: Scalar,
    v: Scalar,
}

impl Line {
    /// Normalizes arbitrary coefficients of `tX - uY + v = 0`.
    pub fn new(t: Scalar, u: Scalar, v: Scalar) -> Result<Self, GeometryError> {
        check_fields(&[&t, &u, &v])?;
        if !u.is_zero() {
            Ok(Line { t: &t / &u, v: &v / &u, u: u.field().one() })
        } else if !t.is_zero() {
            Ok(Line { v: &v / &t, u, t: t.field().one() })
        } else {
            Err(GeometryError::DegenerateInput("line with t = u = 0"))
        }
    }

    /// `Y = mX + b`.
    pub fn with_slope(m: Scalar, b: Scalar) -> Self {
        let one = m.field().one();
        Line::new(m, one, b).expect("u = 1")
    }

    /// `X = c`.
    pub fn vertical(c: Scalar) -> Self {
        let f = c.field();
        Line::new(f.one(), f.zero(), -c).expect("t = 1")
    }

    /// `Y = c`.
    pub fn horizontal(c: Scalar) -> Self {
        Line::with_slope(c.field().zero(), c)
    }

    /// The line through two distinct points.
    pub fn through(p: &Point, q: &Point) -> Result<Self, GeometryError> {
        if p == q {
            return Err(GeometryError::DegenerateInput("line through a single point"));
        }
        let d = q.minus(p);
        let (u, t) = (d.x, d.y);
        let v = -(&(&t * &p.x) - &(&u * &p.y));
        Line::new(t, u, v)
    }

    /// The line through `p` with direction `dir`.
    pub fn through_with_direction(p: &Point, dir: &InfPoint) -> Self {
        let (u, t) = (dir.x().clone(), dir.y().clone());
        let v = -(&(&t * &p.x) - &(&u * &p.y));
        Line::new(t, u, v).expect("direction is nonzero")
    }

    pub fn t(&self) -> &Scalar {
        &self.t
    }

    pub fn u(&self) -> &Scalar {
        &self.u
    }

    pub fn v(&self) -> &Scalar {
        &self.v
    }

    pub fn field(&self) -> FieldSpec {
        self.t.field()
    }

    pub fn is_vertical(&self) -> bool {
        self.u.is_zero()
    }

    pub fn slope(&self) -> Option<&Scalar> {
        (!self.is_vertical()).then_some(&self.t)
    }

    /// `tx - uy + v` at `p`.
    pub fn eval(&self, p: &Point) -> Scalar {
        &(&(&self.t * &p.x) - &(&self.u * &p.y)) + &self.v
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.eval(p).is_zero()
    }

    /// The point at infinity `[u : t]`.
    pub fn infinite_point(&self) -> InfPoint {
        InfPoint { x: self.u.clone(), y: self.t.clone() }
    }

    pub fn direction(&self) -> Vector {
        Vector::new(self.u.clone(), self.t.clone())
    }

    pub fn is_parallel(&self, other: &Line) -> bool {
        self.t == other.t && self.u == other.u
    }

    /// The affine form vanishing on this line whose leading coefficient is
    /// `+1`: `Y - tX - v` for non-vertical lines, `X + v` for vertical ones.
    pub fn signed_form(&self) -> [Scalar; 3] {
        if self.is_vertical() {
            [self.t.clone(), self.field().zero(), self.v.clone()]
        } else {
            [-&self.t, self.field().one(), -&self.v]
        }
    }

    /// Coefficients `(a, b, c)` of `aX + bY + c`, exactly `tX - uY + v`.
    pub fn linear_form(&self) -> [Scalar; 3] {
        [self.t.clone(), -&self.u, self.v.clone()]
    }

    pub fn parallel_through(&self, p: &Point) -> Line {
        Line::through_with_direction(p, &self.infinite_point())
    }

    /// The line half way between two parallel lines.
    pub fn midline(&self, other: &Line) -> Option<Line> {
        self.is_parallel(other).then(|| Line {
            t: self.t.clone(),
            u: self.u.clone(),
            v: (&self.v + &other.v).half(),
        })
    }

    /// Renders as `Y=2X-1` / `X=3`; with `spaced`, as `Y = 2X - 1`.
    pub fn render(&self, spaced: bool) -> String {
        let eq = if spaced { " = " } else { "=" };
        if self.is_vertical() {
            return format!("X{eq}{}", -&self.v);
        }
        let (m, b) = (&self.t, &self.v);
        let mut rhs = String::new();
        if !m.is_zero() {
            if m.is_one() {
                rhs.push('X');
            } else if m.is_negative() && (-m).is_one() {
                rhs.push_str("-X");
            } else {
                rhs.push_str(&format!("{m}X"));
            }
        }
        if rhs.is_empty() {
            rhs = b.to_string();
        } else if !b.is_zero() {
            let (sign, mag) = if b.is_negative() { ('-', -b) } else { ('+', b.clone()) };
            if spaced {
                rhs.push_str(&format!(" {sign} {mag}"));
            } else {
                rhs.push_str(&format!("{sign}{mag}"));
            }
        }
        format!("Y{eq}{rhs}")
    }

    /// Reads `t u v`, `Y=mX+b` or `X=c`.
    pub fn parse(field: FieldSpec, input: &str) -> Result<Line, GeometryError> {
        let bad = || GeometryError::Parse(input.to_string());
        let compact: String = input
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '*')
            .collect::<String>()
            .to_ascii_uppercase();
        let Some((lhs, rhs)) = compact.split_once('=') else {
            let parts: Vec<&str> = input.split_whitespace().collect();
            let [t, u, v] = parts.as_slice() else {
                return Err(bad());
            };
            return Line::new(field.parse_scalar(t)?, field.parse_scalar(u)?, field.parse_scalar(v)?);
        };
        match lhs {
            "X" => Ok(Line::vertical(field.parse_scalar(rhs).map_err(|_| bad())?)),
            "Y" => {
                let (m, b) = parse_affine_in_x(field, rhs).ok_or_else(bad)?;
                Ok(Line::with_slope(m, b))
            }
            _ => Err(bad()),
        }
    }
}

/// Parses `mX + b` (any order, any number of terms) into `(m, b)`.
fn parse_affine_in_x(field: FieldSpec, s: &str) -> Option<(Scalar, Scalar)> {
    if s.is_empty() {
        return None;
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if (c == '+' || c == '-') && i > start {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    let (mut m, mut b) = (field.zero(), field.zero());
    for term in terms {
        let (neg, body) = match term.as_bytes().first()? {
            b'-' => (true, &term[1..]),
            b'+' => (false, &term[1..]),
            _ => (false, term),
        };
        let (coef, is_x) = match body.strip_suffix('X') {
            Some("") => (field.one(), true),
            Some(c) => (field.parse_scalar(c).ok()?, true),
            None => (field.parse_scalar(body).ok()?, false),
        };
        let coef = if neg { -coef } else { coef };
        if is_x {
            m = &m + &coef;
        } else {
            b = &b + &coef;
        }
    }
    Some((m, b))
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// Canonical order: vertical lines first, then by slope, then by offset.
impl PartialOrd for Line {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Line {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.u, &self.t, &self.v).cmp(&(&other.u, &other.t, &other.v))
    }
}

/// The meeting point of two distinct lines, at infinity when they are parallel.
pub fn intersect(l1: &Line, l2: &Line) -> Result<PlanePoint, GeometryError> {
    if l1 == l2 {
        return Err(GeometryError::IdenticalLines);
    }
    // t1 x - u1 y = -v1, t2 x - u2 y = -v2
    let det = &(&l1.u * &l2.t) - &(&l1.t * &l2.u);
    if det.is_zero() {
        return Ok(PlanePoint::AtInfinity(l1.infinite_point()));
    }
    let x = &(&(&l1.v * &l2.u) - &(&l1.u * &l2.v)) / &det;
    let y = &(&(&l2.t * &l1.v) - &(&l1.t * &l2.v)) / &det;
    Ok(PlanePoint::Affine(Point::new(x, y)))
}

/// `x -> Gx + s` with `G` invertible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    linear: [[Scalar; 2]; 2],
    shift: [Scalar; 2],
}

impl AffineMap {
    pub fn new(linear: [[Scalar; 2]; 2], shift: [Scalar; 2]) -> Result<Self, GeometryError> {
        check_fields(&[&linear[0][0], &linear[0][1], &linear[1][0], &linear[1][1], &shift[0], &shift[1]])?;
        let map = AffineMap { linear, shift };
        if map.det().is_zero() {
            return Err(GeometryError::SingularMap);
        }
        Ok(map)
    }

    pub fn linear(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Result<Self, GeometryError> {
        let z = a.field().zero();
        AffineMap::new([[a, b], [c, d]], [z.clone(), z])
    }

    pub fn identity(field: FieldSpec) -> Self {
        let (o, z) = (field.one(), field.zero());
        AffineMap { linear: [[o.clone(), z.clone()], [z.clone(), o]], shift: [z.clone(), z] }
    }

    pub fn translation(dx: Scalar, dy: Scalar) -> Self {
        let field = dx.field();
        let mut m = AffineMap::identity(field);
        m.shift = [dx, dy];
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.linear[0][0].field()
    }

    pub fn matrix(&self) -> &[[Scalar; 2]; 2] {
        &self.linear
    }

    pub fn shift(&self) -> &[Scalar; 2] {
        &self.shift
    }

    pub fn det(&self) -> Scalar {
        let m = &self.linear;
        &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
    }

    pub fn is_identity(&self) -> bool {
        *self == AffineMap::identity(self.field())
    }

    pub fn apply_vector(&self, v: &Vector) -> Vector {
        let m = &self.linear;
        Vector::new(
            &(&m[0][0] * &v.x) + &(&m[0][1] * &v.y),
            &(&m[1][0] * &v.x) + &(&m[1][1] * &v.y),
        )
    }

    pub fn apply_point(&self, p: &Point) -> Point {
        let w = self.apply_vector(&Vector::new(p.x.clone(), p.y.clone()));
        Point::new(&w.x + &self.shift[0], &w.y + &self.shift[1])
    }

    pub fn apply_direction(&self, d: &InfPoint) -> InfPoint {
        InfPoint::from_vector(&self.apply_vector(&d.to_vector())).expect("invertible map")
    }

    pub fn apply_plane_point(&self, p: &PlanePoint) -> PlanePoint {
        match p {
            PlanePoint::Affine(p) => PlanePoint::Affine(self.apply_point(p)),
            PlanePoint::AtInfinity(d) => PlanePoint::AtInfinity(self.apply_direction(d)),
        }
    }

    /// The image line, renormalized.
    pub fn apply_line(&self, l: &Line) -> Line {
        // The image is the zero set of n.G^-1(x - s) + v, with n = (t, -u).
        let inv = self.inverse();
        let g = &inv.linear;
        let (nx, ny) = (l.t.clone(), -&l.u);
        let nx2 = &(&nx * &g[0][0]) + &(&ny * &g[1][0]);
        let ny2 = &(&nx * &g[0][1]) + &(&ny * &g[1][1]);
        let v2 = &(&l.v - &(&nx2 * &self.shift[0])) - &(&ny2 * &self.shift[1]);
        Line::new(nx2, -ny2, v2).expect("invertible map sends lines to lines")
    }

    pub fn inverse(&self) -> AffineMap {
        let det = self.det();
        let m = &self.linear;
        let linear = [
            [&m[1][1] / &det, -(&m[0][1] / &det)],
            [-(&m[1][0] / &det), &m[0][0] / &det],
        ];
        let mut inv = AffineMap { linear, shift: [self.field().zero(), self.field().zero()] };
        let s = inv.apply_vector(&Vector::new(self.shift[0].clone(), self.shift[1].clone()));
        inv.shift = [-s.x, -s.y];
        inv
    }

    /// `other` after `self`.
    pub fn then(&self, other: &AffineMap) -> AffineMap {
        let a = &other.linear;
        let b = &self.linear;
        let entry = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        let linear = [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]];
        let s = other.apply_point(&Point::new(self.shift[0].clone(), self.shift[1].clone()));
        AffineMap { linear, shift: [s.x, s.y] }
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.linear;
        write!(
            f,
            "[[{}, {}], [{}, {}]] + ({}, {})",
            m[0][0], m[0][1], m[1][0], m[1][1], self.shift[0], self.shift[1]
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn s(n: i64) -> Scalar {
        Q.from_i64(n)
    }

    fn r(n: i64, d: i64) -> Scalar {
        Q.ratio(n, d).unwrap()
    }

    fn pt(x: i64, y: i64) -> Point {
        Point::new(s(x), s(y))
    }

    fn line(txt: &str) -> Line {
        Line::parse(Q, txt).unwrap()
    }

    #[test]
    fn lines_from_points() {
        let l = Line::through(&pt(0, 0), &pt(1, 1)).unwrap();
        assert_eq!((l.t(), l.u(), l.v()), (&s(1), &s(1), &s(0)));
        let l = Line::through(&pt(0, 1), &pt(0, -1)).unwrap();
        assert_eq!((l.t(), l.u(), l.v()), (&s(1), &s(0), &s(0)));
        let l = Line::through(&pt(-1, 0), &pt(0, 1)).unwrap();
        assert_eq!((l.t(), l.u(), l.v()), (&s(1), &s(1), &s(1)));
        // substituting both points
        assert!(l.contains(&pt(-1, 0)) && l.contains(&pt(0, 1)));
        assert_eq!(
            Line::through(&pt(2, 2), &pt(2, 2)),
            Err(GeometryError::DegenerateInput("line through a single point"))
        );
    }

    #[test]
    fn intersections() {
        assert_eq!(intersect(&line("Y=0"), &line("X=0")).unwrap(), PlanePoint::Affine(pt(0, 0)));
        // X+1 = 2X-1 gives X = 2, Y = 3
        assert_eq!(intersect(&line("Y=X+1"), &line("Y=2X-1")).unwrap(), PlanePoint::Affine(pt(2, 3)));
        let at_inf = intersect(&line("Y=X"), &line("Y=X+1")).unwrap();
        assert_eq!(at_inf, PlanePoint::AtInfinity(InfPoint::new(s(1), s(1)).unwrap()));
        assert_eq!(intersect(&line("Y=X"), &line("Y=X")), Err(GeometryError::IdenticalLines));
    }

    #[test]
    fn infinite_points() {
        assert_eq!(line("Y=0").infinite_point().to_string(), "[1:0]");
        assert_eq!(line("X=0").infinite_point().to_string(), "[0:1]");
        assert_eq!(line("Y=2X-1").infinite_point().to_string(), "[1:2]");
    }

    #[test]
    fn midpoints() {
        assert_eq!(midpoint(&pt(0, 0), &pt(2, 4)), pt(1, 2));
        assert_eq!(midpoint(&pt(3, -7), &pt(3, -7)), pt(3, -7));
        let f7 = FieldSpec::prime(7).unwrap();
        let p = |x| Point::new(f7.from_i64(x), f7.zero());
        // inverse of 2 mod 7 is 4, and 3 * 4 = 12 = 5
        assert_eq!(midpoint(&p(1), &p(2)), p(5));
    }

    #[test]
    fn maps_act_on_lines() {
        let id = AffineMap::identity(Q);
        assert_eq!(id.apply_point(&pt(3, -2)), pt(3, -2));
        let swap = AffineMap::linear(s(0), s(1), s(1), s(0)).unwrap();
        assert_eq!(swap.apply_line(&line("Y=0")), line("X=0"));
        let stretch = AffineMap::linear(s(2), s(0), s(0), s(1)).unwrap();
        // (0,-1) -> (0,-1) and (1,1) -> (2,1) lie on Y = X - 1
        let image = stretch.apply_line(&line("Y=2X-1"));
        assert_eq!(image, Line::through(&pt(0, -1), &pt(2, 1)).unwrap());
        assert_eq!(image, line("Y=X-1"));
        assert_eq!(AffineMap::linear(s(1), s(2), s(2), s(4)), Err(GeometryError::SingularMap));
    }

    #[test]
    fn rendering() {
        assert_eq!(line("Y=2X-1").to_string(), "Y=2X-1");
        assert_eq!(line("Y = -x + 1").to_string(), "Y=-X+1");
        assert_eq!(line("Y=3").to_string(), "Y=3");
        assert_eq!(line("X=1/2").to_string(), "X=1/2");
        assert_eq!(line("X=1/2").render(true), "X = 1/2");
        assert_eq!(line("Y=1/2X-3/4").render(true), "Y = 1/2X - 3/4");
        assert_eq!(line("1 1 1"), line("Y=X+1"));
        assert_eq!(line("2 0 -1"), line("X=1/2"));
        assert_eq!(line("Y=1+2*X-X"), line("Y=X+1"));
        assert!(Line::parse(Q, "Z=3").is_err());
        assert!(Line::parse(Q, "Y=").is_err());
        assert!(Line::parse(Q, "0 0 1").is_err());
        let f7 = FieldSpec::prime(7).unwrap();
        let l = Line::parse(f7, "Y=2X-1").unwrap();
        assert_eq!(l.to_string(), "Y=2X+6");
        assert_eq!(Line::parse(f7, &l.to_string()).unwrap(), l);
        assert_eq!(Line::parse(f7, "Y=-X").unwrap().to_string(), "Y=6X");
    }

    #[test]
    fn midline_of_parallel_lines() {
        assert_eq!(line("Y=0").midline(&line("Y=1")), Some(line("Y=1/2")));
        assert_eq!(line("Y=0").midline(&line("Y=X")), None);
    }

    #[test]
    fn inverse_and_composition() {
        let f = AffineMap::new([[s(2), s(1)], [s(1), s(1)]], [s(3), s(-4)]).unwrap();
        let p = Point::new(r(1, 3), s(5));
        assert_eq!(f.inverse().apply_point(&f.apply_point(&p)), p);
        assert!(f.then(&f.inverse()).is_identity());
        let g = AffineMap::translation(s(1), s(0));
        assert_eq!(f.then(&g).apply_point(&p), g.apply_point(&f.apply_point(&p)));
    }

    fn rational() -> impl Strategy<Value = Scalar> {
        (-9i64..10, 1i64..5).prop_map(|(n, d)| r(n, d))
    }

    fn point() -> impl Strategy<Value = Point> {
        (rational(), rational()).prop_map(|(x, y)| Point::new(x, y))
    }

    fn any_line() -> impl Strategy<Value = Line> {
        (rational(), rational(), rational())
            .prop_filter_map("t = u = 0", |(t, u, v)| Line::new(t, u, v).ok())
    }

    fn map() -> impl Strategy<Value = AffineMap> {
        (rational(), rational(), rational(), rational(), rational(), rational())
            .prop_filter_map("singular", |(a, b, c, d, e, f)| AffineMap::new([[a, b], [c, d]], [e, f]).ok())
    }

    proptest! {
        #[test]
        fn canonical_form_is_idempotent(l in any_line(), k in rational()) {
            prop_assume!(!k.is_zero());
            let scaled = Line::new(l.t() * &k, l.u() * &k, l.v() * &k).unwrap();
            prop_assert_eq!(&scaled, &l);
            prop_assert_eq!(Line::parse(Q, &l.to_string()).unwrap(), l.clone());
            prop_assert_eq!(Line::parse(Q, &l.render(true)).unwrap(), l);
        }

        #[test]
        fn parallel_iff_same_infinite_point(a in any_line(), b in any_line()) {
            prop_assert_eq!(a.is_parallel(&b), a.infinite_point() == b.infinite_point());
        }

        #[test]
        fn maps_respect_incidence(f in map(), l in any_line(), p in point()) {
            prop_assert_eq!(l.contains(&p), f.apply_line(&l).contains(&f.apply_point(&p)));
        }

        #[test]
        fn line_images_contain_point_images(f in map(), p in point(), q in point()) {
            prop_assume!(p != q);
            let l = Line::through(&p, &q).unwrap();
            let image = f.apply_line(&l);
            prop_assert!(image.contains(&f.apply_point(&p)));
            prop_assert!(image.contains(&f.apply_point(&q)));
        }

        #[test]
        fn midpoints_are_symmetric_and_affine(f in map(), p in point(), q in point()) {
            prop_assert_eq!(midpoint(&p, &q), midpoint(&q, &p));
            prop_assert_eq!(f.apply_point(&midpoint(&p, &q)), midpoint(&f.apply_point(&p), &f.apply_point(&q)));
        }
    }
}
