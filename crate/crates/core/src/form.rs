//! The quadratic form and inner product a quadrilateral induces on directions,
//! and involutions of the projective line.

use std::fmt;

use thiserror::Error;

use crate::field::{FieldSpec, Scalar};
use crate::plane::{intersect, GeometryError, InfPoint, Line, PlanePoint, Point, Vector};
use crate::quad::{Quadrangle, Quadrilateral};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("DegenerateForm: the form has zero discriminant")]
    DegenerateForm,
    #[error("UnderdeterminedPairs: the pairs do not determine a unique involution")]
    UnderdeterminedPairs,
    #[error("SingularInvolution: the only map exchanging the pairs is singular")]
    SingularInvolution,
    #[error("LineThroughVertex: the line passes through a vertex of the quadrangle")]
    LineThroughVertex,
    #[error("CollinearVertices: three quadrangle vertices are collinear")]
    CollinearVertices,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// The coefficients `(alpha, beta, gamma)` of `gamma X^2 - 2 beta XY + alpha Y^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticData {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub gamma: Scalar,
}

impl QuadraticData {
    pub fn new(alpha: Scalar, beta: Scalar, gamma: Scalar) -> Self {
        QuadraticData { alpha, beta, gamma }
    }

    /// Built from the raw canonical `(t, u)` coefficients of the sides.
    pub fn of(q: &Quadrilateral) -> Self {
        let [a, b, ap, bp] = q.sides();
        let (ta, ua) = (a.t(), a.u());
        let (tb, ub) = (b.t(), b.u());
        let (tc, uc) = (ap.t(), ap.u());
        let (td, ud) = (bp.t(), bp.u());
        let alpha = ta * ub * uc * ud - ua * tb * uc * ud + ua * ub * tc * ud - ua * ub * uc * td;
        let beta = ta * ub * tc * ud - ua * tb * uc * td;
        let gamma = ta * tb * tc * ud - ta * tb * uc * td + ta * ub * tc * td - ua * tb * tc * td;
        QuadraticData { alpha, beta, gamma }
    }

    pub fn field(&self) -> FieldSpec {
        self.alpha.field()
    }

    pub fn phi(&self, x: &Scalar, y: &Scalar) -> Scalar {
        &self.gamma * x * x - twice(&(&self.beta * x * y)) + &self.alpha * y * y
    }

    pub fn phi_vec(&self, v: &Vector) -> Scalar {
        self.phi(&v.x, &v.y)
    }

    /// `v^T [[gamma, -beta], [-beta, alpha]] w`.
    pub fn inner(&self, v: &Vector, w: &Vector) -> Scalar {
        &self.gamma * &v.x * &w.x - &self.beta * (&v.x * &w.y + &v.y * &w.x) + &self.alpha * &v.y * &w.y
    }

    /// Orthogonality of the `(u, t)` direction vectors.
    pub fn q_orthogonal(&self, l1: &Line, l2: &Line) -> bool {
        self.inner(&l1.direction(), &l2.direction()).is_zero()
    }

    /// `beta^2 - alpha gamma`.
    pub fn discriminant(&self) -> Scalar {
        self.beta.square() - &self.alpha * &self.gamma
    }

    /// The involution on the line at infinity exchanging `Q`-orthogonal directions.
    pub fn lambda_q(&self) -> Result<Involution, FormError> {
        if self.discriminant().is_zero() {
            return Err(FormError::DegenerateForm);
        }
        Ok(Involution {
            m: [[self.beta.clone(), -&self.alpha], [self.gamma.clone(), -&self.beta]],
        })
    }

    /// Equal up to a nonzero scalar.
    pub fn is_proportional_to(&self, other: &QuadraticData) -> bool {
        let a = [&self.alpha, &self.beta, &self.gamma];
        let b = [&other.alpha, &other.beta, &other.gamma];
        proportional(&a, &b)
    }

    /// Renders `Phi` at `(X - h, Y - k)`, with `Y` terms first.
    pub fn render_shifted(&self, h: &Scalar, k: &Scalar) -> String {
        let xs = shifted_var("X", h);
        let ys = shifted_var("Y", k);
        render_terms(&[
            (self.alpha.clone(), format!("{ys}^2")),
            (-twice(&self.beta), format!("{xs}*{ys}")),
            (self.gamma.clone(), format!("{xs}^2")),
        ])
    }
}

impl fmt::Display for QuadraticData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = self.field().zero();
        f.write_str(&self.render_shifted(&z, &z))
    }
}

fn twice(x: &Scalar) -> Scalar {
    x + x
}

fn shifted_var(var: &str, shift: &Scalar) -> String {
    if shift.is_zero() {
        var.to_string()
    } else if shift.is_negative() {
        format!("({var} + {})", -shift)
    } else {
        format!("({var} - {shift})")
    }
}

/// Joins `coefficient*monomial` terms into a polynomial string. An empty
/// monomial is a constant term; zero terms are skipped.
pub(crate) fn render_terms(terms: &[(Scalar, String)]) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
        let body = if mono.is_empty() {
            mag.to_string()
        } else if mag.is_one() {
            mono.clone()
        } else {
            format!("{mag}*{mono}")
        };
        match (out.is_empty(), neg) {
            (true, false) => out.push_str(&body),
            (true, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (false, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (false, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Two coefficient vectors are nonzero multiples of each other.
pub(crate) fn proportional(a: &[&Scalar], b: &[&Scalar]) -> bool {
    let nonzero = |v: &[&Scalar]| v.iter().any(|x| !x.is_zero());
    if !nonzero(a) || !nonzero(b) {
        return false;
    }
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if !(a[i] * b[j] - a[j] * b[i]).is_zero() {
                return false;
            }
        }
    }
    true
}

/// An involution of the projective line, stored as a trace-zero matrix up to
/// scale. Acts on homogeneous pairs `[x:y]` represented as [`InfPoint`]s.
#[derive(Debug, Clone)]
pub struct Involution {
    m: [[Scalar; 2]; 2],
}

impl Involution {
    /// Accepts a non-scalar matrix whose square is a nonzero scalar.
    pub fn from_matrix(m: [[Scalar; 2]; 2]) -> Result<Self, FormError> {
        let trace = &m[0][0] + &m[1][1];
        let scalar = m[0][1].is_zero() && m[1][0].is_zero() && m[0][0] == m[1][1];
        if !trace.is_zero() || scalar {
            return Err(FormError::UnderdeterminedPairs);
        }
        let inv = Involution { m };
        if inv.det().is_zero() {
            return Err(FormError::SingularInvolution);
        }
        Ok(inv)
    }

    pub fn matrix(&self) -> &[[Scalar; 2]; 2] {
        &self.m
    }

    pub fn det(&self) -> Scalar {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    pub fn apply(&self, p: &InfPoint) -> InfPoint {
        let (x, y) = (p.x(), p.y());
        InfPoint::new(&self.m[0][0] * x + &self.m[0][1] * y, &self.m[1][0] * x + &self.m[1][1] * y)
            .expect("nonsingular")
    }

    /// `p` and `q` are exchanged (or `p = q` is fixed).
    pub fn conjugates(&self, p: &InfPoint, q: &InfPoint) -> bool {
        &self.apply(p) == q
    }

    /// Fixes `[1:0]`, the point at infinity in an affine chart.
    pub fn is_reflection(&self) -> bool {
        self.m[1][0].is_zero()
    }

    /// Fixed points over the ground field.
    pub fn fixed_points(&self) -> Vec<InfPoint> {
        // [x:y] is fixed iff c x^2 - 2a xy - b y^2 = 0
        let [[a, b], [c, _]] = &self.m;
        let two_a = a + a;
        let mut out = Vec::new();
        if c.is_zero() {
            out.push(InfPoint::new(a.field().one(), a.field().zero()).unwrap());
            // then -2a x - b y = 0 with y = 1
            if !a.is_zero() {
                out.push(InfPoint::new(-b / &two_a, a.field().one()).unwrap());
            }
        } else {
            // set y = 1: c x^2 - 2a x - b = 0
            let disc = a.square() + c * b;
            if let Some(r) = disc.sqrt() {
                for s in [r.clone(), -&r] {
                    let x = (a + &s) / c;
                    let p = InfPoint::new(x, a.field().one()).unwrap();
                    if !out.contains(&p) {
                        out.push(p);
                    }
                }
            }
        }
        out.sort();
        out
    }
}

impl PartialEq for Involution {
    fn eq(&self, other: &Self) -> bool {
        let a = [&self.m[0][0], &self.m[0][1], &self.m[1][0], &self.m[1][1]];
        let b = [&other.m[0][0], &other.m[0][1], &other.m[1][0], &other.m[1][1]];
        proportional(&a, &b)
    }
}

impl Eq for Involution {}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.m;
        write!(f, "[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

/// The unique involution exchanging `p1` with `q1` and `p2` with `q2`.
pub fn involution_from_pairs(pair1: (&InfPoint, &InfPoint), pair2: (&InfPoint, &InfPoint)) -> Result<Involution, FormError> {
    // With M = [[a, b], [c, -a]], M p ~ q reads a(p1 q2 + p2 q1) + b p2 q2 - c p1 q1 = 0.
    let row = |(p, q): (&InfPoint, &InfPoint)| {
        [p.x() * q.y() + p.y() * q.x(), p.y() * q.y(), -(p.x() * q.x())]
    };
    let r = row(pair1);
    let s = row(pair2);
    let a = &r[1] * &s[2] - &r[2] * &s[1];
    let b = &r[2] * &s[0] - &r[0] * &s[2];
    let c = &r[0] * &s[1] - &r[1] * &s[0];
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(FormError::UnderdeterminedPairs);
    }
    let na = -&a;
    Involution::from_matrix([[a, b], [c, na]])
}

/// Affine coordinate on a line: `X` for non-vertical lines, `Y` for vertical
/// ones, with the line's point at infinity as `[1:0]`.
pub fn line_parameter(l: &Line, p: &PlanePoint) -> InfPoint {
    let f = l.field();
    match p {
        PlanePoint::AtInfinity(_) => InfPoint::new(f.one(), f.zero()).unwrap(),
        PlanePoint::Affine(pt) => {
            let s = if l.is_vertical() { pt.y.clone() } else { pt.x.clone() };
            InfPoint::new(s, f.one()).unwrap()
        }
    }
}

/// The point of `l` at parameter `s`.
pub fn line_point(l: &Line, s: &Scalar) -> Point {
    if l.is_vertical() {
        Point::new(-l.v(), s.clone())
    } else {
        Point::new(s.clone(), l.t() * s + l.v())
    }
}

/// An involution on a line induced by a quadrangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineInvolution {
    pub line: Line,
    pub involution: Involution,
    /// Where each opposite-side pair of the quadrangle meets the line, as
    /// line parameters.
    pub pairs: [[InfPoint; 2]; 3],
}

impl LineInvolution {
    pub fn is_reflection(&self) -> bool {
        self.involution.is_reflection()
    }

    pub fn third_pair_conjugate(&self) -> bool {
        let [p, q] = &self.pairs[2];
        self.involution.conjugates(p, q)
    }
}

/// The involution on `l` exchanging the points where each pair of opposite
/// sides of `qr` meets `l`. Built from the first two pairs.
pub fn desargues_involution(qr: &Quadrangle, l: &Line) -> Result<LineInvolution, FormError> {
    if qr.vertices().iter().any(|v| l.contains(v)) {
        return Err(FormError::LineThroughVertex);
    }
    if !qr.is_general_position() {
        return Err(FormError::CollinearVertices);
    }
    let pairs = qr.opposite_side_pairs().map(|pair| {
        pair.map(|side| line_parameter(l, &intersect(l, &side).expect("l is not a side")))
    });
    let involution = involution_from_pairs((&pairs[0][0], &pairs[0][1]), (&pairs[1][0], &pairs[1][1]))?;
    let out = LineInvolution { line: l.clone(), involution, pairs };
    debug_assert!(out.third_pair_conjugate());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::AffineMap;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn r(n: i64) -> Scalar {
        Q.from_i64(n)
    }

    fn quad(s: &str) -> Quadrilateral {
        Quadrilateral::parse(Q, s).unwrap()
    }

    fn e1() -> Quadrilateral {
        quad("Y=0; Y=X+1; X=0; Y=2X-1")
    }

    fn e2() -> Quadrilateral {
        quad("Y=0; X=0; Y=1; X=1")
    }

    fn inf(x: i64, y: i64) -> InfPoint {
        InfPoint::new(r(x), r(y)).unwrap()
    }

    fn vec2(x: i64, y: i64) -> Vector {
        Vector::new(r(x), r(y))
    }

    #[test]
    fn data_of_fixtures() {
        assert_eq!(QuadraticData::of(&e1()), QuadraticData::new(r(1), r(0), r(-2)));
        assert_eq!(QuadraticData::of(&e2()), QuadraticData::new(r(0), r(-1), r(0)));
        assert_eq!(QuadraticData::of(&e1()).to_string(), "Y^2 - 2*X^2");
        assert_eq!(QuadraticData::of(&e2()).to_string(), "2*X*Y");
    }

    #[test]
    fn phi_and_inner() {
        let d1 = QuadraticData::of(&e1());
        let d2 = QuadraticData::of(&e2());
        assert_eq!(d1.phi(&r(1), &r(1)), r(-1));
        assert_eq!(d1.phi(&r(0), &r(0)), r(0));
        assert_eq!(d2.phi(&r(1), &r(1)), r(2));
        assert_eq!(d1.inner(&vec2(1, 0), &vec2(0, 1)), r(0));
        assert_eq!(d2.inner(&vec2(1, 0), &vec2(1, 0)), r(0));
        let v = vec2(3, -5);
        assert_eq!(d1.inner(&v, &v), d1.phi_vec(&v));
    }

    #[test]
    fn orthogonality_in_e1() {
        let q = e1();
        let d = QuadraticData::of(&q);
        assert!(d.q_orthogonal(q.a(), q.a_prime()));
        assert!(d.q_orthogonal(q.b(), q.b_prime()));
        assert!(!d.q_orthogonal(q.b(), q.b()));
        assert!(d.q_orthogonal(&q.diagonals()[0], &q.diagonals()[1]));
    }

    #[test]
    fn lambda_of_e1() {
        let d = QuadraticData::of(&e1());
        let lam = d.lambda_q().unwrap();
        assert_eq!(lam.matrix(), &[[r(0), r(-1)], [r(-2), r(0)]]);
        assert_eq!(lam.apply(&inf(1, 0)), inf(0, 1));
        assert_eq!(lam.apply(&inf(1, 1)), inf(1, 2));
        assert!(QuadraticData::new(r(1), r(1), r(1)).lambda_q().is_err());
    }

    #[test]
    fn lambda_fixed_points_are_null_directions() {
        // Y^2 - 2X^2 has no rational null directions; over GF(7), 2 = 3^2 + ... = 4^2
        let d = QuadraticData::of(&e1());
        assert!(d.lambda_q().unwrap().fixed_points().is_empty());
        let d2 = QuadraticData::of(&e2());
        let fixed = d2.lambda_q().unwrap().fixed_points();
        assert_eq!(fixed, vec![inf(0, 1), inf(1, 0)]);
        let g7 = FieldSpec::prime(7).unwrap();
        let d7 = QuadraticData::new(g7.one(), g7.zero(), g7.from_i64(-2));
        let fixed = d7.lambda_q().unwrap().fixed_points();
        assert_eq!(fixed.len(), 2);
        for p in fixed {
            assert!(d7.phi_vec(&p.to_vector()).is_zero());
        }
    }

    #[test]
    fn involution_from_two_pairs() {
        // [x:y] -> [y:-x] swaps [1:0] with [0:1] and [1:1] with [1:-1]
        let m = involution_from_pairs((&inf(1, 0), &inf(0, 1)), (&inf(1, 1), &inf(1, -1))).unwrap();
        assert_eq!(m, Involution::from_matrix([[r(0), r(1)], [r(-1), r(0)]]).unwrap());
        assert_eq!(m.apply(&inf(1, 0)), inf(0, 1));
        assert_eq!(m.apply(&inf(1, -1)), inf(1, 1));
        assert_eq!(
            involution_from_pairs((&inf(1, 0), &inf(0, 1)), (&inf(1, 0), &inf(0, 1))),
            Err(FormError::UnderdeterminedPairs)
        );
        // reversed pair is the same constraint
        assert_eq!(
            involution_from_pairs((&inf(1, 0), &inf(0, 1)), (&inf(0, 1), &inf(1, 0))),
            Err(FormError::UnderdeterminedPairs)
        );
    }

    #[test]
    fn lambda_recovered_from_side_directions() {
        let q = e1();
        let d = QuadraticData::of(&q);
        let m = involution_from_pairs(
            (&q.a().infinite_point(), &q.a_prime().infinite_point()),
            (&q.b().infinite_point(), &q.b_prime().infinite_point()),
        )
        .unwrap();
        assert_eq!(m, d.lambda_q().unwrap());
    }

    #[test]
    fn desargues_on_e1() {
        let qr = e1().quadrangle().unwrap();
        let li = desargues_involution(&qr, &Line::vertical(r(3))).unwrap();
        assert!(li.third_pair_conjugate());
        assert!(!li.is_reflection());
        assert_eq!(desargues_involution(&qr, &Line::horizontal(r(0))), Err(FormError::LineThroughVertex));
        let z = Q.zero();
        let collinear = Quadrangle::new([
            Point::new(z.clone(), z.clone()),
            Point::new(r(1), z.clone()),
            Point::new(r(2), z.clone()),
            Point::new(z.clone(), r(1)),
        ])
        .unwrap();
        assert_eq!(desargues_involution(&collinear, &Line::horizontal(r(5))), Err(FormError::CollinearVertices));
    }

    #[test]
    fn line_parameters_round_trip() {
        let l = Line::with_slope(r(2), r(-1));
        let p = line_point(&l, &r(5));
        assert!(l.contains(&p));
        assert_eq!(line_parameter(&l, &PlanePoint::Affine(p)), InfPoint::new(r(5), r(1)).unwrap());
        let v = Line::vertical(r(4));
        let p = line_point(&v, &r(7));
        assert_eq!(p, Point::new(r(4), r(7)));
    }

    #[test]
    fn render_shifted_locus_form() {
        let d = QuadraticData::of(&e1());
        assert_eq!(d.render_shifted(&Q.ratio(-1, 8).unwrap(), &r(0)), "Y^2 - 2*(X + 1/8)^2");
        let d2 = QuadraticData::of(&e2());
        let half = Q.ratio(1, 2).unwrap();
        assert_eq!(d2.render_shifted(&half, &half), "2*(X - 1/2)*(Y - 1/2)");
    }

    fn small() -> impl Strategy<Value = i64> {
        -6i64..=6
    }

    fn any_quad(field: FieldSpec) -> impl Strategy<Value = Quadrilateral> {
        proptest::collection::vec((small(), small(), small(), any::<bool>()), 4).prop_filter_map("valid", move |raw| {
            let lines: Vec<Line> = raw
                .iter()
                .map(|&(t, u, v, vert)| {
                    if vert {
                        Line::vertical(field.from_i64(t))
                    } else {
                        Line::new(field.from_i64(t), field.from_i64(u.max(1)), field.from_i64(v)).unwrap()
                    }
                })
                .collect();
            Quadrilateral::new(lines[0].clone(), lines[1].clone(), lines[2].clone(), lines[3].clone()).ok()
        })
    }

    fn factor_product(q: &Quadrilateral) -> Scalar {
        let [a, b, ap, bp] = q.sides();
        let c = |l1: &Line, l2: &Line| l1.t() * l2.u() - l2.t() * l1.u();
        c(a, b) * c(b, ap) * c(ap, bp) * c(bp, a)
    }

    proptest! {
        #[test]
        fn discriminant_factors(q in any_quad(Q)) {
            prop_assert_eq!(QuadraticData::of(&q).discriminant(), factor_product(&q));
        }

        #[test]
        fn discriminant_factors_mod_p(q in any_quad(FieldSpec::prime(13).unwrap())) {
            prop_assert_eq!(QuadraticData::of(&q).discriminant(), factor_product(&q));
        }

        #[test]
        fn opposite_sides_and_diagonals_orthogonal(q in any_quad(Q)) {
            let d = QuadraticData::of(&q);
            prop_assert!(d.q_orthogonal(q.a(), q.a_prime()));
            prop_assert!(d.q_orthogonal(q.b(), q.b_prime()));
            prop_assert!(d.q_orthogonal(&q.diagonals()[0], &q.diagonals()[1]));
        }

        #[test]
        fn lambda_squares_to_discriminant(q in any_quad(Q)) {
            let d = QuadraticData::of(&q);
            let lam = d.lambda_q().unwrap();
            let m = lam.matrix();
            let disc = d.discriminant();
            let sq = |i: usize, j: usize| &m[i][0] * &m[0][j] + &m[i][1] * &m[1][j];
            prop_assert_eq!(sq(0, 0), disc.clone());
            prop_assert_eq!(sq(1, 1), disc);
            prop_assert!(sq(0, 1).is_zero() && sq(1, 0).is_zero());
        }

        #[test]
        fn repairings_have_proportional_data(q in any_quad(Q)) {
            if let Some(qr) = q.quadrangle() {
                let d = QuadraticData::of(&q);
                for p in qr.quadrilaterals().into_iter().flatten() {
                    prop_assert!(QuadraticData::of(&p).is_proportional_to(&d));
                }
            }
        }

        #[test]
        fn linear_images_scale_the_form(q in any_quad(Q), g in proptest::collection::vec(small(), 4)) {
            let Ok(f) = AffineMap::linear(r(g[0]), r(g[1]), r(g[2]), r(g[3])) else { return Ok(()); };
            let d = QuadraticData::of(&q);
            let fd = QuadraticData::of(&q.mapped(&f));
            prop_assert!(d.is_proportional_to(&QuadraticData::new(
                fd.phi_vec(&f.apply_vector(&vec2(0, 1))),
                -fd.inner(&f.apply_vector(&vec2(1, 0)), &f.apply_vector(&vec2(0, 1))),
                fd.phi_vec(&f.apply_vector(&vec2(1, 0))),
            )));
        }
    }
}
