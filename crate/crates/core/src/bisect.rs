//! Bisectors of a quadrilateral, the conic of their midpoints, and pairs of
//! bisectors.
//!
//! A line crosses a pair of lines when it is distinct from both and not
//! parallel to both. It bisects the quadrilateral when the midpoints of its
//! crossings with the opposite-side pairs it crosses all agree.

use std::fmt;

use thiserror::Error;

use crate::field::Scalar;
use crate::form::QuadraticData;
use crate::pencil::Conic;
use crate::plane::{intersect, midpoint, AffineMap, InfPoint, Line, PlanePoint, Point};
use crate::quad::{standard_form, QuadError, Quadrangle, Quadrilateral, StandardForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BisectError {
    #[error("DoesNotCross: the line does not cross the pair")]
    DoesNotCross,
    #[error("NotBisectors: {0} does not bisect the quadrilateral")]
    NotBisectors(String),
    #[error("NotABisector: {0} does not bisect the quadrilateral")]
    NotABisector(String),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

/// An unordered pair of lines, possibly equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinePair {
    lines: [Line; 2],
}

impl LinePair {
    pub fn new(l1: Line, l2: Line) -> Self {
        let lines = if l2 < l1 { [l2, l1] } else { [l1, l2] };
        LinePair { lines }
    }

    pub fn lines(&self) -> &[Line; 2] {
        &self.lines
    }

    pub fn contains(&self, l: &Line) -> bool {
        self.lines.contains(l)
    }

    pub fn is_self_paired(&self) -> bool {
        self.lines[0] == self.lines[1]
    }
}

impl fmt::Display for LinePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}", self.lines[0].render(true), self.lines[1].render(true))
    }
}

/// A bisecting line with its midpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bisector {
    pub line: Line,
    pub midpoint: Point,
}

/// Whether `l` crosses `pair`.
pub fn crosses(l: &Line, pair: &LinePair) -> bool {
    let [l1, l2] = pair.lines();
    l != l1 && l != l2 && !(l.is_parallel(l1) && l.is_parallel(l2))
}

/// The midpoint of the two points where `l` meets `pair`; the point at
/// infinity of `l` when one of them is at infinity.
pub fn mid_cross(l: &Line, pair: &LinePair) -> Result<PlanePoint, BisectError> {
    if !crosses(l, pair) {
        return Err(BisectError::DoesNotCross);
    }
    let [l1, l2] = pair.lines();
    let p1 = intersect(l, l1).expect("distinct");
    let p2 = intersect(l, l2).expect("distinct");
    Ok(match (p1, p2) {
        (PlanePoint::Affine(a), PlanePoint::Affine(b)) => PlanePoint::Affine(midpoint(&a, &b)),
        _ => PlanePoint::AtInfinity(l.infinite_point()),
    })
}

/// The opposite-side pairs `{A, A'}` and `{B, B'}`.
pub fn opposite_side_pairs(q: &Quadrilateral) -> [LinePair; 2] {
    [
        LinePair::new(q.a().clone(), q.a_prime().clone()),
        LinePair::new(q.b().clone(), q.b_prime().clone()),
    ]
}

/// The common midpoint of `l` across the pairs it crosses, if they agree.
/// Straight from the definition, so a point at infinity is possible in
/// principle.
pub fn common_midpoint(pairs: &[LinePair], l: &Line) -> Option<PlanePoint> {
    let mut common: Option<PlanePoint> = None;
    for pair in pairs {
        let Ok(m) = mid_cross(l, pair) else { continue };
        match &common {
            None => common = Some(m),
            Some(c) if *c == m => {}
            Some(_) => return None,
        }
    }
    common
}

/// The midpoint of `l` as a bisector of `q`, if it is one.
pub fn is_bisector(q: &Quadrilateral, l: &Line) -> Option<Point> {
    match common_midpoint(&opposite_side_pairs(q), l)? {
        PlanePoint::Affine(p) => Some(p),
        PlanePoint::AtInfinity(_) => None,
    }
}

pub fn bisector(q: &Quadrilateral, l: &Line) -> Option<Bisector> {
    is_bisector(q, l).map(|midpoint| Bisector { line: l.clone(), midpoint })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BisectorsThrough {
    Empty,
    Unique(Bisector),
    /// Every line through the point bisects, with the point as midpoint.
    AllLinesThrough(Point),
}

/// The bisectors whose midpoint is `m`.
pub fn bisector_through(q: &Quadrilateral, m: &Point) -> BisectorsThrough {
    MidpointSolver::new(q).solve(m)
}

/// Solves for bisectors by midpoint in standard-form coordinates, reusing
/// one reduction across many points.
#[derive(Debug, Clone)]
pub struct MidpointSolver {
    sf: StandardForm,
    back: AffineMap,
    /// The centroid in standard-form coordinates.
    center: Point,
    centroid: Point,
    data: QuadraticData,
}

impl MidpointSolver {
    pub fn new(q: &Quadrilateral) -> Self {
        let sf = standard_form(q);
        let back = sf.map.inverse();
        let center = sf.map.apply_point(q.centroid());
        MidpointSolver { sf, back, center, centroid: q.centroid().clone(), data: QuadraticData::of(q) }
    }

    pub fn standard_form(&self) -> &StandardForm {
        &self.sf
    }

    pub fn solve(&self, m: &Point) -> BisectorsThrough {
        let (h, k) = (&self.center.x, &self.center.y);
        let fm = self.sf.map.apply_point(m);
        let (p, qq) = (&fm.x, &fm.y);
        let mu = &self.sf.mu;
        let std_line = if !fm.is_origin() {
            let two = p.field().from_i64(2);
            let on_locus = qq * (qq - &two * k) - mu * p * (p - &two * h);
            if !on_locus.is_zero() {
                return BisectorsThrough::Empty;
            }
            // qX + pY - 2pq = 0
            Line::new(qq.clone(), -p, -(two * p * qq)).expect("(p, q) != 0")
        } else if !self.center.is_origin() {
            // kY + mu h X = 0
            Line::new(mu * h, -k, p.field().zero()).expect("(h, k) != 0")
        } else {
            return BisectorsThrough::AllLinesThrough(m.clone());
        };
        let line = self.back.apply_line(&std_line);
        BisectorsThrough::Unique(Bisector { line, midpoint: m.clone() })
    }

    /// The partner of a bisector of the solver's quadrilateral.
    pub fn partner(&self, b: &Bisector) -> Line {
        let m = &b.midpoint;
        let antipode = m.reflect_through(&self.centroid);
        if &antipode != m {
            return match self.solve(&antipode) {
                BisectorsThrough::Unique(b) => b.line,
                other => unreachable!("the antipode of a midpoint is a midpoint: {other:?}"),
            };
        }
        // n = M (u, t) with M the Gram matrix; the orthogonal direction is (-n_y, n_x)
        let d = &self.data;
        let (u, t) = (b.line.u(), b.line.t());
        let nx = &d.gamma * u - &d.beta * t;
        let ny = &d.alpha * t - &d.beta * u;
        let dir = InfPoint::new(-ny, nx).expect("nondegenerate form");
        Line::through_with_direction(m, &dir)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocusDegeneracy {
    Nondegenerate,
    /// Union of two lines: the midline of a parallel pair and the line
    /// through the midpoints of its two members.
    LinePair(LinePair),
}

/// The conic traced by the midpoints of the bisectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocusConic {
    pub conic: Conic,
    pub center: Point,
    pub data: QuadraticData,
    /// `Phi` at the chosen diagonal point, relative to the center.
    pub level: Scalar,
    pub degeneracy: LocusDegeneracy,
}

impl LocusConic {
    /// `Phi(X - h, Y - k) - level`.
    pub fn render_centered(&self) -> String {
        let lhs = self.data.render_shifted(&self.center.x, &self.center.y);
        if self.level.is_zero() {
            lhs
        } else if self.level.is_negative() {
            format!("{lhs} + {}", -&self.level)
        } else {
            format!("{lhs} - {}", self.level)
        }
    }

    /// The component lines when degenerate, else the centered equation.
    pub fn render(&self) -> String {
        match &self.degeneracy {
            LocusDegeneracy::Nondegenerate => self.render_centered(),
            LocusDegeneracy::LinePair(p) => p.to_string(),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self.degeneracy, LocusDegeneracy::LinePair(_))
    }
}

/// The conic `Phi(X - h, Y - k) = Phi(a - h, b - k)`, where `(h, k)` is the
/// centroid and `(a, b)` the first affine diagonal point.
pub fn bisector_locus(q: &Quadrilateral) -> LocusConic {
    let anchor = q
        .diagonal_points()
        .into_iter()
        .find_map(|p| p.affine().cloned())
        .expect("at most two diagonal points are at infinity");
    locus_through(q, &anchor)
}

/// The locus conic computed from a chosen point `(a, b)`.
pub fn locus_through(q: &Quadrilateral, anchor: &Point) -> LocusConic {
    let data = QuadraticData::of(q);
    let center = q.centroid().clone();
    let (h, k) = (&center.x, &center.y);
    let level = data.phi(&(&anchor.x - h), &(&anchor.y - k));
    let (al, be, ga) = (&data.alpha, &data.beta, &data.gamma);
    let two = h.field().from_i64(2);
    let coeffs = [
        ga.clone(),
        -(&two * be),
        al.clone(),
        &two * (be * k - ga * h),
        &two * (be * h - al * k),
        data.phi(h, k) - &level,
    ];
    let conic = Conic::new(coeffs).expect("the form is nondegenerate");
    let degeneracy = match q.parallel_pairs().first() {
        None => LocusDegeneracy::Nondegenerate,
        Some([l1, l2]) => {
            let mid = l1.midline(l2).expect("parallel");
            let m1 = line_midpoint(q, l1);
            let m2 = line_midpoint(q, l2);
            let through = Line::through(&m1, &m2).expect("parallel distinct lines have distinct midpoints");
            LocusDegeneracy::LinePair(LinePair::new(mid, through))
        }
    };
    LocusConic { conic, center, data, level, degeneracy }
}

/// Midpoint of a side or diagonal of `q` as a bisector.
fn line_midpoint(q: &Quadrilateral, l: &Line) -> Point {
    is_bisector(q, l).expect("sides and diagonals bisect")
}

/// The six midpoints of vertex pairs, then the three diagonal points, of a
/// quadrangle with no three vertices collinear.
pub fn nine_points(qr: &Quadrangle) -> Result<[PlanePoint; 9], QuadError> {
    qr.check_general_position()?;
    let v = qr.vertices();
    let mids = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)].map(|(i, j)| PlanePoint::Affine(midpoint(&v[i], &v[j])));
    let diag = qr.opposite_side_pairs().map(|[l1, l2]| intersect(&l1, &l2).expect("distinct sides"));
    let [m0, m1, m2, m3, m4, m5] = mids;
    let [d0, d1, d2] = diag;
    Ok([m0, m1, m2, m3, m4, m5, d0, d1, d2])
}

/// The midpoints of the two bisectors average to the centroid.
pub fn q_antipodal(q: &Quadrilateral, b1: &Bisector, b2: &Bisector) -> bool {
    &midpoint(&b1.midpoint, &b2.midpoint) == q.centroid()
}

/// Both lines bisect, and they are antipodal and orthogonal.
pub fn is_q_pair(q: &Quadrilateral, pair: &LinePair) -> Result<bool, BisectError> {
    let [l1, l2] = pair.lines();
    let not = |l: &Line| BisectError::NotBisectors(l.render(false));
    let b1 = bisector(q, l1).ok_or_else(|| not(l1))?;
    let b2 = bisector(q, l2).ok_or_else(|| not(l2))?;
    Ok(q_antipodal(q, &b1, &b2) && QuadraticData::of(q).q_orthogonal(l1, l2))
}

/// The bisector pairing with `l`.
pub fn q_partner(q: &Quadrilateral, l: &Line) -> Result<Line, BisectError> {
    let b = bisector(q, l).ok_or_else(|| BisectError::NotABisector(l.render(false)))?;
    Ok(MidpointSolver::new(q).partner(&b))
}

/// A line of the field that fails to bisect another pair at its midpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldViolation {
    pub line: Line,
    pub pair: LinePair,
    pub expected: Option<Point>,
    pub found: Option<PlanePoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FieldReport {
    pub checks: usize,
    pub violations: Vec<FieldViolation>,
}

impl FieldReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every line of every pair bisects every pair it crosses at
/// its own midpoint as a bisector of `q`.
pub fn bisector_field_check(q: &Quadrilateral, pairs: &[LinePair]) -> FieldReport {
    let mut report = FieldReport::default();
    for own in pairs {
        for l in own.lines() {
            let expected = is_bisector(q, l);
            for pair in pairs {
                let Ok(found) = mid_cross(l, pair) else { continue };
                report.checks += 1;
                if expected.as_ref() != found.affine() {
                    report.violations.push(FieldViolation {
                        line: l.clone(),
                        pair: pair.clone(),
                        expected: expected.clone(),
                        found: Some(found),
                    });
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::form::desargues_involution;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn r(n: i64) -> Scalar {
        Q.from_i64(n)
    }

    fn fr(n: i64, d: i64) -> Scalar {
        Q.ratio(n, d).unwrap()
    }

    fn pt(x: Scalar, y: Scalar) -> Point {
        Point::new(x, y)
    }

    fn line(s: &str) -> Line {
        Line::parse(Q, s).unwrap()
    }

    fn pair(a: &str, b: &str) -> LinePair {
        LinePair::new(line(a), line(b))
    }

    fn e1() -> Quadrilateral {
        Quadrilateral::parse(Q, "Y=0; Y=X+1; X=0; Y=2X-1").unwrap()
    }

    fn e2() -> Quadrilateral {
        Quadrilateral::parse(Q, "Y=0; X=0; Y=1; X=1").unwrap()
    }

    #[test]
    fn crossing_midpoints() {
        assert_eq!(mid_cross(&line("Y=0"), &pair("X=0", "X=2")), Ok(PlanePoint::Affine(pt(r(1), r(0)))));
        assert_eq!(
            mid_cross(&line("Y=0"), &pair("X=0", "Y=1")),
            Ok(PlanePoint::AtInfinity(InfPoint::new(r(1), r(0)).unwrap()))
        );
        assert_eq!(mid_cross(&line("X=0"), &pair("X=0", "X=2")), Err(BisectError::DoesNotCross));
        assert_eq!(mid_cross(&line("X=1"), &pair("X=0", "X=2")), Err(BisectError::DoesNotCross));
    }

    #[test]
    fn bisectors_of_e1() {
        let q = e1();
        assert_eq!(is_bisector(&q, &line("Y=X+1")), Some(pt(fr(-1, 2), fr(1, 2))));
        assert_eq!(is_bisector(&q, &line("X=3")), None);
        assert_eq!(is_bisector(&q, &line("Y=0")), Some(pt(fr(-1, 4), r(0))));
        assert_eq!(is_bisector(&q, &line("Y=-X-1")), Some(pt(fr(-1, 2), fr(-1, 2))));
    }

    #[test]
    fn bisectors_through_points() {
        let q = e1();
        let through = |x: Scalar, y: Scalar| bisector_through(&q, &pt(x, y));
        match through(fr(-1, 2), fr(1, 2)) {
            BisectorsThrough::Unique(b) => assert_eq!(b.line, line("Y=X+1")),
            other => panic!("{other:?}"),
        }
        match through(r(0), r(0)) {
            BisectorsThrough::Unique(b) => assert_eq!(b.line, line("X=0")),
            other => panic!("{other:?}"),
        }
        assert_eq!(through(r(5), r(5)), BisectorsThrough::Empty);
        let half = fr(1, 2);
        assert_eq!(
            bisector_through(&e2(), &pt(half.clone(), half.clone())),
            BisectorsThrough::AllLinesThrough(pt(half.clone(), half))
        );
    }

    #[test]
    fn locus_of_e1() {
        let loc = bisector_locus(&e1());
        assert_eq!(loc.render(), "Y^2 - 2*(X + 1/8)^2 + 1/32");
        assert_eq!(loc.degeneracy, LocusDegeneracy::Nondegenerate);
        assert_eq!(loc.center, pt(fr(-1, 8), r(0)));
        // -2X^2 + Y^2 - X/2, normalized by -1/2
        assert_eq!(loc.conic, Conic::new([r(1), r(0), fr(-1, 2), fr(1, 4), r(0), r(0)]).unwrap());
        assert_eq!(loc.conic.center(), Some(loc.center.clone()));
    }

    #[test]
    fn locus_of_e2_is_two_midlines() {
        let loc = bisector_locus(&e2());
        assert_eq!(loc.render(), "X = 1/2, Y = 1/2");
        assert_eq!(loc.render_centered(), "2*(X - 1/2)*(Y - 1/2)");
        assert_eq!(loc.conic.factor(), Some(pair("X=1/2", "Y=1/2")));
    }

    #[test]
    fn locus_does_not_depend_on_the_diagonal_point() {
        let q = e1();
        let loci: Vec<Conic> = q
            .diagonal_points()
            .iter()
            .filter_map(|p| p.affine())
            .map(|p| locus_through(&q, p).conic)
            .collect();
        assert_eq!(loci.len(), 3);
        assert!(loci.iter().all(|c| c == &loci[0]));
    }

    #[test]
    fn nine_points_lie_on_the_locus() {
        for q in [e1(), e2()] {
            let qr = q.quadrangle().unwrap();
            let loc = bisector_locus(&q);
            let pts = nine_points(&qr).unwrap();
            assert!(pts.iter().all(|p| loc.conic.contains(p)));
            let infinite = pts.iter().filter(|p| p.is_infinite()).count();
            assert_eq!(infinite, if q.is_parallelogram() { 2 } else { 0 });
        }
    }

    #[test]
    fn antipodal_and_pairs() {
        let q = e1();
        let b = bisector(&q, &line("Y=X+1")).unwrap();
        let bp = bisector(&q, &line("Y=2X-1")).unwrap();
        assert_eq!(bp.midpoint, pt(fr(1, 4), fr(-1, 2)));
        assert!(q_antipodal(&q, &b, &bp));
        assert!(!q_antipodal(&q, &b, &b));
        assert_eq!(is_q_pair(&q, &pair("Y=X+1", "Y=2X-1")), Ok(true));
        assert_eq!(is_q_pair(&q, &pair("Y=0", "Y=X+1")), Ok(false));
        assert!(matches!(is_q_pair(&q, &pair("Y=0", "X=3")), Err(BisectError::NotBisectors(_))));
        let sq = e2();
        let m = bisector(&sq, &line("X=1/2")).unwrap();
        assert!(q_antipodal(&sq, &m, &bisector(&sq, &line("Y=1/2")).unwrap()));
        // the vertical direction is null for 2XY
        assert_eq!(is_q_pair(&sq, &pair("X=1/2", "X=1/2")), Ok(true));
    }

    #[test]
    fn partners() {
        let q = e1();
        assert_eq!(q_partner(&q, &line("Y=X+1")), Ok(line("Y=2X-1")));
        assert_eq!(q_partner(&q, &line("Y=0")), Ok(line("X=0")));
        assert_eq!(q_partner(&q, &line("X=0")), Ok(line("Y=0")));
        assert!(matches!(q_partner(&q, &line("X=3")), Err(BisectError::NotABisector(_))));
        let sq = e2();
        assert_eq!(q_partner(&sq, &line("Y=X")), Ok(line("Y=-X+1")));
        assert_eq!(q_partner(&sq, &line("X=1/2")), Ok(line("X=1/2")));
    }

    #[test]
    fn field_check_on_e1() {
        let q = e1();
        let d = q.diagonals();
        let pairs = vec![
            pair("Y=0", "X=0"),
            pair("Y=X+1", "Y=2X-1"),
            LinePair::new(d[0].clone(), d[1].clone()),
        ];
        let report = bisector_field_check(&q, &pairs);
        assert!(report.passed(), "{:?}", report.violations);
        assert!(report.checks > 0);
        let mut bad = pairs.clone();
        bad.push(pair("Y=3X", "Y=X+5"));
        assert!(!bisector_field_check(&q, &bad).passed());
    }

    #[test]
    fn bisectors_give_reflections() {
        let q = e1();
        let qr = q.quadrangle().unwrap();
        // a locus point away from the vertices
        let loc = bisector_locus(&q);
        let p0 = pt(r(0), r(0));
        let m = loc.conic.second_intersection(&p0, &crate::plane::Vector::new(r(1), r(3))).unwrap();
        let BisectorsThrough::Unique(b) = bisector_through(&q, &m) else { panic!() };
        assert!(qr.vertices().iter().all(|v| !b.line.contains(v)));
        let li = desargues_involution(&qr, &b.line).unwrap();
        assert!(li.is_reflection());
        assert!(li.third_pair_conjugate());
    }
}
