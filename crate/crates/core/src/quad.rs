//! Quadrilaterals, quadrangles and reduction to standard form.
//!
//! A quadrilateral `ABA'B'` is four lines taken in cyclic order, so that
//! `{A, A'}` and `{B, B'}` are the pairs of opposite sides. Its vertices are
//! always listed as `(A.B, B.A', A'.B', B'.A)`.

use std::fmt;

use thiserror::Error;

use crate::field::{FieldError, FieldSpec, Scalar};
use crate::plane::{intersect, midpoint, AffineMap, GeometryError, Line, PlanePoint, Point};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error("DuplicateLine: sides {0} and {1} are the same line")]
    DuplicateLine(&'static str, &'static str),
    #[error("AdjacentParallel: adjacent sides {0} and {1} are parallel")]
    AdjacentParallel(&'static str, &'static str),
    #[error("Concurrent4Lines: all four sides pass through one point")]
    Concurrent4Lines,
    #[error("DuplicateVertex: quadrangle vertices must be distinct")]
    DuplicateVertex,
    #[error("CollinearVertices: three quadrangle vertices are collinear")]
    CollinearVertices,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl From<FieldError> for QuadError {
    fn from(e: FieldError) -> Self {
        QuadError::Geometry(e.into())
    }
}

pub const SIDE_NAMES: [&str; 4] = ["A", "B", "A'", "B'"];

/// A validated quadrilateral together with its derived data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quadrilateral {
    sides: [Line; 4],
    vertices: [Point; 4],
    diagonals: [Line; 2],
    centroid: Point,
    double_vertex: Option<usize>,
}

impl Quadrilateral {
    pub fn new(a: Line, b: Line, a_prime: Line, b_prime: Line) -> Result<Self, QuadError> {
        let sides = [a, b, a_prime, b_prime];
        let field = sides[0].field();
        for s in &sides[1..] {
            if s.field() != field {
                return Err(FieldError::FieldMismatch(field, s.field()).into());
            }
        }
        for i in 0..4 {
            for j in i + 1..4 {
                if sides[i] == sides[j] {
                    return Err(QuadError::DuplicateLine(SIDE_NAMES[i], SIDE_NAMES[j]));
                }
            }
        }
        for i in 0..4 {
            let j = (i + 1) % 4;
            if sides[i].is_parallel(&sides[j]) {
                return Err(QuadError::AdjacentParallel(SIDE_NAMES[i], SIDE_NAMES[j]));
            }
        }
        let vertex = |i: usize| -> Point {
            match intersect(&sides[i], &sides[(i + 1) % 4]) {
                Ok(PlanePoint::Affine(p)) => p,
                _ => unreachable!("adjacent sides meet in an affine point"),
            }
        };
        let vertices = [vertex(0), vertex(1), vertex(2), vertex(3)];
        if sides.iter().all(|s| s.contains(&vertices[0])) {
            return Err(QuadError::Concurrent4Lines);
        }
        let double_vertex = (0..4).find(|&i| vertices[i] == vertices[(i + 1) % 4]);
        // Opposite vertices never coincide, so both diagonals are genuine lines.
        let diagonals = [
            Line::through(&vertices[0], &vertices[2])?,
            Line::through(&vertices[1], &vertices[3])?,
        ];
        let centroid = midpoint(&midpoint(&vertices[0], &vertices[2]), &midpoint(&vertices[1], &vertices[3]));
        let q = Quadrilateral { sides, vertices, diagonals, centroid, double_vertex };
        debug_assert_eq!(q.centroid, midpoint(&q.side_midpoint(0), &q.side_midpoint(2)));
        debug_assert_eq!(q.centroid, midpoint(&q.side_midpoint(1), &q.side_midpoint(3)));
        Ok(q)
    }

    /// Parses four line literals separated by `;`, in the order `A;B;A';B'`.
    pub fn parse(field: FieldSpec, input: &str) -> Result<Self, QuadError> {
        let parts: Vec<&str> = input.split(';').map(str::trim).collect();
        let [a, b, ap, bp] = parts.as_slice() else {
            return Err(GeometryError::Parse(input.to_string()).into());
        };
        Quadrilateral::new(
            Line::parse(field, a)?,
            Line::parse(field, b)?,
            Line::parse(field, ap)?,
            Line::parse(field, bp)?,
        )
    }

    pub fn field(&self) -> FieldSpec {
        self.sides[0].field()
    }

    /// Sides in the order `A, B, A', B'`.
    pub fn sides(&self) -> &[Line; 4] {
        &self.sides
    }

    pub fn a(&self) -> &Line {
        &self.sides[0]
    }

    pub fn b(&self) -> &Line {
        &self.sides[1]
    }

    pub fn a_prime(&self) -> &Line {
        &self.sides[2]
    }

    pub fn b_prime(&self) -> &Line {
        &self.sides[3]
    }

    /// `{A, A'}` and `{B, B'}`.
    pub fn opposite_pairs(&self) -> [[&Line; 2]; 2] {
        [[&self.sides[0], &self.sides[2]], [&self.sides[1], &self.sides[3]]]
    }

    /// `(A.B, B.A', A'.B', B'.A)`; an improper quadrilateral repeats one.
    pub fn vertices(&self) -> &[Point; 4] {
        &self.vertices
    }

    /// Lines through `(A.B, A'.B')` and `(B.A', B'.A)`. For an improper
    /// quadrilateral these are the two opposite sides through the double vertex.
    pub fn diagonals(&self) -> &[Line; 2] {
        &self.diagonals
    }

    pub fn centroid(&self) -> &Point {
        &self.centroid
    }

    pub fn is_proper(&self) -> bool {
        self.double_vertex.is_none()
    }

    /// The vertex shared by three sides, for an improper quadrilateral.
    pub fn double_vertex(&self) -> Option<&Point> {
        self.double_vertex.map(|i| &self.vertices[i])
    }

    /// Midpoint of the two vertices on side `i` (in `A, B, A', B'` order).
    pub fn side_midpoint(&self, i: usize) -> Point {
        let v = &self.vertices;
        match i {
            0 => midpoint(&v[3], &v[0]),
            1 => midpoint(&v[0], &v[1]),
            2 => midpoint(&v[1], &v[2]),
            3 => midpoint(&v[2], &v[3]),
            _ => panic!("side index out of range"),
        }
    }

    /// Midpoints of the two diagonal segments.
    pub fn diagonal_midpoints(&self) -> [Point; 2] {
        let v = &self.vertices;
        [midpoint(&v[0], &v[2]), midpoint(&v[1], &v[3])]
    }

    /// `A.A'`, `B.B'` and the meeting point of the diagonals, in that order.
    /// Coincidences (improper quadrilaterals) are reported as repeats.
    pub fn diagonal_points(&self) -> [PlanePoint; 3] {
        let meet = |l1: &Line, l2: &Line| intersect(l1, l2).expect("distinct lines");
        [
            meet(&self.sides[0], &self.sides[2]),
            meet(&self.sides[1], &self.sides[3]),
            meet(&self.diagonals[0], &self.diagonals[1]),
        ]
    }

    /// Both pairs of opposite sides parallel.
    pub fn is_parallelogram(&self) -> bool {
        self.sides[0].is_parallel(&self.sides[2]) && self.sides[1].is_parallel(&self.sides[3])
    }

    /// The vertex set is the vertex set of some parallelogram: one of the
    /// three ways of splitting it into two pairs has a common midpoint.
    pub fn vertices_form_parallelogram(&self) -> bool {
        if !self.is_proper() {
            return false;
        }
        let v = &self.vertices;
        [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)]
            .iter()
            .any(|&(a, b, c, d)| midpoint(&v[a], &v[b]) == midpoint(&v[c], &v[d]))
    }

    /// The pairs of parallel lines among the opposite sides and diagonals.
    pub fn parallel_pairs(&self) -> Vec<[&Line; 2]> {
        let s = &self.sides;
        let d = &self.diagonals;
        let mut out = Vec::new();
        for pair in [[&s[0], &s[2]], [&s[1], &s[3]], [&d[0], &d[1]]] {
            if pair[0].is_parallel(pair[1]) {
                out.push(pair);
            }
        }
        out
    }

    /// The quadrangle of the four vertices, when they are distinct.
    pub fn quadrangle(&self) -> Option<Quadrangle> {
        Quadrangle::new(self.vertices.clone()).ok()
    }

    /// The same quadrilateral read as `BA'B'A`.
    pub fn rotated(&self) -> Quadrilateral {
        let s = &self.sides;
        Quadrilateral::new(s[1].clone(), s[2].clone(), s[3].clone(), s[0].clone())
            .expect("relabeling preserves validity")
    }

    /// The image under an affine map.
    pub fn mapped(&self, f: &AffineMap) -> Quadrilateral {
        let [a, b, ap, bp] = self.sides.each_ref().map(|l| f.apply_line(l));
        Quadrilateral::new(a, b, ap, bp).expect("affine maps preserve validity")
    }

    /// `A` is `Y = 0` and `A'` is `X = 0`.
    pub fn is_standard_form(&self) -> bool {
        let f = self.field();
        self.sides[0] == Line::horizontal(f.zero()) && self.sides[2] == Line::vertical(f.zero())
    }
}

/// Four distinct points. Collinear triples are allowed here and surface as
/// invalid pairings in [`Quadrangle::quadrilaterals`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quadrangle {
    vertices: [Point; 4],
}

impl Quadrangle {
    pub fn new(vertices: [Point; 4]) -> Result<Self, QuadError> {
        let field = vertices[0].field();
        for p in &vertices[1..] {
            if p.field() != field {
                return Err(FieldError::FieldMismatch(field, p.field()).into());
            }
        }
        for i in 0..4 {
            for j in i + 1..4 {
                if vertices[i] == vertices[j] {
                    return Err(QuadError::DuplicateVertex);
                }
            }
        }
        Ok(Quadrangle { vertices })
    }

    pub fn vertices(&self) -> &[Point; 4] {
        &self.vertices
    }

    pub fn field(&self) -> FieldSpec {
        self.vertices[0].field()
    }

    /// No three vertices on a line.
    pub fn is_general_position(&self) -> bool {
        let v = &self.vertices;
        [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)].iter().all(|&(a, b, c)| {
            !Line::through(&v[a], &v[b]).expect("distinct").contains(&v[c])
        })
    }

    pub fn check_general_position(&self) -> Result<(), QuadError> {
        if self.is_general_position() {
            Ok(())
        } else {
            Err(QuadError::CollinearVertices)
        }
    }

    /// The three pairs of opposite sides `{P0P1, P2P3}`, `{P0P2, P1P3}`, `{P0P3, P1P2}`.
    pub fn opposite_side_pairs(&self) -> [[Line; 2]; 3] {
        let v = &self.vertices;
        let l = |i: usize, j: usize| Line::through(&v[i], &v[j]).expect("distinct vertices");
        [[l(0, 1), l(2, 3)], [l(0, 2), l(1, 3)], [l(0, 3), l(1, 2)]]
    }

    /// The lines through pairs of vertices, in the order of
    /// [`Quadrangle::opposite_side_pairs`], flattened.
    pub fn side_lines(&self) -> Vec<Line> {
        self.opposite_side_pairs().into_iter().flatten().collect()
    }

    pub fn centroid(&self) -> Point {
        let v = &self.vertices;
        midpoint(&midpoint(&v[0], &v[2]), &midpoint(&v[1], &v[3]))
    }

    /// The three side pairings, for the vertex cycles `(0,1,2,3)`,
    /// `(0,1,3,2)` and `(0,2,1,3)`. Each is validated independently.
    pub fn quadrilaterals(&self) -> [Result<Quadrilateral, QuadError>; 3] {
        [[0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3]].map(|cycle| self.pairing(cycle))
    }

    /// The quadrilateral with vertex sequence `cycle`, labeled so that its
    /// vertex list is `cycle` itself.
    fn pairing(&self, [a, b, c, d]: [usize; 4]) -> Result<Quadrilateral, QuadError> {
        let v = &self.vertices;
        let l = |i: usize, j: usize| Line::through(&v[i], &v[j]);
        Quadrilateral::new(l(d, a)?, l(a, b)?, l(b, c)?, l(c, d)?)
    }
}

impl fmt::Display for Quadrilateral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, ap, bp] = self.sides().clone().map(|l| l.render(false));
        write!(f, "{a}; {b}; {ap}; {bp}")
    }
}

/// A quadrilateral carried to standard form by an explicit affine map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardForm {
    /// Sends the original plane to the standard-form plane.
    pub map: AffineMap,
    /// The image quadrilateral; `A` is `Y = 0` and `A'` is `X = 0`.
    pub quad: Quadrilateral,
    /// Product of the slopes of the image's `B` and `B'`.
    pub mu: Scalar,
}

/// Reduces `q` to standard form.
///
/// Uses `{A, A'}` when they are not parallel, otherwise `{B, B'}` (reading
/// the quadrilateral as `BA'B'A`), otherwise the first non-parallelogram
/// pairing of the vertex quadrangle. The map is
/// `x -> (form_A'(x), form_A(x))` with the signed forms of
/// [`Line::signed_form`].
pub fn standard_form(q: &Quadrilateral) -> StandardForm {
    let base = if !q.a().is_parallel(q.a_prime()) {
        q.clone()
    } else if !q.b().is_parallel(q.b_prime()) {
        q.rotated()
    } else {
        let quadrangle = q.quadrangle().expect("a parallelogram has four distinct vertices");
        quadrangle
            .quadrilaterals()
            .into_iter()
            .flatten()
            .find(|p| !p.is_parallelogram())
            .expect("a parallelogram's diagonals are not parallel")
    };
    let base = if base.a().is_parallel(base.a_prime()) { base.rotated() } else { base };
    let [a1, b1, c1] = base.a_prime().signed_form();
    let [a2, b2, c2] = base.a().signed_form();
    let map = AffineMap::new([[a1, b1], [a2, b2]], [c1, c2]).expect("non-parallel sides give an invertible map");
    let image = base.mapped(&map);
    debug_assert!(image.is_standard_form());
    let mu = image.b().t() * image.b_prime().t();
    StandardForm { map, quad: image, mu }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn r(n: i64, d: i64) -> Scalar {
        Q.ratio(n, d).unwrap()
    }

    fn pt(x: Scalar, y: Scalar) -> Point {
        Point::new(x, y)
    }

    fn quad(s: &str) -> Result<Quadrilateral, QuadError> {
        Quadrilateral::parse(Q, s)
    }

    fn e1() -> Quadrilateral {
        quad("Y=0; Y=X+1; X=0; Y=2X-1").unwrap()
    }

    fn e2() -> Quadrilateral {
        quad("Y=0; X=0; Y=1; X=1").unwrap()
    }

    #[test]
    fn e1_vertices() {
        let q = e1();
        assert!(q.is_proper());
        let expected = [
            pt(r(-1, 1), r(0, 1)),
            pt(r(0, 1), r(1, 1)),
            pt(r(0, 1), r(-1, 1)),
            pt(r(1, 2), r(0, 1)),
        ];
        assert_eq!(q.vertices(), &expected);
    }

    #[test]
    fn validation_errors() {
        assert_eq!(quad("Y=0; Y=1; X=0; Y=X").unwrap_err(), QuadError::AdjacentParallel("A", "B"));
        assert_eq!(quad("Y=0; Y=X; Y=2X; X=0").unwrap_err(), QuadError::Concurrent4Lines);
        assert_eq!(quad("Y=0; X=0; Y=0; Y=X+1").unwrap_err(), QuadError::DuplicateLine("A", "A'"));
        assert!(matches!(quad("Y=0; X=0; Y=1"), Err(QuadError::Geometry(_))));
    }

    #[test]
    fn centroids() {
        // mean of (-1,0), (0,1), (0,-1), (1/2,0)
        assert_eq!(e1().centroid(), &pt(r(-1, 8), r(0, 1)));
        assert_eq!(e2().centroid(), &pt(r(1, 2), r(1, 2)));
        let shifted = e1().mapped(&AffineMap::translation(r(1, 1), r(0, 1)));
        assert_eq!(shifted.centroid(), &pt(r(7, 8), r(0, 1)));
    }

    #[test]
    fn diagonals_and_diagonal_points() {
        let q = e1();
        let parse = |s| Line::parse(Q, s).unwrap();
        // through (-1,0),(0,-1) and through (0,1),(1/2,0)
        assert_eq!(q.diagonals(), &[parse("Y=-X-1"), parse("Y=-2X+1")]);
        // -X-1 = -2X+1 at X = 2
        assert_eq!(
            q.diagonal_points(),
            [
                PlanePoint::Affine(pt(r(0, 1), r(0, 1))),
                PlanePoint::Affine(pt(r(2, 1), r(3, 1))),
                PlanePoint::Affine(pt(r(2, 1), r(-3, 1))),
            ]
        );
        let sq = e2();
        assert_eq!(sq.diagonals(), &[parse("Y=X"), parse("Y=1-X")]);
        let dp = sq.diagonal_points();
        assert_eq!(dp[0].to_string(), "[1:0]");
        assert_eq!(dp[1].to_string(), "[0:1]");
        assert_eq!(dp[2], PlanePoint::Affine(pt(r(1, 2), r(1, 2))));
        assert_eq!(dp.iter().filter(|p| p.is_infinite()).count(), 2);
    }

    #[test]
    fn improper_quadrilateral() {
        // A, B, A' all pass through the origin
        let q = quad("Y=0; Y=X; X=0; Y=-X+1").unwrap();
        assert!(!q.is_proper());
        assert_eq!(q.double_vertex(), Some(&Point::origin(Q)));
        let parse = |s| Line::parse(Q, s).unwrap();
        assert_eq!(q.diagonals(), &[parse("X=0"), parse("Y=0")]);
        assert!(q.quadrangle().is_none());
        assert!(!q.vertices_form_parallelogram());
    }

    #[test]
    fn requadrilate_contains_original() {
        let q = e1();
        let all = q.quadrangle().unwrap().quadrilaterals();
        assert_eq!(all[0].as_ref().unwrap(), &q);
        assert!(all.iter().all(|p| p.is_ok()));
        // square: the other two pairings use the diagonals as an opposite pair
        let sq = e2();
        let all = sq.quadrangle().unwrap().quadrilaterals();
        let diag: Vec<&Line> = sq.diagonals().iter().collect();
        for p in all.iter().flatten().filter(|p| !p.is_parallelogram()) {
            let pairs = p.opposite_pairs();
            assert!(pairs.iter().any(|pair| diag.contains(&pair[0]) && diag.contains(&pair[1])));
        }
        assert_eq!(all.iter().flatten().filter(|p| p.is_parallelogram()).count(), 1);
    }

    #[test]
    fn collinear_quadrangle_pairings_are_flagged() {
        let z = Q.zero();
        let qr = Quadrangle::new([
            pt(z.clone(), z.clone()),
            pt(r(1, 1), z.clone()),
            pt(r(2, 1), z.clone()),
            pt(z.clone(), r(1, 1)),
        ])
        .unwrap();
        assert!(!qr.is_general_position());
        assert!(qr.quadrilaterals().iter().all(|p| matches!(p, Err(QuadError::DuplicateLine(..)))));
        assert_eq!(
            Quadrangle::new([pt(z.clone(), z.clone()), pt(z.clone(), z.clone()), pt(r(1, 1), z.clone()), pt(z.clone(), r(1, 1))]),
            Err(QuadError::DuplicateVertex)
        );
    }

    #[test]
    fn standard_form_of_e1_is_identity() {
        let sf = standard_form(&e1());
        assert!(sf.map.is_identity());
        assert_eq!(sf.quad, e1());
        assert_eq!(sf.mu, r(2, 1));
    }

    #[test]
    fn standard_form_of_translated_e1() {
        let shifted = e1().mapped(&AffineMap::translation(r(1, 1), r(0, 1)));
        let sf = standard_form(&shifted);
        assert_eq!(sf.map, AffineMap::translation(r(-1, 1), r(0, 1)));
        assert_eq!(sf.mu, r(2, 1));
        assert!(sf.quad.is_standard_form());
    }

    #[test]
    fn standard_form_of_square_uses_diagonals() {
        let sq = e2();
        let sf = standard_form(&sq);
        let parse = |s| Line::parse(Q, s).unwrap();
        // the diagonals Y=X and Y=1-X go to the axes
        let inv = sf.map.inverse();
        assert_eq!(inv.apply_line(sf.quad.a()), parse("Y=X"));
        assert_eq!(inv.apply_line(sf.quad.a_prime()), parse("Y=1-X"));
        assert!(sf.quad.is_standard_form());
        assert!(!sf.mu.is_zero());
        // centroid goes to the origin
        assert!(sf.map.apply_point(sq.centroid()).is_origin());
    }

    #[test]
    fn standard_form_prefers_b_pair_when_a_pair_is_parallel() {
        let q = quad("Y=0; X=0; Y=1; Y=X+3").unwrap();
        let sf = standard_form(&q);
        let inv = sf.map.inverse();
        assert_eq!(&inv.apply_line(sf.quad.a()), q.b());
        assert_eq!(&inv.apply_line(sf.quad.a_prime()), q.b_prime());
        assert!(sf.quad.is_standard_form());
    }
}
