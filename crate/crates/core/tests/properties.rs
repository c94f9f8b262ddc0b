use proptest::prelude::*;

use bisector_core::bisect::{
    bisector_locus, bisector_through, is_q_pair, locus_through, nine_points, q_partner, BisectorsThrough, LinePair,
};
use bisector_core::field::FieldSpec;
use bisector_core::oracle::{brute_bisector, Verdict};
use bisector_core::pencil::Pencil;
use bisector_core::plane::{Line, Point, Vector};
use bisector_core::quad::Quadrilateral;

const Q: FieldSpec = FieldSpec::Rationals;

fn quad() -> impl Strategy<Value = Quadrilateral> {
    proptest::collection::vec((-5i64..=5, -5i64..=5, 0u8..8), 4).prop_filter_map("valid quadrilateral", |raw| {
        let lines: Vec<Line> = raw
            .iter()
            .map(|&(m, b, kind)| if kind == 0 { Line::vertical(Q.from_i64(b)) } else { Line::with_slope(Q.from_i64(m), Q.from_i64(b)) })
            .collect();
        Quadrilateral::new(lines[0].clone(), lines[1].clone(), lines[2].clone(), lines[3].clone()).ok()
    })
}

fn anchor(q: &Quadrilateral) -> Point {
    q.diagonal_points().iter().find_map(|p| p.affine().cloned()).unwrap()
}

/// A point of the locus other than the anchor, reached along `(1, s)`.
fn locus_point(q: &Quadrilateral, s: i64) -> Option<Point> {
    bisector_locus(q).conic.second_intersection(&anchor(q), &Vector::new(Q.one(), Q.from_i64(s)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn formula_bisectors_satisfy_the_definition(q in quad(), s in -4i64..=4) {
        if let Some(m) = locus_point(&q, s) {
            match bisector_through(&q, &m) {
                BisectorsThrough::Unique(b) => prop_assert_eq!(brute_bisector(&q, &b.line), Verdict::Midpoint(m)),
                BisectorsThrough::AllLinesThrough(c) => prop_assert_eq!(&c, q.centroid()),
                BisectorsThrough::Empty => prop_assert!(false, "locus point {} has no bisector", m),
            }
        }
    }

    #[test]
    fn partners_are_involutive_q_pairs(q in quad(), s in -4i64..=4) {
        let Some(m) = locus_point(&q, s) else { return Ok(()) };
        let BisectorsThrough::Unique(b) = bisector_through(&q, &m) else { return Ok(()) };
        let p = q_partner(&q, &b.line).unwrap();
        prop_assert_eq!(q_partner(&q, &p).unwrap(), b.line.clone());
        let pair = LinePair::new(b.line, p);
        prop_assert_eq!(is_q_pair(&q, &pair), Ok(true));
        prop_assert!(Pencil::of(&q).is_degeneration_of(&pair));
    }

    #[test]
    fn locus_is_independent_of_the_diagonal_point(q in quad()) {
        let base = bisector_locus(&q).conic;
        for p in q.diagonal_points().iter().filter_map(|p| p.affine()) {
            prop_assert_eq!(&locus_through(&q, p).conic, &base);
        }
    }

    #[test]
    fn nine_points_lie_on_the_locus(q in quad()) {
        if let Some(qr) = q.quadrangle() {
            let conic = bisector_locus(&q).conic;
            for p in nine_points(&qr).unwrap() {
                prop_assert!(conic.contains(&p), "{}", p);
            }
        }
    }

    #[test]
    fn pencil_centers_lie_on_the_locus(q in quad(), a in -3i64..=3, b in -3i64..=3) {
        prop_assume!(a != 0 || b != 0);
        let member = Pencil::of(&q).member(&Q.from_i64(a), &Q.from_i64(b)).unwrap();
        if let Some(c) = member.center() {
            prop_assert!(bisector_locus(&q).conic.eval(&c).is_zero());
        }
    }

    #[test]
    fn member_degenerations_are_q_pairs(q in quad(), a in -3i64..=3, b in -3i64..=3) {
        prop_assume!(a != 0 || b != 0);
        let member = Pencil::of(&q).member(&Q.from_i64(a), &Q.from_i64(b)).unwrap();
        let offsets = [Q.zero(), Q.one(), Q.from_i64(3)];
        for pair in member.degenerations().pairs(&offsets) {
            prop_assert_eq!(is_q_pair(&q, &pair), Ok(true), "{}", pair);
        }
    }
}
