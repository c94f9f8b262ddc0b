//! Reference computations taken straight from the definitions, seeded
//! sampling, and theorem checks run over whole finite planes.
//!
//! Samples come from a ChaCha8 stream seeded with a `u64`, so a seed fixes
//! every quadrilateral, map and vector drawn from it.

use std::cell::OnceCell;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::bisect::{
    bisector_field_check, bisector_locus, is_q_pair, nine_points, Bisector, BisectorsThrough, LinePair, LocusConic,
    LocusDegeneracy, MidpointSolver,
};
use crate::field::{FieldSpec, Scalar};
use crate::form::{desargues_involution, QuadraticData};
use crate::pencil::{Conic, Pencil};
use crate::plane::{midpoint, AffineMap, InfPoint, Line, Point, Vector};
use crate::quad::{Quadrangle, Quadrilateral};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("InfiniteField: exhaustive enumeration needs a finite field")]
    InfiniteField,
    #[error("ExhaustedSampling: no valid sample after {0} attempts")]
    ExhaustedSampling(usize),
}

pub type SampleRng = ChaCha8Rng;

const MAX_ATTEMPTS: usize = 10_000;

pub fn sample_rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The seed of the `index`-th instance of a run seeded with `seed`.
pub fn instance_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index as u64)
}

/// All `p^2 + p` lines of the affine plane over `GF(p)`: slopes and
/// intercepts first, then the verticals.
pub fn enumerate_lines(field: FieldSpec) -> Result<Vec<Line>, OracleError> {
    let elems = field.elements().ok_or(OracleError::InfiniteField)?;
    let mut out = Vec::with_capacity(elems.len() * (elems.len() + 1));
    for m in &elems {
        for b in &elems {
            out.push(Line::with_slope(m.clone(), b.clone()));
        }
    }
    out.extend(elems.iter().cloned().map(Line::vertical));
    Ok(out)
}

pub fn enumerate_points(field: FieldSpec) -> Result<Vec<Point>, OracleError> {
    let elems = field.elements().ok_or(OracleError::InfiniteField)?;
    Ok(elems
        .iter()
        .flat_map(|x| elems.iter().map(move |y| Point::new(x.clone(), y.clone())))
        .collect())
}

/// All `p + 1` directions.
pub fn enumerate_directions(field: FieldSpec) -> Result<Vec<InfPoint>, OracleError> {
    let elems = field.elements().ok_or(OracleError::InfiniteField)?;
    let mut out: Vec<InfPoint> = elems
        .into_iter()
        .map(|s| InfPoint::new(field.one(), s).expect("x = 1"))
        .collect();
    out.push(InfPoint::new(field.zero(), field.one()).expect("y = 1"));
    Ok(out)
}

/// Uniform over `GF(p)`; over the rationals `n/d` with `|n| <= 6` and
/// `1 <= d <= 4`.
pub fn random_scalar(field: FieldSpec, rng: &mut SampleRng) -> Scalar {
    match field.modulus() {
        Some(p) => field.from_i64(rng.gen_range(0..p) as i64),
        None => field
            .ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4))
            .expect("nonzero denominator"),
    }
}

/// Uniform over the lines of `GF(p)`; over the rationals one line in ten
/// is vertical.
pub fn random_line(field: FieldSpec, rng: &mut SampleRng) -> Line {
    match field.modulus() {
        Some(p) => {
            let i = rng.gen_range(0..p * p + p);
            let s = |n: u64| field.from_i64(n as i64);
            if i < p * p {
                Line::with_slope(s(i / p), s(i % p))
            } else {
                Line::vertical(s(i - p * p))
            }
        }
        None => {
            if rng.gen_ratio(1, 10) {
                Line::vertical(random_scalar(field, rng))
            } else {
                Line::with_slope(random_scalar(field, rng), random_scalar(field, rng))
            }
        }
    }
}

pub fn random_point(field: FieldSpec, rng: &mut SampleRng) -> Point {
    Point::new(random_scalar(field, rng), random_scalar(field, rng))
}

pub fn random_vector(field: FieldSpec, rng: &mut SampleRng) -> Vector {
    loop {
        let v = Vector::new(random_scalar(field, rng), random_scalar(field, rng));
        if !v.is_zero() {
            return v;
        }
    }
}

/// Rejection-samples four lines until they form a quadrilateral.
pub fn random_quadrilateral(field: FieldSpec, seed: u64) -> Result<Quadrilateral, OracleError> {
    random_quadrilateral_where(field, seed, |_| true)
}

pub fn random_quadrilateral_where(
    field: FieldSpec,
    seed: u64,
    accept: impl Fn(&Quadrilateral) -> bool,
) -> Result<Quadrilateral, OracleError> {
    let mut rng = sample_rng(seed);
    for _ in 0..MAX_ATTEMPTS {
        let [a, b, ap, bp] = std::array::from_fn(|_| random_line(field, &mut rng));
        if let Ok(q) = Quadrilateral::new(a, b, ap, bp) {
            if accept(&q) {
                return Ok(q);
            }
        }
    }
    Err(OracleError::ExhaustedSampling(MAX_ATTEMPTS))
}

/// `n` quadrilaterals, the `i`-th drawn from `instance_seed(seed, i)`.
pub fn sample_quadrilaterals(field: FieldSpec, seed: u64, n: usize) -> Result<Vec<Quadrilateral>, OracleError> {
    (0..n).map(|i| random_quadrilateral(field, instance_seed(seed, i))).collect()
}

/// Four points with no three collinear.
pub fn random_quadrangle(field: FieldSpec, rng: &mut SampleRng) -> Result<Quadrangle, OracleError> {
    for _ in 0..MAX_ATTEMPTS {
        let pts = std::array::from_fn(|_| random_point(field, rng));
        if let Ok(qr) = Quadrangle::new(pts) {
            if qr.is_general_position() {
                return Ok(qr);
            }
        }
    }
    Err(OracleError::ExhaustedSampling(MAX_ATTEMPTS))
}

pub fn random_linear_map(field: FieldSpec, rng: &mut SampleRng) -> AffineMap {
    loop {
        let [a, b, c, d] = std::array::from_fn(|_| random_scalar(field, rng));
        if let Ok(f) = AffineMap::linear(a, b, c, d) {
            return f;
        }
    }
}

/// What the definition says about one line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    NotBisector,
    Midpoint(Point),
    /// The crossings agree at the line's point at infinity.
    AtInfinity,
}

impl Verdict {
    pub fn midpoint(&self) -> Option<&Point> {
        match self {
            Verdict::Midpoint(p) => Some(p),
            _ => None,
        }
    }
}

// Homogeneous meet of two lines given as tX - uY + v = 0.
fn meet(l1: &Line, l2: &Line) -> [Scalar; 3] {
    let [a1, b1, c1] = l1.linear_form();
    let [a2, b2, c2] = l2.linear_form();
    [&b1 * &c2 - &c1 * &b2, &c1 * &a2 - &a1 * &c2, &a1 * &b2 - &b1 * &a2]
}

/// `None` when `l` does not cross `{l1, l2}`; `Some(None)` when the
/// crossing midpoint is at infinity.
fn crossing_midpoint(l: &Line, l1: &Line, l2: &Line) -> Option<Option<Point>> {
    if l == l1 || l == l2 {
        return None;
    }
    let p = meet(l, l1);
    let q = meet(l, l2);
    match (p[2].is_zero(), q[2].is_zero()) {
        (true, true) => None,
        (false, false) => {
            let x = (&p[0] / &p[2] + &q[0] / &q[2]).half();
            let y = (&p[1] / &p[2] + &q[1] / &q[2]).half();
            Some(Some(Point::new(x, y)))
        }
        _ => Some(None),
    }
}

/// Tests `l` against the definition of bisection for the given pairs.
pub fn brute_verdict(pairs: &[[&Line; 2]], l: &Line) -> Verdict {
    let mut seen: Option<Option<Point>> = None;
    for [l1, l2] in pairs {
        let Some(m) = crossing_midpoint(l, l1, l2) else { continue };
        match &seen {
            None => seen = Some(m),
            Some(s) if *s == m => {}
            Some(_) => return Verdict::NotBisector,
        }
    }
    match seen {
        None => Verdict::NotBisector,
        Some(None) => Verdict::AtInfinity,
        Some(Some(p)) => Verdict::Midpoint(p),
    }
}

pub fn brute_bisector(q: &Quadrilateral, l: &Line) -> Verdict {
    brute_verdict(&q.opposite_pairs(), l)
}

/// Every line of the plane tested against the definition.
pub fn brute_bisectors(q: &Quadrilateral) -> Result<BTreeSet<Bisector>, OracleError> {
    Ok(enumerate_lines(q.field())?
        .into_iter()
        .filter_map(|line| match brute_bisector(q, &line) {
            Verdict::Midpoint(midpoint) => Some(Bisector { line, midpoint }),
            _ => None,
        })
        .collect())
}

/// The standard-form solution swept over every point of the plane.
pub fn closed_form_bisectors(q: &Quadrilateral) -> Result<BTreeSet<Bisector>, OracleError> {
    let solver = MidpointSolver::new(q);
    let directions = enumerate_directions(q.field())?;
    let mut out = BTreeSet::new();
    for m in enumerate_points(q.field())? {
        match solver.solve(&m) {
            BisectorsThrough::Empty => {}
            BisectorsThrough::Unique(b) => {
                out.insert(b);
            }
            BisectorsThrough::AllLinesThrough(c) => {
                for d in &directions {
                    out.insert(Bisector { line: Line::through_with_direction(&c, d), midpoint: c.clone() });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Profile {
    /// Sampled candidate lines and points; any field.
    Fixture,
    /// Every line and point of a finite plane.
    Exhaustive,
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Fixture => "fixture",
            Profile::Exhaustive => "exhaustive",
        })
    }
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fixture" => Ok(Profile::Fixture),
            "exhaustive" => Ok(Profile::Exhaustive),
            _ => Err(format!("unknown profile {s:?}")),
        }
    }
}

/// Deliberate corruption for negative controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Adds one to the locus polynomial.
    LocusShift,
    /// Translates every computed partner.
    PartnerShift,
}

impl FromStr for Fault {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "locus-shift" => Ok(Fault::LocusShift),
            "partner-shift" => Ok(Fault::PartnerShift),
            _ => Err(format!("unknown fault {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    DiscriminantIdentity,
    OppositeSidesOrthogonal,
    BisectorMidpointsFinite,
    BisectorsThroughVertices,
    ParallelBisectors,
    SharedMidpoints,
    RepairingsShareBisectors,
    StandardFormCentroid,
    BisectorFormula,
    LocusIsMidpointSet,
    LocusDegeneracy,
    NinePointConic,
    DesarguesInvolution,
    AffineInvariance,
    DegenerationsArePairs,
    BisectorsAreDegenerationLines,
    PencilCentersOnLocus,
    PartnerInvolution,
    AntipodalOrthogonalRedundancy,
    BisectorField,
    BisectorFieldMaximal,
}

impl Check {
    pub const ALL: [Check; 21] = [
        Check::DiscriminantIdentity,
        Check::OppositeSidesOrthogonal,
        Check::BisectorMidpointsFinite,
        Check::BisectorsThroughVertices,
        Check::ParallelBisectors,
        Check::SharedMidpoints,
        Check::RepairingsShareBisectors,
        Check::StandardFormCentroid,
        Check::BisectorFormula,
        Check::LocusIsMidpointSet,
        Check::LocusDegeneracy,
        Check::NinePointConic,
        Check::DesarguesInvolution,
        Check::AffineInvariance,
        Check::DegenerationsArePairs,
        Check::BisectorsAreDegenerationLines,
        Check::PencilCentersOnLocus,
        Check::PartnerInvolution,
        Check::AntipodalOrthogonalRedundancy,
        Check::BisectorField,
        Check::BisectorFieldMaximal,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Check::DiscriminantIdentity => "discriminant-identity",
            Check::OppositeSidesOrthogonal => "opposite-sides-orthogonal",
            Check::BisectorMidpointsFinite => "bisector-midpoints-finite",
            Check::BisectorsThroughVertices => "bisectors-through-vertices",
            Check::ParallelBisectors => "parallel-bisectors",
            Check::SharedMidpoints => "shared-midpoints",
            Check::RepairingsShareBisectors => "repairings-share-bisectors",
            Check::StandardFormCentroid => "standard-form-centroid",
            Check::BisectorFormula => "bisector-formula",
            Check::LocusIsMidpointSet => "locus-is-midpoint-set",
            Check::LocusDegeneracy => "locus-degeneracy",
            Check::NinePointConic => "nine-point-conic",
            Check::DesarguesInvolution => "desargues-involution",
            Check::AffineInvariance => "affine-invariance",
            Check::DegenerationsArePairs => "degenerations-are-pairs",
            Check::BisectorsAreDegenerationLines => "bisectors-are-degeneration-lines",
            Check::PencilCentersOnLocus => "pencil-centers-on-locus",
            Check::PartnerInvolution => "partner-involution",
            Check::AntipodalOrthogonalRedundancy => "antipodal-orthogonal-redundancy",
            Check::BisectorField => "bisector-field",
            Check::BisectorFieldMaximal => "bisector-field-maximal",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.tag() == s)
            .ok_or_else(|| format!("unknown check {s:?}"))
    }
}

/// The outcome of one check over a batch of instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub check: Check,
    pub field: FieldSpec,
    /// Instances the check applied to.
    pub instances: usize,
    pub violations: Vec<String>,
    pub elapsed: Duration,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// `tag field instances violations`.
    pub fn record(&self) -> String {
        format!("{} {} {} {}", self.check, self.field, self.instances, self.violations.len())
    }
}

/// Lazily computed data shared by the checks on one quadrilateral.
struct Context<'a> {
    q: &'a Quadrilateral,
    profile: Profile,
    fault: Option<Fault>,
    seed: u64,
    data: QuadraticData,
    solver: OnceCell<MidpointSolver>,
    locus: OnceCell<LocusConic>,
    lines: OnceCell<Vec<Line>>,
    verdicts: OnceCell<Vec<Verdict>>,
    points: OnceCell<Vec<Point>>,
}

impl<'a> Context<'a> {
    fn new(q: &'a Quadrilateral, profile: Profile, fault: Option<Fault>, seed: u64) -> Self {
        Context {
            q,
            profile,
            fault,
            seed,
            data: QuadraticData::of(q),
            solver: OnceCell::new(),
            locus: OnceCell::new(),
            lines: OnceCell::new(),
            verdicts: OnceCell::new(),
            points: OnceCell::new(),
        }
    }

    fn field(&self) -> FieldSpec {
        self.q.field()
    }

    fn exhaustive(&self) -> bool {
        self.profile == Profile::Exhaustive
    }

    fn solver(&self) -> &MidpointSolver {
        self.solver.get_or_init(|| MidpointSolver::new(self.q))
    }

    fn locus(&self) -> &LocusConic {
        self.locus.get_or_init(|| {
            let mut locus = bisector_locus(self.q);
            if self.fault == Some(Fault::LocusShift) {
                let shifted: Vec<Scalar> = locus.conic.coeffs().to_vec();
                let mut c: [Scalar; 6] = shifted.try_into().expect("six coefficients");
                c[5] = &c[5] + &self.field().one();
                locus.conic = Conic::new(c).expect("same leading form");
            }
            locus
        })
    }

    fn conic(&self) -> &Conic {
        &self.locus().conic
    }

    /// The affine diagonal point the locus is anchored at.
    fn anchor(&self) -> Point {
        self.q
            .diagonal_points()
            .into_iter()
            .find_map(|p| p.affine().cloned())
            .expect("some diagonal point is affine")
    }

    /// Points of the locus reached from the anchor along a few directions.
    fn locus_samples(&self) -> Vec<Point> {
        let f = self.field();
        let anchor = self.anchor();
        let mut dirs: Vec<Vector> = (-3..=3).map(|s| Vector::new(f.one(), f.from_i64(s))).collect();
        dirs.push(Vector::new(f.zero(), f.one()));
        let mut out = vec![anchor.clone()];
        out.extend(dirs.iter().filter_map(|d| self.conic().second_intersection(&anchor, d)));
        out
    }

    fn lines(&self) -> &[Line] {
        self.lines.get_or_init(|| {
            if self.exhaustive() {
                return enumerate_lines(self.field()).expect("checked finite");
            }
            let f = self.field();
            let q = self.q;
            let mut set: BTreeSet<Line> = q.sides().iter().chain(q.diagonals()).cloned().collect();
            let mut dirs: BTreeSet<InfPoint> = [(1, 0), (1, 1), (1, -1), (1, 2), (2, -1), (3, 1), (0, 1)]
                .iter()
                .map(|&(x, y)| InfPoint::new(f.from_i64(x), f.from_i64(y)).expect("nonzero"))
                .collect();
            dirs.extend(q.sides().iter().chain(q.diagonals()).map(Line::infinite_point));
            let mut anchors: Vec<Point> = q.vertices().to_vec();
            anchors.push(q.centroid().clone());
            for x in -1..=1 {
                for y in -1..=1 {
                    anchors.push(Point::new(f.from_i64(x), f.from_i64(y)));
                }
            }
            for a in &anchors {
                for d in &dirs {
                    set.insert(Line::through_with_direction(a, d));
                }
            }
            for m in self.locus_samples() {
                if let BisectorsThrough::Unique(b) = self.solver().solve(&m) {
                    set.insert(b.line);
                }
            }
            set.into_iter().collect()
        })
    }

    fn verdicts(&self) -> &[Verdict] {
        self.verdicts
            .get_or_init(|| self.lines().iter().map(|l| brute_bisector(self.q, l)).collect())
    }

    fn bisectors(&self) -> Vec<Bisector> {
        self.lines()
            .iter()
            .zip(self.verdicts())
            .filter_map(|(l, v)| v.midpoint().map(|m| Bisector { line: l.clone(), midpoint: m.clone() }))
            .collect()
    }

    fn points(&self) -> &[Point] {
        self.points.get_or_init(|| {
            if self.exhaustive() {
                return enumerate_points(self.field()).expect("checked finite");
            }
            let f = self.field();
            let mut set: BTreeSet<Point> = BTreeSet::new();
            for x in -2..=2 {
                for y in -2..=2 {
                    set.insert(Point::new(f.from_i64(x), f.from_i64(y)));
                }
            }
            set.extend(self.locus_samples());
            if let Some(qr) = self.q.quadrangle() {
                if let Ok(nine) = nine_points(&qr) {
                    set.extend(nine.iter().filter_map(|p| p.affine().cloned()));
                }
            }
            set.insert(self.q.centroid().clone());
            set.into_iter().collect()
        })
    }

    fn partner(&self, b: &Bisector) -> Line {
        let p = self.solver().partner(b);
        match self.fault {
            Some(Fault::PartnerShift) => {
                Line::new(p.t().clone(), p.u().clone(), p.v() + &self.field().one()).expect("same direction")
            }
            _ => p,
        }
    }

    /// Directions of the parallel pairs among opposite sides and diagonals.
    fn parallel_directions(&self) -> BTreeSet<InfPoint> {
        self.q.parallel_pairs().iter().map(|[l, _]| l.infinite_point()).collect()
    }

    fn pencil_members(&self) -> Vec<Conic> {
        let pencil = Pencil::of(self.q);
        let f = self.field();
        let coeffs: Vec<(Scalar, Scalar)> = match f.elements().filter(|_| self.exhaustive()) {
            Some(elems) => std::iter::once((f.zero(), f.one()))
                .chain(elems.into_iter().map(|b| (f.one(), b)))
                .collect(),
            None => [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2), (1, 3), (3, -2)]
                .iter()
                .map(|&(a, b)| (f.from_i64(a), f.from_i64(b)))
                .collect(),
        };
        coeffs
            .iter()
            .filter_map(|(a, b)| pencil.member(a, b).ok())
            .collect()
    }

    fn family_offsets(&self) -> Vec<Scalar> {
        let f = self.field();
        match f.elements().filter(|_| self.exhaustive()) {
            Some(elems) => elems,
            None => vec![f.zero(), f.one(), f.from_i64(2), f.one().half()],
        }
    }

    /// The `Q`-pairs `{l, partner(l)}` over all candidate bisectors.
    fn q_pairs(&self) -> Vec<LinePair> {
        let set: BTreeSet<LinePair> = self
            .bisectors()
            .iter()
            .map(|b| LinePair::new(b.line.clone(), self.partner(b)))
            .collect();
        set.into_iter().collect()
    }

    fn run(&self, check: Check) -> Option<Vec<String>> {
        match check {
            Check::DiscriminantIdentity => Some(self.discriminant_identity()),
            Check::OppositeSidesOrthogonal => Some(self.opposite_sides_orthogonal()),
            Check::BisectorMidpointsFinite => Some(self.midpoints_finite()),
            Check::BisectorsThroughVertices => Some(self.through_vertices()),
            Check::ParallelBisectors => Some(self.parallel_bisectors()),
            Check::SharedMidpoints => Some(self.shared_midpoints()),
            Check::RepairingsShareBisectors => self.repairings(),
            Check::StandardFormCentroid => Some(self.standard_form_centroid()),
            Check::BisectorFormula => Some(self.bisector_formula()),
            Check::LocusIsMidpointSet => Some(self.locus_is_midpoint_set()),
            Check::LocusDegeneracy => Some(self.locus_degeneracy()),
            Check::NinePointConic => self.nine_point_conic(),
            Check::DesarguesInvolution => self.desargues(),
            Check::AffineInvariance => Some(self.affine_invariance()),
            Check::DegenerationsArePairs => Some(self.degenerations_are_pairs()),
            Check::BisectorsAreDegenerationLines => Some(self.degeneration_lines()),
            Check::PencilCentersOnLocus => Some(self.pencil_centers()),
            Check::PartnerInvolution => Some(self.partner_involution()),
            Check::AntipodalOrthogonalRedundancy => Some(self.redundancy()),
            Check::BisectorField => Some(self.bisector_field()),
            Check::BisectorFieldMaximal => self.field_maximal(),
        }
    }

    fn discriminant_identity(&self) -> Vec<String> {
        let [a, b, ap, bp] = self.q.sides();
        let c = |l1: &Line, l2: &Line| l1.t() * l2.u() - l2.t() * l1.u();
        let product = c(a, b) * c(b, ap) * c(ap, bp) * c(bp, a);
        let disc = self.data.discriminant();
        if disc == product {
            vec![]
        } else {
            vec![format!("beta^2 - alpha*gamma = {disc} but the side product is {product}")]
        }
    }

    fn opposite_sides_orthogonal(&self) -> Vec<String> {
        let q = self.q;
        let [d1, d2] = q.diagonals();
        [("A, A'", q.a(), q.a_prime()), ("B, B'", q.b(), q.b_prime()), ("diagonals", d1, d2)]
            .into_iter()
            .filter(|(_, l1, l2)| !self.data.q_orthogonal(l1, l2))
            .map(|(name, l1, l2)| format!("{name} ({l1}, {l2}) are not orthogonal"))
            .collect()
    }

    fn midpoints_finite(&self) -> Vec<String> {
        self.lines()
            .iter()
            .zip(self.verdicts())
            .filter(|(_, v)| **v == Verdict::AtInfinity)
            .map(|(l, _)| format!("{l} bisects with its midpoint at infinity"))
            .collect()
    }

    fn through_vertices(&self) -> Vec<String> {
        let q = self.q;
        let special: BTreeSet<&Line> = q.sides().iter().chain(q.diagonals()).collect();
        let mut out = Vec::new();
        for (l, v) in self.lines().iter().zip(self.verdicts()) {
            if !q.vertices().iter().any(|p| l.contains(p)) {
                continue;
            }
            let bisects = v.midpoint().is_some();
            if bisects != special.contains(l) {
                out.push(format!("{l} passes through a vertex; bisects: {bisects}"));
            }
        }
        out
    }

    fn parallel_bisectors(&self) -> Vec<String> {
        let allowed = self.parallel_directions();
        let mut by_direction: BTreeMap<InfPoint, usize> = BTreeMap::new();
        for b in self.bisectors() {
            *by_direction.entry(b.line.infinite_point()).or_default() += 1;
        }
        let mut out: Vec<String> = by_direction
            .iter()
            .filter(|(d, n)| **n >= 2 && !allowed.contains(d))
            .map(|(d, n)| format!("{n} parallel bisectors with direction {d}"))
            .collect();
        for (l, v) in self.lines().iter().zip(self.verdicts()) {
            if allowed.contains(&l.infinite_point()) && v.midpoint().is_none() {
                out.push(format!("{l} is parallel to a parallel pair but does not bisect"));
            }
        }
        out
    }

    fn shared_midpoints(&self) -> Vec<String> {
        let q = self.q;
        let mut by_mid: BTreeMap<Point, usize> = BTreeMap::new();
        for b in self.bisectors() {
            *by_mid.entry(b.midpoint).or_default() += 1;
        }
        let para = q.vertices_form_parallelogram();
        let mut out: Vec<String> = by_mid
            .iter()
            .filter(|(m, n)| **n >= 2 && (!para || *m != q.centroid()))
            .map(|(m, n)| format!("{n} bisectors share the midpoint {m}"))
            .collect();
        if para && by_mid.get(q.centroid()).copied().unwrap_or(0) < 2 {
            out.push("the vertices form a parallelogram but its center is not shared".to_string());
        }
        out
    }

    fn repairings(&self) -> Option<Vec<String>> {
        let qr = self.q.quadrangle()?;
        let mut out = Vec::new();
        for other in qr.quadrilaterals().into_iter().flatten() {
            for (l, v) in self.lines().iter().zip(self.verdicts()) {
                let w = brute_bisector(&other, l);
                if *v != w {
                    out.push(format!("{l}: {v:?} here but {w:?} for [{other}]"));
                }
            }
        }
        Some(out)
    }

    fn standard_form_centroid(&self) -> Vec<String> {
        let sf = self.solver().standard_form();
        let origin = sf.quad.centroid().is_origin();
        if origin == self.q.vertices_form_parallelogram() {
            vec![]
        } else {
            vec![format!("standard-form centroid {} against parallelogram vertices", sf.quad.centroid())]
        }
    }

    fn bisector_formula(&self) -> Vec<String> {
        if self.exhaustive() {
            let brute: BTreeSet<Bisector> = self.bisectors().into_iter().collect();
            let closed = closed_form_bisectors(self.q).expect("checked finite");
            let show = |b: &Bisector| format!("{} at {}", b.line, b.midpoint);
            let mut out: Vec<String> = brute.difference(&closed).map(|b| format!("missing from the formula: {}", show(b))).collect();
            out.extend(closed.difference(&brute).map(|b| format!("not a bisector: {}", show(b))));
            return out;
        }
        let solver = self.solver();
        let mut out = Vec::new();
        for b in self.bisectors() {
            match solver.solve(&b.midpoint) {
                BisectorsThrough::Unique(c) if c == b => {}
                BisectorsThrough::AllLinesThrough(c) if c == b.midpoint => {}
                other => out.push(format!("{} at {}: formula gives {other:?}", b.line, b.midpoint)),
            }
        }
        for m in self.points() {
            if let BisectorsThrough::Unique(c) = solver.solve(m) {
                if brute_bisector(self.q, &c.line).midpoint() != Some(m) {
                    out.push(format!("formula line {} does not bisect at {m}", c.line));
                }
            }
        }
        out
    }

    fn locus_is_midpoint_set(&self) -> Vec<String> {
        let conic = self.conic();
        let mids: BTreeSet<Point> = self.bisectors().into_iter().map(|b| b.midpoint).collect();
        let mut out: Vec<String> = mids
            .iter()
            .filter(|m| !conic.eval(m).is_zero())
            .map(|m| format!("midpoint {m} is off the locus"))
            .collect();
        for p in self.points() {
            if !conic.eval(p).is_zero() || mids.contains(p) {
                continue;
            }
            let reached = !self.exhaustive()
                && match self.solver().solve(p) {
                    BisectorsThrough::Unique(b) => brute_bisector(self.q, &b.line).midpoint() == Some(p),
                    BisectorsThrough::AllLinesThrough(_) => true,
                    BisectorsThrough::Empty => false,
                };
            if !reached {
                out.push(format!("locus point {p} is no bisector's midpoint"));
            }
        }
        out
    }

    fn locus_degeneracy(&self) -> Vec<String> {
        let q = self.q;
        let locus = self.locus();
        let parallel = q.parallel_pairs();
        let singular = locus.conic.matrix_det().is_zero();
        let mut out = Vec::new();
        if singular == parallel.is_empty() {
            out.push(format!("singular locus: {singular}, parallel pairs: {}", parallel.len()));
        }
        for [l1, l2] in parallel {
            let mid = l1.midline(l2).expect("parallel");
            let (Some(m1), Some(m2)) = (brute_bisector(q, l1).midpoint().cloned(), brute_bisector(q, l2).midpoint().cloned())
            else {
                out.push(format!("{l1} or {l2} does not bisect"));
                continue;
            };
            let Ok(through) = Line::through(&m1, &m2) else {
                out.push(format!("{l1} and {l2} share the midpoint {m1}"));
                continue;
            };
            let expected = LinePair::new(mid, through);
            if locus.conic.factor().as_ref() != Some(&expected) {
                out.push(format!("locus {} does not split as {expected}", locus.conic));
            }
            if locus.degeneracy != LocusDegeneracy::LinePair(expected.clone()) {
                out.push(format!("reported components {:?}, expected {expected}", locus.degeneracy));
            }
        }
        out
    }

    fn nine_point_conic(&self) -> Option<Vec<String>> {
        let qr = self.q.quadrangle()?;
        let pts = match nine_points(&qr) {
            Ok(pts) => pts,
            Err(e) => return Some(vec![e.to_string()]),
        };
        Some(
            pts.iter()
                .filter(|p| !self.conic().contains(p))
                .map(|p| format!("{p} is off the locus"))
                .collect(),
        )
    }

    fn desargues(&self) -> Option<Vec<String>> {
        let qr = self.q.quadrangle()?;
        let mut out = Vec::new();
        for (l, v) in self.lines().iter().zip(self.verdicts()) {
            if qr.vertices().iter().any(|p| l.contains(p)) {
                continue;
            }
            if let Err(e) = desargues_violation(&qr, l, v.midpoint().is_some()) {
                out.push(e);
            }
        }
        Some(out)
    }

    fn affine_invariance(&self) -> Vec<String> {
        let mut rng = sample_rng(self.seed);
        let f = self.field();
        (0..3)
            .filter_map(|_| {
                let map = random_linear_map(f, &mut rng);
                let vectors: Vec<(Vector, Vector)> = (0..20)
                    .map(|_| (random_vector(f, &mut rng), random_vector(f, &mut rng)))
                    .collect();
                affine_violation(self.q, &map, &vectors).err()
            })
            .collect()
    }

    fn degenerations_are_pairs(&self) -> Vec<String> {
        let q = self.q;
        let mut out = Vec::new();
        let offsets = self.family_offsets();
        for member in self.pencil_members() {
            for pair in member.degenerations().pairs(&offsets) {
                if is_q_pair(q, &pair) != Ok(true) {
                    out.push(format!("degeneration {pair} of {member} is not a Q-pair"));
                }
            }
        }
        let pencil = Pencil::of(q);
        for b in self.bisectors() {
            let pair = LinePair::new(b.line.clone(), self.partner(&b));
            if !pencil.is_degeneration_of(&pair) {
                out.push(format!("{pair} is not a degeneration"));
            }
        }
        out
    }

    fn degeneration_lines(&self) -> Vec<String> {
        let offsets = self.family_offsets();
        let lines: BTreeSet<Line> = self
            .pencil_members()
            .iter()
            .flat_map(|m| m.degenerations().pairs(&offsets))
            .flat_map(|p| p.lines().clone())
            .collect();
        let mut out: Vec<String> = lines
            .iter()
            .filter(|l| brute_bisector(self.q, l).midpoint().is_none())
            .map(|l| format!("degeneration line {l} does not bisect"))
            .collect();
        if self.exhaustive() {
            for b in self.bisectors() {
                if !lines.contains(&b.line) {
                    out.push(format!("bisector {} is in no degeneration", b.line));
                }
            }
        }
        out
    }

    fn pencil_centers(&self) -> Vec<String> {
        let q = self.q;
        let conic = self.conic();
        let mut out: Vec<String> = self
            .pencil_members()
            .iter()
            .filter_map(|m| m.center().map(|c| (m.clone(), c)))
            .filter(|(_, c)| !conic.eval(c).is_zero())
            .map(|(m, c)| format!("center {c} of {m} is off the locus"))
            .collect();
        let pencil = Pencil::of(q);
        let diag = q.diagonal_points();
        for (g, expected) in pencil.generators().into_iter().zip(diag.iter()) {
            if g.center().as_ref() != expected.affine() {
                out.push(format!("center of {g} is not the diagonal point {expected}"));
            }
        }
        out
    }

    fn partner_involution(&self) -> Vec<String> {
        let mut out = Vec::new();
        for b in self.bisectors() {
            let p = self.partner(&b);
            let Some(pm) = brute_bisector(self.q, &p).midpoint().cloned() else {
                out.push(format!("partner {p} of {} does not bisect", b.line));
                continue;
            };
            let back = self.partner(&Bisector { line: p.clone(), midpoint: pm });
            if back != b.line {
                out.push(format!("{} -> {p} -> {back}", b.line));
            }
            if is_q_pair(self.q, &LinePair::new(b.line.clone(), p.clone())) != Ok(true) {
                out.push(format!("{} and its partner {p} are not a Q-pair", b.line));
            }
        }
        out
    }

    fn redundancy(&self) -> Vec<String> {
        let allowed = self.parallel_directions();
        let bis = self.bisectors();
        let centroid = self.q.centroid();
        let mut out = Vec::new();
        for (i, b1) in bis.iter().enumerate() {
            for b2 in &bis[i + 1..] {
                let orth = self.data.q_orthogonal(&b1.line, &b2.line);
                let anti = &midpoint(&b1.midpoint, &b2.midpoint) == centroid;
                let exempt = allowed.contains(&b1.line.infinite_point()) || allowed.contains(&b2.line.infinite_point());
                if orth && !exempt && !anti {
                    out.push(format!("{} and {} are orthogonal but not antipodal", b1.line, b2.line));
                }
                if anti && b1.midpoint != b2.midpoint && !orth {
                    out.push(format!("{} and {} are antipodal but not orthogonal", b1.line, b2.line));
                }
                if allowed.is_empty() && anti != orth {
                    out.push(format!("{} and {}: antipodal {anti}, orthogonal {orth}", b1.line, b2.line));
                }
            }
        }
        out
    }

    fn bisector_field(&self) -> Vec<String> {
        let pairs = self.q_pairs();
        let mut out: Vec<String> = pairs
            .iter()
            .filter(|p| is_q_pair(self.q, p) != Ok(true))
            .map(|p| format!("{p} is not a Q-pair"))
            .collect();
        let report = bisector_field_check(self.q, &pairs);
        out.extend(report.violations.iter().map(|v| {
            let found = v.found.as_ref().map_or("none".to_string(), |p| p.to_string());
            format!("{} meets {} at midpoint {found}", v.line, v.pair)
        }));
        out
    }

    fn field_maximal(&self) -> Option<Vec<String>> {
        if !self.exhaustive() {
            return None;
        }
        let pairs = self.q_pairs();
        let members: BTreeMap<Line, Point> = pairs
            .iter()
            .flat_map(|p| p.lines().clone())
            .map(|l| {
                let m = brute_bisector(self.q, &l).midpoint().cloned().expect("paired lines bisect");
                (l, m)
            })
            .collect();
        let lines = self.lines();
        let mut out = Vec::new();
        for (i, l1) in lines.iter().enumerate() {
            for l2 in &lines[i..] {
                let candidate = LinePair::new(l1.clone(), l2.clone());
                if pairs.contains(&candidate) {
                    continue;
                }
                let bisected = members.iter().all(|(l, m)| match crossing_midpoint(l, l1, l2) {
                    None => true,
                    Some(found) => found.as_ref() == Some(m),
                });
                if !bisected {
                    continue;
                }
                let mut all: Vec<[&Line; 2]> = pairs.iter().map(|p| {
                    let [a, b] = p.lines();
                    [a, b]
                }).collect();
                all.push([l1, l2]);
                let extends = [l1, l2].iter().all(|l| brute_verdict(&all, l) != Verdict::NotBisector);
                if extends {
                    out.push(format!("{candidate} extends the field"));
                }
            }
        }
        Some(out)
    }
}

/// `Err` describes how the involution on `l` fails the statement.
fn desargues_violation(qr: &Quadrangle, l: &Line, bisects: bool) -> Result<(), String> {
    let li = desargues_involution(qr, l).map_err(|e| format!("{l}: {e}"))?;
    if !li.third_pair_conjugate() {
        return Err(format!("{l}: the third pair is not conjugate"));
    }
    if li.is_reflection() != bisects {
        return Err(format!("{l}: reflection {} but bisects {bisects}", li.is_reflection()));
    }
    Ok(())
}

/// Fixes `lambda` from the first pair whose image product is nonzero and
/// checks it on every pair.
fn affine_violation(q: &Quadrilateral, map: &AffineMap, vectors: &[(Vector, Vector)]) -> Result<(), String> {
    let here = QuadraticData::of(q);
    let there = QuadraticData::of(&q.mapped(map));
    let products: Vec<(Scalar, Scalar)> = vectors
        .iter()
        .map(|(v, w)| (here.inner(v, w), there.inner(&map.apply_vector(v), &map.apply_vector(w))))
        .collect();
    let Some((lhs, rhs)) = products.iter().find(|(_, rhs)| !rhs.is_zero()) else {
        return Err(format!("no usable probe under {map}"));
    };
    let lambda = lhs / rhs;
    match products.iter().position(|(l, r)| *l != &lambda * r) {
        None => Ok(()),
        Some(i) => Err(format!("lambda = {lambda} from the probe fails on pair {i} under {map}")),
    }
}

/// Runs `checks` over every quadrilateral, in parallel, merging the
/// reports in instance order. Instance `i` draws its random maps from
/// `instance_seed(seed, i)`.
pub fn verify_many(
    qs: &[Quadrilateral],
    profile: Profile,
    checks: &[Check],
    fault: Option<Fault>,
    seed: u64,
) -> Result<Vec<TheoremReport>, OracleError> {
    if profile == Profile::Exhaustive && qs.iter().any(|q| !q.field().is_finite()) {
        return Err(OracleError::InfiniteField);
    }
    let per_instance: Vec<Vec<(Option<Vec<String>>, Duration)>> = qs
        .par_iter()
        .enumerate()
        .map(|(i, q)| {
            let ctx = Context::new(q, profile, fault, instance_seed(seed, i));
            checks
                .iter()
                .map(|&c| {
                    let start = Instant::now();
                    let result = ctx.run(c);
                    (result, start.elapsed())
                })
                .collect()
        })
        .collect();
    let field = qs.first().map_or(FieldSpec::Rationals, Quadrilateral::field);
    let mut reports: Vec<TheoremReport> = checks
        .iter()
        .map(|&check| TheoremReport { check, field, instances: 0, violations: Vec::new(), elapsed: Duration::ZERO })
        .collect();
    for (i, (q, results)) in qs.iter().zip(per_instance).enumerate() {
        for (report, (result, elapsed)) in reports.iter_mut().zip(results) {
            report.elapsed += elapsed;
            if let Some(violations) = result {
                report.instances += 1;
                report.violations.extend(violations.into_iter().map(|v| format!("#{i} [{q}] {v}")));
            }
        }
    }
    Ok(reports)
}

/// Every registered check on one quadrilateral.
pub fn verify_all(q: &Quadrilateral, profile: Profile) -> Result<Vec<TheoremReport>, OracleError> {
    let checks: Vec<Check> = Check::ALL
        .into_iter()
        .filter(|&c| profile == Profile::Exhaustive || c != Check::BisectorFieldMaximal)
        .collect();
    verify_many(std::slice::from_ref(q), profile, &checks, None, 0)
}

/// A line through none of the vertices: random, or a bisector of one of
/// the quadrangle's quadrilaterals.
fn desargues_line(field: FieldSpec, qr: &Quadrangle, random: bool, rng: &mut SampleRng) -> Option<Line> {
    let avoids = |l: &Line| !qr.vertices().iter().any(|p| l.contains(p));
    if random {
        return (0..MAX_ATTEMPTS).map(|_| random_line(field, rng)).find(avoids);
    }
    let q = qr.quadrilaterals().into_iter().flatten().next()?;
    let conic = bisector_locus(&q).conic;
    let solver = MidpointSolver::new(&q);
    let anchor = q.diagonal_points().iter().find_map(|p| p.affine().cloned())?;
    (0..100).find_map(|_| {
        let dir = random_vector(field, rng);
        let m = conic.second_intersection(&anchor, &dir)?;
        match solver.solve(&m) {
            BisectorsThrough::Unique(b) => Some(b.line).filter(avoids),
            _ => None,
        }
    })
}

/// Random quadrangles with random lines through none of their vertices;
/// every other trial uses a bisector of the quadrangle instead.
pub fn desargues_trials(field: FieldSpec, seed: u64, trials: usize) -> Result<TheoremReport, OracleError> {
    let start = Instant::now();
    let outcomes: Vec<Result<Result<(), String>, OracleError>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = sample_rng(instance_seed(seed, t));
            // Over a small field every bisector of a quadrangle may pass
            // through a vertex; such quadrangles are redrawn.
            let (qr, l) = (0..MAX_ATTEMPTS)
                .find_map(|_| {
                    let qr = random_quadrangle(field, &mut rng).ok()?;
                    let l = desargues_line(field, &qr, t % 2 == 0, &mut rng)?;
                    Some((qr, l))
                })
                .ok_or(OracleError::ExhaustedSampling(MAX_ATTEMPTS))?;
            let pairs = qr.opposite_side_pairs();
            let refs: Vec<[&Line; 2]> = pairs.iter().map(|[a, b]| [a, b]).collect();
            let bisects = brute_verdict(&refs, &l).midpoint().is_some();
            Ok(desargues_violation(&qr, &l, bisects).map_err(|e| format!("#{t} {:?}: {e}", qr.vertices())))
        })
        .collect();
    let mut violations = Vec::new();
    for o in outcomes {
        if let Err(e) = o? {
            violations.push(e);
        }
    }
    Ok(TheoremReport { check: Check::DesarguesInvolution, field, instances: trials, violations, elapsed: start.elapsed() })
}

/// `instances` random quadrilaterals, each under one random linear map,
/// with `lambda` probed once and tested on `pairs` random vector pairs.
pub fn affine_trials(field: FieldSpec, seed: u64, instances: usize, pairs: usize) -> Result<TheoremReport, OracleError> {
    let start = Instant::now();
    let outcomes: Vec<Result<Result<(), String>, OracleError>> = (0..instances)
        .into_par_iter()
        .map(|i| {
            let s = instance_seed(seed, i);
            let q = random_quadrilateral(field, s)?;
            let mut rng = sample_rng(s ^ 0xA5A5_A5A5);
            let map = random_linear_map(field, &mut rng);
            let vectors: Vec<(Vector, Vector)> = (0..pairs)
                .map(|_| (random_vector(field, &mut rng), random_vector(field, &mut rng)))
                .collect();
            Ok(affine_violation(&q, &map, &vectors).map_err(|e| format!("#{i} [{q}] {e}")))
        })
        .collect();
    let mut violations = Vec::new();
    for o in outcomes {
        if let Err(e) = o? {
            violations.push(e);
        }
    }
    Ok(TheoremReport { check: Check::AffineInvariance, field, instances, violations, elapsed: start.elapsed() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn line_counts() {
        for (p, n) in [(3, 12), (5, 30), (7, 56)] {
            let lines = enumerate_lines(gf(p)).unwrap();
            assert_eq!(lines.len(), n);
            assert_eq!(lines.iter().collect::<BTreeSet<_>>().len(), n);
        }
        assert_eq!(enumerate_lines(FieldSpec::Rationals), Err(OracleError::InfiniteField));
        assert_eq!(enumerate_points(gf(5)).unwrap().len(), 25);
        assert_eq!(enumerate_directions(gf(7)).unwrap().len(), 8);
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = random_quadrilateral(gf(7), 1).unwrap();
        assert_eq!(a, random_quadrilateral(gf(7), 1).unwrap());
        assert!(random_quadrilateral(FieldSpec::Rationals, 2).is_ok());
        let qs = sample_quadrilaterals(gf(3), 9, 20).unwrap();
        assert_eq!(qs.len(), 20);
    }

    #[test]
    fn impossible_predicate_exhausts() {
        let r = random_quadrilateral_where(gf(3), 0, |_| false);
        assert_eq!(r, Err(OracleError::ExhaustedSampling(MAX_ATTEMPTS)));
    }

    #[test]
    fn brute_matches_definition_on_e1() {
        let q = Quadrilateral::parse(FieldSpec::Rationals, "Y=0; Y=X+1; X=0; Y=2X-1").unwrap();
        let f = FieldSpec::Rationals;
        let l = |s: &str| Line::parse(f, s).unwrap();
        let half = f.ratio(1, 2).unwrap();
        assert_eq!(brute_bisector(&q, &l("Y=X+1")), Verdict::Midpoint(Point::new(-&half, half)));
        assert_eq!(brute_bisector(&q, &l("X=3")), Verdict::NotBisector);
    }

    #[test]
    fn e1_mod_7_contains_sides_and_diagonals() {
        let q = Quadrilateral::parse(gf(7), "Y=0; Y=X+1; X=0; Y=2X-1").unwrap();
        let lines: BTreeSet<Line> = brute_bisectors(&q).unwrap().into_iter().map(|b| b.line).collect();
        for l in q.sides().iter().chain(q.diagonals()) {
            assert!(lines.contains(l), "{l}");
        }
        assert_eq!(brute_bisectors(&q).unwrap(), closed_form_bisectors(&q).unwrap());
    }

    #[test]
    fn fixture_profile_passes_on_worked_examples() {
        for s in ["Y=0; Y=X+1; X=0; Y=2X-1", "Y=0; X=0; Y=1; X=1"] {
            let q = Quadrilateral::parse(FieldSpec::Rationals, s).unwrap();
            for r in verify_all(&q, Profile::Fixture).unwrap() {
                assert!(r.passed(), "{}: {:?}", r.check, r.violations);
            }
        }
    }

    #[test]
    fn exhaustive_needs_a_finite_field() {
        let q = Quadrilateral::parse(FieldSpec::Rationals, "Y=0; Y=X+1; X=0; Y=2X-1").unwrap();
        assert_eq!(verify_all(&q, Profile::Exhaustive), Err(OracleError::InfiniteField));
    }

    #[test]
    fn exhaustive_small_fields() {
        for p in [5, 7] {
            let qs = sample_quadrilaterals(gf(p), 3, 6).unwrap();
            for r in verify_many(&qs, Profile::Exhaustive, &Check::ALL, None, 3).unwrap() {
                assert!(r.passed(), "GF({p}) {}: {:?}", r.check, &r.violations[..r.violations.len().min(3)]);
            }
        }
    }

    #[test]
    fn faults_surface() {
        let qs = sample_quadrilaterals(gf(7), 11, 3).unwrap();
        let run = |c: Check, fault| verify_many(&qs, Profile::Exhaustive, &[c], Some(fault), 0).unwrap().remove(0);
        assert!(!run(Check::LocusIsMidpointSet, Fault::LocusShift).passed());
        assert!(!run(Check::PartnerInvolution, Fault::PartnerShift).passed());
        assert!(run(Check::DiscriminantIdentity, Fault::LocusShift).passed());
    }

    #[test]
    fn record_format() {
        let r = TheoremReport {
            check: Check::NinePointConic,
            field: gf(7),
            instances: 50,
            violations: vec![],
            elapsed: Duration::ZERO,
        };
        assert_eq!(r.record(), "nine-point-conic GFp:7 50 0");
        assert_eq!("bisector-field".parse::<Check>(), Ok(Check::BisectorField));
    }

    #[test]
    fn trial_helpers_pass() {
        assert!(desargues_trials(gf(11), 5, 20).unwrap().passed());
        assert!(affine_trials(FieldSpec::Rationals, 5, 5, 10).unwrap().passed());
    }
}
