//! Closed regions of ℝ^d and the decision procedures on them.
//!
//! Regions are built from closed balls, closed boxes, finite point sets, the
//! empty set, and all of ℝ^d, closed under finite union and intersection.
//! Every primitive except `All` is bounded, so a region is unbounded exactly
//! when it denotes the whole space.
//!
//! Membership of a point is decided exactly for every region. Containment of
//! a closed box is decided exactly in dimension one (via interval flattening)
//! and, in higher dimension, for balls, boxes, point sets, intersections, and
//! unions of boxes and points (via a partition sweep). A box jointly covered
//! by several balls with no single covering member is reported as not
//! contained: deciding that case needs coordinates outside ℚ(√D). The cut and
//! support operators share this one predicate, so the lattice laws are exact
//! everywhere and region semantics are exact on the fragment above.

use std::fmt;

use crate::geom::Vector;
use crate::scalar::{Quad, QuadInt};

/// A closed subset of ℝ^d.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Region<T: QuadInt> {
    Empty,
    All,
    Ball { center: Vector<T>, radius: Quad<T> },
    Box { lo: Vector<T>, hi: Vector<T> },
    Points(Vec<Vector<T>>),
    Union(Vec<Region<T>>),
    Intersection(Vec<Region<T>>),
}

impl<T: QuadInt> Region<T> {
    /// Closed ball; the radius must be nonnegative.
    pub fn ball(center: Vector<T>, radius: Quad<T>) -> Self {
        assert!(!radius.is_negative(), "negative ball radius {radius}");
        Region::Ball { center, radius }
    }

    /// Closed ball around the origin.
    pub fn ball0(dim: usize, radius: Quad<T>) -> Self {
        Self::ball(Vector::zero(dim), radius)
    }

    /// Closed axis-aligned box `[lo, hi]`; empty if any `lo_i > hi_i`.
    pub fn bbox(lo: Vector<T>, hi: Vector<T>) -> Self {
        assert_eq!(lo.dim(), hi.dim(), "dimension mismatch");
        Region::Box { lo, hi }
    }

    /// Closed interval on the line.
    pub fn interval(lo: Quad<T>, hi: Quad<T>) -> Self {
        Region::Box { lo: Vector::one_d(lo), hi: Vector::one_d(hi) }
    }

    /// Intersection with the light simplifications that keep terms small.
    pub fn intersect(self, other: Self) -> Self {
        match (self, other) {
            (Region::Empty, _) | (_, Region::Empty) => Region::Empty,
            (Region::All, r) | (r, Region::All) => r,
            (Region::Intersection(mut xs), Region::Intersection(ys)) => {
                xs.extend(ys);
                Region::Intersection(xs)
            }
            (Region::Intersection(mut xs), r) | (r, Region::Intersection(mut xs)) => {
                xs.push(r);
                Region::Intersection(xs)
            }
            (a, b) => Region::Intersection(vec![a, b]),
        }
    }

    /// Union with the dual simplifications.
    pub fn union(self, other: Self) -> Self {
        match (self, other) {
            (Region::All, _) | (_, Region::All) => Region::All,
            (Region::Empty, r) | (r, Region::Empty) => r,
            (Region::Union(mut xs), Region::Union(ys)) => {
                xs.extend(ys);
                Region::Union(xs)
            }
            (Region::Union(mut xs), r) | (r, Region::Union(mut xs)) => {
                xs.push(r);
                Region::Union(xs)
            }
            (a, b) => Region::Union(vec![a, b]),
        }
    }

    /// The translate `γ + C`.
    pub fn translate(&self, gamma: &Vector<T>) -> Self {
        match self {
            Region::Empty => Region::Empty,
            Region::All => Region::All,
            Region::Ball { center, radius } => Region::Ball {
                center: gamma + center,
                radius: radius.clone(),
            },
            Region::Box { lo, hi } => Region::Box { lo: gamma + lo, hi: gamma + hi },
            Region::Points(ps) => Region::Points(ps.iter().map(|p| gamma + p).collect()),
            Region::Union(xs) => Region::Union(xs.iter().map(|x| x.translate(gamma)).collect()),
            Region::Intersection(xs) => {
                Region::Intersection(xs.iter().map(|x| x.translate(gamma)).collect())
            }
        }
    }

    /// Exact point membership.
    pub fn contains_point(&self, p: &Vector<T>) -> bool {
        match self {
            Region::Empty => false,
            Region::All => true,
            Region::Ball { center, radius } => p.dist_sq(center) <= radius.square(),
            Region::Box { lo, hi } => (0..p.dim()).all(|i| {
                lo.coord(i) <= p.coord(i) && p.coord(i) <= hi.coord(i)
            }),
            Region::Points(ps) => ps.contains(p),
            Region::Union(xs) => xs.iter().any(|x| x.contains_point(p)),
            Region::Intersection(xs) => xs.iter().all(|x| x.contains_point(p)),
        }
    }

    /// Containment of the closed box `[lo, hi]`, exact on the fragment
    /// described in the module docs and conservatively false beyond it.
    pub fn contains_box(&self, lo: &Vector<T>, hi: &Vector<T>) -> bool {
        let dim = lo.dim();
        if (0..dim).any(|i| lo.coord(i) > hi.coord(i)) {
            return true;
        }
        if lo == hi {
            return self.contains_point(lo);
        }
        if dim == 1 {
            return IntervalSet::from_region(self)
                .contains_interval(lo.coord(0), hi.coord(0));
        }
        match self {
            Region::Empty => false,
            Region::All => true,
            Region::Ball { center, radius } => {
                // The farthest corner of the box decides containment.
                let mut far = Quad::zero();
                for i in 0..dim {
                    let dlo = (lo.coord(i) - center.coord(i)).abs();
                    let dhi = (hi.coord(i) - center.coord(i)).abs();
                    let d = if dlo >= dhi { dlo } else { dhi };
                    far = far + d.square();
                }
                far <= radius.square()
            }
            Region::Box { lo: rlo, hi: rhi } => (0..dim).all(|i| {
                rlo.coord(i) <= lo.coord(i) && hi.coord(i) <= rhi.coord(i)
            }),
            Region::Points(_) => false,
            Region::Intersection(xs) => xs.iter().all(|x| x.contains_box(lo, hi)),
            Region::Union(xs) => {
                if xs.iter().any(|x| x.contains_box(lo, hi)) {
                    return true;
                }
                match self.flatten_boxes() {
                    Some(boxes) => sweep_covers(&boxes, lo, hi),
                    None => false,
                }
            }
        }
    }

    /// Writes the region as a finite union of closed boxes when its grammar
    /// allows it (boxes, points, empties, and unions thereof).
    fn flatten_boxes(&self) -> Option<Vec<(Vector<T>, Vector<T>)>> {
        match self {
            Region::Empty => Some(Vec::new()),
            Region::Box { lo, hi } => Some(vec![(lo.clone(), hi.clone())]),
            Region::Points(ps) => {
                Some(ps.iter().map(|p| (p.clone(), p.clone())).collect())
            }
            Region::Union(xs) => {
                let mut out = Vec::new();
                for x in xs {
                    out.extend(x.flatten_boxes()?);
                }
                Some(out)
            }
            _ => None,
        }
    }

    /// True when the region is bounded. Every unbounded term of this grammar
    /// denotes all of ℝ^d, so this also decides fullness.
    pub fn is_bounded(&self) -> bool {
        match self {
            Region::Empty | Region::Ball { .. } | Region::Box { .. } | Region::Points(_) => true,
            Region::All => false,
            Region::Union(xs) => xs.iter().all(|x| x.is_bounded()),
            Region::Intersection(xs) => xs.iter().any(|x| x.is_bounded()),
        }
    }

    /// A bounding box over-approximating the region.
    pub fn bounds(&self) -> Bounds<T> {
        match self {
            Region::Empty => Bounds::Empty,
            Region::All => Bounds::Unbounded,
            Region::Ball { center, radius } => {
                let dim = center.dim();
                let lo = (0..dim).map(|i| center.coord(i) - radius).collect();
                let hi = (0..dim).map(|i| center.coord(i) + radius).collect();
                Bounds::Box { lo: Vector::new(lo), hi: Vector::new(hi) }
            }
            Region::Box { lo, hi } => {
                if (0..lo.dim()).any(|i| lo.coord(i) > hi.coord(i)) {
                    Bounds::Empty
                } else {
                    Bounds::Box { lo: lo.clone(), hi: hi.clone() }
                }
            }
            Region::Points(ps) => {
                let Some(first) = ps.first() else { return Bounds::Empty };
                let dim = first.dim();
                let mut lo = first.coords().to_vec();
                let mut hi = lo.clone();
                for p in &ps[1..] {
                    for i in 0..dim {
                        if p.coord(i) < &lo[i] {
                            lo[i] = p.coord(i).clone();
                        }
                        if p.coord(i) > &hi[i] {
                            hi[i] = p.coord(i).clone();
                        }
                    }
                }
                Bounds::Box { lo: Vector::new(lo), hi: Vector::new(hi) }
            }
            Region::Union(xs) => {
                let mut acc = Bounds::Empty;
                for x in xs {
                    acc = acc.join(x.bounds());
                }
                acc
            }
            Region::Intersection(xs) => {
                let mut acc = Bounds::Unbounded;
                for x in xs {
                    acc = acc.meet(x.bounds());
                }
                acc
            }
        }
    }

    /// A closed superset of every point within distance `v` of the region.
    /// Exact for balls, points, and their unions; boxes grow by `v` along
    /// each axis, which over-approximates Euclidean inflation.
    pub fn inflate(&self, v: &Quad<T>) -> Self {
        assert!(!v.is_negative(), "negative inflation {v}");
        match self {
            Region::Empty => Region::Empty,
            Region::All => Region::All,
            Region::Ball { center, radius } => Region::Ball {
                center: center.clone(),
                radius: radius + v,
            },
            Region::Box { lo, hi } => {
                let dim = lo.dim();
                let nlo = (0..dim).map(|i| lo.coord(i) - v).collect();
                let nhi = (0..dim).map(|i| hi.coord(i) + v).collect();
                Region::Box { lo: Vector::new(nlo), hi: Vector::new(nhi) }
            }
            Region::Points(ps) => Region::Union(
                ps.iter()
                    .map(|p| Region::Ball { center: p.clone(), radius: v.clone() })
                    .collect(),
            ),
            Region::Union(xs) => Region::Union(xs.iter().map(|x| x.inflate(v)).collect()),
            Region::Intersection(xs) => {
                Region::Intersection(xs.iter().map(|x| x.inflate(v)).collect())
            }
        }
    }
}

impl<T: QuadInt> fmt::Debug for Region<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Empty => write!(f, "empty"),
            Region::All => write!(f, "all"),
            Region::Ball { center, radius } => write!(f, "ball{center}r{radius}"),
            Region::Box { lo, hi } => write!(f, "box[{lo}, {hi}]"),
            Region::Points(ps) => write!(f, "points{ps:?}"),
            Region::Union(xs) => write!(f, "union{xs:?}"),
            Region::Intersection(xs) => write!(f, "isect{xs:?}"),
        }
    }
}

/// Bounding-box over-approximation of a region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bounds<T: QuadInt> {
    Empty,
    Box { lo: Vector<T>, hi: Vector<T> },
    Unbounded,
}

impl<T: QuadInt> Bounds<T> {
    fn join(self, other: Self) -> Self {
        match (self, other) {
            (Bounds::Unbounded, _) | (_, Bounds::Unbounded) => Bounds::Unbounded,
            (Bounds::Empty, b) | (b, Bounds::Empty) => b,
            (Bounds::Box { lo: a, hi: b }, Bounds::Box { lo: c, hi: d }) => {
                let dim = a.dim();
                let lo = (0..dim)
                    .map(|i| a.coord(i).min(c.coord(i)).clone())
                    .collect();
                let hi = (0..dim)
                    .map(|i| b.coord(i).max(d.coord(i)).clone())
                    .collect();
                Bounds::Box { lo: Vector::new(lo), hi: Vector::new(hi) }
            }
        }
    }

    fn meet(self, other: Self) -> Self {
        match (self, other) {
            (Bounds::Empty, _) | (_, Bounds::Empty) => Bounds::Empty,
            (Bounds::Unbounded, b) | (b, Bounds::Unbounded) => b,
            (Bounds::Box { lo: a, hi: b }, Bounds::Box { lo: c, hi: d }) => {
                let dim = a.dim();
                let lo: Vec<_> = (0..dim)
                    .map(|i| a.coord(i).max(c.coord(i)).clone())
                    .collect();
                let hi: Vec<_> = (0..dim)
                    .map(|i| b.coord(i).min(d.coord(i)).clone())
                    .collect();
                if (0..dim).any(|i| lo[i] > hi[i]) {
                    Bounds::Empty
                } else {
                    Bounds::Box { lo: Vector::new(lo), hi: Vector::new(hi) }
                }
            }
        }
    }
}

/// A one-dimensional region flattened to merged closed intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntervalSet<T: QuadInt> {
    All,
    Finite(Vec<(Quad<T>, Quad<T>)>),
}

impl<T: QuadInt> IntervalSet<T> {
    /// Flattens a region on the line. Exact for the whole grammar.
    pub fn from_region(region: &Region<T>) -> Self {
        match region {
            Region::Empty => IntervalSet::Finite(Vec::new()),
            Region::All => IntervalSet::All,
            Region::Ball { center, radius } => {
                let c = center.coord(0);
                IntervalSet::normalized(vec![(c - radius, c + radius)])
            }
            Region::Box { lo, hi } => {
                let (a, b) = (lo.coord(0).clone(), hi.coord(0).clone());
                if a > b {
                    IntervalSet::Finite(Vec::new())
                } else {
                    IntervalSet::Finite(vec![(a, b)])
                }
            }
            Region::Points(ps) => IntervalSet::normalized(
                ps.iter().map(|p| (p.coord(0).clone(), p.coord(0).clone())).collect(),
            ),
            Region::Union(xs) => {
                let mut ivs = Vec::new();
                for x in xs {
                    match IntervalSet::from_region(x) {
                        IntervalSet::All => return IntervalSet::All,
                        IntervalSet::Finite(mut f) => ivs.append(&mut f),
                    }
                }
                IntervalSet::normalized(ivs)
            }
            Region::Intersection(xs) => {
                let mut acc = IntervalSet::All;
                for x in xs {
                    acc = acc.intersect(&IntervalSet::from_region(x));
                }
                acc
            }
        }
    }

    fn normalized(mut ivs: Vec<(Quad<T>, Quad<T>)>) -> Self {
        ivs.retain(|(a, b)| a <= b);
        ivs.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| x.1.cmp(&y.1)));
        let mut merged: Vec<(Quad<T>, Quad<T>)> = Vec::new();
        for (a, b) in ivs {
            match merged.last_mut() {
                Some(last) if a <= last.1 => {
                    if b > last.1 {
                        last.1 = b;
                    }
                }
                _ => merged.push((a, b)),
            }
        }
        IntervalSet::Finite(merged)
    }

    fn intersect(&self, other: &Self) -> Self {
        match (self, other) {
            (IntervalSet::All, x) | (x, IntervalSet::All) => x.clone(),
            (IntervalSet::Finite(xs), IntervalSet::Finite(ys)) => {
                let mut out = Vec::new();
                for (a, b) in xs {
                    for (c, d) in ys {
                        let lo = a.max(c).clone();
                        let hi = b.min(d).clone();
                        if lo <= hi {
                            out.push((lo, hi));
                        }
                    }
                }
                IntervalSet::normalized(out)
            }
        }
    }

    pub fn contains(&self, x: &Quad<T>) -> bool {
        match self {
            IntervalSet::All => true,
            IntervalSet::Finite(ivs) => ivs.iter().any(|(a, b)| a <= x && x <= b),
        }
    }

    /// Whether `[a, b]` lies inside the set. A connected interval is covered
    /// by a union of closed intervals exactly when one merged component
    /// contains it.
    pub fn contains_interval(&self, a: &Quad<T>, b: &Quad<T>) -> bool {
        if a > b {
            return true;
        }
        match self {
            IntervalSet::All => true,
            IntervalSet::Finite(ivs) => ivs.iter().any(|(lo, hi)| lo <= a && b <= hi),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, IntervalSet::Finite(v) if v.is_empty())
    }

    pub fn intervals(&self) -> Option<&[(Quad<T>, Quad<T>)]> {
        match self {
            IntervalSet::All => None,
            IntervalSet::Finite(v) => Some(v),
        }
    }
}

/// Decides whether a union of closed boxes covers the closed box `[lo, hi]`.
///
/// Cutting the query box along every face plane of every member makes each
/// open cell homogeneous: a member either contains the cell or misses its
/// interior. The query is covered exactly when every cell lies inside some
/// single member.
fn sweep_covers<T: QuadInt>(
    boxes: &[(Vector<T>, Vector<T>)],
    lo: &Vector<T>,
    hi: &Vector<T>,
) -> bool {
    let dim = lo.dim();
    let mut cuts: Vec<Vec<Quad<T>>> = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut axis = vec![lo.coord(i).clone(), hi.coord(i).clone()];
        for (blo, bhi) in boxes {
            for c in [blo.coord(i), bhi.coord(i)] {
                if lo.coord(i) < c && c < hi.coord(i) {
                    axis.push(c.clone());
                }
            }
        }
        axis.sort();
        axis.dedup();
        cuts.push(axis);
    }
    let cell_count: Vec<usize> = cuts.iter().map(|axis| (axis.len() - 1).max(1)).collect();
    let mut index = vec![0usize; dim];
    loop {
        let covered = boxes.iter().any(|(blo, bhi)| {
            (0..dim).all(|i| {
                let cell_lo = &cuts[i][index[i]];
                let cell_hi = &cuts[i][(index[i] + 1).min(cuts[i].len() - 1)];
                blo.coord(i) <= cell_lo && cell_hi <= bhi.coord(i)
            })
        });
        if !covered {
            return false;
        }
        let mut axis = 0;
        loop {
            if axis == dim {
                return true;
            }
            index[axis] += 1;
            if index[axis] < cell_count[axis] {
                break;
            }
            index[axis] = 0;
            axis += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type R = Region<BigInt>;
    type V = Vector<BigInt>;

    fn lit(s: &str) -> Quad<BigInt> {
        s.parse().unwrap()
    }

    fn pt(coords: &[i64]) -> V {
        V::from_ints(coords)
    }

    #[test]
    fn point_membership_is_closed() {
        let ball = R::ball(pt(&[0, 0]), lit("5"));
        assert!(ball.contains_point(&pt(&[3, 4])));
        assert!(!ball.contains_point(&pt(&[3, 5])));
        let ix = ball.clone().intersect(R::bbox(pt(&[0, 0]), pt(&[10, 10])));
        assert!(ix.contains_point(&pt(&[3, 4])));
        assert!(!ix.contains_point(&pt(&[-3, 4])));
    }

    #[test]
    fn interval_flattening_merges_and_decides() {
        let r = R::interval(lit("0"), lit("1"))
            .union(R::interval(lit("1"), lit("2")))
            .union(R::interval(lit("3"), lit("4")));
        let set = IntervalSet::from_region(&r);
        assert_eq!(
            set.intervals().unwrap(),
            &[(lit("0"), lit("2")), (lit("3"), lit("4"))]
        );
        assert!(set.contains_interval(&lit("1/2"), &lit("3/2")));
        assert!(!set.contains_interval(&lit("3/2"), &lit("7/2")));
        assert!(set.contains(&lit("3")));
        assert!(!set.contains(&lit("5/2")));
    }

    #[test]
    fn one_dimensional_ball_unions_cover_exactly() {
        let r = R::ball(V::one_d(lit("0")), lit("1")).union(R::ball(V::one_d(lit("3/2")), lit("1")));
        assert!(r.contains_box(&V::one_d(lit("-1")), &V::one_d(lit("5/2"))));
        assert!(!r.contains_box(&V::one_d(lit("-1")), &V::one_d(lit("26/10"))));
    }

    #[test]
    fn box_in_ball_uses_farthest_corner() {
        let ball = R::ball(pt(&[0, 0]), lit("5"));
        assert!(ball.contains_box(&pt(&[-3, -4]), &pt(&[3, 4])));
        assert!(!ball.contains_box(&pt(&[-3, -4]), &pt(&[4, 4])));
    }

    #[test]
    fn union_sweep_decides_joint_box_coverage() {
        let cover = R::bbox(pt(&[0, 0]), pt(&[1, 2])).union(R::bbox(pt(&[1, 0]), pt(&[2, 2])));
        assert!(cover.contains_box(&pt(&[0, 0]), &pt(&[2, 2])));
        let gap = R::bbox(pt(&[0, 0]), pt(&[1, 1])).union(R::bbox(pt(&[1, 1]), pt(&[2, 2])));
        assert!(!gap.contains_box(&pt(&[0, 0]), &pt(&[2, 2])));
    }

    #[test]
    fn degenerate_boxes_fall_back_to_membership() {
        let r = R::ball(pt(&[0, 0]), lit("1")).union(R::ball(pt(&[4, 0]), lit("1")));
        assert!(r.contains_box(&pt(&[4, 0]), &pt(&[4, 0])));
        assert!(!r.contains_box(&pt(&[2, 0]), &pt(&[2, 0])));
    }

    #[test]
    fn bounds_over_approximate() {
        let r = R::ball(pt(&[1]), lit("2")).union(R::Points(vec![V::one_d(lit("10"))]));
        match r.bounds() {
            Bounds::Box { lo, hi } => {
                assert_eq!(lo.coord(0), &lit("-1"));
                assert_eq!(hi.coord(0), &lit("10"));
            }
            other => panic!("unexpected bounds {other:?}"),
        }
        assert!(matches!(R::All.bounds(), Bounds::Unbounded));
        assert!(matches!(
            R::Intersection(vec![R::All, R::interval(lit("0"), lit("1"))]).bounds(),
            Bounds::Box { .. }
        ));
    }

    #[test]
    fn boundedness_is_syntactic_and_exact() {
        assert!(R::interval(lit("0"), lit("1")).is_bounded());
        assert!(!R::All.is_bounded());
        assert!(R::All.intersect(R::interval(lit("0"), lit("1"))).is_bounded());
        assert!(!R::All.union(R::interval(lit("0"), lit("1"))).is_bounded());
    }

    #[test]
    fn inflation_yields_supersets() {
        let ball = R::ball(pt(&[0]), lit("1"));
        let grown = ball.inflate(&lit("1/2"));
        assert!(grown.contains_point(&V::one_d(lit("3/2"))));
        assert!(!grown.contains_point(&V::one_d(lit("8/5"))));
        let bx = R::bbox(pt(&[0, 0]), pt(&[1, 1])).inflate(&lit("1"));
        assert!(bx.contains_point(&pt(&[2, 2])));
        let pts = R::Points(vec![pt(&[0, 0])]).inflate(&lit("5"));
        assert!(pts.contains_point(&pt(&[3, 4])));
        assert!(!pts.contains_point(&pt(&[3, 5])));
    }

    #[test]
    fn translation_commutes_with_membership() {
        let r = R::ball(pt(&[1, 1]), lit("1")).union(R::bbox(pt(&[3, 3]), pt(&[4, 4])));
        let g = pt(&[7, -2]);
        let moved = r.translate(&g);
        for p in [pt(&[1, 1]), pt(&[2, 1]), pt(&[3, 3]), pt(&[5, 5])] {
            assert_eq!(r.contains_point(&p), moved.contains_point(&(&g + &p)));
        }
    }
}
