//! Point sets: locally finite when no radius is fixed, uniformly discrete
//! with strict pairwise separation `> r` when one is.

use crate::error::{Error, Result};
use crate::geom::Vector;
use crate::region::{Bounds, Region};
use crate::scalar::{Quad, QuadInt, SqrtVal};

use super::{Pattern, SupportAtom};

/// A finite set of points, canonically sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointSet<T: QuadInt> {
    dim: usize,
    ud_radius: Option<Quad<T>>,
    points: Vec<Vector<T>>,
}

/// Outcome of a windowed Delone validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeloneVerdict<T: QuadInt> {
    DeloneOnWindow,
    FailsUniformDiscreteness { pair: (Vector<T>, Vector<T>) },
    FailsRelativeDensity { center: Vector<T> },
}

impl<T: QuadInt> PointSet<T> {
    /// Builds a point set, validating dimensions and, when `ud_radius` is
    /// set, strict pairwise separation `> r`.
    pub fn new(
        dim: usize,
        ud_radius: Option<Quad<T>>,
        mut points: Vec<Vector<T>>,
    ) -> Result<Self> {
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: p.dim() });
            }
        }
        points.sort();
        points.dedup();
        if let Some(r) = &ud_radius {
            if !r.is_positive() {
                return Err(Error::InvalidPattern(
                    "discreteness radius must be positive".into(),
                ));
            }
            if let Some((a, b)) = closest_violation(&points, r) {
                return Err(Error::InvalidPattern(format!(
                    "points {a} and {b} are within distance {r}"
                )));
            }
        }
        Ok(PointSet { dim, ud_radius, points })
    }

    pub fn empty(dim: usize, ud_radius: Option<Quad<T>>) -> Self {
        PointSet { dim, ud_radius, points: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ud_radius(&self) -> Option<&Quad<T>> {
        self.ud_radius.as_ref()
    }

    pub fn points(&self) -> &[Vector<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub(crate) fn cut(&self, region: &Region<T>) -> Self {
        let (slice, frame): (&[Vector<T>], _) = match region.bounds() {
            Bounds::Empty => (&[], None),
            Bounds::Unbounded => (&self.points, None),
            Bounds::Box { lo, hi } => {
                let a = self.points.partition_point(|p| p.coord(0) < lo.coord(0));
                let b = self.points.partition_point(|p| p.coord(0) <= hi.coord(0));
                (&self.points[a..b], Some((lo, hi)))
            }
        };
        let in_frame = |p: &Vector<T>| match &frame {
            Some((lo, hi)) => (1..self.dim)
                .all(|c| p.coord(c) >= lo.coord(c) && p.coord(c) <= hi.coord(c)),
            None => true,
        };
        let points = slice
            .iter()
            .filter(|p| in_frame(p) && region.contains_point(p))
            .cloned()
            .collect();
        PointSet { dim: self.dim, ud_radius: self.ud_radius.clone(), points }
    }

    pub(crate) fn act(&self, gamma: &Vector<T>) -> Self {
        assert_eq!(gamma.dim(), self.dim, "shift dimension mismatch");
        let mut points: Vec<Vector<T>> = self.points.iter().map(|p| p + gamma).collect();
        points.sort();
        PointSet { dim: self.dim, ud_radius: self.ud_radius.clone(), points }
    }

    pub(crate) fn support_atoms(&self) -> Vec<SupportAtom<T>> {
        self.points.iter().cloned().map(SupportAtom::Point).collect()
    }

    pub(crate) fn atoms(&self) -> Vec<Self> {
        self.points
            .iter()
            .map(|p| PointSet {
                dim: self.dim,
                ud_radius: self.ud_radius.clone(),
                points: vec![p.clone()],
            })
            .collect()
    }

    /// Two point sets are compatible when their union stays in the space:
    /// always for locally finite sets, and for `UD_r` exactly when distinct
    /// cross points keep separation `> r`.
    pub(crate) fn compatible(&self, other: &Self) -> bool {
        match &self.ud_radius {
            None => true,
            Some(r) => {
                let rr = r.square();
                for p in &self.points {
                    for q in &other.points {
                        if p != q && p.dist_sq(q) <= rr {
                            return false;
                        }
                    }
                }
                true
            }
        }
    }

    /// Checks uniform discreteness with radius `r` and relative density with
    /// radius `R` against the part of the pattern inside `window`. Density is
    /// probed on an exact grid of pitch `R/2` covering the window shrunk by
    /// `R`, so the verdict certifies the window interior only.
    pub fn validate_delone(
        &self,
        r: &Quad<T>,
        capital_r: &Quad<T>,
        window: &Region<T>,
    ) -> DeloneVerdict<T> {
        let inside = self.cut(window);
        if let Some((a, b)) = closest_violation(&inside.points, r) {
            return DeloneVerdict::FailsUniformDiscreteness { pair: (a, b) };
        }
        let bounds = window.bounds();
        let (lo, hi) = match bounds {
            crate::region::Bounds::Box { lo, hi } => (lo, hi),
            _ => return DeloneVerdict::DeloneOnWindow,
        };
        let pitch = capital_r.clone() * Quad::from_fraction(1, 2);
        let rr = capital_r.square();
        let mut axes: Vec<Vec<Quad<T>>> = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let a = lo.coord(i).clone() + capital_r.clone();
            let b = hi.coord(i).clone() - capital_r.clone();
            let mut ticks = Vec::new();
            let mut x = a.clone();
            while x <= b {
                ticks.push(x.clone());
                x = x + pitch.clone();
            }
            if ticks.is_empty() && a <= b {
                ticks.push(a);
            }
            axes.push(ticks);
        }
        if axes.iter().any(|t| t.is_empty()) {
            return DeloneVerdict::DeloneOnWindow;
        }
        let mut index = vec![0usize; self.dim];
        loop {
            let center = Vector::new(
                index.iter().zip(&axes).map(|(&i, t)| t[i].clone()).collect(),
            );
            let covered = self
                .points
                .iter()
                .any(|p| p.dist_sq(&center) <= rr);
            if !covered {
                return DeloneVerdict::FailsRelativeDensity { center };
            }
            let mut axis = 0;
            loop {
                if axis == self.dim {
                    return DeloneVerdict::DeloneOnWindow;
                }
                index[axis] += 1;
                if index[axis] < axes[axis].len() {
                    break;
                }
                index[axis] = 0;
                axis += 1;
            }
        }
    }
}

fn closest_violation<T: QuadInt>(
    points: &[Vector<T>],
    r: &Quad<T>,
) -> Option<(Vector<T>, Vector<T>)> {
    let rr = r.square();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i].dist_sq(&points[j]) <= rr {
                return Some((points[i].clone(), points[j].clone()));
            }
        }
    }
    None
}

pub(super) fn glue<T: QuadInt>(context: &PointSet<T>, family: &[Pattern<T>]) -> PointSet<T> {
    let mut points = Vec::new();
    for p in family {
        match p {
            Pattern::Points(ps) => points.extend(ps.points.iter().cloned()),
            _ => unreachable!("context checked"),
        }
    }
    points.sort();
    points.dedup();
    PointSet {
        dim: context.dim,
        ud_radius: context.ud_radius.clone(),
        points,
    }
}

/// Separation of the closest distinct pair, if any.
pub fn min_separation<T: QuadInt>(points: &[Vector<T>]) -> Option<SqrtVal<T>> {
    let mut best: Option<Quad<T>> = None;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = points[i].dist_sq(&points[j]);
            if best.as_ref().is_none_or(|b| d < *b) {
                best = Some(d);
            }
        }
    }
    best.map(SqrtVal::from_square)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn lit(s: &str) -> Quad<BigInt> {
        s.parse().unwrap()
    }

    fn pts(xs: &[&str]) -> Vec<Vector<BigInt>> {
        xs.iter().map(|s| Vector::one_d(lit(s))).collect()
    }

    #[test]
    fn ud_validation_is_strict() {
        assert!(PointSet::new(1, Some(lit("1/2")), pts(&["0", "1", "2"])).is_ok());
        assert!(PointSet::new(1, Some(lit("1/2")), pts(&["0", "1/3"])).is_err());
        assert!(PointSet::new(1, Some(lit("1/2")), pts(&["0", "1/2"])).is_err());
    }

    #[test]
    fn duplicates_collapse_before_validation() {
        let p = PointSet::new(1, Some(lit("1")), pts(&["3", "3"])).unwrap();
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn ud_compatibility_separates_or_shares() {
        let a = PointSet::new(1, Some(lit("1")), pts(&["0"])).unwrap();
        let near = PointSet::new(1, Some(lit("1")), pts(&["1/2"])).unwrap();
        let shared = PointSet::new(1, Some(lit("1")), pts(&["0", "3/2"])).unwrap();
        assert!(!a.compatible(&near));
        assert!(a.compatible(&shared));
        let lf_a = PointSet::new(1, None, pts(&["0"])).unwrap();
        let lf_b = PointSet::new(1, None, pts(&["1/100"])).unwrap();
        assert!(lf_a.compatible(&lf_b));
    }

    #[test]
    fn delone_verdicts_on_integer_window() {
        let z: Vec<_> = (-12i64..=12)
            .map(|n| Vector::one_d(Quad::<BigInt>::from_int(n)))
            .collect();
        let p = PointSet::new(1, None, z).unwrap();
        let window = Region::ball0(1, lit("10"));
        assert_eq!(
            p.validate_delone(&lit("1/2"), &lit("1"), &window),
            DeloneVerdict::DeloneOnWindow
        );
        let sparse = PointSet::new(1, None, pts(&["0"])).unwrap();
        assert!(matches!(
            sparse.validate_delone(&lit("1/2"), &lit("1"), &window),
            DeloneVerdict::FailsRelativeDensity { .. }
        ));
        let crowded = PointSet::new(1, None, pts(&["0", "1/4", "5"])).unwrap();
        assert!(matches!(
            crowded.validate_delone(&lit("1/2"), &lit("1"), &window),
            DeloneVerdict::FailsUniformDiscreteness { .. }
        ));
    }

    #[test]
    fn min_separation_is_exact() {
        let s = min_separation(&pts(&["0", "2", "3"])).unwrap();
        assert_eq!(s.square(), &lit("1"));
        assert!(min_separation::<BigInt>(&pts(&["5"])).is_none());
    }
}
