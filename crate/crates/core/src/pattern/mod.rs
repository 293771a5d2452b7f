//! Patterns and the operations every concrete space shares.
//!
//! A pattern is a value that can be restricted to any closed region (the cut
//! `P ∧ C`), has a unique minimal closed support, and carries a translation
//! action. Five instances are implemented: locally finite or uniformly
//! discrete point sets, patches of labeled open boxes, symbolic sequences on
//! ℤ, weighted Dirac combs, and indexed multisets of point sets sharing one
//! discreteness radius.
//!
//! The order is `P ≧ Q ⟺ P ∧ supp Q = Q`. Pairwise compatible finite
//! families glue to a supremum, computed per space as a union; the empty
//! family glues to the zero pattern. Every space here is atomistic: a pattern
//! is the supremum of its single-atom subpatterns.
//!
//! Values are immutable and canonically sorted, so structural equality is
//! set-theoretic equality.

pub mod comb;
pub mod harness;
pub mod multi;
pub mod patch;
pub mod pointset;
pub mod symbolic;

use std::fmt;

use crate::error::{Error, Result};
use crate::geom::Vector;
use crate::region::Region;
use crate::scalar::{Quad, QuadInt, SqrtVal};

pub use comb::{Comb, Weight};
pub use multi::Multi;
pub use patch::{Patch, Tile};
pub use pointset::{DeloneVerdict, PointSet};
pub use symbolic::Symbolic;

/// Which concrete space a pattern belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    PointSet,
    Patch,
    Symbolic,
    Comb,
    Multi,
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SpaceKind::PointSet => "pointset",
            SpaceKind::Patch => "patch",
            SpaceKind::Symbolic => "symbolic",
            SpaceKind::Comb => "comb",
            SpaceKind::Multi => "multi",
        };
        write!(f, "{name}")
    }
}

/// One closed piece of a support: a point or a closed box (tile closure).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SupportAtom<T: QuadInt> {
    Point(Vector<T>),
    Box { lo: Vector<T>, hi: Vector<T> },
}

impl<T: QuadInt> SupportAtom<T> {
    /// Whether the piece lies inside the region.
    pub fn within(&self, region: &Region<T>) -> bool {
        match self {
            SupportAtom::Point(p) => region.contains_point(p),
            SupportAtom::Box { lo, hi } => region.contains_box(lo, hi),
        }
    }

    /// Smallest `r` such that the piece lies in the closed ball `B(0, r)`.
    pub fn entry_radius(&self) -> SqrtVal<T> {
        match self {
            SupportAtom::Point(p) => p.norm(),
            SupportAtom::Box { lo, hi } => {
                let mut far = Quad::zero();
                for i in 0..lo.dim() {
                    let a = lo.coord(i).abs();
                    let b = hi.coord(i).abs();
                    let d = if a >= b { a } else { b };
                    far = far + d.square();
                }
                SqrtVal::from_square(far)
            }
        }
    }
}

/// A pattern in one of the five concrete spaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Pattern<T: QuadInt> {
    Points(PointSet<T>),
    Patch(Patch<T>),
    Symbolic(Symbolic<T>),
    Comb(Comb<T>),
    Multi(Multi<T>),
}

/// Result of an order comparison, keeping the region that decided it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderVerdict<T: QuadInt> {
    pub geq: bool,
    pub witness_region: Region<T>,
}

/// Why a family admits no supremum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoSup<T: QuadInt> {
    pub pair: (Vector<T>, Vector<T>),
    pub separation: SqrtVal<T>,
    pub detail: String,
}

/// Outcome of gluing a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SupResult<T: QuadInt> {
    Supremum(Pattern<T>),
    NoSupremum(NoSup<T>),
}

impl<T: QuadInt> SupResult<T> {
    pub fn unwrap_supremum(self) -> Pattern<T> {
        match self {
            SupResult::Supremum(p) => p,
            SupResult::NoSupremum(w) => panic!("no supremum: {}", w.detail),
        }
    }
}

impl<T: QuadInt> Pattern<T> {
    pub fn kind(&self) -> SpaceKind {
        match self {
            Pattern::Points(_) => SpaceKind::PointSet,
            Pattern::Patch(_) => SpaceKind::Patch,
            Pattern::Symbolic(_) => SpaceKind::Symbolic,
            Pattern::Comb(_) => SpaceKind::Comb,
            Pattern::Multi(_) => SpaceKind::Multi,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Pattern::Points(p) => p.dim(),
            Pattern::Patch(p) => p.dim(),
            Pattern::Symbolic(_) => 1,
            Pattern::Comb(p) => p.dim(),
            Pattern::Multi(p) => p.dim(),
        }
    }

    /// Verifies that two patterns live in the same space: same kind,
    /// dimension, discreteness radius, alphabet, or component count.
    pub fn check_context(&self, other: &Self) -> Result<()> {
        let mismatch = |what: &str| {
            Err(Error::ContextMismatch(format!(
                "{what} differs between operands"
            )))
        };
        match (self, other) {
            (Pattern::Points(a), Pattern::Points(b)) => {
                if a.dim() != b.dim() {
                    return Err(Error::DimensionMismatch { expected: a.dim(), got: b.dim() });
                }
                if a.ud_radius() != b.ud_radius() {
                    return mismatch("discreteness radius");
                }
                Ok(())
            }
            (Pattern::Patch(a), Pattern::Patch(b)) => {
                if a.dim() != b.dim() {
                    return Err(Error::DimensionMismatch { expected: a.dim(), got: b.dim() });
                }
                Ok(())
            }
            (Pattern::Symbolic(a), Pattern::Symbolic(b)) => {
                if a.alphabet() != b.alphabet() {
                    return mismatch("alphabet");
                }
                Ok(())
            }
            (Pattern::Comb(a), Pattern::Comb(b)) => {
                if a.dim() != b.dim() {
                    return Err(Error::DimensionMismatch { expected: a.dim(), got: b.dim() });
                }
                if a.ud_radius() != b.ud_radius() {
                    return mismatch("discreteness radius");
                }
                Ok(())
            }
            (Pattern::Multi(a), Pattern::Multi(b)) => {
                if a.dim() != b.dim() {
                    return Err(Error::DimensionMismatch { expected: a.dim(), got: b.dim() });
                }
                if a.arity() != b.arity() {
                    return mismatch("component count");
                }
                if a.joint_ud_radius() != b.joint_ud_radius() {
                    return mismatch("discreteness radius");
                }
                Ok(())
            }
            _ => Err(Error::ContextMismatch(format!(
                "space kinds differ: {} vs {}",
                self.kind(),
                other.kind()
            ))),
        }
    }

    /// The cut `P ∧ C`: keeps exactly the atoms whose support lies inside
    /// the closed region.
    pub fn cut(&self, region: &Region<T>) -> Pattern<T> {
        match self {
            Pattern::Points(p) => Pattern::Points(p.cut(region)),
            Pattern::Patch(p) => Pattern::Patch(p.cut(region)),
            Pattern::Symbolic(p) => Pattern::Symbolic(p.cut(region)),
            Pattern::Comb(p) => Pattern::Comb(p.cut(region)),
            Pattern::Multi(p) => Pattern::Multi(p.cut(region)),
        }
    }

    /// The support as a region term: the unique minimal closed set `C` with
    /// `P ∧ C = P`.
    pub fn support(&self) -> Region<T> {
        let atoms = self.support_atoms();
        if atoms.is_empty() {
            return Region::Empty;
        }
        let mut points = Vec::new();
        let mut parts: Vec<Region<T>> = Vec::new();
        for atom in atoms {
            match atom {
                SupportAtom::Point(p) => points.push(p),
                SupportAtom::Box { lo, hi } => parts.push(Region::Box { lo, hi }),
            }
        }
        points.sort();
        points.dedup();
        if !points.is_empty() {
            parts.push(Region::Points(points));
        }
        if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Region::Union(parts)
        }
    }

    /// The closed pieces making up the support, one per atom.
    pub fn support_atoms(&self) -> Vec<SupportAtom<T>> {
        match self {
            Pattern::Points(p) => p.support_atoms(),
            Pattern::Patch(p) => p.support_atoms(),
            Pattern::Symbolic(p) => p.support_atoms(),
            Pattern::Comb(p) => p.support_atoms(),
            Pattern::Multi(p) => p.support_atoms(),
        }
    }

    /// Whether the support lies inside the region.
    pub fn supp_within(&self, region: &Region<T>) -> bool {
        self.support_atoms().iter().all(|a| a.within(region))
    }

    /// The translate `γ + P`. Symbolic patterns require an integer shift.
    pub fn act(&self, gamma: &Vector<T>) -> Pattern<T> {
        match self {
            Pattern::Points(p) => Pattern::Points(p.act(gamma)),
            Pattern::Patch(p) => Pattern::Patch(p.act(gamma)),
            Pattern::Symbolic(p) => Pattern::Symbolic(p.act(gamma)),
            Pattern::Comb(p) => Pattern::Comb(p.act(gamma)),
            Pattern::Multi(p) => Pattern::Multi(p.act(gamma)),
        }
    }

    /// True for the zero pattern (empty support).
    pub fn is_zero(&self) -> bool {
        self.support_atoms().is_empty()
    }

    /// The zero pattern of the same space.
    pub fn zero_like(&self) -> Pattern<T> {
        self.cut(&Region::Empty)
    }

    /// The atoms below this pattern: minimal nonzero subpatterns.
    pub fn atoms(&self) -> Vec<Pattern<T>> {
        match self {
            Pattern::Points(p) => p.atoms().into_iter().map(Pattern::Points).collect(),
            Pattern::Patch(p) => p.atoms().into_iter().map(Pattern::Patch).collect(),
            Pattern::Symbolic(p) => p.atoms().into_iter().map(Pattern::Symbolic).collect(),
            Pattern::Comb(p) => p.atoms().into_iter().map(Pattern::Comb).collect(),
            Pattern::Multi(p) => p.atoms().into_iter().map(Pattern::Multi).collect(),
        }
    }

    /// Anchor points, one per atom: the translation-equivariant reference
    /// positions that drive every shift-candidate enumeration.
    pub fn anchors(&self) -> Vec<Vector<T>> {
        match self {
            Pattern::Points(p) => p.points().to_vec(),
            Pattern::Patch(p) => p.tiles().iter().map(|t| t.lo.clone()).collect(),
            Pattern::Symbolic(p) => p.positions_as_vectors(),
            Pattern::Comb(p) => p.entries().iter().map(|(x, _)| x.clone()).collect(),
            Pattern::Multi(p) => p.distinct_points(),
        }
    }

    /// Order test `P ≧ Q ⟺ P ∧ supp Q = Q`.
    pub fn geq(&self, other: &Self) -> Result<OrderVerdict<T>> {
        self.check_context(other)?;
        let witness_region = other.support();
        let geq = self.cut(&witness_region) == *other;
        Ok(OrderVerdict { geq, witness_region })
    }

    /// Whether a common majorant exists, decided by the per-space
    /// characterization.
    pub fn compatible(&self, other: &Self) -> Result<bool> {
        self.check_context(other)?;
        Ok(match (self, other) {
            (Pattern::Points(a), Pattern::Points(b)) => a.compatible(b),
            (Pattern::Patch(a), Pattern::Patch(b)) => a.compatible(b),
            (Pattern::Symbolic(a), Pattern::Symbolic(b)) => a.compatible(b),
            (Pattern::Comb(a), Pattern::Comb(b)) => a.compatible(b),
            (Pattern::Multi(a), Pattern::Multi(b)) => a.compatible(b),
            _ => unreachable!("context checked"),
        })
    }

    /// Glues a finite pairwise-compatible family. The `context` pattern fixes
    /// the space (the empty family glues to its zero); it is not itself a
    /// member. An incompatible pair is an error naming the pair; the
    /// `NoSupremum` verdict is reserved for families that escape every
    /// uniformly discrete space.
    pub fn supremum(context: &Pattern<T>, family: &[Pattern<T>]) -> Result<SupResult<T>> {
        for p in family {
            context.check_context(p)?;
        }
        for i in 0..family.len() {
            for j in i + 1..family.len() {
                if !family[i].compatible(&family[j])? {
                    return Err(Error::IncompatibleFamily {
                        i,
                        j,
                        detail: "no common majorant exists for this pair".into(),
                    });
                }
            }
        }
        let glued = match context {
            Pattern::Points(c) => Pattern::Points(pointset::glue(c, family)),
            Pattern::Patch(c) => Pattern::Patch(patch::glue(c, family)),
            Pattern::Symbolic(c) => Pattern::Symbolic(symbolic::glue(c, family)),
            Pattern::Comb(c) => Pattern::Comb(comb::glue(c, family)),
            Pattern::Multi(c) => Pattern::Multi(multi::glue(c, family)),
        };
        Ok(SupResult::Supremum(glued))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = Pattern<BigInt>;

    fn lit(s: &str) -> Quad<BigInt> {
        s.parse().unwrap()
    }

    fn points_1d(xs: &[&str]) -> P {
        Pattern::Points(
            PointSet::new(
                1,
                None,
                xs.iter().map(|s| Vector::one_d(lit(s))).collect(),
            )
            .unwrap(),
        )
    }

    #[test]
    fn cut_by_all_and_empty_are_identity_and_zero() {
        let p = points_1d(&["0", "1", "2"]);
        assert_eq!(p.cut(&Region::All), p);
        let z = p.cut(&Region::Empty);
        assert!(z.is_zero());
        assert_eq!(z, p.zero_like());
    }

    #[test]
    fn cut_keeps_boundary_points_of_closed_balls() {
        let p = points_1d(&["0", "1", "2"]);
        let c = Region::ball0(1, lit("3/2"));
        assert_eq!(p.cut(&c), points_1d(&["0", "1"]));
        let boundary = Region::ball0(1, lit("2"));
        assert_eq!(p.cut(&boundary), p);
    }

    #[test]
    fn support_law_via_cut_round_trip() {
        let p = points_1d(&["-3", "0", "5"]);
        let supp = p.support();
        assert_eq!(p.cut(&supp), p);
        assert!(p.supp_within(&supp));
        let smaller = Region::ball0(1, lit("3"));
        assert!(!p.supp_within(&smaller));
        assert_ne!(p.cut(&smaller), p);
    }

    #[test]
    fn order_is_cut_restriction() {
        let p = points_1d(&["0", "1", "2"]);
        let q = p.cut(&Region::ball0(1, lit("1")));
        assert!(p.geq(&q).unwrap().geq);
        assert!(!q.geq(&p).unwrap().geq);
        assert!(p.geq(&p).unwrap().geq);
        let z = p.zero_like();
        assert!(p.geq(&z).unwrap().geq);
        assert!(!z.geq(&p).unwrap().geq);
    }

    #[test]
    fn supremum_of_empty_family_is_zero() {
        let ctx = points_1d(&["7"]);
        let sup = P::supremum(&ctx, &[]).unwrap().unwrap_supremum();
        assert!(sup.is_zero());
    }

    #[test]
    fn supremum_glues_and_majorizes() {
        let a = points_1d(&["0", "1"]);
        let b = points_1d(&["1", "2"]);
        let sup = P::supremum(&a, &[a.clone(), b.clone()])
            .unwrap()
            .unwrap_supremum();
        assert_eq!(sup, points_1d(&["0", "1", "2"]));
        assert!(sup.geq(&a).unwrap().geq);
        assert!(sup.geq(&b).unwrap().geq);
    }

    #[test]
    fn atomistic_law_holds() {
        let p = points_1d(&["-1", "1/2", "3"]);
        let atoms = p.atoms();
        assert_eq!(atoms.len(), 3);
        let sup = P::supremum(&p, &atoms).unwrap().unwrap_supremum();
        assert_eq!(sup, p);
    }

    #[test]
    fn context_mismatch_is_reported() {
        let a = points_1d(&["0"]);
        let b = Pattern::Points(
            PointSet::new(1, Some(lit("1/2")), vec![Vector::one_d(lit("0"))]).unwrap(),
        );
        assert!(matches!(a.geq(&b), Err(Error::ContextMismatch(_))));
    }

    #[test]
    fn equivariance_of_cut_on_a_spot_check() {
        let p = points_1d(&["0", "1", "2"]);
        let g = Vector::one_d(lit("1/3"));
        let c = Region::ball0(1, lit("3/2"));
        assert_eq!(p.act(&g).cut(&c.translate(&g)), p.cut(&c).act(&g));
    }
}
