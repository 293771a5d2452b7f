//! Indexed multisets: a fixed-length tuple of point sets whose distinct
//! union is uniformly discrete with one shared radius. Components may share
//! points; distinct points keep separation `> r` no matter which components
//! they belong to.

use crate::error::{Error, Result};
use crate::geom::Vector;
use crate::region::Region;
use crate::scalar::{Quad, QuadInt};

use super::{Pattern, SupportAtom};

/// A finite indexed multiset, each component canonically sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multi<T: QuadInt> {
    dim: usize,
    joint_ud_radius: Quad<T>,
    components: Vec<Vec<Vector<T>>>,
}

impl<T: QuadInt> Multi<T> {
    /// Builds a multiset, validating dimensions and joint uniform
    /// discreteness of the distinct union.
    pub fn new(
        dim: usize,
        joint_ud_radius: Quad<T>,
        mut components: Vec<Vec<Vector<T>>>,
    ) -> Result<Self> {
        if !joint_ud_radius.is_positive() {
            return Err(Error::InvalidPattern(
                "discreteness radius must be positive".into(),
            ));
        }
        for comp in &mut components {
            for p in comp.iter() {
                if p.dim() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, got: p.dim() });
                }
            }
            comp.sort();
            comp.dedup();
        }
        let union = distinct_union(&components);
        let rr = joint_ud_radius.square();
        for i in 0..union.len() {
            for j in i + 1..union.len() {
                if union[i].dist_sq(&union[j]) <= rr {
                    return Err(Error::InvalidPattern(format!(
                        "distinct union points {} and {} are within distance {joint_ud_radius}",
                        union[i], union[j]
                    )));
                }
            }
        }
        Ok(Multi { dim, joint_ud_radius, components })
    }

    pub fn empty(dim: usize, joint_ud_radius: Quad<T>, arity: usize) -> Result<Self> {
        Multi::new(dim, joint_ud_radius, vec![Vec::new(); arity])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn joint_ud_radius(&self) -> &Quad<T> {
        &self.joint_ud_radius
    }

    pub fn components(&self) -> &[Vec<Vector<T>>] {
        &self.components
    }

    /// All points appearing in some component, deduplicated and sorted.
    pub fn distinct_points(&self) -> Vec<Vector<T>> {
        distinct_union(&self.components)
    }

    pub fn is_empty(&self) -> bool {
        self.components.iter().all(|c| c.is_empty())
    }

    pub(crate) fn cut(&self, region: &Region<T>) -> Self {
        let components = self
            .components
            .iter()
            .map(|comp| {
                comp.iter()
                    .filter(|p| region.contains_point(p))
                    .cloned()
                    .collect()
            })
            .collect();
        Multi {
            dim: self.dim,
            joint_ud_radius: self.joint_ud_radius.clone(),
            components,
        }
    }

    pub(crate) fn act(&self, gamma: &Vector<T>) -> Self {
        assert_eq!(gamma.dim(), self.dim, "shift dimension mismatch");
        let components = self
            .components
            .iter()
            .map(|comp| {
                let mut moved: Vec<Vector<T>> = comp.iter().map(|p| p + gamma).collect();
                moved.sort();
                moved
            })
            .collect();
        Multi {
            dim: self.dim,
            joint_ud_radius: self.joint_ud_radius.clone(),
            components,
        }
    }

    pub(crate) fn support_atoms(&self) -> Vec<SupportAtom<T>> {
        self.distinct_points()
            .into_iter()
            .map(SupportAtom::Point)
            .collect()
    }

    /// Atoms are single support points carrying their complete component
    /// fiber: the order `P ∧ supp Q = Q` cannot separate a point from the
    /// set of components it belongs to.
    pub(crate) fn atoms(&self) -> Vec<Self> {
        self.distinct_points()
            .into_iter()
            .map(|p| {
                let components = self
                    .components
                    .iter()
                    .map(|comp| {
                        if comp.binary_search(&p).is_ok() {
                            vec![p.clone()]
                        } else {
                            Vec::new()
                        }
                    })
                    .collect();
                Multi {
                    dim: self.dim,
                    joint_ud_radius: self.joint_ud_radius.clone(),
                    components,
                }
            })
            .collect()
    }

    /// Multisets are compatible when distinct cross points of the unions
    /// keep separation `> r` and membership is coherent on shared support:
    /// a point of component `i` lying in the other support must belong to
    /// the other's component `i` too, in both directions.
    pub(crate) fn compatible(&self, other: &Self) -> bool {
        let ours = self.distinct_points();
        let theirs = other.distinct_points();
        let rr = self.joint_ud_radius.square();
        for p in &ours {
            for q in &theirs {
                if p != q && p.dist_sq(q) <= rr {
                    return false;
                }
            }
        }
        let coherent = |a: &Multi<T>, b: &Multi<T>, b_union: &[Vector<T>]| {
            a.components.iter().enumerate().all(|(i, comp)| {
                comp.iter().all(|p| {
                    b_union.binary_search(p).is_err()
                        || b.components[i].binary_search(p).is_ok()
                })
            })
        };
        coherent(self, other, &theirs) && coherent(other, self, &ours)
    }
}

fn distinct_union<T: QuadInt>(components: &[Vec<Vector<T>>]) -> Vec<Vector<T>> {
    let mut union: Vec<Vector<T>> = components.iter().flatten().cloned().collect();
    union.sort();
    union.dedup();
    union
}

pub(super) fn glue<T: QuadInt>(context: &Multi<T>, family: &[Pattern<T>]) -> Multi<T> {
    let mut components = vec![Vec::new(); context.components.len()];
    for p in family {
        match p {
            Pattern::Multi(m) => {
                for (acc, comp) in components.iter_mut().zip(&m.components) {
                    acc.extend(comp.iter().cloned());
                }
            }
            _ => unreachable!("context checked"),
        }
    }
    for comp in &mut components {
        comp.sort();
        comp.dedup();
    }
    Multi {
        dim: context.dim,
        joint_ud_radius: context.joint_ud_radius.clone(),
        components,
    }
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

    fn multi(a: &[&str], b: &[&str]) -> Multi<BigInt> {
        Multi::new(1, lit("1/2"), vec![pts(a), pts(b)]).unwrap()
    }

    #[test]
    fn shared_points_across_components_are_allowed() {
        let m = multi(&["0", "1"], &["0"]);
        assert_eq!(m.distinct_points().len(), 2);
        assert!(Multi::new(1, lit("1/2"), vec![pts(&["0"]), pts(&["1/4"])]).is_err());
    }

    #[test]
    fn cut_restricts_componentwise() {
        let m = multi(&["0", "2"], &["1"]);
        let c = Region::ball0(1, lit("3/2"));
        assert_eq!(m.cut(&c), multi(&["0"], &["1"]));
    }

    #[test]
    fn coherence_on_shared_support_decides_compatibility() {
        let a = multi(&["0"], &[]);
        let b = multi(&[], &["0"]);
        assert!(!a.compatible(&b));
        let c = multi(&["0"], &["0"]);
        assert!(!a.compatible(&c));
        let x = multi(&["0", "2"], &["0"]);
        let y = multi(&["0"], &["0", "4"]);
        assert!(x.compatible(&y));
        let far = multi(&["5"], &["6"]);
        assert!(a.compatible(&far));
        let near = multi(&[], &["1/4"]);
        assert!(!a.compatible(&near));
    }

    #[test]
    fn atoms_keep_the_full_component_fiber() {
        let m = multi(&["0"], &["0", "3"]);
        let atoms = m.atoms();
        assert_eq!(atoms.len(), 2);
        assert_eq!(atoms[0], multi(&["0"], &["0"]));
        assert_eq!(atoms[1], multi(&[], &["3"]));
        assert!(m.compatible(&atoms[0]));
        assert!(!atoms[0].compatible(&multi(&["0"], &[])));
    }
}
