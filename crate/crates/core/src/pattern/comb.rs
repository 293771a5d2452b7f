//! Weighted Dirac combs: complex rational weights on a uniformly discrete
//! support. A zero weight means the point is absent.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geom::Vector;
use crate::region::Region;
use crate::scalar::{Quad, QuadInt};

use super::{Pattern, SupportAtom};

/// A complex rational weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight<T: QuadInt> {
    pub re: Ratio<T>,
    pub im: Ratio<T>,
}

impl<T: QuadInt> Weight<T> {
    pub fn new(re: Ratio<T>, im: Ratio<T>) -> Self {
        Weight { re, im }
    }

    pub fn real(re: Ratio<T>) -> Self {
        Weight { re, im: Ratio::zero() }
    }

    pub fn one() -> Self {
        Weight { re: Ratio::one(), im: Ratio::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl<T: QuadInt> std::fmt::Display for Weight<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// A finite weighted comb, canonically sorted by point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Comb<T: QuadInt> {
    dim: usize,
    ud_radius: Quad<T>,
    entries: Vec<(Vector<T>, Weight<T>)>,
}

impl<T: QuadInt> Comb<T> {
    /// Builds a comb, validating nonzero weights, single-valuedness, and
    /// strict pairwise separation `> r` of the support.
    pub fn new(
        dim: usize,
        ud_radius: Quad<T>,
        mut entries: Vec<(Vector<T>, Weight<T>)>,
    ) -> Result<Self> {
        if !ud_radius.is_positive() {
            return Err(Error::InvalidPattern(
                "discreteness radius must be positive".into(),
            ));
        }
        for (p, w) in &entries {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: p.dim() });
            }
            if w.is_zero() {
                return Err(Error::InvalidPattern(format!(
                    "zero weight at {p} is not a comb entry"
                )));
            }
        }
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        entries.dedup();
        let rr = ud_radius.square();
        for i in 0..entries.len() {
            for j in i + 1..entries.len() {
                let (p, q) = (&entries[i].0, &entries[j].0);
                if p == q {
                    return Err(Error::InvalidPattern(format!(
                        "point {p} carries two different weights"
                    )));
                }
                if p.dist_sq(q) <= rr {
                    return Err(Error::InvalidPattern(format!(
                        "support points {p} and {q} are within distance {ud_radius}"
                    )));
                }
            }
        }
        Ok(Comb { dim, ud_radius, entries })
    }

    pub fn empty(dim: usize, ud_radius: Quad<T>) -> Result<Self> {
        Comb::new(dim, ud_radius, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ud_radius(&self) -> &Quad<T> {
        &self.ud_radius
    }

    pub fn entries(&self) -> &[(Vector<T>, Weight<T>)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn weight_at(&self, point: &Vector<T>) -> Option<&Weight<T>> {
        self.entries
            .binary_search_by(|e| e.0.cmp(point))
            .ok()
            .map(|i| &self.entries[i].1)
    }

    pub(crate) fn cut(&self, region: &Region<T>) -> Self {
        let entries = self
            .entries
            .iter()
            .filter(|(p, _)| region.contains_point(p))
            .cloned()
            .collect();
        Comb { dim: self.dim, ud_radius: self.ud_radius.clone(), entries }
    }

    pub(crate) fn act(&self, gamma: &Vector<T>) -> Self {
        assert_eq!(gamma.dim(), self.dim, "shift dimension mismatch");
        let mut entries: Vec<_> = self
            .entries
            .iter()
            .map(|(p, w)| (p + gamma, w.clone()))
            .collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        Comb { dim: self.dim, ud_radius: self.ud_radius.clone(), entries }
    }

    pub(crate) fn support_atoms(&self) -> Vec<SupportAtom<T>> {
        self.entries
            .iter()
            .map(|(p, _)| SupportAtom::Point(p.clone()))
            .collect()
    }

    pub(crate) fn atoms(&self) -> Vec<Self> {
        self.entries
            .iter()
            .map(|e| Comb {
                dim: self.dim,
                ud_radius: self.ud_radius.clone(),
                entries: vec![e.clone()],
            })
            .collect()
    }

    /// Combs are compatible when shared points carry equal weights and
    /// distinct cross points keep separation `> r`.
    pub(crate) fn compatible(&self, other: &Self) -> bool {
        let rr = self.ud_radius.square();
        for (p, w) in &self.entries {
            for (q, v) in &other.entries {
                if p == q {
                    if w != v {
                        return false;
                    }
                } else if p.dist_sq(q) <= rr {
                    return false;
                }
            }
        }
        true
    }
}

pub(super) fn glue<T: QuadInt>(context: &Comb<T>, family: &[Pattern<T>]) -> Comb<T> {
    let mut entries = Vec::new();
    for p in family {
        match p {
            Pattern::Comb(c) => entries.extend(c.entries.iter().cloned()),
            _ => unreachable!("context checked"),
        }
    }
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    entries.dedup();
    Comb {
        dim: context.dim,
        ud_radius: context.ud_radius.clone(),
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn lit(s: &str) -> Quad<BigInt> {
        s.parse().unwrap()
    }

    fn w(n: i64) -> Weight<BigInt> {
        Weight::real(Ratio::from(BigInt::from(n)))
    }

    fn comb(entries: &[(&str, i64)]) -> Comb<BigInt> {
        Comb::new(
            1,
            lit("1/2"),
            entries
                .iter()
                .map(|&(x, n)| (Vector::one_d(lit(x)), w(n)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn zero_weights_and_double_assignments_are_rejected() {
        assert!(Comb::new(1, lit("1/2"), vec![(Vector::one_d(lit("0")), w(0))]).is_err());
        assert!(Comb::new(
            1,
            lit("1/2"),
            vec![(Vector::one_d(lit("0")), w(1)), (Vector::one_d(lit("0")), w(2))],
        )
        .is_err());
    }

    #[test]
    fn cut_drops_outside_spikes() {
        let c = comb(&[("0", 1), ("3", 2)]);
        let cut = c.cut(&Region::ball0(1, lit("1")));
        assert_eq!(cut, comb(&[("0", 1)]));
    }

    #[test]
    fn shared_points_must_agree_in_weight() {
        let a = comb(&[("0", 1), ("2", 2)]);
        let same = comb(&[("0", 1), ("4", 3)]);
        let differs = comb(&[("0", 5)]);
        let near = comb(&[("1/4", 1)]);
        assert!(a.compatible(&same));
        assert!(!a.compatible(&differs));
        assert!(!a.compatible(&near));
    }

    #[test]
    fn complex_weights_render_exactly() {
        let v = Weight::<BigInt>::new(
            Ratio::new(BigInt::from(1), BigInt::from(2)),
            Ratio::new(BigInt::from(-3), BigInt::from(4)),
        );
        assert_eq!(v.to_string(), "1/2-3/4i");
    }
}
