//! Patches: finite sets of nonempty open boxes that are pairwise equal or
//! disjoint, optionally labeled. Translations move boxes and keep labels.

use crate::error::{Error, Result};
use crate::geom::Vector;
use crate::region::Region;
use crate::scalar::QuadInt;

use super::{Pattern, SupportAtom};

/// One open box `(lo, hi)` with an optional label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tile<T: QuadInt> {
    pub lo: Vector<T>,
    pub hi: Vector<T>,
    pub label: Option<String>,
}

impl<T: QuadInt> Tile<T> {
    pub fn new(lo: Vector<T>, hi: Vector<T>, label: Option<String>) -> Self {
        Tile { lo, hi, label }
    }

    fn translate(&self, gamma: &Vector<T>) -> Self {
        Tile {
            lo: &self.lo + gamma,
            hi: &self.hi + gamma,
            label: self.label.clone(),
        }
    }

    fn overlaps(&self, other: &Self) -> bool {
        (0..self.lo.dim()).all(|i| {
            self.lo.coord(i) < other.hi.coord(i) && other.lo.coord(i) < self.hi.coord(i)
        })
    }

    fn same_box(&self, other: &Self) -> bool {
        self.lo == other.lo && self.hi == other.hi
    }
}

/// A finite patch, canonically sorted by `(lo, hi, label)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Patch<T: QuadInt> {
    dim: usize,
    tiles: Vec<Tile<T>>,
}

impl<T: QuadInt> Patch<T> {
    /// Builds a patch, validating that every box is nonempty and open
    /// (`lo < hi` strictly per axis) and that tiles are pairwise equal or
    /// disjoint, with equal boxes carrying equal labels.
    pub fn new(dim: usize, mut tiles: Vec<Tile<T>>) -> Result<Self> {
        for t in &tiles {
            if t.lo.dim() != dim || t.hi.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: t.lo.dim() });
            }
            for i in 0..dim {
                if !(t.lo.coord(i) < t.hi.coord(i)) {
                    return Err(Error::InvalidPattern(format!(
                        "tile [{}, {}] is empty on axis {i}",
                        t.lo, t.hi
                    )));
                }
            }
        }
        tiles.sort();
        tiles.dedup();
        for i in 0..tiles.len() {
            for j in i + 1..tiles.len() {
                if let Some(msg) = clash(&tiles[i], &tiles[j]) {
                    return Err(Error::InvalidPattern(msg));
                }
            }
        }
        Ok(Patch { dim, tiles })
    }

    pub fn empty(dim: usize) -> Self {
        Patch { dim, tiles: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tiles(&self) -> &[Tile<T>] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub(crate) fn cut(&self, region: &Region<T>) -> Self {
        let tiles = self
            .tiles
            .iter()
            .filter(|t| region.contains_box(&t.lo, &t.hi))
            .cloned()
            .collect();
        Patch { dim: self.dim, tiles }
    }

    pub(crate) fn act(&self, gamma: &Vector<T>) -> Self {
        assert_eq!(gamma.dim(), self.dim, "shift dimension mismatch");
        let mut tiles: Vec<Tile<T>> = self.tiles.iter().map(|t| t.translate(gamma)).collect();
        tiles.sort();
        Patch { dim: self.dim, tiles }
    }

    pub(crate) fn support_atoms(&self) -> Vec<SupportAtom<T>> {
        self.tiles
            .iter()
            .map(|t| SupportAtom::Box { lo: t.lo.clone(), hi: t.hi.clone() })
            .collect()
    }

    pub(crate) fn atoms(&self) -> Vec<Self> {
        self.tiles
            .iter()
            .map(|t| Patch { dim: self.dim, tiles: vec![t.clone()] })
            .collect()
    }

    /// Patches are compatible when every cross pair of tiles is equal
    /// (including labels) or disjoint.
    pub(crate) fn compatible(&self, other: &Self) -> bool {
        for a in &self.tiles {
            for b in &other.tiles {
                if clash(a, b).is_some() {
                    return false;
                }
            }
        }
        true
    }
}

fn clash<T: QuadInt>(a: &Tile<T>, b: &Tile<T>) -> Option<String> {
    if a.same_box(b) {
        if a.label != b.label {
            return Some(format!(
                "equal boxes at [{}, {}] carry different labels",
                a.lo, a.hi
            ));
        }
        return None;
    }
    if a.overlaps(b) {
        return Some(format!(
            "tiles [{}, {}] and [{}, {}] overlap without being equal",
            a.lo, a.hi, b.lo, b.hi
        ));
    }
    None
}

pub(super) fn glue<T: QuadInt>(context: &Patch<T>, family: &[Pattern<T>]) -> Patch<T> {
    let mut tiles = Vec::new();
    for p in family {
        match p {
            Pattern::Patch(q) => tiles.extend(q.tiles.iter().cloned()),
            _ => unreachable!("context checked"),
        }
    }
    tiles.sort();
    tiles.dedup();
    Patch { dim: context.dim, tiles }
}
