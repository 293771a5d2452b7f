//! Symbolic content on ℤ: a finite partial word over a fixed alphabet.
//! Unset positions are blank, and blank is not a letter. The translation
//! action is restricted to integer shifts.

use std::collections::BTreeMap;


use crate::error::{Error, Result};
use crate::geom::Vector;
use crate::region::Region;
use crate::scalar::{Quad, QuadInt};

use super::{Pattern, SupportAtom};

/// A finite-support word, stored as position → alphabet index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Symbolic<T: QuadInt> {
    alphabet: Vec<String>,
    letters: BTreeMap<i64, usize>,
    _marker: std::marker::PhantomData<T>,
}

/// Extracts the integer value of a one-dimensional shift, rejecting
/// non-integer translations of symbolic content.
pub fn integer_shift<T: QuadInt>(gamma: &Vector<T>) -> Result<i64> {
    if gamma.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, got: gamma.dim() });
    }
    let q = gamma.coord(0);
    if !q.is_rational() || !q.rational_part().is_integer() {
        return Err(Error::InvalidPattern(format!(
            "symbolic patterns only translate by integers, got {q}"
        )));
    }
    q.rational_part()
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::InvalidPattern("shift out of range".into()))
}

impl<T: QuadInt> Symbolic<T> {
    /// Builds a word over `alphabet` (deduplicated, sorted, nonempty
    /// letters) from explicit position assignments.
    pub fn new(mut alphabet: Vec<String>, letters: BTreeMap<i64, String>) -> Result<Self> {
        alphabet.sort();
        alphabet.dedup();
        if alphabet.iter().any(|s| s.is_empty()) {
            return Err(Error::InvalidPattern("letters must be nonempty".into()));
        }
        let mut indexed = BTreeMap::new();
        for (pos, letter) in letters {
            let idx = alphabet
                .binary_search(&letter)
                .map_err(|_| Error::InvalidPattern(format!("letter {letter:?} not in alphabet")))?;
            indexed.insert(pos, idx);
        }
        Ok(Symbolic { alphabet, letters: indexed, _marker: std::marker::PhantomData })
    }

    pub fn empty(alphabet: Vec<String>) -> Result<Self> {
        Symbolic::new(alphabet, BTreeMap::new())
    }

    pub(crate) fn from_indices(alphabet: Vec<String>, letters: BTreeMap<i64, usize>) -> Self {
        debug_assert!(letters.values().all(|&i| i < alphabet.len()));
        Symbolic { alphabet, letters, _marker: std::marker::PhantomData }
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    /// The letter at a position, if set.
    pub fn letter_at(&self, pos: i64) -> Option<&str> {
        self.letters.get(&pos).map(|&i| self.alphabet[i].as_str())
    }

    pub fn entries(&self) -> impl Iterator<Item = (i64, &str)> + '_ {
        self.letters.iter().map(|(&p, &i)| (p, self.alphabet[i].as_str()))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn position_vector(pos: i64) -> Vector<T> {
        Vector::one_d(Quad::from_int(pos))
    }

    pub(crate) fn positions_as_vectors(&self) -> Vec<Vector<T>> {
        self.letters.keys().map(|&p| Self::position_vector(p)).collect()
    }

    pub(crate) fn cut(&self, region: &Region<T>) -> Self {
        let letters = self
            .letters
            .iter()
            .filter(|(&p, _)| region.contains_point(&Self::position_vector(p)))
            .map(|(&p, &i)| (p, i))
            .collect();
        Symbolic { alphabet: self.alphabet.clone(), letters, _marker: std::marker::PhantomData }
    }

    /// Translation by an integer vector; panics on non-integer shifts, which
    /// the boundary layers reject with an error beforehand.
    pub(crate) fn act(&self, gamma: &Vector<T>) -> Self {
        let shift = integer_shift(gamma).expect("symbolic shift must be an integer");
        let letters = self.letters.iter().map(|(&p, &i)| (p + shift, i)).collect();
        Symbolic { alphabet: self.alphabet.clone(), letters, _marker: std::marker::PhantomData }
    }

    pub(crate) fn support_atoms(&self) -> Vec<SupportAtom<T>> {
        self.letters
            .keys()
            .map(|&p| SupportAtom::Point(Self::position_vector(p)))
            .collect()
    }

    pub(crate) fn atoms(&self) -> Vec<Self> {
        self.letters
            .iter()
            .map(|(&p, &i)| Symbolic {
                alphabet: self.alphabet.clone(),
                letters: BTreeMap::from([(p, i)]),
                _marker: std::marker::PhantomData,
            })
            .collect()
    }

    /// Words are compatible when they agree on shared positions.
    pub(crate) fn compatible(&self, other: &Self) -> bool {
        self.letters
            .iter()
            .all(|(p, i)| other.letters.get(p).is_none_or(|j| i == j))
    }
}

pub(super) fn glue<T: QuadInt>(context: &Symbolic<T>, family: &[Pattern<T>]) -> Symbolic<T> {
    let mut letters = BTreeMap::new();
    for p in family {
        match p {
            Pattern::Symbolic(w) => letters.extend(w.letters.iter().map(|(&p, &i)| (p, i))),
            _ => unreachable!("context checked"),
        }
    }
    Symbolic {
        alphabet: context.alphabet.clone(),
        letters,
        _marker: std::marker::PhantomData,
    }
}
