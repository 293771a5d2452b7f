//! Vectors over ℚ(√D) and the translation group acting on patterns.
//!
//! The acting group is (ℝ^d, +) restricted to exactly representable
//! coordinates, so translations and points share one type. Ordering is
//! lexicographic, which gives every enumeration in the crate a stable,
//! reproducible order.

use std::cmp::Ordering;
use std::fmt;

use crate::scalar::{Quad, QuadInt, SqrtVal};

/// A point of ℝ^d (or a translation) with exact coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector<T: QuadInt> {
    coords: Vec<Quad<T>>,
}

/// Group elements are translations; the identity is the zero vector.
pub type Translation<T> = Vector<T>;

impl<T: QuadInt> Vector<T> {
    pub fn new(coords: Vec<Quad<T>>) -> Self {
        Self { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Self { coords: vec![Quad::zero(); dim] }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self { coords: coords.iter().map(|&n| Quad::from_int(n)).collect() }
    }

    /// One-dimensional point.
    pub fn one_d(x: Quad<T>) -> Self {
        Self { coords: vec![x] }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Quad<T>] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Quad<T> {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Squared Euclidean norm, an exact field element.
    pub fn norm_sq(&self) -> Quad<T> {
        let mut acc = Quad::zero();
        for c in &self.coords {
            acc = acc + c.square();
        }
        acc
    }

    /// Euclidean norm as a one-layer radical.
    pub fn norm(&self) -> SqrtVal<T> {
        SqrtVal::from_square(self.norm_sq())
    }

    /// Squared distance to another point.
    pub fn dist_sq(&self, other: &Self) -> Quad<T> {
        (self - other).norm_sq()
    }

    /// Scales every coordinate.
    pub fn scale(&self, s: &Quad<T>) -> Self {
        Self { coords: self.coords.iter().map(|c| c * s).collect() }
    }

    /// Halves the vector, used when composing shift bounds.
    pub fn half(&self) -> Self {
        self.scale(&Quad::from_fraction(1, 2))
    }

    /// Ordering key `(‖v‖², lexicographic)` that drives every candidate
    /// enumeration: shortest shifts first, ties broken reproducibly.
    pub fn norm_then_lex(&self, other: &Self) -> Ordering {
        self.norm_sq()
            .cmp(&other.norm_sq())
            .then_with(|| self.cmp(other))
    }
}

impl<T: QuadInt> std::ops::Add for &Vector<T> {
    type Output = Vector<T>;
    fn add(self, rhs: Self) -> Vector<T> {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        Vector {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }
}

impl<T: QuadInt> std::ops::Sub for &Vector<T> {
    type Output = Vector<T>;
    fn sub(self, rhs: Self) -> Vector<T> {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        Vector {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }
}

impl<T: QuadInt> std::ops::Neg for &Vector<T> {
    type Output = Vector<T>;
    fn neg(self) -> Vector<T> {
        Vector { coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl<T: QuadInt> std::ops::Add for Vector<T> {
    type Output = Vector<T>;
    fn add(self, rhs: Self) -> Vector<T> {
        &self + &rhs
    }
}

impl<T: QuadInt> std::ops::Sub for Vector<T> {
    type Output = Vector<T>;
    fn sub(self, rhs: Self) -> Vector<T> {
        &self - &rhs
    }
}

impl<T: QuadInt> std::ops::Neg for Vector<T> {
    type Output = Vector<T>;
    fn neg(self) -> Vector<T> {
        -&self
    }
}

impl<T: QuadInt> fmt::Display for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl<T: QuadInt> fmt::Debug for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type V = Vector<BigInt>;

    fn lit(s: &str) -> Quad<BigInt> {
        s.parse().unwrap()
    }

    #[test]
    fn vector_arithmetic_is_componentwise() {
        let v = V::from_ints(&[1, 2]);
        let w = V::new(vec![lit("1/2"), lit("r5")]);
        let s = &v + &w;
        assert_eq!(s.coord(0), &lit("3/2"));
        assert_eq!(s.coord(1), &lit("2+r5"));
        assert_eq!(&s - &w, v);
        assert!((&v - &v).is_zero());
    }

    #[test]
    fn norms_are_exact() {
        let v = V::new(vec![lit("1/2"), lit("1/2r5")]);
        assert_eq!(v.norm_sq(), lit("3/2"));
        assert_eq!(
            v.norm().cmp_scalar(&lit("5/4")),
            std::cmp::Ordering::Less
        );
        assert_eq!(
            v.norm().cmp_scalar(&lit("6/5")),
            std::cmp::Ordering::Greater
        );
    }

    #[test]
    fn ordering_is_lexicographic_with_norm_key() {
        let a = V::from_ints(&[0, 2]);
        let b = V::from_ints(&[1, 1]);
        assert!(a < b);
        assert_eq!(a.norm_then_lex(&b), std::cmp::Ordering::Greater);
        assert_eq!(b.norm_then_lex(&b.clone()), std::cmp::Ordering::Equal);
    }
}
