//! Exact arithmetic in a real quadratic field ℚ(√D).
//!
//! A [`Quad`] value is `a + b·√root` with rational `a`, `b` over a generic
//! backing integer type implementing [`QuadInt`]. All comparisons are decided
//! by exact sign analysis; no floating point enters any decision. Values whose
//! irrational part vanishes are normalized to `root == 0`, so plain rationals
//! mix freely with any quadratic context, while two distinct irrational
//! contexts (say √2 and √5) refuse to combine.
//!
//! [`SqrtVal`] represents one additional square root `√q` of a nonnegative
//! field element, enough for Euclidean norms and the matching metric. Nested
//! radicals beyond that single layer are out of scope.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Backing integer for the rational coefficients of a [`Quad`].
///
/// `num_bigint::BigInt` is the default used by the crate-root aliases;
/// `i64`/`i128` also qualify for callers that accept overflow panics.
pub trait QuadInt:
    Integer
    + Signed
    + Clone
    + Hash
    + fmt::Debug
    + fmt::Display
    + FromStr
    + From<i64>
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
}

impl<T> QuadInt for T where
    T: Integer
        + Signed
        + Clone
        + Hash
        + fmt::Debug
        + fmt::Display
        + FromStr
        + From<i64>
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Returns true when `d` has no square factor.
pub fn is_square_free(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Merges the root markers of two operands; `0` marks a plain rational.
///
/// Panics if both operands carry distinct irrational parts: values from
/// different quadratic contexts must never reach the same expression, and the
/// JSON/CLI boundary validates that before any arithmetic runs.
fn join_root(x: u64, y: u64) -> u64 {
    match (x, y) {
        (0, r) => r,
        (r, 0) => r,
        (r, s) if r == s => r,
        (r, s) => panic!("mixed quadratic contexts: sqrt({r}) vs sqrt({s})"),
    }
}

/// Exact element `a + b·√root` of ℚ(√root).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quad<T: QuadInt> {
    a: Ratio<T>,
    b: Ratio<T>,
    root: u64,
}

impl<T: QuadInt> Quad<T> {
    /// Builds a value, validating and normalizing the root marker.
    pub fn new(a: Ratio<T>, b: Ratio<T>, root: u64) -> Result<Self> {
        if b.is_zero() {
            return Ok(Self { a, b, root: 0 });
        }
        if root == 1 {
            return Ok(Self { a: a + b, b: Ratio::zero(), root: 0 });
        }
        if !is_square_free(root) {
            return Err(Error::Parse(format!(
                "root {root} is not square-free (and positive)"
            )));
        }
        Ok(Self { a, b, root })
    }

    /// A plain rational element.
    pub fn rational(a: Ratio<T>) -> Self {
        Self { a, b: Ratio::zero(), root: 0 }
    }

    /// The integer `n`.
    pub fn from_int(n: i64) -> Self {
        Self::rational(Ratio::from_integer(T::from(n)))
    }

    /// The fraction `num/den`. Panics if `den == 0`.
    pub fn from_fraction(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::rational(Ratio::new(T::from(num), T::from(den)))
    }

    /// `√root` itself.
    pub fn sqrt_root(root: u64) -> Result<Self> {
        Self::new(Ratio::zero(), Ratio::one(), root)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn rational_part(&self) -> &Ratio<T> {
        &self.a
    }

    pub fn surd_part(&self) -> &Ratio<T> {
        &self.b
    }

    /// Root marker; `0` for plain rationals.
    pub fn root(&self) -> u64 {
        self.root
    }

    pub fn is_rational(&self) -> bool {
        self.root == 0
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign of the value.
    pub fn sign(&self) -> Ordering {
        let sa = rational_sign(&self.a);
        if self.b.is_zero() {
            return sa;
        }
        let sb = rational_sign(&self.b);
        if self.a.is_zero() {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // Opposite signs: compare a² against b²·root, attributing the result
        // to whichever side dominates.
        let root = Ratio::from_integer(T::from(self.root as i64));
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * root;
        match lhs.cmp(&rhs) {
            Ordering::Equal => Ordering::Equal,
            Ordering::Greater => sa,
            Ordering::Less => sb,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Exact reciprocal via the field conjugate.
    pub fn checked_recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.b.is_zero() {
            return Ok(Self::rational(self.a.recip()));
        }
        let root = Ratio::from_integer(T::from(self.root as i64));
        // (a + b√d)(a − b√d) = a² − d·b², nonzero since √d is irrational.
        let norm = &self.a * &self.a - &self.b * &self.b * root;
        Ok(Self {
            a: &self.a / &norm,
            b: -(&self.b / &norm),
            root: self.root,
        })
    }

    /// Exact quotient.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.checked_recip()?)
    }

    /// Compares against the integer `n`.
    pub fn cmp_int(&self, n: i64) -> Ordering {
        (self - &Self::from_int(n)).sign()
    }

    /// Approximate value, used only for search hints and SVG layout.
    pub fn to_f64(&self) -> f64 {
        let a = ratio_to_f64(&self.a);
        if self.b.is_zero() {
            return a;
        }
        a + ratio_to_f64(&self.b) * (self.root as f64).sqrt()
    }

    /// Exact integer floor. The float hint only seeds the search; every
    /// adjustment is certified by exact comparison.
    pub fn floor_int(&self) -> T {
        if self.b.is_zero() {
            return self.a.floor().to_integer();
        }
        let hint = self.to_f64();
        let mut n: i64 = if hint.is_finite() {
            hint.floor().max(i64::MIN as f64 + 1.0).min(i64::MAX as f64 - 1.0) as i64
        } else {
            0
        };
        while self.cmp_int(n) == Ordering::Less {
            n -= 1;
        }
        while self.cmp_int(n + 1) != Ordering::Less {
            n += 1;
        }
        T::from(n)
    }

    /// Exact integer ceiling.
    pub fn ceil_int(&self) -> T {
        -((-self).floor_int())
    }
}

fn ratio_to_f64<T: QuadInt>(r: &Ratio<T>) -> f64 {
    let n = r.numer().to_f64().unwrap_or(f64::NAN);
    let d = r.denom().to_f64().unwrap_or(f64::NAN);
    let q = n / d;
    if q.is_finite() {
        q
    } else {
        0.0
    }
}

fn rational_sign<T: QuadInt>(r: &Ratio<T>) -> Ordering {
    if r.is_zero() {
        Ordering::Equal
    } else if r.numer() < &T::zero() {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

impl<T: QuadInt> PartialOrd for Quad<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: QuadInt> Ord for Quad<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign()
    }
}

impl<T: QuadInt> std::ops::Add for &Quad<T> {
    type Output = Quad<T>;
    fn add(self, rhs: Self) -> Quad<T> {
        Quad {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            root: normalize_root(join_root(self.root, rhs.root), &(&self.b + &rhs.b)),
        }
    }
}

impl<T: QuadInt> std::ops::Sub for &Quad<T> {
    type Output = Quad<T>;
    fn sub(self, rhs: Self) -> Quad<T> {
        Quad {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            root: normalize_root(join_root(self.root, rhs.root), &(&self.b - &rhs.b)),
        }
    }
}

impl<T: QuadInt> std::ops::Mul for &Quad<T> {
    type Output = Quad<T>;
    fn mul(self, rhs: Self) -> Quad<T> {
        let root = join_root(self.root, rhs.root);
        let d = Ratio::from_integer(T::from(root as i64));
        let a = &self.a * &rhs.a + &self.b * &rhs.b * d;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Quad { root: normalize_root(root, &b), a, b }
    }
}

impl<T: QuadInt> std::ops::Neg for &Quad<T> {
    type Output = Quad<T>;
    fn neg(self) -> Quad<T> {
        Quad { a: -self.a.clone(), b: -self.b.clone(), root: self.root }
    }
}

fn normalize_root<T: QuadInt>(root: u64, b: &Ratio<T>) -> u64 {
    if b.is_zero() {
        0
    } else {
        root
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl<T: QuadInt> std::ops::$trait for Quad<T> {
            type Output = Quad<T>;
            fn $method(self, rhs: Self) -> Quad<T> {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
        impl<'a, T: QuadInt> std::ops::$trait<&'a Quad<T>> for Quad<T> {
            type Output = Quad<T>;
            fn $method(self, rhs: &'a Quad<T>) -> Quad<T> {
                std::ops::$trait::$method(&self, rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<T: QuadInt> std::ops::Neg for Quad<T> {
    type Output = Quad<T>;
    fn neg(self) -> Quad<T> {
        -&self
    }
}

impl<T: QuadInt> fmt::Display for Quad<T> {
    /// Renders the literal grammar accepted by [`Quad::from_str`]:
    /// `3/2+1/2r5`, `-1/2r5`, `r2`, `7`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let mut out = String::new();
        if !self.a.is_zero() {
            out.push_str(&self.a.to_string());
            if !self.b.is_negative() {
                out.push('+');
            }
        }
        let babs = self.b.abs();
        if self.b.is_negative() {
            out.push('-');
        }
        if !babs.is_one() {
            out.push_str(&babs.to_string());
        }
        out.push('r');
        out.push_str(&self.root.to_string());
        write!(f, "{out}")
    }
}

impl<T: QuadInt> fmt::Debug for Quad<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_ratio<T: QuadInt>(s: &str) -> Result<Ratio<T>> {
    let bad = || Error::Parse(format!("bad rational literal {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: T = num.parse().map_err(|_| bad())?;
    let den: T = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Ratio::new(num, den))
}

impl<T: QuadInt> FromStr for Quad<T> {
    type Err = Error;

    /// Parses the exact literal grammar: `p/q`, `p/q+r/s rD`, `rD`, with an
    /// optional leading sign on either coefficient and no whitespace.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad scalar literal {s:?}"));
        if s.is_empty() {
            return Err(bad());
        }
        let Some(rpos) = s.find('r') else {
            return Ok(Self::rational(parse_ratio(s)?));
        };
        let root: u64 = s[rpos + 1..].parse().map_err(|_| bad())?;
        let coeffs = &s[..rpos];
        // Split the coefficient text at the last interior sign, if any.
        let split = coeffs
            .char_indices()
            .skip(1)
            .filter(|(i, c)| {
                (*c == '+' || *c == '-')
                    && !matches!(coeffs.as_bytes()[i - 1], b'+' | b'-' | b'/')
            })
            .map(|(i, _)| i)
            .last();
        let (a_txt, b_txt) = match split {
            Some(i) => (&coeffs[..i], &coeffs[i..]),
            None => ("", coeffs),
        };
        let a = if a_txt.is_empty() { Ratio::zero() } else { parse_ratio(a_txt)? };
        let b = match b_txt {
            "" | "+" => Ratio::one(),
            "-" => -Ratio::one(),
            t => parse_ratio(t)?,
        };
        if root == 0 || (root != 1 && !is_square_free(root)) {
            return Err(Error::Parse(format!(
                "root {root} is not square-free (and positive)"
            )));
        }
        Self::new(a, b, root)
    }
}

/// `√q` for a nonnegative field element `q`: one extra radical layer.
///
/// Comparisons go through the squared representative, which keeps every
/// decision inside ℚ(√D).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SqrtVal<T: QuadInt> {
    sq: Quad<T>,
}

impl<T: QuadInt> SqrtVal<T> {
    /// `√sq`. Panics if `sq` is negative: callers only form squared norms.
    pub fn from_square(sq: Quad<T>) -> Self {
        assert!(
            sq.sign() != Ordering::Less,
            "negative radicand {sq}"
        );
        Self { sq }
    }

    /// Embeds a nonnegative scalar `s` as `√(s²)`.
    pub fn from_nonneg_scalar(s: &Quad<T>) -> Self {
        assert!(
            s.sign() != Ordering::Less,
            "negative value {s} has no nonnegative square-root form"
        );
        Self { sq: s.square() }
    }

    pub fn zero() -> Self {
        Self { sq: Quad::zero() }
    }

    pub fn one() -> Self {
        Self { sq: Quad::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.sq.is_zero()
    }

    /// The squared value, an exact field element.
    pub fn square(&self) -> &Quad<T> {
        &self.sq
    }

    /// Compares `self = √sq` against a plain scalar.
    pub fn cmp_scalar(&self, s: &Quad<T>) -> Ordering {
        if s.is_negative() {
            return Ordering::Greater;
        }
        self.sq.cmp(&s.square())
    }

    /// `1 / √sq = √(1/sq)`.
    pub fn checked_recip(&self) -> Result<Self> {
        Ok(Self { sq: self.sq.checked_recip()? })
    }

    /// `2·√sq = √(4·sq)`.
    pub fn double(&self) -> Self {
        Self { sq: &self.sq * &Quad::from_int(4) }
    }

    /// Decides `self ≤ x + y` exactly:
    /// `√s ≤ √x + √y ⟺ s − x − y ≤ 0 ∨ (s − x − y)² ≤ 4xy`.
    pub fn le_sum(&self, x: &Self, y: &Self) -> bool {
        let gap = &self.sq - &x.sq - &y.sq;
        if gap.sign() != Ordering::Greater {
            return true;
        }
        let rhs = Quad::from_int(4) * &x.sq * &y.sq;
        gap.square() <= rhs
    }

    pub fn to_f64(&self) -> f64 {
        self.sq.to_f64().max(0.0).sqrt()
    }
}

impl<T: QuadInt> fmt::Display for SqrtVal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sqrt({})", self.sq)
    }
}

impl<T: QuadInt> fmt::Debug for SqrtVal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
