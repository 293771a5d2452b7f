//! Finite descriptions of infinite patterns, materialized exactly on
//! bounded regions.
//!
//! A generator denotes one infinite pattern. `materialize(C)` returns the
//! cut of that pattern by a bounded closed region, exactly: every atom whose
//! support lies in `C` appears, nothing else does. [`WindowSource`] wraps
//! either a finite pattern or a shifted generator behind one windowing API,
//! which is what the topology and hull layers consume.


use crate::error::{Error, Result};
use crate::geom::Vector;
use crate::pattern::{NoSup, Patch, Pattern, PointSet, SpaceKind, SupResult, Symbolic, Tile};
use crate::region::{Bounds, Region};
use crate::scalar::{Quad, QuadInt, SqrtVal};

/// A geometric substitution system on an interval alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubstSystem<T: QuadInt> {
    alphabet: Vec<String>,
    rules: Vec<Vec<usize>>,
    lengths: Vec<Quad<T>>,
    lambda: Quad<T>,
    seed: (usize, usize),
    exponent: u32,
    tiles: bool,
}

/// A letter substitution system producing symbolic content on ℤ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WordSystem {
    alphabet: Vec<String>,
    rules: Vec<Vec<usize>>,
    seed: (usize, usize),
    exponent: u32,
}

/// A finite description of an infinite pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Generator<T: QuadInt> {
    /// Lattice translates of a finite motif: `⋃_{k∈ℤ^d} (B·k + motif)`.
    Periodic { basis: Vec<Vector<T>>, motif: Pattern<T> },
    /// The two-sided fixed point of a geometric interval substitution.
    Substitution(SubstSystem<T>),
    /// The two-sided fixed point of a letter substitution, on ℤ.
    WordSubstitution(WordSystem),
    /// A periodic bi-infinite word, on ℤ.
    WordPeriodic { alphabet: Vec<String>, word: Vec<String> },
    /// The planar point set `{(n + k²·α, k) : n, k ∈ ℤ}`: integer rows whose
    /// horizontal offsets never repeat, so no two row pairs ever align.
    ShiftedRows { alpha: Quad<T> },
}

fn apply(rules: &[Vec<usize>], word: &[usize]) -> Vec<usize> {
    word.iter().flat_map(|&s| rules[s].iter().copied()).collect()
}

fn apply_pow(rules: &[Vec<usize>], word: &[usize], e: u32) -> Vec<usize> {
    let mut w = word.to_vec();
    for _ in 0..e {
        w = apply(rules, &w);
    }
    w
}

fn index_alphabet(alphabet: &mut Vec<String>) -> Result<()> {
    alphabet.sort();
    alphabet.dedup();
    if alphabet.is_empty() || alphabet.iter().any(|s| s.is_empty()) {
        return Err(Error::InvalidGenerator(
            "alphabet must be a nonempty set of nonempty letters".into(),
        ));
    }
    Ok(())
}

fn letter_index(alphabet: &[String], letter: &str) -> Result<usize> {
    alphabet
        .binary_search_by(|s| s.as_str().cmp(letter))
        .map_err(|_| Error::InvalidGenerator(format!("letter {letter:?} not in alphabet")))
}

fn check_rules(alphabet: &[String], named: &[(String, Vec<String>)]) -> Result<Vec<Vec<usize>>> {
    let mut rules: Vec<Option<Vec<usize>>> = vec![None; alphabet.len()];
    for (letter, image) in named {
        let s = letter_index(alphabet, letter)?;
        if rules[s].is_some() {
            return Err(Error::InvalidGenerator(format!("two rules for {letter:?}")));
        }
        if image.is_empty() {
            return Err(Error::InvalidGenerator(format!("empty image for {letter:?}")));
        }
        let image = image
            .iter()
            .map(|t| letter_index(alphabet, t))
            .collect::<Result<Vec<_>>>()?;
        rules[s] = Some(image);
    }
    rules
        .into_iter()
        .enumerate()
        .map(|(s, r)| {
            r.ok_or_else(|| {
                Error::InvalidGenerator(format!("no rule for {:?}", alphabet[s]))
            })
        })
        .collect()
}

/// The seed pair `l|r` is legal when `lr` occurs inside some expanded
/// letter, so the two-sided fixed point has only admitted local content.
fn check_seed_legal(rules: &[Vec<usize>], l: usize, r: usize) -> Result<()> {
    for s in 0..rules.len() {
        let mut w = vec![s];
        for _ in 0..8 {
            w = apply(rules, &w);
            if w.len() > 4096 {
                w.truncate(4096);
            }
            if w.windows(2).any(|pair| pair == [l, r]) {
                return Ok(());
            }
        }
    }
    Err(Error::InvalidGenerator(
        "seed pair never occurs in expanded letters".into(),
    ))
}

fn check_fixed_point(rules: &[Vec<usize>], seed: (usize, usize), e: u32) -> Result<()> {
    if e == 0 {
        return Err(Error::InvalidGenerator("exponent must be positive".into()));
    }
    let left = apply_pow(rules, &[seed.0], e);
    if left.last() != Some(&seed.0) {
        return Err(Error::InvalidGenerator(
            "expanded left seed must end with the left seed".into(),
        ));
    }
    let right = apply_pow(rules, &[seed.1], e);
    if right.first() != Some(&seed.1) {
        return Err(Error::InvalidGenerator(
            "expanded right seed must start with the right seed".into(),
        ));
    }
    check_seed_legal(rules, seed.0, seed.1)
}

impl<T: QuadInt> SubstSystem<T> {
    /// Builds and fully validates a geometric substitution system.
    pub fn new(
        mut alphabet: Vec<String>,
        named_rules: Vec<(String, Vec<String>)>,
        named_lengths: Vec<(String, Quad<T>)>,
        lambda: Quad<T>,
        seed: (String, String),
        exponent: u32,
        tiles: bool,
    ) -> Result<Self> {
        index_alphabet(&mut alphabet)?;
        let rules = check_rules(&alphabet, &named_rules)?;
        let mut lengths: Vec<Option<Quad<T>>> = vec![None; alphabet.len()];
        for (letter, len) in named_lengths {
            let s = letter_index(&alphabet, &letter)?;
            if !len.is_positive() {
                return Err(Error::InvalidGenerator(format!(
                    "length of {letter:?} must be positive"
                )));
            }
            lengths[s] = Some(len);
        }
        let lengths = lengths
            .into_iter()
            .enumerate()
            .map(|(s, l)| {
                l.ok_or_else(|| {
                    Error::InvalidGenerator(format!("no length for {:?}", alphabet[s]))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        for (s, rule) in rules.iter().enumerate() {
            let mut total = Quad::zero();
            for &t in rule {
                total = total + lengths[t].clone();
            }
            let scaled = lambda.clone() * lengths[s].clone();
            if total != scaled {
                return Err(Error::InvalidGenerator(format!(
                    "image of {:?} has natural length {total}, inflation demands {scaled}",
                    alphabet[s]
                )));
            }
        }
        let seed = (
            letter_index(&alphabet, &seed.0)?,
            letter_index(&alphabet, &seed.1)?,
        );
        check_fixed_point(&rules, seed, exponent)?;
        Ok(SubstSystem { alphabet, rules, lengths, lambda, seed, exponent, tiles })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn lambda(&self) -> &Quad<T> {
        &self.lambda
    }

    pub fn emits_tiles(&self) -> bool {
        self.tiles
    }

    fn max_length(&self) -> Quad<T> {
        let mut m = self.lengths[0].clone();
        for l in &self.lengths[1..] {
            if *l > m {
                m = l.clone();
            }
        }
        m
    }

    fn natural_length(&self, word: &[usize]) -> Quad<T> {
        let mut total = Quad::zero();
        for &s in word {
            total = total + self.lengths[s].clone();
        }
        total
    }

    /// All tiles of the fixed point whose closure meets `[-reach, reach]`.
    fn tiles_within(&self, reach: &Quad<T>) -> Vec<Tile<T>> {
        let margin = reach.clone() + self.max_length() + Quad::one();
        let mut right = vec![self.seed.1];
        while self.natural_length(&right) < margin {
            right = apply_pow(&self.rules, &right, self.exponent);
        }
        let mut left = vec![self.seed.0];
        while self.natural_length(&left) < margin {
            left = apply_pow(&self.rules, &left, self.exponent);
        }
        let mut out = Vec::new();
        let mut cursor = Quad::zero();
        for &s in &right {
            let hi = cursor.clone() + self.lengths[s].clone();
            if cursor > *reach {
                break;
            }
            out.push(self.tile(cursor.clone(), hi.clone(), s));
            cursor = hi;
        }
        let mut cursor = Quad::zero();
        for &s in left.iter().rev() {
            let lo = cursor.clone() - self.lengths[s].clone();
            out.push(self.tile(lo.clone(), cursor.clone(), s));
            cursor = lo;
            let neg_reach = -reach.clone();
            if cursor < neg_reach {
                break;
            }
        }
        out.sort();
        out
    }

    fn tile(&self, lo: Quad<T>, hi: Quad<T>, s: usize) -> Tile<T> {
        Tile::new(
            Vector::one_d(lo),
            Vector::one_d(hi),
            Some(self.alphabet[s].clone()),
        )
    }
}

impl WordSystem {
    pub fn new(
        mut alphabet: Vec<String>,
        named_rules: Vec<(String, Vec<String>)>,
        seed: (String, String),
        exponent: u32,
    ) -> Result<Self> {
        index_alphabet(&mut alphabet)?;
        let rules = check_rules(&alphabet, &named_rules)?;
        let seed = (
            letter_index(&alphabet, &seed.0)?,
            letter_index(&alphabet, &seed.1)?,
        );
        check_fixed_point(&rules, seed, exponent)?;
        Ok(WordSystem { alphabet, rules, seed, exponent })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    /// The letter at position `n` of the two-sided fixed point.
    pub fn letter_at(&self, n: i64) -> usize {
        let need = n.unsigned_abs() as usize + 1;
        if n >= 0 {
            let mut right = vec![self.seed.1];
            while right.len() < need {
                right = apply_pow(&self.rules, &right, self.exponent);
            }
            right[n as usize]
        } else {
            let mut left = vec![self.seed.0];
            while left.len() < need {
                left = apply_pow(&self.rules, &left, self.exponent);
            }
            left[left.len() - need]
        }
    }

    fn window_word(&self, lo: i64, hi: i64) -> Vec<(i64, usize)> {
        if lo > hi {
            return Vec::new();
        }
        let mut out = Vec::with_capacity((hi - lo + 1) as usize);
        let mut right = vec![self.seed.1];
        if hi >= 0 {
            let need = hi as usize + 1;
            while right.len() < need {
                right = apply_pow(&self.rules, &right, self.exponent);
            }
        }
        let mut left = vec![self.seed.0];
        if lo < 0 {
            let need = lo.unsigned_abs() as usize;
            while left.len() < need {
                left = apply_pow(&self.rules, &left, self.exponent);
            }
        }
        for n in lo..=hi {
            let letter = if n >= 0 {
                right[n as usize]
            } else {
                left[left.len() - n.unsigned_abs() as usize]
            };
            out.push((n, letter));
        }
        out
    }
}

fn quad_to_i64<T: QuadInt>(v: T) -> Result<i64> {
    v.to_i64()
        .ok_or_else(|| Error::UnboundedRegion("window coordinate out of range".into()))
}

fn bounded_box<T: QuadInt>(region: &Region<T>) -> Result<Option<(Vector<T>, Vector<T>)>> {
    match region.bounds() {
        Bounds::Empty => Ok(None),
        Bounds::Box { lo, hi } => Ok(Some((lo, hi))),
        Bounds::Unbounded => Err(Error::UnboundedRegion(
            "materializing an infinite pattern needs a bounded region".into(),
        )),
    }
}

impl<T: QuadInt> Generator<T> {
    /// Lattice translates of a motif. Validates basis independence and that
    /// overlapping copies agree, probing a window that covers every possible
    /// pair of interacting copies.
    pub fn periodic(basis: Vec<Vector<T>>, motif: Pattern<T>) -> Result<Self> {
        let dim = motif.dim();
        if basis.len() != dim || basis.iter().any(|b| b.dim() != dim) {
            return Err(Error::InvalidGenerator(format!(
                "need {dim} basis vectors of dimension {dim}"
            )));
        }
        if dim == 0 || dim > 2 {
            return Err(Error::InvalidGenerator(
                "periodic generators support dimensions 1 and 2".into(),
            ));
        }
        let det = match dim {
            1 => basis[0].coord(0).clone(),
            _ => {
                let p = basis[0].coord(0).clone() * basis[1].coord(1).clone();
                let q = basis[0].coord(1).clone() * basis[1].coord(0).clone();
                p - q
            }
        };
        if det.is_zero() {
            return Err(Error::InvalidGenerator("basis is linearly dependent".into()));
        }
        if let Pattern::Symbolic(_) = motif {
            for b in &basis {
                let c = b.coord(0);
                if !c.is_rational() || !c.rational_part().is_integer() {
                    return Err(Error::InvalidGenerator(
                        "symbolic motifs need integer basis vectors".into(),
                    ));
                }
            }
        }
        let gen = Generator::Periodic { basis, motif };
        let probe = gen.coherence_probe_radius();
        gen.materialize(&Region::ball0(dim, probe)).map_err(|e| {
            Error::InvalidGenerator(format!("lattice copies clash: {e}"))
        })?;
        Ok(gen)
    }

    fn coherence_probe_radius(&self) -> Quad<T> {
        let Generator::Periodic { basis, motif } = self else {
            unreachable!()
        };
        let mut hint = 1.0f64;
        if let Bounds::Box { lo, hi } = motif.support().bounds() {
            for i in 0..lo.dim() {
                hint = hint.max(lo.coord(i).to_f64().abs() + 1.0);
                hint = hint.max(hi.coord(i).to_f64().abs() + 1.0);
            }
        }
        let mut basis_hint = 0.0f64;
        for b in basis {
            basis_hint += b.norm().to_f64();
        }
        Quad::from_int((2.0 * hint + 2.0 * basis_hint).ceil() as i64 + 2)
    }

    pub fn dim(&self) -> usize {
        match self {
            Generator::Periodic { motif, .. } => motif.dim(),
            Generator::Substitution(_) => 1,
            Generator::WordSubstitution(_) | Generator::WordPeriodic { .. } => 1,
            Generator::ShiftedRows { .. } => 2,
        }
    }

    pub fn kind(&self) -> SpaceKind {
        match self {
            Generator::Periodic { motif, .. } => motif.kind(),
            Generator::Substitution(s) => {
                if s.tiles {
                    SpaceKind::Patch
                } else {
                    SpaceKind::PointSet
                }
            }
            Generator::WordSubstitution(_) | Generator::WordPeriodic { .. } => {
                SpaceKind::Symbolic
            }
            Generator::ShiftedRows { .. } => SpaceKind::PointSet,
        }
    }

    /// The zero pattern of the space this generator emits into.
    pub fn zero_pattern(&self) -> Pattern<T> {
        match self {
            Generator::Periodic { motif, .. } => motif.zero_like(),
            Generator::Substitution(s) => {
                if s.tiles {
                    Pattern::Patch(Patch::empty(1))
                } else {
                    Pattern::Points(PointSet::empty(1, None))
                }
            }
            Generator::WordSubstitution(w) => {
                Pattern::Symbolic(Symbolic::empty(w.alphabet.clone()).expect("valid alphabet"))
            }
            Generator::WordPeriodic { alphabet, .. } => {
                Pattern::Symbolic(Symbolic::empty(alphabet.clone()).expect("valid alphabet"))
            }
            Generator::ShiftedRows { .. } => Pattern::Points(PointSet::empty(2, None)),
        }
    }

    /// The exact cut of the denoted infinite pattern by a bounded region.
    pub fn materialize(&self, region: &Region<T>) -> Result<Pattern<T>> {
        let Some((lo, hi)) = bounded_box(region)? else {
            return Ok(self.zero_pattern());
        };
        match self {
            Generator::Periodic { basis, motif } => {
                materialize_periodic(basis, motif, region, &lo, &hi)
            }
            Generator::Substitution(s) => {
                let mut reach = Quad::zero();
                for c in [lo.coord(0), hi.coord(0)] {
                    let a = c.abs();
                    if a > reach {
                        reach = a;
                    }
                }
                let tiles = s.tiles_within(&reach);
                let pattern = if s.tiles {
                    Pattern::Patch(Patch::new(1, tiles)?)
                } else {
                    let points = tiles.into_iter().map(|t| t.lo).collect();
                    Pattern::Points(PointSet::new(1, None, points)?)
                };
                Ok(pattern.cut(region))
            }
            Generator::WordSubstitution(w) => {
                let lo_n = lo.coord(0).ceil_int();
                let hi_n = hi.coord(0).floor_int();
                let (lo_n, hi_n) = (quad_to_i64(lo_n)?, quad_to_i64(hi_n)?);
                let letters = w
                    .window_word(lo_n, hi_n)
                    .into_iter()
                    .collect::<std::collections::BTreeMap<i64, usize>>();
                let pattern =
                    Pattern::Symbolic(Symbolic::from_indices(w.alphabet.clone(), letters));
                Ok(pattern.cut(region))
            }
            Generator::WordPeriodic { alphabet, word } => {
                let lo_n = quad_to_i64(lo.coord(0).ceil_int())?;
                let hi_n = quad_to_i64(hi.coord(0).floor_int())?;
                let period = word.len() as i64;
                if period == 0 {
                    return Err(Error::InvalidGenerator("empty periodic word".into()));
                }
                let mut letters = std::collections::BTreeMap::new();
                for n in lo_n..=hi_n {
                    let letter = &word[n.rem_euclid(period) as usize];
                    let idx = letter_index(alphabet, letter)?;
                    letters.insert(n, idx);
                }
                let pattern =
                    Pattern::Symbolic(Symbolic::from_indices(alphabet.clone(), letters));
                Ok(pattern.cut(region))
            }
            Generator::ShiftedRows { alpha } => {
                let k_lo = quad_to_i64(lo.coord(1).ceil_int())?;
                let k_hi = quad_to_i64(hi.coord(1).floor_int())?;
                let mut points = Vec::new();
                for k in k_lo..=k_hi {
                    let offset = Quad::from_int(k * k) * alpha.clone();
                    let n_lo = quad_to_i64((lo.coord(0).clone() - offset.clone()).ceil_int())?;
                    let n_hi = quad_to_i64((hi.coord(0).clone() - offset.clone()).floor_int())?;
                    for n in n_lo..=n_hi {
                        points.push(Vector::new(vec![
                            Quad::from_int(n) + offset.clone(),
                            Quad::from_int(k),
                        ]));
                    }
                }
                let pattern = Pattern::Points(PointSet::new(2, None, points)?);
                Ok(pattern.cut(region))
            }
        }
    }
}

fn materialize_periodic<T: QuadInt>(
    basis: &[Vector<T>],
    motif: &Pattern<T>,
    region: &Region<T>,
    lo: &Vector<T>,
    hi: &Vector<T>,
) -> Result<Pattern<T>> {
    if motif.is_zero() {
        return Ok(motif.zero_like());
    }
    let dim = motif.dim();
    let (m_lo, m_hi) = match motif.support().bounds() {
        Bounds::Box { lo, hi } => (lo, hi),
        _ => unreachable!("nonzero finite pattern has box bounds"),
    };
    let window_corners = box_corners(lo, hi);
    let motif_corners = box_corners(&m_lo, &m_hi);
    let mut k_lo = vec![i64::MAX; dim];
    let mut k_hi = vec![i64::MIN; dim];
    for w in &window_corners {
        for m in &motif_corners {
            let target = w - m;
            let coeffs = solve_basis(basis, &target)?;
            for (i, c) in coeffs.iter().enumerate() {
                k_lo[i] = k_lo[i].min(quad_to_i64(c.floor_int())? - 1);
                k_hi[i] = k_hi[i].max(quad_to_i64(c.ceil_int())? + 1);
            }
        }
    }
    let mut copies = Vec::new();
    let mut k = k_lo.clone();
    loop {
        let mut shift = Vector::zero(dim);
        for i in 0..dim {
            shift = &shift + &basis[i].scale(&Quad::from_int(k[i]));
        }
        let copy = motif.act(&shift).cut(region);
        if !copy.is_zero() {
            copies.push(copy);
        }
        let mut axis = 0;
        loop {
            if axis == dim {
                let zero = motif.zero_like();
                return Ok(Pattern::supremum(&zero, &copies)?.unwrap_supremum());
            }
            k[axis] += 1;
            if k[axis] <= k_hi[axis] {
                break;
            }
            k[axis] = k_lo[axis];
            axis += 1;
        }
    }
}

fn box_corners<T: QuadInt>(lo: &Vector<T>, hi: &Vector<T>) -> Vec<Vector<T>> {
    let dim = lo.dim();
    let mut out = Vec::with_capacity(1 << dim);
    for mask in 0..(1u32 << dim) {
        let coords = (0..dim)
            .map(|i| {
                if mask & (1 << i) == 0 {
                    lo.coord(i).clone()
                } else {
                    hi.coord(i).clone()
                }
            })
            .collect();
        out.push(Vector::new(coords));
    }
    out
}

fn solve_basis<T: QuadInt>(basis: &[Vector<T>], target: &Vector<T>) -> Result<Vec<Quad<T>>> {
    match basis.len() {
        1 => Ok(vec![target.coord(0).checked_div(basis[0].coord(0))?]),
        2 => {
            let (a, b) = (basis[0].coord(0), basis[1].coord(0));
            let (c, d) = (basis[0].coord(1), basis[1].coord(1));
            let det = a.clone() * d.clone() - b.clone() * c.clone();
            let inv = det.checked_recip()?;
            let x = (d.clone() * target.coord(0).clone()
                - b.clone() * target.coord(1).clone())
                * inv.clone();
            let y = (a.clone() * target.coord(1).clone()
                - c.clone() * target.coord(0).clone())
                * inv;
            Ok(vec![x, y])
        }
        _ => Err(Error::InvalidGenerator("unsupported lattice rank".into())),
    }
}

/// A pattern given either as finite data or as a shifted generator, exposing
/// exact windows either way.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WindowSource<T: QuadInt> {
    Finite(Pattern<T>),
    Generated { gen: Generator<T>, shift: Vector<T> },
}

impl<T: QuadInt> WindowSource<T> {
    pub fn finite(pattern: Pattern<T>) -> Self {
        WindowSource::Finite(pattern)
    }

    pub fn generated(gen: Generator<T>) -> Self {
        let dim = gen.dim();
        WindowSource::Generated { gen, shift: Vector::zero(dim) }
    }

    pub fn dim(&self) -> usize {
        match self {
            WindowSource::Finite(p) => p.dim(),
            WindowSource::Generated { gen, .. } => gen.dim(),
        }
    }

    pub fn kind(&self) -> SpaceKind {
        match self {
            WindowSource::Finite(p) => p.kind(),
            WindowSource::Generated { gen, .. } => gen.kind(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, WindowSource::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Pattern<T>> {
        match self {
            WindowSource::Finite(p) => Some(p),
            WindowSource::Generated { .. } => None,
        }
    }

    /// The translate `γ + P`, staying symbolic for generators.
    pub fn act(&self, gamma: &Vector<T>) -> Self {
        match self {
            WindowSource::Finite(p) => WindowSource::Finite(p.act(gamma)),
            WindowSource::Generated { gen, shift } => WindowSource::Generated {
                gen: gen.clone(),
                shift: shift + gamma,
            },
        }
    }

    /// The exact cut by `region`. For generators the region must be bounded.
    pub fn window(&self, region: &Region<T>) -> Result<Pattern<T>> {
        match self {
            WindowSource::Finite(p) => Ok(p.cut(region)),
            WindowSource::Generated { gen, shift } => {
                let back = -shift.clone();
                let local = gen.materialize(&region.translate(&back))?;
                Ok(local.act(shift))
            }
        }
    }

    /// The support region, available only for finite data: a generator
    /// denotes an unbounded pattern whose support is no region term.
    pub fn support(&self) -> Result<Region<T>> {
        match self {
            WindowSource::Finite(p) => Ok(p.support()),
            WindowSource::Generated { .. } => Err(Error::UnboundedOperand(
                "support of a generator-backed pattern; cut it to a bounded region first".into(),
            )),
        }
    }
}

/// The integer lattice ℤ as a point set.
pub fn integers<T: QuadInt>() -> Generator<T> {
    let motif = Pattern::Points(
        PointSet::new(1, None, vec![Vector::zero(1)]).expect("single point"),
    );
    Generator::periodic(vec![Vector::one_d(Quad::one())], motif).expect("unit lattice")
}

/// The square lattice ℤ² as a point set.
pub fn square_lattice<T: QuadInt>() -> Generator<T> {
    let motif = Pattern::Points(
        PointSet::new(2, None, vec![Vector::zero(2)]).expect("single point"),
    );
    let basis = vec![
        Vector::new(vec![Quad::one(), Quad::zero()]),
        Vector::new(vec![Quad::zero(), Quad::one()]),
    ];
    Generator::periodic(basis, motif).expect("unit lattice")
}

fn fibonacci_system<T: QuadInt>(tiles: bool) -> SubstSystem<T> {
    let phi: Quad<T> = "1/2+1/2r5".parse().expect("golden ratio literal");
    SubstSystem::new(
        vec!["a".into(), "b".into()],
        vec![
            ("a".into(), vec!["a".into(), "b".into()]),
            ("b".into(), vec!["a".into()]),
        ],
        vec![("a".into(), phi.clone()), ("b".into(), Quad::one())],
        phi,
        ("a".into(), "a".into()),
        2,
        tiles,
    )
    .expect("valid system")
}

/// Left endpoints of the two-sided Fibonacci tiling, as a point set.
pub fn fibonacci_point_set<T: QuadInt>() -> Generator<T> {
    Generator::Substitution(fibonacci_system(false))
}

/// The two-sided Fibonacci tiling with interval lengths φ and 1.
pub fn fibonacci_tiling<T: QuadInt>() -> Generator<T> {
    Generator::Substitution(fibonacci_system(true))
}

/// The two-sided Fibonacci word on ℤ.
pub fn fibonacci_word<T: QuadInt>() -> Generator<T> {
    Generator::WordSubstitution(
        WordSystem::new(
            vec!["a".into(), "b".into()],
            vec![
                ("a".into(), vec!["a".into(), "b".into()]),
                ("b".into(), vec!["a".into()]),
            ],
            ("a".into(), "a".into()),
            2,
        )
        .expect("valid system"),
    )
}

/// A periodic bi-infinite word with the given repeating block.
pub fn periodic_word<T: QuadInt>(word: Vec<String>) -> Result<Generator<T>> {
    let mut alphabet = word.clone();
    index_alphabet(&mut alphabet)?;
    if word.is_empty() {
        return Err(Error::InvalidGenerator("empty periodic word".into()));
    }
    Ok(Generator::WordPeriodic { alphabet, word })
}

/// The shifted-rows plane with the default offset slope `√2`.
pub fn shifted_rows_default<T: QuadInt>() -> Generator<T> {
    Generator::ShiftedRows { alpha: Quad::sqrt_root(2).expect("square-free") }
}

/// The truncated chain `{{n, n + 1/n} : 2 ≤ n ≤ n_max}` of two-point
/// patterns. Every member is uniformly discrete, and any finite truncation
/// glues, but the chain's separations `1/n` sink below every positive
/// radius, so no single uniformly discrete pattern majorizes the schema.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UdChain {
    pub n_max: i64,
}

impl UdChain {
    pub fn new(n_max: i64) -> Result<Self> {
        if n_max < 2 {
            return Err(Error::InvalidGenerator("chain needs n_max ≥ 2".into()));
        }
        Ok(UdChain { n_max })
    }

    fn pair<T: QuadInt>(n: i64) -> (Vector<T>, Vector<T>) {
        let x = Quad::from_int(n);
        let y = Quad::from_int(n) + Quad::from_fraction(1, n);
        (Vector::one_d(x), Vector::one_d(y))
    }

    /// The truncated members, each a valid two-point pattern.
    pub fn members<T: QuadInt>(&self) -> Vec<Pattern<T>> {
        (2..=self.n_max)
            .map(|n| {
                let (a, b) = Self::pair::<T>(n);
                Pattern::Points(PointSet::new(1, None, vec![a, b]).expect("distinct pair"))
            })
            .collect()
    }

    /// Decides the supremum over the chain schema, not the truncation: the
    /// rule keeps producing pairs of separation `1/n`, so the answer is
    /// `NoSupremum`, witnessed by the tightest truncated pair.
    pub fn supremum<T: QuadInt>(&self) -> SupResult<T> {
        let (a, b) = Self::pair::<T>(self.n_max);
        let separation = SqrtVal::from_nonneg_scalar(&Quad::from_fraction(1, self.n_max));
        SupResult::NoSupremum(NoSup {
            pair: (a, b),
            separation,
            detail: format!(
                "the chain rule {{n, n + 1/n}} continues past n = {}, driving separations \
                 below every positive radius, so no uniformly discrete pattern lies above \
                 the whole family",
                self.n_max
            ),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;

    type G = Generator<BigInt>;

    fn lit(s: &str) -> Quad<BigInt> {
        s.parse().unwrap()
    }

    fn count(p: &Pattern<BigInt>) -> usize {
        p.support_atoms().len()
    }

    #[test]
    fn integer_lattice_materializes_exactly() {
        let z: G = integers();
        let w = z.materialize(&Region::ball0(1, lit("21/2"))).unwrap();
        assert_eq!(count(&w), 21);
        let shifted = z
            .materialize(&Region::interval(lit("1/10"), lit("3")))
            .unwrap();
        assert_eq!(count(&shifted), 3);
        assert!(shifted.support().contains_point(&Vector::one_d(lit("3"))));
        assert!(!shifted.support().contains_point(&Vector::one_d(lit("0"))));
    }

    #[test]
    fn window_coherence_cut_commutes_with_materialize() {
        let gens: Vec<G> = vec![
            integers(),
            square_lattice(),
            fibonacci_point_set(),
            fibonacci_tiling(),
            fibonacci_word(),
            shifted_rows_default(),
        ];
        for g in gens {
            let d = g.dim();
            let c1 = Region::ball0(d, lit("6"));
            let c2 = Region::ball(
                Vector::new(vec![lit("3/2"); d]),
                lit("7/2"),
            );
            let big = g.materialize(&c1).unwrap();
            let direct = g.materialize(&c1.clone().intersect(c2.clone())).unwrap();
            assert_eq!(big.cut(&c2), direct, "window coherence for {g:?}");
        }
    }

    #[test]
    fn fibonacci_points_near_the_origin_are_the_known_ones() {
        let g: G = fibonacci_point_set();
        let w = g.materialize(&Region::ball0(1, lit("9/2"))).unwrap();
        let phi = lit("1/2+1/2r5");
        let expected: Vec<Quad<BigInt>> = vec![
            -(phi.clone() + phi.clone() + Quad::one()),
            -(phi.clone() + Quad::one()),
            -phi.clone(),
            Quad::zero(),
            phi.clone(),
            phi.clone() + Quad::one(),
            phi.clone() + phi.clone() + Quad::one(),
        ];
        let got: Vec<Quad<BigInt>> = match &w {
            Pattern::Points(ps) => ps.points().iter().map(|p| p.coord(0).clone()).collect(),
            _ => unreachable!(),
        };
        assert_eq!(got, expected);
    }

    #[test]
    fn fibonacci_tiling_lengths_follow_the_word() {
        let g: G = fibonacci_tiling();
        let w = g
            .materialize(&Region::interval(lit("0"), lit("5")))
            .unwrap();
        let Pattern::Patch(patch) = &w else { unreachable!() };
        let labels: Vec<_> = patch
            .tiles()
            .iter()
            .map(|t| t.label.clone().unwrap())
            .collect();
        assert_eq!(labels, vec!["a", "b", "a"]);
        let phi = lit("1/2+1/2r5");
        assert_eq!(patch.tiles()[0].hi.coord(0), &phi);
    }

    #[test]
    fn fibonacci_word_window_matches_the_expansion() {
        let g: G = fibonacci_word();
        let w = g
            .materialize(&Region::interval(lit("0"), lit("7")))
            .unwrap();
        let Pattern::Symbolic(word) = &w else { unreachable!() };
        let text: String = (0..=7).map(|n| word.letter_at(n).unwrap()).collect();
        assert_eq!(text, "abaababa");
        let back = g
            .materialize(&Region::interval(lit("-4"), lit("-1")))
            .unwrap();
        let Pattern::Symbolic(word) = &back else { unreachable!() };
        let text: String = (-4..=-1).map(|n| word.letter_at(n).unwrap()).collect();
        assert_eq!(text, "baba");
    }

    #[test]
    fn shifted_rows_box_count_is_frozen() {
        let g: G = shifted_rows_default();
        let w = g
            .materialize(&Region::bbox(
                Vector::new(vec![lit("-2"), lit("-2")]),
                Vector::new(vec![lit("2"), lit("2")]),
            ))
            .unwrap();
        assert_eq!(count(&w), 21);
    }

    #[test]
    fn shifted_rows_row_offsets_never_repeat() {
        let alpha = lit("r2");
        let mut fracs: Vec<Quad<BigInt>> = Vec::new();
        for k in 0..12i64 {
            let off = Quad::from_int(2 * k + 1) * alpha.clone();
            let frac = off.clone() - Quad::from_int(off.floor_int().to_i64().unwrap());
            fracs.push(frac);
        }
        fracs.sort();
        let before = fracs.len();
        fracs.dedup();
        assert_eq!(fracs.len(), before);
    }

    #[test]
    fn word_periodic_wraps_negative_positions() {
        let g: G = periodic_word(vec!["a".into(), "b".into()]).unwrap();
        let w = g
            .materialize(&Region::interval(lit("-2"), lit("2")))
            .unwrap();
        let Pattern::Symbolic(word) = &w else { unreachable!() };
        let text: String = (-2..=2).map(|n| word.letter_at(n).unwrap()).collect();
        assert_eq!(text, "ababa");
    }

    #[test]
    fn invalid_systems_are_rejected() {
        let phi: Quad<BigInt> = lit("1/2+1/2r5");
        let bad_lambda = SubstSystem::new(
            vec!["a".into(), "b".into()],
            vec![
                ("a".into(), vec!["a".into(), "b".into()]),
                ("b".into(), vec!["a".into()]),
            ],
            vec![("a".into(), phi.clone()), ("b".into(), Quad::one())],
            lit("2"),
            ("a".into(), "a".into()),
            2,
            false,
        );
        assert!(bad_lambda.is_err());
        let bad_seed = SubstSystem::new(
            vec!["a".into(), "b".into()],
            vec![
                ("a".into(), vec!["a".into(), "b".into()]),
                ("b".into(), vec!["a".into()]),
            ],
            vec![("a".into(), phi.clone()), ("b".into(), Quad::one())],
            phi,
            ("b".into(), "b".into()),
            2,
            false,
        );
        assert!(bad_seed.is_err());
        let dependent = Generator::periodic(
            vec![
                Vector::new(vec![lit("1"), lit("1")]),
                Vector::new(vec![lit("2"), lit("2")]),
            ],
            Pattern::Points(PointSet::new(2, None, vec![Vector::zero(2)]).unwrap()),
        );
        assert!(dependent.is_err());
    }

    #[test]
    fn clashing_periodic_motifs_are_rejected() {
        let motif = Pattern::Points(
            PointSet::new(
                1,
                Some(lit("1/2")),
                vec![Vector::one_d(lit("0")), Vector::one_d(lit("3/5"))],
            )
            .unwrap(),
        );
        let clash = Generator::periodic(vec![Vector::one_d(lit("1"))], motif);
        assert!(clash.is_err());
    }

    #[test]
    fn window_source_act_composes_with_windows() {
        let src = WindowSource::generated(integers::<BigInt>());
        let shifted = src.act(&Vector::one_d(lit("1/10")));
        let w = shifted.window(&Region::interval(lit("0"), lit("2"))).unwrap();
        assert_eq!(count(&w), 2);
        let atoms = w.support_atoms();
        assert!(matches!(&atoms[0], super::super::pattern::SupportAtom::Point(p)
            if p.coord(0) == &lit("1/10")));
        assert!(src.support().is_err());
        assert!(src.window(&Region::All).is_err());
    }

    #[test]
    fn ud_chain_members_glue_but_the_schema_does_not() {
        let chain = UdChain::new(50).unwrap();
        let members = chain.members::<BigInt>();
        assert_eq!(members.len(), 49);
        let sup = Pattern::supremum(&members[0], &members).unwrap();
        assert!(matches!(sup, SupResult::Supremum(_)));
        match chain.supremum::<BigInt>() {
            SupResult::NoSupremum(w) => {
                assert_eq!(w.pair.0, Vector::one_d(lit("50")));
                assert_eq!(w.pair.1, Vector::one_d(lit("2501/50")));
                assert_eq!(w.separation.square(), &lit("1/2500"));
            }
            _ => panic!("chain must have no supremum"),
        }
    }
}
