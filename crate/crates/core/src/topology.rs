//! The local matching uniform structure on pattern spaces.
//!
//! Two patterns are related by the basic entourage with window `K` and shift
//! bound `v` when some translation of norm at most `v` makes their windows on
//! `K` agree exactly. This module decides that relation, derives an exact
//! metric from it, runs the uniform-structure laws as a randomized suite,
//! glues Cauchy sequences along a ball-and-halving schedule, and separates
//! distinct patterns by an explicit entourage.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::iter::once;

use num_rational::Ratio;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generators::WindowSource;
use crate::geom::Vector;
use crate::pattern::harness::{snip, AxiomSubject, FailureCase, LawReport, SpaceReport};
use crate::pattern::{Pattern, SpaceKind, SupportAtom};
use crate::region::{Bounds, IntervalSet, Region};
use crate::scalar::{Quad, QuadInt, SqrtVal};

/// A basic entourage: a bounded window region and a positive shift bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntourageSpec<T: QuadInt> {
    window: Region<T>,
    shift_bound: Quad<T>,
}

impl<T: QuadInt> EntourageSpec<T> {
    pub fn new(window: Region<T>, shift_bound: Quad<T>) -> Result<Self> {
        if !window.is_bounded() {
            return Err(Error::UnboundedRegion("entourage window".into()));
        }
        if !shift_bound.is_positive() {
            return Err(Error::InvalidQuery(format!(
                "entourage shift bound must be positive, got {shift_bound}"
            )));
        }
        Ok(EntourageSpec { window, shift_bound })
    }

    pub fn window(&self) -> &Region<T> {
        &self.window
    }

    pub fn shift_bound(&self) -> &Quad<T> {
        &self.shift_bound
    }

    /// A spec whose relation, read backwards, lands inside this one: the
    /// window grows by the shift bound so that undoing a shift cannot move
    /// matched content out of the original window.
    pub fn refined_for_inverse(&self) -> Self {
        EntourageSpec {
            window: self.window.inflate(&self.shift_bound),
            shift_bound: self.shift_bound.clone(),
        }
    }

    /// A spec whose relation composed with itself lands inside this one:
    /// the window absorbs one full shift and the bound is halved so two
    /// consecutive shifts still respect the original bound.
    pub fn refined_for_composition(&self) -> Self {
        EntourageSpec {
            window: self.window.clone().union(self.window.inflate(&self.shift_bound)),
            shift_bound: self.shift_bound.clone() * Quad::from_fraction(1, 2),
        }
    }
}

/// A verified relation witness: shifting the second pattern by `gamma` makes
/// both windows on `certified_region` equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchWitness<T: QuadInt> {
    pub gamma: Vector<T>,
    pub certified_region: Region<T>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntourageVerdict<T: QuadInt> {
    Match(MatchWitness<T>),
    NoMatch,
}

impl<T: QuadInt> EntourageVerdict<T> {
    pub fn is_match(&self) -> bool {
        matches!(self, EntourageVerdict::Match(_))
    }

    pub fn witness(&self) -> Option<&MatchWitness<T>> {
        match self {
            EntourageVerdict::Match(w) => Some(w),
            EntourageVerdict::NoMatch => None,
        }
    }
}

fn is_integer_vector<T: QuadInt>(gamma: &Vector<T>) -> bool {
    gamma.coords().iter().all(|c| c.is_rational() && c.rational_part().is_integer())
}

fn check_window_dim<T: QuadInt>(window: &Region<T>, dim: usize) -> Result<()> {
    if let Bounds::Box { lo, .. } = window.bounds() {
        if lo.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: lo.dim() });
        }
    }
    Ok(())
}

/// Decides membership in the basic entourage `spec`: whether some shift
/// `gamma` with norm at most the bound makes the window of `p` equal to the
/// window of the shifted `q`.
///
/// Candidates are the identity, all anchor differences between the two
/// windows, and, when the `p` window is empty, shifts that clear the nearby
/// content of `q` out of the window. Every candidate is verified by an exact
/// cut comparison, so a returned witness is always sound. A nonempty matched
/// window pins the shift to an anchor difference, and on the line the
/// clearing-shift search is exhaustive, so `NoMatch` is sound there too; in
/// the plane the clearing search probes axis and diagonal pushes only.
pub fn in_entourage<T: QuadInt>(
    p: &WindowSource<T>,
    q: &WindowSource<T>,
    spec: &EntourageSpec<T>,
) -> Result<EntourageVerdict<T>> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), got: q.dim() });
    }
    check_window_dim(spec.window(), p.dim())?;
    let k = spec.window();
    let v = spec.shift_bound();
    let wp = p.window(k)?;
    let wq = q.window(&k.inflate(v))?;
    wp.check_context(&wq)?;

    let mut candidates = vec![Vector::zero(p.dim())];
    if !wp.is_zero() {
        candidates.extend(bounded_anchor_diffs(&wp.anchors(), &wq.anchors(), v));
    } else if !wq.is_zero() {
        candidates.extend(clearing_shifts(&wq, k, v, wp.kind()));
    }
    if wp.kind() == SpaceKind::Symbolic {
        candidates.retain(is_integer_vector);
    }
    candidates.sort_by_cached_key(|g| (g.norm_sq(), g.clone()));
    candidates.dedup();

    for gamma in candidates {
        if q.act(&gamma).window(k)? == wp {
            return Ok(EntourageVerdict::Match(MatchWitness {
                gamma,
                certified_region: k.clone(),
            }));
        }
    }
    Ok(EntourageVerdict::NoMatch)
}

/// All differences `a - b` with `a` from the first anchor list, `b` from the
/// second, and norm at most `bound`, each reported once. Both lists are in
/// lexicographic order, so partners are sliced out by the first coordinate.
fn bounded_anchor_diffs<T: QuadInt>(
    pa: &[Vector<T>],
    qa: &[Vector<T>],
    bound: &Quad<T>,
) -> Vec<Vector<T>> {
    let bound_sq = bound.square();
    let neg_bound = -bound.clone();
    let mut seen: HashSet<Vector<T>> = HashSet::new();
    let mut out = Vec::new();
    for a in pa {
        let lo = a.coord(0) - bound;
        let hi = a.coord(0) + bound;
        let start = qa.partition_point(|b| *b.coord(0) < lo);
        'partners: for b in &qa[start..] {
            if *b.coord(0) > hi {
                break;
            }
            let mut coords = Vec::with_capacity(a.dim());
            for (x, y) in a.coords().iter().zip(b.coords()) {
                let d = x - y;
                if d > *bound || d < neg_bound {
                    continue 'partners;
                }
                coords.push(d);
            }
            let gamma = Vector::new(coords);
            if gamma.norm_sq() <= bound_sq && seen.insert(gamma.clone()) {
                out.push(gamma);
            }
        }
    }
    out
}

/// Shift candidates that could move every nearby atom of `wq` out of the
/// window. On the line the blocked shifts form a finite union of closed
/// intervals, so one point from each free stretch covers all possibilities;
/// in the plane only axis and half-diagonal pushes are probed. The caller
/// verifies every candidate.
fn clearing_shifts<T: QuadInt>(
    wq: &Pattern<T>,
    window: &Region<T>,
    v: &Quad<T>,
    kind: SpaceKind,
) -> Vec<Vector<T>> {
    let dim = wq.dim();
    if dim != 1 {
        let half = v.clone() * Quad::from_fraction(1, 2);
        let mut probes = Vec::new();
        for sx in [-1i64, 0, 1] {
            for sy in [-1i64, 0, 1] {
                if sx == 0 && sy == 0 {
                    continue;
                }
                let scale = if sx != 0 && sy != 0 { &half } else { v };
                probes.push(Vector::new(vec![
                    Quad::from_int(sx) * scale,
                    Quad::from_int(sy) * scale,
                ]));
            }
        }
        return probes;
    }

    let base = match IntervalSet::from_region(window) {
        IntervalSet::All => return Vec::new(),
        IntervalSet::Finite(ivs) => ivs,
    };
    let mut blocked: Vec<(Quad<T>, Quad<T>)> = Vec::new();
    for atom in wq.support_atoms() {
        match atom {
            SupportAtom::Point(p) => {
                let x = p.coord(0);
                for (a, b) in &base {
                    blocked.push((a - x, b - x));
                }
            }
            SupportAtom::Box { lo, hi } => {
                let (l, h) = (lo.coord(0), hi.coord(0));
                for (a, b) in &base {
                    let glo = a - l;
                    let ghi = b - h;
                    if glo <= ghi {
                        blocked.push((glo, ghi));
                    }
                }
            }
        }
    }
    blocked.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| x.1.cmp(&y.1)));
    let mut merged: Vec<(Quad<T>, Quad<T>)> = Vec::new();
    for (a, b) in blocked {
        match merged.last_mut() {
            Some(last) if a <= last.1 => {
                if b > last.1 {
                    last.1 = b;
                }
            }
            _ => merged.push((a, b)),
        }
    }

    let neg_v = -v.clone();
    let mut shifts: Vec<Quad<T>> = Vec::new();
    if kind == SpaceKind::Symbolic {
        let sentinel = (v + &Quad::one(), v + &Quad::one());
        let mut cursor = neg_v;
        let mut strict = false;
        for (a, b) in merged.iter().chain(once(&sentinel)) {
            let first = if strict {
                cursor.floor_int() + T::one()
            } else {
                cursor.ceil_int()
            };
            let g = Quad::rational(Ratio::from_integer(first));
            if g < *a && g <= *v {
                shifts.push(g);
            }
            if *b >= cursor {
                cursor = b.clone();
                strict = true;
            }
        }
    } else {
        shifts.push(Quad::zero());
        shifts.push(neg_v);
        shifts.push(v.clone());
        for pair in merged.windows(2) {
            let gap_lo = &pair[0].1;
            let gap_hi = &pair[1].0;
            if gap_lo < gap_hi {
                shifts.push((gap_lo + gap_hi) * Quad::from_fraction(1, 2));
            }
        }
        shifts.retain(|g| g.abs() <= *v);
    }
    shifts.into_iter().map(Vector::one_d).collect()
}

/// Either the first radius at which the two origin-centered windows disagree
/// after shifting `q` by `gamma`, or the certificate that they agree all the
/// way out to the probe radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchRadius<T: QuadInt> {
    Disagrees(SqrtVal<T>),
    Exceeds,
}

/// The smallest ball radius at which the windows of `p` and the shifted `q`
/// differ, exact via the entry radii of the disagreeing atoms.
pub fn match_radius<T: QuadInt>(
    p: &WindowSource<T>,
    q: &WindowSource<T>,
    gamma: &Vector<T>,
    r_max: &Quad<T>,
) -> Result<MatchRadius<T>> {
    if !r_max.is_positive() {
        return Err(Error::InvalidQuery(format!("probe radius must be positive, got {r_max}")));
    }
    let ball = Region::ball0(p.dim(), r_max.clone());
    let wp = p.window(&ball)?;
    let wq = q.act(gamma).window(&ball)?;
    wp.check_context(&wq)?;
    Ok(first_disagreement(&wp, &wq))
}

fn first_disagreement<T: QuadInt>(wp: &Pattern<T>, wq: &Pattern<T>) -> MatchRadius<T> {
    let mut tally: HashMap<Pattern<T>, i32> = HashMap::new();
    for atom in wp.atoms() {
        *tally.entry(atom).or_insert(0) += 1;
    }
    for atom in wq.atoms() {
        *tally.entry(atom).or_insert(0) -= 1;
    }
    let mut earliest: Option<SqrtVal<T>> = None;
    for (atom, count) in tally {
        if count == 0 {
            continue;
        }
        let r = atom.support_atoms()[0].entry_radius();
        earliest = Some(match earliest {
            Some(best) if best <= r => best,
            _ => r,
        });
    }
    match earliest {
        Some(r) => MatchRadius::Disagrees(r),
        None => MatchRadius::Exceeds,
    }
}

/// How far a computed distance can be trusted: exact, or only certified by
/// windows out to the stated radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certainty<T: QuadInt> {
    Exact,
    ToRadius(Quad<T>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceValue<T: QuadInt> {
    pub value: SqrtVal<T>,
    pub certainty: Certainty<T>,
}

/// One-sided matching cost: the least, over verified shift candidates of norm
/// at most one, of the larger of the shift norm and the reciprocal first
/// disagreement radius, capped at one.
pub fn one_sided_distance<T: QuadInt>(
    p: &WindowSource<T>,
    q: &WindowSource<T>,
    r_max: &Quad<T>,
) -> Result<SqrtVal<T>> {
    let dim = p.dim();
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), got: q.dim() });
    }
    let ball = Region::ball0(dim, r_max.clone());
    let wp = p.window(&ball)?;
    let wq = q.window(&Region::ball0(dim, r_max + &Quad::one()))?;
    wp.check_context(&wq)?;

    let one = Quad::<T>::one();
    let mut candidates = vec![Vector::zero(dim)];
    candidates.extend(bounded_anchor_diffs(&wp.anchors(), &wq.anchors(), &one));
    if wp.kind() == SpaceKind::Symbolic {
        candidates.retain(is_integer_vector);
    }
    candidates.sort_by_cached_key(|g| (g.norm_sq(), g.clone()));
    candidates.dedup();

    // A candidate whose windows already differ inside the closed unit ball
    // costs at least one, the cap the running best starts from, so it can be
    // dropped after two small cuts instead of a full disagreement scan. The
    // screen needs `wq` to reach out to radius `1 + |gamma|`.
    let screen = (*r_max >= one).then(|| {
        let unit = Region::ball0(dim, Quad::one());
        (wp.cut(&unit), unit)
    });

    let mut best = SqrtVal::one();
    for gamma in candidates {
        let shift_cost = gamma.norm();
        if shift_cost >= best {
            break;
        }
        if let Some((wp_near, unit)) = &screen {
            let wq_near = if gamma.is_zero() {
                wq.cut(unit)
            } else {
                wq.cut(&Region::ball(-&gamma, Quad::one())).act(&gamma)
            };
            if wq_near != *wp_near {
                continue;
            }
        }
        let wq_shifted = if gamma.is_zero() {
            q.window(&ball)?
        } else {
            q.act(&gamma).window(&ball)?
        };
        let cost = match first_disagreement(&wp, &wq_shifted) {
            MatchRadius::Exceeds => shift_cost,
            MatchRadius::Disagrees(rho) => {
                if rho.is_zero() {
                    continue;
                }
                let inv = rho.checked_recip()?;
                if inv > shift_cost {
                    inv
                } else {
                    shift_cost
                }
            }
        };
        if cost < best {
            best = cost;
        }
    }
    Ok(best)
}

/// The local matching distance: the larger of the two one-sided costs, with a
/// certification of how far the value can be trusted. The value is exact when
/// it exceeds the reciprocal probe radius and both patterns reach into the
/// unit ball; an exact zero additionally needs a global equality witness.
pub fn local_matching_distance<T: QuadInt>(
    p: &WindowSource<T>,
    q: &WindowSource<T>,
    r_max: &Quad<T>,
) -> Result<DistanceValue<T>> {
    if r_max.cmp_int(2) == Ordering::Less {
        return Err(Error::InvalidQuery(format!("probe radius must be at least 2, got {r_max}")));
    }
    let forward = one_sided_distance(p, q, r_max)?;
    let backward = one_sided_distance(q, p, r_max)?;
    let value = if forward < backward { backward } else { forward };

    let certainty = if value.is_zero() {
        if globally_equal(p, q, r_max)? {
            Certainty::Exact
        } else {
            Certainty::ToRadius(r_max.clone())
        }
    } else {
        let reaches_origin = meets_unit_ball(p)? && meets_unit_ball(q)?;
        let threshold = r_max.checked_recip()?;
        if reaches_origin && value.cmp_scalar(&threshold) == Ordering::Greater {
            Certainty::Exact
        } else {
            Certainty::ToRadius(r_max.clone())
        }
    };
    Ok(DistanceValue { value, certainty })
}

fn meets_unit_ball<T: QuadInt>(p: &WindowSource<T>) -> Result<bool> {
    Ok(!p.window(&Region::ball0(p.dim(), Quad::one()))?.is_zero())
}

fn globally_equal<T: QuadInt>(
    p: &WindowSource<T>,
    q: &WindowSource<T>,
    r_max: &Quad<T>,
) -> Result<bool> {
    if p == q {
        return Ok(true);
    }
    match (p.as_finite(), q.as_finite()) {
        (Some(a), Some(b)) => {
            let ball = Region::ball0(p.dim(), r_max.clone());
            Ok(a.supp_within(&ball) && b.supp_within(&ball) && a == b)
        }
        _ => Ok(false),
    }
}

pub const ENTOURAGE_LAWS: &[&str] = &[
    "entourage-diagonal",
    "entourage-symmetry",
    "entourage-intersection",
    "entourage-composition",
    "entourage-monotonicity",
];

/// Runs the uniform-structure laws on sampled patterns, windows, and shifts.
/// Conditional laws construct their premise pairs explicitly and treat a
/// missed premise as a violation, so every sample is load-bearing. The
/// diagonal law runs at two and a half times the base count.
pub fn entourage_axiom_suite<T: QuadInt>(
    subject: &dyn AxiomSubject<T>,
    samples: usize,
    seed: u64,
) -> SpaceReport {
    let laws = ENTOURAGE_LAWS
        .iter()
        .enumerate()
        .map(|(law_idx, &law)| {
            let count = if law_idx == 0 { samples * 5 / 2 } else { samples };
            let failures: Vec<FailureCase> = (0..count)
                .into_par_iter()
                .filter_map(|index| {
                    let mut rng =
                        crate::pattern::harness::sample_rng(seed ^ ((law_idx as u64 + 1) << 48), index);
                    check_entourage_law(subject, law_idx, index, &mut rng)
                })
                .collect();
            LawReport { law: law.to_string(), samples: count, failures }
        })
        .collect();
    SpaceReport { space: subject.space(), seed, samples, laws }
}

fn fail_case(index: usize, inputs: String, expected: &str, got: String) -> FailureCase {
    FailureCase { index, inputs: snip(inputs), expected: expected.to_string(), got: snip(got) }
}

fn sample_suite_spec<T: QuadInt>(
    rng: &mut ChaCha8Rng,
    pattern: &Pattern<T>,
) -> EntourageSpec<T> {
    let dim = pattern.dim();
    let window = match rng.gen_range(0..3u8) {
        0 => Region::ball0(dim, Quad::from_int(rng.gen_range(2..=6))),
        1 => sample_box(rng, dim),
        _ => sample_box(rng, dim).union(sample_box(rng, dim)),
    };
    let bound = if pattern.kind() == SpaceKind::Symbolic {
        Quad::from_int(rng.gen_range(1..=2))
    } else {
        Quad::from_fraction(rng.gen_range(1..=6), 4)
    };
    EntourageSpec::new(window, bound).expect("sampled specs are bounded and positive")
}

fn sample_box<T: QuadInt>(rng: &mut ChaCha8Rng, dim: usize) -> Region<T> {
    let lo: Vec<i64> = (0..dim).map(|_| rng.gen_range(-8..=0)).collect();
    let hi: Vec<i64> = lo.iter().map(|l| l + rng.gen_range(1..=9)).collect();
    Region::bbox(Vector::from_ints(&lo), Vector::from_ints(&hi))
}

fn bounded_shift<T: QuadInt>(
    subject: &dyn AxiomSubject<T>,
    rng: &mut ChaCha8Rng,
    pattern: &Pattern<T>,
    bound: &Quad<T>,
) -> Vector<T> {
    let limit = bound.square();
    for _ in 0..8 {
        let gamma = subject.sample_shift(rng, pattern);
        if gamma.norm_sq() <= limit {
            return gamma;
        }
    }
    Vector::zero(pattern.dim())
}

/// Glues a far-away noise pattern onto `base` so matched pairs are not plain
/// translates of each other outside the probed windows.
fn glue_far<T: QuadInt>(
    subject: &dyn AxiomSubject<T>,
    rng: &mut ChaCha8Rng,
    base: &Pattern<T>,
) -> Pattern<T> {
    let noise = subject.sample_pattern(rng);
    if noise.is_zero() {
        return base.clone();
    }
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let off = sign * rng.gen_range(64i64..=96);
    let shift = Vector::from_ints(&vec![off; base.dim()]);
    Pattern::supremum(base, &[base.clone(), noise.act(&shift)])
        .expect("far noise shares the context")
        .unwrap_supremum()
}

fn check_entourage_law<T: QuadInt>(
    subject: &dyn AxiomSubject<T>,
    law_idx: usize,
    index: usize,
    rng: &mut ChaCha8Rng,
) -> Option<FailureCase> {
    let p = subject.sample_pattern(rng);
    let spec = sample_suite_spec(rng, &p);
    let src = |pat: Pattern<T>| WindowSource::finite(pat);

    let run = |a: &WindowSource<T>, b: &WindowSource<T>, s: &EntourageSpec<T>| {
        in_entourage(a, b, s)
    };

    match law_idx {
        0 => {
            let a = src(p.clone());
            match run(&a, &a, &spec) {
                Ok(verdict) if verdict.is_match() => None,
                Ok(_) => Some(fail_case(
                    index,
                    format!("p={p:?} spec={spec:?}"),
                    "reflexive match",
                    "NoMatch".into(),
                )),
                Err(e) => Some(fail_case(
                    index,
                    format!("p={p:?} spec={spec:?}"),
                    "reflexive match",
                    format!("error: {e}"),
                )),
            }
        }
        1 => {
            let gamma = bounded_shift(subject, rng, &p, spec.shift_bound());
            let back = -&gamma;
            let q = glue_far(subject, rng, &p.act(&back));
            let a = src(p.clone());
            let b = src(q.clone());
            let wide = spec.refined_for_inverse();
            let inputs = || format!("p={p:?} q={q:?} gamma={gamma:?} spec={spec:?}");
            match run(&a, &b, &wide) {
                Ok(verdict) if verdict.is_match() => match run(&b, &a, &spec) {
                    Ok(back_verdict) if back_verdict.is_match() => None,
                    Ok(_) => Some(fail_case(index, inputs(), "reversed match", "NoMatch".into())),
                    Err(e) => Some(fail_case(index, inputs(), "reversed match", format!("error: {e}"))),
                },
                Ok(_) => Some(fail_case(index, inputs(), "constructed premise match", "NoMatch".into())),
                Err(e) => Some(fail_case(index, inputs(), "constructed premise match", format!("error: {e}"))),
            }
        }
        2 => {
            let other = sample_suite_spec(rng, &p);
            let bound = spec.shift_bound().min(other.shift_bound()).clone();
            let joint = EntourageSpec::new(
                spec.window().clone().union(other.window().clone()),
                bound.clone(),
            )
            .expect("union of bounded windows is bounded");
            let gamma = bounded_shift(subject, rng, &p, &bound);
            let back = -&gamma;
            let q = glue_far(subject, rng, &p.act(&back));
            let a = src(p.clone());
            let b = src(q.clone());
            let inputs =
                || format!("p={p:?} q={q:?} gamma={gamma:?} spec={spec:?} other={other:?}");
            match run(&a, &b, &joint) {
                Ok(verdict) if verdict.is_match() => {
                    for part in [&spec, &other] {
                        match run(&a, &b, part) {
                            Ok(v) if v.is_match() => {}
                            Ok(_) => {
                                return Some(fail_case(
                                    index,
                                    inputs(),
                                    "membership in both intersected entourages",
                                    format!("NoMatch at {part:?}"),
                                ))
                            }
                            Err(e) => {
                                return Some(fail_case(
                                    index,
                                    inputs(),
                                    "membership in both intersected entourages",
                                    format!("error: {e}"),
                                ))
                            }
                        }
                    }
                    None
                }
                Ok(_) => Some(fail_case(index, inputs(), "constructed premise match", "NoMatch".into())),
                Err(e) => Some(fail_case(index, inputs(), "constructed premise match", format!("error: {e}"))),
            }
        }
        3 => {
            let inner = spec.refined_for_composition();
            let g1 = bounded_shift(subject, rng, &p, inner.shift_bound());
            let g2 = bounded_shift(subject, rng, &p, inner.shift_bound());
            let p1 = glue_far(subject, rng, &p.act(&g1));
            let back = -&g2;
            let p3 = glue_far(subject, rng, &p.act(&back));
            let a = src(p1.clone());
            let mid = src(p.clone());
            let c = src(p3.clone());
            let inputs = || format!("p1={p1:?} p2={p:?} p3={p3:?} spec={spec:?}");
            let premise1 = run(&a, &mid, &inner);
            let premise2 = run(&mid, &c, &inner);
            match (premise1, premise2) {
                (Ok(v1), Ok(v2)) if v1.is_match() && v2.is_match() => match run(&a, &c, &spec) {
                    Ok(v) if v.is_match() => None,
                    Ok(_) => Some(fail_case(index, inputs(), "composed match", "NoMatch".into())),
                    Err(e) => Some(fail_case(index, inputs(), "composed match", format!("error: {e}"))),
                },
                (Ok(_), Ok(_)) => {
                    Some(fail_case(index, inputs(), "constructed premise matches", "NoMatch".into()))
                }
                (Err(e), _) | (_, Err(e)) => {
                    Some(fail_case(index, inputs(), "constructed premise matches", format!("error: {e}")))
                }
            }
        }
        _ => {
            let pad = Quad::from_fraction(rng.gen_range(1..=4), 2);
            let tight = EntourageSpec::new(
                spec.window().inflate(&pad),
                spec.shift_bound() * &Quad::from_fraction(1, 2),
            )
            .expect("inflated window stays bounded");
            let gamma = bounded_shift(subject, rng, &p, tight.shift_bound());
            let back = -&gamma;
            let q = glue_far(subject, rng, &p.act(&back));
            let a = src(p.clone());
            let b = src(q.clone());
            let inputs = || format!("p={p:?} q={q:?} spec={spec:?} tight={tight:?}");
            match run(&a, &b, &tight) {
                Ok(EntourageVerdict::Match(w)) => {
                    let lhs = a.window(spec.window());
                    let rhs = b.act(&w.gamma).window(spec.window());
                    match (lhs, rhs) {
                        (Ok(x), Ok(y)) if x == y => None,
                        (Ok(_), Ok(_)) => Some(fail_case(
                            index,
                            inputs(),
                            "inherited witness verifies on the smaller window",
                            format!("windows differ for gamma={:?}", w.gamma),
                        )),
                        (Err(e), _) | (_, Err(e)) => {
                            Some(fail_case(index, inputs(), "inherited witness verifies", format!("error: {e}")))
                        }
                    }
                }
                Ok(_) => Some(fail_case(index, inputs(), "constructed premise match", "NoMatch".into())),
                Err(e) => Some(fail_case(index, inputs(), "constructed premise match", format!("error: {e}"))),
            }
        }
    }
}

/// The ball-and-halving schedule: at step `n` the window is the origin ball
/// of radius `n` and the shift bound is `2^{-(n+1)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CauchySchedule {
    dim: usize,
    steps: usize,
}

impl CauchySchedule {
    pub fn new(dim: usize, steps: usize) -> Result<Self> {
        if dim == 0 || dim > 2 {
            return Err(Error::InvalidQuery(format!("schedule dimension must be 1 or 2, got {dim}")));
        }
        if !(2..=40).contains(&steps) {
            return Err(Error::InvalidQuery(format!("schedule needs 2..=40 steps, got {steps}")));
        }
        Ok(CauchySchedule { dim, steps })
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn window<T: QuadInt>(&self, n: usize) -> Region<T> {
        Region::ball0(self.dim, Quad::from_int(n as i64))
    }

    pub fn shift_bound<T: QuadInt>(&self, n: usize) -> Quad<T> {
        Quad::from_fraction(1, 1i64 << (n + 1))
    }

    pub fn spec<T: QuadInt>(&self, n: usize) -> EntourageSpec<T> {
        EntourageSpec::new(self.window(n), self.shift_bound(n))
            .expect("schedule windows are bounded and bounds positive")
    }
}

/// A completed gluing run: the step witnesses, their partial sums, the glued
/// limit, and how many window equalities against the limit were re-checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CauchyRun<T: QuadInt> {
    pub witnesses: Vec<Vector<T>>,
    pub partial_shifts: Vec<Vector<T>>,
    pub limit: Pattern<T>,
    pub checked_windows: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CauchyOutcome<T: QuadInt> {
    Run(Box<CauchyRun<T>>),
    NotCauchyAtStep(usize),
}

/// Glues a sequence along the ball-and-halving schedule. Step `n` must admit
/// a witness shift of norm at most `2^{-(n+1)}` matching consecutive windows
/// on the radius-`n` ball; the tail sums of the witnesses then realign every
/// pattern, and the aligned windows glue to the limit.
pub fn cauchy_limit<T: QuadInt>(patterns: &[WindowSource<T>]) -> Result<CauchyOutcome<T>> {
    if patterns.len() < 2 {
        return Err(Error::InvalidQuery(format!(
            "a gluing run needs at least two patterns, got {}",
            patterns.len()
        )));
    }
    let dim = patterns[0].dim();
    let count = patterns.len();
    let schedule = CauchySchedule::new(dim, count)?;

    let mut witnesses = Vec::with_capacity(count - 1);
    for step in 1..count {
        let spec = schedule.spec::<T>(step);
        match in_entourage(&patterns[step], &patterns[step - 1], &spec)? {
            EntourageVerdict::Match(w) => witnesses.push(w.gamma),
            EntourageVerdict::NoMatch => return Ok(CauchyOutcome::NotCauchyAtStep(step)),
        }
    }

    let mut partial_shifts = vec![Vector::zero(dim); count];
    for j in (0..count - 1).rev() {
        partial_shifts[j] = &partial_shifts[j + 1] + &witnesses[j];
    }
    for (j, xi) in partial_shifts.iter().enumerate() {
        let bound = Quad::<T>::from_fraction(1, 1i64 << (j + 1));
        assert!(
            xi.norm_sq() < bound.square(),
            "partial shifts obey the halving bound"
        );
    }

    let mut members = Vec::with_capacity(count - 1);
    for k in 1..count {
        let aligned = patterns[k].act(&partial_shifts[k]);
        members.push(aligned.window(&schedule.window(k))?);
    }
    let limit = Pattern::supremum(&members[0], &members)
        .expect("aligned windows share a context")
        .unwrap_supremum();
    for (i, member) in members.iter().enumerate() {
        let window: Region<T> = schedule.window(i + 1);
        assert!(
            limit.cut(&window) == *member,
            "the limit restricts to every aligned window"
        );
    }
    Ok(CauchyOutcome::Run(Box::new(CauchyRun {
        witnesses,
        partial_shifts,
        limit,
        checked_windows: count - 1,
    })))
}

/// Separation verdict: either an explicit entourage excluding the pair, or
/// window equality out to the probe radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HausdorffVerdict<T: QuadInt> {
    Distinct { window: Region<T>, shift_bound: Quad<T> },
    EqualWithin { radius: Quad<T> },
}

/// Separates two patterns whose windows differ: grows the window and shrinks
/// the shift bound until no shift relates them, and returns that entourage.
/// Patterns with equal windows at the probe radius are reported equal there.
pub fn hausdorff_check<T: QuadInt>(
    p: &WindowSource<T>,
    q: &WindowSource<T>,
    r_max: &Quad<T>,
) -> Result<HausdorffVerdict<T>> {
    if !r_max.is_positive() {
        return Err(Error::InvalidQuery(format!("probe radius must be positive, got {r_max}")));
    }
    let dim = p.dim();
    let ball = Region::ball0(dim, r_max.clone());
    let wp = p.window(&ball)?;
    let wq = q.window(&ball)?;
    wp.check_context(&wq)?;
    if wp == wq {
        return Ok(HausdorffVerdict::EqualWithin { radius: r_max.clone() });
    }

    let mut radius = r_max.clone();
    for _ in 0..16 {
        let window = Region::ball0(dim, radius.clone());
        let mut v = Quad::one();
        for _ in 0..24 {
            let spec = EntourageSpec::new(window.clone(), v.clone())?;
            match in_entourage(p, q, &spec)? {
                EntourageVerdict::NoMatch => {
                    return Ok(HausdorffVerdict::Distinct { window, shift_bound: v })
                }
                EntourageVerdict::Match(w) => {
                    if w.gamma.is_zero() {
                        break;
                    }
                    v = v * Quad::from_fraction(1, 2);
                }
            }
        }
        radius = radius * Quad::from_int(2);
    }
    Err(Error::SearchExhausted(
        "no separating entourage found despite differing windows".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{fibonacci_point_set, integers};
    use crate::pattern::harness::{CombSubject, PointSubject, SymbolicSubject};
    use crate::pattern::PointSet;
    use num_bigint::BigInt;

    type Q = Quad<BigInt>;
    type Src = WindowSource<BigInt>;

    fn lit(s: &str) -> Q {
        s.parse().unwrap()
    }

    fn pts(xs: &[&str]) -> Src {
        let points = xs.iter().map(|x| Vector::one_d(lit(x))).collect();
        WindowSource::finite(Pattern::Points(PointSet::new(1, None, points).unwrap()))
    }

    fn lattice_window(radius: &str) -> Src {
        let g = integers::<BigInt>();
        WindowSource::finite(g.materialize(&Region::ball0(1, lit(radius))).unwrap())
    }

    fn spec(window: Region<BigInt>, v: &str) -> EntourageSpec<BigInt> {
        EntourageSpec::new(window, lit(v)).unwrap()
    }

    #[test]
    fn spec_validation_rejects_bad_inputs() {
        assert!(matches!(
            EntourageSpec::<BigInt>::new(Region::All, Quad::one()),
            Err(Error::UnboundedRegion(_))
        ));
        assert!(matches!(
            EntourageSpec::<BigInt>::new(Region::ball0(1, Quad::one()), Quad::zero()),
            Err(Error::InvalidQuery(_))
        ));
    }

    #[test]
    fn identical_sources_match_with_the_zero_shift() {
        let fib: Src = WindowSource::generated(fibonacci_point_set());
        let s = spec(Region::ball0(1, lit("5")), "1/4");
        let verdict = in_entourage(&fib, &fib, &s).unwrap();
        assert_eq!(verdict.witness().unwrap().gamma, Vector::zero(1));
    }

    #[test]
    fn lattice_shift_witnesses_are_exact() {
        let z: Src = WindowSource::generated(integers());
        let close = z.act(&Vector::one_d(lit("1/20")));
        let s = spec(Region::ball0(1, lit("10")), "1/10");
        let verdict = in_entourage(&z, &close, &s).unwrap();
        assert_eq!(verdict.witness().unwrap().gamma, Vector::one_d(lit("-1/20")));

        let far = z.act(&Vector::one_d(lit("1/2")));
        assert_eq!(in_entourage(&z, &far, &s).unwrap(), EntourageVerdict::NoMatch);
    }

    #[test]
    fn empty_window_corner_finds_a_clearing_shift() {
        let p = pts(&["-1/8"]);
        let q = pts(&["1/8"]);
        let s = spec(Region::interval(lit("0"), lit("1")), "1/2");
        let verdict = in_entourage(&p, &q, &s).unwrap();
        assert_eq!(verdict.witness().unwrap().gamma, Vector::one_d(lit("-1/2")));

        let trapped = pts(&["1/2"]);
        assert_eq!(in_entourage(&p, &trapped, &s).unwrap(), EntourageVerdict::NoMatch);
    }

    #[test]
    fn clearing_shifts_stay_integral_for_symbolic_patterns() {
        let alphabet = vec!["a".to_string(), "b".to_string()];
        let mut letters = std::collections::BTreeMap::new();
        letters.insert(1i64, "a".to_string());
        let q = WindowSource::finite(Pattern::Symbolic(
            crate::pattern::Symbolic::<BigInt>::new(alphabet.clone(), letters).unwrap(),
        ));
        let p = WindowSource::finite(Pattern::Symbolic(
            crate::pattern::Symbolic::<BigInt>::new(alphabet, std::collections::BTreeMap::new())
                .unwrap(),
        ));
        let s = spec(Region::interval(lit("0"), lit("3/2")), "2");
        let verdict = in_entourage(&p, &q, &s).unwrap();
        let gamma = verdict.witness().unwrap().gamma.clone();
        assert!(is_integer_vector(&gamma));
        assert_eq!(gamma, Vector::one_d(lit("1")));
    }

    #[test]
    fn match_radius_reports_the_first_disagreement() {
        let z: Src = WindowSource::generated(integers());
        let e = Vector::zero(1);
        assert_eq!(match_radius(&z, &z, &e, &lit("100")).unwrap(), MatchRadius::Exceeds);

        let defect = {
            let base = integers::<BigInt>().materialize(&Region::ball0(1, lit("30"))).unwrap();
            let extra = Pattern::Points(
                PointSet::new(1, None, vec![Vector::one_d(lit("1/2"))]).unwrap(),
            );
            WindowSource::finite(
                Pattern::supremum(&base, &[base.clone(), extra]).unwrap().unwrap_supremum(),
            )
        };
        match match_radius(&z, &defect, &e, &lit("20")).unwrap() {
            MatchRadius::Disagrees(r) => assert_eq!(r.square(), &lit("1/4")),
            MatchRadius::Exceeds => panic!("defect at 1/2 must be seen"),
        }

        let unit = Vector::one_d(lit("1"));
        assert_eq!(match_radius(&z, &z, &unit, &lit("100")).unwrap(), MatchRadius::Exceeds);
    }

    #[test]
    fn lattice_distances_are_exact() {
        let z: Src = WindowSource::generated(integers());
        let d_self = local_matching_distance(&z, &z, &lit("20")).unwrap();
        assert!(d_self.value.is_zero());
        assert_eq!(d_self.certainty, Certainty::Exact);

        let shifted = z.act(&Vector::one_d(lit("1/10")));
        let d = local_matching_distance(&z, &shifted, &lit("20")).unwrap();
        assert_eq!(d.value.square(), &lit("1/100"));
        assert_eq!(d.certainty, Certainty::Exact);

        let defect = {
            let base = integers::<BigInt>().materialize(&Region::ball0(1, lit("30"))).unwrap();
            let extra = Pattern::Points(
                PointSet::new(1, None, vec![Vector::one_d(lit("1/2"))]).unwrap(),
            );
            WindowSource::finite(
                Pattern::supremum(&base, &[base.clone(), extra]).unwrap().unwrap_supremum(),
            )
        };
        let z_fin = lattice_window("30");
        let d_cap = local_matching_distance(&z_fin, &defect, &lit("20")).unwrap();
        assert_eq!(d_cap.value, SqrtVal::one());
    }

    #[test]
    fn distance_is_symmetric_and_zero_needs_a_witness() {
        let a = pts(&["0", "1", "5/2"]);
        let b = pts(&["0", "1", "8/3"]);
        let r = lit("20");
        let d_ab = local_matching_distance(&a, &b, &r).unwrap();
        let d_ba = local_matching_distance(&b, &a, &r).unwrap();
        assert_eq!(d_ab, d_ba);
        assert!(!d_ab.value.is_zero());

        let same = pts(&["0", "1", "5/2"]);
        let d_same = local_matching_distance(&a, &same, &r).unwrap();
        assert!(d_same.value.is_zero());
        assert_eq!(d_same.certainty, Certainty::Exact);
    }

    #[test]
    fn entourage_suite_passes_on_line_subjects() {
        let point = PointSubject::<BigInt>::locally_finite(1);
        let report = entourage_axiom_suite(&point, 24, 0xE47);
        assert!(report.all_pass(), "{report:?}");

        let word = SymbolicSubject::<BigInt>::new();
        let report = entourage_axiom_suite(&word, 24, 0xE47);
        assert!(report.all_pass(), "{report:?}");

        let comb = CombSubject::<BigInt>::new(1);
        let report = entourage_axiom_suite(&comb, 24, 0xE47);
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn constant_lattice_run_glues_to_the_lattice() {
        let steps = 6usize;
        let patterns: Vec<Src> = (1..=steps)
            .map(|n| lattice_window(&format!("{n}")))
            .collect();
        match cauchy_limit(&patterns).unwrap() {
            CauchyOutcome::Run(run) => {
                assert!(run.witnesses.iter().all(|g| g.is_zero()));
                let expected = integers::<BigInt>()
                    .materialize(&Region::ball0(1, lit("5")))
                    .unwrap();
                assert_eq!(run.limit, expected);
                assert_eq!(run.checked_windows, steps - 1);
            }
            CauchyOutcome::NotCauchyAtStep(n) => panic!("constant run failed at {n}"),
        }
    }

    #[test]
    fn incoherent_run_is_rejected_at_the_first_step() {
        let z = lattice_window("4");
        let off = {
            let g = integers::<BigInt>();
            let p = g.materialize(&Region::ball0(1, lit("4"))).unwrap();
            WindowSource::finite(p.act(&Vector::one_d(lit("1/2"))))
        };
        match cauchy_limit(&[z, off]).unwrap() {
            CauchyOutcome::NotCauchyAtStep(n) => assert_eq!(n, 1),
            CauchyOutcome::Run(_) => panic!("half-shifted step cannot be within 1/4"),
        }
    }

    #[test]
    fn shrinking_shifts_of_the_fibonacci_set_converge() {
        let steps = 6usize;
        let fib: Src = WindowSource::generated(fibonacci_point_set());
        let patterns: Vec<Src> = (1..=steps)
            .map(|n| fib.act(&Vector::one_d(Quad::from_fraction(1, 1i64 << (n + 1)))))
            .collect();
        match cauchy_limit(&patterns).unwrap() {
            CauchyOutcome::Run(run) => {
                for (j, gamma) in run.witnesses.iter().enumerate() {
                    let expected = -Quad::<BigInt>::from_fraction(1, 1i64 << (j + 3));
                    assert_eq!(gamma, &Vector::one_d(expected));
                }
                let tail = fib.act(&Vector::one_d(Quad::from_fraction(1, 1i64 << (steps + 1))));
                let expected = tail
                    .window(&Region::ball0(1, Quad::from_int(steps as i64 - 1)))
                    .unwrap();
                assert_eq!(run.limit, expected);
            }
            CauchyOutcome::NotCauchyAtStep(n) => panic!("shrinking shifts failed at {n}"),
        }
    }

    #[test]
    fn hausdorff_separates_differing_patterns() {
        let a = pts(&["0"]);
        let b = pts(&["1/3"]);
        match hausdorff_check(&a, &b, &lit("1")).unwrap() {
            HausdorffVerdict::Distinct { window, shift_bound } => {
                let s = EntourageSpec::new(window, shift_bound).unwrap();
                assert_eq!(in_entourage(&a, &b, &s).unwrap(), EntourageVerdict::NoMatch);
            }
            HausdorffVerdict::EqualWithin { .. } => panic!("0 and 1/3 differ"),
        }

        let z: Src = WindowSource::generated(integers());
        let same = lattice_window("30");
        match hausdorff_check(&z, &same, &lit("10")).unwrap() {
            HausdorffVerdict::EqualWithin { radius } => assert_eq!(radius, lit("10")),
            HausdorffVerdict::Distinct { .. } => panic!("equal windows out to 10"),
        }
    }

    #[test]
    fn hausdorff_separates_tiles_of_different_lengths() {
        let one = WindowSource::finite(Pattern::Patch(
            crate::pattern::Patch::<BigInt>::new(
                1,
                vec![crate::pattern::Tile::new(
                    Vector::one_d(lit("0")),
                    Vector::one_d(lit("1")),
                    None,
                )],
            )
            .unwrap(),
        ));
        let two = WindowSource::finite(Pattern::Patch(
            crate::pattern::Patch::<BigInt>::new(
                1,
                vec![crate::pattern::Tile::new(
                    Vector::one_d(lit("0")),
                    Vector::one_d(lit("2")),
                    None,
                )],
            )
            .unwrap(),
        ));
        match hausdorff_check(&one, &two, &lit("3")).unwrap() {
            HausdorffVerdict::Distinct { window, shift_bound } => {
                let s = EntourageSpec::new(window, shift_bound).unwrap();
                assert_eq!(in_entourage(&one, &two, &s).unwrap(), EntourageVerdict::NoMatch);
            }
            HausdorffVerdict::EqualWithin { .. } => panic!("tile lengths differ"),
        }
    }
}
