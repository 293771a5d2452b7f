//! Translation-class census and hull sampling.
//!
//! A pattern has finite local complexity when only finitely many window
//! contents occur up to translation. This module enumerates those classes
//! exactly on the line (sliding the window over every real center) and by
//! anchored windows in the plane, counts symbolic factors, samples a
//! pattern's translation orbit with exact pairwise distances, extracts greedy
//! ε-nets from such samples, and performs the nested subsequence extraction
//! along the ball-and-halving schedule.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generators::{Generator, WindowSource};
use crate::geom::Vector;
use crate::pattern::{Pattern, SpaceKind};
use crate::region::Region;
use crate::scalar::{Quad, QuadInt, SqrtVal};
use crate::topology::{in_entourage, local_matching_distance, CauchySchedule};

/// One translation class of windows: the representative translated so its
/// lexicographically least anchor sits at the origin, and how many window
/// placements produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterClass<T: QuadInt> {
    pub canonical: Pattern<T>,
    pub multiplicity: usize,
}

/// The census over a growing window schedule. Stabilization of the last two
/// counts is evidence of finite local complexity, not proof; `certified` is
/// set only when the source is periodic and the final window exceeds the
/// period span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlcReport<T: QuadInt> {
    pub radius: Quad<T>,
    pub windows: Vec<Quad<T>>,
    pub class_counts: Vec<usize>,
    pub stabilized: bool,
    pub certified: bool,
    pub classes: Vec<ClusterClass<T>>,
}

struct Item<T: QuadInt> {
    lo: Quad<T>,
    hi: Quad<T>,
}

fn run_items<T: QuadInt>(pat: &Pattern<T>) -> Vec<Item<T>> {
    pat.support_atoms()
        .into_iter()
        .map(|atom| match atom {
            crate::pattern::SupportAtom::Point(p) => {
                let x = p.coord(0).clone();
                Item { lo: x.clone(), hi: x }
            }
            crate::pattern::SupportAtom::Box { lo, hi } => {
                Item { lo: lo.coord(0).clone(), hi: hi.coord(0).clone() }
            }
        })
        .collect()
}

fn canonical_of<T: QuadInt>(window: &Pattern<T>) -> Pattern<T> {
    let anchor = window.anchors().into_iter().next().expect("nonzero window has an anchor");
    window.act(&-&anchor)
}

/// Max/min endpoint bookkeeping for feasibility intervals: a strict bound
/// wins a tie against a closed one because it is the more restrictive side.
fn tighter_lo<T: QuadInt>(a: (Quad<T>, bool), b: (Quad<T>, bool)) -> (Quad<T>, bool) {
    match a.0.cmp(&b.0) {
        std::cmp::Ordering::Greater => a,
        std::cmp::Ordering::Less => b,
        std::cmp::Ordering::Equal => (a.0, a.1 || b.1),
    }
}

fn tighter_hi<T: QuadInt>(a: (Quad<T>, bool), b: (Quad<T>, bool)) -> (Quad<T>, bool) {
    match a.0.cmp(&b.0) {
        std::cmp::Ordering::Less => a,
        std::cmp::Ordering::Greater => b,
        std::cmp::Ordering::Equal => (a.0, a.1 || b.1),
    }
}

fn feasible<T: QuadInt>(lo: &(Quad<T>, bool), hi: &(Quad<T>, bool)) -> bool {
    match lo.0.cmp(&hi.0) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Equal => !lo.1 && !hi.1,
        std::cmp::Ordering::Greater => false,
    }
}

/// Census of a single window size on the line: every maximal run of items
/// capturable together corresponds to an interval of feasible centers, so
/// enumerating runs enumerates window contents over all real centers.
fn line_census<T: QuadInt>(
    pat: &Pattern<T>,
    items: &[Item<T>],
    radius: &Quad<T>,
    w: &Quad<T>,
) -> Vec<(Pattern<T>, usize)> {
    let neg_w = -w.clone();
    let mut order: Vec<Pattern<T>> = Vec::new();
    let mut counts: HashMap<Pattern<T>, usize> = HashMap::new();
    let mut bump = |class: Pattern<T>| {
        if let Some(c) = counts.get_mut(&class) {
            *c += 1;
        } else {
            counts.insert(class.clone(), 1);
            order.push(class);
        }
    };

    let n = items.len();
    for i in 0..n {
        if &items[i].hi - radius > *w {
            break;
        }
        if &items[i].lo + radius < neg_w {
            continue;
        }
        let right_cap = {
            let cap = &items[i].lo + radius;
            if cap < *w {
                cap
            } else {
                w.clone()
            }
        };
        for j in i..n {
            if &items[j].hi - radius > right_cap {
                break;
            }
            let mut lo = ((&items[j].hi - radius), false);
            lo = tighter_lo(lo, (neg_w.clone(), false));
            if i > 0 {
                lo = tighter_lo(lo, (&items[i - 1].lo + radius, true));
            }
            let mut hi = ((&items[i].lo + radius), false);
            hi = tighter_hi(hi, (w.clone(), false));
            if j + 1 < n {
                hi = tighter_hi(hi, (&items[j + 1].hi - radius, true));
            }
            if feasible(&lo, &hi) {
                let span = Region::interval(items[i].lo.clone(), items[j].hi.clone());
                let shift = Vector::one_d(-items[i].lo.clone());
                bump(pat.cut(&span).act(&shift));
            }
        }
    }

    if empty_window_occurs(items, radius, w) {
        bump(pat.zero_like());
    }
    order.into_iter().map(|class| { let c = counts[&class]; (class, c) }).collect()
}

/// Whether some center in `[-w, w]` captures no item at all: the capture
/// intervals are closed, so a gap in their merged union is a real center.
fn empty_window_occurs<T: QuadInt>(items: &[Item<T>], radius: &Quad<T>, w: &Quad<T>) -> bool {
    let mut captures: Vec<(Quad<T>, Quad<T>)> = items
        .iter()
        .filter_map(|it| {
            let a = &it.hi - radius;
            let b = &it.lo + radius;
            if a <= b {
                Some((a, b))
            } else {
                None
            }
        })
        .collect();
    captures.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| x.1.cmp(&y.1)));
    let mut cursor = -w.clone();
    for (a, b) in captures {
        if cursor >= *w {
            return false;
        }
        if a > cursor {
            return true;
        }
        if b > cursor {
            cursor = b;
        }
    }
    cursor < *w
}

/// Census of a single window size in the plane: windows are centered at the
/// pattern's own anchors inside the scan radius. Complete for class counting
/// of anchored patterns; exhaustive real-center sweeps are a line-only
/// guarantee.
fn anchored_census<T: QuadInt>(
    pat: &Pattern<T>,
    radius: &Quad<T>,
    w: &Quad<T>,
) -> Vec<(Pattern<T>, usize)> {
    let w_sq = w.square();
    let centers: Vec<Vector<T>> =
        pat.anchors().into_iter().filter(|a| a.norm_sq() <= w_sq).collect();
    let canonicals: Vec<Option<Pattern<T>>> = centers
        .par_iter()
        .map(|a| {
            let win = pat.cut(&Region::ball(a.clone(), radius.clone()));
            if win.is_zero() {
                None
            } else {
                Some(canonical_of(&win))
            }
        })
        .collect();

    let mut order: Vec<Pattern<T>> = Vec::new();
    let mut counts: HashMap<Pattern<T>, usize> = HashMap::new();
    for class in canonicals.into_iter().flatten() {
        if let Some(c) = counts.get_mut(&class) {
            *c += 1;
        } else {
            counts.insert(class.clone(), 1);
            order.push(class);
        }
    }
    order.into_iter().map(|class| { let c = counts[&class]; (class, c) }).collect()
}

fn periodic_span<T: QuadInt>(source: &WindowSource<T>) -> Option<Quad<T>> {
    match source {
        WindowSource::Generated { gen: Generator::Periodic { basis, .. }, .. } => {
            let mut span = Quad::zero();
            for b in basis {
                for c in b.coords() {
                    span = span + c.abs();
                }
            }
            Some(span)
        }
        WindowSource::Generated { gen: Generator::WordPeriodic { word, .. }, .. } => {
            Some(Quad::from_int(word.len() as i64))
        }
        _ => None,
    }
}

/// Enumerates the translation classes of radius-`radius` windows of `source`
/// over a growing schedule of scan half-widths. Counts are nondecreasing and
/// the reported classes come from the final window.
pub fn flc_check<T: QuadInt>(
    source: &WindowSource<T>,
    radius: &Quad<T>,
    windows: &[Quad<T>],
) -> Result<FlcReport<T>> {
    if !radius.is_positive() {
        return Err(Error::InvalidQuery(format!("scan radius must be positive, got {radius}")));
    }
    if windows.is_empty() {
        return Err(Error::InvalidQuery("the window schedule must be nonempty".into()));
    }
    for pair in windows.windows(2) {
        if pair[0] > pair[1] {
            return Err(Error::InvalidQuery("the window schedule must be nondecreasing".into()));
        }
    }
    if !windows[0].is_positive() {
        return Err(Error::InvalidQuery("scan windows must be positive".into()));
    }
    if source.kind() == SpaceKind::Multi {
        return Err(Error::InvalidQuery(
            "the class census runs on anchored single-component patterns".into(),
        ));
    }

    let dim = source.dim();
    let largest = windows.last().unwrap();
    let reach = largest + &(radius + &Quad::one());
    let pat = source.window(&Region::ball0(dim, reach))?;

    let items = if dim == 1 { run_items(&pat) } else { Vec::new() };
    let mut class_counts = Vec::with_capacity(windows.len());
    let mut final_census = Vec::new();
    for w in windows {
        let census = if dim == 1 {
            line_census(&pat, &items, radius, w)
        } else {
            anchored_census(&pat, radius, w)
        };
        class_counts.push(census.len());
        final_census = census;
    }

    let stabilized = class_counts.len() >= 2
        && class_counts[class_counts.len() - 1] == class_counts[class_counts.len() - 2];
    let certified = stabilized
        && periodic_span(source)
            .map(|span| *largest >= span + radius + Quad::one())
            .unwrap_or(false);
    Ok(FlcReport {
        radius: radius.clone(),
        windows: windows.to_vec(),
        class_counts,
        stabilized,
        certified,
        classes: final_census
            .into_iter()
            .map(|(canonical, multiplicity)| ClusterClass { canonical, multiplicity })
            .collect(),
    })
}

/// Factor counts `p(1..=n_max)` of a symbolic source, read from a prefix
/// window long enough to saturate and cross-checked at twice the length.
pub fn symbolic_complexity<T: QuadInt>(
    source: &WindowSource<T>,
    n_max: usize,
) -> Result<Vec<usize>> {
    if n_max == 0 || n_max > 64 {
        return Err(Error::InvalidQuery(format!("factor lengths must lie in 1..=64, got {n_max}")));
    }
    if source.kind() != SpaceKind::Symbolic {
        return Err(Error::InvalidQuery("factor counting needs a symbolic pattern".into()));
    }
    let len = (40 * n_max as i64).max(500);
    let counts = factor_counts(source, len, n_max)?;
    let check = factor_counts(source, 2 * len, n_max)?;
    if counts != check {
        return Err(Error::SearchExhausted(
            "factor counts kept growing when the window doubled".into(),
        ));
    }
    Ok(counts)
}

fn factor_counts<T: QuadInt>(
    source: &WindowSource<T>,
    len: i64,
    n_max: usize,
) -> Result<Vec<usize>> {
    let region = Region::interval(Quad::zero(), Quad::from_int(len - 1));
    let pat = source.window(&region)?;
    let word = match &pat {
        Pattern::Symbolic(s) => s,
        _ => return Err(Error::InvalidQuery("factor counting needs a symbolic pattern".into())),
    };
    let mut index: HashMap<&str, u32> = HashMap::new();
    for (i, letter) in word.alphabet().iter().enumerate() {
        index.insert(letter, i as u32);
    }
    let mut ids = Vec::with_capacity(len as usize);
    for (expected, (pos, letter)) in word.entries().enumerate() {
        if pos != expected as i64 {
            return Err(Error::InvalidGenerator(format!(
                "the letter window skips position {expected}"
            )));
        }
        ids.push(index[letter]);
    }
    if ids.len() != len as usize {
        return Err(Error::InvalidGenerator(format!(
            "the letter window stops at {} of {len} positions",
            ids.len()
        )));
    }
    Ok((1..=n_max)
        .map(|n| ids.windows(n).collect::<HashSet<_>>().len())
        .collect())
}

/// A materialized orbit sample: windows of shifted copies of one pattern,
/// ready for exact local matching distance queries at `r_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullSample<T: QuadInt> {
    pub center: WindowSource<T>,
    pub shifts: Vec<Vector<T>>,
    pub r_max: Quad<T>,
    pub windows: Vec<WindowSource<T>>,
}

impl<T: QuadInt> HullSample<T> {
    /// The exact local matching distance between two sampled shifts.
    pub fn distance(&self, i: usize, j: usize) -> Result<SqrtVal<T>> {
        let n = self.windows.len();
        if i >= n || j >= n {
            return Err(Error::InvalidQuery(format!(
                "sample indices ({i}, {j}) exceed the {n} sampled shifts"
            )));
        }
        if i == j {
            return Ok(SqrtVal::zero());
        }
        Ok(local_matching_distance(&self.windows[i], &self.windows[j], &self.r_max)?.value)
    }
}

/// Materializes the shifted windows of `source` out to `r_max + 2`, far
/// enough that every distance query at probe radius `r_max` is answered from
/// the stored windows alone.
pub fn orbit_sample<T: QuadInt>(
    source: &WindowSource<T>,
    shifts: &[Vector<T>],
    r_max: &Quad<T>,
) -> Result<HullSample<T>> {
    if shifts.is_empty() {
        return Err(Error::InvalidQuery("an orbit sample needs at least one shift".into()));
    }
    let dim = source.dim();
    for s in shifts {
        if s.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: s.dim() });
        }
    }
    let reach = Region::ball0(dim, r_max + &Quad::from_int(2));
    let windows: Vec<WindowSource<T>> = shifts
        .par_iter()
        .map(|g| Ok(WindowSource::finite(source.act(g).window(&reach)?)))
        .collect::<Result<_>>()?;
    Ok(HullSample {
        center: source.clone(),
        shifts: shifts.to_vec(),
        r_max: r_max.clone(),
        windows,
    })
}

/// A greedy farthest-point net over a hull sample: net points are pairwise
/// farther than `eps` apart and every sample lies within `eps` of its
/// assigned net point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsNet<T: QuadInt> {
    pub eps: Quad<T>,
    pub net: Vec<usize>,
    pub assignment: Vec<usize>,
}

pub fn eps_net<T: QuadInt>(sample: &HullSample<T>, eps: &Quad<T>) -> Result<EpsNet<T>> {
    if !eps.is_positive() {
        return Err(Error::InvalidQuery(format!("covering radius must be positive, got {eps}")));
    }
    let n = sample.shifts.len();
    // Each greedy round costs one row of distance queries, so the whole net
    // extraction needs `n * net.len()` queries instead of the full matrix.
    let mut assignment = vec![0usize; n];
    let mut nearest: Vec<SqrtVal<T>> = (0..n)
        .map(|i| sample.distance(i, 0))
        .collect::<Result<_>>()?;

    let mut net = vec![0usize];
    loop {
        let mut far_idx = 0usize;
        let mut far_d = SqrtVal::zero();
        for (i, d) in nearest.iter().enumerate() {
            if *d > far_d {
                far_d = d.clone();
                far_idx = i;
            }
        }
        if far_d.cmp_scalar(eps) != std::cmp::Ordering::Greater {
            break;
        }
        net.push(far_idx);
        for i in 0..n {
            let d = sample.distance(i, far_idx)?;
            if d < nearest[i] {
                nearest[i] = d;
                assignment[i] = far_idx;
            }
        }
    }

    for d in &nearest {
        assert!(
            d.cmp_scalar(eps) != std::cmp::Ordering::Greater,
            "the greedy net covers every sample"
        );
    }
    Ok(EpsNet { eps: eps.clone(), net, assignment })
}

/// Pairwise witnesses recorded for the surviving indices at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelWitness<T: QuadInt> {
    pub level: usize,
    pub pairs: Vec<(usize, usize, Vector<T>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalPick<T: QuadInt> {
    pub indices: Vec<usize>,
    pub witnesses: Vec<LevelWitness<T>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagonalOutcome<T: QuadInt> {
    Picked(DiagonalPick<T>),
    NoSubsequence { level: usize },
}

/// Nested subsequence extraction along the ball-and-halving schedule: at each
/// level the survivors are thinned to a set whose pairs all lie in that
/// level's entourage, greedily seeded from the earliest index that admits a
/// companion. Witnesses for every surviving pair are recorded per level.
pub fn diagonal_subsequence<T: QuadInt>(
    patterns: &[WindowSource<T>],
    levels: usize,
) -> Result<DiagonalOutcome<T>> {
    if patterns.len() < 2 {
        return Err(Error::InvalidQuery(format!(
            "subsequence extraction needs at least two patterns, got {}",
            patterns.len()
        )));
    }
    if levels == 0 {
        return Err(Error::InvalidQuery("subsequence extraction needs at least one level".into()));
    }
    let dim = patterns[0].dim();
    let schedule = CauchySchedule::new(dim, (levels + 1).max(2))?;

    let mut survivors: Vec<usize> = (0..patterns.len()).collect();
    let mut witnesses = Vec::with_capacity(levels);
    for level in 1..=levels {
        let spec = schedule.spec::<T>(level);
        let mut chosen: Option<Vec<usize>> = None;
        for s in 0..survivors.len() {
            let mut clique = vec![survivors[s]];
            for &cand in &survivors[s + 1..] {
                let mut joins = true;
                for &member in &clique {
                    if !in_entourage(&patterns[cand], &patterns[member], &spec)?.is_match() {
                        joins = false;
                        break;
                    }
                }
                if joins {
                    clique.push(cand);
                }
            }
            if clique.len() >= 2 {
                chosen = Some(clique);
                break;
            }
        }
        let Some(clique) = chosen else {
            return Ok(DiagonalOutcome::NoSubsequence { level });
        };
        let mut pairs = Vec::new();
        for a in 0..clique.len() {
            for b in a + 1..clique.len() {
                let verdict = in_entourage(&patterns[clique[b]], &patterns[clique[a]], &spec)?;
                let gamma = verdict.witness().expect("surviving pairs re-verify").gamma.clone();
                pairs.push((clique[b], clique[a], gamma));
            }
        }
        witnesses.push(LevelWitness { level, pairs });
        survivors = clique;
    }
    Ok(DiagonalOutcome::Picked(DiagonalPick { indices: survivors, witnesses }))
}
