//! Randomized law checking for pattern spaces.
//!
//! A subject bundles deterministic samplers for patterns, regions, and
//! shifts of one space. The harness replays every algebraic law on each
//! sampled instance and reports violations with their inputs. Sampling is
//! seeded per index, so reports are reproducible and shard cleanly across
//! threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::geom::Vector;
use crate::region::Region;
use crate::scalar::{Quad, QuadInt};

use super::{Pattern, PointSet, SupResult};

/// Deterministic samplers for one pattern space.
pub trait AxiomSubject<T: QuadInt>: Sync {
    fn space(&self) -> String;
    fn dim(&self) -> usize;
    fn sample_pattern(&self, rng: &mut ChaCha8Rng) -> Pattern<T>;
    fn sample_region(&self, rng: &mut ChaCha8Rng, pattern: &Pattern<T>) -> Region<T>;
    fn sample_shift(&self, rng: &mut ChaCha8Rng, pattern: &Pattern<T>) -> Vector<T>;

    /// The cut under test. Overridable so that a deliberately broken
    /// operation can demonstrate the harness detects violations.
    fn cut(&self, pattern: &Pattern<T>, region: &Region<T>) -> Pattern<T> {
        pattern.cut(region)
    }
}

/// One law violation with the inputs that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailureCase {
    pub index: usize,
    pub inputs: String,
    pub expected: String,
    pub got: String,
}

/// All outcomes for one law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub law: String,
    pub samples: usize,
    pub failures: Vec<FailureCase>,
}

/// The full report for one space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceReport {
    pub space: String,
    pub seed: u64,
    pub samples: usize,
    pub laws: Vec<LawReport>,
}

impl SpaceReport {
    pub fn all_pass(&self) -> bool {
        self.laws.iter().all(|l| l.failures.is_empty())
    }

    pub fn violation_count(&self) -> usize {
        self.laws.iter().map(|l| l.failures.len()).sum()
    }
}

pub const LAWS: &[&str] = &[
    "cut-composition",
    "cut-idempotence",
    "support-of-cut-shrinks",
    "cut-identity-iff-support-inside",
    "cut-equivariance",
    "cut-sits-below",
    "cut-monotone-in-pattern",
    "gluing-distributes-over-cut",
    "order-antisymmetry",
    "atomistic",
    "zero-laws",
];

/// Seeds one sample's generator independently of all others.
pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9E3779B97F4A7C15))
}

pub(crate) fn snip(s: String) -> String {
    const LIMIT: usize = 320;
    if s.len() <= LIMIT {
        s
    } else {
        let mut cutoff = LIMIT;
        while !s.is_char_boundary(cutoff) {
            cutoff -= 1;
        }
        format!("{}…", &s[..cutoff])
    }
}

/// Runs every law on `samples` sampled instances and collects violations.
pub fn axiom_report<T: QuadInt>(
    subject: &dyn AxiomSubject<T>,
    samples: usize,
    seed: u64,
) -> SpaceReport {
    let per_sample: Vec<Vec<(usize, FailureCase)>> = (0..samples)
        .into_par_iter()
        .map(|index| {
            let mut rng = sample_rng(seed, index);
            evaluate_sample(subject, index, &mut rng)
        })
        .collect();
    let mut laws: Vec<LawReport> = LAWS
        .iter()
        .map(|&law| LawReport { law: law.to_string(), samples, failures: Vec::new() })
        .collect();
    for failures in per_sample {
        for (law_idx, case) in failures {
            laws[law_idx].failures.push(case);
        }
    }
    SpaceReport { space: subject.space(), seed, samples, laws }
}

fn evaluate_sample<T: QuadInt>(
    subject: &dyn AxiomSubject<T>,
    index: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<(usize, FailureCase)> {
    let p = subject.sample_pattern(rng);
    let c1 = subject.sample_region(rng, &p);
    let c2 = subject.sample_region(rng, &p);
    let c3 = subject.sample_region(rng, &p);
    let gamma = subject.sample_shift(rng, &p);
    let mut failures = Vec::new();
    let mut fail = |law: usize, inputs: String, expected: String, got: String| {
        failures.push((
            law,
            FailureCase {
                index,
                inputs: snip(inputs),
                expected: snip(expected),
                got: snip(got),
            },
        ));
    };

    let p_c1 = subject.cut(&p, &c1);
    let p_c2 = subject.cut(&p, &c2);
    let c1c2 = c1.clone().intersect(c2.clone());

    let composed = subject.cut(&p_c1, &c2);
    let direct = subject.cut(&p, &c1c2);
    if composed != direct {
        fail(
            0,
            format!("P={p:?} C1={c1:?} C2={c2:?}"),
            format!("{direct:?}"),
            format!("{composed:?}"),
        );
    }

    let twice = subject.cut(&p_c1, &c1);
    if twice != p_c1 {
        fail(1, format!("P={p:?} C1={c1:?}"), format!("{p_c1:?}"), format!("{twice:?}"));
    }

    let supp_p = p.support();
    let stray: Vec<_> = p_c1
        .support_atoms()
        .into_iter()
        .filter(|a| !a.within(&supp_p) || !a.within(&c1))
        .collect();
    if !stray.is_empty() {
        fail(
            2,
            format!("P={p:?} C1={c1:?}"),
            "every support atom of the cut inside supp(P) and C1".into(),
            format!("stray atoms {stray:?}"),
        );
    }

    let identity = p_c1 == p;
    let inside = p.supp_within(&c1);
    if identity != inside {
        fail(
            3,
            format!("P={p:?} C1={c1:?}"),
            format!("cut==P ({identity}) iff supp(P)⊆C1 ({inside})"),
            "mismatch".into(),
        );
    }

    let moved = subject.cut(&p.act(&gamma), &c1.translate(&gamma));
    let expected_moved = p_c1.act(&gamma);
    if moved != expected_moved {
        fail(
            4,
            format!("P={p:?} C1={c1:?} γ={gamma}"),
            format!("{expected_moved:?}"),
            format!("{moved:?}"),
        );
    }

    match p.geq(&p_c1) {
        Ok(v) if v.geq => {}
        other => fail(
            5,
            format!("P={p:?} C1={c1:?}"),
            "P ≧ P∧C1".into(),
            format!("{other:?}"),
        ),
    }

    let lhs = subject.cut(&p, &c3);
    let rhs = subject.cut(&p_c2, &c3);
    match lhs.geq(&rhs) {
        Ok(v) if v.geq => {}
        other => fail(
            6,
            format!("P={p:?} C2={c2:?} C3={c3:?}"),
            "P∧C3 ≧ (P∧C2)∧C3".into(),
            format!("{other:?}"),
        ),
    }

    let family = vec![p_c1.clone(), p_c2.clone(), subject.cut(&p, &c1c2)];
    match Pattern::supremum(&p, &family) {
        Ok(SupResult::Supremum(sup)) => {
            let cut_family: Vec<_> = family.iter().map(|q| subject.cut(q, &c3)).collect();
            match Pattern::supremum(&p, &cut_family) {
                Ok(SupResult::Supremum(sup_of_cuts)) => {
                    let cut_of_sup = subject.cut(&sup, &c3);
                    if sup_of_cuts != cut_of_sup {
                        fail(
                            7,
                            format!("P={p:?} C1={c1:?} C2={c2:?} C3={c3:?}"),
                            format!("{cut_of_sup:?}"),
                            format!("{sup_of_cuts:?}"),
                        );
                    }
                }
                other => fail(
                    7,
                    format!("P={p:?} C3={c3:?}"),
                    "supremum of compatible cuts".into(),
                    format!("{other:?}"),
                ),
            }
        }
        other => fail(
            7,
            format!("P={p:?} C1={c1:?} C2={c2:?}"),
            "supremum of cuts of one pattern".into(),
            format!("{other:?}"),
        ),
    }

    let fwd = p_c1.geq(&p_c2).map(|v| v.geq).unwrap_or(false);
    let bwd = p_c2.geq(&p_c1).map(|v| v.geq).unwrap_or(false);
    if fwd && bwd && p_c1 != p_c2 {
        fail(
            8,
            format!("A={p_c1:?} B={p_c2:?}"),
            "A ≧ B and B ≧ A imply A == B".into(),
            "both hold on distinct patterns".into(),
        );
    }

    let atoms = p.atoms();
    match Pattern::supremum(&p, &atoms) {
        Ok(SupResult::Supremum(sup)) if sup == p => {}
        other => fail(
            9,
            format!("P={p:?}"),
            "supremum of atoms rebuilds P".into(),
            format!("{other:?}"),
        ),
    }

    let zero = p.zero_like();
    let zero_ok = zero.is_zero()
        && subject.cut(&zero, &c1).is_zero()
        && zero.act(&gamma).is_zero()
        && p.geq(&zero).map(|v| v.geq).unwrap_or(false)
        && (!p.is_zero() || p == zero);
    if !zero_ok {
        fail(
            10,
            format!("P={p:?} C1={c1:?} γ={gamma}"),
            "zero is absorbing, invariant, and minimal".into(),
            "a zero law failed".into(),
        );
    }

    failures
}

fn small_quad<T: QuadInt>(rng: &mut ChaCha8Rng, range: i64) -> Quad<T> {
    let numer = rng.gen_range(-range..=range);
    let denom = *[1i64, 2, 3, 4].get(rng.gen_range(0..4)).unwrap();
    Quad::from_fraction(numer, denom)
}

fn jitter<T: QuadInt>(rng: &mut ChaCha8Rng) -> Quad<T> {
    let numer = rng.gen_range(-1i64..=1);
    Quad::from_fraction(numer, 5)
}

fn sample_region_common<T: QuadInt>(
    rng: &mut ChaCha8Rng,
    pattern: &Pattern<T>,
    dim: usize,
    depth: usize,
) -> Region<T> {
    let anchors = pattern.anchors();
    let pick_anchor = |rng: &mut ChaCha8Rng| -> Vector<T> {
        if anchors.is_empty() {
            Vector::zero(dim)
        } else {
            anchors[rng.gen_range(0..anchors.len())].clone()
        }
    };
    let choice = if depth == 0 { rng.gen_range(0..10) } else { rng.gen_range(0..8) };
    match choice {
        0 => Region::Empty,
        1 => Region::All,
        2 | 3 => {
            let center = if rng.gen_bool(0.5) {
                pick_anchor(rng)
            } else {
                Vector::new((0..dim).map(|_| small_quad(rng, 6)).collect())
            };
            let radius = if dim == 1 && rng.gen_bool(0.5) && !anchors.is_empty() {
                let a = pick_anchor(rng);
                (a.coord(0).clone() - center.coord(0).clone()).abs()
            } else {
                small_quad::<T>(rng, 4).abs() + Quad::from_fraction(1, 2)
            };
            Region::ball(center, radius)
        }
        4 | 5 => {
            let a = pick_anchor(rng);
            let b = pick_anchor(rng);
            let mut lo = Vec::with_capacity(dim);
            let mut hi = Vec::with_capacity(dim);
            for i in 0..dim {
                let (x, y) = (a.coord(i).clone(), b.coord(i).clone());
                let (mut l, mut h) = if x <= y { (x, y) } else { (y, x) };
                if rng.gen_bool(0.7) {
                    l = l - small_quad::<T>(rng, 2).abs();
                    h = h + small_quad::<T>(rng, 2).abs();
                }
                lo.push(l);
                hi.push(h);
            }
            Region::bbox(Vector::new(lo), Vector::new(hi))
        }
        6 => {
            let n = rng.gen_range(0..=3.min(anchors.len()));
            let mut pts: Vec<Vector<T>> = (0..n).map(|_| pick_anchor(rng)).collect();
            pts.push(Vector::new((0..dim).map(|_| small_quad(rng, 6)).collect()));
            Region::Points(pts)
        }
        7 => {
            let a = sample_region_common(rng, pattern, dim, depth + 1);
            let b = sample_region_common(rng, pattern, dim, depth + 1);
            a.intersect(b)
        }
        _ => {
            let a = sample_region_common(rng, pattern, dim, depth + 1);
            let b = sample_region_common(rng, pattern, dim, depth + 1);
            a.union(b)
        }
    }
}

fn grid_points<T: QuadInt>(rng: &mut ChaCha8Rng, dim: usize, max_count: usize) -> Vec<Vector<T>> {
    let count = rng.gen_range(0..=max_count);
    let mut cells: Vec<Vec<i64>> = Vec::new();
    while cells.len() < count {
        let cell: Vec<i64> = (0..dim).map(|_| rng.gen_range(-6..=6)).collect();
        if !cells.contains(&cell) {
            cells.push(cell);
        }
    }
    cells
        .into_iter()
        .map(|cell| {
            Vector::new(
                cell.into_iter()
                    .map(|k| Quad::from_int(k) + jitter::<T>(rng))
                    .collect(),
            )
        })
        .collect()
}

/// Locally finite or uniformly discrete point sets in `dim` dimensions.
pub struct PointSubject<T: QuadInt> {
    pub dim: usize,
    pub ud_radius: Option<Quad<T>>,
}

impl<T: QuadInt> PointSubject<T> {
    pub fn locally_finite(dim: usize) -> Self {
        PointSubject { dim, ud_radius: None }
    }

    pub fn uniformly_discrete(dim: usize) -> Self {
        PointSubject { dim, ud_radius: Some(Quad::from_fraction(1, 2)) }
    }
}

impl<T: QuadInt> AxiomSubject<T> for PointSubject<T> {
    fn space(&self) -> String {
        match &self.ud_radius {
            Some(r) => format!("pointset-ud[{r}]-dim{}", self.dim),
            None => format!("pointset-lf-dim{}", self.dim),
        }
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn sample_pattern(&self, rng: &mut ChaCha8Rng) -> Pattern<T> {
        let points = if self.ud_radius.is_some() {
            grid_points(rng, self.dim, 8)
        } else {
            let count = rng.gen_range(0..=8);
            (0..count)
                .map(|_| Vector::new((0..self.dim).map(|_| small_quad(rng, 12)).collect()))
                .collect()
        };
        Pattern::Points(
            PointSet::new(self.dim, self.ud_radius.clone(), points)
                .expect("sampler respects discreteness"),
        )
    }

    fn sample_region(&self, rng: &mut ChaCha8Rng, pattern: &Pattern<T>) -> Region<T> {
        sample_region_common(rng, pattern, self.dim, 0)
    }

    fn sample_shift(&self, rng: &mut ChaCha8Rng, _pattern: &Pattern<T>) -> Vector<T> {
        Vector::new((0..self.dim).map(|_| small_quad(rng, 8)).collect())
    }
}

/// Patches built from disjoint grid-cell boxes with optional labels.
pub struct PatchSubject<T: QuadInt> {
    pub dim: usize,
    _marker: std::marker::PhantomData<T>,
}

impl<T: QuadInt> PatchSubject<T> {
    pub fn new(dim: usize) -> Self {
        PatchSubject { dim, _marker: std::marker::PhantomData }
    }
}

impl<T: QuadInt> AxiomSubject<T> for PatchSubject<T> {
    fn space(&self) -> String {
        format!("patch-dim{}", self.dim)
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn sample_pattern(&self, rng: &mut ChaCha8Rng) -> Pattern<T> {
        let count = rng.gen_range(0..=6);
        let mut cells: Vec<Vec<i64>> = Vec::new();
        while cells.len() < count {
            let cell: Vec<i64> = (0..self.dim).map(|_| rng.gen_range(-5..=5)).collect();
            if !cells.contains(&cell) {
                cells.push(cell);
            }
        }
        let tiles = cells
            .into_iter()
            .map(|cell| {
                let half = Quad::from_fraction(1, 2);
                let lo: Vec<Quad<T>> =
                    cell.iter().map(|&k| Quad::from_int(k)).collect();
                let mut hi: Vec<Quad<T>> =
                    cell.iter().map(|&k| Quad::from_int(k + 1)).collect();
                match rng.gen_range(0..3) {
                    0 => {}
                    1 => hi[0] = lo[0].clone() + half,
                    _ => hi[self.dim - 1] = lo[self.dim - 1].clone() + half,
                }
                let label = match rng.gen_range(0..3) {
                    0 => None,
                    1 => Some("a".to_string()),
                    _ => Some("b".to_string()),
                };
                super::Tile::new(Vector::new(lo), Vector::new(hi), label)
            })
            .collect();
        Pattern::Patch(super::Patch::new(self.dim, tiles).expect("sampler keeps tiles disjoint"))
    }

    fn sample_region(&self, rng: &mut ChaCha8Rng, pattern: &Pattern<T>) -> Region<T> {
        sample_region_common(rng, pattern, self.dim, 0)
    }

    fn sample_shift(&self, rng: &mut ChaCha8Rng, _pattern: &Pattern<T>) -> Vector<T> {
        Vector::new((0..self.dim).map(|_| small_quad(rng, 8)).collect())
    }
}

/// Partial words over a three-letter alphabet.
pub struct SymbolicSubject<T: QuadInt> {
    _marker: std::marker::PhantomData<T>,
}

impl<T: QuadInt> SymbolicSubject<T> {
    pub fn new() -> Self {
        SymbolicSubject { _marker: std::marker::PhantomData }
    }
}

impl<T: QuadInt> Default for SymbolicSubject<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: QuadInt> AxiomSubject<T> for SymbolicSubject<T> {
    fn space(&self) -> String {
        "symbolic".into()
    }

    fn dim(&self) -> usize {
        1
    }

    fn sample_pattern(&self, rng: &mut ChaCha8Rng) -> Pattern<T> {
        let alphabet = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let count = rng.gen_range(0..=10);
        let mut letters = std::collections::BTreeMap::new();
        for _ in 0..count {
            let pos = rng.gen_range(-12i64..=12);
            let letter = alphabet[rng.gen_range(0..alphabet.len())].clone();
            letters.insert(pos, letter);
        }
        Pattern::Symbolic(super::Symbolic::new(alphabet, letters).expect("alphabet closed"))
    }

    fn sample_region(&self, rng: &mut ChaCha8Rng, pattern: &Pattern<T>) -> Region<T> {
        sample_region_common(rng, pattern, 1, 0)
    }

    fn sample_shift(&self, rng: &mut ChaCha8Rng, _pattern: &Pattern<T>) -> Vector<T> {
        Vector::one_d(Quad::from_int(rng.gen_range(-6i64..=6)))
    }
}

/// Weighted combs on a jittered grid support.
pub struct CombSubject<T: QuadInt> {
    pub dim: usize,
    _marker: std::marker::PhantomData<T>,
}

impl<T: QuadInt> CombSubject<T> {
    pub fn new(dim: usize) -> Self {
        CombSubject { dim, _marker: std::marker::PhantomData }
    }
}

impl<T: QuadInt> AxiomSubject<T> for CombSubject<T> {
    fn space(&self) -> String {
        format!("comb-dim{}", self.dim)
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn sample_pattern(&self, rng: &mut ChaCha8Rng) -> Pattern<T> {
        let points = grid_points::<T>(rng, self.dim, 7);
        let entries = points
            .into_iter()
            .map(|p| {
                let mut re = rng.gen_range(-3i64..=3);
                let im = rng.gen_range(-3i64..=3);
                if re == 0 && im == 0 {
                    re = 1;
                }
                let den = T::from(rng.gen_range(1i64..=3));
                let weight = super::Weight::new(
                    num_rational::Ratio::new(T::from(re), den.clone()),
                    num_rational::Ratio::new(T::from(im), den),
                );
                (p, weight)
            })
            .collect();
        let r = Quad::from_fraction(1, 2);
        Pattern::Comb(super::Comb::new(self.dim, r, entries).expect("sampler respects radius"))
    }

    fn sample_region(&self, rng: &mut ChaCha8Rng, pattern: &Pattern<T>) -> Region<T> {
        sample_region_common(rng, pattern, self.dim, 0)
    }

    fn sample_shift(&self, rng: &mut ChaCha8Rng, _pattern: &Pattern<T>) -> Vector<T> {
        Vector::new((0..self.dim).map(|_| small_quad(rng, 8)).collect())
    }
}

/// Two-component multisets on a jittered grid, sometimes sharing points.
pub struct MultiSubject<T: QuadInt> {
    pub dim: usize,
    pub arity: usize,
    _marker: std::marker::PhantomData<T>,
}

impl<T: QuadInt> MultiSubject<T> {
    pub fn new(dim: usize, arity: usize) -> Self {
        MultiSubject { dim, arity, _marker: std::marker::PhantomData }
    }
}

impl<T: QuadInt> AxiomSubject<T> for MultiSubject<T> {
    fn space(&self) -> String {
        format!("multi-dim{}-arity{}", self.dim, self.arity)
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn sample_pattern(&self, rng: &mut ChaCha8Rng) -> Pattern<T> {
        let points = grid_points::<T>(rng, self.dim, 7);
        let mut components = vec![Vec::new(); self.arity];
        for p in points {
            let mut placed = false;
            for comp in components.iter_mut() {
                if rng.gen_bool(0.4) {
                    comp.push(p.clone());
                    placed = true;
                }
            }
            if !placed {
                let i = rng.gen_range(0..self.arity);
                components[i].push(p);
            }
        }
        let r = Quad::from_fraction(1, 2);
        Pattern::Multi(
            super::Multi::new(self.dim, r, components).expect("sampler respects radius"),
        )
    }

    fn sample_region(&self, rng: &mut ChaCha8Rng, pattern: &Pattern<T>) -> Region<T> {
        sample_region_common(rng, pattern, self.dim, 0)
    }

    fn sample_shift(&self, rng: &mut ChaCha8Rng, _pattern: &Pattern<T>) -> Vector<T> {
        Vector::new((0..self.dim).map(|_| small_quad(rng, 8)).collect())
    }
}

/// A deliberately wrong cut that drops ball-boundary points. Used to show
/// the harness is sensitive, never as a real operation.
pub struct BrokenCutSubject<T: QuadInt> {
    inner: PointSubject<T>,
}

impl<T: QuadInt> BrokenCutSubject<T> {
    pub fn new(dim: usize) -> Self {
        BrokenCutSubject { inner: PointSubject::locally_finite(dim) }
    }
}

impl<T: QuadInt> AxiomSubject<T> for BrokenCutSubject<T> {
    fn space(&self) -> String {
        "broken-cut-fixture".into()
    }

    fn dim(&self) -> usize {
        self.inner.dim
    }

    fn sample_pattern(&self, rng: &mut ChaCha8Rng) -> Pattern<T> {
        self.inner.sample_pattern(rng)
    }

    fn sample_region(&self, rng: &mut ChaCha8Rng, pattern: &Pattern<T>) -> Region<T> {
        self.inner.sample_region(rng, pattern)
    }

    fn sample_shift(&self, rng: &mut ChaCha8Rng, pattern: &Pattern<T>) -> Vector<T> {
        self.inner.sample_shift(rng, pattern)
    }

    fn cut(&self, pattern: &Pattern<T>, region: &Region<T>) -> Pattern<T> {
        if let (Pattern::Points(ps), Region::Ball { center, radius }) = (pattern, region) {
            let rr = radius.square();
            let strict: Vec<_> = ps
                .points()
                .iter()
                .filter(|p| p.dist_sq(center) < rr)
                .cloned()
                .collect();
            return Pattern::Points(
                PointSet::new(ps.dim(), ps.ud_radius().cloned(), strict).unwrap(),
            );
        }
        pattern.cut(region)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn all_subjects_pass_a_quick_sweep() {
        let subjects: Vec<Box<dyn AxiomSubject<BigInt>>> = vec![
            Box::new(PointSubject::locally_finite(1)),
            Box::new(PointSubject::uniformly_discrete(2)),
            Box::new(PatchSubject::new(1)),
            Box::new(PatchSubject::new(2)),
            Box::new(SymbolicSubject::new()),
            Box::new(CombSubject::new(1)),
            Box::new(MultiSubject::new(2, 2)),
        ];
        for subject in &subjects {
            let report = axiom_report(subject.as_ref(), 60, 0xA11CE);
            assert!(
                report.all_pass(),
                "{} violated: {:?}",
                report.space,
                report
                    .laws
                    .iter()
                    .find(|l| !l.failures.is_empty())
                    .map(|l| (&l.law, &l.failures[0]))
            );
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let subject = PointSubject::<BigInt>::locally_finite(1);
        let a = axiom_report(&subject, 40, 7);
        let b = axiom_report(&subject, 40, 7);
        assert_eq!(a, b);
    }

    #[test]
    fn broken_cut_is_detected() {
        let subject = BrokenCutSubject::<BigInt>::new(1);
        let report = axiom_report(&subject, 200, 7);
        assert!(!report.all_pass());
    }
}
