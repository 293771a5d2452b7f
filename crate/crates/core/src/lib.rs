//! Exact pattern spaces over quadratic fields.

pub mod error;
pub mod generators;
pub mod geom;
pub mod hull;
pub mod json;
pub mod pattern;
pub mod region;
pub mod scalar;
pub mod svg;
pub mod topology;

pub use error::{Error, Result};
pub use generators::{
    fibonacci_point_set, fibonacci_tiling, fibonacci_word, integers, periodic_word,
    shifted_rows_default, square_lattice, Generator, SubstSystem, UdChain, WindowSource,
    WordSystem,
};
pub use geom::{Translation, Vector};
pub use hull::{
    diagonal_subsequence, eps_net, flc_check, orbit_sample, symbolic_complexity, ClusterClass,
    DiagonalOutcome, DiagonalPick, EpsNet, FlcReport, HullSample, LevelWitness,
};
pub use json::{
    pattern_from_json, pattern_to_json, region_from_json, region_to_json, scalar_from_json,
    scalar_to_json, source_from_json, sqrt_from_json, sqrt_to_json, to_stable_string,
    vector_from_json, vector_to_json, GENERATOR_PRESETS,
};
pub use pattern::{
    Comb, Multi, NoSup, OrderVerdict, Patch, Pattern, PointSet, SpaceKind, SupResult,
    SupportAtom, Symbolic, Tile, Weight,
};
pub use region::{Bounds, IntervalSet, Region};
pub use scalar::{Quad, QuadInt, SqrtVal};
pub use svg::{render_net_svg, render_pattern_svg};
pub use topology::{
    cauchy_limit, entourage_axiom_suite, hausdorff_check, in_entourage, local_matching_distance,
    match_radius, one_sided_distance, CauchyOutcome, CauchyRun, CauchySchedule, Certainty,
    DistanceValue, EntourageSpec, EntourageVerdict, HausdorffVerdict, MatchRadius, MatchWitness,
    ENTOURAGE_LAWS,
};

/// Default backing integer for exact coefficients.
pub type Int = num_bigint::BigInt;
/// Default exact scalar `a + b·√D` with big-integer coefficients.
pub type Scalar = Quad<Int>;
/// Default point / translation type.
pub type Point = Vector<Int>;
