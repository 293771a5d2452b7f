//! Execution of the commands against the library.
//!
//! Each command loads its inputs, computes one artifact, and returns it for
//! the caller to write. Negative mathematical verdicts (no matching shift,
//! no Cauchy witness, a violated law) become [`Failure::Math`] values whose
//! JSON carries the witness; everything else that goes wrong is a
//! validation failure.

use std::path::{Path, PathBuf};

use patternspace::json::object;
use patternspace::pattern::harness::{
    axiom_report, CombSubject, MultiSubject, PatchSubject, PointSubject, SpaceReport,
    SymbolicSubject,
};
use patternspace::{
    eps_net, flc_check, in_entourage, local_matching_distance, orbit_sample, pattern_to_json,
    region_to_json, render_net_svg, render_pattern_svg, scalar_from_json, scalar_to_json,
    sqrt_to_json, vector_from_json, vector_to_json, CauchyOutcome, CauchySchedule, Certainty,
    EntourageSpec, EntourageVerdict, EpsNet, Int, Pattern, Point, Quad, Region, Scalar, Vector,
    WindowSource,
};
use serde_json::Value;

use crate::{literal, load_source, read_json, source_from_value, Artifact, Command, Failure};

impl Command {
    /// The output path of this invocation, if one was given.
    pub fn out_path(&self) -> Option<PathBuf> {
        match self {
            Command::Gen { out, .. }
            | Command::Cut { out, .. }
            | Command::Dist { out, .. }
            | Command::Entourage { out, .. }
            | Command::Flc { out, .. }
            | Command::HullNet { out, .. }
            | Command::CauchyLimit { out, .. }
            | Command::Axioms { out, .. }
            | Command::Render { out, .. } => out.clone(),
        }
    }

    /// Runs the command and produces its artifact.
    pub fn execute(self) -> Result<Artifact, Failure> {
        match self {
            Command::Gen { preset, window, shift, .. } => gen(&preset, &window, shift.as_deref()),
            Command::Cut { input, region, .. } => cut(&input, &region),
            Command::Dist { a, b, rmax, .. } => dist(&a, &b, &rmax),
            Command::Entourage { a, b, window, shift_bound, .. } => {
                entourage(&a, &b, &window, &shift_bound)
            }
            Command::Flc { input, radius, windows, .. } => flc(&input, &radius, &windows),
            Command::HullNet { input, grid, eps, rmax, .. } => {
                hull_net(&input, &grid, &eps, &rmax)
            }
            Command::CauchyLimit { runspec, .. } => cauchy_limit(&runspec),
            Command::Axioms { space, samples, seed, .. } => axioms(&space, samples, seed),
            Command::Render { input, viewport, .. } => render(&input, viewport.as_deref()),
        }
    }
}

fn gen(preset: &str, window: &str, shift: Option<&str>) -> Result<Artifact, Failure> {
    let mut source = WindowSource::generated(literal::preset(preset)?);
    if let Some(text) = shift {
        source = source.act(&literal::vector(text)?);
    }
    let pattern = source.window(&literal::region(window)?)?;
    Ok(Artifact::Json(pattern_to_json(&pattern)))
}

fn cut(input: &Path, region: &str) -> Result<Artifact, Failure> {
    let source = load_source(input)?;
    let region = literal::region(region)?;
    let pattern = match source.as_finite() {
        Some(pattern) => pattern.cut(&region),
        None => source.window(&region)?,
    };
    Ok(Artifact::Json(pattern_to_json(&pattern)))
}

fn dist(a: &Path, b: &Path, rmax: &str) -> Result<Artifact, Failure> {
    let p = load_source(a)?;
    let q = load_source(b)?;
    let distance = local_matching_distance(&p, &q, &literal::scalar(rmax)?)?;
    let certainty = match &distance.certainty {
        Certainty::Exact => Value::from("exact"),
        Certainty::ToRadius(radius) => object(vec![("to_radius", scalar_to_json(radius))]),
    };
    Ok(Artifact::Json(object(vec![
        ("certainty", certainty),
        ("d", sqrt_to_json(&distance.value)),
    ])))
}

fn entourage(a: &Path, b: &Path, window: &str, shift_bound: &str) -> Result<Artifact, Failure> {
    let p = load_source(a)?;
    let q = load_source(b)?;
    let spec = EntourageSpec::new(literal::region(window)?, literal::scalar(shift_bound)?)?;
    match in_entourage(&p, &q, &spec)? {
        EntourageVerdict::Match(witness) => Ok(Artifact::Json(object(vec![
            ("certified_region", region_to_json(&witness.certified_region)),
            ("gamma", vector_to_json(&witness.gamma)),
            ("verdict", Value::from("match")),
        ]))),
        EntourageVerdict::NoMatch => Err(Failure::Math(object(vec![
            ("shift_bound", scalar_to_json(spec.shift_bound())),
            ("verdict", Value::from("no-match")),
            ("window", region_to_json(spec.window())),
        ]))),
    }
}

fn flc(input: &Path, radius: &str, windows: &str) -> Result<Artifact, Failure> {
    let source = load_source(input)?;
    let report =
        flc_check(&source, &literal::scalar(radius)?, &literal::scalar_list(windows)?)?;
    let classes: Vec<Value> = report
        .classes
        .iter()
        .map(|class| {
            object(vec![
                ("canonical", pattern_to_json(&class.canonical)),
                ("multiplicity", Value::from(class.multiplicity)),
            ])
        })
        .collect();
    Ok(Artifact::Json(object(vec![
        ("certified", Value::from(report.certified)),
        ("class_counts", Value::Array(report.class_counts.iter().map(|&n| Value::from(n)).collect())),
        ("classes", Value::Array(classes)),
        ("radius", scalar_to_json(&report.radius)),
        ("stabilized", Value::from(report.stabilized)),
        ("windows", Value::Array(report.windows.iter().map(scalar_to_json).collect())),
    ])))
}

fn hull_net(input: &Path, grid: &str, eps: &str, rmax: &str) -> Result<Artifact, Failure> {
    let source = load_source(input)?;
    let (count, step) = literal::grid(grid)?;
    let shifts: Vec<Point> = (0..count).map(|k| scale(&step, k as i64)).collect();
    let sample = orbit_sample(&source, &shifts, &literal::scalar(rmax)?)?;
    let net = eps_net(&sample, &literal::scalar(eps)?)?;
    Ok(Artifact::Json(object(vec![
        ("assignment", Value::Array(net.assignment.iter().map(|&i| Value::from(i)).collect())),
        ("eps", scalar_to_json(&net.eps)),
        ("net", Value::Array(net.net.iter().map(|&i| Value::from(i)).collect())),
        ("r_max", scalar_to_json(&sample.r_max)),
        ("shifts", Value::Array(shifts.iter().map(vector_to_json).collect())),
    ])))
}

fn scale(step: &Point, k: i64) -> Point {
    let factor: Scalar = Quad::from_int(k);
    Vector::new(step.coords().iter().map(|c| c * &factor).collect())
}

fn cauchy_limit(runspec: &Path) -> Result<Artifact, Failure> {
    let value = read_json(runspec)?;
    let list = value.get("patterns").and_then(Value::as_array).ok_or_else(|| {
        Failure::Invalid(format!(
            "{}: a run file needs a \"patterns\" array of sources",
            runspec.display()
        ))
    })?;
    let sources: Vec<WindowSource<Int>> =
        list.iter().map(source_from_value).collect::<Result<_, _>>()?;
    match patternspace::cauchy_limit(&sources)? {
        CauchyOutcome::Run(run) => Ok(Artifact::Json(object(vec![
            ("checked_windows", Value::from(run.checked_windows)),
            ("limit", pattern_to_json(&run.limit)),
            (
                "partial_shifts",
                Value::Array(run.partial_shifts.iter().map(vector_to_json).collect()),
            ),
            ("witnesses", Value::Array(run.witnesses.iter().map(vector_to_json).collect())),
        ]))),
        CauchyOutcome::NotCauchyAtStep(step) => {
            let schedule = CauchySchedule::new(sources[0].dim(), sources.len())?;
            let spec: EntourageSpec<Int> = schedule.spec(step);
            Err(Failure::Math(object(vec![
                ("shift_bound", scalar_to_json(spec.shift_bound())),
                ("step", Value::from(step)),
                ("verdict", Value::from("not-cauchy")),
                ("window", region_to_json(spec.window())),
            ])))
        }
    }
}

fn axioms(space: &str, samples: usize, seed: u64) -> Result<Artifact, Failure> {
    let report = match space {
        "pointset" => axiom_report(&PointSubject::<Int>::locally_finite(1), samples, seed),
        "pointset-ud" => axiom_report(&PointSubject::<Int>::uniformly_discrete(1), samples, seed),
        "patch" => axiom_report(&PatchSubject::<Int>::new(1), samples, seed),
        "symbolic" => axiom_report(&SymbolicSubject::<Int>::new(), samples, seed),
        "comb" => axiom_report(&CombSubject::<Int>::new(1), samples, seed),
        "multi" => axiom_report(&MultiSubject::<Int>::new(1, 2), samples, seed),
        other => {
            return Err(Failure::Invalid(format!(
                "unknown space {other:?}; expected pointset, pointset-ud, patch, symbolic, \
                 comb, or multi"
            )))
        }
    };
    let value = report_to_json(&report);
    if report.all_pass() {
        Ok(Artifact::Json(value))
    } else {
        Err(Failure::Math(object(vec![
            ("report", value),
            ("verdict", Value::from("axiom-violations")),
            ("violations", Value::from(report.violation_count())),
        ])))
    }
}

fn report_to_json(report: &SpaceReport) -> Value {
    let laws: Vec<Value> = report
        .laws
        .iter()
        .map(|law| {
            let failures: Vec<Value> = law
                .failures
                .iter()
                .map(|case| {
                    object(vec![
                        ("expected", Value::from(case.expected.clone())),
                        ("got", Value::from(case.got.clone())),
                        ("index", Value::from(case.index)),
                        ("inputs", Value::from(case.inputs.clone())),
                    ])
                })
                .collect();
            object(vec![
                ("failures", Value::Array(failures)),
                ("law", Value::from(law.law.clone())),
                ("samples", Value::from(law.samples)),
            ])
        })
        .collect();
    object(vec![
        ("laws", Value::Array(laws)),
        ("samples", Value::from(report.samples)),
        ("seed", Value::from(report.seed)),
        ("space", Value::from(report.space.clone())),
    ])
}

fn render(input: &Path, viewport: Option<&str>) -> Result<Artifact, Failure> {
    let value = read_json(input)?;
    if value.get("net").is_some() && value.get("shifts").is_some() {
        return render_net(&value);
    }
    let source = source_from_value(&value)?;
    let viewport = match viewport {
        Some(text) => literal::region(text)?,
        None => match source.as_finite() {
            Some(pattern) => default_viewport(pattern)?,
            None => {
                return Err(Failure::Invalid(
                    "a generated source needs an explicit --viewport".into(),
                ))
            }
        },
    };
    let pattern = match source.as_finite() {
        Some(pattern) => pattern.clone(),
        None => source.window(&viewport)?,
    };
    Ok(Artifact::Svg(render_pattern_svg(&pattern, &viewport)?))
}

fn render_net(value: &Value) -> Result<Artifact, Failure> {
    let shifts: Vec<Point> = value
        .get("shifts")
        .and_then(Value::as_array)
        .expect("checked by the caller")
        .iter()
        .map(|v| Ok(vector_from_json(v)?))
        .collect::<Result<_, Failure>>()?;
    let net = index_list(value, "net", shifts.len())?;
    let assignment = index_list(value, "assignment", shifts.len())?;
    if assignment.len() != shifts.len() {
        return Err(Failure::Invalid(format!(
            "a net plot needs one assignment per shift: {} shifts, {} assignments",
            shifts.len(),
            assignment.len()
        )));
    }
    let eps: Scalar = scalar_from_json(value.get("eps").ok_or_else(|| {
        Failure::Invalid("a net plot input needs an \"eps\" scalar".into())
    })?)?;
    let net = EpsNet { eps, net, assignment };
    Ok(Artifact::Svg(render_net_svg(&shifts, &net)?))
}

fn index_list(value: &Value, key: &str, len: usize) -> Result<Vec<usize>, Failure> {
    let entries = value
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| Failure::Invalid(format!("a net plot input needs a {key:?} array")))?;
    entries
        .iter()
        .map(|v| match v.as_u64() {
            Some(i) if (i as usize) < len => Ok(i as usize),
            _ => Err(Failure::Invalid(format!(
                "{key:?} entries must be shift indices below {len}"
            ))),
        })
        .collect()
}

fn default_viewport(pattern: &Pattern<Int>) -> Result<Region<Int>, Failure> {
    let anchors = pattern.anchors();
    let Some(first) = anchors.first() else {
        return Err(Failure::Invalid("an empty pattern needs an explicit --viewport".into()));
    };
    let mut lo = first.coords().to_vec();
    let mut hi = lo.clone();
    for anchor in &anchors[1..] {
        for (c, x) in anchor.coords().iter().enumerate() {
            if *x < lo[c] {
                lo[c] = x.clone();
            }
            if *x > hi[c] {
                hi[c] = x.clone();
            }
        }
    }
    let margin: Scalar = Quad::from_int(2);
    let lo = Vector::new(lo.into_iter().map(|x| &x - &margin).collect());
    let hi = Vector::new(hi.into_iter().map(|x| &x + &margin).collect());
    Ok(Region::bbox(lo, hi))
}
