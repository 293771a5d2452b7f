//! Behavior of each command: artifacts, witnesses, and exit codes.

mod common;

use common::{patternspace, workspace, write};
use patternspace::{
    eps_net, flc_check, in_entourage, integers, orbit_sample, pattern_from_json, pattern_to_json,
    region_from_json, region_to_json, scalar_from_json, to_stable_string, vector_from_json,
    EntourageSpec, EntourageVerdict, Int, Quad, Region, Scalar, Vector, WindowSource,
};
use serde_json::Value;

fn lit(s: &str) -> Scalar {
    s.parse().unwrap()
}

const INTEGERS: &str = r#"{"generator":{"preset":"integers"}}"#;
const SHIFTED: &str = r#"{"generator":{"preset":"integers"},"shift":["1/10"]}"#;

#[test]
fn gen_emits_the_windowed_pattern() {
    let dir = workspace("gen");
    let run = patternspace(&dir, &["gen", "--preset", "integers", "--window", "ball:0:5"]);
    assert_eq!(run.status, 0);
    let oracle = WindowSource::generated(integers::<Int>())
        .window(&Region::ball0(1, lit("5")))
        .unwrap();
    assert_eq!(run.stdout_text(), to_stable_string(&pattern_to_json(&oracle)));
    assert_eq!(oracle.anchors().len(), 11);
}

#[test]
fn gen_applies_shifts_and_rejects_unbounded_windows() {
    let dir = workspace("gen-shift");
    let run = patternspace(
        &dir,
        &["gen", "--preset", "integers", "--window", "ball:0:2", "--shift", "1/10"],
    );
    assert_eq!(run.status, 0);
    let pattern = pattern_from_json::<Int>(&run.stdout_json()).unwrap();
    assert!(pattern.anchors().contains(&Vector::one_d(lit("11/10"))));

    let run = patternspace(&dir, &["gen", "--preset", "integers", "--window", "all"]);
    assert_eq!(run.status, 2);
}

#[test]
fn cut_round_trips_through_the_schema() {
    let dir = workspace("cut");
    let wide = patternspace(&dir, &["gen", "--preset", "fibonacci", "--window", "ball:0:8"]);
    assert_eq!(wide.status, 0);
    write(&dir, "wide.json", wide.stdout_text());

    let narrow = patternspace(&dir, &["cut", "wide.json", "--region", "ball:0:3"]);
    assert_eq!(narrow.status, 0);
    let direct = patternspace(&dir, &["gen", "--preset", "fibonacci", "--window", "ball:0:3"]);
    assert_eq!(narrow.stdout, direct.stdout);

    let reparsed = pattern_from_json::<Int>(&narrow.stdout_json()).unwrap();
    assert_eq!(pattern_to_json(&reparsed), narrow.stdout_json());
}

#[test]
fn cut_accepts_region_files() {
    let dir = workspace("cut-region-file");
    write(&dir, "p.json", INTEGERS);
    write(
        &dir,
        "region.json",
        &to_stable_string(&region_to_json(&Region::ball0(1, lit("2")))),
    );
    let run = patternspace(&dir, &["cut", "p.json", "--region", "@region.json"]);
    assert_eq!(run.status, 0);
    let pattern = pattern_from_json::<Int>(&run.stdout_json()).unwrap();
    assert_eq!(pattern.anchors().len(), 5);
}

#[test]
fn dist_reports_the_exact_shift_distance() {
    let dir = workspace("dist");
    write(&dir, "a.json", INTEGERS);
    write(&dir, "b.json", SHIFTED);
    let run = patternspace(&dir, &["dist", "a.json", "b.json", "--rmax", "20"]);
    assert_eq!(run.status, 0);
    let value = run.stdout_json();
    assert_eq!(value["certainty"], "exact");
    assert_eq!(value["d"]["sqrt_of"], "1/100");
}

#[test]
fn entourage_match_carries_a_reverifiable_witness() {
    let dir = workspace("entourage-match");
    write(&dir, "a.json", INTEGERS);
    write(&dir, "b.json", SHIFTED);
    let run =
        patternspace(&dir, &["entourage", "a.json", "b.json", "--K", "ball:0:3", "--v", "1/4"]);
    assert_eq!(run.status, 0);
    let value = run.stdout_json();
    assert_eq!(value["verdict"], "match");

    let gamma = vector_from_json::<Int>(&value["gamma"]).unwrap();
    let spec = EntourageSpec::new(Region::ball0(1, lit("3")), lit("1/4")).unwrap();
    let a = WindowSource::<Int>::generated(integers());
    let b = a.act(&Vector::one_d(lit("1/10")));
    match in_entourage(&a, &b, &spec).unwrap() {
        EntourageVerdict::Match(witness) => assert_eq!(witness.gamma, gamma),
        EntourageVerdict::NoMatch => panic!("the shifted pair matches at 1/4"),
    }
}

#[test]
fn entourage_no_match_exits_three_with_the_spec_on_stderr() {
    let dir = workspace("entourage-nomatch");
    write(&dir, "a.json", INTEGERS);
    write(&dir, "b.json", SHIFTED);
    let run =
        patternspace(&dir, &["entourage", "a.json", "b.json", "--K", "ball:0:3", "--v", "1/20"]);
    assert_eq!(run.status, 3);
    assert!(run.stdout.is_empty());
    let witness = run.stderr_json();
    assert_eq!(witness["verdict"], "no-match");

    let spec = EntourageSpec::new(
        region_from_json::<Int>(&witness["window"]).unwrap(),
        scalar_from_json::<Int>(&witness["shift_bound"]).unwrap(),
    )
    .unwrap();
    let a = WindowSource::<Int>::generated(integers());
    let b = a.act(&Vector::one_d(lit("1/10")));
    assert_eq!(in_entourage(&a, &b, &spec).unwrap(), EntourageVerdict::NoMatch);
}

#[test]
fn flc_matches_the_library_census() {
    let dir = workspace("flc");
    write(&dir, "p.json", INTEGERS);
    let run =
        patternspace(&dir, &["flc", "p.json", "--radius", "3/2", "--windows", "2,4,6,8,10"]);
    assert_eq!(run.status, 0);
    let value = run.stdout_json();

    let source = WindowSource::<Int>::generated(integers());
    let windows: Vec<Scalar> = ["2", "4", "6", "8", "10"].iter().map(|s| lit(s)).collect();
    let report = flc_check(&source, &lit("3/2"), &windows).unwrap();
    assert_eq!(value["stabilized"], Value::from(report.stabilized));
    assert_eq!(value["certified"], Value::from(report.certified));
    let counts: Vec<usize> =
        value["class_counts"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap() as usize).collect();
    assert_eq!(counts, report.class_counts);
    assert_eq!(value["classes"].as_array().unwrap().len(), report.classes.len());
}

#[test]
fn hull_net_matches_the_library_extraction() {
    let dir = workspace("hull-net");
    write(&dir, "p.json", INTEGERS);
    let run = patternspace(
        &dir,
        &["hull-net", "p.json", "--grid", "8:1/8", "--eps", "1/4", "--rmax", "4"],
    );
    assert_eq!(run.status, 0);
    let value = run.stdout_json();

    let source = WindowSource::<Int>::generated(integers());
    let shifts: Vec<Vector<Int>> = (0..8)
        .map(|k| Vector::one_d(&lit("1/8") * &Quad::from_int(k)))
        .collect();
    let sample = orbit_sample(&source, &shifts, &lit("4")).unwrap();
    let net = eps_net(&sample, &lit("1/4")).unwrap();
    let got_net: Vec<usize> =
        value["net"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap() as usize).collect();
    let got_assignment: Vec<usize> = value["assignment"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap() as usize)
        .collect();
    assert_eq!(got_net, net.net);
    assert_eq!(got_assignment, net.assignment);
    assert_eq!(value["shifts"].as_array().unwrap().len(), 8);
}

#[test]
fn cauchy_limit_glues_and_reports_refusals() {
    let dir = workspace("cauchy");
    let good = r#"{"patterns":[
        {"generator":{"preset":"integers"}},
        {"generator":{"preset":"integers"},"shift":["1/8"]},
        {"generator":{"preset":"integers"},"shift":["1/8"]}
    ]}"#;
    write(&dir, "run.json", good);
    let run = patternspace(&dir, &["cauchy-limit", "run.json"]);
    assert_eq!(run.status, 0);
    let value = run.stdout_json();
    assert_eq!(value["witnesses"].as_array().unwrap().len(), 2);
    assert!(pattern_from_json::<Int>(&value["limit"]).is_ok());

    let bad = r#"{"patterns":[
        {"generator":{"preset":"integers"}},
        {"generator":{"preset":"integers"},"shift":["1/2"]}
    ]}"#;
    write(&dir, "bad.json", bad);
    let run = patternspace(&dir, &["cauchy-limit", "bad.json"]);
    assert_eq!(run.status, 3);
    let witness = run.stderr_json();
    assert_eq!(witness["verdict"], "not-cauchy");
    assert_eq!(witness["step"], 1);
}

#[test]
fn axioms_suite_passes_for_every_space_name() {
    let dir = workspace("axioms");
    for space in ["pointset", "pointset-ud", "patch", "symbolic", "comb", "multi"] {
        let run = patternspace(
            &dir,
            &["axioms", "--space", space, "--samples", "20", "--seed", "7"],
        );
        assert_eq!(run.status, 0, "space {space}");
        let value = run.stdout_json();
        assert_eq!(value["samples"], 20);
        assert_eq!(value["laws"].as_array().unwrap().len(), 11);
        for law in value["laws"].as_array().unwrap() {
            assert!(law["failures"].as_array().unwrap().is_empty());
        }
    }
    let run = patternspace(&dir, &["axioms", "--space", "nosuch", "--samples", "5", "--seed", "1"]);
    assert_eq!(run.status, 2);
}

#[test]
fn render_plots_patterns_and_nets() {
    let dir = workspace("render");
    let gen = patternspace(&dir, &["gen", "--preset", "fibonacci", "--window", "ball:0:8"]);
    write(&dir, "fib.json", gen.stdout_text());
    let plot = patternspace(&dir, &["render", "fib.json", "--svg"]);
    assert_eq!(plot.status, 0);
    let svg = plot.stdout_text();
    assert!(svg.starts_with("<svg"));
    assert!(svg.ends_with("</svg>\n"));

    write(&dir, "p.json", INTEGERS);
    let net = patternspace(
        &dir,
        &["hull-net", "p.json", "--grid", "8:1/8", "--eps", "1/4", "--rmax", "4"],
    );
    write(&dir, "net.json", net.stdout_text());
    let rings = net.stdout_json()["net"].as_array().unwrap().len();
    let plot = patternspace(&dir, &["render", "net.json", "--svg"]);
    assert_eq!(plot.status, 0);
    assert_eq!(plot.stdout_text().matches("stroke=\"crimson\"").count(), rings);

    let generated = patternspace(&dir, &["render", "p.json", "--svg"]);
    assert_eq!(generated.status, 2);
    let framed =
        patternspace(&dir, &["render", "p.json", "--svg", "--viewport", "ball:0:4"]);
    assert_eq!(framed.status, 0);
}

#[test]
fn out_files_are_written_atomically_and_match_stdout() {
    let dir = workspace("out");
    let direct = patternspace(&dir, &["gen", "--preset", "integers", "--window", "ball:0:4"]);
    let run = patternspace(
        &dir,
        &["gen", "--preset", "integers", "--window", "ball:0:4", "--out", "p.json"],
    );
    assert_eq!(run.status, 0);
    assert!(run.stdout.is_empty());
    assert_eq!(std::fs::read(dir.join("p.json")).unwrap(), direct.stdout);
    assert!(!dir.join("p.json.tmp").exists());
}

#[test]
fn validation_failures_exit_two() {
    let dir = workspace("invalid");
    write(&dir, "a.json", INTEGERS);
    let cases: &[&[&str]] = &[
        &["cut", "missing.json", "--region", "ball:0:1"],
        &["dist", "a.json", "a.json", "--rmax", "1.5"],
        &["gen", "--preset", "nosuch", "--window", "ball:0:1"],
        &["gen", "--preset", "integers", "--window", "disk:0:1"],
        &["gen", "--preset", "integers", "--window", "box:0:1,2"],
        &["hull-net", "a.json", "--grid", "0:1", "--eps", "1/4", "--rmax", "4"],
        &["flc", "a.json", "--radius", "-1", "--windows", "2,4"],
    ];
    for args in cases {
        let run = patternspace(&dir, args);
        assert_eq!(run.status, 2, "args {args:?}");
        assert!(run.stdout.is_empty(), "args {args:?}");
    }
    let run = patternspace(&dir, &["dist", "a.json", "a.json"]);
    assert_eq!(run.status, 2, "missing --rmax is a usage error");
}
