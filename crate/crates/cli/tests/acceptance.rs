//! End-to-end determinism check for the command line, printed in the same
//! one-line style as the library's acceptance suite.

mod common;

use common::{patternspace, workspace, write, Run};

const INTEGERS: &str = r#"{"generator":{"preset":"integers"}}"#;
const SHIFTED: &str = r#"{"generator":{"preset":"integers"},"shift":["1/10"]}"#;

fn rerun_identical(dir: &std::path::Path, args: &[&str]) -> Run {
    let first = patternspace(dir, args);
    let second = patternspace(dir, args);
    assert_eq!(first.status, second.status, "exit codes agree for {args:?}");
    assert_eq!(first.stdout, second.stdout, "stdout bytes agree for {args:?}");
    assert_eq!(first.stderr, second.stderr, "stderr bytes agree for {args:?}");
    assert_eq!(first.status, 0, "the determinism configs all succeed: {args:?}");
    first
}

#[test]
fn criterion_10_every_command_reruns_byte_identical() {
    let dir = workspace("criterion-10");
    write(&dir, "a.json", INTEGERS);
    write(&dir, "b.json", SHIFTED);
    let spec = r#"{"patterns":[
        {"generator":{"preset":"integers"}},
        {"generator":{"preset":"integers"},"shift":["1/8"]},
        {"generator":{"preset":"integers"},"shift":["1/8"]}
    ]}"#;
    write(&dir, "run.json", spec);

    let gen = rerun_identical(&dir, &["gen", "--preset", "fibonacci", "--window", "ball:0:8"]);
    write(&dir, "fib.json", gen.stdout_text());
    let net = rerun_identical(
        &dir,
        &["hull-net", "a.json", "--grid", "16:1/16", "--eps", "1/4", "--rmax", "4"],
    );
    write(&dir, "net.json", net.stdout_text());

    let configs: &[&[&str]] = &[
        &["cut", "fib.json", "--region", "box:-3:3"],
        &["dist", "a.json", "b.json", "--rmax", "20"],
        &["entourage", "b.json", "a.json", "--K", "ball:0:3", "--v", "1/4"],
        &["flc", "fib.json", "--radius", "3/2", "--windows", "2,4,6,8"],
        &["cauchy-limit", "run.json"],
        &["axioms", "--space", "patch", "--samples", "60", "--seed", "42"],
        &["render", "fib.json", "--svg", "--viewport", "ball:0:8"],
        &["render", "net.json", "--svg"],
    ];
    for args in configs {
        rerun_identical(&dir, args);
    }

    let streamed = rerun_identical(&dir, &["dist", "a.json", "b.json", "--rmax", "20"]);
    let mut with_out = vec!["dist", "a.json", "b.json", "--rmax", "20", "--out", "d.json"];
    rerun_identical(&dir, &with_out);
    with_out.pop();
    assert_eq!(
        std::fs::read(dir.join("d.json")).unwrap(),
        streamed.stdout,
        "--out files carry the stdout bytes"
    );

    println!(
        "criterion 10: PASS - 10 command configs rerun byte-identical on stdout, stderr, and --out files"
    );
}
