use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use affine_onemax::AomFunction;

fn aom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aom"))
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> String {
    let file = path(dir, name);
    let mut full = vec!["gen", "--out", &file];
    full.extend_from_slice(args);
    let out = aom(&full);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    file
}

#[test]
fn gen_is_reproducible_and_valid() {
    let dir = tempfile::tempdir().unwrap();
    let a = gen(
        dir.path(),
        "a.txt",
        &["--n", "8", "--class", "general", "--seed", "1"],
    );
    let b = gen(
        dir.path(),
        "b.txt",
        &["--n", "8", "--class", "general", "--seed", "1"],
    );
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let f: AomFunction = fs::read_to_string(&a).unwrap().parse().unwrap();
    assert!(f.matrix().is_invertible());
    let c = gen(
        dir.path(),
        "c.txt",
        &["--n", "8", "--class", "general", "--seed", "2"],
    );
    assert_ne!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
}

#[test]
fn gen_reveals_optimum_only_on_request() {
    let dir = tempfile::tempdir().unwrap();
    let file = path(dir.path(), "f.txt");
    let quiet = aom(&["gen", "--n", "6", "--seed", "4", "--out", &file]);
    assert!(stderr(&quiet).is_empty());
    let loud = aom(&[
        "gen",
        "--n",
        "6",
        "--seed",
        "4",
        "--out",
        &file,
        "--reveal-optimum",
    ]);
    let f: AomFunction = fs::read_to_string(&file).unwrap().parse().unwrap();
    assert_eq!(stderr(&loud).trim(), format!("optimum {}", f.optimum()));
    let text = fs::read_to_string(&file).unwrap();
    assert!(!text.contains("optimum"));
}

#[test]
fn gen_rejects_out_of_range_length() {
    let out = aom(&[
        "gen", "--n", "9", "--class", "disjoint", "--t", "5", "--seed", "1",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("out of range"));
}

#[test]
fn eval_reads_instances() {
    let dir = tempfile::tempdir().unwrap();
    let file = gen(
        dir.path(),
        "f.txt",
        &["--n", "5", "--class", "onemax", "--seed", "1"],
    );
    let out = aom(&["eval", "--instance", &file, "--x", "10110"]);
    assert_eq!(stdout(&out).trim(), "3");
    assert_eq!(code(&aom(&["eval", "--instance", &file, "--x", "101"])), 2);
    assert_eq!(
        code(&aom(&[
            "eval",
            "--instance",
            &path(dir.path(), "missing"),
            "--x",
            "1"
        ])),
        1
    );
}

#[test]
fn f1_solver_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let n = 9;
    let file = gen(
        dir.path(),
        "f.txt",
        &[
            "--n",
            "9",
            "--class",
            "unconstrained",
            "--t",
            "1",
            "--seed",
            "3",
        ],
    );
    let out = aom(&["solve", "--instance", &file, "--solver", "f1"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(
        text.contains(&format!("evaluations {}\n", 2 * (n + 1))),
        "{text}"
    );
    assert!(text.contains(&format!("value {n}\n")));
}

#[test]
fn f1_solver_rejects_longer_sequences() {
    let dir = tempfile::tempdir().unwrap();
    let file = gen(
        dir.path(),
        "f.txt",
        &[
            "--n",
            "8",
            "--class",
            "unconstrained",
            "--t",
            "3",
            "--seed",
            "5",
        ],
    );
    let out = aom(&["solve", "--instance", &file, "--solver", "f1"]);
    assert_ne!(code(&out), 0);
    assert!(stderr(&out).contains("class violation"), "{}", stderr(&out));
}

#[test]
fn other_solvers_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let single = gen(
        dir.path(),
        "s.txt",
        &[
            "--n",
            "8",
            "--class",
            "unconstrained",
            "--t",
            "1",
            "--seed",
            "6",
        ],
    );
    // strip the offset so the instance is in the no-offset class
    let text = fs::read_to_string(&single).unwrap();
    let zeroed: Vec<String> = text
        .lines()
        .map(|l| {
            if l.starts_with("b ") {
                "b 00000000".to_string()
            } else {
                l.to_string()
            }
        })
        .collect();
    fs::write(&single, zeroed.join("\n") + "\n").unwrap();
    assert_eq!(
        code(&aom(&["solve", "--instance", &single, "--solver", "f1_0"])),
        0
    );
    let delta = gen(
        dir.path(),
        "d.txt",
        &[
            "--n",
            "12",
            "--class",
            "unique_source",
            "--t",
            "5",
            "--seed",
            "7",
        ],
    );
    assert_eq!(
        code(&aom(&[
            "solve",
            "--instance",
            &delta,
            "--solver",
            "ft_delta"
        ])),
        0
    );
    let two = gen(
        dir.path(),
        "e.txt",
        &[
            "--n",
            "5",
            "--class",
            "unconstrained",
            "--t",
            "2",
            "--seed",
            "8",
        ],
    );
    let out = aom(&["solve", "--instance", &two, "--solver", "ft_enum"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let capped = aom(&[
        "solve",
        "--instance",
        &two,
        "--solver",
        "ft_enum",
        "--cap",
        "100",
    ]);
    assert_eq!(code(&capped), 3);
}

#[test]
fn km_solver_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let file = gen(dir.path(), "f.txt", &["--n", "8", "--seed", "9"]);
    let exact = aom(&[
        "solve",
        "--instance",
        &file,
        "--solver",
        "km",
        "--preset",
        "exact",
        "--seed",
        "1",
    ]);
    assert_eq!(code(&exact), 0, "{}", stderr(&exact));
    assert!(stdout(&exact).contains("success true"));
    let sampled = aom(&["km-solve", "--instance", &file, "--seed", "2"]);
    assert_eq!(code(&sampled), 0, "{}", stderr(&sampled));
    let starved = aom(&[
        "km-solve",
        "--instance",
        &file,
        "--seed",
        "3",
        "--m1",
        "1",
        "--m2",
        "1",
        "--m3",
        "1",
        "--max-attempts",
        "1",
    ]);
    assert_eq!(code(&starved), 3);
}

#[test]
fn spectrum_modes_agree() {
    let dir = tempfile::tempdir().unwrap();
    let onemax = gen(
        dir.path(),
        "o.txt",
        &["--n", "7", "--class", "onemax", "--seed", "1"],
    );
    let out = aom(&["spectrum", "--instance", &onemax]);
    assert_eq!(stdout(&out).lines().count(), 8);
    let file = gen(dir.path(), "f.txt", &["--n", "10", "--seed", "10"]);
    let analytic = aom(&["spectrum", "--instance", &file, "--mode", "analytic"]);
    let brute = aom(&["spectrum", "--instance", &file, "--mode", "bruteforce"]);
    assert_eq!(code(&brute), 0);
    assert_eq!(stdout(&analytic), stdout(&brute));
    let big = gen(dir.path(), "big.txt", &["--n", "30", "--seed", "11"]);
    let refused = aom(&["spectrum", "--instance", &big, "--mode", "bruteforce"]);
    assert_eq!(code(&refused), 2);
    assert!(stderr(&refused).contains("too large"));
}

const SPEC: &str = r#"
kind = "fixed_budget"
n_values = [20]
classes = ["general"]
algorithms = ["rs", "ea1+1", "pbil"]
runs = 5
budget = 10000
seed = 12
record_trajectory = true
"#;

#[test]
fn bench_and_ecdf() {
    let dir = tempfile::tempdir().unwrap();
    let spec = path(dir.path(), "spec.toml");
    fs::write(&spec, SPEC).unwrap();
    let out_a = path(dir.path(), "a");
    let out_b = path(dir.path(), "b");
    assert_eq!(code(&aom(&["bench", "--spec", &spec, "--out", &out_a])), 0);
    assert_eq!(code(&aom(&["bench", "--spec", &spec, "--out", &out_b])), 0);
    let raw = fs::read_to_string(Path::new(&out_a).join("raw.csv")).unwrap();
    assert_eq!(raw.lines().count(), 16);
    for name in [
        "raw.csv",
        "summary.csv",
        "meta.toml",
        "plot.gp",
        "trajectories.csv",
    ] {
        let a = fs::read(Path::new(&out_a).join(name)).unwrap();
        assert_eq!(a, fs::read(Path::new(&out_b).join(name)).unwrap(), "{name}");
    }
    let trajectories = path(Path::new(&out_a), "trajectories.csv");
    let curves = aom(&[
        "ecdf",
        "--trajectories",
        &trajectories,
        "--targets",
        "12,14,16",
    ]);
    assert_eq!(code(&curves), 0, "{}", stderr(&curves));
    let text = stdout(&curves);
    assert!(text.starts_with("algorithm,evaluations,fraction\n"));
    assert!(text.contains("pbil,"));
    let bad = path(dir.path(), "bad.toml");
    fs::write(&bad, "kind = \"sideways\"").unwrap();
    assert_eq!(code(&aom(&["bench", "--spec", &bad, "--out", &out_a])), 1);
}
