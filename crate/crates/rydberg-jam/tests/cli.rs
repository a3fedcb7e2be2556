//! End-to-end runs of the `rydberg-jam` binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rydberg-jam"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("UTF-8 output")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

/// Rows after the header, split on commas.
fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap_or_else(|_| panic!("not a number: {s}"))
}

#[test]
fn enumerate_small_lengths() {
    assert_eq!(
        stdout(&["enumerate", "--b", "2", "--length", "16"]),
        "b,N,L,count\n2,4,16,45\n2,5,16,50\n2,6,16,1\n2,all,16,96\n"
    );
    assert_eq!(
        stdout(&["enumerate", "--b", "1", "--length", "0"]),
        "b,N,L,count\n1,0,0,1\n1,all,0,1\n"
    );
    let three = stdout(&["enumerate", "--b", "1", "--length", "3"]);
    assert!(three.ends_with("1,all,3,2\n"), "{three}");
}

#[test]
fn enumerate_routes_agree() {
    for b in ["1", "2", "4"] {
        let brute = stdout(&["enumerate", "--b", b, "--length", "20"]);
        let series = stdout(&["enumerate", "--b", b, "--length", "20", "--genfunc"]);
        assert_eq!(brute, series, "b = {b}");
    }
}

#[test]
fn enumerate_cap_is_a_usage_error() {
    let out = run(&["enumerate", "--b", "1", "--length", "40"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--genfunc"));
    let big = stdout(&["enumerate", "--b", "1", "--length", "200", "--genfunc"]);
    assert!(big.lines().count() > 10);
}

#[test]
fn coefficient_tables() {
    let b = stdout(&["coeffs", "--b", "2", "--l-max", "16"]);
    assert!(b.starts_with("b,N,L,count\n2,0,0,1\n"));
    assert!(b.contains("\n2,5,16,50\n"));
    let k = stdout(&["coeffs", "--kmer", "2", "--l-max", "4"]);
    assert!(k.starts_with("k,N,L,count\n"));
    assert_eq!(
        code(&["coeffs", "--b", "1", "--kmer", "2", "--l-max", "3"]),
        2
    );
    assert_eq!(code(&["coeffs", "--l-max", "3"]), 2);
}

#[test]
fn complexity_grid_and_single_point() {
    let csv = stdout(&[
        "complexity",
        "--b",
        "1",
        "--steps",
        "5",
        "--rho-min",
        "0.35",
        "--rho-max",
        "0.5",
    ]);
    let r = rows(&csv);
    assert_eq!(r.len(), 5);
    assert_eq!(r[4][1], "0.5");
    assert_eq!(num(&r[4][3]), 0.0);

    let at = stdout(&["complexity", "--b", "1", "--rho", "0.4"]);
    assert!((num(&rows(&at)[0][3]) - 0.4 * 2f64.ln()).abs() < 1e-12);

    let kmer = stdout(&["complexity", "--kmer", "2", "--rho", "0.8"]);
    assert_eq!(kmer, "k,rho,z,f\n2,0.8,1,0.277258872223978\n");
}

#[test]
fn complexity_default_grid_spans_support() {
    let r = rows(&stdout(&["complexity", "--b", "2", "--steps", "11"]));
    assert_eq!(r.len(), 11);
    assert!((num(&r[0][1]) - 0.2).abs() < 1e-15);
    assert!((num(&r[10][1]) - 1.0 / 3.0).abs() < 1e-14);
    assert!(r[1..10].iter().all(|row| num(&row[3]) > 0.0));
}

#[test]
fn invalid_grids_are_usage_errors() {
    assert_eq!(
        code(&[
            "complexity",
            "--b",
            "1",
            "--rho-min",
            "0.5",
            "--rho-max",
            "0.4"
        ]),
        2
    );
    assert_eq!(code(&["complexity", "--b", "1", "--rho-max", "1.5"]), 2);
    assert_eq!(code(&["complexity", "--b", "1", "--steps", "0"]), 2);
    assert_eq!(
        code(&["complexity", "--b", "1", "--rho", "0.4", "--steps", "3"]),
        2
    );
    assert_eq!(code(&["complexity", "--b", "0", "--rho", "0.4"]), 2);
    assert_eq!(code(&["complexity", "--kmer", "1", "--rho", "0.4"]), 2);
}

#[test]
fn equilibrium_tables() {
    let one = rows(&stdout(&["rho-star", "--b", "1"]));
    assert!((num(&one[0][1]) - 0.41149).abs() < 1e-5);
    assert!((num(&one[0][2]) - 0.43233).abs() < 1e-5);

    let table = rows(&stdout(&["compare", "--b-max", "12"]));
    assert_eq!(table.len(), 12);
    for (i, r) in table.iter().enumerate() {
        assert_eq!(r[0], (i + 1).to_string());
        assert!((num(&r[5]) - num(&r[6])).abs() <= 1e-9, "{r:?}");
        assert!(num(&r[1]) < num(&r[2]), "rho_star below rho_inf: {r:?}");
    }

    let kmer = rows(&stdout(&["compare", "--kmer", "--k-max", "20"]));
    assert_eq!(kmer.len(), 19);
    let best = kmer
        .iter()
        .min_by(|a, b| num(&a[1]).total_cmp(&num(&b[1])))
        .unwrap();
    assert_eq!(best[0], "9");

    assert_eq!(code(&["compare", "--b-max", "0"]), 2);
    assert_eq!(code(&["compare", "--b-max", "201"]), 2);
    assert_eq!(code(&["compare", "--b-max", "3", "--kmer"]), 2);
}

#[test]
fn jamming_limit_routes() {
    let direct = rows(&stdout(&["jamming-limit", "--b", "2"]));
    let scaled = rows(&stdout(&["jamming-limit", "--b", "2", "--scaled"]));
    assert!((num(&direct[0][1]) - num(&scaled[0][1])).abs() < 1e-9);
    assert!(num(&scaled[0][2]).is_finite());

    for r in rows(&stdout(&["jamming-limit", "--b-max", "6"])) {
        assert!((num(&r[1]) - num(&r[2])).abs() < 1e-8, "{r:?}");
    }
    let k = rows(&stdout(&["jamming-limit", "--kmer", "2"]));
    assert!((num(&k[0][1]) - (1.0 - (-2f64).exp())).abs() < 1e-9);
    assert_eq!(code(&["jamming-limit", "--b", "1", "--tol", "0"]), 2);
    assert_eq!(code(&["jamming-limit", "--kmer", "2", "--scaled"]), 2);
}

#[test]
fn renyi_constant_value() {
    let r = rows(&stdout(&["renyi", "--tol", "1e-10"]));
    assert!((num(&r[0][0]) - 0.747_597_920_253_4).abs() < 1e-9);
}

#[test]
fn simulate_outputs() {
    assert_eq!(
        stdout(&["simulate", "--b", "1", "--length", "2", "--trials", "5", "--seed", "7"]),
        "length,b,trials,seed,mean_density,std_error\n2,1,5,7,0.5,0\n"
    );
    let jsonl = stdout(&[
        "simulate",
        "--b",
        "2",
        "--length",
        "50",
        "--trials",
        "3",
        "--seed",
        "1",
        "--format",
        "jsonl",
        "--per-trial",
    ]);
    let lines: Vec<serde_json::Value> = jsonl
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0]["type"], "summary");
    let mean: f64 = lines[1..]
        .iter()
        .map(|v| v["density"].as_f64().unwrap())
        .sum::<f64>()
        / 3.0;
    assert!((mean - lines[0]["mean_density"].as_f64().unwrap()).abs() < 1e-15);

    assert_eq!(
        code(&["simulate", "--b", "1", "--length", "5", "--per-trial"]),
        2
    );
    assert_eq!(code(&["simulate", "--b", "1", "--length", "0"]), 2);
    assert_eq!(
        code(&["simulate", "--b", "1", "--length", "5", "--trials", "0"]),
        2
    );
}

#[test]
fn simulate_long_lattice() {
    let r = rows(&stdout(&[
        "simulate", "--b", "1", "--length", "100000", "--trials", "100", "--seed", "1",
    ]));
    assert!((num(&r[0][4]) - 0.43233).abs() < 5e-3);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let commands: [&[&str]; 4] = [
        &[
            "simulate", "--b", "3", "--length", "5000", "--trials", "40", "--seed", "11",
        ],
        &["compare", "--b-max", "8"],
        &["complexity", "--b", "4"],
        &["plot", "--figure", "panel", "--b", "2"],
    ];
    for args in commands {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn output_files_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("f.csv");
    let svg = dir.path().join("f.svg");
    let out = run(&[
        "complexity",
        "--b",
        "1",
        "--out",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&csv)
        .unwrap()
        .starts_with("b,rho,z,f\n"));
    let markup = std::fs::read_to_string(&svg).unwrap();
    assert!(markup.contains("<svg") && markup.contains("rho*") && markup.contains("ln w"));

    for figure in ["complexity", "compare", "scaled", "kmer", "panel"] {
        let path = dir.path().join(format!("{figure}.svg"));
        let p = path.to_str().unwrap();
        assert_eq!(
            code(&["plot", "--figure", figure, "--b-max", "6", "--out", p]),
            0
        );
        let markup = std::fs::read_to_string(&path).unwrap();
        assert!(markup.starts_with("<?xml") && markup.trim_end().ends_with("</svg>"));
        assert!(!markup.contains("NaN"), "{figure}");
    }
}

#[test]
fn self_check_and_usage() {
    let out = run(&["--self-check"]);
    assert_eq!(out.status.code(), Some(0));
    let report = String::from_utf8_lossy(&out.stderr);
    assert!(report.lines().count() >= 5);
    assert!(!report.contains("FAIL"));

    assert_eq!(
        code(&["--self-check", "enumerate", "--b", "1", "--length", "3"]),
        0
    );
    assert_eq!(code(&[]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["enumerate", "--b", "1"]), 2);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn unwritable_output_is_a_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    assert_eq!(code(&["renyi", "--out", path.to_str().unwrap()]), 3);
}
