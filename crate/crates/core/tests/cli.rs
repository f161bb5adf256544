use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;
use tw_core::decomposition::{parse_td, validate};
use tw_core::graph::{cycle, parse_dimacs, write_dimacs, Graph};

fn tw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tw"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write_graph(dir: &TempDir, name: &str, g: &Graph) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, write_dimacs(g).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

fn k(n: usize) -> Graph {
    tw_core::graph::complete(n)
}

#[test]
fn homcount_edge_into_triangle() {
    let dir = TempDir::new().unwrap();
    let (h, g) = (
        write_graph(&dir, "k2.gr", &k(2)),
        write_graph(&dir, "k3.gr", &k(3)),
    );
    assert_eq!(
        json(&tw(&["homcount", "--pattern", &h, "--host", &g]))["hom"],
        "6"
    );
    assert_eq!(
        json(&tw(&[
            "homcount",
            "--pattern",
            &h,
            "--host",
            &g,
            "--method",
            "brute"
        ]))["hom"],
        "6"
    );
}

#[test]
fn mis_methods_on_c6() {
    let dir = TempDir::new().unwrap();
    let c6 = write_graph(&dir, "c6.gr", &cycle(6).unwrap());
    let brute = tw(&["mis", "--input", &c6, "--method", "brute"]);
    assert_eq!(
        String::from_utf8(brute.stdout.clone()).unwrap(),
        "{\"mis\":3}\n"
    );
    for method in ["branch", "td"] {
        let v = json(&tw(&["mis", "--input", &c6, "--method", method]));
        assert_eq!(v["mis"], 3);
        assert!(v["stats"].is_object());
    }
}

#[test]
fn permcount_inline_and_files() {
    let out = tw(&[
        "permcount",
        "--pattern",
        "2 1 3 4",
        "--text",
        "3 4 5 2 1 7 8 6",
        "--decide",
    ]);
    assert_eq!(json(&out), serde_json::json!({"contains": true}));
    let out = tw(&[
        "permcount",
        "--pattern",
        "4 3 2 1",
        "--text",
        "3 4 5 2 1 7 8 6",
        "--decide",
        "--witness",
    ]);
    assert_eq!(
        json(&out),
        serde_json::json!({"contains": false, "witness": null})
    );

    let dir = TempDir::new().unwrap();
    let text = dir.path().join("sigma.txt");
    std::fs::write(&text, "# text permutation\n3 4 5 2 1 7 8 6\n").unwrap();
    let text = text.to_str().unwrap();
    let a = json(&tw(&["permcount", "--pattern", "2 1", "--text-file", text]));
    let b = json(&tw(&[
        "permcount",
        "--pattern",
        "2 1",
        "--text",
        text,
        "--method",
        "brute",
    ]));
    assert_eq!(a, b);
    assert_eq!(a["count"], "9");
    let both = tw(&[
        "permcount",
        "--pattern",
        "2 1",
        "--text",
        "1 2",
        "--text-file",
        text,
    ]);
    assert_eq!(both.status.code(), Some(2));
}

#[test]
fn decompose_writes_valid_pace_file() {
    let dir = TempDir::new().unwrap();
    let g = tw_core::graph::make_grid(3).unwrap();
    let input = write_graph(&dir, "grid.gr", &g);
    let out_path = dir.path().join("grid.td");
    for method in ["minfill", "exact"] {
        let v = json(&tw(&[
            "decompose",
            "--input",
            &input,
            "--method",
            method,
            "--out",
            out_path.to_str().unwrap(),
        ]));
        let (td, n) = parse_td(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
        assert_eq!(n, 9);
        assert!(validate(&g, &td).is_ok());
        assert_eq!(v["width"], td.width());
        if method == "exact" {
            assert_eq!(v["width"], 3);
        }
    }
    let inline = json(&tw(&["decompose", "--input", &input]));
    assert!(inline["td"].as_str().unwrap().starts_with("s td "));
}

#[test]
fn kpath_prints_verdict_then_diagnostics() {
    let dir = TempDir::new().unwrap();
    let input = write_graph(&dir, "grid.gr", &tw_core::graph::make_grid(3).unwrap());
    let out = tw(&["kpath", "--input", &input, "--k", "9", "--planar"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let (verdict, diag) = text.split_once('\n').unwrap();
    assert_eq!(verdict, "YES");
    let diag: Value = serde_json::from_str(diag).unwrap();
    assert_eq!(diag["branch"], "narrow-decomposition");
    assert_eq!(diag["threshold"], 14);
    let no = tw(&["kpath", "--input", &input, "--k", "10", "--planar"]);
    assert!(String::from_utf8(no.stdout).unwrap().starts_with("NO\n"));
    let forced = tw(&[
        "kpath",
        "--input",
        &input,
        "--k",
        "9",
        "--planar",
        "--acceptance-width",
        "1",
    ]);
    assert!(String::from_utf8(forced.stdout)
        .unwrap()
        .contains("\"branch\":\"fallback\""));
    assert_eq!(
        tw(&["kpath", "--input", &input, "--k", "9"]).status.code(),
        Some(2)
    );
}

#[test]
fn subcount_counts_and_expansion() {
    let dir = TempDir::new().unwrap();
    let c4 = write_graph(&dir, "c4.gr", &cycle(4).unwrap());
    let k4 = write_graph(&dir, "k4.gr", &k(4));
    assert_eq!(
        json(&tw(&["subcount", "--pattern", &c4, "--host", &k4]))["sub"],
        "3"
    );
    assert_eq!(
        json(&tw(&["subcount", "--pattern", &c4, "--host", &k4, "--emb"]))["emb"],
        "24"
    );
    assert_eq!(
        json(&tw(&[
            "subcount",
            "--pattern",
            &c4,
            "--host",
            &k4,
            "--method",
            "brute"
        ]))["sub"],
        "3"
    );
    let e = json(&tw(&["subcount", "--expansion", &c4]));
    let coeffs: Vec<&str> = e["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["coefficient"].as_str().unwrap())
        .collect();
    assert_eq!(coeffs.len(), 4);
    assert_eq!(coeffs.iter().filter(|c| **c == "-1").count(), 2);
    let grouped = json(&tw(&["subcount", "--expansion", &c4, "--grouped"]));
    assert_eq!(grouped["terms"].as_array().unwrap().len(), 3);
}

#[test]
fn bad_inputs_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.gr");
    std::fs::write(&bad, "p 2 1\ne 1 3\n").unwrap();
    let out = tw(&["mis", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(tw(&["frobnicate"]).status.code(), Some(2));
    assert!(!Path::new(dir.path()).join("never.td").exists());
}

#[test]
fn pretty_output_is_key_value_lines() {
    let dir = TempDir::new().unwrap();
    let g = write_graph(&dir, "k3.gr", &k(3));
    let parsed = parse_dimacs(&std::fs::read_to_string(&g).unwrap()).unwrap();
    assert_eq!(parsed.m(), 3);
    let out = tw(&["--pretty", "homcount", "--pattern", &g, "--host", &g]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "hom: 6\n");
}

#[test]
fn verify_passes() {
    let out = tw(&["verify", "--seed", "7"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("seed 7\n"));
    assert!(text.trim_end().ends_with("9/9 suites passed"));
}
