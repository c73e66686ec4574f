use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use mdrg::io::graph_to_json;
use mdrg::PolynomialExpansion;
use serde_json::Value;
use tempfile::TempDir;

fn mdrg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mdrg")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{e}: {}{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(tempfile::tempdir().unwrap())
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }

    fn generate(&self, family: &str, name: &str) -> String {
        let p = self.path(name);
        let out = mdrg(&["generate", family, "-o", p.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        p.to_str().unwrap().to_string()
    }

    fn write(&self, name: &str, text: &str) -> String {
        let p = self.path(name);
        fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    }
}

fn strs(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn distances_examples() {
    let d = Dir::new();
    let cell = d.generate("cell24", "cell24.json");
    let out = mdrg(&["distances", &cell, "--order", "deglex-sum"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["num_labels"], 5);

    let k2 = d.generate("complete:2", "k2.json");
    let out = json(&mdrg(&["distances", &k2, "--order", "lex"]));
    assert_eq!(strs(&out["labels"]), ["0", "1"]);

    let c14 = d.generate("cycle:14", "c14.json");
    let c9 = d.generate("cycle:9", "c9.json");
    let prod = d.generate(&format!("cartesian:{c14},{c9}"), "prod.json");
    let table = d.path("table.json");
    let out = json(&mdrg(&["distances", &prod, "--table", table.to_str().unwrap()]));
    assert_eq!(out["num_labels"], 40);
    let written: Value = serde_json::from_str(&fs::read_to_string(table).unwrap()).unwrap();
    assert_eq!(written["distances"].as_object().unwrap().len(), 126 * 126);
}

#[test]
fn certify_mdrg_exit_codes() {
    let d = Dir::new();
    let cell = d.generate("cell24", "cell24.json");
    let out = mdrg(&["certify-mdrg", &cell, "--order", "deglex-sum"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["class_sizes"]["0,2"], 8);

    let c5 = d.write(
        "c5.json",
        r#"{"m": 2, "vertices": ["a", "b", "c", "d", "e"],
            "edges": [["a", "b", 1], ["b", "c", 1], ["c", "d", 2], ["d", "e", 1], ["e", "a", 2]]}"#,
    );
    let out = mdrg(&["certify-mdrg", &c5]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["verdict"], "fail");
    assert_eq!(v["certificates"][0]["witness"]["kind"], "regularity");

    let missing = d.path("missing.json");
    let out = mdrg(&["certify-mdrg", missing.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.json"));
}

#[test]
fn input_errors_exit_two() {
    let d = Dir::new();
    let cell = d.generate("cell24", "cell24.json");
    let disconnected = d.write(
        "two.json",
        r#"{"m": 1, "vertices": ["a", "b", "c", "d"], "edges": [["a", "b", 1], ["c", "d", 1]]}"#,
    );
    let unknown_field = d.write(
        "bad.json",
        r#"{"m": 1, "vertices": ["a", "b"], "edges": [], "weight": 3}"#,
    );
    let truncated = d.write("trunc.json", "{\"m\": 1,\n\"vertices\": [\"a\"");
    let cases: Vec<Vec<&str>> = vec![
        vec!["certify-mdrg", &disconnected],
        vec!["certify-mdrg", &unknown_field],
        vec!["certify-mdrg", &truncated],
        vec!["certify-mdrg", &cell, "--order", "grevlex"],
        vec!["generate", "cycle:2"],
        vec!["generate", "dodecahedron"],
        vec!["generate", "symmetrize:2"],
        vec!["discover", &cell, "--m", "2"],
        vec!["bogus"],
    ];
    for args in cases {
        let out = mdrg(&args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    let out = mdrg(&["certify-mdrg", &truncated]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn quiet_prints_nothing() {
    let d = Dir::new();
    let cell = d.generate("cell24", "cell24.json");
    for (args, want) in [
        (vec!["certify-mdrg", &cell, "--quiet"], 0),
        (vec!["certify-mdrg", &cell, "--order", "lex", "-q"], 1),
        (vec!["-q", "certify-mdrg", "nope.json"], 2),
    ] {
        let out = mdrg(&args);
        assert_eq!(code(&out), want, "{args:?}");
        assert!(out.stdout.is_empty() && out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn certify_ppoly_examples() {
    let d = Dir::new();
    let t = d.generate("gen24cell:2,1/2", "g.json");
    let polys = d.path("polys.json");
    let out = mdrg(&[
        "certify-ppoly",
        &t,
        "--labeling",
        "ad1",
        "--order",
        "deglex-y2",
        "--polys",
        polys.to_str().unwrap(),
        "--recurrences",
        "--boundary",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["polynomials"]["1,1"], "1/3 x y - y");
    assert_eq!(v["polynomials"]["2,0"], "1/6 x^2 - 2/3 x - 1");
    let written: Value = serde_json::from_str(&fs::read_to_string(&polys).unwrap()).unwrap();
    let expansion = PolynomialExpansion::from_json(&written).unwrap();
    assert_eq!(expansion.polys.len(), 5);

    let out = mdrg(&["certify-ppoly", &t, "--labeling", "ad2", "--order", "deglex-y2"]);
    assert_eq!(code(&out), 1);
    let w = &json(&out)["certificates"][0]["witness"];
    assert_eq!(
        (w["generator"].as_u64(), w["a"].as_str(), w["b"].as_str()),
        (Some(1), Some("0,1"), Some("0,2"))
    );

    let out = mdrg(&["certify-ppoly", &t, "--labeling", "ad2", "--order", "deglex-sum"]);
    assert_eq!(code(&out), 0);

    let out = mdrg(&[
        "certify-ppoly",
        &t,
        "--labeling",
        "ad1",
        "--order",
        "deglex-y2",
        "--partial",
        "ab:1,1/2",
    ]);
    assert_eq!(code(&out), 0);
    let out = mdrg(&[
        "certify-ppoly",
        &t,
        "--labeling",
        "ad1",
        "--order",
        "deglex-sum",
        "--partial",
        "ab:1,0",
    ]);
    assert_eq!(code(&out), 2, "incompatible pair is a usage error");
    let out = mdrg(&["certify-ppoly", &t, "--order", "deglex-y2"]);
    assert_eq!(code(&out), 2, "tags without a labeling");
}

#[test]
fn certify_ppoly_on_graphs_and_schemes() {
    let d = Dir::new();
    for family in ["cycle:7", "complete:5", "hamming:3,2"] {
        let g = d.generate(family, "g.json");
        let out = mdrg(&["certify-ppoly", &g, "--order", "lex", "--polys", "--recurrences"]);
        assert_eq!(code(&out), 0, "{family}");
    }
    let pauli = d.generate("pauli4", "pauli.json");
    let h = d.path("h24.json");
    let out = mdrg(&[
        "generate",
        "symmetrize:2",
        "--scheme",
        &pauli,
        "-o",
        h.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let out = mdrg(&[
        "certify-ppoly",
        h.to_str().unwrap(),
        "--order",
        "deglex-sum",
        "--recurrences",
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn type_ab_examples() {
    let d = Dir::new();
    let t = d.generate("gen24cell:2,1/2", "g.json");
    let out = json(&mdrg(&["type-ab", &t, "--labeling", "ad2", "--region"]));
    assert_eq!(out["region"], "alpha: [1/2, 1), beta: [0, 1)");
    let out = json(&mdrg(&["type-ab", &t, "--labeling", "ad1", "--region"]));
    assert_eq!(out["region"], "alpha: [0, 1], beta: [0, 1)");

    let out = mdrg(&["type-ab", &t, "--labeling", "ad1", "--alpha", "0", "--beta", "0"]);
    assert_eq!(code(&out), 0);
    let out = mdrg(&["type-ab", &t, "--labeling", "ad2", "--alpha", "1/4", "--beta", "0"]);
    assert_eq!(code(&out), 1);
    let out = mdrg(&["type-ab", &t, "--labeling", "ad1", "--alpha", "2", "--beta", "0"]);
    assert_eq!(code(&out), 2);
    let out = mdrg(&["type-ab", &t, "--labeling", "ad1", "--alpha", "0"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn discover_examples() {
    let d = Dir::new();
    let s = d.generate("cell24-scheme", "s.json");
    let out = json(&mdrg(&["discover", &s, "--m", "2", "--order", "deglex-sum"]));
    assert!(out["count"].as_u64().unwrap() >= 1);
    let out = json(&mdrg(&["discover", &s, "--m", "1", "--order", "lex"]));
    assert_eq!(out["count"], 0);
    let one = d.generate("one-class:4", "one.json");
    let out = json(&mdrg(&["discover", &one, "--m", "1", "--order", "lex"]));
    assert_eq!(out["count"], 1);
    assert_eq!(out["labelings"][0]["labeling"]["J-I"], "1");
}

fn certify_bytes(path: &str) -> Vec<u8> {
    let out = mdrg(&["certify-mdrg", path, "--order", "deglex-sum"]);
    assert_eq!(code(&out), 0);
    out.stdout
}

#[test]
fn round_trip_is_byte_identical() {
    let d = Dir::new();
    let first = d.generate("cell24", "a.json");
    let text = fs::read_to_string(&first).unwrap();
    let g = mdrg::io::graph_from_json(&text).unwrap();
    let mut again = serde_json::to_string_pretty(&graph_to_json(&g)).unwrap();
    again.push('\n');
    assert_eq!(again, text);
    let second = d.write("a.json", &again);
    assert_eq!(first, second);

    let copy = d.write("b.json", &again);
    let strip = |bytes: Vec<u8>, p: &str| String::from_utf8(bytes).unwrap().replace(p, "PATH");
    assert_eq!(strip(certify_bytes(&first), &first), strip(certify_bytes(&copy), &copy));

    let tensor = d.path("t.json");
    let out = mdrg(&["certify-mdrg", &first, "--tensor", tensor.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let t1 = fs::read(&tensor).unwrap();
    let out = mdrg(&["certify-mdrg", &copy, "--tensor", tensor.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(t1, fs::read(&tensor).unwrap());
    assert_eq!(code(&mdrg(&["verify-scheme", tensor.to_str().unwrap()])), 0);
}

#[test]
fn thread_count_does_not_change_output() {
    let d = Dir::new();
    let s = d.generate("cell24-scheme", "s.json");
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_mdrg"))
            .args(["discover", &s, "--m", "2"])
            .env("MDRG_THREADS", threads)
            .output()
            .unwrap()
    };
    let base = run("0");
    assert_eq!(code(&base), 0);
    assert_eq!(run("1").stdout, base.stdout);
    assert_eq!(run("3").stdout, base.stdout);
    assert_eq!(code(&run("many")), 2);
}

#[test]
fn verify_scheme_reports() {
    let d = Dir::new();
    let s = d.generate("cell24-scheme", "s.json");
    let v = json(&mdrg(&["verify-scheme", &s]));
    assert_eq!(v["valencies"]["d4"], "6");
    let broken = d.write(
        "broken.json",
        r#"{"labels": ["I", "R", "S"], "matrices": {"I": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            "R": [[0, 1, 0], [0, 0, 1], [1, 0, 0]], "S": [[0, 0, 1], [1, 0, 0], [0, 1, 0]]}}"#,
    );
    let out = mdrg(&["verify-scheme", &broken]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["certificates"][0]["witness"]["axiom"], "symmetry");
}
