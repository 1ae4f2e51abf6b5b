use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn finring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finring"))
        .args(args)
        .env("FINRING_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn classify_json(target: &str) -> Value {
    let out = finring(&["classify", target, "--format", "json", "--no-timings"]);
    assert!(out.status.success(), "{}", stderr(&out));
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn spec_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn gallery_list() {
    let out = finring(&["gallery", "list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for name in ["wood-basic", "wood", "b3", "r4", "t2", "z4"] {
        assert!(
            text.lines()
                .any(|l| l.split_whitespace().next() == Some(name)),
            "{name}"
        );
    }
    let shown = finring(&["gallery", "show", "wood"]);
    assert!(stdout(&shown).contains("expand = [2, 1]"));
}

#[test]
fn classify_wood() {
    let v = classify_json("gallery:wood");
    assert_eq!(v["size"], 512);
    assert_eq!((v["m"].as_u64(), v["n"].as_u64()), (Some(3), Some(2)));
    assert_eq!(v["nakayama"]["perm"], serde_json::json!([2, 1]));
    assert_eq!(v["predicates"]["qf"], true);
    assert_eq!(v["predicates"]["frobenius"], false);
    assert!(v.get("timings").is_none());
}

#[test]
fn classify_two_word_target() {
    let out = finring(&["classify", "gallery", "z4", "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["size"], 4);
    assert_eq!(v["predicates"]["frobenius"], true);
    assert!(v["timings"]["total_ms"].is_number());
}

#[test]
fn classify_text_is_aligned() {
    let out = finring(&["classify", "gallery:t2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let columns: Vec<usize> = text
        .lines()
        .map(|l| l.len() - l.splitn(2, "  ").nth(1).unwrap().trim_start().len())
        .collect();
    assert!(columns.windows(2).all(|w| w[0] == w[1]), "{text}");
    assert!(text.contains("not-kasch-right"));
}

#[test]
fn json_is_byte_stable() {
    let a = stdout(&finring(&[
        "classify",
        "gallery:b3",
        "--format",
        "json",
        "--no-timings",
    ]));
    let b = stdout(&finring(&[
        "classify",
        "gallery:b3",
        "--format",
        "json",
        "--no-timings",
    ]));
    assert_eq!(a, b);
}

#[test]
fn classify_file() {
    let f = spec_file("ring k {\n  base K = GF(2)\n  matrix = [[K]]\n}\n");
    let v = classify_json(f.path().to_str().unwrap());
    assert_eq!(v["name"], "k");
    assert_eq!(v["size"], 2);
}

#[test]
fn malformed_file_exits_2() {
    let f = spec_file("ring bad {\n  base K = GF(6)\n  matrix = [[K]]\n}\n");
    let out = finring(&["classify", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let f = spec_file("ring bad {\n  matrix = [[K]]\n");
    let out = finring(&["classify", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("syntax error"), "{}", stderr(&out));
    let out = finring(&["classify", "/nonexistent/ring.spec"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_theorem() {
    let out = finring(&["verify", "gallery:z4", "--theorems", "ann1,bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bogus"));
}

#[test]
fn verify_r4_products() {
    let out = finring(&["verify", "gallery", "r4", "--theorems", "qf-simple-formula"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("qf-simple-formula"));
    assert!(text.contains("products 2^11, 2^12, 2^10, 2^10"), "{text}");
}

#[test]
fn verify_corpus_file() {
    let f = spec_file(
        "ring t2 {\n base K = GF(2)\n bimodule E = zero_product(K)\n matrix = [[K, E], [0, K]]\n}\n\
         ring wb {\n base K = GF(2)\n bimodule E = zero_product(K)\n matrix = [[K, E], [E, K]]\n}\n",
    );
    let out = finring(&[
        "verify",
        "--corpus",
        f.path().to_str().unwrap(),
        "--theorems",
        "all",
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rings"], 2);
    assert_eq!(v["outcomes"].as_array().unwrap().len(), 12);
}

#[test]
fn verify_default_corpus_ann1() {
    let out = finring(&["verify", "--corpus", "default", "--theorems", "ann1"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out)
        .lines()
        .any(|l| l.starts_with("ann1") && l.ends_with("pass")));
}

#[test]
fn enumerate_tiny() {
    let out = finring(&["enumerate", "--max-order", "2", "--no-timings"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1);
    let v: Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(v["size"], 2);
    assert_eq!(v["field_sizes"], serde_json::json!([2]));
}

#[test]
fn enumerate_order_16_covers_small_gallery() {
    let out = finring(&["enumerate", "--max-order", "16", "--no-timings"]);
    assert!(out.status.success());
    let digests: Vec<String> = stdout(&out)
        .lines()
        .map(|l| {
            serde_json::from_str::<Value>(l).unwrap()["digest"]
                .as_str()
                .unwrap()
                .to_string()
        })
        .collect();
    for name in [
        "gallery:z4",
        "gallery:gf4",
        "gallery:gf2x2",
        "gallery:t2",
        "gallery:wood-basic",
        "gallery:m2f2",
    ] {
        let d = classify_json(name)["digest"].as_str().unwrap().to_string();
        assert!(digests.contains(&d), "{name}");
    }
}

#[test]
fn enumerate_finds_qf_not_frobenius() {
    let out = finring(&["enumerate", "--no-timings"]);
    assert!(out.status.success());
    let wood_shaped = stdout(&out).lines().any(|l| {
        let v: Value = serde_json::from_str(l).unwrap();
        v["predicates"]["qf"] == true && v["predicates"]["frobenius"] == false
    });
    assert!(wood_shaped);
}
