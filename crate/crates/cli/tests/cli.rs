use std::fs;
use std::process::{Command, Output};

fn suzuki(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_suzuki"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = suzuki(&all);
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)))
}

#[test]
fn params_small_member() {
    let v = json(&["params", "--m", "1", "--ell", "63"]);
    assert_eq!(v["schema"], 1);
    for (k, want) in [
        ("n", 5824),
        ("k", 4082),
        ("dstar", 1729),
        ("t", 864),
        ("n1", 65),
        ("n4", 5889),
        ("dual_level", 27),
    ] {
        assert_eq!(v[k], want, "{k}");
    }
    assert_eq!(v["isodual"], false);
    let iso = json(&["params", "--m", "1", "--ell", "45"]);
    assert_eq!(
        (iso["k"].as_u64(), iso["isodual"].as_bool()),
        (Some(2912), Some(true))
    );
}

#[test]
fn params_rejects_levels_above_q_squared_minus_one() {
    let o = suzuki(&["params", "--m", "1", "--ell", "64"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("q^2 - 1 = 63"));
    assert_eq!(
        suzuki(&["params", "--m", "1", "--ell", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn output_is_reproducible() {
    let a = suzuki(&["encode", "--ell", "3", "--random", "2", "--seed", "9"]);
    let b = suzuki(&["encode", "--ell", "3", "--random", "2", "--seed", "9"]);
    let c = suzuki(&["encode", "--ell", "3", "--random", "2", "--seed", "10"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn points_and_basis_listings() {
    let pts = stdout(&suzuki(&["points", "--m", "1", "--ext", "1"]));
    assert!(pts.starts_with("j=1 inf\n"));
    assert!(pts.ends_with("# count=65\n"));
    let v = json(&["points", "--m", "1", "--ext", "4"]);
    assert_eq!(v["count"], 5889);
    let basis = stdout(&suzuki(&["basis", "--ell", "1"]));
    assert_eq!(basis.lines().filter(|l| l.starts_with("n=")).count(), 52);
    assert!(basis.contains("n=0 a=0 b=0 c=0 d=0 r=1\n"));
    assert!(basis.ends_with("# k=52 expected=52\n"));
}

#[test]
fn genmat_header_and_shape() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let o = suzuki(&["genmat", "--ell", "2", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("# m=1 ell=2 n=5824 k=117 modulus=0x1053 point_order_sha256="));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 117);
    assert!(rows.iter().all(|r| r.split(' ').count() == 5824));
    assert_eq!(
        suzuki(&["genmat", "--m", "2", "--ell", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn encode_then_decode_with_erasures() {
    let dir = tempfile::tempdir().unwrap();
    let msg = dir.path().join("msg.txt");
    let word = dir.path().join("word.txt");
    let o = suzuki(&[
        "encode",
        "--ell",
        "27",
        "--random",
        "2",
        "--message-out",
        msg.to_str().unwrap(),
        "--out",
        word.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    // d* - 1 = 5824 - 27 * 65 - 1 = 4068 erasures are always recoverable
    let o = suzuki(&[
        "decode-erasures",
        "--ell",
        "27",
        "--input",
        word.to_str().unwrap(),
        "--erase",
        "4068",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), fs::read_to_string(&msg).unwrap());

    // encoding the recovered messages again gives the same words
    let again = suzuki(&["encode", "--ell", "27", "--input", msg.to_str().unwrap()]);
    assert_eq!(stdout(&again), fs::read_to_string(&word).unwrap());
}

#[test]
fn decode_reports_too_many_erasures() {
    let dir = tempfile::tempdir().unwrap();
    let word = dir.path().join("word.txt");
    suzuki(&[
        "encode",
        "--ell",
        "1",
        "--random",
        "1",
        "--out",
        word.to_str().unwrap(),
    ]);
    let o = suzuki(&[
        "decode-erasures",
        "--ell",
        "1",
        "--input",
        word.to_str().unwrap(),
        "--erase",
        "5800",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("undecodable (5800 erasures): rank deficient"));
}

#[test]
fn decode_rejects_malformed_words() {
    let dir = tempfile::tempdir().unwrap();
    let word = dir.path().join("word.txt");
    fs::write(&word, "1 2 3\n").unwrap();
    let o = suzuki(&[
        "decode-erasures",
        "--ell",
        "1",
        "--input",
        word.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("expected 5824 symbols"));
}

#[test]
fn dual_verify_full_gram() {
    let v = json(&["dual-verify", "--ell", "27", "--full"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["report"]["pairs_checked"], 1742 * 4082);
    let o = suzuki(&["dual-verify", "--ell", "27", "--full", "--pole-only"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL first nonzero entry"));
    assert_eq!(
        suzuki(&["dual-verify", "--ell", "26"]).status.code(),
        Some(2)
    );
}

#[test]
fn aut_check_passes() {
    let v = json(&["aut-check", "--ell", "27", "--maps", "3", "--trials", "2"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["reports"].as_array().unwrap().len(), 3);
}

#[test]
fn selftest_quick_table() {
    let o = suzuki(&["selftest", "--quick"]);
    let text = stdout(&o);
    for id in [0, 1, 3, 4, 5, 6, 9, 11] {
        assert!(
            text.contains(&format!("criterion {id:>2}: PASS")),
            "criterion {id}\n{text}"
        );
    }
    assert!(text.contains("criterion 10: SKIP"));
    let any_fail = text.contains(": FAIL");
    assert_eq!(o.status.code(), Some(if any_fail { 1 } else { 0 }));
}

#[test]
fn selftest_corrupted_modulus_fails_first() {
    let o = suzuki(&["selftest", "--quick", "--ext-modulus", "0x1001"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.starts_with("[FAIL]  0 "), "{text}");
    assert!(text.contains("1 checks, 1 failed"));
}
