//! Behavior of the `madkit` binary: formats, exit codes, determinism.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn madkit(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_madkit"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path.display().to_string()
}

#[test]
fn mad_prints_exact_fractions() {
    let tmp = tempfile::tempdir().unwrap();
    let fig = write(tmp.path(), "fig.txt", "x y\nx z\ny z\ny u\n");
    let out = madkit(&["mad", &fig], tmp.path());
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "2/1");

    let k4 = write(tmp.path(), "k4.txt", "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let out = madkit(&["mad", &k4], tmp.path());
    assert_eq!(stdout(&out).trim(), "3/1");

    let empty = write(tmp.path(), "empty.txt", "");
    let out = madkit(&["mad", &empty], tmp.path());
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "-inf");
}

#[test]
fn parse_failures_exit_one_with_line_numbers() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = write(tmp.path(), "bad.txt", "a b\na b\n");
    let out = madkit(&["mad", &bad], tmp.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 2"), "stderr: {}", stderr(&out));

    let loopy = write(tmp.path(), "loop.txt", "a a\n");
    let out = madkit(&["mad", &loopy], tmp.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("self-loop"));

    let out = madkit(&["mad", "no-such-file.txt"], tmp.path());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn densest_reports_witness_labels() {
    let tmp = tempfile::tempdir().unwrap();
    // K4 plus a pendant: the K4 is strictly denser than anything else.
    let g = write(
        tmp.path(),
        "g.txt",
        "a b\na c\na d\nb c\nb d\nc d\nd e\n",
    );
    let out = madkit(&["densest", &g], tmp.path());
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("3/1"));
    assert_eq!(lines.next(), Some("a b c d"));

    let edgeless = write(tmp.path(), "edgeless.txt", "");
    let out = madkit(&["densest", &edgeless], tmp.path());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn oracle_and_conjecture_respect_size_guards() {
    let tmp = tempfile::tempdir().unwrap();
    // A star on 21 vertices exceeds the brute-force guard.
    let star: String = (1..21).map(|v| format!("c v{v}\n")).collect();
    let big = write(tmp.path(), "big.txt", &star);
    let out = madkit(&["oracle", &big], tmp.path());
    assert_eq!(out.status.code(), Some(3));

    let out = madkit(
        &["conjecture", &big, "--c1", "1", "--c2", "2"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(3));

    let fig = write(tmp.path(), "fig.txt", "x y\nx z\ny z\ny u\n");
    let out = madkit(&["oracle", &fig], tmp.path());
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "2/1");

    let out = madkit(
        &["conjecture", &fig, "--c1", "0/3", "--c2", "2"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(1));

    let out = madkit(
        &["conjecture", &fig, "--c1", "1", "--c2", "2"],
        tmp.path(),
    );
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("witness"));
}

#[test]
fn verify_flags_bad_sets_with_exit_two() {
    let tmp = tempfile::tempdir().unwrap();
    let k3 = write(tmp.path(), "k3.txt", "a b\nb c\na c\n");
    let empty_set = write(tmp.path(), "empty-set.txt", "# nothing\n");
    let out = madkit(&["verify", &k3, "--k", "1", "--set", &empty_set], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("FAIL"));

    // One endpoint of a single edge is a valid k = 1 removal.
    let k2 = write(tmp.path(), "k2.txt", "a b\n");
    let good_set = write(tmp.path(), "good-set.txt", "a\n");
    let out = madkit(&["verify", &k2, "--k", "1", "--set", &good_set], tmp.path());
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("PASS"));

    let bad_label = write(tmp.path(), "bad-set.txt", "zz\n");
    let out = madkit(&["verify", &k2, "--k", "1", "--set", &bad_label], tmp.path());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn gen_is_deterministic_and_well_formed() {
    let tmp = tempfile::tempdir().unwrap();
    let a = madkit(&["gen", "gnm", "20", "40", "--seed", "7"], tmp.path());
    let b = madkit(&["gen", "gnm", "20", "40", "--seed", "7"], tmp.path());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 40);

    let out = madkit(&["gen", "cycle", "5"], tmp.path());
    assert_eq!(stdout(&out).lines().count(), 5);
    let out = madkit(&["gen", "complete", "4"], tmp.path());
    assert_eq!(stdout(&out).lines().count(), 6);
    let out = madkit(&["gen", "grid", "2", "3"], tmp.path());
    assert_eq!(stdout(&out).lines().count(), 7);

    // Too many edges for a simple graph.
    let out = madkit(&["gen", "gnm", "4", "7"], tmp.path());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn decompose_levels_peel_planar_like_graphs_into_forests() {
    let tmp = tempfile::tempdir().unwrap();
    let k4 = write(tmp.path(), "k4.txt", "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let json_path = tmp.path().join("out.json");
    let out = madkit(
        &[
            "decompose",
            &k4,
            "--k",
            "2",
            "--levels",
            "2",
            "--json",
            json_path.to_str().unwrap(),
        ],
        tmp.path(),
    );
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(doc["schema"], 1);
    let levels = doc["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 2);
    for level in levels {
        assert_eq!(level["report"]["passed"], true);
        assert_eq!(level["report"]["forest_ok"], true);
    }
    // Three parts overall: two forest sets and the final remainder.
    let part1 = levels[0]["set"].as_array().unwrap().len();
    let part2 = levels[1]["set"].as_array().unwrap().len();
    let rest = levels[1]["remainder"].as_array().unwrap().len();
    assert_eq!(part1 + part2 + rest, 4);
}

#[test]
fn independent_set_and_forest_wrappers() {
    let tmp = tempfile::tempdir().unwrap();
    let c10: String = (0..10).map(|v| format!("v{v} v{}\n", (v + 1) % 10)).collect();
    let cycle = write(tmp.path(), "c10.txt", &c10);
    let json_path = tmp.path().join("ind.json");
    let out = madkit(
        &["independent-set", &cycle, "--json", json_path.to_str().unwrap()],
        tmp.path(),
    );
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(doc["levels"][0]["report"]["independence_ok"], true);

    let tree = write(tmp.path(), "tree.txt", "a b\nb c\nc d\n");
    let out = madkit(&["forest", &tree], tmp.path());
    assert!(out.status.success());
    // mad < 2: the whole tree is kept.
    assert!(stdout(&out).contains("|S|=4"));
}

#[test]
fn batch_handles_empty_and_mixed_directories() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("corpus");
    fs::create_dir(&dir).unwrap();
    let out_csv = tmp.path().join("report.csv");

    // Empty directory: header-only CSV, success.
    let out = madkit(
        &["batch", dir.to_str().unwrap(), "--k", "1", "--out", out_csv.to_str().unwrap()],
        tmp.path(),
    );
    assert!(out.status.success());
    let body = fs::read_to_string(&out_csv).unwrap();
    assert_eq!(body.trim(), "file,n,m,mad,k,set_size,mad_remainder,pass");

    // One good file, one unparsable file: error row and exit 1.
    fs::write(dir.join("good.txt"), "a b\nb c\n").unwrap();
    fs::write(dir.join("bad.txt"), "oops\n").unwrap();
    let out = madkit(
        &["batch", dir.to_str().unwrap(), "--k", "auto", "--out", out_csv.to_str().unwrap()],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    let body = fs::read_to_string(&out_csv).unwrap();
    assert!(body.contains("error: line 1"));
    assert!(body.contains("good.txt"));
    let good_rows: Vec<&str> = body.lines().filter(|l| l.contains("good.txt")).collect();
    assert_eq!(good_rows.len(), 1); // auto with mad = 4/3 runs k = 1 only
    assert!(good_rows[0].ends_with("true"));

    // Thread cap is honored (smoke: still correct with 1 thread).
    let out = Command::new(env!("CARGO_BIN_EXE_madkit"))
        .args(["batch", dir.to_str().unwrap(), "--k", "1", "--out", out_csv.to_str().unwrap()])
        .env("MADKIT_THREADS", "1")
        .current_dir(tmp.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1)); // bad.txt still fails to parse

    let out = Command::new(env!("CARGO_BIN_EXE_madkit"))
        .args(["batch", dir.to_str().unwrap(), "--k", "1", "--out", out_csv.to_str().unwrap()])
        .env("MADKIT_THREADS", "zero")
        .current_dir(tmp.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("MADKIT_THREADS"));
}

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    let tmp = tempfile::tempdir().unwrap();
    let out = madkit(&["no-such-command"], tmp.path());
    assert_eq!(out.status.code(), Some(1));
    let out = madkit(&["--help"], tmp.path());
    assert_eq!(out.status.code(), Some(0));
    let fig = write(tmp.path(), "fig.txt", "x y\n");
    let out = madkit(&["decompose", &fig, "--k", "0"], tmp.path());
    assert_eq!(out.status.code(), Some(1));
}
