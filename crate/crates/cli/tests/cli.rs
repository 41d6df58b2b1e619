use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const DIAMOND: &str = "c diamond\np edge 4 5\ne 1 2\ne 1 3\ne 2 3\ne 2 4\ne 3 4\n";
const HEXAGON: &str = "p edge 6 6\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\ne 6 1\n";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pqcluster"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("stdout is JSON")
}

#[test]
fn diamond_partition_is_found_and_verifies() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "d.txt", DIAMOND);
    for algo in ["brute", "fptq", "fptp", "auto"] {
        let out = run(&[
            "partition",
            "--graph",
            s(&graph),
            "--mu",
            "size",
            "--p",
            "3",
            "--q",
            "2",
            "--algo",
            algo,
        ]);
        assert_eq!(
            code(&out),
            0,
            "{algo}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let sol = json(&out);
        assert_eq!(sol["status"], "partition");
        let clusters = sol["clusters"].to_string();
        assert!(
            clusters == "[[1],[2,3,4]]" || clusters == "[[1,2,3],[4]]",
            "{algo}: {clusters}"
        );

        let solution = write(&dir, &format!("{algo}.json"), &stdout(&out));
        let check = run(&["verify", "--graph", s(&graph), "--solution", s(&solution)]);
        assert_eq!(code(&check), 0);
        assert_eq!(stdout(&check).trim(), "valid");
    }
}

#[test]
fn tampered_solutions_are_refuted() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "d.txt", DIAMOND);
    let out = run(&[
        "partition",
        "--graph",
        s(&graph),
        "--mu",
        "size",
        "--p",
        "3",
        "--q",
        "2",
    ]);
    let mut sol = json(&out);
    sol["clusters"] = serde_json::json!([[1, 2], [3, 4]]);
    let solution = write(&dir, "bad.json", &sol.to_string());
    let check = run(&["verify", "--graph", s(&graph), "--solution", s(&solution)]);
    assert_eq!(code(&check), 1);
    assert!(stdout(&check).starts_with("invalid:"));

    let garbage = write(&dir, "garbage.json", "{\"format\": \"other\"}");
    assert_eq!(
        code(&run(&[
            "verify",
            "--graph",
            s(&graph),
            "--solution",
            s(&garbage)
        ])),
        65
    );
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "d.txt", DIAMOND);
    let g = s(&graph);

    let none = run(&[
        "partition",
        "--graph",
        g,
        "--mu",
        "size",
        "--p",
        "0",
        "--q",
        "2",
    ]);
    assert_eq!(code(&none), 1);
    assert_eq!(json(&none)["status"], "none");

    let cluster = run(&[
        "cluster", "--graph", g, "--mu", "nonedge", "--p", "0", "--q", "2", "--vertex", "2",
    ]);
    assert_eq!(code(&cluster), 0);
    assert_eq!(json(&cluster)["vertex"], 2);

    let budget = run(&[
        "cluster", "--graph", g, "--mu", "size", "--p", "1", "--q", "1", "--vertex", "2", "--algo",
        "fptq", "--mode", "rand", "--trials", "1",
    ]);
    assert!(matches!(code(&budget), 1 | 2));

    assert_eq!(
        code(&run(&[
            "partition",
            "--graph",
            g,
            "--mu",
            "size",
            "--p",
            "3"
        ])),
        64
    );
    assert_eq!(
        code(&run(&[
            "partition",
            "--graph",
            g,
            "--mu",
            "volume",
            "--p",
            "3",
            "--q",
            "2"
        ])),
        64
    );
    assert_eq!(
        code(&run(&[
            "cluster", "--graph", g, "--mu", "size", "--p", "3", "--q", "2", "--vertex", "9"
        ])),
        65
    );

    let broken = write(&dir, "broken.txt", "p edge 2 1\ne 1 3\n");
    assert_eq!(
        code(&run(&[
            "partition",
            "--graph",
            s(&broken),
            "--mu",
            "size",
            "--p",
            "3",
            "--q",
            "2"
        ])),
        65
    );
    let missing = dir.path().join("missing.txt");
    assert_eq!(
        code(&run(&[
            "partition",
            "--graph",
            s(&missing),
            "--mu",
            "size",
            "--p",
            "3",
            "--q",
            "2"
        ])),
        65
    );

    let multi = write(&dir, "m.txt", "p edge 2 2\ne 1 2\ne 1 2\n");
    assert_eq!(
        code(&run(&[
            "partition",
            "--graph",
            s(&multi),
            "--mu",
            "nonedge",
            "--p",
            "1",
            "--q",
            "2"
        ])),
        65
    );
}

#[test]
fn same_seed_gives_identical_output() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "h.txt", HEXAGON);
    let args = [
        "partition",
        "--graph",
        s(&graph),
        "--mu",
        "size",
        "--p",
        "3",
        "--q",
        "2",
        "--algo",
        "fptq",
        "--mode",
        "rand",
        "--seed",
        "17",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    let sol = json(&first);
    assert_eq!(sol["seed"], 17);
    assert_eq!(sol["algorithm"], "fptq-rand");

    let threaded = run(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(first.stdout, threaded.stdout);
}

#[test]
fn planted_instances_verify_and_solve() {
    let dir = TempDir::new().unwrap();
    let planted_sol = dir.path().join("planted.json");
    let gen = run(&[
        "gen",
        "planted",
        "--n",
        "9",
        "--clusters",
        "3",
        "--inter-edges",
        "2",
        "--mu",
        "size",
        "--seed",
        "5",
        "--solution-out",
        s(&planted_sol),
    ]);
    assert_eq!(code(&gen), 0);
    assert!(stdout(&gen).starts_with("c pqcluster graph v1\n"));
    let graph = write(&dir, "planted.txt", &stdout(&gen));
    let check = run(&[
        "verify",
        "--graph",
        s(&graph),
        "--solution",
        s(&planted_sol),
    ]);
    assert_eq!(stdout(&check).trim(), "valid");

    let planted: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&planted_sol).unwrap()).unwrap();
    let p = planted["problem"]["p"].to_string();
    let q = planted["problem"]["q"].to_string();
    let solved = run(&[
        "partition",
        "--graph",
        s(&graph),
        "--mu",
        "size",
        "--p",
        &p,
        "--q",
        &q,
        "--algo",
        "fptq",
    ]);
    assert_eq!(code(&solved), 0);
    let solution = write(&dir, "solved.json", &stdout(&solved));
    assert_eq!(
        stdout(&run(&[
            "verify",
            "--graph",
            s(&graph),
            "--solution",
            s(&solution)
        ]))
        .trim(),
        "valid"
    );
}

#[test]
fn gadget_over_triangle_free_base_has_no_apex_cluster() {
    let dir = TempDir::new().unwrap();
    let base = write(&dir, "hex.txt", HEXAGON);
    let gen = run(&["gen", "gadget", "--base", s(&base), "--k", "3"]);
    assert_eq!(code(&gen), 0);
    let text = stdout(&gen);
    assert!(
        text.lines().nth(1).unwrap() == "c apex 7 k 3 threshold 18",
        "{text}"
    );
    let gadget = write(&dir, "gadget.txt", &text);
    let out = run(&[
        "cluster",
        "--graph",
        s(&gadget),
        "--mu",
        "size",
        "--p",
        "4",
        "--q",
        "18",
        "--vertex",
        "7",
        "--algo",
        "brute",
    ]);
    assert_eq!(code(&out), 1);
    let oracle = run(&[
        "oracle",
        "cluster",
        "--graph",
        s(&gadget),
        "--mu",
        "size",
        "--p",
        "4",
        "--q",
        "18",
        "--vertex",
        "7",
    ]);
    assert_eq!(code(&oracle), 1);

    let sampled = run(&[
        "gen", "gadget", "--n", "6", "--d", "3", "--k", "2", "--seed", "1",
    ]);
    assert_eq!(code(&sampled), 0);
    assert_eq!(
        code(&run(&["gen", "gadget", "--n", "5", "--d", "3", "--k", "2"])),
        65
    );
}

#[test]
fn important_separators_match_oracle_output() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "d.txt", DIAMOND);
    for k in ["0", "1", "2", "3"] {
        let fast = run(&[
            "important-seps",
            "--graph",
            s(&graph),
            "--s",
            "1",
            "--t",
            "4",
            "--k",
            k,
        ]);
        let slow = run(&[
            "oracle",
            "important-seps",
            "--graph",
            s(&graph),
            "--s",
            "1",
            "--t",
            "4",
            "--k",
            k,
        ]);
        assert_eq!(code(&fast), 0);
        let mut a: Vec<String> = json(&fast)
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect();
        let mut b: Vec<String> = json(&slow)
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect();
        a.sort();
        b.sort();
        assert_eq!(a, b, "k {k}");
    }
    let two = run(&[
        "important-seps",
        "--graph",
        s(&graph),
        "--s",
        "1",
        "--t",
        "4",
        "--k",
        "2",
    ]);
    // The cut at vertex 1 is dominated by the one farther from it.
    assert_eq!(json(&two).as_array().unwrap().len(), 1);
    assert_eq!(json(&two)[0]["cut"].to_string(), "[[2,4,1],[3,4,1]]");
    assert_eq!(json(&two)[0]["source_side"].to_string(), "[1,2,3]");
}
