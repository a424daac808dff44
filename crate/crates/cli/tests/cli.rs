use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use privshare_cli::docs::{AccessDoc, AuditDoc, CoalitionDoc, SharesDoc, TableDoc};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_privshare"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/goldens")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

fn deal_example(dir: &Path) -> PathBuf {
    let path = dir.join("shares.json");
    let out = run(&[
        "deal",
        "--t",
        "5",
        "--p",
        "7",
        "--n",
        "6",
        "--secrets",
        "1,2,3,4",
        "--blinding",
        "5",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    path
}

#[test]
fn enumerate_examples_and_exit_codes() {
    let out = run(&[
        "enumerate",
        "--t",
        "7",
        "--j",
        "3",
        "--r",
        "4",
        "--p",
        "13",
        "--N",
        "13",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "# t=7 j=3 r=4 p=13 N=13 minimal=false count=3\n(1, 5, 8, 12)\n(2, 3, 10, 11)\n(4, 6, 7, 9)\n"
    );

    let out = run(&[
        "enumerate",
        "--t",
        "5",
        "--j",
        "2",
        "--r",
        "3",
        "--p",
        "7",
        "--N",
        "6",
        "--minimal",
        "--format",
        "json",
    ]);
    let doc: CoalitionDoc = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc.count, 2);
    assert_eq!(doc.coalitions, vec![vec![1, 2, 4], vec![3, 5, 6]]);
    assert!(doc.minimal);
    assert_eq!(doc.query.r, Some(3));
    assert_eq!(doc.r_min, None);

    let out = run(&[
        "enumerate",
        "--t",
        "5",
        "--j",
        "1",
        "--r",
        "3",
        "--p",
        "7",
        "--N",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("t-r <= j"), "{}", stderr(&out));

    let out = run(&[
        "enumerate",
        "--t",
        "7",
        "--j",
        "3",
        "--r",
        "4",
        "--p",
        "15",
        "--N",
        "13",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&[
        "enumerate",
        "--t",
        "7",
        "--j",
        "3",
        "--r",
        "5",
        "--p",
        "1000003",
        "--N",
        "100000",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn enumerate_descending_and_csv() {
    let out = run(&[
        "enumerate",
        "--t",
        "7",
        "--j",
        "3",
        "--r",
        "4",
        "--p",
        "17",
        "--N",
        "13",
        "--descending",
    ]);
    assert!(stdout(&out).ends_with("{11, 10, 7, 6}\n"));
    let out = run(&[
        "enumerate",
        "--t",
        "7",
        "--j",
        "3",
        "--r",
        "4",
        "--p",
        "17",
        "--N",
        "13",
        "--format",
        "csv",
    ]);
    assert_eq!(stdout(&out), "r,coalition\n4,6 7 10 11\n");
}

#[test]
fn shortest_sweeps_match_golden_bytes() {
    let mut all = String::new();
    for p in [
        "13", "17", "19", "23", "29", "31", "37", "41", "43", "47", "53", "97", "113", "149",
    ] {
        let out = run(&[
            "enumerate",
            "--t",
            "7",
            "--j",
            "3",
            "--p",
            p,
            "--N",
            "13",
            "--shortest",
        ]);
        assert_eq!(out.status.code(), Some(0));
        all.push_str(&stdout(&out));
    }
    assert_eq!(all, golden("shortest_t7_j3.txt"));
}

#[test]
fn large_prime_has_no_short_coalitions() {
    let out = run(&[
        "enumerate",
        "--t",
        "7",
        "--j",
        "3",
        "--p",
        "22787",
        "--N",
        "13",
        "--shortest",
        "--format",
        "json",
    ]);
    let doc: CoalitionDoc = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc.count, 0);
    assert_eq!(doc.r_min, None);
}

#[test]
fn table_matches_golden_and_rejects_composites() {
    let golden_csv = golden("minimal_counts_computed.csv");
    let primes: Vec<&str> = golden_csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    let out = run(&["table", "--p", &primes.join(",")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), golden_csv);

    let out = run(&["table", "--p", "13,15"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_json_cells_carry_shortest_data() {
    let out = run(&["table", "--p", "13,67", "--format", "json"]);
    let doc: TableDoc = serde_json::from_str(&stdout(&out)).unwrap();
    let cell = doc.cells.iter().find(|c| c.p == 13 && c.j == 3).unwrap();
    assert_eq!(cell.count, 71);
    assert_eq!(cell.r_min, Some(4));
    assert_eq!(cell.n_min, Some(3));
    assert_eq!(cell.per_length.values().sum::<usize>(), 71);
    let cell = doc.cells.iter().find(|c| c.p == 67 && c.j == 5).unwrap();
    assert_eq!((cell.count, cell.r_min, cell.n_min), (0, None, None));
}

#[test]
fn table_per_length_rows_sum_to_aggregate() {
    let agg = stdout(&run(&["table", "--p", "13"]));
    assert_eq!(agg, "p,j=1,j=2,j=3,j=4,j=5\n13,72,114,71,93,132\n");
    let per = stdout(&run(&["table", "--p", "13", "--per-length"]));
    let mut sums = [0u64; 6];
    for line in per.lines().skip(1) {
        let f: Vec<u64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        sums[f[1] as usize] += f[3];
    }
    assert_eq!(&sums[1..], &[72, 114, 71, 93, 132]);
}

#[test]
fn access_structure_documents() {
    let out = run(&[
        "access-structure",
        "--t",
        "5",
        "--p",
        "7",
        "--n",
        "6",
        "--format",
        "json",
    ]);
    let doc: AccessDoc = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc.families.len(), 4);
    let j2: Vec<Vec<u64>> = doc.families[2]
        .sets
        .iter()
        .map(|s| s.members.clone())
        .collect();
    assert_eq!(j2, vec![vec![1, 2, 4], vec![3, 5, 6]]);
    assert!(doc.families[0].sets.iter().all(|s| s.kind == "threshold"));
    assert_eq!(doc.unextended, 0);

    let out = run(&[
        "access-structure",
        "--t",
        "3",
        "--p",
        "7",
        "--ids",
        "1,2,3",
        "--format",
        "json",
    ]);
    let doc: AccessDoc = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc.families[0].sets.len(), 1);
    assert_eq!(doc.families[0].sets[0].members, vec![1, 2, 3]);

    let out = run(&[
        "access-structure",
        "--t",
        "5",
        "--p",
        "7",
        "--ids",
        "0,1,2,3,4,5",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn deal_example_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let path = deal_example(dir.path());
    let doc: SharesDoc = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let shares: Vec<u64> = doc.participants.iter().map(|s| s.share).collect();
    assert_eq!(shares, vec![1, 3, 1, 4, 1, 3]);
    assert_eq!(doc.manifest.command, "deal");
    assert_eq!(doc.manifest.output.as_deref(), path.to_str());

    let a = run(&["deal", "--t", "5", "--p", "7", "--n", "6", "--seed", "42"]);
    let b = run(&["deal", "--t", "5", "--p", "7", "--n", "6", "--seed", "42"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stderr(&a).contains("not a secure channel"));
    let doc: SharesDoc = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc.manifest.seed, Some(42));

    let out = run(&[
        "deal",
        "--t",
        "5",
        "--p",
        "7",
        "--n",
        "6",
        "--secrets",
        "1,2,3",
        "--blinding",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "deal",
        "--t",
        "5",
        "--p",
        "7",
        "--n",
        "6",
        "--secrets",
        "1,2,3,4",
        "--blinding",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn recover_examples() {
    let dir = tempfile::tempdir().unwrap();
    let path = deal_example(dir.path());
    let file = path.to_str().unwrap();

    let out = run(&[
        "recover",
        "--shares",
        file,
        "--subset",
        "1,2,4",
        "--j",
        "2",
        "--explain",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("3"));
    assert!(text.contains("privileged coalition (1, 2, 4)"));

    let out = run(&["recover", "--shares", file, "--subset", "1,2", "--j", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("not authorized for j = 2"));

    let out = run(&["recover", "--shares", file, "--j", "0"]);
    assert_eq!(stdout(&out), "1\n");

    let out = run(&["recover", "--shares", file, "--subset", "1,9", "--j", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn recover_rejects_malformed_files() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"version":1,"p":7,"t":5,"participants":[{"id":1,"share":9}],"manifest":{"command":"x","params":{},"version":"0"}}"#).unwrap();
    let out = run(&["recover", "--shares", bad.to_str().unwrap(), "--j", "0"]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::write(&bad, "not json").unwrap();
    let out = run(&["recover", "--shares", bad.to_str().unwrap(), "--j", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn audit_exit_codes_and_document() {
    let out = run(&["audit", "--t", "7", "--p", "101", "--n", "7"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("101^7"));

    let out = run(&[
        "audit",
        "--t",
        "4",
        "--p",
        "5",
        "--n",
        "4",
        "--domain",
        "unrestricted",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: AuditDoc = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(doc.pass && doc.ideal);
    assert_eq!(doc.entries.len(), 16 * 3);
    assert_eq!(doc.polynomials, 625);

    // the nonzero top coefficient removes one candidate value for some subsets
    let out = run(&["audit", "--t", "4", "--p", "5", "--n", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("leaky"));

    let out = run(&[
        "audit",
        "--t",
        "4",
        "--p",
        "5",
        "--n",
        "4",
        "--domain",
        "all-nonzero",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn documents_round_trip() {
    let out = run(&[
        "enumerate",
        "--t",
        "7",
        "--j",
        "3",
        "--p",
        "19",
        "--N",
        "13",
        "--format",
        "json",
    ]);
    let doc: CoalitionDoc = serde_json::from_str(&stdout(&out)).unwrap();
    let again: CoalitionDoc = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(doc, again);
    assert_eq!(doc.r_min, Some(5));

    let out = run(&["table", "--p", "13", "--format", "json"]);
    let doc: TableDoc = serde_json::from_str(&stdout(&out)).unwrap();
    let again: TableDoc = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(doc, again);

    let out = run(&[
        "audit", "--t", "4", "--p", "5", "--n", "4", "--format", "json",
    ]);
    let doc: AuditDoc = serde_json::from_str(&stdout(&out)).unwrap();
    let again: AuditDoc = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(doc, again);
    assert!(doc.entries.iter().any(|e| e.witness.is_some()));
}

#[test]
fn output_file_replaces_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    std::fs::write(&path, "stale").unwrap();
    let out = run(&[
        "enumerate",
        "--t",
        "7",
        "--j",
        "3",
        "--r",
        "4",
        "--p",
        "13",
        "--N",
        "13",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: CoalitionDoc = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc.count, 3);
    let leftovers = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(leftovers, 1);
}
