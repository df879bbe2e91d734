//! End-to-end exercises of the `rainbow` binary: exit codes, file plumbing,
//! and determinism. Library behavior itself is tested in the core crate.

use std::path::Path;
use std::process::Output;

use assert_cmd::Command;
use predicates::prelude::*;
use tempfile::tempdir;

fn rainbow() -> Command {
    Command::cargo_bin("rainbow").unwrap()
}

fn write_complete_graph(path: &Path, n: usize) {
    let mut body = format!("{n} 0\n");
    for u in 0..n {
        for v in (u + 1)..n {
            body.push_str(&format!("{u} {v} 0\n"));
        }
    }
    std::fs::write(path, body).unwrap();
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn no_arguments_prints_usage_and_exits_2() {
    rainbow()
        .assert()
        .code(2)
        .stderr(predicate::str::contains("Usage"));
}

#[test]
fn rc_check_accepts_rainbow_triangle() {
    let dir = tempdir().unwrap();
    let g = dir.path().join("tri.txt");
    std::fs::write(&g, "3 3\n0 1 1\n1 2 2\n0 2 3\n").unwrap();
    rainbow()
        .args(["rc-check", "--in"])
        .arg(&g)
        .assert()
        .success()
        .stdout(predicate::str::contains("rainbow connected: true"));
}

#[test]
fn rc_check_rejects_long_path_with_distance_witness() {
    let dir = tempdir().unwrap();
    let g = dir.path().join("path.txt");
    // Five edges but only four colors: the endpoints are too far apart.
    std::fs::write(&g, "6 4\n0 1 1\n1 2 2\n2 3 3\n3 4 4\n4 5 1\n").unwrap();
    rainbow()
        .args(["rc-check", "--witness", "--in"])
        .arg(&g)
        .assert()
        .code(1)
        .stdout(
            predicate::str::contains("rainbow connected: false")
                .and(predicate::str::contains("witness: distance 0 5 5")),
        );
}

#[test]
fn gen_is_deterministic_in_the_seed() {
    let args = ["gen", "--host", "two_blob", "--n", "30", "--delta", "0.1", "--seed", "9"];
    let a = rainbow().args(args).output().unwrap();
    let b = rainbow().args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(stdout_of(&a), stdout_of(&b));

    let mut other = rainbow();
    other.args(["gen", "--host", "two_blob", "--n", "30", "--delta", "0.1", "--seed", "10"]);
    assert_ne!(stdout_of(&a), stdout_of(&other.output().unwrap()));
}

#[test]
fn pipeline_chains_through_files() {
    let dir = tempdir().unwrap();
    let host = dir.path().join("host.txt");
    let wide = dir.path().join("wide.txt");
    let colored = dir.path().join("colored.txt");

    rainbow()
        .args(["gen", "--host", "complete_bipartite", "--n", "16", "--delta", "0.25", "--out"])
        .arg(&host)
        .assert()
        .success();
    rainbow()
        .args(["perturb", "--m", "20", "--in"])
        .arg(&host)
        .args(["--out"])
        .arg(&wide)
        .assert()
        .success();
    rainbow()
        .args(["color", "--r", "8", "--in"])
        .arg(&wide)
        .args(["--out"])
        .arg(&colored)
        .assert()
        .success();

    let text = std::fs::read_to_string(&colored).unwrap();
    assert!(text.starts_with("16 8\n"));
    // 4*12 bipartite edges plus the 20 random ones.
    assert_eq!(text.lines().count(), 1 + 48 + 20);
    rainbow().args(["rc-check", "--in"]).arg(&colored).assert().success();
}

#[test]
fn perturb_rejects_colored_input() {
    let dir = tempdir().unwrap();
    let g = dir.path().join("c.txt");
    std::fs::write(&g, "3 2\n0 1 1\n1 2 2\n").unwrap();
    rainbow()
        .args(["perturb", "--m", "1", "--in"])
        .arg(&g)
        .assert()
        .code(2)
        .stderr(predicate::str::contains("uncolored"));
}

#[test]
fn perturb_with_no_room_is_infeasible() {
    let dir = tempdir().unwrap();
    let g = dir.path().join("k6.txt");
    write_complete_graph(&g, 6);
    rainbow()
        .args(["perturb", "--m", "1", "--in"])
        .arg(&g)
        .assert()
        .code(3)
        .stderr(predicate::str::contains("non-edges"));
}

#[test]
fn kout_strict_needs_min_degree() {
    let dir = tempdir().unwrap();
    let g = dir.path().join("p4.txt");
    std::fs::write(&g, "4 0\n0 1 0\n1 2 0\n2 3 0\n").unwrap();
    rainbow().args(["kout", "--k", "2", "--in"]).arg(&g).assert().code(2);
    rainbow()
        .args(["kout", "--k", "2", "--capped", "--in"])
        .arg(&g)
        .assert()
        .success()
        .stdout(predicate::str::contains("4 0"));
}

#[test]
fn split_partitions_into_both_files() {
    let dir = tempdir().unwrap();
    let g = dir.path().join("k8.txt");
    let prime = dir.path().join("prime.txt");
    let rest = dir.path().join("rest.txt");
    write_complete_graph(&g, 8);
    rainbow()
        .args(["split", "--p", "0.4", "--in"])
        .arg(&g)
        .args(["--out-prime"])
        .arg(&prime)
        .args(["--out-rest"])
        .arg(&rest)
        .assert()
        .success();
    let a = std::fs::read_to_string(&prime).unwrap().lines().count() - 1;
    let b = std::fs::read_to_string(&rest).unwrap().lines().count() - 1;
    assert_eq!(a + b, 28);
}

#[test]
fn ham_finds_and_reports_a_cycle() {
    let dir = tempdir().unwrap();
    let g = dir.path().join("k8.txt");
    write_complete_graph(&g, 8);
    let out = rainbow().args(["ham", "--in"]).arg(&g).output().unwrap();
    assert!(out.status.success());
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap().split_whitespace().count(), 8);
    assert_eq!(lines.next().unwrap(), "verified 1/1 cycles");
}

#[test]
fn ham_reports_failure_on_disconnected_input() {
    let dir = tempdir().unwrap();
    let g = dir.path().join("disc.txt");
    std::fs::write(&g, "4 0\n0 1 0\n2 3 0\n").unwrap();
    rainbow()
        .args(["ham", "--in"])
        .arg(&g)
        .assert()
        .code(1)
        .stdout(predicate::str::contains("no hamilton cycle"));
}

#[test]
fn expansion_check_emits_csv_on_request() {
    let dir = tempdir().unwrap();
    let g = dir.path().join("k20.txt");
    write_complete_graph(&g, 20);
    rainbow()
        .args(["expansion-check", "--csv", "--samples", "50", "--in"])
        .arg(&g)
        .assert()
        .success()
        .stdout(predicate::str::contains("expansion_holds").and(predicate::str::contains("true")));
}

#[test]
fn rainbow_pack_packs_a_colored_complete_graph() {
    let dir = tempdir().unwrap();
    let g = dir.path().join("k10.txt");
    let colored = dir.path().join("k10c.txt");
    write_complete_graph(&g, 10);
    rainbow()
        .args(["color", "--r", "40", "--in"])
        .arg(&g)
        .args(["--out"])
        .arg(&colored)
        .assert()
        .success();
    let out = rainbow()
        .args(["rainbow-pack", "--t", "1", "--k", "2", "--split-p", "0.2", "--target", "12", "--in"])
        .arg(&colored)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout_of(&out);
    assert!(text.contains("packed 1/1 cycles"), "{text}");
    assert_eq!(text.lines().next().unwrap().split_whitespace().count(), 10);
}

#[test]
fn experiment_plan_file_and_flags_agree() {
    let dir = tempdir().unwrap();
    let plan = dir.path().join("plan.txt");
    std::fs::write(
        &plan,
        "property = rainbow_connected\nhost = two_blob\nn = 40\ndelta = 0.1\n\
         r = 6\nsweep = m\nvalues = 0, 200\ntrials = 4\nseed = 11\n",
    )
    .unwrap();
    let from_file = rainbow().args(["experiment", "--plan"]).arg(&plan).output().unwrap();
    let from_flags = rainbow()
        .args([
            "experiment",
            "--property",
            "rainbow_connected",
            "--host",
            "two_blob",
            "--n",
            "40",
            "--delta",
            "0.1",
            "--r",
            "6",
            "--sweep",
            "m",
            "--values",
            "0,200",
            "--trials",
            "4",
            "--seed",
            "11",
        ])
        .output()
        .unwrap();
    assert!(from_file.status.success() && from_flags.status.success());

    // Timing columns differ between runs; everything else must match.
    let strip = |out: &Output| -> Vec<String> {
        stdout_of(out)
            .lines()
            .map(|line| {
                let cols: Vec<&str> = line.split(',').collect();
                cols.iter()
                    .enumerate()
                    .filter(|(i, _)| *i != 9)
                    .map(|(_, c)| *c)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect()
    };
    assert_eq!(strip(&from_file), strip(&from_flags));
    let rows = strip(&from_file);
    assert_eq!(rows.len(), 3);
    assert!(rows[1].ends_with(",0,0.0000,11"));
    assert!(rows[2].ends_with(",4,1.0000,11"));
}

#[test]
fn experiment_thread_count_does_not_change_results() {
    let run = |threads: &str| -> Vec<String> {
        let out = rainbow()
            .args([
                "experiment",
                "--property",
                "rainbow_connected",
                "--host",
                "two_blob",
                "--n",
                "80",
                "--delta",
                "0.1",
                "--r",
                "6",
                "--values",
                "100,400",
                "--trials",
                "6",
                "--seed",
                "3",
                "--threads",
                threads,
            ])
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        stdout_of(&out)
            .lines()
            .map(|l| {
                let cols: Vec<&str> = l.split(',').collect();
                format!("{},{}", cols.get(7).unwrap_or(&""), cols.get(8).unwrap_or(&""))
            })
            .collect()
    };
    assert_eq!(run("1"), run("4"));
}
