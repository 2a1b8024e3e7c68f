use std::path::Path;
use std::process::{Command, Output};

fn henon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_henon")).args(args).output().expect("run henon")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn solve_writes_symmetric_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("emden.txt");
    let o = henon(&["solve", "--N", "1", "--l", "0", "--p", "3", "--space", "V1", "--M", "40", "--out", path(&out)]);
    assert!(o.status.success(), "{o:?}");
    let text = std::fs::read_to_string(&out).unwrap();
    let (header, body) = text.split_once("\n\n").unwrap();
    assert!(header.contains("space = V1"));
    let rows: Vec<&str> = body.lines().filter(|l| !l.trim().is_empty()).collect();
    assert_eq!(rows.len(), 20);
    // only odd indices survive the reflection symmetry
    assert!(rows.iter().all(|r| r.split_whitespace().next().unwrap().parse::<usize>().unwrap() % 2 == 1));
}

#[test]
fn verify_proves_emden_solution() {
    let dir = tempfile::tempdir().unwrap();
    let sol = dir.path().join("s.txt");
    let report = dir.path().join("r.txt");
    assert!(henon(&["solve", "--N", "1", "--space", "V1", "--M", "40", "--out", path(&sol)]).status.success());
    let o = henon(&["verify", path(&sol), "--out", path(&report)]);
    assert!(o.status.success(), "{o:?}");
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.contains("verdict          = Proven"), "{text}");
    assert_eq!(text, stdout(&o));
}

#[test]
fn zero_solution_is_proven_with_zero_radius() {
    let dir = tempfile::tempdir().unwrap();
    let sol = dir.path().join("z.txt");
    let o = henon(&["solve", "--N", "1", "--space", "V1", "--M", "6", "--seed", "0.5:0", "--out", path(&sol)]);
    assert!(o.status.success(), "{o:?}");
    let out = stdout(&henon(&["verify", path(&sol)]));
    assert!(out.contains("verdict          = Proven"), "{out}");
    assert!(out.contains("rho              = [0.00000000e0, 0.00000000e0]"), "{out}");
}

#[test]
fn crude_solution_exits_not_proven() {
    let dir = tempfile::tempdir().unwrap();
    let sol = dir.path().join("c.txt");
    assert!(henon(&["solve", "--N", "1", "--space", "V1", "--M", "4", "--out", path(&sol)]).status.success());
    let o = henon(&["verify", path(&sol)]);
    assert_eq!(o.status.code(), Some(4), "{o:?}");
    assert!(stdout(&o).contains("Failed"));
}

#[test]
fn usage_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let sol = dir.path().join("s.txt");
    let bad_space = henon(&["solve", "--N", "1", "--space", "V2", "--M", "10", "--out", path(&sol)]);
    assert_eq!(bad_space.status.code(), Some(3));
    assert!(!sol.exists());
    assert_eq!(henon(&["bogus"]).status.code(), Some(3));
    assert_eq!(henon(&["solve", "--N", "3"]).status.code(), Some(3));
    assert!(henon(&["solve", "--N", "1", "--space", "V1", "--M", "6", "--out", path(&sol)]).status.success());
    assert_eq!(henon(&["verify", path(&sol), "--tau", "-1"]).status.code(), Some(3));
    assert_eq!(henon(&["--help"]).status.code(), Some(0));
}

#[test]
fn curve_writes_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let sol = dir.path().join("a.txt");
    let csv = dir.path().join("a.csv");
    let svg = dir.path().join("a.svg");
    let o = henon(&[
        "solve", "--N", "1", "--l", "2", "--space", "Full", "--M", "30", "--seed", "preset:off-center", "--out",
        path(&sol),
    ]);
    assert!(o.status.success(), "{o:?}");
    let o = henon(&[
        "curve", "--from", path(&sol), "--l-end", "1.8", "--l-step", "0.1", "--out", path(&csv), "--svg", path(&svg),
    ]);
    assert!(o.status.success(), "{o:?}");
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "l,branch_id,h10_norm,peak,newton_iters,converged");
    assert_eq!(lines.len(), 4);
    assert!(lines[1..].iter().all(|l| l.ends_with("true")));
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn eigs_and_constants_print() {
    let dir = tempfile::tempdir().unwrap();
    let sol = dir.path().join("s.txt");
    assert!(henon(&["solve", "--N", "1", "--space", "V1", "--M", "20", "--out", path(&sol)]).status.success());
    let out = stdout(&henon(&["eigs", path(&sol), "--k", "2"]));
    assert!(out.starts_with("mu_1 = -2.0000"), "{out}");
    assert!(out.contains("negative = 1"));
    let out = stdout(&henon(&["constants", "--N", "2", "--l", "2", "--M", "40"]));
    assert!(out.contains("Cp1    = [3.18309886e-1, 3.18309887e-1]"), "{out}");
}
