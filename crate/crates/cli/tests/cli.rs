use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn modlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modlie")).args(args).env_remove("MODLIE_SEED").output().expect("spawn modlie")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const NA2_P3: &str = "p 3\ndim 2\nbracket 1 2 : 0 1\n";
const NR3: &str = "# x, a1, a2\np 2\ndim 3\nbracket 1 2 : 0 0 1\nbracket 1 3 : 0 1 1\n";
const BAD_JACOBI: &str = "p 2\ndim 3\nbracket 1 2 : 0 0 1\nbracket 2 3 : 0 1 0\n";

#[test]
fn check_accepts_and_rejects() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "na2.lie", NA2_P3);
    assert!(modlie(&["check", &good]).status.success());
    let bad = write(dir.path(), "bad.lie", BAD_JACOBI);
    let out = modlie(&["check", &bad]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).to_lowercase().contains("jacobi"));
    let bad_pmap = write(dir.path(), "badp.lie", "p 2\ndim 2\nbracket 1 2 : 0 1\npmap 1 : 0 1\npmap 2 : 0 0\n");
    assert!(!modlie(&["pmap", "verify", &bad_pmap]).status.success());
}

#[test]
fn pmap_solve_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let na2 = write(dir.path(), "na2.lie", NA2_P3);
    let out = modlie(&["pmap", "solve", &na2]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("pmap 1 : 1 0") && text.contains("pmap 2 : 0 0"), "{text}");
    let solved = write(dir.path(), "solved.lie", &text);
    assert!(modlie(&["pmap", "verify", &solved]).status.success());
    let nr3 = write(dir.path(), "nr3.lie", NR3);
    assert!(!modlie(&["pmap", "solve", &nr3]).status.success());
}

#[test]
fn info_reports_structure() {
    let dir = tempfile::tempdir().unwrap();
    let nr3 = write(dir.path(), "nr3.lie", NR3);
    let text = stdout(&modlie(&["info", &nr3]));
    assert!(text.contains("dim: 3"));
    assert!(text.contains("restrictable: false"));
    assert!(text.contains("minimal-ideals: unique <0 1 0; 0 0 1>"), "{text}");
}

#[test]
fn envelope_of_nr3_has_dimension_four() {
    let dir = tempfile::tempdir().unwrap();
    let nr3 = write(dir.path(), "nr3.lie", NR3);
    for mode in ["paper", "compact"] {
        let host = dir.path().join(format!("host-{mode}.lie"));
        let out = modlie(&["envelope", &nr3, "--mode", mode, "--abelian-ideal", "0 1 0; 0 0 1", "--out", host.to_str().unwrap()]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let text = fs::read_to_string(&host).unwrap();
        assert!(text.contains("\ndim 4\n"), "{text}");
        // the emitted host is itself a valid restricted algebra
        assert!(modlie(&["pmap", "verify", host.to_str().unwrap()]).status.success());
    }
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let na2 = write(dir.path(), "na2.lie", NA2_P3);
    let m = dir.path().join("na2.mod");
    let c = dir.path().join("na2.cert");
    let out = modlie(&[
        "construct", "general", &na2, "--out", m.to_str().unwrap(), "--cert", c.to_str().unwrap(), "--seed", "9",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let cert = fs::read_to_string(&c).unwrap();
    assert!(cert.contains("module-dim: 3") && cert.contains("seed: 9") && cert.ends_with("result: pass\n"));
    assert!(modlie(&["verify-module", &na2, m.to_str().unwrap()]).status.success());

    let restricted = dir.path().join("na2r.mod");
    let out = modlie(&["construct", "restricted", &na2, "--out", restricted.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(modlie(&["verify-module", &na2, restricted.to_str().unwrap(), "--bound", "restricted"]).status.success());

    // a trivial module is not faithful
    let trivial = write(dir.path(), "triv.mod", "p 3\nalgdim 2\nmoddim 1\naction 1 :\n0\naction 2 :\n0\n");
    let out = modlie(&["verify-module", &na2, &trivial]);
    assert!(!out.status.success());
    assert!(stdout(&out).contains("check-faithful: fail"));
}

#[test]
fn construct_restricted_refuses_non_restrictable() {
    let dir = tempfile::tempdir().unwrap();
    let nr3 = write(dir.path(), "nr3.lie", NR3);
    assert!(!modlie(&["construct", "restricted", &nr3]).status.success());
    assert!(modlie(&["construct", "general", &nr3]).status.success());
}

#[test]
fn corpus_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = modlie(&["corpus", "--out-dir", dir.path().to_str().unwrap()]);
    let b = modlie(&["corpus", "--sequential"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("NR3_p2"));
    let cert = fs::read_to_string(dir.path().join("W15.general.cert")).unwrap();
    assert!(cert.ends_with("result: pass\n"));
    let entries = fs::read_dir(dir.path()).unwrap().count();
    assert!(entries >= 11 * 3);
}
