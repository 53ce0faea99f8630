use alia_core::export::{json_round_trip, RootTable};
use std::process::{Command, Output};

fn alia(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alia")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn trivial_group_verifies() {
    let o = alia(&["verify", "--group", "C1", "--type", "A1", "--labels", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn nmap_matches_icosahedral_column() {
    let o = alia(&["nmap", "--group", "Y", "--k", "-30..30", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows.len(), 32);
    assert_eq!(rows[0], "k,n1,n2,n3");
    assert_eq!(rows[1], "30,0,0,1");
    assert_eq!(rows[2], "28,4,2,0");
    assert_eq!(rows[16], "0,0,0,0");
    assert_eq!(rows[17], "-2,4,2,1");
    assert_eq!(rows[31], "-30,0,0,1");
}

#[test]
fn g2_latex_has_table_shape() {
    let o = alia(&["structure", "--group", "Y", "--orbit", "smallest", "--type", "G2", "--labels", "2,2", "--format", "latex"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("\\begin{array}{rr|rrrrrrrrrrrr}\n"));
    assert!(out.ends_with("\\end{array}\n"));
    assert_eq!(out.lines().count(), 2 + 1 + 12 + 2);
}

#[test]
fn output_is_deterministic_and_json_round_trips() {
    let args = ["structure", "--group", "O", "--orbit", "largest", "--type", "B2", "--format", "json"];
    let a = stdout(&alia(&args));
    assert_eq!(a, stdout(&alia(&args)));
    assert_eq!(json_round_trip::<RootTable>(&a).unwrap(), a);
    let g = stdout(&alia(&["groups", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&g).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 26);
}

#[test]
fn exceptional_tables_default_to_positive_roots() {
    let e7 = stdout(&alia(&["structure", "--group", "Y", "--type", "E7", "--format", "json"]));
    let t = RootTable::from_json(&e7).unwrap();
    assert!(t.positive_only);
    assert_eq!(t.roots.len(), 63);
    let full = stdout(&alia(&["structure", "--group", "Y", "--type", "E7", "--format", "json", "--positive-only", "false"]));
    assert_eq!(RootTable::from_json(&full).unwrap().roots.len(), 126);
    let g2 = stdout(&alia(&["structure", "--group", "Y", "--type", "G2", "--format", "json"]));
    assert!(!RootTable::from_json(&g2).unwrap().positive_only);
}

#[test]
fn argument_errors_exit_2() {
    for args in [
        &["nmap", "--group", "X"][..],
        &["structure", "--group", "Y", "--type", "G2", "--labels", "2"],
        &["structure", "--group", "Y", "--type", "A2", "--format", "dot"],
        &["graph", "--group", "Y", "--type", "A2", "--format", "csv"],
        &["nmap"],
        &["frobnicate"],
    ] {
        let o = alia(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
    let o = Command::new(env!("CARGO_BIN_EXE_alia")).args(["groups"]).env("ALIA_THREADS", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn thread_cap_does_not_change_output() {
    let args = ["structure", "--group", "T", "--type", "F4", "--format", "csv"];
    let one = Command::new(env!("CARGO_BIN_EXE_alia")).args(args).env("ALIA_THREADS", "1").output().unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, alia(&args).stdout);
}

#[test]
fn writes_to_output_file() {
    let path = std::env::temp_dir().join(format!("alia-cli-{}.dot", std::process::id()));
    let o = alia(&["graph", "--group", "Y", "--type", "A2", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let dot = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(dot.starts_with("graph omega_J {"));
    assert_eq!(dot.matches("graph omega_").count(), 2);
}

#[test]
fn other_commands_run() {
    for args in [
        &["groups"][..],
        &["groundforms", "--group", "O", "--format", "json"],
        &["pk", "--group", "T", "--k", "-4..4"],
        &["molien", "--group", "Y", "--k", "0..60"],
        &["intertwine", "--group", "O", "--type", "A2"],
        &["normalform", "--group", "Y", "--type", "A3"],
        &["dims", "--group", "Y", "--type", "A5", "--labels", "2,2,0,2,2"],
        &["verify", "--group", "Y", "--type", "G2"],
    ] {
        let o = alia(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stdout.is_empty());
    }
    let dims = stdout(&alia(&["dims", "--group", "Y", "--type", "A5", "--labels", "2,2,0,2,2"]));
    assert!(dims.starts_with("fixed points: 7 + 11 + 19 = 37;"));
}

#[test]
fn orbit_out_of_range_exits_2() {
    let o = alia(&["intertwine", "--group", "C2", "--orbit", "3"]);
    assert_eq!(o.status.code(), Some(2));
}
