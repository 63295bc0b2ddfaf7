use std::process::{Command, Output};

use bcdkit::cli::document::netlist_from_json;

fn bcdkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bcdkit"))
        .args(args)
        .env_remove("BCDKIT_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn generate_shapes() {
    let o = bcdkit(&["generate", "ncla4"]);
    assert!(o.status.success());
    let nl = netlist_from_json(&stdout(&o)).unwrap();
    assert_eq!((nl.inputs().len(), nl.outputs().len()), (9, 5));

    let o = bcdkit(&["generate", "bcd-cs", "--digits", "16"]);
    assert!(o.status.success());
    let nl = netlist_from_json(&stdout(&o)).unwrap();
    assert_eq!((nl.inputs().len(), nl.outputs().len()), (129, 65));
}

#[test]
fn generate_then_reload() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mcla4.json");
    let p = path.to_str().unwrap();
    assert!(bcdkit(&["generate", "mcla4", "-o", p]).status.success());
    let o = bcdkit(&["cost", p]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("136"));
    let o = bcdkit(&["export", p]);
    assert_eq!(stdout(&o), std::fs::read_to_string(&path).unwrap());
}

#[test]
fn sim_reads_buses_msb_first() {
    let o = bcdkit(&["sim", "ncla4", "--inputs", "A=0101,B=0111,C0=0"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("S=1100"), "{text}");
    assert!(text.contains("C4=0"), "{text}");
}

#[test]
fn check_passes_on_generated_circuits() {
    let o = bcdkit(&["check", "bcd-ncla", "--digits", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = bcdkit(&["check", "ripple4", "--equiv", "ncla4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn exit_codes() {
    assert_eq!(bcdkit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bcdkit(&["cost", "no-such-circuit"]).status.code(), Some(2));
    assert_eq!(
        bcdkit(&["cost", "/nonexistent/x.json"]).status.code(),
        Some(3)
    );

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"version\": 1}").unwrap();
    assert_eq!(
        bcdkit(&["check", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );

    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, "{\"bogus\": 1}").unwrap();
    assert_eq!(
        bcdkit(&["cost", "ncla4", "--config", cfg.to_str().unwrap()])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(bcdkit(&["power", "ncla4"]).status.code(), Some(4));
}

#[test]
fn check_reports_mismatch() {
    let o = bcdkit(&["check", "ripple4", "--equiv", "pga"]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn json_output_parses() {
    let o = bcdkit(&["delay", "ripple4", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.is_object());
    let o = bcdkit(&["power", "ncla4", "--random", "200", "--json", "--seed", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let again = bcdkit(&["power", "ncla4", "--random", "200", "--json", "--seed", "3"]);
    assert_eq!(o.stdout, again.stdout);
}
