use std::io::Write;
use std::process::{Command, Output};

fn geokit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geokit"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("geokit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::File::create(&path)
        .unwrap()
        .write_all(contents.as_bytes())
        .unwrap();
    path
}

#[test]
fn run_builtin_succeeds() {
    let o = geokit(&["run", "X1", "--param", "p=5"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("H1 = Z/5 (lower bound)"), "{s}");
    assert!(s.contains("5CP²#5CP̄²"));
}

#[test]
fn json_like_output_parses() {
    let o = geokit(&["run", "spinX", "--format", "json-like"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["euler"], 8);
    assert_eq!(v["result"]["profile"]["model"], "3(S²×S²)");
}

#[test]
fn assertion_failure_exits_one() {
    let o = geokit(&["run", "cs-verify"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL cs.relations_verified"));
}

#[test]
fn parse_errors_exit_two() {
    assert_eq!(geokit(&["run", "Yn", "--param", "n=1"]).status.code(), Some(2));
    assert_eq!(geokit(&["run", "no-such-recipe"]).status.code(), Some(2));
    let bad = temp_file("bad.recipe", "recipe bad\nstep fiber_sum a=A\n");
    let o = geokit(&["run", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":2:"));
}

#[test]
fn step_errors_exit_three() {
    let f = temp_file(
        "step.recipe",
        "recipe s\nstep product name=A g=2 h=1\nstep blow_up target=B\n",
    );
    let o = geokit(&["run", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("step 2"));
}

#[test]
fn recipe_file_round_trip() {
    let text = stdout(&geokit(&["recipes", "Yn"]));
    let f = temp_file("yn.recipe", &text);
    let o = geokit(&["run", f.to_str().unwrap(), "--param", "n=3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("H1 = 0"));
}

#[test]
fn blocks_list_is_stable() {
    let a = stdout(&geokit(&["blocks", "--list"]));
    assert_eq!(a, stdout(&geokit(&["blocks", "--list"])));
    assert!(a.lines().next().unwrap().starts_with("M "));
    assert!(a.contains("bmy=true"));
}

#[test]
fn dump_generators() {
    let s = stdout(&geokit(&["cs-verify", "--dump-generators"]));
    for m in ["A", "u", "v", "j", "b"] {
        assert!(s.lines().any(|l| l.starts_with(&format!("{m} "))), "{m}");
    }
}

#[test]
fn h1_and_snf_commands() {
    let p = temp_file("g.pres", "gen a b\nrel a^4\nrel [a,b]\n");
    assert_eq!(stdout(&geokit(&["h1", p.to_str().unwrap()])).trim(), "Z+Z/4");
    let m = temp_file("m.txt", "2 4\n6 8\n");
    let s = stdout(&geokit(&["snf", m.to_str().unwrap()]));
    assert!(s.contains("invariant factors: 2 4"), "{s}");
}

#[test]
fn sweep_prints_one_line_per_point() {
    let o = geokit(&["sweep", "Yn", "--axis", "n=2..4", "--axis", "m=1..2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 6);
}
