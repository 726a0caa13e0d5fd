use std::path::Path;
use std::process::{Command, Output};

fn crossbi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crossbi")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn build_worked_example_has_dimension_32() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path(), "k.txt");
    let o = crossbi(&["build", "two_sided_crossed", "kc2_kc4", "-o", &out]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# crossbi build two_sided_crossed kc2_kc4\n"));
    assert!(text.contains("carrier AHB = A H B"), "{}", &text[..400]);
    let inst = crossbi::instance::Instance::parse(&text).unwrap();
    assert_eq!(inst.to_built().unwrap().carrier.dim(), 32);
}

#[test]
fn build_on_trivial_has_dimension_1() {
    let o = crossbi(&["build", "two_sided_crossed", "trivial"]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("dimension 1"));
}

#[test]
fn missing_tau_is_an_input_error_naming_tau() {
    let dir = tempfile::tempdir().unwrap();
    let full = path(dir.path(), "full.txt");
    assert_eq!(code(&crossbi(&["catalog", "dump", "kc2_kc4", "-o", &full])), 0);
    let mut inst = crossbi::instance::Instance::parse(&std::fs::read_to_string(&full).unwrap()).unwrap();
    inst.maps.retain(|(n, _)| n != "tau");
    let cut = path(dir.path(), "notau.txt");
    std::fs::write(&cut, inst.write()).unwrap();
    let o = crossbi(&["build", "two_sided_crossed", &cut]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("tau"), "{}", stderr(&o));
}

#[test]
fn check_reports_the_i1_witness() {
    let o = crossbi(&["check", "I1", "kc2_kc4"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("I1  FAIL     at a: lhs = x % 1 % x"), "{}", stdout(&o));
}

#[test]
fn check_trivial_passes() {
    let o = crossbi(&["check", "LB1", "trivial"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "# check LB1 trivial\n# field q\nLB1  pass\n");
}

#[test]
fn check_gate_on_worked_example_fails_consistently() {
    let o = crossbi(&["check", "thm2.3", "kc2_kc4"]);
    assert_eq!(code(&o), 1);
    let s = stdout(&o);
    assert!(s.contains("thm2.3/main/BT1  FAIL"), "{s}");
    assert!(s.contains("thm2.3           FAIL     (iff-consistent: true)"), "{s}");
}

#[test]
fn unknown_id_and_bad_usage_exit_2() {
    assert_eq!(code(&crossbi(&["check", "nonsense", "kc2_kc4"])), 2);
    assert_eq!(code(&crossbi(&["check", "LB1"])), 2);
    assert_eq!(code(&crossbi(&["frobnicate"])), 2);
    assert_eq!(code(&crossbi(&["--field", "fp:4", "check", "LB1", "trivial"])), 2);
}

#[test]
fn parse_errors_carry_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let bad = path(dir.path(), "bad.txt");
    std::fs::write(&bad, "field q\nspace A { 1 x\n").unwrap();
    let o = crossbi(&["check", "LB1", &bad]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("parse error at 3:1"), "{}", stderr(&o));
}

#[test]
fn oracles_on_the_built_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path(), "kb.txt");
    assert_eq!(code(&crossbi(&["build", "two_sided_bialgebra", "kc2_kc4", "-o", &out])), 0);
    assert_eq!(code(&crossbi(&["oracle", "bialg", &out])), 0);
    let o = crossbi(&["oracle", "antipode", &out]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("at 1|a|1: lhs = x|1|x"), "{}", stdout(&o));
    let o = crossbi(&["oracle", "coassoc", "kc2_kc4", "--construction", "two_sided_bialgebra"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn catalog_dump_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["kc2_kc4", "trivial_1_2_3"] {
        let first = path(dir.path(), "a.txt");
        assert_eq!(code(&crossbi(&["catalog", "dump", name, "-o", &first])), 0);
        let second = path(dir.path(), "b.txt");
        assert_eq!(code(&crossbi(&["catalog", "dump", &first, "-o", &second])), 0);
        let a = std::fs::read_to_string(&first).unwrap();
        let b = std::fs::read_to_string(&second).unwrap();
        assert_eq!(a, b, "{name}");
    }
    let o = crossbi(&["catalog", "list"]);
    assert!(stdout(&o).starts_with("kc2_kc4"));
}

#[test]
fn random_bundles_are_reproducible() {
    let args = ["--seed", "7", "catalog", "random", "--dims", "2,2,1", "--gate", "prop1.1"];
    let a = crossbi(&args);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(stdout(&a), stdout(&crossbi(&args)));
}

#[test]
fn json_reports_are_identical_across_worker_counts() {
    let run = |jobs: &str| stdout(&crossbi(&["--json", "--jobs", jobs, "check", "prop2.1", "I1", "kc2_kc4"]));
    let one = run("1");
    assert_eq!(one, run("4"));
    let v: serde_json::Value = serde_json::from_str(&one).unwrap();
    assert_eq!(v["exit"], 1);
    assert!(v["records"].as_array().unwrap().iter().all(|r| r.get("wall_ms").is_none()));
}

#[test]
fn concordance_lists_every_id() {
    let o = crossbi(&["--json", "concordance"]);
    assert_eq!(code(&o), 0);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    for id in crossbi::conditions::closed_id_set() {
        assert!(rows.iter().any(|r| r["id"] == id.as_str()), "{id}");
    }
}

#[test]
fn list_registries() {
    assert!(stdout(&crossbi(&["list", "constructions"])).contains("two_sided_crossed"));
    assert!(stdout(&crossbi(&["list", "oracles"])).contains("antipode"));
    assert!(stdout(&crossbi(&["list", "gates"])).contains("thm_bialg_2sec"));
}
