use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn vminor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vminor")).args(args).env_remove("VMINOR_BUDGET").output().expect("spawn")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let d = std::env::temp_dir().join(format!("vminor-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&d).unwrap();
        Scratch(d)
    }
    fn file(&self, name: &str, body: &str) -> String {
        let p = self.0.join(name);
        std::fs::write(&p, body).unwrap();
        p.to_str().unwrap().to_string()
    }
    fn path(&self) -> &Path {
        &self.0
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

// path 0-1-2-3-4
const PATH5: &str = "5 4\n0\n1\n2\n3\n4\n0 1\n1 2\n2 3\n3 4\n";

#[test]
fn dh_star_plan_verifies() {
    let s = Scratch::new("dh");
    let g = s.file("g.txt", PATH5);
    let o = vminor(&["dh-star", "--graph", &g, "--targets", "0,2,4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = json(&o);
    assert_eq!(out["status"], "plan");
    let p = s.file("p.json", &out["plan"].to_string());
    let center = out["center"].to_string();
    let center = center.trim_matches('"');
    let leaves: Vec<&str> = ["0", "2", "4"].into_iter().filter(|v| *v != center).collect();
    let t = s.file("t.txt", &format!("3 2\n0\n2\n4\n{center} {}\n{center} {}\n", leaves[0], leaves[1]));
    let v = vminor(&["verify", "--graph", &g, "--target", &t, "--plan", &p]);
    assert_eq!(v.status.code(), Some(0), "{}", String::from_utf8_lossy(&v.stdout));
    assert_eq!(json(&v)["pass"], true);
    assert!(s.path().exists());
}

#[test]
fn dh_star_across_components_is_no() {
    let s = Scratch::new("comp");
    let g = s.file("g.txt", "4 2\na\nb\nc\nd\na b\nc d\n");
    let o = vminor(&["dh-star", "--graph", &g, "--targets", "a,c"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["status"], "not-vertex-minor");
}

#[test]
fn broken_plan_fails_verification() {
    let s = Scratch::new("bad");
    let g = s.file("g.txt", PATH5);
    // measuring 1 and 3 in Z isolates 0, 2 and 4
    let t = s.file("t.txt", "3 2\n0\n2\n4\n2 0\n2 4\n");
    let p = s.file("p.json", r#"[{"op":"MZ","v":1},{"op":"MZ","v":3}]"#);
    let v = vminor(&["verify", "--graph", &g, "--target", &t, "--plan", &p]);
    assert_eq!(v.status.code(), Some(1));
    assert_eq!(json(&v)["pass"], false);
}

#[test]
fn check_vm_yes_no_and_budget() {
    let s = Scratch::new("vm");
    let g = s.file("g.txt", PATH5);
    let star = s.file("star.txt", "3 2\n0\n2\n4\n2 0\n2 4\n");
    let o = vminor(&["check-vm", "--graph", &g, "--target", &star]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["status"], "yes");

    // a 4-cycle on 0,1,2,3 is not a vertex-minor of a tree path
    let c4 = s.file("c4.txt", "4 4\n0\n1\n2\n3\n0 1\n1 2\n2 3\n0 3\n");
    let o = vminor(&["check-vm", "--graph", &g, "--target", &c4]);
    assert_eq!(o.status.code(), Some(1));

    let o = vminor(&["check-vm", "--graph", &g, "--target", &c4, "--budget", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_vminor"))
        .args(["check-vm", "--graph", &g, "--target", &c4])
        .env("VMINOR_BUDGET", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn small_triangle() {
    let s = Scratch::new("small");
    let g = s.file("g.txt", PATH5);
    let o = vminor(&["small", "--graph", &g, "--target", "0,2,4", "--shape", "triangle"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["status"], "plan");
    let o = vminor(&["small", "--graph", &g, "--target", "0,1,2,3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn ksoet_on_word_multigraph() {
    let s = Scratch::new("ks");
    let o = vminor(&["convert", "--word", "a b c a b c", "--to", "multigraph"]);
    assert_eq!(o.status.code(), Some(0));
    let f = s.file("f.txt", &String::from_utf8(o.stdout).unwrap());
    let o = vminor(&["ksoet", "--multigraph", &f, "--marked", "a,b,c"]);
    assert_eq!(o.status.code(), Some(0));
    let out = json(&o);
    assert_eq!(out["exists"], true);
    assert_eq!(out["witness_word"].as_str().unwrap().split(' ').count(), 6);
}

#[test]
fn convert_word_to_alternance_graph() {
    let o = vminor(&["convert", "--word", "a b a b", "--to", "json"]);
    let out = json(&o);
    assert_eq!(out["edges"].as_array().unwrap().len(), 1);
    let o = vminor(&["convert", "--word", "a b a b", "--to", "multigraph"]);
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("2 4\n"));
}

#[test]
fn generators_and_reduction() {
    let s = Scratch::new("gen");
    let o = vminor(&["gen-cubic", "--n", "8", "--seed", "5", "--text"]);
    assert_eq!(o.status.code(), Some(0));
    let c = s.file("c.txt", &String::from_utf8(o.stdout).unwrap());
    let o = vminor(&["expand", "--cubic", &c]);
    let e = json(&o);
    assert_eq!(e["vertices"].as_array().unwrap().len(), 8 * 6);
    assert_eq!(e["edges"].as_array().unwrap().len(), 8 * 12);
    let o = vminor(&["reduce", "cubham-to-starvm", "--cubic", &c]);
    let r = json(&o);
    assert_eq!(r["targets"].as_array().unwrap().len(), 8);

    let o = vminor(&["gen-dh", "--n", "12", "--seed", "1"]);
    let d = json(&o);
    assert_eq!(d["graph"]["vertices"].as_array().unwrap().len(), 12);
    let o = vminor(&["gen-dh", "--n", "12", "--seed", "1", "--dot"]);
    assert!(json(&o)["graph"].as_str().unwrap().starts_with("graph G {"));
    assert_eq!(vminor(&["gen-cubic", "--n", "5"]).status.code(), Some(3));
}

#[test]
fn bench_emits_one_line_per_size() {
    let o = vminor(&["bench", "--sizes", "10..30:10", "--trials", "3", "--threads", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let ns: Vec<u64> = text.lines().map(|l| serde_json::from_str::<Value>(l).unwrap()["n"].as_u64().unwrap()).collect();
    assert_eq!(ns, vec![10, 20, 30]);
    let o = vminor(&["bench", "--algo", "brute", "--sizes", "6,7", "--trials", "2"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 2);
}

#[test]
fn exit_codes_for_bad_usage() {
    assert_eq!(vminor(&["--help"]).status.code(), Some(0));
    assert_eq!(vminor(&["nope"]).status.code(), Some(3));
    assert_eq!(vminor(&["verify", "--graph", "/nonexistent", "--target", "/x", "--plan", "/y"]).status.code(), Some(3));
    assert_eq!(vminor(&["bench", "--sizes", "9..3"]).status.code(), Some(3));
}
