use std::io::Write;
use std::process::{Command, Output};

use paralift::commands::{lift, LiftKind};
use paralift::parse_model;
use paralift_core::expr::parse_expr;
use paralift_core::lift::tangent_chart;
use paralift_core::tensor::Tensor11;
use tempfile::NamedTempFile;

const STANDARD: &str = "chart x y t
tensor F = [[0,1,0],[1,0,0],[0,0,0]]
vector xi1 = [0,0,1]
oneform eta1 = [0,0,1]
metric G = [[1,0,0],[0,1,0],[0,0,1]]
scalar f = x*y
vector X = d/dx
signs eps1=-1 eps2=+1
structure F xi=xi1 eta=eta1
";

fn model(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn paralift(args: &[&str], env_seed: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_paralift"));
    cmd.args(args).env_remove("PARALIFT_SEED");
    if let Some(s) = env_seed {
        cmd.env("PARALIFT_SEED", s);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

#[test]
fn lift_command_prints_components() {
    let f = model(&format!("{STANDARD}connection y x x = 1\n"));
    let run = |target: &str, kind: &str| stdout(&paralift(&["lift", path(&f), "--target", target, "--kind", kind], None));
    assert_eq!(run("f", "c"), "x'*y + x*y'\n");
    assert_eq!(run("f", "h"), "0\n");
    assert_eq!(run("X", "v"), "d/dx'\n");
    let missing = paralift(&["lift", path(&model(STANDARD)), "--target", "f", "--kind", "h"], None);
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("connection"));
}

#[test]
fn printed_components_reparse() {
    let text = format!("{STANDARD}connection y x x = x*y - 1/2\nconnection t y x = j*t\n");
    let file = parse_model("m", &text).unwrap();
    let lc = tangent_chart(&file.chart).unwrap();
    let printed = lift(&file, "F", LiftKind::Horizontal).unwrap();
    let rows: Vec<Vec<_>> = printed
        .lines()
        .map(|l| l.trim_matches(['[', ']']).split(", ").map(|e| parse_expr(e, lc.total()).unwrap()).collect())
        .collect();
    let expected = lc.hlift_tensor(&Tensor11::from_ints(&file.chart, &[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0]]).unwrap(), file.connection.as_ref().unwrap()).unwrap();
    assert_eq!(rows, expected.rows());
}

#[test]
fn exit_codes() {
    assert_eq!(paralift(&["verify", path(&model(STANDARD))], None).status.code(), Some(0));
    let bad = paralift(&["verify", path(&model(&STANDARD.replace("eps1=-1", "eps1=+1")))], None);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stdout(&bad).contains("INCONSISTENT (eps1=+1, eps2=+1)"));
    assert!(stdout(&bad).contains("witness 2"));
    let malformed = paralift(&["verify", path(&model("chart x y\nscalar f = x + * y\n"))], None);
    assert_eq!(malformed.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&malformed.stderr).contains(":2:16:"));
    assert_eq!(paralift(&["verify", "/nonexistent/model"], None).status.code(), Some(1));
    assert_eq!(paralift(&["frobnicate"], None).status.code(), Some(1));
    assert_eq!(paralift(&["build-tm", path(&model(STANDARD)), "--mode", "horizontal"], None).status.code(), Some(1));
}

#[test]
fn build_tm_summaries() {
    let ok = paralift(&["build-tm", path(&model(STANDARD))], None);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("\ndefect coefficient 0; J^2 = I: PASS\n"));
    let lor = STANDARD.replace("[0,0,1]\nmetric", "[0,0,-1]\nmetric").replace("eps1=-1 eps2=+1", "eps1=+1 eps2=-1");
    let lor = lor.replace("[[1,0,0],[0,1,0],[0,0,1]]", "[[1,0,0],[0,1,0],[0,0,-1]]") + "profile a=-1 b=+1\n";
    let out = paralift(&["build-tm", path(&model(&lor))], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("defect coefficient 2; J^2 = I: FAIL; residual matches closed form: PASS"));
    assert_eq!(paralift(&["verify", path(&model(&lor))], None).status.code(), Some(0));
}

#[test]
fn seed_precedence_and_determinism() {
    let f = model(&format!("{STANDARD}options seed=11 points=4\n"));
    let from_file = stdout(&paralift(&["verify", path(&f)], None));
    assert!(from_file.contains("seed: 11\npoints: 4\n"));
    assert_eq!(from_file, stdout(&paralift(&["verify", path(&f)], None)));
    let from_env = stdout(&paralift(&["verify", path(&f)], Some("5")));
    assert!(from_env.contains("seed: 5\n"));
    let from_flag = stdout(&paralift(&["verify", path(&f), "--seed", "6"], Some("5")));
    assert!(from_flag.contains("seed: 6\n"));
    assert_ne!(from_env, from_flag);
}

#[test]
fn defect_and_selftest_with_file() {
    let f = model(&format!("{STANDARD}connection x y t = t^2\n"));
    let d = paralift(&["defect", path(&f), "--mode", "horizontal"], None);
    assert_eq!(d.status.code(), Some(0), "{}", stdout(&d));
    assert!(stdout(&d).contains("a=+1 b=-1: defect coefficient -2; J^2 = I: FAIL; residual matches closed form: PASS"));
    let s = paralift(&["selftest", path(&f), "--instances", "2", "--max-k", "1", "--max-r", "1", "--floating"], None);
    assert_eq!(s.status.code(), Some(0), "{}", stdout(&s));
    assert!(stdout(&s).contains("f^c = directional derivative (floating): 50/50 PASS"));
    assert!(stdout(&s).contains("status = pass\nexit = 0\n"));
}
