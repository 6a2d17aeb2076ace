use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn ramsey(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramsey")).args(args).output().expect("run ramsey")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ramsey-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn density_of_the_bowtie_board() {
    let o = ramsey(&["density", &fixture("bowtie-g.edges")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "61/36\n");
}

#[test]
fn densities_of_named_graphs() {
    assert_eq!(stdout(&ramsey(&["m2", "clique:4"])), "5/2\n");
    assert_eq!(stdout(&ramsey(&["m2onl", "cycle:5"])), "5/4\n");
    let r = stdout(&ramsey(&["report", "cycle:3"]));
    assert!(r.contains("smart-greedy exponent = 4/3"), "{r}");
}

#[test]
fn solve_exact_writes_reverifiable_files() {
    let cert = scratch("p3.cert");
    let table = scratch("p3.table");
    let o = ramsey(&[
        "solve-exact",
        "--target",
        "path:3",
        "--colors",
        "2",
        "--cap",
        "10",
        "--cert",
        cert.to_str().unwrap(),
        "--table",
        table.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("k*=7\n"));
    let v = ramsey(&["verify-cert", cert.to_str().unwrap()]);
    assert!(v.status.success(), "{}", stdout(&v));
    assert!(stdout(&v).starts_with("WIN"));
    // the table survives below the value, so Builder cannot win at cap 6
    let low = ramsey(&["verify-cert", cert.to_str().unwrap(), "--treesize", "6"]);
    assert_eq!(low.status.code(), Some(2));
    let sim = ramsey(&[
        "simulate",
        "--target",
        "path:3",
        "--n",
        "50",
        "--steps",
        "3",
        "--painter",
        &format!("table:{}", table.display()),
        "--trials",
        "20",
    ]);
    assert!(sim.status.success());
    assert!(stdout(&sim).starts_with("survived 20/20"), "{}", stdout(&sim));
}

#[test]
fn cycle_certificate_round_trip() {
    let cert = scratch("cycle3.cert");
    let o = ramsey(&["construct", "cycle:3", "--out", cert.to_str().unwrap()]);
    assert!(o.status.success());
    let v = ramsey(&["verify-cert", cert.to_str().unwrap(), "--density", "3/2"]);
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).starts_with("WIN"));
    let f = ramsey(&["verify-cert", cert.to_str().unwrap(), "--density", "7/5"]);
    assert_eq!(f.status.code(), Some(2));
    assert!(stdout(&f).contains("FAIL"));
    let p = ramsey(&["play", cert.to_str().unwrap(), "--painter", "random:4"]);
    assert!(p.status.success());
    assert!(stdout(&p).starts_with("WIN color"));
}

#[test]
fn every_construction_reverifies() {
    for spec in ["star:3,2", "path-doubling:3", "tree:path:2", "bowtie"] {
        let cert = scratch(&format!("{}.cert", spec.replace([':', ','], "_")));
        assert!(ramsey(&["construct", spec, "--out", cert.to_str().unwrap()]).status.success(), "{spec}");
        let v = ramsey(&["verify-cert", cert.to_str().unwrap()]);
        assert!(v.status.success(), "{spec}: {}", stdout(&v));
    }
    let cert = scratch("sigma.cert");
    let o = ramsey(&["construct", "path-doubling:3", "--sigma", "1,2,2,1", "--out", cert.to_str().unwrap()]);
    assert!(o.status.success());
}

#[test]
fn solve_against_greedy() {
    let o = ramsey(&["solve-vs-painter", "greedy", "--target", "path:3", "--cap", "12"]);
    assert_eq!(stdout(&o), "k*=7\n");
    let o = ramsey(&["solve-upper", "--target", "path:2", "--cap", "5"]);
    assert!(stdout(&o).starts_with("k*=3\n"));
}

#[test]
fn curve_csv_header() {
    let out = scratch("curve.csv");
    let o = ramsey(&[
        "curve", "--target", "path:2", "--n", "200", "--alphas", "0.5,2/3", "--painter", "optimal", "--trials", "10", "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let csv = std::fs::read_to_string(out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,alpha,N,trials,survived,rate,ci_low,ci_high"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn bad_arguments_exit_64() {
    assert_eq!(ramsey(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(ramsey(&["verify-cert", "x.cert", "--density", "1.5"]).status.code(), Some(64));
    assert_eq!(ramsey(&["m2", "wheel:5"]).status.code(), Some(64));
    assert_eq!(ramsey(&["simulate", "--target", "path:2", "--n", "5", "--steps", "2", "--painter", "nobody"]).status.code(), Some(64));
    assert_eq!(ramsey(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_output_is_stable() {
    let cases: [(&[&str], &str); 3] = [
        (&["--json", "density", "bowtie"], r#"{"density":"7/6","edges":7,"vertices":6}"#),
        (&["--json", "m2onl", "cycle:4"], r#"{"colors":2,"m2_onl":"4/3"}"#),
        (&["--json", "solve-vs-painter", "greedy", "--target", "path:2", "--cap", "5"], r#"{"cap":5,"k_star":3,"painter":"greedy"}"#),
    ];
    for (args, golden) in cases {
        let o = ramsey(args);
        assert!(o.status.success(), "{args:?}");
        assert_eq!(stdout(&o).trim_end(), golden, "{args:?}");
    }
    // a single edge always closes a monochromatic edge; which pair depends on the seed
    let args = ["--json", "simulate", "--target", "edge", "--n", "4", "--steps", "1", "--painter", "const:1", "--seed", "3"];
    let a = stdout(&ramsey(&args));
    assert!(a.starts_with(r#"{"color":1,"edges":1,"outcome":"mono","vertices":["#), "{a}");
    assert_eq!(a, stdout(&ramsey(&args)));
}
