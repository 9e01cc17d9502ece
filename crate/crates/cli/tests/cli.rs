use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_coxdeform"))
}

fn example(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn census_to_five_facets() {
    let o = run(&["census", "--max-facets", "5"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows, ["4 64 64 1.000000", "5 654 768 0.851563"]);
}

#[test]
fn machine_census_is_identical_across_worker_counts() {
    let a = run(&["--machine", "census", "--max-facets", "6", "--enumerate", "--workers", "1"]);
    let b = run(&["--machine", "census", "--max-facets", "6", "--enumerate", "--workers", "3"]);
    let c = run(&["census", "--max-facets", "6", "--machine"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(stdout(&a).lines().last(), Some("census 6 7130 14848 0.480199"));
}

#[test]
fn dims_of_example_files() {
    let o = run(&["dims", path_str(&example("ex71.poly"))]);
    assert_eq!(stdout(&o), "dim C(G)=2 dim RS=1 dim restricted=1\n");
    let o = run(&["--machine", "dims", path_str(&example("ex72.poly"))]);
    assert_eq!(stdout(&o), "dims 4 3 1\n");
}

#[test]
fn cube_all_three_is_not_orderable() {
    let o = run(&["orderable", path_str(&example("cube-all3.poly"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "NOT ORDERABLE\n");
    let o = run(&["orderable", path_str(&example("ex71.poly"))]);
    assert!(stdout(&o).starts_with("ORDERABLE "));
}

#[test]
fn normal_type_and_classify() {
    let o = run(&["normal-type", path_str(&example("ex71.poly"))]);
    assert_eq!(stdout(&o), "normal\n");
    let o = run(&["--machine", "classify", path_str(&example("ex72.poly"))]);
    assert_eq!(stdout(&o), "component 1,2,3,4,5,6 large\n");

    let dir = tempfile::tempdir().unwrap();
    let tetra = dir.path().join("t.poly");
    let mut text = String::from("polytope t\nfacets 4\n");
    for (i, j) in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)] {
        text.push_str(&format!("edge {i} {j} 2\n"));
    }
    text.push_str("vertex 1 2 3\nvertex 1 2 4\nvertex 1 3 4\nvertex 2 3 4\n");
    fs::write(&tetra, text).unwrap();
    assert_eq!(stdout(&run(&["normal-type", path_str(&tetra)])), "not-normal finite-group\n");
    assert_eq!(stdout(&run(&["classify", path_str(&tetra)])).lines().count(), 4);
}

#[test]
fn vinberg_check_report() {
    let o = run(&["vinberg-check", path_str(&example("ex71.poly")), path_str(&example("ex71-d5_4.sys"))]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 6);
    assert!(out.lines().all(|l| l.starts_with("PASS V")));
    let o = run(&["vinberg-check", path_str(&example("ex72.poly")), path_str(&example("ex71-d5_4.sys"))]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l.starts_with("FAIL V4")));
}

#[test]
fn fiber_output_round_trips_through_vinberg_check() {
    let o = run(&["fiber", "--example", "7.1"]);
    let out = stdout(&o);
    assert!(out.contains("free: t3_1"));
    assert!(out.contains("beta_3(w_5): 1/(t3_1 + 2)"));
    assert_eq!(out.lines().filter(|l| l.starts_with("w_")).count(), 6);

    let o = run(&["fiber", "--example", "7.2", "--at", "d1=8/5,d2=2,d3=1/2,t1_1=-201/500"]);
    assert!(o.status.success());
    let dir = tempfile::tempdir().unwrap();
    let sys = dir.path().join("s.sys");
    fs::write(&sys, o.stdout).unwrap();
    let o = run(&["vinberg-check", path_str(&example("ex72.poly")), path_str(&sys)]);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 6);
}

#[test]
fn scan_is_identical_across_worker_counts() {
    let args = ["--machine", "scan", "--example", "7.2", "--path", "d1=s,d2=2,d3=1/2", "--range", "3/2:8/5", "--steps", "40"];
    let a = run(&[&args[..], &["--workers", "1"]].concat());
    let b = run(&[&args[..], &["--workers", "4"]].concat());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    let t: Vec<&str> = out.lines().filter(|l| l.starts_with("transition")).collect();
    assert_eq!(t.len(), 2);
    let first = (193.0 + 3.0 * 697f64.sqrt()) / 176.0;
    let second = 4.0 / 19.0 * (5.0 + 6f64.sqrt());
    for (line, (x, counts)) in t.iter().zip([(first, "0 1"), (second, "1 2")]) {
        let f: Vec<&str> = line.split(' ').collect();
        let (lo, hi): (f64, f64) = (f[1].parse().unwrap(), f[2].parse().unwrap());
        assert!(lo <= x + 1e-9 && x <= hi + 1e-9 && hi - lo < 1e-8, "{line}");
        assert!(line.ends_with(counts), "{line}");
    }
    assert_eq!(out.lines().filter(|l| l.starts_with("count")).count(), 41);
}

#[test]
fn scan_with_grid_column() {
    let o = run(&["scan", "--example", "7.1", "--range", "6/5:3/2", "--steps", "3", "--inner=-20:0", "--grid", "400"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).take(4).collect();
    assert_eq!(rows, ["1.200000 1 1", "1.300000 1 1", "1.400000 0 0", "1.500000 0 0"]);
    let last = out.lines().last().unwrap();
    assert!(last.starts_with("transition in [1.33333333") && last.ends_with("1 -> 0"), "{last}");
}

#[test]
fn invalid_input_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.poly");
    fs::write(&bad, "polytope x\nfacets 4\nedge 1 2 two\n").unwrap();
    let o = run(&["dims", path_str(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    let text = fs::read_to_string(example("ex71.poly")).unwrap();
    let first_vertex = text.lines().find(|l| l.starts_with("vertex")).unwrap();
    fs::write(&bad, text.replace(&format!("{first_vertex}\n"), "")).unwrap();
    let o = run(&["orderable", path_str(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Euler"));

    assert_eq!(run(&["dims", "/nonexistent/file.poly"]).status.code(), Some(1));
    assert_eq!(run(&["census", "--max-facets", "8"]).status.code(), Some(1));
    assert_eq!(run(&["census", "--max-facets", "5", "--workers", "0"]).status.code(), Some(1));
    assert_eq!(run(&["fiber", "--example", "7.3"]).status.code(), Some(1));
    assert_eq!(run(&["scan", "--example", "7.2", "--range", "2:1"]).status.code(), Some(1));
    assert_eq!(run(&["scan", "--example", "7.2", "--path", "d1=s"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn enumerate_and_catalog_override() {
    let dir = tempfile::tempdir().unwrap();
    let f6 = dir.path().join("f6");
    let o = run(&["enumerate", "--facets", "6", "--out", path_str(&f6), "--workers", "2"]);
    assert!(o.status.success());
    let mut names: Vec<String> = fs::read_dir(&f6).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    assert_eq!(names.len(), 7);
    let bundled = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/catalog/f6");
    for n in &names {
        assert_eq!(fs::read(f6.join(n)).unwrap(), fs::read(bundled.join(n)).unwrap(), "{n}");
    }

    let census = |root: &Path| {
        bin().args(["--machine", "census", "--max-facets", "6"]).env("COXDEFORM_CATALOG_DIR", root).output().unwrap()
    };
    let o = census(dir.path());
    assert_eq!(stdout(&o).lines().last(), Some("census 6 7130 14848 0.480199"));

    // Dropping an entry changes the census, so the override is really read.
    fs::remove_file(f6.join(&names[0])).unwrap();
    let o = census(dir.path());
    assert_ne!(stdout(&o).lines().last(), Some("census 6 7130 14848 0.480199"));

    fs::write(f6.join(&names[1]), "polytope broken\n").unwrap();
    assert_eq!(census(dir.path()).status.code(), Some(1));
}
