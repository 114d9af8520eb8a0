use std::fs;
use std::path::Path;

use familydd::cli::{cli_main, EXIT_ASSERTION, EXIT_OK, EXIT_USAGE};

fn run(args: &[&str]) -> i32 {
    cli_main(std::iter::once("familydd").chain(args.iter().copied()))
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn eval_join_writes_four_sets() {
    let dir = tempfile::tempdir().unwrap();
    let (f, g, out, dot) = (
        dir.path().join("a.fam"),
        dir.path().join("b.fam"),
        dir.path().join("c.fam"),
        dir.path().join("c.dot"),
    );
    fs::write(&f, "elements: a,b,c\na\nb\n").unwrap();
    fs::write(&g, "elements: a,b,c\nb\nc\n").unwrap();
    let code = run(&["eval", "--op", "join", "--f", p(&f), "--g", p(&g), "--out", p(&out), "--dot", p(&dot)]);
    assert_eq!(code, EXIT_OK);
    let text = fs::read_to_string(&out).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.remove(0), "elements: a,b,c");
    lines.sort();
    assert_eq!(lines, ["a,b", "a,c", "b", "b,c"]);
    assert!(fs::read_to_string(&dot).unwrap().starts_with("digraph"));
}

#[test]
fn eval_condition() {
    let dir = tempfile::tempdir().unwrap();
    let (f, out) = (dir.path().join("f.fam"), dir.path().join("out.fam"));
    fs::write(&f, "elements: a,b\na\na,b\n").unwrap();
    assert_eq!(run(&["eval", "--op", "condition", "--f", p(&f), "--y", "a", "--out", p(&out)]), EXIT_OK);
    let text = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(lines.len(), 2);
    assert!(lines.contains(&"{}") && lines.contains(&"b"));
}

#[test]
fn blowup_csv_has_one_row_per_m() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    assert_eq!(run(&["blowup", "--op", "join", "--mmin", "2", "--mmax", "12", "--csv", p(&csv)]), EXIT_OK);
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "op,m,z_f,z_g,z_out,count_out,elapsed_ms");
    assert_eq!(lines.len(), 12);
    assert!(text.ends_with('\n'));
    for (i, line) in lines[1..].iter().enumerate() {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 7);
        assert_eq!((cols[0], cols[1].parse::<usize>().unwrap()), ("join", i + 2));
        // |{X} ⊔ H_m| = 2^(m-1)
        assert_eq!(cols[5].parse::<u64>().unwrap(), 1 << (i + 1));
    }
}

#[test]
fn blowup_body_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let bodies: Vec<Vec<String>> = (0..2)
        .map(|i| {
            let csv = dir.path().join(format!("{i}.csv"));
            assert_eq!(run(&["blowup", "--op", "nonsubset", "--mmin", "2", "--mmax", "4", "--csv", p(&csv)]), EXIT_OK);
            fs::read_to_string(&csv)
                .unwrap()
                .lines()
                .map(|l| l.rsplit_once(',').unwrap().0.to_string())
                .collect()
        })
        .collect();
    assert_eq!(bodies[0], bodies[1]);
}

#[test]
fn gen_writes_family() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h.fam");
    assert_eq!(run(&["gen", "--kind", "H", "--m", "4", "--out", p(&out)]), EXIT_OK);
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next(), Some("elements: y1,y2,y3,y4"));
    assert_eq!(text.lines().count(), 1 + 8);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]), EXIT_USAGE);
    assert_eq!(run(&["blowup", "--op", "union", "--mmin", "2", "--mmax", "3"]), EXIT_USAGE);
    assert_eq!(run(&["blowup", "--op", "join", "--mmin", "2", "--mmax", "40"]), EXIT_USAGE);
    assert_eq!(run(&["orders", "--op", "meet", "--m", "5", "--exhaustive"]), EXIT_USAGE);
    assert_eq!(run(&["eval", "--op", "join", "--f", "/nonexistent/file.fam"]), EXIT_USAGE);
}

#[test]
fn hitting_identity_failure_exits_one() {
    // the stated closed form P_m is not the whole output from m = 3
    assert_eq!(run(&["blowup", "--op", "hitting", "--mmin", "3", "--mmax", "3"]), EXIT_ASSERTION);
    assert_eq!(run(&["blowup", "--op", "hitting", "--mmin", "2", "--mmax", "2"]), EXIT_OK);
}

#[test]
fn growth_check_needs_a_long_enough_range() {
    assert_eq!(run(&["blowup", "--op", "meet", "--mmin", "2", "--mmax", "4", "--check"]), EXIT_USAGE);
    assert_eq!(run(&["blowup", "--op", "nonsubset", "--mmin", "3", "--mmax", "5", "--check"]), EXIT_OK);
}

#[test]
fn bounds_and_selftest_pass() {
    assert_eq!(run(&["bounds", "--mmax", "4"]), EXIT_OK);
    assert_eq!(run(&["selftest", "--instances", "30"]), EXIT_OK);
    assert_eq!(run(&["orders", "--op", "meet", "--m", "2", "--exhaustive"]), EXIT_OK);
}
