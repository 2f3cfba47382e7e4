use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fano-qc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fano-qc-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn reconstruct_verifies_fixture() {
    let o = run(&["reconstruct", "--bundle", "flagship", "--verify-fixture"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("M_p: matches fixture"));
    assert!(stdout(&o).contains("M_xi: matches fixture"));
}

#[test]
fn reconstruct_checks_relations() {
    let o = run(&["reconstruct", "--relations", &fixture("relations.txt")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "R1: 0\nR2: 0\n");
    let o = run(&["reconstruct", "--relations", &fixture("relations_printed.txt")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("R1: component p is -2*q1^2"), "{}", stderr(&o));
}

#[test]
fn empty_seeds_name_the_gap() {
    let o = run(&[
        "reconstruct",
        "--bundle",
        "flagship",
        "--seeds",
        &fixture("empty.seeds"),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("missing seed invariant <p, p^4*xi^5> in class 1A1 + 0A2"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn p1_trivial_matrices() {
    let o = run(&["reconstruct", "--bundle", "p1-trivial"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.starts_with("basis\t1\tp\txi\tp*xi\nM_p\n0\tq1\t0\t0\n1\t0\t0\t0\n"),
        "{text}"
    );
    assert!(text.contains("M_xi\n0\t0\tq2\t0\n"));
}

#[test]
fn bundle_from_config_file() {
    let o = run(&["reconstruct", "--bundle", &fixture("p1_trivial.toml")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), stdout(&run(&["reconstruct", "--bundle", "p1-trivial"])));
    let o = run(&["reconstruct", "--bundle", "/nonexistent/bundle.toml"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn non_builtin_bundle_needs_seeds() {
    let dir = scratch("hirzebruch");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("f1.toml");
    std::fs::write(&cfg, "n = 1\nr = 2\nchern = [1]\n").unwrap();
    let o = run(&["seeds", "--bundle", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("pass --seeds"));
}

#[test]
fn jfun_order_zero() {
    let o = run(&["jfun", "--order", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn jfun_apery_table() {
    let o = run(&["jfun", "--order", "14", "--apery", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        std::fs::read_to_string(fixture("apery_matrix.csv")).unwrap()
    );
}

#[test]
fn jfun_apery_needs_depth() {
    let o = run(&["jfun", "--order", "5", "--apery", "8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("insufficient truncation"));
}

#[test]
fn jfun_checks_operators() {
    let o = run(&["jfun", "--order", "6", "--check-operators", &fixture("delta.ops")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for name in ["Delta1", "Delta2", "Delta3", "Delta4"] {
        assert!(stdout(&o).contains(&format!("{name}: zero at")), "{}", stdout(&o));
    }
    let o = run(&[
        "jfun",
        "--order",
        "6",
        "--check-operators",
        &fixture("delta1_printed.ops"),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("breaks homogeneity"));
}

#[test]
fn periods_regularized() {
    let o = run(&[
        "periods",
        "--bundle",
        "flagship",
        "--cut",
        "p,xi^5",
        "--terms",
        "10",
        "--regularized",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        std::fs::read_to_string(fixture("period_terms.txt")).unwrap()
    );
}

#[test]
fn periods_plain_and_single_term() {
    let o = run(&["periods", "--terms", "3", "--plain"]);
    assert_eq!(stdout(&o), "1\n0\n5\n");
    let o = run(&["periods", "--terms", "1"]);
    assert_eq!(stdout(&o), "# plain\n1\n# regularized\n1\n");
}

#[test]
fn periods_pf_verify() {
    let o = run(&[
        "periods",
        "--terms",
        "20",
        "--regularized",
        "--pf-verify",
        &fixture("flagship_pf.op"),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("pf-verify: residual zero at 20 certified positions"));
}

#[test]
fn periods_bad_cut() {
    let o = run(&["periods", "--cut", "p*xi"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["periods", "--pf-search", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn seeds_dump_matches_fixture() {
    let o = run(&["seeds"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        std::fs::read_to_string(fixture("flagship_blowup.seeds")).unwrap()
    );
    let o = run(&[
        "reconstruct",
        "--seeds",
        &fixture("flagship_blowup.seeds"),
        "--verify-fixture",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn outputs_are_deterministic() {
    let (a, b) = (scratch("a"), scratch("b"));
    for dir in [&a, &b] {
        let o = run(&["reconstruct", "--out", dir.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let o = run(&["periods", "--terms", "8", "--out", dir.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    for name in [
        "mp.triplets",
        "mxi.triplets",
        "mp.tsv",
        "mxi.tsv",
        "period_plain.txt",
        "period_regularized.txt",
    ] {
        let x = std::fs::read(a.join(name)).unwrap();
        assert_eq!(x, std::fs::read(b.join(name)).unwrap(), "{name}");
    }
    let mp = std::fs::read_to_string(a.join("mp.triplets")).unwrap();
    let published = std::fs::read_to_string(fixture("flagship_mp.triplets")).unwrap();
    let strip = |s: &str| {
        s.lines()
            .filter(|l| !l.starts_with('#'))
            .map(str::to_string)
            .collect::<Vec<_>>()
    };
    assert_eq!(strip(&mp), strip(&published));
    let _ = std::fs::remove_dir_all(&a);
    let _ = std::fs::remove_dir_all(&b);
}
