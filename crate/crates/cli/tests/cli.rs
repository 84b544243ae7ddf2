use std::path::{Path, PathBuf};
use std::process::Command;

use poloid_cli::{run, EXIT_FALSE, EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn poloid(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("poloid").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn classify_right_zero_band() {
    let r = poloid(&["classify", path(&data("right_zero_band.magma"))]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let expected = "\
elements: x y
semigroupoid: yes
poloid: no
groupoid: no
total: yes
monoid: no
group: no
right_directed_semigroupoid: yes
right_poloid: yes
normal: no
unit_posetal: no
";
    assert!(r.out.starts_with(expected), "{}", r.out);
    assert!(r.out.contains("phi: {x->x, y->y}"), "{}", r.out);
    assert!(r.out.contains("witness normal: normality (x, y)"), "{}", r.out);
}

#[test]
fn classify_json_has_verdicts_and_witnesses() {
    let r = poloid(&["classify", "--json", path(&data("z2.magma"))]);
    assert_eq!(r.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["elements"], serde_json::json!(["e", "g"]));
    assert_eq!(v["verdicts"]["group"], true);
    assert_eq!(v["verdicts"]["normal"], true);
    assert_eq!(v["witnesses"], serde_json::json!([]));
    assert_eq!(v["units"], serde_json::json!([0]));
}

#[test]
fn classify_map_magma_files() {
    let r = poloid(&["classify", path(&data("two_identities.maps"))]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(
        r.out.contains("poloid: yes") && r.out.contains("total: no"),
        "{}",
        r.out
    );

    let r = poloid(&["classify", path(&data("open.maps"))]);
    assert_eq!(r.code, EXIT_PARSE);
    assert!(r.err.contains("not closed"), "{}", r.err);
}

#[test]
fn parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.magma");
    std::fs::write(&bad, "elements: a b\na: a\nb: b a\n").unwrap();
    let r = poloid(&["classify", path(&bad)]);
    assert_eq!(r.code, EXIT_PARSE);
    assert!(r.err.starts_with("error: "), "{}", r.err);
    assert!(r.out.is_empty());

    let r = poloid(&["classify", path(&dir.path().join("missing.magma"))]);
    assert_eq!(r.code, EXIT_PARSE);
}

#[test]
fn usage_errors_exit_two_and_help_exits_zero() {
    assert_eq!(poloid(&[]).code, EXIT_PARSE);
    assert_eq!(poloid(&["frobnicate"]).code, EXIT_PARSE);
    assert_eq!(poloid(&["enumerate"]).code, EXIT_PARSE);
    assert_eq!(poloid(&["enumerate", "-n", "2", "--filter", "ring"]).code, EXIT_PARSE);
    let help = poloid(&["--help"]);
    assert_eq!(help.code, EXIT_OK);
    assert!(help.out.contains("classify"));
}

#[test]
fn embed_poloid_and_reparse() {
    let r = poloid(&["embed", path(&data("two_units.magma"))]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r.out.contains("iso:"), "{}", r.out);
    assert!(r.out.contains("e1 -> a_e1"), "{}", r.out);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("z2.embedding");
    let r = poloid(&["embed", path(&data("z2.magma")), "-o", path(&out)]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.is_empty());
    let r = poloid(&["iso", path(&data("z2.magma")), path(&out)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r.out.starts_with("isomorphic: yes\n"), "{}", r.out);
    let r = poloid(&["classify", path(&out)]);
    assert!(r.out.contains("group: yes"), "{}", r.out);
}

#[test]
fn embed_rejects_wrong_classes() {
    let r = poloid(&["embed", "--pre", path(&data("right_zero_band.magma"))]);
    assert_eq!(r.code, EXIT_PRECONDITION);
    assert_eq!(r.err, "error: not a normal right poloid: normality (x, y)\n");

    let r = poloid(&["embed", path(&data("right_zero_band.magma"))]);
    assert_eq!(r.code, EXIT_PRECONDITION);
    assert!(r.err.contains("not a poloid"), "{}", r.err);

    let r = poloid(&["embed", "--pre", path(&data("z2.magma"))]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
}

#[test]
fn enumerate_golden_counts() {
    let r = poloid(&["enumerate", "-n", "2"]);
    assert_eq!(r.code, EXIT_OK);
    let expected = "\
n: 2
partial magmas: 80 tables
semigroupoid: 15
poloid: 5
groupoid: 3
total: 16
monoid: 4
group: 2
right_directed_semigroupoid: 21
right_poloid: 10
normal: 9
unit_posetal: 9
";
    assert_eq!(r.out, expected);

    let r = poloid(&["enumerate", "-n", "1"]);
    assert!(r.out.contains("partial magmas: 1 tables"), "{}", r.out);
}

#[test]
fn enumerate_filtered_and_up_to_iso() {
    let r = poloid(&["enumerate", "-n", "3", "--filter", "poloid"]);
    assert_eq!(r.out, "n: 3\npoloid: 52 tables\n");
    let r = poloid(&["enumerate", "-n", "3", "--filter", "poloid", "--up-to-iso"]);
    assert_eq!(r.out, "n: 3\npoloid: 11 isomorphism classes\n");
    let r = poloid(&["enumerate", "-n", "4", "--filter", "group", "--up-to-iso"]);
    assert_eq!(r.out, "n: 4\ngroup: 2 isomorphism classes\n");
    let r = poloid(&["enumerate", "-n", "2", "--filter", "right-poloid"]);
    assert_eq!(r.out, "n: 2\nright_poloid: 10 tables\n");
}

#[test]
fn enumerate_bounds() {
    let r = poloid(&["enumerate", "-n", "4"]);
    assert_eq!(r.code, EXIT_PRECONDITION);
    let r = poloid(&["enumerate", "-n", "5", "--filter", "poloid"]);
    assert_eq!(r.code, EXIT_PRECONDITION);
    let r = poloid(&["enumerate", "-n", "4", "--filter", "total"]);
    assert_eq!(r.code, EXIT_PRECONDITION);
    let r = poloid(&["enumerate", "-n", "0"]);
    assert_eq!(r.code, EXIT_PARSE);
}

#[test]
fn enumerate_emit_writes_parseable_tables() {
    let dir = tempfile::tempdir().unwrap();
    let r = poloid(&["enumerate", "-n", "2", "--filter", "group", "--emit", path(dir.path())]);
    assert_eq!(r.code, EXIT_OK);
    let mut files: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    assert_eq!(files.len(), 2);
    assert_eq!(files[0].file_name().unwrap(), "n2_000001.magma");
    for f in &files {
        let r = poloid(&["classify", path(f)]);
        assert!(r.out.contains("group: yes"), "{}", r.out);
    }
}

#[test]
fn compose_members() {
    let maps = data("nonassociative.maps");
    let r = poloid(&["compose", path(&maps), "g", "h"]);
    assert_eq!(r.out, "1->1\nmember: f h\n");
    let r = poloid(&["compose", path(&maps), "f", "g"]);
    assert_eq!(r.out, "undefined\n");
    assert_eq!(r.code, EXIT_OK);
    let r = poloid(&["compose", path(&maps), "f", "nope"]);
    assert_eq!(r.code, EXIT_PARSE);
    // composites outside the set are still shown
    let r = poloid(&["compose", path(&data("open.maps")), "s", "s"]);
    assert_eq!(r.out, "1->1 2->2\n");
}

#[test]
fn check_hom_collapse_and_identity() {
    let (two, triv) = (data("two_units.magma"), data("trivial.magma"));
    let r = poloid(&["check-hom", path(&two), path(&triv), path(&data("collapse.hom"))]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert_eq!(
        r.out,
        "homomorphism: yes\nreflects definedness: no (reflection (e1, e2))\nisomorphism: no\n"
    );

    let dir = tempfile::tempdir().unwrap();
    let id = dir.path().join("id.hom");
    std::fs::write(&id, "hom: e -> e\nhom: g -> g\n").unwrap();
    let z2 = data("z2.magma");
    let r = poloid(&["check-hom", path(&z2), path(&z2), path(&id)]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(
        r.out,
        "homomorphism: yes\nreflects definedness: yes\nisomorphism: yes\nimage: e g\n"
    );

    let constant = dir.path().join("const.hom");
    std::fs::write(&constant, "hom: e -> g\nhom: g -> g\n").unwrap();
    let r = poloid(&["check-hom", path(&z2), path(&z2), path(&constant)]);
    assert_eq!(r.code, EXIT_FALSE);
    assert!(r.out.starts_with("homomorphism: no ("), "{}", r.out);

    // source must be a poloid
    let r = poloid(&["check-hom", path(&data("right_zero_band.magma")), path(&z2), path(&id)]);
    assert_ne!(r.code, EXIT_OK);
}

#[test]
fn iso_negative() {
    let r = poloid(&["iso", path(&data("z2.magma")), path(&data("two_units.magma"))]);
    assert_eq!(r.code, EXIT_FALSE);
    assert_eq!(r.out, "isomorphic: no\n");
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["classify", "--json"],
        vec!["embed"],
        vec!["enumerate", "-n", "2", "--emit"],
    ] {
        let mut outs = Vec::new();
        for _ in 0..2 {
            let dir = tempfile::tempdir().unwrap();
            let mut a: Vec<String> = args.iter().map(|s| s.to_string()).collect();
            if a[0] == "enumerate" {
                a.push(path(dir.path()).to_string());
            } else {
                a.push(path(&data("z2.magma")).to_string());
            }
            let a: Vec<&str> = a.iter().map(String::as_str).collect();
            let r = poloid(&a);
            let mut blob = r.out.into_bytes();
            if args[0] == "enumerate" {
                let mut files: Vec<_> = std::fs::read_dir(dir.path())
                    .unwrap()
                    .map(|e| e.unwrap().path())
                    .collect();
                files.sort();
                for f in files {
                    blob.extend(std::fs::read(f).unwrap());
                }
            }
            outs.push(blob);
        }
        assert_eq!(outs[0], outs[1], "{args:?}");
    }
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_poloid");
    let ok = Command::new(bin)
        .args(["classify"])
        .arg(data("z2.magma"))
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("group: yes"));
    let pre = Command::new(bin)
        .args(["embed", "--pre"])
        .arg(data("right_zero_band.magma"))
        .output()
        .unwrap();
    assert_eq!(pre.status.code(), Some(EXIT_PRECONDITION));
    assert!(String::from_utf8_lossy(&pre.stderr).contains("normality (x, y)"));
}
