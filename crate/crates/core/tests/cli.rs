use std::fs;
use std::process::{Command, Output};

use hfzf::proplogic;
use hfzf::Universe;

fn hfzf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hfzf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn rank_of_pair() {
    let o = hfzf(&["rank", "<0,1>"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "3\n");
}

#[test]
fn parse_error_exits_2() {
    let o = hfzf(&["rank", "{"]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("byte 1"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&hfzf(&["frobnicate"])), 2);
    assert_eq!(code(&hfzf(&["vfrom", "0"])), 2);
    assert_eq!(code(&hfzf(&["selftest", "bogus"])), 2);
    assert_eq!(code(&hfzf(&["wf", "{1}"])), 2);
}

#[test]
fn budget_exits_3() {
    let o = hfzf(&["--budget", "100", "vfrom", "0", "5"]);
    assert_eq!(code(&o), 3);
    assert!(o.stdout.is_empty());
    assert_eq!(code(&hfzf(&["--budget", "20", "fin", "{0,1,2,3,4}"])), 3);
}

#[test]
fn semantic_negatives_exit_1() {
    assert_eq!(code(&hfzf(&["wf", "{<0,1>,<1,0>}"])), 1);
    assert_eq!(code(&hfzf(&["list", "5"])), 1);
    let o = hfzf(&["prop", "valid", "#0 => #1"]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o), "falsifiable: {0}\n");
}

#[test]
fn prop_valid_identity() {
    let o = hfzf(&["prop", "valid", "#0 => #0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "valid\n");
}

#[test]
fn prove_then_check_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let hyps = dir.path().join("h.txt");
    let proof = dir.path().join("out.sx");
    fs::write(&hyps, "; one premise\n#0 => #1\n#0\n").unwrap();
    let (h, p) = (hyps.to_str().unwrap(), proof.to_str().unwrap());

    let o = hfzf(&["prop", "prove", "-H", h, "#1", "-o", p]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = hfzf(&["prop", "check", p, "-H", h]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "ok: #1\n");

    // the same proof without its premises is rejected with a node path
    let o = hfzf(&["prop", "check", p]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("at node root"));

    let o = hfzf(&["prop", "prove", "-H", h, "#2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("falsifiable:"));
}

#[test]
fn proof_on_stdout_parses() {
    let o = hfzf(&["prop", "prove", "(#0 => Fls) => #0 => #1"]);
    assert_eq!(code(&o), 0);
    let d = proplogic::parse_derivation(&stdout(&o)).unwrap();
    let c = proplogic::check_derivation(&d, &Default::default()).unwrap();
    assert_eq!(c, proplogic::parse_prop("(#0 => Fls) => #0 => #1").unwrap());
}

/// Commands whose output is a single set, with the value they must print.
const SET_COMMANDS: &[(&[&str], &str)] = &[
    (&["rank", "{{{0}}}"], "3"),
    (&["eclose", "{<0,1>}"], "{0,1,2,<0,1>}"),
    (&["vfrom", "{7}", "1"], "{0,7,{7}}"),
    (
        &["rtrancl", "{<0,1>,<1,2>}"],
        "{<0,0>,<1,1>,<2,2>,<0,1>,<1,2>,<0,2>}",
    ),
    (
        &["rtrancl", "--plus", "{<0,1>,<1,2>}"],
        "{<0,1>,<1,2>,<0,2>}",
    ),
    (&["memrel", "3"], "{<0,1>,<0,2>,<1,2>}"),
    (&["natrec", "2", "3", "--body", "add"], "5"),
    (&["natrec", "2", "3", "--body", "double"], "8"),
    (
        &[
            "lfp",
            "--op",
            "union(const({0}),image({<0,1>,<1,2>},id))",
            "--bound",
            "4",
        ],
        "3",
    ),
    (&["fin", "{0,1}"], "{0,{0},{1},{0,1}}"),
    (&["list", "--encode", "0", "1"], "<1,<0,<1,<1,<0,0>>>>>"),
    (&["tf", "--op", "size", "<0,<0,<1,<0,0>>>>"], "1"),
];

#[test]
fn outputs_reparse_in_both_formats() {
    for (args, expected) in SET_COMMANDS {
        let mut u = Universe::new();
        let want = u.parse(expected).unwrap();

        let o = hfzf(args);
        assert_eq!(
            code(&o),
            0,
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let text = stdout(&o);
        assert_eq!(
            u.parse(text.trim()).unwrap(),
            want,
            "{args:?} printed {text}"
        );

        let mut with_format = vec!["--format", "sexpr"];
        with_format.extend_from_slice(args);
        let o = hfzf(&with_format);
        assert_eq!(code(&o), 0);
        let text = stdout(&o);
        assert_eq!(
            u.parse_sexpr(text.trim()).unwrap(),
            want,
            "{args:?} printed {text}"
        );
    }
}

#[test]
fn banach_prints_parts_and_bijection() {
    let o = hfzf(&[
        "banach",
        "--X",
        "{0,1,2}",
        "--Y",
        "{5,6,7}",
        "--f",
        "{<0,5>,<1,6>,<2,7>}",
        "--g",
        "{<5,1>,<6,2>,<7,0>}",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut u = Universe::new();
    let fields: Vec<(&str, &str)> = text.lines().map(|l| l.split_once(" = ").unwrap()).collect();
    let names: Vec<&str> = fields.iter().map(|f| f.0).collect();
    assert_eq!(names, ["XA", "XB", "YA", "YB", "bijection"]);
    for (_, v) in &fields {
        u.parse(v).unwrap();
    }
}

#[test]
fn ord_report() {
    let o = hfzf(&["ord", "3"]);
    assert_eq!(stdout(&o), "transset = true\nord = true\nlimit = false\n");
    let o = hfzf(&["--format", "sexpr", "ord", "{1}"]);
    assert_eq!(
        stdout(&o),
        "(ord (transset false) (ord false) (limit false))\n"
    );
}

#[test]
fn selftest_core_passes() {
    let o = hfzf(&["selftest", "core", "--seed", "1"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("selftest seed=1\n"));
    assert!(text.ends_with("0 failed\n"));
}

#[test]
fn selftest_sequential_matches_parallel() {
    let a = hfzf(&["selftest", "fixedpoint", "--seed", "4"]);
    let b = hfzf(&["selftest", "fixedpoint", "--seed", "4", "--sequential"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}
