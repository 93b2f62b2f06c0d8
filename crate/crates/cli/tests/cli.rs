use std::process::Command;

use galcover::covers::ReportJson;
use galcover_cli::run;

fn galcover(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_galcover"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run_in_process(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("galcover").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn reports_match_golden_files() {
    let cases = [
        ("7", "2", include_str!("golden/report_p7_l2.json")),
        ("3", "2", include_str!("golden/report_p3_l2.json")),
        ("2", "3", include_str!("golden/report_p2_l3.json")),
        ("5", "11", include_str!("golden/report_p5_l11.json")),
    ];
    for (p, l, golden) in cases {
        let (code, out, _) = galcover(&["report", "--p", p, "--l", l, "--json"]);
        assert_eq!(code, 0);
        assert_eq!(out, golden, "p = {p}, l = {l}");
    }
}

#[test]
fn json_reports_reparse_and_pass_invariants() {
    for p in [2u64, 3, 5, 7, 11, 13] {
        for l in [2u64, 3, 5, 7, 11, 13] {
            if p == l {
                continue;
            }
            let (code, out, _) = run_in_process(&[
                "report",
                "--p",
                &p.to_string(),
                "--l",
                &l.to_string(),
                "--json",
            ]);
            assert_eq!(code, 0, "p = {p}, l = {l}");
            let parsed = ReportJson::parse(out.trim()).unwrap();
            parsed.check_invariants().unwrap();
            assert_eq!(parsed.render(), out.trim());
        }
    }
}

#[test]
fn report_examples() {
    let (_, out, _) = run_in_process(&["report", "--p", "3", "--l", "2", "--json"]);
    for needle in [
        "\"a\":2",
        "\"g_z_min\":1",
        "\"class_count_bound\":1",
        "\"quasi_p\":true",
    ] {
        assert!(out.contains(needle), "{needle} missing from {out}");
    }
    let (_, out, _) = run_in_process(&["report", "--p", "2", "--l", "3", "--json"]);
    assert!(out.contains("\"g_z_min\":1") && out.contains("\"class_count_bound\":4"));
}

#[test]
fn seed_does_not_change_output() {
    let a = run_in_process(&["report", "--p", "31", "--l", "2", "--json", "--seed", "0"]);
    let b = run_in_process(&[
        "report", "--p", "31", "--l", "2", "--json", "--seed", "12345",
    ]);
    assert_eq!(a, b);
    let a = run_in_process(&["factor", "--p", "31", "--l", "5", "--seed", "1"]);
    let b = run_in_process(&["factor", "--p", "31", "--l", "5", "--seed", "2"]);
    assert_eq!(a, b);
}

#[test]
fn oversized_groups_are_skipped() {
    let (code, out, _) =
        run_in_process(&["report", "--p", "7", "--l", "2", "--json", "--budget", "10"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"quasi_p\":\"skipped\""));
}

#[test]
fn simple_commands() {
    assert_eq!(run_in_process(&["order", "--l", "2", "--p", "7"]).1, "3\n");
    assert_eq!(run_in_process(&["order", "--l", "2", "--p", "3"]).1, "2\n");
    assert_eq!(
        run_in_process(&["order", "--l", "2", "--p", "7", "--json"]).1,
        "{\"l\":2,\"p\":7,\"order\":3}\n"
    );
    assert_eq!(
        run_in_process(&["factor", "--p", "7", "--l", "2"]).1,
        "t^3 + t^2 + 1\nt^3 + t + 1\n"
    );
    assert!(run_in_process(&["genus", "--p", "7", "--s", "5"])
        .1
        .starts_with("g = 12 "));
    assert_eq!(
        run_in_process(&["jump", "--p", "5", "--s", "3", "--json"]).1,
        "{\"p\":5,\"s\":3,\"valuation\":4,\"leading_coeff\":3}\n"
    );
    let (_, out, _) = run_in_process(&["quasip", "--p", "3", "--l", "2", "--json"]);
    assert!(out.contains("\"closure_size\":12") && out.contains("\"quasi_p\":true"));
    let (_, out, _) = run_in_process(&["quasip", "--p", "7", "--l", "2", "--b", "1", "--json"]);
    assert!(out.contains("\"direct_product\":true") && out.contains("\"closure_size\":7"));
    let (_, out, _) = run_in_process(&["minimal-genus", "--p", "5", "--l", "2"]);
    assert!(out.starts_with("minimal genus 17;"));
    let (_, out, _) = run_in_process(&["decompose", "--p", "7", "--l", "2"]);
    assert_eq!(
        out,
        "ker(t^3 + t^2 + 1) has dimension 3\nker(t^3 + t + 1) has dimension 3\n"
    );
    let (_, out, _) = run_in_process(&["tau", "--p", "3", "--l", "2", "--json"]);
    assert!(out.contains("\"matrix\":[[0,1],[1,1]]"));
}

#[test]
fn usage_errors_exit_2_and_name_the_flag() {
    let cases: [(&[&str], &str); 8] = [
        (&["report", "--p", "4", "--l", "2"], "p must be prime"),
        (&["report", "--p", "7", "--l", "9"], "l must be prime"),
        (&["order", "--p", "7"], "--l"),
        (&["genus", "--p", "5", "--s", "0"], "--s"),
        (&["quasip", "--p", "7", "--l", "2", "--b", "0"], "--b"),
        (&["report", "--p", "x", "--l", "2"], "--p"),
        (&["frobnicate"], "frobnicate"),
        (&["report", "--p", "7", "--l", "2", "--s", "3"], "--s"),
    ];
    for (args, needle) in cases {
        let (code, out, err) = galcover(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty(), "{args:?}");
        assert!(err.contains(needle), "{args:?}: {err}");
    }
}

#[test]
fn computation_errors_exit_1_with_error_name() {
    let (code, out, err) = galcover(&["report", "--p", "5", "--l", "5", "--json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"], "EqualPrimes");
    assert!(err.contains("EqualPrimes"));
    let (code, out, err) = galcover(&["genus", "--p", "3", "--s", "6"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("SDivisibleByP"));
    let (code, out, _) = galcover(&["tau", "--p", "5", "--l", "2", "--s", "4", "--json"]);
    assert_eq!(code, 1);
    assert!(out.contains("UnsupportedParameters"));
}

#[test]
fn help_exits_0() {
    let (code, out, _) = galcover(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("minimal-genus"));
}
