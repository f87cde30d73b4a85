use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn pfsign(args: &[&str]) -> Output {
    pfsign_env(args, &[])
}

fn pfsign_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pfsign"));
    cmd.args(args).env_remove("PFSIGN_TRUNCATION");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("spawn pfsign")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pfsign-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

/// Rows of a CSV body keyed by header name.
fn csv_column(body: &str, column: &str) -> Vec<String> {
    let mut lines = body.lines();
    let header: Vec<&str> = lines.next().expect("header").split(',').collect();
    let idx = header.iter().position(|h| *h == column).expect("column");
    lines.map(|l| l.split(',').nth(idx).expect("cell").to_string()).collect()
}

#[test]
fn table_one_matches_golden() {
    let out = pfsign(&["table", "--id", "1", "--n", "10", "--format", "csv"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let body = stdout(&out);
    assert_eq!(body.lines().count(), 11);
    assert!(body.starts_with("n,f,c1_f,c2_f,c3_f,c4_f,finv,c1_finv,c2_finv,c3_finv,c4_finv\n"));
    assert_eq!(csv_column(&body, "f"), ["1", "1", "2", "2", "4", "2", "6", "4", "6", "4"]);
    assert!(stderr(&out).contains("c3 discrepancy report"));
}

#[test]
fn table_four_has_six_rows() {
    let out = pfsign(&["table", "--id", "4", "--n", "6"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout(&out).lines().count(), 7);
}

#[test]
fn unknown_table_is_usage_error() {
    assert_eq!(code(&pfsign(&["table", "--id", "7"])), 2);
    assert_eq!(code(&pfsign(&["table", "--id", "no_such_function"])), 2);
}

#[test]
fn table_by_function_name_without_golden() {
    let out = pfsign(&["table", "--id", "mobius", "--n", "5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(csv_column(&stdout(&out), "f"), ["1", "-1", "-1", "0", "-1"]);
}

#[test]
fn tex_table_uses_appendix_rule() {
    let out = pfsign(&["table", "--id", "1", "--format", "tex"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("|l||l|l|l|l|l||l|l|l|l|l|"));
}

#[test]
fn modified_fixture_is_a_mismatch() {
    let dir = scratch("fixtures");
    let original = include_str!("../../core/fixtures/table1.csv");
    for id in 1..=6 {
        let name = format!("table{id}.csv");
        let text = fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(&name))
            .expect("fixture");
        fs::write(dir.join(&name), text).expect("copy");
    }
    let dir_arg = dir.to_str().expect("utf-8 path");
    assert_eq!(code(&pfsign(&["table", "--id", "1", "--fixtures", dir_arg])), 0);

    // n = 2 row: f(2) = 1 becomes 99.
    let tampered = original.replacen("\n2,1,", "\n2,99,", 1);
    assert_ne!(tampered, original);
    fs::write(dir.join("table1.csv"), tampered).expect("write");
    let out = pfsign(&["table", "--id", "1", "--fixtures", dir_arg]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("MISMATCH n=2 f"));
    fs::remove_dir_all(dir).ok();
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&pfsign(&["verify", "--suite", "nonsense"])), 2);
    let out = pfsign(&["verify", "--suite", "kernels"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).lines().all(|l| l.starts_with("PASS ")));
}

#[test]
fn signs_suite_reports_onsets() {
    let out = pfsign(&["verify", "--suite", "signs"]);
    let body = stdout(&out);
    // divisor_count and omega_plus_one settle only after the onset bound.
    assert_eq!(code(&out), 1);
    assert!(body.contains("PASS signs.golden_onsets[phi]"));
    assert!(body.contains("FAIL signs.onset_bound[divisor_count]"));
    assert!(body.contains("FAIL signs.onset_bound[omega_plus_one]"));
    assert!(body.contains("PASS signs.alternation_fails[double_factorial_odd]"));
}

#[test]
fn mertens_prefix_has_one_sign_change() {
    let out = pfsign(&["signs", "--f", "mobius", "--target", "summatory", "--n", "10"]);
    assert_eq!(code(&out), 0);
    assert!(csv_column(&stdout(&out), "sign_changes").iter().all(|v| v == "1"));
}

#[test]
fn liouville_summatory_matches_brute_force() {
    let lambda = |mut n: usize| {
        let mut parity = 0;
        let mut p = 2;
        while p * p <= n {
            while n.is_multiple_of(p) {
                n /= p;
                parity ^= 1;
            }
            p += 1;
        }
        if n > 1 {
            parity ^= 1;
        }
        if parity == 0 {
            1i64
        } else {
            -1
        }
    };
    let mut sum = 0;
    let mut signs = Vec::new();
    for n in 1..=100 {
        sum += lambda(n);
        if sum != 0 {
            signs.push(sum > 0);
        }
    }
    let expected = signs.windows(2).filter(|w| w[0] != w[1]).count().to_string();
    let out = pfsign(&["signs", "--f", "liouville", "--target", "summatory", "--n", "100"]);
    assert_eq!(code(&out), 0);
    assert_eq!(csv_column(&stdout(&out), "sign_changes")[0], expected);
}

#[test]
fn phi_c2_inverse_alternates_early() {
    let out = pfsign(&["signs", "--f", "phi", "--target", "c2-inv", "--n", "2000"]);
    assert_eq!(code(&out), 0);
    let body = stdout(&out);
    let onsets = csv_column(&body, "onset");
    let properties = csv_column(&body, "property");
    let alt = properties.iter().position(|p| p == "alternating").expect("alternating row");
    assert!(onsets[alt].parse::<usize>().expect("onset") <= 50);
}

#[test]
fn unknown_function_is_usage_error() {
    assert_eq!(code(&pfsign(&["signs", "--f", "zeta", "--target", "summatory"])), 2);
    assert_eq!(code(&pfsign(&["inverse", "--f", "zeta"])), 2);
}

#[test]
fn asymptotics_reports() {
    let out = pfsign(&["asymptotics", "--kind", "p", "--ns", "100,1000"]);
    assert_eq!(code(&out), 0);
    let ratios: Vec<f64> = csv_column(&stdout(&out), "ratio").iter().map(|r| r.parse().expect("f64")).collect();
    assert!((ratios[1] - 1.0).abs() < (ratios[0] - 1.0).abs());
    assert!((ratios[1] - 1.0).abs() <= 0.1);

    let out = pfsign(&["asymptotics", "--kind", "qstar", "--ns", "50"]);
    assert_eq!(code(&out), 0);
    assert!(csv_column(&stdout(&out), "estimate")[0].parse::<f64>().expect("f64") > 0.0);

    let out = pfsign(&["asymptotics", "--kind", "q", "--ns", "1000", "--variant", "as-printed"]);
    assert_eq!(code(&out), 0);
    let body = stdout(&out);
    let fitted: f64 = csv_column(&body, "fitted_constant")[0].parse().expect("f64");
    let printed: f64 = csv_column(&body, "variant_constant")[0].parse().expect("f64");
    assert!((fitted - 0.19).abs() < 0.01);
    assert!((printed - 0.433).abs() < 0.001);
}

#[test]
fn asymptotics_usage_errors() {
    assert_eq!(code(&pfsign(&["asymptotics", "--kind", "p", "--ns", ""])), 2);
    assert_eq!(code(&pfsign(&["asymptotics", "--kind", "p"])), 2);
    assert_eq!(code(&pfsign(&["asymptotics", "--kind", "pstar", "--ns", "10"])), 2);
}

#[test]
fn inverse_methods() {
    let out = pfsign(&["inverse", "--f", "mobius", "--n", "6"]);
    assert_eq!(code(&out), 0);
    assert_eq!(csv_column(&stdout(&out), "finv"), ["1", "1", "1", "1", "1", "1"]);

    let neumann = pfsign(&["inverse", "--f", "phi", "--n", "30", "--method", "neumann"]);
    let recursive = pfsign(&["inverse", "--f", "phi", "--n", "30"]);
    assert_eq!(stdout(&neumann), stdout(&recursive));

    let out = pfsign(&["inverse", "--f", "epsilon", "--n", "12", "--method", "partition-formula"]);
    assert_eq!(code(&out), 0);
    assert!(csv_column(&stdout(&out), "matches").iter().all(|m| m == "true"));

    assert_eq!(code(&pfsign(&["inverse", "--f", "phi", "--n", "31", "--method", "partition-formula"])), 2);
}

#[test]
fn encode_matches_table_column() {
    let table = pfsign(&["table", "--id", "1", "--n", "10"]);
    let encoded = pfsign(&["encode", "--f", "phi", "--kernel", "q", "--n", "10"]);
    let inverse = pfsign(&["encode", "--f", "phi", "--kernel", "p", "--n", "10", "--inverse"]);
    assert_eq!(code(&encoded), 0);
    assert_eq!(csv_column(&stdout(&encoded), "c1"), csv_column(&stdout(&table), "c1_f"));
    assert_eq!(csv_column(&stdout(&inverse), "c4"), csv_column(&stdout(&table), "c4_finv"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["table", "--id", "3", "--format", "md"][..],
        &["asymptotics", "--kind", "q", "--ns", "10,200,2000"][..],
        &["signs", "--f", "phi", "--target", "c1-inv", "--n", "500"][..],
    ] {
        assert_eq!(pfsign(args).stdout, pfsign(args).stdout, "{args:?}");
    }
}

#[test]
fn csv_output_round_trips() {
    let body = stdout(&pfsign(&["table", "--id", "6"]));
    let table = pfsign_core::TableArtifact::from_csv("partition_seq", &body).expect("parse");
    assert_eq!(table.render(pfsign_core::render::OutputFormat::Csv), body);
    assert!(body.ends_with('\n') && !body.contains('\r'));
}

#[test]
fn out_flag_writes_file() {
    let dir = scratch("out");
    let path = dir.join("t2.md");
    let out = pfsign(&["table", "--id", "2", "--format", "md", "--out", path.to_str().expect("utf-8")]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let written = fs::read_to_string(&path).expect("written");
    assert_eq!(written, stdout(&pfsign(&["table", "--id", "2", "--format", "md"])));
    fs::remove_dir_all(dir).ok();
}

#[test]
fn truncation_caps_n() {
    assert_eq!(code(&pfsign(&["encode", "--f", "one", "--kernel", "q", "--n", "3000"])), 2);
    assert_eq!(
        code(&pfsign_env(&["encode", "--f", "one", "--kernel", "q", "--n", "100"], &[("PFSIGN_TRUNCATION", "64")])),
        2
    );
    assert_eq!(
        code(&pfsign_env(&["encode", "--f", "one", "--kernel", "q", "--n", "64"], &[("PFSIGN_TRUNCATION", "64")])),
        0
    );
    assert_eq!(code(&pfsign(&["encode", "--f", "one", "--kernel", "q", "--n", "0"])), 2);
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(code(&pfsign(&[])), 2);
    assert_eq!(code(&pfsign(&["table", "--id", "1", "--format", "xml"])), 2);
    assert_eq!(code(&pfsign(&["frobnicate"])), 2);
}
