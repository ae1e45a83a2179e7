//! Behavior of the dtors binary and the sweep library surface.

use std::process::Command;

use dtors_cli::sweep::{run_sweep, SweepConfig, TauSelect};
use dtors_cli::textio::parse_ratfunc;
use dtors_core::drinfeld::{DrinfeldParams, GenericFamily};
use dtors_core::ffield::{FieldCtx, Fq};
use dtors_core::polyring::RatFunc;

fn dtors() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dtors"))
}

#[test]
fn order_command_matches_pinned_examples() {
    // q=2, r=2, F_4, lambda=0, c=1 -> order T^2+T+1 of degree 2
    let out = dtors()
        .args([
            "order", "--p", "2", "--ell", "2", "--r", "2", "--tau", "[0,1]", "--lambda", "[0,0]",
            "--point", "[1,0]",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], serde_json::json!([1, 1, 1]));
    assert_eq!(v["degree"], 2);

    // c = 0 -> order 1 of degree 0
    let out = dtors()
        .args([
            "order", "--p", "2", "--ell", "2", "--r", "2", "--tau", "[0,1]", "--lambda", "[0,0]",
            "--point", "[0,0]",
        ])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], serde_json::json!([1]));
    assert_eq!(v["degree"], 0);

    // lambda = tau, c = tau -> order T
    let out = dtors()
        .args([
            "order", "--p", "2", "--ell", "2", "--r", "2", "--tau", "[0,1]", "--lambda", "[0,1]",
            "--point", "[0,1]",
        ])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], serde_json::json!([0, 1]));
    assert_eq!(v["degree"], 1);
}

#[test]
fn exit_codes() {
    // usage: unknown flag
    let out = dtors().args(["order", "--bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    // usage: malformed element
    let out = dtors()
        .args([
            "order", "--p", "2", "--ell", "2", "--r", "2", "--tau", "oops", "--lambda", "[0,0]",
            "--point", "[1,0]",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    // math domain: composite p
    let out = dtors()
        .args([
            "order", "--p", "4", "--ell", "2", "--r", "2", "--tau", "[0,1]", "--lambda", "[0,0]",
            "--point", "[1,0]",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // math domain: dependent sweep points
    let out = dtors()
        .args([
            "sweep", "--p", "2", "--r", "2", "--a", "t", "--b", "t", "--ell", "2", "--M", "1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("linearly dependent"), "stderr: {msg}");
}

#[test]
fn empty_tau_selection_yields_empty_stream() {
    let out = dtors()
        .args([
            "sweep", "--p", "2", "--r", "2", "--a", "1", "--b", "t", "--ell", "2", "--M", "1",
            "--tau", "sample:0",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains("\"type\":\"record\""));
    // summaries still report the zero counts
    assert!(text.contains("\"count_max\":0"));
}

#[test]
fn sweep_skips_taus_where_denominators_vanish() {
    // b = 1/t has b2 = t, which vanishes at tau = 0; ell = 1 sweeps F_2
    // whose elements 0 and 1 are both generators of the trivial extension.
    let out = dtors()
        .args([
            "sweep", "--p", "2", "--r", "2", "--a", "1", "--b", "[1]/[0,1]", "--ell", "1",
            "--M", "1",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let skipped: Vec<&str> = text
        .lines()
        .filter(|l| l.contains("\"type\":\"skipped\""))
        .collect();
    assert_eq!(skipped.len(), 1);
    assert!(skipped[0].contains("denominator_vanishes"));
}

#[test]
fn sweep_flags_match_product_roots_exhaustively() {
    // the per-record "both orders <= M" flag must agree with lambda being a
    // common root of the specialized order-bound products, for ell <= 3
    let fq = Fq::prime(2).unwrap();
    let a = parse_ratfunc("1", &fq).unwrap();
    let b = parse_ratfunc("t", &fq).unwrap();
    let cfg = SweepConfig {
        fq: fq.clone(),
        r: 2,
        a: a.clone(),
        b: b.clone(),
        ell_min: 1,
        ell_max: 3,
        m_max: 2,
        lambda_deg: None,
        tau_select: TauSelect::All,
        seed: 0,
        threads: Some(2),
    };
    let out = run_sweep(&cfg).unwrap();
    let fam_a = GenericFamily::new(2, a).unwrap();
    let fam_b = GenericFamily::new(2, b).unwrap();
    for m in 1..=2usize {
        let ga = fam_a.order_bound_product(m, 10_000, &fq).unwrap();
        let gb = fam_b.order_bound_product(m, 10_000, &fq).unwrap();
        for rec in &out.records {
            let ctx = FieldCtx::new(fq.clone(), rec.ell).unwrap();
            let tau = dtors_cli::textio::elem_from_json(&rec.tau, &ctx).unwrap();
            let lambda = dtors_cli::textio::elem_from_json(&rec.lambda, &ctx).unwrap();
            let common = ga.specialize(&tau, &ctx).eval(&lambda, &ctx).is_zero()
                && gb.specialize(&tau, &ctx).eval(&lambda, &ctx).is_zero();
            assert_eq!(
                rec.both_le_m[m - 1],
                common,
                "ell={} m={m} tau={} lambda={}",
                rec.ell,
                rec.tau,
                rec.lambda
            );
        }
    }
}

#[test]
fn sweep_with_smaller_lambda_field() {
    // lambda swept over F_2 while tau ranges over generators of F_8
    let fq = Fq::prime(2).unwrap();
    let cfg = SweepConfig {
        fq: fq.clone(),
        r: 2,
        a: RatFunc::one(&fq),
        b: parse_ratfunc("t", &fq).unwrap(),
        ell_min: 3,
        ell_max: 3,
        m_max: 1,
        lambda_deg: Some(1),
        tau_select: TauSelect::All,
        seed: 0,
        threads: Some(1),
    };
    let out = run_sweep(&cfg).unwrap();
    // 6 generators of F_8, 2 lambda values
    assert_eq!(out.records.len(), 12);
    // cross-check one record against a direct computation
    let ctx = FieldCtx::new(fq.clone(), 3).unwrap();
    let rec = &out.records[0];
    let tau = dtors_cli::textio::elem_from_json(&rec.tau, &ctx).unwrap();
    let lambda = dtors_cli::textio::elem_from_json(&rec.lambda, &ctx).unwrap();
    let params = DrinfeldParams::new(2, tau.clone(), lambda, &ctx).unwrap();
    assert_eq!(
        params.torsion_order(&tau, &ctx).degree().unwrap(),
        rec.deg_ord_b
    );
}

#[test]
fn certificate_from_file_matches_example() {
    // system (x, x+t): certificate t
    let dir = std::env::temp_dir().join("dtors-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("system.json");
    std::fs::write(
        &path,
        r#"{"p":2,"e":1,"system":[[[1,[1]]],[[0,[0,1]],[1,[1]]]]}"#,
    )
    .unwrap();
    let out = dtors()
        .args([
            "certificate",
            "--input",
            path.to_str().unwrap(),
            "--verify",
            "2",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["cert"], serde_json::json!([0, 1]));
    assert_eq!(v["generic_count"], 0);
    assert_eq!(v["verification"]["fail"], 0);
    // over F_2 and F_4: tau = 0 is excluded, the other four pass
    assert_eq!(v["verification"]["excluded"], 2);
    assert_eq!(v["verification"]["pass"], 4);
}

#[test]
fn audit_command_passes_and_respects_cap() {
    let out = dtors()
        .args([
            "lemma-audit",
            "--p",
            "2",
            "--r",
            "2,3",
            "--max-n",
            "2",
            "--M",
            "2",
            "--samples",
            "1",
            "--cap",
            "50",
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"skipped\":\"cap\""), "cap rows expected");
    assert!(!text.contains("\"status\":\"fail\""));
}
