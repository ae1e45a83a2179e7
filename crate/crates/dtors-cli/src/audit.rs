//! The `lemma-audit` subcommand: recompute every quantitative law of the
//! family polynomials on generated instances and compare against the stated
//! bounds. Exit is nonzero if any instance violates a law.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use dtors_core::drinfeld::{leq_power, GenericFamily};
use dtors_core::error::Result;
use dtors_core::ffield::Fq;
use dtors_core::polyring::{sample, RatFunc, UPoly};
use dtors_core::specialize::certificate;

use crate::certificate::drinfeld_system;

#[derive(Clone, Debug, PartialEq)]
pub enum Status {
    Pass,
    Fail,
    Skipped(&'static str),
}

#[derive(Clone, Debug)]
pub struct AuditRow {
    pub law: &'static str,
    pub p: u64,
    pub e: usize,
    pub r: usize,
    pub instance: String,
    pub value: String,
    pub bound: String,
    pub status: Status,
}

pub struct AuditConfig {
    pub p_list: Vec<u64>,
    pub e: usize,
    pub r_list: Vec<usize>,
    pub max_point_deg: usize,
    pub max_iterate: usize,
    pub max_order_bound: usize,
    pub samples: usize,
    pub seed: u64,
    pub cap: u128,
}

/// value <= base^exp where the exponent may exceed u32.
fn leq_tower(value: u128, base: u128, exp: u64) -> bool {
    if exp > u32::MAX as u64 {
        return base > 1 || value <= 1;
    }
    leq_power(value, base, exp as u32)
}

fn tower_str(base: u128, exp: u64) -> String {
    match (exp <= 40).then(|| base.checked_pow(exp as u32)).flatten() {
        Some(v) => format!("{base}^{exp} = {v}"),
        None => format!("{base}^{exp}"),
    }
}

pub fn run_audit(cfg: &AuditConfig) -> Result<Vec<AuditRow>> {
    let mut rows = Vec::new();
    for &p in &cfg.p_list {
        let fq = Fq::new(p, cfg.e)?;
        for &r in &cfg.r_list {
            audit_config(&fq, r, cfg, &mut rows)?;
        }
    }
    Ok(rows)
}

fn sample_points(fq: &Fq, cfg: &AuditConfig) -> Vec<RatFunc> {
    let mut points = vec![
        RatFunc::one(fq),
        RatFunc::from_poly(UPoly::var(fq), fq),
        RatFunc::new(UPoly::one(fq), UPoly::from_ints(fq, &[1, 1]), fq).expect("den nonzero"),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ fq.p());
    while points.len() < 3 + cfg.samples {
        points.push(sample::ratfunc(&mut rng, fq, cfg.max_point_deg));
    }
    points
}

fn audit_config(fq: &Fq, r: usize, cfg: &AuditConfig, rows: &mut Vec<AuditRow>) -> Result<()> {
    let q = fq.order();
    let p = fq.p();
    let e = fq.e();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (p << 8) ^ (r as u64));

    for a in sample_points(fq, cfg) {
        let d = a.degree();
        let fam = GenericFamily::new(r, a.clone())?;
        for n in 1..=cfg.max_iterate {
            // cap check: the result has ~deg_z * height coefficients
            let deg_pred = (q as u128).pow((r * (n - 1)) as u32);
            if deg_pred > cfg.cap {
                rows.push(AuditRow {
                    law: "action-degree",
                    p,
                    e,
                    r,
                    instance: format!("a={a} n={n}"),
                    value: String::new(),
                    bound: String::new(),
                    status: Status::Skipped("cap"),
                });
                continue;
            }
            let op = if rng.gen_bool(0.5) {
                UPoly::monomial(fq, n, fq.one())
            } else {
                sample::upoly_exact(&mut rng, fq, n)
            };
            let g = fam.action_poly(&op, fq)?;
            let expect = deg_pred as usize;
            rows.push(AuditRow {
                law: "action-degree",
                p,
                e,
                r,
                instance: format!("a={a} P={}", op.display("T")),
                value: format!("deg_z = {}", g.deg_z().unwrap()),
                bound: format!("= q^(r(deg P - 1)) = {expect}"),
                status: if g.deg_z() == Some(expect) {
                    Status::Pass
                } else {
                    Status::Fail
                },
            });

            let h = g.height()? as u128;
            let exp = (q as u128).checked_pow((r * n) as u32).unwrap_or(u128::MAX);
            let exp64 = u64::try_from(exp).unwrap_or(u64::MAX);
            let ok = leq_tower(h, (2 + d) as u128, exp64);
            let law = if op.is_monic(fq) && op.num_coeffs() == n + 1 && op.coeffs()[..n].iter().all(|c| c.is_zero()) {
                "iterate-height"
            } else {
                "operator-height"
            };
            rows.push(AuditRow {
                law,
                p,
                e,
                r,
                instance: format!("a={a} P={}", op.display("T")),
                value: format!("h = {h}"),
                bound: format!("<= {}", tower_str((2 + d) as u128, exp64)),
                status: if ok { Status::Pass } else { Status::Fail },
            });
        }

        for m in 1..=cfg.max_order_bound {
            let deg_pred = GenericFamily::predicted_product_degree(q, r, m);
            if deg_pred > cfg.cap {
                rows.push(AuditRow {
                    law: "product-degree",
                    p,
                    e,
                    r,
                    instance: format!("a={a} M={m}"),
                    value: String::new(),
                    bound: String::new(),
                    status: Status::Skipped("cap"),
                });
                continue;
            }
            let g = fam.order_bound_product(m, cfg.cap, fq)?;
            let deg = g.deg_z().unwrap() as u128;
            let strict_exp = ((m + 1) * (r + 1)) as u64;
            let strict_ok = leq_tower(deg + 1, q as u128, strict_exp);
            rows.push(AuditRow {
                law: "product-degree",
                p,
                e,
                r,
                instance: format!("a={a} M={m}"),
                value: format!("deg_z = {deg}"),
                bound: format!(
                    "= sum q^s*q^(r(s-1)) = {deg_pred}, < {}",
                    tower_str(q as u128, strict_exp)
                ),
                status: if deg == deg_pred && strict_ok {
                    Status::Pass
                } else {
                    Status::Fail
                },
            });

            let h = g.height()? as u128;
            let mut bound_sum: u128 = 0;
            for s in 1..=m {
                let exp = (q as u128).checked_pow((r * s) as u32).unwrap_or(u128::MAX);
                let term = match u32::try_from(exp) {
                    Ok(exp32) => ((2 + d) as u128)
                        .checked_pow(exp32)
                        .unwrap_or(u128::MAX)
                        .saturating_mul((q as u128).pow(s as u32)),
                    Err(_) => u128::MAX,
                };
                bound_sum = bound_sum.saturating_add(term);
            }
            rows.push(AuditRow {
                law: "product-height",
                p,
                e,
                r,
                instance: format!("a={a} M={m}"),
                value: format!("h = {h}"),
                bound: format!("<= sum q^s*(2+D)^(q^(rs)) = {bound_sum}"),
                status: if h <= bound_sum {
                    Status::Pass
                } else {
                    Status::Fail
                },
            });
        }
    }

    // certificate degree on the canonical independent pair (1, t)
    let a = RatFunc::one(fq);
    let b = RatFunc::from_poly(UPoly::var(fq), fq);
    for m in 1..=cfg.max_order_bound {
        if GenericFamily::predicted_product_degree(q, r, m) > cfg.cap {
            rows.push(AuditRow {
                law: "certificate-degree",
                p,
                e,
                r,
                instance: format!("a=1 b=t M={m}"),
                value: String::new(),
                bound: String::new(),
                status: Status::Skipped("cap"),
            });
            continue;
        }
        let system = drinfeld_system(fq, r, &a, &b, m, cfg.cap)?;
        let cert = certificate(&system, fq, cfg.seed)?;
        let dp = cert.paper_cert.degree().unwrap();
        let dg = cert.cert.degree().unwrap();
        let ok = dp <= cert.paper_bound && dg <= cert.guarded_bound;
        rows.push(AuditRow {
            law: "certificate-degree",
            p,
            e,
            r,
            instance: format!("a=1 b=t M={m}"),
            value: format!("deg bare = {dp}, deg guarded = {dg}"),
            bound: format!(
                "bare <= (2D+1)H = {}, guarded <= (4D+2)H = {}",
                cert.paper_bound, cert.guarded_bound
            ),
            status: if ok { Status::Pass } else { Status::Fail },
        });
    }
    Ok(())
}

pub fn any_failure(rows: &[AuditRow]) -> bool {
    rows.iter().any(|r| r.status == Status::Fail)
}

pub fn rows_to_text(rows: &[AuditRow]) -> String {
    let mut out = String::new();
    let header = format!(
        "{:<19} {:>2} {:>2} {:>2} {:<28} {:<26} {:<46} {}",
        "law", "p", "e", "r", "instance", "value", "bound", "status"
    );
    out.push_str(&header);
    out.push('\n');
    out.push_str(&"-".repeat(header.len()));
    out.push('\n');
    for r in rows {
        let status = match &r.status {
            Status::Pass => "pass".to_string(),
            Status::Fail => "FAIL".to_string(),
            Status::Skipped(why) => format!("skipped: {why}"),
        };
        out.push_str(&format!(
            "{:<19} {:>2} {:>2} {:>2} {:<28} {:<26} {:<46} {}\n",
            r.law, r.p, r.e, r.r, r.instance, r.value, r.bound, status
        ));
    }
    let pass = rows.iter().filter(|r| r.status == Status::Pass).count();
    let fail = rows.iter().filter(|r| r.status == Status::Fail).count();
    let skip = rows.len() - pass - fail;
    out.push_str(&format!("{pass} pass, {fail} fail, {skip} skipped\n"));
    out
}

pub fn rows_to_json(rows: &[AuditRow]) -> String {
    let mut out = String::new();
    for r in rows {
        let status: Value = match &r.status {
            Status::Pass => json!("pass"),
            Status::Fail => json!("fail"),
            Status::Skipped(why) => json!({ "skipped": why }),
        };
        let line = json!({
            "type": "audit_row",
            "law": r.law,
            "p": r.p,
            "e": r.e,
            "r": r.r,
            "instance": r.instance,
            "value": r.value,
            "bound": r.bound,
            "status": status,
        });
        out.push_str(&line.to_string());
        out.push('\n');
    }
    out
}
