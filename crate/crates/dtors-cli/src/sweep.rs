//! The two-point torsion sweep: for every generator tau of F_{q^ell}/F_q and
//! every lambda in F_{q^j}, compute the orders of a(tau) and b(tau) under
//! the module with parameters (tau, lambda) and count the lambda for which
//! both orders have degree at most M.

use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use dtors_core::drinfeld::DrinfeldParams;
use dtors_core::error::{Error, Result};
use dtors_core::ffield::{ExtFieldElem, FieldCtx, Fq};
use dtors_core::polyring::{fq_linearly_independent, RatFunc};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::textio::elem_to_json;

#[derive(Clone, Debug)]
pub enum TauSelect {
    /// Every generator of F_{q^ell}/F_q.
    All,
    /// A seeded uniform sample of generators.
    Sample(usize),
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub fq: Fq,
    pub r: usize,
    pub a: RatFunc,
    pub b: RatFunc,
    pub ell_min: usize,
    pub ell_max: usize,
    pub m_max: usize,
    /// Degree j of the lambda field F_{q^j}; defaults to ell.
    pub lambda_deg: Option<usize>,
    pub tau_select: TauSelect,
    pub seed: u64,
    pub threads: Option<usize>,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.r < 2 {
            return Err(Error::InvalidParams("r must be at least 2".into()));
        }
        if self.ell_min == 0 || self.ell_min > self.ell_max {
            return Err(Error::InvalidParams("need 1 <= ell <= ell-max".into()));
        }
        if self.m_max == 0 {
            return Err(Error::InvalidParams("M must be at least 1".into()));
        }
        if self.a.is_zero() || self.b.is_zero() {
            return Err(Error::ZeroPoint);
        }
        if !fq_linearly_independent(&self.a, &self.b, &self.fq) {
            return Err(Error::InvalidParams(
                "points a and b are F_q-linearly dependent: dependent points \
                 have identical torsion orders for every member of the family, \
                 so the two-point count degenerates"
                    .into(),
            ));
        }
        Ok(())
    }
}

/// One (tau, lambda) measurement.
#[derive(Clone, Debug)]
pub struct SweepRecord {
    pub ell: usize,
    pub tau: Value,
    pub lambda: Value,
    pub deg_ord_a: usize,
    pub deg_ord_b: usize,
    /// both_le_m[m-1]: both orders have degree <= m.
    pub both_le_m: Vec<bool>,
    pub a_at_tau_zero: bool,
    pub b_at_tau_zero: bool,
    /// Wall time of the (tau, lambda) evaluation; reported on stderr only so
    /// output files stay byte-identical across runs.
    pub elapsed_nanos: u128,
}

#[derive(Clone, Debug)]
pub struct SkippedTau {
    pub ell: usize,
    pub tau: Value,
    pub reason: &'static str,
}

/// Exceptional-lambda counts for one (ell, m).
#[derive(Clone, Debug)]
pub struct SummaryRow {
    pub ell: usize,
    pub m: usize,
    /// Per-tau count of lambda with both orders of degree <= m.
    pub per_tau: Vec<(Value, usize)>,
    pub count_max: usize,
    pub num_generators: usize,
    pub num_lambda: usize,
    pub num_skipped: usize,
}

#[derive(Clone, Debug)]
pub struct SweepOutput {
    pub records: Vec<SweepRecord>,
    pub skipped: Vec<SkippedTau>,
    pub summaries: Vec<SummaryRow>,
    pub total_nanos: u128,
}

struct TauResult {
    tau_index: u64,
    tau_json: Value,
    records: Vec<SweepRecord>,
    counts: Vec<usize>,
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutput> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(effective_threads(cfg.threads))
        .build()
        .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?;

    let mut records = Vec::new();
    let mut skipped = Vec::new();
    let mut summaries = Vec::new();
    let started = Instant::now();

    for ell in cfg.ell_min..=cfg.ell_max {
        let (ell_records, ell_skipped, ell_summaries) = pool.install(|| sweep_one_ell(cfg, ell))?;
        records.extend(ell_records);
        skipped.extend(ell_skipped);
        summaries.extend(ell_summaries);
    }

    Ok(SweepOutput {
        records,
        skipped,
        summaries,
        total_nanos: started.elapsed().as_nanos(),
    })
}

fn effective_threads(explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| {
            std::env::var("DTORS_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
        .max(1)
}

type EllOutcome = (Vec<SweepRecord>, Vec<SkippedTau>, Vec<SummaryRow>);

fn sweep_one_ell(cfg: &SweepConfig, ell: usize) -> Result<EllOutcome> {
    let fq = &cfg.fq;
    let j = cfg.lambda_deg.unwrap_or(ell);
    if j == 0 {
        return Err(Error::InvalidParams("lambda field degree must be >= 1".into()));
    }
    let work_deg = lcm(ell, j);
    let ctx = FieldCtx::new(fq.clone(), work_deg)?;
    let ctx_ell = FieldCtx::new(fq.clone(), ell)?;
    let ctx_j = FieldCtx::new(fq.clone(), j)?;

    // images of F_{q^ell} and F_{q^j} inside the working field
    let gen_ell = ctx_ell.generator_image(&ctx)?;
    let gen_j = ctx_j.generator_image(&ctx)?;

    let mut taus: Vec<ExtFieldElem> = ctx_ell
        .elements()
        .map(|x| ctx_ell.embed_via(&x, &gen_ell, &ctx))
        .filter(|x| ctx.minimal_polynomial(x).degree() == Some(ell))
        .collect();
    taus.sort_by_key(|x| x.index(&ctx));
    if let TauSelect::Sample(k) = cfg.tau_select {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (ell as u64));
        taus.shuffle(&mut rng);
        taus.truncate(k);
        taus.sort_by_key(|x| x.index(&ctx));
    }

    let mut lambdas: Vec<ExtFieldElem> = ctx_j
        .elements()
        .map(|x| ctx_j.embed_via(&x, &gen_j, &ctx))
        .collect();
    lambdas.sort_by_key(|x| x.index(&ctx));
    let num_lambda = lambdas.len();

    let num_generators = taus.len();
    let outcomes: Vec<std::result::Result<TauResult, SkippedTau>> = taus
        .par_iter()
        .map(|tau| evaluate_tau(cfg, ell, tau, &lambdas, &ctx))
        .collect();

    let mut results: Vec<TauResult> = Vec::new();
    let mut skipped: Vec<SkippedTau> = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(r) => results.push(r),
            Err(s) => skipped.push(s),
        }
    }
    results.sort_by_key(|r| r.tau_index);

    let mut records = Vec::new();
    let mut summaries = Vec::new();
    for m in 1..=cfg.m_max {
        let per_tau: Vec<(Value, usize)> = results
            .iter()
            .map(|r| (r.tau_json.clone(), r.counts[m - 1]))
            .collect();
        let count_max = per_tau.iter().map(|(_, c)| *c).max().unwrap_or(0);
        summaries.push(SummaryRow {
            ell,
            m,
            per_tau,
            count_max,
            num_generators,
            num_lambda,
            num_skipped: skipped.len(),
        });
    }
    for r in results {
        records.extend(r.records);
    }
    Ok((records, skipped, summaries))
}

fn evaluate_tau(
    cfg: &SweepConfig,
    ell: usize,
    tau: &ExtFieldElem,
    lambdas: &[ExtFieldElem],
    ctx: &FieldCtx,
) -> std::result::Result<TauResult, SkippedTau> {
    let tau_json = elem_to_json(tau, ctx);
    let a_den = cfg.a.den().eval_ext(tau, ctx);
    let b_den = cfg.b.den().eval_ext(tau, ctx);
    if a_den.is_zero() || b_den.is_zero() {
        return Err(SkippedTau {
            ell,
            tau: tau_json,
            reason: "denominator_vanishes",
        });
    }
    let pa = cfg.a.eval_ext(tau, ctx).expect("denominator checked");
    let pb = cfg.b.eval_ext(tau, ctx).expect("denominator checked");

    let mut records = Vec::with_capacity(lambdas.len());
    let mut counts = vec![0usize; cfg.m_max];
    for lambda in lambdas {
        let t0 = Instant::now();
        let params = DrinfeldParams::new(cfg.r, tau.clone(), lambda.clone(), ctx)
            .expect("validated parameters");
        let deg_a = params
            .torsion_order(&pa, ctx)
            .degree()
            .expect("orders are monic");
        let deg_b = params
            .torsion_order(&pb, ctx)
            .degree()
            .expect("orders are monic");
        let worst = deg_a.max(deg_b);
        let both_le_m: Vec<bool> = (1..=cfg.m_max).map(|m| worst <= m).collect();
        for (m, hit) in both_le_m.iter().enumerate() {
            if *hit {
                counts[m] += 1;
            }
        }
        records.push(SweepRecord {
            ell,
            tau: tau_json.clone(),
            lambda: elem_to_json(lambda, ctx),
            deg_ord_a: deg_a,
            deg_ord_b: deg_b,
            both_le_m,
            a_at_tau_zero: pa.is_zero(),
            b_at_tau_zero: pb.is_zero(),
            elapsed_nanos: t0.elapsed().as_nanos(),
        });
    }
    Ok(TauResult {
        tau_index: tau.index(ctx),
        tau_json,
        records,
        counts,
    })
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

// --- serialization ---

pub fn config_json(cfg: &SweepConfig) -> Value {
    json!({
        "type": "config",
        "p": cfg.fq.p(),
        "e": cfg.fq.e(),
        "r": cfg.r,
        "a": cfg.a.to_string(),
        "b": cfg.b.to_string(),
        "ell_min": cfg.ell_min,
        "ell_max": cfg.ell_max,
        "m_max": cfg.m_max,
        "lambda_deg": cfg.lambda_deg,
        "tau": match cfg.tau_select {
            TauSelect::All => "all".to_string(),
            TauSelect::Sample(k) => format!("sample:{k}"),
        },
        "seed": cfg.seed,
    })
}

/// JSON-lines: a config header, one line per record and skipped tau, then
/// one summary object per (ell, m).
pub fn write_json(out: &mut dyn std::io::Write, cfg: &SweepConfig, res: &SweepOutput) -> std::io::Result<()> {
    writeln!(out, "{}", config_json(cfg))?;
    for rec in &res.records {
        let line = json!({
            "type": "record",
            "ell": rec.ell,
            "tau": rec.tau,
            "lambda": rec.lambda,
            "deg_ord_a": rec.deg_ord_a,
            "deg_ord_b": rec.deg_ord_b,
            "both_le_m": rec.both_le_m,
            "a_at_tau_zero": rec.a_at_tau_zero,
            "b_at_tau_zero": rec.b_at_tau_zero,
        });
        writeln!(out, "{line}")?;
    }
    for s in &res.skipped {
        let line = json!({
            "type": "skipped",
            "ell": s.ell,
            "tau": s.tau,
            "reason": s.reason,
        });
        writeln!(out, "{line}")?;
    }
    for s in &res.summaries {
        let per_tau: Vec<Value> = s
            .per_tau
            .iter()
            .map(|(tau, c)| json!({"tau": tau, "count": c}))
            .collect();
        let line = json!({
            "type": "summary",
            "ell": s.ell,
            "m": s.m,
            "count_max": s.count_max,
            "per_tau": per_tau,
            "num_generators": s.num_generators,
            "num_lambda": s.num_lambda,
            "num_skipped": s.num_skipped,
        });
        writeln!(out, "{line}")?;
    }
    Ok(())
}

/// CSV with the same columns: record and skipped rows first, then per-tau
/// summary rows and a summary_max row per (ell, m).
pub fn write_csv(out: &mut dyn std::io::Write, res: &SweepOutput) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "type",
        "ell",
        "m",
        "tau",
        "lambda",
        "deg_ord_a",
        "deg_ord_b",
        "both_le_m",
        "count",
    ])?;
    for r in &res.records {
        let flags: Vec<&str> = r.both_le_m.iter().map(|b| if *b { "1" } else { "0" }).collect();
        w.write_record([
            "record",
            &r.ell.to_string(),
            "",
            &r.tau.to_string(),
            &r.lambda.to_string(),
            &r.deg_ord_a.to_string(),
            &r.deg_ord_b.to_string(),
            &flags.join(";"),
            "",
        ])?;
    }
    for s in &res.skipped {
        w.write_record(["skipped", &s.ell.to_string(), "", &s.tau.to_string(), s.reason, "", "", "", ""])?;
    }
    for s in &res.summaries {
        for (tau, c) in &s.per_tau {
            w.write_record([
                "summary",
                &s.ell.to_string(),
                &s.m.to_string(),
                &tau.to_string(),
                "",
                "",
                "",
                "",
                &c.to_string(),
            ])?;
        }
        w.write_record([
            "summary_max",
            &s.ell.to_string(),
            &s.m.to_string(),
            "",
            "",
            "",
            "",
            "",
            &s.count_max.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
