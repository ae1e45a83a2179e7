//! The `order` subcommand: torsion order of one point under one member of
//! the family.

use serde_json::{json, Value};

use dtors_core::drinfeld::DrinfeldParams;
use dtors_core::error::Result;
use dtors_core::ffield::{FieldCtx, Fq};

use crate::textio::{elem_to_json, parse_elem, upoly_to_json};

pub struct OrderJob {
    pub p: u64,
    pub e: usize,
    pub ell: usize,
    pub r: usize,
    pub tau: String,
    pub lambda: String,
    pub point: String,
}

pub fn run_order(job: &OrderJob) -> Result<Value> {
    let fq = Fq::new(job.p, job.e)?;
    let ctx = FieldCtx::new(fq.clone(), job.ell)?;
    let tau = parse_elem(&job.tau, &ctx)?;
    let lambda = parse_elem(&job.lambda, &ctx)?;
    let point = parse_elem(&job.point, &ctx)?;
    let params = DrinfeldParams::new(job.r, tau.clone(), lambda.clone(), &ctx)?;
    let order = params.torsion_order(&point, &ctx);
    Ok(json!({
        "type": "order",
        "p": job.p,
        "e": job.e,
        "ell": job.ell,
        "r": job.r,
        "tau": elem_to_json(&tau, &ctx),
        "lambda": elem_to_json(&lambda, &ctx),
        "point": elem_to_json(&point, &ctx),
        "tau_generates": ctx.is_generator(&tau),
        "order": upoly_to_json(&order, &fq),
        "order_pretty": order.display("T").to_string(),
        "degree": order.degree().expect("orders are monic"),
    }))
}
