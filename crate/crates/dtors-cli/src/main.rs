use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dtors_cli::audit::{any_failure, rows_to_json, rows_to_text, AuditConfig};
use dtors_cli::certificate::{drinfeld_system, CertificateJob};
use dtors_cli::order::OrderJob;
use dtors_cli::sweep::{SweepConfig, TauSelect};
use dtors_cli::textio::{parse_ratfunc, parse_system_file};
use dtors_core::error::{Error, Result};
use dtors_core::ffield::Fq;

/// Exit codes: 0 success, 1 usage, 2 math-domain error, 3 audit or
/// verification failure.
#[derive(Parser)]
#[command(
    name = "dtors",
    version,
    about = "Torsion orders, two-point sweeps, specialization certificates, \
             and degree/height-law audits for the module family \
             Phi_T(x) = tau*x + lambda*x^q + x^(q^r)"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Torsion order of a point under one member of the family
    Order(OrderArgs),
    /// Sweep (tau, lambda) pairs and count simultaneous small orders
    Sweep(SweepArgs),
    /// Build (and optionally verify) a specialization certificate
    Certificate(CertArgs),
    /// Recheck the quantitative degree/height laws on generated instances
    LemmaAudit(AuditArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct OrderArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    e: usize,
    #[arg(long)]
    ell: usize,
    #[arg(long)]
    r: usize,
    /// Element of F_{q^ell}, e.g. [0,1]
    #[arg(long)]
    tau: String,
    #[arg(long)]
    lambda: String,
    #[arg(long)]
    point: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    e: usize,
    #[arg(long)]
    r: usize,
    /// Marked point a as a rational function, e.g. "1", "t", "[0,1]/[1,1]"
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    #[arg(long)]
    ell: usize,
    #[arg(long)]
    ell_max: Option<usize>,
    /// Largest order-degree bound M to report
    #[arg(long = "M", default_value_t = 1)]
    m: usize,
    /// Degree j of the lambda field F_{q^j} (default: ell)
    #[arg(long)]
    lambda_deg: Option<usize>,
    /// "all" or "sample:k"
    #[arg(long, default_value = "all")]
    tau: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CertArgs {
    /// JSON system file: {"p": .., "e": .., "system": [[[exp, coeffs], ..], ..]}
    #[arg(long, conflicts_with = "from_drinfeld")]
    input: Option<PathBuf>,
    /// Build the system from the order-bound products of the points a and b
    #[arg(long, requires_all = ["p", "r", "a", "b"])]
    from_drinfeld: bool,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, default_value_t = 1)]
    e: usize,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long = "M", default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Verify exhaustively over every tau in F_{q^ell}, ell <= this bound
    #[arg(long)]
    verify: Option<usize>,
    /// Verify the bare factor product delta*content instead of the guarded
    /// certificate
    #[arg(long)]
    paper_strict: bool,
    #[arg(long, default_value_t = 10_000)]
    cap: u128,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AuditArgs {
    /// Comma-separated primes
    #[arg(long, value_delimiter = ',', default_values_t = vec![2u64, 3])]
    p: Vec<u64>,
    #[arg(long, default_value_t = 1)]
    e: usize,
    /// Comma-separated r values
    #[arg(long, value_delimiter = ',', default_values_t = vec![2usize, 3])]
    r: Vec<usize>,
    /// Max degree of sampled marked points
    #[arg(long, default_value_t = 3)]
    max_dega: usize,
    /// Max iterate degree n
    #[arg(long, default_value_t = 3)]
    max_n: usize,
    #[arg(long = "M", default_value_t = 2)]
    m: usize,
    /// Random marked points per (p, r) beyond the fixed ones
    #[arg(long, default_value_t = 3)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10_000)]
    cap: u128,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap renders help/version on stdout with success itself
            if err.use_stderr() {
                eprint!("{err}");
                return ExitCode::from(1);
            }
            print!("{err}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            // malformed input is usage (1); semantic math problems are 2
            let code = match err {
                Error::Parse(_) => 1,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Order(args) => {
            let job = OrderJob {
                p: args.p,
                e: args.e,
                ell: args.ell,
                r: args.r,
                tau: args.tau,
                lambda: args.lambda,
                point: args.point,
            };
            let report = dtors_cli::order::run_order(&job)?;
            emit(&args.out, format!("{report}\n"))?;
            Ok(0)
        }
        Cmd::Sweep(args) => run_sweep_cmd(args),
        Cmd::Certificate(args) => run_certificate_cmd(args),
        Cmd::LemmaAudit(args) => run_audit_cmd(args),
    }
}

fn run_sweep_cmd(args: SweepArgs) -> Result<u8> {
    let fq = Fq::new(args.p, args.e)?;
    let tau_select = parse_tau_select(&args.tau)?;
    let cfg = SweepConfig {
        a: parse_ratfunc(&args.a, &fq)?,
        b: parse_ratfunc(&args.b, &fq)?,
        fq,
        r: args.r,
        ell_min: args.ell,
        ell_max: args.ell_max.unwrap_or(args.ell),
        m_max: args.m,
        lambda_deg: args.lambda_deg,
        tau_select,
        seed: args.seed,
        threads: None,
    };
    let out = dtors_cli::sweep::run_sweep(&cfg)?;
    let mut buf: Vec<u8> = Vec::new();
    match args.format {
        Format::Json => dtors_cli::sweep::write_json(&mut buf, &cfg, &out),
        Format::Csv => dtors_cli::sweep::write_csv(&mut buf, &out),
        Format::Text => dtors_cli::sweep::write_json(&mut buf, &cfg, &out),
    }
    .map_err(|e| Error::InvalidParams(format!("write: {e}")))?;
    emit_bytes(&args.out, &buf)?;
    eprintln!(
        "sweep: {} records, {} skipped taus, {:.3}s",
        out.records.len(),
        out.skipped.len(),
        out.total_nanos as f64 / 1e9
    );
    Ok(0)
}

fn parse_tau_select(s: &str) -> Result<TauSelect> {
    if s == "all" {
        return Ok(TauSelect::All);
    }
    if let Some(k) = s.strip_prefix("sample:") {
        let k: usize = k
            .parse()
            .map_err(|_| Error::Parse(format!("bad sample size in --tau {s}")))?;
        return Ok(TauSelect::Sample(k));
    }
    Err(Error::Parse(format!(
        "--tau must be \"all\" or \"sample:k\", got {s}"
    )))
}

fn run_certificate_cmd(args: CertArgs) -> Result<u8> {
    let (fq, system) = if args.from_drinfeld {
        let p = args.p.expect("required by clap");
        let r = args.r.ok_or_else(|| Error::InvalidParams("--from-drinfeld needs --r".into()))?;
        let fq = Fq::new(p, args.e)?;
        let a = parse_ratfunc(args.a.as_deref().unwrap(), &fq)?;
        let b = parse_ratfunc(args.b.as_deref().unwrap(), &fq)?;
        let system = drinfeld_system(&fq, r, &a, &b, args.m, args.cap)?;
        (fq, system)
    } else {
        let path = args.input.ok_or_else(|| {
            Error::InvalidParams("provide --input FILE or --from-drinfeld".into())
        })?;
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::InvalidParams(format!("cannot read {}: {e}", path.display())))?;
        parse_system_file(&text)?
    };
    let job = CertificateJob {
        fq,
        system,
        seed: args.seed,
        verify_ell_max: args.verify,
        paper_strict: args.paper_strict,
    };
    let (report, failed) = dtors_cli::certificate::run_certificate(&job)?;
    emit(&args.out, format!("{report}\n"))?;
    Ok(if failed { 3 } else { 0 })
}

fn run_audit_cmd(args: AuditArgs) -> Result<u8> {
    let cfg = AuditConfig {
        p_list: args.p,
        e: args.e,
        r_list: args.r,
        max_point_deg: args.max_dega,
        max_iterate: args.max_n,
        max_order_bound: args.m,
        samples: args.samples,
        seed: args.seed,
        cap: args.cap,
    };
    let rows = dtors_cli::audit::run_audit(&cfg)?;
    let text = match args.format {
        Format::Json => rows_to_json(&rows),
        _ => rows_to_text(&rows),
    };
    emit(&args.out, text)?;
    Ok(if any_failure(&rows) { 3 } else { 0 })
}

fn emit(path: &Option<PathBuf>, text: String) -> Result<()> {
    emit_bytes(path, text.as_bytes())
}

fn emit_bytes(path: &Option<PathBuf>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes)
            .map_err(|e| Error::InvalidParams(format!("cannot write {}: {e}", p.display()))),
        None => {
            std::io::stdout()
                .write_all(bytes)
                .map_err(|e| Error::InvalidParams(format!("stdout: {e}")))?;
            Ok(())
        }
    }
}
