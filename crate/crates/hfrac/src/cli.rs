//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use hfrac_core::combinat::{alpha, clique_cover_leq, greedy_clique_cover};
use hfrac_core::fracchrom::fractional_clique_cover;
use hfrac_core::haemers::{alon_certificate, johnson_certificate, minrank_exact, AlonVariant, MinrankOptions, MinrankOutcome};
use hfrac_core::hfrac::{hfrac_upper_search, pairrep_from_drep, subspace_from_pairrep, RankRRep, WitnessSource};
use hfrac_core::theta::{pentagon_umbrella, theta_circulant, theta_johnson_lp_solution, johnson_lp, DEFAULT_TOL};
use hfrac_core::{Budget, Graph, Limits, PrimeModulus};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::deadline::Deadline;
use crate::report::{BoundReport, BoundValue};
use crate::schema::{Certificate, LpJson, LpSolutionJson};
use crate::{reproduce, textgraph};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "hfrac", version, about = "Certified bounds on the Shannon capacity of graphs")]
pub struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Wall-clock budget for searches; overrides CAPACITY_BUDGET_MS.
    #[arg(long, global = true)]
    pub budget_ms: Option<u64>,
    /// Largest graph any generator or product may build.
    #[arg(long, global = true)]
    pub max_vertices: Option<usize>,
    /// Include running times in JSON (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Independence number by branch and bound.
    Alpha {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum clique partition, or one with at most `k` cliques.
    Cover {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fractional clique cover number, i.e. the fractional chromatic number of the complement.
    Fracchrom {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Haemers minrank over GF(p).
    Minrank {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fractional Haemers bound over GF(p), as a certified interval.
    Hfrac {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        dmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lovász theta of a circulant graph; the connection set defaults to the cycle.
    ThetaCirculant {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        connection: Vec<usize>,
    },
    /// Lovász theta of johnson:p,n from its linear program, exactly.
    ThetaLp {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
    },
    /// Build a certificate and write it as JSON.
    Certify {
        #[arg(long, value_enum)]
        kind: CertKind,
        #[arg(long)]
        graph: Option<String>,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 2)]
        dmax: usize,
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        #[arg(long)]
        modulus: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a certificate file against a graph.
    Verify {
        #[arg(long)]
        cert: PathBuf,
        /// Defaults to the graph recorded in the certificate.
        #[arg(long)]
        graph: Option<String>,
    },
    /// Write a graph as an edge list.
    Generate {
        #[arg(long, conflicts_with = "random")]
        graph: Option<String>,
        /// Random graph on this many vertices, drawn with --seed.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run the claim suite.
    Reproduce {
        /// Skip the slowest item (alpha of johnson:2,8).
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CertKind {
    IndependentSet,
    CliqueCover,
    FractionalCover,
    /// Minrank fit matrix.
    Fit,
    /// Fit matrix of a minimum clique partition.
    CoverFit,
    Drep,
    Pairrep,
    Subspace,
    Rankr,
    Johnson,
    Alon,
    /// Orthonormal representation of cycle:5 with its axis handle.
    Umbrella,
    /// Orthonormal representation of the complement of cycle:5.
    UmbrellaDual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    P,
    Q,
    R,
}

/// Exit code plus what goes to stdout and stderr.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }
}

/// Parses `argv` and runs the subcommand without touching the process streams.
pub fn run_captured<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => Outcome { code: classify(&e), stdout: String::new(), stderr: format!("error: {e:#}\n") },
    }
}

/// Runs with process streams; returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let o = run_captured(argv);
    print!("{}", o.stdout);
    eprint!("{}", o.stderr);
    o.code
}

fn classify(e: &anyhow::Error) -> i32 {
    for cause in e.chain() {
        if let Some(err) = cause.downcast_ref::<hfrac_core::Error>() {
            return match err {
                hfrac_core::Error::InvalidCertificate(_) => EXIT_VERIFY,
                _ => EXIT_USAGE,
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return EXIT_IO;
        }
    }
    EXIT_USAGE
}

struct Ctx {
    json: bool,
    seed: u64,
    timings: bool,
    limits: Limits,
    deadline: Deadline,
}

impl Ctx {
    fn graph(&self, input: &str) -> anyhow::Result<(Graph, String)> {
        textgraph::resolve(input, &self.limits)
    }

    fn prime(&self, p: u64) -> anyhow::Result<PrimeModulus> {
        Ok(PrimeModulus::new(p)?)
    }
}

fn dispatch(cli: &Cli) -> anyhow::Result<Outcome> {
    let mut limits = Limits::default();
    if let Some(m) = cli.max_vertices {
        limits.max_vertices = m;
    }
    let ctx = Ctx {
        json: cli.json,
        seed: cli.seed,
        timings: cli.timings,
        limits,
        deadline: Deadline::from_env_or(cli.budget_ms)?,
    };
    let stop = || ctx.deadline.expired();
    let mut budget = Budget::default().with_stop(&stop);
    let started = std::time::Instant::now();
    let report = match &cli.command {
        Command::Alpha { graph, out } => (cmd_alpha(&ctx, graph, &mut budget)?, out.clone()),
        Command::Cover { graph, k, out } => (cmd_cover(&ctx, graph, *k, &mut budget)?, out.clone()),
        Command::Fracchrom { graph, out } => (cmd_fracchrom(&ctx, graph, &mut budget)?, out.clone()),
        Command::Minrank { graph, p, out } => (cmd_minrank(&ctx, graph, *p, &mut budget)?, out.clone()),
        Command::Hfrac { graph, p, dmax, out } => (cmd_hfrac(&ctx, graph, *p, *dmax, &mut budget)?, out.clone()),
        Command::ThetaCirculant { n, connection } => (cmd_theta_circulant(*n, connection)?, None),
        Command::ThetaLp { p, n } => (cmd_theta_lp(*p, *n)?, None),
        Command::Certify { kind, graph, p, q, n, dmax, variant, modulus, out } => {
            let args = CertifyArgs { kind: *kind, graph: graph.as_deref(), p: *p, q: *q, n: *n, dmax: *dmax, variant: *variant, modulus: *modulus };
            return cmd_certify(&ctx, &args, out.as_deref(), &mut budget);
        }
        Command::Verify { cert, graph } => return cmd_verify(&ctx, cert, graph.as_deref()),
        Command::Generate { graph, random, density, out } => {
            return cmd_generate(&ctx, graph.as_deref(), *random, *density, out.as_deref())
        }
        Command::Reproduce { quick } => return Ok(reproduce::run_suite(*quick, ctx.json, ctx.timings)),
    };
    let (mut report, out) = report;
    if ctx.timings {
        report.runtime_ms = Some(started.elapsed().as_millis() as u64);
    }
    finish(&ctx, report, out.as_deref())
}

fn finish(ctx: &Ctx, mut report: BoundReport, out: Option<&Path>) -> anyhow::Result<Outcome> {
    if let Some(path) = out {
        let witnesses = std::mem::take(&mut report.witnesses);
        report.witness_refs.clear();
        for (i, w) in witnesses.iter().enumerate() {
            let p = if i == 0 { path.to_path_buf() } else { suffixed(path, i) };
            write_json(&p, w)?;
            report.witness_refs.push(p.display().to_string());
        }
    }
    let code = if report.interrupted { EXIT_BUDGET } else { EXIT_OK };
    let mut stderr = String::new();
    if report.interrupted {
        stderr.push_str("budget exhausted; reporting a certified interval\n");
    }
    let stdout = if ctx.json {
        to_json(&report)?
    } else {
        let mut s = format!("{}\n", report.human_value());
        for n in &report.notes {
            stderr.push_str(&format!("note: {n}\n"));
        }
        if let Some(t) = report.tol {
            s = format!("{} (tol {t:e})\n", report.human_value());
        }
        s
    };
    Ok(Outcome { code, stdout, stderr })
}

fn suffixed(path: &Path, i: usize) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let ext = path.extension().map(|e| format!(".{}", e.to_string_lossy())).unwrap_or_default();
    path.with_file_name(format!("{stem}-{i}{ext}"))
}

fn to_json<T: Serialize>(v: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn write_json<T: Serialize>(path: &Path, v: &T) -> anyhow::Result<()> {
    std::fs::write(path, to_json(v)?).with_context(|| format!("writing {}", path.display()))
}

fn cmd_alpha(ctx: &Ctx, input: &str, budget: &mut Budget<'_>) -> anyhow::Result<BoundReport> {
    let (g, expr) = ctx.graph(input)?;
    Ok(match alpha(&g, budget) {
        Ok(s) => BoundReport::new("alpha", &expr, BoundValue::int(s.len()), BoundValue::int(s.len()))
            .with_witness(Certificate::independent_set(&expr, &s)),
        Err(i) => {
            let mut r = BoundReport::new("alpha", &expr, BoundValue::int(i.best.len()), BoundValue::int(i.upper))
                .with_witness(Certificate::independent_set(&expr, &i.best));
            r.interrupted = true;
            r
        }
    })
}

fn cmd_cover(ctx: &Ctx, input: &str, k: Option<usize>, budget: &mut Budget<'_>) -> anyhow::Result<BoundReport> {
    let (g, expr) = ctx.graph(input)?;
    let mut lower = match alpha(&g, budget) {
        Ok(s) => s.len(),
        Err(i) => i.best.len(),
    };
    let mut best = greedy_clique_cover(&g);
    let mut interrupted = budget.exhausted();
    match k {
        Some(k) => match clique_cover_leq(&g, k, budget) {
            Ok(Some(c)) => best = c,
            Ok(None) => lower = lower.max(k + 1),
            Err(_) => interrupted = true,
        },
        None => {
            while best.len() > lower && !interrupted {
                match clique_cover_leq(&g, best.len() - 1, budget) {
                    Ok(Some(c)) => best = c,
                    Ok(None) => lower = best.len(),
                    Err(_) => interrupted = true,
                }
            }
        }
    }
    let mut r = BoundReport::new("clique cover number", &expr, BoundValue::int(lower), BoundValue::int(best.len()))
        .with_witness(Certificate::clique_cover(&expr, &best));
    if let Some(k) = k {
        r = r.note(if best.len() <= k {
            format!("partition into at most {k} cliques found")
        } else if lower > k {
            format!("no partition into {k} cliques exists")
        } else {
            format!("undecided whether {k} cliques suffice")
        });
    }
    r.interrupted = interrupted;
    Ok(r)
}

fn cmd_fracchrom(ctx: &Ctx, input: &str, budget: &mut Budget<'_>) -> anyhow::Result<BoundReport> {
    let (g, expr) = ctx.graph(input)?;
    let param = "fractional clique cover number";
    Ok(match fractional_clique_cover(&g, budget)? {
        Ok(c) => BoundReport::new(param, &expr, BoundValue::exact(&c.value), BoundValue::exact(&c.value))
            .with_witness(Certificate::fractional_cover(&expr, &c)),
        Err(iv) => {
            let mut r = BoundReport::new(param, &expr, BoundValue::exact(&iv.lower), BoundValue::exact(&iv.cover.value))
                .with_witness(Certificate::fractional_cover(&expr, &iv.cover));
            r.interrupted = true;
            r
        }
    })
}

fn cmd_minrank(ctx: &Ctx, input: &str, p: u64, budget: &mut Budget<'_>) -> anyhow::Result<BoundReport> {
    let (g, expr) = ctx.graph(input)?;
    let p = ctx.prime(p)?;
    let out = minrank_exact(&g, p, &MinrankOptions::default(), budget)?;
    let (lo, hi) = out.bounds();
    let mut r = BoundReport::new(&format!("H(G; GF({}))", p.get()), &expr, BoundValue::int(lo), BoundValue::int(hi))
        .with_witness(Certificate::fit(&expr, out.certificate()));
    if let MinrankOutcome::Interval { .. } = out {
        if budget.exhausted() {
            r.interrupted = true;
        } else {
            r = r.note("search space exceeds the exhaustive-search guard; upper end from a clique partition");
        }
    }
    Ok(r)
}

fn cmd_hfrac(ctx: &Ctx, input: &str, p: u64, dmax: usize, budget: &mut Budget<'_>) -> anyhow::Result<BoundReport> {
    let (g, expr) = ctx.graph(input)?;
    let p = ctx.prime(p)?;
    let b = hfrac_upper_search(&g, p, dmax, &ctx.limits, budget)?;
    let source = match b.source {
        WitnessSource::Minrank => "witness: minrank fit (d = 1)",
        WitnessSource::FractionalCover => "witness: blow-up of an optimal fractional clique cover",
        WitnessSource::Tensor => "witness: tensor product of the factors' witnesses",
    };
    let mut r = BoundReport::new(&format!("H_f(G; GF({}))", p.get()), &expr, BoundValue::exact(&b.lower), BoundValue::exact(&b.upper))
        .with_witness(Certificate::drep(&expr, &b.witness))
        .note(source)
        .note("lower end is alpha(G)");
    r.interrupted = budget.exhausted();
    Ok(r)
}

fn cmd_theta_circulant(n: usize, connection: &[usize]) -> anyhow::Result<BoundReport> {
    let conn: Vec<usize> = if connection.is_empty() {
        if n < 3 {
            bail!("the default cycle connection needs n >= 3");
        }
        vec![1, n - 1]
    } else {
        connection.to_vec()
    };
    let value = theta_circulant(n, &conn)?;
    let name = if connection.is_empty() {
        format!("cycle:{n}")
    } else {
        format!("circulant:{n}[{}]", conn.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
    };
    let mut r = BoundReport::new("theta", &name, BoundValue::Float(value), BoundValue::Float(value));
    r.tol = Some(DEFAULT_TOL);
    Ok(r)
}

#[derive(Serialize)]
struct LpDetails {
    lp: LpJson,
    solution: LpSolutionJson,
}

fn cmd_theta_lp(p: u64, n: u64) -> anyhow::Result<BoundReport> {
    let lp = johnson_lp(p, n)?;
    let sol = theta_johnson_lp_solution(p, n)?;
    let mut r = BoundReport::new("theta", &format!("johnson:{p},{n}"), BoundValue::exact(&sol.value), BoundValue::exact(&sol.value));
    r.details = Some(serde_json::to_value(LpDetails { lp: (&lp).into(), solution: (&sol).into() })?);
    Ok(r)
}

struct CertifyArgs<'a> {
    kind: CertKind,
    graph: Option<&'a str>,
    p: u64,
    q: Option<u64>,
    n: Option<usize>,
    dmax: usize,
    variant: Option<VariantArg>,
    modulus: Option<u64>,
}

fn need<T>(v: Option<T>, flag: &str) -> anyhow::Result<T> {
    v.with_context(|| format!("--{flag} is required for this kind"))
}

fn build_certificate(ctx: &Ctx, a: &CertifyArgs<'_>, budget: &mut Budget<'_>) -> anyhow::Result<(Certificate, bool)> {
    let graph = || -> anyhow::Result<(Graph, String)> { ctx.graph(need(a.graph, "graph")?) };
    Ok(match a.kind {
        CertKind::IndependentSet => {
            let (g, e) = graph()?;
            match alpha(&g, budget) {
                Ok(s) => (Certificate::independent_set(&e, &s), true),
                Err(i) => (Certificate::independent_set(&e, &i.best), false),
            }
        }
        CertKind::CliqueCover | CertKind::CoverFit => {
            let r = cmd_cover(ctx, need(a.graph, "graph")?, None, budget)?;
            let complete = !r.interrupted;
            let cert = r.witnesses.into_iter().next().expect("cover report carries its witness");
            if a.kind == CertKind::CliqueCover {
                (cert, complete)
            } else {
                let Certificate::CliqueCover { classes, .. } = cert else { unreachable!() };
                let (g, e) = graph()?;
                let cover = hfrac_core::combinat::CliqueCover { classes };
                let fit = hfrac_core::haemers::cover_certificate(&g, &cover, ctx.prime(a.p)?)?;
                (Certificate::fit(&e, &fit), complete)
            }
        }
        CertKind::FractionalCover => {
            let (g, e) = graph()?;
            match fractional_clique_cover(&g, budget)? {
                Ok(c) => (Certificate::fractional_cover(&e, &c), true),
                Err(iv) => (Certificate::fractional_cover(&e, &iv.cover), false),
            }
        }
        CertKind::Fit => {
            let (g, e) = graph()?;
            let out = minrank_exact(&g, ctx.prime(a.p)?, &MinrankOptions::default(), budget)?;
            (Certificate::fit(&e, out.certificate()), !budget.exhausted())
        }
        CertKind::Drep | CertKind::Pairrep | CertKind::Subspace | CertKind::Rankr => {
            let (g, e) = graph()?;
            let b = hfrac_upper_search(&g, ctx.prime(a.p)?, a.dmax, &ctx.limits, budget)?;
            let done = !budget.exhausted();
            let cert = match a.kind {
                CertKind::Drep => Certificate::drep(&e, &b.witness),
                CertKind::Rankr => Certificate::rankr(
                    &e,
                    &RankRRep { r: b.witness.d, sizes: vec![b.witness.d; g.n()], matrix: b.witness.matrix.clone() },
                ),
                CertKind::Pairrep => Certificate::pairrep(&e, &pairrep_from_drep(&g, &b.witness)?),
                _ => Certificate::subspace(&e, &subspace_from_pairrep(&g, &pairrep_from_drep(&g, &b.witness)?)?),
            };
            (cert, done)
        }
        CertKind::Johnson => {
            let n = need(a.n, "n")?;
            let (_, fit) = johnson_certificate(a.p, n, &ctx.limits)?;
            (Certificate::fit(&format!("johnson:{},{n}", a.p), &fit), true)
        }
        CertKind::Alon => {
            let n = need(a.n, "n")?;
            let variant = match need(a.variant, "variant")? {
                VariantArg::P => AlonVariant::P,
                VariantArg::Q => AlonVariant::Q,
                VariantArg::R => AlonVariant::R,
            };
            let q = a.q.unwrap_or(a.p);
            let c = alon_certificate(variant, a.p, q, n, a.modulus, &ctx.limits)?;
            let base = format!("alon:{},{q},{n}", a.p);
            let expr = if variant == AlonVariant::P { base } else { format!("complement({base})") };
            (Certificate::fit(&expr, &c.fit), true)
        }
        CertKind::Umbrella => (Certificate::orthorep("cycle:5", &pentagon_umbrella(1), DEFAULT_TOL), true),
        CertKind::UmbrellaDual => {
            (Certificate::orthorep("complement(cycle:5)", &pentagon_umbrella(2), DEFAULT_TOL), true)
        }
    })
}

fn cmd_certify(ctx: &Ctx, a: &CertifyArgs<'_>, out: Option<&Path>, budget: &mut Budget<'_>) -> anyhow::Result<Outcome> {
    let (cert, complete) = build_certificate(ctx, a, budget)?;
    let (g, _) = ctx.graph(cert.graph())?;
    let checked = cert.verify(&g).context("freshly built certificate failed verification")?;
    let mut o = match out {
        Some(path) => {
            write_json(path, &cert)?;
            Outcome::ok(format!("wrote {}: {}\n", path.display(), checked.summary))
        }
        None => Outcome::ok(to_json(&cert)?),
    };
    if !complete {
        o.code = EXIT_BUDGET;
        o.stderr = "budget exhausted; the certificate is valid but may not be optimal\n".into();
    }
    Ok(o)
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    status: &'a str,
    kind: &'a str,
    graph: &'a str,
    summary: String,
}

fn cmd_verify(ctx: &Ctx, cert_path: &Path, graph: Option<&str>) -> anyhow::Result<Outcome> {
    let text = std::fs::read_to_string(cert_path).with_context(|| format!("reading {}", cert_path.display()))?;
    let cert: Certificate = match serde_json::from_str(&text) {
        Ok(c) => c,
        Err(e) => {
            return Ok(Outcome { code: EXIT_VERIFY, stdout: String::new(), stderr: format!("FAIL: malformed certificate: {e}\n") })
        }
    };
    let input = graph.unwrap_or(cert.graph());
    let (g, expr) = ctx.graph(input)?;
    let (code, status, kind, summary) = match cert.verify(&g) {
        Ok(v) => (EXIT_OK, "pass", v.kind, v.summary),
        Err(e) => (EXIT_VERIFY, "fail", "certificate", format!("{e:#}")),
    };
    let stdout = if ctx.json {
        to_json(&VerifyJson { status, kind, graph: &expr, summary })?
    } else {
        format!("{} {kind} on {expr}: {summary}\n", status.to_uppercase())
    };
    Ok(Outcome { code, stdout, stderr: String::new() })
}

#[derive(Serialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

fn cmd_generate(ctx: &Ctx, input: Option<&str>, random: Option<usize>, density: f64, out: Option<&Path>) -> anyhow::Result<Outcome> {
    let g = match (input, random) {
        (Some(s), None) => ctx.graph(s)?.0,
        (None, Some(n)) => {
            if !(0.0..=1.0).contains(&density) {
                bail!("--density must lie in [0, 1]");
            }
            ctx.limits.max_vertices.checked_sub(n).context("graph exceeds --max-vertices")?;
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(density) {
                        g.add_edge(u, v)?;
                    }
                }
            }
            g
        }
        _ => bail!("pass exactly one of --graph or --random"),
    };
    let text = if ctx.json {
        to_json(&GraphJson { n: g.n(), edges: g.edges().map(|(u, v)| [u, v]).collect() })?
    } else {
        textgraph::write(&g)
    };
    match out {
        Some(path) => {
            std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            Ok(Outcome::ok(format!("wrote {} ({} vertices, {} edges)\n", path.display(), g.n(), g.edge_count())))
        }
        None => Ok(Outcome::ok(text)),
    }
}
