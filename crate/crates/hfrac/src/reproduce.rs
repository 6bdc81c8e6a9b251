//! The claim suite behind `hfrac reproduce`: one line per claim with its
//! value, the expected value, and the running time.

use std::time::{Duration, Instant};

use hfrac_core::combinat::{alpha, clique_cover_leq};
use hfrac_core::fracchrom::fractional_clique_cover;
use hfrac_core::graph::{alon, cycle, johnson, universal};
use hfrac_core::haemers::{
    alon_certificate, cover_certificate, johnson_certificate, minrank_exact, verify_fits, AlonVariant,
    MinrankOptions, MinrankOutcome,
};
use hfrac_core::hfrac::{
    cycle_drep, linind_check, pairrep_from_drep, rankr_to_drep, tensor_dreps, verify_drep, verify_pairrep,
};
use hfrac_core::theta::{
    pentagon_umbrella, theta_cycle, theta_johnson_lp, theta_lower_from_dual, theta_upper_from_orthorep, DEFAULT_TOL,
};
use hfrac_core::{Budget, Graph, Limits, PrimeModulus, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cli::{Outcome, EXIT_OK, EXIT_VERIFY};
use crate::randgen;

#[derive(Clone, Debug, Serialize)]
pub struct ClaimResult {
    pub id: u32,
    pub claim: &'static str,
    pub value: String,
    pub expected: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

struct Check {
    value: String,
    expected: String,
    pass: bool,
    skipped: Option<String>,
}

fn check(value: impl Into<String>, expected: impl Into<String>, pass: bool) -> Check {
    Check { value: value.into(), expected: expected.into(), pass, skipped: None }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn show(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        r.to_string()
    }
}

fn gf(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).expect("small prime")
}

fn ub() -> Budget<'static> {
    Budget::unlimited()
}

pub struct ClaimSpec {
    pub id: u32,
    pub claim: &'static str,
    pub limit: Duration,
    run: fn(bool) -> Check,
}

pub fn claims() -> Vec<ClaimSpec> {
    let ms = Duration::from_millis;
    let s = Duration::from_secs;
    vec![
        ClaimSpec { id: 1, claim: "theta(C5) = sqrt(5)", limit: ms(1), run: c01 },
        ClaimSpec { id: 2, claim: "theta(J_n^2) = n(n-2)(2n-11)/(3(3n-14)), n = 8,10,12,16", limit: s(4), run: c02 },
        ClaimSpec { id: 3, claim: "chi_f(complement of C_{2k+1}) = k + 1/2, k = 2..5", limit: s(4), run: c03 },
        ClaimSpec { id: 4, claim: "H(J_8^2; GF(2)) = alpha(J_8^2) = 8", limit: s(60), run: c04 },
        ClaimSpec { id: 5, claim: "H(C5; GF(2)) = H(C5; GF(3)) = 3", limit: s(10), run: c05 },
        ClaimSpec { id: 6, claim: "C5 x C5 partitions into 8 cliques, giving H(C5 x C5) <= 8", limit: s(60), run: c06 },
        ClaimSpec { id: 7, claim: "H_f(C_{2k+1}) <= k + 1/2 by certificate, alpha = k, k = 2..5, p = 2,3,5", limit: s(12), run: c07 },
        ClaimSpec { id: 8, claim: "rank multiplies under tensoring: C5^2 rank 25 d 4, C5^3 ratio 125/8", limit: s(5), run: c08 },
        ClaimSpec { id: 9, claim: "Alon fits: rank <= 8 on alon:2,3,7 over GF(2); rank <= 29 on its complement over GF(3)", limit: s(10), run: c09 },
        ClaimSpec { id: 10, claim: "alpha(universal(2,n,1)) = n and |V| = 6, 28 for n = 2, 3", limit: s(5), run: c10 },
        ClaimSpec { id: 11, claim: "independent S, no S-T edges: the spans of S and T are independent (100 random reps)", limit: s(60), run: c11 },
        ClaimSpec { id: 12, claim: "umbrella certificates sandwich theta(C5) around sqrt(5)", limit: s(1), run: c12 },
        ClaimSpec { id: 13, claim: "alpha(C5 x C5) = 5, so Theta(C5) >= sqrt(5)", limit: s(10), run: c13 },
        ClaimSpec { id: 14, claim: "invariants on 200 random instances: complement, product sizes, lex alpha, Kronecker rank, rank-r reduction", limit: s(120), run: c14 },
    ]
}

/// Runs every claim in id order.
pub fn run_claims(quick: bool, timings: bool) -> Vec<ClaimResult> {
    claims()
        .into_iter()
        .map(|item| {
            let start = Instant::now();
            let c = (item.run)(quick);
            let took = start.elapsed();
            ClaimResult {
                id: item.id,
                claim: item.claim,
                value: c.value,
                expected: c.expected,
                pass: c.pass && took <= item.limit,
                runtime_ms: timings.then_some(took.as_secs_f64() * 1e3),
                skipped: c.skipped,
            }
        })
        .collect()
}

pub fn run_suite(quick: bool, json: bool, timings: bool) -> Outcome {
    let results = run_claims(quick, timings || !json);
    let ok = results.iter().all(|r| r.pass);
    let stdout = if json {
        let mut results = results;
        if !timings {
            results.iter_mut().for_each(|r| r.runtime_ms = None);
        }
        serde_json::to_string_pretty(&results).expect("plain data") + "\n"
    } else {
        let mut s = String::new();
        for r in &results {
            s.push_str(&format!(
                "{} {:>2}  {}  value={} expected={} ({:.1} ms){}\n",
                if r.pass { "PASS" } else { "FAIL" },
                r.id,
                r.claim,
                r.value,
                r.expected,
                r.runtime_ms.unwrap_or(0.0),
                r.skipped.as_ref().map(|x| format!(" [{x}]")).unwrap_or_default()
            ));
        }
        s
    };
    Outcome { code: if ok { EXIT_OK } else { EXIT_VERIFY }, stdout, stderr: String::new() }
}

fn c01(_: bool) -> Check {
    let t = theta_cycle(5).unwrap_or(f64::NAN);
    check(format!("{t:.12}"), format!("{:.12}", 5f64.sqrt()), (t - 5f64.sqrt()).abs() < 1e-9)
}

fn c02(_: bool) -> Check {
    let mut vals = Vec::new();
    let mut pass = true;
    for n in [8i64, 10, 12, 16] {
        let formula = q(n * (n - 2) * (2 * n - 11), 3 * (3 * n - 14));
        match theta_johnson_lp(2, n as u64) {
            Ok(v) => {
                pass &= v == formula;
                vals.push(show(&v));
            }
            Err(e) => {
                pass = false;
                vals.push(format!("error: {e}"));
            }
        }
    }
    check(vals.join(", "), "8, 15, 260/11, 784/17", pass)
}

fn c03(_: bool) -> Check {
    let mut vals = Vec::new();
    let mut pass = true;
    for k in 2..=5i64 {
        let g = cycle(2 * k as usize + 1).expect("k >= 1");
        match fractional_clique_cover(&g, &mut ub()) {
            Ok(Ok(c)) => {
                pass &= c.value == q(2 * k + 1, 2);
                vals.push(show(&c.value));
            }
            _ => {
                pass = false;
                vals.push("none".into());
            }
        }
    }
    check(vals.join(", "), "5/2, 7/2, 9/2, 11/2", pass)
}

fn c04(quick: bool) -> Check {
    let lim = Limits::default();
    let rank = johnson_certificate(2, 8, &lim).map(|(g, c)| (c.verify(&g).is_ok(), c.claimed_rank));
    let (fits, rank) = rank.unwrap_or((false, 0));
    if quick {
        let mut c = check(format!("rank {rank}"), "rank 8", fits && rank == 8);
        c.skipped = Some("alpha(J_8^2) skipped by --quick".into());
        return c;
    }
    let a = johnson(2, 8, &lim).ok().and_then(|g| alpha(&g, &mut ub()).ok()).map_or(0, |s| s.len());
    check(format!("rank {rank}, alpha {a}"), "rank 8, alpha 8", fits && rank == 8 && a == 8)
}

fn c05(_: bool) -> Check {
    let c5 = cycle(5).expect("valid");
    let h: Vec<String> = [2, 3]
        .iter()
        .map(|&p| match minrank_exact(&c5, gf(p), &MinrankOptions::default(), &mut ub()) {
            Ok(MinrankOutcome::Exact(c)) if c.verify(&c5).is_ok() => c.claimed_rank.to_string(),
            _ => "?".into(),
        })
        .collect();
    check(h.join(", "), "3, 3", h == ["3", "3"])
}

fn c06(_: bool) -> Check {
    let c5 = cycle(5).expect("valid");
    let Ok(g) = c5.strong_product(&c5, &Limits::default()) else { return check("error", "8", false) };
    match clique_cover_leq(&g, 8, &mut ub()) {
        Ok(Some(cover)) => match cover_certificate(&g, &cover, gf(2)) {
            Ok(fit) => {
                let ok = verify_fits(&g, &fit.matrix).unwrap_or(false) && fit.claimed_rank == 8 && cover.len() == 8;
                check(format!("{} cliques, rank {}", cover.len(), fit.claimed_rank), "8 cliques, rank 8", ok)
            }
            Err(e) => check(format!("error: {e}"), "8 cliques, rank 8", false),
        },
        _ => check("none", "8 cliques, rank 8", false),
    }
}

fn c07(_: bool) -> Check {
    let mut pass = true;
    let mut vals = Vec::new();
    for k in 2..=5usize {
        let g = cycle(2 * k + 1).expect("valid");
        let a = alpha(&g, &mut ub()).map_or(0, |s| s.len());
        for p in [2, 3, 5] {
            match cycle_drep(k, gf(p)) {
                Ok(rep) => {
                    let r = rep.ratio();
                    pass &= verify_drep(&g, &rep).is_ok()
                        && r == q(2 * k as i64 + 1, 2)
                        && a == k
                        && r >= Rational::from_integer((a as i64).into());
                    if p == 2 {
                        vals.push(format!("[{a}, {}]", show(&r)));
                    }
                }
                Err(_) => pass = false,
            }
        }
    }
    check(vals.join(" "), "[2, 5/2] [3, 7/2] [4, 9/2] [5, 11/2]", pass)
}

fn c08(_: bool) -> Check {
    let lim = Limits::default();
    let run = || -> hfrac_core::Result<(bool, usize, usize, Rational)> {
        let c5 = cycle(5)?;
        let a = cycle_drep(2, gf(2))?;
        let sq = tensor_dreps(&a, &a)?;
        let g2 = c5.strong_product(&c5, &lim)?;
        let cube = tensor_dreps(&sq, &a)?;
        let g3 = g2.strong_product(&c5, &lim)?;
        let ok = verify_drep(&g2, &sq).is_ok() && verify_drep(&g3, &cube).is_ok();
        Ok((ok, sq.rank(), sq.d, cube.ratio()))
    };
    match run() {
        Ok((ok, rank, d, ratio)) => check(
            format!("rank {rank}, d {d}; cube {}", show(&ratio)),
            "rank 25, d 4; cube 125/8",
            ok && rank == 25 && d == 4 && ratio == q(125, 8),
        ),
        Err(e) => check(format!("error: {e}"), "rank 25, d 4; cube 125/8", false),
    }
}

fn c09(_: bool) -> Check {
    let lim = Limits::default();
    let p = alon_certificate(AlonVariant::P, 2, 3, 7, None, &lim);
    let qv = alon_certificate(AlonVariant::Q, 2, 3, 7, None, &lim);
    match (p, qv) {
        (Ok(p), Ok(qv)) => {
            let base = alon(2, 3, 7, &lim).ok();
            let ok = base.as_ref().is_some_and(|b| {
                b.n() == 21
                    && verify_fits(b, &p.fit.matrix).unwrap_or(false)
                    && verify_fits(&b.complement(), &qv.fit.matrix).unwrap_or(false)
            }) && p.fit.claimed_rank <= 8
                && qv.fit.claimed_rank <= 29;
            check(format!("{}, {}", p.fit.claimed_rank, qv.fit.claimed_rank), "<= 8, <= 29", ok)
        }
        _ => check("error", "<= 8, <= 29", false),
    }
}

fn c10(_: bool) -> Check {
    let lim = Limits::default();
    let mut vals = Vec::new();
    let mut pass = true;
    for (n, count) in [(2, 6), (3, 28)] {
        match universal(2, n, 1, &lim) {
            Ok(g) => {
                let a = alpha(&g, &mut ub()).map_or(0, |s| s.len());
                pass &= a == n && g.n() == count;
                vals.push(format!("alpha {a} on {}", g.n()));
            }
            Err(e) => {
                pass = false;
                vals.push(format!("error: {e}"));
            }
        }
    }
    check(vals.join(", "), "alpha 2 on 6, alpha 3 on 28", pass)
}

fn c11(_: bool) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut reps, mut pairs, mut failures) = (0, 0u64, 0u64);
    while reps < 100 {
        let g = if reps % 3 == 0 {
            cycle(rng.gen_range(4..9)).expect("valid")
        } else {
            let n = rng.gen_range(3..7);
            randgen::graph(&mut rng, n, 0.4)
        };
        let p = gf([2, 3][reps % 2]);
        let d = rng.gen_range(1..3);
        let Ok(pr) = pairrep_from_drep(&g, &randgen::drep(&mut rng, &g, d, p)) else {
            failures += 1;
            reps += 1;
            continue;
        };
        if verify_pairrep(&g, &pr).is_err() {
            failures += 1;
        }
        let all: Vec<usize> = (0..g.n()).collect();
        for s in randgen::small_subsets(&all, 3) {
            if !g.is_independent_set(&s).unwrap_or(false) {
                continue;
            }
            let allowed: Vec<usize> =
                all.iter().copied().filter(|&v| !s.contains(&v) && s.iter().all(|&u| !g.has_edge(u, v))).collect();
            for t in randgen::small_subsets(&allowed, 3) {
                pairs += 1;
                if !linind_check(&pr, &g, &s, &t).unwrap_or(false) {
                    failures += 1;
                }
            }
        }
        reps += 1;
    }
    check(format!("{failures} failures in {pairs} (S, T) pairs"), "0 failures", failures == 0)
}

fn c12(_: bool) -> Check {
    let c5 = cycle(5).expect("valid");
    let s5 = 5f64.sqrt();
    let up = theta_upper_from_orthorep(&c5, &pentagon_umbrella(1), DEFAULT_TOL).unwrap_or(f64::INFINITY);
    let low = theta_lower_from_dual(&c5, &pentagon_umbrella(2), DEFAULT_TOL).unwrap_or(0.0);
    check(
        format!("{low:.9} <= theta <= {up:.9}"),
        format!("{s5:.9} both sides"),
        up <= s5 + 1e-6 && low >= s5 - 1e-6,
    )
}

fn c13(_: bool) -> Check {
    let c5 = cycle(5).expect("valid");
    let a = c5
        .strong_product(&c5, &Limits::default())
        .ok()
        .and_then(|g| alpha(&g, &mut ub()).ok())
        .map_or(0, |s| s.len());
    check(a.to_string(), "5", a == 5)
}

fn strong_edges(g: &Graph, h: &Graph) -> usize {
    let (n1, n2, e1, e2) = (g.n(), h.n(), g.edge_count(), h.edge_count());
    n1 * e2 + n2 * e1 + 2 * e1 * e2
}

fn c14(_: bool) -> Check {
    let lim = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut failures = Vec::new();
    for i in 0..200 {
        let (n1, n2) = (rng.gen_range(1..6), rng.gen_range(1..6));
        let (d1, d2) = (rng.gen_range(0.1..0.9), rng.gen_range(0.1..0.9));
        let g = randgen::graph(&mut rng, n1, d1);
        let h = randgen::graph(&mut rng, n2, d2);
        if g.complement().complement() != g {
            failures.push(format!("#{i} complement"));
        }
        let s = g.strong_product(&h, &lim).expect("small");
        let l = g.lex_product(&h, &lim).expect("small");
        if s.n() != n1 * n2 || l.n() != n1 * n2 || s.edge_count() != strong_edges(&g, &h) {
            failures.push(format!("#{i} product size"));
        }
        if l.edge_count() != g.edge_count() * n2 * n2 + n1 * h.edge_count() {
            failures.push(format!("#{i} lex size"));
        }
        let a = |x: &Graph| alpha(x, &mut ub()).map_or(0, |s| s.len());
        if a(&l) != a(&g) * a(&h) {
            failures.push(format!("#{i} lex alpha"));
        }
        let p = gf([2, 3, 5][i % 3]);
        let (ra, ca, rb, cb) = (rng.gen_range(1..5), rng.gen_range(1..5), rng.gen_range(1..5), rng.gen_range(1..5));
        let ma = randgen::matrix(&mut rng, ra, ca, p);
        let mb = randgen::matrix(&mut rng, rb, cb, p);
        if ma.kronecker(&mb).map(|k| k.rank()).ok() != Some(ma.rank() * mb.rank()) {
            failures.push(format!("#{i} kronecker"));
        }
        let r = rng.gen_range(1..3);
        let rep = randgen::rankr(&mut rng, &g, r, p);
        match rankr_to_drep(&g, &rep) {
            Ok(out) if verify_drep(&g, &out).is_ok() && out.rank() <= rep.matrix.rank() => {}
            _ => failures.push(format!("#{i} rank-r")),
        }
    }
    let value = if failures.is_empty() { "all hold".to_string() } else { failures.join(", ") };
    check(value, "all hold", failures.is_empty())
}
