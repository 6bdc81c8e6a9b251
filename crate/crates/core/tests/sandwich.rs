//! Cross-module consistency: every computed parameter lands in the order
//! `α ≤ θ, H_f ≤ χ_f(Ḡ) ≤ clique cover number` and `H_f ≤ H`.

use hfrac_core::combinat::{alpha, clique_cover_leq, greedy_clique_cover};
use hfrac_core::fracchrom::{fractional_clique_cover, verify_cover};
use hfrac_core::graph::cycle;
use hfrac_core::haemers::{cover_certificate, minrank_exact, MinrankOptions, MinrankOutcome};
use hfrac_core::hfrac::{drep_from_fractional_cover, hfrac_upper_search, verify_drep};
use hfrac_core::theta::theta_cycle;
use hfrac_core::{Budget, Graph, GraphExpr, Limits, PrimeModulus, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn int(k: usize) -> Rational {
    Rational::from_integer((k as i64).into())
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let density = rng.gen_range(0.2..0.8);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

fn min_cover(g: &Graph) -> usize {
    let mut k = greedy_clique_cover(g).len();
    while k > 0 {
        match clique_cover_leq(g, k - 1, &mut Budget::unlimited()).unwrap() {
            Some(c) => k = c.len(),
            None => break,
        }
    }
    k
}

#[test]
fn parameters_are_ordered_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let lim = Limits::default();
    for i in 0..40 {
        let n = rng.gen_range(1..8);
        let g = random_graph(&mut rng, n);
        let p = PrimeModulus::new([2, 3][i % 2]).unwrap();
        let a = alpha(&g, &mut Budget::unlimited()).unwrap().len();
        let cover = fractional_clique_cover(&g, &mut Budget::unlimited()).unwrap().unwrap();
        verify_cover(&g, &cover).unwrap();
        let chi = min_cover(&g);
        assert!(int(a) <= cover.value && cover.value <= int(chi), "graph #{i}");

        let rep = drep_from_fractional_cover(&g, &cover, p, &lim).unwrap();
        verify_drep(&g, &rep).unwrap();
        assert!(rep.ratio() <= cover.value && rep.ratio() >= int(a));

        // An interval's incumbent comes from a greedy cover and may exceed the optimum.
        let h = match minrank_exact(&g, p, &MinrankOptions::default(), &mut Budget::unlimited()).unwrap() {
            MinrankOutcome::Exact(c) => {
                assert!(c.claimed_rank <= chi, "graph #{i}");
                c.claimed_rank
            }
            MinrankOutcome::Interval { lower, best } => {
                assert!(lower <= chi && lower <= best.claimed_rank, "graph #{i}");
                best.claimed_rank
            }
        };
        assert!(a <= h, "graph #{i}");

        let b = hfrac_upper_search(&g, p, 4, &lim, &mut Budget::unlimited()).unwrap();
        assert_eq!(b.lower, int(a));
        assert!(b.upper <= int(h) && b.upper <= cover.value);
        verify_drep(&g, &b.witness).unwrap();
    }
}

#[test]
fn odd_cycle_chain() {
    for k in 2..=6usize {
        let g = cycle(2 * k + 1).unwrap();
        let a = alpha(&g, &mut Budget::unlimited()).unwrap().len();
        let t = theta_cycle(2 * k + 1).unwrap();
        let cover = fractional_clique_cover(&g, &mut Budget::unlimited()).unwrap().unwrap();
        let chi = min_cover(&g);
        assert!((a as f64) < t);
        assert_eq!(cover.value, Rational::new(int(2 * k + 1).to_integer(), 2.into()));
        assert!(2.0 * t < (2 * k + 1) as f64);
        assert_eq!(chi, k + 1);
        let fit = cover_certificate(&g, &clique_cover_leq(&g, k + 1, &mut Budget::unlimited()).unwrap().unwrap(), PrimeModulus::new(2).unwrap()).unwrap();
        assert_eq!(fit.claimed_rank, k + 1);
    }
}

#[test]
fn expressions_build_through_the_public_api() {
    let lim = Limits::default();
    for (text, n, m) in [
        ("cycle:5", 5, 5),
        ("complement(cycle:5)", 5, 5),
        ("strong(cycle:5,complete:2)", 10, 25),
        ("lex(cycle:5,empty:2)", 10, 20),
        ("johnson:2,6", 20, 0),
    ] {
        let e: GraphExpr = text.parse().unwrap();
        assert_eq!(e.to_string(), text);
        let g = e.build(&lim).unwrap();
        assert_eq!(g.n(), n, "{text}");
        if m > 0 {
            assert_eq!(g.edge_count(), m, "{text}");
        }
    }
    assert!("file:x.txt".parse::<GraphExpr>().unwrap().build(&lim).is_err());
}
