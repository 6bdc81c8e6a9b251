//! Seeded random instances for property checks.

use hfrac_core::hfrac::{verify_rankrrep, DRep, RankRRep};
use hfrac_core::{FMatrix, Graph, PrimeModulus};
use rand::Rng;

pub fn graph<R: Rng>(rng: &mut R, n: usize, density: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    g
}

pub fn matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, p: PrimeModulus) -> FMatrix {
    FMatrix::from_fn(rows, cols, p, |_, _| rng.gen_range(0..p.get()))
}

/// `I_d` diagonal blocks, zero non-edge blocks, uniform edge blocks.
pub fn drep<R: Rng>(rng: &mut R, g: &Graph, d: usize, p: PrimeModulus) -> DRep {
    let n = g.n();
    let m = FMatrix::from_fn(n * d, n * d, p, |i, j| {
        let (u, v) = (i / d, j / d);
        if u == v {
            (i == j) as u32
        } else if g.has_edge(u, v) {
            rng.gen_range(0..p.get())
        } else {
            0
        }
    });
    DRep { d, matrix: m }
}

/// Block sizes in `r..r+3`, resampled until every diagonal block has rank `≥ r`.
pub fn rankr<R: Rng>(rng: &mut R, g: &Graph, r: usize, p: PrimeModulus) -> RankRRep {
    loop {
        let sizes: Vec<usize> = (0..g.n()).map(|_| rng.gen_range(r..r + 3)).collect();
        let owner: Vec<usize> = sizes.iter().enumerate().flat_map(|(v, &s)| std::iter::repeat_n(v, s)).collect();
        let t = owner.len();
        let m = FMatrix::from_fn(t, t, p, |i, j| {
            let (u, v) = (owner[i], owner[j]);
            if u == v || g.has_edge(u, v) {
                rng.gen_range(0..p.get())
            } else {
                0
            }
        });
        let rep = RankRRep { r, sizes, matrix: m };
        if verify_rankrrep(g, &rep).is_ok() {
            return rep;
        }
    }
}

/// Subsets of `items` with at most `k` elements, in a fixed order.
pub fn small_subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &x in items {
        let grown: Vec<Vec<usize>> = out.iter().filter(|s| s.len() < k).map(|s| [s.as_slice(), &[x]].concat()).collect();
        out.extend(grown);
    }
    out
}
