//! Exact independence number, clique covers and the weighted independent-set
//! oracle.
//!
//! Independent sets of `g` are found as cliques of `ḡ` with a bitset
//! branch-and-bound whose bound is a greedy colouring recomputed at every
//! node. Clique covers of `g` are proper colourings of `ḡ`, found by DSATUR
//! backtracking.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use num_traits::Zero;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactq::Rational;
use crate::graph::{Graph, VertexSet};

/// Search stopped early; `best` is the incumbent and `upper` a proven bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interrupted<T, B = usize> {
    pub best: T,
    pub upper: B,
}

/// Partition of the vertex set into cliques.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueCover {
    pub classes: Vec<Vec<usize>>,
}

impl CliqueCover {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Checks that every class is a clique and the classes partition `V(g)`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut seen = vec![false; g.n()];
        for (i, class) in self.classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::InvalidCertificate(alloc::format!("class {i} is empty")));
            }
            if !g.is_clique(class)? {
                return Err(Error::InvalidCertificate(alloc::format!("class {i} is not a clique")));
            }
            for &v in class {
                if core::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidCertificate(alloc::format!("vertex {v} covered twice")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidCertificate(alloc::format!("vertex {v} uncovered")));
        }
        Ok(())
    }
}

/// Graph relabelled so that bitset order follows the branching order.
struct Ordered {
    order: Vec<usize>,
    adj: Vec<VertexSet>,
}

impl Ordered {
    /// Descending degree, ties by index.
    fn by_degree(h: &Graph) -> Self {
        let mut order: Vec<usize> = (0..h.n()).collect();
        order.sort_by_key(|&v| (Reverse(h.degree(v)), v));
        let mut pos = vec![0; h.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let adj = order
            .iter()
            .map(|&v| VertexSet::from_iter_with(h.n(), h.neighbors(v).iter().map(|u| pos[u])))
            .collect();
        Ordered { order, adj }
    }

    /// Greedy sequential colouring of `p`; vertices listed class by class,
    /// each with its 1-based class number.
    fn colour(&self, p: &VertexSet) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(p.len());
        let mut rest = p.clone();
        let mut k = 0;
        while !rest.is_empty() {
            k += 1;
            let mut avail = rest.clone();
            while let Some(v) = avail.first() {
                avail.remove(v);
                rest.remove(v);
                avail.difference_with(&self.adj[v]);
                out.push((v, k));
            }
        }
        out
    }

    fn original(&self, set: &[usize]) -> Vec<usize> {
        let mut s: Vec<usize> = set.iter().map(|&i| self.order[i]).collect();
        s.sort_unstable();
        s
    }
}

struct CliqueSearch<'a, 'b> {
    g: &'a Ordered,
    best: Vec<usize>,
    budget: &'a mut Budget<'b>,
}

impl CliqueSearch<'_, '_> {
    fn expand(&mut self, current: &mut Vec<usize>, mut p: VertexSet) -> bool {
        if !self.budget.tick() {
            return false;
        }
        let coloured = self.g.colour(&p);
        for &(v, k) in coloured.iter().rev() {
            if current.len() + k <= self.best.len() {
                return true;
            }
            current.push(v);
            let next = p.intersection(&self.g.adj[v]);
            if next.is_empty() {
                if current.len() > self.best.len() {
                    self.best = current.clone();
                }
            } else if !self.expand(current, next) {
                current.pop();
                return false;
            }
            current.pop();
            p.remove(v);
        }
        true
    }
}

/// Maximum clique of `h`, sorted.
pub fn max_clique(h: &Graph, budget: &mut Budget<'_>) -> core::result::Result<Vec<usize>, Interrupted<Vec<usize>>> {
    let ord = Ordered::by_degree(h);
    let all = VertexSet::full(h.n());
    let mut search = CliqueSearch { g: &ord, best: Vec::new(), budget };
    let done = h.n() == 0 || search.expand(&mut Vec::new(), all.clone());
    let best = ord.original(&search.best);
    if done {
        Ok(best)
    } else {
        let colours = ord.colour(&all).last().map_or(0, |&(_, k)| k);
        Err(Interrupted { best, upper: colours })
    }
}

/// Maximum independent set of `g` (sorted witness); `α(g)` is its length.
pub fn alpha(g: &Graph, budget: &mut Budget<'_>) -> core::result::Result<Vec<usize>, Interrupted<Vec<usize>>> {
    max_clique(&g.complement(), budget)
}

struct WeightedSearch<'a, 'b> {
    g: &'a Ordered,
    w: Vec<Rational>,
    best: Vec<usize>,
    best_w: Rational,
    budget: &'a mut Budget<'b>,
}

impl WeightedSearch<'_, '_> {
    fn expand(&mut self, current: &mut Vec<usize>, cur_w: &Rational, mut p: VertexSet) -> bool {
        if !self.budget.tick() {
            return false;
        }
        let coloured = self.g.colour(&p);
        // bound[i] = Σ over classes up to coloured[i]'s class of the class maximum
        let mut bound = Vec::with_capacity(coloured.len());
        let mut acc = Rational::zero();
        let mut class_max = Rational::zero();
        let mut class = 0;
        for &(v, k) in &coloured {
            if k != class {
                acc += &class_max;
                class_max = Rational::zero();
                class = k;
            }
            if self.w[v] > class_max {
                class_max = self.w[v].clone();
            }
            bound.push(&acc + &class_max);
        }
        // the bound of later members of a class must cover the whole class
        for i in (0..coloured.len()).rev() {
            if i + 1 < coloured.len() && coloured[i + 1].1 == coloured[i].1 {
                bound[i] = bound[i + 1].clone();
            }
        }
        for i in (0..coloured.len()).rev() {
            if cur_w + &bound[i] <= self.best_w {
                return true;
            }
            let v = coloured[i].0;
            current.push(v);
            let w = cur_w + &self.w[v];
            if w > self.best_w {
                self.best_w = w.clone();
                self.best = current.clone();
            }
            let next = p.intersection(&self.g.adj[v]);
            if !next.is_empty() && !self.expand(current, &w, next) {
                current.pop();
                return false;
            }
            current.pop();
            p.remove(v);
        }
        true
    }
}

fn check_weights(h: &Graph, w: &[Rational]) -> Result<()> {
    if w.len() != h.n() {
        return Err(Error::Dimension(alloc::format!("{} weights for {} vertices", w.len(), h.n())));
    }
    if w.iter().any(|x| x < &Rational::zero()) {
        return Err(Error::Precondition("weights must be nonnegative".into()));
    }
    Ok(())
}

/// Maximum-weight clique of `h` for nonnegative weights; zero-weight vertices
/// are never chosen.
pub fn max_weight_clique(
    h: &Graph,
    w: &[Rational],
    budget: &mut Budget<'_>,
) -> Result<core::result::Result<(Vec<usize>, Rational), Interrupted<(Vec<usize>, Rational), Rational>>> {
    check_weights(h, w)?;
    let positive: Vec<usize> = (0..h.n()).filter(|&v| w[v] > Rational::zero()).collect();
    let sub = h.induced(&positive)?;
    let ord = Ordered::by_degree(&sub);
    let sw: Vec<Rational> = ord.order.iter().map(|&i| w[positive[i]].clone()).collect();
    let all = VertexSet::full(sub.n());
    let mut search = WeightedSearch { g: &ord, w: sw, best: Vec::new(), best_w: Rational::zero(), budget };
    let done = sub.n() == 0 || search.expand(&mut Vec::new(), &Rational::zero(), all);
    let mut set: Vec<usize> = ord.original(&search.best).into_iter().map(|i| positive[i]).collect();
    set.sort_unstable();
    let best_w = search.best_w;
    if done {
        Ok(Ok((set, best_w)))
    } else {
        let upper = positive.iter().map(|&v| w[v].clone()).sum();
        Ok(Err(Interrupted { best: (set, best_w), upper }))
    }
}

/// Maximum-weight independent set of `g`.
pub fn max_weight_independent_set(
    g: &Graph,
    w: &[Rational],
    budget: &mut Budget<'_>,
) -> Result<core::result::Result<(Vec<usize>, Rational), Interrupted<(Vec<usize>, Rational), Rational>>> {
    max_weight_clique(&g.complement(), w, budget)
}

/// Partition of `V(g)` into at most `k` cliques, if one exists.
///
/// Exact: DSATUR backtracking over colourings of `ḡ` with at most `k` colours.
pub fn clique_cover_leq(
    g: &Graph,
    k: usize,
    budget: &mut Budget<'_>,
) -> core::result::Result<Option<CliqueCover>, Interrupted<()>> {
    let h = g.complement();
    let n = h.n();
    if n == 0 {
        return Ok(Some(CliqueCover { classes: Vec::new() }));
    }
    if k == 0 {
        return Ok(None);
    }
    let mut colour = vec![usize::MAX; n];
    let mut state = Dsatur { h: &h, k, colour: &mut colour, budget };
    match state.solve(0, 0) {
        Some(true) => {
            let used = colour.iter().max().map_or(0, |&c| c + 1);
            let mut classes = vec![Vec::new(); used];
            for (v, &c) in colour.iter().enumerate() {
                classes[c].push(v);
            }
            Ok(Some(CliqueCover { classes }))
        }
        Some(false) => Ok(None),
        None => Err(Interrupted { best: (), upper: k }),
    }
}

/// Greedy partition into cliques: first-fit colouring of `ḡ` in index order.
pub fn greedy_clique_cover(g: &Graph) -> CliqueCover {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..g.n() {
        match classes.iter_mut().find(|c| c.iter().all(|&u| g.has_edge(u, v))) {
            Some(c) => c.push(v),
            None => classes.push(vec![v]),
        }
    }
    CliqueCover { classes }
}

struct Dsatur<'a, 'b> {
    h: &'a Graph,
    k: usize,
    colour: &'a mut Vec<usize>,
    budget: &'a mut Budget<'b>,
}

impl Dsatur<'_, '_> {
    /// `None` when the budget ran out.
    fn solve(&mut self, coloured: usize, used: usize) -> Option<bool> {
        let n = self.h.n();
        if coloured == n {
            return Some(true);
        }
        if !self.budget.tick() {
            return None;
        }
        let mut pick = usize::MAX;
        let mut pick_key = (0usize, 0usize);
        let mut pick_forbidden = Vec::new();
        for v in 0..n {
            if self.colour[v] != usize::MAX {
                continue;
            }
            let mut forbidden = vec![false; used];
            let mut free_deg = 0;
            for u in self.h.neighbors(v).iter() {
                match self.colour[u] {
                    usize::MAX => free_deg += 1,
                    c => forbidden[c] = true,
                }
            }
            let sat = forbidden.iter().filter(|&&f| f).count();
            let key = (sat, free_deg);
            if pick == usize::MAX || key > pick_key {
                pick = v;
                pick_key = key;
                pick_forbidden = forbidden;
            }
        }
        let limit = (used + 1).min(self.k);
        for c in 0..limit {
            if c < used && pick_forbidden[c] {
                continue;
            }
            self.colour[pick] = c;
            match self.solve(coloured + 1, used.max(c + 1)) {
                Some(false) => {}
                other => {
                    if other.is_none() {
                        self.colour[pick] = usize::MAX;
                    }
                    return other;
                }
            }
            self.colour[pick] = usize::MAX;
        }
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::{int, rat};
    use crate::graph::{complete, cycle, empty, johnson, Limits};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn alpha_of(g: &Graph) -> usize {
        let w = alpha(g, &mut Budget::unlimited()).unwrap();
        assert!(g.is_independent_set(&w).unwrap());
        w.len()
    }

    /// Exhaustive oracle over all vertex subsets.
    fn alpha_brute(g: &Graph) -> usize {
        (0u32..1 << g.n())
            .filter(|&m| {
                let s: Vec<usize> = (0..g.n()).filter(|&i| m >> i & 1 == 1).collect();
                g.is_independent_set(&s).unwrap()
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    #[test]
    fn alpha_examples() {
        let c5 = cycle(5).unwrap();
        assert_eq!(alpha_of(&c5), 2);
        let p = c5.strong_product(&c5, &Limits::default()).unwrap();
        assert_eq!(alpha_of(&p), 5);
        assert_eq!(alpha_of(&empty(6)), 6);
        assert_eq!(alpha_of(&complete(6)), 1);
        assert_eq!(alpha_of(&Graph::new(0)), 0);
    }

    #[test]
    fn alpha_johnson_2_8() {
        let g = johnson(2, 8, &Limits::default()).unwrap();
        assert_eq!(alpha_of(&g), 8);
    }

    #[test]
    fn alpha_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.gen_range(1..12);
            let density = rng.gen_range(0.1..0.9);
            let g = random_graph(&mut rng, n, density);
            assert_eq!(alpha_of(&g), alpha_brute(&g));
        }
    }

    #[test]
    fn alpha_interrupted_gives_interval() {
        let g = johnson(2, 8, &Limits::default()).unwrap();
        let err = alpha(&g, &mut Budget::new(3)).unwrap_err();
        assert!(g.is_independent_set(&err.best).unwrap());
        assert!(err.best.len() <= 8 && err.upper >= 8);
    }

    #[test]
    fn weighted_examples() {
        let c5 = cycle(5).unwrap();
        let mut b = Budget::unlimited();
        let (s, w) = max_weight_independent_set(&c5, &vec![int(1); 5], &mut b).unwrap().unwrap();
        assert_eq!((s.len(), w), (2, int(2)));
        let mut one = vec![int(0); 5];
        one[3] = int(1);
        let (s, w) = max_weight_independent_set(&c5, &one, &mut b).unwrap().unwrap();
        assert_eq!((s, w), (vec![3], int(1)));
        let (_, w) = max_weight_independent_set(&c5, &vec![rat(1, 2); 5], &mut b).unwrap().unwrap();
        assert_eq!(w, int(1));
        assert!(max_weight_independent_set(&c5, &vec![int(-1); 5], &mut b).is_err());
        assert!(max_weight_independent_set(&c5, &vec![int(1); 4], &mut b).is_err());
    }

    #[test]
    fn weighted_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let n = rng.gen_range(1..11);
            let g = random_graph(&mut rng, n, 0.4);
            let w: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(0..7), rng.gen_range(1..5))).collect();
            let (s, got) = max_weight_independent_set(&g, &w, &mut Budget::unlimited()).unwrap().unwrap();
            assert!(g.is_independent_set(&s).unwrap());
            assert_eq!(s.iter().map(|&v| w[v].clone()).sum::<Rational>(), got);
            let brute = (0u32..1 << n)
                .filter_map(|m| {
                    let s: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
                    g.is_independent_set(&s).unwrap().then(|| s.iter().map(|&v| w[v].clone()).sum::<Rational>())
                })
                .max()
                .unwrap();
            assert_eq!(got, brute);
        }
    }

    #[test]
    fn clique_cover_examples() {
        let mut b = Budget::unlimited();
        let k4 = complete(4);
        let c = clique_cover_leq(&k4, 1, &mut b).unwrap().unwrap();
        assert_eq!(c.classes, vec![vec![0, 1, 2, 3]]);
        let c5 = cycle(5).unwrap();
        let c = clique_cover_leq(&c5, 3, &mut b).unwrap().unwrap();
        c.validate(&c5).unwrap();
        assert_eq!(c.len(), 3);
        let mut sizes: Vec<usize> = c.classes.iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 2]);
        assert_eq!(clique_cover_leq(&c5, 2, &mut b).unwrap(), None);
    }

    #[test]
    fn pentagon_square_has_eight_clique_partition() {
        let c5 = cycle(5).unwrap();
        let p = c5.strong_product(&c5, &Limits::default()).unwrap();
        let c = clique_cover_leq(&p, 8, &mut Budget::unlimited()).unwrap().unwrap();
        c.validate(&p).unwrap();
        assert!(c.len() <= 8);
    }

    #[test]
    fn cover_validation_errors() {
        let c5 = cycle(5).unwrap();
        let bad = CliqueCover { classes: vec![vec![0, 2], vec![1], vec![3], vec![4]] };
        assert!(bad.validate(&c5).is_err());
        let missing = CliqueCover { classes: vec![vec![0, 1], vec![2, 3]] };
        assert!(missing.validate(&c5).is_err());
        greedy_clique_cover(&c5).validate(&c5).unwrap();
    }

    fn arb_small_graph() -> impl Strategy<Value = Graph> {
        (1usize..=6, any::<u64>()).prop_map(|(n, seed)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            random_graph(&mut rng, n, 0.5)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn alpha_multiplies_under_lex(g in arb_small_graph(), h in arb_small_graph()) {
            let l = g.lex_product(&h, &Limits::default()).unwrap();
            prop_assert_eq!(alpha_of(&l), alpha_of(&g) * alpha_of(&h));
        }

        #[test]
        fn diagonal_of_g_times_complement_is_independent(g in arb_small_graph()) {
            let s = g.strong_product(&g.complement(), &Limits::default()).unwrap();
            let diag: Vec<usize> = (0..g.n()).map(|v| v * g.n() + v).collect();
            prop_assert!(s.is_independent_set(&diag).unwrap());
            prop_assert!(alpha_of(&s) >= g.n());
        }

        #[test]
        fn covers_are_at_least_alpha(g in arb_small_graph()) {
            let a = alpha_of(&g);
            let c = greedy_clique_cover(&g);
            prop_assert!(c.len() >= a);
            if a > 1 {
                prop_assert_eq!(clique_cover_leq(&g, a - 1, &mut Budget::unlimited()).unwrap(), None);
            }
        }
    }
}
