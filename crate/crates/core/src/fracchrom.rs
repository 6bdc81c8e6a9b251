//! Fractional clique cover number (`χ_f` of the complement) by exact column
//! generation.
//!
//! The restricted master is the dual packing LP `max Σ y_v` subject to
//! `Σ_{v∈C} y_v ≤ 1` for every generated clique `C`; its dual multipliers are
//! the clique weights. Pricing asks for a clique of weight above 1 under `y`,
//! which is the weighted independent-set oracle run on the complement.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::budget::Budget;
use crate::combinat::max_weight_independent_set;
use crate::error::{Error, Result};
use crate::exactq::{lcm_of_denominators, simplex_solve, LinearProgram, LpStatus, Rational, Relation};
use crate::graph::Graph;

/// Cliques with rational weights covering every vertex at least once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalCover {
    pub classes: Vec<(Vec<usize>, Rational)>,
    pub value: Rational,
    /// Least common denominator of the weights.
    pub d: u64,
}

impl FractionalCover {
    /// Builds a cover from weighted cliques, filling in `value` and `d`.
    pub fn from_classes(classes: Vec<(Vec<usize>, Rational)>) -> Result<Self> {
        let value = classes.iter().map(|(_, w)| w.clone()).sum();
        let d = lcm_of_denominators(classes.iter().map(|(_, w)| w))
            .to_u64()
            .ok_or_else(|| Error::Unsupported("cover denominator exceeds u64".into()))?;
        Ok(FractionalCover { classes, value, d })
    }

    /// Integer slot count `d·w` of each class.
    pub fn slots(&self) -> Vec<u64> {
        let d = Rational::from_integer(BigInt::from(self.d));
        self.classes.iter().map(|(_, w)| (w * &d).to_integer().to_u64().unwrap_or(0)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CoverViolation {
    #[error("class {0} is not a clique")]
    NotClique(usize),
    #[error("class {0} has a non-positive weight")]
    NonPositiveWeight(usize),
    #[error("class {0} names a vertex outside the graph")]
    VertexOutOfRange(usize),
    #[error("vertex {0} is covered with total weight below 1")]
    Undercovered(usize),
    #[error("stated value differs from the sum of weights")]
    ValueMismatch,
    #[error("d does not clear every weight denominator, or is not the least such")]
    DenominatorMismatch,
}

/// Checks every cover invariant exactly, reporting the first violation.
pub fn verify_cover(g: &Graph, c: &FractionalCover) -> core::result::Result<(), CoverViolation> {
    let mut covered = vec![Rational::zero(); g.n()];
    for (i, (clique, w)) in c.classes.iter().enumerate() {
        if clique.iter().any(|&v| v >= g.n()) {
            return Err(CoverViolation::VertexOutOfRange(i));
        }
        if !g.is_clique(clique).unwrap_or(false) {
            return Err(CoverViolation::NotClique(i));
        }
        if w <= &Rational::zero() {
            return Err(CoverViolation::NonPositiveWeight(i));
        }
        for &v in clique {
            covered[v] += w;
        }
    }
    if let Some(v) = covered.iter().position(|x| x < &Rational::one()) {
        return Err(CoverViolation::Undercovered(v));
    }
    let sum: Rational = c.classes.iter().map(|(_, w)| w.clone()).sum();
    if sum != c.value {
        return Err(CoverViolation::ValueMismatch);
    }
    if lcm_of_denominators(c.classes.iter().map(|(_, w)| w)) != BigInt::from(c.d) {
        return Err(CoverViolation::DenominatorMismatch);
    }
    Ok(())
}

/// Column generation stopped early: `cover` is feasible (its value is an
/// upper bound) and `lower` is a proven lower bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverInterval {
    pub cover: FractionalCover,
    pub lower: Rational,
}

fn extend_to_maximal(g: &Graph, mut clique: Vec<usize>) -> Vec<usize> {
    for v in 0..g.n() {
        if !clique.contains(&v) && clique.iter().all(|&u| g.has_edge(u, v)) {
            clique.push(v);
        }
    }
    clique.sort_unstable();
    clique
}

/// Exact optimum of the clique covering LP of `g`.
pub fn fractional_clique_cover(
    g: &Graph,
    budget: &mut Budget<'_>,
) -> Result<core::result::Result<FractionalCover, CoverInterval>> {
    let n = g.n();
    if n == 0 {
        return Ok(Ok(FractionalCover { classes: Vec::new(), value: Rational::zero(), d: 1 }));
    }
    let complement = g.complement();
    let mut columns: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    loop {
        let mut lp = LinearProgram::maximize(vec![Rational::one(); n]).nonnegative();
        for col in &columns {
            let mut row = vec![Rational::zero(); n];
            for &v in col {
                row[v] = Rational::one();
            }
            lp.add_constraint(row, Relation::Le, Rational::one());
        }
        let sol = simplex_solve(&lp)?;
        debug_assert_eq!(sol.status, LpStatus::Optimal);
        let classes: Vec<(Vec<usize>, Rational)> = columns
            .iter()
            .zip(&sol.dual)
            .filter(|(_, w)| *w > &Rational::zero())
            .map(|(c, w)| (c.clone(), w.clone()))
            .collect();
        let y = &sol.assignment;
        match max_weight_independent_set(&complement, y, budget)? {
            Ok((clique, weight)) => {
                if weight <= Rational::one() {
                    return Ok(Ok(FractionalCover::from_classes(classes)?));
                }
                let clique = extend_to_maximal(g, clique);
                if columns.contains(&clique) {
                    return Err(Error::Unsupported("column generation repeated a column".into()));
                }
                columns.push(clique);
            }
            Err(stopped) => {
                // y / (max clique weight) is dual feasible
                let upper = if stopped.upper > Rational::one() { stopped.upper } else { Rational::one() };
                let lower = &sol.value / upper;
                return Ok(Err(CoverInterval { cover: FractionalCover::from_classes(classes)?, lower }));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::{int, rat};
    use crate::graph::{complete, cycle, empty, Limits};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn solve(g: &Graph) -> FractionalCover {
        let c = fractional_clique_cover(g, &mut Budget::unlimited()).unwrap().unwrap();
        verify_cover(g, &c).unwrap();
        c
    }

    /// Oracle: the covering LP written over all maximal cliques (Bron–Kerbosch).
    fn full_lp_value(g: &Graph) -> Rational {
        fn bk(g: &Graph, r: Vec<usize>, p: Vec<usize>, x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if p.is_empty() && x.is_empty() {
                out.push(r);
                return;
            }
            let mut p = p;
            let mut x = x;
            while let Some(v) = p.pop() {
                let mut r2 = r.clone();
                r2.push(v);
                let p2 = p.iter().copied().filter(|&u| g.has_edge(u, v)).collect();
                let x2 = x.iter().copied().filter(|&u| g.has_edge(u, v)).collect();
                bk(g, r2, p2, x2, out);
                x.push(v);
            }
        }
        let mut cliques = Vec::new();
        bk(g, Vec::new(), (0..g.n()).collect(), Vec::new(), &mut cliques);
        // min Σ w_C  s.t. Σ_{C∋v} w_C ≥ 1, w ≥ 0   (as a max of the negation)
        let mut lp = LinearProgram::maximize(vec![int(-1); cliques.len()]).nonnegative();
        for v in 0..g.n() {
            let row = cliques.iter().map(|c| if c.contains(&v) { int(1) } else { int(0) }).collect();
            lp.add_constraint(row, Relation::Ge, int(1));
        }
        -simplex_solve(&lp).unwrap().value
    }

    #[test]
    fn pentagon_is_five_halves() {
        let c5 = cycle(5).unwrap();
        let c = solve(&c5);
        assert_eq!(c.value, rat(5, 2));
        assert_eq!(c.d, 2);
    }

    #[test]
    fn odd_cycles() {
        for k in 2..=5i64 {
            let g = cycle(2 * k as usize + 1).unwrap();
            assert_eq!(solve(&g).value, rat(2 * k + 1, 2), "k={k}");
        }
        // cycle:3 is the triangle, covered by one clique
        assert_eq!(solve(&cycle(3).unwrap()).value, int(1));
    }

    #[test]
    fn complete_and_empty() {
        for k in 1..6 {
            assert_eq!(solve(&complete(k)).value, int(1));
            assert_eq!(solve(&empty(k)).value, int(k as i64));
        }
    }

    #[test]
    fn pentagon_square() {
        let c5 = cycle(5).unwrap();
        let p = c5.strong_product(&c5, &Limits::default()).unwrap();
        assert_eq!(solve(&p).value, rat(25, 4));
    }

    #[test]
    fn verify_cover_rejections() {
        let c5 = cycle(5).unwrap();
        let edges: Vec<(Vec<usize>, Rational)> = (0..5).map(|i| (vec![i, (i + 1) % 5], rat(1, 2))).collect();
        let good = FractionalCover::from_classes(edges.clone()).unwrap();
        assert_eq!(verify_cover(&c5, &good), Ok(()));

        let mut low = edges.clone();
        low[0].1 = rat(1, 4);
        let low = FractionalCover::from_classes(low).unwrap();
        assert_eq!(verify_cover(&c5, &low), Err(CoverViolation::Undercovered(0)));

        let mut nonclique = edges.clone();
        nonclique.push((vec![0, 2], rat(1, 2)));
        let nonclique = FractionalCover::from_classes(nonclique).unwrap();
        assert_eq!(verify_cover(&c5, &nonclique), Err(CoverViolation::NotClique(5)));

        let wrong_value = FractionalCover { value: int(2), ..good.clone() };
        assert_eq!(verify_cover(&c5, &wrong_value), Err(CoverViolation::ValueMismatch));
        let wrong_d = FractionalCover { d: 4, ..good };
        assert_eq!(verify_cover(&c5, &wrong_d), Err(CoverViolation::DenominatorMismatch));
    }

    #[test]
    fn matches_full_lp_and_dominates_alpha() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let n = rng.gen_range(1..=12);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.45) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let c = solve(&g);
            assert_eq!(c.value, full_lp_value(&g));
            let a = crate::combinat::alpha(&g, &mut Budget::unlimited()).unwrap().len();
            assert!(c.value >= int(a as i64));
        }
    }

    #[test]
    fn interrupted_pricing_gives_interval() {
        let c7 = cycle(7).unwrap();
        match fractional_clique_cover(&c7, &mut Budget::new(1)).unwrap() {
            Err(iv) => {
                assert!(iv.lower <= rat(7, 2) && iv.cover.value >= rat(7, 2));
                verify_cover(&c7, &iv.cover).unwrap();
            }
            Ok(c) => assert_eq!(c.value, rat(7, 2)),
        }
    }
}
