//! Haemers minrank `H(G; GF(p))`: fit verification, exact search, and
//! certificate constructions.
//!
//! A matrix fits `G` when its diagonal is 1 and both entries of every
//! non-edge vanish. Any fit has rank at least `α(G)`, and its rank bounds the
//! Shannon capacity from above.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::combinat::{alpha, greedy_clique_cover, CliqueCover};
use crate::error::{Error, Result};
use crate::ffmat::{FMatrix, PrimeModulus, RowEchelon};
use crate::graph::{alon, binomial, johnson, Graph, Limits, VertexLabel};
use crate::poly::{eval_unreduced, mask_of, MonomialBasis, Multilinear};

/// A fit matrix bound to the graph it was issued for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FitCertificate {
    pub graph_hash: u64,
    pub matrix: FMatrix,
    pub claimed_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FitViolation {
    #[error("matrix is {rows}x{cols}, graph has {n} vertices")]
    Dimension { rows: usize, cols: usize, n: usize },
    #[error("diagonal entry ({0},{0}) is not 1")]
    Diagonal(usize),
    #[error("non-edge entry ({0},{1}) is nonzero")]
    NonEdge(usize, usize),
    #[error("claimed rank {claimed} but the matrix has rank {actual}")]
    Rank { claimed: usize, actual: usize },
    #[error("certificate was issued for a different graph")]
    GraphMismatch,
}

/// First entry that stops `m` from fitting `g`.
pub fn fit_violation(g: &Graph, m: &FMatrix) -> Option<FitViolation> {
    let n = g.n();
    if m.rows() != n || m.cols() != n {
        return Some(FitViolation::Dimension { rows: m.rows(), cols: m.cols(), n });
    }
    for u in 0..n {
        if m.get(u, u) != 1 {
            return Some(FitViolation::Diagonal(u));
        }
        for v in 0..n {
            if u != v && !g.has_edge(u, v) && m.get(u, v) != 0 {
                return Some(FitViolation::NonEdge(u, v));
            }
        }
    }
    None
}

pub fn verify_fits(g: &Graph, m: &FMatrix) -> Result<bool> {
    match fit_violation(g, m) {
        Some(FitViolation::Dimension { rows, cols, n }) => {
            Err(Error::Dimension(format!("{rows}x{cols} matrix for {n} vertices")))
        }
        Some(_) => Ok(false),
        None => Ok(true),
    }
}

impl FitCertificate {
    /// Checks the fit and records the rank.
    pub fn new(g: &Graph, matrix: FMatrix) -> Result<Self> {
        if let Some(v) = fit_violation(g, &matrix) {
            return Err(Error::InvalidCertificate(format!("{v}")));
        }
        let claimed_rank = matrix.rank();
        Ok(FitCertificate { graph_hash: g.fingerprint(), matrix, claimed_rank })
    }

    pub fn verify(&self, g: &Graph) -> core::result::Result<(), FitViolation> {
        if self.graph_hash != g.fingerprint() {
            return Err(FitViolation::GraphMismatch);
        }
        if let Some(v) = fit_violation(g, &self.matrix) {
            return Err(v);
        }
        let actual = self.matrix.rank();
        if actual != self.claimed_rank {
            return Err(FitViolation::Rank { claimed: self.claimed_rank, actual });
        }
        Ok(())
    }
}

/// Haemers' inequality made explicit: the class-membership matrix of a clique
/// partition fits `g` and has rank equal to the number of classes.
pub fn cover_certificate(g: &Graph, cover: &CliqueCover, p: PrimeModulus) -> Result<FitCertificate> {
    cover.validate(g)?;
    let mut class_of = vec![0; g.n()];
    for (i, c) in cover.classes.iter().enumerate() {
        for &v in c {
            class_of[v] = i;
        }
    }
    let m = FMatrix::from_fn(g.n(), g.n(), p, |u, v| (class_of[u] == class_of[v]) as u32);
    FitCertificate::new(g, m)
}

/// `MᵀM` for the vertex–element incidence matrix `M` of the Johnson-type graph
/// `johnson:p,n`; it fits over GF(p) because `p + 1 ≡ 1`.
pub fn johnson_certificate(p: u64, n: usize, limits: &Limits) -> Result<(Graph, FitCertificate)> {
    let g = johnson(p, n, limits)?;
    let modulus = PrimeModulus::new(p)?;
    let sets: Vec<&Vec<usize>> = g
        .labels()
        .expect("johnson graphs are labelled")
        .iter()
        .map(|l| match l {
            VertexLabel::Subset(s) => s,
            _ => unreachable!(),
        })
        .collect();
    let inc = FMatrix::from_fn(n, sets.len(), modulus, |i, x| sets[x].contains(&i) as u32);
    let cert = FitCertificate::new(&g, inc.transpose().matmul(&inc)?)?;
    Ok((g, cert))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlonVariant {
    /// Fits `alon:p,q,n` over GF(p).
    P,
    /// Fits its complement over GF(q), `q ≠ p`.
    Q,
    /// Fits the complement of `alon:p,p,n` over a field of characteristic `> p`.
    R,
}

/// Per-vertex multilinear polynomial and evaluation point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRep {
    pub modulus: PrimeModulus,
    pub n_vars: usize,
    pub degree: usize,
    /// Coefficient order: subsets of `[n_vars]` up to `degree`, by size then
    /// lexicographically.
    pub monomials: Vec<Vec<usize>>,
    /// `(coefficients, 0/1 point)` per vertex.
    pub entries: Vec<(Vec<u32>, Vec<u8>)>,
}

impl PolyRep {
    fn eval(&self, coeffs: &[u32], point: &[u8]) -> u32 {
        let p = self.modulus;
        self.monomials
            .iter()
            .zip(coeffs)
            .filter(|(m, _)| m.iter().all(|&i| point[i] == 1))
            .fold(0, |acc, (_, &c)| p.add(acc, c))
    }

    /// `P_v(x_v) ≠ 0`, and `P_u(x_v) = P_v(x_u) = 0` on non-edges.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        if self.entries.len() != g.n() {
            return Err(Error::Dimension(format!("{} polynomials for {} vertices", self.entries.len(), g.n())));
        }
        for (v, (c, x)) in self.entries.iter().enumerate() {
            if c.len() != self.monomials.len() || x.len() != self.n_vars {
                return Err(Error::Dimension(format!("entry {v} has the wrong length")));
            }
            if self.eval(c, x) == 0 {
                return Err(Error::InvalidCertificate(format!("P_{v} vanishes at its own point")));
            }
        }
        for u in 0..g.n() {
            for v in 0..g.n() {
                if u != v && !g.has_edge(u, v) && self.eval(&self.entries[u].0, &self.entries[v].1) != 0 {
                    return Err(Error::InvalidCertificate(format!("P_{u} is nonzero at the point of non-neighbour {v}")));
                }
            }
        }
        Ok(())
    }

    /// Dimension of the span of the polynomials.
    pub fn span_dim(&self) -> usize {
        let mut e = RowEchelon::new(self.monomials.len(), self.modulus);
        for (c, _) in &self.entries {
            e.insert(c);
        }
        e.rank()
    }

    /// `m_uv = P_u(x_u)⁻¹ · P_u(x_v)`.
    pub fn fit_matrix(&self) -> FMatrix {
        let p = self.modulus;
        let n = self.entries.len();
        let mut m = FMatrix::zeros(n, n, p);
        for u in 0..n {
            let (c, x) = &self.entries[u];
            let inv = p.inv(self.eval(c, x)).unwrap_or(0);
            for v in 0..n {
                m.set(u, v, p.mul(inv, self.eval(c, &self.entries[v].1)));
            }
        }
        m
    }
}

#[derive(Clone, Debug)]
pub struct AlonCertificate {
    /// `alon:p,q,n` for variant P, its complement otherwise.
    pub graph: Graph,
    pub fit: FitCertificate,
    pub poly: PolyRep,
    /// `Σ_{i ≤ deg} C(n, i)`.
    pub rank_bound: u128,
}

/// Builds the polynomial representation and its fit matrix.
///
/// `modulus` defaults to `p` (P), `q` (Q) and the smallest prime above `p` (R).
pub fn alon_certificate(
    variant: AlonVariant,
    p: u64,
    q: u64,
    n: usize,
    modulus: Option<u64>,
    limits: &Limits,
) -> Result<AlonCertificate> {
    PrimeModulus::new(p)?;
    PrimeModulus::new(q)?;
    let field = match variant {
        AlonVariant::P => PrimeModulus::new(modulus.unwrap_or(p))?,
        AlonVariant::Q => PrimeModulus::new(modulus.unwrap_or(q))?,
        AlonVariant::R => match modulus {
            Some(m) => PrimeModulus::new(m)?,
            None => PrimeModulus::next_prime_after(p)?,
        },
    };
    let f = field.get() as u64;
    let (shifts, base) = match variant {
        AlonVariant::P => {
            if f != p {
                return Err(Error::Precondition(format!("variant P needs modulus p = {p}, got {f}")));
            }
            ((0..=p as i64 - 2).collect::<Vec<_>>(), alon(p, q, n, limits)?)
        }
        AlonVariant::Q => {
            if q == p || f != q {
                return Err(Error::Precondition(format!("variant Q needs q ≠ p and modulus q; got p={p}, q={q}, modulus {f}")));
            }
            ((0..=q as i64 - 2).collect(), alon(p, q, n, limits)?)
        }
        AlonVariant::R => {
            if q != p || f <= p {
                return Err(Error::Precondition(format!("variant R needs q = p and modulus > p; got p={p}, q={q}, modulus {f}")));
            }
            let pi = p as i64;
            ((1..pi).map(|i| i * pi - 1).collect(), alon(p, p, n, limits)?)
        }
    };
    let graph = if variant == AlonVariant::P { base } else { base.complement() };
    let degree = shifts.len();
    let rank_bound: u128 = (0..=degree as u64).map(|i| binomial(n as u64, i)).sum();
    if rank_bound > 1 << 20 {
        return Err(Error::Guard { what: "monomial basis size", value: rank_bound, limit: 1 << 20 });
    }
    let basis = MonomialBasis::new(n, degree);
    let sets: Vec<Vec<usize>> = graph
        .labels()
        .expect("alon graphs are labelled")
        .iter()
        .map(|l| match l {
            VertexLabel::Subset(s) => s.clone(),
            _ => unreachable!(),
        })
        .collect();
    let mut entries = Vec::with_capacity(sets.len());
    for x in &sets {
        let poly = Multilinear::product_of_shifted_forms(n, field, x, &shifts)?;
        let xm = mask_of(x);
        // the reduction must not change any value at the indicator points used
        for y in &sets {
            let ym = mask_of(y);
            if poly.eval_indicator(ym) != eval_unreduced(field, xm, ym, &shifts) {
                return Err(Error::InvalidCertificate("multilinear reduction changed a value".into()));
            }
        }
        let point = (0..n).map(|i| x.contains(&i) as u8).collect();
        entries.push((poly.coefficients(&basis)?, point));
    }
    let poly = PolyRep { modulus: field, n_vars: n, degree, monomials: basis.monomials().to_vec(), entries };
    poly.verify(&graph)?;
    let fit = FitCertificate::new(&graph, poly.fit_matrix())?;
    Ok(AlonCertificate { graph, fit, poly, rank_bound })
}

/// Options for [`minrank_exact`].
#[derive(Clone, Copy, Debug)]
pub struct MinrankOptions {
    /// Refuse to search when `p^(2|E|)` exceeds this.
    pub search_space_limit: u128,
}

impl Default for MinrankOptions {
    fn default() -> Self {
        MinrankOptions { search_space_limit: 1 << 30 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinrankOutcome {
    Exact(FitCertificate),
    /// `lower ≤ H ≤ best.claimed_rank`.
    Interval { lower: usize, best: FitCertificate },
}

impl MinrankOutcome {
    pub fn certificate(&self) -> &FitCertificate {
        match self {
            MinrankOutcome::Exact(c) | MinrankOutcome::Interval { best: c, .. } => c,
        }
    }

    pub fn bounds(&self) -> (usize, usize) {
        match self {
            MinrankOutcome::Exact(c) => (c.claimed_rank, c.claimed_rank),
            MinrankOutcome::Interval { lower, best } => (*lower, best.claimed_rank),
        }
    }
}

struct MinrankSearch<'a, 'b> {
    g: &'a Graph,
    p: PrimeModulus,
    lower: usize,
    best_rank: usize,
    best_rows: Option<Vec<Vec<u32>>>,
    budget: &'a mut Budget<'b>,
}

impl MinrankSearch<'_, '_> {
    /// Fills row `v`; returns `false` when the search should stop.
    fn fill(&mut self, v: usize, basis: &RowEchelon, rows: &mut Vec<Vec<u32>>) -> bool {
        let n = self.g.n();
        if v == n {
            if basis.rank() < self.best_rank {
                self.best_rank = basis.rank();
                self.best_rows = Some(rows.clone());
            }
            return self.best_rank > self.lower;
        }
        let free = self.g.neighbors(v).to_vec();
        let q = self.p.get();
        let mut digits = vec![0u32; free.len()];
        loop {
            if !self.budget.tick() {
                return false;
            }
            let mut row = vec![0u32; n];
            row[v] = 1;
            for (&u, &d) in free.iter().zip(&digits) {
                row[u] = d;
            }
            let mut next = basis.clone();
            next.insert(&row);
            if next.rank() < self.best_rank {
                rows.push(row);
                let go = self.fill(v + 1, &next, rows);
                rows.pop();
                if !go {
                    return false;
                }
            }
            // odometer over GF(p)^deg(v)
            let mut i = 0;
            loop {
                if i == digits.len() {
                    return true;
                }
                digits[i] += 1;
                if digits[i] < q {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }
}

/// Exact `H(g; GF(p))` by depth-first assignment of the `2|E|` free entries,
/// row by row, pruning whenever the rank of the rows fixed so far reaches the
/// best rank found. Symmetric and asymmetric fits are both explored.
pub fn minrank_exact(
    g: &Graph,
    p: PrimeModulus,
    opts: &MinrankOptions,
    budget: &mut Budget<'_>,
) -> Result<MinrankOutcome> {
    let (lower, alpha_exact) = match alpha(g, budget) {
        Ok(s) => (s.len(), true),
        Err(i) => (i.best.len(), false),
    };
    let incumbent = cover_certificate(g, &greedy_clique_cover(g), p)?;
    if incumbent.claimed_rank == lower {
        return Ok(MinrankOutcome::Exact(incumbent));
    }
    let space = (p.get() as u128).checked_pow(2 * g.edge_count() as u32).unwrap_or(u128::MAX);
    if space > opts.search_space_limit || !alpha_exact {
        return Ok(MinrankOutcome::Interval { lower, best: incumbent });
    }
    let mut search = MinrankSearch {
        g,
        p,
        lower,
        best_rank: incumbent.claimed_rank,
        best_rows: None,
        budget,
    };
    let finished = search.fill(0, &RowEchelon::new(g.n(), p), &mut Vec::new()) || search.best_rank == lower;
    let best = match search.best_rows {
        Some(rows) => {
            let flat: Vec<i64> = rows.iter().flatten().map(|&x| x as i64).collect();
            FitCertificate::new(g, FMatrix::from_entries(g.n(), g.n(), p, &flat)?)?
        }
        None => incumbent,
    };
    if finished {
        Ok(MinrankOutcome::Exact(best))
    } else {
        Ok(MinrankOutcome::Interval { lower, best })
    }
}
