//! The fractional Haemers bound `H_f(G; GF(p)) = inf rank(M)/d` over
//! d-representations `M`.
//!
//! Four certificate forms are supported. [`DRep`] is the block fit matrix
//! itself, [`PairRep`] is a factorisation `M_uv = A_uᵀB_v`, [`RankRRep`]
//! relaxes the diagonal blocks to rank `≥ r`, and [`SubspaceRep`] keeps only
//! the column spaces of the `A_v`. Each has a verifier, and the conversions
//! between them never increase the certified ratio.
//!
//! Block rows and columns are ordered `(vertex, copy)` row-major, which is the
//! vertex order of `G ⋉ K̄_d`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::combinat::{alpha, CliqueCover};
use crate::error::{Error, Result};
use crate::exactq::Rational;
use crate::ffmat::{FMatrix, PrimeModulus};
use crate::fracchrom::{fractional_clique_cover, verify_cover, FractionalCover};
use crate::graph::{cycle, empty, Graph, Limits};
use crate::haemers::{cover_certificate, minrank_exact, MinrankOptions};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RepViolation {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrices use different moduli")]
    ModulusMismatch,
    #[error("diagonal block of vertex {0} is not the identity")]
    DiagonalBlock(usize),
    #[error("block ({0},{1}) of a non-edge is nonzero")]
    NonEdgeBlock(usize, usize),
    #[error("diagonal block of vertex {vertex} has rank {rank}, below {r}")]
    DiagonalRank { vertex: usize, rank: usize, r: usize },
    #[error("subspace of vertex {vertex} has dimension {dim}, expected {d}")]
    SubspaceDim { vertex: usize, dim: usize, d: usize },
    #[error("subspace of vertex {0} meets the span of its non-neighbours")]
    Intersection(usize),
}

type Verdict = core::result::Result<(), RepViolation>;

fn non_edge(g: &Graph, u: usize, v: usize) -> bool {
    u != v && !g.has_edge(u, v)
}

/// Square block fit matrix with `I_d` diagonal blocks and `O_d` non-edge blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DRep {
    pub d: usize,
    pub matrix: FMatrix,
}

impl DRep {
    pub fn n(&self) -> usize {
        if self.d == 0 {
            0
        } else {
            self.matrix.rows() / self.d
        }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.matrix.modulus()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// `rank / d`, an upper bound on `H_f`.
    pub fn ratio(&self) -> Rational {
        Rational::new((self.rank() as i64).into(), (self.d as i64).into())
    }

    pub fn block(&self, u: usize, v: usize) -> FMatrix {
        self.matrix.block(u * self.d, v * self.d, self.d, self.d)
    }
}

pub fn verify_drep(g: &Graph, rep: &DRep) -> Verdict {
    let (n, d) = (g.n(), rep.d);
    let m = &rep.matrix;
    if d == 0 || m.rows() != n * d || m.cols() != n * d {
        return Err(RepViolation::Dimension(format!(
            "{}x{} matrix with d={d} for {n} vertices",
            m.rows(),
            m.cols()
        )));
    }
    for u in 0..n {
        if !rep.block(u, u).is_identity() {
            return Err(RepViolation::DiagonalBlock(u));
        }
        for v in 0..n {
            if non_edge(g, u, v) && !rep.block(u, v).is_zero() {
                return Err(RepViolation::NonEdgeBlock(u, v));
            }
        }
    }
    Ok(())
}

/// An `(n, d)`-representation: pairs of `dim × d` matrices with
/// `A_vᵀB_v = I_d` and `A_uᵀB_v = O_d` whenever `u ≠ v` are non-adjacent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRep {
    pub dim: usize,
    pub d: usize,
    pub modulus: PrimeModulus,
    pub pairs: Vec<(FMatrix, FMatrix)>,
}

impl PairRep {
    pub fn ratio(&self) -> Rational {
        Rational::new((self.dim as i64).into(), (self.d as i64).into())
    }

    fn check_shapes(&self) -> Verdict {
        if self.d == 0 {
            return Err(RepViolation::Dimension("d = 0".into()));
        }
        for (v, (a, b)) in self.pairs.iter().enumerate() {
            for m in [a, b] {
                if m.rows() != self.dim || m.cols() != self.d {
                    return Err(RepViolation::Dimension(format!(
                        "vertex {v}: {}x{} matrix, expected {}x{}",
                        m.rows(),
                        m.cols(),
                        self.dim,
                        self.d
                    )));
                }
                if m.modulus() != self.modulus {
                    return Err(RepViolation::ModulusMismatch);
                }
            }
        }
        Ok(())
    }
}

fn cross(a: &FMatrix, b: &FMatrix) -> FMatrix {
    a.transpose().matmul(b).expect("shapes checked")
}

pub fn verify_pairrep(g: &Graph, rep: &PairRep) -> Verdict {
    if rep.pairs.len() != g.n() {
        return Err(RepViolation::Dimension(format!("{} pairs for {} vertices", rep.pairs.len(), g.n())));
    }
    rep.check_shapes()?;
    for (v, (a, b)) in rep.pairs.iter().enumerate() {
        if !cross(a, b).is_identity() {
            return Err(RepViolation::DiagonalBlock(v));
        }
    }
    for u in 0..g.n() {
        for v in 0..g.n() {
            if non_edge(g, u, v) && !cross(&rep.pairs[u].0, &rep.pairs[v].1).is_zero() {
                return Err(RepViolation::NonEdgeBlock(u, v));
            }
        }
    }
    Ok(())
}

/// Block matrix with square diagonal blocks of rank `≥ r` and zero blocks on
/// non-edges. Vertex `v` owns `sizes[v]` consecutive rows and columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankRRep {
    pub r: usize,
    pub sizes: Vec<usize>,
    pub matrix: FMatrix,
}

impl RankRRep {
    fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.sizes.len() + 1);
        let mut acc = 0;
        out.push(0);
        for &s in &self.sizes {
            acc += s;
            out.push(acc);
        }
        out
    }

    pub fn block(&self, u: usize, v: usize) -> FMatrix {
        let off = self.offsets();
        self.matrix.block(off[u], off[v], self.sizes[u], self.sizes[v])
    }
}

pub fn verify_rankrrep(g: &Graph, rep: &RankRRep) -> Verdict {
    let total: usize = rep.sizes.iter().sum();
    if rep.sizes.len() != g.n() || rep.matrix.rows() != total || rep.matrix.cols() != total || rep.r == 0 {
        return Err(RepViolation::Dimension(format!(
            "{} block sizes summing to {total}, {}x{} matrix, r={}, {} vertices",
            rep.sizes.len(),
            rep.matrix.rows(),
            rep.matrix.cols(),
            rep.r,
            g.n()
        )));
    }
    for v in 0..g.n() {
        let rank = rep.block(v, v).rank();
        if rank < rep.r {
            return Err(RepViolation::DiagonalRank { vertex: v, rank, r: rep.r });
        }
    }
    for u in 0..g.n() {
        for v in 0..g.n() {
            if non_edge(g, u, v) && !rep.block(u, v).is_zero() {
                return Err(RepViolation::NonEdgeBlock(u, v));
            }
        }
    }
    Ok(())
}

/// `d`-dimensional subspaces `S_v ≤ GF(p)^dim`, each meeting the sum of its
/// non-neighbours' subspaces only in zero. `bases[v]` is `dim × d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceRep {
    pub dim: usize,
    pub d: usize,
    pub modulus: PrimeModulus,
    pub bases: Vec<FMatrix>,
}

pub fn verify_subspacerep(g: &Graph, rep: &SubspaceRep) -> Verdict {
    if rep.bases.len() != g.n() {
        return Err(RepViolation::Dimension(format!("{} bases for {} vertices", rep.bases.len(), g.n())));
    }
    for (v, b) in rep.bases.iter().enumerate() {
        if b.rows() != rep.dim || b.cols() != rep.d {
            return Err(RepViolation::Dimension(format!("basis of vertex {v} is {}x{}", b.rows(), b.cols())));
        }
        if b.modulus() != rep.modulus {
            return Err(RepViolation::ModulusMismatch);
        }
        let dim = b.rank();
        if dim != rep.d {
            return Err(RepViolation::SubspaceDim { vertex: v, dim, d: rep.d });
        }
    }
    for v in 0..g.n() {
        let others: Vec<usize> = (0..g.n()).filter(|&u| non_edge(g, u, v)).collect();
        if others.is_empty() {
            continue;
        }
        let sum = concat(rep.dim, rep.modulus, others.iter().map(|&u| &rep.bases[u]));
        let with_v = sum.hstack(&rep.bases[v]).expect("same row count");
        if with_v.rank() != sum.rank() + rep.d {
            return Err(RepViolation::Intersection(v));
        }
    }
    Ok(())
}

fn concat<'a>(rows: usize, p: PrimeModulus, parts: impl Iterator<Item = &'a FMatrix>) -> FMatrix {
    parts.fold(FMatrix::zeros(rows, 0, p), |acc, m| acc.hstack(m).expect("same row count"))
}

fn invalid(v: RepViolation) -> Error {
    Error::InvalidCertificate(format!("{v}"))
}

/// Rank factorisation `M = C·R` with `C = M[:, pivots]` and `R` the nonzero
/// rows of `rref(M)`; then `A_u = C_uᵀ` and `B_v = R_v`, so `dim = rank(M)`.
pub fn pairrep_from_drep(g: &Graph, rep: &DRep) -> Result<PairRep> {
    verify_drep(g, rep).map_err(invalid)?;
    let (n, d) = (g.n(), rep.d);
    let (rref, pivots) = rep.matrix.rref();
    let r = pivots.len();
    let all: Vec<usize> = (0..n * d).collect();
    let c = rep.matrix.submatrix(&all, &pivots);
    let pairs = (0..n)
        .map(|v| {
            let a = c.block(v * d, 0, d, r).transpose();
            let b = rref.block(0, v * d, r, d);
            (a, b)
        })
        .collect();
    Ok(PairRep { dim: r, d, modulus: rep.modulus(), pairs })
}

/// `M_uv = A_uᵀB_v`; the rank of the result is at most `dim`.
pub fn drep_from_pairrep(g: &Graph, rep: &PairRep) -> Result<DRep> {
    verify_pairrep(g, rep).map_err(invalid)?;
    let (n, d) = (g.n(), rep.d);
    let mut m = FMatrix::zeros(n * d, n * d, rep.modulus);
    for u in 0..n {
        for v in 0..n {
            m.set_block(u * d, v * d, &cross(&rep.pairs[u].0, &rep.pairs[v].1));
        }
    }
    Ok(DRep { d, matrix: m })
}

/// `S_v` = column space of `A_v`.
pub fn subspace_from_pairrep(g: &Graph, rep: &PairRep) -> Result<SubspaceRep> {
    verify_pairrep(g, rep).map_err(invalid)?;
    Ok(SubspaceRep {
        dim: rep.dim,
        d: rep.d,
        modulus: rep.modulus,
        bases: rep.pairs.iter().map(|(a, _)| a.clone()).collect(),
    })
}

/// Restricts each diagonal block to a nonsingular `r × r` submatrix `T_v` and
/// multiplies block row `v` by `T_v⁻¹`. Only rows and columns are dropped and
/// rows are scaled invertibly, so the rank cannot grow.
pub fn rankr_to_drep(g: &Graph, rep: &RankRRep) -> Result<DRep> {
    verify_rankrrep(g, rep).map_err(invalid)?;
    let r = rep.r;
    let off = rep.offsets();
    let mut rows = Vec::with_capacity(g.n() * r);
    let mut cols = Vec::with_capacity(g.n() * r);
    for v in 0..g.n() {
        let (rs, cs) = rep.block(v, v).select_full_rank_submatrix(r)?;
        rows.extend(rs.iter().map(|&i| off[v] + i));
        cols.extend(cs.iter().map(|&j| off[v] + j));
    }
    let sub = rep.matrix.submatrix(&rows, &cols);
    let mut out = FMatrix::zeros(sub.rows(), sub.cols(), sub.modulus());
    for v in 0..g.n() {
        let t_inv = sub.block(v * r, v * r, r, r).inverse()?;
        let row = t_inv.matmul(&sub.block(v * r, 0, r, sub.cols()))?;
        out.set_block(v * r, 0, &row);
    }
    let drep = DRep { d: r, matrix: out };
    debug_assert!(verify_drep(g, &drep).is_ok());
    Ok(drep)
}

/// `M*_{(u,x)(v,y)} = M_uv ⊗ N_xy`, a `d₁d₂`-representation of `g ⊠ h` whose
/// rank is the product of the input ranks.
pub fn tensor_dreps(a: &DRep, b: &DRep) -> Result<DRep> {
    if a.modulus() != b.modulus() {
        return Err(Error::ModulusMismatch(a.modulus().get(), b.modulus().get()));
    }
    let (n1, d1, n2, d2) = (a.n(), a.d, b.n(), b.d);
    let k = a.matrix.kronecker(&b.matrix)?;
    // kronecker index (u,i,x,j) -> vertex (u,x), copy (i,j)
    let mut perm = vec![0; k.rows()];
    for u in 0..n1 {
        for i in 0..d1 {
            for x in 0..n2 {
                for j in 0..d2 {
                    let from = (u * d1 + i) * (n2 * d2) + x * d2 + j;
                    perm[from] = ((u * n2 + x) * d1 + i) * d2 + j;
                }
            }
        }
    }
    Ok(DRep { d: d1 * d2, matrix: k.permute(&perm, &perm) })
}

/// Blows each class `C` of weight `w_C` up into `w_C·d` integral slots. Copy
/// `j` of vertex `v` takes the `j`-th slot containing `v`, slots ordered by
/// class index; surplus slots of over-covered vertices are dropped. The slots
/// then partition `G ⋉ K̄_d` into cliques, and the class-membership matrix is a
/// `d`-representation of rank at most `d · value`.
pub fn drep_from_fractional_cover(
    g: &Graph,
    cover: &FractionalCover,
    p: PrimeModulus,
    limits: &Limits,
) -> Result<DRep> {
    verify_cover(g, cover).map_err(|v| Error::InvalidCertificate(format!("{v}")))?;
    let d = usize::try_from(cover.d).map_err(|_| Error::Unsupported("cover denominator too large".into()))?;
    let slots = cover.slots();
    let mut slot_start = Vec::with_capacity(slots.len());
    let mut total = 0usize;
    for &s in &slots {
        slot_start.push(total);
        total += s as usize;
    }
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); total];
    for v in 0..g.n() {
        let mut copy = 0;
        'classes: for (c, (clique, _)) in cover.classes.iter().enumerate() {
            if !clique.contains(&v) {
                continue;
            }
            for s in 0..slots[c] as usize {
                if copy == d {
                    break 'classes;
                }
                members[slot_start[c] + s].push(v * d + copy);
                copy += 1;
            }
        }
        if copy < d {
            return Err(Error::InvalidCertificate(format!("vertex {v} is covered by only {copy} of {d} slots")));
        }
    }
    let blown = g.lex_product(&empty(d), limits)?;
    let partition = CliqueCover { classes: members.into_iter().filter(|c| !c.is_empty()).collect() };
    let fit = cover_certificate(&blown, &partition, p)?;
    Ok(DRep { d, matrix: fit.matrix })
}

/// The optimal clique cover of `C_{2k+1}` turned into a representation; for
/// `k ≥ 2` it is a `(2k+1, 2)` certificate of ratio `k + 1/2`.
pub fn cycle_drep(k: usize, p: PrimeModulus) -> Result<DRep> {
    if k == 0 {
        return Err(Error::Precondition("cycle_drep needs k >= 1".into()));
    }
    let g = cycle(2 * k + 1)?;
    let cover = fractional_clique_cover(&g, &mut Budget::unlimited())?
        .map_err(|_| Error::Precondition("unlimited budget interrupted".into()))?;
    drep_from_fractional_cover(&g, &cover, p, &Limits::default())
}

fn span(rep: &PairRep, set: &[usize]) -> FMatrix {
    concat(rep.dim, rep.modulus, set.iter().map(|&v| &rep.pairs[v].0))
}

/// Whether `Σ_{v∈S} X_v` and `Σ_{v∈T} X_v` are independent, `X_v` being the
/// column space of `A_v`. Requires `S` independent, `S ∩ T = ∅` and no edges
/// between `S` and `T`; then the answer is `true` for every verified rep.
pub fn linind_check(rep: &PairRep, g: &Graph, s: &[usize], t: &[usize]) -> Result<bool> {
    for &v in s.iter().chain(t) {
        g.check_vertex(v)?;
    }
    if rep.pairs.len() != g.n() {
        return Err(Error::Dimension(format!("{} pairs for {} vertices", rep.pairs.len(), g.n())));
    }
    if s.iter().any(|v| t.contains(v)) {
        return Err(Error::Precondition("S and T intersect".into()));
    }
    if !g.is_independent_set(s)? {
        return Err(Error::Precondition("S is not independent".into()));
    }
    if s.iter().any(|&u| t.iter().any(|&v| g.has_edge(u, v))) {
        return Err(Error::Precondition("an edge joins S and T".into()));
    }
    let (ms, mt) = (span(rep, s), span(rep, t));
    Ok(ms.hstack(&mt)?.rank() == ms.rank() + mt.rank())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessSource {
    /// `d = 1` fit from the minrank search.
    Minrank,
    /// Blow-up of an optimal fractional clique cover.
    FractionalCover,
    /// Tensor product of the best certificates of the strong factors.
    Tensor,
}

/// `lower ≤ H_f(g; GF(p)) ≤ upper`, with a verified witness for `upper`.
#[derive(Clone, Debug)]
pub struct HfracBound {
    pub lower: Rational,
    pub upper: Rational,
    /// `false` when the search for `α` was cut short; `lower` is then the size
    /// of the best independent set found.
    pub lower_exact: bool,
    pub witness: DRep,
    pub source: WitnessSource,
}

impl HfracBound {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

/// Best ratio among the minrank fit, the cover blow-up (when its `d ≤ dmax`),
/// and, for strong products, the tensor of the factors' best witnesses.
pub fn hfrac_upper_search(
    g: &Graph,
    p: PrimeModulus,
    dmax: usize,
    limits: &Limits,
    budget: &mut Budget<'_>,
) -> Result<HfracBound> {
    if dmax == 0 {
        return Err(Error::Precondition("dmax must be at least 1".into()));
    }
    let (a, lower_exact) = match alpha(g, budget) {
        Ok(s) => (s.len(), true),
        Err(i) => (i.best.len(), false),
    };
    let mut best: Option<(DRep, Rational, WitnessSource)> = None;
    let mut consider = |rep: DRep, src: WitnessSource| -> Result<()> {
        verify_drep(g, &rep).map_err(invalid)?;
        let ratio = rep.ratio();
        if best.as_ref().is_none_or(|(_, b, _)| &ratio < b) {
            best = Some((rep, ratio, src));
        }
        Ok(())
    };

    let fit = minrank_exact(g, p, &MinrankOptions::default(), budget)?;
    consider(DRep { d: 1, matrix: fit.certificate().matrix.clone() }, WitnessSource::Minrank)?;

    if let Ok(cover) = fractional_clique_cover(g, budget)? {
        if cover.d as usize <= dmax {
            consider(drep_from_fractional_cover(g, &cover, p, limits)?, WitnessSource::FractionalCover)?;
        }
    }

    if let Some((f, h)) = g.strong_factors() {
        let wf = hfrac_upper_search(f, p, dmax, limits, budget)?.witness;
        let wh = hfrac_upper_search(h, p, dmax, limits, budget)?.witness;
        let t = tensor_dreps(&wf, &wh)?;
        if t.matrix.rows() <= 4096 {
            consider(t, WitnessSource::Tensor)?;
        }
    }

    let (witness, upper, source) = best.expect("the minrank candidate always exists");
    let lower = Rational::from_integer((a as i64).into());
    debug_assert!(lower <= upper || !lower_exact);
    Ok(HfracBound { lower, upper, lower_exact, witness, source })
}

/// `true` when `rank / d ≥ α(g)`; used to sanity-check certificates.
pub fn respects_alpha(g: &Graph, rep: &DRep, budget: &mut Budget<'_>) -> Option<bool> {
    let a = alpha(g, budget).ok()?.len();
    Some(rep.ratio() >= Rational::from_integer((a as i64).into()))
}
