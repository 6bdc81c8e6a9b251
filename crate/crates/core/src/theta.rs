//! Lovász theta: closed forms for circulant graphs, the exact LP for the
//! Johnson-type graphs `J_n^p`, and floating-point evaluators for orthonormal
//! and matrix representations.
//!
//! Representations are checked against a tolerance before they are evaluated.
//! An orthonormal representation gives the upper bound `max_v 1/⟨x_v, h⟩²`.
//! One of the complement gives the lower bound `Σ_v ⟨x̄_v, h̄⟩²`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use core::f64::consts::PI;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactq::{simplex_solve, LinearProgram, LpSolution, LpStatus, Rational, Relation};
use crate::ffmat::is_prime;
use crate::graph::{binomial, Graph};

pub const DEFAULT_TOL: f64 = 1e-9;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `θ` of the circulant graph on `Z_n` joining `x` and `x ± s` for `s` in
/// `connection`.
///
/// Uses `θ = n(−λ_min)/(λ_0 − λ_min)`, valid for edge-transitive regular
/// graphs. Supported connection sets are all nonzero residues (`K_n`) and sets
/// on which the multiplicative units preserving them act transitively; this
/// includes every cycle.
pub fn theta_circulant(n: usize, connection: &[usize]) -> Result<f64> {
    if n < 2 {
        return Err(Error::Precondition(format!("circulant needs n >= 2, got {n}")));
    }
    let mut set: Vec<usize> = connection.iter().map(|&s| s % n).collect();
    set.sort_unstable();
    set.dedup();
    if set.is_empty() || set[0] == 0 {
        return Err(Error::Precondition("connection set must be nonempty and avoid 0".into()));
    }
    if set.iter().any(|&s| set.binary_search(&(n - s)).is_err()) {
        return Err(Error::Precondition("connection set is not closed under negation".into()));
    }
    if set.len() < n - 1 {
        let preserving: Vec<usize> = (1..n)
            .filter(|&a| gcd(a, n) == 1 && set.iter().all(|&s| set.binary_search(&(a * s % n)).is_ok()))
            .collect();
        let mut orbit: Vec<usize> = preserving.iter().map(|&a| a * set[0] % n).collect();
        orbit.sort_unstable();
        orbit.dedup();
        if orbit != set {
            return Err(Error::Unsupported(format!(
                "circulant {n} with connection {set:?} is not edge-transitive under unit multipliers"
            )));
        }
    }
    let eig = |j: usize| -> f64 {
        set.iter().map(|&s| libm::cos(2.0 * PI * ((j * s) % n) as f64 / n as f64)).sum()
    };
    let top = set.len() as f64;
    let min = (1..n).map(eig).fold(f64::INFINITY, f64::min);
    Ok(n as f64 * -min / (top - min))
}

/// Connection set `{1, n−1}` of the cycle `C_n`.
pub fn theta_cycle(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::Precondition(format!("cycle needs n >= 3, got {n}")));
    }
    theta_circulant(n, &[1, n - 1])
}

fn big(x: u128) -> BigInt {
    BigInt::from(x)
}

/// The two-variable LP for `θ(J_n^p)`: maximise `1 + a_1 + a_{p+1}` subject
/// to one `≥ −1` constraint for each `u ∈ 0..=p+1`. Both variables are free.
pub fn johnson_lp(p: u64, n: u64) -> Result<LinearProgram> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n < 2 * (p + 1) {
        return Err(Error::Precondition(format!("needs n >= 2(p+1) = {}, got n = {n}", 2 * (p + 1))));
    }
    if p == 2 && 3 * n == 14 {
        return Err(Error::Precondition("3n - 14 = 0".into()));
    }
    let (pi, ni) = (p as i64, n as i64);
    let one = Rational::from_integer(1.into());
    let mut lp = LinearProgram::maximize(vec![one.clone(), one.clone()]).with_constant(one.clone());
    let denom = binomial(n - p - 1, p + 1);
    for u in 0..=p + 1 {
        let ui = u as i64;
        let c1 = Rational::new(
            ((pi + 1 - ui) * (ni - pi - ui - 1) - ui).into(),
            ((pi + 1) * (ni - pi - 1)).into(),
        );
        let sign = if u % 2 == 0 { 1 } else { -1 };
        let c2 = Rational::new(big(binomial(n - p - u - 1, p + 1 - u)) * sign, big(denom));
        lp.add_constraint(vec![c1, c2], Relation::Ge, -one.clone());
    }
    Ok(lp)
}

/// Solves [`johnson_lp`] exactly.
pub fn theta_johnson_lp_solution(p: u64, n: u64) -> Result<LpSolution> {
    let sol = simplex_solve(&johnson_lp(p, n)?)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Precondition(format!("LP is {:?}", sol.status)));
    }
    Ok(sol)
}

pub fn theta_johnson_lp(p: u64, n: u64) -> Result<Rational> {
    Ok(theta_johnson_lp_solution(p, n)?.value)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sq(x: f64) -> f64 {
    x * x
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum ThetaViolation {
    #[error("dimension mismatch: {0}")]
    Dimension(alloc::string::String),
    #[error("vector or column of vertex {0} is not a unit vector")]
    NotUnit(usize),
    #[error("columns of vertex {0} are not orthonormal")]
    NotOrthonormal(usize),
    #[error("handle is not made of unit vectors")]
    Handle,
    #[error("vertices {0} and {1} are non-adjacent but not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("vertex {0} is orthogonal to the handle, so the bound is unbounded")]
    Unbounded(usize),
}

/// Unit vectors in `R^dim`, orthogonal on non-edges, plus a unit handle.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthoRep {
    pub dim: usize,
    pub vectors: Vec<Vec<f64>>,
    pub handle: Vec<f64>,
}

pub fn verify_orthorep(g: &Graph, rep: &OrthoRep, tol: f64) -> core::result::Result<(), ThetaViolation> {
    if rep.vectors.len() != g.n() || rep.handle.len() != rep.dim || rep.vectors.iter().any(|x| x.len() != rep.dim) {
        return Err(ThetaViolation::Dimension(format!("{} vectors for {} vertices in R^{}", rep.vectors.len(), g.n(), rep.dim)));
    }
    if libm::fabs(dot(&rep.handle, &rep.handle) - 1.0) > tol {
        return Err(ThetaViolation::Handle);
    }
    for (v, x) in rep.vectors.iter().enumerate() {
        if libm::fabs(dot(x, x) - 1.0) > tol {
            return Err(ThetaViolation::NotUnit(v));
        }
    }
    for (u, v) in g.complement().edges() {
        if libm::fabs(dot(&rep.vectors[u], &rep.vectors[v])) > tol {
            return Err(ThetaViolation::NotOrthogonal(u, v));
        }
    }
    Ok(())
}

/// `max_v 1/⟨x_v, h⟩²`, an upper bound on `θ(g)`.
pub fn theta_upper_from_orthorep(g: &Graph, rep: &OrthoRep, tol: f64) -> core::result::Result<f64, ThetaViolation> {
    verify_orthorep(g, rep, tol)?;
    let mut worst = 0.0f64;
    for (v, x) in rep.vectors.iter().enumerate() {
        let c = dot(x, &rep.handle);
        if c * c <= tol {
            return Err(ThetaViolation::Unbounded(v));
        }
        worst = worst.max(1.0 / (c * c));
    }
    Ok(worst)
}

/// `Σ_v ⟨x̄_v, h̄⟩²` over an orthonormal representation of the complement, a
/// lower bound on `θ(g)`.
pub fn theta_lower_from_dual(
    g: &Graph,
    rep_of_complement: &OrthoRep,
    tol: f64,
) -> core::result::Result<f64, ThetaViolation> {
    verify_orthorep(&g.complement(), rep_of_complement, tol)?;
    Ok(rep_of_complement.vectors.iter().map(|x| sq(dot(x, &rep_of_complement.handle))).sum())
}

/// Five unit vectors on a cone around `e_3`, with vectors two steps apart
/// orthogonal. `step = 1` gives a representation of `C_5`, `step = 2` one of
/// its complement. The handle is the cone axis, with `⟨x_v, h⟩² = 1/√5`.
pub fn pentagon_umbrella(step: usize) -> OrthoRep {
    let c2 = 1.0 / libm::sqrt(5.0);
    let (c, s) = (libm::sqrt(c2), libm::sqrt(1.0 - c2));
    let vectors = (0..5)
        .map(|k| {
            let a = 2.0 * PI * (k * step) as f64 / 5.0;
            vec![s * libm::cos(a), s * libm::sin(a), c]
        })
        .collect();
    OrthoRep { dim: 3, vectors, handle: vec![0.0, 0.0, 1.0] }
}

/// Per-vertex blocks of orthonormal columns and a handle of `k` unit columns.
/// Matrices are lists of columns in `R^dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixRep {
    pub dim: usize,
    pub blocks: Vec<Vec<Vec<f64>>>,
    pub handle: Vec<Vec<f64>>,
}

pub fn verify_matrixrep(g: &Graph, rep: &MatrixRep, tol: f64) -> core::result::Result<(), ThetaViolation> {
    let shapes_ok = rep.blocks.len() == g.n()
        && !rep.handle.is_empty()
        && rep.handle.iter().chain(rep.blocks.iter().flatten()).all(|c| c.len() == rep.dim);
    if !shapes_ok {
        return Err(ThetaViolation::Dimension(format!("{} blocks for {} vertices in R^{}", rep.blocks.len(), g.n(), rep.dim)));
    }
    if rep.handle.iter().any(|h| libm::fabs(dot(h, h) - 1.0) > tol) {
        return Err(ThetaViolation::Handle);
    }
    for (v, m) in rep.blocks.iter().enumerate() {
        if m.is_empty() {
            return Err(ThetaViolation::Dimension(format!("vertex {v} has no columns")));
        }
        for (i, a) in m.iter().enumerate() {
            for (j, b) in m.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                if libm::fabs(dot(a, b) - want) > tol {
                    return Err(if i == j { ThetaViolation::NotUnit(v) } else { ThetaViolation::NotOrthonormal(v) });
                }
            }
        }
    }
    for (u, v) in g.complement().edges() {
        if rep.blocks[u].iter().any(|a| rep.blocks[v].iter().any(|b| libm::fabs(dot(a, b)) > tol)) {
            return Err(ThetaViolation::NotOrthogonal(u, v));
        }
    }
    Ok(())
}

/// `max_v k / tr(M_vᵀ H Hᵀ M_v)`.
pub fn matrixrep_value(g: &Graph, rep: &MatrixRep, tol: f64) -> core::result::Result<f64, ThetaViolation> {
    verify_matrixrep(g, rep, tol)?;
    let k = rep.handle.len() as f64;
    let mut worst = 0.0f64;
    for (v, m) in rep.blocks.iter().enumerate() {
        let tr: f64 = m.iter().flat_map(|a| rep.handle.iter().map(move |h| sq(dot(a, h)))).sum();
        if tr <= tol {
            return Err(ThetaViolation::Unbounded(v));
        }
        worst = worst.max(k / tr);
    }
    Ok(worst)
}

/// Standard basis of `R^dim`, the handle under which a `d`-dimensional matrix
/// representation evaluates to `dim / d`.
pub fn identity_handle(dim: usize) -> Vec<Vec<f64>> {
    (0..dim).map(|i| (0..dim).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect()
}

/// A theta value together with its absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaValue {
    pub value: f64,
    pub tol: f64,
    /// Obtained by multiplying the values of strong factors.
    pub from_factors: bool,
}

impl ThetaValue {
    pub fn new(value: f64, tol: f64) -> Self {
        ThetaValue { value, tol, from_factors: false }
    }

    /// `θ(G ⊠ H) = θ(G)·θ(H)`, with the error bound propagated.
    pub fn compose_strong(self, other: ThetaValue) -> ThetaValue {
        ThetaValue {
            value: self.value * other.value,
            tol: self.tol * other.value + other.tol * self.value + self.tol * other.tol,
            from_factors: true,
        }
    }
}
