use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{Graph, Limits, VertexLabel};
use crate::error::{Error, Result};
use crate::ffmat::PrimeModulus;

pub fn cycle(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(Error::Precondition(format!("cycle length {k} < 3")));
    }
    let mut g = Graph::new(k);
    for i in 0..k {
        g.add_edge(i, (i + 1) % k)?;
    }
    Ok(g)
}

pub fn complete(k: usize) -> Graph {
    Graph::new(k).complement()
}

pub fn empty(k: usize) -> Graph {
    Graph::new(k)
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        i -= 1;
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn subset_graph(
    n: usize,
    k: usize,
    limits: &Limits,
    adjacent: impl Fn(usize) -> bool,
) -> Result<Graph> {
    if n > 128 {
        return Err(Error::Guard { what: "ground set size", value: n as u128, limit: 128 });
    }
    limits.check_vertices(binomial(n as u64, k as u64))?;
    let sets = k_subsets(n, k);
    let masks: Vec<u128> = sets.iter().map(|s| s.iter().fold(0u128, |m, &i| m | 1 << i)).collect();
    let mut g = Graph::new(sets.len());
    for a in 0..sets.len() {
        for b in a + 1..sets.len() {
            if adjacent((masks[a] & masks[b]).count_ones() as usize) {
                g.add_edge(a, b)?;
            }
        }
    }
    g.with_labels(sets.into_iter().map(VertexLabel::Subset).collect())
}

/// The graph on `(p+1)`-subsets of `[n]`, adjacent when the intersection size
/// is nonzero mod `p`.
pub fn johnson(p: u64, n: usize, limits: &Limits) -> Result<Graph> {
    let p = PrimeModulus::new(p)?.get() as usize;
    subset_graph(n, p + 1, limits, |i| i % p != 0)
}

/// The graph on `(pq−1)`-subsets of `[n]`, adjacent when the intersection size
/// is `≡ −1 (mod p)`.
pub fn alon(p: u64, q: u64, n: usize, limits: &Limits) -> Result<Graph> {
    let p = PrimeModulus::new(p)?.get() as usize;
    let q = PrimeModulus::new(q)?.get() as usize;
    subset_graph(n, p * q - 1, limits, |i| (i + 1) % p == 0)
}

/// Universal graph over GF(p): all pairs `(A, B)` of `n×d` matrices with
/// `AᵀB = I_d`; `(A,B)` and `(C,D)` are non-adjacent iff `AᵀD = CᵀB = O_d`.
pub fn universal(p: u64, n: usize, d: usize, limits: &Limits) -> Result<Graph> {
    let modulus = PrimeModulus::new(p)?;
    let p = modulus.get() as u64;
    if d == 0 || d > n {
        return Err(Error::Precondition(format!("need 1 ≤ d ≤ n, got d={d}, n={n}")));
    }
    let cells = (n * d) as u32;
    let side = (p as u128).checked_pow(cells).unwrap_or(u128::MAX);
    let candidates = side.saturating_mul(side);
    if candidates > limits.max_universal_candidates {
        return Err(Error::Guard {
            what: "universal candidate pairs",
            value: candidates,
            limit: limits.max_universal_candidates,
        });
    }
    let side = side as u64;
    let decode = |mut code: u64| -> Vec<u32> {
        let mut m = vec![0u32; n * d];
        for cell in m.iter_mut() {
            *cell = (code % p) as u32;
            code /= p;
        }
        m
    };
    // (AᵀB)_{ij} = Σ_k A_{ki} B_{kj}
    let gram = |a: &[u32], b: &[u32]| -> Vec<u32> {
        let mut out = vec![0u32; d * d];
        for i in 0..d {
            for j in 0..d {
                let s: u64 = (0..n).map(|k| a[k * d + i] as u64 * b[k * d + j] as u64).sum();
                out[i * d + j] = (s % p) as u32;
            }
        }
        out
    };
    let identity: Vec<u32> = (0..d * d).map(|c| (c / d == c % d) as u32).collect();
    let mats: Vec<Vec<u32>> = (0..side).map(decode).collect();
    let mut pairs = Vec::new();
    for a in &mats {
        for b in &mats {
            if gram(a, b) == identity {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    limits.check_vertices(pairs.len() as u128)?;
    let mut g = Graph::new(pairs.len());
    for u in 0..pairs.len() {
        for v in u + 1..pairs.len() {
            let (a, b) = &pairs[u];
            let (c, dm) = &pairs[v];
            let zero = |m: &[u32]| m.iter().all(|&x| x == 0);
            if !(zero(&gram(a, dm)) && zero(&gram(c, b))) {
                g.add_edge(u, v)?;
            }
        }
    }
    g.with_labels(pairs.into_iter().map(|(a, b)| VertexLabel::Frame { a, b }).collect())
}
