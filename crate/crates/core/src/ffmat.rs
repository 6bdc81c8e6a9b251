//! Dense linear algebra over prime fields GF(p).
//!
//! Elimination always pivots on the first nonzero entry, so every derived
//! object (pivot lists, bases, factorizations) is reproducible.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A prime `p < 2³¹`; primality is checked on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u32);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeModulus(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.0 as u64 - b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a as u64 * b as u64 % self.0 as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 { 0 } else { self.0 - a }
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.0) {
            None
        } else {
            Some(self.pow(a, self.0 as u64 - 2))
        }
    }

    /// Smallest prime strictly greater than `p`.
    pub fn next_prime_after(p: u64) -> Result<Self> {
        let mut c = p + 1;
        while !is_prime(c) {
            c += 1;
        }
        Self::new(c)
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense row-major matrix over GF(p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FMatrix {
    rows: usize,
    cols: usize,
    p: PrimeModulus,
    data: Vec<u32>,
}

impl fmt::Debug for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FMatrix {}x{} over {}", self.rows, self.cols, self.p)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Cap on the number of cells a Kronecker product may allocate.
pub const KRONECKER_CELL_LIMIT: usize = 1 << 26;

impl FMatrix {
    pub fn zeros(rows: usize, cols: usize, p: PrimeModulus) -> Self {
        FMatrix { rows, cols, p, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, p: PrimeModulus) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.data[i * n + i] = 1 % p.get();
        }
        m
    }

    /// Builds a matrix from integer entries, reducing them mod p.
    pub fn from_entries(rows: usize, cols: usize, p: PrimeModulus, entries: &[i64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        Ok(FMatrix { rows, cols, p, data: entries.iter().map(|&x| p.reduce(x)).collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, p: PrimeModulus, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % p.get());
            }
        }
        FMatrix { rows, cols, p, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p.get();
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j) as u32))
    }

    pub fn transpose(&self) -> FMatrix {
        FMatrix::from_fn(self.cols, self.rows, self.p, |i, j| self.get(j, i))
    }

    fn same_field(&self, other: &FMatrix) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p.get(), other.p.get()));
        }
        Ok(())
    }

    pub fn matmul(&self, other: &FMatrix) -> Result<FMatrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p.get() as u64;
        let mut out = FMatrix::zeros(self.rows, other.cols, self.p);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    *slot = (*slot + a * other.get(k, j) as u64) % p;
                }
            }
            for (j, &v) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = v as u32;
            }
        }
        Ok(out)
    }

    /// Kronecker product: block `(i, j)` equals `self[i][j] · other`.
    pub fn kronecker(&self, other: &FMatrix) -> Result<FMatrix> {
        self.same_field(other)?;
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        if rows.saturating_mul(cols) > KRONECKER_CELL_LIMIT {
            return Err(Error::Guard {
                what: "kronecker cells",
                value: rows as u128 * cols as u128,
                limit: KRONECKER_CELL_LIMIT as u128,
            });
        }
        let p = self.p;
        Ok(FMatrix::from_fn(rows, cols, p, |i, j| {
            p.mul(self.get(i / other.rows, j / other.cols), other.get(i % other.rows, j % other.cols))
        }))
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (FMatrix, Vec<usize>) {
        let mut m = self.clone();
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            m.swap_rows(r, piv);
            let inv = p.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = p.mul(m.get(r, j), inv);
                m.data[r * m.cols + j] = v;
            }
            for i in 0..m.rows {
                let f = m.get(i, c);
                if i == r || f == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = p.sub(m.get(i, j), p.mul(f, m.get(r, j)));
                    m.data[i * m.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut e = RowEchelon::new(self.cols, self.p);
        for i in 0..self.rows {
            e.insert(self.row(i));
        }
        e.rank()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> FMatrix {
        FMatrix::from_fn(rows.len(), cols.len(), self.p, |i, j| self.get(rows[i], cols[j]))
    }

    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> FMatrix {
        FMatrix::from_fn(h, w, self.p, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &FMatrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = b.get(i, j);
            }
        }
    }

    pub fn hstack(&self, other: &FMatrix) -> Result<FMatrix> {
        self.same_field(other)?;
        if self.rows != other.rows {
            return Err(Error::Dimension(format!("hstack of {} and {} rows", self.rows, other.rows)));
        }
        Ok(FMatrix::from_fn(self.rows, self.cols + other.cols, self.p, |i, j| {
            if j < self.cols { self.get(i, j) } else { other.get(i, j - self.cols) }
        }))
    }

    /// Inverse of a square nonsingular matrix.
    pub fn inverse(&self) -> Result<FMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("inverse of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let (r, _) = self.hstack(&FMatrix::identity(n, self.p))?.rref();
        let left = r.block(0, 0, n, n);
        if !left.is_identity() {
            return Err(Error::RankDeficient { rank: self.rank(), requested: n });
        }
        Ok(r.block(0, n, n, n))
    }

    /// Columns of `self` at the pivot positions: a basis of the column space.
    pub fn column_space_basis(&self) -> FMatrix {
        let (_, pivots) = self.rref();
        self.submatrix(&(0..self.rows).collect::<Vec<_>>(), &pivots)
    }

    /// Rows and columns of an `r×r` nonsingular submatrix: the first `r`
    /// pivot columns, then the first `r` rows independent on those columns.
    pub fn select_full_rank_submatrix(&self, r: usize) -> Result<(Vec<usize>, Vec<usize>)> {
        let (_, col_pivots) = self.rref();
        if col_pivots.len() < r {
            return Err(Error::RankDeficient { rank: col_pivots.len(), requested: r });
        }
        let cols: Vec<usize> = col_pivots[..r].to_vec();
        let all_rows: Vec<usize> = (0..self.rows).collect();
        let (_, row_pivots) = self.submatrix(&all_rows, &cols).transpose().rref();
        Ok((row_pivots[..r].to_vec(), cols))
    }

    /// Permutes rows and columns: entry `(i, j)` moves to `(row_perm[i], col_perm[j])`.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> FMatrix {
        let mut out = FMatrix::zeros(self.rows, self.cols, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[row_perm[i] * self.cols + col_perm[j]] = self.get(i, j);
            }
        }
        out
    }
}

/// Incrementally maintained reduced row basis.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    cols: usize,
    p: PrimeModulus,
    rows: Vec<(usize, Vec<u32>)>,
}

impl RowEchelon {
    pub fn new(cols: usize, p: PrimeModulus) -> Self {
        RowEchelon { cols, p, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the residual.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p;
        let mut v: Vec<u32> = v.iter().map(|&x| x % p.get()).collect();
        for (piv, row) in &self.rows {
            let f = v[*piv];
            if f != 0 {
                for (a, &b) in v.iter_mut().zip(row) {
                    *a = p.sub(*a, p.mul(f, b));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        let mut v = self.reduce(v);
        let Some(piv) = v.iter().position(|&x| x != 0) else { return false };
        let p = self.p;
        let inv = p.inv(v[piv]).expect("nonzero");
        v.iter_mut().for_each(|x| *x = p.mul(*x, inv));
        for (_, row) in self.rows.iter_mut() {
            let f = row[piv];
            if f != 0 {
                for (a, &b) in row.iter_mut().zip(&v) {
                    *a = p.sub(*a, p.mul(f, b));
                }
            }
        }
        self.rows.push((piv, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn modulus_arithmetic() {
        assert!(PrimeModulus::new(4).is_err());
        assert!(PrimeModulus::new(1).is_err());
        let p = gf(7);
        assert_eq!(p.inv(3), Some(5));
        assert_eq!(p.inv(0), None);
        assert_eq!(p.sub(2, 5), 4);
        assert_eq!(p.reduce(-1), 6);
        assert_eq!(PrimeModulus::next_prime_after(3).unwrap().get(), 5);
        assert_eq!(PrimeModulus::next_prime_after(7).unwrap().get(), 11);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(FMatrix::identity(5, gf(2)).rank(), 5);
        assert_eq!(FMatrix::from_fn(4, 4, gf(3), |_, _| 1).rank(), 1);
        // incidence of the four 3-subsets of [4]: J − I, invertible over GF(2)
        let inc = FMatrix::from_fn(4, 4, gf(2), |i, j| (i != j) as u32);
        assert_eq!(inc.rank(), 4);
        // brute-force oracle: no nonempty subset of rows sums to zero
        for mask in 1u32..16 {
            let mut acc = [0u32; 4];
            for i in 0..4 {
                if mask >> i & 1 == 1 {
                    for j in 0..4 {
                        acc[j] ^= inc.get(i, j);
                    }
                }
            }
            assert!(acc.iter().any(|&x| x != 0));
        }
    }

    #[test]
    fn matmul_examples() {
        let p = gf(2);
        let m = FMatrix::from_entries(2, 3, p, &[1, 0, 1, 1, 1, 0]).unwrap();
        assert_eq!(FMatrix::identity(2, p).matmul(&m).unwrap(), m);
        let a = FMatrix::from_entries(2, 1, p, &[1, 1]).unwrap();
        let b = FMatrix::from_entries(2, 1, p, &[0, 1]).unwrap();
        assert!(a.transpose().matmul(&b).unwrap().is_identity());
        assert!(matches!(m.matmul(&m), Err(Error::Dimension(_))));
        assert!(matches!(m.matmul(&FMatrix::identity(3, gf(3))), Err(Error::ModulusMismatch(2, 3))));
    }

    #[test]
    fn kronecker_examples() {
        let p = gf(5);
        assert_eq!(
            FMatrix::identity(2, p).kronecker(&FMatrix::identity(3, p)).unwrap(),
            FMatrix::identity(6, p)
        );
        let k = FMatrix::zeros(2, 3, p).kronecker(&FMatrix::zeros(4, 5, p)).unwrap();
        assert_eq!((k.rows(), k.cols()), (8, 15));
        let m = FMatrix::from_entries(3, 3, p, &[1, 2, 3, 2, 4, 6, 0, 1, 1]).unwrap();
        assert_eq!(FMatrix::identity(2, p).kronecker(&m).unwrap().rank(), 2 * m.rank());
    }

    #[test]
    fn full_rank_selection() {
        let p = gf(3);
        let (r, c) = FMatrix::identity(3, p).select_full_rank_submatrix(2).unwrap();
        assert_eq!((r, c), (vec![0, 1], vec![0, 1]));
        let m = FMatrix::from_entries(2, 2, p, &[0, 0, 0, 1]).unwrap();
        let (r, c) = m.select_full_rank_submatrix(1).unwrap();
        assert_eq!((r, c), (vec![1], vec![1]));
        assert!(matches!(m.select_full_rank_submatrix(2), Err(Error::RankDeficient { rank: 1, requested: 2 })));
    }

    #[test]
    fn inverse_round_trip() {
        let p = gf(7);
        let m = FMatrix::from_entries(3, 3, p, &[2, 1, 0, 0, 3, 1, 1, 0, 4]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.matmul(&inv).unwrap().is_identity());
        assert!(FMatrix::zeros(2, 2, p).inverse().is_err());
    }

    fn arb_matrix(p: u64) -> impl Strategy<Value = FMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(0i64..p as i64, r * c)
                .prop_map(move |e| FMatrix::from_entries(r, c, gf(p), &e).unwrap())
        })
    }

    fn arb_pair() -> impl Strategy<Value = (FMatrix, FMatrix)> {
        prop_oneof![Just(2u64), Just(3u64), Just(5u64)]
            .prop_flat_map(|p| (arb_matrix(p), arb_matrix(p)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn kronecker_rank_multiplies((a, b) in arb_pair()) {
            prop_assert_eq!(a.kronecker(&b).unwrap().rank(), a.rank() * b.rank());
        }

        #[test]
        fn product_rank_bounded((a, b) in arb_pair()) {
            let bt = FMatrix::from_fn(a.cols(), b.cols(), a.modulus(), |i, j| b.get(i % b.rows(), j));
            let ab = a.matmul(&bt).unwrap();
            prop_assert!(ab.rank() <= a.rank().min(bt.rank()));
        }

        #[test]
        fn rank_invariant_under_permutation(a in arb_matrix(3), seed in any::<u64>()) {
            let mut rp: Vec<usize> = (0..a.rows()).collect();
            let mut cp: Vec<usize> = (0..a.cols()).collect();
            let mut s = seed;
            for v in [&mut rp, &mut cp] {
                for i in (1..v.len()).rev() {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    v.swap(i, (s >> 33) as usize % (i + 1));
                }
            }
            prop_assert_eq!(a.permute(&rp, &cp).rank(), a.rank());
        }

        #[test]
        fn selected_submatrix_is_nonsingular(a in arb_matrix(5)) {
            let r = a.rank();
            if r > 0 {
                let (rows, cols) = a.select_full_rank_submatrix(r).unwrap();
                prop_assert_eq!(a.submatrix(&rows, &cols).rank(), r);
            }
        }
    }
}
