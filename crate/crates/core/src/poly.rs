//! Multilinear polynomials over GF(p) in at most 128 variables.
//!
//! Monomials are variable subsets stored as bitmasks, so multiplication
//! applies `x² = x` automatically.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ffmat::PrimeModulus;
use crate::graph::k_subsets;

pub type Monomial = u128;

pub fn mask_of(set: &[usize]) -> Monomial {
    set.iter().fold(0, |m, &i| m | 1 << i)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multilinear {
    n: usize,
    p: PrimeModulus,
    terms: BTreeMap<Monomial, u32>,
}

impl Multilinear {
    pub fn constant(n: usize, p: PrimeModulus, c: i64) -> Result<Self> {
        if n > 128 {
            return Err(Error::Guard { what: "polynomial variables", value: n as u128, limit: 128 });
        }
        let mut terms = BTreeMap::new();
        let c = p.reduce(c);
        if c != 0 {
            terms.insert(0, c);
        }
        Ok(Multilinear { n, p, terms })
    }

    /// `Σ_{i∈support} x_i − c`.
    pub fn shifted_form(n: usize, p: PrimeModulus, support: &[usize], c: i64) -> Result<Self> {
        let mut f = Self::constant(n, p, -c)?;
        for &i in support {
            if i >= n {
                return Err(Error::VertexOutOfRange { vertex: i, n });
            }
            let e = f.terms.entry(1 << i).or_insert(0);
            *e = p.add(*e, 1);
        }
        f.terms.retain(|_, c| *c != 0);
        Ok(f)
    }

    /// `Π_s (Σ_{i∈support} x_i − s)`, reduced.
    pub fn product_of_shifted_forms(n: usize, p: PrimeModulus, support: &[usize], shifts: &[i64]) -> Result<Self> {
        let mut acc = Self::constant(n, p, 1)?;
        for &s in shifts {
            acc = acc.mul(&Self::shifted_form(n, p, support, s)?);
        }
        Ok(acc)
    }

    pub fn mul(&self, other: &Multilinear) -> Multilinear {
        let p = self.p;
        let mut terms: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (&a, &ca) in &self.terms {
            for (&b, &cb) in &other.terms {
                let e = terms.entry(a | b).or_insert(0);
                *e = p.add(*e, p.mul(ca, cb));
            }
        }
        terms.retain(|_, c| *c != 0);
        Multilinear { n: self.n, p, terms }
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.count_ones() as usize).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, u32)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    /// Value at the 0/1 point whose support is `point`.
    pub fn eval_indicator(&self, point: Monomial) -> u32 {
        self.terms
            .iter()
            .filter(|(&m, _)| m & !point == 0)
            .fold(0, |acc, (_, &c)| self.p.add(acc, c))
    }

    pub fn coefficients(&self, basis: &MonomialBasis) -> Result<Vec<u32>> {
        let mut v = alloc::vec![0u32; basis.len()];
        for (m, c) in self.terms() {
            let i = basis.index_of(m).ok_or_else(|| {
                Error::Precondition(alloc::format!("monomial of degree {} outside the basis", m.count_ones()))
            })?;
            v[i] = c;
        }
        Ok(v)
    }
}

/// Evaluates `Π_s (|X ∩ Y| − s)` without expanding, as a cross-check of the
/// reduced polynomial at the indicator point of `Y`.
pub fn eval_unreduced(p: PrimeModulus, x: Monomial, y: Monomial, shifts: &[i64]) -> u32 {
    let meet = (x & y).count_ones() as i64;
    shifts.iter().fold(1 % p.get(), |acc, &s| p.mul(acc, p.reduce(meet - s)))
}

/// All monomials of degree at most `degree`, ordered by degree then
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    monomials: Vec<Vec<usize>>,
    index: BTreeMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(n: usize, degree: usize) -> Self {
        let monomials: Vec<Vec<usize>> = (0..=degree.min(n)).flat_map(|k| k_subsets(n, k)).collect();
        let index = monomials.iter().enumerate().map(|(i, m)| (mask_of(m), i)).collect();
        MonomialBasis { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Vec<usize>] {
        &self.monomials
    }

    pub fn index_of(&self, m: Monomial) -> Option<usize> {
        self.index.get(&m).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn reduction_applies_idempotence() {
        // (x0 + x1)² = x0 + x1 + 2·x0x1
        let f = Multilinear::shifted_form(2, gf(5), &[0, 1], 0).unwrap();
        let sq = f.mul(&f);
        let t: Vec<_> = sq.terms().collect();
        assert_eq!(t, vec![(0b01, 1), (0b10, 1), (0b11, 2)]);
        assert_eq!(sq.degree(), 2);
    }

    #[test]
    fn reduced_agrees_with_unreduced_on_all_points() {
        for (p, n, k, shifts) in [(2u64, 7usize, 5usize, vec![0i64]), (3, 7, 5, vec![0, 1]), (5, 6, 4, vec![2, 5])] {
            let p = gf(p);
            for x in k_subsets(n, k) {
                let xm = mask_of(&x);
                let f = Multilinear::product_of_shifted_forms(n, p, &x, &shifts).unwrap();
                assert!(f.degree() <= shifts.len());
                for y in 0u128..1 << n {
                    assert_eq!(f.eval_indicator(y), eval_unreduced(p, xm, y, &shifts));
                }
            }
        }
    }

    #[test]
    fn basis_order_and_coefficients() {
        let b = MonomialBasis::new(3, 2);
        assert_eq!(b.len(), 7);
        assert_eq!(b.monomials()[0], Vec::<usize>::new());
        assert_eq!(b.monomials()[4], vec![0, 1]);
        let f = Multilinear::shifted_form(3, gf(3), &[0, 2], 1).unwrap();
        assert_eq!(f.coefficients(&b).unwrap(), vec![2, 1, 0, 1, 0, 0, 0]);
        let s = Multilinear::shifted_form(3, gf(3), &[0, 1, 2], 0).unwrap();
        let g = s.mul(&s);
        assert!(g.coefficients(&MonomialBasis::new(3, 1)).is_err());
    }
}
