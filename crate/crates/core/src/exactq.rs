//! Exact rationals and a dense-tableau simplex solver.
//!
//! The solver is a two-phase primal simplex with Bland's rule over
//! [`Rational`]. Every optimal answer carries a dual vector, and
//! [`check_solution`] re-derives optimality from the primal/dual pair alone.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"num/den"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse { pos: 0, msg: format!("not a rational: {s:?}") };
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Always `"num/den"`, denominator positive.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Least common multiple of the denominators (1 for an empty input).
pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    fn holds(&self, x: &[Rational]) -> bool {
        let lhs = dot(&self.coeffs, x);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

/// `maximize c·x + c₀` subject to linear constraints and optional per-variable
/// bounds. Variables are free unless bounded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constant: Rational,
    pub constraints: Vec<Constraint>,
    pub lower: Vec<Option<Rational>>,
    pub upper: Vec<Option<Rational>>,
}

impl LinearProgram {
    pub fn maximize(objective: Vec<Rational>) -> Self {
        let n = objective.len();
        LinearProgram {
            objective,
            constant: Rational::zero(),
            constraints: Vec::new(),
            lower: vec![None; n],
            upper: vec![None; n],
        }
    }

    pub fn with_constant(mut self, c: Rational) -> Self {
        self.constant = c;
        self
    }

    pub fn subject_to(mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        self.add_constraint(coeffs, relation, rhs);
        self
    }

    pub fn add_constraint(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    /// Every variable `≥ 0`.
    pub fn nonnegative(mut self) -> Self {
        self.lower = vec![Some(Rational::zero()); self.num_vars()];
        self
    }

    pub fn set_bounds(&mut self, var: usize, lower: Option<Rational>, upper: Option<Rational>) {
        self.lower[var] = lower;
        self.upper[var] = upper;
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.lower.len() != n || self.upper.len() != n {
            return Err(Error::Dimension(format!("bounds for {} / {} of {n} variables", self.lower.len(), self.upper.len())));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(Error::Dimension(format!("constraint {i} has {} coefficients, expected {n}", c.coeffs.len())));
            }
        }
        Ok(())
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        dot(&self.objective, x) + &self.constant
    }

    /// Exact primal feasibility, bounds included.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && self.constraints.iter().all(|c| c.holds(x))
            && x.iter().zip(&self.lower).all(|(v, l)| l.as_ref().is_none_or(|l| v >= l))
            && x.iter().zip(&self.upper).all(|(v, u)| u.as_ref().is_none_or(|u| v <= u))
    }

    /// Objective of the dual for multipliers `y` (one per constraint), or
    /// `None` when `y` is not dual feasible. Any returned value is an upper
    /// bound on the primal optimum.
    pub fn dual_value(&self, y: &[Rational]) -> Option<Rational> {
        if y.len() != self.constraints.len() {
            return None;
        }
        let mut value = self.constant.clone();
        for (c, yi) in self.constraints.iter().zip(y) {
            let sign_ok = match c.relation {
                Relation::Le => !yi.is_negative(),
                Relation::Ge => !yi.is_positive(),
                Relation::Eq => true,
            };
            if !sign_ok {
                return None;
            }
            value += yi * &c.rhs;
        }
        for j in 0..self.num_vars() {
            let mut z = self.objective[j].clone();
            for (c, yi) in self.constraints.iter().zip(y) {
                z -= yi * &c.coeffs[j];
            }
            if z.is_positive() {
                value += &z * self.upper[j].as_ref()?;
            } else if z.is_negative() {
                value += &z * self.lower[j].as_ref()?;
            }
        }
        Some(value)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Unbounded,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: Rational,
    pub assignment: Vec<Rational>,
    /// One multiplier per constraint; empty unless optimal.
    pub dual: Vec<Rational>,
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// How an original variable maps onto nonnegative tableau columns.
enum VarMap {
    /// `x = lo + x'`
    Shift(usize, Rational),
    /// `x = hi − x'`
    Reflect(usize, Rational),
    /// `x = x⁺ − x⁻`
    Split(usize, usize),
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    reduced: Vec<Rational>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (v, pv) in self.rows[i].iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        if !self.reduced[c].is_zero() {
            let f = self.reduced[c].clone();
            for (v, pv) in self.reduced.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    fn price(&mut self, cost: &[Rational]) {
        self.reduced = cost.to_vec();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if cost[b].is_zero() {
                continue;
            }
            for (d, a) in self.reduced.iter_mut().zip(row) {
                if !a.is_zero() {
                    *d -= &cost[b] * a;
                }
            }
        }
    }

    /// Bland's rule iterations. Returns `false` if unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.reduced[j].is_positive()) else { return true };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

/// Solves `lp` exactly.
pub fn simplex_solve(lp: &LinearProgram) -> Result<LpSolution> {
    lp.validate()?;
    let n = lp.num_vars();

    // Variable substitution onto nonnegative columns.
    let mut maps = Vec::with_capacity(n);
    let mut ncols = 0;
    let mut bound_rows: Vec<(usize, Rational)> = Vec::new();
    for j in 0..n {
        match (&lp.lower[j], &lp.upper[j]) {
            (Some(lo), hi) => {
                if let Some(hi) = hi {
                    bound_rows.push((ncols, hi - lo));
                }
                maps.push(VarMap::Shift(ncols, lo.clone()));
                ncols += 1;
            }
            (None, Some(hi)) => {
                maps.push(VarMap::Reflect(ncols, hi.clone()));
                ncols += 1;
            }
            (None, None) => {
                maps.push(VarMap::Split(ncols, ncols + 1));
                ncols += 2;
            }
        }
    }
    let structural = ncols;

    let mut cost = vec![Rational::zero(); structural];
    for (j, m) in maps.iter().enumerate() {
        let c = &lp.objective[j];
        match m {
            VarMap::Shift(k, _) => cost[*k] = c.clone(),
            VarMap::Reflect(k, _) => cost[*k] = -c,
            VarMap::Split(a, b) => {
                cost[*a] = c.clone();
                cost[*b] = -c;
            }
        }
    }

    // Rows over structural columns.
    let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = Vec::new();
    for con in &lp.constraints {
        let mut coeffs = vec![Rational::zero(); structural];
        let mut rhs = con.rhs.clone();
        for (j, m) in maps.iter().enumerate() {
            let a = &con.coeffs[j];
            if a.is_zero() {
                continue;
            }
            match m {
                VarMap::Shift(k, lo) => {
                    coeffs[*k] = a.clone();
                    rhs -= a * lo;
                }
                VarMap::Reflect(k, hi) => {
                    coeffs[*k] = -a;
                    rhs -= a * hi;
                }
                VarMap::Split(p, q) => {
                    coeffs[*p] = a.clone();
                    coeffs[*q] = -a;
                }
            }
        }
        rows.push((coeffs, con.relation, rhs));
    }
    for (k, cap) in &bound_rows {
        let mut coeffs = vec![Rational::zero(); structural];
        coeffs[*k] = Rational::one();
        rows.push((coeffs, Relation::Le, cap.clone()));
    }

    let m = rows.len();
    let nslack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let total = structural + nslack + m;
    let art0 = structural + nslack;
    let mut tab = Tableau {
        rows: Vec::with_capacity(m),
        rhs: Vec::with_capacity(m),
        basis: (art0..total).collect(),
        reduced: Vec::new(),
    };
    let mut signs = Vec::with_capacity(m);
    let mut slack = structural;
    for (i, (coeffs, rel, rhs)) in rows.into_iter().enumerate() {
        let mut row = coeffs;
        row.resize(total, Rational::zero());
        match rel {
            Relation::Le => {
                row[slack] = Rational::one();
                slack += 1;
            }
            Relation::Ge => {
                row[slack] = -Rational::one();
                slack += 1;
            }
            Relation::Eq => {}
        }
        let mut rhs = rhs;
        let flip = rhs.is_negative();
        if flip {
            row.iter_mut().for_each(|v| *v = -&*v);
            rhs = -rhs;
        }
        signs.push(if flip { -Rational::one() } else { Rational::one() });
        row[art0 + i] = Rational::one();
        tab.rows.push(row);
        tab.rhs.push(rhs);
    }

    // Phase 1: maximize −Σ artificials.
    let mut phase1 = vec![Rational::zero(); total];
    for c in phase1.iter_mut().skip(art0) {
        *c = -Rational::one();
    }
    tab.price(&phase1);
    tab.optimize(art0);
    let infeasibility: Rational = (0..m).filter(|&i| tab.basis[i] >= art0).map(|i| tab.rhs[i].clone()).sum();
    if infeasibility.is_positive() {
        return Ok(LpSolution {
            status: LpStatus::Infeasible,
            value: Rational::zero(),
            assignment: Vec::new(),
            dual: Vec::new(),
        });
    }
    for i in 0..m {
        if tab.basis[i] >= art0 {
            if let Some(c) = (0..art0).find(|&j| !tab.rows[i][j].is_zero()) {
                tab.pivot(i, c);
            }
        }
    }

    // Phase 2.
    let mut phase2 = cost;
    phase2.resize(total, Rational::zero());
    tab.price(&phase2);
    let bounded = tab.optimize(art0);

    let mut colval = vec![Rational::zero(); structural];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < structural {
            colval[b] = tab.rhs[i].clone();
        }
    }
    let assignment: Vec<Rational> = maps
        .iter()
        .map(|m| match m {
            VarMap::Shift(k, lo) => lo + &colval[*k],
            VarMap::Reflect(k, hi) => hi - &colval[*k],
            VarMap::Split(a, b) => &colval[*a] - &colval[*b],
        })
        .collect();
    if !bounded {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            value: lp.objective_value(&assignment),
            assignment,
            dual: Vec::new(),
        });
    }
    let dual = (0..lp.constraints.len())
        .map(|i| {
            let y: Rational = (0..m)
                .filter(|&k| !phase2[tab.basis[k]].is_zero())
                .map(|k| &phase2[tab.basis[k]] * &tab.rows[k][art0 + i])
                .sum();
            y * &signs[i]
        })
        .collect();
    Ok(LpSolution { status: LpStatus::Optimal, value: lp.objective_value(&assignment), assignment, dual })
}

/// Re-checks an optimal solution from scratch: exact primal feasibility, the
/// reported value, and (when a dual is attached) dual feasibility with equal
/// objective.
pub fn check_solution(lp: &LinearProgram, sol: &LpSolution) -> Result<bool> {
    lp.validate()?;
    if sol.status != LpStatus::Optimal {
        return Ok(false);
    }
    if sol.assignment.len() != lp.num_vars() {
        return Err(Error::Dimension(format!(
            "assignment has {} entries for {} variables",
            sol.assignment.len(),
            lp.num_vars()
        )));
    }
    if !sol.dual.is_empty() && sol.dual.len() != lp.constraints.len() {
        return Err(Error::Dimension(format!(
            "dual has {} entries for {} constraints",
            sol.dual.len(),
            lp.constraints.len()
        )));
    }
    if !lp.is_feasible(&sol.assignment) || lp.objective_value(&sol.assignment) != sol.value {
        return Ok(false);
    }
    if sol.dual.is_empty() {
        return Ok(true);
    }
    Ok(lp.dual_value(&sol.dual).as_ref() == Some(&sol.value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational(" -7 ").unwrap(), int(-7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&int(8)), "8/1");
        assert_eq!(format_rational(&rat(-6, 4)), "-3/2");
        assert_eq!(lcm_of_denominators(&[rat(1, 2), rat(1, 3), int(4)]), BigInt::from(6));
    }

    #[test]
    fn single_bound() {
        let lp = LinearProgram::maximize(vec![int(1)]).subject_to(vec![int(1)], Relation::Le, rat(3, 2));
        let s = simplex_solve(&lp).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.value, rat(3, 2));
        assert!(check_solution(&lp, &s).unwrap());
    }

    #[test]
    fn box_with_cut() {
        let lp = LinearProgram::maximize(vec![int(1), int(1)])
            .subject_to(vec![int(1), int(0)], Relation::Le, int(1))
            .subject_to(vec![int(0), int(1)], Relation::Le, int(1))
            .subject_to(vec![int(1), int(1)], Relation::Le, rat(3, 2));
        let s = simplex_solve(&lp).unwrap();
        assert_eq!(s.value, rat(3, 2));
        assert!(check_solution(&lp, &s).unwrap());
    }

    #[test]
    fn statuses() {
        let unb = LinearProgram::maximize(vec![int(1)]).nonnegative();
        assert_eq!(simplex_solve(&unb).unwrap().status, LpStatus::Unbounded);
        let inf = LinearProgram::maximize(vec![int(1)])
            .subject_to(vec![int(1)], Relation::Ge, int(2))
            .subject_to(vec![int(1)], Relation::Le, int(1));
        let s = simplex_solve(&inf).unwrap();
        assert_eq!(s.status, LpStatus::Infeasible);
        assert!(!check_solution(&inf, &s).unwrap());
        let mut crossed = LinearProgram::maximize(vec![int(1)]);
        crossed.set_bounds(0, Some(int(2)), Some(int(1)));
        assert_eq!(simplex_solve(&crossed).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn bounds_equalities_and_constant() {
        // max 2x − y + 5 s.t. x + y = 4, x ≤ 3 (bound), y ≥ −1 (bound)
        let mut lp = LinearProgram::maximize(vec![int(2), int(-1)])
            .with_constant(int(5))
            .subject_to(vec![int(1), int(1)], Relation::Eq, int(4));
        lp.set_bounds(0, None, Some(int(3)));
        lp.set_bounds(1, Some(int(-1)), None);
        let s = simplex_solve(&lp).unwrap();
        assert_eq!(s.value, int(10));
        assert_eq!(s.assignment, vec![int(3), int(1)]);
        assert!(check_solution(&lp, &s).unwrap());
    }

    #[test]
    fn exact_check_catches_tiny_violation() {
        let lp = LinearProgram::maximize(vec![int(1)]).subject_to(vec![int(1)], Relation::Le, int(1));
        let ok = LpSolution { status: LpStatus::Optimal, value: int(1), assignment: vec![int(1)], dual: vec![int(1)] };
        assert!(check_solution(&lp, &ok).unwrap());
        let bad_x = int(1) + rat(1, 1_000_000_000);
        let bad = LpSolution { value: bad_x.clone(), assignment: vec![bad_x], ..ok.clone() };
        assert!(!check_solution(&lp, &bad).unwrap());
        let wrong_dual = LpSolution { dual: vec![int(2)], ..ok.clone() };
        assert!(!check_solution(&lp, &wrong_dual).unwrap());
        let short = LpSolution { assignment: vec![], ..ok };
        assert!(check_solution(&lp, &short).is_err());
    }

    #[test]
    fn degenerate_problem_terminates() {
        // A classic cycling example for Dantzig's rule (Beale); Bland's rule terminates.
        let lp = LinearProgram::maximize(vec![rat(3, 4), int(-150), rat(1, 50), int(-6)])
            .nonnegative()
            .subject_to(vec![rat(1, 4), int(-60), rat(-1, 25), int(9)], Relation::Le, int(0))
            .subject_to(vec![rat(1, 2), int(-90), rat(-1, 50), int(3)], Relation::Le, int(0))
            .subject_to(vec![int(0), int(0), int(1), int(0)], Relation::Le, int(1));
        let s = simplex_solve(&lp).unwrap();
        assert_eq!(s.value, rat(1, 20));
        assert!(check_solution(&lp, &s).unwrap());
    }

    fn arb_lp() -> impl Strategy<Value = LinearProgram> {
        (1usize..4, 1usize..5).prop_flat_map(|(n, m)| {
            (
                proptest::collection::vec(-3i64..4, n),
                proptest::collection::vec((proptest::collection::vec(-3i64..4, n), 0u8..3, -4i64..6), m),
            )
                .prop_map(move |(c, rows)| {
                    let mut lp = LinearProgram::maximize(c.into_iter().map(int).collect());
                    for (a, rel, b) in rows {
                        let rel = [Relation::Le, Relation::Ge, Relation::Eq][rel as usize];
                        lp.add_constraint(a.into_iter().map(int).collect(), rel, int(b));
                    }
                    // keep the problem bounded
                    for j in 0..n {
                        lp.set_bounds(j, Some(int(-5)), Some(int(5)));
                    }
                    lp
                })
        })
    }

    proptest! {
        #[test]
        fn strong_duality_and_permutation(lp in arb_lp(), rot in 0usize..5) {
            let s = simplex_solve(&lp).unwrap();
            prop_assert_ne!(s.status, LpStatus::Unbounded);
            if s.status == LpStatus::Optimal {
                prop_assert!(check_solution(&lp, &s).unwrap());
                prop_assert_eq!(lp.dual_value(&s.dual), Some(s.value.clone()));
            }
            let mut permuted = lp.clone();
            let k = rot % permuted.constraints.len();
            permuted.constraints.rotate_left(k);
            let t = simplex_solve(&permuted).unwrap();
            prop_assert_eq!(t.status, s.status);
            prop_assert_eq!(t.value, s.value);
        }
    }
}
