//! Exact feasibility LP: find a basic solution of `A x = b, x ≥ 0`.
//!
//! Phase one of the simplex method over big rationals. Every row gets an
//! artificial variable and the sum of artificials is minimized. The basis
//! found at the end gives a vertex of the feasible region; artificials left
//! in the basis at level zero do not change that.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PivotRule {
    /// Smallest-index entering and leaving variables.
    Bland,
    /// Most negative reduced cost; lexicographic ratio test on the rows of
    /// the basis inverse.
    Lexicographic,
}

/// `rows[i] · x = rhs[i]` for every row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualityLp {
    pub columns: usize,
    pub rows: Vec<Vec<BigRational>>,
    pub rhs: Vec<BigRational>,
}

impl EqualityLp {
    pub fn new(columns: usize) -> Self {
        EqualityLp {
            columns,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    /// Adds a row given as sparse `(column, coefficient)` pairs.
    pub fn add_row(&mut self, terms: &[(usize, BigRational)], rhs: BigRational) {
        let mut row = vec![BigRational::zero(); self.columns];
        for (c, a) in terms {
            row[*c] += a;
        }
        self.rows.push(row);
        self.rhs.push(rhs);
    }
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

struct Tableau {
    /// `m` rows of `width + 1` entries; the last entry is the right-hand side.
    t: Vec<Vec<BigRational>>,
    /// Reduced costs of the phase-one objective, plus its negated value last.
    cost: Vec<BigRational>,
    basis: Vec<usize>,
    width: usize,
    /// First artificial column; artificial `i` is column `art + i`.
    art: usize,
}

impl Tableau {
    fn new(lp: &EqualityLp) -> Self {
        let m = lp.rows.len();
        let art = lp.columns;
        let width = lp.columns + m;
        let mut t = Vec::with_capacity(m);
        for (i, (row, b)) in lp.rows.iter().zip(&lp.rhs).enumerate() {
            // Flip rows with negative right-hand side so the artificial basis is feasible.
            let sign = if b.is_negative() { -BigRational::one() } else { BigRational::one() };
            let mut r: Vec<BigRational> = row.iter().map(|a| a * &sign).collect();
            r.extend((0..m).map(|k| if k == i { BigRational::one() } else { BigRational::zero() }));
            r.push(b * &sign);
            t.push(r);
        }
        let mut cost = vec![BigRational::zero(); width + 1];
        for r in &t {
            for j in 0..art {
                cost[j] -= &r[j];
            }
            cost[width] -= &r[width];
        }
        Tableau {
            t,
            cost,
            basis: (art..width).collect(),
            width,
            art,
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.t[row][col].clone();
        for v in self.t[row].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.t[row].clone();
        for (i, r) in self.t.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (v, pv) in r.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        if !self.cost[col].is_zero() {
            let f = self.cost[col].clone();
            for (v, pv) in self.cost.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[row] = col;
    }

    fn entering(&self, rule: PivotRule) -> Option<usize> {
        let negative = (0..self.width).filter(|&j| self.cost[j].is_negative());
        match rule {
            PivotRule::Bland => negative.min(),
            PivotRule::Lexicographic => negative.fold(None, |best: Option<usize>, j| match best {
                Some(b) if self.cost[b] <= self.cost[j] => Some(b),
                _ => Some(j),
            }),
        }
    }

    fn leaving(&self, col: usize, rule: PivotRule) -> Option<usize> {
        let rhs = self.width;
        let candidates: Vec<usize> = (0..self.t.len())
            .filter(|&i| self.t[i][col].is_positive())
            .collect();
        let ratio = |i: usize| &self.t[i][rhs] / &self.t[i][col];
        let min = candidates.iter().map(|&i| ratio(i)).min()?;
        let mut tied: Vec<usize> = candidates.into_iter().filter(|&i| ratio(i) == min).collect();
        match rule {
            PivotRule::Bland => tied.into_iter().min_by_key(|&i| self.basis[i]),
            PivotRule::Lexicographic => {
                // Compare rows of the basis inverse (the artificial columns) scaled by the pivot entry.
                for k in self.art..self.width {
                    if tied.len() <= 1 {
                        break;
                    }
                    let m = tied.iter().map(|&i| &self.t[i][k] / &self.t[i][col]).min()?;
                    tied.retain(|&i| &self.t[i][k] / &self.t[i][col] == m);
                }
                tied.first().copied()
            }
        }
    }
}

/// A basic feasible solution, or `None` if the system has no solution with `x ≥ 0`.
pub fn basic_feasible_solution(lp: &EqualityLp, rule: PivotRule) -> Option<Vec<BigRational>> {
    let mut tab = Tableau::new(lp);
    while let Some(col) = tab.entering(rule) {
        let row = tab
            .leaving(col, rule)
            .expect("phase-one objective is bounded below by zero");
        tab.pivot(row, col);
    }
    // The last cost entry holds minus the objective value.
    if !tab.cost[tab.width].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); lp.columns];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < lp.columns {
            x[b] = tab.t[i][tab.width].clone();
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(lp: &EqualityLp, x: &[BigRational]) {
        assert!(x.iter().all(|v| !v.is_negative()));
        for (row, b) in lp.rows.iter().zip(&lp.rhs) {
            let lhs: BigRational = row.iter().zip(x).map(|(a, v)| a * v).sum();
            assert_eq!(&lhs, b);
        }
    }

    #[test]
    fn simple_system() {
        // x0 + x1 = 1, 2 x0 + s = 1.
        let mut lp = EqualityLp::new(3);
        lp.add_row(&[(0, int(1)), (1, int(1))], int(1));
        lp.add_row(&[(0, int(2)), (2, int(1))], int(1));
        for rule in [PivotRule::Bland, PivotRule::Lexicographic] {
            let x = basic_feasible_solution(&lp, rule).unwrap();
            check(&lp, &x);
        }
    }

    #[test]
    fn infeasible_system() {
        // x0 + x1 = 1 and x0 + x1 + s = 0/2 cannot both hold.
        let mut lp = EqualityLp::new(3);
        lp.add_row(&[(0, int(1)), (1, int(1))], int(1));
        lp.add_row(&[(0, int(2)), (1, int(2)), (2, int(1))], int(1));
        assert!(basic_feasible_solution(&lp, PivotRule::Bland).is_none());
        assert!(basic_feasible_solution(&lp, PivotRule::Lexicographic).is_none());
    }

    #[test]
    fn negative_right_hand_side() {
        // -x0 = -3.
        let mut lp = EqualityLp::new(1);
        lp.add_row(&[(0, int(-1))], int(-3));
        let x = basic_feasible_solution(&lp, PivotRule::Bland).unwrap();
        assert_eq!(x[0], int(3));
    }
}
