//! Dense exact-rational simplex: phase-1 feasibility for equality systems with
//! nonnegativity, and maximization over inequality systems from a slack basis.
//! Bland's rule guarantees termination; a largest-coefficient rule (with a
//! Bland fallback against cycling) exists for cross-checks.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotRule {
    Bland,
    LargestCoefficient,
}

/// Farkas certificate of infeasibility for A x = b, x >= 0:
/// y with y^T A <= 0 componentwise and y^T b > 0, verified before return.
#[derive(Debug, Clone)]
pub struct Farkas {
    pub y: Vec<Rat>,
}

#[derive(Debug, Clone)]
pub enum LpOutcome {
    Feasible(Vec<Rat>),
    Infeasible(Farkas),
}

struct Tableau {
    rows: usize,
    cols: usize,      // structural + slack/artificial columns
    t: Vec<Vec<Rat>>, // rows x (cols + 1), last entry rhs
    obj: Vec<Rat>,    // cols + 1: reduced costs and negated objective value
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.t[row][col].clone();
        for x in self.t[row].iter_mut() {
            if !x.is_zero() {
                *x /= &inv;
            }
        }
        for i in 0..self.rows {
            if i == row || self.t[i][col].is_zero() {
                continue;
            }
            let factor = self.t[i][col].clone();
            for j in 0..=self.cols {
                if !self.t[row][j].is_zero() {
                    let delta = &factor * &self.t[row][j];
                    self.t[i][j] -= delta;
                }
            }
        }
        if !self.obj[col].is_zero() {
            let factor = self.obj[col].clone();
            for j in 0..=self.cols {
                if !self.t[row][j].is_zero() {
                    let delta = &factor * &self.t[row][j];
                    self.obj[j] -= delta;
                }
            }
        }
        self.basis[row] = col;
    }

    fn entering(&self, rule: PivotRule) -> Option<usize> {
        match rule {
            PivotRule::Bland => (0..self.cols).find(|&j| self.obj[j].is_negative()),
            PivotRule::LargestCoefficient => {
                let mut best: Option<usize> = None;
                for j in 0..self.cols {
                    if self.obj[j].is_negative() {
                        match best {
                            None => best = Some(j),
                            Some(b) => {
                                if self.obj[j] < self.obj[b] {
                                    best = Some(j);
                                }
                            }
                        }
                    }
                }
                best
            }
        }
    }

    fn leaving(&self, col: usize) -> Option<usize> {
        let mut best: Option<usize> = None;
        for i in 0..self.rows {
            if self.t[i][col].is_positive() {
                match best {
                    None => best = Some(i),
                    Some(b) => {
                        let ratio = &self.t[i][self.cols] / &self.t[i][col];
                        let best_ratio = &self.t[b][self.cols] / &self.t[b][col];
                        // Bland tie-break: least basis column
                        if ratio < best_ratio || (ratio == best_ratio && self.basis[i] < self.basis[b]) {
                            best = Some(i);
                        }
                    }
                }
            }
        }
        best
    }

    /// Minimize, starting from the current basic feasible tableau.
    fn optimize(&mut self, rule: PivotRule) -> Result<()> {
        let mut stall = 0usize;
        let stall_bound = 4 * (self.rows + self.cols) + 16;
        let mut active_rule = rule;
        let mut last_obj = self.obj[self.cols].clone();
        loop {
            let Some(col) = self.entering(active_rule) else { return Ok(()) };
            let Some(row) = self.leaving(col) else {
                return Err(Error::Infeasible("objective unbounded".to_string()));
            };
            self.pivot(row, col);
            if self.obj[self.cols] == last_obj {
                stall += 1;
                if stall > stall_bound {
                    active_rule = PivotRule::Bland; // anti-cycling fallback
                }
            } else {
                stall = 0;
                last_obj = self.obj[self.cols].clone();
            }
        }
    }
}

/// Feasibility of A x = b, x >= 0, by phase-1 simplex with artificials.
pub fn solve_equality_feasibility(a: &[Vec<Rat>], b: &[Rat], rule: PivotRule) -> Result<LpOutcome> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    if rows == 0 {
        return Ok(LpOutcome::Feasible(vec![Rat::zero(); cols]));
    }
    // sign-normalize so rhs >= 0, remembering the flips for the certificate
    let mut flips = vec![false; rows];
    let total = cols + rows;
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(rows);
    for i in 0..rows {
        let flip = b[i].is_negative();
        flips[i] = flip;
        let mut row: Vec<Rat> = a[i].iter().map(|x| if flip { -x.clone() } else { x.clone() }).collect();
        row.extend((0..rows).map(|k| if k == i { Rat::one() } else { Rat::zero() }));
        row.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    // phase-1 objective: minimize the artificial sum; canonicalize by
    // subtracting every constraint row from the cost row
    let mut obj = vec![Rat::zero(); total + 1];
    for slot in obj.iter_mut().take(total).skip(cols) {
        *slot = Rat::one();
    }
    for row in &t {
        for j in 0..=total {
            if !row[j].is_zero() {
                let delta = row[j].clone();
                obj[j] -= delta;
            }
        }
    }
    let basis: Vec<usize> = (cols..total).collect();
    let mut tab = Tableau { rows, cols: total, t, obj, basis };
    tab.optimize(rule)?;
    let optimum = -tab.obj[total].clone();
    if optimum.is_positive() {
        // Farkas: y_k = 1 - reduced cost of artificial k, flipped back
        let y: Vec<Rat> = (0..rows)
            .map(|k| {
                let v = Rat::one() - tab.obj[cols + k].clone();
                if flips[k] {
                    -v
                } else {
                    v
                }
            })
            .collect();
        let mut ytb = Rat::zero();
        for i in 0..rows {
            ytb += &y[i] * &b[i];
        }
        if !ytb.is_positive() {
            return Err(Error::Infeasible("infeasible, but the Farkas certificate failed its check".to_string()));
        }
        for j in 0..cols {
            let mut yta = Rat::zero();
            for i in 0..rows {
                if !a[i][j].is_zero() {
                    yta += &y[i] * &a[i][j];
                }
            }
            if yta.is_positive() {
                return Err(Error::Infeasible("infeasible, but the Farkas certificate failed its check".to_string()));
            }
        }
        return Ok(LpOutcome::Infeasible(Farkas { y }));
    }
    let mut x = vec![Rat::zero(); cols];
    for (i, &bcol) in tab.basis.iter().enumerate() {
        if bcol < cols {
            x[bcol] = tab.t[i][total].clone();
        }
    }
    // exact re-check
    for i in 0..rows {
        let mut acc = Rat::zero();
        for j in 0..cols {
            if !x[j].is_zero() && !a[i][j].is_zero() {
                acc += &a[i][j] * &x[j];
            }
        }
        if acc != b[i] {
            return Err(Error::Infeasible("phase-1 terminated with an inexact basic solution".to_string()));
        }
    }
    Ok(LpOutcome::Feasible(x))
}

/// Maximize c^T x subject to A x <= b (b >= 0), x >= 0, from the slack basis.
pub fn maximize_leq(c: &[Rat], a: &[Vec<Rat>], b: &[Rat], rule: PivotRule) -> Result<Vec<Rat>> {
    let rows = a.len();
    let cols = c.len();
    if b.iter().any(|x| x.is_negative()) {
        return Err(Error::Precondition("maximize_leq requires b >= 0".to_string()));
    }
    let total = cols + rows;
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(rows);
    for i in 0..rows {
        let mut row = a[i].clone();
        row.extend((0..rows).map(|k| if k == i { Rat::one() } else { Rat::zero() }));
        row.push(b[i].clone());
        t.push(row);
    }
    // minimize -c^T x
    let mut obj = vec![Rat::zero(); total + 1];
    for j in 0..cols {
        obj[j] = -c[j].clone();
    }
    let basis: Vec<usize> = (cols..total).collect();
    let mut tab = Tableau { rows, cols: total, t, obj, basis };
    tab.optimize(rule)?;
    let mut x = vec![Rat::zero(); cols];
    for (i, &bcol) in tab.basis.iter().enumerate() {
        if bcol < cols {
            x[bcol] = tab.t[i][total].clone();
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn feasible_system() {
        // x + y = 2, x - y = 0 -> x = y = 1
        let a = vec![vec![rat(1, 1), rat(1, 1)], vec![rat(1, 1), rat(-1, 1)]];
        let b = vec![rat(2, 1), rat(0, 1)];
        match solve_equality_feasibility(&a, &b, PivotRule::Bland).unwrap() {
            LpOutcome::Feasible(x) => assert_eq!(x, vec![rat(1, 1), rat(1, 1)]),
            _ => panic!("feasible"),
        }
    }

    #[test]
    fn infeasible_with_certificate() {
        // x = 1 and x = 2 cannot both hold
        let a = vec![vec![rat(1, 1)], vec![rat(1, 1)]];
        let b = vec![rat(1, 1), rat(2, 1)];
        match solve_equality_feasibility(&a, &b, PivotRule::Bland).unwrap() {
            LpOutcome::Infeasible(f) => {
                let ytb = &f.y[0] * &b[0] + &f.y[1] * &b[1];
                let yta = &f.y[0] + &f.y[1];
                assert!(ytb.is_positive());
                assert!(!yta.is_positive());
            }
            _ => panic!("infeasible"),
        }
    }

    #[test]
    fn negative_rhs_is_infeasible() {
        // x + y = -1 with x, y >= 0
        let a = vec![vec![rat(1, 1), rat(1, 1)]];
        let b = vec![rat(-1, 1)];
        assert!(matches!(
            solve_equality_feasibility(&a, &b, PivotRule::Bland).unwrap(),
            LpOutcome::Infeasible(_)
        ));
    }

    #[test]
    fn pivot_rules_agree_on_feasibility() {
        let a = vec![
            vec![rat(1, 1), rat(2, 1), rat(0, 1), rat(1, 1)],
            vec![rat(0, 1), rat(1, 1), rat(1, 1), rat(3, 1)],
        ];
        let b = vec![rat(3, 1), rat(2, 1)];
        assert!(matches!(
            solve_equality_feasibility(&a, &b, PivotRule::Bland).unwrap(),
            LpOutcome::Feasible(_)
        ));
        assert!(matches!(
            solve_equality_feasibility(&a, &b, PivotRule::LargestCoefficient).unwrap(),
            LpOutcome::Feasible(_)
        ));
    }

    #[test]
    fn maximization_small() {
        // max x + y st x <= 1, y <= 2
        let c = vec![rat(1, 1), rat(1, 1)];
        let a = vec![vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(1, 1)]];
        let b = vec![rat(1, 1), rat(2, 1)];
        let x = maximize_leq(&c, &a, &b, PivotRule::Bland).unwrap();
        assert_eq!(x, vec![rat(1, 1), rat(2, 1)]);
    }
}
