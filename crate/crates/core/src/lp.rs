//! Dense two-phase simplex over exact rationals.
//!
//! Solves `min c.x` subject to `A x = b`, `x >= 0`. Bland's rule keeps it
//! from cycling; every pivot is exact so there is no tolerance anywhere.

use num_traits::{Signed, Zero};

use crate::rational::Q;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Q>, value: Q },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    /// Reduced costs, last entry holds minus the objective value.
    obj: Vec<Q>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Q {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v /= &p;
            }
        }
        let pivot_row = self.rows[r].clone();
        let nz: Vec<usize> = (0..=self.width).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for &j in &nz {
                row[j] -= &f * &pivot_row[j];
            }
        }
        if !self.obj[col].is_zero() {
            let f = self.obj[col].clone();
            for &j in &nz {
                self.obj[j] -= &f * &pivot_row[j];
            }
        }
        self.basis[r] = col;
    }

    /// Runs Bland's rule over the columns `allowed`. Returns false if unbounded.
    fn optimize(&mut self, allowed: &[bool]) -> bool {
        loop {
            let Some(col) = (0..self.width).find(|&j| allowed[j] && self.obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        if ratio < br || (ratio == br && self.basis[i] < self.basis[bi]) {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, col),
            }
        }
    }
}

/// Solves `min c.x` s.t. `a x = b`, `x >= 0`.
pub fn solve(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> LpOutcome {
    let n = c.len();
    let Some(mut t) = phase_one(a, b, n) else {
        return LpOutcome::Infeasible;
    };
    // phase two on the original columns
    let mut obj = vec![Q::zero(); t.width + 1];
    obj[..n].clone_from_slice(c);
    for (i, &bv) in t.basis.iter().enumerate() {
        if obj[bv].is_zero() {
            continue;
        }
        let f = obj[bv].clone();
        for (o, a) in obj.iter_mut().zip(&t.rows[i]) {
            if !a.is_zero() {
                *o -= &f * a;
            }
        }
    }
    t.obj = obj;
    let allowed: Vec<bool> = (0..t.width).map(|j| j < n).collect();
    if !t.optimize(&allowed) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bv) in t.basis.iter().enumerate() {
        x[bv] = t.rhs(i).clone();
    }
    let value = -t.obj[t.width].clone();
    LpOutcome::Optimal { x, value }
}

/// A feasible point of `a x = b`, `x >= 0`, if there is one.
pub fn feasible(a: &[Vec<Q>], b: &[Q], n: usize) -> Option<Vec<Q>> {
    let t = phase_one(a, b, n)?;
    let mut x = vec![Q::zero(); n];
    for (i, &bv) in t.basis.iter().enumerate() {
        x[bv] = t.rhs(i).clone();
    }
    Some(x)
}

/// Finds a basic feasible solution using artificial variables, then drives
/// any remaining artificials out of the basis (dropping redundant rows).
fn phase_one(a: &[Vec<Q>], b: &[Q], n: usize) -> Option<Tableau> {
    let m = a.len();
    let width = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        assert_eq!(row.len(), n, "constraint row has wrong width");
        let flip = bi.is_negative();
        let mut r: Vec<Q> = row.iter().map(|v| if flip { -v } else { v.clone() }).collect();
        r.extend((0..m).map(|k| if k == i { Q::from_integer(1.into()) } else { Q::zero() }));
        r.push(if flip { -bi } else { bi.clone() });
        rows.push(r);
    }
    let mut obj = vec![Q::zero(); width + 1];
    for r in &rows {
        for j in 0..n {
            obj[j] -= &r[j];
        }
        obj[width] -= &r[width];
    }
    let mut t = Tableau {
        rows,
        basis: (n..width).collect(),
        obj,
        width,
    };
    let allowed = vec![true; width];
    t.optimize(&allowed);
    if !t.obj[width].is_zero() {
        return None;
    }
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            if let Some(col) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, col);
            } else {
                t.rows.remove(i);
                t.basis.remove(i);
                continue;
            }
        }
        i += 1;
    }
    for r in t.rows.iter_mut() {
        for v in r[n..width].iter_mut() {
            *v = Q::zero();
        }
    }
    Some(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    fn qs(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn small_optimum() {
        // min -x - y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
        let a = vec![qs(&[1, 2, 1, 0]), qs(&[3, 1, 0, 1])];
        let out = solve(&a, &qs(&[4, 6]), &qs(&[-1, -1, 0, 0]));
        match out {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, frac(-14, 5));
                assert_eq!(x[0], frac(8, 5));
                assert_eq!(x[1], frac(6, 5));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = vec![qs(&[1, 1])];
        assert_eq!(solve(&a, &qs(&[-1]), &qs(&[1, 1])), LpOutcome::Infeasible);
        let a = vec![qs(&[1, -1])];
        assert_eq!(solve(&a, &qs(&[1]), &qs(&[0, -1])), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows() {
        let a = vec![qs(&[1, 1, 0]), qs(&[2, 2, 0]), qs(&[0, 1, 1])];
        match solve(&a, &qs(&[2, 4, 3]), &qs(&[1, 0, 0])) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(0)),
            other => panic!("{other:?}"),
        }
        assert!(feasible(&a, &qs(&[2, 5, 3]), 3).is_none());
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example; cycles under the textbook largest-coefficient rule.
        let a = vec![
            vec![frac(1, 4), q(-8), q(-1), q(9), q(1), q(0), q(0)],
            vec![frac(1, 2), q(-12), frac(-1, 2), q(3), q(0), q(1), q(0)],
            vec![q(0), q(0), q(1), q(0), q(0), q(0), q(1)],
        ];
        let c = vec![frac(-3, 4), q(20), frac(-1, 2), q(6), q(0), q(0), q(0)];
        match solve(&a, &qs(&[0, 0, 1]), &c) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, frac(-5, 4)),
            other => panic!("{other:?}"),
        }
    }
}
