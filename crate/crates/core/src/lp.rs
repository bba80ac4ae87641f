//! Exact two-phase simplex over the rationals, Bland's rule throughout.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum LpOutcome {
    Optimal(Vec<Q>),
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Q {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..self.rows.len() {
            if i != r && !self.rows[i][c].is_zero() {
                let f = self.rows[i][c].clone();
                for j in 0..=self.width {
                    let d = &self.rows[r][j] * &f;
                    self.rows[i][j] -= d;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Minimizes `cost . x` over columns with `allowed[j]`.
    fn run(&mut self, cost: &[Q], allowed: &[bool]) -> bool {
        loop {
            let entering = (0..self.width).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let mut r = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    r -= &cost[b] * &self.rows[i][j];
                }
                r.is_negative()
            });
            let Some(j) = entering else { return true };

            let mut leave: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if a.is_positive() {
                    let ratio = self.rhs(i) / a;
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                Some((i, _)) => self.pivot(i, j),
                None => return false,
            }
        }
    }
}

/// Minimize `cost . x` subject to `a x = b`, `x >= 0`.
pub(crate) fn minimize(a: &[Vec<Q>], b: &[Q], cost: &[Q]) -> LpOutcome {
    let m = a.len();
    let n = cost.len();
    let width = n + m;
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row: Vec<Q> = a[i].iter().map(|x| if flip { -x } else { x.clone() }).collect();
        row.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
        row.push(if flip { -&b[i] } else { b[i].clone() });
        rows.push(row);
    }
    let mut t = Tableau { rows, basis: (n..n + m).collect(), width };

    let phase1: Vec<Q> = (0..width).map(|j| if j >= n { Q::one() } else { Q::zero() }).collect();
    t.run(&phase1, &vec![true; width]);
    if (0..m).any(|i| t.basis[i] >= n && !t.rhs(i).is_zero()) {
        return LpOutcome::Infeasible;
    }
    // Drive zero-valued artificials out of the basis where possible.
    for i in 0..m {
        if t.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t.rows[i][j].is_zero() && !t.basis.contains(&j)) {
                t.pivot(i, j);
            }
        }
    }

    let mut full_cost = cost.to_vec();
    full_cost.extend((0..m).map(|_| Q::zero()));
    let allowed: Vec<bool> = (0..width).map(|j| j < n).collect();
    if !t.run(&full_cost, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bcol) in t.basis.iter().enumerate() {
        if bcol < n {
            x[bcol] = t.rhs(i).clone();
        }
    }
    LpOutcome::Optimal(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> Q {
        Q::from_integer(BigInt::from(n))
    }

    #[test]
    fn small_program() {
        // min x + y  s.t.  x + 2y - s = 2,  x, y, s >= 0  -> y = 1.
        let a = vec![vec![q(1), q(2), q(-1)]];
        match minimize(&a, &[q(2)], &[q(1), q(1), q(0)]) {
            LpOutcome::Optimal(x) => assert_eq!(x, vec![q(0), q(1), q(0)]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_program() {
        // x - y = 1 and -x + y = 1.
        let a = vec![vec![q(1), q(-1)], vec![q(-1), q(1)]];
        assert_eq!(minimize(&a, &[q(1), q(1)], &[q(0), q(0)]), LpOutcome::Infeasible);
    }
}
