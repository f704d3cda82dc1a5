//! Two-phase dense simplex for the max-min-coefficient program
//!
//! ```text
//!     maximize t   subject to   A λ = b,   λ_j >= t  for all j
//! ```
//!
//! restricted to the case where `A λ = b, λ >= 0` is feasible (then the optimum
//! is `>= 0`). The substitution `λ = μ + t·1` with `μ, t >= 0` turns it into a
//! standard-form program with one extra column `A·1`. Phase 1 minimizes the sum
//! of artificials; when that optimum is positive, the phase-1 duals are a Farkas
//! certificate `y` with `yᵀA <= 0 < yᵀb`. Bland's rule is used in both phases so
//! the method terminates in exact arithmetic.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<T> {
    Optimal {
        /// Optimal value `t*`.
        t: T,
        /// An optimizer `λ` with `A λ = b` and `min λ = t*`.
        lambda: Vec<T>,
    },
    /// `A λ = b, λ >= 0` has no solution. `farkas` satisfies
    /// `farkasᵀ A_j <= 0` for every column and `farkasᵀ b > 0`.
    Infeasible { farkas: Vec<T> },
}

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    /// Reduced costs; the last entry is minus the objective value.
    obj: Vec<T>,
    basis: Vec<usize>,
    width: usize,
}

impl<T: Scalar> Tableau<T> {
    fn pivot(&mut self, r: usize, c: usize) {
        let pv = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v = v.clone() / pv.clone();
        }
        self.rows[r][c] = T::one();
        let pivot_row = self.rows[r].clone();
        let eliminate = |target: &mut Vec<T>| {
            let factor = target[c].clone();
            if factor.is_zero() {
                return;
            }
            for (t, p) in target.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *t = t.clone() - factor.clone() * p.clone();
                }
            }
            target[c] = T::zero();
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.basis[r] = c;
    }

    /// Runs Bland's rule over columns `< allowed`. Returns `Err` on unboundedness.
    fn optimize(&mut self, allowed: usize) -> Result<()> {
        loop {
            let Some(entering) = (0..allowed).find(|&j| self.obj[j].is_strictly_negative()) else {
                return Ok(());
            };
            let mut leaving: Option<(usize, T)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = &row[entering];
                if !a.is_strictly_positive() {
                    continue;
                }
                let ratio = row[self.width].clone() / a.clone();
                leaving = match leaving {
                    None => Some((i, ratio)),
                    Some((best, best_ratio)) => {
                        let diff = ratio.clone() - best_ratio.clone();
                        let better = diff.is_strictly_negative()
                            || (diff.is_negligible() && self.basis[i] < self.basis[best]);
                        if better {
                            Some((i, ratio))
                        } else {
                            Some((best, best_ratio))
                        }
                    }
                };
            }
            let Some((r, _)) = leaving else {
                return Err(Error::UnboundedObjective);
            };
            self.pivot(r, entering);
        }
    }

    fn set_objective(&mut self, costs: &[T]) {
        self.obj = costs.to_vec();
        self.obj.push(T::zero());
        for i in 0..self.rows.len() {
            let k = self.basis[i];
            let ck = self.obj[k].clone();
            if ck.is_zero() {
                continue;
            }
            for j in 0..=self.width {
                let delta = ck.clone() * self.rows[i][j].clone();
                self.obj[j] = self.obj[j].clone() - delta;
            }
        }
    }
}

/// Solves `max t s.t. A λ = b, λ >= t·1`, reporting infeasibility of
/// `A λ = b, λ >= 0` with a Farkas vector.
pub fn lp_max_min_coefficient<T: Scalar>(a: &Matrix<T>, b: &[T]) -> Result<LpOutcome<T>> {
    let m = a.rows();
    let n = a.cols();
    if b.len() != m {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {}, matrix has {m} rows",
            b.len()
        )));
    }

    // columns: μ_0..μ_{n-1}, t, artificial_0..artificial_{m-1}
    let t_col = n;
    let art = n + 1;
    let width = n + 1 + m;
    let mut flips = vec![false; m];
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![T::zero(); width + 1];
        let mut row_sum = T::zero();
        for j in 0..n {
            row[j] = a[(i, j)].clone();
            row_sum = row_sum + a[(i, j)].clone();
        }
        row[t_col] = row_sum;
        row[width] = b[i].clone();
        if b[i].is_negative() {
            flips[i] = true;
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        row[art + i] = T::one();
        rows.push(row);
    }
    let mut tab = Tableau {
        rows,
        obj: Vec::new(),
        basis: (art..width).collect(),
        width,
    };

    let mut phase1_cost = vec![T::zero(); width];
    for c in phase1_cost.iter_mut().skip(art) {
        *c = T::one();
    }
    tab.set_objective(&phase1_cost);
    tab.optimize(width)
        .expect("phase 1 is bounded below by zero");

    let infeasibility = -tab.obj[width].clone();
    if infeasibility.is_strictly_positive() {
        // y_k = c_k - r_k for the artificial columns, which started as the identity
        let farkas = (0..m)
            .map(|i| {
                let y = T::one() - tab.obj[art + i].clone();
                if flips[i] {
                    -y
                } else {
                    y
                }
            })
            .collect();
        return Ok(LpOutcome::Infeasible { farkas });
    }

    // drive zero-valued artificials out of the basis; drop redundant rows
    let mut i = 0;
    while i < tab.rows.len() {
        if tab.basis[i] >= art {
            match (0..art).find(|&j| !tab.rows[i][j].is_negligible()) {
                Some(j) => tab.pivot(i, j),
                None => {
                    tab.rows.remove(i);
                    tab.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut phase2_cost = vec![T::zero(); width];
    phase2_cost[t_col] = -T::one();
    tab.set_objective(&phase2_cost);
    tab.optimize(art)?;

    let mut values = vec![T::zero(); art];
    for (row, &k) in tab.rows.iter().zip(&tab.basis) {
        if k < art {
            values[k] = row[width].clone();
        }
    }
    let t = values[t_col].clone();
    let lambda = values[..n]
        .iter()
        .map(|mu| mu.clone() + t.clone())
        .collect();
    Ok(LpOutcome::Optimal { t, lambda })
}
