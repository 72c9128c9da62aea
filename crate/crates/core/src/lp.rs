//! Exact rational linear programming, reduced to the one question the crate
//! needs: feasibility of `A x = b, x >= 0`. Phase-1 simplex with Bland's
//! rule on exact rationals, so termination is guaranteed and no tolerance
//! ever enters a geometric decision.

use num_traits::{One, Signed, Zero};

use crate::rational::Rat;

/// Returns a feasible `x >= 0` with `A x = b`, or `None`.
pub fn solve_eq_nonneg(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let m = a.len();
    assert_eq!(m, b.len(), "row count mismatch");
    let n = a.first().map_or(0, Vec::len);
    if m == 0 {
        return Some(vec![]);
    }
    // tableau: n structural columns, m artificial columns, rhs
    let cols = n + m + 1;
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for i in 0..m {
        assert_eq!(a[i].len(), n, "ragged constraint matrix");
        let flip = b[i].is_negative();
        let mut row = Vec::with_capacity(cols);
        for j in 0..n {
            row.push(if flip { -&a[i][j] } else { a[i][j].clone() });
        }
        for k in 0..m {
            row.push(if k == i { Rat::one() } else { Rat::zero() });
        }
        row.push(if flip { -&b[i] } else { b[i].clone() });
        t.push(row);
    }
    // objective: minimize the sum of artificials, priced out against the
    // artificial basis; entries hold z_j - c_j, zero on basic columns
    let mut obj = vec![Rat::zero(); cols];
    for row in &t {
        for (o, v) in obj.iter_mut().zip(row.iter()) {
            *o += v;
        }
    }
    for j in n..n + m {
        obj[j] = Rat::zero();
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        // Bland: entering column is the lowest index with positive price
        let entering = (0..n + m).find(|&j| obj[j].is_positive());
        let Some(entering) = entering else { break };
        // ratio test; Bland tie-break on the smallest basis variable
        let mut leaving: Option<(usize, Rat)> = None;
        for i in 0..m {
            if !t[i][entering].is_positive() {
                continue;
            }
            let ratio = &t[i][cols - 1] / &t[i][entering];
            let better = match &leaving {
                None => true,
                Some((li, lr)) => {
                    ratio < *lr || (ratio == *lr && basis[i] < basis[*li])
                }
            };
            if better {
                leaving = Some((i, ratio));
            }
        }
        let Some((pivot_row, _)) = leaving else {
            // unbounded phase-1 objective cannot happen; defensive break
            break;
        };
        let pivot = t[pivot_row][entering].clone();
        for v in t[pivot_row].iter_mut() {
            *v /= &pivot;
        }
        for i in 0..m {
            if i == pivot_row || t[i][entering].is_zero() {
                continue;
            }
            let factor = t[i][entering].clone();
            for j in 0..cols {
                let delta = &factor * &t[pivot_row][j];
                t[i][j] -= delta;
            }
        }
        if !obj[entering].is_zero() {
            let factor = obj[entering].clone();
            for j in 0..cols {
                let delta = &factor * &t[pivot_row][j];
                obj[j] -= delta;
            }
        }
        basis[pivot_row] = entering;
    }

    // feasible iff every artificial contributes zero
    let mut residual = Rat::zero();
    for i in 0..m {
        if basis[i] >= n {
            residual += &t[i][cols - 1];
        }
    }
    if !residual.is_zero() {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for i in 0..m {
        if basis[i] < n {
            x[basis[i]] = t[i][cols - 1].clone();
        }
    }
    Some(x)
}

/// Is `point` a nonnegative combination of `rays`?
pub fn in_conic_hull(rays: &[Vec<Rat>], point: &[Rat]) -> bool {
    if rays.is_empty() {
        return point.iter().all(Rat::is_zero);
    }
    let dim = point.len();
    let a: Vec<Vec<Rat>> = (0..dim)
        .map(|coord| rays.iter().map(|r| r[coord].clone()).collect())
        .collect();
    solve_eq_nonneg(&a, point).is_some()
}

/// Finds `w` with `w . r >= 1` for every row `r`, if one exists. The
/// functional is free-signed, so it is split into a difference of
/// nonnegative parts with one surplus variable per row.
pub fn strictly_positive_functional(rays: &[Vec<Rat>]) -> Option<Vec<Rat>> {
    let m = rays.len();
    if m == 0 {
        return None;
    }
    let dim = rays[0].len();
    let n = 2 * dim + m;
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for (i, r) in rays.iter().enumerate() {
        let mut row = Vec::with_capacity(n);
        for j in 0..dim {
            row.push(r[j].clone());
        }
        for j in 0..dim {
            row.push(-&r[j]);
        }
        for k in 0..m {
            row.push(if k == i { -Rat::one() } else { Rat::zero() });
        }
        a.push(row);
    }
    let b = vec![Rat::one(); m];
    let x = solve_eq_nonneg(&a, &b)?;
    Some((0..dim).map(|j| &x[j] - &x[dim + j]).collect())
}
