//! Exact rational linear programming, sized for desk-scale feasibility
//! queries: a dense two-phase simplex with Bland's rule.

use crate::linalg::{rat, Int, Rat};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { objective: Rat, point: Vec<Rat> },
    Infeasible,
    Unbounded,
}

/// Maximize `c . z` subject to `rows` over `z >= 0`.
pub fn simplex_maximize(c: &[Rat], rows: &[(Vec<Rat>, Rel, Rat)]) -> LpOutcome {
    let nvars = c.len();
    let m = rows.len();

    // Normalize rhs to be nonnegative.
    let mut norm: Vec<(Vec<Rat>, Rel, Rat)> = Vec::with_capacity(m);
    for (coeffs, rel, b) in rows {
        assert_eq!(coeffs.len(), nvars);
        if b.is_negative() {
            let flipped = match rel {
                Rel::Le => Rel::Ge,
                Rel::Ge => Rel::Le,
                Rel::Eq => Rel::Eq,
            };
            norm.push((coeffs.iter().map(|x| -x).collect(), flipped, -b));
        } else {
            norm.push((coeffs.clone(), *rel, b.clone()));
        }
    }

    // Column layout: structural | slack/surplus | artificial.
    let mut nslack = 0;
    for (_, rel, _) in &norm {
        if *rel != Rel::Eq {
            nslack += 1;
        }
    }
    let mut nart = 0;
    for (_, rel, _) in &norm {
        if *rel != Rel::Le {
            nart += 1;
        }
    }
    let ncols = nvars + nslack + nart;

    let mut tab: Vec<Vec<Rat>> = vec![vec![Rat::zero(); ncols + 1]; m];
    let mut basis: Vec<usize> = vec![usize::MAX; m];
    let mut art_cols: Vec<usize> = Vec::new();
    let mut si = 0;
    let mut ai = 0;
    for (i, (coeffs, rel, b)) in norm.iter().enumerate() {
        tab[i][..nvars].clone_from_slice(coeffs);
        tab[i][ncols] = b.clone();
        match rel {
            Rel::Le => {
                tab[i][nvars + si] = Rat::one();
                basis[i] = nvars + si;
                si += 1;
            }
            Rel::Ge => {
                tab[i][nvars + si] = -Rat::one();
                si += 1;
                tab[i][nvars + nslack + ai] = Rat::one();
                basis[i] = nvars + nslack + ai;
                art_cols.push(nvars + nslack + ai);
                ai += 1;
            }
            Rel::Eq => {
                tab[i][nvars + nslack + ai] = Rat::one();
                basis[i] = nvars + nslack + ai;
                art_cols.push(nvars + nslack + ai);
                ai += 1;
            }
        }
    }

    // Phase 1: maximize -(sum of artificials).
    if nart > 0 {
        let mut obj = vec![Rat::zero(); ncols];
        for &col in &art_cols {
            obj[col] = -Rat::one();
        }
        let opt = run(&mut tab, &mut basis, &obj, ncols);
        let value = match opt {
            Some(v) => v,
            None => return LpOutcome::Unbounded, // cannot happen: phase 1 is bounded
        };
        if !value.is_zero() {
            return LpOutcome::Infeasible;
        }
        // Pivot artificials out of the basis where possible; redundant rows
        // have no structural pivot and stay with a zero artificial.
        for i in 0..m {
            if art_cols.contains(&basis[i]) {
                if let Some(j) = (0..nvars + nslack).find(|&j| !tab[i][j].is_zero()) {
                    pivot(&mut tab, &mut basis, i, j, ncols);
                }
            }
        }
        // Freeze artificial columns at zero.
        for row in tab.iter_mut() {
            for &col in &art_cols {
                row[col] = Rat::zero();
            }
        }
    }

    // Phase 2.
    let mut obj = vec![Rat::zero(); ncols];
    obj[..nvars].clone_from_slice(c);
    for (i, &b) in basis.iter().enumerate() {
        if art_cols.contains(&b) && !tab[i][ncols].is_zero() {
            return LpOutcome::Infeasible;
        }
        let _ = i;
    }
    match run(&mut tab, &mut basis, &obj, ncols) {
        None => LpOutcome::Unbounded,
        Some(objective) => {
            let mut point = vec![Rat::zero(); nvars];
            for (i, &b) in basis.iter().enumerate() {
                if b < nvars {
                    point[b] = tab[i][ncols].clone();
                }
            }
            LpOutcome::Optimal { objective, point }
        }
    }
}

/// Simplex iterations with Bland's rule. Returns the objective value, or
/// `None` if unbounded. `obj` is the maximization objective per column.
fn run(tab: &mut [Vec<Rat>], basis: &mut [usize], obj: &[Rat], ncols: usize) -> Option<Rat> {
    let m = tab.len();
    loop {
        // Reduced costs: c_j - c_B . B^-1 A_j.
        let mut entering = None;
        for j in 0..ncols {
            if basis.contains(&j) {
                continue;
            }
            let mut red = obj[j].clone();
            for i in 0..m {
                if !tab[i][j].is_zero() && !obj[basis[i]].is_zero() {
                    red -= &obj[basis[i]] * &tab[i][j];
                }
            }
            if red.is_positive() {
                entering = Some(j);
                break; // Bland: smallest improving index
            }
        }
        let Some(j) = entering else {
            let mut value = Rat::zero();
            for i in 0..m {
                if !obj[basis[i]].is_zero() {
                    value += &obj[basis[i]] * &tab[i][ncols];
                }
            }
            return Some(value);
        };
        // Ratio test, ties broken by smallest basic variable index.
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if tab[i][j].is_positive() {
                let ratio = &tab[i][ncols] / &tab[i][j];
                match &leave {
                    None => leave = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < *lr || (ratio == *lr && basis[i] < basis[*li]) {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let (i, _) = leave?;
        pivot(tab, basis, i, j, ncols);
    }
}

fn pivot(tab: &mut [Vec<Rat>], basis: &mut [usize], row: usize, col: usize, ncols: usize) {
    let p = tab[row][col].clone();
    for j in 0..=ncols {
        tab[row][j] = &tab[row][j] / &p;
    }
    for i in 0..tab.len() {
        if i != row && !tab[i][col].is_zero() {
            let f = tab[i][col].clone();
            for j in 0..=ncols {
                let v = &tab[i][j] - &f * &tab[row][j];
                tab[i][j] = v;
            }
        }
    }
    basis[row] = col;
}

/// Maximize `t` subject to `row . x >= t` for every strict row,
/// `row . x = 0` for every equality row, and `-1 <= x_j <= 1`.
///
/// Always feasible (x = 0, t <= 0 works), so an optimum exists; the open
/// system `row . x > 0` has a solution iff the optimum is positive.
pub fn max_min_slack(n: usize, strict: &[Vec<Int>], eq: &[Vec<Int>]) -> (Rat, Vec<Rat>) {
    // Substitute y = x + 1 in [0,2]^n and u = t + 1 in [0,2].
    let mut rows: Vec<(Vec<Rat>, Rel, Rat)> = Vec::new();
    let to_rat = |r: &[Int]| -> Vec<Rat> {
        r.iter().map(|x| Rat::from_integer(x.clone())).collect()
    };
    for r in strict {
        let mut coeffs = to_rat(r);
        let rhs: Rat = coeffs.iter().cloned().sum::<Rat>() - Rat::one();
        coeffs.push(-Rat::one()); // -u
        rows.push((coeffs, Rel::Ge, rhs));
    }
    for r in eq {
        let mut coeffs = to_rat(r);
        let rhs: Rat = coeffs.iter().cloned().sum();
        coeffs.push(Rat::zero());
        rows.push((coeffs, Rel::Eq, rhs));
    }
    for j in 0..=n {
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[j] = Rat::one();
        rows.push((coeffs, Rel::Le, rat(2)));
    }
    let mut c = vec![Rat::zero(); n + 1];
    c[n] = Rat::one();
    match simplex_maximize(&c, &rows) {
        LpOutcome::Optimal { objective, point } => {
            let t = objective - Rat::one();
            let x = point[..n].iter().map(|y| y - Rat::one()).collect();
            (t, x)
        }
        other => unreachable!("slack LP is always feasible and bounded: {other:?}"),
    }
}

/// Interior witness of `{x : row . x > 0 for all strict rows, row . x = 0 for
/// all eq rows}` intersected with the unit box, if the set is nonempty.
pub fn strict_witness(n: usize, strict: &[Vec<Int>], eq: &[Vec<Int>]) -> Option<Vec<Rat>> {
    let (t, x) = max_min_slack(n, strict, eq);
    t.is_positive().then_some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn simplex_known_optimum() {
        // max x + y st x + 2y <= 4, 3x + y <= 6 -> (8/5, 6/5), value 14/5.
        let rows = vec![
            (vec![rat(1), rat(2)], Rel::Le, rat(4)),
            (vec![rat(3), rat(1)], Rel::Le, rat(6)),
        ];
        match simplex_maximize(&[rat(1), rat(1)], &rows) {
            LpOutcome::Optimal { objective, point } => {
                assert_eq!(objective, Rat::new(Int::from(14), Int::from(5)));
                assert_eq!(point[0], Rat::new(Int::from(8), Int::from(5)));
                assert_eq!(point[1], Rat::new(Int::from(6), Int::from(5)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn simplex_infeasible() {
        let rows = vec![
            (vec![rat(1)], Rel::Ge, rat(3)),
            (vec![rat(1)], Rel::Le, rat(1)),
        ];
        assert_eq!(simplex_maximize(&[rat(1)], &rows), LpOutcome::Infeasible);
    }

    #[test]
    fn simplex_unbounded() {
        let rows = vec![(vec![rat(1)], Rel::Ge, rat(1))];
        assert_eq!(simplex_maximize(&[rat(1)], &rows), LpOutcome::Unbounded);
    }

    #[test]
    fn strict_witness_halfplane() {
        let w = strict_witness(2, &[iv(&[1, 0]), iv(&[0, 1])], &[]).unwrap();
        assert!(w[0].is_positive() && w[1].is_positive());
    }

    #[test]
    fn strict_witness_empty_region() {
        // x > 0 and -x > 0 is empty.
        assert!(strict_witness(1, &[iv(&[1]), iv(&[-1])], &[]).is_none());
    }

    #[test]
    fn strict_witness_on_hyperplane() {
        // On x + y = 0, need x > 0 and y < 0 strictly.
        let w = strict_witness(2, &[iv(&[1, 0]), iv(&[0, -1])], &[iv(&[1, 1])]).unwrap();
        assert!(w[0].is_positive());
        assert_eq!(w[0], -w[1].clone());
    }
}
