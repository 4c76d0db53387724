//! Extreme rays of pointed polyhedral cones by the double description method.

use crate::linalg::{invert, primitive, rank, Int, Rat};
use num_bigint::Sign;
use num_traits::Zero;

fn int_rows_to_rat(rows: &[Vec<Int>]) -> Vec<Vec<Rat>> {
    rows.iter()
        .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect()
}

fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Extreme rays of the cone `{x : row . x >= 0}` for integer constraint rows.
///
/// Requires the rows to have full rank `n` (pointed cone); returns `None`
/// otherwise. Rays come back as primitive integer vectors, sorted.
pub fn extreme_rays(n: usize, rows: &[Vec<Int>]) -> Option<Vec<Vec<Int>>> {
    let rat_rows = int_rows_to_rat(rows);
    if rank(&rat_rows) != n {
        return None;
    }

    // Seed with n independent rows: that simplicial cone has the columns of
    // the inverse matrix as its extreme rays.
    let mut basis_idx: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        let mut trial: Vec<Vec<Rat>> = basis_idx.iter().map(|&k| rat_rows[k].clone()).collect();
        trial.push(rat_rows[i].clone());
        if rank(&trial) == trial.len() {
            basis_idx.push(i);
            if basis_idx.len() == n {
                break;
            }
        }
    }
    let basis: Vec<Vec<Rat>> = basis_idx.iter().map(|&k| rat_rows[k].clone()).collect();
    let inv = invert(&basis).expect("basis rows are independent");
    let mut rays: Vec<Vec<Int>> = (0..n)
        .map(|j| {
            let col: Vec<Rat> = (0..n).map(|i| inv[i][j].clone()).collect();
            primitive(&col)
        })
        .collect();

    let mut processed: Vec<usize> = basis_idx.clone();
    for next in 0..rows.len() {
        if processed.contains(&next) {
            continue;
        }
        let c = &rows[next];
        let vals: Vec<Int> = rays.iter().map(|r| dot(c, r)).collect();
        let mut keep: Vec<Vec<Int>> = Vec::new();
        for (r, v) in rays.iter().zip(&vals) {
            if v.sign() != Sign::Minus {
                keep.push(r.clone());
            }
        }
        for (i, r1) in rays.iter().enumerate() {
            if vals[i].sign() != Sign::Plus {
                continue;
            }
            for (j, r2) in rays.iter().enumerate() {
                if vals[j].sign() != Sign::Minus {
                    continue;
                }
                if !adjacent(n, rows, &processed, r1, r2) {
                    continue;
                }
                // Positive combination landing on the new hyperplane.
                let new: Vec<Int> = r1
                    .iter()
                    .zip(r2)
                    .map(|(a, b)| &vals[i] * b - &vals[j] * a)
                    .collect();
                let new_rat: Vec<Rat> = new.iter().map(|x| Rat::from_integer(x.clone())).collect();
                let new = primitive(&new_rat);
                if !keep.contains(&new) {
                    keep.push(new);
                }
            }
        }
        rays = keep;
        processed.push(next);
    }
    rays.sort();
    Some(rays)
}

/// Two extreme rays are adjacent iff their common active constraints have
/// rank n - 2.
fn adjacent(n: usize, rows: &[Vec<Int>], processed: &[usize], r1: &[Int], r2: &[Int]) -> bool {
    let common: Vec<Vec<Rat>> = processed
        .iter()
        .filter(|&&k| dot(&rows[k], r1).is_zero() && dot(&rows[k], r2).is_zero())
        .map(|&k| rows[k].iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    n >= 2 && rank(&common) == n - 2
}
