//! Dense linear algebra over `AlgNum` (small matrices only).

use crate::field::AlgNum;

pub type Matrix = Vec<Vec<AlgNum>>;

/// Row-reduces in place; returns pivot columns.
fn row_reduce(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inverse().expect("pivot is nonzero");
        for k in c..cols {
            m[r][k] = &m[r][k] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..cols {
                    let t = &f * &m[r][k];
                    m[i][k] -= &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    row_reduce(&mut a).len()
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { AlgNum::one() } else { AlgNum::zero() }));
            r
        })
        .collect();
    let piv = row_reduce(&mut a);
    if piv.len() < n || piv[n - 1] >= n {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `m x = b`, returning one solution if consistent.
pub fn solve(m: &Matrix, b: &[AlgNum]) -> Option<Vec<AlgNum>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Matrix = m.iter().zip(b).map(|(row, bi)| {
        let mut r = row.clone();
        r.push(bi.clone());
        r
    }).collect();
    let piv = row_reduce(&mut a);
    if piv.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![AlgNum::zero(); cols];
    for (r, &c) in piv.iter().enumerate() {
        x[c] = a[r][cols].clone();
    }
    Some(x)
}
