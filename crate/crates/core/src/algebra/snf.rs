//! Smith normal form of integer matrices with the left transform tracked.
//!
//! For `A` (rows = generators, columns = relations) we find unimodular `P`
//! and `Q` with `P A Q = diag(s_0, s_1, ...)`, `s_i | s_{i+1}`. Only `P` and
//! its inverse are kept: `x -> P x` carries `Z^r / im A` onto
//! `Z^r / im diag(s)`.

pub type Matrix = Vec<Vec<i128>>;

#[derive(Debug, Clone)]
pub struct Smith {
    /// Diagonal entries, one per row (zero past the rank).
    pub diagonal: Vec<i128>,
    pub left: Matrix,
    pub left_inverse: Matrix,
}

fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

pub fn smith_normal_form(a: &Matrix) -> Smith {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m = a.clone();
    let mut p = identity(rows);
    let mut pinv = identity(rows);

    // row_i += c * row_j, with the matching updates of P and P^{-1}
    let row_add = |m: &mut Matrix, p: &mut Matrix, pinv: &mut Matrix, i: usize, j: usize, c: i128| {
        if c == 0 {
            return;
        }
        for k in 0..m[0].len() {
            m[i][k] += c * m[j][k];
        }
        for k in 0..p[0].len() {
            p[i][k] += c * p[j][k];
        }
        for row in pinv.iter_mut() {
            row[j] -= c * row[i];
        }
    };
    let row_swap = |m: &mut Matrix, p: &mut Matrix, pinv: &mut Matrix, i: usize, j: usize| {
        m.swap(i, j);
        p.swap(i, j);
        for row in pinv.iter_mut() {
            row.swap(i, j);
        }
    };
    let col_add = |m: &mut Matrix, i: usize, j: usize, c: i128| {
        for row in m.iter_mut() {
            row[i] += c * row[j];
        }
    };
    let col_swap = |m: &mut Matrix, i: usize, j: usize| {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    };

    let n = rows.min(cols);
    for t in 0..n {
        loop {
            // pivot: smallest nonzero absolute value in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if m[i][j] != 0 && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            if bi != t {
                row_swap(&mut m, &mut p, &mut pinv, t, bi);
            }
            if bj != t {
                col_swap(&mut m, t, bj);
            }
            let piv = m[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = m[i][t].div_euclid(piv);
                row_add(&mut m, &mut p, &mut pinv, i, t, -q);
                dirty |= m[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = m[t][j].div_euclid(piv);
                col_add(&mut m, j, t, -q);
                dirty |= m[t][j] != 0;
            }
            if dirty {
                continue;
            }
            let mut fixed = false;
            'outer: for i in t + 1..rows {
                for j in t + 1..cols {
                    if m[i][j] % piv != 0 {
                        row_add(&mut m, &mut p, &mut pinv, t, i, 1);
                        fixed = true;
                        break 'outer;
                    }
                }
            }
            if !fixed {
                break;
            }
        }
        if m[t][t] < 0 {
            for k in 0..cols {
                m[t][k] = -m[t][k];
            }
            for k in 0..rows {
                p[t][k] = -p[t][k];
            }
            for row in pinv.iter_mut() {
                row[t] = -row[t];
            }
        }
    }
    let diagonal = (0..rows).map(|i| if i < cols { m[i][i] } else { 0 }).collect();
    Smith { diagonal, left: p, left_inverse: pinv }
}
