//! Dense Gaussian elimination over an exact field.

use crate::field::Field;

/// Reduced row echelon form of `rows`; returns the nonzero rows and their pivot columns.
pub fn rref<F: Field>(
    f: &F,
    mut rows: Vec<Vec<F::Elem>>,
    cols: usize,
) -> (Vec<Vec<F::Elem>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(&rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !f.is_zero(&row[c]) {
                let factor = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(x, &f.mul(&factor, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank<F: Field>(f: &F, rows: Vec<Vec<F::Elem>>, cols: usize) -> usize {
    rref(f, rows, cols).1.len()
}

/// Basis of `{v : M v = 0}` for `M` given by rows of length `cols`.
pub fn nullspace<F: Field>(f: &F, rows: Vec<Vec<F::Elem>>, cols: usize) -> Vec<Vec<F::Elem>> {
    let (reduced, pivots) = rref(f, rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); cols];
            v[fc] = f.one();
            for (row, &pc) in reduced.iter().zip(&pivots) {
                v[pc] = f.neg(&row[fc]);
            }
            v
        })
        .collect()
}

/// Basis of `{v : v M = 0}` for `M` with `rows.len()` rows and `cols` columns.
pub fn left_nullspace<F: Field>(f: &F, rows: &[Vec<F::Elem>], cols: usize) -> Vec<Vec<F::Elem>> {
    let transposed: Vec<Vec<F::Elem>> = (0..cols)
        .map(|c| rows.iter().map(|r| r[c].clone()).collect())
        .collect();
    nullspace(f, transposed, rows.len())
}

/// Whether every vector of `vs` lies in the span of `basis`.
pub fn span_contains<F: Field>(
    f: &F,
    basis: &[Vec<F::Elem>],
    vs: &[Vec<F::Elem>],
    cols: usize,
) -> bool {
    let r = rank(f, basis.to_vec(), cols);
    let mut all = basis.to_vec();
    all.extend_from_slice(vs);
    rank(f, all, cols) == r
}
