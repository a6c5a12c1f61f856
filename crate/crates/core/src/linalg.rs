//! Exact Gaussian elimination over a field.
//!
//! Pivoting is deterministic: rows are scanned in their given order and the
//! first nonzero entry becomes the pivot, so symbolic entries never depend on
//! a magnitude heuristic.

use crate::coeff::Field;

/// Reduced row echelon form. Returns the reduced rows and the pivot column of
/// each nonzero row.
pub fn rref<F: Field>(rows: &[Vec<F>], ncols: usize) -> (Vec<Vec<F>>, Vec<usize>) {
    let mut m: Vec<Vec<F>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.sub(&factor.mul(p));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank<F: Field>(rows: &[Vec<F>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : A x = 0}` for the matrix given by `rows` (each of length
/// `ncols`). Each basis vector has a 1 in one free column.
pub fn nullspace<F: Field>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let (reduced, pivots) = rref(rows, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); ncols];
        v[free] = F::one();
        for (row, &pc) in reduced.iter().zip(&pivots) {
            v[pc] = row[free].neg();
        }
        basis.push(v);
    }
    basis
}

/// Coefficients expressing `target` as a combination of `vectors`, if any.
pub fn solve_in_span<F: Field>(vectors: &[Vec<F>], target: &[F]) -> Option<Vec<F>> {
    let n = target.len();
    let k = vectors.len();
    // Augmented system: rows are coordinates, columns are the vectors plus target.
    let rows: Vec<Vec<F>> = (0..n)
        .map(|i| {
            let mut row: Vec<F> = vectors.iter().map(|v| v[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let (reduced, pivots) = rref(&rows, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![F::zero(); k];
    for (row, &pc) in reduced.iter().zip(&pivots) {
        x[pc] = row[k].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::CoeffFrac;

    fn c(s: &str) -> CoeffFrac {
        s.parse().unwrap()
    }

    #[test]
    fn symbolic_nullspace() {
        // [[1, k], [k, k^2]] has kernel spanned by (-k, 1).
        let rows = vec![vec![c("1"), c("k")], vec![c("k"), c("k^2")]];
        let ns = nullspace(&rows, 2);
        assert_eq!(ns, vec![vec![c("-k"), c("1")]]);
        assert_eq!(rank(&rows, 2), 1);
    }

    #[test]
    fn span_membership() {
        let vs = vec![vec![c("1"), c("0"), c("k")], vec![c("0"), c("1"), c("1")]];
        let t = vec![c("2"), c("p"), c("2*k + p")];
        assert_eq!(solve_in_span(&vs, &t), Some(vec![c("2"), c("p")]));
        let bad = vec![c("2"), c("p"), c("2*k")];
        assert_eq!(solve_in_span(&vs, &bad), None);
        assert!(solve_in_span::<CoeffFrac>(&[], &[CoeffFrac::zero()]).is_some());
    }
}
