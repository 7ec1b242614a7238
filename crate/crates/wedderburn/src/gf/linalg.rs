//! Gaussian elimination over finite fields, on flat coefficient rows.
//!
//! Rows are stored as `n * deg` words (each entry a length-`deg` coefficient
//! block), so the same code path serves prime fields and extensions.  Ranks
//! of ideal spans dominate the oracle's cost, hence the `deg == 1` fast path.

use super::{mulp, pf_inv_scalar, subp, FiniteField};

/// Destructive row-echelon rank of the given flat rows.
pub fn rank_flat(field: &FiniteField, rows: &mut Vec<Vec<u64>>, n_cols: usize) -> usize {
    let deg = field.degree();
    let p = field.characteristic();
    let mut rank = 0usize;
    let mut scratch = vec![0u64; field.scratch_len()];
    for col in 0..n_cols {
        let c0 = col * deg;
        // Find a pivot row.
        let pivot = (rank..rows.len()).find(|&r| rows[r][c0..c0 + deg].iter().any(|&x| x != 0));
        let Some(pivot) = pivot else { continue };
        rows.swap(rank, pivot);
        // Normalize the pivot row.
        if deg == 1 {
            let inv = pf_inv_scalar(p, rows[rank][c0]);
            if inv != 1 {
                for x in rows[rank].iter_mut() {
                    *x = mulp(*x, inv, p);
                }
            }
            let (head, tail) = rows.split_at_mut(rank + 1);
            let prow = &head[rank];
            for row in tail.iter_mut() {
                let f = row[c0];
                if f == 0 {
                    continue;
                }
                for (x, &pv) in row.iter_mut().zip(prow.iter()).skip(c0) {
                    *x = subp(*x, mulp(f, pv, p), p);
                }
            }
        } else {
            let e = super::FqElem { coeffs: rows[rank][c0..c0 + deg].to_vec() };
            let inv = field.inv(&e).expect("nonzero pivot");
            let prow_scaled: Vec<u64> = {
                let src = &rows[rank];
                let mut out = vec![0u64; src.len()];
                for j in (0..src.len()).step_by(deg) {
                    field.flat_mul_into(&src[j..j + deg], &inv.coeffs, &mut out[j..j + deg], &mut scratch);
                }
                out
            };
            rows[rank] = prow_scaled;
            let (head, tail) = rows.split_at_mut(rank + 1);
            let prow = &head[rank];
            let mut term = vec![0u64; deg];
            for row in tail.iter_mut() {
                if row[c0..c0 + deg].iter().all(|&x| x == 0) {
                    continue;
                }
                let f: Vec<u64> = row[c0..c0 + deg].to_vec();
                for j in (c0..row.len()).step_by(deg) {
                    field.flat_mul_into(&f, &prow[j..j + deg], &mut term, &mut scratch);
                    field.flat_sub_assign(&mut row[j..j + deg], &term);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Solves `A c = b` over `F_p` for a matrix with full column rank, returning
/// `None` when `b` is outside the column span.
pub fn fp_solve(p: u64, cols: &[Vec<u64>], b: &[u64]) -> Option<Vec<u64>> {
    let n_rows = b.len();
    let n_cols = cols.len();
    debug_assert!(cols.iter().all(|c| c.len() == n_rows));
    // Augmented elimination on [A | b].
    let mut rows: Vec<Vec<u64>> = (0..n_rows)
        .map(|r| {
            let mut row: Vec<u64> = cols.iter().map(|c| c[r] % p).collect();
            row.push(b[r] % p);
            row
        })
        .collect();
    let mut pivot_col_of_row = Vec::new();
    let mut rank = 0usize;
    for col in 0..n_cols {
        let Some(pivot) = (rank..n_rows).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, pivot);
        let inv = pf_inv_scalar(p, rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = mulp(*x, inv, p);
        }
        for r in 0..n_rows {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                let (pr, tr) = if r < rank {
                    let (a, b2) = rows.split_at_mut(rank);
                    (&b2[0], &mut a[r])
                } else {
                    let (a, b2) = rows.split_at_mut(r);
                    (&a[rank], &mut b2[0])
                };
                for (x, &pv) in tr.iter_mut().zip(pr.iter()) {
                    *x = subp(*x, mulp(f, pv, p), p);
                }
            }
        }
        pivot_col_of_row.push(col);
        rank += 1;
        if rank == n_rows {
            break;
        }
    }
    // Inconsistent if any zero row has a nonzero rhs.
    for r in rank..n_rows {
        if rows[r][n_cols] != 0 {
            return None;
        }
    }
    if rank < n_cols {
        return None; // not full column rank; callers guarantee this
    }
    let mut solution = vec![0u64; n_cols];
    for (r, &col) in pivot_col_of_row.iter().enumerate() {
        solution[col] = rows[r][n_cols];
    }
    Some(solution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FiniteField;

    #[test]
    fn rank_over_prime_field() {
        let f5 = FiniteField::prime(5).unwrap();
        let mut full = vec![vec![1, 2, 3], vec![0, 1, 4], vec![0, 0, 2]];
        assert_eq!(rank_flat(&f5, &mut full, 3), 3);
        // Third row is the sum of the first two mod 5.
        let mut dep = vec![vec![1, 2, 3], vec![0, 1, 4], vec![1, 3, 2]];
        assert_eq!(rank_flat(&f5, &mut dep, 3), 2);
    }

    #[test]
    fn rank_over_extension() {
        let f4 = FiniteField::extension(2, 2).unwrap();
        // Two rows over F_4 with entries (1, x) and (x, x^2 = x+1): the second
        // is x times the first, so rank 1.
        let mut rows = vec![vec![1, 0, 0, 1], vec![0, 1, 1, 1]];
        assert_eq!(rank_flat(&f4, &mut rows, 2), 1);
    }

    #[test]
    fn solve_small_system() {
        // Over F_7: columns (1,2), (3,4); solve for b = 2*c0 + 5*c1.
        let cols = vec![vec![1, 2], vec![3, 4]];
        let b = vec![(2 + 15) % 7, (4 + 20) % 7];
        let sol = fp_solve(7, &cols, &b).unwrap();
        assert_eq!(sol, vec![2, 5]);
        // Inconsistent target.
        let cols1 = vec![vec![1, 2, 0]];
        assert_eq!(fp_solve(7, &cols1, &[0, 0, 1]), None);
    }
}
