//! Smith normal form over the integers, with the column transform tracked.
//!
//! For a relation matrix `A` (rows are relations among `k` generators) we
//! find unimodular `U`, `V` with `U A V = D` diagonal and `D_11 | D_22 | ...`.
//! Only `V` is kept: a row vector `x` of generator coefficients maps to the
//! canonical coordinates `x V`, reduced modulo the diagonal.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// Diagonal entries `D_jj`, one per column, non-negative.
    pub diagonal: Vec<i64>,
    /// Column transform `V` (k x k), row-major.
    pub transform: Vec<Vec<i64>>,
}

impl SmithForm {
    /// Diagonal entries greater than one, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<u64> {
        self.diagonal
            .iter()
            .filter(|&&d| d != 1)
            .map(|&d| d as u64)
            .collect()
    }

    /// Columns of `V` whose diagonal entry is not one, paired with that entry.
    pub fn nontrivial_columns(&self) -> Vec<(usize, i64)> {
        self.diagonal
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 1)
            .map(|(j, &d)| (j, d))
            .collect()
    }
}

/// Smith normal form of an `m x k` integer matrix given by rows.
///
/// Zero columns beyond the rank get diagonal entry `0`.
pub fn smith_normal_form(rows: &[Vec<i64>], ncols: usize) -> SmithForm {
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            debug_assert_eq!(r.len(), ncols);
            r.iter().map(|&v| v as i128).collect()
        })
        .collect();
    let m = a.len();
    let k = ncols;
    let mut v: Vec<Vec<i128>> = (0..k)
        .map(|i| (0..k).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut diagonal = vec![0i64; k];

    let swap_cols = |a: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, x: usize, y: usize| {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
        for row in v.iter_mut() {
            row.swap(x, y);
        }
    };
    // col_dst -= q * col_src
    let col_axpy =
        |a: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, dst: usize, src: usize, q: i128| {
            for row in a.iter_mut() {
                row[dst] -= q * row[src];
            }
            for row in v.iter_mut() {
                row[dst] -= q * row[src];
            }
        };

    for t in 0..k.min(m) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && pivot.is_none_or(|(pi, pj)| x.abs() < a[pi][pj].abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                break;
            };
            a.swap(t, pi);
            if pj != t {
                swap_cols(&mut a, &mut v, t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..k {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..k {
                let q = a[t][j] / p;
                if q != 0 {
                    col_axpy(&mut a, &mut v, j, t, q);
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..m).find(|&i| (t + 1..k).any(|j| a[i][j] % p != 0));
            match offender {
                Some(i) => {
                    for j in t..k {
                        let x = a[i][j];
                        a[t][j] += x;
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for row in a.iter_mut() {
                row[t] = -row[t];
            }
            for row in v.iter_mut() {
                row[t] = -row[t];
            }
        }
        diagonal[t] = a[t][t] as i64;
    }

    SmithForm {
        diagonal,
        transform: v
            .into_iter()
            .map(|r| r.into_iter().map(|x| x as i64).collect())
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = b[0].len();
        a.iter()
            .map(|row| {
                (0..n)
                    .map(|j| row.iter().zip(b).map(|(x, br)| x * br[j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn diagonal_of_coprime_orders_merges() {
        let s = smith_normal_form(&[vec![3, 0], vec![0, 4]], 2);
        assert_eq!(s.diagonal, vec![1, 12]);
        assert_eq!(s.invariant_factors(), vec![12]);
    }

    #[test]
    fn divisibility_chain_holds() {
        let s = smith_normal_form(&[vec![6, 0, 0], vec![0, 10, 0], vec![0, 0, 15]], 3);
        assert_eq!(s.diagonal, vec![1, 30, 30]);
    }

    #[test]
    fn extra_relations_collapse_the_group() {
        // Z_8 with relation 4 = 0.
        let s = smith_normal_form(&[vec![8], vec![4]], 1);
        assert_eq!(s.invariant_factors(), vec![4]);
        // Z_12 with relation 3 = 0.
        let s = smith_normal_form(&[vec![12], vec![3]], 1);
        assert_eq!(s.invariant_factors(), vec![3]);
    }

    #[test]
    fn transform_is_unimodular_and_diagonalises_relations() {
        let rows = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith_normal_form(&rows, 3);
        assert_eq!(s.diagonal, vec![2, 6, 12]);
        // The column space of A V must be spanned by the diagonal: each column j
        // of A V is a multiple of D_jj.
        let av = mat_mul(&rows, &s.transform);
        for row in &av {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x % s.diagonal[j], 0);
            }
        }
        let det = {
            let m = &s.transform;
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        };
        assert_eq!(det.abs(), 1);
    }

    #[test]
    fn zero_matrix_has_zero_diagonal() {
        let s = smith_normal_form(&[vec![0, 0]], 2);
        assert_eq!(s.diagonal, vec![0, 0]);
    }
}
