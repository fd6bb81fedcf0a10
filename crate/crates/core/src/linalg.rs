//! Gaussian elimination over an exact coefficient field.
//!
//! Pivots are the first nonzero entry found scanning rows in order; with
//! exact arithmetic the choice does not affect correctness.

use crate::scalar::Coefficient;

/// Solves `matrix · x = rhs`. `matrix` is row-major with `ncols` unknowns.
/// Returns one solution (free unknowns set to zero) or `None` when the
/// system is inconsistent.
pub fn solve<C: Coefficient>(
    ctx: &C::Context,
    matrix: &[Vec<C>],
    rhs: &[C],
    ncols: usize,
) -> Option<Vec<C>> {
    assert_eq!(matrix.len(), rhs.len());
    let mut rows: Vec<Vec<C>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            assert_eq!(row.len(), ncols);
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut rows, ncols);
    // A zero row with a nonzero right-hand side is inconsistent.
    for row in rows.iter().skip(pivots.len()) {
        if !row[ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![C::zero_in(ctx); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = rows[r][ncols].clone();
    }
    Some(x)
}

/// Reduced row echelon form over the first `ncols` columns, in place.
/// Returns the pivot columns; row `i` holds pivot `i`.
pub fn row_reduce<C: Coefficient>(rows: &mut [Vec<C>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][col].inv().expect("pivot is nonzero");
        for v in rows[next].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = v.clone() - factor.clone() * pv.clone();
                }
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    pivots
}

/// Rank of a list of vectors of equal length.
pub fn rank<C: Coefficient>(vectors: &[Vec<C>]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let mut rows = vectors.to_vec();
    row_reduce(&mut rows, first.len()).len()
}

/// Incrementally grown echelon basis, for greedy independence tests.
#[derive(Debug, Clone)]
pub struct EchelonBasis<C: Coefficient> {
    rows: Vec<(usize, Vec<C>)>,
}

impl<C: Coefficient> Default for EchelonBasis<C> {
    fn default() -> Self {
        EchelonBasis { rows: Vec::new() }
    }
}

impl<C: Coefficient> EchelonBasis<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of the current basis. Returns whether
    /// it was added.
    pub fn insert(&mut self, v: &[C]) -> bool {
        let mut v = v.to_vec();
        for (col, row) in &self.rows {
            if v[*col].is_zero() {
                continue;
            }
            let factor = v[*col].clone();
            for (a, b) in v.iter_mut().zip(row) {
                *a = a.clone() - factor.clone() * b.clone();
            }
        }
        let Some(col) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[col].inv().expect("nonzero");
        let v: Vec<C> = v.into_iter().map(|x| x * inv.clone()).collect();
        self.rows.push((col, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Prime};

    fn fp(p: Prime, v: i64) -> Fp {
        Fp::new(p, v)
    }

    #[test]
    fn solves_square_system() {
        let p = Prime::new(7).unwrap();
        // x + 2y = 3, 3x + y = 2  over F_7
        let m = vec![vec![fp(p, 1), fp(p, 2)], vec![fp(p, 3), fp(p, 1)]];
        let b = vec![fp(p, 3), fp(p, 2)];
        let x = solve(&p, &m, &b, 2).unwrap();
        assert_eq!(x[0] + fp(p, 2) * x[1], fp(p, 3));
        assert_eq!(fp(p, 3) * x[0] + x[1], fp(p, 2));
    }

    #[test]
    fn detects_inconsistency() {
        let p = Prime::new(5).unwrap();
        let m = vec![vec![fp(p, 1), fp(p, 1)], vec![fp(p, 2), fp(p, 2)]];
        let b = vec![fp(p, 1), fp(p, 3)];
        assert!(solve(&p, &m, &b, 2).is_none());
        let b = vec![fp(p, 1), fp(p, 2)];
        assert!(solve(&p, &m, &b, 2).is_some());
    }

    #[test]
    fn echelon_basis_greedy() {
        let p = Prime::new(3).unwrap();
        let mut basis = EchelonBasis::new();
        assert!(basis.insert(&[fp(p, 1), fp(p, 2), fp(p, 0)]));
        assert!(!basis.insert(&[fp(p, 2), fp(p, 1), fp(p, 0)]));
        assert!(basis.insert(&[fp(p, 0), fp(p, 0), fp(p, 1)]));
        assert!(!basis.insert(&[fp(p, 0), fp(p, 0), fp(p, 0)]));
        assert_eq!(basis.rank(), 2);
        assert_eq!(
            rank(&[vec![fp(p, 1), fp(p, 2)], vec![fp(p, 2), fp(p, 1)]]),
            1
        );
    }
}
