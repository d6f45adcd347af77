//! Exact rational linear solving via fraction-free (Bareiss) elimination.
//!
//! Rows are cleared of denominators, eliminated over the integers with the
//! two-step exact-division rule, and back-substituted in rationals. No
//! pivoting heuristics are needed beyond "first nonzero": there is no
//! roundoff to manage, only growth, which Bareiss keeps polynomial.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::ratpoly::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum LinSolveError {
    /// Rank deficit: some unknown is undetermined.
    Singular,
    /// The equations contradict each other.
    Inconsistent,
}

/// Solves the (possibly overdetermined) system `a·x = b` exactly.
/// Requires full column rank and consistency; anything else is an error.
pub(crate) fn solve_exact(
    a: &[Vec<Rational>],
    b: &[Rational],
) -> Result<Vec<Rational>, LinSolveError> {
    let m = a.len();
    assert_eq!(m, b.len(), "matrix/rhs row mismatch");
    let n = if m == 0 { 0 } else { a[0].len() };
    if n == 0 {
        return if b.iter().all(Zero::is_zero) {
            Ok(Vec::new())
        } else {
            Err(LinSolveError::Inconsistent)
        };
    }
    if m < n {
        return Err(LinSolveError::Singular);
    }

    // clear denominators row by row: integer augmented matrix
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(m);
    for (ar, rhs) in a.iter().zip(b) {
        assert_eq!(ar.len(), n, "ragged matrix");
        let mut lcm = BigInt::one();
        for x in ar.iter().chain(core::iter::once(rhs)) {
            lcm = lcm.lcm(x.denom());
        }
        let mut row: Vec<BigInt> = Vec::with_capacity(n + 1);
        for x in ar.iter().chain(core::iter::once(rhs)) {
            row.push(x.numer() * (&lcm / x.denom()));
        }
        rows.push(row);
    }

    // Bareiss elimination with row swaps
    let mut prev = BigInt::one();
    for col in 0..n {
        let pivot = (col..m).find(|&r| !rows[r][col].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => return Err(LinSolveError::Singular),
        };
        rows.swap(col, pivot);
        for r in col + 1..m {
            for c in col + 1..=n {
                let num = &rows[col][col] * &rows[r][c] - &rows[r][col] * &rows[col][c];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss exact division failed");
                rows[r][c] = q;
            }
            rows[r][col] = BigInt::zero();
        }
        prev = rows[col][col].clone();
    }

    // leftover rows must be identically zero (consistency of the surplus)
    for row in rows.iter().skip(n) {
        if row.iter().any(|x| !x.is_zero()) {
            return Err(LinSolveError::Inconsistent);
        }
    }

    // back-substitution on the integer triangle, in rationals
    let mut x = alloc::vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from(rows[i][n].clone());
        for j in i + 1..n {
            acc -= Rational::from(rows[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from(rows[i][i].clone());
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{rat, rat_int};

    #[test]
    fn solves_small_system() {
        // x + y = 3, x − y = 1 → (2, 1)
        let a = alloc::vec![
            alloc::vec![rat_int(1), rat_int(1)],
            alloc::vec![rat_int(1), rat_int(-1)],
        ];
        let b = alloc::vec![rat_int(3), rat_int(1)];
        assert_eq!(solve_exact(&a, &b).unwrap(), [rat_int(2), rat_int(1)]);
    }

    #[test]
    fn rational_entries() {
        // (1/2)x + (1/3)y = 5/6 ; x − y = 0 → x = y = 1
        let a = alloc::vec![
            alloc::vec![rat(1, 2), rat(1, 3)],
            alloc::vec![rat_int(1), rat_int(-1)],
        ];
        let b = alloc::vec![rat(5, 6), rat_int(0)];
        assert_eq!(solve_exact(&a, &b).unwrap(), [rat_int(1), rat_int(1)]);
    }

    #[test]
    fn consistent_overdetermined() {
        let a = alloc::vec![
            alloc::vec![rat_int(1)],
            alloc::vec![rat_int(2)],
            alloc::vec![rat_int(3)],
        ];
        let b = alloc::vec![rat_int(2), rat_int(4), rat_int(6)];
        assert_eq!(solve_exact(&a, &b).unwrap(), [rat_int(2)]);
    }

    #[test]
    fn detects_inconsistent() {
        let a = alloc::vec![alloc::vec![rat_int(1)], alloc::vec![rat_int(1)]];
        let b = alloc::vec![rat_int(1), rat_int(2)];
        assert_eq!(solve_exact(&a, &b), Err(LinSolveError::Inconsistent));
    }

    #[test]
    fn detects_singular() {
        // dependent columns
        let a = alloc::vec![
            alloc::vec![rat_int(1), rat_int(2)],
            alloc::vec![rat_int(2), rat_int(4)],
        ];
        let b = alloc::vec![rat_int(3), rat_int(6)];
        assert_eq!(solve_exact(&a, &b), Err(LinSolveError::Singular));
        // fewer equations than unknowns
        let a = alloc::vec![alloc::vec![rat_int(1), rat_int(2)]];
        let b = alloc::vec![rat_int(3)];
        assert_eq!(solve_exact(&a, &b), Err(LinSolveError::Singular));
    }

    #[test]
    fn vandermonde_roundish() {
        // 4×4 Vandermonde at −1, 0, 1/2, 1: interpolate p(t) = t³ − t + 2
        let pts = [rat_int(-1), rat_int(0), rat(1, 2), rat_int(1)];
        let target = |t: &Rational| {
            t * t * t - t + rat_int(2)
        };
        let a: Vec<Vec<Rational>> = pts
            .iter()
            .map(|t| (0..4).map(|k| num_traits::pow(t.clone(), k)).collect())
            .collect();
        let b: Vec<Rational> = pts.iter().map(target).collect();
        let x = solve_exact(&a, &b).unwrap();
        assert_eq!(x, [rat_int(2), rat_int(-1), rat_int(0), rat_int(1)]);
    }
}
