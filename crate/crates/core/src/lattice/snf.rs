use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{AbelianGroup, IntMatrix};

/// `U·A·V = S` with `U`, `V` unimodular and `S` diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries of `S`, positive, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

// Smallest nonzero |entry| in the trailing block; ties go to the lowest
// (row, col) in row-major order.
fn min_pivot(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let v = s.get(i, j);
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Smith normal form by repeated minimal-pivot elimination.
///
/// Row operations are mirrored into `U` and column operations into `V`,
/// so the identity `U·A·V = S` holds after every step.
pub fn snf(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut factors = Vec::new();

    for t in 0..m.min(n) {
        while let Some((pi, pj)) = min_pivot(&s, t) {
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = s.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let q = s.get(i, t).div_floor(&pivot);
                if !q.is_zero() {
                    s.add_row_multiple(i, t, &-&q);
                    u.add_row_multiple(i, t, &-&q);
                }
                clean &= s.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let q = s.get(t, j).div_floor(&pivot);
                if !q.is_zero() {
                    s.add_col_multiple(j, t, &-&q);
                    v.add_col_multiple(j, t, &-&q);
                }
                clean &= s.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row and retry.
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    s.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if s.get(t, t).is_zero() {
            break;
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        factors.push(s.get(t, t).clone());
    }

    SnfResult {
        s,
        u,
        v,
        invariant_factors: factors,
    }
}

/// Cokernel `Z^cols / rowspace(A)`: relators as rows, generators as columns.
pub fn cokernel(a: &IntMatrix) -> AbelianGroup {
    let result = snf(a);
    AbelianGroup::new(
        a.cols() - result.rank(),
        result
            .invariant_factors
            .into_iter()
            .filter(|d| !d.is_one())
            .collect(),
    )
}
