use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{IntMatrix, LatticeError};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Rank of `A` over `F_p` by Gaussian elimination on residues.
pub fn rank_mod_p(a: &IntMatrix, p: u64) -> Result<usize, LatticeError> {
    if !is_prime(p) {
        return Err(LatticeError::NotPrime(p));
    }
    let modulus = BigInt::from(p);
    let (rows, cols) = (a.rows(), a.cols());
    let mut m: Vec<Vec<u64>> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| a.get(i, j).mod_floor(&modulus).to_u64().expect("residue fits"))
                .collect()
        })
        .collect();

    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = pow_mod(m[rank][col], p - 2, p);
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let factor = mulm(row[col], inv);
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                let sub = mulm(factor, *y);
                *x = (*x + p - sub) % p;
            }
        }
        rank += 1;
    }
    Ok(rank)
}
