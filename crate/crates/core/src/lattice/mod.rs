//! Exact integer matrix algebra: Smith normal form, cokernels and a
//! modular rank oracle.

mod matrix;
mod modp;
mod snf;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use matrix::IntMatrix;
pub use modp::{is_prime, rank_mod_p};
pub use snf::{cokernel, snf, SnfResult};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: cannot parse integer `{token}`")]
    Parse { line: usize, token: String },
    #[error("cannot parse abelian group `{0}`")]
    GroupSyntax(String),
}

/// Finitely generated abelian group `Z^rank ⊕ Z/d₁ ⊕ … ⊕ Z/dₖ` with
/// `1 < d₁ | d₂ | … | dₖ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct AbelianGroup {
    pub rank: usize,
    #[serde(serialize_with = "serialize_factors")]
    pub torsion: Vec<BigInt>,
}

fn serialize_factors<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for d in v {
        match d.to_i64() {
            Some(x) => seq.serialize_element(&x)?,
            None => seq.serialize_element(&d.to_string())?,
        }
    }
    seq.end()
}

impl AbelianGroup {
    /// Normalizes `torsion` into invariant-factor form.
    pub fn new(rank: usize, torsion: Vec<BigInt>) -> Self {
        AbelianGroup {
            rank,
            torsion: invariant_factors_of(torsion),
        }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// Whether `Z/n` embeds in the torsion subgroup.
    pub fn torsion_contains_cyclic(&self, n: &BigInt) -> bool {
        if n.is_one() {
            return true;
        }
        // Z/n ⊂ ⊕ Z/dᵢ iff for each prime power pᵉ ∥ n some dᵢ is divisible by pᵉ;
        // with a divisibility chain the largest factor carries every prime power.
        self.torsion.last().is_some_and(|d| d.is_multiple_of(n))
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let torsion = self.torsion.iter().chain(&other.torsion).cloned().collect();
        AbelianGroup::new(self.rank + other.rank, torsion)
    }
}

// Pairwise gcd/lcm merging turns any list of cyclic orders into a
// divisibility chain with the same product.
fn invariant_factors_of(mut ds: Vec<BigInt>) -> Vec<BigInt> {
    ds.retain(|d| !d.is_one() && !d.is_zero());
    for d in ds.iter_mut() {
        *d = d.abs();
    }
    let n = ds.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = ds[i].gcd(&ds[j]);
            let l = ds[i].lcm(&ds[j]);
            ds[i] = g;
            ds[j] = l;
        }
    }
    ds.retain(|d| !d.is_one());
    ds
}

/// `0`, `Z`, `Z^2`, `Z/7`, `Z^2+Z/2+Z/6`.
impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

impl FromStr for AbelianGroup {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LatticeError::GroupSyntax(s.to_string());
        let s = s.trim();
        if s == "0" {
            return Ok(AbelianGroup::trivial());
        }
        let mut rank = 0usize;
        let mut torsion = Vec::new();
        for part in s.split('+').map(str::trim) {
            if part == "Z" {
                rank += 1;
            } else if let Some(r) = part.strip_prefix("Z^") {
                rank += r.parse::<usize>().map_err(|_| bad())?;
            } else if let Some(d) = part.strip_prefix("Z/") {
                torsion.push(d.parse::<BigInt>().map_err(|_| bad())?);
            } else {
                return Err(bad());
            }
        }
        Ok(AbelianGroup::new(rank, torsion))
    }
}
