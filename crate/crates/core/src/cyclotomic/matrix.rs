use std::fmt;

use super::{CycError, CyclotomicElement};

/// A 3×3 matrix over `Z[ζ]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycMatrix {
    entries: [[CyclotomicElement; 3]; 3],
}

impl CycMatrix {
    pub fn new(entries: [[CyclotomicElement; 3]; 3]) -> Self {
        CycMatrix { entries }
    }

    pub fn identity() -> Self {
        Self::scalar(&CyclotomicElement::one())
    }

    pub fn scalar(lambda: &CyclotomicElement) -> Self {
        let mut entries: [[CyclotomicElement; 3]; 3] = Default::default();
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = lambda.clone();
        }
        CycMatrix { entries }
    }

    pub fn diag(d: [CyclotomicElement; 3]) -> Self {
        let mut entries: [[CyclotomicElement; 3]; 3] = Default::default();
        for (i, x) in d.into_iter().enumerate() {
            entries[i][i] = x;
        }
        CycMatrix { entries }
    }

    pub fn entry(&self, i: usize, j: usize) -> &CyclotomicElement {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[[CyclotomicElement; 3]; 3] {
        &self.entries
    }

    fn from_fn(f: impl Fn(usize, usize) -> CyclotomicElement) -> Self {
        CycMatrix {
            entries: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))),
        }
    }

    pub fn mul(&self, rhs: &CycMatrix) -> CycMatrix {
        Self::from_fn(|i, j| {
            (0..3).fold(CyclotomicElement::zero(), |acc, k| {
                &acc + &(&self.entries[i][k] * &rhs.entries[k][j])
            })
        })
    }

    pub fn scale(&self, lambda: &CyclotomicElement) -> CycMatrix {
        Self::from_fn(|i, j| lambda * &self.entries[i][j])
    }

    pub fn pow(&self, exp: u32) -> CycMatrix {
        (0..exp).fold(Self::identity(), |acc, _| acc.mul(self))
    }

    /// `P*`: entrywise conjugation followed by transposition.
    pub fn conj_transpose(&self) -> CycMatrix {
        Self::from_fn(|i, j| self.entries[j][i].conj())
    }

    pub fn is_hermitian(&self) -> bool {
        self.conj_transpose() == *self
    }

    fn minor(&self, i: usize, j: usize) -> CyclotomicElement {
        let rows: Vec<usize> = (0..3).filter(|&r| r != i).collect();
        let cols: Vec<usize> = (0..3).filter(|&c| c != j).collect();
        let e = |r: usize, c: usize| &self.entries[rows[r]][cols[c]];
        &(e(0, 0) * e(1, 1)) - &(e(0, 1) * e(1, 0))
    }

    fn cofactor(&self, i: usize, j: usize) -> CyclotomicElement {
        let m = self.minor(i, j);
        if (i + j).is_multiple_of(2) {
            m
        } else {
            -m
        }
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> CyclotomicElement {
        (0..3).fold(CyclotomicElement::zero(), |acc, j| {
            &acc + &(&self.entries[0][j] * &self.cofactor(0, j))
        })
    }

    pub fn adjugate(&self) -> CycMatrix {
        Self::from_fn(|i, j| self.cofactor(j, i))
    }

    pub fn inverse(&self) -> Result<CycMatrix, CycError> {
        let det = self.det();
        let det_inv = det
            .inverse()
            .map_err(|_| CycError::SingularMatrix { det: det.to_string() })?;
        Ok(self.adjugate().scale(&det_inv))
    }

    /// Returns `λ` if the matrix equals `λ·I`.
    pub fn as_scalar(&self) -> Option<CyclotomicElement> {
        let lambda = &self.entries[0][0];
        let ok = (0..3).all(|i| {
            (0..3).all(|j| {
                let e = &self.entries[i][j];
                if i == j {
                    e == lambda
                } else {
                    e.is_zero()
                }
            })
        });
        ok.then(|| lambda.clone())
    }

    /// Smallest `k ≥ 1` with `Pᵏ` scalar, searching up to `limit`.
    pub fn order_mod_scalars(&self, limit: u32) -> Option<u32> {
        let mut power = self.clone();
        for k in 1..=limit {
            if power.as_scalar().is_some() {
                return Some(k);
            }
            power = power.mul(self);
        }
        None
    }
}

impl fmt::Display for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
            if i < 2 {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// A unit `λ` witnessing `P = λ·Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarWitness {
    pub lambda: CyclotomicElement,
    pub relation_name: String,
}

/// True iff `P*·A·P = A` exactly. `form` is expected to be Hermitian.
pub fn verify_form_preservation(p: &CycMatrix, form: &CycMatrix) -> bool {
    debug_assert!(form.is_hermitian(), "form must be Hermitian");
    p.conj_transpose().mul(form).mul(p) == *form
}

/// Decides whether `P = λ·Q` for some scalar by inspecting `P·Q⁻¹`.
pub fn scalar_equivalent(
    p: &CycMatrix,
    q: &CycMatrix,
    relation_name: &str,
) -> Result<Option<ScalarWitness>, CycError> {
    let quotient = p.mul(&q.inverse()?);
    Ok(quotient.as_scalar().map(|lambda| ScalarWitness {
        lambda,
        relation_name: relation_name.to_string(),
    }))
}
