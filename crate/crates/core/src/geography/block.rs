use std::fmt;

use num_rational::Rational64;
use serde::{Serialize, Serializer};

use super::GeoError;
use crate::presentation::Presentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
    Unknown,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
            Parity::Unknown => "unknown",
        })
    }
}

/// An embedded surface followed through the operations.
///
/// `fiber` marks classes like `Σ×{pt}` in a product that have disjoint
/// parallel copies, so a fiber sum along one copy leaves the class present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrackedSurface {
    pub label: String,
    pub genus: u32,
    pub square: i64,
    pub k_pairing: Option<i64>,
    pub symplectic: bool,
    pub fiber: bool,
    /// Transverse intersection counts with other tracked surfaces.
    pub meets: Vec<(String, u32)>,
}

impl TrackedSurface {
    pub fn new(label: &str, genus: u32, square: i64, k_pairing: Option<i64>) -> Self {
        TrackedSurface {
            label: label.to_string(),
            genus,
            square,
            k_pairing,
            symplectic: true,
            fiber: false,
            meets: Vec::new(),
        }
    }

    /// `2g − 2 = S·S + K·S` when `K·S` is known.
    pub fn adjunction_consistent(&self) -> bool {
        self.k_pairing
            .is_none_or(|k| 2 * i64::from(self.genus) - 2 == self.square + k)
    }

    pub fn check_adjunction(&self) -> Result<(), GeoError> {
        if self.adjunction_consistent() {
            Ok(())
        } else {
            Err(GeoError::Adjunction {
                label: self.label.clone(),
                genus: self.genus,
                square: self.square,
                k: self.k_pairing.unwrap_or_default(),
            })
        }
    }

    pub fn meets_count(&self, label: &str) -> u32 {
        self.meets
            .iter()
            .filter(|(l, _)| l == label)
            .map(|(_, c)| c)
            .sum()
    }

    pub(crate) fn add_meeting(&mut self, label: &str, count: u32) {
        match self.meets.iter_mut().find(|(l, _)| l == label) {
            Some((_, c)) => *c += count,
            None => self.meets.push((label.to_string(), count)),
        }
    }
}

fn ratio_str<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    if r.is_integer() {
        s.serialize_i64(r.to_integer())
    } else {
        s.serialize_str(&r.to_string())
    }
}

/// `χ_h = (e+σ)/4`, `c₁² = 2e+3σ` and whether `c₁² = 9χ_h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CharNumbers {
    #[serde(serialize_with = "ratio_str")]
    pub chi_h: Rational64,
    pub c1sq: i64,
    pub on_bmy_line: bool,
}

impl CharNumbers {
    pub fn from_invariants(euler: i64, signature: i64) -> Self {
        let chi_h = Rational64::new(euler + signature, 4);
        let c1sq = 2 * euler + 3 * signature;
        CharNumbers {
            chi_h,
            c1sq,
            on_bmy_line: Rational64::from(c1sq) == chi_h * 9,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Profile {
    pub b1: usize,
    pub b2: i64,
    pub b2_plus: i64,
    pub b2_minus: i64,
    pub model: String,
    #[serde(flatten)]
    pub char_numbers: CharNumbers,
}

/// A closed oriented 4-manifold described by its invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub name: String,
    pub euler: i64,
    pub signature: i64,
    pub b1: Option<usize>,
    pub symplectic: bool,
    /// When set, `e + σ ≡ 0 (mod 4)` is enforced.
    pub almost_complex: bool,
    pub minimal: Option<bool>,
    pub minimal_note: Option<String>,
    pub parity: Parity,
    pub parity_note: String,
    pub surfaces: Vec<TrackedSurface>,
    #[serde(skip)]
    pub presentation: Option<Presentation>,
    /// `(b2+, b2-)` of a known diagonal intersection form.
    pub diagonal_form: Option<(u32, u32)>,
    pub provenance: Vec<String>,
    pub annotations: Vec<String>,
    #[serde(skip)]
    pub(crate) exceptional_count: u32,
}

impl Block {
    pub fn new(name: &str, euler: i64, signature: i64) -> Self {
        Block {
            name: name.to_string(),
            euler,
            signature,
            b1: None,
            symplectic: false,
            almost_complex: false,
            minimal: None,
            minimal_note: None,
            parity: Parity::Unknown,
            parity_note: "not determined".into(),
            surfaces: Vec::new(),
            presentation: None,
            diagonal_form: None,
            provenance: Vec::new(),
            annotations: Vec::new(),
            exceptional_count: 0,
        }
    }

    pub fn char_numbers(&self) -> CharNumbers {
        CharNumbers::from_invariants(self.euler, self.signature)
    }

    pub fn chi_h_integral(&self) -> bool {
        (self.euler + self.signature) % 4 == 0
    }

    /// Checks the flagged invariants: integrality of `χ_h` for almost
    /// complex blocks, and adjunction for every surface.
    pub fn validate(&self) -> Result<(), GeoError> {
        if self.almost_complex && !self.chi_h_integral() {
            return Err(GeoError::NonIntegralGenus(self.euler + self.signature));
        }
        self.surfaces
            .iter()
            .try_for_each(TrackedSurface::check_adjunction)
    }

    pub fn surface(&self, label: &str) -> Result<&TrackedSurface, GeoError> {
        self.surfaces
            .iter()
            .find(|s| s.label == label)
            .ok_or_else(|| GeoError::UnknownSurface {
                block: self.name.clone(),
                label: label.to_string(),
            })
    }

    pub(crate) fn surface_mut(&mut self, label: &str) -> Result<&mut TrackedSurface, GeoError> {
        let name = self.name.clone();
        self.surfaces
            .iter_mut()
            .find(|s| s.label == label)
            .ok_or(GeoError::UnknownSurface {
                block: name,
                label: label.to_string(),
            })
    }

    /// Adds a surface after checking adjunction.
    pub fn with_surface(mut self, s: TrackedSurface) -> Result<Self, GeoError> {
        s.check_adjunction()?;
        self.provenance.push(format!("surface {}", s.label));
        self.surfaces.push(s);
        Ok(self)
    }

    pub fn set_parity(&mut self, parity: Parity, note: &str) {
        self.parity = parity;
        self.parity_note = note.to_string();
    }

    /// Odd as soon as some tracked class has odd square.
    pub(crate) fn refresh_parity(&mut self) {
        if let Some(s) = self.surfaces.iter().find(|s| s.square % 2 != 0) {
            let note = format!("tracked class {} has odd square {}", s.label, s.square);
            self.set_parity(Parity::Odd, &note);
        }
    }

    /// One line with the stable column order used by the catalog listing.
    pub fn table_row(&self) -> String {
        let c = self.char_numbers();
        let opt = |o: Option<String>| o.unwrap_or_else(|| "?".into());
        format!(
            "{:<14} e={:<4} sigma={:<4} b1={:<2} chi_h={:<5} c1^2={:<4} bmy={:<5} symplectic={:<5} minimal={:<5} parity={}",
            self.name,
            self.euler,
            self.signature,
            opt(self.b1.map(|b| b.to_string())),
            c.chi_h.to_string(),
            c.c1sq,
            c.on_bmy_line,
            self.symplectic,
            opt(self.minimal.map(|m| m.to_string())),
            self.parity
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_numbers_of_bmy_surface() {
        let c = CharNumbers::from_invariants(3, 1);
        assert_eq!(c.chi_h, Rational64::from(1));
        assert_eq!(c.c1sq, 9);
        assert!(c.on_bmy_line);
        assert!(!CharNumbers::from_invariants(12, 0).on_bmy_line);
        assert_eq!(CharNumbers::from_invariants(1, 0).chi_h, Rational64::new(1, 4));
    }

    #[test]
    fn adjunction_flag() {
        assert!(TrackedSurface::new("H", 3, 1, Some(3)).adjunction_consistent());
        assert!(!TrackedSurface::new("H", 2, 1, Some(3)).adjunction_consistent());
        assert!(TrackedSurface::new("T", 1, 0, None).adjunction_consistent());
    }

    #[test]
    fn almost_complex_requires_integral_chi() {
        let mut b = Block::new("x", 1, 0);
        assert!(b.validate().is_ok());
        b.almost_complex = true;
        assert!(b.validate().is_err());
    }
}
