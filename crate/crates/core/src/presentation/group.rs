use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::word::is_valid_name;
use super::{PresentationError, SurgeryDatum, Word};
use crate::lattice::{cokernel, AbelianGroup, IntMatrix};

/// A finitely presented group `⟨generators | relators⟩`.
///
/// `rationally_trivial` records generators that are known only to be torsion
/// after a gluing whose other side has no usable presentation; homology
/// computed with such marks is exact over `Q` and a quotient of the true
/// integral group.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
    rationally_trivial: Vec<String>,
}

/// Result of a free product, with the renamings applied to each side.
#[derive(Clone, Debug)]
pub struct FreeProduct {
    pub presentation: Presentation,
    pub left: BTreeMap<String, String>,
    pub right: BTreeMap<String, String>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !is_valid_name(g) {
                return Err(PresentationError::InvalidName(g.clone()));
            }
            if !seen.insert(g.as_str()) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        let p = Presentation {
            generators,
            relators: Vec::new(),
            rationally_trivial: Vec::new(),
        };
        p.add_relators(relators)
    }

    pub fn free<S: AsRef<str>>(generators: &[S]) -> Result<Self, PresentationError> {
        Self::new(
            generators.iter().map(|g| g.as_ref().to_string()).collect(),
            Vec::new(),
        )
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn rationally_trivial(&self) -> &[String] {
        &self.rationally_trivial
    }

    pub fn has_rational_assumptions(&self) -> bool {
        !self.rationally_trivial.is_empty()
    }

    pub fn has_generator(&self, g: &str) -> bool {
        self.generators.iter().any(|x| x == g)
    }

    fn check_word(&self, w: &Word) -> Result<(), PresentationError> {
        match w.generators().find(|g| !self.has_generator(g)) {
            Some(g) => Err(PresentationError::UnknownGenerator(g.to_string())),
            None => Ok(()),
        }
    }

    /// Quotient by the normal closure of `words`.
    pub fn add_relators(&self, words: impl IntoIterator<Item = Word>) -> Result<Self, PresentationError> {
        let mut out = self.clone();
        for w in words {
            out.check_word(&w)?;
            out.relators.push(w);
        }
        Ok(out)
    }

    /// Drops the first relator equal to `w` or `w⁻¹`. Returns whether one
    /// was found.
    pub fn remove_relator(&mut self, w: &Word) -> bool {
        let inv = w.inverse();
        match self.relators.iter().position(|r| r == w || *r == inv) {
            Some(i) => {
                self.relators.remove(i);
                true
            }
            None => false,
        }
    }

    /// Adds `w₁·w₂⁻¹` for each pair.
    pub fn identify_generators(&self, pairs: &[(Word, Word)]) -> Result<Self, PresentationError> {
        for (a, b) in pairs {
            self.check_word(a)?;
            self.check_word(b)?;
        }
        self.add_relators(pairs.iter().map(|(a, b)| a.concat(&b.inverse())))
    }

    /// Adds the relator `μ^a · λ'^b` of a torus surgery.
    pub fn apply_surgery(&self, datum: &SurgeryDatum) -> Result<Self, PresentationError> {
        self.add_relators([datum.relator()])
    }

    /// Marks generators whose images lie in a side with vanishing rational
    /// first homology.
    pub fn attach_rationally_trivial_side<S: AsRef<str>>(
        &self,
        gens: &[S],
    ) -> Result<Self, PresentationError> {
        let mut out = self.clone();
        for g in gens {
            let g = g.as_ref();
            if !self.has_generator(g) {
                return Err(PresentationError::UnknownGenerator(g.to_string()));
            }
            if !out.rationally_trivial.iter().any(|x| x == g) {
                out.rationally_trivial.push(g.to_string());
            }
        }
        Ok(out)
    }

    pub fn rename(&self, f: impl Fn(&str) -> String) -> Presentation {
        Presentation {
            generators: self.generators.iter().map(|g| f(g)).collect(),
            relators: self.relators.iter().map(|r| r.rename(&f)).collect(),
            rationally_trivial: self.rationally_trivial.iter().map(|g| f(g)).collect(),
        }
    }

    /// Free product. Generators shared by both sides are renamed with the
    /// prefixes `left_ns.` and `right_ns.`; disjoint names are kept.
    pub fn free_product_ns(&self, other: &Presentation, left_ns: &str, right_ns: &str) -> FreeProduct {
        let clash: BTreeSet<&str> = self
            .generators
            .iter()
            .filter(|g| other.has_generator(g))
            .map(String::as_str)
            .collect();
        let mapping = |ns: &str, gens: &[String]| -> BTreeMap<String, String> {
            gens.iter()
                .filter(|g| clash.contains(g.as_str()))
                .map(|g| (g.clone(), format!("{ns}.{g}")))
                .collect()
        };
        let left = mapping(left_ns, &self.generators);
        let right = mapping(right_ns, &other.generators);
        let apply = |m: &BTreeMap<String, String>| {
            let m = m.clone();
            move |g: &str| m.get(g).cloned().unwrap_or_else(|| g.to_string())
        };
        let l = self.rename(apply(&left));
        let r = other.rename(apply(&right));
        let mut presentation = l;
        presentation.generators.extend(r.generators);
        presentation.relators.extend(r.relators);
        presentation.rationally_trivial.extend(r.rationally_trivial);
        FreeProduct {
            presentation,
            left,
            right,
        }
    }

    pub fn free_product(&self, other: &Presentation) -> FreeProduct {
        self.free_product_ns(other, "L", "R")
    }

    /// Rows are relators, columns generators, entries exponent sums.
    pub fn abelianized_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self
            .relators
            .iter()
            .map(|r| self.generators.iter().map(|g| r.exponent_sum(g)).collect())
            .collect();
        IntMatrix::from_rows(self.generators.len(), &rows).expect("rows have one entry per generator")
    }

    // Relator matrix plus a unit row for each rationally trivial generator.
    fn effective_matrix(&self) -> IntMatrix {
        let mut m = self.abelianized_matrix();
        if self.has_rational_assumptions() {
            let units: Vec<Vec<i64>> = self
                .rationally_trivial
                .iter()
                .map(|t| self.generators.iter().map(|g| i64::from(g == t)).collect())
                .collect();
            let extra = IntMatrix::from_rows(self.generators.len(), &units).expect("unit rows");
            m = m.stack(&extra);
        }
        m
    }

    /// First homology. With rational marks present this is a quotient of
    /// the true group (see [`Presentation::has_rational_assumptions`]).
    pub fn h1(&self) -> AbelianGroup {
        cokernel(&self.effective_matrix())
    }

    pub fn b1(&self) -> usize {
        self.h1().rank
    }

    /// Parses the line format written by `Display`:
    /// `gen a b c`, then one `rel <word>` per relator, and optionally
    /// `rational a b`. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Presentation, PresentationError> {
        let mut generators: Option<Vec<String>> = None;
        let mut relators = Vec::new();
        let mut rational: Vec<String> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = |message: String| PresentationError::Syntax { line: i + 1, message };
            let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match head {
                "gen" => {
                    if generators.is_some() {
                        return Err(at("duplicate `gen` line".into()));
                    }
                    generators = Some(rest.split_whitespace().map(String::from).collect());
                }
                "rel" => {
                    let w = Word::parse(rest).map_err(|e| at(e.to_string()))?;
                    relators.push(w);
                }
                "rational" => rational.extend(rest.split_whitespace().map(String::from)),
                other => return Err(at(format!("unknown directive `{other}`"))),
            }
        }
        let p = Presentation::new(generators.unwrap_or_default(), relators)?;
        p.attach_rationally_trivial_side(&rational)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gen")?;
        for g in &self.generators {
            write!(f, " {g}")?;
        }
        writeln!(f)?;
        for r in &self.relators {
            writeln!(f, "rel {r}")?;
        }
        if self.has_rational_assumptions() {
            writeln!(f, "rational {}", self.rationally_trivial.join(" "))?;
        }
        Ok(())
    }
}

/// Standard surface group `⟨a₁,b₁,…,a_g,b_g | Π[aᵢ,bᵢ]⟩` with the given
/// generator prefixes.
pub fn surface_group(genus: u32, a: &str, b: &str) -> Presentation {
    let mut gens = Vec::new();
    let mut product = Word::empty();
    for i in 1..=genus {
        let (ai, bi) = (format!("{a}{i}"), format!("{b}{i}"));
        product = product.concat(&Word::commutator(&Word::letter(&ai), &Word::letter(&bi)));
        gens.push(ai);
        gens.push(bi);
    }
    let relators = if genus > 0 { vec![product] } else { Vec::new() };
    Presentation::new(gens, relators).expect("fresh names")
}

/// Abelian group whose torsion is `Z/n`, as a one-relator presentation.
pub fn cyclic(name: &str, n: i64) -> Presentation {
    Presentation::new(vec![name.to_string()], vec![Word::power(name, n)]).expect("valid")
}

pub(crate) fn torsion_lower_bound_note(p: &Presentation) -> Option<String> {
    p.has_rational_assumptions().then(|| {
        format!(
            "integral H1 is a quotient of the true group: generators {} are only known to be rationally trivial",
            p.rationally_trivial.join(",")
        )
    })
}
