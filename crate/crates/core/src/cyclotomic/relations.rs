use serde::Serialize;

use super::data::{form_a, generator, generators};
use super::{scalar_equivalent, verify_form_preservation, CycMatrix};
use crate::lattice::AbelianGroup;
use crate::presentation::{Presentation, Word};

/// The three published relations among `u, v, j, b`, as `(lhs, rhs)`.
pub const CS_RELATIONS: [(&str, &str); 3] = [("vubj", "u"), ("bjj", "ju"), ("uuvbu", "jj")];

/// Abelianization claimed for the lattice subgroup in the source data.
pub const STATED_ABELIANIZATION: &str = "Z^2";

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorCheck {
    pub name: String,
    pub preserves_form: bool,
    pub det: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    /// `λ` with `lhs = λ·rhs`, when one exists.
    pub witness: Option<String>,
    pub witness_is_unit: bool,
    /// `lhs · rhs⁻¹`, printed so failures can be inspected.
    pub quotient: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub generators: Vec<GeneratorCheck>,
    pub relations: Vec<RelationCheck>,
    pub j_order_mod_scalars: Option<u32>,
    pub abelianization: AbelianGroup,
    pub stated_abelianization: String,
    pub abelianization_matches_stated: bool,
}

impl RelationReport {
    pub fn all_generators_preserve_form(&self) -> bool {
        self.generators.iter().all(|g| g.preserves_form)
    }

    pub fn verified_relations(&self) -> usize {
        self.relations.iter().filter(|r| r.witness.is_some()).count()
    }
}

/// Evaluates a word such as `"uuvbu"` as a left-to-right matrix product.
pub fn evaluate_word(word: &str) -> Option<CycMatrix> {
    word.chars().try_fold(CycMatrix::identity(), |acc, ch| {
        generator(&ch.to_string()).map(|g| acc.mul(&g))
    })
}

/// Presentation with generators `u, v, j, b` and the three relators
/// `lhs · rhs⁻¹`.
pub fn relation_presentation() -> Presentation {
    let letters = |s: &str| -> Word { Word::from_syllables(s.chars().map(|c| (c.to_string(), 1))) };
    let relators = CS_RELATIONS
        .iter()
        .map(|(l, r)| letters(l).concat(&letters(r).inverse()))
        .collect();
    Presentation::new(["u", "v", "j", "b"].map(String::from).to_vec(), relators)
        .expect("relators only use declared generators")
}

pub fn cs_relation_report() -> RelationReport {
    let form = form_a();
    let generators = generators()
        .into_iter()
        .map(|(name, m)| GeneratorCheck {
            name: name.to_string(),
            preserves_form: verify_form_preservation(&m, &form),
            det: m.det().to_string(),
        })
        .collect();

    let relations = CS_RELATIONS
        .iter()
        .map(|(l, r)| {
            let lhs = evaluate_word(l).expect("known letters");
            let rhs = evaluate_word(r).expect("known letters");
            let label = format!("{l} = {r}");
            let rhs_inv = rhs.inverse().expect("generators are invertible");
            let quotient = lhs.mul(&rhs_inv);
            let witness = scalar_equivalent(&lhs, &rhs, &label).expect("rhs is invertible");
            RelationCheck {
                relation: label,
                witness_is_unit: witness.as_ref().is_some_and(|w| w.lambda.is_unit()),
                witness: witness.map(|w| w.lambda.to_string()),
                quotient: quotient
                    .rows()
                    .iter()
                    .map(|row| row.iter().map(|e| e.to_string()).collect())
                    .collect(),
            }
        })
        .collect();

    let j = generator("j").expect("j is built in");
    let abelianization = relation_presentation().h1();
    RelationReport {
        generators,
        relations,
        j_order_mod_scalars: j.order_mod_scalars(48),
        abelianization_matches_stated: abelianization.to_string() == STATED_ABELIANIZATION,
        abelianization,
        stated_abelianization: STATED_ABELIANIZATION.to_string(),
    }
}
