//! Shipped relation sets for the surgered products `Σ₂×Σₙ`, `Σ₃×T²` and
//! `Σ₃×Σₙ`.
//!
//! Each family comes in two forms: the complement presentation (relations
//! that survive removing the surgery tori) with a list of surgery data, and
//! the relation list exactly as stated for the surgered manifold. Applying
//! the surgeries to the complement reproduces the stated list up to
//! inverting and conjugating the surgery relators.

use serde::Serialize;

use super::{Presentation, SurgeryCoefficient, SurgeryDatum, Word};

/// A relation `lhs = rhs` in its published form, with relator `lhs·rhs⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatedRelation {
    pub text: String,
    #[serde(skip)]
    pub relator: Word,
}

impl StatedRelation {
    fn new(text: &str) -> Self {
        let (lhs, rhs) = text.split_once('=').expect("stated relations contain `=`");
        let relator = w(lhs).concat(&w(rhs).inverse());
        StatedRelation {
            text: text.to_string(),
            relator,
        }
    }
}

fn w(s: &str) -> Word {
    Word::parse(s).unwrap_or_else(|e| panic!("built-in word `{s}`: {e}"))
}

fn datum(label: &str, meridian: &str, push_off: &str, coefficient: SurgeryCoefficient) -> SurgeryDatum {
    SurgeryDatum::new(label, w(meridian), w(push_off), coefficient)
}

fn presentation(gens: Vec<String>, relators: impl IntoIterator<Item = String>) -> Presentation {
    Presentation::new(gens, relators.into_iter().map(|r| w(&r)).collect())
        .expect("built-in relators use declared generators")
}

fn handle_names(prefix_a: &str, prefix_b: &str, count: u32) -> Vec<String> {
    (1..=count)
        .flat_map(|i| [format!("{prefix_a}{i}"), format!("{prefix_b}{i}")])
        .collect()
}

fn surface_relator(prefix_a: &str, prefix_b: &str, count: u32) -> String {
    (1..=count)
        .map(|i| format!("[{prefix_a}{i},{prefix_b}{i}]"))
        .collect()
}

/// `π₁(Σ_g × Σ_h)`: two surface groups whose generators commute. The second
/// factor uses `c, d` when `h = 1`, otherwise `c_j, d_j`.
pub fn product_presentation(g: u32, h: u32) -> Presentation {
    let first = handle_names("a", "b", g);
    let second = if h == 1 {
        vec!["c".to_string(), "d".to_string()]
    } else {
        handle_names("c", "d", h)
    };
    let mut relators = Vec::new();
    if g > 0 {
        relators.push(surface_relator("a", "b", g));
    }
    if h == 1 {
        relators.push("[c,d]".to_string());
    } else if h > 0 {
        relators.push(surface_relator("c", "d", h));
    }
    for x in &first {
        for y in &second {
            relators.push(format!("[{x},{y}]"));
        }
    }
    presentation(first.into_iter().chain(second).collect(), relators)
}

fn y_n_generators(genus: u32, n: u32) -> Vec<String> {
    handle_names("a", "b", genus)
        .into_iter()
        .chain(handle_names("c", "d", n))
        .collect()
}

fn y_n_commutations(n: u32) -> Vec<String> {
    let mut rels: Vec<String> = [
        "[a1,c1]", "[a1,c2]", "[a1,d2]", "[b1,c1]", "[a2,c1]", "[a2,c2]", "[a2,d1]", "[b2,c2]",
    ]
    .map(String::from)
    .to_vec();
    for j in 3..=n {
        rels.push(format!("[b1,c{j}]"));
        rels.push(format!("[b2,d{j}]"));
    }
    rels
}

/// Complement of the `2n + 4` surgery tori in `Σ₂ × Σₙ`.
pub fn y_n_complement(n: u32) -> Presentation {
    let mut rels = y_n_commutations(n);
    rels.push(surface_relator("a", "b", 2));
    rels.push(surface_relator("c", "d", n));
    presentation(y_n_generators(2, n), rels)
}

/// The eight base surgeries followed by the `2(n − 2)` extra ones. The last
/// base surgery has slope `+m`.
pub fn y_n_surgeries(n: u32, m: i64) -> Vec<SurgeryDatum> {
    let minus = SurgeryCoefficient::luttinger(-1);
    let plus = SurgeryCoefficient::luttinger(1);
    let mut out = vec![
        datum("a1'xc1'", "[b1^-1,d1^-1]", "a1", minus),
        datum("b1'xc1''", "[a1^-1,d1]", "b1", minus),
        datum("a2'xc2'", "[b2^-1,d2^-1]", "a2", minus),
        datum("b2'xc2''", "[a2^-1,d2]", "b2", minus),
        datum("a2'xc1'", "[b2^-1,d1^-1]", "c1", plus),
        datum("a2''xd1'", "[b2,c1^-1]", "d1", plus),
        datum("a1'xc2'", "[b1^-1,d2^-1]", "c2", plus),
        datum(
            "a1''xd2'",
            "[b1,c2^-1]",
            "d2",
            SurgeryCoefficient::signed(1, m, 1),
        ),
    ];
    for j in 3..=n {
        out.push(datum(
            &format!("b1'xc{j}'"),
            &format!("[a1^-1,d{j}^-1]"),
            &format!("c{j}"),
            minus,
        ));
        out.push(datum(
            &format!("b2'xd{j}'"),
            &format!("[a2^-1,c{j}^-1]"),
            &format!("d{j}"),
            minus,
        ));
    }
    out
}

/// Relations of the surgered `Σ₂ × Σₙ` as published.
pub fn y_n_stated_relations(n: u32, m: i64) -> Vec<StatedRelation> {
    let mut texts: Vec<String> = [
        "[b1^-1,d1^-1]=a1",
        "[a1^-1,d1]=b1",
        "[b2^-1,d2^-1]=a2",
        "[a2^-1,d2]=b2",
        "[d1^-1,b2^-1]=c1",
        "[c1^-1,b2]=d1",
        "[d2^-1,b1^-1]=c2",
    ]
    .map(String::from)
    .to_vec();
    texts.push(format!("[c2^-1,b1]^{m}=d2"));
    texts.extend(y_n_commutations(2).into_iter().map(|r| format!("{r}=1")));
    texts.push("[a1,b1][a2,b2]=1".into());
    texts.push(format!("{}=1", surface_relator("c", "d", n)));
    for j in 3..=n {
        texts.push(format!("[a1^-1,d{j}^-1]=c{j}"));
        texts.push(format!("[a2^-1,c{j}^-1]=d{j}"));
    }
    for j in 3..=n {
        texts.push(format!("[b1,c{j}]=1"));
        texts.push(format!("[b2,d{j}]=1"));
    }
    texts.iter().map(|t| StatedRelation::new(t)).collect()
}

const Y1_COMMUTATIONS: [&str; 6] = ["[a1,c]", "[b1,c]", "[a2,c]", "[b2,c]", "[a3,c]", "[a3,d]"];

fn y1_generators() -> Vec<String> {
    handle_names("a", "b", 3)
        .into_iter()
        .chain(["c".to_string(), "d".to_string()])
        .collect()
}

/// Complement of the six surgery tori in `Σ₃ × T²`. The relator `[c,d]` is
/// last; it is the meridian of `Σ₃ × {pt}` once that surface is removed.
pub fn y1_complement() -> Presentation {
    let mut rels: Vec<String> = Y1_COMMUTATIONS.map(String::from).to_vec();
    rels.push(surface_relator("a", "b", 3));
    rels.push("[c,d]".into());
    presentation(y1_generators(), rels)
}

/// Four `-1` surgeries, then slopes `+1/p` and `+m/q`.
pub fn y1_surgeries(p: i64, q: i64, m: i64) -> Vec<SurgeryDatum> {
    let minus = SurgeryCoefficient::luttinger(-1);
    vec![
        datum("a1'xc'", "[b1^-1,d^-1]", "a1", minus),
        datum("b1'xc''", "[a1^-1,d]", "b1", minus),
        datum("a2'xc'", "[b2^-1,d^-1]", "a2", minus),
        datum("b2'xc''", "[a2^-1,d]", "b2", minus),
        datum("a3'xc'", "[b3^-1,d^-1]", "c", SurgeryCoefficient::signed(1, 1, p)),
        datum("a3''xd'", "[c^-1,b3]", "d", SurgeryCoefficient::signed(1, m, q)),
    ]
}

/// Relations of the surgered `Σ₃ × T²` as published, except that the
/// surface relator is taken over all three handles. The published text
/// repeats the second handle: `[a_1,b_1][a_2,b_2][a_2,b_2]=1`.
pub fn y1_stated_relations(p: i64, q: i64, m: i64) -> Vec<StatedRelation> {
    let mut texts: Vec<String> = [
        "[b1^-1,d^-1]=a1",
        "[a1^-1,d]=b1",
        "[b2^-1,d^-1]=a2",
        "[a2^-1,d]=b2",
    ]
    .map(String::from)
    .to_vec();
    texts.push(format!("[d^-1,b3^-1]=c^{p}"));
    texts.push(format!("[c^-1,b3]^{}=d^{q}", -m));
    texts.extend(Y1_COMMUTATIONS.iter().map(|r| format!("{r}=1")));
    texts.push("[a1,b1][a2,b2][a3,b3]=1".into());
    texts.push("[c,d]=1".into());
    texts.iter().map(|t| StatedRelation::new(t)).collect()
}

/// `Σ₃ × Σₙ` analogue of [`y_n_complement`]: the third handle `a3, b3` is
/// added to the surface relator and commutes with `c1, d1`, mirroring the
/// `Σ₃ × T²` relations. No published relation list exists for this family.
pub fn z_n_complement(n: u32) -> Presentation {
    let mut rels = y_n_commutations(n);
    rels.push("[a3,c1]".into());
    rels.push("[a3,d1]".into());
    rels.push(surface_relator("a", "b", 3));
    rels.push(surface_relator("c", "d", n));
    presentation(y_n_generators(3, n), rels)
}

/// Same surgeries as [`y_n_surgeries`]; the third handle is left alone.
pub fn z_n_surgeries(n: u32, m: i64) -> Vec<SurgeryDatum> {
    y_n_surgeries(n, m)
}
