use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::cyclotomic::RelationReport;
use crate::geography::Profile;
use crate::lattice::AbelianGroup;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepSnapshot {
    pub index: usize,
    pub op: String,
    pub block: Option<String>,
    pub euler: Option<i64>,
    pub signature: Option<i64>,
    pub b1: Option<usize>,
    pub symplectic: Option<bool>,
    pub parity: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H1Result {
    pub group: String,
    pub rank: usize,
    pub torsion: Vec<String>,
    /// True when some generators were only known to be rationally trivial;
    /// the integral group shown is then a quotient of the true one.
    pub lower_bound: bool,
    pub note: Option<String>,
}

impl H1Result {
    pub fn new(group: &AbelianGroup, note: Option<String>) -> Self {
        H1Result {
            group: group.to_string(),
            rank: group.rank,
            torsion: group.torsion.iter().map(|d| d.to_string()).collect(),
            lower_bound: note.is_some(),
            note,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatedValue {
    pub label: String,
    pub value: String,
    pub cite: String,
    pub agrees: bool,
}

/// A computed quantity next to the values asserted for it elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub key: String,
    pub computed: String,
    pub stated: Vec<StatedValue>,
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Annotation {
    pub block: Option<String>,
    pub text: String,
    pub cite: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectationResult {
    pub key: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
    pub cite: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResultSummary {
    pub block: String,
    pub euler: i64,
    pub signature: i64,
    pub symplectic: bool,
    pub minimal: Option<bool>,
    pub parity: String,
    pub parity_note: String,
    pub profile: Option<Profile>,
    pub profile_error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub recipe: String,
    pub params: Vec<NamedValue>,
    pub notes: Vec<String>,
    pub steps: Vec<StepSnapshot>,
    pub result: Option<ResultSummary>,
    pub h1: Option<H1Result>,
    pub values: Vec<NamedValue>,
    pub cs: Option<RelationReport>,
    pub discrepancies: Vec<Discrepancy>,
    pub annotations: Vec<Annotation>,
    pub expectations: Vec<ExpectationResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.expectations.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ExpectationResult> {
        self.expectations.iter().filter(|e| !e.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn opt<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "?".to_string(), |x| x.to_string())
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self
            .params
            .iter()
            .map(|p| format!("{}={}", p.name, p.value))
            .collect();
        writeln!(f, "recipe {} ({})", self.recipe, params.join(" "))?;
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        writeln!(f)?;
        writeln!(f, "steps")?;
        for s in &self.steps {
            let mut line = format!("  {:>2} {:<16}", s.index, s.op);
            if let Some(b) = &s.block {
                write!(
                    line,
                    " {:<10} e={:<4} sigma={:<4} b1={:<3} symplectic={:<5} parity={}",
                    b,
                    opt(&s.euler),
                    opt(&s.signature),
                    opt(&s.b1),
                    opt(&s.symplectic),
                    opt(&s.parity)
                )?;
            }
            writeln!(f, "{}", line.trim_end())?;
        }
        if let Some(r) = &self.result {
            writeln!(f)?;
            writeln!(f, "result {}", r.block)?;
            writeln!(
                f,
                "  e={} sigma={} symplectic={} minimal={}",
                r.euler,
                r.signature,
                r.symplectic,
                opt(&r.minimal)
            )?;
            writeln!(f, "  parity {} ({})", r.parity, r.parity_note)?;
            if let Some(p) = &r.profile {
                let c = &p.char_numbers;
                writeln!(
                    f,
                    "  b1={} b2={} b2+={} b2-={}",
                    p.b1, p.b2, p.b2_plus, p.b2_minus
                )?;
                writeln!(f, "  chi_h={} c1^2={} bmy={}", c.chi_h, c.c1sq, c.on_bmy_line)?;
                writeln!(f, "  rational homology model {}", p.model)?;
            }
            if let Some(e) = &r.profile_error {
                writeln!(f, "  profile unavailable: {e}")?;
            }
        }
        if let Some(h) = &self.h1 {
            let flag = if h.lower_bound { " (lower bound)" } else { "" };
            writeln!(f, "  H1 = {}{flag}", h.group)?;
            if let Some(n) = &h.note {
                writeln!(f, "  {n}")?;
            }
        }
        if !self.values.is_empty() {
            writeln!(f)?;
            writeln!(f, "values")?;
            for v in &self.values {
                writeln!(f, "  {} = {}", v.name, v.value)?;
            }
        }
        if let Some(cs) = &self.cs {
            writeln!(f)?;
            writeln!(f, "lattice generators")?;
            for g in &cs.generators {
                writeln!(
                    f,
                    "  {} preserves A: {}  det = {}",
                    g.name, g.preserves_form, g.det
                )?;
            }
            writeln!(f, "  order of j modulo scalars: {}", opt(&cs.j_order_mod_scalars))?;
            for r in &cs.relations {
                match &r.witness {
                    Some(w) => writeln!(f, "  {}: holds with scalar {w}", r.relation)?,
                    None => {
                        writeln!(f, "  {}: NOT a scalar multiple; lhs*rhs^-1 =", r.relation)?;
                        for row in &r.quotient {
                            writeln!(f, "      [{}]", row.join(", "))?;
                        }
                    }
                }
            }
            writeln!(f, "  abelianization of the relations: {}", cs.abelianization)?;
        }
        if !self.discrepancies.is_empty() {
            writeln!(f)?;
            writeln!(f, "discrepancies")?;
            for d in &self.discrepancies {
                let stated: Vec<String> = d
                    .stated
                    .iter()
                    .map(|s| format!("{} {} [{}]", s.label, s.value, s.cite))
                    .collect();
                let flag = if d.flagged { "FLAG" } else { "ok" };
                writeln!(
                    f,
                    "  {flag} {}: computed {}; {}",
                    d.key,
                    d.computed,
                    stated.join("; ")
                )?;
            }
        }
        if !self.annotations.is_empty() {
            writeln!(f)?;
            writeln!(f, "annotations")?;
            for a in &self.annotations {
                match &a.block {
                    Some(b) => writeln!(f, "  {b}: {} [{}]", a.text, a.cite)?,
                    None => writeln!(f, "  {} [{}]", a.text, a.cite)?,
                }
            }
        }
        if !self.expectations.is_empty() {
            writeln!(f)?;
            writeln!(f, "expectations")?;
            for e in &self.expectations {
                let verdict = if e.passed { "PASS" } else { "FAIL" };
                writeln!(
                    f,
                    "  {verdict} {} = {} (got {}) [{}]",
                    e.key, e.expected, e.actual, e.cite
                )?;
            }
        }
        Ok(())
    }
}
