use std::collections::BTreeMap;

use crate::cyclotomic::{cs_relation_report, RelationReport};
use crate::geography::{
    adjunction_genus, blow_up, cs_surface, fiber_sum, homology_profile, mumford_blown_up, mumford_m,
    product_block, torus_surgery, Block, GeoError, GluingSpec, Parity, TrackedSurface,
};
use crate::presentation::{
    torsion_lower_bound_note, y1_complement, y1_surgeries, y_n_complement, y_n_surgeries, z_n_complement,
    z_n_surgeries, SurgeryCoefficient, SurgeryDatum, Word,
};
use num_bigint::BigInt;

use super::parse::{eval_int, Recipe, Step, Value};
use super::report::{
    Annotation, Discrepancy, ExpectationResult, H1Result, NamedValue, Report, ResultSummary, StatedValue,
    StepSnapshot,
};
use super::{RunError, StepError};

enum Computed {
    Int(i64),
    Bool(bool),
    Text(String),
    /// Satisfied by any `n` with `Z/n` in the torsion.
    Torsion(crate::lattice::AbelianGroup),
}

impl Computed {
    fn display(&self) -> String {
        match self {
            Computed::Int(v) => v.to_string(),
            Computed::Bool(b) => b.to_string(),
            Computed::Text(t) => t.clone(),
            Computed::Torsion(g) => format!("torsion of {g}"),
        }
    }

    /// Whether `expected` (resolved against `params`) matches.
    fn matches(&self, expected: &Value, params: &BTreeMap<String, i64>) -> Result<bool, String> {
        Ok(match self {
            Computed::Int(v) => eval_int(expected.text(), params)? == *v,
            Computed::Bool(b) => match expected.text() {
                "true" => *b,
                "false" => !*b,
                other => return Err(format!("`{other}` is not a boolean")),
            },
            Computed::Text(t) => expected.text() == t,
            Computed::Torsion(g) => {
                let n = eval_int(expected.text(), params)?;
                g.torsion_contains_cyclic(&BigInt::from(n))
            }
        })
    }
}

struct Runner<'r> {
    recipe: &'r Recipe,
    params: BTreeMap<String, i64>,
    blocks: BTreeMap<String, Block>,
    current: Option<String>,
    values: Vec<NamedValue>,
    cs: Option<RelationReport>,
    discrepancies: Vec<Discrepancy>,
    annotations: Vec<Annotation>,
}

fn bad(key: &str, message: impl Into<String>) -> StepError {
    StepError::BadArgument {
        key: key.to_string(),
        message: message.into(),
    }
}

impl Runner<'_> {
    fn int(&self, step: &Step, key: &str) -> Result<Option<i64>, StepError> {
        step.arg(key)
            .map(|v| eval_int(v.text(), &self.params).map_err(|m| bad(key, m)))
            .transpose()
    }

    fn int_or(&self, step: &Step, key: &str, default: i64) -> Result<i64, StepError> {
        Ok(self.int(step, key)?.unwrap_or(default))
    }

    fn positive(&self, step: &Step, key: &str, default: i64) -> Result<i64, StepError> {
        let v = self.int_or(step, key, default)?;
        if v < 1 {
            return Err(bad(key, format!("must be at least 1, got {v}")));
        }
        Ok(v)
    }

    fn genus(&self, step: &Step, key: &str) -> Result<u32, StepError> {
        let v = self.int_or(step, key, 0)?;
        u32::try_from(v).map_err(|_| bad(key, format!("genus must be nonnegative, got {v}")))
    }

    fn text<'s>(&self, step: &'s Step, key: &str) -> Option<&'s str> {
        step.arg(key).map(Value::text)
    }

    fn req<'s>(&self, step: &'s Step, key: &str) -> &'s str {
        self.text(step, key)
            .expect("required arguments are checked by the parser")
    }

    fn word(&self, step: &Step, key: &str) -> Result<Option<Word>, StepError> {
        self.text(step, key)
            .map(|s| Word::parse(s).map_err(|e| bad(key, e.to_string())))
            .transpose()
    }

    fn block(&self, name: &str) -> Result<&Block, StepError> {
        self.blocks
            .get(name)
            .ok_or_else(|| StepError::MissingBlock(name.to_string()))
    }

    fn store(&mut self, name: &str, mut block: Block) -> Result<(), StepError> {
        block.name = name.to_string();
        block.validate()?;
        self.blocks.insert(name.to_string(), block);
        self.current = Some(name.to_string());
        Ok(())
    }

    fn family_n(&self, step: &Step) -> Result<u32, StepError> {
        let n = self
            .int(step, "n")?
            .or_else(|| self.params.get("n").copied())
            .unwrap_or(2);
        if n < 2 {
            return Err(bad("n", format!("family needs n >= 2, got {n}")));
        }
        Ok(n as u32)
    }

    fn exec(&mut self, step: &Step) -> Result<(), StepError> {
        match step.op.as_str() {
            "product" => {
                let b = product_block(self.genus(step, "g")?, self.genus(step, "h")?);
                self.store(self.req(step, "name"), b)?;
            }
            "builtin" => {
                let b = match self.req(step, "block") {
                    "mumford" => mumford_m(),
                    "mumford_blown_up" => mumford_blown_up(),
                    "cs" => cs_surface(self.positive(step, "n", 1)? as u32),
                    other => return Err(bad("block", format!("no built-in block `{other}`"))),
                };
                self.store(self.req(step, "name"), b)?;
            }
            "complement" => {
                let target = self.req(step, "target");
                let p = match self.req(step, "family") {
                    "Yn" => y_n_complement(self.family_n(step)?),
                    "Zn" => z_n_complement(self.family_n(step)?),
                    "Y1" => y1_complement(),
                    other => return Err(bad("family", format!("unknown family `{other}`"))),
                };
                let mut b = self.block(target)?.clone();
                b.b1 = Some(p.b1());
                b.presentation = Some(p);
                b.provenance
                    .push("complement presentation of the surgery tori".into());
                self.store(target, b)?;
            }
            "surface" => {
                let target = self.req(step, "target");
                let k = self.int(step, "k")?;
                let mut s = TrackedSurface::new(
                    self.req(step, "label"),
                    self.genus(step, "genus")?,
                    self.int_or(step, "square", 0)?,
                    k,
                );
                s.fiber = match self.text(step, "fiber") {
                    None | Some("false") => false,
                    Some("true") => true,
                    Some(other) => return Err(bad("fiber", format!("`{other}` is not a boolean"))),
                };
                let b = self.block(target)?.clone().with_surface(s)?;
                self.store(target, b)?;
            }
            "blow_up" => {
                let target = self.req(step, "target");
                let mult = self.int_or(step, "mult", 1)?;
                let mult = u32::try_from(mult).map_err(|_| bad("mult", "must be nonnegative"))?;
                let through = self.text(step, "through").map(|s| (s, mult));
                let b = blow_up(self.block(target)?, through)?;
                self.store(target, b)?;
            }
            "surgery" => {
                let target = self.req(step, "target");
                let sign = self.int_or(step, "sign", 1)?;
                if sign != 1 && sign != -1 {
                    return Err(bad("sign", "must be +1 or -1"));
                }
                let coefficient = SurgeryCoefficient::signed(
                    sign,
                    self.positive(step, "num", 1)?,
                    self.positive(step, "den", 1)?,
                );
                let datum = SurgeryDatum::new(
                    self.req(step, "torus"),
                    self.word(step, "meridian")?.expect("required"),
                    self.word(step, "push_off")?.expect("required"),
                    coefficient,
                );
                self.surgeries(target, &[datum])?;
            }
            "surgeries" => {
                let target = self.req(step, "target");
                let m = self.positive(step, "m", *self.params.get("m").unwrap_or(&1))?;
                let data = match self.req(step, "family") {
                    "Yn" => y_n_surgeries(self.family_n(step)?, m),
                    "Zn" => z_n_surgeries(self.family_n(step)?, m),
                    "Y1" => {
                        let p = self.positive(step, "p", *self.params.get("p").unwrap_or(&1))?;
                        let q = self.positive(step, "q", *self.params.get("q").unwrap_or(&1))?;
                        y1_surgeries(p, q, m)
                    }
                    other => return Err(bad("family", format!("unknown family `{other}`"))),
                };
                self.surgeries(target, &data)?;
            }
            "fiber_sum" => self.fiber_sum(step)?,
            "rational_trivial" => {
                let target = self.req(step, "target");
                let gens: Vec<&str> = self.req(step, "gens").split_whitespace().collect();
                let mut b = self.block(target)?.clone();
                let p = b
                    .presentation
                    .as_ref()
                    .ok_or_else(|| GeoError::MissingPresentation(target.to_string()))?
                    .attach_rationally_trivial_side(&gens)?;
                b.b1 = Some(p.b1());
                b.presentation = Some(p);
                self.store(target, b)?;
            }
            "parity" => {
                let target = self.req(step, "target");
                let parity = match self.req(step, "value") {
                    "odd" => Parity::Odd,
                    "even" => Parity::Even,
                    "unknown" => Parity::Unknown,
                    other => return Err(bad("value", format!("unknown parity `{other}`"))),
                };
                let cite = self.req(step, "cite").to_string();
                let note = self.text(step, "note").unwrap_or("asserted").to_string();
                let mut b = self.block(target)?.clone();
                b.set_parity(parity, &format!("{note} [{cite}]"));
                self.annotations.push(Annotation {
                    block: Some(target.to_string()),
                    text: format!("parity {parity}: {note}"),
                    cite,
                });
                self.store(target, b)?;
            }
            "annotate" => {
                let block = self.text(step, "target").map(String::from);
                if let Some(b) = &block {
                    self.block(b)?;
                }
                let annotation = Annotation {
                    block: block.clone(),
                    text: self.req(step, "text").to_string(),
                    cite: self.req(step, "cite").to_string(),
                };
                if let Some(b) = &block {
                    let blk = self.blocks.get_mut(b).expect("checked");
                    blk.annotations.push(annotation.text.clone());
                }
                self.annotations.push(annotation);
            }
            "stated" => {
                let key = self.req(step, "key").to_string();
                let computed = self.lookup(&key).map_err(|m| bad("key", m))?;
                let value = Value::Bare(self.req(step, "value").to_string());
                let agrees = computed
                    .matches(&value, &self.params)
                    .map_err(|m| bad("value", m))?;
                let shown = match eval_int(value.text(), &self.params) {
                    Ok(v) if value.text().parse::<i64>().is_err() => format!("{} = {v}", value.text()),
                    _ => value.text().to_string(),
                };
                let stated = StatedValue {
                    label: self.req(step, "label").to_string(),
                    value: shown,
                    cite: self.req(step, "cite").to_string(),
                    agrees,
                };
                match self.discrepancies.iter_mut().find(|d| d.key == key) {
                    Some(d) => {
                        d.flagged |= !agrees;
                        d.stated.push(stated);
                    }
                    None => self.discrepancies.push(Discrepancy {
                        key,
                        computed: computed.display(),
                        flagged: !agrees,
                        stated: vec![stated],
                    }),
                }
            }
            "adjunction" => {
                let g = adjunction_genus(self.int_or(step, "square", 0)?, self.int_or(step, "k", 0)?)?;
                self.values.push(NamedValue {
                    name: self.req(step, "name").to_string(),
                    value: i64::from(g),
                });
            }
            "cs_verify" => self.cs = Some(cs_relation_report()),
            "result" => {
                let target = self.req(step, "target");
                self.block(target)?;
                self.current = Some(target.to_string());
            }
            other => unreachable!("parser admitted unknown step `{other}`"),
        }
        Ok(())
    }

    fn surgeries(&mut self, target: &str, data: &[SurgeryDatum]) -> Result<(), StepError> {
        let before = self.block(target)?.clone();
        let mut b = before.clone();
        for d in data {
            b = torus_surgery(&b, d)?;
        }
        if (b.euler, b.signature) != (before.euler, before.signature) {
            return Err(StepError::Invariant("torus surgery changed e or sigma".into()));
        }
        self.store(target, b)
    }

    fn fiber_sum(&mut self, step: &Step) -> Result<(), StepError> {
        let a = self.block(self.req(step, "a"))?.clone();
        let b = self.block(self.req(step, "b"))?.clone();
        let (sa, sb) = (self.req(step, "sa"), self.req(step, "sb"));
        let count = self.positive(step, "count", 1)?;
        let mut gluing = GluingSpec {
            meridian_a: self.word(step, "meridian_a")?,
            meridian_b: self.word(step, "meridian_b")?,
            ..Default::default()
        };
        if let Some(gens) = self.text(step, "rational") {
            gluing.rationally_trivial = gens.split_whitespace().map(String::from).collect();
        }
        if let Some(pairs) = self.text(step, "identify") {
            for pair in pairs.split(',') {
                let (x, y) = pair
                    .split_once('=')
                    .ok_or_else(|| bad("identify", format!("`{pair}` is not `x=y`")))?;
                let parse = |s: &str| Word::parse(s.trim()).map_err(|e| bad("identify", e.to_string()));
                gluing.identify.push((parse(x)?, parse(y)?));
            }
        }
        if let Some(pairs) = self.text(step, "sew") {
            for pair in pairs.split(',') {
                let (x, y) = pair
                    .split_once(':')
                    .ok_or_else(|| bad("sew", format!("`{pair}` is not `a:b`")))?;
                gluing.sew.push((x.trim().to_string(), y.trim().to_string()));
            }
        }
        let mut out = a;
        for _ in 0..count {
            out = fiber_sum(&out, sa, &b, sb, &gluing)?;
        }
        self.store(self.req(step, "into"), out)
    }

    fn result_block(&self) -> Option<&Block> {
        self.current.as_ref().and_then(|n| self.blocks.get(n))
    }

    fn lookup(&self, key: &str) -> Result<Computed, String> {
        let parts: Vec<&str> = key.split('.').collect();
        match parts.as_slice() {
            ["cs", field] => {
                let cs = self.cs.as_ref().ok_or("no cs_verify step ran")?;
                Ok(match *field {
                    "generators_preserve_form" => Computed::Bool(cs.all_generators_preserve_form()),
                    "relations_verified" => Computed::Int(cs.verified_relations() as i64),
                    "j_order" => Computed::Int(cs.j_order_mod_scalars.map_or(-1, i64::from)),
                    "abelianization" => Computed::Text(cs.abelianization.to_string()),
                    other => return Err(format!("unknown cs field `{other}`")),
                })
            }
            ["value", name] => self
                .values
                .iter()
                .rev()
                .find(|v| v.name == *name)
                .map(|v| Computed::Int(v.value))
                .ok_or_else(|| format!("no value `{name}`")),
            [block, surface, field] => {
                let b = self
                    .blocks
                    .get(*block)
                    .ok_or_else(|| format!("no block `{block}`"))?;
                let s = b.surface(surface).map_err(|e| e.to_string())?;
                match *field {
                    "genus" => Ok(Computed::Int(i64::from(s.genus))),
                    "square" => Ok(Computed::Int(s.square)),
                    "k" => s
                        .k_pairing
                        .map(Computed::Int)
                        .ok_or_else(|| "K.S unknown".to_string()),
                    other => Err(format!("unknown surface field `{other}`")),
                }
            }
            [block, field] => {
                let b = self
                    .blocks
                    .get(*block)
                    .ok_or_else(|| format!("no block `{block}`"))?;
                block_field(b, field)
            }
            [field] => block_field(self.result_block().ok_or("no result block")?, field),
            _ => Err(format!("cannot resolve key `{key}`")),
        }
    }
}

fn block_field(b: &Block, field: &str) -> Result<Computed, String> {
    let c = b.char_numbers();
    let profile = || homology_profile(b).map_err(|e| e.to_string());
    let h1 = || {
        b.presentation
            .as_ref()
            .map(|p| p.h1())
            .ok_or_else(|| format!("block `{}` has no presentation", b.name))
    };
    Ok(match field {
        "euler" => Computed::Int(b.euler),
        "signature" => Computed::Int(b.signature),
        "b1" => Computed::Int(b.b1.ok_or("b1 unknown")? as i64),
        "chi_h" => Computed::Text(c.chi_h.to_string()),
        "c1sq" => Computed::Int(c.c1sq),
        "bmy" => Computed::Bool(c.on_bmy_line),
        "symplectic" => Computed::Bool(b.symplectic),
        "minimal" => Computed::Bool(b.minimal.ok_or("minimality unknown")?),
        "parity" => Computed::Text(b.parity.to_string()),
        "model" => Computed::Text(profile()?.model),
        "b2" => Computed::Int(profile()?.b2),
        "b2_plus" => Computed::Int(profile()?.b2_plus),
        "b2_minus" => Computed::Int(profile()?.b2_minus),
        "h1" => Computed::Text(h1()?.to_string()),
        "h1_rank" => Computed::Int(h1()?.rank as i64),
        "torsion_contains" => Computed::Torsion(h1()?),
        other => return Err(format!("unknown field `{other}`")),
    })
}

fn snapshot(index: usize, step: &Step, block: Option<&Block>) -> StepSnapshot {
    StepSnapshot {
        index,
        op: step.op.clone(),
        block: block.map(|b| b.name.clone()),
        euler: block.map(|b| b.euler),
        signature: block.map(|b| b.signature),
        b1: block.and_then(|b| b.b1),
        symplectic: block.map(|b| b.symplectic),
        parity: block.map(|b| b.parity.to_string()),
    }
}

/// Executes every step, then evaluates the expectations.
pub fn run_recipe(recipe: &Recipe) -> Result<Report, RunError> {
    let mut runner = Runner {
        recipe,
        params: recipe.param_map(),
        blocks: BTreeMap::new(),
        current: None,
        values: Vec::new(),
        cs: None,
        discrepancies: Vec::new(),
        annotations: Vec::new(),
    };
    let mut steps = Vec::new();
    for (i, step) in recipe.steps.iter().enumerate() {
        runner.exec(step).map_err(|source| RunError {
            step: i + 1,
            line: step.line,
            op: step.op.clone(),
            source,
        })?;
        let touched = touched_block(step).and_then(|n| runner.blocks.get(n));
        steps.push(snapshot(i + 1, step, touched));
    }

    let expectations = recipe
        .expects
        .iter()
        .map(|e| {
            let (actual, passed) = match runner.lookup(&e.key) {
                Ok(c) => match c.matches(&e.value, &runner.params) {
                    Ok(ok) => (c.display(), ok),
                    Err(m) => (format!("error: {m}"), false),
                },
                Err(m) => (format!("error: {m}"), false),
            };
            ExpectationResult {
                key: e.key.clone(),
                expected: e.value.text().to_string(),
                actual,
                passed,
                cite: e.cite.clone(),
            }
        })
        .collect();

    let result = runner.result_block().map(|b| {
        let (profile, profile_error) = match homology_profile(b) {
            Ok(p) => (Some(p), None),
            Err(e) => (None, Some(e.to_string())),
        };
        ResultSummary {
            block: b.name.clone(),
            euler: b.euler,
            signature: b.signature,
            symplectic: b.symplectic,
            minimal: b.minimal,
            parity: b.parity.to_string(),
            parity_note: b.parity_note.clone(),
            profile,
            profile_error,
        }
    });
    let h1 = runner
        .result_block()
        .and_then(|b| b.presentation.as_ref())
        .map(|p| H1Result::new(&p.h1(), torsion_lower_bound_note(p)));

    Ok(Report {
        recipe: runner.recipe.name.clone(),
        params: recipe
            .params
            .iter()
            .map(|p| NamedValue {
                name: p.name.clone(),
                value: p.value,
            })
            .collect(),
        notes: recipe.notes.clone(),
        steps,
        result,
        h1,
        values: runner.values,
        cs: runner.cs,
        discrepancies: runner.discrepancies,
        annotations: runner.annotations,
        expectations,
    })
}

fn touched_block(step: &Step) -> Option<&str> {
    match step.op.as_str() {
        "adjunction" | "cs_verify" | "stated" => None,
        "fiber_sum" => step.arg("into").map(Value::text),
        _ => step.arg("target").or_else(|| step.arg("name")).map(Value::text),
    }
}
