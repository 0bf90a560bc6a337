use std::collections::BTreeMap;
use std::fmt;

use super::RecipeError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    /// Unquoted token: an integer expression, a parameter or an identifier.
    Bare(String),
    Quoted(String),
}

impl Value {
    pub fn text(&self) -> &str {
        match self {
            Value::Bare(s) | Value::Quoted(s) => s,
        }
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bare(s) => f.write_str(s),
            Value::Quoted(s) => f.write_str(&quote(s)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Step {
    pub op: String,
    pub args: Vec<(String, Value)>,
    pub line: usize,
}

impl PartialEq for Step {
    fn eq(&self, other: &Self) -> bool {
        self.op == other.op && self.args == other.args
    }
}

impl Eq for Step {}

impl Step {
    pub fn arg(&self, key: &str) -> Option<&Value> {
        self.args.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub key: String,
    pub value: Value,
    pub cite: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Param {
    pub name: String,
    pub value: i64,
}

/// A parsed recipe. Equality ignores source line numbers.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Recipe {
    pub name: String,
    pub notes: Vec<String>,
    pub params: Vec<Param>,
    pub steps: Vec<Step>,
    pub expects: Vec<Expectation>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Kind {
    Int,
    Ident,
    Text,
}

pub(crate) struct ArgSpec {
    pub key: &'static str,
    pub kind: Kind,
    pub required: bool,
}

const fn req(key: &'static str, kind: Kind) -> ArgSpec {
    ArgSpec {
        key,
        kind,
        required: true,
    }
}

const fn opt(key: &'static str, kind: Kind) -> ArgSpec {
    ArgSpec {
        key,
        kind,
        required: false,
    }
}

use Kind::{Ident, Int, Text};

pub(crate) fn step_signature(op: &str) -> Option<&'static [ArgSpec]> {
    Some(match op {
        "product" => const { &[req("name", Ident), req("g", Int), req("h", Int)] },
        "builtin" => const { &[req("name", Ident), req("block", Ident), opt("n", Int)] },
        "complement" => const { &[req("target", Ident), req("family", Ident), opt("n", Int)] },
        "surface" => {
            const {
                &[
                    req("target", Ident),
                    req("label", Text),
                    req("genus", Int),
                    req("square", Int),
                    opt("k", Int),
                    opt("fiber", Ident),
                ]
            }
        }
        "blow_up" => const { &[req("target", Ident), opt("through", Text), opt("mult", Int)] },
        "surgery" => {
            const {
                &[
                    req("target", Ident),
                    req("torus", Text),
                    req("meridian", Text),
                    req("push_off", Text),
                    opt("sign", Int),
                    opt("num", Int),
                    opt("den", Int),
                ]
            }
        }
        "surgeries" => {
            const {
                &[
                    req("target", Ident),
                    req("family", Ident),
                    opt("n", Int),
                    opt("m", Int),
                    opt("p", Int),
                    opt("q", Int),
                ]
            }
        }
        "fiber_sum" => {
            const {
                &[
                    req("a", Ident),
                    req("sa", Text),
                    req("b", Ident),
                    req("sb", Text),
                    req("into", Ident),
                    opt("count", Int),
                    opt("meridian_a", Text),
                    opt("meridian_b", Text),
                    opt("rational", Text),
                    opt("identify", Text),
                    opt("sew", Text),
                ]
            }
        }
        "rational_trivial" => const { &[req("target", Ident), req("gens", Text)] },
        "parity" => {
            const {
                &[
                    req("target", Ident),
                    req("value", Ident),
                    opt("note", Text),
                    req("cite", Text),
                ]
            }
        }
        "annotate" => const { &[opt("target", Ident), req("text", Text), req("cite", Text)] },
        "stated" => {
            const {
                &[
                    req("key", Text),
                    req("value", Text),
                    req("label", Ident),
                    req("cite", Text),
                ]
            }
        }
        "adjunction" => const { &[req("name", Ident), req("square", Int), req("k", Int)] },
        "cs_verify" => const { &[] },
        "result" => const { &[req("target", Ident)] },
        _ => return None,
    })
}

/// Lower bounds for parameters. `n` depends on the recipe family.
pub(crate) fn param_minimum(recipe: &str, param: &str) -> Option<i64> {
    match (recipe, param) {
        ("Yn" | "Zn", "n") => Some(2),
        (_, "n" | "m" | "p" | "q") => Some(1),
        _ => None,
    }
}

/// Evaluates `4*n+8`, `12*n`, `-1`, `p` over the given parameters.
pub fn eval_int(expr: &str, params: &BTreeMap<String, i64>) -> Result<i64, String> {
    let expr = expr.trim();
    if expr.is_empty() {
        return Err("empty expression".into());
    }
    let mut total: i64 = 0;
    let mut term = String::new();
    let mut sign = 1;
    let flush = |term: &str, sign: i64, total: &mut i64| -> Result<(), String> {
        let mut product: i64 = 1;
        for factor in term.split('*') {
            let f = factor.trim();
            let v = match f.parse::<i64>() {
                Ok(v) => v,
                Err(_) => *params
                    .get(f)
                    .ok_or_else(|| format!("`{f}` is neither an integer nor a parameter"))?,
            };
            product = product.checked_mul(v).ok_or("overflow")?;
        }
        *total = total.checked_add(sign * product).ok_or("overflow")?;
        Ok(())
    };
    for (i, c) in expr.chars().enumerate() {
        if (c == '+' || c == '-') && !term.trim().is_empty() {
            flush(&term, sign, &mut total)?;
            term.clear();
            sign = if c == '-' { -1 } else { 1 };
        } else if (c == '+' || c == '-') && term.trim().is_empty() {
            if i > 0 && !term.is_empty() {
                return Err(format!("bad expression `{expr}`"));
            }
            if c == '-' {
                sign = -sign;
            }
        } else {
            term.push(c);
        }
    }
    if term.trim().is_empty() {
        return Err(format!("bad expression `{expr}`"));
    }
    flush(&term, sign, &mut total)?;
    Ok(total)
}

struct Token {
    text: String,
    quoted: bool,
    col: usize,
}

fn lex(line: &str, line_no: usize) -> Result<Vec<Token>, RecipeError> {
    let mut out = Vec::new();
    let mut chars = line.chars().enumerate().peekable();
    while let Some(&(col, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let mut text = String::new();
        let mut quoted = false;
        while let Some(&(_, c)) = chars.peek() {
            if c.is_whitespace() {
                break;
            }
            chars.next();
            if c != '"' {
                text.push(c);
                continue;
            }
            quoted = true;
            loop {
                match chars.next() {
                    None => {
                        return Err(RecipeError::Syntax {
                            line: line_no,
                            col: col + 1,
                            message: "unterminated string".into(),
                        })
                    }
                    Some((_, '"')) => break,
                    Some((_, '\\')) => match chars.next() {
                        Some((_, e)) => text.push(e),
                        None => {
                            return Err(RecipeError::Syntax {
                                line: line_no,
                                col: col + 1,
                                message: "dangling escape".into(),
                            })
                        }
                    },
                    Some((_, ch)) => text.push(ch),
                }
            }
        }
        out.push(Token {
            text,
            quoted,
            col: col + 1,
        });
    }
    Ok(out)
}

impl Recipe {
    pub fn param_map(&self) -> BTreeMap<String, i64> {
        self.params.iter().map(|p| (p.name.clone(), p.value)).collect()
    }

    /// Replaces declared parameter values, re-checking their ranges.
    pub fn with_params(&self, overrides: &[(String, i64)]) -> Result<Recipe, RecipeError> {
        let mut r = self.clone();
        for (k, v) in overrides {
            let p = r
                .params
                .iter_mut()
                .find(|p| &p.name == k)
                .ok_or_else(|| RecipeError::UnknownParameter(k.clone()))?;
            p.value = *v;
        }
        r.check_ranges(0)?;
        Ok(r)
    }

    fn check_ranges(&self, line: usize) -> Result<(), RecipeError> {
        for p in &self.params {
            if let Some(min) = param_minimum(&self.name, &p.name) {
                if p.value < min {
                    return Err(RecipeError::ParameterOutOfRange {
                        line,
                        col: 1,
                        param: p.name.clone(),
                        value: p.value,
                        min,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Recipe, RecipeError> {
        let mut r = Recipe::default();
        let mut seen_header = false;
        let mut param_lines = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
                continue;
            }
            let toks = lex(raw, line_no)?;
            let syntax = |col: usize, message: &str| RecipeError::Syntax {
                line: line_no,
                col,
                message: message.to_string(),
            };
            let head = &toks[0];
            if !seen_header && head.text != "recipe" {
                return Err(syntax(head.col, "expected `recipe <name>` first"));
            }
            match head.text.as_str() {
                "recipe" => {
                    if seen_header {
                        return Err(syntax(head.col, "second `recipe` line"));
                    }
                    match toks.as_slice() {
                        [_, name] if !name.quoted => r.name = name.text.clone(),
                        _ => return Err(syntax(head.col, "expected `recipe <name>`")),
                    }
                    seen_header = true;
                }
                "note" => match toks.as_slice() {
                    [_, t] if t.quoted => r.notes.push(t.text.clone()),
                    _ => return Err(syntax(head.col, "expected `note \"<text>\"`")),
                },
                "param" => match toks.as_slice() {
                    [_, name, eq, value] if eq.text == "=" && !eq.quoted => {
                        let v = value
                            .text
                            .parse::<i64>()
                            .map_err(|_| syntax(value.col, "parameter value must be an integer"))?;
                        if r.params.iter().any(|p| p.name == name.text) {
                            return Err(syntax(name.col, "parameter declared twice"));
                        }
                        r.params.push(Param {
                            name: name.text.clone(),
                            value: v,
                        });
                        param_lines.push((line_no, value.col));
                    }
                    _ => return Err(syntax(head.col, "expected `param <name> = <int>`")),
                },
                "step" => {
                    let op = toks.get(1).ok_or_else(|| syntax(head.col, "missing step name"))?;
                    let sig = step_signature(&op.text).ok_or_else(|| RecipeError::UnknownStep {
                        line: line_no,
                        col: op.col,
                        op: op.text.clone(),
                    })?;
                    let mut args: Vec<(String, Value)> = Vec::new();
                    for t in &toks[2..] {
                        let (k, v) = t
                            .text
                            .split_once('=')
                            .ok_or_else(|| syntax(t.col, "expected key=value"))?;
                        let spec = sig.iter().find(|s| s.key == k).ok_or_else(|| {
                            syntax(t.col, &format!("`{}` takes no argument `{k}`", op.text))
                        })?;
                        if args.iter().any(|(a, _)| a == k) {
                            return Err(syntax(t.col, &format!("argument `{k}` repeated")));
                        }
                        let value = if t.quoted {
                            Value::Quoted(v.to_string())
                        } else {
                            Value::Bare(v.to_string())
                        };
                        if spec.kind != Kind::Text && t.quoted {
                            return Err(syntax(t.col, &format!("argument `{k}` must not be quoted")));
                        }
                        if v.is_empty() {
                            return Err(syntax(t.col, &format!("argument `{k}` is empty")));
                        }
                        args.push((k.to_string(), value));
                    }
                    if let Some(missing) = sig
                        .iter()
                        .find(|s| s.required && !args.iter().any(|(k, _)| k == s.key))
                    {
                        return Err(syntax(
                            op.col,
                            &format!("step `{}` is missing `{}`", op.text, missing.key),
                        ));
                    }
                    r.steps.push(Step {
                        op: op.text.clone(),
                        args,
                        line: line_no,
                    });
                }
                "expect" => match toks.as_slice() {
                    [_, key, eq, value, cite, reference]
                        if eq.text == "=" && cite.text == "cite" && reference.quoted =>
                    {
                        r.expects.push(Expectation {
                            key: key.text.clone(),
                            value: if value.quoted {
                                Value::Quoted(value.text.clone())
                            } else {
                                Value::Bare(value.text.clone())
                            },
                            cite: reference.text.clone(),
                        });
                    }
                    _ => {
                        return Err(syntax(
                            head.col,
                            "expected `expect <key> = <value> cite \"<ref>\"`",
                        ))
                    }
                },
                other => return Err(syntax(head.col, &format!("unknown directive `{other}`"))),
            }
        }
        if !seen_header {
            return Err(RecipeError::Syntax {
                line: 1,
                col: 1,
                message: "empty recipe".into(),
            });
        }
        r.check_int_args()?;
        for (p, (line, col)) in r.params.iter().zip(&param_lines) {
            if let Some(min) = param_minimum(&r.name, &p.name) {
                if p.value < min {
                    return Err(RecipeError::ParameterOutOfRange {
                        line: *line,
                        col: *col,
                        param: p.name.clone(),
                        value: p.value,
                        min,
                    });
                }
            }
        }
        Ok(r)
    }

    // Integer arguments must be expressions over declared parameters.
    fn check_int_args(&self) -> Result<(), RecipeError> {
        let params = self.param_map();
        for s in &self.steps {
            let sig = step_signature(&s.op).expect("validated while parsing");
            for (k, v) in &s.args {
                let spec = sig.iter().find(|a| a.key == k).expect("validated while parsing");
                if spec.kind == Kind::Int {
                    eval_int(v.text(), &params).map_err(|message| RecipeError::Syntax {
                        line: s.line,
                        col: 1,
                        message: format!("argument `{k}`: {message}"),
                    })?;
                }
            }
        }
        Ok(())
    }
}

/// Canonical text: parsing it returns an equal recipe.
impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "recipe {}", self.name)?;
        for n in &self.notes {
            writeln!(f, "note {}", quote(n))?;
        }
        for p in &self.params {
            writeln!(f, "param {} = {}", p.name, p.value)?;
        }
        for s in &self.steps {
            write!(f, "step {}", s.op)?;
            for (k, v) in &s.args {
                write!(f, " {k}={v}")?;
            }
            writeln!(f)?;
        }
        for e in &self.expects {
            writeln!(f, "expect {} = {} cite {}", e.key, e.value, quote(&e.cite))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn expressions() {
        let p = params(&[("n", 3), ("m", 2)]);
        assert_eq!(eval_int("4*n+8", &p), Ok(20));
        assert_eq!(eval_int("12*n", &p), Ok(36));
        assert_eq!(eval_int("-1", &p), Ok(-1));
        assert_eq!(eval_int("+1", &p), Ok(1));
        assert_eq!(eval_int("4*n-4", &p), Ok(8));
        assert_eq!(eval_int("n*m-n", &p), Ok(3));
        assert!(eval_int("k", &p).is_err());
        assert!(eval_int("n+", &p).is_err());
        assert!(eval_int("", &p).is_err());
        assert!(eval_int("2**n", &p).is_err());
    }

    const SAMPLE: &str = r#"
# comment
recipe demo
note "a \"quoted\" note"
param n = 3
step product name=P g=2 h=n
step surgery target=P torus="a1'xc1'" meridian="[b1^-1,d1^-1]" push_off=a1 sign=-1
expect P.euler = 4*n-4 cite "§2.1"
"#;

    #[test]
    fn parse_and_round_trip() {
        let r = Recipe::parse(SAMPLE).unwrap();
        assert_eq!(r.name, "demo");
        assert_eq!(r.notes, vec!["a \"quoted\" note".to_string()]);
        assert_eq!(r.steps.len(), 2);
        assert_eq!(
            r.steps[1].arg("meridian"),
            Some(&Value::Quoted("[b1^-1,d1^-1]".into()))
        );
        let again = Recipe::parse(&r.to_string()).unwrap();
        assert_eq!(again, r);
        assert_eq!(again.to_string(), r.to_string());
    }

    fn err(text: &str) -> RecipeError {
        Recipe::parse(text).unwrap_err()
    }

    #[test]
    fn unknown_step_has_location() {
        assert_eq!(
            err("recipe x\nstep frobnicate a=1"),
            RecipeError::UnknownStep {
                line: 2,
                col: 6,
                op: "frobnicate".into()
            }
        );
    }

    #[test]
    fn missing_surface_label_is_syntax_error() {
        let e = err("recipe x\nstep fiber_sum a=A b=B sb=H into=X");
        assert!(matches!(e, RecipeError::Syntax { line: 2, col: 6, .. }), "{e:?}");
    }

    #[test]
    fn parameter_ranges() {
        assert!(matches!(
            err("recipe Yn\nparam n = 1"),
            RecipeError::ParameterOutOfRange { line: 2, min: 2, .. }
        ));
        assert!(matches!(
            err("recipe X1\nparam p = 0"),
            RecipeError::ParameterOutOfRange { .. }
        ));
        let r = Recipe::parse("recipe Yn\nparam n = 2").unwrap();
        assert!(r.with_params(&[("n".into(), 1)]).is_err());
        assert!(r.with_params(&[("k".into(), 1)]).is_err());
        assert_eq!(r.with_params(&[("n".into(), 5)]).unwrap().params[0].value, 5);
    }

    #[test]
    fn other_syntax_errors() {
        for text in [
            "",
            "step product name=P g=1 h=1",
            "recipe x\nrecipe y",
            "recipe x\nparam n = two",
            "recipe x\nstep product name=P g=1 h=1 g=2",
            "recipe x\nstep product name=P g=k h=1",
            "recipe x\nstep product name=P g=1 h=1 z=1",
            "recipe x\nstep product name=P g=1 h",
            "recipe x\nexpect P.euler = 1",
            "recipe x\nnote \"unterminated",
            "recipe x\nwhat",
        ] {
            assert!(
                matches!(Recipe::parse(text), Err(RecipeError::Syntax { .. })),
                "{text}"
            );
        }
    }
}
