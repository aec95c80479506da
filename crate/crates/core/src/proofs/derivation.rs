//! Hilbert-style derivations: a text format and a checker.
//!
//! ```text
//! # system: BM-FOL
//! # expect: accepted
//! 1. []D P(a) -> []G P(a) ; schema Subsump {phi := P(a)}
//! 2. []D P(a) ; premise
//! 3. []G P(a) ; mp 2 1
//! ```
//!
//! Headers: `system:`, `expect: accepted` or `expect: rejected N`,
//! `constants:` (default `a b c`), `reverse-subsumption: on|off` and
//! `id-eq: on|off`. Justifications: `premise`, `taut`,
//! `schema NAME {param := value, ...}`, `mp i j`, `necD i`, `necG i`,
//! `gen i x`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::schema::{lookup, Instantiation, SchemaArg};
use super::system::{Base, SystemName, SystemSpec};
use super::taut::{tautology, TautVerdict};
use crate::formula::{alpha_eq, parse_with, Designated, Formula, Mode, ParseOptions, Signature, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct DerivationError {
    /// Line of the file.
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    Premise,
    Taut,
    Schema { id: String, args: Instantiation },
    Mp(usize, usize),
    Nec(Mode, usize),
    Gen(usize, Var),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub number: usize,
    pub file_line: usize,
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Expectation {
    Accepted,
    Rejected(usize),
}

#[derive(Debug, Clone)]
pub struct Derivation {
    pub system: Option<SystemSpec>,
    pub expect: Option<Expectation>,
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Accepted,
    /// `line` is the step number.
    Rejected { line: usize, reason: String },
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }

    pub fn matches(&self, e: Expectation) -> bool {
        match (self, e) {
            (Verdict::Accepted, Expectation::Accepted) => true,
            (Verdict::Rejected { line, .. }, Expectation::Rejected(n)) => *line == n,
            _ => false,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accepted => f.write_str("accepted"),
            Verdict::Rejected { line, reason } => write!(f, "rejected at line {line}: {reason}"),
        }
    }
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, DerivationError> {
    Err(DerivationError { line, message: message.into() })
}

fn on_off(line: usize, v: &str) -> Result<bool, DerivationError> {
    match v {
        "on" | "yes" | "true" => Ok(true),
        "off" | "no" | "false" => Ok(false),
        _ => err(line, format!("expected on or off, found '{v}'")),
    }
}

// Split at commas outside parentheses and braces.
fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out.into_iter().map(str::trim).filter(|p| !p.is_empty()).collect()
}

struct Reader {
    sig: Signature,
    opts: ParseOptions,
}

impl Reader {
    fn formula(&mut self, line: usize, text: &str) -> Result<Formula, DerivationError> {
        parse_with(text, &mut self.sig, &self.opts)
            .map_err(|e| DerivationError { line, message: format!("in '{text}': {e}") })
    }

    fn term(&self, line: usize, text: &str) -> Result<Term, DerivationError> {
        let ok = !text.is_empty() && text.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'');
        if !ok {
            return err(line, format!("'{text}' is not a term"));
        }
        Ok(if self.sig.is_constant(text) { Term::constant(text) } else { Term::var(text) })
    }

    fn number(&self, line: usize, s: Option<&str>) -> Result<usize, DerivationError> {
        s.and_then(|s| s.parse().ok()).ok_or_else(|| DerivationError { line, message: "expected a line number".into() })
    }

    fn justification(&mut self, line: usize, text: &str) -> Result<Justification, DerivationError> {
        let mut words = text.split_whitespace();
        let rule = words.next().unwrap_or("");
        let j = match rule {
            "premise" | "hyp" => Justification::Premise,
            "taut" => Justification::Taut,
            "mp" => Justification::Mp(self.number(line, words.next())?, self.number(line, words.next())?),
            "necD" | "necG" => {
                let m = if rule == "necD" { Mode::D } else { Mode::G };
                Justification::Nec(m, self.number(line, words.next())?)
            }
            "gen" => {
                let i = self.number(line, words.next())?;
                let Some(x) = words.next() else { return err(line, "gen needs a variable") };
                Justification::Gen(i, Var::new(x))
            }
            "schema" => {
                let rest = text["schema".len()..].trim();
                let (id, body) = match rest.find('{') {
                    Some(k) => {
                        let body = rest[k + 1..].trim_end();
                        let Some(body) = body.strip_suffix('}') else { return err(line, "missing '}'") };
                        (rest[..k].trim(), body)
                    }
                    None => (rest, ""),
                };
                if id.is_empty() {
                    return err(line, "schema needs a name");
                }
                let mut args = Instantiation::new();
                for part in split_top(body) {
                    let Some((k, v)) = part.split_once(":=") else {
                        return err(line, format!("expected 'param := value', found '{part}'"));
                    };
                    let (k, v) = (k.trim(), v.trim());
                    let arg = if matches!(k, "phi" | "psi" | "theta" | "chi") {
                        SchemaArg::Formula(self.formula(line, v)?)
                    } else {
                        SchemaArg::Term(self.term(line, v)?)
                    };
                    args.insert(k.to_string(), arg);
                }
                return Ok(Justification::Schema { id: id.to_string(), args });
            }
            _ => return err(line, format!("unknown justification '{rule}'")),
        };
        if let Some(extra) = words.next() {
            return err(line, format!("unexpected '{extra}' after {rule}"));
        }
        Ok(j)
    }
}

pub fn parse_derivation(text: &str) -> Result<Derivation, DerivationError> {
    let mut system: Option<SystemSpec> = None;
    let mut rs: Option<bool> = None;
    let mut id_eq: Option<bool> = None;
    let mut expect = None;
    let mut constants: Vec<String> = vec!["a".into(), "b".into(), "c".into()];
    let mut body: Vec<(usize, &str)> = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let t = raw.trim();
        if let Some(h) = t.strip_prefix('#') {
            let Some((key, val)) = h.split_once(':') else { continue };
            let val = val.trim();
            match key.trim() {
                "system" => {
                    let n: SystemName = val.parse().map_err(|m| DerivationError { line, message: m })?;
                    system = Some(SystemSpec::named(n));
                }
                "expect" => {
                    let mut w = val.split_whitespace();
                    expect = Some(match (w.next(), w.next()) {
                        (Some("accepted"), None) => Expectation::Accepted,
                        (Some("rejected"), Some(n)) => Expectation::Rejected(
                            n.parse().map_err(|_| DerivationError { line, message: format!("bad line number '{n}'") })?,
                        ),
                        _ => return err(line, "expected 'accepted' or 'rejected N'"),
                    });
                }
                "constants" => constants = val.split_whitespace().map(str::to_string).collect(),
                "reverse-subsumption" => rs = Some(on_off(line, val)?),
                "id-eq" => id_eq = Some(on_off(line, val)?),
                _ => {}
            }
            continue;
        }
        if !t.is_empty() {
            body.push((line, t));
        }
    }
    if let Some(s) = system.take() {
        let s = s.with_reverse_subsumption(rs.unwrap_or(false));
        system = Some(match id_eq {
            Some(on) => s.with_id_eq(on),
            None => s,
        });
    }

    let mut sig = Signature::new();
    sig.designate(Designated::Set).expect("fresh signature");
    sig.designate(Designated::Nat).expect("fresh signature");
    for c in &constants {
        sig.add_constant(c).map_err(|e| DerivationError { line: 1, message: e.to_string() })?;
    }
    let mut r = Reader { sig, opts: ParseOptions { infer_predicates: true, ..Default::default() } };

    let mut steps: Vec<Step> = Vec::new();
    for (line, t) in body {
        let Some((num, rest)) = t.split_once('.') else {
            return err(line, "expected 'n. formula ; justification'");
        };
        let number: usize = num.trim().parse().map_err(|_| DerivationError { line, message: format!("bad step number '{num}'") })?;
        if number != steps.len() + 1 {
            return err(line, format!("step {number} out of sequence, expected {}", steps.len() + 1));
        }
        let Some((ftext, jtext)) = rest.rsplit_once(';') else {
            return err(line, "missing '; justification'");
        };
        let formula = r.formula(line, ftext.trim())?;
        let justification = r.justification(line, jtext.trim())?;
        steps.push(Step { number, file_line: line, formula, justification });
    }
    Ok(Derivation { system, expect, steps })
}

fn reject(line: usize, reason: impl Into<String>) -> Verdict {
    Verdict::Rejected { line, reason: reason.into() }
}

/// Check each step in `system`. The first failing step is reported.
pub fn check_derivation(d: &Derivation, system: &SystemSpec) -> Verdict {
    // premises each step depends on
    let mut deps: Vec<BTreeSet<usize>> = Vec::new();
    for s in &d.steps {
        let n = s.number;
        let f = &s.formula;
        for m in f.modes() {
            if !system.has_modality(m) {
                return reject(n, format!("{f} uses []{m}, which is not in the language of {}", system.name));
            }
        }
        if f.is_plural() && !system.plural {
            return reject(n, format!("{f} is plural, and {} is a singular system", system.name));
        }
        let earlier = |i: usize| -> Result<&Step, Verdict> {
            if i == 0 || i >= n {
                Err(reject(n, format!("line {i} is not an earlier line")))
            } else {
                Ok(&d.steps[i - 1])
            }
        };
        let dep: Result<BTreeSet<usize>, Verdict> = (|| match &s.justification {
            Justification::Premise => Ok([n].into()),
            Justification::Taut => {
                if system.base != Base::Classical {
                    return Err(reject(n, format!("taut is not a rule of {}", system.name)));
                }
                match tautology(f) {
                    TautVerdict::Tautology => Ok(BTreeSet::new()),
                    TautVerdict::Falsified(_) => Err(reject(n, format!("{f} is not a tautology"))),
                    TautVerdict::TooManyAtoms(k) => Err(reject(n, format!("too many propositional atoms ({k})"))),
                }
            }
            Justification::Schema { id, args } => {
                let Some(schema) = lookup(id) else {
                    return Err(reject(n, format!("unknown schema {id}")));
                };
                if !system.has_schema(schema.id) {
                    return Err(reject(n, format!("schema {id} is not in {}", system.name)));
                }
                let inst = schema.instantiate(args).map_err(|e| reject(n, e.to_string()))?;
                if !alpha_eq(&inst, f) {
                    return Err(reject(n, format!("{f} is not the instance {inst} of {id}")));
                }
                Ok(BTreeSet::new())
            }
            Justification::Mp(i, j) => {
                let (a, b) = (earlier(*i)?, earlier(*j)?);
                let fits = |ant: &Formula, imp: &Formula| {
                    matches!(imp, Formula::Implies(p, q) if alpha_eq(p, ant) && alpha_eq(q, f))
                };
                if !fits(&a.formula, &b.formula) && !fits(&b.formula, &a.formula) {
                    return Err(reject(n, format!("modus ponens on lines {i} and {j} does not give {f}")));
                }
                Ok(deps[i - 1].union(&deps[j - 1]).copied().collect())
            }
            Justification::Nec(m, i) => {
                if !system.has_modality(*m) {
                    return Err(reject(n, format!("nec{m} is not a rule of {}", system.name)));
                }
                let a = earlier(*i)?;
                if !deps[i - 1].is_empty() {
                    return Err(reject(n, format!("nec{m} applied to line {i}, which depends on premises")));
                }
                if !alpha_eq(f, &Formula::nec(*m, a.formula.clone())) {
                    return Err(reject(n, format!("{f} is not []{m} of line {i}")));
                }
                Ok(BTreeSet::new())
            }
            Justification::Gen(i, x) => {
                let a = earlier(*i)?;
                for p in &deps[i - 1] {
                    if d.steps[p - 1].formula.is_free(x) {
                        return Err(reject(n, format!("{x} is free in premise {p}")));
                    }
                }
                if !alpha_eq(f, &Formula::forall(x.clone(), a.formula.clone())) {
                    return Err(reject(n, format!("{f} is not the generalization of line {i} on {x}")));
                }
                Ok(deps[i - 1].clone())
            }
        })();
        match dep {
            Ok(dep) => deps.push(dep),
            Err(v) => return v,
        }
    }
    Verdict::Accepted
}

impl Derivation {
    /// Check in the declared system.
    pub fn check(&self) -> Result<Verdict, String> {
        match &self.system {
            Some(s) => Ok(check_derivation(self, s)),
            None => Err("no '# system:' header".into()),
        }
    }

    /// Premises of the last step, by step number, when accepted.
    pub fn conclusion(&self) -> Option<&Formula> {
        self.steps.last().map(|s| &s.formula)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(text: &str) -> Verdict {
        parse_derivation(text).unwrap().check().unwrap()
    }

    #[test]
    fn subsumption_then_modus_ponens() {
        let v = run("# system: BM-FOL\n\
            1. []D P(a) -> []G P(a) ; schema Subsump {phi := P(a)}\n\
            2. []D P(a) ; premise\n\
            3. []G P(a) ; mp 2 1\n");
        assert_eq!(v, Verdict::Accepted);
    }

    #[test]
    fn necessitation_needs_premise_free_line() {
        let v = run("# system: BM-FOL\n1. P(a) ; premise\n2. []D P(a) ; necD 1\n");
        assert!(matches!(v, Verdict::Rejected { line: 2, .. }), "{v}");
    }

    #[test]
    fn schema_membership_and_language() {
        let v = run("# system: BM-FOL\n1. P(a) -> []D <>D P(a) ; schema B-D {phi := P(a)}\n");
        assert_eq!(v, reject(1, "schema B-D is not in BM-FOL"));
        let v = run("# system: BM-FOL\n1. P(a) -> []D <>D P(a) ; schema B {phi := P(a)}\n");
        assert_eq!(v, reject(1, "unknown schema B"));
        let v = run("# system: S4.2-I-FOL\n1. []D P(a) -> P(a) ; schema T-D {phi := P(a)}\n");
        assert!(matches!(v, Verdict::Rejected { line: 1, ref reason } if reason.contains("language")), "{v}");
        let v = run("# system: I-FOL\n1. P(a) | ~P(a) ; taut\n");
        assert_eq!(v, reject(1, "taut is not a rule of I-FOL"));
    }

    #[test]
    fn generalization_respects_premises() {
        let ok = run("# system: S4-FOL\n1. P(x) | ~P(x) ; taut\n2. forall x (P(x) | ~P(x)) ; gen 1 x\n");
        assert_eq!(ok, Verdict::Accepted);
        let bad = run("# system: S4-FOL\n1. P(x) ; premise\n2. forall x P(x) ; gen 1 x\n");
        assert!(matches!(bad, Verdict::Rejected { line: 2, .. }));
    }

    #[test]
    fn instance_compared_up_to_bound_renaming() {
        let v = run("# system: BM-FOL\n\
            1. []D forall y P(y) -> forall z []D P(z) ; schema CBF-D {phi := P(x)}\n");
        assert_eq!(v, Verdict::Accepted);
        let v = run("# system: BM-FOL\n1. []D P(a) -> []G P(b) ; schema Subsump {phi := P(a)}\n");
        assert!(matches!(v, Verdict::Rejected { line: 1, .. }));
    }

    #[test]
    fn syntax_errors_cite_file_lines() {
        let e = parse_derivation("# system: BM-FOL\n1. P(a) ; premise\n3. P(a) ; premise\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_derivation("# system: BM-FOL\n1. P(a) ; frobnicate\n").unwrap_err();
        assert_eq!(e.line, 2);
    }
}
