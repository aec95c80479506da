//! Plain-text model files.
//!
//! ```text
//! # a two-world chain
//! worlds: w0 w1
//! leqD: w0<=w1
//! leqG:
//! dom w0: a
//! dom w1: a b
//! pred Q: p
//! interp w1 P: (a) (b)
//! interp w1 Q: ({a b})
//! flags: no-g-stable
//! ```
//!
//! Reflexive pairs are added to both relations. Predicates and their sorts
//! are inferred from `interp` lines unless declared with `pred`.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::frame::{ones, BimodalFrame, ModelError, Violation};
use super::model::{BimodalModel, ModelFlags, Value};
use crate::formula::{Mode, PredDecl, Sort};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FileError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, FileError> {
    Err(FileError { line, message: message.into() })
}

/// Where things were declared, for pointing validation failures at lines.
#[derive(Debug, Clone, Default)]
pub struct SourceMap {
    worlds: usize,
    rel: HashMap<Mode, usize>,
    pairs: HashMap<(Mode, String, String), usize>,
    dom: HashMap<String, usize>,
    interp: HashMap<(String, String), usize>,
}

impl SourceMap {
    /// The line most responsible for a violation.
    pub fn locate(&self, v: &Violation) -> usize {
        let rel = |m: Mode, a: &str, b: &str| {
            self.pairs
                .get(&(m, a.to_string(), b.to_string()))
                .or_else(|| self.rel.get(&m))
                .copied()
                .unwrap_or(self.worlds)
        };
        let interp = |w: &str, p: &str| self.interp.get(&(w.to_string(), p.to_string())).copied();
        match v {
            Violation::NotReflexive { .. } => self.worlds,
            Violation::NotTransitive { rel: m, b, c, .. } => rel(*m, b, c),
            Violation::NotConvergent { a, b, .. }
            | Violation::GNotInD { a, b }
            | Violation::NotMixedConvergent { a, b, .. }
            | Violation::NoBackWitness { a, b, .. } => rel(Mode::G, a, b),
            Violation::NoForthWitness { a, b, .. } => rel(Mode::D, a, b),
            Violation::DomainNotMonotone { b, .. } => self.dom.get(b).copied().unwrap_or(self.worlds),
            Violation::OutsideDomain { pred, world, .. } => interp(world, pred).unwrap_or(self.worlds),
            Violation::NotStable { pred, a, b, .. } | Violation::NotPersistent { pred, a, b, .. } => {
                interp(b, pred).or_else(|| interp(a, pred)).unwrap_or(self.worlds)
            }
        }
    }
}

/// A parsed model with its source map.
#[derive(Debug, Clone)]
pub struct ModelFile {
    pub model: BimodalModel,
    pub source: SourceMap,
}

impl ModelFile {
    /// Validation failures as `line N: message` strings.
    pub fn violations(&self) -> Vec<String> {
        super::model::validate_model(&self.model)
            .violations
            .iter()
            .map(|v| format!("line {}: {v}", self.source.locate(v)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum RawValue {
    Ind(String),
    Plural(Vec<String>),
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn parse_tuples(line: usize, text: &str) -> Result<Vec<Vec<RawValue>>, FileError> {
    let mut tokens = Vec::new();
    let mut cur = String::new();
    for c in text.chars() {
        if "(){},".contains(c) || c.is_whitespace() {
            if !cur.is_empty() {
                tokens.push(std::mem::take(&mut cur));
            }
            if !c.is_whitespace() {
                tokens.push(c.to_string());
            }
        } else {
            cur.push(c);
        }
    }
    if !cur.is_empty() {
        tokens.push(cur);
    }
    let mut out = Vec::new();
    let mut it = tokens.into_iter().peekable();
    while let Some(t) = it.next() {
        if t != "(" {
            return err(line, format!("expected '(' to start a tuple, found '{t}'"));
        }
        let mut tuple = Vec::new();
        loop {
            match it.next().as_deref() {
                Some(")") => break,
                Some(",") => continue,
                Some("{") => {
                    let mut members = Vec::new();
                    loop {
                        match it.next().as_deref() {
                            Some("}") => break,
                            Some(",") => continue,
                            Some(n) if is_name(n) => members.push(n.to_string()),
                            Some(o) => return err(line, format!("unexpected '{o}' in plurality")),
                            None => return err(line, "unterminated plurality"),
                        }
                    }
                    tuple.push(RawValue::Plural(members));
                }
                Some(n) if is_name(n) => tuple.push(RawValue::Ind(n.to_string())),
                Some(o) => return err(line, format!("unexpected '{o}' in tuple")),
                None => return err(line, "unterminated tuple"),
            }
        }
        out.push(tuple);
    }
    Ok(out)
}

fn parse_sort(line: usize, s: &str) -> Result<Sort, FileError> {
    match s {
        "s" | "singular" => Ok(Sort::Singular),
        "p" | "plural" => Ok(Sort::Plural),
        _ => err(line, format!("unknown sort '{s}' (use s or p)")),
    }
}

fn model_err(line: usize, e: ModelError) -> FileError {
    FileError { line, message: e.to_string() }
}

/// Parse a model file. Structural problems are errors; frame and model
/// conditions are checked separately, see [`ModelFile::violations`].
pub fn parse_model(text: &str) -> Result<ModelFile, FileError> {
    let mut src = SourceMap::default();
    let mut worlds: Option<Vec<String>> = None;
    let mut individuals: Vec<String> = Vec::new();
    let mut pairs: Vec<(usize, Mode, String, String)> = Vec::new();
    let mut doms: Vec<(usize, String, Vec<String>)> = Vec::new();
    let mut interps: Vec<(usize, String, String, Vec<Vec<RawValue>>)> = Vec::new();
    let mut decls: Vec<(usize, PredDecl)> = Vec::new();
    let mut flags = ModelFlags::default();

    let add_ind = |inds: &mut Vec<String>, n: &str| {
        if !inds.iter().any(|d| d == n) {
            inds.push(n.to_string());
        }
    };

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let Some((head, rest)) = body.split_once(':') else {
            return err(line, format!("expected 'keyword: ...', found '{body}'"));
        };
        let head: Vec<&str> = head.split_whitespace().collect();
        let rest = rest.trim();
        match head.as_slice() {
            ["worlds"] => {
                if worlds.is_some() {
                    return err(line, "worlds declared twice");
                }
                let ws: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if let Some(bad) = ws.iter().find(|w| !is_name(w)) {
                    return err(line, format!("bad world name '{bad}'"));
                }
                worlds = Some(ws);
                src.worlds = line;
            }
            ["individuals"] => {
                for n in rest.split_whitespace() {
                    if !is_name(n) {
                        return err(line, format!("bad individual name '{n}'"));
                    }
                    add_ind(&mut individuals, n);
                }
            }
            ["leqD"] | ["leqG"] => {
                let m = if head[0] == "leqD" { Mode::D } else { Mode::G };
                src.rel.entry(m).or_insert(line);
                for p in rest.split_whitespace() {
                    let Some((a, b)) = p.split_once("<=") else {
                        return err(line, format!("expected 'u<=v', found '{p}'"));
                    };
                    pairs.push((line, m, a.to_string(), b.to_string()));
                }
            }
            ["dom", w] => {
                let ds: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                for d in &ds {
                    if !is_name(d) {
                        return err(line, format!("bad individual name '{d}'"));
                    }
                    add_ind(&mut individuals, d);
                }
                doms.push((line, w.to_string(), ds));
            }
            ["interp", w, p] => {
                let tuples = parse_tuples(line, rest)?;
                for t in &tuples {
                    for v in t {
                        match v {
                            RawValue::Ind(d) => add_ind(&mut individuals, d),
                            RawValue::Plural(ds) => ds.iter().for_each(|d| add_ind(&mut individuals, d)),
                        }
                    }
                }
                interps.push((line, w.to_string(), p.to_string(), tuples));
            }
            ["pred", p] => {
                let sorts = rest.split_whitespace().map(|s| parse_sort(line, s)).collect::<Result<Vec<_>, _>>()?;
                decls.push((line, PredDecl::new(p, &sorts)));
            }
            ["flags"] => {
                for fl in rest.split_whitespace() {
                    let (on, name) = match fl.strip_prefix("no-") {
                        Some(n) => (false, n),
                        None => (true, fl),
                    };
                    match name {
                        "g-stable" => flags.g_stable_atoms = on,
                        "d-stable" => flags.d_stable_atoms = on,
                        "decidable-identity" => flags.decidable_identity = on,
                        _ => return err(line, format!("unknown flag '{fl}'")),
                    }
                }
            }
            _ => return err(line, format!("unknown keyword '{}'", head.join(" "))),
        }
    }

    let Some(worlds) = worlds else {
        return err(1, "missing 'worlds:' line");
    };
    let mut fr = BimodalFrame::new(worlds, individuals).map_err(|e| model_err(src.worlds.max(1), e))?;
    let world = |fr: &BimodalFrame, line: usize, w: &str| {
        fr.world_index(w).ok_or_else(|| FileError { line, message: format!("unknown world '{w}'") })
    };
    for (line, m, a, b) in &pairs {
        let (i, j) = (world(&fr, *line, a)?, world(&fr, *line, b)?);
        fr.add_leq(*m, i, j);
        src.pairs.insert((*m, a.clone(), b.clone()), *line);
    }
    let mut seen_dom = HashMap::new();
    for (line, w, ds) in &doms {
        let i = world(&fr, *line, w)?;
        if let Some(prev) = seen_dom.insert(i, *line) {
            return err(*line, format!("domain of {w} already given on line {prev}"));
        }
        let mask = ds.iter().fold(0u64, |acc, d| acc | 1 << fr.individual_index(d).expect("collected"));
        fr.set_dom(i, mask);
        src.dom.insert(w.clone(), *line);
    }

    // Predicate sorts: declarations first, then inferred from tuples.
    let mut preds: Vec<PredDecl> = Vec::new();
    let mut pred_line: HashMap<String, usize> = HashMap::new();
    for (line, d) in decls {
        if pred_line.contains_key(&d.name) {
            return err(line, format!("predicate {} declared twice", d.name));
        }
        pred_line.insert(d.name.clone(), line);
        preds.push(d);
    }
    for (line, _, p, tuples) in &interps {
        for t in tuples {
            let sorts: Vec<Sort> = t
                .iter()
                .map(|v| if matches!(v, RawValue::Ind(_)) { Sort::Singular } else { Sort::Plural })
                .collect();
            match preds.iter().find(|d| &d.name == p) {
                Some(d) if d.sorts != sorts => {
                    let shape: Vec<String> = d.sorts.iter().map(|s| s.to_string()).collect();
                    return err(*line, format!("{p} takes arguments ({}) here", shape.join(", ")));
                }
                Some(_) => {}
                None => {
                    pred_line.insert(p.clone(), *line);
                    preds.push(PredDecl::new(p, &sorts));
                }
            }
        }
    }

    let mut m = BimodalModel::new(fr, preds, flags).map_err(|e| model_err(src.worlds.max(1), e))?;
    for (line, w, p, tuples) in &interps {
        let wi = world(m.frame(), *line, w)?;
        let Some(pi) = m.pred_index(p) else { continue };
        src.interp.entry((w.clone(), p.clone())).or_insert(*line);
        for t in tuples {
            let vals: Vec<Value> = t
                .iter()
                .map(|v| match v {
                    RawValue::Ind(d) => Value::Ind(m.frame().individual_index(d).expect("collected")),
                    RawValue::Plural(ds) => Value::Plural(
                        ds.iter().fold(0, |acc, d| acc | 1 << m.frame().individual_index(d).expect("collected")),
                    ),
                })
                .collect();
            m.set(pi, wi, &vals, true).map_err(|e| model_err(*line, e))?;
        }
    }
    Ok(ModelFile { model: m, source: src })
}

/// Render a model in the file format; [`parse_model`] reads it back.
pub fn render_model(m: &BimodalModel) -> String {
    let fr = m.frame();
    let mut out = String::new();
    let _ = writeln!(out, "worlds: {}", fr.worlds().join(" "));
    if fr.used_individuals().count_ones() as usize != fr.individual_count() {
        let _ = writeln!(out, "individuals: {}", fr.individuals().join(" "));
    }
    for md in [Mode::D, Mode::G] {
        let mut pairs = Vec::new();
        for a in 0..fr.world_count() {
            for b in ones(fr.succ(md, a)) {
                if a != b {
                    pairs.push(format!("{}<={}", fr.world_name(a), fr.world_name(b)));
                }
            }
        }
        let _ = writeln!(out, "leq{md}: {}", pairs.join(" "));
    }
    for w in 0..fr.world_count() {
        let names: Vec<&str> = ones(fr.dom(w)).map(|d| fr.individual_name(d)).collect();
        let _ = writeln!(out, "dom {}: {}", fr.world_name(w), names.join(" "));
    }
    for (p, d) in m.preds().iter().enumerate() {
        let sorts: Vec<&str> = d.sorts.iter().map(|s| if *s == Sort::Singular { "s" } else { "p" }).collect();
        let _ = writeln!(out, "pred {}: {}", d.name, sorts.join(" "));
        for w in 0..fr.world_count() {
            let tuples: Vec<String> = m.tuples(p, w).iter().map(|t| m.tuple_name(t)).collect();
            if !tuples.is_empty() {
                let _ = writeln!(out, "interp {} {}: {}", fr.world_name(w), d.name, tuples.join(" "));
            }
        }
    }
    let f = m.flags();
    let flag = |on: bool, name: &str| if on { name.to_string() } else { format!("no-{name}") };
    let _ = writeln!(
        out,
        "flags: {} {} {}",
        flag(f.g_stable_atoms, "g-stable"),
        flag(f.d_stable_atoms, "d-stable"),
        flag(f.decidable_identity, "decidable-identity")
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const CHAIN: &str = "\
# P(a) appears later
worlds: w0 w1
leqD: w0<=w1
leqG:
dom w0: a
dom w1: a b
interp w1 P: (a)
interp w1 Q: ({a b}, b)
flags: no-g-stable
";

    #[test]
    fn parse_and_round_trip() {
        let f = parse_model(CHAIN).unwrap();
        let m = &f.model;
        assert_eq!(m.frame().world_count(), 2);
        assert!(m.frame().leq(Mode::D, 0, 1) && m.frame().leq(Mode::G, 1, 1) && !m.frame().leq(Mode::G, 0, 1));
        assert!(m.holds(0, 1, &[Value::Ind(0)]));
        assert!(m.holds(1, 1, &[Value::Plural(0b11), Value::Ind(1)]));
        assert!(f.violations().is_empty(), "{:?}", f.violations());
        let again = parse_model(&render_model(m)).unwrap();
        assert_eq!(&again.model, m);
    }

    #[test]
    fn violations_cite_lines() {
        let text = "worlds: w0 w1\nleqD: w0<=w1\ndom w0: a b\ndom w1: a\n";
        let f = parse_model(text).unwrap();
        assert_eq!(f.violations(), vec!["line 4: domain of w0 contains b but domain of w1 does not, although w0 <=D w1"]);
        let f = parse_model("worlds: w0 w1\nleqG: w0<=w1\n").unwrap();
        assert!(f.violations().iter().any(|v| v.starts_with("line 2: w0 <=G w1 but not")));
    }

    #[test]
    fn structural_errors() {
        assert_eq!(parse_model("worlds: w0\nleqD: w0<=w9\n").unwrap_err().line, 2);
        assert_eq!(parse_model("worlds: w0\nfoo: 1\n").unwrap_err().line, 2);
        assert_eq!(parse_model("worlds: w0\ninterp w0 P: (a)\ninterp w0 P: (a, a)\n").unwrap_err().line, 3);
        assert_eq!(parse_model("worlds: w0\ninterp w0 P: (a\n").unwrap_err().line, 2);
    }
}
