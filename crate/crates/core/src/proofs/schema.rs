//! Axiom schemas as templates over metavariables.
//!
//! A template is an ordinary formula in which `phi`, `psi`, `theta` and
//! `chi` are zero-place atoms standing for formulas, `t` and `s` stand for
//! singular terms, and the listed variables may be renamed. Variables bound
//! by the template but not listed are renamed apart from the arguments.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::LazyLock;

use thiserror::Error;

use crate::formula::{
    parse_with, substitute, Designated, Formula, ParseOptions, Signature, Sort, Term, Var,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("unknown schema {0}")]
    Unknown(String),
    #[error("schema {schema} needs a value for {param}")]
    Missing { schema: String, param: String },
    #[error("schema {schema} has no parameter {param}")]
    Extra { schema: String, param: String },
    #[error("{param} must be {expected}")]
    WrongKind { param: String, expected: String },
    #[error("side condition of {schema} fails: {message}")]
    SideCondition { schema: String, message: String },
}

/// A value for a schema parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchemaArg {
    Formula(Formula),
    Term(Term),
}

pub type Instantiation = BTreeMap<String, SchemaArg>;

/// How a schema enters the inventories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Group {
    Propositional,
    Quantifier,
    Identity,
    Modal,
    IntModal,
    MinimalPlural,
    Rigidity,
    Comprehension,
    /// Not an axiom of any named system.
    Extra,
}

type Derive = fn(&Bindings) -> Result<Vec<(&'static str, Formula)>, String>;
type Check = fn(&Bindings) -> Result<(), String>;

pub struct Schema {
    pub id: &'static str,
    pub template: &'static str,
    pub params: &'static [&'static str],
    pub group: Group,
    derive: Option<Derive>,
    check: Option<Check>,
    display: Option<&'static str>,
}

impl Schema {
    /// The schema in the concrete syntax, with substitutions written
    /// `phi[t/x]`.
    pub fn display(&self) -> &'static str {
        self.display.unwrap_or(self.template)
    }

    pub fn instantiate(&self, args: &Instantiation) -> Result<Formula, SchemaError> {
        let b = Bindings::new(self, args)?;
        if let Some(check) = self.check {
            check(&b).map_err(|message| SchemaError::SideCondition { schema: self.id.into(), message })?;
        }
        let mut b = b;
        if let Some(derive) = self.derive {
            let extra = derive(&b).map_err(|message| SchemaError::SideCondition { schema: self.id.into(), message })?;
            b.formulas.extend(extra.into_iter().map(|(k, f)| (k.to_string(), f)));
        }
        let template = parse_template(self.template);
        let mut avoid: BTreeSet<Var> = BTreeSet::new();
        for f in b.formulas.values() {
            avoid.extend(f.all_vars());
        }
        for t in b.terms.values() {
            if let Term::Var(v) = t {
                avoid.insert(v.clone());
            }
        }
        avoid.extend(b.vars.values().cloned());
        let mut rename = b.vars.clone();
        for v in template.all_vars() {
            if !rename.contains_key(&v) && !b.terms.contains_key(&v) {
                let fresh = v.fresh(&avoid);
                avoid.insert(fresh.clone());
                rename.insert(v, fresh);
            }
        }
        Ok(fill(&template, &b.formulas, &b.terms, &rename))
    }
}

fn is_formula_param(p: &str) -> bool {
    matches!(p, "phi" | "psi" | "theta" | "chi")
}

fn is_term_param(p: &str) -> bool {
    matches!(p, "t" | "s")
}

/// Parameter values, with defaults filled in: a variable parameter
/// defaults to itself.
pub struct Bindings {
    pub formulas: BTreeMap<String, Formula>,
    terms: BTreeMap<Var, Term>,
    vars: BTreeMap<Var, Var>,
}

impl Bindings {
    fn new(s: &Schema, args: &Instantiation) -> Result<Self, SchemaError> {
        let mut b = Bindings { formulas: BTreeMap::new(), terms: BTreeMap::new(), vars: BTreeMap::new() };
        for k in args.keys() {
            if !s.params.contains(&k.as_str()) {
                return Err(SchemaError::Extra { schema: s.id.into(), param: k.clone() });
            }
        }
        for &p in s.params {
            let arg = args.get(p);
            if is_formula_param(p) {
                match arg {
                    Some(SchemaArg::Formula(f)) => {
                        b.formulas.insert(p.into(), f.clone());
                    }
                    Some(_) => return Err(SchemaError::WrongKind { param: p.into(), expected: "a formula".into() }),
                    None => return Err(SchemaError::Missing { schema: s.id.into(), param: p.into() }),
                }
            } else if is_term_param(p) {
                let t = match arg {
                    Some(SchemaArg::Term(t)) if t.sort() == Sort::Singular => t.clone(),
                    Some(_) => {
                        return Err(SchemaError::WrongKind { param: p.into(), expected: "a singular term".into() })
                    }
                    None => Term::Var(Var::new(p)),
                };
                b.terms.insert(Var::new(p), t);
            } else {
                let v = Var::new(p);
                let val = match arg {
                    Some(SchemaArg::Term(Term::Var(u))) if u.sort() == v.sort() => u.clone(),
                    Some(_) => {
                        return Err(SchemaError::WrongKind {
                            param: p.into(),
                            expected: format!("a {} variable", v.sort()),
                        })
                    }
                    None => v.clone(),
                };
                b.vars.insert(v, val);
            }
        }
        Ok(b)
    }

    pub fn f(&self, p: &str) -> &Formula {
        &self.formulas[p]
    }

    pub fn v(&self, p: &str) -> Var {
        self.vars[&Var::new(p)].clone()
    }

    pub fn t(&self, p: &str) -> Term {
        match self.terms.get(&Var::new(p)) {
            Some(t) => t.clone(),
            None => Term::Var(self.v(p)),
        }
    }

    fn distinct(&self, ps: &[&str]) -> Result<(), String> {
        let vs: Vec<Var> = ps.iter().map(|p| self.v(p)).collect();
        for (i, a) in vs.iter().enumerate() {
            if vs[i + 1..].contains(a) {
                return Err(format!("{} must be distinct", ps.join(", ")));
            }
        }
        Ok(())
    }

    fn not_free(&self, v: &str, f: &str) -> Result<(), String> {
        let var = self.v(v);
        if self.f(f).is_free(&var) {
            Err(format!("{var} must not be free in {}", self.f(f)))
        } else {
            Ok(())
        }
    }
}

fn subst(b: &Bindings, f: &str, v: &str, t: Term) -> Result<Formula, String> {
    substitute(b.f(f), &b.v(v), &t).map_err(|e| e.to_string())
}

fn fill(f: &Formula, fs: &BTreeMap<String, Formula>, ts: &BTreeMap<Var, Term>, vs: &BTreeMap<Var, Var>) -> Formula {
    let var = |v: &Var| vs.get(v).cloned().unwrap_or_else(|| v.clone());
    let term = |t: &Term| match t {
        Term::Var(v) => ts.get(v).cloned().unwrap_or_else(|| Term::Var(var(v))),
        c => c.clone(),
    };
    let rec = |g: &Formula| fill(g, fs, ts, vs);
    match f {
        Formula::Atom(p, args) if args.is_empty() && fs.contains_key(p) => fs[p].clone(),
        Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(term).collect()),
        Formula::Eq(a, b) => Formula::Eq(term(a), term(b)),
        Formula::Prec(t, xx) => Formula::Prec(term(t), var(xx)),
        Formula::Not(a) => Formula::not(rec(a)),
        Formula::And(a, b) => Formula::and(rec(a), rec(b)),
        Formula::Or(a, b) => Formula::or(rec(a), rec(b)),
        Formula::Implies(a, b) => Formula::implies(rec(a), rec(b)),
        Formula::Nec(m, a) => Formula::nec(*m, rec(a)),
        Formula::Poss(m, a) => Formula::poss(*m, rec(a)),
        Formula::Forall(v, a) => Formula::forall(var(v), rec(a)),
        Formula::Exists(v, a) => Formula::exists(var(v), rec(a)),
    }
}

fn parse_template(text: &str) -> Formula {
    let mut sig = Signature::new();
    sig.designate(Designated::Set).expect("fresh signature");
    sig.designate(Designated::Nat).expect("fresh signature");
    let opts = ParseOptions { infer_predicates: true, ..Default::default() };
    parse_with(text, &mut sig, &opts).unwrap_or_else(|e| panic!("bad template {text}: {e}"))
}

macro_rules! schema {
    ($id:expr, $group:ident, $t:expr, [$($p:expr),*]) => {
        Schema { id: $id, template: $t, params: &[$($p),*], group: Group::$group, derive: None, check: None, display: None }
    };
    ($id:expr, $group:ident, $t:expr, [$($p:expr),*], check = $c:expr) => {
        Schema { id: $id, template: $t, params: &[$($p),*], group: Group::$group, derive: None, check: Some($c), display: None }
    };
    ($id:expr, $group:ident, $t:expr, [$($p:expr),*], derive = $d:expr, display = $disp:expr) => {
        Schema { id: $id, template: $t, params: &[$($p),*], group: Group::$group, derive: Some($d), check: None, display: Some($disp) }
    };
}

static CATALOG: LazyLock<Vec<Schema>> = LazyLock::new(|| {
    vec![
        schema!("I1", Propositional, "phi -> (psi -> phi)", ["phi", "psi"]),
        schema!("I2", Propositional, "(phi -> psi) -> ((phi -> (psi -> chi)) -> (phi -> chi))", ["phi", "psi", "chi"]),
        schema!("I3", Propositional, "phi -> (psi -> phi & psi)", ["phi", "psi"]),
        schema!("I4", Propositional, "phi & psi -> phi", ["phi", "psi"]),
        schema!("I5", Propositional, "phi & psi -> psi", ["phi", "psi"]),
        schema!("I6", Propositional, "phi -> phi | psi", ["phi", "psi"]),
        schema!("I7", Propositional, "psi -> phi | psi", ["phi", "psi"]),
        schema!("I8", Propositional, "(phi -> chi) -> ((psi -> chi) -> (phi | psi -> chi))", ["phi", "psi", "chi"]),
        schema!("I9", Propositional, "(phi -> psi) -> ((phi -> ~psi) -> ~phi)", ["phi", "psi"]),
        schema!("I10", Propositional, "~phi -> (phi -> psi)", ["phi", "psi"]),
        // quantifiers
        schema!("UI", Quantifier, "forall x phi -> phi_t", ["phi", "x", "t"],
            derive = |b| Ok(vec![("phi_t", subst(b, "phi", "x", b.t("t"))?)]),
            display = "forall x phi -> phi[t/x]"),
        schema!("EG", Quantifier, "phi_t -> exists x phi", ["phi", "x", "t"],
            derive = |b| Ok(vec![("phi_t", subst(b, "phi", "x", b.t("t"))?)]),
            display = "phi[t/x] -> exists x phi"),
        schema!("Q-All", Quantifier, "forall x (psi -> phi) -> (psi -> forall x phi)", ["phi", "psi", "x"],
            check = |b| b.not_free("x", "psi")),
        schema!("Q-Ex", Quantifier, "forall x (phi -> psi) -> (exists x phi -> psi)", ["phi", "psi", "x"],
            check = |b| b.not_free("x", "psi")),
        // identity
        schema!("Eq-Refl", Identity, "t = t", ["t"]),
        schema!("Eq-Subst", Identity, "t = s -> (phi_t -> phi_s)", ["phi", "x", "t", "s"],
            derive = |b| Ok(vec![("phi_t", subst(b, "phi", "x", b.t("t"))?), ("phi_s", subst(b, "phi", "x", b.t("s"))?)]),
            display = "t = s -> (phi[t/x] -> phi[s/x])"),
        schema!("ID=", Identity, "forall x forall y (x = y | ~x = y)", []),
        schema!("Stb-eq-D", Identity, "t = s -> []D t = s", ["t", "s"]),
        schema!("Stb-neq-D", Identity, "~t = s -> []D ~t = s", ["t", "s"]),
        // classical modal logic
        schema!("K-D", Modal, "[]D (phi -> psi) -> ([]D phi -> []D psi)", ["phi", "psi"]),
        schema!("T-D", Modal, "[]D phi -> phi", ["phi"]),
        schema!("4-D", Modal, "[]D phi -> []D []D phi", ["phi"]),
        schema!("Dual-D", Modal, "<>D phi <-> ~[]D ~phi", ["phi"]),
        schema!("K-G", Modal, "[]G (phi -> psi) -> ([]G phi -> []G psi)", ["phi", "psi"]),
        schema!("T-G", Modal, "[]G phi -> phi", ["phi"]),
        schema!("4-G", Modal, "[]G phi -> []G []G phi", ["phi"]),
        schema!(".2-G", Modal, "<>G []G phi -> []G <>G phi", ["phi"]),
        schema!("Dual-G", Modal, "<>G phi <-> ~[]G ~phi", ["phi"]),
        schema!("CBF-D", Modal, "[]D forall x phi -> forall x []D phi", ["phi", "x"]),
        schema!("CBF-G", Modal, "[]G forall x phi -> forall x []G phi", ["phi", "x"]),
        schema!("Subsump", Modal, "[]D phi -> []G phi", ["phi"]),
        schema!("Mixed.2", Modal, "<>G []D phi -> []D <>G phi", ["phi"]),
        schema!("Stb-G-atom", Modal, "<>G phi -> []G phi", ["phi"],
            check = |b| match b.f("phi") {
                Formula::Atom(..) => Ok(()),
                f => Err(format!("{f} is not an atomic predication")),
            }),
        schema!("R-Subsump", Modal, "[]G phi -> []D phi", ["phi"]),
        schema!("B-D", Modal, "phi -> []D <>D phi", ["phi"]),
        schema!("B-G", Modal, "phi -> []G <>G phi", ["phi"]),
        schema!("5-D", Modal, "<>D phi -> []D <>D phi", ["phi"]),
        schema!("5-G", Modal, "<>G phi -> []G <>G phi", ["phi"]),
        schema!(".2-D", Modal, "<>D []D phi -> []D <>D phi", ["phi"]),
        // intuitionistic modal logic of G
        schema!("Kdia-G", IntModal, "[]G (phi -> psi) -> (<>G phi -> <>G psi)", ["phi", "psi"]),
        schema!("Tdia-G", IntModal, "phi -> <>G phi", ["phi"]),
        schema!("4dia-G", IntModal, "<>G <>G phi -> <>G phi", ["phi"]),
        schema!("FS-G", IntModal, "(<>G phi -> []G psi) -> []G (phi -> psi)", ["phi", "psi"]),
        schema!("DP-G", IntModal, "<>G (phi | psi) -> <>G phi | <>G psi", ["phi", "psi"]),
        schema!("N-G", IntModal, "~<>G (phi & ~phi)", ["phi"]),
        // minimal plural logic
        schema!("PUI", MinimalPlural, "forallp xx phi -> phi_yy", ["phi", "xx", "yy"],
            derive = |b| Ok(vec![("phi_yy", subst(b, "phi", "xx", b.t("yy"))?)]),
            display = "forallp xx phi -> phi[yy/xx]"),
        schema!("PEG", MinimalPlural, "phi_yy -> existsp xx phi", ["phi", "xx", "yy"],
            derive = |b| Ok(vec![("phi_yy", subst(b, "phi", "xx", b.t("yy"))?)]),
            display = "phi[yy/xx] -> existsp xx phi"),
        schema!("PQ-All", MinimalPlural, "forallp xx (psi -> phi) -> (psi -> forallp xx phi)", ["phi", "psi", "xx"],
            check = |b| b.not_free("xx", "psi")),
        schema!("PQ-Ex", MinimalPlural, "forallp xx (phi -> psi) -> (existsp xx phi -> psi)", ["phi", "psi", "xx"],
            check = |b| b.not_free("xx", "psi")),
        schema!("P-Ext", MinimalPlural, "forall z (z pc xx <-> z pc yy) -> (phi <-> phi_yy)", ["phi", "xx", "yy"],
            derive = |b| {
                if !b.f("phi").is_modal_free() {
                    return Err("phi must be free of modal operators".into());
                }
                Ok(vec![("phi_yy", subst(b, "phi", "xx", b.t("yy"))?)])
            },
            display = "forall z (z pc xx <-> z pc yy) -> (phi <-> phi[yy/xx])  (phi modal-free)"),
        schema!("P-Choice", MinimalPlural,
            "forall x (x pc xx -> exists y (y pc yy & psi)) & forall x forall x' forall y (psi & psi_x2 -> x = x') \
             -> existsp zz forall x (x pc xx -> exists y (y pc zz & psi & forall y' (y' pc zz & psi_y2 -> y' = y)))",
            ["psi", "x", "y", "x'", "y'", "xx", "yy", "zz"],
            derive = |b| {
                b.distinct(&["x", "y", "x'", "y'"])?;
                b.distinct(&["xx", "yy", "zz"])?;
                Ok(vec![("psi_x2", subst(b, "psi", "x", b.t("x'"))?), ("psi_y2", subst(b, "psi", "y", b.t("y'"))?)])
            },
            display = "forall x (x pc xx -> exists y (y pc yy & psi)) & forall x forall x' forall y (psi & psi[x'/x] -> x = x') \
                       -> existsp zz forall x (x pc xx -> exists y (y pc zz & psi & forall y' (y' pc zz & psi[y'/y] -> y' = y)))"),
        // rigidity of pluralities
        schema!("StbD-prec", Rigidity, "x pc xx -> []D x pc xx", ["x", "xx"]),
        schema!("StbD-nprec", Rigidity, "~x pc xx -> []D ~x pc xx", ["x", "xx"]),
        schema!("StbG-prec", Rigidity, "x pc xx -> []G x pc xx", ["x", "xx"]),
        schema!("StbG-nprec", Rigidity, "~x pc xx -> []G ~x pc xx", ["x", "xx"]),
        schema!("InExtD-prec", Rigidity, "forall x (x pc yy -> []D theta) -> []D forall x (x pc yy -> theta)", ["theta", "x", "yy"]),
        schema!("InExtG-prec", Rigidity, "forall x (x pc yy -> []G theta) -> []G forall x (x pc yy -> theta)", ["theta", "x", "yy"]),
        schema!("InExtD-incl", Rigidity, "forallp xx (xx pe yy -> []D theta) -> []D forallp xx (xx pe yy -> theta)", ["theta", "xx", "yy"],
            check = |b| b.distinct(&["xx", "yy"])),
        schema!("InExtG-incl", Rigidity, "forallp xx (xx pe yy -> []G theta) -> []G forallp xx (xx pe yy -> theta)", ["theta", "xx", "yy"],
            check = |b| b.distinct(&["xx", "yy"])),
        schema!("Dec-prec", Rigidity, "x pc xx | ~x pc xx", ["x", "xx"]),
        schema!("Omni-prec", Rigidity,
            "forall x (x pc aa -> phi | ~phi) -> exists x (x pc aa & phi) | ~exists x (x pc aa & phi)", ["phi", "x", "aa"]),
        schema!("Omni-incl", Rigidity,
            "forallp xx (xx pe aa -> phi | ~phi) -> existsp xx (xx pe aa & phi) | ~existsp xx (xx pe aa & phi)", ["phi", "xx", "aa"],
            check = |b| b.distinct(&["xx", "aa"])),
        // comprehension
        schema!("P-Comp", Comprehension, "existsp yy forall x (x pc yy <-> phi)", ["phi", "x"]),
        schema!("Empty", Comprehension, "existsp yy forall x ~x pc yy", []),
        schema!("P-Adj", Comprehension, "forall x forallp xx existsp yy forall y (y pc yy <-> y pc xx | y = x)", []),
        schema!("P-Union", Comprehension, "existsp zz forall x (x pc zz <-> x pc xx | x pc yy)", ["xx", "yy"],
            check = |b| b.distinct(&["xx", "yy"])),
        schema!("P-Sep", Comprehension, "existsp yy forall x (x pc yy <-> x pc xx & phi)", ["phi", "x", "xx"]),
        schema!("Dec-P-Sep", Comprehension,
            "forall x (x pc xx -> phi | ~phi) -> existsp yy forall x (x pc yy <-> x pc xx & phi)", ["phi", "x", "xx"]),
        // definiteness and sets; no named system includes these
        schema!("ED", Extra, "[]G forall x (phi -> []D theta) -> []D forall x (phi -> theta)", ["phi", "theta", "x"]),
        schema!("Omni", Extra, "forall x (phi -> psi | ~psi) -> exists x (phi & psi) | forall x (phi -> ~psi)", ["phi", "psi", "x"]),
        schema!("ED->S", Extra,
            "(forall x (phi -> psi | ~psi) -> exists x (phi & psi) | forall x (phi -> ~psi)) -> exists y forall x (x in y <-> phi)",
            ["phi", "psi", "x"]),
        schema!("ED->P", Extra,
            "(forall x (phi -> psi | ~psi) -> exists x (phi & psi) | forall x (phi -> ~psi)) -> existsp yy forall x (x pc yy <-> phi)",
            ["phi", "psi", "x"]),
        schema!("Ext", Extra, "Set(xx, x) & Set(yy, y) -> (x = y <-> forall z (z pc xx <-> z pc yy))", ["xx", "yy", "x", "y"],
            check = |b| b.distinct(&["xx", "yy"]).and(b.distinct(&["x", "y"]))),
        schema!("Ind-P", Extra,
            "forall x (~existsp xx Set(xx, x) -> phi) & forallp xx forall y (forall x (x pc xx -> phi) & Set(xx, y) -> phi_y) -> forall x phi",
            ["phi", "x", "y"],
            derive = |b| {
                b.distinct(&["x", "y"])?;
                Ok(vec![("phi_y", subst(b, "phi", "x", b.t("y"))?)])
            },
            display = "forall x (~existsp xx Set(xx, x) -> phi) & forallp xx forall y (forall x (x pc xx -> phi) & Set(xx, y) -> phi[y/x]) -> forall x phi"),
        schema!("Ind-ED", Extra,
            "forall x (~existsp xx Set(xx, x) -> phi) & forall y ((forall x (chi -> psi | ~psi) -> exists x (chi & psi) | forall x (chi -> ~psi)) \
             & forall x (chi -> phi) & forall x (x in y <-> chi) -> phi_y) -> forall x phi",
            ["phi", "chi", "psi", "x", "y"],
            derive = |b| {
                b.distinct(&["x", "y"])?;
                Ok(vec![("phi_y", subst(b, "phi", "x", b.t("y"))?)])
            },
            display = "forall x (~existsp xx Set(xx, x) -> phi) & forall y ((forall x (chi -> psi | ~psi) -> exists x (chi & psi) | forall x (chi -> ~psi)) \
                       & forall x (chi -> phi) & forall x (x in y <-> chi) -> phi[y/x]) -> forall x phi"),
        schema!("Collapse*", Extra, "[]D forallp xx <>G exists y Set(xx, y)", []),
        schema!("P->S", Extra, "forallp xx exists y Set(xx, y)", []),
        schema!("Omni-sub", Extra,
            "forall y (forall z (z in y -> z in s) -> phi | ~phi) -> exists y (forall z (z in y -> z in s) & phi) | ~exists y (forall z (z in y -> z in s) & phi)",
            ["phi", "y", "s"]),
        schema!("Omni-subN", Extra,
            "forall y (forall z (z in y -> Nat(z)) -> phi | ~phi) -> exists y (forall z (z in y -> Nat(z)) & phi) | ~exists y (forall z (z in y -> Nat(z)) & phi)",
            ["phi", "y"]),
    ]
});

pub fn catalog() -> &'static [Schema] {
    &CATALOG
}

pub fn lookup(id: &str) -> Option<&'static Schema> {
    CATALOG.iter().find(|s| s.id == id)
}

/// Instantiate a schema from the catalog.
pub fn instantiate_schema(id: &str, args: &Instantiation) -> Result<Formula, SchemaError> {
    lookup(id).ok_or_else(|| SchemaError::Unknown(id.to_string()))?.instantiate(args)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::alpha_eq;

    fn f(s: &str) -> Formula {
        let mut sig = Signature::new().with_constant("a").unwrap().with_constant("b").unwrap();
        let opts = ParseOptions { infer_predicates: true, ..Default::default() };
        parse_with(s, &mut sig, &opts).unwrap()
    }

    fn args(pairs: &[(&str, &str)]) -> Instantiation {
        pairs
            .iter()
            .map(|(k, v)| {
                let a = if is_formula_param(k) {
                    SchemaArg::Formula(f(v))
                } else if v.chars().next().is_some_and(|c| c == 'a' || c == 'b') && v.len() == 1 {
                    SchemaArg::Term(Term::Const(v.to_string()))
                } else {
                    SchemaArg::Term(Term::Var(Var::new(*v)))
                };
                (k.to_string(), a)
            })
            .collect()
    }

    #[test]
    fn every_template_parses_and_instantiates() {
        let generic = [("phi", "P(x)"), ("psi", "Q(y)"), ("theta", "R(x, y)"), ("chi", "S(x)")];
        for s in catalog() {
            let a: Vec<(&str, &str)> = generic.iter().copied().filter(|(k, _)| s.params.contains(k)).collect();
            let r = s.instantiate(&args(&a));
            match s.id {
                "Q-All" | "Q-Ex" | "Stb-G-atom" => {}
                _ => assert!(r.is_ok(), "{}: {:?}", s.id, r),
            }
        }
    }

    #[test]
    fn mixed_2_instance() {
        let i = instantiate_schema("Mixed.2", &args(&[("phi", "P(a)")])).unwrap();
        assert_eq!(i.to_string(), "<>G []D P(a) -> []D <>G P(a)");
    }

    #[test]
    fn omni_prec_instance() {
        let i = instantiate_schema("Omni-prec", &args(&[("phi", "Q(x)")])).unwrap();
        let expected = f("forall x (x pc aa -> Q(x) | ~Q(x)) -> exists x (x pc aa & Q(x)) | ~exists x (x pc aa & Q(x))");
        assert!(alpha_eq(&i, &expected), "{i}");
    }

    #[test]
    fn p_union_instance() {
        let i = instantiate_schema("P-Union", &args(&[])).unwrap();
        assert!(alpha_eq(&i, &f("existsp zz forall x (x pc zz <-> x pc xx | x pc yy)")), "{i}");
    }

    #[test]
    fn internal_binders_avoid_arguments() {
        // yy is bound by the template; the argument mentions a free yy.
        let i = instantiate_schema("P-Sep", &args(&[("phi", "x pc yy")])).unwrap();
        let expected = f("existsp yy' forall x (x pc yy' <-> x pc xx & x pc yy)");
        assert!(alpha_eq(&i, &expected), "{i}");
    }

    #[test]
    fn side_conditions() {
        assert!(matches!(
            instantiate_schema("Q-All", &args(&[("phi", "P(x)"), ("psi", "Q(x)")])),
            Err(SchemaError::SideCondition { .. })
        ));
        assert!(matches!(
            instantiate_schema("Stb-G-atom", &args(&[("phi", "~P(a)")])),
            Err(SchemaError::SideCondition { .. })
        ));
        assert!(matches!(instantiate_schema("T-D", &args(&[])), Err(SchemaError::Missing { .. })));
        assert!(matches!(instantiate_schema("B", &args(&[])), Err(SchemaError::Unknown(_))));
        assert!(matches!(
            instantiate_schema("UI", &args(&[("phi", "P(x)"), ("t", "yy")])),
            Err(SchemaError::WrongKind { .. })
        ));
    }

    #[test]
    fn substitution_schemas() {
        let i = instantiate_schema("UI", &args(&[("phi", "exists y R(x, y)"), ("t", "y")])).unwrap();
        assert!(alpha_eq(&i, &f("forall x exists y R(x, y) -> exists z R(y, z)")), "{i}");
    }
}
