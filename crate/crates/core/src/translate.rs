//! Translations between the fragments of the bimodal language.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::formula::{Formula, Language, Mode, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("{kind} translation expects a formula of {expected}, found {found}")]
    WrongLanguage { kind: Kind, expected: Language, found: Language },
    #[error("anchor {0} must be a plural variable")]
    AnchorSort(String),
    #[error("anchor {0} already occurs in the formula")]
    AnchorOccurs(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Godel,
    Potentialist,
    Star,
    ExtGodel,
    ExtPotentialist,
    Reverse,
}

impl Kind {
    pub const ALL: [Kind; 6] = [
        Kind::Godel,
        Kind::Potentialist,
        Kind::Star,
        Kind::ExtGodel,
        Kind::ExtPotentialist,
        Kind::Reverse,
    ];

    /// The language a source formula must belong to.
    pub fn source(self) -> Language {
        match self {
            Kind::Godel | Kind::Potentialist | Kind::Star => Language::L,
            Kind::ExtGodel => Language::LG,
            Kind::ExtPotentialist => Language::LD,
            Kind::Reverse => Language::LBM,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Godel => "godel",
            Kind::Potentialist => "pot",
            Kind::Star => "star",
            Kind::ExtGodel => "ext-godel",
            Kind::ExtPotentialist => "ext-pot",
            Kind::Reverse => "reverse",
        })
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Kind::ALL
            .into_iter()
            .find(|k| k.to_string() == s)
            .ok_or_else(|| format!("unknown translation kind `{s}`"))
    }
}

fn require(kind: Kind, f: &Formula) -> Result<(), TranslateError> {
    let found = f.language();
    if kind.source().includes(found) {
        Ok(())
    } else {
        Err(TranslateError::WrongLanguage { kind, expected: kind.source(), found })
    }
}

/// Goedel translation into the D-modal language: atoms, implications,
/// negations and universal quantifiers are D-necessitated.
pub fn godel(f: &Formula) -> Result<Formula, TranslateError> {
    require(Kind::Godel, f)?;
    Ok(g_map(f, Mode::D))
}

/// Extended Goedel translation of the G-modal language: the G-box becomes
/// a D-box and the G-diamond is kept.
pub fn ext_godel(f: &Formula) -> Result<Formula, TranslateError> {
    require(Kind::ExtGodel, f)?;
    Ok(g_map(f, Mode::D))
}

// Shared by godel and ext_godel; the latter only differs on modal input.
fn g_map(f: &Formula, d: Mode) -> Formula {
    let r = |a: &Formula| g_map(a, d);
    match f {
        Formula::Atom(..) | Formula::Eq(..) | Formula::Prec(..) => Formula::nec(d, f.clone()),
        Formula::And(a, b) => Formula::and(r(a), r(b)),
        Formula::Or(a, b) => Formula::or(r(a), r(b)),
        Formula::Implies(a, b) => Formula::nec(d, Formula::implies(r(a), r(b))),
        Formula::Not(a) => Formula::nec(d, Formula::not(r(a))),
        Formula::Exists(v, a) => Formula::exists(v.clone(), r(a)),
        Formula::Forall(v, a) => Formula::nec(d, Formula::forall(v.clone(), r(a))),
        Formula::Nec(_, a) => Formula::nec(d, r(a)),
        Formula::Poss(m, a) => Formula::poss(*m, r(a)),
    }
}

/// Potentialist translation: every quantifier is G-modalized.
pub fn potentialist(f: &Formula) -> Result<Formula, TranslateError> {
    require(Kind::Potentialist, f)?;
    Ok(pot_map(f))
}

/// Extended potentialist translation of the D-modal language. D-modal
/// operators are kept and their scopes translated.
pub fn ext_potentialist(f: &Formula) -> Result<Formula, TranslateError> {
    require(Kind::ExtPotentialist, f)?;
    Ok(pot_map(f))
}

fn pot_map(f: &Formula) -> Formula {
    match f {
        Formula::Atom(..) | Formula::Eq(..) | Formula::Prec(..) => f.clone(),
        Formula::Not(a) => Formula::not(pot_map(a)),
        Formula::And(a, b) => Formula::and(pot_map(a), pot_map(b)),
        Formula::Or(a, b) => Formula::or(pot_map(a), pot_map(b)),
        Formula::Implies(a, b) => Formula::implies(pot_map(a), pot_map(b)),
        Formula::Forall(v, a) => Formula::box_g(Formula::forall(v.clone(), pot_map(a))),
        Formula::Exists(v, a) => Formula::dia_g(Formula::exists(v.clone(), pot_map(a))),
        Formula::Nec(m, a) => Formula::nec(*m, pot_map(a)),
        Formula::Poss(m, a) => Formula::poss(*m, pot_map(a)),
    }
}

/// The combined translation: Goedel clauses, except that existentials are
/// G-diamonded.
pub fn star(f: &Formula) -> Result<Formula, TranslateError> {
    require(Kind::Star, f)?;
    Ok(star_map(f))
}

fn star_map(f: &Formula) -> Formula {
    match f {
        Formula::Atom(..) | Formula::Eq(..) | Formula::Prec(..) => Formula::box_d(f.clone()),
        Formula::And(a, b) => Formula::and(star_map(a), star_map(b)),
        Formula::Or(a, b) => Formula::or(star_map(a), star_map(b)),
        Formula::Implies(a, b) => Formula::box_d(Formula::implies(star_map(a), star_map(b))),
        Formula::Not(a) => Formula::box_d(Formula::not(star_map(a))),
        Formula::Exists(v, a) => Formula::dia_g(Formula::exists(v.clone(), star_map(a))),
        Formula::Forall(v, a) => Formula::box_d(Formula::forall(v.clone(), star_map(a))),
        Formula::Nec(..) | Formula::Poss(..) => unreachable!("checked modal-free"),
    }
}

/// Translation of the bimodal language into plural logic relativized to the
/// anchor plurality: singular quantifiers range over the anchor, G-modalities
/// become quantifiers over pluralities extending it, D-modalities stay.
pub fn reverse(f: &Formula, anchor: &Var) -> Result<Formula, TranslateError> {
    if !anchor.is_plural() {
        return Err(TranslateError::AnchorSort(anchor.to_string()));
    }
    if f.all_vars().contains(anchor) {
        return Err(TranslateError::AnchorOccurs(anchor.to_string()));
    }
    let mut avoid = f.all_vars();
    avoid.insert(anchor.clone());
    Ok(rev(f, anchor, &mut avoid))
}

fn rev(f: &Formula, xx: &Var, avoid: &mut BTreeSet<Var>) -> Formula {
    let fresh = |base: &str, avoid: &mut BTreeSet<Var>| {
        let v = Var::new(base).fresh(avoid);
        avoid.insert(v.clone());
        v
    };
    match f {
        Formula::Atom(..) | Formula::Eq(..) | Formula::Prec(..) => f.clone(),
        Formula::Not(a) => Formula::not(rev(a, xx, avoid)),
        Formula::And(a, b) => Formula::and(rev(a, xx, avoid), rev(b, xx, avoid)),
        Formula::Or(a, b) => Formula::or(rev(a, xx, avoid), rev(b, xx, avoid)),
        Formula::Implies(a, b) => Formula::implies(rev(a, xx, avoid), rev(b, xx, avoid)),
        Formula::Exists(v, a) => {
            let guard = relativizer(v, xx, avoid);
            Formula::exists(v.clone(), Formula::and(guard, rev(a, xx, avoid)))
        }
        Formula::Forall(v, a) => {
            let guard = relativizer(v, xx, avoid);
            Formula::forall(v.clone(), Formula::implies(guard, rev(a, xx, avoid)))
        }
        Formula::Nec(m, a) | Formula::Poss(m, a) => {
            let yy = fresh("yy", avoid);
            let ext = Formula::incl_via(fresh("z", avoid), xx.clone(), yy.clone());
            let body = rev(a, &yy, avoid);
            let universal = matches!(f, Formula::Nec(..));
            let q = if universal {
                Formula::forall(yy, Formula::implies(ext, body))
            } else {
                Formula::exists(yy, Formula::and(ext, body))
            };
            match m {
                Mode::G => q,
                Mode::D if universal => Formula::box_d(q),
                Mode::D => Formula::dia_d(q),
            }
        }
    }
}

// `v pc xx` for singular v, `v pe xx` for plural v.
fn relativizer(v: &Var, xx: &Var, avoid: &mut BTreeSet<Var>) -> Formula {
    if v.is_plural() {
        let z = Var::new("z").fresh(avoid);
        avoid.insert(z.clone());
        Formula::incl_via(z, v.clone(), xx.clone())
    } else {
        Formula::prec(Term::Var(v.clone()), xx.clone())
    }
}

/// Bottom-up simplification: collapse repeated boxes and diamonds of the same
/// modality and drop vacuous plural relativizations.
pub fn normalize(f: &Formula) -> Formula {
    let g = match f {
        Formula::Atom(..) | Formula::Eq(..) | Formula::Prec(..) => return f.clone(),
        Formula::Not(a) => Formula::not(normalize(a)),
        Formula::And(a, b) => Formula::and(normalize(a), normalize(b)),
        Formula::Or(a, b) => Formula::or(normalize(a), normalize(b)),
        Formula::Implies(a, b) => Formula::implies(normalize(a), normalize(b)),
        Formula::Nec(m, a) => Formula::nec(*m, normalize(a)),
        Formula::Poss(m, a) => Formula::poss(*m, normalize(a)),
        Formula::Forall(v, a) => Formula::forall(v.clone(), normalize(a)),
        Formula::Exists(v, a) => Formula::exists(v.clone(), normalize(a)),
    };
    match g {
        Formula::Nec(m, a) if matches!(&*a, Formula::Nec(n, _) if *n == m) => *a,
        Formula::Poss(m, a) if matches!(&*a, Formula::Poss(n, _) if *n == m) => *a,
        Formula::Forall(yy, body) => match *body {
            Formula::Implies(guard, rest) if is_extension_of(&guard, &yy) && !rest.is_free(&yy) => *rest,
            body => Formula::forall(yy, body),
        },
        Formula::Exists(yy, body) => match *body {
            Formula::And(guard, rest) if is_extension_of(&guard, &yy) && !rest.is_free(&yy) => *rest,
            body => Formula::exists(yy, body),
        },
        g => g,
    }
}

// `forall z (z pc xx -> z pc yy)` for some xx other than yy.
fn is_extension_of(g: &Formula, yy: &Var) -> bool {
    let Formula::Forall(z, body) = g else { return false };
    let Formula::Implies(a, b) = &**body else { return false };
    match (&**a, &**b) {
        (Formula::Prec(Term::Var(z1), xx), Formula::Prec(Term::Var(z2), yy2)) => {
            z1 == z && z2 == z && yy2 == yy && xx != yy && !z.is_plural()
        }
        _ => false,
    }
}

/// Dispatch on the translation kind. `anchor` is used only by `reverse`.
pub fn translate(kind: Kind, f: &Formula, anchor: &Var) -> Result<Formula, TranslateError> {
    match kind {
        Kind::Godel => godel(f),
        Kind::Potentialist => potentialist(f),
        Kind::Star => star(f),
        Kind::ExtGodel => ext_godel(f),
        Kind::ExtPotentialist => ext_potentialist(f),
        Kind::Reverse => reverse(f, anchor),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_infer;

    fn p(s: &str) -> Formula {
        parse_infer(s).unwrap().0
    }

    fn show(r: Result<Formula, TranslateError>) -> String {
        r.unwrap().to_string()
    }

    #[test]
    fn godel_clauses() {
        assert_eq!(show(godel(&p("P(a)"))), "[]D P(a)");
        assert_eq!(show(godel(&p("P(a) -> Q(a)"))), "[]D ([]D P(a) -> []D Q(a))");
        assert_eq!(show(godel(&p("~P(a)"))), "[]D ~[]D P(a)");
        assert_eq!(show(godel(&p("forall x P(x)"))), "[]D forall x []D P(x)");
        assert_eq!(show(godel(&p("exists x P(x)"))), "exists x []D P(x)");
        assert_eq!(show(godel(&p("P(a) & Q(a) | a = b"))), "[]D P(a) & []D Q(a) | []D a = b");
    }

    #[test]
    fn potentialist_clauses() {
        assert_eq!(show(potentialist(&p("forall x exists y R(x, y)"))), "[]G forall x <>G exists y R(x, y)");
        assert_eq!(show(potentialist(&p("P(a) -> ~Q(a)"))), "P(a) -> ~Q(a)");
        assert_eq!(show(potentialist(&p("existsp xx a pc xx"))), "<>G existsp xx a pc xx");
    }

    #[test]
    fn star_clauses() {
        assert_eq!(show(star(&p("exists x P(x)"))), "<>G exists x []D P(x)");
        assert_eq!(show(star(&p("forall x P(x)"))), "[]D forall x []D P(x)");
        assert_eq!(show(star(&p("forallp xx x pc xx"))), "[]D forallp xx []D x pc xx");
    }

    #[test]
    fn extended_translations() {
        assert_eq!(show(ext_godel(&p("P(a) -> []G P(a)"))), "[]D ([]D P(a) -> []D []D P(a))");
        assert_eq!(show(ext_godel(&p("<>G []G P(a)"))), "<>G []D []D P(a)");
        assert_eq!(show(ext_potentialist(&p("[]D exists x P(x)"))), "[]D <>G exists x P(x)");
        assert_eq!(show(ext_potentialist(&p("<>D P(a)"))), "<>D P(a)");
    }

    #[test]
    fn wrong_source_language() {
        let e = godel(&p("[]D P(a)")).unwrap_err();
        assert!(matches!(e, TranslateError::WrongLanguage { found: Language::LD, .. }));
        assert!(ext_godel(&p("[]D P(a)")).is_err());
        assert!(ext_potentialist(&p("[]G P(a)")).is_err());
        assert!(star(&p("<>G P(a)")).is_err());
    }

    #[test]
    fn reverse_relativizes() {
        let xx = Var::new("xx");
        assert_eq!(show(reverse(&p("exists y P(y)"), &xx)), "exists y (y pc xx & P(y))");
        let f = reverse(&p("<>G existsp zz P(a)"), &xx).unwrap();
        assert_eq!(
            f.to_string(),
            "existsp yy (forall z (z pc xx -> z pc yy) & existsp zz (forall z' (z' pc zz -> z' pc yy) & P(a)))"
        );
        let g = reverse(&p("[]D P(a)"), &xx).unwrap();
        assert_eq!(g.to_string(), "[]D forallp yy (forall z (z pc xx -> z pc yy) -> P(a))");
        assert!(matches!(reverse(&p("P(a)"), &Var::new("x")), Err(TranslateError::AnchorSort(_))));
        assert!(matches!(
            reverse(&p("a pc xx"), &xx),
            Err(TranslateError::AnchorOccurs(_))
        ));
    }

    #[test]
    fn reverse_avoids_clashes() {
        let xx = Var::new("xx");
        let f = reverse(&p("[]G []G exists y y pc yy"), &xx).unwrap();
        let bound: Vec<String> = f
            .all_vars()
            .into_iter()
            .filter(|v| v.is_plural())
            .map(|v| v.to_string())
            .collect();
        assert_eq!(bound, vec!["xx", "yy", "yy'", "yy''"]);
        // The innermost quantifier is relativized to the last plurality.
        assert!(f.to_string().ends_with("exists y (y pc yy'' & y pc yy)))"));
    }

    #[test]
    fn normalizer() {
        assert_eq!(normalize(&p("[]D []D P(a)")).to_string(), "[]D P(a)");
        assert_eq!(normalize(&p("<>G <>G <>G P(a)")).to_string(), "<>G P(a)");
        assert_eq!(normalize(&p("[]D []G P(a)")).to_string(), "[]D []G P(a)");
        let xx = Var::new("xx");
        let r = reverse(&p("[]G P(a)"), &xx).unwrap();
        assert_eq!(normalize(&r).to_string(), "P(a)");
        let kept = reverse(&p("[]G exists y P(y)"), &xx).unwrap();
        assert_eq!(normalize(&kept), kept);
    }
}
