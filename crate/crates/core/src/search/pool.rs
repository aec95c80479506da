//! Formula pools: every formula up to a depth built from a few atoms.
//!
//! Level 1 is the atoms. Level k+1 applies each unary operator to level k
//! and combines level k with an atom on either side of each binary
//! connective. Formulas are deduplicated up to renaming of bound variables.

use std::collections::HashSet;

use crate::formula::{alpha_normalize, Formula, Mode, Signature, Sort, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Unary {
    Not,
    Forall(Var),
    Exists(Var),
    Nec(Mode),
    Poss(Mode),
}

impl Unary {
    fn apply(&self, f: &Formula) -> Formula {
        match self {
            Unary::Not => Formula::not(f.clone()),
            Unary::Forall(v) => Formula::forall(v.clone(), f.clone()),
            Unary::Exists(v) => Formula::exists(v.clone(), f.clone()),
            Unary::Nec(m) => Formula::nec(*m, f.clone()),
            Unary::Poss(m) => Formula::poss(*m, f.clone()),
        }
    }
}

/// Pool over the given atoms and unary operators, up to `depth`.
pub fn build_pool(atoms: &[Formula], unary: &[Unary], depth: usize) -> Vec<Formula> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |f: Formula, out: &mut Vec<Formula>, level: &mut Vec<Formula>| {
        if seen.insert(alpha_normalize(&f)) {
            out.push(f.clone());
            level.push(f);
        }
    };
    let mut level = Vec::new();
    for a in atoms {
        push(a.clone(), &mut out, &mut level);
    }
    for _ in 1..depth {
        let mut next = Vec::new();
        for f in &level {
            for u in unary {
                push(u.apply(f), &mut out, &mut next);
            }
            for a in atoms {
                for (l, r) in [(f, a), (a, f)] {
                    push(Formula::and(l.clone(), r.clone()), &mut out, &mut next);
                    push(Formula::or(l.clone(), r.clone()), &mut out, &mut next);
                    push(Formula::implies(l.clone(), r.clone()), &mut out, &mut next);
                }
            }
        }
        level = next;
    }
    out
}

fn v(name: &str) -> Var {
    Var::new(name)
}

fn t(name: &str) -> Term {
    Term::var(name)
}

/// One unary predicate `P` and one binary predicate `R`.
pub fn standard_signature() -> Signature {
    Signature::unary_binary()
}

/// Variables of the singular pools.
pub fn singular_vars() -> Vec<Var> {
    vec![v("x"), v("y")]
}

/// Variables of the plural pool.
pub fn plural_vars() -> Vec<Var> {
    vec![v("x"), v("xx"), v("yy")]
}

fn quantifiers(vars: &[Var]) -> Vec<Unary> {
    let mut u = vec![Unary::Not];
    for x in vars {
        u.push(Unary::Forall(x.clone()));
        u.push(Unary::Exists(x.clone()));
    }
    u
}

/// Modality-free singular formulas in `x`, `y` over `P` and `R`.
pub fn singular_pool(depth: usize) -> Vec<Formula> {
    let atoms = vec![
        Formula::atom("P", vec![t("x")]),
        Formula::atom("P", vec![t("y")]),
        Formula::atom("R", vec![t("x"), t("y")]),
        Formula::eq(t("x"), t("y")),
    ];
    build_pool(&atoms, &quantifiers(&singular_vars()), depth)
}

/// Modality-free plural formulas in `x`, `xx`, `yy`.
pub fn plural_pool(depth: usize) -> Vec<Formula> {
    let atoms = vec![
        Formula::prec(t("x"), v("xx")),
        Formula::prec(t("x"), v("yy")),
        Formula::atom("P", vec![t("x")]),
    ];
    build_pool(&atoms, &quantifiers(&plural_vars()), depth)
}

/// Bimodal singular formulas in `x`, `y`.
pub fn modal_pool(depth: usize) -> Vec<Formula> {
    let atoms = vec![
        Formula::atom("P", vec![t("x")]),
        Formula::atom("R", vec![t("x"), t("y")]),
        Formula::eq(t("x"), t("y")),
    ];
    let mut u = quantifiers(&[v("x")]);
    for m in [Mode::D, Mode::G] {
        u.push(Unary::Nec(m));
        u.push(Unary::Poss(m));
    }
    build_pool(&atoms, &u, depth)
}

/// Bimodal plural formulas in `x`, `xx`, `yy`.
pub fn modal_plural_pool(depth: usize) -> Vec<Formula> {
    let atoms = vec![Formula::prec(t("x"), v("xx")), Formula::atom("P", vec![t("x")])];
    let mut u = quantifiers(&[v("x"), v("yy")]);
    for m in [Mode::D, Mode::G] {
        u.push(Unary::Nec(m));
        u.push(Unary::Poss(m));
    }
    build_pool(&atoms, &u, depth)
}

/// Whether all predicates of `f` have the sorts of the standard signature.
pub fn fits_standard(f: &Formula) -> bool {
    f.predicates().iter().all(|(p, sorts)| match p.as_str() {
        "P" => sorts == &[Sort::Singular],
        "R" => sorts == &[Sort::Singular, Sort::Singular],
        _ => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depths_and_dedup() {
        let p = singular_pool(3);
        assert!(p.iter().all(|f| f.depth() <= 3));
        assert!(p.iter().any(|f| f.depth() == 3));
        let mut keys: Vec<Formula> = p.iter().map(alpha_normalize).collect();
        keys.sort_by_key(|f| f.to_string());
        keys.dedup();
        assert_eq!(keys.len(), p.len());
        assert!(plural_pool(2).iter().any(|f| f.is_plural() && matches!(f, Formula::Forall(..))));
        assert!(modal_pool(2).iter().any(|f| matches!(f, Formula::Poss(Mode::G, _))));
        assert!(p.iter().all(fits_standard));
    }
}
