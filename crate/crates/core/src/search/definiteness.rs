//! Definiteness principles as formula instances.
//!
//! `Omni_x(X, F)` abbreviates
//! `forall x (X -> F | ~F) -> exists x (X & F) | ~exists x (X & F)`: the
//! quantifier over `X` behaves classically for `F`. `ID(F)` is
//! `forall x (F | ~F)`. Each item below is intuitionistically valid, so its
//! instances should be forced everywhere.

use serde::Serialize;

use crate::formula::{substitute, Formula, Term, Var};

/// One instance of a definiteness item.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefinitenessItem {
    pub item: char,
    pub label: &'static str,
    #[serde(serialize_with = "as_text")]
    pub formula: Formula,
    /// Instances of (f) and (g) assume identity is decidable.
    pub needs_decidable_identity: bool,
}

fn as_text<S: serde::Serializer>(f: &Formula, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(f)
}

fn v(n: &str) -> Var {
    Var::new(n)
}

fn t(n: &str) -> Term {
    Term::var(n)
}

fn not(f: Formula) -> Formula {
    Formula::not(f)
}

fn and(a: Formula, b: Formula) -> Formula {
    Formula::and(a, b)
}

fn or(a: Formula, b: Formula) -> Formula {
    Formula::or(a, b)
}

fn imp(a: Formula, b: Formula) -> Formula {
    Formula::implies(a, b)
}

fn all(x: &str, f: Formula) -> Formula {
    Formula::forall(v(x), f)
}

fn ex(x: &str, f: Formula) -> Formula {
    Formula::exists(v(x), f)
}

fn dec(f: &Formula) -> Formula {
    or(f.clone(), not(f.clone()))
}

fn sub(f: &Formula, x: &str, to: &str) -> Formula {
    substitute(f, &v(x), &t(to)).expect("singular substitution")
}

/// `Omni_x(X, F)`.
pub fn omni(x: &str, guard: &Formula, f: &Formula) -> Formula {
    let found = ex(x, and(guard.clone(), f.clone()));
    imp(all(x, imp(guard.clone(), dec(f))), or(found.clone(), not(found)))
}

/// `ID(F)` over `x`.
pub fn id(x: &str, f: &Formula) -> Formula {
    all(x, dec(f))
}

fn id_eq() -> Formula {
    all("x", all("y", dec(&Formula::eq(t("x"), t("y")))))
}

/// Parameter pools: formulas in `x` only, in `y` only, and in both. Kept
/// small because the three-parameter items grow cubically.
struct Params {
    in_x: Vec<Formula>,
    in_y: Vec<Formula>,
    in_xy: Vec<Formula>,
}

fn params(depth: usize) -> Params {
    let p = |s: &str| Formula::atom("P", vec![t(s)]);
    let r = |a: &str, b: &str| Formula::atom("R", vec![t(a), t(b)]);
    let mut in_x = vec![p("x"), r("x", "x")];
    let mut in_xy = vec![r("x", "y"), Formula::eq(t("x"), t("y"))];
    if depth >= 2 {
        in_x.push(not(p("x")));
        in_x.push(ex("y", r("x", "y")));
        in_xy.push(not(r("x", "y")));
        in_xy.push(and(p("x"), p("y")));
    }
    let in_y = in_x.iter().map(|f| sub(f, "x", "y")).collect();
    Params { in_x, in_y, in_xy }
}

/// Instances of items (a)-(g) over parameter formulas of depth at most
/// `depth` (1 or 2).
pub fn definiteness_instances(depth: usize) -> Vec<DefinitenessItem> {
    let ps = params(depth);
    let mut out = Vec::new();
    let mut push = |item: char, label: &'static str, formula: Formula| {
        out.push(DefinitenessItem { item, label, formula, needs_decidable_identity: matches!(item, 'f' | 'g') });
    };
    // (a) decidable formulas are closed under the connectives
    for f in &ps.in_x {
        push('a', "ID closed under negation", imp(id("x", f), id("x", &not(f.clone()))));
        for g in &ps.in_x {
            let both = and(id("x", f), id("x", g));
            push('a', "ID closed under conjunction", imp(both.clone(), id("x", &and(f.clone(), g.clone()))));
            push('a', "ID closed under disjunction", imp(both.clone(), id("x", &or(f.clone(), g.clone()))));
            push('a', "ID closed under implication", imp(both, id("x", &imp(f.clone(), g.clone()))));
        }
    }
    // (b) bounded quantification over an ED guard preserves decidability
    for x in &ps.in_x {
        for f in &ps.in_xy {
            let fd = all("x", all("y", dec(f)));
            let found = ex("x", and(x.clone(), f.clone()));
            push(
                'b',
                "bounded existential of a decidable formula",
                imp(and(all("y", omni("x", x, f)), fd.clone()), all("y", dec(&found))),
            );
            let every = all("x", imp(x.clone(), f.clone()));
            push(
                'b',
                "bounded universal of a decidable formula",
                imp(and(all("y", omni("x", x, &not(f.clone()))), fd), all("y", dec(&every))),
            );
        }
    }
    // (c) separation by a decidable formula
    for x in &ps.in_x {
        for f in &ps.in_x {
            for psi in &ps.in_x {
                push(
                    'c',
                    "separation",
                    imp(
                        and(omni("x", x, &and(f.clone(), psi.clone())), id("x", f)),
                        omni("x", &and(x.clone(), f.clone()), psi),
                    ),
                );
            }
        }
    }
    // (d) union of an ED-indexed family of ED predicates
    for x in &ps.in_x {
        for psi in &ps.in_xy {
            for theta in &ps.in_y {
                let inner = ex("y", and(psi.clone(), theta.clone()));
                push(
                    'd',
                    "union",
                    imp(
                        and(omni("x", x, &inner), all("x", imp(x.clone(), omni("y", psi, theta)))),
                        omni("y", &ex("x", and(x.clone(), psi.clone())), theta),
                    ),
                );
            }
        }
    }
    // (e) image under a functional relation
    for x in &ps.in_x {
        for psi in &ps.in_xy {
            for theta in &ps.in_y {
                let inner = ex("y", and(psi.clone(), theta.clone()));
                let unique = all("y'", imp(sub(psi, "y", "y'"), Formula::eq(t("y'"), t("y"))));
                let functional = all("x", imp(x.clone(), ex("y", and(psi.clone(), unique))));
                push(
                    'e',
                    "replacement",
                    imp(and(omni("x", x, &inner), functional), omni("y", &ex("x", and(x.clone(), psi.clone())), theta)),
                );
            }
        }
    }
    // (f) an ED predicate is ID once identity is decidable
    for x in &ps.in_x {
        let eq = Formula::eq(t("x"), t("y"));
        push(
            'f',
            "ED implies ID",
            imp(and(id_eq(), all("y", omni("x", x, &eq))), all("y", dec(&sub(x, "x", "y")))),
        );
    }
    // (g) adjoining one object
    for x in &ps.in_x {
        for psi in ps.in_x.iter().chain(&ps.in_xy) {
            let widened = or(x.clone(), Formula::eq(t("x"), t("y")));
            push(
                'g',
                "adjunction",
                all("y", imp(and(omni("x", x, psi), id_eq()), omni("x", &widened, psi))),
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_item_present_and_modal_free() {
        let items = definiteness_instances(2);
        for c in 'a'..='g' {
            assert!(items.iter().any(|i| i.item == c), "{c}");
        }
        assert!(items.iter().all(|i| i.formula.is_modal_free()));
        assert!(items.iter().filter(|i| i.needs_decidable_identity).all(|i| matches!(i.item, 'f' | 'g')));
        assert!(definiteness_instances(1).len() < items.len());
    }

    #[test]
    fn separation_shape() {
        let px = Formula::atom("P", vec![t("x")]);
        let s = omni("x", &px, &px).to_string();
        assert_eq!(s, "forall x (P(x) -> P(x) | ~P(x)) -> exists x (P(x) & P(x)) | ~exists x (P(x) & P(x))");
    }
}
