use std::collections::BTreeSet;

use thiserror::Error;

use super::syntax::{Formula, Sort, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot substitute {sort_t} term `{term}` for {sort_v} variable `{var}`")]
pub struct SortError {
    pub var: String,
    pub term: String,
    pub sort_v: Sort,
    pub sort_t: Sort,
}

/// Capture-avoiding substitution of `t` for the free occurrences of `v`.
/// Bound variables that would capture `t` are renamed by priming.
pub fn substitute(f: &Formula, v: &Var, t: &Term) -> Result<Formula, SortError> {
    if v.sort() != t.sort() {
        return Err(SortError {
            var: v.to_string(),
            term: t.to_string(),
            sort_v: v.sort(),
            sort_t: t.sort(),
        });
    }
    let tv: BTreeSet<Var> = t.as_var().into_iter().cloned().collect();
    Ok(subst(f, v, t, &tv))
}

/// Simultaneous renaming helper: substitute several variables one at a time
/// through fresh intermediates so that swaps behave.
pub fn substitute_all(f: &Formula, pairs: &[(Var, Term)]) -> Result<Formula, SortError> {
    let mut avoid = f.all_vars();
    for (v, t) in pairs {
        avoid.insert(v.clone());
        avoid.extend(t.as_var().cloned());
    }
    let mut tmp = Vec::new();
    let mut g = f.clone();
    for (v, _) in pairs {
        let base = match v.sort() {
            Sort::Singular => Var::new("t"),
            Sort::Plural => Var::new("tt"),
        };
        let fresh = base.fresh(&avoid);
        avoid.insert(fresh.clone());
        g = substitute(&g, v, &Term::Var(fresh.clone()))?;
        tmp.push(fresh);
    }
    for (fresh, (_, t)) in tmp.iter().zip(pairs) {
        g = substitute(&g, fresh, t)?;
    }
    Ok(g)
}

fn subst_term(s: &Term, v: &Var, t: &Term) -> Term {
    match s {
        Term::Var(x) if x == v => t.clone(),
        _ => s.clone(),
    }
}

fn subst(f: &Formula, v: &Var, t: &Term, tv: &BTreeSet<Var>) -> Formula {
    match f {
        Formula::Atom(p, args) => {
            Formula::Atom(p.clone(), args.iter().map(|a| subst_term(a, v, t)).collect())
        }
        Formula::Eq(a, b) => Formula::Eq(subst_term(a, v, t), subst_term(b, v, t)),
        Formula::Prec(a, xx) => {
            let xx = if xx == v {
                t.as_var().cloned().expect("plural substitute is a variable")
            } else {
                xx.clone()
            };
            Formula::Prec(subst_term(a, v, t), xx)
        }
        Formula::Not(a) => Formula::not(subst(a, v, t, tv)),
        Formula::And(a, b) => Formula::and(subst(a, v, t, tv), subst(b, v, t, tv)),
        Formula::Or(a, b) => Formula::or(subst(a, v, t, tv), subst(b, v, t, tv)),
        Formula::Implies(a, b) => Formula::implies(subst(a, v, t, tv), subst(b, v, t, tv)),
        Formula::Nec(m, a) => Formula::nec(*m, subst(a, v, t, tv)),
        Formula::Poss(m, a) => Formula::poss(*m, subst(a, v, t, tv)),
        Formula::Forall(x, a) | Formula::Exists(x, a) => {
            let rebuild = |x: Var, body: Formula| match f {
                Formula::Forall(..) => Formula::forall(x, body),
                _ => Formula::exists(x, body),
            };
            if x == v || !a.is_free(v) {
                return f.clone();
            }
            if tv.contains(x) {
                let mut avoid = a.all_vars();
                avoid.extend(tv.iter().cloned());
                avoid.insert(v.clone());
                let y = x.primed().fresh(&avoid);
                let renamed = subst(a, x, &Term::Var(y.clone()), &BTreeSet::from([y.clone()]));
                rebuild(y, subst(&renamed, v, t, tv))
            } else {
                rebuild(x.clone(), subst(a, v, t, tv))
            }
        }
    }
}
