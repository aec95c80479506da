//! Birelational models for intuitionistic modal logic.
//!
//! A [`BimodalModel`] is read with `leqD` as the intuitionistic order and
//! `leqG` as the modal accessibility relation. Truth of atoms persists
//! along the order; the connectives `->`, `~` and `forall` look at every
//! later world, `[]G` at everything accessible from a later world.

use super::eval::{Assignment, EvalError};
use super::frame::{check_convergent, check_domains, check_preorder, ones, subsets, ValidationReport, Violation, WorldId};
use super::model::{check_extensions, check_stability, BimodalModel, Value};
use crate::formula::{Formula, Mode, Sort, Term, Var};

/// Conditions for an intuitionistic S4.2 model: both relations preorders,
/// accessibility convergent, the two Fischer Servi conditions, domains
/// growing along both relations, atoms persistent and stable under
/// accessibility.
pub fn validate_birelational(m: &BimodalModel) -> ValidationReport {
    let fr = m.frame();
    let mut out = Vec::new();
    check_preorder(fr, Mode::D, &mut out);
    check_preorder(fr, Mode::G, &mut out);
    check_convergent(fr, Mode::G, &mut out);
    let name = |w: WorldId| fr.world_name(w).to_string();
    for a in 0..fr.world_count() {
        for b in ones(fr.succ(Mode::D, a)) {
            for c in ones(fr.succ(Mode::G, a)) {
                if !ones(fr.succ(Mode::G, b)).any(|d| fr.leq(Mode::D, c, d)) {
                    out.push(Violation::NoForthWitness { a: name(a), b: name(b), c: name(c) });
                }
            }
        }
        for b in ones(fr.succ(Mode::G, a)) {
            for c in ones(fr.succ(Mode::D, b)) {
                if !ones(fr.succ(Mode::D, a)).any(|d| fr.leq(Mode::G, d, c)) {
                    out.push(Violation::NoBackWitness { a: name(a), b: name(b), c: name(c) });
                }
            }
        }
    }
    check_domains(fr, Mode::D, &mut out);
    check_domains(fr, Mode::G, &mut out);
    check_extensions(m, &mut out);
    for p in 0..m.preds().len() {
        for a in 0..fr.world_count() {
            for b in ones(fr.succ(Mode::D, a)) {
                for t in m.tuples(p, a) {
                    if !m.holds(p, b, &t) {
                        out.push(Violation::NotPersistent {
                            pred: m.preds()[p].name.clone(),
                            a: name(a),
                            b: name(b),
                            tuple: m.tuple_name(&t),
                        });
                    }
                }
            }
        }
    }
    check_stability(m, Mode::G, &mut out);
    ValidationReport { violations: out }
}

/// Intuitionistic truth of `f` at `w`. The only modality is `G`.
pub fn eval_intuitionistic(m: &BimodalModel, w: WorldId, a: &Assignment, f: &Formula) -> Result<bool, EvalError> {
    if w >= m.frame().world_count() {
        return Err(EvalError::NoWorld(w));
    }
    if f.modes().contains(&Mode::D) {
        return Err(EvalError::ModalityD);
    }
    super::eval::check_evaluable(m, w, a, &strip_modalities(f))?;
    let mut env: Vec<(Var, Value)> = a.iter().map(|(v, x)| (v.clone(), *x)).collect();
    Ok(Int { m }.eval(w, &mut env, f))
}

// Modalities removed so that the classical precondition check applies.
fn strip_modalities(f: &Formula) -> Formula {
    match f {
        Formula::Nec(_, a) | Formula::Poss(_, a) => strip_modalities(a),
        Formula::Not(a) => Formula::not(strip_modalities(a)),
        Formula::And(a, b) => Formula::and(strip_modalities(a), strip_modalities(b)),
        Formula::Or(a, b) => Formula::or(strip_modalities(a), strip_modalities(b)),
        Formula::Implies(a, b) => Formula::implies(strip_modalities(a), strip_modalities(b)),
        Formula::Forall(v, a) => Formula::forall(v.clone(), strip_modalities(a)),
        Formula::Exists(v, a) => Formula::exists(v.clone(), strip_modalities(a)),
        atom => atom.clone(),
    }
}

struct Int<'a> {
    m: &'a BimodalModel,
}

impl Int<'_> {
    fn value(&self, env: &[(Var, Value)], t: &Term) -> Value {
        match t {
            Term::Var(v) => env.iter().rev().find(|(x, _)| x == v).map(|(_, x)| *x).expect("checked"),
            Term::Const(c) => Value::Ind(self.m.frame().individual_index(c).expect("checked")),
        }
    }

    fn range(&self, w: WorldId, v: &Var) -> Vec<Value> {
        let dom = self.m.frame().dom(w);
        match v.sort() {
            Sort::Singular => ones(dom).map(Value::Ind).collect(),
            Sort::Plural => subsets(dom).map(Value::Plural).collect(),
        }
    }

    fn some(&self, w: WorldId, env: &mut Vec<(Var, Value)>, v: &Var, body: &Formula, all: bool) -> bool {
        for val in self.range(w, v) {
            env.push((v.clone(), val));
            let r = self.eval(w, env, body);
            env.pop();
            if r != all {
                return r;
            }
        }
        all
    }

    fn eval(&self, w: WorldId, env: &mut Vec<(Var, Value)>, f: &Formula) -> bool {
        let fr = self.m.frame();
        let later = fr.succ(Mode::D, w);
        match f {
            Formula::Atom(p, args) => {
                let p = self.m.pred_index(p).expect("checked");
                let dom = fr.dom(w);
                let tuple: Vec<Value> = args
                    .iter()
                    .map(|t| match self.value(env, t) {
                        Value::Plural(s) => Value::Plural(s & dom),
                        v => v,
                    })
                    .collect();
                self.m.holds(p, w, &tuple)
            }
            Formula::Eq(a, b) => self.value(env, a) == self.value(env, b),
            Formula::Prec(t, xx) => {
                let Value::Ind(d) = self.value(env, t) else { unreachable!() };
                self.value(env, &Term::Var(xx.clone())).support() >> d & 1 == 1
            }
            Formula::And(a, b) => self.eval(w, env, a) && self.eval(w, env, b),
            Formula::Or(a, b) => self.eval(w, env, a) || self.eval(w, env, b),
            Formula::Implies(a, b) => ones(later).all(|u| !self.eval(u, env, a) || self.eval(u, env, b)),
            Formula::Not(a) => ones(later).all(|u| !self.eval(u, env, a)),
            Formula::Forall(v, a) => ones(later).all(|u| self.some(u, env, v, a, true)),
            Formula::Exists(v, a) => self.some(w, env, v, a, false),
            Formula::Nec(_, a) => ones(later).all(|u| ones(fr.succ(Mode::G, u)).all(|x| self.eval(x, env, a))),
            Formula::Poss(_, a) => ones(fr.succ(Mode::G, w)).any(|x| self.eval(x, env, a)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::kripke::{parse_model, validate_model};

    /// Identity order; w0 R w1; the domain grows and `P` stays {a}.
    const GROWTH: &str = "\
worlds: w0 w1
leqG: w0<=w1
dom w0: a
dom w1: a b
interp w0 P: (a)
interp w1 P: (a)
";

    #[test]
    fn stability_schema_fails_for_universal_formula() {
        let m = parse_model(GROWTH).unwrap().model;
        assert!(validate_birelational(&m).is_valid(), "{}", validate_birelational(&m));
        let sig = m.signature();
        let e = |s: &str| eval_intuitionistic(&m, 0, &Assignment::new(), &parse(s, &sig).unwrap()).unwrap();
        assert!(e("P(a) -> []G P(a)"));
        assert!(e("forall x P(x)"));
        assert!(!e("forall x P(x) -> []G forall x P(x)"));
        assert!(e("<>G P(a) -> []G P(a)"));
    }

    #[test]
    fn persistence_and_fischer_servi_checked() {
        let m = parse_model("worlds: w0 w1\nleqD: w0<=w1\ndom w0: a\ndom w1: a\ninterp w0 P: (a)\n").unwrap().model;
        let r = validate_birelational(&m);
        assert!(r.violations.iter().any(|v| matches!(v, Violation::NotPersistent { .. })));
        // a bimodal model need not be birelational and conversely
        let m = parse_model("worlds: w0 w1 w2\nleqD: w0<=w1\nleqG: w0<=w2\ndom w0: a\ndom w1: a\ndom w2: a\n")
            .unwrap()
            .model;
        assert!(!validate_model(&m).is_valid());
        assert!(validate_birelational(&m).violations.iter().any(|v| matches!(v, Violation::NoForthWitness { .. })));
    }

    #[test]
    fn excluded_middle_fails_on_a_chain() {
        let m = parse_model("worlds: w0 w1\nleqD: w0<=w1\ndom w0: a\ndom w1: a\ninterp w1 P: (a)\n").unwrap().model;
        let f = parse("P(a) | ~P(a)", &m.signature()).unwrap();
        assert!(!eval_intuitionistic(&m, 0, &Assignment::new(), &f).unwrap());
        assert!(eval_intuitionistic(&m, 1, &Assignment::new(), &f).unwrap());
    }
}
