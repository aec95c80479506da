use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::frame::{ones, subsets, WorldId};
use super::model::{BimodalModel, Value};
use crate::formula::{Formula, Mode, Sort, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("no world {0}")]
    NoWorld(usize),
    #[error("variable {0} is free but unassigned")]
    Unassigned(String),
    #[error("variable {var} is {sort} but was assigned a value of the other sort")]
    SortMismatch { var: String, sort: Sort },
    #[error("value of {var} is not in the domain of {world}")]
    OutOfDomain { var: String, world: String },
    #[error("unknown constant {0}")]
    UnknownConstant(String),
    #[error("constant {constant} does not exist at {world}")]
    ConstantOutOfDomain { constant: String, world: String },
    #[error("unknown predicate {0}")]
    UnknownPredicate(String),
    #[error("predicate {0} used with the wrong argument sorts")]
    PredicateSorts(String),
    #[error("forcing is defined for modality-free formulas only")]
    ModalInForcing,
    #[error("intuitionistic formulas use the G modality only")]
    ModalityD,
}

/// Values of variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<Var, Value>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, v: Var, val: Value) -> Self {
        self.0.insert(v, val);
        self
    }

    pub fn insert(&mut self, v: Var, val: Value) {
        self.0.insert(v, val);
    }

    pub fn get(&self, v: &Var) -> Option<Value> {
        self.0.get(v).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Value)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn render(&self, m: &BimodalModel) -> String {
        let parts: Vec<String> = self.0.iter().map(|(v, x)| format!("{v}={}", m.value_name(*x))).collect();
        parts.join(" ")
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(v, x)| format!("{v}={x:?}")).collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Semantics {
    Classical,
    Forcing,
}

/// Truth of a formula at a world under an assignment.
pub fn eval_classical(m: &BimodalModel, w: WorldId, a: &Assignment, f: &Formula) -> Result<bool, EvalError> {
    run(m, w, a, f, Semantics::Classical, None)
}

/// Forcing of a modality-free formula at a world: atoms, implications,
/// negations and universals look at all D-successors, existentials at
/// G-successors.
pub fn eval_forcing(m: &BimodalModel, w: WorldId, a: &Assignment, f: &Formula) -> Result<bool, EvalError> {
    run(m, w, a, f, Semantics::Forcing, None)
}

/// Like [`eval_classical`], also returning one line per evaluated subformula.
pub fn explain_classical(
    m: &BimodalModel,
    w: WorldId,
    a: &Assignment,
    f: &Formula,
) -> Result<(bool, Vec<String>), EvalError> {
    let mut trace = Vec::new();
    let r = run(m, w, a, f, Semantics::Classical, Some(&mut trace))?;
    Ok((r, trace))
}

pub fn explain_forcing(
    m: &BimodalModel,
    w: WorldId,
    a: &Assignment,
    f: &Formula,
) -> Result<(bool, Vec<String>), EvalError> {
    let mut trace = Vec::new();
    let r = run(m, w, a, f, Semantics::Forcing, Some(&mut trace))?;
    Ok((r, trace))
}

/// Check that `f` can be evaluated at `w` under `a`.
pub fn check_evaluable(m: &BimodalModel, w: WorldId, a: &Assignment, f: &Formula) -> Result<(), EvalError> {
    let fr = m.frame();
    if w >= fr.world_count() {
        return Err(EvalError::NoWorld(w));
    }
    let world = fr.world_name(w).to_string();
    for v in f.free_vars() {
        let val = a.get(&v).ok_or_else(|| EvalError::Unassigned(v.to_string()))?;
        if val.sort() != v.sort() {
            return Err(EvalError::SortMismatch { var: v.to_string(), sort: v.sort() });
        }
        if val.support() & !fr.dom(w) != 0 {
            return Err(EvalError::OutOfDomain { var: v.to_string(), world });
        }
    }
    for c in f.constants() {
        let d = fr.individual_index(&c).ok_or_else(|| EvalError::UnknownConstant(c.clone()))?;
        if !fr.in_dom(w, d) {
            return Err(EvalError::ConstantOutOfDomain { constant: c, world });
        }
    }
    for (p, sorts) in f.predicates() {
        let i = m.pred_index(&p).ok_or_else(|| EvalError::UnknownPredicate(p.clone()))?;
        if m.preds()[i].sorts != sorts {
            return Err(EvalError::PredicateSorts(p));
        }
    }
    Ok(())
}

fn run(
    m: &BimodalModel,
    w: WorldId,
    a: &Assignment,
    f: &Formula,
    sem: Semantics,
    trace: Option<&mut Vec<String>>,
) -> Result<bool, EvalError> {
    check_evaluable(m, w, a, f)?;
    if sem == Semantics::Forcing && !f.is_modal_free() {
        return Err(EvalError::ModalInForcing);
    }
    let mut env: Vec<(Var, Value)> = a.iter().map(|(v, x)| (v.clone(), *x)).collect();
    let mut ev = Ev { m, trace, depth: 0 };
    Ok(match sem {
        Semantics::Classical => ev.classical(w, &mut env, f),
        Semantics::Forcing => ev.forcing(w, &mut env, f),
    })
}

type EvalFn<E> = fn(&mut E, WorldId, &mut Vec<(Var, Value)>, &Formula) -> bool;

struct Ev<'a> {
    m: &'a BimodalModel,
    trace: Option<&'a mut Vec<String>>,
    depth: usize,
}

fn lookup(env: &[(Var, Value)], v: &Var) -> Value {
    env.iter().rev().find(|(x, _)| x == v).map(|(_, val)| *val).expect("checked free variables")
}

impl Ev<'_> {
    fn term(&self, env: &[(Var, Value)], t: &Term) -> Value {
        match t {
            Term::Var(v) => lookup(env, v),
            Term::Const(c) => Value::Ind(self.m.frame().individual_index(c).expect("checked constants")),
        }
    }

    fn atomic(&self, w: WorldId, env: &[(Var, Value)], f: &Formula) -> bool {
        match f {
            Formula::Atom(p, args) => {
                let p = self.m.pred_index(p).expect("checked predicates");
                let dom = self.m.frame().dom(w);
                let tuple: Vec<Value> = args
                    .iter()
                    .map(|t| match self.term(env, t) {
                        Value::Plural(s) => Value::Plural(s & dom),
                        v => v,
                    })
                    .collect();
                self.m.holds(p, w, &tuple)
            }
            Formula::Eq(a, b) => self.term(env, a) == self.term(env, b),
            Formula::Prec(t, xx) => {
                let Value::Ind(d) = self.term(env, t) else { unreachable!() };
                lookup(env, xx).support() >> d & 1 == 1
            }
            _ => unreachable!(),
        }
    }

    /// Values a variable of the given sort ranges over at a world.
    fn range(&self, w: WorldId, v: &Var) -> Vec<Value> {
        let dom = self.m.frame().dom(w);
        match v.sort() {
            Sort::Singular => ones(dom).map(Value::Ind).collect(),
            Sort::Plural => subsets(dom).map(Value::Plural).collect(),
        }
    }

    fn note(&mut self, w: WorldId, env: &[(Var, Value)], f: &Formula, sym: &str, r: bool) {
        if let Some(t) = self.trace.as_deref_mut() {
            let fr = self.m.frame();
            let binds: Vec<String> = env.iter().map(|(v, x)| format!("{v}={}", self.m.value_name(*x))).collect();
            let binds = if binds.is_empty() { String::new() } else { format!(" [{}]", binds.join(" ")) };
            t.push(format!(
                "{}{} {sym} {f}{binds} : {r}",
                "  ".repeat(self.depth),
                fr.world_name(w)
            ));
        }
    }

    fn quantify(
        &mut self,
        w: WorldId,
        env: &mut Vec<(Var, Value)>,
        v: &Var,
        body: &Formula,
        universal: bool,
        eval: EvalFn<Self>,
    ) -> bool {
        for val in self.range(w, v) {
            env.push((v.clone(), val));
            let r = eval(self, w, env, body);
            env.pop();
            if r != universal {
                return r;
            }
        }
        universal
    }

    fn classical(&mut self, w: WorldId, env: &mut Vec<(Var, Value)>, f: &Formula) -> bool {
        self.depth += 1;
        let m = self.m;
        let fr = m.frame();
        let r = match f {
            Formula::Atom(..) | Formula::Eq(..) | Formula::Prec(..) => self.atomic(w, env, f),
            Formula::Not(a) => !self.classical(w, env, a),
            Formula::And(a, b) => self.classical(w, env, a) && self.classical(w, env, b),
            Formula::Or(a, b) => self.classical(w, env, a) || self.classical(w, env, b),
            Formula::Implies(a, b) => !self.classical(w, env, a) || self.classical(w, env, b),
            Formula::Nec(m, a) => ones(fr.succ(*m, w)).all(|u| self.classical(u, env, a)),
            Formula::Poss(m, a) => ones(fr.succ(*m, w)).any(|u| self.classical(u, env, a)),
            Formula::Forall(v, a) => self.quantify(w, env, v, a, true, Self::classical),
            Formula::Exists(v, a) => self.quantify(w, env, v, a, false, Self::classical),
        };
        self.depth -= 1;
        self.note(w, env, f, "|=", r);
        r
    }

    fn forcing(&mut self, w: WorldId, env: &mut Vec<(Var, Value)>, f: &Formula) -> bool {
        self.depth += 1;
        let m = self.m;
        let fr = m.frame();
        let up_d = ones(fr.succ(Mode::D, w));
        let r = match f {
            Formula::Atom(..) | Formula::Eq(..) | Formula::Prec(..) => {
                up_d.into_iter().all(|u| self.atomic(u, env, f))
            }
            Formula::And(a, b) => self.forcing(w, env, a) && self.forcing(w, env, b),
            Formula::Or(a, b) => self.forcing(w, env, a) || self.forcing(w, env, b),
            Formula::Implies(a, b) => {
                up_d.into_iter().all(|u| !self.forcing(u, env, a) || self.forcing(u, env, b))
            }
            Formula::Not(a) => up_d.into_iter().all(|u| !self.forcing(u, env, a)),
            Formula::Exists(v, a) => ones(fr.succ(Mode::G, w))
                .any(|u| self.quantify(u, env, v, a, false, Self::forcing)),
            Formula::Forall(v, a) => {
                up_d.into_iter().all(|u| self.quantify(u, env, v, a, true, Self::forcing))
            }
            Formula::Nec(..) | Formula::Poss(..) => unreachable!("checked modal-free"),
        };
        self.depth -= 1;
        self.note(w, env, f, "||-", r);
        r
    }
}
