//! Countermodel search: the first model in enumeration order that falsifies
//! a formula, or a report that the bounds were exhausted.

use std::fmt;

use serde::Serialize;

use super::battery::{Battery, Reading};
use super::enumerate::{ModelRef, ModelSpace, SpaceSize};
use super::{SearchBounds, SearchError};
use crate::formula::{Formula, Mode, PredDecl, Signature, Sort};
use crate::kripke::{
    default_individual_name, eval_intuitionistic, ones, subsets, validate_birelational, Assignment, BimodalFrame,
    BimodalModel, ModelFlags, Value, WorldId,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Semantics {
    Classical,
    Forcing,
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semantics::Classical => "classical",
            Semantics::Forcing => "forcing",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Countermodel {
    pub model: BimodalModel,
    pub world: WorldId,
    pub assignment: Assignment,
    /// Position in the enumeration; birelational models have none.
    pub model_ref: Option<ModelRef>,
}

impl Countermodel {
    pub fn describe(&self) -> String {
        let w = self.model.frame().world_name(self.world);
        let at = match self.model_ref {
            Some(r) => format!("{r} at {w}"),
            None => format!("at {w}"),
        };
        if self.assignment.is_empty() {
            at
        } else {
            format!("{at} with {}", self.assignment.render(&self.model))
        }
    }
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found(Box<Countermodel>),
    /// No countermodel within the bounds. This is not a proof of validity.
    Exhausted { space: SpaceSize, models: u64 },
}

impl SearchOutcome {
    pub fn countermodel(&self) -> Option<&Countermodel> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            SearchOutcome::Exhausted { .. } => None,
        }
    }
}

/// Signature of the predicates and constants a formula mentions.
pub(crate) fn signature_of(f: &Formula, b: &SearchBounds) -> Result<Signature, SearchError> {
    let mut sig = Signature::new();
    for (p, sorts) in f.predicates() {
        if sorts.len() > b.max_arity {
            return Err(SearchError::ArityCap { pred: p, arity: sorts.len(), cap: b.max_arity });
        }
        sig.declare(PredDecl::new(&p, &sorts)).map_err(|e| SearchError::Formula(e.to_string()))?;
    }
    for c in f.constants() {
        sig.add_constant(&c).map_err(|e| SearchError::Formula(e.to_string()))?;
    }
    Ok(sig)
}

/// Universe size of a model space built for `sig`.
pub(crate) fn universe(sig: &Signature, b: &SearchBounds) -> usize {
    b.max_domain.max(sig.constants().len())
}

/// First countermodel to `f` in enumeration order.
pub fn find_countermodel(
    f: &Formula,
    semantics: Semantics,
    b: &SearchBounds,
    flags: ModelFlags,
    jobs: usize,
) -> Result<SearchOutcome, SearchError> {
    b.check()?;
    if semantics == Semantics::Forcing && !f.is_modal_free() {
        return Err(SearchError::Formula("forcing is defined for modality-free formulas only".into()));
    }
    let sig = signature_of(f, b)?;
    let space = ModelSpace::new(&sig, b, flags)?;
    let mut battery = Battery::new(universe(&sig, b));
    let reading = match semantics {
        Semantics::Classical => Reading::Classical,
        Semantics::Forcing => Reading::Forcing,
    };
    battery.valid("target", f, reading)?;
    let run = battery.run(&space, jobs, true)?;
    Ok(match &run.failures[0] {
        Some(fail) => {
            let model = space.model(fail.model);
            let assignment = battery.assignment(0, fail);
            SearchOutcome::Found(Box::new(Countermodel { model, world: fail.world, assignment, model_ref: Some(fail.model) }))
        }
        None => SearchOutcome::Exhausted { space: space.size(), models: run.models },
    })
}

fn is_preorder(r: &[u64]) -> bool {
    (0..r.len()).all(|a| r[a] >> a & 1 == 1 && ones(r[a]).all(|b| r[b] & !r[a] == 0))
}

/// Reflexive relations on `n` worlds that are preorders.
fn preorders(n: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let per = 1u64 << (n - 1);
    for code in 0..per.pow(n as u32) {
        let mut r = vec![0u64; n];
        let mut c = code;
        for (a, ra) in r.iter_mut().enumerate() {
            let bits = c % per;
            c /= per;
            // spread the n-1 bits around position a
            let low = bits & ((1 << a) - 1);
            let high = (bits >> a) << (a + 1);
            *ra = low | high | 1 << a;
        }
        if is_preorder(&r) {
            out.push(r);
        }
    }
    out
}

fn assignments(m: &BimodalModel, w: WorldId, vars: &[crate::formula::Var]) -> Vec<Assignment> {
    let dom = m.frame().dom(w);
    let mut out = vec![Assignment::new()];
    for v in vars {
        let choices: Vec<Value> = match v.sort() {
            Sort::Singular => ones(dom).map(Value::Ind).collect(),
            Sort::Plural => subsets(dom).map(Value::Plural).collect(),
        };
        out = out
            .into_iter()
            .flat_map(|a| choices.iter().map(move |c| a.clone().with(v.clone(), *c)))
            .collect();
    }
    out
}

/// Countermodel to `f` among intuitionistic birelational models: `leqD`
/// is the intuitionistic order along which facts persist, `G` the modal
/// relation. Models are enumerated without isomorphism pruning, smallest
/// world count first.
pub fn find_birelational_countermodel(f: &Formula, b: &SearchBounds) -> Result<SearchOutcome, SearchError> {
    b.check()?;
    if f.modes().contains(&Mode::D) {
        return Err(SearchError::Formula("the intuitionistic reading has only the G modality".into()));
    }
    let sig = signature_of(f, b)?;
    let u = universe(&sig, b);
    if b.max_worlds > 3 || u > 3 {
        return Err(SearchError::TooLarge("birelational search is limited to 3 worlds and 3 individuals".into()));
    }
    let names: Vec<String> = {
        let consts: Vec<String> = sig.constants().iter().cloned().collect();
        (0..u).map(|i| consts.get(i).cloned().unwrap_or_else(|| default_individual_name(i))).collect()
    };
    let fixed: u64 = (1u64 << sig.constants().len()) - 1;
    let preds: Vec<PredDecl> = sig.preds().collect();
    let free: Vec<crate::formula::Var> = f.free_vars().into_iter().collect();
    let flags = ModelFlags { g_stable_atoms: true, d_stable_atoms: false, decidable_identity: true };
    let (mut frames_seen, mut models) = (0usize, 0u64);
    let mut codes: u128 = 0;
    for n in b.min_worlds..=b.max_worlds {
        let orders = preorders(n);
        let worlds: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
        let doms: Vec<u64> = (1..1u64 << u).filter(|d| d & fixed == fixed).collect();
        for d in &orders {
            for g in &orders {
                for dom_code in 0..doms.len().pow(n as u32) {
                    let mut dom = vec![0u64; n];
                    let mut c = dom_code;
                    for x in dom.iter_mut() {
                        *x = doms[c % doms.len()];
                        c /= doms.len();
                    }
                    let fr = BimodalFrame::from_masks(worlds.clone(), names.clone(), d.clone(), g.clone(), dom)
                        .map_err(|e| SearchError::Formula(e.to_string()))?;
                    let bare = BimodalModel::new(fr.clone(), vec![], flags).map_err(|e| SearchError::Formula(e.to_string()))?;
                    if !validate_birelational(&bare).is_valid() {
                        continue;
                    }
                    frames_seen += 1;
                    let mut slots = Vec::new();
                    let template = BimodalModel::new(fr.clone(), preds.clone(), flags)
                        .map_err(|e| SearchError::Formula(e.to_string()))?;
                    for p in 0..preds.len() {
                        for w in 0..n {
                            for t in template.tuples_over(p, fr.dom(w)) {
                                slots.push((p, w, t));
                            }
                        }
                    }
                    if slots.len() > 20 {
                        return Err(SearchError::TooLarge(format!("{} atomic facts per frame", slots.len())));
                    }
                    codes += 1u128 << slots.len();
                    for code in 0..1u64 << slots.len() {
                        let mut m = template.clone();
                        for (i, (p, w, t)) in slots.iter().enumerate() {
                            if code >> i & 1 == 1 {
                                m.set(*p, *w, t, true).map_err(|e| SearchError::Formula(e.to_string()))?;
                            }
                        }
                        if !persistent(&m) {
                            continue;
                        }
                        models += 1;
                        for w in 0..n {
                            for a in assignments(&m, w, &free) {
                                let ok = eval_intuitionistic(&m, w, &a, f).map_err(|e| SearchError::Formula(e.to_string()))?;
                                if !ok {
                                    let report = validate_birelational(&m);
                                    if !report.is_valid() {
                                        return Err(SearchError::Formula(format!(
                                            "internal: candidate birelational model is invalid: {}",
                                            report.violations.len()
                                        )));
                                    }
                                    return Ok(SearchOutcome::Found(Box::new(Countermodel {
                                        model: m,
                                        world: w,
                                        assignment: a,
                                        model_ref: None,
                                    })));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(SearchOutcome::Exhausted { space: SpaceSize { frames: frames_seen, codes }, models })
}

/// Extensions persist along `leqD` and agree along `G` on shared objects.
fn persistent(m: &BimodalModel) -> bool {
    let fr = m.frame();
    for p in 0..m.preds().len() {
        for a in 0..fr.world_count() {
            for t in m.tuples(p, a) {
                if ones(fr.succ(Mode::D, a)).any(|b| !m.holds(p, b, &t)) {
                    return false;
                }
            }
            for c in ones(fr.succ(Mode::G, a)) {
                let shared = fr.dom(a) & fr.dom(c);
                for t in m.tuples_over(p, shared) {
                    if m.holds(p, a, &t) != m.holds(p, c, &t) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_infer;
    use crate::kripke::{eval_classical, eval_forcing};

    fn f(s: &str) -> Formula {
        parse_infer(s).unwrap().0
    }

    fn bounds(w: usize, d: usize) -> SearchBounds {
        SearchBounds { max_worlds: w, max_domain: d, ..SearchBounds::default() }
    }

    #[test]
    fn brouwer_for_d_fails_in_two_worlds() {
        let target = f("P(a) -> []D <>D P(a)");
        let out = find_countermodel(&target, Semantics::Classical, &bounds(2, 1), ModelFlags::default(), 1).unwrap();
        let c = out.countermodel().expect("countermodel");
        assert_eq!(c.model.frame().world_count(), 2);
        assert!(!eval_classical(&c.model, c.world, &c.assignment, &target).unwrap());
    }

    #[test]
    fn dot2_for_d_fails_in_three_worlds() {
        let target = f("<>D []D P(a) -> []D <>D P(a)");
        let out = find_countermodel(&target, Semantics::Classical, &bounds(3, 1), ModelFlags::default(), 1).unwrap();
        let c = out.countermodel().expect("countermodel");
        assert_eq!(c.model.frame().world_count(), 3);
        let out = find_countermodel(&target, Semantics::Classical, &bounds(2, 1), ModelFlags::default(), 1).unwrap();
        assert!(out.countermodel().is_none());
    }

    #[test]
    fn mixed2_exhausts() {
        let out =
            find_countermodel(&f("<>G []D P(a) -> []D <>G P(a)"), Semantics::Classical, &bounds(3, 1), ModelFlags::default(), 1)
                .unwrap();
        assert!(matches!(out, SearchOutcome::Exhausted { models, .. } if models > 0));
    }

    #[test]
    fn forcing_excluded_middle_and_free_variables() {
        let sig = Signature::new().with_pred("P", &[Sort::Singular]).unwrap();
        let target = crate::formula::parse("P(x) | ~P(x)", &sig).unwrap();
        let out = find_countermodel(&target, Semantics::Forcing, &bounds(2, 1), ModelFlags::default(), 1).unwrap();
        let c = out.countermodel().expect("countermodel");
        assert!(!eval_forcing(&c.model, c.world, &c.assignment, &target).unwrap());
        assert!(c.assignment.get(&crate::formula::Var::new("x")).is_some());
        assert!(find_countermodel(&f("[]D P(a)"), Semantics::Forcing, &bounds(2, 1), ModelFlags::default(), 1).is_err());
    }

    #[test]
    fn same_answer_with_threads() {
        let target = f("exists x P(x) -> []D exists x P(x)");
        let one = find_countermodel(&target, Semantics::Classical, &bounds(3, 2), ModelFlags::default(), 1).unwrap();
        let four = find_countermodel(&target, Semantics::Classical, &bounds(3, 2), ModelFlags::default(), 4).unwrap();
        let (a, b) = (one.countermodel().unwrap(), four.countermodel().unwrap());
        assert_eq!((a.model_ref, a.world), (b.model_ref, b.world));
    }

    #[test]
    fn birelational_growth() {
        let out = find_birelational_countermodel(&f("forall x P(x) -> []G forall x P(x)"), &bounds(2, 2)).unwrap();
        let c = out.countermodel().expect("countermodel");
        assert!(validate_birelational(&c.model).is_valid());
        let out = find_birelational_countermodel(&f("P(a) -> []G P(a)"), &bounds(2, 2)).unwrap();
        assert!(out.countermodel().is_none());
        assert_eq!(preorders(3).len(), 29);
    }
}
