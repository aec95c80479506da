//! Property suites: each one checks a family of claims over a bounded
//! model space and reports pass/fail per instance.
//!
//! "No counterexample" always means "none within the bounds"; reports call
//! that outcome `exhausted-bounds` and never "valid".

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::Serialize;

use super::battery::{Battery, BatteryRun, Reading};
use super::countermodel::{find_birelational_countermodel, find_countermodel, universe, SearchOutcome, Semantics};
use super::definiteness::definiteness_instances;
use super::enumerate::{ModelSpace, SpaceSize};
use super::pool::{modal_plural_pool, modal_pool, plural_pool, singular_pool, standard_signature};
use super::{SearchBounds, SearchError};
use crate::formula::{parse, Formula, Mode, Signature, Term, Var};
use crate::kripke::{eval_classical, eval_forcing, render_model, spectrum, Assignment, BimodalModel, ModelFlags, Value};
use crate::proofs::{instantiate_schema, parse_derivation, Instantiation, SchemaArg, CORPUS};
use crate::translate::{ext_godel, ext_potentialist, godel, potentialist, star};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteId {
    Link,
    Commutation,
    Stability,
    BmAxioms,
    Spectra,
    Rigidity,
    DecPrec,
    Omni,
    RsFailure,
    Unfaithful,
    EdId,
    Exhibits,
}

pub const SUITES: [SuiteId; 12] = [
    SuiteId::Link,
    SuiteId::Commutation,
    SuiteId::Stability,
    SuiteId::BmAxioms,
    SuiteId::Spectra,
    SuiteId::Rigidity,
    SuiteId::DecPrec,
    SuiteId::Omni,
    SuiteId::RsFailure,
    SuiteId::Unfaithful,
    SuiteId::EdId,
    SuiteId::Exhibits,
];

impl SuiteId {
    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::Link => "link",
            SuiteId::Commutation => "commutation",
            SuiteId::Stability => "stability",
            SuiteId::BmAxioms => "bm-axioms",
            SuiteId::Spectra => "spectra",
            SuiteId::Rigidity => "rigidity",
            SuiteId::DecPrec => "dec-prec",
            SuiteId::Omni => "omni",
            SuiteId::RsFailure => "rs-failure",
            SuiteId::Unfaithful => "unfaithful",
            SuiteId::EdId => "ed-id",
            SuiteId::Exhibits => "exhibits",
        }
    }

    /// The claim the suite tests.
    pub fn claim(self) -> &'static str {
        match self {
            SuiteId::Link => "forcing a formula agrees with the classical truth of its star translation",
            SuiteId::Commutation => {
                "the composite translations ext-pot(godel f) and ext-godel(pot f) agree with star f"
            }
            SuiteId::Stability => {
                "Goedel images are positively D-stable; potentialist images and their negations are G-stable"
            }
            SuiteId::BmAxioms => "instances of the BM and rigidity schemas are true everywhere",
            SuiteId::Spectra => "possG lies within possD, possG grows and possD shrinks along leqD",
            SuiteId::Rigidity => "pluralities are rigid and inextensible along both modalities",
            SuiteId::DecPrec => "the Goedel image of Dec-prec follows from the D-stability of membership",
            SuiteId::Omni => "Goedel images of Omni-prec and Omni-incl follow from D-inextensibility",
            SuiteId::RsFailure => "reverse subsumption []G P(a) -> []D P(a) is invalid",
            SuiteId::Unfaithful => {
                "the extended Goedel image of phi -> []G phi is valid although phi -> []G phi is not intuitionistically valid"
            }
            SuiteId::EdId => "principles of definiteness are forced, read over a finite parameter pool",
            SuiteId::Exhibits => "B for D, B for G, .2 for D, reverse subsumption and forced excluded middle all fail",
        }
    }

    pub fn expected(self) -> &'static str {
        match self {
            SuiteId::Link | SuiteId::Commutation => "zero mismatches",
            SuiteId::RsFailure | SuiteId::Exhibits => "countermodels found",
            SuiteId::Unfaithful => "image without counterexample, derivation accepted, source countermodel found",
            SuiteId::Stability => "no counterexample to stability; a counterexample to negative D-stability",
            _ => "zero failures",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteId {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SUITES.into_iter().find(|id| id.as_str() == s).ok_or_else(|| SearchError::UnknownSuite(s.to_string()))
    }
}

/// What a single check came to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    /// Every bounded model was checked without a counterexample.
    ExhaustedBounds,
    Counterexample,
    Accepted,
    Rejected,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::ExhaustedBounds => "exhausted-bounds",
            Outcome::Counterexample => "counterexample",
            Outcome::Accepted => "accepted",
            Outcome::Rejected => "rejected",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceResult {
    pub suite: SuiteId,
    pub instance: String,
    pub expected: Outcome,
    pub observed: Outcome,
    pub verdict: Verdict,
    /// Model reference, world and assignment of a counterexample.
    pub witness: Option<String>,
    /// The counterexample in the model file format.
    pub model: Option<String>,
}

impl InstanceResult {
    fn new(suite: SuiteId, instance: String, expected: Outcome, observed: Outcome) -> Self {
        let verdict = if expected == observed { Verdict::Pass } else { Verdict::Fail };
        InstanceResult { suite, instance, expected, observed, verdict, witness: None, model: None }
    }

    fn with_witness(mut self, witness: String, model: &BimodalModel) -> Self {
        self.witness = Some(witness);
        self.model = Some(render_model(model));
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: SuiteId,
    pub claim: &'static str,
    pub expected: &'static str,
    pub bounds: SearchBounds,
    pub space: Option<SpaceSize>,
    pub models: u64,
    /// Points (world, assignment) checked, summed over instances.
    pub checks: u64,
    pub failures: u64,
    pub instances: Vec<InstanceResult>,
    pub notes: Vec<String>,
    pub passed: bool,
}

impl SuiteReport {
    fn new(suite: SuiteId, b: &SearchBounds) -> Self {
        SuiteReport {
            suite,
            claim: suite.claim(),
            expected: suite.expected(),
            bounds: b.clone(),
            space: None,
            models: 0,
            checks: 0,
            failures: 0,
            instances: Vec::new(),
            notes: Vec::new(),
            passed: false,
        }
    }

    fn finish(mut self) -> Self {
        self.failures = self.instances.iter().filter(|i| i.verdict == Verdict::Fail).count() as u64;
        self.passed = self.failures == 0 && !self.instances.is_empty();
        self
    }

    /// One-line summary.
    pub fn summary(&self) -> String {
        match self.suite {
            SuiteId::Link | SuiteId::Commutation => format!("{} mismatches / {} checks", self.failures, self.checks),
            _ => format!(
                "{} failures / {} instances ({} models, {} checks)",
                self.failures,
                self.instances.len(),
                self.models,
                self.checks
            ),
        }
    }

    /// Line-oriented report: header, failures and notable instances.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let b = &self.bounds;
        let _ = writeln!(out, "suite {}: {}", self.suite, self.claim);
        let _ = writeln!(out, "expected: {}", self.expected);
        let _ = writeln!(
            out,
            "bounds: worlds <= {}, universe {}, pool depth {}, plural depth {}, frames {:?}",
            b.max_worlds, b.max_domain, b.max_pool_depth, b.plural_depth, b.frames
        );
        if let Some(s) = &self.space {
            let _ = writeln!(out, "space: {s}, {} models after pruning", self.models);
        }
        for i in &self.instances {
            if i.verdict == Verdict::Fail || i.expected != Outcome::ExhaustedBounds {
                let _ = writeln!(
                    out,
                    "{} {}: expected {}, observed {}",
                    if i.verdict == Verdict::Pass { "ok" } else { "FAIL" },
                    i.instance,
                    i.expected,
                    i.observed
                );
                if let Some(w) = &i.witness {
                    let _ = writeln!(out, "  witness {w}");
                }
                if let Some(m) = &i.model {
                    for line in m.lines() {
                        let _ = writeln!(out, "  | {line}");
                    }
                }
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let _ = writeln!(out, "{}", self.summary());
        let _ = writeln!(out, "{}", if self.passed { "PASS" } else { "FAIL" });
        out
    }

    /// One JSON record per instance.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for i in &self.instances {
            out.push_str(&serde_json::to_string(i).expect("serializable"));
            out.push('\n');
        }
        out
    }
}

/// Run-time options shared by the suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    pub jobs: usize,
    pub flags: ModelFlags,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { jobs: 1, flags: ModelFlags::default() }
    }
}

fn terr(e: impl ToString) -> SearchError {
    SearchError::Formula(e.to_string())
}

fn sig_with(consts: &[&str]) -> Signature {
    let mut s = standard_signature();
    for c in consts {
        s.add_constant(c).expect("fresh constant");
    }
    s
}

fn formula(text: &str, sig: &Signature) -> Formula {
    parse(text, sig).unwrap_or_else(|e| panic!("built-in formula {text}: {e}"))
}

/// Checks registered with a battery, each with its instance label.
struct Planned {
    battery: Battery,
    labels: Vec<(String, Outcome)>,
}

impl Planned {
    fn new(universe: usize) -> Self {
        Planned { battery: Battery::new(universe), labels: Vec::new() }
    }

    fn valid(&mut self, group: &str, label: String, f: &Formula, r: Reading) -> Result<(), SearchError> {
        self.battery.valid(group, f, r)?;
        self.labels.push((label, Outcome::ExhaustedBounds));
        Ok(())
    }

    fn agree(
        &mut self,
        label: String,
        a: (&str, &Formula, Reading),
        b: (&str, &Formula, Reading),
    ) -> Result<(), SearchError> {
        self.battery.agree(a, b)?;
        self.labels.push((label, Outcome::ExhaustedBounds));
        Ok(())
    }

    /// Run over `space` and append one instance per check.
    fn run(self, space: &ModelSpace, o: &SuiteOptions, report: &mut SuiteReport) -> Result<BatteryRun, SearchError> {
        let run = self.battery.run(space, o.jobs, false)?;
        report.space = Some(space.size());
        report.models = report.models.max(run.models);
        report.checks += run.points;
        for (i, (label, expected)) in self.labels.into_iter().enumerate() {
            let observed = if run.failures[i].is_some() { Outcome::Counterexample } else { Outcome::ExhaustedBounds };
            let mut r = InstanceResult::new(report.suite, label, expected, observed);
            if let Some(f) = &run.failures[i] {
                let m = space.model(f.model);
                r = r.with_witness(self.battery.describe(i, f, &m), &m);
            }
            report.instances.push(r);
        }
        Ok(run)
    }
}

fn space_for(sig: &Signature, b: &SearchBounds, o: &SuiteOptions) -> Result<ModelSpace, SearchError> {
    ModelSpace::new(sig, b, o.flags)
}

/// Forcing against the classical reading of star, over the singular pool
/// of depth `max_pool_depth` and the plural pool of depth `plural_depth`.
/// Forcing and star are compiled into separate programs.
pub fn check_link_suite(b: &SearchBounds, o: &SuiteOptions) -> Result<SuiteReport, SearchError> {
    b.check()?;
    let mut report = SuiteReport::new(SuiteId::Link, b);
    let sig = standard_signature();
    let space = space_for(&sig, b, o)?;
    let mut plan = Planned::new(universe(&sig, b));
    let mut pool = singular_pool(b.max_pool_depth);
    if b.plural_depth > 0 {
        pool.extend(plural_pool(b.plural_depth));
    }
    let identity = b.frames == super::FrameRestriction::Identity;
    for f in &pool {
        let s = star(f).map_err(terr)?;
        plan.agree(f.to_string(), ("forcing", f, Reading::Forcing), ("star", &s, Reading::Classical))?;
        if identity {
            plan.agree(format!("{f} (identity frames)"), ("forcing", f, Reading::Forcing), ("plain", f, Reading::Classical))?;
        }
    }
    plan.run(&space, o, &mut report)?;
    report.notes.push(format!("{} pooled formulas", pool.len()));
    // the recursive evaluators, on a sample of the models
    let sample: Vec<Formula> = singular_pool(b.max_pool_depth.min(2))
        .into_iter()
        .chain(if b.plural_depth > 0 { plural_pool(b.plural_depth.min(2)) } else { vec![] })
        .collect();
    let (models, compared, bad) = reference_sample(&space, &sample, |m, w, a, f| {
        let s = star(f).map_err(terr)?;
        Ok(eval_forcing(m, w, a, f).map_err(terr)? == eval_classical(m, w, a, &s).map_err(terr)?)
    })?;
    report.notes.push(format!(
        "reference evaluators: {compared} comparisons on {models} sampled models, {} mismatches",
        bad.len()
    ));
    for (label, witness, m) in bad {
        report.instances.push(
            InstanceResult::new(SuiteId::Link, format!("{label} (reference)"), Outcome::ExhaustedBounds, Outcome::Counterexample)
                .with_witness(witness, &m),
        );
    }
    Ok(report.finish())
}

/// Every `SAMPLE`-th model of the enumeration.
const SAMPLE: usize = 997;

type Mismatch = (String, String, BimodalModel);

fn reference_sample(
    space: &ModelSpace,
    pool: &[Formula],
    agree: impl Fn(&BimodalModel, usize, &Assignment, &Formula) -> Result<bool, SearchError>,
) -> Result<(u64, u64, Vec<Mismatch>), SearchError> {
    let (mut models, mut compared, mut bad) = (0u64, 0u64, Vec::new());
    let mut index = 0usize;
    let mut error = None;
    for c in 0..space.chunk_count() {
        space.for_each_in_chunk(c, |m, r| {
            index += 1;
            if !(index - 1).is_multiple_of(SAMPLE) || error.is_some() {
                return;
            }
            models += 1;
            for f in pool {
                let free: Vec<Var> = f.free_vars().into_iter().collect();
                for w in 0..m.frame().world_count() {
                    for a in point_assignments(m, w, &free) {
                        compared += 1;
                        match agree(m, w, &a, f) {
                            Ok(true) => {}
                            Ok(false) => {
                                let at = format!("{r} at {} with {}", m.frame().world_name(w), a.render(m));
                                bad.push((f.to_string(), at, m.clone()));
                            }
                            Err(e) => error = Some(e),
                        }
                    }
                }
            }
        });
    }
    match error {
        Some(e) => Err(e),
        None => Ok((models, compared, bad)),
    }
}

fn point_assignments(m: &BimodalModel, w: usize, vars: &[Var]) -> Vec<Assignment> {
    let dom = m.frame().dom(w);
    let mut out = vec![Assignment::new()];
    for v in vars {
        let choices: Vec<Value> = if v.is_plural() {
            crate::kripke::subsets(dom).map(Value::Plural).collect()
        } else {
            crate::kripke::ones(dom).map(Value::Ind).collect()
        };
        out = out.into_iter().flat_map(|a| choices.iter().map(move |c| a.clone().with(v.clone(), *c))).collect();
    }
    out
}

fn pools(b: &SearchBounds) -> Vec<Formula> {
    let mut pool = singular_pool(b.max_pool_depth);
    if b.plural_depth > 0 {
        pool.extend(plural_pool(b.plural_depth));
    }
    pool
}

fn commutation(b: &SearchBounds, o: &SuiteOptions) -> Result<SuiteReport, SearchError> {
    let mut report = SuiteReport::new(SuiteId::Commutation, b);
    let sig = standard_signature();
    let space = space_for(&sig, b, o)?;
    let mut plan = Planned::new(universe(&sig, b));
    let pool = pools(b);
    for f in &pool {
        let s = star(f).map_err(terr)?;
        let pg = ext_potentialist(&godel(f).map_err(terr)?).map_err(terr)?;
        let gp = ext_godel(&potentialist(f).map_err(terr)?).map_err(terr)?;
        plan.agree(format!("ext-pot(godel({f}))"), ("c", &s, Reading::Classical), ("c", &pg, Reading::Classical))?;
        plan.agree(format!("ext-godel(pot({f}))"), ("c", &s, Reading::Classical), ("c", &gp, Reading::Classical))?;
    }
    plan.run(&space, o, &mut report)?;
    report.notes.push(format!("{} pooled formulas", pool.len()));
    Ok(report.finish())
}

fn stability(b: &SearchBounds, o: &SuiteOptions) -> Result<SuiteReport, SearchError> {
    let mut report = SuiteReport::new(SuiteId::Stability, b);
    let sig = standard_signature();
    let space = space_for(&sig, b, o)?;
    let u = universe(&sig, b);
    let mut plan = Planned::new(u);
    let pool = pools(b);
    let mut negative = Battery::new(u);
    for f in &pool {
        let g = godel(f).map_err(terr)?;
        let p = potentialist(f).map_err(terr)?;
        let ng = Formula::not(g.clone());
        let np = Formula::not(p.clone());
        let up_d = Formula::implies(g.clone(), Formula::box_d(g.clone()));
        let up_g = Formula::implies(p.clone(), Formula::box_g(p.clone()));
        let down_g = Formula::implies(np.clone(), Formula::box_g(np));
        plan.valid("s", format!("godel({f}) -> []D godel({f})"), &up_d, Reading::Classical)?;
        plan.valid("s", format!("pot({f}) -> []G pot({f})"), &up_g, Reading::Classical)?;
        plan.valid("s", format!("~pot({f}) -> []G ~pot({f})"), &down_g, Reading::Classical)?;
        negative.valid("n", &Formula::implies(ng.clone(), Formula::box_d(ng)), Reading::Classical)?;
    }
    plan.run(&space, o, &mut report)?;
    let run = negative.run(&space, o.jobs, false)?;
    let first = run.failures.iter().enumerate().find_map(|(i, f)| f.as_ref().map(|f| (i, f)));
    let label = "negative D-stability of some Goedel image".to_string();
    let observed = if first.is_some() { Outcome::Counterexample } else { Outcome::ExhaustedBounds };
    let mut r = InstanceResult::new(SuiteId::Stability, label, Outcome::Counterexample, observed);
    if let Some((i, f)) = first {
        let m = space.model(f.model);
        let w = negative.describe(i, f, &m);
        r = r.with_witness(format!("~godel({0}) -> []D ~godel({0}) false: {w}", pool[i]), &m);
        report.notes.push(format!(
            "negative D-stability fails for {} of {} Goedel images",
            run.failure_count(),
            pool.len()
        ));
    }
    report.instances.push(r);
    Ok(report.finish())
}

fn args(pairs: &[(&str, &Formula)]) -> Instantiation {
    pairs.iter().map(|(k, f)| (k.to_string(), SchemaArg::Formula((*f).clone()))).collect()
}

fn term_args(pairs: &[(&str, &str)]) -> Instantiation {
    pairs.iter().map(|(k, v)| (k.to_string(), SchemaArg::Term(Term::var(v)))).collect()
}

fn schema_check(plan: &mut Planned, group: &str, id: &str, a: &Instantiation) -> Result<(), SearchError> {
    let f = instantiate_schema(id, a).map_err(terr)?;
    plan.valid(group, format!("{id}: {f}"), &f, Reading::Classical)
}

const ONE_PARAM: &[&str] = &[
    "T-D", "4-D", "Dual-D", "T-G", "4-G", ".2-G", "Dual-G", "CBF-D", "CBF-G", "Subsump", "Mixed.2", "P-Comp",
];
const RIGID: &[&str] = &["StbD-prec", "StbD-nprec", "StbG-prec", "StbG-nprec"];
const INEXT: &[&str] = &["InExtD-prec", "InExtG-prec", "InExtD-incl", "InExtG-incl"];

fn rigidity_checks(plan: &mut Planned, b: &SearchBounds) -> Result<(), SearchError> {
    for id in RIGID {
        schema_check(plan, "plural", id, &Instantiation::new())?;
    }
    schema_check(plan, "plural", "Dec-prec", &Instantiation::new())?;
    if b.plural_depth > 0 {
        for theta in modal_plural_pool(b.plural_depth) {
            for id in INEXT {
                schema_check(plan, "plural", id, &args(&[("theta", &theta)]))?;
            }
        }
    }
    Ok(())
}

fn bm_axioms(b: &SearchBounds, o: &SuiteOptions) -> Result<SuiteReport, SearchError> {
    let mut report = SuiteReport::new(SuiteId::BmAxioms, b);
    let sig = standard_signature();
    let space = space_for(&sig, b, o)?;
    let mut plan = Planned::new(universe(&sig, b));
    let pool = modal_pool(b.max_pool_depth);
    for phi in &pool {
        for id in ONE_PARAM {
            schema_check(&mut plan, "m", id, &args(&[("phi", phi)]))?;
        }
        for psi in &pool {
            schema_check(&mut plan, "m", "K-D", &args(&[("phi", phi), ("psi", psi)]))?;
            schema_check(&mut plan, "m", "K-G", &args(&[("phi", phi), ("psi", psi)]))?;
        }
        if phi.is_atomic() && !matches!(phi, Formula::Eq(..)) {
            schema_check(&mut plan, "m", "Stb-G-atom", &args(&[("phi", phi)]))?;
        }
    }
    schema_check(&mut plan, "m", "Stb-eq-D", &term_args(&[("t", "x"), ("s", "y")]))?;
    schema_check(&mut plan, "m", "Stb-neq-D", &term_args(&[("t", "x"), ("s", "y")]))?;
    rigidity_checks(&mut plan, b)?;
    plan.run(&space, o, &mut report)?;
    report.notes.push(format!("{} pooled formulas for phi and psi", pool.len()));
    Ok(report.finish())
}

fn rigidity(b: &SearchBounds, o: &SuiteOptions) -> Result<SuiteReport, SearchError> {
    let mut report = SuiteReport::new(SuiteId::Rigidity, b);
    let sig = standard_signature();
    let space = space_for(&sig, b, o)?;
    let mut plan = Planned::new(universe(&sig, b));
    rigidity_checks(&mut plan, b)?;
    plan.run(&space, o, &mut report)?;
    Ok(report.finish())
}

fn spectra(b: &SearchBounds, o: &SuiteOptions) -> Result<SuiteReport, SearchError> {
    let mut report = SuiteReport::new(SuiteId::Spectra, b);
    let sig = standard_signature();
    let space = space_for(&sig, b, o)?;
    let mut plan = Planned::new(universe(&sig, b));
    let pool = modal_pool(b.max_pool_depth);
    for phi in &pool {
        let det = Formula::box_d(phi.clone());
        let poss_g = Formula::dia_g(det.clone());
        let poss_d = Formula::dia_d(det.clone());
        plan.valid("s", format!("possG within possD: {phi}"), &Formula::implies(poss_g.clone(), poss_d.clone()), Reading::Classical)?;
        plan.valid(
            "s",
            format!("possG monotone along leqD: {phi}"),
            &Formula::implies(poss_g.clone(), Formula::box_d(poss_g)),
            Reading::Classical,
        )?;
        plan.valid(
            "s",
            format!("possD antitone along leqD: {phi}"),
            &Formula::implies(Formula::dia_d(poss_d.clone()), poss_d),
            Reading::Classical,
        )?;
    }
    plan.run(&space, o, &mut report)?;
    // the spectrum operation itself, on closed pool formulas
    let closed: Vec<Formula> = modal_pool(b.max_pool_depth.min(2))
        .into_iter()
        .flat_map(|f| {
            let free: Vec<Var> = f.free_vars().into_iter().collect();
            let all = free.iter().rev().fold(f.clone(), |g, v| Formula::forall(v.clone(), g));
            let some = free.iter().rev().fold(f, |g, v| Formula::exists(v.clone(), g));
            [all, some]
        })
        .collect();
    let (mut sampled, mut bad) = (0u64, Vec::new());
    let mut index = 0usize;
    let mut error = None;
    for c in 0..space.chunk_count() {
        space.for_each_in_chunk(c, |m, r| {
            index += 1;
            if !(index - 1).is_multiple_of(SAMPLE) || error.is_some() {
                return;
            }
            sampled += 1;
            let fr = m.frame();
            let specs: Result<Vec<_>, _> = (0..fr.world_count()).map(|w| spectrum(m, w, &closed)).collect();
            let specs = match specs {
                Ok(s) => s,
                Err(e) => {
                    error = Some(terr(e));
                    return;
                }
            };
            for s in &specs {
                if !s.g_within_d() {
                    bad.push((format!("{r} at {}", fr.world_name(s.world)), m.clone()));
                }
                for v in crate::kripke::ones(fr.succ(Mode::D, s.world)) {
                    let t = &specs[v];
                    let grows = s.poss_g.iter().all(|i| t.poss_g.contains(i));
                    let shrinks = t.poss_d.iter().all(|i| s.poss_d.contains(i));
                    if !grows || !shrinks {
                        bad.push((format!("{r} from {} to {}", fr.world_name(s.world), fr.world_name(v)), m.clone()));
                    }
                }
            }
        });
    }
    if let Some(e) = error {
        return Err(e);
    }
    report.notes.push(format!("spectrum of {} closed formulas computed on {sampled} sampled models", closed.len()));
    for (w, m) in bad {
        report.instances.push(
            InstanceResult::new(SuiteId::Spectra, "spectrum inclusions".into(), Outcome::ExhaustedBounds, Outcome::Counterexample)
                .with_witness(w, &m),
        );
    }
    Ok(report.finish())
}

fn dec_prec(b: &SearchBounds, o: &SuiteOptions) -> Result<SuiteReport, SearchError> {
    let mut report = SuiteReport::new(SuiteId::DecPrec, b);
    let sig = standard_signature();
    let space = space_for(&sig, b, o)?;
    let mut plan = Planned::new(universe(&sig, b));
    for (x, xx) in [("x", "xx"), ("y", "yy")] {
        let mut a = Instantiation::new();
        a.insert("x".into(), SchemaArg::Term(Term::var(x)));
        a.insert("xx".into(), SchemaArg::Term(Term::var(xx)));
        let f = instantiate_schema("Dec-prec", &a).map_err(terr)?;
        let g = godel(&f).map_err(terr)?;
        plan.valid("d", format!("godel({f}) = {g}"), &g, Reading::Classical)?;
        plan.valid("d", format!("forcing {f}"), &f, Reading::Forcing)?;
    }
    plan.run(&space, o, &mut report)?;
    Ok(report.finish())
}

fn omni(b: &SearchBounds, o: &SuiteOptions) -> Result<SuiteReport, SearchError> {
    let mut report = SuiteReport::new(SuiteId::Omni, b);
    let sig = standard_signature();
    let space = space_for(&sig, b, o)?;
    let mut plan = Planned::new(universe(&sig, b));
    let depth = b.plural_depth.max(1);
    let mut phis = plural_pool(depth);
    phis.extend(singular_pool(depth.min(2)));
    for phi in &phis {
        for id in ["Omni-prec", "Omni-incl"] {
            let f = instantiate_schema(id, &args(&[("phi", phi)])).map_err(terr)?;
            let g = godel(&f).map_err(terr)?;
            plan.valid("o", format!("godel({f})"), &g, Reading::Classical)?;
        }
    }
    plan.run(&space, o, &mut report)?;
    report.notes.push(format!("{} pooled formulas for phi", phis.len()));
    Ok(report.finish())
}

fn countermodel_instance(
    suite: SuiteId,
    label: &str,
    f: &Formula,
    semantics: Semantics,
    b: &SearchBounds,
    o: &SuiteOptions,
    report: &mut SuiteReport,
) -> Result<(), SearchError> {
    let out = find_countermodel(f, semantics, b, o.flags, o.jobs)?;
    let instance = format!("{label}: {f} ({semantics})");
    match out {
        SearchOutcome::Found(c) => {
            let worlds = c.model.frame().world_count();
            let r = InstanceResult::new(suite, instance, Outcome::Counterexample, Outcome::Counterexample)
                .with_witness(format!("{} ({worlds} worlds)", c.describe()), &c.model);
            report.instances.push(r);
        }
        SearchOutcome::Exhausted { space, models } => {
            report.notes.push(format!("{label}: bounds exhausted after {models} models ({space})"));
            report.instances.push(InstanceResult::new(suite, instance, Outcome::Counterexample, Outcome::ExhaustedBounds));
        }
    }
    Ok(())
}

/// The formulas of the failure exhibits, with their semantics.
pub fn exhibit_targets() -> Vec<(&'static str, &'static str, Semantics)> {
    vec![
        ("B for D", "P(a) -> []D <>D P(a)", Semantics::Classical),
        ("B for G", "forall x P(x) -> []G <>G forall x P(x)", Semantics::Classical),
        (".2 for D", "<>D []D P(a) -> []D <>D P(a)", Semantics::Classical),
        ("reverse subsumption", "[]G P(a) -> []D P(a)", Semantics::Classical),
        ("excluded middle", "P(a) | ~P(a)", Semantics::Forcing),
    ]
}

fn exhibits(b: &SearchBounds, o: &SuiteOptions) -> Result<SuiteReport, SearchError> {
    let mut report = SuiteReport::new(SuiteId::Exhibits, b);
    let sig = sig_with(&["a"]);
    for (label, text, sem) in exhibit_targets() {
        countermodel_instance(SuiteId::Exhibits, label, &formula(text, &sig), sem, b, o, &mut report)?;
    }
    report.notes.push("atomic instances of B for G hold because atoms are G-stable; the exhibit uses forall x P(x)".into());
    Ok(report.finish())
}

fn rs_failure(b: &SearchBounds, o: &SuiteOptions) -> Result<SuiteReport, SearchError> {
    let mut report = SuiteReport::new(SuiteId::RsFailure, b);
    let f = formula("[]G P(a) -> []D P(a)", &sig_with(&["a"]));
    countermodel_instance(SuiteId::RsFailure, "reverse subsumption", &f, Semantics::Classical, b, o, &mut report)?;
    Ok(report.finish())
}

fn unfaithful(b: &SearchBounds, o: &SuiteOptions) -> Result<SuiteReport, SearchError> {
    let mut report = SuiteReport::new(SuiteId::Unfaithful, b);
    let sig = sig_with(&["a"]);
    let space = space_for(&sig, b, o)?;
    let mut plan = Planned::new(universe(&sig, b));
    let mut phis = vec![formula("P(a)", &sig), formula("forall x P(x)", &sig)];
    phis.extend(singular_pool(b.max_pool_depth.min(2)));
    for phi in &phis {
        let src = Formula::implies(phi.clone(), Formula::box_g(phi.clone()));
        let img = ext_godel(&src).map_err(terr)?;
        plan.valid("u", format!("ext-godel({src}) = {img}"), &img, Reading::Classical)?;
    }
    plan.run(&space, o, &mut report)?;

    // the bundled derivation of the atomic image
    let name = "ext_godel_stability.der";
    let (_, text) = CORPUS.iter().find(|(n, _)| *n == name).ok_or_else(|| terr(format!("{name} is not bundled")))?;
    let d = parse_derivation(text).map_err(terr)?;
    let v = d.check().map_err(terr)?;
    let observed = if v.is_accepted() { Outcome::Accepted } else { Outcome::Rejected };
    let concl = d.conclusion().map(|f| f.to_string()).unwrap_or_default();
    report.instances.push(InstanceResult::new(
        SuiteId::Unfaithful,
        format!("derivation {name} of {concl}"),
        Outcome::Accepted,
        observed,
    ));

    // the source formulas under the intuitionistic birelational reading
    let bb = SearchBounds { max_worlds: b.max_worlds.min(2), max_domain: b.max_domain.min(2), ..b.clone() };
    for (text, expected) in [
        ("forall x P(x) -> []G forall x P(x)", Outcome::Counterexample),
        ("P(a) -> []G P(a)", Outcome::ExhaustedBounds),
    ] {
        let f = formula(text, &sig);
        let out = find_birelational_countermodel(&f, &bb)?;
        let observed = if out.countermodel().is_some() { Outcome::Counterexample } else { Outcome::ExhaustedBounds };
        let mut r = InstanceResult::new(SuiteId::Unfaithful, format!("intuitionistic {text}"), expected, observed);
        if let Some(c) = out.countermodel() {
            r = r.with_witness(format!("birelational model {}", c.describe()), &c.model);
        }
        report.instances.push(r);
    }
    report.notes.push(
        "atomic predications are G-stable, so P(a) -> []G P(a) is itself derivable intuitionistically; \
         the source countermodel uses forall x P(x), which fails once a new object appears"
            .into(),
    );
    Ok(report.finish())
}

fn ed_id(b: &SearchBounds, o: &SuiteOptions) -> Result<SuiteReport, SearchError> {
    let mut report = SuiteReport::new(SuiteId::EdId, b);
    let sig = standard_signature();
    let space = space_for(&sig, b, o)?;
    let mut plan = Planned::new(universe(&sig, b));
    let items = definiteness_instances(b.max_pool_depth.min(2));
    let mut skipped = 0;
    for it in &items {
        if it.needs_decidable_identity && !o.flags.decidable_identity {
            skipped += 1;
            continue;
        }
        plan.valid("e", format!("({}) {}: {}", it.item, it.label, it.formula), &it.formula, Reading::Forcing)?;
    }
    plan.run(&space, o, &mut report)?;
    report.notes.push("finite analogue: definiteness is read schematically over a bounded parameter pool".into());
    if skipped > 0 {
        report.notes.push(format!("{skipped} instances of (f) and (g) skipped: identity not flagged decidable"));
    }
    Ok(report.finish())
}

/// Run a suite by name.
pub fn run_property_suite(name: &str, b: &SearchBounds, o: &SuiteOptions) -> Result<SuiteReport, SearchError> {
    let id: SuiteId = name.parse()?;
    b.check()?;
    match id {
        SuiteId::Link => check_link_suite(b, o),
        SuiteId::Commutation => commutation(b, o),
        SuiteId::Stability => stability(b, o),
        SuiteId::BmAxioms => bm_axioms(b, o),
        SuiteId::Spectra => spectra(b, o),
        SuiteId::Rigidity => rigidity(b, o),
        SuiteId::DecPrec => dec_prec(b, o),
        SuiteId::Omni => omni(b, o),
        SuiteId::RsFailure => rs_failure(b, o),
        SuiteId::Unfaithful => unfaithful(b, o),
        SuiteId::EdId => ed_id(b, o),
        SuiteId::Exhibits => exhibits(b, o),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SearchBounds {
        SearchBounds { max_worlds: 2, max_domain: 2, max_pool_depth: 2, plural_depth: 1, ..SearchBounds::default() }
    }

    #[test]
    fn every_suite_passes_on_small_bounds() {
        for id in SUITES {
            // .2 for D needs three worlds, B for G two individuals
            let b = if id == SuiteId::Exhibits { SearchBounds { max_worlds: 3, max_domain: 2, ..small() } } else { small() };
            let r = run_property_suite(id.as_str(), &b, &SuiteOptions::default()).unwrap();
            assert!(r.passed, "{}", r.render_text());
            assert_eq!(r.to_jsonl().lines().count(), r.instances.len());
        }
    }

    #[test]
    fn unknown_suite() {
        assert_eq!(
            run_property_suite("nope", &small(), &SuiteOptions::default()).unwrap_err(),
            SearchError::UnknownSuite("nope".into())
        );
    }

    #[test]
    fn link_summary_format() {
        let r = check_link_suite(&small(), &SuiteOptions::default()).unwrap();
        assert!(r.summary().starts_with("0 mismatches / "), "{}", r.summary());
        assert!(r.checks > 0);
    }

    #[test]
    fn identity_frames_collapse_forcing() {
        let b = SearchBounds { frames: crate::search::FrameRestriction::Identity, ..small() };
        let r = check_link_suite(&b, &SuiteOptions::default()).unwrap();
        assert!(r.passed);
        assert!(r.instances.iter().any(|i| i.instance.ends_with("(identity frames)")));
    }

    #[test]
    fn bm_axioms_catch_a_broken_frame_condition() {
        // dropping G-stability breaks Stb-G-atom
        let o = SuiteOptions { jobs: 1, flags: ModelFlags { g_stable_atoms: false, ..ModelFlags::default() } };
        let r = run_property_suite("bm-axioms", &small(), &o).unwrap();
        assert!(!r.passed);
        assert!(r.instances.iter().any(|i| i.instance.starts_with("Stb-G-atom") && i.verdict == Verdict::Fail));
    }
}
