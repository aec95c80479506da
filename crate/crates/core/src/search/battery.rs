//! Many formulas checked together over a model space.
//!
//! Formulas are compiled into batch programs grouped by the variables they
//! mention, so each program's assignment space stays small. A check either
//! asks for a node to hold everywhere or for two nodes to agree everywhere;
//! the first failing point in enumeration order is kept per check.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use super::enumerate::{ModelRef, ModelSpace};
use super::SearchError;
use crate::formula::{Formula, Var};
use crate::kripke::{Assignment, BimodalModel, Context, Evaluation, NodeId, Program, WorldId};

/// Models evaluated per pass.
const LANES: usize = 32;

#[derive(Debug, Clone, Copy)]
enum Probe {
    Valid(usize, NodeId),
    Agree(usize, NodeId, usize, NodeId),
}

/// How a formula is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Reading {
    Classical,
    Forcing,
}

#[derive(Debug, Clone)]
struct Check {
    probe: Probe,
    free: Vec<Var>,
}

/// First failing point of a check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Failure {
    pub model: ModelRef,
    pub world: WorldId,
    point: usize,
    prog: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct BatteryRun {
    pub failures: Vec<Option<Failure>>,
    pub models: u64,
    /// Sum over checks of the points each was evaluated at.
    pub points: u64,
}

impl BatteryRun {
    pub fn failure_count(&self) -> usize {
        self.failures.iter().filter(|f| f.is_some()).count()
    }
}

pub(crate) struct Battery {
    universe: usize,
    programs: Vec<Program>,
    keys: HashMap<(String, BTreeSet<Var>), usize>,
    checks: Vec<Check>,
}

fn err(e: impl ToString) -> SearchError {
    SearchError::Formula(e.to_string())
}

impl Battery {
    pub fn new(universe: usize) -> Self {
        Battery { universe, programs: Vec::new(), keys: HashMap::new(), checks: Vec::new() }
    }

    fn program(&mut self, group: &str, vars: BTreeSet<Var>) -> Result<usize, SearchError> {
        let key = (group.to_string(), vars);
        if let Some(&i) = self.keys.get(&key) {
            return Ok(i);
        }
        let ctx = Context::new(key.1.iter().cloned().collect(), self.universe).map_err(err)?;
        self.programs.push(Program::new(ctx));
        self.keys.insert(key, self.programs.len() - 1);
        Ok(self.programs.len() - 1)
    }

    fn compile(&mut self, prog: usize, f: &Formula, r: Reading) -> Result<NodeId, SearchError> {
        let p = &mut self.programs[prog];
        match r {
            Reading::Classical => p.classical(f),
            Reading::Forcing => p.forcing(f),
        }
        .map_err(err)
    }

    /// Require `f` to hold at every point. Checks in the same `group` share
    /// programs.
    pub fn valid(&mut self, group: &str, f: &Formula, r: Reading) -> Result<usize, SearchError> {
        let prog = self.program(group, f.all_vars())?;
        let node = self.compile(prog, f, r)?;
        self.checks.push(Check { probe: Probe::Valid(prog, node), free: f.free_vars().into_iter().collect() });
        Ok(self.checks.len() - 1)
    }

    /// Require `a` read one way in group `ga` to agree with `b` read another
    /// way in group `gb`. Distinct groups give independent programs.
    pub fn agree(
        &mut self,
        (ga, a, ra): (&str, &Formula, Reading),
        (gb, b, rb): (&str, &Formula, Reading),
    ) -> Result<usize, SearchError> {
        let vars: BTreeSet<Var> = a.all_vars().union(&b.all_vars()).cloned().collect();
        let pa = self.program(ga, vars.clone())?;
        let pb = self.program(gb, vars)?;
        let na = self.compile(pa, a, ra)?;
        let nb = self.compile(pb, b, rb)?;
        let free = a.free_vars().union(&b.free_vars()).cloned().collect();
        self.checks.push(Check { probe: Probe::Agree(pa, na, pb, nb), free });
        Ok(self.checks.len() - 1)
    }

    /// Run every check over the space. With `stop_early` the run ends after
    /// the first group of chunks that produces a failure.
    pub fn run(&self, space: &ModelSpace, jobs: usize, stop_early: bool) -> Result<BatteryRun, SearchError> {
        let mut out = BatteryRun { failures: vec![None; self.checks.len()], models: 0, points: 0 };
        if space.frame_count() > 0 && space.frame(0).individual_count() != self.universe {
            return Err(SearchError::Formula("battery and model space disagree on the universe".into()));
        }
        let pool = if jobs > 1 {
            Some(rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(err)?)
        } else {
            None
        };
        let window = jobs.max(1) * 4;
        let mut start = 0;
        while start < space.chunk_count() {
            let end = (start + window).min(space.chunk_count());
            let results: Vec<Result<ChunkResult, SearchError>> = match &pool {
                Some(p) => p.install(|| (start..end).into_par_iter().map(|c| self.chunk(space, c)).collect()),
                None => (start..end).map(|c| self.chunk(space, c)).collect(),
            };
            let mut any = false;
            for r in results {
                let r = r?;
                out.models += r.models;
                out.points += r.points;
                for (i, f) in r.failures {
                    any = true;
                    if out.failures[i].is_none() {
                        out.failures[i] = Some(f);
                    }
                }
            }
            if stop_early && any {
                break;
            }
            start = end;
        }
        Ok(out)
    }

    fn chunk(&self, space: &ModelSpace, c: usize) -> Result<ChunkResult, SearchError> {
        let mut res = ChunkResult { failures: Vec::new(), models: 0, points: 0 };
        let mut failed = vec![false; self.checks.len()];
        let mut evs: Vec<Evaluation> = self.programs.iter().map(|_| Evaluation::new()).collect();
        let mut per_prog = vec![0u64; self.programs.len()];
        for ch in &self.checks {
            match ch.probe {
                Probe::Valid(p, _) | Probe::Agree(p, _, _, _) => per_prog[p] += 1,
            }
        }
        let mut error = None;
        space.for_each_batch_in_chunk(c, LANES, |models, refs| {
            if error.is_some() {
                return;
            }
            for (p, ev) in self.programs.iter().zip(evs.iter_mut()) {
                if let Err(e) = p.evaluate_many(models, ev) {
                    error = Some(err(e));
                    return;
                }
            }
            res.models += models.len() as u64;
            for (p, ev) in evs.iter().enumerate() {
                res.points += per_prog[p] * ev.point_count() * models.len() as u64;
            }
            for (i, ch) in self.checks.iter().enumerate() {
                if failed[i] {
                    continue;
                }
                let ok = match ch.probe {
                    Probe::Valid(p, n) => evs[p].valid_in_all_lanes(n),
                    Probe::Agree(pa, a, pb, b) => evs[pa].agrees_in_all_lanes(a, &evs[pb], b),
                };
                if ok {
                    continue;
                }
                for (l, &model) in refs.iter().enumerate().take(models.len()) {
                    let hit = match ch.probe {
                        Probe::Valid(p, n) => {
                            evs[p].select_lane(l);
                            evs[p].counterexample(n).map(|x| (x, p))
                        }
                        Probe::Agree(pa, a, pb, b) => {
                            evs[pa].select_lane(l);
                            evs[pb].select_lane(l);
                            evs[pa].differs_from(a, &evs[pb], b).map(|x| (x, pa))
                        }
                    };
                    if let Some(((world, point), prog)) = hit {
                        failed[i] = true;
                        res.failures.push((i, Failure { model, world, point, prog }));
                        break;
                    }
                }
            }
        });
        match error {
            Some(e) => Err(e),
            None => Ok(res),
        }
    }

    /// The assignment of a failure, restricted to the check's free variables.
    pub fn assignment(&self, check: usize, f: &Failure) -> Assignment {
        self.programs[f.prog].context().assignment(f.point, &self.checks[check].free)
    }

    /// `model@world [assignment]`, for reports.
    pub fn describe(&self, check: usize, f: &Failure, m: &BimodalModel) -> String {
        let a = self.assignment(check, f).render(m);
        let w = m.frame().world_name(f.world);
        if a.is_empty() {
            format!("{} at {w}", f.model)
        } else {
            format!("{} at {w} with {a}", f.model)
        }
    }
}

struct ChunkResult {
    failures: Vec<(usize, Failure)>,
    models: u64,
    points: u64,
}
