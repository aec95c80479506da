//! Evaluation of many formulas at once over every world and every
//! assignment to a fixed list of variables.
//!
//! Truth sets are bit vectors indexed by (world, assignment). Formulas are
//! compiled into a shared DAG of operations, so a pool of related formulas
//! costs about one word operation per node and world.

use std::collections::HashMap;

use thiserror::Error;

use super::eval::Assignment;
use super::frame::{ones, subsets, WorldId};
use super::model::{BimodalModel, Value};
use crate::formula::{Formula, Mode, Sort, Term, Var};

/// Assignments per world above which compilation is refused.
pub const MAX_ASSIGNMENTS: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BatchError {
    #[error("{0} assignments per world is too many for batch evaluation")]
    TooLarge(u128),
    #[error("variable {0} is not in the evaluation context")]
    NotInContext(String),
    #[error("forcing is defined for modality-free formulas only")]
    ModalInForcing,
    #[error("model has {model} individuals but the context was built for {context}")]
    UniverseMismatch { model: usize, context: usize },
    #[error("unknown predicate {0}")]
    UnknownPredicate(String),
    #[error("unknown constant {0}")]
    UnknownConstant(String),
    #[error("predicate {0} used with the wrong argument sorts")]
    PredicateSorts(String),
    #[error("no models to evaluate")]
    NoModels,
    #[error("models evaluated together must share a frame")]
    MixedFrames,
}

/// The variables a program may mention, free or bound, over a universe of a
/// given size. Assignment `i` gives variable `v` the digit
/// `(i / stride[v]) % radix[v]`: an individual, or a subset as a bit mask.
#[derive(Debug, Clone)]
pub struct Context {
    vars: Vec<Var>,
    universe: usize,
    radix: Vec<usize>,
    stride: Vec<usize>,
    size: usize,
    words: usize,
    // [var][digit] -> assignments with that digit
    digit_masks: Vec<Vec<Vec<u64>>>,
}

impl Context {
    pub fn new(vars: Vec<Var>, universe: usize) -> Result<Self, BatchError> {
        let mut size: u128 = 1;
        let mut radix = Vec::new();
        let mut stride = Vec::new();
        for v in &vars {
            let r: u128 = match v.sort() {
                Sort::Singular => universe as u128,
                Sort::Plural => 1u128 << universe.min(100),
            };
            stride.push(size as usize);
            size *= r.max(1);
            if size > MAX_ASSIGNMENTS as u128 {
                return Err(BatchError::TooLarge(size));
            }
            radix.push(r.max(1) as usize);
        }
        let size = size as usize;
        let words = size.div_ceil(64);
        let digit_masks = (0..vars.len())
            .map(|v| {
                (0..radix[v])
                    .map(|d| {
                        let mut m = vec![0u64; words];
                        for i in 0..size {
                            if (i / stride[v]) % radix[v] == d {
                                m[i / 64] |= 1 << (i % 64);
                            }
                        }
                        m
                    })
                    .collect()
            })
            .collect();
        Ok(Context { vars, universe, radix, stride, size, words, digit_masks })
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Assignments per world.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn index_of(&self, v: &Var) -> Option<usize> {
        self.vars.iter().position(|x| x == v)
    }

    fn digit(&self, i: usize, v: usize) -> usize {
        (i / self.stride[v]) % self.radix[v]
    }

    pub fn value(&self, i: usize, v: usize) -> Value {
        let d = self.digit(i, v);
        match self.vars[v].sort() {
            Sort::Singular => Value::Ind(d),
            Sort::Plural => Value::Plural(d as u64),
        }
    }

    /// Assignment number `i`, restricted to the given variables.
    pub fn assignment(&self, i: usize, only: &[Var]) -> Assignment {
        let mut a = Assignment::new();
        for (v, var) in self.vars.iter().enumerate() {
            if only.contains(var) {
                a.insert(var.clone(), self.value(i, v));
            }
        }
        a
    }

    /// Index of the assignment giving these values (others get digit 0).
    pub fn index(&self, a: &Assignment) -> Result<usize, BatchError> {
        let mut i = 0;
        for (v, val) in a.iter() {
            let k = self.index_of(v).ok_or_else(|| BatchError::NotInContext(v.to_string()))?;
            let d = match val {
                Value::Ind(d) => *d,
                Value::Plural(m) => *m as usize,
            };
            i += d * self.stride[k];
        }
        Ok(i)
    }
}

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Arg {
    Var(usize),
    Const(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Op {
    Pred(String, Vec<Arg>),
    Eq(Arg, Arg),
    Prec(Arg, usize),
    Not(NodeId),
    And(NodeId, NodeId),
    Or(NodeId, NodeId),
    Implies(NodeId, NodeId),
    Nec(Mode, NodeId),
    Poss(Mode, NodeId),
    Forall(usize, NodeId),
    Exists(usize, NodeId),
}

/// A hash-consed DAG of operations. Children always precede parents.
#[derive(Debug, Clone)]
pub struct Program {
    ctx: Context,
    ops: Vec<Op>,
    index: HashMap<Op, NodeId>,
    classical_memo: HashMap<Formula, NodeId>,
    forcing_memo: HashMap<Formula, NodeId>,
}

impl Program {
    pub fn new(ctx: Context) -> Self {
        Program {
            ctx,
            ops: Vec::new(),
            index: HashMap::new(),
            classical_memo: HashMap::new(),
            forcing_memo: HashMap::new(),
        }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    /// Number of distinct nodes.
    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    fn node(&mut self, op: Op) -> NodeId {
        if let Some(&id) = self.index.get(&op) {
            return id;
        }
        let id = self.ops.len();
        self.ops.push(op.clone());
        self.index.insert(op, id);
        id
    }

    fn var(&self, v: &Var) -> Result<usize, BatchError> {
        self.ctx.index_of(v).ok_or_else(|| BatchError::NotInContext(v.to_string()))
    }

    fn arg(&self, t: &Term) -> Result<Arg, BatchError> {
        Ok(match t {
            Term::Var(v) => Arg::Var(self.var(v)?),
            Term::Const(c) => Arg::Const(c.clone()),
        })
    }

    fn atomic(&mut self, f: &Formula) -> Result<NodeId, BatchError> {
        let op = match f {
            Formula::Atom(p, args) => {
                Op::Pred(p.clone(), args.iter().map(|t| self.arg(t)).collect::<Result<_, _>>()?)
            }
            Formula::Eq(a, b) => Op::Eq(self.arg(a)?, self.arg(b)?),
            Formula::Prec(t, xx) => Op::Prec(self.arg(t)?, self.var(xx)?),
            _ => unreachable!(),
        };
        Ok(self.node(op))
    }

    /// Node for the classical truth set of `f`.
    pub fn classical(&mut self, f: &Formula) -> Result<NodeId, BatchError> {
        if let Some(&id) = self.classical_memo.get(f) {
            return Ok(id);
        }
        let op = match f {
            Formula::Atom(..) | Formula::Eq(..) | Formula::Prec(..) => return self.atomic(f),
            Formula::Not(a) => Op::Not(self.classical(a)?),
            Formula::And(a, b) => Op::And(self.classical(a)?, self.classical(b)?),
            Formula::Or(a, b) => Op::Or(self.classical(a)?, self.classical(b)?),
            Formula::Implies(a, b) => Op::Implies(self.classical(a)?, self.classical(b)?),
            Formula::Nec(m, a) => Op::Nec(*m, self.classical(a)?),
            Formula::Poss(m, a) => Op::Poss(*m, self.classical(a)?),
            Formula::Forall(v, a) => Op::Forall(self.var(v)?, self.classical(a)?),
            Formula::Exists(v, a) => Op::Exists(self.var(v)?, self.classical(a)?),
        };
        let id = self.node(op);
        self.classical_memo.insert(f.clone(), id);
        Ok(id)
    }

    /// Node for the forcing set of a modality-free `f`, built clause by clause.
    pub fn forcing(&mut self, f: &Formula) -> Result<NodeId, BatchError> {
        if let Some(&id) = self.forcing_memo.get(f) {
            return Ok(id);
        }
        let id = match f {
            Formula::Atom(..) | Formula::Eq(..) | Formula::Prec(..) => {
                let a = self.atomic(f)?;
                self.node(Op::Nec(Mode::D, a))
            }
            Formula::And(a, b) => {
                let op = Op::And(self.forcing(a)?, self.forcing(b)?);
                self.node(op)
            }
            Formula::Or(a, b) => {
                let op = Op::Or(self.forcing(a)?, self.forcing(b)?);
                self.node(op)
            }
            Formula::Implies(a, b) => {
                let i = Op::Implies(self.forcing(a)?, self.forcing(b)?);
                let i = self.node(i);
                self.node(Op::Nec(Mode::D, i))
            }
            Formula::Not(a) => {
                let n = Op::Not(self.forcing(a)?);
                let n = self.node(n);
                self.node(Op::Nec(Mode::D, n))
            }
            Formula::Exists(v, a) => {
                let q = Op::Exists(self.var(v)?, self.forcing(a)?);
                let q = self.node(q);
                self.node(Op::Poss(Mode::G, q))
            }
            Formula::Forall(v, a) => {
                let q = Op::Forall(self.var(v)?, self.forcing(a)?);
                let q = self.node(q);
                self.node(Op::Nec(Mode::D, q))
            }
            Formula::Nec(..) | Formula::Poss(..) => return Err(BatchError::ModalInForcing),
        };
        self.forcing_memo.insert(f.clone(), id);
        Ok(id)
    }

    /// Evaluate every node on a model, reusing the buffers in `ev`.
    pub fn evaluate(&self, m: &BimodalModel, ev: &mut Evaluation) -> Result<(), BatchError> {
        self.evaluate_many(&[m], ev)
    }

    /// Evaluate every node on several models sharing one frame. Each model
    /// gets a lane of `ev`; lane 0 is selected afterwards.
    pub fn evaluate_many(&self, models: &[&BimodalModel], ev: &mut Evaluation) -> Result<(), BatchError> {
        let Some(m0) = models.first() else {
            return Err(BatchError::NoModels);
        };
        let fr = m0.frame();
        if models.iter().any(|m| m.frame() != fr) {
            return Err(BatchError::MixedFrames);
        }
        let lanes = models.len();
        let n = fr.individual_count();
        if n != self.ctx.universe {
            return Err(BatchError::UniverseMismatch { model: n, context: self.ctx.universe });
        }
        let ctx = &self.ctx;
        let (nw, k) = (fr.world_count(), ctx.words);
        let block = nw * k;
        let node_len = lanes * block;
        ev.worlds = nw;
        ev.words = k;
        ev.size = ctx.size;
        ev.lanes = lanes;
        ev.cur = 0;
        ev.bits.clear();
        ev.bits.resize(self.ops.len() * node_len, 0);
        ev.valid.clear();
        ev.valid.resize(block, 0);
        // Value ranges and valid assignments per world.
        ev.ranges.clear();
        for v in 0..ctx.vars.len() {
            for w in 0..nw {
                let dom = fr.dom(w);
                let r: Vec<usize> = match ctx.vars[v].sort() {
                    Sort::Singular => ones(dom).collect(),
                    Sort::Plural => subsets(dom).map(|s| s as usize).collect(),
                };
                ev.ranges.push(r);
            }
        }
        for w in 0..nw {
            let dom = fr.dom(w);
            for i in 0..ctx.size {
                let ok = (0..ctx.vars.len()).all(|v| {
                    let d = ctx.digit(i, v);
                    match ctx.vars[v].sort() {
                        Sort::Singular => dom >> d & 1 == 1,
                        Sort::Plural => d as u64 & !dom == 0,
                    }
                });
                if ok {
                    ev.valid[w * k + i / 64] |= 1 << (i % 64);
                }
            }
        }
        let full_last = if ctx.size.is_multiple_of(64) { !0u64 } else { (1u64 << (ctx.size % 64)) - 1 };
        let resolve = |a: &Arg, i: usize| -> Result<usize, BatchError> {
            Ok(match a {
                Arg::Var(v) => ctx.digit(i, *v),
                Arg::Const(c) => fr.individual_index(c).ok_or_else(|| BatchError::UnknownConstant(c.clone()))?,
            })
        };

        let (mut acc, mut masked, mut spread) = (Vec::with_capacity(k), vec![0u64; k], vec![0u64; k]);
        for (id, op) in self.ops.iter().enumerate() {
            let (done, rest) = ev.bits.split_at_mut(id * node_len);
            let out = &mut rest[..node_len];
            let child = |c: NodeId, l: usize, w: WorldId| {
                let s = c * node_len + l * block + w * k;
                &done[s..s + k]
            };
            match op {
                Op::Pred(p, args) => {
                    let pi = m0.pred_index(p).ok_or_else(|| BatchError::UnknownPredicate(p.clone()))?;
                    let sorts = &m0.preds()[pi].sorts;
                    let sorts_ok = sorts.len() == args.len()
                        && args.iter().zip(sorts).all(|(a, s)| match a {
                            Arg::Var(v) => ctx.vars[*v].sort() == *s,
                            Arg::Const(_) => *s == Sort::Singular,
                        });
                    if !sorts_ok {
                        return Err(BatchError::PredicateSorts(p.clone()));
                    }
                    let radix: Vec<u64> = sorts
                        .iter()
                        .map(|s| match s {
                            Sort::Singular => n as u64,
                            Sort::Plural => 1u64 << n,
                        })
                        .collect();
                    for (l, m) in models.iter().enumerate() {
                        let pi = m.pred_index(p).ok_or_else(|| BatchError::UnknownPredicate(p.clone()))?;
                        let out = &mut out[l * block..(l + 1) * block];
                        for w in 0..nw {
                            let dom = fr.dom(w);
                            for i in 0..ctx.size {
                                let mut code = 0u64;
                                for ((a, r), s) in args.iter().zip(&radix).zip(sorts) {
                                    let mut d = resolve(a, i)? as u64;
                                    if *s == Sort::Plural {
                                        d &= dom;
                                    }
                                    code = code * r + d;
                                }
                                if m.holds_code(pi, w, code) {
                                    out[w * k + i / 64] |= 1 << (i % 64);
                                }
                            }
                        }
                    }
                }
                Op::Eq(..) | Op::Prec(..) => {
                    for i in 0..ctx.size {
                        let yes = match op {
                            Op::Eq(a, b) => resolve(a, i)? == resolve(b, i)?,
                            Op::Prec(t, xx) => ctx.digit(i, *xx) >> resolve(t, i)? & 1 == 1,
                            _ => unreachable!(),
                        };
                        if yes {
                            for w in 0..nw {
                                out[w * k + i / 64] |= 1 << (i % 64);
                            }
                        }
                    }
                    let (first, others) = out.split_at_mut(block);
                    for chunk in others.chunks_mut(block) {
                        chunk.copy_from_slice(first);
                    }
                }
                Op::Not(a) => {
                    let x = &done[a * node_len..(a + 1) * node_len];
                    for (o, x) in out.iter_mut().zip(x) {
                        *o = !x;
                    }
                }
                Op::And(a, b) | Op::Or(a, b) | Op::Implies(a, b) => {
                    let xa = &done[a * node_len..(a + 1) * node_len];
                    let xb = &done[b * node_len..(b + 1) * node_len];
                    let it = out.iter_mut().zip(xa.iter().zip(xb));
                    match op {
                        Op::And(..) => it.for_each(|(o, (x, y))| *o = x & y),
                        Op::Or(..) => it.for_each(|(o, (x, y))| *o = x | y),
                        _ => it.for_each(|(o, (x, y))| *o = !x | y),
                    }
                }
                Op::Nec(md, a) | Op::Poss(md, a) => {
                    let universal = matches!(op, Op::Nec(..));
                    for w in 0..nw {
                        let succ = fr.succ(*md, w);
                        for l in 0..lanes {
                            for j in 0..k {
                                let mut acc = if universal { !0u64 } else { 0 };
                                for u in ones(succ) {
                                    let x = child(*a, l, u)[j];
                                    if universal {
                                        acc &= x
                                    } else {
                                        acc |= x
                                    }
                                }
                                out[l * block + w * k + j] = acc;
                            }
                        }
                    }
                }
                Op::Forall(v, a) | Op::Exists(v, a) => {
                    let universal = matches!(op, Op::Forall(..));
                    let (stride, radix) = (ctx.stride[*v], ctx.radix[*v]);
                    for l in 0..lanes {
                        for w in 0..nw {
                            let range = &ev.ranges[*v * nw + w];
                            let x = child(*a, l, w);
                            let o = l * block + w * k;
                            if k == 1 {
                                let mut acc = if universal { full_last } else { 0 };
                                for &d in range {
                                    let t = x[0] & ctx.digit_masks[*v][d][0];
                                    let mut s = 0u64;
                                    for d2 in 0..radix {
                                        s |= if d2 >= d { t << ((d2 - d) * stride) } else { t >> ((d - d2) * stride) };
                                    }
                                    if universal {
                                        acc &= s
                                    } else {
                                        acc |= s
                                    }
                                }
                                out[o] = acc;
                                continue;
                            }
                            // Move each digit's slice of x to every digit of v, then
                            // combine over the values in range.
                            acc.clear();
                            acc.resize(k, if universal { !0 } else { 0 });
                            for &d in range {
                                for (t, (xw, mw)) in masked.iter_mut().zip(x.iter().zip(&ctx.digit_masks[*v][d])) {
                                    *t = xw & mw;
                                }
                                spread.iter_mut().for_each(|s| *s = 0);
                                for d2 in 0..radix {
                                    shift_or(&mut spread, &masked, (d2 as isize - d as isize) * stride as isize);
                                }
                                for (a, s) in acc.iter_mut().zip(&spread) {
                                    if universal {
                                        *a &= s
                                    } else {
                                        *a |= s
                                    }
                                }
                            }
                            acc[k - 1] &= full_last;
                            out[o..o + k].copy_from_slice(&acc);
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// OR `src` shifted by `sh` bits (towards higher indices when positive)
/// into `dst`; bits shifted past either end are dropped.
fn shift_or(dst: &mut [u64], src: &[u64], sh: isize) {
    let k = src.len() as isize;
    let (ws, bs) = (sh.div_euclid(64), sh.rem_euclid(64) as u32);
    for (j, &x) in src.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let t = j as isize + ws;
        if (0..k).contains(&t) {
            dst[t as usize] |= x << bs;
        }
        if bs > 0 && (0..k).contains(&(t + 1)) {
            dst[(t + 1) as usize] |= x >> (64 - bs);
        }
    }
}

/// Truth sets of all nodes of a program on one model.
#[derive(Debug, Clone, Default)]
pub struct Evaluation {
    worlds: usize,
    words: usize,
    lanes: usize,
    cur: usize,
    size: usize,
    bits: Vec<u64>,
    valid: Vec<u64>,
    ranges: Vec<Vec<usize>>,
}

impl Evaluation {
    pub fn new() -> Self {
        Self::default()
    }

    fn block(&self, node: NodeId, w: WorldId) -> &[u64] {
        let block = self.worlds * self.words;
        let start = (node * self.lanes + self.cur) * block + w * self.words;
        &self.bits[start..start + self.words]
    }

    /// Number of models evaluated together.
    pub fn lanes(&self) -> usize {
        self.lanes
    }

    /// Make the per-point queries below refer to lane `l`.
    pub fn select_lane(&mut self, l: usize) {
        assert!(l < self.lanes, "lane {l} out of {}", self.lanes);
        self.cur = l;
    }

    /// Whether the node holds at every valid point in every lane.
    pub fn valid_in_all_lanes(&self, node: NodeId) -> bool {
        let block = self.worlds * self.words;
        let bits = &self.bits[node * self.lanes * block..(node + 1) * self.lanes * block];
        bits.chunks(block).all(|c| c.iter().zip(&self.valid).all(|(x, v)| !x & v == 0))
    }

    /// Whether two nodes agree at every valid point in every lane; `other`
    /// must hold the same models.
    pub fn agrees_in_all_lanes(&self, a: NodeId, other: &Evaluation, b: NodeId) -> bool {
        let block = self.worlds * self.words;
        let n = self.lanes * block;
        let xa = &self.bits[a * n..(a + 1) * n];
        let xb = &other.bits[b * n..(b + 1) * n];
        xa.chunks(block).zip(xb.chunks(block)).all(|(ca, cb)| {
            ca.iter().zip(cb).zip(&self.valid).all(|((x, y), v)| (x ^ y) & v == 0)
        })
    }

    fn valid_block(&self, w: WorldId) -> &[u64] {
        &self.valid[w * self.words..(w + 1) * self.words]
    }

    pub fn holds(&self, node: NodeId, w: WorldId, i: usize) -> bool {
        self.block(node, w)[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_valid_point(&self, w: WorldId, i: usize) -> bool {
        self.valid_block(w)[i / 64] >> (i % 64) & 1 == 1
    }

    /// Number of (world, assignment) points with assignments inside the domain.
    pub fn point_count(&self) -> u64 {
        self.valid.iter().map(|x| x.count_ones() as u64).sum()
    }

    fn first(&self, mut bad: impl FnMut(WorldId, usize) -> u64) -> Option<(WorldId, usize)> {
        for w in 0..self.worlds {
            for j in 0..self.words {
                let x = bad(w, j) & self.valid_block(w)[j];
                if x != 0 {
                    return Some((w, j * 64 + x.trailing_zeros() as usize));
                }
            }
        }
        None
    }

    /// A point where the node is false, if any.
    pub fn counterexample(&self, node: NodeId) -> Option<(WorldId, usize)> {
        self.first(|w, j| !self.block(node, w)[j])
    }

    /// A point where the node is true, if any.
    pub fn witness(&self, node: NodeId) -> Option<(WorldId, usize)> {
        self.first(|w, j| self.block(node, w)[j])
    }

    /// A point where the two nodes differ, if any.
    pub fn difference(&self, a: NodeId, b: NodeId) -> Option<(WorldId, usize)> {
        self.first(|w, j| self.block(a, w)[j] ^ self.block(b, w)[j])
    }

    /// A point where node `a` here and node `b` of another evaluation of
    /// the same model differ.
    pub fn differs_from(&self, a: NodeId, other: &Evaluation, b: NodeId) -> Option<(WorldId, usize)> {
        self.first(|w, j| self.block(a, w)[j] ^ other.block(b, w)[j])
    }

    /// A point where `a` holds and `b` does not, comparing `a` at `wa` with
    /// `b` at `wb` (assignments valid at `wa`).
    pub fn not_included(&self, a: NodeId, wa: WorldId, b: NodeId, wb: WorldId) -> Option<usize> {
        for j in 0..self.words {
            let x = self.block(a, wa)[j] & !self.block(b, wb)[j] & self.valid_block(wa)[j];
            if x != 0 {
                return Some(j * 64 + x.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn worlds(&self) -> usize {
        self.worlds
    }

    pub fn size(&self) -> usize {
        self.size
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::formula::{parse, PredDecl};
    use crate::kripke::{eval_classical, eval_forcing, BimodalFrame, ModelFlags};

    /// A model with preorders built from `seed`, monotone domains and
    /// arbitrary extensions.
    fn model(worlds: usize, universe: usize, seed: u64) -> BimodalModel {
        let mut bits = seed;
        let mut next = |n: u32| {
            bits = bits.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (bits >> 33) % n as u64
        };
        let mut fr = BimodalFrame::with_sizes(worlds, universe).unwrap();
        for a in 0..worlds {
            for b in a + 1..worlds {
                if next(2) == 1 {
                    fr.add_leq(Mode::D, a, b);
                    if next(2) == 1 {
                        fr.add_leq(Mode::G, a, b);
                    }
                }
            }
        }
        for _ in 0..worlds {
            for a in 0..worlds {
                for md in [Mode::D, Mode::G] {
                    let reach = ones(fr.succ(md, a)).fold(0, |acc, b| acc | fr.succ(md, b));
                    for b in ones(reach) {
                        fr.add_leq(md, a, b);
                    }
                }
            }
        }
        for w in 0..worlds {
            fr.set_dom(w, next(1 << universe) | 1);
        }
        for w in 0..worlds {
            let below = (0..worlds).filter(|&v| fr.leq(Mode::D, v, w)).fold(0, |acc, v| acc | fr.dom(v));
            fr.set_dom(w, below);
        }
        let preds = vec![
            PredDecl::new("P", &[Sort::Singular]),
            PredDecl::new("R", &[Sort::Singular, Sort::Singular]),
            PredDecl::new("Q", &[Sort::Plural]),
        ];
        let flags = ModelFlags { g_stable_atoms: false, ..Default::default() };
        let mut m = BimodalModel::new(fr, preds, flags).unwrap();
        for p in 0..3 {
            for w in 0..worlds {
                for t in m.tuples_over(p, m.frame().dom(w)) {
                    if next(2) == 1 {
                        m.set(p, w, &t, true).unwrap();
                    }
                }
            }
        }
        m
    }

    const FORMULAS: &[&str] = &[
        "P(x)",
        "P(a) | ~P(a)",
        "forall x (P(x) | ~P(x))",
        "exists x R(x, y) -> forall y P(y)",
        "[]D P(x) -> <>G exists y R(x, y)",
        "~~exists x P(x) -> exists x ~~P(x)",
        "forallp xx (Q(xx) -> exists x x pc xx)",
        "existsp xx forall x (x pc xx <-> P(x))",
        "forallp yy (Q(yy) | ~Q(yy)) & x pc xx",
        "<>G []D exists x P(x) -> []D <>G exists x P(x)",
        "forall x forall y (x = y | ~x = y)",
        "existsp yy ((forall z (z pc yy -> z pc xx)) & Q(yy))",
    ];

    fn compare(worlds: usize, universe: usize, seed: u64, vars: &[&str]) {
        let m = model(worlds, universe, seed);
        let vars: Vec<Var> = vars.iter().map(|v| Var::new(*v)).collect();
        let mut prog = Program::new(Context::new(vars.clone(), universe).unwrap());
        let sig = m.signature();
        let mut nodes = Vec::new();
        for s in FORMULAS {
            let f = parse(s, &sig).unwrap();
            if !f.all_vars().iter().all(|v| vars.contains(v)) {
                continue;
            }
            let c = prog.classical(&f).unwrap();
            let forced = if f.is_modal_free() { Some(prog.forcing(&f).unwrap()) } else { None };
            nodes.push((f, c, forced));
        }
        let mut ev = Evaluation::new();
        prog.evaluate(&m, &mut ev).unwrap();
        let ctx = prog.context();
        for (f, c, forced) in &nodes {
            let free: Vec<Var> = f.free_vars().into_iter().collect();
            for w in 0..m.frame().world_count() {
                for i in 0..ctx.size() {
                    if !ev.is_valid_point(w, i) {
                        continue;
                    }
                    let a = ctx.assignment(i, &free);
                    assert_eq!(ev.holds(*c, w, i), eval_classical(&m, w, &a, f).unwrap(), "{f} at {w} {a}");
                    if let Some(n) = forced {
                        assert_eq!(ev.holds(*n, w, i), eval_forcing(&m, w, &a, f).unwrap(), "{f} forced at {w} {a}");
                    }
                }
            }
        }
    }

    #[test]
    fn multiword_blocks() {
        // 3 * 3 * 3 * 8 * 8 assignments per world
        compare(3, 3, 7, &["x", "y", "z", "xx", "yy"]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn agrees_with_reference(worlds in 1usize..4, universe in 1usize..3, seed in any::<u64>()) {
            compare(worlds, universe, seed, &["x", "y", "xx", "yy"]);
            compare(worlds, universe, seed, &["x", "y", "z", "xx", "yy"]);
        }
    }
}
