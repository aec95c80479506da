//! Enumeration of valid bimodal models up to isomorphism.
//!
//! Frames are generated first: the two relations up to renaming of worlds,
//! then domains up to the automorphisms of the relations together with
//! renamings of the individuals that no constant denotes. For a fixed
//! frame the predicate extensions are coded as bits over classes of
//! (world, tuple) slots that stability forces to agree, and an extension
//! is kept only if no automorphism of the frame maps it to a smaller code.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use super::{FrameRestriction, SearchBounds, SearchError};
use crate::formula::{Mode, PredDecl, Signature, Sort};
use crate::kripke::{default_individual_name, ones, subsets, BimodalFrame, BimodalModel, ModelFlags, TupleCoder, Value};

/// Largest number of free extension bits per frame.
pub const MAX_CLASSES: usize = 40;
/// Largest number of worlds the enumerator accepts.
pub const MAX_ENUM_WORLDS: usize = 5;
/// Largest universe the enumerator accepts.
pub const MAX_ENUM_INDIVIDUALS: usize = 6;

const CHUNK: u64 = 1 << 12;

/// Where a model sits in the enumeration: frame index and extension code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ModelRef {
    pub frame: usize,
    pub code: u64,
}

impl fmt::Display for ModelRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}.{}", self.frame, self.code)
    }
}

/// Size of a model space before extensions are pruned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpaceSize {
    pub frames: usize,
    /// Sum over frames of the number of extension codes.
    pub codes: u128,
}

impl fmt::Display for SpaceSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} frames, {} candidate interpretations", self.frames, self.codes)
    }
}

/// A world permutation paired with an individual permutation.
type Symmetry = (Vec<usize>, Vec<usize>);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct RawFrame {
    n: usize,
    d: Vec<u64>,
    g: Vec<u64>,
    dom: Vec<u64>,
}

struct FrameEntry {
    frame: Arc<BimodalFrame>,
    /// slots of each class: (pred, world, code)
    classes: Vec<Vec<(usize, usize, u64)>>,
    /// non-identity automorphisms as permutations of classes
    autos: Vec<Vec<usize>>,
}

/// All valid models within bounds, up to isomorphism, in a fixed order.
pub struct ModelSpace {
    preds: Arc<Vec<PredDecl>>,
    coders: Arc<Vec<TupleCoder>>,
    flags: ModelFlags,
    frames: Vec<FrameEntry>,
    chunks: Vec<(usize, u64, u64)>,
}

fn permute_mask(mask: u64, p: &[usize]) -> u64 {
    ones(mask).fold(0, |acc, i| acc | 1 << p[i])
}

fn is_preorder(r: &[u64]) -> bool {
    (0..r.len()).all(|a| r[a] >> a & 1 == 1 && ones(r[a]).all(|b| r[b] & !r[a] == 0))
}

fn frame_ok(d: &[u64], g: &[u64]) -> bool {
    let n = d.len();
    for a in 0..n {
        if g[a] & !d[a] != 0 {
            return false;
        }
        // G convergent
        for b in ones(g[a]) {
            for c in ones(g[a]) {
                if g[b] & g[c] == 0 {
                    return false;
                }
            }
        }
        // mixed convergence
        for b in ones(g[a]) {
            for c in ones(d[a]) {
                if !ones(d[b]).any(|x| g[c] >> x & 1 == 1) {
                    return false;
                }
            }
        }
    }
    true
}

fn relabel(r: &[u64], p: &[usize]) -> Vec<u64> {
    let mut out = vec![0; r.len()];
    for (a, &m) in r.iter().enumerate() {
        out[p[a]] = permute_mask(m, p);
    }
    out
}

/// Up-set masks of leqD and leqG per world, and the automorphisms.
type Relational = (Vec<u64>, Vec<u64>, Vec<Vec<usize>>);

/// Relational frames on `n` worlds up to isomorphism, with their
/// automorphism groups.
fn relational_frames(n: usize, restriction: FrameRestriction) -> Vec<Relational> {
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let off: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let from_bits = |bits: u64| {
        let mut r: Vec<u64> = (0..n).map(|a| 1u64 << a).collect();
        for (k, &(a, b)) in off.iter().enumerate() {
            if bits >> k & 1 == 1 {
                r[a] |= 1 << b;
            }
        }
        r
    };
    let all = (1u64 << n) - 1;
    let preorders: Vec<Vec<u64>> = (0..1u64 << off.len()).map(from_bits).filter(|r| is_preorder(r)).collect();
    let identity: Vec<u64> = (0..n).map(|a| 1u64 << a).collect();
    let mut out = Vec::new();
    for d in &preorders {
        if restriction == FrameRestriction::Identity && *d != identity {
            continue;
        }
        // rooted
        if !d.contains(&all) {
            continue;
        }
        for g in &preorders {
            if restriction != FrameRestriction::Any && *g != identity {
                continue;
            }
            if !frame_ok(d, g) {
                continue;
            }
            let key = (d.clone(), g.clone());
            let mut minimal = true;
            let mut autos = Vec::new();
            for p in &perms {
                let img = (relabel(d, p), relabel(g, p));
                if img < key {
                    minimal = false;
                    break;
                }
                if img == key {
                    autos.push(p.clone());
                }
            }
            if minimal {
                out.push((d.clone(), g.clone(), autos));
            }
        }
    }
    out
}

fn tuple_code_map(coder: &TupleCoder, sorts: &[Sort], code: u64, rho: &[usize]) -> u64 {
    let t: Vec<Value> = coder
        .decode(code, sorts)
        .into_iter()
        .map(|v| match v {
            Value::Ind(i) => Value::Ind(rho[i]),
            Value::Plural(m) => Value::Plural(permute_mask(m, rho)),
        })
        .collect();
    coder.encode(&t)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

impl ModelSpace {
    pub fn new(sig: &Signature, b: &SearchBounds, flags: ModelFlags) -> Result<Self, SearchError> {
        b.check()?;
        if b.max_worlds > MAX_ENUM_WORLDS {
            return Err(SearchError::TooLarge(format!("at most {MAX_ENUM_WORLDS} worlds can be enumerated")));
        }
        let constants: Vec<String> = sig.constants().iter().cloned().collect();
        let universe = b.max_domain.max(constants.len());
        if universe > MAX_ENUM_INDIVIDUALS {
            return Err(SearchError::TooLarge(format!("at most {MAX_ENUM_INDIVIDUALS} individuals can be enumerated")));
        }
        let mut names = constants.clone();
        let mut k = 0;
        while names.len() < universe {
            let n = default_individual_name(k);
            k += 1;
            if !names.contains(&n) {
                names.push(n);
            }
        }
        let fixed = (1u64 << constants.len()) - 1;
        let preds: Vec<PredDecl> = sig.preds().collect();
        for p in &preds {
            if p.arity() > b.max_arity {
                return Err(SearchError::ArityCap { pred: p.name.clone(), arity: p.arity(), cap: b.max_arity });
            }
        }
        let coders: Vec<TupleCoder> = preds
            .iter()
            .map(|p| TupleCoder::new(&p.name, &p.sorts, universe))
            .collect::<Result<_, _>>()
            .map_err(|e| SearchError::TooLarge(e.to_string()))?;
        let free: Vec<usize> = (constants.len()..universe).collect();
        let rhos: Vec<Vec<usize>> = free
            .iter()
            .copied()
            .permutations(free.len())
            .map(|p| (0..constants.len()).chain(p).collect())
            .collect();
        let full = (1u64 << universe) - 1;
        let dom_choices: Vec<u64> = subsets(full).filter(|&s| s != 0 && s & fixed == fixed).collect();

        let mut raw: Vec<(RawFrame, Vec<Symmetry>)> = Vec::new();
        for n in b.min_worlds..=b.max_worlds {
            for (d, g, autos) in relational_frames(n, b.frames) {
                // domains monotone along D, in world order
                let mut doms: Vec<Vec<u64>> = vec![vec![]];
                for w in 0..n {
                    let mut next = Vec::new();
                    for partial in &doms {
                        for &c in &dom_choices {
                            let ok = (0..w).all(|u| {
                                (d[u] >> w & 1 == 0 || partial[u] & !c == 0) && (d[w] >> u & 1 == 0 || c & !partial[u] == 0)
                            });
                            if ok {
                                let mut p = partial.clone();
                                p.push(c);
                                next.push(p);
                            }
                        }
                    }
                    doms = next;
                }
                for dom in doms {
                    let mut minimal = true;
                    let mut stab = Vec::new();
                    'perm: for pi in &autos {
                        for rho in &rhos {
                            let mut img = vec![0; n];
                            for w in 0..n {
                                img[pi[w]] = permute_mask(dom[w], rho);
                            }
                            match img.cmp(&dom) {
                                std::cmp::Ordering::Less => {
                                    minimal = false;
                                    break 'perm;
                                }
                                std::cmp::Ordering::Equal => stab.push((pi.clone(), rho.clone())),
                                _ => {}
                            }
                        }
                    }
                    if minimal {
                        raw.push((RawFrame { n, d: d.clone(), g: g.clone(), dom }, stab));
                    }
                }
            }
        }

        let mut frames = Vec::new();
        for (rf, stab) in raw {
            let worlds: Vec<String> = (0..rf.n).map(|i| format!("w{i}")).collect();
            let frame = BimodalFrame::from_masks(worlds, names.clone(), rf.d.clone(), rf.g.clone(), rf.dom.clone())
                .map_err(|e| SearchError::TooLarge(e.to_string()))?;
            // slots
            let mut slots: Vec<(usize, usize, u64)> = Vec::new();
            let mut index: HashMap<(usize, usize, u64), usize> = HashMap::new();
            for (p, decl) in preds.iter().enumerate() {
                for w in 0..rf.n {
                    for t in tuples_over(&decl.sorts, rf.dom[w]) {
                        let code = coders[p].encode(&t);
                        index.insert((p, w, code), slots.len());
                        slots.push((p, w, code));
                    }
                }
            }
            let mut uf = UnionFind((0..slots.len()).collect());
            let mut stable: Vec<&[u64]> = Vec::new();
            if flags.g_stable_atoms {
                stable.push(&rf.g);
            }
            if flags.d_stable_atoms {
                stable.push(&rf.d);
            }
            for rel in stable {
                for (p, decl) in preds.iter().enumerate() {
                    for a in 0..rf.n {
                        for c in ones(rel[a]) {
                            for t in tuples_over(&decl.sorts, rf.dom[a] & rf.dom[c]) {
                                let code = coders[p].encode(&t);
                                uf.union(index[&(p, a, code)], index[&(p, c, code)]);
                            }
                        }
                    }
                }
            }
            let mut class_of_root: HashMap<usize, usize> = HashMap::new();
            let mut classes: Vec<Vec<(usize, usize, u64)>> = Vec::new();
            let mut slot_class = vec![0; slots.len()];
            for (i, s) in slots.iter().enumerate() {
                let r = uf.find(i);
                let c = *class_of_root.entry(r).or_insert_with(|| {
                    classes.push(Vec::new());
                    classes.len() - 1
                });
                classes[c].push(*s);
                slot_class[i] = c;
            }
            if classes.len() > MAX_CLASSES {
                return Err(SearchError::TooLarge(format!(
                    "a frame has {} independent atomic facts (limit {MAX_CLASSES}); lower the bounds",
                    classes.len()
                )));
            }
            let autos = stab
                .iter()
                .filter(|(pi, rho)| pi.iter().enumerate().any(|(i, &j)| i != j) || rho.iter().enumerate().any(|(i, &j)| i != j))
                .map(|(pi, rho)| {
                    classes
                        .iter()
                        .map(|cl| {
                            let (p, w, code) = cl[0];
                            let img = (p, pi[w], tuple_code_map(&coders[p], &preds[p].sorts, code, rho));
                            slot_class[index[&img]]
                        })
                        .collect()
                })
                .collect();
            frames.push(FrameEntry { frame: Arc::new(frame), classes, autos });
        }
        let mut chunks = Vec::new();
        for (i, f) in frames.iter().enumerate() {
            let total = 1u64 << f.classes.len();
            let mut lo = 0;
            while lo < total {
                let hi = (lo + CHUNK).min(total);
                chunks.push((i, lo, hi));
                lo = hi;
            }
        }
        Ok(ModelSpace { preds: Arc::new(preds), coders: Arc::new(coders), flags, frames, chunks })
    }

    pub fn size(&self) -> SpaceSize {
        SpaceSize { frames: self.frames.len(), codes: self.frames.iter().map(|f| 1u128 << f.classes.len()).sum() }
    }

    pub fn frame_count(&self) -> usize {
        self.frames.len()
    }

    pub fn frame(&self, i: usize) -> &BimodalFrame {
        &self.frames[i].frame
    }

    /// Extension codes of frame `i`, canonical or not.
    pub fn codes(&self, i: usize) -> u64 {
        1 << self.frames[i].classes.len()
    }

    pub fn chunk_count(&self) -> usize {
        self.chunks.len()
    }

    fn canonical(&self, f: &FrameEntry, code: u64) -> bool {
        f.autos.iter().all(|p| permute_mask(code, p) >= code)
    }

    /// The model with a given reference, whether or not it is canonical.
    pub fn model(&self, r: ModelRef) -> BimodalModel {
        let f = &self.frames[r.frame];
        let mut m = self.blank(f);
        self.fill(&mut m, f, r.code);
        m
    }

    fn blank(&self, f: &FrameEntry) -> BimodalModel {
        BimodalModel::from_parts(f.frame.clone(), self.preds.clone(), self.coders.clone(), self.flags)
    }

    fn fill(&self, m: &mut BimodalModel, f: &FrameEntry, code: u64) {
        m.clear_extensions();
        for c in ones(code) {
            for &(p, w, t) in &f.classes[c] {
                m.set_code(p, w, t, true);
            }
        }
    }

    /// Visit the models of one chunk in order.
    pub fn for_each_in_chunk(&self, chunk: usize, mut visit: impl FnMut(&BimodalModel, ModelRef)) {
        let (fi, lo, hi) = self.chunks[chunk];
        let f = &self.frames[fi];
        let mut m = self.blank(f);
        for code in lo..hi {
            if self.canonical(f, code) {
                self.fill(&mut m, f, code);
                visit(&m, ModelRef { frame: fi, code });
            }
        }
    }

    /// Visit the models of one chunk in order, up to `lanes` at a time.
    pub fn for_each_batch_in_chunk(
        &self,
        chunk: usize,
        lanes: usize,
        mut visit: impl FnMut(&[&BimodalModel], &[ModelRef]),
    ) {
        let lanes = lanes.max(1);
        let mut models: Vec<BimodalModel> = Vec::with_capacity(lanes);
        let mut refs = Vec::with_capacity(lanes);
        let mut flush = |models: &mut Vec<BimodalModel>, refs: &mut Vec<ModelRef>| {
            if !models.is_empty() {
                let view: Vec<&BimodalModel> = models.iter().collect();
                visit(&view, refs);
                models.clear();
                refs.clear();
            }
        };
        self.for_each_in_chunk(chunk, |m, r| {
            models.push(m.clone());
            refs.push(r);
            if models.len() == lanes {
                flush(&mut models, &mut refs);
            }
        });
        flush(&mut models, &mut refs);
    }

    /// Run `work` on every chunk with up to `jobs` threads; results come
    /// back in chunk order.
    pub fn par_chunks<R: Send>(&self, jobs: usize, work: impl Fn(usize) -> R + Sync + Send) -> Vec<R> {
        if jobs <= 1 {
            return (0..self.chunks.len()).map(work).collect();
        }
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
        pool.install(|| (0..self.chunks.len()).into_par_iter().map(work).collect())
    }

    /// Every model in order, sequentially.
    pub fn models(&self) -> Vec<(ModelRef, BimodalModel)> {
        let mut out = Vec::new();
        for c in 0..self.chunks.len() {
            self.for_each_in_chunk(c, |m, r| out.push((r, m.clone())));
        }
        out
    }

    /// Number of models after pruning.
    pub fn count(&self, jobs: usize) -> u64 {
        self.par_chunks(jobs, |c| {
            let mut k = 0u64;
            self.for_each_in_chunk(c, |_, _| k += 1);
            k
        })
        .into_iter()
        .sum()
    }

    /// First value returned by `probe`, in enumeration order.
    pub fn find_first<R: Send>(
        &self,
        jobs: usize,
        probe: impl Fn(&BimodalModel, ModelRef) -> Option<R> + Sync + Send,
    ) -> Option<(ModelRef, R)> {
        // sequential within a chunk, chunks in parallel, earliest wins
        let batch = jobs.max(1) * 4;
        let mut start = 0;
        while start < self.chunks.len() {
            let end = (start + batch).min(self.chunks.len());
            let found: Vec<Option<(ModelRef, R)>> = {
                let run = |c: usize| {
                    let mut hit = None;
                    let (fi, lo, hi) = self.chunks[c];
                    let f = &self.frames[fi];
                    let mut m = self.blank(f);
                    for code in lo..hi {
                        if self.canonical(f, code) {
                            self.fill(&mut m, f, code);
                            let r = ModelRef { frame: fi, code };
                            if let Some(x) = probe(&m, r) {
                                hit = Some((r, x));
                                break;
                            }
                        }
                    }
                    hit
                };
                if jobs <= 1 {
                    (start..end).map(run).collect()
                } else {
                    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
                    pool.install(|| (start..end).into_par_iter().map(run).collect())
                }
            };
            if let Some(hit) = found.into_iter().flatten().next() {
                return Some(hit);
            }
            start = end;
        }
        None
    }
}

fn tuples_over(sorts: &[Sort], individuals: u64) -> Vec<Vec<Value>> {
    let mut out: Vec<Vec<Value>> = vec![vec![]];
    for s in sorts {
        let choices: Vec<Value> = match s {
            Sort::Singular => ones(individuals).map(Value::Ind).collect(),
            Sort::Plural => subsets(individuals).map(Value::Plural).collect(),
        };
        out = out
            .into_iter()
            .flat_map(|t| choices.iter().map(move |c| [t.clone(), vec![*c]].concat()))
            .collect();
    }
    out
}

/// Whether some world D-precedes every world.
pub fn is_rooted(fr: &BimodalFrame) -> bool {
    let all = (1u64 << fr.world_count()) - 1;
    (0..fr.world_count()).any(|w| fr.succ(Mode::D, w) == all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kripke::{validate_model, Assignment};

    fn sig(preds: &[(&str, &[Sort])], consts: &[&str]) -> Signature {
        let mut s = Signature::new();
        for (p, sorts) in preds {
            s = s.with_pred(p, sorts).unwrap();
        }
        for c in consts {
            s.add_constant(c).unwrap();
        }
        s
    }

    fn bounds(w: usize, d: usize) -> SearchBounds {
        SearchBounds { max_worlds: w, max_domain: d, ..SearchBounds::default() }
    }

    #[test]
    fn one_world_one_individual_one_predicate() {
        let s = sig(&[("P", &[Sort::Singular])], &[]);
        let space = ModelSpace::new(&s, &bounds(1, 1), ModelFlags::default()).unwrap();
        assert_eq!(space.count(1), 2);
    }

    #[test]
    fn every_model_is_valid_and_rooted() {
        let s = sig(&[("P", &[Sort::Singular]), ("R", &[Sort::Singular, Sort::Singular])], &["a"]);
        let space = ModelSpace::new(&s, &bounds(3, 2), ModelFlags::default()).unwrap();
        let mut n = 0;
        for c in 0..space.chunk_count() {
            space.for_each_in_chunk(c, |m, _| {
                assert!(validate_model(m).is_valid(), "{}", validate_model(m));
                assert!(is_rooted(m.frame()));
                assert!((0..m.frame().world_count()).all(|w| m.frame().dom(w) & 1 == 1));
                n += 1;
            });
        }
        assert!(n > 0);
    }

    // Brute force over all labelled models, collapsing isomorphic ones by
    // trying every renaming.
    fn labelled_classes(s: &Signature, w: usize, d: usize) -> usize {
        let mut seen: Vec<BimodalModel> = Vec::new();
        let space = ModelSpace::new(s, &bounds(w, d), ModelFlags::default()).unwrap();
        let iso = |a: &BimodalModel, b: &BimodalModel| {
            let n = a.frame().world_count();
            if n != b.frame().world_count() {
                return false;
            }
            let u = a.frame().individual_count();
            (0..n).permutations(n).any(|pi| {
                (0..u).permutations(u).any(|rho| {
                    (0..n).all(|x| {
                        [Mode::D, Mode::G].iter().all(|&md| permute_mask(a.frame().succ(md, x), &pi) == b.frame().succ(md, pi[x]))
                            && permute_mask(a.frame().dom(x), &rho) == b.frame().dom(pi[x])
                            && (0..a.preds().len()).all(|p| {
                                a.tuples(p, x).iter().all(|t| {
                                    let t2: Vec<Value> = t
                                        .iter()
                                        .map(|v| match v {
                                            Value::Ind(i) => Value::Ind(rho[*i]),
                                            Value::Plural(m) => Value::Plural(permute_mask(*m, &rho)),
                                        })
                                        .collect();
                                    b.holds(p, pi[x], &t2)
                                }) && a.tuples(p, x).len() == b.tuples(p, pi[x]).len()
                            })
                    })
                })
            })
        };
        for (_, m) in space.models() {
            assert!(!seen.iter().any(|s| iso(s, &m)), "duplicate up to isomorphism");
            seen.push(m);
        }
        // every labelled variant of every frame code is isomorphic to a kept model
        for fi in 0..space.frame_count() {
            for code in 0..1u64 << space.frames[fi].classes.len() {
                let m = space.model(ModelRef { frame: fi, code });
                assert!(seen.iter().any(|s| iso(s, &m)));
            }
        }
        seen.len()
    }

    #[test]
    fn pruning_keeps_one_model_per_isomorphism_class() {
        let s = sig(&[("P", &[Sort::Singular])], &[]);
        assert!(labelled_classes(&s, 2, 2) > 0);
        let s = sig(&[("Q", &[Sort::Plural])], &[]);
        assert!(labelled_classes(&s, 2, 2) > 0);
    }

    #[test]
    fn identity_g_restriction_contains_excluded_middle_countermodel() {
        let s = sig(&[("P", &[Sort::Singular])], &["a"]);
        let b = SearchBounds { frames: FrameRestriction::GIdentity, ..bounds(2, 1) };
        let space = ModelSpace::new(&s, &b, ModelFlags::default()).unwrap();
        let f = crate::formula::parse("P(a) | ~P(a)", &s).unwrap();
        let hit = space.models().into_iter().any(|(_, m)| {
            (0..m.frame().world_count()).any(|w| !crate::kripke::eval_forcing(&m, w, &Assignment::new(), &f).unwrap())
        });
        assert!(hit);
    }

    #[test]
    fn deterministic_order() {
        let s = sig(&[("P", &[Sort::Singular]), ("R", &[Sort::Singular, Sort::Singular])], &[]);
        let a: Vec<ModelRef> = ModelSpace::new(&s, &bounds(2, 2), ModelFlags::default()).unwrap().models().into_iter().map(|x| x.0).collect();
        let b: Vec<ModelRef> = ModelSpace::new(&s, &bounds(2, 2), ModelFlags::default()).unwrap().models().into_iter().map(|x| x.0).collect();
        assert_eq!(a, b);
    }
}
