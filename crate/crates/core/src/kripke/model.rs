use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::frame::{ones, subsets, validate_frame, BimodalFrame, Individual, ModelError, ValidationReport, Violation, WorldId};
use crate::formula::{Mode, PredDecl, Signature, Sort};

/// Largest extension table allowed per predicate and world, in entries.
pub const MAX_TABLE: u128 = 1 << 24;

/// Value of a variable: an individual, or a plurality given as a set of
/// individuals (possibly empty).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Value {
    Ind(Individual),
    Plural(u64),
}

impl Value {
    pub fn sort(self) -> Sort {
        match self {
            Value::Ind(_) => Sort::Singular,
            Value::Plural(_) => Sort::Plural,
        }
    }

    /// The individuals involved, as a mask.
    pub fn support(self) -> u64 {
        match self {
            Value::Ind(d) => 1 << d,
            Value::Plural(m) => m,
        }
    }
}

/// Semantic switches carried by a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModelFlags {
    /// Atomic predications agree along G between worlds sharing the objects.
    pub g_stable_atoms: bool,
    /// The same along D.
    pub d_stable_atoms: bool,
    /// Identity is decidable, so identity-dependent schemas may be assumed.
    pub decidable_identity: bool,
}

impl Default for ModelFlags {
    fn default() -> Self {
        ModelFlags { g_stable_atoms: true, d_stable_atoms: false, decidable_identity: true }
    }
}

/// Mixed-radix coding of argument tuples: a singular position takes one of
/// `n` individuals, a plural position one of `2^n` subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleCoder {
    radix: Vec<u64>,
    size: u64,
}

impl TupleCoder {
    pub fn new(pred: &str, sorts: &[Sort], individuals: usize) -> Result<Self, ModelError> {
        let mut size: u128 = 1;
        let mut radix = Vec::with_capacity(sorts.len());
        for s in sorts {
            let r: u128 = match s {
                Sort::Singular => individuals as u128,
                Sort::Plural => 1u128 << individuals,
            };
            size *= r.max(1);
            if size > MAX_TABLE {
                return Err(ModelError::TableTooLarge { pred: pred.to_string(), size });
            }
            radix.push(r as u64);
        }
        Ok(TupleCoder { radix, size: size as u64 })
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn encode(&self, tuple: &[Value]) -> u64 {
        let mut code = 0;
        for (v, r) in tuple.iter().zip(&self.radix) {
            let digit = match v {
                Value::Ind(d) => *d as u64,
                Value::Plural(m) => *m,
            };
            code = code * r + digit;
        }
        code
    }

    pub fn decode(&self, mut code: u64, sorts: &[Sort]) -> Vec<Value> {
        let mut out = vec![Value::Ind(0); self.radix.len()];
        for i in (0..self.radix.len()).rev() {
            let digit = code % self.radix[i];
            code /= self.radix[i];
            out[i] = match sorts[i] {
                Sort::Singular => Value::Ind(digit as usize),
                Sort::Plural => Value::Plural(digit),
            };
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: u64) -> Self {
        BitSet { words: vec![0; len.div_ceil(64) as usize] }
    }

    pub fn get(&self, i: u64) -> bool {
        self.words[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: u64, b: bool) {
        let w = &mut self.words[(i / 64) as usize];
        if b {
            *w |= 1 << (i % 64);
        } else {
            *w &= !(1 << (i % 64));
        }
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = u64> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(|(k, w)| ones(*w).map(move |i| k as u64 * 64 + i as u64))
    }
}

/// A bimodal model: a frame plus, for each predicate and world, the set of
/// tuples that hold there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimodalModel {
    frame: Arc<BimodalFrame>,
    preds: Arc<Vec<PredDecl>>,
    coders: Arc<Vec<TupleCoder>>,
    ext: Vec<BitSet>,
    flags: ModelFlags,
}

impl BimodalModel {
    /// Model with all extensions empty.
    pub fn new(frame: BimodalFrame, preds: Vec<PredDecl>, flags: ModelFlags) -> Result<Self, ModelError> {
        let frame = Arc::new(frame);
        let n = frame.individual_count();
        let coders = preds
            .iter()
            .map(|p| TupleCoder::new(&p.name, &p.sorts, n))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_parts(frame, Arc::new(preds), Arc::new(coders), flags))
    }

    pub(crate) fn from_parts(
        frame: Arc<BimodalFrame>,
        preds: Arc<Vec<PredDecl>>,
        coders: Arc<Vec<TupleCoder>>,
        flags: ModelFlags,
    ) -> Self {
        let w = frame.world_count();
        let ext = coders.iter().flat_map(|c| (0..w).map(|_| BitSet::new(c.size()))).collect();
        BimodalModel { frame, preds, coders, ext, flags }
    }

    pub fn frame(&self) -> &BimodalFrame {
        &self.frame
    }

    pub fn shared_frame(&self) -> &Arc<BimodalFrame> {
        &self.frame
    }

    pub fn preds(&self) -> &[PredDecl] {
        &self.preds
    }

    pub fn pred_index(&self, name: &str) -> Option<usize> {
        self.preds.iter().position(|p| p.name == name)
    }

    pub fn coder(&self, p: usize) -> &TupleCoder {
        &self.coders[p]
    }

    pub fn flags(&self) -> ModelFlags {
        self.flags
    }

    pub fn set_flags(&mut self, flags: ModelFlags) {
        self.flags = flags;
    }

    /// Predicates and, as constants, the names of all individuals.
    pub fn signature(&self) -> Signature {
        let mut s = Signature::new();
        for p in self.preds.iter() {
            // Predicate names are unique by construction.
            s.declare(p.clone()).expect("unique predicates");
        }
        for d in self.frame.individuals() {
            let _ = s.add_constant(d);
        }
        s
    }

    fn slot(&self, p: usize, w: WorldId) -> usize {
        p * self.frame.world_count() + w
    }

    pub fn ext(&self, p: usize, w: WorldId) -> &BitSet {
        &self.ext[self.slot(p, w)]
    }

    pub fn holds(&self, p: usize, w: WorldId, tuple: &[Value]) -> bool {
        self.ext(p, w).get(self.coders[p].encode(tuple))
    }

    pub fn holds_code(&self, p: usize, w: WorldId, code: u64) -> bool {
        self.ext(p, w).get(code)
    }

    fn check_tuple(&self, p: usize, tuple: &[Value]) -> Result<(), ModelError> {
        let decl = &self.preds[p];
        let ok = tuple.len() == decl.sorts.len()
            && tuple.iter().zip(&decl.sorts).all(|(v, s)| v.sort() == *s)
            && tuple.iter().all(|v| v.support() >> self.frame.individual_count() == 0);
        if ok {
            Ok(())
        } else {
            Err(ModelError::BadTuple {
                pred: decl.name.clone(),
                expected: decl.sorts.len(),
                sorts: decl.sorts.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", "),
                got: self.tuple_name(tuple),
            })
        }
    }

    pub fn set(&mut self, p: usize, w: WorldId, tuple: &[Value], b: bool) -> Result<(), ModelError> {
        self.check_tuple(p, tuple)?;
        let code = self.coders[p].encode(tuple);
        let slot = self.slot(p, w);
        self.ext[slot].set(code, b);
        Ok(())
    }

    pub(crate) fn set_code(&mut self, p: usize, w: WorldId, code: u64, b: bool) {
        let slot = self.slot(p, w);
        self.ext[slot].set(code, b);
    }

    pub(crate) fn clear_extensions(&mut self) {
        for e in &mut self.ext {
            e.words.fill(0);
        }
    }

    /// Tuples holding at a world, in code order.
    pub fn tuples(&self, p: usize, w: WorldId) -> Vec<Vec<Value>> {
        let sorts = &self.preds[p].sorts;
        self.ext(p, w).iter_ones().map(|c| self.coders[p].decode(c, sorts)).collect()
    }

    pub fn value_name(&self, v: Value) -> String {
        match v {
            Value::Ind(d) => self.frame.display_individual(d),
            Value::Plural(m) => self.frame.plural_name(m),
        }
    }

    pub fn tuple_name(&self, tuple: &[Value]) -> String {
        let parts: Vec<String> = tuple.iter().map(|v| self.value_name(*v)).collect();
        format!("({})", parts.join(", "))
    }

    /// All tuples of the right sorts built from the given individuals.
    pub fn tuples_over(&self, p: usize, individuals: u64) -> Vec<Vec<Value>> {
        let mut out: Vec<Vec<Value>> = vec![vec![]];
        for s in &self.preds[p].sorts {
            let choices: Vec<Value> = match s {
                Sort::Singular => ones(individuals).map(Value::Ind).collect(),
                Sort::Plural => subsets(individuals).map(Value::Plural).collect(),
            };
            out = out
                .into_iter()
                .flat_map(|t| {
                    choices.iter().map(move |c| {
                        let mut t = t.clone();
                        t.push(*c);
                        t
                    })
                })
                .collect();
        }
        out
    }
}

fn tuple_inside(tuple: &[Value], mask: u64) -> bool {
    tuple.iter().all(|v| v.support() & !mask == 0)
}

pub(crate) fn check_extensions(m: &BimodalModel, out: &mut Vec<Violation>) {
    let fr = m.frame();
    for p in 0..m.preds().len() {
        for w in 0..fr.world_count() {
            for t in m.tuples(p, w) {
                if !tuple_inside(&t, fr.dom(w)) {
                    out.push(Violation::OutsideDomain {
                        pred: m.preds()[p].name.clone(),
                        world: fr.world_name(w).to_string(),
                        tuple: m.tuple_name(&t),
                    });
                }
            }
        }
    }
}

/// Atomic predications over the objects of `a` agree between `a` and each
/// `rel`-successor.
pub(crate) fn check_stability(m: &BimodalModel, rel: Mode, out: &mut Vec<Violation>) {
    let fr = m.frame();
    for p in 0..m.preds().len() {
        for a in 0..fr.world_count() {
            for b in ones(fr.succ(rel, a)) {
                let shared = fr.dom(a) & fr.dom(b);
                for t in m.tuples_over(p, shared) {
                    if m.holds(p, a, &t) != m.holds(p, b, &t) {
                        out.push(Violation::NotStable {
                            rel,
                            pred: m.preds()[p].name.clone(),
                            a: fr.world_name(a).to_string(),
                            b: fr.world_name(b).to_string(),
                            tuple: m.tuple_name(&t),
                        });
                    }
                }
            }
        }
    }
}

/// Frame conditions plus extension and stability conditions.
pub fn validate_model(m: &BimodalModel) -> ValidationReport {
    let mut report = validate_frame(m.frame());
    check_extensions(m, &mut report.violations);
    if m.flags().g_stable_atoms {
        check_stability(m, Mode::G, &mut report.violations);
    }
    if m.flags().d_stable_atoms {
        check_stability(m, Mode::D, &mut report.violations);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_world() -> BimodalModel {
        let mut f = BimodalFrame::with_sizes(2, 2).unwrap();
        f.add_leq(Mode::D, 0, 1);
        f.add_leq(Mode::G, 0, 1);
        f.set_dom(0, 0b01);
        f.set_dom(1, 0b11);
        let preds = vec![
            PredDecl::new("P", &[Sort::Singular]),
            PredDecl::new("S", &[Sort::Plural, Sort::Singular]),
        ];
        BimodalModel::new(f, preds, ModelFlags::default()).unwrap()
    }

    #[test]
    fn coder_round_trip() {
        let c = TupleCoder::new("S", &[Sort::Plural, Sort::Singular], 3).unwrap();
        assert_eq!(c.size(), 24);
        let t = vec![Value::Plural(0b101), Value::Ind(2)];
        assert_eq!(c.decode(c.encode(&t), &[Sort::Plural, Sort::Singular]), t);
        assert!(TupleCoder::new("Big", &[Sort::Plural], 40).is_err());
    }

    #[test]
    fn stability_violation_reported() {
        let mut m = two_world();
        m.set(0, 0, &[Value::Ind(0)], true).unwrap();
        assert!(!validate_model(&m).is_valid());
        m.set(0, 1, &[Value::Ind(0)], true).unwrap();
        assert!(validate_model(&m).is_valid());
        // b is new at w1, so its predications there are unconstrained.
        m.set(1, 1, &[Value::Plural(0b10), Value::Ind(1)], true).unwrap();
        assert!(validate_model(&m).is_valid());
    }

    #[test]
    fn extension_outside_domain() {
        let mut m = two_world();
        m.set(0, 0, &[Value::Ind(1)], true).unwrap();
        let r = validate_model(&m);
        assert!(r.violations.iter().any(|v| matches!(v, Violation::OutsideDomain { .. })));
    }

    #[test]
    fn bad_tuple_rejected() {
        let mut m = two_world();
        assert!(m.set(0, 0, &[Value::Plural(1)], true).is_err());
        assert!(m.set(0, 0, &[Value::Ind(5)], true).is_err());
    }
}
