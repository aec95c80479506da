use std::fmt;

use thiserror::Error;

use crate::formula::Mode;

pub type WorldId = usize;
pub type Individual = usize;

/// Worlds and individuals are capped so that sets of them fit in a word.
pub const MAX_WORLDS: usize = 64;
pub const MAX_INDIVIDUALS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("too many worlds ({0}, at most {MAX_WORLDS})")]
    TooManyWorlds(usize),
    #[error("too many individuals ({0}, at most {MAX_INDIVIDUALS})")]
    TooManyIndividuals(usize),
    #[error("duplicate name {0}")]
    Duplicate(String),
    #[error("unknown world {0}")]
    UnknownWorld(String),
    #[error("unknown individual {0}")]
    UnknownIndividual(String),
    #[error("unknown predicate {0}")]
    UnknownPredicate(String),
    #[error("predicate {pred} expects {expected} arguments of sorts ({sorts}), got {got}")]
    BadTuple { pred: String, expected: usize, sorts: String, got: String },
    #[error("extension table of {pred} would need {size} entries; reduce the number of individuals")]
    TableTooLarge { pred: String, size: u128 },
}

/// A frame for the bimodal language: two preorders on worlds and a domain
/// for each world. Relations are stored as successor masks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BimodalFrame {
    worlds: Vec<String>,
    individuals: Vec<String>,
    leq_d: Vec<u64>,
    leq_g: Vec<u64>,
    dom: Vec<u64>,
}

fn unique(names: &[String]) -> Result<(), ModelError> {
    let mut seen = std::collections::BTreeSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(ModelError::Duplicate(n.clone()));
        }
    }
    Ok(())
}

impl BimodalFrame {
    /// Both relations reflexive only, all domains empty.
    pub fn new(worlds: Vec<String>, individuals: Vec<String>) -> Result<Self, ModelError> {
        if worlds.len() > MAX_WORLDS {
            return Err(ModelError::TooManyWorlds(worlds.len()));
        }
        if individuals.len() > MAX_INDIVIDUALS {
            return Err(ModelError::TooManyIndividuals(individuals.len()));
        }
        unique(&worlds)?;
        unique(&individuals)?;
        let refl: Vec<u64> = (0..worlds.len()).map(|w| 1u64 << w).collect();
        Ok(BimodalFrame {
            dom: vec![0; worlds.len()],
            leq_d: refl.clone(),
            leq_g: refl,
            worlds,
            individuals,
        })
    }

    /// Frame with worlds `w0..` and individuals `a, b, ..` (then `d26, ..`).
    pub fn with_sizes(worlds: usize, individuals: usize) -> Result<Self, ModelError> {
        Self::new(
            (0..worlds).map(|i| format!("w{i}")).collect(),
            (0..individuals).map(default_individual_name).collect(),
        )
    }

    /// Relations given as successor masks, taken as is (no closure).
    pub fn from_masks(
        worlds: Vec<String>,
        individuals: Vec<String>,
        leq_d: Vec<u64>,
        leq_g: Vec<u64>,
        dom: Vec<u64>,
    ) -> Result<Self, ModelError> {
        let mut f = Self::new(worlds, individuals)?;
        assert!(leq_d.len() == f.worlds.len() && leq_g.len() == f.worlds.len() && dom.len() == f.worlds.len());
        f.leq_d = leq_d;
        f.leq_g = leq_g;
        f.dom = dom;
        Ok(f)
    }

    pub fn world_count(&self) -> usize {
        self.worlds.len()
    }

    pub fn individual_count(&self) -> usize {
        self.individuals.len()
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn individuals(&self) -> &[String] {
        &self.individuals
    }

    pub fn world_name(&self, w: WorldId) -> &str {
        &self.worlds[w]
    }

    pub fn individual_name(&self, d: Individual) -> &str {
        &self.individuals[d]
    }

    /// Name of an individual, or `#d` when out of range.
    pub fn display_individual(&self, d: Individual) -> String {
        self.individuals.get(d).cloned().unwrap_or_else(|| format!("#{d}"))
    }

    pub fn world_index(&self, name: &str) -> Option<WorldId> {
        self.worlds.iter().position(|w| w == name)
    }

    pub fn individual_index(&self, name: &str) -> Option<Individual> {
        self.individuals.iter().position(|d| d == name)
    }

    pub fn succ(&self, m: Mode, w: WorldId) -> u64 {
        match m {
            Mode::D => self.leq_d[w],
            Mode::G => self.leq_g[w],
        }
    }

    pub fn leq(&self, m: Mode, a: WorldId, b: WorldId) -> bool {
        self.succ(m, a) >> b & 1 == 1
    }

    pub fn add_leq(&mut self, m: Mode, a: WorldId, b: WorldId) {
        match m {
            Mode::D => self.leq_d[a] |= 1 << b,
            Mode::G => self.leq_g[a] |= 1 << b,
        }
    }

    pub fn dom(&self, w: WorldId) -> u64 {
        self.dom[w]
    }

    pub fn in_dom(&self, w: WorldId, d: Individual) -> bool {
        self.dom[w] >> d & 1 == 1
    }

    pub fn set_dom(&mut self, w: WorldId, mask: u64) {
        self.dom[w] = mask;
    }

    /// Union of all domains.
    pub fn used_individuals(&self) -> u64 {
        self.dom.iter().fold(0, |a, b| a | b)
    }

    pub fn worlds_in(mask: u64) -> impl Iterator<Item = WorldId> {
        ones(mask)
    }

    /// Names of the individuals in a mask, `{a b}`.
    pub fn plural_name(&self, mask: u64) -> String {
        let names: Vec<String> = ones(mask).map(|d| self.display_individual(d)).collect();
        format!("{{{}}}", names.join(" "))
    }
}

pub fn default_individual_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("d{i}")
    }
}

/// Indices of set bits, ascending.
pub fn ones(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// All subsets of a mask, the empty set first.
pub fn subsets(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask { None } else { Some(((cur | !mask).wrapping_add(1)) & mask) };
        Some(cur)
    })
}

/// A failed frame or model condition, with the names of the witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotReflexive { rel: Mode, world: String },
    NotTransitive { rel: Mode, a: String, b: String, c: String },
    /// `a <=G b`, `a <=G c` and no common G-successor.
    NotConvergent { a: String, b: String, c: String },
    /// `a <=G b` but not `a <=D b`.
    GNotInD { a: String, b: String },
    /// `a <=G b`, `a <=D c` and no `d` with `b <=D d`, `c <=G d`.
    NotMixedConvergent { a: String, b: String, c: String },
    DomainNotMonotone { rel: Mode, a: String, b: String, individual: String },
    OutsideDomain { pred: String, world: String, tuple: String },
    NotStable { rel: Mode, pred: String, a: String, b: String, tuple: String },
    NotPersistent { pred: String, a: String, b: String, tuple: String },
    /// `a <=D b`, `a <=G c` and no `d` with `b <=G d`, `c <=D d`.
    NoForthWitness { a: String, b: String, c: String },
    /// `a <=G b`, `b <=D c` and no `d` with `a <=D d`, `d <=G c`.
    NoBackWitness { a: String, b: String, c: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotReflexive { rel, world } => write!(f, "leq{rel} is not reflexive at {world}"),
            Violation::NotTransitive { rel, a, b, c } => {
                write!(f, "leq{rel} is not transitive: {a}<={b}, {b}<={c} but not {a}<={c}")
            }
            Violation::NotConvergent { a, b, c } => write!(
                f,
                "leqG is not convergent: {a}<={b} and {a}<={c} have no common G-successor"
            ),
            Violation::GNotInD { a, b } => write!(f, "{a} <=G {b} but not {a} <=D {b}"),
            Violation::NotMixedConvergent { a, b, c } => write!(
                f,
                "mixed convergence fails: {a} <=G {b} and {a} <=D {c}, but no world is D-above {b} and G-above {c}"
            ),
            Violation::DomainNotMonotone { rel, a, b, individual } => write!(
                f,
                "domain of {a} contains {individual} but domain of {b} does not, although {a} <={rel} {b}"
            ),
            Violation::OutsideDomain { pred, world, tuple } => {
                write!(f, "{pred}{tuple} holds at {world} but uses individuals outside its domain")
            }
            Violation::NotStable { rel, pred, a, b, tuple } => write!(
                f,
                "{pred}{tuple} is not {rel}-stable: differs between {a} and {b} although {a} <={rel} {b}"
            ),
            Violation::NotPersistent { pred, a, b, tuple } => {
                write!(f, "{pred}{tuple} holds at {a} but not at its successor {b}")
            }
            Violation::NoForthWitness { a, b, c } => write!(
                f,
                "{a} <=D {b} and {a} <=G {c}, but no world is G-above {b} and D-above {c}"
            ),
            Violation::NoBackWitness { a, b, c } => write!(
                f,
                "{a} <=G {b} and {b} <=D {c}, but no world is D-above {a} and G-below {c}"
            ),
        }
    }
}

/// Result of validation; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

pub(crate) fn check_preorder(fr: &BimodalFrame, m: Mode, out: &mut Vec<Violation>) {
    let n = fr.world_count();
    let name = |w: WorldId| fr.world_name(w).to_string();
    for a in 0..n {
        if !fr.leq(m, a, a) {
            out.push(Violation::NotReflexive { rel: m, world: name(a) });
        }
        for b in ones(fr.succ(m, a)) {
            for c in ones(fr.succ(m, b)) {
                if !fr.leq(m, a, c) {
                    out.push(Violation::NotTransitive { rel: m, a: name(a), b: name(b), c: name(c) });
                }
            }
        }
    }
}

pub(crate) fn check_convergent(fr: &BimodalFrame, m: Mode, out: &mut Vec<Violation>) {
    let name = |w: WorldId| fr.world_name(w).to_string();
    for a in 0..fr.world_count() {
        let s = fr.succ(m, a);
        for b in ones(s) {
            for c in ones(s) {
                if b < c && !ones(fr.succ(m, b)).any(|d| fr.leq(m, c, d)) {
                    out.push(Violation::NotConvergent { a: name(a), b: name(b), c: name(c) });
                }
            }
        }
    }
}

pub(crate) fn check_domains(fr: &BimodalFrame, m: Mode, out: &mut Vec<Violation>) {
    for a in 0..fr.world_count() {
        for b in ones(fr.succ(m, a)) {
            let missing = fr.dom(a) & !fr.dom(b);
            if let Some(d) = ones(missing).next() {
                out.push(Violation::DomainNotMonotone {
                    rel: m,
                    a: fr.world_name(a).to_string(),
                    b: fr.world_name(b).to_string(),
                    individual: fr.individual_name(d).to_string(),
                });
            }
        }
    }
}

/// Check the bimodal frame conditions: both relations preorders, G
/// convergent, G inside D, mixed convergence, domains growing along D.
pub fn validate_frame(fr: &BimodalFrame) -> ValidationReport {
    let mut out = Vec::new();
    check_preorder(fr, Mode::D, &mut out);
    check_preorder(fr, Mode::G, &mut out);
    check_convergent(fr, Mode::G, &mut out);
    let name = |w: WorldId| fr.world_name(w).to_string();
    for a in 0..fr.world_count() {
        for b in ones(fr.succ(Mode::G, a)) {
            if !fr.leq(Mode::D, a, b) {
                out.push(Violation::GNotInD { a: name(a), b: name(b) });
            }
        }
    }
    for a in 0..fr.world_count() {
        for b in ones(fr.succ(Mode::G, a)) {
            for c in ones(fr.succ(Mode::D, a)) {
                if !ones(fr.succ(Mode::D, b)).any(|d| fr.leq(Mode::G, c, d)) {
                    out.push(Violation::NotMixedConvergent { a: name(a), b: name(b), c: name(c) });
                }
            }
        }
    }
    check_domains(fr, Mode::D, &mut out);
    ValidationReport { violations: out }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_enumeration() {
        let all: Vec<u64> = subsets(0b101).collect();
        assert_eq!(all, vec![0, 1, 4, 5]);
        assert_eq!(subsets(0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(subsets(0b111).count(), 8);
    }

    #[test]
    fn chain_is_valid() {
        let mut f = BimodalFrame::with_sizes(2, 2).unwrap();
        f.add_leq(Mode::D, 0, 1);
        f.add_leq(Mode::G, 0, 1);
        f.set_dom(0, 0b01);
        f.set_dom(1, 0b11);
        assert!(validate_frame(&f).is_valid());
    }

    #[test]
    fn detects_each_violation() {
        let mut f = BimodalFrame::with_sizes(3, 2).unwrap();
        f.add_leq(Mode::G, 0, 1);
        f.add_leq(Mode::G, 0, 2);
        f.set_dom(0, 1);
        let r = validate_frame(&f);
        assert!(r.violations.iter().any(|v| matches!(v, Violation::NotConvergent { .. })));
        assert!(r.violations.iter().any(|v| matches!(v, Violation::GNotInD { .. })));

        let mut f = BimodalFrame::with_sizes(3, 1).unwrap();
        f.add_leq(Mode::D, 0, 1);
        f.add_leq(Mode::D, 1, 2);
        f.set_dom(0, 1);
        let r = validate_frame(&f);
        assert!(r.violations.iter().any(|v| matches!(v, Violation::NotTransitive { .. })));
        assert!(r.violations.iter().any(|v| matches!(v, Violation::DomainNotMonotone { .. })));
    }

    #[test]
    fn mixed_convergence() {
        // w0 <=G w1 and w0 <=D w2 with w1, w2 D-incomparable dead ends.
        let mut f = BimodalFrame::with_sizes(3, 1).unwrap();
        for w in 0..3 {
            f.set_dom(w, 1);
        }
        f.add_leq(Mode::D, 0, 1);
        f.add_leq(Mode::D, 0, 2);
        f.add_leq(Mode::G, 0, 1);
        let r = validate_frame(&f);
        assert_eq!(r.violations.len(), 1, "{r}");
        assert!(matches!(r.violations[0], Violation::NotMixedConvergent { .. }));
    }
}
