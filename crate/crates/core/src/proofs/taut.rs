//! Classical propositional tautologies, up to renaming of bound variables.

use std::collections::HashMap;

use crate::formula::{alpha_normalize, Formula};

/// Largest number of distinct propositional atoms tried by truth table.
pub const MAX_ATOMS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TautVerdict {
    Tautology,
    /// A falsifying valuation, listed as the atoms made true.
    Falsified(Vec<Formula>),
    TooManyAtoms(usize),
}

enum Prop {
    Atom(usize),
    Not(Box<Prop>),
    And(Box<Prop>, Box<Prop>),
    Or(Box<Prop>, Box<Prop>),
    Implies(Box<Prop>, Box<Prop>),
}

impl Prop {
    fn eval(&self, v: u32) -> bool {
        match self {
            Prop::Atom(i) => v >> i & 1 == 1,
            Prop::Not(a) => !a.eval(v),
            Prop::And(a, b) => a.eval(v) && b.eval(v),
            Prop::Or(a, b) => a.eval(v) || b.eval(v),
            Prop::Implies(a, b) => !a.eval(v) || b.eval(v),
        }
    }
}

/// Propositional skeleton: maximal subformulas that are not built by a
/// connective become atoms, identified up to alpha-equivalence.
fn abstract_formula(f: &Formula, atoms: &mut Vec<Formula>, index: &mut HashMap<Formula, usize>) -> Prop {
    let mut rec = |g: &Formula| Box::new(abstract_formula(g, atoms, index));
    match f {
        Formula::Not(a) => Prop::Not(rec(a)),
        Formula::And(a, b) => Prop::And(rec(a), rec(b)),
        Formula::Or(a, b) => Prop::Or(rec(a), rec(b)),
        Formula::Implies(a, b) => Prop::Implies(rec(a), rec(b)),
        other => {
            let key = alpha_normalize(other);
            let n = atoms.len();
            let i = *index.entry(key).or_insert(n);
            if i == n {
                atoms.push(other.clone());
            }
            Prop::Atom(i)
        }
    }
}

pub fn tautology(f: &Formula) -> TautVerdict {
    let mut atoms = Vec::new();
    let p = abstract_formula(f, &mut atoms, &mut HashMap::new());
    if atoms.len() > MAX_ATOMS {
        return TautVerdict::TooManyAtoms(atoms.len());
    }
    for v in 0..1u32 << atoms.len() {
        if !p.eval(v) {
            let true_atoms = atoms.iter().enumerate().filter(|(i, _)| v >> i & 1 == 1).map(|(_, a)| a.clone()).collect();
            return TautVerdict::Falsified(true_atoms);
        }
    }
    TautVerdict::Tautology
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_infer;

    fn t(s: &str) -> TautVerdict {
        tautology(&parse_infer(s).unwrap().0)
    }

    #[test]
    fn propositional_structure_only() {
        assert_eq!(t("P(a) | ~P(a)"), TautVerdict::Tautology);
        assert_eq!(t("(forall x P(x) -> []D Q(a)) & forall y P(y) -> []D Q(a)"), TautVerdict::Tautology);
        assert!(matches!(t("forall x P(x) -> P(a)"), TautVerdict::Falsified(_)));
        assert!(matches!(t("~~P(a) -> P(a)"), TautVerdict::Tautology));
    }
}
