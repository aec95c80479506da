use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::syntax::Sort;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PredDecl {
    pub name: String,
    pub sorts: Vec<Sort>,
}

impl PredDecl {
    pub fn new(name: &str, sorts: &[Sort]) -> Self {
        PredDecl { name: name.to_string(), sorts: sorts.to_vec() }
    }

    pub fn arity(&self) -> usize {
        self.sorts.len()
    }
}

/// Symbols with a fixed role.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Designated {
    /// `Set(xx, y)`: y is the set of xx.
    Set,
    /// `Nat(x)`
    Nat,
    /// `Succ(x, y)`
    Succ,
}

impl Designated {
    pub fn decl(self) -> PredDecl {
        match self {
            Designated::Set => PredDecl::new("Set", &[Sort::Plural, Sort::Singular]),
            Designated::Nat => PredDecl::new("Nat", &[Sort::Singular]),
            Designated::Succ => PredDecl::new("Succ", &[Sort::Singular, Sort::Singular]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("predicate {name} declared twice with different sorts")]
    Conflict { name: String },
    #[error("constant {0} has a plural-looking name")]
    PluralConstant(String),
    #[error("{0} is both a predicate and a constant")]
    Clash(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    preds: BTreeMap<String, Vec<Sort>>,
    constants: BTreeSet<String>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// One unary and one binary singular predicate, `P` and `R`.
    pub fn unary_binary() -> Self {
        let mut s = Signature::new();
        s.declare(PredDecl::new("P", &[Sort::Singular])).unwrap();
        s.declare(PredDecl::new("R", &[Sort::Singular, Sort::Singular])).unwrap();
        s
    }

    pub fn declare(&mut self, d: PredDecl) -> Result<(), SignatureError> {
        if self.constants.contains(&d.name) {
            return Err(SignatureError::Clash(d.name));
        }
        match self.preds.get(&d.name) {
            Some(s) if *s != d.sorts => Err(SignatureError::Conflict { name: d.name }),
            _ => {
                self.preds.insert(d.name, d.sorts);
                Ok(())
            }
        }
    }

    pub fn with_pred(mut self, name: &str, sorts: &[Sort]) -> Result<Self, SignatureError> {
        self.declare(PredDecl::new(name, sorts))?;
        Ok(self)
    }

    pub fn designate(&mut self, d: Designated) -> Result<(), SignatureError> {
        self.declare(d.decl())
    }

    pub fn add_constant(&mut self, c: &str) -> Result<(), SignatureError> {
        if super::syntax::sort_of_name(c) == Sort::Plural {
            return Err(SignatureError::PluralConstant(c.to_string()));
        }
        if self.preds.contains_key(c) {
            return Err(SignatureError::Clash(c.to_string()));
        }
        self.constants.insert(c.to_string());
        Ok(())
    }

    pub fn with_constant(mut self, c: &str) -> Result<Self, SignatureError> {
        self.add_constant(c)?;
        Ok(self)
    }

    pub fn pred(&self, name: &str) -> Option<&[Sort]> {
        self.preds.get(name).map(Vec::as_slice)
    }

    pub fn preds(&self) -> impl Iterator<Item = PredDecl> + '_ {
        self.preds.iter().map(|(n, s)| PredDecl { name: n.clone(), sorts: s.clone() })
    }

    pub fn is_constant(&self, name: &str) -> bool {
        self.constants.contains(name)
    }

    pub fn constants(&self) -> &BTreeSet<String> {
        &self.constants
    }

    pub fn has_set(&self) -> bool {
        self.pred("Set") == Some(&[Sort::Plural, Sort::Singular][..])
    }

    /// Union of two signatures.
    pub fn merge(&mut self, other: &Signature) -> Result<(), SignatureError> {
        for d in other.preds() {
            self.declare(d)?;
        }
        for c in &other.constants {
            self.add_constant(c)?;
        }
        Ok(())
    }
}
