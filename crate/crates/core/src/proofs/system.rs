//! The named logical systems and their axiom inventories.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::schema::{lookup, SchemaError};
use crate::formula::Mode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SystemName {
    IFol,
    S4Fol,
    S42IFol,
    BmFol,
    IBpl,
    S4Bpl,
    S42IBpl,
    BmTpl,
}

impl SystemName {
    pub const ALL: [SystemName; 8] = [
        SystemName::IFol,
        SystemName::S4Fol,
        SystemName::S42IFol,
        SystemName::BmFol,
        SystemName::IBpl,
        SystemName::S4Bpl,
        SystemName::S42IBpl,
        SystemName::BmTpl,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SystemName::IFol => "I-FOL",
            SystemName::S4Fol => "S4-FOL",
            SystemName::S42IFol => "S4.2-I-FOL",
            SystemName::BmFol => "BM-FOL",
            SystemName::IBpl => "I-BPL",
            SystemName::S4Bpl => "S4-BPL",
            SystemName::S42IBpl => "S4.2-I-BPL",
            SystemName::BmTpl => "BM-TPL",
        }
    }
}

impl fmt::Display for SystemName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SystemName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SystemName::ALL
            .into_iter()
            .find(|n| n.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<&str> = SystemName::ALL.iter().map(|n| n.as_str()).collect();
                format!("unknown system {s} (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Base {
    Classical,
    Intuitionistic,
}

const INT_PROP: &[&str] = &["I1", "I2", "I3", "I4", "I5", "I6", "I7", "I8", "I9", "I10"];
const QUANT: &[&str] = &["UI", "EG", "Q-All", "Q-Ex", "Eq-Refl", "Eq-Subst"];
const S4_D: &[&str] = &["K-D", "T-D", "4-D", "Dual-D", "CBF-D", "Stb-eq-D", "Stb-neq-D"];
const S42_G: &[&str] = &["K-G", "T-G", "4-G", ".2-G", "Dual-G", "CBF-G", "Stb-G-atom"];
const BRIDGE: &[&str] = &["Subsump", "Mixed.2"];
const INT_G: &[&str] = &[
    "K-G", "Kdia-G", "T-G", "Tdia-G", "4-G", "4dia-G", ".2-G", "FS-G", "DP-G", "N-G", "CBF-G", "Stb-G-atom",
];
const MPL: &[&str] = &["PUI", "PEG", "PQ-All", "PQ-Ex", "P-Ext", "P-Choice"];
const STB_D: &[&str] = &["StbD-prec", "StbD-nprec"];
const STB_G: &[&str] = &["StbG-prec", "StbG-nprec"];
const INEXT_D: &[&str] = &["InExtD-prec", "InExtD-incl"];
const INEXT_G: &[&str] = &["InExtG-prec", "InExtG-incl"];
const DEC: &[&str] = &["Dec-prec"];
const OMNI: &[&str] = &["Omni-prec", "Omni-incl"];
const TPL: &[&str] = &["P-Comp"];
const BPL: &[&str] = &["Empty", "P-Adj", "P-Union", "P-Sep"];
const IBPL: &[&str] = &["Empty", "P-Adj", "P-Union", "Dec-P-Sep"];

/// A logical system: base logic, modalities, language and axiom schemas.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SystemSpec {
    pub name: String,
    pub base: Base,
    pub modalities: BTreeSet<Mode>,
    pub plural: bool,
    schemas: Vec<&'static str>,
    pub reverse_subsumption: bool,
    pub id_eq: bool,
}

impl SystemSpec {
    pub fn named(n: SystemName) -> Self {
        use SystemName::*;
        let base = match n {
            IFol | S42IFol | IBpl | S42IBpl => Base::Intuitionistic,
            _ => Base::Classical,
        };
        let modalities: BTreeSet<Mode> = match n {
            IFol | IBpl => BTreeSet::new(),
            S4Fol | S4Bpl => [Mode::D].into(),
            S42IFol | S42IBpl => [Mode::G].into(),
            BmFol | BmTpl => [Mode::D, Mode::G].into(),
        };
        let first_order: Vec<&[&str]> = match n {
            IFol | IBpl => vec![INT_PROP, QUANT],
            S4Fol | S4Bpl => vec![QUANT, S4_D],
            S42IFol | S42IBpl => vec![INT_PROP, QUANT, INT_G],
            BmFol | BmTpl => vec![QUANT, S4_D, S42_G, BRIDGE],
        };
        let plural: Vec<&[&str]> = match n {
            IFol | S4Fol | S42IFol | BmFol => vec![],
            BmTpl => vec![MPL, STB_G, STB_D, INEXT_G, INEXT_D, TPL],
            S42IBpl => vec![MPL, STB_G, DEC, INEXT_G, OMNI, IBPL],
            S4Bpl => vec![MPL, STB_D, INEXT_D, BPL],
            IBpl => vec![MPL, DEC, OMNI, IBPL],
        };
        let schemas = first_order.into_iter().chain(plural.iter().copied()).flatten().copied().collect();
        SystemSpec {
            name: n.as_str().to_string(),
            base,
            modalities,
            plural: !plural.is_empty(),
            schemas,
            reverse_subsumption: false,
            id_eq: true,
        }
    }

    /// A system with an arbitrary selection of catalog schemas.
    pub fn custom(
        name: &str,
        base: Base,
        modalities: &[Mode],
        plural: bool,
        schemas: &[&str],
    ) -> Result<Self, SchemaError> {
        let schemas = schemas
            .iter()
            .map(|id| lookup(id).map(|s| s.id).ok_or_else(|| SchemaError::Unknown(id.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SystemSpec {
            name: name.to_string(),
            base,
            modalities: modalities.iter().copied().collect(),
            plural,
            schemas,
            reverse_subsumption: false,
            id_eq: true,
        })
    }

    pub fn with_reverse_subsumption(mut self, on: bool) -> Self {
        self.reverse_subsumption = on;
        self
    }

    pub fn with_id_eq(mut self, on: bool) -> Self {
        self.id_eq = on;
        self
    }

    /// Schema ids in effect, toggles applied.
    pub fn schema_ids(&self) -> Vec<&'static str> {
        let mut out = self.schemas.clone();
        if self.base == Base::Intuitionistic && self.id_eq {
            out.push("ID=");
        }
        if self.reverse_subsumption {
            out.push("R-Subsump");
        }
        out
    }

    pub fn has_schema(&self, id: &str) -> bool {
        self.schema_ids().contains(&id)
    }

    pub fn has_modality(&self, m: Mode) -> bool {
        self.modalities.contains(&m)
    }

    /// Inference rules, by the names used in derivation files.
    pub fn rules(&self) -> Vec<&'static str> {
        let mut r = Vec::new();
        if self.base == Base::Classical {
            r.push("taut");
        }
        r.extend(["mp", "gen"]);
        if self.has_modality(Mode::D) {
            r.push("necD");
        }
        if self.has_modality(Mode::G) {
            r.push("necG");
        }
        r
    }
}

/// One line of an inventory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InventoryEntry {
    pub id: &'static str,
    pub display: String,
}

fn rule_display(rule: &str) -> &'static str {
    match rule {
        "taut" => "every classical propositional tautology",
        "mp" => "from phi and phi -> psi infer psi",
        "gen" => "from phi infer forall x phi, x not free in the premises used",
        "necD" => "from a premise-free phi infer []D phi",
        "necG" => "from a premise-free phi infer []G phi",
        _ => "",
    }
}

/// Axiom schemas and rules of a system.
pub fn axiom_inventory(s: &SystemSpec) -> Vec<InventoryEntry> {
    let mut out: Vec<InventoryEntry> = Vec::new();
    for id in s.schema_ids() {
        let schema = lookup(id).expect("catalog ids");
        out.push(InventoryEntry { id: schema.id, display: schema.display().to_string() });
    }
    for r in s.rules() {
        out.push(InventoryEntry { id: r, display: rule_display(r).to_string() });
    }
    out
}

/// All eight inventories as text, one `SYSTEM  ID: display` line each.
pub fn render_inventories() -> String {
    let mut out = String::new();
    for n in SystemName::ALL {
        out.push_str(&format!("[{n}]\n"));
        for e in axiom_inventory(&SystemSpec::named(n)) {
            out.push_str(&format!("{}: {}\n", e.id, e.display));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(n: SystemName) -> Vec<&'static str> {
        SystemSpec::named(n).schema_ids()
    }

    #[test]
    fn table_rows() {
        let bm = ids(SystemName::BmFol);
        for id in ["Subsump", "Mixed.2", "CBF-D", "CBF-G", ".2-G", "Stb-G-atom"] {
            assert!(bm.contains(&id), "{id}");
        }
        assert!(!bm.contains(&"R-Subsump") && !bm.contains(&"B-D") && !bm.contains(&".2-D"));
        let ibpl = ids(SystemName::IBpl);
        for id in ["Dec-prec", "Omni-prec", "Omni-incl", "Dec-P-Sep", "ID="] {
            assert!(ibpl.contains(&id), "{id}");
        }
        assert!(!ibpl.contains(&"P-Sep") && !ibpl.contains(&"StbD-prec"));
        let tpl = ids(SystemName::BmTpl);
        assert!(tpl.contains(&"P-Comp") && tpl.contains(&"InExtG-incl") && tpl.contains(&"StbD-nprec"));
        assert!(ids(SystemName::S42IFol).contains(&"Stb-G-atom"));
        let e = axiom_inventory(&SystemSpec::named(SystemName::S42IFol));
        assert!(e.iter().any(|e| e.display == "<>G phi -> []G phi"));
    }

    #[test]
    fn toggles() {
        let s = SystemSpec::named(SystemName::BmFol).with_reverse_subsumption(true);
        assert!(s.has_schema("R-Subsump"));
        let s = SystemSpec::named(SystemName::IFol).with_id_eq(false);
        assert!(!s.has_schema("ID="));
        assert_eq!("bm-fol".parse::<SystemName>(), Ok(SystemName::BmFol));
    }
}
