//! Derivations shipped with the crate.

/// `(file name, text)` for every bundled derivation.
pub const CORPUS: &[(&str, &str)] = &[
    ("bm_tpl_comprehension.der", include_str!("../../derivations/bm_tpl_comprehension.der")),
    ("bm_tpl_rigidity.der", include_str!("../../derivations/bm_tpl_rigidity.der")),
    ("cbf_instance.der", include_str!("../../derivations/cbf_instance.der")),
    ("ext_godel_stability.der", include_str!("../../derivations/ext_godel_stability.der")),
    ("g_stability.der", include_str!("../../derivations/g_stability.der")),
    ("gen_then_nec.der", include_str!("../../derivations/gen_then_nec.der")),
    ("i_bpl_decidable_membership.der", include_str!("../../derivations/i_bpl_decidable_membership.der")),
    ("i_fol_identity.der", include_str!("../../derivations/i_fol_identity.der")),
    ("mixed2_necessitated.der", include_str!("../../derivations/mixed2_necessitated.der")),
    ("mixed2_subsump.der", include_str!("../../derivations/mixed2_subsump.der")),
    ("mixed2_weaken.der", include_str!("../../derivations/mixed2_weaken.der")),
    ("neg_brouwer.der", include_str!("../../derivations/neg_brouwer.der")),
    ("neg_dot2_d.der", include_str!("../../derivations/neg_dot2_d.der")),
    ("neg_five.der", include_str!("../../derivations/neg_five.der")),
    ("neg_nec_on_premise.der", include_str!("../../derivations/neg_nec_on_premise.der")),
    ("neg_rs_without_toggle.der", include_str!("../../derivations/neg_rs_without_toggle.der")),
    ("neg_undecidable_separation.der", include_str!("../../derivations/neg_undecidable_separation.der")),
    ("rs_collapse.der", include_str!("../../derivations/rs_collapse.der")),
    ("s42i_atom_stability.der", include_str!("../../derivations/s42i_atom_stability.der")),
    ("s4_bpl_empty.der", include_str!("../../derivations/s4_bpl_empty.der")),
    ("s4_fol_rigid_identity.der", include_str!("../../derivations/s4_fol_rigid_identity.der")),
    ("subsump_4g_chain.der", include_str!("../../derivations/subsump_4g_chain.der")),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proofs::{parse_derivation, Expectation};

    #[test]
    fn every_bundled_derivation_meets_its_expectation() {
        for (name, text) in CORPUS {
            let d = parse_derivation(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            let v = d.check().unwrap();
            let e = d.expect.unwrap_or_else(|| panic!("{name}: no expectation"));
            assert!(v.matches(e), "{name}: expected {e:?}, got {v}");
        }
        let count = |acc: bool| {
            CORPUS.iter().filter(|(_, t)| matches!(parse_derivation(t).unwrap().expect, Some(Expectation::Accepted)) == acc).count()
        };
        assert!(count(true) >= 12 && count(false) >= 4);
    }
}
