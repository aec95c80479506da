//! Determinacy spectra: which pool formulas a world can still settle.

use serde::Serialize;

use super::eval::{eval_classical, Assignment, EvalError};
use super::frame::WorldId;
use super::model::BimodalModel;
use crate::formula::Formula;

/// Indices into the pool of the formulas `phi` with `<>G []D phi`
/// (`poss_g`) and with `<>D []D phi` (`poss_d`) true at `world`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeterminacySpectrum {
    pub world: WorldId,
    pub poss_g: Vec<usize>,
    pub poss_d: Vec<usize>,
}

impl DeterminacySpectrum {
    pub fn g_within_d(&self) -> bool {
        self.poss_g.iter().all(|i| self.poss_d.contains(i))
    }
}

/// Spectrum of a world over a pool of sentences.
pub fn spectrum(m: &BimodalModel, w: WorldId, pool: &[Formula]) -> Result<DeterminacySpectrum, EvalError> {
    let a = Assignment::new();
    let mut s = DeterminacySpectrum { world: w, poss_g: Vec::new(), poss_d: Vec::new() };
    for (i, f) in pool.iter().enumerate() {
        if eval_classical(m, w, &a, &Formula::dia_g(Formula::box_d(f.clone())))? {
            s.poss_g.push(i);
        }
        if eval_classical(m, w, &a, &Formula::dia_d(Formula::box_d(f.clone())))? {
            s.poss_d.push(i);
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::kripke::parse_model;

    #[test]
    fn middle_band() {
        let m = parse_model("worlds: w0 w1\nleqD: w0<=w1\ndom w0: a\ndom w1: a\ninterp w1 P: (a)\nflags: no-g-stable\n")
            .unwrap()
            .model;
        let pool = vec![parse("P(a)", &m.signature()).unwrap()];
        let s = spectrum(&m, 0, &pool).unwrap();
        assert!(s.poss_g.is_empty());
        assert_eq!(s.poss_d, vec![0]);
        assert!(s.g_within_d());
    }
}
