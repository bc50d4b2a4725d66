//! Laws fixed by their first two cumulants, and the cumulant vanishing
//! pattern attached to a category.

use serde::Serialize;

use super::{cumulants_to_moments, CumulantFamily, Species};
use crate::error::{Error, Result};
use crate::partitions::Category;
use crate::scalar::ExactScalar;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Law {
    Gaussian { mean: ExactScalar, var: ExactScalar },
    Semicircle { mean: ExactScalar, var: ExactScalar },
    /// Symmetrised Rayleigh law (centred).
    RayleighSym { var: ExactScalar },
}

impl Law {
    pub fn species(&self) -> Species {
        match self {
            Law::Gaussian { .. } => Species::Classical,
            Law::Semicircle { .. } => Species::Free,
            Law::RayleighSym { .. } => Species::Half,
        }
    }

    fn mean_and_var(&self) -> (ExactScalar, ExactScalar) {
        match self {
            Law::Gaussian { mean, var } | Law::Semicircle { mean, var } => (mean.clone(), var.clone()),
            Law::RayleighSym { var } => (ExactScalar::zero(), var.clone()),
        }
    }

    /// Cumulants of the law's own species up to `order`.
    pub fn cumulants(&self, order: usize) -> Result<CumulantFamily> {
        let (mean, var) = self.mean_and_var();
        if var.is_negative() {
            return Err(Error::NegativeVariance(var.to_string()));
        }
        let values = (1..=order)
            .map(|r| match r {
                1 => mean.clone(),
                2 => var.clone(),
                _ => ExactScalar::zero(),
            })
            .collect();
        Ok(CumulantFamily::from_sequence(self.species(), values))
    }
}

/// Moments `m_1, …, m_order` of the law.
pub fn law_moments(law: &Law, order: usize) -> Result<Vec<ExactScalar>> {
    cumulants_to_moments(&law.cumulants(order)?)?.sequence()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    pub holds: bool,
    /// First word (shortest, then lexicographic) whose cumulant should vanish
    /// but does not.
    pub witness: Option<Word>,
}

/// Checks that the only nonzero cumulants sit on constant words whose length
/// is an allowed block size of the category's family.
pub fn vanishing_pattern_check(species: Species, cat: Category, c: &CumulantFamily) -> Result<VanishingReport> {
    if !species.is_compatible(cat) {
        return Err(Error::IncompatibleSpecies { species: species.to_string(), cat });
    }
    let witness = c
        .iter()
        .find(|(w, v)| !v.is_zero() && !((c.is_single_variable() || w.is_constant()) && cat.allows_block_size(w.len())))
        .map(|(w, _)| w.clone());
    Ok(VanishingReport { holds: witness.is_none(), witness })
}
