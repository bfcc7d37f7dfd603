use serde::Serialize;

use crate::curves::GoodVector;
use crate::error::{Error, Result};

/// A monomial curve `t_1 = w^e`, `t_i = w^{m_i}` (or `t_i = 0`) through the
/// origin, tangent to the boundary `t_1 = 0` to order `e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CurveMorphism {
    e: u64,
    /// One entry per residue variable `t_2, …, t_d`; `None` kills the variable.
    weights: Vec<Option<u64>>,
}

impl CurveMorphism {
    pub fn new(e: u64, weights: Vec<Option<u64>>) -> Result<CurveMorphism> {
        if e == 0 {
            return Err(Error::InvalidArgument(
                "tangency order e must be positive".into(),
            ));
        }
        if weights.contains(&Some(0)) {
            return Err(Error::InvalidArgument(
                "substitution exponents must be positive".into(),
            ));
        }
        Ok(CurveMorphism { e, weights })
    }

    /// The curve `Φ_e` attached to a good vector: support variables get the
    /// vector's weights, every other residue variable is sent to zero.
    pub fn from_good_vector(gv: &GoodVector, nvars: usize, e: u64) -> Result<CurveMorphism> {
        let mut weights = vec![None; nvars];
        for (&var, &m) in gv.support().iter().zip(gv.weights()) {
            weights[var] = Some(m);
        }
        CurveMorphism::new(e, weights)
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn weights(&self) -> &[Option<u64>] {
        &self.weights
    }

    /// Variables sent to zero, as indices into `t_2, …, t_d` (0-based).
    pub fn killed(&self) -> Vec<usize> {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| w.is_none())
            .map(|(i, _)| i)
            .collect()
    }

    /// `w`-exponent of the image of a residue monomial, `None` if the image
    /// vanishes.
    pub fn monomial_weight(&self, exps: &[u32]) -> Option<u64> {
        let mut total = 0u64;
        for (&k, w) in exps.iter().zip(&self.weights) {
            if k == 0 {
                continue;
            }
            total += k as u64 * (*w)?;
        }
        Some(total)
    }

    /// Multiplicity of the pulled-back boundary divisor at the closed point.
    pub fn pullback_multiplicity(&self) -> u64 {
        self.e
    }
}
