//! Monomial curves tangent to the boundary and the `B`-good weight vectors
//! that keep the leading coefficient alive on them.

mod experiment;
mod morphism;

use serde::Serialize;

use crate::conductor::Character;
use crate::error::{Error, Result};
use crate::rings::{BoundaryLaurent, MPoly, SeriesW};

pub use experiment::{
    check_bounds, family_experiment, BoundsVerdict, CaseTag, CurveOutcome, ExperimentRow,
    ExperimentSummary, FamilyExperiment,
};
pub use morphism::CurveMorphism;

/// Residue variables kept by the curve family (indices into `t_2, …, t_d`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportChoice {
    pub support: Vec<usize>,
    /// `B` has a constant term, so no variable is needed; one is kept anyway
    /// so that the curve is not contained in the boundary.
    pub degenerate: bool,
}

impl SupportChoice {
    /// Number of coordinates of the curve family, `t_1` included.
    pub fn r(&self) -> usize {
        self.support.len() + 1
    }
}

/// A weight vector on the support together with the monomial `g` of `B`
/// that it makes strictly minimal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodVector {
    support: Vec<usize>,
    /// Exponents of `g` on the support variables.
    g: Vec<u32>,
    weights: Vec<u64>,
    certified: bool,
}

impl GoodVector {
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn minimal_exponents(&self) -> &[u32] {
        &self.g
    }

    pub fn certified(&self) -> bool {
        self.certified
    }

    pub fn r(&self) -> usize {
        self.support.len() + 1
    }

    /// The full exponent vector of `g` in `t_2, …, t_d`.
    pub fn minimal_monomial(&self, nvars: usize) -> Vec<u32> {
        let mut e = vec![0; nvars];
        for (&v, &k) in self.support.iter().zip(&self.g) {
            e[v] = k;
        }
        e
    }

    /// Weighted degree of a monomial, `None` if it uses a variable outside
    /// the support (and so dies on the curve).
    pub fn psi(&self, exps: &[u32]) -> Option<u64> {
        let mut total = 0u64;
        for (v, &k) in exps.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let j = self.support.iter().position(|&s| s == v)?;
            total += self.weights[j] * k as u64;
        }
        Some(total)
    }

    /// `Ψ(g)`, the valuation of `Φ(B)` on any curve of the family.
    pub fn weighted_degree(&self) -> u64 {
        self.g
            .iter()
            .zip(&self.weights)
            .map(|(&k, &m)| m * k as u64)
            .sum()
    }

    /// Exhaustive check that `g` is a monomial of `b` and every other
    /// surviving monomial has strictly larger weighted degree.
    pub fn certify(&self, b: &MPoly) -> bool {
        let g = self.minimal_monomial(b.nvars());
        if b.coeff(&g) == 0 {
            return false;
        }
        let psi_g = self.weighted_degree();
        b.terms()
            .filter(|(e, _)| **e != g)
            .all(|(e, _)| self.psi(e).is_none_or(|w| w > psi_g))
    }

    fn with_weights(&self, weights: Vec<u64>, b: &MPoly) -> GoodVector {
        let mut gv = GoodVector {
            weights,
            certified: false,
            ..self.clone()
        };
        gv.certified = gv.certify(b);
        gv
    }
}

fn support_of(exps: &[u32]) -> Vec<usize> {
    (0..exps.len()).filter(|&i| exps[i] > 0).collect()
}

/// Smallest set of residue variables that some monomial of `b` is supported
/// on; ties go to the lexicographically smallest index set.
pub fn select_support(b: &MPoly) -> Result<SupportChoice> {
    if b.is_zero() {
        return Err(Error::ZeroElement);
    }
    let best = b
        .terms()
        .map(|(e, _)| support_of(e))
        .min_by(|a, c| a.len().cmp(&c.len()).then_with(|| a.cmp(c)))
        .unwrap();
    if best.is_empty() {
        let support = if b.nvars() == 0 { vec![] } else { vec![0] };
        return Ok(SupportChoice {
            support,
            degenerate: true,
        });
    }
    Ok(SupportChoice {
        support: best,
        degenerate: false,
    })
}

/// `g` = lexicographically least exponent vector among monomials of `b`
/// with exactly the chosen support; weights `m_r = 1`,
/// `m_j = Σ_{i>j} m_i b_i`.
pub fn b_good_vector(b: &MPoly, choice: &SupportChoice) -> Result<GoodVector> {
    let s = &choice.support;
    let g: Vec<u32> = if choice.degenerate {
        if b.coeff(&vec![0; b.nvars()]) == 0 {
            return Err(Error::EmptySupportSet);
        }
        vec![0; s.len()]
    } else {
        b.terms()
            .filter(|(e, _)| support_of(e) == *s)
            .map(|(e, _)| s.iter().map(|&v| e[v]).collect::<Vec<u32>>())
            .min()
            .ok_or(Error::EmptySupportSet)?
    };
    let mut weights = vec![1u64; s.len()];
    for j in (0..s.len().saturating_sub(1)).rev() {
        weights[j] = (j + 1..s.len())
            .map(|i| weights[i] * g[i] as u64)
            .sum::<u64>()
            .max(1);
    }
    let gv = GoodVector {
        support: s.clone(),
        g,
        weights: weights.clone(),
        certified: false,
    }
    .with_weights(weights, b);
    if !gv.certified {
        return Err(Error::Uncertified);
    }
    Ok(gv)
}

/// All `Q` with `Σ Q_i = total` and `Q_i >= Σ_{j>i} b_j Q_j`.
fn admissible_q(b: &[u32], total: u64) -> Vec<Vec<u64>> {
    fn go(b: &[u32], idx: usize, left: u64, tail: u64, q: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if idx == 0 {
            if left >= tail {
                q[0] = left;
                out.push(q.clone());
            }
            return;
        }
        for v in tail..=left {
            q[idx] = v;
            go(b, idx - 1, left - v, tail + b[idx] as u64 * v, q, out);
        }
        q[idx] = 0;
    }
    let mut out = Vec::new();
    if b.is_empty() {
        return out;
    }
    let mut q = vec![0; b.len()];
    go(b, b.len() - 1, total, 0, &mut q, &mut out);
    out
}

const MAX_Q_TOTAL: u64 = 4096;

/// Perturbs the non-final weights by the smallest admissible `Q` so that
/// `p ∤ Ψ(g)`, keeping `g` strictly minimal.
pub fn adjust_p_coprime(gv: &GoodVector, b: &MPoly, p: u64) -> Result<GoodVector> {
    if !gv.certified {
        return Err(Error::Uncertified);
    }
    if !gv.weighted_degree().is_multiple_of(p) {
        return Ok(gv.clone());
    }
    if gv.g.iter().all(|&k| (k as u64).is_multiple_of(p)) {
        return Err(Error::PPowerObstruction);
    }
    let q_len = gv.weights.len() - 1;
    let bs = &gv.g[..q_len];
    for total in 1..=MAX_Q_TOTAL {
        for q in admissible_q(bs, total) {
            let mut weights = gv.weights.clone();
            for (w, d) in weights.iter_mut().zip(&q) {
                *w += d;
            }
            let cand = gv.with_weights(weights, b);
            if cand.certified && !cand.weighted_degree().is_multiple_of(p) {
                return Ok(cand);
            }
        }
    }
    Err(Error::PPowerObstruction)
}

/// Coordinatewise pullback along the curve.
pub fn restrict_character(
    chi: &Character<BoundaryLaurent>,
    cm: &CurveMorphism,
) -> Result<Character<SeriesW>> {
    let nvars = chi.witt().zero_element().nvars();
    if cm.weights().len() != nvars {
        return Err(Error::AmbientMismatch(format!(
            "curve has {} residue weights, character has {nvars} residue variables",
            cm.weights().len()
        )));
    }
    let coords = chi.coords().iter().map(|f| f.substitute(cm)).collect();
    Character::from_coords(chi.prime(), coords)
}

/// Multiplicity of the pulled-back boundary divisor at the closed point.
pub fn pullback_multiplicity(cm: &CurveMorphism) -> u64 {
    cm.pullback_multiplicity()
}
