use std::collections::HashSet;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{adjust_p_coprime, b_good_vector, restrict_character, select_support, CurveMorphism};
use crate::conductor::{leading_residue, sw_curve, sw_log, Character};
use crate::error::{Error, Result};
use crate::rings::BoundaryLaurent;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CaseTag {
    #[serde(rename = "p-divides")]
    PDivides,
    #[serde(rename = "p-coprime")]
    PCoprime,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::PDivides => "p-divides",
            CaseTag::PCoprime => "p-coprime",
        }
    }
}

/// One curve of the family `C_e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentRow {
    pub e: u64,
    /// Multiplicity of the pulled-back boundary.
    pub mult: u64,
    pub sw: u64,
    /// `sw / mult` in lowest terms.
    pub ratio_num: u64,
    pub ratio_den: u64,
    pub case_tag: CaseTag,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentSummary {
    pub sw_log: u64,
    /// Largest `sw/e` over p-coprime rows, as `(num, den)`.
    pub sup_ratio: Option<(u64, u64)>,
    pub fierce: bool,
    pub tie: bool,
    pub dominant_index: Option<usize>,
    /// `c = v(Φ(B))` for the leading coefficient of the dominant coordinate.
    pub c: u64,
    pub support: Vec<usize>,
    pub weights: Vec<u64>,
    /// Values of `e` where the dominant coordinate restricts to zero.
    pub skipped: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyExperiment {
    pub rows: Vec<ExperimentRow>,
    pub summary: ExperimentSummary,
}

type FamilyWeights = (Vec<Option<u64>>, Vec<usize>, Vec<u64>, u64);

/// Family data: good vector weights (possibly adjusted) and `c`.
fn family_weights(
    chi: &Character<BoundaryLaurent>,
    f_k: &BoundaryLaurent,
) -> Result<FamilyWeights> {
    let nvars = chi.witt().zero_element().nvars();
    let Some((n, b)) = leading_residue(f_k) else {
        return Ok((vec![Some(1); nvars], Vec::new(), Vec::new(), 0));
    };
    let choice = select_support(&b)?;
    let mut gv = b_good_vector(&b, &choice)?;
    if n % chi.prime() as i64 == 0 {
        gv = adjust_p_coprime(&gv, &b, chi.prime())?;
    }
    let cm = CurveMorphism::from_good_vector(&gv, nvars, 1)?;
    Ok((
        cm.weights().to_vec(),
        gv.support().to_vec(),
        gv.weights().to_vec(),
        gv.weighted_degree(),
    ))
}

/// Evaluates `sw(χ|C_e)` for `e = 1..=e_max` on the family built from the
/// leading coefficient of the dominant reduced coordinate.
pub fn family_experiment(chi: &Character<BoundaryLaurent>, e_max: u64) -> Result<FamilyExperiment> {
    if e_max == 0 {
        return Err(Error::InvalidArgument("e_max must be at least 1".into()));
    }
    let p = chi.prime();
    let report = sw_log(chi)?;
    let k = report.dominant_index;
    let f_k = match k {
        Some(k) => report.reduced.coord(k).clone(),
        None => chi.witt().zero_element().clone(),
    };
    let (weights, support, gweights, c) = family_weights(chi, &f_k)?;

    let rows: Vec<Result<Option<ExperimentRow>>> = (1..=e_max)
        .into_par_iter()
        .map(|e| {
            let cm = CurveMorphism::new(e, weights.clone())?;
            let tag = if k.is_some() {
                match f_k.substitute(&cm).valuation() {
                    None => return Ok(None),
                    Some(v) if v % p as i64 == 0 => CaseTag::PDivides,
                    Some(_) => CaseTag::PCoprime,
                }
            } else {
                CaseTag::PCoprime
            };
            let sw = sw_curve(&restrict_character(chi, &cm)?)?.sw;
            let mult = cm.pullback_multiplicity();
            let g = sw.gcd(&mult);
            Ok(Some(ExperimentRow {
                e,
                mult,
                sw,
                ratio_num: sw / g,
                ratio_den: mult / g,
                case_tag: tag,
            }))
        })
        .collect();

    let mut out = Vec::new();
    let mut skipped = Vec::new();
    for (e, row) in (1..=e_max).zip(rows) {
        match row? {
            Some(r) => out.push(r),
            None => skipped.push(e),
        }
    }
    let sup_ratio = out
        .iter()
        .filter(|r| r.case_tag == CaseTag::PCoprime)
        .map(|r| (r.ratio_num, r.ratio_den))
        .max_by(|a, b| (a.0 as u128 * b.1 as u128).cmp(&(b.0 as u128 * a.1 as u128)));
    Ok(FamilyExperiment {
        rows: out,
        summary: ExperimentSummary {
            sw_log: report.sw,
            sup_ratio,
            fierce: report.fierce,
            tie: report.tie,
            dominant_index: k,
            c,
            support,
            weights: gweights,
            skipped,
        },
    })
}

/// One sampled curve and its conductor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveOutcome {
    pub e: u64,
    pub weights: Vec<Option<u64>>,
    pub sw: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsVerdict {
    pub sw_log: u64,
    pub d_mult: u64,
    pub samples: usize,
    /// Curves with `sw > e · sw_log`.
    pub log_violations: Vec<CurveOutcome>,
    /// Curves with `sw > e · d_mult` although `sw_log <= d_mult`.
    pub bound_violations: Vec<CurveOutcome>,
    /// A family row with `sw > e · d_mult`, required when `sw_log > d_mult`.
    pub witness: Option<ExperimentRow>,
    pub ok: bool,
}

const MAX_E: u64 = 12;
const MAX_WEIGHT: u64 = 6;

fn sample_curves(nvars: usize, samples: usize, seed: u64) -> Result<Vec<CurveMorphism>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(samples);
    let attempts = samples.saturating_mul(64).max(64);
    for _ in 0..attempts {
        if out.len() == samples {
            break;
        }
        let e = rng.gen_range(1..=MAX_E);
        let weights: Vec<Option<u64>> = (0..nvars)
            .map(|_| {
                if rng.gen_range(0..4) == 0 {
                    None
                } else {
                    Some(rng.gen_range(1..=MAX_WEIGHT))
                }
            })
            .collect();
        let cm = CurveMorphism::new(e, weights)?;
        if seen.insert(cm.clone()) {
            out.push(cm);
        }
    }
    if out.len() < samples {
        return Err(Error::SamplerExhausted {
            wanted: samples,
            got: out.len(),
        });
    }
    Ok(out)
}

/// Samples random curves through the closed point and checks
/// `sw ≤ e · sw_log`, and the equivalence "`sw_log ≤ d_mult` iff every curve
/// has `sw ≤ e · d_mult`" in both directions.
pub fn check_bounds(
    chi: &Character<BoundaryLaurent>,
    d_mult: u64,
    samples: usize,
    seed: u64,
) -> Result<BoundsVerdict> {
    if d_mult == 0 {
        return Err(Error::InvalidArgument("d_mult must be positive".into()));
    }
    let report = sw_log(chi)?;
    let nvars = chi.witt().zero_element().nvars();
    let curves = sample_curves(nvars, samples, seed)?;
    let outcomes: Vec<CurveOutcome> = curves
        .par_iter()
        .map(|cm| {
            let sw = sw_curve(&restrict_character(chi, cm)?)?.sw;
            Ok(CurveOutcome {
                e: cm.e(),
                weights: cm.weights().to_vec(),
                sw,
            })
        })
        .collect::<Result<_>>()?;

    let log_violations: Vec<CurveOutcome> = outcomes
        .iter()
        .filter(|o| o.sw > o.e * report.sw)
        .cloned()
        .collect();
    let mut bound_violations = Vec::new();
    let mut witness = None;
    if report.sw <= d_mult {
        bound_violations = outcomes
            .iter()
            .filter(|o| o.sw > o.e * d_mult)
            .cloned()
            .collect();
    } else {
        let p = chi.prime();
        let k = report.dominant_index.unwrap_or(0);
        let scale = p.pow((chi.len() - 1 - k) as u32);
        let c = family_experiment(chi, 1)?.summary.c;
        let fam = family_experiment(chi, scale * c + 2 * p + 8)?;
        witness = fam.rows.into_iter().find(|r| r.sw > r.e * d_mult);
    }
    let ok = log_violations.is_empty()
        && bound_violations.is_empty()
        && (report.sw <= d_mult || witness.is_some());
    Ok(BoundsVerdict {
        sw_log: report.sw,
        d_mult,
        samples,
        log_violations,
        bound_violations,
        witness,
        ok,
    })
}
