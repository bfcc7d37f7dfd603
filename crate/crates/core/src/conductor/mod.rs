//! Brylinski–Kato filtration, `(F-1)`-reduction and the log Swan conductor.
//!
//! A character of order dividing `p^n` is represented by a Witt vector of
//! length `n` over the coefficient model; its class modulo `(F-1)` is what the
//! conductor sees. Reduction works coordinate by coordinate: while the leading
//! term of `x_i` is a `p`-th power at a pole, subtract `(F-1)V^i[y]` for its
//! `p`-th root `y`. Every subtraction goes through full Witt arithmetic, so the
//! carries into higher coordinates are exact, and the accumulated `y` is
//! returned as a witness.

mod nonlog;
mod oracle;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rings::{BoundaryLaurent, MPoly, SeriesW};
use crate::witt::{WittRing, WittVec};

pub use nonlog::{fil_nonlog_member, nonlog_conductor, AsPrinted, NonLogVariant, Shifted};
pub use oracle::{brute_force_sw, OracleCoeff, OracleSpace};

/// What to do with the leading term of a coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionStep<R> {
    /// Leading term is not a pole or its order is prime to `p`.
    Terminal,
    /// `p` divides the pole order but the leading coefficient has no
    /// `p`-th power part.
    Fierce,
    /// Subtract `(F-1)` of this element.
    Subtract(R),
}

/// Coefficient model with a discrete valuation and a one-step `(F-1)`
/// reduction of the leading term.
pub trait LocalCoeff: WittRing {
    /// `None` stands for `+∞`.
    fn valuation(&self) -> Option<i64>;
    fn reduction_step(&self, p: u64) -> ReductionStep<Self>;
    fn render(&self) -> String;
}

impl LocalCoeff for SeriesW {
    fn valuation(&self) -> Option<i64> {
        SeriesW::valuation(self)
    }

    fn reduction_step(&self, p: u64) -> ReductionStep<SeriesW> {
        match self.leading() {
            Some((k, c)) if k < 0 && k % p as i64 == 0 => ReductionStep::Subtract(
                SeriesW::monomial(self.field(), k / p as i64, c.pth_root().value()),
            ),
            _ => ReductionStep::Terminal,
        }
    }

    fn render(&self) -> String {
        SeriesW::render(self)
    }
}

impl LocalCoeff for BoundaryLaurent {
    fn valuation(&self) -> Option<i64> {
        BoundaryLaurent::valuation(self)
    }

    fn reduction_step(&self, p: u64) -> ReductionStep<BoundaryLaurent> {
        let Ok(d) = self.decompose() else {
            return ReductionStep::Terminal;
        };
        if d.n <= 0 || d.n % p as i64 != 0 {
            return ReductionStep::Terminal;
        }
        let (root, _) = d.lead.pth_power_part();
        if root.is_zero() {
            ReductionStep::Fierce
        } else {
            ReductionStep::Subtract(BoundaryLaurent::from_mpoly(root, -(d.n / p as i64)))
        }
    }

    fn render(&self) -> String {
        BoundaryLaurent::render(self)
    }
}

/// A character given by a Witt vector representative.
#[derive(Clone, Debug, PartialEq)]
pub struct Character<R: WittRing> {
    witt: WittVec<R>,
}

impl<R: LocalCoeff> Character<R> {
    pub fn new(witt: WittVec<R>) -> Result<Character<R>> {
        let p = witt.prime();
        if witt.zero_element().characteristic() != p {
            return Err(Error::AmbientMismatch(format!(
                "coefficients of characteristic {} for p = {p}",
                witt.zero_element().characteristic()
            )));
        }
        Ok(Character { witt })
    }

    pub fn from_coords(p: u64, coords: Vec<R>) -> Result<Character<R>> {
        Character::new(WittVec::new(p, coords)?)
    }

    pub fn prime(&self) -> u64 {
        self.witt.prime()
    }

    pub fn len(&self) -> usize {
        self.witt.len()
    }

    pub fn is_empty(&self) -> bool {
        self.witt.is_empty()
    }

    pub fn witt(&self) -> &WittVec<R> {
        &self.witt
    }

    pub fn coords(&self) -> &[R] {
        self.witt.coords()
    }
}

/// Per-coordinate weighted pole orders `p^{n-1-i} · (-v(x_i))`; `None` for
/// zero coordinates.
pub fn weighted_orders<R: LocalCoeff>(wv: &WittVec<R>) -> Vec<Option<i128>> {
    let p = wv.prime() as i128;
    let n = wv.len();
    wv.coords()
        .iter()
        .enumerate()
        .map(|(i, x)| {
            x.valuation()
                .map(|v| p.pow((n - 1 - i) as u32) * -(v as i128))
        })
        .collect()
}

/// `Γ(x) = max(0, max_i p^{n-1-i} · (-v(x_i)))` with `v(0) = +∞`.
pub fn gamma<R: LocalCoeff>(wv: &WittVec<R>) -> u64 {
    weighted_orders(wv)
        .into_iter()
        .flatten()
        .fold(0i128, i128::max) as u64
}

/// Membership in `fil_m W_n`.
pub fn fil_member<R: LocalCoeff>(wv: &WittVec<R>, level: u64) -> bool {
    gamma(wv) <= level
}

/// Length-one reduction of a curve coordinate. Returns `(x_red, y)` with
/// `x = x_red + y^p - y`.
pub fn reduce_coordinate_1d(x: &SeriesW) -> (SeriesW, SeriesW) {
    let p = x.field().characteristic();
    let mut cur = x.clone();
    let mut acc = SeriesW::zero(x.field());
    while let ReductionStep::Subtract(y) = cur.reduction_step(p) {
        cur = &(&cur - &y.frobenius()) + &y;
        acc = &acc + &y;
    }
    (cur, acc)
}

/// Length-one reduction of a boundary coordinate. Returns `(f_red, y,
/// fierce)` with `f = f_red + y^p - y`.
pub fn reduce_coordinate_2d(f: &BoundaryLaurent) -> (BoundaryLaurent, BoundaryLaurent, bool) {
    let p = f.field().characteristic();
    let mut cur = f.clone();
    let mut acc = BoundaryLaurent::zero(f.field(), f.nvars());
    loop {
        match cur.reduction_step(p) {
            ReductionStep::Subtract(y) => {
                cur = &(&cur - &y.frobenius()) + &y;
                acc = &acc + &y;
            }
            ReductionStep::Fierce => return (cur, acc, true),
            ReductionStep::Terminal => return (cur, acc, false),
        }
    }
}

/// Result of reducing a whole Witt vector.
#[derive(Clone, Debug)]
pub struct Reduction<R: WittRing> {
    pub reduced: WittVec<R>,
    pub witness: WittVec<R>,
    /// Per coordinate: stopped on a `p`-power-free leading coefficient.
    pub fierce: Vec<bool>,
    pub steps: usize,
}

/// Reduces each coordinate in turn; `input - reduced = (F-1)(witness)`.
pub fn reduce<R: LocalCoeff>(chi: &WittVec<R>) -> Result<Reduction<R>> {
    let p = chi.prime();
    let n = chi.len();
    let mut reduced = chi.clone();
    let mut witness = WittVec::zeros(p, n, chi.zero_element());
    let mut fierce = vec![false; n];
    let mut steps = 0;
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        loop {
            match reduced.coord(i).reduction_step(p) {
                ReductionStep::Subtract(y) => {
                    let yv = WittVec::single(p, n, i, y);
                    reduced = reduced.sub(&yv.apply_f_minus_one()?)?;
                    witness = witness.add(&yv)?;
                    steps += 1;
                }
                ReductionStep::Fierce => {
                    fierce[i] = true;
                    break;
                }
                ReductionStep::Terminal => break,
            }
        }
    }
    Ok(Reduction {
        reduced,
        witness,
        fierce,
        steps,
    })
}

/// Conductor computation outcome.
#[derive(Clone, Debug)]
pub struct ReductionReport<R: WittRing> {
    pub reduced: WittVec<R>,
    pub witness: WittVec<R>,
    pub sw: u64,
    /// Largest index attaining the weighted maximum; `None` when tame.
    pub dominant_index: Option<usize>,
    pub tie: bool,
    pub fierce: bool,
    pub steps: usize,
}

/// Flat serializable view of a [`ReductionReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportRecord {
    pub sw: u64,
    pub dominant_index: Option<usize>,
    pub tie: bool,
    pub fierce: bool,
    pub steps: usize,
}

impl<R: LocalCoeff> ReductionReport<R> {
    pub fn record(&self) -> ReportRecord {
        ReportRecord {
            sw: self.sw,
            dominant_index: self.dominant_index,
            tie: self.tie,
            fierce: self.fierce,
            steps: self.steps,
        }
    }
}

/// Conductor of a reduced vector by truncation to the dominant coordinate.
///
/// Returns `(sw, dominant index, tie)`. When the largest index `k` attaining
/// the weighted maximum is below the top, the quotient character
/// `(x_0, …, x_k)` carries the conductor, scaled by `p^{top-k}`.
fn sw_of_reduced<R: LocalCoeff>(reduced: &WittVec<R>) -> (u64, Option<usize>, bool) {
    let weights = weighted_orders(reduced);
    let max = weights.iter().flatten().copied().fold(0i128, i128::max);
    if max <= 0 {
        return (0, None, false);
    }
    let attaining: Vec<usize> = (0..weights.len())
        .filter(|&i| weights[i] == Some(max))
        .collect();
    let k = *attaining.last().unwrap();
    let tie = attaining.len() > 1;
    let top = reduced.len() - 1;
    if k < top {
        let (sub, _, _) = sw_of_reduced(&reduced.truncate(k + 1));
        (reduced.prime().pow((top - k) as u32) * sub, Some(k), tie)
    } else {
        // Strict dominance of the top coordinate: Sw = -v(x_top).
        let v = reduced.coord(top).valuation().unwrap();
        (-v as u64, Some(k), tie)
    }
}

fn conductor<R: LocalCoeff>(chi: &Character<R>) -> Result<ReductionReport<R>> {
    let red = reduce(chi.witt())?;
    let (sw, dominant_index, tie) = sw_of_reduced(&red.reduced);
    debug_assert_eq!(sw, gamma(&red.reduced));
    let fierce = dominant_index.is_some_and(|k| red.fierce[k]);
    Ok(ReductionReport {
        reduced: red.reduced,
        witness: red.witness,
        sw,
        dominant_index,
        tie,
        fierce,
        steps: red.steps,
    })
}

/// Log Swan conductor at the generic point of `t_1 = 0`.
pub fn sw_log(chi: &Character<BoundaryLaurent>) -> Result<ReductionReport<BoundaryLaurent>> {
    conductor(chi)
}

/// Swan conductor of a character of the curve's local field. The residue
/// field is perfect, so the reduction never stops on a fierce coordinate.
pub fn sw_curve(chi: &Character<SeriesW>) -> Result<ReductionReport<SeriesW>> {
    let report = conductor(chi)?;
    debug_assert!(!report.fierce);
    Ok(report)
}

/// Ramification type of an Artin–Schreier character at the generic point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Tame,
    WildNonfierce,
    WildFierce,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Tame => "tame",
            Classification::WildNonfierce => "wild-nonfierce",
            Classification::WildFierce => "wild-fierce",
        }
    }
}

pub fn classify(chi: &Character<BoundaryLaurent>) -> Result<Classification> {
    if chi.len() != 1 {
        return Err(Error::ClassifyLength(chi.len()));
    }
    let (red, _, fierce) = reduce_coordinate_2d(&chi.coords()[0]);
    let p = chi.prime() as i64;
    Ok(match red.valuation() {
        None => Classification::Tame,
        Some(v) if v >= 0 => Classification::Tame,
        Some(v) if (-v) % p != 0 => Classification::WildNonfierce,
        Some(_) => {
            debug_assert!(fierce);
            Classification::WildFierce
        }
    })
}

/// Leading residue coefficient `B` of a boundary coordinate, if it has a pole.
pub fn leading_residue(f: &BoundaryLaurent) -> Option<(i64, MPoly)> {
    let d = f.decompose().ok()?;
    (d.n > 0).then_some((d.n, d.lead))
}
