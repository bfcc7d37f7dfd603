//! Exhaustive minimisation of `Γ(x - (F-1)y)` over a finite box of `y`.
//!
//! Independent of the reduction: it never inspects leading terms or
//! `p`-th roots, only Witt subtraction and valuations.

use std::ops::RangeInclusive;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use super::{gamma, Character, LocalCoeff};
use crate::error::{Error, Result};
use crate::rings::{BoundaryLaurent, MPoly, SeriesW};
use crate::witt::{WittRing, WittVec};

/// The search box: every coordinate of `y` is a sum of at most
/// `support_bound` atoms with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleSpace {
    /// Pole/zero orders allowed in `w` (curves) or `t_1` (boundary model).
    pub window: RangeInclusive<i64>,
    pub support_bound: usize,
    /// Total degree bound on residue monomials; ignored for curves.
    pub residue_degree: u32,
    pub cap: u128,
}

impl Default for OracleSpace {
    fn default() -> Self {
        OracleSpace {
            window: -6..=3,
            support_bound: 3,
            residue_degree: 1,
            cap: 5_000_000,
        }
    }
}

/// Coefficient models that can enumerate the atoms of an [`OracleSpace`].
pub trait OracleCoeff: LocalCoeff {
    /// One entry per atom, holding every nonzero scalar multiple.
    fn atoms(like: &Self, space: &OracleSpace) -> Vec<Vec<Self>>;
}

impl OracleCoeff for SeriesW {
    fn atoms(like: &SeriesW, space: &OracleSpace) -> Vec<Vec<SeriesW>> {
        let f = like.field();
        space
            .window
            .clone()
            .map(|k| {
                f.elements()
                    .filter(|&c| c != 0)
                    .map(|c| SeriesW::monomial(f, k, c))
                    .collect()
            })
            .collect()
    }
}

fn residue_monomials(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0; nvars]];
    for i in 0..nvars {
        let mut next = Vec::new();
        for e in &out {
            let used: u32 = e.iter().sum();
            for k in 0..=deg - used {
                let mut e = e.clone();
                e[i] = k;
                next.push(e);
            }
        }
        out = next;
    }
    out
}

impl OracleCoeff for BoundaryLaurent {
    fn atoms(like: &BoundaryLaurent, space: &OracleSpace) -> Vec<Vec<BoundaryLaurent>> {
        let f = like.field();
        let mons = residue_monomials(like.nvars(), space.residue_degree);
        let mut out = Vec::new();
        for k in space.window.clone() {
            for e in &mons {
                out.push(
                    f.elements()
                        .filter(|&c| c != 0)
                        .map(|c| BoundaryLaurent::from_mpoly(MPoly::monomial(f, e.clone(), c), k))
                        .collect(),
                );
            }
        }
        out
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn candidates_per_coord(atoms: usize, units: usize, bound: usize) -> u128 {
    (0..=bound.min(atoms))
        .map(|k| {
            binomial(atoms as u128, k as u128)
                .saturating_mul((units as u128).saturating_pow(k as u32))
        })
        .fold(0u128, u128::saturating_add)
}

fn enumerate<R: WittRing>(atoms: &[Vec<R>], bound: usize, zero: &R) -> Vec<R> {
    fn go<R: WittRing>(atoms: &[Vec<R>], start: usize, left: usize, acc: &R, out: &mut Vec<R>) {
        out.push(acc.clone());
        if left == 0 {
            return;
        }
        for i in start..atoms.len() {
            for a in &atoms[i] {
                go(atoms, i + 1, left - 1, &acc.add(a), out);
            }
        }
    }
    let mut out = Vec::new();
    go(atoms, 0, bound, zero, &mut out);
    out
}

fn weight<R: LocalCoeff>(p: u64, n: usize, i: usize, x: &R) -> u64 {
    match x.valuation() {
        Some(v) if v < 0 => p.pow((n - 1 - i) as u32) * (-v) as u64,
        _ => 0,
    }
}

struct Search<'a, R: LocalCoeff> {
    p: u64,
    n: usize,
    cands: &'a [R],
    /// `℘(y) = y^p - y` for each candidate, used on the last coordinate.
    wp: &'a [R],
    best: &'a AtomicU64,
}

impl<R: LocalCoeff> Search<'_, R> {
    /// `x` has its first `i` coordinates fixed, with weighted maximum `lb`.
    fn descend(&self, x: &WittVec<R>, i: usize, lb: u64) -> Result<()> {
        if lb >= self.best.load(Ordering::Relaxed) {
            return Ok(());
        }
        if i == self.n - 1 {
            let top = x.coord(i);
            for w in self.wp {
                let val = lb.max(weight(self.p, self.n, i, &top.add(&w.neg())));
                self.best.fetch_min(val, Ordering::Relaxed);
            }
            return Ok(());
        }
        for y in self.cands {
            self.step(x, i, lb, y)?;
        }
        Ok(())
    }

    fn step(&self, x: &WittVec<R>, i: usize, lb: u64, y: &R) -> Result<()> {
        let next = if y.is_zero() {
            x.clone()
        } else {
            let yv = WittVec::single(self.p, self.n, i, y.clone());
            x.sub(&yv.apply_f_minus_one()?)?
        };
        let lb = lb.max(weight(self.p, self.n, i, next.coord(i)));
        self.descend(&next, i + 1, lb)
    }
}

/// `min_y Γ(x - (F-1)y)` over the box. Seeded only with `Γ(x)`.
pub fn brute_force_sw<R: OracleCoeff>(chi: &Character<R>, space: &OracleSpace) -> Result<u64> {
    let x = chi.witt();
    let p = x.prime();
    let n = x.len();
    let zero = x.zero_element();
    let atoms = R::atoms(zero, space);
    let units = atoms.first().map_or(0, Vec::len);
    let per = candidates_per_coord(atoms.len(), units, space.support_bound);
    let size = (0..n).fold(1u128, |acc, _| acc.saturating_mul(per));
    if size > space.cap {
        return Err(Error::SearchSpaceExceeded {
            size,
            cap: space.cap,
        });
    }
    let cands = enumerate(&atoms, space.support_bound, zero);
    let wp: Vec<R> = cands.iter().map(|y| y.frobenius(p).add(&y.neg())).collect();
    let best = AtomicU64::new(gamma(x));
    let search = Search {
        p,
        n,
        cands: &cands,
        wp: &wp,
        best: &best,
    };
    if n == 1 {
        search.descend(x, 0, 0)?;
    } else {
        cands.par_iter().try_for_each(|y| search.step(x, 0, 0, y))?;
    }
    Ok(best.load(Ordering::Relaxed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn residue_monomial_counts() {
        assert_eq!(residue_monomials(2, 1).len(), 3);
        assert_eq!(residue_monomials(2, 2).len(), 6);
        assert_eq!(residue_monomials(0, 3), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn candidate_count_matches_enumeration() {
        let f = Field::prime(3).unwrap();
        let space = OracleSpace {
            window: -3..=1,
            support_bound: 2,
            ..OracleSpace::default()
        };
        let zero = SeriesW::zero(&f);
        let atoms = SeriesW::atoms(&zero, &space);
        let cands = enumerate(&atoms, 2, &zero);
        assert_eq!(cands.len() as u128, candidates_per_coord(5, 2, 2));
    }

    #[test]
    fn finds_reduction_of_pth_power_pole() {
        let f = Field::prime(2).unwrap();
        let chi = Character::from_coords(2, vec![SeriesW::monomial(&f, -4, 1)]).unwrap();
        assert_eq!(brute_force_sw(&chi, &OracleSpace::default()).unwrap(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let f = Field::prime(3).unwrap();
        let z = SeriesW::zero(&f);
        let chi = Character::from_coords(3, vec![z.clone(), z.clone(), z]).unwrap();
        let space = OracleSpace {
            cap: 10,
            ..OracleSpace::default()
        };
        assert!(matches!(
            brute_force_sw(&chi, &space),
            Err(Error::SearchSpaceExceeded { .. })
        ));
    }
}
