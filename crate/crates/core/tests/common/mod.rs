#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use swan_core::{BoundaryLaurent, Character, Field, MPoly, SeriesW, WittVec};

pub fn unit<R: Rng>(rng: &mut R, f: &Field) -> u32 {
    rng.gen_range(1..f.order() as u32)
}

/// Up to `terms` monomials `c·w^k` with `k` in `lo..=hi`.
pub fn series<R: Rng>(rng: &mut R, f: &Field, lo: i64, hi: i64, terms: usize) -> SeriesW {
    let n = rng.gen_range(0..=terms);
    SeriesW::from_terms(f, (0..n).map(|_| (rng.gen_range(lo..=hi), unit(rng, f))))
}

pub fn curve_vec<R: Rng>(
    rng: &mut R,
    p: u64,
    len: usize,
    lo: i64,
    hi: i64,
    terms: usize,
) -> WittVec<SeriesW> {
    let f = Field::prime(p).unwrap();
    WittVec::new(
        p,
        (0..len).map(|_| series(rng, &f, lo, hi, terms)).collect(),
    )
    .unwrap()
}

pub fn curve_char<R: Rng>(
    rng: &mut R,
    p: u64,
    len: usize,
    lo: i64,
    hi: i64,
    terms: usize,
) -> Character<SeriesW> {
    Character::new(curve_vec(rng, p, len, lo, hi, terms)).unwrap()
}

/// Random residue monomial with exponents drawn from `exps`.
pub fn residue_exps<R: Rng>(rng: &mut R, nvars: usize, exps: &[u32]) -> Vec<u32> {
    (0..nvars).map(|_| *exps.choose(rng).unwrap()).collect()
}

pub fn boundary<R: Rng>(
    rng: &mut R,
    f: &Field,
    nvars: usize,
    lo: i64,
    hi: i64,
    exps: &[u32],
    terms: usize,
) -> BoundaryLaurent {
    let n = rng.gen_range(0..=terms);
    let mut out = BoundaryLaurent::zero(f, nvars);
    for _ in 0..n {
        let b = MPoly::monomial(f, residue_exps(rng, nvars, exps), unit(rng, f));
        out = &out + &BoundaryLaurent::from_mpoly(b, rng.gen_range(lo..=hi));
    }
    out
}

#[allow(clippy::too_many_arguments)]
pub fn boundary_char<R: Rng>(
    rng: &mut R,
    p: u64,
    len: usize,
    nvars: usize,
    lo: i64,
    hi: i64,
    exps: &[u32],
    terms: usize,
) -> Character<BoundaryLaurent> {
    let f = Field::prime(p).unwrap();
    let coords = (0..len)
        .map(|_| boundary(rng, &f, nvars, lo, hi, exps, terms))
        .collect();
    Character::from_coords(p, coords).unwrap()
}

/// `B` with no monomial whose exponents are all divisible by `p`.
pub fn reduced_mpoly<R: Rng>(
    rng: &mut R,
    p: u64,
    nvars: usize,
    max_exp: u32,
    terms: usize,
) -> MPoly {
    let f = Field::prime(p).unwrap();
    loop {
        let mut b = MPoly::zero(&f, nvars);
        for _ in 0..rng.gen_range(1..=terms) {
            let e: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=max_exp)).collect();
            if e.iter().all(|&k| (k as u64).is_multiple_of(p)) {
                continue;
            }
            b = &b + &MPoly::monomial(&f, e, unit(rng, &f));
        }
        if !b.is_zero() {
            return b;
        }
    }
}
