use super::{gamma, reduce, Character, LocalCoeff};
use crate::error::{Error, Result};
use crate::witt::WittVec;

/// Parameters of the non-log filtration
/// `fil'_m W_n = fil_{base(m)} W_n + V^{n-n'} fil_m W_{n'}`.
pub trait NonLogVariant: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn base_level(&self, m: u64) -> u64;
    /// `n'`, the length of the Verschiebung part.
    fn v_length(&self, n: usize, m: u64, p: u64) -> usize;
}

fn ord_p(mut m: u64, p: u64) -> usize {
    let mut k = 0;
    while m > 0 && m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    k
}

/// `fil_m + V^{n-n'} fil_m W_{n'}` with `n' = min(n, ord_p(m+1))`.
#[derive(Clone, Copy, Debug, Default)]
pub struct AsPrinted;

impl NonLogVariant for AsPrinted {
    fn name(&self) -> &'static str {
        "as-printed"
    }
    fn describe(&self) -> &'static str {
        "fil_m W_n + V^(n-n') fil_m W_n', n' = min(n, ord_p(m+1))"
    }
    fn base_level(&self, m: u64) -> u64 {
        m
    }
    fn v_length(&self, n: usize, m: u64, p: u64) -> usize {
        n.min(ord_p(m + 1, p))
    }
}

/// `fil_{m-1} + V^{n-n'} fil_m W_{n'}` with
/// `n' = min(n, ord_p(m))`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Shifted;

impl NonLogVariant for Shifted {
    fn name(&self) -> &'static str {
        "shifted"
    }
    fn describe(&self) -> &'static str {
        "fil_(m-1) W_n + V^(n-n') fil_m W_n', n' = min(n, ord_p(m))"
    }
    fn base_level(&self, m: u64) -> u64 {
        m - 1
    }
    fn v_length(&self, n: usize, m: u64, p: u64) -> usize {
        n.min(ord_p(m, p))
    }
}

/// Exact membership of a vector in `fil'_m W_n`, `m >= 1`.
///
/// With `k = n - n'`, `x = a + V^k b` forces `a` to agree with `x` below
/// index `k`. Writing `u = (x_0, …, x_{k-1}, 0, …)`, `x` is a member iff
/// `Γ(u) <= base` and the tail of `x - u`, read in `W_{n'}`, lies in
/// `fil_m`.
pub fn fil_nonlog_member<R: LocalCoeff>(
    wv: &WittVec<R>,
    m: u64,
    variant: &dyn NonLogVariant,
) -> Result<bool> {
    if m < 1 {
        return Err(Error::LevelOutOfRange { min: 1, got: m });
    }
    let p = wv.prime();
    let n = wv.len();
    let base = variant.base_level(m);
    let k = n - variant.v_length(n, m, p);
    let mut u = WittVec::zeros(p, n, wv.zero_element());
    for j in 0..k {
        u = u.add(&WittVec::single(p, n, j, wv.coord(j).clone()))?;
    }
    debug_assert!((0..k).all(|j| u.coord(j) == wv.coord(j)));
    if gamma(&u) > base {
        return Ok(false);
    }
    if k == n {
        return Ok(true);
    }
    let z = wv.sub(&u)?;
    let tail = WittVec::new(p, z.coords()[k..].to_vec())?;
    Ok(gamma(&tail) <= m)
}

/// Non-log conductor of a character: the least `m >= 1` whose filtration
/// step contains the reduced representative, or `0` when unramified.
pub fn nonlog_conductor<R: LocalCoeff>(
    chi: &Character<R>,
    variant: &dyn NonLogVariant,
) -> Result<u64> {
    let red = reduce(chi.witt())?.reduced;
    let g = gamma(&red);
    if g == 0 {
        return Ok(0);
    }
    for m in 1..=g + 1 {
        if fil_nonlog_member(&red, m, variant)? {
            return Ok(m);
        }
    }
    unreachable!("fil_(m-1) contains every vector with Γ <= m - 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conductor::fil_member;
    use crate::field::Field;
    use crate::rings::SeriesW;

    fn curve(p: u64, coords: &[&[(i64, u32)]]) -> WittVec<SeriesW> {
        let f = Field::prime(p).unwrap();
        WittVec::new(
            p,
            coords
                .iter()
                .map(|t| SeriesW::from_terms(&f, t.iter().copied()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn verschiebung_part_is_admitted() {
        let x = curve(2, &[&[], &[(-1, 1)]]);
        assert!(fil_nonlog_member(&x, 1, &AsPrinted).unwrap());
        assert!(fil_nonlog_member(&x, 2, &Shifted).unwrap());
    }

    #[test]
    fn level_zero_is_rejected() {
        let x = curve(2, &[&[(-1, 1)]]);
        assert_eq!(
            fil_nonlog_member(&x, 0, &Shifted).unwrap_err(),
            Error::LevelOutOfRange { min: 1, got: 0 }
        );
    }

    #[test]
    fn sandwiched_between_log_steps() {
        let x = curve(3, &[&[(-2, 1)], &[(-4, 2), (-1, 1)]]);
        for m in 1..12 {
            let member = fil_nonlog_member(&x, m, &Shifted).unwrap();
            if fil_member(&x, m - 1) {
                assert!(member);
            }
            if member {
                assert!(fil_member(&x, m));
            }
        }
    }

    #[test]
    fn classical_artin_conductor() {
        let f = Field::prime(3).unwrap();
        let chi = Character::from_coords(3, vec![SeriesW::monomial(&f, -5, 1)]).unwrap();
        assert_eq!(nonlog_conductor(&chi, &Shifted).unwrap(), 6);
        let tame = Character::from_coords(3, vec![SeriesW::monomial(&f, 2, 1)]).unwrap();
        assert_eq!(nonlog_conductor(&tame, &Shifted).unwrap(), 0);
    }
}
