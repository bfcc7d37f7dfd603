//! Truncated `p`-typical Witt vectors over an arbitrary commutative
//! coefficient ring.

mod ghost;
mod polys;
mod ring;

use std::fmt;
use std::sync::Arc;

pub use ghost::{from_ghost, ghost};
pub use polys::{
    derive_witt_polys, derive_witt_polys_with, is_weight_homogeneous, IntPoly, UniversalWittPolys,
    WittLimits,
};
pub use ring::WittRing;

use crate::error::{Error, Result};
use polys::EvalPoly;

/// A Witt vector `(x_0, …, x_{n-1})` of length `n`.
///
/// Carries a zero of the coefficient ring so that empty vectors and shifted
/// vectors can be formed without a coordinate to copy the ambient from.
#[derive(Clone)]
pub struct WittVec<R: WittRing> {
    p: u64,
    coords: Vec<R>,
    zero: R,
}

impl<R: WittRing> PartialEq for WittVec<R> {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.coords == other.coords
    }
}

impl<R: WittRing> fmt::Debug for WittVec<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coords.iter()).finish()
    }
}

impl<R: WittRing> WittVec<R> {
    /// Builds a vector from nonempty coordinates over a ring of
    /// characteristic `0` or `p`.
    pub fn new(p: u64, coords: Vec<R>) -> Result<WittVec<R>> {
        let first = coords
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty coordinate list".into()))?;
        let c = first.characteristic();
        if c != 0 && c != p {
            return Err(Error::AmbientMismatch(format!(
                "coefficients of characteristic {c} for p = {p}"
            )));
        }
        let zero = first.zero_like();
        Ok(WittVec { p, coords, zero })
    }

    pub fn zeros(p: u64, len: usize, zero: &R) -> WittVec<R> {
        WittVec {
            p,
            coords: vec![zero.zero_like(); len],
            zero: zero.zero_like(),
        }
    }

    /// The vector with `y` in coordinate `i` and zeros elsewhere. In
    /// characteristic `p` this is `V^i([y])`.
    pub fn single(p: u64, len: usize, i: usize, y: R) -> WittVec<R> {
        let mut out = WittVec::zeros(p, len, &y);
        out.coords[i] = y;
        out
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[R] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<R> {
        self.coords
    }

    pub fn coord(&self, i: usize) -> &R {
        &self.coords[i]
    }

    pub fn zero_element(&self) -> &R {
        &self.zero
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(WittRing::is_zero)
    }

    pub fn map<S: WittRing>(&self, f: impl Fn(&R) -> S, zero: S) -> WittVec<S> {
        WittVec {
            p: self.p,
            coords: self.coords.iter().map(f).collect(),
            zero,
        }
    }

    /// The first `len` coordinates (the quotient `W_n → W_len`).
    pub fn truncate(&self, len: usize) -> WittVec<R> {
        WittVec {
            p: self.p,
            coords: self.coords[..len.min(self.len())].to_vec(),
            zero: self.zero.clone(),
        }
    }

    fn polys(&self) -> Result<Arc<UniversalWittPolys>> {
        derive_witt_polys(self.p, self.len())
    }

    fn check_same_shape(&self, other: &WittVec<R>) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        if self.p != other.p {
            return Err(Error::AmbientMismatch(format!(
                "p = {} vs p = {}",
                self.p, other.p
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &WittVec<R>) -> Result<WittVec<R>> {
        self.check_same_shape(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let polys = self.polys()?;
        let table = if self.zero.characteristic() == self.p {
            &polys.sum_eval_modp
        } else {
            &polys.sum_eval_int
        };
        let vars: Vec<&R> = self.coords.iter().chain(other.coords.iter()).collect();
        let mut powers = PowerCache::new(&vars);
        let coords = table
            .iter()
            .map(|q| eval_poly(q, &mut powers, &self.zero))
            .collect();
        Ok(WittVec {
            p: self.p,
            coords,
            zero: self.zero.clone(),
        })
    }

    pub fn neg(&self) -> Result<WittVec<R>> {
        if self.is_empty() || self.is_zero() {
            return Ok(self.clone());
        }
        let polys = self.polys()?;
        if polys.neg_is_sign_flip() {
            return Ok(WittVec {
                p: self.p,
                coords: self.coords.iter().map(WittRing::neg).collect(),
                zero: self.zero.clone(),
            });
        }
        let table = if self.zero.characteristic() == self.p {
            &polys.neg_eval_modp
        } else {
            &polys.neg_eval_int
        };
        let vars: Vec<&R> = self.coords.iter().collect();
        let mut powers = PowerCache::new(&vars);
        let coords = table
            .iter()
            .map(|q| eval_poly(q, &mut powers, &self.zero))
            .collect();
        Ok(WittVec {
            p: self.p,
            coords,
            zero: self.zero.clone(),
        })
    }

    pub fn sub(&self, other: &WittVec<R>) -> Result<WittVec<R>> {
        self.check_same_shape(other)?;
        self.add(&other.neg()?)
    }

    /// Coordinatewise `p`-th power. Only the Frobenius in characteristic `p`.
    pub fn frobenius(&self) -> WittVec<R> {
        WittVec {
            p: self.p,
            coords: self.coords.iter().map(|x| x.frobenius(self.p)).collect(),
            zero: self.zero.clone(),
        }
    }

    /// `(x_0, …, x_{n-1}) ↦ (0, x_0, …, x_{n-1})`.
    pub fn verschiebung(&self) -> WittVec<R> {
        let mut coords = Vec::with_capacity(self.len() + 1);
        coords.push(self.zero.zero_like());
        coords.extend(self.coords.iter().cloned());
        WittVec {
            p: self.p,
            coords,
            zero: self.zero.clone(),
        }
    }

    /// `F(y) - y`.
    pub fn apply_f_minus_one(&self) -> Result<WittVec<R>> {
        self.frobenius().sub(self)
    }

    /// `p · x` as a `p`-fold sum.
    pub fn mul_p(&self) -> Result<WittVec<R>> {
        let mut acc = WittVec::zeros(self.p, self.len(), &self.zero);
        for _ in 0..self.p {
            acc = acc.add(self)?;
        }
        Ok(acc)
    }
}

/// Lazily computed powers of each polynomial variable.
struct PowerCache<'a, R: WittRing> {
    vars: &'a [&'a R],
    cache: Vec<Vec<(u32, R)>>,
}

impl<'a, R: WittRing> PowerCache<'a, R> {
    fn new(vars: &'a [&'a R]) -> Self {
        PowerCache {
            vars,
            cache: vec![Vec::new(); vars.len()],
        }
    }

    fn is_zero(&self, v: usize) -> bool {
        self.vars[v].is_zero()
    }

    fn get(&mut self, v: usize, e: u32) -> R {
        if e == 1 {
            return self.vars[v].clone();
        }
        if let Some((_, r)) = self.cache[v].iter().find(|(k, _)| *k == e) {
            return r.clone();
        }
        let r = self.vars[v].pow(e as u64);
        self.cache[v].push((e, r.clone()));
        r
    }
}

fn eval_poly<R: WittRing>(q: &EvalPoly, powers: &mut PowerCache<'_, R>, zero: &R) -> R {
    let mut acc = zero.zero_like();
    for (c, factors) in &q.terms {
        if factors.iter().any(|&(v, _)| powers.is_zero(v)) {
            continue;
        }
        let mut term: Option<R> = None;
        for &(v, e) in factors {
            let x = powers.get(v, e);
            term = Some(match term {
                None => x,
                Some(t) => t.mul(&x),
            });
        }
        let term = match term {
            None => zero.from_integer_like(c),
            Some(t) => t.scale_integer(c),
        };
        acc = acc.add(&term);
    }
    acc
}
