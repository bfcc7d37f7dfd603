use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::field::FieldElem;
use crate::rings::{BoundaryLaurent, MPoly, SeriesW};

/// Commutative coefficient ring for Witt vectors.
///
/// Methods take `&self` where a constant is produced, so that rings whose
/// elements carry ambient data (field, variable count) can supply it.
pub trait WittRing: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    #[allow(clippy::wrong_self_convention)]
    fn from_integer_like(&self, c: &BigInt) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `0` for the integers, `p` for `F_q`-algebras.
    fn characteristic(&self) -> u64;

    fn scale_integer(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        self.mul(&self.from_integer_like(c))
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut acc = self.from_integer_like(&BigInt::one());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `x ↦ x^p`.
    fn frobenius(&self, p: u64) -> Self {
        self.pow(p)
    }
}

impl WittRing for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn from_integer_like(&self, c: &BigInt) -> Self {
        c.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn pow(&self, e: u64) -> Self {
        num_traits::pow(self.clone(), e as usize)
    }
}

fn int_mod(c: &BigInt, p: u64) -> u32 {
    let r = c % BigInt::from(p);
    let r: i64 = r.try_into().expect("residue fits");
    r.rem_euclid(p as i64) as u32
}

impl WittRing for FieldElem {
    fn zero_like(&self) -> Self {
        self.field().elem(0)
    }
    fn from_integer_like(&self, c: &BigInt) -> Self {
        self.field().elem(int_mod(c, self.field().characteristic()))
    }
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn characteristic(&self) -> u64 {
        self.field().characteristic()
    }
    fn pow(&self, e: u64) -> Self {
        FieldElem::pow(self, e)
    }
}

impl WittRing for SeriesW {
    fn zero_like(&self) -> Self {
        SeriesW::zero(self.field())
    }
    fn from_integer_like(&self, c: &BigInt) -> Self {
        let f = self.field();
        SeriesW::monomial(f, 0, int_mod(c, f.characteristic()))
    }
    fn is_zero(&self) -> bool {
        SeriesW::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn characteristic(&self) -> u64 {
        self.field().characteristic()
    }
    fn scale_integer(&self, c: &BigInt) -> Self {
        self.scale(int_mod(c, self.field().characteristic()))
    }
    fn pow(&self, e: u64) -> Self {
        SeriesW::pow(self, e)
    }
    fn frobenius(&self, p: u64) -> Self {
        debug_assert_eq!(p, self.field().characteristic());
        SeriesW::frobenius(self)
    }
}

impl WittRing for MPoly {
    fn zero_like(&self) -> Self {
        MPoly::zero(self.field(), self.nvars())
    }
    fn from_integer_like(&self, c: &BigInt) -> Self {
        let f = self.field();
        MPoly::constant(f, self.nvars(), int_mod(c, f.characteristic()))
    }
    fn is_zero(&self) -> bool {
        MPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn characteristic(&self) -> u64 {
        self.field().characteristic()
    }
    fn scale_integer(&self, c: &BigInt) -> Self {
        self.scale(int_mod(c, self.field().characteristic()))
    }
    fn pow(&self, e: u64) -> Self {
        MPoly::pow(self, e)
    }
    fn frobenius(&self, p: u64) -> Self {
        debug_assert_eq!(p, self.field().characteristic());
        MPoly::frobenius(self)
    }
}

impl WittRing for BoundaryLaurent {
    fn zero_like(&self) -> Self {
        BoundaryLaurent::zero(self.field(), self.nvars())
    }
    fn from_integer_like(&self, c: &BigInt) -> Self {
        let f = self.field();
        BoundaryLaurent::constant(f, self.nvars(), int_mod(c, f.characteristic()))
    }
    fn is_zero(&self) -> bool {
        BoundaryLaurent::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn characteristic(&self) -> u64 {
        self.field().characteristic()
    }
    fn scale_integer(&self, c: &BigInt) -> Self {
        self.scale(int_mod(c, self.field().characteristic()))
    }
    fn pow(&self, e: u64) -> Self {
        BoundaryLaurent::pow(self, e)
    }
    fn frobenius(&self, p: u64) -> Self {
        debug_assert_eq!(p, self.field().characteristic());
        BoundaryLaurent::frobenius(self)
    }
}
