use std::collections::BTreeMap;
use std::fmt;

use crate::curves::CurveMorphism;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::rings::mpoly::{monomial_factors, render_term, MPoly};
use crate::rings::SeriesW;

/// An element of `F_q[t_2, …, t_d][t_1^{±1}]`, the polynomial model of the
/// local ring at the generic point of the boundary divisor `t_1 = 0`.
///
/// Stored as a map from `t_1`-exponents to nonzero residue polynomials.
#[derive(Clone, PartialEq, Eq)]
pub struct BoundaryLaurent {
    field: Field,
    nvars: usize,
    terms: BTreeMap<i64, MPoly>,
}

/// Output of [`BoundaryLaurent::decompose`]: `f = lead · t_1^{-n} + rest`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryDecomposition {
    pub n: i64,
    pub lead: MPoly,
    pub rest: BoundaryLaurent,
}

impl BoundaryLaurent {
    pub fn zero(field: &Field, nvars: usize) -> BoundaryLaurent {
        BoundaryLaurent {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &Field, nvars: usize) -> BoundaryLaurent {
        BoundaryLaurent::from_mpoly(MPoly::one(field, nvars), 0)
    }

    /// `b · t_1^k`.
    pub fn from_mpoly(b: MPoly, k: i64) -> BoundaryLaurent {
        let mut out = BoundaryLaurent::zero(b.field(), b.nvars());
        if !b.is_zero() {
            out.terms.insert(k, b);
        }
        out
    }

    pub fn constant(field: &Field, nvars: usize, c: u32) -> BoundaryLaurent {
        BoundaryLaurent::from_mpoly(MPoly::constant(field, nvars, c), 0)
    }

    /// `t_1^k`.
    pub fn t1_pow(field: &Field, nvars: usize, k: i64) -> BoundaryLaurent {
        BoundaryLaurent::from_mpoly(MPoly::one(field, nvars), k)
    }

    /// The residue variable `t_{i+2}`.
    pub fn var(field: &Field, nvars: usize, i: usize) -> BoundaryLaurent {
        BoundaryLaurent::from_mpoly(MPoly::var(field, nvars, i), 0)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of variables `d` including `t_1`.
    pub fn dimension(&self) -> usize {
        self.nvars + 1
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &MPoly)> + '_ {
        self.terms.iter().map(|(&k, b)| (k, b))
    }

    pub fn coeff(&self, k: i64) -> Option<&MPoly> {
        self.terms.get(&k)
    }

    /// Number of `(t_1-exponent, monomial)` terms.
    pub fn term_count(&self) -> usize {
        self.terms.values().map(MPoly::len).sum()
    }

    /// `v_{t_1}`; `None` stands for `+∞`.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn check_compatible(&self, other: &BoundaryLaurent) -> Result<()> {
        if self.field != other.field || self.nvars != other.nvars {
            return Err(Error::AmbientMismatch(format!(
                "{:?}[d = {}] vs {:?}[d = {}]",
                self.field,
                self.dimension(),
                other.field,
                other.dimension()
            )));
        }
        Ok(())
    }

    fn add_mpoly(&mut self, k: i64, b: &MPoly) {
        if b.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                *v = &*v + b;
                if v.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, b.clone());
            }
        }
    }

    /// Reads off `f = B · t_1^{-N} + rest` with `N = -v(f)` and
    /// `v(rest) > -N`.
    pub fn decompose(&self) -> Result<BoundaryDecomposition> {
        let (&k, lead) = self.terms.iter().next().ok_or(Error::ZeroElement)?;
        let mut rest = self.clone();
        rest.terms.remove(&k);
        Ok(BoundaryDecomposition {
            n: -k,
            lead: lead.clone(),
            rest,
        })
    }

    /// Multiplication by `t_1^k`.
    pub fn shift(&self, k: i64) -> BoundaryLaurent {
        BoundaryLaurent {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(&e, b)| (e + k, b.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> BoundaryLaurent {
        let mut out = BoundaryLaurent::zero(&self.field, self.nvars);
        for (k, b) in self.terms() {
            out.add_mpoly(k, &b.scale(c));
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> BoundaryLaurent {
        let mut base = self.clone();
        let mut acc = BoundaryLaurent::one(&self.field, self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse of a unit, i.e. of `c · t_1^k` with `c ∈ F_q^×`.
    pub fn unit_inverse(&self) -> Option<BoundaryLaurent> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&k, b) = self.terms.iter().next().unwrap();
        let c = b.as_constant()?;
        let inv = self.field.inv(c)?;
        Some(BoundaryLaurent::from_mpoly(
            MPoly::constant(&self.field, self.nvars, inv),
            -k,
        ))
    }

    pub fn frobenius(&self) -> BoundaryLaurent {
        let p = self.field.characteristic() as i64;
        BoundaryLaurent {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(&k, b)| (k * p, b.frobenius()))
                .collect(),
        }
    }

    /// Image under the curve morphism: `t_1 ↦ w^e`, `t_i ↦ w^{m_i}` on the
    /// kept variables, `t_s ↦ 0` on the killed ones.
    pub fn substitute(&self, cm: &CurveMorphism) -> SeriesW {
        assert_eq!(cm.weights().len(), self.nvars, "curve morphism arity");
        let e = cm.e() as i64;
        let mut out = SeriesW::zero(&self.field);
        for (k, b) in self.terms() {
            for (exps, c) in b.terms() {
                if let Some(w) = cm.monomial_weight(exps) {
                    out.add_term(k * e + w as i64, c);
                }
            }
        }
        out
    }

    /// For `d = 1`, the same Laurent polynomial read in the curve variable.
    pub fn to_series(&self) -> Option<SeriesW> {
        if self.nvars != 0 {
            return None;
        }
        Some(SeriesW::from_terms(
            &self.field,
            self.terms().map(|(k, b)| (k, b.as_constant().unwrap_or(0))),
        ))
    }

    pub fn from_series(s: &SeriesW) -> BoundaryLaurent {
        let f = s.field();
        let mut out = BoundaryLaurent::zero(f, 0);
        for (k, c) in s.terms() {
            out.add_mpoly(k, &MPoly::constant(f, 0, c));
        }
        out
    }

    /// Canonical rendering: ascending `t_1`-exponent, then ascending residue
    /// monomials. Re-parses to an equal value.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (k, b) in self.terms() {
            for (e, c) in b.terms() {
                let mut factors = monomial_factors(e);
                match k {
                    0 => {}
                    1 => factors.push("t1".to_string()),
                    k => factors.push(format!("t1^{k}")),
                }
                parts.push(render_term(&self.field, c, &factors));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Debug for BoundaryLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for BoundaryLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl std::ops::Add<&BoundaryLaurent> for &BoundaryLaurent {
    type Output = BoundaryLaurent;
    fn add(self, rhs: &BoundaryLaurent) -> BoundaryLaurent {
        self.check_compatible(rhs).expect("BoundaryLaurent add");
        let mut out = self.clone();
        for (k, b) in rhs.terms() {
            out.add_mpoly(k, b);
        }
        out
    }
}

impl std::ops::Sub<&BoundaryLaurent> for &BoundaryLaurent {
    type Output = BoundaryLaurent;
    fn sub(self, rhs: &BoundaryLaurent) -> BoundaryLaurent {
        self.check_compatible(rhs).expect("BoundaryLaurent sub");
        let mut out = self.clone();
        for (k, b) in rhs.terms() {
            out.add_mpoly(k, &-b);
        }
        out
    }
}

impl std::ops::Mul<&BoundaryLaurent> for &BoundaryLaurent {
    type Output = BoundaryLaurent;
    fn mul(self, rhs: &BoundaryLaurent) -> BoundaryLaurent {
        self.check_compatible(rhs).expect("BoundaryLaurent mul");
        let mut out = BoundaryLaurent::zero(&self.field, self.nvars);
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                out.add_mpoly(a + b, &(x * y));
            }
        }
        out
    }
}

impl std::ops::Neg for &BoundaryLaurent {
    type Output = BoundaryLaurent;
    fn neg(self) -> BoundaryLaurent {
        BoundaryLaurent {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(&k, b)| (k, -b)).collect(),
        }
    }
}

crate::rings::forward_owned_ops!(BoundaryLaurent);
