use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

/// A Laurent polynomial in the curve parameter `w` over `F_q`.
///
/// Stands in for an element of `F_q((w))`; substitution of Laurent
/// polynomials is exact, so no precision is tracked.
#[derive(Clone, PartialEq, Eq)]
pub struct SeriesW {
    field: Field,
    terms: BTreeMap<i64, u32>,
}

impl SeriesW {
    pub fn zero(field: &Field) -> SeriesW {
        SeriesW {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &Field) -> SeriesW {
        SeriesW::monomial(field, 0, 1)
    }

    /// `c * w^k` where `c` is the raw encoding of a field element.
    pub fn monomial(field: &Field, k: i64, c: u32) -> SeriesW {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(k, c);
        }
        SeriesW {
            field: field.clone(),
            terms,
        }
    }

    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = (i64, u32)>) -> SeriesW {
        let mut out = SeriesW::zero(field);
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: i64) -> u32 {
        self.terms.get(&k).copied().unwrap_or(0)
    }

    /// Least exponent with a nonzero coefficient; `None` stands for `+∞`.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn leading(&self) -> Option<(i64, FieldElem)> {
        self.terms
            .iter()
            .next()
            .map(|(&k, &c)| (k, self.field.elem(c)))
    }

    pub(crate) fn add_term(&mut self, k: i64, c: u32) {
        if c == 0 {
            return;
        }
        let f = &self.field;
        let entry = self.terms.entry(k).or_insert(0);
        *entry = f.add(*entry, c);
        if *entry == 0 {
            self.terms.remove(&k);
        }
    }

    pub fn check_compatible(&self, other: &SeriesW) -> Result<()> {
        if self.field != other.field {
            return Err(Error::AmbientMismatch(format!(
                "{:?} vs {:?}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    pub fn scale(&self, c: u32) -> SeriesW {
        let f = &self.field;
        SeriesW::from_terms(f, self.terms().map(|(k, a)| (k, f.mul(a, c))))
    }

    /// Multiplication by `w^k`.
    pub fn shift(&self, k: i64) -> SeriesW {
        SeriesW {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> SeriesW {
        let mut base = self.clone();
        let mut acc = SeriesW::one(&self.field);
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

    /// `x ↦ x^p`, computed termwise (additive in characteristic `p`).
    pub fn frobenius(&self) -> SeriesW {
        let f = &self.field;
        let p = f.characteristic();
        SeriesW {
            field: f.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&k, &c)| (k * p as i64, f.pow(c, p)))
                .collect(),
        }
    }

    /// Canonical rendering in ascending powers of `w`.
    pub fn render(&self) -> String {
        render_univariate(&self.field, self.terms(), "w")
    }
}

pub(crate) fn render_univariate(
    field: &Field,
    terms: impl Iterator<Item = (i64, u32)>,
    var: &str,
) -> String {
    let parts: Vec<String> = terms
        .map(|(k, c)| {
            let coeff = field.render(c);
            match (k, c) {
                (0, _) => coeff,
                (1, 1) => var.to_string(),
                (k, 1) => format!("{var}^{k}"),
                (1, _) => format!("{coeff}*{var}"),
                (k, _) => format!("{coeff}*{var}^{k}"),
            }
        })
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

impl fmt::Debug for SeriesW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for SeriesW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl std::ops::Add<&SeriesW> for &SeriesW {
    type Output = SeriesW;
    fn add(self, rhs: &SeriesW) -> SeriesW {
        assert_eq!(self.field, rhs.field, "field mismatch");
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, c);
        }
        out
    }
}

impl std::ops::Sub<&SeriesW> for &SeriesW {
    type Output = SeriesW;
    fn sub(self, rhs: &SeriesW) -> SeriesW {
        assert_eq!(self.field, rhs.field, "field mismatch");
        let f = &self.field;
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, f.neg(c));
        }
        out
    }
}

impl std::ops::Mul<&SeriesW> for &SeriesW {
    type Output = SeriesW;
    fn mul(self, rhs: &SeriesW) -> SeriesW {
        assert_eq!(self.field, rhs.field, "field mismatch");
        let f = &self.field;
        let mut out = SeriesW::zero(f);
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                out.add_term(a + b, f.mul(x, y));
            }
        }
        out
    }
}

impl std::ops::Neg for &SeriesW {
    type Output = SeriesW;
    fn neg(self) -> SeriesW {
        let f = &self.field;
        SeriesW::from_terms(f, self.terms().map(|(k, c)| (k, f.neg(c))))
    }
}

crate::rings::forward_owned_ops!(SeriesW);
