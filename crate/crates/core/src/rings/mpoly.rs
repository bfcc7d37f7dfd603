use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

/// Sparse polynomial over `F_q` in the residue variables `t_2, …, t_d`.
///
/// Exponent vectors have length `nvars = d - 1`; index `i` is the exponent of
/// `t_{i+2}`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, u32>,
}

impl MPoly {
    pub fn zero(field: &Field, nvars: usize) -> MPoly {
        MPoly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Field, nvars: usize, c: u32) -> MPoly {
        MPoly::monomial(field, vec![0; nvars], c)
    }

    pub fn one(field: &Field, nvars: usize) -> MPoly {
        MPoly::constant(field, nvars, 1)
    }

    pub fn monomial(field: &Field, exps: Vec<u32>, c: u32) -> MPoly {
        let nvars = exps.len();
        let mut out = MPoly::zero(field, nvars);
        out.add_term(exps, c);
        out
    }

    /// The variable `t_{i+2}`.
    pub fn var(field: &Field, nvars: usize, i: usize) -> MPoly {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly::monomial(field, e, 1)
    }

    pub fn from_terms(
        field: &Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, u32)>,
    ) -> MPoly {
        let mut out = MPoly::zero(field, nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            out.add_term(e, c);
        }
        out
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, u32)> + '_ {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn coeff(&self, exps: &[u32]) -> u32 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    /// Constant term, if `self` is a constant (zero counts as constant).
    pub fn as_constant(&self) -> Option<u32> {
        match self.terms.len() {
            0 => Some(0),
            1 => {
                let (e, &c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then_some(c)
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub(crate) fn add_term(&mut self, exps: Vec<u32>, c: u32) {
        if c == 0 {
            return;
        }
        let f = &self.field;
        match self.terms.get_mut(&exps) {
            Some(v) => {
                *v = f.add(*v, c);
                if *v == 0 {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn check_compatible(&self, other: &MPoly) -> Result<()> {
        if self.field != other.field || self.nvars != other.nvars {
            return Err(Error::AmbientMismatch(format!(
                "{:?}[{} vars] vs {:?}[{} vars]",
                self.field, self.nvars, other.field, other.nvars
            )));
        }
        Ok(())
    }

    pub fn scale(&self, c: u32) -> MPoly {
        let f = &self.field;
        MPoly::from_terms(
            f,
            self.nvars,
            self.terms().map(|(e, a)| (e.clone(), f.mul(a, c))),
        )
    }

    pub fn pow(&self, mut e: u64) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one(&self.field, self.nvars);
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

    /// `x ↦ x^p`, computed termwise.
    pub fn frobenius(&self) -> MPoly {
        let f = &self.field;
        let p = f.characteristic();
        MPoly {
            field: f.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| (e.iter().map(|&x| x * p as u32).collect(), f.pow(c, p)))
                .collect(),
        }
    }

    /// Splits `self = root^p + rest`.
    ///
    /// `root^p` collects exactly the monomials whose exponents are all
    /// divisible by `p`; coefficients are rooted through `c ↦ c^{p^{m-1}}`.
    pub fn pth_power_part(&self) -> (MPoly, MPoly) {
        let f = &self.field;
        let p = f.characteristic() as u32;
        let mut root = MPoly::zero(f, self.nvars);
        let mut rest = MPoly::zero(f, self.nvars);
        for (e, c) in self.terms() {
            if e.iter().all(|&x| x % p == 0) {
                root.add_term(e.iter().map(|&x| x / p).collect(), f.pth_root(c));
            } else {
                rest.add_term(e.clone(), c);
            }
        }
        (root, rest)
    }

    pub fn is_pth_power(&self) -> bool {
        self.pth_power_part().1.is_zero()
    }

    /// Canonical text: terms in ascending exponent order, `*`-joined
    /// factors, variables named `t2…`.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .terms()
            .map(|(e, c)| render_term(&self.field, c, &monomial_factors(e)))
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

pub(crate) fn monomial_factors(e: &[u32]) -> Vec<String> {
    e.iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .map(|(i, &x)| {
            if x == 1 {
                format!("t{}", i + 2)
            } else {
                format!("t{}^{}", i + 2, x)
            }
        })
        .collect()
}

pub(crate) fn render_term(field: &Field, c: u32, factors: &[String]) -> String {
    if factors.is_empty() {
        return field.render(c);
    }
    let body = factors.join("*");
    if c == 1 {
        body
    } else {
        format!("{}*{}", field.render(c), body)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl std::ops::Add<&MPoly> for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.check_compatible(rhs).expect("MPoly add");
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl std::ops::Sub<&MPoly> for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.check_compatible(rhs).expect("MPoly sub");
        let f = &self.field;
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e.clone(), f.neg(c));
        }
        out
    }
}

impl std::ops::Mul<&MPoly> for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.check_compatible(rhs).expect("MPoly mul");
        let f = &self.field;
        let mut acc: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                let e: Vec<u32> = a.iter().zip(b).map(|(i, j)| i + j).collect();
                let slot = acc.entry(e).or_insert(0);
                *slot = f.add(*slot, f.mul(x, y));
            }
        }
        acc.retain(|_, c| *c != 0);
        MPoly {
            field: f.clone(),
            nvars: self.nvars,
            terms: acc,
        }
    }
}

impl std::ops::Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        let f = &self.field;
        MPoly::from_terms(
            f,
            self.nvars,
            self.terms().map(|(e, c)| (e.clone(), f.neg(c))),
        )
    }
}

crate::rings::forward_owned_ops!(MPoly);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn freshmans_dream_in_char_two() {
        let f = Field::prime(2).unwrap();
        let s = &MPoly::var(&f, 2, 0) + &MPoly::var(&f, 2, 1);
        let sq = s.pow(2);
        let expected = &MPoly::var(&f, 2, 0).pow(2) + &MPoly::var(&f, 2, 1).pow(2);
        assert_eq!(sq, expected);
        assert_eq!(sq.render(), "t3^2 + t2^2");
    }

    #[test]
    fn pth_power_part_splits_exponents() {
        let f = Field::prime(2).unwrap();
        let t2 = MPoly::var(&f, 2, 0);
        let t3 = MPoly::var(&f, 2, 1);
        let b = &t2.pow(2) + &(&t2 * &t3);
        let (root, rest) = b.pth_power_part();
        assert_eq!(root, t2);
        assert_eq!(rest, &t2 * &t3);
    }

    #[test]
    fn single_variable_is_not_a_cube() {
        let f = Field::prime(3).unwrap();
        let x = MPoly::var(&f, 1, 0);
        let (root, rest) = x.pth_power_part();
        assert!(root.is_zero());
        assert_eq!(rest, x);
        assert!(!x.is_pth_power());
    }

    #[test]
    fn pth_root_of_extension_coefficients() {
        let f = Field::new(3, 2).unwrap();
        let g = f.generator();
        let h = &MPoly::var(&f, 2, 0).scale(g) + &MPoly::constant(&f, 2, f.add(g, 1));
        let (root, rest) = h.frobenius().pth_power_part();
        assert_eq!(root, h);
        assert!(rest.is_zero());
    }

    #[test]
    fn mismatched_ambient_is_reported() {
        let f = Field::prime(3).unwrap();
        let a = MPoly::one(&f, 1);
        let b = MPoly::one(&f, 2);
        assert!(a.check_compatible(&b).is_err());
    }
}
