//! Finite fields `F_q`, `q = p^m`.
//!
//! Elements are encoded as integers `0 <= v < q` whose base-`p` digits are the
//! coefficients of a residue polynomial modulo a fixed monic irreducible
//! modulus of degree `m`. For `m > 1` multiplication goes through
//! discrete-log tables built from a primitive element.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};

/// Upper bound on the field order; tables are `O(q)`.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

#[derive(Debug)]
struct Tables {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, low-to-high coefficients, length `m + 1`.
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`; empty when `m = 1`.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Handle to a cached finite field. Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.m == other.0.m)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.0.p, self.0.m)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn cache() -> &'static RwLock<HashMap<(u32, u32), Field>> {
    static CACHE: OnceLock<RwLock<HashMap<(u32, u32), Field>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1)
    }

    pub fn new(p: u64, m: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 || (p as f64).powi(m as i32) > MAX_FIELD_ORDER as f64 {
            return Err(Error::FieldTooLarge { p, m });
        }
        let key = (p as u32, m);
        if let Some(f) = cache().read().unwrap().get(&key) {
            return Ok(f.clone());
        }
        let field = Field(Arc::new(build_tables(p as u32, m)));
        let mut w = cache().write().unwrap();
        Ok(w.entry(key).or_insert(field).clone())
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    pub fn order(&self) -> u64 {
        self.0.q as u64
    }

    /// Coefficients of the modulus, low to high.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// Reduces an integer into the prime subfield.
    pub fn from_i64(&self, c: i64) -> u32 {
        c.rem_euclid(self.0.p as i64) as u32
    }

    /// The class of `X` modulo the defining polynomial (`p` itself is out of
    /// range, so for `m = 1` this returns 0).
    pub fn generator(&self) -> u32 {
        if self.0.m == 1 {
            0
        } else {
            self.0.p
        }
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if self.0.m == 1 {
            return (a + b) % p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let p = self.0.p;
        if self.0.m == 1 {
            return (p - a) % p;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.0.m == 1 {
            return ((a as u64 * b as u64) % self.0.p as u64) as u32;
        }
        let t = &self.0;
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.0.q as u64 - 1;
        Some(self.pow(a, n - 1))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = self.0.q as u64 - 1;
        if self.0.m == 1 {
            let p = self.0.p as u64;
            let mut base = a as u64;
            let mut e = e % n;
            let mut acc = 1u64;
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc * base % p;
                }
                base = base * base % p;
                e >>= 1;
            }
            return acc as u32;
        }
        let t = &self.0;
        let l = (t.log[a as usize] as u64 * (e % n)) % n;
        t.exp[l as usize]
    }

    /// The inverse of Frobenius, `c ↦ c^{p^{m-1}}`.
    pub fn pth_root(&self, a: u32) -> u32 {
        self.pow(a, (self.0.p as u64).pow(self.0.m - 1))
    }

    /// All field elements, zero first.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.q
    }

    /// Renders an element; for `m > 1` as a polynomial in the generator `g`.
    pub fn render(&self, a: u32) -> String {
        let p = self.0.p;
        if self.0.m == 1 {
            return a.to_string();
        }
        let mut parts = Vec::new();
        let mut v = a;
        let mut i = 0;
        while v > 0 {
            let c = v % p;
            if c != 0 {
                parts.push(match (i, c) {
                    (0, c) => c.to_string(),
                    (1, 1) => "g".to_string(),
                    (1, c) => format!("{c}*g"),
                    (i, 1) => format!("g^{i}"),
                    (i, c) => format!("{c}*g^{i}"),
                });
            }
            v /= p;
            i += 1;
        }
        if parts.is_empty() {
            "0".to_string()
        } else if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            format!("({})", parts.join("+"))
        }
    }

    pub fn elem(&self, value: u32) -> FieldElem {
        debug_assert!(value < self.0.q);
        FieldElem {
            field: self.clone(),
            value,
        }
    }
}

fn digits(mut v: u32, p: u32, m: u32) -> Vec<u32> {
    let mut d = vec![0; m as usize];
    for x in d.iter_mut() {
        *x = v % p;
        v /= p;
    }
    d
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo monic `f` over `F_p`, both low-to-high.
fn poly_rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let df = f.len() - 1;
    while r.len() > df {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - df;
        if lead != 0 {
            for (i, &c) in f.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn poly_mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, f, p);
    r.resize(f.len() - 1, 0);
    r
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let m = f.len() - 1;
    for deg in 1..=m / 2 {
        let count = p.pow(deg as u32);
        for low in 0..count {
            let mut g = digits(low, p, deg as u32);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn build_tables(p: u32, m: u32) -> Tables {
    let q = p.pow(m);
    if m == 1 {
        return Tables {
            p,
            m,
            q,
            modulus: vec![0, 1],
            exp: Vec::new(),
            log: Vec::new(),
        };
    }
    let modulus = (0..q)
        .map(|low| {
            let mut f = digits(low, p, m);
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial of every degree exists");
    let n = (q - 1) as usize;
    for cand in 2..q {
        let g = digits(cand, p, m);
        let mut exp = Vec::with_capacity(2 * n);
        let mut cur = digits(1, p, m);
        let mut ok = true;
        for i in 0..n {
            let v = undigits(&cur, p);
            if i > 0 && v == 1 {
                ok = false;
                break;
            }
            exp.push(v);
            cur = poly_mul_mod(&cur, &g, &modulus, p);
        }
        if !ok {
            continue;
        }
        let mut log = vec![0u32; q as usize];
        for (i, &v) in exp.iter().enumerate() {
            log[v as usize] = i as u32;
        }
        let head = exp.clone();
        exp.extend(head);
        return Tables {
            p,
            m,
            q,
            modulus,
            exp,
            log,
        };
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}

/// An element of `F_q` together with its field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    field: Field,
    value: u32,
}

impl FieldElem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn frobenius(&self) -> FieldElem {
        self.pow(self.field.characteristic())
    }

    pub fn pth_root(&self) -> FieldElem {
        self.field.elem(self.field.pth_root(self.value))
    }

    pub fn pow(&self, e: u64) -> FieldElem {
        self.field.elem(self.field.pow(self.value, e))
    }

    pub fn inv(&self) -> Option<FieldElem> {
        self.field.inv(self.value).map(|v| self.field.elem(v))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.render(self.value))
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.render(self.value))
    }
}

macro_rules! field_binop {
    ($tr:ident, $method:ident, $op:ident) => {
        impl std::ops::$tr<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                assert_eq!(self.field, rhs.field, "field mismatch");
                self.field.elem(self.field.$op(self.value, rhs.value))
            }
        }
        impl std::ops::$tr for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
    };
}

field_binop!(Add, add, add);
field_binop!(Sub, sub, sub);
field_binop!(Mul, mul, mul);

impl std::ops::Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.field.elem(self.field.neg(self.value))
    }
}

impl std::ops::Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3), Some(5));
        assert_eq!(f.neg(2), 5);
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.pth_root(4), 4);
    }

    #[test]
    fn rejects_non_primes() {
        assert_eq!(Field::prime(9).unwrap_err(), Error::NotPrime(9));
        assert!(Field::new(2, 20).is_err());
    }

    #[test]
    fn extension_field_axioms() {
        for (p, m) in [(2u64, 2u32), (2, 3), (3, 2), (5, 2)] {
            let f = Field::new(p, m).unwrap();
            let q = f.order() as u32;
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                // Frobenius is a bijection and pth_root inverts it.
                assert_eq!(f.pth_root(f.pow(a, p)), a);
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    let c = (a + b) % q;
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn renders_generator() {
        let f = Field::new(3, 2).unwrap();
        assert_eq!(f.render(f.generator()), "g");
        assert_eq!(f.render(5), "(2+g)");
    }
}
