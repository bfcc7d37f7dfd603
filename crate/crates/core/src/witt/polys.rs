//! Universal addition and negation polynomials for `p`-typical Witt vectors.
//!
//! `S_i` and `N_i` are obtained by solving the ghost equations
//! `w_i(S) = w_i(a) + w_i(b)` and `w_i(N) = -w_i(a)` over the integers, one
//! coordinate at a time; each step is an exact division by `p^i`. Results are
//! cached per `(p, length)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::is_prime;

/// Sparse polynomial with integer coefficients in `nvars` indeterminates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl IntPoly {
    pub fn zero(nvars: usize) -> IntPoly {
        IntPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn var(nvars: usize, i: usize) -> IntPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut out = IntPoly::zero(nvars);
        out.terms.insert(e, BigInt::one());
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn add(&self, other: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    fn scale(&self, c: &BigInt) -> IntPoly {
        let mut out = IntPoly::zero(self.nvars);
        for (e, x) in self.terms() {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut out = IntPoly::zero(self.nvars);
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                let e = a.iter().zip(b).map(|(i, j)| i + j).collect();
                out.add_term(e, x * y);
            }
        }
        out
    }

    fn pow(&self, mut e: u64) -> IntPoly {
        let mut acc = IntPoly::zero(self.nvars);
        acc.terms.insert(vec![0; self.nvars], BigInt::one());
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

    fn exact_div(&self, d: &BigInt) -> Option<IntPoly> {
        let mut out = IntPoly::zero(self.nvars);
        for (e, c) in self.terms() {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            out.add_term(e.clone(), q);
        }
        Some(out)
    }

    /// Evaluates at integer points.
    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        self.terms()
            .map(|(e, c)| {
                e.iter().zip(point).fold(c.clone(), |acc, (&k, x)| {
                    acc * num_traits::pow(x.clone(), k as usize)
                })
            })
            .sum()
    }

    /// Coefficients reduced into `[0, p)`, zero terms dropped.
    pub fn reduce_mod(&self, p: u64) -> IntPoly {
        let pb = BigInt::from(p);
        let mut out = IntPoly::zero(self.nvars);
        for (e, c) in self.terms() {
            out.add_term(e.clone(), c.mod_floor(&pb));
        }
        out
    }

    /// Renders with the given variable names. Terms are ordered by total
    /// degree, then by descending exponent vector.
    pub fn render(&self, names: &[String]) -> String {
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (i, (e, c)) in terms.iter().enumerate() {
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    if k == 1 {
                        names[v].clone()
                    } else {
                        format!("{}^{}", names[v], k)
                    }
                })
                .collect();
            let mag = c.abs();
            let body = if factors.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                factors.join("*")
            } else {
                format!("{}*{}", mag, factors.join("*"))
            };
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push(if c.is_negative() { '-' } else { '+' });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Evaluation-ready polynomial: coefficient plus sparse `(variable, exponent)`
/// factors.
#[derive(Clone, Debug)]
pub(crate) struct EvalPoly {
    pub(crate) terms: Vec<(BigInt, Vec<(usize, u32)>)>,
}

impl EvalPoly {
    fn from_int(poly: &IntPoly) -> EvalPoly {
        EvalPoly {
            terms: poly
                .terms()
                .map(|(e, c)| {
                    let factors = e
                        .iter()
                        .enumerate()
                        .filter(|(_, &k)| k > 0)
                        .map(|(v, &k)| (v, k))
                        .collect();
                    (c.clone(), factors)
                })
                .collect(),
        }
    }
}

/// Ceiling on the supported `(p, length)` pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WittLimits {
    pub max_prime: u64,
    pub max_len: usize,
    /// Bound on `p^{length-1}`, the degree of the top sum polynomial.
    pub max_degree: u64,
}

impl Default for WittLimits {
    fn default() -> Self {
        WittLimits {
            max_prime: 7,
            max_len: 4,
            max_degree: 64,
        }
    }
}

/// Sum and negation polynomials for `W_n`, `n = length`.
///
/// Variables are ordered `a_0, …, a_{n-1}, b_0, …, b_{n-1}`; the negation
/// polynomials use only the first `n`.
pub struct UniversalWittPolys {
    prime: u64,
    length: usize,
    sum_int: Vec<IntPoly>,
    neg_int: Vec<IntPoly>,
    sum_modp: Vec<IntPoly>,
    neg_modp: Vec<IntPoly>,
    pub(crate) sum_eval_int: Vec<EvalPoly>,
    pub(crate) neg_eval_int: Vec<EvalPoly>,
    pub(crate) sum_eval_modp: Vec<EvalPoly>,
    pub(crate) neg_eval_modp: Vec<EvalPoly>,
    neg_is_sign_flip: bool,
}

impl fmt::Debug for UniversalWittPolys {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UniversalWittPolys")
            .field("prime", &self.prime)
            .field("length", &self.length)
            .finish_non_exhaustive()
    }
}

impl UniversalWittPolys {
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// `S_i` over the integers.
    pub fn sum_poly(&self, i: usize) -> &IntPoly {
        &self.sum_int[i]
    }

    /// `N_i` over the integers.
    pub fn neg_poly(&self, i: usize) -> &IntPoly {
        &self.neg_int[i]
    }

    /// `S_i` with coefficients reduced mod `p`.
    pub fn sum_poly_mod_p(&self, i: usize) -> &IntPoly {
        &self.sum_modp[i]
    }

    pub fn neg_poly_mod_p(&self, i: usize) -> &IntPoly {
        &self.neg_modp[i]
    }

    /// True when `N_i = -a_i` for every `i`, which holds exactly for odd `p`.
    pub fn neg_is_sign_flip(&self) -> bool {
        self.neg_is_sign_flip
    }

    /// Names `a0, …, b0, …` in variable order.
    pub fn variable_names(&self) -> Vec<String> {
        (0..self.length)
            .map(|i| format!("a{i}"))
            .chain((0..self.length).map(|i| format!("b{i}")))
            .collect()
    }
}

type PolyCache = RwLock<HashMap<(u64, usize), Arc<UniversalWittPolys>>>;

fn cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Cached polynomials for `(p, length)` under the default limits.
pub fn derive_witt_polys(p: u64, length: usize) -> Result<Arc<UniversalWittPolys>> {
    derive_witt_polys_with(p, length, WittLimits::default())
}

pub fn derive_witt_polys_with(
    p: u64,
    length: usize,
    limits: WittLimits,
) -> Result<Arc<UniversalWittPolys>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if length == 0
        || length > limits.max_len
        || p > limits.max_prime
        || p.pow(length as u32 - 1) > limits.max_degree
    {
        return Err(Error::WittUnsupported {
            p,
            len: length,
            max_prime: limits.max_prime,
            max_len: limits.max_len,
            max_degree: limits.max_degree,
        });
    }
    if let Some(hit) = cache().read().unwrap().get(&(p, length)) {
        return Ok(hit.clone());
    }
    let polys = Arc::new(solve_ghost_equations(p, length));
    let mut w = cache().write().unwrap();
    Ok(w.entry((p, length)).or_insert(polys).clone())
}

fn solve_ghost_equations(p: u64, n: usize) -> UniversalWittPolys {
    let nv = 2 * n;
    let pb = BigInt::from(p);
    let a = |j: usize| IntPoly::var(nv, j);
    let b = |j: usize| IntPoly::var(nv, n + j);

    let mut sums: Vec<IntPoly> = Vec::with_capacity(n);
    let mut negs: Vec<IntPoly> = Vec::with_capacity(n);
    for i in 0..n {
        // p^i S_i = sum_{j<=i} p^j (a_j^{p^{i-j}} + b_j^{p^{i-j}}) - sum_{j<i} p^j S_j^{p^{i-j}}
        let mut rhs_sum = IntPoly::zero(nv);
        let mut rhs_neg = IntPoly::zero(nv);
        for j in 0..=i {
            let pj = num_traits::pow(pb.clone(), j);
            let e = p.pow((i - j) as u32);
            let aj = a(j).pow(e);
            rhs_sum = rhs_sum.add(&aj.add(&b(j).pow(e)).scale(&pj));
            rhs_neg = rhs_neg.add(&aj.scale(&-&pj));
            if j < i {
                rhs_sum = rhs_sum.add(&sums[j].pow(e).scale(&-&pj));
                rhs_neg = rhs_neg.add(&negs[j].pow(e).scale(&-&pj));
            }
        }
        let pi = num_traits::pow(pb.clone(), i);
        sums.push(
            rhs_sum
                .exact_div(&pi)
                .expect("ghost equations have integral solutions"),
        );
        negs.push(
            rhs_neg
                .exact_div(&pi)
                .expect("ghost equations have integral solutions"),
        );
    }

    let neg_is_sign_flip = negs
        .iter()
        .enumerate()
        .all(|(i, q)| *q == a(i).scale(&-BigInt::one()));
    let sum_modp: Vec<IntPoly> = sums.iter().map(|q| q.reduce_mod(p)).collect();
    let neg_modp: Vec<IntPoly> = negs.iter().map(|q| q.reduce_mod(p)).collect();
    UniversalWittPolys {
        prime: p,
        length: n,
        sum_eval_int: sums.iter().map(EvalPoly::from_int).collect(),
        neg_eval_int: negs.iter().map(EvalPoly::from_int).collect(),
        sum_eval_modp: sum_modp.iter().map(EvalPoly::from_int).collect(),
        neg_eval_modp: neg_modp.iter().map(EvalPoly::from_int).collect(),
        sum_int: sums,
        neg_int: negs,
        sum_modp,
        neg_modp,
        neg_is_sign_flip,
    }
}

/// Checks the weighted homogeneity of `S_i`: with `a_j, b_j` of weight
/// `p^j`, every monomial of `S_i` has weight `p^i`.
pub fn is_weight_homogeneous(polys: &UniversalWittPolys, i: usize) -> bool {
    let p = polys.prime;
    let n = polys.length;
    polys.sum_int[i].terms().all(|(e, _)| {
        let w: u64 = e
            .iter()
            .enumerate()
            .map(|(v, &k)| k as u64 * p.pow((v % n) as u32))
            .sum();
        w == p.pow(i as u32)
    })
}
