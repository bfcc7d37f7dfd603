use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::WittVec;

/// Ghost components `w_i = Σ_{j ≤ i} p^j x_j^{p^{i-j}}` of an integer Witt
/// vector.
pub fn ghost(wv: &WittVec<BigInt>) -> Vec<BigInt> {
    let p = BigInt::from(wv.prime());
    let pu = wv.prime();
    (0..wv.len())
        .map(|i| {
            (0..=i)
                .map(|j| {
                    let e = pu.pow((i - j) as u32) as usize;
                    num_traits::pow(p.clone(), j) * num_traits::pow(wv.coord(j).clone(), e)
                })
                .sum()
        })
        .collect()
}

/// Inverts [`ghost`]; `None` when the ghost vector is not integral.
pub fn from_ghost(p: u64, ghost: &[BigInt]) -> Option<WittVec<BigInt>> {
    let pb = BigInt::from(p);
    let mut xs: Vec<BigInt> = Vec::with_capacity(ghost.len());
    for (i, g) in ghost.iter().enumerate() {
        let mut rest = g.clone();
        for (j, x) in xs.iter().enumerate() {
            let e = p.pow((i - j) as u32) as usize;
            rest -= num_traits::pow(pb.clone(), j) * num_traits::pow(x.clone(), e);
        }
        let (q, r) = rest.div_rem(&num_traits::pow(pb.clone(), i));
        if !r.is_zero() {
            return None;
        }
        xs.push(q);
    }
    if xs.is_empty() {
        return Some(WittVec::zeros(p, 0, &BigInt::zero()));
    }
    WittVec::new(p, xs).ok()
}
