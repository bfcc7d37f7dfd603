mod common;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swan_core::witt::{derive_witt_polys, from_ghost, ghost};
use swan_core::{Field, SeriesW, WittVec};

fn int_vec(rng: &mut ChaCha8Rng, p: u64, n: usize) -> WittVec<BigInt> {
    WittVec::new(
        p,
        (0..n)
            .map(|_| BigInt::from(rng.gen_range(-40i64..=40)))
            .collect(),
    )
    .unwrap()
}

fn add_ghost(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[test]
fn ghost_map_is_additive() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for p in [2, 3, 5] {
        for n in 1..=3 {
            for _ in 0..200 {
                let a = int_vec(&mut rng, p, n);
                let b = int_vec(&mut rng, p, n);
                let s = a.add(&b).unwrap();
                assert_eq!(ghost(&s), add_ghost(&ghost(&a), &ghost(&b)));
                let neg = a.neg().unwrap();
                assert!(ghost(&neg).iter().zip(ghost(&a)).all(|(x, y)| *x == -y));
                assert_eq!(from_ghost(p, &ghost(&s)).unwrap(), s);
            }
        }
    }
}

#[test]
fn group_laws_in_characteristic_p() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for p in [2, 3, 5] {
        for n in 1..=3 {
            for _ in 0..40 {
                let a = common::curve_vec(&mut rng, p, n, -4, 4, 3);
                let b = common::curve_vec(&mut rng, p, n, -4, 4, 3);
                let c = common::curve_vec(&mut rng, p, n, -4, 4, 3);
                let ab_c = a.add(&b).unwrap().add(&c).unwrap();
                let a_bc = a.add(&b.add(&c).unwrap()).unwrap();
                assert_eq!(ab_c, a_bc);
                assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
                assert!(a.add(&a.neg().unwrap()).unwrap().is_zero());
                assert_eq!(a.sub(&b).unwrap().add(&b).unwrap(), a);
            }
        }
    }
}

#[test]
fn frobenius_and_verschiebung() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for p in [2, 3, 5] {
        let f = Field::prime(p).unwrap();
        // V lands in length n + 1, which must stay within the supported range.
        let max_n = if p == 5 { 2 } else { 3 };
        for n in 1..=max_n {
            for _ in 0..40 {
                let a = common::curve_vec(&mut rng, p, n, -4, 4, 3);
                let fv = a.verschiebung().frobenius();
                let vf = a.frobenius().verschiebung();
                assert_eq!(fv, vf);
                // p · x for any x extending a by one coordinate
                let mut ext = a.coords().to_vec();
                ext.push(common::series(&mut rng, &f, -4, 4, 2));
                let px = WittVec::new(p, ext).unwrap().mul_p().unwrap();
                assert_eq!(px, fv);
                let lhs = a.apply_f_minus_one().unwrap().verschiebung();
                let rhs = a.verschiebung().apply_f_minus_one().unwrap();
                assert_eq!(lhs, rhs);
                // F is additive in characteristic p
                let b = common::curve_vec(&mut rng, p, n, -4, 4, 3);
                assert_eq!(
                    a.add(&b).unwrap().frobenius(),
                    a.frobenius().add(&b.frobenius()).unwrap()
                );
            }
        }
        let zero = SeriesW::zero(&f);
        assert!(WittVec::zeros(p, 2, &zero)
            .apply_f_minus_one()
            .unwrap()
            .is_zero());
    }
}

#[test]
fn universal_polynomials_render() {
    let w = derive_witt_polys(2, 2).unwrap();
    let names = w.variable_names();
    assert_eq!(w.sum_poly_mod_p(1).render(&names), "a1+b1+a0*b0");
    assert!(derive_witt_polys(11, 2).is_err());
}
