mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use swan_core::{brute_force_sw, gamma, reduce, sw_curve, sw_log, OracleSpace};

#[test]
fn curve_characters_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let space = OracleSpace::default();
    let mut mismatches = Vec::new();
    for i in 0..160 {
        let p = [2, 3][i % 2];
        let len = 1 + (i / 2) % 2;
        let chi = common::curve_char(&mut rng, p, len, -6, 3, 2);
        let fast = sw_curve(&chi).unwrap().sw;
        let slow = brute_force_sw(&chi, &space).unwrap();
        assert!(fast <= slow, "{chi:?}: {fast} > {slow}");
        if fast != slow {
            mismatches.push((chi, fast, slow));
        }
    }
    assert!(mismatches.is_empty(), "{mismatches:#?}");
}

#[test]
fn boundary_characters_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for i in 0..40 {
        let p = [2, 3][i % 2];
        let exps = [0, 1, p as u32];
        let chi = common::boundary_char(&mut rng, p, 1, 1, -6, 2, &exps, 3);
        let fast = sw_log(&chi).unwrap().sw;
        let slow = brute_force_sw(&chi, &OracleSpace::default()).unwrap();
        assert_eq!(fast, slow, "{chi:?}");
    }
    let space = OracleSpace {
        window: -3..=1,
        residue_degree: 2,
        ..OracleSpace::default()
    };
    for i in 0..20 {
        let chi = common::boundary_char(&mut rng, 2, 2, 1, -3, 1, &[0, 1], 2);
        let fast = sw_log(&chi).unwrap().sw;
        let slow = brute_force_sw(&chi, &space).unwrap();
        assert_eq!(fast, slow, "instance {i}: {chi:?}");
    }
}

#[test]
fn witness_and_monotonicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for i in 0..100 {
        let p = [2, 3, 5][i % 3];
        let len = 1 + i % 3;
        let chi = common::curve_char(&mut rng, p, len, -12, 4, 3);
        let red = reduce(chi.witt()).unwrap();
        let diff = chi.witt().sub(&red.reduced).unwrap();
        assert_eq!(diff, red.witness.apply_f_minus_one().unwrap());
        assert!(gamma(&red.reduced) <= gamma(chi.witt()));
        let r = sw_curve(&chi).unwrap();
        assert_eq!(r.sw, gamma(&red.reduced));
        assert!((0..=r.sw).find(|&m| swan_core::fil_member(&red.reduced, m)) == Some(r.sw));
    }
}
