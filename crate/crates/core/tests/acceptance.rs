//! Acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swan_core::conductor::{weighted_orders, AsPrinted, Shifted};
use swan_core::witt::ghost;
use swan_core::{
    adjust_p_coprime, b_good_vector, brute_force_sw, check_bounds, family_experiment, fil_member,
    fil_nonlog_member, gamma, select_support, sw_curve, sw_log, BoundaryLaurent, Character, Error,
    Field, MPoly, OracleSpace, SeriesW, WittVec,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn x_over_y(p: u64, b: i64) -> Character<BoundaryLaurent> {
    let f = Field::prime(p).unwrap();
    let x = BoundaryLaurent::from_mpoly(MPoly::var(&f, 1, 0), -b);
    Character::from_coords(p, vec![x]).unwrap()
}

fn nonfierce_example() -> Outcome {
    let chi = x_over_y(3, 2);
    let rep = sw_log(&chi).map_err(|e| e.to_string())?;
    ensure(rep.sw == 2 && !rep.fierce, || {
        format!("sw_log = {}, fierce = {}", rep.sw, rep.fierce)
    })?;
    let fam = family_experiment(&chi, 30).map_err(|e| e.to_string())?;
    ensure(fam.rows.len() == 30, || "missing rows".into())?;
    for r in &fam.rows {
        let full = 2 * r.e - 1;
        if full % 3 != 0 {
            ensure(r.sw == full, || {
                format!("e = {}: sw = {} != {full}", r.e, r.sw)
            })?;
        } else {
            ensure(r.sw < full, || {
                format!("e = {}: sw = {} not < {full}", r.e, r.sw)
            })?;
        }
    }
    let (num, den) = fam.summary.sup_ratio.ok_or("no coprime rows")?;
    // 2 - 1/29 <= num/den <= 2
    ensure(num * 29 >= 57 * den && num <= 2 * den, || {
        format!("sup = {num}/{den}")
    })?;
    Ok(format!("sw_log = 2, 30 rows, sup ratio {num}/{den}"))
}

fn fierce_example() -> Outcome {
    let chi = x_over_y(3, 3);
    let rep = sw_log(&chi).map_err(|e| e.to_string())?;
    ensure(rep.sw == 3 && rep.fierce, || {
        format!("sw_log = {}, fierce = {}", rep.sw, rep.fierce)
    })?;
    let fam = family_experiment(&chi, 30).map_err(|e| e.to_string())?;
    ensure(fam.rows.len() == 30, || "missing rows".into())?;
    for r in &fam.rows {
        ensure(r.sw == 3 * r.e - 1, || {
            format!("e = {}: sw = {}", r.e, r.sw)
        })?;
        ensure(r.ratio_num * r.e == (3 * r.e - 1) * r.ratio_den, || {
            format!("e = {}: ratio {}/{}", r.e, r.ratio_num, r.ratio_den)
        })?;
    }
    Ok("sw_log = 3, fierce, sw_e = 3e-1 for e = 1..30".into())
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacc3);
    let mut done = 0;
    let mut skipped = 0;
    let mut wild = 0;
    let mut check = |fast: u64, slow: swan_core::Result<u64>, what: String| -> Result<(), String> {
        match slow {
            Ok(slow) => {
                done += 1;
                if fast > 0 {
                    wild += 1;
                }
                ensure(fast == slow, || {
                    format!("{what}: reduction {fast}, oracle {slow}")
                })
            }
            Err(Error::SearchSpaceExceeded { .. }) => {
                skipped += 1;
                Ok(())
            }
            Err(e) => Err(e.to_string()),
        }
    };
    let space = OracleSpace::default();
    for i in 0..120 {
        let p = [2, 3][i % 2];
        let len = 1 + (i / 2) % 2;
        let chi = common::curve_char(&mut rng, p, len, -6, 3, 2);
        let fast = sw_curve(&chi).map_err(|e| e.to_string())?.sw;
        check(fast, brute_force_sw(&chi, &space), format!("{chi:?}"))?;
    }
    for i in 0..30 {
        let p = [2, 3][i % 2];
        let chi = common::boundary_char(&mut rng, p, 1, 1, -6, 2, &[0, 1, p as u32], 3);
        let fast = sw_log(&chi).map_err(|e| e.to_string())?.sw;
        check(fast, brute_force_sw(&chi, &space), format!("{chi:?}"))?;
    }
    let narrow = OracleSpace {
        window: -3..=1,
        residue_degree: 2,
        ..OracleSpace::default()
    };
    for _ in 0..15 {
        let chi = common::boundary_char(&mut rng, 2, 2, 1, -3, 1, &[0, 1], 2);
        let fast = sw_log(&chi).map_err(|e| e.to_string())?.sw;
        check(fast, brute_force_sw(&chi, &narrow), format!("{chi:?}"))?;
    }
    ensure(done >= 100, || format!("only {done} completed searches"))?;
    Ok(format!(
        "{done} instances agree ({wild} wild), {skipped} over the search cap"
    ))
}

fn int_vec(rng: &mut ChaCha8Rng, p: u64, n: usize) -> WittVec<BigInt> {
    WittVec::new(
        p,
        (0..n)
            .map(|_| BigInt::from(rng.gen_range(-50i64..=50)))
            .collect(),
    )
    .unwrap()
}

fn witt_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacc4);
    let mut checks = 0;
    let e = |e: Error| e.to_string();
    for p in [2u64, 3, 5] {
        for n in 1..=3 {
            for _ in 0..200 {
                let a = int_vec(&mut rng, p, n);
                let b = int_vec(&mut rng, p, n);
                let lhs = ghost(&a.add(&b).map_err(e)?);
                let rhs: Vec<BigInt> = ghost(&a)
                    .iter()
                    .zip(ghost(&b))
                    .map(|(x, y)| x + y)
                    .collect();
                ensure(lhs == rhs, || {
                    format!("ghost additivity p={p} n={n}: {a:?} {b:?}")
                })?;
                checks += 1;
            }
            for _ in 0..25 {
                let a = common::curve_vec(&mut rng, p, n, -3, 3, 2);
                let b = common::curve_vec(&mut rng, p, n, -3, 3, 2);
                let c = common::curve_vec(&mut rng, p, n, -3, 3, 2);
                let assoc = a.add(&b).map_err(e)?.add(&c).map_err(e)?
                    == a.add(&b.add(&c).map_err(e)?).map_err(e)?;
                let comm = a.add(&b).map_err(e)? == b.add(&a).map_err(e)?;
                let inv = a.add(&a.neg().map_err(e)?).map_err(e)?.is_zero();
                ensure(assoc && comm && inv, || {
                    format!("group laws p={p} n={n}: {a:?} {b:?} {c:?}")
                })?;
                checks += 3;
                if p.pow(n as u32) > 64 {
                    continue;
                }
                let fv = a.verschiebung().frobenius();
                let vf = a.frobenius().verschiebung();
                let mut ext = a.coords().to_vec();
                ext.push(b.coord(0).clone());
                let px = WittVec::new(p, ext).unwrap().mul_p().map_err(e)?;
                ensure(fv == vf && vf == px, || {
                    format!("FV = VF = p fails p={p} n={n}: {a:?}")
                })?;
                let l = a.apply_f_minus_one().map_err(e)?.verschiebung();
                let r = a.verschiebung().apply_f_minus_one().map_err(e)?;
                ensure(l == r, || {
                    format!("(F-1)V = V(F-1) fails p={p} n={n}: {a:?}")
                })?;
                checks += 2;
            }
        }
    }
    Ok(format!("{checks} identities exact"))
}

fn last_coordinate_dominance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacc5);
    let mut pairs = 0;
    let mut draws = 0;
    while pairs < 200 {
        draws += 1;
        if draws > 100_000 {
            return Err(format!("only {pairs} hypothesis-satisfying pairs drawn"));
        }
        let p = [2, 3][draws % 2];
        let n = 2 + draws % 2;
        let x = common::curve_vec(&mut rng, p, n, -8, 3, 2);
        let Some(top) = x.coord(n - 1).valuation().filter(|&v| v < 0) else {
            continue;
        };
        let w = weighted_orders(&x);
        if w[..n - 1].iter().flatten().any(|&o| o >= -(top as i128)) {
            continue;
        }
        let mut ys = common::curve_vec(&mut rng, p, n, -4, 3, 2).into_coords();
        ys[n - 1] = SeriesW::zero(&Field::prime(p).unwrap());
        let y = WittVec::new(p, ys).unwrap();
        let gx = gamma(&x);
        ensure(gx == (-top) as u64, || {
            format!("Γ(x) = {gx} but -v(x_top) = {}", -top)
        })?;
        let moved = x
            .sub(&y.apply_f_minus_one().map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure(gamma(&moved) >= gx, || {
            format!("x = {x:?}, y = {y:?}: Γ drops to {}", gamma(&moved))
        })?;
        pairs += 1;
    }
    Ok(format!("{pairs} pairs, Γ never drops"))
}

fn good_vectors() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacc6);
    let mut adjusted = 0;
    for i in 0..100 {
        let p = [2u64, 3, 5][i % 3];
        let b = common::reduced_mpoly(&mut rng, p, 1 + i % 4, 5, 5);
        let gv = b_good_vector(&b, &select_support(&b).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        for cand in [
            gv.clone(),
            adjust_p_coprime(&gv, &b, p).map_err(|e| e.to_string())?,
        ] {
            let g = cand.minimal_monomial(b.nvars());
            let psi_g = cand.weighted_degree();
            ensure(b.coeff(&g) != 0, || format!("{b:?}: g is not a monomial"))?;
            for (h, _) in b.terms() {
                let survives = (0..h.len()).all(|v| h[v] == 0 || cand.support().contains(&v));
                if !survives || *h == g {
                    continue;
                }
                let psi_h: u64 = cand
                    .support()
                    .iter()
                    .zip(cand.weights())
                    .map(|(&v, &m)| m * h[v] as u64)
                    .sum();
                ensure(psi_h > psi_g, || {
                    format!("{b:?} {cand:?}: Ψ({h:?}) = {psi_h} <= {psi_g}")
                })?;
            }
        }
        let adj = adjust_p_coprime(&gv, &b, p).map_err(|e| e.to_string())?;
        ensure(adj.weighted_degree() % p != 0, || {
            format!("{b:?}: Ψ divisible by {p}")
        })?;
        if adj != gv {
            adjusted += 1;
        }
    }
    Ok(format!(
        "100 certificates, {adjusted} adjusted vectors re-certified"
    ))
}

fn bound_checks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacc7);
    let mut witnessed = 0;
    for i in 0..50 {
        let p = [2u64, 3][i % 2];
        let chi = common::boundary_char(&mut rng, p, 1 + (i / 2) % 2, 2, -5, 1, &[0, 1, 2, 3], 3);
        let sw = sw_log(&chi).map_err(|e| e.to_string())?.sw;
        let d = rng.gen_range(1..=sw + 2);
        let v = check_bounds(&chi, d, 50, i as u64).map_err(|e| e.to_string())?;
        ensure(v.log_violations.is_empty(), || {
            format!("{chi:?}: {:?}", v.log_violations)
        })?;
        ensure(v.bound_violations.is_empty(), || {
            format!("{chi:?} d = {d}: {:?}", v.bound_violations)
        })?;
        if sw > d {
            let w = v
                .witness
                .as_ref()
                .ok_or_else(|| format!("{chi:?} d = {d}: no violating curve"))?;
            ensure(w.sw > w.e * d, || format!("bad witness {w:?}"))?;
            witnessed += 1;
        }
        ensure(v.ok, || format!("{v:?}"))?;
    }
    Ok(format!(
        "50 characters x 50 curves, {witnessed} violations witnessed"
    ))
}

fn nonlog_filtration() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacc8);
    let mut as_printed_deviations = 0;
    for i in 0..200 {
        let p = [2u64, 3][i % 2];
        let n = 1 + i % 3;
        let x = common::curve_vec(&mut rng, p, n, -9, 2, 3);
        let m = rng.gen_range(1..=gamma(&x) + 2);
        let e = |e: Error| e.to_string();
        let nl = |v: &dyn swan_core::NonLogVariant, m| fil_nonlog_member(&x, m, v).map_err(e);
        let (a, b, c) = (nl(&Shifted, m)?, fil_member(&x, m), nl(&Shifted, m + 1)?);
        ensure(!a || b, || format!("{x:?}: in fil'_{m} but not fil_{m}"))?;
        ensure(!b || c, || {
            format!("{x:?}: in fil_{m} but not fil'_{}", m + 1)
        })?;
        if m % p != 0 {
            ensure(a == fil_member(&x, m - 1), || {
                format!("{x:?}: p ∤ {m} identity fails")
            })?;
        }
        let pa = nl(&AsPrinted, m)?;
        let pc = nl(&AsPrinted, m + 1)?;
        let ok = (!pa || b) && (!b || pc) && (m % p == 0 || pa == fil_member(&x, m - 1));
        if !ok {
            as_printed_deviations += 1;
        }
    }
    Ok(format!(
        "200 probes; as-printed variant deviates on {as_printed_deviations} (recorded only)"
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("non-fierce surface example", nonfierce_example),
        ("fierce surface example", fierce_example),
        ("oracle equivalence", oracle_equivalence),
        ("Witt algebra suite", witt_algebra),
        (
            "top-coordinate dominance sampling",
            last_coordinate_dominance,
        ),
        ("good vector suite", good_vectors),
        ("bound checks", bound_checks),
        ("non-log filtration", nonlog_filtration),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
