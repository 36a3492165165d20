use anchain_core::{
    assemble_system, brute_force_membership, build_resolution, closed_form_verdict,
    decide_membership, recurrence_trace, CurveLabel, FiberType, IntegerMatrix, ResolutionConfig,
};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn configs(max_n: i64) -> impl Iterator<Item = ResolutionConfig> {
    FiberType::ALL.into_iter().flat_map(move |fiber| {
        (1..=max_n).flat_map(move |n| {
            (1..=n).map(move |t| ResolutionConfig::new(n, t, fiber).unwrap())
        })
    })
}

#[test]
fn pairing_is_symmetric_where_defined() {
    for config in configs(7) {
        let g = build_resolution(config);
        for &a in g.curves() {
            for &b in g.curves() {
                match (g.intersection_number(a, b), g.intersection_number(b, a)) {
                    (Ok(x), Ok(y)) => assert_eq!(x, y),
                    (Err(_), Err(_)) => assert_eq!(a, b),
                    other => panic!("asymmetric definedness for {a},{b}: {other:?}"),
                }
            }
        }
    }
}

#[test]
fn chain_block_is_negated_cartan() {
    for n in 1..=8i64 {
        let g = build_resolution(ResolutionConfig::new(n, 1, FiberType::Irreducible).unwrap());
        let chain: Vec<CurveLabel> = g.exceptional_curves().collect();
        let mut entries = Vec::new();
        for &a in &chain {
            for &b in &chain {
                entries.push(g.intersection_number(a, b).unwrap());
            }
        }
        let block = IntegerMatrix::from_i64(n as usize, n as usize, &entries).unwrap();
        let sign = if n % 2 == 0 { 1 } else { -1 };
        assert_eq!(block.determinant().unwrap(), BigInt::from(sign * (n + 1)));
    }
}

#[test]
fn incidence_totals() {
    for config in configs(7) {
        let g = build_resolution(config);
        let chain: Vec<CurveLabel> = g.exceptional_curves().collect();
        let total = |c: CurveLabel| -> i64 {
            chain.iter().map(|&e| g.intersection_number(c, e).unwrap()).sum()
        };
        match config.fiber() {
            FiberType::Irreducible => assert_eq!(total(CurveLabel::Ftilde), 2),
            FiberType::Reducible => {
                assert_eq!(total(CurveLabel::F1), 1);
                assert_eq!(total(CurveLabel::F2), 1);
            }
        }
        let others = |c: CurveLabel| -> Vec<(CurveLabel, i64)> {
            g.curves()
                .iter()
                .filter(|&&o| o != c)
                .map(|&o| (o, g.intersection_number(c, o).unwrap()))
                .filter(|&(_, v)| v != 0)
                .collect()
        };
        assert_eq!(others(CurveLabel::Dtilde), vec![(CurveLabel::E(config.t()), 1)]);
        let c_hits = others(CurveLabel::Ctilde);
        assert_eq!(c_hits.len(), 1);
        assert!(c_hits[0].0.is_fiber_component() && c_hits[0].1 == 1);
    }
}

#[test]
fn necessity_directions_hold() {
    for config in configs(6) {
        let system = assemble_system(&build_resolution(config));
        let (n, t) = (u64::from(config.n()), u64::from(config.t()));
        for m in 2..=10u64 {
            let v = decide_membership(&system, m).unwrap();
            if v.solvable {
                match config.fiber() {
                    FiberType::Reducible => assert_eq!(t % m, 0, "{config} m={m}"),
                    FiberType::Irreducible => assert_eq!(t % (n + 1).gcd(&m), 0, "{config} m={m}"),
                }
            }
        }
    }
}

#[test]
fn solvable_passes_to_divisors() {
    for config in configs(6) {
        let system = assemble_system(&build_resolution(config));
        for m in 2..=12u64 {
            let v = decide_membership(&system, m).unwrap();
            let Some(w) = v.witness else { continue };
            for d in (1..=m).filter(|d| m % d == 0) {
                let reduced: Vec<BigInt> = w.iter().map(|x| x.mod_floor(&BigInt::from(d))).collect();
                assert!(system.satisfied_by(&reduced, d));
                assert!(decide_membership(&system, d).unwrap().solvable);
            }
        }
    }
}

#[test]
fn oracle_witness_is_lexicographically_smallest() {
    for config in configs(3) {
        let system = assemble_system(&build_resolution(config));
        for m in 2..=5u64 {
            let v = brute_force_membership(&system, m, u64::MAX).unwrap().unwrap();
            let Some(w) = v.witness else { continue };
            let w: Vec<u64> = w.iter().map(|x| u64::try_from(x).unwrap()).collect();
            // Re-enumerate everything below w in lexicographic order.
            let cols = w.len();
            let rank = w.iter().fold(0u64, |acc, &d| acc * m + d);
            for code in 0..rank {
                let mut x = vec![0u64; cols];
                let mut rest = code;
                for slot in x.iter_mut().rev() {
                    *slot = rest % m;
                    rest /= m;
                }
                let xb: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
                assert!(!system.satisfied_by(&xb, m), "{config} m={m}: {x:?} precedes {w:?}");
            }
        }
    }
}

proptest! {
    #[test]
    fn routes_agree_on_random_configs(
        n in 1i64..=9,
        t_seed in 0i64..1000,
        m in 2u64..=40,
        reducible in any::<bool>(),
    ) {
        let t = t_seed % n + 1;
        let fiber = if reducible { FiberType::Reducible } else { FiberType::Irreducible };
        let config = ResolutionConfig::new(n, t, fiber).unwrap();
        let system = assemble_system(&build_resolution(config));
        let solver = decide_membership(&system, m).unwrap();
        let closed = closed_form_verdict(config, m).unwrap();
        let trace = recurrence_trace(config, m).unwrap();
        prop_assert_eq!(solver.solvable, closed.solvable);
        prop_assert_eq!(trace.solvable(), closed.solvable);
        for w in [&solver.witness, &closed.witness, &trace.witness].into_iter().flatten() {
            prop_assert!(system.satisfied_by(w, m));
        }
        for c in [&solver.certificate, &closed.certificate].into_iter().flatten() {
            prop_assert!(c.is_valid());
        }
    }
}
