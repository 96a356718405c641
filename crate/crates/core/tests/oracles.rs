mod common;

use common::{expand, oracle_gamma, random_t, raw_pd, CORPUS};
use gimel_core::chain::GradedFreeComplex;
use gimel_core::cube::{compute_pd_report, parse_pd, simplified_sl2};
use gimel_core::filtration::{compute_report, sn_summand, ScalarComplex};
use gimel_core::knots::{pretzel_2_m3_7, s3_m9_7_m6, s3_p7_m5_4};
use gimel_core::pl::PiecewiseLinear;
use gimel_core::poly::{rat, ratio, Poly, Potential, Q, RingCtx};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Built-in equivariant complexes whose class the engine derives itself.
fn fixtures() -> Vec<(String, GradedFreeComplex)> {
    let mut out: Vec<(String, GradedFreeComplex)> =
        (3..=8).map(|n| (format!("pretzel n={n}"), pretzel_2_m3_7(n).unwrap())).collect();
    let sum = s3_p7_m5_4().unwrap().tensor(&s3_m9_7_m6().unwrap()).unwrap();
    out.push(("sl3 sum dual".into(), sum.dual()));
    out.push(("sl3 sum".into(), sum));
    for n in 2..=6 {
        out.push((format!("unknot n={n}"), GradedFreeComplex::trivial(RingCtx::equivariant(n).unwrap())));
    }
    out
}

/// The expanded S_n summand and the engine's class vector.
fn engine_problem(c: &GradedFreeComplex) -> (ScalarComplex, Vec<Q>) {
    let s = sn_summand(c).evaluate(&Potential::standard(c.n())).unwrap();
    let sc = ScalarComplex::expand(&s).unwrap();
    let psi = sc.gornik_class_fixture().unwrap();
    (sc, psi)
}

#[test]
fn sweep_agrees_with_pointwise_gamma() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, c) in fixtures() {
        let (sc, psi) = engine_problem(&c);
        let sweep = sc.gamma_sweep(&psi).unwrap();
        for _ in 0..50 {
            let t = random_t(&mut rng);
            assert_eq!(sweep.eval(&t), sc.gamma_at(&psi, &t), "{name} at t = {t}");
        }
    }
}

#[test]
fn engine_gamma_agrees_with_rank_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, c) in fixtures() {
        let rep = compute_report(&c).unwrap();
        let (sc, psi) = engine_problem(&c);
        let e = common::Expanded {
            tags: sc.basis(0).iter().map(|m| (m.j(), m.k())).collect(),
            d_minus: sc.d_minus().clone(),
            psi,
        };
        let mut ts = vec![rat(0), rat(1), ratio(1, 2), ratio(1, 3)];
        ts.extend((0..8).map(|_| random_t(&mut rng)));
        for t in ts {
            assert_eq!(rep.gamma.eval(&t), oracle_gamma(&e, &t), "{name} at t = {t}");
        }
    }
}

#[test]
fn pd_pipeline_agrees_with_raw_cube() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for (name, pd) in CORPUS {
        let rep = compute_pd_report(&parse_pd(pd).unwrap()).unwrap();
        let raw = raw_pd(pd);
        assert_eq!(rep.u, oracle_gamma(&raw, &rat(1)), "{name}: u");
        for _ in 0..5 {
            let t = random_t(&mut rng);
            assert_eq!(rep.gamma.eval(&t), oracle_gamma(&raw, &t), "{name} at t = {t}");
        }
    }
}

#[test]
fn tracked_class_agrees_with_raw_cube() {
    // The simplified complex with its transported class describes the same
    // filtered problem as the raw cube.
    let pot = Potential::standard(2);
    for (name, pd) in CORPUS {
        let (c, class) = simplified_sl2(&parse_pd(pd).unwrap()).unwrap();
        let spec = c.evaluate(&pot).unwrap();
        let class: Vec<Poly> = class.iter().map(|p| c.ctx().evaluate(p, &pot).unwrap()).collect();
        let small = expand(&spec, &class);
        let raw = raw_pd(pd);
        for t in [rat(0), ratio(1, 4), ratio(1, 2), ratio(3, 4), rat(1)] {
            assert_eq!(oracle_gamma(&small, &t), oracle_gamma(&raw, &t), "{name} at t = {t}");
        }
    }
}

#[test]
fn pretzel_closed_form() {
    for n in 3..=8usize {
        let rep = compute_report(&pretzel_2_m3_7(n).unwrap()).unwrap();
        let nn = n as i64;
        let expect = PiecewiseLinear::new(
            vec![rat(0), ratio(1, 2), rat(1)],
            vec![rat(0), ratio(-nn, 2 * (nn - 1)), ratio(-nn - 1, nn - 1)],
        )
        .unwrap();
        assert_eq!(rep.gimel, expect, "n = {n}");
        let pieces = rep.gimel.pieces();
        assert_eq!(pieces[0].2, ratio(-nn, nn - 1));
        assert_eq!((pieces[1].2.clone(), pieces[1].3.clone()), (ratio(-nn - 2, nn - 1), ratio(1, nn - 1)));
    }
}

#[test]
fn identities_and_root_invariant() {
    let mut reports: Vec<_> = fixtures().iter().map(|(_, c)| compute_report(c).unwrap()).collect();
    reports.extend(CORPUS.iter().map(|(_, pd)| compute_pd_report(&parse_pd(pd).unwrap()).unwrap()));
    for rep in &reports {
        let n = rat(rep.n as i64);
        assert_eq!(rep.gamma.value_at_one(), rep.u);
        assert_eq!(rep.gamma.value_at_zero(), rat(1) - &n);
        assert_eq!(rep.gimel.value_at_zero(), rat(0));
        let s = (&rep.u - &n + rat(1)) / (rat(2) * (&n - rat(1)));
        assert_eq!(rep.gimel.value_at_one(), s);
        assert_eq!(rep.s_invariant, s);
    }
    for (name, c) in fixtures() {
        let (sc, _) = engine_problem(&c);
        assert_eq!(sc.s_general(&rat(1)).unwrap(), compute_report(&c).unwrap().s_invariant, "{name}");
    }
}
