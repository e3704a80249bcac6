mod common;

use common::{exp_cdf, ks_statistic};
use proptest::prelude::*;
use tas_secrecy::{
    cdf_exponential, cdf_max_order, cdf_min_order, draw_realization, instantaneous_cs,
    instantaneous_snrs, select_btas, select_etas, select_otas, select_random, RngStream, Scenario,
};

const KS_LIMIT: f64 = 0.0062;
const N: usize = 100_000;

#[test]
fn cdfs_are_monotone_and_bounded() {
    for beta in [0.1, 1.0, 10.0, 1000.0] {
        for m in [1, 2, 4, 8] {
            let mut prev = [0.0f64; 3];
            for i in 0..=5000 {
                let x = i as f64 * beta / 250.0;
                let cur = [
                    cdf_exponential(x, beta).unwrap(),
                    cdf_max_order(x, beta, m).unwrap(),
                    cdf_min_order(x, beta, m).unwrap(),
                ];
                for (c, p) in cur.iter().zip(prev) {
                    assert!((0.0..=1.0).contains(c), "x = {x}: {c}");
                    // 1 is only reached once e^(-x/β) drops below half an ulp.
                    if x <= 4.0 * beta {
                        assert!(*c < 1.0);
                    }
                    assert!(*c >= p);
                }
                prev = cur;
            }
        }
    }
}

proptest! {
    #[test]
    fn stochastic_ordering(x in 1e-6f64..1e3, beta in 1e-2f64..1e2, m in 2usize..16) {
        let max = cdf_max_order(x, beta, m).unwrap();
        let single = cdf_exponential(x, beta).unwrap();
        let min = cdf_min_order(x, beta, m).unwrap();
        prop_assert!(max <= single && single <= min);
    }
}

#[test]
fn selected_gains_follow_order_statistics() {
    let m = 4;
    let s = Scenario::new(1.0, 1.0, m).unwrap();
    let mut rng = RngStream::new(7, 0);
    let mut max_bob = Vec::with_capacity(N);
    let mut min_eve = Vec::with_capacity(N);
    let mut eve_at_btas = Vec::with_capacity(N);
    let mut bob_at_etas = Vec::with_capacity(N);
    for _ in 0..N {
        let r = draw_realization(&s, &mut rng);
        let b = select_btas(&r).antenna;
        let e = select_etas(&r).antenna;
        max_bob.push(r.bob_gains()[b]);
        eve_at_btas.push(r.eve_gains()[b]);
        min_eve.push(r.eve_gains()[e]);
        bob_at_etas.push(r.bob_gains()[e]);
    }
    let d = ks_statistic(max_bob, |x| cdf_max_order(x, 1.0, m).unwrap());
    assert!(d < KS_LIMIT, "max order: D = {d}");
    let d = ks_statistic(min_eve, |x| cdf_min_order(x, 1.0, m).unwrap());
    assert!(d < KS_LIMIT, "min order: D = {d}");
    // The link not used for selection keeps its unit-mean exponential law.
    let d = ks_statistic(eve_at_btas, |x| exp_cdf(x, 1.0));
    assert!(d < KS_LIMIT, "eve under B-TAS: D = {d}");
    let d = ks_statistic(bob_at_etas, |x| exp_cdf(x, 1.0));
    assert!(d < KS_LIMIT, "bob under E-TAS: D = {d}");
}

#[test]
fn otas_is_pointwise_optimal() {
    for (gb, ge, m) in [
        (10.0, 10.0, 8),
        (1.0, 100.0, 4),
        (1000.0, 0.1, 2),
        (3.0, 3.0, 16),
    ] {
        let s = Scenario::new(gb, ge, m).unwrap();
        let mut rng = RngStream::new(5, m as u64);
        for _ in 0..20_000 {
            let r = draw_realization(&s, &mut rng);
            let cs = |k| {
                let (b, e) = instantaneous_snrs(&s, &r, k).unwrap();
                instantaneous_cs(b, e).unwrap()
            };
            let best = cs(select_otas(&s, &r).antenna);
            for k in [
                select_btas(&r).antenna,
                select_etas(&r).antenna,
                select_random(&s, &mut rng).antenna,
            ] {
                assert!(best >= cs(k));
            }
            // and against every antenna
            assert!((0..m).all(|k| best >= cs(k)));
        }
    }
}

#[test]
fn single_antenna_schemes_agree() {
    let s = Scenario::new(5.0, 2.0, 1).unwrap();
    let mut rng = RngStream::new(17, 0);
    for _ in 0..10_000 {
        let r = draw_realization(&s, &mut rng);
        assert_eq!(select_otas(&s, &r).antenna, 0);
        assert_eq!(select_btas(&r).antenna, 0);
        assert_eq!(select_etas(&r).antenna, 0);
        assert_eq!(select_random(&s, &mut rng).antenna, 0);
    }
}
