//! Invariants on randomly generated reduced curves.

mod common;
mod support;

use logbundle::linalg::modular::{rank_audit, set_cross_check};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::{admissible, curve_checks, Counts};

fn curve(seed: u64, d: u32) -> String {
    common::random_curve_text(&mut ChaCha8Rng::seed_from_u64(seed), d)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, .. ProptestConfig::default() })]

    #[test]
    fn theory_checks_hold(seed in any::<u64>(), d in 4u32..=6) {
        let src = curve(seed, d);
        let Some((_, jd)) = admissible(&src) else { return Ok(()) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let counts = Counts { split_lines: 6, prediction_lines: 5 };
        for c in curve_checks(&jd, &mut rng, &counts) {
            prop_assert!(c.passed, "{src}: {c}");
        }
    }

    #[test]
    fn library_agrees_with_oracle(seed in any::<u64>(), d in 3u32..=5) {
        let src = curve(seed, d);
        let Some((_, jd)) = admissible(&src) else { return Ok(()) };
        let b = common::Brute::new(&src);
        prop_assert_eq!(jd.tau, b.tau());
        for k in 0..=jd.t as i64 {
            prop_assert_eq!(jd.n_dim(k), b.n_dim(k), "{} n_{}", src, k);
        }
        for k in 0..=2 * d as i64 {
            prop_assert_eq!(logbundle::syzygy::ar_dim(&jd, k), b.ar_dim(k), "{} ar_{}", src, k);
        }
    }

    #[test]
    fn rank_routes_agree(seed in any::<u64>(), d in 3u32..=5) {
        set_cross_check(true);
        let before = rank_audit();
        let src = curve(seed, d);
        if let Some((_, jd)) = admissible(&src) {
            let _ = logbundle::syzygy::SyzygyModule::new(&jd, None);
        }
        let after = rank_audit();
        prop_assert_eq!(after.disagreements, before.disagreements);
    }
}
