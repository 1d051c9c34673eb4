mod common;

use common::props;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn check(f: fn(&mut ChaCha8Rng) -> Result<(), String>, seed: u64) -> Result<(), TestCaseError> {
    f(&mut ChaCha8Rng::seed_from_u64(seed)).map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 20, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn toric_volume_is_homogeneous(seed in any::<u64>()) {
        check(props::homogeneity, seed)?;
    }

    #[test]
    fn volume_is_monotone(seed in any::<u64>()) {
        check(props::monotonicity, seed)?;
    }

    #[test]
    fn interior_volumes_are_log_convex(seed in any::<u64>()) {
        check(props::log_convexity, seed)?;
    }

    #[test]
    fn zariski_decomposition_is_orthogonal_and_label_free(seed in any::<u64>()) {
        check(props::zariski, seed)?;
    }
}
