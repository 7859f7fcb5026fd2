mod common;

use proptest::prelude::*;

use common::*;

proptest! {
    #[test]
    fn chordal_metric_axioms(a in magnitude(), b in magnitude()) {
        chordal_axioms(a, b)?;
    }

    #[test]
    fn chordal_reciprocal_form(ea in -8.0f64..8.0, eb in -8.0f64..8.0) {
        chordal_forms_agree(10f64.powf(ea), 10f64.powf(eb))?;
    }

    #[test]
    fn quadruples_regroup_exactly(
        roots in prop::collection::vec(1e-4f64..1e4, 1..8),
        duplicate in 0usize..8,
        seed in any::<u64>(),
    ) {
        grouping_is_exact(roots, duplicate, seed)?;
    }

    #[test]
    fn haar_unitary_is_unitary(n in 1usize..24, seed in any::<u64>()) {
        haar_is_unitary(n, seed)?;
    }

    #[test]
    fn sigma_grid_is_reciprocal_symmetric(n in 2usize..40, log_kappa in 0.0f64..14.0) {
        sigma_grid_symmetric(n, log_kappa)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn partition_identities_hold(
        dims in (1usize..7, 1usize..7, 1usize..7, 1usize..7),
        ranks in (0usize..7, 0usize..7, 0usize..7),
        seed in any::<u64>(),
    ) {
        partition_identities(dims, ranks, seed)?;
    }
}
