//! Randomized algebraic laws, 200 cases each.

mod common;

use common::laws;
use proptest::prelude::*;

macro_rules! law_tests {
    ($($name:ident),* $(,)?) => {
        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]
            $(
                #[test]
                fn $name(seed in any::<u64>()) {
                    if let Err(e) = laws::$name(seed) {
                        prop_assert!(false, "seed {}: {}", seed, e);
                    }
                }
            )*
        }
    };
}

law_tests!(
    scalar_ring,
    derivatives_commute,
    evaluation_homomorphism,
    wedge_associative,
    graded_commutative,
    d_squared,
    d_leibniz,
    nabla_leibniz,
    contraction_nilpotent,
    berezin_rotation_invariant,
    phi_derivation,
    berezin_of_phi,
    pair_associative,
    cone_d_squared,
    cone_d_leibniz,
    twisted_leibniz,
    pair_contraction_nilpotent,
    berezin_base,
    berezin_total,
    rho_conjugation,
);

#[test]
fn law_table_is_complete() {
    assert_eq!(laws::ALL.len(), 20);
}
