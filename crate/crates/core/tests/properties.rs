mod support;

macro_rules! property_tests {
    ($($name:ident),* $(,)?) => {
        $(
            #[test]
            fn $name() {
                if let Err(e) = support::$name() {
                    panic!("{e}");
                }
            }
        )*
    };
}

property_tests!(
    jacobi_multiplicative,
    jacobi_euler_criterion,
    reduce_mod_homomorphism,
    valuation_laws,
    polynomial_ring_laws,
    big_binomial_symmetry,
    sum_of_squares_pointwise,
    qlc_self_triple,
    qlc_scan_chunking,
    u_rewrite_round_trip,
    rep_normalization_symmetry,
    expr_display_round_trip,
    interval_soundness,
    pi_nested,
    sato_partial_sums_exact,
    tail_bound_shrinks,
);

#[test]
fn registry_covers_every_property() {
    assert_eq!(support::all().len(), 16);
}
