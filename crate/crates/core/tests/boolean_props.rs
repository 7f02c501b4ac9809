use cube_clifford::boolean::{evaluate_multilinear, BooleanFunction};
use proptest::prelude::*;

fn function() -> impl Strategy<Value = BooleanFunction> {
    (1u32..=6).prop_flat_map(|n| {
        any::<u64>().prop_map(move |w| {
            let word = if n < 6 {
                w & ((1u64 << (1u32 << n)) - 1)
            } else {
                w
            };
            BooleanFunction::from_word(n, word).unwrap()
        })
    })
}

fn reconstructs(f: &BooleanFunction) -> bool {
    let values = evaluate_multilinear(&f.multilinear_coefficients());
    values
        .iter()
        .enumerate()
        .all(|(v, &x)| x == f.eval(v as u32) as i64)
}

#[test]
fn round_trip_exhaustive_up_to_3() {
    for n in 1..=3u32 {
        for word in 0..1u64 << (1u32 << n) {
            assert!(reconstructs(&BooleanFunction::from_word(n, word).unwrap()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn round_trip_random(f in function()) {
        prop_assert!(reconstructs(&f));
    }

    #[test]
    fn bounded_by_arity_and_zero_iff_constant(f in function()) {
        let s = f.sensitivity();
        let deg = f.polynomial_degree();
        prop_assert!(s <= f.arity() && deg <= f.arity());
        prop_assert_eq!(s == 0, f.is_constant());
        prop_assert_eq!(deg == 0, f.is_constant());
        prop_assert!(s * s >= deg);
    }

    #[test]
    fn permuting_inputs_preserves_measures(
        f in function(),
        perm in Just((0..6u32).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let n = f.arity();
        let perm: Vec<u32> = perm.into_iter().filter(|&p| p < n).collect();
        let g = f.permute_inputs(&perm).unwrap();
        prop_assert_eq!(g.sensitivity(), f.sensitivity());
        prop_assert_eq!(g.polynomial_degree(), f.polynomial_degree());
    }
}
