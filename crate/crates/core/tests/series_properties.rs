use jparity::gf2::Gf2Bits;
use jparity::{LaurentSeries, Ring};
use num_bigint::BigInt;
use proptest::prelude::*;

fn int_series() -> impl Strategy<Value = LaurentSeries> {
    (-3i64..4, prop::collection::vec(-50i64..50, 1..40))
        .prop_map(|(val, c)| LaurentSeries::from_ints(val, c))
}

/// Integer series whose leading coefficient is ±1, so it is invertible over
/// both rings.
fn unit_series() -> impl Strategy<Value = LaurentSeries> {
    (
        -3i64..4,
        prop::bool::ANY,
        prop::collection::vec(-50i64..50, 0..40),
    )
        .prop_map(|(val, neg, rest)| {
            let lead = if neg { -1 } else { 1 };
            LaurentSeries::from_ints(val, std::iter::once(lead).chain(rest))
        })
}

fn gf2_series() -> impl Strategy<Value = LaurentSeries> {
    (-3i64..4, prop::collection::vec(prop::bool::ANY, 1..300))
        .prop_map(|(val, bits)| LaurentSeries::from_bits(val, Gf2Bits::from_bools(bits)))
}

proptest! {
    #[test]
    fn addition_is_commutative_and_associative(a in int_series(), b in int_series(), c in int_series()) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        let left = a.add(&b).unwrap().add(&c).unwrap();
        let right = a.add(&b.add(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn subtraction_undoes_addition(a in int_series(), b in int_series()) {
        let back = a.add(&b).unwrap().sub(&b).unwrap();
        prop_assert!(back.agrees_with(&a));
    }

    #[test]
    fn multiplication_is_commutative(a in int_series(), b in int_series()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn multiplication_is_associative_on_the_common_window(a in int_series(), b in int_series(), c in int_series()) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(left.agrees_with(&right));
    }

    #[test]
    fn multiplication_distributes(a in int_series(), b in int_series(), c in int_series()) {
        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(left.agrees_with(&right));
    }

    #[test]
    fn reduction_is_a_ring_map(a in int_series(), b in int_series()) {
        let product = a.mul(&b).unwrap().reduce_mod2();
        prop_assert_eq!(product, a.reduce_mod2().mul(&b.reduce_mod2()).unwrap());
        let sum = a.add(&b).unwrap().reduce_mod2();
        prop_assert_eq!(sum, a.reduce_mod2().add(&b.reduce_mod2()).unwrap());
    }

    #[test]
    fn inverse_contract_over_int(a in unit_series()) {
        let inv = a.inverse().unwrap();
        prop_assert_eq!(inv.val(), -a.val());
        prop_assert_eq!(inv.valid_to(), a.valid_to() - 2 * a.val());
        let one = LaurentSeries::one(Ring::Int, inv.valid_to());
        prop_assert!(a.mul(&inv).unwrap().agrees_with(&one));
        prop_assert_eq!(inv.reduce_mod2(), a.reduce_mod2().inverse().unwrap());
    }

    #[test]
    fn inverse_contract_over_gf2(bits in prop::collection::vec(prop::bool::ANY, 0..300), val in -3i64..4) {
        let a = LaurentSeries::from_bits(val, Gf2Bits::from_bools(std::iter::once(true).chain(bits)));
        let inv = a.inverse().unwrap();
        let one = LaurentSeries::one(Ring::Gf2, inv.valid_to());
        prop_assert!(a.mul(&inv).unwrap().agrees_with(&one));
        prop_assert!(inv.inverse().unwrap().agrees_with(&a));
    }

    #[test]
    fn squaring_matches_self_product(a in gf2_series()) {
        prop_assert_eq!(a.square().unwrap(), a.mul(&a).unwrap());
    }

    #[test]
    fn dilation_is_multiplicative(a in int_series(), b in int_series(), m in 1u64..6) {
        let left = a.mul(&b).unwrap().dilate(m).unwrap();
        let right = a.dilate(m).unwrap().mul(&b.dilate(m).unwrap()).unwrap();
        prop_assert!(left.agrees_with(&right));
    }

    #[test]
    fn gf2_squaring_is_dilation_by_two(a in gf2_series()) {
        prop_assert!(a.square().unwrap().agrees_with(&a.dilate(2).unwrap()));
    }

    #[test]
    fn pow_matches_repeated_products(a in unit_series(), k in -4i64..5) {
        let mut expected = LaurentSeries::one(Ring::Int, a.valid_to() - a.val());
        let base = if k < 0 { a.inverse().unwrap() } else { a.clone() };
        for _ in 0..k.abs() {
            expected = expected.mul(&base).unwrap();
        }
        prop_assert!(a.pow(k).unwrap().agrees_with(&expected));
    }

    #[test]
    fn json_round_trip(a in int_series(), b in gf2_series()) {
        prop_assert_eq!(LaurentSeries::from_json(&a.to_json()).unwrap(), a.clone());
        prop_assert_eq!(LaurentSeries::from_json(&b.to_json()).unwrap(), b.clone());
    }

    #[test]
    fn scaling_by_two_kills_parity(a in int_series()) {
        let doubled = a.scale(&BigInt::from(2)).reduce_mod2();
        prop_assert!(doubled.bits().unwrap().count_ones() == 0);
    }
}
