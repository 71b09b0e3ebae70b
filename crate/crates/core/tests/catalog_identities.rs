use jparity::eta::EtaQuotient;
use jparity::hauptmodul::{expand, HauptmodulId, Level};
use jparity::{LaurentSeries, Ring};
use num_bigint::BigInt;

fn level(n: u32) -> Level {
    Level::new(n).unwrap()
}

fn leading(id: HauptmodulId, upto: i64) -> Vec<i64> {
    let s = expand(id, upto, Ring::Int, false).unwrap();
    (-1..=upto)
        .map(|n| i64::try_from(s.coeff_int(n).unwrap()).unwrap())
        .collect()
}

/// Normalized Fricke hauptmoduln agree with the McKay-Thompson series of the
/// Monster classes 2A, 3A, 5A, 7A, 13A.
#[test]
fn fricke_hauptmoduln_match_replicable_series() {
    assert_eq!(
        leading(HauptmodulId::JNPlus(level(2)), 3),
        [1, 0, 4372, 96256, 1240002]
    );
    assert_eq!(
        leading(HauptmodulId::JNPlus(level(3)), 3),
        [1, 0, 783, 8672, 65367]
    );
    assert_eq!(
        leading(HauptmodulId::JNPlus(level(5)), 3),
        [1, 0, 134, 760, 3345]
    );
    assert_eq!(
        leading(HauptmodulId::JNPlus(level(7)), 3),
        [1, 0, 51, 204, 681]
    );
    assert_eq!(
        leading(HauptmodulId::JNPlus(level(13)), 3),
        [1, 0, 12, 28, 66]
    );
    assert_eq!(
        leading(HauptmodulId::JN(level(2)), 3),
        [1, 0, 276, -2048, 11202]
    );
}

#[test]
fn j3_plus_splits_over_int() {
    let p = 100;
    let f = EtaQuotient::new(&[(1, 12), (3, -12)])
        .unwrap()
        .expand(p, Ring::Int, true)
        .unwrap();
    let g = EtaQuotient::new(&[(1, -12), (3, 12)])
        .unwrap()
        .expand(p, Ring::Int, true)
        .unwrap();
    let rhs = f
        .add_constant(&BigInt::from(12))
        .unwrap()
        .add(&g.scale(&BigInt::from(729)))
        .unwrap();
    let lhs = expand(HauptmodulId::JNPlus(level(3)), p, Ring::Int, false).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn delta_times_its_inverse_is_one() {
    let p = 300;
    let delta = EtaQuotient::new(&[(1, 24)])
        .unwrap()
        .expand(p, Ring::Int, true)
        .unwrap();
    let product = delta.mul(&delta.inverse().unwrap()).unwrap();
    assert_eq!(product.val(), 0);
    assert!(product.valid_to() >= p - 23);
    assert!(product.agrees_with(&LaurentSeries::one(Ring::Int, product.valid_to())));
}

#[test]
fn f7_plus_is_zero_below_its_valuation() {
    let f = expand(HauptmodulId::FPlus(level(7)), 20, Ring::Int, false).unwrap();
    assert_eq!(f.coeff_int(-5).unwrap(), BigInt::from(0));
    assert_eq!(f.coeff_int(-1).unwrap(), BigInt::from(1));
}

#[test]
fn every_id_reduces_to_its_gf2_expansion() {
    for id in HauptmodulId::all() {
        let int = expand(id, 600, Ring::Int, false).unwrap();
        let gf2 = expand(id, 600, Ring::Gf2, false).unwrap();
        assert_eq!(int.reduce_mod2(), gf2, "{id}");
        assert_eq!(int.val(), id.valuation(), "{id}");
    }
}
