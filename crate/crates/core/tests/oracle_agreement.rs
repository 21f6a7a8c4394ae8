use lambert_parity::oracle::{oracle_divisor_lambert_signed, oracle_expand, oracle_partitions};
use lambert_parity::{
    lambert_sum, named_series, pochhammer, Error, LambertSpec, SeriesId, Sign, SignedMonomial,
};

#[test]
fn lattice_sums_match_constructors() {
    for id in [
        SeriesId::YDef,
        SeriesId::Z,
        SeriesId::A,
        SeriesId::B,
        SeriesId::B1,
    ] {
        for order in [1, 2, 7, 64, 151] {
            assert_eq!(
                oracle_expand(id, order).unwrap(),
                named_series(id, order),
                "{id} at {order}"
            );
        }
    }
}

#[test]
fn oracle_refuses_series_without_a_lattice_form() {
    for id in [SeriesId::D1, SeriesId::Phi, SeriesId::L1] {
        assert!(matches!(
            oracle_expand(id, 10),
            Err(Error::UnsupportedSeries(_))
        ));
    }
}

#[test]
fn colored_partitions_are_inverse_pochhammer_powers() {
    let n = 200;
    for colors in 1..=3u32 {
        for modulus in 1..=3 {
            let product = pochhammer(SignedMonomial::plus(modulus), modulus, n)
                .unwrap()
                .pow(colors);
            assert_eq!(
                product.invert().unwrap(),
                oracle_partitions(colors as usize, modulus, n)
            );
        }
    }
}

#[test]
fn divisor_lambert_sums() {
    let n = 300;
    for t in 1..=4i64 {
        for num_sign in [Sign::Plus, Sign::Minus] {
            for den_sign in [Sign::Plus, Sign::Minus] {
                let spec = LambertSpec {
                    scale: 1,
                    num_sign,
                    num_offset: 0,
                    num_step: t,
                    den_sign,
                    den_offset: 0,
                    den_step: t,
                };
                let expected = oracle_divisor_lambert_signed(num_sign, den_sign, t as usize, n);
                assert_eq!(lambert_sum(&spec, n).unwrap(), expected, "{spec:?}");
            }
        }
    }
}
