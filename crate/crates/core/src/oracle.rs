//! Brute-force ground truth.
//!
//! Each multi-sum is expanded by enumerating lattice points and adding `+-1`
//! at the exponent, with every `1/(1 - s q^e)` factor turned into its own
//! geometric index. Nothing here calls into `constructors`; the only shared
//! piece is the [`TruncatedSeries`] container.
//!
//! Loops are nested with an early exit as soon as the partial exponent
//! reaches the order. Each loop bound relies on the exponent being
//! nondecreasing in the inner indices.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::constructors::SeriesId;
use crate::error::{Error, Result};
use crate::series::{Sign, TruncatedSeries};

/// Counts of `+-1` contributions, one per exponent below the order.
struct Tally {
    counts: Vec<i64>,
}

impl Tally {
    fn new(order: usize) -> Self {
        Tally {
            counts: vec![0; order],
        }
    }

    fn order(&self) -> i64 {
        self.counts.len() as i64
    }

    fn add(&mut self, exponent: i64, negative: bool) {
        let slot = &mut self.counts[exponent as usize];
        if negative {
            *slot -= 1;
        } else {
            *slot += 1;
        }
    }

    fn finish(self) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(self.counts.into_iter().map(BigInt::from).collect())
            .expect("order is positive")
    }
}

fn odd(k: i64) -> bool {
    k.rem_euclid(2) == 1
}

/// Lattice expansion of `Y_DEF`, `Z`, `A`, `B` or `B1`.
pub fn oracle_expand(id: SeriesId, order: usize) -> Result<TruncatedSeries> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    let mut tally = Tally::new(order);
    match id {
        SeriesId::YDef => y_lattice(&mut tally),
        SeriesId::Z => z_lattice(&mut tally),
        SeriesId::A => pair_lattice(&mut tally, PairShape::A),
        SeriesId::B => pair_lattice(&mut tally, PairShape::B),
        SeriesId::B1 => pair_lattice(&mut tally, PairShape::B1),
        other => return Err(Error::UnsupportedSeries(other.name().to_string())),
    }
    Ok(tally.finish())
}

/// `sum_{m,n>=1; k,l>=0} (-1)^(m+k) q^(2mn + nk + 2ml + m - l)`.
///
/// Bounds use the same exponent written as `m + 2mn + nk + l(2m-1)`.
fn y_lattice(t: &mut Tally) {
    let order = t.order();
    let mut m = 1;
    while m + 2 * m < order {
        let mut n = 1;
        while m + 2 * m * n < order {
            let mut k = 0;
            while m + 2 * m * n + n * k < order {
                let mut l = 0;
                loop {
                    let e = 2 * m * n + n * k + 2 * m * l + m - l;
                    if e >= order {
                        break;
                    }
                    t.add(e, odd(m + k));
                    l += 1;
                }
                k += 1;
            }
            n += 1;
        }
        m += 1;
    }
}

/// Sum of the two quadruple sums
///
/// `sum_{k>=1; m,i,j>=0} (-1)^(m+k+1) q^(3k + m + 2mi + 2ki + 2kj - i - j - 1)`
/// `sum_{m,k>=1; i,j>=0} (-1)^(m+k) q^(3k + m + 2mi + 2ki + 2kj - i)`.
///
/// Bounds use `(3k - 1) + m(2i + 1) + i(2k - 1) + j(2k - 1)` and
/// `3k + m(2i + 1) + i(2k - 1) + 2kj`.
fn z_lattice(t: &mut Tally) {
    let order = t.order();
    let mut k = 1;
    while 3 * k - 1 < order {
        let mut i = 0;
        while 3 * k - 1 + i * (2 * k - 1) < order {
            let mut m = 0;
            while 3 * k - 1 + m * (2 * i + 1) + i * (2 * k - 1) < order {
                let mut j = 0;
                loop {
                    let e = 3 * k + m + 2 * m * i + 2 * k * i + 2 * k * j - i - j - 1;
                    if e >= order {
                        break;
                    }
                    t.add(e, odd(m + k + 1));
                    j += 1;
                }
                m += 1;
            }
            i += 1;
        }
        k += 1;
    }

    let mut k = 1;
    while 3 * k + 1 < order {
        let mut i = 0;
        while 3 * k + 1 + i * (2 * k - 1) < order {
            let mut m = 1;
            while 3 * k + m * (2 * i + 1) + i * (2 * k - 1) < order {
                let mut j = 0;
                loop {
                    let e = 3 * k + m + 2 * m * i + 2 * k * i + 2 * k * j - i;
                    if e >= order {
                        break;
                    }
                    t.add(e, odd(m + k));
                    j += 1;
                }
                m += 1;
            }
            i += 1;
        }
        k += 1;
    }
}

#[derive(Clone, Copy)]
enum PairShape {
    /// `j > i`, numerator `q^(j+1)`
    A,
    /// `j > i`, numerator `q^(i+2j+2)`
    B,
    /// `j <= i`, numerator `q^(i+2j+2)`
    B1,
}

impl PairShape {
    fn numerator(self, i: i64, j: i64) -> i64 {
        match self {
            PairShape::A => j + 1,
            PairShape::B | PairShape::B1 => i + 2 * j + 2,
        }
    }

    fn j_range(self, i: i64) -> (i64, Option<i64>) {
        match self {
            PairShape::A | PairShape::B => (i + 1, None),
            PairShape::B1 => (0, Some(i)),
        }
    }
}

/// `sum_{(i,j)} q^num(i,j) / ((1 + q^(2i+1))(1 + q^(2j+1)))` with geometric
/// indices `u, v`: `(-1)^(u+v) q^(num + u(2i+1) + v(2j+1))`.
fn pair_lattice(t: &mut Tally, shape: PairShape) {
    let order = t.order();
    let mut i = 0;
    loop {
        let (j_lo, j_hi) = shape.j_range(i);
        if shape.numerator(i, j_lo) >= order {
            break;
        }
        let mut j = j_lo;
        while j_hi.is_none_or(|hi| j <= hi) && shape.numerator(i, j) < order {
            let num = shape.numerator(i, j);
            let mut u = 0;
            while num + u * (2 * i + 1) < order {
                let mut v = 0;
                loop {
                    let e = num + u * (2 * i + 1) + v * (2 * j + 1);
                    if e >= order {
                        break;
                    }
                    t.add(e, odd(u + v));
                    v += 1;
                }
                u += 1;
            }
            j += 1;
        }
        i += 1;
    }
}

/// Number of multisets of parts `part_modulus * t` (`t >= 1`), each part in
/// one of `colors` colors, summing to `n`, for `n < order`.
///
/// # Panics
/// If `part_modulus == 0` or `order == 0`.
pub fn oracle_partitions(colors: usize, part_modulus: usize, order: usize) -> TruncatedSeries {
    assert!(part_modulus >= 1, "part modulus must be positive");
    let mut counts = vec![BigInt::zero(); order];
    counts[0] = BigInt::one();
    for part in (part_modulus..order).step_by(part_modulus) {
        for _ in 0..colors {
            for n in part..order {
                let (lo, hi) = counts.split_at_mut(n);
                if !lo[n - part].is_zero() {
                    hi[0] += &lo[n - part];
                }
            }
        }
    }
    TruncatedSeries::from_coeffs(counts).expect("order is positive")
}

/// Coefficient of `q^(t n)` is `sum_{d | n} num_sign^d`; everything else is 0.
pub fn oracle_divisor_lambert(num_sign: Sign, t: usize, order: usize) -> TruncatedSeries {
    oracle_divisor_lambert_signed(num_sign, Sign::Plus, t, order)
}

/// Closed form of `sum_{k>=1} s^k q^(t k) / (1 - r q^(t k))`: the coefficient of
/// `q^(t n)` is `sum_{d | n} s^d r^(n/d - 1)`.
pub fn oracle_divisor_lambert_signed(
    num_sign: Sign,
    den_sign: Sign,
    t: usize,
    order: usize,
) -> TruncatedSeries {
    assert!(t >= 1, "step must be positive");
    let mut coeffs = vec![0i64; order];
    for n in 1.. {
        let e = t * n;
        if e >= order {
            break;
        }
        coeffs[e] = (1..=n)
            .filter(|d| n % d == 0)
            .map(|d| (num_sign.pow(d as u64) * den_sign.pow((n / d - 1) as u64)).as_i64())
            .sum();
    }
    TruncatedSeries::from_i64s(&coeffs).expect("order is positive")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_i64s(c).unwrap()
    }

    #[test]
    fn y_lattice_leading_terms() {
        assert_eq!(
            oracle_expand(SeriesId::YDef, 6).unwrap(),
            s(&[0, 0, 0, -1, 0, -2])
        );
    }

    #[test]
    fn b1_lattice_starts_at_q2() {
        let b1 = oracle_expand(SeriesId::B1, 3).unwrap();
        assert_eq!(b1, s(&[0, 0, 1]));
    }

    #[test]
    fn unsupported_ids() {
        for id in [SeriesId::Phi, SeriesId::D1, SeriesId::YEq2] {
            assert!(matches!(
                oracle_expand(id, 10),
                Err(Error::UnsupportedSeries(_))
            ));
        }
    }

    #[test]
    fn z_quadruple_sums_are_a_plus_b() {
        for order in [1, 5, 64] {
            let z = oracle_expand(SeriesId::Z, order).unwrap();
            let a = oracle_expand(SeriesId::A, order).unwrap();
            let b = oracle_expand(SeriesId::B, order).unwrap();
            assert_eq!(z, &a + &b, "order {order}");
        }
    }

    #[test]
    fn partition_counts() {
        assert_eq!(oracle_partitions(1, 1, 6), s(&[1, 1, 2, 3, 5, 7]));
        let two_colored_even = oracle_partitions(2, 2, 8);
        assert_eq!(two_colored_even, s(&[1, 0, 2, 0, 5, 0, 10, 0]));
        for colors in 1..4 {
            assert_eq!(oracle_partitions(colors, 3, 5).coeff(0), &BigInt::one());
        }
    }

    #[test]
    fn divisor_sums() {
        let l1 = oracle_divisor_lambert(Sign::Minus, 1, 13);
        assert_eq!(l1.coeff(12), &BigInt::from(2));
        let d = oracle_divisor_lambert(Sign::Plus, 1, 13);
        assert_eq!(d.coeff(12), &BigInt::from(6));
        assert_eq!(d.coeff(7), &BigInt::from(2));
        let even = oracle_divisor_lambert(Sign::Minus, 2, 8);
        assert_eq!(even.coeff(6), &BigInt::from(-2));
        assert_eq!(even.coeff(5), &BigInt::zero());
    }
}
