//! Exact arithmetic in the ring `Z[[q]] / (q^N)`.
//!
//! A [`TruncatedSeries`] stores the coefficients of `q^0 .. q^(N-1)` densely as
//! arbitrary-precision integers. Binary operations on operands of different
//! orders truncate to the smaller order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A sign `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(value: i64) -> Option<Sign> {
        match value {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `self^k` for a nonnegative integer power.
    pub fn pow(self, k: u64) -> Sign {
        if self == Sign::Minus && k % 2 == 1 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    /// `self^k` for any integer power; `(-1)^-k = (-1)^k`.
    pub fn powi(self, k: i64) -> Sign {
        self.pow(k.unsigned_abs())
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => f.write_str("+1"),
            Sign::Minus => f.write_str("-1"),
        }
    }
}

/// Multiplication algorithm used by [`TruncatedSeries::mul_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MulAlgorithm {
    /// Truncated O(N^2) convolution. Switches to native `i128` accumulation
    /// when the coefficient bit sizes rule out overflow.
    #[default]
    Schoolbook,
    /// Divide-and-conquer splitting on the full product, then truncation.
    Karatsuba,
}

/// Result of [`TruncatedSeries::compare`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison {
    /// Coefficients agree at every index `< through`.
    Equal { through: usize },
    /// `index` is the smallest index where the coefficients differ.
    Mismatch {
        index: usize,
        lhs: BigInt,
        rhs: BigInt,
    },
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, Comparison::Equal { .. })
    }
}

/// Parity verdict of [`TruncatedSeries::parity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// Every even-index coefficient vanishes and some odd one does not.
    Odd,
    /// Every odd-index coefficient vanishes and some even one does not.
    Even,
    /// The zero series.
    OddAndEven,
    /// Both an even-index and an odd-index coefficient are nonzero.
    Neither { first_even: usize, first_odd: usize },
}

impl Parity {
    pub fn is_odd(self) -> bool {
        matches!(self, Parity::Odd | Parity::OddAndEven)
    }

    pub fn is_even(self) -> bool {
        matches!(self, Parity::Even | Parity::OddAndEven)
    }

    /// Smallest index that keeps the series from being purely odd or purely even.
    pub fn first_violation(self) -> Option<usize> {
        match self {
            Parity::Neither {
                first_even,
                first_odd,
            } => Some(first_even.min(first_odd)),
            _ => None,
        }
    }
}

/// An integer power series known modulo `q^order`.
///
/// Invariant: `order() >= 1` and exactly `order()` coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// # Panics
    /// If `order == 0`.
    pub fn zero(order: usize) -> Self {
        assert!(order > 0, "series order must be positive");
        TruncatedSeries {
            coeffs: vec![BigInt::zero(); order],
        }
    }

    /// The constant series 1.
    pub fn one(order: usize) -> Self {
        Self::monomial(BigInt::one(), 0, order)
    }

    /// `c * q^exponent`, which is the zero series if `exponent >= order`.
    pub fn monomial(c: impl Into<BigInt>, exponent: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exponent < order {
            s.coeffs[exponent] = c.into();
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::ZeroOrder);
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Keep only `q^0 .. q^(order-1)`. Orders above the current one are clamped.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order > 0, "series order must be positive");
        let keep = order.min(self.order());
        TruncatedSeries {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    /// `c1 * f + c2 * g` at the smaller of the two orders.
    pub fn linear_combine(
        c1: impl Into<BigInt>,
        f: &TruncatedSeries,
        c2: impl Into<BigInt>,
        g: &TruncatedSeries,
    ) -> TruncatedSeries {
        let (c1, c2) = (c1.into(), c2.into());
        let coeffs = f
            .coeffs
            .iter()
            .zip(&g.coeffs)
            .map(|(a, b)| &c1 * a + &c2 * b)
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> TruncatedSeries {
        let c = c.into();
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| &c * a).collect(),
        }
    }

    /// Truncated product using the schoolbook baseline.
    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.mul_with(other, MulAlgorithm::Schoolbook)
    }

    pub fn mul_with(&self, other: &TruncatedSeries, algorithm: MulAlgorithm) -> TruncatedSeries {
        let order = self.order().min(other.order());
        let (f, g) = (&self.coeffs[..order], &other.coeffs[..order]);
        let coeffs = match algorithm {
            MulAlgorithm::Schoolbook => match mul_i128(f, g) {
                Some(c) => c,
                None => mul_schoolbook(f, g),
            },
            MulAlgorithm::Karatsuba => {
                let mut full = karatsuba(f, g);
                full.truncate(order);
                full
            }
        };
        TruncatedSeries { coeffs }
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, k: u32) -> TruncatedSeries {
        let mut result = TruncatedSeries::one(self.order());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiplicative inverse modulo `q^order`.
    ///
    /// Uses `g_0 = f_0^-1`, `g_n = -f_0^-1 * sum_{i=1..n} f_i g_(n-i)`. Only
    /// `f_0 = +-1` is invertible over the integers.
    pub fn invert(&self) -> Result<TruncatedSeries> {
        let f0 = &self.coeffs[0];
        let unit = if f0.is_one() {
            Sign::Plus
        } else if (-f0).is_one() {
            Sign::Minus
        } else {
            return Err(Error::NotAUnit {
                constant: f0.clone(),
            });
        };
        let n = self.order();
        let support: Vec<(usize, &BigInt)> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut g: Vec<BigInt> = Vec::with_capacity(n);
        g.push(f0.clone());
        for k in 1..n {
            let mut acc = BigInt::zero();
            for &(i, fi) in &support {
                if i > k {
                    break;
                }
                let gk = &g[k - i];
                if !gk.is_zero() {
                    acc += fi * gk;
                }
            }
            // -f0^-1 = -f0 for a unit
            if unit == Sign::Plus {
                acc = -acc;
            }
            g.push(acc);
        }
        Ok(TruncatedSeries { coeffs: g })
    }

    /// The substitution `q -> -q`.
    pub fn compose_sign(&self) -> TruncatedSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| if n % 2 == 1 { -c } else { c.clone() })
            .collect();
        TruncatedSeries { coeffs }
    }

    /// The substitution `q -> q^t`, keeping the order.
    ///
    /// # Panics
    /// If `t == 0`.
    pub fn compose_power(&self, t: usize) -> TruncatedSeries {
        assert!(t >= 1, "compose_power needs t >= 1");
        let mut out = TruncatedSeries::zero(self.order());
        for (n, c) in self.coeffs.iter().enumerate() {
            match n.checked_mul(t) {
                Some(e) if e < out.order() => out.coeffs[e] = c.clone(),
                _ => break,
            }
        }
        out
    }

    /// Multiplication by `q^k`, keeping the order.
    pub fn shift(&self, k: usize) -> TruncatedSeries {
        let n = self.order();
        let mut out = TruncatedSeries::zero(n);
        if k < n {
            out.coeffs[k..].clone_from_slice(&self.coeffs[..n - k]);
        }
        out
    }

    /// Coefficient-exact comparison of `q^0 .. q^(m-1)`.
    pub fn compare(&self, other: &TruncatedSeries, m: usize) -> Result<Comparison> {
        let available = self.order().min(other.order());
        if m > available {
            return Err(Error::OrderTooSmall {
                needed: m,
                got: available,
            });
        }
        let found = self.coeffs[..m]
            .iter()
            .zip(&other.coeffs[..m])
            .position(|(a, b)| a != b);
        Ok(match found {
            None => Comparison::Equal { through: m },
            Some(index) => Comparison::Mismatch {
                index,
                lhs: self.coeffs[index].clone(),
                rhs: other.coeffs[index].clone(),
            },
        })
    }

    pub fn parity(&self) -> Parity {
        let first_nonzero = |start: usize| {
            self.coeffs
                .iter()
                .enumerate()
                .skip(start)
                .step_by(2)
                .find(|(_, c)| !c.is_zero())
                .map(|(i, _)| i)
        };
        match (first_nonzero(0), first_nonzero(1)) {
            (None, None) => Parity::OddAndEven,
            (None, Some(_)) => Parity::Odd,
            (Some(_), None) => Parity::Even,
            (Some(first_even), Some(first_odd)) => Parity::Neither {
                first_even,
                first_odd,
            },
        }
    }

    /// Multiply in place by `(1 - s q^b)`.
    pub(crate) fn mul_binomial_in_place(&mut self, s: Sign, b: usize) {
        let n = self.order();
        if b >= n {
            return;
        }
        for i in (b..n).rev() {
            if self.coeffs[i - b].is_zero() {
                continue;
            }
            let (lo, hi) = self.coeffs.split_at_mut(i);
            match s {
                Sign::Plus => hi[0] -= &lo[i - b],
                Sign::Minus => hi[0] += &lo[i - b],
            }
        }
    }

    /// Divide in place by `(1 - s q^b)`, `b >= 1`.
    pub(crate) fn div_binomial_in_place(&mut self, s: Sign, b: usize) {
        debug_assert!(b >= 1);
        let n = self.order();
        for i in b..n {
            if self.coeffs[i - b].is_zero() {
                continue;
            }
            let (lo, hi) = self.coeffs.split_at_mut(i);
            match s {
                Sign::Plus => hi[0] += &lo[i - b],
                Sign::Minus => hi[0] -= &lo[i - b],
            }
        }
    }

    /// `self += sign * other * q^k`, truncated at `self.order()`.
    pub(crate) fn add_shifted_in_place(&mut self, other: &TruncatedSeries, k: usize, sign: Sign) {
        let n = self.order();
        if k >= n {
            return;
        }
        for (dst, src) in self.coeffs[k..].iter_mut().zip(&other.coeffs) {
            if src.is_zero() {
                continue;
            }
            match sign {
                Sign::Plus => *dst += src,
                Sign::Minus => *dst -= src,
            }
        }
    }

    /// `self[e] += sign` for a single exponent; no-op past the order.
    pub(crate) fn bump(&mut self, e: usize, sign: Sign) {
        if let Some(c) = self.coeffs.get_mut(e) {
            match sign {
                Sign::Plus => *c += 1,
                Sign::Minus => *c -= 1,
            }
        }
    }
}

fn bit_bound(coeffs: &[BigInt]) -> u64 {
    coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
}

/// Truncated convolution in `i128`, or `None` if the result could overflow.
fn mul_i128(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = f.len();
    let len_bits = 64 - (n as u64).leading_zeros() as u64;
    if bit_bound(f) + bit_bound(g) + len_bits >= 126 {
        return None;
    }
    let fs: Vec<i128> = f.iter().map(|c| c.to_i128()).collect::<Option<_>>()?;
    let gs: Vec<i128> = g.iter().map(|c| c.to_i128()).collect::<Option<_>>()?;
    let mut acc = vec![0i128; n];
    for (i, &a) in fs.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (dst, &b) in acc[i..].iter_mut().zip(&gs) {
            *dst += a * b;
        }
    }
    Some(acc.into_iter().map(BigInt::from).collect())
}

fn mul_schoolbook(f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let n = f.len();
    let mut acc = vec![BigInt::zero(); n];
    for (i, a) in f.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (dst, b) in acc[i..].iter_mut().zip(g) {
            if !b.is_zero() {
                *dst += a * b;
            }
        }
    }
    acc
}

const KARATSUBA_CUTOFF: usize = 32;

/// Full (untruncated) product of two coefficient slices.
fn karatsuba(f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let out_len = f.len() + g.len() - 1;
    if f.len().min(g.len()) <= KARATSUBA_CUTOFF {
        let mut acc = vec![BigInt::zero(); out_len];
        for (i, a) in f.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in g.iter().enumerate() {
                acc[i + j] += a * b;
            }
        }
        return acc;
    }
    let half = f.len().max(g.len()) / 2;
    let (f0, f1) = f.split_at(half.min(f.len()));
    let (g0, g1) = g.split_at(half.min(g.len()));

    let low = karatsuba(f0, g0);
    let high = karatsuba(f1, g1);
    let mid = karatsuba(&add_slices(f0, f1), &add_slices(g0, g1));

    // Intermediate terms may reach past `out_len` before cancelling.
    let scratch = out_len
        .max(low.len() + half)
        .max(mid.len() + half)
        .max(high.len() + 2 * half);
    let mut acc = vec![BigInt::zero(); scratch];
    for (i, c) in low.iter().enumerate() {
        acc[i] += c;
        acc[i + half] -= c;
    }
    for (i, c) in high.iter().enumerate() {
        acc[i + 2 * half] += c;
        acc[i + half] -= c;
    }
    for (i, c) in mid.iter().enumerate() {
        acc[i + half] += c;
    }
    debug_assert!(acc[out_len..].iter().all(Zero::is_zero));
    acc.truncate(out_len);
    acc
}

fn add_slices(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => BigInt::zero(),
        })
        .collect()
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::linear_combine(1, self, 1, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::linear_combine(1, self, -1, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for TruncatedSeries {
    /// Renders as `1 + 2q^2 - q^3 + O(q^N)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            let show_magnitude = n == 0 || !magnitude.is_one();
            if show_magnitude {
                write!(f, "{magnitude}")?;
            }
            match n {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order())
    }
}
