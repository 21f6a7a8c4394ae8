//! Builders for every named series, plus the generic pieces they are made of:
//! single Lambert sums, q-Pochhammer products and bilateral sums with
//! monomial parameters.
//!
//! Every denominator `1 - s q^b` is expanded as a geometric series, either
//! term by term or by an in-place division. No rational functions appear.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::series::{Sign, TruncatedSeries};

/// The monomial `sign * q^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedMonomial {
    pub sign: Sign,
    pub exponent: usize,
}

impl SignedMonomial {
    pub const fn new(sign: Sign, exponent: usize) -> Self {
        SignedMonomial { sign, exponent }
    }

    pub const fn plus(exponent: usize) -> Self {
        SignedMonomial::new(Sign::Plus, exponent)
    }

    pub const fn minus(exponent: usize) -> Self {
        SignedMonomial::new(Sign::Minus, exponent)
    }
}

impl fmt::Display for SignedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign.is_negative() { '-' } else { '+' };
        match self.exponent {
            0 => write!(f, "{s}1"),
            1 => write!(f, "{s}q"),
            e => write!(f, "{s}q^{e}"),
        }
    }
}

impl FromStr for SignedMonomial {
    type Err = Error;

    /// Accepts `q`, `+q`, `-q^3`, `1`, `-1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownName(format!("monomial {s:?}"));
        let t = s.trim();
        let (sign, rest) = match t.as_bytes().first() {
            Some(b'-') => (Sign::Minus, &t[1..]),
            Some(b'+') => (Sign::Plus, &t[1..]),
            _ => (Sign::Plus, t),
        };
        let exponent = match rest {
            "1" => 0,
            "q" => 1,
            _ => rest
                .strip_prefix("q^")
                .and_then(|e| e.parse().ok())
                .ok_or_else(bad)?,
        };
        Ok(SignedMonomial { sign, exponent })
    }
}

/// `scale * sum_{k>=1} num_sign^k q^(num_offset + num_step k) / (1 - den_sign q^(den_offset + den_step k))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LambertSpec {
    pub scale: i64,
    pub num_sign: Sign,
    pub num_offset: i64,
    pub num_step: i64,
    pub den_sign: Sign,
    pub den_offset: i64,
    pub den_step: i64,
}

impl LambertSpec {
    /// `sum (-1)^k q^k / (1 - q^k)`
    pub const L1: LambertSpec = LambertSpec {
        scale: 1,
        num_sign: Sign::Minus,
        num_offset: 0,
        num_step: 1,
        den_sign: Sign::Plus,
        den_offset: 0,
        den_step: 1,
    };

    /// `sum (-1)^k q^k / (1 - q^(2k))`
    pub const L2: LambertSpec = LambertSpec {
        den_step: 2,
        ..LambertSpec::L1
    };

    /// `sum (-1)^(k-1) q^(2k) / (1 - q^(2k))`
    pub const L3: LambertSpec = LambertSpec {
        scale: -1,
        num_sign: Sign::Minus,
        num_offset: 0,
        num_step: 2,
        den_sign: Sign::Plus,
        den_offset: 0,
        den_step: 2,
    };

    /// `sum (-1)^m q^m / (1 - q^(2m-1))`
    pub const S: LambertSpec = LambertSpec {
        den_offset: -1,
        den_step: 2,
        ..LambertSpec::L1
    };

    pub fn validate(&self) -> Result<()> {
        if self.num_step < 1 || self.num_offset + self.num_step < 1 {
            return Err(Error::DivergentSpec(format!(
                "numerator exponent {} + {}k must start at degree >= 1 and increase",
                self.num_offset, self.num_step
            )));
        }
        if self.den_step < 0 || self.den_offset + self.den_step < 1 {
            return Err(Error::DivergentSpec(format!(
                "denominator exponent {} + {}k must be >= 1 for every k >= 1",
                self.den_offset, self.den_step
            )));
        }
        Ok(())
    }
}

/// Identifier of a named series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeriesId {
    YDef,
    YEq1,
    YEq2,
    Z,
    A,
    B,
    B1,
    D1,
    D2,
    S,
    L1,
    L2,
    L3,
    Phi,
}

impl SeriesId {
    pub const ALL: [SeriesId; 14] = [
        SeriesId::YDef,
        SeriesId::YEq1,
        SeriesId::YEq2,
        SeriesId::Z,
        SeriesId::A,
        SeriesId::B,
        SeriesId::B1,
        SeriesId::D1,
        SeriesId::D2,
        SeriesId::S,
        SeriesId::L1,
        SeriesId::L2,
        SeriesId::L3,
        SeriesId::Phi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeriesId::YDef => "Y_DEF",
            SeriesId::YEq1 => "Y_EQ1",
            SeriesId::YEq2 => "Y_EQ2",
            SeriesId::Z => "Z",
            SeriesId::A => "A",
            SeriesId::B => "B",
            SeriesId::B1 => "B1",
            SeriesId::D1 => "D1",
            SeriesId::D2 => "D2",
            SeriesId::S => "S",
            SeriesId::L1 => "L1",
            SeriesId::L2 => "L2",
            SeriesId::L3 => "L3",
            SeriesId::Phi => "PHI",
        }
    }
}

impl fmt::Display for SeriesId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeriesId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SeriesId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownName(format!("series {s:?}")))
    }
}

/// Adds `sign * sum_{j>=0} s^j q^(a + j b)` into `out`.
fn add_geometric(out: &mut TruncatedSeries, a: usize, b: usize, s: Sign, sign: Sign) {
    debug_assert!(b >= 1);
    let mut e = a;
    let mut term_sign = sign;
    while e < out.order() {
        out.bump(e, term_sign);
        e += b;
        term_sign = term_sign * s;
    }
}

/// `q^a / (1 - s q^b)` truncated at `order`.
pub fn lambert_term(a: i64, b: i64, s: Sign, order: usize) -> Result<TruncatedSeries> {
    if b < 1 {
        return Err(Error::InvalidExponent(format!(
            "denominator exponent {b} < 1"
        )));
    }
    if a < 0 {
        return Err(Error::InvalidExponent(format!(
            "numerator exponent {a} < 0"
        )));
    }
    let mut out = TruncatedSeries::zero(order);
    add_geometric(&mut out, a as usize, b as usize, s, Sign::Plus);
    Ok(out)
}

/// Exact truncation of the single Lambert sum described by `spec`.
pub fn lambert_sum(spec: &LambertSpec, order: usize) -> Result<TruncatedSeries> {
    spec.validate()?;
    let mut out = TruncatedSeries::zero(order);
    for k in 1.. {
        let a = spec.num_offset + spec.num_step * k;
        if a >= order as i64 {
            break;
        }
        let b = spec.den_offset + spec.den_step * k;
        add_geometric(
            &mut out,
            a as usize,
            b as usize,
            spec.den_sign,
            spec.num_sign.pow(k as u64),
        );
    }
    Ok(if spec.scale == 1 {
        out
    } else {
        out.scale(spec.scale)
    })
}

/// `(arg; q^step)_inf = prod_{n>=0} (1 - arg q^(n step))` truncated at `order`.
pub fn pochhammer(arg: SignedMonomial, step: usize, order: usize) -> Result<TruncatedSeries> {
    let mut out = TruncatedSeries::one(order);
    apply_pochhammer(&mut out, arg, step, false)?;
    Ok(out)
}

/// Multiplies `value` by `(arg; q^step)_inf`, or divides by it when `divide`
/// is set, one binomial factor at a time.
fn apply_pochhammer(
    value: &mut TruncatedSeries,
    arg: SignedMonomial,
    step: usize,
    divide: bool,
) -> Result<()> {
    if step < 1 {
        return Err(Error::InvalidExponent(format!(
            "Pochhammer step {step} < 1"
        )));
    }
    let mut e = arg.exponent;
    if e == 0 {
        match (arg.sign, divide) {
            (Sign::Plus, _) => return Err(Error::ZeroFactor(format!("({arg}; q^{step})_inf"))),
            // 1 - (-1) = 2
            (Sign::Minus, false) => *value = value.scale(2),
            (Sign::Minus, true) => return Err(Error::NotAUnit { constant: 2.into() }),
        }
        e = step;
    }
    while e < value.order() {
        if divide {
            value.div_binomial_in_place(arg.sign, e);
        } else {
            value.mul_binomial_in_place(arg.sign, e);
        }
        e += step;
    }
    Ok(())
}

/// `(q^4; q^4)_inf^4 / (q^2; q^2)_inf^2`.
pub fn phi(order: usize) -> TruncatedSeries {
    let numerator = pochhammer(SignedMonomial::plus(4), 4, order)
        .expect("step 4 is valid")
        .pow(4);
    let denominator = pochhammer(SignedMonomial::plus(2), 2, order)
        .expect("step 2 is valid")
        .pow(2);
    numerator.mul(&denominator.invert().expect("constant term is 1"))
}

/// Builds the named series at `order` along its defining display.
pub fn named_series(id: SeriesId, order: usize) -> TruncatedSeries {
    let lambert = |spec: LambertSpec| lambert_sum(&spec, order).expect("built-in spec is valid");
    match id {
        SeriesId::YDef => y_double_sum(order),
        SeriesId::YEq1 => y_mixed_sum(order),
        SeriesId::YEq2 => y_nested_sum(order),
        SeriesId::Z => z_series(order),
        SeriesId::A => a_series(order),
        SeriesId::B => b_series(order),
        SeriesId::B1 => b1_series(order),
        SeriesId::D1 => lambert(LambertSpec::S).mul(&lambert(LambertSpec::L1)),
        SeriesId::D2 => lambert(LambertSpec::S).mul(&lambert(LambertSpec::L2)),
        SeriesId::S => lambert(LambertSpec::S),
        SeriesId::L1 => lambert(LambertSpec::L1),
        SeriesId::L2 => lambert(LambertSpec::L2),
        SeriesId::L3 => lambert(LambertSpec::L3),
        SeriesId::Phi => phi(order),
    }
}

/// `sum_{m,n>=1} (-q)^(2mn+m) / ((1 + q^n)(1 - q^(2m-1)))`.
///
/// The inner sum over `n` is collected first so the `1/(1 - q^(2m-1))`
/// factor is applied once per `m`.
fn y_double_sum(order: usize) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(order);
    for m in 1.. {
        if 3 * m >= order {
            break;
        }
        let mut inner = TruncatedSeries::zero(order);
        for n in 1.. {
            let e = 2 * m * n + m;
            if e >= order {
                break;
            }
            add_geometric(&mut inner, e, n, Sign::Minus, Sign::Plus);
        }
        inner.div_binomial_in_place(Sign::Plus, 2 * m - 1);
        out.add_shifted_in_place(&inner, 0, Sign::Minus.pow(m as u64));
    }
    out
}

/// `sum_{m>=1, k>=0} (-1)^(m+k) q^(3m+k) / ((1 - q^(2m-1))(1 - q^(2m+k)))`.
fn y_mixed_sum(order: usize) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(order);
    for m in 1.. {
        if 3 * m >= order {
            break;
        }
        let mut inner = TruncatedSeries::zero(order);
        for k in 0.. {
            let e = 3 * m + k;
            if e >= order {
                break;
            }
            add_geometric(
                &mut inner,
                e,
                2 * m + k,
                Sign::Plus,
                Sign::Minus.pow(k as u64),
            );
        }
        inner.div_binomial_in_place(Sign::Plus, 2 * m - 1);
        out.add_shifted_in_place(&inner, 0, Sign::Minus.pow(m as u64));
    }
    out
}

/// `-sum_{k>=2} q^k / (1 + q^(2k-1)) * sum_{n=1}^{k-1} q^n / (1 + q^n)`.
fn y_nested_sum(order: usize) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(order);
    let mut partial = TruncatedSeries::zero(order);
    // the k-th term starts at q^(k+1)
    for k in 2..order.saturating_sub(1) {
        add_geometric(&mut partial, k - 1, k - 1, Sign::Minus, Sign::Plus);
        let mut term = partial.shift(k);
        term.div_binomial_in_place(Sign::Minus, 2 * k - 1);
        out.add_shifted_in_place(&term, 0, Sign::Minus);
    }
    out
}

/// `sum_{m>=1} (-1)^m q^m / (1 - q^(2m-1)) * sum_{k=1}^{2m-1} (-1)^k q^k / (1 - q^k)`.
fn z_series(order: usize) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(order);
    let mut partial = TruncatedSeries::zero(order);
    let mut next_k = 1;
    // the m-th term starts at q^(m+1)
    for m in 1..order.saturating_sub(1) {
        while next_k < 2 * m {
            if next_k < order {
                add_geometric(
                    &mut partial,
                    next_k,
                    next_k,
                    Sign::Plus,
                    Sign::Minus.pow(next_k as u64),
                );
            }
            next_k += 1;
        }
        let mut term = partial.shift(m);
        term.div_binomial_in_place(Sign::Plus, 2 * m - 1);
        out.add_shifted_in_place(&term, 0, Sign::Minus.pow(m as u64));
    }
    out
}

/// `sum_{i>=0} sum_{j>i} q^(j+1) / ((1 + q^(2i+1))(1 + q^(2j+1)))`.
///
/// Walks `i` downward so the tail over `j > i` is reused.
fn a_series(order: usize) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(order);
    let mut tail = TruncatedSeries::zero(order);
    for i in (0..order).rev() {
        let j = i + 1;
        if j + 1 < order {
            add_geometric(&mut tail, j + 1, 2 * j + 1, Sign::Minus, Sign::Plus);
        }
        if i + 2 >= order {
            continue;
        }
        let mut term = tail.clone();
        term.div_binomial_in_place(Sign::Minus, 2 * i + 1);
        out.add_shifted_in_place(&term, 0, Sign::Plus);
    }
    out
}

/// `sum_{i>=0} sum_{j>i} q^(i+2j+2) / ((1 + q^(2i+1))(1 + q^(2j+1)))`.
fn b_series(order: usize) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(order);
    let mut tail = TruncatedSeries::zero(order);
    for i in (0..order).rev() {
        let j = i + 1;
        if 2 * j + 2 < order {
            add_geometric(&mut tail, 2 * j + 2, 2 * j + 1, Sign::Minus, Sign::Plus);
        }
        if 3 * i + 4 >= order {
            continue;
        }
        let mut term = tail.shift(i);
        term.div_binomial_in_place(Sign::Minus, 2 * i + 1);
        out.add_shifted_in_place(&term, 0, Sign::Plus);
    }
    out
}

/// `sum_{i>=0} sum_{j=0}^{i} q^(i+2j+2) / ((1 + q^(2i+1))(1 + q^(2j+1)))`.
fn b1_series(order: usize) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(order);
    let mut head = TruncatedSeries::zero(order);
    for i in 0..order.saturating_sub(2) {
        if 2 * i + 2 < order {
            add_geometric(&mut head, 2 * i + 2, 2 * i + 1, Sign::Minus, Sign::Plus);
        }
        let mut term = head.shift(i);
        term.div_binomial_in_place(Sign::Minus, 2 * i + 1);
        out.add_shifted_in_place(&term, 0, Sign::Plus);
    }
    out
}

/// `D2` as the product `sum_{i>=0} q^i/(1 + q^(2i+1)) * sum_{j>=0} q^(2j+2)/(1 + q^(2j+1))`.
pub fn d2_split_product(order: usize) -> TruncatedSeries {
    let mut left = TruncatedSeries::zero(order);
    for i in 0..order {
        add_geometric(&mut left, i, 2 * i + 1, Sign::Minus, Sign::Plus);
    }
    let right = lambert_sum(
        &LambertSpec {
            scale: 1,
            num_sign: Sign::Plus,
            num_offset: 0,
            num_step: 2,
            den_sign: Sign::Minus,
            den_offset: -1,
            den_step: 2,
        },
        order,
    )
    .expect("valid spec");
    left.mul(&right)
}

/// One term family `num_sign^n q^(num_step n) / (1 - den_sign q^(den_step n + den_offset))`
/// indexed by all integers `n`.
///
/// A denominator exponent `d < 0` is rewritten as
/// `1/(1 - t q^d) = -t q^(-d) / (1 - t q^(-d))`, which keeps every exponent
/// nonnegative when the term is well defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BilateralTerm {
    pub num_sign: Sign,
    pub num_step: i64,
    pub den_sign: Sign,
    pub den_step: i64,
    pub den_offset: i64,
}

impl BilateralTerm {
    /// `(-1)^m q^m / (1 - q^(2m-1))`; its values at `m` and `1 - m` coincide.
    pub const S_TERM: BilateralTerm = BilateralTerm {
        num_sign: Sign::Minus,
        num_step: 1,
        den_sign: Sign::Plus,
        den_step: 2,
        den_offset: -1,
    };

    /// The term `x^n / (1 - y Q^n)` with `Q = q^base`.
    pub fn entry29(x: SignedMonomial, y: SignedMonomial, base: usize) -> Self {
        BilateralTerm {
            num_sign: x.sign,
            num_step: x.exponent as i64,
            den_sign: y.sign,
            den_step: base as i64,
            den_offset: y.exponent as i64,
        }
    }

    /// Adds `sign * term(n)` into `out`.
    pub fn add_term(&self, n: i64, sign: Sign, out: &mut TruncatedSeries) -> Result<()> {
        let a = self.num_step * n;
        let d = self.den_step * n + self.den_offset;
        let sign = sign * self.num_sign.powi(n);
        match d {
            0 => Err(Error::ZeroFactor(format!(
                "denominator 1 - ({}) q^0 at n = {n}",
                self.den_sign
            ))),
            d if d > 0 => {
                if a < 0 {
                    return Err(Error::ParameterOutOfRange(format!(
                        "term n = {n} has negative exponent {a}"
                    )));
                }
                add_geometric(out, a as usize, d as usize, self.den_sign, sign);
                Ok(())
            }
            d => {
                let start = a - d;
                if start < 0 {
                    return Err(Error::ParameterOutOfRange(format!(
                        "term n = {n} has negative exponent {start} after rewriting"
                    )));
                }
                add_geometric(
                    out,
                    start as usize,
                    (-d) as usize,
                    self.den_sign,
                    -(sign * self.den_sign),
                );
                Ok(())
            }
        }
    }
}

/// `sum_{n=lo}^{hi} term(n)` truncated at `order`.
pub fn bilateral_window(
    term: &BilateralTerm,
    lo: i64,
    hi: i64,
    order: usize,
) -> Result<TruncatedSeries> {
    let mut out = TruncatedSeries::zero(order);
    for n in lo..=hi {
        term.add_term(n, Sign::Plus, &mut out)?;
    }
    Ok(out)
}

fn check_entry29_exponents(x: SignedMonomial, y: SignedMonomial, base: usize) -> Result<()> {
    if base < 2 {
        return Err(Error::ParameterOutOfRange(format!("base {base} < 2")));
    }
    for (name, m) in [("x", x), ("y", y)] {
        if m.exponent < 1 || m.exponent > base - 1 {
            return Err(Error::ParameterOutOfRange(format!(
                "{name} = {m} needs exponent in 1..={}",
                base - 1
            )));
        }
    }
    if x.exponent + y.exponent > base {
        return Err(Error::ParameterOutOfRange(format!(
            "x = {x}, y = {y}: exponents sum past base {base}, negative tail has negative powers"
        )));
    }
    Ok(())
}

/// `sum_{n in Z} x^n / (1 - y Q^n)` with `Q = q^base`, truncated at `order`.
///
/// Needs `1 <= exp(x), exp(y) <= base - 1` and `exp(x) + exp(y) <= base`.
pub fn bilateral_sum(
    x: SignedMonomial,
    y: SignedMonomial,
    base: usize,
    order: usize,
) -> Result<TruncatedSeries> {
    check_entry29_exponents(x, y, base)?;
    let (a, b) = (x.exponent, y.exponent);
    // n >= 0 starts at q^(a n); n = -p starts at q^(p(base - a) - b)
    let n_max = (order - 1) / a;
    let p_max = (order + b - 1) / (base - a);
    bilateral_window(
        &BilateralTerm::entry29(x, y, base),
        -(p_max as i64),
        n_max as i64,
        order,
    )
}

/// `(Q, Q, xy, Q/xy; Q)_inf / (x, Q/x, y, Q/y; Q)_inf` with `Q = q^base`.
pub fn entry29_rhs(
    x: SignedMonomial,
    y: SignedMonomial,
    base: usize,
    order: usize,
) -> Result<TruncatedSeries> {
    check_entry29_exponents(x, y, base)?;
    let (a, b) = (x.exponent, y.exponent);
    let xy_sign = x.sign * y.sign;
    if a + b == base && xy_sign == Sign::Plus {
        return Err(Error::ZeroFactor(format!(
            "(Q/xy; Q)_inf with x = {x}, y = {y}, base {base} starts with 1 - q^0"
        )));
    }
    // Factor-by-factor multiplication and division; equal to the four
    // numerator products times the inverses of the four denominator products.
    let mut value = TruncatedSeries::one(order);
    let numerator = [
        (Sign::Plus, base),
        (Sign::Plus, base),
        (xy_sign, a + b),
        (xy_sign, base - a - b),
    ];
    let denominator = [
        (x.sign, a),
        (x.sign, base - a),
        (y.sign, b),
        (y.sign, base - b),
    ];
    for ((ns, ne), (ds, de)) in numerator.into_iter().zip(denominator) {
        apply_pochhammer(&mut value, SignedMonomial::new(ns, ne), base, false)?;
        apply_pochhammer(&mut value, SignedMonomial::new(ds, de), base, true)?;
    }
    Ok(value)
}
