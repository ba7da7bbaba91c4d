//! Exact arithmetic kernel.
//!
//! Every degree computed by this crate is a rational number. The formulas are
//! written once, generically over [`Scalar`], an exact ordered field backed by
//! `num-rational`. [`crate::Rational`] (arbitrary precision) is the type the
//! CLI and the verification suites use; the fixed-width `Ratio<i64>` and
//! `Ratio<i128>` instantiations exist for fast experiments on small inputs and
//! inherit the overflow behaviour of their integer type.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact ordered field usable as the value type of every formula.
pub trait Scalar: Clone + Ord + Debug + Display + Num + Signed + Sum + Send + Sync + 'static {
    /// Lifts an integer. Panics if it does not fit the backing integer type.
    fn from_bigint(n: &BigInt) -> Self;

    /// Builds `numer / denom` in lowest terms, or `None` when `denom` is zero
    /// or a part does not fit the backing integer type.
    fn from_parts(numer: &BigInt, denom: &BigInt) -> Option<Self>;

    /// Reduced numerator and positive denominator.
    fn to_parts(&self) -> (BigInt, BigInt);
}

impl Scalar for Ratio<BigInt> {
    fn from_bigint(n: &BigInt) -> Self {
        Ratio::from_integer(n.clone())
    }

    fn from_parts(numer: &BigInt, denom: &BigInt) -> Option<Self> {
        if denom.is_zero() {
            return None;
        }
        Some(Ratio::new(numer.clone(), denom.clone()))
    }

    fn to_parts(&self) -> (BigInt, BigInt) {
        (self.numer().clone(), self.denom().clone())
    }
}

macro_rules! impl_fixed_width_scalar {
    ($int:ty) => {
        impl Scalar for Ratio<$int> {
            fn from_bigint(n: &BigInt) -> Self {
                let v: $int = n
                    .try_into()
                    .unwrap_or_else(|_| panic!("{n} does not fit in {}", stringify!($int)));
                Ratio::from_integer(v)
            }

            fn from_parts(numer: &BigInt, denom: &BigInt) -> Option<Self> {
                if denom.is_zero() {
                    return None;
                }
                // Reduce before narrowing so representable values are not rejected.
                let g = numer.gcd(denom);
                let (mut n, mut d) = (numer / &g, denom / &g);
                if d.is_negative() {
                    n = -n;
                    d = -d;
                }
                let n: $int = (&n).try_into().ok()?;
                let d: $int = (&d).try_into().ok()?;
                Some(Ratio::new_raw(n, d))
            }

            fn to_parts(&self) -> (BigInt, BigInt) {
                (BigInt::from(*self.numer()), BigInt::from(*self.denom()))
            }
        }
    };
}

impl_fixed_width_scalar!(i64);
impl_fixed_width_scalar!(i128);

/// Lifts any integer into the scalar type.
pub fn int<S: Scalar>(n: impl Into<BigInt>) -> S {
    S::from_bigint(&n.into())
}

/// `numer / denom` as a scalar. Panics on a zero denominator; callers only
/// pass denominators built from a validated group order.
pub fn ratio<S: Scalar>(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> S {
    let (n, d) = (numer.into(), denom.into());
    S::from_parts(&n, &d).unwrap_or_else(|| panic!("cannot represent {n}/{d}"))
}

/// The fractional part `<a/b> = (a mod b)/b`, always in `[0, 1)`.
pub fn frac_part<S: Scalar>(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<S> {
    let (a, b) = (a.into(), b.into());
    if !b.is_positive() {
        return Err(Error::Domain(format!("fractional part needs a positive modulus, got {b}")));
    }
    Ok(ratio(a.mod_floor(&b), b))
}

/// `gcd(|a|, d)`, with `gcd(0, d) = d`.
pub fn gcd_with(a: impl Into<BigInt>, d: impl Into<BigInt>) -> BigInt {
    a.into().gcd(&d.into())
}

/// `(k_1 + ... + k_n)! / (k_1! ... k_n!)`.
pub fn multinomial(parts: &[u64]) -> BigUint {
    // Product of binomials C(k_1 + ... + k_i, k_i) keeps the intermediates small.
    let mut total = 0u64;
    let mut acc = BigUint::one();
    for &k in parts {
        for i in 1..=k {
            acc *= BigUint::from(total + i);
            acc /= BigUint::from(i);
        }
        total += k;
    }
    acc
}

/// Exact `num/den` rendering; integers print without a denominator.
pub fn format_exact<S: Scalar>(x: &S) -> String {
    let (n, d) = x.to_parts();
    if d.is_one() {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}

/// Parses `"num/den"` or `"num"`.
pub fn parse_exact<S: Scalar>(s: &str) -> Result<S> {
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    let (n, d) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    S::from_parts(&n, &d).ok_or_else(bad)
}

/// Decimal rendering with `sig` significant digits, rounded half away from
/// zero, trailing zeros trimmed. Display only.
pub fn to_decimal<S: Scalar>(x: &S, sig: usize) -> String {
    let (numer, denom) = x.to_parts();
    if numer.is_zero() {
        return "0".to_string();
    }
    let sig = sig.max(1) as i64;
    let negative = numer.is_negative();
    let a = numer.abs();
    let ten = BigInt::from(10u32);

    // Choose k so that a * 10^k / denom has `sig` digits before rounding.
    let whole = &a / &denom;
    let k = if whole.is_positive() {
        sig - whole.to_string().len() as i64
    } else {
        let mut j = 0i64;
        let mut t = a.clone();
        while t < denom {
            t *= &ten;
            j += 1;
        }
        j + sig - 1
    };
    let (num_scaled, den_scaled): (BigInt, BigInt) = if k >= 0 {
        (&a * ten.pow(k as u32), denom.clone())
    } else {
        (a.clone(), &denom * ten.pow((-k) as u32))
    };
    let rounded: BigInt = (num_scaled * 2u32 + &den_scaled) / (den_scaled * 2u32);

    let digits = rounded.to_string();
    let mut out = if k <= 0 {
        let zeros = (-k).to_usize().unwrap_or(0);
        format!("{digits}{}", "0".repeat(zeros))
    } else {
        let k = k as usize;
        let padded = if digits.len() <= k {
            format!("{}{digits}", "0".repeat(k + 1 - digits.len()))
        } else {
            digits
        };
        let (int_part, frac) = padded.split_at(padded.len() - k);
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            int_part.to_string()
        } else {
            format!("{int_part}.{frac}")
        }
    };
    if negative {
        out.insert(0, '-');
    }
    out
}
