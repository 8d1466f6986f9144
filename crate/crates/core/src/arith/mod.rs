//! Exact scalars and small number-theoretic utilities.

mod factor;

pub use factor::{factorize, is_prime, small_primes, Factorization};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// `u(n) = lcm(1, 2, ..., n)`.
pub fn lcm_up_to(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc.lcm(&BigInt::from(k)))
}

/// `log* x = max(1, ln x)`; returns 1 for every `x <= e`, including `x = 0`.
pub fn log_star(x: f64) -> f64 {
    if x <= std::f64::consts::E {
        1.0
    } else {
        x.ln()
    }
}

/// Natural logarithm of a nonzero integer's absolute value, without overflowing `f64`.
pub fn ln_bigint(n: &BigInt) -> f64 {
    let n = n.abs();
    let bits = n.bits();
    if bits <= 1000 {
        n.to_f64().map(f64::ln).unwrap_or(f64::NAN)
    } else {
        let shift = bits - 64;
        let top: BigInt = &n >> shift;
        top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// `ln |q|` for nonzero `q`.
pub fn ln_rational(q: &Rational) -> f64 {
    ln_bigint(q.numer()) - ln_bigint(q.denom())
}

/// Logarithmic height of a rational: `ln max(|p|, q)` for `p/q` in lowest terms.
pub fn rational_height(q: &Rational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let num = q.numer().abs();
    let m = if &num > q.denom() { num } else { q.denom().clone() };
    ln_bigint(&m)
}

/// Converts a rational to `f64` via a scaled quotient, avoiding overflow of
/// numerator or denominator individually.
pub fn rational_to_f64(q: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    let sign = if q.is_negative() { -1.0 } else { 1.0 };
    sign * (ln_rational(q)).exp()
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    debug_assert!(!n.is_zero());
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Removes every factor `p` from `n`, returning the stripped value and the exponent.
pub fn strip_prime(n: &BigInt, p: &BigInt) -> (BigInt, u32) {
    let mut n = n.clone();
    let mut v = 0;
    if n.is_zero() {
        return (n, 0);
    }
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return (n, v);
        }
        n = q;
        v += 1;
    }
}

/// `p`-adic valuation of a nonzero rational.
pub fn rational_valuation(q: &Rational, p: &BigInt) -> i64 {
    valuation(q.numer(), p) as i64 - valuation(q.denom(), p) as i64
}

/// Exact integer `m`-th root of a nonnegative integer, if it exists.
pub fn exact_nth_root(n: &BigInt, m: u32) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.nth_root(m);
    if num_traits::pow(r.clone(), m as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// Rational `y` with `y^m = q`, if one exists. For even `m` and `q > 0` the
/// positive root is returned.
pub fn perfect_mth_root(q: &Rational, m: u32) -> Result<Option<Rational>> {
    if m < 2 {
        return Err(Error::InvalidExponent(m as i64));
    }
    if q.is_zero() {
        return Ok(Some(Rational::zero()));
    }
    let negative = q.is_negative();
    if negative && m % 2 == 0 {
        return Ok(None);
    }
    let num = exact_nth_root(&q.numer().abs(), m);
    let den = exact_nth_root(q.denom(), m);
    Ok(match (num, den) {
        (Some(n), Some(d)) => {
            let n = if negative { -n } else { n };
            Some(Rational::new(n, d))
        }
        _ => None,
    })
}

/// Parses `"p/q"` or `"p"` into a rational in lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let parse_int = |x: &str| -> Result<BigInt> {
        x.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::InvalidInput(format!("not a rational: {s:?}")))
    };
    match t.split_once('/') {
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(parse_int(t)?)),
    }
}

/// Canonical `"p/q"` / `"p"` form.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Serde adapter: an integer as a decimal string.
pub mod bigint_str {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.trim().parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: a rational as its canonical decimal string.
pub mod rational_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for vectors of rationals.
pub mod rational_vec_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(lcm_up_to(1), BigInt::from(1));
        assert_eq!(lcm_up_to(4), BigInt::from(12));
        assert_eq!(lcm_up_to(10), BigInt::from(2520));
    }

    #[test]
    fn lcm_divisibility() {
        for n in 1..60u64 {
            let u = lcm_up_to(n);
            for k in 1..=n {
                assert!((&u % BigInt::from(k)).is_zero());
            }
            let next = lcm_up_to(n + 1) * BigInt::from(n + 1);
            assert!((&next % &u).is_zero());
        }
    }

    #[test]
    fn log_star_examples() {
        assert_eq!(log_star(1.0), 1.0);
        assert!((log_star(std::f64::consts::E.powi(2)) - 2.0).abs() < 1e-15);
        assert_eq!(log_star(0.5), 1.0);
        assert_eq!(log_star(0.0), 1.0);
    }

    #[test]
    fn perfect_roots() {
        assert_eq!(perfect_mth_root(&q("8"), 3).unwrap(), Some(q("2")));
        assert_eq!(perfect_mth_root(&q("16/81"), 2).unwrap(), Some(q("4/9")));
        assert_eq!(perfect_mth_root(&q("12"), 2).unwrap(), None);
        assert_eq!(perfect_mth_root(&q("-27/8"), 3).unwrap(), Some(q("-3/2")));
        assert_eq!(perfect_mth_root(&q("-4"), 2).unwrap(), None);
        assert_eq!(perfect_mth_root(&q("0"), 5).unwrap(), Some(q("0")));
        assert!(matches!(perfect_mth_root(&q("4"), 1), Err(Error::InvalidExponent(1))));
    }

    #[test]
    fn rational_strings() {
        assert_eq!(format_rational(&q("6/4")), "3/2");
        assert_eq!(format_rational(&q("-10/5")), "-2");
        assert_eq!(format_rational(&q("0/7")), "0");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert_eq!(q(" 3 / -6 "), q("-1/2"));
    }

    #[test]
    fn big_logs() {
        let big = num_traits::pow(BigInt::from(10), 500);
        assert!((ln_bigint(&big) - 500.0 * 10f64.ln()).abs() < 1e-9);
        assert!((rational_height(&q("2/3")) - 3f64.ln()).abs() < 1e-15);
        assert_eq!(rational_height(&q("0")), 0.0);
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&BigInt::from(12), &BigInt::from(2)), 2);
        assert_eq!(rational_valuation(&q("9/8"), &BigInt::from(2)), -3);
        assert_eq!(strip_prime(&BigInt::from(40), &BigInt::from(2)), (BigInt::from(5), 3));
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn mth_root_agrees_with_factor_exponents(n in 1i64..200_000, d in 1i64..2000, m in 2u32..6) {
            let value = Rational::new(BigInt::from(n), BigInt::from(d));
            let root = perfect_mth_root(&value, m).unwrap();
            let fnum = factorize(value.numer()).unwrap();
            let fden = factorize(value.denom()).unwrap();
            let divisible = fnum.factors.iter().chain(fden.factors.iter()).all(|(_, e)| e % m == 0);
            prop_assert_eq!(root.is_some(), divisible);
            if let Some(y) = root {
                prop_assert_eq!(num_traits::pow(y, m as usize), value);
            }
        }
    }
}
