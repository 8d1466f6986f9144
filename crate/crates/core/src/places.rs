//! Places of a number field, normalized absolute values, Weil heights, `ĥ`,
//! S-norms and the S-invariants `Q_S`, `P_S`.
//!
//! Normalization: `|α|_v = |σ(α)|` at a real place, `|σ(α)|^2` at a complex
//! place, and `N(P)^(-ord_P(α))` at a finite place, so `Π_v |α|_v = 1` and
//! `h(α) = (1/d) Σ_v log max(1, |α|_v)`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, format_rational, ln_bigint, ln_rational, valuation, Rational};
use crate::field::{
    factor_prime, ord_at, FieldElement, KPoly, NumberField, PrimeIdeal, Valuation, EMBEDDING_TOL,
};
use crate::poly::{eval_enclosed, zpoly};
use crate::{Error, Result};

/// Default error target for heights and archimedean values, relative above 1.
pub const DEFAULT_TOL: f64 = 1e-12;

const REFINEMENTS: usize = 4;

/// A value `v` with `|true - v| ≤ err`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Certified {
    pub value: f64,
    pub err: f64,
}

impl Certified {
    pub fn exact(value: f64) -> Self {
        Certified { value, err: rounding_pad(value) }
    }

    pub fn lo(&self) -> f64 {
        self.value - self.err
    }

    pub fn hi(&self) -> f64 {
        self.value + self.err
    }
}

fn rounding_pad(x: f64) -> f64 {
    1e-15 * x.abs().max(1.0)
}

/// A place of `K`; archimedean places carry the index of their root of `g`
/// in [`NumberField::embeddings`].
#[derive(Debug, Clone, PartialEq)]
pub enum Place {
    Real(usize),
    Complex(usize),
    Finite(PrimeIdeal),
}

impl Place {
    /// Local degree weight: 1 real, 2 complex, 0 for finite places.
    pub fn weight(&self) -> u32 {
        match self {
            Place::Real(_) => 1,
            Place::Complex(_) => 2,
            Place::Finite(_) => 0,
        }
    }

    pub fn is_archimedean(&self) -> bool {
        !matches!(self, Place::Finite(_))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real(i) => write!(f, "real#{i}"),
            Place::Complex(i) => write!(f, "complex#{i}"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

/// The `r1 + r2` infinite places.
pub fn infinite_places(k: &NumberField) -> Vec<Place> {
    (0..k.r1())
        .map(Place::Real)
        .chain((k.r1()..k.r1() + k.r2()).map(Place::Complex))
        .collect()
}

/// `|α|_v`: exact at finite places, certified at infinite ones.
#[derive(Debug, Clone, PartialEq)]
pub enum AbsValue {
    Exact(Rational),
    Approx(Certified),
}

impl AbsValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            AbsValue::Exact(q) => crate::arith::rational_to_f64(q),
            AbsValue::Approx(c) => c.value,
        }
    }

    /// `log |α|_v` with error bound; `None` for `|α|_v = 0`.
    pub fn ln(&self) -> Option<Certified> {
        match self {
            AbsValue::Exact(q) if q.is_zero() => None,
            AbsValue::Exact(q) => Some(Certified::exact(ln_rational(q))),
            AbsValue::Approx(c) if c.lo() <= 0.0 => None,
            AbsValue::Approx(c) => {
                let v = c.value.ln();
                let err = (c.value.ln() - c.lo().ln()).max(c.hi().ln() - v);
                Some(Certified { value: v, err: err + rounding_pad(v) })
            }
        }
    }
}

/// Bounds `lo ≤ |σ_i(α)| ≤ hi` using the root enclosure of embedding `i` at radius `root_tol`.
fn arch_abs(alpha: &FieldElement, i: usize, root_tol: f64) -> Result<(Rational, Rational)> {
    let root = alpha.field().embedding(i, root_tol)?;
    let value = eval_enclosed(alpha.as_poly().coeffs(), &root.enclosed());
    Ok((value.abs_lower(), value.abs_upper()))
}

/// Runs `f` at shrinking root radii until its reported error is at most
/// `tol · max(1, |value|)`.
fn refine(tol: f64, mut f: impl FnMut(f64) -> Result<Certified>) -> Result<Certified> {
    let mut root_tol = EMBEDDING_TOL;
    let mut last = f64::INFINITY;
    for _ in 0..REFINEMENTS {
        let v = f(root_tol)?;
        let err = v.err;
        if err <= tol * v.value.abs().max(1.0) {
            return Ok(v);
        }
        last = err;
        root_tol *= 1e-30;
    }
    Err(Error::RootCertification(format!(
        "error {last:e} above requested tolerance {tol:e}"
    )))
}

fn to_f64(q: &Rational) -> f64 {
    crate::arith::rational_to_f64(q)
}

/// `|α|_v` per the normalization above.
pub fn abs_value(alpha: &FieldElement, v: &Place, tol: f64) -> Result<AbsValue> {
    match v {
        Place::Finite(p) => match ord_at(alpha, p)? {
            Valuation::Infinite => Ok(AbsValue::Exact(Rational::zero())),
            Valuation::Finite(o) => {
                let n = Rational::from_integer(p.norm());
                Ok(AbsValue::Exact(if o >= 0 {
                    Rational::one() / num_traits::pow(n, o as usize)
                } else {
                    num_traits::pow(n, (-o) as usize)
                }))
            }
        },
        Place::Real(i) | Place::Complex(i) => {
            if alpha.is_zero() {
                return Ok(AbsValue::Exact(Rational::zero()));
            }
            let squared = matches!(v, Place::Complex(_));
            let c = refine(tol, |root_tol| {
                let (lo, hi) = arch_abs(alpha, *i, root_tol)?;
                let (lo, hi) = if squared { (&lo * &lo, &hi * &hi) } else { (lo, hi) };
                let (l, h) = (to_f64(&lo), to_f64(&hi));
                let mid = (l + h) / 2.0;
                let err = (h - l) / 2.0 + rounding_pad(mid) * 4.0;
                Ok(Certified { value: mid, err })
            })?;
            Ok(AbsValue::Approx(c))
        }
    }
}

/// Interval for `log max(1, x)` given `lo ≤ x ≤ hi`.
fn log_max1(lo: &Rational, hi: &Rational) -> (f64, f64) {
    let one = Rational::one();
    let l = if lo > &one { ln_rational(lo) } else { 0.0 };
    let h = if hi > &one { ln_rational(hi) } else { 0.0 };
    ((l - rounding_pad(l)).max(0.0), h + rounding_pad(h))
}

/// Primes `p` at which some coordinate of some element has a denominator.
fn denominator_primes(cs: &[FieldElement]) -> Result<Vec<BigInt>> {
    let den = cs
        .iter()
        .fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denominator()));
    Ok(factorize(&den)?.factors.into_iter().map(|(p, _)| p).collect())
}

/// `v_p` of the leading coefficient of the primitive characteristic polynomial:
/// `Σ_{P|p} f_P · max(0, -ord_P(α))`, without factoring `p`.
fn polar_order_from_charpoly(alpha: &FieldElement, p: &BigInt) -> u32 {
    let (_, prim) = alpha.charpoly().primitive_integer();
    valuation(prim.last().expect("nonzero charpoly"), p)
}

/// `Σ_{P|p} f_P · max(0, -min_i ord_P(c_i)) · log p` (the finite part of a height at `p`).
fn finite_height_part(cs: &[FieldElement], p: &BigInt) -> Result<f64> {
    let k = cs[0].field();
    if (k.index() % p).is_zero() {
        let nonzero: Vec<&FieldElement> = cs.iter().filter(|c| !c.is_zero()).collect();
        let orders: Vec<u32> = nonzero.iter().map(|c| polar_order_from_charpoly(c, p)).collect();
        return match orders.iter().filter(|&&o| o > 0).count() {
            0 => Ok(0.0),
            1 if nonzero.len() == 1 => Ok(orders[0] as f64 * ln_bigint(p)),
            _ => Err(Error::IndexDivisor(p.clone())),
        };
    }
    let mut total = 0.0;
    for prime in factor_prime(k, p)? {
        let mut min_ord: Option<i64> = None;
        for c in cs {
            if let Valuation::Finite(o) = ord_at(c, &prime)? {
                min_ord = Some(min_ord.map_or(o, |m| m.min(o)));
            }
        }
        if let Some(m) = min_ord.filter(|&m| m < 0) {
            total += (-m) as f64 * prime.f as f64 * ln_bigint(p);
        }
    }
    Ok(total)
}

/// `(1/d) Σ_v log max(1, |c_0|_v, ..., |c_n|_v)`.
pub fn vector_height(cs: &[FieldElement], tol: f64) -> Result<Certified> {
    let Some(first) = cs.first() else {
        return Ok(Certified::exact(0.0));
    };
    let k = Arc::clone(first.field());
    if cs.iter().any(|c| !c.field().same_as(&k)) {
        return Err(Error::FieldMismatch);
    }
    if k.is_rational() {
        let qs: Vec<Rational> = cs.iter().map(|c| c.coords()[0].clone()).collect();
        return Ok(Certified::exact(rational_vector_height(&qs)));
    }
    let d = k.degree() as f64;
    let mut finite = 0.0;
    for p in denominator_primes(cs)? {
        finite += finite_height_part(cs, &p)?;
    }
    let places = infinite_places(&k);
    refine(tol, |root_tol| {
        let mut lo_sum = finite;
        let mut hi_sum = finite;
        for v in &places {
            let i = match v {
                Place::Real(i) | Place::Complex(i) => *i,
                Place::Finite(_) => unreachable!(),
            };
            let mut lo_max = Rational::zero();
            let mut hi_max = Rational::zero();
            for c in cs.iter().filter(|c| !c.is_zero()) {
                let (lo, hi) = arch_abs(c, i, root_tol)?;
                lo_max = lo_max.max(lo);
                hi_max = hi_max.max(hi);
            }
            let (l, h) = log_max1(&lo_max, &hi_max);
            lo_sum += v.weight() as f64 * l;
            hi_sum += v.weight() as f64 * h;
        }
        let value = (lo_sum + hi_sum) / (2.0 * d);
        let err = (hi_sum - lo_sum) / (2.0 * d) + rounding_pad(value) * places.len() as f64;
        Ok(Certified { value, err })
    })
}

/// `log max(D, |D·q_0|, ..., |D·q_n|)` with `D` the common denominator.
pub fn rational_vector_height(qs: &[Rational]) -> f64 {
    let den = qs.iter().fold(BigInt::one(), |l, q| num_integer::lcm(l, q.denom().clone()));
    let top = qs
        .iter()
        .map(|q| (q * Rational::from_integer(den.clone())).to_integer().abs())
        .fold(den.clone(), |m, v| m.max(v));
    ln_bigint(&top)
}

/// Weil height `h(α)`; exactly 0 on 0 and the roots of unity.
pub fn height(alpha: &FieldElement, tol: f64) -> Result<Certified> {
    if alpha.is_zero() || is_root_of_unity(alpha) {
        return Ok(Certified { value: 0.0, err: 0.0 });
    }
    vector_height(std::slice::from_ref(alpha), tol)
}

/// `h(f) = (1/d) Σ_v log max(1, |a_0|_v, ..., |a_n|_v)`.
pub fn height_of_poly(f: &KPoly, tol: f64) -> Result<Certified> {
    vector_height(f.coeffs(), tol)
}

/// A finite set of places: all infinite places plus chosen prime ideals.
#[derive(Clone)]
pub struct SSpec {
    field: Arc<NumberField>,
    primes: Vec<PrimeIdeal>,
}

/// Selects the `factor_index`-th prime above `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeChoice {
    pub p: u64,
    #[serde(default)]
    pub factor_index: usize,
}

impl SSpec {
    /// `S = {infinite places}`.
    pub fn infinite(field: &Arc<NumberField>) -> Self {
        SSpec { field: Arc::clone(field), primes: Vec::new() }
    }

    pub fn new(field: &Arc<NumberField>, primes: Vec<PrimeIdeal>) -> Result<Self> {
        for (i, p) in primes.iter().enumerate() {
            if !p.field().same_as(field) {
                return Err(Error::FieldMismatch);
            }
            if primes[..i].contains(p) {
                return Err(Error::InvalidInput(format!("prime {p} listed twice in S")));
            }
        }
        Ok(SSpec { field: Arc::clone(field), primes })
    }

    pub fn from_choices(field: &Arc<NumberField>, choices: &[PrimeChoice]) -> Result<Self> {
        let mut primes = Vec::with_capacity(choices.len());
        for c in choices {
            let above = factor_prime(field, &BigInt::from(c.p))?;
            let n = above.len();
            let prime = above.into_iter().nth(c.factor_index).ok_or_else(|| {
                Error::InvalidInput(format!(
                    "factor_index {} out of range: {} has {n} prime(s) above it",
                    c.factor_index, c.p
                ))
            })?;
            primes.push(prime);
        }
        Self::new(field, primes)
    }

    /// `S` over `Q` from rational primes.
    pub fn rational(primes: &[u64]) -> Result<Self> {
        let q = NumberField::rationals();
        let choices: Vec<PrimeChoice> =
            primes.iter().map(|&p| PrimeChoice { p, factor_index: 0 }).collect();
        Self::from_choices(&q, &choices)
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn primes(&self) -> &[PrimeIdeal] {
        &self.primes
    }

    pub fn choices(&self) -> Vec<PrimeChoice> {
        self.primes
            .iter()
            .map(|p| PrimeChoice {
                p: num_traits::ToPrimitive::to_u64(&p.p).expect("63-bit prime"),
                factor_index: p.index,
            })
            .collect()
    }

    /// Number of finite places in `S`.
    pub fn t(&self) -> usize {
        self.primes.len()
    }

    /// `s = r1 + r2 + t`.
    pub fn s(&self) -> usize {
        self.field.r1() + self.field.r2() + self.t()
    }

    pub fn q_s(&self) -> BigInt {
        self.primes.iter().map(PrimeIdeal::norm).product()
    }

    pub fn p_s(&self) -> BigInt {
        self.primes.iter().map(PrimeIdeal::norm).max().unwrap_or_else(BigInt::one)
    }

    pub fn contains(&self, p: &PrimeIdeal) -> bool {
        self.primes.contains(p)
    }

    /// Distinct rational primes below the finite places of `S`.
    pub fn rational_primes(&self) -> Vec<BigInt> {
        let mut ps: Vec<BigInt> = self.primes.iter().map(|p| p.p.clone()).collect();
        ps.sort();
        ps.dedup();
        ps
    }

    /// All places of `S`, infinite first.
    pub fn places(&self) -> Vec<Place> {
        let mut out = infinite_places(&self.field);
        out.extend(self.primes.iter().cloned().map(Place::Finite));
        out
    }
}

impl fmt::Debug for SSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SSpec({}, {:?})", self.field, self.primes)
    }
}

impl Serialize for SSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SSpec", 2)?;
        st.serialize_field("field", &self.field.spec())?;
        st.serialize_field("primes", &self.choices())?;
        st.end()
    }
}

/// `(Q_S, P_S)`, both 1 when `S` has no finite places.
pub fn qs_ps(s: &SSpec) -> (BigInt, BigInt) {
    (s.q_s(), s.p_s())
}

/// Whether `ord_P(α) ≥ 0` at every finite `P ∉ S`.
pub fn is_s_integer(alpha: &FieldElement, s: &SSpec) -> Result<bool> {
    if alpha.is_zero() {
        return Ok(true);
    }
    let k = alpha.field();
    for p in denominator_primes(std::slice::from_ref(alpha))? {
        if (k.index() % &p).is_zero() {
            // S never contains primes above an index divisor
            if polar_order_from_charpoly(alpha, &p) > 0 {
                return Ok(false);
            }
            continue;
        }
        for prime in factor_prime(k, &p)? {
            if s.contains(&prime) {
                continue;
            }
            if let Valuation::Finite(o) = ord_at(alpha, &prime)? {
                if o < 0 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `ĥ = (1/d) Σ_v log max(1, |b|_v, |a_0|_v, ..., |a_n|_v)` for S-integral data.
pub fn h_hat(f: &KPoly, b: &FieldElement, s: &SSpec, tol: f64) -> Result<Certified> {
    if b.is_zero() {
        return Err(Error::ZeroB);
    }
    if !f.field().same_as(s.field()) || !b.field().same_as(s.field()) {
        return Err(Error::FieldMismatch);
    }
    if !is_s_integer(b, s)? {
        return Err(Error::NotSInteger(format!("b = {b}")));
    }
    for (i, a) in f.coeffs().iter().enumerate() {
        if !is_s_integer(a, s)? {
            return Err(Error::NotSInteger(format!("a_{i} = {a}")));
        }
    }
    let mut all = vec![b.clone()];
    all.extend(f.coeffs().iter().cloned());
    vector_height(&all, tol)
}

/// `N_S(α) = Π_{v∈S} |α|_v`, exact.
///
/// By the product formula this is `|N(α)| · Π_{P∈S} N(P)^(-ord_P(α))`.
pub fn s_norm(alpha: &FieldElement, s: &SSpec) -> Result<Rational> {
    if alpha.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut out = alpha.norm().abs();
    for prime in s.primes() {
        let o = ord_at(alpha, prime)?.finite().expect("nonzero");
        let n = Rational::from_integer(prime.norm());
        if o >= 0 {
            out /= num_traits::pow(n, o as usize);
        } else {
            out *= num_traits::pow(n, (-o) as usize);
        }
    }
    Ok(out)
}

/// Exact test for `α` being a root of unity: `α^k = 1` for some `k ≤ 2d^2`.
pub fn is_root_of_unity(alpha: &FieldElement) -> bool {
    if alpha.is_zero() || !alpha.norm().abs().is_one() {
        return false;
    }
    if !alpha.charpoly().coeffs().iter().all(|c| c.is_integer()) {
        return false;
    }
    let d = alpha.field().degree();
    let mut power = alpha.clone();
    for _ in 1..=2 * d * d {
        if power.is_one() {
            return true;
        }
        power = power.mul(alpha).expect("same field");
    }
    false
}

/// Infinite places plus every finite place where `ord_P(α) ≠ 0`.
pub fn support_places(alpha: &FieldElement) -> Result<Vec<Place>> {
    if alpha.is_zero() {
        return Err(Error::ZeroInput);
    }
    let k = alpha.field();
    let (a, den) = alpha.integral_parts();
    let num = zpoly::resultant(k.g_int(), &zpoly::trimmed(a));
    let mut ps: Vec<BigInt> = factorize(&(num * den))?
        .factors
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    ps.sort();
    let mut out = infinite_places(k);
    for p in ps {
        for prime in factor_prime(k, &p)? {
            if ord_at(alpha, &prime)? != Valuation::Finite(0) {
                out.push(Place::Finite(prime));
            }
        }
    }
    Ok(out)
}

/// Human-readable rendering of an exact absolute value.
pub fn describe(v: &AbsValue) -> String {
    match v {
        AbsValue::Exact(q) => format_rational(q),
        AbsValue::Approx(c) => format!("{} ± {:e}", c.value, c.err),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::poly::Poly;

    fn field(c: &[i64]) -> Arc<NumberField> {
        make_field(&Poly::from_ints(c), None).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn close(a: f64, b: f64, eps: f64) -> bool {
        (a - b).abs() <= eps
    }

    #[test]
    fn abs_value_examples() {
        let qf = NumberField::rationals();
        let m3 = FieldElement::from_int(&qf, -3);
        let v = abs_value(&m3, &Place::Real(0), DEFAULT_TOL).unwrap();
        assert!(close(v.to_f64(), 3.0, 1e-12));
        let two = factor_prime(&qf, &BigInt::from(2)).unwrap().remove(0);
        let twelve = FieldElement::from_int(&qf, 12);
        assert_eq!(abs_value(&twelve, &Place::Finite(two), DEFAULT_TOL).unwrap(), AbsValue::Exact(q(1, 4)));
        let gi = field(&[1, 0, 1]);
        let a = FieldElement::from_ints(&gi, &[1, 1]);
        let v = abs_value(&a, &Place::Complex(0), DEFAULT_TOL).unwrap();
        assert!(close(v.to_f64(), 2.0, 1e-12));
    }

    #[test]
    fn height_examples() {
        let qf = NumberField::rationals();
        let h2 = height(&FieldElement::from_int(&qf, 2), DEFAULT_TOL).unwrap();
        assert!(close(h2.value, 2f64.ln(), 1e-14));
        let h = height(&FieldElement::from_rational(&qf, q(2, 3)), DEFAULT_TOL).unwrap();
        assert!(close(h.value, 3f64.ln(), 1e-14));
        let k5 = field(&[1, -1, -1]);
        let phi = FieldElement::theta(&k5);
        let h = height(&phi, DEFAULT_TOL).unwrap();
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(close(h.value, golden.ln() / 2.0, 1e-12));
        assert!(close(h.value, 0.240606, 1e-6));
    }

    #[test]
    fn height_at_index_divisor_uses_charpoly() {
        // θ^2 = 5: (1 + θ)/2 is the golden ratio, integral although 2 | index
        let k = field(&[1, 0, -5]);
        let phi = FieldElement::new(&k, vec![q(1, 2), q(1, 2)]);
        let h = height(&phi, DEFAULT_TOL).unwrap();
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(close(h.value, golden.ln() / 2.0, 1e-12));
        // (1 + θ)/4 is not integral at 2
        let x = FieldElement::new(&k, vec![q(1, 4), q(1, 4)]);
        assert!(close(height(&x, DEFAULT_TOL).unwrap().value, 2f64.ln(), 1e-12));
    }

    #[test]
    fn poly_heights() {
        let qf = NumberField::rationals();
        let h = |c: &[&str]| {
            height_of_poly(&KPoly::from_rational(&qf, &Poly::parse(c).unwrap()), DEFAULT_TOL)
                .unwrap()
                .value
        };
        assert!(close(h(&["1", "0", "1"]), 0.0, 1e-15));
        assert!(close(h(&["2", "3"]), 3f64.ln(), 1e-14));
        assert!(close(h(&["1/2", "1"]), 2f64.ln(), 1e-14));
    }

    #[test]
    fn h_hat_examples() {
        let qf = NumberField::rationals();
        let s = SSpec::infinite(&qf);
        let one = FieldElement::one(&qf);
        let f = KPoly::from_rational(&qf, &Poly::from_ints(&[1, 0, 1]));
        assert!(close(h_hat(&f, &one, &s, DEFAULT_TOL).unwrap().value, 0.0, 1e-15));
        let f = KPoly::from_rational(&qf, &Poly::from_ints(&[1, 0, 0, -2]));
        let two = FieldElement::from_int(&qf, 2);
        assert!(close(h_hat(&f, &two, &s, DEFAULT_TOL).unwrap().value, 2f64.ln(), 1e-14));
        let f = KPoly::from_rational(&qf, &Poly::parse(&["1", "1/2"]).unwrap());
        let err = h_hat(&f, &one, &s, DEFAULT_TOL).unwrap_err();
        assert!(matches!(err, Error::NotSInteger(_)));
        assert!(err.to_string().starts_with("not an S-integer"));
        let s2 = SSpec::rational(&[2]).unwrap();
        assert!(close(h_hat(&f, &one, &s2, DEFAULT_TOL).unwrap().value, 2f64.ln(), 1e-14));
        assert!(matches!(h_hat(&f, &FieldElement::zero(&qf), &s2, DEFAULT_TOL), Err(Error::ZeroB)));
    }

    #[test]
    fn s_norm_examples() {
        let s = SSpec::rational(&[2]).unwrap();
        let qf = s.field().clone();
        assert_eq!(s_norm(&FieldElement::from_int(&qf, 6), &s).unwrap(), q(3, 1));
        assert_eq!(s_norm(&FieldElement::from_rational(&qf, q(1, 2)), &s).unwrap(), q(1, 1));
        assert_eq!(s_norm(&FieldElement::from_rational(&qf, q(-8, 1)), &s).unwrap(), q(1, 1));
        let gi = field(&[1, 0, 1]);
        let s5 = SSpec::from_choices(&gi, &[PrimeChoice { p: 5, factor_index: 0 }]).unwrap();
        // 2 + i generates the chosen prime above 5, so it is an S-unit
        assert_eq!(s_norm(&FieldElement::from_ints(&gi, &[2, 1]), &s5).unwrap(), q(1, 1));
        assert_eq!(s_norm(&FieldElement::from_ints(&gi, &[2, -1]), &s5).unwrap(), q(5, 1));
    }

    #[test]
    fn qs_ps_examples() {
        let qf = NumberField::rationals();
        assert_eq!(qs_ps(&SSpec::infinite(&qf)), (BigInt::one(), BigInt::one()));
        assert_eq!(qs_ps(&SSpec::rational(&[2, 3]).unwrap()), (BigInt::from(6), BigInt::from(3)));
        let gi = field(&[1, 0, 1]);
        let s = SSpec::from_choices(
            &gi,
            &[PrimeChoice { p: 5, factor_index: 0 }, PrimeChoice { p: 5, factor_index: 1 }],
        )
        .unwrap();
        assert_eq!(qs_ps(&s), (BigInt::from(25), BigInt::from(5)));
        assert_eq!(s.s(), 3);
        assert!(SSpec::from_choices(&gi, &[PrimeChoice { p: 5, factor_index: 2 }]).is_err());
        assert!(SSpec::rational(&[2, 2]).is_err());
    }

    #[test]
    fn roots_of_unity() {
        let gi = field(&[1, 0, 1]);
        for c in [[1, 0], [-1, 0], [0, 1], [0, -1]] {
            assert!(is_root_of_unity(&FieldElement::from_ints(&gi, &c)));
        }
        assert!(!is_root_of_unity(&FieldElement::from_ints(&gi, &[1, 1])));
        assert!(!is_root_of_unity(&FieldElement::from_ints(&gi, &[0, 0])));
        // (3 + 4i)/5 has norm 1 but is not integral
        let x = FieldElement::new(&gi, vec![q(3, 5), q(4, 5)]);
        assert!(!is_root_of_unity(&x));
        let k3 = field(&[1, 1, 1]);
        assert!(is_root_of_unity(&FieldElement::theta(&k3).neg()));
        let k5 = field(&[1, -1, -1]);
        assert!(!is_root_of_unity(&FieldElement::theta(&k5)));
    }

    #[test]
    fn product_formula_small() {
        let gi = field(&[1, 0, 1]);
        let alpha = FieldElement::new(&gi, vec![q(7, 10), q(-3, 4)]);
        let mut total = 0.0;
        for v in support_places(&alpha).unwrap() {
            total += abs_value(&alpha, &v, DEFAULT_TOL).unwrap().ln().unwrap().value;
        }
        assert!(total.abs() < 1e-9, "{total}");
    }

    fn fields() -> Vec<Arc<NumberField>> {
        vec![field(&[1, 0, 1]), field(&[1, 0, -2]), field(&[1, -1, -1]), field(&[1, 1, 0, 1])]
    }

    fn element(k: &Arc<NumberField>, coords: &[(i64, i64)]) -> FieldElement {
        FieldElement::new(k, coords[..k.degree()].iter().map(|&(n, m)| q(n, m)).collect())
    }

    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn product_formula(which in 0usize..4, coords in prop::collection::vec((-30i64..=30, 1i64..=9), 3)) {
            let k = fields()[which].clone();
            let alpha = element(&k, &coords);
            prop_assume!(!alpha.is_zero());
            let mut total = Certified { value: 0.0, err: 0.0 };
            for v in support_places(&alpha).unwrap() {
                let l = abs_value(&alpha, &v, DEFAULT_TOL).unwrap().ln().unwrap();
                total.value += l.value;
                total.err += l.err;
            }
            prop_assert!(total.value.abs() <= total.err + 1e-9, "{:?}", total);
        }

        #[test]
        fn height_axioms(which in 0usize..4, coords in prop::collection::vec((-12i64..=12, 1i64..=6), 3), e in 2i64..4) {
            let k = fields()[which].clone();
            let alpha = element(&k, &coords);
            prop_assume!(!alpha.is_zero());
            let h = height(&alpha, DEFAULT_TOL).unwrap();
            prop_assert!(h.value >= -h.err);
            let inv = height(&alpha.inverse().unwrap(), DEFAULT_TOL).unwrap();
            prop_assert!(close(h.value, inv.value, 1e-9));
            let hp = height(&alpha.pow(e).unwrap(), DEFAULT_TOL).unwrap();
            prop_assert!(close(hp.value, e as f64 * h.value, 1e-9));
            let s = SSpec::infinite(&k);
            if is_s_integer(&alpha, &s).unwrap() {
                let ns = ln_rational(&s_norm(&alpha, &s).unwrap());
                prop_assert!(h.value + 1e-9 >= ns / k.degree() as f64);
            }
        }

        #[test]
        fn height_is_independent_of_field(which in 0usize..4, n in -500i64..=500, m in 1i64..=500) {
            let k = fields()[which].clone();
            let r = q(n, m);
            let in_k = height(&FieldElement::from_rational(&k, r.clone()), DEFAULT_TOL).unwrap();
            prop_assert!(close(in_k.value, crate::arith::rational_height(&r), 1e-9));
        }

        #[test]
        fn zero_height_means_root_of_unity(which in 0usize..4, coords in prop::collection::vec((-2i64..=2, 1i64..=2), 3)) {
            let k = fields()[which].clone();
            let alpha = element(&k, &coords);
            prop_assume!(!alpha.is_zero());
            let h = height(&alpha, DEFAULT_TOL).unwrap();
            prop_assert_eq!(h.value.abs() < 1e-9, is_root_of_unity(&alpha));
        }
    }
}
