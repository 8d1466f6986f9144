//! Elements of a number field in the power basis `1, θ, ..., θ^(d-1)`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::NumberField;
use crate::arith::{format_rational, Rational};
use crate::poly::Poly;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// An element of `K`, stored as `d` rational coordinates.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coords: Vec<Rational>,
}

impl FieldElement {
    /// Builds `Σ c_i θ^i`; longer vectors are reduced modulo `g`.
    pub fn new(field: &Arc<NumberField>, coords: Vec<Rational>) -> Self {
        let poly = Poly::from_ascending(coords);
        Self::from_poly(field, &poly)
    }

    pub fn from_ints(field: &Arc<NumberField>, coords: &[i64]) -> Self {
        Self::new(field, coords.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    /// `a(θ)` for a polynomial `a`.
    pub fn from_poly(field: &Arc<NumberField>, a: &Poly) -> Self {
        let r = a.rem(field.poly()).expect("g is nonzero");
        let mut coords = r.ascending();
        coords.resize(field.degree(), Rational::zero());
        FieldElement { field: Arc::clone(field), coords }
    }

    pub fn from_rational(field: &Arc<NumberField>, q: Rational) -> Self {
        let mut coords = vec![Rational::zero(); field.degree()];
        coords[0] = q;
        FieldElement { field: Arc::clone(field), coords }
    }

    pub fn from_int(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_rational(field, Rational::from_integer(n.into()))
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_int(field, 1)
    }

    /// The generator `θ`.
    pub fn theta(field: &Arc<NumberField>) -> Self {
        Self::from_poly(field, &Poly::x())
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// The coordinate polynomial `a` with `self = a(θ)`, leading-first.
    pub fn as_poly(&self) -> Poly {
        Poly::from_ascending(self.coords.clone())
    }

    /// `Some(q)` when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| self.coords[0].clone())
    }

    /// `(a, D)` with `self = a(θ) / D`, `a` integral (lowest degree first) and `D > 0` minimal.
    pub fn integral_parts(&self) -> (Vec<BigInt>, BigInt) {
        let den = self.coords.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let a = self
            .coords
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        (a, den)
    }

    /// Lowest common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        self.integral_parts().1
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field.same_as(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(FieldElement {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(FieldElement {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(Self::from_poly(&self.field, &self.as_poly().mul(&other.as_poly())))
    }

    pub fn scale(&self, q: &Rational) -> FieldElement {
        FieldElement {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().map(|a| a * q).collect(),
        }
    }

    /// Inverse via the extended Euclidean algorithm on `a` and `g`.
    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.field.poly().clone(), self.as_poly());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t);
        }
        // r0 is a nonzero constant because g is irreducible
        let inv = t0.scale(&(Rational::one() / r0.leading()));
        Ok(Self::from_poly(&self.field, &inv))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        self.mul(&other.inverse()?)
    }

    /// `self^k` for any integer `k` (`0^k` with `k < 0` is an error).
    pub fn pow(&self, k: i64) -> Result<FieldElement> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(&self.field);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            b = b.mul(&b)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Matrix of multiplication by `self`: column `j` holds `self · θ^j`.
    pub fn mult_matrix(&self) -> Vec<Vec<Rational>> {
        let d = self.field.degree();
        let mut cols = Vec::with_capacity(d);
        let mut cur = self.clone();
        let theta = Self::theta(&self.field);
        for _ in 0..d {
            cols.push(cur.coords.clone());
            cur = cur.mul(&theta).expect("same field");
        }
        (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
    }

    pub fn norm(&self) -> Rational {
        norm_trace(self).0
    }

    /// Characteristic polynomial `det(X·I - M_α)` by the Faddeev–LeVerrier recurrence.
    pub fn charpoly(&self) -> Poly {
        let a = self.mult_matrix();
        let d = a.len();
        let zero_matrix = || vec![vec![Rational::zero(); d]; d];
        let matmul = |x: &[Vec<Rational>], y: &[Vec<Rational>]| {
            let mut out = zero_matrix();
            for i in 0..d {
                for k in 0..d {
                    if x[i][k].is_zero() {
                        continue;
                    }
                    for j in 0..d {
                        out[i][j] += &x[i][k] * &y[k][j];
                    }
                }
            }
            out
        };
        // ascending coefficients c_0..c_d
        let mut c = vec![Rational::zero(); d + 1];
        c[d] = Rational::one();
        let mut m = zero_matrix();
        for k in 1..=d {
            let mut next = matmul(&a, &m);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] += &c[d - k + 1];
            }
            m = next;
            let am = matmul(&a, &m);
            let tr: Rational = (0..d).map(|i| am[i][i].clone()).sum();
            c[d - k] = -tr / Rational::from_integer(BigInt::from(k));
        }
        Poly::from_ascending(c)
    }

    pub fn trace(&self) -> Rational {
        norm_trace(self).1
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_as(&other.field) && self.coords == other.coords
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.as_poly().to_string().replace('X', "θ");
        write!(f, "{s}")
    }
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }
}

/// Applies `op` to two elements of the same field.
pub fn element_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b),
    }
}

/// `(N(α), Tr(α))`: determinant and trace of the multiplication matrix.
pub fn norm_trace(alpha: &FieldElement) -> (Rational, Rational) {
    let m = alpha.mult_matrix();
    let trace = (0..m.len()).map(|i| m[i][i].clone()).sum();
    (determinant(&m), trace)
}

/// Determinant by fraction-free (Bareiss) elimination after clearing denominators.
fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let den = m
        .iter()
        .flatten()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
                .collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Rational::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = if n == 0 { BigInt::one() } else { a[n - 1][n - 1].clone() };
    Rational::new(sign * det, num_traits::pow(den, n))
}

impl FieldElement {
    /// `true` when all coordinates are integers (so the element is an algebraic integer).
    pub fn has_integral_coords(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::poly::resultant;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn gaussian() -> Arc<NumberField> {
        make_field(&Poly::from_ints(&[1, 0, 1]), None).unwrap()
    }

    fn sqrt2() -> Arc<NumberField> {
        make_field(&Poly::from_ints(&[1, 0, -2]), None).unwrap()
    }

    fn cbrt2() -> Arc<NumberField> {
        make_field(&Poly::from_ints(&[1, 0, 0, -2]), Some((BigInt::from(-108), BigInt::one())))
            .unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let k = gaussian();
        let a = FieldElement::from_ints(&k, &[1, 1]);
        let b = FieldElement::from_ints(&k, &[1, -1]);
        assert_eq!(element_arith(&a, &b, ArithOp::Mul).unwrap(), FieldElement::from_int(&k, 2));

        let k2 = sqrt2();
        let t = FieldElement::theta(&k2);
        let inv = element_arith(&FieldElement::one(&k2), &t, ArithOp::Div).unwrap();
        assert_eq!(inv, FieldElement::new(&k2, vec![q(0, 1), q(1, 2)]));

        assert!(matches!(
            element_arith(&a, &FieldElement::zero(&k), ArithOp::Div),
            Err(Error::DivisionByZero)
        ));
        assert!(matches!(a.add(&t), Err(Error::FieldMismatch)));
    }

    #[test]
    fn norm_trace_examples() {
        let k = gaussian();
        let a = FieldElement::from_ints(&k, &[1, 1]);
        assert_eq!(norm_trace(&a), (q(2, 1), q(2, 1)));
        let c = cbrt2();
        assert_eq!(norm_trace(&FieldElement::theta(&c)), (q(2, 1), q(0, 1)));
        assert_eq!(norm_trace(&FieldElement::zero(&c)), (q(0, 1), q(0, 1)));
    }

    #[test]
    fn pow_and_display() {
        let k = gaussian();
        let i = FieldElement::theta(&k);
        assert_eq!(i.pow(4).unwrap(), FieldElement::one(&k));
        assert_eq!(i.pow(-1).unwrap(), i.neg());
        assert_eq!(FieldElement::from_ints(&k, &[3, -2]).to_string(), "-2*θ + 3");
        assert_eq!(
            serde_json::to_string(&FieldElement::new(&k, vec![q(1, 2), q(-3, 1)])).unwrap(),
            r#"["1/2","-3"]"#
        );
    }

    fn element(k: &Arc<NumberField>) -> impl Strategy<Value = FieldElement> {
        let k = Arc::clone(k);
        let d = k.degree();
        prop::collection::vec((-30i64..=30, 1i64..=6), d)
            .prop_map(move |c| FieldElement::new(&k, c.iter().map(|&(n, m)| q(n, m)).collect()))
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(a in element(&cbrt2()), b in element(&cbrt2())) {
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(ab.norm(), a.norm() * b.norm());
        }

        #[test]
        fn norm_matches_resultant(a in element(&cbrt2())) {
            let k = a.field().clone();
            let expected = if a.is_zero() { Rational::zero() } else { resultant(k.poly(), &a.as_poly()).unwrap() };
            prop_assert_eq!(a.norm(), expected);
        }

        #[test]
        fn charpoly_matches_norm_and_trace(a in element(&cbrt2())) {
            let chi = a.charpoly();
            prop_assert_eq!(chi.degree(), 3);
            prop_assert_eq!(chi.coeff(0), -a.norm());
            prop_assert_eq!(chi.coeff(2), -a.trace());
            let k = a.field().clone();
            let value = chi
                .coeffs()
                .iter()
                .fold(FieldElement::zero(&k), |acc, c| {
                    acc.mul(&a).unwrap().add(&FieldElement::from_rational(&k, c.clone())).unwrap()
                });
            prop_assert!(value.is_zero());
        }

        #[test]
        fn inverse_roundtrip(a in element(&gaussian())) {
            prop_assume!(!a.is_zero());
            let k = a.field().clone();
            prop_assert_eq!(a.mul(&a.inverse().unwrap()).unwrap(), FieldElement::one(&k));
        }

        #[test]
        fn trace_is_additive(a in element(&sqrt2()), b in element(&sqrt2())) {
            prop_assert_eq!(a.add(&b).unwrap().trace(), a.trace() + b.trace());
        }
    }
}
