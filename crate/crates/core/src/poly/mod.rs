//! Univariate polynomials over `Q`.
//!
//! [`Poly`] stores coefficients leading-first, `a_0 X^n + a_1 X^(n-1) + ... + a_n`,
//! which is also the order used by every serializer in this crate. Internal
//! algorithms that prefer lowest-degree-first work on [`zpoly::ZPoly`] or on
//! `Vec<Rational>` obtained from [`Poly::ascending`].

pub(crate) mod hensel;
mod irreducible;
pub(crate) mod modp;
mod roots;
pub(crate) mod zpoly;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{format_rational, parse_rational, Rational};
use crate::{Error, Result};

pub use irreducible::is_irreducible;
pub use roots::{complex_roots, RootEnclosure, RootKind, DEFAULT_ROOT_TOL};
pub use crate::places::height_of_poly;
pub(crate) use roots::eval_enclosed;

/// Polynomial with rational coefficients, leading coefficient first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    /// Builds a polynomial from leading-first coefficients, dropping leading zeros.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let first = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(coeffs.len());
        Poly { coeffs: coeffs[first..].to_vec() }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Poly::new(coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    /// Parses leading-first rational strings, e.g. `["1", "0", "-2"]` for `X^2 - 2`.
    pub fn parse(coeffs: &[impl AsRef<str>]) -> Result<Self> {
        coeffs
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(Poly::new)
    }

    pub fn from_ascending(mut coeffs: Vec<Rational>) -> Self {
        coeffs.reverse();
        Poly::new(coeffs)
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![Rational::one()] }
    }

    /// The monomial `X`.
    pub fn x() -> Self {
        Poly::from_ints(&[1, 0])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0 (check [`Poly::is_zero`] first).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Leading-first coefficients `a_0, ..., a_n`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn ascending(&self) -> Vec<Rational> {
        self.coeffs.iter().rev().cloned().collect()
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.first().cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of `X^k`.
    pub fn coeff(&self, k: usize) -> Rational {
        if self.is_zero() || k > self.degree() {
            return Rational::zero();
        }
        self.coeffs[self.degree() - k].clone()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        let n = self.degree();
        Poly::new(
            self.coeffs
                .iter()
                .take(n)
                .enumerate()
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(n - i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let a = self.ascending();
        let b = other.ascending();
        let n = a.len().max(b.len());
        Poly::from_ascending(
            (0..n)
                .map(|i| {
                    a.get(i).cloned().unwrap_or_else(Rational::zero)
                        + b.get(i).cloned().unwrap_or_else(Rational::zero)
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Division with remainder over `Q`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = self.ascending();
        let d = divisor.ascending();
        let dd = d.len() - 1;
        let lead_inv = Rational::one() / &d[dd];
        if r.len() < d.len() {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dj) in d.iter().enumerate() {
                    r[k + j] -= &c * dj;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Poly::from_ascending(q), Poly::from_ascending(r)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&(Rational::one() / self.leading()))
    }

    /// Monic greatest common divisor over `Q` (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(c, P)` with `self = c · P`, `P` a primitive integer polynomial with
    /// positive leading coefficient, coefficients lowest degree first.
    pub fn primitive_integer(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .ascending()
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let mut cont = zpoly::content(&ints);
        if ints.last().is_some_and(|c| c.is_negative()) {
            cont = -cont;
        }
        let prim = zpoly::div_exact(&ints, &cont);
        (Rational::new(cont, den), prim)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.leading().is_one()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = n - i;
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || k == 0;
            if show_coeff {
                write!(f, "{}", format_rational(&mag))?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}X", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}X^{k}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::arith::rational_vec_str::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        crate::arith::rational_vec_str::deserialize(d).map(Poly::new)
    }
}

/// Resultant `Res(f, g)`, computed on integer multiples of `f` and `g` by the
/// subresultant PRS and rescaled.
pub fn resultant(f: &Poly, g: &Poly) -> Result<Rational> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (cf, pf) = f.primitive_integer();
    let (cg, pg) = g.primitive_integer();
    let r = zpoly::resultant(&pf, &pg);
    let scale = num_traits::pow(cf, g.degree()) * num_traits::pow(cg, f.degree());
    Ok(Rational::from_integer(r) * scale)
}

/// `D(f) = (-1)^(n(n-1)/2) · Res(f, f') / a_0`.
pub fn discriminant(f: &Poly) -> Result<Rational> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.degree();
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let r = resultant(f, &f.derivative())? / f.leading();
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
}

/// True iff `gcd(f, f')` is constant.
pub fn is_squarefree(f: &Poly) -> bool {
    if f.is_zero() {
        return false;
    }
    f.gcd(&f.derivative()).degree() == 0
}
