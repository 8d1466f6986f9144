//! Certified isolation of complex roots.
//!
//! Approximations come from an `f64` Aberth iteration, are polished by the
//! Weierstrass (Durand–Kerner) iteration on dyadic rationals, and are then
//! certified with the Weierstrass corrections `W_i = f(z_i) / (a_0 Π_{j≠i} (z_i - z_j))`:
//! the disks `D(z_i, n |W_i|)` cover the roots, and a union of `m` of them that
//! is disjoint from the others holds exactly `m` roots. Pairwise disjoint disks
//! therefore isolate one root each. All of the certification is exact.

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::Poly;
use crate::arith::{rational_to_f64, Rational};
use crate::{Error, Result};

/// Default radius bound for root enclosures.
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

const MAX_PRECISION_BITS: u64 = 1 << 14;
const WDK_ITERATIONS: usize = 80;

type Cq = Complex<Rational>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootKind {
    Real,
    /// Stands for the root `center` and its conjugate; `Im(center) > 0`.
    ComplexPair,
}

/// A disk holding exactly one root of a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootEnclosure {
    pub re: Rational,
    pub im: Rational,
    pub radius: Rational,
    pub kind: RootKind,
}

impl RootEnclosure {
    pub fn center_f64(&self) -> Complex<f64> {
        Complex::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    pub fn radius_f64(&self) -> f64 {
        rational_to_f64(&self.radius)
    }

    pub fn enclosed(&self) -> Enclosed {
        Enclosed { re: self.re.clone(), im: self.im.clone(), rad: self.radius.clone() }
    }

    /// The root and, for a pair, its conjugate.
    pub fn roots(&self) -> Vec<Enclosed> {
        let e = self.enclosed();
        match self.kind {
            RootKind::Real => vec![e],
            RootKind::ComplexPair => {
                let c = e.conj();
                vec![e, c]
            }
        }
    }
}

impl Serialize for RootEnclosure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RootEnclosure", 4)?;
        st.serialize_field("re", &format_decimal(&self.re, 30))?;
        st.serialize_field("im", &format_decimal(&self.im, 30))?;
        st.serialize_field("radius", &rational_to_f64(&self.radius))?;
        st.serialize_field("kind", &self.kind)?;
        st.end()
    }
}

/// A complex disk `D(re + i·im, rad)` with exact rational data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosed {
    pub re: Rational,
    pub im: Rational,
    pub rad: Rational,
}

impl Enclosed {
    pub fn exact(re: Rational, im: Rational) -> Self {
        Enclosed { re, im, rad: Rational::zero() }
    }

    pub fn conj(&self) -> Self {
        Enclosed { re: self.re.clone(), im: -self.im.clone(), rad: self.rad.clone() }
    }

    fn center(&self) -> Cq {
        Complex::new(self.re.clone(), self.im.clone())
    }

    /// Upper bound for `|z|` over the disk.
    pub fn abs_upper(&self) -> Rational {
        sqrt_upper(&norm_sqr(&self.center()), 64) + &self.rad
    }

    /// Lower bound for `|z|` over the disk, clamped at zero.
    pub fn abs_lower(&self) -> Rational {
        let lo = sqrt_lower(&norm_sqr(&self.center()), 64) - &self.rad;
        if lo.is_negative() {
            Rational::zero()
        } else {
            lo
        }
    }

    pub fn center_f64(&self) -> Complex<f64> {
        Complex::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    /// Product of two disks (contains every product of their points).
    pub fn mul(&self, other: &Enclosed) -> Enclosed {
        let c = self.center() * other.center();
        let a = sqrt_upper(&norm_sqr(&self.center()), 64);
        let b = sqrt_upper(&norm_sqr(&other.center()), 64);
        let rad = &a * &other.rad + &b * &self.rad + &self.rad * &other.rad;
        Enclosed { re: c.re, im: c.im, rad }
    }
}

fn norm_sqr(z: &Cq) -> Rational {
    &z.re * &z.re + &z.im * &z.im
}

/// A dyadic upper bound for `sqrt(q)` with about `bits` fractional bits.
pub(crate) fn sqrt_upper(q: &Rational, bits: u64) -> Rational {
    if q.is_zero() {
        return Rational::zero();
    }
    let scale = BigInt::one() << (2 * bits);
    let scaled = (q * Rational::from_integer(scale)).ceil().to_integer();
    let s = scaled.sqrt() + BigInt::one();
    Rational::new(s, BigInt::one() << bits)
}

/// A dyadic lower bound for `sqrt(q)`.
pub(crate) fn sqrt_lower(q: &Rational, bits: u64) -> Rational {
    if q.is_zero() {
        return Rational::zero();
    }
    let scale = BigInt::one() << (2 * bits);
    let scaled = (q * Rational::from_integer(scale)).floor().to_integer();
    Rational::new(scaled.sqrt(), BigInt::one() << bits)
}

fn round_dyadic(q: &Rational, bits: u64) -> Rational {
    let scale = BigInt::one() << bits;
    let n = (q * Rational::from_integer(scale.clone())).round().to_integer();
    Rational::new(n, scale)
}

fn round_c(z: &Cq, bits: u64) -> Cq {
    Complex::new(round_dyadic(&z.re, bits), round_dyadic(&z.im, bits))
}

fn to_cq(z: Complex<f64>) -> Cq {
    let f = |x: f64| Rational::from_float(x).unwrap_or_else(Rational::zero);
    Complex::new(f(z.re), f(z.im))
}

fn horner(coeffs: &[Rational], z: &Cq) -> Cq {
    coeffs.iter().fold(Complex::new(Rational::zero(), Rational::zero()), |acc, c| {
        acc * z + Complex::new(c.clone(), Rational::zero())
    })
}

/// Decimal rendering truncated to `digits` fractional digits.
pub(crate) fn format_decimal(q: &Rational, digits: usize) -> String {
    let neg = q.is_negative();
    let a = q.abs();
    let scale = num_traits::pow(BigInt::from(10), digits);
    let n = (a * Rational::from_integer(scale.clone())).round().to_integer();
    let (ip, fp) = (&n / &scale, &n % &scale);
    let mut frac = fp.to_string();
    while frac.len() < digits {
        frac.insert(0, '0');
    }
    let frac = frac.trim_end_matches('0');
    let sign = if neg && !n.is_zero() { "-" } else { "" };
    if frac.is_empty() {
        format!("{sign}{ip}")
    } else {
        format!("{sign}{ip}.{frac}")
    }
}

/// Certified enclosures of the roots of a squarefree `f`, radius ≤ `tol`.
///
/// Real roots come first in increasing order, followed by one representative
/// (with positive imaginary part) per conjugate pair.
pub fn complex_roots(f: &Poly, tol: f64) -> Result<Vec<RootEnclosure>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.degree();
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if !super::is_squarefree(f) {
        return Err(Error::NotSquarefree);
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("root tolerance must be positive, got {tol}")));
    }
    let (_, ints) = f.primitive_integer();
    let coeffs: Vec<Rational> = ints.iter().rev().cloned().map(Rational::from_integer).collect();
    let tol_q = Rational::from_float(tol).expect("finite tolerance");
    if n == 1 {
        let root = -&coeffs[1] / &coeffs[0];
        return Ok(vec![RootEnclosure {
            re: root,
            im: Rational::zero(),
            radius: Rational::zero(),
            kind: RootKind::Real,
        }]);
    }
    let mut z: Vec<Cq> = aberth_f64(&coeffs).into_iter().map(to_cq).collect();
    let need = (n as f64 / tol).log2().ceil().max(0.0) as u64;
    let mut bits = (need + 32).max(64);
    loop {
        z = z.iter().map(|w| round_c(w, bits)).collect();
        wdk(&coeffs, &mut z, bits);
        if let Some(encs) = certify(&coeffs, &z, bits, &tol_q) {
            return Ok(encs);
        }
        bits *= 2;
        if bits > MAX_PRECISION_BITS {
            return Err(Error::RootCertification(format!(
                "no certificate for {f} at tolerance {tol:e}"
            )));
        }
    }
}

fn weierstrass(coeffs: &[Rational], z: &[Cq], i: usize) -> Option<Cq> {
    let mut den = Complex::new(coeffs[0].clone(), Rational::zero());
    for (j, zj) in z.iter().enumerate() {
        if j != i {
            den = den * (&z[i] - zj);
        }
    }
    if den.re.is_zero() && den.im.is_zero() {
        return None;
    }
    Some(horner(coeffs, &z[i]) / den)
}

fn wdk(coeffs: &[Rational], z: &mut [Cq], bits: u64) {
    let eps = Rational::new(BigInt::one(), BigInt::one() << (2 * bits));
    for _ in 0..WDK_ITERATIONS {
        let mut biggest = Rational::zero();
        let mut next = z.to_vec();
        for i in 0..z.len() {
            let Some(w) = weierstrass(coeffs, z, i) else {
                // coincident approximations; perturb and retry
                next[i] = round_c(&(&z[i] + Complex::new(Rational::zero(), eps.clone() * BigInt::from(1u64 << 20))), bits);
                biggest = Rational::one();
                continue;
            };
            let m = norm_sqr(&w);
            if m > biggest {
                biggest = m;
            }
            next[i] = round_c(&(&z[i] - w), bits);
        }
        z.clone_from_slice(&next);
        if biggest <= eps {
            break;
        }
    }
}

/// Symmetrizes the approximations under conjugation, then certifies.
fn certify(coeffs: &[Rational], z: &[Cq], bits: u64, tol: &Rational) -> Option<Vec<RootEnclosure>> {
    let n = z.len();
    let mut centers = z.to_vec();
    let mut kind = vec![None; n];
    for i in 0..n {
        if kind[i].is_some() {
            continue;
        }
        let conj = Complex::new(z[i].re.clone(), -z[i].im.clone());
        let j = (0..n)
            .filter(|&j| kind[j].is_none())
            .min_by(|&a, &b| norm_sqr(&(&z[a] - &conj)).cmp(&norm_sqr(&(&z[b] - &conj))))?;
        if j == i {
            centers[i] = Complex::new(z[i].re.clone(), Rational::zero());
            kind[i] = Some(RootKind::Real);
        } else {
            if z[i].im.is_positive() == z[j].im.is_positive() {
                return None;
            }
            let (up, down) = if z[i].im.is_positive() { (i, j) } else { (j, i) };
            centers[down] = Complex::new(centers[up].re.clone(), -centers[up].im.clone());
            kind[up] = Some(RootKind::ComplexPair);
            kind[down] = Some(RootKind::ComplexPair);
        }
    }
    let nq = Rational::from_integer(BigInt::from(n));
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let w = weierstrass(coeffs, &centers, i)?;
        let r = sqrt_upper(&norm_sqr(&w), bits + 16) * &nq;
        if &r > tol {
            return None;
        }
        radii.push(r);
    }
    for i in 0..n {
        for j in i + 1..n {
            let s = &radii[i] + &radii[j];
            if norm_sqr(&(&centers[i] - &centers[j])) <= &s * &s {
                return None;
            }
        }
    }
    let mut out: Vec<RootEnclosure> = (0..n)
        .filter(|&i| kind[i] == Some(RootKind::Real) || centers[i].im.is_positive())
        .map(|i| RootEnclosure {
            re: centers[i].re.clone(),
            im: centers[i].im.clone(),
            radius: radii[i].clone(),
            kind: if centers[i].im.is_zero() { RootKind::Real } else { RootKind::ComplexPair },
        })
        .collect();
    out.sort_by(|a, b| {
        (a.kind == RootKind::ComplexPair)
            .cmp(&(b.kind == RootKind::ComplexPair))
            .then_with(|| a.re.cmp(&b.re))
            .then_with(|| a.im.cmp(&b.im))
    });
    Some(out)
}

/// Ehrlich–Aberth iteration in `f64`; coefficients leading-first.
fn aberth_f64(coeffs: &[Rational]) -> Vec<Complex<f64>> {
    let n = coeffs.len() - 1;
    let a: Vec<f64> = coeffs.iter().map(rational_to_f64).collect();
    let lead = a[0];
    let monic: Vec<f64> = a.iter().map(|c| c / lead).collect();
    let radius = monic
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.abs().powf(1.0 / k as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex<f64>> = (0..n)
        .map(|k| Complex::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4))
        .collect();
    let eval = |x: Complex<f64>| -> (Complex<f64>, Complex<f64>) {
        let mut p = Complex::new(0.0, 0.0);
        let mut dp = Complex::new(0.0, 0.0);
        for c in &monic {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex<f64> = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex::new(1.0, 0.0) - ratio * s);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z.iter()
        .map(|w| if w.re.is_finite() && w.im.is_finite() { *w } else { Complex::new(0.5, 0.5) })
        .collect()
}

/// Encloses `a(z)` for all `z` in the disk `x`, with `a` given leading-first.
///
/// Uses the Taylor expansion at the center: `|a(z) - a(c)| ≤ Σ_k |a^(k)(c)|/k! r^k`.
pub(crate) fn eval_enclosed(a: &[Rational], x: &Enclosed) -> Enclosed {
    let c = x.center();
    if a.is_empty() {
        return Enclosed::exact(Rational::zero(), Rational::zero());
    }
    // Taylor shift: coefficients of a(c + t) by repeated synthetic division
    let mut work: Vec<Cq> = a.iter().map(|q| Complex::new(q.clone(), Rational::zero())).collect();
    let n = work.len() - 1;
    let mut taylor = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        for i in 1..work.len() {
            let prev = work[i - 1].clone();
            work[i] = &work[i] + prev * &c;
        }
        taylor.push(work.pop().unwrap());
    }
    let value = taylor[0].clone();
    let mut rad = Rational::zero();
    if !x.rad.is_zero() {
        let mut rk = Rational::one();
        for t in taylor.iter().skip(1) {
            rk *= &x.rad;
            rad += sqrt_upper(&norm_sqr(t), 64) * &rk;
        }
    }
    Enclosed { re: value.re, im: value.im, rad }
}
