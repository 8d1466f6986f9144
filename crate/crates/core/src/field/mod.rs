//! Number fields `K = Q[X]/(g)` with a certified field discriminant.

mod element;
mod kpoly;
mod prime;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::factorize;
use crate::poly::modp::Fp;
use crate::poly::{self, complex_roots, zpoly, Poly, RootEnclosure, RootKind};
use crate::{Error, Result};

pub use element::{element_arith, norm_trace, ArithOp, FieldElement};
pub use kpoly::KPoly;
pub use prime::{factor_prime, ord_at, PrimeIdeal, Valuation};

/// Largest supported field degree.
pub const MAX_FIELD_DEGREE: usize = 8;

/// Radius of the cached root enclosures of `g`.
pub const EMBEDDING_TOL: f64 = 1e-30;

/// How `D_K` was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// `disc(g)` squarefree, so `Z[θ]` is the maximal order.
    SquarefreeDisc,
    /// Quadratic field: `D_K` from the squarefree part of `disc(g)`.
    QuadraticRule,
    /// User-supplied `(D_K, index)`, checked against `disc(g)`.
    Supplied,
}

/// A number field given by a monic irreducible integer polynomial.
#[derive(Debug)]
pub struct NumberField {
    g: Poly,
    g_int: Vec<BigInt>,
    degree: usize,
    poly_disc: BigInt,
    disc: BigInt,
    index: BigInt,
    certificate: Certificate,
    embeddings: Vec<RootEnclosure>,
    r1: usize,
    r2: usize,
}

/// Serialized form of a field: defining polynomial plus optional discriminant data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub poly: Poly,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disc: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<String>,
}

impl FieldSpec {
    pub fn build(&self) -> Result<Arc<NumberField>> {
        let parse = |s: &str, key: &str| -> Result<BigInt> {
            s.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::InvalidInput(format!("field.{key}: not an integer: {s:?}")))
        };
        let supplied = match (&self.disc, &self.index) {
            (None, None) => None,
            (Some(d), Some(i)) => Some((parse(d, "disc")?, parse(i, "index")?)),
            (Some(d), None) => Some((parse(d, "disc")?, BigInt::one())),
            (None, Some(_)) => {
                return Err(Error::InvalidInput("field.index given without field.disc".into()))
            }
        };
        make_field(&self.poly, supplied)
    }
}

impl NumberField {
    /// `Q` itself, defined by `g = X`.
    pub fn rationals() -> Arc<NumberField> {
        make_field(&Poly::x(), None).expect("Q is a field")
    }

    pub fn poly(&self) -> &Poly {
        &self.g
    }

    /// `g` as integers, lowest degree first.
    pub(crate) fn g_int(&self) -> &[BigInt] {
        &self.g_int
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_rational(&self) -> bool {
        self.degree == 1
    }

    /// `D_K`.
    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    pub fn poly_discriminant(&self) -> &BigInt {
        &self.poly_disc
    }

    /// `[O_K : Z[θ]]`.
    pub fn index(&self) -> &BigInt {
        &self.index
    }

    pub fn certificate(&self) -> Certificate {
        self.certificate
    }

    pub fn r1(&self) -> usize {
        self.r1
    }

    pub fn r2(&self) -> usize {
        self.r2
    }

    /// Root enclosures of `g`: real roots, then one per conjugate pair. Place
    /// `i` of `K` is the embedding `θ ↦ embeddings()[i]`.
    pub fn embeddings(&self) -> &[RootEnclosure] {
        &self.embeddings
    }

    /// Enclosure of embedding `i` with radius ≤ `tol`, recomputed if the cache is too coarse.
    pub(crate) fn embedding(&self, i: usize, tol: f64) -> Result<RootEnclosure> {
        let cached = &self.embeddings[i];
        if cached.radius_f64() <= tol {
            return Ok(cached.clone());
        }
        let finer = complex_roots(&self.g, tol)?;
        Ok(finer[i].clone())
    }

    pub fn spec(&self) -> FieldSpec {
        let supplied = self.certificate == Certificate::Supplied;
        FieldSpec {
            poly: self.g.clone(),
            disc: supplied.then(|| self.disc.to_string()),
            index: supplied.then(|| self.index.to_string()),
        }
    }

    pub fn same_as(&self, other: &NumberField) -> bool {
        std::ptr::eq(self, other) || self.g == other.g
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[X]/({})", self.g)
    }
}

/// Builds `K = Q[X]/(g)` and certifies `D_K`.
///
/// `supplied = (D_K, index)` is required when `disc(g)` is not squarefree and
/// `deg g > 2`; it is also cross-checked whenever given.
pub fn make_field(g: &Poly, supplied: Option<(BigInt, BigInt)>) -> Result<Arc<NumberField>> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !g.is_monic() || !g.is_integral() {
        return Err(Error::NotMonicIntegral);
    }
    let d = g.degree();
    if d == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if d > MAX_FIELD_DEGREE {
        return Err(Error::DegreeLimit(d));
    }
    if !poly::is_irreducible(g)? {
        return Err(Error::Reducible);
    }
    let poly_disc = poly::discriminant(g)?.to_integer();
    let embeddings = complex_roots(g, EMBEDDING_TOL)?;
    let r1 = embeddings.iter().filter(|e| e.kind == RootKind::Real).count();
    let r2 = embeddings.len() - r1;
    let g_int: Vec<BigInt> = g.ascending().iter().map(|c| c.to_integer()).collect();

    let fact = factorize(&poly_disc)?;
    let squarefree = fact.factors.iter().all(|(_, e)| *e == 1);
    let auto = if squarefree {
        Some((poly_disc.clone(), BigInt::one(), Certificate::SquarefreeDisc))
    } else if d == 2 {
        let (m, k) = squarefree_split(&poly_disc, &fact.factors);
        let (dk, index) = if m.mod_floor(&BigInt::from(4)) == BigInt::one() {
            (m, k)
        } else {
            (m * 4, k / 2)
        };
        Some((dk, index, Certificate::QuadraticRule))
    } else {
        None
    };

    let (disc, index, certificate) = match (auto, supplied) {
        (Some((dk, idx, cert)), None) => (dk, idx, cert),
        (Some((dk, idx, cert)), Some((sd, si))) => {
            if sd != dk || si.abs() != idx {
                return Err(Error::InconsistentDiscriminant(format!(
                    "supplied (D_K, index) = ({sd}, {si}) but certified ({dk}, {idx})"
                )));
            }
            (dk, idx, cert)
        }
        (None, Some((sd, si))) => {
            check_supplied(&g_int, &poly_disc, &fact.factors, r2, &sd, &si)?;
            (sd, si.abs(), Certificate::Supplied)
        }
        (None, None) => return Err(Error::CannotCertifyMaximalOrder),
    };

    Ok(Arc::new(NumberField {
        g: g.clone(),
        g_int,
        degree: d,
        poly_disc,
        disc,
        index,
        certificate,
        embeddings,
        r1,
        r2,
    }))
}

/// `disc = m · k^2` with `m` squarefree (sign carried by `m`).
fn squarefree_split(disc: &BigInt, factors: &[(BigInt, u32)]) -> (BigInt, BigInt) {
    let mut m = if disc.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut k = BigInt::one();
    for (p, e) in factors {
        if e % 2 == 1 {
            m *= p;
        }
        k *= num_traits::pow(p.clone(), (*e / 2) as usize);
    }
    (m, k)
}

fn check_supplied(
    g: &[BigInt],
    poly_disc: &BigInt,
    factors: &[(BigInt, u32)],
    r2: usize,
    dk: &BigInt,
    index: &BigInt,
) -> Result<()> {
    let bad = |why: String| Err(Error::InconsistentDiscriminant(why));
    if index.is_zero() || dk.is_zero() {
        return bad("D_K and index must be nonzero".into());
    }
    if &(dk * index * index) != poly_disc {
        return bad(format!("disc(g) = {poly_disc} is not D_K * index^2 = {dk} * {index}^2"));
    }
    let expected_negative = r2 % 2 == 1;
    if dk.is_negative() != expected_negative {
        return bad(format!("sign of D_K = {dk} contradicts r2 = {r2}"));
    }
    let r = dk.mod_floor(&BigInt::from(4));
    if !(r.is_zero() || r.is_one()) {
        return bad(format!("D_K = {dk} is not 0 or 1 mod 4"));
    }
    for (p, e) in factors {
        if *e < 2 {
            continue;
        }
        let Some(maximal) = dedekind_p_maximal(g, p) else {
            return Err(Error::CannotCertifyMaximalOrder);
        };
        let divides_index = (index % p).is_zero();
        if maximal == divides_index {
            return bad(format!(
                "Dedekind criterion at p = {p} says Z[θ] is {}p-maximal, index = {index}",
                if maximal { "" } else { "not " }
            ));
        }
    }
    Ok(())
}

/// Dedekind's criterion: is `Z[θ]` maximal at `p`? `None` when `p` is too large.
pub(crate) fn dedekind_p_maximal(g: &[BigInt], p: &BigInt) -> Option<bool> {
    let fp = Fp::from_bigint(p)?;
    let factors = fp.factor(&fp.from_z(g));
    let lifted = factors.iter().fold(vec![BigInt::one()], |acc, (h, e)| {
        (0..*e).fold(acc, |a, _| zpoly::mul(&a, &fp.to_z(h)))
    });
    let diff = zpoly::sub(g, &lifted);
    let quotient: Vec<BigInt> = diff.iter().map(|c| c / p).collect();
    let fbar = fp.from_z(&quotient);
    Some(
        factors
            .iter()
            .filter(|(_, e)| *e >= 2)
            .all(|(h, _)| !fp.poly_rem(&fbar, h).is_empty()),
    )
}

/// `|D_K|` as `f64`, saturating.
pub fn abs_disc_f64(k: &NumberField) -> f64 {
    k.disc.abs().to_f64().unwrap_or(f64::INFINITY)
}
