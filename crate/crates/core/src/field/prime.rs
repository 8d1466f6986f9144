//! Prime ideals by Dedekind's theorem and their valuations.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{FieldElement, NumberField};
use crate::arith::{is_prime, valuation};
use crate::poly::hensel;
use crate::poly::modp::{Fp, FpPoly};
use crate::poly::zpoly::{self, ZPoly};
use crate::{Error, Result};

/// Largest Hensel precision exponent tried by [`ord_at`].
const MAX_PRECISION: u32 = 1 << 12;

/// `ord_P(α)`, with `ord_P(0) = ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

/// A prime `P` of `K` above a rational prime `p`, from a factor of `g mod p`.
#[derive(Clone)]
pub struct PrimeIdeal {
    pub p: BigInt,
    pub e: u32,
    pub f: u32,
    /// Position among the primes above `p`, in [`factor_prime`] order.
    pub index: usize,
    field: Arc<NumberField>,
    fp: Fp,
    residue: FpPoly,
    blocks: Arc<Vec<FpPoly>>,
}

impl PrimeIdeal {
    /// `N(P) = p^f`.
    pub fn norm(&self) -> BigInt {
        num_traits::pow(self.p.clone(), self.f as usize)
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// The irreducible factor of `g mod p` this prime comes from, lowest degree first.
    pub fn residue_factor(&self) -> &[u64] {
        &self.residue
    }

    /// The factor of `g` over `Z_p` belonging to this prime, modulo `p^k`.
    pub fn lifted_factor(&self, k: u32) -> ZPoly {
        hensel::lift(self.field.g_int(), &self.blocks, self.fp, k).swap_remove(self.index)
    }
}

impl PartialEq for PrimeIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_as(&other.field) && self.p == other.p && self.index == other.index
    }
}

impl Eq for PrimeIdeal {}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly = crate::poly::Poly::from_bigints(
            &self.residue.iter().rev().map(|&c| BigInt::from(c)).collect::<Vec<_>>(),
        );
        write!(f, "({}, {})", self.p, poly.to_string().replace('X', "θ"))
    }
}

impl fmt::Debug for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrimeIdeal{} e={} f={}", self, self.e, self.f)
    }
}

impl Serialize for PrimeIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PrimeIdeal", 5)?;
        st.serialize_field("p", &self.p.to_string())?;
        st.serialize_field("factor_index", &self.index)?;
        st.serialize_field("e", &self.e)?;
        st.serialize_field("f", &self.f)?;
        st.serialize_field("norm", &self.norm().to_string())?;
        st.end()
    }
}

/// The primes of `K` above `p`, ordered by residue factor (degree, then
/// coefficients from the leading one down, each in `[0, p)`).
pub fn factor_prime(k: &Arc<NumberField>, p: &BigInt) -> Result<Vec<PrimeIdeal>> {
    if p <= &BigInt::one() || !is_prime(p)? {
        return Err(Error::NotPrime(p.clone()));
    }
    if (k.index() % p).is_zero() {
        return Err(Error::IndexDivisor(p.clone()));
    }
    let fp = Fp::from_bigint(p)
        .ok_or_else(|| Error::InvalidInput(format!("prime {p} exceeds the 63-bit limit")))?;
    let factors = fp.factor(&fp.from_z(k.g_int()));
    let blocks: Vec<FpPoly> = factors
        .iter()
        .map(|(h, e)| (0..*e).fold(vec![1u64], |acc, _| fp.poly_mul(&acc, h)))
        .collect();
    let blocks = Arc::new(blocks);
    Ok(factors
        .into_iter()
        .enumerate()
        .map(|(index, (h, e))| PrimeIdeal {
            p: p.clone(),
            e,
            f: (h.len() - 1) as u32,
            index,
            field: Arc::clone(k),
            fp,
            residue: h,
            blocks: Arc::clone(&blocks),
        })
        .collect())
}

/// `ord_P(α)`.
///
/// With `α = a(θ)/D`, `a` integral: `f · ord_P(a(θ)) = v_p(Res(G_P, a))` where
/// `G_P` is the factor of `g` over `Z_p` attached to `P`, read modulo `p^k` for
/// `k` beyond the a-priori bound `v_p(N(a(θ)))`.
pub fn ord_at(alpha: &FieldElement, prime: &PrimeIdeal) -> Result<Valuation> {
    if !alpha.field().same_as(prime.field()) {
        return Err(Error::FieldMismatch);
    }
    if alpha.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let (a, den) = alpha.integral_parts();
    let a = zpoly::trimmed(a);
    let p = &prime.p;
    let norm = zpoly::resultant(prime.field.g_int(), &a);
    let v = valuation(&norm, p) as u64;
    let mut k = (2 * (prime.e as u64 * v + 1)).min(MAX_PRECISION as u64) as u32;
    loop {
        let pk = num_traits::pow(p.clone(), k as usize);
        let local = prime.lifted_factor(k);
        let r = zpoly::resultant(&local, &a) % &pk;
        if !r.is_zero() {
            let w = valuation(&r, p);
            debug_assert_eq!(w % prime.f, 0);
            let ord = (w / prime.f) as i64 - prime.e as i64 * valuation(&den, p) as i64;
            return Ok(Valuation::Finite(ord));
        }
        if k >= MAX_PRECISION {
            return Err(Error::PrecisionCap(p.clone()));
        }
        k = (k * 2).min(MAX_PRECISION);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rational_valuation, Rational};
    use crate::field::make_field;
    use crate::poly::Poly;
    use proptest::prelude::*;

    fn field(c: &[i64], supplied: Option<(i64, i64)>) -> Arc<NumberField> {
        make_field(
            &Poly::from_ints(c),
            supplied.map(|(d, i)| (BigInt::from(d), BigInt::from(i))),
        )
        .unwrap()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn gaussian_primes() {
        let k = field(&[1, 0, 1], None);
        let five = factor_prime(&k, &big(5)).unwrap();
        assert_eq!(five.len(), 2);
        assert!(five.iter().all(|p| p.e == 1 && p.f == 1 && p.norm() == big(5)));
        let two = factor_prime(&k, &big(2)).unwrap();
        assert_eq!((two.len(), two[0].e, two[0].f, two[0].norm()), (1, 2, 1, big(2)));
        let three = factor_prime(&k, &big(3)).unwrap();
        assert_eq!((three.len(), three[0].e, three[0].f, three[0].norm()), (1, 1, 2, big(9)));
        assert!(matches!(factor_prime(&k, &big(6)), Err(Error::NotPrime(_))));
    }

    #[test]
    fn gaussian_valuations() {
        let k = field(&[1, 0, 1], None);
        let five = factor_prime(&k, &big(5)).unwrap();
        let two_plus_i = FieldElement::from_ints(&k, &[2, 1]);
        assert_eq!(five[0].to_string(), "(5, θ + 2)");
        assert_eq!(ord_at(&two_plus_i, &five[0]).unwrap(), Valuation::Finite(1));
        assert_eq!(ord_at(&two_plus_i, &five[1]).unwrap(), Valuation::Finite(0));
        let five_el = FieldElement::from_int(&k, 5);
        assert_eq!(ord_at(&five_el, &five[0]).unwrap(), Valuation::Finite(1));
        assert_eq!(ord_at(&five_el, &five[1]).unwrap(), Valuation::Finite(1));
        assert_eq!(ord_at(&FieldElement::zero(&k), &five[0]).unwrap(), Valuation::Infinite);
        let two = factor_prime(&k, &big(2)).unwrap();
        assert_eq!(ord_at(&FieldElement::from_int(&k, 2), &two[0]).unwrap(), Valuation::Finite(2));
        let one_plus_i_over_4 = FieldElement::new(&k, vec![Rational::new(1.into(), 4.into()); 2]);
        assert_eq!(ord_at(&one_plus_i_over_4, &two[0]).unwrap(), Valuation::Finite(-3));
    }

    #[test]
    fn index_divisors_rejected() {
        let k = field(&[1, 0, -5], None);
        assert!(matches!(factor_prime(&k, &big(2)), Err(Error::IndexDivisor(_))));
        assert_eq!(
            Error::IndexDivisor(big(2)).to_string(),
            "unsupported prime: index divisor 2"
        );
        assert_eq!(factor_prime(&k, &big(5)).unwrap()[0].e, 2);
    }

    #[test]
    fn rational_field_reduces_to_padic_valuation() {
        let q = NumberField::rationals();
        for p in [2i64, 3, 7, 101] {
            let pr = factor_prime(&q, &big(p)).unwrap();
            assert_eq!(pr.len(), 1);
            for (n, d) in [(12i64, 1i64), (7, 8), (-303, 49), (1, 1), (98, 27)] {
                let r = Rational::new(n.into(), d.into());
                let x = FieldElement::from_rational(&q, r.clone());
                assert_eq!(
                    ord_at(&x, &pr[0]).unwrap(),
                    Valuation::Finite(rational_valuation(&r, &big(p)))
                );
            }
        }
    }

    fn fields() -> Vec<Arc<NumberField>> {
        vec![
            field(&[1, 0, 1], None),
            field(&[1, 0, -2], None),
            field(&[1, -1, -1], None),
            field(&[1, 0, 0, -2], Some((-108, 1))),
            field(&[1, 0, -5], None),
            field(&[1, 1, 0, 1], None),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]
        #[test]
        fn valuations_sum_to_norm_valuation(
            which in 0usize..6,
            coords in prop::collection::vec((-40i64..=40, 1i64..=12), 3),
            p in prop::sample::select(vec![2i64, 3, 5, 7, 11, 13, 29, 31]),
        ) {
            let k = fields()[which].clone();
            let d = k.degree();
            let alpha = FieldElement::new(
                &k,
                coords[..d].iter().map(|&(n, m)| Rational::new(n.into(), m.into())).collect(),
            );
            prop_assume!(!alpha.is_zero());
            let pb = big(p);
            let primes = match factor_prime(&k, &pb) {
                Err(Error::IndexDivisor(_)) => return Ok(()),
                other => other.unwrap(),
            };
            let total: u32 = primes.iter().map(|q| q.e * q.f).sum();
            prop_assert_eq!(total as usize, d);
            let sum: i64 = primes
                .iter()
                .map(|q| q.f as i64 * ord_at(&alpha, q).unwrap().finite().unwrap())
                .sum();
            prop_assert_eq!(sum, rational_valuation(&alpha.norm(), &pb));
        }
    }
}
