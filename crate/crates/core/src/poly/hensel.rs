//! Linear Hensel lifting of coprime factorizations modulo `p` to `p^k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::modp::{Fp, FpPoly};
use super::zpoly::{self, ZPoly};

/// Lifts `f ≡ Π factors (mod p)` to `mod p^k`.
///
/// `f` must be monic modulo `p^k` and the factors monic and pairwise coprime
/// modulo `p`. The lifted factors are monic with coefficients in `[0, p^k)`.
pub fn lift(f: &[BigInt], factors: &[FpPoly], fp: Fp, k: u32) -> Vec<ZPoly> {
    let pk = num_traits::pow(BigInt::from(fp.p), k as usize);
    let mut rest = zpoly::reduce_mod(f, &pk);
    let mut out = Vec::with_capacity(factors.len());
    for (i, a) in factors.iter().enumerate() {
        if i + 1 == factors.len() {
            out.push(rest);
            break;
        }
        let b = factors[i + 1..]
            .iter()
            .fold(vec![1u64], |acc, g| fp.poly_mul(&acc, g));
        let (la, lb) = lift_two(&rest, a, &b, fp, k);
        out.push(la);
        rest = lb;
    }
    out
}

/// Lifts `f ≡ a·b (mod p)` to `f ≡ A·B (mod p^k)` with `A ≡ a`, `B ≡ b`.
pub fn lift_two(f: &[BigInt], a: &[u64], b: &[u64], fp: Fp, k: u32) -> (ZPoly, ZPoly) {
    let p = BigInt::from(fp.p);
    if k == 0 {
        return (vec![BigInt::one()], vec![BigInt::one()]);
    }
    let (g, s, t) = fp.ext_gcd(a, b);
    debug_assert_eq!(g, vec![1]);
    let mut big_a = fp.to_z(a);
    let mut big_b = fp.to_z(b);
    let mut m = p.clone();
    for _ in 1..k {
        let next = &m * &p;
        let prod = zpoly::mul(&big_a, &big_b);
        let diff = zpoly::reduce_mod(&zpoly::sub(f, &prod), &next);
        let e: Vec<BigInt> = diff.iter().map(|c| c.div_floor(&m)).collect();
        let e = fp.from_z(&e);
        // a δb + b δa ≡ e with deg δa < deg a
        let (q, da) = fp.poly_divrem(&fp.poly_mul(&e, &t), a);
        let db = fp.poly_add(&fp.poly_mul(&e, &s), &fp.poly_mul(&q, b));
        big_a = zpoly::reduce_mod(&zpoly::add(&big_a, &zpoly::scale(&fp.to_z(&da), &m)), &next);
        big_b = zpoly::reduce_mod(&zpoly::add(&big_b, &zpoly::scale(&fp.to_z(&db), &m)), &next);
        m = next;
    }
    (big_a, big_b)
}
