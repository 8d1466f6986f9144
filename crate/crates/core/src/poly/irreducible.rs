//! Irreducibility over `Q` for small degree by modular factorization and
//! factor-combination search.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::modp::{Fp, FpPoly};
use super::zpoly::{self, ZPoly};
use super::{hensel, Poly};
use crate::arith::small_primes;
use crate::{Error, Result};

/// Largest degree accepted by [`is_irreducible`].
pub const MAX_DEGREE: usize = 8;

const PRIMES_TRIED: usize = 6;

/// Exact irreducibility test over `Q` for `deg g ≤ 8`.
pub fn is_irreducible(g: &Poly) -> Result<bool> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = g.degree();
    if n > MAX_DEGREE {
        return Err(Error::DegreeLimit(n));
    }
    if n == 0 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    if !super::is_squarefree(g) {
        return Ok(false);
    }
    let (_, f) = g.primitive_integer();
    if f[0].is_zero() {
        return Ok(false);
    }
    Ok(zassenhaus_irreducible(&f))
}

/// Modular factorizations at a handful of good primes: `(p, factors)`.
fn good_factorizations(f: &[BigInt]) -> Vec<(Fp, Vec<FpPoly>)> {
    let n = zpoly::deg(f);
    let lc = &f[n];
    let mut out = Vec::new();
    for &p in small_primes().iter().skip(1) {
        let fp = Fp::new(p);
        if fp.reduce(lc) == 0 {
            continue;
        }
        let fbar = fp.monic(&fp.from_z(f));
        let sf = fp.squarefree(&fbar);
        if sf.len() != 1 || sf[0].1 != 1 {
            continue;
        }
        out.push((fp, fp.berlekamp(&fbar)));
        if out.len() == PRIMES_TRIED {
            break;
        }
    }
    out
}

fn zassenhaus_irreducible(f: &[BigInt]) -> bool {
    let n = zpoly::deg(f);
    let facts = good_factorizations(f);
    // degrees of possible proper factors, intersected over primes
    let mut possible = vec![true; n + 1];
    for (_, fs) in &facts {
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for g in fs {
            let d = g.len() - 1;
            for s in (d..=n).rev() {
                if sums[s - d] {
                    sums[s] = true;
                }
            }
        }
        for (slot, ok) in possible.iter_mut().zip(&sums) {
            *slot &= ok;
        }
    }
    if (1..n).all(|d| !possible[d]) {
        return true;
    }
    let (fp, fs) = facts
        .into_iter()
        .min_by_key(|(_, fs)| fs.len())
        .expect("some prime is good for a squarefree polynomial");
    !has_proper_factor(f, &fs, fp, &possible)
}

/// Landau–Mignotte style bound on the coefficients of any factor of `f`,
/// times the leading coefficient.
fn coefficient_bound(f: &[BigInt]) -> BigInt {
    let n = zpoly::deg(f);
    let norm = zpoly::norm2_sq(f).sqrt() + BigInt::one();
    let lc = f[n].abs();
    (BigInt::one() << n) * norm * &lc
}

fn has_proper_factor(f: &[BigInt], fs: &[FpPoly], fp: Fp, possible: &[bool]) -> bool {
    let n = zpoly::deg(f);
    let lc = f[n].clone();
    let bound = coefficient_bound(f) * 2;
    let p = BigInt::from(fp.p);
    let mut k = 1u32;
    let mut pk = p.clone();
    while pk <= bound {
        pk *= &p;
        k += 1;
    }
    // monic version of f modulo p^k
    let lc_inv = lc.modinv(&pk).expect("p does not divide lc");
    let f_monic = zpoly::reduce_mod(&zpoly::scale(f, &lc_inv), &pk);
    let lifted = hensel::lift(&f_monic, fs, fp, k);
    let r = lifted.len();
    for size in 1..=r / 2 {
        for subset in combinations(r, size) {
            let degree: usize = subset.iter().map(|&i| zpoly::deg(&lifted[i])).sum();
            if degree == 0 || degree >= n || !possible[degree] {
                continue;
            }
            let prod = subset
                .iter()
                .fold(vec![lc.clone()], |acc, &i| zpoly::reduce_mod(&zpoly::mul(&acc, &lifted[i]), &pk));
            let cand = zpoly::symmetric_mod(&prod, &pk);
            let c = zpoly::content(&cand);
            if c.is_zero() {
                continue;
            }
            let cand: ZPoly = zpoly::div_exact(&cand, &c);
            if zpoly::divide(f, &cand).is_some() {
                return true;
            }
        }
    }
    false
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    /// Searches for a rational root or a quadratic factor `c2 X^2 + c1 X + c0`
    /// with `c2 | lc`, `c0 | f(0)` and `|c1| ≤ 2 c2 (1 + max |a_i|)` (Cauchy's
    /// root bound). Complete for degree ≤ 5.
    fn has_small_factor_oracle(f: &Poly) -> bool {
        let (_, z) = f.primitive_integer();
        let n = z.len() - 1;
        let lc = z[n].clone();
        let c0 = z[0].clone();
        if c0.is_zero() {
            return true;
        }
        let divisors = |m: &BigInt| -> Vec<BigInt> {
            let m = m.abs();
            let mut out = Vec::new();
            let mut d = BigInt::one();
            while d <= m {
                if (&m % &d).is_zero() {
                    out.push(d.clone());
                    out.push(-d.clone());
                }
                d += 1;
            }
            out
        };
        let dl = divisors(&lc);
        let d0 = divisors(&c0);
        for a in &dl {
            for b in &d0 {
                if zpoly::divide(&z, &[b.clone(), a.clone()]).is_some() {
                    return true;
                }
            }
        }
        if n < 4 {
            return false;
        }
        let max_abs: i64 = z.iter().map(|c| i64::try_from(c.abs()).unwrap()).max().unwrap();
        for a in dl.iter().filter(|a| a.is_positive()) {
            let mid = 2 * i64::try_from(a).unwrap() * (1 + max_abs);
            for b in &d0 {
                for c in -mid..=mid {
                    if zpoly::divide(&z, &[b.clone(), BigInt::from(c), a.clone()]).is_some() {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn examples() {
        assert!(is_irreducible(&p(&[1, 0, 1])).unwrap());
        assert!(!is_irreducible(&p(&[1, 0, -1])).unwrap());
        assert!(is_irreducible(&p(&[1, 0, 0, 0, 1])).unwrap());
        assert!(is_irreducible(&p(&[1, 0, 0, -2])).unwrap());
        assert!(!is_irreducible(&p(&[1, 0, 0, 0, 4])).unwrap());
        assert!(is_irreducible(&p(&[1, 0, -10, 0, 1])).unwrap());
        let nine = Poly::from_ints(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert!(matches!(is_irreducible(&nine), Err(Error::DegreeLimit(9))));
    }

    #[test]
    fn products_are_reducible() {
        let a = p(&[1, 0, 0, 0, 1]);
        let b = p(&[1, 1, 0, 1]);
        assert!(!is_irreducible(&a.mul(&b)).unwrap());
        let c = p(&[3, 0, 0, 5]);
        let d = p(&[2, -7, 1]);
        assert!(!is_irreducible(&c.mul(&d)).unwrap());
        assert!(!is_irreducible(&p(&[1, 0, 1]).mul(&p(&[1, 0, 2])).mul(&p(&[1, 0, 3])).mul(&p(&[1, 0, 5]))).unwrap());
    }

    #[test]
    fn agrees_with_factor_search() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..150 {
            let n = rng.gen_range(2..=5);
            let mut c: Vec<i64> = (0..n).map(|_| rng.gen_range(-6..=6)).collect();
            c.insert(0, rng.gen_range(1..=3));
            let f = p(&c);
            if !crate::poly::is_squarefree(&f) {
                continue;
            }
            let got = is_irreducible(&f).unwrap();
            assert_eq!(got, !has_small_factor_oracle(&f), "f = {f}");
        }
    }
}
