use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

const TRIAL_LIMIT: u64 = 100_000;
const RHO_STEPS: u64 = 1 << 20;
const RHO_ATTEMPTS: u64 = 6;

/// Miller-Rabin with the first 13 prime bases is deterministic below this bound.
const MR_DETERMINISTIC_LIMIT: &str = "3317044064679887385961981";

/// Complete prime factorization `sign · Π p^e` with primes strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    pub factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn product(&self) -> BigInt {
        let mut acc = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            acc *= num_traits::pow(p.clone(), *e as usize);
        }
        acc
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }
}

/// Primes below 10^5.
pub fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i < n {
            if sieve[i] {
                let mut j = i * i;
                while j < n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        sieve
            .iter()
            .enumerate()
            .filter_map(|(k, &is_p)| is_p.then_some(k as u64))
            .collect()
    })
}

fn mr_limit() -> &'static BigInt {
    static LIMIT: OnceLock<BigInt> = OnceLock::new();
    LIMIT.get_or_init(|| MR_DETERMINISTIC_LIMIT.parse().unwrap())
}

fn miller_rabin(n: &BigInt, bases: &[u64]) -> bool {
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for &a in bases {
        let a = BigInt::from(a) % n;
        if a.is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Deterministic primality test. Below ~3.3·10^24 Miller-Rabin with fixed bases
/// is exact; above it a Pocklington certificate is required, which can fail
/// with [`Error::FactorizationBudget`] if `n - 1` will not factor far enough.
pub fn is_prime(n: &BigInt) -> Result<bool> {
    if n < &BigInt::from(2) {
        return Ok(false);
    }
    if let Some(small) = n.to_u64() {
        if small < TRIAL_LIMIT {
            return Ok(small_primes().binary_search(&small).is_ok());
        }
    }
    for &p in small_primes().iter().take(50) {
        if (n % p).is_zero() {
            return Ok(false);
        }
    }
    const BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    if !miller_rabin(n, &BASES) {
        return Ok(false);
    }
    if n < mr_limit() {
        return Ok(true);
    }
    pocklington(n)
}

fn pocklington(n: &BigInt) -> Result<bool> {
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut rest = nm1.clone();
    let mut primes = Vec::new();
    for &p in small_primes() {
        let pb = BigInt::from(p);
        if (&rest % &pb).is_zero() {
            primes.push(pb.clone());
            while (&rest % &pb).is_zero() {
                rest /= &pb;
            }
        }
    }
    // Peel further prime factors off with rho while they are cheap to find.
    let mut pending = vec![rest.clone()];
    while let Some(c) = pending.pop() {
        if c.is_one() {
            continue;
        }
        if is_prime(&c)? {
            primes.push(c);
            continue;
        }
        match rho_split(&c) {
            Some(d) => {
                let other = &c / &d;
                pending.push(d);
                pending.push(other);
            }
            None => continue,
        }
    }
    primes.sort();
    primes.dedup();
    let mut covered = BigInt::one();
    for q in &primes {
        let mut t = nm1.clone();
        while (&t % q).is_zero() {
            t /= q;
            covered *= q;
        }
    }
    if &covered * &covered <= *n {
        return Err(Error::FactorizationBudget(n.clone()));
    }
    'prime: for q in &primes {
        let exp = &nm1 / q;
        for a in 2u64..200 {
            let a = BigInt::from(a);
            if a.modpow(&nm1, n) != one {
                return Ok(false);
            }
            let t = a.modpow(&exp, n) - &one;
            if t.gcd(n).is_one() {
                continue 'prime;
            }
        }
        return Err(Error::FactorizationBudget(n.clone()));
    }
    Ok(true)
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn rho_u64(n: u64) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    for c in 1..=RHO_ATTEMPTS {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        let mut steps = 0u64;
        while g == 1 && steps < RHO_STEPS {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let lim = 128.min(r - k);
                for _ in 0..lim {
                    y = f(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += lim;
            }
            steps += r;
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g > 1 && g < n {
            return Some(g);
        }
    }
    None
}

fn rho_big(n: &BigInt) -> Option<BigInt> {
    let one = BigInt::one();
    for c in 1..=RHO_ATTEMPTS {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut r = 1u64;
        let mut q = one.clone();
        let mut g = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut steps = 0u64;
        while g.is_one() && steps < RHO_STEPS {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let lim = 128.min(r - k);
                for _ in 0..lim {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += lim;
            }
            steps += r;
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && &g != n {
            return Some(g);
        }
    }
    None
}

/// Nontrivial divisor of a composite `n` by Pollard-Brent rho, within budget.
fn rho_split(n: &BigInt) -> Option<BigInt> {
    match n.to_u64() {
        Some(small) if small < (1 << 62) => rho_u64(small).map(BigInt::from),
        _ => rho_big(n),
    }
}

/// Complete factorization of a nonzero integer: trial division to 10^5, then
/// Pollard rho on the cofactor. Inputs whose second-largest prime factor is
/// beyond the rho budget fail with [`Error::FactorizationBudget`].
pub fn factorize(n: &BigInt) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut rest = n.abs();
    let mut found: Vec<(BigInt, u32)> = Vec::new();
    for &p in small_primes() {
        if rest.is_one() || BigInt::from(p * p) > rest {
            break;
        }
        let pb = BigInt::from(p);
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            found.push((pb, e));
        }
    }
    let mut pending = vec![rest];
    let mut large: Vec<BigInt> = Vec::new();
    while let Some(c) = pending.pop() {
        if c.is_one() {
            continue;
        }
        let limit = BigInt::from(TRIAL_LIMIT) * BigInt::from(TRIAL_LIMIT);
        if c < limit || is_prime(&c)? {
            large.push(c);
            continue;
        }
        match rho_split(&c) {
            Some(d) => {
                let other = &c / &d;
                pending.push(d);
                pending.push(other);
            }
            None => return Err(Error::FactorizationBudget(c)),
        }
    }
    large.sort();
    for p in large {
        match found.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => found.push((p, 1)),
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(Factorization { sign, factors: found })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(n: i64) -> Vec<(i64, u32)> {
        factorize(&BigInt::from(n))
            .unwrap()
            .factors
            .into_iter()
            .map(|(p, e)| (p.to_i64().unwrap(), e))
            .collect()
    }

    fn trial_division_oracle(mut n: u64) -> Vec<(i64, u32)> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p as i64, e));
            }
            p += 1;
        }
        if n > 1 {
            out.push((n as i64, 1));
        }
        out
    }

    #[test]
    fn examples() {
        assert_eq!(fac(12), vec![(2, 2), (3, 1)]);
        let one = factorize(&BigInt::from(1)).unwrap();
        assert!(one.factors.is_empty());
        assert_eq!(one.sign, 1);
        assert_eq!(fac(9991), vec![(97, 1), (103, 1)]);
        assert_eq!(trial_division_oracle(9991), vec![(97, 1), (103, 1)]);
        assert_eq!(factorize(&BigInt::from(-18)).unwrap().sign, -1);
        assert!(matches!(factorize(&BigInt::from(0)), Err(Error::ZeroInput)));
    }

    #[test]
    fn rho_path() {
        // Two primes above the trial-division range.
        let p: BigInt = BigInt::from(1_000_003u64);
        let q: BigInt = BigInt::from(999_999_937u64);
        let n = &p * &q * BigInt::from(4);
        let f = factorize(&n).unwrap();
        assert_eq!(f.factors, vec![(BigInt::from(2), 2), (p, 1), (q, 1)]);
        assert_eq!(f.product(), n);
    }

    #[test]
    fn large_prime_cofactor() {
        // 2^89 - 1 is prime (above the Miller-Rabin deterministic range).
        let m89 = (BigInt::one() << 89) - 1;
        assert!(is_prime(&m89).unwrap());
        let n = &m89 * BigInt::from(6);
        let f = factorize(&n).unwrap();
        assert_eq!(f.product(), n);
        assert_eq!(f.factors.last().unwrap().0, m89);
    }

    #[test]
    fn primality() {
        for (n, expected) in [(2, true), (1, false), (561, false), (7919, true), (1_000_000_007, true)] {
            assert_eq!(is_prime(&BigInt::from(n)).unwrap(), expected, "{n}");
        }
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn product_reconstructs(n in 1u64..5_000_000_000u64) {
            let f = factorize(&BigInt::from(n)).unwrap();
            prop_assert_eq!(f.product(), BigInt::from(n));
            let expected = trial_division_oracle(n);
            let got: Vec<(i64, u32)> = f.factors.iter().map(|(p, e)| (p.to_i64().unwrap(), *e)).collect();
            prop_assert_eq!(got, expected);
        }
    }
}
