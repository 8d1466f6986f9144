//! Dense integer polynomials, lowest degree first. Internal representation for
//! resultants, Hensel lifting and valuation work.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub type ZPoly = Vec<BigInt>;

pub fn trim(p: &mut ZPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub fn trimmed(mut p: ZPoly) -> ZPoly {
    trim(&mut p);
    p
}

/// Degree of a trimmed nonzero polynomial.
pub fn deg(p: &[BigInt]) -> usize {
    p.len().saturating_sub(1)
}

pub fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trimmed(out)
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            x - y
        })
        .collect();
    trimmed(out)
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            x + y
        })
        .collect();
    trimmed(out)
}

pub fn scale(a: &[BigInt], c: &BigInt) -> ZPoly {
    trimmed(a.iter().map(|x| x * c).collect())
}

/// Reduces every coefficient into the symmetric range `(-m/2, m/2]`.
pub fn symmetric_mod(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    trimmed(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

pub fn reduce_mod(a: &[BigInt], m: &BigInt) -> ZPoly {
    trimmed(a.iter().map(|c| c.mod_floor(m)).collect())
}

/// Pseudo-remainder: the remainder of `lc(b)^(deg a - deg b + 1) · a` by `b`.
pub fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = deg(b);
    let lb = b[db].clone();
    let mut r: ZPoly = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return r;
    }
    let delta = deg(&r) - db;
    let mut steps = 0u32;
    while !r.is_empty() && deg(&r) >= db {
        let dr = deg(&r);
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[j + shift] -= &lr * bj;
        }
        trim(&mut r);
        steps += 1;
    }
    let extra = delta as u32 + 1 - steps;
    if extra > 0 {
        let f = num_traits::pow(lb, extra as usize);
        r = scale(&r, &f);
    }
    r
}

/// Exact division of every coefficient by `c`.
pub fn div_exact(a: &[BigInt], c: &BigInt) -> ZPoly {
    a.iter()
        .map(|x| {
            debug_assert!((x % c).is_zero());
            x / c
        })
        .collect()
}

/// Resultant of two integer polynomials by the subresultant PRS; every
/// intermediate division is exact, so no fractions appear.
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut a = trimmed(a.to_vec());
    let mut b = trimmed(b.to_vec());
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let (da, db) = (deg(&a), deg(&b));
    if db == 0 {
        return num_traits::pow(b[0].clone(), da);
    }
    if da == 0 {
        return num_traits::pow(a[0].clone(), db);
    }
    let mut sign = BigInt::one();
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
    }
    let ca = content(&a);
    let cb = content(&b);
    a = div_exact(&a, &ca);
    b = div_exact(&b, &cb);
    let t = num_traits::pow(ca, deg(&b)) * num_traits::pow(cb, deg(&a));
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (da, db) = (deg(&a), deg(&b));
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        let divisor = &g * num_traits::pow(h.clone(), delta);
        b = div_exact(&r, &divisor);
        g = a[deg(&a)].clone();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
        };
        if b.is_empty() {
            return BigInt::zero();
        }
        if deg(&b) == 0 {
            let da = deg(&a);
            let lb = b[0].clone();
            let hh = num_traits::pow(lb, da) / num_traits::pow(h, da - 1);
            return sign * t * hh;
        }
    }
}

/// Exact quotient of `a` by a polynomial `b` over `Z`, if the division is exact.
pub fn divide(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let mut r = trimmed(a.to_vec());
    let b = trimmed(b.to_vec());
    if b.is_empty() {
        return None;
    }
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() < b.len() {
        return None;
    }
    let db = deg(&b);
    let lb = &b[db];
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    while !r.is_empty() && deg(&r) >= db {
        let dr = deg(&r);
        let (c, rem) = r[dr].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate() {
            r[j + shift] -= &c * bj;
        }
        q[shift] = c;
        trim(&mut r);
    }
    if r.is_empty() {
        Some(trimmed(q))
    } else {
        None
    }
}

/// Euclidean 2-norm squared.
pub fn norm2_sq(a: &[BigInt]) -> BigInt {
    a.iter().map(|c| c * c).sum()
}
