//! Polynomials over `F_p` for word-sized primes: squarefree decomposition and
//! Berlekamp factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// Coefficients in `[0, p)`, lowest degree first, no trailing zeros.
pub type FpPoly = Vec<u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    /// `F_p` for a `BigInt` prime, if it fits in 63 bits.
    pub fn from_bigint(p: &BigInt) -> Option<Self> {
        p.to_u64().filter(|&v| v >= 2 && v < (1 << 63)).map(Fp::new)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % self.p as u128) as u64
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    pub fn reduce(&self, c: &BigInt) -> u64 {
        c.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    pub fn from_z(&self, a: &[BigInt]) -> FpPoly {
        trimmed(a.iter().map(|c| self.reduce(c)).collect())
    }

    pub fn to_z(&self, a: &[u64]) -> Vec<BigInt> {
        a.iter().map(|&c| BigInt::from(c)).collect()
    }

    pub fn poly_add(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let n = a.len().max(b.len());
        trimmed(
            (0..n)
                .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
                .collect(),
        )
    }

    pub fn poly_sub(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let n = a.len().max(b.len());
        trimmed(
            (0..n)
                .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
                .collect(),
        )
    }

    pub fn poly_scale(&self, a: &[u64], c: u64) -> FpPoly {
        trimmed(a.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn poly_mul(&self, a: &[u64], b: &[u64]) -> FpPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        trimmed(out)
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn poly_divrem(&self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = a.to_vec();
        trim(&mut r);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let db = b.len() - 1;
        let inv = self.inv(b[db]);
        let mut q = vec![0u64; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.mul(r[k + db], inv);
            if c != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    r[k + j] = self.sub(r[k + j], self.mul(c, bj));
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        (trimmed(q), trimmed(r))
    }

    pub fn poly_rem(&self, a: &[u64], b: &[u64]) -> FpPoly {
        self.poly_divrem(a, b).1
    }

    pub fn poly_div(&self, a: &[u64], b: &[u64]) -> FpPoly {
        self.poly_divrem(a, b).0
    }

    pub fn monic(&self, a: &[u64]) -> FpPoly {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.poly_scale(a, self.inv(lc)),
        }
    }

    pub fn gcd(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let mut a = trimmed(a.to_vec());
        let mut b = trimmed(b.to_vec());
        while !b.is_empty() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s a + t b = g = gcd(a, b)` monic.
    pub fn ext_gcd(&self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly, FpPoly) {
        let (mut r0, mut r1) = (trimmed(a.to_vec()), trimmed(b.to_vec()));
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.poly_divrem(&r0, &r1);
            let s = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            let t = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let Some(&lc) = r0.last() else {
            return (Vec::new(), Vec::new(), Vec::new());
        };
        let inv = self.inv(lc);
        (
            self.poly_scale(&r0, inv),
            self.poly_scale(&s0, inv),
            self.poly_scale(&t0, inv),
        )
    }

    pub fn derivative(&self, a: &[u64]) -> FpPoly {
        trimmed(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mul(c, i as u64 % self.p))
                .collect(),
        )
    }

    pub fn powmod(&self, base: &[u64], mut e: u128, m: &[u64]) -> FpPoly {
        let mut result = self.poly_rem(&[1], m);
        let mut b = self.poly_rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                result = self.poly_rem(&self.poly_mul(&result, &b), m);
            }
            b = self.poly_rem(&self.poly_mul(&b, &b), m);
            e >>= 1;
        }
        result
    }

    /// Squarefree decomposition of a monic polynomial: pairs `(h, e)` with
    /// `a = Π h^e`, the `h` squarefree and pairwise coprime.
    pub fn squarefree(&self, a: &[u64]) -> Vec<(FpPoly, u32)> {
        let a = self.monic(a);
        let mut out = Vec::new();
        if a.len() <= 1 {
            return out;
        }
        let mut c = self.gcd(&a, &self.derivative(&a));
        let mut w = self.poly_div(&a, &c);
        let mut i = 1u32;
        while w.len() > 1 {
            let y = self.gcd(&w, &c);
            let z = self.poly_div(&w, &y);
            if z.len() > 1 {
                out.push((z, i));
            }
            i += 1;
            c = self.poly_div(&c, &y);
            w = y;
        }
        if c.len() > 1 {
            // c is a p-th power: c(X) = h(X^p) = h(X)^p over F_p
            let p = self.p as usize;
            let h: FpPoly = c.iter().step_by(p).copied().collect();
            for (g, e) in self.squarefree(&h) {
                out.push((g, e * self.p as u32));
            }
        }
        out
    }

    /// Monic irreducible factors of a squarefree monic polynomial.
    pub fn berlekamp(&self, f: &[u64]) -> Vec<FpPoly> {
        let n = f.len() - 1;
        if n <= 1 {
            return vec![f.to_vec()];
        }
        let basis = self.berlekamp_basis(f);
        let r = basis.len();
        let mut factors = vec![f.to_vec()];
        if r == 1 {
            return factors;
        }
        for v in basis.iter().filter(|v| v.len() > 1) {
            let mut next = Vec::new();
            for u in factors {
                if u.len() <= 2 {
                    next.push(u);
                    continue;
                }
                next.extend(self.split_by(&u, v));
            }
            factors = next;
            if factors.len() == r {
                break;
            }
        }
        debug_assert_eq!(factors.len(), r);
        factors
    }

    /// Splits `u` as far as the Berlekamp vector `v` allows.
    fn split_by(&self, u: &[u64], v: &[u64]) -> Vec<FpPoly> {
        let vu = self.poly_rem(v, u);
        if vu.len() <= 1 {
            return vec![u.to_vec()];
        }
        if self.p <= 1000 {
            let mut parts = vec![u.to_vec()];
            for s in 0..self.p {
                let shifted = self.poly_sub(&vu, &[s]);
                let mut next = Vec::new();
                for w in parts {
                    let g = self.gcd(&w, &shifted);
                    if g.len() > 1 && g.len() < w.len() {
                        next.push(self.poly_div(&w, &g));
                        next.push(g);
                    } else {
                        next.push(w);
                    }
                }
                parts = next;
            }
            return parts;
        }
        let half = (self.p as u128 - 1) / 2;
        for c in 0..256u64 {
            let shifted = self.poly_add(&vu, &[c]);
            let pw = self.powmod(&shifted, half, u);
            let g = self.gcd(u, &self.poly_sub(&pw, &[1]));
            if g.len() > 1 && g.len() < u.len() {
                let rest = self.poly_div(u, &g);
                let mut out = self.split_by(&g, v);
                out.extend(self.split_by(&rest, v));
                return out;
            }
        }
        vec![u.to_vec()]
    }

    /// Basis of `{v : v^p ≡ v mod f}`; its size is the number of irreducible factors.
    fn berlekamp_basis(&self, f: &[u64]) -> Vec<FpPoly> {
        let n = f.len() - 1;
        let xp = self.powmod(&[0, 1], self.p as u128, f);
        // rows[i] = X^{ip} mod f − X^i
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
        let mut cur: FpPoly = vec![1];
        for i in 0..n {
            let mut row = cur.clone();
            row.resize(n, 0);
            row[i] = self.sub(row[i], 1);
            rows.push(row);
            cur = self.poly_rem(&self.poly_mul(&cur, &xp), f);
        }
        // left null space of `rows`: solve Mᵀ v = 0
        let mut m: Vec<Vec<u64>> = (0..n).map(|j| (0..n).map(|i| rows[i][j]).collect()).collect();
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(pr) = (row..n).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(row, pr);
            let inv = self.inv(m[row][col]);
            for c in 0..n {
                m[row][c] = self.mul(m[row][c], inv);
            }
            for r in 0..n {
                if r != row && m[r][col] != 0 {
                    let factor = m[r][col];
                    for c in 0..n {
                        let t = self.mul(factor, m[row][c]);
                        m[r][c] = self.sub(m[r][c], t);
                    }
                }
            }
            pivot_cols.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u64; n];
                v[fc] = 1;
                for (r, &pc) in pivot_cols.iter().enumerate() {
                    v[pc] = self.sub(0, m[r][fc]);
                }
                trimmed(v)
            })
            .collect()
    }

    /// Complete factorization of a nonzero polynomial into monic irreducibles
    /// with multiplicities, ordered by degree then by coefficients.
    pub fn factor(&self, a: &[u64]) -> Vec<(FpPoly, u32)> {
        let mut out: Vec<(FpPoly, u32)> = self
            .squarefree(a)
            .into_iter()
            .flat_map(|(h, e)| self.berlekamp(&h).into_iter().map(move |g| (g, e)))
            .collect();
        out.sort_by(|x, y| {
            x.0.len()
                .cmp(&y.0.len())
                .then_with(|| x.0.iter().rev().cmp(y.0.iter().rev()))
        });
        out
    }
}

pub fn trim(p: &mut FpPoly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub fn trimmed(mut p: FpPoly) -> FpPoly {
    trim(&mut p);
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(fp: &Fp, fs: &[(FpPoly, u32)]) -> FpPoly {
        fs.iter().fold(vec![1], |acc, (g, e)| {
            (0..*e).fold(acc, |a, _| fp.poly_mul(&a, g))
        })
    }

    fn is_irreducible_brute(fp: &Fp, f: &[u64]) -> bool {
        // every monic polynomial of degree ≤ n/2 as a candidate divisor
        let n = f.len() - 1;
        let p = fp.p;
        for d in 1..=n / 2 {
            let count = p.pow(d as u32);
            for code in 0..count {
                let mut g: Vec<u64> = (0..d).map(|i| (code / p.pow(i as u32)) % p).collect();
                g.push(1);
                if fp.poly_rem(f, &g).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn gaussian_integers_mod_small_primes() {
        let f = vec![1, 0, 1];
        let f5 = Fp::new(5).factor(&f);
        assert_eq!(f5, vec![(vec![2, 1], 1), (vec![3, 1], 1)]);
        let f2 = Fp::new(2).factor(&f);
        assert_eq!(f2, vec![(vec![1, 1], 2)]);
        let f3 = Fp::new(3).factor(&f);
        assert_eq!(f3, vec![(vec![1, 0, 1], 1)]);
    }

    #[test]
    fn pth_power_parts() {
        let fp = Fp::new(3);
        // (X + 1)^3 (X + 2)
        let a = fp.poly_mul(&fp.poly_mul(&[1, 1], &fp.poly_mul(&[1, 1], &[1, 1])), &[2, 1]);
        let fs = fp.factor(&a);
        assert_eq!(fs, vec![(vec![1, 1], 3), (vec![2, 1], 1)]);
    }

    #[test]
    fn large_prime_splitting() {
        let fp = Fp::new(1_000_000_007);
        let roots = [3u64, 17, 123_456, 999_999_000];
        let f = roots.iter().fold(vec![1u64], |acc, &r| fp.poly_mul(&acc, &[fp.sub(0, r), 1]));
        let fs = fp.factor(&f);
        assert_eq!(fs.len(), 4);
        assert_eq!(product(&fp, &fs), f);
    }

    #[test]
    fn ext_gcd_identity() {
        let fp = Fp::new(7);
        let a = vec![1, 2, 3, 1];
        let b = vec![5, 0, 1];
        let (g, s, t) = fp.ext_gcd(&a, &b);
        let lhs = fp.poly_add(&fp.poly_mul(&s, &a), &fp.poly_mul(&t, &b));
        assert_eq!(lhs, g);
    }

    #[test]
    fn factorization_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for &p in &[2u64, 3, 5, 7, 11] {
            let fp = Fp::new(p);
            for _ in 0..60 {
                let n = rng.gen_range(1..=6);
                let mut f: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
                f.push(1);
                let fs = fp.factor(&f);
                assert_eq!(product(&fp, &fs), f, "p={p} f={f:?}");
                for (g, _) in &fs {
                    assert!(is_irreducible_brute(&fp, g), "p={p} g={g:?}");
                }
                for i in 0..fs.len() {
                    for j in i + 1..fs.len() {
                        assert_ne!(fs[i].0, fs[j].0);
                    }
                }
            }
        }
    }
}
