//! Polynomials over `F_q` for word-size primes, lowest degree first.

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type FpPoly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub q: u64,
}

impl Fp {
    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.q as u128) as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.q - b % self.q)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.q as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.q;
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
        assert!(a % self.q != 0, "inverse of zero in F_q");
        self.pow(a, self.q - 2)
    }

    pub fn trim(&self, mut a: FpPoly) -> FpPoly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn poly_add(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        self.trim(out)
    }

    pub fn poly_sub(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        self.trim(out)
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
        self.trim(out)
    }

    pub fn scale(&self, a: &[u64], c: u64) -> FpPoly {
        self.trim(a.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn div_rem(&self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly) {
        assert!(!b.is_empty(), "polynomial division by zero");
        let db = b.len() - 1;
        if a.len() <= db {
            return (Vec::new(), self.trim(a.to_vec()));
        }
        let inv = self.inv(b[db]);
        let mut rem = a.to_vec();
        let mut quot = vec![0u64; a.len() - db];
        for k in (0..quot.len()).rev() {
            let c = self.mul(rem[k + db], inv);
            if c == 0 {
                continue;
            }
            for (j, &bc) in b.iter().enumerate() {
                rem[k + j] = self.sub(rem[k + j], self.mul(c, bc));
            }
            quot[k] = c;
        }
        rem.truncate(db);
        (self.trim(quot), self.trim(rem))
    }

    pub fn rem(&self, a: &[u64], b: &[u64]) -> FpPoly {
        self.div_rem(a, b).1
    }

    pub fn monic(&self, a: &[u64]) -> FpPoly {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, self.inv(lc)),
        }
    }

    pub fn gcd(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let mut x = self.trim(a.to_vec());
        let mut y = self.trim(b.to_vec());
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = std::mem::replace(&mut y, r);
        }
        self.monic(&x)
    }

    /// `(s, t)` with `s a + t b = 1`, for coprime `a`, `b`.
    pub fn xgcd(&self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly) {
        let (mut r0, mut r1) = (self.trim(a.to_vec()), self.trim(b.to_vec()));
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s2 = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            let t2 = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        assert_eq!(r0.len(), 1, "xgcd of non-coprime polynomials");
        let inv = self.inv(r0[0]);
        (self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn mulmod(&self, a: &[u64], b: &[u64], m: &[u64]) -> FpPoly {
        self.rem(&self.poly_mul(a, b), m)
    }

    pub fn powmod(&self, a: &[u64], e: &BigUint, m: &[u64]) -> FpPoly {
        let mut r = self.rem(&[1], m);
        let base = self.rem(a, m);
        for i in (0..e.bits()).rev() {
            r = self.mulmod(&r, &r, m);
            if e.bit(i) {
                r = self.mulmod(&r, &base, m);
            }
        }
        r
    }

    pub fn random_below(&self, deg: usize, rng: &mut ChaCha8Rng) -> FpPoly {
        self.trim((0..deg).map(|_| rng.gen_range(0..self.q)).collect())
    }

    /// Splits a squarefree monic `g`, all of whose irreducible factors have
    /// degree `f`, into those factors.
    pub fn equal_degree_split(&self, g: &[u64], f: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
        let deg = g.len() - 1;
        if deg == f {
            return vec![g.to_vec()];
        }
        loop {
            let a = self.random_below(deg, rng);
            if a.len() < 2 {
                continue;
            }
            let candidate = if self.q == 2 {
                // absolute trace a + a^2 + ... + a^{2^{f-1}}
                let mut acc = a.clone();
                let mut pw = a.clone();
                for _ in 1..f {
                    pw = self.mulmod(&pw, &pw, g);
                    acc = self.poly_add(&acc, &pw);
                }
                acc
            } else {
                let e = (BigUint::from(self.q).pow(f as u32) - 1u32) / 2u32;
                let b = self.powmod(&a, &e, g);
                self.poly_sub(&b, &[1])
            };
            let d = self.gcd(&candidate, g);
            let dd = d.len().saturating_sub(1);
            if dd > 0 && dd < deg {
                let (other, r) = self.div_rem(g, &d);
                debug_assert!(r.is_empty());
                let mut out = self.equal_degree_split(&d, f, rng);
                out.extend(self.equal_degree_split(&other, f, rng));
                return out;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn xgcd_identity() {
        let f = Fp { q: 7 };
        let a = vec![1, 2, 1];
        let b = vec![3, 1];
        let (s, t) = f.xgcd(&a, &b);
        let lhs = f.poly_add(&f.poly_mul(&s, &a), &f.poly_mul(&t, &b));
        assert_eq!(lhs, vec![1]);
    }

    #[test]
    fn split_product_of_linears() {
        let f = Fp { q: 13 };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // (x-1)(x-2)(x-3)
        let g = f.poly_mul(&f.poly_mul(&[12, 1], &[11, 1]), &[10, 1]);
        let mut parts = f.equal_degree_split(&g, 1, &mut rng);
        parts.sort();
        assert_eq!(parts, vec![vec![10, 1], vec![11, 1], vec![12, 1]]);
    }
}
