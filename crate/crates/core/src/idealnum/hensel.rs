//! Quadratic Hensel lifting of a coprime factorization `f = g h mod q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::fp::{Fp, FpPoly};

pub type ZPoly = Vec<BigInt>;

fn trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

pub(crate) fn reduce(a: &[BigInt], m: &BigInt) -> ZPoly {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).mod_floor(m))
            .collect(),
    )
}

fn sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).mod_floor(m))
            .collect(),
    )
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
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
    reduce(&out, m)
}

/// Division by a monic polynomial modulo `m`.
pub(crate) fn div_rem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    if a.len() <= db {
        return (Vec::new(), reduce(a, m));
    }
    let mut rem = reduce(a, m);
    rem.resize(a.len(), BigInt::zero());
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for k in (0..quot.len()).rev() {
        let c = rem[k + db].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            rem[k + j] = (&rem[k + j] - &c * bc).mod_floor(m);
        }
        quot[k] = c;
    }
    rem.truncate(db);
    (trim(quot), trim(rem))
}

fn lift_fp(a: &[u64]) -> ZPoly {
    trim(a.iter().map(|&c| BigInt::from(c)).collect())
}

/// One quadratic step: from `f = g h`, `s g + t h = 1` modulo `m` to the
/// same relations modulo `m^2`, with `h` kept monic.
fn step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = sub(f, &mul(g, h, &m2), &m2);
    let (q, r) = div_rem_monic(&mul(s, &e, &m2), h, &m2);
    let g1 = add(&add(g, &mul(t, &e, &m2), &m2), &mul(&q, g, &m2), &m2);
    let h1 = add(h, &r, &m2);
    let b = sub(
        &add(&mul(s, &g1, &m2), &mul(t, &h1, &m2), &m2),
        &[BigInt::one()],
        &m2,
    );
    let (c, d) = div_rem_monic(&mul(s, &b, &m2), &h1, &m2);
    let s1 = sub(s, &d, &m2);
    let t1 = sub(&sub(t, &mul(t, &b, &m2), &m2), &mul(&c, &g1, &m2), &m2);
    (g1, h1, s1, t1)
}

/// Lifts `f = g h mod q` (monic `f`, `g`, `h`; `g`, `h` coprime mod `q`)
/// to monic `g_k h_k = f mod q^k`. Returns `(g_k, h_k)`.
pub(crate) fn lift_pair(f: &[BigInt], g: &FpPoly, h: &FpPoly, q: u64, k: u32) -> (ZPoly, ZPoly) {
    let field = Fp { q };
    let (s, t) = field.xgcd(g, h);
    let target = BigInt::from(q).pow(k);
    let (mut g, mut h, mut s, mut t) = (lift_fp(g), lift_fp(h), lift_fp(&s), lift_fp(&t));
    let mut m = BigInt::from(q);
    while m < target {
        let (g1, h1, s1, t1) = step(f, &g, &h, &s, &t, &m);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = &m * &m;
    }
    (reduce(&g, &target), reduce(&h, &target))
}

/// Lifts the factorization `f = prod factors (mod q)` into monic factors
/// modulo `q^k`, in the same order.
pub fn hensel_lift_all(f: &[BigInt], factors: &[FpPoly], q: u64, k: u32) -> Vec<ZPoly> {
    let field = Fp { q };
    let modulus = BigInt::from(q).pow(k);
    let mut rest = reduce(f, &modulus);
    let mut out = Vec::with_capacity(factors.len());
    for (i, fac) in factors.iter().enumerate() {
        if i + 1 == factors.len() {
            out.push(rest.clone());
            break;
        }
        let others = factors[i + 1..]
            .iter()
            .fold(vec![1u64], |acc, p| field.poly_mul(&acc, p));
        let (rest_k, fac_k) = lift_pair(&rest, &others, fac, q, k);
        out.push(fac_k);
        rest = rest_k;
    }
    out
}
