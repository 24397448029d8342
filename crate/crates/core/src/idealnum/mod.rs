//! Prime ideals of `Z[zeta_L]` above unramified rational primes, valuations
//! of cyclotomic numbers at them, and orders of numerator ideals.

mod fp;
mod hensel;

pub use fp::{Fp, FpPoly};
pub use hensel::{hensel_lift_all, ZPoly};

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{
    cyclotomic_polynomial, euler_phi, factor_big, multiplicative_order, prime_divisors, valuation,
    CyclotomicNumber,
};
use crate::error::{Error, Result};

const SPLIT_SEED: u64 = 0x5eed_0fc0_ffee;

/// A prime `P = (q, g(zeta_L))` of `Z[zeta_L]` with `q` unramified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeIdealFactor {
    pub level: u64,
    pub rational_prime: u64,
    pub residue_degree: u32,
    /// monic lift of an irreducible factor of `Phi_L mod q`, coefficients in `[0, q^k)`
    pub local_factor: ZPoly,
    pub lift_precision: u32,
}

/// Order of `R / (ideal(a) cap R)` together with its per-prime pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumeratorOrder {
    pub order: BigUint,
    /// `(q, f, v)` per prime ideal (of the ring the order was taken in)
    pub contributions: Vec<(u64, u32, i64)>,
}

impl NumeratorOrder {
    pub fn one() -> Self {
        NumeratorOrder {
            order: BigUint::one(),
            contributions: Vec::new(),
        }
    }

    pub fn from_order(order: BigUint) -> Self {
        NumeratorOrder {
            order,
            contributions: Vec::new(),
        }
    }
}

fn check_prime(q: u64) -> Result<()> {
    if q >= 1 << 62 {
        return Err(Error::PrimeTooLarge(q.to_string()));
    }
    Ok(())
}

/// Distinct monic irreducible factors of `Phi_L mod q`, sorted.
pub fn factor_cyclotomic_mod_q(level: u64, q: u64) -> Result<Vec<FpPoly>> {
    check_prime(q)?;
    if level % q == 0 {
        return Err(Error::RamifiedPrime { q, level });
    }
    let field = Fp { q };
    let qb = BigInt::from(q);
    let phi: FpPoly = field.trim(
        cyclotomic_polynomial(level)
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&qb).to_u64().unwrap())
            .collect(),
    );
    let f = multiplicative_order(q % level.max(1), level) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED ^ level.wrapping_mul(q));
    let mut parts = field.equal_degree_split(&phi, f, &mut rng);
    parts.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    debug_assert_eq!(parts.len() * f, euler_phi(level) as usize);
    Ok(parts)
}

/// The primes of `Z[zeta_L]` above `q`, with local factors lifted to `q^k`.
pub fn primes_above(level: u64, q: u64, k: u32) -> Result<Vec<PrimeIdealFactor>> {
    let factors = factor_cyclotomic_mod_q(level, q)?;
    let phi = cyclotomic_polynomial(level);
    let lifts = hensel_lift_all(phi.coeffs(), &factors, q, k.max(1));
    let modulus = BigInt::from(q).pow(k.max(1));
    let prod = lifts
        .iter()
        .fold(vec![BigInt::one()], |acc, g| hensel::mul(&acc, g, &modulus));
    if prod != hensel::reduce(phi.coeffs(), &modulus) {
        return Err(Error::Internal(format!(
            "Hensel lifts for L = {level}, q = {q} do not multiply back to Phi_L"
        )));
    }
    Ok(lifts
        .into_iter()
        .zip(&factors)
        .map(|(g, g0)| PrimeIdealFactor {
            level,
            rational_prime: q,
            residue_degree: (g0.len() - 1) as u32,
            local_factor: g,
            lift_precision: k.max(1),
        })
        .collect())
}

/// `v_P(a)`, read off from the coefficients of the integral representative
/// reduced modulo `(q^k, g)`, minus the `q`-valuation of the denominator.
pub fn valuation_at_prime(a: &CyclotomicNumber, p: &PrimeIdealFactor) -> Result<i64> {
    if a.level() != p.level {
        return Err(Error::LevelMismatch(a.level(), p.level));
    }
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let q = p.rational_prime;
    let k = p.lift_precision;
    let modulus = BigInt::from(q).pow(k);
    let (u, c) = a.integral_parts();
    let (_, r) = hensel::div_rem_monic(u, &p.local_factor, &modulus);
    let v = r
        .iter()
        .filter(|x| !x.is_zero())
        .map(|x| valuation(x, q))
        .min();
    match v {
        None => Err(Error::InsufficientPrecision { q, precision: k }),
        Some(v) => Ok(v as i64 - valuation(c, q) as i64),
    }
}

/// Valuations of `a` at every prime above `q`, sized so that no valuation
/// can reach the lift precision, and checked against the norm.
pub fn valuations_above(a: &CyclotomicNumber, q: u64) -> Result<Vec<(PrimeIdealFactor, i64)>> {
    let (u, _) = a.integral_parts();
    let norm_u = CyclotomicNumber::from_power_coeffs(
        a.level(),
        &u.iter()
            .map(|x| crate::arith::Rational::from_integer(x.clone()))
            .collect::<Vec<_>>(),
    )
    .absolute_norm()
    .to_integer();
    let k = valuation(&norm_u, q) + 1;
    let primes = primes_above(a.level(), q, k)?;
    let mut out = Vec::with_capacity(primes.len());
    let mut total = 0i64;
    for p in primes {
        let v = valuation_at_prime(a, &p)?;
        total += p.residue_degree as i64 * v;
        out.push((p, v));
    }
    let norm = a.absolute_norm();
    let expected = valuation(norm.numer(), q) as i64 - valuation(norm.denom(), q) as i64;
    if total != expected {
        return Err(Error::ValuationMismatch {
            q,
            sum: total,
            expected,
        });
    }
    Ok(out)
}

/// Rational primes at which `a` can have a nonzero valuation: the primes of
/// `N(u)` where `a = u / c` with `u` integral.
fn candidate_primes(a: &CyclotomicNumber) -> BTreeSet<u64> {
    let norm = a.absolute_norm();
    let (_, c) = a.integral_parts();
    let mut out = BTreeSet::new();
    for n in [norm.numer(), c] {
        let n = n.abs().to_biguint().unwrap();
        for (p, _) in factor_big(&n) {
            out.insert(p.to_u64().expect("prime beyond 64 bits"));
        }
    }
    out
}

fn check_excluded(level: u64, excluded: &BTreeSet<u64>) -> Result<()> {
    for p in prime_divisors(level) {
        if !excluded.contains(&p) {
            return Err(Error::RamifiedPrime { q: p, level });
        }
    }
    Ok(())
}

/// `|Z[1/S][zeta_L] / (a) cap Z[1/S][zeta_L]|` for `S = excluded`.
pub fn numerator_order(a: &CyclotomicNumber, excluded: &BTreeSet<u64>) -> Result<NumeratorOrder> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    check_excluded(a.level(), excluded)?;
    let mut order = BigUint::one();
    let mut contributions = Vec::new();
    for q in candidate_primes(a) {
        if excluded.contains(&q) {
            continue;
        }
        check_prime(q)?;
        for (p, v) in valuations_above(a, q)? {
            contributions.push((q, p.residue_degree, v));
            if v > 0 {
                order *= BigUint::from(q).pow(p.residue_degree * v as u32);
            }
        }
    }
    Ok(NumeratorOrder {
        order,
        contributions,
    })
}

/// Same as [`numerator_order`] but for the ideal `(a) cap Z[1/S][zeta_k]` of
/// the subring at level `k | L`. Primes of `Z[zeta_k]` are unramified in
/// `Q(zeta_L)` away from `S`, so the exponent at `p` is the largest
/// nonnegative valuation of `a` over the primes above `p`.
pub fn numerator_order_in_subring(
    a: &CyclotomicNumber,
    k: u64,
    excluded: &BTreeSet<u64>,
) -> Result<NumeratorOrder> {
    let level = a.level();
    if k == 0 || level % k != 0 {
        return Err(Error::IncompatibleLevel {
            source_level: k,
            target: level,
        });
    }
    if k == level {
        return numerator_order(a, excluded);
    }
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    check_excluded(level, excluded)?;
    let step = (level / k) as usize;
    let mut order = BigUint::one();
    let mut contributions = Vec::new();
    for q in candidate_primes(a) {
        if excluded.contains(&q) {
            continue;
        }
        check_prime(q)?;
        let upstairs = valuations_above(a, q)?;
        let field = Fp { q };
        for small in factor_cyclotomic_mod_q(k, q)? {
            // P | p iff small(x^{L/k}) = 0 mod (q, g_P)
            let mut composed = vec![0u64; (small.len() - 1) * step + 1];
            for (i, &c) in small.iter().enumerate() {
                composed[i * step] = c;
            }
            let mut best = 0i64;
            let mut found = false;
            for (p, v) in &upstairs {
                let g: FpPoly = field.trim(
                    p.local_factor
                        .iter()
                        .map(|c| (c % BigInt::from(q)).to_u64().unwrap())
                        .collect(),
                );
                if field.rem(&composed, &g).is_empty() {
                    found = true;
                    best = best.max(*v);
                }
            }
            if !found {
                return Err(Error::Internal(format!(
                    "no prime of level {level} above a prime of level {k} at q = {q}"
                )));
            }
            let f = (small.len() - 1) as u32;
            contributions.push((q, f, best));
            if best > 0 {
                order *= BigUint::from(q).pow(f * best as u32);
            }
        }
    }
    Ok(NumeratorOrder {
        order,
        contributions,
    })
}

/// Prime-to-`excluded` part of a positive integer.
pub fn prime_to(n: &BigUint, excluded: &BTreeSet<u64>) -> BigUint {
    let v: Vec<u64> = excluded.iter().copied().collect();
    crate::arith::prime_to_part(&BigInt::from_biguint(Sign::Plus, n.clone()), &v)
        .to_biguint()
        .unwrap()
}
