//! Dirichlet characters stored by exponents on a fixed generating set of
//! `(Z/mZ)^x`, with conductors, products and exact Gauss sums.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::Zero;

use crate::arith::{
    euler_phi, factor_u64, gcd, lcm, multiplicative_order, rat, CyclotomicNumber, Rational,
};
use crate::error::{Error, Result};

/// Cyclic decomposition of `(Z/mZ)^x`: one generator per prime power
/// (two for `2^k`, `k >= 3`), each lifted by CRT to be 1 at the other
/// prime powers. The 2-part comes first.
#[derive(Debug)]
pub struct UnitGroupBasis {
    modulus: u64,
    generators: Vec<u64>,
    orders: Vec<u64>,
    /// discrete logs indexed by residue; `None` for non-units
    dlog: Vec<Option<Vec<u64>>>,
}

impl UnitGroupBasis {
    fn build(m: u64) -> UnitGroupBasis {
        assert!(m >= 1);
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        for (p, k) in factor_u64(m) {
            let pk = p.pow(k);
            let rest = m / pk;
            let lift = |g: u64| crt_lift(g, pk, rest);
            if p == 2 {
                if k >= 2 {
                    generators.push(lift(pk - 1));
                    orders.push(2);
                }
                if k >= 3 {
                    generators.push(lift(5));
                    orders.push(pk / 4);
                }
            } else {
                let phi = euler_phi(pk);
                let g = (2..pk)
                    .find(|&g| g % p != 0 && multiplicative_order(g, pk) == phi)
                    .expect("odd prime powers have primitive roots");
                generators.push(lift(g));
                orders.push(phi);
            }
        }
        let mut dlog = vec![None; m as usize];
        let total: u64 = orders.iter().product();
        for idx in 0..total {
            let mut rem = idx;
            let mut exps = vec![0u64; orders.len()];
            for i in (0..orders.len()).rev() {
                exps[i] = rem % orders[i];
                rem /= orders[i];
            }
            let mut x = 1 % m;
            for (g, &e) in generators.iter().zip(&exps) {
                x = mulmod(x, powmod(*g, e, m), m);
            }
            dlog[x as usize] = Some(exps);
        }
        if m == 1 {
            dlog[0] = Some(Vec::new());
        }
        UnitGroupBasis {
            modulus: m,
            generators,
            orders,
            dlog,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Exponents of `a` on the generators, or `None` when `gcd(a, m) > 1`.
    pub fn discrete_log(&self, a: i64) -> Option<&[u64]> {
        let r = a.rem_euclid(self.modulus as i64) as usize;
        self.dlog[r].as_deref()
    }
}

fn crt_lift(g: u64, pk: u64, rest: u64) -> u64 {
    // x = g mod pk, x = 1 mod rest
    (0..rest)
        .map(|t| g + t * pk)
        .find(|x| x % rest == 1 % rest)
        .unwrap()
        % (pk * rest)
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic unit-group basis of `(Z/mZ)^x`, shared across callers.
pub fn unit_group_basis(m: u64) -> Arc<UnitGroupBasis> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<UnitGroupBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().unwrap().get(&m) {
        return b.clone();
    }
    let b = Arc::new(UnitGroupBasis::build(m));
    cache.lock().unwrap().insert(m, b.clone());
    b
}

/// A Dirichlet character modulo `m`; the value on generator `g_i` is
/// `zeta_{o_i}^{e_i}`.
#[derive(Clone)]
pub struct DirichletCharacter {
    basis: Arc<UnitGroupBasis>,
    exponents: Vec<u64>,
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exponents == other.exponents
    }
}

impl Eq for DirichletCharacter {}

impl Hash for DirichletCharacter {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.modulus().hash(state);
        self.exponents.hash(state);
    }
}

impl DirichletCharacter {
    pub fn new(m: u64, exponents: Vec<u64>) -> Result<Self> {
        let basis = unit_group_basis(m);
        if exponents.len() != basis.orders.len()
            || exponents.iter().zip(&basis.orders).any(|(e, o)| e >= o)
        {
            return Err(Error::InvalidInput(format!(
                "exponents {exponents:?} do not fit the unit group mod {m} (orders {:?})",
                basis.orders
            )));
        }
        Ok(DirichletCharacter { basis, exponents })
    }

    pub fn trivial(m: u64) -> Self {
        let basis = unit_group_basis(m);
        let exponents = vec![0; basis.orders.len()];
        DirichletCharacter { basis, exponents }
    }

    /// Character with prescribed values on the generators, each given as a
    /// fraction of a full turn.
    fn from_turns(m: u64, turns: impl Fn(u64) -> Ratio<u64>) -> Self {
        let basis = unit_group_basis(m);
        let exponents = basis
            .generators
            .iter()
            .zip(&basis.orders)
            .map(|(&g, &o)| {
                let e = turns(g) * o;
                assert!(e.is_integer(), "value is not an o-th root of unity");
                e.to_integer() % o
            })
            .collect();
        DirichletCharacter { basis, exponents }
    }

    pub fn modulus(&self) -> u64 {
        self.basis.modulus
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn basis(&self) -> &UnitGroupBasis {
        &self.basis
    }

    pub fn order(&self) -> u64 {
        self.exponents
            .iter()
            .zip(&self.basis.orders)
            .fold(1, |acc, (&e, &o)| lcm(acc, o / gcd(o, e)))
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// `chi(a) = exp(2 pi i t)` with `t` in `[0, 1)`; `None` off the units.
    pub fn turns(&self, a: i64) -> Option<Ratio<u64>> {
        let logs = self.basis.discrete_log(a)?;
        let t = logs
            .iter()
            .zip(&self.exponents)
            .zip(&self.basis.orders)
            .fold(Ratio::zero(), |acc, ((&k, &e), &o)| {
                acc + Ratio::new((k * e) % o, o)
            });
        Some(t - Ratio::from_integer(t.to_integer()))
    }

    /// `chi(a) = zeta_{order}^k`; returns `k`, or `None` off the units.
    pub fn value_exponent(&self, a: i64) -> Option<u64> {
        let o = self.order();
        self.turns(a).map(|t| (t * o).to_integer())
    }

    /// `chi(a)` as an element of `Q(zeta_L)`.
    pub fn evaluate(&self, a: i64, level: u64) -> Result<CyclotomicNumber> {
        let o = self.order();
        if level % o != 0 {
            return Err(Error::InsufficientLevel {
                order: o,
                modulus: self.modulus(),
                needed: o,
                level,
            });
        }
        Ok(match self.value_exponent(a) {
            None => CyclotomicNumber::zero(level),
            Some(k) => CyclotomicNumber::root_of_unity(level, (k * (level / o)) as i64),
        })
    }

    /// Double-precision value, for diagnostics.
    pub fn value_complex(&self, a: i64) -> Complex64 {
        match self.turns(a) {
            None => Complex64::new(0.0, 0.0),
            Some(t) => Complex64::from_polar(
                1.0,
                2.0 * std::f64::consts::PI * (*t.numer() as f64) / (*t.denom() as f64),
            ),
        }
    }

    /// `chi(-1)`.
    pub fn parity(&self) -> i32 {
        match self.value_exponent(-1) {
            Some(0) => 1,
            _ => -1,
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == 1
    }

    pub fn conductor(&self) -> u64 {
        let mut f = 1;
        let mut i = 0;
        for (p, k) in factor_u64(self.modulus()) {
            let comp = |i: usize| {
                let o = self.basis.orders[i];
                o / gcd(o, self.exponents[i])
            };
            if p == 2 {
                if k == 2 {
                    if comp(i) > 1 {
                        f *= 4;
                    }
                    i += 1;
                } else if k >= 3 {
                    let (sign, five) = (comp(i), comp(i + 1));
                    if five > 1 {
                        f *= 1 << (five.trailing_zeros() + 2);
                    } else if sign > 1 {
                        f *= 4;
                    }
                    i += 2;
                }
            } else {
                let o = comp(i);
                if o > 1 {
                    let mut v = 0;
                    let mut oo = o;
                    while oo % p == 0 {
                        oo /= p;
                        v += 1;
                    }
                    f *= p.pow(1 + v);
                }
                i += 1;
            }
        }
        f
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus()
    }

    /// The primitive character inducing `self`.
    pub fn primitivize(&self) -> Self {
        let f = self.conductor();
        let m = self.modulus() as i64;
        DirichletCharacter::from_turns(f, |g| {
            let a = (0..)
                .map(|t| g as i64 + t * f as i64)
                .find(|&a| gcd(a.rem_euclid(m) as u64, m as u64) == 1 || m == 1)
                .unwrap();
            self.turns(a).unwrap()
        })
    }

    /// The character modulo `target` (a multiple of the modulus) induced by `self`.
    pub fn induce(&self, target: u64) -> Result<Self> {
        if target % self.modulus() != 0 {
            return Err(Error::InvalidInput(format!(
                "cannot induce from modulus {} to {target}",
                self.modulus()
            )));
        }
        Ok(DirichletCharacter::from_turns(target, |g| {
            self.turns(g as i64).unwrap()
        }))
    }

    pub fn conj(&self) -> Self {
        let exponents = self
            .exponents
            .iter()
            .zip(&self.basis.orders)
            .map(|(&e, &o)| (o - e) % o)
            .collect();
        DirichletCharacter {
            basis: self.basis.clone(),
            exponents,
        }
    }

    /// Pointwise product, at the lcm of the moduli.
    pub fn mul(&self, other: &Self) -> Self {
        let m = lcm(self.modulus(), other.modulus());
        DirichletCharacter::from_turns(m, |g| {
            let t = self.turns(g as i64).unwrap() + other.turns(g as i64).unwrap();
            t - Ratio::from_integer(t.to_integer())
        })
    }

    pub fn pow(&self, k: u64) -> Self {
        let exponents = self
            .exponents
            .iter()
            .zip(&self.basis.orders)
            .map(|(&e, &o)| (e * k) % o)
            .collect();
        DirichletCharacter {
            basis: self.basis.clone(),
            exponents,
        }
    }

    /// `sum_{a=1}^{m} chi(a) zeta_m^a` at the stored modulus, exactly at level `L`.
    pub fn gauss_sum(&self, level: u64) -> Result<CyclotomicNumber> {
        let m = self.modulus();
        let o = self.order();
        let needed = lcm(m, o);
        if level % needed != 0 {
            return Err(Error::InsufficientLevel {
                order: o,
                modulus: m,
                needed,
                level,
            });
        }
        let mut coeffs = vec![Rational::zero(); level as usize];
        for a in 1..=m {
            if let Some(k) = self.value_exponent(a as i64) {
                let j = (a * (level / m) + k * (level / o)) % level;
                coeffs[j as usize] += rat(1, 1);
            }
        }
        Ok(CyclotomicNumber::from_cyclic(level, &coeffs))
    }

    /// Gauss sum of the primitive character inducing `self`.
    pub fn primitive_gauss_sum(&self, level: u64) -> Result<CyclotomicNumber> {
        self.primitivize().gauss_sum(level)
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi_{}{:?}", self.modulus(), self.exponents)
    }
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All `phi(m)` characters modulo `m`, lexicographic in the exponent
/// vector; index 0 is the trivial character.
pub fn enumerate_characters(m: u64) -> Vec<DirichletCharacter> {
    let basis = unit_group_basis(m);
    let total: u64 = basis.orders.iter().product();
    (0..total)
        .map(|idx| {
            let mut rem = idx;
            let mut exps = vec![0u64; basis.orders.len()];
            for i in (0..exps.len()).rev() {
                exps[i] = rem % basis.orders[i];
                rem /= basis.orders[i];
            }
            DirichletCharacter {
                basis: basis.clone(),
                exponents: exps,
            }
        })
        .collect()
}

/// Primitive characters of modulus exactly `m`.
pub fn primitive_characters(m: u64) -> Vec<DirichletCharacter> {
    enumerate_characters(m)
        .into_iter()
        .filter(|c| c.is_primitive())
        .collect()
}

/// The quadratic character modulo an odd prime `q` (Legendre symbol).
pub fn quadratic_character(q: u64) -> Result<DirichletCharacter> {
    if q < 3 || !crate::arith::is_prime(q) {
        return Err(Error::InvalidInput(format!("{q} is not an odd prime")));
    }
    DirichletCharacter::new(q, vec![(q - 1) / 2])
}

/// Legendre symbol `(a / q)` by Euler's criterion, as `-1`, `0` or `1`.
pub fn legendre_symbol(a: i64, q: u64) -> i64 {
    let r = a.rem_euclid(q as i64) as u64;
    if r == 0 {
        return 0;
    }
    if powmod(r, (q - 1) / 2, q) == 1 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_conductor(chi: &DirichletCharacter) -> u64 {
        let m = chi.modulus();
        crate::arith::divisors(m)
            .into_iter()
            .find(|&f| {
                (1..m as i64).all(|a| {
                    gcd(a as u64, m) != 1 || (a - 1) % f as i64 != 0 || chi.value_exponent(a) == Some(0)
                })
            })
            .unwrap()
    }

    #[test]
    fn bases() {
        assert!(unit_group_basis(1).generators().is_empty());
        assert!(unit_group_basis(2).generators().is_empty());
        let b5 = unit_group_basis(5);
        assert_eq!((b5.generators(), b5.orders()), (&[2u64][..], &[4u64][..]));
        let b8 = unit_group_basis(8);
        assert_eq!((b8.generators(), b8.orders()), (&[7u64, 5][..], &[2u64, 2][..]));
        for m in 1..=200u64 {
            let b = unit_group_basis(m);
            assert_eq!(b.orders().iter().product::<u64>(), euler_phi(m));
            let units = (0..m).filter(|&a| gcd(a, m) == 1 || m == 1).count() as u64;
            assert_eq!(units, euler_phi(m));
            for a in 0..m {
                assert_eq!(b.discrete_log(a as i64).is_some(), gcd(a, m) == 1 || m == 1);
            }
        }
    }

    #[test]
    fn enumeration() {
        assert_eq!(enumerate_characters(1).len(), 1);
        assert!(enumerate_characters(1)[0].is_trivial());
        assert_eq!(enumerate_characters(5).len(), 4);
        let c12 = enumerate_characters(12);
        assert_eq!(c12.len(), 4);
        assert!(c12.iter().all(|c| c.order() <= 2));
    }

    #[test]
    fn evaluation() {
        let one = enumerate_characters(1)[0].evaluate(7, 1).unwrap();
        assert!(one.is_one());
        let q3 = quadratic_character(3).unwrap();
        assert_eq!(q3.evaluate(2, 2).unwrap(), CyclotomicNumber::from_integer(-1, 2));
        for chi in enumerate_characters(6) {
            assert!(chi.evaluate(3, chi.order()).unwrap().is_zero());
        }
        let chi5 = DirichletCharacter::new(5, vec![1]).unwrap();
        assert!(chi5.evaluate(2, 2).is_err());
    }

    #[test]
    fn conductors() {
        assert_eq!(DirichletCharacter::trivial(6).conductor(), 1);
        let q3 = quadratic_character(3).unwrap();
        let lifted = q3.induce(6).unwrap();
        assert_eq!(lifted.conductor(), 3);
        assert_eq!(lifted.primitivize(), q3);
        for m in 1..=120u64 {
            for chi in enumerate_characters(m) {
                assert_eq!(chi.conductor(), brute_conductor(&chi), "{chi}");
                let p = chi.primitivize();
                assert_eq!(p.modulus(), chi.conductor());
                assert!(p.is_primitive());
                assert_eq!(p.induce(m).unwrap(), chi);
            }
        }
        for p in [3u64, 5, 7, 11, 13] {
            for chi in enumerate_characters(p).into_iter().skip(1) {
                assert_eq!(chi.conductor(), p);
            }
        }
    }

    #[test]
    fn parities() {
        assert_eq!(DirichletCharacter::trivial(7).parity(), 1);
        assert_eq!(quadratic_character(3).unwrap().parity(), -1);
        assert_eq!(quadratic_character(5).unwrap().parity(), 1);
    }

    #[test]
    fn products_and_conjugates() {
        let q3 = quadratic_character(3).unwrap();
        let q4 = DirichletCharacter::new(4, vec![1]).unwrap();
        let p = q3.mul(&q4);
        assert_eq!(p.modulus(), 12);
        assert_eq!(p.order(), 2);
        for a in 0..12i64 {
            let expect = match (q3.value_exponent(a), q4.value_exponent(a)) {
                (Some(x), Some(y)) => Some((x + y) % 2),
                _ => None,
            };
            assert_eq!(p.value_exponent(a), expect);
        }
        let chi = DirichletCharacter::new(5, vec![1]).unwrap();
        assert_eq!(chi.conj(), chi.pow(3));
        for m in 1..=30u64 {
            for chi in enumerate_characters(m) {
                assert!(chi.mul(&chi.conj()).is_trivial());
            }
        }
    }

    #[test]
    fn gauss_sums() {
        let g = DirichletCharacter::trivial(1).gauss_sum(1).unwrap();
        assert!(g.is_one());
        let q3 = quadratic_character(3).unwrap();
        let g = q3.gauss_sum(6).unwrap();
        assert_eq!(&g * &g, CyclotomicNumber::from_integer(-3, 6));
        assert!(DirichletCharacter::trivial(4).gauss_sum(4).unwrap().is_zero());
        assert!(q3.gauss_sum(3).is_err());
    }

    #[test]
    fn gauss_product_identity_up_to_50() {
        for m in 1..=50u64 {
            for chi in primitive_characters(m) {
                let l = lcm(m, chi.order());
                let g = chi.gauss_sum(l).unwrap();
                let gb = chi.conj().gauss_sum(l).unwrap();
                let expect = CyclotomicNumber::from_integer(chi.parity() as i64 * m as i64, l);
                assert_eq!(&g * &gb, expect, "{chi}");
                let abs = g.complex_embedding(1).unwrap().norm();
                assert!((abs - (m as f64).sqrt()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn legendre_matches_quadratic_character() {
        for q in [3u64, 5, 7, 11, 13, 19] {
            let chi = quadratic_character(q).unwrap();
            for a in 0..q as i64 {
                let v = match chi.value_exponent(a) {
                    None => 0,
                    Some(0) => 1,
                    Some(_) => -1,
                };
                assert_eq!(v, legendre_symbol(a, q));
            }
        }
    }

    fn arb_char_pair() -> impl Strategy<Value = (DirichletCharacter, DirichletCharacter)> {
        (1u64..=40, 1u64..=40, any::<prop::sample::Index>(), any::<prop::sample::Index>()).prop_map(
            |(m1, m2, i, j)| {
                let c1 = enumerate_characters(m1);
                let c2 = enumerate_characters(m2);
                (c1[i.index(c1.len())].clone(), c2[j.index(c2.len())].clone())
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn completely_multiplicative((chi, _o) in arb_char_pair(), a in 1i64..500, b in 1i64..500) {
            let l = chi.order();
            let m = chi.modulus();
            if gcd(a as u64, m) == 1 && gcd(b as u64, m) == 1 {
                let lhs = chi.evaluate(a * b, l).unwrap();
                let rhs = &chi.evaluate(a, l).unwrap() * &chi.evaluate(b, l).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn parity_is_multiplicative((c1, c2) in arb_char_pair()) {
            prop_assert_eq!(c1.mul(&c2).parity(), c1.parity() * c2.parity());
        }

        #[test]
        fn conductor_of_product_divides_lcm((c1, c2) in arb_char_pair()) {
            let p = c1.mul(&c2);
            prop_assert_eq!(lcm(c1.conductor(), c2.conductor()) % p.conductor(), 0);
        }
    }
}
