use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{content, cyclotomic_polynomial, IntPolynomial};
use super::{euler_phi, gcd, Rational};
use crate::error::{Error, Result};
use crate::linalg;

/// Per-level data: `Phi_L` and the reductions of `x^j` for `0 <= j < L`.
struct FieldData {
    degree: usize,
    phi: Arc<IntPolynomial>,
    powers: Vec<Vec<i64>>,
}

impl FieldData {
    fn build(level: u64) -> FieldData {
        let phi = cyclotomic_polynomial(level);
        let n = euler_phi(level) as usize;
        let coeffs: Vec<i64> = phi
            .coeffs()
            .iter()
            .map(|c| c.to_i64().expect("cyclotomic coefficient overflow"))
            .collect();
        let mut powers = Vec::with_capacity(level as usize);
        let mut cur = vec![0i64; n];
        cur[0] = 1;
        for _ in 0..level {
            powers.push(cur.clone());
            // multiply by x, reduce using the monic Phi_L
            let top = cur[n - 1];
            let mut next = vec![0i64; n];
            next[1..n].copy_from_slice(&cur[..(n - 1)]);
            if top != 0 {
                for i in 0..n {
                    next[i] = next[i]
                        .checked_sub(top.checked_mul(coeffs[i]).expect("overflow"))
                        .expect("overflow");
                }
            }
            if n == 1 {
                next[0] = -top * coeffs[0];
            }
            cur = next;
        }
        FieldData {
            degree: n,
            phi,
            powers,
        }
    }
}

fn field(level: u64) -> Arc<FieldData> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<FieldData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&level) {
        return f.clone();
    }
    let f = Arc::new(FieldData::build(level));
    cache.lock().unwrap().insert(level, f.clone());
    f
}

/// Exact element of `Q(zeta_L)` in the power basis `1, zeta, ..., zeta^{phi(L)-1}`.
///
/// Stored as integer numerators over one positive common denominator, in
/// lowest terms, so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    level: u64,
    nums: Vec<BigInt>,
    den: BigInt,
}

impl CyclotomicNumber {
    fn normalized(level: u64, mut nums: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for c in nums.iter_mut() {
                *c = -&*c;
            }
        }
        let g = content(&nums).gcd(&den);
        if g.is_zero() || nums.iter().all(|c| c.is_zero()) {
            return CyclotomicNumber {
                level,
                nums: vec![BigInt::zero(); nums.len()],
                den: BigInt::one(),
            };
        }
        if !g.is_one() {
            for c in nums.iter_mut() {
                *c = &*c / &g;
            }
            den /= &g;
        }
        CyclotomicNumber { level, nums, den }
    }

    pub fn zero(level: u64) -> Self {
        assert!(level >= 1);
        let n = euler_phi(level) as usize;
        CyclotomicNumber {
            level,
            nums: vec![BigInt::zero(); n],
            den: BigInt::one(),
        }
    }

    pub fn one(level: u64) -> Self {
        Self::from_rational(&Rational::one(), level)
    }

    pub fn from_integer(n: i64, level: u64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)), level)
    }

    pub fn from_rational(r: &Rational, level: u64) -> Self {
        let mut z = Self::zero(level);
        z.nums[0] = r.numer().clone();
        z.den = r.denom().clone();
        Self::normalized(level, z.nums, z.den)
    }

    /// `zeta_L^e` for any integer exponent.
    pub fn root_of_unity(level: u64, e: i64) -> Self {
        let f = field(level);
        let j = e.rem_euclid(level as i64) as usize;
        CyclotomicNumber {
            level,
            nums: f.powers[j].iter().map(|&c| BigInt::from(c)).collect(),
            den: BigInt::one(),
        }
    }

    /// Element `sum_j coeffs[j] * zeta_L^j` with `coeffs` indexed by
    /// exponent modulo `L` (any length; indices wrap).
    pub fn from_cyclic(level: u64, coeffs: &[Rational]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints = vec![BigInt::zero(); level as usize];
        for (j, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            ints[j % level as usize] += c.numer() * (&den / c.denom());
        }
        Self::reduce_cyclic(level, ints, den)
    }

    /// From power-basis coefficients (length at most `phi(L)`).
    pub fn from_power_coeffs(level: u64, coeffs: &[Rational]) -> Self {
        let n = euler_phi(level) as usize;
        assert!(coeffs.len() <= n, "too many power-basis coefficients");
        Self::from_cyclic(level, coeffs)
    }

    fn reduce_cyclic(level: u64, ints: Vec<BigInt>, den: BigInt) -> Self {
        let f = field(level);
        let n = f.degree;
        let mut out = vec![BigInt::zero(); n];
        for (j, c) in ints.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j < n {
                out[j] += c;
            } else {
                for (t, &p) in f.powers[j].iter().enumerate() {
                    if p != 0 {
                        out[t] += &c * p;
                    }
                }
            }
        }
        Self::normalized(level, out, den)
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// `phi(L)`, the length of the power basis.
    pub fn degree(&self) -> usize {
        self.nums.len()
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        self.nums
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// Integral numerator polynomial `u` and denominator `c` with `self = u / c`.
    pub fn integral_parts(&self) -> (&[BigInt], &BigInt) {
        (&self.nums, &self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.nums.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.nums[0].is_one() && self.nums[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.nums[1..].iter().all(|c| c.is_zero()) {
            Some(Rational::new(self.nums[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn check_level(&self, other: &Self) -> Result<()> {
        if self.level != other.level {
            return Err(Error::LevelMismatch(self.level, other.level));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        let g = self.den.gcd(&other.den);
        let fa = &other.den / &g;
        let fb = &self.den / &g;
        let nums = self
            .nums
            .iter()
            .zip(&other.nums)
            .map(|(a, b)| a * &fa + b * &fb)
            .collect();
        Ok(Self::normalized(self.level, nums, &self.den * &fa))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        let l = self.level as usize;
        let mut acc = vec![BigInt::zero(); l];
        for (i, a) in self.nums.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.nums.iter().enumerate() {
                if !b.is_zero() {
                    acc[(i + j) % l] += a * b;
                }
            }
        }
        Ok(Self::reduce_cyclic(self.level, acc, &self.den * &other.den))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let nums = self.nums.iter().map(|c| c * r.numer()).collect();
        Self::normalized(self.level, nums, &self.den * r.denom())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.level);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm of the
    /// representative polynomial against `Phi_L` over `Q[x]`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = field(self.level);
        let to_rat = |v: &[BigInt]| -> Vec<Rational> {
            v.iter().map(|c| Rational::from_integer(c.clone())).collect()
        };
        let mut r0 = to_rat(f.phi.coeffs());
        let mut r1 = to_rat(&self.nums);
        trim(&mut r1);
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, r) = rat_div_rem(&r0, &r1);
            let next_s = rat_sub(&s0, &rat_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, next_s);
        }
        if r0.len() != 1 {
            return Err(Error::Internal(
                "representative not coprime to Phi_L".into(),
            ));
        }
        let c = r0[0].clone();
        let den = Rational::from_integer(self.den.clone());
        let coeffs: Vec<Rational> = s0.iter().map(|s| s * &den / &c).collect();
        // s0 has degree < phi(L) by construction of the Euclidean remainder sequence
        Ok(Self::from_cyclic(self.level, &coeffs))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    /// Image under `zeta -> zeta^s` (`gcd(s, L) = 1`).
    pub fn galois(&self, s: i64) -> Self {
        let l = self.level as i64;
        assert_eq!(gcd(s.rem_euclid(l) as u64, self.level), 1, "s must be a unit mod L");
        let mut acc = vec![BigInt::zero(); self.level as usize];
        for (j, c) in self.nums.iter().enumerate() {
            if !c.is_zero() {
                acc[(j as i64 * s).rem_euclid(l) as usize] += c;
            }
        }
        Self::reduce_cyclic(self.level, acc, self.den.clone())
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Image under `zeta_L -> zeta_{L'}^{L'/L}`.
    pub fn raise_level(&self, target: u64) -> Result<Self> {
        if target == 0 || target % self.level != 0 {
            return Err(Error::IncompatibleLevel {
                source_level: self.level,
                target,
            });
        }
        let step = (target / self.level) as usize;
        let mut acc = vec![BigInt::zero(); target as usize];
        for (j, c) in self.nums.iter().enumerate() {
            acc[j * step] += c;
        }
        Ok(Self::reduce_cyclic(target, acc, self.den.clone()))
    }

    /// Rewrites the element at level `k | L` when it lies in `Q(zeta_k)`.
    pub fn try_lower_level(&self, k: u64) -> Option<Self> {
        if k == 0 || self.level % k != 0 {
            return None;
        }
        if k == self.level {
            return Some(self.clone());
        }
        let m = euler_phi(k) as usize;
        let rows: Vec<Vec<Rational>> = (0..m)
            .map(|i| {
                Self::root_of_unity(k, i as i64)
                    .raise_level(self.level)
                    .unwrap()
                    .coeffs()
            })
            .collect();
        let sol = linalg::solve_left(&rows, &self.coeffs())?;
        Some(Self::from_power_coeffs(k, &sol))
    }

    /// Absolute norm `N_{Q(zeta_L)/Q}`, the resultant of `Phi_L` with the
    /// integral representative divided by `c^{phi(L)}`. The resultant is
    /// taken as the determinant of multiplication by the representative,
    /// which coincides with it because `Phi_L` is monic.
    pub fn absolute_norm(&self) -> Rational {
        let n = self.degree();
        let mut rows = Vec::with_capacity(n);
        let u = CyclotomicNumber {
            level: self.level,
            nums: self.nums.clone(),
            den: BigInt::one(),
        };
        for i in 0..n {
            let xi = Self::root_of_unity(self.level, i as i64);
            let prod = &u * &xi;
            // prod is integral
            rows.push(prod.nums.clone());
        }
        let det = linalg::det_bareiss(rows);
        Rational::new(det, num_traits::pow(self.den.clone(), n))
    }

    /// Evaluation at `exp(2 pi i * which / L)` in double precision.
    pub fn complex_embedding(&self, which: i64) -> Result<Complex64> {
        if gcd(which.rem_euclid(self.level as i64) as u64, self.level) != 1 {
            return Err(Error::NotCoprime {
                root: which,
                level: self.level,
            });
        }
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let mut z = Complex64::new(0.0, 0.0);
        for (j, c) in self.nums.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = 2.0 * std::f64::consts::PI * ((j as i64 * which) as f64)
                / self.level as f64;
            z += Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN) / den, angle);
        }
        Ok(z)
    }
}

fn trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn rat_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn rat_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(&mut out);
    out
}

fn rat_div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.to_vec());
    }
    let mut rem = a.to_vec();
    let mut quot = vec![Rational::zero(); a.len() - db];
    let lead = b[db].clone();
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            rem[k + j] -= &c * bc;
        }
        quot[k] = c;
    }
    rem.truncate(db);
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: Self) -> CyclotomicNumber {
        self.checked_add(rhs).expect("cyclotomic add")
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: Self) -> CyclotomicNumber {
        self.checked_sub(rhs).expect("cyclotomic sub")
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: Self) -> CyclotomicNumber {
        self.checked_mul(rhs).expect("cyclotomic mul")
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            level: self.level,
            nums: self.nums.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (j, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{j}")?,
            }
            first = false;
        }
        write!(f, "  [z = zeta_{}]", self.level)
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
