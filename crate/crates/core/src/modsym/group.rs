use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::p1::index_gamma0;
use super::space::{is_stable, ModularSymbols};
use crate::arith::{divisors, euler_phi, gcd, is_prime, prime_divisors, CyclotomicNumber, Rational};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::idealnum::{prime_to, NumeratorOrder};
use crate::linalg::{self, IntMatrix};

/// `(u, [(from, to)])` for each unit `u` acting on the cusps of one level.
pub type UnitActions = Vec<(u64, Vec<(usize, usize)>)>;

/// The cuspidal divisor class group `Div^0(cusps) / boundary(E_Z)` where
/// `E_Z` is the integral Hecke-Eisenstein complement of the cuspidal
/// symbols, together with the unit action on cusps.
#[derive(Clone, Debug)]
pub struct CuspidalGroupData {
    pub level: u64,
    /// invariant factors greater than 1, ascending
    pub invariants: Vec<BigInt>,
    pub order: BigUint,
    /// for each `d | N`: `(u, [(from, to)])` for every `u` in `(Z/dZ)^x`
    pub actions: Vec<(u64, UnitActions)>,
    /// relation lattice inside `Div^0` in the basis `{x_j} - {infinity}`
    pub relations: IntMatrix,
    pub cusp_count: usize,
    pub genus: u64,
}

impl CuspidalGroupData {
    pub fn is_cyclic(&self) -> bool {
        self.invariants.len() <= 1
    }
}

/// Smallest prime `l >= 7` with `l` not dividing `N`. Cuspidal `T_l`
/// eigenvalues have absolute value at most `2 sqrt(l)`, Eisenstein ones at
/// least `l - 1`, so the two characteristic polynomials are coprime.
fn separating_prime(n: u64) -> u64 {
    (7..).find(|&l| is_prime(l) && n % l != 0).unwrap()
}

/// Matrix of `t` on the row lattice spanned by `basis` (which `t` must preserve).
pub fn restrict(basis: &[Vec<BigInt>], t: &[Vec<BigInt>]) -> Result<IntMatrix> {
    let rb = linalg::to_rat(basis);
    let image = linalg::to_rat(&linalg::int_mat_mul(basis, t));
    let rows: Option<Vec<Vec<Rational>>> = image.iter().map(|v| linalg::solve_left(&rb, v)).collect();
    let rows = rows.ok_or_else(|| Error::Internal("subspace is not Hecke stable".into()))?;
    linalg::to_int(&rows).ok_or_else(|| Error::Internal("Hecke action not integral on sublattice".into()))
}

/// Saturated basis of the Eisenstein complement `E_Z` of the cuspidal symbols.
pub fn eisenstein_lattice(ms: &ModularSymbols) -> Result<IntMatrix> {
    let r = ms.rank();
    let s = ms.cuspidal_basis();
    if s.is_empty() {
        return Ok(linalg::to_int(&linalg::identity(r)).unwrap());
    }
    let l = separating_prime(ms.level());
    let t = ms.hecke_matrix(l);
    let ts = restrict(&s, &t)?;
    let f = linalg::charpoly(&linalg::to_rat(&ts));
    let fm = linalg::poly_eval_matrix(&f, &linalg::to_rat(&t));
    let w = linalg::right_kernel(&fm, r);
    if w.len() != s.len() {
        return Err(Error::Internal(format!(
            "level {}: Eisenstein complement has wrong dimension",
            ms.level()
        )));
    }
    // columns of w annihilate E_Q; clear denominators column by column
    let cols: IntMatrix = w
        .iter()
        .map(|v| {
            let den = linalg::common_denominator(v.iter());
            v.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect()
        })
        .collect();
    let wmat = linalg::transpose(&cols, r);
    Ok(linalg::integer_left_kernel(&wmat, cols.len()))
}

/// Genus of `X_0(N)` from the index, elliptic points and cusps.
pub fn genus(n: u64) -> u64 {
    let mu = index_gamma0(n) as i64;
    let ps = prime_divisors(n);
    let nu2: i64 = if n % 4 == 0 {
        0
    } else {
        ps.iter()
            .map(|&p| match p {
                2 => 1,
                _ if p % 4 == 1 => 2,
                _ => 0,
            })
            .product()
    };
    let nu3: i64 = if n % 9 == 0 {
        0
    } else {
        ps.iter()
            .map(|&p| match p {
                3 => 1,
                2 => 0,
                _ if p % 3 == 1 => 2,
                _ => 0,
            })
            .product()
    };
    let c: i64 = divisors(n)
        .iter()
        .map(|&d| euler_phi(gcd(d, n / d)) as i64)
        .sum();
    let twelve_g = 12 + mu - 3 * nu2 - 4 * nu3 - 6 * c;
    assert!(twelve_g >= 0 && twelve_g % 12 == 0);
    (twelve_g / 12) as u64
}

fn compute_cuspidal_group(n: u64) -> Result<CuspidalGroupData> {
    let ms = ModularSymbols::new(n)?;
    let c = ms.cusps().len();
    let e = eisenstein_lattice(&ms)?;
    if e.len() != c - 1 {
        return Err(Error::Internal(format!(
            "level {n}: Eisenstein lattice has rank {} but there are {c} cusps",
            e.len()
        )));
    }
    let image = linalg::int_mat_mul(&e, ms.boundary_matrix());
    let relations: IntMatrix = image.iter().map(|row| row[..c - 1].to_vec()).collect();
    let invariants = linalg::smith_invariants(&relations);
    if invariants.len() != c - 1 {
        return Err(Error::Internal(format!(
            "level {n}: boundary is not injective on the Eisenstein lattice"
        )));
    }
    let order = invariants
        .iter()
        .fold(BigInt::one(), |acc, x| acc * x)
        .to_biguint()
        .unwrap();
    let cusps = ms.cusps();
    let actions = divisors(n)
        .into_iter()
        .map(|d| {
            let units = (1..=d).filter(|&u| gcd(u, d) == 1).map(|u| (u % d.max(1), cusps.unit_action(d, u)));
            (d, units.collect())
        })
        .collect();
    Ok(CuspidalGroupData {
        level: n,
        invariants: invariants.into_iter().filter(|x| !x.is_one()).collect(),
        order,
        actions,
        relations,
        cusp_count: c,
        genus: genus(n),
    })
}

fn cache() -> &'static Mutex<HashMap<u64, Arc<CuspidalGroupData>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CuspidalGroupData>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Cuspidal divisor class group of `X_0(N)` (memoised per level).
pub fn cuspidal_group(n: u64) -> Result<Arc<CuspidalGroupData>> {
    if n == 0 {
        return Err(Error::InvalidInput("level must be positive".into()));
    }
    if let Some(g) = cache().lock().unwrap().get(&n) {
        return Ok(g.clone());
    }
    let g = Arc::new(compute_cuspidal_group(n)?);
    cache().lock().unwrap().insert(n, g.clone());
    Ok(g)
}

/// How to turn the level-`d` orbit sum into a degree-zero divisor when `phi`
/// is trivial (the sum then has degree `phi(d)`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum TrivialCompletion {
    /// subtract `phi(d)` times the cusp at infinity
    #[default]
    Infinity,
    /// subtract `phi(d)` times the cusp 0
    Zero,
}

pub(crate) fn validate_pair(n: u64, d: u64, phi: &DirichletCharacter) -> Result<()> {
    if d <= 1 || n % (d * d) != 0 {
        return Err(Error::InvalidSpec(format!("need d != 1 with d^2 | N, got N = {n}, d = {d}")));
    }
    if phi.modulus() != d {
        return Err(Error::InvalidSpec(format!(
            "character modulus {} differs from d = {d}",
            phi.modulus()
        )));
    }
    Ok(())
}

/// Primes dividing `N phi(N)`.
pub fn excluded_primes(n: u64) -> BTreeSet<u64> {
    prime_divisors(n)
        .into_iter()
        .chain(prime_divisors(euler_phi(n)))
        .collect()
}

fn factored(order: BigUint) -> NumeratorOrder {
    let contributions = crate::arith::factor_big(&order)
        .into_iter()
        .map(|(p, e)| (u64::try_from(&p).unwrap_or(u64::MAX), 1, e as i64))
        .collect();
    NumeratorOrder {
        order,
        contributions,
    }
}

/// Order of the `Z[zeta_k]`-span (`k = order(phi)`) of the class of
/// `sum_{a in (Z/d)^x} phi(a) [a/d]` in the cuspidal group tensored with
/// `Z[zeta_k]`, without any prime restriction.
pub fn eigenpart_order_full(
    n: u64,
    d: u64,
    phi: &DirichletCharacter,
    completion: TrivialCompletion,
) -> Result<BigUint> {
    validate_pair(n, d, phi)?;
    let data = cuspidal_group(n)?;
    let ms_cusps = super::cusps::CuspSet::new(n);
    let k = phi.order();
    let m = euler_phi(k) as usize;
    let c = data.cusp_count;
    let mut x: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); m]; c];
    for j in ms_cusps.of_level(d) {
        let a = ms_cusps.get(j).label as i64;
        let e = phi.value_exponent(a).expect("labels are units");
        let z = CyclotomicNumber::root_of_unity(k, e as i64);
        let (nums, _) = z.integral_parts();
        for (t, v) in nums.iter().enumerate() {
            x[j][t] += v;
        }
    }
    if phi.is_trivial() {
        let deg = BigInt::from(euler_phi(d));
        let target = match completion {
            TrivialCompletion::Infinity => ms_cusps.infinity(),
            TrivialCompletion::Zero => ms_cusps.zero(),
        };
        x[target][0] -= deg;
    }
    for t in 0..m {
        let s: BigInt = x.iter().map(|v| &v[t]).sum();
        if !s.is_zero() {
            return Err(Error::Internal("eigen-divisor is not of degree zero".into()));
        }
    }
    // coordinates in Div^0 (x) Z[zeta_k] with basis ({x_j} - {oo}) (x) zeta^i
    let dim = (c - 1) * m;
    let mut lattice: IntMatrix = Vec::new();
    for row in &data.relations {
        for i in 0..m {
            let mut v = vec![BigInt::zero(); dim];
            for (j, a) in row.iter().enumerate() {
                v[j * m + i] = a.clone();
            }
            lattice.push(v);
        }
    }
    let mut extended = lattice.clone();
    for i in 0..m {
        let zi = CyclotomicNumber::root_of_unity(k, i as i64);
        let mut v = vec![BigInt::zero(); dim];
        for j in 0..c - 1 {
            let coeffs: Vec<Rational> = x[j].iter().map(|b| Rational::from_integer(b.clone())).collect();
            let prod = &CyclotomicNumber::from_power_coeffs(k, &coeffs) * &zi;
            let (nums, den) = prod.integral_parts();
            debug_assert!(den.is_one());
            for (t, b) in nums.iter().enumerate() {
                v[j * m + t] = b.clone();
            }
        }
        extended.push(v);
    }
    let big = linalg::lattice_index(&lattice, dim)
        .ok_or_else(|| Error::Internal("cuspidal relation lattice not of full rank".into()))?;
    let small = linalg::lattice_index(&extended, dim).unwrap();
    let (q, r) = big.div_rem(&small);
    if !r.is_zero() {
        return Err(Error::Internal("lattice indices do not divide".into()));
    }
    Ok(q.abs().to_biguint().unwrap())
}

/// Prime-to-`N phi(N)` part of [`eigenpart_order_full`].
pub fn eigenpart_order(
    n: u64,
    d: u64,
    phi: &DirichletCharacter,
    completion: TrivialCompletion,
) -> Result<NumeratorOrder> {
    let full = eigenpart_order_full(n, d, phi, completion)?;
    Ok(factored(prime_to(&full, &excluded_primes(n))))
}

/// `T_l` on the integral cuspidal symbols, in the saturated kernel basis.
pub fn hecke_operator(n: u64, l: u64) -> Result<IntMatrix> {
    let ms = ModularSymbols::new(n)?;
    let s = ms.cuspidal_basis();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let t = ms.hecke_matrix(l);
    if !is_stable(&s, &t) {
        return Err(Error::Internal(format!("T_{l} does not preserve cuspidal symbols")));
    }
    restrict(&s, &t)
}

fn flatten(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    m.iter().flatten().cloned().collect()
}

fn unflatten(v: &[BigInt], s: usize) -> IntMatrix {
    v.chunks(s).map(|c| c.to_vec()).collect()
}

/// `T_1, ..., T_B` on the cuspidal symbols from the prime operators.
pub fn hecke_family(ms: &ModularSymbols, s: &IntMatrix, bound: u64) -> Result<Vec<IntMatrix>> {
    let dim = s.len();
    let id: IntMatrix = linalg::to_int(&linalg::identity(dim)).unwrap();
    let n = ms.level();
    let mut prime_ops: HashMap<u64, IntMatrix> = HashMap::new();
    for p in (2..=bound).filter(|&p| is_prime(p)) {
        prime_ops.insert(p, restrict(s, &ms.hecke_matrix(p))?);
    }
    let mut out: Vec<IntMatrix> = vec![id.clone(), id.clone()];
    for m in 2..=bound {
        let f = crate::arith::factor_u64(m);
        let mut acc = id.clone();
        for (p, e) in f {
            let tp = &prime_ops[&p];
            let mut prev = id.clone();
            let mut cur = tp.clone();
            for _ in 1..e {
                let mut next = linalg::int_mat_mul(tp, &cur);
                if n % p != 0 {
                    for (nr, pr) in next.iter_mut().zip(&prev) {
                        for (x, y) in nr.iter_mut().zip(pr) {
                            *x -= BigInt::from(p) * y;
                        }
                    }
                }
                prev = cur;
                cur = next;
            }
            acc = linalg::int_mat_mul(&acc, &cur);
        }
        out.push(acc);
    }
    out.remove(0);
    Ok(out)
}

/// `phi(l) + l conj(phi)(l)` in power-basis integer coordinates of `Z[zeta_k]`.
pub fn eisenstein_eigenvalue(phi: &DirichletCharacter, l: u64) -> Result<CyclotomicNumber> {
    let k = phi.order();
    let a = phi.evaluate(l as i64, k)?;
    let b = phi.conj().evaluate(l as i64, k)?;
    Ok(&a + &b.scale(&Rational::from_integer(BigInt::from(l))))
}

/// Index of the Eisenstein ideal `(T_l - phi(l) - l conj(phi)(l) : l prime,
/// l not dividing N, l <= B)` in `T (x) Z[zeta_k]`, for `N = p^2`, as a
/// prime-to-`N phi(N)` order. `T` is the Hecke algebra on cuspidal symbols
/// spanned by `T_1, ..., T_B`, `B = [Gamma(1) : Gamma_0(N)] / 6 + 1`.
pub fn eisenstein_ideal_index(p: u64, phi: &DirichletCharacter) -> Result<NumeratorOrder> {
    Ok(factored(prime_to(
        &eisenstein_ideal_index_full(p, phi)?,
        &excluded_primes(p * p),
    )))
}

pub fn eisenstein_ideal_index_full(p: u64, phi: &DirichletCharacter) -> Result<BigUint> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime, so {} is not a prime square", p * p)));
    }
    if phi.modulus() != p {
        return Err(Error::InvalidSpec(format!("character modulus {} is not {p}", phi.modulus())));
    }
    let n = p * p;
    let ms = ModularSymbols::new(n)?;
    let s = ms.cuspidal_basis();
    if s.is_empty() {
        return Ok(BigUint::one());
    }
    let dim = s.len();
    let bound = index_gamma0(n) / 6 + 1;
    let family = hecke_family(&ms, &s, bound)?;
    for a in &family {
        for b in &family {
            if linalg::int_mat_mul(a, b) != linalg::int_mat_mul(b, a) {
                return Err(Error::Internal("Hecke operators do not commute".into()));
            }
        }
    }
    let algebra = linalg::hnf(&family.iter().map(|m| flatten(m)).collect::<Vec<_>>());
    let t = algebra.len();
    let alg_rat = linalg::to_rat(&algebra);
    let coords = |m: &IntMatrix| -> Result<Vec<BigInt>> {
        let v = linalg::to_rat(&[flatten(m)]).remove(0);
        let y = linalg::solve_left(&alg_rat, &v)
            .ok_or_else(|| Error::Internal("Hecke algebra not closed under products".into()))?;
        y.iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Internal("Hecke algebra basis is not multiplicatively closed over Z".into()))
    };
    let k = phi.order();
    let m = euler_phi(k) as usize;
    let mut gens: IntMatrix = Vec::new();
    for l in (2..=bound).filter(|&l| is_prime(l) && n % l != 0) {
        let tl = &family[(l - 1) as usize];
        let al = eisenstein_eigenvalue(phi, l)?;
        for (j, b) in algebra.iter().enumerate() {
            let bm = unflatten(b, dim);
            let btl = coords(&linalg::int_mat_mul(&bm, tl))?;
            for i in 0..m {
                let zi = CyclotomicNumber::root_of_unity(k, i as i64);
                let mut v = vec![BigInt::zero(); t * m];
                for (jj, y) in btl.iter().enumerate() {
                    let (nums, _) = zi.integral_parts();
                    for (tt, z) in nums.iter().enumerate() {
                        v[jj * m + tt] += y * z;
                    }
                }
                let shift = &zi * &al;
                let (nums, den) = shift.integral_parts();
                debug_assert!(den.is_one());
                for (tt, z) in nums.iter().enumerate() {
                    v[j * m + tt] -= z;
                }
                gens.push(v);
            }
        }
    }
    let idx = linalg::lattice_index(&gens, t * m)
        .ok_or_else(|| Error::Internal("Eisenstein ideal has infinite index".into()))?;
    Ok(idx.abs().to_biguint().unwrap())
}
