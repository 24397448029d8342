use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::cusps::CuspSet;
use super::p1::P1List;
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, RatMatrix};

type Sparse = Vec<(usize, Rational)>;

/// Manin's presentation of `H_1(X_0(N), cusps; Q)`: every P1 element as a
/// combination of a set of free Manin symbols.
#[derive(Clone, Debug)]
pub struct RelationSpace {
    /// P1 indices of the free generators
    pub free: Vec<usize>,
    /// each P1 element in terms of the free generators
    pub coords: Vec<Sparse>,
}

impl RelationSpace {
    pub fn rank(&self) -> usize {
        self.free.len()
    }
}

fn add_scaled(v: &mut HashMap<usize, Rational>, row: &[(usize, Rational)], f: &Rational) {
    for (c, x) in row {
        let e = v.entry(*c).or_insert_with(Rational::zero);
        *e += f * x;
        if e.is_zero() {
            v.remove(c);
        }
    }
}

/// Quotient by `x + x sigma = 0` and `x + x tau + x tau^2 = 0`.
pub fn relation_space(p1: &P1List) -> RelationSpace {
    let n = p1.len();
    // two-term relations: representative generator and sign, or zero
    let mut two: Vec<Option<(usize, i64)>> = vec![None; n];
    let mut gens = Vec::new();
    let mut gen_of = vec![usize::MAX; n];
    for i in 0..n {
        let j = p1.sigma(i);
        if i >= j {
            continue;
        }
        gen_of[i] = gens.len();
        gens.push(i);
        two[i] = Some((gen_of[i], 1));
        two[j] = Some((gen_of[i], -1));
    }
    // three-term relations over the generators
    let mut seen = vec![false; n];
    let mut rows: Vec<(usize, Sparse)> = Vec::new();
    let mut pivot_row: HashMap<usize, usize> = HashMap::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let orbit = [i, p1.tau(i), p1.tau(p1.tau(i))];
        for &x in &orbit {
            seen[x] = true;
        }
        let mut v: HashMap<usize, Rational> = HashMap::new();
        let members: &[usize] = if orbit[0] == orbit[1] { &orbit[..1] } else { &orbit };
        for &x in members {
            if let Some((g, s)) = two[x] {
                let e = v.entry(g).or_insert_with(Rational::zero);
                *e += Rational::from_integer(BigInt::from(s));
            }
        }
        v.retain(|_, x| !x.is_zero());
        for (p, row) in rows.iter() {
            if let Some(f) = v.get(p).cloned() {
                add_scaled(&mut v, row, &-f);
                v.remove(p);
            }
        }
        if v.is_empty() {
            continue;
        }
        let p = *v.keys().max().unwrap();
        let inv = v[&p].recip();
        let mut row: Sparse = v
            .into_iter()
            .filter(|(c, _)| *c != p)
            .map(|(c, x)| (c, x * &inv))
            .collect();
        row.sort_by_key(|e| e.0);
        pivot_row.insert(p, rows.len());
        rows.push((p, row));
    }
    // free generators and back substitution
    let free: Vec<usize> = (0..gens.len()).filter(|g| !pivot_row.contains_key(g)).collect();
    let free_pos: HashMap<usize, usize> = free.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let mut value: Vec<Option<Sparse>> = vec![None; gens.len()];
    for &g in &free {
        value[g] = Some(vec![(free_pos[&g], Rational::one())]);
    }
    for (p, row) in rows.iter().rev() {
        let mut acc: HashMap<usize, Rational> = HashMap::new();
        for (c, x) in row {
            let vc = value[*c].as_ref().expect("back substitution order");
            add_scaled(&mut acc, vc, &-x.clone());
        }
        let mut s: Sparse = acc.into_iter().collect();
        s.sort_by_key(|e| e.0);
        value[*p] = Some(s);
    }
    let coords = (0..n)
        .map(|i| match two[i] {
            None => Vec::new(),
            Some((g, s)) => value[g]
                .as_ref()
                .unwrap()
                .iter()
                .map(|(c, x)| (*c, x * Rational::from_integer(BigInt::from(s))))
                .collect(),
        })
        .collect();
    RelationSpace {
        free: free.iter().map(|&g| gens[g]).collect(),
        coords,
    }
}

/// Lift `(c : d)` to a matrix `[[a, b], [c', d']]` in `SL_2(Z)`.
pub fn lift_to_sl2(n: u64, c: u64, d: u64) -> (i64, i64, i64, i64) {
    let n = n as i64;
    let c1 = if c == 0 { n } else { c as i64 };
    let d1 = (0..)
        .map(|k| d as i64 + k * n)
        .find(|&x| c1.gcd(&x) == 1)
        .unwrap();
    // a d1 - b c1 = 1
    let e = d1.extended_gcd(&c1);
    debug_assert_eq!(e.gcd, 1);
    (e.x, -e.y, c1, d1)
}

/// Integral modular symbols for `Gamma_0(N)` with the boundary map.
#[derive(Clone, Debug)]
pub struct ModularSymbols {
    level: u64,
    p1: P1List,
    cusps: CuspSet,
    relations: RelationSpace,
    /// lattice coordinates of every Manin symbol
    symbol_coords: Vec<Vec<BigInt>>,
    /// lattice basis written in free-generator coordinates
    basis: RatMatrix,
    boundary: IntMatrix,
}

impl ModularSymbols {
    pub fn new(n: u64) -> Result<ModularSymbols> {
        Self::from_p1(P1List::new(n))
    }

    pub fn from_p1(p1: P1List) -> Result<ModularSymbols> {
        let n = p1.level();
        let cusps = CuspSet::new(n);
        let relations = relation_space(&p1);
        let r = relations.rank();
        let dense: Vec<Vec<Rational>> = relations
            .coords
            .iter()
            .map(|s| {
                let mut v = vec![Rational::zero(); r];
                for (c, x) in s {
                    v[*c] = x.clone();
                }
                v
            })
            .collect();
        let den = linalg::common_denominator(dense.iter().flatten());
        let scaled: IntMatrix = dense
            .iter()
            .map(|v| v.iter().map(|x| (x * &den).to_integer()).collect())
            .collect();
        let h = linalg::hnf(&scaled);
        if h.len() != r {
            return Err(Error::Internal(format!(
                "Manin symbols span rank {} but the presentation has rank {r}",
                h.len()
            )));
        }
        let den_r = Rational::from_integer(den);
        let basis: RatMatrix = h
            .iter()
            .map(|row| row.iter().map(|x| Rational::from_integer(x.clone()) / &den_r).collect())
            .collect();
        let binv = linalg::inverse(&basis).ok_or_else(|| Error::Internal("singular lattice basis".into()))?;
        let lattice = linalg::mat_mul(&dense, &binv);
        let symbol_coords = linalg::to_int(&lattice)
            .ok_or_else(|| Error::Internal("Manin symbol outside its own lattice".into()))?;
        // boundary of each free generator, then of each lattice basis vector
        let c = cusps.len();
        let free_boundary: RatMatrix = relations
            .free
            .iter()
            .map(|&i| {
                let mut v = vec![Rational::zero(); c];
                let (cc, dd) = p1.get(i);
                let (a, b, c1, d1) = lift_to_sl2(n, cc, dd);
                v[cusps.classify(a, c1)] += Rational::one();
                v[cusps.classify(b, d1)] -= Rational::one();
                v
            })
            .collect();
        let boundary = linalg::to_int(&linalg::mat_mul(&basis, &free_boundary))
            .ok_or_else(|| Error::Internal("non-integral boundary".into()))?;
        let ms = ModularSymbols {
            level: n,
            p1,
            cusps,
            relations,
            symbol_coords,
            basis,
            boundary,
        };
        ms.check_boundary_on_symbols()?;
        Ok(ms)
    }

    /// Every Manin symbol's boundary computed directly must agree with the
    /// boundary read through the presentation.
    fn check_boundary_on_symbols(&self) -> Result<()> {
        let c = self.cusps.len();
        for i in 0..self.p1.len() {
            let (cc, dd) = self.p1.get(i);
            let (a, b, c1, d1) = lift_to_sl2(self.level, cc, dd);
            let mut direct = vec![BigInt::zero(); c];
            direct[self.cusps.classify(a, c1)] += 1;
            direct[self.cusps.classify(b, d1)] -= 1;
            let via: Vec<BigInt> = (0..c)
                .map(|j| {
                    self.symbol_coords[i]
                        .iter()
                        .zip(&self.boundary)
                        .map(|(x, row)| x * &row[j])
                        .sum()
                })
                .collect();
            if direct != via {
                return Err(Error::Internal(format!(
                    "boundary inconsistent with relations at symbol {:?}",
                    self.p1.get(i)
                )));
            }
        }
        Ok(())
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn p1(&self) -> &P1List {
        &self.p1
    }

    pub fn cusps(&self) -> &CuspSet {
        &self.cusps
    }

    pub fn relations(&self) -> &RelationSpace {
        &self.relations
    }

    /// Rank of `H_1(X_0(N), cusps; Z)`.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Rows: boundaries of the lattice basis vectors, as divisors on cusps.
    pub fn boundary_matrix(&self) -> &IntMatrix {
        &self.boundary
    }

    pub fn symbol_coords(&self, i: usize) -> &[BigInt] {
        &self.symbol_coords[i]
    }

    /// Saturated basis of the integral cuspidal symbols `ker(boundary)`.
    pub fn cuspidal_basis(&self) -> IntMatrix {
        linalg::integer_left_kernel(&self.boundary, self.cusps.len())
    }

    /// `T_n` on the lattice via Merel's matrices
    /// `{[[a, b], [c, d]] : a > b >= 0, d > c >= 0, ad - bc = n}`.
    /// For `p | N` this is `U_p`.
    pub fn hecke_matrix(&self, n: u64) -> IntMatrix {
        let r = self.rank();
        let mats = merel_matrices(n);
        let t_free: IntMatrix = self
            .relations
            .free
            .iter()
            .map(|&i| {
                let (u, v) = self.p1.get(i);
                let (u, v) = (u as i64, v as i64);
                let mut acc = vec![BigInt::zero(); r];
                for &(a, b, c, d) in &mats {
                    if let Some(j) = self.p1.index_of(u * a + v * c, u * b + v * d) {
                        for (x, y) in acc.iter_mut().zip(&self.symbol_coords[j]) {
                            if !y.is_zero() {
                                *x += y;
                            }
                        }
                    }
                }
                acc
            })
            .collect();
        let t = linalg::mat_mul(&self.basis, &linalg::to_rat(&t_free));
        linalg::to_int(&t).expect("Hecke operator is integral on the lattice")
    }
}

/// Merel's set of matrices of determinant `n`.
pub fn merel_matrices(n: u64) -> Vec<(i64, i64, i64, i64)> {
    let n = n as i64;
    let mut out = Vec::new();
    for a in 1..=n {
        for b in 0..a {
            if b == 0 {
                if n % a == 0 {
                    let d = n / a;
                    for c in 0..d {
                        out.push((a, 0, c, d));
                    }
                }
                continue;
            }
            // d (a - b) < n and a d >= n
            let dmin = ((n + a - 1) / a).max(1);
            let mut d = dmin;
            while d * (a - b) < n {
                let num = a * d - n;
                if num % b == 0 {
                    let c = num / b;
                    if c >= 0 && c < d {
                        out.push((a, b, c, d));
                    }
                }
                d += 1;
            }
        }
    }
    out
}

/// `true` when the rows of `m` span a sublattice stable under `t` (rows).
pub fn is_stable(m: &[Vec<BigInt>], t: &[Vec<BigInt>]) -> bool {
    if m.is_empty() {
        return true;
    }
    let image = linalg::int_mat_mul(m, t);
    let r = linalg::to_rat(m);
    image
        .iter()
        .all(|v| linalg::solve_left(&r, &linalg::to_rat(std::slice::from_ref(v))[0]).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merel_counts() {
        // the count is sum_{ad = n, d > c >= 0} 1 plus the b > 0 terms; for
        // n = 2 the set is {[[2,0],[0,1]], [[1,0],[0,2]], [[1,0],[1,2]], [[2,1],[0,1]]}
        let mut m = merel_matrices(2);
        m.sort();
        assert_eq!(m, vec![(1, 0, 0, 2), (1, 0, 1, 2), (2, 0, 0, 1), (2, 1, 0, 1)]);
        for n in 1..30u64 {
            for (a, b, c, d) in merel_matrices(n) {
                assert_eq!(a * d - b * c, n as i64);
                assert!(a > b && b >= 0 && d > c && c >= 0);
            }
        }
    }

    #[test]
    fn lifts_are_in_sl2() {
        let p1 = P1List::new(12);
        for &(c, d) in p1.elements() {
            let (a, b, c1, d1) = lift_to_sl2(12, c, d);
            assert_eq!(a * d1 - b * c1, 1);
            assert_eq!(p1.index_of(c1, d1), p1.index_of(c as i64, d as i64));
        }
    }

    #[test]
    fn presentation_ranks() {
        assert_eq!(ModularSymbols::new(1).unwrap().rank(), 0);
        assert_eq!(ModularSymbols::new(11).unwrap().rank(), 3);
        assert_eq!(ModularSymbols::new(49).unwrap().rank(), 9);
    }
}
