//! Dense exact linear algebra over `Z` and `Q`, sized for modular-symbol
//! spaces of a few hundred generators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

pub type IntMatrix = Vec<Vec<BigInt>>;
pub type RatMatrix = Vec<Vec<Rational>>;

/// Determinant by fraction-free Gaussian elimination.
pub fn det_bareiss(mut m: IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Unimodular row reduction on the first `ncols` columns. Rows are
/// reordered so that the leading `rank` rows carry positive pivots in
/// increasing columns with entries above each pivot reduced into
/// `[0, pivot)`. Columns past `ncols` ride along (transform tracking).
/// Returns the rank and pivot columns.
pub fn row_echelon_int(a: &mut IntMatrix, ncols: usize) -> Vec<usize> {
    let m = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()));
            let Some(p) = best else { break };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..m {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[r][col]);
                let (top, rest) = a.split_at_mut(i);
                axpy(&mut rest[0], &top[r], &q);
                if !a[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < m && !a[r][col].is_zero() {
            if a[r][col].is_negative() {
                for v in a[r].iter_mut() {
                    *v = -&*v;
                }
            }
            for i in 0..r {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[r][col]);
                let (top, rest) = a.split_at_mut(r);
                axpy(&mut top[i], &rest[0], &q);
            }
            pivots.push(col);
            r += 1;
        }
    }
    pivots
}

/// `row -= q * other`
fn axpy(row: &mut [BigInt], other: &[BigInt], q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (x, y) in row.iter_mut().zip(other) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

/// Hermite normal form basis of the row lattice (nonzero rows only).
pub fn hnf(rows: &[Vec<BigInt>]) -> IntMatrix {
    if rows.is_empty() {
        return Vec::new();
    }
    let n = rows[0].len();
    let mut a = rows.to_vec();
    let piv = row_echelon_int(&mut a, n);
    a.truncate(piv.len());
    a
}

/// Saturated basis of `{x in Z^m : x A = 0}` for an `m x n` integer matrix.
pub fn integer_left_kernel(a: &[Vec<BigInt>], n: usize) -> IntMatrix {
    let m = a.len();
    let mut aug: IntMatrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let rank = row_echelon_int(&mut aug, n).len();
    let mut ker: IntMatrix = aug[rank..].iter().map(|r| r[n..].to_vec()).collect();
    if !ker.is_empty() {
        let w = ker[0].len();
        row_echelon_int(&mut ker, w);
    }
    ker
}

/// Index of the row lattice in `Z^n`; `None` when it is not of full rank.
pub fn lattice_index(rows: &[Vec<BigInt>], n: usize) -> Option<BigInt> {
    if n == 0 {
        return Some(BigInt::one());
    }
    let h = hnf(rows);
    if h.len() < n {
        return None;
    }
    Some((0..n).fold(BigInt::one(), |acc, i| acc * &h[i][i]))
}

/// Nonzero invariant factors (Smith normal form diagonal), each dividing
/// the next.
pub fn smith_invariants(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a = hnf(rows);
    let m = a.len();
    if m == 0 {
        return Vec::new();
    }
    let n = a[0].len();
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish_smith(diag);
            };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            let mut clean = true;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (top, rest) = a.split_at_mut(i);
                axpy(&mut rest[0], &top[t], &q);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let v = &q * &row[t];
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let piv = a[t][t].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&a[i][j] % &piv).is_zero()));
            if let Some(i) = bad {
                let (top, rest) = a.split_at_mut(i);
                axpy(&mut top[t], &rest[0], &-BigInt::one());
                continue;
            }
            diag.push(piv.abs());
            break;
        }
    }
    finish_smith(diag)
}

fn finish_smith(mut diag: Vec<BigInt>) -> Vec<BigInt> {
    diag.sort();
    diag
}

pub fn to_rat(m: &[Vec<BigInt>]) -> RatMatrix {
    m.iter()
        .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect()
}

/// Integer matrix from a rational one, if every entry is integral.
pub fn to_int(m: &[Vec<Rational>]) -> Option<IntMatrix> {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|x| x.is_integer().then(|| x.to_integer()))
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> RatMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> RatMatrix {
    let k = b.len();
    let n = if k == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            let mut out = vec![Rational::zero(); n];
            for (t, x) in row.iter().enumerate().take(k) {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&b[t]) {
                    if !y.is_zero() {
                        *o += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

pub fn int_mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> IntMatrix {
    let k = b.len();
    let n = if k == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            let mut out = vec![BigInt::zero(); n];
            for (t, x) in row.iter().enumerate().take(k) {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&b[t]) {
                    if !y.is_zero() {
                        *o += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

pub fn vec_mat(v: &[Rational], m: &[Vec<Rational>], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (x, row) in v.iter().zip(m) {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(row) {
            if !y.is_zero() {
                *o += x * y;
            }
        }
    }
    out
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(a: &mut RatMatrix) -> Vec<usize> {
    let m = a.len();
    if m == 0 {
        return Vec::new();
    }
    let n = a[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].recip();
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..m {
            if i == r || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            let (lo, hi) = if i < r {
                let (x, y) = a.split_at_mut(r);
                (&mut x[i], &y[0])
            } else {
                let (x, y) = a.split_at_mut(i);
                (&mut y[0], &x[r])
            };
            for (u, w) in lo.iter_mut().zip(hi.iter()) {
                if !w.is_zero() {
                    *u -= &f * w;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

pub fn rank(a: &[Vec<Rational>]) -> usize {
    let mut b = a.to_vec();
    rref(&mut b).len()
}

/// Basis of `{x : A x = 0}` for an `m x n` matrix.
pub fn right_kernel(a: &[Vec<Rational>], n: usize) -> RatMatrix {
    let mut b = a.to_vec();
    let piv = rref(&mut b);
    let free: Vec<usize> = (0..n).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (r, &pc) in piv.iter().enumerate() {
                v[pc] = -b[r][f].clone();
            }
            v
        })
        .collect()
}

pub fn transpose<T: Clone>(a: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    (0..ncols)
        .map(|j| a.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Basis of `{x : x A = 0}` for an `m x n` matrix.
pub fn left_kernel(a: &[Vec<Rational>], n: usize) -> RatMatrix {
    let m = a.len();
    right_kernel(&transpose(a, n), m)
}

/// Some `y` with `y * rows = target`, if one exists.
pub fn solve_left(rows: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let m = rows.len();
    let n = target.len();
    // columns of the augmented system A^T y = target
    let mut aug: RatMatrix = (0..n)
        .map(|j| {
            let mut r: Vec<Rational> = rows.iter().map(|row| row[j].clone()).collect();
            r.push(target[j].clone());
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.contains(&m) {
        return None;
    }
    let mut y = vec![Rational::zero(); m];
    for (r, &c) in piv.iter().enumerate() {
        y[c] = aug[r][m].clone();
    }
    Some(y)
}

pub fn inverse(a: &[Vec<Rational>]) -> Option<RatMatrix> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut aug: RatMatrix = a
        .iter()
        .zip(identity(n))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Characteristic polynomial `det(x I - A)`, lowest degree first, by the
/// Faddeev-LeVerrier recursion.
pub fn charpoly(a: &[Vec<Rational>]) -> Vec<Rational> {
    let n = a.len();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        let mut next = mat_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n + 1 - k];
        }
        m = next;
        let am = mat_mul(a, &m);
        let tr = (0..n).fold(Rational::zero(), |acc, i| acc + &am[i][i]);
        c[n - k] = -tr / Rational::from_integer(BigInt::from(k));
    }
    c
}

/// `f(A)` by Horner's rule.
pub fn poly_eval_matrix(f: &[Rational], a: &[Vec<Rational>]) -> RatMatrix {
    let n = a.len();
    let mut acc = vec![vec![Rational::zero(); n]; n];
    for coef in f.iter().rev() {
        acc = mat_mul(&acc, a);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] += coef;
        }
    }
    acc
}

/// Least common multiple of all denominators.
pub fn common_denominator<'a>(entries: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    entries
        .into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    fn im(rows: &[&[i64]]) -> IntMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn determinant() {
        assert_eq!(det_bareiss(im(&[&[2, 1], &[1, 3]])), BigInt::from(5));
        assert_eq!(
            det_bareiss(im(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]])),
            BigInt::from(-2)
        );
        assert_eq!(det_bareiss(im(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn smith_of_known_matrix() {
        let a = im(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_invariants(&a);
        assert_eq!(s, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn kernel_is_saturated() {
        let a = im(&[&[2], &[4]]);
        let k = integer_left_kernel(&a, 1);
        assert_eq!(k.len(), 1);
        let v: Vec<i64> = k[0].iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert!(v == vec![2, -1] || v == vec![-2, 1]);
    }

    #[test]
    fn charpoly_of_companion() {
        // companion of x^2 - 3x + 2
        let a = vec![vec![rat(0, 1), rat(1, 1)], vec![rat(-2, 1), rat(3, 1)]];
        assert_eq!(charpoly(&a), vec![rat(2, 1), rat(-3, 1), rat(1, 1)]);
        let z = poly_eval_matrix(&charpoly(&a), &a);
        assert!(z.iter().flatten().all(|x| x.is_zero()));
    }

    #[test]
    fn solve_and_invert() {
        let a = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(3, 1), rat(4, 1)]];
        let y = solve_left(&a, &[rat(5, 1), rat(8, 1)]).unwrap();
        assert_eq!(vec_mat(&y, &a, 2), vec![rat(5, 1), rat(8, 1)]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        let sing = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]];
        assert!(inverse(&sing).is_none());
        assert!(solve_left(&sing, &[rat(1, 1), rat(0, 1)]).is_none());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn smith_product_is_abs_det(v in proptest::collection::vec(-9i64..10, 9)) {
            let a: IntMatrix = v.chunks(3).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let det = det_bareiss(a.clone()).abs();
            let s = smith_invariants(&a);
            if det.is_zero() {
                prop_assert!(s.len() < 3);
            } else {
                prop_assert_eq!(s.len(), 3);
                prop_assert_eq!(s.iter().product::<BigInt>(), det.clone());
                prop_assert!((&s[1] % &s[0]).is_zero() && (&s[2] % &s[1]).is_zero());
                prop_assert_eq!(lattice_index(&a, 3), Some(det));
            }
        }

        #[test]
        fn smith_ignores_row_order(v in proptest::collection::vec(-9i64..10, 12)) {
            let a: IntMatrix = v.chunks(3).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let mut b = a.clone();
            b.reverse();
            prop_assert_eq!(smith_invariants(&a), smith_invariants(&b));
        }

        #[test]
        fn left_kernel_annihilates(v in proptest::collection::vec(-5i64..6, 12)) {
            let a: IntMatrix = v.chunks(2).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let k = integer_left_kernel(&a, 2);
            let prod = int_mat_mul(&k, &a);
            prop_assert!(prod.iter().flatten().all(|x| x.is_zero()));
            let r = rank(&to_rat(&a));
            prop_assert_eq!(k.len(), 6 - r);
        }
    }
}
