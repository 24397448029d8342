use std::collections::HashMap;

use num_integer::Integer;

use crate::arith::{divisors, gcd};

/// A `Gamma_0(N)`-class of cusps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspClass {
    /// representative `numerator / denominator` in lowest terms (`1/N` for infinity)
    pub numerator: i64,
    pub denominator: i64,
    /// `gcd(denominator, N)`
    pub level: u64,
    /// class of `a * (c / level)` in `(Z/tZ)^x`, `t = gcd(level, N / level)`
    pub label: u64,
    /// width `N / (level * t)`
    pub ramification: u64,
}

/// All cusps of `X_0(N)`, ordered by level and then by label.
#[derive(Clone, Debug)]
pub struct CuspSet {
    n: u64,
    classes: Vec<CuspClass>,
    lookup: HashMap<(u64, u64), usize>,
}

impl CuspSet {
    pub fn new(n: u64) -> CuspSet {
        let mut classes = Vec::new();
        for d in divisors(n) {
            let t = gcd(d, n / d);
            for x in 0..t.max(1) {
                if t > 1 && gcd(x, t) != 1 {
                    continue;
                }
                let numerator = if d == 1 {
                    0
                } else {
                    (0..)
                        .map(|k| (x + k * t) as i64)
                        .find(|&a| a > 0 && gcd(a as u64, d) == 1)
                        .unwrap()
                };
                classes.push(CuspClass {
                    numerator,
                    denominator: d as i64,
                    level: d,
                    label: if t == 1 { 0 } else { x },
                    ramification: n / (d * t),
                });
            }
        }
        let lookup = classes
            .iter()
            .enumerate()
            .map(|(i, c)| ((c.level, c.label), i))
            .collect();
        CuspSet { n, classes, lookup }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[CuspClass] {
        &self.classes
    }

    pub fn get(&self, i: usize) -> &CuspClass {
        &self.classes[i]
    }

    /// Class of `a / c` (any integers, not both zero; `c = 0` is infinity).
    pub fn classify(&self, a: i64, c: i64) -> usize {
        let n = self.n;
        let g = a.gcd(&c);
        let (a, c) = (a / g, c / g);
        let d = gcd(c.unsigned_abs(), n);
        let t = gcd(d, n / d);
        let label = if t == 1 {
            0
        } else {
            let cp = (c / d as i64).rem_euclid(t as i64);
            ((a.rem_euclid(t as i64) * cp) % t as i64) as u64
        };
        self.lookup[&(d, label)]
    }

    pub fn infinity(&self) -> usize {
        self.classes.len() - 1
    }

    pub fn zero(&self) -> usize {
        0
    }

    /// Indices of the cusps of a given level, by label.
    pub fn of_level(&self, d: u64) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&i| self.classes[i].level == d)
            .collect()
    }

    /// Permutation of the level-`d` cusps induced by `u` in `(Z/dZ)^x`
    /// (label multiplication), as a list of `(from, to)` cusp indices.
    pub fn unit_action(&self, d: u64, u: u64) -> Vec<(usize, usize)> {
        let t = gcd(d, self.n / d);
        self.of_level(d)
            .into_iter()
            .map(|i| {
                let lab = if t == 1 {
                    0
                } else {
                    (self.classes[i].label * u) % t
                };
                (i, self.lookup[&(d, lab)])
            })
            .collect()
    }
}

/// Cremona's criterion: `a1/c1 ~ a2/c2` iff `s1 c2 = s2 c1 mod gcd(c1 c2, N)`
/// where `a_j s_j = 1 mod c_j`.
pub fn cusps_equivalent(n: u64, a1: i64, c1: i64, a2: i64, c2: i64) -> bool {
    let norm = |a: i64, c: i64| {
        let g = a.gcd(&c);
        let (a, c) = (a / g, c / g);
        if c < 0 {
            (-a, -c)
        } else {
            (a, c)
        }
    };
    let (a1, c1) = norm(a1, c1);
    let (a2, c2) = norm(a2, c2);
    let inv = |a: i64, c: i64| -> i64 {
        if c == 1 || c == 0 {
            0
        } else {
            crate::arith::inverse_mod(a, c).unwrap()
        }
    };
    let (s1, s2) = (inv(a1, c1), inv(a2, c2));
    let m = ((c1 * c2).unsigned_abs()).gcd(&n) as i64;
    let m = if m == 0 { n as i64 } else { m };
    (s1 * c2 - s2 * c1).rem_euclid(m) == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::euler_phi;

    #[test]
    fn counts_and_widths() {
        assert_eq!(CuspSet::new(25).len(), 6);
        for n in 1..=200u64 {
            let cs = CuspSet::new(n);
            let expect: u64 = divisors(n).iter().map(|&d| euler_phi(gcd(d, n / d))).sum();
            assert_eq!(cs.len() as u64, expect);
            let zero = cs.get(cs.classify(0, 1));
            assert_eq!((zero.level, zero.ramification), (1, n));
            let inf = cs.get(cs.classify(1, n as i64));
            assert_eq!((inf.level, inf.ramification), (n, 1));
            assert_eq!(cs.classify(1, 0), cs.infinity());
            let total: u64 = cs.classes().iter().map(|c| c.ramification).sum();
            assert_eq!(total, crate::modsym::p1::index_gamma0(n));
        }
    }

    #[test]
    fn classification_agrees_with_cremona() {
        for n in [12u64, 25, 36, 50, 72] {
            let cs = CuspSet::new(n);
            let mut fracs = Vec::new();
            for c in 1..=2 * n as i64 {
                for a in -3..=c {
                    if a.gcd(&c) == 1 {
                        fracs.push((a, c));
                    }
                }
            }
            for &(a, c) in &fracs {
                let k = cs.classify(a, c);
                let rep = cs.get(k);
                assert!(cusps_equivalent(n, a, c, rep.numerator, rep.denominator), "{a}/{c} N={n}");
            }
            for (i, x) in cs.classes().iter().enumerate() {
                for (j, y) in cs.classes().iter().enumerate() {
                    assert_eq!(
                        cusps_equivalent(n, x.numerator, x.denominator, y.numerator, y.denominator),
                        i == j
                    );
                }
            }
        }
    }

    #[test]
    fn unit_action_orbits() {
        let n = 50u64;
        let cs = CuspSet::new(n);
        for d in divisors(n) {
            let lvl = cs.of_level(d);
            assert_eq!(lvl.len() as u64, euler_phi(gcd(d, n / d)));
            for u in 1..d.max(2) {
                if gcd(u, d) != 1 {
                    continue;
                }
                let perm = cs.unit_action(d, u);
                let mut targets: Vec<usize> = perm.iter().map(|p| p.1).collect();
                targets.sort();
                assert_eq!(targets, lvl);
            }
        }
    }
}
