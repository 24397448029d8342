use num_integer::Integer;

/// `P^1(Z/NZ)`: pairs `(c : d)` with `gcd(c, d, N) = 1` up to units.
#[derive(Clone, Debug)]
pub struct P1List {
    n: u64,
    elements: Vec<(u64, u64)>,
    /// `index[c * N + d]` for every admissible pair
    index: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl P1List {
    pub fn new(n: u64) -> P1List {
        assert!(n >= 1);
        let nn = n as usize;
        let units: Vec<u64> = (0..n).filter(|&u| u.gcd(&n) == 1 || n == 1).collect();
        let mut index = vec![NONE; nn * nn];
        let mut elements = Vec::new();
        for c in 0..n {
            for d in 0..n {
                if index[(c * n + d) as usize] != NONE || c.gcd(&d).gcd(&n) != 1 {
                    continue;
                }
                let id = elements.len() as u32;
                elements.push((c, d));
                for &u in &units {
                    let (uc, ud) = ((u * c) % n, (u * d) % n);
                    index[(uc * n + ud) as usize] = id;
                }
            }
        }
        P1List { n, elements, index }
    }

    /// Same set with the enumeration order permuted by `perm` (new position
    /// `i` holds old element `perm[i]`).
    pub fn permuted(&self, perm: &[usize]) -> P1List {
        assert_eq!(perm.len(), self.elements.len());
        let mut inv = vec![0u32; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new as u32;
        }
        P1List {
            n: self.n,
            elements: perm.iter().map(|&i| self.elements[i]).collect(),
            index: self
                .index
                .iter()
                .map(|&i| if i == NONE { NONE } else { inv[i as usize] })
                .collect(),
        }
    }

    pub fn level(&self) -> u64 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, i: usize) -> (u64, u64) {
        self.elements[i]
    }

    pub fn elements(&self) -> &[(u64, u64)] {
        &self.elements
    }

    /// Index of `(c : d)`, or `None` when `gcd(c, d, N) > 1`.
    pub fn index_of(&self, c: i64, d: i64) -> Option<usize> {
        let n = self.n as i64;
        let (c, d) = (c.rem_euclid(n), d.rem_euclid(n));
        let i = self.index[(c * n + d) as usize];
        (i != NONE).then_some(i as usize)
    }

    /// `(c : d) sigma = (d : -c)`
    pub fn sigma(&self, i: usize) -> usize {
        let (c, d) = self.elements[i];
        self.index_of(d as i64, -(c as i64)).unwrap()
    }

    /// `(c : d) tau = (d : -c - d)`
    pub fn tau(&self, i: usize) -> usize {
        let (c, d) = self.elements[i];
        self.index_of(d as i64, -(c as i64) - d as i64).unwrap()
    }
}

/// `[Gamma(1) : Gamma_0(N)] = N prod_{p | N} (1 + 1/p)`.
pub fn index_gamma0(n: u64) -> u64 {
    crate::arith::prime_divisors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(P1List::new(1).len(), 1);
        assert_eq!(P1List::new(4).len(), 6);
        assert_eq!(P1List::new(6).len(), 12);
        for n in 1..=120 {
            assert_eq!(P1List::new(n).len() as u64, index_gamma0(n), "N = {n}");
        }
    }

    #[test]
    fn involutions() {
        for n in [1u64, 2, 11, 12, 25, 36] {
            let p = P1List::new(n);
            for i in 0..p.len() {
                assert_eq!(p.sigma(p.sigma(i)), i);
                assert_eq!(p.tau(p.tau(p.tau(i))), i);
            }
        }
    }
}
