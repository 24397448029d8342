//! Generalized Bernoulli numbers `B_1(chi)` and `B_2(chi)`.

use num_traits::Zero;

use crate::arith::{rat, CyclotomicNumber, Rational};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};

/// A generalized Bernoulli number together with the data it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliValue {
    pub value: CyclotomicNumber,
    pub character_modulus: u64,
    pub weight: u32,
}

/// Coefficients (lowest degree first) of `B_1(x) = x - 1/2` or
/// `B_2(x) = x^2 - x + 1/6`.
pub fn bernoulli_polynomial(k: u32) -> Result<Vec<Rational>> {
    match k {
        1 => Ok(vec![rat(-1, 2), rat(1, 1)]),
        2 => Ok(vec![rat(1, 6), rat(-1, 1), rat(1, 1)]),
        _ => Err(Error::UnsupportedWeight(k)),
    }
}

pub fn eval_bernoulli_polynomial(k: u32, x: &Rational) -> Result<Rational> {
    Ok(bernoulli_polynomial(k)?
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + c))
}

/// `B_k(chi) = f^{k-1} sum_{a=1}^{f} chi(a) B_k(a/f)` with `f` the stored
/// modulus of `chi`, exactly at level `L`.
pub fn generalized_bernoulli(chi: &DirichletCharacter, k: u32, level: u64) -> Result<CyclotomicNumber> {
    bernoulli_polynomial(k)?;
    let o = chi.order();
    if level % o != 0 {
        return Err(Error::InsufficientLevel {
            order: o,
            modulus: chi.modulus(),
            needed: o,
            level,
        });
    }
    let f = chi.modulus() as i64;
    let scale = rat(f.pow(k - 1), 1);
    let mut coeffs = vec![Rational::zero(); level as usize];
    for a in 1..=f {
        if let Some(e) = chi.value_exponent(a) {
            let b = eval_bernoulli_polynomial(k, &rat(a, f))?;
            coeffs[(e * (level / o)) as usize] += b * &scale;
        }
    }
    Ok(CyclotomicNumber::from_cyclic(level, &coeffs))
}

pub fn bernoulli_value(chi: &DirichletCharacter, k: u32, level: u64) -> Result<BernoulliValue> {
    Ok(BernoulliValue {
        value: generalized_bernoulli(chi, k, level)?,
        character_modulus: chi.modulus(),
        weight: k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{enumerate_characters, quadratic_character};

    #[test]
    fn polynomial_values() {
        assert_eq!(eval_bernoulli_polynomial(1, &rat(0, 1)).unwrap(), rat(-1, 2));
        assert_eq!(eval_bernoulli_polynomial(2, &rat(0, 1)).unwrap(), rat(1, 6));
        assert_eq!(eval_bernoulli_polynomial(2, &rat(1, 1)).unwrap(), rat(1, 6));
        assert_eq!(bernoulli_polynomial(3), Err(Error::UnsupportedWeight(3)));
    }

    #[test]
    fn small_values() {
        let q3 = quadratic_character(3).unwrap();
        assert_eq!(
            generalized_bernoulli(&q3, 1, 2).unwrap().as_rational(),
            Some(rat(-1, 3))
        );
        let triv = DirichletCharacter::trivial(1);
        assert_eq!(
            generalized_bernoulli(&triv, 2, 1).unwrap().as_rational(),
            Some(rat(1, 6))
        );
        let q4 = DirichletCharacter::new(4, vec![1]).unwrap();
        assert!(generalized_bernoulli(&q4, 2, 2).unwrap().is_zero());
        assert!(generalized_bernoulli(&q3, 1, 3).is_err());
    }

    #[test]
    fn parity_vanishing_and_alternative_formula() {
        for m in 1..=50u64 {
            for chi in enumerate_characters(m) {
                let l = chi.order();
                let b1 = generalized_bernoulli(&chi, 1, l).unwrap();
                let b2 = generalized_bernoulli(&chi, 2, l).unwrap();
                if chi.is_even() && !chi.is_trivial() {
                    assert!(b1.is_zero(), "{chi}");
                }
                if !chi.is_even() {
                    assert!(b2.is_zero(), "{chi}");
                }
                if !chi.is_trivial() {
                    // B_1(chi) = (1/f) sum chi(a) a
                    let mut alt = CyclotomicNumber::zero(l);
                    for a in 1..=m as i64 {
                        let v = chi.evaluate(a, l).unwrap().scale(&rat(a, m as i64));
                        alt = &alt + &v;
                    }
                    assert_eq!(b1, alt, "{chi}");
                }
                let c = chi.conj();
                assert_eq!(generalized_bernoulli(&c, 1, l).unwrap(), b1.conj());
                assert_eq!(generalized_bernoulli(&c, 2, l).unwrap(), b2.conj());
            }
        }
    }
}
