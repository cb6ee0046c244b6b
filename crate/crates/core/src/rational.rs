//! Exact rational coefficients and small helpers shared across the crate.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Arbitrary-precision rational: the coefficient field everywhere.
pub type Q = num_rational::BigRational;

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as an exact rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn is_zero(x: &Q) -> bool {
    x.is_zero()
}

pub fn is_one(x: &Q) -> bool {
    x.is_one()
}

/// Small-height random rational for generic combinations: numerator in
/// [-5, 5], denominator in [1, 3]. Zero is allowed.
pub fn random_small(rng: &mut impl Rng) -> Q {
    let n: i64 = rng.gen_range(-5..=5);
    let d: i64 = rng.gen_range(1..=3);
    q(n, d)
}

/// Nonzero small-height random rational.
pub fn random_small_nonzero(rng: &mut impl Rng) -> Q {
    loop {
        let x = random_small(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Canonical text form: `p` or `p/q` with `q > 0`.
pub fn render(x: &Q) -> String {
    x.to_string()
}

/// Height of a rational: max(|numerator|, denominator). Used by tests.
pub fn height(x: &Q) -> BigInt {
    let n = x.numer().abs();
    let d = x.denom().clone();
    if n > d {
        n
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_normalize() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(-2, -4), q(1, 2));
        assert_eq!(q(2, -4), q(-1, 2));
        assert!(is_zero(&q(0, 5)));
        assert!(is_one(&q(3, 3)));
    }

    #[test]
    fn rendering() {
        assert_eq!(render(&q(-3, 4)), "-3/4");
        assert_eq!(render(&qi(7)), "7");
        assert_eq!(render(&qi(0)), "0");
    }

    #[test]
    fn random_small_height_is_bounded() {
        let mut rng = rand::thread_rng();
        for _ in 0..200 {
            let x = random_small(&mut rng);
            assert!(height(&x) <= BigInt::from(5));
        }
    }
}
