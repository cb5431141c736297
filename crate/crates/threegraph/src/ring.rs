//! Exact scalar rings for the generating-polynomial and Pfaffian machinery.
//!
//! Everything in this crate is exact: big integers or a prime field. The
//! [`Scalar`] bound is satisfied by `num_bigint::BigInt` and by [`Gfp`], a
//! prime field with runtime modulus.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// Exact commutative ring scalar.
pub trait Scalar:
    Clone
    + PartialEq
    + std::fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Embeds a small signed integer.
    fn from_i64(v: i64) -> Self;
}

impl Scalar for num_bigint::BigInt {
    fn from_i64(v: i64) -> Self {
        num_bigint::BigInt::from(v)
    }
}

/// Element of the prime field `F_q` with runtime modulus.
///
/// `modulus == 0` marks a modulus-agnostic small constant (only 0 and 1 are
/// produced this way, by `zero()`/`one()`); the modulus attaches on the first
/// operation with a proper element.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Gfp {
    value: u64,
    modulus: u64,
}

impl Gfp {
    pub fn new(value: i64, modulus: u64) -> Self {
        assert!(modulus >= 2);
        let m = modulus as i128;
        let v = ((value as i128 % m) + m) % m;
        Gfp {
            value: v as u64,
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn unify(a: Gfp, b: Gfp) -> (u64, u64, u64) {
        let m = match (a.modulus, b.modulus) {
            (0, 0) => 0,
            (0, m) | (m, 0) => m,
            (m1, m2) => {
                assert_eq!(m1, m2, "mixed moduli");
                m1
            }
        };
        if m == 0 {
            (a.value, b.value, 0)
        } else {
            (a.value % m, b.value % m, m)
        }
    }

    pub fn inverse(&self) -> Gfp {
        assert!(self.modulus >= 2 && self.value != 0, "no inverse");
        // Fermat: q is prime throughout this crate.
        let mut result: u128 = 1;
        let mut base = self.value as u128;
        let m = self.modulus as u128;
        let mut e = self.modulus - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        Gfp {
            value: result as u64,
            modulus: self.modulus,
        }
    }
}

impl Add for Gfp {
    type Output = Gfp;
    fn add(self, rhs: Gfp) -> Gfp {
        let (a, b, m) = Gfp::unify(self, rhs);
        if m == 0 {
            return Gfp { value: a + b, modulus: 0 };
        }
        Gfp { value: (a + b) % m, modulus: m }
    }
}

impl Sub for Gfp {
    type Output = Gfp;
    fn sub(self, rhs: Gfp) -> Gfp {
        let (a, b, m) = Gfp::unify(self, rhs);
        if m == 0 {
            assert!(a >= b, "underflow on unattached constants");
            return Gfp { value: a - b, modulus: 0 };
        }
        Gfp { value: (a + m - b) % m, modulus: m }
    }
}

impl Mul for Gfp {
    type Output = Gfp;
    fn mul(self, rhs: Gfp) -> Gfp {
        let (a, b, m) = Gfp::unify(self, rhs);
        if m == 0 {
            return Gfp { value: a * b, modulus: 0 };
        }
        Gfp {
            value: (a as u128 * b as u128 % m as u128) as u64,
            modulus: m,
        }
    }
}

impl Neg for Gfp {
    type Output = Gfp;
    fn neg(self) -> Gfp {
        if self.modulus == 0 {
            assert_eq!(self.value, 0, "cannot negate an unattached constant");
            return self;
        }
        Gfp {
            value: (self.modulus - self.value % self.modulus) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Zero for Gfp {
    fn zero() -> Self {
        Gfp { value: 0, modulus: 0 }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl One for Gfp {
    fn one() -> Self {
        Gfp { value: 1, modulus: 0 }
    }
}

impl Scalar for Gfp {
    fn from_i64(v: i64) -> Self {
        // Attaches to a modulus on first use; only small non-negative
        // constants may stay unattached.
        if v >= 0 {
            Gfp { value: v as u64, modulus: 0 }
        } else {
            panic!("negative constant needs a modulus; use Gfp::new")
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime `>= n`.
pub fn next_prime(n: u64) -> u64 {
    let mut k = n.max(2);
    while !is_prime(k) {
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic() {
        let a = Gfp::new(3, 5);
        let b = Gfp::new(4, 5);
        assert_eq!((a + b).value(), 2);
        assert_eq!((a * b).value(), 2);
        assert_eq!((-a).value(), 2);
        assert_eq!((a.inverse() * a).value(), 1);
        assert_eq!(Gfp::new(-7, 5).value(), 3);
    }

    #[test]
    fn unattached_constants_adopt_modulus() {
        let z: Gfp = Zero::zero();
        let a = Gfp::new(3, 7);
        assert_eq!((z + a).value(), 3);
        let o: Gfp = One::one();
        assert_eq!((o * a).value(), 3);
    }

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(13) && !is_prime(12) && !is_prime(1));
        assert_eq!(next_prime(4), 5);
        assert_eq!(next_prime(8), 11);
        assert_eq!(next_prime(13), 13);
    }
}
