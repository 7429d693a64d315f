//! Arbitrary-precision integers with a machine-word fast path.
//!
//! Coefficient arithmetic in this crate is dominated by small integers;
//! [`Zint`] keeps them in an `i128` and only promotes to a heap-allocated
//! [`BigInt`] on overflow. The representation is canonical: any value that
//! fits in an `i128` is stored in the `Small` variant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug)]
pub enum Zint {
    Small(i128),
    Big(Box<BigInt>),
}

impl Zint {
    pub const ZERO: Zint = Zint::Small(0);
    pub const ONE: Zint = Zint::Small(1);

    fn from_big(b: BigInt) -> Zint {
        match b.to_i128() {
            Some(v) => Zint::Small(v),
            None => Zint::Big(Box::new(b)),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match self {
            Zint::Small(v) => BigInt::from(*v),
            Zint::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Zint::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Zint::Small(1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Zint::Small(v) => *v < 0,
            Zint::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Zint {
        match self {
            Zint::Small(v) => match v.checked_abs() {
                Some(a) => Zint::Small(a),
                None => Zint::from_big(BigInt::from(*v).abs()),
            },
            Zint::Big(b) => Zint::from_big(b.abs()),
        }
    }

    pub fn neg(&self) -> Zint {
        match self {
            Zint::Small(v) => match v.checked_neg() {
                Some(n) => Zint::Small(n),
                None => Zint::from_big(-BigInt::from(*v)),
            },
            Zint::Big(b) => Zint::from_big(-(**b).clone()),
        }
    }

    pub fn add(&self, rhs: &Zint) -> Zint {
        if let (Zint::Small(a), Zint::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_add(*b) {
                return Zint::Small(s);
            }
        }
        Zint::from_big(self.to_bigint() + rhs.to_bigint())
    }

    pub fn sub(&self, rhs: &Zint) -> Zint {
        if let (Zint::Small(a), Zint::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_sub(*b) {
                return Zint::Small(s);
            }
        }
        Zint::from_big(self.to_bigint() - rhs.to_bigint())
    }

    pub fn mul(&self, rhs: &Zint) -> Zint {
        if let (Zint::Small(a), Zint::Small(b)) = (self, rhs) {
            if let Some(p) = a.checked_mul(*b) {
                return Zint::Small(p);
            }
        }
        Zint::from_big(self.to_bigint() * rhs.to_bigint())
    }

    /// Fused multiply-add: `acc += a * b`, avoiding temporaries on the fast path.
    pub fn mul_add_into(acc: &mut Zint, a: &Zint, b: &Zint) {
        if let (Zint::Small(x), Zint::Small(y), Zint::Small(z)) = (&*acc, a, b) {
            if let Some(p) = y.checked_mul(*z) {
                if let Some(s) = x.checked_add(p) {
                    *acc = Zint::Small(s);
                    return;
                }
            }
        }
        *acc = Zint::from_big(acc.to_bigint() + a.to_bigint() * b.to_bigint());
    }

    /// Exact division; panics if `rhs` does not divide `self`.
    pub fn div_exact(&self, rhs: &Zint) -> Zint {
        assert!(!rhs.is_zero(), "Zint::div_exact by zero");
        if let (Zint::Small(a), Zint::Small(b)) = (self, rhs) {
            debug_assert!(a % b == 0, "Zint::div_exact not exact");
            return Zint::Small(a / b);
        }
        let (q, r) = self.to_bigint().div_rem(&rhs.to_bigint());
        debug_assert!(r.is_zero(), "Zint::div_exact not exact");
        Zint::from_big(q)
    }

    pub fn divides(&self, other: &Zint) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        if let (Zint::Small(a), Zint::Small(b)) = (self, other) {
            return b % a == 0;
        }
        other.to_bigint().mod_floor(&self.to_bigint()).is_zero()
    }

    pub fn gcd(&self, rhs: &Zint) -> Zint {
        if let (Zint::Small(a), Zint::Small(b)) = (self, rhs) {
            return Zint::Small(gcd_i128(*a, *b));
        }
        Zint::from_big(self.to_bigint().gcd(&rhs.to_bigint()))
    }

    /// Value reduced into `[0, p)` for a word-sized modulus.
    pub fn rem_u64(&self, p: u64) -> u64 {
        match self {
            Zint::Small(v) => {
                let r = (v % (p as i128) + p as i128) % (p as i128);
                r as u64
            }
            Zint::Big(b) => {
                let r = (**b).mod_floor(&BigInt::from(p));
                r.to_u64().expect("residue fits u64")
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Zint::Small(v) => *v as f64,
            Zint::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    // gcd of two i128 values fits in i128 except gcd(MIN, MIN|0); the
    // promotion path never stores i128::MIN so the cast is safe.
    a as i128
}

impl From<i64> for Zint {
    fn from(v: i64) -> Self {
        Zint::Small(v as i128)
    }
}

impl From<i128> for Zint {
    fn from(v: i128) -> Self {
        Zint::Small(v)
    }
}

impl From<BigInt> for Zint {
    fn from(b: BigInt) -> Self {
        Zint::from_big(b)
    }
}

impl PartialEq for Zint {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Zint::Small(a), Zint::Small(b)) => a == b,
            (Zint::Big(a), Zint::Big(b)) => a == b,
            // canonical form: a Big never holds an i128-sized value
            _ => false,
        }
    }
}

impl Eq for Zint {}

impl PartialOrd for Zint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Zint {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Zint::Small(a), Zint::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl fmt::Display for Zint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Zint::Small(v) => write!(f, "{v}"),
            Zint::Big(b) => write!(f, "{b}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn promotes_on_overflow_and_stays_canonical() {
        let big = Zint::Small(i128::MAX);
        let sum = big.add(&Zint::ONE);
        assert!(matches!(sum, Zint::Big(_)));
        let back = sum.sub(&Zint::ONE);
        assert!(matches!(back, Zint::Small(_)));
        assert_eq!(back, Zint::Small(i128::MAX));
    }

    #[test]
    fn gcd_and_exact_division() {
        let a = Zint::from(84i64);
        let b = Zint::from(-30i64);
        assert_eq!(a.gcd(&b), Zint::from(6i64));
        assert_eq!(a.div_exact(&Zint::from(7i64)), Zint::from(12i64));
        let big = Zint::Small(i128::MAX).mul(&Zint::from(1024i64));
        assert_eq!(big.div_exact(&Zint::from(1024i64)), Zint::Small(i128::MAX));
    }

    #[test]
    fn residues() {
        assert_eq!(Zint::from(-3i64).rem_u64(7), 4);
        let big = Zint::Small(i128::MAX).mul(&Zint::Small(i128::MAX));
        let p = 2147483647u64;
        let expect = {
            let m = big.to_bigint().mod_floor(&BigInt::from(p));
            m.to_u64().unwrap()
        };
        assert_eq!(big.rem_u64(p), expect);
    }
}
