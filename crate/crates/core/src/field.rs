//! Arithmetic in Z/p for word-sized primes, plus the arithmetic-operation
//! counter shared by every computation context.

use std::cell::Cell;
use std::fmt;

/// An element of Z/p, stored as its least nonnegative residue.
///
/// A scalar does not know its modulus; all arithmetic goes through a
/// [`PrimeField`] (usually via [`crate::Ring`], which also counts operations).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(u32);

impl Scalar {
    pub const ZERO: Scalar = Scalar(0);
    pub const ONE: Scalar = Scalar(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Z/p with p an odd prime below 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

pub const MAX_PRIME_EXCLUSIVE: u64 = 1 << 31;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    /// Returns `None` unless `p` is an odd prime below 2^31.
    pub fn new(p: u64) -> Option<PrimeField> {
        if p < MAX_PRIME_EXCLUSIVE && p != 2 && is_prime(p) {
            Some(PrimeField { p: p as u32 })
        } else {
            None
        }
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn from_u64(&self, v: u64) -> Scalar {
        Scalar((v % self.p as u64) as u32)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        let r = v.rem_euclid(self.p as i64);
        Scalar(r as u32)
    }

    #[inline]
    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        let s = a.0 + b.0;
        Scalar(if s >= self.p { s - self.p } else { s })
    }

    #[inline]
    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        Scalar(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 })
    }

    #[inline]
    pub fn neg(&self, a: Scalar) -> Scalar {
        Scalar(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    #[inline]
    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        Scalar(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    ///
    /// Panics on zero.
    pub fn inv(&self, a: Scalar) -> Scalar {
        assert!(!a.is_zero(), "inverse of zero in Z/{}", self.p);
        let (mut r0, mut r1) = (self.p as i64, a.0 as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        self.from_i64(t0)
    }

    pub fn pow(&self, a: Scalar, mut e: u64) -> Scalar {
        let mut base = a;
        let mut acc = Scalar::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Snapshot of an [`OpCounter`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub mul: u64,
    pub addsub: u64,
    pub inv: u64,
}

impl OpCounts {
    pub fn total(&self) -> u64 {
        self.mul + self.addsub + self.inv
    }
}

impl std::ops::Add for OpCounts {
    type Output = OpCounts;

    fn add(self, rhs: OpCounts) -> OpCounts {
        OpCounts {
            mul: self.mul + rhs.mul,
            addsub: self.addsub + rhs.addsub,
            inv: self.inv + rhs.inv,
        }
    }
}

impl std::ops::Sub for OpCounts {
    type Output = OpCounts;

    fn sub(self, rhs: OpCounts) -> OpCounts {
        OpCounts {
            mul: self.mul - rhs.mul,
            addsub: self.addsub - rhs.addsub,
            inv: self.inv - rhs.inv,
        }
    }
}

/// Counts field multiplications, additions/subtractions and inversions.
///
/// Interior mutability keeps arithmetic on `&Ring`; a counter belongs to a
/// single context and is never shared across threads.
#[derive(Debug, Default, Clone)]
pub struct OpCounter {
    mul: Cell<u64>,
    addsub: Cell<u64>,
    inv: Cell<u64>,
}

impl OpCounter {
    #[inline]
    pub fn count_mul(&self, n: u64) {
        self.mul.set(self.mul.get() + n);
    }

    #[inline]
    pub fn count_addsub(&self, n: u64) {
        self.addsub.set(self.addsub.get() + n);
    }

    #[inline]
    pub fn count_inv(&self, n: u64) {
        self.inv.set(self.inv.get() + n);
    }

    pub fn snapshot(&self) -> OpCounts {
        OpCounts {
            mul: self.mul.get(),
            addsub: self.addsub.get(),
            inv: self.inv.get(),
        }
    }

    pub fn add_counts(&self, c: OpCounts) {
        self.count_mul(c.mul);
        self.count_addsub(c.addsub);
        self.count_inv(c.inv);
    }

    pub fn reset(&self) {
        self.mul.set(0);
        self.addsub.set(0);
        self.inv.set(0);
    }
}
