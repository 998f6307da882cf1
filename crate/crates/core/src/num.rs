//! Integer scalar abstraction used by the exact linear algebra.

use std::fmt::{Debug, Display};

use num_traits::{PrimInt, Signed};

use crate::error::{Error, Result};

/// Fixed-width signed machine integer with checked arithmetic.
pub trait IntScalar: PrimInt + Signed + Debug + Display + Default + Send + Sync + 'static {
    fn cadd(self, rhs: Self) -> Result<Self> {
        self.checked_add(&rhs).ok_or(Error::Overflow("add"))
    }

    fn csub(self, rhs: Self) -> Result<Self> {
        self.checked_sub(&rhs).ok_or(Error::Overflow("sub"))
    }

    fn cmul(self, rhs: Self) -> Result<Self> {
        self.checked_mul(&rhs).ok_or(Error::Overflow("mul"))
    }

    fn cneg(self) -> Result<Self> {
        Self::zero().csub(self)
    }

    /// `self * a + other * b`, checked.
    fn cmuladd(self, a: Self, other: Self, b: Self) -> Result<Self> {
        self.cmul(a)?.cadd(other.cmul(b)?)
    }

    /// Euclidean remainder in `[0, |m|)`; `m == 0` returns `self`.
    fn modulo(self, m: Self) -> Self {
        if m.is_zero() {
            return self;
        }
        let r = self % m;
        if r < Self::zero() {
            r + m.abs()
        } else {
            r
        }
    }

    fn from_i64(v: i64) -> Self {
        <Self as num_traits::NumCast>::from(v).expect("value out of range for scalar")
    }
}

impl<T: PrimInt + Signed + Debug + Display + Default + Send + Sync + 'static> IntScalar for T {}

pub fn gcd<T: IntScalar>(a: T, b: T) -> T {
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g >= 0`.
pub fn ext_gcd<T: IntScalar>(a: T, b: T) -> Result<(T, T, T)> {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (T::one(), T::zero());
    let (mut old_t, mut t) = (T::zero(), T::one());
    while !r.is_zero() {
        let q = old_r / r;
        (old_r, r) = (r, old_r.csub(q.cmul(r)?)?);
        (old_s, s) = (s, old_s.csub(q.cmul(s)?)?);
        (old_t, t) = (t, old_t.csub(q.cmul(t)?)?);
    }
    if old_r < T::zero() {
        Ok((old_r.cneg()?, old_s.cneg()?, old_t.cneg()?))
    } else {
        Ok((old_r, old_s, old_t))
    }
}

/// Largest divisor of `d` all of whose prime factors divide `n`.
pub fn primary_part(d: i64, n: i64) -> i64 {
    let mut d = d.abs();
    let mut out = 1;
    loop {
        let g = gcd(d, n);
        if g == 1 {
            return out;
        }
        d /= g;
        out *= g;
    }
}

/// True when every prime factor of `d` divides `n`.
pub fn is_primary(d: i64, n: i64) -> bool {
    d != 0 && primary_part(d, n) == d.abs()
}
