//! Prime-field arithmetic with operation counting.
//!
//! Every modular multiplication, addition/subtraction and inversion performed
//! through [`Fe`] is tallied in the calling thread's active counting scope
//! (see [`count_ops`]). A decoding trial runs on a single thread, so trials
//! executed in parallel keep independent counts.

use std::cell::Cell;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Field operation tallies. Multiplications are the benchmark currency;
/// inversions are reported separately and never converted.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OpCounter {
    pub mul_count: u64,
    pub add_count: u64,
    pub inv_count: u64,
}

impl OpCounter {
    pub const ZERO: OpCounter = OpCounter {
        mul_count: 0,
        add_count: 0,
        inv_count: 0,
    };

    pub fn merge(self, other: OpCounter) -> OpCounter {
        OpCounter {
            mul_count: self.mul_count + other.mul_count,
            add_count: self.add_count + other.add_count,
            inv_count: self.inv_count + other.inv_count,
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }
}

impl Add for OpCounter {
    type Output = OpCounter;
    fn add(self, rhs: OpCounter) -> OpCounter {
        self.merge(rhs)
    }
}

impl AddAssign for OpCounter {
    fn add_assign(&mut self, rhs: OpCounter) {
        *self = self.merge(rhs);
    }
}

impl std::iter::Sum for OpCounter {
    fn sum<I: Iterator<Item = OpCounter>>(iter: I) -> Self {
        iter.fold(OpCounter::ZERO, OpCounter::merge)
    }
}

thread_local! {
    static ACTIVE: Cell<OpCounter> = const { Cell::new(OpCounter::ZERO) };
}

#[inline]
fn tick_mul(times: u64) {
    ACTIVE.with(|c| {
        let mut v = c.get();
        v.mul_count += times;
        c.set(v);
    });
}

#[inline]
fn tick_add() {
    ACTIVE.with(|c| {
        let mut v = c.get();
        v.add_count += 1;
        c.set(v);
    });
}

#[inline]
fn tick_inv() {
    ACTIVE.with(|c| {
        let mut v = c.get();
        v.inv_count += 1;
        c.set(v);
    });
}

/// Runs `action` and returns its result together with the exact operation
/// counts it incurred on this thread.
///
/// Scopes nest: the enclosing scope also sees the inner counts once the inner
/// scope returns.
pub fn count_ops<T>(action: impl FnOnce() -> T) -> (T, OpCounter) {
    let outer = ACTIVE.with(|c| c.replace(OpCounter::ZERO));
    let out = action();
    let inner = ACTIVE.with(|c| c.get());
    ACTIVE.with(|c| c.set(outer.merge(inner)));
    (out, inner)
}

/// A prime field `F_p` with `2 <= p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..(1u32 << 31)).contains(&p) {
            return Err(Error::InvalidModulus(p));
        }
        if !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary integer into the field.
    pub fn elem(&self, v: i64) -> Fe {
        Fe {
            v: v.rem_euclid(self.p as i64) as u32,
            p: self.p,
        }
    }

    #[inline]
    pub fn zero(&self) -> Fe {
        Fe { v: 0, p: self.p }
    }

    #[inline]
    pub fn one(&self) -> Fe {
        Fe { v: 1, p: self.p }
    }

    /// All field elements in ascending order of their representative.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.p).map(move |v| Fe { v, p: self.p })
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of a [`PrimeField`]. Carries its modulus so mixed-field use is
/// detectable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fe {
    v: u32,
    p: u32,
}

impl Fe {
    #[inline]
    pub fn value(self) -> u32 {
        self.v
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn field(self) -> PrimeField {
        PrimeField { p: self.p }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.v == 0
    }

    #[inline]
    fn same_field(self, other: Fe) -> Result<()> {
        if self.p != other.p {
            Err(Error::FieldMismatch(self.p, other.p))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(self, rhs: Fe) -> Result<Fe> {
        self.same_field(rhs)?;
        Ok(self + rhs)
    }

    pub fn checked_sub(self, rhs: Fe) -> Result<Fe> {
        self.same_field(rhs)?;
        Ok(self - rhs)
    }

    pub fn checked_mul(self, rhs: Fe) -> Result<Fe> {
        self.same_field(rhs)?;
        Ok(self * rhs)
    }

    pub fn checked_div(self, rhs: Fe) -> Result<Fe> {
        self.same_field(rhs)?;
        Ok(self * rhs.inv()?)
    }

    /// Multiplicative inverse by Fermat's little theorem, counted as one
    /// inversion (the internal exponentiation is not charged as multiplications).
    pub fn inv(self) -> Result<Fe> {
        if self.v == 0 {
            return Err(Error::DivisionByZero);
        }
        tick_inv();
        let mut base = self.v as u64;
        let mut e = self.p - 2;
        let m = self.p as u64;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        Ok(Fe {
            v: acc as u32,
            p: self.p,
        })
    }

    /// Square-and-multiply; every modular multiplication is counted.
    pub fn pow(self, mut e: u64) -> Fe {
        let mut acc = Fe { v: 1, p: self.p };
        let mut base = self;
        let mut first = true;
        while e > 0 {
            if e & 1 == 1 {
                if first {
                    acc = base;
                    first = false;
                } else {
                    acc = acc * base;
                }
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        acc
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Add for Fe {
    type Output = Fe;
    #[inline]
    fn add(self, rhs: Fe) -> Fe {
        debug_assert_eq!(self.p, rhs.p, "mixed fields");
        tick_add();
        let s = self.v as u64 + rhs.v as u64;
        let p = self.p as u64;
        Fe {
            v: if s >= p { (s - p) as u32 } else { s as u32 },
            p: self.p,
        }
    }
}

impl Sub for Fe {
    type Output = Fe;
    #[inline]
    fn sub(self, rhs: Fe) -> Fe {
        debug_assert_eq!(self.p, rhs.p, "mixed fields");
        tick_add();
        let v = if self.v >= rhs.v {
            self.v - rhs.v
        } else {
            self.p - (rhs.v - self.v)
        };
        Fe { v, p: self.p }
    }
}

impl Neg for Fe {
    type Output = Fe;
    #[inline]
    fn neg(self) -> Fe {
        Fe {
            v: if self.v == 0 { 0 } else { self.p - self.v },
            p: self.p,
        }
    }
}

impl Mul for Fe {
    type Output = Fe;
    #[inline]
    fn mul(self, rhs: Fe) -> Fe {
        debug_assert_eq!(self.p, rhs.p, "mixed fields");
        tick_mul(1);
        Fe {
            v: ((self.v as u64 * rhs.v as u64) % self.p as u64) as u32,
            p: self.p,
        }
    }
}

impl AddAssign for Fe {
    fn add_assign(&mut self, rhs: Fe) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fe {
    fn sub_assign(&mut self, rhs: Fe) {
        *self = *self - rhs;
    }
}
