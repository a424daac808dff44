//! Exact arithmetic in prime fields `F_p`.
//!
//! Residues are always stored fully reduced, so two elements are equal exactly
//! when their values and moduli are equal. The modulus is bounded by `2^32` so
//! a product of two residues fits in a `u64`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest modulus accepted (exclusive).
pub const MAX_MODULUS: u64 = 1 << 32;

// Deterministic for every n < 2^64.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin primality test, exact for all `u64` inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &w in &MR_WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A verified prime modulus `p < 2^32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS {
            return Err(Error::param(format!("modulus {p} must be below 2^32")));
        }
        if !is_prime(p) {
            return Err(Error::param(format!("modulus {p} is not prime")));
        }
        Ok(PrimeModulus(p))
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn normalize(self, n: i64) -> FieldElement {
        let v = (n as i128).rem_euclid(self.0 as i128) as u64;
        FieldElement {
            value: v,
            modulus: self,
        }
    }

    /// Reduces an unsigned integer into `[0, p)`.
    #[inline]
    pub fn elem(self, n: u64) -> FieldElement {
        FieldElement {
            value: n % self.0,
            modulus: self,
        }
    }

    #[inline]
    pub fn zero(self) -> FieldElement {
        FieldElement {
            value: 0,
            modulus: self,
        }
    }

    #[inline]
    pub fn one(self) -> FieldElement {
        self.elem(1)
    }

    /// All residues `0..p` in ascending order.
    pub fn elements(self) -> impl Iterator<Item = FieldElement> {
        (0..self.0).map(move |v| FieldElement {
            value: v,
            modulus: self,
        })
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Free-function form of [`PrimeModulus::normalize`].
pub fn normalize(n: i64, p: PrimeModulus) -> FieldElement {
    p.normalize(n)
}

/// An element of `F_p`, always reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    modulus: PrimeModulus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked binary arithmetic; fails when the operands live in different fields.
pub fn arith(op: ArithOp, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
    }
}

impl FieldElement {
    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_field(self, other: FieldElement) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(
                self.modulus.value(),
                other.modulus.value(),
            ));
        }
        Ok(())
    }

    pub fn checked_add(self, other: FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(self, other: FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn checked_mul(self, other: FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    #[inline]
    fn add_unchecked(self, other: FieldElement) -> FieldElement {
        let p = self.modulus.0;
        let s = self.value + other.value;
        FieldElement {
            value: if s >= p { s - p } else { s },
            modulus: self.modulus,
        }
    }

    #[inline]
    fn sub_unchecked(self, other: FieldElement) -> FieldElement {
        let p = self.modulus.0;
        let v = if self.value >= other.value {
            self.value - other.value
        } else {
            self.value + p - other.value
        };
        FieldElement {
            value: v,
            modulus: self.modulus,
        }
    }

    #[inline]
    fn mul_unchecked(self, other: FieldElement) -> FieldElement {
        FieldElement {
            value: self.value * other.value % self.modulus.0,
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inverse(self) -> Result<FieldElement> {
        if self.value == 0 {
            return Err(Error::DivisionByZero(self.modulus.0));
        }
        let p = self.modulus.0 as i64;
        let (mut old_r, mut r) = (self.value as i64, p);
        let (mut old_s, mut s) = (1i64, 0i64);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        debug_assert_eq!(old_r, 1);
        Ok(self.modulus.normalize(old_s))
    }

    /// Square-and-multiply; `0^0 = 1`.
    pub fn pow(self, mut e: u64) -> FieldElement {
        let mut acc = self.modulus.one();
        let mut base = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(base);
            }
            base = base.mul_unchecked(base);
            e >>= 1;
        }
        acc
    }

    pub fn checked_div(self, other: FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(other.inverse()?))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

// Operator forms panic on mismatched moduli; use the `checked_*` methods or
// `arith` when operands come from untrusted input.
impl Add for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn add(self, rhs: FieldElement) -> FieldElement {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        self.add_unchecked(rhs)
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn sub(self, rhs: FieldElement) -> FieldElement {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        self.sub_unchecked(rhs)
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn mul(self, rhs: FieldElement) -> FieldElement {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        self.mul_unchecked(rhs)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn neg(self) -> FieldElement {
        self.modulus.zero().sub_unchecked(self)
    }
}
