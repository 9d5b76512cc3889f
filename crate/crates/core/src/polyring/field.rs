//! Exact coefficient fields: arbitrary-precision rationals and odd prime
//! fields GF(p) with p < 2^31.
//!
//! Rationals are kept in lowest terms with a positive denominator (the
//! `BigRational` normal form). Prime-field elements store their modulus so
//! that every operation can verify both operands live in the same field.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// Which coefficient field a ring is built over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u32),
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    /// Builds GF(p), checking that `p` is prime and 2 <= p < 2^31.
    pub fn prime_field(p: u64) -> Result<Self> {
        if p < 2 || p >= (1 << 31) || !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p as u32))
    }

    pub fn zero(&self) -> FieldElem {
        match self {
            FieldSpec::Rationals => FieldElem::Rat(BigRational::zero()),
            FieldSpec::PrimeField(p) => FieldElem::Mod { v: 0, p: *p as u64 },
        }
    }

    pub fn one(&self) -> FieldElem {
        match self {
            FieldSpec::Rationals => FieldElem::Rat(BigRational::one()),
            FieldSpec::PrimeField(p) => FieldElem::Mod { v: 1, p: *p as u64 },
        }
    }

    pub fn from_int(&self, n: i64) -> FieldElem {
        match self {
            FieldSpec::Rationals => FieldElem::Rat(BigRational::from(BigInt::from(n))),
            FieldSpec::PrimeField(p) => {
                let p = *p as u64;
                let r = n.rem_euclid(p as i64) as u64;
                FieldElem::Mod { v: r, p }
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p as u64,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

/// An element of a [`FieldSpec`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldElem {
    Rat(BigRational),
    Mod { v: u64, p: u64 },
}

/// Modular inverse by extended Euclid. `a` must be nonzero mod `p`.
fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "inverse of non-unit");
    t.rem_euclid(p as i64) as u64
}

impl FieldElem {
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldElem::Rat(_) => FieldSpec::Rationals,
            FieldElem::Mod { p, .. } => FieldSpec::PrimeField(*p as u32),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rat(r) => r.is_zero(),
            FieldElem::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rat(r) => r.is_one(),
            FieldElem::Mod { v, .. } => *v == 1,
        }
    }

    fn same_field(&self, other: &FieldElem) -> Result<()> {
        match (self, other) {
            (FieldElem::Rat(_), FieldElem::Rat(_)) => Ok(()),
            (FieldElem::Mod { p: p1, .. }, FieldElem::Mod { p: p2, .. }) if p1 == p2 => Ok(()),
            _ => Err(Error::MixedFields),
        }
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        self.checked_add(other).expect("mixed fields")
    }

    pub fn checked_add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a + b),
            (FieldElem::Mod { v: a, p }, FieldElem::Mod { v: b, .. }) => {
                FieldElem::Mod { v: (a + b) % p, p: *p }
            }
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        self.checked_sub(other).expect("mixed fields")
    }

    pub fn checked_sub(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a - b),
            (FieldElem::Mod { v: a, p }, FieldElem::Mod { v: b, .. }) => {
                FieldElem::Mod { v: (a + p - b) % p, p: *p }
            }
            _ => unreachable!(),
        })
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        self.checked_mul(other).expect("mixed fields")
    }

    pub fn checked_mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a * b),
            (FieldElem::Mod { v: a, p }, FieldElem::Mod { v: b, .. }) => {
                // p < 2^31, so the product fits in u64.
                FieldElem::Mod { v: (a * b) % p, p: *p }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same_field(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, other) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a / b),
            (FieldElem::Mod { v: a, p }, FieldElem::Mod { v: b, .. }) => {
                FieldElem::Mod { v: (a * inv_mod(*b, *p)) % p, p: *p }
            }
            _ => unreachable!(),
        })
    }

    pub fn div(&self, other: &FieldElem) -> FieldElem {
        self.checked_div(other).expect("division failed")
    }

    pub fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Rat(a) => FieldElem::Rat(-a),
            FieldElem::Mod { v, p } => FieldElem::Mod { v: if *v == 0 { 0 } else { p - v }, p: *p },
        }
    }

    pub fn inv(&self) -> Result<FieldElem> {
        self.spec().one().checked_div(self)
    }

    pub fn pow(&self, mut e: u64) -> FieldElem {
        let mut base = self.clone();
        let mut acc = self.spec().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// True for rationals with negative sign; used only for display.
    pub fn is_negative(&self) -> bool {
        match self {
            FieldElem::Rat(r) => r.is_negative(),
            FieldElem::Mod { .. } => false,
        }
    }

    pub fn rational(num: i64, den: i64) -> Result<FieldElem> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElem::Rat(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    /// The representative in 0..p for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match self {
            FieldElem::Mod { v, .. } => Some(*v),
            FieldElem::Rat(_) => None,
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElem::Mod { v, .. } => write!(f, "{v}"),
        }
    }
}

/// Arithmetic op selector for the checked entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field arithmetic; rejects mixed fields and division by zero.
pub fn field_arith(a: &FieldElem, b: &FieldElem, op: FieldOp) -> Result<FieldElem> {
    match op {
        FieldOp::Add => a.checked_add(b),
        FieldOp::Sub => a.checked_sub(b),
        FieldOp::Mul => a.checked_mul(b),
        FieldOp::Div => a.checked_div(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_add_canonical() {
        let a = FieldElem::rational(1, 2).unwrap();
        let b = FieldElem::rational(1, 3).unwrap();
        let c = field_arith(&a, &b, FieldOp::Add).unwrap();
        assert_eq!(c, FieldElem::rational(5, 6).unwrap());
        assert_eq!(c.to_string(), "5/6");
    }

    #[test]
    fn gf5_mul() {
        let f = FieldSpec::prime_field(5).unwrap();
        let c = field_arith(&f.from_int(3), &f.from_int(4), FieldOp::Mul).unwrap();
        assert_eq!(c, f.from_int(2));
    }

    #[test]
    fn gf7_div_matches_bruteforce() {
        // independent oracle: search x with 3x = 2 mod 7
        let f = FieldSpec::prime_field(7).unwrap();
        let expect = (0..7).find(|x| (3 * x) % 7 == 2).unwrap();
        let c = field_arith(&f.from_int(2), &f.from_int(3), FieldOp::Div).unwrap();
        assert_eq!(c, f.from_int(expect));
        assert_eq!(expect, 3);
    }

    #[test]
    fn division_by_zero_rejected() {
        let f = FieldSpec::prime_field(7).unwrap();
        assert_eq!(
            field_arith(&f.one(), &f.zero(), FieldOp::Div),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn mixed_fields_rejected() {
        let q = FieldSpec::Rationals.one();
        let g = FieldSpec::prime_field(5).unwrap().one();
        assert_eq!(field_arith(&q, &g, FieldOp::Add), Err(Error::MixedFields));
    }

    #[test]
    fn prime_check() {
        assert!(FieldSpec::prime_field(32003).is_ok());
        assert_eq!(FieldSpec::prime_field(32001), Err(Error::NotPrime(32001)));
        assert_eq!(FieldSpec::prime_field(1), Err(Error::NotPrime(1)));
    }
}
