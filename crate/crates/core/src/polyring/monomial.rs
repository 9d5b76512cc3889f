//! Exponent vectors and monomial orders.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Per-variable exponent cap. Exceeding it is a hard error: the kernel is
/// built for desk-scale inputs, not degree explosions.
pub const DEGREE_CAP: u32 = 1 << 16;

/// A monomial as a dense exponent vector. The length always equals the
/// variable count of the ambient ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub(crate) Vec<u32>);

/// Payload carried by the panic used to abort runaway degree growth; caught
/// at the public entry points and converted to `Error::DegreeOverflow`.
pub(crate) struct DegreeOverflowPanic;

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(index: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0[var]
    }

    /// Indices of variables appearing with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        let e: Vec<u32> = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| {
                let s = a + b;
                if s > DEGREE_CAP {
                    std::panic::panic_any(DegreeOverflowPanic);
                }
                s
            })
            .collect();
        Monomial(e)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let e: Vec<u32> = self
            .0
            .iter()
            .map(|&a| {
                let s = (a as u64) * (k as u64);
                if s > DEGREE_CAP as u64 {
                    std::panic::panic_any(DegreeOverflowPanic);
                }
                s as u32
            })
            .collect();
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }
}

/// Monomial orders. `Lex` and `Grevlex` are the user-facing global orders;
/// `Elim(k)` compares the first `k` variables grevlex-first and is used
/// internally for variable elimination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    Grevlex,
    Elim(usize),
}

fn cmp_lex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

fn cmp_grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    // Equal degree: the last variable where they differ decides, with the
    // smaller exponent winning.
    for (x, y) in a.iter().zip(b.iter()).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.0.len(), b.0.len());
        match self {
            MonomialOrder::Lex => cmp_lex(&a.0, &b.0),
            MonomialOrder::Grevlex => cmp_grevlex(&a.0, &b.0),
            MonomialOrder::Elim(k) => match cmp_grevlex(&a.0[..*k], &b.0[..*k]) {
                Ordering::Equal => cmp_grevlex(&a.0[*k..], &b.0[*k..]),
                ord => ord,
            },
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Elim(_) => "elim",
        }
    }
}

/// Checked comparison entry point; rejects mismatched exponent lengths.
pub fn monomial_cmp(order: MonomialOrder, a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.0.len() != b.0.len() {
        return Err(Error::LengthMismatch);
    }
    Ok(order.cmp(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn grevlex_examples() {
        // x^2 y vs x y^2 in two variables
        assert_eq!(
            monomial_cmp(MonomialOrder::Grevlex, &m(&[2, 1]), &m(&[1, 2])).unwrap(),
            Ordering::Greater
        );
        // degree dominates
        assert_eq!(
            monomial_cmp(MonomialOrder::Grevlex, &m(&[1, 1]), &m(&[1, 0])).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            monomial_cmp(MonomialOrder::Grevlex, &m(&[3, 1]), &m(&[3, 1])).unwrap(),
            Ordering::Equal
        );
    }

    #[test]
    fn lex_ignores_degree() {
        assert_eq!(
            monomial_cmp(MonomialOrder::Lex, &m(&[1, 0]), &m(&[0, 2])).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn length_mismatch() {
        assert_eq!(
            monomial_cmp(MonomialOrder::Lex, &m(&[1]), &m(&[0, 2])),
            Err(Error::LengthMismatch)
        );
    }

    #[test]
    fn elim_order_blocks() {
        // first block: variable 0; t-free monomials are smaller than any
        // monomial involving t
        let ord = MonomialOrder::Elim(1);
        assert_eq!(ord.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[0, 2, 0]), &m(&[0, 0, 1])), Ordering::Greater);
    }
}
