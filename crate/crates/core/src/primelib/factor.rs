//! Univariate factorization over GF(p): squarefree decomposition,
//! distinct-degree splitting, and Cantor-Zassenhaus equal-degree splitting
//! with a deterministic (input-seeded) random source.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::polyring::{FieldElem, FieldSpec, Monomial, Poly};

/// Dense univariate polynomial over GF(p), coefficients ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct UniPoly {
    pub p: u64,
    pub c: Vec<u64>,
}

impl UniPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        UniPoly { p, c }
    }

    pub fn zero(p: u64) -> Self {
        UniPoly { p, c: vec![] }
    }

    pub fn constant(p: u64, a: u64) -> Self {
        UniPoly::new(p, vec![a])
    }

    pub fn x(p: u64) -> Self {
        UniPoly::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    fn inv(&self, a: u64) -> u64 {
        let p = self.p;
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (p as i64, (a % p) as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        t.rem_euclid(p as i64) as u64
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() || self.lc() == 1 {
            return self.clone();
        }
        let inv = self.inv(self.lc());
        UniPoly::new(self.p, self.c.iter().map(|&x| (x * inv) % self.p).collect())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.c.len().max(other.c.len());
        let mut c = vec![0u64; n];
        for i in 0..n {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = other.c.get(i).copied().unwrap_or(0);
            c[i] = (a + b) % self.p;
        }
        UniPoly::new(self.p, c)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.c.len().max(other.c.len());
        let mut c = vec![0u64; n];
        for i in 0..n {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = other.c.get(i).copied().unwrap_or(0);
            c[i] = (a + self.p - b) % self.p;
        }
        UniPoly::new(self.p, c)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.p);
        }
        let mut c = vec![0u64; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % self.p;
            }
        }
        UniPoly::new(self.p, c)
    }

    /// (quotient, remainder) with `other` nonzero.
    pub fn divmod(&self, other: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!other.is_zero());
        let p = self.p;
        let mut rem = self.c.clone();
        let d = other.deg();
        if self.c.len() < other.c.len() {
            return (UniPoly::zero(p), self.clone());
        }
        let mut quot = vec![0u64; self.c.len() - other.c.len() + 1];
        let lc_inv = self.inv(other.lc());
        for i in (d..rem.len()).rev() {
            let coef = (rem[i] * lc_inv) % p;
            if coef == 0 {
                continue;
            }
            quot[i - d] = coef;
            for (j, &b) in other.c.iter().enumerate() {
                let idx = i - d + j;
                rem[idx] = (rem[idx] + p - (coef * b) % p) % p;
            }
        }
        (UniPoly::new(p, quot), UniPoly::new(p, rem))
    }

    pub fn rem(&self, other: &UniPoly) -> UniPoly {
        self.divmod(other).1
    }

    pub fn div_exact(&self, other: &UniPoly) -> UniPoly {
        let (q, r) = self.divmod(other);
        debug_assert!(r.is_zero());
        q
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UniPoly {
        if self.c.len() <= 1 {
            return UniPoly::zero(self.p);
        }
        let c: Vec<u64> = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &x)| (x * ((i as u64) % self.p)) % self.p)
            .collect();
        UniPoly::new(self.p, c)
    }

    /// self^e mod m, with a big-integer exponent.
    pub fn pow_mod(&self, e: &BigUint, m: &UniPoly) -> UniPoly {
        let mut base = self.rem(m);
        let mut acc = UniPoly::constant(self.p, 1);
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
        }
        acc
    }

    /// p-th root of a polynomial in x^p (Frobenius is the identity on GF(p)).
    fn pth_root(&self) -> UniPoly {
        let p = self.p as usize;
        let c: Vec<u64> = self.c.iter().step_by(p).copied().collect();
        UniPoly::new(self.p, c)
    }
}

/// Squarefree decomposition: pairs (g_i, i) with f = lc * prod g_i^i.
fn squarefree_decomposition(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut out: Vec<(UniPoly, u32)> = Vec::new();
    let f = f.monic();
    if f.deg() == 0 {
        return out;
    }
    let fp = f.derivative();
    if fp.is_zero() {
        // f = g(x^p) = (root g)^p
        let root = f.pth_root();
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * f.p as u32));
        }
        return out;
    }
    let mut g = f.gcd(&fp);
    let mut w = f.div_exact(&g);
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&g);
        let z = w.div_exact(&y);
        if z.deg() > 0 {
            out.push((z.monic(), i));
        }
        g = g.div_exact(&y).monic();
        w = y;
        i += 1;
    }
    if g.deg() > 0 {
        let root = g.pth_root();
        for (h, m) in squarefree_decomposition(&root) {
            out.push((h, m * f.p as u32));
        }
    }
    out
}

/// Distinct-degree splitting of a squarefree monic polynomial: pairs
/// (product of the irreducible factors of degree d, d).
fn distinct_degree(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut f = f.monic();
    let x = UniPoly::x(p);
    let mut h = x.clone();
    let mut d = 0usize;
    while f.deg() >= 1 {
        d += 1;
        if 2 * d > f.deg() {
            out.push((f.clone(), f.deg()));
            break;
        }
        h = h.pow_mod(&BigUint::from(p), &f);
        let g = h.sub(&x).gcd(&f);
        if g.deg() > 0 {
            out.push((g.clone(), d));
            f = f.div_exact(&g).monic();
            h = h.rem(&f);
        }
    }
    out
}

fn random_poly(rng: &mut ChaCha8Rng, p: u64, deg: usize) -> UniPoly {
    let c: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..p)).collect();
    UniPoly::new(p, c)
}

/// Equal-degree splitting: f is a squarefree monic product of irreducibles
/// all of degree d.
fn equal_degree(f: &UniPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<UniPoly>) {
    if f.deg() == d {
        out.push(f.monic());
        return;
    }
    let p = f.p;
    loop {
        let a = random_poly(rng, p, f.deg() - 1);
        if a.deg() == 0 && a.is_zero() {
            continue;
        }
        let g = a.gcd(f);
        if g.deg() > 0 && g.deg() < f.deg() {
            equal_degree(&g, d, rng, out);
            equal_degree(&f.div_exact(&g).monic(), d, rng, out);
            return;
        }
        let b = if p == 2 {
            // trace over GF(2^d)
            let mut t = UniPoly::zero(p);
            let mut cur = a.rem(f);
            for _ in 0..d {
                t = t.add(&cur);
                cur = cur.mul(&cur).rem(f);
            }
            t
        } else {
            let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            a.pow_mod(&e, f).sub(&UniPoly::constant(p, 1))
        };
        let g = b.gcd(f);
        if g.deg() > 0 && g.deg() < f.deg() {
            equal_degree(&g, d, rng, out);
            equal_degree(&f.div_exact(&g).monic(), d, rng, out);
            return;
        }
    }
}

fn seed_from(f: &UniPoly) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for &c in &f.c {
        h ^= c;
        h = h.wrapping_mul(0x100000001b3);
    }
    h ^ f.p
}

/// Full factorization of a nonzero polynomial over GF(p): monic irreducible
/// factors with multiplicities, deterministically ordered.
pub(crate) fn factor_unipoly(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut out: Vec<(UniPoly, u32)> = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed_from(f));
    for (sq, mult) in squarefree_decomposition(f) {
        for (prod, d) in distinct_degree(&sq) {
            let mut irr = Vec::new();
            equal_degree(&prod, d, &mut rng, &mut irr);
            for g in irr {
                out.push((g, mult));
            }
        }
    }
    out.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then_with(|| a.0.c.cmp(&b.0.c)));
    out
}

/// Extracts (p, variable index, dense coefficients) from a polynomial that
/// uses at most one variable over a prime field.
fn as_unipoly(f: &Poly) -> Result<(u64, usize, UniPoly)> {
    let FieldSpec::PrimeField(p) = f.ring().field() else {
        return Err(Error::WrongField);
    };
    let p = p as u64;
    let support = f.support_vars();
    if support.len() > 1 {
        return Err(Error::Internal("polynomial is not univariate".into()));
    }
    let var = support.first().copied().unwrap_or(0);
    let mut c = vec![0u64; f.degree_in(var) as usize + 1];
    for (m, coef) in f.terms() {
        c[m.exponent(var) as usize] = coef.residue().unwrap();
    }
    Ok((p, var, UniPoly::new(p, c)))
}

fn unipoly_to_poly(f: &Poly, var: usize, u: &UniPoly) -> Poly {
    let ring = f.ring();
    let n = ring.nvars();
    let spec = ring.field();
    let terms: Vec<(Monomial, FieldElem)> = u
        .c
        .iter()
        .enumerate()
        .filter(|(_, &co)| co != 0)
        .map(|(i, &co)| {
            let mut e = vec![0u32; n];
            e[var] = i as u32;
            (Monomial::from_exponents(e), spec.from_int(co as i64))
        })
        .collect();
    ring.from_terms(terms)
}

/// Factors a nonzero univariate polynomial over GF(p) into monic
/// irreducibles with multiplicities. The product reconstructs the input up
/// to its leading coefficient.
pub fn univar_factor_gfp(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroDivisorArgument);
    }
    let (_, var, u) = as_unipoly(f)?;
    Ok(factor_unipoly(&u)
        .into_iter()
        .map(|(g, m)| (unipoly_to_poly(f, var, &g), m))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, MonomialOrder, RingCtx};

    fn gf(p: u64) -> RingCtx {
        RingCtx::new(
            FieldSpec::prime_field(p).unwrap(),
            vec!["x".into()],
            MonomialOrder::Grevlex,
        )
        .unwrap()
    }

    #[test]
    fn roots_of_x2_plus_1_mod_5() {
        // oracle: brute-force root search over GF(5)
        let roots: Vec<u64> = (0..5).filter(|x| (x * x + 1) % 5 == 0).collect();
        assert_eq!(roots, vec![2, 3]);
        let r = gf(5);
        let f = parse_poly(&r, "x^2 + 1").unwrap();
        let fac = univar_factor_gfp(&f).unwrap();
        let strs: Vec<String> = fac.iter().map(|(g, m)| format!("{g}^{m}")).collect();
        assert_eq!(strs, vec!["x + 2^1", "x + 3^1"]);
    }

    #[test]
    fn repeated_factor() {
        let r = gf(7);
        let f = parse_poly(&r, "x^2").unwrap();
        let fac = univar_factor_gfp(&f).unwrap();
        assert_eq!(fac.len(), 1);
        assert_eq!(fac[0].0.canonical_string(), "x");
        assert_eq!(fac[0].1, 2);
    }

    #[test]
    fn irreducible_quadratic_mod_2() {
        // no roots in GF(2) and degree 2, hence irreducible
        let r = gf(2);
        let f = parse_poly(&r, "x^2 + x + 1").unwrap();
        let fac = univar_factor_gfp(&f).unwrap();
        assert_eq!(fac.len(), 1);
        assert_eq!(fac[0].1, 1);
        assert_eq!(fac[0].0, f);
    }

    #[test]
    fn product_reconstructs_input() {
        let r = gf(32003);
        for s in ["x^5 + 3*x^2 + 1", "x^6 + 2*x^4", "(x + 1)^3", "x^4 - 4"] {
            let f = parse_poly(&r, s).unwrap();
            let fac = univar_factor_gfp(&f).unwrap();
            let mut prod = r.constant(f.lc().unwrap().clone());
            for (g, m) in &fac {
                prod = prod.mul(&g.pow(*m));
            }
            assert_eq!(prod, f, "reconstruction failed for {s}");
        }
    }

    #[test]
    fn frobenius_power_factorization() {
        let r = gf(3);
        let f = parse_poly(&r, "x^3 - 1").unwrap(); // (x-1)^3 in char 3
        let fac = univar_factor_gfp(&f).unwrap();
        assert_eq!(fac.len(), 1);
        assert_eq!(fac[0].0.canonical_string(), "x + 2");
        assert_eq!(fac[0].1, 3);
    }

    #[test]
    fn wrong_field_rejected() {
        let r = RingCtx::new(
            FieldSpec::Rationals,
            vec!["x".into()],
            MonomialOrder::Grevlex,
        )
        .unwrap();
        let f = parse_poly(&r, "x^2 + 1").unwrap();
        assert!(matches!(univar_factor_gfp(&f), Err(Error::WrongField)));
    }
}
