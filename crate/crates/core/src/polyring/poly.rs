//! Sparse multivariate polynomials over an exact field.
//!
//! A polynomial stores its ring context and a term list kept strictly
//! decreasing in the ring's monomial order with no zero coefficients, so
//! structural equality is semantic equality and printing is canonical.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyring::field::{FieldElem, FieldSpec};
use crate::polyring::monomial::{Monomial, MonomialOrder};

#[derive(Debug, PartialEq, Eq)]
struct RingInner {
    field: FieldSpec,
    vars: Vec<String>,
    order: MonomialOrder,
}

/// A polynomial ring context: coefficient field, ordered variable list and
/// monomial order. Cheap to clone; equality is structural.
#[derive(Debug, Clone)]
pub struct RingCtx(Arc<RingInner>);

impl PartialEq for RingCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for RingCtx {}

impl RingCtx {
    pub fn new(field: FieldSpec, vars: Vec<String>, order: MonomialOrder) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::Internal("ring needs at least one variable".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::DuplicateName(v.clone()));
            }
        }
        Ok(RingCtx(Arc::new(RingInner { field, vars, order })))
    }

    pub fn field(&self) -> FieldSpec {
        self.0.field
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn zero(&self) -> Poly {
        Poly { ring: self.clone(), terms: Vec::new() }
    }

    pub fn one(&self) -> Poly {
        self.constant(self.field().one())
    }

    pub fn constant(&self, c: FieldElem) -> Poly {
        if c.is_zero() {
            return self.zero();
        }
        Poly { ring: self.clone(), terms: vec![(Monomial::one(self.nvars()), c)] }
    }

    pub fn var(&self, index: usize) -> Poly {
        Poly {
            ring: self.clone(),
            terms: vec![(Monomial::var(index, self.nvars()), self.field().one())],
        }
    }

    pub fn monomial(&self, m: Monomial, c: FieldElem) -> Poly {
        debug_assert_eq!(m.nvars(), self.nvars());
        if c.is_zero() {
            return self.zero();
        }
        Poly { ring: self.clone(), terms: vec![(m, c)] }
    }

    /// Builds a polynomial from unsorted terms, merging duplicates.
    pub fn from_terms(&self, terms: Vec<(Monomial, FieldElem)>) -> Poly {
        let mut p = Poly { ring: self.clone(), terms };
        p.normalize();
        p
    }

    /// Wraps terms that are already strictly decreasing, merged and free of
    /// zero coefficients.
    pub fn from_sorted_terms_unchecked(&self, terms: Vec<(Monomial, FieldElem)>) -> Poly {
        debug_assert!(terms
            .windows(2)
            .all(|w| self.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { ring: self.clone(), terms }
    }

    /// A fresh variable name not already used by the ring.
    pub fn fresh_var_name(&self, base: &str) -> String {
        if self.var_index(base).is_none() {
            return base.to_string();
        }
        let mut i = 0usize;
        loop {
            let name = format!("{base}{i}");
            if self.var_index(&name).is_none() {
                return name;
            }
            i += 1;
        }
    }

    /// Extends the ring with an extra variable placed first and switches to
    /// an elimination order for it. Returns the new ring.
    pub fn extend_front(&self, name: &str) -> Result<RingCtx> {
        let mut vars = vec![name.to_string()];
        vars.extend(self.vars().iter().cloned());
        RingCtx::new(self.field(), vars, MonomialOrder::Elim(1))
    }

    /// Same variables with a different order.
    pub fn with_order(&self, order: MonomialOrder) -> RingCtx {
        RingCtx::new(self.field(), self.vars().to_vec(), order).expect("valid ring")
    }

    /// Ring on a subset/permutation of the variables given by `vars`.
    pub fn subring(&self, vars: Vec<String>, order: MonomialOrder) -> Result<RingCtx> {
        RingCtx::new(self.field(), vars, order)
    }
}

/// Sparse polynomial; see module docs for the term-list invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    ring: RingCtx,
    terms: Vec<(Monomial, FieldElem)>,
}

impl Poly {
    pub fn ring(&self) -> &RingCtx {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, FieldElem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading monomial in the ring's order. None for 0.
    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn lc(&self) -> Option<&FieldElem> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(var)).max().unwrap_or(0)
    }

    /// Variables appearing in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        let n = self.ring.nvars();
        let mut seen = vec![false; n];
        for (m, _) in &self.terms {
            for i in m.support() {
                seen[i] = true;
            }
        }
        seen.iter().enumerate().filter(|(_, &s)| s).map(|(i, _)| i).collect()
    }

    fn normalize(&mut self) {
        let order = self.ring.order();
        self.terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, FieldElem)> = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.drain(..) {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = last.1.add(&c);
                    if last.1.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            if !c.is_zero() {
                out.push((m, c));
            }
        }
        self.terms = out;
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.ring, other.ring);
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match order.cmp(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.terms[i].1.add(&other.terms[j].1);
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly { ring: self.ring.clone(), terms: out }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.ring, other.ring);
        if self.is_zero() || other.is_zero() {
            return self.ring.zero();
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                terms.push((m1.mul(m2), c1.mul(c2)));
            }
        }
        self.ring.from_terms(terms)
    }

    /// Multiply by a single term. Preserves term ordering, so no re-sort.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElem) -> Poly {
        if c.is_zero() {
            return self.ring.zero();
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(tm, tc)| (tm.mul(m), tc.mul(c))).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        if c.is_zero() {
            return self.ring.zero();
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, tc)| (m.clone(), tc.mul(c))).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = self.ring.one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides every coefficient by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.lc() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Componentwise-min of all term monomials: the monomial content.
    pub fn monomial_content(&self) -> Monomial {
        let n = self.ring.nvars();
        let mut acc: Option<Monomial> = None;
        for (m, _) in &self.terms {
            acc = Some(match acc {
                None => m.clone(),
                Some(a) => a.gcd(m),
            });
        }
        acc.unwrap_or_else(|| Monomial::one(n))
    }

    /// Exact division by a monomial, assuming it divides every term.
    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(tm, c)| (m.quotient_into(tm), c.clone()))
                .collect(),
        }
    }

    /// Exact division: Some(q) with self = q * other, None when the
    /// division leaves a remainder.
    pub fn exact_div(&self, other: &Poly) -> Option<Poly> {
        if other.is_zero() {
            return None;
        }
        let mut cur = self.clone();
        let mut quot = self.ring.zero();
        let lm = other.lm().unwrap().clone();
        let lc = other.lc().unwrap().clone();
        while let Some(m) = cur.lm() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient_into(m);
            let qc = cur.lc().unwrap().div(&lc);
            let t = self.ring.monomial(qm, qc);
            quot = quot.add(&t);
            cur = cur.sub(&other.mul(&t));
        }
        Some(quot)
    }

    /// Formal partial derivative.
    pub fn derivative(&self, var: usize) -> Poly {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] = e - 1;
            let k = self.ring.field().from_int(e as i64);
            let c2 = c.mul(&k);
            if !c2.is_zero() {
                terms.push((Monomial::from_exponents(exps), c2));
            }
        }
        self.ring.from_terms(terms)
    }

    /// Evaluates at a rational point given by one field element per variable.
    pub fn eval(&self, point: &[FieldElem]) -> FieldElem {
        debug_assert_eq!(point.len(), self.ring.nvars());
        let mut acc = self.ring.field().zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&point[i].pow(e as u64));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`; images live in `target`.
    pub fn substitute(&self, target: &RingCtx, images: &[Poly]) -> Poly {
        debug_assert_eq!(images.len(), self.ring.nvars());
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut t = target.constant(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Reinterprets the exponent vectors through `var_map`: variable `i`
    /// here becomes variable `var_map[i]` of `target`. Purely structural;
    /// every image slot must be distinct.
    pub fn permute_into(&self, target: &RingCtx, var_map: &[usize]) -> Poly {
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; n];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[var_map[i]] = x;
                }
                (Monomial::from_exponents(e), c.clone())
            })
            .collect();
        target.from_terms(terms)
    }

    /// The canonical textual form; see [`fmt::Display`].
    pub fn canonical_string(&self) -> String {
        self.to_string()
    }
}

/// Arithmetic op selector for the checked entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Checked polynomial arithmetic; rejects operands from different rings.
pub fn poly_arith(f: &Poly, g: &Poly, op: PolyOp) -> Result<Poly> {
    if f.ring != g.ring {
        return Err(Error::MixedRings);
    }
    Ok(match op {
        PolyOp::Add => f.add(g),
        PolyOp::Sub => f.sub(g),
        PolyOp::Mul => f.mul(g),
    })
}

fn write_monomial(f: &mut fmt::Formatter<'_>, ring: &RingCtx, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", ring.vars()[i])?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, &self.ring, m)?;
            }
        }
        Ok(())
    }
}
