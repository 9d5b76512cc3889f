//! Geobuckets for division: the accumulating dividend is kept as a small
//! forest of sorted term lists merged by size class, so subtracting a
//! reducer costs one merge instead of a full rebuild of the accumulator.

use std::cmp::Ordering;

use crate::groebner::vecpoly::ModOrder;
use crate::polyring::{FieldElem, Monomial, Poly, RingCtx};

/// One sorted run of terms with a consumed-prefix cursor.
struct Slot {
    terms: Vec<(Monomial, FieldElem)>,
    cur: usize,
}

impl Slot {
    fn len(&self) -> usize {
        self.terms.len() - self.cur
    }

    fn head(&self) -> Option<&(Monomial, FieldElem)> {
        self.terms.get(self.cur)
    }

    fn pop(&mut self) {
        self.cur += 1;
    }
}

/// Terms of one polynomial bucketed by size class (factor 4).
pub struct TermBucket {
    ring: RingCtx,
    slots: Vec<Slot>,
}

fn merge(
    ring: &RingCtx,
    a: &[(Monomial, FieldElem)],
    b: &[(Monomial, FieldElem)],
) -> Vec<(Monomial, FieldElem)> {
    let order = ring.order();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match order.cmp(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                let c = a[i].1.add(&b[j].1);
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl TermBucket {
    pub fn new(ring: &RingCtx) -> Self {
        TermBucket { ring: ring.clone(), slots: Vec::new() }
    }

    pub fn from_poly(ring: &RingCtx, p: &Poly) -> Self {
        let mut b = TermBucket::new(ring);
        b.add_terms(p.terms().to_vec());
        b
    }

    fn add_terms(&mut self, terms: Vec<(Monomial, FieldElem)>) {
        if terms.is_empty() {
            return;
        }
        let mut acc = terms;
        loop {
            // merge with the smallest slot no larger than acc, else insert
            let pos = self
                .slots
                .iter()
                .position(|s| s.len() > 0 && s.len() <= acc.len().saturating_mul(4));
            match pos {
                Some(k) if self.slots[k].len() + acc.len() > 0 => {
                    let slot = self.slots.swap_remove(k);
                    acc = merge(&self.ring, &slot.terms[slot.cur..], &acc);
                    if acc.is_empty() {
                        return;
                    }
                }
                _ => {
                    self.slots.push(Slot { terms: acc, cur: 0 });
                    // keep the forest small
                    if self.slots.len() > 8 {
                        let a = self.slots.swap_remove(0);
                        let b = self.slots.swap_remove(0);
                        let merged = merge(&self.ring, &a.terms[a.cur..], &b.terms[b.cur..]);
                        if !merged.is_empty() {
                            self.slots.push(Slot { terms: merged, cur: 0 });
                        }
                    }
                    return;
                }
            }
        }
    }

    /// Adds c * m * p (or its negation).
    pub fn add_scaled(&mut self, p: &Poly, m: &Monomial, c: &FieldElem, negate: bool) {
        let terms: Vec<(Monomial, FieldElem)> = p
            .terms()
            .iter()
            .map(|(tm, tc)| {
                let coef = if negate { tc.mul(c).neg() } else { tc.mul(c) };
                (tm.mul(m), coef)
            })
            .collect();
        self.add_terms(terms);
    }

    /// The current leading term, resolving cross-slot cancellations.
    /// Consumed cancelled heads are dropped as a side effect.
    pub fn peek(&mut self) -> Option<(Monomial, FieldElem)> {
        let order = self.ring.order();
        loop {
            self.slots.retain(|s| s.len() > 0);
            let mut best: Option<Monomial> = None;
            for s in &self.slots {
                let (m, _) = s.head().unwrap();
                match &best {
                    None => best = Some(m.clone()),
                    Some(b) => {
                        if order.cmp(m, b) == Ordering::Greater {
                            best = Some(m.clone());
                        }
                    }
                }
            }
            let best = best?;
            let mut coef: Option<FieldElem> = None;
            for s in &mut self.slots {
                if let Some((m, c)) = s.head() {
                    if *m == best {
                        coef = Some(match coef {
                            None => c.clone(),
                            Some(acc) => acc.add(c),
                        });
                    }
                }
            }
            let coef = coef.expect("head exists");
            if coef.is_zero() {
                for s in &mut self.slots {
                    if s.head().map(|(m, _)| *m == best).unwrap_or(false) {
                        s.pop();
                    }
                }
                continue;
            }
            return Some((best, coef));
        }
    }

    /// Removes the current leading term (after a successful peek).
    pub fn pop(&mut self, head: &Monomial) {
        for s in &mut self.slots {
            if s.head().map(|(m, _)| m == head).unwrap_or(false) {
                s.pop();
            }
        }
    }

    #[cfg(test)]
    pub fn is_empty(&mut self) -> bool {
        self.peek().is_none()
    }

    #[cfg(test)]
    pub fn into_poly(mut self) -> Poly {
        self.slots.retain(|s| s.len() > 0);
        let mut acc: Vec<(Monomial, FieldElem)> = Vec::new();
        for s in &self.slots {
            acc = merge(&self.ring, &acc, &s.terms[s.cur..]);
        }
        self.ring.from_sorted_terms_unchecked(acc)
    }
}

/// A vector of term buckets, one per free-module component, with leading
/// term selection under a module order.
pub struct VecBucket {
    ring: RingCtx,
    comps: Vec<TermBucket>,
}

impl VecBucket {
    pub fn from_components(ring: &RingCtx, comps: &[Poly]) -> Self {
        VecBucket {
            ring: ring.clone(),
            comps: comps.iter().map(|p| TermBucket::from_poly(ring, p)).collect(),
        }
    }

    /// Module leading term: the per-component heads compared under `order`.
    pub fn lt(&mut self, order: &ModOrder) -> Option<(usize, Monomial, FieldElem)> {
        let ring = self.ring.clone();
        let mut best: Option<(usize, Monomial, FieldElem)> = None;
        for i in 0..self.comps.len() {
            let Some((m, c)) = self.comps[i].peek() else { continue };
            best = match best {
                None => Some((i, m, c)),
                Some((bi, bm, bc)) => {
                    if order.cmp_parts(&ring, (&m, i), (&bm, bi)) == Ordering::Greater {
                        Some((i, m, c))
                    } else {
                        Some((bi, bm, bc))
                    }
                }
            };
        }
        best
    }

    /// Subtracts q_mono * q_coef * divisor.
    pub fn sub_scaled(&mut self, divisor: &crate::groebner::VecPoly, q_mono: &Monomial, q_coef: &FieldElem) {
        for (bucket, p) in self.comps.iter_mut().zip(divisor.components()) {
            if !p.is_zero() {
                bucket.add_scaled(p, q_mono, q_coef, true);
            }
        }
    }

    /// Removes the given head term from component `comp`.
    pub fn pop(&mut self, comp: usize, head: &Monomial) {
        self.comps[comp].pop(head);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, FieldSpec, MonomialOrder};

    #[test]
    fn bucket_arithmetic_matches_poly() {
        let r = RingCtx::new(
            FieldSpec::Rationals,
            vec!["x".into(), "y".into()],
            MonomialOrder::Grevlex,
        )
        .unwrap();
        let a = parse_poly(&r, "x^3 + 2*x*y + 1").unwrap();
        let b = parse_poly(&r, "x^2 - y").unwrap();
        let mut bucket = TermBucket::from_poly(&r, &a);
        // a - x*b - (x*y + x + 1) term by term
        bucket.add_scaled(&b, &Monomial::var(0, 2), &r.field().one(), true);
        let expect = a.sub(&b.mul(&r.var(0)));
        assert_eq!(bucket.into_poly(), expect);
    }

    #[test]
    fn cancellation_across_slots() {
        let r = RingCtx::new(
            FieldSpec::Rationals,
            vec!["x".into()],
            MonomialOrder::Grevlex,
        )
        .unwrap();
        let a = parse_poly(&r, "x^2 + x").unwrap();
        let mut bucket = TermBucket::from_poly(&r, &a);
        bucket.add_scaled(&parse_poly(&r, "x^2").unwrap(), &Monomial::one(1), &r.field().one(), true);
        let (m, c) = bucket.peek().unwrap();
        assert_eq!(m, Monomial::var(0, 1));
        assert!(c.is_one());
        bucket.pop(&m);
        assert!(bucket.is_empty());
    }
}
