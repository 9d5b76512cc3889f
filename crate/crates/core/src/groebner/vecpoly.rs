//! Elements of free modules S^b and the module monomial orders used for
//! Groebner computations: position-over-term for user-level modules and
//! Schreyer-induced orders for iterated syzygies.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::polyring::{FieldElem, Monomial, Poly, RingCtx};

/// A module monomial: a ring monomial sitting in one component of S^b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMonomial {
    pub mono: Monomial,
    pub comp: usize,
}

/// Schreyer data for one free module level: for each basis vector, the
/// leading module monomial of its image one level down.
#[derive(Debug)]
pub struct SchreyerLevel {
    pub prev: ModOrder,
    pub images: Vec<ModMonomial>,
}

/// Order on module monomials.
///
/// `Pot` puts lower component indices first (e_0 > e_1 > ...) and breaks
/// ties with the ring order. `BlockTop(split)` makes components below
/// `split` dominate the rest, comparing by the ring order first and the
/// component second inside each block; it keeps the elimination property
/// needed by kernel computations without forcing a positional elimination
/// inside the blocks. Within a fixed component every order here restricts
/// to the ring order, because multiplying by a fixed monomial is
/// order-preserving.
#[derive(Debug, Clone)]
pub enum ModOrder {
    Pot,
    BlockTop(usize),
    Schreyer(Arc<SchreyerLevel>),
}

impl ModOrder {
    pub fn schreyer(prev: ModOrder, images: Vec<ModMonomial>) -> ModOrder {
        ModOrder::Schreyer(Arc::new(SchreyerLevel { prev, images }))
    }

    pub fn cmp(&self, ring: &RingCtx, a: &ModMonomial, b: &ModMonomial) -> Ordering {
        self.cmp_parts(ring, (&a.mono, a.comp), (&b.mono, b.comp))
    }

    /// Comparison on borrowed parts; the POT case allocates nothing.
    pub fn cmp_parts(
        &self,
        ring: &RingCtx,
        a: (&Monomial, usize),
        b: (&Monomial, usize),
    ) -> Ordering {
        match self {
            ModOrder::Pot => match b.1.cmp(&a.1) {
                Ordering::Equal => ring.order().cmp(a.0, b.0),
                ord => ord,
            },
            ModOrder::BlockTop(split) => {
                let block_a = a.1 >= *split;
                let block_b = b.1 >= *split;
                match block_a.cmp(&block_b) {
                    // false (= first block) sorts greater
                    Ordering::Less => Ordering::Greater,
                    Ordering::Greater => Ordering::Less,
                    Ordering::Equal => match ring.order().cmp(a.0, b.0) {
                        Ordering::Equal => b.1.cmp(&a.1),
                        ord => ord,
                    },
                }
            }
            ModOrder::Schreyer(level) => {
                let ia = &level.images[a.1];
                let ib = &level.images[b.1];
                let da = a.0.mul(&ia.mono);
                let db = b.0.mul(&ib.mono);
                match level.prev.cmp_parts(ring, (&da, ia.comp), (&db, ib.comp)) {
                    // Tie: the basis vector with the smaller index wins.
                    Ordering::Equal => b.1.cmp(&a.1),
                    ord => ord,
                }
            }
        }
    }
}

/// An element of a free module S^rank, stored as one polynomial per
/// component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VecPoly {
    comps: Vec<Poly>,
}

impl VecPoly {
    pub fn zero(ring: &RingCtx, rank: usize) -> Self {
        VecPoly { comps: vec![ring.zero(); rank] }
    }

    pub fn from_components(comps: Vec<Poly>) -> Self {
        VecPoly { comps }
    }

    /// The standard basis vector e_comp scaled by `p`.
    pub fn unit(ring: &RingCtx, rank: usize, comp: usize, p: Poly) -> Self {
        let mut v = VecPoly::zero(ring, rank);
        v.comps[comp] = p;
        v
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    pub fn into_components(self) -> Vec<Poly> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &VecPoly) -> VecPoly {
        debug_assert_eq!(self.rank(), other.rank());
        VecPoly {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &VecPoly) -> VecPoly {
        debug_assert_eq!(self.rank(), other.rank());
        VecPoly {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> VecPoly {
        VecPoly { comps: self.comps.iter().map(Poly::neg).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &FieldElem) -> VecPoly {
        VecPoly { comps: self.comps.iter().map(|p| p.mul_term(m, c)).collect() }
    }

    pub fn mul_poly(&self, p: &Poly) -> VecPoly {
        VecPoly { comps: self.comps.iter().map(|q| q.mul(p)).collect() }
    }

    pub fn scale(&self, c: &FieldElem) -> VecPoly {
        VecPoly { comps: self.comps.iter().map(|p| p.scale(c)).collect() }
    }

    /// Leading term under the module order: component, monomial, coefficient.
    pub fn lt(&self, ring: &RingCtx, order: &ModOrder) -> Option<(usize, Monomial, FieldElem)> {
        let mut best: Option<(usize, &Monomial, &FieldElem)> = None;
        for (i, p) in self.comps.iter().enumerate() {
            let Some(m) = p.lm() else { continue };
            let c = p.lc().unwrap();
            best = match best {
                None => Some((i, m, c)),
                Some((bi, bm, bc)) => {
                    if order.cmp_parts(ring, (m, i), (bm, bi)) == Ordering::Greater {
                        Some((i, m, c))
                    } else {
                        Some((bi, bm, bc))
                    }
                }
            };
        }
        best.map(|(i, m, c)| (i, m.clone(), c.clone()))
    }

    /// Divides every coefficient by the leading coefficient.
    pub fn monic(&self, ring: &RingCtx, order: &ModOrder) -> VecPoly {
        match self.lt(ring, order) {
            None => self.clone(),
            Some((_, _, c)) if c.is_one() => self.clone(),
            Some((_, _, c)) => {
                let inv = c.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Widens into a free module of higher rank, placing this vector's
    /// components starting at `offset`.
    pub fn embed(&self, ring: &RingCtx, rank: usize, offset: usize) -> VecPoly {
        let mut comps = vec![ring.zero(); rank];
        for (i, p) in self.comps.iter().enumerate() {
            comps[offset + i] = p.clone();
        }
        VecPoly { comps }
    }

    /// Projects onto components `range`.
    pub fn restrict(&self, range: std::ops::Range<usize>) -> VecPoly {
        VecPoly { comps: self.comps[range].to_vec() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{FieldSpec, MonomialOrder};

    #[test]
    fn pot_prefers_low_components() {
        let r = RingCtx::new(
            FieldSpec::Rationals,
            vec!["x".into(), "y".into()],
            MonomialOrder::Grevlex,
        )
        .unwrap();
        let v = VecPoly::from_components(vec![r.var(1), r.var(0).pow(5)]);
        let (comp, mono, _) = v.lt(&r, &ModOrder::Pot).unwrap();
        assert_eq!(comp, 0);
        assert_eq!(mono, Monomial::var(1, 2));
    }
}
