//! Ideals and submodules of free modules with cached reduced Groebner
//! bases, plus the derived operations: normal forms, membership, syzygies,
//! elimination, saturation, quotients, radical membership and ring maps.

mod bucket;
mod buchberger;
mod vecpoly;

pub use buchberger::{
    divide, interreduce, kernel_of_columns, normal_form_vec, syzygy_basis, SpanContext,
};
pub use vecpoly::{ModMonomial, ModOrder, SchreyerLevel, VecPoly};

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::polyring::{DegreeOverflowPanic, MonomialOrder, Poly, RingCtx};

/// Runs `f`, converting a degree-cap panic into `Error::DegreeOverflow`.
/// Groebner computations can blow past the exponent cap on adversarial
/// input; the cap panic is caught here at the public boundary.
pub(crate) fn guard_degree<T>(f: impl FnOnce() -> T) -> Result<T> {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(v) => Ok(v),
        Err(payload) => {
            if payload.is::<DegreeOverflowPanic>() {
                Err(Error::DegreeOverflow)
            } else {
                std::panic::resume_unwind(payload)
            }
        }
    }
}

#[derive(Debug)]
struct IdealInner {
    ring: RingCtx,
    gens: Vec<Poly>,
    gb: OnceLock<Vec<Poly>>,
}

/// An ideal of the polynomial ring, given by generators, with a lazily
/// computed reduced Groebner basis. The cache is filled at most once;
/// concurrent readers see either nothing or the finished basis.
#[derive(Debug, Clone)]
pub struct IdealHandle(Arc<IdealInner>);

impl PartialEq for IdealHandle {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl IdealHandle {
    pub fn new(ring: &RingCtx, gens: Vec<Poly>) -> Self {
        let gens: Vec<Poly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        debug_assert!(gens.iter().all(|g| g.ring() == ring));
        IdealHandle(Arc::new(IdealInner { ring: ring.clone(), gens, gb: OnceLock::new() }))
    }

    pub fn zero(ring: &RingCtx) -> Self {
        IdealHandle::new(ring, Vec::new())
    }

    pub fn ring(&self) -> &RingCtx {
        &self.0.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.0.gens
    }

    /// The reduced Groebner basis: monic, auto-reduced, sorted by
    /// decreasing leading monomial. Unique for the ring's order.
    pub fn groebner_basis(&self) -> Result<&[Poly]> {
        if let Some(gb) = self.0.gb.get() {
            return Ok(gb);
        }
        let ring = &self.0.ring;
        let vecs: Vec<VecPoly> = self
            .0
            .gens
            .iter()
            .map(|g| VecPoly::from_components(vec![g.clone()]))
            .collect();
        let gb = guard_degree(|| {
            buchberger::buchberger(&vecs, ring, &ModOrder::Pot, 1, true)
                .into_iter()
                .map(|v| v.into_components().pop().unwrap())
                .collect::<Vec<Poly>>()
        })?;
        let _ = self.0.gb.set(gb);
        Ok(self.0.gb.get().unwrap())
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        let gb = self.groebner_basis()?;
        let ring = &self.0.ring;
        guard_degree(|| {
            let basis: Vec<VecPoly> = gb
                .iter()
                .map(|g| VecPoly::from_components(vec![g.clone()]))
                .collect();
            let v = VecPoly::from_components(vec![f.clone()]);
            normal_form_vec(&v, &basis, ring, &ModOrder::Pot)
                .into_components()
                .pop()
                .unwrap()
        })
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        if f.ring() != self.ring() {
            return Err(Error::MixedRings);
        }
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.is_empty())
    }

    pub fn is_unit(&self) -> Result<bool> {
        let gb = self.groebner_basis()?;
        Ok(gb.len() == 1 && gb[0].is_one())
    }

    /// Mutual membership of generators.
    pub fn equals(&self, other: &IdealHandle) -> Result<bool> {
        if self.ring() != other.ring() {
            return Err(Error::MixedRings);
        }
        for g in other.gens() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        for g in self.gens() {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_subset_of(&self, other: &IdealHandle) -> Result<bool> {
        for g in self.gens() {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Generator-wise sum I + J.
    pub fn sum(&self, other: &IdealHandle) -> IdealHandle {
        let mut gens = self.gens().to_vec();
        gens.extend_from_slice(other.gens());
        IdealHandle::new(self.ring(), gens)
    }

    pub fn with_extra_gens(&self, extra: &[Poly]) -> IdealHandle {
        let mut gens = self.gens().to_vec();
        gens.extend_from_slice(extra);
        IdealHandle::new(self.ring(), gens)
    }

    /// A handle whose generators are exactly the reduced Groebner basis;
    /// the canonical representative used for printing and set comparison.
    pub fn canonicalize(&self) -> Result<IdealHandle> {
        let gb = self.groebner_basis()?.to_vec();
        let out = IdealHandle::new(self.ring(), gb.clone());
        let _ = out.0.gb.set(gb);
        Ok(out)
    }

    /// Canonical generator strings (monic reduced GB in order).
    pub fn canonical_gens(&self) -> Result<Vec<String>> {
        Ok(self.groebner_basis()?.iter().map(|g| g.canonical_string()).collect())
    }

    /// One string identifying the ideal up to equality.
    pub fn canonical_key(&self) -> Result<String> {
        Ok(self.canonical_gens()?.join(", "))
    }

    /// True if the reduced GB consists of single terms, i.e. the ideal is
    /// generated by monomials.
    pub fn is_monomial(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.iter().all(|g| g.num_terms() == 1))
    }

    /// Intersection via the one-variable trick: eliminate t from
    /// t*I + (1-t)*J.
    pub fn intersect(&self, other: &IdealHandle) -> Result<IdealHandle> {
        let ring = self.ring();
        if other.ring() != ring {
            return Err(Error::MixedRings);
        }
        // Cheap outs: (0) and unit ideals.
        if self.is_zero()? || other.is_unit()? {
            return self.canonicalize();
        }
        if other.is_zero()? || self.is_unit()? {
            return other.canonicalize();
        }
        let tname = ring.fresh_var_name("t");
        let ext = ring.extend_front(&tname)?;
        let shift: Vec<usize> = (1..=ring.nvars()).collect();
        let t = ext.var(0);
        let one_minus_t = ext.one().sub(&t);
        let mut gens = Vec::new();
        for g in self.gens() {
            gens.push(g.permute_into(&ext, &shift).mul(&t));
        }
        for g in other.gens() {
            gens.push(g.permute_into(&ext, &shift).mul(&one_minus_t));
        }
        let extended = IdealHandle::new(&ext, gens);
        let kept = extended.eliminate_first_block(1)?;
        let out_gens: Vec<Poly> = kept
            .iter()
            .map(|g| {
                // drop the t slot; its exponent is zero in every kept term
                let mut terms = Vec::new();
                for (m, c) in g.terms() {
                    let e = m.exponents()[1..].to_vec();
                    terms.push((crate::polyring::Monomial::from_exponents(e), c.clone()));
                }
                ring.from_terms(terms)
            })
            .collect();
        IdealHandle::new(ring, out_gens).canonicalize()
    }

    /// GB elements not involving the first `block` variables of this
    /// ideal's (elimination-ordered) ring.
    fn eliminate_first_block(&self, block: usize) -> Result<Vec<Poly>> {
        let gb = self.groebner_basis()?;
        Ok(gb
            .iter()
            .filter(|g| {
                g.terms()
                    .iter()
                    .all(|(m, _)| m.exponents()[..block].iter().all(|&e| e == 0))
            })
            .cloned()
            .collect())
    }
}

/// Generators of I intersect k[keep], as an ideal of the smaller ring on
/// `keep` (in their original relative order, grevlex).
pub fn eliminate(ideal: &IdealHandle, keep: &[usize]) -> Result<IdealHandle> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let mut keep_sorted = keep.to_vec();
    keep_sorted.sort_unstable();
    keep_sorted.dedup();
    let drop: Vec<usize> = (0..n).filter(|i| !keep_sorted.contains(i)).collect();

    if keep_sorted.is_empty() {
        // Intersection with the ground field: (1) if the ideal is the unit
        // ideal, else (0) -- represented in a one-variable dummy ring.
        let dummy = ring.subring(vec!["_c".into()], MonomialOrder::Grevlex)?;
        return if ideal.is_unit()? {
            Ok(IdealHandle::new(&dummy, vec![dummy.one()]))
        } else {
            Ok(IdealHandle::zero(&dummy))
        };
    }

    // Permuted ring: dropped variables first, elimination order on them.
    let mut names: Vec<String> = drop.iter().map(|&i| ring.vars()[i].clone()).collect();
    names.extend(keep_sorted.iter().map(|&i| ring.vars()[i].clone()));
    let perm_ring = ring.subring(names, MonomialOrder::Elim(drop.len()))?;
    let mut var_map = vec![0usize; n];
    for (slot, &orig) in drop.iter().enumerate() {
        var_map[orig] = slot;
    }
    for (slot, &orig) in keep_sorted.iter().enumerate() {
        var_map[orig] = drop.len() + slot;
    }
    let moved: Vec<Poly> = ideal.gens().iter().map(|g| g.permute_into(&perm_ring, &var_map)).collect();
    let perm_ideal = IdealHandle::new(&perm_ring, moved);
    let kept = perm_ideal.eliminate_first_block(drop.len())?;

    let small = ring.subring(
        keep_sorted.iter().map(|&i| ring.vars()[i].clone()).collect(),
        MonomialOrder::Grevlex,
    )?;
    let out: Vec<Poly> = kept
        .iter()
        .map(|g| {
            let mut terms = Vec::new();
            for (m, c) in g.terms() {
                let e = m.exponents()[drop.len()..].to_vec();
                terms.push((crate::polyring::Monomial::from_exponents(e), c.clone()));
            }
            small.from_terms(terms)
        })
        .collect();
    IdealHandle::new(&small, out).canonicalize()
}

/// (I : f): syzygies of [f, g_1, ..., g_s] projected to the first slot.
pub fn ideal_quotient(ideal: &IdealHandle, f: &Poly) -> Result<IdealHandle> {
    if f.is_zero() {
        return Err(Error::ZeroDivisorArgument);
    }
    let ring = ideal.ring();
    guard_degree(|| {
        let mut cols = vec![VecPoly::from_components(vec![f.clone()])];
        for g in ideal.gens() {
            cols.push(VecPoly::from_components(vec![g.clone()]));
        }
        let syz = kernel_of_columns(&cols, ring, 1);
        let gens: Vec<Poly> = syz.iter().map(|v| v.component(0).clone()).collect();
        IdealHandle::new(ring, gens)
    })?
    .canonicalize()
}

/// (I : f^infinity) by iterating the quotient until it stabilizes.
pub fn saturate(ideal: &IdealHandle, f: &Poly) -> Result<IdealHandle> {
    if f.is_zero() {
        return Err(Error::ZeroDivisorArgument);
    }
    let mut cur = ideal.canonicalize()?;
    loop {
        let next = ideal_quotient(&cur, f)?;
        if next.is_subset_of(&cur)? {
            return Ok(cur);
        }
        cur = next;
    }
}

/// Rabinowitsch: f lies in the radical of I iff 1 in I + (t*f - 1).
pub fn radical_member(f: &Poly, ideal: &IdealHandle) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    let ring = ideal.ring();
    let tname = ring.fresh_var_name("t");
    let ext = ring.extend_front(&tname)?;
    let shift: Vec<usize> = (1..=ring.nvars()).collect();
    let mut gens: Vec<Poly> = ideal.gens().iter().map(|g| g.permute_into(&ext, &shift)).collect();
    let tf = ext.var(0).mul(&f.permute_into(&ext, &shift));
    gens.push(tf.sub(&ext.one()));
    IdealHandle::new(&ext, gens).is_unit()
}

/// A ring homomorphism determined by one target polynomial per source
/// variable. Source and target must share the coefficient field.
#[derive(Debug, Clone)]
pub struct RingMap {
    source: RingCtx,
    target: RingCtx,
    images: Vec<Poly>,
}

impl RingMap {
    pub fn new(source: RingCtx, target: RingCtx, images: Vec<Poly>) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(Error::LengthMismatch);
        }
        if source.field() != target.field() {
            return Err(Error::MixedFields);
        }
        if images.iter().any(|p| p.ring() != &target) {
            return Err(Error::MixedRings);
        }
        Ok(RingMap { source, target, images })
    }

    pub fn source(&self) -> &RingCtx {
        &self.source
    }

    pub fn target(&self) -> &RingCtx {
        &self.target
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        if f.ring() != &self.source {
            return Err(Error::MixedRings);
        }
        Ok(f.substitute(&self.target, &self.images))
    }

    pub fn apply_ideal(&self, ideal: &IdealHandle) -> Result<IdealHandle> {
        let gens = ideal
            .gens()
            .iter()
            .map(|g| self.apply(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(IdealHandle::new(&self.target, gens))
    }
}

/// A submodule of a free module S^rank with a cached Groebner basis under
/// the position-over-term order.
#[derive(Debug, Clone)]
pub struct Submodule {
    ring: RingCtx,
    rank: usize,
    gens: Vec<VecPoly>,
    gb: Arc<OnceLock<Vec<VecPoly>>>,
}

impl Submodule {
    pub fn new(ring: &RingCtx, rank: usize, gens: Vec<VecPoly>) -> Self {
        let gens: Vec<VecPoly> = gens.into_iter().filter(|v| !v.is_zero()).collect();
        debug_assert!(gens.iter().all(|v| v.rank() == rank));
        Submodule { ring: ring.clone(), rank, gens, gb: Arc::new(OnceLock::new()) }
    }

    pub fn ring(&self) -> &RingCtx {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gens(&self) -> &[VecPoly] {
        &self.gens
    }

    pub fn groebner_basis(&self) -> Result<&[VecPoly]> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = guard_degree(|| {
            buchberger::buchberger(&self.gens, &self.ring, &ModOrder::Pot, self.rank, true)
        })?;
        let _ = self.gb.set(gb);
        Ok(self.gb.get().unwrap())
    }

    pub fn normal_form(&self, v: &VecPoly) -> Result<VecPoly> {
        let gb = self.groebner_basis()?;
        guard_degree(|| normal_form_vec(v, gb, &self.ring, &ModOrder::Pot))
    }

    pub fn contains(&self, v: &VecPoly) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }

    pub fn equals(&self, other: &Submodule) -> Result<bool> {
        if self.rank != other.rank {
            return Ok(false);
        }
        for v in other.gens() {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        for v in self.gens() {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
