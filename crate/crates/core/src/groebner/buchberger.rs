//! Buchberger's algorithm with the Gebauer-Moeller pair update, complete
//! normal forms, syzygy extraction via Schreyer's construction, and the
//! kernel/lift helpers built on component-elimination orders.
//!
//! Everything here is deterministic: pairs are selected by smallest lcm in
//! the module order with ties broken by creation index, and finished bases
//! are monic, auto-reduced and sorted by leading term.

use std::cmp::Ordering;

use crate::groebner::bucket::VecBucket;
use crate::groebner::vecpoly::{ModMonomial, ModOrder, VecPoly};
use crate::polyring::{FieldElem, Monomial, Poly, RingCtx};

/// Complete division: returns the normal form of `v` against `basis`, and,
/// when `track` is set, the quotient polynomials so that
/// `v = sum_i q_i basis_i + remainder`. The dividend lives in geobuckets,
/// so long reductions stay close to linear in the terms they touch.
pub fn divide(
    v: &VecPoly,
    basis: &[VecPoly],
    ring: &RingCtx,
    order: &ModOrder,
    track: bool,
) -> (VecPoly, Option<Vec<Poly>>) {
    let rank = v.rank();
    let mut quot = if track { Some(vec![ring.zero(); basis.len()]) } else { None };
    let lts: Vec<Option<(usize, Monomial, FieldElem)>> =
        basis.iter().map(|b| b.lt(ring, order)).collect();
    let mut cur = VecBucket::from_components(ring, v.components());
    let mut rem: Vec<Vec<(Monomial, FieldElem)>> = vec![Vec::new(); rank];
    'outer: while let Some((comp, mono, coef)) = cur.lt(order) {
        for (j, lt) in lts.iter().enumerate() {
            let Some((bc, bm, bcoef)) = lt else { continue };
            if *bc == comp && bm.divides(&mono) {
                let q_mono = bm.quotient_into(&mono);
                let q_coef = coef.div(bcoef);
                cur.sub_scaled(&basis[j], &q_mono, &q_coef);
                if let Some(q) = quot.as_mut() {
                    q[j] = q[j].add(&ring.monomial(q_mono, q_coef));
                }
                continue 'outer;
            }
        }
        // No divisor: move the leading term to the remainder. Heads come
        // off in strictly decreasing order, so each list stays sorted.
        cur.pop(comp, &mono);
        rem[comp].push((mono, coef));
    }
    let rem = VecPoly::from_components(
        rem.into_iter()
            .map(|terms| ring.from_sorted_terms_unchecked(terms))
            .collect(),
    );
    (rem, quot)
}

/// Normal form of `v` against `basis`.
pub fn normal_form_vec(v: &VecPoly, basis: &[VecPoly], ring: &RingCtx, order: &ModOrder) -> VecPoly {
    divide(v, basis, ring, order, false).0
}

/// Full reduction against the live (non-redundant) part of a working
/// basis, preferring the reducer with the fewest terms to limit fill-in.
fn reduce_for_basis(
    v: &VecPoly,
    lts: &[(usize, Monomial, FieldElem)],
    basis: &[VecPoly],
    sizes: &[usize],
    live: &[bool],
    ring: &RingCtx,
    order: &ModOrder,
) -> VecPoly {
    let rank = v.rank();
    let mut cur = VecBucket::from_components(ring, v.components());
    let mut rem: Vec<Vec<(Monomial, FieldElem)>> = vec![Vec::new(); rank];
    while let Some((comp, mono, coef)) = cur.lt(order) {
        let mut choice: Option<usize> = None;
        for (j, (bc, bm, _)) in lts.iter().enumerate() {
            if live[j] && *bc == comp && bm.divides(&mono) {
                if choice.map_or(true, |c| sizes[j] < sizes[c]) {
                    choice = Some(j);
                }
            }
        }
        match choice {
            Some(j) => {
                let q_mono = lts[j].1.quotient_into(&mono);
                let q_coef = coef.div(&lts[j].2);
                cur.sub_scaled(&basis[j], &q_mono, &q_coef);
            }
            None => {
                cur.pop(comp, &mono);
                rem[comp].push((mono, coef));
            }
        }
    }
    VecPoly::from_components(
        rem.into_iter()
            .map(|terms| ring.from_sorted_terms_unchecked(terms))
            .collect(),
    )
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: ModMonomial,
    serial: u64,
}

/// The Gebauer-Moeller update: forms the new pairs against element `t`,
/// discards the ones eliminated by the lcm and chain criteria, and prunes
/// old pairs made redundant by the new leading term. The coprimality
/// criterion is only sound for ideals, so it is applied when `rank == 1`.
fn update_pairs(
    pairs: &mut Vec<Pair>,
    lts: &[(usize, Monomial, FieldElem)],
    t: usize,
    rank: usize,
    serial: &mut u64,
) {
    let (tc, tm, _) = &lts[t];
    let mut fresh: Vec<Pair> = Vec::new();
    for (i, (ic, im, _)) in lts.iter().enumerate().take(t) {
        if ic != tc {
            continue;
        }
        *serial += 1;
        fresh.push(Pair {
            i,
            j: t,
            lcm: ModMonomial { mono: im.lcm(tm), comp: *tc },
            serial: *serial,
        });
    }

    // lcm criterion: drop (i,t) when some (j,t) has a strictly smaller lcm
    // dividing it; among equal lcms keep the earliest.
    let mut keep = vec![true; fresh.len()];
    for a in 0..fresh.len() {
        if !keep[a] {
            continue;
        }
        for b in 0..fresh.len() {
            if a == b || !keep[a] {
                continue;
            }
            if !keep[b] {
                continue;
            }
            if fresh[b].lcm.mono == fresh[a].lcm.mono {
                if b < a {
                    keep[a] = false;
                }
            } else if fresh[b].lcm.mono.divides(&fresh[a].lcm.mono) {
                keep[a] = false;
            }
        }
    }
    // Coprime leading monomials reduce to zero (ideals only).
    if rank == 1 {
        for (idx, p) in fresh.iter().enumerate() {
            let (_, im, _) = &lts[p.i];
            if im.is_coprime(tm) {
                keep[idx] = false;
            }
        }
    }

    // Chain criterion on the surviving old pairs.
    pairs.retain(|p| {
        let (ic, im, _) = &lts[p.i];
        let (_, jm, _) = &lts[p.j];
        if ic != tc || !tm.divides(&p.lcm.mono) {
            return true;
        }
        let lcm_it = im.lcm(tm);
        let lcm_jt = jm.lcm(tm);
        !(lcm_it != p.lcm.mono && lcm_jt != p.lcm.mono)
    });

    pairs.extend(fresh.into_iter().zip(keep).filter_map(|(p, k)| k.then_some(p)));
}

fn pop_best_pair(pairs: &mut Vec<Pair>, ring: &RingCtx, order: &ModOrder) -> Option<Pair> {
    if pairs.is_empty() {
        return None;
    }
    let mut best = 0usize;
    for k in 1..pairs.len() {
        match order.cmp(ring, &pairs[k].lcm, &pairs[best].lcm) {
            Ordering::Less => best = k,
            Ordering::Equal if pairs[k].serial < pairs[best].serial => best = k,
            _ => {}
        }
    }
    Some(pairs.swap_remove(best))
}

fn s_vector(
    gi: &VecPoly,
    gj: &VecPoly,
    lti: &(usize, Monomial, FieldElem),
    ltj: &(usize, Monomial, FieldElem),
    lcm: &Monomial,
) -> VecPoly {
    let ui = lti.1.quotient_into(lcm);
    let uj = ltj.1.quotient_into(lcm);
    let ci = lti.2.inv().expect("unit");
    let cj = ltj.2.inv().expect("unit");
    gi.mul_term(&ui, &ci).sub(&gj.mul_term(&uj, &cj))
}

/// Buchberger's algorithm on vectors in S^rank. Returns a minimal monic
/// basis; with `reduce_tails` it is the reduced (fully auto-reduced) basis,
/// sorted by decreasing leading term.
pub fn buchberger(
    gens: &[VecPoly],
    ring: &RingCtx,
    order: &ModOrder,
    rank: usize,
    reduce_tails: bool,
) -> Vec<VecPoly> {
    let mut basis: Vec<VecPoly> = Vec::new();
    let mut lts: Vec<(usize, Monomial, FieldElem)> = Vec::new();
    let mut sizes: Vec<usize> = Vec::new();
    let mut live: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut serial = 0u64;

    let add_element = |g: VecPoly,
                       basis: &mut Vec<VecPoly>,
                       lts: &mut Vec<(usize, Monomial, FieldElem)>,
                       sizes: &mut Vec<usize>,
                       live: &mut Vec<bool>,
                       pairs: &mut Vec<Pair>,
                       serial: &mut u64| {
        let lt = g.lt(ring, order).expect("nonzero");
        // older elements with a now-divisible leading term stop reducing
        for k in 0..basis.len() {
            if live[k] && lts[k].0 == lt.0 && lt.1.divides(&lts[k].1) {
                live[k] = false;
            }
        }
        sizes.push(g.components().iter().map(Poly::num_terms).sum());
        basis.push(g);
        lts.push(lt);
        live.push(true);
        update_pairs(pairs, lts, basis.len() - 1, rank, serial);
    };

    for g in gens {
        if g.is_zero() {
            continue;
        }
        let nf = reduce_for_basis(g, &lts, &basis, &sizes, &live, ring, order);
        if !nf.is_zero() {
            add_element(nf, &mut basis, &mut lts, &mut sizes, &mut live, &mut pairs, &mut serial);
        }
    }

    while let Some(pair) = pop_best_pair(&mut pairs, ring, order) {
        let s = s_vector(
            &basis[pair.i],
            &basis[pair.j],
            &lts[pair.i],
            &lts[pair.j],
            &pair.lcm.mono,
        );
        let nf = reduce_for_basis(&s, &lts, &basis, &sizes, &live, ring, order);
        if !nf.is_zero() {
            add_element(nf, &mut basis, &mut lts, &mut sizes, &mut live, &mut pairs, &mut serial);
        }
    }

    let kept: Vec<VecPoly> = basis
        .into_iter()
        .zip(&live)
        .filter_map(|(g, &l)| l.then_some(g))
        .collect();
    interreduce(kept, ring, order, reduce_tails)
}

/// Minimalizes (drops elements whose leading term is divisible by another's),
/// optionally tail-reduces, normalizes to monic, and sorts by decreasing
/// leading term.
pub fn interreduce(
    mut basis: Vec<VecPoly>,
    ring: &RingCtx,
    order: &ModOrder,
    reduce_tails: bool,
) -> Vec<VecPoly> {
    basis.retain(|g| !g.is_zero());
    let mut lts: Vec<(usize, Monomial, FieldElem)> =
        basis.iter().map(|g| g.lt(ring, order).expect("nonzero")).collect();

    // Drop leading-term-redundant elements, preferring to keep earlier ones.
    let mut keep = vec![true; basis.len()];
    for a in 0..basis.len() {
        if !keep[a] {
            continue;
        }
        for b in 0..basis.len() {
            if a == b || !keep[b] {
                continue;
            }
            if lts[b].0 == lts[a].0 && lts[b].1.divides(&lts[a].1) {
                if lts[b].1 == lts[a].1 && b > a {
                    continue;
                }
                keep[a] = false;
                break;
            }
        }
    }
    let mut kept: Vec<VecPoly> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();

    if reduce_tails {
        for i in 0..kept.len() {
            let g = kept[i].clone();
            let others: Vec<VecPoly> = kept
                .iter()
                .enumerate()
                .filter_map(|(j, h)| (j != i).then(|| h.clone()))
                .collect();
            kept[i] = normal_form_vec(&g, &others, ring, order);
            debug_assert!(!kept[i].is_zero(), "minimal basis element reduced away");
        }
    }

    for g in kept.iter_mut() {
        *g = g.monic(ring, order);
    }
    lts = kept.iter().map(|g| g.lt(ring, order).expect("nonzero")).collect();
    let mut idx: Vec<usize> = (0..kept.len()).collect();
    idx.sort_by(|&a, &b| {
        let ma = ModMonomial { mono: lts[a].1.clone(), comp: lts[a].0 };
        let mb = ModMonomial { mono: lts[b].1.clone(), comp: lts[b].0 };
        order.cmp(ring, &mb, &ma)
    });
    idx.into_iter().map(|i| kept[i].clone()).collect()
}

/// Schreyer syzygies of a Groebner basis: one generator per same-component
/// pair (i < j), each recording the full division of the corresponding
/// S-vector. The result is itself a Groebner basis of the syzygy module
/// under the returned induced order.
pub fn syzygy_basis(
    gb: &[VecPoly],
    ring: &RingCtx,
    order: &ModOrder,
) -> (Vec<VecPoly>, ModOrder) {
    let lts: Vec<(usize, Monomial, FieldElem)> =
        gb.iter().map(|g| g.lt(ring, order).expect("GB element nonzero")).collect();
    let images: Vec<ModMonomial> = lts
        .iter()
        .map(|(c, m, _)| ModMonomial { mono: m.clone(), comp: *c })
        .collect();
    let next_order = ModOrder::schreyer(order.clone(), images);

    let m = gb.len();
    let mut syz = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            if lts[i].0 != lts[j].0 {
                continue;
            }
            let lcm = lts[i].1.lcm(&lts[j].1);
            let s = s_vector(&gb[i], &gb[j], &lts[i], &lts[j], &lcm);
            let (rem, quot) = divide(&s, gb, ring, order, true);
            debug_assert!(rem.is_zero(), "S-vector of a GB must reduce to zero");
            let q = quot.unwrap();
            let mut comps: Vec<Poly> = q.iter().map(Poly::neg).collect();
            let ci = lts[i].2.inv().expect("unit");
            let cj = lts[j].2.inv().expect("unit");
            comps[i] = comps[i].add(&ring.monomial(lts[i].1.quotient_into(&lcm), ci));
            comps[j] = comps[j].sub(&ring.monomial(lts[j].1.quotient_into(&lcm), cj));
            let v = VecPoly::from_components(comps);
            debug_assert!(!v.is_zero());
            syz.push(v);
        }
    }
    (syz, next_order)
}

/// Generators of the syzygy module of arbitrary (non-GB) vectors, via the
/// component-elimination trick: compute a GB of `{v_i (+) e_i}` in
/// S^(rank+k) under POT and keep the tails of the elements whose leading
/// block vanished.
pub fn kernel_of_columns(cols: &[VecPoly], ring: &RingCtx, rank: usize) -> Vec<VecPoly> {
    SpanContext::new(cols, ring, rank).syzygies()
}

/// Prepared data for repeated span-membership, lifting and syzygy questions
/// about a fixed generating set. One extended Groebner basis answers all
/// three.
pub struct SpanContext {
    rank: usize,
    k: usize,
    order: ModOrder,
    gb: Vec<VecPoly>,
}

impl SpanContext {
    pub fn new(cols: &[VecPoly], ring: &RingCtx, rank: usize) -> Self {
        let k = cols.len();
        let ext: Vec<VecPoly> = cols
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut w = v.embed(ring, rank + k, 0);
                w = w.add(&VecPoly::unit(ring, rank + k, rank + i, ring.one()));
                w
            })
            .collect();
        // block order: the original components dominate, term-over-position
        // inside each block; tails are irrelevant for membership tests and
        // syzygy extraction
        let order = ModOrder::Pot;
        let gb = buchberger(&ext, ring, &order, rank + k, false);
        SpanContext { rank, k, order, gb }
    }

    /// Generators of the syzygy module of the columns: the basis elements
    /// whose leading block vanished.
    pub fn syzygies(&self) -> Vec<VecPoly> {
        self.gb
            .iter()
            .filter(|w| (0..self.rank).all(|c| w.component(c).is_zero()))
            .map(|w| w.restrict(self.rank..self.rank + self.k))
            .collect()
    }

    /// If `target` lies in the span, returns coefficients expressing it as a
    /// combination of the original columns.
    pub fn lift(&self, target: &VecPoly, ring: &RingCtx) -> Option<Vec<Poly>> {
        let ext = target.embed(ring, self.rank + self.k, 0);
        let nf = normal_form_vec(&ext, &self.gb, ring, &self.order);
        if (0..self.rank).any(|c| !nf.component(c).is_zero()) {
            return None;
        }
        Some((0..self.k).map(|i| nf.component(self.rank + i).neg()).collect())
    }
}
