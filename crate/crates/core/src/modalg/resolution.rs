//! Free complexes and Schreyer resolutions.
//!
//! The resolution iterates syzygy extraction on a Groebner basis. At every
//! level the basis is sorted by leading-term component and then by
//! decreasing lex leading monomial; under the induced Schreyer orders this
//! makes each syzygy step drop one more variable from the leading terms, so
//! the iteration stops within the variable count after the presentation
//! step, well inside the 2n+2 cap.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::groebner::{guard_degree, interreduce, syzygy_basis, ModOrder, VecPoly};
use crate::modalg::{FPModule, PolyMatrix};
use crate::polyring::{Monomial, MonomialOrder, Poly, RingCtx};

pub const DEFAULT_CAP_FACTOR: usize = 2;

/// A complex of free modules S^{b_L} -> ... -> S^{b_1} -> S^{b_0} with
/// exact interior (every map's kernel equals the next image).
#[derive(Debug, Clone)]
pub struct FreeComplex {
    ring: RingCtx,
    ranks: Vec<usize>,        // b_0, ..., b_L
    maps: Vec<PolyMatrix>,    // maps[k]: S^{b_{k+1}} -> S^{b_k}
}

impl FreeComplex {
    pub fn new(ring: &RingCtx, ranks: Vec<usize>, maps: Vec<PolyMatrix>) -> Result<Self> {
        assert_eq!(ranks.len(), maps.len() + 1);
        for (k, m) in maps.iter().enumerate() {
            assert_eq!(m.rows(), ranks[k]);
            assert_eq!(m.cols(), ranks[k + 1]);
        }
        let c = FreeComplex { ring: ring.clone(), ranks, maps };
        c.check_composes_to_zero()?;
        Ok(c)
    }

    fn check_composes_to_zero(&self) -> Result<()> {
        for k in 0..self.maps.len().saturating_sub(1) {
            if !self.maps[k].mul(&self.maps[k + 1]).is_zero() {
                return Err(Error::NotAComplex);
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &RingCtx {
        &self.ring
    }

    /// Number of maps (the homological length).
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    /// The map d_k: S^{b_k} -> S^{b_{k-1}}, 1-based like the differential.
    pub fn map(&self, k: usize) -> Option<&PolyMatrix> {
        if k == 0 {
            None
        } else {
            self.maps.get(k - 1)
        }
    }

    /// Splits off trivial summands: a nonzero constant entry u at (i, j) of
    /// d_k means basis vectors can be cancelled; the Schur complement
    /// replaces d_k while d_{k+1} loses row j and d_{k-1} loses column i,
    /// exactness forcing the removed coordinates. Iterating yields a much
    /// smaller complex with the same homology up to isomorphism, which is
    /// what every derived invariant here consumes. The cokernel of the last
    /// map changes only by isomorphism.
    pub fn prune(&self) -> FreeComplex {
        let ring = self.ring.clone();
        let mut ranks = self.ranks.clone();
        let mut maps = self.maps.clone();

        fn terms_of(m: &PolyMatrix) -> usize {
            let mut t = 0;
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    t += m.entry(i, j).num_terms();
                }
            }
            t
        }

        // Greedy pivoting with a fill-in guard: among all constant pivots
        // pick the one whose Schur update is estimated to add the fewest
        // terms, and stop rather than let the complex densify (some bad
        // complexes are cheaper to dualize unpruned).
        let budget = 4 * maps.iter().map(terms_of).sum::<usize>() + 256;
        loop {
            let total: usize = maps.iter().map(terms_of).sum();
            let mut best: Option<(usize, usize, usize, usize)> = None;
            for (k, m) in maps.iter().enumerate() {
                for i in 0..m.rows() {
                    for j in 0..m.cols() {
                        let e = m.entry(i, j);
                        if e.is_zero() || !e.is_constant() {
                            continue;
                        }
                        let mut fill = 0usize;
                        for i2 in 0..m.rows() {
                            if i2 == i || m.entry(i2, j).is_zero() {
                                continue;
                            }
                            for j2 in 0..m.cols() {
                                if j2 == j || m.entry(i, j2).is_zero() {
                                    continue;
                                }
                                fill += m.entry(i2, j).num_terms() * m.entry(i, j2).num_terms();
                            }
                        }
                        if best.map_or(true, |(bf, ..)| fill < bf) {
                            best = Some((fill, k, i, j));
                        }
                    }
                }
            }
            let Some((fill, k, pi, pj)) = best else { break };
            if total + fill > budget {
                break;
            }
            let u = maps[k].entry(pi, pj).lc().unwrap().clone();
            let inv = u.inv().expect("unit");
            let old = &maps[k];
            // Schur complement without row pi / column pj
            let mut entries = Vec::with_capacity((old.rows() - 1) * (old.cols() - 1));
            for i in 0..old.rows() {
                if i == pi {
                    continue;
                }
                for j in 0..old.cols() {
                    if j == pj {
                        continue;
                    }
                    let corr = old.entry(i, pj).mul(old.entry(pi, j)).scale(&inv);
                    entries.push(old.entry(i, j).sub(&corr));
                }
            }
            maps[k] = PolyMatrix::new(&ring, old.rows() - 1, old.cols() - 1, entries);
            if k + 1 < maps.len() {
                maps[k + 1] = delete_row(&ring, &maps[k + 1], pj);
            }
            if k >= 1 {
                maps[k - 1] = delete_col(&ring, &maps[k - 1], pi);
            }
            ranks[k] -= 1;
            ranks[k + 1] -= 1;
        }
        while maps.last().map_or(false, |m| m.cols() == 0) {
            maps.pop();
            ranks.pop();
        }
        let out = FreeComplex { ring, ranks, maps };
        debug_assert!(out.check_composes_to_zero().is_ok());
        out
    }
}

fn delete_row(ring: &RingCtx, m: &PolyMatrix, row: usize) -> PolyMatrix {
    let mut entries = Vec::with_capacity((m.rows() - 1) * m.cols());
    for i in 0..m.rows() {
        if i == row {
            continue;
        }
        for j in 0..m.cols() {
            entries.push(m.entry(i, j).clone());
        }
    }
    PolyMatrix::new(ring, m.rows() - 1, m.cols(), entries)
}

fn delete_col(ring: &RingCtx, m: &PolyMatrix, col: usize) -> PolyMatrix {
    let mut entries = Vec::with_capacity(m.rows() * (m.cols() - 1));
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if j == col {
                continue;
            }
            entries.push(m.entry(i, j).clone());
        }
    }
    PolyMatrix::new(ring, m.rows(), m.cols() - 1, entries)
}

/// Hom(-, S): transposes every matrix and reverses the order.
pub fn dualize_complex(c: &FreeComplex) -> FreeComplex {
    let ranks: Vec<usize> = c.ranks.iter().rev().copied().collect();
    let maps: Vec<PolyMatrix> = c.maps.iter().rev().map(PolyMatrix::transpose).collect();
    FreeComplex { ring: c.ring.clone(), ranks, maps }
}

fn sort_level(ring: &RingCtx, order: &ModOrder, gb: &mut Vec<VecPoly>, variant: u64) {
    let mut keyed: Vec<((usize, Monomial), VecPoly)> = gb
        .drain(..)
        .map(|g| {
            let (c, m, _) = g.lt(ring, order).expect("nonzero GB element");
            ((c, m), g)
        })
        .collect();
    keyed.sort_by(|a, b| match a.0 .0.cmp(&b.0 .0) {
        Ordering::Equal => MonomialOrder::Lex.cmp(&b.0 .1, &a.0 .1),
        ord => ord,
    });
    let mut sorted: Vec<VecPoly> = keyed.into_iter().map(|(_, g)| g).collect();
    if variant > 0 && !sorted.is_empty() {
        let k = (variant as usize) % sorted.len();
        sorted.rotate_left(k);
    }
    *gb = sorted;
}

pub(crate) fn resolve(m: &FPModule, cap: usize, variant: u64) -> Result<FreeComplex> {
    let ring = m.ring();
    let mut ranks = vec![m.rank()];
    let mut maps: Vec<PolyMatrix> = Vec::new();

    let mut level: Vec<VecPoly> = m.colspan().groebner_basis()?.to_vec();
    let mut order = ModOrder::Pot;
    let mut ambient_rank = m.rank();

    guard_degree(|| -> Result<()> {
        while !level.is_empty() {
            if maps.len() >= cap {
                return Err(Error::ResolutionCapExceeded(cap));
            }
            sort_level(ring, &order, &mut level, variant);
            maps.push(PolyMatrix::from_columns(ring, ambient_rank, level.clone()));
            ranks.push(level.len());
            let (syz, next_order) = syzygy_basis(&level, ring, &order);
            ambient_rank = level.len();
            level = interreduce(syz, ring, &next_order, false);
            order = next_order;
        }
        Ok(())
    })??;

    let c = FreeComplex { ring: ring.clone(), ranks, maps };
    c.check_composes_to_zero()?;
    Ok(c)
}

/// The Koszul complex on the given polynomials: ranks C(s, k) with the
/// alternating-sign exterior differentials.
pub fn koszul_complex(ring: &RingCtx, elems: &[Poly]) -> FreeComplex {
    let s = elems.len();
    // subsets of {0..s} of size k, in lexicographic order
    fn subsets(s: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        fn rec(start: usize, s: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..s {
                cur.push(i);
                rec(i + 1, s, k, cur, out);
                cur.pop();
            }
        }
        rec(0, s, k, &mut Vec::new(), &mut out);
        out
    }

    let mut ranks = Vec::with_capacity(s + 1);
    let mut maps = Vec::with_capacity(s);
    let levels: Vec<Vec<Vec<usize>>> = (0..=s).map(|k| subsets(s, k)).collect();
    for k in 0..=s {
        ranks.push(levels[k].len());
    }
    for k in 1..=s {
        let src = &levels[k];
        let dst = &levels[k - 1];
        let mut entries = vec![ring.zero(); dst.len() * src.len()];
        for (j, subset) in src.iter().enumerate() {
            for (t, &elem) in subset.iter().enumerate() {
                let mut smaller = subset.clone();
                smaller.remove(t);
                let i = dst.iter().position(|x| *x == smaller).unwrap();
                let sign = if t % 2 == 0 { 1 } else { -1 };
                let coeff = ring.constant(ring.field().from_int(sign));
                entries[i * src.len() + j] = coeff.mul(&elems[elem]);
            }
        }
        maps.push(PolyMatrix::new(ring, dst.len(), src.len(), entries));
    }
    FreeComplex { ring: ring.clone(), ranks, maps }
}
