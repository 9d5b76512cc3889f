//! Finitely presented modules over the polynomial ring: presentations as
//! cokernels of matrices, kernels and homology as subquotients, free
//! resolutions, annihilators, and the Ext pipeline obtained by dualizing a
//! resolution.

mod homology;
mod resolution;

pub use homology::{ext_modules, ext_modules_with_resolution, homology_at, homology_sub};
pub use resolution::{dualize_complex, koszul_complex, FreeComplex, DEFAULT_CAP_FACTOR};

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{guard_degree, kernel_of_columns, IdealHandle, Submodule, VecPoly};
use crate::polyring::{Poly, RingCtx};

/// A matrix over the polynomial ring. Columns are relations: entry (i, j)
/// is the coefficient of basis vector e_i in relation j.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix {
    ring: RingCtx,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>, // row-major
}

impl PolyMatrix {
    pub fn new(ring: &RingCtx, rows: usize, cols: usize, entries: Vec<Poly>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        PolyMatrix { ring: ring.clone(), rows, cols, entries }
    }

    pub fn zero(ring: &RingCtx, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring: ring.clone(), rows, cols, entries: vec![ring.zero(); rows * cols] }
    }

    pub fn from_columns(ring: &RingCtx, rows: usize, cols: Vec<VecPoly>) -> Self {
        let ncols = cols.len();
        let mut entries = vec![ring.zero(); rows * ncols];
        for (j, v) in cols.iter().enumerate() {
            debug_assert_eq!(v.rank(), rows);
            for i in 0..rows {
                entries[i * ncols + j] = v.component(i).clone();
            }
        }
        PolyMatrix { ring: ring.clone(), rows, cols: ncols, entries }
    }

    pub fn ring(&self) -> &RingCtx {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> VecPoly {
        VecPoly::from_components((0..self.rows).map(|i| self.entry(i, j).clone()).collect())
    }

    pub fn columns(&self) -> Vec<VecPoly> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.entry(i, j).clone());
            }
        }
        PolyMatrix { ring: self.ring.clone(), rows: self.cols, cols: self.rows, entries }
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows);
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.entry(i, k).mul(other.entry(k, j)));
                }
                entries.push(acc);
            }
        }
        PolyMatrix { ring: self.ring.clone(), rows: self.rows, cols: other.cols, entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Drops columns that are identically zero.
    pub fn trim_zero_columns(&self) -> PolyMatrix {
        let keep: Vec<usize> = (0..self.cols)
            .filter(|&j| (0..self.rows).any(|i| !self.entry(i, j).is_zero()))
            .collect();
        let mut entries = Vec::with_capacity(self.rows * keep.len());
        for i in 0..self.rows {
            for &j in &keep {
                entries.push(self.entry(i, j).clone());
            }
        }
        PolyMatrix { ring: self.ring.clone(), rows: self.rows, cols: keep.len(), entries }
    }

    /// `copies` diagonal copies of this matrix: Id_copies tensor self.
    /// Row/column layout: copy alpha occupies rows alpha*rows..(alpha+1)*rows.
    pub fn block_diag(&self, copies: usize) -> PolyMatrix {
        let rows = self.rows * copies;
        let cols = self.cols * copies;
        let mut entries = vec![self.ring.zero(); rows * cols];
        for a in 0..copies {
            for i in 0..self.rows {
                for j in 0..self.cols {
                    let e = self.entry(i, j);
                    if !e.is_zero() {
                        entries[(a * self.rows + i) * cols + (a * self.cols + j)] = e.clone();
                    }
                }
            }
        }
        PolyMatrix { ring: self.ring.clone(), rows, cols, entries }
    }

    /// Block-diagonal tensor with the identity: maps between direct sums of
    /// `copies` module generators. Index layout: block alpha of size
    /// `block` holds generator slots alpha*block..(alpha+1)*block.
    pub fn tensor_identity(&self, block: usize) -> PolyMatrix {
        let rows = self.rows * block;
        let cols = self.cols * block;
        let mut entries = vec![self.ring.zero(); rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.entry(i, j);
                if e.is_zero() {
                    continue;
                }
                for b in 0..block {
                    entries[(i * block + b) * cols + (j * block + b)] = e.clone();
                }
            }
        }
        PolyMatrix { ring: self.ring.clone(), rows, cols, entries }
    }
}

#[derive(Debug)]
struct FpInner {
    ring: RingCtx,
    rank: usize,
    pres: PolyMatrix,
    colspan: Submodule,
    resolution: OnceLock<Result<FreeComplex>>,
    ann: OnceLock<Result<IdealHandle>>,
    exts: OnceLock<Result<Vec<FPModule>>>,
}

/// A finitely presented module: the cokernel of its presentation matrix.
/// Cheap to clone; derived data (resolution, annihilator, Ext modules) is
/// computed once and shared.
#[derive(Debug, Clone)]
pub struct FPModule(Arc<FpInner>);

impl FPModule {
    pub fn new(ring: &RingCtx, rank: usize, pres: PolyMatrix) -> Self {
        assert_eq!(pres.rows(), rank);
        assert_eq!(pres.ring(), ring);
        let colspan = Submodule::new(ring, rank, pres.columns());
        FPModule(Arc::new(FpInner {
            ring: ring.clone(),
            rank,
            pres,
            colspan,
            resolution: OnceLock::new(),
            ann: OnceLock::new(),
            exts: OnceLock::new(),
        }))
    }

    /// The free module S^rank.
    pub fn free(ring: &RingCtx, rank: usize) -> Self {
        FPModule::new(ring, rank, PolyMatrix::zero(ring, rank, 0))
    }

    /// The cyclic module S/I.
    pub fn quotient_ring(ring: &RingCtx, ideal: &IdealHandle) -> Self {
        let gens = ideal.gens().to_vec();
        let cols = gens.len();
        let pres = PolyMatrix::new(ring, 1, cols, gens);
        FPModule::new(ring, 1, pres)
    }

    /// The zero module, presented on no generators.
    pub fn zero(ring: &RingCtx) -> Self {
        FPModule::new(ring, 0, PolyMatrix::zero(ring, 0, 0))
    }

    pub fn ring(&self) -> &RingCtx {
        &self.0.ring
    }

    pub fn rank(&self) -> usize {
        self.0.rank
    }

    pub fn presentation(&self) -> &PolyMatrix {
        &self.0.pres
    }

    pub(crate) fn colspan(&self) -> &Submodule {
        &self.0.colspan
    }

    /// M/IM, presented by appending I * e_j relations.
    pub fn quotient_by_ideal(&self, ideal: &IdealHandle) -> FPModule {
        let ring = self.ring();
        let mut cols = self.0.pres.columns();
        for g in ideal.gens() {
            for j in 0..self.rank() {
                cols.push(VecPoly::unit(ring, self.rank(), j, g.clone()));
            }
        }
        FPModule::new(ring, self.rank(), PolyMatrix::from_columns(ring, self.rank(), cols))
    }

    /// True iff every generator lies in the relation span.
    pub fn is_zero_module(&self) -> Result<bool> {
        let ring = self.ring();
        for j in 0..self.rank() {
            let e = VecPoly::unit(ring, self.rank(), j, ring.one());
            if !self.0.colspan.contains(&e)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ann(M) as the intersection of the column-span quotients by each
    /// generator.
    pub fn annihilator(&self) -> Result<IdealHandle> {
        self.0
            .ann
            .get_or_init(|| self.compute_annihilator())
            .clone()
    }

    fn compute_annihilator(&self) -> Result<IdealHandle> {
        let ring = self.ring();
        let b = self.rank();
        if b == 0 {
            return IdealHandle::new(ring, vec![ring.one()]).canonicalize();
        }
        let cols = self.0.pres.trim_zero_columns().columns();
        if b == 1 {
            // (colspan : e_0) is the ideal generated by the entries.
            let gens: Vec<Poly> = cols.iter().map(|v| v.component(0).clone()).collect();
            return IdealHandle::new(ring, gens).canonicalize();
        }
        // (colspan : e_0), then iteratively intersect with (colspan : e_j)
        // by filtering: the coefficients lambda with sum lambda_i a_i e_j in
        // the span give the next generating set. Stays inside rank-b
        // modules, no ring extension.
        let mut current: Vec<Poly> = {
            let mut with_e = vec![VecPoly::unit(ring, b, 0, ring.one())];
            with_e.extend(cols.iter().cloned());
            let syz = guard_degree(|| kernel_of_columns(&with_e, ring, b))?;
            syz.iter().map(|v| v.component(0).clone()).collect()
        };
        for j in 1..b {
            current.retain(|a| !a.is_zero());
            if current.is_empty() {
                break;
            }
            let mut test_cols: Vec<VecPoly> = current
                .iter()
                .map(|a| VecPoly::unit(ring, b, j, a.clone()))
                .collect();
            let k = test_cols.len();
            test_cols.extend(cols.iter().cloned());
            let syz = guard_degree(|| kernel_of_columns(&test_cols, ring, b))?;
            let mut next = Vec::with_capacity(syz.len());
            for rel in &syz {
                let mut combo = ring.zero();
                for (lambda, a) in rel.components()[..k].iter().zip(&current) {
                    combo = combo.add(&lambda.mul(a));
                }
                if !combo.is_zero() {
                    next.push(combo);
                }
            }
            current = next;
        }
        IdealHandle::new(ring, current).canonicalize()
    }

    /// True iff p contains Ann(M), i.e. p lies in the support.
    pub fn support_member(&self, p: &IdealHandle) -> Result<bool> {
        let ann = self.annihilator()?;
        ann.is_subset_of(p)
    }

    /// Schreyer free resolution, cached. The cap is 2n+2; exceeding it
    /// means a kernel bug, not an input problem.
    pub fn free_resolution(&self, cap: usize) -> Result<FreeComplex> {
        let res = self
            .0
            .resolution
            .get_or_init(|| resolution::resolve(self, self.default_cap(), 0));
        match res {
            Ok(c) => {
                if c.length() > cap {
                    Err(Error::ResolutionCapExceeded(cap))
                } else {
                    Ok(c.clone())
                }
            }
            Err(e) => Err(e.clone()),
        }
    }

    pub fn default_cap(&self) -> usize {
        DEFAULT_CAP_FACTOR * self.ring().nvars() + 2
    }

    /// Resolution with a deterministic reshuffle of each level's basis;
    /// used to cross-check that derived invariants do not depend on the
    /// resolution.
    pub fn free_resolution_variant(&self, cap: usize, variant: u64) -> Result<FreeComplex> {
        resolution::resolve(self, cap, variant)
    }

    /// Ext^i(M, S) for i = 0..=n, computed by dualizing the resolution.
    /// Entries above n vanish and are verified to do so.
    pub fn ext_modules(&self) -> Result<Vec<FPModule>> {
        self.0.exts.get_or_init(|| homology::ext_modules(self)).clone()
    }
}
