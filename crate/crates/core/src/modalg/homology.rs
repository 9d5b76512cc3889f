//! Homology of complexes as finitely presented subquotients.
//!
//! The middle spot of  prev --d_in--> mid --d_out--> next  may carry extra
//! relations (copies of a module presentation, for Hom- and tensor-type
//! complexes); homology generators are a kernel computed modulo the next
//! spot's relations, and homology relations are lifted images plus kernel
//! syzygies.

use crate::error::{Error, Result};
use crate::groebner::{guard_degree, kernel_of_columns, SpanContext, VecPoly};
use crate::modalg::{dualize_complex, FPModule, PolyMatrix};

/// Homology at the middle spot of two composable matrices with additional
/// relation columns `rel_mid` on the middle free module and `rel_next` on
/// the target.
pub fn homology_sub(
    d_in: &PolyMatrix,
    d_out: &PolyMatrix,
    rel_mid: &PolyMatrix,
    rel_next: &PolyMatrix,
) -> Result<FPModule> {
    let ring = d_out.ring().clone();
    let mid = d_out.cols();
    debug_assert_eq!(d_in.rows(), mid);
    debug_assert_eq!(rel_mid.rows(), mid);
    debug_assert_eq!(rel_next.rows(), d_out.rows());

    guard_degree(move || -> Result<FPModule> {
        // Generators: { v : d_out v lies in the span of rel_next }.
        let kernel_gens: Vec<VecPoly> = if d_out.rows() == 0 {
            (0..mid)
                .map(|j| VecPoly::unit(&ring, mid, j, ring.one()))
                .collect()
        } else {
            let mut cols = d_out.columns();
            let split = cols.len();
            cols.extend(rel_next.columns());
            kernel_of_columns(&cols, &ring, d_out.rows())
                .into_iter()
                .map(|v| v.restrict(0..split))
                .filter(|v| !v.is_zero())
                .collect()
        };

        if kernel_gens.is_empty() {
            return Ok(FPModule::zero(&ring));
        }

        // Relations: images of d_in and the middle relations, expressed in
        // the kernel generators, plus the syzygies among those generators;
        // one extended basis serves both questions.
        let span = SpanContext::new(&kernel_gens, &ring, mid);
        let mut rel_cols: Vec<VecPoly> = Vec::new();
        let s = kernel_gens.len();
        for src in [d_in, rel_mid] {
            for j in 0..src.cols() {
                let target = src.column(j);
                if target.is_zero() {
                    continue;
                }
                let coords = span.lift(&target, &ring).ok_or_else(|| {
                    Error::Internal("image column not inside the kernel".into())
                })?;
                rel_cols.push(VecPoly::from_components(coords));
            }
        }
        rel_cols.extend(span.syzygies());
        let pres = PolyMatrix::from_columns(&ring, s, rel_cols).trim_zero_columns();
        Ok(FPModule::new(&ring, s, pres))
    })?
}

/// Homology ker(d_out)/im(d_in) of free-module maps. Verifies that the
/// composition vanishes.
pub fn homology_at(d_in: &PolyMatrix, d_out: &PolyMatrix) -> Result<FPModule> {
    let ring = d_out.ring();
    if d_out.rows() > 0 && d_in.cols() > 0 && !d_out.mul(d_in).is_zero() {
        return Err(Error::NotAComplex);
    }
    let rel_mid = PolyMatrix::zero(ring, d_out.cols(), 0);
    let rel_next = PolyMatrix::zero(ring, d_out.rows(), 0);
    homology_sub(d_in, d_out, &rel_mid, &rel_next)
}

/// Ext^i(M, S) for i = 0..=n as cokernel presentations, by dualizing a free
/// resolution. Positions above n must vanish and are checked.
pub fn ext_modules(m: &FPModule) -> Result<Vec<FPModule>> {
    let res = m.free_resolution(m.default_cap())?.prune();
    ext_modules_with_resolution(m, &res)
}

/// Ext from an explicitly supplied resolution of the module; invariants
/// derived from the result must not depend on which resolution is used.
pub fn ext_modules_with_resolution(
    m: &FPModule,
    res: &crate::modalg::FreeComplex,
) -> Result<Vec<FPModule>> {
    let ring = m.ring().clone();
    let n = ring.nvars();
    let dual = dualize_complex(res);
    let len = res.length();

    let spot = |i: usize| -> Result<FPModule> {
        if i > len {
            return Ok(FPModule::zero(&ring));
        }
        // Dual spot i has rank b_i; incoming map is the transpose of d_i
        // (stored as dual map len-i+1), outgoing the transpose of d_{i+1}.
        let rank_i = res.rank(i);
        let d_in = if i >= 1 {
            dual.map(len - i + 1).unwrap().clone()
        } else {
            PolyMatrix::zero(&ring, rank_i, 0)
        };
        let d_out = if i < len {
            dual.map(len - i).unwrap().clone()
        } else {
            PolyMatrix::zero(&ring, 0, rank_i)
        };
        homology_at(&d_in, &d_out)
    };

    let mut out = Vec::with_capacity(n + 1);
    for i in 0..=n {
        out.push(spot(i)?);
    }
    for i in (n + 1)..=len {
        let h = spot(i)?;
        if !h.is_zero_module()? {
            return Err(Error::Internal(format!(
                "Ext^{i} does not vanish beyond the ring dimension"
            )));
        }
    }
    Ok(out)
}
