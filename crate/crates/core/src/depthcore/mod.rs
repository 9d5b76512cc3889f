//! Depth over quotient rings R = S/J through a finite prime set.
//!
//! For a finitely generated R-module M presented over the polynomial ring
//! S, the engine computes the finite set of primes obtained from the
//! minimal associated primes of the modules Ext^i_S(M, S) and evaluates
//! depths, local depths, finiteness dimensions and attached primes from it,
//! with two independent homological oracles available for cross-checking
//! every number.

mod oracles;

pub use oracles::{depth_oracle_ext, depth_oracle_koszul};

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::groebner::{IdealHandle, RingMap, Submodule, VecPoly};
use crate::modalg::FPModule;
use crate::polyring::{FieldElem, Poly, RingCtx};
use crate::primelib::{height_abs, krull_dim, min_primes, PrimeIdeal};

/// The ambient data R = S/J.
#[derive(Debug, Clone)]
pub struct Presentation {
    ring: RingCtx,
    quotient: IdealHandle,
}

impl Presentation {
    pub fn new(ring: RingCtx, quotient: IdealHandle) -> Result<Self> {
        if quotient.is_unit()? {
            return Err(Error::UnitIdeal);
        }
        Ok(Presentation { ring, quotient })
    }

    pub fn ring(&self) -> &RingCtx {
        &self.ring
    }

    /// J, the kernel of S -> R.
    pub fn quotient_ideal(&self) -> &IdealHandle {
        &self.quotient
    }
}

#[derive(Debug)]
struct RmInner {
    pres: Presentation,
    module: FPModule,
    lambda: OnceLock<Result<LambdaSet>>,
}

/// A module over R = S/J, represented by an S-presentation whose cokernel
/// is annihilated by J.
#[derive(Debug, Clone)]
pub struct RModule(Arc<RmInner>);

/// Validates that J kills the cokernel and wraps the pair.
pub fn make_rmodule(pres: Presentation, module: FPModule) -> Result<RModule> {
    if module.ring() != pres.ring() {
        return Err(Error::MixedRings);
    }
    let ring = pres.ring();
    let span = module.colspan();
    for g in pres.quotient_ideal().gens() {
        for j in 0..module.rank() {
            let v = VecPoly::unit(ring, module.rank(), j, g.clone());
            if !span.contains(&v)? {
                return Err(Error::NotAnnihilated(format!(
                    "generator {} does not kill module generator {}",
                    g.canonical_string(),
                    j
                )));
            }
        }
    }
    Ok(RModule(Arc::new(RmInner { pres, module, lambda: OnceLock::new() })))
}

impl RModule {
    /// The cyclic module S/I' over S/J, for J contained in I'.
    pub fn quot(pres: Presentation, defining: &IdealHandle) -> Result<RModule> {
        let module = FPModule::quotient_ring(pres.ring(), defining);
        make_rmodule(pres, module)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.0.pres
    }

    pub fn ring(&self) -> &RingCtx {
        self.0.pres.ring()
    }

    pub fn quotient_ideal(&self) -> &IdealHandle {
        self.0.pres.quotient_ideal()
    }

    pub fn module(&self) -> &FPModule {
        &self.0.module
    }
}

/// One member of the prime set, with the data the formulas consume: the
/// Ext indices witnessing membership, the height of the prime, and the
/// local depth of M there.
#[derive(Debug, Clone)]
pub struct LambdaEntry {
    pub prime: PrimeIdeal,
    pub ext_indices: Vec<usize>,
    pub height: u64,
    pub local_depth: u64,
}

/// The finite prime set controlling depth, canonically ordered.
#[derive(Debug, Clone)]
pub struct LambdaSet {
    pub entries: Vec<LambdaEntry>,
}

impl LambdaSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn keys(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.prime.key()).collect()
    }
}

/// The union over i of the minimal primes of Ann(Ext^i_S(M, S)), with
/// metadata. Cached on the module.
pub fn lambda_set(m: &RModule) -> Result<LambdaSet> {
    m.0.lambda.get_or_init(|| compute_lambda(m)).clone()
}

fn compute_lambda(m: &RModule) -> Result<LambdaSet> {
    let exts = m.module().ext_modules()?;
    let mut collected: Vec<(PrimeIdeal, Vec<usize>)> = Vec::new();
    for (i, ext) in exts.iter().enumerate() {
        if ext.is_zero_module()? {
            continue;
        }
        let ann = ext.annihilator()?;
        for p in min_primes(&ann)? {
            match collected.iter_mut().find(|(q, _)| q == &p) {
                Some((_, idx)) => idx.push(i),
                None => collected.push((p, vec![i])),
            }
        }
    }
    // Note: the set is a union of per-index minimal sets; comparable primes
    // from different indices both stay (the two-planes module keeps both
    // component primes and the maximal one).
    let mut entries = Vec::with_capacity(collected.len());
    for (prime, ext_indices) in collected {
        let height = match height_abs(prime.ideal())? {
            ExtNat::Fin(h) => h,
            ExtNat::Inf => return Err(Error::Internal("prime with infinite height".into())),
        };
        let local_depth = match depth_local(m, &prime)? {
            ExtNat::Fin(d) => d,
            ExtNat::Inf => {
                return Err(Error::Internal(
                    "prime set member outside the support".into(),
                ))
            }
        };
        entries.push(LambdaEntry { prime, ext_indices, height, local_depth });
    }
    entries.sort_by(|a, b| a.prime.key().cmp(b.prime.key()));
    Ok(LambdaSet { entries })
}

/// depth of M localized at p, through duality: the height of p minus the
/// top Ext index supported at p. Infinite when p misses the support.
pub fn depth_local(m: &RModule, p: &PrimeIdeal) -> Result<ExtNat> {
    let exts = m.module().ext_modules()?;
    let mut top: Option<usize> = None;
    for (i, ext) in exts.iter().enumerate() {
        if ext.is_zero_module()? {
            continue;
        }
        if ext.annihilator()?.is_subset_of(p.ideal())? {
            top = Some(i);
        }
    }
    let Some(top) = top else {
        return Ok(ExtNat::Inf);
    };
    let ExtNat::Fin(ht) = height_abs(p.ideal())? else {
        return Err(Error::Internal("prime has infinite height".into()));
    };
    if (top as u64) > ht {
        return Err(Error::Internal(
            "support index exceeds the height of the prime".into(),
        ));
    }
    Ok(ExtNat::Fin(ht - top as u64))
}

/// ht((I + p)/p) computed inside S/p as a dimension difference; infinite
/// when I + p is the unit ideal.
pub fn height_mod(m: &RModule, ideal: &IdealHandle, p: &PrimeIdeal) -> Result<ExtNat> {
    let dp = krull_dim(p.ideal())?;
    if dp < 0 {
        return Err(Error::Internal("prime is the unit ideal".into()));
    }
    let sum = p
        .ideal()
        .sum(ideal)
        .sum(m.quotient_ideal());
    let ds = krull_dim(&sum)?;
    if ds < 0 {
        return Ok(ExtNat::Inf);
    }
    Ok(ExtNat::Fin((dp - ds) as u64))
}

/// One evaluated term of the minimum formula.
#[derive(Debug, Clone)]
pub struct LambdaTerm {
    pub entry: LambdaEntry,
    pub height_term: ExtNat,
    pub total: ExtNat,
    /// p lies below the queried point (all generators vanish there).
    pub below_point: bool,
    /// some generator of I stays nonzero modulo p.
    pub outside_variety: bool,
}

/// Evaluates height and depth terms for every member of the prime set,
/// optionally recording position relative to a rational point.
pub fn lambda_terms(
    m: &RModule,
    ideal: &IdealHandle,
    point: Option<&[FieldElem]>,
) -> Result<Vec<LambdaTerm>> {
    let lambda = lambda_set(m)?;
    let mut out = Vec::with_capacity(lambda.entries.len());
    for entry in &lambda.entries {
        let height_term = height_mod(m, ideal, &entry.prime)?;
        let total = height_term + ExtNat::Fin(entry.local_depth);
        let below_point = match point {
            None => false,
            Some(pt) => entry
                .prime
                .ideal()
                .groebner_basis()?
                .iter()
                .all(|g| g.eval(pt).is_zero()),
        };
        let mut outside_variety = false;
        for g in ideal.gens() {
            if !entry.prime.contains(g)? {
                outside_variety = true;
                break;
            }
        }
        out.push(LambdaTerm {
            entry: entry.clone(),
            height_term,
            total,
            below_point,
            outside_variety,
        });
    }
    Ok(out)
}

/// A depth value together with the minimizing prime when one exists.
#[derive(Debug, Clone)]
pub struct DepthResult {
    pub value: ExtNat,
    pub witness: Option<DepthWitness>,
}

#[derive(Debug, Clone)]
pub struct DepthWitness {
    pub prime: PrimeIdeal,
    pub height_term: ExtNat,
    pub local_depth: ExtNat,
}

/// depth_R(I, M) as the minimum of height plus local depth over the prime
/// set; infinite exactly when IM = M.
pub fn depth_formula(m: &RModule, ideal: &IdealHandle) -> Result<DepthResult> {
    let terms = lambda_terms(m, ideal, None)?;
    let mut best: Option<&LambdaTerm> = None;
    for t in &terms {
        if best.map_or(true, |b| t.total < b.total) {
            best = Some(t);
        }
    }
    match best {
        Some(t) if !t.total.is_infinite() => Ok(DepthResult {
            value: t.total,
            witness: Some(DepthWitness {
                prime: t.entry.prime.clone(),
                height_term: t.height_term,
                local_depth: ExtNat::Fin(t.entry.local_depth),
            }),
        }),
        _ => Ok(DepthResult { value: ExtNat::Inf, witness: None }),
    }
}

fn point_on_variety(ideal: &IdealHandle, point: &[FieldElem]) -> Result<bool> {
    for g in ideal.gens() {
        if !g.eval(point).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The finiteness dimension of M at a rational point: the minimum of the
/// formula terms over primes below the point and off the variety of I.
pub fn fdim_at_point(
    m: &RModule,
    ideal: &IdealHandle,
    point: &[FieldElem],
) -> Result<ExtNat> {
    if !point_on_variety(ideal, point)? || !point_on_variety(m.quotient_ideal(), point)? {
        return Err(Error::PointNotOnVariety);
    }
    let terms = lambda_terms(m, ideal, Some(point))?;
    Ok(terms
        .iter()
        .filter(|t| t.below_point && t.outside_variety)
        .map(|t| t.total)
        .min()
        .unwrap_or(ExtNat::Inf))
}

/// Experimental global variant: the same minimum taken over every prime of
/// the set off the variety of I, with no point restriction.
pub fn fdim_global(m: &RModule, ideal: &IdealHandle) -> Result<ExtNat> {
    let terms = lambda_terms(m, ideal, None)?;
    Ok(terms
        .iter()
        .filter(|t| t.outside_variety)
        .map(|t| t.total)
        .min()
        .unwrap_or(ExtNat::Inf))
}

/// Minimal attached primes of the i-th local cohomology of M at a rational
/// point: minimal primes of Ann(Ext^(n-i)) lying below the point.
pub fn att_min_at_point(
    m: &RModule,
    point: &[FieldElem],
    i: usize,
) -> Result<Vec<PrimeIdeal>> {
    let n = m.ring().nvars();
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    if !point_on_variety(m.quotient_ideal(), point)? {
        return Err(Error::PointNotOnVariety);
    }
    let exts = m.module().ext_modules()?;
    let ext = &exts[n - i];
    if ext.is_zero_module()? {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for p in min_primes(&ext.annihilator()?)? {
        let below = p
            .ideal()
            .groebner_basis()?
            .iter()
            .all(|g| g.eval(point).is_zero());
        if below {
            out.push(p);
        }
    }
    Ok(out)
}

/// The one-prime inequality: depth_R(I, M) <= ht((I+p)/p) + depth M_p,
/// evaluated with the Koszul oracle on the left.
pub fn check_depth_inequality(
    m: &RModule,
    ideal: &IdealHandle,
    p: &PrimeIdeal,
) -> Result<bool> {
    if !m.module().support_member(p.ideal())? {
        return Err(Error::NotInSupport);
    }
    let lhs = depth_oracle_koszul(m, ideal)?.value;
    let rhs = height_mod(m, ideal, p)? + depth_local(m, p)?;
    Ok(lhs <= rhs)
}

/// Enlarges the ambient ring by one dummy variable t acting as `f`:
/// S2 = S[t], J2 = J + (t - f), presentation lifted with (t - f) relations
/// appended. Returns the enlarged module and the witness map S2 -> S.
pub fn dummy_variable_change(m: &RModule, f: &Poly) -> Result<(RModule, RingMap)> {
    let ring1 = m.ring().clone();
    let n = ring1.nvars();
    let mut vars = ring1.vars().to_vec();
    vars.push(ring1.fresh_var_name("t"));
    let ring2 = RingCtx::new(ring1.field(), vars, ring1.order())?;
    let lift: Vec<usize> = (0..n).collect();

    let mut j2_gens: Vec<Poly> = m
        .quotient_ideal()
        .gens()
        .iter()
        .map(|g| g.permute_into(&ring2, &lift))
        .collect();
    let t_minus_f = ring2.var(n).sub(&f.permute_into(&ring2, &lift));
    j2_gens.push(t_minus_f.clone());
    let j2 = IdealHandle::new(&ring2, j2_gens);

    let b = m.module().rank();
    let pres1 = m.module().presentation();
    let mut cols = Vec::new();
    for j in 0..pres1.cols() {
        let col: Vec<Poly> = (0..b)
            .map(|i| pres1.entry(i, j).permute_into(&ring2, &lift))
            .collect();
        cols.push(VecPoly::from_components(col));
    }
    for i in 0..b {
        cols.push(VecPoly::unit(&ring2, b, i, t_minus_f.clone()));
    }
    let pres2 = crate::modalg::PolyMatrix::from_columns(&ring2, b, cols);
    let module2 = FPModule::new(&ring2, b, pres2);
    let m2 = make_rmodule(Presentation::new(ring2.clone(), j2)?, module2)?;

    let mut images: Vec<Poly> = (0..n).map(|i| ring1.var(i)).collect();
    images.push(f.clone());
    let map = RingMap::new(ring2, ring1, images)?;
    Ok((m2, map))
}

/// Checks that two presentations of the same module over different ambient
/// rings produce the same prime set, transported through `map` (a ring map
/// from the second ambient ring onto the first).
///
/// The map must witness the correspondence: it sends the second quotient
/// ideal into the first and matches the presentations up to column span
/// modulo the quotient. Returns true when the transported prime sets agree.
pub fn lambda_independence(m1: &RModule, m2: &RModule, map: &RingMap) -> Result<bool> {
    if map.target() != m1.ring() || map.source() != m2.ring() {
        return Err(Error::NotAnIsomorphismWitness(
            "map endpoints do not match the ambient rings".into(),
        ));
    }
    for g in m2.quotient_ideal().gens() {
        let img = map.apply(g)?;
        if !m1.quotient_ideal().contains(&img)? {
            return Err(Error::NotAnIsomorphismWitness(format!(
                "image of {} is not in the first quotient ideal",
                g.canonical_string()
            )));
        }
    }
    let b = m1.module().rank();
    if m2.module().rank() != b {
        return Err(Error::NotAnIsomorphismWitness(
            "presentations have different generator counts".into(),
        ));
    }
    // presentation columns must span the same submodule modulo J1
    let ring1 = m1.ring();
    let j1_cols = |cols: &mut Vec<VecPoly>| {
        for g in m1.quotient_ideal().gens() {
            for j in 0..b {
                cols.push(VecPoly::unit(ring1, b, j, g.clone()));
            }
        }
    };
    let mut cols1 = m1.module().presentation().columns();
    j1_cols(&mut cols1);
    let mut cols2 = Vec::new();
    for col in m2.module().presentation().columns() {
        let mapped: Result<Vec<Poly>> =
            col.components().iter().map(|e| map.apply(e)).collect();
        cols2.push(VecPoly::from_components(mapped?));
    }
    j1_cols(&mut cols2);
    let s1 = Submodule::new(ring1, b, cols1);
    let s2 = Submodule::new(ring1, b, cols2);
    if !s1.equals(&s2)? {
        return Err(Error::NotAnIsomorphismWitness(
            "presentation columns do not correspond".into(),
        ));
    }

    let l1 = lambda_set(m1)?;
    let l2 = lambda_set(m2)?;
    let mut keys1: Vec<String> = l1.entries.iter().map(|e| e.prime.key().to_string()).collect();
    let mut keys2 = Vec::with_capacity(l2.entries.len());
    for e in &l2.entries {
        let moved = map.apply_ideal(e.prime.ideal())?.sum(m1.quotient_ideal());
        keys2.push(moved.canonical_key()?);
    }
    keys1.sort();
    keys2.sort();
    keys2.dedup();
    Ok(keys1 == keys2)
}
