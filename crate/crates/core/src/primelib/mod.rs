//! Krull dimension, height, minimal primes of ideals, and the univariate
//! factorization feeding prime decomposition over finite fields.

mod decompose;
mod factor;

pub use factor::univar_factor_gfp;
pub(crate) use factor::{factor_unipoly, UniPoly};

use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::groebner::IdealHandle;
use crate::polyring::{FieldElem, FieldSpec, Poly, RingCtx};

/// How a prime ideal was certified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Generated by a subset of the variables, verified combinatorially.
    MonomialCombinatorial,
    /// Component of a zero-dimensional ideal split along an irreducible
    /// eliminant in (possibly changed) coordinates.
    ZeroDimEliminant { seed: u64, attempt: u32 },
    /// Supplied by the caller and trusted.
    CallerAsserted,
    /// Principal with a generator certified irreducible.
    PrincipalIrreducible,
    /// Torus-saturated binomial ideal whose exponent lattice is saturated.
    BinomialLattice,
}

/// A prime ideal in canonical form: generators are the reduced monic
/// Groebner basis, so equal primes print identically.
#[derive(Debug, Clone)]
pub struct PrimeIdeal {
    ideal: IdealHandle,
    certificate: Certificate,
    key: String,
}

impl PrimeIdeal {
    pub fn certified(ideal: IdealHandle, certificate: Certificate) -> Result<Self> {
        let ideal = ideal.canonicalize()?;
        let key = ideal.canonical_key()?;
        Ok(PrimeIdeal { ideal, certificate, key })
    }

    /// The maximal ideal of a rational point (x_i - a_i).
    pub fn rational_point(ring: &RingCtx, coords: &[FieldElem]) -> Result<Self> {
        assert_eq!(coords.len(), ring.nvars());
        let gens: Vec<Poly> = coords
            .iter()
            .enumerate()
            .map(|(i, a)| ring.var(i).sub(&ring.constant(a.clone())))
            .collect();
        PrimeIdeal::certified(IdealHandle::new(ring, gens), Certificate::CallerAsserted)
    }

    pub fn ideal(&self) -> &IdealHandle {
        &self.ideal
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    /// Canonical key: the comma-joined reduced basis. Two primes are equal
    /// iff their keys agree.
    pub fn key(&self) -> &str {
        &self.key
    }

    pub fn gens_strings(&self) -> Result<Vec<String>> {
        self.ideal.canonical_gens()
    }

    pub fn is_zero(&self) -> bool {
        self.key.is_empty()
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        self.ideal.contains(f)
    }

    pub fn contains_ideal(&self, other: &IdealHandle) -> Result<bool> {
        other.is_subset_of(&self.ideal)
    }
}

impl PartialEq for PrimeIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for PrimeIdeal {}

/// dim S/I via leading terms: the largest variable subset Y such that no
/// leading monomial of the reduced basis is supported inside Y. Brute force
/// over all subsets; capped at 12 variables. Returns -1 for the unit ideal.
pub fn krull_dim(ideal: &IdealHandle) -> Result<i64> {
    Ok(krull_dim_with_set(ideal)?.0)
}

/// Dimension together with one maximal independent set realizing it
/// (lowest bitmask among the maximal ones, so the choice is reproducible).
pub fn krull_dim_with_set(ideal: &IdealHandle) -> Result<(i64, Vec<usize>)> {
    let n = ideal.ring().nvars();
    if n > 12 {
        return Err(Error::TooManyVariables(n));
    }
    let gb = ideal.groebner_basis()?;
    if gb.len() == 1 && gb[0].is_one() {
        return Ok((-1, Vec::new()));
    }
    let supports: Vec<u32> = gb
        .iter()
        .map(|g| {
            g.lm()
                .expect("nonzero")
                .support()
                .iter()
                .fold(0u32, |acc, &i| acc | (1 << i))
        })
        .collect();
    let mut best_mask = 0u32;
    let mut best = 0u32;
    for mask in 0u32..(1u32 << n) {
        let independent = supports.iter().all(|&s| s & !mask != 0);
        if independent && mask.count_ones() > best {
            best = mask.count_ones();
            best_mask = mask;
        }
    }
    let set: Vec<usize> = (0..n).filter(|i| best_mask & (1 << i) != 0).collect();
    Ok((best as i64, set))
}

/// ht(I) = n - dim S/I for proper ideals; infinity for the unit ideal.
pub fn height_abs(ideal: &IdealHandle) -> Result<ExtNat> {
    let n = ideal.ring().nvars() as i64;
    let d = krull_dim(ideal)?;
    if d < 0 {
        Ok(ExtNat::Inf)
    } else {
        Ok(ExtNat::Fin((n - d) as u64))
    }
}

/// Deduplicates, filters non-minimal entries, and sorts by canonical key.
pub(crate) fn canonical_prime_set(mut primes: Vec<PrimeIdeal>) -> Result<Vec<PrimeIdeal>> {
    primes.sort_by(|a, b| a.key().cmp(b.key()));
    primes.dedup_by(|a, b| a.key() == b.key());
    let mut keep = vec![true; primes.len()];
    for i in 0..primes.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..primes.len() {
            if i == j || !keep[j] {
                continue;
            }
            // drop primes[i] when primes[j] sits strictly below it
            if primes[j].ideal().is_subset_of(primes[i].ideal())? {
                keep[i] = false;
                break;
            }
        }
    }
    Ok(primes
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect())
}

/// The set of minimal primes over a proper ideal, canonicalized.
///
/// Monomial ideals decompose combinatorially over any field; everything
/// else requires a prime coefficient field and runs through factor
/// splitting, saturation splitting and zero-dimensional eliminant
/// decomposition.
pub fn min_primes(ideal: &IdealHandle) -> Result<Vec<PrimeIdeal>> {
    if ideal.is_unit()? {
        return Err(Error::UnitIdeal);
    }
    if ideal.is_monomial()? {
        return canonical_prime_set(decompose::monomial_min_primes(ideal)?);
    }
    // ideals of the shape (v - r) + (v-free) reduce to one fewer variable,
    // independent of the coefficient field
    if let Some(lifted) = decompose::try_linear_elimination(ideal)? {
        return canonical_prime_set(lifted);
    }
    match ideal.ring().field() {
        FieldSpec::Rationals => Err(Error::UnsupportedFieldForDecomposition),
        FieldSpec::PrimeField(_) => {
            let mut out = Vec::new();
            decompose::decompose(ideal.canonicalize()?, &mut out, 0)?;
            canonical_prime_set(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, MonomialOrder};

    fn ring(vars: &[&str]) -> RingCtx {
        RingCtx::new(
            FieldSpec::Rationals,
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::Grevlex,
        )
        .unwrap()
    }

    fn gf_ring(p: u64, vars: &[&str]) -> RingCtx {
        RingCtx::new(
            FieldSpec::prime_field(p).unwrap(),
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::Grevlex,
        )
        .unwrap()
    }

    fn ideal(r: &RingCtx, gens: &[&str]) -> IdealHandle {
        IdealHandle::new(r, gens.iter().map(|s| parse_poly(r, s).unwrap()).collect())
    }

    #[test]
    fn dimension_examples() {
        let r = ring(&["x", "y", "u", "v"]);
        assert_eq!(krull_dim(&IdealHandle::zero(&r)).unwrap(), 4);
        assert_eq!(krull_dim(&ideal(&r, &["1"])).unwrap(), -1);
        let planes = ideal(&r, &["x*u", "x*v", "y*u", "y*v"]);
        assert_eq!(krull_dim(&planes).unwrap(), 2);
        let (_, set) = krull_dim_with_set(&planes).unwrap();
        assert_eq!(set.len(), 2);
    }

    #[test]
    fn dimension_matches_bruteforce_oracle() {
        // oracle: check every variable subset directly on the generators of
        // a monomial ideal (for monomial ideals the generators are the
        // leading terms)
        let r = ring(&["x", "y", "z"]);
        let cases: Vec<Vec<&str>> = vec![
            vec!["x*y", "y*z"],
            vec!["x", "y", "z"],
            vec!["x^2", "x*z"],
            vec!["x*y*z"],
        ];
        for gens in cases {
            let i = ideal(&r, &gens);
            let supports: Vec<Vec<usize>> = i
                .gens()
                .iter()
                .map(|g| g.lm().unwrap().support())
                .collect();
            let mut best = 0usize;
            for mask in 0u32..8 {
                let y: Vec<usize> = (0..3).filter(|v| mask & (1 << v) != 0).collect();
                let ok = supports.iter().all(|s| s.iter().any(|v| !y.contains(v)));
                if ok {
                    best = best.max(y.len());
                }
            }
            assert_eq!(krull_dim(&i).unwrap(), best as i64, "gens {gens:?}");
        }
    }

    #[test]
    fn height_examples() {
        let r = ring(&["x", "y"]);
        assert_eq!(height_abs(&ideal(&r, &["x"])).unwrap(), ExtNat::Fin(1));
        assert_eq!(height_abs(&ideal(&r, &["1"])).unwrap(), ExtNat::Inf);
        let r4 = ring(&["x", "y", "u", "v"]);
        assert_eq!(
            height_abs(&ideal(&r4, &["x*u", "x*v", "y*u", "y*v"])).unwrap(),
            ExtNat::Fin(2)
        );
    }

    #[test]
    fn too_many_variables() {
        let names: Vec<String> = (0..13).map(|i| format!("x{i}")).collect();
        let r = RingCtx::new(FieldSpec::Rationals, names, MonomialOrder::Grevlex).unwrap();
        assert!(matches!(
            krull_dim(&IdealHandle::zero(&r)),
            Err(Error::TooManyVariables(13))
        ));
    }

    #[test]
    fn min_primes_two_planes() {
        let r = ring(&["x", "y", "u", "v"]);
        let planes = ideal(&r, &["x*u", "x*v", "y*u", "y*v"]);
        let primes = min_primes(&planes).unwrap();
        let keys: Vec<&str> = primes.iter().map(|p| p.key()).collect();
        assert_eq!(keys, vec!["u, v", "x, y"]);
        for p in &primes {
            assert_eq!(*p.certificate(), Certificate::MonomialCombinatorial);
            assert!(p.contains_ideal(&planes).unwrap());
        }
    }

    #[test]
    fn min_primes_power() {
        let r = ring(&["x", "y"]);
        let primes = min_primes(&ideal(&r, &["x^2"])).unwrap();
        assert_eq!(primes.len(), 1);
        assert_eq!(primes[0].key(), "x");
    }

    #[test]
    fn min_primes_of_zero_ideal() {
        let r = ring(&["x", "y"]);
        let primes = min_primes(&IdealHandle::zero(&r)).unwrap();
        assert_eq!(primes.len(), 1);
        assert!(primes[0].is_zero());
    }

    #[test]
    fn unit_ideal_rejected() {
        let r = ring(&["x"]);
        assert!(matches!(min_primes(&ideal(&r, &["1"])), Err(Error::UnitIdeal)));
    }

    #[test]
    fn rationals_reject_general_decomposition() {
        let r = ring(&["x", "y"]);
        assert!(matches!(
            min_primes(&ideal(&r, &["x^2 - y^3 - 1"])),
            Err(Error::UnsupportedFieldForDecomposition)
        ));
    }

    #[test]
    fn split_product_of_linear_forms_mod_5() {
        let r = gf_ring(5, &["x", "y"]);
        let target = ideal(&r, &["x*y*(x + y)"]);
        let primes = min_primes(&target).unwrap();
        let mut keys: Vec<&str> = primes.iter().map(|p| p.key()).collect();
        keys.sort();
        assert_eq!(keys, vec!["x", "x + y", "y"]);
        // radical-equality oracle: the intersection of the primes has the
        // same radical as the input
        let inter = primes
            .iter()
            .skip(1)
            .fold(primes[0].ideal().clone(), |acc, p| {
                acc.intersect(p.ideal()).unwrap()
            });
        for g in inter.gens() {
            assert!(crate::groebner::radical_member(g, &target).unwrap());
        }
        for g in target.gens() {
            assert!(crate::groebner::radical_member(g, &inter).unwrap());
        }
    }
}
