//! Minimal prime decomposition.
//!
//! Monomial ideals split combinatorially into variable-generated primes.
//! Over a prime field, general ideals are reduced by a toolbox of variety
//! splittings -- factoring Groebner basis elements where a complete
//! factorization is available (univariate, two-variable homogeneous,
//! binomial, linear in a variable), saturating by variables and by
//! independent-set leading coefficients -- until the pieces are either
//! zero-dimensional (decomposed completely along eliminant factorizations,
//! with random linear coordinate changes for general position) or certified
//! prime directly.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groebner::{eliminate, saturate, IdealHandle, RingMap};
use crate::polyring::{FieldElem, FieldSpec, Monomial, Poly, RingCtx};
use crate::primelib::{
    factor_unipoly, krull_dim_with_set, Certificate, PrimeIdeal, UniPoly,
};

const MAX_DEPTH: usize = 64;
const MAX_VDIM: usize = 1 << 20;
const GENERAL_POSITION_ATTEMPTS: u32 = 8;

/// Minimal primes of a monomial ideal: minimal hitting sets of the
/// generator supports, turned into variable-generated primes.
pub(crate) fn monomial_min_primes(ideal: &IdealHandle) -> Result<Vec<PrimeIdeal>> {
    let ring = ideal.ring();
    let gb = ideal.groebner_basis()?;
    let supports: Vec<Vec<usize>> = gb
        .iter()
        .map(|g| g.lm().expect("nonzero").support())
        .collect();

    fn rec(
        supports: &[Vec<usize>],
        idx: usize,
        cur: &mut BTreeSet<usize>,
        out: &mut Vec<BTreeSet<usize>>,
    ) {
        if idx == supports.len() {
            out.push(cur.clone());
            return;
        }
        if supports[idx].iter().any(|v| cur.contains(v)) {
            rec(supports, idx + 1, cur, out);
            return;
        }
        for &v in &supports[idx] {
            cur.insert(v);
            rec(supports, idx + 1, cur, out);
            cur.remove(&v);
        }
    }

    let mut sets = Vec::new();
    rec(&supports, 0, &mut BTreeSet::new(), &mut sets);
    sets.sort();
    sets.dedup();
    // keep only inclusion-minimal hitting sets
    let minimal: Vec<&BTreeSet<usize>> = sets
        .iter()
        .filter(|s| !sets.iter().any(|t| *t != **s && t.is_subset(s)))
        .collect();
    minimal
        .into_iter()
        .map(|s| {
            let gens: Vec<Poly> = s.iter().map(|&i| ring.var(i)).collect();
            PrimeIdeal::certified(
                IdealHandle::new(ring, gens),
                Certificate::MonomialCombinatorial,
            )
        })
        .collect()
}

/// The outcome of trying to factor one basis element.
enum Split {
    /// Proper factors whose zero sets cover the element's zero set.
    Factors(Vec<Poly>),
    /// Certified irreducible by a complete factorization rule.
    Irreducible,
    /// No rule applies.
    Unknown,
}

fn prime_char(ring: &RingCtx) -> u64 {
    match ring.field() {
        FieldSpec::PrimeField(p) => p as u64,
        FieldSpec::Rationals => unreachable!("general decomposition runs over prime fields"),
    }
}

fn unipoly_of(g: &Poly, var: usize) -> UniPoly {
    let p = prime_char(g.ring());
    let mut c = vec![0u64; g.degree_in(var) as usize + 1];
    for (m, coef) in g.terms() {
        c[m.exponent(var) as usize] = coef.residue().unwrap();
    }
    UniPoly::new(p, c)
}

fn poly_of_unipoly(ring: &RingCtx, var: usize, u: &UniPoly) -> Poly {
    let n = ring.nvars();
    let spec = ring.field();
    ring.from_terms(
        u.c.iter()
            .enumerate()
            .filter(|(_, &co)| co != 0)
            .map(|(i, &co)| {
                let mut e = vec![0u32; n];
                e[var] = i as u32;
                (Monomial::from_exponents(e), spec.from_int(co as i64))
            })
            .collect(),
    )
}

/// g = sum_k c_k x^k y^(D-k), homogeneous in two active variables: factor
/// the dehomogenization sum c_k T^k.
fn split_two_var_homogeneous(g: &Poly, vx: usize, vy: usize) -> Option<Split> {
    let deg = g.total_degree()?;
    if g.terms().iter().any(|(m, _)| m.total_degree() != deg) {
        return None;
    }
    let p = prime_char(g.ring());
    let mut c = vec![0u64; deg as usize + 1];
    for (m, coef) in g.terms() {
        c[m.exponent(vx) as usize] = coef.residue().unwrap();
    }
    let h = UniPoly::new(p, c);
    let factors = factor_unipoly(&h);
    if factors.len() == 1 && factors[0].1 == 1 {
        return Some(Split::Irreducible);
    }
    let ring = g.ring();
    let out: Vec<Poly> = factors
        .iter()
        .map(|(t, _)| {
            let delta = t.deg() as u32;
            let n = ring.nvars();
            ring.from_terms(
                t.c.iter()
                    .enumerate()
                    .filter(|(_, &co)| co != 0)
                    .map(|(k, &co)| {
                        let mut e = vec![0u32; n];
                        e[vx] = k as u32;
                        e[vy] = delta - k as u32;
                        (Monomial::from_exponents(e), ring.field().from_int(co as i64))
                    })
                    .collect(),
            )
        })
        .collect();
    Some(Split::Factors(out))
}

/// Binomial x^a - c x^b with coprime monomials: pull out the exponent gcd d
/// and factor T^d - c.
fn split_binomial(g: &Poly) -> Split {
    let (m1, c1) = &g.terms()[0];
    let (m2, c2) = &g.terms()[1];
    let c = c2.div(c1).neg();
    let n = g.ring().nvars();
    let mut d = 0u32;
    for i in 0..n {
        d = gcd_u32(d, m1.exponent(i));
        d = gcd_u32(d, m2.exponent(i));
    }
    debug_assert!(d >= 1);
    let p = prime_char(g.ring());
    let cres = c.residue().unwrap();
    if d == 1 {
        // rank-one saturated exponent lattice: irreducible
        return Split::Irreducible;
    }
    // T^d - c
    let mut coeffs = vec![0u64; d as usize + 1];
    coeffs[0] = (p - cres % p) % p;
    coeffs[d as usize] = 1;
    let td = UniPoly::new(p, coeffs);
    let factors = factor_unipoly(&td);
    if factors.len() == 1 && factors[0].1 == 1 {
        return Split::Irreducible;
    }
    let ring = g.ring();
    let a_red: Vec<u32> = (0..n).map(|i| m1.exponent(i) / d).collect();
    let b_red: Vec<u32> = (0..n).map(|i| m2.exponent(i) / d).collect();
    let out: Vec<Poly> = factors
        .iter()
        .map(|(t, _)| {
            let delta = t.deg() as u32;
            ring.from_terms(
                t.c.iter()
                    .enumerate()
                    .filter(|(_, &co)| co != 0)
                    .map(|(k, &co)| {
                        let k = k as u32;
                        let e: Vec<u32> = (0..n)
                            .map(|i| k * a_red[i] + (delta - k) * b_red[i])
                            .collect();
                        (Monomial::from_exponents(e), ring.field().from_int(co as i64))
                    })
                    .collect(),
            )
        })
        .collect();
    Split::Factors(out)
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

/// g linear in variable `var`: g = A * var + B. Irreducible when A and B
/// have no common factor (Gauss); otherwise split off the gcd, recovered
/// from the principal intersection (A) cap (B).
fn split_linear_in_var(g: &Poly, var: usize) -> Result<Split> {
    let ring = g.ring();
    let mut a_terms = Vec::new();
    let mut b_terms = Vec::new();
    for (m, c) in g.terms() {
        if m.exponent(var) == 1 {
            let mut e = m.exponents().to_vec();
            e[var] = 0;
            a_terms.push((Monomial::from_exponents(e), c.clone()));
        } else {
            b_terms.push((m.clone(), c.clone()));
        }
    }
    let a = ring.from_terms(a_terms);
    let b = ring.from_terms(b_terms);
    debug_assert!(!a.is_zero());
    if b.is_zero() || a.is_constant() {
        return Ok(Split::Irreducible);
    }
    let pair = IdealHandle::new(ring, vec![a.clone(), b.clone()]);
    let (dim, _) = krull_dim_with_set(&pair)?;
    if dim < ring.nvars() as i64 - 1 {
        return Ok(Split::Irreducible);
    }
    // common factor = A*B / lcm(A,B)
    let inter = IdealHandle::new(ring, vec![a.clone()])
        .intersect(&IdealHandle::new(ring, vec![b.clone()]))?;
    let lcm_gens = inter.groebner_basis()?;
    if lcm_gens.len() != 1 {
        return Ok(Split::Unknown);
    }
    let prod = a.mul(&b);
    let Some(gcd) = prod.exact_div(&lcm_gens[0]) else {
        return Ok(Split::Unknown);
    };
    let gcd = gcd.monic();
    if gcd.is_constant() {
        return Ok(Split::Irreducible);
    }
    let Some(rest) = g.exact_div(&gcd) else {
        return Ok(Split::Unknown);
    };
    Ok(Split::Factors(vec![gcd, rest.monic()]))
}

fn split_element(g: &Poly) -> Result<Split> {
    let ring = g.ring();
    if g.num_terms() == 1 {
        let vars: Vec<Poly> = g.lm().unwrap().support().iter().map(|&i| ring.var(i)).collect();
        return Ok(Split::Factors(vars));
    }
    let content = g.monomial_content();
    if !content.is_one() {
        let mut factors: Vec<Poly> = content.support().iter().map(|&i| ring.var(i)).collect();
        factors.push(g.div_monomial(&content));
        return Ok(Split::Factors(factors));
    }
    let active = g.support_vars();
    if active.len() == 1 {
        let u = unipoly_of(g, active[0]);
        let factors = factor_unipoly(&u);
        if factors.len() == 1 && factors[0].1 == 1 {
            return Ok(Split::Irreducible);
        }
        return Ok(Split::Factors(
            factors
                .iter()
                .map(|(t, _)| poly_of_unipoly(ring, active[0], t))
                .collect(),
        ));
    }
    if active.len() == 2 {
        if let Some(split) = split_two_var_homogeneous(g, active[0], active[1]) {
            return Ok(split);
        }
    }
    if g.num_terms() == 2 {
        return Ok(split_binomial(g));
    }
    for &v in &active {
        if g.degree_in(v) == 1 {
            return split_linear_in_var(g, v);
        }
    }
    Ok(Split::Unknown)
}

/// Looks for a variable v such that the ideal is (v - r) + (v-free part):
/// under an elimination order with v first, the reduced basis then has
/// exactly one element meeting v, with leading monomial v itself. In that
/// case the minimal primes are those of the v-free contraction with v - r
/// appended, over any coefficient field.
pub(crate) fn try_linear_elimination(
    ideal: &IdealHandle,
) -> Result<Option<Vec<PrimeIdeal>>> {
    let ring = ideal.ring();
    let n = ring.nvars();
    if n <= 1 {
        return Ok(None);
    }
    for v in 0..n {
        if ideal.gens().iter().all(|g| g.degree_in(v) == 0) {
            continue;
        }
        let others: Vec<usize> = (0..n).filter(|&i| i != v).collect();
        let mut names = vec![ring.vars()[v].clone()];
        names.extend(others.iter().map(|&i| ring.vars()[i].clone()));
        let ering = ring.subring(names, crate::polyring::MonomialOrder::Elim(1))?;
        let mut var_map = vec![0usize; n];
        var_map[v] = 0;
        for (slot, &o) in others.iter().enumerate() {
            var_map[o] = slot + 1;
        }
        let moved = IdealHandle::new(
            &ering,
            ideal.gens().iter().map(|g| g.permute_into(&ering, &var_map)).collect(),
        );
        let gb = moved.groebner_basis()?;
        let mut pivot: Option<&Poly> = None;
        let mut shape_ok = true;
        for g in gb {
            if g.degree_in(0) == 0 {
                continue;
            }
            let lm = g.lm().expect("nonzero");
            let lm_is_v = lm.exponent(0) == 1 && lm.total_degree() == 1;
            if pivot.is_some() || !lm_is_v {
                shape_ok = false;
                break;
            }
            pivot = Some(g);
        }
        let Some(pivot) = pivot else { continue };
        if !shape_ok {
            continue;
        }
        // contraction to the other variables
        let sub_ring = ring.subring(
            others.iter().map(|&i| ring.vars()[i].clone()).collect(),
            crate::polyring::MonomialOrder::Grevlex,
        )?;
        let sub_gens: Vec<Poly> = gb
            .iter()
            .filter(|g| g.degree_in(0) == 0)
            .map(|g| {
                let terms = g
                    .terms()
                    .iter()
                    .map(|(m, c)| {
                        (
                            Monomial::from_exponents(m.exponents()[1..].to_vec()),
                            c.clone(),
                        )
                    })
                    .collect();
                sub_ring.from_terms(terms)
            })
            .collect();
        let sub_ideal = IdealHandle::new(&sub_ring, sub_gens);
        // another pivot variable may leave a tractable contraction, so an
        // unsupported one is not fatal
        let sub_primes = match crate::primelib::min_primes(&sub_ideal) {
            Ok(ps) => ps,
            Err(Error::UnsupportedFieldForDecomposition | Error::DecompositionStuck(_)) => {
                continue
            }
            Err(e) => return Err(e),
        };
        // back to the ambient ring
        let mut back_map = vec![0usize; n];
        back_map[0] = v;
        for (slot, &o) in others.iter().enumerate() {
            back_map[slot + 1] = o;
        }
        let pivot_orig = pivot.permute_into(ring, &back_map);
        let sub_back: Vec<usize> = others.clone();
        let mut out = Vec::new();
        for p in sub_primes {
            let mut gens: Vec<Poly> = p
                .ideal()
                .gens()
                .iter()
                .map(|g| g.permute_into(ring, &sub_back))
                .collect();
            gens.push(pivot_orig.clone());
            out.push(PrimeIdeal::certified(
                IdealHandle::new(ring, gens),
                p.certificate().clone(),
            )?);
        }
        return Ok(Some(out));
    }
    Ok(None)
}

/// Substitutes zero for the given variables.
fn kill_variables(g: &Poly, vars: &[usize]) -> Poly {
    let terms = g
        .terms()
        .iter()
        .filter(|(m, _)| vars.iter().all(|&v| m.exponent(v) == 0))
        .cloned()
        .collect();
    g.ring().from_terms(terms)
}

fn fnv(s: &str) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// The monic generator of I intersect k[x_var], mapped back into the
/// ambient ring. Zero-dimensional ideals always have one.
fn eliminant(ideal: &IdealHandle, var: usize) -> Result<Poly> {
    let small = eliminate(ideal, &[var])?;
    let gb = small.groebner_basis()?;
    if gb.len() != 1 {
        return Err(Error::Internal(format!(
            "expected a principal eliminant, found {} generators",
            gb.len()
        )));
    }
    Ok(gb[0].permute_into(ideal.ring(), &[var]))
}

/// Adds the squarefree parts of every coordinate eliminant; the result is
/// the radical (it contains a squarefree univariate polynomial in each
/// variable).
fn seidenberg_radical(ideal: &IdealHandle) -> Result<IdealHandle> {
    let ring = ideal.ring();
    let mut extra = Vec::new();
    for var in 0..ring.nvars() {
        let g = eliminant(ideal, var)?;
        let u = unipoly_of(&g, var);
        let du = u.derivative();
        if du.is_zero() {
            // pure p-th power content; rebuild from the factorization
            let sq: UniPoly = factor_unipoly(&u)
                .iter()
                .fold(UniPoly::constant(u.p, 1), |acc, (f, _)| acc.mul(f));
            extra.push(poly_of_unipoly(ring, var, &sq));
            continue;
        }
        let gcd = u.gcd(&du);
        if gcd.deg() > 0 {
            let sq = u.div_exact(&gcd).monic();
            extra.push(poly_of_unipoly(ring, var, &sq));
        }
    }
    if extra.is_empty() {
        ideal.canonicalize()
    } else {
        ideal.with_extra_gens(&extra).canonicalize()
    }
}

/// Number of standard monomials of a zero-dimensional ideal.
fn vector_space_dim(ideal: &IdealHandle) -> Result<usize> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let gb = ideal.groebner_basis()?;
    let lms: Vec<&Monomial> = gb.iter().map(|g| g.lm().expect("nonzero")).collect();
    let mut bounds = vec![0u32; n];
    for lm in &lms {
        let sup = lm.support();
        if sup.len() == 1 {
            let v = sup[0];
            let e = lm.exponent(v);
            if bounds[v] == 0 || e < bounds[v] {
                bounds[v] = e;
            }
        }
    }
    if bounds.iter().any(|&b| b == 0) {
        return Err(Error::Internal("ideal is not zero-dimensional".into()));
    }
    let total: usize = bounds.iter().map(|&b| b as usize).product();
    if total > MAX_VDIM {
        return Err(Error::DecompositionStuck(format!(
            "staircase too large ({total} boxes)"
        )));
    }
    let mut count = 0usize;
    let mut e = vec![0u32; n];
    'outer: loop {
        let m = Monomial::from_exponents(e.clone());
        if !lms.iter().any(|lm| lm.divides(&m)) {
            count += 1;
        }
        for i in 0..n {
            e[i] += 1;
            if e[i] < bounds[i] {
                continue 'outer;
            }
            e[i] = 0;
        }
        break;
    }
    Ok(count)
}

/// Distinct irreducible factors of a univariate eliminant, as ambient
/// polynomials.
fn eliminant_factors(ideal: &IdealHandle, var: usize) -> Result<(Poly, Vec<Poly>, bool)> {
    let g = eliminant(ideal, var)?;
    let u = unipoly_of(&g, var);
    let factors = factor_unipoly(&u);
    let squarefree_irreducible = factors.len() == 1 && factors[0].1 == 1;
    let polys = factors
        .iter()
        .map(|(t, _)| poly_of_unipoly(ideal.ring(), var, t))
        .collect();
    Ok((g, polys, squarefree_irreducible))
}

/// Complete decomposition of a zero-dimensional ideal.
fn zero_dim(ideal: IdealHandle, out: &mut Vec<PrimeIdeal>, depth: usize) -> Result<()> {
    if depth > MAX_DEPTH {
        return Err(Error::DecompositionStuck("recursion too deep".into()));
    }
    if ideal.is_unit()? {
        return Ok(());
    }
    let rad = seidenberg_radical(&ideal)?;
    if rad.is_unit()? {
        return Ok(());
    }
    let ring = rad.ring().clone();
    let n = ring.nvars();

    // Split along any coordinate whose eliminant factors.
    let mut eliminants = Vec::with_capacity(n);
    for var in 0..n {
        let (g, factors, irred) = eliminant_factors(&rad, var)?;
        if !irred {
            for f in &factors {
                zero_dim(rad.with_extra_gens(&[f.clone()]).canonicalize()?, out, depth + 1)?;
            }
            return Ok(());
        }
        eliminants.push(g);
    }

    // Every coordinate eliminant is irreducible. If one of them already has
    // degree vdim, the quotient is a field.
    let vdim = vector_space_dim(&rad)?;
    for g in &eliminants {
        if g.total_degree().unwrap_or(0) as usize == vdim {
            out.push(PrimeIdeal::certified(
                rad,
                Certificate::ZeroDimEliminant { seed: 0, attempt: 0 },
            )?);
            return Ok(());
        }
    }

    // General position: replace the last coordinate by a random linear form
    // until it separates the points.
    if n == 1 {
        // a single irreducible eliminant in one variable is the whole ideal
        return Err(Error::Internal("univariate separation must have degree vdim".into()));
    }
    let p = prime_char(&ring);
    let base_seed = fnv(&rad.canonical_key()?);
    let last = n - 1;
    for attempt in 1..=GENERAL_POSITION_ATTEMPTS {
        let seed = base_seed.wrapping_add(attempt as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lambda: Vec<u64> = (0..last).map(|_| rng.gen_range(0..p)).collect();
        let fwd = coordinate_change(&ring, last, &lambda, false);
        let back = coordinate_change(&ring, last, &lambda, true);
        let moved = fwd.apply_ideal(&rad)?;
        let moved_rad = seidenberg_radical(&moved.canonicalize()?)?;
        let (g, factors, irred) = eliminant_factors(&moved_rad, last)?;
        if !irred {
            let mut local = Vec::new();
            for f in &factors {
                zero_dim(
                    moved_rad.with_extra_gens(&[f.clone()]).canonicalize()?,
                    &mut local,
                    depth + 1,
                )?;
            }
            for prime in local {
                let mapped = back.apply_ideal(prime.ideal())?;
                out.push(PrimeIdeal::certified(mapped, prime.certificate().clone())?);
            }
            return Ok(());
        }
        if g.total_degree().unwrap_or(0) as usize == vector_space_dim(&moved_rad)? {
            let mapped = back.apply_ideal(&moved_rad)?;
            out.push(PrimeIdeal::certified(
                mapped,
                Certificate::ZeroDimEliminant { seed, attempt },
            )?);
            return Ok(());
        }
    }
    Err(Error::DecompositionStuck(
        "no separating linear form found".into(),
    ))
}

/// The substitution x_last -> x_last -+ sum lambda_j x_j as a ring map.
fn coordinate_change(ring: &RingCtx, last: usize, lambda: &[u64], inverse: bool) -> RingMap {
    let spec = ring.field();
    let images: Vec<Poly> = (0..ring.nvars())
        .map(|i| {
            if i != last {
                return ring.var(i);
            }
            let mut acc = ring.var(last);
            for (j, &l) in lambda.iter().enumerate() {
                let c = spec.from_int(l as i64);
                let term = ring.var(j).scale(&c);
                acc = if inverse { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        })
        .collect();
    RingMap::new(ring.clone(), ring.clone(), images).expect("same-ring substitution")
}

/// Product of the distinct nonconstant independent-set leading
/// coefficients of a Groebner basis computed with the dependent variables
/// eliminated first.
fn gtz_leading_coefficient(ideal: &IdealHandle, indep: &[usize]) -> Result<Option<Poly>> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let dep: Vec<usize> = (0..n).filter(|i| !indep.contains(i)).collect();
    if dep.is_empty() || dep.len() == n {
        return Ok(None);
    }
    let mut names: Vec<String> = dep.iter().map(|&i| ring.vars()[i].clone()).collect();
    names.extend(indep.iter().map(|&i| ring.vars()[i].clone()));
    let block_ring = ring.subring(names, crate::polyring::MonomialOrder::Elim(dep.len()))?;
    let mut var_map = vec![0usize; n];
    for (slot, &orig) in dep.iter().enumerate() {
        var_map[orig] = slot;
    }
    for (slot, &orig) in indep.iter().enumerate() {
        var_map[orig] = dep.len() + slot;
    }
    let moved = IdealHandle::new(
        &block_ring,
        ideal.gens().iter().map(|g| g.permute_into(&block_ring, &var_map)).collect(),
    );
    // inverse permutation
    let mut back_map = vec![0usize; n];
    for (orig, &slot) in var_map.iter().enumerate() {
        back_map[slot] = orig;
    }

    let mut lead_coeffs: Vec<Poly> = Vec::new();
    for g in moved.groebner_basis()? {
        let lt_u = {
            let lm = g.lm().expect("nonzero");
            lm.exponents()[..dep.len()].to_vec()
        };
        let coeff_terms: Vec<(Monomial, FieldElem)> = g
            .terms()
            .iter()
            .filter(|(m, _)| m.exponents()[..dep.len()] == lt_u[..])
            .map(|(m, c)| {
                let mut e = vec![0u32; n];
                for (slot, &x) in m.exponents().iter().enumerate() {
                    e[back_map[slot]] = x;
                }
                for &d in &dep {
                    e[d] = 0;
                }
                (Monomial::from_exponents(e), c.clone())
            })
            .collect();
        let h = ring.from_terms(coeff_terms).monic();
        if !h.is_constant() && !lead_coeffs.contains(&h) {
            lead_coeffs.push(h);
        }
    }
    if lead_coeffs.is_empty() {
        return Ok(None);
    }
    let mut prod = ring.one();
    for h in &lead_coeffs {
        prod = prod.mul(h);
    }
    Ok(Some(prod))
}

/// Smith-style elementary divisors of an integer matrix (rows are lattice
/// generators). Small and exact; enough for a handful of variables.
fn elementary_divisors(mut m: Vec<Vec<i64>>) -> Vec<i64> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut divisors = Vec::new();
    let (mut r0, mut c0) = (0usize, 0usize);
    while r0 < rows && c0 < cols {
        // find the nonzero entry of least magnitude in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for i in r0..rows {
            for j in c0..cols {
                if m[i][j] != 0
                    && pivot.map_or(true, |(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(r0, pi);
        for row in m.iter_mut() {
            row.swap(c0, pj);
        }
        let mut clean = true;
        for i in (r0 + 1)..rows {
            let q = m[i][c0].div_euclid(m[r0][c0]);
            if q != 0 {
                for j in c0..cols {
                    m[i][j] -= q * m[r0][j];
                }
            }
            if m[i][c0] != 0 {
                clean = false;
            }
        }
        for j in (c0 + 1)..cols {
            let q = m[r0][j].div_euclid(m[r0][c0]);
            if q != 0 {
                for i in r0..rows {
                    m[i][j] -= q * m[i][c0];
                }
            }
            if m[r0][j] != 0 {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        divisors.push(m[r0][c0].abs());
        r0 += 1;
        c0 += 1;
    }
    divisors
}

/// Prime certification for torus-saturated binomial ideals: the exponent
/// lattice of the reduced basis must be saturated.
fn lattice_certify(ideal: &IdealHandle) -> Result<Option<PrimeIdeal>> {
    let gb = ideal.groebner_basis()?;
    let n = ideal.ring().nvars();
    let mut rows = Vec::new();
    for g in gb {
        if g.num_terms() != 2 {
            return Ok(None);
        }
        let a = g.terms()[0].0.exponents();
        let b = g.terms()[1].0.exponents();
        rows.push((0..n).map(|i| a[i] as i64 - b[i] as i64).collect::<Vec<i64>>());
    }
    let divisors = elementary_divisors(rows);
    if divisors.iter().all(|&d| d == 1) {
        Ok(Some(PrimeIdeal::certified(
            ideal.clone(),
            Certificate::BinomialLattice,
        )?))
    } else {
        Ok(None)
    }
}

/// Recursive driver for minimal primes over a prime field. Accumulates
/// candidate primes; the caller filters for global minimality.
pub(crate) fn decompose(
    ideal: IdealHandle,
    out: &mut Vec<PrimeIdeal>,
    depth: usize,
) -> Result<()> {
    if depth > MAX_DEPTH {
        return Err(Error::DecompositionStuck("recursion too deep".into()));
    }
    if ideal.is_unit()? {
        return Ok(());
    }
    if ideal.is_monomial()? {
        out.extend(monomial_min_primes(&ideal)?);
        return Ok(());
    }
    let ring = ideal.ring().clone();
    let gb = ideal.groebner_basis()?.to_vec();

    // 0. split off variables lying in the ideal: substitute them to zero,
    // decompose the remainder, and put them back into every prime
    let zero_vars: Vec<usize> = gb
        .iter()
        .filter_map(|g| {
            let m = g.lm().unwrap();
            (g.num_terms() == 1 && m.total_degree() == 1).then(|| m.support()[0])
        })
        .collect();
    if !zero_vars.is_empty() {
        let killed: Vec<Poly> = ideal
            .gens()
            .iter()
            .map(|g| kill_variables(g, &zero_vars))
            .filter(|g| !g.is_zero())
            .collect();
        let rest = IdealHandle::new(&ring, killed).canonicalize()?;
        let mut local = Vec::new();
        decompose(rest, &mut local, depth + 1)?;
        let var_gens: Vec<Poly> = zero_vars.iter().map(|&i| ring.var(i)).collect();
        for p in local {
            out.push(PrimeIdeal::certified(
                p.ideal().with_extra_gens(&var_gens),
                p.certificate().clone(),
            )?);
        }
        return Ok(());
    }

    // 1. factor splitting on basis elements
    let mut all_irreducible = true;
    for g in &gb {
        match split_element(g)? {
            Split::Factors(factors) => {
                // only usable when every branch strictly grows
                let mut usable = true;
                for f in &factors {
                    if ideal.contains(f)? {
                        usable = false;
                        break;
                    }
                }
                if usable {
                    for f in factors {
                        decompose(ideal.with_extra_gens(&[f]).canonicalize()?, out, depth + 1)?;
                    }
                    return Ok(());
                }
                all_irreducible = false;
            }
            Split::Irreducible => {}
            Split::Unknown => all_irreducible = false,
        }
    }
    if gb.len() == 1 && all_irreducible {
        out.push(PrimeIdeal::certified(ideal, Certificate::PrincipalIrreducible)?);
        return Ok(());
    }

    // 1b. a variable occurring only through a linear pivot reduces the
    // problem to one fewer variable
    if let Some(lifted) = try_linear_elimination(&ideal)? {
        out.extend(lifted);
        return Ok(());
    }

    // 2. zero-dimensional pieces decompose completely
    let (dim, indep) = krull_dim_with_set(&ideal)?;
    if dim == 0 {
        return zero_dim(ideal, out, depth);
    }

    // 3. cellular splitting: separate the part where x_i vanishes
    for i in 0..ring.nvars() {
        let xi = ring.var(i);
        if ideal.contains(&xi)? {
            continue;
        }
        let sat = saturate(&ideal, &xi)?;
        if !sat.is_subset_of(&ideal)? {
            decompose(sat, out, depth + 1)?;
            decompose(ideal.with_extra_gens(&[xi]).canonicalize()?, out, depth + 1)?;
            return Ok(());
        }
    }

    // 4. independent-set leading-coefficient splitting
    if let Some(h) = gtz_leading_coefficient(&ideal, &indep)? {
        if !ideal.contains(&h)? {
            let sat = saturate(&ideal, &h)?;
            if !sat.is_subset_of(&ideal)? {
                decompose(sat, out, depth + 1)?;
                decompose(ideal.with_extra_gens(&[h]).canonicalize()?, out, depth + 1)?;
                return Ok(());
            }
        }
    }

    // 5. saturated binomial ideals with saturated lattice are prime
    if let Some(prime) = lattice_certify(&ideal)? {
        out.push(prime);
        return Ok(());
    }

    Err(Error::DecompositionStuck(format!(
        "no applicable splitting for ({})",
        ideal.canonical_key()?
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, MonomialOrder};
    use crate::primelib::min_primes;

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

    /// Radical-equality oracle: the intersection of the returned primes has
    /// the same radical as the input, each prime contains the input, and
    /// the primes are pairwise incomparable.
    fn check_decomposition(target: &IdealHandle, primes: &[PrimeIdeal]) {
        assert!(!primes.is_empty());
        for p in primes {
            assert!(p.contains_ideal(target).unwrap(), "prime misses the ideal");
        }
        for (i, p) in primes.iter().enumerate() {
            for (j, q) in primes.iter().enumerate() {
                if i != j {
                    assert!(
                        !p.ideal().is_subset_of(q.ideal()).unwrap(),
                        "primes comparable"
                    );
                }
            }
        }
        let inter = primes
            .iter()
            .skip(1)
            .fold(primes[0].ideal().clone(), |acc, p| {
                acc.intersect(p.ideal()).unwrap()
            });
        for g in inter.gens() {
            assert!(
                crate::groebner::radical_member(g, target).unwrap(),
                "intersection not inside the radical"
            );
        }
        for g in target.gens() {
            assert!(
                crate::groebner::radical_member(g, &inter).unwrap(),
                "radical not inside the intersection"
            );
        }
    }

    #[test]
    fn zero_dimensional_split_points() {
        let r = gf_ring(32003, &["x", "y"]);
        // V = {(1,2), (4, anything with y^2=3)? } -- use simple split points
        let target = ideal(&r, &["x^2 - 1", "y - x"]);
        let primes = min_primes(&target).unwrap();
        assert_eq!(primes.len(), 2);
        check_decomposition(&target, &primes);
    }

    #[test]
    fn irreducible_quadratic_point_pair() {
        // x^2 = 2 has no root mod 5, so (x^2 - 2, y) is maximal
        let r = gf_ring(5, &["x", "y"]);
        let target = ideal(&r, &["x^2 - 2", "y"]);
        let primes = min_primes(&target).unwrap();
        assert_eq!(primes.len(), 1);
        check_decomposition(&target, &primes);
    }

    #[test]
    fn conjugate_pairs_need_general_position() {
        // (x^2-2, y^2-2) over GF(5) splits into two conjugate pairs:
        // (x^2-2, y-x) and (x^2-2, y+x)
        let r = gf_ring(5, &["x", "y"]);
        let target = ideal(&r, &["x^2 - 2", "y^2 - 2"]);
        let primes = min_primes(&target).unwrap();
        assert_eq!(primes.len(), 2);
        check_decomposition(&target, &primes);
    }

    #[test]
    fn hypersurface_binomial_prime() {
        let r = gf_ring(32003, &["x", "y", "z"]);
        let target = ideal(&r, &["x^2 - 5*y*z"]);
        let primes = min_primes(&target).unwrap();
        assert_eq!(primes.len(), 1);
        assert_eq!(primes[0].key(), target.canonical_key().unwrap());
    }

    #[test]
    fn square_binomial_splits() {
        // x^2 - 4 y^2 = (x-2y)(x+2y)
        let r = gf_ring(32003, &["x", "y"]);
        let target = ideal(&r, &["x^2 - 4*y^2"]);
        let primes = min_primes(&target).unwrap();
        assert_eq!(primes.len(), 2);
        check_decomposition(&target, &primes);
    }

    #[test]
    fn twisted_cubic_cone_is_prime() {
        let r = gf_ring(32003, &["x", "y", "z", "w"]);
        let target = ideal(&r, &["x*z - y^2", "y*w - z^2", "x*w - y*z"]);
        let primes = min_primes(&target).unwrap();
        assert_eq!(primes.len(), 1);
        check_decomposition(&target, &primes);
    }

    #[test]
    fn mixed_monomial_and_binomial() {
        let r = gf_ring(32003, &["x", "y", "z"]);
        let target = ideal(&r, &["x*y", "y^2 - z^2"]);
        let primes = min_primes(&target).unwrap();
        check_decomposition(&target, &primes);
        // components: (x, y-z), (x, y+z), (y, z)... y=0 forces z^2=0 so (y,z)
        assert_eq!(primes.len(), 3);
    }

    #[test]
    fn product_of_disjoint_linear_pieces() {
        // (x-1)(y-1) saturates off each hyperplane
        let r = gf_ring(32003, &["x", "y"]);
        let target = ideal(&r, &["x*y - x - y + 1"]);
        let primes = min_primes(&target).unwrap();
        assert_eq!(primes.len(), 2);
        check_decomposition(&target, &primes);
    }

    #[test]
    fn non_radical_input() {
        let r = gf_ring(32003, &["x", "y"]);
        let target = ideal(&r, &["x^2 - 2*x*y + y^2"]); // (x-y)^2
        let primes = min_primes(&target).unwrap();
        assert_eq!(primes.len(), 1);
        assert_eq!(primes[0].key(), "x + 32002*y");
    }

    #[test]
    fn elementary_divisor_examples() {
        // the diagonal is not divisor-chain normalized, but saturation only
        // needs "all ones"
        assert_eq!(elementary_divisors(vec![vec![1, -1, 0], vec![0, 1, -1]]), vec![1, 1]);
        assert_eq!(elementary_divisors(vec![vec![2, -2]]), vec![2]);
        assert_eq!(elementary_divisors(vec![vec![2, 0], vec![0, 3]]), vec![2, 3]);
    }
}
