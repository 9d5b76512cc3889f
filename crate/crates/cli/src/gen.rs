//! Reproducible random instance generation.
//!
//! Every instance carries: a quotient ideal J (monomial or binomial by
//! profile), a module M over S/J (either a cyclic quotient by J plus extra
//! monomials, or the cokernel of a small matrix with the J-block appended
//! so the quotient ideal provably annihilates it), and a test ideal I with
//! no constant terms, keeping the origin on every variety involved.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use depthctl_core::error::Result;
use depthctl_core::groebner::IdealHandle;
use depthctl_core::modalg::PolyMatrix;
use depthctl_core::polyring::{FieldSpec, Monomial, MonomialOrder, Poly, RingCtx};

use crate::input::{InputProgram, Item, ModuleDecl};

pub const WORKHORSE_PRIME: u64 = 32003;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    MonomialQQ,
    MonomialGFp,
    GeneralGFp,
}

impl Profile {
    pub fn name(self) -> &'static str {
        match self {
            Profile::MonomialQQ => "monomial-QQ",
            Profile::MonomialGFp => "monomial-GFp",
            Profile::GeneralGFp => "general-GFp",
        }
    }

    pub fn parse(s: &str) -> Option<Profile> {
        match s {
            "monomial-QQ" => Some(Profile::MonomialQQ),
            "monomial-GFp" => Some(Profile::MonomialGFp),
            "general-GFp" => Some(Profile::GeneralGFp),
            _ => None,
        }
    }

    fn field(self) -> FieldSpec {
        match self {
            Profile::MonomialQQ => FieldSpec::Rationals,
            _ => FieldSpec::prime_field(WORKHORSE_PRIME).expect("prime"),
        }
    }
}

fn random_monomial(rng: &mut ChaCha8Rng, nvars: usize, min_deg: u32, max_deg: u32) -> Monomial {
    let deg = rng.gen_range(min_deg..=max_deg);
    let mut e = vec![0u32; nvars];
    for _ in 0..deg {
        e[rng.gen_range(0..nvars)] += 1;
    }
    Monomial::from_exponents(e)
}

fn random_coeff(rng: &mut ChaCha8Rng, field: FieldSpec) -> i64 {
    match field {
        FieldSpec::Rationals => {
            let c = rng.gen_range(1..=3i64);
            if rng.gen_bool(0.5) {
                -c
            } else {
                c
            }
        }
        FieldSpec::PrimeField(p) => rng.gen_range(1..p as i64),
    }
}

fn random_quotient_gens(rng: &mut ChaCha8Rng, ring: &RingCtx, profile: Profile) -> Vec<Poly> {
    let nvars = ring.nvars();
    let count = rng.gen_range(2..=4);
    let mut gens = Vec::with_capacity(count);
    for _ in 0..count {
        match profile {
            Profile::MonomialQQ | Profile::MonomialGFp => {
                let m = random_monomial(rng, nvars, 1, 3);
                gens.push(ring.monomial(m, ring.field().one()));
            }
            Profile::GeneralGFp => {
                // binomial m1 - c m2 with distinct monomials
                let m1 = random_monomial(rng, nvars, 1, 3);
                let mut m2 = random_monomial(rng, nvars, 1, 3);
                while m2 == m1 {
                    m2 = random_monomial(rng, nvars, 1, 3);
                }
                let c = ring.field().from_int(random_coeff(rng, ring.field()));
                let lead = ring.monomial(m1, ring.field().one());
                gens.push(lead.sub(&ring.monomial(m2, c)));
            }
        }
    }
    gens
}

/// Polynomials with 1..=3 terms of degree 1..=2 and no constant term, so
/// the origin lies on the variety.
fn random_test_ideal(rng: &mut ChaCha8Rng, ring: &RingCtx) -> Vec<Poly> {
    let count = rng.gen_range(1..=3);
    let mut gens = Vec::with_capacity(count);
    for _ in 0..count {
        loop {
            let terms = rng.gen_range(1..=3);
            let mut acc = ring.zero();
            for _ in 0..terms {
                let m = random_monomial(rng, ring.nvars(), 1, 2);
                let c = ring.field().from_int(random_coeff(rng, ring.field()));
                acc = acc.add(&ring.monomial(m, c));
            }
            if !acc.is_zero() {
                gens.push(acc);
                break;
            }
        }
    }
    gens
}

/// A 2-row presentation whose random columns respect a multigrading (so
/// monomial-profile annihilators stay monomial), with J * e_i columns
/// appended to force J inside the annihilator.
fn random_coker_matrix(
    rng: &mut ChaCha8Rng,
    ring: &RingCtx,
    j_gens: &[Poly],
) -> PolyMatrix {
    let nvars = ring.nvars();
    let rows = 2usize;
    // row shifts: s_0 = 0, s_1 a small monomial exponent
    let shifts = [
        vec![0u32; nvars],
        random_monomial(rng, nvars, 0, 1).exponents().to_vec(),
    ];
    let ncols = rng.gen_range(1..=3);
    let mut cols: Vec<Vec<Poly>> = Vec::new();
    for _ in 0..ncols {
        let anchor = rng.gen_range(0..rows);
        let extra = random_monomial(rng, nvars, 1, 2);
        let degree: Vec<u32> = (0..nvars)
            .map(|v| shifts[anchor][v] + extra.exponent(v))
            .collect();
        let col: Vec<Poly> = (0..rows)
            .map(|i| {
                if (0..nvars).all(|v| degree[v] >= shifts[i][v]) {
                    let e: Vec<u32> = (0..nvars).map(|v| degree[v] - shifts[i][v]).collect();
                    ring.monomial(Monomial::from_exponents(e), ring.field().one())
                } else {
                    ring.zero()
                }
            })
            .collect();
        cols.push(col);
    }
    for g in j_gens {
        for i in 0..rows {
            let mut col = vec![ring.zero(); rows];
            col[i] = g.clone();
            cols.push(col);
        }
    }
    let mut entries = Vec::with_capacity(rows * cols.len());
    for i in 0..rows {
        for col in &cols {
            entries.push(col[i].clone());
        }
    }
    PolyMatrix::new(ring, rows, cols.len(), entries)
}

/// Deterministic program for a seed and profile.
pub fn gen_random_instance(seed: u64, profile: Profile) -> Result<InputProgram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nvars = rng.gen_range(3..=4usize);
    let names: Vec<String> = ["x", "y", "z", "w"][..nvars]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let ring = RingCtx::new(profile.field(), names, MonomialOrder::Grevlex)?;

    let j_gens = random_quotient_gens(&mut rng, &ring, profile);
    let j = IdealHandle::new(&ring, j_gens.clone());

    let mut items: Vec<(String, Item)> = vec![("J".into(), Item::Ideal(j.clone()))];

    if rng.gen_bool(0.5) {
        // cyclic module: quot of J plus a few extra monomials
        let extra_count = rng.gen_range(0..=2);
        let mut defining = j_gens.clone();
        for _ in 0..extra_count {
            let m = random_monomial(&mut rng, nvars, 1, 3);
            defining.push(ring.monomial(m, ring.field().one()));
        }
        let jm = IdealHandle::new(&ring, defining);
        items.push(("Jm".into(), Item::Ideal(jm)));
        items.push(("M".into(), Item::Module(ModuleDecl::Quot("Jm".into()))));
    } else {
        let pres = random_coker_matrix(&mut rng, &ring, &j_gens);
        items.push(("M".into(), Item::Module(ModuleDecl::Coker(pres))));
    }

    let i_gens = random_test_ideal(&mut rng, &ring);
    items.push(("I".into(), Item::Ideal(IdealHandle::new(&ring, i_gens))));

    Ok(InputProgram { ring, items })
}

/// The polynomial used for the dummy-variable presentation change of an
/// instance; drawn from the same stream family, offset so it does not
/// collide with the instance draws. A single term keeps the enlarged
/// module's resolutions sparse.
pub fn gen_presentation_change_poly(seed: u64, ring: &RingCtx) -> Poly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
    let m = random_monomial(&mut rng, ring.nvars(), 1, 2);
    let c = ring.field().from_int(random_coeff(&mut rng, ring.field()));
    ring.monomial(m, c)
}

/// Extra generator for the nested-ideal monotonicity check.
pub fn gen_monotone_extra_poly(seed: u64, ring: &RingCtx) -> Poly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x517cc1b727220a95);
    loop {
        let terms = rng.gen_range(1..=2);
        let mut acc = ring.zero();
        for _ in 0..terms {
            let m = random_monomial(&mut rng, ring.nvars(), 1, 2);
            let c = ring.field().from_int(random_coeff(&mut rng, ring.field()));
            acc = acc.add(&ring.monomial(m, c));
        }
        if !acc.is_zero() {
            return acc;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::parse_input;

    #[test]
    fn determinism_and_distinctness() {
        for profile in [Profile::MonomialQQ, Profile::MonomialGFp, Profile::GeneralGFp] {
            let a = gen_random_instance(1, profile).unwrap().to_string();
            let b = gen_random_instance(1, profile).unwrap().to_string();
            let c = gen_random_instance(2, profile).unwrap().to_string();
            assert_eq!(a, b);
            assert_ne!(a, c);
        }
    }

    #[test]
    fn generated_programs_reparse() {
        for profile in [Profile::MonomialQQ, Profile::MonomialGFp, Profile::GeneralGFp] {
            for seed in 1..=10 {
                let p = gen_random_instance(seed, profile).unwrap();
                let text = p.to_string();
                let q = parse_input(&text).unwrap();
                assert_eq!(text, q.to_string(), "seed {seed} {}", profile.name());
            }
        }
    }
}
