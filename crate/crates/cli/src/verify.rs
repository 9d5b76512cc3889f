//! The corpus verification harness: random instances, three-way depth
//! agreement, the one-prime inequality suite, finiteness-dimension bounds
//! at the origin, and dummy-variable presentation independence, aggregated
//! into a deterministic JSON report.

use serde::Serialize;

use depthctl_core::depthcore::{
    check_depth_inequality, depth_formula, depth_local, depth_oracle_ext, depth_oracle_koszul,
    dummy_variable_change, fdim_at_point, lambda_independence, lambda_set, lambda_terms,
    make_rmodule, Presentation, RModule,
};
use depthctl_core::error::{Error, Result};
use depthctl_core::extnat::ExtNat;
use depthctl_core::groebner::IdealHandle;
use depthctl_core::polyring::FieldElem;
use depthctl_core::primelib::{min_primes, PrimeIdeal};

use crate::gen::{gen_monotone_extra_poly, gen_presentation_change_poly, gen_random_instance, Profile};
use crate::input::{module_data, InputProgram};

/// A fully built instance: the program that describes it plus the resolved
/// module and test ideal.
pub struct Instance {
    pub seed: u64,
    pub program: InputProgram,
    pub rmodule: RModule,
    pub ideal: IdealHandle,
}

pub fn build_instance(seed: u64, profile: Profile) -> Result<Instance> {
    let program = gen_random_instance(seed, profile)?;
    let j = program.ideal("J")?.clone();
    let (module, _) = module_data(&program, program.module("M")?)?;
    let rmodule = make_rmodule(Presentation::new(program.ring.clone(), j)?, module)?;
    let ideal = program.ideal("I")?.clone();
    Ok(Instance { seed, program, rmodule, ideal })
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct DepthValue {
    pub value: Option<u64>,
    pub infinite: bool,
}

impl From<ExtNat> for DepthValue {
    fn from(v: ExtNat) -> Self {
        match v {
            ExtNat::Fin(x) => DepthValue { value: Some(x), infinite: false },
            ExtNat::Inf => DepthValue { value: None, infinite: true },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceResult {
    pub index: usize,
    pub seed: u64,
    pub depth_formula: Option<DepthValue>,
    pub depth_koszul: Option<DepthValue>,
    pub depth_ext: Option<DepthValue>,
    pub lambda_size: Option<usize>,
    pub three_way_agree: bool,
    pub inequality_ok: bool,
    pub fdim_ok: bool,
    pub independence_ok: bool,
    pub local_consistency_ok: bool,
    pub monotone_ok: bool,
    pub error: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub command: String,
    pub seed: u64,
    pub count: usize,
    pub profile: String,
    pub instances: Vec<InstanceResult>,
    pub pass: bool,
}

fn origin(ring: &depthctl_core::polyring::RingCtx) -> Vec<FieldElem> {
    (0..ring.nvars()).map(|_| ring.field().zero()).collect()
}

/// The per-instance check outcomes.
pub struct Checks {
    pub formula: DepthValue,
    pub koszul: DepthValue,
    pub ext: DepthValue,
    pub lambda_size: usize,
    pub three_way: bool,
    pub inequality: bool,
    pub fdim: bool,
    pub independence: bool,
    pub local_consistency: bool,
    pub monotone: bool,
}

impl Checks {
    pub fn all_ok(&self) -> bool {
        self.three_way
            && self.inequality
            && self.fdim
            && self.independence
            && self.local_consistency
            && self.monotone
    }
}

/// All per-instance checks. Split out so the acceptance suite can reuse the
/// pieces on an already built instance.
pub fn check_instance(inst: &Instance) -> Result<Checks> {
    let m = &inst.rmodule;
    let ideal = &inst.ideal;

    let d_formula = depth_formula(m, ideal)?;
    let d_koszul = depth_oracle_koszul(m, ideal)?;
    let d_ext = depth_oracle_ext(m, ideal)?;
    let three_way = d_formula.value == d_koszul.value && d_koszul.value == d_ext.value;

    let lambda = lambda_set(m)?;

    // inequality over the prime set and the minimal primes of Ann(M)
    let mut inequality_ok = true;
    for entry in &lambda.entries {
        if !check_depth_inequality(m, ideal, &entry.prime)? {
            inequality_ok = false;
        }
    }
    let ann = m.module().annihilator()?;
    if !ann.is_unit()? {
        for p in min_primes(&ann)? {
            if !check_depth_inequality(m, ideal, &p)? {
                inequality_ok = false;
            }
        }
    }

    // finiteness-dimension bounds at the origin
    let pt = origin(m.ring());
    let fd = fdim_at_point(m, ideal, &pt)?;
    let terms = lambda_terms(m, ideal, Some(&pt))?;
    let depth_below = terms
        .iter()
        .filter(|t| t.below_point)
        .map(|t| t.total)
        .min()
        .unwrap_or(ExtNat::Inf);
    let witness_off_variety = terms
        .iter()
        .any(|t| t.below_point && t.total == depth_below && t.outside_variety);
    let fdim_ok = if depth_below.is_infinite() {
        fd.is_infinite()
    } else if witness_off_variety {
        fd == depth_below
    } else {
        fd > depth_below
    };

    // dummy-variable presentation independence
    let f = gen_presentation_change_poly(inst.seed, m.ring());
    let (m2, map) = dummy_variable_change(m, &f)?;
    let independence_ok = lambda_independence(m, &m2, &map)?;

    // grade at a rational maximal ideal equals the local depth there
    let origin_prime = PrimeIdeal::rational_point(m.ring(), &pt)?;
    let origin_ideal = origin_prime.ideal().clone();
    let local = depth_local(m, &origin_prime)?;
    let grade = depth_oracle_koszul(m, &origin_ideal)?.value;
    let local_consistency_ok = local == grade;

    // nested ideals cannot decrease depth
    let bigger = ideal.with_extra_gens(&[gen_monotone_extra_poly(inst.seed, m.ring())]);
    let monotone_ok = d_formula.value <= depth_formula(m, &bigger)?.value;

    Ok(Checks {
        formula: d_formula.value.into(),
        koszul: d_koszul.value.into(),
        ext: d_ext.value.into(),
        lambda_size: lambda.len(),
        three_way,
        inequality: inequality_ok,
        fdim: fdim_ok,
        independence: independence_ok,
        local_consistency: local_consistency_ok,
        monotone: monotone_ok,
    })
}

/// Runs `count` instances seeded `seed`, `seed + 1`, ... and aggregates.
/// Per-instance errors are recorded, not fatal, except that an unsupported
/// decomposition under a monomial profile is an engine bug by construction
/// and is escalated.
pub fn verify_corpus(seed: u64, count: usize, profile: Profile) -> Result<VerifyReport> {
    if count == 0 {
        return Err(Error::SyntaxError {
            line: 0,
            col: 0,
            msg: "count must be at least 1".into(),
        });
    }
    let mut instances = Vec::with_capacity(count);
    let mut pass = true;
    for index in 0..count {
        let inst_seed = seed.wrapping_add(index as u64);
        let outcome = build_instance(inst_seed, profile).and_then(|inst| check_instance(&inst));
        let result = match outcome {
            Ok(c) => InstanceResult {
                index,
                seed: inst_seed,
                depth_formula: Some(c.formula.clone()),
                depth_koszul: Some(c.koszul.clone()),
                depth_ext: Some(c.ext.clone()),
                lambda_size: Some(c.lambda_size),
                three_way_agree: c.three_way,
                inequality_ok: c.inequality,
                fdim_ok: c.fdim,
                independence_ok: c.independence,
                local_consistency_ok: c.local_consistency,
                monotone_ok: c.monotone,
                error: None,
                pass: c.all_ok(),
            },
            Err(e) => {
                if matches!(e, Error::UnsupportedFieldForDecomposition)
                    && matches!(profile, Profile::MonomialQQ | Profile::MonomialGFp)
                {
                    // monomial profiles guarantee monomial annihilators
                    return Err(Error::Internal(format!(
                        "unsupported decomposition under {}: {e}",
                        profile.name()
                    )));
                }
                InstanceResult {
                    index,
                    seed: inst_seed,
                    depth_formula: None,
                    depth_koszul: None,
                    depth_ext: None,
                    lambda_size: None,
                    three_way_agree: false,
                    inequality_ok: false,
                    fdim_ok: false,
                    independence_ok: false,
                    local_consistency_ok: false,
                    monotone_ok: false,
                    error: Some(e.to_string()),
                    pass: false,
                }
            }
        };
        pass &= result.pass;
        instances.push(result);
    }
    Ok(VerifyReport {
        command: "verify".into(),
        seed,
        count,
        profile: profile.name().into(),
        instances,
        pass,
    })
}
