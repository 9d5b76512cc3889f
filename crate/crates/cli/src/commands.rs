//! Command execution and JSON rendering. Every command resolves names from
//! a parsed program, runs the engine, and prints a deterministic JSON
//! object (struct field order fixes the key order).

use serde::Serialize;

use depthctl_core::depthcore::{
    att_min_at_point, depth_formula, depth_local, depth_oracle_ext, depth_oracle_koszul,
    fdim_at_point, fdim_global, height_mod, lambda_independence, lambda_set, make_rmodule,
    DepthResult, Presentation, RModule,
};
use depthctl_core::error::{Error, Result};
use depthctl_core::extnat::ExtNat;
use depthctl_core::groebner::RingMap;
use depthctl_core::polyring::{parse_poly, FieldElem, Poly, RingCtx};

use crate::input::{module_data, InputProgram};
use crate::verify::DepthValue;

#[derive(Debug, Clone, Serialize)]
pub struct RingJson {
    pub field: String,
    pub vars: Vec<String>,
}

fn ring_json(ring: &RingCtx) -> RingJson {
    RingJson {
        field: ring.field().to_string(),
        vars: ring.vars().to_vec(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessJson {
    pub prime: Vec<String>,
    pub height: Option<u64>,
    pub local_depth: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DepthJson {
    pub command: String,
    pub ring: RingJson,
    pub module: String,
    pub ideal: String,
    pub method: String,
    pub value: Option<u64>,
    pub infinite: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub methods: Option<MethodsJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MethodsJson {
    pub formula: DepthValue,
    pub koszul: DepthValue,
    pub ext: DepthValue,
}

/// Builds the RModule a command operates on: the module declaration plus
/// its intrinsic quotient ideal (or an explicitly named one).
pub fn resolve_module(
    program: &InputProgram,
    module_name: &str,
    quotient_name: Option<&str>,
) -> Result<RModule> {
    let decl = program.module(module_name)?;
    let (module, intrinsic_j) = module_data(program, decl)?;
    let j = match quotient_name {
        Some(name) => program.ideal(name)?.clone(),
        None => intrinsic_j,
    };
    make_rmodule(Presentation::new(program.ring.clone(), j)?, module)
}

fn witness_json(d: &DepthResult) -> Option<WitnessJson> {
    d.witness.as_ref().map(|w| WitnessJson {
        prime: w.prime.gens_strings().unwrap_or_default(),
        height: w.height_term.finite(),
        local_depth: w.local_depth.finite(),
    })
}

pub fn run_depth(
    program: &InputProgram,
    module_name: &str,
    ideal_name: &str,
    method: &str,
) -> Result<DepthJson> {
    let m = resolve_module(program, module_name, None)?;
    let ideal = program.ideal(ideal_name)?;
    let (main, witness, methods, agree) = match method {
        "formula" => {
            let d = depth_formula(&m, ideal)?;
            let w = witness_json(&d);
            (d.value, w, None, None)
        }
        "koszul" => (depth_oracle_koszul(&m, ideal)?.value, None, None, None),
        "ext" => (depth_oracle_ext(&m, ideal)?.value, None, None, None),
        "all" => {
            let df = depth_formula(&m, ideal)?;
            let dk = depth_oracle_koszul(&m, ideal)?;
            let de = depth_oracle_ext(&m, ideal)?;
            let agree = df.value == dk.value && dk.value == de.value;
            let w = witness_json(&df);
            (
                df.value,
                w,
                Some(MethodsJson {
                    formula: df.value.into(),
                    koszul: dk.value.into(),
                    ext: de.value.into(),
                }),
                Some(agree),
            )
        }
        other => {
            return Err(Error::SyntaxError {
                line: 0,
                col: 0,
                msg: format!("unknown method `{other}`"),
            })
        }
    };
    Ok(DepthJson {
        command: "depth".into(),
        ring: ring_json(&program.ring),
        module: module_name.into(),
        ideal: ideal_name.into(),
        method: method.into(),
        value: main.finite(),
        infinite: main.is_infinite(),
        witness,
        methods,
        agree,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LambdaEntryJson {
    pub generators: Vec<String>,
    pub ext_indices: Vec<usize>,
    pub height: u64,
    pub local_depth: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LambdaJson {
    pub command: String,
    pub ring: RingJson,
    pub module: String,
    pub quotient: String,
    pub lambda: Vec<LambdaEntryJson>,
}

pub fn run_lambda(
    program: &InputProgram,
    module_name: &str,
    quotient_name: &str,
) -> Result<LambdaJson> {
    let m = resolve_module(program, module_name, Some(quotient_name))?;
    let l = lambda_set(&m)?;
    Ok(LambdaJson {
        command: "lambda".into(),
        ring: ring_json(&program.ring),
        module: module_name.into(),
        quotient: quotient_name.into(),
        lambda: l
            .entries
            .iter()
            .map(|e| {
                Ok(LambdaEntryJson {
                    generators: e.prime.gens_strings()?,
                    ext_indices: e.ext_indices.clone(),
                    height: e.height,
                    local_depth: e.local_depth,
                })
            })
            .collect::<Result<Vec<_>>>()?,
    })
}

pub fn parse_point(ring: &RingCtx, text: &str) -> Result<Vec<FieldElem>> {
    let coords: Vec<&str> = text.split(',').collect();
    if coords.len() != ring.nvars() {
        return Err(Error::SyntaxError {
            line: 0,
            col: 0,
            msg: format!(
                "point needs {} coordinates, got {}",
                ring.nvars(),
                coords.len()
            ),
        });
    }
    coords
        .iter()
        .map(|c| {
            let p: Poly = parse_poly(ring, c.trim())?;
            if !p.is_constant() {
                return Err(Error::SyntaxError {
                    line: 0,
                    col: 0,
                    msg: format!("point coordinate `{c}` is not a constant"),
                });
            }
            Ok(p.lc().cloned().unwrap_or_else(|| ring.field().zero()))
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct FdimJson {
    pub command: String,
    pub ring: RingJson,
    pub module: String,
    pub ideal: String,
    pub point: Option<Vec<String>>,
    pub experimental_global: bool,
    pub value: Option<u64>,
    pub infinite: bool,
}

pub fn run_fdim(
    program: &InputProgram,
    module_name: &str,
    ideal_name: &str,
    point_text: Option<&str>,
    global: bool,
) -> Result<FdimJson> {
    let m = resolve_module(program, module_name, None)?;
    let ideal = program.ideal(ideal_name)?;
    let (value, point_strs) = if global {
        (fdim_global(&m, ideal)?, point_text.map(|t| t.split(',').map(|s| s.trim().to_string()).collect()))
    } else {
        let text = point_text.ok_or_else(|| Error::SyntaxError {
            line: 0,
            col: 0,
            msg: "--point is required without --experimental-global".into(),
        })?;
        let pt = parse_point(&program.ring, text)?;
        (
            fdim_at_point(&m, ideal, &pt)?,
            Some(pt.iter().map(|c| c.to_string()).collect()),
        )
    };
    Ok(FdimJson {
        command: "fdim".into(),
        ring: ring_json(&program.ring),
        module: module_name.into(),
        ideal: ideal_name.into(),
        point: point_strs,
        experimental_global: global,
        value: value.finite(),
        infinite: value.is_infinite(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct AttJson {
    pub command: String,
    pub ring: RingJson,
    pub module: String,
    pub point: Vec<String>,
    pub i: usize,
    pub primes: Vec<Vec<String>>,
}

pub fn run_att(
    program: &InputProgram,
    module_name: &str,
    point_text: &str,
    i: usize,
) -> Result<AttJson> {
    let m = resolve_module(program, module_name, None)?;
    let pt = parse_point(&program.ring, point_text)?;
    let primes = att_min_at_point(&m, &pt, i)?;
    Ok(AttJson {
        command: "att".into(),
        ring: ring_json(&program.ring),
        module: module_name.into(),
        point: pt.iter().map(|c| c.to_string()).collect(),
        i,
        primes: primes
            .iter()
            .map(|p| p.gens_strings())
            .collect::<Result<Vec<_>>>()?,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct IndepJson {
    pub command: String,
    pub ring: RingJson,
    pub module: String,
    pub other: String,
    pub map: String,
    pub independent: bool,
}

/// The `indep` command: module M over FILE's ring, module N over FILE2's
/// ring, and a map declared in FILE sending FILE2's variables into FILE's
/// ring.
pub fn run_indep(
    program: &InputProgram,
    other: &InputProgram,
    map_name: &str,
    module_name: &str,
    other_module: &str,
) -> Result<IndepJson> {
    let m1 = resolve_module(program, module_name, None)?;
    let m2 = resolve_module(other, other_module, None)?;
    let pairs = program.map(map_name)?;
    // images are in program's ring; sources must cover other's variables
    let src_ring = other.ring.clone();
    let mut images = vec![None; src_ring.nvars()];
    for (var, img) in pairs {
        let idx = src_ring
            .var_index(var)
            .ok_or_else(|| Error::UnknownVariable(var.clone()))?;
        images[idx] = Some(img.clone());
    }
    let images: Vec<Poly> = images
        .into_iter()
        .enumerate()
        .map(|(i, img)| {
            img.ok_or_else(|| {
                Error::NotAnIsomorphismWitness(format!(
                    "map does not cover variable `{}`",
                    src_ring.vars()[i]
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let map = RingMap::new(src_ring, program.ring.clone(), images)?;
    let independent = lambda_independence(&m1, &m2, &map)?;
    Ok(IndepJson {
        command: "indep".into(),
        ring: ring_json(&program.ring),
        module: module_name.into(),
        other: other_module.into(),
        map: map_name.into(),
        independent,
    })
}

/// Plain-text summary for the depth command.
pub fn depth_summary(d: &DepthJson) -> String {
    let mut out = String::new();
    if d.infinite {
        out.push_str(&format!("depth({}, {}) = inf", d.ideal, d.module));
    } else {
        out.push_str(&format!(
            "depth({}, {}) = {}",
            d.ideal,
            d.module,
            d.value.unwrap()
        ));
    }
    if let Some(w) = &d.witness {
        out.push_str(&format!(
            "  [witness prime ({}) with height {} + local depth {}]",
            w.prime.join(", "),
            w.height.map_or_else(|| "inf".into(), |v| v.to_string()),
            w.local_depth.map_or_else(|| "inf".into(), |v| v.to_string()),
        ));
    }
    if let Some(a) = d.agree {
        out.push_str(if a { "  [all methods agree]" } else { "  [METHODS DISAGREE]" });
    }
    out
}

/// Plain-text summary for the lambda command.
pub fn lambda_summary(l: &LambdaJson) -> String {
    let mut out = format!("lambda set of {} has {} prime(s):\n", l.module, l.lambda.len());
    for e in &l.lambda {
        out.push_str(&format!(
            "  ({})  ext indices {:?}, height {}, local depth {}\n",
            e.generators.join(", "),
            e.ext_indices,
            e.height,
            e.local_depth
        ));
    }
    out
}

/// Extra consistency helper used by tests: local depth at a named prime.
pub fn local_depth_at(program: &InputProgram, module_name: &str, prime_name: &str) -> Result<ExtNat> {
    let m = resolve_module(program, module_name, None)?;
    match program.lookup(prime_name) {
        Some(crate::input::Item::Prime(p)) => depth_local(&m, p),
        _ => Err(Error::UnknownVariable(format!("prime `{prime_name}`"))),
    }
}

/// Height term exposed for tests.
pub fn height_term_at(
    program: &InputProgram,
    module_name: &str,
    ideal_name: &str,
    prime_name: &str,
) -> Result<ExtNat> {
    let m = resolve_module(program, module_name, None)?;
    let ideal = program.ideal(ideal_name)?;
    match program.lookup(prime_name) {
        Some(crate::input::Item::Prime(p)) => height_mod(&m, ideal, p),
        _ => Err(Error::UnknownVariable(format!("prime `{prime_name}`"))),
    }
}

/// Maps engine errors onto process exit codes: 1 input, 2 unsupported
/// field, 3 internal.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::UnsupportedFieldForDecomposition | Error::WrongField => 2,
        Error::Internal(_)
        | Error::NotAComplex
        | Error::ResolutionCapExceeded(_)
        | Error::DecompositionStuck(_) => 3,
        _ => 1,
    }
}
