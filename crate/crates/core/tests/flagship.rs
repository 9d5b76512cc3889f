//! End-to-end checks on the two worked examples that exercise the whole
//! pipeline: the two-planes quotient in four variables and the hypersurface
//! xy in two variables. Every number is re-verified by the independent
//! Koszul and Ext oracles.

use depthctl_core::depthcore::{
    att_min_at_point, check_depth_inequality, depth_formula, depth_local, depth_oracle_ext,
    depth_oracle_koszul, fdim_at_point, lambda_set, make_rmodule, Presentation, RModule,
};
use depthctl_core::extnat::ExtNat;
use depthctl_core::groebner::IdealHandle;
use depthctl_core::modalg::FPModule;
use depthctl_core::polyring::{parse_poly, FieldElem, FieldSpec, MonomialOrder, RingCtx};
use depthctl_core::primelib::min_primes;

fn ring(vars: &[&str]) -> RingCtx {
    RingCtx::new(
        FieldSpec::Rationals,
        vars.iter().map(|s| s.to_string()).collect(),
        MonomialOrder::Grevlex,
    )
    .unwrap()
}

fn ideal(r: &RingCtx, gens: &[&str]) -> IdealHandle {
    IdealHandle::new(r, gens.iter().map(|s| parse_poly(r, s).unwrap()).collect())
}

fn origin(r: &RingCtx) -> Vec<FieldElem> {
    (0..r.nvars()).map(|_| r.field().zero()).collect()
}

fn two_planes() -> (RingCtx, RModule, IdealHandle) {
    let r = ring(&["x", "y", "u", "v"]);
    let j = ideal(&r, &["x*u", "x*v", "y*u", "y*v"]);
    let pres = Presentation::new(r.clone(), j.clone()).unwrap();
    let m = RModule::quot(pres, &j).unwrap();
    let maximal = ideal(&r, &["x", "y", "u", "v"]);
    (r, m, maximal)
}

#[test]
fn two_planes_lambda_set() {
    let (_, m, _) = two_planes();
    let l = lambda_set(&m).unwrap();
    assert_eq!(l.keys(), vec!["u, v", "x, y", "x, y, u, v"]);
    // the two planes witness Ext^2, the origin component witnesses Ext^3
    for e in &l.entries {
        if e.prime.key() == "x, y, u, v" {
            assert_eq!(e.ext_indices, vec![3]);
            assert_eq!(e.height, 4);
            assert_eq!(e.local_depth, 1);
        } else {
            assert_eq!(e.ext_indices, vec![2]);
            assert_eq!(e.height, 2);
            assert_eq!(e.local_depth, 0);
        }
    }
}

#[test]
fn two_planes_depth_at_the_maximal_ideal() {
    let (_, m, maximal) = two_planes();
    let d = depth_formula(&m, &maximal).unwrap();
    assert_eq!(d.value, ExtNat::Fin(1));
    let w = d.witness.unwrap();
    assert_eq!(w.prime.key(), "x, y, u, v");
    assert_eq!(w.height_term, ExtNat::Fin(0));
    assert_eq!(w.local_depth, ExtNat::Fin(1));
    // both independent oracles agree
    assert_eq!(depth_oracle_koszul(&m, &maximal).unwrap().value, ExtNat::Fin(1));
    assert_eq!(depth_oracle_ext(&m, &maximal).unwrap().value, ExtNat::Fin(1));
}

#[test]
fn two_planes_plane_primes_give_two() {
    // the component primes give height 2 + depth 0, beaten by the maximal
    let (r, m, maximal) = two_planes();
    let l = lambda_set(&m).unwrap();
    for e in &l.entries {
        if e.prime.key() == "x, y, u, v" {
            continue;
        }
        let h = depthctl_core::depthcore::height_mod(&m, &maximal, &e.prime).unwrap();
        assert_eq!(h + ExtNat::Fin(e.local_depth), ExtNat::Fin(2));
    }
    let _ = r;
}

#[test]
fn two_planes_local_depths() {
    let (r, m, _) = two_planes();
    let l = lambda_set(&m).unwrap();
    let plane = l.entries.iter().find(|e| e.prime.key() == "x, y").unwrap();
    assert_eq!(depth_local(&m, &plane.prime).unwrap(), ExtNat::Fin(0));
    let max = l
        .entries
        .iter()
        .find(|e| e.prime.key() == "x, y, u, v")
        .unwrap();
    assert_eq!(depth_local(&m, &max.prime).unwrap(), ExtNat::Fin(1));
    // re-verify via the Koszul oracle at the maximal ideal
    let maximal = ideal(&r, &["x", "y", "u", "v"]);
    assert_eq!(depth_oracle_koszul(&m, &maximal).unwrap().value, ExtNat::Fin(1));
}

#[test]
fn two_planes_fdim_at_origin() {
    let (r, m, maximal) = two_planes();
    let fd = fdim_at_point(&m, &maximal, &origin(&r)).unwrap();
    assert_eq!(fd, ExtNat::Fin(2));
}

#[test]
fn two_planes_attached_primes() {
    let (r, m, _) = two_planes();
    let pt = origin(&r);
    let att2: Vec<String> = att_min_at_point(&m, &pt, 2)
        .unwrap()
        .iter()
        .map(|p| p.key().to_string())
        .collect();
    assert_eq!(att2, vec!["u, v", "x, y"]);
    let att1: Vec<String> = att_min_at_point(&m, &pt, 1)
        .unwrap()
        .iter()
        .map(|p| p.key().to_string())
        .collect();
    assert_eq!(att1, vec!["x, y, u, v"]);
    assert!(att_min_at_point(&m, &pt, 0).unwrap().is_empty());
    assert!(att_min_at_point(&m, &pt, 4).unwrap().is_empty());
}

#[test]
fn two_planes_inequality_suite() {
    let (_, m, maximal) = two_planes();
    let l = lambda_set(&m).unwrap();
    for e in &l.entries {
        assert!(check_depth_inequality(&m, &maximal, &e.prime).unwrap());
    }
    for p in min_primes(&m.module().annihilator().unwrap()).unwrap() {
        assert!(check_depth_inequality(&m, &maximal, &p).unwrap());
    }
}

#[test]
fn hypersurface_lambda_and_depths() {
    let r = ring(&["x", "y"]);
    let j = ideal(&r, &["x*y"]);
    let pres = Presentation::new(r.clone(), j.clone()).unwrap();
    let m = RModule::quot(pres, &j).unwrap();

    let l = lambda_set(&m).unwrap();
    assert_eq!(l.keys(), vec!["x", "y"]);

    let ix = ideal(&r, &["x"]);
    let d0 = depth_formula(&m, &ix).unwrap();
    assert_eq!(d0.value, ExtNat::Fin(0));
    assert_eq!(d0.witness.unwrap().prime.key(), "x");
    assert_eq!(depth_oracle_koszul(&m, &ix).unwrap().value, ExtNat::Fin(0));
    assert_eq!(depth_oracle_ext(&m, &ix).unwrap().value, ExtNat::Fin(0));

    let diag = ideal(&r, &["x - y"]);
    let d1 = depth_formula(&m, &diag).unwrap();
    assert_eq!(d1.value, ExtNat::Fin(1));
    assert_eq!(depth_oracle_koszul(&m, &diag).unwrap().value, ExtNat::Fin(1));
    assert_eq!(depth_oracle_ext(&m, &diag).unwrap().value, ExtNat::Fin(1));
}

#[test]
fn free_module_over_full_ring() {
    let r = ring(&["x", "y"]);
    let pres = Presentation::new(r.clone(), IdealHandle::zero(&r)).unwrap();
    let m = make_rmodule(pres, FPModule::free(&r, 1)).unwrap();
    let l = lambda_set(&m).unwrap();
    assert_eq!(l.len(), 1);
    assert!(l.entries[0].prime.is_zero());

    let full = ideal(&r, &["x", "y"]);
    assert_eq!(depth_formula(&m, &full).unwrap().value, ExtNat::Fin(2));
    assert_eq!(
        fdim_at_point(&m, &full, &origin(&r)).unwrap(),
        ExtNat::Fin(2)
    );
}

#[test]
fn ext_supports_sit_inside_the_module_support() {
    // every minimal prime of Ann(Ext^i) contains Ann(M)
    let r = ring(&["x", "y", "u", "v"]);
    let j = ideal(&r, &["x*u", "x*v", "y*u", "y*v"]);
    let m = depthctl_core::modalg::FPModule::quotient_ring(&r, &j);
    let ann = m.annihilator().unwrap();
    for ext in m.ext_modules().unwrap() {
        if ext.is_zero_module().unwrap() {
            continue;
        }
        for p in min_primes(&ext.annihilator().unwrap()).unwrap() {
            assert!(p.contains_ideal(&ann).unwrap());
        }
    }
}

#[test]
fn fdim_empty_index_set_is_infinite() {
    // M = S/(x,y), I = (x): every prime of the set contains I
    let r = ring(&["x", "y"]);
    let j = ideal(&r, &["x", "y"]);
    let pres = Presentation::new(r.clone(), j.clone()).unwrap();
    let m = RModule::quot(pres, &j).unwrap();
    let fd = fdim_at_point(&m, &ideal(&r, &["x"]), &origin(&r)).unwrap();
    assert_eq!(fd, ExtNat::Inf);
}
