mod common;

use std::sync::Arc;

use common::bv_example;
use mvalg::composed::{ibl_check, ComponentFamily};
use mvalg::mvcat::{
    algebra_from_json, algebra_to_json, congruence_check_multiplicativity, map_from_json,
    map_to_json, ConvMap, Overrides,
};
use mvalg::scalars::{Mode, Ring};
use mvalg::Error;
use serde_json::json;

fn sym_xy() -> serde_json::Value {
    json!({
        "mode": "hbar", "trunc": { "D": 2, "H": 2 }, "flavor": "symmetric",
        "generators": [{ "name": "x", "degree": 0 }, { "name": "y", "degree": 0 }], "Delta": []
    })
}

fn explicit(mu: serde_json::Value) -> serde_json::Value {
    json!({
        "mode": "hbar", "trunc": { "H": 2 }, "flavor": "explicit",
        "generators": [{ "name": "1", "degree": 0 }, { "name": "a", "degree": 0 }, { "name": "b", "degree": 0 }],
        "mu": mu, "Delta": []
    })
}

#[test]
fn symmetric_presentations_round_trip() {
    let a = bv_example(Ring::laurent_aux(4, 3, 4), 3, true);
    let v = algebra_to_json(&a);
    let back = algebra_from_json(&v, &Overrides::default()).unwrap();
    assert_eq!(back.delta_op(), a.delta_op());
    assert_eq!(algebra_to_json(&back), v);
}

#[test]
fn explicit_defaults_give_a_valid_algebra() {
    let a = algebra_from_json(&explicit(json!([])), &Overrides::default()).unwrap();
    assert!(a.validate_mv().all_pass(), "{}", a.validate_mv().to_json());
    let again = algebra_from_json(&algebra_to_json(&a), &Overrides::default()).unwrap();
    assert_eq!(algebra_to_json(&again), algebra_to_json(&a));
}

#[test]
fn a_noncommutative_product_is_reported_with_a_witness() {
    let mu = json!([{ "left": "a", "right": "b", "out": [{ "atom": "a" }] }, { "left": "b", "right": "a", "out": [] }]);
    let a = algebra_from_json(&explicit(mu), &Overrides::default()).unwrap();
    let check = a.validate_mv().get("mu_commutative").cloned().unwrap();
    assert!(!check.pass && check.witness.is_some());
}

#[test]
fn reordered_odd_inputs_carry_their_sign() {
    let ring = Ring::laurent_aux(4, 3, 4);
    let a = bv_example(ring, 3, true);
    let mut v = algebra_to_json(&a);
    // Restate an input containing ξ and p with the two letters swapped and the image negated.
    let mut swapped = 0;
    for entry in v["Delta"].as_array_mut().unwrap() {
        let letters: Vec<&str> = entry["in"]
            .as_array()
            .unwrap()
            .iter()
            .map(|l| l.as_str().unwrap())
            .collect();
        if !(letters.contains(&"xi") && letters.contains(&"p")) {
            continue;
        }
        let exchanged: Vec<&str> = letters
            .iter()
            .map(|&l| match l {
                "xi" => "p",
                "p" => "xi",
                other => other,
            })
            .collect();
        entry["in"] = json!(exchanged);
        for part in entry["out"]
            .as_array_mut()
            .unwrap()
            .iter_mut()
            .flat_map(|t| t["coeff"].as_array_mut().unwrap())
        {
            let q = part["q"].as_str().unwrap();
            part["q"] = json!(q
                .strip_prefix('-')
                .map(str::to_string)
                .unwrap_or(format!("-{q}")));
        }
        swapped += 1;
    }
    assert!(swapped > 0);
    let back = algebra_from_json(&v, &Overrides::default()).unwrap();
    assert_eq!(back.delta_op(), a.delta_op());
}

#[test]
fn overrides_may_grow_but_not_shrink() {
    let base = algebra_from_json(&sym_xy(), &Overrides::default()).unwrap();
    let wider = algebra_from_json(&sym_xy(), &Overrides::parse_trunc("D=3,H=3").unwrap()).unwrap();
    assert!(wider.dim() > base.dim());
    assert_eq!(wider.ring().hbar_order(), 3);
    let shrunk = algebra_from_json(&sym_xy(), &Overrides::parse_trunc("D=1").unwrap());
    assert!(matches!(shrunk, Err(Error::InvalidArgument(_))));
    let moded = Overrides {
        mode: Some(Mode::HbarAux),
        ..Overrides::parse_trunc("L=2").unwrap()
    };
    assert_eq!(
        algebra_from_json(&sym_xy(), &moded).unwrap().ring(),
        Ring::hbar_aux(2, 2)
    );
    for bad in ["D", "Q=1", "D=-1", "H=x"] {
        assert!(
            matches!(Overrides::parse_trunc(bad), Err(Error::Schema(_))),
            "{bad}"
        );
    }
}

#[test]
fn malformed_presentations_are_schema_errors() {
    let mut v = sym_xy();
    v["mu"] = json!([]);
    assert!(matches!(
        algebra_from_json(&v, &Overrides::default()),
        Err(Error::Schema(_))
    ));
    let mut v = sym_xy();
    v["flavor"] = json!("lie");
    assert!(matches!(
        algebra_from_json(&v, &Overrides::default()),
        Err(Error::Schema(_))
    ));
    let mut v = sym_xy();
    v["mode"] = json!("p-adic");
    assert!(matches!(
        algebra_from_json(&v, &Overrides::default()),
        Err(Error::Schema(_))
    ));
    let mut v = sym_xy();
    v["Delta"] = json!([{ "in": ["z"], "out": [] }]);
    assert!(matches!(
        algebra_from_json(&v, &Overrides::default()),
        Err(Error::UnknownName(_))
    ));
}

#[test]
fn map_forms_agree() {
    let a = Arc::new(algebra_from_json(&sym_xy(), &Overrides::default()).unwrap());
    let family = json!([{ "n": 1, "m": 1, "map": [{ "in": ["x"], "out": [{ "monomial": ["y"], "coeff": "2" }] }] }]);
    let f = map_from_json(&a, &a, &family).unwrap();
    let g = map_from_json(&a, &a, &map_to_json(&f)).unwrap();
    assert_eq!(f, g);
    assert_eq!(
        ComponentFamily::components(&f).unwrap().to_json(),
        family
            .as_array()
            .map(|_| ComponentFamily::components(&g).unwrap().to_json())
            .unwrap()
    );
}

#[test]
fn ibl_witness_names_the_offending_cell() {
    let a = Arc::new(algebra_from_json(&sym_xy(), &Overrides::default()).unwrap());
    let family = json!([{ "n": 2, "m": 1, "map": [{ "in": ["x", "y"], "out": [{ "monomial": ["x"], "coeff": "1" }] }] }]);
    let fam = ComponentFamily::from_json(a.clone(), a.clone(), &family).unwrap();
    let check = ibl_check(&fam);
    let w = check.witness.unwrap();
    assert_eq!(
        (
            w["n"].as_u64(),
            w["m"].as_u64(),
            w["required_hbar"].as_i64()
        ),
        (Some(2), Some(1), Some(1))
    );
    assert_eq!(w["in"], json!(["x", "y"]));
}

#[test]
fn multiplicativity_needs_a_bialgebra_source() {
    let mu = json!([{ "left": "a", "right": "a", "out": [{ "atom": "a" }] }]);
    let a = Arc::new(algebra_from_json(&explicit(mu), &Overrides::default()).unwrap());
    let f = ConvMap::zero(a.clone(), a.clone());
    let x = mvalg::graded::Element::basis(a.ring(), 1);
    assert!(matches!(
        congruence_check_multiplicativity(&f, &x, &x),
        Err(Error::NotBialgebra(_))
    ));
}
