//! JSON presentations of MV-algebras and of maps between them.
//!
//! An algebra is `{"mode", "trunc": {"D","H","L","P"}, "flavor", "generators",
//! "mu", "delta", "Delta", "eps"}`. The symmetric flavor takes its product,
//! diagonal and counit from `S^{≤D}(U)`; the explicit flavor lists its basis
//! in `generators` (unit first), and `mu`/`delta`/`eps` default to the
//! unit laws, primitive atoms and the standard counit. The supertrivial
//! flavor takes only `generators`, `Delta` and optionally `eps`.

use std::sync::Arc;

use serde_json::{json, Value};

use super::algebra::{Flavor, MVAlgebra};
use super::constructors::{make_supertrivial, standard_counit};
use super::convolution::ConvMap;
use crate::composed::ComponentFamily;
use crate::error::{Error, Result};
use crate::graded::{Element, GradedBasis, LinMap, Tensor};
use crate::json::{as_array, as_str, as_usize, field, scalar_from_json, scalar_to_json};
use crate::scalars::{Mode, Ring, Scalar};
use crate::symalg::SymAlgebra;

/// Command-line replacements for the mode and truncation of a presentation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Overrides {
    pub mode: Option<Mode>,
    pub max_len: Option<u32>,
    pub hbar_order: Option<u32>,
    pub aux_order: Option<u32>,
    pub pole_bound: Option<u32>,
}

impl Overrides {
    /// Parse `D=..,H=..,L=..,P=..` (any subset, any order).
    pub fn parse_trunc(text: &str) -> Result<Overrides> {
        let mut out = Overrides::default();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(|| {
                Error::Schema(format!("truncation entry `{part}` is not KEY=VALUE"))
            })?;
            let value: u32 = value.trim().parse().map_err(|_| {
                Error::Schema(format!(
                    "truncation value `{value}` is not a non-negative integer"
                ))
            })?;
            let slot = match key.trim() {
                "D" => &mut out.max_len,
                "H" => &mut out.hbar_order,
                "L" => &mut out.aux_order,
                "P" => &mut out.pole_bound,
                other => {
                    return Err(Error::Schema(format!(
                        "unknown truncation key `{other}`; use D, H, L or P"
                    )))
                }
            };
            *slot = Some(value);
        }
        Ok(out)
    }
}

fn trunc_value(
    trunc: Option<&Value>,
    key: &str,
    fallback: u32,
    replacement: Option<u32>,
) -> Result<u32> {
    let declared = match trunc.and_then(|t| t.get(key)) {
        Some(v) => Some(as_usize(v, key)? as u32),
        None => None,
    };
    match (declared, replacement) {
        (Some(d), Some(r)) if r < d => Err(Error::InvalidArgument(format!(
            "override {key}={r} is below the presentation's {key}={d}"
        ))),
        (_, Some(r)) => Ok(r),
        (Some(d), None) => Ok(d),
        (None, None) => Ok(fallback),
    }
}

fn parse_basis(v: &Value) -> Result<Arc<GradedBasis>> {
    let atoms = as_array(v, "generators")?
        .iter()
        .map(|g| {
            let name = as_str(field(g, "name")?, "name")?.to_string();
            let degree = field(g, "degree")?
                .as_i64()
                .ok_or_else(|| Error::Schema("`degree` must be an integer".into()))?;
            Ok((name, degree as i32))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Arc::new(GradedBasis::new(atoms)?))
}

fn basis_json(basis: &GradedBasis) -> Value {
    Value::Array(
        (0..basis.len())
            .map(|i| json!({ "name": basis.name(i), "degree": basis.degree(i) }))
            .collect(),
    )
}

/// Read `[{"in": atom, "out": element}]` into images on the basis of `a`.
fn parse_images(
    a: &MVAlgebra,
    target: &MVAlgebra,
    entries: &Value,
    what: &str,
) -> Result<Vec<Element>> {
    let mut images = vec![Element::zero(a.ring()); a.dim()];
    for entry in as_array(entries, what)? {
        let Some((sign, x)) = a.atom_from_json(field(entry, "in")?)? else {
            return Err(Error::Schema(format!(
                "`{what}` input {} is zero in the algebra",
                entry["in"]
            )));
        };
        let out = target.element_from_json(field(entry, "out")?)?;
        let out = if sign < 0 { out.neg() } else { out };
        images[x].add_assign(&out)?;
    }
    Ok(images)
}

fn parse_tensor(a: &MVAlgebra, v: &Value) -> Result<Tensor> {
    let mut t = Tensor::zero(a.ring());
    for term in as_array(v, "tensor")? {
        let mut key = Vec::new();
        let mut coeff = match term.get("coeff") {
            Some(c) => scalar_from_json(a.ring(), c)?,
            None => Scalar::one(a.ring()),
        };
        for factor in as_array(field(term, "factors")?, "factors")? {
            let (sign, x) = a
                .atom_from_json(factor)?
                .ok_or_else(|| Error::Schema("tensor factor is zero".into()))?;
            if sign < 0 {
                coeff = coeff.neg();
            }
            key.push(x);
        }
        if key.len() != 2 {
            return Err(Error::Schema(
                "coproduct terms need exactly two factors".into(),
            ));
        }
        t.add_term(key, &coeff);
    }
    Ok(t)
}

/// Parse a presentation, applying `overrides`.
pub fn algebra_from_json(v: &Value, overrides: &Overrides) -> Result<MVAlgebra> {
    let mode = match overrides.mode {
        Some(m) => m,
        None => Mode::parse(as_str(field(v, "mode")?, "mode")?).ok_or_else(|| {
            Error::Schema(format!(
                "unknown mode {}; use k, hbar, hbar-aux or laurent-aux",
                v["mode"]
            ))
        })?,
    };
    let trunc = v.get("trunc");
    let ring = Ring::new(
        mode,
        trunc_value(trunc, "H", 1, overrides.hbar_order)?,
        trunc_value(trunc, "L", 1, overrides.aux_order)?,
        trunc_value(trunc, "P", 0, overrides.pole_bound)?,
    )?;
    let basis = parse_basis(field(v, "generators")?)?;
    let flavor = v
        .get("flavor")
        .map_or(Ok("symmetric"), |f| as_str(f, "flavor"))?;
    let empty = json!([]);
    let delta_entries = v.get("Delta").unwrap_or(&empty);
    match flavor {
        "symmetric" => {
            for key in ["mu", "delta", "eps"] {
                if v.get(key).is_some() {
                    return Err(Error::Schema(format!(
                        "the symmetric flavor takes no `{key}`"
                    )));
                }
            }
            let d = trunc_value(trunc, "D", 0, overrides.max_len)?;
            if trunc.and_then(|t| t.get("D")).is_none() && overrides.max_len.is_none() {
                return Err(Error::Schema("the symmetric flavor needs trunc.D".into()));
            }
            let sym = SymAlgebra::new(basis, d as usize, ring)?;
            let bare = MVAlgebra::symmetric_trivial(sym.clone())?;
            let images = parse_images(&bare, &bare, delta_entries, "Delta")?;
            MVAlgebra::symmetric(
                sym.clone(),
                LinMap::new(sym.basis().clone(), sym.basis().clone(), ring, images)?,
            )
        }
        "explicit" | "supertrivial" => {
            if basis.is_empty() || basis.degree(0) != 0 {
                return Err(Error::Schema(
                    "the first atom must be the unit, of degree 0".into(),
                ));
            }
            let n = basis.len();
            // A provisional algebra to resolve names.
            let zero = LinMap::zero(basis.clone(), basis.clone(), ring);
            let names = make_supertrivial(basis.clone(), ring, standard_counit(n, ring), zero)?;
            let mut eps = standard_counit(n, ring);
            if let Some(entries) = v.get("eps") {
                for entry in as_array(entries, "eps")? {
                    let atom = basis.index(as_str(field(entry, "atom")?, "atom")?)?;
                    eps[atom] = scalar_from_json(ring, field(entry, "coeff")?)?;
                }
            }
            let delta_op = LinMap::new(
                basis.clone(),
                basis.clone(),
                ring,
                parse_images(&names, &names, delta_entries, "Delta")?,
            )?;
            if flavor == "supertrivial" {
                for key in ["mu", "delta"] {
                    if v.get(key).is_some() {
                        return Err(Error::Schema(format!(
                            "the supertrivial flavor takes no `{key}`"
                        )));
                    }
                }
                return make_supertrivial(basis, ring, eps, delta_op);
            }
            let mut products: Vec<Element> = (0..n * n)
                .map(|k| {
                    let (a, b) = (k / n, k % n);
                    match (a, b) {
                        (0, _) => Element::basis(ring, b),
                        (_, 0) => Element::basis(ring, a),
                        _ => Element::zero(ring),
                    }
                })
                .collect();
            if let Some(entries) = v.get("mu") {
                for entry in as_array(entries, "mu")? {
                    let a = basis.index(as_str(field(entry, "left")?, "left")?)?;
                    let b = basis.index(as_str(field(entry, "right")?, "right")?)?;
                    products[a * n + b] = names.element_from_json(field(entry, "out")?)?;
                }
            }
            let mut coproducts: Vec<Tensor> = (0..n)
                .map(|a| {
                    let mut t = Tensor::zero(ring);
                    t.add_term(vec![a, 0], &Scalar::one(ring));
                    if a != 0 {
                        t.add_term(vec![0, a], &Scalar::one(ring));
                        t.add_term(vec![0, 0], &eps[a].neg());
                    }
                    t
                })
                .collect();
            if let Some(entries) = v.get("delta") {
                for entry in as_array(entries, "delta")? {
                    let a = basis.index(as_str(field(entry, "in")?, "in")?)?;
                    coproducts[a] = parse_tensor(&names, field(entry, "out")?)?;
                }
            }
            MVAlgebra::explicit(basis, ring, products, coproducts, eps, delta_op)
        }
        other => Err(Error::Schema(format!(
            "unknown flavor `{other}`; use symmetric, explicit or supertrivial"
        ))),
    }
}

fn images_json(a: &MVAlgebra, target: &MVAlgebra, map: &LinMap) -> Value {
    Value::Array(
        (0..a.dim())
            .filter(|&x| !map.image(x).is_zero())
            .map(|x| json!({ "in": a.atom_json(x), "out": target.element_json(map.image(x)) }))
            .collect(),
    )
}

/// Inverse of [`algebra_from_json`]; products-of-algebras are written out
/// explicitly.
pub fn algebra_to_json(a: &MVAlgebra) -> Value {
    let ring = a.ring();
    let mut out = json!({
        "mode": ring.mode().name(),
        "trunc": { "H": ring.hbar_order(), "L": ring.aux_order(), "P": ring.pole_bound() },
    });
    match a.flavor() {
        Flavor::Symmetric(sym) => {
            out["trunc"]["D"] = json!(sym.max_len());
            out["flavor"] = json!("symmetric");
            out["generators"] = basis_json(sym.generators());
        }
        _ => {
            out["flavor"] = json!("explicit");
            out["generators"] = basis_json(a.basis());
            let n = a.dim();
            let mut mu = Vec::new();
            for x in 0..n {
                for y in 0..n {
                    if let Ok(p) = a.mul(&Element::basis(ring, x), &Element::basis(ring, y)) {
                        if !p.is_zero() {
                            mu.push(json!({ "left": a.basis().name(x), "right": a.basis().name(y), "out": a.element_json(&p) }));
                        }
                    }
                }
            }
            out["mu"] = Value::Array(mu);
            out["delta"] = Value::Array((0..n).map(|x| json!({ "in": a.basis().name(x), "out": a.tensor_json(a.coproduct(x)) })).collect());
            out["eps"] = Value::Array(
                (0..n)
                    .filter(|&x| !a.counit_value(x).is_zero())
                    .map(|x| json!({ "atom": a.basis().name(x), "coeff": scalar_to_json(a.counit_value(x)) }))
                    .collect(),
            );
        }
    }
    out["Delta"] = images_json(a, a, a.delta_op());
    out
}

/// `{"map": [{"in", "out"}]}`, or a component family for symmetric algebras.
pub fn map_from_json(
    source: &Arc<MVAlgebra>,
    target: &Arc<MVAlgebra>,
    v: &Value,
) -> Result<ConvMap> {
    if v.is_array() {
        return ComponentFamily::from_json(source.clone(), target.clone(), v)?.assemble();
    }
    let images = parse_images(source, target, field(v, "map")?, "map")?;
    ConvMap::from_images(source.clone(), target.clone(), images)
}

pub fn map_to_json(f: &ConvMap) -> Value {
    json!({ "map": images_json(f.source(), f.target(), f.map()) })
}
