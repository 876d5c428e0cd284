//! Recognizers for the structures carried by symmetric algebras: divisibility
//! shapes of morphism families, differential operator order, BV∞ and L∞.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::family::{sym_of, ComponentFamily};
use crate::error::{Error, Result};
use crate::graded::{koszul_sign, unshuffles, Element, LinMap};
use crate::mvcat::MVAlgebra;
use crate::report::{Check, Report};
use crate::scalars::Scalar;
use crate::symalg::tensor_apply;

/// First cell term with too little `h`: `need(n, m)` is the required exponent.
fn divisibility_witness(f: &ComponentFamily, need: impl Fn(usize, usize) -> i32) -> Option<Value> {
    let source = f.source();
    let target = f.target();
    f.cells().find_map(|(&(n, m), cell)| {
        let required = need(n, m);
        cell.images().iter().enumerate().find_map(|(x, img)| {
            img.terms().find_map(|(y, c)| {
                let low = c.min_hbar_exponent()?;
                (low < required).then(|| {
                    json!({
                        "n": n, "m": m, "in": source.atom_json(x), "out": target.atom_json(*y),
                        "coeff": crate::json::scalar_to_json(c), "required_hbar": required,
                    })
                })
            })
        })
    })
}

/// Every `f^m_n` with `n ≥ 1` is divisible by `h^{n−1}`, and `f(1)` by `h`.
pub fn ibl_check(f: &ComponentFamily) -> Check {
    Check::from_witness(
        "ibl_divisibility",
        divisibility_witness(f, |n, _| if n == 0 { 1 } else { n as i32 - 1 }),
    )
}

pub fn is_ibl_family(f: &ComponentFamily) -> bool {
    ibl_check(f).pass
}

/// The `h^{k−1}` part of every `f^m_n` vanishes whenever `m > k`.
pub fn munster_sachs_check(f: &ComponentFamily) -> Check {
    Check::from_witness(
        "munster_sachs_divisibility",
        divisibility_witness(f, |_, m| m as i32 - 1),
    )
}

pub fn is_munster_sachs_family(f: &ComponentFamily) -> bool {
    munster_sachs_check(f).pass
}

/// Which value the empty commutator takes at `1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Phi0 {
    /// `Φ₀ = 0`.
    #[default]
    Zero,
    /// `Φ₀ = Δ(1)`.
    DeltaOfOne,
}

/// Degree of a homogeneous element; zero counts as degree 0.
pub fn element_degree(a: &MVAlgebra, x: &Element) -> Result<i32> {
    let mut degrees = x.keys().map(|&b| a.degree(b));
    let first = degrees.next().unwrap_or(0);
    if degrees.any(|d| d != first) {
        return Err(Error::InvalidArgument(
            "commutator arguments must be homogeneous".into(),
        ));
    }
    Ok(first)
}

/// `[[…[D, L_{a₁}], …], L_{a_n}](x)` for an operator `D` of degree `op_degree`.
fn commutator_apply(
    a: &MVAlgebra,
    op: &LinMap,
    op_degree: i32,
    args: &[(Element, i32)],
    x: &Element,
) -> Result<Element> {
    let Some(((last, last_deg), rest)) = args.split_last() else {
        return op.apply(x);
    };
    let inner_degree = op_degree + rest.iter().map(|(_, d)| d).sum::<i32>();
    let first = commutator_apply(a, op, op_degree, rest, &a.mul(last, x)?)?;
    let second = a.mul(last, &commutator_apply(a, op, op_degree, rest, x)?)?;
    if (inner_degree * last_deg) % 2 != 0 {
        first.add(&second)
    } else {
        first.sub(&second)
    }
}

fn with_degrees(a: &MVAlgebra, args: &[Element]) -> Result<Vec<(Element, i32)>> {
    args.iter()
        .map(|x| Ok((x.clone(), element_degree(a, x)?)))
        .collect()
}

/// `Φ_n(a₁, …, a_n)`: the iterated commutator of `op` with left
/// multiplications, applied to `1`.
pub fn phi_n(a: &MVAlgebra, op: &LinMap, args: &[Element], convention: Phi0) -> Result<Element> {
    if args.is_empty() && convention == Phi0::Zero {
        return Ok(Element::zero(a.ring()));
    }
    let op_degree = op.degree().unwrap_or(1);
    commutator_apply(a, op, op_degree, &with_degrees(a, args)?, &a.unit())
}

/// First `(a₁, …, a_{k+1}; x)` on which the `(k+1)`-fold commutator of `op`
/// is nonzero, among probe elements taken with repetition in increasing order.
pub fn operator_order_witness(
    a: &MVAlgebra,
    op: &LinMap,
    k: usize,
    probe: &[Element],
) -> Result<Option<Value>> {
    let probe = with_degrees(a, probe)?;
    let op_degree = op.degree().unwrap_or(1);
    let idx: Vec<usize> = (0..probe.len()).collect();
    for tuple in multisets(&idx, k + 1) {
        let args: Vec<(Element, i32)> = tuple.iter().map(|&i| probe[i].clone()).collect();
        for x in 0..a.dim() {
            let value =
                match commutator_apply(a, op, op_degree, &args, &Element::basis(a.ring(), x)) {
                    Ok(v) => v,
                    Err(Error::TruncationOverflow { .. }) => continue,
                    Err(e) => return Err(e),
                };
            if !value.is_zero() {
                return Ok(Some(json!({
                    "arguments": args.iter().map(|(e, _)| a.element_json(e)).collect::<Vec<_>>(),
                    "input": a.atom_json(x),
                    "value": a.element_json(&value),
                })));
            }
        }
    }
    Ok(None)
}

/// Whether `op` is a differential operator of order at most `k`.
pub fn operator_order(a: &MVAlgebra, op: &LinMap, k: usize, probe: &[Element]) -> Result<bool> {
    Ok(operator_order_witness(a, op, k, probe)?.is_none())
}

/// Non-decreasing `len`-tuples drawn from `items`.
fn multisets(items: &[usize], len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(
        items: &[usize],
        from: usize,
        len: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in from..items.len() {
            cur.push(items[i]);
            rec(items, i, len, cur, out);
            cur.pop();
        }
    }
    rec(items, 0, len, &mut cur, &mut out);
    out
}

/// The generators of a symmetric algebra, or every non-unit atom otherwise.
pub fn default_probe(a: &MVAlgebra) -> Vec<Element> {
    match a.sym() {
        Some(sym) => (0..sym.generators().len())
            .map(|g| Element::basis(a.ring(), sym.generator_monomial(g)))
            .collect(),
        None => (1..a.dim()).map(|x| Element::basis(a.ring(), x)).collect(),
    }
}

/// `Δ = Σ_k h^{k−1} Δ_k`, split by the power of `h`.
pub fn hbar_expansion(op: &LinMap) -> BTreeMap<i32, LinMap> {
    let mut exponents: Vec<i32> = op
        .images()
        .iter()
        .flat_map(|img| {
            img.terms()
                .flat_map(|(_, c)| c.terms().map(|(&(i, _), _)| i))
        })
        .collect();
    exponents.sort_unstable();
    exponents.dedup();
    exponents
        .into_iter()
        .map(|i| (i + 1, op.map_coefficients(|c| c.hbar_component(i))))
        .collect()
}

/// `Δ² = 0`, `Δ(1) = 0`, and each `Δ_k` of order at most `k`.
pub fn is_bv_infinity(a: &MVAlgebra) -> Result<Report> {
    if !a.is_commutative()? {
        return Err(Error::NotCommutative(
            "BV∞ structures live on commutative algebras".into(),
        ));
    }
    let mut report = Report::default();
    let delta = a.delta_op();
    let square = delta.compose(delta)?;
    let nonzero = (0..a.dim()).find(|&x| !square.image(x).is_zero());
    report.push(Check::from_witness(
        "Delta_square_zero",
        nonzero
            .map(|x| json!({ "input": a.atom_json(x), "value": a.element_json(square.image(x)) })),
    ));
    let at_unit = delta.image(0);
    report.push(if at_unit.is_zero() {
        Check::pass("Delta_unit")
    } else {
        Check::fail("Delta_unit", json!({ "value": a.element_json(at_unit) }))
    });
    let probe = default_probe(a);
    for (k, part) in hbar_expansion(delta) {
        let name = format!("Delta_{k}_order");
        if k < 1 {
            report.push(Check::fail(
                name,
                json!({ "reason": "negative power of h in Δ" }),
            ));
            continue;
        }
        report.push(Check::from_witness(
            name,
            operator_order_witness(a, &part, k as usize, &probe)?,
        ));
    }
    Ok(report)
}

/// `δΔ = (Δ⊗id + id⊗Δ)δ` on every basis atom of a symmetric algebra.
pub fn coderivation_check(a: &MVAlgebra, op: &LinMap) -> Result<Check> {
    sym_of(a)?;
    let id = LinMap::identity(a.basis().clone(), a.ring());
    for x in 0..a.dim() {
        let lhs = a.coproduct_of(&op.apply(&Element::basis(a.ring(), x))?)?;
        let split = a.coproduct(x);
        let rhs = tensor_apply(&[op, &id], split)?.add(&tensor_apply(&[&id, op], split)?)?;
        if lhs != rhs {
            return Ok(Check::fail(
                "coderivation",
                json!({ "input": a.atom_json(x), "lhs": a.tensor_json(&lhs), "rhs": a.tensor_json(&rhs) }),
            ));
        }
    }
    Ok(Check::pass("coderivation"))
}

pub fn is_coderivation(a: &MVAlgebra, op: &LinMap) -> Result<bool> {
    Ok(coderivation_check(a, op)?.pass)
}

/// `l_n = π₁ ∘ Δ` restricted to words of length `n`; fails unless `Δ² = 0`.
pub fn l_infty_brackets(a: &MVAlgebra) -> Result<BTreeMap<usize, LinMap>> {
    let sym = sym_of(a)?;
    let delta = a.delta_op();
    let square = delta.compose(delta)?;
    if let Some(x) = (0..a.dim()).find(|&x| !square.image(x).is_zero()) {
        return Err(Error::AxiomViolation(format!(
            "Δ² ≠ 0 on {}",
            a.basis().name(x)
        )));
    }
    let projected = sym.pi1().compose(delta)?;
    let mut out: BTreeMap<usize, LinMap> = BTreeMap::new();
    for x in 0..a.dim() {
        let n = sym.word_length(x);
        let entry = out
            .entry(n)
            .or_insert_with(|| LinMap::zero(a.basis().clone(), a.basis().clone(), a.ring()));
        entry.set_image(x, projected.image(x).clone());
    }
    out.retain(|_, l| !l.is_zero());
    Ok(out)
}

/// The coderivation with the given brackets:
/// `D(u₁⋯u_n) = Σ_p Σ_σ ε(σ) l_p(u_{σ1}⋯u_{σp}) · u_{σ(p+1)}⋯u_{σn}`.
pub fn coderivation_from_brackets(
    a: &MVAlgebra,
    brackets: &BTreeMap<usize, LinMap>,
) -> Result<LinMap> {
    let sym = sym_of(a)?;
    let ring = a.ring();
    let degrees = sym.generators().degrees();
    let mut images = Vec::with_capacity(a.dim());
    for x in 0..a.dim() {
        let word = sym.monomial(x);
        let n = word.len();
        let letter_degrees: Vec<i32> = word.iter().map(|&g| degrees[g]).collect();
        let mut img = Element::zero(ring);
        for (&p, bracket) in brackets.range(1..).take_while(|&(&p, _)| p <= n) {
            for sigma in unshuffles(&[p, n - p]) {
                let sign = koszul_sign(&sigma, &letter_degrees);
                let (Some(head), Some(tail)) = (
                    sym.index_of(&sigma[..p].iter().map(|&i| word[i]).collect::<Vec<_>>()),
                    sym.index_of(&sigma[p..].iter().map(|&i| word[i]).collect::<Vec<_>>()),
                ) else {
                    continue;
                };
                let value = sym.sym_product(bracket.image(head), &Element::basis(ring, tail))?;
                img.add_scaled(&value, &Scalar::int(ring, sign as i64))?;
            }
        }
        images.push(img);
    }
    LinMap::new(a.basis().clone(), a.basis().clone(), ring, images)
}

/// `π₁ D²` on words of length `n`, the arity-`n` quadratic relation among
/// the brackets of the coderivation `D`.
pub fn l_infty_relation(a: &MVAlgebra, op: &LinMap, n: usize) -> Result<LinMap> {
    let sym = sym_of(a)?;
    let rel = sym.pi1().compose(&op.compose(op)?)?;
    let mut out = LinMap::zero(a.basis().clone(), a.basis().clone(), a.ring());
    for x in (0..a.dim()).filter(|&x| sym.word_length(x) == n) {
        out.set_image(x, rel.image(x).clone());
    }
    Ok(out)
}

/// Apply a bracket to a tensor of generators, multiplying the factors first.
pub fn bracket_on(a: &MVAlgebra, bracket: &LinMap, args: &[usize]) -> Result<Element> {
    let sym = sym_of(a)?;
    let word: Vec<usize> = args
        .iter()
        .flat_map(|&m| sym.monomial(m).iter().copied())
        .collect();
    match sym.word(&word)? {
        Some((sign, m)) => Ok(bracket
            .image(m)
            .scale_rational(&num_rational::BigRational::from_integer(sign.into()))),
        None => Ok(Element::zero(a.ring())),
    }
}
