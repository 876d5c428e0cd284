//! Multiplicativity of `exp(f)` modulo the ideal generated by `V″⊗m` and
//! `f(I′²)`, decided by exact linear algebra.

use std::collections::HashMap;

use num_rational::BigRational;
use serde_json::json;

use super::convolution::{exp_map, ConvMap};
use crate::error::{Error, Result};
use crate::graded::Element;
use crate::linalg::{RowSpace, SparseVec};
use crate::report::Check;
use crate::scalars::Scalar;

/// Coordinates `(atom, h-exponent, l-exponent)` flattened to indices.
#[derive(Default)]
struct Coordinates {
    index: HashMap<(usize, i32, u32), usize>,
}

impl Coordinates {
    fn vector(&mut self, x: &Element) -> SparseVec {
        let mut v = SparseVec::new();
        for (&a, c) in x.terms() {
            for (&(i, j), q) in c.terms() {
                let next = self.index.len();
                let k = *self.index.entry((a, i, j)).or_insert(next);
                v.insert(k, q.clone());
            }
        }
        v
    }
}

/// Whether `exp(f)(v₁v₂) − exp(f)(v₁)·exp(f)(v₂)` lies in `(V″⊗m, f(I′²))`.
pub fn congruence_check_multiplicativity(f: &ConvMap, v1: &Element, v2: &Element) -> Result<Check> {
    let src = f.source();
    let tgt = f.target();
    if let Some(w) = src.bialgebra_witness()? {
        return Err(Error::NotBialgebra(w.to_string()));
    }
    let ef = exp_map(f)?;
    let lhs = ef.apply(&src.mul(v1, v2)?)?;
    let rhs = tgt.mul(&ef.apply(v1)?, &ef.apply(v2)?)?;
    let diff = lhs.sub(&rhs)?.mod_maximal_ideal();
    if diff.is_zero() {
        return Ok(Check::pass("multiplicativity_congruence"));
    }

    let ring = src.ring();
    // Residue-field multiples needed in Laurent mode, where h stays a unit.
    let shifts: Vec<i32> = if ring.mode() == crate::scalars::Mode::LaurentAux {
        (-(ring.pole_bound() as i32)..ring.hbar_order() as i32).collect()
    } else {
        vec![0]
    };
    let ideal: Vec<Element> = (1..src.dim())
        .map(|a| src.augmentation_part(&Element::basis(ring, a)))
        .collect::<Result<_>>()?;
    let mut coords = Coordinates::default();
    let mut span = RowSpace::new();
    for a in &ideal {
        for b in &ideal {
            let w = match src.mul(a, b) {
                Ok(w) => w,
                Err(Error::TruncationOverflow { .. }) => continue,
                Err(e) => return Err(e),
            };
            let fw = f.apply(&w)?.mod_maximal_ideal();
            if fw.is_zero() {
                continue;
            }
            for t in 0..tgt.dim() {
                let prod = match tgt.mul(&Element::basis(ring, t), &fw) {
                    Ok(p) => p.mod_maximal_ideal(),
                    Err(Error::TruncationOverflow { .. }) => continue,
                    Err(e) => return Err(e),
                };
                for &s in &shifts {
                    let shifted = match prod.scale(&Scalar::monomial(
                        ring,
                        s,
                        0,
                        BigRational::from_integer(1.into()),
                    )?) {
                        Ok(x) => x,
                        Err(Error::Scalar(_)) => continue,
                        Err(e) => return Err(e),
                    };
                    let v = coords.vector(&shifted);
                    span.insert(&v);
                }
            }
        }
    }
    let target_vec = coords.vector(&diff);
    if span.contains(&target_vec) {
        Ok(Check::pass("multiplicativity_congruence"))
    } else {
        Ok(Check::fail(
            "multiplicativity_congruence",
            json!({ "difference_mod_m": tgt.element_json(&diff), "ideal_rank": span.rank() }),
        ))
    }
}
