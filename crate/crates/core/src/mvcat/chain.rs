//! Degree-0 chain maps between MV-algebras, found by exact linear algebra
//! over the rational coordinates `(atom, h^i l^j)`.

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use super::algebra::MVAlgebra;
use super::convolution::ConvMap;
use crate::error::Result;
use crate::graded::Element;
use crate::linalg::{column_kernel, SparseVec};
use crate::scalars::Scalar;

/// Numbers the rational coordinates `(slot, atom, i, j)` as they appear.
#[derive(Default)]
pub(crate) struct Coordinates {
    index: HashMap<(usize, usize, i32, u32), usize>,
}

impl Coordinates {
    pub(crate) fn add(&mut self, out: &mut SparseVec, slot: usize, x: &Element) {
        for (&atom, c) in x.terms() {
            for (&(i, j), q) in c.terms() {
                let next = self.index.len();
                let key = *self.index.entry((slot, atom, i, j)).or_insert(next);
                let entry = out.entry(key).or_insert_with(BigRational::zero);
                *entry += q;
                if entry.is_zero() {
                    out.remove(&key);
                }
            }
        }
    }
}

/// An affine family `base + Σ c_i directions[i]` of maps.
#[derive(Debug, Clone)]
pub struct ChainMapSpace {
    pub base: ConvMap,
    pub directions: Vec<ConvMap>,
}

impl ChainMapSpace {
    /// The member with the given coefficients (missing ones count as 0).
    pub fn point(&self, coefficients: &[BigRational]) -> Result<ConvMap> {
        self.directions
            .iter()
            .zip(coefficients)
            .try_fold(self.base.clone(), |acc, (d, c)| {
                acc.add(&d.scale_rational(c))
            })
    }

    pub fn dimension(&self) -> usize {
        self.directions.len()
    }
}

/// One unknown: the map sending `input` to `h^i l^j · output` (or to `1`).
struct Unknown {
    input: usize,
    output: usize,
    monomial: (i32, u32),
}

/// Every degree-0 map `φ` with `φ(1) ≡ 1` modulo the maximal ideal and
/// `Δ″ φ = φ Δ′`, as an affine space; `None` when there is no such map.
pub fn tilde_morphism_space(
    source: &Arc<MVAlgebra>,
    target: &Arc<MVAlgebra>,
) -> Result<Option<ChainMapSpace>> {
    let ring = source.ring();
    // Unknown 0 is the homogenizing coefficient of `1 ↦ 1`.
    let mut unknowns = vec![Unknown {
        input: 0,
        output: 0,
        monomial: (0, 0),
    }];
    for a in 0..source.dim() {
        let monomials = if a == 0 {
            ring.ideal_monomials()
        } else {
            ring.monomials()
        };
        for b in (0..target.dim()).filter(|&b| target.degree(b) == source.degree(a)) {
            unknowns.extend(monomials.iter().map(|&monomial| Unknown {
                input: a,
                output: b,
                monomial,
            }));
        }
    }
    let mut coords = Coordinates::default();
    let mut columns = Vec::with_capacity(unknowns.len());
    for u in &unknowns {
        let value = Element::basis(ring, u.output).scale(&Scalar::monomial(
            ring,
            u.monomial.0,
            u.monomial.1,
            BigRational::from_integer(1.into()),
        )?)?;
        let mut col = SparseVec::new();
        // Δ″ φ_u vanishes away from `u.input`; φ_u Δ′ picks the `u.input` coefficient.
        coords.add(&mut col, u.input, &target.delta_op().apply(&value)?);
        for x in 0..source.dim() {
            let c = source.delta_op().image(x).coefficient(&u.input);
            if !c.is_zero() {
                coords.add(&mut col, x, &value.scale(&c)?.neg());
            }
        }
        columns.push(col);
    }
    let mut kernel = column_kernel(&columns);
    let Some(p) = kernel.iter().position(|v| !v[0].is_zero()) else {
        return Ok(None);
    };
    let pivot = kernel.swap_remove(p);
    let t = pivot[0].clone();
    let base: Vec<BigRational> = pivot.iter().map(|q| q / &t).collect();
    let to_map = |v: &[BigRational]| -> Result<ConvMap> {
        let mut images = vec![Element::zero(ring); source.dim()];
        for (u, q) in unknowns.iter().zip(v) {
            if !q.is_zero() {
                images[u.input].add_term(
                    u.output,
                    &Scalar::monomial(ring, u.monomial.0, u.monomial.1, q.clone())?,
                );
            }
        }
        ConvMap::from_images(source.clone(), target.clone(), images)
    };
    let directions = kernel
        .iter()
        .map(|v| {
            let shifted: Vec<BigRational> =
                v.iter().zip(&base).map(|(x, b)| x - &v[0] * b).collect();
            to_map(&shifted)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(ChainMapSpace {
        base: to_map(&base)?,
        directions,
    }))
}
