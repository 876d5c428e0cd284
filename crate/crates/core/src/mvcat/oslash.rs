//! The monoidal product `⊘` of MV-algebras and of morphisms.

use std::sync::Arc;

use super::algebra::MVAlgebra;
use super::convolution::{exp_map, log_map, ConvMap};
use crate::error::Result;
use crate::graded::{Element, LinMap, Tensor};
use crate::scalars::ScalarError;

/// `V′ ⊘ V″`: graded tensor product algebra, `δ = τ₂₃(δ′⊗δ″)`,
/// `ε = ε′⊗ε″`, `Δ = Δ′⊗id + id⊗Δ″`.
pub fn oslash_algebras(left: Arc<MVAlgebra>, right: Arc<MVAlgebra>) -> Result<MVAlgebra> {
    if left.ring() != right.ring() {
        return Err(ScalarError::ModeMismatch {
            left: left.ring(),
            right: right.ring(),
        }
        .into());
    }
    let ring = left.ring();
    let w = right.dim();
    let n = left.dim() * w;
    let mut coproducts = Vec::with_capacity(n);
    let mut counit = Vec::with_capacity(n);
    let mut images = Vec::with_capacity(n);
    for a1 in 0..left.dim() {
        for a2 in 0..w {
            let mut t = Tensor::zero(ring);
            for (k1, c1) in left.coproduct(a1).terms() {
                for (k2, c2) in right.coproduct(a2).terms() {
                    let mut c = c1.mul(c2)?;
                    if right.degree(k2[0]) * left.degree(k1[1]) % 2 != 0 {
                        c = c.neg();
                    }
                    t.add_term(vec![k1[0] * w + k2[0], k1[1] * w + k2[1]], &c);
                }
            }
            coproducts.push(t);
            counit.push(left.counit_value(a1).mul(right.counit_value(a2))?);

            let mut img = Element::zero(ring);
            for (&x, c) in left.delta_op().image(a1).terms() {
                img.add_term(x * w + a2, c);
            }
            let odd = left.degree(a1) % 2 != 0;
            for (&y, c) in right.delta_op().image(a2).terms() {
                img.add_term(a1 * w + y, &if odd { c.neg() } else { c.clone() });
            }
            images.push(img);
        }
    }
    let basis = Arc::new(left.basis().tensor(right.basis()));
    let delta = LinMap::new(basis.clone(), basis, ring, images)?;
    MVAlgebra::product_of(left, right, coproducts, counit, delta)
}

/// `f ⊘ g = log(exp(f) ⊗ exp(g))` between the `⊘` products of the endpoints.
pub fn oslash_morphisms(f: &ConvMap, g: &ConvMap) -> Result<ConvMap> {
    let source = Arc::new(oslash_algebras(f.source().clone(), g.source().clone())?);
    let target = Arc::new(oslash_algebras(f.target().clone(), g.target().clone())?);
    let tensor = exp_map(f)?.map().tensor(exp_map(g)?.map())?;
    log_map(&ConvMap::new(source, target, tensor)?)
}

/// `exp(f) ⊗ exp(g)` as a map between the `⊘` products.
pub fn tensor_of_exponentials(f: &ConvMap, g: &ConvMap) -> Result<ConvMap> {
    let source = Arc::new(oslash_algebras(f.source().clone(), g.source().clone())?);
    let target = Arc::new(oslash_algebras(f.target().clone(), g.target().clone())?);
    ConvMap::new(source, target, exp_map(f)?.map().tensor(exp_map(g)?.map())?)
}
