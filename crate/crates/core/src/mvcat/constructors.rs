//! Standard MV-algebras: supertrivial, trivial coproduct, trivial product, and
//! the ground ring itself.

use std::sync::Arc;

use super::algebra::MVAlgebra;
use crate::error::{Error, Result};
use crate::graded::{Element, GradedBasis, LinMap, Tensor};
use crate::scalars::{Ring, Scalar};

/// `a·b = ε(a) b + ε(b) a − ε(a)ε(b) 1`: products of augmentation-ideal
/// elements vanish.
fn trivial_products(dim: usize, ring: Ring, eps: &[Scalar]) -> Result<Vec<Element>> {
    let mut out = Vec::with_capacity(dim * dim);
    for a in 0..dim {
        for b in 0..dim {
            let mut p = Element::zero(ring);
            p.add_term(b, &eps[a]);
            p.add_term(a, &eps[b]);
            p.add_term(0, &eps[a].mul(&eps[b])?.neg());
            out.push(p);
        }
    }
    Ok(out)
}

/// `δ(a) = a⊗1 + 1⊗a − ε(a) 1⊗1`: elements of the augmentation ideal are primitive.
fn trivial_coproducts(dim: usize, ring: Ring, eps: &[Scalar]) -> Vec<Tensor> {
    (0..dim)
        .map(|a| {
            let mut t = Tensor::zero(ring);
            t.add_term(vec![a, 0], &Scalar::one(ring));
            t.add_term(vec![0, a], &Scalar::one(ring));
            t.add_term(vec![0, 0], &eps[a].neg());
            t
        })
        .collect()
}

fn check_counit(basis: &GradedBasis, eps: &[Scalar]) -> Result<()> {
    if eps.len() != basis.len() {
        return Err(Error::BasisMismatch(
            "counit must give one value per basis atom".into(),
        ));
    }
    if !eps[0].is_one() {
        return Err(Error::AxiomViolation("eps_eta: ε(1) must be 1".into()));
    }
    Ok(())
}

fn validated(a: MVAlgebra) -> Result<MVAlgebra> {
    match a.validate_mv().first_failure() {
        None => Ok(a),
        Some(check) => Err(Error::AxiomViolation(format!(
            "{}: {}",
            check.name,
            check.witness.clone().unwrap_or_default()
        ))),
    }
}

/// Trivial product and trivial coproduct with respect to `ε`.
pub fn make_supertrivial(
    basis: Arc<GradedBasis>,
    ring: Ring,
    eps: Vec<Scalar>,
    delta_op: LinMap,
) -> Result<MVAlgebra> {
    check_counit(&basis, &eps)?;
    let products = trivial_products(basis.len(), ring, &eps)?;
    let coproducts = trivial_coproducts(basis.len(), ring, &eps);
    validated(MVAlgebra::explicit(
        basis, ring, products, coproducts, eps, delta_op,
    )?)
}

/// A commutative augmented algebra with the coproduct making its
/// augmentation ideal primitive.
pub fn make_trivial_coproduct(
    basis: Arc<GradedBasis>,
    ring: Ring,
    products: Vec<Element>,
    eps: Vec<Scalar>,
    delta_op: LinMap,
) -> Result<MVAlgebra> {
    check_counit(&basis, &eps)?;
    let coproducts = trivial_coproducts(basis.len(), ring, &eps);
    validated(MVAlgebra::explicit(
        basis, ring, products, coproducts, eps, delta_op,
    )?)
}

/// A coaugmented conilpotent coalgebra with the product killing its
/// augmentation ideal.
pub fn make_trivial_product(
    basis: Arc<GradedBasis>,
    ring: Ring,
    coproducts: Vec<Tensor>,
    eps: Vec<Scalar>,
    delta_op: LinMap,
) -> Result<MVAlgebra> {
    check_counit(&basis, &eps)?;
    let products = trivial_products(basis.len(), ring, &eps)?;
    validated(MVAlgebra::explicit(
        basis, ring, products, coproducts, eps, delta_op,
    )?)
}

/// The ground ring as an MV-algebra: `δ(1) = 1⊗1`, `Δ = 0`.
pub fn ground(ring: Ring) -> MVAlgebra {
    let basis = Arc::new(GradedBasis::new([("1", 0)]).expect("single atom"));
    let delta = LinMap::zero(basis.clone(), basis.clone(), ring);
    make_supertrivial(basis, ring, vec![Scalar::one(ring)], delta)
        .expect("the ground ring is an MV-algebra")
}

/// Counit that is 1 on the unit atom and 0 elsewhere.
pub fn standard_counit(dim: usize, ring: Ring) -> Vec<Scalar> {
    (0..dim)
        .map(|a| {
            if a == 0 {
                Scalar::one(ring)
            } else {
                Scalar::zero(ring)
            }
        })
        .collect()
}
