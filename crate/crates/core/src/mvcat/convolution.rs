//! The convolution algebra `Lin(V′, V″)`, its exponential and logarithm,
//! MV-morphisms and the composition `◇`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

use super::algebra::MVAlgebra;
use crate::error::{Error, Result};
use crate::graded::{Element, LinMap};
use crate::report::Check;
use crate::scalars::Scalar;

/// A linear map `V′ → V″` between MV-algebras over their common ring.
#[derive(Debug, Clone)]
pub struct ConvMap {
    source: Arc<MVAlgebra>,
    target: Arc<MVAlgebra>,
    map: LinMap,
}

impl PartialEq for ConvMap {
    fn eq(&self, other: &ConvMap) -> bool {
        self.map == other.map
            && same_algebra(&self.source, &other.source)
            && same_algebra(&self.target, &other.target)
    }
}

pub fn same_algebra(a: &Arc<MVAlgebra>, b: &Arc<MVAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn require_same(a: &Arc<MVAlgebra>, b: &Arc<MVAlgebra>, what: &str) -> Result<()> {
    if !same_algebra(a, b) {
        return Err(Error::BasisMismatch(format!("{what} algebras differ")));
    }
    Ok(())
}

impl ConvMap {
    pub fn new(source: Arc<MVAlgebra>, target: Arc<MVAlgebra>, map: LinMap) -> Result<ConvMap> {
        if map.source().as_ref() != source.basis().as_ref()
            || map.target().as_ref() != target.basis().as_ref()
        {
            return Err(Error::BasisMismatch(
                "map bases differ from the algebra bases".into(),
            ));
        }
        if map.ring() != source.ring() || map.ring() != target.ring() {
            return Err(crate::scalars::ScalarError::ModeMismatch {
                left: source.ring(),
                right: target.ring(),
            }
            .into());
        }
        Ok(ConvMap {
            source,
            target,
            map,
        })
    }

    pub fn from_images(
        source: Arc<MVAlgebra>,
        target: Arc<MVAlgebra>,
        images: Vec<Element>,
    ) -> Result<ConvMap> {
        let map = LinMap::new(
            source.basis().clone(),
            target.basis().clone(),
            source.ring(),
            images,
        )?;
        ConvMap::new(source, target, map)
    }

    pub fn zero(source: Arc<MVAlgebra>, target: Arc<MVAlgebra>) -> ConvMap {
        let map = LinMap::zero(
            source.basis().clone(),
            target.basis().clone(),
            source.ring(),
        );
        ConvMap {
            source,
            target,
            map,
        }
    }

    pub fn identity(algebra: Arc<MVAlgebra>) -> ConvMap {
        let map = LinMap::identity(algebra.basis().clone(), algebra.ring());
        ConvMap {
            source: algebra.clone(),
            target: algebra,
            map,
        }
    }

    /// The convolution unit `e = η″ ∘ ε′`.
    pub fn conv_unit(source: Arc<MVAlgebra>, target: Arc<MVAlgebra>) -> ConvMap {
        let mut f = ConvMap::zero(source.clone(), target);
        for a in 0..source.dim() {
            let c = source.counit_value(a).clone();
            let mut img = Element::zero(source.ring());
            img.add_term(0, &c);
            f.map.set_image(a, img);
        }
        f
    }

    pub fn source(&self) -> &Arc<MVAlgebra> {
        &self.source
    }
    pub fn target(&self) -> &Arc<MVAlgebra> {
        &self.target
    }
    pub fn map(&self) -> &LinMap {
        &self.map
    }
    pub fn image(&self, i: usize) -> &Element {
        self.map.image(i)
    }
    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.map.apply(x)
    }
    pub fn is_zero(&self) -> bool {
        self.map.is_zero()
    }

    fn with_map(&self, map: LinMap) -> ConvMap {
        ConvMap {
            source: self.source.clone(),
            target: self.target.clone(),
            map,
        }
    }

    fn check_shape(&self, other: &ConvMap) -> Result<()> {
        require_same(&self.source, &other.source, "source")?;
        require_same(&self.target, &other.target, "target")
    }

    pub fn add(&self, other: &ConvMap) -> Result<ConvMap> {
        self.check_shape(other)?;
        Ok(self.with_map(self.map.add(&other.map)?))
    }

    pub fn sub(&self, other: &ConvMap) -> Result<ConvMap> {
        self.check_shape(other)?;
        Ok(self.with_map(self.map.sub(&other.map)?))
    }

    pub fn scale(&self, c: &Scalar) -> Result<ConvMap> {
        Ok(self.with_map(self.map.scale(c)?))
    }

    pub fn scale_rational(&self, q: &BigRational) -> ConvMap {
        self.with_map(self.map.scale_rational(q))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ConvMap) -> Result<ConvMap> {
        require_same(&inner.target, &self.source, "middle")?;
        let map = self.map.compose(&inner.map)?;
        Ok(ConvMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            map,
        })
    }

    /// Degree of the map if homogeneous.
    pub fn degree(&self) -> Option<i32> {
        self.map.degree()
    }

    /// `f(1)` has all coefficients in the maximal ideal.
    pub fn is_lin0(&self) -> bool {
        self.map.image(0).in_maximal_ideal()
    }

    /// Reduce every coefficient modulo the maximal ideal.
    pub fn mod_maximal_ideal(&self) -> ConvMap {
        self.with_map(self.map.map_coefficients(Scalar::mod_maximal_ideal))
    }
}

/// `f ⋆ g = μ″ (f ⊗ g) δ′` with the Koszul rule on homogeneous parts of `g`.
pub fn convolution(f: &ConvMap, g: &ConvMap) -> Result<ConvMap> {
    f.check_shape(g)?;
    let src = &f.source;
    let tgt = &f.target;
    let ring = src.ring();
    let mut images = Vec::with_capacity(src.dim());
    for x in 0..src.dim() {
        let mut out = Element::zero(ring);
        for (key, c) in src.coproduct(x).terms() {
            let (a, b) = (key[0], key[1]);
            let fa = f.map.image(a);
            let gb = g.map.image(b);
            if fa.is_zero() || gb.is_zero() {
                continue;
            }
            let odd_a = src.degree(a) % 2 != 0;
            for (&s, cs) in fa.terms() {
                let csc = cs.mul(c)?;
                for (&t, ct) in gb.terms() {
                    let mut coeff = csc.mul(ct)?;
                    if odd_a && (tgt.degree(t) - src.degree(b)) % 2 != 0 {
                        coeff = coeff.neg();
                    }
                    tgt.mul_into(s, t, &coeff, &mut out)?;
                }
            }
        }
        images.push(out);
    }
    ConvMap::from_images(src.clone(), tgt.clone(), images)
}

pub fn conv_unit(source: Arc<MVAlgebra>, target: Arc<MVAlgebra>) -> ConvMap {
    ConvMap::conv_unit(source, target)
}

pub fn conv_power(f: &ConvMap, k: usize) -> Result<ConvMap> {
    let mut acc = ConvMap::conv_unit(f.source.clone(), f.target.clone());
    for _ in 0..k {
        acc = convolution(&acc, f)?;
    }
    Ok(acc)
}

/// Bound on the number of nonzero convolution powers of a Lin⁰ map.
fn guard(f: &ConvMap) -> Result<usize> {
    let conil = f.source.conilpotency().ok_or(Error::NotConilpotent {
        bound: f.source.dim() + 1,
    })?;
    Ok(conil + f.source.ring().ideal_nilpotency() as usize)
}

fn inverse(k: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(k))
}

/// `exp(f) = e + f + f⋆f/2! + ⋯`, accumulated until the powers vanish.
pub fn exp_map(f: &ConvMap) -> Result<ConvMap> {
    if !f.is_lin0() {
        return Err(Error::NotLin0);
    }
    let bound = guard(f)?;
    let mut sum = ConvMap::conv_unit(f.source.clone(), f.target.clone());
    let mut term = f.clone();
    let mut k = 1;
    while !term.is_zero() {
        if k >= bound {
            return Err(Error::ConvergenceGuardExceeded { bound });
        }
        sum = sum.add(&term)?;
        k += 1;
        term = convolution(&term, f)?.scale_rational(&inverse(k));
    }
    Ok(sum)
}

/// `log(e + g) = g − g⋆g/2 + g⋆g⋆g/3 − ⋯`.
pub fn log_map(phi: &ConvMap) -> Result<ConvMap> {
    let e = ConvMap::conv_unit(phi.source.clone(), phi.target.clone());
    let g = phi.sub(&e)?;
    if !g.is_lin0() {
        return Err(Error::NotLin0);
    }
    let bound = guard(&g)?;
    let mut sum = ConvMap::zero(phi.source.clone(), phi.target.clone());
    let mut power = g.clone();
    let mut k = 1;
    while !power.is_zero() {
        if k >= bound {
            return Err(Error::ConvergenceGuardExceeded { bound });
        }
        let mut w = inverse(k);
        if k % 2 == 0 {
            w = -w;
        }
        sum = sum.add(&power.scale_rational(&w))?;
        k += 1;
        power = convolution(&power, &g)?;
    }
    Ok(sum)
}

fn map_difference_witness(lhs: &ConvMap, rhs: &ConvMap) -> Option<Value> {
    (0..lhs.source.dim())
        .find(|&a| lhs.image(a) != rhs.image(a))
        .map(|a| {
            json!({
                "input": lhs.source.atom_json(a),
                "lhs": lhs.target.element_json(lhs.image(a)),
                "rhs": rhs.target.element_json(rhs.image(a)),
            })
        })
}

/// First basis atom on which two maps differ, with both values.
pub fn map_witness(lhs: &ConvMap, rhs: &ConvMap) -> Option<Value> {
    map_difference_witness(lhs, rhs)
}

/// `Δ″ ∘ exp(f) = exp(f) ∘ Δ′`, with a witness on failure.
pub fn mv_morphism_check(f: &ConvMap) -> Result<Check> {
    if f.degree() != Some(0) {
        return Ok(Check::fail(
            "mv_morphism",
            json!({ "reason": "map is not of degree 0" }),
        ));
    }
    let ef = exp_map(f)?;
    let d_src = ConvMap::new(
        f.source.clone(),
        f.source.clone(),
        f.source.delta_op().clone(),
    )?;
    let d_tgt = ConvMap::new(
        f.target.clone(),
        f.target.clone(),
        f.target.delta_op().clone(),
    )?;
    let lhs = d_tgt.compose(&ef)?;
    let rhs = ef.compose(&d_src)?;
    Ok(Check::from_witness(
        "mv_morphism",
        map_difference_witness(&lhs, &rhs),
    ))
}

pub fn is_mv_morphism(f: &ConvMap) -> Result<bool> {
    Ok(mv_morphism_check(f)?.pass)
}

/// `φ(1) ≡ 1 mod m` and `Δ″ φ = φ Δ′`.
pub fn tilde_morphism_check(phi: &ConvMap) -> Result<Check> {
    if phi.degree() != Some(0) {
        return Ok(Check::fail(
            "tilde_morphism",
            json!({ "reason": "map is not of degree 0" }),
        ));
    }
    let mut shifted = phi.image(0).clone();
    shifted.add_term(0, &Scalar::one(phi.source.ring()).neg());
    if !shifted.in_maximal_ideal() {
        return Ok(Check::fail(
            "tilde_morphism",
            json!({ "reason": "φ(1) is not 1 modulo the maximal ideal", "value": phi.target.element_json(phi.image(0)) }),
        ));
    }
    let d_src = ConvMap::new(
        phi.source.clone(),
        phi.source.clone(),
        phi.source.delta_op().clone(),
    )?;
    let d_tgt = ConvMap::new(
        phi.target.clone(),
        phi.target.clone(),
        phi.target.delta_op().clone(),
    )?;
    let lhs = d_tgt.compose(phi)?;
    let rhs = phi.compose(&d_src)?;
    Ok(Check::from_witness(
        "tilde_morphism",
        map_difference_witness(&lhs, &rhs),
    ))
}

pub fn is_tilde_morphism(phi: &ConvMap) -> Result<bool> {
    Ok(tilde_morphism_check(phi)?.pass)
}

/// `f ◇ g = log(exp(f) ∘ exp(g))`.
pub fn diamond(f: &ConvMap, g: &ConvMap) -> Result<ConvMap> {
    require_same(&g.target, &f.source, "middle")?;
    log_map(&exp_map(f)?.compose(&exp_map(g)?)?)
}

/// `1_V = log(id)`.
pub fn mv_unit(algebra: Arc<MVAlgebra>) -> Result<ConvMap> {
    log_map(&ConvMap::identity(algebra))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::GradedBasis;
    use crate::scalars::Ring;
    use crate::symalg::SymAlgebra;

    fn sym(degs: &[i32], d: usize, ring: Ring) -> Arc<MVAlgebra> {
        let gens = GradedBasis::new(
            degs.iter()
                .enumerate()
                .map(|(i, &g)| (format!("u{}", i + 1), g)),
        )
        .unwrap();
        let s = SymAlgebra::new(Arc::new(gens), d, ring).unwrap();
        Arc::new(MVAlgebra::symmetric_trivial(s).unwrap())
    }

    #[test]
    fn exp_of_pi1_is_identity() {
        let a = sym(&[0, 1, 0], 3, Ring::rationals());
        let pi1 = ConvMap::new(a.clone(), a.clone(), a.sym().unwrap().pi1()).unwrap();
        assert_eq!(exp_map(&pi1).unwrap(), ConvMap::identity(a.clone()));
        assert_eq!(mv_unit(a.clone()).unwrap(), pi1);
    }

    #[test]
    fn unit_laws_and_zero() {
        let a = sym(&[0, 1], 2, Ring::hbar(2));
        let e = ConvMap::conv_unit(a.clone(), a.clone());
        let mut f = ConvMap::zero(a.clone(), a.clone());
        f.map.set_image(
            1,
            Element::basis(a.ring(), 2)
                .scale(&Scalar::hbar(a.ring()))
                .unwrap(),
        );
        assert_eq!(convolution(&f, &e).unwrap(), f);
        assert_eq!(convolution(&e, &f).unwrap(), f);
        assert_eq!(exp_map(&ConvMap::zero(a.clone(), a.clone())).unwrap(), e);
        assert_eq!(log_map(&exp_map(&f).unwrap()).unwrap(), f);
        assert!(f.is_lin0());
        let mut g = f.clone();
        g.map.set_image(0, Element::basis(a.ring(), 1));
        assert!(!g.is_lin0());
        assert!(matches!(exp_map(&g), Err(Error::NotLin0)));
    }
}
