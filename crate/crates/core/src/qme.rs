//! The quantum master equation `Δ e^S = 0`: candidates, their
//! correspondence with MV-morphisms out of the ground ring, pushforward
//! along MV-morphisms, and the higher derived brackets of `Δ`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

use crate::composed::{phi_n, Phi0};
use crate::error::{Error, Result};
use crate::graded::Element;
use crate::linalg::{column_kernel, SparseVec};
use crate::mvcat::{exp_map, ground, is_mv_morphism, ConvMap, Coordinates, Flavor, MVAlgebra};
use crate::report::Check;
use crate::scalars::{Mode, Scalar, ScalarError};

/// A degree-0 element with coefficients in the maximal ideal. In Laurent
/// form it stands for `S̃/h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MasterCandidate {
    element: Element,
    laurent_form: bool,
}

fn require_degree_zero(a: &MVAlgebra, x: &Element) -> Result<()> {
    if x.keys().any(|&b| a.degree(b) != 0) {
        return Err(Error::NotDegreeZero);
    }
    Ok(())
}

fn require_ideal(x: &Element) -> Result<()> {
    if !x.in_maximal_ideal() {
        return Err(ScalarError::NotInMaximalIdeal.into());
    }
    Ok(())
}

impl MasterCandidate {
    pub fn new(a: &MVAlgebra, element: Element, laurent_form: bool) -> Result<MasterCandidate> {
        require_degree_zero(a, &element)?;
        require_ideal(&element)?;
        if laurent_form && a.ring().mode() != Mode::LaurentAux {
            return Err(Error::InvalidArgument(
                "Laurent form needs a ring with poles in h".into(),
            ));
        }
        Ok(MasterCandidate {
            element,
            laurent_form,
        })
    }

    pub fn element(&self) -> &Element {
        &self.element
    }

    pub fn is_laurent_form(&self) -> bool {
        self.laurent_form
    }

    /// The exponent `S` itself.
    pub fn exponent(&self) -> Result<Element> {
        if !self.laurent_form {
            return Ok(self.element.clone());
        }
        shift(&self.element, -1)
    }

    pub fn to_json(&self, a: &MVAlgebra) -> Value {
        json!({ "element": a.element_json(&self.element), "laurent_form": self.laurent_form })
    }

    pub fn from_json(a: &MVAlgebra, v: &Value) -> Result<MasterCandidate> {
        let element = a.element_from_json(crate::json::field(v, "element")?)?;
        let laurent_form = match v.get("laurent_form") {
            None => false,
            Some(b) => b
                .as_bool()
                .ok_or_else(|| Error::Schema("`laurent_form` must be a boolean".into()))?,
        };
        MasterCandidate::new(a, element, laurent_form)
    }
}

fn shift(x: &Element, by: i32) -> Result<Element> {
    let mut out = Element::zero(x.ring());
    for (&b, c) in x.terms() {
        out.add_term(b, &c.shift_hbar(by)?);
    }
    Ok(out)
}

fn inverse(k: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(k))
}

fn guard(a: &MVAlgebra) -> usize {
    a.ring().ideal_nilpotency() as usize + 1
}

/// `e^x` in the algebra, for `x` with coefficients in the maximal ideal.
pub fn algebra_exp(a: &MVAlgebra, x: &Element) -> Result<Element> {
    require_ideal(x)?;
    let bound = guard(a);
    let mut sum = a.unit();
    let mut term = a.unit();
    for k in 1.. {
        term = a.mul(&term, x)?.scale_rational(&inverse(k));
        if term.is_zero() {
            return Ok(sum);
        }
        if k >= bound {
            break;
        }
        sum.add_assign(&term)?;
    }
    Err(Error::ConvergenceGuardExceeded { bound })
}

/// `log y` for `y ≡ 1` modulo the maximal ideal.
pub fn algebra_log(a: &MVAlgebra, y: &Element) -> Result<Element> {
    let x = y.sub(&a.unit())?;
    require_ideal(&x)?;
    let bound = guard(a);
    let mut sum = Element::zero(a.ring());
    let mut power = x.clone();
    for k in 1.. {
        if power.is_zero() {
            return Ok(sum);
        }
        if k >= bound {
            break;
        }
        let w = if k % 2 == 0 { -inverse(k) } else { inverse(k) };
        sum.add_assign(&power.scale_rational(&w))?;
        power = a.mul(&power, &x)?;
    }
    Err(Error::ConvergenceGuardExceeded { bound })
}

/// `Δ e^S = 0`, with `Δ e^S` as the witness on failure.
pub fn qme_check(a: &MVAlgebra, s: &MasterCandidate) -> Result<Check> {
    let value = a.apply_delta(&algebra_exp(a, &s.exponent()?)?)?;
    Ok(if value.is_zero() {
        Check::pass("quantum_master_equation")
    } else {
        Check::fail(
            "quantum_master_equation",
            json!({ "Delta_exp_S": a.element_json(&value) }),
        )
    })
}

pub fn is_qme_solution(a: &MVAlgebra, s: &MasterCandidate) -> Result<bool> {
    Ok(qme_check(a, s)?.pass)
}

/// The map `1 ↦ S` out of the ground ring, for a solution `S`.
pub fn solution_to_morphism(a: &Arc<MVAlgebra>, s: &MasterCandidate) -> Result<ConvMap> {
    if !is_qme_solution(a, s)? {
        return Err(Error::NotASolution);
    }
    let exponent = s.exponent()?;
    let map = ConvMap::from_images(
        Arc::new(ground(a.ring())),
        a.clone(),
        vec![exponent.clone()],
    )?;
    if exp_map(&map)?.image(0) != &algebra_exp(a, &exponent)? {
        return Err(Error::AxiomViolation(
            "exp of a map out of the ground ring must be e^S at 1".into(),
        ));
    }
    Ok(map)
}

/// `s(1)` for an MV-morphism `s` out of the ground ring.
pub fn morphism_to_solution(s: &ConvMap) -> Result<MasterCandidate> {
    if s.source().dim() != 1 {
        return Err(Error::InvalidArgument(
            "source must be the ground ring".into(),
        ));
    }
    if !is_mv_morphism(s)? {
        return Err(Error::NotAMorphism);
    }
    MasterCandidate::new(s.target(), s.image(0).clone(), false)
}

fn pushforward_unchecked(f: &ConvMap, exponent: &Element) -> Result<MasterCandidate> {
    let pushed = exp_map(f)?.apply(&algebra_exp(f.source(), exponent)?)?;
    MasterCandidate::new(f.target(), algebra_log(f.target(), &pushed)?, false)
}

/// `f_! S = log(exp(f)(e^S))` for an MV-morphism `f` and a solution `S`.
pub fn pushforward(f: &ConvMap, s: &MasterCandidate) -> Result<MasterCandidate> {
    if !is_mv_morphism(f)? {
        return Err(Error::NotAMorphism);
    }
    if !is_qme_solution(f.source(), s)? {
        return Err(Error::NotASolution);
    }
    pushforward_unchecked(f, &s.exponent()?)
}

/// On a bialgebra, `f_! S = f(e^S)` for primitive `S`.
pub fn transfer_check(f: &ConvMap, s: &MasterCandidate) -> Result<Check> {
    let src = f.source();
    let known = matches!(src.flavor(), Flavor::Symmetric(_));
    if !known {
        if let Some(w) = src.bialgebra_witness()? {
            return Err(Error::NotBialgebra(w.to_string()));
        }
    }
    let exponent = s.exponent()?;
    if !src.reduced_coproduct(&exponent)?.is_zero() {
        return Err(Error::NotPrimitive);
    }
    let lhs = pushforward_unchecked(f, &exponent)?.element;
    let rhs = f.apply(&algebra_exp(src, &exponent)?)?;
    Ok(if lhs == rhs {
        Check::pass("transfer")
    } else {
        Check::fail(
            "transfer",
            json!({ "pushforward": f.target().element_json(&lhs), "f_of_exp": f.target().element_json(&rhs) }),
        )
    })
}

/// Largest `k` with an `h^{-k}` term, or 0.
pub fn pole_order(x: &Element) -> u32 {
    x.terms()
        .filter_map(|(_, c)| c.min_hbar_exponent())
        .map(|i| (-i).max(0) as u32)
        .max()
        .unwrap_or(0)
}

pub fn has_at_most_simple_pole(x: &Element) -> bool {
    pole_order(x) <= 1
}

/// `l_n(a₁, …, a_n) = h^{−(n−1)} Φ_n(a₁, …, a_n)`.
pub fn higher_derived_bracket(a: &MVAlgebra, args: &[Element]) -> Result<Element> {
    if args.is_empty() {
        return Err(Error::InvalidArgument(
            "a derived bracket needs at least one argument".into(),
        ));
    }
    shift(
        &phi_n(a, a.delta_op(), args, Phi0::Zero)?,
        1 - args.len() as i32,
    )
}

fn check_laurent_input(a: &MVAlgebra, s_tilde: &Element) -> Result<()> {
    if !a.is_commutative()? {
        return Err(Error::NotCommutative(
            "derived brackets need a commutative product".into(),
        ));
    }
    if a.ring().mode() != Mode::LaurentAux {
        return Err(Error::InvalidArgument(
            "needs a ring with poles in h".into(),
        ));
    }
    require_degree_zero(a, s_tilde)?;
    require_ideal(s_tilde)
}

/// `Δ S̃ + Σ_{n≥2} l_n(S̃, …, S̃)/n!`.
pub fn mc_residual(a: &MVAlgebra, s_tilde: &Element) -> Result<Element> {
    check_laurent_input(a, s_tilde)?;
    let mut sum = a.apply_delta(s_tilde)?;
    let mut weight = BigRational::one();
    // The n-th term has coefficients in the n-th power of the ideal.
    for n in 2..a.ring().ideal_nilpotency() as usize {
        weight *= inverse(n);
        let args = vec![s_tilde.clone(); n];
        sum.add_assign(&higher_derived_bracket(a, &args)?.scale_rational(&weight))?;
    }
    Ok(sum)
}

/// `h e^{−S̃/h} Δ(e^{S̃/h})`.
pub fn conjugated_delta(a: &MVAlgebra, s_tilde: &Element) -> Result<Element> {
    check_laurent_input(a, s_tilde)?;
    let s = shift(s_tilde, -1)?;
    let product = a.mul(
        &algebra_exp(a, &s.neg())?,
        &a.apply_delta(&algebra_exp(a, &s)?)?,
    )?;
    shift(&product, 1)
}

/// `mc_residual(S̃) = h e^{−S̃/h} Δ(e^{S̃/h})`.
pub fn derived_bracket_identity_check(a: &MVAlgebra, s_tilde: &Element) -> Result<Check> {
    let lhs = mc_residual(a, s_tilde)?;
    let rhs = conjugated_delta(a, s_tilde)?;
    Ok(if lhs == rhs {
        Check::pass("derived_bracket_identity")
    } else {
        Check::fail(
            "derived_bracket_identity",
            json!({ "residual": a.element_json(&lhs), "conjugated": a.element_json(&rhs) }),
        )
    })
}

/// A rational basis of the solutions on an algebra whose augmentation ideal
/// squares to zero, where the equation is linear: `Δ S = 0`.
pub fn supertrivial_solution_basis(a: &MVAlgebra) -> Result<Vec<MasterCandidate>> {
    let ring = a.ring();
    if !a.delta_op().image(0).is_zero() {
        return Err(Error::InvalidArgument("Δ(1) must vanish".into()));
    }
    let ideal: Vec<Element> = (1..a.dim())
        .map(|b| a.augmentation_part(&Element::basis(ring, b)))
        .collect::<Result<_>>()?;
    for x in &ideal {
        for y in &ideal {
            if !a.mul(x, y)?.is_zero() {
                return Err(Error::InvalidArgument(
                    "the augmentation ideal does not square to zero".into(),
                ));
            }
        }
    }
    let unknowns: Vec<(usize, (i32, u32))> = (0..a.dim())
        .filter(|&b| a.degree(b) == 0)
        .flat_map(|b| ring.ideal_monomials().into_iter().map(move |m| (b, m)))
        .collect();
    let term = |&(b, (i, j)): &(usize, (i32, u32)), q: BigRational| -> Result<Element> {
        Element::basis(ring, b).scale(&Scalar::monomial(ring, i, j, q)?)
    };
    let mut coords = Coordinates::default();
    let columns = unknowns
        .iter()
        .map(|u| {
            let mut col = SparseVec::new();
            coords.add(&mut col, 0, &a.apply_delta(&term(u, BigRational::one())?)?);
            Ok(col)
        })
        .collect::<Result<Vec<_>>>()?;
    column_kernel(&columns)
        .into_iter()
        .map(|v| {
            let mut s = Element::zero(ring);
            for (u, q) in unknowns.iter().zip(v) {
                s.add_assign(&term(u, q)?)?;
            }
            MasterCandidate::new(a, s, false)
        })
        .collect()
}
